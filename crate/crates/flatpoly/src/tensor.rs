//! Dense polynomial tensor fields on flat ℝⁿ.

use crate::poly::Poly;
use num_rational::BigRational;

/// A rank-r tensor field with polynomial components, stored densely in
/// row-major multi-index order. The flat metric is the identity, so
/// index position carries no content here.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyTensor {
    pub nval: usize,
    pub rank: usize,
    comps: Vec<Poly>,
}

impl PolyTensor {
    pub fn zeros(nval: usize, rank: usize) -> Self {
        let size = nval.pow(rank as u32);
        PolyTensor {
            nval,
            rank,
            comps: vec![Poly::zero(nval); size],
        }
    }

    pub fn scalar(nval: usize, p: Poly) -> Self {
        assert_eq!(p.nvars, nval);
        PolyTensor {
            nval,
            rank: 0,
            comps: vec![p],
        }
    }

    pub fn from_components(nval: usize, rank: usize, comps: Vec<Poly>) -> Self {
        assert_eq!(comps.len(), nval.pow(rank as u32));
        PolyTensor { nval, rank, comps }
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        let mut o = 0;
        for &i in idx {
            debug_assert!(i < self.nval);
            o = o * self.nval + i;
        }
        o
    }

    pub fn get(&self, idx: &[usize]) -> &Poly {
        &self.comps[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], p: Poly) {
        let o = self.offset(idx);
        self.comps[o] = p;
    }

    pub fn add_assign_at(&mut self, idx: &[usize], p: &Poly) {
        let o = self.offset(idx);
        self.comps[o] = self.comps[o].add(p);
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &PolyTensor) -> PolyTensor {
        assert_eq!((self.nval, self.rank), (other.nval, other.rank));
        PolyTensor {
            nval: self.nval,
            rank: self.rank,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolyTensor) -> PolyTensor {
        self.add(&other.scale_int(-1))
    }

    pub fn scale(&self, c: &BigRational) -> PolyTensor {
        PolyTensor {
            nval: self.nval,
            rank: self.rank,
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> PolyTensor {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Covariant derivative; the new index comes first:
    /// (∇T)_{a i...} = ∂_a T_{i...}.
    pub fn derivative(&self) -> PolyTensor {
        let mut out = PolyTensor::zeros(self.nval, self.rank + 1);
        let stride = self.comps.len();
        for a in 0..self.nval {
            for (off, p) in self.comps.iter().enumerate() {
                out.comps[a * stride + off] = p.diff(a);
            }
        }
        out
    }

    /// Bochner Laplacian Δ = −Σ ∂ᵢ², componentwise.
    pub fn laplacian(&self) -> PolyTensor {
        let mut out = PolyTensor::zeros(self.nval, self.rank);
        for (off, p) in self.comps.iter().enumerate() {
            let mut acc = Poly::zero(self.nval);
            for i in 0..self.nval {
                acc = acc.add(&p.diff(i).diff(i));
            }
            out.comps[off] = acc.neg();
        }
        out
    }

    /// Contract two slots with the flat metric.
    pub fn trace(&self, s1: usize, s2: usize) -> PolyTensor {
        assert!(s1 < s2 && s2 < self.rank);
        let mut out = PolyTensor::zeros(self.nval, self.rank - 2);
        let mut idx = vec![0usize; self.rank];
        for_each_index(self.nval, self.rank - 2, &mut |rem| {
            let mut acc = Poly::zero(self.nval);
            // scatter rem into idx, skipping s1 and s2
            for d in 0..self.nval {
                let mut r = rem.iter();
                for (pos, slot) in idx.iter_mut().enumerate() {
                    if pos == s1 || pos == s2 {
                        *slot = d;
                    } else {
                        *slot = *r.next().unwrap();
                    }
                }
                acc = acc.add(self.get(&idx));
            }
            out.set(rem, acc);
        });
        out
    }

    /// Divergence on the given slot: (div T)_{...} = Σ_a ∂_a T_{..a..}.
    pub fn divergence(&self, slot: usize) -> PolyTensor {
        let d = self.derivative();
        d.trace(0, slot + 1)
    }

    /// Full symmetrization over all slots (with the 1/r! normalization).
    pub fn symmetrize(&self) -> PolyTensor {
        let perms = permutations(self.rank);
        let norm = BigRational::new(1.into(), (perms.len() as i64).into());
        let mut out = PolyTensor::zeros(self.nval, self.rank);
        let mut idx = vec![0usize; self.rank];
        for_each_index(self.nval, self.rank, &mut |ix| {
            let mut acc = Poly::zero(self.nval);
            for perm in &perms {
                for (k, &p) in perm.iter().enumerate() {
                    idx[k] = ix[p];
                }
                acc = acc.add(self.get(&idx));
            }
            out.set(ix, acc.scale(&norm));
        });
        out
    }

    /// Trace-free part of a symmetric rank-1..3 tensor.
    pub fn trace_free_symmetric(&self) -> PolyTensor {
        let n = self.nval as i64;
        match self.rank {
            0 | 1 => self.clone(),
            2 => {
                let tr = self.trace(0, 1);
                let c = BigRational::new(1.into(), n.into());
                let mut out = self.clone();
                let t = tr.get(&[]).scale(&c);
                for i in 0..self.nval {
                    let neg = t.neg();
                    out.add_assign_at(&[i, i], &neg);
                }
                out
            }
            3 => {
                let tr = self.trace(1, 2); // rank 1; symmetric input makes all traces equal
                let c = BigRational::new(1.into(), (n + 2).into());
                let mut out = self.clone();
                for a in 0..self.nval {
                    let t = tr.get(&[a]).scale(&c).neg();
                    for b in 0..self.nval {
                        out.add_assign_at(&[a, b, b], &t);
                        out.add_assign_at(&[b, a, b], &t);
                        out.add_assign_at(&[b, b, a], &t);
                    }
                }
                out
            }
            r => panic!("trace_free_symmetric unsupported at rank {}", r),
        }
    }
}

/// Iterate over all multi-indices of the given rank.
pub fn for_each_index(nval: usize, rank: usize, f: &mut impl FnMut(&[usize])) {
    let mut idx = vec![0usize; rank];
    loop {
        f(&idx);
        let mut pos = rank;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < nval {
                break;
            }
            idx[pos] = 0;
        }
    }
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    let smaller = permutations(k - 1);
    for p in smaller {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_of_identity_is_n() {
        let n = 4;
        let mut g = PolyTensor::zeros(n, 2);
        for i in 0..n {
            g.set(&[i, i], Poly::one(n));
        }
        let tr = g.trace(0, 1);
        assert_eq!(tr.get(&[]), &Poly::int(n, n as i64));
    }

    #[test]
    fn trace_free_rank3_kills_traces() {
        let n = 3;
        // T_{abc} = x_a δ_{bc} symmetrized
        let mut t = PolyTensor::zeros(n, 3);
        for a in 0..n {
            for b in 0..n {
                t.add_assign_at(&[a, b, b], &Poly::var(n, a));
            }
        }
        let s = t.symmetrize().trace_free_symmetric();
        assert!(s.trace(1, 2).is_zero());
        assert!(s.trace(0, 1).is_zero());
    }

    #[test]
    fn laplacian_sign_convention() {
        // Δ = -Σ∂² so Δ(x0²) = -2
        let n = 2;
        let x = Poly::var(n, 0);
        let f = PolyTensor::scalar(n, x.mul(&x));
        let lf = f.laplacian();
        assert_eq!(lf.get(&[]), &Poly::int(n, -2));
    }
}
