//! Exact enumeration of polynomial conformal Killing tensors on flat ℝⁿ.
//!
//! The flat CKT equation is assembled as a linear system on monomial
//! coefficients, one homogeneous degree at a time. The system splits
//! into independent blocks under the per-coordinate parity of the
//! combined (monomial, component) weight, which keeps the elimination
//! small. Nullspaces are computed mod 2^61−1, reconstructed to ℚ, and
//! then certified by exact re-substitution into the equation, so the
//! reported dimensions are exact despite the modular shortcut.

use crate::modp;
use crate::poly::{monomials_of_degree, Poly};
use crate::tensor::{for_each_index, PolyTensor};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug)]
pub enum KernelError {
    DimensionTooSmall(usize),
    DegreeCapTooSmall { rank: usize, cap: usize },
    Certification(String),
    NotAConformalKilling,
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::DimensionTooSmall(n) => write!(f, "dimension {} rejected: need n >= 3", n),
            KernelError::DegreeCapTooSmall { rank, cap } => {
                write!(f, "degree cap {} below jet bound for rank {}", cap, rank)
            }
            KernelError::Certification(s) => write!(f, "exact certification failed: {}", s),
            KernelError::NotAConformalKilling => write!(f, "field is not a conformal Killing tensor"),
        }
    }
}

impl std::error::Error for KernelError {}

/// The flat conformal Killing operator: trace-free symmetrized gradient.
pub fn ckt_operator(sigma: &PolyTensor) -> PolyTensor {
    sigma.derivative().symmetrize().trace_free_symmetric()
}

/// Exact membership test (symmetry and trace-freeness included).
pub fn is_ckt(sigma: &PolyTensor) -> bool {
    if sigma.rank >= 2 {
        if !sigma.sub(&sigma.symmetrize()).is_zero() {
            return false;
        }
        if !sigma.trace(0, 1).is_zero() {
            return false;
        }
    }
    ckt_operator(sigma).is_zero()
}

fn component_reps(rank: usize, nval: usize) -> Vec<Vec<usize>> {
    let mut reps = vec![];
    for_each_index(nval, rank, &mut |idx| {
        if idx.windows(2).all(|w| w[0] <= w[1]) {
            reps.push(idx.to_vec());
        }
    });
    reps
}

/// Symmetric tensor with a single monomial placed at one representative
/// component (scattered over the index orbit).
fn basis_tensor(nval: usize, rank: usize, rep: &[usize], mono: &[u8]) -> PolyTensor {
    let mut t = PolyTensor::zeros(nval, rank);
    let p = Poly::monomial(nval, mono.to_vec(), BigRational::new(1.into(), 1.into()));
    let mut perms_seen: Vec<Vec<usize>> = vec![];
    for perm in crate::tensor::permutations(rank) {
        let idx: Vec<usize> = perm.iter().map(|&k| rep[k]).collect();
        if !perms_seen.contains(&idx) {
            t.set(&idx, p.clone());
            perms_seen.push(idx);
        }
    }
    t
}

fn parity_key(mono: &[u8], indices: &[usize], nval: usize) -> Vec<bool> {
    let mut key: Vec<bool> = mono.iter().map(|&e| e % 2 == 1).collect();
    key.resize(nval, false);
    for &i in indices {
        key[i] = !key[i];
    }
    key
}

/// Basis of the exact kernel of the flat CKT operator on polynomial
/// tensors of degree ≤ deg_cap, homogeneous degree by degree.
pub fn ckt_polynomial_basis(
    rank: usize,
    nval: usize,
    deg_cap: usize,
) -> Result<Vec<PolyTensor>, KernelError> {
    if nval < 3 {
        return Err(KernelError::DimensionTooSmall(nval));
    }
    // jet depth bounds the polynomial degree at 2·rank
    if deg_cap < 2 * rank {
        return Err(KernelError::DegreeCapTooSmall { rank, cap: deg_cap });
    }
    let mut basis = vec![];
    for d in 0..=deg_cap {
        basis.extend(ckt_basis_degree(rank, nval, d)?);
    }
    Ok(basis)
}

fn ckt_basis_degree(rank: usize, nval: usize, d: usize) -> Result<Vec<PolyTensor>, KernelError> {
    let monos = monomials_of_degree(nval, d);
    let reps = component_reps(rank, nval);
    let out_reps = component_reps(rank + 1, nval);
    let out_rep_index: BTreeMap<Vec<usize>, usize> =
        out_reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let out_monos = if d > 0 {
        monomials_of_degree(nval, d - 1)
    } else {
        vec![]
    };
    let out_mono_index: BTreeMap<Vec<u8>, usize> =
        out_monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mono_index: BTreeMap<Vec<u8>, usize> =
        monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

    // group unknowns by parity class
    let mut blocks: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    let unknowns: Vec<(usize, usize)> = reps
        .iter()
        .enumerate()
        .flat_map(|(ri, _)| (0..monos.len()).map(move |mi| (ri, mi)))
        .collect();
    for (u, &(ri, mi)) in unknowns.iter().enumerate() {
        let key = parity_key(&monos[mi], &reps[ri], nval);
        blocks.entry(key).or_default().push(u);
    }

    // sparse columns: equation rows keyed by (0, out_rep, out_mono) and
    // trace rows keyed by (1, mono)
    type RowKey = (u8, usize, usize);
    let mut columns: Vec<Vec<(RowKey, u64)>> = Vec::with_capacity(unknowns.len());
    for &(ri, mi) in &unknowns {
        let sigma = basis_tensor(nval, rank, &reps[ri], &monos[mi]);
        let image = ckt_operator(&sigma);
        let mut col: Vec<(RowKey, u64)> = vec![];
        for rep in &out_reps {
            let p = image.get(rep);
            for (e, c) in p.terms() {
                let row = (0u8, out_rep_index[rep], out_mono_index[e]);
                col.push((row, modp::from_rational(c)));
            }
        }
        if rank >= 2 {
            let tr = sigma.trace(0, 1);
            let zero_rep = vec![0usize; rank - 2];
            let p = tr.get(&zero_rep);
            for (e, c) in p.terms() {
                col.push(((1u8, 0, mono_index[e]), modp::from_rational(c)));
            }
        }
        columns.push(col);
    }

    let mut out = vec![];
    for (_, members) in blocks {
        // local row numbering over the rows touched by this block
        let mut row_ids: BTreeMap<RowKey, usize> = BTreeMap::new();
        for &u in &members {
            for (rk, _) in &columns[u] {
                let next = row_ids.len();
                row_ids.entry(*rk).or_insert(next);
            }
        }
        let nrows = row_ids.len();
        let ncols = members.len();
        let mut rows = vec![vec![0u64; ncols]; nrows];
        for (local_col, &u) in members.iter().enumerate() {
            for (rk, v) in &columns[u] {
                let r = row_ids[rk];
                rows[r][local_col] = modp::add(rows[r][local_col], *v);
            }
        }
        let null = modp::nullspace(rows, ncols);
        for v in null {
            let mut sigma = PolyTensor::zeros(nval, rank);
            for (local_col, &u) in members.iter().enumerate() {
                if v[local_col] == 0 {
                    continue;
                }
                let q = modp::reconstruct(v[local_col]).ok_or_else(|| {
                    KernelError::Certification("rational reconstruction failed".into())
                })?;
                let (ri, mi) = unknowns[u];
                let contrib = basis_tensor(nval, rank, &reps[ri], &monos[mi]).scale(&q);
                sigma = sigma.add(&contrib);
            }
            if !is_ckt(&sigma) {
                return Err(KernelError::Certification(format!(
                    "reconstructed degree-{} vector fails the exact equation",
                    d
                )));
            }
            out.push(sigma);
        }
    }
    Ok(out)
}

/// Explicit conformal Killing vector basis: translations, rotations,
/// the dilation, and special conformal fields.
pub fn ckv_basis(nval: usize) -> Vec<PolyTensor> {
    let n = nval;
    let mut out = vec![];
    for k in 0..n {
        let mut t = PolyTensor::zeros(n, 1);
        t.set(&[k], Poly::one(n));
        out.push(t);
    }
    for k in 0..n {
        for l in k + 1..n {
            let mut t = PolyTensor::zeros(n, 1);
            t.set(&[k], Poly::var(n, l));
            t.set(&[l], Poly::var(n, k).neg());
            out.push(t);
        }
    }
    let mut dil = PolyTensor::zeros(n, 1);
    for i in 0..n {
        dil.set(&[i], Poly::var(n, i));
    }
    out.push(dil);
    let norm2 = {
        let mut acc = Poly::zero(n);
        for i in 0..n {
            acc = acc.add(&Poly::var(n, i).mul(&Poly::var(n, i)));
        }
        acc
    };
    for k in 0..n {
        let mut t = PolyTensor::zeros(n, 1);
        for i in 0..n {
            let mut p = Poly::var(n, k).mul(&Poly::var(n, i)).scale(&BigRational::new(
                (-2).into(),
                1.into(),
            ));
            if i == k {
                p = p.add(&norm2);
            }
            t.set(&[i], p);
        }
        out.push(t);
    }
    out
}

/// Trace-free symmetric products of conformal Killing vectors: cheap
/// rank-2 CKT samples valid in any dimension.
pub fn ckt2_samples(nval: usize, max_samples: usize) -> Result<Vec<PolyTensor>, KernelError> {
    let vs = ckv_basis(nval);
    let mut out = vec![];
    'outer: for i in 0..vs.len() {
        for j in i..vs.len() {
            let mut t = PolyTensor::zeros(nval, 2);
            for a in 0..nval {
                for b in 0..nval {
                    let p = vs[i]
                        .get(&[a])
                        .mul(vs[j].get(&[b]))
                        .add(&vs[i].get(&[b]).mul(vs[j].get(&[a])));
                    t.set(&[a, b], p.scale(&BigRational::new(1.into(), 2.into())));
                }
            }
            let t = t.trace_free_symmetric();
            if !is_ckt(&t) {
                return Err(KernelError::NotAConformalKilling);
            }
            if !t.is_zero() {
                out.push(t);
            }
            if out.len() >= max_samples {
                break 'outer;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ckv_basis_members_satisfy_equation() {
        for v in ckv_basis(3) {
            assert!(is_ckt(&v));
        }
        assert_eq!(ckv_basis(3).len(), 10);
        assert_eq!(ckv_basis(4).len(), 15);
    }

    #[test]
    fn rank1_kernel_dimension_small() {
        let basis = ckt_polynomial_basis(1, 3, 2).unwrap();
        assert_eq!(basis.len(), 10);
        let basis4 = ckt_polynomial_basis(1, 4, 2).unwrap();
        assert_eq!(basis4.len(), 15);
    }

    #[test]
    fn rejects_low_dimension_and_cap() {
        assert!(ckt_polynomial_basis(1, 2, 4).is_err());
        assert!(ckt_polynomial_basis(2, 4, 3).is_err());
        assert!(ckt_polynomial_basis(1, 4, 1).is_err());
    }

    #[test]
    fn ckv_products_are_ckt2() {
        let samples = ckt2_samples(4, 6).unwrap();
        assert!(samples.len() >= 5);
    }
}
