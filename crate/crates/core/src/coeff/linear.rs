//! Exact linear solving over ℚ(n) by fraction-free (Bareiss) elimination.

use super::poly::Poly;
use super::ratfunc::RatFunc;
use std::collections::BTreeMap;
use std::fmt;

/// One linear equation Σ coeff·unknown = rhs over ℚ(n).
#[derive(Clone, Debug, Default)]
pub struct LinEq {
    pub coeffs: BTreeMap<String, RatFunc>,
    pub rhs: RatFunc,
}

impl LinEq {
    pub fn new() -> Self {
        LinEq {
            coeffs: BTreeMap::new(),
            rhs: RatFunc::zero(),
        }
    }

    /// Accumulate a coefficient. A name that cancels to zero stays in
    /// the equation so the solver still reports it as an unknown.
    pub fn add_coeff(&mut self, unknown: &str, c: RatFunc) {
        let entry = self
            .coeffs
            .entry(unknown.to_string())
            .or_insert_with(RatFunc::zero);
        *entry = &*entry + &c;
    }

    pub fn with(mut self, unknown: &str, c: RatFunc) -> Self {
        self.add_coeff(unknown, c);
        self
    }

    pub fn rhs(mut self, r: RatFunc) -> Self {
        self.rhs = r;
        self
    }
}

impl fmt::Display for LinEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", c, name)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = {}", self.rhs)
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Unique(BTreeMap<String, RatFunc>),
    Inconsistent,
    Underdetermined { free: Vec<String> },
}

impl LinearSolution {
    pub fn unique(&self) -> Option<&BTreeMap<String, RatFunc>> {
        match self {
            LinearSolution::Unique(m) => Some(m),
            _ => None,
        }
    }
}

/// Solve the system exactly. Unknown order (and hence the free-variable
/// report) is the sorted order of unknown names.
pub fn solve_linear(eqs: &[LinEq]) -> LinearSolution {
    let mut names: Vec<String> = vec![];
    for eq in eqs {
        for name in eq.coeffs.keys() {
            if !names.contains(name) {
                names.push(name.clone());
            }
        }
    }
    names.sort();
    let ncols = names.len();

    // clear denominators row by row: entries become polynomials
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(eqs.len());
    for eq in eqs {
        let mut lcm = Poly::one();
        let mut dens: Vec<&Poly> = eq.coeffs.values().map(|c| c.den()).collect();
        dens.push(eq.rhs.den());
        for d in dens {
            let g = lcm.gcd(d);
            lcm = &lcm.exact_div(&g) * d;
        }
        let mut row = Vec::with_capacity(ncols + 1);
        for name in &names {
            let c = eq.coeffs.get(name).cloned().unwrap_or_else(RatFunc::zero);
            row.push(c.num() * &lcm.exact_div(c.den()));
        }
        row.push(eq.rhs.num() * &lcm.exact_div(eq.rhs.den()));
        rows.push(row);
    }

    // forward fraction-free elimination (Bareiss), eliminating below the
    // pivot only; each step divides exactly by the previous pivot
    let nrows = rows.len();
    let mut pivot_cols: Vec<usize> = vec![];
    let mut prev_pivot = Poly::one();
    let mut r = 0usize;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        // deterministic pivot: the nonzero entry of least degree, ties by value
        let mut best: Option<usize> = None;
        for i in r..nrows {
            if rows[i][col].is_zero() {
                continue;
            }
            match best {
                None => best = Some(i),
                Some(b) => {
                    let cand = rows[i][col].degree();
                    let cur = rows[b][col].degree();
                    if cand < cur || (cand == cur && rows[i][col] < rows[b][col]) {
                        best = Some(i);
                    }
                }
            }
        }
        let Some(p) = best else { continue };
        rows.swap(r, p);
        for i in r + 1..nrows {
            for j in 0..=ncols {
                if j == col {
                    continue;
                }
                let t = &(&rows[r][col] * &rows[i][j]) - &(&rows[i][col] * &rows[r][j]);
                rows[i][j] = t.exact_div(&prev_pivot);
            }
            rows[i][col] = Poly::zero();
        }
        prev_pivot = rows[r][col].clone();
        pivot_cols.push(col);
        r += 1;
    }

    // consistency: a row with all-zero coefficients and nonzero rhs
    for row in &rows {
        if row[..ncols].iter().all(|c| c.is_zero()) && !row[ncols].is_zero() {
            return LinearSolution::Inconsistent;
        }
    }

    if pivot_cols.len() < ncols {
        let free: Vec<String> = (0..ncols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|c| names[c].clone())
            .collect();
        return LinearSolution::Underdetermined { free };
    }

    // back-substitution over the field
    let mut solution: BTreeMap<String, RatFunc> = BTreeMap::new();
    for (ri, &col) in pivot_cols.iter().enumerate().rev() {
        let mut rhs = RatFunc::normalize(rows[ri][ncols].clone(), Poly::one()).expect("poly rhs");
        for j in col + 1..ncols {
            if rows[ri][j].is_zero() {
                continue;
            }
            let a = RatFunc::normalize(rows[ri][j].clone(), Poly::one()).expect("poly entry");
            let x = &solution[&names[j]];
            rhs = &rhs - &(&a * x);
        }
        let pivot = RatFunc::normalize(rows[ri][col].clone(), Poly::one()).expect("pivot");
        solution.insert(names[col].clone(), &rhs / &pivot);
    }
    LinearSolution::Unique(solution)
}

/// Substitute a solution map into an equation; the residual rhs − lhs.
pub fn residual(eq: &LinEq, solution: &BTreeMap<String, RatFunc>) -> RatFunc {
    let mut lhs = RatFunc::zero();
    for (name, c) in &eq.coeffs {
        let v = solution.get(name).cloned().unwrap_or_else(RatFunc::zero);
        lhs = &lhs + &(c * &v);
    }
    &eq.rhs - &lhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(p: &[i64], q: &[i64]) -> RatFunc {
        RatFunc::of(p, q)
    }

    #[test]
    fn hook_projection_constants() {
        // -2/3 + 2K1 + nK2 = 0 and 1/3 + (1+n)K1 + K2 = 0
        let eqs = vec![
            LinEq::new()
                .with("K1", RatFunc::from_int(2))
                .with("K2", RatFunc::n())
                .rhs(rf(&[2], &[3])),
            LinEq::new()
                .with("K1", rf(&[1, 1], &[1]))
                .with("K2", RatFunc::one())
                .rhs(rf(&[-1], &[3])),
        ];
        let sol = solve_linear(&eqs);
        let m = sol.unique().expect("unique");
        assert_eq!(m["K1"], rf(&[-1], &[-3, 3]));
        assert_eq!(m["K2"], rf(&[2], &[-3, 3]));
    }

    #[test]
    fn row_projection_constants() {
        // 2/3 + nK1 + 2K2 = 0 and 2/3 + K1 + (1+n)K2 = 0
        let eqs = vec![
            LinEq::new()
                .with("K1", RatFunc::n())
                .with("K2", RatFunc::from_int(2))
                .rhs(rf(&[-2], &[3])),
            LinEq::new()
                .with("K1", RatFunc::one())
                .with("K2", rf(&[1, 1], &[1]))
                .rhs(rf(&[-2], &[3])),
        ];
        let sol = solve_linear(&eqs);
        let m = sol.unique().expect("unique");
        let expect = rf(&[-2], &[6, 3]);
        assert_eq!(m["K1"], expect);
        assert_eq!(m["K2"], expect);
    }

    #[test]
    fn tautology_is_underdetermined() {
        let eqs = vec![LinEq::new()
            .with("K", RatFunc::one())
            .with("K", RatFunc::from_int(-1))];
        // K - K = 0 leaves K unconstrained, but the name was seen
        let sol = solve_linear(&eqs);
        match sol {
            LinearSolution::Underdetermined { free } => assert_eq!(free, vec!["K".to_string()]),
            other => panic!("expected underdetermined, got {:?}", other),
        }
    }

    #[test]
    fn inconsistent_detected() {
        let eqs = vec![
            LinEq::new().with("x", RatFunc::one()).rhs(RatFunc::one()),
            LinEq::new().with("x", RatFunc::one()).rhs(RatFunc::from_int(2)),
        ];
        assert_eq!(solve_linear(&eqs), LinearSolution::Inconsistent);
    }

    #[test]
    fn solutions_satisfy_equations() {
        let eqs = vec![
            LinEq::new()
                .with("a", RatFunc::n())
                .with("b", RatFunc::one())
                .rhs(rf(&[1, 2], &[1])),
            LinEq::new()
                .with("a", RatFunc::one())
                .with("b", rf(&[-1, 1], &[1]))
                .rhs(rf(&[4], &[1])),
        ];
        let m = solve_linear(&eqs).unique().cloned().expect("unique");
        for eq in &eqs {
            assert!(residual(eq, &m).is_zero(), "residual nonzero for {}", eq);
        }
    }
}
