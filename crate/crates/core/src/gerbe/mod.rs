//! Trivial gerbes with a flat 0-connection and a global 1-connection on the
//! chart cover, for the complex torus and its mirror.
//!
//! The 0-connection on the overlap `i → j` is `π·δᵗτ·dx`, where `δ` is the
//! `x`-shift between the charts, and the 1-connection is `−πi·dxᵗτdx` on
//! every chart. Forms on an overlap are written in the first chart's
//! coordinates.

pub mod cover;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

pub use cover::{triple_nonempty, CoverIndex, Shift};

use crate::forms::{Coords, Form, Half, Poly};
use crate::linalg::{alt_check, CMatrix, CScalar};
use crate::report::{AxiomLine, Report};

/// Number of sampled triples used for `n ≥ 3`.
pub const SAMPLED_TRIPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GerbeError {
    #[error("tau must be a real alternating {0}x{0} matrix")]
    NotAlternating(usize),
    #[error("chart {0} does not belong to the cover of dimension {1}")]
    ForeignChart(String, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Complex,
    Symplectic,
}

impl Side {
    pub fn coords(self) -> Coords {
        match self {
            Side::Complex => Coords::Torus,
            Side::Symplectic => Coords::Mirror,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GerbeConnection {
    n: usize,
    tau: CMatrix,
    side: Side,
    overrides: BTreeMap<(CoverIndex, CoverIndex), Form>,
    one_conn: Form,
}

/// `π·δᵗτ·dx` for an `x`-shift `δ`.
pub fn zero_connection_for_shift(tau: &CMatrix, coords: Coords, dx: &[i64]) -> Form {
    let n = tau.rows();
    let nv = 2 * n;
    let coeffs: Vec<Poly> = (0..n)
        .map(|col| {
            let mut c = CScalar::default();
            for (row, &d) in dx.iter().enumerate() {
                if d != 0 {
                    c += &(&tau[(row, col)] * &CScalar::from_int(d));
                }
            }
            Poly::pi(nv).scale(&c)
        })
        .collect();
    Form::linear(coords, Half::X, &coeffs)
}

/// `−πi·dxᵗτdx`.
pub fn one_connection(tau: &CMatrix, coords: Coords) -> Form {
    let nv = 2 * tau.rows();
    Form::quadratic(coords, Half::X, tau, Half::X, &Poly::pi_times(nv, -CScalar::i(), 1))
}

pub fn build_gerbe(n: usize, tau: &CMatrix, side: Side) -> Result<GerbeConnection, GerbeError> {
    if tau.expect_shape(n, n).is_err() || !tau.is_real() || !alt_check(tau) {
        return Err(GerbeError::NotAlternating(n));
    }
    Ok(GerbeConnection {
        n,
        tau: tau.clone(),
        side,
        overrides: BTreeMap::new(),
        one_conn: one_connection(tau, side.coords()),
    })
}

impl GerbeConnection {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &CMatrix {
        &self.tau
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn one_conn(&self) -> &Form {
        &self.one_conn
    }

    /// Integrality of `τ`, reported as metadata.
    pub fn tau_is_integral(&self) -> bool {
        self.tau.is_integer()
    }

    /// The 0-connection on the overlap `i → j`, in chart `i` coordinates.
    pub fn zero_conn(&self, i: &CoverIndex, j: &CoverIndex) -> Form {
        if let Some(f) = self.overrides.get(&(i.clone(), j.clone())) {
            return f.clone();
        }
        zero_connection_for_shift(&self.tau, self.side.coords(), &i.shift_to(j).x)
    }

    /// Replace the 0-connection on one ordered overlap.
    pub fn set_zero_conn(&mut self, i: &CoverIndex, j: &CoverIndex, f: Form) -> Result<(), GerbeError> {
        for c in [i, j] {
            if c.n() != self.n {
                return Err(GerbeError::ForeignChart(c.to_string(), self.n));
            }
        }
        self.overrides.insert((i.clone(), j.clone()), f);
        Ok(())
    }

    /// Flip the sign of the 0-connection on `i ↔ j` in both directions,
    /// which keeps antisymmetry but breaks flatness when the form is nonzero.
    pub fn flip_overlap(&mut self, i: &CoverIndex, j: &CoverIndex) -> Result<(), GerbeError> {
        let fwd = self.zero_conn(i, j).neg();
        let back = self.zero_conn(j, i).neg();
        self.set_zero_conn(i, j, fwd)?;
        self.set_zero_conn(j, i, back)
    }

    /// Charts touching a replaced 0-connection.
    pub fn overridden_charts(&self) -> Vec<CoverIndex> {
        let mut out: Vec<CoverIndex> = self.overrides.keys().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        out.sort();
        out.dedup();
        out
    }

    fn overridden(&self, c: &CoverIndex) -> bool {
        self.overrides.keys().any(|(a, b)| a == c || b == c)
    }

    /// Express a form written in chart `j` coordinates in chart `i` coordinates.
    fn in_chart(&self, f: &Form, i: &CoverIndex, j: &CoverIndex) -> Form {
        f.translate(&i.shift_to(j).as_coords())
    }

    /// Pairs to check: one per shift pattern plus every pair touching an
    /// overridden chart.
    fn pairs(&self) -> Vec<(CoverIndex, CoverIndex)> {
        let mut out = cover::pair_representatives(self.n);
        let touched: Vec<CoverIndex> = CoverIndex::all(self.n).filter(|c| self.overridden(c)).collect();
        for c in &touched {
            for o in CoverIndex::all(self.n) {
                out.push((c.clone(), o.clone()));
                out.push((o, c.clone()));
            }
        }
        out
    }

    fn antisymmetry_failure(&self, pairs: &[(CoverIndex, CoverIndex)]) -> Option<String> {
        pairs.iter().find_map(|(i, j)| {
            let back = self.in_chart(&self.zero_conn(j, i), i, j);
            (!self.zero_conn(i, j).add(&back).is_zero()).then(|| format!("[{i} {j}]"))
        })
    }

    /// Cyclic sum of `f(i,j)` around `i → j → k → i` in chart `i` coordinates.
    fn cyclic_sum(&self, t: &[CoverIndex; 3], f: impl Fn(&CoverIndex, &CoverIndex) -> Form) -> Form {
        let [i, j, k] = t;
        f(i, j).add(&self.in_chart(&f(j, k), i, j)).add(&self.in_chart(&f(k, i), i, k))
    }

    /// First triple whose cyclic sum is nonzero. Triples without overridden
    /// charts are memoised by their shift pattern.
    fn triple_failure(
        &self,
        triples: &[[CoverIndex; 3]],
        f: impl Fn(&CoverIndex, &CoverIndex) -> Form,
    ) -> Option<String> {
        let mut memo: HashMap<(Shift, Shift), bool> = HashMap::new();
        for t in triples {
            let direct = t.iter().any(|c| self.overridden(c));
            let ok = if direct {
                self.cyclic_sum(t, &f).is_zero()
            } else {
                let key = (t[0].shift_to(&t[1]), t[1].shift_to(&t[2]));
                *memo.entry(key).or_insert_with(|| self.cyclic_sum(t, &f).is_zero())
            };
            if !ok {
                return Some(format!("[{} {} {}]", t[0], t[1], t[2]));
            }
        }
        None
    }

    /// Run every axiom over exhaustive (`n ≤ 2`) or sampled triples.
    pub fn check_axioms(&self, seed: u64) -> Report {
        let triples = cover::triples(self.n, SAMPLED_TRIPLES, seed);
        self.check_axioms_on(&triples)
    }

    pub fn check_axioms_on(&self, triples: &[[CoverIndex; 3]]) -> Report {
        let pairs = self.pairs();
        let mut r = Report::default();
        // The gerbe is trivial: ξ = 1 on every triple, so δξ = 1.
        r.push(AxiomLine::pass("delta-theta"));
        r.push(AxiomLine::from_failure("antisymmetry", self.antisymmetry_failure(&pairs)));
        r.push(AxiomLine::from_failure("triple-flatness", self.triple_failure(triples, |a, b| self.zero_conn(a, b))));
        r.push(AxiomLine::from_failure(
            "curvature-cocycle",
            self.triple_failure(triples, |a, b| self.zero_conn(a, b).d()),
        ));
        let compat = pairs.iter().find_map(|(i, j)| {
            let delta_beta = self.in_chart(&self.one_conn, i, j).sub(&self.one_conn);
            (delta_beta != self.zero_conn(i, j).d()).then(|| format!("[{i} {j}]"))
        });
        r.push(AxiomLine::from_failure("compatibility", compat));
        r.push(AxiomLine::from_failure(
            "one-connection-closed",
            (!self.one_conn.d().is_zero()).then(|| self.one_conn.d().to_string()),
        ));
        r
    }
}

/// `check_gerbe_axioms` with the default sampling seed.
pub fn check_gerbe_axioms(g: &GerbeConnection) -> Report {
    g.check_axioms(DEFAULT_SEED)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau2() -> CMatrix {
        CMatrix::from_ints(&[&[0, 1], &[-1, 0]])
    }

    #[test]
    fn zero_tau_gives_zero_forms() {
        let g = build_gerbe(2, &CMatrix::zeros(2, 2), Side::Complex).unwrap();
        assert!(g.one_conn().is_zero());
        let i = CoverIndex::new(vec![1, 1], vec![1, 1]);
        let j = CoverIndex::new(vec![3, 3], vec![1, 1]);
        assert!(g.zero_conn(&i, &j).is_zero());
        assert!(check_gerbe_axioms(&g).all_pass());
    }

    #[test]
    fn one_dimensional_tau_is_zero() {
        assert!(build_gerbe(1, &CMatrix::from_ints(&[&[1]]), Side::Complex).is_err());
        let g = build_gerbe(1, &CMatrix::zeros(1, 1), Side::Symplectic).unwrap();
        assert!(check_gerbe_axioms(&g).all_pass());
    }

    #[test]
    fn n2_example_forms() {
        let g = build_gerbe(2, &tau2(), Side::Complex).unwrap();
        let i = CoverIndex::new(vec![1, 2], vec![2, 2]);
        let j = CoverIndex::new(vec![3, 2], vec![2, 2]);
        let f = g.zero_conn(&i, &j);
        // π·τ₁ᵗdx = π dx₂.
        assert_eq!(f, Form::term(2, Coords::Torus, vec![1], Poly::pi(4)));
        assert!(f.d().is_zero());
        // Oracle: dxᵗτdx = Σ τ_kl dx_k∧dx_l = 2τ₁₂ dx₁∧dx₂.
        let expect = Form::term(2, Coords::Torus, vec![0, 1], Poly::pi_times(4, CScalar::int(0, -2), 1));
        assert_eq!(*g.one_conn(), expect);
    }

    #[test]
    fn built_gerbe_passes() {
        let g = build_gerbe(2, &tau2(), Side::Complex).unwrap();
        let r = check_gerbe_axioms(&g);
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.lines.len(), 6);
    }

    #[test]
    fn flipped_overlap_breaks_flatness() {
        let mut g = build_gerbe(2, &tau2(), Side::Complex).unwrap();
        let i = CoverIndex::new(vec![1, 1], vec![1, 1]);
        let j = CoverIndex::new(vec![3, 1], vec![1, 1]);
        g.flip_overlap(&i, &j).unwrap();
        let r = check_gerbe_axioms(&g);
        assert!(!r.line("triple-flatness").unwrap().pass, "{r}");
        assert!(r.line("antisymmetry").unwrap().pass);
    }

    #[test]
    fn one_sided_override_breaks_antisymmetry() {
        let mut g = build_gerbe(2, &tau2(), Side::Complex).unwrap();
        let i = CoverIndex::new(vec![1, 1], vec![1, 1]);
        let j = CoverIndex::new(vec![3, 1], vec![1, 1]);
        g.set_zero_conn(&i, &j, Form::zero(2, Coords::Torus)).unwrap();
        assert!(!check_gerbe_axioms(&g).line("antisymmetry").unwrap().pass);
    }

    #[test]
    fn integrality_is_metadata() {
        let half = CMatrix::from_rationals(2, 2, |r, c| match (r, c) {
            (0, 1) => crate::linalg::ratio(1, 2),
            (1, 0) => crate::linalg::ratio(-1, 2),
            _ => crate::linalg::ratio(0, 1),
        });
        let g = build_gerbe(2, &half, Side::Symplectic).unwrap();
        assert!(!g.tau_is_integral());
        assert!(check_gerbe_axioms(&g).all_pass());
    }
}
