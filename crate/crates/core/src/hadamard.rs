//! Hadamard triples `(M, D, S)`: verification, exhaustive search, and
//! transport of spectrum sets across a conjugacy in `GL_n(p)`.
//!
//! The matrix `H = |D|^{-1/2} [exp(2πi⟨M^{-1}d, s⟩)]` is unitary iff every
//! difference `s - s'` of distinct elements of `S` satisfies
//! `m_D(M^{-*}(s - s')) = 0`.
//!
//! # Completeness of the search
//!
//! That condition only sees `s - s'` modulo `M^*Z^n`, since `m_D` is
//! `Z^n`-periodic, and it is unchanged by a common translation of `S`. So
//! every Hadamard partner `S` can be moved to one that contains 0 and whose
//! other elements are representatives from a fixed transversal of
//! `Z^n / M^*Z^n`. Two distinct elements in the same coset have an integral
//! difference point where `m_D = 1`, so they occupy distinct cosets. Scanning
//! all `(|D|-1)`-subsets of the non-zero representatives is therefore
//! exhaustive, and a negative answer is a proof of non-admissibility.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::maskzero::{is_zero_exact, DigitSet, RationalPoint};
use crate::modlin::{euler_phi, rat_to_f64, CosetTransversal, FpMatrix, IntMatrix, ScaledIntMatrix};

/// Default cap on visited search nodes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardTriple {
    pub m: IntMatrix,
    pub d: DigitSet,
    pub s: DigitSet,
    verified: bool,
}

impl HadamardTriple {
    pub fn new(m: IntMatrix, d: DigitSet, s: DigitSet) -> Self {
        Self { m, d, s, verified: false }
    }

    /// Runs [`verify_triple`] and records the outcome.
    pub fn verify(&mut self) -> Result<bool> {
        self.verified = verify_triple(&self.m, &self.d, &self.s)?;
        Ok(self.verified)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

fn check_shapes(m: &IntMatrix, d: &DigitSet, s: &DigitSet) -> Result<()> {
    if m.dim() != d.dim() || s.dim() != d.dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "M is {}x{}, D has dimension {}, S has dimension {}",
            m.dim(),
            m.dim(),
            d.dim(),
            s.dim()
        )));
    }
    if s.len() != d.len() {
        return Err(Error::DimensionMismatch(alloc::format!("|S| = {} but |D| = {}", s.len(), d.len())));
    }
    Ok(())
}

/// `max |(H^*H - I)_{ij}|` in double precision, phases reduced exactly.
pub fn hadamard_residual(m: &IntMatrix, d: &DigitSet, s: &DigitSet) -> Result<f64> {
    check_shapes(m, d, s)?;
    let minv = m.inverse()?;
    let scaled: Vec<Vec<BigRational>> = d.iter().map(|x| minv.mul_int_vec(x)).collect();
    let k = d.len();
    let h: Vec<Vec<Complex64>> = s
        .iter()
        .map(|sv| {
            scaled
                .iter()
                .map(|md| {
                    let phase: BigRational = md.iter().zip(sv).map(|(a, b)| a * b).sum();
                    let frac = &phase - phase.floor();
                    Complex64::from_polar(1.0 / libm::sqrt(k as f64), 2.0 * PI * rat_to_f64(&frac))
                })
                .collect()
        })
        .collect();
    let mut worst = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let entry: Complex64 = (0..k).map(|r| h[r][i].conj() * h[r][j]).sum();
            let target = if i == j { Complex64::one() } else { Complex64::zero() };
            worst = worst.max((entry - target).norm());
        }
    }
    Ok(worst)
}

/// Exact Hadamard test, cross-checked against [`hadamard_residual`].
pub fn verify_triple(m: &IntMatrix, d: &DigitSet, s: &DigitSet) -> Result<bool> {
    check_shapes(m, d, s)?;
    let mt_inv = m.transpose().inverse()?;
    let mut exact = true;
    'outer: for (i, a) in s.iter().enumerate() {
        for b in &s.digits()[i + 1..] {
            let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            if !is_zero_exact(d, &RationalPoint::new(mt_inv.mul_int_vec(&diff)))? {
                exact = false;
                break 'outer;
            }
        }
    }
    let residual = hadamard_residual(m, d, s)?;
    if exact && residual >= RESIDUAL_TOL {
        return Err(Error::NumericMismatch(alloc::format!(
            "exact test accepts but ‖H*H - I‖ = {residual:e}"
        )));
    }
    Ok(exact)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(DigitSet),
    NotFound,
    /// The node budget ran out before the search space was exhausted.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSearch {
    pub outcome: SearchOutcome,
    /// `C(|det M| - 1, |D| - 1)`.
    pub search_space: BigInt,
    /// Search nodes visited, counted in canonical order up to the decision.
    pub nodes: u64,
    pub budget: u64,
}

/// Result of exploring one top-level branch of the search tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchResult {
    pub found: Option<Vec<usize>>,
    pub nodes: u64,
    /// `true` when the branch stopped because it hit its budget.
    pub exhausted: bool,
}

/// Precomputed search data for `find_spectrum_set`.
///
/// Branch `b` fixes the smallest non-zero class of `S` to `b`, so the
/// branches partition the search tree in canonical order. They can be run
/// independently and combined with [`SearchPlan::reduce`].
#[derive(Clone, Debug)]
pub struct SearchPlan {
    transversal: CosetTransversal,
    /// `compat[i][j]`: the class of `r_i - r_j` is good; only filled for good classes.
    compat: Vec<Vec<bool>>,
    /// Indices of good classes in increasing order.
    candidates: Vec<usize>,
    target: usize,
    search_space: BigInt,
    /// More digits than cosets: no partner can exist.
    infeasible: bool,
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

impl SearchPlan {
    pub fn new(m: &IntMatrix, d: &DigitSet) -> Result<Self> {
        if m.dim() != d.dim() {
            return Err(Error::DimensionMismatch(alloc::format!("M is {}x{}, D has dimension {}", m.dim(), m.dim(), d.dim())));
        }
        let mt = m.transpose();
        let det = m.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let abs_det = det.abs();
        let target = d.len() - 1;
        let det_u64: Option<u64> = (&abs_det).try_into().ok();
        let search_space = match det_u64 {
            Some(v) => binomial(v - 1, target as u64),
            None => BigInt::zero(),
        };
        if BigInt::from(d.len()) > abs_det {
            // pigeonhole: not enough cosets for distinct elements
            return Ok(Self {
                transversal: CosetTransversal::new(&IntMatrix::identity(m.dim()))?,
                compat: vec![vec![false]],
                candidates: Vec::new(),
                target,
                search_space,
                infeasible: true,
            });
        }
        let transversal = CosetTransversal::new(&mt)?;
        let mt_inv: ScaledIntMatrix = mt.inverse()?;
        // good[c]: m_D vanishes at M^{-*} r_c for representative r_c
        let mut good = Vec::with_capacity(transversal.len());
        for r in transversal.reps() {
            let x = RationalPoint::new(mt_inv.mul_int_vec(r));
            good.push(!x.is_integral() && is_zero_exact(d, &x)?);
        }
        let candidates: Vec<usize> = (0..good.len()).filter(|&c| good[c]).collect();
        let reps = transversal.reps();
        let mut compat = vec![vec![false; transversal.len()]; transversal.len()];
        for (a, &i) in candidates.iter().enumerate() {
            for &j in &candidates[a + 1..] {
                let diff: Vec<BigInt> = reps[j].iter().zip(&reps[i]).map(|(x, y)| x - y).collect();
                let ok = good[transversal.index_of(&diff)];
                compat[i][j] = ok;
                compat[j][i] = ok;
            }
        }
        Ok(Self { transversal, compat, candidates, target, search_space, infeasible: false })
    }

    pub fn search_space(&self) -> &BigInt {
        &self.search_space
    }

    /// Number of top-level branches.
    pub fn branch_count(&self) -> usize {
        if self.target == 0 {
            1
        } else if self.infeasible {
            0
        } else {
            self.candidates.len()
        }
    }

    /// Explores branch `b` visiting at most `budget` nodes.
    pub fn search_branch(&self, b: usize, budget: u64) -> BranchResult {
        if self.target == 0 {
            return BranchResult { found: Some(Vec::new()), nodes: 1, exhausted: false };
        }
        if self.infeasible {
            return BranchResult { found: None, nodes: 0, exhausted: false };
        }
        let mut st = BranchState { plan: self, budget, nodes: 0, exhausted: false };
        let first = self.candidates[b];
        let rest: Vec<usize> = self.candidates[b + 1..].iter().copied().filter(|&c| self.compat[first][c]).collect();
        let mut chosen = vec![first];
        let found = if st.visit() { st.extend(&mut chosen, &rest) } else { None };
        BranchResult { found, nodes: st.nodes, exhausted: st.exhausted }
    }

    /// Combines per-branch results, each run with the full `budget`, into the
    /// outcome a sequential search with a shared budget would produce.
    pub fn reduce(&self, results: &[BranchResult], budget: u64) -> SpectrumSearch {
        let mut used = 0u64;
        for r in results {
            if r.exhausted || used + r.nodes > budget {
                return self.finish(SearchOutcome::Undetermined, budget.min(used + r.nodes), budget);
            }
            used += r.nodes;
            if let Some(classes) = &r.found {
                return self.finish(SearchOutcome::Found(self.materialize(classes)), used, budget);
            }
        }
        self.finish(SearchOutcome::NotFound, used, budget)
    }

    fn finish(&self, outcome: SearchOutcome, nodes: u64, budget: u64) -> SpectrumSearch {
        SpectrumSearch { outcome, search_space: self.search_space.clone(), nodes, budget }
    }

    fn materialize(&self, classes: &[usize]) -> DigitSet {
        let n = self.transversal.base().dim();
        let mut digits = vec![vec![BigInt::zero(); n]];
        digits.extend(classes.iter().map(|&c| self.transversal.reps()[c].clone()));
        DigitSet::new(digits).expect("distinct coset representatives")
    }

    /// Sequential search with a shared budget.
    pub fn run(&self, budget: u64) -> SpectrumSearch {
        let mut results = Vec::new();
        let mut used = 0u64;
        for b in 0..self.branch_count() {
            let r = self.search_branch(b, budget - used);
            used += r.nodes;
            let stop = r.exhausted || r.found.is_some();
            results.push(r);
            if stop {
                break;
            }
        }
        self.reduce(&results, budget)
    }
}

struct BranchState<'a> {
    plan: &'a SearchPlan,
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

impl BranchState<'_> {
    fn visit(&mut self) -> bool {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return false;
        }
        self.nodes += 1;
        true
    }

    fn extend(&mut self, chosen: &mut Vec<usize>, cand: &[usize]) -> Option<Vec<usize>> {
        if chosen.len() == self.plan.target {
            return Some(chosen.clone());
        }
        let need = self.plan.target - chosen.len();
        for (k, &c) in cand.iter().enumerate() {
            if cand.len() - k < need {
                return None;
            }
            if !self.visit() {
                return None;
            }
            let next: Vec<usize> = cand[k + 1..].iter().copied().filter(|&w| self.plan.compat[c][w]).collect();
            chosen.push(c);
            if let Some(s) = self.extend(chosen, &next) {
                return Some(s);
            }
            chosen.pop();
            if self.exhausted {
                return None;
            }
        }
        None
    }
}

/// Lexicographically first spectrum set `S ∋ 0` over the canonical
/// transversal of `Z^n / M^*Z^n`, with the default budget.
pub fn find_spectrum_set(m: &IntMatrix, d: &DigitSet) -> Result<SpectrumSearch> {
    find_spectrum_set_with_budget(m, d, DEFAULT_BUDGET)
}

pub fn find_spectrum_set_with_budget(m: &IntMatrix, d: &DigitSet, budget: u64) -> Result<SpectrumSearch> {
    Ok(SearchPlan::new(m, d)?.run(budget))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Moves a spectrum set between the two sides of a conjugate pair.
///
/// Forward: `det(AB) B^* S`. Backward: `|det B|^{φ(p)} B^{-*} S̃`.
pub fn transport_spectrum_set(s: &DigitSet, a: &IntMatrix, b: &IntMatrix, p: u64, direction: Direction) -> Result<DigitSet> {
    crate::modlin::require_prime(p)?;
    if a.dim() != s.dim() || b.dim() != s.dim() {
        return Err(Error::DimensionMismatch("A, B and S must share a dimension".into()));
    }
    if !FpMatrix::from_int(&a.mul(b), p).is_identity() {
        return Err(Error::HypothesisViolation(alloc::format!("AB is not the identity mod {p}")));
    }
    let bt = b.transpose();
    match direction {
        Direction::Forward => s.map(&bt.scale(&a.mul(b).det())),
        Direction::Backward => {
            let inv = bt.inverse()?;
            let factor = b.det().abs().pow(euler_phi(p) as u32);
            let scaled = ScaledIntMatrix::new(inv.num.scale(&factor), inv.den.clone());
            let m = scaled.to_integer().ok_or(Error::NonIntegerResult)?;
            s.map(&m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn d1() -> DigitSet {
        DigitSet::from_i64(&[[0, 0], [1, 0], [0, 1]])
    }

    fn found(r: &SpectrumSearch) -> &DigitSet {
        match &r.outcome {
            SearchOutcome::Found(s) => s,
            other => panic!("expected Found, got {other:?}"),
        }
    }

    /// Brute force over all pairs of {0..2}^2 \ {0}: the independent oracle.
    fn brute_3i_partners() -> Vec<BTreeSet<Vec<i64>>> {
        let m = IntMatrix::from_i64([[3, 0], [0, 3]]);
        let pts: Vec<[i64; 2]> = (0..3).flat_map(|a| (0..3).map(move |b| [a, b])).filter(|p| *p != [0, 0]).collect();
        let mut out = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let s = DigitSet::from_i64(&[[0, 0], pts[i], pts[j]]);
                if verify_triple(&m, &d1(), &s).unwrap() {
                    out.push([vec![0, 0], pts[i].to_vec(), pts[j].to_vec()].into_iter().collect());
                }
            }
        }
        out
    }

    #[test]
    fn verify_examples() {
        let m = IntMatrix::from_i64([[3, 0], [0, 3]]);
        assert!(verify_triple(&m, &d1(), &DigitSet::from_i64(&[[0, 0], [1, 2], [2, 1]])).unwrap());
        assert!(!verify_triple(&m, &d1(), &DigitSet::from_i64(&[[0, 0], [3, 0], [1, 2]])).unwrap());
        let m = IntMatrix::from_i64([[0, 10], [9, 0]]);
        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [2, 9]]);
        assert!(!verify_triple(&m, &d, &DigitSet::from_i64(&[[0, 0], [1, 0], [0, 1]])).unwrap());
        assert!(verify_triple(&m, &d, &DigitSet::from_i64(&[[0, 0], [1, 0]])).is_err());
    }

    #[test]
    fn search_3i() {
        let m = IntMatrix::from_i64([[3, 0], [0, 3]]);
        let r = find_spectrum_set(&m, &d1()).unwrap();
        let s = found(&r);
        let set: BTreeSet<Vec<i64>> =
            s.iter().map(|v| v.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
        let oracle = brute_3i_partners();
        assert_eq!(oracle.len(), 1);
        assert_eq!(set, oracle[0]);
        assert_eq!(r.search_space, BigInt::from(28));
    }

    #[test]
    fn search_negative_cases() {
        let m = IntMatrix::from_i64([[0, 10], [9, 0]]);
        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [2, 9]]);
        let r = find_spectrum_set(&m, &d).unwrap();
        assert_eq!(r.outcome, SearchOutcome::NotFound);
        assert_eq!(r.search_space, BigInt::from(3916));

        let m = IntMatrix::from_i64([[3, 1], [1, 4]]);
        let r = find_spectrum_set(&m, &d1()).unwrap();
        assert_eq!(r.outcome, SearchOutcome::NotFound);
        assert_eq!(r.search_space, BigInt::from(45));
        // independent oracle: no pair of transversal reps works
        let t = CosetTransversal::new(&m.transpose()).unwrap();
        for i in 1..t.len() {
            for j in i + 1..t.len() {
                let s = DigitSet::new(vec![vec![BigInt::zero(); 2], t.reps()[i].clone(), t.reps()[j].clone()]).unwrap();
                assert!(!verify_triple(&m, &d1(), &s).unwrap());
            }
        }
    }

    #[test]
    fn budget_gives_undetermined() {
        let m = IntMatrix::from_i64([[0, 10], [9, 0]]);
        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [2, 9]]);
        let plan = SearchPlan::new(&m, &d).unwrap();
        let full = plan.run(DEFAULT_BUDGET);
        if full.nodes > 0 {
            let r = plan.run(full.nodes - 1);
            assert_eq!(r.outcome, SearchOutcome::Undetermined);
        }
        let r = plan.run(full.nodes);
        assert_eq!(r.outcome, SearchOutcome::NotFound);
    }

    #[test]
    fn parallel_reduce_matches_sequential() {
        for (m, d) in [
            (IntMatrix::from_i64([[3, 0], [0, 3]]), d1()),
            (IntMatrix::from_i64([[4, 1], [1, 5]]), DigitSet::from_i64(&[[0, 0], [1, 0], [0, 1], [-1, -1]])),
            (IntMatrix::from_i64([[0, 10], [9, 0]]), DigitSet::from_i64(&[[0, 0], [1, 0], [2, 9]])),
        ] {
            let plan = SearchPlan::new(&m, &d).unwrap();
            for budget in [0, 1, 2, 5, 50, DEFAULT_BUDGET] {
                let branches: Vec<_> = (0..plan.branch_count()).map(|b| plan.search_branch(b, budget)).collect();
                assert_eq!(plan.reduce(&branches, budget), plan.run(budget), "budget {budget}");
            }
        }
    }

    #[test]
    fn too_many_digits_is_not_found() {
        let m = IntMatrix::from_i64([[2, 0], [0, 1]]);
        let r = find_spectrum_set(&m, &d1()).unwrap();
        assert_eq!(r.outcome, SearchOutcome::NotFound);
    }

    #[test]
    fn transport_examples() {
        let a = IntMatrix::from_i64([[1, 0], [0, 2]]);
        let b = a.clone();
        let s = DigitSet::from_i64(&[[0, 0], [1, 2], [2, 1]]);
        let fwd = transport_spectrum_set(&s, &a, &b, 3, Direction::Forward).unwrap();
        assert_eq!(fwd, DigitSet::from_i64(&[[0, 0], [4, 16], [8, 8]]));
        let zero = DigitSet::from_i64(&[[0, 0]]);
        assert_eq!(transport_spectrum_set(&zero, &a, &b, 3, Direction::Forward).unwrap(), zero);

        let back = transport_spectrum_set(&fwd, &a, &b, 3, Direction::Backward).unwrap();
        let m = IntMatrix::from_i64([[3, 0], [0, 3]]);
        assert!(verify_triple(&m, &d1(), &back).unwrap());
        assert!(matches!(
            transport_spectrum_set(&s, &IntMatrix::identity(2), &b, 3, Direction::Forward),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn triple_records_verification() {
        let mut t = HadamardTriple::new(IntMatrix::from_i64([[3, 0], [0, 3]]), d1(), DigitSet::from_i64(&[[0, 0], [1, 2], [2, 1]]));
        assert!(!t.is_verified());
        assert!(t.verify().unwrap());
        assert!(t.is_verified());
    }
}
