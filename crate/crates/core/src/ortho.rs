//! Orthogonal exponentials for `μ_{M,D}`: exact membership in the zero set
//! of `μ̂`, infinite orthogonality, bounds on `n*`, zero-set transport under
//! conjugacy, and the `(L, j0)` non-spectrality certificate.
//!
//! Throughout, `Z(μ̂) = ⋃_{j≥1} M^{*j}(Z_D + Z^n)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::conjugacy::{spectrality_criterion, ConjugacyMode, ConjugateWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::maskzero::{zero_set, zero_set_in_punctured_grid, DigitSet, RationalPoint, ZeroSet};
use crate::modlin::{is_expanding, smith_left, Expansion, IntMatrix, ScaledIntMatrix, DEFAULT_EXPANSION_TOL};

const MAX_CONTRACTION_STEPS: u32 = 10_000;

/// Exact membership oracle for `Z(μ̂_{M,D})`.
#[derive(Clone, Debug)]
pub struct MeasureZeros {
    mt: IntMatrix,
    mt_inv: ScaledIntMatrix,
    zeros: ZeroSet,
    /// `sup_r ‖M^{-*r}‖_∞`.
    growth: BigRational,
    /// Smallest torus distance from 0 to `Z_D`; `None` when `Z_D` is empty.
    delta: Option<BigRational>,
    /// `Z_D` as integer vectors over the common denominator `q`.
    scaled_zeros: Vec<Vec<BigInt>>,
}

impl MeasureZeros {
    /// Uses the closed-form zero set of `D`, which must be complete.
    pub fn new(m: &IntMatrix, d: &DigitSet) -> Result<Self> {
        let zeros = zero_set(d, &[])?;
        Self::with_zero_set(m, zeros)
    }

    pub fn with_zero_set(m: &IntMatrix, zeros: ZeroSet) -> Result<Self> {
        zeros.require_complete()?;
        if is_expanding(m, DEFAULT_EXPANSION_TOL) != Expansion::Expanding {
            return Err(Error::NotExpanding);
        }
        let mt = m.transpose();
        let mt_inv = mt.inverse()?;
        let half = BigRational::new(1.into(), 2.into());
        let mut power = ScaledIntMatrix::new(IntMatrix::identity(m.dim()), BigInt::one());
        let mut growth = BigRational::one();
        let mut steps = 0;
        loop {
            let norm = power.inf_norm();
            if norm <= half {
                break;
            }
            if norm > growth {
                growth = norm;
            }
            power = power.mul(&mt_inv);
            steps += 1;
            if steps > MAX_CONTRACTION_STEPS {
                return Err(Error::InvalidParameter("M^{-*} contracts too slowly".into()));
            }
        }
        let delta = zeros.min_torus_norm();
        let q = BigRational::from_integer(zeros.q().clone());
        let scaled_zeros = zeros
            .points()
            .map(|z| z.scale(&q).to_integers().expect("q clears every denominator"))
            .collect();
        Ok(Self { mt, mt_inv, zeros, growth, delta, scaled_zeros })
    }

    pub fn zero_set(&self) -> &ZeroSet {
        &self.zeros
    }

    /// Least `j ≥ 1` with `M^{-*j} ξ ∈ Z_D + Z^n`.
    ///
    /// Stops once `‖M^{-*j}ξ‖_∞ · sup_r ‖M^{-*r}‖_∞` drops below the torus
    /// distance from 0 to `Z_D`: every later iterate is then too close to 0
    /// to be a zero of `m_D`.
    pub fn membership(&self, xi: &RationalPoint) -> Option<u32> {
        let delta = self.delta.as_ref()?;
        // iterate on integer numerators w over a shared denominator `den`
        let mut den = xi.common_denominator();
        let dr = BigRational::from_integer(den.clone());
        let mut w: Vec<BigInt> = xi.coords().iter().map(|c| (c * &dr).to_integer()).collect();
        let q = self.zeros.q();
        let bound_num = self.growth.numer() * delta.denom();
        let bound_den = self.growth.denom() * delta.numer();
        for j in 1.. {
            w = self.mt_inv.num.mul_vec(&w);
            den *= &self.mt_inv.den;
            let g = w.iter().fold(den.clone(), |acc, x| acc.gcd(x));
            if !g.is_one() {
                w.iter_mut().for_each(|x| *x /= &g);
                den /= &g;
            }
            // den is the exact common denominator, so a zero needs den | q
            if q.is_multiple_of(&den) {
                let fw = q / &den;
                let hit = self.scaled_zeros.iter().any(|a| w.iter().zip(a).all(|(x, y)| (x * &fw - y).is_multiple_of(q)));
                if hit {
                    return Some(j);
                }
            }
            let max = w.iter().map(Signed::abs).max().unwrap_or_default();
            if max * &bound_num < &den * &bound_den {
                return None;
            }
        }
        unreachable!()
    }

    pub fn contains(&self, xi: &RationalPoint) -> bool {
        self.membership(xi).is_some()
    }

    /// `M^*` applied `j` times.
    pub fn forward(&self, x: &RationalPoint, j: u32) -> RationalPoint {
        (0..j).fold(x.clone(), |acc, _| acc.map(&self.mt))
    }
}

/// Least `j ≥ 1` with `M^{-*j} ξ ∈ Z(m_D)`, or `None` when `ξ ∉ Z(μ̂)`.
pub fn zero_membership(m: &IntMatrix, d: &DigitSet, xi: &RationalPoint) -> Result<Option<u32>> {
    Ok(MeasureZeros::new(m, d)?.membership(xi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteOrthogonal {
    pub exists: bool,
    /// Least `j` with `M^{*j} z ∈ Z^n` over `z ∈ Z_D`, and that `z`.
    pub witness: Option<(u32, RationalPoint)>,
}

fn torus_step(mt: &IntMatrix, x: &RationalPoint) -> RationalPoint {
    x.map(mt).torus()
}

/// Steps until the orbit of `x` under `x ↦ M^*x mod 1` reaches 0, if ever.
///
/// Floyd's cycle detection locates the eventual cycle; 0 is a fixed point,
/// so the orbit reaches 0 iff the cycle is `{0}`.
fn steps_to_zero(mt: &IntMatrix, x: &RationalPoint) -> Option<u32> {
    let mut slow = torus_step(mt, x);
    let mut fast = torus_step(mt, &slow);
    while slow != fast {
        slow = torus_step(mt, &slow);
        fast = torus_step(mt, &torus_step(mt, &fast));
    }
    if !slow.is_zero() {
        return None;
    }
    let mut y = x.clone();
    let mut j = 0;
    loop {
        y = torus_step(mt, &y);
        j += 1;
        if y.is_zero() {
            return Some(j);
        }
    }
}

/// Decides whether `L^2(μ_{M,D})` holds infinitely many orthogonal exponentials:
/// true iff `M^{*j} Z_D ∩ Z^n ≠ ∅` for some `j ≥ 1`.
pub fn has_infinite_orthogonal(m: &IntMatrix, d: &DigitSet) -> Result<InfiniteOrthogonal> {
    let zeros = zero_set(d, &[])?;
    infinite_orthogonal_from(m, &zeros)
}

pub fn infinite_orthogonal_from(m: &IntMatrix, zeros: &ZeroSet) -> Result<InfiniteOrthogonal> {
    zeros.require_complete()?;
    let mt = m.transpose();
    let witness = zeros
        .points()
        .filter_map(|z| steps_to_zero(&mt, z).map(|j| (j, z.clone())))
        .min_by(|a, b| a.0.cmp(&b.0));
    Ok(InfiniteOrthogonal { exists: witness.is_some(), witness })
}

/// `true` iff `x ↦ M x mod 1` is a bijection of `Ė_p^n`.
pub fn permutes_punctured_grid(m: &IntMatrix, p: u64) -> bool {
    let points = grid_points(m.dim(), p);
    let image: BTreeSet<RationalPoint> = points.iter().skip(1).map(|x| x.map(m).torus()).collect();
    image.len() + 1 == points.len() && !image.iter().any(RationalPoint::is_zero)
}

/// `E_q^n` in mixed-radix order, starting with 0.
fn grid_points(n: usize, q: u64) -> Vec<RationalPoint> {
    let total = q.pow(n as u32);
    let qb = BigInt::from(q);
    (0..total)
        .map(|mut k| {
            let mut coords = vec![BigRational::zero(); n];
            for c in coords.iter_mut().rev() {
                *c = BigRational::new(BigInt::from(k % q), qb.clone());
                k /= q;
            }
            RationalPoint::new(coords)
        })
        .collect()
}

/// Distinct frequencies whose pairwise differences lie in `Z(μ̂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalFamily {
    frequencies: Vec<RationalPoint>,
    verified: bool,
}

impl OrthogonalFamily {
    pub fn new(frequencies: Vec<RationalPoint>) -> Self {
        Self { frequencies, verified: false }
    }

    /// Re-checks every pair exactly and records the result.
    pub fn verify(&mut self, zeros: &MeasureZeros) -> bool {
        let f = &self.frequencies;
        let distinct = f.iter().collect::<BTreeSet<_>>().len() == f.len();
        self.verified = distinct
            && (0..f.len()).all(|i| (i + 1..f.len()).all(|j| zeros.contains(&f[i].sub(&f[j]))));
        self.verified
    }

    pub fn frequencies(&self) -> &[RationalPoint] {
        &self.frequencies
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperMethod {
    /// Maximum clique on residue classes of the grid.
    Clique,
    /// Size of the grid, used when the class graph is too large.
    TrivialPn,
    /// No finite bound is available.
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NStarBounds {
    pub lower: usize,
    pub witness: OrthogonalFamily,
    pub upper: Option<usize>,
    pub method: UpperMethod,
    /// Denominator `g` of the class grid `E_g^n` used for the upper bound.
    pub grid: u64,
    /// `false` when the witness search ran out of budget.
    pub search_complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NStarParams {
    /// Largest power `j` in candidates `M^{*j}(z + v)`.
    pub depth: u32,
    /// Box radius for `v`.
    pub radius: u32,
    /// Node cap for the witness clique search.
    pub budget: u64,
}

impl NStarParams {
    pub fn defaults(p: u64, n: usize) -> Self {
        Self { depth: 2 * (p.pow(n as u32) as u32 - 1), radius: 4, budget: 10_000_000 }
    }
}

const MAX_CLASS_VERTICES: u64 = 4096;

/// Index of a point of `E_g^n` (already reduced mod 1) in mixed-radix order.
fn class_index(x: &RationalPoint, g: u64) -> Option<u64> {
    let gb = BigInt::from(g);
    let mut idx = 0u64;
    for c in x.coords() {
        let scaled = c * BigRational::from_integer(gb.clone());
        if !scaled.is_integer() {
            return None;
        }
        let digit: u64 = scaled.to_integer().try_into().ok()?;
        idx = idx * g + digit;
    }
    Some(idx)
}

fn class_diff(a: u64, b: u64, g: u64, n: usize) -> u64 {
    let (mut a, mut b) = (a, b);
    let mut digits = vec![0u64; n];
    for slot in digits.iter_mut().rev() {
        *slot = (a % g + g - b % g) % g;
        a /= g;
        b /= g;
    }
    digits.iter().fold(0, |acc, d| acc * g + d)
}

/// Classes mod `Z^n` of `⋃_{j≥1} M^{*j} Z_D`.
fn orbit_classes(mt: &IntMatrix, zeros: &ZeroSet) -> BTreeSet<RationalPoint> {
    let mut out = BTreeSet::new();
    for z in zeros.points() {
        let mut y = torus_step(mt, z);
        while out.insert(y.clone()) {
            y = torus_step(mt, &y);
        }
    }
    out
}

/// Bounds on `n*(μ_{M,D})` with a verified witness family for the lower bound.
pub fn nstar_bounds(m: &IntMatrix, d: &DigitSet, p: u64, params: NStarParams) -> Result<NStarBounds> {
    crate::modlin::require_prime(p)?;
    let oracle = MeasureZeros::new(m, d)?;
    let zeros = oracle.zero_set().clone();
    let n = m.dim();
    let det = m.det();
    let grid: u64 = if zero_set_in_punctured_grid(&zeros, p)? {
        p
    } else {
        zeros.q().try_into().map_err(|_| Error::InvalidParameter("zero-set denominator too large".into()))?
    };
    let classes = orbit_classes(&oracle.mt, &zeros);

    let zero = RationalPoint::zero(n);
    // distinct frequencies occupy distinct classes only while no orbit returns to 0
    let (upper, method) = if det.is_multiple_of(&BigInt::from(p)) || classes.contains(&zero) {
        (None, UpperMethod::Unbounded)
    } else {
        let size = grid.checked_pow(n as u32).unwrap_or(u64::MAX);
        if size > MAX_CLASS_VERTICES {
            (Some(size as usize), UpperMethod::TrivialPn)
        } else {
            let pts = grid_points(n, grid);
            let allowed: BTreeSet<u64> = classes.iter().filter_map(|c| class_index(c, grid)).collect();
            let g = Graph::new(pts.len(), |i, j| allowed.contains(&class_diff(j as u64, i as u64, grid, n)));
            (Some(g.max_clique(&[0], None).len()), UpperMethod::Clique)
        }
    };

    // candidates M^{*j}(z + v) ∈ Z(μ̂), breadth-first in j then lexicographic in (z, v)
    let mut seen: BTreeSet<RationalPoint> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut candidates = vec![zero.clone()];
    let r = params.radius as i64;
    let side = (2 * r + 1) as u64;
    let boxes: Vec<Vec<BigInt>> = (0..side.pow(n as u32))
        .map(|mut k| {
            let mut v = vec![BigInt::zero(); n];
            for slot in v.iter_mut().rev() {
                *slot = BigInt::from((k % side) as i64 - r);
                k /= side;
            }
            v
        })
        .collect();
    for j in 1..=params.depth {
        for z in zeros.points() {
            for v in &boxes {
                let x = oracle.forward(&z.add_ints(v), j);
                if seen.insert(x.clone()) {
                    candidates.push(x);
                }
            }
        }
    }

    let cls: Vec<Option<u64>> = candidates.iter().map(|x| class_index(&x.torus(), grid)).collect();
    let allowed: BTreeSet<u64> = classes.iter().filter_map(|c| class_index(c, grid)).collect();
    let mut cache: BTreeMap<RationalPoint, bool> = BTreeMap::new();
    let g = Graph::new(candidates.len(), |i, j| {
        if let (Some(a), Some(b)) = (cls[i], cls[j]) {
            if !allowed.contains(&class_diff(a, b, grid, n)) {
                return false;
            }
        }
        let diff = candidates[i].sub(&candidates[j]);
        let key = if diff.coords().iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) { diff.neg() } else { diff };
        *cache.entry(key).or_insert_with_key(|k| oracle.contains(k))
    });
    let (clique, complete) = g.max_clique_budgeted(&[0], upper, params.budget);
    let mut witness = OrthogonalFamily::new(clique.iter().map(|&i| candidates[i].clone()).collect());
    if !witness.verify(&oracle) {
        return Err(Error::NumericMismatch("witness family failed exact re-verification".into()));
    }
    Ok(NStarBounds { lower: witness.len(), witness, upper, method, grid, search_complete: complete })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransportConstants {
    /// `c1 = det(AB)|det M̃|^e`, `c2 = |det M|^e`, used when `Z_{D̃} ⊂ Ė_p^n`.
    C,
    /// `d1 = |det M̃|^e`, `d2 = det(AB)|det M|^e`, used when `Z_D ⊂ Ė_p^n`.
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportViolation {
    /// `true` for the `M → M̃` direction.
    pub forward: bool,
    pub j: u32,
    pub z: RationalPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportReport {
    pub constants: TransportConstants,
    /// Scale applied to `B^* Z(μ̂_{M,D})`.
    pub k1: BigInt,
    /// Scale applied to `A^* Z(μ̂_{M̃,D̃})`.
    pub k2: BigInt,
    pub m_tilde: IntMatrix,
    pub d_tilde: DigitSet,
    pub checked: usize,
    pub violations: Vec<TransportViolation>,
}

impl TransportReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `k1 B^* M^{*j} z ∈ Z(μ̂_{M̃,D̃})` and `k2 A^* M̃^{*j} z̃ ∈ Z(μ̂_{M,D})`
/// for `1 ≤ j ≤ J` and every zero `z`, `z̃` of the two masks.
pub fn transport_inclusion_check(m: &IntMatrix, d: &DigitSet, w: &ConjugateWitness, depth: u32) -> Result<TransportReport> {
    crate::modlin::require_prime(w.p)?;
    let p = w.p;
    let pb = BigInt::from(p);
    if m.det().is_multiple_of(&pb) {
        return Err(Error::HypothesisViolation(format!("det M is divisible by {p}")));
    }
    let (a, b) = (&w.a, &w.b);
    if !crate::modlin::FpMatrix::from_int(&a.mul(b), p).is_identity() {
        return Err(Error::HypothesisViolation(format!("AB is not the identity mod {p}")));
    }
    let m_tilde = a.mul(m).mul(b);
    let d_tilde = match w.mode {
        ConjugacyMode::I => {
            let inv = b.inverse()?;
            let digits = d
                .iter()
                .map(|x| RationalPoint::new(inv.mul_int_vec(x)).to_integers().ok_or(Error::NonIntegerDigits))
                .collect::<Result<Vec<_>>>()?;
            DigitSet::new(digits)?
        }
        ConjugacyMode::II => d.map(a)?,
    };
    let here = MeasureZeros::new(m, d)?;
    let there = MeasureZeros::new(&m_tilde, &d_tilde)?;
    let n = m.dim() as u32;
    let e = ((p - 1) * (p.pow(n) - 1)) as u32;
    let det_ab = a.mul(b).det();
    let pow_t = m_tilde.det().abs().pow(e);
    let pow_m = m.det().abs().pow(e);
    let (constants, k1, k2) = if zero_set_in_punctured_grid(there.zero_set(), p)? {
        (TransportConstants::C, &det_ab * pow_t, pow_m)
    } else if zero_set_in_punctured_grid(here.zero_set(), p)? {
        (TransportConstants::D, pow_t, &det_ab * pow_m)
    } else {
        return Err(Error::HypothesisViolation(format!("neither zero set lies in the punctured grid mod {p}")));
    };
    let s1 = b.transpose().scale(&k1);
    let s2 = a.transpose().scale(&k2);
    let mut checked = 0;
    let mut violations = Vec::new();
    for (forward, src, dst, scale) in [(true, &here, &there, &s1), (false, &there, &here, &s2)] {
        for j in 1..=depth {
            for z in src.zero_set().points() {
                checked += 1;
                if !dst.contains(&src.forward(z, j).map(scale)) {
                    violations.push(TransportViolation { forward, j, z: z.clone() });
                }
            }
        }
    }
    Ok(TransportReport { constants, k1, k2, m_tilde, d_tilde, checked, violations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonSpectralCertificate {
    pub l: BigRational,
    pub j0: u32,
    /// `∅ ≠ L(Z - Z) \ Z^n ⊂ L Z` with `Z = Z(m_D)`.
    pub difference_closure: bool,
    /// `L M^{*j} Z ∩ Z^n = ∅` for `1 ≤ j < j0`.
    pub emptiness_window: bool,
    /// `L M^{*j0} Z ⊂ Z^n`, hence for every `j ≥ j0`.
    pub integrality_tail: bool,
}

impl NonSpectralCertificate {
    pub fn is_valid(&self) -> bool {
        self.difference_closure && self.emptiness_window && self.integrality_tail
    }
}

fn is_integral_rat(x: &BigRational) -> bool {
    x.is_integer()
}

/// Evaluates the three finite conditions; a valid certificate proves that
/// `μ_{M,D}` is not spectral.
pub fn nonspectral_certificate(m: &IntMatrix, d: &DigitSet, l: &BigRational, j0: u32) -> Result<NonSpectralCertificate> {
    if j0 < 2 {
        return Err(Error::InvalidParameter(format!("j0 must be at least 2, got {j0}")));
    }
    if !l.is_positive() {
        return Err(Error::InvalidParameter("L must be positive".into()));
    }
    let zeros = zero_set(d, &[])?;
    zeros.require_complete()?;
    let n = m.dim();
    let mt = m.transpose();

    // (a) for y in Z_D - Z_D (mod Z^n): every L(y + k) outside Z^n must come
    // from y + k ∈ Z(m_D), i.e. y ∈ Z_D; the non-integral part must be nonempty.
    let l_integral = l.is_integer();
    let diffs: BTreeSet<RationalPoint> =
        zeros.points().flat_map(|a| zeros.points().map(move |b| a.sub(b).torus())).collect();
    let mut nonempty = false;
    let mut closed = true;
    for y in &diffs {
        let all_integral = l_integral && y.scale(l).is_integral();
        if !all_integral {
            nonempty = true;
            if !zeros.contains(y) {
                closed = false;
            }
        }
    }
    let difference_closure = nonempty && closed;

    // (b) L(M^{*j} z + M^{*j} Z^n) avoids Z^n iff b L M^{*j} z ∉ b Z^n + a M^{*j} Z^n
    let (num, den) = (l.numer().clone(), l.denom().clone());
    let mut emptiness_window = true;
    let mut power = IntMatrix::identity(n);
    for _ in 1..j0 {
        power = mt.mul(&power);
        let scaled = power.scale(&num);
        let cols: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigInt> = (0..n).map(|k| if k == i { den.clone() } else { BigInt::zero() }).collect();
                row.extend((0..n).map(|k| scaled.get(i, k).clone()));
                row
            })
            .collect();
        let lattice = smith_left(&cols);
        for z in zeros.points() {
            let v = RationalPoint::new(scaled.mul_rat_vec(z.coords()));
            // v = a M^{*j} z, so b·(L M^{*j} z) = v
            let Some(target) = v.to_integers() else { continue };
            if lattice.contains(&target) {
                emptiness_window = false;
            }
        }
    }

    // (c) L M^{*j0} integral and L M^{*j0} Z_D ⊂ Z^n
    power = mt.mul(&power);
    let tail: Vec<BigRational> = power.entries().iter().map(|x| l * x).collect();
    let tail_ok = tail.iter().all(is_integral_rat);
    let integrality_tail = tail_ok
        && zeros.points().all(|z| RationalPoint::new(power.mul_rat_vec(z.coords())).scale(l).is_integral());

    Ok(NonSpectralCertificate { l: l.clone(), j0, difference_closure, emptiness_window, integrality_tail })
}

/// `(L, j0)` for a three-digit planar `D = {0, α, β}` whose conjugate
/// `M̃ = AMB` satisfies `M̃^{*j}(1,-1) ∈ 3Z^2` exactly from some `j0 ≥ 2` on;
/// `L = |det(AB)|^{j0+1}`. Returns `None` when no such `j0` exists.
pub fn case_two_parameters(m: &IntMatrix, d: &DigitSet) -> Result<Option<(BigRational, u32)>> {
    let report = spectrality_criterion(m, d)?;
    let amb_t = report.amb.transpose();
    let three = BigInt::from(3);
    let mut v = vec![BigInt::one(), -BigInt::one()];
    // residues of v live in a set of 9 vectors and 0 is absorbing
    let mut j0 = None;
    for j in 1..=9u32 {
        v = amb_t.mul_vec(&v).iter().map(|x| x.mod_floor(&three)).collect();
        if v.iter().all(Zero::is_zero) {
            j0 = Some(j);
            break;
        }
    }
    match j0 {
        Some(j0) if j0 >= 2 => {
            let l = report.a.mul(&report.b).det().abs().pow(j0 + 1);
            Ok(Some((BigRational::from_integer(l), j0)))
        }
        _ => Ok(None),
    }
}
