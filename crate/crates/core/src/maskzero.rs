//! Digit sets, the mask polynomial `m_D`, and exact rational zero sets.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modlin::{rat_to_f64, CosetTransversal, IntMatrix, IntVector};

/// Point of `Q^n`. Ordering is lexicographic on the exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![BigRational::zero(); n])
    }

    pub fn from_ints(v: &[BigInt]) -> Self {
        Self(v.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Coordinates given as `(numerator, denominator)` pairs.
    pub fn from_pairs(v: &[(i64, i64)]) -> Self {
        Self(v.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// Integer coordinates, when integral.
    pub fn to_integers(&self) -> Option<IntVector> {
        self.is_integral().then(|| self.0.iter().map(BigRational::to_integer).collect())
    }

    /// Canonical torus representative in `[0, 1)^n`.
    pub fn torus(&self) -> Self {
        Self(self.0.iter().map(|x| x - x.floor()).collect())
    }

    pub fn common_denominator(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add_ints(&self, v: &[BigInt]) -> Self {
        Self(self.0.iter().zip(v).map(|(a, b)| a + b).collect())
    }

    /// `max_i |x_i|`.
    pub fn inf_norm(&self) -> BigRational {
        self.0.iter().map(Signed::abs).max().unwrap_or_else(BigRational::zero)
    }

    /// `∞`-distance from the origin on the torus `R^n / Z^n`.
    pub fn torus_norm(&self) -> BigRational {
        self.torus()
            .0
            .iter()
            .map(|x| {
                let other = BigRational::one() - x;
                if *x < other { x.clone() } else { other }
            })
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }

    pub fn map(&self, m: &IntMatrix) -> Self {
        Self(m.mul_rat_vec(&self.0))
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Ordered list of distinct integer vectors of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSet {
    n: usize,
    digits: Vec<IntVector>,
}

impl DigitSet {
    pub fn new(digits: Vec<IntVector>) -> Result<Self> {
        let Some(first) = digits.first() else {
            return Err(Error::InvalidParameter("digit set is empty".into()));
        };
        let n = first.len();
        if n == 0 || digits.iter().any(|d| d.len() != n) {
            return Err(Error::DimensionMismatch("digits have differing dimensions".into()));
        }
        let distinct: BTreeSet<&IntVector> = digits.iter().collect();
        if distinct.len() != digits.len() {
            return Err(Error::InvalidParameter("digit set contains a repeated digit".into()));
        }
        Ok(Self { n, digits })
    }

    pub fn from_i64<const N: usize>(digits: &[[i64; N]]) -> Self {
        Self::new(digits.iter().map(|d| d.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("valid literal digit set")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[IntVector] {
        &self.digits
    }

    pub fn iter(&self) -> impl Iterator<Item = &IntVector> {
        self.digits.iter()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.digits.iter().any(|d| d.as_slice() == v)
    }

    pub fn translate(&self, v: &[BigInt]) -> Self {
        Self { n: self.n, digits: self.digits.iter().map(|d| d.iter().zip(v).map(|(a, b)| a + b).collect()).collect() }
    }

    /// `{ B d : d ∈ D }`; errors if the map is not injective on `D`.
    pub fn map(&self, b: &IntMatrix) -> Result<Self> {
        if b.dim() != self.n {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix on dimension {} digits", b.dim(), b.dim(), self.n)));
        }
        Self::new(self.digits.iter().map(|d| b.mul_vec(d)).collect())
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("digits have dimension {}, point has {n}", self.n)))
        }
    }
}

/// `m_D(x) = (1/|D|) Σ_d exp(2πi⟨d, x⟩)` in double precision.
pub fn mask_eval(d: &DigitSet, x: &[f64]) -> Complex64 {
    assert_eq!(d.dim(), x.len(), "dimension mismatch");
    let sum: Complex64 = d
        .iter()
        .map(|digit| {
            // reduce the phase before scaling by 2π to keep it small
            let phase: f64 = digit.iter().zip(x).map(|(a, b)| a.to_f64().unwrap_or(f64::NAN) * b).sum();
            let phase = phase - libm::floor(phase);
            Complex64::from_polar(1.0, 2.0 * PI * phase)
        })
        .sum();
    sum / d.len() as f64
}

/// Same as [`mask_eval`] but with the phase reduced exactly before rounding.
pub fn mask_eval_rational(d: &DigitSet, x: &RationalPoint) -> Complex64 {
    let sum: Complex64 = d
        .iter()
        .map(|digit| {
            let phase = x.coords().iter().zip(digit).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
            let frac = &phase - phase.floor();
            Complex64::from_polar(1.0, 2.0 * PI * rat_to_f64(&frac))
        })
        .sum();
    sum / d.len() as f64
}

/// `poly * (x^d - 1)`, coefficients constant-first.
fn mul_by_binomial(poly: &mut Vec<BigInt>, d: usize) {
    let mut out = vec![BigInt::zero(); poly.len() + d];
    for (i, c) in poly.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    *poly = out;
}

/// Exact quotient `poly / (x^d - 1)`, filled from the top coefficient down.
fn div_by_binomial(poly: &mut Vec<BigInt>, d: usize) {
    let qlen = poly.len() - d;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        q[i] = if i + d < qlen { &poly[i + d] + &q[i + d] } else { poly[i + d].clone() };
    }
    debug_assert!((0..d).all(|i| poly[i] == -q.get(i).cloned().unwrap_or_default()));
    *poly = q;
}

fn mobius(mut m: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// The `q`-th cyclotomic polynomial `Π_{d|q} (x^d - 1)^{μ(q/d)}`.
pub fn cyclotomic(q: u64) -> Vec<BigInt> {
    assert!(q >= 1);
    let divisors: Vec<u64> = (1..=q).filter(|d| q.is_multiple_of(*d)).collect();
    let mut poly = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(q / d) == 1 {
            mul_by_binomial(&mut poly, d as usize);
        }
    }
    for &d in &divisors {
        if mobius(q / d) == -1 {
            div_by_binomial(&mut poly, d as usize);
        }
    }
    // normalize sign so the polynomial is monic
    if poly.last().is_some_and(Signed::is_negative) {
        for c in poly.iter_mut() {
            *c = -&*c;
        }
    }
    poly
}

/// `true` iff the monic `divisor` divides `poly` over `Z[x]`.
fn divides(divisor: &[BigInt], poly: &[BigInt]) -> bool {
    let dd = divisor.len() - 1;
    let mut rem = poly.to_vec();
    while rem.len() > dd {
        let lead = rem.pop().expect("non-empty");
        if lead.is_zero() {
            continue;
        }
        let shift = rem.len() - dd;
        for (i, c) in divisor[..dd].iter().enumerate() {
            rem[shift + i] -= &lead * c;
        }
    }
    rem.iter().all(Zero::is_zero)
}

/// Exact zero test for `m_D` at a rational point: the exponents
/// `⟨d, qx⟩ mod q` define `P(t)`, and `m_D(x) = 0` iff `Φ_q | P`.
pub fn is_zero_exact(d: &DigitSet, x: &RationalPoint) -> Result<bool> {
    d.check_dim(x.dim())?;
    let q = x.common_denominator();
    if q.is_one() {
        return Ok(false);
    }
    let q_usize: usize = (&q)
        .try_into()
        .map_err(|_| Error::InvalidParameter(format!("denominator {q} too large for an exact zero test")))?;
    let qx: Vec<BigInt> = x.coords().iter().map(|c| (c * BigRational::from_integer(q.clone())).to_integer()).collect();
    let mut poly = vec![BigInt::zero(); q_usize];
    for digit in d.iter() {
        let e: BigInt = digit.iter().zip(&qx).map(|(a, b)| a * b).sum::<BigInt>().mod_floor(&q);
        let e: usize = e.try_into().expect("exponent below q");
        poly[e] += 1;
    }
    Ok(divides(&cyclotomic(q_usize as u64), &poly))
}

/// Finite set of zeros of `m_D` in `[0, 1)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSet {
    points: BTreeSet<RationalPoint>,
    q: BigInt,
    complete: bool,
}

impl ZeroSet {
    pub fn new(points: impl IntoIterator<Item = RationalPoint>, complete: bool) -> Self {
        let points: BTreeSet<RationalPoint> = points.into_iter().map(|p| p.torus()).collect();
        let q = points.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.common_denominator()));
        Self { points, q, complete }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &RationalPoint> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Least common denominator of all points.
    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Membership of `x` in `Z_D + Z^n`.
    pub fn contains(&self, x: &RationalPoint) -> bool {
        self.points.contains(&x.torus())
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete { Ok(()) } else { Err(Error::IncompleteZeroSet) }
    }

    pub fn is_symmetric(&self) -> bool {
        self.points.iter().all(|p| self.points.contains(&p.neg().torus()))
    }

    /// Smallest torus `∞`-distance from 0 to a point of the set.
    pub fn min_torus_norm(&self) -> Option<BigRational> {
        self.points.iter().map(RationalPoint::torus_norm).min()
    }
}

const CUBE_ROOT_TARGETS: [(i64, i64); 2] = [(1, 2), (2, 1)];

/// `B^{-T}(t + k) mod 1` over a transversal `k` of `Z^2 / B^T Z^2`.
fn solve_congruence(cols: [IntVector; 2], target: &RationalPoint) -> Result<Vec<RationalPoint>> {
    let b = IntMatrix::from_columns(&cols)?;
    let bt = b.transpose();
    let inv = bt.inverse()?;
    let trans = CosetTransversal::new(&bt)?;
    Ok(trans
        .reps()
        .iter()
        .map(|k| RationalPoint::new(inv.mul_rat_vec(target.add_ints(k).coords())).torus())
        .collect())
}

fn diff(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// For parallel `u = s g`, `w = r g` with `g` primitive: does the system
/// `⟨u,x⟩ ≡ ⟨w,x⟩ ≡ 1/2 (mod 1)` have a solution?
fn parallel_half_system_consistent(u: &[BigInt], w: &[BigInt]) -> bool {
    let s = u.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let idx = u.iter().position(|x| !x.is_zero()).expect("distinct digits");
    let g_idx = &u[idx] / &s;
    let r = &w[idx] / &g_idx;
    // ⟨g,x⟩ = (1/2 + k)/s, and r(1/2 + k)/s - 1/2 must be an integer
    let two_s = BigInt::from(2) * &s;
    let limit = s.to_u64().unwrap_or(u64::MAX).min(1 << 20);
    (0..limit).any(|k| (&r * BigInt::from(2 * k + 1) - &s).is_multiple_of(&two_s))
}

fn closed_form_three(d: &DigitSet) -> Result<Vec<RationalPoint>> {
    let g = d.digits();
    let cols = [diff(&g[1], &g[0]), diff(&g[2], &g[0])];
    if IntMatrix::from_columns(&cols)?.det().is_zero() {
        return Err(Error::DegenerateDigits);
    }
    let three = BigInt::from(3);
    let mut out = Vec::new();
    for (a, b) in CUBE_ROOT_TARGETS {
        let t = RationalPoint::new(vec![
            BigRational::new(a.into(), three.clone()),
            BigRational::new(b.into(), three.clone()),
        ]);
        out.extend(solve_congruence(cols.clone(), &t)?);
    }
    Ok(out)
}

fn closed_form_four(d: &DigitSet) -> Result<Vec<RationalPoint>> {
    let g = d.digits();
    let half = RationalPoint::from_pairs(&[(1, 2), (1, 2)]);
    let mut out = Vec::new();
    for [(a, b), (c, e)] in [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]] {
        let cols = [diff(&g[a], &g[b]), diff(&g[c], &g[e])];
        if IntMatrix::from_columns(&cols)?.det().is_zero() {
            if parallel_half_system_consistent(&cols[0], &cols[1]) {
                return Err(Error::DegenerateDigits);
            }
            continue;
        }
        out.extend(solve_congruence(cols, &half)?);
    }
    Ok(out)
}

/// Zeros of `m_D` on the grid `E_q^n` for one `q`.
pub fn grid_zeros(d: &DigitSet, q: u64) -> Result<Vec<RationalPoint>> {
    let n = d.dim();
    let total = q.checked_pow(n as u32).ok_or_else(|| Error::InvalidParameter(format!("grid {q}^{n} too large")))?;
    let qb = BigInt::from(q);
    let mut out = Vec::new();
    for mut k in 1..total {
        let mut coords = vec![BigRational::zero(); n];
        for c in coords.iter_mut().rev() {
            *c = BigRational::new(BigInt::from(k % q), qb.clone());
            k /= q;
        }
        let x = RationalPoint::new(coords);
        if is_zero_exact(d, &x)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Rational zero set `Z_D^n`.
///
/// In the plane, three digits (a vanishing sum of three roots of unity is a
/// rotated set of cube roots) and four digits (two antipodal pairs) have
/// closed forms and give a complete set. Anything else scans `E_q^n` for
/// every hinted `q` and is marked incomplete.
pub fn zero_set(d: &DigitSet, q_hints: &[u64]) -> Result<ZeroSet> {
    let closed = match (d.dim(), d.len()) {
        (2, 3) => Some(closed_form_three(d)?),
        (2, 4) => Some(closed_form_four(d)?),
        _ => None,
    };
    if let Some(points) = closed {
        let z = ZeroSet::new(points, true);
        debug_assert!(z.points().all(|x| is_zero_exact(d, x).unwrap_or(false)));
        return Ok(z);
    }
    let mut points = Vec::new();
    for &q in q_hints {
        if q == 0 {
            return Err(Error::InvalidParameter("q hint must be positive".into()));
        }
        points.extend(grid_zeros(d, q)?);
    }
    Ok(ZeroSet::new(points, false))
}

/// `true` iff every point of a complete zero set lies in `E_p^n \ {0}`.
pub fn zero_set_in_punctured_grid(z: &ZeroSet, p: u64) -> Result<bool> {
    z.require_complete()?;
    let pr = BigRational::from_integer(p.into());
    Ok(z.points().all(|x| !x.is_zero() && x.scale(&pr).is_integral()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1() -> DigitSet {
        DigitSet::from_i64(&[[0, 0], [1, 0], [0, 1]])
    }

    fn d2() -> DigitSet {
        DigitSet::from_i64(&[[0, 0], [1, 0], [0, 1], [-1, -1]])
    }

    fn pts(v: &[[(i64, i64); 2]]) -> BTreeSet<RationalPoint> {
        v.iter().map(|p| RationalPoint::from_pairs(p)).collect()
    }

    fn brute_cyclotomic(q: u64) -> Vec<f64> {
        // product of (x - ζ^k) over primitive k, real parts only
        let mut poly = vec![Complex64::one()];
        for k in 1..=q {
            if k.gcd(&q) != 1 {
                continue;
            }
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / q as f64);
            let mut next = vec![Complex64::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * z;
            }
            poly = next;
        }
        poly.iter().map(|c| c.re).collect()
    }

    #[test]
    fn cyclotomic_matches_root_product() {
        for q in 1..=40u64 {
            let exact = cyclotomic(q);
            let approx = brute_cyclotomic(q);
            assert_eq!(exact.len(), approx.len(), "q = {q}");
            for (a, b) in exact.iter().zip(&approx) {
                assert!((a.to_f64().unwrap() - b).abs() < 1e-6, "q = {q}");
            }
        }
        // Φ_105 famously has a coefficient -2
        assert!(cyclotomic(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn mask_eval_examples() {
        assert!((mask_eval(&d1(), &[0.0, 0.0]) - Complex64::one()).norm() < 1e-15);
        assert!(mask_eval(&d1(), &[1.0 / 3.0, 2.0 / 3.0]).norm() < 1e-12);
        assert!(mask_eval(&d2(), &[0.5, 0.0]).norm() < 1e-12);
    }

    #[test]
    fn exact_zero_examples() {
        assert!(is_zero_exact(&d1(), &RationalPoint::from_pairs(&[(1, 3), (2, 3)])).unwrap());
        let off = RationalPoint::from_pairs(&[(1, 3), (1, 3)]);
        assert!((mask_eval(&d1(), &off.to_f64()).norm() - 1.0 / libm::sqrt(3.0)).abs() < 1e-12);
        assert!(!is_zero_exact(&d1(), &off).unwrap());
        assert!(!is_zero_exact(&d1(), &RationalPoint::zero(2)).unwrap());
        assert!(!is_zero_exact(&d2(), &RationalPoint::from_pairs(&[(3, 1), (-2, 1)])).unwrap());
        assert!(is_zero_exact(&d1(), &RationalPoint::from_pairs(&[(1, 2)])).is_err());
    }

    #[test]
    fn closed_forms() {
        let z = zero_set(&d1(), &[]).unwrap();
        assert!(z.is_complete());
        assert_eq!(z.q(), &BigInt::from(3));
        assert_eq!(z.points().cloned().collect::<BTreeSet<_>>(), pts(&[[(1, 3), (2, 3)], [(2, 3), (1, 3)]]));

        let z = zero_set(&d2(), &[]).unwrap();
        assert_eq!(z.q(), &BigInt::from(2));
        assert_eq!(
            z.points().cloned().collect::<BTreeSet<_>>(),
            pts(&[[(1, 2), (0, 1)], [(0, 1), (1, 2)], [(1, 2), (1, 2)]])
        );

        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [2, 9]]);
        let z = zero_set(&d, &[]).unwrap();
        let want: BTreeSet<_> = (0..9)
            .flat_map(|l| [RationalPoint::from_pairs(&[(1, 3), (l, 9)]), RationalPoint::from_pairs(&[(2, 3), (l, 9)])])
            .collect();
        assert_eq!(z.len(), 18);
        assert_eq!(z.q(), &BigInt::from(9));
        assert_eq!(z.points().cloned().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn closed_forms_match_grid_scan() {
        for d in [d1(), d2(), DigitSet::from_i64(&[[0, 0], [1, 0], [2, 9]]), DigitSet::from_i64(&[[0, 0], [1, 0], [0, 2]])] {
            let z = zero_set(&d, &[]).unwrap();
            let q: u64 = z.q().try_into().unwrap();
            let scan = zero_set(&DigitSet::new(d.digits().to_vec()).unwrap(), &[]).unwrap();
            assert_eq!(scan, z);
            let grid: BTreeSet<_> = grid_zeros(&d, q).unwrap().into_iter().collect();
            assert_eq!(grid, z.points().cloned().collect());
        }
    }

    #[test]
    fn degenerate_digits_refused() {
        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [2, 0]]);
        assert_eq!(zero_set(&d, &[]), Err(Error::DegenerateDigits));
        // {0, e1, 2 e1, e2}: pairing {0,e1},{2e1,e2} is fine but {0,2e1},{e1,e2}?
        // u = (-2,0), w = (1,-1) nonsingular; {0,e2},{e1,2e1}: u=(0,-1), w=(-1,0) ok.
        // collinear four digits: {0, e1, 2e1, 3e1} -> lines of zeros
        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [2, 0], [3, 0]]);
        assert_eq!(zero_set(&d, &[]), Err(Error::DegenerateDigits));
    }

    #[test]
    fn hint_mode_is_incomplete() {
        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [0, 1], [1, 1], [2, 2]]);
        let z = zero_set(&d, &[2, 3, 5]).unwrap();
        assert!(!z.is_complete());
        assert!(z.points().all(|x| is_zero_exact(&d, x).unwrap()));
        assert_eq!(zero_set_in_punctured_grid(&z, 5), Err(Error::IncompleteZeroSet));
    }

    #[test]
    fn punctured_grid_examples() {
        assert!(zero_set_in_punctured_grid(&zero_set(&d1(), &[]).unwrap(), 3).unwrap());
        assert!(zero_set_in_punctured_grid(&zero_set(&d2(), &[]).unwrap(), 2).unwrap());
        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [2, 9]]);
        assert!(!zero_set_in_punctured_grid(&zero_set(&d, &[]).unwrap(), 3).unwrap());
        assert!(!zero_set_in_punctured_grid(&zero_set(&d1(), &[]).unwrap(), 2).unwrap());
    }

    #[test]
    fn duplicate_digits_rejected() {
        assert!(DigitSet::new(vec![vec![BigInt::zero(); 2], vec![BigInt::zero(); 2]]).is_err());
    }
}
