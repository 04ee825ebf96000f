//! Numerical Fourier transform of `μ_{M,D}`, attractor sampling, explicit
//! candidate spectra and the Q-function scan.
//!
//! `μ̂(ξ) = Π_{j≥1} m_D(M^{-*j} ξ)` is evaluated by truncating the product.
//! Since `M` is expanding, `|1 - m_D(M^{-*j}ξ)| = O(‖M^{-*j}ξ‖)` decays
//! geometrically, so the tail after `depth` factors is negligible once
//! `‖M^{-*depth}ξ‖` is tiny. Callers can check this by comparing with
//! `2 * depth`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::maskzero::{mask_eval, DigitSet, RationalPoint, ZeroSet};
use crate::modlin::{big_to_f64, IntMatrix, ScaledIntMatrix};
use crate::ortho::MeasureZeros;

/// Default truncation depth for `μ̂`.
pub const DEFAULT_DEPTH: usize = 40;

/// Burn-in steps discarded by the chaos game.
pub const BURN_IN: usize = 50;

/// Dense `f64` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
struct FloatMatrix {
    n: usize,
    data: Vec<f64>,
}

impl FloatMatrix {
    fn from_scaled(m: &ScaledIntMatrix) -> Self {
        let den = big_to_f64(&m.den);
        Self { n: m.num.dim(), data: m.num.entries().iter().map(|x| big_to_f64(x) / den).collect() }
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.data[i * self.n + j] * v[j]).sum()).collect()
    }

    fn inf_norm(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n..(i + 1) * self.n].iter().map(|x| x.abs()).sum()).fold(0.0, f64::max)
    }
}

fn inverse_transpose(m: &IntMatrix) -> Result<FloatMatrix> {
    Ok(FloatMatrix::from_scaled(&m.transpose().inverse()?))
}

/// Evaluates `μ̂_{M,D}` by a truncated infinite product.
#[derive(Clone, Debug)]
pub struct MuHat {
    d: DigitSet,
    p: FloatMatrix,
}

impl MuHat {
    pub fn new(m: &IntMatrix, d: &DigitSet) -> Result<Self> {
        if m.dim() != d.dim() {
            return Err(Error::DimensionMismatch("M and D must share a dimension".into()));
        }
        Ok(Self { d: d.clone(), p: inverse_transpose(m)? })
    }

    pub fn eval(&self, xi: &[f64], depth: usize) -> Complex64 {
        let mut y = xi.to_vec();
        let mut acc = Complex64::one();
        for _ in 0..depth {
            y = self.p.apply(&y);
            acc *= mask_eval(&self.d, &y);
            if acc == Complex64::zero() {
                break;
            }
        }
        acc
    }
}

/// `Π_{j=1}^{depth} m_D(M^{-*j} ξ)`.
pub fn mu_hat_numeric(m: &IntMatrix, d: &DigitSet, xi: &[f64], depth: usize) -> Result<Complex64> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    Ok(MuHat::new(m, d)?.eval(xi, depth))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    /// All `|D|^k` sums `Σ_{j≤k} M^{-j} d_j`.
    DigitExpansion(u32),
    /// `n` iterates of randomly chosen maps `x ↦ M^{-1}(x + d)` after a burn-in.
    ChaosGame { n: usize, seed: u64 },
}

/// Sampled points of the attractor `T(M, D)`.
///
/// Every point is within `epsilon` (sup norm) of `T`. With `K = ‖M^{-k}‖_∞`
/// for `k` levels (or the largest such norm past the burn-in), and `S` the
/// largest sampled norm, `T ⊂ T_k + M^{-k} T` gives `R_T ≤ S / (1 - K)` and
/// `epsilon = K R_T`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Vec<f64>>,
    pub epsilon: f64,
}

pub fn attractor_sample(m: &IntMatrix, d: &DigitSet, mode: SampleMode) -> Result<PointCloud> {
    if m.dim() != d.dim() {
        return Err(Error::DimensionMismatch("M and D must share a dimension".into()));
    }
    let inv = m.inverse()?;
    let step = FloatMatrix::from_scaled(&inv);
    let digits: Vec<Vec<f64>> = d.iter().map(|x| x.iter().map(big_to_f64).collect()).collect();
    let n = m.dim();
    let apply = |x: &[f64], dig: &[f64]| {
        let shifted: Vec<f64> = x.iter().zip(dig).map(|(a, b)| a + b).collect();
        step.apply(&shifted)
    };
    let (points, contraction) = match mode {
        SampleMode::DigitExpansion(k) => {
            let mut level = vec![vec![0.0; n]];
            for _ in 0..k {
                level = level.iter().flat_map(|x| digits.iter().map(|dig| apply(x, dig))).collect();
            }
            (level, power_norm(&inv, k as usize))
        }
        SampleMode::ChaosGame { n: count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut x = vec![0.0; n];
            let mut out = Vec::with_capacity(count);
            for i in 0..BURN_IN + count {
                x = apply(&x, &digits[rng.gen_range(0..digits.len())]);
                if i >= BURN_IN {
                    out.push(x.clone());
                }
            }
            let worst = (BURN_IN..BURN_IN + 64).map(|k| power_norm(&inv, k)).fold(0.0, f64::max);
            (out, worst)
        }
    };
    let s = points.iter().flat_map(|p| p.iter().map(|c| c.abs())).fold(0.0, f64::max);
    let epsilon = if contraction < 1.0 { contraction * s / (1.0 - contraction) } else { f64::INFINITY };
    Ok(PointCloud { points, epsilon })
}

fn power_norm(inv: &ScaledIntMatrix, k: usize) -> f64 {
    let base = FloatMatrix::from_scaled(inv);
    let mut acc = FloatMatrix { n: base.n, data: IntMatrix::identity(base.n).to_f64() };
    for _ in 0..k {
        let data = (0..base.n)
            .flat_map(|i| {
                let (acc, base) = (&acc, &base);
                (0..base.n).map(move |j| (0..base.n).map(|t| acc.data[i * base.n + t] * base.data[t * base.n + j]).sum())
            })
            .collect();
        acc = FloatMatrix { n: base.n, data };
    }
    acc.inf_norm()
}

/// Euclidean distance from a point cloud to `Z_D + Z^n`.
pub fn distance_to_zeros(cloud: &PointCloud, zeros: &ZeroSet) -> f64 {
    let zs: Vec<Vec<f64>> = zeros.points().map(RationalPoint::to_f64).collect();
    let mut best = f64::INFINITY;
    for x in &cloud.points {
        for z in &zs {
            let d2: f64 = x
                .iter()
                .zip(z)
                .map(|(a, b)| {
                    let t = a - b;
                    let r = t - libm::round(t);
                    r * r
                })
                .sum();
            best = best.min(d2);
        }
    }
    libm::sqrt(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumCandidate {
    pub base: Vec<RationalPoint>,
    pub levels: u32,
    /// `Λ_n = Σ_{i=1}^{n} M^{*i} c_i`, deduplicated, in enumeration order.
    pub frequencies: Vec<RationalPoint>,
    /// `|Λ_n| = |base|^n`.
    pub distinct: bool,
    pub orthogonal: bool,
    pub failing_pair: Option<(usize, usize)>,
}

/// Builds `Λ_n` and checks exact pairwise orthogonality in `L^2(μ_{M,D})`.
pub fn spectrum_candidate(m: &IntMatrix, d: &DigitSet, base: &[RationalPoint], levels: u32) -> Result<SpectrumCandidate> {
    let n = m.dim();
    if base.iter().any(|c| c.dim() != n) {
        return Err(Error::DimensionMismatch("base points must match M".into()));
    }
    if !base.iter().any(RationalPoint::is_zero) {
        return Err(Error::InvalidParameter("base must contain 0".into()));
    }
    let zeros = MeasureZeros::new(m, d)?;
    let mt = m.transpose();
    let mut frequencies = vec![RationalPoint::zero(n)];
    let mut power = IntMatrix::identity(n);
    for _ in 0..levels {
        power = mt.mul(&power);
        let shifts: Vec<RationalPoint> = base.iter().map(|c| c.map(&power)).collect();
        frequencies = frequencies.iter().flat_map(|f| shifts.iter().map(move |s| f.add(s))).collect();
    }
    let expected = BigInt::from(base.len()).pow(levels);
    let mut seen = alloc::collections::BTreeSet::new();
    frequencies.retain(|f| seen.insert(f.clone()));
    let distinct = BigInt::from(frequencies.len()) == expected;
    let mut failing_pair = None;
    'outer: for i in 0..frequencies.len() {
        for j in i + 1..frequencies.len() {
            if !zeros.contains(&frequencies[i].sub(&frequencies[j])) {
                failing_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(SpectrumCandidate {
        base: base.to_vec(),
        levels,
        frequencies,
        distinct,
        orthogonal: failing_pair.is_none(),
        failing_pair,
    })
}

/// Sum in a fixed binary-tree order, independent of how work is split.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        len => {
            let (a, b) = values.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Square grid `{center + η(2i/(r-1) - 1, 2j/(r-1) - 1)}` in the plane, or
/// its analogue in higher dimension, row-major with the last axis fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub center: Vec<f64>,
    pub eta: f64,
    pub resolution: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<Vec<f64>> {
        let n = self.center.len();
        let r = self.resolution.max(1);
        let coord = |i: usize| if r == 1 { 0.0 } else { self.eta * (2.0 * i as f64 / (r - 1) as f64 - 1.0) };
        (0..r.pow(n as u32))
            .map(|mut k| {
                let mut p = vec![0.0; n];
                for (slot, c) in p.iter_mut().zip(&self.center).rev() {
                    *slot = c + coord(k % r);
                    k /= r;
                }
                p
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QScanResult {
    pub grid: GridSpec,
    pub depth: usize,
    pub min_q: f64,
    pub max_q: f64,
    /// `(ξ, Q(ξ))` for every grid point.
    pub values: Vec<(Vec<f64>, f64)>,
}

/// `Q(ξ) = Σ_{λ∈Λ} |μ̂(ξ + λ)|^2` at one point.
pub fn q_value(mu: &MuHat, lambda: &[Vec<f64>], xi: &[f64], depth: usize) -> f64 {
    let terms: Vec<f64> = lambda
        .iter()
        .map(|l| {
            let p: Vec<f64> = xi.iter().zip(l).map(|(a, b)| a + b).collect();
            mu.eval(&p, depth).norm_sqr()
        })
        .collect();
    pairwise_sum(&terms)
}

/// Evaluates `Q` over the grid. Values near 1 support completeness of `Λ`;
/// values bounded away from 1 as the candidate grows are evidence against it.
pub fn completeness_scan(m: &IntMatrix, d: &DigitSet, lambda: &[RationalPoint], grid: &GridSpec, depth: usize) -> Result<QScanResult> {
    let mu = MuHat::new(m, d)?;
    let lam: Vec<Vec<f64>> = lambda.iter().map(RationalPoint::to_f64).collect();
    let values: Vec<(Vec<f64>, f64)> = grid.points().into_iter().map(|xi| {
        let q = q_value(&mu, &lam, &xi, depth);
        (xi, q)
    }).collect();
    Ok(summarize(grid.clone(), depth, values))
}

/// Assembles a scan result from precomputed values in grid order.
pub fn summarize(grid: GridSpec, depth: usize, values: Vec<(Vec<f64>, f64)>) -> QScanResult {
    let min_q = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let max_q = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    QScanResult { grid, depth, min_q, max_q, values }
}

/// `min |μ̂|` over the grid.
pub fn min_abs_mu_hat(m: &IntMatrix, d: &DigitSet, grid: &GridSpec, depth: usize) -> Result<f64> {
    let mu = MuHat::new(m, d)?;
    Ok(grid.points().iter().map(|x| mu.eval(x, depth).norm()).fold(f64::INFINITY, f64::min))
}

/// Half the distance from `T(M^*, C)` to `Z(m_D)`, less the sampling error of
/// a `levels`-deep digit expansion.
pub fn default_eta(m: &IntMatrix, d: &DigitSet, c: &[RationalPoint], levels: u32) -> Result<f64> {
    let zeros = crate::maskzero::zero_set(d, &[])?;
    zeros.require_complete()?;
    let n = m.dim();
    // scale C to integers so the expansion runs on an integer digit set
    let q = c.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, &x.common_denominator()));
    let qr = num_rational::BigRational::from_integer(q.clone());
    let digits = DigitSet::new(c.iter().map(|x| x.scale(&qr).to_integers().expect("cleared denominators")).collect())?;
    let cloud = attractor_sample(&m.transpose(), &digits, SampleMode::DigitExpansion(levels))?;
    let qf = big_to_f64(&q);
    let scaled = PointCloud {
        points: cloud.points.iter().map(|p| p.iter().map(|x| x / qf).collect()).collect(),
        epsilon: cloud.epsilon / qf,
    };
    let dist = distance_to_zeros(&scaled, &zeros) - scaled.epsilon * libm::sqrt(n as f64);
    Ok(dist.max(0.0) / 2.0)
}
