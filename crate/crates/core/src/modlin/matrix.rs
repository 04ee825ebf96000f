use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer column vector.
pub type IntVector = Vec<BigInt>;

/// Square matrix with arbitrary-precision integer entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, data: Vec<BigInt>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[&[T]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("matrix with {n} rows is not square")));
        }
        Self::new(n, rows.iter().flat_map(|r| r.iter().map(|&x| x.into())).collect())
    }

    /// Panicking convenience constructor for literals.
    pub fn from_i64<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Self {
            n: N,
            data: rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, BigInt::one())
    }

    pub fn scalar(n: usize, c: BigInt) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = c.clone();
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.n)
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[IntVector]) -> Result<Self> {
        let n = cols.len();
        if n == 0 || cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch(format!("{n} columns do not form a square matrix")));
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for c in cols {
                data.push(c[i].clone());
            }
        }
        Ok(Self { n, data })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).clone());
            }
        }
        Self { n, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix dimensions differ");
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                data.push(acc);
            }
        }
        Self { n, data }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        assert_eq!(v.len(), self.n, "vector length differs from matrix dimension");
        self.rows().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn mul_rat_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.n, "vector length differs from matrix dimension");
        self.rows()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect()
    }

    pub fn mul_f64_vec(&self, v: &[f64]) -> Vec<f64> {
        let m = self.to_f64();
        let n = self.n;
        (0..n).map(|i| (0..n).map(|k| m[i * n + k] * v[k]).sum()).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(big_to_f64).collect()
    }

    /// Entries reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x.mod_floor(m)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, r * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.n;
        let data = (0..n)
            .filter(|&i| i != row)
            .flat_map(|i| (0..n).filter(move |&j| j != col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self { n: n - 1, data }
    }

    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                // adj[j][i] = (-1)^{i+j} det(minor(i, j))
                data[j * n + i] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        Self { n, data }
    }

    /// Exact determinant and adjugate, with `M * adj(M) = det(M) * I`.
    pub fn det_and_adjugate(&self) -> (BigInt, Self) {
        (self.det(), self.adjugate())
    }

    /// `M^{-1}` as `adj(M) / det(M)`.
    pub fn inverse(&self) -> Result<ScaledIntMatrix> {
        let (det, adj) = self.det_and_adjugate();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ScaledIntMatrix::new(adj, det))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Rational matrix stored as `num / den` with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledIntMatrix {
    pub num: IntMatrix,
    pub den: BigInt,
}

impl ScaledIntMatrix {
    pub fn new(num: IntMatrix, den: BigInt) -> Self {
        if den.is_negative() {
            Self { num: num.scale(&-BigInt::one()), den: -den }
        } else {
            Self { num, den }
        }
    }

    pub fn transpose(&self) -> Self {
        Self { num: self.num.transpose(), den: self.den.clone() }
    }

    pub fn mul_rat_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        let d = BigRational::from_integer(self.den.clone());
        self.num.mul_rat_vec(v).into_iter().map(|x| x / &d).collect()
    }

    pub fn mul_int_vec(&self, v: &[BigInt]) -> Vec<BigRational> {
        self.num
            .mul_vec(v)
            .into_iter()
            .map(|x| BigRational::new(x, self.den.clone()))
            .collect()
    }

    /// `Some` when every entry is an integer.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.num.entries().iter().all(|x| x.is_multiple_of(&self.den)) {
            Some(IntMatrix { n: self.num.n, data: self.num.data.iter().map(|x| x / &self.den).collect() })
        } else {
            None
        }
    }

    /// Max row sum of absolute values (the induced `∞`-norm).
    pub fn inf_norm(&self) -> BigRational {
        let top = self
            .num
            .rows()
            .map(|r| r.iter().map(|x| x.abs()).sum::<BigInt>())
            .max()
            .unwrap_or_default();
        BigRational::new(top, self.den.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.num);
        let den = &self.den * &other.den;
        let g = num.entries().iter().fold(den.clone(), |g, x| g.gcd(x));
        if g.is_one() || g.is_zero() {
            Self { num, den }
        } else {
            Self { num: IntMatrix { n: num.n, data: num.data.iter().map(|x| x / &g).collect() }, den: den / g }
        }
    }
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

pub(crate) fn rat_to_f64(x: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}
