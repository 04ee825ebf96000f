use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) { Ok(()) } else { Err(Error::NotPrime(p)) }
}

/// Number of `k` in `1..=m` coprime to `m`; `euler_phi(1) = 1`.
pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1, "euler_phi is defined for m >= 1");
    let mut rest = m;
    let mut phi = m;
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            while rest.is_multiple_of(d) {
                rest /= d;
            }
            phi -= phi / d;
        }
        d += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    phi
}

/// Square matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    n: usize,
    p: u64,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn new(n: usize, p: u64, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), n * n);
        Self { n, p, data: data.into_iter().map(|x| x % p).collect() }
    }

    pub fn from_int(m: &IntMatrix, p: u64) -> Self {
        let pb = BigInt::from(p);
        let data = m
            .entries()
            .iter()
            .map(|x| {
                let r = x.mod_floor(&pb);
                r.try_into().expect("residue fits in u64")
            })
            .collect();
        Self { n: m.dim(), p, data }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1 % p;
        }
        Self { n, p, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::new(self.n, self.data.iter().map(|&x| BigInt::from(x)).collect())
            .expect("square by construction")
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.p), (other.n, other.p));
        let (n, p) = (self.n, self.p as u128);
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u128;
                for k in 0..n {
                    acc += self.get(i, k) as u128 * other.get(k, j) as u128;
                }
                data[i * n + j] = (acc % p) as u64;
            }
        }
        Self { n, p: self.p, data }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self { n: self.n, p, data: self.data.iter().map(|&x| (p - x) % p).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.p)
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let (n, p) = (self.n, self.p);
        let mut a = self.data.clone();
        let mut inv = Self::identity(n, p).data;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            for c in 0..n {
                a.swap(col * n + c, piv * n + c);
                inv.swap(col * n + c, piv * n + c);
            }
            let s = mod_inverse(a[col * n + col], p);
            for c in 0..n {
                a[col * n + c] = mul_mod(a[col * n + c], s, p);
                inv[col * n + c] = mul_mod(inv[col * n + c], s, p);
            }
            for r in 0..n {
                let f = a[r * n + col];
                if r == col || f == 0 {
                    continue;
                }
                for c in 0..n {
                    a[r * n + c] = sub_mod(a[r * n + c], mul_mod(f, a[col * n + c], p), p);
                    inv[r * n + c] = sub_mod(inv[r * n + c], mul_mod(f, inv[col * n + c], p), p);
                }
            }
        }
        Some(Self { n, p, data: inv })
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    /// Multiplicative order in `GL_n(p)`.
    pub fn order(&self) -> Result<u64> {
        if !self.is_invertible() {
            return Err(Error::SingularModP { p: self.p });
        }
        let mut acc = self.clone();
        let mut e = 1u64;
        while !acc.is_identity() {
            acc = acc.mul(self);
            e += 1;
        }
        let bound = self.p.pow(self.n as u32) - 1;
        assert!(e <= bound, "order {e} exceeds p^n - 1 = {bound}");
        Ok(e)
    }

    /// Every matrix over `F_p` of dimension `n`, in lexicographic order.
    pub fn enumerate(n: usize, p: u64) -> impl Iterator<Item = Self> {
        let count = p.pow((n * n) as u32);
        (0..count).map(move |mut k| {
            let mut data = vec![0; n * n];
            for slot in data.iter_mut().rev() {
                *slot = k % p;
                k /= p;
            }
            Self { n, p, data }
        })
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(p as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p as i128) as u64
}

/// Integer matrix `A` with entries in `[0, p)` and `A B ≡ I (mod p)`.
pub fn gl_inverse_mod(b: &IntMatrix, p: u64) -> Result<IntMatrix> {
    require_prime(p)?;
    FpMatrix::from_int(b, p)
        .inverse()
        .map(|a| a.to_int())
        .ok_or(Error::SingularModP { p })
}

/// Order `O_p(M)` of `M mod p` in `GL_n(p)`.
pub fn order_mod(m: &IntMatrix, p: u64) -> Result<u64> {
    require_prime(p)?;
    FpMatrix::from_int(m, p).order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    #[test]
    fn phi_matches_gcd_count() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(3), 2);
        for m in 2..200u64 {
            let brute = (1..m).filter(|&k| gcd(k, m) == 1).count() as u64;
            assert_eq!(euler_phi(m), brute, "m = {m}");
        }
        assert_eq!(euler_phi(90), 24);
    }

    #[test]
    fn inverse_mod_examples() {
        let b = IntMatrix::from_i64([[1, 0], [0, 2]]);
        let a = gl_inverse_mod(&b, 3).unwrap();
        // exhaustive search over F_3 matrices for A with AB = I
        let brute: Vec<_> = FpMatrix::enumerate(2, 3)
            .filter(|a| a.mul(&FpMatrix::from_int(&b, 3)).is_identity())
            .collect();
        assert_eq!(brute.len(), 1);
        assert_eq!(a, brute[0].to_int());
        assert_eq!(a, IntMatrix::from_i64([[1, 0], [0, 2]]));

        assert_eq!(gl_inverse_mod(&IntMatrix::identity(2), 3).unwrap(), IntMatrix::identity(2));
        assert_eq!(
            gl_inverse_mod(&IntMatrix::from_i64([[3, 0], [0, 1]]), 3),
            Err(Error::SingularModP { p: 3 })
        );
        assert_eq!(gl_inverse_mod(&IntMatrix::identity(2), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_mod(&IntMatrix::identity(2), 3).unwrap(), 1);
        assert_eq!(order_mod(&IntMatrix::from_i64([[0, 1], [1, 0]]), 3).unwrap(), 2);

        // power iteration oracle on the residue [[0,3],[2,0]] mod 7
        let r = IntMatrix::from_i64([[0, 3], [2, 0]]);
        let mut acc = r.clone();
        let mut e = 1;
        while !acc.reduce_mod(&BigInt::from(7)).is_identity() {
            acc = acc.mul(&r);
            e += 1;
        }
        assert_eq!(e, 4);
        assert_eq!(order_mod(&IntMatrix::from_i64([[0, 10], [9, 0]]), 7).unwrap(), e);

        assert!(matches!(
            order_mod(&IntMatrix::from_i64([[3, 0], [0, 3]]), 3),
            Err(Error::SingularModP { p: 3 })
        ));
    }

    #[test]
    fn gl2_sizes() {
        // |GL_2(p)| = (p^2 - 1)(p^2 - p)
        for p in [2u64, 3, 5] {
            let count = FpMatrix::enumerate(2, p).filter(FpMatrix::is_invertible).count() as u64;
            assert_eq!(count, (p * p - 1) * (p * p - p));
        }
    }
}
