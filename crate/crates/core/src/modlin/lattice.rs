//! Smith normal form and coset representatives of `Z^n / L Z^m`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, IntVector};
use crate::error::{Error, Result};

/// Left half of a Smith decomposition `U A V = diag(d_1, .., d_r, 0, ..)`.
///
/// Only the row transform `U` and its inverse are kept; column operations
/// do not change the lattice spanned by the columns of `A`.
#[derive(Clone, Debug)]
pub struct SmithLeft {
    pub rows: usize,
    pub diag: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
}

impl SmithLeft {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// `true` iff `v` lies in the column lattice of the decomposed matrix.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let w = apply(&self.u, v);
        w.iter().enumerate().all(|(i, x)| match self.diag.get(i) {
            Some(d) => x.is_multiple_of(d),
            None => x.is_zero(),
        })
    }
}

fn apply(m: &[Vec<BigInt>], v: &[BigInt]) -> IntVector {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form of a `rows x cols` integer matrix given as row vectors.
pub fn smith_left(a: &[Vec<BigInt>]) -> SmithLeft {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = pivot else {
                return SmithLeft { rows, diag, u, u_inv };
            };
            if pi != t {
                a.swap(pi, t);
                u.swap(pi, t);
                for r in u_inv.iter_mut() {
                    r.swap(pi, t);
                }
            }
            if pj != t {
                for r in a.iter_mut() {
                    r.swap(pj, t);
                }
            }

            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (at, ut) = (a[t].clone(), u[t].clone());
                for (x, y) in a[i][t..cols].iter_mut().zip(&at[t..cols]) {
                    *x -= &q * y;
                }
                for (x, y) in u[i].iter_mut().zip(&ut) {
                    *x -= &q * y;
                }
                for r in u_inv.iter_mut() {
                    let s = &q * &r[i];
                    r[t] += s;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for r in a.iter_mut().skip(t) {
                    let s = &q * &r[t];
                    r[j] -= s;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }

            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    // row_t += row_i, then re-reduce
                    let (ai, ui) = (a[i].clone(), u[i].clone());
                    for (x, y) in a[t][t..cols].iter_mut().zip(&ai[t..cols]) {
                        *x += y;
                    }
                    for (x, y) in u[t].iter_mut().zip(&ui) {
                        *x += y;
                    }
                    for r in u_inv.iter_mut() {
                        let s = r[t].clone();
                        r[i] -= s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
            for r in u_inv.iter_mut() {
                r[t] = -&r[t];
            }
        }
        diag.push(a[t][t].clone());
    }
    SmithLeft { rows, diag, u, u_inv }
}

/// Complete residue system of `Z^n / base Z^n`.
///
/// Representatives are `U^{-1} a` for `a` in the mixed-radix box
/// `0 <= a_i < d_i` of Smith invariants, enumerated with the first
/// coordinate most significant. Index 0 is always the zero vector.
#[derive(Clone, Debug)]
pub struct CosetTransversal {
    base: IntMatrix,
    smith: SmithLeft,
    reps: Vec<IntVector>,
}

impl CosetTransversal {
    pub fn new(base: &IntMatrix) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = base.rows().map(<[BigInt]>::to_vec).collect();
        let smith = smith_left(&rows);
        if smith.rank() < base.dim() {
            return Err(Error::SingularMatrix);
        }
        let n = base.dim();
        let total = smith.diag.iter().product::<BigInt>();
        let total: usize = (&total).try_into().map_err(|_| {
            Error::InvalidParameter(alloc::format!("|det| = {total} too large to enumerate"))
        })?;
        let mut reps = Vec::with_capacity(total);
        let mut box_pt = vec![BigInt::zero(); n];
        for _ in 0..total {
            reps.push(apply(&smith.u_inv, &box_pt));
            for i in (0..n).rev() {
                box_pt[i] += 1;
                if box_pt[i] < smith.diag[i] {
                    break;
                }
                box_pt[i] = BigInt::zero();
            }
        }
        Ok(Self { base: base.clone(), smith, reps })
    }

    pub fn base(&self) -> &IntMatrix {
        &self.base
    }

    pub fn reps(&self) -> &[IntVector] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.smith.diag
    }

    /// Index of the representative congruent to `v`.
    pub fn index_of(&self, v: &[BigInt]) -> usize {
        let w = apply(&self.smith.u, v);
        let mut idx = 0usize;
        for (x, d) in w.iter().zip(&self.smith.diag) {
            let digit: usize = x.mod_floor(d).try_into().expect("digit below modulus");
            let d: usize = d.try_into().expect("modulus fits");
            idx = idx * d + digit;
        }
        idx
    }

    pub fn reduce(&self, v: &[BigInt]) -> &IntVector {
        &self.reps[self.index_of(v)]
    }
}
