//! Conjugate pairs in `GL_n(p)` and the mod-3 classification of
//! three-digit planar measures.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::maskzero::DigitSet;
use crate::modlin::{gl_inverse_mod, is_expanding, Expansion, FpMatrix, IntMatrix, DEFAULT_EXPANSION_TOL};

/// How the digit sets of a conjugate pair are related.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConjugacyMode {
    /// `D = B D̃`.
    I,
    /// `D̃ = A D`.
    II,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateWitness {
    pub p: u64,
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub mode: ConjugacyMode,
}

/// Builds `(M̃, D̃) = (AMB, B^{-1}D)` or `(AMB, AD)` with `A = B^{-1} mod p`.
pub fn make_conjugate(
    m: &IntMatrix,
    d: &DigitSet,
    b: &IntMatrix,
    p: u64,
    mode: ConjugacyMode,
) -> Result<(IntMatrix, DigitSet, ConjugateWitness)> {
    if m.dim() != d.dim() || b.dim() != d.dim() {
        return Err(Error::DimensionMismatch("M, B and D must share a dimension".into()));
    }
    let a = gl_inverse_mod(b, p)?;
    let mt = a.mul(m).mul(b);
    let dt = match mode {
        ConjugacyMode::I => {
            let inv = b.inverse()?;
            let digits = d
                .iter()
                .map(|x| {
                    inv.mul_int_vec(x)
                        .into_iter()
                        .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NonIntegerDigits) })
                        .collect::<Result<Vec<BigInt>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            DigitSet::new(digits)?
        }
        ConjugacyMode::II => d.map(&a)?,
    };
    Ok((mt, dt, ConjugateWitness { p, a, b: b.clone(), mode }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SierpinskiLabel {
    M1,
    M2,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SierpinskiClass {
    pub class: SierpinskiLabel,
    pub residue: FpMatrix,
}

const M1_LIST: [[i64; 4]; 5] = [[0, 0, 0, 0], [1, 1, 1, 1], [0, 1, 0, 1], [1, 0, 1, 0], [1, -1, 1, -1]];

const M2_LIST: [[i64; 4]; 6] =
    [[0, 1, 1, 1], [0, 1, 1, -1], [1, 1, 1, 0], [1, -1, 1, 1], [1, -1, -1, 0], [1, 1, -1, 1]];

fn residues(list: &[[i64; 4]]) -> Vec<FpMatrix> {
    let mut out: Vec<FpMatrix> = list
        .iter()
        .flat_map(|e| [*e, e.map(|x| -x)])
        .map(|e| FpMatrix::new(2, 3, e.iter().map(|x| x.rem_euclid(3) as u64).collect()))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Residues mod 3 of the spectral Sierpinski class, closed under negation.
pub fn m1_residues() -> Vec<FpMatrix> {
    residues(&M1_LIST)
}

/// Residues mod 3 of the class attaining nine orthogonal exponentials.
pub fn m2_residues() -> Vec<FpMatrix> {
    residues(&M2_LIST)
}

fn require_plane(m: &IntMatrix) -> Result<()> {
    if m.dim() == 2 { Ok(()) } else { Err(Error::WrongDimension { expected: 2, actual: m.dim() }) }
}

pub fn sierpinski_class(m: &IntMatrix) -> Result<SierpinskiClass> {
    require_plane(m)?;
    let residue = FpMatrix::from_int(m, 3);
    let class = if m1_residues().contains(&residue) {
        SierpinskiLabel::M1
    } else if m2_residues().contains(&residue) {
        SierpinskiLabel::M2
    } else {
        SierpinskiLabel::Other
    };
    Ok(SierpinskiClass { class, residue })
}

/// `M^*(1, -1)^t ∈ 3Z^2`.
pub fn m1_criterion(m: &IntMatrix) -> Result<bool> {
    require_plane(m)?;
    let v = m.transpose().mul_vec(&[BigInt::from(1), BigInt::from(-1)]);
    let three = BigInt::from(3);
    Ok(v.iter().all(|x| x.is_multiple_of(&three)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Spectral,
    NonSpectral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub verdict: Verdict,
    pub a: IntMatrix,
    pub b: IntMatrix,
    /// `AMB`, whose transpose is tested on `(1, -1)`.
    pub amb: IntMatrix,
}

/// Splits `D = {0, α, β}` and returns `(α, β)`.
pub fn three_digit_form(d: &DigitSet) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    if d.dim() != 2 || d.len() != 3 {
        return Err(Error::BadDigitForm(format!("need three planar digits, got {} of dimension {}", d.len(), d.dim())));
    }
    let Some(zero) = d.iter().position(|x| x.iter().all(Zero::is_zero)) else {
        return Err(Error::BadDigitForm("digit set must contain the origin".into()));
    };
    let mut rest = d.iter().enumerate().filter(|(i, _)| *i != zero).map(|(_, x)| x.clone());
    let alpha = rest.next().expect("three digits");
    let beta = rest.next().expect("three digits");
    Ok((alpha, beta))
}

/// Spectrality of `μ_{M,D}` for `D = {0, α, β}` with `det[α|β] ∉ 3Z`:
/// spectral iff `(AMB)^*(1, -1)^t ∈ 3Z^2` where `B = [α|β]`, `AB ≡ I mod 3`.
pub fn spectrality_criterion(m: &IntMatrix, d: &DigitSet) -> Result<CriterionReport> {
    require_plane(m)?;
    let (alpha, beta) = three_digit_form(d)?;
    let b = IntMatrix::from_columns(&[alpha, beta])?;
    if b.det().is_multiple_of(&BigInt::from(3)) {
        return Err(Error::DegenerateDigits);
    }
    if is_expanding(m, DEFAULT_EXPANSION_TOL) != Expansion::Expanding {
        return Err(Error::NotExpanding);
    }
    let a = gl_inverse_mod(&b, 3)?;
    let amb = a.mul(m).mul(&b);
    let verdict = if m1_criterion(&amb)? { Verdict::Spectral } else { Verdict::NonSpectral };
    Ok(CriterionReport { verdict, a, b, amb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{find_spectrum_set, SearchOutcome};

    fn d1() -> DigitSet {
        DigitSet::from_i64(&[[0, 0], [1, 0], [0, 1]])
    }

    #[test]
    fn conjugate_examples() {
        let m = IntMatrix::from_i64([[3, 0], [0, 3]]);
        let (mt, dt, w) = make_conjugate(&m, &d1(), &IntMatrix::identity(2), 3, ConjugacyMode::I).unwrap();
        assert_eq!((mt, dt, w.a), (m.clone(), d1(), IntMatrix::identity(2)));

        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [0, 2]]);
        let b = IntMatrix::from_i64([[1, 0], [0, 2]]);
        let (mt, dt, w) = make_conjugate(&m, &d, &b, 3, ConjugacyMode::I).unwrap();
        assert_eq!(w.a, IntMatrix::from_i64([[1, 0], [0, 2]]));
        assert_eq!(mt, IntMatrix::from_i64([[3, 0], [0, 12]]));
        assert_eq!(dt, d1());
        assert_eq!(dt.map(&b).unwrap(), d);

        let m = IntMatrix::from_i64([[0, 10], [9, 0]]);
        let b = IntMatrix::from_i64([[2, 0], [0, 2]]);
        let (mt, dt, w) = make_conjugate(&m, &d1(), &b, 3, ConjugacyMode::II).unwrap();
        assert_eq!(w.a, b);
        assert_eq!(mt, m.scale(&BigInt::from(4)));
        assert_eq!(dt, DigitSet::from_i64(&[[0, 0], [2, 0], [0, 2]]));
    }

    #[test]
    fn conjugate_errors() {
        let m = IntMatrix::from_i64([[3, 0], [0, 3]]);
        let b = IntMatrix::from_i64([[2, 0], [0, 1]]);
        assert_eq!(make_conjugate(&m, &d1(), &b, 3, ConjugacyMode::I).unwrap_err(), Error::NonIntegerDigits);
        let b = IntMatrix::from_i64([[3, 0], [0, 1]]);
        assert_eq!(make_conjugate(&m, &d1(), &b, 3, ConjugacyMode::II).unwrap_err(), Error::SingularModP { p: 3 });
    }

    #[test]
    fn residue_lists() {
        let m1 = m1_residues();
        let m2 = m2_residues();
        // the first list has a self-negating zero matrix
        assert_eq!(m1.len(), 9);
        assert_eq!(m2.len(), 12);
        assert!(m1.iter().all(|r| !m2.contains(r)));
        for list in [&m1, &m2] {
            assert!(list.iter().all(|r| list.contains(&r.neg())));
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(sierpinski_class(&IntMatrix::from_i64([[3, 0], [0, 3]])).unwrap().class, SierpinskiLabel::M1);
        let c = sierpinski_class(&IntMatrix::from_i64([[3, 1], [1, 4]])).unwrap();
        assert_eq!(c.class, SierpinskiLabel::M2);
        assert_eq!(c.residue, FpMatrix::new(2, 3, alloc::vec![0, 1, 1, 1]));
        assert_eq!(sierpinski_class(&IntMatrix::from_i64([[2, 0], [0, 2]])).unwrap().class, SierpinskiLabel::Other);
        assert_eq!(
            sierpinski_class(&IntMatrix::identity(3)).unwrap_err(),
            Error::WrongDimension { expected: 2, actual: 3 }
        );
    }

    #[test]
    fn m1_criterion_examples() {
        assert!(m1_criterion(&IntMatrix::from_i64([[3, 0], [0, 3]])).unwrap());
        assert!(m1_criterion(&IntMatrix::from_i64([[1, 1], [1, 1]])).unwrap());
        assert!(!m1_criterion(&IntMatrix::from_i64([[3, 1], [1, 4]])).unwrap());
    }

    #[test]
    fn criterion_examples() {
        let r = spectrality_criterion(&IntMatrix::from_i64([[3, 0], [0, 3]]), &d1()).unwrap();
        assert_eq!(r.verdict, Verdict::Spectral);
        assert_eq!((r.a, r.b), (IntMatrix::identity(2), IntMatrix::identity(2)));

        let m = IntMatrix::from_i64([[3, 0], [0, 3]]);
        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [0, 2]]);
        let r = spectrality_criterion(&m, &d).unwrap();
        assert_eq!(r.amb, IntMatrix::from_i64([[3, 0], [0, 12]]));
        assert_eq!(r.verdict, Verdict::Spectral);
        assert!(matches!(find_spectrum_set(&m, &d).unwrap().outcome, SearchOutcome::Found(_)));

        let r = spectrality_criterion(&IntMatrix::from_i64([[3, 1], [1, 4]]), &d1()).unwrap();
        assert_eq!(r.verdict, Verdict::NonSpectral);
    }

    #[test]
    fn criterion_errors() {
        let m = IntMatrix::from_i64([[3, 0], [0, 3]]);
        let d = DigitSet::from_i64(&[[0, 0], [1, 0], [0, 3]]);
        assert_eq!(spectrality_criterion(&m, &d).unwrap_err(), Error::DegenerateDigits);
        let d = DigitSet::from_i64(&[[1, 1], [1, 0], [0, 1]]);
        assert!(matches!(spectrality_criterion(&m, &d), Err(Error::BadDigitForm(_))));
        let m = IntMatrix::from_i64([[1, 0], [0, 1]]);
        assert_eq!(spectrality_criterion(&m, &d1()).unwrap_err(), Error::NotExpanding);
    }
}
