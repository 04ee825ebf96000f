use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use spectral_affine::maskzero::{is_zero_exact, mask_eval, zero_set};
use spectral_affine::{DigitSet, Error, IntMatrix, RationalPoint};

fn digit_set(size: usize) -> impl Strategy<Value = DigitSet> {
    prop::collection::btree_set((-5i64..=5, -5i64..=5), size - 1).prop_map(|rest| {
        let mut digits = vec![vec![BigInt::zero(), BigInt::zero()]];
        digits.extend(rest.into_iter().filter(|p| *p != (0, 0)).map(|(a, b)| vec![BigInt::from(a), BigInt::from(b)]));
        DigitSet::new(digits).expect("distinct digits")
    })
}

fn small_set() -> impl Strategy<Value = DigitSet> {
    prop_oneof![digit_set(3), digit_set(4)].prop_filter("need 3 or 4 digits", |d| d.len() >= 3)
}

fn grid(q: i64) -> impl Iterator<Item = RationalPoint> {
    (0..q).flat_map(move |a| (0..q).map(move |b| RationalPoint::from_pairs(&[(a, q), (b, q)])))
}

fn torus_set(points: impl IntoIterator<Item = RationalPoint>) -> BTreeSet<RationalPoint> {
    points.into_iter().map(|p| p.torus()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_and_numeric_agree(d in small_set(), q in 2i64..=12) {
        for x in grid(q) {
            let exact = is_zero_exact(&d, &x).unwrap();
            let value = mask_eval(&d, &x.to_f64()).norm();
            if exact {
                prop_assert!(value < 1e-10, "{x:?}: {value}");
            } else {
                prop_assert!(value > 1e-10, "{x:?}: {value}");
            }
        }
    }

    #[test]
    fn closed_form_matches_grid(d in small_set()) {
        match zero_set(&d, &[]) {
            Ok(z) => {
                prop_assert!(z.is_complete());
                let q: i64 = z.q().try_into().unwrap();
                prop_assume!(q <= 36);
                let scanned: BTreeSet<RationalPoint> = grid(q).filter(|x| is_zero_exact(&d, x).unwrap()).collect();
                prop_assert_eq!(z.points().cloned().collect::<BTreeSet<_>>(), scanned);
            }
            Err(e) => prop_assert_eq!(e, Error::DegenerateDigits),
        }
    }

    #[test]
    fn zero_set_is_symmetric(d in small_set()) {
        if let Ok(z) = zero_set(&d, &[]) {
            prop_assert!(z.is_symmetric());
            for x in z.points() {
                prop_assert!(z.contains(&x.neg()));
            }
        }
    }

    #[test]
    fn translation_invariance(d in small_set(), v in (-20i64..=20, -20i64..=20)) {
        let shifted = d.translate(&[BigInt::from(v.0), BigInt::from(v.1)]);
        match (zero_set(&d, &[]), zero_set(&shifted, &[])) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
        }
    }

    #[test]
    fn scaling_covariance(
        dt in small_set(),
        b in prop::collection::vec(-3i64..=3, 4).prop_filter("singular", |v| v[0] * v[3] - v[1] * v[2] != 0),
    ) {
        let b = IntMatrix::from_i64([[b[0], b[1]], [b[2], b[3]]]);
        let d = dt.map(&b).unwrap();
        let (Ok(z), Ok(zt)) = (zero_set(&d, &[]), zero_set(&dt, &[])) else {
            return Ok(());
        };
        let image = torus_set(z.points().map(|x| x.map(&b.transpose())));
        prop_assert_eq!(image, zt.points().cloned().collect::<BTreeSet<_>>());
    }
}
