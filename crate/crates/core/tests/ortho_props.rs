use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

use spectral_affine::modlin::{is_expanding, Expansion, DEFAULT_EXPANSION_TOL};
use spectral_affine::ortho::{
    has_infinite_orthogonal, nstar_bounds, permutes_punctured_grid, zero_membership, MeasureZeros, NStarParams,
};
use spectral_affine::{DigitSet, IntMatrix, RationalPoint};

fn d1() -> DigitSet {
    DigitSet::from_i64(&[[0, 0], [1, 0], [0, 1]])
}

fn matrix(range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(range, 4).prop_map(|v| IntMatrix::from_i64([[v[0], v[1]], [v[2], v[3]]]))
}

fn expanding_matrix() -> impl Strategy<Value = IntMatrix> {
    matrix(-5..=5).prop_filter("expanding, |det| <= 25", |m| {
        m.det().abs() <= BigInt::from(25) && is_expanding(m, DEFAULT_EXPANSION_TOL) == Expansion::Expanding
    })
}

proptest! {
    #[test]
    fn punctured_grid_permutation(m in matrix(-9..=9), p in prop::sample::select(vec![2u64, 3, 5])) {
        let coprime = !m.det().is_multiple_of(&BigInt::from(p));
        prop_assert_eq!(permutes_punctured_grid(&m, p), coprime);
    }

    #[test]
    fn membership_returns_least_exponent(m in expanding_matrix(), x in -15i64..=15, y in -15i64..=15) {
        let xi = RationalPoint::from_pairs(&[(x, 1), (y, 1)]);
        let oracle = MeasureZeros::new(&m, &d1()).unwrap();
        let inv = m.transpose().inverse().unwrap();
        let mut shrunk = xi.clone();
        let mut first = None;
        for j in 1..=60u32 {
            shrunk = RationalPoint::new(inv.mul_rat_vec(shrunk.coords()));
            if oracle.zero_set().contains(&shrunk) {
                first = Some(j);
                break;
            }
        }
        prop_assert_eq!(zero_membership(&m, &d1(), &xi).unwrap(), first);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn witness_families_are_orthogonal(m in expanding_matrix()) {
        let r = nstar_bounds(&m, &d1(), 3, NStarParams { depth: 2, radius: 1, budget: 50_000 }).unwrap();
        prop_assert!(r.witness.is_verified());
        let f = r.witness.frequencies();
        for (i, a) in f.iter().enumerate() {
            for b in &f[i + 1..] {
                prop_assert!(zero_membership(&m, &d1(), &a.sub(b)).unwrap().is_some());
            }
        }
        if let Some(u) = r.upper {
            prop_assert!(r.lower <= u);
        }
    }

    #[test]
    fn lower_bound_monotone(m in expanding_matrix()) {
        let run = |depth, radius| nstar_bounds(&m, &d1(), 3, NStarParams { depth, radius, budget: 1_000_000 }).unwrap();
        let base = run(1, 0);
        let deeper = run(2, 0);
        let wider = run(1, 1);
        let both = run(2, 1);
        prop_assume!(base.search_complete && deeper.search_complete && wider.search_complete && both.search_complete);
        prop_assert!(base.lower <= deeper.lower && base.lower <= wider.lower);
        prop_assert!(deeper.lower <= both.lower && wider.lower <= both.lower);
    }
}

#[test]
fn infinite_family_exceeds_twelve() {
    let m = IntMatrix::from_i64([[0, 10], [9, 0]]);
    let d = DigitSet::from_i64(&[[0, 0], [1, 0], [2, 9]]);
    assert!(has_infinite_orthogonal(&m, &d).unwrap().exists);
    let r = nstar_bounds(&m, &d, 3, NStarParams { depth: 3, radius: 2, budget: 1_000_000 }).unwrap();
    assert!(r.upper.is_none());
    assert!(r.lower > 12, "lower = {}", r.lower);
    assert!(r.witness.is_verified());
}

#[test]
fn no_infinite_family_means_finite_upper_bound() {
    let m = IntMatrix::from_i64([[3, 1], [1, 4]]);
    assert!(!has_infinite_orthogonal(&m, &d1()).unwrap().exists);
    let r = nstar_bounds(&m, &d1(), 3, NStarParams { depth: 2, radius: 1, budget: 100_000 }).unwrap();
    assert_eq!(r.upper, Some(9));
}
