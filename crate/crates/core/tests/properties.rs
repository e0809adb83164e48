//! Property-based checks of the exact kernels: ring laws at fixed
//! truncation order, inverse pairs, truncation coherence, the pentagonal
//! expansion of the Euler function, serialization round trips, and the
//! Bell recurrence against an independent partition-sum oracle.

use proptest::prelude::*;

use qdiv_core::combinatorics::{bell_complete, binomial};
use qdiv_core::series::{
    pochhammer_tail, rat, ratio, BiSeries, QSeries, Rational, SeriesError,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

/// A series of the exact requested order with small rational coefficients.
fn series_strategy(order: usize) -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(rational_strategy(), order + 1)
        .prop_map(move |coeffs| QSeries::from_coeffs(coeffs, order).unwrap())
}

fn order_and_three() -> impl Strategy<Value = (QSeries, QSeries, QSeries)> {
    (0usize..=10).prop_flat_map(|order| {
        (
            series_strategy(order),
            series_strategy(order),
            series_strategy(order),
        )
    })
}

proptest! {
    #[test]
    fn ring_laws((a, b, c) in order_and_three()) {
        let order = a.order();
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &QSeries::zero(order), a.clone());
        prop_assert_eq!(&a * &QSeries::one(order), a.clone());
        prop_assert_eq!(&a + &a.negated(), QSeries::zero(order));
    }

    #[test]
    fn inverse_is_two_sided((a, _, _) in order_and_three()) {
        if a.coeff(0).is_zero() {
            prop_assert_eq!(a.inverse(), Err(SeriesError::NotInvertible));
        } else {
            let inv = a.inverse().unwrap();
            prop_assert!((&a * &inv).is_one());
            prop_assert!((&inv * &a).is_one());
        }
    }

    #[test]
    fn exp_log_inverse_pair((a, b, _) in order_and_three()) {
        // exp over series with zero constant term.
        let mut coeffs = a.coeffs().to_vec();
        coeffs[0] = Rational::zero();
        let a0 = QSeries::from_coeffs(coeffs, a.order()).unwrap();
        prop_assert_eq!(a0.exp().unwrap().log().unwrap(), a0.clone());

        // log over series with unit constant term.
        let mut coeffs = b.coeffs().to_vec();
        coeffs[0] = Rational::one();
        let b1 = QSeries::from_coeffs(coeffs, b.order()).unwrap();
        prop_assert_eq!(b1.log().unwrap().exp().unwrap(), b1);
    }

    #[test]
    fn truncation_coherence((a, b, _) in order_and_three(), extra in 1usize..=5) {
        // Computing at a higher order and truncating equals computing at the
        // lower order directly.
        let low = a.order();
        let high = low + extra;
        let mut acoeffs = a.coeffs().to_vec();
        acoeffs.resize(high + 1, rat(1));
        let mut bcoeffs = b.coeffs().to_vec();
        bcoeffs.resize(high + 1, rat(-2));
        let a_high = QSeries::from_coeffs(acoeffs, high).unwrap();
        let b_high = QSeries::from_coeffs(bcoeffs, high).unwrap();

        prop_assert_eq!((&a_high * &b_high).truncated(low).unwrap(), &a * &b);
        prop_assert_eq!((&a_high + &b_high).truncated(low).unwrap(), &a + &b);
        if !a.coeff(0).is_zero() {
            prop_assert_eq!(
                a_high.inverse().unwrap().truncated(low).unwrap(),
                a.inverse().unwrap()
            );
        }
        prop_assert_eq!(a_high.shift(2).truncated(low).unwrap(), a.shift(2));
    }

    #[test]
    fn serde_round_trip((a, _, _) in order_and_three()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: QSeries = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn biseries_exp_log_pair(
        zorder in 1usize..=3,
        qorder in 0usize..=6,
        seedling in proptest::collection::vec((-9i64..=9, 1i64..=4), 1..=28),
    ) {
        // Fill z-coefficients (constant term zero) from the seed data.
        let mut coeffs = vec![QSeries::zero(qorder)];
        let mut iter = seedling.into_iter().map(|(n, d)| ratio(n, d)).cycle();
        for _ in 1..=zorder {
            let values: Vec<Rational> = (0..=qorder).map(|_| iter.next().unwrap()).collect();
            coeffs.push(QSeries::from_coeffs(values, qorder).unwrap());
        }
        let a = BiSeries::from_zcoeffs(coeffs).unwrap();
        prop_assert_eq!(a.exp().unwrap().log().unwrap(), a.clone());
        let one_plus = a.try_add(&BiSeries::one(zorder, qorder)).unwrap();
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus.clone());
        let inv = one_plus.inverse().unwrap();
        prop_assert_eq!(one_plus.try_mul(&inv).unwrap(), BiSeries::one(zorder, qorder));
    }
}

/// Generalized pentagonal expansion: the coefficient of `q^m` in `(q)_inf`
/// is `(-1)^j` when `m = j(3j +/- 1)/2` and 0 otherwise.
#[test]
fn euler_function_pentagonal_expansion() {
    let order = 120;
    let euler = pochhammer_tail(1, order).unwrap();
    let mut expected = vec![Rational::zero(); order + 1];
    let mut j = 0i64;
    loop {
        let small = j * (3 * j - 1) / 2;
        let large = j * (3 * j + 1) / 2;
        if small as usize > order && large as usize > order {
            break;
        }
        let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
        for m in [small, large] {
            if (m as usize) <= order {
                expected[m as usize] = sign.clone();
            }
        }
        j += 1;
    }
    assert_eq!(euler.coeffs(), expected.as_slice());
}

/// Independent oracle for the complete Bell polynomial: the partition sum
/// `Y_m = sum over k_1 + 2 k_2 + ... + m k_m = m of
///  m! / (k_1! ... k_m!) * prod (u_i / i!)^(k_i)`.
fn bell_partition_sum(m: usize, u: &[Rational]) -> Rational {
    // Walks multiplicities k_part for part = 1, 2, ...; `factor` carries
    // prod (u_i / i!)^(k_i) / k_i! along the path.
    fn walk(u: &[Rational], part: usize, budget: usize, factor: &Rational, total: &mut Rational) {
        if budget == 0 {
            *total += factor.clone();
            return;
        }
        if part > budget {
            return;
        }
        let mut part_factorial = Rational::one();
        for i in 1..=part {
            part_factorial *= rat(i as i64);
        }
        let base = &u[part - 1] / part_factorial;
        let mut term = factor.clone();
        let mut multiplicity = 0usize;
        while part * multiplicity <= budget {
            if multiplicity > 0 {
                term = term * &base / rat(multiplicity as i64);
            }
            walk(u, part + 1, budget - part * multiplicity, &term, total);
            multiplicity += 1;
        }
    }
    let mut factorial = Rational::one();
    for i in 1..=m {
        factorial *= rat(i as i64);
    }
    let mut total = Rational::zero();
    walk(u, 1, m, &Rational::one(), &mut total);
    total * factorial
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn bell_recurrence_matches_partition_sum(
        m in 1usize..=8,
        raw in proptest::collection::vec((-9i64..=9, 1i64..=4), 8),
    ) {
        let u: Vec<Rational> = raw.into_iter().take(m).map(|(n, d)| ratio(n, d)).collect();
        let via_recurrence = bell_complete(m, &u).unwrap();
        let via_partitions = bell_partition_sum(m, &u);
        prop_assert_eq!(via_recurrence, via_partitions);
    }
}

/// The Bell value for all-ones input counts set partitions (Bell numbers).
#[test]
fn bell_numbers_from_all_ones() {
    let bell_numbers = [1i64, 2, 5, 15, 52, 203, 877, 4140];
    for (idx, expected) in bell_numbers.iter().enumerate() {
        let m = idx + 1;
        let u = vec![Rational::one(); m];
        assert_eq!(bell_complete(m, &u).unwrap(), rat(*expected), "m={m}");
    }
}

/// Row sums of the binomial function match 2^n (sanity for the exact
/// binomial used throughout the builders).
#[test]
fn binomial_row_sums() {
    for n in 0..=40u64 {
        let total: BigInt = (0..=n).map(|k| binomial(n, k)).sum();
        assert_eq!(total, BigInt::one() << n, "n={n}");
    }
}
