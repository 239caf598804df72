use baumsweet::fps::{rational_series, Field, Poly, ReversionMethod, Series, SeriesError};
use baumsweet::seq;
use proptest::prelude::*;

fn schoolbook(a: &[u8], b: &[u8], n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if i + j < n {
                out[i + j] ^= x & y;
            }
        }
    }
    out
}

fn x_bits(n: usize) -> Vec<u8> {
    (0..n).map(|i| u8::from(i == 1)).collect()
}

proptest! {
    #[test]
    fn gf2_product_matches_schoolbook(a in prop::collection::vec(0u8..2, 1..400), b in prop::collection::vec(0u8..2, 1..400)) {
        let n = a.len().min(b.len());
        let got = Series::from_bits(&a).mul(&Series::from_bits(&b)).unwrap().bits().unwrap();
        prop_assert_eq!(got, schoolbook(&a, &b, n));
    }

    #[test]
    fn gf2_reversion_round_trips(tail in prop::collection::vec(0u8..2, 2..300)) {
        let mut bits = vec![0u8, 1];
        bits.extend(tail);
        let n = bits.len();
        let u = Series::from_bits(&bits);
        for method in [ReversionMethod::Newton, ReversionMethod::Incremental] {
            let v = u.reversion_with(method).unwrap();
            prop_assert_eq!(u.compose(&v).unwrap().bits().unwrap(), x_bits(n));
            prop_assert_eq!(v.compose(&u).unwrap().bits().unwrap(), x_bits(n));
        }
    }

    #[test]
    fn gf3_reversion_round_trips(lin in 1u64..3, tail in prop::collection::vec(0u64..3, 1..60)) {
        let mut vals = vec![0, lin];
        vals.extend(tail);
        let n = vals.len();
        let u = Series::from_residues(Field::Prime(3), &vals).unwrap();
        let v = u.reversion().unwrap();
        let x: Vec<u64> = (0..n as u64).map(|i| u64::from(i == 1)).collect();
        prop_assert_eq!(u.compose(&v).unwrap().residues().unwrap(), x);
    }
}

#[test]
fn reversion_preconditions() {
    assert_eq!(
        Series::from_bits(&[1, 1, 0]).reversion(),
        Err(SeriesError::NonzeroConstantTerm)
    );
    assert_eq!(
        Series::from_bits(&[0, 0, 1]).reversion(),
        Err(SeriesError::LinearCoefficientNotInvertible)
    );
    let a = Series::from_bits(&[0, 1]);
    let b = Series::from_residues(Field::Prime(3), &[0, 1]).unwrap();
    assert!(matches!(a.add(&b), Err(SeriesError::FieldMismatch(..))));
    assert_eq!(
        Series::zero(Field::GF2, 0),
        Err(SeriesError::EmptyTruncation)
    );
}

#[test]
fn truncation_is_the_minimum() {
    let a = Series::from_bits(&[1; 10]);
    let b = Series::from_bits(&[1; 6]);
    assert_eq!(a.mul(&b).unwrap().trunc(), 6);
    assert_eq!(a.add(&b).unwrap().trunc(), 6);
}

#[test]
fn reversion_of_d_and_c() {
    let q = seq::d_series_r(2, 16).reversion().unwrap().bits().unwrap();
    assert_eq!(q, vec![0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
    let p = seq::c_series_r(2, 12).reversion().unwrap().bits().unwrap();
    // p_n = 0 iff n = 0 or n = 2
    let want: Vec<u8> = (0..12).map(|n| u8::from(n != 0 && n != 2)).collect();
    assert_eq!(p, want);
}

#[test]
fn rational_series_of_geometric() {
    // 1/(1 - X) = 1 + X + X^2 + ...
    let s = rational_series(&Poly::one(), &Poly::from_ints(&[(0, 1), (1, -1)]), 8).unwrap();
    assert!(s
        .rationals()
        .iter()
        .all(|c| *c == num_rational::BigRational::from_integer(1.into())));
}

#[test]
fn csv_round_trip() {
    let s = seq::thue_morse_series(40);
    let back = Series::from_csv(Field::GF2, &s.to_csv()).unwrap();
    assert_eq!(back, s);
}
