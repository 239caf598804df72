use baumsweet::seq::{self, SeqError, SeqId};
use proptest::prelude::*;

/// b_n from the binary string: split at 1's, all 0-blocks even.
fn baum_sweet_text(n: u64) -> u8 {
    if n == 0 {
        return 1;
    }
    let s = format!("{n:b}");
    u8::from(s.split('1').all(|blk| blk.len() % 2 == 0))
}

/// 0-blocks of length divisible by r.
fn baum_sweet_r_text(r: usize, n: u64) -> u8 {
    if n == 0 {
        return 1;
    }
    let s = format!("{n:b}");
    u8::from(s.split('1').all(|blk| blk.len() % r == 0))
}

/// True iff every base-2^r digit of x is 0 or 1.
fn base_digits_01(r: u32, mut x: u128) -> bool {
    while x > 0 {
        if x % (1 << r) > 1 {
            return false;
        }
        x >>= r;
    }
    true
}

proptest! {
    #[test]
    fn baum_sweet_matches_text(n in 0u64..u64::MAX / 2) {
        prop_assert_eq!(seq::baum_sweet(n), baum_sweet_text(n));
        prop_assert_eq!(seq::baum_sweet_rec(n), baum_sweet_text(n));
    }

    #[test]
    fn baum_sweet_r_matches_text(r in 2u32..7, n in 0u64..1 << 40) {
        prop_assert_eq!(seq::baum_sweet_r(r, n), baum_sweet_r_text(r as usize, n));
        prop_assert_eq!(seq::baum_sweet_r_rec(r, n), baum_sweet_r_text(r as usize, n));
    }

    #[test]
    fn thue_morse_is_bit_parity(n in any::<u64>()) {
        prop_assert_eq!(seq::thue_morse(n), (n.count_ones() % 2) as u8);
    }

    #[test]
    fn moser_r_has_01_digits(r in 2u32..6, n in 0u64..1 << 20) {
        let m = seq::moser_r(r, n);
        prop_assert!(base_digits_01(r, m));
        prop_assert!(base_digits_01(r, seq::moser_r(r, n + 1)));
        prop_assert!(seq::moser_r(r, n + 1) > m);
        prop_assert_eq!(seq::moser_r_rec(r, n), m);
    }
}

#[test]
fn moser_enumeration_is_01_digit_scan() {
    for r in 2..=3 {
        let want: Vec<u128> = (0u128..)
            .filter(|&x| base_digits_01(r, x))
            .take(200)
            .collect();
        assert_eq!(seq::moser_enumerate(r, 200), want);
    }
}

#[test]
fn q_matches_reversion() {
    for r in 2..=4 {
        let q = seq::d_series_r(r, 1 << 12)
            .reversion()
            .unwrap()
            .bits()
            .unwrap();
        for (n, &bit) in q.iter().enumerate() {
            assert_eq!(seq::q_seq_r(r, n as u64), bit, "r={r} n={n}");
            assert_eq!(seq::q_seq_r_digits(r, n as u64), bit, "r={r} n={n}");
        }
    }
}

#[test]
fn u_is_m_plus_one() {
    for r in 2..=5 {
        for n in 0..500u64 {
            assert_eq!(seq::u_seq_r(r, n), seq::moser_r(r, n) + 1);
        }
    }
}

#[test]
fn generated_prefixes() {
    let g = |s: &str, n| seq::generate(s.parse().unwrap(), n).unwrap().to_line();
    assert_eq!(
        g("baum_sweet", 20),
        "1 1 0 1 1 0 0 1 0 1 0 0 1 0 0 1 1 0 0 1"
    );
    assert_eq!(g("u_seq", 8), "1 2 5 6 17 18 21 22");
    assert_eq!(g("a_seq", 4), "0 1 2 7");
    assert_eq!(g("l_seq", 8), "0 1 3 4 7 9 12 15");
    assert_eq!(g("moser_r:3", 4), "0 1 8 9");
    assert_eq!(g("fibonacci_numbers", 7), "0 1 1 2 3 5 8");
    let csv = seq::generate(SeqId::ThueMorse, 3).unwrap().to_csv();
    assert_eq!(csv, "n,value\n0,0\n1,1\n2,1\n");
}

#[test]
fn seqid_errors() {
    assert_eq!(
        "nope".parse::<SeqId>(),
        Err(SeqError::Unknown("nope".into()))
    );
    assert!(matches!(
        "q_seq_r".parse::<SeqId>(),
        Err(SeqError::MissingParam(_))
    ));
    assert!(matches!(
        "q_seq:2".parse::<SeqId>(),
        Err(SeqError::UnexpectedParam(_))
    ));
    assert_eq!("q_seq_r:1".parse::<SeqId>(), Err(SeqError::RTooSmall(1)));
    for name in SeqId::all_names() {
        let concrete = name.replace(":r", ":3");
        let id: SeqId = concrete.parse().unwrap();
        assert_eq!(id.to_string(), concrete);
    }
}

#[test]
fn s_needs_even_offsets() {
    assert_eq!(seq::s_from_w(&[0, 3, 5]), Err(SeqError::Parity(2)));
}
