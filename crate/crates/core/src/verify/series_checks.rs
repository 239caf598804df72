use num_bigint::BigInt;
use num_rational::BigRational;

use super::{compare, ensure, Bounds, CheckDef, Counterexample, Expected, Outcome};
use crate::fps::{self, Argument, Field, Poly, ReversionMethod, Series, Term};
use crate::seq;

const N16: u64 = 1 << 16;
const N14: u64 = 1 << 14;
const N12: u64 = 1 << 12;
const N10: u64 = 1 << 10;

pub(super) fn checks() -> Vec<CheckDef> {
    use Expected::{Fail, Pass};
    vec![
        CheckDef {
            id: "trivial.identity",
            description: "X composed with X is X",
            expected: Pass,
            quick: &[("n", 64)],
            full: &[("n", 64)],
            run: trivial_identity,
        },
        CheckDef {
            id: "eq.b_eq",
            description: "B^4 + X B^2 + B = 0 over F_2",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: b_eq,
        },
        CheckDef {
            id: "eq.c_eq",
            description: "X (C^2 + 1) + C^4 + C = 0 over F_2",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: c_eq,
        },
        CheckDef {
            id: "eq.d_eq",
            description: "X^3 (D^2 + D) + D^4 = 0 over F_2",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: d_eq,
        },
        CheckDef {
            id: "eq.p_eq",
            description: "(X + 1) P + X^3 + X^2 + X = 0 for P the reversion of C",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: p_eq,
        },
        CheckDef {
            id: "eq.q_eq",
            description: "(X + 1) Q^4 + X^3 Q = 0 for Q the reversion of D",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: q_eq,
        },
        CheckDef {
            id: "eq.br_eq",
            description: "B_r^(2^r) + X B_r^2 + B_r = 0 over F_2",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 2), ("r_max", 5)],
            run: br_eq,
        },
        CheckDef {
            id: "eq.cr_eq",
            description: "C_r^(2^r) + X C_r^2 + C_r + X = 0 over F_2",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 2), ("r_max", 5)],
            run: cr_eq,
        },
        CheckDef {
            id: "eq.dr_eq",
            description: "X D_r^(2^r) + X^(2^r) (D_r^2 + D_r) = 0 over F_2",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 2), ("r_max", 5)],
            run: dr_eq,
        },
        CheckDef {
            id: "eq.pr_eq",
            description: "(X^2 + 1) P_r + X^(2^r) + X = 0 for P_r the reversion of C_r",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 2), ("r_max", 5)],
            run: pr_eq,
        },
        CheckDef {
            id: "eq.pr_eq.r2_factor",
            description: "at r = 2 the P_r relation is (X + 1) times the P relation, and P_2 = P",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: pr_eq_r2_factor,
        },
        CheckDef {
            id: "eq.qr_eq",
            description: "(X + 1) Q_r^(2^r) + X^(2^r - 1) Q_r = 0 for Q_r the reversion of D_r",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 2), ("r_max", 5)],
            run: qr_eq,
        },
        CheckDef {
            id: "rev.c_p",
            description: "C(P) = P(C) = X",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N14)],
            run: rev_c_p,
        },
        CheckDef {
            id: "rev.d_q",
            description: "D(Q) = Q(D) = X",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N14)],
            run: rev_d_q,
        },
        CheckDef {
            id: "rev.thue_morse",
            description: "T composed with its reversion is X on both sides",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N14)],
            run: rev_thue_morse,
        },
        CheckDef {
            id: "rev.r_variants",
            description: "C_r(P_r) = P_r(C_r) = X and D_r(Q_r) = Q_r(D_r) = X",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N14), ("r_min", 2), ("r_max", 5)],
            run: rev_r_variants,
        },
        CheckDef {
            id: "rev.methods_agree",
            description: "incremental and Newton reversion agree on D, C and T",
            expected: Pass,
            quick: &[("n", 256)],
            full: &[("n", N10)],
            run: rev_methods_agree,
        },
        CheckDef {
            id: "rev.first_terms",
            description: "reversion of D starts 0,1,1,0,0,1,1,0 and c has 1's at 1, 2, 7",
            expected: Pass,
            quick: &[("n", 16)],
            full: &[("n", 16)],
            run: rev_first_terms,
        },
        CheckDef {
            id: "closed.p",
            description: "p_n = 0 iff n = 0 or n = 2, against the reversion of C",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N14)],
            run: closed_p,
        },
        CheckDef {
            id: "closed.p_r",
            description: "p^(r)_n = 0 iff n is even and n < 2^r, against the reversion of C_r",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N14), ("r_min", 2), ("r_max", 5)],
            run: closed_p_r,
        },
        CheckDef {
            id: "closed.pbar",
            description: "sum p_n X^n = (X^3 - X^2 + X) / (1 - X) over Q",
            expected: Pass,
            quick: &[("n", N10)],
            full: &[("n", N12)],
            run: closed_pbar,
        },
        CheckDef {
            id: "closed.pbar_r",
            description: "sum p^(r)_n X^n = (sum_{k=1}^{2^r-1} (-1)^(k-1) X^k) / (1 - X) over Q",
            expected: Pass,
            quick: &[("n", N10), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            run: closed_pbar_r,
        },
        CheckDef {
            id: "eq.b_complex",
            description: "Bbar(X^4) + X Bbar(X^2) - Bbar(X) = 0 over Q",
            expected: Pass,
            quick: &[("n", N10)],
            full: &[("n", N12)],
            run: b_complex,
        },
        CheckDef {
            id: "eq.br_complex",
            description: "Bbar_r(X^(2^r)) + X Bbar_r(X^2) - Bbar_r(X) = 0 over Q",
            expected: Pass,
            quick: &[("n", N10), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            run: br_complex,
        },
        CheckDef {
            id: "eq.q_complex",
            description: "X^3 Qbar(X) = (1 + X) Qbar(X^4) over Q",
            expected: Pass,
            quick: &[("n", N10)],
            full: &[("n", N12)],
            run: q_complex,
        },
        CheckDef {
            id: "eq.qr_complex.corrected",
            description: "X^(2^r - 1) Qbar_r(X) = (1 + X) Qbar_r(X^(2^r)) over Q",
            expected: Pass,
            quick: &[("n", N10), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            run: qr_complex_corrected,
        },
        CheckDef {
            id: "eq.qr_complex.printed_form",
            description:
                "printed form X^(2^r - 2) Qbar_r(X) = (1 + X) Qbar_r(X^(2^r)); expected to fail",
            expected: Fail,
            quick: &[("n", N10), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            run: qr_complex_printed_form,
        },
    ]
}

fn r_range(b: &Bounds) -> std::ops::RangeInclusive<u32> {
    b.u32("r_min")..=b.u32("r_max")
}

fn x_pow(e: usize) -> Poly {
    Poly::x_pow(e)
}

fn one() -> Poly {
    Poly::one()
}

fn poly(terms: &[(usize, i64)]) -> Poly {
    Poly::from_ints(terms)
}

/// Vanishing of a relation modulo `X^n`, reporting the lowest nonzero
/// coefficient of the residual.
fn relation(terms: &[Term<'_>], n: usize, what: &str) -> Result<(), Counterexample> {
    let residual = fps::relation_residual(terms, n)
        .map_err(|e| Counterexample::new(format!("{what}: {e}")))?;
    match residual.valuation() {
        None => Ok(()),
        Some(i) => Err(Counterexample::new(format!(
            "{what}: coefficient of X^{i} is {}",
            fps::fmt_rational(&residual.coeff(i))
        ))
        .at("n", i)),
    }
}

fn err(what: &str) -> impl Fn(fps::SeriesError) -> Counterexample + '_ {
    move |e| Counterexample::new(format!("{what}: {e}"))
}

fn gf2_one(n: usize) -> Series {
    Series::one(Field::GF2, n).expect("positive truncation")
}

fn lift(bits: &[u8]) -> Series {
    let values: Vec<BigRational> = bits
        .iter()
        .map(|&b| BigRational::from_integer(BigInt::from(b)))
        .collect();
    Series::from_rationals(Field::Rational, &values).expect("nonempty")
}

/// Reversion oracle bits, one coefficient past `n` so `n` terms are exact.
fn reversion_bits(s: &Series) -> Result<Vec<u8>, Counterexample> {
    s.reversion()
        .map_err(err("reversion"))
        .map(|v| v.bits().expect("series over F_2"))
}

fn is_x(s: &Series) -> Result<(), Counterexample> {
    let bad = (0..s.trunc()).find(|&i| s.residue(i) != Some(u64::from(i == 1)));
    match bad {
        None => Ok(()),
        Some(i) => {
            Err(Counterexample::new(format!("coefficient of X^{i} differs from X")).at("n", i))
        }
    }
}

fn trivial_identity(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let x = Series::x(Field::GF2, n).map_err(err("x"))?;
    is_x(&x.compose(&x).map_err(err("compose"))?)?;
    let xq = Series::x(Field::Rational, n).map_err(err("x"))?;
    let c = xq.compose(&xq).map_err(err("compose"))?;
    ensure(c == xq, || {
        Counterexample::new("X(X) over Q differs from X")
    })?;
    Ok(String::new())
}

fn b_eq(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let bs = seq::b_series_r(2, n);
    relation(
        &[
            Term::new(&bs, Argument::Power(4), one()),
            Term::new(&bs, Argument::Power(2), x_pow(1)),
            Term::new(&bs, Argument::Power(1), one()),
        ],
        n,
        "B^4 + X B^2 + B",
    )?;
    Ok(format!("vanishes mod X^{n}"))
}

fn c_eq(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let c = seq::c_series_r(2, n);
    let u = gf2_one(n);
    relation(
        &[
            Term::new(&c, Argument::Power(2), x_pow(1)),
            Term::new(&u, Argument::Power(1), x_pow(1)),
            Term::new(&c, Argument::Power(4), one()),
            Term::new(&c, Argument::Power(1), one()),
        ],
        n,
        "X (C^2 + 1) + C^4 + C",
    )?;
    Ok(format!("vanishes mod X^{n}"))
}

fn d_eq(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let d = seq::d_series_r(2, n);
    relation(
        &[
            Term::new(&d, Argument::Power(2), x_pow(3)),
            Term::new(&d, Argument::Power(1), x_pow(3)),
            Term::new(&d, Argument::Power(4), one()),
        ],
        n,
        "X^3 (D^2 + D) + D^4",
    )?;
    Ok(format!("vanishes mod X^{n}"))
}

fn p_eq(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let p = seq::c_series_r(2, n)
        .reversion()
        .map_err(err("reversion of C"))?;
    let u = gf2_one(n);
    relation(
        &[
            Term::new(&p, Argument::Power(1), poly(&[(0, 1), (1, 1)])),
            Term::new(&u, Argument::Power(1), poly(&[(1, 1), (2, 1), (3, 1)])),
        ],
        n,
        "(X + 1) P + X^3 + X^2 + X",
    )?;
    Ok(format!("vanishes mod X^{n}"))
}

fn q_eq(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let q = seq::d_series_r(2, n)
        .reversion()
        .map_err(err("reversion of D"))?;
    relation(
        &[
            Term::new(&q, Argument::Power(4), poly(&[(0, 1), (1, 1)])),
            Term::new(&q, Argument::Power(1), x_pow(3)),
        ],
        n,
        "(X + 1) Q^4 + X^3 Q",
    )?;
    Ok(format!("vanishes mod X^{n}"))
}

fn per_r(b: &Bounds, f: impl Fn(u32, usize) -> Result<(), Counterexample>) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        f(r, n).map_err(|ce| ce.at("r", r))?;
    }
    Ok(format!(
        "vanishes mod X^{n} for r in {}..={}",
        b.get("r_min"),
        b.get("r_max")
    ))
}

fn br_eq(b: &Bounds) -> Outcome {
    per_r(b, |r, n| {
        let big = 1u64 << r;
        let s = seq::b_series_r(r, n);
        relation(
            &[
                Term::new(&s, Argument::Power(big), one()),
                Term::new(&s, Argument::Power(2), x_pow(1)),
                Term::new(&s, Argument::Power(1), one()),
            ],
            n,
            "B_r^R + X B_r^2 + B_r",
        )
    })
}

fn cr_eq(b: &Bounds) -> Outcome {
    per_r(b, |r, n| {
        let big = 1u64 << r;
        let c = seq::c_series_r(r, n);
        let u = gf2_one(n);
        relation(
            &[
                Term::new(&c, Argument::Power(big), one()),
                Term::new(&c, Argument::Power(2), x_pow(1)),
                Term::new(&c, Argument::Power(1), one()),
                Term::new(&u, Argument::Power(1), x_pow(1)),
            ],
            n,
            "C_r^R + X C_r^2 + C_r + X",
        )
    })
}

fn dr_eq(b: &Bounds) -> Outcome {
    per_r(b, |r, n| {
        let big = 1u64 << r;
        let d = seq::d_series_r(r, n);
        relation(
            &[
                Term::new(&d, Argument::Power(big), x_pow(1)),
                Term::new(&d, Argument::Power(2), x_pow(big as usize)),
                Term::new(&d, Argument::Power(1), x_pow(big as usize)),
            ],
            n,
            "X D_r^R + X^R (D_r^2 + D_r)",
        )
    })
}

fn pr_eq(b: &Bounds) -> Outcome {
    per_r(b, |r, n| {
        let big = 1usize << r;
        let p = seq::c_series_r(r, n)
            .reversion()
            .map_err(err("reversion of C_r"))?;
        let u = gf2_one(n);
        relation(
            &[
                Term::new(&p, Argument::Power(1), poly(&[(0, 1), (2, 1)])),
                Term::new(&u, Argument::Power(1), poly(&[(1, 1), (big, 1)])),
            ],
            n,
            "(X^2 + 1) P_r + X^R + X",
        )
    })
}

fn pr_eq_r2_factor(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let mod2 = |p: &Poly| -> Vec<(usize, i64)> {
        p.terms()
            .filter_map(|(e, c)| {
                let v = fps::rational_to_i64(c)
                    .expect("integer polynomial")
                    .rem_euclid(2);
                (v != 0).then_some((e, v))
            })
            .collect()
    };
    let x1 = poly(&[(0, 1), (1, 1)]);
    ensure(mod2(&x1.mul(&x1)) == vec![(0, 1), (2, 1)], || {
        Counterexample::new("(X + 1)^2 differs from X^2 + 1 over F_2")
    })?;
    ensure(
        mod2(&x1.mul(&poly(&[(1, 1), (2, 1), (3, 1)]))) == vec![(1, 1), (4, 1)],
        || Counterexample::new("(X + 1)(X^3 + X^2 + X) differs from X^4 + X over F_2"),
    )?;
    let p = reversion_bits(&Series::gf2_from_fn(n, |i| {
        i > 0 && seq::baum_sweet_rec(i as u64) == 1
    }))?;
    let p2 = reversion_bits(&seq::c_series_r(2, n))?;
    compare("P_2 vs P", p2, p)?;
    Ok(format!("consistent mod X^{n}"))
}

fn qr_eq(b: &Bounds) -> Outcome {
    per_r(b, |r, n| {
        let big = 1u64 << r;
        let q = seq::d_series_r(r, n)
            .reversion()
            .map_err(err("reversion of D_r"))?;
        relation(
            &[
                Term::new(&q, Argument::Power(big), poly(&[(0, 1), (1, 1)])),
                Term::new(&q, Argument::Power(1), x_pow(big as usize - 1)),
            ],
            n,
            "(X + 1) Q_r^R + X^(R-1) Q_r",
        )
    })
}

fn round_trip(u: &Series) -> Result<(), Counterexample> {
    let v = u.reversion().map_err(err("reversion"))?;
    is_x(&u.compose(&v).map_err(err("compose"))?).map_err(|ce| Counterexample {
        detail: format!("U(V): {}", ce.detail),
        ..ce
    })?;
    is_x(&v.compose(u).map_err(err("compose"))?).map_err(|ce| Counterexample {
        detail: format!("V(U): {}", ce.detail),
        ..ce
    })
}

fn rev_c_p(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    round_trip(&seq::c_series_r(2, n))?;
    Ok(format!("both sides equal X mod X^{n}"))
}

fn rev_d_q(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    round_trip(&seq::d_series_r(2, n))?;
    Ok(format!("both sides equal X mod X^{n}"))
}

fn rev_thue_morse(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    round_trip(&seq::thue_morse_series(n))?;
    Ok(format!("both sides equal X mod X^{n}"))
}

fn rev_r_variants(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        round_trip(&seq::c_series_r(r, n)).map_err(|ce| ce.at("r", r))?;
        round_trip(&seq::d_series_r(r, n)).map_err(|ce| ce.at("r", r))?;
    }
    Ok(format!("C_r and D_r round-trip mod X^{n}"))
}

fn rev_methods_agree(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for (name, s) in [
        ("D", seq::d_series_r(2, n)),
        ("C", seq::c_series_r(2, n)),
        ("T", seq::thue_morse_series(n)),
    ] {
        let inc = s
            .reversion_with(ReversionMethod::Incremental)
            .map_err(err(name))?;
        let newton = s
            .reversion_with(ReversionMethod::Newton)
            .map_err(err(name))?;
        compare(name, newton.bits().unwrap(), inc.bits().unwrap())?;
    }
    let dense =
        Series::from_residues(Field::Prime(3), &[0, 1, 2, 1, 0, 2, 1, 1]).map_err(err("dense"))?;
    let a = dense
        .reversion_with(ReversionMethod::Incremental)
        .map_err(err("GF(3)"))?;
    let c = dense
        .reversion_with(ReversionMethod::Newton)
        .map_err(err("GF(3)"))?;
    ensure(a == c, || Counterexample::new("GF(3) reversions differ"))?;
    Ok(format!("agree mod X^{n}"))
}

fn rev_first_terms(b: &Bounds) -> Outcome {
    let n = b.usize("n").max(8);
    let q = reversion_bits(&seq::d_series_r(2, n))?;
    compare(
        "q prefix",
        q[..8].iter().copied(),
        [0u8, 1, 1, 0, 0, 1, 1, 0],
    )?;
    let c = seq::c_prefix(n);
    let ones: Vec<u128> = seq::char_positions(&c, 1, true)
        .into_iter()
        .take(4)
        .collect();
    compare("a prefix", ones, vec![0, 1, 2, 7])?;
    let x = Series::from_bits(&[0, 1, 1, 0, 0, 0, 0, 0, 0]);
    let v = reversion_bits(&x)?;
    compare("reversion of X + X^2", v, vec![0, 1, 1, 0, 1, 0, 0, 0, 1])?;
    Ok(String::new())
}

fn closed_p(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let p = reversion_bits(&seq::c_series_r(2, n))?;
    compare("p_n", (0..n as u64).map(seq::p_seq), p)?;
    Ok(format!("n < {n}"))
}

fn closed_p_r(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        let p = reversion_bits(&seq::c_series_r(r, n))?;
        compare("p^(r)_n", (0..n as u64).map(|i| seq::p_seq_r(r, i)), p)
            .map_err(|ce| ce.at("r", r))?;
    }
    Ok(format!("n < {n}"))
}

fn from_p(n: usize, f: impl Fn(u64) -> u8) -> Series {
    lift(&(0..n as u64).map(f).collect::<Vec<u8>>())
}

fn rational_equal(got: &Series, want: &Series, what: &str) -> Result<(), Counterexample> {
    compare(what, got.rationals(), want.rationals()).map(|_| ())
}

fn closed_pbar(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let s = fps::rational_series(
        &poly(&[(1, 1), (2, -1), (3, 1)]),
        &poly(&[(0, 1), (1, -1)]),
        n,
    )
    .map_err(err("rational series"))?;
    rational_equal(&s, &from_p(n, seq::p_seq), "(X^3 - X^2 + X)/(1 - X)")?;
    Ok(format!("n < {n}"))
}

fn closed_pbar_r(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        let big = 1usize << r;
        let terms: Vec<(usize, i64)> = (1..big)
            .map(|k| (k, if k % 2 == 1 { 1 } else { -1 }))
            .collect();
        let s = fps::rational_series(&poly(&terms), &poly(&[(0, 1), (1, -1)]), n)
            .map_err(err("rational series"))?;
        rational_equal(
            &s,
            &from_p(n, |i| seq::p_seq_r(r, i)),
            "alternating sum form",
        )
        .map_err(|ce| ce.at("r", r))?;
        if r == 2 {
            let base = fps::rational_series(
                &poly(&[(1, 1), (2, -1), (3, 1)]),
                &poly(&[(0, 1), (1, -1)]),
                n,
            )
            .map_err(err("rational series"))?;
            rational_equal(&s, &base, "r = 2 against the cubic numerator")
                .map_err(|ce| ce.at("r", r))?;
        }
    }
    Ok(format!("n < {n}"))
}

fn bbar_relation(r: u32, n: usize) -> Result<(), Counterexample> {
    let big = 1usize << r;
    let s = from_p(n, |i| seq::baum_sweet_r(r, i));
    relation(
        &[
            Term::new(&s, Argument::Substitute(big), one()),
            Term::new(&s, Argument::Substitute(2), x_pow(1)),
            Term::new(&s, Argument::Substitute(1), poly(&[(0, -1)])),
        ],
        n,
        "Bbar_r(X^R) + X Bbar_r(X^2) - Bbar_r(X)",
    )
}

fn b_complex(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    bbar_relation(2, n)?;
    Ok(format!("vanishes mod X^{n}"))
}

fn br_complex(b: &Bounds) -> Outcome {
    per_r(b, bbar_relation)
}

/// `X^e Qbar_r(X) - (1 + X) Qbar_r(X^R)` with `Qbar_r` from the reversion
/// of `D_r`.
fn qbar_relation(r: u32, e: usize, n: usize) -> Result<(), Counterexample> {
    let big = 1usize << r;
    let q = lift(&reversion_bits(&seq::d_series_r(r, n))?);
    relation(
        &[
            Term::new(&q, Argument::Substitute(1), x_pow(e)),
            Term::new(&q, Argument::Substitute(big), poly(&[(0, -1), (1, -1)])),
        ],
        n,
        &format!("X^{e} Qbar_r(X) - (1 + X) Qbar_r(X^R)"),
    )
}

fn q_complex(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    qbar_relation(2, 3, n)?;
    Ok(format!("vanishes mod X^{n}"))
}

fn qr_complex_corrected(b: &Bounds) -> Outcome {
    per_r(b, |r, n| qbar_relation(r, (1 << r) - 1, n))
}

fn qr_complex_printed_form(b: &Bounds) -> Outcome {
    per_r(b, |r, n| qbar_relation(r, (1 << r) - 2, n))
}
