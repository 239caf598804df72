use std::collections::BTreeSet;

use super::{compare, ensure, Bounds, CheckDef, Counterexample, Expected, Outcome};
use crate::seq::{self, SeqId};

const N16: u64 = 1 << 16;
const N14: u64 = 1 << 14;
const N12: u64 = 1 << 12;
const N10: u64 = 1 << 10;

pub(super) fn checks() -> Vec<CheckDef> {
    use Expected::{Fail, Pass};
    vec![
        CheckDef {
            id: "seq.b_prefix20",
            description: "first 20 terms of b are 1,1,0,1,1,0,0,1,0,1,0,0,1,0,0,1,1,0,0,1",
            expected: Pass,
            quick: &[],
            full: &[],
            run: b_prefix20,
        },
        CheckDef {
            id: "seq.examples",
            description: "small values of l, h, u, v, m^(3), p^(3), q^(3), s~ and f",
            expected: Pass,
            quick: &[],
            full: &[],
            run: examples,
        },
        CheckDef {
            id: "dual.baum_sweet",
            description: "b by digit scan equals b from b_{2n+1} = b_{4n} = b_n, b_{4n+2} = 0",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: dual_baum_sweet,
        },
        CheckDef {
            id: "dual.baum_sweet_r",
            description: "b^(r) by digit scan equals b^(r) from its recurrences; r = 2 gives b",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 2), ("r_max", 5)],
            run: dual_baum_sweet_r,
        },
        CheckDef {
            id: "dual.thue_morse",
            description: "t by digit sum equals t from t_{2n} = t_n, t_{2n+1} = 1 - t_n",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: dual_thue_morse,
        },
        CheckDef {
            id: "dual.moser",
            description: "m from its recurrence equals the sorted sums of distinct powers of 4",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: dual_moser,
        },
        CheckDef {
            id: "dual.moser_r",
            description: "m^(r) from its recurrence equals the sorted sums of distinct powers of 2^r",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 3), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 3), ("r_max", 5)],
            run: dual_moser_r,
        },
        CheckDef {
            id: "dual.q",
            description: "q from its recurrence equals the coefficients of the reversion of D",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: dual_q,
        },
        CheckDef {
            id: "dual.q_r",
            description: "q^(r) from the corrected recurrence equals the coefficients of the reversion of D_r",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 2), ("r_max", 5)],
            run: dual_q_r,
        },
        CheckDef {
            id: "rec.q_r.corrected",
            description: "reversion of D_r satisfies q_{Rn+1} = q_{Rn+2} = q_{n+1}, other residues 0",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 2), ("r_max", 5)],
            run: rec_q_r_corrected,
        },
        CheckDef {
            id: "typo.q_recur_r.printed_form",
            description: "printed form q_{Rn+1} = q_{Rn+2} = q_n against the reversion of D_r; expected to fail",
            expected: Fail,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N16), ("r_min", 2), ("r_max", 5)],
            run: typo_q_recur_r,
        },
        CheckDef {
            id: "dual.u",
            description: "u from u_{2n} = 4u_n - 3, u_{2n+1} = 4u_n - 2 equals the 1-positions of the reversion of D",
            expected: Pass,
            quick: &[("len", N12)],
            full: &[("len", N16)],
            run: dual_u,
        },
        CheckDef {
            id: "dual.u_r",
            description: "u^(r) from the corrected recurrences equals the 1-positions of the reversion of D_r",
            expected: Pass,
            quick: &[("len", N12), ("r_min", 2), ("r_max", 5)],
            full: &[("len", N16), ("r_min", 2), ("r_max", 5)],
            run: dual_u_r,
        },
        CheckDef {
            id: "dual.a",
            description: "a from its five recurrences equals the 1-positions of the reversion of T, with 0 prepended",
            expected: Pass,
            quick: &[("len", N12)],
            full: &[("len", N16)],
            run: dual_a,
        },
        CheckDef {
            id: "cor.un_mn",
            description: "u_n = m_n + 1: q(m_n + 1) = 1 for n < N and the 1's of q below X are exactly these",
            expected: Pass,
            quick: &[("n", N12), ("scan", 1 << 18)],
            full: &[("n", N16), ("scan", 1 << 24)],
            run: cor_un_mn,
        },
        CheckDef {
            id: "thm.un_recur",
            description: "u_0 = 1, u_{2n} = 4u_n - 3, u_{2n+1} = 4u_n - 2 on the 1-positions of q",
            expected: Pass,
            quick: &[("scan", 1 << 18)],
            full: &[("scan", 1 << 24)],
            run: thm_un_recur,
        },
        CheckDef {
            id: "thm.unr_mnr",
            description: "u^(r)_n = m^(r)_n + 1 on the 1-positions of q^(r)",
            expected: Pass,
            quick: &[("n", N10), ("scan", 1 << 16), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N12), ("scan", 1 << 20), ("r_min", 2), ("r_max", 5)],
            run: thm_unr_mnr,
        },
        CheckDef {
            id: "cor.unr_recur.corrected",
            description: "u^(r)_{2n} = 2^r u_n - 2^r + 1, u^(r)_{2n+1} = 2^r u_n - 2^r + 2 against m^(r) + 1",
            expected: Pass,
            quick: &[("n", N10), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            run: cor_unr_recur_corrected,
        },
        CheckDef {
            id: "typo.unr_recur.printed_form",
            description: "printed form u^(r)_{2n} = u_n - 2^r + 1, u^(r)_{2n+1} = u_n - 2^r + 2 for n >= 1; expected to fail",
            expected: Fail,
            quick: &[("n", N10), ("r_min", 3), ("r_max", 5)],
            full: &[("n", N12), ("r_min", 3), ("r_max", 5)],
            run: typo_unr_recur,
        },
        CheckDef {
            id: "thm.un_differ",
            description: "u_{n+1} - u_n = (1 + 2 4^k)/3 exactly when n = (2m+1)2^k - 1; the difference set",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N16)],
            run: thm_un_differ,
        },
        CheckDef {
            id: "thm.unr_differ",
            description: "u^(r)_{n+1} - u^(r)_n = (1 + (2^r - 2) 2^(rk))/(2^r - 1) exactly when n = (2m+1)2^k - 1",
            expected: Pass,
            quick: &[("n", N10), ("r_min", 3), ("r_max", 5)],
            full: &[("n", N12), ("r_min", 3), ("r_max", 5)],
            run: thm_unr_differ,
        },
        CheckDef {
            id: "rem.allseq.t_m",
            description: "t_{m_n} = t_n",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N14)],
            run: allseq_t_m,
        },
        CheckDef {
            id: "rem.allseq.t_u",
            description: "t_{u_{2n}} = t_{u_{2n+1}} = 1 - t_n",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N14)],
            run: allseq_t_u,
        },
        CheckDef {
            id: "rem.allseq.b_m",
            description: "b_{m_n} = 1 iff n = 0 or n is a power of 2",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N14)],
            run: allseq_b_m,
        },
        CheckDef {
            id: "rem.allseq.b_u",
            description: "b_{u_n} = 1 iff n = 0",
            expected: Pass,
            quick: &[("n", N12)],
            full: &[("n", N14)],
            run: allseq_b_u,
        },
        CheckDef {
            id: "thm.an_mn",
            description: "a_{2n} = 2m_n, a_{2n+1} = 2m_{n+1} - 1",
            expected: Pass,
            quick: &[("len", N12), ("n", N12)],
            full: &[("len", N16), ("n", N16)],
            run: thm_an_mn,
        },
        CheckDef {
            id: "cor.an_un",
            description: "a_{2n} = 2u_n - 2, a_{2n+1} = 2u_{n+1} - 3",
            expected: Pass,
            quick: &[("len", N12), ("n", N12)],
            full: &[("len", N16), ("n", N16)],
            run: cor_an_un,
        },
        CheckDef {
            id: "rem.an_alt",
            description: "a_{4n} = 4a_{2n}, a_{4n+1} = 4a_{2n} + 1, a_{4n+2} = 4a_{2n} + 2, a_{4n+3} = 4a_{2n+1} + 3",
            expected: Pass,
            quick: &[("len", N12), ("n", N12)],
            full: &[("len", N16), ("n", N16)],
            run: rem_an_alt,
        },
        CheckDef {
            id: "lem.dn_vn",
            description: "d_{2n} = 2v_{n+1} - 3, d_{2n+1} = 2v_{n+1} - 2",
            expected: Pass,
            quick: &[("len", N12)],
            full: &[("len", N16)],
            run: lem_dn_vn,
        },
        CheckDef {
            id: "lem.u_bounds",
            description: "((n+1)^r + 2^r - 2)/(2^r - 1) <= u^(r)_n <= n^r + 1 and the values at 2^m - 1 and 2^m",
            expected: Pass,
            quick: &[("n", N10), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            run: lem_u_bounds,
        },
        CheckDef {
            id: "lem.u_limits",
            description: "u^(r)_n / n^r has liminf 1/(2^r - 1) and limsup 1 along 2^m - 1 and 2^m; sampled ratios spread over the interval",
            expected: Pass,
            quick: &[("n", N10), ("r_min", 2), ("r_max", 5)],
            full: &[("n", N12), ("r_min", 2), ("r_max", 5)],
            run: lem_u_limits,
        },
        CheckDef {
            id: "lem.w_complement",
            description: "w^(r)_n = v^(r)_{n+1} - 1 lists the non-values of m^(r), and w_n - n is even",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 3)],
            full: &[("n", N14), ("r_min", 2), ("r_max", 3)],
            run: lem_w_complement,
        },
        CheckDef {
            id: "lem.sn_1",
            description: "s^(r)_n = 1 iff n = j + sum (2^(r n_i) - 2^(n_i)), 1 < n_0 < ..., 0 <= j <= 2^r - 3",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 3)],
            full: &[("n", N12), ("r_min", 2), ("r_max", 3)],
            run: lem_sn_1,
        },
        CheckDef {
            id: "lem.s_runs",
            description: "runs of 1's in s^(r) have length exactly 2^r - 2",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 3)],
            full: &[("n", N14), ("r_min", 2), ("r_max", 3)],
            run: lem_s_runs,
        },
        CheckDef {
            id: "lem.tildes",
            description: "s~^(r)_n = s^(r)_n when 2^r - 2 divides n, else 0",
            expected: Pass,
            quick: &[("n", N12), ("r_min", 2), ("r_max", 3)],
            full: &[("n", N12), ("r_min", 2), ("r_max", 3)],
            run: lem_tildes,
        },
        CheckDef {
            id: "lem.interval",
            description: "s~^(r)_n = 0 for n in [2^(r(k+1)-1), (4/3) 2^(r(k+1)-1)]",
            expected: Pass,
            quick: &[("k_min", 2), ("k_max", 3), ("r_min", 2), ("r_max", 3)],
            full: &[("k_min", 2), ("k_max", 3), ("r_min", 2), ("r_max", 3)],
            run: lem_interval,
        },
        CheckDef {
            id: "lem.divisibility",
            description: "for each k >= 2 some n >= 1 with k | n has s~^(2)_n = 1",
            expected: Pass,
            quick: &[("k_max", 12), ("n", N16)],
            full: &[("k_max", 12), ("n", N16)],
            run: lem_divisibility,
        },
        CheckDef {
            id: "runs.b_ones",
            description: "the longest run of 1's in b is exactly 2",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 1_000_000)],
            run: runs_b_ones,
        },
        CheckDef {
            id: "runs.b_adjacent",
            description: "b_n = b_{n+1} = 1 exactly at n = 4^m - 1",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 1_000_000)],
            run: runs_b_adjacent,
        },
        CheckDef {
            id: "runs.b_zeros",
            description: "b vanishes on [5 2^k, 6 2^k) for every k with 6 2^k <= N; a 0-run longer than 1000 exists",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 1_000_000)],
            run: runs_b_zeros,
        },
        CheckDef {
            id: "runs.q_ones",
            description: "every maximal run of 1's in q has length exactly 2",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 1_000_000)],
            run: runs_q_ones,
        },
        CheckDef {
            id: "runs.q_zeros",
            description: "a 0-run of q of length k starting at n + 1 forces a 0-run longer than 4k at 4n; a 0-run longer than 1000 exists",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 1_000_000)],
            run: runs_q_zeros,
        },
    ]
}

fn r_range(b: &Bounds) -> std::ops::RangeInclusive<u32> {
    b.u32("r_min")..=b.u32("r_max")
}

fn with_r<T>(r: u32, res: Result<T, Counterexample>) -> Result<T, Counterexample> {
    res.map_err(|ce| ce.at("r", r))
}

/// Coefficients of the reversion of `D_r`, the oracle for `q^(r)`.
fn q_oracle(r: u32, len: usize) -> Vec<u8> {
    seq::d_series_r(r, len)
        .reversion()
        .expect("D_r is invertible")
        .bits()
        .expect("series over F_2")
}

/// `m^(r)_n + 1` for `n < count`, from sums of distinct powers.
fn u_oracle(r: u32, count: usize) -> Vec<u128> {
    seq::moser_enumerate(r, count)
        .into_iter()
        .map(|m| m + 1)
        .collect()
}

fn b_prefix20(_: &Bounds) -> Outcome {
    let want = [
        1u128, 1, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1,
    ];
    compare(
        "b",
        seq::generate(SeqId::BaumSweet, 20).unwrap().values,
        want.to_vec(),
    )?;
    Ok(String::new())
}

fn examples(_: &Bounds) -> Outcome {
    let g = |id: SeqId, n: usize| seq::generate(id, n).expect("valid id").values;
    compare("l", g(SeqId::LSeq, 8), vec![0, 1, 3, 4, 7, 9, 12, 15])?;
    compare("h", g(SeqId::HSeq, 6), vec![2, 5, 6, 8, 10, 11])?;
    compare("v", g(SeqId::VSeq, 6), vec![0, 3, 4, 7, 8, 9])?;
    compare("u", g(SeqId::USeq, 8), vec![1, 2, 5, 6, 17, 18, 21, 22])?;
    compare(
        "m",
        g(SeqId::MoserDeBruijn, 8),
        vec![0, 1, 4, 5, 16, 17, 20, 21],
    )?;
    compare("t", g(SeqId::ThueMorse, 8), vec![0, 1, 1, 0, 1, 0, 0, 1])?;
    compare(
        "p^(3)",
        g(SeqId::PSeqR(3), 9),
        vec![0, 1, 0, 1, 0, 1, 0, 1, 1],
    )?;
    compare("l^(2)", g(SeqId::LSeqR(2), 1000), g(SeqId::LSeq, 1000))?;
    ensure(
        seq::baum_sweet_r(3, 8) == 1 && seq::baum_sweet_r(3, 4) == 0,
        || Counterexample::new("b^(3)_8 = 1 and b^(3)_4 = 0 expected"),
    )?;
    ensure(seq::moser_r(3, 3) == 9, || {
        Counterexample::new("m^(3)_3 = 9 expected")
    })?;
    ensure(seq::q_seq_r(3, 17) == 0 && q_oracle(3, 32)[17] == 0, || {
        Counterexample::new("q^(3)_17 = 0 expected")
    })?;
    ensure(seq::s_tilde_prefix(2, 13)[12] == 1, || {
        Counterexample::new("s~^(2)_12 = 1 expected")
    })?;
    ensure(
        seq::fibonacci(5) == 5 && seq::fibonacci(1) == 1 && seq::fibonacci(2) == 1,
        || Counterexample::new("Fibonacci calibration f_1 = f_2 = 1, f_5 = 5"),
    )?;
    Ok(String::new())
}

fn dual_baum_sweet(b: &Bounds) -> Outcome {
    let n = b.get("n");
    compare(
        "b",
        (0..n).map(seq::baum_sweet_rec),
        (0..n).map(seq::baum_sweet),
    )?;
    Ok(format!("n < {n}"))
}

fn dual_baum_sweet_r(b: &Bounds) -> Outcome {
    let n = b.get("n");
    for r in r_range(b) {
        with_r(
            r,
            compare(
                "b^(r)",
                (0..n).map(|i| seq::baum_sweet_r_rec(r, i)),
                (0..n).map(|i| seq::baum_sweet_r(r, i)),
            ),
        )?;
        if r == 2 {
            with_r(
                r,
                compare(
                    "b^(2) vs b",
                    (0..n).map(|i| seq::baum_sweet_r(2, i)),
                    (0..n).map(seq::baum_sweet_rec),
                ),
            )?;
        }
    }
    Ok(format!("n < {n}"))
}

fn dual_thue_morse(b: &Bounds) -> Outcome {
    let n = b.get("n");
    compare(
        "t",
        (0..n).map(seq::thue_morse_rec),
        (0..n).map(seq::thue_morse),
    )?;
    Ok(format!("n < {n}"))
}

fn moser_against_enumeration(r: u32, n: usize) -> Result<(), Counterexample> {
    let oracle = seq::moser_enumerate(r, n);
    compare(
        "m^(r) recurrence",
        (0..n as u64).map(|i| seq::moser_r_rec(r, i)),
        oracle.iter().copied(),
    )?;
    compare(
        "m^(r) digit spread",
        (0..n as u64).map(|i| seq::moser_r(r, i)),
        oracle.iter().copied(),
    )?;
    Ok(())
}

fn dual_moser(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    moser_against_enumeration(2, n)?;
    Ok(format!("n < {n}"))
}

fn dual_moser_r(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        with_r(r, moser_against_enumeration(r, n))?;
    }
    Ok(format!("n < {n}"))
}

fn dual_q(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    compare("q", (0..n as u64).map(seq::q_seq), q_oracle(2, n))?;
    Ok(format!("n < {n}"))
}

fn dual_q_r(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        with_r(
            r,
            compare(
                "q^(r)",
                (0..n as u64).map(|i| seq::q_seq_r(r, i)),
                q_oracle(r, n),
            ),
        )?;
    }
    Ok(format!("n < {n}"))
}

fn rec_q_r_corrected(b: &Bounds) -> Outcome {
    let len = b.usize("n");
    for r in r_range(b) {
        let q = q_oracle(r, len);
        let big = 1usize << r;
        with_r(
            r,
            ensure(q[0] == 0 && q[1] == 1, || {
                Counterexample::new("q_0 = 0, q_1 = 1 expected")
            }),
        )?;
        let mut n = 0;
        while big * n + big - 1 < len {
            for i in 0..big {
                let want = if i == 1 || i == 2 { q[n + 1] } else { 0 };
                let idx = big * n + i;
                if q[idx] != want {
                    return Err(Counterexample::new(format!(
                        "q_{idx} = {}, relation gives {want}",
                        q[idx]
                    ))
                    .at("n", n)
                    .at("r", r));
                }
            }
            n += 1;
        }
    }
    Ok(format!("indices < {len}"))
}

fn typo_q_recur_r(b: &Bounds) -> Outcome {
    let len = b.usize("n");
    for r in r_range(b) {
        let q = q_oracle(r, len);
        let big = 1usize << r;
        let mut n = 0;
        while big * n + 2 < len {
            for i in [1, 2] {
                let idx = big * n + i;
                if q[idx] != q[n] {
                    return Err(Counterexample::new(format!(
                        "q_{idx} = {} in the reversion of D_r, printed form gives q_{n} = {}",
                        q[idx], q[n]
                    ))
                    .at("n", n)
                    .at("r", r));
                }
            }
            n += 1;
        }
    }
    Ok("printed form holds".to_string())
}

fn dual_u(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let u = seq::char_positions(&q_oracle(2, len), 1, false);
    compare("u", (0..u.len() as u64).map(seq::u_seq), u.iter().copied())?;
    Ok(format!("{} terms below {len}", u.len()))
}

fn dual_u_r(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let mut counts = Vec::new();
    for r in r_range(b) {
        let u = seq::char_positions(&q_oracle(r, len), 1, false);
        with_r(
            r,
            compare(
                "u^(r)",
                (0..u.len() as u64).map(|i| seq::u_seq_r(r, i)),
                u.iter().copied(),
            ),
        )?;
        counts.push(u.len());
    }
    Ok(format!("terms below {len}: {counts:?}"))
}

fn a_oracle(len: usize) -> Vec<u128> {
    seq::char_positions(&seq::c_prefix(len), 1, true)
}

fn dual_a(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let a = a_oracle(len);
    compare("a", seq::a_prefix_rec(a.len()), a.clone())?;
    Ok(format!("{} terms below {len}", a.len()))
}

/// The 1-positions of `q^(r)` below `scan` must be exactly `m^(r) + 1`.
fn q_ones_are_m_plus_one(r: u32, scan: u64) -> Result<usize, Counterexample> {
    let mut expected = seq::moser_enumerate(r, 2).into_iter();
    let mut seen = 0usize;
    let mut m = seq::moser_enumerate(r, 1 << 20);
    m.retain(|&v| v + 1 < u128::from(scan));
    let mut it = m.into_iter().map(|v| v + 1).peekable();
    expected.next();
    for x in 0..scan {
        let is_u = it.peek() == Some(&u128::from(x));
        if is_u {
            it.next();
        }
        let q = seq::q_seq_r(r, x);
        if (q == 1) != is_u {
            return Err(
                Counterexample::new(format!("q_{x} = {q}, m + 1 membership {is_u}")).at("x", x),
            );
        }
        seen += usize::from(is_u);
    }
    Ok(seen)
}

fn cor_un_mn(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let u = u_oracle(2, n);
    compare(
        "u_n vs m_n + 1",
        (0..n as u64).map(seq::u_seq),
        u.iter().copied(),
    )?;
    if let Some(i) = u.iter().position(|&x| seq::q_seq(x as u64) != 1) {
        return Err(Counterexample::new(format!("q at m_{i} + 1 = {} is 0", u[i])).at("n", i));
    }
    let scan = b.get("scan");
    let count = q_ones_are_m_plus_one(2, scan)?;
    Ok(format!(
        "n < {n}; exact 1-set of q below {scan} ({count} terms)"
    ))
}

fn thm_un_recur(b: &Bounds) -> Outcome {
    let scan = b.get("scan");
    let u: Vec<i128> = (0..scan)
        .filter(|&x| seq::q_seq(x) == 1)
        .map(i128::from)
        .collect();
    ensure(u[0] == 1, || Counterexample::new(format!("u_0 = {}", u[0])))?;
    let mut n = 0;
    while 2 * n + 1 < u.len() {
        for (idx, want) in [(2 * n, 4 * u[n] - 3), (2 * n + 1, 4 * u[n] - 2)] {
            if u[idx] != want {
                return Err(Counterexample::new(format!(
                    "u_{idx} = {}, relation gives {want}",
                    u[idx]
                ))
                .at("n", n));
            }
        }
        n += 1;
    }
    Ok(format!("{} terms from q below {scan}", u.len()))
}

fn thm_unr_mnr(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let scan = b.get("scan");
    for r in r_range(b) {
        let u = u_oracle(r, n);
        if let Some(i) = u
            .iter()
            .position(|&x| x > u128::from(u64::MAX) || seq::q_seq_r(r, x as u64) != 1)
        {
            return Err(
                Counterexample::new(format!("q^(r) at m_{i} + 1 = {} is not 1", u[i]))
                    .at("n", i)
                    .at("r", r),
            );
        }
        with_r(r, q_ones_are_m_plus_one(r, scan))?;
        let rev = seq::char_positions(&q_oracle(r, 1 << 12), 1, false);
        with_r(
            r,
            compare(
                "1-positions of the reversion of D_r",
                rev.iter().copied(),
                u.iter().copied().take(rev.len()),
            ),
        )?;
    }
    Ok(format!("n < {n}; exact 1-sets below {scan}"))
}

fn cor_unr_recur_corrected(b: &Bounds) -> Outcome {
    let count = b.usize("n");
    for r in r_range(b) {
        let big = 1i128 << r;
        let u: Vec<i128> = u_oracle(r, count).into_iter().map(|v| v as i128).collect();
        with_r(
            r,
            compare(
                "u_seq_r",
                (0..count as u64).map(|i| seq::u_seq_r(r, i) as i128),
                u.iter().copied(),
            ),
        )?;
        let mut n = 0;
        while 2 * n + 1 < count {
            for (idx, want) in [
                (2 * n, big * u[n] - big + 1),
                (2 * n + 1, big * u[n] - big + 2),
            ] {
                if u[idx] != want {
                    return Err(Counterexample::new(format!(
                        "u_{idx} = {}, relation gives {want}",
                        u[idx]
                    ))
                    .at("n", n)
                    .at("r", r));
                }
            }
            n += 1;
        }
    }
    Ok(format!("n < {count}"))
}

fn typo_unr_recur(b: &Bounds) -> Outcome {
    let count = b.usize("n");
    for r in r_range(b) {
        let big = 1i128 << r;
        let u: Vec<i128> = u_oracle(r, count).into_iter().map(|v| v as i128).collect();
        let mut n = 1;
        while 2 * n + 1 < count {
            for (idx, want) in [(2 * n, u[n] - big + 1), (2 * n + 1, u[n] - big + 2)] {
                if u[idx] != want {
                    return Err(Counterexample::new(format!(
                        "u_{idx} = {} (m + 1 oracle), printed form gives {want}",
                        u[idx]
                    ))
                    .at("n", n)
                    .at("r", r));
                }
            }
            n += 1;
        }
    }
    Ok("printed form holds".to_string())
}

/// Differences of `m^(r) + 1` against `(1 + (R - 2) R^k)/(R - 1)` with
/// `k = v_2(n + 1)`, and the set of differences against all `k` that occur.
fn differences(r: u32, count: usize) -> Result<usize, Counterexample> {
    let big = 1u128 << r;
    let formula = |k: u32| (1 + (big - 2) * big.pow(k)) / (big - 1);
    let u = u_oracle(r, count + 1);
    let mut seen = BTreeSet::new();
    for n in 0..count {
        let d = u[n + 1] - u[n];
        let k = (n as u64 + 1).trailing_zeros();
        if d != formula(k) {
            return Err(Counterexample::new(format!(
                "difference {d}, formula gives {} for k = {k}",
                formula(k)
            ))
            .at("n", n));
        }
        seen.insert(d);
    }
    let kmax = (0..64)
        .take_while(|&k| (1usize << k) <= count)
        .last()
        .unwrap_or(0);
    let want: BTreeSet<u128> = (0..=kmax).map(formula).collect();
    ensure(seen == want, || {
        Counterexample::new(format!(
            "difference set {seen:?} differs from formula set {want:?}"
        ))
    })?;
    Ok(want.len())
}

fn thm_un_differ(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let k = differences(2, n)?;
    Ok(format!("n < {n}; {k} distinct differences"))
}

fn thm_unr_differ(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        with_r(r, differences(r, n))?;
    }
    Ok(format!("n < {n}"))
}

fn allseq_t_m(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let m = seq::moser_enumerate(2, n);
    compare(
        "t_{m_n}",
        m.iter().map(|&x| seq::thue_morse(x as u64)),
        (0..n as u64).map(seq::thue_morse),
    )?;
    Ok(format!("n < {n}"))
}

fn allseq_t_u(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let u = u_oracle(2, 2 * n);
    for i in 0..n {
        let want = 1 - seq::thue_morse(i as u64);
        for idx in [2 * i, 2 * i + 1] {
            let t = seq::thue_morse(u[idx] as u64);
            if t != want {
                return Err(Counterexample::new(format!(
                    "t at u_{idx} = {}, expected {want}",
                    u[idx]
                ))
                .at("n", i));
            }
        }
    }
    Ok(format!("n < {n}"))
}

fn allseq_b_m(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let m = seq::moser_enumerate(2, n);
    compare(
        "b_{m_n}",
        m.iter().map(|&x| seq::baum_sweet(x as u64)),
        (0..n).map(|i| u8::from(i == 0 || i.is_power_of_two())),
    )?;
    Ok(format!("n < {n}"))
}

fn allseq_b_u(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let u = u_oracle(2, n);
    compare(
        "b_{u_n}",
        u.iter().map(|&x| seq::baum_sweet(x as u64)),
        (0..n).map(|i| u8::from(i == 0)),
    )?;
    Ok(format!("n < {n}"))
}

fn check_an_mn(a: &[u128], m: &[u128], what: &str) -> Result<(), Counterexample> {
    for (i, &v) in a.iter().enumerate() {
        let n = i / 2;
        if n + 1 >= m.len() {
            break;
        }
        let want = if i % 2 == 0 {
            2 * m[n]
        } else {
            2 * m[n + 1] - 1
        };
        if v != want {
            return Err(
                Counterexample::new(format!("{what}: a_{i} = {v}, m form gives {want}")).at("n", i),
            );
        }
    }
    Ok(())
}

fn thm_an_mn(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let n = b.usize("n");
    let a = a_oracle(len);
    let m = seq::moser_enumerate(2, n / 2 + 2);
    check_an_mn(&a, &m, "reversion of T")?;
    check_an_mn(&seq::a_prefix_rec(n), &m, "recurrences")?;
    Ok(format!(
        "{} oracle terms; recurrence prefix n < {n}",
        a.len()
    ))
}

fn check_an_un(a: &[u128], u: &[u128], what: &str) -> Result<usize, Counterexample> {
    let mut checked = 0;
    for (i, &v) in a.iter().enumerate() {
        let n = i / 2;
        if n + 1 >= u.len() {
            break;
        }
        let want = if i % 2 == 0 {
            2 * u[n] - 2
        } else {
            2 * u[n + 1] - 3
        };
        if v != want {
            return Err(
                Counterexample::new(format!("{what}: a_{i} = {v}, u form gives {want}")).at("n", i),
            );
        }
        checked += 1;
    }
    Ok(checked)
}

fn cor_an_un(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let n = b.usize("n");
    let a = a_oracle(len);
    let u = seq::char_positions(&q_oracle(2, len), 1, false);
    let checked = check_an_un(&a, &u, "reversions of T and D")?;
    ensure(
        checked >= a.len().min(2 * u.len()).saturating_sub(2),
        || Counterexample::new(format!("only {checked} indices comparable")),
    )?;
    let u_rec: Vec<u128> = (0..(n / 2 + 2) as u64).map(seq::u_seq).collect();
    check_an_un(&seq::a_prefix_rec(n), &u_rec, "recurrences")?;
    Ok(format!("{checked} oracle terms; recurrence prefix n < {n}"))
}

fn check_an_alt(a: &[u128], what: &str) -> Result<(), Counterexample> {
    let mut n = 0;
    while 4 * n + 3 < a.len() {
        let rel = [
            (4 * n, 4 * a[2 * n]),
            (4 * n + 1, 4 * a[2 * n] + 1),
            (4 * n + 2, 4 * a[2 * n] + 2),
            (4 * n + 3, 4 * a[2 * n + 1] + 3),
        ];
        for (idx, want) in rel {
            if a[idx] != want {
                return Err(Counterexample::new(format!(
                    "{what}: a_{idx} = {}, relation gives {want}",
                    a[idx]
                ))
                .at("n", n));
            }
        }
        n += 1;
    }
    Ok(())
}

fn rem_an_alt(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let n = b.usize("n");
    let a = a_oracle(len);
    check_an_alt(&a, "reversion of T")?;
    check_an_alt(&seq::a_prefix_rec(n), "recurrences")?;
    Ok(format!(
        "{} oracle terms; recurrence prefix n < {n}",
        a.len()
    ))
}

fn lem_dn_vn(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let d: Vec<u128> = seq::char_positions(&seq::c_prefix(len), 0, false)
        .into_iter()
        .filter(|&m| m >= 1)
        .collect();
    let v = seq::char_positions(&q_oracle(2, len), 0, false);
    let mut checked = 0;
    for (i, &x) in d.iter().enumerate() {
        let n = i / 2;
        if n + 1 >= v.len() {
            break;
        }
        let want = if i % 2 == 0 {
            2 * v[n + 1] - 3
        } else {
            2 * v[n + 1] - 2
        };
        if x != want {
            return Err(
                Counterexample::new(format!("d_{i} = {x}, v form gives {want}")).at("n", i),
            );
        }
        checked += 1;
    }
    ensure(checked + 2 >= d.len(), || {
        Counterexample::new(format!("only {checked} of {} indices comparable", d.len()))
    })?;
    Ok(format!("{checked} terms"))
}

fn lem_u_bounds(b: &Bounds) -> Outcome {
    let count = b.get("n");
    for r in r_range(b) {
        let big = 1u128 << r;
        for n in 0..count {
            let u = seq::u_seq_r(r, n);
            let n = u128::from(n);
            let lo = (n + 1).pow(r) + big - 2;
            let hi = n.pow(r) + 1;
            if (big - 1) * u < lo || u > hi {
                return Err(Counterexample::new(format!(
                    "u = {u} outside [{lo}/{}, {hi}]",
                    big - 1
                ))
                .at("n", n)
                .at("r", r));
            }
        }
        let mut m = 0u32;
        while m * r <= 120 && m < 63 {
            let p = 1u128 << (m * r);
            let at_lo = seq::u_seq_r(r, (1u64 << m) - 1);
            let at_hi = seq::u_seq_r(r, 1u64 << m);
            let digits_lo = seq::moser_r(r, (1u64 << m) - 1) + 1;
            if at_lo * (big - 1) != p + big - 2 || at_lo != digits_lo {
                return Err(Counterexample::new(format!("u at 2^{m} - 1 is {at_lo}"))
                    .at("m", m)
                    .at("r", r));
            }
            if at_hi != p + 1 {
                return Err(Counterexample::new(format!("u at 2^{m} is {at_hi}"))
                    .at("m", m)
                    .at("r", r));
            }
            m += 1;
        }
    }
    Ok(format!("n < {count}"))
}

fn lem_u_limits(b: &Bounds) -> Outcome {
    let count = b.get("n");
    for r in r_range(b) {
        let big = 1i128 << r;
        // witnesses: |u/n^r - limit| as exact fractions, must shrink
        let mut prev_hi: Option<(i128, i128)> = None;
        let mut prev_lo: Option<(i128, i128)> = None;
        let mut m = 2u32;
        while (m + 1) * r <= 100 {
            let n_hi = 1u64 << m;
            let u_hi = seq::u_seq_r(r, n_hi) as i128;
            let den_hi = (n_hi as i128).pow(r);
            let err_hi = (u_hi - den_hi, den_hi);
            let n_lo = n_hi - 1;
            let u_lo = seq::u_seq_r(r, n_lo) as i128;
            let den_lo = (n_lo as i128).pow(r) * (big - 1);
            let err_lo = ((u_lo * (big - 1) - (n_lo as i128).pow(r)).abs(), den_lo);
            let smaller = |a: (i128, i128), b: Option<(i128, i128)>| match b {
                None => true,
                Some(b) => (a.0 as f64) / (a.1 as f64) < (b.0 as f64) / (b.1 as f64),
            };
            if !smaller(err_hi, prev_hi) || !smaller(err_lo, prev_lo) {
                return Err(Counterexample::new("distance to the limit did not shrink")
                    .at("m", m)
                    .at("r", r));
            }
            prev_hi = Some(err_hi);
            prev_lo = Some(err_lo);
            m += 1;
        }
        let (e_hi, e_lo) = (prev_hi.unwrap(), prev_lo.unwrap());
        ensure(e_hi.0 * 1000 < e_hi.1 && e_lo.0 * 1000 < e_lo.1, || {
            Counterexample::new("witness ratios not within 10^-3 of the limits").at("r", r)
        })?;
        // sampled ratios lie in [1/(R-1), 1 + 1/n^r] and come within 1/50 of 9 grid points
        let targets = 9i128;
        let mut hit = vec![false; targets as usize];
        for n in 1..count {
            let u = seq::u_seq_r(r, n) as i128;
            let p = (n as i128).pow(r);
            if u * (big - 1) < p || u > p + 1 {
                return Err(Counterexample::new(format!(
                    "ratio u/n^r = {u}/{p} outside the interval"
                ))
                .at("n", n)
                .at("r", r));
            }
            for (i, h) in hit.iter_mut().enumerate() {
                // t_i = (8 + i (R - 2)) / (8 (R - 1))
                let num = 8 + i as i128 * (big - 2);
                let den = 8 * (big - 1);
                if (50 * den * u - 50 * num * p).abs() < den * p {
                    *h = true;
                }
            }
        }
        if let Some(i) = hit.iter().position(|h| !h) {
            return Err(
                Counterexample::new(format!("no sampled ratio near grid point {i} of 8"))
                    .at("r", r),
            );
        }
    }
    Ok(format!("witnesses and sampled n < {count}"))
}

/// `w^(r)_n = v^(r)_{n+1} - 1` with `v^(r)` the 0-positions of `q^(r)`.
fn w_from_q(r: u32, count: usize) -> Vec<u128> {
    let mut v = Vec::with_capacity(count + 1);
    let mut x = 0u64;
    while v.len() < count + 1 {
        if seq::q_seq_r(r, x) == 0 {
            v.push(u128::from(x));
        }
        x += 1;
    }
    v[1..].iter().map(|&x| x - 1).collect()
}

fn s_scan(r: u32, count: usize) -> Result<Vec<u8>, Counterexample> {
    seq::s_from_w(&w_from_q(r, count)).map_err(|e| Counterexample::new(e.to_string()))
}

fn lem_w_complement(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        let w = w_from_q(r, n);
        with_r(r, compare("w", w.iter().copied(), seq::w_prefix(r, n)))?;
        if let Some(i) = w
            .iter()
            .enumerate()
            .position(|(i, &x)| (x - i as u128) % 2 == 1)
        {
            return Err(Counterexample::new("w_n - n is odd").at("n", i).at("r", r));
        }
    }
    Ok(format!("n < {n}"))
}

fn lem_sn_1(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        let big = 1usize << r;
        let sums = seq::tilde_sums(r, n as u128);
        let mut lemma = vec![0u8; n];
        for s in sums {
            for j in 0..=big - 3 {
                if (s as usize) + j < n {
                    lemma[s as usize + j] = 1;
                }
            }
        }
        with_r(r, compare("s^(r)", s_scan(r, n)?, lemma))?;
    }
    Ok(format!("n < {n}"))
}

fn lem_s_runs(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let mut runs = 0;
    for r in r_range(b) {
        let want = (1usize << r) - 2;
        let s = s_scan(r, n)?;
        let mut i = 0;
        while i < n {
            if s[i] == 1 {
                let start = i;
                while i < n && s[i] == 1 {
                    i += 1;
                }
                if i < n && i - start != want {
                    return Err(Counterexample::new(format!("run of length {}", i - start))
                        .at("n", start)
                        .at("r", r));
                }
                runs += 1;
            } else {
                i += 1;
            }
        }
    }
    ensure(runs > 0, || Counterexample::new("no runs found"))?;
    Ok(format!("{runs} runs below {n}"))
}

fn lem_tildes(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    for r in r_range(b) {
        let m = (1usize << r) - 2;
        let s = s_scan(r, n)?;
        let lemma = (0..n).map(|i| if i % m == 0 { s[i] } else { 0 });
        with_r(
            r,
            compare(
                "s~^(r)",
                seq::s_tilde_prefix(r, n),
                lemma.collect::<Vec<u8>>(),
            ),
        )?;
    }
    Ok(format!("n < {n}"))
}

fn lem_interval(b: &Bounds) -> Outcome {
    let mut spans = Vec::new();
    for r in r_range(b) {
        for k in b.u32("k_min")..=b.u32("k_max") {
            let lo = 1usize << (r * (k + 1) - 1);
            let hi = lo * 4 / 3;
            let st = seq::s_tilde_prefix(r, hi + 1);
            if let Some(i) = (lo..=hi).find(|&i| st[i] == 1) {
                return Err(Counterexample::new(format!("s~ is 1 inside [{lo}, {hi}]"))
                    .at("n", i)
                    .at("r", r)
                    .at("k", k));
            }
            spans.push(format!("r={r},k={k}:[{lo},{hi}]"));
        }
    }
    Ok(spans.join(" "))
}

fn lem_divisibility(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let st = seq::s_tilde_prefix(2, n + 1);
    let mut witnesses = Vec::new();
    for k in 2..=b.usize("k_max") {
        match (1..=n).find(|&i| i % k == 0 && st[i] == 1) {
            Some(w) => witnesses.push(format!("{k}:{w}")),
            None => return Err(Counterexample::new(format!("no witness up to {n}")).at("k", k)),
        }
    }
    Ok(format!("witnesses {}", witnesses.join(" ")))
}

/// Maximal runs `(start, len, value)` of a 0/1 sequence.
fn runs(bits: &[u8]) -> Vec<(usize, usize, u8)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < bits.len() {
        let start = i;
        while i < bits.len() && bits[i] == bits[start] {
            i += 1;
        }
        out.push((start, i - start, bits[start]));
    }
    out
}

fn b_bits(n: u64) -> Vec<u8> {
    (0..n).map(seq::baum_sweet).collect()
}

fn q_bits(n: u64) -> Vec<u8> {
    (0..n).map(seq::q_seq).collect()
}

fn runs_b_ones(b: &Bounds) -> Outcome {
    let bits = b_bits(b.get("n"));
    let longest = runs(&bits)
        .into_iter()
        .filter(|r| r.2 == 1)
        .map(|r| r.1)
        .max()
        .unwrap_or(0);
    ensure(longest == 2, || {
        Counterexample::new(format!("longest run of 1's is {longest}"))
    })?;
    Ok(format!("longest run {longest}"))
}

fn runs_b_adjacent(b: &Bounds) -> Outcome {
    let bits = b_bits(b.get("n"));
    let mut pos = Vec::new();
    for i in 0..bits.len() - 1 {
        let pair = bits[i] == 1 && bits[i + 1] == 1;
        let want = (i as u64 + 1).is_power_of_two() && (i as u64 + 1).trailing_zeros() % 2 == 0;
        if pair != want {
            return Err(
                Counterexample::new(format!("adjacent ones {pair}, 4^m - 1 form {want}"))
                    .at("n", i),
            );
        }
        if pair {
            pos.push(i);
        }
    }
    Ok(format!("positions {pos:?}"))
}

fn runs_b_zeros(b: &Bounds) -> Outcome {
    let n = b.get("n");
    let bits = b_bits(n);
    let mut k = 0u32;
    while 6u64 << k <= n {
        let (lo, hi) = (5usize << k, 6usize << k);
        if let Some(i) = (lo..hi).find(|&i| bits[i] == 1) {
            return Err(Counterexample::new(format!("b is 1 inside [{lo}, {hi})"))
                .at("n", i)
                .at("k", k));
        }
        k += 1;
    }
    let longest = runs(&bits)
        .into_iter()
        .filter(|r| r.2 == 0)
        .map(|r| r.1)
        .max()
        .unwrap_or(0);
    ensure(longest > 1000, || {
        Counterexample::new(format!("longest 0-run is {longest}"))
    })?;
    Ok(format!("k < {k}; longest 0-run {longest}"))
}

fn runs_q_ones(b: &Bounds) -> Outcome {
    let bits = q_bits(b.get("n"));
    for (start, len, v) in runs(&bits) {
        if v == 1 && len != 2 && start + len < bits.len() {
            return Err(Counterexample::new(format!("run of 1's of length {len}")).at("n", start));
        }
    }
    Ok(String::new())
}

fn runs_q_zeros(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let bits = q_bits(n as u64);
    let all = runs(&bits);
    let mut propagated = 0;
    for &(start, len, v) in &all {
        if v != 0 || start == 0 || start + len >= n {
            continue;
        }
        let m = start - 1;
        if 4 * m + 4 * len >= n {
            continue;
        }
        if let Some(i) = (4 * m..=4 * m + 4 * len).find(|&i| bits[i] == 1) {
            return Err(Counterexample::new(format!(
                "0-run of length {len} at {start}, but q_{i} = 1"
            ))
            .at("n", m));
        }
        propagated += 1;
    }
    let longest = all
        .iter()
        .filter(|r| r.2 == 0)
        .map(|r| r.1)
        .max()
        .unwrap_or(0);
    ensure(longest > 1000, || {
        Counterexample::new(format!("longest 0-run is {longest}"))
    })?;
    Ok(format!(
        "{propagated} runs propagated; longest 0-run {longest}"
    ))
}
