use num_bigint::BigInt;
use num_rational::BigRational;

use super::{compare, ensure, Bounds, CheckDef, Counterexample, Expected, Outcome};
use crate::automata::{self, baum_sweet_r_automaton, fig1, fig2, fig3, fig4, Dfao};
use crate::kernel::{kernel_empirical, kernel_exact};
use crate::linrep::{self, Guess, LinRep};
use crate::seq::{self, SeqId};
use crate::words::{self, IdentityOutcome};

pub(super) fn checks() -> Vec<CheckDef> {
    use Expected::Pass;
    vec![
        CheckDef {
            id: "automata.fig1",
            description: "the 3-state automaton of b agrees with b",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 1_000_000)],
            run: fig1_b,
        },
        CheckDef {
            id: "automata.fig2_fig3",
            description: "the 5-state base-2 and 3-state base-4 automata of q agree with q",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 1_000_000)],
            run: fig2_fig3_q,
        },
        CheckDef {
            id: "automata.fig4",
            description: "the base-2^r automaton of q^(r) agrees with q^(r)",
            expected: Pass,
            quick: &[("n", 10_000), ("r_min", 2), ("r_max", 4)],
            full: &[("n", 100_000), ("r_min", 2), ("r_max", 4)],
            run: fig4_qr,
        },
        CheckDef {
            id: "automata.q_digits",
            description: "q^(r)_n = 1 iff the base-2^r digits of n are 0/1 except the least significant, which is 1 or 2",
            expected: Pass,
            quick: &[("n", 10_000), ("r_min", 2), ("r_max", 4)],
            full: &[("n", 100_000), ("r_min", 2), ("r_max", 4)],
            run: q_digits,
        },
        CheckDef {
            id: "automata.baum_sweet_r",
            description: "the (r+1)-state automaton of b^(r) agrees with b^(r)",
            expected: Pass,
            quick: &[("n", 10_000), ("r_min", 2), ("r_max", 5)],
            full: &[("n", 100_000), ("r_min", 2), ("r_max", 5)],
            run: baum_sweet_r_dfao,
        },
        CheckDef {
            id: "automata.rebase",
            description: "fig2 rebased to base 4 agrees with fig3; rebasing fig1 and rebasing by 1 preserve values",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 100_000)],
            run: rebase,
        },
        CheckDef {
            id: "automata.minimize",
            description: "minimization keeps 3 and 5 states for fig1 and fig2, merges duplicates, is idempotent and preserves values",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 100_000)],
            run: minimize,
        },
        CheckDef {
            id: "automata.digit_order",
            description: "least-significant-first reading matches b_2 = 0 and q_6 = 1; most-significant-first does not",
            expected: Pass,
            quick: &[],
            full: &[],
            run: digit_order,
        },
        CheckDef {
            id: "kernel.exact",
            description: "exact kernel sizes 3 (b), 5 (q) and r + 1 (b^(r))",
            expected: Pass,
            quick: &[("r_min", 2), ("r_max", 5)],
            full: &[("r_min", 2), ("r_max", 5)],
            run: kernel_sizes,
        },
        CheckDef {
            id: "kernel.empirical",
            description: "prefix kernels at depth 4 and bound 256 give 3 and 5 classes, never fewer than the exact kernel",
            expected: Pass,
            quick: &[("depth", 4), ("bound", 256), ("r_min", 2), ("r_max", 4)],
            full: &[("depth", 4), ("bound", 256), ("r_min", 2), ("r_max", 5)],
            run: kernel_prefix,
        },
        CheckDef {
            id: "words.fib_word",
            description: "Lambda_0 Lambda_1 ... is the Fibonacci word with 0 and 1 interchanged",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 10_000)],
            run: fib_word,
        },
        CheckDef {
            id: "words.ln_mod2",
            description: "l_n mod 2 is 0, 1, then 1 - phi_{n-2}",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 10_000)],
            run: ln_mod2,
        },
        CheckDef {
            id: "words.lambda_shift",
            description: "1 Lambda_{n+1} = phi'(Lambda_n) 1",
            expected: Pass,
            quick: &[("n", 20)],
            full: &[("n", 25)],
            run: lambda_shift,
        },
        CheckDef {
            id: "words.delta_morphism",
            description: "phi(Delta_n) = Delta_{n+1}",
            expected: Pass,
            quick: &[("n", 20), ("r_min", 2), ("r_max", 4)],
            full: &[("n", 25), ("r_min", 2), ("r_max", 4)],
            run: delta_morphism,
        },
        CheckDef {
            id: "words.delta_concat",
            description: "Delta_0 Delta_1 ... = x_1 phi(Delta_0 Delta_1 ...)",
            expected: Pass,
            quick: &[("n", 20), ("r_min", 2), ("r_max", 4)],
            full: &[("n", 20), ("r_min", 2), ("r_max", 4)],
            run: delta_concat,
        },
        CheckDef {
            id: "words.delta_psi",
            description: "psi(Delta_n ... Delta_0) 01 = psi(Delta_{n+r})",
            expected: Pass,
            quick: &[("n", 20), ("r_min", 2), ("r_max", 4)],
            full: &[("n", 20), ("r_min", 2), ("r_max", 4)],
            run: delta_psi,
        },
        CheckDef {
            id: "words.delta_lengths",
            description: "|psi(Delta_n)| = |psi(Delta_{n+1})|_1",
            expected: Pass,
            quick: &[("n", 20), ("r_min", 2), ("r_max", 4)],
            full: &[("n", 25), ("r_min", 2), ("r_max", 4)],
            run: delta_lengths,
        },
        CheckDef {
            id: "words.mu_seeds",
            description: "mu = phi^r maps x_i to x_i ... x_0 x_{r-1}, so it has r fixed-point seeds",
            expected: Pass,
            quick: &[("r_min", 2), ("r_max", 5)],
            full: &[("r_min", 2), ("r_max", 6)],
            run: mu_seeds,
        },
        CheckDef {
            id: "words.lr_word",
            description: "l^(r)_n mod 2 is 0 1 psi(Delta_0 Delta_1 ...)",
            expected: Pass,
            quick: &[("n", 10_000), ("r_min", 2), ("r_max", 4)],
            full: &[("n", 10_000), ("r_min", 2), ("r_max", 4)],
            run: lr_word,
        },
        CheckDef {
            id: "words.h_lengths",
            description: "|H_0 ... H_n| = 2^(n+2) - f_{n+4} and |H_0 ... H_n|_1 = 2^(n+1) - f_{n+3}",
            expected: Pass,
            quick: &[("n", 20)],
            full: &[("n", 20)],
            run: h_lengths,
        },
        CheckDef {
            id: "words.h_word",
            description: "h_n mod 2 equals H_0 H_1 H_2 ...",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 10_000)],
            run: h_word,
        },
        CheckDef {
            id: "words.h_morphic",
            description: "h_n mod 2 equals tau(nu^omega(f))",
            expected: Pass,
            quick: &[("n", 10_000)],
            full: &[("n", 10_000)],
            run: h_morphic,
        },
        CheckDef {
            id: "freq.l_word",
            description: "frequency of 1 in l_n mod 2 is within 0.005 of (sqrt 5 - 1)/2",
            expected: Pass,
            quick: &[("n", 100_000)],
            full: &[("n", 100_000)],
            run: freq_l_word,
        },
        CheckDef {
            id: "freq.delta",
            description: "|psi(Delta_n)|_1 / |psi(Delta_n)| is within 10^-3 of the root of x^r + x - 1",
            expected: Pass,
            quick: &[("n", 20), ("r_min", 2), ("r_max", 3)],
            full: &[("n", 20), ("r_min", 2), ("r_max", 3)],
            run: freq_delta,
        },
        CheckDef {
            id: "freq.h",
            description: "|H_0 ... H_n|_1 / |H_0 ... H_n| is within 0.01 of 1/2; running averages of h mod 2 reported",
            expected: Pass,
            quick: &[("n", 20)],
            full: &[("n", 20)],
            run: freq_h,
        },
        CheckDef {
            id: "linrep.u",
            description: "u has a 2-regular representation of dimension <= 2 satisfying u_{2n} = 4u_n - 3, u_{2n+1} = 4u_n - 2",
            expected: Pass,
            quick: &[("len", 1 << 10)],
            full: &[("len", 1 << 12)],
            run: linrep_u,
        },
        CheckDef {
            id: "linrep.m",
            description: "m has a 2-regular representation of dimension <= 2",
            expected: Pass,
            quick: &[("len", 1 << 10)],
            full: &[("len", 1 << 12)],
            run: linrep_m,
        },
        CheckDef {
            id: "linrep.a",
            description: "a has a 2-regular representation of dimension <= 8 satisfying all five recurrences",
            expected: Pass,
            quick: &[("len", 1 << 10)],
            full: &[("len", 1 << 12)],
            run: linrep_a,
        },
        CheckDef {
            id: "rank.l",
            description: "kernel rank profile of l strictly increases through depth 6 (evidence only)",
            expected: Pass,
            quick: &[("len", 1 << 13), ("depth", 6)],
            full: &[("len", 1 << 16), ("depth", 6)],
            run: rank_l,
        },
        CheckDef {
            id: "rank.v2",
            description: "kernel rank profile of v strictly increases through depth 6 and exceeds 8 (evidence only)",
            expected: Pass,
            quick: &[("len", 1 << 13), ("depth", 6)],
            full: &[("len", 1 << 16), ("depth", 6)],
            run: rank_v2,
        },
    ]
}

fn r_range(b: &Bounds) -> std::ops::RangeInclusive<u32> {
    b.u32("r_min")..=b.u32("r_max")
}

fn with_r<T>(r: u32, res: Result<T, Counterexample>) -> Result<T, Counterexample> {
    res.map_err(|ce| ce.at("r", r))
}

fn agree(a: &Dfao, what: &str, n: u64, f: impl Fn(u64) -> u8) -> Result<(), Counterexample> {
    match (0..n).find(|&i| a.eval(u128::from(i)) != u32::from(f(i))) {
        None => Ok(()),
        Some(i) => Err(Counterexample::new(format!(
            "{what}: automaton gives {}, sequence {}",
            a.eval(u128::from(i)),
            f(i)
        ))
        .at("n", i)),
    }
}

fn fig1_b(b: &Bounds) -> Outcome {
    let n = b.get("n");
    agree(&fig1(), "fig1", n, seq::baum_sweet)?;
    Ok(format!("n < {n}"))
}

fn fig2_fig3_q(b: &Bounds) -> Outcome {
    let n = b.get("n");
    agree(&fig2(), "fig2", n, seq::q_seq)?;
    agree(&fig3(), "fig3", n, seq::q_seq)?;
    Ok(format!("n < {n}"))
}

fn fig4_qr(b: &Bounds) -> Outcome {
    let n = b.get("n");
    for r in r_range(b) {
        let a = fig4(r).map_err(|e| Counterexample::new(e.to_string()).at("r", r))?;
        with_r(r, agree(&a, "fig4", n, |i| seq::q_seq_r(r, i)))?;
    }
    let same = fig4(2).map(|a| a == fig3()).unwrap_or(false);
    ensure(same, || Counterexample::new("fig4(2) differs from fig3"))?;
    Ok(format!("n < {n}"))
}

fn q_digits(b: &Bounds) -> Outcome {
    let n = b.get("n");
    for r in r_range(b) {
        let a = fig4(r).map_err(|e| Counterexample::new(e.to_string()).at("r", r))?;
        with_r(
            r,
            agree(&a, "digit characterization", n, |i| {
                seq::q_seq_r_digits(r, i)
            }),
        )?;
    }
    Ok(format!("n < {n}"))
}

fn baum_sweet_r_dfao(b: &Bounds) -> Outcome {
    let n = b.get("n");
    for r in r_range(b) {
        let a =
            baum_sweet_r_automaton(r).map_err(|e| Counterexample::new(e.to_string()).at("r", r))?;
        with_r(
            r,
            agree(&a, "b^(r) automaton", n, |i| seq::baum_sweet_r(r, i)),
        )?;
    }
    Ok(format!("n < {n}"))
}

fn disagreement(a: &Dfao, b: &Dfao, n: u64, what: &str) -> Result<(), Counterexample> {
    match automata::first_disagreement(a, b, u128::from(n)) {
        None => Ok(()),
        Some(i) => Err(Counterexample::new(format!("{what} disagree")).at("n", i)),
    }
}

fn rebase(b: &Bounds) -> Outcome {
    let n = b.get("n");
    let err = |e: automata::AutomatonError| Counterexample::new(e.to_string());
    disagreement(
        &fig2().rebase(2).map_err(err)?,
        &fig3(),
        n,
        "rebase(fig2, 2) and fig3",
    )?;
    disagreement(
        &fig1().rebase(2).map_err(err)?,
        &fig1(),
        n,
        "rebase(fig1, 2) and fig1",
    )?;
    for a in [fig1(), fig2(), fig3()] {
        ensure(a.rebase(1).map_err(err)? == a, || {
            Counterexample::new("rebase by 1 changed the automaton")
        })?;
    }
    Ok(format!("n < {n}"))
}

fn minimize(b: &Bounds) -> Outcome {
    let n = b.get("n");
    let m1 = fig1().minimize();
    let m2 = fig2().minimize();
    ensure(m1.state_count() == 3 && m2.state_count() == 5, || {
        Counterexample::new(format!(
            "state counts {} and {}",
            m1.state_count(),
            m2.state_count()
        ))
    })?;
    let dup = Dfao::from_edges(
        2,
        vec![1, 1, 0],
        0,
        &[
            (0, &[0], 1),
            (0, &[1], 0),
            (1, &[0], 0),
            (1, &[1], 1),
            (2, &[0, 1], 2),
        ],
    )
    .map_err(|e| Counterexample::new(e.to_string()))?;
    ensure(dup.minimize().state_count() == 1, || {
        Counterexample::new("duplicate states not merged")
    })?;
    for (name, a) in [("fig1", fig1()), ("fig2", fig2()), ("fig3", fig3())] {
        let m = a.minimize();
        ensure(m.minimize() == m, || {
            Counterexample::new(format!("{name}: minimization not idempotent"))
        })?;
        disagreement(&a, &m, n, name)?;
    }
    Ok(format!("n < {n}"))
}

fn eval_msb(a: &Dfao, n: u128) -> u32 {
    let mut digits = automata::digits_lsb(n, a.base());
    digits.reverse();
    a.output(a.run(a.init(), &digits))
}

fn digit_order(_: &Bounds) -> Outcome {
    ensure(fig1().eval(2) == 0 && fig3().eval(6) == 1, || {
        Counterexample::new("LSB-first reading contradicts b_2 or q_6")
    })?;
    let msb_b =
        (0..64u64).all(|n| eval_msb(&fig1(), u128::from(n)) == u32::from(seq::baum_sweet(n)));
    let msb_q = (0..64u64).all(|n| eval_msb(&fig3(), u128::from(n)) == u32::from(seq::q_seq(n)));
    ensure(!msb_b && !msb_q, || {
        Counterexample::new("MSB-first reading also matches")
    })?;
    Ok("LSB-first".to_string())
}

fn kernel_sizes(b: &Bounds) -> Outcome {
    let size = |a: &Dfao| {
        kernel_exact(a)
            .map(|k| k.len())
            .map_err(|e| Counterexample::new(e.to_string()))
    };
    ensure(size(&fig1())? == 3, || {
        Counterexample::new("kernel of b does not have 3 elements")
    })?;
    ensure(size(&fig2())? == 5, || {
        Counterexample::new("kernel of q does not have 5 elements")
    })?;
    for r in r_range(b) {
        let a = baum_sweet_r_automaton(r).map_err(|e| Counterexample::new(e.to_string()))?;
        let k = size(&a)?;
        ensure(k == r as usize + 1, || {
            Counterexample::new(format!("kernel of b^(r) has {k} elements")).at("r", r)
        })?;
    }
    Ok(String::new())
}

fn kernel_prefix(b: &Bounds) -> Outcome {
    let depth = b.u32("depth");
    let bound = b.usize("bound");
    let len = (1usize << depth) * bound;
    let classes = |a: &Dfao| -> Result<(usize, usize), Counterexample> {
        let prefix: Vec<u128> = (0..len as u128).map(|n| u128::from(a.eval(n))).collect();
        let e = kernel_empirical(&prefix, a.base(), depth, bound)
            .map_err(|e| Counterexample::new(e.to_string()))?;
        let x = kernel_exact(a).map_err(|e| Counterexample::new(e.to_string()))?;
        Ok((e.classes, x.len()))
    };
    let (eb, _) = classes(&fig1())?;
    let (eq, _) = classes(&fig2())?;
    ensure(eb == 3 && eq == 5, || {
        Counterexample::new(format!("classes {eb} and {eq}"))
    })?;
    for r in r_range(b) {
        let a = baum_sweet_r_automaton(r).map_err(|e| Counterexample::new(e.to_string()))?;
        let (e, x) = classes(&a)?;
        ensure(e >= x.min(1 + (1 << depth)), || {
            Counterexample::new(format!("{e} classes below exact {x}")).at("r", r)
        })?;
    }
    Ok(format!("depth {depth}, bound {bound}"))
}

fn identity(o: IdentityOutcome) -> Outcome {
    if o.holds {
        Ok(o.detail)
    } else {
        let mut ce = Counterexample::new(o.detail);
        if let Some(i) = o.first_mismatch {
            ce = ce.at("n", i);
        }
        Err(ce)
    }
}

fn per_r(b: &Bounds, f: impl Fn(u32) -> Result<IdentityOutcome, words::WordError>) -> Outcome {
    for r in r_range(b) {
        let o = f(r).map_err(|e| Counterexample::new(e.to_string()).at("r", r))?;
        with_r(r, identity(o))?;
    }
    Ok(format!("r in {}..={}", b.get("r_min"), b.get("r_max")))
}

fn fib_word(b: &Bounds) -> Outcome {
    identity(words::check_fib_word(b.usize("n")))
}

fn ln_mod2(b: &Bounds) -> Outcome {
    identity(words::check_ln_mod2(b.usize("n")))
}

fn lambda_shift(b: &Bounds) -> Outcome {
    identity(words::check_lambda_shift(b.usize("n")))
}

fn delta_morphism(b: &Bounds) -> Outcome {
    per_r(b, |r| words::check_delta_morphism(r, b.usize("n")))
}

fn delta_concat(b: &Bounds) -> Outcome {
    per_r(b, |r| words::check_delta_concat(r, b.usize("n")))
}

fn delta_psi(b: &Bounds) -> Outcome {
    per_r(b, |r| words::check_delta_psi(r, b.usize("n")))
}

fn delta_lengths(b: &Bounds) -> Outcome {
    per_r(b, |r| words::check_delta_lengths(r, b.usize("n")))
}

fn mu_seeds(b: &Bounds) -> Outcome {
    per_r(b, words::check_mu_seeds)
}

fn lr_word(b: &Bounds) -> Outcome {
    per_r(b, |r| words::check_lr_word(r, b.usize("n")))
}

fn h_lengths(b: &Bounds) -> Outcome {
    identity(words::check_h_lengths(b.usize("n")))
}

fn h_word(b: &Bounds) -> Outcome {
    identity(words::check_h_word(b.usize("n")))
}

fn h_morphic(b: &Bounds) -> Outcome {
    identity(words::check_h_morphic(b.usize("n")))
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn decimal(q: &BigRational) -> String {
    let scaled = q * BigRational::from_integer(BigInt::from(1_000_000));
    let v = scaled.round().to_integer();
    let s = format!("{:07}", v);
    format!("{}.{}", &s[..s.len() - 6], &s[s.len() - 6..])
}

fn freq_l_word(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let w = words::l_parity_word(n);
    let f = words::letter_frequency(&w, 1).map_err(|e| Counterexample::new(e.to_string()))?;
    let golden = words::root_bracket_xr(2, 48);
    ensure(words::within(&f, &golden, &ratio(5, 1000)), || {
        Counterexample::new(format!("frequency {} not within 0.005", decimal(&f)))
    })?;
    Ok(format!("frequency {}", decimal(&f)))
}

fn freq_delta(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let mut notes = Vec::new();
    for r in r_range(b) {
        let words_r =
            words::delta_words(r, n + 1).map_err(|e| Counterexample::new(e.to_string()))?;
        let p = words::psi(&words_r[n]);
        let f = words::letter_frequency(&p, 1).map_err(|e| Counterexample::new(e.to_string()))?;
        let root = words::root_bracket_xr(r, 48);
        ensure(words::within(&f, &root, &ratio(1, 1000)), || {
            Counterexample::new(format!(
                "ratio {} not within 10^-3 of {:.6}",
                decimal(&f),
                words::real_root_xr(r, 1e-12)
            ))
            .at("r", r)
        })?;
        notes.push(format!("r={r}: {}", decimal(&f)));
    }
    Ok(notes.join(" "))
}

fn freq_h(b: &Bounds) -> Outcome {
    let n = b.usize("n");
    let hw = words::h_words(n + 1);
    let len: usize = hw.iter().map(Vec::len).sum();
    let ones: usize = hw.iter().map(|w| words::count_letter(w, 1)).sum();
    let f = ratio(ones as i64, len as i64);
    let half = ratio(1, 2);
    let tol = ratio(1, 100);
    ensure(words::within(&f, &(half.clone(), half), &tol), || {
        Counterexample::new(format!("ratio {} not within 0.01 of 1/2", decimal(&f)))
    })?;
    let h = words::h_parity_word(100_000);
    let avgs: Vec<String> = [1_000usize, 10_000, 100_000]
        .iter()
        .map(|&m| decimal(&words::letter_frequency(&h[..m], 1).expect("nonempty")))
        .collect();
    Ok(format!(
        "ratio {}; running averages {}",
        decimal(&f),
        avgs.join(" ")
    ))
}

fn guess(values: &[u128], max_dim: usize) -> Result<LinRep, Counterexample> {
    match linrep::linrep_guess(values, 2, max_dim)
        .map_err(|e| Counterexample::new(e.to_string()))?
    {
        Guess::Found(rep) => Ok(rep),
        Guess::Failed { rank_profile } => Err(Counterexample::new(format!(
            "no representation; rank profile {rank_profile:?}"
        ))),
    }
}

/// Evaluate a representation on `0..len` as integers.
fn eval_ints(rep: &LinRep, len: usize) -> Result<Vec<i128>, Counterexample> {
    rep.eval_prefix(len)
        .iter()
        .enumerate()
        .map(|(n, q)| {
            use num_traits::ToPrimitive;
            if q.is_integer() {
                q.to_integer()
                    .to_i128()
                    .ok_or_else(|| Counterexample::new("value overflows").at("n", n))
            } else {
                Err(Counterexample::new(format!("non-integer value {q}")).at("n", n))
            }
        })
        .collect()
}

fn linrep_u(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let u: Vec<u128> = (0..len as u64).map(seq::u_seq).collect();
    let rep = guess(&u, 2)?;
    let v = eval_ints(&rep, 2 * len)?;
    for n in 0..len {
        for (idx, want) in [(2 * n, 4 * v[n] - 3), (2 * n + 1, 4 * v[n] - 2)] {
            if v[idx] != want {
                return Err(Counterexample::new(format!(
                    "representation gives u_{idx} = {}, relation {want}",
                    v[idx]
                ))
                .at("n", n));
            }
        }
    }
    let oracle: Vec<i128> = (0..2 * len as u64)
        .map(|n| seq::moser_de_bruijn(n) as i128 + 1)
        .collect();
    compare("representation vs m + 1", v, oracle)?;
    Ok(format!("dimension {}", rep.dim()))
}

fn linrep_m(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let m = seq::moser_enumerate(2, 2 * len);
    let rep = guess(&m[..len], 2)?;
    let v = eval_ints(&rep, 2 * len)?;
    compare(
        "representation vs enumeration",
        v,
        m.iter().map(|&x| x as i128),
    )?;
    Ok(format!("dimension {}", rep.dim()))
}

fn linrep_a(b: &Bounds) -> Outcome {
    let len = b.usize("len");
    let a = seq::a_prefix_rec(len);
    let rep = guess(&a, 8)?;
    let v = eval_ints(&rep, 2 * len)?;
    for n in 1..len / 4 {
        let rel = [
            (4 * n, v[4 * n - 1] + 1),
            (4 * n + 1, v[4 * n - 1] + 2),
            (4 * n + 2, v[4 * n - 1] + 3),
        ];
        for (idx, want) in rel {
            if v[idx] != want {
                return Err(Counterexample::new(format!(
                    "representation gives a_{idx} = {}, relation {want}",
                    v[idx]
                ))
                .at("n", n));
            }
        }
    }
    for n in 0..len / 4 {
        for (idx, want) in [(8 * n + 3, v[8 * n] + 7), (8 * n + 7, 4 * v[4 * n + 3] + 3)] {
            if idx < v.len() && v[idx] != want {
                return Err(Counterexample::new(format!(
                    "representation gives a_{idx} = {}, relation {want}",
                    v[idx]
                ))
                .at("n", n));
            }
        }
    }
    let oracle: Vec<i128> = seq::char_positions(&seq::c_prefix(1 << 14), 1, true)
        .into_iter()
        .map(|x| x as i128)
        .collect();
    compare(
        "representation vs reversion of T",
        v[..oracle.len().min(v.len())].iter().copied(),
        oracle.into_iter().take(v.len()),
    )?;
    Ok(format!("dimension {}", rep.dim()))
}

fn strictly_increasing(id: SeqId, b: &Bounds, floor: usize) -> Outcome {
    let len = b.usize("len");
    let depth = b.u32("depth");
    let values = seq::generate(id, len)
        .map_err(|e| Counterexample::new(e.to_string()))?
        .values;
    let depths: Vec<u32> = (0..=depth).collect();
    let profile = linrep::rank_profile(&values, 2, &depths)
        .map_err(|e| Counterexample::new(e.to_string()))?;
    if let Some(i) = profile.windows(2).position(|w| w[0] >= w[1]) {
        return Err(
            Counterexample::new(format!("rank profile {profile:?} stalls")).at("depth", i + 1),
        );
    }
    let last = *profile.last().unwrap();
    ensure(last > floor, || {
        Counterexample::new(format!("rank profile {profile:?} ends at {last}"))
    })?;
    Ok(format!("rank profile {profile:?} (heuristic)"))
}

fn rank_l(b: &Bounds) -> Outcome {
    strictly_increasing(SeqId::LSeq, b, 0)
}

fn rank_v2(b: &Bounds) -> Outcome {
    strictly_increasing(SeqId::VSeqR(2), b, 8)
}
