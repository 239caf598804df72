//! Morphisms of free monoids, their fixed points, and the word families
//! `Lambda`, `Delta` and `H` together with their codings.
//!
//! Letters are small integers. For `Delta` words letter `i` stands for
//! `x_i`; for the six-letter morphism `nu` letters `0..6` are `a..f`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::seq;

pub type Word = Vec<u8>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("morphism is not prolongable at letter {0}")]
    NotProlongable(u8),
    #[error("letter {0} is outside the alphabet")]
    BadLetter(u8),
    #[error("empty word")]
    EmptyWord,
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("parameter r out of range: {0}")]
    BadR(u32),
    #[error("unknown word family {0:?}; expected l, l_r:<r>, h, h_blocks or delta:<r>")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, WordError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Morphism> {
        let n = images.len();
        for img in &images {
            if let Some(&bad) = img.iter().find(|&&c| c as usize >= n) {
                return Err(WordError::BadLetter(bad));
            }
        }
        Ok(Morphism { images })
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn apply(&self, w: &[u8]) -> Word {
        w.iter()
            .flat_map(|&c| self.images[c as usize].iter().copied())
            .collect()
    }

    pub fn compose(&self, inner: &Morphism) -> Morphism {
        Morphism {
            images: inner.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    pub fn power(&self, e: u32) -> Morphism {
        let id = Morphism {
            images: (0..self.images.len() as u8).map(|c| vec![c]).collect(),
        };
        (0..e).fold(id, |acc, _| self.compose(&acc))
    }

    pub fn is_prolongable(&self, seed: u8) -> bool {
        let img = &self.images[seed as usize];
        img.len() >= 2 && img[0] == seed
    }

    /// The first `len` letters of the fixed point starting with `seed`.
    pub fn fixed_point(&self, seed: u8, len: usize) -> Result<Word> {
        if seed as usize >= self.images.len() {
            return Err(WordError::BadLetter(seed));
        }
        if !self.is_prolongable(seed) {
            return Err(WordError::NotProlongable(seed));
        }
        let mut out: Word = self.images[seed as usize].clone();
        let mut next = 1;
        while out.len() < len {
            let c = out[next];
            out.extend_from_slice(&self.images[c as usize]);
            next += 1;
        }
        out.truncate(len);
        Ok(out)
    }
}

/// `0 -> 01`, `1 -> 0`.
pub fn fibonacci_morphism() -> Morphism {
    Morphism::new(vec![vec![0, 1], vec![0]]).expect("valid")
}

/// `0 -> 1`, `1 -> 10`.
pub fn fibonacci_morphism_swapped() -> Morphism {
    Morphism::new(vec![vec![1], vec![1, 0]]).expect("valid")
}

/// `Lambda_0 = 1`, `Lambda_1 = 01`, `Lambda_n = Lambda_{n-2} Lambda_{n-1}`.
pub fn lambda_words(count: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::with_capacity(count);
    for n in 0..count {
        let w = match n {
            0 => vec![1],
            1 => vec![0, 1],
            _ => [out[n - 2].as_slice(), out[n - 1].as_slice()].concat(),
        };
        out.push(w);
    }
    out
}

/// Concatenate words from `next` until at least `len` letters are available.
fn concat_until(len: usize, mut next: impl FnMut(usize) -> Word) -> Word {
    let mut out = Word::new();
    let mut i = 0;
    while out.len() < len {
        out.extend(next(i));
        i += 1;
    }
    out.truncate(len);
    out
}

pub fn lambda_concat(len: usize) -> Word {
    let mut words: Vec<Word> = Vec::new();
    concat_until(len, |n| {
        let w = match n {
            0 => vec![1],
            1 => vec![0, 1],
            _ => [words[n - 2].as_slice(), words[n - 1].as_slice()].concat(),
        };
        words.push(w.clone());
        w
    })
}

fn check_r(r: u32) -> Result<()> {
    if !(2..=64).contains(&r) {
        return Err(WordError::BadR(r));
    }
    Ok(())
}

/// `Delta_i = x_{i+1}` for `i < r - 1`, `Delta_{r-1} = x_0 x_{r-1}`,
/// `Delta_n = Delta_{n-r} Delta_{n-1}`.
pub fn delta_words(r: u32, count: usize) -> Result<Vec<Word>> {
    check_r(r)?;
    let r = r as usize;
    let mut out: Vec<Word> = Vec::with_capacity(count);
    for n in 0..count {
        let w = if n + 1 < r {
            vec![(n + 1) as u8]
        } else if n + 1 == r {
            vec![0, (r - 1) as u8]
        } else {
            [out[n - r].as_slice(), out[n - 1].as_slice()].concat()
        };
        out.push(w);
    }
    Ok(out)
}

/// `x_i -> Delta_i`.
pub fn delta_morphism(r: u32) -> Result<Morphism> {
    Morphism::new(delta_words(r, r as usize)?)
}

/// The coding `x_0 -> 0`, `x_i -> 1`.
pub fn psi(w: &[u8]) -> Word {
    w.iter().map(|&c| u8::from(c != 0)).collect()
}

pub fn delta_concat(r: u32, len: usize) -> Result<Word> {
    check_r(r)?;
    let mut words: Vec<Word> = Vec::new();
    let ru = r as usize;
    Ok(concat_until(len, |n| {
        let w = if n + 1 < ru {
            vec![(n + 1) as u8]
        } else if n + 1 == ru {
            vec![0, (ru - 1) as u8]
        } else {
            [words[n - ru].as_slice(), words[n - 1].as_slice()].concat()
        };
        words.push(w.clone());
        w
    }))
}

/// `H_0 = 0`, `H_1 = 10`, `H_{n+2} = H_n (01)^{2^n} H_{n+1}` for `n >= 0`.
pub fn h_words(count: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::with_capacity(count);
    for n in 0..count {
        let w = match n {
            0 => vec![0],
            1 => vec![1, 0],
            _ => {
                let reps = 1usize << (n - 2);
                let mut w = out[n - 2].clone();
                for _ in 0..reps {
                    w.extend_from_slice(&[0, 1]);
                }
                w.extend_from_slice(&out[n - 1]);
                w
            }
        };
        out.push(w);
    }
    out
}

pub fn h_concat(len: usize) -> Word {
    let mut count = 2;
    loop {
        let words = h_words(count);
        let total: usize = words.iter().map(Vec::len).sum();
        if total >= len {
            let mut out = words.concat();
            out.truncate(len);
            return out;
        }
        count += 1;
    }
}

/// `a -> bc`, `b -> ad`, `c -> ebc`, `d -> de`, `e -> de`, `f -> fbc`.
pub fn nu_morphism() -> Morphism {
    let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
    Morphism::new(vec![
        vec![b, c],
        vec![a, d],
        vec![e, b, c],
        vec![d, e],
        vec![d, e],
        vec![f, b, c],
    ])
    .expect("valid")
}

/// `a, c, d, f -> 0`, `b, e -> 1`.
pub fn tau(w: &[u8]) -> Word {
    w.iter().map(|&c| u8::from(c == 1 || c == 4)).collect()
}

/// `l_n mod 2` for `n < len`, from a scan of `b`.
pub fn l_parity_word(len: usize) -> Word {
    seq::generate(seq::SeqId::LSeq, len)
        .expect("valid id")
        .values
        .iter()
        .map(|v| (v % 2) as u8)
        .collect()
}

/// `h_n mod 2` for `n < len`, from a scan of `b`.
pub fn h_parity_word(len: usize) -> Word {
    seq::generate(seq::SeqId::HSeq, len)
        .expect("valid id")
        .values
        .iter()
        .map(|v| (v % 2) as u8)
        .collect()
}

/// `l^(r)_n mod 2` for `n < len`.
pub fn l_r_parity_word(r: u32, len: usize) -> Word {
    seq::generate(seq::SeqId::LSeqR(r), len)
        .expect("valid id")
        .values
        .iter()
        .map(|v| (v % 2) as u8)
        .collect()
}

pub fn count_letter(w: &[u8], letter: u8) -> usize {
    w.iter().filter(|&&c| c == letter).count()
}

/// Exact frequency of `letter` in `w`.
pub fn letter_frequency(w: &[u8], letter: u8) -> Result<BigRational> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok(BigRational::new(
        BigInt::from(count_letter(w, letter)),
        BigInt::from(w.len()),
    ))
}

/// A rational interval `[lo, hi]` of width `2^-bits` containing the unique
/// root of `x^r + x - 1` in `(0, 1)`.
pub fn root_bracket_xr(r: u32, bits: u32) -> (BigRational, BigRational) {
    let f = |x: &BigRational| -> BigRational {
        let mut p = BigRational::one();
        for _ in 0..r {
            p *= x;
        }
        p + x - BigRational::one()
    };
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..bits {
        let mid = (&lo + &hi) / &two;
        if f(&mid) < BigRational::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Bisection approximation of the root of `x^r + x - 1` in `(0, 1)`.
pub fn real_root_xr(r: u32, tol: f64) -> f64 {
    assert!(tol > 0.0, "tolerance must be positive");
    let f = |x: f64| x.powi(r as i32) + x - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// True iff `|q - g| < tol` for every `g` in `[lo, hi]`.
pub fn within(q: &BigRational, bracket: &(BigRational, BigRational), tol: &BigRational) -> bool {
    let (lo, hi) = bracket;
    let d1 = if q > lo { q - lo } else { lo - q };
    let d2 = if q > hi { q - hi } else { hi - q };
    d1 < *tol && d2 < *tol
}

/// Outcome of a word identity over a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub holds: bool,
    /// First failing index (letter position or word index).
    pub first_mismatch: Option<usize>,
    pub detail: String,
}

impl IdentityOutcome {
    fn from_eq(a: &[u8], b: &[u8], what: &str) -> IdentityOutcome {
        let n = a.len().min(b.len());
        let first_mismatch =
            (0..n)
                .find(|&i| a[i] != b[i])
                .or(if a.len() != b.len() { Some(n) } else { None });
        IdentityOutcome {
            holds: first_mismatch.is_none(),
            first_mismatch,
            detail: format!("{what}: compared {n} letters"),
        }
    }

    fn from_indices(bad: Option<usize>, what: String) -> IdentityOutcome {
        IdentityOutcome {
            holds: bad.is_none(),
            first_mismatch: bad,
            detail: what,
        }
    }
}

pub const IDENTITIES: &[&str] = &[
    "fib_word",
    "ln_mod2",
    "lambda_shift",
    "delta_morphism",
    "delta_concat",
    "delta_psi",
    "delta_lengths",
    "mu_seeds",
    "lr_word",
    "h_lengths",
    "h_word",
    "h_morphic",
];

/// `Lambda_0 Lambda_1 ...` against the Fibonacci word with 0 and 1 swapped.
pub fn check_fib_word(len: usize) -> IdentityOutcome {
    let lam = lambda_concat(len);
    let fib: Word = fibonacci_morphism()
        .fixed_point(0, len)
        .expect("prolongable")
        .iter()
        .map(|c| 1 - c)
        .collect();
    IdentityOutcome::from_eq(&lam, &fib, "Lambda concatenation vs swapped Fibonacci word")
}

/// `l_n mod 2` against `0, 1, 1 - phi_{n-2}`.
pub fn check_ln_mod2(len: usize) -> IdentityOutcome {
    let l = l_parity_word(len);
    let fib = fibonacci_morphism()
        .fixed_point(0, len.max(2))
        .expect("prolongable");
    let rhs: Word = (0..len)
        .map(|n| match n {
            0 => 0,
            1 => 1,
            _ => 1 - fib[n - 2],
        })
        .collect();
    IdentityOutcome::from_eq(&l, &rhs, "l_n mod 2 vs Fibonacci word")
}

/// `1 Lambda_{n+1} = phi'(Lambda_n) 1` for `n <= max_n`.
pub fn check_lambda_shift(max_n: usize) -> IdentityOutcome {
    let words = lambda_words(max_n + 2);
    let phi = fibonacci_morphism_swapped();
    let bad = (0..=max_n).find(|&n| {
        let mut lhs = vec![1];
        lhs.extend_from_slice(&words[n + 1]);
        let mut rhs = phi.apply(&words[n]);
        rhs.push(1);
        lhs != rhs
    });
    IdentityOutcome::from_indices(
        bad,
        format!("1 Lambda_(n+1) = phi'(Lambda_n) 1 for n <= {max_n}"),
    )
}

/// `phi(Delta_n) = Delta_{n+1}` for `n <= max_n`.
pub fn check_delta_morphism(r: u32, max_n: usize) -> Result<IdentityOutcome> {
    let words = delta_words(r, max_n + 2)?;
    let phi = delta_morphism(r)?;
    let bad = (0..=max_n).find(|&n| phi.apply(&words[n]) != words[n + 1]);
    Ok(IdentityOutcome::from_indices(
        bad,
        format!("phi(Delta_n) = Delta_(n+1), r = {r}, n <= {max_n}"),
    ))
}

/// `Delta_0 ... Delta_{n+1} = x_1 phi(Delta_0 ... Delta_n)` for `n <= max_n`.
pub fn check_delta_concat(r: u32, max_n: usize) -> Result<IdentityOutcome> {
    let words = delta_words(r, max_n + 2)?;
    let phi = delta_morphism(r)?;
    let mut prefix: Word = Vec::new();
    let mut bad = None;
    for n in 0..=max_n {
        prefix.extend_from_slice(&words[n]);
        let mut rhs = vec![1];
        rhs.extend(phi.apply(&prefix));
        let lhs: Word = words[..n + 2].concat();
        if lhs != rhs {
            bad = Some(n);
            break;
        }
    }
    Ok(IdentityOutcome::from_indices(
        bad,
        format!("Delta concatenation self-similarity, r = {r}, n <= {max_n}"),
    ))
}

/// `psi(Delta_n Delta_{n-1} ... Delta_0) 01 = psi(Delta_{n+r})` for `n <= max_n`.
pub fn check_delta_psi(r: u32, max_n: usize) -> Result<IdentityOutcome> {
    let words = delta_words(r, max_n + r as usize + 1)?;
    let mut rev: Word = Vec::new();
    let mut bad = None;
    for n in 0..=max_n {
        let mut next = words[n].clone();
        next.extend_from_slice(&rev);
        rev = next;
        let mut lhs = psi(&rev);
        lhs.extend_from_slice(&[0, 1]);
        if lhs != psi(&words[n + r as usize]) {
            bad = Some(n);
            break;
        }
    }
    Ok(IdentityOutcome::from_indices(
        bad,
        format!("psi(Delta_n...Delta_0)01 = psi(Delta_(n+r)), r = {r}, n <= {max_n}"),
    ))
}

/// `|psi(Delta_n)| = |psi(Delta_{n+1})|_1` for `n <= max_n`.
pub fn check_delta_lengths(r: u32, max_n: usize) -> Result<IdentityOutcome> {
    let words = delta_words(r, max_n + 2)?;
    let bad = (0..=max_n).find(|&n| words[n].len() != count_letter(&psi(&words[n + 1]), 1));
    Ok(IdentityOutcome::from_indices(
        bad,
        format!("|psi(Delta_n)| = |psi(Delta_(n+1))|_1, r = {r}, n <= {max_n}"),
    ))
}

/// `mu = phi^r` maps `x_i` to `x_i x_{i-1} ... x_0 x_{r-1}`, so each
/// letter is a fixed-point seed.
pub fn check_mu_seeds(r: u32) -> Result<IdentityOutcome> {
    let mu = delta_morphism(r)?.power(r);
    let last = (r - 1) as u8;
    let bad = (0..r as u8).find(|&i| {
        let mut expected: Word = (0..=i).rev().collect();
        expected.push(last);
        mu.image(i) != expected.as_slice() || !mu.is_prolongable(i)
    });
    let seeds = (0..r as u8).filter(|&i| mu.is_prolongable(i)).count();
    Ok(IdentityOutcome::from_indices(
        bad.map(usize::from).or(if seeds == r as usize {
            None
        } else {
            Some(seeds)
        }),
        format!("mu = phi^{r} images and {seeds} fixed-point seeds"),
    ))
}

/// `l^(r)_n mod 2` against `0 1 psi(Delta_0 Delta_1 ...)`.
pub fn check_lr_word(r: u32, len: usize) -> Result<IdentityOutcome> {
    let lhs = l_r_parity_word(r, len);
    let mut rhs = vec![0, 1];
    rhs.extend(psi(&delta_concat(r, len.saturating_sub(2))?));
    rhs.truncate(len);
    Ok(IdentityOutcome::from_eq(
        &lhs,
        &rhs,
        &format!("l^({r}) mod 2 vs 01 psi(Delta word)"),
    ))
}

/// `|H_0 ... H_n| = 2^{n+2} - f_{n+4}` and `|H_0 ... H_n|_1 = 2^{n+1} - f_{n+3}`.
pub fn check_h_lengths(max_n: usize) -> IdentityOutcome {
    let words = h_words(max_n + 1);
    let mut len = 0u128;
    let mut ones = 0u128;
    let mut bad = None;
    for (n, w) in words.iter().enumerate() {
        len += w.len() as u128;
        ones += count_letter(w, 1) as u128;
        let n32 = n as u32;
        if len != (1u128 << (n + 2)) - seq::fibonacci(n32 + 4)
            || ones != (1u128 << (n + 1)) - seq::fibonacci(n32 + 3)
        {
            bad = Some(n);
            break;
        }
    }
    IdentityOutcome::from_indices(bad, format!("H length and weight identities, n <= {max_n}"))
}

/// `h_n mod 2` against `H_0 H_1 H_2 ...`.
pub fn check_h_word(len: usize) -> IdentityOutcome {
    IdentityOutcome::from_eq(
        &h_parity_word(len),
        &h_concat(len),
        "h_n mod 2 vs H concatenation",
    )
}

/// `h_n mod 2` against `tau(nu^omega(f))`.
pub fn check_h_morphic(len: usize) -> IdentityOutcome {
    let fixed = nu_morphism()
        .fixed_point(5, len)
        .expect("nu is prolongable at f");
    IdentityOutcome::from_eq(
        &h_parity_word(len),
        &tau(&fixed),
        "h_n mod 2 vs tau(nu^omega(f))",
    )
}

/// Run a registered identity at its default bounds.
pub fn check_word_identity(id: &str) -> Result<IdentityOutcome> {
    let all_r =
        |f: &dyn Fn(u32) -> Result<IdentityOutcome>, rs: &[u32]| -> Result<IdentityOutcome> {
            for &r in rs {
                let o = f(r)?;
                if !o.holds {
                    return Ok(IdentityOutcome {
                        detail: format!("{} (failed at r = {r})", o.detail),
                        ..o
                    });
                }
            }
            Ok(IdentityOutcome {
                holds: true,
                first_mismatch: None,
                detail: format!("holds for r in {rs:?}"),
            })
        };
    match id {
        "fib_word" => Ok(check_fib_word(10_000)),
        "ln_mod2" => Ok(check_ln_mod2(10_000)),
        "lambda_shift" => Ok(check_lambda_shift(25)),
        "delta_morphism" => all_r(&|r| check_delta_morphism(r, 25), &[2, 3, 4]),
        "delta_concat" => all_r(&|r| check_delta_concat(r, 20), &[2, 3, 4]),
        "delta_psi" => all_r(&|r| check_delta_psi(r, 20), &[2, 3, 4]),
        "delta_lengths" => all_r(&|r| check_delta_lengths(r, 25), &[2, 3, 4]),
        "mu_seeds" => all_r(&check_mu_seeds, &[2, 3, 4, 5]),
        "lr_word" => all_r(&|r| check_lr_word(r, 10_000), &[2, 3, 4]),
        "h_lengths" => Ok(check_h_lengths(20)),
        "h_word" => Ok(check_h_word(10_000)),
        "h_morphic" => Ok(check_h_morphic(10_000)),
        _ => Err(WordError::UnknownIdentity(id.to_string())),
    }
}

/// Frequency of 1 in a finite piece of a word family, with its limit.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyEstimate {
    pub family: String,
    pub n: usize,
    pub ones: usize,
    pub len: usize,
    pub limit: f64,
}

impl FrequencyEstimate {
    pub fn value(&self) -> BigRational {
        BigRational::new(BigInt::from(self.ones), BigInt::from(self.len))
    }
}

impl std::fmt::Display for FrequencyEstimate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} n={}: {}/{} = {:.6} (limit {:.6})",
            self.family,
            self.n,
            self.ones,
            self.len,
            self.ones as f64 / self.len as f64,
            self.limit
        )
    }
}

/// Families: `l` and `l_r:<r>` (first `n` letters of `l^(r)_n mod 2`),
/// `h` (first `n` letters of `h_n mod 2`), `h_blocks` (`H_0 ... H_n`)
/// and `delta:<r>` (`psi(Delta_n)`).
pub fn frequency_estimate(family: &str, n: usize) -> Result<FrequencyEstimate> {
    let unknown = || WordError::UnknownFamily(family.to_string());
    let (name, r) = match family.split_once(':') {
        Some((name, r)) => (name, Some(r.parse::<u32>().map_err(|_| unknown())?)),
        None => (family, None),
    };
    if let Some(r) = r {
        if !(2..=seq::MAX_R).contains(&r) {
            return Err(WordError::BadR(r));
        }
    }
    let root = |r: u32| real_root_xr(r, 1e-12);
    let (w, limit) = match (name, r) {
        ("l", None) => (l_parity_word(n), root(2)),
        ("l_r", Some(r)) => (l_r_parity_word(r, n), root(r)),
        ("h", None) => (h_parity_word(n), 0.5),
        ("h_blocks", None) => (h_words(n + 1).concat(), 0.5),
        ("delta", Some(r)) => {
            let d = delta_words(r, n + 1)?;
            (psi(&d[n]), root(r))
        }
        _ => return Err(unknown()),
    };
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok(FrequencyEstimate {
        family: family.to_string(),
        n,
        ones: count_letter(&w, 1),
        len: w.len(),
        limit,
    })
}

/// Render a word: binary and `a..f` words contiguous, `Delta` words as
/// space-separated `x_i`.
pub fn render_binary(w: &[u8]) -> String {
    w.iter().map(|c| char::from(b'0' + c)).collect()
}

pub fn render_letters(w: &[u8]) -> String {
    w.iter().map(|c| char::from(b'a' + c)).collect()
}

pub fn render_x(w: &[u8]) -> String {
    let parts: Vec<String> = w.iter().map(|c| format!("x{c}")).collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Word {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn fixed_point_examples() {
        let phi = fibonacci_morphism();
        assert_eq!(
            render_binary(&phi.fixed_point(0, 15).unwrap()),
            "010010100100101"
        );
        let m = Morphism::new(vec![vec![0, 1], vec![1]]).unwrap();
        assert_eq!(m.fixed_point(0, 4).unwrap(), vec![0, 1, 1, 1]);
        assert_eq!(
            render_letters(&nu_morphism().fixed_point(5, 6).unwrap()),
            "fbcade"
        );
        assert_eq!(phi.fixed_point(1, 4), Err(WordError::NotProlongable(1)));
    }

    #[test]
    fn concatenations() {
        assert_eq!(render_binary(&lambda_concat(8)), "10110101");
        assert_eq!(render_binary(&h_concat(8)), "01000110");
        assert_eq!(render_x(&delta_concat(2, 4).unwrap()), "x1 x0 x1 x1");
        assert_eq!(
            delta_words(3, 4).unwrap(),
            vec![vec![1], vec![2], vec![0, 2], vec![1, 0, 2]]
        );
    }

    #[test]
    fn identities_hold() {
        for id in IDENTITIES {
            let o = check_word_identity(id).unwrap();
            assert!(o.holds, "{id}: {o:?}");
        }
        assert!(check_word_identity("nope").is_err());
    }

    #[test]
    fn lambda_shift_small() {
        let w = lambda_words(6);
        let mut lhs = vec![1];
        lhs.extend_from_slice(&w[5]);
        let mut rhs = fibonacci_morphism_swapped().apply(&w[4]);
        rhs.push(1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn frequencies() {
        assert_eq!(
            letter_frequency(&bits("0101"), 0).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(letter_frequency(&[], 0), Err(WordError::EmptyWord));
        let golden = root_bracket_xr(2, 40);
        let l = l_parity_word(100_000);
        let tol = BigRational::new(5.into(), 1000.into());
        assert!(within(&letter_frequency(&l, 1).unwrap(), &golden, &tol));
    }

    #[test]
    fn roots() {
        let g = real_root_xr(2, 1e-12);
        assert!((g - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-11);
        assert!((real_root_xr(3, 1e-9) - 0.6823).abs() < 1e-4);
        let (lo, hi) = root_bracket_xr(3, 30);
        assert!(lo < hi);
    }

    #[test]
    fn delta_ratio_approaches_root() {
        let w = &delta_words(3, 21).unwrap()[20];
        let p = psi(w);
        let q = letter_frequency(&p, 1).unwrap();
        let tol = BigRational::new(1.into(), 1000.into());
        assert!(within(&q, &root_bracket_xr(3, 40), &tol));
    }
}
