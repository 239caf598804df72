//! `k`-regular linear representations over the rationals.
//!
//! A representation `(lambda, M_0..M_{k-1}, gamma)` evaluates at `n` as
//! `lambda * M_{d_0} * M_{d_1} * ... * M_{d_{m-1}} * gamma` where `d_0` is
//! the least significant base-`k` digit of `n`, the same order the
//! automata use. With a basis `f_1 = a, f_2, ..., f_d` of kernel
//! subsequences and `f_t(kn + d) = sum_s M_d[t][s] f_s(n)`, this gives
//! `lambda = e_1` and `gamma = (f_s(0))_s`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fps::fmt_rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinRepError {
    #[error("prefix of length {have} is too short, need at least {need}")]
    InsufficientPrefix { have: usize, need: usize },
    #[error("base must be at least 2")]
    BadBase,
    #[error("no depths requested")]
    NoDepths,
}

pub type Result<T> = std::result::Result<T, LinRepError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRep {
    pub k: u32,
    pub lambda: Vec<BigRational>,
    pub mats: Vec<Vec<Vec<BigRational>>>,
    pub gamma: Vec<BigRational>,
    /// Kernel index `(i, j)` of each basis sequence.
    pub basis: Vec<(u32, u128)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinRepJson {
    pub k: u32,
    pub dim: usize,
    pub lambda: Vec<String>,
    pub mats: Vec<Vec<Vec<String>>>,
    pub gamma: Vec<String>,
}

fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    it.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

fn scaled(q: &BigRational, by: &BigInt) -> BigInt {
    (q * BigRational::from_integer(by.clone())).to_integer()
}

impl LinRep {
    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    pub fn eval(&self, n: u128) -> BigRational {
        let k = u128::from(self.k);
        let mut row = self.lambda.clone();
        let mut n = n;
        while n > 0 {
            let m = &self.mats[(n % k) as usize];
            row = (0..self.dim())
                .map(|s| {
                    let mut acc = BigRational::zero();
                    for (t, r) in row.iter().enumerate() {
                        if !r.is_zero() && !m[t][s].is_zero() {
                            acc += r * &m[t][s];
                        }
                    }
                    acc
                })
                .collect();
            n /= k;
        }
        row.iter().zip(&self.gamma).map(|(a, b)| a * b).sum()
    }

    /// Values at `0..len`, computed exactly with integer arithmetic after
    /// clearing denominators.
    pub fn eval_prefix(&self, len: usize) -> Vec<BigRational> {
        let d = self.dim();
        let k = self.k as usize;
        let den_m = lcm_of_denominators(self.mats.iter().flatten().flatten());
        let den_g = lcm_of_denominators(self.gamma.iter());
        let den_l = lcm_of_denominators(self.lambda.iter());
        let mats: Vec<Vec<Vec<BigInt>>> = self
            .mats
            .iter()
            .map(|m| {
                m.iter()
                    .map(|row| row.iter().map(|q| scaled(q, &den_m)).collect())
                    .collect()
            })
            .collect();
        let lambda: Vec<BigInt> = self.lambda.iter().map(|q| scaled(q, &den_l)).collect();
        let mut h: Vec<Vec<BigInt>> = Vec::with_capacity(len);
        let mut out = Vec::with_capacity(len);
        let mut den_pow = vec![&den_l * &den_g];
        for n in 0..len {
            let (v, digits) = if n == 0 {
                (
                    self.gamma
                        .iter()
                        .map(|q| scaled(q, &den_g))
                        .collect::<Vec<_>>(),
                    0,
                )
            } else {
                let m = &mats[n % k];
                let prev = &h[n / k];
                let v = (0..d)
                    .map(|t| {
                        let mut acc = BigInt::zero();
                        for (s, p) in prev.iter().enumerate() {
                            if !m[t][s].is_zero() && !p.is_zero() {
                                acc += &m[t][s] * p;
                            }
                        }
                        acc
                    })
                    .collect();
                let mut digits = 0;
                let mut x = n;
                while x > 0 {
                    digits += 1;
                    x /= k;
                }
                (v, digits)
            };
            while den_pow.len() <= digits {
                let next = den_pow.last().unwrap() * &den_m;
                den_pow.push(next);
            }
            let num: BigInt = lambda.iter().zip(&v).map(|(a, b)| a * b).sum();
            out.push(BigRational::new(num, den_pow[digits].clone()));
            h.push(v);
        }
        out
    }

    pub fn to_json(&self) -> LinRepJson {
        let f = |v: &Vec<BigRational>| v.iter().map(fmt_rational).collect::<Vec<_>>();
        LinRepJson {
            k: self.k,
            dim: self.dim(),
            lambda: f(&self.lambda),
            mats: self
                .mats
                .iter()
                .map(|m| m.iter().map(f).collect())
                .collect(),
            gamma: f(&self.gamma),
        }
    }
}

/// First index where the representation disagrees with `values`.
pub fn first_mismatch(rep: &LinRep, values: &[u128]) -> Option<usize> {
    rep.eval_prefix(values.len())
        .iter()
        .zip(values)
        .position(|(a, &b)| *a != BigRational::from_integer(BigInt::from(b)))
}

#[derive(Clone, Debug)]
pub enum Guess {
    Found(LinRep),
    /// No representation of dimension `<= max_dim` reproduces the prefix.
    /// The rank profile is evidence only.
    Failed {
        rank_profile: Vec<usize>,
    },
}

/// Kernel subsequence `n -> values[k^i n + j]`, as far as the prefix goes.
struct KernelSeq<'a> {
    values: &'a [u128],
    step: usize,
    offset: usize,
}

impl KernelSeq<'_> {
    fn len(&self) -> usize {
        if self.offset >= self.values.len() {
            0
        } else {
            (self.values.len() - 1 - self.offset) / self.step + 1
        }
    }

    fn get(&self, n: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(self.values[self.step * n + self.offset]))
    }
}

/// Express `target` in the span of `basis` on their common prefix.
/// `None` if it is not in the span, or if the common prefix is too short
/// to pin the coefficients down.
fn solve_in_span(basis: &[KernelSeq<'_>], target: &KernelSeq<'_>) -> Option<Vec<BigRational>> {
    let d = basis.len();
    let width = basis
        .iter()
        .map(KernelSeq::len)
        .chain([target.len()])
        .min()?;
    if width <= d {
        return None;
    }
    // row echelon form of [B | c], built one row at a time
    let mut pivots: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut used = 0;
    for n in 0..width {
        used = n + 1;
        let mut row: Vec<BigRational> = basis
            .iter()
            .map(|b| b.get(n))
            .chain([target.get(n)])
            .collect();
        for (p, prow) in &pivots {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (x, y) in row.iter_mut().zip(prow) {
                    *x -= &f * y;
                }
            }
        }
        match row[..d].iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let inv = row[p].recip();
                for x in row.iter_mut() {
                    *x *= &inv;
                }
                // keep the echelon rows fully reduced
                for (_, prow) in pivots.iter_mut() {
                    if !prow[p].is_zero() {
                        let f = prow[p].clone();
                        for (x, y) in prow.iter_mut().zip(&row) {
                            *x -= &f * y;
                        }
                    }
                }
                pivots.push((p, row));
                if pivots.len() == d {
                    break;
                }
            }
            None => {
                if !row[d].is_zero() {
                    return None;
                }
            }
        }
    }
    if pivots.len() < d {
        return None;
    }
    let mut x = vec![BigRational::zero(); d];
    for (p, row) in &pivots {
        x[*p] = row[d].clone();
    }
    for n in used..width {
        let lhs: BigRational = basis.iter().zip(&x).map(|(b, c)| b.get(n) * c).sum();
        if lhs != target.get(n) {
            return None;
        }
    }
    Some(x)
}

/// Smallest prefix accepted by [`linrep_guess`]. Reliable guesses need far
/// more: every kernel sequence down to depth `max_dim` should keep well
/// over `max_dim` terms.
pub fn min_guess_len(k: u32, max_dim: usize) -> usize {
    2 * k as usize * (max_dim + 1)
}

/// Search for a representation of dimension at most `max_dim`, closing a
/// basis of kernel subsequences under `n -> kn + d`. Any representation
/// returned reproduces every value of the prefix.
pub fn linrep_guess(values: &[u128], k: u32, max_dim: usize) -> Result<Guess> {
    if k < 2 {
        return Err(LinRepError::BadBase);
    }
    let need = min_guess_len(k, max_dim);
    if values.len() < need {
        return Err(LinRepError::InsufficientPrefix {
            have: values.len(),
            need,
        });
    }
    let ku = k as usize;
    let seq = |i: u32, j: u128| KernelSeq {
        values,
        step: ku.saturating_pow(i),
        offset: usize::try_from(j).unwrap_or(usize::MAX),
    };
    let mut basis: Vec<(u32, u128)> = vec![(0, 0)];
    // rows[d][t] = coefficients of f_t(kn + d) in the basis
    let mut rows: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); ku];
    let mut head = 0;
    let failed = |values: &[u128]| -> Result<Guess> {
        Ok(Guess::Failed {
            rank_profile: failure_profile(values, k, max_dim),
        })
    };
    while head < basis.len() {
        let (i, j) = basis[head];
        if ku.checked_pow(i + 1).is_none_or(|s| s > values.len()) {
            return failed(values);
        }
        for d in 0..k {
            let child = (i + 1, j + u128::from(d) * (ku as u128).pow(i));
            let seqs: Vec<KernelSeq<'_>> = basis.iter().map(|&(a, b)| seq(a, b)).collect();
            match solve_in_span(&seqs, &seq(child.0, child.1)) {
                Some(x) => rows[d as usize].push(x),
                None => {
                    if basis.len() == max_dim {
                        return failed(values);
                    }
                    let mut e = vec![BigRational::zero(); basis.len() + 1];
                    e[basis.len()] = BigRational::one();
                    basis.push(child);
                    rows[d as usize].push(e);
                }
            }
        }
        head += 1;
    }
    let dim = basis.len();
    let mats = rows
        .into_iter()
        .map(|m| {
            m.into_iter()
                .map(|mut r| {
                    r.resize(dim, BigRational::zero());
                    r
                })
                .collect()
        })
        .collect();
    let mut lambda = vec![BigRational::zero(); dim];
    lambda[0] = BigRational::one();
    let gamma = basis
        .iter()
        .map(|&(_, j)| BigRational::from_integer(BigInt::from(values[j as usize])))
        .collect();
    let rep = LinRep {
        k,
        lambda,
        mats,
        gamma,
        basis,
    };
    if first_mismatch(&rep, values).is_some() {
        return failed(values);
    }
    Ok(Guess::Found(rep))
}

/// Depths `0..=D` where `D` is the largest depth (at most `max_dim`) whose
/// kernel matrix is at least as wide as it is tall.
fn failure_profile(values: &[u128], k: u32, max_dim: usize) -> Vec<usize> {
    let ku = k as u128;
    let mut depth = 0u32;
    while (depth as usize) < max_dim {
        let next = depth + 1;
        let rows = (ku.pow(next + 1) - 1) / (ku - 1);
        let width = values.len() as u128 / ku.pow(next);
        if width < rows {
            break;
        }
        depth = next;
    }
    let depths: Vec<u32> = (0..=depth).collect();
    rank_profile(values, k, &depths).unwrap_or_default()
}

/// Rank over the rationals of the matrix whose rows are the kernel
/// subsequences `(i, j)`, `i <= depth`, for each requested depth. All rows
/// use the same width `len / k^max_depth`, so the profile is nondecreasing.
pub fn rank_profile(values: &[u128], k: u32, depths: &[u32]) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(LinRepError::BadBase);
    }
    let max_depth = *depths.iter().max().ok_or(LinRepError::NoDepths)?;
    let span = (k as usize).pow(max_depth);
    let width = values.len() / span;
    rank_profile_width(values, k, depths, width)
}

/// [`rank_profile`] with an explicit row width.
pub fn rank_profile_width(
    values: &[u128],
    k: u32,
    depths: &[u32],
    width: usize,
) -> Result<Vec<usize>> {
    let max_depth = *depths.iter().max().ok_or(LinRepError::NoDepths)?;
    let ku = k as usize;
    let need = ku.pow(max_depth) * width.max(1);
    if width == 0 || values.len() < need {
        return Err(LinRepError::InsufficientPrefix {
            have: values.len(),
            need,
        });
    }
    let mut levels: Vec<Vec<Vec<u128>>> = Vec::new();
    let mut step = 1usize;
    for _ in 0..=max_depth {
        let level = (0..step)
            .map(|j| (0..width).map(|n| values[step * n + j]).collect())
            .collect();
        levels.push(level);
        step *= ku;
    }
    let per_level = exact_rank_by_level(&levels);
    Ok(depths.iter().map(|&d| per_level[d as usize]).collect())
}

/// Rank of the first `l + 1` levels of rows, for each `l`.
///
/// Each rank mod `p` is a lower bound for the rank over `Q`. A nonzero
/// `r x r` minor is bounded by the product of row norms (Hadamard), so once
/// the product of the primes used exceeds that bound, some prime leaves
/// every such minor nonzero and the maximum over primes is exact.
pub fn exact_rank_by_level(levels: &[Vec<Vec<u128>>]) -> Vec<usize> {
    let rows: Vec<&Vec<u128>> = levels.iter().flatten().collect();
    let width = rows.first().map_or(0, |r| r.len());
    let cap: Vec<usize> = {
        let mut acc = 0;
        levels
            .iter()
            .map(|l| {
                acc += l.len();
                acc.min(width)
            })
            .collect()
    };
    // log2 of the Hadamard bound, rounded up
    let bound_bits: u64 = rows
        .iter()
        .map(|r| {
            let norm2: BigUint = r.iter().map(|&x| BigUint::from(x) * BigUint::from(x)).sum();
            norm2.bits().div_ceil(2)
        })
        .sum();
    let mut best = vec![0usize; levels.len()];
    let mut covered_bits = 0u64;
    for p in PrimeStream::new() {
        let ranks = rank_mod_p_by_level(levels, p);
        for (b, r) in best.iter_mut().zip(ranks) {
            *b = (*b).max(r);
        }
        covered_bits += 61;
        if best == cap || covered_bits > bound_bits {
            break;
        }
    }
    best
}

fn rank_mod_p_by_level(levels: &[Vec<Vec<u128>>], p: u64) -> Vec<usize> {
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut out = Vec::with_capacity(levels.len());
    for level in levels {
        for row in level {
            let mut v: Vec<u64> = row.iter().map(|&x| (x % u128::from(p)) as u64).collect();
            for (piv, prow) in &echelon {
                let f = v[*piv];
                if f != 0 {
                    let f = p - f;
                    for (x, &y) in v.iter_mut().zip(prow) {
                        if y != 0 {
                            *x = add_mod(*x, mul_mod(f, y, p), p);
                        }
                    }
                }
            }
            if let Some(piv) = v.iter().position(|&x| x != 0) {
                let inv = pow_mod(v[piv], p - 2, p);
                for x in v.iter_mut() {
                    *x = mul_mod(*x, inv, p);
                }
                echelon.push((piv, v));
            }
        }
        out.push(echelon.len());
    }
    out
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending. Each exceeds `2^61`.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream {
            next: (1 << 62) - 1,
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next > 1 << 61 {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn constant_rep() {
        let rep = LinRep {
            k: 2,
            lambda: vec![q(1)],
            mats: vec![vec![vec![q(1)]], vec![vec![q(1)]]],
            gamma: vec![q(1)],
            basis: vec![(0, 0)],
        };
        for n in 0..50 {
            assert_eq!(rep.eval(n), q(1));
        }
        assert!(rep.eval_prefix(50).iter().all(|v| *v == q(1)));
    }

    #[test]
    fn guess_moser() {
        let m: Vec<u128> = (0..1 << 12).map(seq::moser_de_bruijn).collect();
        let Guess::Found(rep) = linrep_guess(&m, 2, 4).unwrap() else {
            panic!("no representation for m");
        };
        assert_eq!(rep.dim(), 2);
        let first: Vec<BigRational> = (0..5).map(|n| rep.eval(n)).collect();
        assert_eq!(first, vec![q(0), q(1), q(4), q(5), q(16)]);
    }

    #[test]
    fn guess_u_satisfies_recurrence() {
        let u: Vec<u128> = (0..1 << 12).map(seq::u_seq).collect();
        let Guess::Found(rep) = linrep_guess(&u, 2, 4).unwrap() else {
            panic!("no representation for u");
        };
        assert_eq!(rep.dim(), 2);
        for n in 0..1000u128 {
            assert_eq!(rep.eval(2 * n), q(4) * rep.eval(n) - q(3));
        }
        assert_eq!(first_mismatch(&rep, &u), None);
    }

    #[test]
    fn eval_prefix_matches_eval() {
        let a = seq::a_prefix_rec(1 << 10);
        let Guess::Found(rep) = linrep_guess(&a, 2, 8).unwrap() else {
            panic!("no representation for a");
        };
        assert!(rep.dim() <= 8);
        let pre = rep.eval_prefix(300);
        for n in 0..300 {
            assert_eq!(pre[n], rep.eval(n as u128));
        }
    }

    #[test]
    fn l_has_no_small_rep() {
        let l = seq::generate(seq::SeqId::LSeq, 1 << 12).unwrap().values;
        match linrep_guess(&l, 2, 12).unwrap() {
            Guess::Found(rep) => panic!("unexpected representation of dim {}", rep.dim()),
            Guess::Failed { rank_profile } => {
                assert!(
                    rank_profile.windows(2).all(|w| w[0] < w[1]),
                    "{rank_profile:?}"
                );
            }
        }
    }

    #[test]
    fn rank_profiles() {
        let c = vec![7u128; 1 << 10];
        assert_eq!(
            rank_profile(&c, 2, &[0, 1, 2, 3]).unwrap(),
            vec![1, 1, 1, 1]
        );
        let u: Vec<u128> = (0..1 << 12).map(seq::u_seq).collect();
        assert_eq!(
            rank_profile(&u, 2, &[0, 1, 2, 3, 4]).unwrap(),
            vec![1, 2, 2, 2, 2]
        );
        assert!(matches!(
            rank_profile(&c, 2, &[20]),
            Err(LinRepError::InsufficientPrefix { .. })
        ));
    }

    #[test]
    fn multimodular_rank_agrees_with_rational_elimination() {
        // second row doubles the first, third has a 2^64-sized entry
        let big = 1u128 << 64;
        let rows = vec![
            vec![vec![1, 2, 3]],
            vec![vec![2, 4, 6], vec![1, 3 + big, 5]],
        ];
        assert_eq!(exact_rank_by_level(&rows), vec![1, 2]);
    }

    #[test]
    fn miller_rabin() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64((1 << 62) - 1));
    }
}
