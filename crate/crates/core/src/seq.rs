//! Integer and bit sequences, each with a direct definition and a
//! recurrence so the two can be compared.
//!
//! Values are stored as `u128`: `m^(r)_n` for `r = 5` and `n < 2^16`
//! already needs 76 bits.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fps::Series;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("parameter r must be at least 2, got {0}")]
    RTooSmall(u32),
    #[error("parameter r = {0} is too large")]
    RTooLarge(u32),
    #[error("w_n - n is odd at n = {0}")]
    Parity(usize),
    #[error("unknown sequence {0:?}")]
    Unknown(String),
    #[error("sequence {0} needs a parameter, write {0}:r")]
    MissingParam(&'static str),
    #[error("sequence {0} takes no parameter")]
    UnexpectedParam(&'static str),
    #[error("prefix too short: need {need} values, have {have}")]
    PrefixTooShort { need: usize, have: usize },
}

pub type Result<T> = std::result::Result<T, SeqError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeqId {
    BaumSweet,
    BaumSweetR(u32),
    BPrime,
    BDprime,
    ThueMorse,
    MoserDeBruijn,
    MoserR(u32),
    PSeq,
    PSeqR(u32),
    QSeq,
    QSeqR(u32),
    CSeq,
    ASeq,
    DSeq,
    USeq,
    USeqR(u32),
    VSeq,
    VSeqR(u32),
    WSeqR(u32),
    SSeqR(u32),
    STildeR(u32),
    LSeq,
    LSeqR(u32),
    HSeq,
    Fibonacci,
}

const PLAIN: &[(&str, SeqId)] = &[
    ("baum_sweet", SeqId::BaumSweet),
    ("b_prime", SeqId::BPrime),
    ("b_dprime", SeqId::BDprime),
    ("thue_morse", SeqId::ThueMorse),
    ("moser_de_bruijn", SeqId::MoserDeBruijn),
    ("p_seq", SeqId::PSeq),
    ("q_seq", SeqId::QSeq),
    ("c_seq", SeqId::CSeq),
    ("a_seq", SeqId::ASeq),
    ("d_seq", SeqId::DSeq),
    ("u_seq", SeqId::USeq),
    ("v_seq", SeqId::VSeq),
    ("l_seq", SeqId::LSeq),
    ("h_seq", SeqId::HSeq),
    ("fibonacci_numbers", SeqId::Fibonacci),
];

const PARAM: &[(&str, fn(u32) -> SeqId)] = &[
    ("baum_sweet_r", SeqId::BaumSweetR),
    ("moser_r", SeqId::MoserR),
    ("p_seq_r", SeqId::PSeqR),
    ("q_seq_r", SeqId::QSeqR),
    ("u_seq_r", SeqId::USeqR),
    ("v_seq_r", SeqId::VSeqR),
    ("w_seq_r", SeqId::WSeqR),
    ("s_seq_r", SeqId::SSeqR),
    ("s_tilde_r", SeqId::STildeR),
    ("l_seq_r", SeqId::LSeqR),
];

impl SeqId {
    pub fn name(&self) -> &'static str {
        use SeqId::*;
        match self {
            BaumSweet => "baum_sweet",
            BaumSweetR(_) => "baum_sweet_r",
            BPrime => "b_prime",
            BDprime => "b_dprime",
            ThueMorse => "thue_morse",
            MoserDeBruijn => "moser_de_bruijn",
            MoserR(_) => "moser_r",
            PSeq => "p_seq",
            PSeqR(_) => "p_seq_r",
            QSeq => "q_seq",
            QSeqR(_) => "q_seq_r",
            CSeq => "c_seq",
            ASeq => "a_seq",
            DSeq => "d_seq",
            USeq => "u_seq",
            USeqR(_) => "u_seq_r",
            VSeq => "v_seq",
            VSeqR(_) => "v_seq_r",
            WSeqR(_) => "w_seq_r",
            SSeqR(_) => "s_seq_r",
            STildeR(_) => "s_tilde_r",
            LSeq => "l_seq",
            LSeqR(_) => "l_seq_r",
            HSeq => "h_seq",
            Fibonacci => "fibonacci_numbers",
        }
    }

    pub fn param(&self) -> Option<u32> {
        use SeqId::*;
        match *self {
            BaumSweetR(r) | MoserR(r) | PSeqR(r) | QSeqR(r) | USeqR(r) | VSeqR(r) | WSeqR(r)
            | SSeqR(r) | STildeR(r) | LSeqR(r) => Some(r),
            _ => None,
        }
    }

    /// True for 0/1-valued sequences.
    pub fn is_bits(&self) -> bool {
        use SeqId::*;
        matches!(
            self,
            BaumSweet
                | BaumSweetR(_)
                | BPrime
                | BDprime
                | ThueMorse
                | PSeq
                | PSeqR(_)
                | QSeq
                | QSeqR(_)
                | CSeq
                | SSeqR(_)
                | STildeR(_)
        )
    }

    pub fn all_names() -> Vec<String> {
        PLAIN
            .iter()
            .map(|(n, _)| n.to_string())
            .chain(PARAM.iter().map(|(n, _)| format!("{n}:r")))
            .collect()
    }
}

impl fmt::Display for SeqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(r) => write!(f, "{}:{r}", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for SeqId {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<SeqId> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        if let Some(&(n, id)) = PLAIN.iter().find(|(n, _)| *n == name) {
            return match param {
                None => Ok(id),
                Some(_) => Err(SeqError::UnexpectedParam(n)),
            };
        }
        if let Some(&(n, make)) = PARAM.iter().find(|(n, _)| *n == name) {
            let p = param.ok_or(SeqError::MissingParam(n))?;
            let r: u32 = p.parse().map_err(|_| SeqError::Unknown(s.to_string()))?;
            check_r(r)?;
            return Ok(make(r));
        }
        Err(SeqError::Unknown(s.to_string()))
    }
}

/// Largest supported `r`; keeps `2^r`-ary digit arithmetic inside `u128`.
pub const MAX_R: u32 = 16;

pub fn check_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(SeqError::RTooSmall(r));
    }
    if r > MAX_R {
        return Err(SeqError::RTooLarge(r));
    }
    Ok(())
}

/// A finite prefix of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prefix {
    pub id: SeqId,
    pub values: Vec<u128>,
}

impl Prefix {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }

    /// Values on one line, space separated.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(u128::to_string).collect();
        parts.join(" ")
    }
}

/// Blocks of 0's in the binary expansion of `n`, most significant first.
fn zero_blocks(mut n: u64) -> Vec<u32> {
    let mut blocks = Vec::new();
    let mut run = 0;
    while n > 0 {
        if n & 1 == 0 {
            run += 1;
        } else if run > 0 {
            blocks.push(run);
            run = 0;
        }
        n >>= 1;
    }
    blocks.reverse();
    blocks
}

/// `b_n` by scanning the binary expansion of `n`.
pub fn baum_sweet(n: u64) -> u8 {
    baum_sweet_r(2, n)
}

/// `b_n` from `b_0 = 1`, `b_{2n+1} = b_{4n} = b_n`, `b_{4n+2} = 0`.
pub fn baum_sweet_rec(mut n: u64) -> u8 {
    loop {
        if n == 0 {
            return 1;
        }
        match n % 4 {
            1 | 3 => n >>= 1,
            0 => n >>= 2,
            _ => return 0,
        }
    }
}

/// `b^(r)_n`: 1 iff every block of 0's in binary `n` has length divisible by `r`.
pub fn baum_sweet_r(r: u32, n: u64) -> u8 {
    u8::from(zero_blocks(n).iter().all(|b| b % r == 0))
}

/// `b^(r)_n` from `b_{2^r n} = b_{2n+1} = b_n` and
/// `b_{2^i n + 2^{i-1}} = 0` for `i = 2..=r`.
pub fn baum_sweet_r_rec(r: u32, mut n: u64) -> u8 {
    loop {
        if n == 0 {
            return 1;
        }
        if n & 1 == 1 {
            n >>= 1;
            continue;
        }
        if n.trailing_zeros() >= r {
            n >>= r;
            continue;
        }
        return 0;
    }
}

pub fn b_prime(n: u64) -> u8 {
    if n == 0 {
        0
    } else {
        baum_sweet(n)
    }
}

pub fn b_dprime(n: u64) -> u8 {
    if n == 0 {
        0
    } else {
        baum_sweet(n - 1)
    }
}

pub fn thue_morse(n: u64) -> u8 {
    (n.count_ones() % 2) as u8
}

/// `t_n` from `t_{2n} = t_n`, `t_{2n+1} = 1 - t_n`.
pub fn thue_morse_rec(n: u64) -> u8 {
    if n == 0 {
        0
    } else if n % 2 == 0 {
        thue_morse_rec(n / 2)
    } else {
        1 - thue_morse_rec(n / 2)
    }
}

/// `m^(r)_n`: the binary digits of `n` read in base `2^r`.
pub fn moser_r(r: u32, n: u64) -> u128 {
    let mut out = 0u128;
    let mut bit = 0;
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            out |= 1u128 << (bit * r);
        }
        n >>= 1;
        bit += 1;
    }
    out
}

pub fn moser_de_bruijn(n: u64) -> u128 {
    moser_r(2, n)
}

/// `m^(r)_n` from `m_0 = 0`, `m_{2n} = 2^r m_n`, `m_{2n+1} = 2^r m_n + 1`.
pub fn moser_r_rec(r: u32, n: u64) -> u128 {
    if n == 0 {
        0
    } else {
        (moser_r_rec(r, n / 2) << r) + u128::from(n & 1)
    }
}

/// True iff every base-`2^r` digit of `x` is 0 or 1.
pub fn has_binary_digits(r: u32, mut x: u128) -> bool {
    let mask = (1u128 << r) - 1;
    while x > 0 {
        if x & mask > 1 {
            return false;
        }
        x >>= r;
    }
    true
}

/// The first `count` sums of distinct powers of `2^r`, in increasing order,
/// built by closing `{0}` under adding each power and sorting.
pub fn moser_enumerate(r: u32, count: usize) -> Vec<u128> {
    let mut sums = vec![0u128];
    let mut i = 0u32;
    while sums.len() < count {
        assert!(r * i < 128, "sums exceed u128");
        let p = 1u128 << (r * i);
        let extra: Vec<u128> = sums.iter().map(|s| s + p).collect();
        sums.extend(extra);
        i += 1;
    }
    sums.sort_unstable();
    sums.truncate(count);
    sums
}

/// Naturals with all base-`2^r` digits 0/1, found by testing every natural.
pub fn moser_scan(r: u32, count: usize) -> Vec<u128> {
    let mut out = Vec::with_capacity(count);
    let mut x = 0u128;
    while out.len() < count {
        if has_binary_digits(r, x) {
            out.push(x);
        }
        x += 1;
    }
    out
}

/// `p^(r)_n = 0` iff `n` is even and `n < 2^r`.
pub fn p_seq_r(r: u32, n: u64) -> u8 {
    u8::from(!(n % 2 == 0 && n < 1u64 << r))
}

/// `p_n = 0` iff `n = 0` or `n = 2`.
pub fn p_seq(n: u64) -> u8 {
    u8::from(n != 0 && n != 2)
}

/// `q^(r)_n` from `q_0 = 0`, `q_1 = 1`, `q_{Rn+1} = q_{Rn+2} = q_{n+1}` and
/// `q_{Rn+i} = 0` otherwise, where `R = 2^r`.
pub fn q_seq_r(r: u32, mut n: u64) -> u8 {
    let big_r = 1u64 << r;
    loop {
        match n {
            0 => return 0,
            1 => return 1,
            _ => {}
        }
        match n % big_r {
            1 | 2 => n = n / big_r + 1,
            _ => return 0,
        }
    }
}

pub fn q_seq(n: u64) -> u8 {
    q_seq_r(2, n)
}

/// `q^(r)_n = 1` iff the base-`2^r` digits of `n` are all 0/1, except the
/// least significant digit, which is 1 or 2.
pub fn q_seq_r_digits(r: u32, n: u64) -> u8 {
    let big_r = 1u64 << r;
    if n == 0 {
        return 0;
    }
    let low = n % big_r;
    u8::from((low == 1 || low == 2) && has_binary_digits(r, u128::from(n / big_r)))
}

/// `u^(r)_n` from `u_0 = 1`, `u_{2n} = 2^r u_n - 2^r + 1`,
/// `u_{2n+1} = 2^r u_n - 2^r + 2`.
pub fn u_seq_r(r: u32, n: u64) -> u128 {
    let big_r = 1u128 << r;
    let mut u = 1u128;
    if n == 0 {
        return u;
    }
    for i in (0..64 - n.leading_zeros()).rev() {
        u = big_r * u - big_r + 1 + u128::from((n >> i) & 1);
    }
    u
}

pub fn u_seq(n: u64) -> u128 {
    u_seq_r(2, n)
}

/// `f_0 = 0`, `f_1 = f_2 = 1`.
pub fn fibonacci(n: u32) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

/// Increasing positions `i` with `bits[i] == value`, optionally with 0
/// prepended. Only positions inside the prefix are reported.
pub fn char_positions(bits: &[u8], value: u8, prepend_zero: bool) -> Vec<u128> {
    let mut out = Vec::new();
    if prepend_zero {
        out.push(0);
    }
    out.extend(
        bits.iter()
            .enumerate()
            .filter(|&(i, &b)| b == value && !(prepend_zero && i == 0))
            .map(|(i, _)| i as u128),
    );
    out
}

/// The Thue-Morse series `T` over `F_2`.
pub fn thue_morse_series(n: usize) -> Series {
    Series::gf2_from_fn(n, |i| thue_morse(i as u64) == 1)
}

/// `B_r`, `C_r = B_r + 1` and `D_r = X B_r` over `F_2`.
pub fn b_series_r(r: u32, n: usize) -> Series {
    Series::gf2_from_fn(n, |i| baum_sweet_r(r, i as u64) == 1)
}

pub fn c_series_r(r: u32, n: usize) -> Series {
    Series::gf2_from_fn(n, |i| i > 0 && baum_sweet_r(r, i as u64) == 1)
}

pub fn d_series_r(r: u32, n: usize) -> Series {
    Series::gf2_from_fn(n, |i| i > 0 && baum_sweet_r(r, i as u64 - 1) == 1)
}

/// The first `n` coefficients of the reversion of `T`.
pub fn c_prefix(n: usize) -> Vec<u8> {
    if n < 2 {
        return vec![0; n];
    }
    thue_morse_series(n)
        .reversion()
        .expect("T has t_0 = 0 and t_1 = 1")
        .bits()
        .expect("series over F_2")
}

/// `a_n` from `a_0, a_1, a_2 = 0, 1, 2` and
/// `a_{4n} = a_{4n-1} + 1`, `a_{4n+1} = a_{4n-1} + 2`, `a_{4n+2} = a_{4n-1} + 3`,
/// `a_{8n+3} = a_{8n} + 7`, `a_{8n+7} = 4 a_{4n+3} + 3`.
pub fn a_prefix_rec(len: usize) -> Vec<u128> {
    let mut a: Vec<u128> = Vec::with_capacity(len);
    for n in 0..len {
        let v = match n {
            0..=2 => n as u128,
            _ => match n % 8 {
                0 | 4 => a[n - 1] + 1,
                1 | 5 => a[n - 2] + 2,
                2 | 6 => a[n - 3] + 3,
                3 => a[n - 3] + 7,
                _ => 4 * a[(n - 1) / 2] + 3,
            },
        };
        a.push(v);
    }
    a
}

/// The sums `sum_i (2^{r n_i} - 2^{n_i})` over finite sets of distinct
/// `n_i >= 2`, below `bound`, in increasing order. The empty sum 0 is included.
pub fn tilde_sums(r: u32, bound: u128) -> Vec<u128> {
    let mut terms = Vec::new();
    let mut i = 2u32;
    while r * i < 127 {
        let t = (1u128 << (r * i)) - (1u128 << i);
        if t >= bound {
            break;
        }
        terms.push(t);
        i += 1;
    }
    let mut sums = vec![0u128];
    for t in terms {
        let extra: Vec<u128> = sums.iter().map(|s| s + t).filter(|&s| s < bound).collect();
        sums.extend(extra);
    }
    sums.retain(|&s| s < bound);
    sums.sort_unstable();
    sums.dedup();
    sums
}

/// `s~^(r)_n` for `n < len`, by membership in [`tilde_sums`].
pub fn s_tilde_prefix(r: u32, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for s in tilde_sums(r, len as u128) {
        out[s as usize] = 1;
    }
    out
}

/// `w^(r)_n`: the `n`-th natural that is not a value of `m^(r)`.
pub fn w_prefix(r: u32, len: usize) -> Vec<u128> {
    let mut out = Vec::with_capacity(len);
    let mut x = 0u128;
    while out.len() < len {
        if !has_binary_digits(r, x) {
            out.push(x);
        }
        x += 1;
    }
    out
}

/// `s^(r)_n = ((w_n - n) / 2) mod 2`.
pub fn s_from_w(w: &[u128]) -> Result<Vec<u8>> {
    w.iter()
        .enumerate()
        .map(|(n, &wn)| {
            let d = wn - n as u128;
            if d % 2 == 1 {
                return Err(SeqError::Parity(n));
            }
            Ok(((d / 2) % 2) as u8)
        })
        .collect()
}

/// The first `len` positions of 1's in `b^(r)`, in increasing order.
///
/// These are 0 and the numbers whose binary expansion is 1 followed by
/// tokens `0^r` and `1`. For a fixed length, taking `0^r` before `1`
/// lists them in increasing order.
pub fn ones_of_baum_sweet_r(r: u32, len: usize) -> Vec<u128> {
    fn fill(r: u32, value: u128, remaining: u32, out: &mut Vec<u128>, len: usize) {
        if out.len() >= len {
            return;
        }
        if remaining == 0 {
            out.push(value);
            return;
        }
        if remaining >= r {
            fill(r, value << r, remaining - r, out, len);
        }
        fill(r, (value << 1) | 1, remaining - 1, out, len);
    }
    let mut out = Vec::with_capacity(len);
    if len > 0 {
        out.push(0);
    }
    let mut bits = 1u32;
    while out.len() < len {
        assert!(bits <= 128, "positions exceed u128");
        fill(r, 1, bits - 1, &mut out, len);
        bits += 1;
    }
    out
}

/// Bits `0..len` of a 0/1 sequence given pointwise.
fn bits_of(len: usize, f: impl Fn(u64) -> u8) -> Vec<u128> {
    (0..len as u64).map(|n| u128::from(f(n))).collect()
}

/// Positions where `f` equals `value`, scanning until `len` are found.
fn scan_positions(len: usize, value: u8, f: impl Fn(u64) -> u8) -> Vec<u128> {
    let mut out = Vec::with_capacity(len);
    let mut n = 0u64;
    while out.len() < len {
        if f(n) == value {
            out.push(u128::from(n));
        }
        n += 1;
    }
    out
}

/// The first `len` values of `id`.
pub fn generate(id: SeqId, len: usize) -> Result<Prefix> {
    use SeqId::*;
    if let Some(r) = id.param() {
        check_r(r)?;
    }
    let values = match id {
        BaumSweet => bits_of(len, baum_sweet),
        BaumSweetR(r) => bits_of(len, |n| baum_sweet_r(r, n)),
        BPrime => bits_of(len, b_prime),
        BDprime => bits_of(len, b_dprime),
        ThueMorse => bits_of(len, thue_morse),
        MoserDeBruijn => (0..len as u64).map(moser_de_bruijn).collect(),
        MoserR(r) => (0..len as u64).map(|n| moser_r(r, n)).collect(),
        PSeq => bits_of(len, p_seq),
        PSeqR(r) => bits_of(len, |n| p_seq_r(r, n)),
        QSeq => bits_of(len, q_seq),
        QSeqR(r) => bits_of(len, |n| q_seq_r(r, n)),
        CSeq => c_prefix(len).into_iter().map(u128::from).collect(),
        ASeq => a_prefix_rec(len),
        DSeq => {
            // zeros of c have density 1, so a c-prefix a bit over len suffices
            let mut l = 2 * len + 16;
            loop {
                let c = c_prefix(l);
                let mut d: Vec<u128> = char_positions(&c, 0, false)
                    .into_iter()
                    .filter(|&m| m >= 1)
                    .collect();
                if d.len() >= len {
                    d.truncate(len);
                    break d;
                }
                l *= 2;
            }
        }
        USeq => (0..len as u64).map(u_seq).collect(),
        USeqR(r) => (0..len as u64).map(|n| u_seq_r(r, n)).collect(),
        VSeq => scan_positions(len, 0, q_seq),
        VSeqR(r) => scan_positions(len, 0, |n| q_seq_r(r, n)),
        WSeqR(r) => w_prefix(r, len),
        SSeqR(r) => s_from_w(&w_prefix(r, len))?
            .into_iter()
            .map(u128::from)
            .collect(),
        STildeR(r) => s_tilde_prefix(r, len).into_iter().map(u128::from).collect(),
        LSeq => ones_of_baum_sweet_r(2, len),
        LSeqR(r) => ones_of_baum_sweet_r(r, len),
        HSeq => scan_positions(len, 0, baum_sweet),
        Fibonacci => (0..len as u32).map(fibonacci).collect(),
    };
    Ok(Prefix { id, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moser_enumeration_matches_scan() {
        for r in 2..=4 {
            assert_eq!(moser_enumerate(r, 300), moser_scan(r, 300));
        }
    }

    #[test]
    fn ones_enumeration_matches_scan() {
        for r in 2..=5 {
            let scan = scan_positions(500, 1, |n| baum_sweet_r(r, n));
            assert_eq!(ones_of_baum_sweet_r(r, 500), scan, "r = {r}");
        }
    }

    fn vals(id: &str, n: usize) -> Vec<u128> {
        generate(id.parse().unwrap(), n).unwrap().values
    }

    #[test]
    fn seqid_roundtrip() {
        for name in SeqId::all_names() {
            let text = name.replace(":r", ":3");
            let id: SeqId = text.parse().unwrap();
            assert_eq!(id.to_string(), text);
        }
        assert_eq!(
            "baum_sweet_r:1".parse::<SeqId>(),
            Err(SeqError::RTooSmall(1))
        );
        assert!("nope".parse::<SeqId>().is_err());
        assert!("baum_sweet:2".parse::<SeqId>().is_err());
        assert!("u_seq_r".parse::<SeqId>().is_err());
    }

    #[test]
    fn baum_sweet_prefix() {
        let expected: [u128; 20] = [1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1];
        assert_eq!(vals("baum_sweet", 20), expected);
        for n in 0..1 << 12 {
            assert_eq!(baum_sweet(n), baum_sweet_rec(n), "n = {n}");
        }
    }

    #[test]
    fn baum_sweet_r_examples() {
        assert_eq!(vals("baum_sweet_r:2", 8), vec![1, 1, 0, 1, 1, 0, 0, 1]);
        assert_eq!(baum_sweet_r(3, 8), 1);
        assert_eq!(baum_sweet_r(3, 4), 0);
        for r in 2..6 {
            for n in 0..1 << 12 {
                assert_eq!(baum_sweet_r(r, n), baum_sweet_r_rec(r, n));
            }
        }
    }

    #[test]
    fn thue_morse_examples() {
        assert_eq!(vals("thue_morse", 8), vec![0, 1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(thue_morse(11), 1);
        for n in 0..1000 {
            assert_eq!(thue_morse(n), thue_morse_rec(n));
        }
    }

    #[test]
    fn moser_examples() {
        assert_eq!(vals("moser_de_bruijn", 8), vec![0, 1, 4, 5, 16, 17, 20, 21]);
        assert_eq!(moser_r(3, 3), 9);
        assert_eq!(
            moser_enumerate(3, 64),
            (0..64).map(|n| moser_r(3, n)).collect::<Vec<_>>()
        );
        assert_eq!(moser_r_rec(5, 12345), moser_r(5, 12345));
    }

    #[test]
    fn p_and_q_examples() {
        assert_eq!(vals("p_seq", 6), vec![0, 1, 0, 1, 1, 1]);
        assert_eq!(vals("p_seq_r:3", 9), vec![0, 1, 0, 1, 0, 1, 0, 1, 1]);
        assert_eq!(vals("q_seq", 8), vec![0, 1, 1, 0, 0, 1, 1, 0]);
        assert_eq!(q_seq_r(3, 17), 0);
        for r in 2..6 {
            for n in 0..5000 {
                assert_eq!(q_seq_r(r, n), q_seq_r_digits(r, n));
            }
        }
    }

    #[test]
    fn characteristic_sequences() {
        let b: Vec<u8> = (0..20).map(baum_sweet).collect();
        assert_eq!(
            char_positions(&b, 1, false)[..8],
            [0, 1, 3, 4, 7, 9, 12, 15]
        );
        assert_eq!(vals("u_seq", 8), vec![1, 2, 5, 6, 17, 18, 21, 22]);
        assert_eq!(vals("v_seq", 6), vec![0, 3, 4, 7, 8, 9]);
        assert_eq!(vals("h_seq", 6), vec![2, 5, 6, 8, 10, 11]);
        assert_eq!(vals("a_seq", 4), vec![0, 1, 2, 7]);
        assert_eq!(vals("l_seq_r:2", 50), vals("l_seq", 50));
    }

    #[test]
    fn a_from_c_matches_recurrence() {
        let c = c_prefix(1 << 10);
        let a = char_positions(&c, 1, true);
        assert_eq!(&a[..4], &[0, 1, 2, 7]);
        assert_eq!(a_prefix_rec(a.len()), a);
    }

    #[test]
    fn u_values_are_m_plus_one() {
        for r in 2..6 {
            for n in 0..2000 {
                assert_eq!(u_seq_r(r, n), moser_r(r, n) + 1);
            }
        }
    }

    #[test]
    fn s_tilde_examples() {
        let st = s_tilde_prefix(2, 64);
        assert_eq!(st[12], 1);
        assert_eq!(st[0], 1);
        assert_eq!(st[11], 0);
        assert_eq!(tilde_sums(2, 100), vec![0, 12, 56, 68]);
    }

    #[test]
    fn s_parity_holds() {
        for r in 2..5 {
            s_from_w(&w_prefix(r, 4096)).unwrap();
        }
        assert_eq!(s_from_w(&[1]), Err(SeqError::Parity(0)));
    }

    #[test]
    fn fibonacci_calibration() {
        assert_eq!(
            (1..8).map(fibonacci).collect::<Vec<_>>(),
            vec![1, 1, 2, 3, 5, 8, 13]
        );
    }
}
