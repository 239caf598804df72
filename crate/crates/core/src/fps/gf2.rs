//! Bit-packed polynomials over GF(2).
//!
//! Bit `i` of the packed word vector holds the coefficient of `X^i`. Every
//! polynomial carries an explicit length (its truncation order); bits at or
//! above `len` are always zero.

use std::fmt;

const WORD: usize = 64;
const KARATSUBA_THRESHOLD: usize = 24;
const HORNER_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitPoly {
    words: Vec<u64>,
    len: usize,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl BitPoly {
    pub(crate) fn zeros(len: usize) -> Self {
        BitPoly {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub(crate) fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut p = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                p.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        p
    }

    fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(words_for(len), 0);
        let mut p = BitPoly { words, len };
        p.mask_tail();
        p
    }

    fn mask_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        i < self.len && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub(crate) fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Index of the lowest set bit.
    pub(crate) fn valuation(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// One past the highest set bit (0 for the zero polynomial).
    pub(crate) fn degree_bound(&self) -> usize {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map_or(0, |(i, w)| i * WORD + (WORD - w.leading_zeros() as usize))
    }

    pub(crate) fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + t)
                }
            })
        })
    }

    /// Truncate or zero-extend to `len` coefficients.
    pub(crate) fn resized(&self, len: usize) -> Self {
        let keep = words_for(len).min(self.words.len());
        BitPoly::from_words(self.words[..keep].to_vec(), len)
    }

    pub(crate) fn xor_assign(&mut self, other: &BitPoly) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
        self.mask_tail();
    }

    /// `self += other * X^shift`, truncated at `self.len`.
    pub(crate) fn xor_shifted(&mut self, other: &BitPoly, shift: usize) {
        let ws = shift / WORD;
        let bs = shift % WORD;
        let n = self.words.len();
        for (i, &w) in other.words.iter().enumerate() {
            let j = i + ws;
            if j >= n {
                break;
            }
            self.words[j] ^= w << bs;
            if bs != 0 && j + 1 < n {
                self.words[j + 1] ^= w >> (WORD - bs);
            }
        }
        self.mask_tail();
    }

    /// Divide by `X^shift`, dropping the low coefficients; the result has
    /// `len - shift` coefficients.
    pub(crate) fn shifted_down(&self, shift: usize) -> BitPoly {
        let len = self.len.saturating_sub(shift);
        let ws = shift / WORD;
        let bs = shift % WORD;
        let mut out = vec![0u64; words_for(len)];
        for (i, o) in out.iter_mut().enumerate() {
            let lo = self.words.get(i + ws).copied().unwrap_or(0);
            let hi = self.words.get(i + ws + 1).copied().unwrap_or(0);
            *o = if bs == 0 {
                lo
            } else {
                (lo >> bs) | (hi << (WORD - bs))
            };
        }
        BitPoly::from_words(out, len)
    }

    /// `self(X^2)`, i.e. the square of `self` in characteristic 2, mod `X^n`.
    pub(crate) fn square_trunc(&self, n: usize) -> BitPoly {
        let mut out = Vec::with_capacity(2 * self.words.len());
        for &w in &self.words {
            out.push(spread(w as u32));
            out.push(spread((w >> 32) as u32));
        }
        BitPoly::from_words(out, n)
    }

    /// `self(X^e)` mod `X^n`.
    pub(crate) fn substitute(&self, e: usize, n: usize) -> BitPoly {
        assert!(e >= 1);
        if e == 1 {
            return self.resized(n);
        }
        if e.is_power_of_two() {
            let mut p = self.resized(self.len.min(n.div_ceil(e)));
            let mut k = 1;
            while k < e {
                p = p.square_trunc(2 * p.len);
                k *= 2;
            }
            return p.resized(n);
        }
        let mut out = BitPoly::zeros(n);
        for i in self.ones() {
            match i.checked_mul(e) {
                Some(j) if j < n => out.set(j, true),
                _ => break,
            }
        }
        out
    }

    /// Coefficients at even positions, `sum u_{2i} X^i`, truncated to `len`.
    pub(crate) fn even_part(&self, len: usize) -> BitPoly {
        self.deinterleave(0, len)
    }

    /// Coefficients at odd positions, `sum u_{2i+1} X^i`, truncated to `len`.
    pub(crate) fn odd_part(&self, len: usize) -> BitPoly {
        self.deinterleave(1, len)
    }

    fn deinterleave(&self, offset: u32, len: usize) -> BitPoly {
        let mut out = Vec::with_capacity(self.words.len().div_ceil(2));
        for pair in self.words.chunks(2) {
            let lo = compact(pair[0] >> offset);
            let hi = pair.get(1).map_or(0, |&w| compact(w >> offset));
            out.push(lo | (hi << 32));
        }
        BitPoly::from_words(out, len)
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly[{}](", self.len)?;
        for i in 0..self.len.min(64) {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        if self.len > 64 {
            write!(f, "...")?;
        }
        write!(f, ")")
    }
}

/// Spread the 32 bits of `x` into the even bit positions of a `u64`.
fn spread(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Inverse of [`spread`]: gather the even bits of `x`.
fn compact(x: u64) -> u64 {
    let mut x = x & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x >> 4)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x >> 8)) & 0x0000_ffff_0000_ffff;
    x = (x | (x >> 16)) & 0x0000_0000_ffff_ffff;
    x
}

// ---------------------------------------------------------------------------
// carry-less multiplication

fn clmul_soft(a: u64, b: u64) -> (u64, u64) {
    let mut lo = 0u64;
    let mut hi = 0u64;
    for i in 0..64 {
        let mask = 0u64.wrapping_sub((b >> i) & 1);
        lo ^= (a << i) & mask;
        if i != 0 {
            hi ^= (a >> (64 - i)) & mask;
        }
    }
    (lo, hi)
}

fn base_mul_soft(a: &[u64], b: &[u64], out: &mut [u64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let (lo, hi) = clmul_soft(x, y);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn base_mul_pclmul(a: &[u64], b: &[u64], out: &mut [u64]) {
    use core::arch::x86_64::*;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let xv = _mm_set_epi64x(0, x as i64);
        for (j, &y) in b.iter().enumerate() {
            let r = _mm_clmulepi64_si128(xv, _mm_set_epi64x(0, y as i64), 0);
            let lo = _mm_cvtsi128_si64(r) as u64;
            let hi = _mm_cvtsi128_si64(_mm_srli_si128(r, 8)) as u64;
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

fn base_mul(a: &[u64], b: &[u64], out: &mut [u64]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the required CPU feature was detected at runtime.
            unsafe { base_mul_pclmul(a, b, out) };
            return;
        }
    }
    base_mul_soft(a, b, out)
}

/// XOR the full product `a * b` into `out`, which must hold
/// `a.len() + b.len()` words.
fn karatsuba(a: &[u64], b: &[u64], out: &mut [u64]) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return;
    }
    if b.len() <= KARATSUBA_THRESHOLD {
        base_mul(a, b, out);
        return;
    }
    if 2 * b.len() <= a.len() {
        let step = b.len();
        for (k, chunk) in a.chunks(step).enumerate() {
            let lo = k * step;
            karatsuba(chunk, b, &mut out[lo..lo + chunk.len() + b.len()]);
        }
        return;
    }
    let m = a.len() / 2;
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);

    let mut z0 = vec![0u64; 2 * m];
    karatsuba(a0, b0, &mut z0);
    let mut z2 = vec![0u64; a1.len() + b1.len()];
    karatsuba(a1, b1, &mut z2);

    let sa: Vec<u64> = (0..a1.len())
        .map(|i| a1[i] ^ a0.get(i).copied().unwrap_or(0))
        .collect();
    let sb_len = m.max(b1.len());
    let sb: Vec<u64> = (0..sb_len)
        .map(|i| b0.get(i).copied().unwrap_or(0) ^ b1.get(i).copied().unwrap_or(0))
        .collect();
    let mut z1 = vec![0u64; sa.len() + sb.len()];
    karatsuba(&sa, &sb, &mut z1);
    for (i, &w) in z0.iter().enumerate() {
        z1[i] ^= w;
    }
    for (i, &w) in z2.iter().enumerate() {
        z1[i] ^= w;
    }

    for (i, &w) in z0.iter().enumerate() {
        out[i] ^= w;
    }
    for (i, &w) in z2.iter().enumerate() {
        out[2 * m + i] ^= w;
    }
    for (i, &w) in z1.iter().enumerate() {
        if m + i < out.len() {
            out[m + i] ^= w;
        }
    }
}

/// `a * b mod X^n`.
pub(crate) fn mul_trunc(a: &BitPoly, b: &BitPoly, n: usize) -> BitPoly {
    let wn = words_for(n);
    let aw = &a.words[..a.words.len().min(wn)];
    let bw = &b.words[..b.words.len().min(wn)];
    let mut out = vec![0u64; aw.len() + bw.len()];
    karatsuba(aw, bw, &mut out);
    BitPoly::from_words(out, n)
}

/// Schoolbook shift-and-add product, used as a reference in tests.
#[cfg(test)]
pub(crate) fn mul_naive(a: &BitPoly, b: &BitPoly, n: usize) -> BitPoly {
    let mut out = BitPoly::zeros(n);
    let b = b.resized(n);
    for i in a.ones() {
        if i >= n {
            break;
        }
        out.xor_shifted(&b, i);
    }
    out
}

// ---------------------------------------------------------------------------
// composition, inversion, reversion

/// `outer(inner) mod X^n` for `inner` with zero constant term.
///
/// Uses the characteristic-2 split `u(v) = E(v)^2 + v * O(v)^2`, where
/// `E` and `O` collect the even- and odd-indexed coefficients of `u`; both
/// halves only need half the precision.
pub(crate) fn compose(outer: &BitPoly, inner: &BitPoly, n: usize) -> BitPoly {
    debug_assert!(!inner.get(0));
    compose_rec(&outer.resized(n.min(outer.len)), &inner.resized(n), n)
}

fn compose_rec(u: &BitPoly, v: &BitPoly, n: usize) -> BitPoly {
    if n == 0 {
        return BitPoly::zeros(0);
    }
    let d = u.degree_bound().min(n);
    if d <= HORNER_DEGREE || n <= WORD {
        return horner(u, v, d, n);
    }
    let h = n.div_ceil(2);
    let vh = v.resized(h);
    let even = u.even_part(d.div_ceil(2));
    let odd = u.odd_part(d / 2);
    let e = compose_rec(&even, &vh, h);
    let o = compose_rec(&odd, &vh, h);
    let mut out = e.square_trunc(n);
    let vo = mul_trunc(v, &o.square_trunc(n), n);
    out.xor_assign(&vo);
    out
}

fn horner(u: &BitPoly, v: &BitPoly, d: usize, n: usize) -> BitPoly {
    let mut acc = BitPoly::zeros(n);
    for i in (0..d).rev() {
        acc = mul_trunc(&acc, v, n);
        if u.get(i) {
            acc.flip(0);
        }
    }
    acc
}

/// Multiplicative inverse mod `X^n` of a series with constant term 1.
pub(crate) fn inverse(a: &BitPoly, n: usize) -> BitPoly {
    assert!(a.get(0), "series is not invertible");
    let mut g = BitPoly::zeros(n.min(1));
    if n == 0 {
        return g;
    }
    g.set(0, true);
    let mut prec = 1;
    while prec < n {
        let next = (2 * prec).min(n);
        // g <- g (2 - a g) = a g^2 in characteristic 2
        let g2 = g.square_trunc(next);
        g = mul_trunc(&a.resized(next), &g2, next);
        prec = next;
    }
    g
}

/// Compositional inverse mod `X^n` of `u` with `u_0 = 0`, `u_1 = 1`, by
/// Newton lifting `v <- v - (u(v) - X) / u'(v)` with doubling precision.
pub(crate) fn reversion_newton(u: &BitPoly, n: usize) -> BitPoly {
    assert!(
        !u.get(0) && u.get(1),
        "series is not invertible under composition"
    );
    let mut v = BitPoly::zeros(n.min(2));
    if n >= 2 {
        v.set(1, true);
    }
    let mut prec = n.min(2);
    while prec < n {
        let next = (2 * prec).min(n);
        let ve = v.resized(next);
        let mut residual = compose(&u.resized(next), &ve, next);
        residual.flip(1);
        debug_assert!(residual.valuation().is_none_or(|k| k >= prec));

        // u'(X) = O(X^2) and O(v^2) = O(v)^2 over GF(2)
        let m = next - prec;
        let half = m.div_ceil(2);
        let odd = u.odd_part(half);
        let deriv = compose(&odd, &ve.resized(half), half).square_trunc(m);
        let dinv = inverse(&deriv, m);
        let delta = mul_trunc(&residual.shifted_down(prec), &dinv, m);

        v = ve;
        v.xor_shifted(&delta, prec);
        prec = next;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(bits: &[u8]) -> BitPoly {
        BitPoly::from_fn(bits.len(), |i| bits[i] == 1)
    }

    #[test]
    fn clmul_matches_bitwise_definition() {
        let (lo, hi) = clmul_soft(0b1011, 0b11);
        assert_eq!((lo, hi), (0b11101, 0));
        let (lo, hi) = clmul_soft(1 << 63, 1 << 63);
        assert_eq!((lo, hi), (0, 1 << 62));
    }

    #[test]
    fn frobenius_square() {
        let p = poly(&[1, 1, 0, 1]);
        let s = p.square_trunc(8);
        assert_eq!(
            (0..8).map(|i| s.get(i) as u8).collect::<Vec<_>>(),
            vec![1, 0, 1, 0, 0, 0, 1, 0]
        );
    }

    #[test]
    fn even_odd_roundtrip() {
        let p = BitPoly::from_fn(300, |i| (i * 7 + i / 3) % 5 < 2);
        let e = p.even_part(150);
        let o = p.odd_part(150);
        for i in 0..150 {
            assert_eq!(e.get(i), p.get(2 * i));
            assert_eq!(o.get(i), p.get(2 * i + 1));
        }
    }

    #[test]
    fn shifts() {
        let p = BitPoly::from_fn(200, |i| i % 3 == 0);
        let d = p.shifted_down(67);
        for i in 0..133 {
            assert_eq!(d.get(i), p.get(i + 67));
        }
        let mut z = BitPoly::zeros(200);
        z.xor_shifted(&d, 67);
        for i in 67..200 {
            assert_eq!(z.get(i), p.get(i));
        }
    }

    #[test]
    fn substitute_general_exponent() {
        let p = poly(&[1, 1, 1]);
        let s = p.substitute(3, 10);
        let got: Vec<usize> = s.ones().collect();
        assert_eq!(got, vec![0, 3, 6]);
        let s = p.substitute(4, 6);
        assert_eq!(s.ones().collect::<Vec<_>>(), vec![0, 4]);
    }

    #[test]
    fn reversion_of_x_plus_x2() {
        // V = X + V^2 gives X + X^2 + X^4 + X^8
        let u = poly(&[0, 1, 1, 0, 0, 0, 0, 0, 0]);
        let v = reversion_newton(&u, 9);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![1, 2, 4, 8]);
    }

    fn arb_poly(max: usize) -> impl Strategy<Value = BitPoly> {
        prop::collection::vec(any::<bool>(), 1..max)
            .prop_map(|bits| BitPoly::from_fn(bits.len(), |i| bits[i]))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn karatsuba_matches_schoolbook(a in arb_poly(5000), b in arb_poly(5000)) {
            let n = a.len() + b.len();
            prop_assert_eq!(mul_trunc(&a, &b, n), mul_naive(&a, &b, n));
        }

        #[test]
        fn soft_and_dispatched_base_agree(a in prop::collection::vec(any::<u64>(), 1..8),
                                          b in prop::collection::vec(any::<u64>(), 1..8)) {
            let mut x = vec![0; a.len() + b.len()];
            let mut y = vec![0; a.len() + b.len()];
            base_mul_soft(&a, &b, &mut x);
            base_mul(&a, &b, &mut y);
            prop_assert_eq!(x, y);
        }

        #[test]
        fn compose_matches_horner(u in arb_poly(700), v in arb_poly(700)) {
            let mut v = v;
            if v.len() > 0 { v.set(0, false); }
            let n = u.len().min(v.len());
            let direct = horner(&u.resized(n), &v.resized(n), n, n);
            prop_assert_eq!(compose(&u, &v, n), direct);
        }

        #[test]
        fn inverse_is_inverse(a in arb_poly(3000)) {
            let mut a = a;
            a.set(0, true);
            let n = a.len();
            let g = inverse(&a, n);
            let mut one = BitPoly::zeros(n);
            one.set(0, true);
            prop_assert_eq!(mul_trunc(&a, &g, n), one);
        }

        #[test]
        fn reversion_is_two_sided(u in arb_poly(2000)) {
            let mut u = u;
            let n = u.len().max(2);
            u = u.resized(n);
            u.set(0, false);
            u.set(1, true);
            let v = reversion_newton(&u, n);
            let mut x = BitPoly::zeros(n);
            x.set(1, true);
            prop_assert_eq!(compose(&u, &v, n), x.clone());
            prop_assert_eq!(compose(&v, &u, n), x);
        }
    }
}
