//! Dense coefficient-vector arithmetic over an abstract exact field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub(crate) trait Ring {
    type E: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn from_u64(&self, n: u64) -> Self::E;

    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }

    fn neg(&self, a: &Self::E) -> Self::E {
        self.sub(&self.zero(), a)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeField(pub u64);

impl Ring for PrimeField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.0 as u128 - *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *a % self.0;
        let mut exp = self.0 - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        Some(acc)
    }
    fn from_u64(&self, n: u64) -> u64 {
        n % self.0
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Rationals;

impl Ring for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_u64(&self, n: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn reduce_rational(p: u64, q: &BigRational) -> Option<u64> {
    let f = PrimeField(p);
    let modp = |x: &BigInt| -> u64 {
        let m = BigInt::from(p);
        let mut r = x % &m;
        if r.is_negative() {
            r += &m;
        }
        u64::try_from(r).expect("residue fits in u64")
    };
    let num = modp(q.numer());
    let den = f.inv(&modp(q.denom()))?;
    Some(f.mul(&num, &den))
}

pub(crate) fn mul_trunc<R: Ring>(r: &R, a: &[R::E], b: &[R::E], n: usize) -> Vec<R::E> {
    let mut out = vec![r.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if r.is_zero(y) {
                continue;
            }
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    out
}

/// Horner evaluation of `outer(inner) mod X^n`.
pub(crate) fn compose<R: Ring>(r: &R, outer: &[R::E], inner: &[R::E], n: usize) -> Vec<R::E> {
    let d = outer
        .iter()
        .take(n)
        .rposition(|c| !r.is_zero(c))
        .map_or(0, |i| i + 1);
    let mut acc = vec![r.zero(); n];
    for i in (0..d).rev() {
        acc = mul_trunc(r, &acc, inner, n);
        if n > 0 {
            acc[0] = r.add(&acc[0], &outer[i]);
        }
    }
    acc
}

pub(crate) fn inverse<R: Ring>(r: &R, a: &[R::E], n: usize) -> Option<Vec<R::E>> {
    let c0 = r.inv(a.first()?)?;
    let mut g = vec![r.zero(); n];
    for k in 0..n {
        // sum_{j<=k} a_j g_{k-j} = [k == 0]
        let mut s = if k == 0 { r.one() } else { r.zero() };
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            s = r.sub(&s, &r.mul(&a[j], &g[k - j]));
        }
        g[k] = r.mul(&s, &c0);
    }
    Some(g)
}

pub(crate) fn derivative<R: Ring>(r: &R, a: &[R::E]) -> Vec<R::E> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| r.mul(&r.from_u64(i as u64), c))
        .collect()
}

/// Reversion by solving for one coefficient at a time.
///
/// With `v_1, ..., v_{n-1}` fixed, `[X^n] u(v) = u_1 v_n + [X^n] sum_{k>=2} u_k v^k`
/// and the second term no longer depends on `v_n`. The table `pow[k][m]`
/// holds `[X^m] v^k` and is extended one column per step.
pub(crate) fn reversion_incremental<R: Ring>(r: &R, u: &[R::E], n: usize) -> Option<Vec<R::E>> {
    let get = |i: usize| u.get(i).cloned().unwrap_or_else(|| r.zero());
    if !r.is_zero(&get(0)) {
        return None;
    }
    let u1_inv = r.inv(&get(1))?;
    let mut v = vec![r.zero(); n];
    if n < 2 {
        return Some(v);
    }
    v[1] = u1_inv.clone();
    // pow[k] for k >= 1 stores [X^m] v^k for m < n
    let mut pow: Vec<Vec<R::E>> = vec![Vec::new(); n];
    pow[1] = v.clone();
    for row in pow.iter_mut().skip(2) {
        *row = vec![r.zero(); n];
    }
    // [X^k] v^k = v_1^k
    for k in 2..n {
        pow[k][k] = r.mul(&pow[k - 1][k - 1], &v[1]);
    }
    for m in 2..n {
        // fill [X^m] v^k for k in 2..m from v_1..v_{m-1}
        for k in 2..m {
            let mut s = r.zero();
            for i in 1..=(m - k + 1) {
                s = r.add(&s, &r.mul(&v[i], &pow[k - 1][m - i]));
            }
            pow[k][m] = s;
        }
        let mut rest = r.zero();
        for k in 2..=m {
            let uk = get(k);
            if !r.is_zero(&uk) {
                rest = r.add(&rest, &r.mul(&uk, &pow[k][m]));
            }
        }
        v[m] = r.mul(&r.neg(&rest), &u1_inv);
        pow[1][m] = v[m].clone();
    }
    Some(v)
}

/// Reversion by Newton lifting with doubling precision.
pub(crate) fn reversion_newton<R: Ring>(r: &R, u: &[R::E], n: usize) -> Option<Vec<R::E>> {
    let get = |i: usize| u.get(i).cloned().unwrap_or_else(|| r.zero());
    if !r.is_zero(&get(0)) {
        return None;
    }
    let u1_inv = r.inv(&get(1))?;
    let mut v = vec![r.zero(); n.min(2)];
    if n >= 2 {
        v[1] = u1_inv;
    }
    let du = derivative(r, u);
    let mut prec = n.min(2);
    while prec < n {
        let next = (2 * prec).min(n);
        v.resize(next, r.zero());
        let ut: Vec<R::E> = (0..next).map(get).collect();
        let mut residual = compose(r, &ut, &v, next);
        residual[1] = r.sub(&residual[1], &r.one());
        let d = compose(r, &du[..du.len().min(next)], &v, next);
        let dinv = inverse(r, &d, next)?;
        let delta = mul_trunc(r, &residual, &dinv, next);
        for (vi, di) in v.iter_mut().zip(&delta) {
            *vi = r.sub(vi, di);
        }
        prec = next;
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField(7);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn rational_reduction_mod_p() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(reduce_rational(7, &half), Some(4));
        assert_eq!(reduce_rational(2, &half), None);
        assert_eq!(reduce_rational(5, &q(-1)), Some(4));
    }

    #[test]
    fn exp_log_style_reversion_over_rationals() {
        // u = X/(1-X) = X + X^2 + ... has inverse X/(1+X) = X - X^2 + X^3 - ...
        let u: Vec<BigRational> = (0..10).map(|i| if i == 0 { q(0) } else { q(1) }).collect();
        let inc = reversion_incremental(&Rationals, &u, 10).unwrap();
        let newton = reversion_newton(&Rationals, &u, 10).unwrap();
        let expected: Vec<BigRational> = (0..10)
            .map(|i| {
                if i == 0 {
                    q(0)
                } else if i % 2 == 1 {
                    q(1)
                } else {
                    q(-1)
                }
            })
            .collect();
        assert_eq!(inc, expected);
        assert_eq!(newton, expected);
    }

    #[test]
    fn incremental_and_newton_agree_over_f5() {
        let f = PrimeField(5);
        let u: Vec<u64> = vec![0, 3, 1, 4, 0, 2, 2, 1, 0, 3, 1, 1, 4, 0, 2, 3, 1];
        let n = u.len();
        let a = reversion_incremental(&f, &u, n).unwrap();
        let b = reversion_newton(&f, &u, n).unwrap();
        assert_eq!(a, b);
        let mut x = vec![0; n];
        x[1] = 1;
        assert_eq!(compose(&f, &u, &a, n), x);
        assert_eq!(compose(&f, &a, &u, n), x);
    }

    #[test]
    fn reversion_rejects_bad_input() {
        let f = PrimeField(3);
        assert!(reversion_incremental(&f, &[1, 1, 0], 3).is_none());
        assert!(reversion_incremental(&f, &[0, 0, 1], 3).is_none());
        assert!(reversion_newton(&f, &[0, 3, 1], 3).is_none());
    }
}
