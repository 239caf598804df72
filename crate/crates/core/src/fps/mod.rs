//! Truncated univariate power series with exact coefficients.
//!
//! A [`Series`] is known modulo `X^trunc`. Coefficients live either in a
//! prime field `F_p` or in the rationals. Over `F_2` the coefficients are
//! bit-packed, and multiplication, composition and reversion use
//! dedicated kernels (see `gf2`).
//!
//! Every binary operation returns a series truncated at the minimum of the
//! input truncations. Nothing is silently zero-extended.

mod dense;
mod gf2;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use dense::{PrimeField, Rationals, Ring};
use gf2::BitPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rational,
}

impl Field {
    pub const GF2: Field = Field::Prime(2);
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("truncation order must be positive")]
    EmptyTruncation,
    #[error("inner series has a nonzero constant term")]
    NonzeroInnerConstant,
    #[error("series has a nonzero constant term and no compositional inverse")]
    NonzeroConstantTerm,
    #[error("linear coefficient is not invertible")]
    LinearCoefficientNotInvertible,
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("denominator has zero constant term")]
    ZeroDenominatorConstant,
    #[error("bound {bound} exceeds available truncation {available}")]
    BoundExceedsTruncation { bound: usize, available: usize },
    #[error("coefficient {0} does not reduce into {1}")]
    NotInField(String, Field),
    #[error("csv: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeffs {
    Gf2(BitPoly),
    Prime { p: u64, values: Vec<u64> },
    Rational(Vec<BigRational>),
}

/// A power series known modulo `X^trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Coeffs,
}

/// Algorithm used by [`Series::reversion_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReversionMethod {
    /// Solve `[X^n] u(v) = 0` for `v_n` one coefficient at a time.
    Incremental,
    /// Newton lifting with doubling precision.
    Newton,
    /// Newton over `F_2`, incremental elsewhere.
    #[default]
    Auto,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Series {
    pub fn zero(field: Field, trunc: usize) -> Result<Series> {
        Self::from_residues(field, &vec![0; trunc])
    }

    pub fn one(field: Field, trunc: usize) -> Result<Series> {
        Self::monomial(field, 0, trunc)
    }

    /// The series `X`.
    pub fn x(field: Field, trunc: usize) -> Result<Series> {
        Self::monomial(field, 1, trunc)
    }

    pub fn monomial(field: Field, exponent: usize, trunc: usize) -> Result<Series> {
        let mut v = vec![0u64; trunc];
        if exponent < trunc {
            v[exponent] = 1;
        }
        Self::from_residues(field, &v)
    }

    /// Build a series over `F_2` from 0/1 values.
    pub fn from_bits(bits: &[u8]) -> Series {
        Series::gf2_from_fn(bits.len(), |i| bits[i] & 1 == 1)
    }

    pub fn gf2_from_fn(trunc: usize, f: impl FnMut(usize) -> bool) -> Series {
        Series {
            coeffs: Coeffs::Gf2(BitPoly::from_fn(trunc, f)),
        }
    }

    /// Build a series from nonnegative integer coefficients, reduced into
    /// `field`.
    pub fn from_residues(field: Field, values: &[u64]) -> Result<Series> {
        if values.is_empty() {
            return Err(SeriesError::EmptyTruncation);
        }
        let coeffs = match field {
            Field::Prime(2) => Coeffs::Gf2(BitPoly::from_fn(values.len(), |i| values[i] & 1 == 1)),
            Field::Prime(p) => {
                check_prime(p)?;
                Coeffs::Prime {
                    p,
                    values: values.iter().map(|v| v % p).collect(),
                }
            }
            Field::Rational => Coeffs::Rational(
                values
                    .iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v)))
                    .collect(),
            ),
        };
        Ok(Series { coeffs })
    }

    pub fn from_rationals(field: Field, values: &[BigRational]) -> Result<Series> {
        if values.is_empty() {
            return Err(SeriesError::EmptyTruncation);
        }
        match field {
            Field::Rational => Ok(Series {
                coeffs: Coeffs::Rational(values.to_vec()),
            }),
            Field::Prime(p) => {
                check_prime(p)?;
                let residues = values
                    .iter()
                    .map(|q| {
                        dense::reduce_rational(p, q)
                            .ok_or_else(|| SeriesError::NotInField(q.to_string(), field))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::from_residues(field, &residues)
            }
        }
    }

    pub fn from_poly(field: Field, poly: &Poly, trunc: usize) -> Result<Series> {
        let mut v = vec![BigRational::zero(); trunc];
        for (&e, c) in &poly.terms {
            if e < trunc {
                v[e] = c.clone();
            }
        }
        Self::from_rationals(field, &v)
    }

    pub fn field(&self) -> Field {
        match &self.coeffs {
            Coeffs::Gf2(_) => Field::GF2,
            Coeffs::Prime { p, .. } => Field::Prime(*p),
            Coeffs::Rational(_) => Field::Rational,
        }
    }

    pub fn trunc(&self) -> usize {
        match &self.coeffs {
            Coeffs::Gf2(b) => b.len(),
            Coeffs::Prime { values, .. } => values.len(),
            Coeffs::Rational(v) => v.len(),
        }
    }

    /// Coefficient of `X^i`, with prime-field residues lifted to `0..p`.
    pub fn coeff(&self, i: usize) -> BigRational {
        assert!(
            i < self.trunc(),
            "coefficient {i} beyond truncation {}",
            self.trunc()
        );
        match &self.coeffs {
            Coeffs::Gf2(b) => int(i64::from(b.get(i))),
            Coeffs::Prime { values, .. } => BigRational::from_integer(BigInt::from(values[i])),
            Coeffs::Rational(v) => v[i].clone(),
        }
    }

    /// Residue of the coefficient of `X^i`; `None` over the rationals.
    pub fn residue(&self, i: usize) -> Option<u64> {
        assert!(
            i < self.trunc(),
            "coefficient {i} beyond truncation {}",
            self.trunc()
        );
        match &self.coeffs {
            Coeffs::Gf2(b) => Some(u64::from(b.get(i))),
            Coeffs::Prime { values, .. } => Some(values[i]),
            Coeffs::Rational(_) => None,
        }
    }

    /// All residues; `None` over the rationals.
    pub fn residues(&self) -> Option<Vec<u64>> {
        match &self.coeffs {
            Coeffs::Gf2(b) => Some((0..b.len()).map(|i| u64::from(b.get(i))).collect()),
            Coeffs::Prime { values, .. } => Some(values.clone()),
            Coeffs::Rational(_) => None,
        }
    }

    /// Coefficients as 0/1 values. Only meaningful over `F_2`.
    pub fn bits(&self) -> Option<Vec<u8>> {
        match &self.coeffs {
            Coeffs::Gf2(b) => Some((0..b.len()).map(|i| u8::from(b.get(i))).collect()),
            _ => None,
        }
    }

    pub fn rationals(&self) -> Vec<BigRational> {
        (0..self.trunc()).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        match &self.coeffs {
            Coeffs::Gf2(b) => b.valuation(),
            Coeffs::Prime { values, .. } => values.iter().position(|&v| v != 0),
            Coeffs::Rational(v) => v.iter().position(|c| !c.is_zero()),
        }
    }

    /// Positions of nonzero coefficients, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        match &self.coeffs {
            Coeffs::Gf2(b) => b.ones().collect(),
            Coeffs::Prime { values, .. } => (0..values.len()).filter(|&i| values[i] != 0).collect(),
            Coeffs::Rational(v) => (0..v.len()).filter(|&i| !v[i].is_zero()).collect(),
        }
    }

    pub fn count_nonzero(&self) -> usize {
        match &self.coeffs {
            Coeffs::Gf2(b) => b.count_ones(),
            _ => self.support().len(),
        }
    }

    /// Drop coefficients at and above `X^n`; `n` larger than the current
    /// truncation is an error.
    pub fn truncated(&self, n: usize) -> Result<Series> {
        if n > self.trunc() {
            return Err(SeriesError::BoundExceedsTruncation {
                bound: n,
                available: self.trunc(),
            });
        }
        if n == 0 {
            return Err(SeriesError::EmptyTruncation);
        }
        Ok(self.resized(n))
    }

    fn resized(&self, n: usize) -> Series {
        let coeffs = match &self.coeffs {
            Coeffs::Gf2(b) => Coeffs::Gf2(b.resized(n)),
            Coeffs::Prime { p, values } => {
                let mut v = values.clone();
                v.resize(n, 0);
                Coeffs::Prime { p: *p, values: v }
            }
            Coeffs::Rational(v) => {
                let mut v = v.clone();
                v.resize(n, BigRational::zero());
                Coeffs::Rational(v)
            }
        };
        Series { coeffs }
    }

    fn same_field(&self, other: &Series) -> Result<()> {
        if self.field() != other.field() {
            return Err(SeriesError::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.same_field(other)?;
        let n = self.trunc().min(other.trunc());
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Gf2(a), Coeffs::Gf2(b)) => {
                let mut r = a.resized(n);
                r.xor_assign(b);
                Coeffs::Gf2(r)
            }
            (Coeffs::Prime { p, values: a }, Coeffs::Prime { values: b, .. }) => {
                let f = PrimeField(*p);
                Coeffs::Prime {
                    p: *p,
                    values: (0..n).map(|i| f.add(&a[i], &b[i])).collect(),
                }
            }
            (Coeffs::Rational(a), Coeffs::Rational(b)) => {
                Coeffs::Rational((0..n).map(|i| &a[i] + &b[i]).collect())
            }
            _ => unreachable!("fields checked"),
        };
        Ok(Series { coeffs })
    }

    pub fn neg(&self) -> Series {
        let coeffs = match &self.coeffs {
            Coeffs::Gf2(b) => Coeffs::Gf2(b.clone()),
            Coeffs::Prime { p, values } => {
                let f = PrimeField(*p);
                Coeffs::Prime {
                    p: *p,
                    values: values.iter().map(|v| f.neg(v)).collect(),
                }
            }
            Coeffs::Rational(v) => Coeffs::Rational(v.iter().map(|c| -c).collect()),
        };
        Series { coeffs }
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.same_field(other)?;
        let n = self.trunc().min(other.trunc());
        Ok(self.mul_to(other, n))
    }

    fn mul_to(&self, other: &Series, n: usize) -> Series {
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Gf2(a), Coeffs::Gf2(b)) => Coeffs::Gf2(gf2::mul_trunc(a, b, n)),
            (Coeffs::Prime { p, values: a }, Coeffs::Prime { values: b, .. }) => Coeffs::Prime {
                p: *p,
                values: dense::mul_trunc(&PrimeField(*p), a, b, n),
            },
            (Coeffs::Rational(a), Coeffs::Rational(b)) => {
                Coeffs::Rational(dense::mul_trunc(&Rationals, a, b, n))
            }
            _ => unreachable!("fields checked"),
        };
        Series { coeffs }
    }

    /// Multiply by a polynomial. The result has truncation `n`, which may
    /// exceed `self.trunc()` by at most the valuation of `poly`.
    pub fn mul_poly(&self, poly: &Poly, n: usize) -> Result<Series> {
        let available = self.trunc() + poly.valuation().unwrap_or(usize::MAX / 2);
        if n > available {
            return Err(SeriesError::BoundExceedsTruncation {
                bound: n,
                available,
            });
        }
        if n == 0 {
            return Err(SeriesError::EmptyTruncation);
        }
        let field = self.field();
        let coeffs = match &self.coeffs {
            Coeffs::Gf2(b) => {
                let mut out = BitPoly::zeros(n);
                for (&e, c) in &poly.terms {
                    if dense::reduce_rational(2, c)
                        .ok_or_else(|| SeriesError::NotInField(c.to_string(), field))?
                        == 1
                    {
                        out.xor_shifted(b, e);
                    }
                }
                Coeffs::Gf2(out)
            }
            Coeffs::Prime { p, values } => {
                let f = PrimeField(*p);
                let mut out = vec![0u64; n];
                for (&e, c) in &poly.terms {
                    let c = dense::reduce_rational(*p, c)
                        .ok_or_else(|| SeriesError::NotInField(c.to_string(), field))?;
                    for (i, v) in values.iter().enumerate() {
                        if i + e >= n {
                            break;
                        }
                        out[i + e] = f.add(&out[i + e], &f.mul(&c, v));
                    }
                }
                Coeffs::Prime { p: *p, values: out }
            }
            Coeffs::Rational(values) => {
                let mut out = vec![BigRational::zero(); n];
                for (&e, c) in &poly.terms {
                    for (i, v) in values.iter().enumerate() {
                        if i + e >= n {
                            break;
                        }
                        if !v.is_zero() {
                            out[i + e] += c * v;
                        }
                    }
                }
                Coeffs::Rational(out)
            }
        };
        Ok(Series { coeffs })
    }

    /// `S(X^e) mod X^n`; requires `n <= e * trunc`.
    pub fn substitute(&self, e: usize, n: usize) -> Result<Series> {
        assert!(e >= 1, "substitution exponent must be positive");
        let available = self.trunc().saturating_mul(e);
        if n > available {
            return Err(SeriesError::BoundExceedsTruncation {
                bound: n,
                available,
            });
        }
        if n == 0 {
            return Err(SeriesError::EmptyTruncation);
        }
        let coeffs = match &self.coeffs {
            Coeffs::Gf2(b) => Coeffs::Gf2(b.substitute(e, n)),
            Coeffs::Prime { p, values } => {
                let mut out = vec![0u64; n];
                for (i, v) in values.iter().enumerate() {
                    if i * e >= n {
                        break;
                    }
                    out[i * e] = *v;
                }
                Coeffs::Prime { p: *p, values: out }
            }
            Coeffs::Rational(values) => {
                let mut out = vec![BigRational::zero(); n];
                for (i, v) in values.iter().enumerate() {
                    if i * e >= n {
                        break;
                    }
                    out[i * e] = v.clone();
                }
                Coeffs::Rational(out)
            }
        };
        Ok(Series { coeffs })
    }

    /// Truncation order up to which `self^e` is determined.
    pub fn power_precision(&self, e: u64) -> usize {
        let n = self.trunc();
        if let Field::Prime(p) = self.field() {
            if is_power_of(e, p) {
                return n.saturating_mul(e as usize);
            }
        }
        if e == 0 {
            return usize::MAX;
        }
        match self.valuation() {
            Some(v) => n.saturating_add((e as usize - 1).saturating_mul(v)),
            None => usize::MAX,
        }
    }

    /// `self^e mod X^n`. Powers of the characteristic go through the
    /// Frobenius identity `S^p = S(X^p)`.
    pub fn pow_to(&self, e: u64, n: usize) -> Result<Series> {
        let available = self.power_precision(e);
        if n > available {
            return Err(SeriesError::BoundExceedsTruncation {
                bound: n,
                available,
            });
        }
        if n == 0 {
            return Err(SeriesError::EmptyTruncation);
        }
        if e == 0 {
            return Series::one(self.field(), n);
        }
        if let Field::Prime(p) = self.field() {
            if is_power_of(e, p) {
                return self.substitute(e as usize, n);
            }
        }
        let Some(v) = self.valuation() else {
            return Series::zero(self.field(), n);
        };
        let shift = v.saturating_mul(e as usize);
        if shift >= n {
            return Series::zero(self.field(), n);
        }
        let m = n - shift;
        let mut base = self.shifted_down(v).resized(m);
        let mut acc = Series::one(self.field(), m)?;
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_to(&base, m);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_to(&base, m);
            }
        }
        acc.mul_poly(&Poly::x_pow(shift), n)
    }

    pub fn pow(&self, e: u64) -> Series {
        self.pow_to(e, self.trunc())
            .expect("power within own truncation")
    }

    fn shifted_down(&self, k: usize) -> Series {
        let coeffs = match &self.coeffs {
            Coeffs::Gf2(b) => Coeffs::Gf2(b.shifted_down(k)),
            Coeffs::Prime { p, values } => Coeffs::Prime {
                p: *p,
                values: values[k.min(values.len())..].to_vec(),
            },
            Coeffs::Rational(v) => Coeffs::Rational(v[k.min(v.len())..].to_vec()),
        };
        Series { coeffs }
    }

    /// `self(inner) mod X^min(trunc)`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.same_field(inner)?;
        if inner.valuation() == Some(0) {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let n = self.trunc().min(inner.trunc());
        let coeffs = match (&self.coeffs, &inner.coeffs) {
            (Coeffs::Gf2(u), Coeffs::Gf2(v)) => Coeffs::Gf2(gf2::compose(u, v, n)),
            (Coeffs::Prime { p, values: u }, Coeffs::Prime { values: v, .. }) => Coeffs::Prime {
                p: *p,
                values: dense::compose(&PrimeField(*p), u, v, n),
            },
            (Coeffs::Rational(u), Coeffs::Rational(v)) => {
                Coeffs::Rational(dense::compose(&Rationals, u, v, n))
            }
            _ => unreachable!("fields checked"),
        };
        Ok(Series { coeffs })
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Series> {
        let n = self.trunc();
        let coeffs = match &self.coeffs {
            Coeffs::Gf2(b) => {
                if !b.get(0) {
                    return Err(SeriesError::NotInvertible);
                }
                Coeffs::Gf2(gf2::inverse(b, n))
            }
            Coeffs::Prime { p, values } => Coeffs::Prime {
                p: *p,
                values: dense::inverse(&PrimeField(*p), values, n)
                    .ok_or(SeriesError::NotInvertible)?,
            },
            Coeffs::Rational(v) => Coeffs::Rational(
                dense::inverse(&Rationals, v, n).ok_or(SeriesError::NotInvertible)?,
            ),
        };
        Ok(Series { coeffs })
    }

    /// The compositional inverse `v` with `self(v) = v(self) = X mod X^trunc`.
    pub fn reversion(&self) -> Result<Series> {
        self.reversion_with(ReversionMethod::Auto)
    }

    pub fn reversion_with(&self, method: ReversionMethod) -> Result<Series> {
        let n = self.trunc();
        if self.valuation() == Some(0) {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        if n >= 2 && self.coeff(1).is_zero() {
            return Err(SeriesError::LinearCoefficientNotInvertible);
        }
        let coeffs = match (&self.coeffs, method) {
            (Coeffs::Gf2(u), ReversionMethod::Newton | ReversionMethod::Auto) => {
                Coeffs::Gf2(gf2::reversion_newton(u, n))
            }
            (Coeffs::Gf2(u), ReversionMethod::Incremental) => {
                let dense: Vec<u64> = (0..n).map(|i| u64::from(u.get(i))).collect();
                let v = dense::reversion_incremental(&PrimeField(2), &dense, n)
                    .ok_or(SeriesError::LinearCoefficientNotInvertible)?;
                Coeffs::Gf2(BitPoly::from_fn(n, |i| v[i] == 1))
            }
            (Coeffs::Prime { p, values }, m) => Coeffs::Prime {
                p: *p,
                values: run_dense_reversion(&PrimeField(*p), values, n, m)?,
            },
            (Coeffs::Rational(values), m) => {
                Coeffs::Rational(run_dense_reversion(&Rationals, values, n, m)?)
            }
        };
        Ok(Series { coeffs })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coeff\n");
        for i in 0..self.trunc() {
            out.push_str(&format!("{i},{}\n", fmt_rational(&self.coeff(i))));
        }
        out
    }

    pub fn from_csv(field: Field, text: &str) -> Result<Series> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next().map(str::trim) {
            Some("n,coeff") => {}
            other => return Err(SeriesError::Csv(format!("bad header {other:?}"))),
        }
        let mut values = Vec::new();
        for (expected, line) in lines.enumerate() {
            let (idx, val) = line
                .trim()
                .split_once(',')
                .ok_or_else(|| SeriesError::Csv(format!("bad line {line:?}")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| SeriesError::Csv(format!("bad index {idx:?}")))?;
            if idx != expected {
                return Err(SeriesError::Csv(format!(
                    "index {idx}, expected {expected}"
                )));
            }
            values.push(parse_rational(val).map_err(SeriesError::Csv)?);
        }
        Series::from_rationals(field, &values)
    }
}

fn run_dense_reversion<R: Ring>(
    r: &R,
    values: &[R::E],
    n: usize,
    method: ReversionMethod,
) -> Result<Vec<R::E>> {
    let v = match method {
        ReversionMethod::Newton => dense::reversion_newton(r, values, n),
        ReversionMethod::Incremental | ReversionMethod::Auto => {
            dense::reversion_incremental(r, values, n)
        }
    };
    v.ok_or(SeriesError::LinearCoefficientNotInvertible)
}

fn check_prime(p: u64) -> Result<()> {
    if !dense::is_prime(p) || p >= 1 << 32 {
        return Err(SeriesError::InvalidPrime(p));
    }
    Ok(())
}

fn is_power_of(mut e: u64, p: u64) -> bool {
    if e == 0 {
        return false;
    }
    while e % p == 0 {
        e /= p;
    }
    e == 1
}

/// Integers print bare, other rationals as `p/q`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| format!("{t:?}: {e}"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(format!("{s:?}: zero denominator"));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

/// A polynomial with rational coefficients, stored sparsely.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<usize, BigRational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::x_pow(0)
    }

    pub fn x_pow(e: usize) -> Poly {
        Poly::monomial(e, 1)
    }

    pub fn monomial(e: usize, c: i64) -> Poly {
        Poly::from_ints(&[(e, c)])
    }

    /// `from_ints(&[(3, 1), (2, -1), (1, 1)])` is `X^3 - X^2 + X`.
    pub fn from_ints(terms: &[(usize, i64)]) -> Poly {
        let mut p = Poly::zero();
        for &(e, c) in terms {
            p.add_term(e, int(c));
        }
        p
    }

    pub fn add_term(&mut self, e: usize, c: BigRational) {
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: usize) -> BigRational {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::zero();
        for (e, x) in self.terms() {
            out.add_term(e, x * c);
        }
        out
    }
}

/// How a series enters one term of a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Argument {
    /// `S(X^e)`
    Substitute(usize),
    /// `S^e`
    Power(u64),
}

/// `multiplier(X) * S(X^e)` or `multiplier(X) * S^e`.
#[derive(Clone, Debug)]
pub struct Term<'a> {
    pub series: &'a Series,
    pub argument: Argument,
    pub multiplier: Poly,
}

impl<'a> Term<'a> {
    pub fn new(series: &'a Series, argument: Argument, multiplier: Poly) -> Self {
        Term {
            series,
            argument,
            multiplier,
        }
    }

    /// Truncation order up to which this term is determined.
    pub fn precision(&self) -> usize {
        let Some(a) = self.multiplier.valuation() else {
            return usize::MAX;
        };
        let inner = match self.argument {
            Argument::Substitute(e) => self.series.trunc().saturating_mul(e),
            Argument::Power(e) => self.series.power_precision(e),
        };
        inner.saturating_add(a)
    }

    fn evaluate(&self, n: usize) -> Result<Series> {
        let field = self.series.field();
        let Some(a) = self.multiplier.valuation() else {
            return Series::zero(field, n);
        };
        if a >= n {
            return Series::zero(field, n);
        }
        let m = n - a;
        let inner = match self.argument {
            Argument::Substitute(e) => self.series.substitute(e, m)?,
            Argument::Power(e) => self.series.pow_to(e, m)?,
        };
        inner.mul_poly(&self.multiplier, n)
    }
}

/// The sum of `terms` modulo `X^n`.
pub fn relation_residual(terms: &[Term<'_>], n: usize) -> Result<Series> {
    let first = terms.first().ok_or(SeriesError::EmptyTruncation)?;
    let field = first.series.field();
    let available = terms
        .iter()
        .map(Term::precision)
        .min()
        .unwrap_or(usize::MAX);
    if n > available {
        return Err(SeriesError::BoundExceedsTruncation {
            bound: n,
            available,
        });
    }
    let mut acc = Series::zero(field, n)?;
    for t in terms {
        if t.series.field() != field {
            return Err(SeriesError::FieldMismatch(field, t.series.field()));
        }
        acc = acc.add(&t.evaluate(n)?)?;
    }
    Ok(acc)
}

/// True iff the combination of `terms` vanishes modulo `X^n`.
pub fn check_relation(terms: &[Term<'_>], n: usize) -> Result<bool> {
    Ok(relation_residual(terms, n)?.is_zero())
}

pub fn series_add(a: &Series, b: &Series) -> Result<Series> {
    a.add(b)
}

pub fn series_mul(a: &Series, b: &Series) -> Result<Series> {
    a.mul(b)
}

pub fn series_compose(outer: &Series, inner: &Series) -> Result<Series> {
    outer.compose(inner)
}

pub fn series_reversion(u: &Series) -> Result<Series> {
    u.reversion()
}

/// The power series over the rationals with
/// `numerator = denominator * result mod X^n`.
pub fn rational_series(numerator: &Poly, denominator: &Poly, n: usize) -> Result<Series> {
    if n == 0 {
        return Err(SeriesError::EmptyTruncation);
    }
    let d0 = denominator.coeff(0);
    if d0.is_zero() {
        return Err(SeriesError::ZeroDenominatorConstant);
    }
    let d0_inv = d0.recip();
    let tail: Vec<(usize, &BigRational)> = denominator.terms().filter(|(e, _)| *e > 0).collect();
    let mut out: Vec<BigRational> = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = numerator.coeff(i);
        for &(e, c) in &tail {
            if e > i {
                break;
            }
            s -= c * &out[i - e];
        }
        out.push(s * &d0_inv);
    }
    Series::from_rationals(Field::Rational, &out)
}

/// Convert a small rational coefficient to `i64` when it is an integer.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf2(bits: &[u8]) -> Series {
        Series::from_bits(bits)
    }

    fn rat(values: &[i64]) -> Series {
        let v: Vec<BigRational> = values.iter().map(|&x| int(x)).collect();
        Series::from_rationals(Field::Rational, &v).unwrap()
    }

    #[test]
    fn char_two_cancellation() {
        let x = Series::x(Field::GF2, 8).unwrap();
        assert!(series_add(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn rational_addition() {
        let a = rat(&[1, 1, 0]);
        let b = rat(&[1, -1, 0]);
        assert_eq!(series_add(&a, &b).unwrap(), rat(&[2, 0, 0]));
    }

    #[test]
    fn truncation_is_minimum() {
        let a = gf2(&[1, 1, 1, 1, 1]);
        let b = gf2(&[1, 0, 1]);
        assert_eq!(a.add(&b).unwrap().trunc(), 3);
        assert_eq!(a.mul(&b).unwrap().trunc(), 3);
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = gf2(&[1, 1]);
        let b = rat(&[1, 1]);
        assert_eq!(
            a.add(&b),
            Err(SeriesError::FieldMismatch(Field::GF2, Field::Rational))
        );
        let c = Series::from_residues(Field::Prime(3), &[0, 1]).unwrap();
        assert!(a.mul(&c).is_err());
        assert!(c.compose(&a).is_err());
    }

    #[test]
    fn frobenius_square_over_f2() {
        let a = gf2(&[1, 1, 0, 0, 0]);
        assert_eq!(a.mul(&a).unwrap(), gf2(&[1, 0, 1, 0, 0]));
        let one = Series::one(Field::GF2, 5).unwrap();
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn compose_examples() {
        let outer = gf2(&[0, 0, 1, 0, 0]);
        let inner = gf2(&[0, 1, 1, 0, 0]);
        assert_eq!(outer.compose(&inner).unwrap(), gf2(&[0, 0, 1, 0, 1]));
        let x = Series::x(Field::GF2, 5).unwrap();
        assert_eq!(inner.compose(&x).unwrap(), inner);
        assert_eq!(
            outer.compose(&gf2(&[1, 1, 0, 0, 0])),
            Err(SeriesError::NonzeroInnerConstant)
        );
    }

    #[test]
    fn reversion_examples() {
        let x = Series::x(Field::GF2, 9).unwrap();
        assert_eq!(x.reversion().unwrap(), x);
        let u = gf2(&[0, 1, 1, 0, 0, 0, 0, 0, 0]);
        let v = u.reversion().unwrap();
        assert_eq!(v.support(), vec![1, 2, 4, 8]);
        assert_eq!(u.reversion_with(ReversionMethod::Incremental).unwrap(), v);
    }

    #[test]
    fn reversion_errors() {
        let u = gf2(&[1, 1, 0]);
        assert_eq!(u.reversion(), Err(SeriesError::NonzeroConstantTerm));
        let u = gf2(&[0, 0, 1]);
        assert_eq!(
            u.reversion(),
            Err(SeriesError::LinearCoefficientNotInvertible)
        );
        let u = rat(&[0, 0, 1, 1]);
        assert_eq!(
            u.reversion(),
            Err(SeriesError::LinearCoefficientNotInvertible)
        );
    }

    #[test]
    fn rational_reversion_has_inverse_linear_term() {
        let u = rat(&[0, 2, 1, 0, 0, 0]);
        let v = u.reversion().unwrap();
        assert_eq!(v.coeff(1), BigRational::new(1.into(), 2.into()));
        let x = Series::x(Field::Rational, 6).unwrap();
        assert_eq!(u.compose(&v).unwrap(), x);
        assert_eq!(v.compose(&u).unwrap(), x);
        assert_eq!(u.reversion_with(ReversionMethod::Newton).unwrap(), v);
    }

    #[test]
    fn rational_series_examples() {
        let num = Poly::from_ints(&[(3, 1), (2, -1), (1, 1)]);
        let den = Poly::from_ints(&[(0, 1), (1, -1)]);
        let p = rational_series(&num, &den, 6).unwrap();
        assert_eq!(p, rat(&[0, 1, 0, 1, 1, 1]));
        let g = rational_series(&Poly::one(), &den, 4).unwrap();
        assert_eq!(g, rat(&[1, 1, 1, 1]));
        let alt = Poly::from_ints(&[(1, 1), (2, -1), (3, 1)]);
        assert_eq!(
            rational_series(&alt, &den, 6).unwrap(),
            rat(&[0, 1, 0, 1, 1, 1])
        );
        assert_eq!(
            rational_series(&Poly::one(), &Poly::x_pow(1), 4),
            Err(SeriesError::ZeroDenominatorConstant)
        );
    }

    #[test]
    fn relation_bound_errors() {
        let s = gf2(&[1, 0, 1, 1]);
        let terms = [Term::new(&s, Argument::Power(3), Poly::one())];
        assert!(matches!(
            check_relation(&terms, 5),
            Err(SeriesError::BoundExceedsTruncation {
                bound: 5,
                available: 4
            })
        ));
        // Frobenius powers are known further out
        let terms = [Term::new(&s, Argument::Power(4), Poly::one())];
        assert_eq!(terms[0].precision(), 16);
        assert!(!check_relation(&terms, 16).unwrap());
    }

    #[test]
    fn powers_agree_with_repeated_multiplication() {
        let s = Series::from_residues(Field::Prime(3), &[0, 1, 2, 0, 1, 1, 2, 0, 1, 2]).unwrap();
        let by_mul = s.mul(&s).unwrap().mul(&s).unwrap();
        assert_eq!(s.pow(3), by_mul);
        let by_mul5 = by_mul.mul(&s).unwrap().mul(&s).unwrap();
        assert_eq!(s.pow(5), by_mul5);
        let r = rat(&[1, 2, 3, 4]);
        assert_eq!(r.pow(2), r.mul(&r).unwrap());
    }

    #[test]
    fn csv_roundtrip() {
        let v = vec![int(0), BigRational::new(3.into(), 4.into()), int(-2)];
        let s = Series::from_rationals(Field::Rational, &v).unwrap();
        let text = s.to_csv();
        assert_eq!(text, "n,coeff\n0,0\n1,3/4\n2,-2\n");
        assert_eq!(Series::from_csv(Field::Rational, &text).unwrap(), s);
        assert!(Series::from_csv(Field::Rational, "n,value\n0,1\n").is_err());
    }

    #[test]
    fn prime_field_reduction() {
        let s = Series::from_residues(Field::Prime(5), &[7, 5, 3]).unwrap();
        assert_eq!(s.residues().unwrap(), vec![2, 0, 3]);
        assert_eq!(
            Series::from_residues(Field::Prime(4), &[1]),
            Err(SeriesError::InvalidPrime(4))
        );
    }

    fn arb_gf2(max: usize) -> impl Strategy<Value = Series> {
        prop::collection::vec(0u8..2, 2..max).prop_map(|b| Series::from_bits(&b))
    }

    fn arb_f3(max: usize) -> impl Strategy<Value = Series> {
        prop::collection::vec(0u64..3, 2..max)
            .prop_map(|v| Series::from_residues(Field::Prime(3), &v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn frobenius_powers_are_substitutions(s in arb_gf2(300), r in 1u32..4) {
            let e = 1u64 << r;
            let mut by_mul = s.clone();
            for _ in 0..e - 1 {
                by_mul = by_mul.mul(&s).unwrap();
            }
            prop_assert_eq!(s.pow(e), by_mul);
        }

        #[test]
        fn newton_and_incremental_agree_over_f2(s in arb_gf2(400)) {
            let mut b = s.bits().unwrap();
            b[0] = 0;
            b[1] = 1;
            let u = Series::from_bits(&b);
            let a = u.reversion_with(ReversionMethod::Newton).unwrap();
            let c = u.reversion_with(ReversionMethod::Incremental).unwrap();
            prop_assert_eq!(&a, &c);
            let x = Series::x(Field::GF2, b.len()).unwrap();
            prop_assert_eq!(u.compose(&a).unwrap(), x.clone());
            prop_assert_eq!(a.compose(&u).unwrap(), x);
        }

        #[test]
        fn reversion_two_sided_over_f3(s in arb_f3(40), lin in 1u64..3) {
            let mut v = s.residues().unwrap();
            v[0] = 0;
            v[1] = lin;
            let u = Series::from_residues(Field::Prime(3), &v).unwrap();
            let w = u.reversion().unwrap();
            let x = Series::x(Field::Prime(3), v.len()).unwrap();
            prop_assert_eq!(u.compose(&w).unwrap(), x.clone());
            prop_assert_eq!(w.compose(&u).unwrap(), x);
        }

        #[test]
        fn compose_is_associative(a in arb_gf2(200), b in arb_gf2(200), c in arb_gf2(200)) {
            let zero_const = |s: Series| {
                let mut v = s.bits().unwrap();
                v[0] = 0;
                Series::from_bits(&v)
            };
            let (a, b, c) = (zero_const(a), zero_const(b), zero_const(c));
            let lhs = a.compose(&b).unwrap().compose(&c).unwrap();
            let rhs = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rational_series_remultiplies(num in prop::collection::vec(-5i64..5, 1..6),
                                        den in prop::collection::vec(-5i64..5, 1..6),
                                        n in 1usize..30) {
            let mut den = den;
            if den[0] == 0 { den[0] = 1; }
            let np = Poly::from_ints(&num.iter().enumerate().map(|(i, &c)| (i, c)).collect::<Vec<_>>());
            let dp = Poly::from_ints(&den.iter().enumerate().map(|(i, &c)| (i, c)).collect::<Vec<_>>());
            let s = rational_series(&np, &dp, n).unwrap();
            let back = s.mul_poly(&dp, n).unwrap();
            prop_assert_eq!(back, Series::from_poly(Field::Rational, &np, n).unwrap());
        }
    }
}
