//! Exact scalars: finite sums `Σ_d (p_d + i q_d)·√d` with arbitrary-precision
//! rational coefficients and squarefree positive radicands `d`.
//!
//! The ring is closed under addition and multiplication (`√d·√e = g·√(de/g²)`
//! with `g = gcd(d,e)`), which is all the construction needs: the matrices of
//! the defining representations carry `√2` factors, bosonic ladder operators
//! carry `√(m+1)`, and basis normalisation carries `√(p/q)`. No general
//! multiplicative inverse is provided; division is restricted to nonzero
//! rationals and to single-term scalars `z·√d`.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::{Error, Result};

/// Arbitrary-precision rational number used throughout the crate.
pub type Rational = BigRational;

/// Shorthand for `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (decimal integers) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidScalar(format!("bad rational {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidScalar(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::InvalidScalar(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Renders a rational as `"p"` or `"p/q"` in lowest terms.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Factors `n = s²·d` with `d` squarefree; returns `(s, d)`.
fn squarefree_split(n: u64) -> (u64, u64) {
    let mut n = n;
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, d * n)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One canonical term `(re + i·im)·√rad` of a [`Surd`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub rad: u64,
    pub re: Rational,
    pub im: Rational,
}

impl Term {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Exact scalar in the ring `Σ_d (p_d + i q_d)·√d`.
///
/// Canonical form: radicands squarefree, strictly increasing, no all-zero
/// term. Equality of values is therefore structural equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Surd {
    terms: Vec<Term>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Surd::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Surd::from_rational(rat_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Surd::gaussian(r, Rational::zero())
    }

    /// The Gaussian rational `re + i·im` (radicand 1).
    pub fn gaussian(re: Rational, im: Rational) -> Self {
        let t = Term { rad: 1, re, im };
        if t.is_zero() {
            Surd::zero()
        } else {
            Surd { terms: vec![t] }
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Surd::gaussian(Rational::zero(), Rational::one())
    }

    /// `√n` for a positive integer `n` (reduced to squarefree form).
    pub fn sqrt_int(n: i64) -> Result<Self> {
        Surd::normalize([(n, Rational::one(), Rational::zero())])
    }

    /// `√r` for a nonnegative rational `r`: `√(p/q) = √(pq)/q`.
    pub fn sqrt_of_rational(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidScalar(format!(
                "square root of negative rational {r}"
            )));
        }
        if r.is_zero() {
            return Ok(Surd::zero());
        }
        let p = r
            .numer()
            .to_u64()
            .ok_or_else(|| Error::InvalidScalar("radicand numerator too large".into()))?;
        let q = r
            .denom()
            .to_u64()
            .ok_or_else(|| Error::InvalidScalar("radicand denominator too large".into()))?;
        let (s, d) = squarefree_split(p.checked_mul(q).ok_or_else(|| {
            Error::InvalidScalar("radicand product overflow".into())
        })?);
        // √(p/q) = √(pq)/q = (s/q)·√d
        let coeff = Rational::new(BigInt::from(s), BigInt::from(q));
        Ok(Surd {
            terms: vec![Term {
                rad: d,
                re: coeff,
                im: Rational::zero(),
            }],
        })
    }

    /// Builds a canonical scalar from raw `(radicand, re, im)` triples.
    ///
    /// Radicands need not be squarefree: each is factored as `s²·d` and the
    /// coefficient is scaled by `s`; like radicands merge; zero terms drop.
    /// A zero or negative radicand is rejected.
    pub fn normalize<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational, Rational)>,
    {
        let mut acc: std::collections::BTreeMap<u64, (Rational, Rational)> =
            std::collections::BTreeMap::new();
        for (rad, re, im) in raw {
            if rad <= 0 {
                return Err(Error::InvalidScalar(format!(
                    "radicand must be positive, got {rad}"
                )));
            }
            let (s, d) = squarefree_split(rad as u64);
            let scale = rat_int(s as i64);
            let e = acc.entry(d).or_insert_with(|| (Rational::zero(), Rational::zero()));
            e.0 += re * &scale;
            e.1 += im * scale;
        }
        Ok(Surd {
            terms: acc
                .into_iter()
                .filter(|(_, (re, im))| !(re.is_zero() && im.is_zero()))
                .map(|(rad, (re, im))| Term { rad, re, im })
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Complex conjugate (negates every imaginary part).
    pub fn conj(&self) -> Self {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    rad: t.rad,
                    re: t.re.clone(),
                    im: -t.im.clone(),
                })
                .collect(),
        }
    }

    /// Multiplication by the imaginary unit.
    pub fn mul_i(&self) -> Self {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    rad: t.rad,
                    re: -t.im.clone(),
                    im: t.re.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    rad: t.rad,
                    re: &t.re * r,
                    im: &t.im * r,
                })
                .collect(),
        }
    }

    /// Exact division by a nonzero rational.
    pub fn div_rational(&self, r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidScalar("division by zero".into()));
        }
        Ok(self.scale(&r.recip()))
    }

    /// Multiplicative inverse of a single-term scalar `(a+ib)·√d`:
    /// `1/((a+ib)√d) = (a-ib)/((a²+b²)·d) · √d`. Errors on zero or on a
    /// multi-term scalar (the ring keeps no general inverse).
    pub fn recip_single(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [t] => {
                let norm = (&t.re * &t.re + &t.im * &t.im) * rat_int(t.rad as i64);
                Ok(Surd {
                    terms: vec![Term {
                        rad: t.rad,
                        re: &t.re / &norm,
                        im: -&t.im / norm,
                    }],
                })
            }
            [] => Err(Error::InvalidScalar("inverse of zero".into())),
            _ => Err(Error::InvalidScalar(
                "inverse is only defined for single-term scalars".into(),
            )),
        }
    }

    /// `Some(r)` when the value is the plain rational `r` (no radical, no
    /// imaginary part); zero yields `Some(0)`.
    pub fn rational_part(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.rad == 1 && t.im.is_zero() => Some(t.re.clone()),
            _ => None,
        }
    }

    /// True when every term has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.im.is_zero())
    }

    /// Numeric evaluation as `(re, im)` double-precision parts.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for t in &self.terms {
            let s = (t.rad as f64).sqrt();
            re += t.re.to_f64().unwrap_or(f64::NAN) * s;
            im += t.im.to_f64().unwrap_or(f64::NAN) * s;
        }
        (re, im)
    }

    /// Absolute value of the numeric evaluation.
    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }

    fn add_signed(&self, other: &Surd, negate: bool) -> Surd {
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => {
                    if a.rad == b.rad {
                        let re = if negate { &a.re - &b.re } else { &a.re + &b.re };
                        let im = if negate { &a.im - &b.im } else { &a.im + &b.im };
                        let t = Term { rad: a.rad, re, im };
                        if !t.is_zero() {
                            out.push(t);
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    a.rad < b.rad
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!(),
            };
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else {
                let b = &other.terms[j];
                out.push(if negate {
                    Term {
                        rad: b.rad,
                        re: -b.re.clone(),
                        im: -b.im.clone(),
                    }
                } else {
                    b.clone()
                });
                j += 1;
            }
        }
        Surd { terms: out }
    }

    fn mul_ref(&self, other: &Surd) -> Surd {
        let mut acc: std::collections::BTreeMap<u64, (Rational, Rational)> =
            std::collections::BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let g = gcd(a.rad, b.rad);
                let rad = (a.rad / g) * (b.rad / g);
                let scale = rat_int(g as i64);
                // (a.re + i a.im)(b.re + i b.im) · g
                let re = (&a.re * &b.re - &a.im * &b.im) * &scale;
                let im = (&a.re * &b.im + &a.im * &b.re) * scale;
                let e = acc
                    .entry(rad)
                    .or_insert_with(|| (Rational::zero(), Rational::zero()));
                e.0 += re;
                e.1 += im;
            }
        }
        Surd {
            terms: acc
                .into_iter()
                .filter(|(_, (re, im))| !(re.is_zero() && im.is_zero()))
                .map(|(rad, (re, im))| Term { rad, re, im })
                .collect(),
        }
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    rad: t.rad,
                    re: -t.re.clone(),
                    im: -t.im.clone(),
                })
                .collect(),
        }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl:expr) => {
        impl $trait<&Surd> for &Surd {
            type Output = Surd;
            fn $method(self, rhs: &Surd) -> Surd {
                $impl(self, rhs)
            }
        }
        impl $trait<Surd> for Surd {
            type Output = Surd;
            fn $method(self, rhs: Surd) -> Surd {
                $impl(&self, &rhs)
            }
        }
        impl $trait<&Surd> for Surd {
            type Output = Surd;
            fn $method(self, rhs: &Surd) -> Surd {
                $impl(&self, rhs)
            }
        }
        impl $trait<Surd> for &Surd {
            type Output = Surd;
            fn $method(self, rhs: Surd) -> Surd {
                $impl(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Surd, b: &Surd| a.add_signed(b, false));
binop!(Sub, sub, |a: &Surd, b: &Surd| a.add_signed(b, true));
binop!(Mul, mul, |a: &Surd, b: &Surd| a.mul_ref(b));

impl AddAssign<&Surd> for Surd {
    fn add_assign(&mut self, rhs: &Surd) {
        *self = self.add_signed(rhs, false);
    }
}

impl SubAssign<&Surd> for Surd {
    fn sub_assign(&mut self, rhs: &Surd) {
        *self = self.add_signed(rhs, true);
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let coeff = if t.im.is_zero() {
                rational_to_string(&t.re)
            } else if t.re.is_zero() {
                format!("{}i", rational_to_string(&t.im))
            } else {
                format!("({}+{}i)", rational_to_string(&t.re), rational_to_string(&t.im))
            };
            if t.rad == 1 {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "sqrt({})", t.rad)?;
            } else {
                write!(f, "{coeff}*sqrt({})", t.rad)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    d: u64,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct SurdJson {
    terms: Vec<TermJson>,
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = SurdJson {
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    d: t.rad,
                    re: rational_to_string(&t.re),
                    im: rational_to_string(&t.im),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SurdJson::deserialize(deserializer)?;
        let mut raw = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let re = parse_rational(&t.re).map_err(D::Error::custom)?;
            let im = parse_rational(&t.im).map_err(D::Error::custom)?;
            raw.push((t.d as i64, re, im));
        }
        Surd::normalize(raw).map_err(D::Error::custom)
    }
}
