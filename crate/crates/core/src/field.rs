//! Exact scalar fields: arbitrary-precision rationals and prime fields `F_p`.
//!
//! A [`Scalar`] always carries the field it lives in. Mixing fields inside the
//! operator impls is a programming error and panics; every public constructor
//! higher up (polynomials, matrices, points) validates field agreement first
//! and returns [`Error::FieldMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// `F_p` for an odd prime `p`.
    Prime(u64),
}

/// Validates and builds a [`FieldSpec`].
pub fn make_field(kind: FieldKind, modulus: Option<u64>) -> Result<FieldSpec> {
    match kind {
        FieldKind::Rationals => Ok(FieldSpec::Rationals),
        FieldKind::PrimeField => {
            let p = modulus.ok_or(Error::MissingModulus)?;
            FieldSpec::prime(p)
        }
    }
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldSpec::Rationals => FieldKind::Rationals,
            FieldSpec::Prime(_) => FieldKind::PrimeField,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        Scalar::from_i64(*self, n)
    }

    pub fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` or `fp:<p>`.
    fn from_str(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad modulus in field `{s}`")))?;
                FieldSpec::prime(p)
            }
            None => Err(Error::Parse(format!("unknown field `{s}` (expected q or fp:<p>)"))),
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn from_i64(field: FieldSpec, n: i64) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Prime {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: FieldSpec, n: &BigInt) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Prime { value: r.to_u64().expect("reduced residue fits"), modulus: p }
            }
        }
    }

    /// Maps an exact rational into `field`; fails when the denominator
    /// vanishes modulo `p`.
    pub fn from_rational(field: FieldSpec, q: &BigRational) -> Result<Scalar> {
        match field {
            FieldSpec::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldSpec::Prime(_) => {
                let num = Scalar::from_bigint(field, q.numer());
                let den = Scalar::from_bigint(field, q.denom());
                num.checked_div(&den)
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    /// Multiplicative inverse, or [`Error::DivisionByZero`].
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Legendre symbol for prime-field elements: `1`, `-1` or `0`.
    /// `None` over the rationals.
    pub fn legendre(&self) -> Option<i8> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Prime { value, modulus } => {
                if *value == 0 {
                    return Some(0);
                }
                let e = pow_mod(*value, (modulus - 1) / 2, *modulus);
                Some(if e == 1 { 1 } else { -1 })
            }
        }
    }

    /// A square root when one exists in the field.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Prime { value, modulus } => {
                tonelli_shanks(*value, *modulus).map(|r| Scalar::Prime { value: r, modulus: *modulus })
            }
        }
    }

    /// The canonical residue for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Prime { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Prime { .. } => None,
        }
    }

    /// Parses the textual encoding used in JSON files: `"n/d"` or `"n"` for
    /// rationals, a decimal integer for `F_p` (reduced into `[0, p)`).
    pub fn parse(field: FieldSpec, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse `{s}` as an element of {field}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        match (field, den) {
            (FieldSpec::Rationals, None) => Ok(Scalar::Rational(BigRational::from_integer(num))),
            (FieldSpec::Rationals, Some(d)) => {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num, d)))
            }
            (FieldSpec::Prime(_), None) => Ok(Scalar::from_bigint(field, &num)),
            (FieldSpec::Prime(_), Some(_)) => Err(bad()),
        }
    }

    fn binary(&self, other: &Scalar, op: &str) -> FieldSpec {
        let f = self.field();
        assert!(
            f == other.field(),
            "scalar {op} across fields {f} and {}",
            other.field()
        );
        f
    }
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(n, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.binary(rhs, "addition");
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => {
                let s = a + b;
                Scalar::Prime { value: if s >= *modulus { s - modulus } else { s }, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.binary(rhs, "subtraction");
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: if a >= b { a - b } else { a + modulus - b },
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.binary(rhs, "multiplication");
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: mul_mod(*a, *b, *modulus), modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(make_field(FieldKind::Rationals, None).unwrap(), FieldSpec::Rationals);
        assert!(trial_division_prime(10007));
        assert_eq!(make_field(FieldKind::PrimeField, Some(10007)).unwrap(), FieldSpec::Prime(10007));
        assert_eq!(make_field(FieldKind::PrimeField, Some(2)), Err(Error::EvenCharacteristic));
        assert_eq!(make_field(FieldKind::PrimeField, Some(10005)), Err(Error::NonPrimeModulus(10005)));
        assert_eq!(make_field(FieldKind::PrimeField, None), Err(Error::MissingModulus));
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial_division_prime(n), "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_559));
    }

    #[test]
    fn inverses_exhaustive_small_primes() {
        for p in (3..=101).filter(|&p| trial_division_prime(p)) {
            let f = FieldSpec::prime(p).unwrap();
            for a in 1..p {
                let a = f.from_i64(a as i64);
                assert!((&a * &a.inv().unwrap()).is_one());
            }
            assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn rationals_stay_reduced() {
        let f = FieldSpec::Rationals;
        let a = Scalar::parse(f, "6/-4").unwrap();
        let q = a.as_rational().unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(Scalar::parse(f, "14/7").unwrap().to_string(), "2");
    }

    #[test]
    fn serialization_examples() {
        let q = FieldSpec::Rationals;
        assert_eq!(Scalar::parse(q, "-7/2").unwrap().to_string(), "-7/2");
        assert_eq!(Scalar::parse(q, "3").unwrap().to_string(), "3");
        assert_eq!(Scalar::parse(q, "1/0"), Err(Error::DivisionByZero));
        let p = FieldSpec::Prime(7);
        assert_eq!(Scalar::parse(p, "-1").unwrap().to_string(), "6");
        assert!(Scalar::parse(p, "1/2").is_err());
        assert_eq!(Scalar::from_i64(p, i64::MIN).residue(), Some((i64::MIN as i128).rem_euclid(7) as u64));
    }

    #[test]
    fn sqrt_roundtrip() {
        for p in [3u64, 5, 13, 17, 97, 10007, 65537] {
            let f = FieldSpec::Prime(p);
            for a in 0..p.min(500) {
                let a = f.from_i64(a as i64);
                match a.sqrt() {
                    Some(r) => assert_eq!(r.square(), a),
                    None => assert_eq!(a.legendre(), Some(-1)),
                }
            }
        }
        let q = FieldSpec::Rationals;
        assert_eq!(Scalar::parse(q, "9/4").unwrap().sqrt().unwrap().to_string(), "3/2");
        assert!(Scalar::parse(q, "2").unwrap().sqrt().is_none());
    }

    #[test]
    fn from_rational_into_prime_field() {
        let p = FieldSpec::Prime(7);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(Scalar::from_rational(p, &half).unwrap().to_string(), "4");
        let seventh = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert_eq!(Scalar::from_rational(p, &seventh), Err(Error::DivisionByZero));
    }

    #[test]
    #[should_panic(expected = "across fields")]
    fn mixing_fields_panics_in_operators() {
        let _ = FieldSpec::Prime(7).one() + FieldSpec::Prime(11).one();
    }
}
