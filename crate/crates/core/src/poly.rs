//! Dense univariate polynomials over a [`FieldSpec`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are always
/// stripped, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn new(field: FieldSpec, coeffs: Vec<Scalar>) -> Result<Poly> {
        for c in &coeffs {
            field.ensure_same(&c.field())?;
        }
        Ok(Poly::from_trusted(field, coeffs))
    }

    fn from_trusted(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: FieldSpec, coeffs: &[i64]) -> Poly {
        Poly::from_trusted(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::from_trusted(c.field(), vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Poly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::from_trusted(field, coeffs)
    }

    pub fn x(field: FieldSpec) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        self.field.ensure_same(&other.field)
    }

    pub fn arith(&self, other: &Poly, op: PolyOp) -> Result<Poly> {
        self.check(other)?;
        Ok(match op {
            PolyOp::Add => self.add_unchecked(other),
            PolyOp::Sub => self.sub_unchecked(other),
            PolyOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.arith(other, PolyOp::Add)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.arith(other, PolyOp::Sub)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.arith(other, PolyOp::Mul)
    }

    pub(crate) fn add_unchecked(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Poly::from_trusted(self.field, coeffs)
    }

    pub(crate) fn sub_unchecked(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Poly::from_trusted(self.field, coeffs)
    }

    pub(crate) fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_trusted(self.field, out)
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Poly> {
        self.field.ensure_same(&c.field())?;
        Ok(Poly::from_trusted(self.field, self.coeffs.iter().map(|a| a * c).collect()))
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field, coeffs }
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Result<Poly> {
        let lc = self.leading().ok_or(Error::DivisionByZeroPoly)?;
        let inv = lc.inv()?;
        self.scale(&inv)
    }

    /// Euclidean division: `self = den * q + r` with `deg r < deg den`.
    pub fn divrem(&self, den: &Poly) -> Result<(Poly, Poly)> {
        self.check(den)?;
        let dlead = den.leading().ok_or(Error::DivisionByZeroPoly)?;
        let dinv = dlead.inv()?;
        let dn = den.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dn {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dn - 1] * &dinv;
            if !c.is_zero() {
                for (j, d) in den.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dn - 1);
        Ok((Poly::from_trusted(self.field, quot), Poly::from_trusted(self.field, rem)))
    }

    pub fn rem(&self, den: &Poly) -> Result<Poly> {
        Ok(self.divrem(den)?.1)
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &Scalar) -> Result<Scalar> {
        self.field.ensure_same(&at.field())?;
        Ok(self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * at) + c))
    }

    /// The monic polynomial with exactly the given roots (with multiplicity).
    pub fn from_roots(field: FieldSpec, roots: &[Scalar]) -> Result<Poly> {
        let mut acc = Poly::one(field);
        for r in roots {
            field.ensure_same(&r.field())?;
            let lin = Poly::from_trusted(field, vec![-r, field.one()]);
            acc = acc.mul_unchecked(&lin);
        }
        Ok(acc)
    }

    /// Extended Euclid: returns monic `d = gcd(a, b)` with `s*a + t*b = d`.
    pub fn xgcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        a.check(b)?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let field = a.field;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
        let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = s0.sub_unchecked(&q.mul_unchecked(&s1));
            let t2 = t0.sub_unchecked(&q.mul_unchecked(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc_inv = r0.leading().expect("nonzero gcd").inv()?;
        Ok((r0.scale(&lc_inv)?, s0.scale(&lc_inv)?, t0.scale(&lc_inv)?))
    }

    /// Derivative with respect to `x`.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        Poly::from_trusted(self.field, coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(Q, c)
    }

    #[test]
    fn arith_examples() {
        assert_eq!(p(&[1, 1]).mul(&p(&[-1, 1])).unwrap(), p(&[-1, 0, 1]));
        let a = p(&[3, 0, -2]);
        assert_eq!(a.add(&Poly::zero(Q)).unwrap(), a);
        assert_eq!(p(&[0, -2, 1]).mul(&p(&[1, 1])).unwrap(), p(&[0, -2, -1, 1]));
        assert_eq!(p(&[1, 2]).sub(&p(&[1, 2])).unwrap().degree(), None);
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = Poly::from_i64s(FieldSpec::Prime(7), &[1, 1]);
        let b = Poly::from_i64s(FieldSpec::Prime(11), &[1, 1]);
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.eval(&Q.one()), Err(Error::FieldMismatch(..))));
        assert!(Poly::new(Q, vec![FieldSpec::Prime(7).one()]).is_err());
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = p(&[1, 0, 0, 1]).divrem(&p(&[-2, 1])).unwrap();
        assert_eq!((q, r), (p(&[4, 2, 1]), p(&[9])));
        let (q, r) = p(&[0, -2, -1, 1]).divrem(&p(&[0, -2, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 1]), Poly::zero(Q)));
        let a = p(&[5, -3, 0, 2]);
        assert_eq!(a.divrem(&a).unwrap(), (Poly::one(Q), Poly::zero(Q)));
        assert_eq!(a.divrem(&Poly::zero(Q)), Err(Error::DivisionByZeroPoly));
    }

    #[test]
    fn eval_examples() {
        let two = Q.from_i64(2);
        assert!(p(&[0, -2, 1]).eval(&two).unwrap().is_zero());
        assert_eq!(p(&[7]).eval(&Q.from_i64(-13)).unwrap(), Q.from_i64(7));
        let f7 = FieldSpec::Prime(7);
        let v = Poly::from_i64s(f7, &[1, 0, 0, 1]).eval(&f7.from_i64(2)).unwrap();
        assert_eq!(v, f7.from_i64(2));
    }

    #[test]
    fn from_roots_examples() {
        let r = |v: &[i64]| v.iter().map(|&x| Q.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(Poly::from_roots(Q, &r(&[1, 2])).unwrap(), p(&[2, -3, 1]));
        assert_eq!(Poly::from_roots(Q, &[]).unwrap(), Poly::one(Q));
        assert_eq!(Poly::from_roots(Q, &r(&[2, 0])).unwrap(), p(&[0, -2, 1]));
    }

    #[test]
    fn xgcd_examples() {
        let (d, s, t) = Poly::xgcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!(d, p(&[-1, 1]));
        assert_eq!((s, t), (Poly::zero(Q), Poly::one(Q)));

        let a = p(&[4, 0, 2]);
        let (d, s, t) = Poly::xgcd(&a, &Poly::zero(Q)).unwrap();
        let half = Q.from_i64(2).inv().unwrap();
        assert_eq!(d, p(&[2, 0, 1]));
        assert_eq!(s, Poly::constant(half));
        assert!(t.is_zero());

        let a = p(&[2, -3, 1]);
        let b = p(&[0, -2, 1]);
        let (d, s, t) = Poly::xgcd(&a, &b).unwrap();
        assert_eq!(d, p(&[-2, 1]));
        assert_eq!(s.mul(&a).unwrap().add(&t.mul(&b).unwrap()).unwrap(), d);

        assert_eq!(Poly::xgcd(&Poly::zero(Q), &Poly::zero(Q)), Err(Error::BothZero));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[1, 0, -1]).to_string(), "(-1)x^2 + 1");
        assert_eq!(Poly::zero(Q).to_string(), "0");
    }
}
