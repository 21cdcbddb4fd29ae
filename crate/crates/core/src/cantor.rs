//! Mumford representation and Cantor's composition/reduction, used as an
//! independent oracle for the groupoid product.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groupoid::{CurveParams, GroupoidPoint};
use crate::poly::Poly;

/// A reduced divisor class `(u, v)` with `u` monic and `u | v^2 - f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor {
    u: Poly,
    v: Poly,
}

impl MumfordDivisor {
    /// Validates monicity, `deg v < deg u`, `deg u <= g` and `u | v^2 - f`.
    pub fn new(u: Poly, v: Poly, c: &CurveParams) -> Result<Self> {
        c.field().ensure_same(&u.field())?;
        c.field().ensure_same(&v.field())?;
        let du = match u.degree() {
            Some(d) if u.is_monic() => d,
            _ => return Err(Error::DimensionMismatch("u must be monic".into())),
        };
        if du > c.genus() {
            return Err(Error::DimensionMismatch(format!("deg u = {du} exceeds genus {}", c.genus())));
        }
        if v.degree().is_some_and(|dv| dv >= du) {
            return Err(Error::DimensionMismatch("deg v must be below deg u".into()));
        }
        if !on_jacobian(&u, &v, c)? {
            return Err(Error::NotOnJacobian);
        }
        Ok(MumfordDivisor { u, v })
    }

    /// The neutral class `(1, 0)`.
    pub fn identity(field: FieldSpec) -> Self {
        MumfordDivisor { u: Poly::one(field), v: Poly::zero(field) }
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.degree() == Some(0)
    }
}

fn on_jacobian(u: &Poly, v: &Poly, c: &CurveParams) -> Result<bool> {
    Ok(v.mul(v)?.sub(&c.curve_poly())?.rem(u)?.is_zero())
}

pub fn to_mumford(a: &GroupoidPoint, c: &CurveParams) -> Result<MumfordDivisor> {
    if a.genus() != c.genus() {
        return Err(Error::DimensionMismatch("genus of point and curve differ".into()));
    }
    MumfordDivisor::new(a.u_poly(), a.v_poly(), c)
}

pub fn from_mumford(d: &MumfordDivisor, c: &CurveParams) -> Result<GroupoidPoint> {
    let deg = d.u.degree().unwrap_or(0);
    if deg < c.genus() {
        return Err(Error::NonGenericDivisor(deg, c.genus()));
    }
    GroupoidPoint::from_uv(&d.u, &d.v, c.lambda2().to_vec())
}

/// Sum of two divisor classes on the curve `c`.
pub fn cantor_add(d1: &MumfordDivisor, d2: &MumfordDivisor, c: &CurveParams) -> Result<MumfordDivisor> {
    let f = c.curve_poly();
    let (u1, v1, u2, v2) = (&d1.u, &d1.v, &d2.u, &d2.v);

    // d = gcd(u1, u2, v1 + v2) = s1 u1 + s2 u2 + s3 (v1 + v2)
    let (d0, e1, e2) = Poly::xgcd(u1, u2)?;
    let (d, c1, s3) = Poly::xgcd(&d0, &v1.add(v2)?)?;
    let s1 = c1.mul(&e1)?;
    let s2 = c1.mul(&e2)?;

    let (u, r) = u1.mul(u2)?.divrem(&d.mul(&d)?)?;
    debug_assert!(r.is_zero());
    let num = s1
        .mul(u1)?
        .mul(v2)?
        .add(&s2.mul(u2)?.mul(v1)?)?
        .add(&s3.mul(&v1.mul(v2)?.add(&f)?)?)?;
    let (vq, r) = num.divrem(&d)?;
    debug_assert!(r.is_zero());
    let mut u = u;
    let mut v = vq.rem(&u)?;

    let g = c.genus();
    let mut steps = 0;
    while u.degree().unwrap_or(0) > g {
        let (q, r) = f.sub(&v.mul(&v)?)?.divrem(&u)?;
        debug_assert!(r.is_zero());
        u = q.monic()?;
        v = v.neg().rem(&u)?;
        steps += 1;
        assert!(steps <= g + 1, "reduction failed to terminate");
    }
    Ok(MumfordDivisor { u, v })
}

/// `(u, -v mod u)`.
pub fn cantor_neg(d: &MumfordDivisor) -> MumfordDivisor {
    let v = d.v.neg().rem(&d.u).expect("u is monic");
    MumfordDivisor { u: d.u.clone(), v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{anchor, invert};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn curve() -> CurveParams {
        CurveParams::from_ascending(Q, 1, vec![Q.zero(), Q.one()]).unwrap()
    }

    fn div(u: &[i64], v: &[i64]) -> MumfordDivisor {
        MumfordDivisor::new(Poly::from_i64s(Q, u), Poly::from_i64s(Q, v), &curve()).unwrap()
    }

    #[test]
    fn to_mumford_examples() {
        let c = curve();
        let a = GroupoidPoint::from_i64s(Q, &[2], &[3], &[0]).unwrap();
        assert_eq!(to_mumford(&a, &c).unwrap(), div(&[-2, 1], &[3]));
        let bad = GroupoidPoint::from_i64s(Q, &[2], &[4], &[0]).unwrap();
        assert_eq!(to_mumford(&bad, &c), Err(Error::NotOnJacobian));
        assert_eq!(from_mumford(&to_mumford(&a, &c).unwrap(), &c).unwrap(), a);
    }

    #[test]
    fn from_mumford_examples() {
        let c = curve();
        let a = from_mumford(&div(&[-2, 1], &[3]), &c).unwrap();
        assert_eq!(a, GroupoidPoint::from_i64s(Q, &[2], &[3], &[0]).unwrap());
        assert_eq!(anchor(&a), (c.lambda1().to_vec(), c.lambda2().to_vec()));
        assert_eq!(from_mumford(&MumfordDivisor::identity(Q), &c), Err(Error::NonGenericDivisor(0, 1)));
    }

    #[test]
    fn cantor_add_examples() {
        let c = curve();
        let p = div(&[-2, 1], &[3]);
        assert_eq!(cantor_add(&p, &MumfordDivisor::identity(Q), &c).unwrap(), p);
        assert_eq!(cantor_add(&MumfordDivisor::identity(Q), &p, &c).unwrap(), p);
        assert!(cantor_add(&p, &div(&[-2, 1], &[-3]), &c).unwrap().is_identity());
        assert_eq!(cantor_add(&p, &div(&[0, 1], &[1]), &c).unwrap(), div(&[1, 1], &[0]));
    }

    #[test]
    fn doubling_matches_tangent_law() {
        // 2(2,3) on y^2 = x^3 + 1: slope 12/6 = 2, x = 4 - 4 = 0, y = -(3 + 2(0 - 2)) = 1
        let c = curve();
        let p = div(&[-2, 1], &[3]);
        assert_eq!(cantor_add(&p, &p, &c).unwrap(), div(&[0, 1], &[1]));
    }

    #[test]
    fn cantor_neg_examples() {
        let c = curve();
        let p = div(&[-2, 1], &[3]);
        assert_eq!(cantor_neg(&p), div(&[-2, 1], &[-3]));
        assert_eq!(cantor_neg(&MumfordDivisor::identity(Q)), MumfordDivisor::identity(Q));
        assert!(cantor_add(&p, &cantor_neg(&p), &c).unwrap().is_identity());
        let a = from_mumford(&p, &c).unwrap();
        assert_eq!(from_mumford(&cantor_neg(&p), &c).unwrap(), invert(&a));
    }
}
