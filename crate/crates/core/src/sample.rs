//! Seeded generation of curves and on-curve points.
//!
//! Over `F_p` a curve is drawn first and abscissae are rejection-sampled until
//! `f(xi)` is a square. Over `Q` the affine points are drawn first and the
//! free curve coefficients are solved for.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::groupoid::{invert, star, viete_phi, CurveParams, GroupoidPoint, PointListRep};
use crate::linalg::vandermonde;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over `F_p`; over `Q` a small fraction `n/d` with `|n| <= 9`, `d <= 3`.
pub fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::Prime(p) => Scalar::from_i64(field, rng.gen_range(0..p) as i64),
        FieldSpec::Rationals => {
            let n = rng.gen_range(-9..=9i64);
            let d = rng.gen_range(1..=3i64);
            Scalar::from_rational(field, &BigRational::new(BigInt::from(n), BigInt::from(d)))
                .expect("nonzero denominator")
        }
    }
}

pub fn random_nonzero<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Scalar {
    loop {
        let t = random_scalar(field, rng);
        if !t.is_zero() {
            return t;
        }
    }
}

/// Uniformly random coefficients.
pub fn random_curve<R: Rng + ?Sized>(field: FieldSpec, genus: usize, rng: &mut R) -> Result<CurveParams> {
    let lambdas = (0..2 * genus).map(|_| random_scalar(field, rng)).collect();
    CurveParams::from_ascending(field, genus, lambdas)
}

fn distinct_abscissae<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Vec<Scalar> {
    let mut xs: Vec<Scalar> = Vec::with_capacity(n);
    while xs.len() < n {
        let x = random_scalar(field, rng);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    xs
}

/// `g` affine points of `c` with distinct abscissae (prime fields only).
pub fn random_points_on<R: Rng + ?Sized>(c: &CurveParams, rng: &mut R) -> Result<Vec<(Scalar, Scalar)>> {
    let field = c.field();
    let p = field.modulus().ok_or(Error::MissingModulus)?;
    let f = c.curve_poly();
    let mut pts: Vec<(Scalar, Scalar)> = Vec::with_capacity(c.genus());
    let mut tries = 0u64;
    while pts.len() < c.genus() {
        tries += 1;
        assert!(tries < 1000 * p.max(64), "curve has too few rational points");
        let x = random_scalar(field, rng);
        if pts.iter().any(|(px, _)| *px == x) {
            continue;
        }
        let Some(y) = f.eval(&x)?.sqrt() else { continue };
        let y = if rng.gen_bool(0.5) { -y } else { y };
        pts.push((x, y));
    }
    Ok(pts)
}

/// A random point of `C^{3g}` over the prime-field curve `c`.
pub fn random_point_on<R: Rng + ?Sized>(c: &CurveParams, rng: &mut R) -> Result<GroupoidPoint> {
    let pts = random_points_on(c, rng)?;
    viete_phi(&PointListRep::new(c.field(), pts, c.lambda2().to_vec())?)
}

/// The curve through `n` given affine points, with the coefficients of
/// `x^0 .. x^{n-1}` solved for and the rest taken from `fixed`.
///
/// `fixed` lists the coefficients of `x^n .. x^{2g-1}`.
fn solve_curve(field: FieldSpec, genus: usize, pts: &[(Scalar, Scalar)], fixed: &[Scalar]) -> Result<CurveParams> {
    let n = pts.len();
    let xs: Vec<Scalar> = pts.iter().map(|(x, _)| x.clone()).collect();
    let rhs: Vec<Scalar> = pts
        .iter()
        .map(|(x, y)| {
            let mut r = y.square() - x.pow(2 * genus as u64 + 1);
            for (k, c) in fixed.iter().enumerate() {
                r = r - c * &x.pow((n + k) as u64);
            }
            r
        })
        .collect();
    let low = vandermonde(field, &xs, n)?.solve(&rhs)?;
    let mut coeffs = low;
    coeffs.extend(fixed.iter().cloned());
    // coefficients of x^0..x^{2g-1} are lambda_{4g+2}, ..., lambda_4
    coeffs.reverse();
    CurveParams::from_ascending(field, genus, coeffs)
}

/// A random point together with the curve it lies on. Over `Q` the curve is
/// derived from the point: `Lambda_2` is kept from `base` and `Lambda_1` is
/// solved for.
pub fn random_point<R: Rng + ?Sized>(base: &CurveParams, rng: &mut R) -> Result<(CurveParams, GroupoidPoint)> {
    match base.field() {
        FieldSpec::Prime(_) => Ok((base.clone(), random_point_on(base, rng)?)),
        FieldSpec::Rationals => {
            let g = base.genus();
            let field = base.field();
            let xs = distinct_abscissae(field, g, rng);
            let pts: Vec<(Scalar, Scalar)> = xs.into_iter().map(|x| (x, random_scalar(field, rng))).collect();
            let fixed: Vec<Scalar> = base.lambda2().to_vec();
            let c = solve_curve(field, g, &pts, &fixed)?;
            let a = viete_phi(&PointListRep::new(field, pts, c.lambda2().to_vec())?)?;
            Ok((c, a))
        }
    }
}

/// A random curve with two random points on it.
pub fn random_pair<R: Rng + ?Sized>(
    field: FieldSpec,
    genus: usize,
    rng: &mut R,
) -> Result<(CurveParams, GroupoidPoint, GroupoidPoint)> {
    match field {
        FieldSpec::Prime(_) => {
            let c = random_curve(field, genus, rng)?;
            let a1 = random_point_on(&c, rng)?;
            let a2 = random_point_on(&c, rng)?;
            Ok((c, a1, a2))
        }
        FieldSpec::Rationals => {
            let xs = distinct_abscissae(field, 2 * genus, rng);
            let pts: Vec<(Scalar, Scalar)> = xs.into_iter().map(|x| (x, random_scalar(field, rng))).collect();
            let c = solve_curve(field, genus, &pts, &[])?;
            let z = c.lambda2().to_vec();
            let a1 = viete_phi(&PointListRep::new(field, pts[..genus].to_vec(), z.clone())?)?;
            let a2 = viete_phi(&PointListRep::new(field, pts[genus..].to_vec(), z)?)?;
            Ok((c, a1, a2))
        }
    }
}

/// A random curve with three random points on it. Over `Q` the third point is
/// `a1 * inv(a2)`, which can fail on degenerate draws.
pub fn random_triple<R: Rng + ?Sized>(
    field: FieldSpec,
    genus: usize,
    rng: &mut R,
) -> Result<(CurveParams, [GroupoidPoint; 3])> {
    match field {
        FieldSpec::Prime(_) => {
            let (c, a1, a2) = random_pair(field, genus, rng)?;
            let a3 = random_point_on(&c, rng)?;
            Ok((c, [a1, a2, a3]))
        }
        FieldSpec::Rationals => {
            let (c, a1, a2) = random_pair(field, genus, rng)?;
            let a3 = star(&a1, &invert(&a2))?;
            Ok((c, [a1, a2, a3]))
        }
    }
}
