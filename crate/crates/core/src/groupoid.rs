//! The hyperelliptic groupoid on `C^{3g}` over the space of curve parameters.
//!
//! A point `(P_even, P_odd, Z)` encodes the `g` points of the curve cut out
//! by `u(x) = x^g - X^t P_even = 0`, `y = v(x) = X^t P_odd`, where
//! `X = (1, x, ..., x^{g-1})`. Orderings are fixed throughout:
//!
//! * `P_even = (p_{2g}, ..., p_4, p_2)`, so `P_even[k]` is minus the
//!   coefficient of `x^k` in `u`;
//! * `P_odd = (p_{2g+1}, ..., p_5, p_3)`, so `P_odd[k]` is the coefficient of
//!   `x^k` in `v`;
//! * `Z = Lambda_2 = (lambda_{2g+2}, ..., lambda_4)` and
//!   `Lambda_1 = (lambda_{4g+2}, ..., lambda_{2g+4})`, both in decreasing
//!   weight, i.e. increasing power of `x` in the curve polynomial.
//!
//! The product `A1 * A2` is the set of residual zeros of the unique entire
//! function `R(x, y) = r1(x) y + x^g r2(x) + r3(x)` of weight `3g` that
//! vanishes on the inverted points `inv(A1)`, `inv(A2)`.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{companion, poly_at_matrix, vandermonde, Matrix};
use crate::poly::Poly;

fn check_len(name: &str, v: &[Scalar], g: usize) -> Result<()> {
    if v.len() != g {
        return Err(Error::DimensionMismatch(format!("{name} has length {}, expected {g}", v.len())));
    }
    Ok(())
}

fn check_field(field: FieldSpec, vs: &[&[Scalar]]) -> Result<()> {
    for v in vs {
        for x in v.iter() {
            field.ensure_same(&x.field())?;
        }
    }
    Ok(())
}

fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

/// Genus and coefficients of `y^2 = x^{2g+1} + sum_i lambda_{4g+2-2i} x^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParams {
    field: FieldSpec,
    genus: usize,
    lambda1: Vec<Scalar>,
    lambda2: Vec<Scalar>,
}

impl CurveParams {
    /// `lambda1 = (lambda_{4g+2}, ..., lambda_{2g+4})`,
    /// `lambda2 = (lambda_{2g+2}, ..., lambda_4)`.
    pub fn new(field: FieldSpec, genus: usize, lambda1: Vec<Scalar>, lambda2: Vec<Scalar>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus(genus));
        }
        check_len("lambda1", &lambda1, genus)?;
        check_len("lambda2", &lambda2, genus)?;
        check_field(field, &[&lambda1, &lambda2])?;
        Ok(CurveParams { field, genus, lambda1, lambda2 })
    }

    /// From `(lambda_4, lambda_6, ..., lambda_{4g+2})`, the order used in files.
    pub fn from_ascending(field: FieldSpec, genus: usize, lambdas: Vec<Scalar>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus(genus));
        }
        if lambdas.len() != 2 * genus {
            return Err(Error::DimensionMismatch(format!(
                "genus {genus} needs {} coefficients, got {}",
                2 * genus,
                lambdas.len()
            )));
        }
        let mut lambda2: Vec<Scalar> = lambdas[..genus].to_vec();
        let mut lambda1: Vec<Scalar> = lambdas[genus..].to_vec();
        lambda2.reverse();
        lambda1.reverse();
        CurveParams::new(field, genus, lambda1, lambda2)
    }

    pub fn ascending(&self) -> Vec<Scalar> {
        self.lambda2.iter().rev().chain(self.lambda1.iter().rev()).cloned().collect()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn lambda1(&self) -> &[Scalar] {
        &self.lambda1
    }

    pub fn lambda2(&self) -> &[Scalar] {
        &self.lambda2
    }

    /// `lambda_k` by weight (even `k` in `4..=4g+2`).
    pub fn lambda(&self, weight: usize) -> Option<&Scalar> {
        if weight % 2 != 0 || weight < 4 || weight > 4 * self.genus + 2 {
            return None;
        }
        self.ascending_ref().nth((weight - 4) / 2)
    }

    fn ascending_ref(&self) -> impl Iterator<Item = &Scalar> {
        self.lambda2.iter().rev().chain(self.lambda1.iter().rev())
    }

    pub fn curve_poly(&self) -> Poly {
        curve_poly(self)
    }
}

/// `f(x) = x^{2g+1} + sum_{i<2g} lambda_{4g+2-2i} x^i`, so the curve is `y^2 = f(x)`.
pub fn curve_poly(c: &CurveParams) -> Poly {
    let g = c.genus;
    let mut coeffs = Vec::with_capacity(2 * g + 2);
    coeffs.extend(c.lambda1.iter().cloned());
    coeffs.extend(c.lambda2.iter().cloned());
    coeffs.push(c.field.zero());
    coeffs.push(c.field.one());
    Poly::new(c.field, coeffs).expect("validated curve")
}

/// A point `(P_even, P_odd, Z)` of `C^{3g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidPoint {
    field: FieldSpec,
    p_even: Vec<Scalar>,
    p_odd: Vec<Scalar>,
    z: Vec<Scalar>,
}

impl GroupoidPoint {
    pub fn new(field: FieldSpec, p_even: Vec<Scalar>, p_odd: Vec<Scalar>, z: Vec<Scalar>) -> Result<Self> {
        let g = p_even.len();
        if g == 0 {
            return Err(Error::InvalidGenus(0));
        }
        check_len("p_odd", &p_odd, g)?;
        check_len("z", &z, g)?;
        check_field(field, &[&p_even, &p_odd, &z])?;
        Ok(GroupoidPoint { field, p_even, p_odd, z })
    }

    pub fn from_i64s(field: FieldSpec, p_even: &[i64], p_odd: &[i64], z: &[i64]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| field.from_i64(x)).collect::<Vec<_>>();
        GroupoidPoint::new(field, conv(p_even), conv(p_odd), conv(z))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn genus(&self) -> usize {
        self.p_even.len()
    }

    pub fn p_even(&self) -> &[Scalar] {
        &self.p_even
    }

    pub fn p_odd(&self) -> &[Scalar] {
        &self.p_odd
    }

    pub fn z(&self) -> &[Scalar] {
        &self.z
    }

    /// The `wp_{g,g}` slot `p_2` (last entry of `P_even`).
    pub fn p2(&self) -> &Scalar {
        self.p_even.last().expect("genus >= 1")
    }

    /// The `wp_{g,g,g}/2` slot `p_3` (last entry of `P_odd`).
    pub fn p3(&self) -> &Scalar {
        self.p_odd.last().expect("genus >= 1")
    }

    /// `u(x) = x^g - X^t P_even`.
    pub fn u_poly(&self) -> Poly {
        let mut coeffs: Vec<Scalar> = self.p_even.iter().map(|p| -p).collect();
        coeffs.push(self.field.one());
        Poly::new(self.field, coeffs).expect("validated point")
    }

    /// `v(x) = X^t P_odd`.
    pub fn v_poly(&self) -> Poly {
        Poly::new(self.field, self.p_odd.clone()).expect("validated point")
    }

    pub fn companion(&self) -> Matrix {
        companion(self.field, &self.p_even).expect("validated point")
    }

    /// Rebuilds a point from `u` (monic of degree `g`) and `v` (degree `< g`).
    pub fn from_uv(u: &Poly, v: &Poly, z: Vec<Scalar>) -> Result<Self> {
        let g = z.len();
        if u.degree() != Some(g) || !u.is_monic() {
            return Err(Error::DimensionMismatch(format!("u must be monic of degree {g}")));
        }
        if v.degree().is_some_and(|d| d >= g) {
            return Err(Error::DimensionMismatch(format!("v must have degree < {g}")));
        }
        let p_even = (0..g).map(|k| -u.coeff(k)).collect();
        let p_odd = (0..g).map(|k| v.coeff(k)).collect();
        GroupoidPoint::new(u.field(), p_even, p_odd, z)
    }
}

/// An unordered list of `g` affine pairs together with `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointListRep {
    field: FieldSpec,
    pairs: Vec<(Scalar, Scalar)>,
    z: Vec<Scalar>,
}

impl PointListRep {
    pub fn new(field: FieldSpec, pairs: Vec<(Scalar, Scalar)>, z: Vec<Scalar>) -> Result<Self> {
        let g = pairs.len();
        if g == 0 {
            return Err(Error::InvalidGenus(0));
        }
        check_len("z", &z, g)?;
        for (x, y) in &pairs {
            field.ensure_same(&x.field())?;
            field.ensure_same(&y.field())?;
        }
        check_field(field, &[&z])?;
        Ok(PointListRep { field, pairs, z })
    }

    pub fn pairs(&self) -> &[(Scalar, Scalar)] {
        &self.pairs
    }

    pub fn z(&self) -> &[Scalar] {
        &self.z
    }

    fn abscissae(&self) -> Vec<Scalar> {
        self.pairs.iter().map(|(x, _)| x.clone()).collect()
    }

    fn ensure_distinct(&self) -> Result<()> {
        for i in 0..self.pairs.len() {
            for j in i + 1..self.pairs.len() {
                if self.pairs[i].0 == self.pairs[j].0 {
                    return Err(Error::RepeatedAbscissa);
                }
            }
        }
        Ok(())
    }
}

/// The entire function `R = r1(x) y + x^g r2(x) + r3(x)`, stored by co-weight
/// `w(i, j) = 3g - (2g+1) j - 2i` of its monomials `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFunction {
    field: FieldSpec,
    genus: usize,
    h: Vec<Option<Scalar>>,
}

/// The monomial `x^i y^j` carrying co-weight `w`, if any.
pub fn monomial_of_coweight(g: usize, w: usize) -> Option<(usize, usize)> {
    if w > 3 * g {
        return None;
    }
    let weight = 3 * g - w;
    if weight % 2 == 0 {
        Some((weight / 2, 0))
    } else if weight >= 2 * g + 1 {
        Some(((weight - 2 * g - 1) / 2, 1))
    } else {
        None
    }
}

/// True when no monomial `x^i y^j` (`j <= 1`) has co-weight `w`.
pub fn coweight_is_gap(g: usize, w: usize) -> bool {
    monomial_of_coweight(g, w).is_none()
}

impl RFunction {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Stored coefficient `h_w`; `None` at gap co-weights or beyond `3g`.
    pub fn h(&self, coweight: usize) -> Option<&Scalar> {
        self.h.get(coweight).and_then(Option::as_ref)
    }

    /// `(h_{3g}, h_{3g-2}, ..., h_{g+2})`.
    pub fn h1_vector(&self) -> Vec<Scalar> {
        let g = self.genus;
        (0..g).map(|i| self.h(3 * g - 2 * i).cloned().expect("representable")).collect()
    }

    /// `(h_g, h_{g-1}, ..., h_1)`.
    pub fn h2_vector(&self) -> Vec<Scalar> {
        let g = self.genus;
        (0..g).map(|k| self.h(g - k).cloned().expect("representable")).collect()
    }

    fn coeff_or_zero(&self, w: usize) -> Scalar {
        self.h(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn rho(&self) -> usize {
        (self.genus - 1) / 2
    }

    /// `r1(x) = sum_{i <= rho} h_{g-2i-1} x^i`.
    pub fn r1(&self) -> Poly {
        let g = self.genus;
        let coeffs = (0..=self.rho()).map(|i| self.coeff_or_zero(g - 2 * i - 1)).collect();
        Poly::new(self.field, coeffs).expect("same field")
    }

    /// `r2(x) = sum_{i <= g-rho-1} h_{g-2i} x^i`.
    pub fn r2(&self) -> Poly {
        let g = self.genus;
        let coeffs = (0..=g - self.rho() - 1).map(|i| self.coeff_or_zero(g - 2 * i)).collect();
        Poly::new(self.field, coeffs).expect("same field")
    }

    /// `r3(x) = sum_{i <= g-1} h_{3g-2i} x^i`.
    pub fn r3(&self) -> Poly {
        let g = self.genus;
        let coeffs = (0..g).map(|i| self.coeff_or_zero(3 * g - 2 * i)).collect();
        Poly::new(self.field, coeffs).expect("same field")
    }

    /// Re-collects the `h` map from `(r1, r2, r3)`.
    pub fn from_parts(genus: usize, r1: &Poly, r2: &Poly, r3: &Poly) -> Result<RFunction> {
        let field = r1.field();
        field.ensure_same(&r2.field())?;
        field.ensure_same(&r3.field())?;
        let g = genus;
        let rho = (g - 1) / 2;
        let too_long = |p: &Poly, max: usize| p.degree().is_some_and(|d| d > max);
        if too_long(r1, rho) || too_long(r2, g - rho - 1) || too_long(r3, g - 1) {
            return Err(Error::DimensionMismatch("r-part exceeds weight 3g".into()));
        }
        let mut h = vec![None; 3 * g + 1];
        for i in 0..=rho {
            h[g - 2 * i - 1] = Some(r1.coeff(i));
        }
        for i in 0..=g - rho - 1 {
            h[g - 2 * i] = Some(r2.coeff(i));
        }
        for i in 0..g {
            h[3 * g - 2 * i] = Some(r3.coeff(i));
        }
        Ok(RFunction { field, genus, h })
    }

    /// `R(x, y)` at a point.
    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        let xg = x.pow(self.genus as u64);
        Ok(&(&self.r1().eval(x)? * y) + &(&(&xg * &self.r2().eval(x)?) + &self.r3().eval(x)?))
    }
}

/// `p(Z1, Z2)`: the curve parameters a point lies over.
///
/// `Z1 = v(C) P_odd - C^g (C P_even + Z)` is the coefficient vector of
/// `v^2 - x^{2g+1} - x^g X^t Z` reduced modulo `u`.
pub fn anchor(a: &GroupoidPoint) -> (Vec<Scalar>, Vec<Scalar>) {
    let g = a.genus();
    let c = a.companion();
    let v_of_c = poly_at_matrix(&a.v_poly(), &c).expect("square");
    let vv = v_of_c.mul_vec(&a.p_odd).expect("dims");
    let cp = c.mul_vec(&a.p_even).expect("dims");
    let inner = vec_add(&cp, &a.z);
    let cg = c.pow(g as u64).expect("square");
    let z1 = vec_sub(&vv, &cg.mul_vec(&inner).expect("dims"));
    (z1, a.z.clone())
}

/// The anchor packaged as curve parameters.
pub fn anchor_curve(a: &GroupoidPoint) -> CurveParams {
    let (z1, z2) = anchor(a);
    CurveParams::new(a.field, a.genus(), z1, z2).expect("anchor has genus-length parts")
}

/// `inv(P_even, P_odd, Z) = (P_even, -P_odd, Z)`.
pub fn invert(a: &GroupoidPoint) -> GroupoidPoint {
    GroupoidPoint { p_odd: vec_neg(&a.p_odd), ..a.clone() }
}

/// The first `n` columns of `K(A) = (P_even, P_odd, C P_even, C P_odd, ...)`.
pub fn k_columns(a: &GroupoidPoint, n: usize) -> Vec<Vec<Scalar>> {
    let c = a.companion();
    let mut out = Vec::with_capacity(n);
    let mut even = a.p_even.clone();
    let mut odd = a.p_odd.clone();
    while out.len() < n {
        out.push(even.clone());
        if out.len() < n {
            out.push(odd.clone());
        }
        even = c.mul_vec(&even).expect("dims");
        odd = c.mul_vec(&odd).expect("dims");
    }
    out
}

/// `L(A)`: the first `g` columns of `K(A)`; `ell(A)`: the `(g+1)`-st.
pub fn kl_columns(a: &GroupoidPoint) -> (Matrix, Vec<Scalar>) {
    let g = a.genus();
    let mut cols = k_columns(a, g + 1);
    let ell = cols.pop().expect("g+1 columns");
    (Matrix::from_columns(a.field, g, &cols).expect("dims"), ell)
}

fn ensure_compatible(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<()> {
    a1.field.ensure_same(&a2.field)?;
    if a1.genus() != a2.genus() {
        return Err(Error::DimensionMismatch(format!(
            "genus {} vs genus {}",
            a1.genus(),
            a2.genus()
        )));
    }
    if anchor(a1) != anchor(a2) {
        return Err(Error::AnchorMismatch);
    }
    Ok(())
}

/// Solves `H1 + L(A) H2 + ell(A) = 0` at the two (already inverted) points.
///
/// `H2 = -[L(A1) - L(A2)]^{-1} (ell(A1) - ell(A2))`, then `H1` is read off the
/// equation at `A1` and re-checked at `A2`.
pub fn solve_h(a1bar: &GroupoidPoint, a2bar: &GroupoidPoint) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    ensure_compatible(a1bar, a2bar)?;
    let (l1, ell1) = kl_columns(a1bar);
    let (l2, ell2) = kl_columns(a2bar);
    let diff = l1.sub(&l2)?;
    let rhs = vec_neg(&vec_sub(&ell1, &ell2));
    let h2 = diff.solve(&rhs).map_err(|e| match e {
        Error::SingularMatrix => {
            Error::DegenerateConfiguration("L(A1) - L(A2) is singular".into())
        }
        other => other,
    })?;
    let h1 = vec_neg(&vec_add(&l1.mul_vec(&h2)?, &ell1));
    let check = vec_neg(&vec_add(&l2.mul_vec(&h2)?, &ell2));
    assert_eq!(h1, check, "linear system for H1 is inconsistent at the second point");
    Ok((h1, h2))
}

/// Assembles `R` from `H1 = (h_{3g}, ..., h_{g+2})`, `H2 = (h_g, ..., h_1)`
/// and `h_0 = 1`.
pub fn build_r_from_h(h1: &[Scalar], h2: &[Scalar], g: usize) -> Result<RFunction> {
    check_len("H1", h1, g)?;
    check_len("H2", h2, g)?;
    let field = h1.first().ok_or(Error::InvalidGenus(0))?.field();
    check_field(field, &[h1, h2])?;
    let mut h = vec![None; 3 * g + 1];
    h[0] = Some(field.one());
    for (i, x) in h1.iter().enumerate() {
        h[3 * g - 2 * i] = Some(x.clone());
    }
    for (k, x) in h2.iter().enumerate() {
        h[g - k] = Some(x.clone());
    }
    Ok(RFunction { field, genus: g, h })
}

/// The `g x (2g+1)` block `(1_g | L(A) | ell(A))`.
fn g_block(a: &GroupoidPoint) -> Result<Matrix> {
    let g = a.genus();
    let id = Matrix::identity(a.field, g);
    let mut cols: Vec<Vec<Scalar>> = (0..g).map(|j| id.column(j)).collect();
    cols.extend(k_columns(a, g + 1));
    Matrix::from_columns(a.field, g, &cols)
}

/// `R = |G(x, y; A1, A2)| / |L(A2) - L(A1)|` by cofactor expansion along the
/// monomial row `(1, x, ..., x^{g-1}, x^g, y, x^{g+1}, y x, ...)`.
pub fn build_r_determinant(a1bar: &GroupoidPoint, a2bar: &GroupoidPoint) -> Result<RFunction> {
    ensure_compatible(a1bar, a2bar)?;
    let g = a1bar.genus();
    let field = a1bar.field;
    let lower = Matrix::vstack(&[&g_block(a1bar)?, &g_block(a2bar)?])?;
    let n = 2 * g + 1;
    let mut cofactors = Vec::with_capacity(n);
    for j in 0..n {
        let minor = lower.without_column(j).det()?;
        cofactors.push(if j % 2 == 0 { minor } else { -minor });
    }
    let lead = cofactors[n - 1].clone();
    if lead.is_zero() {
        return Err(Error::DegenerateConfiguration("|L(A2) - L(A1)| vanishes".into()));
    }
    let inv = lead.inv()?;
    let mut h = vec![None; 3 * g + 1];
    for (j, cof) in cofactors.iter().enumerate() {
        let w = if j < g { 3 * g - 2 * j } else { g - (j - g) };
        h[w] = Some(cof * &inv);
    }
    Ok(RFunction { field, genus: g, h })
}

/// `Phi(x) = R(x, y) R(x, -y)` with `y^2 = f(x)` substituted, signed so that
/// it is monic: `(-1)^g [ (x^g r2 + r3)^2 - r1^2 f ]`.
pub fn phi_poly(r: &RFunction, c: &CurveParams) -> Result<Poly> {
    r.field.ensure_same(&c.field)?;
    let g = r.genus;
    if g != c.genus {
        return Err(Error::DimensionMismatch("genus of R and curve differ".into()));
    }
    let even = r.r2().shift(g).add(&r.r3())?;
    let r1 = r.r1();
    let diff = even.mul(&even)?.sub(&r1.mul(&r1)?.mul(&c.curve_poly())?)?;
    let phi = if g % 2 == 0 { diff } else { diff.neg() };
    if phi.degree() != Some(3 * g) || !phi.is_monic() {
        return Err(Error::NotMonicDegree3g);
    }
    Ok(phi)
}

/// Everything the product computes along the way.
#[derive(Clone, Debug)]
pub struct StarTrace {
    pub result: GroupoidPoint,
    /// The function vanishing on `inv(A1)`, `inv(A2)` and the result.
    pub rfunction: RFunction,
    pub phi: Poly,
    /// `u1 * u2`.
    pub divisor: Poly,
    /// `Phi / (u1 u2)`; monic of degree `g`.
    pub quotient: Poly,
    /// `Phi mod (u1 u2)`; always zero on success.
    pub remainder: Poly,
}

/// `A1 * A2`, keeping the intermediate objects.
pub fn star_traced(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<StarTrace> {
    ensure_compatible(a1, a2)?;
    let g = a1.genus();
    let field = a1.field;
    let a1bar = invert(a1);
    let a2bar = invert(a2);
    let (h1, h2) = solve_h(&a1bar, &a2bar)?;
    let rfunction = build_r_from_h(&h1, &h2, g)?;
    #[cfg(debug_assertions)]
    {
        let det_route = build_r_determinant(&a1bar, &a2bar)?;
        assert_eq!(det_route, rfunction, "determinant and linear-solve routes disagree");
    }
    let curve = anchor_curve(a1);
    let phi = phi_poly(&rfunction, &curve)?;
    let divisor = a1.u_poly().mul(&a2.u_poly())?;
    let (quotient, remainder) = phi.divrem(&divisor)?;
    if !remainder.is_zero() {
        return Err(Error::NonzeroRemainder);
    }
    if quotient.degree() != Some(g) || !quotient.is_monic() {
        return Err(Error::NotMonicDegree3g);
    }
    let p_even: Vec<Scalar> = (0..g).map(|k| -quotient.coeff(k)).collect();
    let c3 = companion(field, &p_even)?;
    let r1c = poly_at_matrix(&rfunction.r1(), &c3)?;
    let r2c = poly_at_matrix(&rfunction.r2(), &c3)?;
    let rhs = vec_neg(&vec_add(&h1, &r2c.mul_vec(&p_even)?));
    let p_odd = r1c.solve(&rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::DegenerateConfiguration("r1(C3) is singular".into()),
        other => other,
    })?;
    let result = GroupoidPoint::new(field, p_even, p_odd, a1.z.clone())?;
    Ok(StarTrace { result, rfunction, phi, divisor, quotient, remainder })
}

/// The groupoid product `A1 * A2`.
pub fn star(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<GroupoidPoint> {
    Ok(star_traced(a1, a2)?.result)
}

/// The Viete-type chart from `g` affine pairs to `C^{3g}`.
pub fn viete_phi(t: &PointListRep) -> Result<GroupoidPoint> {
    t.ensure_distinct()?;
    let g = t.pairs.len();
    let field = t.field;
    let u = Poly::from_roots(field, &t.abscissae())?;
    let p_even = (0..g).map(|k| -u.coeff(k)).collect();
    let v = vandermonde(field, &t.abscissae(), g)?;
    let etas: Vec<Scalar> = t.pairs.iter().map(|(_, y)| y.clone()).collect();
    let p_odd = v.solve(&etas).map_err(|_| Error::RepeatedAbscissa)?;
    GroupoidPoint::new(field, p_even, p_odd, t.z.clone())
}

/// `p_S(T) = (V^{-1} Y - (V^{-1} X V) Z, Z)` with `Y_i = eta_i^2 - xi_i^{2g+1}`
/// and `X = diag(xi_i^g)`.
pub fn anchor_s(t: &PointListRep) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    t.ensure_distinct()?;
    let g = t.pairs.len();
    let field = t.field;
    let v = vandermonde(field, &t.abscissae(), g)?;
    let vinv = v.inverse().map_err(|_| Error::RepeatedAbscissa)?;
    let y: Vec<Scalar> =
        t.pairs.iter().map(|(x, e)| &e.square() - &x.pow(2 * g as u64 + 1)).collect();
    let mut xdiag = Matrix::zeros(field, g, g);
    for (i, (x, _)) in t.pairs.iter().enumerate() {
        xdiag.set(i, i, x.pow(g as u64));
    }
    let conj = vinv.mul(&xdiag)?.mul(&v)?;
    let z1 = vec_sub(&vinv.mul_vec(&y)?, &conj.mul_vec(&t.z)?);
    Ok((z1, t.z.clone()))
}

/// The `3g x (2g+1)` matrix stacking `(1_g | L | ell)` for the three points
/// given, in the order given.
pub fn rank_matrix(points: [&GroupoidPoint; 3]) -> Result<Matrix> {
    let field = points[0].field;
    let g = points[0].genus();
    let mut blocks = Vec::with_capacity(3);
    for a in points {
        field.ensure_same(&a.field)?;
        if a.genus() != g {
            return Err(Error::DimensionMismatch("genus differs".into()));
        }
        blocks.push(g_block(a)?);
    }
    Matrix::vstack(&[&blocks[0], &blocks[1], &blocks[2]])
}

/// True iff `rank(1_g | L | ell)` stacked over `(inv(a1), inv(a2), a3)` is
/// below `2g+1`, which is necessary for `a3 = a1 * a2`.
pub fn rank_witness(a1: &GroupoidPoint, a2: &GroupoidPoint, a3: &GroupoidPoint) -> bool {
    let g = a1.genus();
    match rank_matrix([&invert(a1), &invert(a2), a3]) {
        Ok(m) => m.rank() < 2 * g + 1,
        Err(_) => false,
    }
}

/// Weight of the `k`-th entry of `P_even`, `P_odd`, `Z`/`Lambda_2` and `Lambda_1`.
fn weights(g: usize) -> [Vec<u64>; 4] {
    let g = g as u64;
    let even = (0..g).map(|k| 2 * g - 2 * k).collect();
    let odd = (0..g).map(|k| 2 * g + 1 - 2 * k).collect();
    let lam2 = (0..g).map(|k| 2 * g + 2 - 2 * k).collect();
    let lam1 = (0..g).map(|k| 4 * g + 2 - 2 * k).collect();
    [even, odd, lam2, lam1]
}

fn scale_by_weight(v: &[Scalar], w: &[u64], t: &Scalar) -> Vec<Scalar> {
    v.iter().zip(w).map(|(x, &k)| x * &t.pow(k)).collect()
}

/// Point-only part of the grading action.
pub fn grade_point(a: &GroupoidPoint, t: &Scalar) -> Result<GroupoidPoint> {
    a.field.ensure_same(&t.field())?;
    if t.is_zero() {
        return Err(Error::ZeroScale);
    }
    let [we, wo, wz, _] = weights(a.genus());
    GroupoidPoint::new(
        a.field,
        scale_by_weight(&a.p_even, &we, t),
        scale_by_weight(&a.p_odd, &wo, t),
        scale_by_weight(&a.z, &wz, t),
    )
}

/// Curve-only part of the grading action.
pub fn grade_curve(c: &CurveParams, t: &Scalar) -> Result<CurveParams> {
    c.field.ensure_same(&t.field())?;
    if t.is_zero() {
        return Err(Error::ZeroScale);
    }
    let [_, _, w2, w1] = weights(c.genus);
    CurveParams::new(c.field, c.genus, scale_by_weight(&c.lambda1, &w1, t), scale_by_weight(&c.lambda2, &w2, t))
}

/// Replaces every quantity of weight `k` by `t^k` times itself.
pub fn grade_scale(a: &GroupoidPoint, c: &CurveParams, t: &Scalar) -> Result<(GroupoidPoint, CurveParams)> {
    Ok((grade_point(a, t)?, grade_curve(c, t)?))
}
