//! Algebraic identities behind the addition theorems, checked in exact
//! arithmetic on the `h`-coefficients of the function `R` built by the product.
//!
//! Near infinity, with local parameter `xi` (`x = xi^-2`, `y = xi^-(2g+1)`),
//! `R = xi^{-3g} (1 + h_1 xi + h_2 xi^2 + ...)`, so `h_k` is the coefficient
//! stored at co-weight `k`.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::field::Scalar;
use crate::groupoid::{star_traced, GroupoidPoint, RFunction, StarTrace};

/// The first three `h`-coefficients of `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCoeffs {
    pub h1: Scalar,
    pub h2: Scalar,
    pub h3: Scalar,
}

/// `h_w`, or zero when `w` is a gap or exceeds `3g`.
pub fn extract_h(r: &RFunction, coweight: usize) -> Scalar {
    r.h(coweight).cloned().unwrap_or_else(|| r.field().zero())
}

pub fn h_coeffs(r: &RFunction) -> HCoeffs {
    HCoeffs { h1: extract_h(r, 1), h2: extract_h(r, 2), h3: extract_h(r, 3) }
}

fn p2_sum(t: &StarTrace, a1: &GroupoidPoint, a2: &GroupoidPoint) -> Scalar {
    a1.p2() + a2.p2() + t.result.p2()
}

/// `p_2(a1) + p_2(a2) + p_2(a1 * a2) = h_1^2 - 2 h_2`.
pub fn check_pgg_sum(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<bool> {
    let t = star_traced(a1, a2)?;
    let h = h_coeffs(&t.rfunction);
    Ok(p2_sum(&t, a1, a2) == h.h1.square() - h.h2.clone() - h.h2)
}

/// The elliptic `wp'` addition formula with `wp = p_2`, `wp' = 2 p_3`:
/// `-wp'(u) - wp'(v) + wp'(u+v) = -H^3/4 - 3 (wp'(v) wp(u) - wp'(u) wp(v)) / (wp(u) - wp(v))`
/// where `H = (wp'(u) - wp'(v)) / (wp(u) - wp(v))`.
pub fn check_g1_wp_prime_sum(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<bool> {
    if a1.genus() != 1 {
        return Err(Error::InvalidGenus(a1.genus()));
    }
    let t = star_traced(a1, a2)?;
    let f = a1.field();
    let two = f.from_i64(2);
    let (wu, wv) = (a1.p2(), a2.p2());
    let (dwu, dwv, dws) = (&two * a1.p3(), &two * a2.p3(), &two * t.result.p3());
    let den = wu - wv;
    if den.is_zero() {
        return Err(Error::DegenerateConfiguration("wp(u) = wp(v)".into()));
    }
    let den_inv = den.inv()?;
    let big_h = (&dwu - &dwv) * &den_inv;
    let lhs = -&dwu - &dwv + dws;
    let quarter = f.from_i64(4).inv()?;
    let rhs = -(big_h.pow(3) * quarter) - f.from_i64(3) * (&dwv * wu - &dwu * wv) * den_inv;
    Ok(lhs == rhs)
}

/// `2 z_1 - p_222 - 3 p_22 z_2 + z_2^3` after substituting `z_2 = -h_1`,
/// `p_22 = h_1^2 - 2 h_2` and `z_1 = p_222/2 - h_1^3 + 3 h_1 h_2`, as an
/// expression in the free symbols `h1`, `h2`, `p222`.
pub fn zp_residual_expr() -> Expr {
    let (h1, h2, p222) = (Expr::var("h1"), Expr::var("h2"), Expr::var("p222"));
    let c = Expr::constant;
    let z2 = -&h1;
    let p22 = &h1 * &h1 - c(2) * &h2;
    let z1 = Expr::ratio(1, 2) * &p222 - h1.pow(3) + c(3) * &h1 * &h2;
    c(2) * z1 - &p222 - c(3) * p22 * &z2 + z2.pow(3)
}

/// The genus-2 relation among `p_22`, `p_222`, `z_1`, `z_2` on a concrete pair.
///
/// Requires `p_2` sum `= h_1^2 - 2 h_2`, `h_3 = 0`, and the residual of the
/// eliminated relation to vanish with
/// `p_222 = 2 (p_3(a1) + p_3(a2) - p_3(a1 * a2))`.
pub fn check_zp_consistency(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<bool> {
    if a1.genus() != 2 {
        return Err(Error::InvalidGenus(a1.genus()));
    }
    let t = star_traced(a1, a2)?;
    let f = a1.field();
    let h = h_coeffs(&t.rfunction);
    let two = f.from_i64(2);
    let three = f.from_i64(3);
    let p22 = p2_sum(&t, a1, a2);
    if p22 != h.h1.square() - &two * &h.h2 {
        return Ok(false);
    }
    let p222 = &two * (a1.p3() + a2.p3() - t.result.p3());
    let z2 = -&h.h1;
    let z1 = &p222 * &two.inv()? - h.h1.pow(3) + &three * &h.h1 * &h.h2;
    let residual = &two * &z1 - &p222 - &three * &p22 * &z2 + z2.pow(3);
    Ok(residual.is_zero() && h.h3.is_zero())
}
