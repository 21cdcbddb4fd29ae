//! Explicit addition laws for genus 1 and genus 2.
//!
//! Genus-2 notation: `A1 = ((u4, u2), (u5, u3), Z)`, `A2 = ((v4, v2), (v5, v3), Z)`
//! and `A1 * A2 = ((w4, w2), (w5, w3), Z)`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::expr::{apply_l, Env, Expr};
use crate::field::Scalar;
use crate::groupoid::{anchor, GroupoidPoint};

fn check_pair(a1: &GroupoidPoint, a2: &GroupoidPoint, g: usize) -> Result<()> {
    a1.field().ensure_same(&a2.field())?;
    if a1.genus() != g || a2.genus() != g {
        return Err(Error::InvalidGenus(a1.genus().max(a2.genus())));
    }
    if anchor(a1) != anchor(a2) {
        return Err(Error::AnchorMismatch);
    }
    Ok(())
}

/// The elliptic law: with `h = (v3 - u3)/(v2 - u2)`,
/// `w2 = -(u2 + v2) + h^2`, `w3 = -(u3 + v3)/2 + 3(u2 + v2)h/2 - h^3`.
pub fn g1_add(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<GroupoidPoint> {
    check_pair(a1, a2, 1)?;
    let f = a1.field();
    let (u2, u3, v2, v3) = (a1.p2(), a1.p3(), a2.p2(), a2.p3());
    let du = v2 - u2;
    if du.is_zero() {
        return Err(Error::DegenerateConfiguration("u2 = v2".into()));
    }
    let h = (v3 - u3) * du.inv()?;
    let half = f.from_i64(2).inv()?;
    let s2 = u2 + v2;
    let w2 = h.square() - &s2;
    let w3 = -((u3 + v3) * &half) + f.from_i64(3) * &half * &s2 * &h - h.pow(3);
    GroupoidPoint::new(f, vec![w2], vec![w3], a1.z().to_vec())
}

/// Symbolic pieces of the genus-2 law.
pub struct G2Law {
    pub h: Expr,
    pub h1: Expr,
    pub h2: Expr,
    pub w2: Expr,
    pub w3: Expr,
    pub w4: Expr,
    pub w5: Expr,
}

fn det2(a: &Expr, b: &Expr, c: &Expr, d: &Expr) -> Expr {
    a * d - b * c
}

fn h_expr() -> Expr {
    let v = Expr::var;
    let (u2, u3, u4, u5) = (v("u2"), v("u3"), v("u4"), v("u5"));
    let (v2, v3, v4, v5) = (v("v2"), v("v3"), v("v4"), v("v5"));
    let num = det2(
        &(&v4 - &u4),
        &(&v2 * &v4 - &u2 * &u4),
        &(&v2 - &u2),
        &(&v4 + &v2 * &v2 - (&u4 + &u2 * &u2)),
    );
    let den = det2(&(&v4 - &u4), &(&v5 - &u5), &(&v2 - &u2), &(&v3 - &u3));
    -(num / den)
}

/// Which reading of the genus-2 formulas to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G2Variant {
    /// `h' = L(h)/2`, `h'' = L(h')/2`, `-(u2+v2)(h' - 2h^2)/2` in `w4` and
    /// `-(u2 v3 + u3 v2)/2` in `w5`. Agrees with the product.
    Corrected,
    /// `h' = L(h)`, `h'' = L(h')`, `-(u2+v2)(h' - h^2)/2` in `w4` and
    /// `-(u2 u3 + v2 v3)/2` in `w5`.
    Printed,
}

impl G2Law {
    pub fn build(variant: G2Variant) -> G2Law {
        let printed = variant == G2Variant::Printed;
        let scale = if printed { Expr::constant(1) } else { Expr::ratio(1, 2) };
        let h = h_expr();
        let h1 = &scale * apply_l(&h).expect("genus-2 variables");
        let h2 = &scale * apply_l(&h1).expect("genus-2 variables");
        let v = Expr::var;
        let c = Expr::ratio;
        let (u2, u3, u4, u5) = (v("u2"), v("u3"), v("u4"), v("u5"));
        let (v2, v3, v4, v5) = (v("v2"), v("v3"), v("v4"), v("v5"));
        let s2 = &u2 + &v2;
        let s3 = &u3 + &v3;
        let s4 = &u4 + &v4;
        let s5 = &u5 + &v5;
        let hh = &h * &h;
        let w2 = c(1, 2) * &s2 + Expr::constant(2) * &h1 + &hh;
        let w3 = c(1, 2) * &s3
            + c(5, 4) * &s2 * &h
            + Expr::constant(2) * &h2
            + Expr::constant(3) * &h1 * &h
            + &hh * &h;
        let w4 = -(c(1, 2) * &s4) - &u2 * &v2 + c(1, 8) * &s2 * &s2 + &s3 * &h
            - c(1, 2) * &s2 * (&h1 - Expr::constant(if printed { 1 } else { 2 }) * &hh)
            - Expr::constant(2) * &h * &h2;
        let cross = if printed { &u2 * &u3 + &v2 * &v3 } else { &u2 * &v3 + &u3 * &v2 };
        let brace = c(1, 8) * &s2 * &s2 + &u2 * &v2 + c(1, 2) * &s4;
        let w5 = -(c(1, 2) * &s5) - c(1, 2) * cross - brace * &h
            + &s3 * (&h1 + &hh)
            - c(1, 2) * &s2 * (&h2 - &h * &h1 - Expr::constant(2) * &hh * &h)
            - Expr::constant(2) * (&h1 + &hh) * &h2;
        G2Law { h, h1, h2, w2, w3, w4, w5 }
    }

    /// The cached law used by [`g2_add`].
    pub fn get() -> &'static G2Law {
        static LAW: OnceLock<G2Law> = OnceLock::new();
        LAW.get_or_init(|| G2Law::build(G2Variant::Corrected))
    }
}

/// Binds `u2..u5`, `v2..v5` from a genus-2 pair.
pub fn g2_env(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<Env> {
    let mut env = Env::new(a1.field());
    for (p, tag) in [(a1, "u"), (a2, "v")] {
        env.bind(&format!("{tag}2"), p.p_even()[1].clone())?;
        env.bind(&format!("{tag}3"), p.p_odd()[1].clone())?;
        env.bind(&format!("{tag}4"), p.p_even()[0].clone())?;
        env.bind(&format!("{tag}5"), p.p_odd()[0].clone())?;
    }
    Ok(env)
}

fn eval_g2(e: &Expr, env: &Env) -> Result<Scalar> {
    e.eval(env).map_err(|err| match err {
        Error::ZeroDenominator => {
            Error::DegenerateConfiguration("determinant denominator vanishes".into())
        }
        other => other,
    })
}

/// The genus-2 law evaluated at a pair.
pub fn g2_add(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<GroupoidPoint> {
    g2_add_with(G2Law::get(), a1, a2)
}

pub fn g2_add_with(law: &G2Law, a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<GroupoidPoint> {
    check_pair(a1, a2, 2)?;
    let env = g2_env(a1, a2)?;
    let w: Vec<Scalar> =
        [&law.w4, &law.w2, &law.w5, &law.w3].iter().map(|e| eval_g2(e, &env)).collect::<Result<_>>()?;
    let [w4, w2, w5, w3]: [Scalar; 4] = w.try_into().expect("four entries");
    GroupoidPoint::new(a1.field(), vec![w4, w2], vec![w5, w3], a1.z().to_vec())
}

/// `h` of the genus-2 law at a pair.
pub fn g2_h(a1: &GroupoidPoint, a2: &GroupoidPoint) -> Result<Scalar> {
    check_pair(a1, a2, 2)?;
    eval_g2(&G2Law::get().h, &g2_env(a1, a2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::groupoid::star;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn g1_worked_example() {
        let a = GroupoidPoint::from_i64s(Q, &[2], &[3], &[0]).unwrap();
        let b = GroupoidPoint::from_i64s(Q, &[0], &[1], &[0]).unwrap();
        let expected = GroupoidPoint::from_i64s(Q, &[-1], &[0], &[0]).unwrap();
        assert_eq!(g1_add(&a, &b).unwrap(), expected);
        assert_eq!(g1_add(&b, &a).unwrap(), expected);
        assert_eq!(star(&a, &b).unwrap(), expected);
        assert!(matches!(g1_add(&a, &a), Err(Error::DegenerateConfiguration(_))));
    }

    #[test]
    fn g2_rejects_wrong_genus() {
        let a = GroupoidPoint::from_i64s(Q, &[2], &[3], &[0]).unwrap();
        assert_eq!(g2_add(&a, &a), Err(Error::InvalidGenus(1)));
    }

    #[test]
    fn g2_matches_star_and_printed_reading_does_not() {
        use crate::sample::{random_pair, seeded};
        let f = FieldSpec::Prime(10007);
        let printed = G2Law::build(G2Variant::Printed);
        let mut rng = seeded(11);
        let mut printed_hits = 0;
        for _ in 0..20 {
            let (_, a1, a2) = random_pair(f, 2, &mut rng).unwrap();
            let s = star(&a1, &a2).unwrap();
            assert_eq!(g2_add(&a1, &a2).unwrap(), s);
            if g2_add_with(&printed, &a1, &a2).unwrap() == s {
                printed_hits += 1;
            }
        }
        assert_eq!(printed_hits, 0);
    }

    #[test]
    fn g2_h_is_minus_h1_of_inverted_pair() {
        use crate::groupoid::star_traced;
        use crate::sample::{random_pair, seeded};
        let f = FieldSpec::Prime(10007);
        let mut rng = seeded(12);
        for _ in 0..20 {
            let (_, a1, a2) = random_pair(f, 2, &mut rng).unwrap();
            let h1 = star_traced(&a1, &a2).unwrap().rfunction.h(1).unwrap().clone();
            let h = g2_h(&a1, &a2).unwrap();
            assert_eq!(h, -&h1);
            assert_ne!(h, h1);
        }
        println!("genus-2 h equals -h_1 of the function through the inverted points");
    }

    #[test]
    fn g2_shared_u_is_degenerate() {
        let q = FieldSpec::Rationals;
        let a = GroupoidPoint::from_i64s(q, &[1, 2], &[3, 4], &[0, 0]).unwrap();
        let b = GroupoidPoint::from_i64s(q, &[1, 2], &[-3, -4], &[0, 0]).unwrap();
        assert!(matches!(g2_add(&a, &b), Err(Error::DegenerateConfiguration(_))));
    }
}
