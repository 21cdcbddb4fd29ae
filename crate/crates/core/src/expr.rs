//! A small symbolic layer: expression trees over exact rational constants
//! with partial differentiation and exact evaluation in any [`FieldSpec`].
//!
//! There is no normal form. Identities are checked by evaluating at random
//! points of a large prime field.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Debug, PartialEq, Eq)]
enum Node {
    Const(BigRational),
    Var(String),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
}

/// An immutable, cheaply clonable expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr(Arc<Node>);

/// The variables of the genus-2 example, `A1 = (u4, u2; u5, u3)`,
/// `A2 = (v4, v2; v5, v3)`.
pub const G2_VARS: [&str; 8] = ["u2", "u3", "u4", "u5", "v2", "v3", "v4", "v5"];

impl Expr {
    fn node(n: Node) -> Expr {
        Expr(Arc::new(n))
    }

    pub fn constant(n: i64) -> Expr {
        Expr::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn rational(q: BigRational) -> Expr {
        Expr::node(Node::Const(q))
    }

    pub fn var(name: &str) -> Expr {
        Expr::node(Node::Var(name.to_string()))
    }

    fn as_const(&self) -> Option<&BigRational> {
        match &*self.0 {
            Node::Const(q) => Some(q),
            _ => None,
        }
    }

    fn is_const_zero(&self) -> bool {
        self.as_const().is_some_and(Zero::is_zero)
    }

    fn is_const_one(&self) -> bool {
        self.as_const().is_some_and(One::is_one)
    }

    /// Sum with constant folding and zero elimination.
    pub fn add(&self, other: &Expr) -> Expr {
        if let (Some(a), Some(b)) = (self.as_const(), other.as_const()) {
            return Expr::rational(a + b);
        }
        if self.is_const_zero() {
            return other.clone();
        }
        if other.is_const_zero() {
            return self.clone();
        }
        Expr::node(Node::Add(self.clone(), other.clone()))
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        if let (Some(a), Some(b)) = (self.as_const(), other.as_const()) {
            return Expr::rational(a - b);
        }
        if other.is_const_zero() {
            return self.clone();
        }
        Expr::node(Node::Sub(self.clone(), other.clone()))
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        if let (Some(a), Some(b)) = (self.as_const(), other.as_const()) {
            return Expr::rational(a * b);
        }
        if self.is_const_zero() || other.is_const_zero() {
            return Expr::constant(0);
        }
        if self.is_const_one() {
            return other.clone();
        }
        if other.is_const_one() {
            return self.clone();
        }
        Expr::node(Node::Mul(self.clone(), other.clone()))
    }

    /// Quotient; a constant-zero denominator is kept and reported by [`Expr::eval`].
    pub fn div(&self, other: &Expr) -> Expr {
        if self.is_const_zero() && !other.is_const_zero() {
            return Expr::constant(0);
        }
        if other.is_const_one() {
            return self.clone();
        }
        Expr::node(Node::Div(self.clone(), other.clone()))
    }

    pub fn neg(&self) -> Expr {
        Expr::constant(0).sub(self)
    }

    pub fn pow(&self, k: u32) -> Expr {
        (0..k).fold(Expr::constant(1), |acc, _| acc.mul(self))
    }

    /// Names of all variables, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut out = BTreeMap::new();
        self.collect_vars(&mut out);
        out.into_keys().collect()
    }

    fn collect_vars(&self, out: &mut BTreeMap<String, ()>) {
        match &*self.0 {
            Node::Const(_) => {}
            Node::Var(v) => {
                out.insert(v.clone(), ());
            }
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Partial derivative with respect to `var`.
    pub fn diff(&self, var: &str) -> Expr {
        let mut memo = HashMap::new();
        self.diff_memo(var, &mut memo)
    }

    fn diff_memo(&self, var: &str, memo: &mut HashMap<*const Node, Expr>) -> Expr {
        let key = Arc::as_ptr(&self.0);
        if let Some(d) = memo.get(&key) {
            return d.clone();
        }
        let d = match &*self.0 {
            Node::Const(_) => Expr::constant(0),
            Node::Var(v) => Expr::constant(if v == var { 1 } else { 0 }),
            Node::Add(a, b) => a.diff_memo(var, memo).add(&b.diff_memo(var, memo)),
            Node::Sub(a, b) => a.diff_memo(var, memo).sub(&b.diff_memo(var, memo)),
            Node::Mul(a, b) => {
                a.diff_memo(var, memo).mul(b).add(&a.mul(&b.diff_memo(var, memo)))
            }
            Node::Div(a, b) => {
                let da = a.diff_memo(var, memo);
                let db = b.diff_memo(var, memo);
                da.mul(b).sub(&a.mul(&db)).div(&b.mul(b))
            }
        };
        memo.insert(key, d.clone());
        d
    }

    /// Exact value under `env`.
    pub fn eval(&self, env: &Env) -> Result<Scalar> {
        let mut memo = HashMap::new();
        self.eval_memo(env, &mut memo)
    }

    fn eval_memo(&self, env: &Env, memo: &mut HashMap<*const Node, Scalar>) -> Result<Scalar> {
        let key = Arc::as_ptr(&self.0);
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let v = match &*self.0 {
            Node::Const(q) => {
                Scalar::from_rational(env.field, q).map_err(|_| Error::ZeroDenominator)?
            }
            Node::Var(name) => {
                env.vars.get(name).cloned().ok_or_else(|| Error::UnboundVariable(name.clone()))?
            }
            Node::Add(a, b) => a.eval_memo(env, memo)? + b.eval_memo(env, memo)?,
            Node::Sub(a, b) => a.eval_memo(env, memo)? - b.eval_memo(env, memo)?,
            Node::Mul(a, b) => a.eval_memo(env, memo)? * b.eval_memo(env, memo)?,
            Node::Div(a, b) => {
                let den = b.eval_memo(env, memo)?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                a.eval_memo(env, memo)? * den.inv()?
            }
        };
        memo.insert(key, v.clone());
        Ok(v)
    }
}

/// `L = 1/2 {(u3 - v3)(d_u2 - d_v2) + (u5 - v5)(d_u4 - d_v4)}`.
pub fn apply_l(e: &Expr) -> Result<Expr> {
    if let Some(bad) = e.variables().into_iter().find(|v| !G2_VARS.contains(&v.as_str())) {
        return Err(Error::UnknownVariable(bad));
    }
    let v = Expr::var;
    let t1 = (v("u3") - v("v3")).mul(&e.diff("u2").sub(&e.diff("v2")));
    let t2 = (v("u5") - v("v5")).mul(&e.diff("u4").sub(&e.diff("v4")));
    Ok(Expr::ratio(1, 2).mul(&t1.add(&t2)))
}

/// A variable assignment in a fixed field.
#[derive(Clone, Debug)]
pub struct Env {
    field: FieldSpec,
    vars: HashMap<String, Scalar>,
}

impl Env {
    pub fn new(field: FieldSpec) -> Env {
        Env { field, vars: HashMap::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Binds `name`; the value must live in the environment's field.
    pub fn bind(&mut self, name: &str, value: Scalar) -> Result<&mut Env> {
        self.field.ensure_same(&value.field())?;
        self.vars.insert(name.to_string(), value);
        Ok(self)
    }

    pub fn with(mut self, name: &str, value: Scalar) -> Result<Env> {
        self.bind(name, value)?;
        Ok(self)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Const(q) => write!(f, "{q}"),
            Node::Var(v) => write!(f, "{v}"),
            Node::Add(a, b) => write!(f, "({a} + {b})"),
            Node::Sub(a, b) => write!(f, "({a} - {b})"),
            Node::Mul(a, b) => write!(f, "{a}*{b}"),
            Node::Div(a, b) => write!(f, "({a})/({b})"),
        }
    }
}

macro_rules! expr_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { Expr::$m(&self, &rhs) }
        }
        impl<'a> ops::$tr<&'a Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &'a Expr) -> Expr { Expr::$m(&self, rhs) }
        }
        impl<'a> ops::$tr<&'a Expr> for &'a Expr {
            type Output = Expr;
            fn $m(self, rhs: &'a Expr) -> Expr { Expr::$m(self, rhs) }
        }
        impl<'a> ops::$tr<Expr> for &'a Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { Expr::$m(self, &rhs) }
        }
    )*};
}

expr_ops!(Add add, Sub sub, Mul mul, Div div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const P: FieldSpec = FieldSpec::Prime(10007);

    fn random_g2_env(rng: &mut ChaCha8Rng) -> Env {
        let mut env = Env::new(P);
        for name in G2_VARS {
            env.bind(name, P.from_i64(rng.gen_range(0..10007))).unwrap();
        }
        env
    }

    #[test]
    fn power_rule() {
        let x = Expr::var("x");
        let d = (&x * &x).diff("x");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let v = P.from_i64(rng.gen_range(0..10007));
            let env = Env::new(P).with("x", v.clone()).unwrap();
            assert_eq!(d.eval(&env).unwrap(), P.from_i64(2) * v);
        }
        assert!(Expr::constant(7).diff("x").is_const_zero());
    }

    #[test]
    fn divided_differences_match_derivative() {
        // e = 3x^3 - x/2 + 5; the difference quotient tends to e'(x) as h -> 0,
        // and (e(x+h) - e(x))/h - e'(x) is the exact polynomial 9xh + 3h^2 in h
        let q = FieldSpec::Rationals;
        let x = Expr::var("x");
        let e = Expr::constant(3) * x.pow(3) - Expr::ratio(1, 2) * &x + Expr::constant(5);
        let de = e.diff("x");
        let x0 = Scalar::parse(q, "2/3").unwrap();
        let exact = de.eval(&Env::new(q).with("x", x0.clone()).unwrap()).unwrap();
        let mut h = Scalar::parse(q, "1/2").unwrap();
        let half = h.clone();
        let mut prev_err: Option<Scalar> = None;
        for _ in 0..10 {
            let lo = e.eval(&Env::new(q).with("x", x0.clone()).unwrap()).unwrap();
            let hi = e.eval(&Env::new(q).with("x", &x0 + &h).unwrap()).unwrap();
            let quotient = (hi - lo) * h.inv().unwrap();
            let err = &quotient - &exact;
            let predicted = q.from_i64(9) * &x0 * &h + q.from_i64(3) * h.square();
            assert_eq!(err, predicted);
            if let Some(p) = prev_err {
                assert_ne!(p, err);
            }
            prev_err = Some(err);
            h = &h * &half;
        }
    }

    #[test]
    fn eval_errors() {
        let x = Expr::var("x");
        assert_eq!(x.eval(&Env::new(P).with("x", P.from_i64(5)).unwrap()).unwrap(), P.from_i64(5));
        let ab = Expr::var("a") / Expr::var("b");
        let env = Env::new(P).with("a", P.one()).unwrap().with("b", P.zero()).unwrap();
        assert_eq!(ab.eval(&env), Err(Error::ZeroDenominator));
        assert_eq!(x.eval(&Env::new(P)), Err(Error::UnboundVariable("x".into())));
        assert_eq!(Expr::ratio(1, 10007).eval(&Env::new(P)), Err(Error::ZeroDenominator));
    }

    #[test]
    fn l_is_tangent_to_singular_set() {
        let v = Expr::var;
        let s = (v("u2") - v("v2")) * (v("u5") - v("v5")) - (v("u3") - v("v3")) * (v("u4") - v("v4"));
        let ls = apply_l(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            assert!(ls.eval(&random_g2_env(&mut rng)).unwrap().is_zero());
        }
        assert!(apply_l(&Expr::constant(4)).unwrap().is_const_zero());
        assert_eq!(apply_l(&v("x")), Err(Error::UnknownVariable("x".into())));
    }

    #[test]
    fn l_is_a_derivation() {
        let v = Expr::var;
        let e1 = v("u2") * v("v4") + v("u5");
        let e2 = (v("v3") - v("u2")) / (v("u4") + v("v2"));
        let (a, b) = (Expr::constant(3), Expr::ratio(-2, 5));
        let lin = apply_l(&(&a * &e1 + &b * &e2)).unwrap();
        let lin_rhs = &a * apply_l(&e1).unwrap() + &b * apply_l(&e2).unwrap();
        let leib = apply_l(&(&e1 * &e2)).unwrap();
        let leib_rhs = apply_l(&e1).unwrap() * &e2 + &e1 * apply_l(&e2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let env = random_g2_env(&mut rng);
            if (v("u4") + v("v2")).eval(&env).unwrap().is_zero() {
                continue;
            }
            assert_eq!(lin.eval(&env).unwrap(), lin_rhs.eval(&env).unwrap());
            assert_eq!(leib.eval(&env).unwrap(), leib_rhs.eval(&env).unwrap());
        }
    }

    #[test]
    fn l_raises_weight_by_one() {
        // weights: u_k, v_k have weight k
        let v = Expr::var;
        let e = v("u2") * v("v3") + v("u5");
        let le = apply_l(&e).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let env = random_g2_env(&mut rng);
            let t = P.from_i64(rng.gen_range(1..10007));
            let mut scaled = Env::new(P);
            for name in G2_VARS {
                let k: u64 = name[1..].parse().unwrap();
                scaled.bind(name, env.vars[name].clone() * t.pow(k)).unwrap();
            }
            assert_eq!(le.eval(&scaled).unwrap(), le.eval(&env).unwrap() * t.pow(6));
        }
    }
}
