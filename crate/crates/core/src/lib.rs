//! Exact arithmetic on the hyperelliptic groupoid `C^{3g}`.
//!
//! Points of `C^{3g}` are Mumford-style coordinates `(P_even, P_odd, Z)`; the
//! remaining curve parameters are recovered from a point by [`groupoid::anchor`]
//! and two points over the same curve multiply by [`groupoid::star`]. The
//! classical Cantor composition in [`cantor`] serves as an independent oracle,
//! and [`closedform`] carries explicit genus 1 and 2 laws built on the
//! symbolic layer in [`expr`].

pub mod cantor;
pub mod cli;
pub mod closedform;
pub mod error;
pub mod expr;
pub mod field;
pub mod groupoid;
pub mod identities;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod sample;

pub use error::{Error, Result};
pub use field::{make_field, FieldKind, FieldSpec, Scalar};
pub use groupoid::{anchor, invert, star, CurveParams, GroupoidPoint, PointListRep, RFunction};
pub use linalg::Matrix;
pub use poly::Poly;
