//! Exact computations on webs of quadrics in `P^7`.
//!
//! ```
//! use quadweb::web::{det_octic, quadric_to_points, sample_web, Plane};
//! use quadweb::{FieldCtx, PrimeField};
//!
//! # fn main() -> Result<(), quadweb::web::WebError> {
//! let f = PrimeField::default();
//! let web = sample_web(&f, 7, Some(Plane::standard(&f)))?;
//! let octic = det_octic(&web)?;
//! assert_eq!(octic.det_poly().homogeneous_degree(), Some(8));
//! let member = web.member(&[f.elem(1), f.elem(2), f.elem(3), f.elem(4)])?;
//! let result = quadric_to_points(&web, &member)?;
//! println!("{:?}, {} points", result.splitting, result.points().len());
//! # Ok(())
//! # }
//! ```

pub mod arith;
pub mod campaign;
pub mod groebner;
pub mod intersect;
pub mod linalg;
pub mod poly;
mod status;
pub mod web;

pub use arith::{Field, FieldCtx, Fp, PrimeField, Rationals, Q};
pub use status::Status;

pub type FpMat = linalg::Mat<Fp>;
pub type QMat = linalg::Mat<Q>;
pub type FpPoly = poly::MultiPoly<Fp>;
pub type QPoly = poly::MultiPoly<Q>;
pub type FpWeb = web::Web<Fp>;
pub type QWeb = web::Web<Q>;
