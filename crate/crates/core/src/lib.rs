//! Inner functions on the unit disc: Blaschke products over generated zero
//! families, atomic singular inner functions and their finite products.
//!
//! The evaluation layer ([`geometry`], [`jet`], [`inner`]) is generic over the
//! scalar type through [`Real`], so `f32` and `f64` both work. The
//! experiment layers ([`levelset`], [`criteria`], [`norms`]) run in `f64`.
//!
//! ```
//! use innerfn::{InnerFunction, ZeroFamily, InnerFunctionSpec, C64};
//!
//! let spec = InnerFunctionSpec::blaschke(ZeroFamily::geometric(2.0, 20).unwrap());
//! let theta = InnerFunction::new(&spec).unwrap();
//! let jet = theta.eval(C64::new(0.0, 0.0)).unwrap();
//! assert!(jet.f.norm() < 1.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod criteria;
pub mod error;
pub mod geometry;
pub mod inner;
pub mod jet;
pub mod levelset;
pub mod norms;
pub mod scalar;

mod sum;

pub use error::{Error, Result};
pub use geometry::{DiscPoint, Region};
pub use inner::{
    Atom, AtomFamily, AtomKind, InnerFunction, InnerFunctionSpec, ZeroFamily, ZeroKind,
};
pub use jet::Jet2;
pub use num_complex::Complex;
pub use scalar::Real;

/// Double-precision complex number.
pub type C64 = Complex<f64>;
/// Single-precision complex number.
pub type C32 = Complex<f32>;

/// Double-precision second-order jet.
pub type Jet = Jet2<f64>;
/// Single-precision second-order jet.
pub type Jet32 = Jet2<f32>;

/// Double-precision function description; the type the experiment layers consume.
pub type Spec = InnerFunctionSpec<f64>;
/// Single-precision function description.
pub type Spec32 = InnerFunctionSpec<f32>;

/// Double-precision materialized inner function.
pub type Inner = InnerFunction<f64>;
/// Single-precision materialized inner function.
pub type Inner32 = InnerFunction<f32>;

/// Double-precision disc point.
pub type Point = DiscPoint<f64>;
