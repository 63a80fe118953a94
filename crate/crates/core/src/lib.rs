//! Bounded and almost periodic solutions of
//!
//! ```text
//! ẍ(t) + a·x(t) + b·x(−t) = g(t)                 (linear)
//! ẍ(t) + a·x(t) + b·x(−t) = f(t, x(t), x(−t))    (nonlinear)
//! ```
//!
//! Forcing is represented exactly as a trigonometric polynomial over a
//! declared basis of rationally independent frequencies ([`trigpoly`]).
//! Linear problems are solved in closed form ([`spectral`]) or by Green's
//! kernel quadrature on a reflection-symmetric grid ([`grid`]); nonlinear
//! problems by Picard iteration on that grid ([`nonlinear`]). Every solution
//! can be cross-checked by the independent oracles in [`verify`].

pub mod cli;
pub mod error;
pub mod grid;
pub mod linalg;
pub mod nonlinear;
pub mod spectral;
pub mod trigpoly;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{GridFunction, KernelSpec};
pub use nonlinear::{Monomial, Nonlinearity, PicardConfig};
pub use spectral::{EquationParams, SpectralData};
pub use trigpoly::{Frequency, FrequencyBasis, ModuleRelation, TrigPoly};
