//! Exact golden-ratio tiling engine.
//!
//! The crate constructs the alternating-power (AP) and every-power (EP)
//! φ-grid tilings of the first quadrant, the golden-ratio rectangle
//! subdivision that turns one into the other, the Fibonacci rabbit tilings
//! of a right triangle and a trapezoid, and exact certificates for the
//! geometric series and arctangent identities those figures encode.
//!
//! All geometry runs on [`golden::GoldenNumber`], the ring of numbers
//! `a + b·φ` with arbitrary-precision rational coefficients. Floats appear
//! only as projections for reports and SVG output.

pub mod approx;
pub mod fib;
pub mod geometry;
pub mod golden;
pub mod rabbits;
pub mod series;
pub mod subdivision;
pub mod tiling;

pub use geometry::{GoldenPoint, GoldenRect, Orientation, TileSet};
pub use golden::{phi_pow, phi_pow_checked, GoldenNumber};
pub use tiling::{GridMode, GridSpec, Parity};
