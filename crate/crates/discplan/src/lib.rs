//! NCL machines compiled into two-class disc-robot motion planning
//! instances, plus the geometric checkers that certify each gadget.
//!
//! The pipeline is `ncl` (graph IR and flip search) → `layout` (orthogonal
//! grid drawing, cell plan) → `gadget` (exact gadget geometry) →
//! `compiler` (instance assembly, arc approximation, SVG). `cspace` holds
//! the geometric ground truth and `equivalence` the abstract cross-check.

pub mod compiler;
pub mod cspace;
pub mod equivalence;
pub mod gadget;
pub mod geom;
pub mod layout;
pub mod ncl;

/// Absolute tolerance for comparing closed-form constants.
pub const TOL: f64 = 1e-9;
