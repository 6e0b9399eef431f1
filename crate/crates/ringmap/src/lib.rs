//! Moduli of doubly connected plane domains and harmonic homeomorphisms.
//!
//! The library decides, numerically, when a harmonic homeomorphism exists
//! between two ring domains and constructs one explicitly in the cases that
//! admit a construction. The main pieces:
//!
//! * [`domain`] — ring domain kinds (annulus, Teichmüller, Grötzsch, slit
//!   strip, real slit rings, polygonal rings, punctured domains), affine maps
//!   of the plane, areas, width and separation.
//! * [`elliptic`] — complete elliptic integrals and the Grötzsch μ function.
//! * [`moduli`] — closed-form conformal moduli, the Carleman modulus and the
//!   Teichmüller width bound.
//! * [`capacity`] — a finite-difference Dirichlet-energy solver for the
//!   conformal capacity of arbitrary ring domains.
//! * [`affine_search`] — the affine modulus `Mod_@` as a supremum over shear
//!   images, with extrapolation toward non-attained suprema.
//! * [`greens`] — Green's functions for disk and strip, the annulus lower
//!   bound and the three-circles dilatation estimate.
//! * [`gate`] — existence verdicts combining the cosh bound for annuli with
//!   the necessary and sufficient modulus inequalities.
//! * [`construct`] — explicit harmonic homeomorphisms: shear maps driven by a
//!   Schwarz–Christoffel integral, power shears, the radial `F_t` family and
//!   affine rebalancing.
//! * [`validate`] — independent checks of harmonicity, injectivity, boundary
//!   correspondence, dilatation bounds and the circle-map Fourier test.
//! * [`render`] — SVG rendering of parameter grids under a constructed map.
//! * [`shorthand`] — the compact `annulus(1,2)` / `teichmuller s=1` domain
//!   syntax used by the command line.

pub mod affine_search;
pub mod capacity;
pub mod construct;
pub mod domain;
pub mod elliptic;
pub mod gate;
pub mod geom;
pub mod greens;
pub mod moduli;
pub mod render;
pub mod shorthand;
pub mod validate;

pub use domain::{AffineMap, Arc, ExtendedModulus, ModulusMethod, Polygon, RingDomain};

/// Library-level error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid affine map: {0}")]
    InvalidAffine(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("no closed form for this domain kind; use the grid solver")]
    NoClosedForm,
    #[error("width bound inapplicable: {0}")]
    WidthInapplicable(String),
    #[error("solver failed: {0}")]
    Solver(String),
    #[error("bracketing failed: {0}")]
    Bracketing(String),
    #[error("evaluation budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("point outside the source domain")]
    OutOfDomain,
    #[error("stage is a delegated conformal map and cannot be evaluated")]
    DelegatedStage,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
