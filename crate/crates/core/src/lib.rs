//! Ordered abelian groups of finite rank and bundles of them over simplicial
//! complexes.
//!
//! Groups are `Z^k` with either a half-space cone `{f > 0} ∪ {0}` for a
//! functional `f` with exact real-quadratic coefficients ([`surd::Surd`]), or a
//! simplicial cone spanned by a unimodular basis. On top of that sit state
//! spaces, Z/2 simplicial cohomology with cup products, Stiefel-Whitney
//! total classes, canonical frames of oriented planes, and the w1
//! classification of bundles whose fibers are such groups.
//!
//! ```
//! use ordbundle::{catalog, bundle_classifier::enumerate_classes};
//!
//! let torus = catalog::torus();
//! assert_eq!(enumerate_classes(&torus).len(), 4);
//! ```

pub mod bundle_classifier;
pub mod catalog;
pub mod error;
pub mod formats;
pub mod frames;
pub mod gf2;
pub mod gf2_complex;
pub mod kronecker;
pub mod linalg;
pub mod ordered_group;
pub mod state_space;
pub mod surd;
pub mod sw_calculus;

pub use error::{Error, Result};
