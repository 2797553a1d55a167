//! Disjoint difference families in finite fields and in Galois rings of
//! characteristic `p^2`, their developments into 2-designs, and the block
//! intersection invariants used to tell those designs apart.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: prime and extension fields, cyclotomic classes;
//! * [`galois_ring`]: `GR(p^2, r)`, Teichmüller sets, p-adic and unit
//!   decompositions;
//! * [`families`]: Wilson, Davis, Teichmüller-squares and Furino families,
//!   plus three two-block families in `F_{11^3}`;
//! * [`designs`]: development, 2-design verification, intersection profiles
//!   and a small isomorphism search;
//! * [`cyclotomy`]: cyclotomic-number tables, brute force and closed form;
//! * [`isogate`]: closed-form profiles, the nonisomorphism gate and
//!   certificates.

pub mod algebra;
pub mod cyclotomy;
pub mod designs;
pub mod error;
pub mod families;
pub mod galois_ring;
pub mod isogate;

pub use algebra::{build_field, cyclotomic_classes, AdditiveGroup, FieldCtx, Polynomial};
pub use designs::{develop, Design, IntersectionProfile};
pub use error::{Error, Result};
pub use families::{Construction, DifferenceFamily, ValidationReport};
pub use galois_ring::{build_ring, RingCtx};

/// Version string embedded in certificates.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
