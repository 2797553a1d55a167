//! Prime-field and extension-field arithmetic, the additive group
//! descriptor shared by all families, and polynomial utilities.

pub mod arith;
pub mod field;
pub mod group;
pub mod poly;

pub use field::{build_field, cyclotomic_classes, FieldCtx};
pub use group::AdditiveGroup;
pub use poly::{Polynomial, Quotient};
