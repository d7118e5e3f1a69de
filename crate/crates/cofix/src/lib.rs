//! Exact computer algebra for symmetric-group cofixed spaces over Z_(p) and
//! F_p: transfer ideals, Groebner bases in the elementary-symmetric ring,
//! degreewise cofixed linear algebra, and graded minimal free resolutions.

pub mod arith;
pub mod combin;
pub mod epoly;
pub mod groebner;
pub mod polyx;
pub mod transfer_ideal;

pub use arith::{Fp, Prime, Rational};
pub use combin::Partition;
