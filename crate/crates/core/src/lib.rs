//! Leavitt path algebras of directed graphs: classification, normal forms,
//! the matricial structure of the degree-zero part, and witnesses for
//! pure infiniteness.

pub mod graph;
pub mod lpa;
pub mod matricial;
pub mod pnorm;
pub mod spi;
pub mod transforms;
