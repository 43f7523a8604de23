//! Exact computations with jacobian elliptic surfaces over the projective line and with
//! even integral lattices.

pub mod algebra;
pub mod bench;
pub mod error;
pub mod lattice;
pub mod mw;
pub mod surface;
pub mod twist;
