//! Exact Ihara zeta functions of finite graphs and of the branched abelian
//! covers built from voltage assignments, their character L-functions, and
//! the Iwasawa invariants `(μ, λ, ν)` of spanning-tree counts along branched
//! `ℤ_p`-towers.

pub mod action;
pub mod algebra;
pub mod datum_file;
pub mod equivariant;
pub mod error;
pub mod graph;
pub mod iwasawa;
pub mod lfunctions;
pub mod random;
pub mod tower;

pub use error::{Error, Result};
