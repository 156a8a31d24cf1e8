//! Exact arithmetic kernel.

pub mod character;
pub mod cyclo;
pub mod det;
pub mod group_ring;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod series;

pub use character::Character;
pub use cyclo::CycloNum;
pub use det::Determinant;
pub use group_ring::GroupRingElem;
pub use matrix::Matrix;
pub use poly::UniPoly;
pub use rational::{format_rational, parse_rational, rat, rat_int, Rational, Valuation};
pub use ring::{Field, Ring};
pub use series::TruncSeries;
