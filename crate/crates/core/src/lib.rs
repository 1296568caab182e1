//! Barratt–Eccles and surjection operads, the table reduction morphism between
//! them, interval-cut actions on normalized chains of simplicial sets, and the
//! resulting E-infinity structure on cochains (cup-i products, Steenrod squares),
//! together with brace operations on Hochschild cochains.

pub mod algebra_core;
pub mod barratt_eccles;
pub mod hochschild;
pub mod interval_cut;
pub mod linalg;
pub mod simplicial_sets;
pub mod sphere_suspension;
pub mod surjections;
pub mod table_reduction;
pub mod verify;

mod error;

pub use error::{Error, Result};
