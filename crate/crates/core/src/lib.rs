//! State sums of Turaev–Viro type for closed triangulated 3-manifolds with
//! defect strata, colored by categorical data over a gaunt base category.
//!
//! The pieces, bottom up: [`gaunt`] for the base categories, [`biparcel`]
//! for the coloring data and its validators, [`constructions`] and
//! [`catalog`] to produce such data, [`complex`] for stratified
//! triangulations and their moves, and [`state_sum`] for the invariant.

pub mod biparcel;
pub mod catalog;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod gaunt;
pub mod json;
pub mod report;
pub mod state_sum;

pub use biparcel::{Bicategory, BicategoryData, Biparcel, DEFAULT_TOLERANCE};
pub use error::{Error, Result};
pub use report::Report;
