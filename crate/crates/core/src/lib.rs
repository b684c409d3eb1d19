//! Exact computations with Steiner's augmented directed complexes.
//!
//! The crate models strict ω-categories presented by strong Steiner complexes:
//! cells of ν(K) as tableaux, orientals and the Street nerve, tensor products
//! and pushouts of complexes, slices and oplax transformations, and the
//! explicit chain maps used to compare nerves of slices with slices of nerves.

pub mod cell;
pub mod chain;
pub mod complex;
pub mod dot;
pub mod error;
pub mod gray;
pub mod hom;
pub mod json;
pub mod morphism;
pub mod nu;
pub mod omega;
pub mod simplex;
pub mod slice;
pub mod snf;
pub mod sset;
pub mod theorem_a;
pub mod solve;

pub use cell::{compose, map_cell, validate_cell, Cell, CellDefect};
pub use chain::Chain;
pub use complex::{
    atom_tableau, is_loopfree, is_unitary, pos_neg_decompose, strong_loopfree_order, validate_complex, Atom,
    Complex,
};
pub use error::{Error, Result};
pub use morphism::{check_morphism, AdcMorphism};
pub use simplex::{c_delta, c_of_map, join_maps, MonotoneMap};
