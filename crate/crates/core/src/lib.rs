//! Exact arithmetic for the bicyclic extension `B_ω^F`, the monoid of its
//! injective monoid endomorphisms for `F = {[0), [1)}`, Green's relations on
//! that monoid, and an exhaustive checker for all of their laws on finite
//! truncations.

pub mod cli;
pub mod endo;
pub mod error;
pub mod green;
pub mod semigroup;
pub mod verify;

pub use endo::{EndoForm, GeneratorImages, InjEndo, Level, Variant};
pub use error::{AlgebraError, Result};
pub use semigroup::{BicyclicExtension, Elem, Family, InductiveSet};
