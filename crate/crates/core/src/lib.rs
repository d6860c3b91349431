//! Exact Gerstenhaber brackets on the Hochschild cohomology of `S(V) # G`.
//!
//! The crate works over cyclotomic fields, represents cohomology classes by
//! their canonical representatives in `H^*`, and evaluates brackets with
//! either the defining alternating sum or the determinant formula.
//!
//! ```
//! use gerstenhaber::{catalog, bracket::gerstenhaber_bracket, cochain::invariant_basis, BasisTable};
//!
//! let g = catalog::dihedral8();
//! let basis = invariant_basis(&g, &BasisTable::new(), 2, 0).unwrap();
//! let b = gerstenhaber_bracket(&g, &basis[0], &basis[0]).unwrap();
//! assert!(b.is_zero());
//! ```

pub mod bracket;
pub mod cochain;
pub mod error;
pub mod exactnum;
pub mod hecke;
pub mod io;
pub mod matgroup;
pub mod par;
pub mod polyform;
pub mod syntax;
pub mod verify;

pub use bracket::{gerstenhaber_bracket, BracketEngine};
pub use cochain::{Cochain, Form, Wedge};
pub use error::{Error, Result};
pub use exactnum::{quantum_integer, CycNum, Rat};
pub use matgroup::{catalog, BasisId, BasisTable, EigenData, Group, GroupSpec, Matrix};
pub use par::Execution;
pub use polyform::{Monomial, Poly};
