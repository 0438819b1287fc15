//! Exact algebra and combinatorics for permutations with long increasing
//! prefixes: RSK, tableau enumeration, the tableau-level and
//! permutation-level bijections, q-polynomial identities, and an exhaustive
//! verification harness for the counting theorems.

pub mod bijections;
pub mod error;
pub mod perm;
pub mod permbij;
pub mod qpoly;
pub mod tableau;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{
    enumerate_c, enumerate_pi, enumerate_sn, DescentSet, Permutation, DEFAULT_ENUM_CAP,
};
pub use qpoly::QPolynomial;
pub use tableau::{rsk, rsk_inverse, Shape, Tableau, TableauPair};
