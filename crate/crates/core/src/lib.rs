//! Kolchin polynomials of lattice sets and effective bounds on the typical
//! differential dimension of prime components.

pub mod bounds;
pub mod doc;
pub mod lattice;
pub mod mu;
pub mod numeric;
pub mod oracle;
pub mod verify;
