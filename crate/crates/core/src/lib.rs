//! Lawvere-Tierney topologies on finite presheaf toposes and nuclei on finite
//! Heyting algebras, with brute-force oracles for every structural claim.

pub mod fincat;
pub mod lattice;
pub mod presheaf;
pub mod omega;
pub mod topology;
pub mod corpus;
pub mod closure;
pub mod fuzzy;
pub mod suite;
