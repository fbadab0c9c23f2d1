//! Flow paths and flow categories of acyclic partial matchings on regular CW
//! complexes, with tools to compare the homology of their classifying spaces.

pub mod category;
pub mod cw;
pub mod fixtures;
pub mod flow;
pub mod homology;
pub mod io;
pub mod morse;
pub mod nerve;
pub mod poset;
pub mod snf;
pub mod verify;
