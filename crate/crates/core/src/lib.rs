//! Executable quantum logic: finite orthocomplemented lattices with law
//! checking, and a finite-dimensional quantum probability engine with
//! sequenced (Lüders) conditionals and a small query language.

pub mod catalog;
pub mod cli;
pub mod lattice;
pub mod laws;
pub mod quantum;
pub mod query;
pub mod scenarios;
