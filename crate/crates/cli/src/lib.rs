//! Command line and HTTP front ends for the benchmark ontology.
//!
//! Both front ends share the same engine calls, so a query answered by
//! `ontology query` and by `POST /api/v1/query` goes through identical code.

pub mod api;
pub mod cli;
pub mod score;
pub mod traces;
