//! Exact construction of automorphic Lie algebras over rings of rational
//! functions: finite Möbius groups, group averages, primitive automorphic
//! functions, quasigraded bases and their structure constants.

pub mod autfun;
pub mod cases;
pub mod cli;
pub mod liealg;
pub mod linalg;
pub mod moebius;
pub mod polyrat;
pub mod qgrade;
pub mod redgroup;
pub mod scalars;
