//! Quadratic Dirichlet L-functions over F_q[t], their zeros and ratio
//! averages, and the symplectic character combinatorics behind the
//! ratio main terms.

pub mod cli;
pub mod ffpoly;
pub mod lfunc;
pub mod stats;
pub mod symchar;
