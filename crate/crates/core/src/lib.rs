//! Weighted automata as coalgebras: semirings, simulations, equivalence
//! checking, zig-zag witnesses and experiments on unary term coalgebras.

pub mod automaton;
pub mod bloom;
pub mod determinize;
pub mod equivalence;
pub mod error;
pub mod gen;
pub mod io;
pub mod lab;
pub mod linalg;
pub mod semiring;
pub mod simulation;
pub mod zigzag;

pub use error::{Error, Result};
