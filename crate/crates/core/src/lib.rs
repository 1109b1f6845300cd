//! Ordinal notations below ε₀ and the machinery for presenting them on
//! graphs: fundamental-sequence systems, fast-growing hierarchies,
//! higher-order pushdown systems, automaton vertex-pair types and
//! lexicographic trees carrying cofinal-sequence constructions.

pub mod ordinal;
pub mod funseq;
pub mod fgh;
pub mod automaton;
pub mod graph;
pub mod hopda;
pub mod types;
pub mod lextree;
pub mod cli;
