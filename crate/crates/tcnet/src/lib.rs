//! Decision procedure for language inclusion between timed automata and
//! one-clock timed counter nets, together with the supporting semantics.

pub mod automata;
pub mod channel;
pub mod cli;
pub mod fixtures;
pub mod formats;
pub mod inclusion;
pub mod mtl;
pub mod rational;
pub mod regionwords;
pub mod sample;
pub mod wqo;

pub use automata::{Automaton, TimedWord};
pub use rational::Rational;
