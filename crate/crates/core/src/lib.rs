//! Exact Hardy–Littlewood maximal functions and frequency functions on the
//! integers and on step functions of the real line.

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod continuum;
pub mod corpus;
pub mod error;
pub mod fixed;
pub mod growth;
pub mod io;
pub mod maxengine;
pub mod rational;
pub mod signal;
pub mod value;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rat;
pub use signal::{Amplitude, AnySignal, Block, BlockSignal, Caps, DenseSignal, Signal};
pub use value::{Cmp3, Value};
