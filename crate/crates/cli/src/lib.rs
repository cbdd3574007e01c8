//! Problem-file frontend for the `setshare` library.

pub mod parse;
pub mod render;
pub mod run;

pub use parse::{parse, parse_with_universe, ParseError, ProblemFile, Symbols};
pub use run::{run, Command, Format, Options, Output};
