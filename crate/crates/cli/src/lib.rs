pub mod commands;
pub mod parse;

pub use commands::run;
