//! Text front end for the `polycalc` library: a document format for sets,
//! functions, vectors and maps, and one command per library operation.

pub mod commands;
pub mod format;

pub use commands::{run, Outcome};
pub use format::{parse, parse_documents, Body, Document, FunctionText};
