//! Command-line layer for pptlab: expression parsing, requests and result
//! records, the built-in example corpus, and the on-disk cache.

pub mod cache;
pub mod corpus;
pub mod parse;
pub mod record;
pub mod run;

pub use parse::{expand_vars, parse_poly, ParseError};
pub use record::ResultRecord;
pub use run::{run, CliError, Command, Request};
