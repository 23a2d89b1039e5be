//! File formats, built-in examples and the `pinchlink` command line on top
//! of `pinchlink-core`.

#![forbid(unsafe_code)]

pub mod app;
pub mod corpus;
pub mod document;

pub use app::run;
pub use document::{graph_to_json, parse_graph, parse_link, parse_link_doc, DocError, LinkDoc};
