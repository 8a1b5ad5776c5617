//! Exact searches and explicit constructions around Ramsey-type numbers of
//! graph families and unions of triangle factors, with matching problems in
//! partite hypergraphs.

pub mod certificate;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod factor;
pub mod graph;
pub mod hypergraph;
pub mod ramsey;
pub mod search;

pub use error::{Error, Result};
