//! Exact skein invariants of framed link diagrams.

pub mod corpus;
pub mod diagram;
pub mod oracle;
pub mod singular;
pub mod skein;
pub mod ring;
pub mod verify;
