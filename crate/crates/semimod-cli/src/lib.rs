//! Command-line companion to the `semimod` engine: the JSON model format,
//! report envelopes, the worked-example corpus with goldens, and the
//! exact-rational matrix witness.

pub mod cli;
pub mod corpus;
pub mod model;
pub mod rational;
