//! Text formats: network and morphism JSON, Burmeister contexts, CSV tables, DOT.

mod cxt;
mod dot;
mod morphism;
mod network;
mod tables;

pub use cxt::{emit_context, parse_context};
pub use dot::emit_dot;
pub use morphism::{emit_morphism, parse_morphism};
pub use network::{emit_network, load_network, parse_network, ParseOptions};
pub use tables::{concept_label, generators_csv, order_csv, successors_csv};
