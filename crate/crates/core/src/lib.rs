//! Edge-disjoint plane spanning trees and paths in complete geometric graphs.
//!
//! Exact integer geometry, constructive packings with verifiers, the regular
//! wheel configuration, a cluster-recursive packing with bounded degree, and
//! brute-force oracles for small instances.

pub mod cli;
pub mod constructions;
pub mod crossing;
pub mod geom;
pub mod hierarchical;
pub mod io;
pub mod oracle;
pub mod packing;
pub mod wheel;
