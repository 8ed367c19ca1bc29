//! File formats, seeded generators and SVG rendering.

pub mod codec;
pub mod generate;
pub mod svg;

pub use codec::{
    digest, packing_from_str, packing_to_string, pointset_from_str, pointset_to_string, read_packing,
    read_pointset, write_packing, write_pointset, CodecError, PackingDoc, Provenance,
};
pub use generate::{convex_points, random_points, GenerateError};
pub use svg::render_svg;
