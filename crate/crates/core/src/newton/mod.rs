//! φ-Newton polygons and lower bounds on the `p`-part of a polygon's index.

mod bounds;
mod polygon;
mod render;

pub use bounds::{
    certify_non_monogenic, default_witness_primes, jk_bound, jk_residual, ore_bound, u_value,
    BoundMethod, FactorRecord, IndexBoundReport, IndexVerdict, JkRecord, NonMonogenicReport,
    UBranch,
};
pub use polygon::{
    lower_hull, phi_index, phi_index_brute_force, phi_newton_polygon, NewtonPolygon, Point,
};
pub use render::{render_ascii, render_svg};
