//! Polynomial algebra over `GF(2^m)`.

pub mod lpoly;
pub mod multipoly;
pub mod upoly;
pub mod wp;

pub use lpoly::{lpoly_from_counts, maximal_lpoly, LPoly};
pub use multipoly::{univariate_in, Gen, MultiPoly, RewriteSystem, Rule};
pub use upoly::UniPoly;
pub use wp::{in_wp_image, normalize_pair, trace_poly, wp, wp_reduce, wp_reduce_full, Normalized};
