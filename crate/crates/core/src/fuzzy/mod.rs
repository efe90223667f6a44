//! Triangular fuzzy numbers, Z-numbers and the linguistic scales used to
//! elicit them.

mod scales;
mod tfn;
mod znumber;

pub use scales::{
    rating_term_to_tfn, rating_transform_table, weighting_term_to_tfn, weighting_transform_table,
    EiMode, ImportanceTerm, LinguisticScale, RatingTerm, ReliabilityTerm, ScaleEntry, ScaleName,
    TransformRow,
};
pub use tfn::{round_half_up, Tfn};
pub use znumber::{z_to_tfn, ZNumber};
