//! Rational polyhedral cones and fans over an integer lattice.

mod cone;
mod dd;
mod fan;
mod hilbert;
mod iso;

pub use cone::{cone_contains, cone_is_subset, dual_cone, Cone, HRep};
pub use fan::{
    check_fibration, product_fan, product_projections, projective_space_fan, quotient_projection,
    Fan, FanJson, Fibration,
};
pub use hilbert::hilbert_basis;
pub use iso::{find_isomorphism, kernel_colors, verify_isomorphism};

/// Star subdivision of `fan` at the primitive vector `r`.
pub fn star_subdivision(fan: &Fan, r: &crate::LatticeVector) -> Result<Fan, crate::Error> {
    fan.star_subdivision(r)
}

pub fn is_smooth(c: &Cone) -> Result<bool, crate::Error> {
    c.is_smooth()
}

pub fn is_simplicial(c: &Cone) -> Result<bool, crate::Error> {
    c.is_simplicial()
}
