//! Root systems, finite Weyl groups and the q-polynomials attached to them.

mod cartan;
mod datum;
mod weyl;

pub use cartan::{CartanComponent, CartanSpec};
pub use datum::RootDatum;
pub use weyl::{
    coxeter_element, degree_product_poly, dl_cuspidal_degree_poly, element_from_word, group_order_poly,
    poincare_poly, reflection_matrix, simple_reflection_matrix, torus_order_poly, WeylElement, WeylGroup,
    DEFAULT_WEYL_RANK_GUARD,
};
