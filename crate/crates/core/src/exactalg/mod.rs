//! Exact arithmetic: rationals, number-field towers, univariate polynomials,
//! factorization, minimal polynomials and primitive elements.

pub mod factor;
pub mod field;
pub mod intfactor;
pub mod linalg;
pub mod poly;
pub mod primitive;

pub use factor::{factor, squarefree};
pub use field::{rat, AlgElem, Elem, Field, DEFAULT_DEGREE_CAP};
pub use poly::UniPoly;
pub use primitive::{minimal_poly, primitive_element, primitive_element_over, PrimitiveElement};

impl UniPoly {
    pub fn factor(&self) -> crate::error::Result<Vec<(UniPoly, usize)>> {
        factor::factor(self)
    }

    pub fn is_irreducible(&self) -> crate::error::Result<bool> {
        factor::is_irreducible(self)
    }
}
