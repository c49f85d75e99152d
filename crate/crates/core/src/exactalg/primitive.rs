//! Minimal polynomials and primitive elements.

use super::field::{AlgElem, Elem, Field, DEFAULT_DEGREE_CAP};
use super::linalg::{self, Matrix};
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// Monic minimal polynomial of `a` over the subfield `over` of its tower.
pub fn minimal_poly(a: &AlgElem, over: &Field) -> Result<UniPoly> {
    minimal_poly_elem(a.field(), a.value(), over)
}

pub(crate) fn minimal_poly_elem(f: &Field, a: &Elem, over: &Field) -> Result<UniPoly> {
    let n = f.degree_over(over)?;
    let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(n + 1);
    let mut p = f.one();
    for k in 0..=n {
        cols.push(f.coords_over(&p, over)?);
        if k >= 1 {
            let m: Matrix = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
            let ker = linalg::kernel(over, &m);
            if let Some(v) = ker.into_iter().find(|v| !over.is_zero(&v[k])) {
                let inv = over.inv(&v[k])?;
                let cs = v.iter().map(|c| over.mul(c, &inv)).collect();
                return Ok(UniPoly::new(over, cs));
            }
        }
        p = f.mul(&p, a);
    }
    Err(Error::Internal("no linear dependency among powers".into()))
}

/// `F` presented as a simple extension `sub[z]/(g)` with mutually inverse
/// embeddings.
#[derive(Clone, Debug)]
pub struct PrimitiveElement {
    pub simple: Field,
    pub theta: AlgElem,
    /// Column `j` holds the coordinates over `sub` of `theta^j` inside `F`.
    basis: Matrix,
    inverse: Matrix,
    tower: Field,
    sub: Field,
}

impl PrimitiveElement {
    pub fn defining_poly(&self) -> UniPoly {
        self.simple.modulus().unwrap_or_else(|| UniPoly::var(&self.sub))
    }

    /// Maps an element of the tower into the simple field.
    pub fn to_simple(&self, e: &Elem) -> Result<Elem> {
        let c = self.tower.coords_over(e, &self.sub)?;
        let s = linalg::mat_vec(&self.sub, &self.inverse, &c);
        self.simple.from_coords(&s, &self.sub)
    }

    /// Maps an element of the simple field back into the tower.
    pub fn from_simple(&self, e: &Elem) -> Result<Elem> {
        let c = self.simple.coords_over(e, &self.sub)?;
        let t = linalg::mat_vec(&self.sub, &self.basis, &c);
        self.tower.from_coords(&t, &self.sub)
    }

    pub fn tower(&self) -> &Field {
        &self.tower
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }
}

/// Primitive element of `f` over Q.
pub fn primitive_element(f: &Field) -> Result<PrimitiveElement> {
    primitive_element_over(f, &Field::rationals())
}

/// Primitive element of `f` relative to a subfield of its tower.
pub fn primitive_element_over(f: &Field, sub: &Field) -> Result<PrimitiveElement> {
    if f.absolute_degree() > DEFAULT_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { degree: f.absolute_degree(), cap: DEFAULT_DEGREE_CAP });
    }
    let n = f.degree_over(sub)?;
    // generators of the levels strictly above `sub`, lifted into f
    let mut gens = Vec::new();
    let mut level = f.clone();
    while level != *sub {
        let g = f.lift(&level, &level.generator())?;
        gens.push(g);
        level = level.base().ok_or(Error::NotASubfield)?.clone();
    }
    for c in 1..=64i64 {
        let mut theta = f.zero();
        let mut w = f.one();
        for g in &gens {
            theta = f.add(&theta, &f.mul(&w, g));
            w = f.mul(&w, &f.from_int(c));
        }
        let mp = minimal_poly_elem(f, &theta, sub)?;
        if mp.degree() == Some(n) {
            let simple = if n == 1 && f == sub {
                sub.clone()
            } else {
                sub.adjoin_irreducible(&mp, "z", usize::MAX)?
            };
            let mut cols = Vec::with_capacity(n);
            let mut p = f.one();
            for _ in 0..n {
                cols.push(f.coords_over(&p, sub)?);
                p = f.mul(&p, &theta);
            }
            let basis: Matrix = (0..n).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
            let inverse = linalg::inverse(sub, &basis)?;
            return Ok(PrimitiveElement {
                simple,
                theta: AlgElem::new(f.clone(), theta),
                basis,
                inverse,
                tower: f.clone(),
                sub: sub.clone(),
            });
        }
    }
    Err(Error::Internal("no primitive element found among small combinations".into()))
}
