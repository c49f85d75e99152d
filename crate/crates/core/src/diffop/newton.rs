//! Newton polygons of differential operators.
//!
//! The support of `Σ a_i ∂^i` is `{(i, ord a_i - i)}`. The polygon is the
//! lower boundary of the convex hull of the support extended by the quadrant
//! to the upper left: a horizontal part ending at the rightmost point of
//! minimal height, followed by edges of increasing positive slope.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::operator::{stirling1, DiffOperator};
use crate::exactalg::{Elem, Field, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub slope: BigRational,
    pub length: usize,
    pub edge_poly: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
    pub edges: Vec<Edge>,
}

/// Lower hull data of a finite point set with one point per abscissa.
#[derive(Clone, Debug)]
pub(crate) struct Hull {
    /// Rightmost abscissa attaining the minimal height.
    pub istar: usize,
    pub vstar: i64,
    /// Vertices from `(istar, vstar)` to the rightmost point.
    pub chain: Vec<(usize, i64)>,
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

/// `points` sorted by abscissa, distinct abscissae, nonempty.
pub(crate) fn lower_hull(points: &[(usize, i64)]) -> Hull {
    let vstar = points.iter().map(|p| p.1).min().expect("nonempty");
    let istar = points.iter().filter(|p| p.1 == vstar).map(|p| p.0).max().unwrap();
    let mut chain: Vec<(usize, i64)> = Vec::new();
    for &p in points.iter().filter(|p| p.0 >= istar) {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    Hull { istar, vstar, chain }
}

/// Reduced slope `(p, q)` of the segment between two vertices.
pub(crate) fn segment_slope(a: (usize, i64), b: (usize, i64)) -> (i64, i64) {
    let dv = b.1 - a.1;
    let dk = (b.0 - a.0) as i64;
    let g = dv.gcd(&dk);
    (dv / g, dk / g)
}

/// Support points `(i, ord a_i - i)` with leading coefficients.
fn support(l: &DiffOperator) -> Vec<(usize, i64, Elem)> {
    l.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.valuation().map(|v| (i, v - i as i64, a.leading().unwrap().clone())))
        .collect()
}

fn indicial(field: &Field, pts: &[(usize, i64, Elem)], vstar: i64) -> UniPoly {
    let d = pts.iter().map(|p| p.0).max().unwrap_or(0);
    let s = stirling1(d);
    let mut acc = UniPoly::zero(field);
    for (i, v, c) in pts {
        if *v != vstar {
            continue;
        }
        let falling: Vec<Elem> = (0..=*i).map(|j| field.from_rat(&BigRational::from_integer(s[*i][j].clone()))).collect();
        acc = acc.add(&UniPoly::new(field, falling).scale(c));
    }
    acc
}

/// Edge polynomial `Σ α_k Z^{(k - k0)/q}` over the points on the segment.
pub(crate) fn edge_poly(field: &Field, pts: &[(usize, i64, Elem)], a: (usize, i64), b: (usize, i64)) -> UniPoly {
    let (p, q) = segment_slope(a, b);
    let mut cs = vec![field.zero(); (b.0 - a.0) / q as usize + 1];
    for (k, v, c) in pts {
        if *k < a.0 || *k > b.0 {
            continue;
        }
        let dk = (*k - a.0) as i64;
        if dk % q == 0 && (*v - a.1) * q == dk * p {
            cs[(dk / q) as usize] = c.clone();
        }
    }
    UniPoly::new(field, cs)
}

/// Newton polygon of `l`. Every coefficient must have a known leading term.
pub fn newton_polygon(l: &DiffOperator) -> Result<NewtonPolygon> {
    for a in l.coeffs() {
        if a.valuation().is_none() && !a.is_exact_zero() {
            return Err(Error::PrecisionTooLow);
        }
    }
    let field = l.field();
    let pts = support(l);
    let plain: Vec<(usize, i64)> = pts.iter().map(|p| (p.0, p.1)).collect();
    let hull = lower_hull(&plain);
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    if hull.istar > 0 {
        vertices.push((0, hull.vstar));
        edges.push(Edge {
            slope: BigRational::zero(),
            length: hull.istar,
            edge_poly: indicial(field, &pts, hull.vstar),
        });
    }
    vertices.push((hull.istar as i64, hull.vstar));
    for w in hull.chain.windows(2) {
        let (p, q) = segment_slope(w[0], w[1]);
        edges.push(Edge {
            slope: BigRational::new(BigInt::from(p), BigInt::from(q)),
            length: w[1].0 - w[0].0,
            edge_poly: edge_poly(field, &pts, w[0], w[1]),
        });
        vertices.push((w[1].0 as i64, w[1].1));
    }
    Ok(NewtonPolygon { vertices, edges })
}

impl NewtonPolygon {
    /// Slopes with multiplicities (edge lengths), increasing.
    pub fn slopes(&self) -> Vec<(BigRational, usize)> {
        self.edges.iter().map(|e| (e.slope.clone(), e.length)).collect()
    }

    /// `Σ slope · length`.
    pub fn irregularity(&self) -> BigRational {
        self.edges
            .iter()
            .fold(BigRational::zero(), |acc, e| acc + &e.slope * BigRational::from_integer(BigInt::from(e.length)))
    }
}

pub fn slopes(l: &DiffOperator) -> Result<Vec<(BigRational, usize)>> {
    Ok(newton_polygon(l)?.slopes())
}
