//! The chart `x - t^n - t^k y = 0` with fiber coordinate `y = dx/x^r`,
//! `r = k/n`, and how `y` and the points `[ω]` move under a change of
//! uniformizer `t' = g(t)·t`.

use std::fmt;

use crate::diffop::Series;
use crate::error::{Error, Result};
use crate::exactalg::{minimal_poly, AlgElem, Field, UniPoly};
use crate::invariant::RIndex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilatedChart {
    pub n: u64,
    pub k: u64,
    pub r: RIndex,
}

pub fn dilated_chart(n: u64, k: u64) -> Result<DilatedChart> {
    if n == 0 || k <= n {
        return Err(Error::BadIndices { n, k });
    }
    Ok(DilatedChart { n, k, r: RIndex::new(k, n)? })
}

fn t_power(e: u64) -> String {
    if e == 1 {
        "t".to_string()
    } else {
        format!("t^{}", e)
    }
}

impl DilatedChart {
    /// `x - t^n - t^k*y`.
    pub fn relation(&self) -> String {
        format!("x - {} - {}*y", t_power(self.n), t_power(self.k))
    }

    /// The relation at `t = 0`.
    pub fn special_fiber(&self) -> String {
        "x = 0".to_string()
    }

    pub fn fiber_coordinate(&self) -> String {
        if self.r.n == 1 {
            format!("dx/x^{}", self.r.k)
        } else {
            format!("dx/x^({})", self.r)
        }
    }

    /// Checks the relation at a point `(x, t, y)`.
    pub fn satisfied_by(&self, x: &AlgElem, t: &AlgElem, y: &AlgElem) -> Result<bool> {
        let rhs = t.pow(self.n).try_add(&t.pow(self.k).try_mul(y)?)?;
        Ok(x.try_sub(&rhs)?.is_zero())
    }
}

impl fmt::Display for DilatedChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0 ; y = {}", self.relation(), self.fiber_coordinate())
    }
}

/// Leading unit `g(0)` of a uniformizer change `t' = g(t)·t`.
pub fn leading_unit(g: &Series) -> Result<AlgElem> {
    match g.valuation() {
        Some(0) => Ok(AlgElem::new(g.field().clone(), g.leading().unwrap().clone())),
        Some(_) => Err(Error::ZeroUnit),
        None if g.is_exact_zero() => Err(Error::ZeroUnit),
        None => Err(Error::PrecisionTooLow),
    }
}

/// `g0^{n-k}`: the new fiber coordinate is `y' = g0^{n-k} y`.
pub fn coordinate_scale(g0: &AlgElem, n: u64, k: u64) -> Result<AlgElem> {
    if g0.is_zero() {
        return Err(Error::ZeroUnit);
    }
    g0.powi(n as i64 - k as i64)
}

/// `g0^{k-n}·c`: the coefficient `c_{r-1}` after the change.
pub fn transport_coefficient(c: &AlgElem, g0: &AlgElem, n: u64, k: u64) -> Result<AlgElem> {
    if g0.is_zero() {
        return Err(Error::ZeroUnit);
    }
    g0.powi(k as i64 - n as i64)?.try_mul(c)
}

/// Closed point over `over` of a value `v` read in the new coordinate.
pub fn transported_point(v: &AlgElem, g0: &AlgElem, n: u64, k: u64, over: &Field) -> Result<UniPoly> {
    minimal_poly(&transport_coefficient(v, g0, n, k)?, over)
}

/// Rewrites a polynomial in the new dual coordinate back in the old one.
/// Since `y' = g0^{n-k} y`, the dual coordinates satisfy
/// `y'^∨ = g0^{k-n} y^∨`; the result is made monic.
pub fn pull_back_coordinate(p: &UniPoly, g0: &AlgElem, n: u64, k: u64) -> Result<UniPoly> {
    let s = coordinate_scale(g0, n, k)?.inv()?.lift_to(p.field())?;
    Ok(p.scale_var(s.value()).monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn q(n: i64) -> AlgElem {
        AlgElem::from_int(&Field::rationals(), n)
    }

    #[test]
    fn charts() {
        assert_eq!(dilated_chart(1, 2).unwrap().to_string(), "x - t - t^2*y = 0 ; y = dx/x^2");
        assert_eq!(dilated_chart(2, 3).unwrap().to_string(), "x - t^2 - t^3*y = 0 ; y = dx/x^(3/2)");
        assert_eq!(dilated_chart(1, 1).unwrap_err(), Error::BadIndices { n: 1, k: 1 });
        let c = dilated_chart(2, 3).unwrap();
        assert!(c.satisfied_by(&q(12), &q(2), &q(1)).unwrap());
    }

    #[test]
    fn scaling_laws() {
        assert_eq!(coordinate_scale(&q(2), 1, 3).unwrap().as_rational(), Some(rat(1, 4)));
        assert_eq!(coordinate_scale(&q(3), 2, 3).unwrap().as_rational(), Some(rat(1, 3)));
        assert_eq!(transport_coefficient(&q(1), &q(2), 1, 3).unwrap().as_rational(), Some(rat(4, 1)));
        assert_eq!(transport_coefficient(&q(-5), &q(3), 2, 3).unwrap().as_rational(), Some(rat(-15, 1)));
        assert_eq!(coordinate_scale(&q(0), 1, 2).unwrap_err(), Error::ZeroUnit);
    }

    #[test]
    fn closed_points_survive() {
        let f = Field::rationals();
        let qi = f.adjoin(&UniPoly::from_ints(&f, &[1, 0, 1]), "i").unwrap();
        let v = AlgElem::generator(&qi).scale(&rat(3, 2));
        for g0 in [q(2), q(3), q(-1)] {
            let moved = transported_point(&v, &g0, 2, 3, &f).unwrap();
            let back = pull_back_coordinate(&moved, &g0, 2, 3).unwrap();
            assert_eq!(back, minimal_poly(&v, &f).unwrap());
        }
    }

    #[test]
    fn unit_from_series() {
        let f = Field::rationals();
        let g = Series::from_terms(&f, &[(0, f.from_int(3)), (1, f.from_int(1))]);
        assert_eq!(leading_unit(&g).unwrap().as_rational(), Some(rat(3, 1)));
        assert_eq!(leading_unit(&Series::monomial(&f, f.one(), 1)).unwrap_err(), Error::ZeroUnit);
    }
}
