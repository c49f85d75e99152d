//! Conjugacy of forms over `K(X)`, `X = x^{-1}`.
//!
//! A normalized form `ω = Σ c_j s^j` (`s = t^{-1}`, `s^m = X`) over `F` lives
//! in the field `F(s)` of degree `N = [F:K]·m` over `K(X)`. Its orbit size is
//! `[K(X)(ω):K(X)]`, read off from the rank of its powers in the
//! specializations `F[s]/(s^m - X0)`, and two forms are conjugate exactly
//! when their minimal polynomials over `K(X)` agree.

use crate::error::{Error, Result};
use crate::exactalg::linalg::rref;
use crate::exactalg::poly::interpolate_raw;
use crate::exactalg::{Elem, Field, UniPoly};
use crate::puiseux::ExpForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OrbitData {
    pub m: u64,
    pub size: usize,
    /// Coefficients of `Y^0 … Y^{size-1}` of the monic minimal polynomial,
    /// as polynomials in `X`.
    pub minpoly: Vec<UniPoly>,
}

struct Algebra<'a> {
    f: &'a Field,
    k: &'a Field,
    m: usize,
    x0: Elem,
    x0f: Elem,
}

impl Algebra<'_> {
    fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = self.f;
        let mut out = vec![f.zero(); self.m];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let mut p = f.mul(x, y);
                let e = i + j;
                if e >= self.m {
                    p = f.mul(&p, &self.x0f);
                }
                out[e % self.m] = f.add(&out[e % self.m], &p);
            }
        }
        out
    }

    fn embed(&self, w: &ExpForm) -> Vec<Elem> {
        let f = self.f;
        let mut out = vec![f.zero(); self.m];
        for (j, c) in w.terms() {
            let j = j as usize;
            let c = f.mul(c, &f.pow(&self.x0f, (j / self.m) as u64));
            out[j % self.m] = f.add(&out[j % self.m], &c);
        }
        out
    }

    fn coords(&self, a: &[Elem]) -> Result<Vec<Elem>> {
        let mut v = Vec::new();
        for c in a {
            v.extend(self.f.coords_over(c, self.k)?);
        }
        Ok(v)
    }

    /// K-coordinates of `ω^0, …, ω^{count-1}`.
    fn power_coords(&self, w: &ExpForm, count: usize) -> Result<Vec<Vec<Elem>>> {
        let we = self.embed(w);
        let mut p = vec![self.f.zero(); self.m];
        p[0] = self.f.one();
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            if k > 0 {
                p = self.mul(&p, &we);
            }
            out.push(self.coords(&p)?);
        }
        Ok(out)
    }
}

fn sample_point(k: &Field, i: usize) -> Elem {
    let n = (i / 2 + 1) as i64;
    k.from_int(if i.is_multiple_of(2) { n } else { -n })
}

/// Columns `cols` as a matrix (one row per coordinate), reduced.
fn column_rank(k: &Field, cols: &[Vec<Elem>]) -> (usize, Vec<Vec<Elem>>, Vec<usize>) {
    let rows = cols[0].len();
    let mut mat: Vec<Vec<Elem>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let piv = rref(k, &mut mat);
    (piv.len(), mat, piv)
}

pub(crate) fn orbit_data(w: &ExpForm, k: &Field) -> Result<OrbitData> {
    let w = w.normalize();
    let f = w.field();
    let m = w.ram_index();
    if w.is_zero() {
        return Ok(OrbitData { m: 1, size: 1, minpoly: vec![UniPoly::zero(k)] });
    }
    let n = f.degree_over(k)? * m as usize;
    let jmax = w.pole_order();
    let alg = |i: usize| {
        let x0 = sample_point(k, i);
        let x0f = f.lift(k, &x0).expect("subfield");
        Algebra { f, k, m: m as usize, x0, x0f }
    };

    let mut size = 0;
    for i in 0..2 * n + 2 {
        let cols = alg(i).power_coords(&w, n)?;
        let (r, _, _) = column_rank(k, &cols);
        size = size.max(r);
        if size == n {
            break;
        }
    }

    let needed = (size as u64 * jmax / m) as usize + 1;
    let mut xs = Vec::new();
    let mut ys: Vec<Vec<Elem>> = vec![Vec::new(); size];
    let mut i = 0;
    while xs.len() < needed {
        if i > 64 * (needed + n) {
            return Err(Error::Internal("too few good specialization points".into()));
        }
        let a = alg(i);
        i += 1;
        let cols = a.power_coords(&w, size + 1)?;
        let (r, mat, piv) = column_rank(k, &cols);
        if r != size || piv.iter().any(|&c| c >= size) {
            continue;
        }
        xs.push(a.x0.clone());
        for (kk, y) in ys.iter_mut().enumerate() {
            y.push(k.neg(&mat[kk][size]));
        }
    }
    let minpoly = ys
        .iter()
        .map(|y| Ok(UniPoly::new(k, interpolate_raw(k, &xs, y)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitData { m, size, minpoly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn orbit_of_square_root_pole() {
        let q = Field::rationals();
        let w = ExpForm::from_rats(2, &[(1, rat(2, 1))]).unwrap();
        let d = orbit_data(&w, &q).unwrap();
        assert_eq!(d.size, 2);
        // ω^2 = 4 X
        assert_eq!(d.minpoly, vec![UniPoly::from_ints(&q, &[0, -4]), UniPoly::zero(&q)]);
        let w2 = ExpForm::from_rats(2, &[(1, rat(-2, 1))]).unwrap();
        assert_eq!(orbit_data(&w2, &q).unwrap(), d);
    }

    #[test]
    fn unramified_forms_are_singletons() {
        let q = Field::rationals();
        let w = ExpForm::from_rats(1, &[(2, rat(3, 1)), (1, rat(-1, 2))]).unwrap();
        let d = orbit_data(&w, &q).unwrap();
        assert_eq!(d.size, 1);
        assert_eq!(d.minpoly, vec![UniPoly::from_rats(&q, &[rat(0, 1), rat(1, 2), rat(-3, 1)])]);
    }

    #[test]
    fn orbit_over_extension() {
        let q = Field::rationals();
        let qi = q.adjoin(&UniPoly::from_ints(&q, &[1, 0, 1]), "i").unwrap();
        let w = ExpForm::new(&qi, 1, [(1, qi.generator())]).unwrap();
        assert_eq!(orbit_data(&w, &q).unwrap().size, 2);
        assert_eq!(orbit_data(&w, &qi).unwrap().size, 1);
    }
}
