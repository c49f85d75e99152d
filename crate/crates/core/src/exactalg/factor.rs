//! Factorization over number-field towers.
//!
//! Over Q the squarefree parts are handed to the integer factorizer; over an
//! extension `B[z]/(g)` a shifted norm down to `B` is factored recursively and
//! the factors are recovered by gcds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Elem, Field};
use super::intfactor;
use super::poly::{interpolate_raw, resultant_raw, UniPoly};
use crate::error::{Error, Result};

/// Squarefree decomposition (Yun): monic `a_i` with `f = lc * prod a_i^i`.
pub fn squarefree(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.div_rem(&b)?.0;
    let mut d = df.div_rem(&b)?.0.sub(&c.derivative());
    let mut i = 1;
    while c.degree() != Some(0) {
        let a = c.gcd(&d);
        c = c.div_rem(&a)?.0;
        d = d.div_rem(&a)?.0.sub(&c.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Full factorization into monic irreducibles with multiplicities, sorted by
/// degree and then coefficients from the top down.
pub fn factor(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let mut out = Vec::new();
    for (a, i) in squarefree(f)? {
        for g in factor_squarefree(&a)? {
            out.push((g, i));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

pub fn is_irreducible(f: &UniPoly) -> Result<bool> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Ok(false),
        Some(1) => Ok(true),
        Some(_) => {
            let fs = factor(f)?;
            Ok(fs.len() == 1 && fs[0].1 == 1)
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial, unsorted.
pub(crate) fn factor_squarefree(g: &UniPoly) -> Result<Vec<UniPoly>> {
    let g = g.monic();
    match g.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![g]),
        _ => {}
    }
    let field = g.field().clone();
    if field.is_rationals() {
        return Ok(factor_over_q(&g));
    }
    factor_trager(&g, &field)
}

fn factor_over_q(g: &UniPoly) -> Vec<UniPoly> {
    let q = g.field();
    let rats: Vec<BigRational> = g.coeffs().iter().map(|c| q.as_rational(c).unwrap()).collect();
    let den = rats.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let cont = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let prim: Vec<BigInt> = ints.iter().map(|c| c / &cont).collect();
    intfactor::factor_squarefree(&prim)
        .into_iter()
        .map(|h| {
            let p = UniPoly::new(q, h.iter().map(|c| Elem::Rat(BigRational::from_integer(c.clone()))).collect());
            p.monic()
        })
        .collect()
}

/// Norm of `g` from `F = B[z]/(m)` down to `B`: `Res_z(m(z), g(y, z))`.
pub(crate) fn norm_down(g: &UniPoly) -> Result<UniPoly> {
    let f = g.field();
    let base = f.base().ok_or(Error::NotASubfield)?.clone();
    let modulus = f.modulus().unwrap();
    let n = g.degree().ok_or(Error::ZeroPolynomial)? * f.relative_degree();
    let mut xs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    for k in 0..=n as i64 {
        let y0 = f.from_int(k);
        let v = g.eval(&y0);
        let rep = f.base_coeffs(&v);
        xs.push(base.from_int(k));
        ys.push(resultant_raw(&base, modulus.coeffs(), &rep));
    }
    let cs = interpolate_raw(&base, &xs, &ys)?;
    Ok(UniPoly::new(&base, cs))
}

fn shift_candidates() -> impl Iterator<Item = i64> {
    (0..).map(|k: i64| if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 })
}

fn factor_trager(g: &UniPoly, field: &Field) -> Result<Vec<UniPoly>> {
    let alpha = field.generator();
    for s in shift_candidates().take(64) {
        // g_s(y) = g(y - s*alpha)
        let sa = field.scale(&alpha, &BigRational::from_integer(BigInt::from(s)));
        let lin = UniPoly::new(field, vec![field.neg(&sa), field.one()]);
        let gs = g.compose(&lin);
        let norm = norm_down(&gs)?;
        let dn = norm.derivative();
        if norm.gcd(&dn).degree() != Some(0) {
            continue;
        }
        let base_factors = factor_squarefree(&norm)?;
        if base_factors.len() == 1 {
            return Ok(vec![g.clone()]);
        }
        let back = UniPoly::new(field, vec![sa.clone(), field.one()]);
        let mut out = Vec::new();
        let mut rest = gs.clone();
        for h in base_factors {
            let hl = h.lift_to(field)?;
            let c = rest.gcd(&hl);
            if c.degree().unwrap_or(0) > 0 {
                rest = rest.div_rem(&c)?.0;
                out.push(c.compose(&back).monic());
            }
        }
        return Ok(out);
    }
    Err(Error::Internal("no squarefree norm shift found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> Field {
        let q = Field::rationals();
        q.adjoin(&UniPoly::from_ints(&q, &[1, 0, 1]), "i").unwrap()
    }

    #[test]
    fn squarefree_powers() {
        let q = Field::rationals();
        // (y-1)^2 (y+2)^3
        let a = UniPoly::from_ints(&q, &[-1, 1]).pow(2);
        let b = UniPoly::from_ints(&q, &[2, 1]).pow(3);
        let fs = factor(&a.mul(&b)).unwrap();
        assert_eq!(fs, vec![(UniPoly::from_ints(&q, &[-1, 1]), 2), (UniPoly::from_ints(&q, &[2, 1]), 3)]);
    }

    #[test]
    fn y2_plus_1_over_rationals_and_gaussian() {
        let q = Field::rationals();
        let p = UniPoly::from_ints(&q, &[1, 0, 1]);
        assert_eq!(factor(&p).unwrap(), vec![(p.clone(), 1)]);

        let f = qi();
        let i = f.generator();
        let fs = factor(&p.lift_to(&f).unwrap()).unwrap();
        let expected = vec![
            (UniPoly::linear_root(&f, &i), 1),
            (UniPoly::linear_root(&f, &f.neg(&i)), 1),
        ];
        assert_eq!(fs, expected);
    }

    #[test]
    fn quartic_over_sqrt2() {
        let q = Field::rationals();
        let f = q.adjoin(&UniPoly::from_ints(&q, &[-2, 0, 1]), "s").unwrap();
        let s = f.generator();
        let p = UniPoly::from_ints(&f, &[1, 0, -10, 0, 1]);
        let fs = factor(&p).unwrap();
        assert_eq!(fs.len(), 2);
        // oracle: expand (y^2 - 2 s y - 1)(y^2 + 2 s y - 1) by hand
        let two_s = f.add(&s, &s);
        let a = UniPoly::new(&f, vec![f.from_int(-1), f.neg(&two_s), f.one()]);
        let b = UniPoly::new(&f, vec![f.from_int(-1), two_s, f.one()]);
        assert_eq!(a.mul(&b), p);
        assert!(fs.iter().any(|(g, _)| *g == a));
        assert!(fs.iter().any(|(g, _)| *g == b));
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        let q = Field::rationals();
        assert_eq!(factor(&UniPoly::zero(&q)).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn factoring_in_a_two_step_tower() {
        let q = Field::rationals();
        let f2 = q.adjoin(&UniPoly::from_ints(&q, &[-2, 0, 1]), "a").unwrap();
        let f6 = f2.adjoin(&UniPoly::from_ints(&f2, &[-3, 0, 1]), "b").unwrap();
        // y^2 - 6 = (y - ab)(y + ab)
        let p = UniPoly::from_ints(&f6, &[-6, 0, 1]);
        let fs = factor(&p).unwrap();
        assert_eq!(fs.len(), 2);
        let prod = fs.iter().fold(UniPoly::one(&f6), |acc, (g, _)| acc.mul(g));
        assert_eq!(prod, p);
    }
}
