//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{push_term, Elem, Field};
use crate::error::{Error, Result};

pub(crate) fn trim_raw(f: &Field, mut v: Vec<Elem>) -> Vec<Elem> {
    while let Some(last) = v.last() {
        if f.is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
    v
}

pub(crate) fn add_raw(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let c = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(c);
    }
    trim_raw(f, out)
}

pub(crate) fn neg_raw(f: &Field, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub(crate) fn sub_raw(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    add_raw(f, a, &neg_raw(f, b))
}

pub(crate) fn mul_raw(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            let p = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &p);
        }
    }
    trim_raw(f, out)
}

pub(crate) fn scale_raw(f: &Field, a: &[Elem], c: &Elem) -> Vec<Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    trim_raw(f, a.iter().map(|x| f.mul(x, c)).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem_raw(f: &Field, a: &[Elem], b: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>)> {
    if b.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let db = b.len() - 1;
    let lc = &b[db];
    let lc_inv = if f.is_one(lc) { None } else { Some(f.inv(lc)?) };
    let mut r: Vec<Elem> = trim_raw(f, a.to_vec());
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = match &lc_inv {
            None => r[dr].clone(),
            Some(li) => f.mul(&r[dr], li),
        };
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            if f.is_zero(bc) {
                continue;
            }
            let t = f.mul(&c, bc);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        q[shift] = c;
        r = trim_raw(f, r);
    }
    Ok((trim_raw(f, q), r))
}

pub(crate) fn rem_raw(f: &Field, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    if a.len() < m.len() {
        return trim_raw(f, a.to_vec());
    }
    divrem_raw(f, a, m).expect("nonzero modulus").1
}

pub(crate) fn monic_raw(f: &Field, a: &[Elem]) -> Vec<Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) if f.is_one(lc) => a.to_vec(),
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero leading coefficient");
            scale_raw(f, a, &inv)
        }
    }
}

pub(crate) fn gcd_raw(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = trim_raw(f, a.to_vec());
    let mut y = trim_raw(f, b.to_vec());
    while !y.is_empty() {
        let r = rem_raw(f, &x, &y);
        x = y;
        y = r;
    }
    monic_raw(f, &x)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic (or zero).
pub(crate) fn ext_gcd_raw(f: &Field, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>, Vec<Elem>) {
    let mut r0 = trim_raw(f, a.to_vec());
    let mut r1 = trim_raw(f, b.to_vec());
    let mut s0 = vec![f.one()];
    let mut s1: Vec<Elem> = Vec::new();
    let mut t0: Vec<Elem> = Vec::new();
    let mut t1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = divrem_raw(f, &r0, &r1).expect("nonzero divisor");
        let s2 = sub_raw(f, &s0, &mul_raw(f, &q, &s1));
        let t2 = sub_raw(f, &t0, &mul_raw(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(lc) = r0.last().cloned() {
        let inv = f.inv(&lc).expect("nonzero");
        (scale_raw(f, &r0, &inv), scale_raw(f, &s0, &inv), scale_raw(f, &t0, &inv))
    } else {
        (r0, s0, t0)
    }
}

pub(crate) fn inverse_mod_raw(f: &Field, a: &[Elem], m: &[Elem]) -> Result<Vec<Elem>> {
    let (g, s, _) = ext_gcd_raw(f, a, m);
    if g.len() != 1 {
        return Err(Error::DivisionByZero);
    }
    Ok(rem_raw(f, &s, m))
}

pub(crate) fn eval_raw(f: &Field, a: &[Elem], x: &Elem) -> Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Resultant of two polynomials over a field by the Euclidean recurrence.
pub(crate) fn resultant_raw(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    let mut a = trim_raw(f, a.to_vec());
    let mut b = trim_raw(f, b.to_vec());
    if a.is_empty() || b.is_empty() {
        return f.zero();
    }
    let mut acc = f.one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return f.mul(&acc, &f.pow(&b[0], da as u64));
        }
        if da == 0 {
            return f.mul(&acc, &f.pow(&a[0], db as u64));
        }
        // res(a, b) = (-1)^{da db} res(b, a); res(b, a) = lc(b)^{da - deg r} res(b, r)
        let r = rem_raw(f, &a, &b);
        if r.is_empty() {
            return f.zero();
        }
        let dr = r.len() - 1;
        if (da * db) % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &f.pow(&b[db], (da - dr) as u64));
        a = b;
        b = r;
    }
}

/// A polynomial in one variable with coefficients in `field`, lowest degree
/// first. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> UniPoly {
        let coeffs = trim_raw(field, coeffs);
        UniPoly { field: field.clone(), coeffs }
    }

    pub(crate) fn from_raw(field: Field, coeffs: Vec<Elem>) -> UniPoly {
        let coeffs = trim_raw(&field, coeffs);
        UniPoly { field, coeffs }
    }

    pub fn from_ints(field: &Field, cs: &[i64]) -> UniPoly {
        UniPoly::new(field, cs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn from_rats(field: &Field, cs: &[BigRational]) -> UniPoly {
        UniPoly::new(field, cs.iter().map(|c| field.from_rat(c)).collect())
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elem) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    /// `c * y^d`.
    pub fn monomial(field: &Field, c: Elem, d: usize) -> UniPoly {
        let mut v = vec![field.zero(); d];
        v.push(c);
        UniPoly::new(field, v)
    }

    /// The variable itself.
    pub fn var(field: &Field) -> UniPoly {
        UniPoly::monomial(field, field.one(), 1)
    }

    /// `y - a`.
    pub fn linear_root(field: &Field, a: &Elem) -> UniPoly {
        UniPoly::new(field, vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| self.field.is_one(c)).unwrap_or(false)
    }

    pub fn monic(&self) -> UniPoly {
        UniPoly { field: self.field.clone(), coeffs: monic_raw(&self.field, &self.coeffs) }
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        self.check(o);
        UniPoly { field: self.field.clone(), coeffs: add_raw(&self.field, &self.coeffs, &o.coeffs) }
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.check(o);
        UniPoly { field: self.field.clone(), coeffs: sub_raw(&self.field, &self.coeffs, &o.coeffs) }
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { field: self.field.clone(), coeffs: neg_raw(&self.field, &self.coeffs) }
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        self.check(o);
        UniPoly { field: self.field.clone(), coeffs: mul_raw(&self.field, &self.coeffs, &o.coeffs) }
    }

    pub fn scale(&self, c: &Elem) -> UniPoly {
        UniPoly { field: self.field.clone(), coeffs: scale_raw(&self.field, &self.coeffs, c) }
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut result = UniPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn div_rem(&self, o: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.check(o);
        let (q, r) = divrem_raw(&self.field, &self.coeffs, &o.coeffs)?;
        Ok((UniPoly { field: self.field.clone(), coeffs: q }, UniPoly { field: self.field.clone(), coeffs: r }))
    }

    pub fn rem(&self, o: &UniPoly) -> Result<UniPoly> {
        Ok(self.div_rem(o)?.1)
    }

    /// Quotient when `o` divides `self` exactly.
    pub fn exact_div(&self, o: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(o).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        self.check(o);
        UniPoly { field: self.field.clone(), coeffs: gcd_raw(&self.field, &self.coeffs, &o.coeffs) }
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.scale(c, &BigRational::from_integer(BigInt::from(i))))
            .collect();
        UniPoly::new(f, cs)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        eval_raw(&self.field, &self.coeffs, x)
    }

    /// `self(o(y))`.
    pub fn compose(&self, o: &UniPoly) -> UniPoly {
        self.check(o);
        let mut acc = UniPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(o).add(&UniPoly::constant(&self.field, c.clone()));
        }
        acc
    }

    /// `self(c*y)`.
    pub fn scale_var(&self, c: &Elem) -> UniPoly {
        let f = &self.field;
        let mut p = f.one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(f.mul(a, &p));
            p = f.mul(&p, c);
        }
        UniPoly::new(f, out)
    }

    /// `self(y^k)`.
    pub fn inflate(&self, k: usize) -> UniPoly {
        let f = &self.field;
        if self.coeffs.is_empty() || k == 1 {
            return self.clone();
        }
        let mut out = vec![f.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        UniPoly::new(f, out)
    }

    pub fn resultant(&self, o: &UniPoly) -> Elem {
        self.check(o);
        resultant_raw(&self.field, &self.coeffs, &o.coeffs)
    }

    /// Re-expresses the polynomial over a larger field of the same tower.
    pub fn lift_to(&self, target: &Field) -> Result<UniPoly> {
        let cs = self
            .coeffs
            .iter()
            .map(|c| target.lift(&self.field, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(target, cs))
    }

    /// Coefficients all rational: the same polynomial over Q.
    pub fn to_rational(&self) -> Option<UniPoly> {
        let q = Field::rationals();
        let cs = self
            .coeffs
            .iter()
            .map(|c| self.field.as_rational(c).map(Elem::Rat))
            .collect::<Option<Vec<_>>>()?;
        Some(UniPoly::new(&q, cs))
    }

    /// Orders polynomials canonically: by degree, then coefficient by
    /// coefficient from the top down.
    pub fn canonical_cmp(&self, o: &UniPoly) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }

    fn check(&self, o: &UniPoly) {
        assert!(self.field == o.field, "polynomials over different fields: {} vs {}", self.field, o.field);
    }

    /// Rendering with spaces, e.g. `z^2 + 1`.
    pub fn display_var(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let f = &self.field;
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            push_term(&mut s, &f.fmt_elem(c), f.as_rational(c), &mono);
        }
        s
    }

    /// Compact rendering without spaces, e.g. `y^2+1`, `y-1`.
    pub fn compact(&self, var: &str) -> String {
        self.display_var(var).replace(" + ", "+").replace(" - ", "-")
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("y"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("y"))
    }
}

/// Integer coefficient vector helper for tests and constructors.
pub fn rat_vec(cs: &[i64]) -> Vec<BigRational> {
    cs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
}

/// Newton interpolation through the points `(xs[i], ys[i])` with distinct nodes.
pub(crate) fn interpolate_raw(f: &Field, xs: &[Elem], ys: &[Elem]) -> Result<Vec<Elem>> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&dd[i], &dd[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            dd[i] = f.div(&num, &den)?;
        }
    }
    let mut acc: Vec<Elem> = Vec::new();
    for i in (0..n).rev() {
        // acc = acc * (y - xs[i]) + dd[i]
        let shifted = mul_raw(f, &acc, &[f.neg(&xs[i]), f.one()]);
        acc = add_raw(f, &shifted, &[dd[i].clone()]);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_with_remainder() {
        let q = Field::rationals();
        let a = UniPoly::from_ints(&q, &[1, 0, 0, 1]); // y^3 + 1
        let b = UniPoly::from_ints(&q, &[1, 1]);
        let (quo, r) = a.div_rem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(quo, UniPoly::from_ints(&q, &[1, -1, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        let q = Field::rationals();
        let a = UniPoly::from_ints(&q, &[-2, 0, 2]); // 2(y-1)(y+1)
        let b = UniPoly::from_ints(&q, &[3, 3]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&q, &[1, 1]));
    }

    #[test]
    fn resultant_matches_product_of_root_differences() {
        let q = Field::rationals();
        // (y-1)(y-2) and (y-3): res = (1-3)(2-3) = 2
        let a = UniPoly::from_ints(&q, &[2, -3, 1]);
        let b = UniPoly::from_ints(&q, &[-3, 1]);
        assert_eq!(a.resultant(&b), q.from_int(2));
        assert_eq!(b.resultant(&a), q.from_int(2));
    }

    #[test]
    fn compact_rendering() {
        let q = Field::rationals();
        assert_eq!(UniPoly::from_ints(&q, &[1, 1]).compact("y"), "y+1");
        assert_eq!(UniPoly::from_ints(&q, &[-1, 1]).compact("y"), "y-1");
        assert_eq!(UniPoly::from_ints(&q, &[1, 0, 1]).compact("y"), "y^2+1");
        assert_eq!(UniPoly::from_ints(&q, &[0, 1]).compact("y"), "y");
    }
}
