//! Dirac divisors attached to a decomposition.
//!
//! For `r > 1` the divisor is `n²_{<r-1}·δ_0` plus, for every form `ω` of
//! x-degree `r - 1`, one Dirac mass `n_ω²` at each geometric conjugate of
//! `(1 - r)·c_{r-1}(ω)`, descended to closed points over the base field.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{factor, minimal_poly, primitive_element_over, AlgElem, Elem, Field, UniPoly};
use crate::puiseux::ExpForm;
use crate::turrittin::orbit::orbit_data;
use crate::turrittin::{LTComponent, LTDecomposition};

/// A closed point of the affine line over `K`, given by its monic
/// irreducible minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoint {
    minpoly: UniPoly,
}

impl ClosedPoint {
    pub fn new(minpoly: &UniPoly) -> Result<ClosedPoint> {
        if minpoly.degree().unwrap_or(0) == 0 {
            return Err(Error::Invalid("a closed point needs a polynomial of positive degree".into()));
        }
        let p = minpoly.monic();
        if !p.is_irreducible()? {
            return Err(Error::Reducible);
        }
        Ok(ClosedPoint { minpoly: p })
    }

    pub fn origin(field: &Field) -> ClosedPoint {
        ClosedPoint { minpoly: UniPoly::var(field) }
    }

    /// The rational point `y = a`.
    pub fn rational(field: &Field, a: &Elem) -> ClosedPoint {
        ClosedPoint { minpoly: UniPoly::linear_root(field, a) }
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    pub fn is_origin(&self) -> bool {
        self.degree() == 1 && self.minpoly.field().is_zero(&self.minpoly.coeff(0))
    }

    pub fn field(&self) -> &Field {
        self.minpoly.field()
    }

    fn cmp_canonical(&self, o: &ClosedPoint) -> Ordering {
        self.minpoly.canonical_cmp(&o.minpoly)
    }
}

/// `Σ mult·δ_P`; the empty divisor is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracDivisor {
    field: Field,
    entries: Vec<(ClosedPoint, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEntry {
    pub minpoly: String,
    pub degree: usize,
    pub multiplicity: u64,
}

impl DiracDivisor {
    pub fn zero(field: &Field) -> DiracDivisor {
        DiracDivisor { field: field.clone(), entries: Vec::new() }
    }

    /// Builds a divisor, merging repeated points and dropping zero
    /// multiplicities.
    pub fn from_entries(field: &Field, entries: impl IntoIterator<Item = (ClosedPoint, u64)>) -> Result<DiracDivisor> {
        let mut out: Vec<(ClosedPoint, u64)> = Vec::new();
        for (p, m) in entries {
            if p.field() != field {
                return Err(Error::FieldMismatch);
            }
            if m == 0 {
                continue;
            }
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some(e) => e.1 += m,
                None => out.push((p, m)),
            }
        }
        out.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        Ok(DiracDivisor { field: field.clone(), entries: out })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[(ClosedPoint, u64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, p: &ClosedPoint) -> u64 {
        self.entries.iter().find(|(q, _)| q == p).map(|e| e.1).unwrap_or(0)
    }

    /// `Σ mult · deg P`.
    pub fn geometric_mass(&self) -> u64 {
        self.entries.iter().map(|(p, m)| m * p.degree() as u64).sum()
    }

    pub fn serialize(&self) -> Vec<DivisorEntry> {
        self.entries
            .iter()
            .map(|(p, m)| DivisorEntry { minpoly: p.minpoly.compact("y"), degree: p.degree(), multiplicity: *m })
            .collect()
    }
}

impl fmt::Display for DiracDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.entries.iter().map(|(p, m)| format!("{}*[{}]", m, p.minpoly.display_var("y"))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One factor of the conjugate multiset of bracket values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketValue {
    pub minpoly: UniPoly,
    /// A root of `minpoly`, in `K` or in `K[y]/(minpoly)`.
    pub root: AlgElem,
    /// How many geometric conjugates of the form land on each root.
    pub multiplicity: u64,
}

/// `r = k/n` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RIndex {
    pub k: u64,
    pub n: u64,
}

impl RIndex {
    pub fn new(k: u64, n: u64) -> Result<RIndex> {
        if k == 0 || n == 0 {
            return Err(Error::Invalid("r must be a positive fraction".into()));
        }
        let g = k.gcd(&n);
        Ok(RIndex { k: k / g, n: n / g })
    }

    pub fn from_rational(r: &BigRational) -> Result<RIndex> {
        if !r.is_positive() {
            return Err(Error::Invalid("r must be positive".into()));
        }
        let k = r.numer().to_u64().ok_or_else(|| Error::Invalid("r out of range".into()))?;
        let n = r.denom().to_u64().ok_or_else(|| Error::Invalid("r out of range".into()))?;
        RIndex::new(k, n)
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(BigInt::from(self.k), BigInt::from(self.n))
    }
}

impl fmt::Display for RIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.n)
    }
}

pub fn omega_at(dec: &LTDecomposition, s: &BigRational) -> Vec<LTComponent> {
    dec.components.iter().filter(|c| c.deg_x().as_ref() == Some(s)).cloned().collect()
}

/// Components of x-degree below `s`, together with the regular summand.
pub fn omega_below(dec: &LTDecomposition, s: &BigRational) -> Vec<LTComponent> {
    dec.components
        .iter()
        .filter(|c| match c.deg_x() {
            None => true,
            Some(d) => d < *s,
        })
        .cloned()
        .collect()
}

fn root_of(k: &Field, mu: &UniPoly) -> Result<AlgElem> {
    if mu.degree() == Some(1) {
        return Ok(AlgElem::new(k.clone(), k.neg(&mu.coeff(0))));
    }
    let f = k.adjoin(mu, "y")?;
    Ok(AlgElem::generator(&f))
}

/// Conjugate multiset of `(1 - r)·c_{r-1}` over the orbit of the component,
/// grouped by minimal polynomial over `k`.
pub fn bracket_values(comp: &LTComponent, r: &BigRational, k: &Field) -> Result<Vec<BracketValue>> {
    let one = BigRational::one();
    let s = r - &one;
    if comp.deg_x().as_ref() != Some(&s) {
        return Err(Error::DegreeMismatch);
    }
    let w = comp.form.normalize();
    let f = w.field().clone();
    let m = w.ram_index();
    let j = (&s * BigRational::from_integer(BigInt::from(m))).to_integer().to_u64().ok_or(Error::DegreeMismatch)?;
    let a = w.c_r(&s).scale(&(&one - r));
    if a.is_zero() {
        return Err(Error::Internal("bracket value at the origin".into()));
    }
    let g = j.gcd(&m);
    let e = m / g;
    let b = a.pow(e);
    let mu_b = minimal_poly(&b, k)?;
    let fk = f.degree_over(k)? as u64;
    let n_all = fk * m;
    let d = comp.orbit_size as u64;
    // multiplicity of each root in the orbit multiset
    let num = g * (fk / mu_b.degree().unwrap() as u64) * d;
    if !num.is_multiple_of(n_all) {
        return Err(Error::NonIntegralDescent { weight: num, degree: n_all as usize });
    }
    let mult = num / n_all;
    let h = mu_b.inflate(e as usize);
    let mut out = Vec::new();
    for (psi, _) in factor(&h)? {
        out.push(BracketValue { root: root_of(k, &psi)?, minpoly: psi, multiplicity: mult });
    }
    Ok(out)
}

/// Groups a geometric multiset by minimal polynomial over `k`; the weight
/// on each closed point must be divisible by its degree.
pub fn descend(geom: &[(AlgElem, u64)], k: &Field) -> Result<DiracDivisor> {
    let mut grouped: Vec<(UniPoly, u64)> = Vec::new();
    for (v, w) in geom {
        let mu = minimal_poly(v, k)?;
        match grouped.iter_mut().find(|(p, _)| *p == mu) {
            Some(e) => e.1 += w,
            None => grouped.push((mu, *w)),
        }
    }
    descend_grouped(&grouped, k)
}

/// Same as [`descend`] with the values already grouped by minimal polynomial.
pub fn descend_grouped(grouped: &[(UniPoly, u64)], k: &Field) -> Result<DiracDivisor> {
    let mut entries = Vec::new();
    for (mu, w) in grouped {
        let deg = mu.degree().unwrap_or(0);
        if deg == 0 || w % deg as u64 != 0 {
            return Err(Error::NonIntegralDescent { weight: *w, degree: deg });
        }
        entries.push((ClosedPoint { minpoly: mu.monic() }, w / deg as u64));
    }
    DiracDivisor::from_entries(k, entries)
}

pub fn as_invariant(dec: &LTDecomposition, r: &BigRational) -> Result<DiracDivisor> {
    let one = BigRational::one();
    if *r <= one {
        return Err(Error::RNotAboveOne);
    }
    let k = &dec.base_field;
    let s = r - &one;
    let n_below: u64 = omega_below(dec, &s).iter().map(|c| (c.orbit_size * c.rank * c.rank) as u64).sum();
    let mut grouped: Vec<(UniPoly, u64)> = Vec::new();
    if n_below > 0 {
        grouped.push((UniPoly::var(k), n_below));
    }
    for comp in omega_at(dec, &s) {
        let n2 = (comp.rank * comp.rank) as u64;
        for bv in bracket_values(&comp, r, k)? {
            let deg = bv.minpoly.degree().unwrap() as u64;
            let w = deg * bv.multiplicity * n2;
            match grouped.iter_mut().find(|(p, _)| *p == bv.minpoly) {
                Some(e) => e.1 += w,
                None => grouped.push((bv.minpoly, w)),
            }
        }
    }
    descend_grouped(&grouped, k)
}

pub fn as_invariant_nk(dec: &LTDecomposition, n: u64, k: u64) -> Result<DiracDivisor> {
    if n == 0 || k == 0 {
        return Err(Error::Invalid("n and k must be positive".into()));
    }
    if k > n {
        return as_invariant(dec, &BigRational::new(BigInt::from(k), BigInt::from(n)));
    }
    if dec.regular_rank() == 0 {
        Ok(DiracDivisor::zero(&dec.base_field))
    } else {
        Err(Error::Unsupported(format!("k = {} ≤ n = {} with a regular summand", k, n)))
    }
}

/// Refactors every closed point over the extension `l` of the base field.
pub fn base_change_divisor(div: &DiracDivisor, l: &Field) -> Result<DiracDivisor> {
    if !l.contains_subfield(&div.field) {
        return Err(Error::NotASubfield);
    }
    let mut entries = Vec::new();
    for (p, m) in &div.entries {
        for (psi, e) in factor(&p.minpoly.lift_to(l)?)? {
            entries.push((ClosedPoint { minpoly: psi }, m * e as u64));
        }
    }
    DiracDivisor::from_entries(l, entries)
}

/// Checks `Σ_{P' over P} [L(P'):L]·mult(P') = [K(P):K]·mult(P)` for every
/// closed point `P` of `div`.
pub fn degree_identity_holds(div: &DiracDivisor, over_l: &DiracDivisor) -> Result<bool> {
    let l = over_l.field();
    let mut used = vec![false; over_l.entries.len()];
    for (p, m) in &div.entries {
        let lifted = p.minpoly.lift_to(l)?;
        let mut total = 0u64;
        for (i, (q, mq)) in over_l.entries.iter().enumerate() {
            if lifted.rem(&q.minpoly)?.is_zero() {
                used[i] = true;
                total += mq * q.degree() as u64;
            }
        }
        if total != m * p.degree() as u64 {
            return Ok(false);
        }
    }
    Ok(used.into_iter().all(|u| u))
}

/// Embeds the coefficient field of `w` into each field `L[z]/(g_i)` over
/// `l`, for the factors `g_i` of a defining polynomial over `l`.
fn split_form(w: &ExpForm, k: &Field, l: &Field, cap: usize) -> Result<Vec<ExpForm>> {
    let f = w.field();
    if f == k {
        return Ok(vec![w.lift_to(l)?]);
    }
    let pe = primitive_element_over(f, k)?;
    let g = pe.defining_poly();
    let mut out = Vec::new();
    for (gi, _) in factor(&g.lift_to(l)?)? {
        let (field, z) = if gi.degree() == Some(1) {
            (l.clone(), l.neg(&gi.coeff(0)))
        } else {
            let names = l.generator_names();
            let name = (1..).map(|i| format!("b{}", i)).find(|n| !names.contains(n)).unwrap();
            let nf = l.adjoin_irreducible(&gi, &name, cap)?;
            let z = nf.generator();
            (nf, z)
        };
        let mut terms = Vec::new();
        for (j, c) in w.terms() {
            let s = pe.to_simple(c)?;
            let cs = pe.simple.base_coeffs(&s);
            let mut acc = field.zero();
            let mut zp = field.one();
            for a in cs {
                let a = field.lift(k, &a)?;
                acc = field.add(&acc, &field.mul(&a, &zp));
                zp = field.mul(&zp, &z);
            }
            terms.push((j, acc));
        }
        out.push(ExpForm::new(&field, w.ram_index(), terms)?);
    }
    Ok(out)
}

pub fn base_change_decomposition(dec: &LTDecomposition, l: &Field) -> Result<LTDecomposition> {
    let k = &dec.base_field;
    if !l.contains_subfield(k) {
        return Err(Error::NotASubfield);
    }
    let cap = crate::exactalg::DEFAULT_DEGREE_CAP;
    let mut components: Vec<LTComponent> = Vec::new();
    for c in &dec.components {
        let w = c.form.normalize();
        let mut seen = Vec::new();
        let mut total = 0usize;
        for wi in split_form(&w, k, l, cap)? {
            let od = orbit_data(&wi, l)?;
            if seen.contains(&od) {
                continue;
            }
            total += od.size;
            components.push(LTComponent { form: wi.normalize(), rank: c.rank, orbit_size: od.size });
            seen.push(od);
        }
        if total != c.orbit_size {
            return Err(Error::Internal("orbit sizes do not add up after base change".into()));
        }
    }
    components.sort_by(|a, b| {
        let da = a.deg_x().unwrap_or_else(BigRational::zero);
        let db = b.deg_x().unwrap_or_else(BigRational::zero);
        da.cmp(&db).then_with(|| crate::turrittin::form_cmp(&a.form, &b.form))
    });
    Ok(LTDecomposition { base_field: l.clone(), components, ram_index: dec.ram_index, total_rank: dec.total_rank })
}

/// Generic entry point: either kind of object over `K`, changed to `L`.
pub trait BaseChange: Sized {
    fn base_change(&self, l: &Field) -> Result<Self>;
}

impl BaseChange for DiracDivisor {
    fn base_change(&self, l: &Field) -> Result<Self> {
        base_change_divisor(self, l)
    }
}

impl BaseChange for LTDecomposition {
    fn base_change(&self, l: &Field) -> Result<Self> {
        base_change_decomposition(self, l)
    }
}

pub fn base_change<T: BaseChange>(x: &T, l: &Field) -> Result<T> {
    x.base_change(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::DiffOperator;
    use crate::exactalg::rat;
    use crate::turrittin::{lt_decompose, PrecisionPolicy};

    fn dec(terms: &[&[(i64, i64)]]) -> LTDecomposition {
        lt_decompose(&DiffOperator::from_int_terms(terms).unwrap(), &PrecisionPolicy::default()).unwrap()
    }

    fn render(d: &DiracDivisor) -> Vec<(String, u64)> {
        d.serialize().into_iter().map(|e| (e.minpoly, e.multiplicity)).collect()
    }

    #[test]
    fn worked_values() {
        let a = dec(&[&[(0, -1)], &[(2, 1)]]);
        assert_eq!(render(&as_invariant(&a, &rat(2, 1)).unwrap()), vec![("y+1".to_string(), 1)]);
        let b = dec(&[&[(0, -1)], &[], &[(3, 1)]]);
        assert_eq!(
            render(&as_invariant(&b, &rat(3, 2)).unwrap()),
            vec![("y-1".to_string(), 1), ("y+1".to_string(), 1)]
        );
        let c = dec(&[&[(0, -5)], &[(1, 1)]]);
        for r in [rat(3, 2), rat(2, 1), rat(3, 1)] {
            assert_eq!(render(&as_invariant(&c, &r).unwrap()), vec![("y".to_string(), 1)]);
        }
        assert_eq!(as_invariant(&c, &rat(1, 1)).unwrap_err(), Error::RNotAboveOne);
    }

    #[test]
    fn bracket_examples() {
        let q = Field::rationals();
        let comp = LTComponent { form: ExpForm::from_rats(1, &[(2, rat(3, 1))]).unwrap(), rank: 1, orbit_size: 1 };
        let bv = bracket_values(&comp, &rat(3, 1), &q).unwrap();
        assert_eq!(bv.len(), 1);
        assert_eq!(bv[0].root.as_rational(), Some(rat(-6, 1)));
        assert_eq!(bracket_values(&comp, &rat(2, 1), &q).unwrap_err(), Error::DegreeMismatch);
    }

    #[test]
    fn descent_examples() {
        let q = Field::rationals();
        let qi = q.adjoin(&UniPoly::from_ints(&q, &[1, 0, 1]), "i").unwrap();
        let i = AlgElem::generator(&qi);
        let d = descend(&[(i.clone(), 1), (i.neg(), 1)], &q).unwrap();
        assert_eq!(render(&d), vec![("y^2+1".to_string(), 1)]);
        assert!(matches!(descend(&[(i, 1)], &q), Err(Error::NonIntegralDescent { .. })));
        let lifted = base_change(&d, &qi).unwrap();
        assert_eq!(lifted.entries().len(), 2);
        assert!(degree_identity_holds(&d, &lifted).unwrap());
    }

    #[test]
    fn small_index_regime() {
        let a = dec(&[&[(0, -1)], &[(2, 1)]]);
        assert!(as_invariant_nk(&a, 2, 1).unwrap().is_zero());
        assert_eq!(as_invariant_nk(&a, 2, 4).unwrap(), as_invariant(&a, &rat(2, 1)).unwrap());
        let c = dec(&[&[(0, -5)], &[(1, 1)]]);
        assert!(matches!(as_invariant_nk(&c, 1, 1), Err(Error::Unsupported(_))));
    }
}
