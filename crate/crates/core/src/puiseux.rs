//! Exponential forms `ω = Σ c_j t^{-j}` with `t = x^{1/m}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exactalg::field::push_term;
use crate::exactalg::{AlgElem, Elem, Field};
use crate::error::{Error, Result};

/// A strictly polar Puiseux polynomial without zero coefficients.
///
/// The ramification index is kept as given; [`ExpForm::normalize`] yields the
/// unique representative with least `m`, and equality compares normal forms.
#[derive(Clone)]
pub struct ExpForm {
    field: Field,
    m: u64,
    terms: BTreeMap<u64, Elem>,
}

impl ExpForm {
    pub fn zero(field: &Field) -> ExpForm {
        ExpForm { field: field.clone(), m: 1, terms: BTreeMap::new() }
    }

    /// Builds `Σ c_j t^{-j}` with `t^m = x`. Exponents must be positive.
    pub fn new(field: &Field, m: u64, terms: impl IntoIterator<Item = (u64, Elem)>) -> Result<ExpForm> {
        if m == 0 {
            return Err(Error::Invalid("ramification index must be positive".into()));
        }
        let mut map: BTreeMap<u64, Elem> = BTreeMap::new();
        for (j, c) in terms {
            if j == 0 {
                return Err(Error::Invalid("forms carry strictly negative powers of t".into()));
            }
            let e = map.remove(&j).unwrap_or_else(|| field.zero());
            let s = field.add(&e, &c);
            if !field.is_zero(&s) {
                map.insert(j, s);
            }
        }
        Ok(ExpForm { field: field.clone(), m, terms: map })
    }

    /// Rational-coefficient convenience constructor: pairs `(j, c_j)`.
    pub fn from_rats(m: u64, terms: &[(u64, BigRational)]) -> Result<ExpForm> {
        let q = Field::rationals();
        ExpForm::new(&q, m, terms.iter().map(|(j, c)| (*j, Elem::Rat(c.clone()))))
    }

    /// `c * t^{-j}`.
    pub fn monomial(c: &AlgElem, j: u64, m: u64) -> Result<ExpForm> {
        ExpForm::new(c.field(), m, [(j, c.value().clone())])
    }

    /// The representative with least ramification index.
    pub fn normalize(&self) -> ExpForm {
        if self.terms.is_empty() {
            return ExpForm::zero(&self.field);
        }
        let g = self.terms.keys().fold(self.m, |acc, j| acc.gcd(j));
        if g == 1 {
            return self.clone();
        }
        ExpForm {
            field: self.field.clone(),
            m: self.m / g,
            terms: self.terms.iter().map(|(j, c)| (j / g, c.clone())).collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.terms.keys().fold(self.m, |acc, j| acc.gcd(j)) == 1 || (self.terms.is_empty() && self.m == 1)
    }

    /// The same form written with ramification index `m'`, a multiple of
    /// the normalized index.
    pub fn with_ram(&self, m2: u64) -> Result<ExpForm> {
        let n = self.normalize();
        let terms = n.terms_in(m2)?;
        ExpForm::new(&self.field, m2, terms)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ram_index(&self) -> u64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pairs `(j, c_j)` in increasing `j`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Elem)> + '_ {
        self.terms.iter().map(|(j, c)| (*j, c))
    }

    pub fn support(&self) -> Vec<u64> {
        self.terms.keys().copied().collect()
    }

    /// Largest exponent `j` (the pole order in `t`), 0 for the zero form.
    pub fn pole_order(&self) -> u64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// Degree of the form in `x`; `None` for the zero form.
    pub fn deg_x(&self) -> Option<BigRational> {
        self.terms
            .keys()
            .next_back()
            .map(|&j| BigRational::new(BigInt::from(j), BigInt::from(self.m)))
    }

    /// Exponent `j` with `j/m = r`, if integral.
    fn index_of(&self, r: &BigRational) -> Option<u64> {
        let v = r * BigRational::from_integer(BigInt::from(self.m));
        if !v.is_integer() || v <= BigRational::zero() {
            return None;
        }
        v.to_integer().try_into().ok()
    }

    /// The monomial of x-degree `r`, or zero.
    pub fn t_r(&self, r: &BigRational) -> ExpForm {
        match self.index_of(r).and_then(|j| self.terms.get(&j).map(|c| (j, c.clone()))) {
            Some((j, c)) => ExpForm::new(&self.field, self.m, [(j, c)]).expect("valid monomial"),
            None => ExpForm::zero(&self.field),
        }
    }

    /// Coefficient of the monomial of x-degree `r` (zero when absent).
    pub fn c_r(&self, r: &BigRational) -> AlgElem {
        let v = self
            .index_of(r)
            .and_then(|j| self.terms.get(&j).cloned())
            .unwrap_or_else(|| self.field.zero());
        AlgElem::new(self.field.clone(), v)
    }

    /// Substitutes `t ↦ ζ t`: `c_j ↦ c_j ζ^{-j}`. `ζ^m` must equal 1.
    pub fn subst_zeta(&self, zeta: &AlgElem) -> Result<ExpForm> {
        let (lifted, target) = if self.field.contains_subfield(zeta.field()) {
            (self.clone(), zeta.lift_to(&self.field)?)
        } else {
            (self.lift_to(zeta.field())?, zeta.clone())
        };
        let f = lifted.field.clone();
        let z = target.value();
        if !f.is_one(&f.pow(z, self.m)) {
            return Err(Error::NotRootOfUnity);
        }
        let zinv = f.inv(z)?;
        let terms = lifted.terms.iter().map(|(j, c)| (*j, f.mul(c, &f.pow(&zinv, *j)))).collect::<Vec<_>>();
        ExpForm::new(&f, self.m, terms)
    }

    /// Coefficients re-expressed in a larger field of the same tower.
    pub fn lift_to(&self, target: &Field) -> Result<ExpForm> {
        if *target == self.field {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(j, c)| Ok((*j, target.lift(&self.field, c)?)))
            .collect::<Result<Vec<_>>>()?;
        ExpForm::new(target, self.m, terms)
    }

    /// Terms in the variable `s` with `s^ram = x`; `ram` must be a multiple of
    /// the normalized ramification index. Pairs `(j', c)` meaning `c s^{-j'}`.
    pub fn terms_in(&self, ram: u64) -> Result<Vec<(u64, Elem)>> {
        let n = if ram.is_multiple_of(self.m) { self.clone() } else { self.normalize() };
        if !ram.is_multiple_of(n.m) {
            return Err(Error::RamificationMismatch);
        }
        let k = ram / n.m;
        Ok(n.terms.iter().map(|(j, c)| (j * k, c.clone())).collect())
    }

    pub fn add(&self, other: &ExpForm) -> Result<ExpForm> {
        let (f, a, b) = common(self, other)?;
        let m = a.m.lcm(&b.m);
        let mut terms = a.terms_in(m)?;
        terms.extend(b.terms_in(m)?);
        ExpForm::new(&f, m, terms)
    }

    pub fn neg(&self) -> ExpForm {
        let f = &self.field;
        ExpForm { field: f.clone(), m: self.m, terms: self.terms.iter().map(|(j, c)| (*j, f.neg(c))).collect() }
    }

    pub fn sub(&self, other: &ExpForm) -> Result<ExpForm> {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> ExpForm {
        let f = &self.field;
        let terms: Vec<(u64, Elem)> = self.terms.iter().map(|(j, c)| (*j, f.scale(c, q))).collect();
        ExpForm::new(f, self.m, terms).expect("valid")
    }

    /// Derivative with respect to the variable `s`, `s^ram = x`, as pairs
    /// `(e, c)` meaning `c s^{e}` (all `e ≤ -2`).
    pub fn derivative_in(&self, ram: u64) -> Result<Vec<(i64, Elem)>> {
        let f = &self.field;
        Ok(self
            .terms_in(ram)?
            .into_iter()
            .map(|(j, c)| {
                let factor = BigRational::from_integer(-BigInt::from(j));
                (-(j as i64) - 1, f.scale(&c, &factor))
            })
            .collect())
    }

    /// Comparison key of the normal form: terms from the highest pole down.
    pub(crate) fn key(&self) -> Vec<(u64, Elem)> {
        self.normalize().terms.iter().rev().map(|(j, c)| (*j, c.clone())).collect()
    }

    /// Renders the normal form, e.g. `2*t^-3 + 5*t^-1 ; m=2`, or `3*x^-2`
    /// when unramified.
    pub fn render(&self) -> String {
        let n = self.normalize();
        n.render_raw()
    }

    /// Renders with the stored ramification index.
    pub fn render_raw(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let var = if self.m == 1 { "x" } else { "t" };
        let f = &self.field;
        let mut s = String::new();
        for (j, c) in self.terms.iter().rev() {
            let mono = format!("{}^-{}", var, j);
            push_term(&mut s, &f.fmt_elem(c), f.as_rational(c), &mono);
        }
        if self.m != 1 {
            s.push_str(&format!(" ; m={}", self.m));
        }
        s
    }
}

impl PartialEq for ExpForm {
    fn eq(&self, other: &ExpForm) -> bool {
        let a = self.normalize();
        let b = other.normalize();
        a.field == b.field && a.m == b.m && a.terms == b.terms
    }
}
impl Eq for ExpForm {}

fn common(a: &ExpForm, b: &ExpForm) -> Result<(Field, ExpForm, ExpForm)> {
    if a.field.contains_subfield(&b.field) {
        Ok((a.field.clone(), a.clone(), b.lift_to(&a.field)?))
    } else if b.field.contains_subfield(&a.field) {
        Ok((b.field.clone(), a.lift_to(&b.field)?, b.clone()))
    } else {
        Err(Error::FieldMismatch)
    }
}

impl fmt::Display for ExpForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for ExpForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpForm({} over {})", self.render(), self.field)
    }
}

/// The x-degree of a form as a plain rational.
pub fn deg_x(w: &ExpForm) -> Option<BigRational> {
    w.deg_x()
}
