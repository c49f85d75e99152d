//! Number-field towers over the rationals.
//!
//! A [`Field`] is either `Q` or a simple extension `B[z]/(g)` of another
//! field `B` by a monic irreducible `g`. Elements are stored as [`Elem`]
//! values whose shape mirrors the tower: a rational at the bottom, and at
//! each extension level the (trimmed) coefficient vector of the residue
//! polynomial in the generator.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, UniPoly};
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 16;

/// Raw element representation. Only meaningful together with its [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Rat(BigRational),
    /// Residue coefficients over the base field, lowest degree first,
    /// no trailing zeros. The zero element is the empty vector.
    Ext(Vec<Elem>),
}

#[derive(Clone)]
pub struct Field(Arc<Node>);

struct Node {
    kind: Kind,
    degree: usize,
}

enum Kind {
    Rationals,
    Extension {
        base: Field,
        modulus: Vec<Elem>,
        name: String,
    },
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Rationals, Kind::Rationals) => true,
            (
                Kind::Extension { base: b1, modulus: m1, name: n1 },
                Kind::Extension { base: b2, modulus: m2, name: n2 },
            ) => n1 == n2 && m1 == m2 && b1 == b2,
            _ => false,
        }
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Rationals => write!(f, "Q"),
            Kind::Extension { base, modulus, name } => {
                let p = UniPoly::from_raw(base.clone(), modulus.clone());
                write!(f, "{}[{}]/({})", base, name, p.display_var(name))
            }
        }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(Node { kind: Kind::Rationals, degree: 1 }))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0.kind, Kind::Rationals)
    }

    /// Degree over Q.
    pub fn absolute_degree(&self) -> usize {
        self.0.degree
    }

    /// Degree over the immediate base (1 for Q).
    pub fn relative_degree(&self) -> usize {
        match &self.0.kind {
            Kind::Rationals => 1,
            Kind::Extension { modulus, .. } => modulus.len() - 1,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &self.0.kind {
            Kind::Rationals => None,
            Kind::Extension { base, .. } => Some(base),
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match &self.0.kind {
            Kind::Rationals => None,
            Kind::Extension { name, .. } => Some(name),
        }
    }

    /// Defining polynomial over the base.
    pub fn modulus(&self) -> Option<UniPoly> {
        match &self.0.kind {
            Kind::Rationals => None,
            Kind::Extension { base, modulus, .. } => {
                Some(UniPoly::from_raw(base.clone(), modulus.clone()))
            }
        }
    }

    pub fn depth(&self) -> usize {
        match &self.0.kind {
            Kind::Rationals => 0,
            Kind::Extension { base, .. } => base.depth() + 1,
        }
    }

    /// All generator names from the bottom of the tower up.
    pub fn generator_names(&self) -> Vec<String> {
        let mut out = match self.base() {
            Some(b) => b.generator_names(),
            None => Vec::new(),
        };
        if let Some(n) = self.generator_name() {
            out.push(n.to_string());
        }
        out
    }

    /// Adjoins a root of `poly` (over `self`) after checking irreducibility
    /// and the default degree cap.
    pub fn adjoin(&self, poly: &UniPoly, name: &str) -> Result<Field> {
        self.adjoin_with_cap(poly, name, DEFAULT_DEGREE_CAP)
    }

    pub fn adjoin_with_cap(&self, poly: &UniPoly, name: &str, cap: usize) -> Result<Field> {
        if poly.field() != self {
            return Err(Error::FieldMismatch);
        }
        let deg = poly.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Err(Error::Invalid("defining polynomial must have positive degree".into()));
        }
        let total = self.absolute_degree() * deg;
        if total > cap {
            return Err(Error::DegreeCapExceeded { degree: total, cap });
        }
        if !poly.is_irreducible()? {
            return Err(Error::Reducible);
        }
        Ok(self.adjoin_unchecked(&poly.monic(), name))
    }

    /// Adjoins a root of a polynomial already known to be monic irreducible.
    /// Only the cap is checked.
    pub(crate) fn adjoin_irreducible(&self, poly: &UniPoly, name: &str, cap: usize) -> Result<Field> {
        let deg = poly.degree().ok_or(Error::ZeroPolynomial)?;
        let total = self.absolute_degree() * deg;
        if total > cap {
            return Err(Error::DegreeCapExceeded { degree: total, cap });
        }
        Ok(self.adjoin_unchecked(&poly.monic(), name))
    }

    fn adjoin_unchecked(&self, monic: &UniPoly, name: &str) -> Field {
        let deg = monic.degree().unwrap_or(0);
        Field(Arc::new(Node {
            kind: Kind::Extension {
                base: self.clone(),
                modulus: monic.coeffs().to_vec(),
                name: name.to_string(),
            },
            degree: self.absolute_degree() * deg,
        }))
    }

    /// True when `sub` occurs in the tower below (or equal to) `self`.
    pub fn contains_subfield(&self, sub: &Field) -> bool {
        if self == sub {
            return true;
        }
        match self.base() {
            Some(b) => b.contains_subfield(sub),
            None => false,
        }
    }

    /// Degree of `self` over a subfield of its tower.
    pub fn degree_over(&self, sub: &Field) -> Result<usize> {
        if self == sub {
            return Ok(1);
        }
        match self.base() {
            Some(b) => Ok(self.relative_degree() * b.degree_over(sub)?),
            None => Err(Error::NotASubfield),
        }
    }

    // ----- element constructors -----

    pub fn zero(&self) -> Elem {
        match &self.0.kind {
            Kind::Rationals => Elem::Rat(BigRational::zero()),
            Kind::Extension { .. } => Elem::Ext(Vec::new()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_rat(&BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_rat(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(&self, q: &BigRational) -> Elem {
        match &self.0.kind {
            Kind::Rationals => Elem::Rat(q.clone()),
            Kind::Extension { base, .. } => {
                if q.is_zero() {
                    Elem::Ext(Vec::new())
                } else {
                    Elem::Ext(vec![base.from_rat(q)])
                }
            }
        }
    }

    /// The generator `z` of `B[z]/(g)`; for Q this is 1.
    pub fn generator(&self) -> Elem {
        match &self.0.kind {
            Kind::Rationals => self.one(),
            Kind::Extension { base, modulus, .. } => {
                if modulus.len() == 2 {
                    // degree-one extension: z = -g0
                    let minus = base.neg(&modulus[0]);
                    self.wrap_base(&minus)
                } else {
                    Elem::Ext(vec![base.zero(), base.one()])
                }
            }
        }
    }

    /// Embeds an element of the immediate base.
    pub fn wrap_base(&self, e: &Elem) -> Elem {
        match &self.0.kind {
            Kind::Rationals => e.clone(),
            Kind::Extension { base, .. } => {
                if base.is_zero(e) {
                    Elem::Ext(Vec::new())
                } else {
                    Elem::Ext(vec![e.clone()])
                }
            }
        }
    }

    /// Builds an element from its residue coefficients over the base.
    pub fn from_base_coeffs(&self, coeffs: Vec<Elem>) -> Elem {
        match &self.0.kind {
            Kind::Rationals => {
                coeffs.into_iter().next().unwrap_or_else(|| self.zero())
            }
            Kind::Extension { base, modulus, .. } => {
                let r = poly::rem_raw(base, &coeffs, modulus);
                Elem::Ext(r)
            }
        }
    }

    /// Residue coefficients over the base, padded to the relative degree.
    pub fn base_coeffs(&self, e: &Elem) -> Vec<Elem> {
        match (&self.0.kind, e) {
            (Kind::Rationals, _) => vec![e.clone()],
            (Kind::Extension { base, modulus, .. }, Elem::Ext(v)) => {
                let mut out = v.clone();
                out.resize(modulus.len() - 1, base.zero());
                out
            }
            _ => panic!("element shape does not match field {}", self),
        }
    }

    // ----- arithmetic -----

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Rat(q) => q.is_zero(),
            Elem::Ext(v) => v.is_empty(),
        }
    }

    pub fn is_one(&self, e: &Elem) -> bool {
        *e == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Kind::Extension { base, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(poly::add_raw(base, x, y))
            }
            _ => panic!("element shape does not match field {}", self),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (Kind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (Kind::Extension { base, .. }, Elem::Ext(x)) => {
                Elem::Ext(x.iter().map(|c| base.neg(c)).collect())
            }
            _ => panic!("element shape does not match field {}", self),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Kind::Extension { base, modulus, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                if x.is_empty() || y.is_empty() {
                    return Elem::Ext(Vec::new());
                }
                let prod = poly::mul_raw(base, x, y);
                Elem::Ext(poly::rem_raw(base, &prod, modulus))
            }
            _ => panic!("element shape does not match field {}", self),
        }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, a: &Elem, q: &BigRational) -> Elem {
        match a {
            Elem::Rat(x) => Elem::Rat(x * q),
            Elem::Ext(v) => {
                if q.is_zero() {
                    return Elem::Ext(Vec::new());
                }
                let base = self.base().expect("extension");
                Elem::Ext(v.iter().map(|c| base.scale(c, q)).collect())
            }
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (&self.0.kind, a) {
            (Kind::Rationals, Elem::Rat(x)) => Ok(Elem::Rat(x.recip())),
            (Kind::Extension { base, modulus, .. }, Elem::Ext(x)) => {
                let inv = poly::inverse_mod_raw(base, x, modulus)?;
                Ok(Elem::Ext(inv))
            }
            _ => panic!("element shape does not match field {}", self),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Integer power, negative exponents allowed for nonzero `a`.
    pub fn powi(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_rational(&self, e: &Elem) -> Option<BigRational> {
        match (&self.0.kind, e) {
            (Kind::Rationals, Elem::Rat(q)) => Some(q.clone()),
            (Kind::Extension { base, .. }, Elem::Ext(v)) => match v.len() {
                0 => Some(BigRational::zero()),
                1 => base.as_rational(&v[0]),
                _ => None,
            },
            _ => None,
        }
    }

    /// Lifts an element of a subfield of the tower into `self`.
    pub fn lift(&self, sub: &Field, e: &Elem) -> Result<Elem> {
        if self == sub {
            return Ok(e.clone());
        }
        match self.base() {
            Some(b) => {
                let inner = b.lift(sub, e)?;
                Ok(self.wrap_base(&inner))
            }
            None => Err(Error::NotASubfield),
        }
    }

    /// Coordinates of `e` over a subfield `sub`, in the tower power basis.
    pub fn coords_over(&self, e: &Elem, sub: &Field) -> Result<Vec<Elem>> {
        if self == sub {
            return Ok(vec![e.clone()]);
        }
        let base = self.base().ok_or(Error::NotASubfield)?;
        let mut out = Vec::new();
        for c in self.base_coeffs(e) {
            out.extend(base.coords_over(&c, sub)?);
        }
        Ok(out)
    }

    /// Inverse of [`Field::coords_over`].
    pub fn from_coords(&self, coords: &[Elem], sub: &Field) -> Result<Elem> {
        if self == sub {
            return Ok(coords[0].clone());
        }
        let base = self.base().ok_or(Error::NotASubfield)?;
        let chunk = base.degree_over(sub)?;
        let mut cs = Vec::new();
        for part in coords.chunks(chunk) {
            cs.push(base.from_coords(part, sub)?);
        }
        Ok(self.from_base_coeffs(poly::trim_raw(base, cs)))
    }

    /// Basis of `self` over `sub` in the tower power basis, matching
    /// [`Field::coords_over`].
    pub fn basis_over(&self, sub: &Field) -> Result<Vec<Elem>> {
        let n = self.degree_over(sub)?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut coords = vec![sub.zero(); n];
            coords[i] = sub.one();
            out.push(self.from_coords(&coords, sub)?);
        }
        Ok(out)
    }

    // ----- formatting -----

    /// Human-readable rendering using generator names, parseable back by the
    /// expression grammar.
    pub fn fmt_elem(&self, e: &Elem) -> String {
        match (&self.0.kind, e) {
            (Kind::Rationals, Elem::Rat(q)) => fmt_rat(q),
            (Kind::Extension { base, name, .. }, Elem::Ext(v)) => {
                if v.is_empty() {
                    return "0".into();
                }
                let mut s = String::new();
                for (i, c) in v.iter().enumerate().rev() {
                    if base.is_zero(c) {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => name.clone(),
                        _ => format!("{}^{}", name, i),
                    };
                    push_term(&mut s, &base.fmt_elem(c), base.as_rational(c), &mono);
                }
                s
            }
            _ => panic!("element shape does not match field {}", self),
        }
    }
}

pub fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Appends `coeff * mono` to a sum being rendered, with sign folding when the
/// coefficient is rational and parenthesizing otherwise.
pub(crate) fn push_term(s: &mut String, coeff: &str, coeff_rat: Option<BigRational>, mono: &str) {
    match coeff_rat {
        Some(q) => {
            let neg = q.is_negative();
            let abs = q.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&fmt_rat(&abs));
            } else if abs.is_one() {
                s.push_str(mono);
            } else {
                s.push_str(&fmt_rat(&abs));
                s.push('*');
                s.push_str(mono);
            }
        }
        None => {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            s.push('(');
            s.push_str(coeff);
            s.push(')');
            if !mono.is_empty() {
                s.push('*');
                s.push_str(mono);
            }
        }
    }
}

/// An element together with the field it lives in.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgElem {
    field: Field,
    value: Elem,
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.fmt_elem(&self.value), self.field)
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_elem(&self.value))
    }
}

impl AlgElem {
    pub fn new(field: Field, value: Elem) -> AlgElem {
        AlgElem { field, value }
    }

    pub fn rational(q: BigRational) -> AlgElem {
        AlgElem { field: Field::rationals(), value: Elem::Rat(q) }
    }

    pub fn from_int(field: &Field, n: i64) -> AlgElem {
        AlgElem { field: field.clone(), value: field.from_int(n) }
    }

    pub fn from_rat(field: &Field, q: &BigRational) -> AlgElem {
        AlgElem { field: field.clone(), value: field.from_rat(q) }
    }

    pub fn generator(field: &Field) -> AlgElem {
        AlgElem { field: field.clone(), value: field.generator() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.field.as_rational(&self.value)
    }

    /// Re-expresses the element in a larger field of the same tower.
    pub fn lift_to(&self, target: &Field) -> Result<AlgElem> {
        Ok(AlgElem { field: target.clone(), value: target.lift(&self.field, &self.value)? })
    }

    /// Brings two elements into a common field (the larger of the two towers).
    pub fn coerce(a: &AlgElem, b: &AlgElem) -> Result<(Field, Elem, Elem)> {
        if a.field.contains_subfield(&b.field) {
            let bv = a.field.lift(&b.field, &b.value)?;
            Ok((a.field.clone(), a.value.clone(), bv))
        } else if b.field.contains_subfield(&a.field) {
            let av = b.field.lift(&a.field, &a.value)?;
            Ok((b.field.clone(), av, b.value.clone()))
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &AlgElem) -> Result<AlgElem> {
        let (f, a, b) = AlgElem::coerce(self, other)?;
        Ok(AlgElem { value: f.add(&a, &b), field: f })
    }

    pub fn try_sub(&self, other: &AlgElem) -> Result<AlgElem> {
        let (f, a, b) = AlgElem::coerce(self, other)?;
        Ok(AlgElem { value: f.sub(&a, &b), field: f })
    }

    pub fn try_mul(&self, other: &AlgElem) -> Result<AlgElem> {
        let (f, a, b) = AlgElem::coerce(self, other)?;
        Ok(AlgElem { value: f.mul(&a, &b), field: f })
    }

    pub fn try_div(&self, other: &AlgElem) -> Result<AlgElem> {
        let (f, a, b) = AlgElem::coerce(self, other)?;
        Ok(AlgElem { value: f.div(&a, &b)?, field: f })
    }

    pub fn neg(&self) -> AlgElem {
        AlgElem { field: self.field.clone(), value: self.field.neg(&self.value) }
    }

    pub fn inv(&self) -> Result<AlgElem> {
        Ok(AlgElem { field: self.field.clone(), value: self.field.inv(&self.value)? })
    }

    pub fn pow(&self, e: u64) -> AlgElem {
        AlgElem { field: self.field.clone(), value: self.field.pow(&self.value, e) }
    }

    pub fn powi(&self, e: i64) -> Result<AlgElem> {
        Ok(AlgElem { field: self.field.clone(), value: self.field.powi(&self.value, e)? })
    }

    pub fn scale(&self, q: &BigRational) -> AlgElem {
        AlgElem { field: self.field.clone(), value: self.field.scale(&self.value, q) }
    }
}

macro_rules! alg_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr<&AlgElem> for &AlgElem {
            type Output = AlgElem;
            /// Panics when the operands live in unrelated towers.
            fn $m(self, rhs: &AlgElem) -> AlgElem {
                self.$try(rhs).expect("operands in unrelated fields")
            }
        }
    };
}
alg_binop!(Add, add, try_add);
alg_binop!(Sub, sub, try_sub);
alg_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> Field {
        let q = Field::rationals();
        let p = UniPoly::from_ints(&q, &[1, 0, 1]);
        q.adjoin(&p, "i").unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        let f = qi();
        let i = f.generator();
        assert_eq!(f.mul(&i, &i), f.from_int(-1));
    }

    #[test]
    fn inverse_in_quadratic_field() {
        let f = qi();
        let a = f.add(&f.generator(), &f.from_int(2)); // i + 2
        let inv = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &inv)));
        assert_eq!(f.fmt_elem(&inv), "-1/5*i + 2/5");
    }

    #[test]
    fn reducible_modulus_rejected() {
        let q = Field::rationals();
        let p = UniPoly::from_ints(&q, &[-1, 0, 1]);
        assert_eq!(q.adjoin(&p, "a").unwrap_err(), Error::Reducible);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let q = Field::rationals();
        let p = UniPoly::from_ints(&q, &[-2, 0, 0, 0, 0, 1]);
        let err = q.adjoin_with_cap(&p, "a", 4).unwrap_err();
        assert_eq!(err, Error::DegreeCapExceeded { degree: 5, cap: 4 });
    }

    #[test]
    fn coordinates_round_trip_in_tower() {
        let q = Field::rationals();
        let f2 = q.adjoin(&UniPoly::from_ints(&q, &[-2, 0, 1]), "a").unwrap();
        let p3 = UniPoly::from_ints(&f2, &[-3, 0, 1]);
        let f6 = f2.adjoin(&p3, "b").unwrap();
        let b = f6.generator();
        let a = f6.lift(&f2, &f2.generator()).unwrap();
        let e = f6.add(&f6.mul(&a, &b), &f6.from_int(7));
        let coords = f6.coords_over(&e, &q).unwrap();
        assert_eq!(coords.len(), 4);
        assert_eq!(f6.from_coords(&coords, &q).unwrap(), e);
        assert_eq!(f6.fmt_elem(&e), "(a)*b + 7");
    }
}
