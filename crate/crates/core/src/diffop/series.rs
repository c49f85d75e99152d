//! Truncated Laurent series `Σ c_i t^{val+i} + O(t^prec)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactalg::field::push_term;
use crate::exactalg::{Elem, Field};
use crate::error::{Error, Result};

/// A Laurent series with an absolute precision, or an exact Laurent
/// polynomial when `prec` is `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    field: Field,
    val: i64,
    coeffs: Vec<Elem>,
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl Series {
    pub fn new(field: &Field, val: i64, coeffs: Vec<Elem>, prec: Option<i64>) -> Series {
        Series { field: field.clone(), val, coeffs, prec }.normalized()
    }

    pub fn zero(field: &Field) -> Series {
        Series { field: field.clone(), val: 0, coeffs: Vec::new(), prec: None }
    }

    /// `O(t^prec)`.
    pub fn big_o(field: &Field, prec: i64) -> Series {
        Series { field: field.clone(), val: prec, coeffs: Vec::new(), prec: Some(prec) }
    }

    pub fn constant(field: &Field, c: Elem) -> Series {
        Series::new(field, 0, vec![c], None)
    }

    pub fn one(field: &Field) -> Series {
        Series::constant(field, field.one())
    }

    /// `c t^e`.
    pub fn monomial(field: &Field, c: Elem, e: i64) -> Series {
        Series::new(field, e, vec![c], None)
    }

    /// Exact Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn from_terms(field: &Field, terms: &[(i64, Elem)]) -> Series {
        terms.iter().fold(Series::zero(field), |acc, (e, c)| acc.add(&Series::monomial(field, c.clone(), *e)))
    }

    fn normalized(mut self) -> Series {
        let f = &self.field;
        if let Some(p) = self.prec {
            let keep = (p - self.val).max(0) as usize;
            if self.coeffs.len() > keep {
                self.coeffs.truncate(keep);
            }
        }
        let lead = self.coeffs.iter().take_while(|c| f.is_zero(c)).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        while self.coeffs.last().map(|c| f.is_zero(c)).unwrap_or(false) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = self.prec.unwrap_or(0);
        }
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// No known nonzero coefficient.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// Valuation of the known part; `None` when no nonzero coefficient is known.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Lower bound for the valuation (`None` = exact zero, i.e. infinity).
    pub fn valuation_bound(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.val)
        }
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.first()
    }

    /// Coefficient of `t^e`; `None` when beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<Elem> {
        if let Some(p) = self.prec {
            if e >= p {
                return None;
            }
        }
        if e < self.val || e >= self.val + self.coeffs.len() as i64 {
            return Some(self.field.zero());
        }
        Some(self.coeffs[(e - self.val) as usize].clone())
    }

    /// Known nonzero terms `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Elem)> + '_ {
        let f = &self.field;
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| !f.is_zero(c))
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    /// Exponent just past the last stored coefficient.
    pub fn degree_bound(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn truncate(&self, prec: i64) -> Series {
        let p = min_prec(self.prec, Some(prec));
        Series { prec: p, ..self.clone() }.normalized()
    }

    pub fn add(&self, o: &Series) -> Series {
        let f = &self.field;
        let prec = min_prec(self.prec, o.prec);
        if self.coeffs.is_empty() {
            return Series { prec, ..o.clone() }.normalized();
        }
        if o.coeffs.is_empty() {
            return Series { prec, ..self.clone() }.normalized();
        }
        let lo = self.val.min(o.val);
        let hi = self.degree_bound().max(o.degree_bound());
        let hi = match prec {
            Some(p) => hi.min(p),
            None => hi,
        };
        let mut coeffs = Vec::with_capacity((hi - lo).max(0) as usize);
        for e in lo..hi {
            let a = self.raw(e);
            let b = o.raw(e);
            coeffs.push(match (a, b) {
                (Some(x), Some(y)) => f.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => f.zero(),
            });
        }
        Series { field: f.clone(), val: lo, coeffs, prec }.normalized()
    }

    fn raw(&self, e: i64) -> Option<&Elem> {
        if e < self.val {
            return None;
        }
        self.coeffs.get((e - self.val) as usize)
    }

    pub fn neg(&self) -> Series {
        let f = &self.field;
        Series { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Series) -> Series {
        let f = &self.field;
        let vb_a = self.valuation_bound();
        let vb_b = o.valuation_bound();
        // O(t^pa) * b contributes from pa + v(b)
        let prec = match (self.prec, o.prec) {
            (None, None) => None,
            _ => {
                let from_a = match (self.prec, vb_b) {
                    (Some(pa), Some(vb)) => Some(pa + vb),
                    _ => None,
                };
                let from_b = match (o.prec, vb_a) {
                    (Some(pb), Some(va)) => Some(pb + va),
                    _ => None,
                };
                match min_prec(from_a, from_b) {
                    Some(p) => Some(p),
                    // one factor is an exact zero
                    None => return Series::zero(f),
                }
            }
        };
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return match prec {
                Some(p) => Series::big_o(f, p),
                None => Series::zero(f),
            };
        }
        let val = self.val + o.val;
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - val).max(0) as usize);
        }
        let mut coeffs = vec![f.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if f.is_zero(b) {
                    continue;
                }
                let t = f.mul(a, b);
                coeffs[i + j] = f.add(&coeffs[i + j], &t);
            }
        }
        Series { field: f.clone(), val, coeffs, prec }.normalized()
    }

    pub fn scale(&self, c: &Elem) -> Series {
        let f = &self.field;
        Series { coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect(), ..self.clone() }.normalized()
    }

    pub fn scale_rat(&self, q: &BigRational) -> Series {
        let f = &self.field;
        Series { coeffs: self.coeffs.iter().map(|a| f.scale(a, q)).collect(), ..self.clone() }.normalized()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Series {
        Series { val: self.val + k, prec: self.prec.map(|p| p + k), ..self.clone() }.normalized()
    }

    /// Inverse of a series with known nonzero leading term. Exact inputs are
    /// expanded up to relative precision `rel`.
    pub fn inv(&self, rel: i64) -> Result<Series> {
        let f = &self.field;
        let Some(lead) = self.coeffs.first() else {
            return Err(Error::PrecisionTooLow);
        };
        let v = self.val;
        let n = match self.prec {
            Some(p) => (p - v).min(rel.max(1)),
            None => rel.max(1),
        } as usize;
        let l_inv = f.inv(lead)?;
        let mut out: Vec<Elem> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = if k == 0 { f.one() } else { f.zero() };
            for i in 1..=k {
                if let Some(a) = self.coeffs.get(i) {
                    let t = f.mul(a, &out[k - i]);
                    acc = f.sub(&acc, &t);
                }
            }
            out.push(f.mul(&acc, &l_inv));
        }
        if self.prec.is_none() && self.coeffs.len() == 1 {
            return Ok(Series::new(f, -v, out, None));
        }
        Ok(Series::new(f, -v, out, Some(-v + n as i64)))
    }

    pub fn div(&self, o: &Series, rel: i64) -> Result<Series> {
        Ok(self.mul(&o.inv(rel)?))
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Series {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| f.scale(c, &BigRational::from_integer(BigInt::from(self.val + i as i64))))
            .collect();
        Series { field: f.clone(), val: self.val - 1, coeffs, prec: self.prec.map(|p| p - 1) }.normalized()
    }

    /// `t d/dt`.
    pub fn theta(&self) -> Series {
        self.derivative().shift(1)
    }

    /// Substitution `t ↦ t^n`.
    pub fn compose_power(&self, n: u64) -> Series {
        let f = &self.field;
        let n = n as i64;
        if self.coeffs.is_empty() {
            return Series { val: self.val * n, prec: self.prec.map(|p| p * n), ..self.clone() };
        }
        let mut coeffs = vec![f.zero(); (self.coeffs.len() - 1) * n as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n as usize] = c.clone();
        }
        Series { field: f.clone(), val: self.val * n, coeffs, prec: self.prec.map(|p| p * n) }.normalized()
    }

    /// Substitution `t ↦ c t`.
    pub fn scale_var(&self, c: &Elem) -> Result<Series> {
        let f = &self.field;
        let mut p = f.powi(c, self.val)?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(f.mul(a, &p));
            p = f.mul(&p, c);
        }
        Ok(Series { coeffs, ..self.clone() }.normalized())
    }

    pub fn lift_to(&self, target: &Field) -> Result<Series> {
        if *target == self.field {
            return Ok(self.clone());
        }
        let coeffs = self.coeffs.iter().map(|c| target.lift(&self.field, c)).collect::<Result<Vec<_>>>()?;
        Ok(Series { field: target.clone(), val: self.val, coeffs, prec: self.prec })
    }

    pub fn map_coeffs(&self, target: &Field, g: impl Fn(&Elem) -> Result<Elem>) -> Result<Series> {
        let coeffs = self.coeffs.iter().map(g).collect::<Result<Vec<_>>>()?;
        Ok(Series::new(target, self.val, coeffs, self.prec))
    }

    /// Renders in the variable `var`, e.g. `x^-2 - 3 + O(x^4)`.
    pub fn render(&self, var: &str) -> String {
        let f = &self.field;
        let mut s = String::new();
        for (e, c) in self.terms() {
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, e),
            };
            push_term(&mut s, &f.fmt_elem(c), f.as_rational(c), &mono);
        }
        if let Some(p) = self.prec {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            s.push_str(&format!("O({}^{})", var, p));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn s(val: i64, cs: &[i64], prec: Option<i64>) -> Series {
        let f = q();
        Series::new(&f, val, cs.iter().map(|&c| f.from_int(c)).collect(), prec)
    }

    #[test]
    fn product_precision() {
        // (1 + t + O(t^3)) * (t^-1 + 2) = t^-1 + 3 + 2t + O(t^2)
        let a = s(0, &[1, 1], Some(3));
        let b = s(-1, &[1, 2], None);
        let c = a.mul(&b);
        assert_eq!(c.prec(), Some(2));
        assert_eq!(c, s(-1, &[1, 3, 2], Some(2)));
    }

    #[test]
    fn inverse_of_geometric_series() {
        let a = s(0, &[1, -1], None);
        let inv = a.inv(5).unwrap();
        assert_eq!(inv, s(0, &[1, 1, 1, 1, 1], Some(5)));
        let m = s(-2, &[3], None).inv(4).unwrap();
        assert!(m.is_exact());
    }

    #[test]
    fn derivative_and_theta() {
        let a = s(-2, &[1, 0, 5], Some(4)); // t^-2 + 5 + O(t^4)
        assert_eq!(a.derivative(), s(-3, &[-2], Some(3)));
        assert_eq!(a.theta(), s(-2, &[-2], Some(4)));
    }

    #[test]
    fn ramified_substitution_of_precision() {
        let a = s(-2, &[-1], Some(3));
        let r = a.compose_power(2);
        assert_eq!(r.valuation(), Some(-4));
        assert_eq!(r.prec(), Some(6));
    }

    #[test]
    fn unknown_coefficients() {
        let a = s(0, &[1], Some(2));
        assert!(a.coeff(1).is_some());
        assert!(a.coeff(2).is_none());
        assert_eq!(Series::big_o(&q(), 3).valuation_bound(), Some(3));
    }
}
