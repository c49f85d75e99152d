//! Differential operators `Σ a_i ∂^i` with Laurent coefficients in `x`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::series::Series;
use crate::exactalg::field::push_term;
use crate::exactalg::{Elem, Field};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    field: Field,
    coeffs: Vec<Series>,
}

/// Signed Stirling numbers of the first kind `s(i, j)`, `0 ≤ j ≤ i ≤ n`:
/// `y(y-1)…(y-i+1) = Σ_j s(i,j) y^j`.
pub fn stirling1(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::from(0); n + 1]; n + 1];
    s[0][0] = BigInt::from(1);
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = &s[i - 1][j - 1] - BigInt::from((i - 1) as i64) * &s[i - 1][j];
        }
    }
    s
}

impl DiffOperator {
    /// Coefficients `a_0, …, a_d`; trailing zero coefficients are dropped and
    /// an all-zero list is rejected.
    pub fn new(field: &Field, mut coeffs: Vec<Series>) -> Result<DiffOperator> {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Invalid("zero operator".into()));
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(DiffOperator { field: field.clone(), coeffs })
    }

    /// Operator from rational coefficient tables: `coeffs[i]` lists
    /// `(exponent, value)` pairs of `a_i`.
    pub fn from_terms(field: &Field, coeffs: &[Vec<(i64, BigRational)>]) -> Result<DiffOperator> {
        let cs = coeffs
            .iter()
            .map(|terms| {
                let ts: Vec<(i64, Elem)> = terms.iter().map(|(e, c)| (*e, field.from_rat(c))).collect();
                Series::from_terms(field, &ts)
            })
            .collect();
        DiffOperator::new(field, cs)
    }

    /// Integer convenience form: `coeffs[i]` lists `(exponent, value)`.
    pub fn from_int_terms(coeffs: &[&[(i64, i64)]]) -> Result<DiffOperator> {
        let q = Field::rationals();
        let cs: Vec<Vec<(i64, BigRational)>> = coeffs
            .iter()
            .map(|ts| ts.iter().map(|(e, c)| (*e, BigRational::from_integer(BigInt::from(*c)))).collect())
            .collect();
        DiffOperator::from_terms(&q, &cs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Series {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Series::zero(&self.field))
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact())
    }

    /// Operator `∂`.
    pub fn derivation(field: &Field) -> DiffOperator {
        DiffOperator { field: field.clone(), coeffs: vec![Series::zero(field), Series::one(field)] }
    }

    /// Multiplication operator by a function.
    pub fn function(s: Series) -> DiffOperator {
        let f = s.field().clone();
        DiffOperator { field: f, coeffs: vec![s] }
    }

    pub fn add(&self, o: &DiffOperator) -> Result<DiffOperator> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let cs = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        DiffOperator::new(&self.field, cs)
    }

    pub fn neg(&self) -> DiffOperator {
        DiffOperator { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, o: &DiffOperator) -> Result<DiffOperator> {
        self.add(&o.neg())
    }

    /// Left multiplication by a function.
    pub fn mul_left(&self, g: &Series) -> Result<DiffOperator> {
        DiffOperator::new(&self.field, self.coeffs.iter().map(|c| g.mul(c)).collect())
    }

    /// Composition in the Weyl algebra, using `∂ a = a ∂ + a'`.
    pub fn compose(&self, o: &DiffOperator) -> Result<DiffOperator> {
        let f = &self.field;
        // ∂^i ∘ o, built by repeated left multiplication with ∂
        let mut power: Vec<Series> = o.coeffs.clone();
        let mut acc: Vec<Series> = Vec::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                let mut next = vec![Series::zero(f); power.len() + 1];
                for (j, c) in power.iter().enumerate() {
                    next[j + 1] = next[j + 1].add(c);
                    next[j] = next[j].add(&c.derivative());
                }
                power = next;
            }
            if a.is_exact_zero() {
                continue;
            }
            if acc.len() < power.len() {
                acc.resize(power.len(), Series::zero(f));
            }
            for (j, c) in power.iter().enumerate() {
                acc[j] = acc[j].add(&a.mul(c));
            }
        }
        DiffOperator::new(f, acc)
    }

    /// Coefficients `b_j` of the same operator written as `Σ b_j θ^j`,
    /// `θ = x ∂`.
    pub fn theta_coeffs(&self) -> Vec<Series> {
        let f = &self.field;
        let d = self.order();
        let s = stirling1(d);
        let mut b = vec![Series::zero(f); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            let ai = a.shift(-(i as i64));
            for (j, bj) in b.iter_mut().enumerate().take(i + 1) {
                if s[i][j] == BigInt::from(0) {
                    continue;
                }
                *bj = bj.add(&ai.scale_rat(&BigRational::from_integer(s[i][j].clone())));
            }
        }
        b
    }

    /// Applies the operator to a series.
    pub fn apply(&self, y: &Series) -> Series {
        let mut acc = Series::zero(&self.field);
        let mut dy = y.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                dy = dy.derivative();
            }
            acc = acc.add(&a.mul(&dy));
        }
        acc
    }

    pub fn lift_to(&self, target: &Field) -> Result<DiffOperator> {
        let cs = self.coeffs.iter().map(|c| c.lift_to(target)).collect::<Result<Vec<_>>>()?;
        DiffOperator::new(target, cs)
    }

    /// Normal-form rendering: terms `c*x^e*D^i` with `D`-degree descending,
    /// then `x`-exponent descending. Truncated coefficients render their
    /// known part only.
    pub fn render(&self) -> String {
        let f = &self.field;
        let mut s = String::new();
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            let terms: Vec<(i64, &Elem)> = a.terms().collect();
            for (e, c) in terms.into_iter().rev() {
                let mut parts = Vec::new();
                match e {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    _ => parts.push(format!("x^{}", e)),
                }
                match i {
                    0 => {}
                    1 => parts.push("D".to_string()),
                    _ => parts.push(format!("D^{}", i)),
                }
                push_term(&mut s, &f.fmt_elem(c), f.as_rational(c), &parts.join("*"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator({})", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_numbers() {
        let s = stirling1(3);
        // y(y-1)(y-2) = y^3 - 3y^2 + 2y
        assert_eq!(s[3], vec![0, 2, -3, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn theta_form_of_second_order_operator() {
        // x^3 D^2 - 1 = x (θ^2 - θ) - 1
        let l = DiffOperator::from_int_terms(&[&[(0, -1)], &[], &[(3, 1)]]).unwrap();
        let b = l.theta_coeffs();
        let q = Field::rationals();
        assert_eq!(b[0], Series::from_terms(&q, &[(0, q.from_int(-1))]));
        assert_eq!(b[1], Series::from_terms(&q, &[(1, q.from_int(-1))]));
        assert_eq!(b[2], Series::from_terms(&q, &[(1, q.from_int(1))]));
    }

    #[test]
    fn weyl_commutation() {
        let q = Field::rationals();
        let d = DiffOperator::derivation(&q);
        let x = DiffOperator::function(Series::monomial(&q, q.one(), 1));
        // D x = x D + 1
        let dx = d.compose(&x).unwrap();
        assert_eq!(dx.render(), "x*D + 1");
    }

    #[test]
    fn annihilates_its_solution_to_known_order() {
        // (D - 1) applied to exp truncated: only the truncation error remains
        let q = Field::rationals();
        let l = DiffOperator::from_int_terms(&[&[(0, -1)], &[(0, 1)]]).unwrap();
        let mut cs = Vec::new();
        let mut fact = BigRational::from_integer(BigInt::from(1));
        for k in 0..8 {
            if k > 0 {
                fact = fact / BigRational::from_integer(BigInt::from(k));
            }
            cs.push(q.from_rat(&fact));
        }
        let e = Series::new(&q, 0, cs, Some(8));
        let r = l.apply(&e);
        assert!(r.is_zero());
        assert_eq!(r.prec(), Some(7));
    }

    #[test]
    fn rendering() {
        let l = DiffOperator::from_int_terms(&[&[(0, -1)], &[], &[(3, 1)]]).unwrap();
        assert_eq!(l.render(), "x^3*D^2 - 1");
        let l2 = DiffOperator::from_int_terms(&[&[(0, 5), (-1, 2)], &[(1, -3)]]).unwrap();
        assert_eq!(l2.render(), "-3*x*D + 5 + 2*x^-1");
    }
}
