//! Newton-polygon exploration in `θ = t d/dt` form.
//!
//! A branch is the input operator after a chain of ramifications `t = τ^q`
//! and twists `θ ↦ θ + U τ^{-p}`. Only the part of its polygon with slope
//! below the branch bound is read; the slope-zero part yields a leaf.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::diffop::newton::{edge_poly, lower_hull, segment_slope, Hull};
use crate::diffop::Series;
use crate::error::{Error, Result};
use crate::exactalg::{factor, Elem, Field, UniPoly};
use crate::puiseux::ExpForm;

#[derive(Clone, Debug)]
pub(crate) struct Leaf {
    pub form: ExpForm,
    pub rank: usize,
    pub weight: u64,
}

#[derive(Clone)]
struct Branch {
    field: Field,
    m: u64,
    b: Vec<Series>,
    form: ExpForm,
    weight: u64,
    bound: Option<i64>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `Σ b_j (θ + φ)^j` for a function `φ`.
fn twist_theta(f: &Field, b: &[Series], phi: &Series) -> Vec<Series> {
    let d = b.len() - 1;
    let mut out = vec![Series::zero(f); d + 1];
    let mut power: Vec<Series> = vec![Series::one(f)];
    for (j, bj) in b.iter().enumerate() {
        if j > 0 {
            let mut next = vec![Series::zero(f); power.len() + 1];
            for (i, g) in power.iter().enumerate() {
                next[i] = next[i].add(&g.theta()).add(&phi.mul(g));
                next[i + 1] = next[i + 1].add(g);
            }
            power = next;
        }
        if bj.is_exact_zero() {
            continue;
        }
        for (i, g) in power.iter().enumerate() {
            out[i] = out[i].add(&bj.mul(g));
        }
    }
    out
}

fn fresh_name(f: &Field) -> String {
    let names = f.generator_names();
    (1..).map(|k| format!("a{}", k)).find(|n| !names.contains(n)).unwrap()
}

pub(crate) struct Explorer {
    pub width: i64,
    pub cap: usize,
    pub leaves: Vec<Leaf>,
}

impl Explorer {
    pub fn run(&mut self, field: &Field, b: Vec<Series>) -> Result<()> {
        let root = Branch {
            field: field.clone(),
            m: 1,
            b,
            form: ExpForm::zero(field),
            weight: 1,
            bound: None,
        };
        self.explore(root)
    }

    fn explore(&mut self, br: Branch) -> Result<()> {
        let d = br.b.len() - 1;
        let vmin = br.b.iter().filter_map(|s| s.valuation()).min().ok_or(Error::PrecisionTooLow)?;
        let cut = vmin + self.width * br.m as i64;
        let b: Vec<Series> = br.b.iter().map(|s| s.truncate(cut)).collect();

        let known: Vec<(usize, i64, Elem)> = b
            .iter()
            .enumerate()
            .filter_map(|(j, s)| s.valuation().map(|v| (j, v, s.leading().unwrap().clone())))
            .collect();
        if known.last().map(|p| p.0) != Some(d) {
            return Err(Error::PrecisionTooLow);
        }
        let plain: Vec<(usize, i64)> = known.iter().map(|p| (p.0, p.1)).collect();
        let hull = lower_hull(&plain);

        let below = |a: (usize, i64), b2: (usize, i64)| {
            let (p, q) = segment_slope(a, b2);
            br.bound.is_none_or(|bd| p < bd * q)
        };
        let mut chain = vec![hull.chain[0]];
        for w in hull.chain.windows(2) {
            if !below(w[0], w[1]) {
                break;
            }
            chain.push(w[1]);
        }
        self.check_unknowns(&b, &hull, &chain, br.bound)?;

        if hull.istar > 0 {
            self.leaves.push(Leaf { form: br.form.clone(), rank: hull.istar, weight: br.weight });
        }
        for w in chain.windows(2) {
            let (p, q) = segment_slope(w[0], w[1]);
            let pe = edge_poly(&br.field, &known, w[0], w[1]);
            for (fct, _) in factor(&pe)? {
                self.descend(&br, &b, &fct, p, q)?;
            }
        }
        Ok(())
    }

    fn check_unknowns(&self, b: &[Series], hull: &Hull, chain: &[(usize, i64)], bound: Option<i64>) -> Result<()> {
        let last = *chain.last().unwrap();
        for (k, s) in b.iter().enumerate() {
            if s.valuation().is_some() || s.is_exact_zero() {
                continue;
            }
            let pk = s.prec().expect("inexact");
            let ok = if k < hull.istar {
                pk >= hull.vstar
            } else if k <= last.0 {
                let seg = chain.windows(2).find(|w| w[0].0 <= k && k <= w[1].0);
                match seg {
                    // 2 * height of the chain above k, compared exactly
                    Some(w) => {
                        let (x0, y0) = (w[0].0 as i128, w[0].1 as i128);
                        let (x1, y1) = (w[1].0 as i128, w[1].1 as i128);
                        (pk as i128 - y0) * (x1 - x0) > (y1 - y0) * (k as i128 - x0)
                    }
                    None => pk > last.1,
                }
            } else {
                match bound {
                    Some(bd) => pk >= last.1 + bd * (k - last.0) as i64,
                    None => false,
                }
            };
            if !ok {
                return Err(Error::PrecisionTooLow);
            }
        }
        Ok(())
    }

    fn descend(&mut self, br: &Branch, b: &[Series], fct: &UniPoly, p: i64, q: i64) -> Result<()> {
        let f = &br.field;
        let e = fct.degree().unwrap_or(0) as u64;
        // h(U) = fct((U/q)^q)
        let inner = UniPoly::monomial(f, f.from_rat(&rat(1, q).pow(q as i32)), q as usize);
        let h = fct.compose(&inner);
        let g = factor(&h)?.into_iter().next().ok_or(Error::Internal("empty factorization".into()))?.0;
        let (field, u) = if g.degree() == Some(1) {
            (f.clone(), f.neg(&g.coeff(0)))
        } else {
            let nf = f.adjoin_irreducible(&g, &fresh_name(f), self.cap)?;
            let u = nf.generator();
            (nf, u)
        };
        let m = br.m * q as u64;
        let mut nb = Vec::with_capacity(b.len());
        for (j, s) in b.iter().enumerate() {
            let s = s.lift_to(&field)?.compose_power(q as u64);
            nb.push(s.scale_rat(&rat(1, q).pow(j as i32)));
        }
        let phi = Series::monomial(&field, u.clone(), -p);
        let nb = twist_theta(&field, &nb, &phi);
        let c = field.scale(&u, &rat(1, p));
        let form = br.form.lift_to(&field)?.with_ram(m)?.add(&ExpForm::new(&field, m, [(p as u64, c)])?)?;
        self.explore(Branch {
            field,
            m,
            b: nb,
            form,
            weight: br.weight * e * q as u64,
            bound: Some(p),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::DiffOperator;

    fn leaves(l: &DiffOperator) -> Vec<Leaf> {
        let mut ex = Explorer { width: 32, cap: 16, leaves: Vec::new() };
        ex.run(l.field(), l.theta_coeffs()).unwrap();
        ex.leaves
    }

    #[test]
    fn exponential_of_inverse_x() {
        let l = DiffOperator::from_int_terms(&[&[(0, -1)], &[(2, 1)]]).unwrap();
        let lv = leaves(&l);
        assert_eq!(lv.len(), 1);
        assert_eq!(lv[0].form, ExpForm::from_rats(1, &[(1, rat(1, 1))]).unwrap());
        assert_eq!((lv[0].rank, lv[0].weight), (1, 1));
    }

    #[test]
    fn ramified_leaf() {
        let l = DiffOperator::from_int_terms(&[&[(0, -1)], &[], &[(3, 1)]]).unwrap();
        let lv = leaves(&l);
        assert_eq!(lv.len(), 1);
        assert_eq!(lv[0].form, ExpForm::from_rats(2, &[(1, rat(2, 1))]).unwrap());
        assert_eq!((lv[0].rank, lv[0].weight), (1, 2));
    }

    #[test]
    fn regular_leaf() {
        let l = DiffOperator::from_int_terms(&[&[(0, -5)], &[(1, 1)]]).unwrap();
        let lv = leaves(&l);
        assert_eq!(lv.len(), 1);
        assert!(lv[0].form.is_zero());
    }
}
