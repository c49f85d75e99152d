//! Connection matrices `∇ = d + A dt` over `K((t))`, `t^ram = x`.
//!
//! Rows index the basis: `∇ e_i = Σ_j A_ij e_j ⊗ dt`. Horizontal sections
//! `f = Σ f_i e_i` therefore satisfy `f' = -Aᵀ f`, and the rank-one module
//! with matrix `dω/dt` has horizontal section `e^{-ω}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::operator::DiffOperator;
use super::series::Series;
use crate::exactalg::{Elem, Field};
use crate::error::{Error, Result};
use crate::puiseux::ExpForm;

#[derive(Clone, PartialEq, Eq)]
pub struct ConnectionMatrix {
    field: Field,
    ram: u64,
    entries: Vec<Vec<Series>>,
}

impl ConnectionMatrix {
    pub fn new(field: &Field, ram: u64, entries: Vec<Vec<Series>>) -> Result<ConnectionMatrix> {
        let n = entries.len();
        if ram == 0 {
            return Err(Error::Invalid("ramification index must be positive".into()));
        }
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid("connection matrix must be square".into()));
        }
        if entries.iter().flatten().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(ConnectionMatrix { field: field.clone(), ram, entries })
    }

    pub fn zero(field: &Field, n: usize) -> ConnectionMatrix {
        ConnectionMatrix { field: field.clone(), ram: 1, entries: vec![vec![Series::zero(field); n]; n] }
    }

    /// Rank-one module `d + a`.
    pub fn rank_one(a: Series) -> ConnectionMatrix {
        let f = a.field().clone();
        ConnectionMatrix { field: f, ram: 1, entries: vec![vec![a]] }
    }

    /// Regular singular module with matrix `N / x` for a constant matrix `N`.
    pub fn from_residue(field: &Field, residue: &[Vec<Elem>]) -> Result<ConnectionMatrix> {
        let entries = residue
            .iter()
            .map(|row| row.iter().map(|c| Series::monomial(field, c.clone(), -1)).collect())
            .collect();
        ConnectionMatrix::new(field, 1, entries)
    }

    /// Regular module of rank `n` whose residue is a single nilpotent Jordan
    /// block plus `exponent` on the diagonal.
    pub fn regular_jordan(field: &Field, n: usize, exponent: &BigRational) -> ConnectionMatrix {
        let mut res = vec![vec![field.zero(); n]; n];
        for (i, row) in res.iter_mut().enumerate() {
            row[i] = field.from_rat(exponent);
            if i + 1 < n {
                row[i + 1] = field.one();
            }
        }
        ConnectionMatrix::from_residue(field, &res).expect("square residue")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ram(&self) -> u64 {
        self.ram
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Series>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Series {
        &self.entries[i][j]
    }

    /// Least absolute precision among the entries (`None` when exact).
    pub fn precision(&self) -> Option<i64> {
        self.entries.iter().flatten().filter_map(|e| e.prec()).min()
    }

    pub fn truncate(&self, prec: i64) -> ConnectionMatrix {
        let entries = self.entries.iter().map(|row| row.iter().map(|e| e.truncate(prec)).collect()).collect();
        ConnectionMatrix { entries, ..self.clone() }
    }

    pub fn lift_to(&self, target: &Field) -> Result<ConnectionMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.lift_to(target)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ConnectionMatrix::new(target, self.ram, entries)
    }

    /// Pullback along `t = s^n`: `A(t) dt ↦ A(s^n) n s^{n-1} ds`.
    pub fn ramify(&self, n: u64) -> ConnectionMatrix {
        if n == 1 {
            return self.clone();
        }
        let f = &self.field;
        let jac = Series::monomial(f, f.from_int(n as i64), n as i64 - 1);
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.compose_power(n).mul(&jac)).collect())
            .collect();
        ConnectionMatrix { field: f.clone(), ram: self.ram * n, entries }
    }

    /// Tensor product with `ℰ^ω`: `A ↦ A + (dω/dt) Id`.
    pub fn twist(&self, w: &ExpForm) -> Result<ConnectionMatrix> {
        let target = if self.field.contains_subfield(w.field()) {
            self.field.clone()
        } else if w.field().contains_subfield(&self.field) {
            w.field().clone()
        } else {
            return Err(Error::FieldMismatch);
        };
        let w = w.lift_to(&target)?;
        let dw = w.derivative_in(self.ram)?;
        let dser = Series::from_terms(&target, &dw);
        let mut m = self.lift_to(&target)?;
        for i in 0..m.size() {
            m.entries[i][i] = m.entries[i][i].add(&dser);
        }
        Ok(m)
    }

    pub fn direct_sum(parts: &[ConnectionMatrix]) -> Result<ConnectionMatrix> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        let f = first.field.clone();
        let ram = first.ram;
        if parts.iter().any(|p| p.field != f || p.ram != ram) {
            return Err(Error::FieldMismatch);
        }
        let n: usize = parts.iter().map(|p| p.size()).sum();
        let mut entries = vec![vec![Series::zero(&f); n]; n];
        let mut off = 0;
        for p in parts {
            for i in 0..p.size() {
                for j in 0..p.size() {
                    entries[off + i][off + j] = p.entries[i][j].clone();
                }
            }
            off += p.size();
        }
        Ok(ConnectionMatrix { field: f, ram, entries })
    }

    /// Direct image along `x = t^ram`: the same module viewed over `K((x))`,
    /// of rank `ram · size`, in the basis `t^k e_i` (index `i·ram + k`).
    pub fn pushforward(&self) -> Result<ConnectionMatrix> {
        let m = self.ram as i64;
        if m == 1 {
            return Ok(self.clone());
        }
        let f = &self.field;
        let n = self.size();
        let big = n * m as usize;
        let mut terms: Vec<Vec<Vec<(i64, Elem)>>> = vec![vec![Vec::new(); big]; big];
        let mut precs: Vec<Vec<Option<i64>>> = vec![vec![None; big]; big];
        let inv_m = BigRational::new(BigInt::from(1), BigInt::from(m));
        let place = |row: usize, i_to: usize, a: i64, c: Elem, terms: &mut Vec<Vec<Vec<(i64, Elem)>>>| {
            let r = a.rem_euclid(m);
            let e = (a - r) / m;
            terms[row][i_to * m as usize + r as usize].push((e, c));
        };
        for i in 0..n {
            for k in 0..m {
                let row = i * m as usize + k as usize;
                // d/dx = (1/m) t^{1-m} d/dt
                if k > 0 {
                    let c = f.scale(&f.from_int(k), &inv_m);
                    place(row, i, k - 1 + 1 - m, c, &mut terms);
                }
                for j in 0..n {
                    let e = &self.entries[i][j];
                    for (ex, c) in e.terms() {
                        place(row, j, k + ex + 1 - m, f.scale(c, &inv_m), &mut terms);
                    }
                    if let Some(p) = e.prec() {
                        for r in 0..m {
                            let lo = p + k + 1 - m - r;
                            let bound = lo.div_euclid(m) + if lo.rem_euclid(m) == 0 { 0 } else { 1 };
                            let slot = &mut precs[row][j * m as usize + r as usize];
                            *slot = Some(slot.map_or(bound, |b: i64| b.min(bound)));
                        }
                    }
                }
            }
        }
        let entries = terms
            .into_iter()
            .zip(precs)
            .map(|(row, prow)| {
                row.into_iter()
                    .zip(prow)
                    .map(|(ts, p)| {
                        let s = Series::from_terms(f, &ts);
                        match p {
                            Some(p) => s.truncate(p),
                            None => s,
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ConnectionMatrix { field: f.clone(), ram: 1, entries })
    }

    /// Restriction of scalars to a subfield `k` of the coefficient tower:
    /// basis `b_l e_i` (index `i·deg + l`) for the power basis `b_l` of the
    /// coefficient field over `k`.
    pub fn restrict_scalars(&self, k: &Field) -> Result<ConnectionMatrix> {
        let f = &self.field;
        let deg = f.degree_over(k)?;
        if deg == 1 {
            let entries = self
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.map_coeffs(k, |c| Ok(f.coords_over(c, k)?[0].clone())))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            return ConnectionMatrix::new(k, self.ram, entries);
        }
        let basis = f.basis_over(k)?;
        let n = self.size();
        let big = n * deg;
        let mut entries = vec![vec![Series::zero(k); big]; big];
        for i in 0..n {
            for (l, b) in basis.iter().enumerate() {
                for j in 0..n {
                    let e = &self.entries[i][j];
                    let prods: Vec<(i64, Vec<Elem>)> = e
                        .terms()
                        .map(|(ex, c)| Ok((ex, f.coords_over(&f.mul(b, c), k)?)))
                        .collect::<Result<Vec<_>>>()?;
                    for l2 in 0..deg {
                        let ts: Vec<(i64, Elem)> = prods.iter().map(|(ex, cs)| (*ex, cs[l2].clone())).collect();
                        let mut s = Series::from_terms(k, &ts);
                        if let Some(p) = e.prec() {
                            s = s.truncate(p);
                        }
                        entries[i * deg + l][j * deg + l2] = s;
                    }
                }
            }
        }
        ConnectionMatrix::new(k, self.ram, entries)
    }

    /// The `K((x))`-module `ℰ^ω ⊗ R` for a regular module `R` over `K((x))`:
    /// ramify to the variable of `ω`, twist, push forward to `x`, then
    /// restrict scalars from the field of `ω` down to that of `R`.
    pub fn exp_regular(w: &ExpForm, regular: &ConnectionMatrix) -> Result<ConnectionMatrix> {
        if regular.ram != 1 {
            return Err(Error::RamificationMismatch);
        }
        let w = w.normalize();
        let k = regular.field.clone();
        let m = regular.ramify(w.ram_index()).twist(&w)?.pushforward()?;
        if *m.field() == k {
            Ok(m)
        } else {
            m.restrict_scalars(&k)
        }
    }

    /// Connection matrix whose horizontal sections are the vectors
    /// `(y, y', …, y^{(d-1)})` of solutions of `L`, with entries truncated to
    /// absolute precision `precision`.
    pub fn companion(l: &DiffOperator, precision: i64) -> Result<ConnectionMatrix> {
        let f = l.field();
        let d = l.order();
        if d == 0 {
            return Err(Error::Invalid("operator of order zero has no companion".into()));
        }
        let ad = l.coeff(d);
        let vd = ad.valuation().ok_or(Error::PrecisionTooLow)?;
        let mut entries = vec![vec![Series::zero(f); d]; d];
        for j in 0..d - 1 {
            entries[j + 1][j] = Series::constant(f, f.from_int(-1));
        }
        for i in 0..d {
            let ai = l.coeff(i);
            let Some(vi) = ai.valuation() else {
                if ai.is_exact_zero() {
                    continue;
                }
                return Err(Error::PrecisionTooLow);
            };
            if precision <= vi - vd {
                return Err(Error::PrecisionTooLow);
            }
            let rel = precision - (vi - vd);
            let q = ai.div(&ad, rel)?.truncate(precision);
            entries[i][d - 1] = entries[i][d - 1].add(&q);
        }
        ConnectionMatrix::new(f, 1, entries)
    }

    /// Index sets of the diagonal blocks induced by exactly-zero entries.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for i in 0..n {
            for j in 0..n {
                if !self.entries[i][j].is_exact_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            match roots.iter().position(|&x| x == r) {
                Some(k) => groups[k].push(i),
                None => {
                    roots.push(r);
                    groups.push(vec![i]);
                }
            }
        }
        groups
    }

    pub fn sub_block(&self, idx: &[usize]) -> ConnectionMatrix {
        let entries = idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        ConnectionMatrix { entries, ..self.clone() }
    }

    /// A scalar operator in the matrix variable whose solutions are `u·f` for
    /// the horizontal sections `f`, found by trying cyclic vectors `u`.
    pub fn cyclic_operator(&self) -> Result<DiffOperator> {
        let f = &self.field;
        let n = self.size();
        let mut saw_precision_failure = false;
        for u0 in self.cyclic_candidates() {
            let mut us = vec![u0];
            for _ in 0..n {
                let prev = us.last().unwrap();
                let mut next = Vec::with_capacity(n);
                for i in 0..n {
                    let mut acc = prev[i].derivative();
                    for j in 0..n {
                        acc = acc.sub(&self.entries[i][j].mul(&prev[j]));
                    }
                    next.push(acc);
                }
                us.push(next);
            }
            let lambdas = maximal_minors(f, &us);
            let top = &lambdas[n];
            if top.valuation().is_none() {
                if !top.is_exact_zero() {
                    saw_precision_failure = true;
                }
                continue;
            }
            if lambdas.iter().any(|l| l.valuation().is_none() && !l.is_exact_zero()) {
                saw_precision_failure = true;
                continue;
            }
            return DiffOperator::new(f, lambdas);
        }
        if saw_precision_failure {
            Err(Error::PrecisionTooLow)
        } else {
            Err(Error::Internal("no cyclic vector among the candidates".into()))
        }
    }

    fn cyclic_candidates(&self) -> Vec<Vec<Series>> {
        let f = &self.field;
        let n = self.size();
        let mut out = Vec::new();
        for i in 0..n {
            let mut v = vec![Series::zero(f); n];
            v[i] = Series::one(f);
            out.push(v);
        }
        // (1, t^s, t^{2s}, …) and (1, 2, 3, …)
        for s in [1i64, -1, 2, -2, 3] {
            out.push((0..n).map(|i| Series::monomial(f, f.one(), s * i as i64)).collect());
        }
        out.push((0..n).map(|i| Series::constant(f, f.from_int(i as i64 + 1))).collect());
        for s in 1..=3i64 {
            out.push(
                (0..n)
                    .map(|i| {
                        Series::monomial(f, f.one(), 0).add(&Series::monomial(f, f.from_int(i as i64 + 1), s * i as i64 + 1))
                    })
                    .collect(),
            );
        }
        out
    }

    pub fn render(&self) -> String {
        let var = if self.ram == 1 { "x" } else { "t" };
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|e| e.render(var)).collect::<Vec<_>>().join(", ")))
            .collect();
        rows.join("\n")
    }
}

impl fmt::Debug for ConnectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConnectionMatrix(ram={}, {})", self.ram, self.render())
    }
}

/// Signed maximal minors `λ_k = (-1)^k det(W without column k)` of the
/// `n × (n+1)` matrix whose columns are `cols`, so that `Σ λ_k cols[k] = 0`.
fn maximal_minors(f: &Field, cols: &[Vec<Series>]) -> Vec<Series> {
    let c = cols.len();
    let n = c - 1;
    let full = (1usize << c) - 1;
    let mut dp: Vec<Option<Series>> = vec![None; 1 << c];
    dp[0] = Some(Series::one(f));
    for mask in 1..=full {
        let r = mask.count_ones() as usize;
        if r > n {
            continue;
        }
        let row = r - 1;
        let mut acc = Series::zero(f);
        for j in 0..c {
            if mask & (1 << j) == 0 {
                continue;
            }
            let rest = mask & !(1 << j);
            let minor = dp[rest].as_ref().unwrap();
            let entry = &cols[j][row];
            if entry.is_exact_zero() || minor.is_exact_zero() {
                continue;
            }
            let greater = (mask >> (j + 1)).count_ones();
            let term = entry.mul(minor);
            acc = if greater % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        dp[mask] = Some(acc);
    }
    (0..c)
        .map(|k| {
            let m = dp[full & !(1 << k)].clone().unwrap();
            if k % 2 == 0 {
                m
            } else {
                m.neg()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn ramify_rank_one() {
        let f = q();
        let m = ConnectionMatrix::rank_one(Series::monomial(&f, f.from_int(-1), -2));
        let r = m.ramify(2);
        assert_eq!(r.entry(0, 0), &Series::monomial(&f, f.from_int(-2), -3));
        assert_eq!(m.ramify(1), m);
        let z = ConnectionMatrix::zero(&f, 2).ramify(3);
        assert!(z.entries().iter().flatten().all(|e| e.is_exact_zero()));
    }

    #[test]
    fn twist_by_pole() {
        let f = q();
        let m = ConnectionMatrix::zero(&f, 1);
        let w = ExpForm::from_rats(1, &[(1, rat(1, 1))]).unwrap();
        let t = m.twist(&w).unwrap();
        assert_eq!(t.entry(0, 0), &Series::monomial(&f, f.from_int(-1), -2));
        assert_eq!(t.twist(&w.neg()).unwrap(), m);
        assert_eq!(m.twist(&ExpForm::zero(&f)).unwrap(), m);
        let ramified = ExpForm::from_rats(2, &[(1, rat(1, 1))]).unwrap();
        assert_eq!(m.twist(&ramified).unwrap_err(), Error::RamificationMismatch);
    }

    #[test]
    fn companion_matrices() {
        let f = q();
        let d = DiffOperator::derivation(&f);
        let c = ConnectionMatrix::companion(&d, 4).unwrap();
        assert!(c.entry(0, 0).is_zero());
        let l = DiffOperator::from_int_terms(&[&[(0, -1)], &[(2, 1)]]).unwrap();
        let c = ConnectionMatrix::companion(&l, 4).unwrap();
        // horizontal sections of d + A solve f' = -A f = f / x^2
        assert_eq!(c.entry(0, 0), &Series::new(&f, -2, vec![f.from_int(-1)], Some(4)));
        assert_eq!(ConnectionMatrix::companion(&l, -2).unwrap_err(), Error::PrecisionTooLow);
    }

    #[test]
    fn cyclic_operator_of_companion_recovers_order() {
        let l = DiffOperator::from_int_terms(&[&[(0, -1)], &[], &[(3, 1)]]).unwrap();
        let c = ConnectionMatrix::companion(&l, 10).unwrap();
        let op = c.cyclic_operator().unwrap();
        assert_eq!(op.order(), 2);
        let s = super::super::newton::slopes(&op).unwrap();
        assert_eq!(s, vec![(rat(1, 2), 2)]);
    }

    #[test]
    fn pushforward_keeps_trace_of_rank() {
        let f = q();
        let m = ConnectionMatrix::rank_one(Series::zero(&f)).ramify(2);
        let w = ExpForm::from_rats(2, &[(1, rat(1, 1))]).unwrap();
        let p = m.twist(&w).unwrap().pushforward().unwrap();
        assert_eq!(p.size(), 2);
        assert_eq!(p.ram(), 1);
    }

    #[test]
    fn block_structure() {
        let f = q();
        let a = ConnectionMatrix::regular_jordan(&f, 2, &rat(0, 1));
        let b = ConnectionMatrix::rank_one(Series::monomial(&f, f.one(), -2));
        let s = ConnectionMatrix::direct_sum(&[a, b]).unwrap();
        assert_eq!(s.blocks(), vec![vec![0, 1], vec![2]]);
    }
}
