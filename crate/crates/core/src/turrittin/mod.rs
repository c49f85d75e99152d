//! Levelt–Turrittin decomposition: exponential forms `ω` with the ranks of
//! their regular parts, grouped into orbits under coefficient conjugation and
//! `t ↦ ζ t`.

pub(crate) mod orbit;
pub(crate) mod theta;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diffop::{newton_polygon, ConnectionMatrix, DiffOperator};
use crate::error::{Error, Result};
use crate::exactalg::{AlgElem, Field, DEFAULT_DEGREE_CAP};
use crate::puiseux::ExpForm;
use orbit::{orbit_data, OrbitData};
use theta::{Explorer, Leaf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LTComponent {
    pub form: ExpForm,
    pub rank: usize,
    pub orbit_size: usize,
}

impl LTComponent {
    pub fn deg_x(&self) -> Option<BigRational> {
        self.form.deg_x()
    }

    pub(crate) fn orbit(&self, k: &Field) -> Result<OrbitData> {
        orbit_data(&self.form, k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LTDecomposition {
    pub base_field: Field,
    pub components: Vec<LTComponent>,
    pub ram_index: u64,
    pub total_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PrecisionPolicy {
    /// Working precision in units of `x`, relative to the lowest valuation;
    /// derived from the operator when absent.
    pub initial: Option<i64>,
    pub max_doublings: u32,
    pub degree_cap: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { initial: None, max_doublings: 2, degree_cap: DEFAULT_DEGREE_CAP }
    }
}

pub enum ModuleInput<'a> {
    Operator(&'a DiffOperator),
    Matrix(&'a ConnectionMatrix),
}

impl<'a> From<&'a DiffOperator> for ModuleInput<'a> {
    fn from(l: &'a DiffOperator) -> Self {
        ModuleInput::Operator(l)
    }
}

impl<'a> From<&'a ConnectionMatrix> for ModuleInput<'a> {
    fn from(m: &'a ConnectionMatrix) -> Self {
        ModuleInput::Matrix(m)
    }
}

pub fn lt_decompose<'a>(input: impl Into<ModuleInput<'a>>, policy: &PrecisionPolicy) -> Result<LTDecomposition> {
    match input.into() {
        ModuleInput::Operator(l) => {
            let leaves = operator_leaves(l, policy)?;
            assemble(l.field(), leaves, l.order())
        }
        ModuleInput::Matrix(m) => {
            let m = if m.ram() > 1 { m.pushforward()? } else { m.clone() };
            if m.size() == 0 {
                return Err(Error::Invalid("empty connection matrix".into()));
            }
            let mut leaves = Vec::new();
            for block in m.blocks() {
                let l = m.sub_block(&block).cyclic_operator()?;
                leaves.extend(operator_leaves(&l, policy)?);
            }
            assemble(m.field(), leaves, m.size())
        }
    }
}

fn operator_leaves(l: &DiffOperator, policy: &PrecisionPolicy) -> Result<Vec<Leaf>> {
    let d = l.order();
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut width = match policy.initial {
        Some(w) => w.max(1),
        None => {
            let irr = newton_polygon(l).map(|np| np.irregularity()).unwrap_or_else(|_| BigRational::zero());
            // 4·d·(1 + numerator of the irregularity)
            let num = irr.numer().to_i64().unwrap_or(0);
            4 * d as i64 * (1 + num)
        }
    };
    let b = l.theta_coeffs();
    let mut doublings = 0;
    loop {
        let mut ex = Explorer { width, cap: policy.degree_cap, leaves: Vec::new() };
        match ex.run(l.field(), b.clone()) {
            Ok(()) => {
                let total: u64 = ex.leaves.iter().map(|lf| lf.weight * lf.rank as u64).sum();
                if total != d as u64 {
                    return Err(Error::Internal(format!("decomposition accounts for rank {} of {}", total, d)));
                }
                return Ok(ex.leaves);
            }
            Err(Error::PrecisionTooLow) if doublings < policy.max_doublings => {
                doublings += 1;
                width *= 2;
            }
            Err(Error::PrecisionTooLow) => {
                return Err(Error::PrecisionExhausted { precision: width, doublings });
            }
            Err(e) => return Err(e),
        }
    }
}

/// Canonical ordering of forms: field size, then terms from the highest pole.
pub(crate) fn form_cmp(a: &ExpForm, b: &ExpForm) -> Ordering {
    let (na, nb) = (a.normalize(), b.normalize());
    na.field()
        .absolute_degree()
        .cmp(&nb.field().absolute_degree())
        .then_with(|| na.ram_index().cmp(&nb.ram_index()))
        .then_with(|| na.key().cmp(&nb.key()))
}

fn representative(members: &[ExpForm]) -> ExpForm {
    let mut cands: Vec<ExpForm> = Vec::new();
    for w in members {
        let w = w.normalize();
        if w.ram_index() % 2 == 0 {
            let minus = AlgElem::from_int(&Field::rationals(), -1);
            if let Ok(r) = w.subst_zeta(&minus) {
                cands.push(r);
            }
        }
        cands.push(w);
    }
    cands.into_iter().min_by(form_cmp).expect("nonempty orbit")
}

fn assemble(k: &Field, leaves: Vec<Leaf>, total_rank: usize) -> Result<LTDecomposition> {
    struct Group {
        data: OrbitData,
        members: Vec<ExpForm>,
        mass: u64,
    }
    let mut groups: Vec<Group> = Vec::new();
    for lf in leaves {
        let data = orbit_data(&lf.form, k)?;
        let mass = lf.weight * lf.rank as u64;
        match groups.iter_mut().find(|g| g.data == data) {
            Some(g) => {
                g.members.push(lf.form);
                g.mass += mass;
            }
            None => groups.push(Group { data, members: vec![lf.form], mass }),
        }
    }
    let mut components = Vec::new();
    for g in groups {
        let size = g.data.size as u64;
        if g.mass % size != 0 {
            return Err(Error::Internal("orbit mass not divisible by orbit size".into()));
        }
        components.push(LTComponent {
            form: representative(&g.members),
            rank: (g.mass / size) as usize,
            orbit_size: g.data.size,
        });
    }
    components.sort_by(|a, b| {
        let da = a.deg_x().unwrap_or_else(BigRational::zero);
        let db = b.deg_x().unwrap_or_else(BigRational::zero);
        da.cmp(&db).then_with(|| form_cmp(&a.form, &b.form))
    });
    let ram_index = components.iter().fold(1u64, |acc, c| acc.lcm(&c.form.normalize().ram_index()));
    Ok(LTDecomposition { base_field: k.clone(), components, ram_index, total_rank })
}

impl LTDecomposition {
    pub fn ramification_index(&self) -> u64 {
        self.ram_index
    }

    /// `Σ orbit_size · rank · deg_x(ω)`.
    pub fn irregularity(&self) -> BigRational {
        self.components.iter().fold(BigRational::zero(), |acc, c| match c.deg_x() {
            Some(d) => acc + d * BigRational::from_integer(BigInt::from((c.orbit_size * c.rank) as u64)),
            None => acc,
        })
    }

    /// Rank of the regular summand (zero when absent).
    pub fn regular_rank(&self) -> usize {
        self.components.iter().filter(|c| c.form.is_zero()).map(|c| c.rank).sum()
    }

    /// Component whose orbit contains `w`.
    pub fn component_of(&self, w: &ExpForm) -> Result<Option<&LTComponent>> {
        let target = orbit_data(w, &self.base_field)?;
        for c in &self.components {
            if c.orbit(&self.base_field)? == target {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Same orbits with the same ranks, regardless of representatives.
    pub fn equivalent(&self, other: &LTDecomposition) -> Result<bool> {
        if self.base_field != other.base_field
            || self.components.len() != other.components.len()
            || self.ram_index != other.ram_index
            || self.total_rank != other.total_rank
        {
            return Ok(false);
        }
        for c in &self.components {
            match other.component_of(&c.form)? {
                Some(o) if o.rank == c.rank && o.orbit_size == c.orbit_size => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Expects the multiset of `(form, rank)` orbits given by `parts`.
    pub fn matches(&self, parts: &[(ExpForm, usize)]) -> Result<bool> {
        let mut seen: Vec<(OrbitData, usize)> = Vec::new();
        for (w, n) in parts {
            let d = orbit_data(w, &self.base_field)?;
            match seen.iter_mut().find(|(e, _)| *e == d) {
                Some(entry) => entry.1 += n,
                None => seen.push((d, *n)),
            }
        }
        if seen.len() != self.components.len() {
            return Ok(false);
        }
        for c in &self.components {
            let d = c.orbit(&self.base_field)?;
            if !seen.iter().any(|(e, n)| *e == d && *n == c.rank) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn ramification_index(dec: &LTDecomposition) -> u64 {
    dec.ramification_index()
}

pub fn irregularity(dec: &LTDecomposition) -> BigRational {
    dec.irregularity()
}
