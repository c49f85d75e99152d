//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use ltdirac::cli::{run, JobSpec, Mode};
use ltdirac::diffop::newton_polygon;
use ltdirac::dilatation::{coordinate_scale, pull_back_coordinate, transport_coefficient, transported_point};
use ltdirac::exactalg::{minimal_poly, rat, AlgElem, Field, UniPoly};
use ltdirac::invariant::{
    as_invariant, as_invariant_nk, base_change, bracket_values, degree_identity_holds, descend, omega_at, ClosedPoint,
    DiracDivisor, RIndex,
};
use ltdirac::parse::{parse_form, parse_operator};
use ltdirac::turrittin::{lt_decompose, PrecisionPolicy};
use ltdirac::Error;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

type Outcome = Result<String, String>;

const CASE_BUDGET: Duration = Duration::from_secs(5);
const RANDOM_OPERATORS: usize = 60;
const RANDOM_MULTISETS: usize = 500;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    format!("{} ({})", e, e.kind())
}

/// `r = deg_x(ω) + 1` for every irregular component, plus `r = 2`.
fn relevant_r(entry: &Entry) -> Vec<RIndex> {
    let mut out = vec![RIndex::new(2, 1).unwrap()];
    for c in &entry.decompose().components {
        if let Some(d) = c.deg_x() {
            if d > BigRational::from_integer(0.into()) {
                let r = RIndex::from_rational(&(d + BigRational::one())).unwrap();
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn c1_catalog() -> Outcome {
    let cat = catalog();
    let mut worst = Duration::ZERO;
    for e in &cat {
        let t = Instant::now();
        let d = lt_decompose(&e.module(), &PrecisionPolicy::default()).map_err(e2s)?;
        let el = t.elapsed();
        worst = worst.max(el);
        check(el < CASE_BUDGET, || format!("{}: {:?}", e.name, el))?;
        check(d.matches(&e.parts()).map_err(e2s)?, || format!("{}: forms or ranks differ", e.name))?;
        check(d.ram_index == e.expected_m(), || format!("{}: m = {} expected {}", e.name, d.ram_index, e.expected_m()))?;
        check(d.total_rank == e.module().size(), || format!("{}: rank", e.name))?;
    }
    check(cat.len() >= 10, || "catalog too small".into())?;
    Ok(format!("{} modules recovered exactly, slowest {:?} (budget 5s)", cat.len(), worst))
}

/// Irregularity of a catalog piece: `dim · deg_x(ω)` with
/// `dim = rank · m · [F : Q]`.
fn piece_irregularity(p: &Piece) -> BigRational {
    let w = p.form.normalize();
    match w.deg_x() {
        None => BigRational::from_integer(0.into()),
        Some(d) => {
            let dim = p.rank as u64 * w.ram_index() * w.field().absolute_degree() as u64;
            d * BigRational::from_integer(dim.into())
        }
    }
}

fn c2_irregularity() -> Outcome {
    let mut n = 0;
    for e in catalog() {
        let expected = e.pieces.iter().map(piece_irregularity).fold(BigRational::from_integer(0.into()), |a, b| a + b);
        let l = e.module().cyclic_operator().map_err(e2s)?;
        let np = newton_polygon(&l).map_err(e2s)?.irregularity();
        let dec = lt_decompose(&l, &PrecisionPolicy::default()).map_err(e2s)?.irregularity();
        check(np == expected && dec == expected && cloud_irregularity(&l) == expected, || {
            format!("{}: expected {} polygon {} decomposition {}", e.name, expected, np, dec)
        })?;
        n += 1;
    }
    let mut g = rng(2024);
    for _ in 0..RANDOM_OPERATORS {
        let l = random_operator(&mut g);
        let oracle = cloud_irregularity(&l);
        let np = newton_polygon(&l).map_err(e2s)?.irregularity();
        let dec = lt_decompose(&l, &PrecisionPolicy::default()).map_err(|e| format!("{}: {}", l, e2s(e)))?;
        check(np == oracle && dec.irregularity() == oracle, || {
            format!("{}: expected {} polygon {} decomposition {}", l, oracle, np, dec.irregularity())
        })?;
        n += 1;
    }
    Ok(format!("{} operators ({} random), irregularity matches exactly", n, RANDOM_OPERATORS))
}

fn c3_worked_values() -> Outcome {
    let dir = golden_dir();
    for job in GOLDEN_JOBS {
        let mut spec = JobSpec::new(job.operator, Mode::Invariant);
        let mut args = job.args.iter();
        while let (Some(flag), Some(val)) = (args.next(), args.next()) {
            match *flag {
                "--r" => spec.r = Some(val.to_string()),
                "--n" => spec.n = Some(val.parse().unwrap()),
                "--k" => spec.k = Some(val.parse().unwrap()),
                _ => unreachable!(),
            }
        }
        let report = run(&spec).map_err(e2s)?;
        let got: Vec<(String, usize, u64)> = report
            .invariant
            .as_ref()
            .unwrap()
            .divisor
            .iter()
            .map(|d| (d.minpoly.clone(), d.degree, d.multiplicity))
            .collect();
        let want: Vec<(String, usize, u64)> = job.divisor.iter().map(|(p, d, m)| (p.to_string(), *d, *m)).collect();
        check(got == want, || format!("{}: {:?} expected {:?}", job.name, got, want))?;
        let golden = std::fs::read_to_string(dir.join(format!("{}.json", job.name))).map_err(|e| e.to_string())?;
        check(golden == report.to_structured(), || format!("{}: report differs from golden file", job.name))?;
    }
    Ok(format!("{} worked values match the hand derivation and the golden files", GOLDEN_JOBS.len()))
}

fn c4_r_invariance() -> Outcome {
    let mut n = 0;
    for e in catalog() {
        let dec = e.decompose();
        for r in relevant_r(&e).into_iter().chain([RIndex::new(5, 3).unwrap(), RIndex::new(3, 1).unwrap()]) {
            let base = as_invariant_nk(&dec, r.n, r.k).map_err(e2s)?;
            for m in [2, 3] {
                let scaled = as_invariant_nk(&dec, m * r.n, m * r.k).map_err(e2s)?;
                check(scaled == base, || format!("{} at r = {}, m = {}", e.name, r, m))?;
                n += 1;
            }
        }
    }
    Ok(format!("{} comparisons (n, k) vs (mn, mk), m in {{2, 3}}: equal", n))
}

fn c5_small_index() -> Outcome {
    let (mut zero, mut unsupported) = (0, 0);
    for e in catalog() {
        let dec = e.decompose();
        for (n, k) in [(1, 1), (2, 1), (3, 2), (4, 4), (5, 3)] {
            match (as_invariant_nk(&dec, n, k), e.has_regular()) {
                (Ok(d), false) if d.is_zero() => zero += 1,
                (Err(Error::Unsupported(_)), true) => unsupported += 1,
                (other, reg) => return Err(format!("{} at (n,k) = ({},{}) regular={}: {:?}", e.name, n, k, reg, other)),
            }
        }
    }
    Ok(format!("k <= n: {} zero divisors, {} Unsupported (regular part present)", zero, unsupported))
}

/// `Σ_{P'|P} [L(P'):L]·mult(P') = [K(P):K]·mult(P)` by refactoring each
/// minimal polynomial over `L`.
fn degree_identity_oracle(div: &DiracDivisor, over_l: &DiracDivisor, l: &Field) -> Result<bool, String> {
    for (p, m) in div.entries() {
        let lifted = p.minpoly().lift_to(l).map_err(e2s)?;
        let mut total = 0u64;
        for (g, _) in lifted.factor().map_err(e2s)? {
            let cp = ClosedPoint::new(&g).map_err(e2s)?;
            total += g.degree().unwrap() as u64 * over_l.multiplicity(&cp);
        }
        if total != p.degree() as u64 * m {
            return Ok(false);
        }
    }
    Ok(true)
}

fn c6_base_change() -> Outcome {
    let mut n = 0;
    for (label, l) in [("Q(i)", qi()), ("Q(sqrt 2)", quadratic(2, "u"))] {
        for e in catalog().into_iter().filter(|e| e.is_ramified()) {
            let dec = e.decompose();
            let dec_l = base_change(&dec, &l).map_err(e2s)?;
            for r in relevant_r(&e) {
                let div = as_invariant(&dec, &r.value()).map_err(e2s)?;
                let a = base_change(&div, &l).map_err(e2s)?;
                let b = as_invariant(&dec_l, &r.value()).map_err(e2s)?;
                check(a == b, || format!("{} over {} at r = {}: {} vs {}", e.name, label, r, a, b))?;
                check(degree_identity_holds(&div, &a).map_err(e2s)?, || format!("{}: degree identity", e.name))?;
                check(degree_identity_oracle(&div, &a, &l)?, || format!("{}: degree identity oracle", e.name))?;
                n += 1;
            }
        }
    }
    Ok(format!("{} (module, L, r) cases commute; degree identity holds", n))
}

struct Orbits {
    field: Field,
    cache: HashMap<String, (UniPoly, Vec<AlgElem>)>,
}

impl Orbits {
    /// Minimal polynomial over Q of `θ` and its roots in the field.
    fn orbit(&mut self, theta: &AlgElem) -> Result<(UniPoly, Vec<AlgElem>), String> {
        let q = Field::rationals();
        let mu = minimal_poly(theta, &q).map_err(e2s)?;
        let key = mu.to_string();
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let mut roots = Vec::new();
        for (g, _) in mu.lift_to(&self.field).map_err(e2s)?.factor().map_err(e2s)? {
            check(g.degree() == Some(1), || format!("{} does not split", mu))?;
            let f = &self.field;
            roots.push(AlgElem::new(f.clone(), f.neg(&g.coeff(0))));
        }
        self.cache.insert(key, (mu.clone(), roots.clone()));
        Ok((mu, roots))
    }
}

fn c7_descent() -> Outcome {
    let q = Field::rationals();
    let mut fields = Vec::new();
    for (a, b) in [(2, 3), (-1, 2), (5, -3), (-2, -5)] {
        let f1 = quadratic(a, "a");
        let f2 = f1.adjoin(&UniPoly::from_ints(&f1, &[-b, 0, 1]), "b").unwrap();
        fields.push(Orbits { field: f2, cache: HashMap::new() });
    }
    for d in [-1, 2, 7] {
        fields.push(Orbits { field: quadratic(d, "a"), cache: HashMap::new() });
    }
    let mut g = rng(77);
    let mut degrees = [0usize; 5];
    for _ in 0..RANDOM_MULTISETS {
        let idx = g.gen_range(0..fields.len());
        let orb = &mut fields[idx];
        let f = orb.field.clone();
        let basis = f.basis_over(&q).map_err(e2s)?;
        let mut geom: Vec<(AlgElem, u64)> = Vec::new();
        let mut expected: Vec<(ClosedPoint, u64)> = Vec::new();
        for _ in 0..g.gen_range(1..=4) {
            let mut theta = f.zero();
            for b in &basis {
                let c = rat(g.gen_range(-3..=3), g.gen_range(1..=2));
                theta = f.add(&theta, &f.scale(b, &c));
            }
            let theta = AlgElem::new(f.clone(), theta);
            let (mu, roots) = orb.orbit(&theta)?;
            let m = g.gen_range(1..=3u64);
            degrees[mu.degree().unwrap()] += 1;
            geom.extend(roots.into_iter().map(|r| (r, m)));
            expected.push((ClosedPoint::new(&mu).map_err(e2s)?, m));
        }
        let want = DiracDivisor::from_entries(&q, expected).map_err(e2s)?;
        let got = descend(&geom, &q).map_err(|e| format!("descent failed: {}", e2s(e)))?;
        check(got == want, || format!("{} expected {}", got, want))?;
        check(got.geometric_mass() == geom.iter().map(|g| g.1).sum::<u64>(), || "mass".into())?;
    }
    Ok(format!(
        "{} multisets descend integrally (orbits of degree 1/2/4: {}/{}/{})",
        RANDOM_MULTISETS, degrees[1], degrees[2], degrees[4]
    ))
}

fn c8_dilatation() -> Outcome {
    let q = Field::rationals();
    let mut points = 0;
    for g0 in [2, 3, -1] {
        let g0 = AlgElem::from_int(&q, g0);
        for (n, k) in [(1, 2), (2, 3), (1, 3), (2, 5), (3, 5), (3, 4)] {
            let prod = coordinate_scale(&g0, n, k).map_err(e2s)?.try_mul(&transport_coefficient(&AlgElem::from_int(&q, 1), &g0, n, k).map_err(e2s)?).map_err(e2s)?;
            check(prod.as_rational() == Some(rat(1, 1)), || format!("scale * transport = {} at g0 = {}", prod, g0))?;
        }
        for e in catalog() {
            let dec = e.decompose();
            for r in relevant_r(&e) {
                for comp in omega_at(&dec, &(r.value() - BigRational::one())) {
                    for bv in bracket_values(&comp, &r.value(), &q).map_err(e2s)? {
                        let moved = transported_point(&bv.root, &g0, r.n, r.k, &q).map_err(e2s)?;
                        let back = pull_back_coordinate(&moved, &g0, r.n, r.k).map_err(e2s)?;
                        check(back == bv.minpoly, || format!("{}: {} became {}", e.name, bv.minpoly, back))?;
                        points += 1;
                    }
                }
            }
        }
    }
    Ok(format!("inverse laws hold for g0 in {{2, 3, -1}}; {} bracket points unchanged", points))
}

fn c9_cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ltdirac");
    for job in GOLDEN_JOBS {
        let golden = std::fs::read(golden_dir().join(format!("{}.json", job.name))).map_err(|e| e.to_string())?;
        for _ in 0..2 {
            let out = Command::new(bin).args(golden_args(job)).output().map_err(|e| e.to_string())?;
            check(out.status.success(), || format!("{}: exit {:?}", job.name, out.status.code()))?;
            check(out.stdout == golden, || format!("{}: output differs from golden file", job.name))?;
        }
    }
    let q = Field::rationals();
    let mut corpus: Vec<String> = OPERATOR_CORPUS.iter().map(|s| s.to_string()).collect();
    let mut g = rng(9);
    corpus.extend((0..40).map(|_| random_operator(&mut g).render()));
    for s in &corpus {
        let l = parse_operator(s, &q).map_err(e2s)?;
        let again = parse_operator(&l.render(), &q).map_err(e2s)?;
        check(again == l, || format!("{} reparsed as {}", s, again))?;
    }
    let mut forms = 0;
    for e in catalog() {
        for c in e.decompose().components {
            let w = c.form.normalize();
            let back = parse_form(&w.render(), w.field()).map_err(e2s)?;
            check(back == w, || format!("form {} reparsed as {}", w.render(), back.render()))?;
            forms += 1;
        }
    }
    Ok(format!(
        "{} golden outputs byte-identical over 2 runs; {} operators and {} forms round-trip",
        GOLDEN_JOBS.len(),
        corpus.len(),
        forms
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("catalog round-trip", c1_catalog),
        ("irregularity oracle", c2_irregularity),
        ("worked values", c3_worked_values),
        ("r-invariance", c4_r_invariance),
        ("k <= n regime", c5_small_index),
        ("base change", c6_base_change),
        ("descent integrality", c7_descent),
        ("dilatation laws", c8_dilatation),
        ("cli golden files", c9_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("PASS {} {:<20} {} [{:.2?}]", i + 1, name, msg, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {:<20} {} [{:.2?}]", i + 1, name, msg, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
