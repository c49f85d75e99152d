#![allow(dead_code)]

use ltdirac::diffop::{ConnectionMatrix, DiffOperator};
use ltdirac::exactalg::{rat, Field, UniPoly};
use ltdirac::puiseux::ExpForm;
use ltdirac::turrittin::{lt_decompose, LTDecomposition, PrecisionPolicy};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q() -> Field {
    Field::rationals()
}

pub fn quadratic(d: i64, name: &str) -> Field {
    let q = q();
    q.adjoin(&UniPoly::from_ints(&q, &[-d, 0, 1]), name).unwrap()
}

pub fn qi() -> Field {
    quadratic(-1, "i")
}

pub fn form(m: u64, terms: &[(u64, i64, i64)]) -> ExpForm {
    let ts: Vec<(u64, BigRational)> = terms.iter().map(|&(j, a, b)| (j, rat(a, b))).collect();
    ExpForm::from_rats(m, &ts).unwrap()
}

/// One summand `E^ω ⊗ R` with `R` regular of the given rank and exponent.
pub struct Piece {
    pub form: ExpForm,
    pub rank: usize,
    pub exponent: BigRational,
    /// Copies of the geometric orbit after restriction of scalars to Q: 2
    /// when conjugating the coefficient field agrees with `t -> -t`.
    pub copies: usize,
}

pub struct Entry {
    pub name: &'static str,
    pub pieces: Vec<Piece>,
}

impl Entry {
    pub fn module(&self) -> ConnectionMatrix {
        let k = q();
        let mats: Vec<ConnectionMatrix> = self
            .pieces
            .iter()
            .map(|p| {
                let reg = ConnectionMatrix::regular_jordan(&k, p.rank, &p.exponent);
                if p.form.is_zero() {
                    reg
                } else {
                    ConnectionMatrix::exp_regular(&p.form, &reg).unwrap()
                }
            })
            .collect();
        ConnectionMatrix::direct_sum(&mats).unwrap()
    }

    pub fn parts(&self) -> Vec<(ExpForm, usize)> {
        self.pieces.iter().map(|p| (p.form.clone(), p.rank * p.copies)).collect()
    }

    pub fn has_regular(&self) -> bool {
        self.pieces.iter().any(|p| p.form.is_zero())
    }

    pub fn is_ramified(&self) -> bool {
        self.pieces.iter().any(|p| p.form.normalize().ram_index() > 1)
    }

    /// Expected ramification index: lcm of the normalized denominators.
    pub fn expected_m(&self) -> u64 {
        use num_integer::Integer;
        self.pieces.iter().fold(1u64, |acc, p| acc.lcm(&p.form.normalize().ram_index()))
    }

    pub fn decompose(&self) -> LTDecomposition {
        lt_decompose(&self.module(), &PrecisionPolicy::default()).unwrap()
    }
}

fn piece(form: ExpForm, rank: usize, exponent: (i64, i64)) -> Piece {
    Piece { form, rank, exponent: rat(exponent.0, exponent.1), copies: 1 }
}

fn doubled(form: ExpForm) -> Piece {
    Piece { form, rank: 1, exponent: rat(0, 1), copies: 2 }
}

/// The round-trip catalog.
pub fn catalog() -> Vec<Entry> {
    let k = q();
    let i = qi();
    let s2 = quadratic(2, "s");
    vec![
        Entry { name: "1/x", pieces: vec![piece(form(1, &[(1, 1, 1)]), 1, (0, 1))] },
        Entry { name: "-1/x rank 2", pieces: vec![piece(form(1, &[(1, -1, 1)]), 2, (1, 3))] },
        Entry { name: "3/x^2", pieces: vec![piece(form(1, &[(2, 3, 1)]), 1, (0, 1))] },
        Entry { name: "1/t m=2", pieces: vec![piece(form(2, &[(1, 1, 1)]), 1, (0, 1))] },
        Entry { name: "2/t^3 m=2", pieces: vec![piece(form(2, &[(3, 2, 1)]), 1, (0, 1))] },
        Entry {
            name: "2/t^3 + 5/t m=2 with regular part",
            pieces: vec![piece(form(2, &[(3, 2, 1), (1, 5, 1)]), 1, (0, 1)), piece(ExpForm::zero(&k), 1, (1, 2))],
        },
        Entry {
            name: "1/x + -1/x",
            pieces: vec![piece(form(1, &[(1, 1, 1)]), 1, (0, 1)), piece(form(1, &[(1, -1, 1)]), 1, (1, 4))],
        },
        Entry { name: "1/t^2 m=3", pieces: vec![piece(form(3, &[(2, 1, 1)]), 1, (0, 1))] },
        Entry { name: "i/x over Q", pieces: vec![piece(ExpForm::new(&i, 1, [(1, i.generator())]).unwrap(), 1, (0, 1))] },
        Entry {
            name: "1/x^2 + 1/(2x) and 1/x^2",
            pieces: vec![piece(form(1, &[(2, 1, 1), (1, 1, 2)]), 1, (0, 1)), piece(form(1, &[(2, 1, 1)]), 1, (0, 1))],
        },
        Entry {
            name: "2i/t m=2",
            pieces: vec![doubled(ExpForm::new(&i, 2, [(1, i.mul(&i.from_int(2), &i.generator()))]).unwrap())],
        },
        Entry { name: "sqrt2/t m=2", pieces: vec![doubled(ExpForm::new(&s2, 2, [(1, s2.generator())]).unwrap())] },
        Entry {
            name: "1/x rank 2 with regular rank 2",
            pieces: vec![piece(form(1, &[(1, 1, 1)]), 2, (0, 1)), piece(ExpForm::zero(&k), 2, (1, 3))],
        },
        Entry { name: "regular rank 2", pieces: vec![piece(ExpForm::zero(&k), 2, (-1, 2))] },
    ]
}

/// Operators whose decomposition is worked out directly.
pub const OPERATOR_CORPUS: &[&str] = &[
    "x*D - 5",
    "x^2*D - 1",
    "x^3*D^2 - 1",
    "x^3*D - 2",
    "x^3*D^2 + 1",
    "x^3*D^2 - 2",
    "x^4*D^2 + x*D - 1",
    "x^5*D^3 + x^2*D + 1",
    "-3*x*D + 5 + 2*x^-1",
    "1/2*x^2*D^2 - (x + 1)^2",
    "x^3*D^2 + x^2*D - 2",
    "D*x - x^-1",
];

/// Random operator of order `1..=3` with polynomial coefficients of degree
/// at most 6 and small rational coefficients.
pub fn random_operator(rng: &mut ChaCha8Rng) -> DiffOperator {
    let d = rng.gen_range(1..=3);
    let mut cs: Vec<Vec<(i64, BigRational)>> = Vec::new();
    for i in 0..=d {
        let mut ts = Vec::new();
        for e in 0..=6 {
            if rng.gen_bool(0.3) {
                let c: i64 = rng.gen_range(-4..=4);
                if c != 0 {
                    ts.push((e, rat(c, rng.gen_range(1..=3))));
                }
            }
        }
        if i == d && ts.is_empty() {
            ts.push((rng.gen_range(0..=6), rat(1, 1)));
        }
        cs.push(ts);
    }
    DiffOperator::from_terms(&q(), &cs).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Irregularity read off the point cloud `(i, v(a_i) - i)` without building
/// a hull: the positive-slope part of the lower hull climbs from the lowest
/// point to the point of the top coefficient.
pub fn cloud_irregularity(l: &DiffOperator) -> BigRational {
    let pts: Vec<(usize, i64)> = (0..=l.order())
        .filter_map(|i| l.coeff(i).valuation().map(|v| (i, v - i as i64)))
        .collect();
    let vmin = pts.iter().map(|p| p.1).min().unwrap();
    let top = pts.iter().find(|p| p.0 == l.order()).unwrap().1;
    BigRational::from_integer(BigInt::from(top - vmin))
}

/// Jobs whose structured reports are kept under `tests/golden/`.
pub struct GoldenJob {
    pub name: &'static str,
    pub operator: &'static str,
    pub args: &'static [&'static str],
    /// Expected divisor as `(minpoly, degree, multiplicity)`.
    pub divisor: &'static [(&'static str, usize, u64)],
}

pub const GOLDEN_JOBS: &[GoldenJob] = &[
    GoldenJob { name: "pole_r2", operator: "x^2*D - 1", args: &["--r", "2/1"], divisor: &[("y+1", 1, 1)] },
    GoldenJob {
        name: "sqrt_pole_n2_k3",
        operator: "x^3*D^2 - 1",
        args: &["--n", "2", "--k", "3"],
        divisor: &[("y-1", 1, 1), ("y+1", 1, 1)],
    },
    GoldenJob { name: "regular_r3_2", operator: "x*D - 5", args: &["--r", "3/2"], divisor: &[("y", 1, 1)] },
    GoldenJob { name: "regular_r2", operator: "x*D - 5", args: &["--r", "2"], divisor: &[("y", 1, 1)] },
    GoldenJob { name: "regular_r3", operator: "x*D - 5", args: &["--r", "3"], divisor: &[("y", 1, 1)] },
    GoldenJob { name: "double_pole_r2", operator: "x^3*D - 2", args: &["--r", "2"], divisor: &[] },
];

pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn golden_args(job: &GoldenJob) -> Vec<String> {
    let mut a = vec!["--op".to_string(), job.operator.to_string(), "--mode".into(), "invariant".into()];
    a.extend(job.args.iter().map(|s| s.to_string()));
    a.extend(["--format".to_string(), "structured".to_string()]);
    a
}
