mod common;

use common::*;
use ltdirac::diffop::{ConnectionMatrix, Series};
use ltdirac::exactalg::rat;
use ltdirac::invariant::{as_invariant, DiracDivisor};
use ltdirac::parse::{parse_form, parse_operator};
use ltdirac::puiseux::ExpForm;
use ltdirac::turrittin::{lt_decompose, LTDecomposition, PrecisionPolicy};
use ltdirac::Error;

fn dec(src: &str) -> LTDecomposition {
    lt_decompose(&parse_operator(src, &q()).unwrap(), &PrecisionPolicy::default()).unwrap()
}

fn forms(parts: &[(&str, usize)]) -> Vec<(ExpForm, usize)> {
    parts.iter().map(|(s, n)| (parse_form(s, &q()).unwrap(), *n)).collect()
}

#[test]
fn hand_solved_operators() {
    // y = e^{-ω} solves the operator with ∂ω = -y'/y
    let cases: &[(&str, &[(&str, usize)], u64)] = &[
        ("x*D - 5", &[("0", 1)], 1),
        ("x^2*D - 1", &[("x^-1", 1)], 1),
        ("x^3*D - 2", &[("x^-2", 1)], 1),
        ("x^3*D^2 - 1", &[("2*t^-1 ; m=2", 1)], 2),
        ("x^4*D^2 + x*D - 1", &[("0", 1), ("-1/2*x^-2", 1)], 1),
        ("(x^2*D - 1)*(x^2*D + 1)", &[("x^-1", 1), ("-x^-1", 1)], 1),
    ];
    for (src, parts, m) in cases {
        let d = dec(src);
        assert!(d.matches(&forms(parts)).unwrap(), "{}: {:?}", src, d.components);
        assert_eq!(d.ram_index, *m, "{}", src);
    }
}

#[test]
fn companion_matches_operator() {
    for src in OPERATOR_CORPUS {
        let l = parse_operator(src, &q()).unwrap();
        let a = lt_decompose(&l, &PrecisionPolicy::default()).unwrap();
        let b = lt_decompose(&ConnectionMatrix::companion(&l, 60).unwrap(), &PrecisionPolicy::default()).unwrap();
        assert!(a.equivalent(&b).unwrap(), "{}", src);
    }
}

#[test]
fn orbit_sizes_and_ranks_add_up() {
    for e in catalog() {
        let d = e.decompose();
        let total: usize = d.components.iter().map(|c| c.rank * c.orbit_size).sum();
        assert_eq!(total, d.total_rank, "{}", e.name);
        assert_eq!(d.irregularity(), ltdirac::turrittin::irregularity(&d));
    }
}

#[test]
fn truncated_matrix_exhausts_precision() {
    // A = x^-3 + O(x^-2) leaves the x^-1 term of the form undetermined
    let f = q();
    let a = Series::monomial(&f, f.one(), -3).add(&Series::big_o(&f, -2));
    let m = ConnectionMatrix::rank_one(a);
    let policy = PrecisionPolicy { max_doublings: 1, ..PrecisionPolicy::default() };
    match lt_decompose(&m, &policy) {
        Err(e @ Error::PrecisionExhausted { .. }) => assert_eq!(e.code(), 4),
        other => panic!("{:?}", other),
    }
}

#[test]
fn degree_cap_is_enforced() {
    let l = parse_operator("x^3*D^2 + x^2*D - 2", &q()).unwrap();
    let policy = PrecisionPolicy { degree_cap: 1, ..PrecisionPolicy::default() };
    match lt_decompose(&l, &policy) {
        Err(e @ Error::DegreeCapExceeded { .. }) => assert_eq!(e.code(), 5),
        other => panic!("{:?}", other),
    }
}

#[test]
fn divisor_of_a_mixed_module() {
    // 2/t^3 + 5/t has x-degree 3/2; at r = 5/2 the bracket values are
    // (1 - 5/2)·(±2) = ∓3 and the regular summand sits at the origin
    let e = &catalog()[5];
    let d = e.decompose();
    let at = as_invariant(&d, &rat(5, 2)).unwrap();
    let want = DiracDivisor::from_entries(
        &q(),
        [-3, 0, 3].iter().map(|v| (ltdirac::invariant::ClosedPoint::rational(&q(), &q().from_int(*v)), 1)),
    )
    .unwrap();
    assert_eq!(at, want);
    let below = as_invariant(&d, &rat(2, 1)).unwrap();
    assert_eq!(below.to_string(), "1*[y]");
    assert!(as_invariant(&d, &rat(3, 2)).unwrap().to_string() == "1*[y]");
}

#[test]
fn r_must_exceed_one() {
    assert_eq!(as_invariant(&dec("x*D - 5"), &rat(1, 1)).unwrap_err(), Error::RNotAboveOne);
}
