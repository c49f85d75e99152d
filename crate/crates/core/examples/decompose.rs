//! Levelt-Turrittin decomposition of operators and of connection matrices.

use ltdirac::diffop::ConnectionMatrix;
use ltdirac::exactalg::{rat, Field};
use ltdirac::parse::{parse_form, parse_operator};
use ltdirac::turrittin::{lt_decompose, LTDecomposition, PrecisionPolicy};

fn print(label: &str, d: &LTDecomposition) {
    println!("{}", label);
    println!("  m = {}, irregularity = {}, rank = {}", d.ram_index, d.irregularity(), d.total_rank);
    for c in &d.components {
        let form = if c.form.is_zero() { "0".to_string() } else { c.form.render() };
        println!("  E^({}) x R_{}   orbit size {}   field {}", form, c.rank, c.orbit_size, c.form.field());
    }
}

fn main() -> ltdirac::Result<()> {
    let q = Field::rationals();
    let policy = PrecisionPolicy::default();
    for src in ["x^2*D - 1", "x^3*D^2 - 1", "x^3*D^2 + x^2*D - 2", "x^4*D^2 + 1"] {
        print(src, &lt_decompose(&parse_operator(src, &q)?, &policy)?);
    }

    // a module assembled from its expected pieces
    let w1 = parse_form("2*t^-3 + 5*t^-1 ; m=2", &q)?;
    let w2 = parse_form("x^-1", &q)?;
    let m = ConnectionMatrix::direct_sum(&[
        ConnectionMatrix::exp_regular(&w1, &ConnectionMatrix::regular_jordan(&q, 1, &rat(0, 1)))?,
        ConnectionMatrix::exp_regular(&w2, &ConnectionMatrix::regular_jordan(&q, 2, &rat(1, 2)))?,
        ConnectionMatrix::regular_jordan(&q, 1, &rat(1, 3)),
    ])?;
    let d = lt_decompose(&m, &policy)?;
    print("E^(2/t^3 + 5/t) + E^(1/x) x R_2 + R_1", &d);
    println!("  recovered: {}", d.matches(&[(w1, 1), (w2, 2), (ltdirac::puiseux::ExpForm::zero(&q), 1)])?);
    Ok(())
}
