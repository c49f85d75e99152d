//! The Dirac divisor of an operator for a range of indices `r = k/n`.

use ltdirac::exactalg::Field;
use ltdirac::invariant::{as_invariant_nk, omega_at, RIndex};
use ltdirac::parse::parse_operator;
use ltdirac::turrittin::{lt_decompose, PrecisionPolicy};

fn main() -> ltdirac::Result<()> {
    let q = Field::rationals();
    let ops = ["x*D - 5", "x^2*D - 1", "x^3*D^2 - 1", "x^3*D - 1", "x^5*D^2 + x^2*D - 3"];
    let indices = [(2, 3), (1, 2), (2, 5), (1, 3), (1, 4)];
    for src in ops {
        let dec = lt_decompose(&parse_operator(src, &q)?, &PrecisionPolicy::default())?;
        println!("{}", src);
        for (n, k) in indices {
            let r = RIndex::new(k, n)?;
            let at = omega_at(&dec, &(r.value() - num_rational::BigRational::from_integer(1.into())));
            match as_invariant_nk(&dec, n, k) {
                Ok(div) => println!("  r = {:<4} |Omega_(r-1)| = {}  divisor {}", r.to_string(), at.len(), div),
                Err(e) => println!("  r = {:<4} {}", r.to_string(), e),
            }
        }
    }
    match as_invariant_nk(&lt_decompose(&parse_operator("x*D - 5", &q)?, &PrecisionPolicy::default())?, 2, 1) {
        Ok(d) => println!("k <= n: {}", d),
        Err(e) => println!("k <= n with a regular part: {}", e),
    }
    Ok(())
}
