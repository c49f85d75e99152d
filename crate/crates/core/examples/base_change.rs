//! Base change of decompositions and divisors to an extension `L` of `K`.

use ltdirac::exactalg::{rat, Field};
use ltdirac::invariant::{as_invariant, base_change, degree_identity_holds};
use ltdirac::parse::{parse_field, parse_operator};
use ltdirac::turrittin::{lt_decompose, PrecisionPolicy};

fn main() -> ltdirac::Result<()> {
    let q = Field::rationals();
    let r = rat(3, 2);
    for (src, ext) in [("x^3*D^2 + 1", "adjoin: i^2 + 1"), ("x^3*D^2 - 2", "adjoin: s^2 - 2"), ("x^2*D^2 + 1", "adjoin: i^2 + 1")] {
        let l = parse_field(&[ext.to_string()])?;
        let dec = lt_decompose(&parse_operator(src, &q)?, &PrecisionPolicy::default())?;
        let r = if src.starts_with("x^2") { rat(2, 1) } else { r.clone() };
        let div = as_invariant(&dec, &r)?;
        let dec_l = base_change(&dec, &l)?;
        let down_then_up = base_change(&div, &l)?;
        let up_then_down = as_invariant(&dec_l, &r)?;
        println!("{}  over {}  r = {}", src, l, r);
        println!("  over K: {}", div);
        println!("  components over L: {:?}", dec_l.components.iter().map(|c| (c.form.render(), c.orbit_size)).collect::<Vec<_>>());
        println!("  base change of divisor: {}", down_then_up);
        println!("  divisor of base change: {}", up_then_down);
        println!("  agree: {}   degree identity: {}", down_then_up == up_then_down, degree_identity_holds(&div, &down_then_up)?);
    }
    Ok(())
}
