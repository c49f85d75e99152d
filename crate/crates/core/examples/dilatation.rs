//! The dilated chart and how its fiber coordinate moves under a change of
//! uniformizer `t' = g(t) t`.

use ltdirac::diffop::Series;
use ltdirac::dilatation::{coordinate_scale, dilated_chart, leading_unit, pull_back_coordinate, transported_point};
use ltdirac::exactalg::{minimal_poly, Field};
use ltdirac::invariant::bracket_values;
use ltdirac::parse::parse_operator;
use ltdirac::turrittin::{lt_decompose, PrecisionPolicy};

fn main() -> ltdirac::Result<()> {
    let q = Field::rationals();
    for (n, k) in [(1, 2), (2, 3), (1, 3)] {
        println!("{}", dilated_chart(n, k)?);
    }

    let g = Series::from_terms(&q, &[(0, q.from_int(3)), (1, q.from_int(1)), (2, q.from_int(-1))]);
    let g0 = leading_unit(&g)?;
    let (n, k) = (2, 3);
    println!("g(t) = {}, g(0) = {}, y' = {} * y", g.render("t"), g0, coordinate_scale(&g0, n, k)?);

    let dec = lt_decompose(&parse_operator("x^3*D^2 + 2", &q)?, &PrecisionPolicy::default())?;
    let r = dilated_chart(n, k)?.r.value();
    for comp in &dec.components {
        for bv in bracket_values(comp, &r, &q)? {
            let before = minimal_poly(&bv.root, &q)?;
            let moved = transported_point(&bv.root, &g0, n, k, &q)?;
            let back = pull_back_coordinate(&moved, &g0, n, k)?;
            println!("  [omega]: {}   in y': {}   pulled back: {}", before.display_var("y"), moved.display_var("y"), back.display_var("y"));
            assert_eq!(before, back);
        }
    }
    Ok(())
}
