//! Factoring over number-field towers and computing minimal polynomials.

use ltdirac::exactalg::{minimal_poly, primitive_element, AlgElem, Field, UniPoly};
use ltdirac::parse::{parse_field, parse_poly};

fn show(p: &UniPoly) -> ltdirac::Result<()> {
    let parts: Vec<String> = p
        .factor()?
        .iter()
        .map(|(g, e)| if *e == 1 { format!("({})", g) } else { format!("({})^{}", g, e) })
        .collect();
    println!("  {}  =  {}", p, parts.join(" * "));
    Ok(())
}

fn main() -> ltdirac::Result<()> {
    let q = Field::rationals();
    println!("over Q:");
    show(&parse_poly("y^4 - 1", &q, "y")?)?;
    show(&parse_poly("y^6 - 2*y^3 + 1", &q, "y")?)?;
    show(&parse_poly("y^4 + 4", &q, "y")?)?;

    let qi = parse_field(&["adjoin: i^2 + 1".into()])?;
    println!("over {}:", qi);
    show(&parse_poly("y^4 - 1", &qi, "y")?)?;
    show(&parse_poly("y^2 + 4", &qi, "y")?)?;

    let k = parse_field(&["adjoin: a^2 - 2".into(), "adjoin: b^2 - 3".into()])?;
    let pe = primitive_element(&k)?;
    println!("Q(sqrt 2, sqrt 3) = Q[z]/({})", pe.defining_poly().display_var("z"));
    let ab = AlgElem::generator(&k).try_add(&AlgElem::new(k.clone(), k.lift(k.base().unwrap(), &k.base().unwrap().generator())?))?;
    println!("minimal polynomial of a + b over Q: {}", minimal_poly(&ab, &q)?.display_var("y"));
    let over_a = k.base().unwrap().clone();
    println!("minimal polynomial of a + b over Q(a): {}", minimal_poly(&ab, &over_a)?.display_var("y"));
    Ok(())
}
