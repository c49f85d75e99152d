//! Newton polygons, slopes and irregularity of operators in `x` and `D`.

use ltdirac::diffop::newton_polygon;
use ltdirac::exactalg::field::fmt_rat;
use ltdirac::exactalg::Field;
use ltdirac::parse::parse_operator;

fn main() -> ltdirac::Result<()> {
    let q = Field::rationals();
    for src in ["x*D - 5", "x^2*D - 1", "x^3*D^2 - 1", "x^4*D^2 + x*D - 1", "x^5*D^3 + x^2*D + 1"] {
        let l = parse_operator(src, &q)?;
        let np = newton_polygon(&l)?;
        let slopes: Vec<String> = np.slopes().iter().map(|(s, m)| format!("{} (x{})", fmt_rat(s), m)).collect();
        println!("{:<22} vertices {:?}", l.render(), np.vertices);
        println!("{:<22} slopes {}  irregularity {}", "", slopes.join(", "), fmt_rat(&np.irregularity()));
        for e in np.edges.iter().filter(|e| e.length > 0) {
            println!("{:<22} edge polynomial at slope {}: {}", "", fmt_rat(&e.slope), e.edge_poly.display_var("T"));
        }
    }
    Ok(())
}
