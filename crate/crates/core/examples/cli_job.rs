//! Running jobs through the same entry point as the command-line tool.

use ltdirac::cli::{run, run_batch, JobSpec, Mode};

fn main() -> ltdirac::Result<()> {
    let mut job = JobSpec::new("x^3*D^2 - 1", Mode::Invariant);
    job.n = Some(2);
    job.k = Some(3);
    print!("{}", run(&job)?.to_structured());

    let config = r#"
operator = "x^2*D - 1"
mode = "invariant"
r = "2/1"
field = ["adjoin: z^2 + 1"]
"#;
    print!("{}", run(&JobSpec::from_toml(config)?)?.to_text());

    let jobs: Vec<JobSpec> = ["x*D - 5", "x^2*D - 1", "x^3*D^2 - 1", "x^2*D +"]
        .iter()
        .map(|op| JobSpec::new(op, Mode::Slopes))
        .collect();
    for (j, res) in jobs.iter().zip(run_batch(&jobs)) {
        match res {
            Ok(r) => println!("{:<14} {}", j.operator, r.to_json_line()),
            Err(e) => println!("{:<14} error {} ({})", j.operator, e.code(), e),
        }
    }
    Ok(())
}
