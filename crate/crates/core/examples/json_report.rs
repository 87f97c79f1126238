// Drive the command-line front end in-process and read its JSON report.
//
// ```bash
// cargo run --example json_report
// ```

use std::error::Error;
use std::fmt::Write;

use twinspin::cli::run;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let result = run(["twinspin", "verify", "--backend", "exact", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&result.stdout)?;
    writeln!(out, "exit code {}", result.code)?;
    writeln!(out, "verdict {}", report["verdict"])?;
    writeln!(out, "kernel dimension {}", report["theorem"]["kernel_dimension"])?;
    writeln!(out, "contraction residuals {}", report["theorem"]["contraction"])?;

    let spectrum = run(["twinspin", "spectrum", "--backend", "float"]);
    writeln!(out, "{}", spectrum.stdout.lines().next().unwrap_or_default())?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
