// Welfare sweep over the budget, written as CSV and SVG.
//
// Run with `cargo run --example figure_sweep`. Files go to the directory
// named by `TARGETING_OUT_DIR`, or the system temp directory.

use std::path::PathBuf;

use electoral_targeting::cli::{self, Scenario, SweepConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::var_os("TARGETING_OUT_DIR").map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let csv_path = dir.join("welfare_sweep.csv");
    let scenarios = vec![Scenario::Informed, Scenario::Uninformed, Scenario::UninformedExt];
    let config = SweepConfig::new(vec![0.9], 0.01, 0.5, 50, scenarios.clone(), Some(csv_path.clone()), true)?;

    let table = cli::sweep(&config)?;
    let worst_gap = table.rows.iter().map(cli::self_check_row).collect::<Result<Vec<_>, _>>()?.into_iter().fold(0.0, f64::max);
    println!("{} rows, largest closed-form vs numeric gap {worst_gap:.2e}", table.rows.len());

    cli::write_sweep_csv(&table, std::fs::File::create(&csv_path)?)?;
    let svg_path = csv_path.with_extension("svg");
    std::fs::write(&svg_path, cli::sweep_chart(&table, &scenarios).render())?;
    println!("wrote {} and {}", csv_path.display(), svg_path.display());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
