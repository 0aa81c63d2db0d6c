// Voter welfare under informed and uninformed targeting, closed forms
// against numerical integration.
//
// Run with `cargo run --example welfare_comparison`.

use electoral_targeting::prelude::*;

pub fn run_example() -> Result<()> {
    let alpha = 0.9;
    println!("{:>5} {:>12} {:>10} {:>10} {:>10} {:>10}  better", "v", "regime", "worst", "best", "unin", "unin-ext");
    for v in [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5] {
        let params = ModelParams::new(alpha, v)?;
        let w = WelfareReport::at(&params)?;
        println!(
            "{v:>5} {:>12} {:>10.6} {:>10.6} {:>10.6} {:>10.6}  {}",
            w.regime.label(),
            w.informed_worst,
            w.informed_best,
            w.uninformed,
            w.uninformed_ext,
            w.better.label(),
        );

        let worst = equilibrium_informed(&params, Placement::WorstCase)?;
        let numeric = welfare_numeric(
            Politician::Incumbent,
            &Allocation::Targeted(worst.incumbent().clone()),
            &params,
            100_000,
        )?;
        assert!((numeric - w.informed_worst).abs() < 1e-8);
        let shares = equilibrium_uninformed(&params);
        let numeric = welfare_numeric(Politician::Incumbent, &Allocation::Share(shares.s_incumbent()), &params, 100_000)?;
        assert!((numeric - w.uninformed).abs() < 1e-8);
    }
    println!("uninformed targeting is better for voters once v exceeds {:.7}", welfare_cutoff(alpha)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
