// Regime boundary and welfare cutoffs across alpha, closed form and
// bisection side by side.
//
// Run with `cargo run --example regime_cutoffs`.

use electoral_targeting::prelude::*;

pub fn run_example() -> Result<()> {
    println!("alpha  boundary   cutoff      bisected    ext-cutoff");
    for k in 1..=9 {
        let alpha = k as f64 / 10.0;
        let closed = welfare_cutoff(alpha)?;
        let bisected = welfare_cutoff_bisect(alpha, 1e-12)?;
        println!(
            "{alpha:.1}    {:.7}  {closed:.7}  {bisected:.7}  {:.7}",
            regime_boundary(alpha),
            welfare_cutoff_ext(alpha)?,
        );
        assert!((closed - bisected).abs() < 1e-8);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
