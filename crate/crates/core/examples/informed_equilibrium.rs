// Equilibria of the informed targeting game in both budget regimes.
//
// Run with `cargo run --example informed_equilibrium`.

use electoral_targeting::prelude::*;

pub fn run_example() -> Result<()> {
    let alpha = 0.9;
    println!("alpha = {alpha}, regime boundary at v = {:.6}", regime_boundary(alpha));
    for v in [0.05, 0.1, 0.3] {
        let params = ModelParams::new(alpha, v)?;
        let regime = Regime::classify(&params)?;
        for placement in [Placement::WorstCase, Placement::BestCase] {
            let eq = equilibrium_informed(&params, placement)?;
            let o = outcome(&eq);
            let report = is_equilibrium_informed(&eq);
            println!(
                "v={v:<4} {:<12} {placement:?}: S_I=[{}] S_C=[{}] share={:.4} winner={} ({})",
                regime.label(),
                eq.incumbent(),
                eq.challenger(),
                o.incumbent_share,
                o.winner,
                if report.is_equilibrium() { "equilibrium" } else { "not an equilibrium" },
            );
            assert!(report.is_equilibrium());
            if regime == Regime::LargeBudget {
                break;
            }
        }
    }

    // An Incumbent who shadows only part of the Challenger's offers loses,
    // and the cheapest repair is to copy the Challenger exactly.
    let params = ModelParams::new(alpha, 0.1)?;
    let challenger = IntervalSet::interval(0.5, 0.6)?;
    let shortfall = InformedProfile::new(IntervalSet::interval(0.45, 0.5)?, challenger.clone(), params)?;
    let o = outcome(&shortfall);
    println!(
        "partial shadowing: share={:.4} winner={}; Incumbent needs {:.4}, Challenger needs more than {:.4}",
        o.incumbent_share,
        o.winner,
        min_winning_cost_incumbent(&challenger, &params),
        min_winning_cost_challenger(shortfall.incumbent(), &params).infimum,
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
