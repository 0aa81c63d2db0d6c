// Brute-force verification on a discretized swing region.
//
// Run with `cargo run --example grid_verification`.

use electoral_targeting::prelude::*;

pub fn run_example() -> Result<()> {
    let params = ModelParams::new(0.9, 0.1)?;
    let eq = equilibrium_informed(&params, Placement::WorstCase)?;

    // The equilibrium endpoints are not multiples of the equal-mass cell
    // width, so the grid is refined at them.
    let game = GridGame::aligned_to(&eq, 8, 8)?;
    println!("{} cells, masses {:?}", game.len(), game.cell_masses().iter().map(|m| format!("{m:.4}")).collect::<Vec<_>>());
    let report = verify_equilibrium_grid(&eq, &game, 1e-9)?;
    print!("{report}");
    assert!(report.is_equilibrium());

    let challenger = game.cells_of(eq.challenger(), 1e-9)?;
    let exhaustive = grid_best_response(&challenger, Politician::Incumbent, &game, EnumerationMode::Exhaustive)?;
    let counted = grid_best_response(&challenger, Politician::Incumbent, &game, EnumerationMode::CountBased)?;
    println!("Incumbent best response: exhaustive {} / count-based {}", exhaustive.min_cost, counted.min_cost);
    assert_eq!(exhaustive.min_cost, counted.min_cost);

    // A profile where the Incumbent covers only half of the Challenger's
    // offers is rejected with a cheaper winning deviation as witness.
    let bad = InformedProfile::new(IntervalSet::interval(0.45, 0.5)?, eq.challenger().clone(), params)?;
    let game = GridGame::aligned_to(&bad, 8, 8)?;
    let report = verify_equilibrium_grid(&bad, &game, 1e-9)?;
    print!("{report}");
    assert!(!report.is_equilibrium());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
