// The game where politicians only choose how many voters to reach.
//
// Run with `cargo run --example uninformed_equilibrium`.

use electoral_targeting::prelude::*;

pub fn run_example() -> Result<()> {
    let alpha = 0.9;
    for v in [0.1, 0.3] {
        let params = ModelParams::new(alpha, v)?;
        let eq = equilibrium_uninformed(&params);
        let o = outcome_uninformed(&eq);
        println!(
            "v={v}: s_I={:.6} s_C={:.6} eta={:.12} winner={} payoff_I={:.6}",
            eq.s_incumbent(),
            eq.s_challenger(),
            eta(eq.s_incumbent(), eq.s_challenger(), alpha),
            o.winner,
            o.payoff_incumbent,
        );
        let report = verify_uninformed_grid(&eq, VoterInformation::Informed, 1000, 1e-9)?;
        assert!(report.is_equilibrium(), "{report}");

        // Voters who do not learn their own draw vote on expectations; both
        // politicians then spend the whole budget.
        let ext = equilibrium_uninformed_ext(&params);
        let o = outcome_uninformed_ext(&ext);
        println!(
            "      voters uninformed of the draw: s_I={} s_C={} indifferent voter at {:.3}",
            ext.s_incumbent(),
            ext.s_challenger(),
            o.indifferent_voter.unwrap_or(f64::NAN),
        );
    }

    println!("vote share of the Incumbent as s_I grows (s_C = 0.1):");
    for k in 0..=5 {
        let s = 0.02 * k as f64;
        println!("  s_I={s:.2} eta={:.6}", eta(s, 0.1, alpha));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
