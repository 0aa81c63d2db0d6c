//! Brute-force equilibrium verification.
//!
//! The informed game is discretized into swing-region cells and every
//! best response is found by enumeration, tallying votes through the voting
//! heuristic instead of the closed-form vote share. The uninformed games are
//! checked by scanning unilateral deviations over a uniform share grid.

mod grid;
mod report;

pub use grid::{grid_best_response, Cell, CellSet, EnumerationMode, GridBestResponse, GridGame, Region};
pub use grid::{MAX_COUNT_VECTORS, MAX_EXHAUSTIVE_CELLS};
pub use report::{Deviation, Strategy, VerificationReport, Verdict, Violation, WinningCost};

use crate::error::{Error, Result};
use crate::format::sig9;
use crate::informed_game::{winner_for_share, InformedProfile};
use crate::uninformed_game::{outcome_for, UninformedProfile, VoterInformation};
use crate::voter_model::Politician;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_GRID_LEFT: usize = 8;
pub const DEFAULT_GRID_RIGHT: usize = 8;
pub const DEFAULT_SHARE_GRID: usize = 1000;

/// Checks an informed profile against every grid deviation.
///
/// Both strategies must be unions of grid cells up to `tol`, apart from mass
/// outside the swing regions, which only adds to the spender's cost.
pub fn verify_equilibrium_grid(profile: &InformedProfile, game: &GridGame, tol: f64) -> Result<VerificationReport> {
    if game.params() != profile.params() {
        return Err(Error::Domain("grid and profile use different model parameters".into()));
    }
    let v = profile.params().budget();
    let incumbent = game.cells_of(profile.incumbent(), tol)?;
    let challenger = game.cells_of(profile.challenger(), tol)?;
    let share = game.incumbent_share(&incumbent, &challenger);
    let winner = winner_for_share(share);
    let loser = winner.opponent();
    let cells_of = |who: Politician| match who {
        Politician::Incumbent => &incumbent,
        Politician::Challenger => &challenger,
    };
    let actual = profile.strategy(winner).measure();

    let winner_br = grid_best_response(cells_of(loser), winner, game, EnumerationMode::Auto)?;
    let loser_br = grid_best_response(cells_of(winner), loser, game, EnumerationMode::Auto)?;
    let as_deviation = |who: Politician, br: &GridBestResponse| {
        br.best_subset.as_ref().map(|cells| Deviation {
            player: who,
            strategy: Strategy::Targeted(game.to_interval_set(cells)),
            cost: game.cost(cells),
        })
    };

    let mut notes = vec![format!("grid share of the Incumbent {}", sig9(share))];
    let mut witness = None;
    let winner_overspends = match winner_br.min_cost {
        WinningCost::Finite(m) => actual > m + tol,
        WinningCost::Unbounded => false,
    };
    if winner_overspends {
        notes.push(format!(
            "{winner} wins spending {} but a grid strategy costing {} also wins",
            sig9(actual),
            winner_br.min_cost
        ));
        witness = as_deviation(winner, &winner_br);
    }
    let loser_can_win = matches!(loser_br.min_cost, WinningCost::Finite(m) if m < v - tol);
    if loser_can_win {
        notes.push(format!("{loser} loses but wins on the grid spending {} < v", loser_br.min_cost));
        if witness.is_none() {
            witness = as_deviation(loser, &loser_br);
        }
    } else {
        notes.push(format!("{loser} loses; cheapest grid win costs {}", loser_br.min_cost));
    }
    Ok(VerificationReport::assemble(
        winner,
        winner_br.min_cost,
        actual,
        winner_overspends,
        loser_can_win,
        witness,
        notes.join("; "),
    ))
}

/// Scans every unilateral deviation to a share in `{0, 1/g, ..., 1}` and
/// flags any that raises the deviator's payoff by more than `tol`.
pub fn verify_uninformed_grid(
    profile: &UninformedProfile,
    voters: VoterInformation,
    grid_points: usize,
    tol: f64,
) -> Result<VerificationReport> {
    if grid_points < 100 {
        return Err(Error::Domain(format!("share grid needs at least 100 points, got {grid_points}")));
    }
    let current = outcome_for(profile, voters);
    let winner = current.winner;
    let payoff = |o: &crate::uninformed_game::UninformedOutcome, who: Politician| match who {
        Politician::Incumbent => o.payoff_incumbent,
        Politician::Challenger => o.payoff_challenger,
    };

    struct Scan {
        min_winning_share: Option<f64>,
        best_gain: f64,
        best_share: f64,
    }
    let scan = |who: Politician| -> Result<Scan> {
        let base = payoff(&current, who);
        let mut s = Scan { min_winning_share: None, best_gain: f64::NEG_INFINITY, best_share: profile.share(who) };
        for k in 0..=grid_points {
            let share = k as f64 / grid_points as f64;
            let o = outcome_for(&profile.with_share(who, share)?, voters);
            if o.winner == who && s.min_winning_share.is_none() {
                s.min_winning_share = Some(share);
            }
            let gain = payoff(&o, who) - base;
            if gain > s.best_gain {
                s.best_gain = gain;
                s.best_share = share;
            }
        }
        Ok(s)
    };
    let winner_scan = scan(winner)?;
    let loser_scan = scan(winner.opponent())?;

    let winner_overspends = winner_scan.best_gain > tol;
    let loser_can_win = loser_scan.best_gain > tol;
    let deviation = |who: Politician, s: &Scan| Deviation {
        player: who,
        strategy: Strategy::Share(s.best_share),
        cost: s.best_share,
    };
    let witness = if winner_overspends {
        Some(deviation(winner, &winner_scan))
    } else if loser_can_win {
        Some(deviation(winner.opponent(), &loser_scan))
    } else {
        None
    };
    let mut notes = vec![format!("Incumbent vote share {}", sig9(current.incumbent_share))];
    if let Some(t) = current.indifferent_voter {
        notes.push(format!("indifferent voter at {}", sig9(t)));
    }
    for (who, s) in [(winner, &winner_scan), (winner.opponent(), &loser_scan)] {
        notes.push(format!(
            "{who}: best deviation to share {} changes payoff by {}",
            sig9(s.best_share),
            sig9(s.best_gain)
        ));
    }
    let min_cost = winner_scan.min_winning_share.map_or(WinningCost::Unbounded, WinningCost::Finite);
    Ok(VerificationReport::assemble(
        winner,
        min_cost,
        profile.share(winner),
        winner_overspends,
        loser_can_win,
        witness,
        notes.join("; "),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::informed_game::{equilibrium_informed, Placement};
    use crate::interval_set::IntervalSet;
    use crate::uninformed_game::{equilibrium_uninformed, equilibrium_uninformed_ext};
    use crate::voter_model::ModelParams;

    fn p(alpha: f64, v: f64) -> ModelParams {
        ModelParams::new(alpha, v).unwrap()
    }

    #[test]
    fn small_budget_equilibrium_passes_grid() {
        for placement in [Placement::WorstCase, Placement::BestCase] {
            let eq = equilibrium_informed(&p(0.9, 0.1), placement).unwrap();
            let g = GridGame::aligned_to(&eq, 8, 8).unwrap();
            let r = verify_equilibrium_grid(&eq, &g, DEFAULT_TOL).unwrap();
            assert!(r.is_equilibrium(), "{r}");
            assert_eq!(r.winner, Politician::Incumbent);
        }
    }

    #[test]
    fn large_budget_equilibrium_passes_grid() {
        let eq = equilibrium_informed(&p(0.9, 0.3), Placement::WorstCase).unwrap();
        let g = GridGame::aligned_to(&eq, 8, 8).unwrap();
        let r = verify_equilibrium_grid(&eq, &g, DEFAULT_TOL).unwrap();
        assert!(r.is_equilibrium(), "{r}");
    }

    #[test]
    fn underspending_incumbent_fails_grid() {
        let prof = InformedProfile::new(
            IntervalSet::interval(0.45, 0.5).unwrap(),
            IntervalSet::interval(0.5, 0.6).unwrap(),
            p(0.9, 0.1),
        )
        .unwrap();
        let g = GridGame::aligned_to(&prof, 8, 8).unwrap();
        let r = verify_equilibrium_grid(&prof, &g, DEFAULT_TOL).unwrap();
        assert!(!r.is_equilibrium());
        assert_eq!(r.winner, Politician::Challenger);
        assert!(!r.loser_can_win_under_budget);
        let w = r.witness_deviation.expect("witness");
        assert_eq!(w.player, Politician::Challenger);
        assert!(w.cost < 0.1);
    }

    #[test]
    fn misaligned_grid_is_rejected() {
        let eq = equilibrium_informed(&p(0.9, 0.1), Placement::WorstCase).unwrap();
        let g = GridGame::new(p(0.9, 0.1), 8, 8).unwrap();
        assert!(matches!(verify_equilibrium_grid(&eq, &g, DEFAULT_TOL), Err(Error::Alignment(_))));
    }

    #[test]
    fn uninformed_scans() {
        let params = p(0.9, 0.1);
        let r = verify_uninformed_grid(&equilibrium_uninformed(&params), VoterInformation::Informed, 1000, 1e-9)
            .unwrap();
        assert!(r.is_equilibrium(), "{r}");

        let both_full = UninformedProfile::new(0.1, 0.1, params).unwrap();
        let r = verify_uninformed_grid(&both_full, VoterInformation::Informed, 1000, 1e-9).unwrap();
        assert!(!r.is_equilibrium());
        assert_eq!(r.violations, vec![Violation::WinnerOverspends]);
        let w = r.witness_deviation.unwrap();
        assert_eq!(w.player, Politician::Incumbent);
        assert!(w.cost < 0.1);

        let ext = equilibrium_uninformed_ext(&p(0.9, 0.3));
        let r = verify_uninformed_grid(&ext, VoterInformation::Uninformed, 1000, 1e-9).unwrap();
        assert!(r.is_equilibrium(), "{r}");

        assert!(verify_uninformed_grid(&ext, VoterInformation::Uninformed, 99, 1e-9).is_err());
    }
}
