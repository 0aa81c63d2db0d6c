//! Electoral targeting games between an Incumbent and a Challenger who
//! compete by promising a local public good to heterogeneous voters.
//!
//! Voters sit on `[0, 1]`; position `t` is both ideology (the Challenger is
//! at 0, the Incumbent at 1) and inverse wealth (the good is worth
//! `alpha * (1 - t)`). Two scenarios are modelled:
//!
//! * [`informed_game`]: politicians target interval sets of voters.
//! * [`uninformed_game`]: politicians only pick the share of voters who get
//!   the good, allocated at random.
//!
//! [`welfare`] compares the voter welfare these scenarios produce and
//! locates the budget cutoffs between them; [`verifier`] re-checks every
//! equilibrium by brute force.
//!
//! ```
//! use electoral_targeting::prelude::*;
//!
//! let params = ModelParams::new(0.9, 0.1)?;
//! let eq = equilibrium_informed(&params, Placement::WorstCase)?;
//! assert_eq!(eq.incumbent().to_string(), "0.4,0.5");
//! assert!(is_equilibrium_informed(&eq).is_equilibrium());
//! # Ok::<(), electoral_targeting::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod format;
pub mod informed_game;
pub mod interval_set;
pub mod svg;
pub mod uninformed_game;
pub mod verifier;
pub mod voter_model;
pub mod welfare;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::informed_game::{
        decompose, equilibrium_informed, incumbent_vote_share, is_equilibrium_informed,
        min_winning_cost_challenger, min_winning_cost_incumbent, outcome, small_budget_equilibrium_at,
        InformedOutcome, InformedProfile, Placement, Regime, SwingDecomposition,
    };
    pub use crate::interval_set::IntervalSet;
    pub use crate::uninformed_game::{
        equilibrium_uninformed, equilibrium_uninformed_ext, eta, indifferent_voter_ext, outcome_uninformed,
        outcome_uninformed_ext, UninformedOutcome, UninformedProfile, VoterInformation,
    };
    pub use crate::verifier::{
        grid_best_response, verify_equilibrium_grid, verify_uninformed_grid, CellSet, EnumerationMode,
        GridGame, VerificationReport, Verdict, WinningCost,
    };
    pub use crate::voter_model::{
        regime_boundary, vote, voter_payoff, ModelParams, PartisanCutoffs, Politician, VoteChoice,
    };
    pub use crate::welfare::{
        welfare_cutoff, welfare_cutoff_bisect, welfare_cutoff_ext, welfare_informed_closed, welfare_numeric,
        welfare_uninformed_closed, welfare_uninformed_ext_closed, Allocation, Better, InformedScenario,
        WelfareReport,
    };
}
