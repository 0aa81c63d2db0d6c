//! The game between uninformed politicians, who only choose the share of
//! voters that will receive the public good.
//!
//! In the base game each voter learns whether they were drawn before voting,
//! so the Incumbent's vote share is the expectation `eta` over the four
//! offer classes. In the extension voters do not learn their draw and vote
//! on expected payoffs, which puts a single indifferent voter at `t_hat`.

use crate::error::{Error, Result};
use crate::informed_game::winner_for_share;
use crate::voter_model::{ModelParams, Politician};

/// Which voter information structure the uninformed game uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoterInformation {
    /// Voters learn whether they were drawn before voting.
    Informed,
    /// Voters only know the announced shares.
    Uninformed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UninformedProfile {
    incumbent_share: f64,
    challenger_share: f64,
    params: ModelParams,
}

impl UninformedProfile {
    /// Both spending shares must lie in `[0, 1]`.
    pub fn new(s_incumbent: f64, s_challenger: f64, params: ModelParams) -> Result<Self> {
        for (who, s) in [(Politician::Incumbent, s_incumbent), (Politician::Challenger, s_challenger)] {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::Domain(format!("{who} share must lie in [0, 1], got {s}")));
            }
        }
        Ok(UninformedProfile {
            incumbent_share: s_incumbent,
            challenger_share: s_challenger,
            params,
        })
    }

    pub fn s_incumbent(&self) -> f64 {
        self.incumbent_share
    }

    pub fn s_challenger(&self) -> f64 {
        self.challenger_share
    }

    pub fn share(&self, who: Politician) -> f64 {
        match who {
            Politician::Incumbent => self.incumbent_share,
            Politician::Challenger => self.challenger_share,
        }
    }

    /// The same profile with one player's share replaced.
    pub fn with_share(&self, who: Politician, s: f64) -> Result<Self> {
        match who {
            Politician::Incumbent => Self::new(s, self.challenger_share, self.params),
            Politician::Challenger => Self::new(self.incumbent_share, s, self.params),
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UninformedOutcome {
    pub incumbent_share: f64,
    pub winner: Politician,
    pub payoff_incumbent: f64,
    pub payoff_challenger: f64,
    /// Position of the indifferent voter; only set in the extension.
    pub indifferent_voter: Option<f64>,
}

/// Incumbent's expected vote share when voters learn their draw:
///
/// `(1 - R) + (R - 1/2)(1 - s_C(1 - s_I)) + (1/2 - L)(1 - s_C) s_I`.
pub fn eta(s_incumbent: f64, s_challenger: f64, alpha: f64) -> f64 {
    let c = crate::voter_model::PartisanCutoffs::for_alpha(alpha);
    (1.0 - c.right)
        + c.right_swing_mass() * (1.0 - s_challenger * (1.0 - s_incumbent))
        + c.left_swing_mass() * (1.0 - s_challenger) * s_incumbent
}

/// The unique equilibrium with voters learning their draw:
/// `s_C = v` and `s_I = (2 - a) v / (a (1 - 2v) + 2)`, the share at which
/// `eta` equals one half.
pub fn equilibrium_uninformed(params: &ModelParams) -> UninformedProfile {
    let (a, v) = (params.alpha(), params.budget());
    let s_i = (2.0 - a) * v / (a * (1.0 - 2.0 * v) + 2.0);
    UninformedProfile::new(s_i, v, *params).expect("equilibrium shares lie in [0, 1]")
}

fn settle(profile: &UninformedProfile, incumbent_share: f64, indifferent_voter: Option<f64>) -> UninformedOutcome {
    let winner = winner_for_share(incumbent_share);
    let payoff = profile.params.budget() - profile.share(winner);
    let (payoff_incumbent, payoff_challenger) = match winner {
        Politician::Incumbent => (payoff, 0.0),
        Politician::Challenger => (0.0, payoff),
    };
    UninformedOutcome { incumbent_share, winner, payoff_incumbent, payoff_challenger, indifferent_voter }
}

pub fn outcome_uninformed(profile: &UninformedProfile) -> UninformedOutcome {
    let share = eta(profile.incumbent_share, profile.challenger_share, profile.params.alpha());
    settle(profile, share, None)
}

/// `t_hat = (1 + a (s_C - s_I)) / (2 + a (s_C - s_I))`; voters to its right
/// vote for the Incumbent.
pub fn indifferent_voter_ext(s_incumbent: f64, s_challenger: f64, alpha: f64) -> f64 {
    let gap = alpha * (s_challenger - s_incumbent);
    (1.0 + gap) / (2.0 + gap)
}

/// In the extension both politicians spend the whole budget.
pub fn equilibrium_uninformed_ext(params: &ModelParams) -> UninformedProfile {
    let v = params.budget();
    UninformedProfile::new(v, v, *params).expect("budget lies in (0, 1]")
}

pub fn outcome_uninformed_ext(profile: &UninformedProfile) -> UninformedOutcome {
    let t_hat = indifferent_voter_ext(profile.incumbent_share, profile.challenger_share, profile.params.alpha());
    settle(profile, 1.0 - t_hat, Some(t_hat))
}

/// Dispatches on the voter information structure.
pub fn outcome_for(profile: &UninformedProfile, voters: VoterInformation) -> UninformedOutcome {
    match voters {
        VoterInformation::Informed => outcome_uninformed(profile),
        VoterInformation::Uninformed => outcome_uninformed_ext(profile),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alpha: f64, v: f64) -> ModelParams {
        ModelParams::new(alpha, v).unwrap()
    }

    #[test]
    fn eta_examples() {
        for a in [0.1, 0.5, 0.9] {
            assert!((eta(0.0, 0.0, a) - 0.5).abs() < 1e-15);
        }
        assert!((eta(0.040_441_2, 0.1, 0.9) - 0.5).abs() < 1e-7);
        assert!((eta(1.0, 0.0, 0.9) - 0.909_090_909_090_909_1).abs() < 1e-15);
    }

    #[test]
    fn prop_two_shares() {
        let e = equilibrium_uninformed(&p(0.9, 0.1));
        assert!((e.s_incumbent() - 0.040_441_176_470_588_24).abs() < 1e-15);
        assert_eq!(e.s_challenger(), 0.1);

        let e = equilibrium_uninformed(&p(0.3, 0.5));
        assert!((e.s_incumbent() - 1.7 / 4.0).abs() < 1e-15);

        let e = equilibrium_uninformed(&p(0.9, 0.3));
        assert!((e.s_incumbent() - 0.139_830_508_474_576_26).abs() < 1e-15);
    }

    #[test]
    fn base_outcomes() {
        let params = p(0.9, 0.1);
        let o = outcome_uninformed(&equilibrium_uninformed(&params));
        assert_eq!(o.winner, Politician::Incumbent);
        assert!((o.payoff_incumbent - 0.059_558_823_529_411_76).abs() < 1e-15);
        assert!(o.indifferent_voter.is_none());

        let o = outcome_uninformed(&UninformedProfile::new(0.0, 0.0, params).unwrap());
        assert_eq!(o.winner, Politician::Incumbent);
        assert_eq!(o.payoff_incumbent, 0.1);

        let o = outcome_uninformed(&UninformedProfile::new(0.0, 1.0, params).unwrap());
        assert_eq!(o.winner, Politician::Challenger);
        assert!((o.incumbent_share - 10.0 / 29.0).abs() < 1e-15);
        assert!((o.payoff_challenger - (0.1 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn share_validation() {
        assert!(UninformedProfile::new(-0.1, 0.2, p(0.5, 0.5)).is_err());
        assert!(UninformedProfile::new(0.1, 1.2, p(0.5, 0.5)).is_err());
    }

    #[test]
    fn indifferent_voter() {
        assert_eq!(indifferent_voter_ext(0.3, 0.3, 0.9), 0.5);
        assert!((indifferent_voter_ext(0.0, 1.0, 0.9) - 19.0 / 29.0).abs() < 1e-15);
        assert!((indifferent_voter_ext(0.1, 0.3, 0.9) - 1.18 / 2.18).abs() < 1e-15);
    }

    #[test]
    fn extension_equilibrium() {
        let e = equilibrium_uninformed_ext(&p(0.9, 0.3));
        assert_eq!((e.s_incumbent(), e.s_challenger()), (0.3, 0.3));
        let o = outcome_uninformed_ext(&e);
        assert_eq!(o.indifferent_voter, Some(0.5));
        assert_eq!(o.incumbent_share, 0.5);
        assert_eq!(o.winner, Politician::Incumbent);

        let e = equilibrium_uninformed_ext(&p(0.4, 1.0));
        assert_eq!((e.s_incumbent(), e.s_challenger()), (1.0, 1.0));

        let o = outcome_uninformed_ext(&equilibrium_uninformed_ext(&p(0.5, 0.2)));
        assert_eq!(o.payoff_incumbent, 0.0);
    }
}
