//! Voter preferences and the voting heuristic.
//!
//! A voter at position `t` pays an ideological cost equal to the distance to
//! the winner (the Challenger sits at 0, the Incumbent at 1) and values the
//! public good at `alpha * (1 - t)`.

use std::fmt;

use crate::error::{Error, Result};

/// Absolute tolerance for comparing measures, vote shares, and payoffs.
pub const TOL: f64 = 1e-9;

/// Public-good importance `alpha` and the fixed budget `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    alpha: f64,
    budget: f64,
}

impl ModelParams {
    /// Requires `0 < alpha < 1` and `0 < budget <= 1`.
    pub fn new(alpha: f64, budget: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        if !(budget > 0.0 && budget <= 1.0) {
            return Err(Error::Domain(format!("budget v must lie in (0, 1], got {budget}")));
        }
        Ok(ModelParams { alpha, budget })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    pub fn cutoffs(&self) -> PartisanCutoffs {
        PartisanCutoffs::for_alpha(self.alpha)
    }
}

/// Boundaries of the partisan regions: voters below `left` always vote for
/// the Challenger, voters above `right` always vote for the Incumbent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartisanCutoffs {
    pub left: f64,
    pub right: f64,
}

impl PartisanCutoffs {
    /// `left = (1 - alpha) / (2 - alpha)`, `right = (1 + alpha) / (2 + alpha)`.
    ///
    /// Not validated, so limits such as `alpha -> 0` can be probed.
    pub fn for_alpha(alpha: f64) -> Self {
        PartisanCutoffs {
            left: (1.0 - alpha) / (2.0 - alpha),
            right: (1.0 + alpha) / (2.0 + alpha),
        }
    }

    /// Mass of left-leaning swing voters, `1/2 - left`.
    pub fn left_swing_mass(&self) -> f64 {
        0.5 - self.left
    }

    /// Mass of right-leaning swing voters, `right - 1/2`. This is also the
    /// budget level separating the two informed-game regimes.
    pub fn right_swing_mass(&self) -> f64 {
        self.right - 0.5
    }
}

/// `right - 1/2` for the given `alpha`: the budget at which the informed
/// equilibrium switches structure.
pub fn regime_boundary(alpha: f64) -> f64 {
    PartisanCutoffs::for_alpha(alpha).right_swing_mass()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Politician {
    Incumbent,
    Challenger,
}

impl Politician {
    pub fn opponent(self) -> Politician {
        match self {
            Politician::Incumbent => Politician::Challenger,
            Politician::Challenger => Politician::Incumbent,
        }
    }
}

impl fmt::Display for Politician {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Politician::Incumbent => "Incumbent",
            Politician::Challenger => "Challenger",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoteChoice {
    Incumbent,
    Challenger,
    /// Exact payoff tie: the voter splits the vote half-half.
    Split,
}

impl VoteChoice {
    /// Contribution to the Incumbent's vote count, doubled so that a split
    /// vote stays integral.
    pub fn doubled_incumbent_weight(self) -> u32 {
        match self {
            VoteChoice::Incumbent => 2,
            VoteChoice::Split => 1,
            VoteChoice::Challenger => 0,
        }
    }
}

fn payoff_unchecked(t: f64, winner: Politician, receives_good: bool, alpha: f64) -> f64 {
    let ideology = match winner {
        Politician::Incumbent => -(1.0 - t),
        Politician::Challenger => -t,
    };
    let good = if receives_good { alpha * (1.0 - t) } else { 0.0 };
    ideology + good
}

/// Realized payoff of voter `t` when `winner` takes office.
pub fn voter_payoff(t: f64, winner: Politician, receives_good: bool, params: &ModelParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("voter position must lie in [0, 1], got {t}")));
    }
    Ok(payoff_unchecked(t, winner, receives_good, params.alpha))
}

/// The voting heuristic: vote for whichever politician's promise yields the
/// higher payoff; exact ties split.
pub fn vote(t: f64, offered_by_incumbent: bool, offered_by_challenger: bool, params: &ModelParams) -> VoteChoice {
    let from_i = payoff_unchecked(t, Politician::Incumbent, offered_by_incumbent, params.alpha);
    let from_c = payoff_unchecked(t, Politician::Challenger, offered_by_challenger, params.alpha);
    if from_i > from_c {
        VoteChoice::Incumbent
    } else if from_c > from_i {
        VoteChoice::Challenger
    } else {
        VoteChoice::Split
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alpha: f64, v: f64) -> ModelParams {
        ModelParams::new(alpha, v).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(0.0, 0.5).is_err());
        assert!(ModelParams::new(1.0, 0.5).is_err());
        assert!(ModelParams::new(0.5, 0.0).is_err());
        assert!(ModelParams::new(0.5, 1.0 + 1e-12).is_err());
        assert!(ModelParams::new(f64::NAN, 0.5).is_err());
        assert!(ModelParams::new(0.5, 1.0).is_ok());
    }

    #[test]
    fn cutoffs_at_point_nine() {
        let c = p(0.9, 0.1).cutoffs();
        assert!((c.left - 1.0 / 11.0).abs() < 1e-15);
        assert!((c.right - 19.0 / 29.0).abs() < 1e-15);
        assert!((c.left - 0.090_909_1).abs() < 1e-7);
        assert!((c.right - 0.655_172_4).abs() < 1e-7);
        // reported as roughly 0.16
        assert_eq!(format!("{:.2}", c.right_swing_mass()), "0.16");
    }

    #[test]
    fn cutoffs_symmetric_limit() {
        let c = PartisanCutoffs::for_alpha(1e-12);
        assert!((c.left - 0.5).abs() < 1e-12);
        assert!((c.right - 0.5).abs() < 1e-12);
    }

    #[test]
    fn incumbent_has_more_partisans() {
        for k in 1..100 {
            let c = PartisanCutoffs::for_alpha(k as f64 / 100.0);
            assert!(0.0 < c.left && c.left < 0.5 && 0.5 < c.right && c.right < 1.0);
            assert!(c.right_swing_mass() < c.left_swing_mass());
        }
    }

    #[test]
    fn payoffs() {
        let params = p(0.9, 0.1);
        let x = voter_payoff(0.3, Politician::Challenger, true, &params).unwrap();
        assert!((x - 0.33).abs() < 1e-15);
        assert_eq!(voter_payoff(1.0, Politician::Incumbent, false, &params).unwrap(), 0.0);
        for w in [Politician::Incumbent, Politician::Challenger] {
            assert_eq!(
                voter_payoff(1.0, w, true, &params).unwrap(),
                voter_payoff(1.0, w, false, &params).unwrap()
            );
        }
        assert!(voter_payoff(1.5, Politician::Incumbent, false, &params).is_err());
    }

    #[test]
    fn votes() {
        let params = p(0.9, 0.1);
        assert_eq!(vote(0.7, false, true, &params), VoteChoice::Incumbent);
        assert_eq!(vote(0.3, true, true, &params), VoteChoice::Challenger);
        assert_eq!(vote(0.5, false, false, &params), VoteChoice::Split);
        assert_eq!(vote(0.3, true, false, &params), VoteChoice::Incumbent);
        assert_eq!(vote(0.05, true, false, &params), VoteChoice::Challenger);
    }

    #[test]
    fn swing_regions_respond_to_exclusive_offers() {
        let params = p(0.6, 0.2);
        let c = params.cutoffs();
        for k in 1..1000 {
            let t = k as f64 / 1000.0;
            if t > c.left && t < 0.5 {
                for (oi, oc) in [(false, false), (true, false), (false, true), (true, true)] {
                    let expect_i = oi && !oc;
                    assert_eq!(vote(t, oi, oc, &params) == VoteChoice::Incumbent, expect_i, "t={t}");
                }
            }
            if t > 0.5 && t < c.right {
                for (oi, oc) in [(false, false), (true, false), (false, true), (true, true)] {
                    let expect_c = oc && !oi;
                    assert_eq!(vote(t, oi, oc, &params) == VoteChoice::Challenger, expect_c, "t={t}");
                }
            }
        }
    }
}
