//! The game between informed politicians, who promise the public good to
//! chosen interval sets of voters.
//!
//! Only swing voters respond to offers. A left-leaning swing voter in
//! `(L, 1/2)` switches to the Incumbent when only the Incumbent offers
//! the good; a right-leaning swing voter in `(1/2, R)` switches to the
//! Challenger when only the Challenger does. Everything else is decided by
//! ideology, which splits the electorate at `1/2`.

use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;
use crate::verifier::{Deviation, Strategy, VerificationReport, WinningCost};
use crate::voter_model::{ModelParams, Politician, TOL};

/// Budgets within this distance of the regime boundary are rejected.
pub const REGIME_BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `v < R - 1/2`: each politician spends the whole budget on the
    /// opponent's moderate supporters.
    SmallBudget,
    /// `v > R - 1/2`: both target all moderate right-leaning voters.
    LargeBudget,
}

impl Regime {
    pub fn classify(params: &ModelParams) -> Result<Regime> {
        let boundary = params.cutoffs().right_swing_mass();
        let v = params.budget();
        if (v - boundary).abs() <= REGIME_BOUNDARY_TOL {
            Err(Error::RegimeBoundary { alpha: params.alpha(), v })
        } else if v < boundary {
            Ok(Regime::SmallBudget)
        } else {
            Ok(Regime::LargeBudget)
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::SmallBudget => "small_budget",
            Regime::LargeBudget => "large_budget",
        }
    }
}

/// Where the Incumbent places its spending in the small-budget regime.
/// The two extremes bound voter welfare across the equilibrium family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// The richest moderate left-leaning voters, `[1/2 - v, 1/2]`.
    WorstCase,
    /// The poorest moderate left-leaning voters, `[L, L + v]`.
    BestCase,
}

/// `[L, 1/2]` as an interval set.
pub fn left_swing_region(params: &ModelParams) -> IntervalSet {
    let c = params.cutoffs();
    IntervalSet::interval(c.left, 0.5).expect("L < 1/2 for valid params")
}

/// `[1/2, R]` as an interval set.
pub fn right_swing_region(params: &ModelParams) -> IntervalSet {
    let c = params.cutoffs();
    IntervalSet::interval(0.5, c.right).expect("1/2 < R for valid params")
}

/// A strategy split into left-swing part, right-swing part, and the mass
/// spent on partisans.
#[derive(Debug, Clone, PartialEq)]
pub struct SwingDecomposition {
    pub left: IntervalSet,
    pub right: IntervalSet,
    pub waste: f64,
}

pub fn decompose(strategy: &IntervalSet, params: &ModelParams) -> SwingDecomposition {
    let left = strategy.intersect(&left_swing_region(params));
    let right = strategy.intersect(&right_swing_region(params));
    let waste = (strategy.measure() - left.measure() - right.measure()).max(0.0);
    SwingDecomposition { left, right, waste }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InformedProfile {
    incumbent: IntervalSet,
    challenger: IntervalSet,
    params: ModelParams,
}

impl InformedProfile {
    /// Rejects strategies whose measure exceeds the budget by more than [`TOL`].
    pub fn new(incumbent: IntervalSet, challenger: IntervalSet, params: ModelParams) -> Result<Self> {
        for (who, s) in [(Politician::Incumbent, &incumbent), (Politician::Challenger, &challenger)] {
            if s.measure() > params.budget() + TOL {
                return Err(Error::Domain(format!(
                    "{who} strategy has measure {} above the budget {}",
                    s.measure(),
                    params.budget()
                )));
            }
        }
        Ok(InformedProfile { incumbent, challenger, params })
    }

    pub fn incumbent(&self) -> &IntervalSet {
        &self.incumbent
    }

    pub fn challenger(&self) -> &IntervalSet {
        &self.challenger
    }

    pub fn strategy(&self, who: Politician) -> &IntervalSet {
        match who {
            Politician::Incumbent => &self.incumbent,
            Politician::Challenger => &self.challenger,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformedOutcome {
    pub incumbent_share: f64,
    pub winner: Politician,
    pub payoff_incumbent: f64,
    pub payoff_challenger: f64,
}

impl InformedOutcome {
    pub fn challenger_share(&self) -> f64 {
        1.0 - self.incumbent_share
    }
}

/// `1/2 - mu(Y_C \ Y_I) + mu(X_I \ X_C)`.
pub fn incumbent_vote_share(profile: &InformedProfile) -> f64 {
    let i = decompose(&profile.incumbent, &profile.params);
    let c = decompose(&profile.challenger, &profile.params);
    0.5 - c.right.difference(&i.right).measure() + i.left.difference(&c.left).measure()
}

/// Ties favor the Incumbent; shares are compared with tolerance [`TOL`].
pub fn winner_for_share(incumbent_share: f64) -> Politician {
    if incumbent_share >= 0.5 - TOL {
        Politician::Incumbent
    } else {
        Politician::Challenger
    }
}

pub fn outcome(profile: &InformedProfile) -> InformedOutcome {
    let incumbent_share = incumbent_vote_share(profile);
    let winner = winner_for_share(incumbent_share);
    let payoff = profile.params.budget() - profile.strategy(winner).measure();
    let (payoff_incumbent, payoff_challenger) = match winner {
        Politician::Incumbent => (payoff, 0.0),
        Politician::Challenger => (0.0, payoff),
    };
    InformedOutcome { incumbent_share, winner, payoff_incumbent, payoff_challenger }
}

/// The canonical equilibrium for the given placement.
///
/// In the large-budget regime both politicians target `[1/2, R]` and the
/// placement is irrelevant. In the small-budget regime the Challenger plays
/// `[1/2, 1/2 + v]`.
pub fn equilibrium_informed(params: &ModelParams, placement: Placement) -> Result<InformedProfile> {
    match Regime::classify(params)? {
        Regime::LargeBudget => {
            let s = right_swing_region(params);
            InformedProfile::new(s.clone(), s, *params)
        }
        Regime::SmallBudget => {
            let start = match placement {
                Placement::WorstCase => 0.5 - params.budget(),
                Placement::BestCase => params.cutoffs().left,
            };
            small_budget_equilibrium_at(params, start)
        }
    }
}

/// Small-budget equilibrium with the Incumbent targeting `[start, start + v]`,
/// for any `start` in `[L, 1/2 - v]`.
pub fn small_budget_equilibrium_at(params: &ModelParams, start: f64) -> Result<InformedProfile> {
    if Regime::classify(params)? != Regime::SmallBudget {
        return Err(Error::Domain(format!(
            "budget {} is in the large-budget regime; the small-budget family does not apply",
            params.budget()
        )));
    }
    let v = params.budget();
    let left = params.cutoffs().left;
    if start < left - TOL || start + v > 0.5 + TOL {
        return Err(Error::Domain(format!(
            "placement [{start}, {}] leaves the left swing region [{left}, 0.5]",
            start + v
        )));
    }
    let start = start.clamp(left, 0.5 - v);
    let incumbent = IntervalSet::interval(start, start + v)?;
    let challenger = IntervalSet::interval(0.5, 0.5 + v)?;
    InformedProfile::new(incumbent, challenger, *params)
}

/// Cheapest expenditure with which the Incumbent reaches half the vote:
/// `mu(Y_C)`.
pub fn min_winning_cost_incumbent(challenger: &IntervalSet, params: &ModelParams) -> f64 {
    decompose(challenger, params).right.measure()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChallengerWinningCost {
    pub infimum: WinningCost,
    /// Whether the infimum itself wins. The Challenger needs a strict
    /// majority, so it never does.
    pub attainable: bool,
}

/// The Challenger wins iff `mu(Y_C \ Y_I) > mu(X_I \ X_C)`. Covering `X_I`
/// and adding any positive mass of uncovered right-swing voters does so, so
/// the infimum is `mu(X_I)` whenever such mass exists.
pub fn min_winning_cost_challenger(incumbent: &IntervalSet, params: &ModelParams) -> ChallengerWinningCost {
    let d = decompose(incumbent, params);
    let free_right = right_swing_region(params).difference(&d.right).measure();
    let infimum = if free_right > 0.0 {
        WinningCost::Finite(d.left.measure())
    } else {
        WinningCost::Unbounded
    };
    ChallengerWinningCost { infimum, attainable: false }
}

/// Analytic equilibrium check built on the min-winning-cost formulas.
///
/// The profile passes when the winner spends no more than its cheapest
/// winning expenditure and the loser cannot win while spending strictly
/// less than the budget.
pub fn is_equilibrium_informed(profile: &InformedProfile) -> VerificationReport {
    let params = &profile.params;
    let v = params.budget();
    let out = outcome(profile);
    let winner = out.winner;
    let actual = profile.strategy(winner).measure();
    let i = decompose(&profile.incumbent, params);
    let c = decompose(&profile.challenger, params);
    let free_right = right_swing_region(params).difference(&i.right);
    let free_mass = free_right.measure();

    // Challenger's cheapest winning shape: copy X_I, add a sliver of free right swing.
    let challenger_deviation = |budget_cap: f64| {
        let sliver = free_mass.min(budget_cap - i.left.measure()) / 2.0;
        let s = i.left.union(&free_right.leftmost(sliver));
        let cost = s.measure();
        Deviation { player: Politician::Challenger, strategy: Strategy::Targeted(s), cost }
    };
    let incumbent_deviation = || Deviation {
        player: Politician::Incumbent,
        strategy: Strategy::Targeted(c.right.clone()),
        cost: c.right.measure(),
    };

    let mut notes = Vec::new();
    let mut witness = None;
    let (winner_min_cost, winner_overspends, loser_can_win) = match winner {
        Politician::Incumbent => {
            let min_cost = min_winning_cost_incumbent(&profile.challenger, params);
            let overspends = actual > min_cost + TOL;
            if overspends {
                notes.push(format!(
                    "Incumbent wins spending {} but covering the Challenger's right-swing offers costs only {}",
                    crate::format::sig9(actual),
                    crate::format::sig9(min_cost)
                ));
                witness = Some(incumbent_deviation());
            }
            let x_i = i.left.measure();
            let loser_can_win = x_i < v - TOL && free_mass > TOL;
            if loser_can_win {
                notes.push(format!(
                    "Challenger loses but can copy the Incumbent's left-swing offers ({}) and add uncovered right-swing voters under the budget",
                    crate::format::sig9(x_i)
                ));
                witness.get_or_insert_with(|| challenger_deviation(v));
            }
            (WinningCost::Finite(min_cost), overspends, loser_can_win)
        }
        Politician::Challenger => {
            let min_cost = min_winning_cost_challenger(&profile.incumbent, params).infimum;
            let overspends = match min_cost {
                WinningCost::Finite(m) => actual > m + TOL,
                WinningCost::Unbounded => false,
            };
            if overspends {
                notes.push(format!(
                    "Challenger wins spending {} but could win spending just above {}",
                    crate::format::sig9(actual),
                    min_cost
                ));
                witness = Some(challenger_deviation(actual));
            }
            let y_c = c.right.measure();
            let loser_can_win = y_c < v - TOL;
            if loser_can_win {
                notes.push(format!(
                    "Incumbent loses but covering the Challenger's right-swing offers costs {} < v",
                    crate::format::sig9(y_c)
                ));
                witness.get_or_insert_with(incumbent_deviation);
            } else {
                notes.push(format!(
                    "Incumbent loses with share {}; its min winning cost {} is not below the budget",
                    crate::format::sig9(out.incumbent_share),
                    crate::format::sig9(y_c)
                ));
            }
            (min_cost, overspends, loser_can_win)
        }
    };
    VerificationReport::assemble(
        winner,
        winner_min_cost,
        actual,
        winner_overspends,
        loser_can_win,
        witness,
        notes.join("; "),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::Violation;

    fn p(alpha: f64, v: f64) -> ModelParams {
        ModelParams::new(alpha, v).unwrap()
    }

    fn set(lo: f64, hi: f64) -> IntervalSet {
        IntervalSet::interval(lo, hi).unwrap()
    }

    fn profile(si: IntervalSet, sc: IntervalSet, alpha: f64, v: f64) -> InformedProfile {
        InformedProfile::new(si, sc, p(alpha, v)).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let params = p(0.9, 0.5);
        let d = decompose(&set(0.4, 0.5), &params);
        assert_eq!(d.left, set(0.4, 0.5));
        assert!(d.right.is_empty());
        assert_eq!(d.waste, 0.0);

        let d = decompose(&set(0.0, 0.2), &params);
        assert!((d.left.intervals()[0].lo() - 1.0 / 11.0).abs() < 1e-15);
        assert!((d.waste - 1.0 / 11.0).abs() < 1e-12);

        let r = params.cutoffs().right;
        let d = decompose(&set(0.5, r), &params);
        assert_eq!(d.right, right_swing_region(&params));
        assert!(d.waste.abs() < 1e-15);
    }

    #[test]
    fn vote_shares() {
        let s = incumbent_vote_share(&profile(set(0.4, 0.5), set(0.5, 0.6), 0.9, 0.1));
        assert!((s - 0.5).abs() < 1e-12);
        let s = incumbent_vote_share(&profile(IntervalSet::empty(), IntervalSet::empty(), 0.9, 0.1));
        assert_eq!(s, 0.5);
        let s = incumbent_vote_share(&profile(IntervalSet::empty(), set(0.5, 0.6), 0.9, 0.1));
        assert!((s - 0.4).abs() < 1e-12);
    }

    #[test]
    fn outcomes() {
        let eq = equilibrium_informed(&p(0.9, 0.1), Placement::WorstCase).unwrap();
        let o = outcome(&eq);
        assert_eq!(o.winner, Politician::Incumbent);
        assert!(o.payoff_incumbent.abs() < 1e-12);
        assert_eq!(o.payoff_challenger, 0.0);

        let o = outcome(&profile(IntervalSet::empty(), IntervalSet::empty(), 0.9, 0.1));
        assert_eq!(o.winner, Politician::Incumbent);
        assert_eq!(o.payoff_incumbent, 0.1);

        let o = outcome(&profile(IntervalSet::empty(), set(0.5, 0.51), 0.9, 0.1));
        assert_eq!(o.winner, Politician::Challenger);
        assert!((o.incumbent_share - 0.49).abs() < 1e-12);
        assert!((o.payoff_challenger - 0.09).abs() < 1e-12);
        assert_eq!(o.payoff_incumbent, 0.0);
    }

    #[test]
    fn equilibrium_constructions() {
        let worst = equilibrium_informed(&p(0.9, 0.1), Placement::WorstCase).unwrap();
        assert_eq!(worst.incumbent().to_string(), "0.4,0.5");
        assert_eq!(worst.challenger().to_string(), "0.5,0.6");

        let best = equilibrium_informed(&p(0.9, 0.1), Placement::BestCase).unwrap();
        let i = best.incumbent().intervals()[0];
        assert!((i.lo() - 0.090_909_1).abs() < 1e-7);
        assert!((i.hi() - 0.190_909_1).abs() < 1e-7);

        let r = 19.0 / 29.0;
        for placement in [Placement::WorstCase, Placement::BestCase] {
            let large = equilibrium_informed(&p(0.9, 0.3), placement).unwrap();
            assert_eq!(large.incumbent(), large.challenger());
            assert!((large.incumbent().intervals()[0].hi() - r).abs() < 1e-15);
            assert!((large.incumbent().intervals()[0].hi() - 0.655_172_4).abs() < 1e-7);
        }
    }

    #[test]
    fn boundary_budget_is_rejected() {
        let b = 1.5 / 2.5 - 0.5;
        let err = equilibrium_informed(&p(0.5, b), Placement::WorstCase).unwrap_err();
        assert!(matches!(err, Error::RegimeBoundary { .. }));
        assert!(equilibrium_informed(&p(0.5, 0.1), Placement::BestCase).is_err());
    }

    #[test]
    fn placement_offsets() {
        let params = p(0.9, 0.1);
        assert!(small_budget_equilibrium_at(&params, 0.2).is_ok());
        assert!(small_budget_equilibrium_at(&params, 0.45).is_err());
        assert!(small_budget_equilibrium_at(&params, 0.05).is_err());
        assert!(small_budget_equilibrium_at(&p(0.9, 0.3), 0.2).is_err());
    }

    #[test]
    fn budget_cap_enforced() {
        assert!(InformedProfile::new(set(0.3, 0.5), IntervalSet::empty(), p(0.9, 0.1)).is_err());
    }

    #[test]
    fn incumbent_min_costs() {
        let params = p(0.9, 0.1);
        assert!((min_winning_cost_incumbent(&set(0.5, 0.6), &params) - 0.1).abs() < 1e-12);
        assert_eq!(min_winning_cost_incumbent(&IntervalSet::empty(), &params), 0.0);
        assert_eq!(min_winning_cost_incumbent(&set(0.0, 0.05), &params), 0.0);
    }

    #[test]
    fn challenger_min_costs() {
        let params = p(0.9, 0.1);
        let c = min_winning_cost_challenger(&set(0.4, 0.5), &params);
        assert!((c.infimum.finite().unwrap() - 0.1).abs() < 1e-12);
        assert!(!c.attainable);

        let c = min_winning_cost_challenger(&right_swing_region(&params), &params);
        assert!(c.infimum.is_unbounded());
        assert!(!c.attainable);

        let c = min_winning_cost_challenger(&IntervalSet::empty(), &params);
        assert_eq!(c.infimum, WinningCost::Finite(0.0));
    }

    #[test]
    fn analytic_checker_accepts_equilibria() {
        let eq = equilibrium_informed(&p(0.9, 0.1), Placement::WorstCase).unwrap();
        assert!(is_equilibrium_informed(&eq).is_equilibrium());
        let eq = equilibrium_informed(&p(0.9, 0.3), Placement::WorstCase).unwrap();
        let r = is_equilibrium_informed(&eq);
        assert!(r.is_equilibrium(), "{r}");
        assert!(!r.loser_can_win_under_budget);
    }

    #[test]
    fn analytic_checker_rejects_underspending_incumbent() {
        let prof = profile(set(0.45, 0.5), set(0.5, 0.6), 0.9, 0.1);
        assert!((outcome(&prof).incumbent_share - 0.45).abs() < 1e-12);
        let r = is_equilibrium_informed(&prof);
        assert!(!r.is_equilibrium());
        assert_eq!(r.winner, Politician::Challenger);
        assert_eq!(r.violations, vec![Violation::WinnerOverspends]);
        assert!(!r.loser_can_win_under_budget);
        let w = r.witness_deviation.expect("witness");
        assert_eq!(w.player, Politician::Challenger);
        assert!(w.cost < 0.1);
        let Strategy::Targeted(s) = w.strategy else { panic!("informed witness") };
        let dev = InformedProfile::new(prof.incumbent().clone(), s, *prof.params()).unwrap();
        assert_eq!(outcome(&dev).winner, Politician::Challenger);
    }

    #[test]
    fn analytic_checker_finds_challenger_deviation() {
        // Incumbent overspends on waste and leaves the Challenger room.
        let prof = profile(set(0.45, 0.5), IntervalSet::empty(), 0.9, 0.1);
        let r = is_equilibrium_informed(&prof);
        assert!(!r.is_equilibrium());
        assert!(r.violations.contains(&Violation::WinnerOverspends));
        assert!(r.violations.contains(&Violation::LoserCanWinUnderBudget));
    }

    #[test]
    fn wasted_mass_leaves_share_unchanged() {
        let base = profile(set(0.4, 0.45), set(0.5, 0.55), 0.9, 0.2);
        let padded = profile(
            set(0.4, 0.45).union(&set(0.0, 0.05)),
            set(0.5, 0.55).union(&set(0.9, 0.95)),
            0.9,
            0.2,
        );
        assert!((incumbent_vote_share(&base) - incumbent_vote_share(&padded)).abs() < 1e-15);
    }
}
