//! Social welfare of voters: the integral of realized voter payoffs over
//! `[0, 1]` given the winner and its allocation of the public good.
//!
//! Closed forms are provided for every equilibrium scenario, together with
//! a midpoint-rule integrator that evaluates the defining integral directly
//! and serves as an independent check on them.

use crate::error::{Error, Result};
use crate::informed_game::Regime;
use crate::interval_set::IntervalSet;
use crate::voter_model::{regime_boundary, ModelParams, Politician, TOL};

/// Default number of cells for [`welfare_numeric`].
pub const DEFAULT_GRID_N: usize = 100_000;

/// Smallest accepted quadrature grid.
pub const MIN_GRID_N: usize = 1_000;

/// Offset keeping the bisection bracket inside the large-budget regime.
const BRACKET_OFFSET: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InformedScenario {
    LargeBudget,
    SmallBudgetWorst,
    SmallBudgetBest,
}

fn large_budget_formula(a: f64) -> f64 {
    (a.powi(3) - 16.0 * a - 16.0) / (8.0 * (a + 2.0).powi(2))
}

fn worst_case_formula(a: f64, v: f64) -> f64 {
    0.5 * (a * v * v + a * v - 1.0)
}

fn best_case_formula(a: f64, v: f64) -> f64 {
    (a * a * (-v * v) + a * (2.0 * v * v - 2.0 * v - 1.0) + 2.0) / (2.0 * (a - 2.0))
}

fn uninformed_formula(a: f64, v: f64) -> f64 {
    (a + a * a * v - 4.0 * a * v + 2.0) / (a * (4.0 * v - 2.0) - 4.0)
}

/// Closed-form welfare of the informed equilibria. The scenario must match
/// the regime of `params`.
pub fn welfare_informed_closed(params: &ModelParams, scenario: InformedScenario) -> Result<f64> {
    let regime = Regime::classify(params)?;
    let (a, v) = (params.alpha(), params.budget());
    match (scenario, regime) {
        (InformedScenario::LargeBudget, Regime::LargeBudget) => Ok(large_budget_formula(a)),
        (InformedScenario::SmallBudgetWorst, Regime::SmallBudget) => Ok(worst_case_formula(a, v)),
        (InformedScenario::SmallBudgetBest, Regime::SmallBudget) => Ok(best_case_formula(a, v)),
        (scenario, regime) => Err(Error::Domain(format!(
            "scenario {scenario:?} does not apply in the {} regime (alpha = {a}, v = {v})",
            regime.label()
        ))),
    }
}

/// Welfare of the uninformed equilibrium with voters learning their draw.
/// Equals `(a s_I - 1) / 2` at the equilibrium share `s_I`.
pub fn welfare_uninformed_closed(params: &ModelParams) -> f64 {
    uninformed_formula(params.alpha(), params.budget())
}

/// Welfare when neither politicians nor voters know who gets the good:
/// `(v a - 1) / 2`.
pub fn welfare_uninformed_ext_closed(params: &ModelParams) -> f64 {
    (params.budget() * params.alpha() - 1.0) / 2.0
}

/// How the winner distributes the public good.
#[derive(Debug, Clone, PartialEq)]
pub enum Allocation {
    /// Every voter in the set receives the good.
    Targeted(IntervalSet),
    /// Each voter receives the good with this probability.
    Share(f64),
}

/// Composite midpoint rule for the welfare integral.
///
/// The uniform `grid_n`-cell grid is refined at every endpoint of a
/// targeted allocation, so the integrand is linear on each cell and the
/// rule is exact up to rounding.
pub fn welfare_numeric(winner: Politician, allocation: &Allocation, params: &ModelParams, grid_n: usize) -> Result<f64> {
    if grid_n < MIN_GRID_N {
        return Err(Error::Domain(format!("grid_n must be at least {MIN_GRID_N}, got {grid_n}")));
    }
    if let Allocation::Share(s) = allocation {
        if !(0.0..=1.0).contains(s) {
            return Err(Error::Domain(format!("allocation share must lie in [0, 1], got {s}")));
        }
    }
    let alpha = params.alpha();
    let mut nodes: Vec<f64> = (0..=grid_n).map(|k| k as f64 / grid_n as f64).collect();
    if let Allocation::Targeted(set) = allocation {
        nodes.extend(set.endpoints());
        nodes.sort_by(f64::total_cmp);
        nodes.dedup();
    }
    let integrand = |t: f64| {
        let ideology = match winner {
            Politician::Incumbent => -(1.0 - t),
            Politician::Challenger => -t,
        };
        let coverage = match allocation {
            Allocation::Targeted(set) => {
                if set.contains(t) {
                    1.0
                } else {
                    0.0
                }
            }
            Allocation::Share(s) => *s,
        };
        ideology + alpha * (1.0 - t) * coverage
    };
    Ok(nodes
        .windows(2)
        .map(|w| (w[1] - w[0]) * integrand(0.5 * (w[0] + w[1])))
        .sum())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

/// Budget above which uninformed politicians deliver higher voter welfare:
/// `(-a^3 - 6a^2 - 8a) / (2a^3 - 16a - 32)`.
///
/// Fails with [`Error::Oracle`] if the cutoff does not exceed the regime
/// boundary, where the comparison against the large-budget value applies.
pub fn welfare_cutoff(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let a = alpha;
    let cutoff = (-a.powi(3) - 6.0 * a * a - 8.0 * a) / (2.0 * a.powi(3) - 16.0 * a - 32.0);
    let boundary = regime_boundary(a);
    if cutoff <= boundary {
        return Err(Error::Oracle(format!(
            "welfare cutoff {cutoff} does not exceed the regime boundary {boundary} at alpha = {a}"
        )));
    }
    Ok(cutoff)
}

/// Locates the welfare cutoff by bisection on the sign of
/// `W_informed(large budget) - W_uninformed(v)` over `(R - 1/2, 1)`.
pub fn welfare_cutoff_bisect(alpha: f64, tol: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(tol >= 1e-12) {
        return Err(Error::Domain(format!("bisection tolerance must be at least 1e-12, got {tol}")));
    }
    let informed = large_budget_formula(alpha);
    let gap = |v: f64| informed - uninformed_formula(alpha, v);
    let (mut lo, mut hi) = (regime_boundary(alpha) + BRACKET_OFFSET, 1.0);
    let (g_lo, g_hi) = (gap(lo), gap(hi));
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return Err(Error::Oracle(format!(
            "no sign change on [{lo}, {hi}] at alpha = {alpha}: gaps {g_lo}, {g_hi}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let g = gap(mid);
        if g == 0.0 {
            return Ok(mid);
        }
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Cutoff for the comparison against the extension: the regime boundary
/// `R - 1/2` itself.
pub fn welfare_cutoff_ext(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let cutoff = regime_boundary(alpha);
    if !(cutoff > 0.0 && cutoff < 1.0) {
        return Err(Error::Oracle(format!("extension cutoff {cutoff} outside (0, 1)")));
    }
    Ok(cutoff)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Better {
    Informed,
    Uninformed,
    Tie,
}

impl Better {
    fn compare(informed: f64, uninformed: f64) -> Better {
        let d = informed - uninformed;
        if d > TOL {
            Better::Informed
        } else if d < -TOL {
            Better::Uninformed
        } else {
            Better::Tie
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Better::Informed => "informed",
            Better::Uninformed => "uninformed",
            Better::Tie => "tie",
        }
    }
}

/// Voter welfare in every scenario at one `(alpha, v)`.
///
/// In the large-budget regime the informed equilibrium is unique and
/// `informed_worst == informed_best`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelfareReport {
    pub alpha: f64,
    pub v: f64,
    pub regime: Regime,
    pub informed_worst: f64,
    pub informed_best: f64,
    pub uninformed: f64,
    pub uninformed_ext: f64,
    /// Informed (worst case in the small-budget regime) vs. uninformed.
    pub better: Better,
    /// Informed (worst case in the small-budget regime) vs. the extension.
    pub better_ext: Better,
}

impl WelfareReport {
    pub fn at(params: &ModelParams) -> Result<WelfareReport> {
        let regime = Regime::classify(params)?;
        let (informed_worst, informed_best) = match regime {
            Regime::SmallBudget => (
                welfare_informed_closed(params, InformedScenario::SmallBudgetWorst)?,
                welfare_informed_closed(params, InformedScenario::SmallBudgetBest)?,
            ),
            Regime::LargeBudget => {
                let w = welfare_informed_closed(params, InformedScenario::LargeBudget)?;
                (w, w)
            }
        };
        let uninformed = welfare_uninformed_closed(params);
        let uninformed_ext = welfare_uninformed_ext_closed(params);
        Ok(WelfareReport {
            alpha: params.alpha(),
            v: params.budget(),
            regime,
            informed_worst,
            informed_best,
            uninformed,
            uninformed_ext,
            better: Better::compare(informed_worst, uninformed),
            better_ext: Better::compare(informed_worst, uninformed_ext),
        })
    }

    /// The informed value used in comparisons: the worst case when the
    /// equilibrium is not unique.
    pub fn informed_value(&self) -> f64 {
        self.informed_worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alpha: f64, v: f64) -> ModelParams {
        ModelParams::new(alpha, v).unwrap()
    }

    #[test]
    fn informed_closed_forms() {
        let w = welfare_informed_closed(&p(0.9, 0.3), InformedScenario::LargeBudget).unwrap();
        assert!((w - (-0.441_007_728_894_173_6)).abs() < 1e-15);
        let w = welfare_informed_closed(&p(0.9, 0.1), InformedScenario::SmallBudgetWorst).unwrap();
        assert!((w - (-0.4505)).abs() < 1e-15);
        let w = welfare_informed_closed(&p(0.9, 0.1), InformedScenario::SmallBudgetBest).unwrap();
        assert!((w - (-0.422_681_818_181_818_16)).abs() < 1e-15);
    }

    #[test]
    fn scenario_regime_mismatch() {
        assert!(matches!(
            welfare_informed_closed(&p(0.9, 0.1), InformedScenario::LargeBudget),
            Err(Error::Domain(_))
        ));
        assert!(welfare_informed_closed(&p(0.9, 0.3), InformedScenario::SmallBudgetBest).is_err());
        assert!(matches!(
            welfare_informed_closed(&p(0.5, 0.6 - 0.5), InformedScenario::SmallBudgetWorst),
            Err(Error::RegimeBoundary { .. })
        ));
    }

    #[test]
    fn uninformed_closed_forms() {
        assert!((welfare_uninformed_closed(&p(0.9, 0.1)) - (-0.481_801_470_588_235_3)).abs() < 1e-15);
        assert!((welfare_uninformed_closed(&p(0.9, 0.3)) - (-0.437_076_271_186_440_66)).abs() < 1e-15);
        assert!((welfare_uninformed_closed(&p(0.9, 1e-15)) + 0.5).abs() < 1e-12);
        assert!((welfare_uninformed_ext_closed(&p(0.9, 0.3)) + 0.365).abs() < 1e-15);
        assert!((welfare_uninformed_ext_closed(&p(0.9, 0.1)) + 0.455).abs() < 1e-15);
        assert!((welfare_uninformed_ext_closed(&p(0.9, 1e-15)) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn numeric_integration() {
        let params = p(0.9, 0.1);
        let s = IntervalSet::interval(0.4, 0.5).unwrap();
        let w = welfare_numeric(Politician::Incumbent, &Allocation::Targeted(s), &params, DEFAULT_GRID_N).unwrap();
        assert!((w + 0.4505).abs() < 1e-9);

        let w = welfare_numeric(Politician::Incumbent, &Allocation::Targeted(IntervalSet::empty()), &params, 1000)
            .unwrap();
        assert!((w + 0.5).abs() < 1e-12);

        let s_i = crate::uninformed_game::equilibrium_uninformed(&params).s_incumbent();
        let w = welfare_numeric(Politician::Incumbent, &Allocation::Share(s_i), &params, DEFAULT_GRID_N).unwrap();
        assert!((w + 0.481_801_470_588_235_3).abs() < 1e-9);

        let w = welfare_numeric(Politician::Challenger, &Allocation::Share(0.0), &params, 1000).unwrap();
        assert!((w + 0.5).abs() < 1e-12);
    }

    #[test]
    fn numeric_rejects_coarse_grid() {
        let r = welfare_numeric(Politician::Incumbent, &Allocation::Share(0.2), &p(0.5, 0.5), 999);
        assert!(r.is_err());
    }

    #[test]
    fn cutoffs() {
        assert!((welfare_cutoff(0.9).unwrap() - 0.284_566_774_954_385_65).abs() < 1e-15);
        assert!((welfare_cutoff(0.5).unwrap() - 0.141_509_433_962_264_15).abs() < 1e-15);
        assert!(welfare_cutoff(0.9).unwrap() > regime_boundary(0.9));
        assert!(welfare_cutoff(1.0).is_err());

        assert!((welfare_cutoff_ext(0.9).unwrap() - 0.155_172_413_793_103_45).abs() < 1e-15);
        assert!((welfare_cutoff_ext(0.5).unwrap() - 0.1).abs() < 1e-15);
        assert!(regime_boundary(1e-12).abs() < 1e-12);
    }

    #[test]
    fn bisection_matches_closed_form() {
        for a in [0.1, 0.5, 0.9] {
            let b = welfare_cutoff_bisect(a, 1e-12).unwrap();
            assert!((b - welfare_cutoff(a).unwrap()).abs() < 1e-9, "alpha {a}");
        }
        assert!((welfare_cutoff_bisect(0.9, 1e-9).unwrap() - 0.284_566_8).abs() < 1e-7);
        assert!(welfare_cutoff_bisect(0.9, 1e-13).is_err());
    }

    #[test]
    fn report_labels() {
        let r = WelfareReport::at(&p(0.9, 0.1)).unwrap();
        assert_eq!(r.regime, Regime::SmallBudget);
        assert!(r.informed_worst <= r.informed_best);
        assert_eq!(r.better, Better::Informed);
        assert_eq!(r.better_ext, Better::Informed);

        let r = WelfareReport::at(&p(0.9, 0.3)).unwrap();
        assert_eq!(r.regime, Regime::LargeBudget);
        assert_eq!(r.informed_worst, r.informed_best);
        assert_eq!(r.better, Better::Uninformed);
        assert_eq!(r.better_ext, Better::Uninformed);

        let r = WelfareReport::at(&p(0.9, 0.2)).unwrap();
        assert_eq!(r.better, Better::Informed);
        assert_eq!(r.better_ext, Better::Uninformed);
    }

    #[test]
    fn discontinuity_at_boundary() {
        let a = 0.9;
        let b = regime_boundary(a);
        let below = p(a, b - 1e-10);
        let worst = welfare_informed_closed(&below, InformedScenario::SmallBudgetWorst).unwrap();
        let best = welfare_informed_closed(&below, InformedScenario::SmallBudgetBest).unwrap();
        let above = welfare_informed_closed(&p(a, b + 1e-10), InformedScenario::LargeBudget).unwrap();
        assert!((worst + 0.419_337_098_692_033_3).abs() < 1e-9);
        assert!((best + 0.383_876_067_452_167_35).abs() < 1e-9);
        assert!(worst > above && best > above);
    }
}
