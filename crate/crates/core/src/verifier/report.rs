use std::fmt;

use crate::interval_set::IntervalSet;
use crate::voter_model::Politician;

/// Cheapest expenditure with which a politician wins, or `Unbounded` when no
/// strategy wins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WinningCost {
    Finite(f64),
    Unbounded,
}

impl WinningCost {
    pub fn finite(self) -> Option<f64> {
        match self {
            WinningCost::Finite(c) => Some(c),
            WinningCost::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, WinningCost::Unbounded)
    }
}

impl fmt::Display for WinningCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WinningCost::Finite(c) => write!(f, "{}", crate::format::sig9(*c)),
            WinningCost::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Strategy {
    Targeted(IntervalSet),
    Share(f64),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Targeted(s) => write!(f, "{{{s}}}"),
            Strategy::Share(s) => write!(f, "share {}", crate::format::sig9(*s)),
        }
    }
}

/// A unilateral deviation that improves the deviating player's payoff.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub player: Politician,
    pub strategy: Strategy,
    pub cost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equilibrium,
    NotEquilibrium,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// The winner could still win while spending strictly less.
    WinnerOverspends,
    /// The loser has a winning strategy costing strictly less than the budget.
    LoserCanWinUnderBudget,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub winner: Politician,
    pub winner_min_cost: WinningCost,
    pub winner_actual_cost: f64,
    pub loser_can_win_under_budget: bool,
    pub violations: Vec<Violation>,
    pub witness_deviation: Option<Deviation>,
    pub notes: String,
}

impl VerificationReport {
    pub fn is_equilibrium(&self) -> bool {
        self.verdict == Verdict::Equilibrium
    }

    /// Derives the verdict from the two conditions.
    pub(crate) fn assemble(
        winner: Politician,
        winner_min_cost: WinningCost,
        winner_actual_cost: f64,
        winner_overspends: bool,
        loser_can_win_under_budget: bool,
        witness_deviation: Option<Deviation>,
        notes: String,
    ) -> Self {
        let mut violations = Vec::new();
        if winner_overspends {
            violations.push(Violation::WinnerOverspends);
        }
        if loser_can_win_under_budget {
            violations.push(Violation::LoserCanWinUnderBudget);
        }
        let verdict =
            if violations.is_empty() { Verdict::Equilibrium } else { Verdict::NotEquilibrium };
        VerificationReport {
            verdict,
            winner,
            winner_min_cost,
            winner_actual_cost,
            loser_can_win_under_budget,
            violations,
            witness_deviation,
            notes,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Equilibrium => "equilibrium",
            Verdict::NotEquilibrium => "not_equilibrium",
        };
        writeln!(f, "verdict: {verdict}")?;
        writeln!(f, "winner: {}", self.winner)?;
        writeln!(f, "winner_min_cost: {}", self.winner_min_cost)?;
        writeln!(f, "winner_actual_cost: {}", crate::format::sig9(self.winner_actual_cost))?;
        writeln!(f, "loser_can_win_under_budget: {}", self.loser_can_win_under_budget)?;
        for v in &self.violations {
            writeln!(f, "violation: {v:?}")?;
        }
        if let Some(w) = &self.witness_deviation {
            writeln!(
                f,
                "witness: {} plays {} at cost {}",
                w.player,
                w.strategy,
                crate::format::sig9(w.cost)
            )?;
        }
        if !self.notes.is_empty() {
            writeln!(f, "notes: {}", self.notes)?;
        }
        Ok(())
    }
}
