//! Discretized informed game.
//!
//! The two swing regions are cut into cells; a politician's grid strategy is
//! a subset of cells. Votes are tallied cell by cell with the voting
//! heuristic evaluated at each cell's midpoint, never through the analytic
//! vote-share formula.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;
use crate::verifier::WinningCost;
use crate::voter_model::{vote, ModelParams, Politician};

/// Largest grid the exhaustive mode will enumerate.
pub const MAX_EXHAUSTIVE_CELLS: usize = 20;

/// Upper bound on count vectors visited by the count-based mode.
pub const MAX_COUNT_VECTORS: u64 = 100_000_000;

/// Cells whose masses differ by less than this are treated as equal when
/// grouped into classes; equal-width cells differ only by rounding.
const MASS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `(L, 1/2)`
    Left,
    /// `(1/2, R)`
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub lo: f64,
    pub hi: f64,
    pub region: Region,
}

impl Cell {
    pub fn mass(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// A subset of grid cells, indexed like [`GridGame::cells`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet(Vec<bool>);

impl CellSet {
    pub fn none(n: usize) -> Self {
        CellSet(vec![false; n])
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::none(n);
        for i in indices {
            s.0[i] = true;
        }
        s
    }

    fn from_mask(n: usize, mask: u32) -> Self {
        CellSet((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// Order used for deterministic tie-breaking: membership vectors are
    /// compared from the highest cell index down, so the smaller set is the
    /// one whose bitmask is the smaller integer.
    pub fn canonical_cmp(&self, other: &CellSet) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

/// The informed game restricted to grid strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct GridGame {
    cells: Vec<Cell>,
    n_left: usize,
    params: ModelParams,
}

impl GridGame {
    /// Equal-mass cells within each swing region.
    pub fn new(params: ModelParams, n_left: usize, n_right: usize) -> Result<Self> {
        Self::with_breakpoints(params, n_left, n_right, &[])
    }

    /// Cells whose boundaries include every breakpoint lying strictly inside
    /// a swing region. Each region is first cut at its breakpoints; the
    /// requested cell count is then spread over the pieces in proportion to
    /// their length (at least one cell per piece), with equal-mass cells
    /// inside each piece.
    pub fn with_breakpoints(params: ModelParams, n_left: usize, n_right: usize, breakpoints: &[f64]) -> Result<Self> {
        if n_left == 0 || n_right == 0 {
            return Err(Error::Domain("each swing region needs at least one cell".into()));
        }
        let c = params.cutoffs();
        let left = split_region(c.left, 0.5, n_left, breakpoints);
        let right = split_region(0.5, c.right, n_right, breakpoints);
        Self::from_boundaries(params, &left, &right)
    }

    /// Cells given by explicit ascending boundaries, which must run from `L`
    /// to `1/2` and from `1/2` to `R`.
    pub fn from_boundaries(params: ModelParams, left: &[f64], right: &[f64]) -> Result<Self> {
        let c = params.cutoffs();
        let check = |b: &[f64], lo: f64, hi: f64, name: &str| -> Result<()> {
            if b.len() < 2 || (b[0] - lo).abs() > 1e-12 || (b[b.len() - 1] - hi).abs() > 1e-12 {
                return Err(Error::Domain(format!("{name} boundaries must run from {lo} to {hi}")));
            }
            if b.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Domain(format!("{name} boundaries must be strictly increasing")));
            }
            Ok(())
        };
        check(left, c.left, 0.5, "left")?;
        check(right, 0.5, c.right, "right")?;
        let mut cells = Vec::with_capacity(left.len() + right.len() - 2);
        let mut push = |b: &[f64], region: Region| {
            for w in b.windows(2) {
                cells.push(Cell { lo: w[0], hi: w[1], region });
            }
        };
        push(left, Region::Left);
        push(right, Region::Right);
        Ok(GridGame { cells, n_left: left.len() - 1, params })
    }

    /// A grid whose cell boundaries include every endpoint of both
    /// strategies of the profile.
    pub fn aligned_to(profile: &crate::informed_game::InformedProfile, n_left: usize, n_right: usize) -> Result<Self> {
        let points: Vec<f64> = profile.incumbent().endpoints().chain(profile.challenger().endpoints()).collect();
        Self::with_breakpoints(*profile.params(), n_left, n_right, &points)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.cells.len() - self.n_left
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn cell_masses(&self) -> Vec<f64> {
        self.cells.iter().map(Cell::mass).collect()
    }

    pub fn cost(&self, cells: &CellSet) -> f64 {
        cells.indices().map(|i| self.cells[i].mass()).sum()
    }

    pub fn to_interval_set(&self, cells: &CellSet) -> IntervalSet {
        let pairs: Vec<(f64, f64)> = cells.indices().map(|i| (self.cells[i].lo, self.cells[i].hi)).collect();
        IntervalSet::normalize(&pairs).expect("cell boundaries lie in [0, 1]")
    }

    /// The cells covered by `strategy`. Each cell must be covered up to
    /// `tol` or missed up to `tol`; anything in between is an alignment
    /// error. Mass outside the swing regions is ignored.
    pub fn cells_of(&self, strategy: &IntervalSet, tol: f64) -> Result<CellSet> {
        let mut out = CellSet::none(self.cells.len());
        for (i, cell) in self.cells.iter().enumerate() {
            let covered = strategy.intersect(&IntervalSet::interval(cell.lo, cell.hi)?).measure();
            if covered >= cell.mass() - tol {
                out.0[i] = true;
            } else if covered > tol {
                return Err(Error::Alignment(format!(
                    "strategy {{{strategy}}} covers {covered} of cell [{}, {}]",
                    cell.lo, cell.hi
                )));
            }
        }
        Ok(out)
    }

    /// Incumbent's vote share when the two politicians offer the good to the
    /// given cells, tallied voter block by voter block.
    pub fn incumbent_share(&self, incumbent: &CellSet, challenger: &CellSet) -> f64 {
        let swing: f64 = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let w = vote(c.midpoint(), incumbent.contains(i), challenger.contains(i), &self.params);
                c.mass() * w.doubled_incumbent_weight() as f64 / 2.0
            })
            .sum();
        self.partisan_share() + swing
    }

    /// Incumbent votes from the two partisan blocks, where nobody offers.
    fn partisan_share(&self) -> f64 {
        let c = self.params.cutoffs();
        [(0.0, c.left), (c.right, 1.0)]
            .iter()
            .map(|&(lo, hi)| {
                let w = vote(0.5 * (lo + hi), false, false, &self.params);
                (hi - lo) * w.doubled_incumbent_weight() as f64 / 2.0
            })
            .sum()
    }
}

fn split_region(lo: f64, hi: f64, n: usize, breakpoints: &[f64]) -> Vec<f64> {
    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&b| b > lo + 1e-12 && b < hi - 1e-12).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(lo);
    edges.extend(cuts);
    edges.push(hi);
    let lengths: Vec<f64> = edges.windows(2).map(|w| w[1] - w[0]).collect();
    let counts = apportion(&lengths, n);
    let mut out = vec![lo];
    for (w, &k) in edges.windows(2).zip(&counts) {
        for j in 1..k {
            out.push(w[0] + (w[1] - w[0]) * j as f64 / k as f64);
        }
        out.push(w[1]);
    }
    out
}

/// Largest-remainder apportionment of `n` cells over pieces of the given
/// lengths, with at least one cell per piece.
fn apportion(lengths: &[f64], n: usize) -> Vec<usize> {
    let total: f64 = lengths.iter().sum();
    let n = n.max(lengths.len());
    let ideal: Vec<f64> = lengths.iter().map(|l| n as f64 * l / total).collect();
    let mut counts: Vec<usize> = ideal.iter().map(|x| (x.floor() as usize).max(1)).collect();
    let remainder = |counts: &[usize], i: usize| ideal[i] - counts[i] as f64;
    while counts.iter().sum::<usize>() < n {
        let i = (0..counts.len())
            .max_by(|&a, &b| remainder(&counts, a).total_cmp(&remainder(&counts, b)).then(b.cmp(&a)))
            .expect("at least one piece");
        counts[i] += 1;
    }
    while counts.iter().sum::<usize>() > n {
        let i = (0..counts.len())
            .filter(|&i| counts[i] > 1)
            .min_by(|&a, &b| remainder(&counts, a).total_cmp(&remainder(&counts, b)).then(a.cmp(&b)))
            .expect("some piece has more than one cell");
        counts[i] -= 1;
    }
    counts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every subset of cells; needs at most [`MAX_EXHAUSTIVE_CELLS`] cells.
    Exhaustive,
    /// Every vector of per-class cell counts, where a class groups cells
    /// that are interchangeable for both the tally and the cost. Classes
    /// whose cells cannot gain the responder votes stay at zero.
    CountBased,
    /// Exhaustive when the grid is small enough, count-based otherwise.
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridBestResponse {
    pub min_cost: WinningCost,
    /// Cheapest winning subset; ties go to the smallest set under
    /// [`CellSet::canonical_cmp`].
    pub best_subset: Option<CellSet>,
    pub wins: bool,
}

/// Cells sharing region, opponent coverage, mass, and vote behaviour.
struct CellClass {
    members: Vec<usize>,
    mass: f64,
    /// Doubled Incumbent weight when the responder does not / does offer.
    weight_off: u32,
    weight_on: u32,
}

struct Tally<'a> {
    classes: Vec<CellClass>,
    class_of: Vec<usize>,
    base: f64,
    role: Politician,
    game: &'a GridGame,
}

impl<'a> Tally<'a> {
    fn new(game: &'a GridGame, opponent: &CellSet, role: Politician) -> Self {
        let mut classes: Vec<CellClass> = Vec::new();
        let mut class_of = Vec::with_capacity(game.len());
        for (i, cell) in game.cells.iter().enumerate() {
            let opp = opponent.contains(i);
            let weight = |own: bool| {
                let (by_i, by_c) = match role {
                    Politician::Incumbent => (own, opp),
                    Politician::Challenger => (opp, own),
                };
                vote(cell.midpoint(), by_i, by_c, &game.params).doubled_incumbent_weight()
            };
            let (weight_off, weight_on) = (weight(false), weight(true));
            let mass = cell.mass();
            let found = classes.iter().position(|k| {
                game.cells[k.members[0]].region == cell.region
                    && opponent.contains(k.members[0]) == opp
                    && (k.mass - mass).abs() <= MASS_TOL
                    && k.weight_off == weight_off
                    && k.weight_on == weight_on
            });
            let k = match found {
                Some(k) => k,
                None => {
                    classes.push(CellClass { members: Vec::new(), mass, weight_off, weight_on });
                    classes.len() - 1
                }
            };
            classes[k].members.push(i);
            class_of.push(k);
        }
        Tally { classes, class_of, base: game.partisan_share(), role, game }
    }

    fn share(&self, counts: &[usize]) -> f64 {
        self.base
            + self
                .classes
                .iter()
                .zip(counts)
                .map(|(k, &taken)| {
                    let left_out = k.members.len() - taken;
                    k.mass * (taken as f64 * k.weight_on as f64 + left_out as f64 * k.weight_off as f64) / 2.0
                })
                .sum::<f64>()
    }

    fn cost(&self, counts: &[usize]) -> f64 {
        self.classes.iter().zip(counts).map(|(k, &taken)| taken as f64 * k.mass).sum()
    }

    fn wins(&self, counts: &[usize]) -> bool {
        crate::informed_game::winner_for_share(self.share(counts)) == self.role
    }

    fn exhaustive(&self) -> Option<(f64, CellSet)> {
        let n = self.game.len();
        let mut counts = vec![0usize; self.classes.len()];
        let mut mask: u32 = 0;
        let mut best: Option<(f64, u32)> = None;
        let consider = |counts: &[usize], mask: u32, best: &mut Option<(f64, u32)>| {
            if !self.wins(counts) {
                return;
            }
            let cost = self.cost(counts);
            let better = match *best {
                None => true,
                Some((c, m)) => cost < c || (cost == c && mask < m),
            };
            if better {
                *best = Some((cost, mask));
            }
        };
        consider(&counts, mask, &mut best);
        // Gray-code walk: each step toggles one cell.
        for step in 1u32..(1u32 << n) {
            let bit = step.trailing_zeros() as usize;
            mask ^= 1 << bit;
            if mask >> bit & 1 == 1 {
                counts[self.class_of[bit]] += 1;
            } else {
                counts[self.class_of[bit]] -= 1;
            }
            consider(&counts, mask, &mut best);
        }
        best.map(|(c, m)| (c, CellSet::from_mask(n, m)))
    }

    fn subset_for(&self, counts: &[usize]) -> CellSet {
        let picks = self.classes.iter().zip(counts).flat_map(|(k, &taken)| k.members[..taken].iter().copied());
        CellSet::from_indices(self.game.len(), picks)
    }

    /// Whether offering to a cell of class `k` moves votes toward `role`.
    /// Other cells only add cost, so no cheapest winning set contains them.
    fn helps(&self, k: &CellClass) -> bool {
        match self.role {
            Politician::Incumbent => k.weight_on > k.weight_off,
            Politician::Challenger => k.weight_on < k.weight_off,
        }
    }

    fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|k| if self.helps(k) { k.members.len() } else { 0 }).collect()
    }

    fn count_based(&self) -> Option<(f64, CellSet)> {
        let sizes = self.class_sizes();
        let mut counts = vec![0usize; sizes.len()];
        let mut best: Option<(f64, Vec<usize>, CellSet)> = None;
        loop {
            if self.wins(&counts) {
                let cost = self.cost(&counts);
                let better = match &best {
                    None => true,
                    Some((c, _, s)) => {
                        cost < *c || (cost == *c && self.subset_for(&counts).canonical_cmp(s) == Ordering::Less)
                    }
                };
                if better {
                    best = Some((cost, counts.clone(), self.subset_for(&counts)));
                }
            }
            // odometer increment
            let mut k = 0;
            loop {
                if k == counts.len() {
                    return best.map(|(c, _, s)| (c, s));
                }
                if counts[k] < sizes[k] {
                    counts[k] += 1;
                    break;
                }
                counts[k] = 0;
                k += 1;
            }
        }
    }

    fn count_vectors(&self) -> u64 {
        self.class_sizes()
            .iter()
            .map(|&n| n as u64 + 1)
            .try_fold(1u64, |acc, x| acc.checked_mul(x))
            .unwrap_or(u64::MAX)
    }
}

/// Cheapest grid strategy with which `role` wins against the opponent's
/// fixed cells.
pub fn grid_best_response(
    opponent: &CellSet,
    role: Politician,
    game: &GridGame,
    mode: EnumerationMode,
) -> Result<GridBestResponse> {
    if opponent.len() != game.len() {
        return Err(Error::Domain(format!(
            "opponent subset has {} cells but the grid has {}",
            opponent.len(),
            game.len()
        )));
    }
    let tally = Tally::new(game, opponent, role);
    let exhaustive_fits = game.len() <= MAX_EXHAUSTIVE_CELLS;
    let use_exhaustive = match mode {
        EnumerationMode::Exhaustive if !exhaustive_fits => {
            return Err(Error::Capacity {
                mode: "exhaustive",
                detail: format!("{} cells exceed the limit of {MAX_EXHAUSTIVE_CELLS}", game.len()),
            })
        }
        EnumerationMode::Exhaustive => true,
        EnumerationMode::CountBased => false,
        EnumerationMode::Auto => exhaustive_fits,
    };
    if !use_exhaustive && tally.count_vectors() > MAX_COUNT_VECTORS {
        return Err(Error::Capacity {
            mode: "count-based",
            detail: format!("{} count vectors exceed the limit of {MAX_COUNT_VECTORS}", tally.count_vectors()),
        });
    }
    let best = if use_exhaustive { tally.exhaustive() } else { tally.count_based() };
    Ok(match best {
        Some((cost, subset)) => GridBestResponse {
            min_cost: WinningCost::Finite(cost),
            best_subset: Some(subset),
            wins: true,
        },
        None => GridBestResponse { min_cost: WinningCost::Unbounded, best_subset: None, wins: false },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alpha: f64, v: f64) -> ModelParams {
        ModelParams::new(alpha, v).unwrap()
    }

    #[test]
    fn equal_mass_cells_partition_regions() {
        let params = p(0.9, 0.1);
        let g = GridGame::new(params, 8, 8).unwrap();
        assert_eq!((g.n_left(), g.n_right(), g.len()), (8, 8, 16));
        let c = params.cutoffs();
        let left: f64 = g.cells()[..8].iter().map(Cell::mass).sum();
        let right: f64 = g.cells()[8..].iter().map(Cell::mass).sum();
        assert!((left - (0.5 - c.left)).abs() < 1e-12);
        assert!((right - (c.right - 0.5)).abs() < 1e-12);
        let m = g.cells()[0].mass();
        assert!(g.cells()[..8].iter().all(|x| (x.mass() - m).abs() < 1e-15));
    }

    #[test]
    fn breakpoints_are_respected() {
        let g = GridGame::with_breakpoints(p(0.9, 0.1), 8, 8, &[0.4, 0.6, 0.95]).unwrap();
        assert_eq!(g.len(), 16);
        assert!(g.cells().iter().any(|c| c.hi == 0.4));
        assert!(g.cells().iter().any(|c| c.lo == 0.6));
        assert!(g.cells().iter().all(|c| c.mass() > 0.0));
    }

    #[test]
    fn apportion_keeps_total() {
        assert_eq!(apportion(&[0.1, 0.055], 8), vec![5, 3]);
        assert_eq!(apportion(&[0.3, 0.001, 0.001], 4), vec![2, 1, 1]);
        assert_eq!(apportion(&[1.0, 1.0, 1.0], 2), vec![1, 1, 1]);
    }

    #[test]
    fn alignment_errors() {
        let g = GridGame::new(p(0.9, 0.1), 8, 8).unwrap();
        let off_grid = IntervalSet::interval(0.4, 0.5).unwrap();
        assert!(matches!(g.cells_of(&off_grid, 1e-9), Err(Error::Alignment(_))));
        let right = IntervalSet::interval(0.5, p(0.9, 0.1).cutoffs().right).unwrap();
        let cells = g.cells_of(&right, 1e-9).unwrap();
        assert_eq!(cells.indices().collect::<Vec<_>>(), (8..16).collect::<Vec<_>>());
    }

    #[test]
    fn incumbent_covers_two_cells() {
        let params = p(0.9, 0.1);
        let r = params.cutoffs().right;
        let tail: Vec<f64> = (0..=6).map(|j| 0.6 + (r - 0.6) * j as f64 / 6.0).collect();
        let mut right = vec![0.5, 0.55];
        right.extend(tail);
        let left: Vec<f64> = (0..=8).map(|j| params.cutoffs().left + (0.5 - params.cutoffs().left) * j as f64 / 8.0).collect();
        let g = GridGame::from_boundaries(params, &left, &right).unwrap();
        assert_eq!(g.len(), 16);
        let opp = CellSet::from_indices(16, [8, 9]);
        for mode in [EnumerationMode::Exhaustive, EnumerationMode::CountBased] {
            let br = grid_best_response(&opp, Politician::Incumbent, &g, mode).unwrap();
            assert!(br.wins);
            assert!((br.min_cost.finite().unwrap() - 0.10).abs() < 1e-12);
            assert_eq!(br.best_subset.unwrap().indices().collect::<Vec<_>>(), vec![8, 9]);
        }
    }

    #[test]
    fn challenger_cannot_beat_full_right_swing() {
        let g = GridGame::new(p(0.9, 0.3), 8, 8).unwrap();
        let opp = CellSet::from_indices(16, 8..16);
        let br = grid_best_response(&opp, Politician::Challenger, &g, EnumerationMode::Exhaustive).unwrap();
        assert!(!br.wins);
        assert!(br.min_cost.is_unbounded());
        assert!(br.best_subset.is_none());
    }

    #[test]
    fn empty_opponent_costs_nothing_for_incumbent() {
        let g = GridGame::new(p(0.5, 0.3), 8, 8).unwrap();
        let br = grid_best_response(&CellSet::none(16), Politician::Incumbent, &g, EnumerationMode::Auto).unwrap();
        assert_eq!(br.min_cost, WinningCost::Finite(0.0));
        assert!(br.best_subset.unwrap().is_empty());
    }

    #[test]
    fn challenger_needs_one_extra_cell() {
        let params = p(0.9, 0.3);
        let g = GridGame::new(params, 8, 8).unwrap();
        let opp = CellSet::from_indices(16, [5, 6, 7]);
        let br = grid_best_response(&opp, Politician::Challenger, &g, EnumerationMode::Auto).unwrap();
        let m_left = g.cells()[0].mass();
        let m_right = g.cells()[8].mass();
        // Uncovered left cells can be traded for slightly more right mass,
        // so the grid optimum sits within one right cell above mu(X_I).
        let cost = br.min_cost.finite().unwrap();
        assert!(cost > 3.0 * m_left && cost <= 3.0 * m_left + m_right + 1e-12, "{cost}");
        let subset = br.best_subset.unwrap();
        let as_set = g.to_interval_set(&subset);
        let share = g.incumbent_share(&opp, &subset);
        assert!(share < 0.5 - 1e-9);
        assert!((as_set.measure() - cost).abs() < 1e-12);
    }

    #[test]
    fn capacity_limits() {
        let g = GridGame::new(p(0.5, 0.3), 16, 16).unwrap();
        let r = grid_best_response(&CellSet::none(32), Politician::Incumbent, &g, EnumerationMode::Exhaustive);
        assert!(matches!(r, Err(Error::Capacity { .. })));
        assert!(grid_best_response(&CellSet::none(32), Politician::Incumbent, &g, EnumerationMode::Auto).is_ok());
    }

    #[test]
    fn canonical_order_is_mask_order() {
        let a = CellSet::from_indices(4, [0, 1]);
        let b = CellSet::from_indices(4, [2]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(CellSet::from_mask(4, 0b0011), a);
    }
}
