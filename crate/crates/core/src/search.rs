//! Backtracking search for graph homomorphisms into a reflexive target.
//!
//! Variables are domain points taken in index order and values are codomain
//! indices tried in ascending order, so solutions come out in lexicographic
//! order of their tables. Assigning a variable filters the domains of its
//! later neighbours (forward checking); an emptied domain prunes the branch.
//! Optional cover groups require a set of variables to hit every value of a
//! target set, which is how fibers of a subdivision are forced onto a
//! prescribed multimap value.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::grid::AdjacencyGraph;

/// Default cap on partial-assignment extensions per decision.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: u64,
    /// Worker threads used to split the first variable's values.
    pub workers: usize,
    /// Accept whichever worker finds a solution first instead of the least one.
    pub fast: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, workers: 1, fast: false }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        SearchConfig { budget, ..Self::default() }
    }
}

/// Shared node counter; one per decision so workers draw from a single budget.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Arc<Self> {
        Arc::new(Budget { limit, used: AtomicU64::new(0) })
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn spend(&self) -> bool {
        self.used.fetch_add(1, Ordering::Relaxed) < self.limit
    }
}

#[derive(Clone, Debug)]
struct CoverGroup {
    required: FixedBitSet,
    members: Vec<usize>,
}

/// A homomorphism problem: each source edge must land on an equal-or-adjacent
/// pair of target points, and each variable must take a value in its domain.
#[derive(Clone, Debug)]
pub struct Problem {
    n_values: usize,
    domains: Vec<FixedBitSet>,
    later: Vec<Vec<usize>>,
    compat: Vec<FixedBitSet>,
    groups: Vec<CoverGroup>,
    group_of: Vec<Option<usize>>,
    injective: bool,
}

impl Problem {
    /// Homomorphisms from `source` into the reflexive closure of `target`.
    pub fn homomorphisms(source: &AdjacencyGraph, target: &AdjacencyGraph) -> Self {
        let n_values = target.len();
        let mut all = FixedBitSet::with_capacity(n_values);
        all.insert_range(..);
        let later =
            (0..source.len()).map(|i| source.neighbors(i).iter().copied().filter(|&j| j > i).collect()).collect();
        Problem {
            n_values,
            domains: vec![all; source.len()],
            later,
            compat: (0..n_values).map(|v| target.closed_neighborhood(v).clone()).collect(),
            groups: Vec::new(),
            group_of: vec![None; source.len()],
            injective: false,
        }
    }

    /// Requires distinct variables to take distinct values.
    pub fn all_different(&mut self) {
        self.injective = true;
    }

    pub fn n_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn n_values(&self) -> usize {
        self.n_values
    }

    /// Intersects the domain of `var` with `allowed`.
    pub fn restrict(&mut self, var: usize, allowed: &FixedBitSet) {
        self.domains[var].intersect_with(allowed);
    }

    pub fn fix(&mut self, var: usize, value: usize) {
        self.domains[var].clear();
        self.domains[var].insert(value);
    }

    /// Requires the values taken by `members` to be exactly `required`.
    pub fn cover(&mut self, members: Vec<usize>, required: FixedBitSet) {
        let id = self.groups.len();
        for &m in &members {
            self.domains[m].intersect_with(&required);
            self.group_of[m] = Some(id);
        }
        self.groups.push(CoverGroup { required, members });
    }

    pub fn solutions(self: &Arc<Self>, budget: Arc<Budget>) -> Solutions {
        Solutions::new(Arc::clone(self), budget, None)
    }

    /// First solution in canonical order, or any solution in fast mode.
    pub fn first_solution(self: &Arc<Self>, config: &SearchConfig, budget: &Arc<Budget>) -> FirstOutcome {
        let sequential = || first_of(Solutions::new(Arc::clone(self), Arc::clone(budget), None));
        if self.n_vars() == 0 || config.workers <= 1 {
            return sequential();
        }
        let branches: Vec<usize> = self.domains[0].ones().collect();
        let run = |v: usize| first_of(Solutions::new(Arc::clone(self), Arc::clone(budget), Some(v)));
        let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(config.workers).build() else {
            return sequential();
        };
        if config.fast {
            let found = pool.install(|| {
                branches.par_iter().find_map_any(|&v| match run(v) {
                    FirstOutcome::Found(s) => Some(s),
                    _ => None,
                })
            });
            return match found {
                Some(s) => FirstOutcome::Found(s),
                None if budget.used() > budget.limit() => FirstOutcome::Exhausted,
                None => FirstOutcome::NoSolution,
            };
        }
        let results: Vec<FirstOutcome> = pool.install(|| branches.par_iter().map(|&v| run(v)).collect());
        for r in results {
            match r {
                FirstOutcome::NoSolution => continue,
                other => return other,
            }
        }
        FirstOutcome::NoSolution
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FirstOutcome {
    Found(Vec<usize>),
    NoSolution,
    Exhausted,
}

fn first_of(mut it: Solutions) -> FirstOutcome {
    match it.next() {
        Some(Ok(s)) => FirstOutcome::Found(s),
        Some(Err(Exhausted)) => FirstOutcome::Exhausted,
        None => FirstOutcome::NoSolution,
    }
}

/// The node budget ran out before the search finished.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhausted;

/// Lazy stream of solutions in lexicographic order.
pub struct Solutions {
    problem: Arc<Problem>,
    budget: Arc<Budget>,
    domains: Vec<FixedBitSet>,
    assignment: Vec<usize>,
    next_value: Vec<usize>,
    trail: Vec<(usize, FixedBitSet)>,
    marks: Vec<usize>,
    hits: Vec<Vec<u32>>,
    depth: usize,
    finished: bool,
}

impl Solutions {
    fn new(problem: Arc<Problem>, budget: Arc<Budget>, first_value: Option<usize>) -> Self {
        let n = problem.n_vars();
        let mut domains = problem.domains.clone();
        if let (Some(v), Some(d0)) = (first_value, domains.first_mut()) {
            let keep = d0.contains(v);
            d0.clear();
            if keep {
                d0.insert(v);
            }
        }
        let finished = domains.iter().any(|d| d.is_clear());
        let hits = problem.groups.iter().map(|_| vec![0; problem.n_values]).collect();
        Solutions {
            problem,
            budget,
            domains,
            assignment: vec![usize::MAX; n],
            next_value: vec![0; n],
            trail: Vec::new(),
            marks: vec![0; n],
            hits,
            depth: 0,
            finished,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.budget.used()
    }

    fn undo(&mut self, var: usize) {
        while self.trail.len() > self.marks[var] {
            let (j, old) = self.trail.pop().expect("trail entry");
            self.domains[j] = old;
        }
        if let Some(g) = self.problem.group_of[var] {
            self.hits[g][self.assignment[var]] -= 1;
        }
        self.assignment[var] = usize::MAX;
    }

    /// Assigns and propagates; false when some domain or cover group dies.
    fn assign(&mut self, var: usize, value: usize) -> bool {
        self.marks[var] = self.trail.len();
        self.assignment[var] = value;
        if let Some(g) = self.problem.group_of[var] {
            self.hits[g][value] += 1;
        }
        let compat = &self.problem.compat[value];
        let mut touched_groups: Vec<usize> = self.problem.group_of[var].into_iter().collect();
        for &j in &self.problem.later[var] {
            let before = self.domains[j].count_ones(..);
            let mut next = self.domains[j].clone();
            next.intersect_with(compat);
            let after = next.count_ones(..);
            if after == before {
                continue;
            }
            let old = std::mem::replace(&mut self.domains[j], next);
            self.trail.push((j, old));
            if after == 0 {
                return false;
            }
            if let Some(g) = self.problem.group_of[j] {
                if !touched_groups.contains(&g) {
                    touched_groups.push(g);
                }
            }
        }
        if self.problem.injective {
            for j in var + 1..self.problem.n_vars() {
                if self.domains[j].contains(value) {
                    let mut next = self.domains[j].clone();
                    next.set(value, false);
                    let old = std::mem::replace(&mut self.domains[j], next);
                    self.trail.push((j, old));
                    if self.domains[j].is_clear() {
                        return false;
                    }
                }
            }
        }
        touched_groups.into_iter().all(|g| self.group_feasible(g, var))
    }

    /// Every still-missing required value can be reached by an unassigned member.
    fn group_feasible(&self, g: usize, last_assigned: usize) -> bool {
        let group = &self.problem.groups[g];
        let mut missing = group.required.clone();
        for v in group.required.ones() {
            if self.hits[g][v] > 0 {
                missing.set(v, false);
            }
        }
        let open: Vec<usize> = group.members.iter().copied().filter(|&m| m > last_assigned).collect();
        if missing.count_ones(..) > open.len() {
            return false;
        }
        let mut reachable = FixedBitSet::with_capacity(self.problem.n_values);
        for &m in &open {
            reachable.union_with(&self.domains[m]);
        }
        missing.is_subset(&reachable)
    }
}

impl Iterator for Solutions {
    type Item = Result<Vec<usize>, Exhausted>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.problem.n_vars();
        if self.finished {
            return None;
        }
        if n == 0 {
            self.finished = true;
            return Some(Ok(Vec::new()));
        }
        loop {
            let d = self.depth;
            let start = self.next_value[d];
            let candidate = self.domains[d].ones().find(|&v| v >= start);
            let Some(v) = candidate else {
                if d == 0 {
                    self.finished = true;
                    return None;
                }
                self.depth -= 1;
                self.undo(self.depth);
                continue;
            };
            self.next_value[d] = v + 1;
            if !self.budget.spend() {
                self.finished = true;
                return Some(Err(Exhausted));
            }
            if self.assign(d, v) {
                if d + 1 == n {
                    let solution = self.assignment.clone();
                    self.undo(d);
                    return Some(Ok(solution));
                }
                self.depth = d + 1;
                self.next_value[d + 1] = 0;
            } else {
                self.undo(d);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Adjacency, DigitalImage};

    fn path(n: i64) -> DigitalImage {
        DigitalImage::cube(0, n - 1, 1).unwrap()
    }

    fn count(problem: Problem) -> usize {
        Arc::new(problem).solutions(Budget::new(u64::MAX)).collect::<Result<Vec<_>, _>>().unwrap().len()
    }

    #[test]
    fn path_homomorphism_counts() {
        let g2 = path(2).graph(Adjacency::Cu(1)).unwrap();
        let g3 = path(3).graph(Adjacency::Cu(1)).unwrap();
        assert_eq!(count(Problem::homomorphisms(&g2, &g2)), 4);
        assert_eq!(count(Problem::homomorphisms(&g3, &g3)), 17);
    }

    #[test]
    fn solutions_are_lexicographic() {
        let g = path(3).graph(Adjacency::Cu(1)).unwrap();
        let sols: Vec<Vec<usize>> =
            Arc::new(Problem::homomorphisms(&g, &g)).solutions(Budget::new(u64::MAX)).map(|s| s.unwrap()).collect();
        let mut sorted = sols.clone();
        sorted.sort();
        assert_eq!(sols, sorted);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = path(3).graph(Adjacency::Cu(1)).unwrap();
        let problem = Arc::new(Problem::homomorphisms(&g, &g));
        let results: Vec<_> = problem.solutions(Budget::new(2)).collect();
        assert_eq!(results.last(), Some(&Err(Exhausted)));
    }

    #[test]
    fn cover_group_forces_surjection() {
        // a 3-point path must cover both endpoints of {0, 1}
        let src = path(3).graph(Adjacency::Cu(1)).unwrap();
        let dst = path(2).graph(Adjacency::Cu(1)).unwrap();
        let mut problem = Problem::homomorphisms(&src, &dst);
        let mut both = FixedBitSet::with_capacity(2);
        both.insert_range(..);
        problem.cover(vec![0, 1, 2], both);
        assert_eq!(count(problem), 6);
    }

    #[test]
    fn all_different_counts_permutations() {
        let g = DigitalImage::cube(0, 1, 2).unwrap().graph(Adjacency::Cu(2)).unwrap();
        let mut problem = Problem::homomorphisms(&g, &g);
        problem.all_different();
        assert_eq!(count(problem), 24);
    }

    #[test]
    fn parallel_first_matches_sequential() {
        let g = DigitalImage::cube(0, 2, 2).unwrap().graph(Adjacency::Cu(1)).unwrap();
        let mut problem = Problem::homomorphisms(&g, &g);
        let mut not_zero = FixedBitSet::with_capacity(9);
        not_zero.insert_range(1..);
        problem.restrict(0, &not_zero);
        let problem = Arc::new(problem);
        let seq = problem.first_solution(&SearchConfig::default(), &Budget::new(u64::MAX));
        let par =
            problem.first_solution(&SearchConfig { workers: 4, ..SearchConfig::default() }, &Budget::new(u64::MAX));
        assert_eq!(seq, par);
        assert!(matches!(seq, FirstOutcome::Found(ref s) if s[0] == 1));
    }
}
