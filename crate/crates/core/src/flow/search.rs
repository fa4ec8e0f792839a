//! Exhaustive search for integer flow values.
//!
//! Values are signed integers measured along the reference orientation. The search branches only
//! on co-tree edges of a spanning forest; every other edge is solved from the boundary equation of
//! a vertex once all its other edges are known. Partial assignments are pruned by completed
//! vertices, by an interval test on open vertices, and by remembering failed frontier states.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::signed::SignedGraph;

use super::SearchLimits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Domain {
    /// Signed integers whose magnitude lies in `[lo, hi]`; boundaries vanish.
    Signed { lo: i64, hi: i64 },
    /// Residues in `[lo, hi]` modulo `p`; boundaries vanish modulo `p`.
    Modular { p: i64, lo: i64, hi: i64 },
}

#[derive(Clone, Debug, Default)]
struct Step {
    branch: Option<EdgeId>,
    /// Edges solved at this step, with the end whose vertex equation determines them.
    forced: Vec<(EdgeId, usize)>,
    /// Vertices whose last edge was assigned by someone else at this step.
    checks: Vec<VertexId>,
    /// Open vertices touched at this step, with their number of unassigned edges.
    intervals: Vec<(VertexId, i64)>,
    /// All vertices with both assigned and unassigned edges after this step.
    open: Vec<VertexId>,
}

/// The structural part of a search: which edges are branched on and which are solved, in order.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    ends: Vec<[VertexId; 2]>,
    coef: Vec<[i64; 2]>,
    vertex_count: usize,
    pre: Step,
    steps: Vec<Step>,
}

#[derive(Clone)]
struct Sim {
    remaining: Vec<usize>,
    assigned: Vec<bool>,
}

impl Sim {
    fn assign(
        &mut self,
        g: &Multigraph,
        e: EdgeId,
        forcer: Option<VertexId>,
        step: &mut Step,
        touched: &mut Vec<VertexId>,
        queue: &mut VecDeque<VertexId>,
    ) {
        self.assigned[e] = true;
        let edge = g.edge(e);
        for w in [edge.u, edge.v] {
            self.remaining[w] -= 1;
            touched.push(w);
            match self.remaining[w] {
                0 if forcer != Some(w) => step.checks.push(w),
                1 => queue.push_back(w),
                _ => {}
            }
        }
    }

    fn run(&mut self, g: &Multigraph, branch: Option<EdgeId>) -> Step {
        let mut step = Step {
            branch,
            ..Step::default()
        };
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();
        match branch {
            Some(e) => self.assign(g, e, None, &mut step, &mut touched, &mut queue),
            None => queue.extend((0..g.vertex_count()).filter(|&v| self.remaining[v] == 1)),
        }
        while let Some(w) = queue.pop_front() {
            if self.remaining[w] != 1 {
                continue;
            }
            let h = *g
                .half_edges(w)
                .iter()
                .find(|h| !self.assigned[h.edge])
                .expect("one unassigned edge remains");
            step.forced.push((h.edge, h.end.index()));
            self.assign(g, h.edge, Some(w), &mut step, &mut touched, &mut queue);
        }
        touched.sort_unstable();
        touched.dedup();
        step.intervals = touched
            .into_iter()
            .filter(|&w| self.remaining[w] >= 2 && self.remaining[w] < g.degree(w))
            .map(|w| (w, self.remaining[w] as i64))
            .collect();
        step.open = (0..g.vertex_count())
            .filter(|&w| self.remaining[w] > 0 && self.remaining[w] < g.degree(w))
            .collect();
        step
    }
}

impl Plan {
    pub(crate) fn new(sg: &SignedGraph) -> Plan {
        let g = sg.graph();
        let m = g.edge_count();
        let ends = g.edges().iter().map(|e| [e.u, e.v]).collect();
        let coef = sg
            .signature()
            .signs()
            .iter()
            .map(|s| [1, -s.value()])
            .collect();
        let tree = spanning_forest(g);
        let mut sim = Sim {
            remaining: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
            assigned: vec![false; m],
        };
        let pre = sim.run(g, None);
        let mut steps = Vec::new();
        loop {
            let open: Vec<bool> = (0..g.vertex_count())
                .map(|w| sim.remaining[w] > 0 && sim.remaining[w] < g.degree(w))
                .collect();
            let mut best: Option<((usize, usize), EdgeId)> = None;
            for e in (0..m).filter(|&e| !tree[e] && !sim.assigned[e]) {
                let mut trial = sim.clone();
                let step = trial.run(g, Some(e));
                let edge = g.edge(e);
                let score = (
                    step.forced.len() + step.checks.len(),
                    open[edge.u] as usize + open[edge.v] as usize,
                );
                if best.is_none_or(|(s, _)| score > s) {
                    best = Some((score, e));
                }
            }
            let Some((_, e)) = best else { break };
            steps.push(sim.run(g, Some(e)));
        }
        debug_assert!(sim.assigned.iter().all(|&a| a));
        Plan {
            ends,
            coef,
            vertex_count: g.vertex_count(),
            pre,
            steps,
        }
    }

    #[cfg(test)]
    pub(crate) fn branch_count(&self) -> usize {
        self.steps.len()
    }
}

fn spanning_forest(g: &Multigraph) -> Vec<bool> {
    let mut tree = vec![false; g.edge_count()];
    let mut seen = vec![false; g.vertex_count()];
    for root in 0..g.vertex_count() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for h in g.half_edges(x) {
                let y = g.opposite(h.edge, x);
                if !seen[y] {
                    seen[y] = true;
                    tree[h.edge] = true;
                    stack.push(y);
                }
            }
        }
    }
    tree
}

struct Searcher<'a> {
    plan: &'a Plan,
    domain: Domain,
    values: Vec<i64>,
    sums: Vec<i64>,
    nodes: u64,
    limits: SearchLimits,
    memo: Vec<HashSet<Vec<i64>>>,
    memo_entries: usize,
}

impl Searcher<'_> {
    fn add(&mut self, e: EdgeId, x: i64) {
        self.values[e] = x;
        for k in 0..2 {
            let w = self.plan.ends[e][k];
            self.sums[w] += self.plan.coef[e][k] * x;
            if let Domain::Modular { p, .. } = self.domain {
                self.sums[w] = self.sums[w].rem_euclid(p);
            }
        }
    }

    fn remove(&mut self, e: EdgeId) {
        let x = self.values[e];
        for k in 0..2 {
            let w = self.plan.ends[e][k];
            self.sums[w] -= self.plan.coef[e][k] * x;
            if let Domain::Modular { p, .. } = self.domain {
                self.sums[w] = self.sums[w].rem_euclid(p);
            }
        }
        self.values[e] = 0;
    }

    fn in_domain(&self, x: i64) -> bool {
        match self.domain {
            Domain::Signed { lo, hi } => (lo..=hi).contains(&x.abs()),
            Domain::Modular { lo, hi, .. } => (lo..=hi).contains(&x),
        }
    }

    /// Assigns the branch value and everything it forces. Returns whether the state is consistent
    /// and how many forced edges were assigned (for undo).
    fn apply(&mut self, step: &Step, branch_value: Option<i64>) -> (bool, usize) {
        if let (Some(e), Some(x)) = (step.branch, branch_value) {
            self.add(e, x);
        }
        let mut applied = 0;
        for &(e, k) in &step.forced {
            let w = self.plan.ends[e][k];
            let mut x = -self.plan.coef[e][k] * self.sums[w];
            if let Domain::Modular { p, .. } = self.domain {
                x = x.rem_euclid(p);
            }
            if !self.in_domain(x) {
                return (false, applied);
            }
            self.add(e, x);
            applied += 1;
        }
        if step.checks.iter().any(|&w| self.sums[w] != 0) {
            return (false, applied);
        }
        if let Domain::Signed { lo, hi } = self.domain {
            for &(w, rem) in &step.intervals {
                if !interval_feasible(self.sums[w].abs(), rem, lo, hi) {
                    return (false, applied);
                }
            }
        }
        (true, applied)
    }

    fn undo(&mut self, step: &Step, applied: usize, had_branch: bool) {
        for &(e, _) in step.forced[..applied].iter().rev() {
            self.remove(e);
        }
        if let (Some(e), true) = (step.branch, had_branch) {
            self.remove(e);
        }
    }

    fn candidates(&self, level: usize) -> Vec<i64> {
        match self.domain {
            Domain::Signed { lo, hi } => {
                let mut out = Vec::new();
                for mag in lo..=hi {
                    out.push(mag);
                    if level > 0 {
                        out.push(-mag);
                    }
                }
                out
            }
            Domain::Modular { p, lo, hi } => {
                (lo..=hi).filter(|&x| level > 0 || 2 * x <= p).collect()
            }
        }
    }

    fn dfs(&mut self, level: usize) -> Result<bool> {
        let plan = self.plan;
        if level == plan.steps.len() {
            return Ok(true);
        }
        let key = (level > 0).then(|| {
            plan.steps[level - 1]
                .open
                .iter()
                .map(|&w| self.sums[w])
                .collect::<Vec<_>>()
        });
        if let Some(k) = &key {
            if self.memo[level].contains(k) {
                return Ok(false);
            }
        }
        let step = &plan.steps[level];
        for x in self.candidates(level) {
            self.nodes += 1;
            if self.nodes > self.limits.node_budget {
                return Err(Error::BudgetExhausted {
                    budget: self.limits.node_budget,
                });
            }
            let (ok, applied) = self.apply(step, Some(x));
            if ok && self.dfs(level + 1)? {
                return Ok(true);
            }
            self.undo(step, applied, true);
        }
        if let Some(k) = key {
            if self.memo_entries < self.limits.memo_cap {
                self.memo[level].insert(k);
                self.memo_entries += 1;
            }
        }
        Ok(false)
    }
}

/// Whether `m` values of magnitude in `[lo, hi]`, with free signs, can sum to `s` (or `-s`).
fn interval_feasible(s: i64, m: i64, lo: i64, hi: i64) -> bool {
    if s > m * hi {
        return false;
    }
    (0..=m).any(|j| j * lo - (m - j) * hi <= s && s <= j * hi - (m - j) * lo)
}

/// Runs the search; returns the reference-oriented values of the first solution in search order.
pub(crate) fn search(
    plan: &Plan,
    domain: Domain,
    limits: SearchLimits,
) -> Result<Option<Vec<i64>>> {
    let mut s = Searcher {
        plan,
        domain,
        values: vec![0; plan.ends.len()],
        sums: vec![0; plan.vertex_count],
        nodes: 0,
        limits,
        memo: vec![HashSet::new(); plan.steps.len() + 1],
        memo_entries: 0,
    };
    let (ok, _) = s.apply(&plan.pre, None);
    if !ok {
        return Ok(None);
    }
    Ok(if s.dfs(0)? { Some(s.values) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    #[test]
    fn interval_test() {
        assert!(interval_feasible(0, 2, 1, 2));
        assert!(interval_feasible(4, 2, 1, 2));
        assert!(!interval_feasible(5, 2, 1, 2));
        assert!(interval_feasible(1, 2, 2, 3));
        assert!(!interval_feasible(2, 2, 2, 3));
        assert!(interval_feasible(1, 3, 2, 3));
    }

    #[test]
    fn k4_three_and_four() {
        let g = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let sg = SignedGraph::unsigned(g);
        let plan = Plan::new(&sg);
        assert_eq!(plan.branch_count(), 3);
        let limits = SearchLimits::default();
        assert!(search(&plan, Domain::Signed { lo: 1, hi: 2 }, limits)
            .unwrap()
            .is_none());
        assert!(search(&plan, Domain::Signed { lo: 1, hi: 3 }, limits)
            .unwrap()
            .is_some());
    }
}
