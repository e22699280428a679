//! Brute-force ground truth over the solution graph.
//!
//! The solution graph has the homomorphisms G -> H as nodes, adjacent when
//! they differ at exactly one vertex. Everything here works by explicit
//! search over that graph, with no reliance on the structure theory in the
//! rest of the crate, so it can serve as an independent referee.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::graph::{is_homomorphism, Coloring, Graph};
use crate::groupoid::{ReducedWalk, WalkFamily};
use crate::reconfig::RecoloringSequence;
use thiserror::Error;

pub const DEFAULT_MAX_STATES: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state budget of {budget} colorings exceeded")]
    StateBudgetExceeded { budget: usize },
    #[error("scan is incomplete, derived queries would be unsound")]
    IncompleteScan,
    #[error("start coloring is not a homomorphism")]
    StartNotHomomorphism,
}

/// Why a sequence fails to replay, with the offending step where one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SequenceViolation {
    #[error("start coloring is not a homomorphism")]
    StartNotHomomorphism,
    #[error("step {index} names a vertex outside the domain graph")]
    BadVertex { index: usize },
    #[error("step {index} departs from a color the vertex does not hold")]
    FromMismatch { index: usize },
    #[error("step {index} does not change the vertex color")]
    NoChange { index: usize },
    #[error("step {index} breaks the homomorphism condition")]
    BreaksHomomorphism { index: usize },
}

impl SequenceViolation {
    /// The first failing step, counting the start coloring as step 0's
    /// precondition.
    pub fn index(&self) -> usize {
        match self {
            SequenceViolation::StartNotHomomorphism => 0,
            SequenceViolation::BadVertex { index }
            | SequenceViolation::FromMismatch { index }
            | SequenceViolation::NoChange { index }
            | SequenceViolation::BreaksHomomorphism { index } => *index,
        }
    }
}

/// Replays a sequence move by move. A move is legal when it renames exactly
/// its vertex, departs from the color actually held, and lands on a color
/// adjacent in `h` to every neighbor's current color.
pub fn validate_sequence(
    g: &Graph,
    h: &Graph,
    seq: &RecoloringSequence,
) -> Result<(), SequenceViolation> {
    if seq.start.len() != g.vertex_count() || !is_homomorphism(g, h, &seq.start) {
        return Err(SequenceViolation::StartNotHomomorphism);
    }
    let mut colors = seq.start.as_slice().to_vec();
    for (index, step) in seq.steps.iter().enumerate() {
        if step.vertex >= g.vertex_count() || step.to >= h.vertex_count() {
            return Err(SequenceViolation::BadVertex { index });
        }
        if colors[step.vertex] != step.from {
            return Err(SequenceViolation::FromMismatch { index });
        }
        if step.from == step.to {
            return Err(SequenceViolation::NoChange { index });
        }
        // Only edges at the recolored vertex can break, so the local check
        // keeps the whole coloring a homomorphism.
        for &w in g.neighbors(step.vertex) {
            if !h.has_edge(step.to, colors[w]) {
                return Err(SequenceViolation::BreaksHomomorphism { index });
            }
        }
        colors[step.vertex] = step.to;
    }
    Ok(())
}

/// The legal single-vertex recolorings of `c`, in lexicographic order of
/// (vertex, new color). New colors must be adjacent in `h` to every
/// neighbor's current color; nothing here assumes anything about `h`.
pub fn successors(g: &Graph, h: &Graph, c: &Coloring) -> Vec<(usize, usize, Coloring)> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let current = c.get(v);
        for b in 0..h.vertex_count() {
            if b == current {
                continue;
            }
            if g.neighbors(v).iter().all(|&w| h.has_edge(b, c.get(w))) {
                let mut next = c.clone();
                next.set(v, b);
                out.push((v, b, next));
            }
        }
    }
    out
}

/// The reachable component of `start`, with breadth-first distances.
#[derive(Debug, Clone)]
pub struct SolutionGraphScan {
    start: Coloring,
    order: Vec<Coloring>,
    distance: HashMap<Coloring, usize>,
    complete: bool,
}

impl SolutionGraphScan {
    pub fn start(&self) -> &Coloring {
        &self.start
    }

    /// Colorings in discovery order; deterministic given the successor
    /// ordering.
    pub fn order(&self) -> &[Coloring] {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn contains(&self, c: &Coloring) -> bool {
        self.distance.contains_key(c)
    }

    pub fn distance_to(&self, c: &Coloring) -> Option<usize> {
        self.distance.get(c).copied()
    }

    /// False only for scans a caller truncated by hand; [`bfs_scan`] fails
    /// rather than truncate.
    pub fn is_complete(&self) -> bool {
        self.complete
    }
}

/// Explores the whole component of `start` breadth-first, failing fast once
/// more than `max_states` colorings have been discovered.
pub fn bfs_scan(
    g: &Graph,
    h: &Graph,
    start: &Coloring,
    max_states: usize,
) -> Result<SolutionGraphScan, OracleError> {
    if start.len() != g.vertex_count() || !is_homomorphism(g, h, start) {
        return Err(OracleError::StartNotHomomorphism);
    }
    let mut order = vec![start.clone()];
    let mut distance = HashMap::from([(start.clone(), 0usize)]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(c) = queue.pop_front() {
        let d = distance[&c];
        for (_, _, next) in successors(g, h, &c) {
            if !distance.contains_key(&next) {
                if order.len() == max_states {
                    return Err(OracleError::StateBudgetExceeded { budget: max_states });
                }
                distance.insert(next.clone(), d + 1);
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(SolutionGraphScan {
        start: start.clone(),
        order,
        distance,
        complete: true,
    })
}

/// The vertices whose color never changes anywhere in the reachable
/// component.
pub fn frozen_set(scan: &SolutionGraphScan) -> Result<BTreeSet<usize>, OracleError> {
    if !scan.complete {
        return Err(OracleError::IncompleteScan);
    }
    let start = scan.start.as_slice();
    let mut frozen: BTreeSet<usize> = (0..start.len()).collect();
    for c in &scan.order {
        frozen.retain(|&v| c.get(v) == start[v]);
        if frozen.is_empty() {
            break;
        }
    }
    Ok(frozen)
}

/// Exploration caps for [`trace_family_check`]. Correctness of the check is
/// relative to the caps: only paths of at most `max_path_len` moves are
/// traced, and only family members of length at most `max_member_len` are
/// required to be realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceCaps {
    pub max_path_len: usize,
    pub max_member_len: usize,
    pub max_states: usize,
}

impl TraceCaps {
    /// Conservative defaults: paths a little past the breadth-first
    /// distance, members a little past a walk visiting every target color
    /// twice.
    pub fn for_scan(scan: &SolutionGraphScan, h: &Graph, beta: &Coloring) -> TraceCaps {
        let dist = scan.distance_to(beta).unwrap_or(0);
        TraceCaps {
            max_path_len: dist + 6,
            max_member_len: 2 * h.vertex_count() + 4,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// What the bounded trace exploration saw.
#[derive(Debug, Clone)]
pub struct TraceReport {
    /// Walks traced at the goal coloring that the family does not contain.
    pub stray_traces: Vec<ReducedWalk>,
    /// Family members within the length cap that no explored path traced.
    pub unrealized_members: Vec<ReducedWalk>,
    pub goal_reached: bool,
    pub states_explored: usize,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.stray_traces.is_empty() && self.unrealized_members.is_empty()
    }
}

fn extend_trace(trace: &[usize], current: usize, helper: usize, to: usize) -> Vec<usize> {
    let mut t = if trace.is_empty() {
        vec![current]
    } else {
        trace.to_vec()
    };
    for v in [helper, to] {
        if t.len() >= 2 && t[t.len() - 2] == v {
            t.pop();
        } else {
            t.push(v);
        }
    }
    if t.len() <= 1 {
        t.clear();
    }
    t
}

/// Checks a walk family against the solution graph in both directions:
/// every explored recoloring path from `alpha` to `beta` must trace (at the
/// base vertex `q`) a member of `family`, and every member within the length
/// cap must be traced by some explored path.
///
/// Exploration runs breadth-first over (coloring, traced walk) pairs, which
/// covers every distinct trace of every path within the caps without
/// enumerating paths one by one. Requires the monochromatic neighborhood
/// property so the traced helper color is well defined.
pub fn trace_family_check(
    g: &Graph,
    h: &Graph,
    scan: &SolutionGraphScan,
    beta: &Coloring,
    q: usize,
    family: &WalkFamily,
    caps: &TraceCaps,
) -> Result<TraceReport, OracleError> {
    if !scan.complete {
        return Err(OracleError::IncompleteScan);
    }
    let alpha = scan.start.clone();
    let trace_cap = caps.max_member_len + 4;

    let mut seen: HashSet<(Coloring, Vec<usize>)> = HashSet::new();
    let mut queue: VecDeque<(Coloring, Vec<usize>, usize)> = VecDeque::new();
    seen.insert((alpha.clone(), Vec::new()));
    queue.push_back((alpha.clone(), Vec::new(), 0));

    let mut goal_traces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut goal_reached = false;

    while let Some((c, trace, depth)) = queue.pop_front() {
        if &c == beta {
            goal_reached = true;
            goal_traces.insert(trace.clone());
        }
        if depth == caps.max_path_len {
            continue;
        }
        for (v, b, next) in successors(g, h, &c) {
            let next_trace = if v == q {
                let helper = h
                    .common_neighbor_color(c.get(q), b)
                    .expect("legal moves of a vertex with neighbors pass through a common color");
                let t = extend_trace(&trace, c.get(q), helper, b);
                if t.len().saturating_sub(1) > trace_cap {
                    continue;
                }
                t
            } else {
                trace.clone()
            };
            let key = (next, next_trace);
            if !seen.contains(&key) {
                if seen.len() == caps.max_states {
                    return Err(OracleError::StateBudgetExceeded {
                        budget: caps.max_states,
                    });
                }
                seen.insert(key.clone());
                queue.push_back((key.0, key.1, depth + 1));
            }
        }
    }

    let stray_traces: Vec<ReducedWalk> = goal_traces
        .iter()
        .map(|t| ReducedWalk::from_reduced_unchecked(t.clone()))
        .filter(|w| !family.contains(w))
        .collect();
    let unrealized_members: Vec<ReducedWalk> = family
        .members_with_max_len(h, caps.max_member_len)
        .into_iter()
        .filter(|m| !goal_traces.contains(&m.seq().to_vec()))
        .collect();

    Ok(TraceReport {
        stray_traces,
        unrealized_members,
        goal_reached,
        states_explored: seen.len(),
    })
}
