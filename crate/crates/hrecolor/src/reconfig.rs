//! Deciding and constructing recoloring sequences.
//!
//! Everything here is driven by one invariant: while a vertex `v` steps from
//! color `a` to color `b`, every neighbor of `v` must sit on the unique
//! common neighbor of `a` and `b` in the target. Tracking the walk each
//! vertex traces in the target therefore determines the whole sequence up to
//! scheduling, and the walk traced by a fixed base vertex classifies
//! sequences up to the equivalence that matters for reachability.

use std::collections::BinaryHeap;

use crate::graph::{is_homomorphism, Coloring, Graph};
use crate::groupoid::{ReducedWalk, Walk, WalkFamily};
use crate::oracle::{validate_sequence, SequenceViolation};
use crate::topology::{
    self, build_tree, find_tight_walk, tight_pinned_walk, CycleBasis, TreeData,
};
use thiserror::Error;

/// One elementary move: `vertex` changes color `from` -> `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecoloringStep {
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
}

/// A start coloring together with the moves applied to it, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoloringSequence {
    pub start: Coloring,
    pub steps: Vec<RecoloringStep>,
}

impl RecoloringSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The coloring after all steps. Steps are trusted here; use
    /// [`validate_sequence`] to vet untrusted input first.
    pub fn end(&self) -> Coloring {
        let mut colors = self.start.as_slice().to_vec();
        for step in &self.steps {
            colors[step.vertex] = step.to;
        }
        Coloring::new(colors)
    }

    /// Every intermediate coloring, starting coloring first.
    pub fn states(&self) -> Vec<Coloring> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut colors = self.start.as_slice().to_vec();
        out.push(Coloring::new(colors.clone()));
        for step in &self.steps {
            colors[step.vertex] = step.to;
            out.push(Coloring::new(colors.clone()));
        }
        out
    }
}

/// Reduced target walks indexed by domain vertex, as produced by
/// [`transport`]. The table fixes the per-vertex itinerary of any sequence
/// whose base-vertex walk reduces to the transported walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexWalkTable {
    walks: Vec<ReducedWalk>,
}

impl VertexWalkTable {
    pub fn get(&self, v: usize) -> &ReducedWalk {
        &self.walks[v]
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    /// Total number of moves a sequence realizing this table makes. Each
    /// vertex walk has even edge length and every two edges are one move.
    pub fn step_count(&self) -> usize {
        self.walks.iter().map(|w| w.len() / 2).sum::<usize>()
    }
}

/// Why a candidate base walk admits no recoloring sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NotRealizableReason {
    #[error("the walk has odd length")]
    OddLength,
    #[error("the walk fails the cycle compatibility conditions")]
    TopologicallyInvalid,
    #[error("the scheduling order contains a cycle")]
    TightObstruction,
}

/// Instance-level requirements checked before any decision work.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionViolation {
    #[error("domain graph is not connected")]
    DomainNotConnected,
    #[error("domain graph has no edges")]
    DomainHasNoEdges,
    #[error("domain graph has a loop at {0}")]
    DomainHasLoop(String),
    #[error("target colors {0} and {1} share more than one neighbor")]
    TargetSharesNeighbors(String, String),
    #[error("start coloring is not a homomorphism")]
    StartNotHomomorphism,
    #[error("goal coloring is not a homomorphism")]
    GoalNotHomomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconfigError {
    #[error("not realizable: {0}")]
    NotRealizable(NotRealizableReason),
    #[error("{0}")]
    Precondition(PreconditionViolation),
    #[error("sequence is invalid: {0}")]
    InvalidSequence(SequenceViolation),
    #[error("constructed sequence failed self-validation: {0}")]
    InternalValidationFailure(String),
}

/// Checks the standing assumptions: connected loopless domain with at least
/// one edge, target without shared-neighbor pairs, both colorings
/// homomorphisms.
pub fn check_preconditions(
    g: &Graph,
    h: &Graph,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<(), ReconfigError> {
    for (a, b) in g.edges() {
        if a == b {
            return Err(ReconfigError::Precondition(
                PreconditionViolation::DomainHasLoop(g.name(a).to_string()),
            ));
        }
    }
    if !g.is_connected() {
        return Err(ReconfigError::Precondition(
            PreconditionViolation::DomainNotConnected,
        ));
    }
    if g.edge_count() == 0 {
        return Err(ReconfigError::Precondition(
            PreconditionViolation::DomainHasNoEdges,
        ));
    }
    if let Err((a, b)) = h.check_common_neighbor_bound() {
        return Err(ReconfigError::Precondition(
            PreconditionViolation::TargetSharesNeighbors(
                h.name(a).to_string(),
                h.name(b).to_string(),
            ),
        ));
    }
    if !is_homomorphism(g, h, alpha) {
        return Err(ReconfigError::Precondition(
            PreconditionViolation::StartNotHomomorphism,
        ));
    }
    if !is_homomorphism(g, h, beta) {
        return Err(ReconfigError::Precondition(
            PreconditionViolation::GoalNotHomomorphism,
        ));
    }
    Ok(())
}

/// The walk vertex `v` traces in the target while `seq` runs: its start
/// color, then for each of its moves the helper color (forced common
/// neighbor) followed by the new color. The sequence is validated first.
pub fn vertex_walk(
    g: &Graph,
    h: &Graph,
    seq: &RecoloringSequence,
    v: usize,
) -> Result<Walk, ReconfigError> {
    validate_sequence(g, h, seq).map_err(ReconfigError::InvalidSequence)?;
    let mut trace = vec![seq.start.get(v)];
    for step in &seq.steps {
        if step.vertex == v {
            let helper = h
                .common_neighbor_color(step.from, step.to)
                .expect("validated step endpoints share a neighbor");
            trace.push(helper);
            trace.push(step.to);
        }
    }
    Ok(Walk::from_vertices_unchecked(trace))
}

/// Transports a reduced base walk to every vertex along the spanning tree:
/// `S_v = red(alpha(W_v))^-1 * q * red(beta(W_v))` where `W_v` is the tree
/// walk from the base vertex to `v`. The table is the unique per-vertex
/// itinerary compatible with `q` at the base.
pub fn transport(
    tree: &TreeData,
    alpha: &Coloring,
    beta: &Coloring,
    q_walk: &ReducedWalk,
) -> VertexWalkTable {
    let n = alpha.len();
    let mut walks = Vec::with_capacity(n);
    for v in 0..n {
        let w = tree.tree_walk(v);
        let a_img = ReducedWalk::reduce(&crate::groupoid::map_walk(alpha, w));
        let b_img = ReducedWalk::reduce(&crate::groupoid::map_walk(beta, w));
        let s = a_img
            .inverse()
            .concat(q_walk)
            .and_then(|x| x.concat(&b_img))
            .expect("transport composes along matching endpoints");
        walks.push(s);
    }
    VertexWalkTable { walks }
}

/// Orders the moving vertices. For adjacent `u`, `v` that both move, exactly
/// one may move first: `u` precedes `v` iff `v`'s current color is the
/// helper color of `u`'s first move. A cycle in this relation is exactly the
/// tight-walk obstruction.
fn schedule_order(g: &Graph, table: &VertexWalkTable) -> Result<Vec<usize>, ReconfigError> {
    let n = g.vertex_count();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for (u, v) in g.edges() {
        let su = table.get(u);
        let sv = table.get(v);
        if su.is_epsilon() || sv.is_epsilon() {
            continue;
        }
        let u_first = sv.seq()[0] == su.seq()[1];
        let v_first = su.seq()[0] == sv.seq()[1];
        debug_assert!(
            u_first != v_first,
            "adjacent moving vertices admit exactly one order"
        );
        let (first, second) = if u_first { (u, v) } else { (v, u) };
        out_arcs[first].push(second);
        indegree[second] += 1;
    }
    let mut ready: BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| indegree[v] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &out_arcs[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(std::cmp::Reverse(w));
            }
        }
    }
    if order.len() < n {
        return Err(ReconfigError::NotRealizable(
            NotRealizableReason::TightObstruction,
        ));
    }
    Ok(order)
}

/// Attempts to realize the base walk `q_walk` as a recoloring sequence from
/// `alpha` to `beta`. Checks parity, then the cycle conditions, then builds
/// the round-robin schedule; the result is re-validated move by move before
/// it is returned.
pub fn check_and_build(
    g: &Graph,
    h: &Graph,
    tree: &TreeData,
    basis: &CycleBasis,
    alpha: &Coloring,
    beta: &Coloring,
    q_walk: &ReducedWalk,
) -> Result<RecoloringSequence, ReconfigError> {
    if q_walk.len() % 2 == 1 {
        return Err(ReconfigError::NotRealizable(NotRealizableReason::OddLength));
    }
    if !topology::is_topologically_valid(tree, basis, alpha, beta, q_walk) {
        return Err(ReconfigError::NotRealizable(
            NotRealizableReason::TopologicallyInvalid,
        ));
    }
    let table = transport(tree, alpha, beta, q_walk);
    let order = schedule_order(g, &table)?;

    let mut steps = Vec::with_capacity(table.step_count());
    let rounds = (0..table.len())
        .map(|v| table.get(v).len() / 2)
        .max()
        .unwrap_or(0);
    for round in 1..=rounds {
        for &v in &order {
            let s = table.get(v).seq();
            if s.len() >= 2 * round + 1 {
                steps.push(RecoloringStep {
                    vertex: v,
                    from: s[2 * round - 2],
                    to: s[2 * round],
                });
            }
        }
    }
    let seq = RecoloringSequence {
        start: alpha.clone(),
        steps,
    };

    if let Err(violation) = validate_sequence(g, h, &seq) {
        return Err(ReconfigError::InternalValidationFailure(format!(
            "scheduled sequence does not replay: {violation}"
        )));
    }
    if &seq.end() != beta {
        return Err(ReconfigError::InternalValidationFailure(
            "scheduled sequence ends at the wrong coloring".to_string(),
        ));
    }
    for v in 0..g.vertex_count() {
        let traced = vertex_walk(g, h, &seq, v).expect("sequence was just validated");
        if traced.seq() != table.get(v).seq() {
            return Err(ReconfigError::InternalValidationFailure(format!(
                "vertex {} traced a different walk than transported",
                g.name(v)
            )));
        }
    }
    Ok(seq)
}

/// The family of base walks all recoloring sequences from `alpha` to `beta`
/// may trace at `q`, before realizability filtering. Solves the cycle
/// conditions over a fundamental cycle basis.
pub fn valid_family(
    g: &Graph,
    alpha: &Coloring,
    beta: &Coloring,
    q: usize,
) -> (TreeData, CycleBasis, WalkFamily) {
    let tree = build_tree(g, q);
    let basis = tree.cycle_basis(g);
    let family = topology::enumerate_valid_family(&tree, &basis, alpha, beta);
    (tree, basis, family)
}

/// Restricts the valid family to walks that are actually realizable.
///
/// When the start coloring admits a tight closed walk the base walk is
/// pinned: at most one candidate survives, and it is vetted by construction.
/// Otherwise realizability is exactly evenness, so the family is filtered by
/// parity. A palindromic (self-inverse) coset root squares to the identity,
/// collapsing the even sub-coset to a single walk.
pub fn enumerate_realizable(
    g: &Graph,
    h: &Graph,
    alpha: &Coloring,
    beta: &Coloring,
    q: usize,
) -> (TreeData, CycleBasis, WalkFamily) {
    let (tree, basis, family) = valid_family(g, alpha, beta, q);
    let (from, to) = (alpha.get(q), beta.get(q));

    if let Some(witness) = find_tight_walk(g, alpha) {
        let pinned = tight_pinned_walk(&witness, &tree, alpha, beta);
        let family = match pinned {
            None => WalkFamily::Empty { from, to },
            Some(q_walk) => {
                let fits = family.contains(&q_walk)
                    && check_and_build(g, h, &tree, &basis, alpha, beta, &q_walk).is_ok();
                if fits {
                    WalkFamily::Single {
                        from,
                        to,
                        walk: q_walk,
                    }
                } else {
                    WalkFamily::Empty { from, to }
                }
            }
        };
        return (tree, basis, family);
    }

    let filtered = match family {
        WalkFamily::Empty { .. } => WalkFamily::Empty { from, to },
        WalkFamily::Single { walk, .. } => {
            if walk.len() % 2 == 0 {
                WalkFamily::Single { from, to, walk }
            } else {
                WalkFamily::Empty { from, to }
            }
        }
        WalkFamily::Coset { root, rep, .. } => filter_coset_even(from, to, &root, &rep),
        WalkFamily::AllReduced { .. } => {
            if h.walk_of_parity_exists(from, to, 0) {
                WalkFamily::AllEvenReduced { from, to }
            } else {
                WalkFamily::Empty { from, to }
            }
        }
        WalkFamily::AllEvenReduced { .. } => {
            unreachable!("cycle condition solving never emits the even-restricted case")
        }
    };
    (tree, basis, filtered)
}

/// The even-length members of the coset `{root^n * rep}`.
fn filter_coset_even(
    from: usize,
    to: usize,
    root: &ReducedWalk,
    rep: &ReducedWalk,
) -> WalkFamily {
    let root_odd = root.len() % 2 == 1;
    let rep_odd = rep.len() % 2 == 1;
    match (root_odd, rep_odd) {
        (false, true) => WalkFamily::Empty { from, to },
        (false, false) => WalkFamily::coset(from, to, root.clone(), rep.clone()),
        (true, _) => {
            // Only even exponents keep parity; the even powers are generated
            // by root^2 and the representative absorbs one root if odd.
            let rep_even = if rep_odd {
                root.concat(rep).expect("root is closed at the rep start")
            } else {
                rep.clone()
            };
            let doubled = root.concat(root).expect("roots are closed");
            if doubled.is_epsilon() {
                WalkFamily::Single {
                    from,
                    to,
                    walk: rep_even,
                }
            } else {
                WalkFamily::coset(from, to, doubled, rep_even)
            }
        }
    }
}

/// Decides whether `beta` is reachable from `alpha` and returns a witness
/// sequence when it is. The witness traces a member of the realizable family
/// at the base vertex `q`.
pub fn decide_reachable(
    g: &Graph,
    h: &Graph,
    alpha: &Coloring,
    beta: &Coloring,
    q: usize,
) -> Result<Option<RecoloringSequence>, ReconfigError> {
    check_preconditions(g, h, alpha, beta)?;
    if !h.component_of(alpha.get(q)).contains(&beta.get(q)) {
        return Ok(None);
    }
    let (tree, basis, family) = enumerate_realizable(g, h, alpha, beta, q);
    let build = |q_walk: &ReducedWalk| check_and_build(g, h, &tree, &basis, alpha, beta, q_walk);

    match family {
        WalkFamily::Empty { .. } => Ok(None),
        WalkFamily::Single { ref walk, .. } => match build(walk) {
            Ok(seq) => Ok(Some(seq)),
            Err(e) => Err(ReconfigError::InternalValidationFailure(format!(
                "sole realizable walk failed to build: {e}"
            ))),
        },
        WalkFamily::Coset { .. } => {
            // Every member is realizable, so the representative itself must
            // build; nearby exponents are tried only as a defensive net.
            for n in [0i64, -1, 1, -2, 2, -3, 3, -4, 4] {
                let member = family.coset_member(n).expect("family is a coset");
                if let Ok(seq) = build(&member) {
                    return Ok(Some(seq));
                }
            }
            Err(ReconfigError::InternalValidationFailure(
                "no small coset member was realizable".to_string(),
            ))
        }
        WalkFamily::AllEvenReduced { from, to } => {
            let walk = h
                .shortest_walk_of_parity(from, to, 0)
                .expect("family nonempty means an even walk exists");
            let q_walk = ReducedWalk::reduce(&Walk::from_vertices_unchecked(walk));
            match build(&q_walk) {
                Ok(seq) => Ok(Some(seq)),
                Err(e) => Err(ReconfigError::InternalValidationFailure(format!(
                    "even walk failed to build in the unconstrained case: {e}"
                ))),
            }
        }
        WalkFamily::AllReduced { .. } => {
            unreachable!("realizable families are parity filtered")
        }
    }
}

/// A recoloring sequence from `alpha` to `beta` with the fewest moves, or
/// `None` when unreachable. The move count of a sequence tracing `q_walk` is
/// the transported table's step count, so the search minimizes that over the
/// realizable family; ties between walks are broken lexicographically.
pub fn shortest_sequence(
    g: &Graph,
    h: &Graph,
    alpha: &Coloring,
    beta: &Coloring,
    q: usize,
) -> Result<Option<(usize, RecoloringSequence)>, ReconfigError> {
    check_preconditions(g, h, alpha, beta)?;
    if !h.component_of(alpha.get(q)).contains(&beta.get(q)) {
        return Ok(None);
    }
    let (tree, basis, family) = enumerate_realizable(g, h, alpha, beta, q);
    let cost = |q_walk: &ReducedWalk| transport(&tree, alpha, beta, q_walk).step_count();

    let best = match family {
        WalkFamily::Empty { .. } => None,
        WalkFamily::Single { walk, .. } => Some(walk),
        WalkFamily::Coset { ref root, ref rep, .. } => {
            Some(best_coset_member(g, &tree, alpha, beta, &family, root, rep))
        }
        WalkFamily::AllEvenReduced { from, to } => Some(best_unconstrained_walk(
            h, &tree, alpha, beta, &family, from, to,
        )),
        WalkFamily::AllReduced { .. } => {
            unreachable!("realizable families are parity filtered")
        }
    };

    let Some(q_walk) = best else {
        return Ok(None);
    };
    let seq = check_and_build(g, h, &tree, &basis, alpha, beta, &q_walk).map_err(|e| {
        ReconfigError::InternalValidationFailure(format!("optimal walk failed to build: {e}"))
    })?;
    let expected = cost(&q_walk);
    if seq.len() != expected {
        return Err(ReconfigError::InternalValidationFailure(format!(
            "built sequence has {} moves, table predicts {expected}",
            seq.len()
        )));
    }
    Ok(Some((expected, seq)))
}

/// Minimizes the step count over coset members `root^n * rep`. The cost of
/// the `n`-th member grows linearly in `|n|` once the root powers dominate
/// every transported prefix, which yields a sound stopping rule: stop a
/// direction when even the lower bound on cost exceeds the best seen.
fn best_coset_member(
    g: &Graph,
    tree: &TreeData,
    alpha: &Coloring,
    beta: &Coloring,
    family: &WalkFamily,
    root: &ReducedWalk,
    rep: &ReducedWalk,
) -> ReducedWalk {
    let n = g.vertex_count();
    let mut margins = Vec::with_capacity(n);
    for v in 0..n {
        let w = tree.tree_walk(v);
        let a_len = ReducedWalk::reduce(&crate::groupoid::map_walk(alpha, w)).len();
        let b_len = ReducedWalk::reduce(&crate::groupoid::map_walk(beta, w)).len();
        margins.push(a_len + b_len + rep.len());
    }
    let decomposition = root.cyclic_reduce().expect("coset roots are closed");
    let core_len = decomposition.core.len().max(1);
    let cost_of = |q_walk: &ReducedWalk| transport(tree, alpha, beta, q_walk).step_count();
    // |S_v| >= |q| - |A_v| - |B_v| and |q| >= |n| * core_len - |rep|, halved.
    let lower_bound = |abs_n: usize| {
        margins
            .iter()
            .map(|&m| (abs_n * core_len).saturating_sub(m + rep.len()))
            .sum::<usize>()
            / 2
    };

    let member = |i: i64| family.coset_member(i).expect("family is a coset");
    let mut best = member(0);
    let mut best_cost = cost_of(&best);
    // Hard floor on the scan so the stopping rule never cuts a direction
    // before the window that provably contains an optimum.
    let min_scan = (2 * n + rep.len() + 4) as i64;
    for direction in [1i64, -1] {
        let mut i = direction;
        loop {
            if i.abs() > min_scan && lower_bound(i.unsigned_abs() as usize) > best_cost {
                break;
            }
            let cand = member(i);
            let c = cost_of(&cand);
            if c < best_cost || (c == best_cost && cand.seq() < best.seq()) {
                best_cost = c;
                best = cand;
            }
            i += direction;
        }
    }
    best
}

/// Minimizes the step count when every even reduced walk is realizable. An
/// optimal sequence makes each vertex trace a reduced walk, so the base walk
/// of some optimum factors as a transported start prefix, a connecting walk
/// of minimal length and parity, and a transported goal prefix. Scanning
/// that candidate set is exhaustive for the minimum.
fn best_unconstrained_walk(
    h: &Graph,
    tree: &TreeData,
    alpha: &Coloring,
    beta: &Coloring,
    family: &WalkFamily,
    from: usize,
    to: usize,
) -> ReducedWalk {
    let n = alpha.len();
    let mut starts: Vec<ReducedWalk> = Vec::new();
    let mut goals: Vec<ReducedWalk> = Vec::new();
    for v in 0..n {
        let w = tree.tree_walk(v);
        let a_img = ReducedWalk::reduce(&crate::groupoid::map_walk(alpha, w));
        let b_img = ReducedWalk::reduce(&crate::groupoid::map_walk(beta, w));
        // A one-vertex prefix is the empty walk, covered by k = 0.
        for k in (0..=a_img.seq().len()).filter(|&k| k != 1) {
            starts.push(ReducedWalk::from_reduced_unchecked(
                a_img.seq()[..k].to_vec(),
            ));
        }
        for k in (0..=b_img.seq().len()).filter(|&k| k != 1) {
            goals.push(ReducedWalk::from_reduced_unchecked(b_img.seq()[..k].to_vec()).inverse());
        }
    }
    starts.sort_by(|x, y| x.seq().cmp(y.seq()));
    starts.dedup();
    goals.sort_by(|x, y| x.seq().cmp(y.seq()));
    goals.dedup();

    let mut candidates = std::collections::BTreeSet::new();
    for p1 in &starts {
        let x = p1.endpoints().map_or(from, |(_, e)| e);
        for p2 in &goals {
            let y = p2.endpoints().map_or(to, |(s, _)| s);
            let mut middles: Vec<ReducedWalk> = Vec::new();
            if x == y {
                middles.push(ReducedWalk::epsilon());
            }
            for parity in [0u8, 1] {
                if let Some(m) = h.shortest_walk_of_parity(x, y, parity) {
                    middles.push(ReducedWalk::reduce(&Walk::from_vertices_unchecked(m)));
                }
            }
            for m in middles {
                let q_walk = p1
                    .concat(&m)
                    .and_then(|w| w.concat(p2))
                    .expect("candidate pieces chain at shared endpoints");
                if family.contains(&q_walk) {
                    candidates.insert(q_walk.seq().to_vec());
                }
            }
        }
    }
    debug_assert!(!candidates.is_empty(), "the family was nonempty");

    let cost_of = |q_walk: &ReducedWalk| transport(tree, alpha, beta, q_walk).step_count();
    let mut best: Option<(usize, ReducedWalk)> = None;
    for seq in candidates {
        let cand = ReducedWalk::from_reduced_unchecked(seq);
        let c = cost_of(&cand);
        let better = match &best {
            None => true,
            Some((bc, bw)) => c < *bc || (c == *bc && cand.seq() < bw.seq()),
        };
        if better {
            best = Some((c, cand));
        }
    }
    best.expect("candidate set is nonempty").1
}
