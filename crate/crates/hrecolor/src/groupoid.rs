//! Walks in a graph up to backtracking cancellation, the groupoid they
//! form, and solvers for conjugacy equations over it.
//!
//! A walk is stored as its vertex sequence over graph indices. Backtracking
//! means traversing an edge and immediately returning over it; a loop edge
//! is its own reverse, so traversing a loop twice in a row also cancels.
//! Every walk has a unique fully cancelled form, and all zero-length walks
//! are identified with the single empty walk, written eps here, which
//! composes with anything.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("vertex sequence is not a walk: {a} and {b} are not adjacent")]
    NotAWalk { a: usize, b: usize },
    #[error("cannot compose: first walk ends at {end}, second starts at {start}")]
    EndpointMismatch { end: usize, start: usize },
    #[error("walk is not closed")]
    NotClosed,
    #[error("operation requires a nonempty walk")]
    EmptyWalk,
    #[error("walks are closed at different vertices ({0} and {1})")]
    BasepointMismatch(usize, usize),
}

/// A walk as a raw vertex sequence, possibly with backtracking. The empty
/// sequence is eps; single-vertex sequences are normalized to eps at
/// construction, so the sequence length is never 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    seq: Vec<usize>,
}

impl Walk {
    pub fn epsilon() -> Walk {
        Walk { seq: Vec::new() }
    }

    /// Validates consecutive adjacency in `h`.
    pub fn new(h: &Graph, seq: Vec<usize>) -> Result<Walk, GroupoidError> {
        for w in seq.windows(2) {
            if !h.has_edge(w[0], w[1]) {
                return Err(GroupoidError::NotAWalk { a: w[0], b: w[1] });
            }
        }
        Ok(Walk::from_vertices_unchecked(seq))
    }

    /// No adjacency check; used for images of walks that are valid by
    /// construction.
    pub fn from_vertices_unchecked(seq: Vec<usize>) -> Walk {
        let seq = if seq.len() <= 1 { Vec::new() } else { seq };
        Walk { seq }
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// Edge count.
    pub fn len(&self) -> usize {
        self.seq.len().saturating_sub(1)
    }

    pub fn is_epsilon(&self) -> bool {
        self.seq.is_empty()
    }
}

/// Applies a coloring vertexwise, turning a walk in the domain graph into a
/// walk in the target graph. Homomorphisms preserve adjacency, so the image
/// needs no revalidation.
pub fn map_walk(sigma: &crate::graph::Coloring, gwalk: &[usize]) -> Walk {
    Walk::from_vertices_unchecked(gwalk.iter().map(|&v| sigma.get(v)).collect())
}

/// A walk with no backtracking anywhere: no interior vertex equals the
/// vertex two positions before it. Unique normal form of its cancellation
/// class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWalk {
    seq: Vec<usize>,
}

impl ReducedWalk {
    pub fn epsilon() -> ReducedWalk {
        ReducedWalk { seq: Vec::new() }
    }

    /// Fully cancels a walk by a single left-to-right stack pass. The
    /// result is independent of cancellation order.
    pub fn reduce(w: &Walk) -> ReducedWalk {
        ReducedWalk::reduce_seq(&w.seq)
    }

    fn reduce_seq(seq: &[usize]) -> ReducedWalk {
        let mut stack: Vec<usize> = Vec::with_capacity(seq.len());
        for &v in seq {
            if stack.len() >= 2 && stack[stack.len() - 2] == v {
                stack.pop();
            } else {
                stack.push(v);
            }
        }
        if stack.len() <= 1 {
            stack.clear();
        }
        debug_assert!(is_reduced_seq(&stack));
        ReducedWalk { seq: stack }
    }

    /// Wraps a sequence the caller knows is already reduced.
    pub fn from_reduced_unchecked(seq: Vec<usize>) -> ReducedWalk {
        debug_assert!(is_reduced_seq(&seq));
        debug_assert!(seq.len() != 1);
        ReducedWalk { seq }
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// Edge count; reduction preserves its parity.
    pub fn len(&self) -> usize {
        self.seq.len().saturating_sub(1)
    }

    pub fn is_epsilon(&self) -> bool {
        self.seq.is_empty()
    }

    /// None for eps, which has no endpoints of its own.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        if self.seq.is_empty() {
            None
        } else {
            Some((self.seq[0], *self.seq.last().unwrap()))
        }
    }

    /// Eps counts as closed: it composes as an identity everywhere.
    pub fn is_closed(&self) -> bool {
        match self.endpoints() {
            None => true,
            Some((s, e)) => s == e,
        }
    }

    /// Composition followed by cancellation. Eps composes with anything;
    /// otherwise endpoints must meet.
    pub fn concat(&self, other: &ReducedWalk) -> Result<ReducedWalk, GroupoidError> {
        if self.is_epsilon() {
            return Ok(other.clone());
        }
        if other.is_epsilon() {
            return Ok(self.clone());
        }
        let end = *self.seq.last().unwrap();
        let start = other.seq[0];
        if end != start {
            return Err(GroupoidError::EndpointMismatch { end, start });
        }
        let mut seq = Vec::with_capacity(self.seq.len() + other.seq.len() - 1);
        seq.extend_from_slice(&self.seq);
        seq.extend_from_slice(&other.seq[1..]);
        Ok(ReducedWalk::reduce_seq(&seq))
    }

    pub fn inverse(&self) -> ReducedWalk {
        let mut seq = self.seq.clone();
        seq.reverse();
        ReducedWalk { seq }
    }

    /// Iterated self-composition. Negative exponents invert first. For
    /// |n| >= 2 the walk must be closed.
    pub fn power(&self, n: i64) -> Result<ReducedWalk, GroupoidError> {
        if n == 0 {
            return Ok(ReducedWalk::epsilon());
        }
        if n < 0 {
            return self.inverse().power(-n);
        }
        if n >= 2 && !self.is_closed() {
            return Err(GroupoidError::NotClosed);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.concat(self)?;
        }
        Ok(acc)
    }

    /// Splits a closed reduced walk as conjugator and rotation-stable core:
    /// self = red(conjugator^-1 . core . conjugator). The core is either
    /// cyclically reduced (its last edge is not the reverse of its first) or
    /// a single loop edge, which is its own reverse and cannot shrink.
    pub fn cyclic_reduce(&self) -> Result<CyclicDecomposition, GroupoidError> {
        if !self.is_closed() {
            return Err(GroupoidError::NotClosed);
        }
        let mut core: &[usize] = &self.seq;
        let mut peeled: Vec<usize> = Vec::new();
        // The last edge reverses the first exactly when the second vertex
        // equals the second-to-last; peeling strips both. A reduced walk
        // never peels below one edge, so a loop-edge core survives.
        while core.len() >= 3 && core[1] == core[core.len() - 2] {
            if peeled.is_empty() {
                peeled.push(core[0]);
            }
            peeled.push(core[1]);
            core = &core[1..core.len() - 1];
        }
        let core_seq = if core.len() <= 1 { Vec::new() } else { core.to_vec() };
        let core = ReducedWalk::from_reduced_unchecked(core_seq);
        let mut conj_seq = peeled;
        conj_seq.reverse();
        let conjugator = ReducedWalk::from_reduced_unchecked(if conj_seq.len() <= 1 {
            Vec::new()
        } else {
            conj_seq
        });
        debug_assert!(core.is_closed());
        Ok(CyclicDecomposition { conjugator, core })
    }

    /// The shortest closed walk whose iterate gives this walk, with the
    /// exponent. A walk whose core is a single loop edge squares to eps;
    /// it is reported as its own root with exponent 1.
    pub fn primitive_root(&self) -> Result<(ReducedWalk, usize), GroupoidError> {
        if self.is_epsilon() {
            return Err(GroupoidError::EmptyWalk);
        }
        let dec = self.cyclic_reduce()?;
        let core = dec.core.seq();
        let edges: Vec<(usize, usize)> =
            core.windows(2).map(|w| (w[0], w[1])).collect();
        let period = smallest_period(&edges);
        let reps = edges.len() / period;
        let root_core = ReducedWalk::from_reduced_unchecked(core[..=period].to_vec());
        let root = dec
            .conjugator
            .inverse()
            .concat(&root_core)
            .and_then(|w| w.concat(&dec.conjugator))
            .expect("conjugating the root core back is always composable");
        debug_assert_eq!(root.len(), 2 * dec.conjugator.len() + period);
        debug_assert_eq!(&root.power(reps as i64).unwrap(), self);
        Ok((root, reps))
    }
}

/// Closed reduced walk written as red(conjugator^-1 . core . core-basepoint
/// conjugator), with the core rotation-stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub conjugator: ReducedWalk,
    pub core: ReducedWalk,
}

impl CyclicDecomposition {
    /// Recomposes the original walk; no cancellation occurs.
    pub fn recompose(&self) -> ReducedWalk {
        self.conjugator
            .inverse()
            .concat(&self.core)
            .and_then(|w| w.concat(&self.conjugator))
            .expect("decomposition endpoints always match")
    }
}

fn is_reduced_seq(seq: &[usize]) -> bool {
    (2..seq.len()).all(|i| seq[i - 2] != seq[i])
}

/// Smallest period of a word under the border-array characterization; falls
/// back to the full length when the shortest border period does not divide
/// the length.
fn smallest_period<T: Eq>(word: &[T]) -> usize {
    let n = word.len();
    if n == 0 {
        return 0;
    }
    let mut border = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && word[i] != word[k] {
            k = border[k];
        }
        if word[i] == word[k] {
            k += 1;
        }
        border[i + 1] = k;
    }
    let p = n - border[n];
    if n % p == 0 {
        p
    } else {
        n
    }
}

/// True iff the closed walk squares to eps. Exactly the walks whose core is
/// a single loop edge: odd-length palindromes around a loop.
pub fn is_torsion(c: &ReducedWalk) -> bool {
    !c.is_epsilon() && c.concat(c).map(|w| w.is_epsilon()).unwrap_or(false)
}

/// The exponent n with red(root^n) equal to `x`, if one exists. `root` must
/// be nonempty and closed; torsion roots have only eps and themselves as
/// powers.
pub fn power_exponent(x: &ReducedWalk, root: &ReducedWalk) -> Option<i64> {
    debug_assert!(!root.is_epsilon() && root.is_closed());
    if x.is_epsilon() {
        return Some(0);
    }
    if is_torsion(root) {
        return if x == root { Some(1) } else { None };
    }
    let core_len = root.cyclic_reduce().unwrap().core.len();
    debug_assert!(core_len >= 1);
    for sign in [1i64, -1] {
        let step = if sign == 1 { root.clone() } else { root.inverse() };
        let mut acc = step.clone();
        let mut n = 1i64;
        // |root^n| grows by core_len per step, so the scan terminates.
        while acc.len() <= x.len() {
            if &acc == x {
                return Some(sign * n);
            }
            acc = acc.concat(&step).unwrap();
            n += 1;
        }
    }
    None
}

/// A set of reduced walks sharing an endpoint pair, in one of the shapes
/// that arise as solution sets of conjugacy equations and as realizable
/// reconfiguration classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkFamily {
    /// No walks.
    Empty { from: usize, to: usize },
    /// Exactly one walk.
    Single { from: usize, to: usize, walk: ReducedWalk },
    /// { red(root^n . rep) : n in Z }. The root is nonempty and closed at
    /// `from`; for a torsion root the set has just two members.
    Coset {
        from: usize,
        to: usize,
        root: ReducedWalk,
        rep: ReducedWalk,
    },
    /// Every reduced walk from `from` to `to`.
    AllReduced { from: usize, to: usize },
    /// Every even-length reduced walk from `from` to `to`.
    AllEvenReduced { from: usize, to: usize },
}

impl WalkFamily {
    /// Builds a coset family, normalizing the root's orientation: root and
    /// its inverse generate the same set, so the lexicographically smaller
    /// vertex sequence is stored.
    pub fn coset(from: usize, to: usize, root: ReducedWalk, rep: ReducedWalk) -> WalkFamily {
        debug_assert!(!root.is_epsilon() && root.is_closed());
        debug_assert_eq!(root.endpoints().unwrap().0, from);
        let inv = root.inverse();
        let root = if inv.seq() < root.seq() { inv } else { root };
        WalkFamily::Coset { from, to, root, rep }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        match *self {
            WalkFamily::Empty { from, to }
            | WalkFamily::Single { from, to, .. }
            | WalkFamily::Coset { from, to, .. }
            | WalkFamily::AllReduced { from, to }
            | WalkFamily::AllEvenReduced { from, to } => (from, to),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, WalkFamily::Empty { .. })
    }

    fn endpoint_compatible(&self, q: &ReducedWalk) -> bool {
        let (from, to) = self.endpoints();
        match q.endpoints() {
            None => from == to,
            Some((s, e)) => s == from && e == to,
        }
    }

    pub fn contains(&self, q: &ReducedWalk) -> bool {
        if !self.endpoint_compatible(q) {
            return false;
        }
        match self {
            WalkFamily::Empty { .. } => false,
            WalkFamily::Single { walk, .. } => q == walk,
            WalkFamily::Coset { root, rep, .. } => {
                let diff = q
                    .concat(&rep.inverse())
                    .expect("compatible endpoints make q . rep^-1 composable");
                power_exponent(&diff, root).is_some()
            }
            WalkFamily::AllReduced { .. } => true,
            WalkFamily::AllEvenReduced { .. } => q.len() % 2 == 0,
        }
    }

    /// The member red(root^n . rep) of a coset family; `rep` itself for the
    /// other nonempty shapes when n is 0.
    pub fn coset_member(&self, n: i64) -> Option<ReducedWalk> {
        match self {
            WalkFamily::Coset { root, rep, .. } => Some(
                root.power(n)
                    .expect("coset roots are closed")
                    .concat(rep)
                    .expect("coset member composition is always defined"),
            ),
            WalkFamily::Single { walk, .. } if n == 0 => Some(walk.clone()),
            _ => None,
        }
    }

    /// All members with edge count at most `cap`, deduplicated and sorted
    /// by (length, vertex sequence). The unconstrained shapes enumerate
    /// reduced walks of `h` by depth-first search.
    pub fn members_with_max_len(&self, h: &Graph, cap: usize) -> Vec<ReducedWalk> {
        let (from, to) = self.endpoints();
        let mut out: Vec<ReducedWalk> = Vec::new();
        match self {
            WalkFamily::Empty { .. } => {}
            WalkFamily::Single { walk, .. } => {
                if walk.len() <= cap {
                    out.push(walk.clone());
                }
            }
            WalkFamily::Coset { root, rep, .. } => {
                let core_len = root.cyclic_reduce().unwrap().core.len().max(1);
                let limit = ((cap + rep.len()) / core_len + 2) as i64;
                for n in -limit..=limit {
                    let m = self.coset_member(n).unwrap();
                    if m.len() <= cap {
                        out.push(m);
                    }
                }
            }
            WalkFamily::AllReduced { .. } | WalkFamily::AllEvenReduced { .. } => {
                let even_only = matches!(self, WalkFamily::AllEvenReduced { .. });
                let mut seq = vec![from];
                enumerate_reduced(h, to, cap, even_only, &mut seq, &mut out);
                if from == to {
                    out.push(ReducedWalk::epsilon());
                }
            }
        }
        out.sort_by(|a, b| (a.len(), a.seq()).cmp(&(b.len(), b.seq())));
        out.dedup();
        out
    }
}

fn enumerate_reduced(
    h: &Graph,
    to: usize,
    cap: usize,
    even_only: bool,
    seq: &mut Vec<usize>,
    out: &mut Vec<ReducedWalk>,
) {
    let cur = *seq.last().unwrap();
    if seq.len() >= 2 && cur == to && (!even_only || (seq.len() - 1) % 2 == 0) {
        out.push(ReducedWalk::from_reduced_unchecked(seq.clone()));
    }
    if seq.len() - 1 >= cap {
        return;
    }
    let back = if seq.len() >= 2 { Some(seq[seq.len() - 2]) } else { None };
    for &w in h.neighbors(cur) {
        if Some(w) == back {
            continue;
        }
        seq.push(w);
        enumerate_reduced(h, to, cap, even_only, seq, out);
        seq.pop();
    }
}

/// Product-commutation test for two walks closed at the same vertex,
/// cross-checked in debug builds against the root criterion: nonempty
/// closed walks commute exactly when they share a primitive root up to
/// inversion.
pub fn commutes(c1: &ReducedWalk, c2: &ReducedWalk) -> Result<bool, GroupoidError> {
    if !c1.is_closed() || !c2.is_closed() {
        return Err(GroupoidError::NotClosed);
    }
    if let (Some((b1, _)), Some((b2, _))) = (c1.endpoints(), c2.endpoints()) {
        if b1 != b2 {
            return Err(GroupoidError::BasepointMismatch(b1, b2));
        }
    }
    let by_product = c1.concat(c2)? == c2.concat(c1)?;
    #[cfg(debug_assertions)]
    {
        let by_roots = if c1.is_epsilon() || c2.is_epsilon() {
            true
        } else {
            let (r1, _) = c1.primitive_root().unwrap();
            let (r2, _) = c2.primitive_root().unwrap();
            r1 == r2 || r1 == r2.inverse()
        };
        debug_assert_eq!(by_product, by_roots, "commutation criteria disagree");
    }
    Ok(by_product)
}

/// Solves b = red(q^-1 . a . q) for reduced walks q from `from` to `to`,
/// where `a` is closed at `from` and `b` closed at `to`.
///
/// Method: split both sides off their conjugators, match the cores as
/// cyclic edge words, and take the smallest rotation offset as the base
/// solution; all others differ by a power of a's primitive root.
pub fn solve_conjugacy_single(
    a: &ReducedWalk,
    b: &ReducedWalk,
    from: usize,
    to: usize,
) -> WalkFamily {
    debug_assert!(a.is_closed() && b.is_closed());
    if a.is_epsilon() {
        return if b.is_epsilon() {
            WalkFamily::AllReduced { from, to }
        } else {
            WalkFamily::Empty { from, to }
        };
    }
    if b.is_epsilon() {
        return WalkFamily::Empty { from, to };
    }
    let da = a.cyclic_reduce().unwrap();
    let db = b.cyclic_reduce().unwrap();
    let core_a = da.core.seq();
    let core_b = db.core.seq();
    if core_a.len() != core_b.len() {
        return WalkFamily::Empty { from, to };
    }
    let edges_a: Vec<(usize, usize)> = core_a.windows(2).map(|w| (w[0], w[1])).collect();
    let edges_b: Vec<(usize, usize)> = core_b.windows(2).map(|w| (w[0], w[1])).collect();
    let l = edges_a.len();
    let offset = (0..l).find(|&j| (0..l).all(|i| edges_a[(j + i) % l] == edges_b[i]));
    let Some(offset) = offset else {
        return WalkFamily::Empty { from, to };
    };
    // Conjugating a's core by its own length-j prefix rotates it by j.
    let shift = ReducedWalk::from_reduced_unchecked(if offset == 0 {
        Vec::new()
    } else {
        core_a[..=offset].to_vec()
    });
    let base = da
        .conjugator
        .inverse()
        .concat(&shift)
        .and_then(|w| w.concat(&db.conjugator))
        .expect("conjugator endpoints line up by construction");
    debug_assert_eq!(
        base.inverse().concat(a).unwrap().concat(&base).unwrap(),
        *b,
        "base solution fails the equation it was built from"
    );
    let (root, _) = a.primitive_root().unwrap();
    WalkFamily::coset(from, to, root, base)
}

/// Solves all equations b_i = red(q^-1 . a_i . q) at once by intersecting
/// the per-equation solution sets left to right. With no equations every
/// reduced walk from `from` to `to` is a solution.
pub fn solve_conjugacy_simultaneous(
    pairs: &[(ReducedWalk, ReducedWalk)],
    from: usize,
    to: usize,
) -> WalkFamily {
    let mut acc = WalkFamily::AllReduced { from, to };
    for (a, b) in pairs {
        let sol = solve_conjugacy_single(a, b, from, to);
        acc = intersect_families(&acc, &sol);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Intersection of two solution families over the same endpoint pair.
/// Only the shapes produced by conjugacy solving occur here, so the
/// even-parity shape is not handled.
fn intersect_families(f1: &WalkFamily, f2: &WalkFamily) -> WalkFamily {
    let (from, to) = f1.endpoints();
    debug_assert_eq!((from, to), f2.endpoints());
    match (f1, f2) {
        (WalkFamily::Empty { .. }, _) | (_, WalkFamily::Empty { .. }) => {
            WalkFamily::Empty { from, to }
        }
        (WalkFamily::AllReduced { .. }, other) => other.clone(),
        (other, WalkFamily::AllReduced { .. }) => other.clone(),
        (WalkFamily::Single { walk, .. }, other) => {
            if other.contains(walk) {
                f1.clone()
            } else {
                WalkFamily::Empty { from, to }
            }
        }
        (other, WalkFamily::Single { walk, .. }) => {
            if other.contains(walk) {
                f2.clone()
            } else {
                WalkFamily::Empty { from, to }
            }
        }
        (
            WalkFamily::Coset { root: r1, rep: p1, .. },
            WalkFamily::Coset { root: r2, rep: p2, .. },
        ) => {
            if is_torsion(r1) {
                return intersect_two_member_coset(r1, p1, f2, from, to);
            }
            if is_torsion(r2) {
                return intersect_two_member_coset(r2, p2, f1, from, to);
            }
            if r1 == r2 {
                // Roots are stored orientation-normalized, so equal roots
                // is the full same-cyclic-subgroup test.
                return if f1.contains(p2) {
                    f1.clone()
                } else {
                    WalkFamily::Empty { from, to }
                };
            }
            intersect_cosets_different_roots(r1, p1, r2, p2, f2, from, to)
        }
        (WalkFamily::AllEvenReduced { .. }, _) | (_, WalkFamily::AllEvenReduced { .. }) => {
            unreachable!("parity-filtered families never enter conjugacy intersection")
        }
    }
}

fn intersect_two_member_coset(
    root: &ReducedWalk,
    rep: &ReducedWalk,
    other: &WalkFamily,
    from: usize,
    to: usize,
) -> WalkFamily {
    let m0 = rep.clone();
    let m1 = root.concat(rep).expect("coset member composition");
    match (other.contains(&m0), other.contains(&m1)) {
        (true, true) => WalkFamily::coset(from, to, root.clone(), rep.clone()),
        (true, false) => WalkFamily::Single { from, to, walk: m0 },
        (false, true) => WalkFamily::Single { from, to, walk: m1 },
        (false, false) => WalkFamily::Empty { from, to },
    }
}

/// Cosets over non-torsion roots with distinct primitive roots meet in at
/// most one walk: two common members would force the roots to share a
/// power, hence a primitive root. The scan bound is generous; periodicity
/// arguments cap the exponent at which the r1-periodic head of a member
/// could still match an r2-power, and exceeding the bound without a match
/// proves emptiness.
fn intersect_cosets_different_roots(
    r1: &ReducedWalk,
    p1: &ReducedWalk,
    r2: &ReducedWalk,
    p2: &ReducedWalk,
    f2: &WalkFamily,
    from: usize,
    to: usize,
) -> WalkFamily {
    let core1 = r1.cyclic_reduce().unwrap().core.len().max(1);
    let derived =
        (2 * p1.len() + 2 * p2.len() + 4 * r1.len() + 4 * r2.len()) / (2 * core1) + 8;
    let classic = (r1.len() + r2.len() + p1.len() + p2.len()) / (2 * r1.len().max(1)) + 2;
    let bound = derived.max(classic) as i64;
    let mut found: Option<ReducedWalk> = None;
    for n in -bound..=bound {
        let candidate = r1
            .power(n)
            .expect("roots are closed")
            .concat(p1)
            .expect("coset member composition");
        if f2.contains(&candidate) {
            debug_assert!(
                found.is_none(),
                "cosets with distinct non-torsion roots met twice"
            );
            found = Some(candidate);
            #[cfg(not(debug_assertions))]
            break;
        }
    }
    match found {
        Some(walk) => WalkFamily::Single { from, to, walk },
        None => WalkFamily::Empty { from, to },
    }
}
