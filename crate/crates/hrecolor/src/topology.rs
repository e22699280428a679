//! Spanning-tree data for the domain graph and the walk-level criteria
//! built on it: the fundamental cycle basis, validity of a candidate base
//! walk against that basis, detection of tight closed walks (walks whose
//! alpha-image never cancels, freezing every vertex on them), and the
//! family of all valid base walks of an instance.

use std::collections::BTreeSet;

use crate::graph::{Coloring, Graph};
use crate::groupoid::{
    map_walk, solve_conjugacy_simultaneous, ReducedWalk, WalkFamily,
};

/// Breadth-first spanning tree rooted at the base vertex, with the tree
/// walk from the root to every vertex stored as a vertex sequence.
#[derive(Debug, Clone)]
pub struct TreeData {
    root: usize,
    parent: Vec<Option<usize>>,
    tree_walks: Vec<Vec<usize>>,
}

/// Builds the spanning tree by breadth-first search from `root`, visiting
/// neighbors in lexicographic order. The graph must be connected.
pub fn build_tree(g: &Graph, root: usize) -> TreeData {
    debug_assert!(g.is_connected());
    let n = g.vertex_count();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = std::collections::VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = order.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                order.push_back(w);
            }
        }
    }
    let mut tree_walks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        tree_walks[v] = path;
    }
    TreeData { root, parent, tree_walks }
}

impl TreeData {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent_of(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Vertex sequence of the unique tree walk root ... v (starts and ends
    /// with a single vertex when v is the root).
    pub fn tree_walk(&self, v: usize) -> &[usize] {
        &self.tree_walks[v]
    }

    pub fn is_tree_edge(&self, u: usize, v: usize) -> bool {
        self.parent[u] == Some(v) || self.parent[v] == Some(u)
    }

    /// One fundamental cycle per non-tree edge, oriented from the smaller
    /// endpoint, in sorted edge order: tree walk to the smaller endpoint,
    /// across the edge, tree walk back from the larger.
    pub fn cycle_basis(&self, g: &Graph) -> CycleBasis {
        let mut cycles = Vec::new();
        for (u, v) in g.edges() {
            if self.is_tree_edge(u, v) {
                continue;
            }
            let mut walk = self.tree_walks[u].clone();
            let mut back = self.tree_walks[v].clone();
            back.reverse();
            walk.extend_from_slice(&back);
            cycles.push(FundamentalCycle { edge: (u, v), walk });
        }
        CycleBasis { cycles }
    }
}

/// Closed walk at the root crossing exactly one non-tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalCycle {
    /// The non-tree edge, smaller endpoint first.
    pub edge: (usize, usize),
    /// Closed vertex sequence root ... u v ... root.
    pub walk: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    pub cycles: Vec<FundamentalCycle>,
}

impl CycleBasis {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// Writes a closed walk at the tree root as the ordered product of
/// fundamental cycles (+1) and their inverses (-1), one factor per
/// non-tree edge crossing. Reducing the recomposed product gives the same
/// reduced walk as the original; checked by tests, used by them only.
pub fn decompose_closed_walk(
    tree: &TreeData,
    basis: &CycleBasis,
    walk: &[usize],
) -> Vec<(usize, i8)> {
    debug_assert_eq!(walk.first(), walk.last());
    let mut factors = Vec::new();
    for pair in walk.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if tree.is_tree_edge(a, b) {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let idx = basis
            .cycles
            .iter()
            .position(|c| c.edge == key)
            .expect("every non-tree edge has a basis cycle");
        factors.push((idx, if (a, b) == key { 1 } else { -1 }));
    }
    factors
}

/// A candidate base walk `q_walk` from alpha's root color to beta's root
/// color is valid when conjugating the alpha-image of every fundamental
/// cycle by it gives the beta-image. Checking the basis suffices: images
/// of arbitrary closed walks factor through the basis decomposition.
pub fn is_topologically_valid(
    tree: &TreeData,
    basis: &CycleBasis,
    alpha: &Coloring,
    beta: &Coloring,
    q_walk: &ReducedWalk,
) -> bool {
    let from = alpha.get(tree.root());
    let to = beta.get(tree.root());
    let endpoints_ok = match q_walk.endpoints() {
        None => from == to,
        Some((s, e)) => s == from && e == to,
    };
    if !endpoints_ok {
        return false;
    }
    basis.cycles.iter().all(|cycle| {
        let a_img = ReducedWalk::reduce(&map_walk(alpha, &cycle.walk));
        let b_img = ReducedWalk::reduce(&map_walk(beta, &cycle.walk));
        let conjugated = q_walk
            .inverse()
            .concat(&a_img)
            .and_then(|w| w.concat(q_walk))
            .expect("endpoint check above makes conjugation composable");
        conjugated == b_img
    })
}

/// The family of all valid base walks, computed by solving the
/// simultaneous conjugacy system over the basis images.
pub fn enumerate_valid_family(
    tree: &TreeData,
    basis: &CycleBasis,
    alpha: &Coloring,
    beta: &Coloring,
) -> WalkFamily {
    let from = alpha.get(tree.root());
    let to = beta.get(tree.root());
    let pairs: Vec<(ReducedWalk, ReducedWalk)> = basis
        .cycles
        .iter()
        .map(|cycle| {
            (
                ReducedWalk::reduce(&map_walk(alpha, &cycle.walk)),
                ReducedWalk::reduce(&map_walk(beta, &cycle.walk)),
            )
        })
        .collect();
    solve_conjugacy_simultaneous(&pairs, from, to)
}

/// A closed walk in the domain graph whose alpha-image has no cancellation
/// anywhere, including around the wrap. Every vertex on such a walk keeps
/// its color in every reachable coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightWitness {
    /// Closed vertex sequence, first vertex repeated at the end.
    pub walk: Vec<usize>,
    /// The vertices the walk visits, sorted.
    pub vertices: BTreeSet<usize>,
}

/// Finds a closed walk whose alpha-image is cyclically reduced, if one
/// exists, by cycle detection on the step digraph: nodes are directed
/// edges of `g`, and (u,v) steps to (v,w) when the image of w differs from
/// the image of u, which is exactly when the images of uv and vw do not
/// cancel. Directed cycles correspond to tight walks. Nodes with no
/// outgoing arc are peeled off repeatedly; any remainder contains a cycle,
/// and the lexicographically first one is walked out deterministically.
pub fn find_tight_walk(g: &Graph, alpha: &Coloring) -> Option<TightWitness> {
    // Directed edge nodes in lexicographic order.
    let mut nodes: Vec<(usize, usize)> = Vec::new();
    for u in 0..g.vertex_count() {
        for &v in g.neighbors(u) {
            debug_assert_ne!(u, v, "the domain graph is loopless");
            nodes.push((u, v));
        }
    }
    let node_id = |u: usize, v: usize| nodes.binary_search(&(u, v)).unwrap();
    let successors = |&(u, v): &(usize, usize)| -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .filter(|&&w| alpha.get(w) != alpha.get(u))
            .map(|&w| node_id(v, w))
            .collect()
    };
    let mut alive = vec![true; nodes.len()];
    let mut out_degree: Vec<usize> = nodes.iter().map(|n| successors(n).len()).collect();
    let mut stack: Vec<usize> = (0..nodes.len()).filter(|&i| out_degree[i] == 0).collect();
    let mut alive_count = nodes.len();
    while let Some(dead) = stack.pop() {
        alive[dead] = false;
        alive_count -= 1;
        let (v, w) = nodes[dead];
        // Predecessors of (v, w) are (u, v) with image(u) != image(w).
        for &u in g.neighbors(v) {
            if alpha.get(u) != alpha.get(w) {
                let pred = node_id(u, v);
                if alive[pred] {
                    out_degree[pred] -= 1;
                    if out_degree[pred] == 0 {
                        stack.push(pred);
                    }
                }
            }
        }
    }
    if alive_count == 0 {
        return None;
    }
    // Every surviving node has a surviving successor; walking from the
    // smallest survivor must revisit a node, closing a cycle.
    let start = (0..nodes.len()).find(|&i| alive[i]).unwrap();
    let mut position: std::collections::HashMap<usize, usize> = Default::default();
    let mut trail: Vec<usize> = Vec::new();
    let mut cur = start;
    let cycle_start = loop {
        if let Some(&at) = position.get(&cur) {
            break at;
        }
        position.insert(cur, trail.len());
        trail.push(cur);
        cur = *successors(&nodes[cur])
            .iter()
            .find(|&&s| alive[s])
            .expect("peeling left only nodes with live successors");
    };
    let cycle = &trail[cycle_start..];
    let mut walk: Vec<usize> = cycle.iter().map(|&i| nodes[i].0).collect();
    walk.push(walk[0]);
    let vertices: BTreeSet<usize> = walk.iter().copied().collect();
    debug_assert!(is_cyclically_reduced_image(alpha, &walk));
    Some(TightWitness { walk, vertices })
}

fn is_cyclically_reduced_image(alpha: &Coloring, walk: &[usize]) -> bool {
    let k = walk.len() - 1;
    if k < 1 {
        return false;
    }
    // walk[k] == walk[0]; index the cyclic sequence of k image steps.
    (0..k).all(|i| alpha.get(walk[(i + k - 1) % k]) != alpha.get(walk[(i + 1) % k]))
}

/// The only base walk a tight witness permits: a frozen vertex v on the
/// witness never moves, so transporting its empty trace along the tree
/// walk T from the root to v pins the base walk to
/// red(alpha(T)) . red(beta(T))^-1. Undefined when alpha and beta disagree
/// on v; no walk is realizable then.
pub fn tight_pinned_walk(
    witness: &TightWitness,
    tree: &TreeData,
    alpha: &Coloring,
    beta: &Coloring,
) -> Option<ReducedWalk> {
    let v = *witness.vertices.iter().next().expect("witness visits vertices");
    if alpha.get(v) != beta.get(v) {
        return None;
    }
    let t = tree.tree_walk(v);
    let a_img = ReducedWalk::reduce(&map_walk(alpha, t));
    let b_img = ReducedWalk::reduce(&map_walk(beta, t));
    Some(
        a_img
            .concat(&b_img.inverse())
            .expect("both images run from the root colors to the shared color of v"),
    )
}
