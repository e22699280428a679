//! Undirected graphs with string-named vertices, colorings of one graph by
//! another, and the structural checks the reconfiguration engine relies on.
//!
//! Vertices are opaque strings ordered lexicographically; internally every
//! vertex is the index of its name in the sorted vertex list, so iteration
//! in index order is iteration in name order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("edge endpoint {0:?} is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("loop at {0:?} is not allowed in this graph")]
    LoopNotAllowed(String),
    #[error("vertex {0:?} is not a vertex of this graph")]
    UnknownVertex(String),
    #[error("colors {a:?} and {b:?} have no common neighbor")]
    NoCommonNeighbor { a: String, b: String },
    #[error("coloring does not assign a color to vertex {0:?}")]
    MissingAssignment(String),
}

/// Finite undirected graph. Loops are permitted only when `allows_loops` was
/// set at construction; multi-edges are collapsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    allows_loops: bool,
}

impl Graph {
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        edges: &[(S, S)],
        allows_loops: bool,
    ) -> Result<Graph, GraphError> {
        let mut names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateVertex(pair[0].clone()));
            }
        }
        let index: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); names.len()];
        let mut edge_count = 0;
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownEndpoint(a.to_owned()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownEndpoint(b.to_owned()))?;
            if ia == ib && !allows_loops {
                return Err(GraphError::LoopNotAllowed(a.to_owned()));
            }
            if sets[ia].insert(ib) {
                edge_count += 1;
            }
            sets[ib].insert(ia);
        }
        let adj = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Graph { names, index, adj, edge_count, allows_loops })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Number of distinct undirected edges, loops counted once.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn allows_loops(&self) -> bool {
        self.allows_loops
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
    }

    /// Neighbors of `v` in increasing index order; contains `v` itself
    /// exactly when there is a loop at `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Undirected edges as ordered pairs (a <= b), sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for a in 0..self.adj.len() {
            for &b in &self.adj[a] {
                if a <= b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True iff the graph is nonempty and every vertex is reachable from
    /// every other. Loops are ignored by reachability.
    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.names.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.names.len()
    }

    /// Connected component of `v` as a sorted vertex list.
    pub fn component_of(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.names.len()];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        (0..self.names.len()).filter(|&u| seen[u]).collect()
    }

    /// Checks that every two distinct vertices share at most one common
    /// neighbor. Returns the lexicographically first violating pair
    /// otherwise. A loop at `v` puts `v` into its own neighborhood, so the
    /// check covers looped targets with no special cases.
    pub fn check_common_neighbor_bound(&self) -> Result<(), (usize, usize)> {
        let n = self.names.len();
        for a in 0..n {
            for b in (a + 1)..n {
                let mut common = 0;
                let (mut i, mut j) = (0, 0);
                let (na, nb) = (&self.adj[a], &self.adj[b]);
                while i < na.len() && j < nb.len() {
                    match na[i].cmp(&nb[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            common += 1;
                            if common > 1 {
                                return Err((a, b));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The unique common neighbor of two distinct adjacent-or-not colors in
    /// a target satisfying `check_common_neighbor_bound`. This is the color every neighbor of
    /// a vertex holds while that vertex moves from `a` to `b`.
    pub fn common_neighbor_color(&self, a: usize, b: usize) -> Result<usize, GraphError> {
        debug_assert_ne!(a, b, "common neighbor color is only asked for a != b");
        let (na, nb) = (&self.adj[a], &self.adj[b]);
        let (mut i, mut j) = (0, 0);
        while i < na.len() && j < nb.len() {
            match na[i].cmp(&nb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Ok(na[i]),
            }
        }
        Err(GraphError::NoCommonNeighbor {
            a: self.names[a].clone(),
            b: self.names[b].clone(),
        })
    }

    /// True iff some walk of even edge count connects `from` to `to`.
    /// Explored on the parity double cover, so loops (odd closed walks of
    /// length one) and disconnected targets need no special handling.
    pub fn even_walk_exists(&self, from: usize, to: usize) -> bool {
        self.walk_of_parity_exists(from, to, 0)
    }

    /// True iff some walk with edge count of parity `parity` (0 even, 1 odd)
    /// connects `from` to `to`.
    pub fn walk_of_parity_exists(&self, from: usize, to: usize, parity: u8) -> bool {
        self.shortest_walk_of_parity(from, to, parity).is_some()
    }

    /// A minimum-length walk of the given edge-count parity as a vertex
    /// sequence, found by breadth-first search on the parity double cover.
    /// A shortest walk of fixed parity never backtracks: dropping the two
    /// cancelling edges would keep endpoints and parity while shortening.
    pub fn shortest_walk_of_parity(
        &self,
        from: usize,
        to: usize,
        parity: u8,
    ) -> Option<Vec<usize>> {
        let n = self.names.len();
        let mut parent: Vec<[Option<usize>; 2]> = vec![[None; 2]; n];
        let mut seen = vec![[false; 2]; n];
        let mut queue = VecDeque::from([(from, 0u8)]);
        seen[from][0] = true;
        while let Some((v, p)) = queue.pop_front() {
            if v == to && p == parity {
                let mut walk = Vec::new();
                let (mut cur, mut cp) = (v, p);
                loop {
                    walk.push(cur);
                    if cur == from && cp == 0 {
                        break;
                    }
                    let prev = parent[cur][cp as usize].expect("followed parents to the start");
                    cur = prev;
                    cp = (cp + 1) % 2;
                }
                walk.reverse();
                return Some(walk);
            }
            for &w in &self.adj[v] {
                let np = (p + 1) % 2;
                if !seen[w][np as usize] {
                    seen[w][np as usize] = true;
                    parent[w][np as usize] = Some(v);
                    queue.push_back((w, np));
                }
            }
        }
        None
    }
}

/// Assignment of a target-graph vertex (a color) to every domain vertex,
/// stored by domain vertex index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Coloring {
        Coloring { colors }
    }

    /// Builds a coloring from a name-to-name map, requiring totality over
    /// the domain's vertices and known color names.
    pub fn from_map(
        g: &Graph,
        h: &Graph,
        map: &BTreeMap<String, String>,
    ) -> Result<Coloring, GraphError> {
        let mut colors = Vec::with_capacity(g.vertex_count());
        for v in 0..g.vertex_count() {
            let color = map
                .get(g.name(v))
                .ok_or_else(|| GraphError::MissingAssignment(g.name(v).to_owned()))?;
            colors.push(h.index_of(color)?);
        }
        for name in map.keys() {
            g.index_of(name)?;
        }
        Ok(Coloring { colors })
    }

    pub fn to_map(&self, g: &Graph, h: &Graph) -> BTreeMap<String, String> {
        self.colors
            .iter()
            .enumerate()
            .map(|(v, &c)| (g.name(v).to_owned(), h.name(c).to_owned()))
            .collect()
    }

    pub fn get(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, color: usize) {
        self.colors[v] = color;
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colors
    }
}

/// True iff `sigma` maps every edge of `g` to an edge of `h` (a loop image
/// counts as an edge exactly when `h` has that loop).
pub fn is_homomorphism(g: &Graph, h: &Graph, sigma: &Coloring) -> bool {
    debug_assert_eq!(sigma.len(), g.vertex_count());
    g.edges()
        .iter()
        .all(|&(a, b)| h.has_edge(sigma.get(a), sigma.get(b)))
}
