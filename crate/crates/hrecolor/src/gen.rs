//! Seeded random instance generation.
//!
//! Used by the test suites and the `gen` subcommand. Targets come from a
//! fixed pool of small graphs with the monochromatic neighborhood property;
//! domains are random small connected loopless graphs; colorings are found
//! by randomized backtracking, and the goal coloring is taken either from a
//! random legal recoloring walk (biased toward reachable pairs) or sampled
//! independently (often unreachable).

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Coloring, Graph};
use crate::instance::Instance;
use crate::oracle::successors;

/// The deterministic generator all seeded entry points use.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small targets with the monochromatic neighborhood property, by name.
pub fn target_pool() -> Vec<(&'static str, Graph)> {
    let k3 = Graph::new(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")], true).unwrap();
    let c5 = cycle(5);
    let p4 = Graph::new(
        &["p0", "p1", "p2", "p3"],
        &[("p0", "p1"), ("p1", "p2"), ("p2", "p3")],
        true,
    )
    .unwrap();
    let wedge = Graph::new(
        &["w", "a1", "a2", "b1", "b2"],
        &[
            ("w", "a1"),
            ("w", "a2"),
            ("a1", "a2"),
            ("w", "b1"),
            ("w", "b2"),
            ("b1", "b2"),
        ],
        true,
    )
    .unwrap();
    let c6 = cycle(6);
    let k3_pendant = Graph::new(
        &["x", "y", "z", "t"],
        &[("x", "y"), ("y", "z"), ("x", "z"), ("x", "t")],
        true,
    )
    .unwrap();
    let looped_star = Graph::new(
        &["s", "l1", "l2", "l3"],
        &[
            ("s", "l1"),
            ("s", "l2"),
            ("s", "l3"),
            ("l1", "l1"),
            ("l2", "l2"),
            ("l3", "l3"),
        ],
        true,
    )
    .unwrap();
    let pool = vec![
        ("k3", k3),
        ("c5", c5),
        ("p4", p4),
        ("wedge", wedge),
        ("c6", c6),
        ("k3-pendant", k3_pendant),
        ("looped-star", looped_star),
    ];
    debug_assert!(pool.iter().all(|(_, h)| h.check_common_neighbor_bound().is_ok()));
    pool
}

fn cycle(n: usize) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let edges: Vec<(String, String)> = (0..n)
        .map(|i| (format!("c{i}"), format!("c{}", (i + 1) % n)))
        .collect();
    Graph::new(&names, &edges, true).unwrap()
}

/// A random connected loopless graph with 2..=max_vertices vertices: a
/// random spanning tree plus each remaining pair independently.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> Graph {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 1..n {
        let p = rng.gen_range(0..i);
        edges.push((names[p].clone(), names[i].clone()));
    }
    for i in 0..n {
        for j in i + 1..n {
            let tree_edge = edges.iter().any(|(a, b)| {
                (a == &names[i] && b == &names[j]) || (a == &names[j] && b == &names[i])
            });
            if !tree_edge && rng.gen_bool(0.3) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(&names, &edges, false).unwrap()
}

/// A uniform-ish homomorphism found by backtracking with shuffled color
/// order, or None when no homomorphism exists.
pub fn random_homomorphism(rng: &mut ChaCha8Rng, g: &Graph, h: &Graph) -> Option<Coloring> {
    let n = g.vertex_count();
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    fn assign(
        rng: &mut ChaCha8Rng,
        g: &Graph,
        h: &Graph,
        assignment: &mut Vec<Option<usize>>,
        v: usize,
    ) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        let mut colors: Vec<usize> = (0..h.vertex_count()).collect();
        colors.shuffle(rng);
        for c in colors {
            let ok = g.neighbors(v).iter().all(|&w| match assignment[w] {
                Some(cw) => h.has_edge(c, cw),
                None => true,
            });
            if ok {
                assignment[v] = Some(c);
                if assign(rng, g, h, assignment, v + 1) {
                    return true;
                }
                assignment[v] = None;
            }
        }
        false
    }
    if assign(rng, g, h, &mut assignment, 0) {
        Some(Coloring::new(
            assignment.into_iter().map(|c| c.unwrap()).collect(),
        ))
    } else {
        None
    }
}

/// The endpoint of a random legal recoloring walk from `start`.
pub fn random_walk_coloring(
    rng: &mut ChaCha8Rng,
    g: &Graph,
    h: &Graph,
    start: &Coloring,
    steps: usize,
) -> Coloring {
    let mut current = start.clone();
    for _ in 0..steps {
        let moves = successors(g, h, &current);
        if moves.is_empty() {
            break;
        }
        let (_, _, next) = moves[rng.gen_range(0..moves.len())].clone();
        current = next;
    }
    current
}

/// A complete random instance over the target pool. Retries domains until
/// the chosen target admits a homomorphism, so this always terminates for
/// the pool above (every pool target contains an edge, so any bipartite
/// domain maps in; non-bipartite domains are re-rolled when needed).
pub fn random_instance(rng: &mut ChaCha8Rng, max_g_vertices: usize) -> (String, Instance) {
    let pool = target_pool();
    loop {
        let (name, h) = &pool[rng.gen_range(0..pool.len())];
        let g = random_connected_graph(rng, max_g_vertices);
        let Some(alpha) = random_homomorphism(rng, &g, h) else {
            continue;
        };
        let beta = if rng.gen_bool(0.5) {
            let steps = rng.gen_range(0..=3 * g.vertex_count());
            random_walk_coloring(rng, &g, h, &alpha, steps)
        } else {
            match random_homomorphism(rng, &g, h) {
                Some(b) => b,
                None => continue,
            }
        };
        let q = rng.gen_range(0..g.vertex_count());
        return (
            name.to_string(),
            Instance {
                g,
                h: h.clone(),
                alpha,
                beta,
                q,
                q_explicit: true,
            },
        );
    }
}
