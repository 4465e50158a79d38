//! Named graphs and seeded random graph generators.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{CycleCertificate, Graph};

/// A graph together with its designated odd cycles.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
    pub cycles: Vec<CycleCertificate>,
}

impl Instance {
    fn new(name: impl Into<String>, graph: Graph, cycles: &[&[usize]]) -> Self {
        let cycles = cycles
            .iter()
            .map(|c| CycleCertificate::new(&graph, c.to_vec()).expect("named cycle is valid"))
            .collect();
        Instance { name: name.into(), graph, cycles }
    }
}

/// `C_k` on vertices `0..k` in order, designated.
pub fn cycle(k: usize) -> Instance {
    let g = Graph::new(k, (0..k).map(|i| (i, (i + 1) % k))).expect("cycle");
    let c: Vec<usize> = (0..k).collect();
    Instance::new(format!("C{k}"), g, &[&c])
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path")
}

/// Three triangles `{1,2,3}`, `{2,3,4}`, `{1,3,5}` glued along edges.
pub fn bowtie() -> Instance {
    let g = Graph::new(5, [(0, 1), (1, 3), (3, 2), (2, 4), (4, 0), (1, 2), (2, 0)]).expect("bowtie");
    Instance::new("bowtie", g, &[&[0, 1, 2], &[1, 2, 3], &[0, 2, 4]])
}

/// `C_k` with a path of `len` edges hanging off the first cycle vertex.
pub fn cycle_with_pendant_path(k: usize, len: usize) -> Instance {
    cycle_with_pendants(k, &[(0, len)], format!("C{k}+path{len}"))
}

/// `C_k` with pendant paths `(attach vertex, edge count)`; the path vertices
/// are numbered after the cycle in the given order.
pub fn cycle_with_pendants(k: usize, paths: &[(usize, usize)], name: String) -> Instance {
    let base = cycle(k);
    let n = k + paths.iter().map(|p| p.1).sum::<usize>();
    let mut g = Graph::new(n, base.graph.edges().iter().copied()).expect("cycle");
    let mut next = k;
    for &(at, len) in paths {
        let mut prev = at;
        for _ in 0..len {
            g.add_edge(prev, next).expect("fresh vertex");
            prev = next;
            next += 1;
        }
    }
    let c: Vec<usize> = (0..k).collect();
    Instance::new(name, g, &[&c])
}

/// `C_5` with two two-edge paths at one vertex.
pub fn c5_two_p3() -> Instance {
    cycle_with_pendants(5, &[(0, 2), (0, 2)], "C5+2P3".into())
}

/// `C_7` with one two-edge path.
pub fn c7_p3() -> Instance {
    cycle_with_pendants(7, &[(0, 2)], "C7+P3".into())
}

/// `C_5` with a leaf at every cycle vertex.
pub fn c5_whiskers() -> Instance {
    cycle_with_pendants(5, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)], "C5+whiskers".into())
}

/// `C_5` glued to two squares along edges, with two leaves at the apex.
pub fn c5_two_squares() -> Instance {
    let edges = [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
        (0, 5), (5, 6), (6, 4),
        (1, 7), (7, 8), (8, 2),
        (3, 9), (3, 10),
    ];
    let g = Graph::new(11, edges).expect("graph");
    Instance::new("C5+2C4+2leaves", g, &[&[0, 1, 2, 3, 4]])
}

/// Erdős–Rényi style graph on `n` vertices.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).expect("random edges are simple")
}

/// `count` connected non-bipartite graphs on `min_n..=max_n` vertices.
pub fn random_non_bipartite(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(min_n..=max_n);
        let g = random_graph(&mut rng, n, 0.45);
        if g.is_connected() && !g.is_bipartite() {
            out.push(g);
        }
    }
    out
}

/// `count` graphs with at least one edge on `min_n..=max_n` vertices.
pub fn random_graphs(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(min_n..=max_n);
        let g = random_graph(&mut rng, n, 0.4);
        if g.edge_count() > 0 {
            out.push(g);
        }
    }
    out
}

/// Random forests on `2..=max_n` vertices: random recursive trees with some
/// edges dropped.
pub fn random_forests(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            let mut labels: Vec<usize> = (0..n).collect();
            labels.shuffle(&mut rng);
            let mut edges = Vec::new();
            for i in 1..n {
                let parent = labels[rng.gen_range(0..i)];
                if rng.gen_bool(0.85) {
                    edges.push((parent, labels[i]));
                }
            }
            Graph::new(n, edges).expect("tree edges are simple")
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Connected bipartite graphs on exactly `n ≤ 7` vertices, one per
/// isomorphism class.
pub fn connected_bipartite_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "exhaustive enumeration is limited to 7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let encode = |edges: &[(usize, usize)], p: &[usize]| -> u32 {
        edges.iter().fold(0u32, |m, &(u, v)| {
            let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
            m | 1 << pairs.iter().position(|&e| e == (a, b)).expect("pair")
        })
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let g = Graph::new(n, edges.iter().copied()).expect("simple");
        if !g.is_connected() || !g.is_bipartite() {
            continue;
        }
        let canon = perms.iter().map(|p| encode(&edges, p)).min().expect("nonempty");
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}
