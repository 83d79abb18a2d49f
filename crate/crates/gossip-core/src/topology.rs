//! Graph families with symmetry-orbit labels.
//!
//! Every generator documents its vertex numbering, because probability
//! vectors are positional. Orbit labels are assigned constructively per
//! family (branch and ring symmetries only); custom edge lists get singleton
//! orbits. Orbits let the optimizers collapse same-role vertices and edges
//! into one variable each.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Tagged description of how a topology was generated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "generator", content = "params", rename_all = "kebab-case")]
pub enum Generator {
    /// `n` vertices in a line, numbered 0..n-1 from one end.
    Path { n: usize },
    /// `n` vertices in a ring, numbered 0..n-1 around it.
    Cycle { n: usize },
    /// `K_n`, vertices 0..n-1.
    Complete { n: usize },
    /// Center 0 plus `n` leaves 1..=n.
    Star { n: usize },
    /// Center 0 plus `n` branches of `k` vertices each; branch `i` occupies
    /// `1 + i*k .. 1 + (i+1)*k`, innermost first.
    Symstar { n: usize, k: usize },
    /// `n` branches of `k` vertices whose innermost vertices form `K_n`;
    /// branch `i` occupies `i*k .. (i+1)*k`, core vertex first.
    Ccs { n: usize, k: usize },
    /// Core `K_n` plus two tails per core vertex, of `k1` and `k2` vertices.
    /// Branch `i` occupies `i*(1+k1+k2)..`: core, then the k1 tail outward,
    /// then the k2 tail outward.
    Ccs2 { n: usize, k1: usize, k2: usize },
    /// Star center 0, leaves 1..=n, then a path of `k` vertices n+1..n+k
    /// hanging off the center.
    Palm { n: usize, k: usize },
    /// `K_{n+1}` on 0..=n with bridging vertex 0, plus a tail of `k`
    /// vertices n+1..n+k attached to 0.
    Lollipop { n: usize, k: usize },
    /// Hub 0 plus a ring 1..=n, hub connected to every ring vertex.
    Wheel { n: usize },
    /// Cartesian product of factor graphs; vertex `(eta_1,..,eta_m)` maps to
    /// the row-major index with the last factor fastest.
    Cartesian { factors: Vec<Generator> },
    /// Two complete graphs on `n1 + n2` and `n2 + n3` vertices sharing the
    /// middle `n2`; groups are numbered A = 0..n1, B = n1..n1+n2, C = rest.
    TwoCoupled { n1: usize, n2: usize, n3: usize },
    /// Explicit edge list; singleton orbits.
    Custom,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Topology {
    pub n_vertices: usize,
    /// Unordered edges in canonical form: `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub generator: Generator,
    /// One label per vertex; equal labels mean interchangeable roles.
    pub vertex_orbit: Vec<usize>,
    /// One label per edge, aligned with `edges`.
    pub edge_orbit: Vec<usize>,
}

fn canonical_edges(edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let set: BTreeSet<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    set.into_iter().collect()
}

impl Topology {
    /// Build from an explicit edge list; orbits are singletons.
    pub fn custom(n_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let edges = canonical_edges(edges);
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop at {a}")));
            }
            if b >= n_vertices {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a},{b}) outside 0..{n_vertices}"
                )));
            }
        }
        let edge_orbit = (0..edges.len()).collect();
        Ok(Self {
            n_vertices,
            vertex_orbit: (0..n_vertices).collect(),
            edge_orbit,
            edges,
            generator: Generator::Custom,
        })
    }

    fn assemble(
        generator: Generator,
        n_vertices: usize,
        edges: Vec<((usize, usize), usize)>,
        vertex_orbit: Vec<usize>,
    ) -> Self {
        let mut pairs: Vec<((usize, usize), usize)> = edges
            .into_iter()
            .map(|((a, b), o)| ((a.min(b), a.max(b)), o))
            .collect();
        pairs.sort();
        pairs.dedup();
        let (edges, edge_orbit) = pairs.into_iter().unzip();
        Self {
            n_vertices,
            edges,
            generator,
            vertex_orbit,
            edge_orbit,
        }
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    /// Breadth-first connectivity check.
    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.n_vertices];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n_vertices
    }

    /// Distinct vertex-orbit labels in first-seen order.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let mut seen = Vec::new();
        for &o in &self.vertex_orbit {
            if !seen.contains(&o) {
                seen.push(o);
            }
        }
        seen
    }

    pub fn edge_orbits(&self) -> Vec<usize> {
        let mut seen = Vec::new();
        for &o in &self.edge_orbit {
            if !seen.contains(&o) {
                seen.push(o);
            }
        }
        seen
    }
}

fn positive(name: &str, v: usize) -> Result<usize> {
    if v == 0 {
        Err(Error::InvalidParameter(format!("{name} must be >= 1")))
    } else {
        Ok(v)
    }
}

/// Generate a topology from its descriptor.
pub fn generate(descriptor: &Generator) -> Result<Topology> {
    use Generator::*;
    let topo = match descriptor {
        Path { n } => path(positive("n", *n)?),
        Cycle { n } => cycle(*n)?,
        Complete { n } => complete(positive("n", *n)?),
        Star { n } => star(positive("n", *n)?),
        Symstar { n, k } => symstar(positive("n", *n)?, positive("k", *k)?),
        Ccs { n, k } => ccs(positive("n", *n)?, positive("k", *k)?),
        Ccs2 { n, k1, k2 } => ccs2(positive("n", *n)?, positive("k1", *k1)?, *k2),
        Palm { n, k } => palm(positive("n", *n)?, positive("k", *k)?),
        Lollipop { n, k } => lollipop(positive("n", *n)?, positive("k", *k)?),
        Wheel { n } => wheel(*n)?,
        Cartesian { factors } => {
            let built: Result<Vec<Topology>> = factors.iter().map(generate).collect();
            cartesian_product(&built?)?
        }
        TwoCoupled { n1, n2, n3 } => two_coupled(
            positive("n1", *n1)?,
            positive("n2", *n2)?,
            positive("n3", *n3)?,
        ),
        Custom => {
            return Err(Error::UnsupportedDescriptor(
                "custom topologies need an explicit edge list".into(),
            ))
        }
    };
    debug_assert!(topo.is_connected());
    Ok(topo)
}

pub fn path(n: usize) -> Topology {
    // vertex orbit: distance from the nearer end; edge orbit likewise
    let vertex_orbit = (0..n).map(|i| i.min(n - 1 - i)).collect();
    let edges = (0..n.saturating_sub(1))
        .map(|i| ((i, i + 1), i.min(n - 2 - i)))
        .collect();
    Topology::assemble(Generator::Path { n }, n, edges, vertex_orbit)
}

pub fn cycle(n: usize) -> Result<Topology> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycle needs n >= 3".into()));
    }
    let edges = (0..n).map(|i| ((i, (i + 1) % n), 0)).collect();
    Ok(Topology::assemble(
        Generator::Cycle { n },
        n,
        edges,
        vec![0; n],
    ))
}

pub fn complete(n: usize) -> Topology {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push(((i, j), 0));
        }
    }
    Topology::assemble(Generator::Complete { n }, n, edges, vec![0; n])
}

pub fn star(n: usize) -> Topology {
    let mut vertex_orbit = vec![1; n + 1];
    vertex_orbit[0] = 0;
    let edges = (1..=n).map(|i| ((0, i), 0)).collect();
    Topology::assemble(Generator::Star { n }, n + 1, edges, vertex_orbit)
}

pub fn symstar(n: usize, k: usize) -> Topology {
    let nv = 1 + n * k;
    let mut vertex_orbit = vec![0; nv];
    let mut edges = Vec::new();
    for branch in 0..n {
        for j in 1..=k {
            let v = 1 + branch * k + (j - 1);
            vertex_orbit[v] = j;
            let prev = if j == 1 { 0 } else { v - 1 };
            // edge orbit = distance of the inner endpoint from the center
            edges.push(((prev, v), j - 1));
        }
    }
    Topology::assemble(Generator::Symstar { n, k }, nv, edges, vertex_orbit)
}

pub fn ccs(n: usize, k: usize) -> Topology {
    let nv = n * k;
    let mut vertex_orbit = vec![0; nv];
    let mut edges = Vec::new();
    for branch in 0..n {
        let base = branch * k;
        for j in 1..=k {
            vertex_orbit[base + j - 1] = j - 1;
            if j > 1 {
                // tail edge at distance j-1 from the core
                edges.push(((base + j - 2, base + j - 1), j - 1));
            }
        }
        for other in (branch + 1)..n {
            edges.push(((base, other * k), 0));
        }
    }
    Topology::assemble(Generator::Ccs { n, k }, nv, edges, vertex_orbit)
}

pub fn ccs2(n: usize, k1: usize, k2: usize) -> Topology {
    let per = 1 + k1 + k2;
    let nv = n * per;
    let mut vertex_orbit = vec![0; nv];
    let mut edges = Vec::new();
    for branch in 0..n {
        let base = branch * per;
        for a in 1..=k1 {
            vertex_orbit[base + a] = a;
            let prev = if a == 1 { base } else { base + a - 1 };
            edges.push(((prev, base + a), a));
        }
        for b in 1..=k2 {
            let v = base + k1 + b;
            vertex_orbit[v] = k1 + b;
            let prev = if b == 1 { base } else { v - 1 };
            edges.push(((prev, v), k1 + b));
        }
        for other in (branch + 1)..n {
            edges.push(((base, other * per), 0));
        }
    }
    Topology::assemble(Generator::Ccs2 { n, k1, k2 }, nv, edges, vertex_orbit)
}

pub fn palm(n: usize, k: usize) -> Topology {
    let nv = n + k + 1;
    let mut vertex_orbit = vec![0; nv];
    vertex_orbit[1..=n].fill(1);
    let mut edges = Vec::new();
    for leaf in 1..=n {
        edges.push(((0, leaf), 0));
    }
    for j in 1..=k {
        let v = n + j;
        vertex_orbit[v] = 1 + j;
        let prev = if j == 1 { 0 } else { v - 1 };
        edges.push(((prev, v), j));
    }
    Topology::assemble(Generator::Palm { n, k }, nv, edges, vertex_orbit)
}

pub fn lollipop(n: usize, k: usize) -> Topology {
    let nv = n + 1 + k;
    let mut vertex_orbit = vec![0; nv];
    let mut edges = Vec::new();
    // clique on 0..=n: bridging vertex 0 (orbit 0), others orbit 1
    vertex_orbit[1..=n].fill(1);
    for i in 1..=n {
        edges.push(((0, i), 1)); // bridge-to-clique spokes
        for j in (i + 1)..=n {
            edges.push(((i, j), 0)); // clique-internal
        }
    }
    for j in 1..=k {
        let v = n + j;
        vertex_orbit[v] = 1 + j;
        let prev = if j == 1 { 0 } else { v - 1 };
        edges.push(((prev, v), 1 + j)); // tail edges
    }
    Topology::assemble(Generator::Lollipop { n, k }, nv, edges, vertex_orbit)
}

pub fn wheel(n: usize) -> Result<Topology> {
    if n < 3 {
        return Err(Error::InvalidParameter("wheel needs n >= 3".into()));
    }
    let nv = n + 1;
    let mut vertex_orbit = vec![1; nv];
    vertex_orbit[0] = 0;
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.push(((0, i), 0)); // spokes
        let next = if i == n { 1 } else { i + 1 };
        edges.push(((i, next), 1)); // rim
    }
    Ok(Topology::assemble(
        Generator::Wheel { n },
        nv,
        edges,
        vertex_orbit,
    ))
}

/// Cartesian product of connected factors: vertices are tuples, an edge joins
/// tuples differing in exactly one coordinate by a factor edge. The edge
/// orbit is the index of the differing factor (valid for edge-transitive
/// factors). Row-major tuple indexing, last factor fastest.
pub fn cartesian_product(factors: &[Topology]) -> Result<Topology> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("empty factor list".into()));
    }
    for (i, f) in factors.iter().enumerate() {
        if f.n_vertices < 2 {
            return Err(Error::InvalidParameter(format!(
                "factor {i} has fewer than 2 vertices"
            )));
        }
        if !f.is_connected() {
            return Err(Error::InvalidParameter(format!("factor {i} disconnected")));
        }
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.n_vertices).collect();
    let nv: usize = sizes.iter().product();
    let mut strides = vec![1usize; factors.len()];
    for i in (0..factors.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    let mut edges = Vec::new();
    for idx in 0..nv {
        let tuple: Vec<usize> = strides
            .iter()
            .zip(sizes.iter())
            .map(|(s, n)| idx / s % n)
            .collect();
        for (fi, f) in factors.iter().enumerate() {
            for &(a, b) in &f.edges {
                if tuple[fi] == a {
                    let other = idx + (b - a) * strides[fi];
                    edges.push(((idx, other), fi));
                }
            }
        }
    }
    // vertex orbits: tuple of factor orbits, collapsed to dense labels
    let mut orbit_keys: Vec<Vec<usize>> = Vec::with_capacity(nv);
    for idx in 0..nv {
        let key: Vec<usize> = strides
            .iter()
            .zip(sizes.iter())
            .zip(factors.iter())
            .map(|((s, n), f)| f.vertex_orbit[idx / s % n])
            .collect();
        orbit_keys.push(key);
    }
    let mut labels = Vec::new();
    let vertex_orbit = orbit_keys
        .iter()
        .map(|k| {
            if let Some(pos) = labels.iter().position(|l| l == k) {
                pos
            } else {
                labels.push(k.clone());
                labels.len() - 1
            }
        })
        .collect();
    Ok(Topology::assemble(
        Generator::Cartesian {
            factors: factors.iter().map(|f| f.generator.clone()).collect(),
        },
        nv,
        edges,
        vertex_orbit,
    ))
}

pub fn two_coupled(n1: usize, n2: usize, n3: usize) -> Topology {
    let nv = n1 + n2 + n3;
    let group = |v: usize| {
        if v < n1 {
            0
        } else if v < n1 + n2 {
            1
        } else {
            2
        }
    };
    let mut edges = Vec::new();
    for i in 0..nv {
        for j in (i + 1)..nv {
            let (gi, gj) = (group(i), group(j));
            // complete on A union B, complete on B union C
            let in_top = gi <= 1 && gj <= 1;
            let in_bottom = gi >= 1 && gj >= 1;
            if in_top || in_bottom {
                // five edge classes: AA, AB, BB, BC, CC
                let orbit = match (gi, gj) {
                    (0, 0) => 0,
                    (0, 1) => 1,
                    (1, 1) => 2,
                    (1, 2) => 3,
                    _ => 4,
                };
                edges.push(((i, j), orbit));
            }
        }
    }
    let vertex_orbit = (0..nv).map(group).collect();
    Topology::assemble(Generator::TwoCoupled { n1, n2, n3 }, nv, edges, vertex_orbit)
}

/// JSON form: either a generator descriptor or a bare edge list.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TopologyJson {
    Generated(Generator),
    EdgeList { edges: Vec<(usize, usize)> },
}

pub fn from_json(text: &str) -> Result<Topology> {
    match serde_json::from_str::<TopologyJson>(text)? {
        TopologyJson::Generated(g) => generate(&g),
        TopologyJson::EdgeList { edges } => {
            let n = edges
                .iter()
                .map(|&(a, b)| a.max(b) + 1)
                .max()
                .unwrap_or(0);
            Topology::custom(n, edges)
        }
    }
}

pub fn to_json(topology: &Topology) -> String {
    match topology.generator {
        Generator::Custom => serde_json::to_string(&serde_json::json!({
            "edges": topology.edges,
        }))
        .expect("edge list serializes"),
        _ => serde_json::to_string(&topology.generator).expect("generator serializes"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_4_shape() {
        let t = path(4);
        assert_eq!(t.n_vertices, 4);
        assert_eq!(t.edges, vec![(0, 1), (1, 2), (2, 3)]);
        assert!(t.is_connected());
    }

    #[test]
    fn symstar_counts_and_orbits() {
        let t = symstar(5, 2);
        assert_eq!(t.n_vertices, 11);
        assert_eq!(t.n_edges(), 10);
        assert_eq!(t.edge_orbits().len(), 2);
        assert!(t.is_connected());
        // same-orbit vertices have equal degree
        for (v, &o) in t.vertex_orbit.iter().enumerate() {
            for (w, &p) in t.vertex_orbit.iter().enumerate() {
                if o == p {
                    assert_eq!(t.degree(v), t.degree(w));
                }
            }
        }
    }

    #[test]
    fn palm_counts() {
        let t = palm(4, 2);
        assert_eq!(t.n_vertices, 7);
        assert_eq!(t.n_edges(), 6);
        assert!(t.is_connected());
    }

    #[test]
    fn family_edge_counts_match_closed_forms() {
        for (n, k) in [(3, 2), (5, 4), (8, 10)] {
            let t = ccs(n, k);
            assert_eq!(t.n_vertices, n * k);
            assert_eq!(t.n_edges(), n * (n - 1) / 2 + n * (k - 1));
            assert!(t.is_connected());
        }
        for n in [3usize, 6, 9] {
            let t = wheel(n).unwrap();
            assert_eq!(t.n_vertices, n + 1);
            assert_eq!(t.n_edges(), 2 * n);
        }
        for (n, k) in [(2, 1), (4, 2), (6, 5)] {
            let t = lollipop(n, k);
            assert_eq!(t.n_vertices, n + 1 + k);
            assert_eq!(t.n_edges(), n * (n + 1) / 2 + k);
            assert!(t.is_connected());
        }
    }

    #[test]
    fn prism_is_k2_box_k3() {
        let t = cartesian_product(&[complete(2), complete(3)]).unwrap();
        assert_eq!(t.n_vertices, 6);
        assert_eq!(t.n_edges(), 9);
        assert!(t.is_connected());
    }

    #[test]
    fn hypercube_q2_is_a_cycle() {
        let t = cartesian_product(&[complete(2), complete(2)]).unwrap();
        assert_eq!(t.n_vertices, 4);
        assert_eq!(t.n_edges(), 4);
        for v in 0..4 {
            assert_eq!(t.degree(v), 2);
        }
    }

    #[test]
    fn k3_box_k3_edge_count_by_enumeration() {
        // |E| = E1*N2 + E2*N1
        let t = cartesian_product(&[complete(3), complete(3)]).unwrap();
        assert_eq!(t.n_vertices, 9);
        assert_eq!(t.n_edges(), 3 * 3 + 3 * 3);
    }

    #[test]
    fn symstar_branch_swap_is_an_automorphism() {
        // swapping two branches of symstar(3,2) relabels edges onto themselves
        let t = symstar(3, 2);
        let swap = |v: usize| -> usize {
            match v {
                1 => 3,
                2 => 4,
                3 => 1,
                4 => 2,
                other => other,
            }
        };
        let mapped: BTreeSet<(usize, usize)> = t
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (swap(a), swap(b));
                (x.min(y), x.max(y))
            })
            .collect();
        let original: BTreeSet<(usize, usize)> = t.edges.iter().copied().collect();
        assert_eq!(mapped, original);
    }

    #[test]
    fn two_coupled_shares_middle_group() {
        let t = two_coupled(4, 2, 3);
        assert_eq!(t.n_vertices, 9);
        // edges: C(6,2) + C(5,2) - C(2,2) shared pair counted once
        assert_eq!(t.n_edges(), 15 + 10 - 1);
        assert!(t.is_connected());
    }

    #[test]
    fn zero_parameters_are_rejected() {
        assert!(generate(&Generator::Symstar { n: 0, k: 2 }).is_err());
        assert!(generate(&Generator::Path { n: 0 }).is_err());
        assert!(cycle(2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = symstar(5, 2);
        let text = to_json(&t);
        assert_eq!(text, r#"{"generator":"symstar","params":{"n":5,"k":2}}"#);
        let back = from_json(&text).unwrap();
        assert_eq!(back.edges, t.edges);

        let custom = from_json(r#"{"edges":[[0,1],[1,2],[2,3]]}"#).unwrap();
        assert_eq!(custom.n_vertices, 4);
        assert_eq!(custom.edges, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn ccs2_with_empty_second_tail_matches_ccs() {
        let a = ccs2(4, 2, 0);
        let b = ccs(4, 3);
        assert_eq!(a.n_vertices, b.n_vertices);
        assert_eq!(a.n_edges(), b.n_edges());
    }

    #[test]
    fn every_generator_is_connected() {
        let descriptors = vec![
            Generator::Path { n: 7 },
            Generator::Cycle { n: 5 },
            Generator::Complete { n: 6 },
            Generator::Star { n: 4 },
            Generator::Symstar { n: 3, k: 4 },
            Generator::Ccs { n: 4, k: 3 },
            Generator::Ccs2 { n: 3, k1: 2, k2: 1 },
            Generator::Palm { n: 3, k: 3 },
            Generator::Lollipop { n: 4, k: 2 },
            Generator::Wheel { n: 6 },
            Generator::TwoCoupled { n1: 2, n2: 1, n3: 2 },
            Generator::Cartesian {
                factors: vec![Generator::Complete { n: 2 }, Generator::Cycle { n: 4 }],
            },
        ];
        for d in descriptors {
            let t = generate(&d).unwrap();
            assert!(t.is_connected(), "{d:?}");
            assert_eq!(t.edge_orbit.len(), t.edges.len());
        }
    }
}
