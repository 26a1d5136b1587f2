//! Krstić graphs of generalized quadratic equations.
//!
//! Vertices are operation occurrences. Every object variable contributes an
//! edge between the two occurrences whose argument slots it fills, every
//! non-root occurrence an edge to the occurrence it feeds, and the two roots
//! are joined by one equality edge. Parallel edges and loops are kept.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equation::{Equation, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("equation is not quadratic")]
    NotQuadratic,
    #[error("variable `{0}` is a whole side of the equation and has no host operation")]
    BareVariable(String),
    #[error("structural error: vertex `{vertex}` has degree {degree}, expected 3")]
    NotCubic { vertex: String, degree: usize },
    #[error("connectivity needs at least 4 vertices, graph has {0}")]
    TooSmall(usize),
    #[error("edge endpoint `{0}` is not a vertex")]
    UnknownVertex(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

const NESTING_LABEL: &str = "(nest)";
const EQUALITY_LABEL: &str = "(eq)";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Variable(String),
    Nesting,
    Equality,
    Unlabeled,
}

impl Provenance {
    pub fn label(&self) -> &str {
        match self {
            Provenance::Variable(v) => v,
            Provenance::Nesting => NESTING_LABEL,
            Provenance::Equality => EQUALITY_LABEL,
            Provenance::Unlabeled => "",
        }
    }

    pub fn from_label(label: &str) -> Provenance {
        match label {
            NESTING_LABEL => Provenance::Nesting,
            EQUALITY_LABEL => Provenance::Equality,
            "" => Provenance::Unlabeled,
            v => Provenance::Variable(v.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub provenance: Provenance,
}

/// A multigraph on operation occurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrsticGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl KrsticGraph {
    /// Builds a graph from vertex labels and index pairs; no cubicity check.
    pub fn from_edges(
        vertices: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, Provenance)>,
    ) -> KrsticGraph {
        let edges = edges
            .into_iter()
            .map(|(u, v, provenance)| Edge { u, v, provenance })
            .collect::<Vec<_>>();
        assert!(
            edges
                .iter()
                .all(|e| e.u < vertices.len() && e.v < vertices.len()),
            "edge endpoint out of range"
        );
        KrsticGraph { vertices, edges }
    }

    fn unlabeled(n: usize, pairs: &[(usize, usize)]) -> KrsticGraph {
        KrsticGraph::from_edges(
            (1..=n).map(|i| i.to_string()).collect(),
            pairs
                .iter()
                .map(|&(u, v)| (u - 1, v - 1, Provenance::Unlabeled)),
        )
    }

    /// The complete bipartite graph on 3 + 3 vertices.
    pub fn k33() -> KrsticGraph {
        KrsticGraph::unlabeled(
            6,
            &[
                (1, 2),
                (1, 6),
                (1, 4),
                (2, 3),
                (2, 5),
                (3, 4),
                (3, 6),
                (4, 5),
                (5, 6),
            ],
        )
    }

    /// The 3-prism: triangles {1,2,5} and {3,4,6} joined by a perfect matching.
    pub fn prism() -> KrsticGraph {
        KrsticGraph::unlabeled(
            6,
            &[
                (1, 2),
                (1, 5),
                (1, 4),
                (2, 3),
                (2, 5),
                (3, 4),
                (3, 6),
                (4, 6),
                (5, 6),
            ],
        )
    }

    pub fn complete(n: usize) -> KrsticGraph {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        KrsticGraph::unlabeled(n, &pairs)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree counting multiplicity; a loop adds 2.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    /// Symmetric multiplicity matrix; loops are counted once on the diagonal.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let n = self.vertex_count();
        let mut adj = vec![vec![0u8; n]; n];
        for e in &self.edges {
            adj[e.u][e.v] += 1;
            if e.u != e.v {
                adj[e.v][e.u] += 1;
            }
        }
        adj
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.vertex_count()];
        for e in self.edges.iter().filter(|e| e.u != e.v) {
            nb[e.u].push(e.v);
            nb[e.v].push(e.u);
        }
        nb
    }

    /// Connectivity of the graph with `removed` vertices deleted.
    pub fn is_connected_without(&self, removed: &[usize]) -> bool {
        let n = self.vertex_count();
        let nb = self.neighbours();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let Some(start) = (0..n).find(|&v| !seen[v]) else {
            return true;
        };
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &nb[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_without(&[])
    }

    pub fn triangle_count(&self) -> usize {
        let adj = self.adjacency();
        let n = self.vertex_count();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if adj[a][b] > 0 && adj[b][c] > 0 && adj[a][c] > 0 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let nb = self.neighbours();
        if self.edges.iter().any(|e| e.u == e.v) {
            return false;
        }
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].expect("coloured");
                for &w in &nb[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Checks the invariants of a graph built from a quadratic equation.
    pub fn validate_cubic(&self) -> Result<(), GraphError> {
        for (i, name) in self.vertices.iter().enumerate() {
            let degree = self.degree(i);
            if degree != 3 {
                return Err(GraphError::NotCubic {
                    vertex: name.clone(),
                    degree,
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    u: self.vertices[e.u].clone(),
                    v: self.vertices[e.v].clone(),
                    label: e.provenance.label().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<KrsticGraph, GraphError> {
        let index = |name: &str| {
            json.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
        };
        let edges = json
            .edges
            .iter()
            .map(|e| Ok((index(&e.u)?, index(&e.v)?, Provenance::from_label(&e.label))))
            .collect::<Result<Vec<_>, GraphError>>()?;
        Ok(KrsticGraph::from_edges(json.vertices.clone(), edges))
    }

    /// Graph-description text: one node line per vertex, one edge line per edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph krstic {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                self.vertices[e.u],
                self.vertices[e.v],
                e.provenance.label()
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: String,
    pub v: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

/// Builds the Krstić graph of the generalized form of `e`.
pub fn build_graph(e: &Equation) -> Result<KrsticGraph, GraphError> {
    if !e.is_quadratic() {
        return Err(GraphError::NotQuadratic);
    }
    for side in [&e.lhs, &e.rhs] {
        if let Term::Var(v) = side {
            return Err(GraphError::BareVariable(v.clone()));
        }
    }
    let g = e.generalize();
    let mut b = Builder::default();
    let left_root = b.visit(&g.lhs);
    let right_root = b.visit(&g.rhs);

    let mut edges = Vec::new();
    for var in g.variables() {
        let hosts: Vec<usize> = b
            .hosts
            .iter()
            .filter(|(name, _)| *name == var)
            .map(|&(_, h)| h)
            .collect();
        edges.push((hosts[0], hosts[1], Provenance::Variable(var)));
    }
    edges.extend(b.nesting.iter().map(|&(p, c)| (p, c, Provenance::Nesting)));
    edges.push((left_root, right_root, Provenance::Equality));

    let graph = KrsticGraph::from_edges(b.vertices, edges);
    graph.validate_cubic()?;
    Ok(graph)
}

#[derive(Default)]
struct Builder {
    vertices: Vec<String>,
    hosts: Vec<(String, usize)>,
    nesting: Vec<(usize, usize)>,
}

impl Builder {
    /// Visits an application node and returns its vertex id.
    fn visit(&mut self, t: &Term) -> usize {
        let Term::App { op, left, right } = t else {
            unreachable!("only applications become vertices")
        };
        let id = self.vertices.len();
        self.vertices.push(op.clone());
        for child in [left, right] {
            match child.as_ref() {
                Term::Var(v) => self.hosts.push((v.clone(), id)),
                app => {
                    let c = self.visit(app);
                    self.nesting.push((id, c));
                }
            }
        }
        id
    }
}

/// True iff no removal of at most two vertices disconnects `g`.
pub fn is_three_connected(g: &KrsticGraph) -> Result<bool, GraphError> {
    let n = g.vertex_count();
    if n < 4 {
        return Err(GraphError::TooSmall(n));
    }
    if !g.is_connected() {
        return Ok(false);
    }
    for a in 0..n {
        if !g.is_connected_without(&[a]) {
            return Ok(false);
        }
        for b in a + 1..n {
            if !g.is_connected_without(&[a, b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vertex cuts of size at most two, each as sorted vertex labels.
pub fn small_vertex_cuts(g: &KrsticGraph) -> Vec<Vec<String>> {
    let n = g.vertex_count();
    let mut cuts = Vec::new();
    for a in 0..n {
        if !g.is_connected_without(&[a]) {
            cuts.push(vec![g.vertices[a].clone()]);
        }
        for b in a + 1..n {
            if !g.is_connected_without(&[a, b]) {
                cuts.push(vec![g.vertices[a].clone(), g.vertices[b].clone()]);
            }
        }
    }
    cuts
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphShape {
    K33,
    Prism,
    /// Canonical adjacency certificate of any other graph.
    Other(String),
}

impl GraphShape {
    pub fn name(&self) -> &'static str {
        match self {
            GraphShape::K33 => "K33",
            GraphShape::Prism => "Prism",
            GraphShape::Other(_) => "Other",
        }
    }
}

/// Brute-force isomorphism test over vertex bijections (multiplicities kept).
pub fn is_isomorphic(a: &KrsticGraph, b: &KrsticGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (adj_a, adj_b) = (a.adjacency(), b.adjacency());
    let n = a.vertex_count();
    let mut degrees_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut degrees_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    degrees_a.sort_unstable();
    degrees_b.sort_unstable();
    if degrees_a != degrees_b {
        return false;
    }
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_iso(&adj_a, &adj_b, &mut map, &mut used)
}

fn extend_iso(a: &[Vec<u8>], b: &[Vec<u8>], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let k = map.len();
    if k == a.len() {
        return true;
    }
    for cand in 0..b.len() {
        if used[cand] {
            continue;
        }
        let consistent = (0..k).all(|i| a[i][k] == b[map[i]][cand]) && a[k][k] == b[cand][cand];
        if !consistent {
            continue;
        }
        map.push(cand);
        used[cand] = true;
        if extend_iso(a, b, map, used) {
            return true;
        }
        map.pop();
        used[cand] = false;
    }
    false
}

/// Lexicographically least adjacency sequence over all vertex orders.
///
/// The sequence lists, for each position `k`, the entries `(i, k)` with
/// `i <= k`, so every prefix depends only on the vertices placed so far.
pub fn canonical_certificate(g: &KrsticGraph) -> String {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut best: Option<Vec<u8>> = None;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut seq = Vec::with_capacity(n * (n + 1) / 2);
    canon_search(&adj, &mut order, &mut used, &mut seq, &mut best);
    let best = best.unwrap_or_default();
    let mut blocks = Vec::with_capacity(n);
    let mut pos = 0;
    for k in 0..n {
        let block: String = best[pos..pos + k + 1]
            .iter()
            .map(|d| d.to_string())
            .collect();
        blocks.push(block);
        pos += k + 1;
    }
    format!("n{n}:{}", blocks.join("."))
}

fn canon_search(
    adj: &[Vec<u8>],
    order: &mut Vec<usize>,
    used: &mut [bool],
    seq: &mut Vec<u8>,
    best: &mut Option<Vec<u8>>,
) {
    let n = adj.len();
    if order.len() == n {
        if best.as_ref().is_none_or(|b| seq.as_slice() < b.as_slice()) {
            *best = Some(seq.clone());
        }
        return;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let before = seq.len();
        order.push(cand);
        used[cand] = true;
        seq.extend(order.iter().map(|&i| adj[i][cand]));
        let prune = best
            .as_ref()
            .is_some_and(|b| seq.as_slice().cmp(&b[..seq.len()]) == Ordering::Greater);
        if !prune {
            canon_search(adj, order, used, seq, best);
        }
        seq.truncate(before);
        used[cand] = false;
        order.pop();
    }
}

pub fn classify_shape(g: &KrsticGraph) -> GraphShape {
    if is_isomorphic(g, &KrsticGraph::k33()) {
        GraphShape::K33
    } else if is_isomorphic(g, &KrsticGraph::prism()) {
        GraphShape::Prism
    } else {
        GraphShape::Other(canonical_certificate(g))
    }
}
