//! Finite simple undirected graphs on dense vertex indices `0..n`.
//!
//! A [`Graph`] keeps its edges twice: as a sorted list of pairs `(u, v)` with
//! `u < v`, and as sorted per-vertex neighbor lists. Structural flags
//! (connectivity, bipartiteness, regularity) are computed once at
//! construction. Vertex-transitivity is carried with its [`Provenance`]
//! because the only general way to establish it is an exponential search.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<GraphError>,
    },
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for `{family}`: {reason}")]
    InvalidParameter { family: String, reason: String },
}

impl GraphError {
    fn at(self, line: usize) -> Self {
        GraphError::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

/// How a graph's vertex-transitivity was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The constructor guarantees it (cycles, Cayley graphs, ...).
    ByConstruction,
    /// An automorphism search found a transitive witness set.
    Verified,
    /// Declared by the user without proof.
    Asserted,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ByConstruction => "by-construction",
            Provenance::Verified => "verified",
            Provenance::Asserted => "asserted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMeta {
    pub connected: bool,
    pub bipartite: bool,
    pub regular_degree: Option<usize>,
    pub vertex_transitive: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    meta: GraphMeta,
}

impl Graph {
    /// Builds a simple graph from an edge list. Self-loops and repeated
    /// edges (in either orientation) are rejected, never merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            check_edge(n, u, v)?;
            let key = (u.min(v), u.max(v));
            if !set.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let d0 = adj[0].len();
        let regular_degree = adj.iter().all(|l| l.len() == d0).then_some(d0);
        let mut g = Graph {
            n,
            edges,
            adj,
            meta: GraphMeta {
                connected: false,
                bipartite: false,
                regular_degree,
                vertex_transitive: None,
            },
        };
        g.meta.connected = is_connected(&g);
        g.meta.bipartite = two_coloring(&g).is_some();
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Total volume `Σ deg(v) = 2|E|`.
    pub fn volume(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    pub fn is_connected(&self) -> bool {
        self.meta.connected
    }

    pub fn is_bipartite(&self) -> bool {
        self.meta.bipartite
    }

    pub fn regular_degree(&self) -> Option<usize> {
        self.meta.regular_degree
    }

    pub fn vertex_transitive(&self) -> Option<Provenance> {
        self.meta.vertex_transitive
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Returns the same graph carrying a vertex-transitivity flag.
    pub fn with_vertex_transitive(mut self, provenance: Provenance) -> Self {
        self.meta.vertex_transitive = Some(provenance);
        self
    }

    /// Serializes to the edge-list text format read by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn check_edge(n: usize, u: usize, v: usize) -> Result<(), GraphError> {
    for vertex in [u, v] {
        if vertex >= n {
            return Err(GraphError::VertexOutOfRange { vertex, n });
        }
    }
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    Ok(())
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(GraphError::MissingHeader)?;
    let (n, m) = parse_pair(header).map_err(|e| e.at(hline))?;
    if n == 0 {
        return Err(GraphError::Empty.at(hline));
    }

    let mut set = BTreeSet::new();
    let mut found = 0;
    for (line, text) in lines {
        found += 1;
        if found > m {
            continue;
        }
        let (u, v) = parse_pair(text).map_err(|e| e.at(line))?;
        check_edge(n, u, v).map_err(|e| e.at(line))?;
        let key = (u.min(v), u.max(v));
        if !set.insert(key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1).at(line));
        }
    }
    if found != m {
        return Err(GraphError::EdgeCountMismatch { declared: m, found });
    }
    Ok(Graph::from_sorted(n, set.into_iter().collect()))
}

fn parse_pair(line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let tok = it
            .next()
            .ok_or_else(|| GraphError::Malformed(format!("expected two integers, got `{line}`")))?;
        tok.parse()
            .map_err(|_| GraphError::Malformed(format!("`{tok}` is not a vertex index")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(GraphError::Malformed(format!(
            "expected two integers, got `{line}`"
        )));
    }
    Ok(pair)
}

/// BFS from vertex 0.
pub fn is_connected(g: &Graph) -> bool {
    let mut seen = vec![false; g.n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &g.adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == g.n
}

/// Proper 2-coloring of every component, or `None` if some component has
/// an odd cycle.
pub fn two_coloring(g: &Graph) -> Option<Vec<u8>> {
    let mut color: Vec<Option<u8>> = vec![None; g.n];
    for root in 0..g.n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            for &v in &g.adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(1 - cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    color.into_iter().collect()
}

/// Named graph families used as the test corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Hypercube(u32),
    Petersen,
}

impl Family {
    pub fn parse(name: &str, params: &[usize]) -> Result<Self, GraphError> {
        let invalid = |reason: &str| GraphError::InvalidParameter {
            family: name.to_string(),
            reason: reason.to_string(),
        };
        let family = match (name, params) {
            ("cycle", &[n]) => Family::Cycle(n),
            ("complete", &[n]) => Family::Complete(n),
            ("complete_bipartite", &[a, b]) => Family::CompleteBipartite(a, b),
            ("hypercube", &[k]) => {
                Family::Hypercube(u32::try_from(k).map_err(|_| invalid("dimension too large"))?)
            }
            ("petersen", &[]) => Family::Petersen,
            ("cycle" | "complete" | "hypercube", _) => {
                return Err(invalid("expected exactly one parameter"))
            }
            ("complete_bipartite", _) => return Err(invalid("expected two part sizes")),
            ("petersen", _) => return Err(invalid("takes no parameters")),
            _ => return Err(GraphError::UnknownFamily(name.to_string())),
        };
        match family {
            Family::Cycle(n) if n < 3 => Err(invalid("cycle needs n >= 3")),
            Family::Complete(n) if n < 2 => Err(invalid("complete graph needs n >= 2")),
            Family::CompleteBipartite(a, b) if a == 0 || b == 0 => {
                Err(invalid("both parts must be nonempty"))
            }
            Family::Hypercube(k) if !(1..=16).contains(&k) => {
                Err(invalid("hypercube dimension must be in 1..=16"))
            }
            f => Ok(f),
        }
    }

    /// Stable identifier, e.g. `cycle-5` or `complete_bipartite-2-3`.
    pub fn id(&self) -> String {
        match self {
            Family::Cycle(n) => format!("cycle-{n}"),
            Family::Complete(n) => format!("complete-{n}"),
            Family::CompleteBipartite(a, b) => format!("complete_bipartite-{a}-{b}"),
            Family::Hypercube(k) => format!("hypercube-{k}"),
            Family::Petersen => "petersen".to_string(),
        }
    }

    pub fn build(&self) -> Graph {
        let (n, edges): (usize, Vec<(usize, usize)>) = match *self {
            Family::Cycle(n) => (n, (0..n).map(|i| (i, (i + 1) % n)).collect()),
            Family::Complete(n) => (
                n,
                (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .collect(),
            ),
            Family::CompleteBipartite(a, b) => (
                a + b,
                (0..a)
                    .flat_map(|i| (a..a + b).map(move |j| (i, j)))
                    .collect(),
            ),
            Family::Hypercube(k) => {
                let n = 1usize << k;
                (
                    n,
                    (0..n)
                        .flat_map(|x| (0..k).map(move |b| (x, x ^ (1 << b))))
                        .filter(|&(x, y)| x < y)
                        .collect(),
                )
            }
            Family::Petersen => (
                10,
                (0..5)
                    .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)])
                    .collect(),
            ),
        };
        let g = Graph::from_edges(n, edges).expect("family constructions are simple graphs");
        let transitive = match *self {
            Family::CompleteBipartite(a, b) => a == b,
            _ => true,
        };
        if transitive {
            g.with_vertex_transitive(Provenance::ByConstruction)
        } else {
            g
        }
    }
}

/// Builds a named family graph, e.g. `make_family("cycle", &[5])`.
pub fn make_family(name: &str, params: &[usize]) -> Result<Graph, GraphError> {
    Ok(Family::parse(name, params)?.build())
}
