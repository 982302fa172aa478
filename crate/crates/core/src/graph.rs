//! Simple undirected graphs, vertex orderings and rooted spanning trees.
//!
//! Vertices are `0..n`. Orderings map vertices to 1-based positions so the
//! segment and color arithmetic in [`crate::geometry`] can use the positions
//! directly.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("ordering is not a bijection onto 1..={n}: {reason}")]
    InvalidOrdering { n: usize, reason: String },
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    // normalized (u < v), sorted, deduplicated
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `uv`. Returns `Ok(false)` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        match self.edges.binary_search(&key) {
            Ok(_) => Ok(false),
            Err(at) => {
                self.edges.insert(at, key);
                let pos = self.adj[u].binary_search(&v).unwrap_err();
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Parses the edge-list text format: a header line `n m`, then `m` lines
    /// `u v` with 0-based endpoints. Lines starting with `#` and blank lines
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            reason: "missing header line \"n m\"".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;

        let mut g = Graph::new(n);
        let mut read = 0;
        for (line, text) in lines {
            if read == m {
                return Err(GraphError::Parse {
                    line,
                    reason: format!("more than the declared {m} edges"),
                });
            }
            let [u, v] = parse_pair(line, text)?;
            g.add_edge(u, v).map_err(|e| GraphError::Parse {
                line,
                reason: e.to_string(),
            })?;
            read += 1;
        }
        if read != m {
            return Err(GraphError::Parse {
                line: text.lines().count(),
                reason: format!("expected {m} edges, found {read}"),
            });
        }
        Ok(g)
    }

    /// Writes the edge-list format. Edges are emitted in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        n == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::from([source]);
        dist[source] = Some(0);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Diameter of a connected graph; `None` when disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n() {
            for d in self.bfs_distances(s) {
                best = best.max(d?);
            }
        }
        (self.n() > 0).then_some(best)
    }

    /// Splits the graph into connected components, each relabeled to
    /// `0..k`. Components are listed by their smallest original vertex.
    pub fn connected_components(&self) -> Vec<Component> {
        let n = self.n();
        let mut comp_of = vec![usize::MAX; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![s];
            comp_of[s] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &w in &self.adj[u] {
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }

        comps
            .into_iter()
            .map(|labels| {
                let mut local = vec![usize::MAX; n];
                for (i, &v) in labels.iter().enumerate() {
                    local[v] = i;
                }
                let mut graph = Graph::new(labels.len());
                for &v in &labels {
                    for &w in &self.adj[v] {
                        if v < w {
                            graph.add_edge(local[v], local[w]).unwrap();
                        }
                    }
                }
                Component { graph, labels }
            })
            .collect()
    }

    /// Breadth-first spanning tree rooted at `root`, visiting neighbors in
    /// ascending order.
    pub fn spanning_tree(&self, root: usize) -> Result<RootedTree, GraphError> {
        let n = self.n();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if root >= n {
            return Err(GraphError::VertexOutOfRange { vertex: root, n });
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    parent[w] = Some(u);
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        if reached != n {
            return Err(GraphError::Disconnected);
        }
        Ok(RootedTree::from_parts(root, parent, children))
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2], GraphError> {
    let mut it = text.split_whitespace();
    let mut out = [0; 2];
    for slot in &mut out {
        let tok = it.next().ok_or_else(|| GraphError::Parse {
            line,
            reason: format!("expected two integers, got {text:?}"),
        })?;
        *slot = tok.parse().map_err(|_| GraphError::Parse {
            line,
            reason: format!("not a non-negative integer: {tok:?}"),
        })?;
    }
    if it.next().is_some() {
        return Err(GraphError::Parse {
            line,
            reason: format!("trailing tokens in {text:?}"),
        });
    }
    Ok(out)
}

/// A connected component together with the map back to the parent graph's
/// vertex labels (`labels[local] = original`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

/// A bijection from vertices to positions `1..=n`. Serializes as the
/// position list indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ordering {
    position: Vec<usize>,
}

impl Ordering {
    /// `position[v]` is the 1-based position of vertex `v`.
    pub fn from_positions(position: Vec<usize>) -> Result<Self, GraphError> {
        let n = position.len();
        let mut used = vec![false; n];
        for (v, &p) in position.iter().enumerate() {
            if p == 0 || p > n {
                return Err(GraphError::InvalidOrdering {
                    n,
                    reason: format!("vertex {v} has position {p}"),
                });
            }
            if std::mem::replace(&mut used[p - 1], true) {
                return Err(GraphError::InvalidOrdering {
                    n,
                    reason: format!("position {p} used twice"),
                });
            }
        }
        Ok(Ordering { position })
    }

    /// Builds the ordering that lists `sequence[0]` first, `sequence[1]`
    /// second, and so on.
    pub fn from_sequence(sequence: &[usize]) -> Result<Self, GraphError> {
        let n = sequence.len();
        let mut position = vec![0; n];
        for (i, &v) in sequence.iter().enumerate() {
            if v >= n {
                return Err(GraphError::InvalidOrdering {
                    n,
                    reason: format!("vertex {v} out of range"),
                });
            }
            if position[v] != 0 {
                return Err(GraphError::InvalidOrdering {
                    n,
                    reason: format!("vertex {v} listed twice"),
                });
            }
            position[v] = i + 1;
        }
        Ok(Ordering { position })
    }

    pub fn identity(n: usize) -> Self {
        Ordering {
            position: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    /// 1-based position of `v`.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    /// Vertices listed by position.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.len()];
        for (v, &p) in self.position.iter().enumerate() {
            seq[p - 1] = v;
        }
        seq
    }

    pub fn reversed(&self) -> Self {
        let n = self.len();
        Ordering {
            position: self.position.iter().map(|&p| n + 1 - p).collect(),
        }
    }

    /// Longest edge under this ordering; 0 for edgeless graphs.
    ///
    /// Panics if the ordering and graph disagree on the vertex count; use
    /// [`ordering_bandwidth`] for a checked variant.
    pub fn bandwidth(&self, g: &Graph) -> usize {
        assert_eq!(self.len(), g.n(), "ordering/graph size mismatch");
        g.edges()
            .iter()
            .map(|&(u, v)| self.position[u].abs_diff(self.position[v]))
            .max()
            .unwrap_or(0)
    }
}

impl TryFrom<Vec<usize>> for Ordering {
    type Error = GraphError;

    fn try_from(position: Vec<usize>) -> Result<Self, GraphError> {
        Ordering::from_positions(position)
    }
}

impl From<Ordering> for Vec<usize> {
    fn from(o: Ordering) -> Self {
        o.position
    }
}

/// Bandwidth of `g` under the ordering given by `positions` (1-based,
/// indexed by vertex).
pub fn ordering_bandwidth(g: &Graph, positions: &[usize]) -> Result<usize, GraphError> {
    if positions.len() != g.n() {
        return Err(GraphError::InvalidOrdering {
            n: g.n(),
            reason: format!("{} positions given", positions.len()),
        });
    }
    Ok(Ordering::from_positions(positions.to_vec())?.bandwidth(g))
}

/// A rooted spanning tree. Children are kept in the order they were
/// discovered; `preorder` lists every vertex after its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    preorder: Vec<usize>,
}

impl RootedTree {
    fn from_parts(root: usize, parent: Vec<Option<usize>>, children: Vec<Vec<usize>>) -> Self {
        let mut preorder = Vec::with_capacity(parent.len());
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            preorder.push(u);
            stack.extend(children[u].iter().rev());
        }
        RootedTree {
            root,
            parent,
            children,
            preorder,
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.is_leaf(v)).count()
    }

    /// Depth-first preorder starting at the root.
    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    /// Tree edges as `(parent, child)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
    }
}
