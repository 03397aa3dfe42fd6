//! Simple undirected graphs on dense `0..n` vertex labels.

use std::collections::VecDeque;

use crate::error::{DpError, Result};

/// An immutable finite simple graph.
///
/// Edges are stored canonically as `(u, v)` with `u < v`, sorted. Neighbor
/// lists are sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

/// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
///
/// `(u, v)` and `(v, u)` name the same edge, so listing both is a duplicate.
pub fn make_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    let mut canon = Vec::with_capacity(edges.len());
    let mut matrix = vec![false; n * n];
    for &(u, v) in edges {
        for w in [u, v] {
            if w >= n {
                return Err(DpError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(DpError::Loop(u));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if matrix[a * n + b] {
            return Err(DpError::DuplicateEdge(a, b));
        }
        matrix[a * n + b] = true;
        matrix[b * n + a] = true;
        canon.push((a, b));
    }
    Ok(Graph::assemble(n, canon, matrix))
}

/// The join `J(G, s)`: `G` plus an `s`-clique whose vertices `n..n+s` are
/// adjacent to every vertex of `G`.
pub fn join(g: &Graph, s: usize) -> Graph {
    let n = g.n + s;
    let mut edges = g.edges.clone();
    for a in g.n..n {
        for v in 0..a {
            edges.push((v, a));
        }
    }
    Graph::from_canonical(n, edges)
}

/// Minimum degree `δ(G)`; undefined on the empty graph.
pub fn min_degree(g: &Graph) -> Result<usize> {
    g.adj.iter().map(Vec::len).min().ok_or(DpError::EmptyGraph)
}

impl Graph {
    /// Builds from edges already known to be canonical and distinct.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut matrix = vec![false; n * n];
        for &(u, v) in &edges {
            debug_assert!(u < v && v < n);
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
        }
        Graph::assemble(n, edges, matrix)
    }

    fn assemble(n: usize, mut edges: Vec<(usize, usize)>, matrix: Vec<bool>) -> Graph {
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj, matrix }
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Graph {
        Graph::from_canonical(n, Vec::new())
    }

    /// `K_n`.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_canonical(n, edges)
    }

    /// `K_{a,b}` with part X = `0..a` and part Y = `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::with_capacity(a * b);
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_canonical(a + b, edges)
    }

    /// `C_n` on `0, 1, ..., n-1` in cyclic order.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(DpError::CycleTooShort(n));
        }
        let mut edges: Vec<_> = (0..n - 1).map(|u| (u, u + 1)).collect();
        edges.push((0, n - 1));
        Ok(Graph::from_canonical(n, edges))
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Graph {
        Graph::from_canonical(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    /// Subgraph induced by `keep`; vertex `keep[i]` becomes vertex `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let (a, b) = (new_id[u], new_id[v]);
            if a != usize::MAX && b != usize::MAX {
                edges.push(if a < b { (a, b) } else { (b, a) });
            }
        }
        Graph::from_canonical(keep.len(), edges)
    }

    /// `G - v`, with the remaining vertices relabeled in ascending order.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        self.induced(&keep)
    }

    /// Breadth-first spanning forest. Roots are taken lowest-index first and
    /// neighbors are scanned in ascending order. Returns the `(parent, child)`
    /// tree edges in discovery order and the number of components.
    pub fn spanning_forest(&self) -> (Vec<(usize, usize)>, usize) {
        let mut seen = vec![false; self.n];
        let mut tree = Vec::with_capacity(self.n);
        let mut components = 0;
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            components += 1;
            seen[root] = true;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        tree.push((u, w));
                        queue.push_back(w);
                    }
                }
            }
        }
        (tree, components)
    }

    pub fn components(&self) -> usize {
        self.spanning_forest().1
    }

    /// True if `set` is an independent set.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}
