//! Exact chromatic number and degeneracy orders.

use serde::{Deserialize, Serialize};

use crate::error::{DpError, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// A vertex ordering in which each vertex has at most `d` neighbors that
/// were processed before it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyOrder {
    pub ordering: Vec<usize>,
    pub d: usize,
}

impl DegeneracyOrder {
    /// Checks that `ordering` is a permutation of `0..g.n()` and that no
    /// vertex sees more than `d` already-processed neighbors.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        if self.ordering.len() != n {
            return Err(DpError::InvalidOrder(format!(
                "{} entries for {n} vertices",
                self.ordering.len()
            )));
        }
        let mut done = vec![false; n];
        for &v in &self.ordering {
            if v >= n || done[v] {
                return Err(DpError::InvalidOrder(format!("vertex {v} repeated or out of range")));
            }
            let back = g.neighbors(v).iter().filter(|&&w| done[w]).count();
            if back > self.d {
                return Err(DpError::InvalidOrder(format!(
                    "vertex {v} has {back} earlier neighbors, more than d = {}",
                    self.d
                )));
            }
            done[v] = true;
        }
        Ok(())
    }
}

/// Smallest-last degeneracy order.
///
/// Vertices are peeled off by minimum remaining degree (ties to the lowest
/// index); the returned ordering is the reverse of the peeling order.
pub fn degeneracy(g: &Graph) -> DegeneracyOrder {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut peel = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("a vertex remains");
        d = d.max(deg[v]);
        removed[v] = true;
        peel.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    peel.reverse();
    DegeneracyOrder { ordering: peel, d }
}

/// Exact chromatic number `χ(G)`.
///
/// A greedy clique gives the lower bound and first-fit coloring the upper
/// bound; values in between are decided by DSATUR backtracking with ties
/// broken by vertex index.
pub fn chromatic_number(g: &Graph, limits: &Limits) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    let lower = greedy_clique(g).len();
    let upper = greedy_coloring_size(g);
    let mut nodes = 0u64;
    for k in lower..upper {
        if k_colorable(g, k, limits.max_nodes, &mut nodes)? {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Largest clique found by greedy ascending extension from every start vertex.
pub(crate) fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best = Vec::new();
    for start in 0..g.n() {
        let mut clique = vec![start];
        for v in 0..g.n() {
            if v != start && clique.iter().all(|&c| g.has_edge(c, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

fn greedy_coloring_size(g: &Graph) -> usize {
    let mut color = vec![usize::MAX; g.n()];
    let mut used = 0;
    for v in 0..g.n() {
        let mut taken = vec![false; used + 1];
        for &w in g.neighbors(v) {
            if color[w] != usize::MAX {
                taken[color[w]] = true;
            }
        }
        let c = taken.iter().position(|&t| !t).expect("one free slot");
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// `blocked[v * k + c]` counts colored neighbors of `v` holding color `c`.
    blocked: Vec<u32>,
    saturation: Vec<usize>,
    nodes: &'a mut u64,
    cap: u64,
}

fn k_colorable(g: &Graph, k: usize, cap: u64, nodes: &mut u64) -> Result<bool> {
    if k == 0 {
        return Ok(g.n() == 0);
    }
    let n = g.n();
    let mut search = Dsatur {
        g,
        k,
        color: vec![usize::MAX; n],
        blocked: vec![0; n * k],
        saturation: vec![0; n],
        nodes,
        cap,
    };
    search.extend(0, 0)
}

impl Dsatur<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
    }

    fn set(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.blocked[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unset(&mut self, v: usize, c: usize) {
        self.color[v] = usize::MAX;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.blocked[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn extend(&mut self, colored: usize, used: usize) -> Result<bool> {
        *self.nodes += 1;
        if *self.nodes > self.cap {
            return Err(DpError::NodeCap { cap: self.cap });
        }
        let Some(v) = self.pick() else {
            return Ok(true);
        };
        // Colors beyond the first unused one are symmetric.
        let top = (used + 1).min(self.k);
        for c in 0..top {
            if self.blocked[v * self.k + c] > 0 {
                continue;
            }
            self.set(v, c);
            let found = self.extend(colored + 1, used.max(c + 1))?;
            self.unset(v, c);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
