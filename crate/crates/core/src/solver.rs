//! Deciding `(L, H)`-colorability of a single cover.

use serde::{Deserialize, Serialize};

use crate::coloring::DegeneracyOrder;
use crate::cover::{Cover, Transversal};
use crate::error::{DpError, Result};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Sat,
    Unsat,
}

/// Verdict of a complete search. `witness` is present exactly when the
/// status is [`Status::Sat`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: Status,
    pub witness: Option<Transversal>,
    pub nodes: u64,
    #[serde(skip)]
    pub max_depth: usize,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }
}

/// Pair-scan check that `t` picks one vertex per list and no two picks are
/// adjacent in `H`.
pub fn check_transversal(c: &Cover, t: &Transversal) -> bool {
    c.is_transversal(t)
}

/// Complete backtracking search for a transversal.
///
/// The next base vertex is the unassigned one with the fewest live list
/// entries (ties to the lowest index); entries are tried in ascending
/// cover-id order, and each choice deletes its `H`-neighbors from the
/// remaining lists.
pub fn find_transversal(c: &Cover, limits: &Limits) -> Result<SolveResult> {
    let n = c.base().n();
    let mut search = Backtrack {
        cover: c,
        alive: vec![true; c.len()],
        live: c.lists().iter().map(Vec::len).collect(),
        order: c
            .lists()
            .iter()
            .map(|l| {
                let mut s = l.clone();
                s.sort_unstable();
                s
            })
            .collect(),
        chosen: vec![usize::MAX; n],
        trail: Vec::new(),
        nodes: 0,
        max_depth: 0,
        cap: limits.max_nodes,
    };
    let found = search.extend(0)?;
    let witness = found.then(|| Transversal(search.chosen.clone()));
    debug_assert!(witness.as_ref().is_none_or(|t| c.is_transversal(t)));
    Ok(SolveResult {
        status: if found { Status::Sat } else { Status::Unsat },
        witness,
        nodes: search.nodes,
        max_depth: search.max_depth,
    })
}

struct Backtrack<'a> {
    cover: &'a Cover,
    alive: Vec<bool>,
    live: Vec<usize>,
    order: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    trail: Vec<usize>,
    nodes: u64,
    max_depth: usize,
    cap: u64,
}

impl Backtrack<'_> {
    fn extend(&mut self, depth: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(DpError::NodeCap { cap: self.cap });
        }
        self.max_depth = self.max_depth.max(depth);
        let next = (0..self.chosen.len())
            .filter(|&u| self.chosen[u] == usize::MAX)
            .min_by_key(|&u| (self.live[u], u));
        let Some(u) = next else {
            return Ok(true);
        };
        for i in 0..self.order[u].len() {
            let x = self.order[u][i];
            if !self.alive[x] {
                continue;
            }
            self.chosen[u] = x;
            let mark = self.trail.len();
            let mut wiped = false;
            for &y in self.cover.cross_neighbors(x) {
                let w = self.cover.owner(y);
                if self.chosen[w] == usize::MAX && self.alive[y] {
                    self.alive[y] = false;
                    self.live[w] -= 1;
                    self.trail.push(y);
                    wiped |= self.live[w] == 0;
                }
            }
            if !wiped && self.extend(depth + 1)? {
                return Ok(true);
            }
            for y in self.trail.drain(mark..) {
                self.alive[y] = true;
                self.live[self.cover.owner(y)] += 1;
            }
            self.chosen[u] = usize::MAX;
        }
        Ok(false)
    }
}

/// Colors along a degeneracy order, keeping the lowest-id entry not
/// adjacent to an earlier choice. Needs `|L(u)| ≥ d + 1` everywhere; each
/// earlier neighbor blocks at most one entry, so this never gets stuck.
pub fn greedy_transversal(c: &Cover, order: &DegeneracyOrder) -> Result<SolveResult> {
    order.verify(c.base())?;
    let needed = order.d + 1;
    for (u, list) in c.lists().iter().enumerate() {
        if list.len() < needed {
            return Err(DpError::ListTooShort { vertex: u, size: list.len(), needed });
        }
    }
    let mut chosen = vec![usize::MAX; c.base().n()];
    let mut nodes = 0;
    for &u in &order.ordering {
        nodes += 1;
        let x = c
            .list(u)
            .iter()
            .copied()
            .filter(|&x| {
                c.cross_neighbors(x).iter().all(|&y| chosen[c.owner(y)] != y)
            })
            .min()
            .expect("degeneracy bound leaves a free entry");
        chosen[u] = x;
    }
    Ok(SolveResult {
        status: Status::Sat,
        witness: Some(Transversal(chosen)),
        nodes,
        max_depth: order.ordering.len(),
    })
}
