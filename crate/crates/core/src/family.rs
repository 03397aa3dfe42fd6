//! The normalized cover family used to decide DP-colorability at list size `k`.
//!
//! Two normalizations make the family finite and small:
//!
//! * adding `H`-edges only removes transversals, so a cover without a
//!   transversal stays without one once every cross matching is completed
//!   to a perfect matching;
//! * relabeling inside lists is an isomorphism, so the matchings along a
//!   spanning forest can be taken to be the identity.
//!
//! Hence every base graph and `k` has a complete family of
//! `(k!)^(m - n + c)` covers, `c` being the number of components: lists are
//! `L(u) = {u·k, ..., u·k + k - 1}`, forest edges match slot `i` to slot `i`,
//! and each remaining ("free") edge carries an arbitrary permutation.
//!
//! Covers are indexed in mixed radix: the first free edge (in canonical edge
//! order) is the most significant digit and permutations are ranked
//! lexicographically.

use crate::cover::Cover;
use crate::error::{DpError, Result};
use crate::graph::Graph;

/// Lexicographic rank of a permutation of `0..k`.
pub fn perm_rank(perm: &[usize]) -> usize {
    let k = perm.len();
    let mut rank = 0;
    for i in 0..k {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (k - i) + smaller;
    }
    rank
}

/// Inverse of [`perm_rank`].
pub fn perm_unrank(k: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = vec![0; k];
    for i in (0..k).rev() {
        let base = k - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..k).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

pub(crate) fn factorial(k: usize) -> Option<u128> {
    (1..=k as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

/// The gauge-fixed, perfect-matching covers of `graph` with lists of size `k`.
#[derive(Clone, Debug)]
pub struct CoverFamily {
    graph: Graph,
    k: usize,
    forest: Vec<(usize, usize)>,
    free: Vec<(usize, usize)>,
    components: usize,
}

impl CoverFamily {
    pub fn new(graph: &Graph, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(DpError::ZeroListSize);
        }
        let (forest, components) = graph.spanning_forest();
        let in_forest: std::collections::BTreeSet<(usize, usize)> =
            forest.iter().map(|&(p, c)| (p.min(c), p.max(c))).collect();
        let free = graph.edges().iter().copied().filter(|e| !in_forest.contains(e)).collect();
        Ok(CoverFamily { graph: graph.clone(), k, forest, free, components })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Forest edges as `(parent, child)` in breadth-first discovery order.
    pub fn forest(&self) -> &[(usize, usize)] {
        &self.forest
    }

    /// Edges carrying a free permutation, canonical order.
    pub fn free_edges(&self) -> &[(usize, usize)] {
        &self.free
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// `(k!)^(m - n + c)`, or `None` on `u128` overflow.
    pub fn len(&self) -> Option<u128> {
        let base = factorial(self.k)?;
        (0..self.free.len()).try_fold(1u128, |acc, _| acc.checked_mul(base))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Permutation ranks of each free edge for a family index.
    pub fn digits(&self, mut index: u128) -> Vec<usize> {
        let base = factorial(self.k).expect("k! fits in u128");
        let mut digits = vec![0; self.free.len()];
        for d in digits.iter_mut().rev() {
            *d = (index % base) as usize;
            index /= base;
        }
        digits
    }

    /// Family index of the given permutation ranks, or `None` on overflow.
    pub fn index_of(&self, digits: &[usize]) -> Option<u128> {
        let base = factorial(self.k)?;
        digits
            .iter()
            .try_fold(0u128, |acc, &d| acc.checked_mul(base)?.checked_add(d as u128))
    }

    /// The cover whose free edge `e = (u, v)`, `u < v`, matches slot `i` of
    /// `L(u)` with slot `perms[e][i]` of `L(v)`.
    pub fn cover_from_perms(&self, perms: &[Vec<usize>]) -> Cover {
        assert_eq!(perms.len(), self.free.len());
        let k = self.k;
        let lists = (0..self.graph.n()).map(|u| (u * k..u * k + k).collect()).collect();
        let mut h_edges = Vec::with_capacity(self.graph.m() * k);
        for &(p, c) in &self.forest {
            h_edges.extend((0..k).map(|i| (p * k + i, c * k + i)));
        }
        for (&(u, v), perm) in self.free.iter().zip(perms) {
            h_edges.extend((0..k).map(|i| (u * k + i, v * k + perm[i])));
        }
        Cover::from_trusted(self.graph.clone(), lists, h_edges)
    }

    pub fn cover_at(&self, index: u128) -> Cover {
        let perms: Vec<Vec<usize>> =
            self.digits(index).into_iter().map(|d| perm_unrank(self.k, d)).collect();
        self.cover_from_perms(&perms)
    }

    /// Every cover in index order.
    pub fn iter(&self) -> impl Iterator<Item = Cover> + '_ {
        let len = self.len().expect("family size fits in u128");
        (0..len).map(move |i| self.cover_at(i))
    }
}

/// The family as a stream, refusing families longer than `max_covers`.
pub fn enumerate_covers(
    graph: &Graph,
    k: usize,
    max_covers: u128,
) -> Result<impl Iterator<Item = Cover>> {
    let family = CoverFamily::new(graph, k)?;
    match family.len() {
        Some(len) if len <= max_covers => {
            Ok((0..len).map(move |i| family.cover_at(i)))
        }
        len => Err(DpError::CoverCap {
            count: len.map_or_else(|| "more than 2^128".to_string(), |l| l.to_string()),
            cap: max_covers,
        }),
    }
}
