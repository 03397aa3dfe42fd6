//! The quadratic lower-bound instance: a cover of `J(K_{n/2,n/2}, k² - 2)`,
//! `k = n/2 - 1`, with every list of size `k² = χ(J)` and no transversal.
//!
//! Base vertices: part X is `x = 0`, `x_s = 1 + s`; part Y is `y = k + 1`,
//! `y_t = k + 2 + t`; the dominating vertices `a_r` follow at `2k + 2 + r`.
//! Every list is `{u} × Z_k × Z_k` and `(u, i, j)` has cover id
//! `u·k² + i·k + j`. Adjacency in `H`:
//!
//! 1. `(u, i, j) ~ (u, i', j')` whenever `(i, j) ≠ (i', j')`;
//! 2. `(u, i, j) ~ (v, i, j)` for `u ∈ {x, y} ∪ A` and every base neighbor `v` of `u`;
//! 3. `(x_s, i, j) ~ (y_t, i + s, j + t)` for all `s, t, i, j ∈ Z_k`.

use std::collections::BTreeSet;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::coloring::chromatic_number;
use crate::cover::{validate_explicit_cover, Cover, Violation};
use crate::error::{DpError, Result};
use crate::graph::{join, Graph};
use crate::limits::Limits;
use crate::solver::{find_transversal, Status};

/// `(vertex name, i, j)` for one cover vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverLabel(pub String, pub usize, pub usize);

/// Cover-vertex labels, serialized as `{"<cover id>": [name, i, j], ...}`
/// in id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling(pub Vec<CoverLabel>);

impl Serialize for Labeling {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (id, label) in self.0.iter().enumerate() {
            map.serialize_entry(&id.to_string(), label)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug)]
pub struct HardInstance {
    pub n: usize,
    pub k: usize,
    pub a_size: usize,
    pub base_join: Graph,
    pub cover: Cover,
    pub labeling: Labeling,
}

impl HardInstance {
    pub fn x(&self) -> usize {
        0
    }

    pub fn x_s(&self, s: usize) -> usize {
        1 + s
    }

    pub fn y(&self) -> usize {
        self.k + 1
    }

    pub fn y_t(&self, t: usize) -> usize {
        self.k + 2 + t
    }

    pub fn a(&self, r: usize) -> usize {
        2 * self.k + 2 + r
    }

    /// Cover id of `(u, i, j)`.
    pub fn id(&self, u: usize, i: usize, j: usize) -> usize {
        u * self.k * self.k + i * self.k + j
    }

    /// `(u, i, j)` of a cover id.
    pub fn decode(&self, x: usize) -> (usize, usize, usize) {
        let kk = self.k * self.k;
        (x / kk, (x % kk) / self.k, x % self.k)
    }
}

fn vertex_names(k: usize, a_size: usize) -> Vec<String> {
    let mut names = vec!["x".to_string()];
    names.extend((0..k).map(|s| format!("x{s}")));
    names.push("y".into());
    names.extend((0..k).map(|t| format!("y{t}")));
    names.extend((0..a_size).map(|r| format!("a{r}")));
    names
}

/// Builds the instance for an even `n ≥ 6`.
pub fn hard_instance(n: usize) -> Result<HardInstance> {
    if n % 2 == 1 || n < 6 {
        return Err(DpError::UnsupportedN(n));
    }
    let k = n / 2 - 1;
    let kk = k * k;
    let a_size = kk - 2;
    let base_join = join(&Graph::complete_bipartite(k + 1, k + 1), a_size);
    let total = base_join.n();
    let id = |u: usize, i: usize, j: usize| u * kk + i * k + j;
    let (x, y) = (0, k + 1);

    let mut edges = BTreeSet::new();
    let mut push = |a: usize, b: usize| {
        edges.insert(if a < b { (a, b) } else { (b, a) });
    };
    for u in 0..total {
        for p in 0..kk {
            for q in p + 1..kk {
                push(u * kk + p, u * kk + q);
            }
        }
    }
    let identity_owners = [x, y].into_iter().chain(2 * k + 2..total);
    for u in identity_owners {
        for &v in base_join.neighbors(u) {
            for i in 0..k {
                for j in 0..k {
                    push(id(u, i, j), id(v, i, j));
                }
            }
        }
    }
    for s in 0..k {
        for t in 0..k {
            for i in 0..k {
                for j in 0..k {
                    push(id(1 + s, i, j), id(k + 2 + t, (i + s) % k, (j + t) % k));
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    let lists: Vec<Vec<usize>> = (0..total).map(|u| (u * kk..(u + 1) * kk).collect()).collect();
    let cover = Cover::from_explicit(base_join.clone(), lists, &edges)?;

    let names = vertex_names(k, a_size);
    let labeling = Labeling(
        (0..total * kk)
            .map(|c| CoverLabel(names[c / kk].clone(), (c % kk) / k, c % k))
            .collect(),
    );
    Ok(HardInstance { n, k, a_size, base_join, cover, labeling })
}

/// Structural checks of the construction and, optionally, the refutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardInstanceReport {
    pub n: usize,
    pub k: usize,
    pub a_size: usize,
    pub base_vertices: usize,
    pub base_edges: usize,
    pub cover_vertices: usize,
    pub list_size: usize,
    pub chi_join: usize,
    pub list_size_equals_chi: bool,
    pub axioms_ok: bool,
    pub violations: Vec<Violation>,
    pub perfect_matchings: bool,
    /// Solver verdict, present when refutation was requested.
    pub refutation: Option<Status>,
    pub refutation_nodes: Option<u64>,
    /// `n²/4 - n`, certified as a lower bound on `Z_DP(K_{n/2,n/2})` when
    /// the cover is refuted.
    pub zdp_lower_bound: usize,
    pub all_checks_pass: bool,
}

pub fn verify_hard_instance(n: usize, refute: bool, limits: &Limits) -> Result<HardInstanceReport> {
    let inst = hard_instance(n)?;
    let kk = inst.k * inst.k;
    let report = validate_explicit_cover(&inst.base_join, inst.cover.lists(), &explicit_edges(&inst));
    let perfect_matchings = inst.base_join.edges().iter().all(|&(u, v)| {
        inst.cover.list(u).iter().filter(|&&x| inst.cover.partner(x, v).is_some()).count() == kk
    });
    let list_size = inst.cover.uniform_size().unwrap_or(0);
    let chi_join = chromatic_number(&inst.base_join, limits)?;
    let (refutation, refutation_nodes) = if refute {
        let r = find_transversal(&inst.cover, limits)?;
        (Some(r.status), Some(r.nodes))
    } else {
        (None, None)
    };
    let all_checks_pass = report.ok
        && perfect_matchings
        && list_size == kk
        && chi_join == kk
        && refutation.is_none_or(|s| s == Status::Unsat);
    Ok(HardInstanceReport {
        n,
        k: inst.k,
        a_size: inst.a_size,
        base_vertices: inst.base_join.n(),
        base_edges: inst.base_join.m(),
        cover_vertices: inst.cover.len(),
        list_size,
        chi_join,
        list_size_equals_chi: list_size == chi_join,
        axioms_ok: report.ok,
        violations: report.violations,
        perfect_matchings,
        refutation,
        refutation_nodes,
        zdp_lower_bound: n * n / 4 - n,
        all_checks_pass,
    })
}

/// `H` with the intra-list cliques written out.
fn explicit_edges(inst: &HardInstance) -> Vec<(usize, usize)> {
    let kk = inst.k * inst.k;
    let mut edges = inst.cover.h_edges().to_vec();
    for u in 0..inst.base_join.n() {
        for p in 0..kk {
            for q in p + 1..kk {
                edges.push((u * kk + p, u * kk + q));
            }
        }
    }
    edges
}
