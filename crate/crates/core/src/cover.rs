//! Covers `(L, H)` of a base graph.
//!
//! Cover vertices are dense integers `0..N`. `L(u)` is stored as a list of
//! cover-vertex ids per base vertex; every cover built inside this crate uses
//! contiguous ranges, but covers read from JSON may use any partition of
//! `0..N`. Edges inside a list are never stored: `H[L(u)]` is complete by
//! definition, so only cross edges (the matchings along base edges) are kept.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{DpError, Result};
use crate::graph::Graph;

/// One chosen cover vertex per base vertex, indexed by base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transversal(pub Vec<usize>);

impl Transversal {
    pub fn chosen(&self) -> &[usize] {
        &self.0
    }
}

/// A validated cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    base: Graph,
    lists: Vec<Vec<usize>>,
    owner: Vec<usize>,
    cross: Vec<Vec<usize>>,
    h_edges: Vec<(usize, usize)>,
}

/// A broken cover axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// `lists` does not have one entry per base vertex.
    ListCount { expected: usize, found: usize },
    /// The cover vertex is in no list or in several (`lists` names them).
    Partition { cover_vertex: usize, lists: Vec<usize> },
    /// An edge endpoint is not a cover vertex.
    UnknownEndpoint { edge: [usize; 2] },
    /// A loop or a repeated edge.
    MalformedEdge { edge: [usize; 2] },
    /// A cross edge between lists of non-adjacent base vertices.
    Locality { edge: [usize; 2], base: [usize; 2] },
    /// Two vertices of one list are not adjacent (explicit form only).
    IntraListClique { base_vertex: usize, missing: [usize; 2] },
    /// An intra-list edge was listed although cliques are implicit.
    IntraListEdgeListed { base_vertex: usize, edge: [usize; 2] },
    /// A cover vertex has several neighbors in the list of one base neighbor.
    CrossMatching { base_edge: [usize; 2], cover_vertex: usize, partners: Vec<usize> },
}

impl Violation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::ListCount { .. }
            | Violation::Partition { .. }
            | Violation::UnknownEndpoint { .. } => "partition",
            Violation::MalformedEdge { .. } => "simple",
            Violation::Locality { .. } => "locality",
            Violation::IntraListClique { .. } | Violation::IntraListEdgeListed { .. } => {
                "intra_list_clique"
            }
            Violation::CrossMatching { .. } => "cross_matching",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ListCount { expected, found } => {
                write!(f, "{found} lists for {expected} base vertices")
            }
            Violation::Partition { cover_vertex, lists } if lists.is_empty() => {
                write!(f, "cover vertex {cover_vertex} is in no list")
            }
            Violation::Partition { cover_vertex, lists } => {
                write!(f, "cover vertex {cover_vertex} appears in lists {lists:?}")
            }
            Violation::UnknownEndpoint { edge } => {
                write!(f, "edge {edge:?} has an endpoint outside every list")
            }
            Violation::MalformedEdge { edge } => write!(f, "edge {edge:?} is a loop or repeated"),
            Violation::Locality { edge, base } => write!(
                f,
                "edge {edge:?} joins lists of non-adjacent base vertices {base:?}"
            ),
            Violation::IntraListClique { base_vertex, missing } => write!(
                f,
                "list of base vertex {base_vertex} is missing the edge {missing:?}"
            ),
            Violation::IntraListEdgeListed { base_vertex, edge } => write!(
                f,
                "edge {edge:?} lies inside the list of base vertex {base_vertex}; intra-list edges are implicit"
            ),
            Violation::CrossMatching { base_edge, cover_vertex, partners } => write!(
                f,
                "cover vertex {cover_vertex} has partners {partners:?} across base edge {base_edge:?}"
            ),
        }
    }
}

/// Outcome of checking the cover axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport { ok: violations.is_empty(), violations }
    }
}

/// Checks the cover axioms with intra-list cliques implicit; `h_edges`
/// must then hold cross edges only.
pub fn validate_cover(
    base: &Graph,
    lists: &[Vec<usize>],
    h_edges: &[(usize, usize)],
) -> ValidationReport {
    ValidationReport::from_violations(check_axioms(base, lists, h_edges, false))
}

/// Checks the cover axioms against a fully explicit `H`, where every
/// intra-list edge must be present.
pub fn validate_explicit_cover(
    base: &Graph,
    lists: &[Vec<usize>],
    h_edges: &[(usize, usize)],
) -> ValidationReport {
    ValidationReport::from_violations(check_axioms(base, lists, h_edges, true))
}

fn canon(x: usize, y: usize) -> (usize, usize) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

fn check_axioms(
    base: &Graph,
    lists: &[Vec<usize>],
    h_edges: &[(usize, usize)],
    explicit: bool,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if lists.len() != base.n() {
        out.push(Violation::ListCount { expected: base.n(), found: lists.len() });
        return out;
    }
    let universe = lists.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
    let mut seen_in: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for (u, list) in lists.iter().enumerate() {
        for &x in list {
            seen_in[x].push(u);
        }
    }
    let mut owner = vec![usize::MAX; universe];
    for (x, owners) in seen_in.iter().enumerate() {
        if owners.len() == 1 {
            owner[x] = owners[0];
        } else {
            out.push(Violation::Partition { cover_vertex: x, lists: owners.clone() });
            if let Some(&u) = owners.first() {
                owner[x] = u;
            }
        }
    }

    let mut seen = BTreeSet::new();
    let mut intra = BTreeSet::new();
    let mut cross: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for &(x, y) in h_edges {
        let e = canon(x, y);
        if x == y || !seen.insert(e) {
            out.push(Violation::MalformedEdge { edge: [e.0, e.1] });
            continue;
        }
        if e.1 >= universe || owner[e.0] == usize::MAX || owner[e.1] == usize::MAX {
            out.push(Violation::UnknownEndpoint { edge: [e.0, e.1] });
            continue;
        }
        let (u, v) = (owner[e.0], owner[e.1]);
        if u == v {
            if explicit {
                intra.insert(e);
            } else {
                out.push(Violation::IntraListEdgeListed { base_vertex: u, edge: [e.0, e.1] });
            }
        } else if !base.has_edge(u, v) {
            let b = canon(u, v);
            out.push(Violation::Locality { edge: [e.0, e.1], base: [b.0, b.1] });
        } else {
            cross[e.0].push(e.1);
            cross[e.1].push(e.0);
        }
    }

    if explicit {
        for (u, list) in lists.iter().enumerate() {
            for (i, &x) in list.iter().enumerate() {
                for &y in &list[i + 1..] {
                    let e = canon(x, y);
                    if x != y && !intra.contains(&e) {
                        out.push(Violation::IntraListClique { base_vertex: u, missing: [e.0, e.1] });
                    }
                }
            }
        }
    }

    for (x, partners) in cross.iter_mut().enumerate() {
        partners.sort_unstable_by_key(|&y| (owner[y], y));
        let mut i = 0;
        while i < partners.len() {
            let v = owner[partners[i]];
            let j = i + partners[i..].iter().take_while(|&&y| owner[y] == v).count();
            if j - i > 1 {
                let b = canon(owner[x], v);
                out.push(Violation::CrossMatching {
                    base_edge: [b.0, b.1],
                    cover_vertex: x,
                    partners: partners[i..j].to_vec(),
                });
            }
            i = j;
        }
    }
    out
}

impl Cover {
    /// Builds a cover from cross edges, rejecting any axiom violation.
    pub fn new(base: Graph, lists: Vec<Vec<usize>>, h_edges: &[(usize, usize)]) -> Result<Cover> {
        let report = validate_cover(&base, &lists, h_edges);
        if !report.ok {
            return Err(DpError::InvalidCover(report.violations));
        }
        Ok(Cover::from_trusted(base, lists, h_edges.to_vec()))
    }

    /// Builds a cover from a fully explicit `H`; intra-list edges are checked
    /// and then dropped.
    pub fn from_explicit(
        base: Graph,
        lists: Vec<Vec<usize>>,
        h_edges: &[(usize, usize)],
    ) -> Result<Cover> {
        let report = validate_explicit_cover(&base, &lists, h_edges);
        if !report.ok {
            return Err(DpError::InvalidCover(report.violations));
        }
        let mut owner = vec![0; lists.iter().map(Vec::len).sum()];
        for (u, list) in lists.iter().enumerate() {
            for &x in list {
                owner[x] = u;
            }
        }
        let cross: Vec<_> = h_edges.iter().copied().filter(|&(x, y)| owner[x] != owner[y]).collect();
        Ok(Cover::from_trusted(base, lists, cross))
    }

    pub(crate) fn from_trusted(
        base: Graph,
        lists: Vec<Vec<usize>>,
        h_edges: Vec<(usize, usize)>,
    ) -> Cover {
        debug_assert!(validate_cover(&base, &lists, &h_edges).ok);
        let total = lists.iter().map(Vec::len).sum();
        let mut owner = vec![0; total];
        for (u, list) in lists.iter().enumerate() {
            for &x in list {
                owner[x] = u;
            }
        }
        let mut h_edges: Vec<_> = h_edges.into_iter().map(|(x, y)| canon(x, y)).collect();
        h_edges.sort_unstable();
        let mut cross = vec![Vec::new(); total];
        for &(x, y) in &h_edges {
            cross[x].push(y);
            cross[y].push(x);
        }
        for c in &mut cross {
            c.sort_unstable();
        }
        Cover { base, lists, owner, cross, h_edges }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.lists
    }

    pub fn list(&self, u: usize) -> &[usize] {
        &self.lists[u]
    }

    /// Number of cover vertices `|V(H)|`.
    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    /// Base vertex whose list contains `x`.
    pub fn owner(&self, x: usize) -> usize {
        self.owner[x]
    }

    /// Cross edges, canonical and sorted.
    pub fn h_edges(&self) -> &[(usize, usize)] {
        &self.h_edges
    }

    /// Neighbors of `x` outside its own list.
    pub fn cross_neighbors(&self, x: usize) -> &[usize] {
        &self.cross[x]
    }

    /// Adjacency in `H`, including the implicit intra-list cliques.
    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        if x == y {
            return false;
        }
        self.owner[x] == self.owner[y] || self.cross[x].binary_search(&y).is_ok()
    }

    /// The unique neighbor of `x` in `L(v)`, if any.
    pub fn partner(&self, x: usize, v: usize) -> Option<usize> {
        self.cross[x].iter().copied().find(|&y| self.owner[y] == v)
    }

    /// Common list size, if every list has the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.lists.first().map_or(0, Vec::len);
        self.lists.iter().all(|l| l.len() == first).then_some(first)
    }

    /// Membership plus independence.
    pub fn is_transversal(&self, t: &Transversal) -> bool {
        let chosen = t.chosen();
        if chosen.len() != self.base.n() {
            return false;
        }
        let member = chosen
            .iter()
            .enumerate()
            .all(|(u, &x)| x < self.len() && self.owner[x] == u);
        member
            && chosen.iter().enumerate().all(|(i, &x)| {
                chosen[i + 1..].iter().all(|&y| !self.adjacent(x, y))
            })
    }

    fn require_uniform(&self) -> Result<usize> {
        let k = self.lists.first().map_or(0, Vec::len);
        for (u, list) in self.lists.iter().enumerate() {
            if list.len() != k {
                return Err(DpError::NonUniformLists { expected: k, vertex: u, found: list.len() });
            }
        }
        Ok(k)
    }

    fn matched_count(&self, u: usize, v: usize) -> usize {
        self.lists[u].iter().filter(|&&x| self.partner(x, v).is_some()).count()
    }
}

/// Per-vertex color lists for the list-coloring reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_empty: bool,
}

impl ListAssignment {
    /// Lists are sorted and deduplicated.
    pub fn new(mut lists: Vec<Vec<usize>>) -> Self {
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
        }
        ListAssignment { lists, allow_empty: false }
    }

    /// Permits empty lists, for degenerate test instances.
    pub fn allowing_empty(mut self) -> Self {
        self.allow_empty = true;
        self
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.lists
    }
}

/// A cover produced from a list assignment, keeping the `(u, c)` labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListCover {
    pub cover: Cover,
    /// Color of each cover vertex.
    pub colors: Vec<usize>,
}

/// The cover `(L̂, H)` of a list assignment: cover vertices are the pairs
/// `(u, c)` with `c ∈ L(u)`, and `(u, c)(v, c)` is an edge for every base
/// edge `uv`.
pub fn cover_from_lists(g: &Graph, assignment: &ListAssignment) -> Result<ListCover> {
    let lists = assignment.lists();
    if lists.len() != g.n() {
        return Err(DpError::MissingListSize { expected: g.n(), found: lists.len() });
    }
    if !assignment.allow_empty {
        if let Some(u) = lists.iter().position(Vec::is_empty) {
            return Err(DpError::EmptyList(u));
        }
    }
    let mut ids = Vec::with_capacity(g.n());
    let mut colors = Vec::new();
    for list in lists {
        let start = colors.len();
        colors.extend_from_slice(list);
        ids.push((start..colors.len()).collect::<Vec<_>>());
    }
    let mut h_edges = Vec::new();
    for &(u, v) in g.edges() {
        for (i, c) in lists[u].iter().enumerate() {
            if let Ok(j) = lists[v].binary_search(c) {
                h_edges.push((ids[u][i], ids[v][j]));
            }
        }
    }
    Ok(ListCover { cover: Cover::from_trusted(g.clone(), ids, h_edges), colors })
}

/// Reads the coloring `u ↦ c` off a transversal of a list cover.
pub fn transversal_to_list_coloring(lc: &ListCover, t: &Transversal) -> Result<Vec<usize>> {
    if !lc.cover.is_transversal(t) {
        return Err(DpError::InvalidTransversal(
            "not an independent set with one vertex per list".into(),
        ));
    }
    Ok(t.chosen().iter().map(|&x| lc.colors[x]).collect())
}

/// Maps a proper list coloring to the transversal `{(u, f(u))}`.
pub fn list_coloring_to_transversal(lc: &ListCover, coloring: &[usize]) -> Result<Transversal> {
    let base = lc.cover.base();
    if coloring.len() != base.n() {
        return Err(DpError::ColoringLength { expected: base.n(), found: coloring.len() });
    }
    let mut chosen = Vec::with_capacity(coloring.len());
    for (u, &c) in coloring.iter().enumerate() {
        let x = lc
            .cover
            .list(u)
            .iter()
            .copied()
            .find(|&x| lc.colors[x] == c)
            .ok_or(DpError::OffList { vertex: u, color: c })?;
        chosen.push(x);
    }
    if let Some(&(u, v)) = base.edges().iter().find(|&&(u, v)| coloring[u] == coloring[v]) {
        return Err(DpError::ImproperColoring(u, v));
    }
    Ok(Transversal(chosen))
}

/// A cover restricted after fixing some chosen cover vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub cover: Cover,
    /// New base vertex `i` is old base vertex `base_map[i]`.
    pub base_map: Vec<usize>,
    /// New cover vertex `x` is old cover vertex `vertex_map[x]`.
    pub vertex_map: Vec<usize>,
    /// Chosen cover vertices, as given.
    pub chosen: Vec<usize>,
    /// Old base vertices whose lists became empty. Non-empty means the
    /// restricted instance has no transversal.
    pub emptied: Vec<usize>,
    chosen_owners: Vec<usize>,
    original_n: usize,
}

impl Restriction {
    /// Extends a transversal of the restricted cover by the chosen vertices.
    pub fn lift(&self, t: &Transversal) -> Transversal {
        let mut chosen = vec![usize::MAX; self.original_n];
        for (&x, &u) in self.chosen.iter().zip(&self.chosen_owners) {
            chosen[u] = x;
        }
        for (i, &x) in t.chosen().iter().enumerate() {
            chosen[self.base_map[i]] = self.vertex_map[x];
        }
        Transversal(chosen)
    }
}

/// Removes the base vertices of `chosen` and deletes every `H`-neighbor of
/// `chosen` from the remaining lists (`L'(w) = L(w) \ N_H(chosen)`).
pub fn remove_and_restrict(c: &Cover, chosen: &[usize]) -> Result<Restriction> {
    let n = c.base().n();
    let mut removed = vec![false; n];
    for (i, &x) in chosen.iter().enumerate() {
        if x >= c.len() {
            return Err(DpError::UnknownCoverVertex(x));
        }
        let u = c.owner(x);
        if removed[u] {
            return Err(DpError::ChosenSameList(u));
        }
        removed[u] = true;
        if let Some(&y) = chosen[..i].iter().find(|&&y| c.adjacent(x, y)) {
            return Err(DpError::ChosenNotIndependent(y, x));
        }
    }
    let mut killed = vec![false; c.len()];
    for &x in chosen {
        killed[x] = true;
        for &y in c.cross_neighbors(x) {
            killed[y] = true;
        }
    }
    let base_map: Vec<usize> = (0..n).filter(|&u| !removed[u]).collect();
    let mut new_id = vec![usize::MAX; c.len()];
    let mut vertex_map = Vec::new();
    let mut lists = Vec::with_capacity(base_map.len());
    let mut emptied = Vec::new();
    for &u in &base_map {
        let mut list = Vec::new();
        for &x in c.list(u) {
            if !killed[x] {
                new_id[x] = vertex_map.len();
                list.push(vertex_map.len());
                vertex_map.push(x);
            }
        }
        if list.is_empty() {
            emptied.push(u);
        }
        lists.push(list);
    }
    let h_edges = c
        .h_edges()
        .iter()
        .filter(|&&(x, y)| new_id[x] != usize::MAX && new_id[y] != usize::MAX)
        .map(|&(x, y)| (new_id[x], new_id[y]))
        .collect();
    let cover = Cover::from_trusted(c.base().induced(&base_map), lists, h_edges);
    Ok(Restriction {
        cover,
        base_map,
        vertex_map,
        chosen: chosen.to_vec(),
        chosen_owners: chosen.iter().map(|&x| c.owner(x)).collect(),
        emptied,
        original_n: n,
    })
}

/// Extends every cross matching to a perfect matching. Free slots are paired
/// in ascending cover-id order, so the result is deterministic.
pub fn complete_matchings(c: &Cover) -> Result<Cover> {
    c.require_uniform()?;
    let mut h_edges = c.h_edges().to_vec();
    for &(u, v) in c.base().edges() {
        let mut free_u: Vec<usize> =
            c.list(u).iter().copied().filter(|&x| c.partner(x, v).is_none()).collect();
        let mut free_v: Vec<usize> =
            c.list(v).iter().copied().filter(|&y| c.partner(y, u).is_none()).collect();
        free_u.sort_unstable();
        free_v.sort_unstable();
        h_edges.extend(free_u.into_iter().zip(free_v).map(|(x, y)| canon(x, y)));
    }
    Ok(Cover::from_trusted(c.base().clone(), c.lists().to_vec(), h_edges))
}

/// Relabels inside each list so that every matching along the breadth-first
/// spanning forest maps slot `i` to slot `i`. The result is isomorphic to
/// the input.
pub fn gauge_fix(c: &Cover) -> Result<Cover> {
    let k = c.require_uniform()?;
    for &(u, v) in c.base().edges() {
        if c.matched_count(u, v) != k {
            return Err(DpError::MatchingNotPerfect(u, v));
        }
    }
    let n = c.base().n();
    // frame[u][i]: old cover vertex that becomes slot i of L(u).
    let mut frame: Vec<Option<Vec<usize>>> = vec![None; n];
    let (tree, _) = c.base().spanning_forest();
    let mut parent_of = vec![usize::MAX; n];
    for &(p, ch) in &tree {
        parent_of[ch] = p;
    }
    for &(p, ch) in &tree {
        if frame[p].is_none() {
            frame[p] = Some(c.list(p).to_vec());
        }
        let parent_frame = frame[p].as_ref().expect("parent framed first");
        let child: Vec<usize> = parent_frame
            .iter()
            .map(|&x| c.partner(x, ch).expect("perfect matching"))
            .collect();
        frame[ch] = Some(child);
    }
    let mut new_id = vec![0; c.len()];
    for u in 0..n {
        let f = frame[u].clone().unwrap_or_else(|| c.list(u).to_vec());
        for (i, &old) in f.iter().enumerate() {
            new_id[old] = c.list(u)[i];
        }
    }
    let h_edges = c.h_edges().iter().map(|&(x, y)| canon(new_id[x], new_id[y])).collect();
    Ok(Cover::from_trusted(c.base().clone(), c.lists().to_vec(), h_edges))
}
