//! DP-colorability at a fixed list size, and the DP-chromatic number.
//!
//! `is_dp_colorable_at(G, k)` answers whether every cover in the
//! [`CoverFamily`] of `(G, k)` has a transversal. Rather than solving each
//! of the `(k!)^(m-n+c)` covers, the question is turned around: a slot
//! assignment that respects the identity matchings on the spanning forest
//! is a transversal unless some free edge `uv` matches its slot at `u` to
//! its slot at `v`. A refuting cover is therefore a choice of partial
//! matchings on the free edges that hits every such assignment. That is a
//! satisfiability problem with one variable per (free edge, slot, slot)
//! triple:
//!
//! * at most one partner per slot, on each side of each free edge;
//! * for every forest-respecting assignment, one of its free-edge pairs is
//!   matched.
//!
//! Partial matchings extend to permutations, so the formula is satisfiable
//! exactly when some cover of the family has no transversal.
//!
//! Once the formula is satisfiable, the refuting cover of minimum family
//! index is found by fixing whole permutations edge by edge in index order,
//! each candidate checked under assumptions.

use varisat::{ExtendFormula, Lit, Solver};

use crate::coloring::{chromatic_number, degeneracy};
use crate::cover::Cover;
use crate::error::{DpError, Result};
use crate::family::{factorial, perm_unrank, CoverFamily};
use crate::graph::Graph;
use crate::limits::Limits;

/// Outcome of [`is_dp_colorable_at`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpVerdict {
    pub k: usize,
    pub colorable: bool,
    /// Minimum-index cover of the family without a transversal.
    pub refuting: Option<Cover>,
    pub refuting_index: Option<u128>,
    /// `(k!)^(m-n+c)`, if it fits in `u128`.
    pub family_size: Option<u128>,
    /// Forest-respecting slot assignments, one clause each.
    pub assignments: usize,
    pub solver_calls: u64,
}

/// True iff every cover of `g` with all lists of size `k` has a transversal.
///
/// For `k > degeneracy(g)` the answer is `true` without search, because
/// greedy coloring along a degeneracy order always succeeds. Otherwise the
/// number of forest-respecting assignments is bounded by
/// `limits.max_assignments`.
pub fn is_dp_colorable_at(g: &Graph, k: usize, limits: &Limits) -> Result<DpVerdict> {
    let family = CoverFamily::new(g, k)?;
    let mut verdict = DpVerdict {
        k,
        colorable: true,
        refuting: None,
        refuting_index: None,
        family_size: family.len(),
        assignments: 0,
        solver_calls: 0,
    };
    if g.n() == 0 || k > degeneracy(g).d {
        return Ok(verdict);
    }
    let space = Space::new(&family, limits)?;
    verdict.assignments = space.count;
    let refutable = if space.free.is_empty() {
        space.count == 0
    } else {
        verdict.solver_calls += 1;
        satisfiable(&mut space.solver(), &[])
    };
    if refutable {
        let digits = lex_first_refutation(&space, limits.jobs, &mut verdict.solver_calls)?;
        let perms: Vec<Vec<usize>> = digits.iter().map(|&d| perm_unrank(k, d)).collect();
        verdict.colorable = false;
        verdict.refuting = Some(family.cover_from_perms(&perms));
        verdict.refuting_index = family.index_of(&digits);
    }
    Ok(verdict)
}

/// Exact DP-chromatic number.
///
/// The search ascends from `χ(G)` (a lower bound, since `χ_DP ≥ χ_ℓ ≥ χ`)
/// and stops at `d + 1` for the degeneracy `d`, which always suffices.
pub fn chi_dp(g: &Graph, limits: &Limits) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    let lower = chromatic_number(g, limits)?;
    let upper = degeneracy(g).d + 1;
    for k in lower..upper {
        if is_dp_colorable_at(g, k, limits)?.colorable {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Slot assignments that respect the identity matchings on the forest.
struct Space {
    n: usize,
    k: usize,
    free: Vec<(usize, usize)>,
    /// Flat, stride `n`.
    slots: Vec<usize>,
    count: usize,
}

impl Space {
    fn new(family: &CoverFamily, limits: &Limits) -> Result<Space> {
        let g = family.graph();
        let (n, k) = (g.n(), family.k());
        let mut parent = vec![usize::MAX; n];
        for &(p, c) in family.forest() {
            parent[c] = p;
        }
        // forest edges are listed in discovery order, so roots followed by
        // children in that order put every parent before its children
        let mut order: Vec<usize> = (0..n).filter(|&u| parent[u] == usize::MAX).collect();
        order.extend(family.forest().iter().map(|&(_, c)| c));
        let mut estimate: u128 = 1;
        for &u in &order {
            let choices = if parent[u] == usize::MAX { k } else { k - 1 };
            estimate = estimate.saturating_mul(choices as u128);
        }
        if estimate > limits.max_assignments as u128 {
            return Err(DpError::AssignmentCap {
                count: estimate.to_string(),
                cap: limits.max_assignments,
            });
        }
        let mut slots = Vec::with_capacity(estimate as usize * n);
        let mut current = vec![0; n];
        fill(&order, &parent, k, 0, &mut current, &mut slots);
        let count = slots.len() / n;
        Ok(Space { n, k, free: family.free_edges().to_vec(), slots, count })
    }

    fn row(&self, t: usize) -> &[usize] {
        &self.slots[t * self.n..(t + 1) * self.n]
    }

    /// Literal for "free edge `e` matches slot `i` to slot `j`".
    fn pair(&self, e: usize, i: usize, j: usize) -> Lit {
        Lit::from_index((e * self.k + i) * self.k + j, true)
    }

    fn solver(&self) -> Solver<'static> {
        let k = self.k;
        let mut solver = Solver::new();
        for e in 0..self.free.len() {
            for a in 0..k {
                for b in 0..k {
                    for c in b + 1..k {
                        solver.add_clause(&[!self.pair(e, a, b), !self.pair(e, a, c)]);
                        solver.add_clause(&[!self.pair(e, b, a), !self.pair(e, c, a)]);
                    }
                }
            }
        }
        let mut clause = Vec::with_capacity(self.free.len());
        for t in 0..self.count {
            let row = self.row(t);
            clause.clear();
            clause.extend(self.free.iter().enumerate().map(|(e, &(u, v))| self.pair(e, row[u], row[v])));
            solver.add_clause(&clause);
        }
        solver
    }

    /// Assumptions fixing free edge `e` to the permutation `perm`.
    fn fix(&self, e: usize, perm: &[usize], out: &mut Vec<Lit>) {
        out.extend(perm.iter().enumerate().map(|(i, &j)| self.pair(e, i, j)));
    }
}

fn fill(order: &[usize], parent: &[usize], k: usize, at: usize, cur: &mut [usize], out: &mut Vec<usize>) {
    if at == order.len() {
        out.extend_from_slice(cur);
        return;
    }
    let u = order[at];
    for s in 0..k {
        if parent[u] != usize::MAX && cur[parent[u]] == s {
            continue;
        }
        cur[u] = s;
        fill(order, parent, k, at + 1, cur, out);
    }
}

fn satisfiable(solver: &mut Solver<'static>, assumptions: &[Lit]) -> bool {
    solver.assume(assumptions);
    // no proof output or interruption is configured, so solving cannot fail
    solver.solve().expect("solver without proof processors")
}

/// Minimum-index refuting cover, as permutation ranks per free edge.
/// Only called once a refutation is known to exist.
fn lex_first_refutation(space: &Space, jobs: usize, calls: &mut u64) -> Result<Vec<usize>> {
    let (r, k) = (space.free.len(), space.k);
    let perms: Vec<Vec<usize>> =
        (0..factorial(k).expect("small k") as usize).map(|p| perm_unrank(k, p)).collect();
    let mut prefix: Vec<usize> = Vec::with_capacity(r);
    let mut fixed: Vec<Lit> = Vec::new();
    let with = |fixed: &[Lit], e: usize, p: usize| {
        let mut lits = fixed.to_vec();
        space.fix(e, &perms[p], &mut lits);
        lits
    };
    if jobs <= 1 {
        let mut solver = space.solver();
        for e in 0..r {
            let p = (0..perms.len())
                .find(|&p| {
                    *calls += 1;
                    satisfiable(&mut solver, &with(&fixed, e, p))
                })
                .expect("a refutation exists under the current prefix");
            prefix.push(p);
            space.fix(e, &perms[p], &mut fixed);
        }
        return Ok(prefix);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| DpError::Parse(format!("thread pool: {e}")))?;
    for e in 0..r {
        let mut hit = None;
        for chunk in (0..perms.len()).collect::<Vec<_>>().chunks(jobs) {
            *calls += chunk.len() as u64;
            let results: Vec<bool> = pool.install(|| {
                use rayon::prelude::*;
                chunk
                    .par_iter()
                    .map_init(|| space.solver(), |solver, &p| satisfiable(solver, &with(&fixed, e, p)))
                    .collect()
            });
            if let Some(i) = results.iter().position(|&ok| ok) {
                hit = Some(chunk[i]);
                break;
            }
        }
        let p = hit.expect("a refutation exists under the current prefix");
        prefix.push(p);
        space.fix(e, &perms[p], &mut fixed);
    }
    Ok(prefix)
}
