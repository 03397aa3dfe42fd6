//! Closed-form bounds on `Z_DP` and the list-size sufficiency condition for
//! joins, plus an exact `Z_DP` search for tiny graphs.
//!
//! `Z_DP(G)` is the least `s` with `χ_DP(J(G, s)) = χ(J(G, s)) = χ(G) + s`.
//! Once equality holds at `s` it holds at every larger `s`: given a cover of
//! `J(G, s + 1)` with lists of size `t + 1`, pick any entry of one new
//! dominating vertex and delete its neighbors; every other list loses at
//! most one entry (matchings), leaving a cover of `J(G, s)` with lists of
//! size `≥ t`. So `χ_DP(J(G, s + 1)) ≤ χ_DP(J(G, s)) + 1`, and
//! [`zdp_exact`] may stop at the first `s` where equality holds.

use serde::{Deserialize, Serialize};

use crate::coloring::chromatic_number;
use crate::cover::Cover;
use crate::dp::is_dp_colorable_at;
use crate::error::{DpError, Result};
use crate::graph::{join, min_degree, Graph};
use crate::limits::Limits;

/// Deficiencies `σ(v) = max{deg(v) + |A| - |L(v)| + 1, 0}` and the verdicts
/// of the sufficiency condition for `J(G, A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaReport {
    pub formula: String,
    pub a_size: usize,
    pub k: usize,
    pub per_vertex: Vec<usize>,
    pub total: usize,
    /// `|A| ≥ (3/2)·σ`.
    pub condition_holds: bool,
    /// `|L(a)| ≥ |A| + k` for every `a ∈ A` (vacuous when `A` is empty).
    pub list_guard: bool,
    /// Both hold, so `J(G, A)` is colorable from every such cover.
    pub certified: bool,
}

/// Evaluates the sufficiency condition from list sizes alone.
///
/// `list_sizes[v]` is `|L(v)|` for `v ∈ V(G)`; `a_list_min` is
/// `min_{a ∈ A} |L(a)|` and is required when `a_size > 0`; `k` is `χ(G)`.
pub fn sigma_report(
    g: &Graph,
    a_size: usize,
    list_sizes: &[usize],
    a_list_min: Option<usize>,
    k: usize,
) -> Result<SigmaReport> {
    if list_sizes.len() != g.n() {
        return Err(DpError::MissingListSize { expected: g.n(), found: list_sizes.len() });
    }
    let list_guard = match (a_size, a_list_min) {
        (0, _) => true,
        (_, Some(min)) => min >= a_size + k,
        (_, None) => return Err(DpError::MissingAListSize),
    };
    let per_vertex: Vec<usize> = (0..g.n())
        .map(|v| (g.degree(v) + a_size + 1).saturating_sub(list_sizes[v]))
        .collect();
    let total: usize = per_vertex.iter().sum();
    let condition_holds = 2 * a_size >= 3 * total;
    Ok(SigmaReport {
        formula: "|A| >= (3/2) * sum_v max{deg(v) + |A| - |L(v)| + 1, 0}".into(),
        a_size,
        k,
        per_vertex,
        total,
        condition_holds,
        list_guard,
        certified: condition_holds && list_guard,
    })
}

/// [`sigma_report`] read off a concrete cover of `J(G, A)`, where base
/// vertices `0..n` are `V(G)` and the last `a_size` vertices are `A`.
pub fn sigma_report_for_cover(
    g: &Graph,
    a_size: usize,
    cover: &Cover,
    limits: &Limits,
) -> Result<SigmaReport> {
    let n = g.n();
    if cover.base().n() != n + a_size {
        return Err(DpError::MissingListSize { expected: n + a_size, found: cover.base().n() });
    }
    let sizes: Vec<usize> = (0..n).map(|v| cover.list(v).len()).collect();
    let a_min = (n..n + a_size).map(|a| cover.list(a).len()).min();
    let k = chromatic_number(g, limits)?;
    sigma_report(g, a_size, &sizes, a_min, k)
}

/// A bound value together with the formula that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub formula: String,
    pub value: usize,
}

/// The refined bound keeps its exact value, which may be a half-integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedBound {
    pub formula: String,
    /// `⌊3m - (3/2)(k-1)n⌋`, the usable integer bound.
    pub value: usize,
    /// The exact rational, e.g. `"27/2"` or `"18"`.
    pub exact: String,
}

/// Upper bounds on `Z_DP(G)` in terms of `n`, `m`, `k = χ(G)` and `δ(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub delta: Option<usize>,
    pub zdp_upper_basic: FormulaValue,
    /// Present iff `δ(G) ≥ k - 1`.
    pub zdp_upper_refined: Option<RefinedBound>,
    pub notes: String,
}

impl BoundsReport {
    /// The best applicable integer bound.
    pub fn best(&self) -> usize {
        self.zdp_upper_refined
            .as_ref()
            .map_or(self.zdp_upper_basic.value, |r| r.value.min(self.zdp_upper_basic.value))
    }
}

pub fn zdp_upper(g: &Graph, limits: &Limits) -> Result<BoundsReport> {
    let (n, m) = (g.n(), g.m());
    let k = chromatic_number(g, limits)?;
    let delta = min_degree(g).ok();
    let basic = FormulaValue { formula: "3m".into(), value: 3 * m };
    let refined = match delta {
        Some(d) if d + 1 >= k => {
            // twice the bound: 6m - 3(k-1)n, non-negative because δ ≥ k-1
            let twice = 6 * m - 3 * (k - 1) * n;
            let exact =
                if twice % 2 == 0 { (twice / 2).to_string() } else { format!("{twice}/2") };
            Some(RefinedBound {
                formula: "3m - (3/2)(k-1)n".into(),
                value: twice / 2,
                exact,
            })
        }
        _ => None,
    };
    let notes = match (delta, &refined) {
        (None, _) => "empty graph: minimum degree undefined, only 3m applies".into(),
        (Some(d), None) => format!("delta = {d} < k - 1 = {}, only 3m applies", k - 1),
        (Some(d), Some(_)) => format!("delta = {d} >= k - 1 = {}, refined bound applies", k.saturating_sub(1)),
    };
    Ok(BoundsReport {
        n,
        m,
        k,
        delta,
        zdp_upper_basic: basic,
        zdp_upper_refined: refined,
        notes,
    })
}

/// Bounds on `Z_DP(n)`, the maximum of `Z_DP(G)` over `n`-vertex graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZdpNBounds {
    pub n: usize,
    /// `n²/4 - n`, for even `n ≥ 6` only.
    pub lower: Option<usize>,
    pub lower_formula: Option<String>,
    /// `⌊3n²/2⌋`.
    pub upper: usize,
    pub upper_formula: String,
}

pub fn zdp_n_bounds(n: usize) -> ZdpNBounds {
    let lower = (n % 2 == 0 && n >= 6).then(|| n * n / 4 - n);
    ZdpNBounds {
        n,
        lower,
        lower_formula: lower.map(|_| "n^2/4 - n".into()),
        upper: 3 * n * n / 2,
        upper_formula: "floor(3n^2/2)".into(),
    }
}

/// `2r - n ≥ 6(n - r)²`: when it holds, every `n`-vertex graph with
/// `χ = r` has `χ_DP = χ`. Meaningful for `0 ≤ r ≤ n`.
pub fn chi_equals_chidp_guaranteed(n: usize, r: usize) -> bool {
    let (n, r) = (n as i128, r as i128);
    2 * r - n >= 6 * (n - r) * (n - r)
}

/// One step of the `Z_DP` search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZdpStep {
    pub s: usize,
    pub chi_join: usize,
    pub dp_equals_chi: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZdpSearch {
    pub z_dp: Option<usize>,
    pub s_max: usize,
    pub steps: Vec<ZdpStep>,
}

/// Smallest `s ≤ s_max` with `χ_DP(J(G, s)) = χ(G) + s`.
pub fn zdp_exact(g: &Graph, s_max: usize, limits: &Limits) -> Result<Option<usize>> {
    Ok(zdp_search(g, s_max, limits)?.z_dp)
}

/// [`zdp_exact`] with the per-`s` verdicts.
pub fn zdp_search(g: &Graph, s_max: usize, limits: &Limits) -> Result<ZdpSearch> {
    let chi = chromatic_number(g, limits)?;
    let mut steps = Vec::new();
    for s in 0..=s_max {
        let joined = join(g, s);
        let equal = joined.n() == 0 || is_dp_colorable_at(&joined, chi + s, limits)?.colorable;
        steps.push(ZdpStep { s, chi_join: chi + s, dp_equals_chi: equal });
        if equal {
            return Ok(ZdpSearch { z_dp: Some(s), s_max, steps });
        }
    }
    Ok(ZdpSearch { z_dp: None, s_max, steps })
}
