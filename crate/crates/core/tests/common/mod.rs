//! Oracles and generators shared by the integration tests. Nothing here
//! calls into the searches under test.
#![allow(dead_code)]

use dpcolor::{make_graph, Cover, Graph, Transversal};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `n` vertices: the
/// labeled graph whose edge mask is smallest among its relabelings.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let maps: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let canonical = maps.iter().all(|map| {
            let mut image = 0u64;
            for (b, &to) in map.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    image |= 1 << to;
                }
            }
            image >= mask
        });
        if canonical {
            let edges: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
            out.push(make_graph(n, &edges).unwrap());
        }
    }
    out
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    make_graph(n, &edges).unwrap()
}

/// Calls `f` on every element of the Cartesian product of `choices`; stops
/// early when `f` returns `true`.
pub fn scan_product(choices: &[Vec<usize>], f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(choices: &[Vec<usize>], cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == choices.len() {
            return f(cur);
        }
        for &x in &choices[cur.len()] {
            cur.push(x);
            if go(choices, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(choices, &mut Vec::with_capacity(choices.len()), f)
}

/// Full scan over one vertex per list, pairwise non-adjacent in `H`.
pub fn scan_transversal(c: &Cover) -> Option<Transversal> {
    let edges: std::collections::HashSet<(usize, usize)> = c.h_edges().iter().copied().collect();
    let mut found = None;
    scan_product(c.lists(), &mut |pick| {
        let ok = (0..pick.len()).all(|a| {
            (a + 1..pick.len()).all(|b| {
                let (x, y) = (pick[a].min(pick[b]), pick[a].max(pick[b]));
                !edges.contains(&(x, y))
            })
        });
        if ok {
            found = Some(Transversal(pick.to_vec()));
        }
        ok
    })
    .then(|| found.unwrap())
}

pub fn all_transversals(c: &Cover) -> Vec<Transversal> {
    let edges: std::collections::HashSet<(usize, usize)> = c.h_edges().iter().copied().collect();
    let mut out = Vec::new();
    scan_product(c.lists(), &mut |pick| {
        let ok = (0..pick.len()).all(|a| {
            (a + 1..pick.len()).all(|b| !edges.contains(&(pick[a].min(pick[b]), pick[a].max(pick[b]))))
        });
        if ok {
            out.push(Transversal(pick.to_vec()));
        }
        false
    });
    out
}

pub fn is_proper(g: &Graph, coloring: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v])
}

/// Full scan over colorings drawn from the lists.
pub fn brute_list_colorable(g: &Graph, lists: &[Vec<usize>]) -> bool {
    scan_product(lists, &mut |c| is_proper(g, c))
}

/// Chromatic number by scanning set partitions (restricted growth strings).
pub fn brute_chromatic(g: &Graph) -> usize {
    fn go(g: &Graph, k: usize, cur: &mut Vec<usize>, used: usize) -> bool {
        let u = cur.len();
        if u == g.n() {
            return true;
        }
        for c in 0..(used + 1).min(k) {
            if g.neighbors(u).iter().any(|&w| w < u && cur[w] == c) {
                continue;
            }
            cur.push(c);
            if go(g, k, cur, used.max(c + 1)) {
                return true;
            }
            cur.pop();
        }
        false
    }
    (0..=g.n()).find(|&k| go(g, k, &mut Vec::new(), 0)).unwrap()
}

/// A random cover with the given list sizes: ids are shuffled across lists
/// and each base edge gets a random matching, of maximum size when `full`.
pub fn random_cover(rng: &mut ChaCha8Rng, g: &Graph, sizes: &[usize], full: bool) -> Cover {
    let total: usize = sizes.iter().sum();
    let mut ids: Vec<usize> = (0..total).collect();
    ids.shuffle(rng);
    let mut lists = Vec::with_capacity(g.n());
    let mut at = 0;
    for &s in sizes {
        let mut list = ids[at..at + s].to_vec();
        list.sort_unstable();
        lists.push(list);
        at += s;
    }
    let mut h_edges = Vec::new();
    for &(u, v) in g.edges() {
        let mut a = lists[u].clone();
        let mut b = lists[v].clone();
        a.shuffle(rng);
        b.shuffle(rng);
        let most = a.len().min(b.len());
        let size = if full { most } else { rng.random_range(0..=most) };
        h_edges.extend(a.into_iter().zip(b).take(size));
    }
    Cover::new(g.clone(), lists, &h_edges).unwrap()
}

/// The same cover with ids permuted inside each list.
pub fn relabel_within_lists(rng: &mut ChaCha8Rng, c: &Cover) -> Cover {
    let mut map = vec![0; c.len()];
    for list in c.lists() {
        let mut image = list.clone();
        image.shuffle(rng);
        for (&x, &y) in list.iter().zip(&image) {
            map[x] = y;
        }
    }
    let edges: Vec<(usize, usize)> = c.h_edges().iter().map(|&(x, y)| (map[x], map[y])).collect();
    Cover::new(c.base().clone(), c.lists().to_vec(), &edges).unwrap()
}
