use std::collections::VecDeque;

use super::{Death, PersistenceDiagram};

/// Exact bottleneck distance between the dimension-`dim` parts of two
/// diagrams under the L∞ ground metric, with matches to the diagonal allowed.
///
/// Essential intervals are matched among themselves by birth; if their counts
/// differ the distance is infinite.
pub fn bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram, dim: usize) -> f64 {
    let split = |d: &PersistenceDiagram| {
        let mut finite = Vec::new();
        let mut essential = Vec::new();
        for iv in d.in_dim(dim) {
            match iv.death {
                Death::Finite(x) => finite.push((iv.birth, x)),
                Death::Infinite => essential.push(iv.birth),
            }
        }
        (finite, essential)
    };
    let (fa, mut ea) = split(a);
    let (fb, mut eb) = split(b);
    if ea.len() != eb.len() {
        return f64::INFINITY;
    }
    ea.sort_unstable();
    eb.sort_unstable();
    let essential = ea
        .iter()
        .zip(&eb)
        .map(|(x, y)| x.abs_diff(*y))
        .max()
        .unwrap_or(0) as f64;
    let finite = finite_bottleneck_doubled(&fa, &fb) as f64 / 2.0;
    essential.max(finite)
}

/// Twice the bottleneck distance between two finite point sets; doubling
/// keeps every candidate value an integer.
fn finite_bottleneck_doubled(a: &[(i64, i64)], b: &[(i64, i64)]) -> u64 {
    let linf2 = |p: (i64, i64), q: (i64, i64)| 2 * p.0.abs_diff(q.0).max(p.1.abs_diff(q.1));
    let diag2 = |p: (i64, i64)| p.1.abs_diff(p.0);

    let mut candidates: Vec<u64> = vec![0];
    candidates.extend(a.iter().map(|&p| diag2(p)));
    candidates.extend(b.iter().map(|&p| diag2(p)));
    for &p in a {
        for &q in b {
            candidates.push(linf2(p, q));
        }
    }
    candidates.sort_unstable();
    candidates.dedup();

    let feasible = |t: u64| -> bool {
        let (n, m) = (a.len(), b.len());
        // left: a[0..n], diagonal images of b[n..n+m]
        // right: b[0..m], diagonal images of a[m..m+n]
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m];
        for (i, &p) in a.iter().enumerate() {
            for (j, &q) in b.iter().enumerate() {
                if linf2(p, q) <= t {
                    adj[i].push(j);
                }
            }
            if diag2(p) <= t {
                adj[i].push(m + i);
            }
        }
        for (j, &q) in b.iter().enumerate() {
            if diag2(q) <= t {
                adj[n + j].push(j);
            }
            adj[n + j].extend(m..m + n);
        }
        hopcroft_karp(&adj, n + m) == n + m
    };

    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Maximum matching size of a bipartite graph given as left adjacency lists
/// over `right` right-hand vertices.
fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> usize {
    const NONE: usize = usize::MAX;
    let left = adj.len();
    let mut match_l = vec![NONE; left];
    let mut match_r = vec![NONE; right];
    let mut dist = vec![0usize; left];
    let mut size = 0;
    loop {
        // layer free left vertices
        let mut queue = VecDeque::new();
        for u in 0..left {
            if match_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return size;
        }
        let mut it = vec![0usize; left];
        for u in 0..left {
            if match_l[u] == NONE && augment(u, adj, &mut match_l, &mut match_r, &mut dist, &mut it)
            {
                size += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[u] < adj[u].len() {
        let v = adj[u][it[u]];
        it[u] += 1;
        let w = match_r[v];
        if w == usize::MAX
            || (dist[w] == dist[u] + 1 && augment(w, adj, match_l, match_r, dist, it))
        {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
