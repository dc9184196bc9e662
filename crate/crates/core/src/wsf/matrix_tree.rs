use crate::error::{Error, Result};

use super::graph::{Vertex, WiredBallGraph, ROOT};

/// Number of spanning trees of the wired multigraph, counting parallel
/// edges separately (Kirchhoff's theorem with the root row removed,
/// Bareiss elimination in exact integers).
pub fn spanning_tree_count(graph: &WiredBallGraph) -> Result<u128> {
    let n = graph.num_inner();
    let mut a = vec![vec![0i128; n]; n];
    for u in 0..n {
        for &w in graph.moves(u as Vertex) {
            if w as usize == u {
                continue;
            }
            a[u][u] += 1;
            if w != ROOT {
                a[u][w as usize] -= 1;
            }
        }
    }
    let det = bareiss_determinant(a)?;
    u128::try_from(det).map_err(|_| Error::Parameter("negative tree count".into()))
}

/// Every spanning tree of the wired graph as a parent vector (oriented
/// towards the root), with the number of parallel-edge choices giving it.
/// Fails when more than `limit` parent assignments would be tried.
pub fn enumerate_spanning_trees(graph: &WiredBallGraph, limit: u64) -> Result<Vec<(Vec<Vertex>, u128)>> {
    let n = graph.num_inner();
    let mut choices: Vec<Vec<(Vertex, u128)>> = Vec::with_capacity(n);
    let mut total = 1u64;
    for v in 0..n as Vertex {
        let mut targets: Vec<Vertex> = graph.moves(v).iter().copied().filter(|&w| w != v).collect();
        targets.sort_unstable();
        targets.dedup();
        total = total.saturating_mul(targets.len() as u64);
        if total > limit {
            return Err(Error::Parameter(format!("more than {limit} parent assignments")));
        }
        choices.push(
            targets
                .into_iter()
                .map(|w| (w, graph.multiplicity(v, w) as u128))
                .collect(),
        );
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    loop {
        let parent: Vec<Vertex> = (0..n).map(|v| choices[v][pick[v]].0).collect();
        if reaches_root(&parent) {
            let weight = (0..n).map(|v| choices[v][pick[v]].1).product();
            out.push((parent, weight));
        }
        let mut v = 0;
        loop {
            if v == n {
                return Ok(out);
            }
            pick[v] += 1;
            if pick[v] < choices[v].len() {
                break;
            }
            pick[v] = 0;
            v += 1;
        }
    }
}

fn reaches_root(parent: &[Vertex]) -> bool {
    (0..parent.len()).all(|start| {
        let mut cur = start as Vertex;
        for _ in 0..=parent.len() {
            if cur == ROOT {
                return true;
            }
            cur = parent[cur as usize];
        }
        false
    })
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn bareiss_determinant(mut a: Vec<Vec<i128>>) -> Result<i128> {
    let n = a.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or_else(|| Error::Parameter("determinant overflow".into()))?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}
