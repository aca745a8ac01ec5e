//! Earth mover's distance between two mode sets.
//!
//! Each estimated mode supplies `1/k̃` and each true mode demands `1/k`; moving
//! unit mass costs `|ω - ω̃|/N + |c - c̃|`. Masses are scaled by `k·k̃/gcd(k, k̃)` to
//! integers and the transportation problem is solved exactly with successive
//! shortest paths.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::signal::{Mode, SparseSpectrum};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flow {
    /// Index into the estimate's modes.
    pub source: usize,
    /// Index into the truth's modes.
    pub target: usize,
    pub mass: f64,
    pub unit_cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmdAssignment {
    pub flows: Vec<Flow>,
    pub total: f64,
}

/// Ground distance between two modes of bandwidth `n`.
pub fn mode_distance(a: &Mode, b: &Mode, n: u64) -> f64 {
    let df = (a.frequency.value() - b.frequency.value()).unsigned_abs() as f64;
    df / n as f64 + (a.coefficient - b.coefficient).norm()
}

fn check(estimate: &SparseSpectrum, truth: &SparseSpectrum) -> Result<()> {
    if estimate.bandwidth() != truth.bandwidth() {
        return Err(Error::BandwidthMismatch {
            source_n: estimate.bandwidth(),
            config_n: truth.bandwidth(),
        });
    }
    if estimate.is_empty() || truth.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    Ok(())
}

pub fn emd1(estimate: &SparseSpectrum, truth: &SparseSpectrum) -> Result<f64> {
    emd1_assignment(estimate, truth).map(|a| a.total)
}

/// Optimal transport plan; flows are listed by source then target index.
pub fn emd1_assignment(estimate: &SparseSpectrum, truth: &SparseSpectrum) -> Result<EmdAssignment> {
    check(estimate, truth)?;
    let n = truth.bandwidth();
    let (a, b) = (estimate.modes(), truth.modes());
    let cost: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| mode_distance(x, y, n)).collect())
        .collect();
    let g = gcd(a.len(), b.len());
    let supply = vec![(b.len() / g) as i64; a.len()];
    let demand = vec![(a.len() / g) as i64; b.len()];
    let flow = transport(&cost, &supply, &demand);
    let scale = g as f64 / (a.len() as f64 * b.len() as f64);
    let mut flows = Vec::new();
    let mut total = 0.0;
    for (i, row) in flow.iter().enumerate() {
        for (j, &units) in row.iter().enumerate() {
            if units > 0 {
                let mass = units as f64 * scale;
                total += mass * cost[i][j];
                flows.push(Flow {
                    source: i,
                    target: j,
                    mass,
                    unit_cost: cost[i][j],
                });
            }
        }
    }
    Ok(EmdAssignment { flows, total })
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Minimum over all one-to-one matchings, by enumeration. Requires equal
/// sizes of at most 8.
pub fn emd1_brute_force(estimate: &SparseSpectrum, truth: &SparseSpectrum) -> Result<f64> {
    check(estimate, truth)?;
    let k = truth.len();
    if estimate.len() != k || k > 8 {
        return Err(Error::InvalidConfig(
            "brute force needs equal sizes of at most 8",
        ));
    }
    let n = truth.bandwidth();
    let (a, b) = (estimate.modes(), truth.modes());
    let mut perm: Vec<usize> = (0..k).collect();
    let score = |perm: &[usize]| -> f64 {
        perm.iter()
            .enumerate()
            .map(|(i, &j)| mode_distance(&a[i], &b[j], n))
            .sum::<f64>()
    };
    // Heap's algorithm
    let mut best = score(&perm);
    let mut c = vec![0usize; k];
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(score(&perm));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best / k as f64)
}

/// Integer transportation by successive shortest paths with Johnson
/// potentials. Returns units shipped from each source to each sink.
fn transport(cost: &[Vec<f64>], supply: &[i64], demand: &[i64]) -> Vec<Vec<i64>> {
    let (m, n) = (supply.len(), demand.len());
    let mut flow = vec![vec![0i64; n]; m];
    let mut left = supply.to_vec();
    let mut need = demand.to_vec();
    // potentials: sources 0..m, sinks m..m+n
    let mut pot = vec![0.0f64; m + n];
    // column minima give every sink a zero reduced-cost arc from the start
    for j in 0..n {
        pot[m + j] = (0..m).map(|i| cost[i][j]).fold(f64::INFINITY, f64::min);
    }
    let inf = f64::INFINITY;
    let mut dist = vec![inf; m + n];
    let mut prev = vec![usize::MAX; m + n];
    let mut done = vec![false; m + n];

    while left.iter().any(|&s| s > 0) {
        dist.iter_mut().for_each(|d| *d = inf);
        prev.iter_mut().for_each(|p| *p = usize::MAX);
        done.iter_mut().for_each(|d| *d = false);
        for i in 0..m {
            if left[i] > 0 {
                dist[i] = 0.0;
            }
        }
        // dense Dijkstra over the residual bipartite graph, stopped at the
        // first sink that still has demand
        let sink = loop {
            let mut u = usize::MAX;
            let mut best = inf;
            // sinks first, so a zero-cost sink beats the remaining sources
            for v in (m..m + n).chain(0..m) {
                if !done[v] && dist[v] < best {
                    best = dist[v];
                    u = v;
                }
            }
            assert!(
                u != usize::MAX,
                "balanced problem always has an augmenting path"
            );
            done[u] = true;
            if u < m {
                for (j, &c) in cost[u].iter().enumerate() {
                    let v = m + j;
                    let rc = (c + pot[u] - pot[v]).max(0.0);
                    if dist[u] + rc < dist[v] {
                        dist[v] = dist[u] + rc;
                        prev[v] = u;
                    }
                }
            } else {
                let j = u - m;
                if need[j] > 0 {
                    break j;
                }
                for i in 0..m {
                    if flow[i][j] > 0 {
                        let rc = (-cost[i][j] + pot[u] - pot[i]).max(0.0);
                        if dist[u] + rc < dist[i] {
                            dist[i] = dist[u] + rc;
                            prev[i] = u;
                        }
                    }
                }
            }
        };
        // capping at the sink distance keeps every reduced cost nonnegative
        let reach = dist[m + sink];
        for v in 0..m + n {
            pot[v] += dist[v].min(reach);
        }

        let mut path = VecDeque::new();
        let mut v = m + sink;
        while prev[v] != usize::MAX {
            path.push_front((prev[v], v));
            v = prev[v];
        }
        let origin = v;
        let mut amount = left[origin].min(need[sink]);
        for &(u, w) in &path {
            if u >= m {
                amount = amount.min(flow[w][u - m]);
            }
        }
        for &(u, w) in &path {
            if u < m {
                flow[u][w - m] += amount;
            } else {
                flow[w][u - m] -= amount;
            }
        }
        left[origin] -= amount;
        need[sink] -= amount;
    }
    flow
}
