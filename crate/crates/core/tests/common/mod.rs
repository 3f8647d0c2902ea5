#![allow(dead_code)]

use std::collections::HashMap;

use hlouvain_core::hypercore::Hypergraph;
use rand::Rng;
use statrs::function::gamma::ln_gamma;

pub type Edges = Vec<(Vec<usize>, f64)>;

/// Random multiset edges of size 2..=5 on `n` nodes.
pub fn random_edges<R: Rng>(rng: &mut R, n: usize, m: usize, weighted: bool) -> Edges {
    (0..m)
        .map(|_| {
            let d = rng.gen_range(2..=5);
            let members = (0..d).map(|_| rng.gen_range(0..n)).collect();
            let w = if weighted { rng.gen_range(0.5..3.0) } else { 1.0 };
            (members, w)
        })
        .collect()
}

pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Hypergraph {
    let weighted = rng.gen_bool(0.5);
    Hypergraph::from_edges(n, random_edges(rng, n, m, weighted)).unwrap()
}

pub fn random_labels<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..k)).collect()
}

fn choose(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Hypergraph modularity written term by term: for every size `d`, every
/// majority count `c` and every part `A_i`, the number of size-`d` edges with
/// exactly `c` members in `A_i` minus `|E_d|·P(Bin(d, vol(A_i)/vol(V)) = c)`,
/// weighted by `eta(c, d)` and divided by `|E|`. Weights replace counts.
pub fn literal_q_h(edges: &Edges, n: usize, labels: &[usize], eta: &dyn Fn(usize, usize) -> f64, gamma: f64) -> f64 {
    let edges: Vec<&(Vec<usize>, f64)> = edges.iter().filter(|(m, _)| m.len() >= 2).collect();
    let mut degree = vec![0.0; n];
    for (members, _) in &edges {
        for &v in members {
            degree[v] += 1.0;
        }
    }
    let vol_total: f64 = degree.iter().sum();
    let total: f64 = edges.iter().map(|(_, w)| w).sum();
    let parts: Vec<usize> = {
        let mut p = labels.to_vec();
        p.sort_unstable();
        p.dedup();
        p
    };
    let d_max = edges.iter().map(|(m, _)| m.len()).max().unwrap_or(0);
    let mut q = 0.0;
    for d in 2..=d_max {
        let e_d: f64 = edges.iter().filter(|(m, _)| m.len() == d).map(|(_, w)| w).sum();
        for c in d / 2 + 1..=d {
            let mut inner = 0.0;
            for &part in &parts {
                let e_cd: f64 = edges
                    .iter()
                    .filter(|(m, _)| m.len() == d && m.iter().filter(|&&v| labels[v] == part).count() == c)
                    .map(|(_, w)| w)
                    .sum();
                let vol: f64 = (0..n).filter(|&v| labels[v] == part).map(|v| degree[v]).sum();
                let p = vol / vol_total;
                let prob = choose(d, c) * p.powi(c as i32) * (1.0 - p).powi((d - c) as i32);
                inner += e_cd - gamma * e_d * prob;
            }
            q += eta(c, d) * inner / total;
        }
    }
    q
}

/// Graph modularity `(1/2W) Σ_ij (A_ij − γ k_i k_j / 2W) δ(c_i, c_j)` on the
/// 2-section, with loops counted twice on the diagonal.
pub fn literal_q_g(edges: &Edges, n: usize, labels: &[usize], gamma: f64, degree_preserving: bool) -> f64 {
    let mut a = vec![vec![0.0; n]; n];
    for (members, w) in edges.iter().filter(|(m, _)| m.len() >= 2) {
        let d = members.len();
        let share = if degree_preserving {
            w / (d - 1) as f64
        } else {
            w / choose(d, 2)
        };
        for i in 0..d {
            for j in i + 1..d {
                let (u, v) = (members[i], members[j]);
                if u == v {
                    a[u][u] += 2.0 * share;
                } else {
                    a[u][v] += share;
                    a[v][u] += share;
                }
            }
        }
    }
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_w: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - gamma * k[i] * k[j] / two_w;
            }
        }
    }
    q / two_w
}

/// Every set partition of `0..n` as restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0; n];
    fn rec(i: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        for label in 0..=max + 1 {
            current[i] = label;
            rec(i + 1, max.max(label), current, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    rec(1, 0, &mut current, &mut out);
    out
}

/// AMI with arithmetic-mean normalization, following the published
/// expected-MI sum with gamma-function factorials.
pub fn literal_ami(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let nf = n as f64;
    let mut rows: HashMap<usize, f64> = HashMap::new();
    let mut cols: HashMap<usize, f64> = HashMap::new();
    let mut cells: HashMap<(usize, usize), f64> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *rows.entry(x).or_default() += 1.0;
        *cols.entry(y).or_default() += 1.0;
        *cells.entry((x, y)).or_default() += 1.0;
    }
    let h = |m: &HashMap<usize, f64>| -m.values().map(|&c| c / nf * (c / nf).ln()).sum::<f64>();
    let (h1, h2) = (h(&rows), h(&cols));
    let mi: f64 = cells
        .iter()
        .map(|(&(x, y), &c)| c / nf * (nf * c / (rows[&x] * cols[&y])).ln())
        .sum();
    let lf = |k: f64| ln_gamma(k + 1.0);
    let mut emi = 0.0;
    for &ai in rows.values() {
        for &bj in cols.values() {
            let lo = (ai + bj - nf).max(1.0) as usize;
            let hi = ai.min(bj) as usize;
            for nij in lo..=hi {
                let x = nij as f64;
                let log_p = lf(ai) + lf(bj) + lf(nf - ai) + lf(nf - bj)
                    - lf(nf)
                    - lf(x)
                    - lf(ai - x)
                    - lf(bj - x)
                    - lf(nf - ai - bj + x);
                emi += x / nf * (nf * x / (ai * bj)).ln() * log_p.exp();
            }
        }
    }
    (mi - emi) / (0.5 * (h1 + h2) - emi)
}

pub fn strict_eta(c: usize, d: usize) -> f64 {
    if c == d {
        1.0
    } else {
        0.0
    }
}

pub fn tau_eta(tau: f64) -> impl Fn(usize, usize) -> f64 {
    move |c, d| (c as f64 / d as f64).powf(tau)
}
