#![allow(dead_code)]

//! Test support: random networks and independent oracles that work on a
//! dense weight matrix rather than on the library's adjacency lists.

use corekit::{BuildOptions, Network, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Undirected G(n, p) with integer weights in `1..=max_weight`.
pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64, max_weight: u32) -> Network<f64> {
    let mut lines = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                lines.push((u, v, rng.gen_range(1..=max_weight) as f64));
            }
        }
    }
    Network::from_indexed(labels(n), &lines, false, BuildOptions::default()).unwrap()
}

/// Directed G(n, p): each ordered pair independently.
pub fn gnp_directed(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Network<f64> {
    let mut lines = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                lines.push((u, v, 1.0));
            }
        }
    }
    Network::from_indexed(labels(n), &lines, true, BuildOptions::default()).unwrap()
}

pub fn complete(n: usize) -> Network<f64> {
    let lines: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v, 1.0)))
        .collect();
    Network::from_indexed(labels(n), &lines, false, BuildOptions::default()).unwrap()
}

pub fn six() -> Network<f64> {
    corekit::build_network(
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("a", "b", 4.0),
            ("b", "c", 1.0),
            ("c", "d", 3.0),
            ("b", "e", 1.0),
            ("e", "f", 3.0),
        ],
        false,
        BuildOptions::default(),
    )
    .unwrap()
}

pub fn ids(vs: &[VertexId]) -> Vec<usize> {
    vs.iter().map(|v| v.0).collect()
}

/// Undirected weight matrix view of a network.
pub struct Dense {
    pub n: usize,
    pub w: Vec<Vec<Option<f64>>>,
}

#[derive(Clone, Copy, Debug)]
pub enum Oracle {
    Degree,
    WeightSum,
    WeightMax,
    Triangles,
    Average,
}

impl Dense {
    pub fn of(net: &Network<f64>) -> Self {
        let n = net.n();
        let mut w = vec![vec![None; n]; n];
        for l in net.lines() {
            let (u, v) = (l.source.0, l.target.0);
            let add = |x: Option<f64>| Some(x.unwrap_or(0.0) + l.weight);
            w[u][v] = add(w[u][v]);
            w[v][u] = add(w[v][u]);
        }
        Dense { n, w }
    }

    /// Closed-form value of `kind` at `v` for the vertex set `set`.
    pub fn value(&self, kind: Oracle, v: usize, set: &[bool]) -> f64 {
        let nbrs: Vec<(usize, f64)> = (0..self.n)
            .filter(|&u| set[u])
            .filter_map(|u| self.w[v][u].map(|w| (u, w)))
            .collect();
        match kind {
            Oracle::Degree => nbrs.len() as f64,
            Oracle::WeightSum => nbrs.iter().map(|x| x.1).fold(0.0, |a, b| a + b),
            Oracle::WeightMax => nbrs.iter().map(|x| x.1).fold(0.0, f64::max),
            Oracle::Average => {
                if nbrs.is_empty() {
                    0.0
                } else {
                    nbrs.iter().map(|x| x.1).sum::<f64>() / nbrs.len() as f64
                }
            }
            Oracle::Triangles => {
                let mut count = 0;
                for (i, &(a, _)) in nbrs.iter().enumerate() {
                    for &(b, _) in &nbrs[i + 1..] {
                        count += self.w[a][b].is_some() as usize;
                    }
                }
                count as f64
            }
        }
    }

    /// Every inclusion-maximal set whose members all reach `t`, by scanning
    /// all 2^n subsets.
    pub fn maximal_level_sets(&self, kind: Oracle, t: f64) -> Vec<Vec<usize>> {
        let n = self.n;
        assert!(n <= 16);
        let good: Vec<u32> = (0..1u32 << n)
            .filter(|&m| {
                let set: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
                (0..n).filter(|&i| set[i]).all(|i| self.value(kind, i, &set) >= t)
            })
            .collect();
        good.iter()
            .filter(|&&m| !good.iter().any(|&o| o != m && o & m == m))
            .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    }

    /// All maximal cliques (Bron–Kerbosch without pivoting).
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        fn go(d: &Dense, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if p.is_empty() && x.is_empty() {
                let mut c = r.clone();
                c.sort();
                out.push(c);
                return;
            }
            let (mut p, mut x) = (p, x);
            while let Some(v) = p.pop() {
                let adj = |u: &usize| d.w[v][*u].is_some();
                r.push(v);
                go(d, r, p.iter().copied().filter(adj).collect(), x.iter().copied().filter(adj).collect(), out);
                r.pop();
                x.push(v);
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), (0..self.n).collect(), Vec::new(), &mut out);
        out
    }
}

/// Degree core numbers by the definition: the k-core is what remains after
/// repeatedly deleting any vertex of degree < k, for k = 0, 1, 2, ...
pub fn naive_degree_cores(d: &Dense) -> Vec<usize> {
    let n = d.n;
    let mut core = vec![0; n];
    for k in 1..=n {
        let mut alive = vec![true; n];
        loop {
            let victim = (0..n).find(|&v| alive[v] && d.value(Oracle::Degree, v, &alive) < k as f64);
            match victim {
                Some(v) => alive[v] = false,
                None => break,
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
    }
    core
}
