//! Analyses built on core numbers: segmentation by threshold intervals,
//! core-ordered greedy coloring, and maximum clique search restricted to cores.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::engine::{degree_cores_linear, CoreHierarchy};
use crate::error::{Error, Result};
use crate::graph::{DegreeMode, Network, VertexId};
use crate::scalar::Scalar;

/// Strictly increasing finite thresholds `t_1 < t_2 < … < t_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Thresholds<T>(Vec<T>);

impl<T: Scalar> Thresholds<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.iter().all(|t| t.is_finite()) && values.windows(2).all(|w| w[0] < w[1]) {
            Ok(Thresholds(values))
        } else {
            Err(Error::InvalidThresholds)
        }
    }

    /// `t_k = first · ratio^(k−1)` for `k = 1..=count`.
    pub fn geometric(first: T, ratio: T, count: usize) -> Result<Self> {
        let mut values = Vec::with_capacity(count);
        let mut t = first;
        for _ in 0..count {
            values.push(t);
            t = t * ratio;
        }
        Self::new(values)
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }
}

impl<T: Scalar> FromStr for Thresholds<T> {
    type Err = String;

    /// `geometric:<t1>,<ratio>,<count>` or `list:<v1>,<v2>,...`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| format!("thresholds `{s}`: expected geometric:<t1>,<ratio>,<count> or list:<v1>,..."))?;
        let parse = |tok: &str| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| format!("thresholds: malformed number `{tok}`"))
        };
        let parts: Vec<&str> = args.split(',').collect();
        let result = match kind {
            "geometric" => {
                let [first, ratio, count] = parts.as_slice() else {
                    return Err("thresholds: geometric takes <t1>,<ratio>,<count>".into());
                };
                let count: usize = count
                    .trim()
                    .parse()
                    .map_err(|_| format!("thresholds: malformed count `{count}`"))?;
                Thresholds::geometric(parse(first)?, parse(ratio)?, count)
            }
            "list" => Thresholds::new(parts.iter().map(|p| parse(p)).collect::<Result<_, _>>()?),
            other => return Err(format!("thresholds: unknown kind `{other}`")),
        };
        result.map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentRow<T> {
    pub k: usize,
    pub threshold: T,
    pub count: usize,
}

/// Row `k` counts vertices with core number in `(t_{k−1}, t_k]`.
///
/// `t_0` is 0 when `t_1 > 0` and −∞ otherwise, so with positive thresholds
/// vertices with core number 0 (isolated ones) fall into `at_or_below_start`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentationTable<T> {
    pub start: T,
    pub rows: Vec<SegmentRow<T>>,
    /// Core number `≤ t_0`.
    pub at_or_below_start: usize,
    /// Core number `> t_K`.
    pub above_last: usize,
}

impl<T: Scalar> SegmentationTable<T> {
    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.count).sum::<usize>() + self.at_or_below_start + self.above_last
    }

    /// Aligned columns `k`, `t`, `n`.
    pub fn render_text(&self) -> String {
        let cells: Vec<[String; 3]> = self
            .rows
            .iter()
            .map(|r| [r.k.to_string(), r.threshold.to_string(), r.count.to_string()])
            .collect();
        let header = ["k".to_string(), "t".to_string(), "n".to_string()];
        let mut width = [1usize; 3];
        for row in cells.iter().chain(std::iter::once(&header)) {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&header).chain(cells.iter()) {
            let _ = writeln!(
                out,
                "{:>w0$}  {:>w1$}  {:>w2$}",
                row[0],
                row[1],
                row[2],
                w0 = width[0],
                w1 = width[1],
                w2 = width[2]
            );
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("k,t,n\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", r.k, r.threshold, r.count);
        }
        out
    }
}

pub fn segmentation<T: Scalar>(h: &CoreHierarchy<T>, thresholds: &Thresholds<T>) -> SegmentationTable<T> {
    let ts = thresholds.values();
    let start = match ts.first() {
        Some(&t1) if t1 > T::zero() => T::zero(),
        _ => T::neg_infinity(),
    };
    let mut counts = vec![0usize; ts.len()];
    let (mut below, mut above) = (0, 0);
    for &c in h.core_numbers() {
        if c <= start {
            below += 1;
            continue;
        }
        // first k with c ≤ t_k
        let k = ts.partition_point(|&t| t < c);
        match counts.get_mut(k) {
            Some(slot) => *slot += 1,
            None => above += 1,
        }
    }
    SegmentationTable {
        start,
        rows: ts
            .iter()
            .zip(counts)
            .enumerate()
            .map(|(i, (&threshold, count))| SegmentRow { k: i + 1, threshold, count })
            .collect(),
        at_or_below_start: below,
        above_last: above,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub color: Vec<usize>,
    pub colors_used: usize,
}

impl Coloring {
    pub fn is_proper<T: Scalar>(&self, net: &Network<T>) -> bool {
        net.lines()
            .iter()
            .all(|l| self.color[l.source.0] != self.color[l.target.0])
    }
}

/// Sequential coloring in order of descending core number; each vertex takes
/// the smallest color not used by an already colored neighbor.
///
/// Vertices sharing a core number are taken in reverse peeling order, so each
/// vertex has at most `core(G)` colored neighbors when its turn comes and at
/// most `1 + core(G)` colors are used. Vertices missing from the removal order
/// follow, by descending core number, then descending degree, then id.
pub fn greedy_color_by_core<T: Scalar>(net: &Network<T>, h: &CoreHierarchy<T>) -> Result<Coloring> {
    if net.is_directed() {
        return Err(Error::DirectedNetwork);
    }
    let n = net.n();
    let mut peel_rank = vec![usize::MAX; n];
    for (i, v) in h.removal_order().iter().enumerate() {
        peel_rank[v.0] = i;
    }
    let mut order: Vec<VertexId> = net.vertices().collect();
    order.sort_by(|&a, &b| {
        h.core_number(b)
            .partial_cmp(&h.core_number(a))
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| match (peel_rank[a.0], peel_rank[b.0]) {
                (usize::MAX, usize::MAX) => std::cmp::Ordering::Equal,
                (ra, rb) if ra == usize::MAX || rb == usize::MAX => ra.cmp(&rb),
                (ra, rb) => rb.cmp(&ra),
            })
            .then(net.degree(b).cmp(&net.degree(a)))
            .then(a.cmp(&b))
    });

    const UNCOLORED: usize = usize::MAX;
    let mut color = vec![UNCOLORED; net.n()];
    let mut taken: Vec<usize> = Vec::new(); // taken[c] == stamp when c is blocked
    let mut colors_used = 0;
    for (stamp, &v) in order.iter().enumerate() {
        for l in net.links(v) {
            let c = color[l.to.0];
            if c != UNCOLORED {
                taken[c] = stamp + 1;
            }
        }
        let c = (0..).find(|&c| taken.get(c).is_none_or(|&s| s != stamp + 1)).expect("free color");
        if c == taken.len() {
            taken.push(0);
        }
        color[v.0] = c;
        colors_used = colors_used.max(c + 1);
    }
    Ok(Coloring { color, colors_used })
}

/// Branch nodes allowed in [`max_clique_localized`].
pub const DEFAULT_CLIQUE_BUDGET: u64 = 50_000_000;

/// Maximum clique, searching only inside cores: a clique of size `k` lies in
/// the `(k−1)`-core. `size_limit_hint` caps the largest size tried.
pub fn max_clique_localized<T: Scalar>(net: &Network<T>, size_limit_hint: Option<usize>) -> Result<Vec<VertexId>> {
    max_clique_localized_with_budget(net, size_limit_hint, DEFAULT_CLIQUE_BUDGET)
}

pub fn max_clique_localized_with_budget<T: Scalar>(
    net: &Network<T>,
    size_limit_hint: Option<usize>,
    budget: u64,
) -> Result<Vec<VertexId>> {
    if net.is_directed() {
        return Err(Error::DirectedNetwork);
    }
    if net.n() == 0 {
        return Ok(Vec::new());
    }
    let cores = degree_cores_linear(net, DegreeMode::Total)?;
    let core: Vec<usize> = cores.integral().expect("degree cores are whole").into_iter().map(|c| c as usize).collect();
    let mut rank = vec![0usize; net.n()];
    for (i, v) in cores.removal_order().iter().enumerate() {
        rank[v.0] = i;
    }
    let degeneracy = core.iter().copied().max().unwrap_or(0);
    let upper = size_limit_hint.map_or(degeneracy + 1, |hint| hint.clamp(1, degeneracy + 1));

    let mut search = CliqueSearch { net, budget, spent: 0 };
    for k in (1..=upper).rev() {
        // each clique is found from its member removed first; the others are
        // among that member's later neighbors, all inside the (k−1)-core
        for v in net.vertices().filter(|v| core[v.0] + 1 >= k) {
            let later: Vec<VertexId> = net
                .links(v)
                .iter()
                .map(|l| l.to)
                .filter(|u| rank[u.0] > rank[v.0] && core[u.0] + 1 >= k)
                .collect();
            if later.len() + 1 < k {
                continue;
            }
            let mut chosen = vec![v];
            if search.extend(&mut chosen, &later, k)? {
                chosen.sort();
                return Ok(chosen);
            }
        }
    }
    unreachable!("a single vertex is a clique of size 1")
}

struct CliqueSearch<'a, T> {
    net: &'a Network<T>,
    budget: u64,
    spent: u64,
}

impl<T: Scalar> CliqueSearch<'_, T> {
    /// Try to grow `chosen` to `target` vertices from `candidates`, all of
    /// which are adjacent to every chosen vertex.
    fn extend(&mut self, chosen: &mut Vec<VertexId>, candidates: &[VertexId], target: usize) -> Result<bool> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        if chosen.len() >= target {
            return Ok(true);
        }
        for (i, &v) in candidates.iter().enumerate() {
            if chosen.len() + candidates.len() - i < target {
                break;
            }
            let next: Vec<VertexId> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| self.net.has_link(v, u))
                .collect();
            chosen.push(v);
            if self.extend(chosen, &next, target)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}
