//! Network model: a simple graph (optionally directed) with real line weights.
//!
//! Vertices are dense ids `0..n`. Every vertex keeps a sorted list of its
//! distinct neighbors ([`Link`]) and, for directed networks, separate in- and
//! out-arc lists so that in/out degrees and weights are O(deg) to read.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

/// A stored line after ingestion (no loops, no parallels).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line<T> {
    pub source: VertexId,
    pub target: VertexId,
    pub directed: bool,
    pub weight: T,
}

/// How a neighbor is attached, seen from the vertex owning the link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Undirected,
    /// owner -> neighbor
    Out,
    /// neighbor -> owner
    In,
    /// arcs in both directions
    Both,
}

impl Orientation {
    #[inline]
    pub fn has_out(self) -> bool {
        !matches!(self, Orientation::In)
    }

    #[inline]
    pub fn has_in(self) -> bool {
        !matches!(self, Orientation::Out)
    }

    fn merge(self, other: Orientation) -> Orientation {
        match (self, other) {
            (a, b) if a == b => a,
            _ => Orientation::Both,
        }
    }
}

/// A distinct neighbor. For a reciprocal pair of arcs `weight` is the sum of
/// both arc weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link<T> {
    pub to: VertexId,
    pub weight: T,
    pub orientation: Orientation,
}

/// Which neighbors to list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Total,
    In,
    Out,
}

/// Which degree to count. `InPlusOut` counts a reciprocal pair twice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    Total,
    In,
    Out,
    InPlusOut,
}

/// Rule for combining parallel lines between the same endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergeRule {
    #[default]
    Sum,
    Max,
    Min,
    First,
}

impl MergeRule {
    fn apply<T: Scalar>(self, acc: T, next: T) -> T {
        match self {
            MergeRule::Sum => acc + next,
            MergeRule::Max => acc.max(next),
            MergeRule::Min => acc.min(next),
            MergeRule::First => acc,
        }
    }
}

impl std::str::FromStr for MergeRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sum" => Ok(MergeRule::Sum),
            "max" => Ok(MergeRule::Max),
            "min" => Ok(MergeRule::Min),
            "first" => Ok(MergeRule::First),
            other => Err(format!("unknown merge rule `{other}` (sum|max|min|first)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    pub merge: MergeRule,
    /// Reject negative weights (needed by the weight-sum property).
    pub require_nonnegative: bool,
}

#[derive(Debug, Clone)]
pub struct Network<T> {
    labels: Vec<String>,
    directed: bool,
    lines: Vec<Line<T>>,
    links: Vec<Vec<Link<T>>>,
    out_arcs: Vec<Vec<(VertexId, T)>>,
    in_arcs: Vec<Vec<(VertexId, T)>>,
    max_degree: usize,
}

/// Build a network from labelled lines.
///
/// Loops are dropped and parallel lines merged with `options.merge`.
pub fn build_network<T: Scalar, S: AsRef<str>>(
    vertex_labels: &[S],
    lines: &[(S, S, T)],
    directed: bool,
    options: BuildOptions,
) -> Result<Network<T>> {
    let labels: Vec<String> = vertex_labels.iter().map(|s| s.as_ref().to_owned()).collect();
    let mut index = HashMap::with_capacity(labels.len());
    for (i, label) in labels.iter().enumerate() {
        if index.insert(label.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    let lookup = |label: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    };
    let mut indexed = Vec::with_capacity(lines.len());
    for (u, v, w) in lines {
        indexed.push((lookup(u.as_ref())?, lookup(v.as_ref())?, *w));
    }
    Network::from_indexed(labels, &indexed, directed, options)
}

impl<T: Scalar> Network<T> {
    /// Build from 0-based index lines. Labels must be unique.
    pub fn from_indexed(
        labels: Vec<String>,
        lines: &[(usize, usize, T)],
        directed: bool,
        options: BuildOptions,
    ) -> Result<Self> {
        let n = labels.len();
        {
            let mut seen = std::collections::HashSet::with_capacity(n);
            for label in &labels {
                if !seen.insert(label.as_str()) {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
            }
        }

        let mut slot: HashMap<(usize, usize), usize> = HashMap::with_capacity(lines.len());
        let mut merged: Vec<Line<T>> = Vec::with_capacity(lines.len());
        for &(u, v, w) in lines {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::InvalidVertex { id, n });
                }
            }
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight {
                    source_label: labels[u].clone(),
                    target_label: labels[v].clone(),
                });
            }
            if options.require_nonnegative && w < T::zero() {
                return Err(Error::NegativeWeight {
                    source_label: labels[u].clone(),
                    target_label: labels[v].clone(),
                    weight: w.to_f64().unwrap_or(f64::NAN),
                });
            }
            if u == v {
                continue;
            }
            let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            match slot.get(&key) {
                Some(&i) => merged[i].weight = options.merge.apply(merged[i].weight, w),
                None => {
                    slot.insert(key, merged.len());
                    merged.push(Line {
                        source: VertexId(u),
                        target: VertexId(v),
                        directed,
                        weight: w,
                    });
                }
            }
        }

        let mut links: Vec<Vec<Link<T>>> = vec![Vec::new(); n];
        let mut out_arcs = vec![Vec::new(); if directed { n } else { 0 }];
        let mut in_arcs = vec![Vec::new(); if directed { n } else { 0 }];
        for line in &merged {
            let (s, t, w) = (line.source, line.target, line.weight);
            if directed {
                out_arcs[s.0].push((t, w));
                in_arcs[t.0].push((s, w));
                links[s.0].push(Link { to: t, weight: w, orientation: Orientation::Out });
                links[t.0].push(Link { to: s, weight: w, orientation: Orientation::In });
            } else {
                links[s.0].push(Link { to: t, weight: w, orientation: Orientation::Undirected });
                links[t.0].push(Link { to: s, weight: w, orientation: Orientation::Undirected });
            }
        }
        for list in &mut links {
            list.sort_by_key(|l| l.to);
            if directed {
                // fold reciprocal arcs into one link
                list.dedup_by(|next, kept| {
                    if next.to == kept.to {
                        kept.weight = kept.weight + next.weight;
                        kept.orientation = kept.orientation.merge(next.orientation);
                        true
                    } else {
                        false
                    }
                });
            }
        }
        for list in out_arcs.iter_mut().chain(in_arcs.iter_mut()) {
            list.sort_by_key(|&(v, _)| v);
        }
        let max_degree = links.iter().map(Vec::len).max().unwrap_or(0);

        Ok(Network {
            labels,
            directed,
            lines: merged,
            links,
            out_arcs,
            in_arcs,
            max_degree,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.lines.len()
    }

    /// Largest number of distinct neighbors of any vertex.
    #[inline]
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).map(VertexId)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label).map(VertexId)
    }

    pub fn lines(&self) -> &[Line<T>] {
        &self.lines
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { id: v.0, n: self.n() })
        }
    }

    /// Distinct neighbors of `v`, sorted by id.
    #[inline]
    pub fn links(&self, v: VertexId) -> &[Link<T>] {
        &self.links[v.0]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.links[v.0].len()
    }

    pub fn degree_in_mode(&self, v: VertexId, mode: DegreeMode) -> usize {
        if !self.directed {
            return self.degree(v);
        }
        match mode {
            DegreeMode::Total => self.degree(v),
            DegreeMode::In => self.in_arcs[v.0].len(),
            DegreeMode::Out => self.out_arcs[v.0].len(),
            DegreeMode::InPlusOut => self.in_arcs[v.0].len() + self.out_arcs[v.0].len(),
        }
    }

    /// Neighbors of `v` with line weights. For undirected networks all
    /// directions coincide.
    pub fn neighbors(&self, v: VertexId, direction: Direction) -> Result<Vec<(VertexId, T)>> {
        self.check_vertex(v)?;
        let list = match (self.directed, direction) {
            (false, _) | (true, Direction::Total) => {
                self.links[v.0].iter().map(|l| (l.to, l.weight)).collect()
            }
            (true, Direction::In) => self.in_arcs[v.0].clone(),
            (true, Direction::Out) => self.out_arcs[v.0].clone(),
        };
        Ok(list)
    }

    /// Weight of the link between `u` and `v` (both arcs summed when directed).
    pub fn link_weight(&self, u: VertexId, v: VertexId) -> Option<T> {
        let list = &self.links[u.0];
        list.binary_search_by_key(&v, |l| l.to).ok().map(|i| list[i].weight)
    }

    pub fn has_link(&self, u: VertexId, v: VertexId) -> bool {
        self.links[u.0].binary_search_by_key(&v, |l| l.to).is_ok()
    }

    pub fn min_weight(&self) -> Option<T> {
        self.lines.iter().map(|l| l.weight).reduce(T::min)
    }
}

/// Alive-vertex mask with incrementally maintained alive-neighbor counts.
///
/// Counts are kept for every vertex, alive or not, so a property can be
/// evaluated for any vertex against the alive set.
#[derive(Debug, Clone)]
pub struct SubsetView {
    alive: Vec<bool>,
    alive_count: usize,
    total: Vec<u32>,
    inward: Vec<u32>,
    outward: Vec<u32>,
}

impl SubsetView {
    pub fn full<T: Scalar>(net: &Network<T>) -> Self {
        let n = net.n();
        let mut view = SubsetView {
            alive: vec![true; n],
            alive_count: n,
            total: vec![0; n],
            inward: vec![0; n],
            outward: vec![0; n],
        };
        for v in net.vertices() {
            view.total[v.0] = net.degree(v) as u32;
            view.inward[v.0] = net.degree_in_mode(v, DegreeMode::In) as u32;
            view.outward[v.0] = net.degree_in_mode(v, DegreeMode::Out) as u32;
        }
        view
    }

    /// View containing exactly `members`; counts are recounted from scratch.
    pub fn from_members<T: Scalar>(net: &Network<T>, members: &[VertexId]) -> Self {
        let n = net.n();
        let mut alive = vec![false; n];
        for v in members {
            alive[v.0] = true;
        }
        Self::from_mask(net, alive)
    }

    pub fn from_mask<T: Scalar>(net: &Network<T>, alive: Vec<bool>) -> Self {
        let n = net.n();
        assert_eq!(alive.len(), n);
        let mut view = SubsetView {
            alive_count: alive.iter().filter(|&&a| a).count(),
            alive,
            total: vec![0; n],
            inward: vec![0; n],
            outward: vec![0; n],
        };
        for v in net.vertices() {
            view.recount(net, v);
        }
        view
    }

    fn recount<T: Scalar>(&mut self, net: &Network<T>, v: VertexId) {
        let (mut t, mut i, mut o) = (0, 0, 0);
        for l in net.links(v) {
            if self.alive[l.to.0] {
                t += 1;
                i += l.orientation.has_in() as u32;
                o += l.orientation.has_out() as u32;
            }
        }
        self.total[v.0] = t;
        self.inward[v.0] = i;
        self.outward[v.0] = o;
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.alive[v.0]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.alive_count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.alive_count == 0
    }

    pub fn mask(&self) -> &[bool] {
        &self.alive
    }

    pub fn members(&self) -> Vec<VertexId> {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| VertexId(i))
            .collect()
    }

    /// Delete `v` and update its neighbors' counts. No-op if already deleted.
    pub fn remove<T: Scalar>(&mut self, net: &Network<T>, v: VertexId) {
        if !self.alive[v.0] {
            return;
        }
        self.alive[v.0] = false;
        self.alive_count -= 1;
        for l in net.links(v) {
            let u = l.to.0;
            self.total[u] -= 1;
            // an arc v -> u is an in-arc of u
            if l.orientation.has_out() {
                self.inward[u] -= 1;
            }
            if l.orientation.has_in() {
                self.outward[u] -= 1;
            }
        }
    }

    #[inline]
    pub fn alive_degree(&self, v: VertexId, mode: DegreeMode) -> usize {
        let i = v.0;
        (match mode {
            DegreeMode::Total => self.total[i],
            DegreeMode::In => self.inward[i],
            DegreeMode::Out => self.outward[i],
            DegreeMode::InPlusOut => self.inward[i] + self.outward[i],
        }) as usize
    }

    /// Recount check: `true` when every maintained count matches a fresh count.
    pub fn is_consistent<T: Scalar>(&self, net: &Network<T>) -> bool {
        let fresh = Self::from_mask(net, self.alive.clone());
        fresh.total == self.total && fresh.inward == self.inward && fresh.outward == self.outward
    }
}

/// `|N(v) ∩ alive|` in the given mode.
pub fn restrict_degrees<T: Scalar>(
    net: &Network<T>,
    alive: &SubsetView,
    v: VertexId,
    mode: DegreeMode,
) -> usize {
    debug_assert!(v.0 < net.n());
    alive.alive_degree(v, mode)
}
