//! Core computations.
//!
//! * [`p_core_at_level`] peels vertices whose value is below a level `t`,
//!   always extracting the current minimum from an indexed heap.
//! * [`core_hierarchy`] peels everything and records each vertex's core
//!   number, clamping neighbor keys from below by the last core number.
//! * [`degree_cores_linear`] is the O(n + m) bucket version for the integral
//!   degree properties.
//! * [`DeletionProcess`] is the plain "delete any violating vertex" procedure
//!   with a caller-chosen order, used to expose order dependence of
//!   non-monotone properties.
//! * [`brute_force_core`] enumerates all subsets of small networks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DegreeMode, Network, Orientation, SubsetView, VertexId};
use crate::heap::IndexedMinHeap;
use crate::property::{Removal, Update, VertexProperty};
#[cfg(test)]
use crate::property::Property;
use crate::scalar::Scalar;

/// Order among vertices whose keys are equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum TieBreakPolicy {
    #[default]
    LowestId,
    HighestId,
    SeededRandom(u64),
    /// Listed vertices first, in the given order; the rest by lowest id.
    Preference(Vec<VertexId>),
}

impl TieBreakPolicy {
    /// Rank of every vertex; a lower rank is extracted first.
    pub fn ranks(&self, n: usize) -> Vec<u32> {
        match self {
            TieBreakPolicy::LowestId => (0..n as u32).collect(),
            TieBreakPolicy::HighestId => (0..n as u32).rev().collect(),
            TieBreakPolicy::SeededRandom(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut ranks: Vec<u32> = (0..n as u32).collect();
                ranks.shuffle(&mut rng);
                ranks
            }
            TieBreakPolicy::Preference(order) => {
                let mut ranks = vec![u32::MAX; n];
                let mut next = 0u32;
                for v in order {
                    if v.0 < n && ranks[v.0] == u32::MAX {
                        ranks[v.0] = next;
                        next += 1;
                    }
                }
                for r in ranks.iter_mut().filter(|r| **r == u32::MAX) {
                    *r = next;
                    next += 1;
                }
                ranks
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PeelOptions {
    pub tie_break: TieBreakPolicy,
    /// Run non-monotone properties; the result is an order-dependent fixpoint.
    pub allow_non_monotone: bool,
    /// Force full re-evaluation instead of O(1) incremental updates.
    pub always_recompute: bool,
}

impl PeelOptions {
    pub fn with_tie_break(tie_break: TieBreakPolicy) -> Self {
        PeelOptions { tie_break, ..Default::default() }
    }

    pub fn allowing_non_monotone(mut self) -> Self {
        self.allow_non_monotone = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreKind {
    /// Monotone property: the unique p-core at the level.
    Unique,
    /// Non-monotone property: one fixpoint among possibly several.
    OrderDependentFixpoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreResult<T> {
    pub level: T,
    /// Sorted by id.
    pub members: Vec<VertexId>,
    /// Deleted vertices with their value at deletion time.
    pub trace: Vec<(VertexId, T)>,
    pub kind: CoreKind,
}

impl<T: Scalar> CoreResult<T> {
    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreHierarchy<T> {
    core: Vec<T>,
    removal_order: Vec<VertexId>,
}

impl<T: Scalar> CoreHierarchy<T> {
    pub fn new(core: Vec<T>, removal_order: Vec<VertexId>) -> Self {
        CoreHierarchy { core, removal_order }
    }

    pub fn len(&self) -> usize {
        self.core.len()
    }

    pub fn is_empty(&self) -> bool {
        self.core.is_empty()
    }

    pub fn core_number(&self, v: VertexId) -> T {
        self.core[v.0]
    }

    pub fn core_numbers(&self) -> &[T] {
        &self.core
    }

    pub fn removal_order(&self) -> &[VertexId] {
        &self.removal_order
    }

    /// Largest core number; `None` on an empty network.
    pub fn max_core(&self) -> Option<T> {
        self.core.iter().copied().reduce(T::max)
    }

    /// `{ v : core(v) ≥ t }`, sorted.
    pub fn members_at_level(&self, t: T) -> Vec<VertexId> {
        (0..self.core.len())
            .filter(|&i| self.core[i] >= t)
            .map(VertexId)
            .collect()
    }

    /// Core numbers as integers when every one is a whole number.
    pub fn integral(&self) -> Option<Vec<u64>> {
        self.core.iter().map(|c| c.as_whole()).collect()
    }
}

fn check_runnable<T: Scalar, P: VertexProperty<T> + ?Sized>(
    net: &Network<T>,
    pf: &P,
    options: &PeelOptions,
) -> Result<CoreKind> {
    pf.check_network(net)?;
    if !pf.is_local() {
        return Err(Error::NonLocal(pf.name()));
    }
    if pf.is_monotone() {
        Ok(CoreKind::Unique)
    } else if options.allow_non_monotone {
        Ok(CoreKind::OrderDependentFixpoint)
    } else {
        Err(Error::NonMonotone(pf.name()))
    }
}

fn removal_seen_from<T: Scalar>(top: VertexId, link_from_top: Orientation, weight: T) -> Removal<T> {
    Removal {
        neighbor: top,
        weight,
        arc_in: link_from_top.has_out(),
        arc_out: link_from_top.has_in(),
    }
}

#[inline]
fn refreshed<T: Scalar, P: VertexProperty<T> + ?Sized>(
    net: &Network<T>,
    pf: &P,
    view: &SubsetView,
    v: VertexId,
    current: T,
    removal: &Removal<T>,
    always_recompute: bool,
) -> T {
    if !always_recompute {
        if let Update::Value(x) = pf.incremental_update(current, removal) {
            return x;
        }
    }
    pf.value(net, v, view)
}

/// The p-core of `net` at level `t`.
///
/// Starts from all vertices, repeatedly extracts the vertex with the smallest
/// current value while that value is below `t`, deletes it, and refreshes the
/// values of its alive neighbors. A level at or below `p0` keeps every vertex.
pub fn p_core_at_level<T: Scalar, P: VertexProperty<T> + ?Sized>(
    net: &Network<T>,
    pf: &P,
    t: T,
    options: &PeelOptions,
) -> Result<CoreResult<T>> {
    let kind = check_runnable(net, pf, options)?;
    let ranks = options.tie_break.ranks(net.n());
    let mut view = SubsetView::full(net);
    let mut value: Vec<T> = net.vertices().map(|v| pf.value(net, v, &view)).collect();
    let mut heap = IndexedMinHeap::from_keys(value.iter().copied().zip(ranks.iter().copied()).collect());
    let mut trace = Vec::new();

    while let Some((top, (p_top, _))) = heap.peek() {
        if p_top >= t {
            break;
        }
        heap.pop();
        let top = VertexId(top);
        view.remove(net, top);
        trace.push((top, p_top));
        for link in net.links(top) {
            let v = link.to;
            if !view.contains(v) {
                continue;
            }
            let removal = removal_seen_from(top, link.orientation, link.weight);
            let fresh = refreshed(net, pf, &view, v, value[v.0], &removal, options.always_recompute);
            value[v.0] = fresh;
            heap.change_key(v.0, (fresh, ranks[v.0]));
        }
    }

    Ok(CoreResult { level: t, members: view.members(), trace, kind })
}

/// Core number of every vertex under `pf`.
///
/// Each extracted vertex receives its current key as core number; keys of its
/// alive neighbors become `max(that core number, re-evaluated value)`.
pub fn core_hierarchy<T: Scalar, P: VertexProperty<T> + ?Sized>(
    net: &Network<T>,
    pf: &P,
    options: &PeelOptions,
) -> Result<CoreHierarchy<T>> {
    check_runnable(net, pf, options)?;
    let n = net.n();
    let ranks = options.tie_break.ranks(n);
    let mut view = SubsetView::full(net);
    // raw property values; heap keys hold the clamped values
    let mut raw: Vec<T> = net.vertices().map(|v| pf.value(net, v, &view)).collect();
    let mut heap = IndexedMinHeap::from_keys(raw.iter().copied().zip(ranks.iter().copied()).collect());
    let mut core = vec![T::zero(); n];
    let mut order = Vec::with_capacity(n);

    while let Some((top, (p_top, _))) = heap.pop() {
        let top = VertexId(top);
        view.remove(net, top);
        core[top.0] = p_top;
        order.push(top);
        for link in net.links(top) {
            let v = link.to;
            if !view.contains(v) {
                continue;
            }
            let removal = removal_seen_from(top, link.orientation, link.weight);
            let fresh = refreshed(net, pf, &view, v, raw[v.0], &removal, options.always_recompute);
            raw[v.0] = fresh;
            heap.change_key(v.0, (p_top.max(fresh), ranks[v.0]));
        }
    }

    Ok(CoreHierarchy { core, removal_order: order })
}

/// Degree-type core numbers by bucket peeling in O(n + m).
///
/// Vertices sit in an array sorted by current degree with `bin[d]` marking
/// where degree `d` starts; a decrement swaps the vertex to the front of its
/// bin and advances the bin boundary.
pub fn degree_cores_linear<T: Scalar>(net: &Network<T>, mode: DegreeMode) -> Result<CoreHierarchy<T>> {
    if mode != DegreeMode::Total && !net.is_directed() {
        return Err(Error::UnsupportedProperty {
            property: match mode {
                DegreeMode::In => "p2",
                DegreeMode::Out => "p3",
                _ => "p4",
            },
            reason: "in/out degrees need a directed network",
        });
    }
    let n = net.n();
    let mut deg: Vec<usize> = net.vertices().map(|v| net.degree_in_mode(v, mode)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut vert = vec![0usize; n];
    let mut pos = vec![0usize; n];
    {
        let mut next = bin.clone();
        for v in 0..n {
            pos[v] = next[deg[v]];
            vert[pos[v]] = v;
            next[deg[v]] += 1;
        }
    }

    let mut done = vec![false; n];
    for i in 0..n {
        let top = vert[i];
        done[top] = true;
        for link in net.links(VertexId(top)) {
            let u = link.to.0;
            if done[u] {
                continue;
            }
            let hits = match mode {
                DegreeMode::Total => 1,
                DegreeMode::In => link.orientation.has_out() as usize,
                DegreeMode::Out => link.orientation.has_in() as usize,
                DegreeMode::InPlusOut => {
                    link.orientation.has_out() as usize + link.orientation.has_in() as usize
                }
            };
            for _ in 0..hits {
                if deg[u] > deg[top] {
                    let du = deg[u];
                    let pu = pos[u];
                    let pw = bin[du];
                    let w = vert[pw];
                    if u != w {
                        vert.swap(pu, pw);
                        pos[u] = pw;
                        pos[w] = pu;
                    }
                    bin[du] += 1;
                    deg[u] -= 1;
                }
            }
        }
    }

    Ok(CoreHierarchy {
        core: deg.into_iter().map(T::from_count).collect(),
        removal_order: vert.into_iter().map(VertexId).collect(),
    })
}

/// Largest network [`brute_force_core`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// All inclusion-maximal sets `C` with `p(v, C) ≥ t` for every `v ∈ C`, by
/// enumerating every subset. The empty set qualifies vacuously. Each set is
/// sorted; sets are ordered by decreasing size, then by bitmask.
pub fn brute_force_core<T: Scalar, P: VertexProperty<T> + ?Sized>(
    net: &Network<T>,
    pf: &P,
    t: T,
) -> Result<Vec<Vec<VertexId>>> {
    let n = net.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    pf.check_network(net)?;
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));

    let mut maximal: Vec<u32> = Vec::new();
    for mask in masks {
        // a satisfying superset, if any, is inside an already found maximal set
        if maximal.iter().any(|&big| big & mask == mask) {
            continue;
        }
        let alive: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let view = SubsetView::from_mask(net, alive);
        let ok = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .all(|i| pf.value(net, VertexId(i), &view) >= t);
        if ok {
            maximal.push(mask);
        }
    }
    Ok(maximal
        .into_iter()
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(VertexId).collect())
        .collect())
}

/// Run [`p_core_at_level`] under `trials` seeded-random tie-break orders and
/// report whether all member sets agree.
pub fn order_independence_fuzz<T: Scalar, P: VertexProperty<T> + ?Sized>(
    net: &Network<T>,
    pf: &P,
    t: T,
    trials: usize,
    seed: u64,
    allow_non_monotone: bool,
) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first: Option<Vec<VertexId>> = None;
    let mut agree = true;
    for _ in 0..trials {
        let options = PeelOptions {
            tie_break: TieBreakPolicy::SeededRandom(rng.gen()),
            allow_non_monotone,
            always_recompute: false,
        };
        let members = p_core_at_level(net, pf, t, &options)?.members;
        match &first {
            None => first = Some(members),
            Some(f) => agree &= *f == members,
        }
    }
    Ok(agree)
}

/// The "delete any vertex below the level" procedure with explicit control
/// over which violating vertex goes next.
///
/// Values are re-evaluated for the alive neighbors of each deleted vertex,
/// so the property must be local.
#[derive(Debug, Clone)]
pub struct DeletionProcess<'a, T, P: ?Sized> {
    net: &'a Network<T>,
    pf: &'a P,
    view: SubsetView,
    value: Vec<T>,
    trace: Vec<(VertexId, T)>,
}

impl<'a, T: Scalar, P: VertexProperty<T> + ?Sized> DeletionProcess<'a, T, P> {
    pub fn new(net: &'a Network<T>, pf: &'a P) -> Result<Self> {
        pf.check_network(net)?;
        if !pf.is_local() {
            return Err(Error::NonLocal(pf.name()));
        }
        let view = SubsetView::full(net);
        let value = net.vertices().map(|v| pf.value(net, v, &view)).collect();
        Ok(DeletionProcess { net, pf, view, value, trace: Vec::new() })
    }

    pub fn value(&self, v: VertexId) -> T {
        self.value[v.0]
    }

    pub fn members(&self) -> Vec<VertexId> {
        self.view.members()
    }

    pub fn trace(&self) -> &[(VertexId, T)] {
        &self.trace
    }

    /// Smallest value over alive vertices, i.e. the highest level at which
    /// the current set is a fixpoint.
    pub fn min_value(&self) -> Option<T> {
        self.view.members().into_iter().map(|v| self.value[v.0]).reduce(T::min)
    }

    /// Alive vertices with value below `t`.
    pub fn violators(&self, t: T) -> Vec<VertexId> {
        self.view.members().into_iter().filter(|v| self.value[v.0] < t).collect()
    }

    /// Delete `v` regardless of its value.
    pub fn delete(&mut self, v: VertexId) -> Result<()> {
        self.net.check_vertex(v)?;
        if !self.view.contains(v) {
            return Ok(());
        }
        self.trace.push((v, self.value[v.0]));
        self.view.remove(self.net, v);
        for link in self.net.links(v) {
            if self.view.contains(link.to) {
                self.value[link.to.0] = self.pf.value(self.net, link.to, &self.view);
            }
        }
        Ok(())
    }

    /// Delete violators of level `t` until none is left, always taking the
    /// violator ranked first by `order` (not the one with the smallest value).
    pub fn run_to_level(&mut self, t: T, order: &TieBreakPolicy) -> Result<Vec<VertexId>> {
        let ranks = order.ranks(self.net.n());
        while let Some(v) = self.violators(t).into_iter().min_by_key(|v| ranks[v.0]) {
            self.delete(v)?;
        }
        Ok(self.members())
    }
}
