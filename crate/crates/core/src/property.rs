//! Vertex property functions `p(v, U)`.
//!
//! A property is evaluated for vertex `v` against the alive set `U` held by a
//! [`SubsetView`]. Each property declares whether it is monotone
//! (`U1 ⊂ U2 ⇒ p(v,U1) ≤ p(v,U2)`), whether it is local (depends only on
//! `N(v,U)`), and its value `p0` on an empty neighborhood.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DegreeMode, Network, SubsetView, VertexId};
use crate::scalar::Scalar;

/// What a neighbor deletion did to the target vertex, seen from the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Removal<T> {
    pub neighbor: VertexId,
    pub weight: T,
    /// the deleted neighbor had an arc into the target
    pub arc_in: bool,
    /// the target had an arc into the deleted neighbor
    pub arc_out: bool,
}

/// Result of an O(1) update attempt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Update<T> {
    Value(T),
    Recompute,
}

pub trait VertexProperty<T: Scalar> {
    fn name(&self) -> &'static str;

    fn is_monotone(&self) -> bool;

    fn is_local(&self) -> bool;

    /// `p(v, ∅)`, constant over `v`.
    fn empty_value(&self, net: &Network<T>) -> T;

    /// Whether the property is defined on `net`.
    fn check_network(&self, net: &Network<T>) -> Result<()>;

    /// `p(v, alive)`. Callers must have run [`VertexProperty::check_network`].
    fn value(&self, net: &Network<T>, v: VertexId, alive: &SubsetView) -> T;

    /// New value after a neighbor of the target was deleted, when it can be
    /// derived from the old value alone.
    fn incremental_update(&self, _current: T, _removed: &Removal<T>) -> Update<T> {
        Update::Recompute
    }

    /// Checked `p(v, alive)`.
    fn evaluate(&self, net: &Network<T>, v: VertexId, alive: &SubsetView) -> Result<T> {
        self.check_network(net)?;
        net.check_vertex(v)?;
        Ok(self.value(net, v, alive))
    }
}

/// The shipped property functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// p1: number of alive neighbors.
    Degree,
    /// p2: alive in-degree (directed only).
    InDegree,
    /// p3: alive out-degree (directed only).
    OutDegree,
    /// p4: alive in-degree plus out-degree (directed only).
    InPlusOut,
    /// p5: sum of weights to alive neighbors; weights must be non-negative.
    WeightSum,
    /// p6: maximum weight to an alive neighbor.
    WeightMax,
    /// p7 with cycle length 3: triangles through `v` in the alive subgraph.
    Triangles,
    /// Average weight to alive neighbors. Not monotone.
    AverageWeight,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Degree,
        Property::InDegree,
        Property::OutDegree,
        Property::InPlusOut,
        Property::WeightSum,
        Property::WeightMax,
        Property::Triangles,
        Property::AverageWeight,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Property::Degree => "p1",
            Property::InDegree => "p2",
            Property::OutDegree => "p3",
            Property::InPlusOut => "p4",
            Property::WeightSum => "p5",
            Property::WeightMax => "p6",
            Property::Triangles => "p7",
            Property::AverageWeight => "avg",
        }
    }

    /// Degree mode for the integral degree properties p1–p4.
    pub fn degree_mode(self) -> Option<DegreeMode> {
        match self {
            Property::Degree => Some(DegreeMode::Total),
            Property::InDegree => Some(DegreeMode::In),
            Property::OutDegree => Some(DegreeMode::Out),
            Property::InPlusOut => Some(DegreeMode::InPlusOut),
            _ => None,
        }
    }

    fn needs_direction(self) -> bool {
        matches!(self, Property::InDegree | Property::OutDegree | Property::InPlusOut)
    }

    fn triangles<T: Scalar>(net: &Network<T>, v: VertexId, alive: &SubsetView) -> usize {
        let own = net.links(v);
        let mut count = 0;
        for (i, lu) in own.iter().enumerate() {
            if !alive.contains(lu.to) {
                continue;
            }
            // common alive neighbors w of v and u with w > u
            let rest = &own[i + 1..];
            let theirs = net.links(lu.to);
            let (mut a, mut b) = (0, 0);
            while a < rest.len() && b < theirs.len() {
                match rest[a].to.cmp(&theirs[b].to) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        count += alive.contains(rest[a].to) as usize;
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
        count
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Property::ALL
            .into_iter()
            .find(|p| p.token().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown property `{s}` (p1|p2|p3|p4|p5|p6|p7|avg)"))
    }
}

impl<T: Scalar> VertexProperty<T> for Property {
    fn name(&self) -> &'static str {
        self.token()
    }

    fn is_monotone(&self) -> bool {
        !matches!(self, Property::AverageWeight)
    }

    fn is_local(&self) -> bool {
        true
    }

    fn empty_value(&self, net: &Network<T>) -> T {
        // max over an empty set; 0 keeps p6 monotone only without negative weights
        if *self == Property::WeightMax && net.min_weight().is_some_and(|w| w < T::zero()) {
            T::neg_infinity()
        } else {
            T::zero()
        }
    }

    fn check_network(&self, net: &Network<T>) -> Result<()> {
        if self.needs_direction() && !net.is_directed() {
            return Err(Error::UnsupportedProperty {
                property: self.token(),
                reason: "in/out degrees need a directed network",
            });
        }
        if *self == Property::WeightSum && net.min_weight().is_some_and(|w| w < T::zero()) {
            return Err(Error::UnsupportedProperty {
                property: self.token(),
                reason: "weights must be non-negative",
            });
        }
        Ok(())
    }

    fn value(&self, net: &Network<T>, v: VertexId, alive: &SubsetView) -> T {
        if let Some(mode) = self.degree_mode() {
            return T::from_count(alive.alive_degree(v, mode));
        }
        let alive_links = || net.links(v).iter().filter(|l| alive.contains(l.to));
        match self {
            Property::WeightSum => alive_links().fold(T::zero(), |s, l| s + l.weight),
            Property::WeightMax => alive_links()
                .map(|l| l.weight)
                .reduce(T::max)
                .unwrap_or_else(|| VertexProperty::<T>::empty_value(self, net)),
            Property::Triangles => T::from_count(Self::triangles(net, v, alive)),
            Property::AverageWeight => {
                let (sum, count) = alive_links().fold((T::zero(), 0usize), |(s, c), l| (s + l.weight, c + 1));
                if count == 0 {
                    T::zero()
                } else {
                    sum / T::from_count(count)
                }
            }
            _ => unreachable!("degree properties handled above"),
        }
    }

    fn incremental_update(&self, current: T, removed: &Removal<T>) -> Update<T> {
        let one = T::one();
        let step = |hit: bool| if hit { current - one } else { current };
        match self {
            Property::Degree => Update::Value(current - one),
            Property::InDegree => Update::Value(step(removed.arc_in)),
            Property::OutDegree => Update::Value(step(removed.arc_out)),
            Property::InPlusOut => {
                let hits = removed.arc_in as u8 + removed.arc_out as u8;
                Update::Value(current - T::from_count(hits as usize))
            }
            Property::WeightSum => Update::Value(current - removed.weight),
            Property::WeightMax | Property::Triangles | Property::AverageWeight => Update::Recompute,
        }
    }
}

/// A witness `p(v, smaller) > p(v, larger)` with `smaller ⊂ larger`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityViolation<T> {
    pub vertex: VertexId,
    pub smaller: Vec<VertexId>,
    pub larger: Vec<VertexId>,
    pub smaller_value: T,
    pub larger_value: T,
}

/// Sample random chains `U1 ⊂ U2 ⊆ V` and report every vertex whose value
/// drops when the set grows.
///
/// Each trial draws `U2` with a random inclusion rate and `U1` by deleting a
/// random non-empty part of `U2`.
pub fn check_monotonicity<T: Scalar, P: VertexProperty<T> + ?Sized>(
    pf: &P,
    net: &Network<T>,
    trials: usize,
    seed: u64,
) -> Result<Vec<MonotonicityViolation<T>>> {
    pf.check_network(net)?;
    let n = net.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::new();
    if n < 2 {
        return Ok(found);
    }
    for _ in 0..trials {
        let keep: f64 = rng.gen_range(0.3..=1.0);
        let larger_mask: Vec<bool> = (0..n).map(|_| rng.gen_bool(keep)).collect();
        let in_larger: Vec<usize> = (0..n).filter(|&i| larger_mask[i]).collect();
        if in_larger.is_empty() {
            continue;
        }
        let mut smaller_mask = larger_mask.clone();
        let drop: f64 = rng.gen_range(0.0..0.5);
        for &i in &in_larger {
            if rng.gen_bool(drop) {
                smaller_mask[i] = false;
            }
        }
        let forced = in_larger[rng.gen_range(0..in_larger.len())];
        smaller_mask[forced] = false;

        let larger = SubsetView::from_mask(net, larger_mask);
        let smaller = SubsetView::from_mask(net, smaller_mask);
        for v in net.vertices() {
            let (lo, hi) = (pf.value(net, v, &smaller), pf.value(net, v, &larger));
            if lo > hi {
                found.push(MonotonicityViolation {
                    vertex: v,
                    smaller: smaller.members(),
                    larger: larger.members(),
                    smaller_value: lo,
                    larger_value: hi,
                });
            }
        }
    }
    Ok(found)
}
