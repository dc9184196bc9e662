//! Word-metric distances and ball volumes.
//!
//! [`DistanceOracle`] holds the exact BFS ball of radius `r_max` around the
//! identity. [`ClosedFormMetric`] answers the same questions from a
//! per-family formula when one exists; the two are cross-checked in tests.
//! Walk observables only need the [`WordMetric`] trait: an exact ball test
//! and a certified lower bound on distance for escape detection.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::groups::{Element, GroupModel};

/// Default cap on the number of elements a BFS ball may hold.
pub const DEFAULT_BALL_CAP: usize = 20_000_000;

/// Result of a distance query against a finite oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(u64),
    /// Farther than the oracle's build radius.
    Beyond,
}

/// What the walk engine needs to know about distances.
pub trait WordMetric: Sync {
    fn model(&self) -> &GroupModel;

    /// Exact test `d(o, x) ≤ r`.
    fn in_ball(&self, x: &Element, r: u64) -> Result<bool>;

    /// A value certified to be `≤ d(o, x)`.
    fn lower_bound(&self, x: &Element) -> u64;

    /// Largest radius for which [`WordMetric::in_ball`] is exact; `None` if unlimited.
    fn exact_radius(&self) -> Option<u64>;
}

/// Exact distances within `B(o, r_max)`.
#[derive(Clone, Debug)]
pub struct DistanceOracle {
    model: GroupModel,
    r_max: u64,
    table: FxHashMap<Element, u32>,
    sphere_sizes: Vec<u64>,
    /// Ball elements in BFS order; distances are nondecreasing along it.
    order: Vec<Element>,
}

impl DistanceOracle {
    /// BFS ball of radius `r_max` with the default element cap.
    pub fn build(model: &GroupModel, r_max: u64) -> Result<Self> {
        Self::build_with_cap(model, r_max, DEFAULT_BALL_CAP)
    }

    pub fn build_with_cap(model: &GroupModel, r_max: u64, cap: usize) -> Result<Self> {
        let gens = model.generators();
        let id = model.identity();
        let mut table = FxHashMap::default();
        table.insert(id.clone(), 0u32);
        let mut order = vec![id.clone()];
        let mut sphere_sizes = vec![1u64];
        let mut frontier = VecDeque::from([id]);

        for radius in 1..=r_max {
            let mut next = VecDeque::new();
            while let Some(x) = frontier.pop_front() {
                for g in &gens {
                    let mut y = x.clone();
                    model.right_multiply(&mut y, g);
                    if table.contains_key(&y) {
                        continue;
                    }
                    if table.len() >= cap {
                        return Err(Error::Capacity {
                            radius_reached: radius - 1,
                            cap,
                        });
                    }
                    table.insert(y.clone(), radius as u32);
                    order.push(y.clone());
                    next.push_back(y);
                }
            }
            sphere_sizes.push(next.len() as u64);
            frontier = next;
        }

        Ok(DistanceOracle {
            model: model.clone(),
            r_max,
            table,
            sphere_sizes,
            order,
        })
    }

    pub fn r_max(&self) -> u64 {
        self.r_max
    }

    pub fn group(&self) -> &GroupModel {
        &self.model
    }

    pub fn distance(&self, x: &Element) -> Distance {
        match self.table.get(x) {
            Some(&d) => Distance::Exact(d as u64),
            None => Distance::Beyond,
        }
    }

    /// `V(r) = |B(o, r)|`.
    pub fn volume(&self, r: u64) -> Result<u64> {
        if r > self.r_max {
            return Err(Error::Range { r, r_max: self.r_max });
        }
        Ok(self.sphere_sizes[..=r as usize].iter().sum())
    }

    /// `[V(0), V(1), ..., V(r_max)]`.
    pub fn volumes(&self) -> Vec<u64> {
        self.sphere_sizes
            .iter()
            .scan(0u64, |acc, s| {
                *acc += s;
                Some(*acc)
            })
            .collect()
    }

    pub fn sphere_sizes(&self) -> &[u64] {
        &self.sphere_sizes
    }

    /// Elements of the ball in BFS order, identity first.
    pub fn elements(&self) -> &[Element] {
        &self.order
    }

    /// The prefix of [`DistanceOracle::elements`] lying in `B(o, r)`.
    pub fn ball(&self, r: u64) -> Result<&[Element]> {
        let v = self.volume(r)?;
        Ok(&self.order[..v as usize])
    }

    /// First element of the sphere of radius `r` in BFS order.
    pub fn first_at(&self, r: u64) -> Result<&Element> {
        if r > self.r_max {
            return Err(Error::Range { r, r_max: self.r_max });
        }
        let before = if r == 0 { 0 } else { self.volume(r - 1)? };
        self.order
            .get(before as usize)
            .ok_or_else(|| Error::Parameter(format!("sphere of radius {r} is empty")))
    }
}

impl WordMetric for DistanceOracle {
    fn model(&self) -> &GroupModel {
        &self.model
    }

    fn in_ball(&self, x: &Element, r: u64) -> Result<bool> {
        if r > self.r_max {
            return Err(Error::Range { r, r_max: self.r_max });
        }
        Ok(self.table.get(x).is_some_and(|&d| d as u64 <= r))
    }

    fn lower_bound(&self, x: &Element) -> u64 {
        match self.table.get(x) {
            Some(&d) => d as u64,
            None => (self.r_max + 1).max(self.model.distance_lower_bound(x)),
        }
    }

    fn exact_radius(&self) -> Option<u64> {
        Some(self.r_max)
    }
}

/// Word length from a per-family closed form.
#[derive(Clone, Debug)]
pub struct ClosedFormMetric {
    model: GroupModel,
}

impl ClosedFormMetric {
    pub fn new(model: &GroupModel) -> Result<Self> {
        if !model.has_closed_form_metric() {
            return Err(Error::NoClosedForm {
                model: model.to_string(),
            });
        }
        Ok(ClosedFormMetric { model: model.clone() })
    }

    pub fn length(&self, x: &Element) -> u64 {
        self.model.word_length(x).expect("closed form checked at construction")
    }
}

impl WordMetric for ClosedFormMetric {
    fn model(&self) -> &GroupModel {
        &self.model
    }

    fn in_ball(&self, x: &Element, r: u64) -> Result<bool> {
        Ok(self.length(x) <= r)
    }

    fn lower_bound(&self, x: &Element) -> u64 {
        self.length(x)
    }

    fn exact_radius(&self) -> Option<u64> {
        None
    }
}

/// Either metric, chosen per family.
#[derive(Clone, Debug)]
pub enum Metric {
    ClosedForm(ClosedFormMetric),
    Oracle(DistanceOracle),
}

impl Metric {
    /// Closed form when the family has one, otherwise a BFS oracle of
    /// radius `exact_radius`.
    pub fn for_model(model: &GroupModel, exact_radius: u64) -> Result<Self> {
        if model.has_closed_form_metric() {
            Ok(Metric::ClosedForm(ClosedFormMetric::new(model)?))
        } else {
            Ok(Metric::Oracle(DistanceOracle::build(model, exact_radius)?))
        }
    }
}

impl WordMetric for Metric {
    fn model(&self) -> &GroupModel {
        match self {
            Metric::ClosedForm(m) => m.model(),
            Metric::Oracle(m) => m.model(),
        }
    }

    fn in_ball(&self, x: &Element, r: u64) -> Result<bool> {
        match self {
            Metric::ClosedForm(m) => m.in_ball(x, r),
            Metric::Oracle(m) => m.in_ball(x, r),
        }
    }

    fn lower_bound(&self, x: &Element) -> u64 {
        match self {
            Metric::ClosedForm(m) => m.lower_bound(x),
            Metric::Oracle(m) => m.lower_bound(x),
        }
    }

    fn exact_radius(&self) -> Option<u64> {
        match self {
            Metric::ClosedForm(m) => m.exact_radius(),
            Metric::Oracle(m) => m.exact_radius(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rustc_hash::FxHashSet;

    fn oracle(d: &str, r: u64) -> DistanceOracle {
        DistanceOracle::build(&GroupModel::parse(d).unwrap(), r).unwrap()
    }

    /// All products of at most `n` generators, deduplicated, by length.
    fn brute_force_lengths(model: &GroupModel, n: usize) -> FxHashMap<Element, u64> {
        let gens = model.generators();
        let mut best = FxHashMap::default();
        let mut words = vec![model.identity()];
        best.insert(model.identity(), 0);
        for len in 1..=n {
            let mut next = Vec::new();
            for w in &words {
                for g in &gens {
                    let x = model.multiply(w, g).unwrap();
                    best.entry(x.clone()).or_insert(len as u64);
                    next.push(x);
                }
            }
            words = next;
        }
        best
    }

    #[test]
    fn line_volumes() {
        assert_eq!(oracle("Z", 3).volumes(), vec![1, 3, 5, 7]);
    }

    #[test]
    fn square_lattice_volumes() {
        let o = oracle("Z^2", 2);
        assert_eq!(o.volume(1).unwrap(), 5);
        assert_eq!(o.volume(2).unwrap(), 13);
        let brute = (-2i64..=2)
            .flat_map(|x| (-2i64..=2).map(move |y| (x, y)))
            .filter(|(x, y)| x.abs() + y.abs() <= 2)
            .count();
        assert_eq!(brute, 13);
        for r in 0..=2u64 {
            assert_eq!(o.volume(r).unwrap(), 2 * r * r + 2 * r + 1);
        }
    }

    #[test]
    fn free_group_volumes() {
        let o = oracle("F2", 3);
        assert_eq!(o.volumes(), vec![1, 5, 17, 53]);
        let mut v = 1u64;
        for k in 1..=3u32 {
            v += 4 * 3u64.pow(k - 1);
            assert_eq!(o.volume(k as u64).unwrap(), v);
        }
        let f3 = oracle("F3", 4);
        for r in 0..=4u64 {
            let k = 3u64;
            let expected = 1 + 2 * k * ((2 * k - 1).pow(r as u32) - 1) / (2 * k - 2);
            assert_eq!(f3.volume(r).unwrap(), expected);
        }
    }

    #[test]
    fn lattice_volumes_match_l1_count() {
        for d in [3usize, 4] {
            let o = oracle(&format!("Z^{d}"), 4);
            for r in 0..=4u64 {
                // |{x in Z^d : |x|_1 <= r}| = Σ_k 2^k C(d,k) C(r,k)
                let binom = |n: u64, k: u64| -> u64 {
                    if k > n {
                        return 0;
                    }
                    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
                };
                let expected: u64 = (0..=d as u64)
                    .map(|k| (1 << k) * binom(d as u64, k) * binom(r, k))
                    .sum();
                assert_eq!(o.volume(r).unwrap(), expected, "d={d} r={r}");
            }
        }
        assert_eq!(oracle("Z^3", 1).volume(1).unwrap(), 7);
    }

    #[test]
    fn distances() {
        let z2 = oracle("Z^2", 3);
        assert_eq!(z2.distance(&GroupModel::ZPower(2).identity()), Distance::Exact(0));
        assert_eq!(z2.distance(&Element::Z(vec![1, 1])), Distance::Exact(2));
        assert_eq!(z2.distance(&Element::Z(vec![3, 1])), Distance::Beyond);

        let h = oracle("H3", 5);
        let c = Element::Heisenberg([0, 0, 1]);
        assert_eq!(h.distance(&c), Distance::Exact(4));
        let brute = brute_force_lengths(&GroupModel::Heisenberg3, 4);
        assert_eq!(brute.get(&c), Some(&4));
        // the commutator a b a⁻¹ b⁻¹ evaluates to (0,0,1)
        let g = GroupModel::Heisenberg3;
        let [a, ai, b, bi] = &g.generators()[..] else {
            unreachable!()
        };
        let mut w = g.identity();
        for x in [a, b, ai, bi] {
            w = g.multiply(&w, x).unwrap();
        }
        assert_eq!(w, c);
    }

    #[test]
    fn lamplighter_volume_matches_brute_force() {
        let model = GroupModel::Lamplighter;
        let o = DistanceOracle::build(&model, 4).unwrap();
        let brute = brute_force_lengths(&model, 4);
        assert_eq!(o.volume(4).unwrap(), brute.len() as u64);
        for r in 0..=4u64 {
            let count = brute.values().filter(|&&d| d <= r).count() as u64;
            assert_eq!(o.volume(r).unwrap(), count);
        }
    }

    #[test]
    fn volume_range_error() {
        let o = oracle("F2", 2);
        assert_eq!(o.volume(0).unwrap(), 1);
        assert!(matches!(o.volume(3), Err(Error::Range { r: 3, r_max: 2 })));
        assert!(o.in_ball(&GroupModel::Free(2).identity(), 3).is_err());
    }

    #[test]
    fn capacity_error_reports_radius() {
        let err = DistanceOracle::build_with_cap(&GroupModel::Free(2), 10, 100).unwrap_err();
        // V(2) = 17, V(3) = 53, V(4) = 161
        assert_eq!(
            err,
            Error::Capacity {
                radius_reached: 3,
                cap: 100
            }
        );
    }

    #[test]
    fn sphere_consistency_and_keys() {
        for d in ["Z^3", "H3", "LL", "F2", "Z^2xF2"] {
            let model = GroupModel::parse(d).unwrap();
            let o = DistanceOracle::build(&model, 6).unwrap();
            let vols = o.volumes();
            assert_eq!(vols[0], 1);
            for r in 1..vols.len() {
                assert_eq!(vols[r] - vols[r - 1], o.sphere_sizes()[r]);
            }
            let keys: FxHashSet<Vec<u8>> = o.elements().iter().map(|x| model.canonical_key(x)).collect();
            assert_eq!(keys.len(), o.elements().len(), "{d}: key collision");
        }
    }

    #[test]
    fn closed_forms_agree_with_bfs() {
        for d in ["Z^3", "LL", "F2", "F3", "Z^2xF2", "LLxZ"] {
            let model = GroupModel::parse(d).unwrap();
            let o = DistanceOracle::build(&model, 7).unwrap();
            let cf = ClosedFormMetric::new(&model).unwrap();
            for x in o.elements() {
                let Distance::Exact(dx) = o.distance(x) else {
                    unreachable!()
                };
                assert_eq!(cf.length(x), dx, "{d}: {x}");
            }
        }
        assert!(ClosedFormMetric::new(&GroupModel::Heisenberg3).is_err());
    }

    #[test]
    fn heisenberg_lower_bound_is_certified() {
        let model = GroupModel::Heisenberg3;
        let o = DistanceOracle::build(&model, 10).unwrap();
        let mut tight = 0;
        for x in o.elements() {
            let Distance::Exact(d) = o.distance(x) else {
                unreachable!()
            };
            let lb = model.distance_lower_bound(x);
            assert!(lb <= d, "{x}: bound {lb} > distance {d}");
            tight += (lb == d) as usize;
        }
        assert!(tight > o.elements().len() / 4);
        // beyond the ball the oracle reports at least r_max + 1
        assert!(o.lower_bound(&Element::Heisenberg([0, 0, 1000])) >= 11);
    }
}
