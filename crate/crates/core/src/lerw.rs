//! Chronological loop erasure and loop-erased random walk.
//!
//! The eraser is online: vertices are pushed one at a time and a repeat
//! pops the stack back to the earlier occurrence. After the whole path is
//! pushed the stack is `LE[path]`: starting from `u_0 = v_0`, each next
//! vertex follows the last visit of the current one.

use std::hash::Hash;

use rand::Rng;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::groups::Element;
use crate::metric::WordMetric;
use crate::rng::RandomStream;
use crate::walk::StepDistribution;

/// A path without repeated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePath<T> {
    vertices: Vec<T>,
}

impl<T> SimplePath<T> {
    pub fn vertices(&self) -> &[T] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Option<&T> {
        self.vertices.first()
    }

    pub fn last(&self) -> Option<&T> {
        self.vertices.last()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.vertices
    }
}

/// Stack plus position index.
#[derive(Clone, Debug)]
pub struct LoopEraser<T> {
    stack: Vec<T>,
    position: FxHashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> LoopEraser<T> {
    pub fn new(start: T) -> Self {
        let mut position = FxHashMap::default();
        position.insert(start.clone(), 0);
        LoopEraser {
            stack: vec![start],
            position,
        }
    }

    /// Appends the next vertex of the path, erasing the loop it closes.
    pub fn push(&mut self, v: T) {
        if let Some(&p) = self.position.get(&v) {
            for erased in self.stack.drain(p + 1..) {
                self.position.remove(&erased);
            }
        } else {
            self.position.insert(v.clone(), self.stack.len());
            self.stack.push(v);
        }
    }

    pub fn contains(&self, v: &T) -> bool {
        self.position.contains_key(v)
    }

    /// The loop erasure of everything pushed so far.
    pub fn current(&self) -> &[T] {
        &self.stack
    }

    pub fn finish(self) -> SimplePath<T> {
        SimplePath { vertices: self.stack }
    }
}

/// `LE[path]`. Panics on an empty path.
pub fn loop_erase<T: Clone + Eq + Hash>(path: &[T]) -> SimplePath<T> {
    let (first, rest) = path.split_first().expect("loop erasure of an empty path");
    let mut eraser = LoopEraser::new(first.clone());
    for v in rest {
        eraser.push(v.clone());
    }
    eraser.finish()
}

/// A Markov chain that can be loop-erased.
pub trait Walker {
    type State: Clone + Eq + Hash;

    fn next_state<R: Rng + ?Sized>(&self, from: &Self::State, rng: &mut R) -> Self::State;
}

impl Walker for StepDistribution {
    type State = Element;

    fn next_state<R: Rng + ?Sized>(&self, from: &Element, rng: &mut R) -> Element {
        let mut y = from.clone();
        self.step(&mut y, rng);
        y
    }
}

/// Loop erasure of a chain run from `start` until `stop` holds.
/// The stopping state is the last vertex of the result.
pub fn lerw_until<W, R, F>(
    walker: &W,
    start: W::State,
    mut stop: F,
    horizon: u64,
    rng: &mut R,
) -> Result<SimplePath<W::State>>
where
    W: Walker,
    R: Rng + ?Sized,
    F: FnMut(&W::State) -> bool,
{
    if stop(&start) {
        return Ok(SimplePath { vertices: vec![start] });
    }
    let mut eraser = LoopEraser::new(start.clone());
    let mut x = start;
    for _ in 0..horizon {
        x = walker.next_state(&x, rng);
        eraser.push(x.clone());
        if stop(&x) {
            return Ok(eraser.finish());
        }
    }
    Err(Error::Horizon {
        horizon,
        context: "loop-erased walk did not stop".into(),
    })
}

/// When a loop-erased walk on group elements stops.
#[derive(Clone, Debug)]
pub enum StopRule {
    /// Stop on entering the set.
    HitSet(FxHashSet<Element>),
    /// Stop once the certified distance exceeds the radius; the walk after
    /// that is discarded.
    EscapeRadius(u64),
}

pub fn sample_lerw(
    dist: &StepDistribution,
    metric: &dyn WordMetric,
    start: &Element,
    stop: &StopRule,
    horizon: u64,
    rng: &mut RandomStream,
) -> Result<SimplePath<Element>> {
    dist.model().validate(start)?;
    match stop {
        StopRule::HitSet(targets) => lerw_until(dist, start.clone(), |x| targets.contains(x), horizon, rng),
        StopRule::EscapeRadius(m) => lerw_until(dist, start.clone(), |x| metric.lower_bound(x) > *m, horizon, rng),
    }
}
