use std::collections::BTreeMap;

use super::elements::{ObjectId, Span, Time};

/// A peg at one timeline position, holding the objects that start and end
/// there in registration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TimePoint {
    pub(crate) starting: Vec<ObjectId>,
    pub(crate) ending: Vec<ObjectId>,
}

impl TimePoint {
    pub fn starting(&self) -> &[ObjectId] {
        &self.starting
    }

    pub fn ending(&self) -> &[ObjectId] {
        &self.ending
    }

    pub fn is_empty(&self) -> bool {
        self.starting.is_empty() && self.ending.is_empty()
    }
}

/// Strictly increasing sequence of timepoints. Points with no registered
/// objects are dropped eagerly, so the map never holds empty pegs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct TimeLine {
    points: BTreeMap<Time, TimePoint>,
}

impl TimeLine {
    pub fn register(&mut self, id: ObjectId, span: Span) {
        self.points.entry(span.start).or_default().starting.push(id);
        self.points.entry(span.end).or_default().ending.push(id);
    }

    pub fn unregister(&mut self, id: ObjectId, span: Span) {
        let mut drop_point = |t: Time, from_start: bool| {
            if let Some(point) = self.points.get_mut(&t) {
                let list = if from_start {
                    &mut point.starting
                } else {
                    &mut point.ending
                };
                if let Some(pos) = list.iter().position(|x| *x == id) {
                    list.remove(pos);
                }
                if point.is_empty() {
                    self.points.remove(&t);
                }
            }
        };
        drop_point(span.start, true);
        drop_point(span.end, false);
    }

    pub fn points(&self) -> impl Iterator<Item = (Time, &TimePoint)> {
        self.points.iter().map(|(t, p)| (*t, p))
    }

    pub fn points_in(
        &self,
        from: Option<Time>,
        to: Option<Time>,
    ) -> impl Iterator<Item = (Time, &TimePoint)> {
        use std::ops::Bound;
        let lower = match from {
            Some(t) => Bound::Included(t),
            None => Bound::Unbounded,
        };
        let upper = match to {
            Some(t) => Bound::Excluded(t),
            None => Bound::Unbounded,
        };
        self.points.range((lower, upper)).map(|(t, p)| (*t, p))
    }

    pub fn first_t(&self) -> Option<Time> {
        self.points.keys().next().copied()
    }

    pub fn last_t(&self) -> Option<Time> {
        self.points.keys().next_back().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}
