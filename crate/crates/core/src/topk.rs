//! Scored spans and a bounded best-k collection with a deterministic order.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

/// A 1-based inclusive span together with its chi-square score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredSpan {
    pub start: usize,
    pub end: usize,
    pub score: f64,
}

impl ScoredSpan {
    pub fn new(start: usize, end: usize, score: f64) -> Self {
        Self { start, end, score }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ranking order: higher score first, then smaller start, then smaller end.
    /// `Less` means `self` ranks ahead of `other`.
    pub fn rank_cmp(&self, other: &Self) -> Ordering {
        other
            .score
            .total_cmp(&self.score)
            .then(self.start.cmp(&other.start))
            .then(self.end.cmp(&other.end))
    }
}

/// Heap key where the greatest element is the best-ranked span.
#[derive(Debug, Clone, Copy)]
struct Ranked(ScoredSpan);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Ranked {}
impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.rank_cmp(&self.0)
    }
}

/// The `k` best distinct spans offered so far.
///
/// Internally a min-heap on rank, so the current worst entry is at the top and
/// a losing offer is rejected with one float comparison.
#[derive(Debug, Clone)]
pub struct TopK {
    capacity: usize,
    heap: BinaryHeap<Reverse<Ranked>>,
    members: HashSet<(usize, usize)>,
}

impl TopK {
    /// # Panics
    /// If `capacity` is zero.
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "TopK capacity must be at least 1");
        Self {
            capacity,
            heap: BinaryHeap::with_capacity(capacity.min(1 << 16) + 1),
            members: HashSet::new(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Worst retained entry, if any.
    pub fn worst(&self) -> Option<&ScoredSpan> {
        self.heap.peek().map(|r| &r.0 .0)
    }

    /// Offers a span; returns whether it was retained.
    #[inline]
    pub fn offer(&mut self, span: ScoredSpan) -> bool {
        if self.heap.len() == self.capacity {
            let worst = self.heap.peek().expect("non-empty at capacity").0 .0;
            if span.score < worst.score || span.rank_cmp(&worst) != Ordering::Less {
                return false;
            }
            if self.members.contains(&(span.start, span.end)) {
                return false;
            }
            let evicted = self.heap.pop().expect("non-empty at capacity").0 .0;
            self.members.remove(&(evicted.start, evicted.end));
        } else if self.members.contains(&(span.start, span.end)) {
            return false;
        }
        self.members.insert((span.start, span.end));
        self.heap.push(Reverse(Ranked(span)));
        true
    }

    /// Merges another collection into this one. The result is the same as if
    /// every span had been offered to a single collection.
    pub fn merge(&mut self, other: TopK) {
        for Reverse(Ranked(s)) in other.heap {
            self.offer(s);
        }
    }

    /// Entries in ranking order.
    pub fn into_sorted(self) -> Vec<ScoredSpan> {
        let mut v: Vec<ScoredSpan> = self.heap.into_iter().map(|r| r.0 .0).collect();
        v.sort_by(ScoredSpan::rank_cmp);
        v
    }

    pub fn to_sorted(&self) -> Vec<ScoredSpan> {
        self.clone().into_sorted()
    }
}
