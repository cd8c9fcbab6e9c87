use rand::Rng;

use crate::radio::StateVector;

/// One stored interaction: the state observed, the action taken, the reward
/// received, and the state observed next.
#[derive(Clone, Debug)]
pub struct Transition {
    pub state: StateVector,
    pub action: usize,
    pub reward: f64,
    pub next_state: StateVector,
}

/// Fixed-capacity ring buffer of the most recent transitions; once full,
/// every insertion evicts the oldest entry.
#[derive(Clone, Debug)]
pub struct ReplayMemory {
    entries: Vec<Transition>,
    capacity: usize,
    head: usize,
    inserted: u64,
}

impl ReplayMemory {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "replay capacity must be >= 1");
        ReplayMemory {
            entries: Vec::with_capacity(capacity),
            capacity,
            head: 0,
            inserted: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total insertions over the buffer's lifetime.
    pub fn inserted(&self) -> u64 {
        self.inserted
    }

    pub fn push(&mut self, transition: Transition) {
        if self.entries.len() < self.capacity {
            self.entries.push(transition);
        } else {
            self.entries[self.head] = transition;
            self.head = (self.head + 1) % self.capacity;
        }
        self.inserted += 1;
    }

    pub fn get(&self, index: usize) -> &Transition {
        &self.entries[index]
    }

    /// Contents in insertion order, oldest first.
    pub fn iter_ordered(&self) -> impl Iterator<Item = &Transition> {
        let (newer, older) = self.entries.split_at(self.head);
        older.iter().chain(newer.iter())
    }

    /// `amount` distinct indices drawn uniformly without replacement.
    /// Panics if `amount` exceeds the current size.
    pub fn sample_indices(&self, rng: &mut impl Rng, amount: usize) -> Vec<usize> {
        assert!(
            amount <= self.entries.len(),
            "cannot sample {amount} from {} stored transitions",
            self.entries.len()
        );
        rand::seq::index::sample(rng, self.entries.len(), amount).into_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{rng_stream, stream};

    fn transition(tag: f64) -> Transition {
        Transition {
            state: StateVector { rss: vec![tag] },
            action: 0,
            reward: 0.0,
            next_state: StateVector { rss: vec![tag + 0.5] },
        }
    }

    #[test]
    fn evicts_oldest_first_and_never_exceeds_capacity() {
        let mut memory = ReplayMemory::new(3);
        for i in 0..7 {
            memory.push(transition(i as f64));
            assert!(memory.len() <= 3);
        }
        let tags: Vec<f64> = memory.iter_ordered().map(|t| t.state.rss[0]).collect();
        assert_eq!(tags, vec![4.0, 5.0, 6.0]);
        assert_eq!(memory.inserted(), 7);
    }

    #[test]
    fn insertion_order_is_preserved_before_wraparound() {
        let mut memory = ReplayMemory::new(4);
        for i in 0..3 {
            memory.push(transition(i as f64));
        }
        let tags: Vec<f64> = memory.iter_ordered().map(|t| t.state.rss[0]).collect();
        assert_eq!(tags, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn sampled_indices_are_distinct_and_in_range() {
        let mut memory = ReplayMemory::new(50);
        for i in 0..50 {
            memory.push(transition(i as f64));
        }
        let mut rng = rng_stream(3, stream::TRAIN);
        for _ in 0..20 {
            let mut indices = memory.sample_indices(&mut rng, 32);
            assert_eq!(indices.len(), 32);
            assert!(indices.iter().all(|&i| i < 50));
            indices.sort_unstable();
            indices.dedup();
            assert_eq!(indices.len(), 32, "indices must be distinct");
        }
    }
}
