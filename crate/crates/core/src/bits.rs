//! Small fixed-capacity bit sets used for tight-set and ancestor tracking.

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct RowSet {
    words: Vec<u64>,
}

impl RowSet {
    pub fn new(capacity: usize) -> Self {
        RowSet {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn singleton(capacity: usize, index: usize) -> Self {
        let mut set = RowSet::new(capacity);
        set.insert(index);
        set
    }

    pub fn insert(&mut self, index: usize) {
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub fn intersection(&self, other: &RowSet) -> RowSet {
        RowSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &RowSet) -> RowSet {
        RowSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn is_superset_of(&self, other: &RowSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}
