use std::collections::BTreeMap;

/// Finite multiset with deterministic (sorted) iteration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset { counts: BTreeMap::new() }
    }
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, item: T, mult: usize) {
        if mult > 0 {
            *self.counts.entry(item).or_insert(0) += mult;
        }
    }

    pub fn count(&self, item: &T) -> usize {
        self.counts.get(item).copied().unwrap_or(0)
    }

    /// Distinct elements with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (&T, usize)> {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    /// Every element repeated according to its multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = &T> {
        self.counts.iter().flat_map(|(k, &v)| std::iter::repeat_n(k, v))
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Total size, counting multiplicity.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn filter(&self, mut keep: impl FnMut(&T) -> bool) -> Self
    where
        T: Clone,
    {
        let mut out = Multiset::new();
        for (k, v) in self.iter() {
            if keep(k) {
                out.insert(k.clone(), v);
            }
        }
        out
    }

    pub fn map<U: Ord>(&self, mut f: impl FnMut(&T) -> U) -> Multiset<U> {
        let mut out = Multiset::new();
        for (k, v) in self.iter() {
            out.insert(f(k), v);
        }
        out
    }
}

impl<T: Ord> FromIterator<(T, usize)> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = (T, usize)>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for (k, v) in iter {
            m.insert(k, v);
        }
        m
    }
}

impl<T: Ord> Extend<(T, usize)> for Multiset<T> {
    fn extend<I: IntoIterator<Item = (T, usize)>>(&mut self, iter: I) {
        for (k, v) in iter {
            self.insert(k, v);
        }
    }
}
