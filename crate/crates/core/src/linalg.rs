//! Exact sparse row echelon forms over `Q`.

use std::collections::BTreeMap;
use std::ops::Bound;

use num::Zero;

use crate::rational::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

/// Row echelon basis; each stored row has leading (smallest) key 1.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        let mut lower: Bound<K> = Bound::Unbounded;
        loop {
            let next = v
                .range((lower.clone(), Bound::Unbounded))
                .map(|(k, _)| k)
                .find(|k| self.rows.contains_key(*k))
                .cloned();
            let Some(k) = next else { break };
            let c = v[&k].clone();
            for (key, val) in &self.rows[&k] {
                let e = v.entry(key.clone()).or_insert_with(Q::zero);
                *e -= &c * val;
                if e.is_zero() {
                    v.remove(key);
                }
            }
            lower = Bound::Excluded(k);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let row = r.into_iter().map(|(k, x)| (k, x / &c)).collect();
        self.rows.insert(lead, row);
        true
    }
}
