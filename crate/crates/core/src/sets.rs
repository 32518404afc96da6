//! Bitset-backed vertex and edge sets.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

/// Dense vertex index into a [`crate::graph::FiniteGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

/// Dense edge index into a [`crate::graph::FiniteGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

macro_rules! index_set {
    ($name:ident, $id:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            bits: FixedBitSet,
        }

        impl $name {
            /// Empty set over a universe of `len` indices.
            pub fn new(len: usize) -> Self {
                Self { bits: FixedBitSet::with_capacity(len) }
            }

            /// The full universe.
            pub fn full(len: usize) -> Self {
                let mut bits = FixedBitSet::with_capacity(len);
                bits.insert_range(..);
                Self { bits }
            }

            pub fn from_ids<I: IntoIterator<Item = $id>>(len: usize, ids: I) -> Self {
                let mut s = Self::new(len);
                for id in ids {
                    s.insert(id);
                }
                s
            }

            /// Size of the universe, not the number of members.
            #[inline]
            pub fn universe(&self) -> usize {
                self.bits.len()
            }

            #[inline]
            pub fn contains(&self, id: $id) -> bool {
                self.bits.contains(id.index())
            }

            #[inline]
            pub fn insert(&mut self, id: $id) -> bool {
                let had = self.bits.contains(id.index());
                self.bits.insert(id.index());
                !had
            }

            #[inline]
            pub fn remove(&mut self, id: $id) {
                self.bits.set(id.index(), false);
            }

            pub fn len(&self) -> usize {
                self.bits.count_ones(..)
            }

            pub fn is_empty(&self) -> bool {
                self.bits.is_clear()
            }

            pub fn iter(&self) -> impl Iterator<Item = $id> + '_ {
                self.bits.ones().map(|i| $id(i as u32))
            }

            pub fn to_vec(&self) -> Vec<$id> {
                self.iter().collect()
            }

            pub fn union_with(&mut self, other: &Self) {
                self.bits.union_with(&other.bits);
            }

            pub fn intersect_with(&mut self, other: &Self) {
                self.bits.intersect_with(&other.bits);
            }

            pub fn difference_with(&mut self, other: &Self) {
                self.bits.difference_with(&other.bits);
            }

            pub fn union(&self, other: &Self) -> Self {
                let mut s = self.clone();
                s.union_with(other);
                s
            }

            pub fn intersection(&self, other: &Self) -> Self {
                let mut s = self.clone();
                s.intersect_with(other);
                s
            }

            pub fn difference(&self, other: &Self) -> Self {
                let mut s = self.clone();
                s.difference_with(other);
                s
            }

            pub fn complement(&self) -> Self {
                let mut bits = self.bits.clone();
                bits.toggle_range(..);
                Self { bits }
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.bits.is_subset(&other.bits)
            }

            pub fn is_disjoint(&self, other: &Self) -> bool {
                self.bits.is_disjoint(&other.bits)
            }

            pub fn intersection_len(&self, other: &Self) -> usize {
                self.bits.intersection_count(&other.bits)
            }

            pub fn clear(&mut self) {
                self.bits.clear();
            }
        }
    };
}

index_set!(VertexSet, VertexId);
index_set!(EdgeSet, EdgeId);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_ids(10, [VertexId(1), VertexId(3), VertexId(5)]);
        let b = VertexSet::from_ids(10, [VertexId(3), VertexId(4)]);
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.intersection(&b).to_vec(), vec![VertexId(3)]);
        assert_eq!(a.difference(&b).len(), 2);
        assert_eq!(a.complement().len(), 7);
        assert!(a.intersection(&b).is_subset(&a));
        assert_eq!(a.intersection_len(&b), 1);
        assert_eq!(EdgeSet::full(6).len(), 6);
    }
}
