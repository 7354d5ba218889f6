use serde::{Serialize, Serializer};

use super::{ArcId, Digraph, HostId};
use crate::error::{Error, Result};

/// Bitset over the arc ids of one host digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcSet {
    host: HostId,
    len: usize,
    words: Vec<u64>,
}

impl ArcSet {
    pub fn new(d: &Digraph) -> Self {
        ArcSet {
            host: d.host(),
            len: d.m(),
            words: vec![0; d.m().div_ceil(64)],
        }
    }

    pub fn from_ids(d: &Digraph, ids: impl IntoIterator<Item = ArcId>) -> Result<Self> {
        let mut s = ArcSet::new(d);
        for a in ids {
            if a >= s.len {
                return Err(Error::ForeignArc(a));
            }
            s.insert(a);
        }
        Ok(s)
    }

    pub fn host(&self) -> HostId {
        self.host
    }

    /// Number of arcs in the host.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn check_host(&self, host: HostId) -> Result<()> {
        if self.host == host {
            Ok(())
        } else {
            Err(Error::HostMismatch)
        }
    }

    pub fn insert(&mut self, a: ArcId) {
        assert!(a < self.len, "arc {a} outside host of {} arcs", self.len);
        self.words[a / 64] |= 1 << (a % 64);
    }

    pub fn remove(&mut self, a: ArcId) {
        if a < self.len {
            self.words[a / 64] &= !(1 << (a % 64));
        }
    }

    pub fn contains(&self, a: ArcId) -> bool {
        a < self.len && self.words[a / 64] >> (a % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<ArcId> {
        self.iter().collect()
    }

    fn zip(&self, other: &ArcSet, f: impl Fn(u64, u64) -> u64) -> Result<ArcSet> {
        other.check_host(self.host)?;
        Ok(ArcSet {
            host: self.host,
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &ArcSet) -> Result<ArcSet> {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ArcSet) -> Result<ArcSet> {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ArcSet) -> Result<ArcSet> {
        self.zip(other, |a, b| a & !b)
    }

    pub fn is_disjoint(&self, other: &ArcSet) -> Result<bool> {
        Ok(self.intersection(other)?.is_empty())
    }
}

impl Serialize for ArcSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Non-negative integer weights on the arcs of one host digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcWeightVector {
    host: HostId,
    w: Vec<u32>,
}

impl ArcWeightVector {
    pub fn new(d: &Digraph, values: Vec<i64>) -> Result<Self> {
        if values.len() != d.m() {
            return Err(Error::InvalidParams(format!(
                "{} weights for {} arcs",
                values.len(),
                d.m()
            )));
        }
        let w = values
            .iter()
            .enumerate()
            .map(|(arc, &value)| {
                if (0..=i32::MAX as i64).contains(&value) {
                    Ok(value as u32)
                } else {
                    Err(Error::BadWeight { arc, value })
                }
            })
            .collect::<Result<_>>()?;
        Ok(ArcWeightVector { host: d.host(), w })
    }

    pub fn constant(d: &Digraph, c: i64) -> Result<Self> {
        Self::new(d, vec![c; d.m()])
    }

    pub fn indicator(d: &Digraph, s: &ArcSet) -> Result<Self> {
        s.check_host(d.host())?;
        Ok(ArcWeightVector {
            host: d.host(),
            w: (0..d.m()).map(|a| s.contains(a) as u32).collect(),
        })
    }

    pub fn host(&self) -> HostId {
        self.host
    }

    pub fn check_host(&self, host: HostId) -> Result<()> {
        if self.host == host {
            Ok(())
        } else {
            Err(Error::HostMismatch)
        }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn get(&self, a: ArcId) -> i64 {
        self.w[a] as i64
    }

    pub fn values(&self) -> Vec<i64> {
        self.w.iter().map(|&x| x as i64).collect()
    }

    /// Arcs of positive weight.
    pub fn support(&self, d: &Digraph) -> Result<ArcSet> {
        self.check_host(d.host())?;
        ArcSet::from_ids(d, (0..self.w.len()).filter(|&a| self.w[a] > 0))
    }

    pub fn total(&self) -> i64 {
        self.w.iter().map(|&x| x as i64).sum()
    }
}

impl Serialize for ArcWeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.w.iter())
    }
}
