use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing list of non-negative integers. Zero parts count as
/// parts, so `(0)` and the empty partition are different.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions with at most `max_len` parts, each part at most
/// `max_part`. Ordered by length, then lexicographically.
pub fn partitions_bounded(max_len: usize, max_part: u32) -> Vec<Partition> {
    fn extend(prefix: &mut Vec<u32>, len: usize, cap: u32, out: &mut Vec<Partition>) {
        if prefix.len() == len {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in 0..=cap {
            prefix.push(p);
            extend(prefix, len, p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for len in 0..=max_len {
        extend(&mut Vec::with_capacity(len), len, max_part, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Partition::new(vec![3, 3, 1, 0]).is_ok());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
        assert_eq!(
            serde_json::from_str::<Partition>("[2,1]").unwrap(),
            Partition::new(vec![2, 1]).unwrap()
        );
    }

    #[test]
    fn bounded_enumeration() {
        // at most one part, parts <= 4: empty plus (0)..(4)
        assert_eq!(partitions_bounded(1, 4).len(), 6);
        // at most two parts, parts <= 2: 1 + 3 + 6
        let all = partitions_bounded(2, 2);
        assert_eq!(all.len(), 10);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        assert_eq!(partitions_bounded(0, 9), vec![Partition::empty()]);
    }
}
