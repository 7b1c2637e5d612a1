//! Coordinate pairings that drive the binary/ternary maps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Disjoint, ordered coordinate pairs plus an optional leftover bit.
///
/// Indices are 0-based. Within a pair `(i, j)` bit `i` is read first, so the
/// orientation matters when folding (`x_i x_j = 01` gives 1, `10` gives 2).
/// The order of `pairs` fixes the order of the ternary coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pairing {
    n: usize,
    pairs: Vec<(usize, usize)>,
    singleton: Option<usize>,
}

impl Pairing {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>, singleton: Option<usize>) -> Result<Self> {
        if singleton.is_some() != (n % 2 == 1) {
            return Err(Error::param(format!(
                "a pairing of {n} coordinates needs {} singleton",
                if n % 2 == 1 { "exactly one" } else { "no" }
            )));
        }
        let mut used = vec![false; n];
        let all = pairs.iter().flat_map(|&(i, j)| [i, j]).chain(singleton);
        for i in all {
            if i >= n {
                return Err(Error::param(format!(
                    "coordinate {} outside length {n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut used[i], true) {
                return Err(Error::param(format!("coordinate {} used twice", i + 1)));
            }
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(Error::param(format!(
                "coordinate {} is not covered",
                missing + 1
            )));
        }
        Ok(Self {
            n,
            pairs,
            singleton,
        })
    }

    /// Same as [`Pairing::new`] with 1-based indices.
    pub fn from_one_based(
        n: usize,
        pairs: &[(usize, usize)],
        singleton: Option<usize>,
    ) -> Result<Self> {
        let shift = |i: usize| {
            i.checked_sub(1)
                .ok_or_else(|| Error::param("coordinates are numbered from 1"))
        };
        let pairs = pairs
            .iter()
            .map(|&(i, j)| Ok((shift(i)?, shift(j)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, pairs, singleton.map(shift).transpose()?)
    }

    /// Adjacent pairs; for odd `n` the leading coordinate is the singleton.
    pub fn identity(n: usize) -> Self {
        let off = n % 2;
        let pairs = (0..n / 2).map(|j| (off + 2 * j, off + 2 * j + 1)).collect();
        Self {
            n,
            pairs,
            singleton: (off == 1).then_some(0),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn singleton(&self) -> Option<usize> {
        self.singleton
    }

    /// Length of the folded word (singleton bit included).
    pub fn folded_len(&self) -> usize {
        self.pairs.len() + usize::from(self.singleton.is_some())
    }

    /// The same pairing with pair `k` read in the opposite direction.
    pub fn flipped(&self, k: usize) -> Self {
        let mut p = self.clone();
        let (i, j) = p.pairs[k];
        p.pairs[k] = (j, i);
        p
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(i, j)| format!("({},{})", i + 1, j + 1))
            .chain(self.singleton.map(|s| format!("[{}]", s + 1)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}
