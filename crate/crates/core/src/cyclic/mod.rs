//! Rotation orbits of ternary words and the compatibility relation used to
//! assemble shift-closed `T`-channel 1-codes from them.

mod search;
mod tables;

pub use search::{
    search_cyclic, search_extended, ExtendedSearchResult, SearchConfig, SearchResult, Strategy,
};
pub use tables::{
    builtin_table_generators, orbit_closure, table3_code, table4_parts, TABLE3_GENERATORS,
    TABLE4_GENERATORS,
};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::channel::{make_channel, ChannelGraph, ChannelKind};
use crate::error::{Error, Result};
use crate::word::{AlphabetSpec, Word};

/// Largest length for which all `3^m` words are enumerated.
pub const MAX_ORBIT_LENGTH: usize = 13;

/// A rotation class of ternary words of length `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orbit {
    representative: Vec<u8>,
    members: Vec<Vec<u8>>,
    weight_score: u64,
}

impl Orbit {
    /// The orbit containing `word`.
    pub fn of(word: &[u8]) -> Self {
        let m = word.len();
        let mut members: Vec<Vec<u8>> = (0..m.max(1))
            .map(|s| word[s..].iter().chain(&word[..s]).copied().collect())
            .collect();
        members.sort_unstable();
        members.dedup();
        let zeros = word.iter().filter(|&&s| s == 0).count() as u32;
        Self {
            representative: members[0].clone(),
            weight_score: members.len() as u64 * (1u64 << zeros),
            members,
        }
    }

    pub fn length(&self) -> usize {
        self.representative.len()
    }

    /// Lexicographically least rotation.
    pub fn representative(&self) -> &[u8] {
        &self.representative
    }

    pub fn representative_word(&self) -> Word {
        Word::from_parts_unchecked(
            Arc::new(AlphabetSpec::uniform(3, self.length()).expect("m >= 1")),
            self.representative.clone(),
        )
    }

    /// Distinct rotations, sorted.
    pub fn members(&self) -> &[Vec<u8>] {
        &self.members
    }

    /// `sum over members of 2^(m - wgt)`: the orbit's share of the binary image.
    pub fn weight_score(&self) -> u64 {
        self.weight_score
    }
}

fn check_length(m: usize) -> Result<()> {
    if m == 0 || m > MAX_ORBIT_LENGTH {
        return Err(Error::param(format!(
            "orbit length must be in 1..={MAX_ORBIT_LENGTH}, got {m}"
        )));
    }
    Ok(())
}

pub(crate) fn index_of(word: &[u8]) -> usize {
    word.iter().fold(0usize, |acc, &s| acc * 3 + s as usize)
}

pub(crate) fn word_of(mut index: usize, m: usize) -> Vec<u8> {
    let mut w = vec![0u8; m];
    for k in (0..m).rev() {
        w[k] = (index % 3) as u8;
        index /= 3;
    }
    w
}

/// All rotation classes of `{0,1,2}^m`, ordered by representative.
pub fn enumerate_orbits(m: usize) -> Result<Vec<Orbit>> {
    check_length(m)?;
    let total = 3usize.pow(m as u32);
    Ok((0..total)
        .map(|i| word_of(i, m))
        .filter(|w| (1..m).all(|s| w[s..].iter().chain(&w[..s]).cmp(w.iter()).is_ge()))
        .map(|w| Orbit::of(&w))
        .collect())
}

fn t_channel() -> ChannelGraph {
    make_channel(ChannelKind::T, 3).expect("T is defined for q = 3")
}

/// Radius-1 `T^m` ball of `word`, as word indices.
pub(crate) fn t_ball_indices(word: &[u8], t: &ChannelGraph) -> Vec<usize> {
    let m = word.len();
    let base = index_of(word);
    let mut out = vec![base];
    for (i, &s) in word.iter().enumerate() {
        let place = 3usize.pow((m - 1 - i) as u32);
        for &b in t.successors(s) {
            out.push(base - s as usize * place + b as usize * place);
        }
    }
    out
}

/// True iff radius-1 `T^m` balls of distinct words from the union of both
/// orbits are pairwise disjoint (`o1 == o2` tests self-compatibility).
pub fn orbits_compatible(o1: &Orbit, o2: &Orbit, m: usize) -> bool {
    if o1.length() != m || o2.length() != m {
        return false;
    }
    let t = t_channel();
    let mut words: Vec<&[u8]> = o1.members().iter().map(Vec::as_slice).collect();
    if o1 != o2 {
        words.extend(o2.members().iter().map(Vec::as_slice));
    }
    let mut owner = std::collections::HashMap::new();
    for (k, w) in words.iter().enumerate() {
        for idx in t_ball_indices(w, &t) {
            if let Some(&j) = owner.get(&idx) {
                if j != k {
                    return false;
                }
            } else {
                owner.insert(idx, k);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(s: &str) -> Orbit {
        Orbit::of(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>())
    }

    #[test]
    fn burnside_counts() {
        assert_eq!(enumerate_orbits(1).unwrap().len(), 3);
        assert_eq!(enumerate_orbits(4).unwrap().len(), 24);
        assert_eq!(enumerate_orbits(6).unwrap().len(), 130);
        assert!(enumerate_orbits(14).is_err());
    }

    #[test]
    fn rotations() {
        let o = orbit("0112");
        let members: Vec<Vec<u8>> = vec![
            vec![0, 1, 1, 2],
            vec![1, 1, 2, 0],
            vec![1, 2, 0, 1],
            vec![2, 0, 1, 1],
        ];
        assert_eq!(o.members(), members.as_slice());
        assert_eq!(o.representative(), &[0, 1, 1, 2]);
        assert_eq!(o.weight_score(), 8);
        assert_eq!(orbit("1201"), o);
        assert_eq!(orbit("000").weight_score(), 8);
        assert_eq!(orbit("111").members().len(), 1);
    }

    #[test]
    fn compatibility_examples() {
        assert!(orbits_compatible(&orbit("000"), &orbit("111"), 3));
        assert!(orbits_compatible(&orbit("111"), &orbit("122"), 3));
        assert!(!orbits_compatible(&orbit("11"), &orbit("12"), 2));
        assert!(orbits_compatible(&orbit("122"), &orbit("122"), 3));
    }
}
