//! Words over per-coordinate alphabets and duplicate-free code books.
//!
//! Every coordinate `i` carries its own alphabet `{0, .., q_i - 1}`, which is
//! how the mixed binary/ternary words fed to the odd-length constructions are
//! represented. Symbols are stored as `u8`, so alphabet sizes are limited to
//! 256.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported alphabet size.
pub const MAX_Q: u32 = 256;

/// Per-coordinate alphabet sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphabetSpec {
    sizes: Vec<u32>,
}

impl AlphabetSpec {
    pub fn new(sizes: Vec<u32>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidAlphabet("length must be at least 1".into()));
        }
        if let Some((i, &q)) = sizes
            .iter()
            .enumerate()
            .find(|&(_, &q)| !(2..=MAX_Q).contains(&q))
        {
            return Err(Error::InvalidAlphabet(format!(
                "coordinate {i} has size {q}, expected 2..={MAX_Q}"
            )));
        }
        Ok(Self { sizes })
    }

    pub fn uniform(q: u32, n: usize) -> Result<Self> {
        Self::new(vec![q; n])
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn size(&self, i: usize) -> u32 {
        self.sizes[i]
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// The common alphabet size, if all coordinates share one.
    pub fn uniform_q(&self) -> Option<u32> {
        let q = self.sizes[0];
        self.sizes.iter().all(|&s| s == q).then_some(q)
    }

    /// Number of words in the ambient space, saturating at `u128::MAX`.
    pub fn space_size(&self) -> u128 {
        self.sizes
            .iter()
            .try_fold(1u128, |acc, &q| acc.checked_mul(q as u128))
            .unwrap_or(u128::MAX)
    }

    /// Whether symbols of this alphabet are written as single digits.
    pub fn digit_encoded(&self) -> bool {
        self.sizes.iter().all(|&q| q <= 10)
    }

    pub fn check_symbols(&self, symbols: &[u8]) -> Result<()> {
        if symbols.len() != self.len() {
            return Err(Error::AlphabetMismatch(format!(
                "word has length {}, alphabet has length {}",
                symbols.len(),
                self.len()
            )));
        }
        for (i, (&s, &q)) in symbols.iter().zip(&self.sizes).enumerate() {
            if s as u32 >= q {
                return Err(Error::SymbolOutOfRange {
                    coordinate: i,
                    symbol: s as u32,
                    q,
                });
            }
        }
        Ok(())
    }

    /// Formats a symbol slice the way code files do: digits when every
    /// alphabet fits in one digit, comma-separated integers otherwise.
    pub fn format_symbols(&self, symbols: &[u8]) -> String {
        if self.digit_encoded() {
            symbols.iter().map(|&s| char::from(b'0' + s)).collect()
        } else {
            let parts: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
            parts.join(",")
        }
    }

    /// Parses symbols written by [`AlphabetSpec::format_symbols`].
    pub fn parse_symbols(&self, text: &str) -> Result<Vec<u8>> {
        let text = text.trim();
        let symbols: Vec<u8> = if text.contains(',') || !self.digit_encoded() {
            text.split(',')
                .map(|t| {
                    let t = t.trim();
                    t.parse::<u32>()
                        .ok()
                        .filter(|&v| v < MAX_Q)
                        .map(|v| v as u8)
                        .ok_or_else(|| Error::param(format!("bad symbol '{t}'")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::param(format!("bad symbol '{c}'")))
                })
                .collect::<Result<_>>()?
        };
        self.check_symbols(&symbols)?;
        Ok(symbols)
    }
}

impl fmt::Display for AlphabetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.uniform_q() {
            Some(q) => write!(f, "{q}"),
            None => {
                let parts: Vec<String> = self.sizes.iter().map(|q| q.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// An immutable word, validated against its alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<AlphabetSpec>,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Arc<AlphabetSpec>, symbols: Vec<u8>) -> Result<Self> {
        alphabet.check_symbols(&symbols)?;
        Ok(Self { alphabet, symbols })
    }

    /// Word over the uniform alphabet `q^len`.
    pub fn uniform(q: u32, symbols: Vec<u8>) -> Result<Self> {
        let alphabet = Arc::new(AlphabetSpec::uniform(q, symbols.len())?);
        Self::new(alphabet, symbols)
    }

    /// Parses a digit string such as `"0112"` over the uniform alphabet `q`.
    pub fn from_digits(q: u32, digits: &str) -> Result<Self> {
        let alphabet = Arc::new(AlphabetSpec::uniform(q, digits.trim().chars().count())?);
        let symbols = alphabet.parse_symbols(digits)?;
        Ok(Self { alphabet, symbols })
    }

    pub fn parse(alphabet: Arc<AlphabetSpec>, text: &str) -> Result<Self> {
        let symbols = alphabet.parse_symbols(text)?;
        Ok(Self { alphabet, symbols })
    }

    pub(crate) fn from_parts_unchecked(alphabet: Arc<AlphabetSpec>, symbols: Vec<u8>) -> Self {
        debug_assert!(alphabet.check_symbols(&symbols).is_ok());
        Self { alphabet, symbols }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn alphabet(&self) -> &Arc<AlphabetSpec> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.format_symbols(&self.symbols))
    }
}

/// A duplicate-free set of words over a shared alphabet profile.
///
/// Words are kept in lexicographic order of their symbol sequences, so
/// iteration and every derived output are reproducible.
#[derive(Debug, Clone)]
pub struct CodeBook {
    alphabet: Arc<AlphabetSpec>,
    words: Vec<Vec<u8>>,
    name: Option<String>,
    metadata: BTreeMap<String, String>,
}

impl CodeBook {
    pub fn empty(alphabet: Arc<AlphabetSpec>) -> Self {
        Self {
            alphabet,
            words: Vec::new(),
            name: None,
            metadata: BTreeMap::new(),
        }
    }

    /// Builds a code book, rejecting duplicate words.
    pub fn new(alphabet: Arc<AlphabetSpec>, mut words: Vec<Vec<u8>>) -> Result<Self> {
        for w in &words {
            alphabet.check_symbols(w)?;
        }
        words.sort_unstable();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateWord(alphabet.format_symbols(&pair[0])));
        }
        Ok(Self {
            words,
            ..Self::empty(alphabet)
        })
    }

    /// Builds a code book from possibly repeated words; duplicates collapse.
    pub fn collect<I>(alphabet: Arc<AlphabetSpec>, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u8>>,
    {
        let mut words: Vec<Vec<u8>> = words.into_iter().collect();
        for w in &words {
            alphabet.check_symbols(w)?;
        }
        words.sort_unstable();
        words.dedup();
        Ok(Self {
            words,
            ..Self::empty(alphabet)
        })
    }

    /// Uniform-alphabet code book from digit strings, e.g. `["000", "111"]`.
    pub fn from_digit_strings<S: AsRef<str>>(q: u32, words: &[S]) -> Result<Self> {
        let n = words
            .first()
            .map(|w| w.as_ref().trim().chars().count())
            .ok_or_else(|| Error::param("cannot infer length from an empty word list"))?;
        let alphabet = Arc::new(AlphabetSpec::uniform(q, n)?);
        let parsed = words
            .iter()
            .map(|w| alphabet.parse_symbols(w.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, parsed)
    }

    /// Code book from words that are already sorted, unique and valid.
    pub(crate) fn from_sorted_unchecked(alphabet: Arc<AlphabetSpec>, words: Vec<Vec<u8>>) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        Self {
            words,
            ..Self::empty(alphabet)
        }
    }

    pub fn alphabet(&self) -> &Arc<AlphabetSpec> {
        &self.alphabet
    }

    /// Code length `n`.
    pub fn length(&self) -> usize {
        self.alphabet.len()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.words.iter().map(Vec::as_slice)
    }

    pub fn get(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    pub fn word(&self, i: usize) -> Word {
        Word::from_parts_unchecked(self.alphabet.clone(), self.words[i].clone())
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(|i| self.word(i))
    }

    pub(crate) fn raw(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn contains(&self, symbols: &[u8]) -> bool {
        self.words
            .binary_search_by(|w| w.as_slice().cmp(symbols))
            .is_ok()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.insert(key.into(), value.into());
    }

    /// Reorders coordinates: output coordinate `j` is input coordinate `perm[j]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<CodeBook> {
        let n = self.length();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::param(format!(
                "not a permutation of {n} coordinates"
            )));
        }
        let alphabet = Arc::new(AlphabetSpec::new(
            perm.iter().map(|&p| self.alphabet.size(p)).collect(),
        )?);
        let words = self
            .words
            .iter()
            .map(|w| perm.iter().map(|&p| w[p]).collect());
        CodeBook::collect(alphabet, words)
    }

    /// Same word set, regardless of name and metadata.
    pub fn same_words(&self, other: &CodeBook) -> bool {
        self.alphabet == other.alphabet && self.words == other.words
    }
}

impl PartialEq for CodeBook {
    fn eq(&self, other: &Self) -> bool {
        self.same_words(other) && self.name == other.name && self.metadata == other.metadata
    }
}

impl Eq for CodeBook {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_validation() {
        assert!(AlphabetSpec::new(vec![]).is_err());
        assert!(AlphabetSpec::new(vec![2, 1]).is_err());
        assert!(AlphabetSpec::new(vec![2, 257]).is_err());
        let mixed = AlphabetSpec::new(vec![2, 3, 3]).unwrap();
        assert_eq!(mixed.uniform_q(), None);
        assert_eq!(mixed.space_size(), 18);
        assert_eq!(mixed.to_string(), "2,3,3");
    }

    #[test]
    fn word_rejects_out_of_range() {
        assert!(Word::from_digits(3, "0300").is_err());
        let w = Word::from_digits(3, "0120").unwrap();
        assert_eq!(w.symbols(), &[0, 1, 2, 0]);
        assert_eq!(w.to_string(), "0120");
    }

    #[test]
    fn wide_alphabets_use_commas() {
        let w = Word::uniform(12, vec![11, 0, 3]).unwrap();
        assert_eq!(w.to_string(), "11,0,3");
        let back = Word::parse(w.alphabet().clone(), "11,0,3").unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn codebook_is_sorted_and_rejects_duplicates() {
        let c = CodeBook::from_digit_strings(2, &["11", "00", "10"]).unwrap();
        let listed: Vec<&[u8]> = c.iter().collect();
        assert_eq!(listed, vec![&[0u8, 0][..], &[1, 0], &[1, 1]]);
        assert!(c.contains(&[1, 0]));
        assert!(!c.contains(&[0, 1]));
        assert!(matches!(
            CodeBook::from_digit_strings(2, &["11", "11"]),
            Err(Error::DuplicateWord(_))
        ));
    }

    #[test]
    fn permute_coordinates_moves_columns() {
        let c = CodeBook::from_digit_strings(3, &["012", "120"]).unwrap();
        let p = c.permute_coordinates(&[2, 0, 1]).unwrap();
        assert!(p.contains(&[2, 0, 1]));
        assert!(p.contains(&[0, 1, 2]));
        assert!(c.permute_coordinates(&[0, 0, 1]).is_err());
    }
}
