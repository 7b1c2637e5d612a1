//! Asymmetric and limited-magnitude distances, t-code checks and the
//! exhaustive asymmetric decoder.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::word::{CodeBook, Word};

/// Symbol sum `w(x)`; not the Hamming weight.
pub fn weight_w(x: &Word) -> u64 {
    symbol_sum(x.symbols())
}

pub fn symbol_sum(x: &[u8]) -> u64 {
    x.iter().map(|&s| s as u64).sum()
}

/// Number of nonzero symbols.
pub fn hamming_weight(x: &[u8]) -> usize {
    x.iter().filter(|&&s| s != 0).count()
}

pub fn hamming_distance(x: &[u8], y: &[u8]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

/// `N(x, y) = sum_i max(y_i - x_i, 0)`.
pub fn one_sided(x: &[u8], y: &[u8]) -> u32 {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| b.saturating_sub(a) as u32)
        .sum()
}

/// `max(N(x, y), N(y, x))` on raw symbol slices of equal length.
pub fn asym_delta(x: &[u8], y: &[u8]) -> u32 {
    debug_assert_eq!(x.len(), y.len());
    let (mut up, mut down) = (0u32, 0u32);
    for (&a, &b) in x.iter().zip(y) {
        if b > a {
            up += (b - a) as u32;
        } else {
            down += (a - b) as u32;
        }
    }
    up.max(down)
}

/// Both one-sided sums behind an asymmetric distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AsymDistance {
    /// `N(x, y)`
    pub forward: u32,
    /// `N(y, x)`
    pub backward: u32,
}

impl AsymDistance {
    pub fn delta(&self) -> u32 {
        self.forward.max(self.backward)
    }
}

fn check_same_alphabet(x: &Word, y: &Word) -> Result<()> {
    if x.alphabet() != y.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{} vs {}",
            x.alphabet(),
            y.alphabet()
        )));
    }
    Ok(())
}

pub fn asym_distance_detail(x: &Word, y: &Word) -> Result<AsymDistance> {
    check_same_alphabet(x, y)?;
    Ok(AsymDistance {
        forward: one_sided(x.symbols(), y.symbols()),
        backward: one_sided(y.symbols(), x.symbols()),
    })
}

pub fn asym_distance(x: &Word, y: &Word) -> Result<u32> {
    asym_distance_detail(x, y).map(|d| d.delta())
}

/// Pair of codeword indices realising a minimum distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosestPair {
    pub first: usize,
    pub second: usize,
    pub distance: u32,
}

fn closest_pair_by<F>(c: &CodeBook, dist: F) -> Result<ClosestPair>
where
    F: Fn(&[u8], &[u8]) -> u32 + Sync,
{
    if c.len() < 2 {
        return Err(Error::TooFewWords {
            needed: 2,
            got: c.len(),
        });
    }
    let words = c.raw();
    let best = (0..words.len() - 1)
        .into_par_iter()
        .filter_map(|i| {
            let x = &words[i];
            words[i + 1..]
                .iter()
                .enumerate()
                .map(|(k, y)| (dist(x, y), i, i + 1 + k))
                .min()
        })
        .min()
        .expect("at least one pair");
    Ok(ClosestPair {
        first: best.1,
        second: best.2,
        distance: best.0,
    })
}

/// Exhaustive minimum asymmetric distance; the witness pair is the
/// lexicographically first pair attaining it.
pub fn closest_asym_pair(c: &CodeBook) -> Result<ClosestPair> {
    closest_pair_by(c, asym_delta)
}

pub fn min_asym_distance(c: &CodeBook) -> Result<u32> {
    closest_asym_pair(c).map(|p| p.distance)
}

/// Whether every pair of distinct codewords has `Δ > t`. Codes with fewer
/// than two words are vacuously t-codes.
pub fn is_t_code(c: &CodeBook, t: u32) -> bool {
    let words = c.raw();
    !(0..words.len()).into_par_iter().any(|i| {
        let x = &words[i];
        words[i + 1..].iter().any(|y| asym_delta(x, y) <= t)
    })
}

/// Result of exhaustive asymmetric decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded(Word),
    /// Several codewords explain the received word; listed in code order.
    Ambiguous(Vec<Word>),
    Failure,
}

/// Finds the codewords `x` with `x >= received` coordinatewise and
/// `w(x - received) <= t`.
pub fn decode_asymmetric(c: &CodeBook, received: &Word, t: u32) -> Result<DecodeOutcome> {
    if received.alphabet() != c.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "received word over {}, code over {}",
            received.alphabet(),
            c.alphabet()
        )));
    }
    let y = received.symbols();
    let hits: Vec<usize> = (0..c.len())
        .filter(|&i| {
            let x = c.get(i);
            x.iter().zip(y).all(|(a, b)| a >= b) && one_sided(y, x) <= t
        })
        .collect();
    Ok(match hits.as_slice() {
        [] => DecodeOutcome::Failure,
        [i] => DecodeOutcome::Decoded(c.word(*i)),
        _ => DecodeOutcome::Ambiguous(hits.iter().map(|&i| c.word(i)).collect()),
    })
}

/// Limited-magnitude distance on raw slices over the uniform alphabet `q`.
///
/// Without wrap-around, coordinates farther apart than `ell` force `n + 1`.
/// With wrap-around, a coordinate counts for `x` when `(x_i - y_i) mod q` is
/// in `1..=ell`, for `y` when `(y_i - x_i) mod q` is, and any other nonzero
/// difference forces `n + 1`. Wrap-around needs `q > 2 * ell` so the two
/// classes cannot overlap.
pub fn d_ell_raw(x: &[u8], y: &[u8], q: u32, ell: u32, wrap: bool) -> u32 {
    let n = x.len() as u32;
    let (mut x_above, mut y_above) = (0u32, 0u32);
    for (&a, &b) in x.iter().zip(y) {
        let (a, b) = (a as u32, b as u32);
        if a == b {
            continue;
        }
        if wrap {
            let up = (a + q - b) % q;
            if up <= ell {
                x_above += 1;
            } else if q - up <= ell {
                y_above += 1;
            } else {
                return n + 1;
            }
        } else if a.abs_diff(b) > ell {
            return n + 1;
        } else if a > b {
            x_above += 1;
        } else {
            y_above += 1;
        }
    }
    x_above.max(y_above)
}

fn lm_alphabet(q: Option<u32>, ell: u32, wrap: bool) -> Result<u32> {
    let q = q.ok_or_else(|| Error::param("limited-magnitude distance needs a uniform alphabet"))?;
    if ell == 0 {
        return Err(Error::param("error magnitude must be at least 1"));
    }
    if wrap && q <= 2 * ell {
        return Err(Error::param(format!(
            "wrap-around needs q > 2*ell (q={q}, ell={ell})"
        )));
    }
    Ok(q)
}

pub fn d_ell_distance(x: &Word, y: &Word, ell: u32, wrap: bool) -> Result<u32> {
    check_same_alphabet(x, y)?;
    let q = lm_alphabet(x.alphabet().uniform_q(), ell, wrap)?;
    Ok(d_ell_raw(x.symbols(), y.symbols(), q, ell, wrap))
}

pub fn closest_d_ell_pair(c: &CodeBook, ell: u32, wrap: bool) -> Result<ClosestPair> {
    let q = lm_alphabet(c.alphabet().uniform_q(), ell, wrap)?;
    closest_pair_by(c, |x, y| d_ell_raw(x, y, q, ell, wrap))
}

/// Whether all distinct pairs have `d_ell >= t_tilde + 1`. At most `n`
/// coordinates can be in error, so `t_tilde` is capped at `n`.
pub fn is_lm_code(c: &CodeBook, t_tilde: u32, ell: u32, wrap: bool) -> Result<bool> {
    let q = lm_alphabet(c.alphabet().uniform_q(), ell, wrap)?;
    let t_tilde = t_tilde.min(c.length() as u32);
    let words = c.raw();
    Ok(!(0..words.len()).into_par_iter().any(|i| {
        let x = &words[i];
        words[i + 1..]
            .iter()
            .any(|y| d_ell_raw(x, y, q, ell, wrap) < t_tilde + 1)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q: u32, s: &str) -> Word {
        Word::from_digits(q, s).unwrap()
    }

    #[test]
    fn weight_is_symbol_sum() {
        assert_eq!(weight_w(&w(2, "0000")), 0);
        assert_eq!(weight_w(&w(3, "122")), 5);
        assert_eq!(weight_w(&w(2, "1100")), 2);
    }

    #[test]
    fn asym_distance_examples() {
        let x = w(2, "1100");
        assert_eq!(asym_distance(&x, &x).unwrap(), 0);
        assert_eq!(asym_distance(&x, &w(2, "0011")).unwrap(), 2);
        let d = asym_distance_detail(&w(2, "111"), &w(2, "000")).unwrap();
        assert_eq!((d.forward, d.backward, d.delta()), (0, 3, 3));
        assert!(asym_distance(&w(2, "11"), &w(2, "110")).is_err());
        assert!(asym_distance(&w(2, "11"), &w(3, "11")).is_err());
    }

    #[test]
    fn min_distance_and_t_code() {
        let c = CodeBook::from_digit_strings(2, &["000", "111"]).unwrap();
        assert_eq!(min_asym_distance(&c).unwrap(), 3);
        let c4 = CodeBook::from_digit_strings(2, &["0000", "1100", "0011", "1111"]).unwrap();
        assert!(is_t_code(&c4, 1));
        let bad = CodeBook::from_digit_strings(2, &["00", "01"]).unwrap();
        assert!(!is_t_code(&bad, 1));
        let one = CodeBook::from_digit_strings(2, &["01"]).unwrap();
        assert!(matches!(
            min_asym_distance(&one),
            Err(Error::TooFewWords { .. })
        ));
        assert!(is_t_code(&one, 5));
    }

    #[test]
    fn closest_pair_is_first_minimum() {
        let c = CodeBook::from_digit_strings(2, &["000", "011", "111"]).unwrap();
        let p = closest_asym_pair(&c).unwrap();
        assert_eq!((p.first, p.second, p.distance), (1, 2, 1));
    }

    #[test]
    fn decoder_examples() {
        let c = CodeBook::from_digit_strings(2, &["0000", "1100", "0011", "1111"]).unwrap();
        assert_eq!(
            decode_asymmetric(&c, &w(2, "0000"), 1).unwrap(),
            DecodeOutcome::Decoded(w(2, "0000"))
        );
        assert_eq!(
            decode_asymmetric(&c, &w(2, "0100"), 1).unwrap(),
            DecodeOutcome::Decoded(w(2, "1100"))
        );
        match decode_asymmetric(&c, &w(2, "0000"), 2).unwrap() {
            DecodeOutcome::Ambiguous(list) => assert_eq!(list.len(), 3),
            other => panic!("expected ambiguity, got {other:?}"),
        }
        let c2 = CodeBook::from_digit_strings(2, &["1111"]).unwrap();
        assert_eq!(
            decode_asymmetric(&c2, &w(2, "0011"), 1).unwrap(),
            DecodeOutcome::Failure
        );
        assert!(decode_asymmetric(&c, &w(2, "000"), 1).is_err());
    }

    #[test]
    fn d_ell_examples() {
        let x = w(5, "20");
        let y = Word::uniform(5, vec![1, 4]).unwrap();
        assert_eq!(d_ell_distance(&x, &x, 1, false).unwrap(), 0);
        assert_eq!(d_ell_distance(&x, &y, 1, false).unwrap(), 3);
        assert_eq!(d_ell_distance(&x, &y, 1, true).unwrap(), 2);
        assert!(d_ell_distance(&w(4, "00"), &w(4, "21"), 2, true).is_err());
        assert!(d_ell_distance(&w(3, "00"), &w(3, "21"), 1, true).is_ok());
    }

    #[test]
    fn lm_code_examples() {
        let c0 = CodeBook::from_digit_strings(5, &["00", "11", "22", "33", "44"]).unwrap();
        assert!(is_lm_code(&c0, 1, 1, true).unwrap());
        let bad = CodeBook::from_digit_strings(3, &["00", "01"]).unwrap();
        assert!(!is_lm_code(&bad, 1, 1, true).unwrap());
        let mixed = CodeBook::new(
            std::sync::Arc::new(crate::AlphabetSpec::new(vec![2, 3]).unwrap()),
            vec![vec![0, 0]],
        )
        .unwrap();
        assert!(is_lm_code(&mixed, 1, 1, false).is_err());
    }
}
