//! The bit-pair/trit maps and the concatenated 1-code constructions built on
//! them.
//!
//! Folding reads a pair `(i, j)` as `x_i x_j` and sends `00, 11 -> 0`,
//! `01 -> 1`, `10 -> 2`; expanding inverts it with `0 -> {00, 11}`. A
//! singleton coordinate is carried through as a bit in front of the trits.

use std::sync::Arc;

use rayon::prelude::*;

use crate::channel::{corrects_t_errors, ChannelGraph, ChannelKind, Counting, ProductChannel};
use crate::channel::{make_channel, DEFAULT_BALL_CAP};
use crate::error::{Error, Result};
use crate::pairing::Pairing;
use crate::word::{AlphabetSpec, CodeBook};

fn fold_pair(a: u8, b: u8) -> u8 {
    match (a, b) {
        (0, 1) => 1,
        (1, 0) => 2,
        _ => 0,
    }
}

fn require_binary(c: &CodeBook) -> Result<()> {
    if c.alphabet().uniform_q() != Some(2) {
        return Err(Error::AlphabetMismatch(format!(
            "expected a binary code, got alphabet {}",
            c.alphabet()
        )));
    }
    Ok(())
}

fn check_pairing_len(c: &CodeBook, p: &Pairing) -> Result<()> {
    if p.len() != c.length() {
        return Err(Error::param(format!(
            "pairing covers {} coordinates but the code has length {}",
            p.len(),
            c.length()
        )));
    }
    Ok(())
}

/// Alphabet of the folded words: an optional leading bit, then trits.
pub fn folded_alphabet(p: &Pairing) -> AlphabetSpec {
    let sizes = p
        .singleton()
        .map(|_| 2)
        .into_iter()
        .chain(std::iter::repeat_n(3, p.pairs().len()))
        .collect();
    AlphabetSpec::new(sizes).expect("at least one coordinate")
}

/// Image of a binary code under the pairwise fold; duplicates collapse.
pub fn fold_to_ternary(c: &CodeBook, p: &Pairing) -> Result<CodeBook> {
    require_binary(c)?;
    check_pairing_len(c, p)?;
    let alphabet = Arc::new(folded_alphabet(p));
    let words = c.iter().map(|x| fold_word(x, p)).collect::<Vec<_>>();
    CodeBook::collect(alphabet, words)
}

fn fold_word(x: &[u8], p: &Pairing) -> Vec<u8> {
    p.singleton()
        .map(|s| x[s])
        .into_iter()
        .chain(p.pairs().iter().map(|&(i, j)| fold_pair(x[i], x[j])))
        .collect()
}

/// `sum over words of 2^(number of zero trits)`: the size of the expansion.
pub fn expansion_size(c: &CodeBook) -> u128 {
    let sizes = c.alphabet().sizes().to_vec();
    c.iter()
        .map(|x| {
            let zeros = x
                .iter()
                .zip(&sizes)
                .filter(|&(&s, &q)| q == 3 && s == 0)
                .count();
            1u128 << zeros
        })
        .sum()
}

/// Inverse of [`fold_to_ternary`]: every zero trit becomes both `00` and `11`.
pub fn expand_to_binary(c: &CodeBook, p: &Pairing) -> Result<CodeBook> {
    check_pairing_len_folded(c, p)?;
    if *c.alphabet().as_ref() != folded_alphabet(p) {
        return Err(Error::AlphabetMismatch(format!(
            "pairing {p} expects folded alphabet {}, code has {}",
            folded_alphabet(p),
            c.alphabet()
        )));
    }
    // Targets: folded coordinate k -> one or two binary coordinates.
    let targets: Vec<Vec<usize>> = p
        .singleton()
        .map(|s| vec![s])
        .into_iter()
        .chain(p.pairs().iter().map(|&(i, j)| vec![i, j]))
        .collect();
    expand_with_targets(c, &targets, p.len())
}

fn check_pairing_len_folded(c: &CodeBook, p: &Pairing) -> Result<()> {
    if p.folded_len() != c.length() {
        return Err(Error::param(format!(
            "pairing folds to length {} but the code has length {}",
            p.folded_len(),
            c.length()
        )));
    }
    Ok(())
}

/// Expands a code over any `{2,3}` profile in natural layout: each binary
/// coordinate is copied, each ternary coordinate becomes two adjacent bits.
pub fn expand_mixed(c: &CodeBook) -> Result<CodeBook> {
    let mut next = 0;
    let mut targets = Vec::with_capacity(c.length());
    for &q in c.alphabet().sizes() {
        match q {
            2 => {
                targets.push(vec![next]);
                next += 1;
            }
            3 => {
                targets.push(vec![next, next + 1]);
                next += 2;
            }
            _ => {
                return Err(Error::AlphabetMismatch(format!(
                    "expansion needs binary or ternary coordinates, got alphabet {}",
                    c.alphabet()
                )))
            }
        }
    }
    expand_with_targets(c, &targets, next)
}

fn expand_with_targets(c: &CodeBook, targets: &[Vec<usize>], n: usize) -> Result<CodeBook> {
    let total = expansion_size(c);
    if total > DEFAULT_BALL_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "binary expansion".into(),
            needed: total,
            cap: DEFAULT_BALL_CAP,
        });
    }
    let sizes = c.alphabet().sizes().to_vec();
    let mut words: Vec<Vec<u8>> = c
        .raw()
        .par_iter()
        .flat_map_iter(|x| {
            let mut base = vec![0u8; n];
            let mut free = Vec::new();
            for (k, (&s, t)) in x.iter().zip(targets).enumerate() {
                match (sizes[k], s) {
                    (2, b) => base[t[0]] = b,
                    (_, 0) => free.push((t[0], t[1])),
                    (_, 1) => base[t[1]] = 1,
                    (_, _) => base[t[0]] = 1,
                }
            }
            (0u64..1 << free.len()).map(move |mask| {
                let mut w = base.clone();
                for (b, &(i, j)) in free.iter().enumerate() {
                    let bit = ((mask >> b) & 1) as u8;
                    w[i] = bit;
                    w[j] = bit;
                }
                w
            })
        })
        .collect();
    words.par_sort_unstable();
    Ok(CodeBook::from_sorted_unchecked(
        Arc::new(AlphabetSpec::uniform(2, n)?),
        words,
    ))
}

/// `Z` for binary coordinates, `T` for ternary ones.
pub fn z_t_channel(alphabet: &AlphabetSpec) -> Result<ProductChannel> {
    let coords = alphabet
        .sizes()
        .iter()
        .map(|&q| match q {
            2 => make_channel(ChannelKind::Z, 2),
            3 => make_channel(ChannelKind::T, 3),
            _ => Err(Error::AlphabetMismatch(format!(
                "Z/T channel needs binary or ternary coordinates, got alphabet {alphabet}"
            ))),
        })
        .collect::<Result<Vec<ChannelGraph>>>()?;
    ProductChannel::new(coords)
}

/// True iff `c` corrects a single error on the matching `Z`/`T` product.
pub fn corrects_single_zt(c: &CodeBook) -> Result<bool> {
    corrects_t_errors(c, &z_t_channel(c.alphabet())?, 1, Counting::Magnitude)
}

/// Binary 1-code of length `2m` from a ternary single-`T`-error-correcting
/// code of length `m`.
pub fn construct_even(c: &CodeBook) -> Result<CodeBook> {
    if c.alphabet().uniform_q() != Some(3) {
        return Err(Error::AlphabetMismatch(format!(
            "expected a ternary code, got alphabet {}",
            c.alphabet()
        )));
    }
    if !corrects_single_zt(c)? {
        return Err(Error::precondition(
            "outer code does not correct a single error on the T channel",
        ));
    }
    construct_even_unchecked(c)
}

pub fn construct_even_unchecked(c: &CodeBook) -> Result<CodeBook> {
    let mut out = expand_to_binary(c, &Pairing::identity(c.length() * 2))?;
    out.set_name(Some(format!("S({})", c.name().unwrap_or("outer"))));
    Ok(out)
}

/// Binary 1-code of length `m1 + 2 m2` from a code over `Z^m1 x T^m2`
/// (any interleaving of binary and ternary coordinates).
pub fn construct_odd_mixed(c: &CodeBook) -> Result<CodeBook> {
    if !corrects_single_zt(c)? {
        return Err(Error::precondition(
            "outer code does not correct a single error on its Z/T channel",
        ));
    }
    construct_odd_mixed_unchecked(c)
}

pub fn construct_odd_mixed_unchecked(c: &CodeBook) -> Result<CodeBook> {
    let mut out = expand_mixed(c)?;
    out.set_name(Some(format!("S({})", c.name().unwrap_or("outer"))));
    Ok(out)
}

/// `{0x : x in c0} u {1y : y in c1}` over `Z x T^m`.
pub fn combine_parts(c0: &CodeBook, c1: &CodeBook) -> Result<CodeBook> {
    for c in [c0, c1] {
        if c.alphabet().uniform_q() != Some(3) {
            return Err(Error::AlphabetMismatch(format!(
                "parts must be ternary, got alphabet {}",
                c.alphabet()
            )));
        }
    }
    if c0.length() != c1.length() {
        return Err(Error::AlphabetMismatch(format!(
            "parts have lengths {} and {}",
            c0.length(),
            c1.length()
        )));
    }
    let m = c0.length();
    let alphabet = Arc::new(AlphabetSpec::new(
        std::iter::once(2)
            .chain(std::iter::repeat_n(3, m))
            .collect(),
    )?);
    let words = c0
        .iter()
        .map(|x| (0u8, x))
        .chain(c1.iter().map(|y| (1u8, y)))
        .map(|(b, x)| std::iter::once(b).chain(x.iter().copied()).collect())
        .collect();
    CodeBook::new(alphabet, words)
}

/// Binary 1-code of length `2m + 1` from two ternary parts whose union,
/// tagged by a leading bit, corrects one error on `Z x T^m`.
pub fn construct_extended(c0: &CodeBook, c1: &CodeBook) -> Result<CodeBook> {
    let mixed = combine_parts(c0, c1)?;
    let t = z_t_channel(mixed.alphabet())?;
    let t_m = ProductChannel::new(t.coords()[1..].to_vec())?;
    for (k, part) in [c0, c1].into_iter().enumerate() {
        if !corrects_t_errors(part, &t_m, 1, Counting::Magnitude)? {
            return Err(Error::precondition(format!(
                "part {k} does not correct a single error on the T channel"
            )));
        }
    }
    if !corrects_t_errors(&mixed, &t, 1, Counting::Magnitude)? {
        return Err(Error::precondition(
            "a part-1 word lies within one T error of a part-0 word",
        ));
    }
    construct_odd_mixed_unchecked(&mixed)
}

pub fn construct_extended_unchecked(c0: &CodeBook, c1: &CodeBook) -> Result<CodeBook> {
    construct_odd_mixed_unchecked(&combine_parts(c0, c1)?)
}

/// Whether complementing both bits of pair `(i, j)` keeps every codeword
/// with `x_i = x_j` inside the code.
fn pair_closed(c: &CodeBook, i: usize, j: usize) -> bool {
    c.iter().all(|x| {
        if x[i] != x[j] {
            return true;
        }
        let mut y = x.to_vec();
        y[i] ^= 1;
        y[j] ^= 1;
        c.contains(&y)
    })
}

/// True iff expanding the folded code gives back exactly `c`.
///
/// Expansion of the fold always contains `c`; equality holds exactly when
/// `c` is closed under complementing any equal-bit pair, which is what is
/// checked here.
pub fn is_ternary_code(c: &CodeBook, p: &Pairing) -> Result<bool> {
    require_binary(c)?;
    check_pairing_len(c, p)?;
    Ok(p.pairs().iter().all(|&(i, j)| pair_closed(c, i, j)))
}

/// Lexicographically least pairing (pairs before the singleton, partners
/// ascending) under which `c` is ternary, if any.
pub fn find_pairing(c: &CodeBook) -> Result<Option<Pairing>> {
    require_binary(c)?;
    let n = c.length();
    let good: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i < j && pair_closed(c, i, j)).collect())
        .collect();
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    let mut singleton = None;
    if search_pairing(&good, &mut used, &mut pairs, &mut singleton) {
        Ok(Some(Pairing::new(n, pairs, singleton)?))
    } else {
        Ok(None)
    }
}

fn search_pairing(
    good: &[Vec<bool>],
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    singleton: &mut Option<usize>,
) -> bool {
    let n = used.len();
    let Some(i) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[i] = true;
    for j in i + 1..n {
        if !used[j] && good[i][j] {
            used[j] = true;
            pairs.push((i, j));
            if search_pairing(good, used, pairs, singleton) {
                return true;
            }
            pairs.pop();
            used[j] = false;
        }
    }
    if n % 2 == 1 && singleton.is_none() {
        *singleton = Some(i);
        if search_pairing(good, used, pairs, singleton) {
            return true;
        }
        *singleton = None;
    }
    used[i] = false;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(c: &CodeBook) -> Vec<String> {
        c.words().map(|w| w.to_string()).collect()
    }

    #[test]
    fn single_symbol_maps() {
        let p = Pairing::identity(2);
        let z = CodeBook::from_digit_strings(3, &["0"]).unwrap();
        assert_eq!(
            strings(&expand_to_binary(&z, &p).unwrap()),
            vec!["00", "11"]
        );
        let b = CodeBook::from_digit_strings(2, &["01"]).unwrap();
        assert_eq!(strings(&fold_to_ternary(&b, &p).unwrap()), vec!["1"]);
        let b = CodeBook::from_digit_strings(2, &["10"]).unwrap();
        assert_eq!(strings(&fold_to_ternary(&b, &p).unwrap()), vec!["2"]);
    }

    #[test]
    fn fold_collapses_equal_pairs() {
        let c = CodeBook::from_digit_strings(2, &["0000", "1100", "0011", "1111"]).unwrap();
        let f = fold_to_ternary(&c, &Pairing::identity(4)).unwrap();
        assert_eq!(strings(&f), vec!["00"]);
        assert!(is_ternary_code(&c, &Pairing::identity(4)).unwrap());
        assert_eq!(find_pairing(&c).unwrap(), Some(Pairing::identity(4)));
    }

    #[test]
    fn singleton_comes_first() {
        let p = Pairing::identity(3);
        let c = CodeBook::from_digit_strings(2, &["000", "011", "110"]).unwrap();
        let f = fold_to_ternary(&c, &p).unwrap();
        assert_eq!(f.alphabet().sizes(), &[2, 3]);
        assert_eq!(strings(&f), vec!["00", "12"]);
        assert!(expand_to_binary(&f, &p).unwrap().same_words(&c));
    }

    #[test]
    fn non_ternary_detection() {
        let c = CodeBook::from_digit_strings(2, &["00", "01"]).unwrap();
        assert!(!is_ternary_code(&c, &Pairing::identity(2)).unwrap());
        assert_eq!(find_pairing(&c).unwrap(), None);
        let one = CodeBook::from_digit_strings(2, &["01"]).unwrap();
        assert!(find_pairing(&one).unwrap().is_some());
    }

    #[test]
    fn degenerate_mixed_rejected() {
        let c = CodeBook::from_digit_strings(2, &["0", "1"]).unwrap();
        assert!(matches!(
            construct_odd_mixed(&c),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn expansion_size_matches() {
        let c = CodeBook::from_digit_strings(3, &["000", "111", "122", "212", "221"]).unwrap();
        assert_eq!(expansion_size(&c), 12);
        assert_eq!(construct_even(&c).unwrap().len(), 12);
    }
}
