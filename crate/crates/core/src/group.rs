//! Finite abelian groups as products of cyclic factors, and the
//! Varshamov–Tenengolts / Constantin–Rao codes built from them.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairing::Pairing;
use crate::word::{AlphabetSpec, CodeBook};
use crate::DEFAULT_ENUM_CAP;

/// `Z_{d_1} + ... + Z_{d_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

/// Component residues, one per factor.
pub type GroupElement = Vec<u32>;

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::param("cyclic factors must have order at least 2"));
        }
        if factors.is_empty() {
            return Err(Error::param("group needs at least one factor"));
        }
        factors
            .iter()
            .try_fold(1u64, |acc, &d| {
                acc.checked_mul(d as u64).filter(|&o| o <= u32::MAX as u64)
            })
            .ok_or_else(|| Error::param("group order too large"))?;
        Ok(Self { factors })
    }

    pub fn cyclic(order: u32) -> Result<Self> {
        Self::new(vec![order])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&d| d as u64).product()
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.factors.len()]
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        g.len() == self.factors.len() && g.iter().zip(&self.factors).all(|(&c, &d)| c < d)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> GroupElement {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &[u32]) -> GroupElement {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d - x) % d)
            .collect()
    }

    /// `k * a`, i.e. `a` added to itself `k` times.
    pub fn scale(&self, k: u64, a: &[u32]) -> GroupElement {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| ((x as u64 * (k % d as u64)) % d as u64) as u32)
            .collect()
    }

    /// Additive order of `a`.
    pub fn element_order(&self, a: &[u32]) -> u64 {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| d as u64 / gcd(x as u64, d as u64))
            .fold(1, lcm)
    }

    /// Parses `"3x3"`, `"Z3+Z3"` or `"2,5"`.
    pub fn parse(text: &str) -> Result<Self> {
        let factors = text
            .split(['x', '+', ',', '*'])
            .map(|p| p.trim().trim_start_matches(['Z', 'z']))
            .map(|p| {
                p.parse::<u32>()
                    .map_err(|_| Error::param(format!("bad group factor '{p}' in '{text}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        f.write_str(&parts.join("+"))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Non-identity elements in lexicographic component order.
pub fn group_elements(g: &AbelianGroup) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(g.order() as usize - 1);
    let mut cur = g.identity();
    loop {
        let mut k = cur.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < g.factors[k] {
                break;
            }
            cur[k] = 0;
        }
        out.push(cur.clone());
    }
}

/// `{x in {0..q-1}^n : sum x_i g_i = target}` with the `g_i` the
/// non-identity elements in lexicographic order.
pub fn cr_code(g: &AbelianGroup, target: &[u32], q: u32) -> Result<CodeBook> {
    cr_code_with_coefficients(g, &group_elements(g), target, q, DEFAULT_ENUM_CAP)
}

/// As [`cr_code`] but with an explicit coefficient per coordinate.
pub fn cr_code_with_coefficients(
    g: &AbelianGroup,
    coefficients: &[GroupElement],
    target: &[u32],
    q: u32,
    cap: usize,
) -> Result<CodeBook> {
    if !g.contains(target) {
        return Err(Error::param(format!("{target:?} is not an element of {g}")));
    }
    if coefficients.is_empty() {
        return Err(Error::param("at least one coefficient is required"));
    }
    if let Some(bad) = coefficients.iter().find(|c| !g.contains(c)) {
        return Err(Error::param(format!("{bad:?} is not an element of {g}")));
    }
    if q > 2 {
        if let Some(low) = coefficients.iter().find(|c| g.element_order(c) < q as u64) {
            return Err(Error::precondition(format!(
                "element {low:?} of {g} has order {} < q = {q}",
                g.element_order(low)
            )));
        }
    }
    let n = coefficients.len();
    let alphabet = Arc::new(AlphabetSpec::uniform(q, n)?);
    let expected = alphabet.space_size() / g.order() as u128;
    if expected > cap as u128 {
        return Err(Error::CapExceeded {
            what: format!("CR code over {g} of length {n}"),
            needed: expected,
            cap,
        });
    }

    // multiples[i][x] = x * g_i
    let multiples: Vec<Vec<GroupElement>> = coefficients
        .iter()
        .map(|c| (0..q as u64).map(|x| g.scale(x, c)).collect())
        .collect();
    // Split the search on a short prefix so the halves can run in parallel and
    // still concatenate in lexicographic order.
    let mut split = 0;
    let mut prefixes: Vec<(Vec<u8>, GroupElement)> = vec![(Vec::new(), g.identity())];
    while split + 1 < n && prefixes.len() < 256 {
        prefixes = prefixes
            .into_iter()
            .flat_map(|(p, s)| {
                (0..q as u8).map(move |x| {
                    let mut p2 = p.clone();
                    p2.push(x);
                    (p2, s.clone())
                })
            })
            .map(|(p, s)| {
                let sum = g.add(&s, &multiples[split][*p.last().unwrap() as usize]);
                (p, sum)
            })
            .collect();
        split += 1;
    }
    let words: Vec<Vec<u8>> = prefixes
        .par_iter()
        .flat_map_iter(|(prefix, sum)| {
            let mut out = Vec::new();
            let mut cur = prefix.clone();
            cur.resize(n, 0);
            extend(g, &multiples, target, split, sum, &mut cur, &mut out);
            out
        })
        .collect();
    let mut code = CodeBook::from_sorted_unchecked(alphabet, words);
    code.set_name(Some(format!("CR({g})")));
    code.set_meta("group", g.to_string());
    code.set_meta("target", format!("{target:?}"));
    Ok(code)
}

fn extend(
    g: &AbelianGroup,
    multiples: &[Vec<GroupElement>],
    target: &[u32],
    i: usize,
    sum: &GroupElement,
    cur: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    let n = multiples.len();
    if i + 1 == n {
        // The last coordinate is forced: at most one multiple hits the target
        // because every coefficient has order >= q (or q = 2).
        for (x, m) in multiples[i].iter().enumerate() {
            if g.add(sum, m) == target {
                cur[i] = x as u8;
                out.push(cur.clone());
            }
        }
        return;
    }
    for (x, m) in multiples[i].iter().enumerate() {
        cur[i] = x as u8;
        extend(g, multiples, target, i + 1, &g.add(sum, m), cur, out);
    }
    cur[i] = 0;
}

/// `cr_code(Z_{n+1}, g, q)`: coordinate `i` has coefficient `i`.
pub fn vt_code(n: usize, g: u32, q: u32) -> Result<CodeBook> {
    if n == 0 {
        return Err(Error::param("VT length must be at least 1"));
    }
    if g as usize > n {
        return Err(Error::param(format!("residue {g} outside 0..={n}")));
    }
    let order = u32::try_from(n + 1).map_err(|_| Error::param("length too large"))?;
    let group = AbelianGroup::cyclic(order)?;
    let mut code = cr_code(&group, &[g], q)?;
    code.set_name(Some(format!("VT({n},{g})")));
    Ok(code)
}

/// For `n + 1 = prod p^{n_p}`, the group with `n_p` copies of `Z_p` per
/// prime, primes ascending.
pub fn best_cr_group(n: usize) -> Result<AbelianGroup> {
    if n == 0 {
        return Err(Error::param("length must be at least 1"));
    }
    let mut rest = n as u64 + 1;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        while rest.is_multiple_of(p) {
            factors.push(p as u32);
            rest /= p;
        }
        p += 1;
    }
    if rest > 1 {
        factors.push(rest as u32);
    }
    AbelianGroup::new(factors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairingMode {
    /// Pair every non-identity element with its inverse.
    Inverse,
    /// `{i, n+1-i}` with the middle coordinate left as a bit (cyclic groups
    /// of even order, i.e. odd VT lengths).
    VtOdd,
}

/// Canonical pairings over the coordinates of [`cr_code`] / [`vt_code`].
pub fn canonical_pairing(g: &AbelianGroup, mode: PairingMode) -> Result<Pairing> {
    let elements = group_elements(g);
    let n = elements.len();
    match mode {
        PairingMode::Inverse => {
            if g.order().is_multiple_of(2) {
                return Err(Error::precondition(format!(
                    "{g} has even order, so some element is its own inverse"
                )));
            }
            let mut pairs = Vec::with_capacity(n / 2);
            for (i, h) in elements.iter().enumerate() {
                let inv = g.neg(h);
                let j = elements
                    .binary_search(&inv)
                    .expect("inverse of a non-identity element is non-identity");
                if i < j {
                    pairs.push((i, j));
                }
            }
            Pairing::new(n, pairs, None)
        }
        PairingMode::VtOdd => {
            if g.factors().len() != 1 || n.is_multiple_of(2) {
                return Err(Error::precondition(format!(
                    "the odd-length VT pairing needs a cyclic group of even order, got {g}"
                )));
            }
            let pairs = (0..n / 2).map(|i| (i, n - 1 - i)).collect();
            Pairing::new(n, pairs, Some(n / 2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::is_t_code;

    #[test]
    fn element_listing() {
        let g = AbelianGroup::new(vec![3, 3]).unwrap();
        let e = group_elements(&g);
        assert_eq!(
            e,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2],
                vec![2, 0],
                vec![2, 1],
                vec![2, 2]
            ]
        );
        assert_eq!(
            group_elements(&AbelianGroup::cyclic(2).unwrap()),
            vec![vec![1]]
        );
        let z7: Vec<u32> = group_elements(&AbelianGroup::cyclic(7).unwrap())
            .into_iter()
            .map(|v| v[0])
            .collect();
        assert_eq!(z7, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn orders_and_parsing() {
        let g = AbelianGroup::parse("Z2+Z4").unwrap();
        assert_eq!(g.element_order(&[1, 2]), 2);
        assert_eq!(g.element_order(&[1, 1]), 4);
        assert_eq!(AbelianGroup::parse("3x3").unwrap().factors(), &[3, 3]);
        assert!(AbelianGroup::parse("1").is_err());
        assert!(AbelianGroup::parse("Zq").is_err());
    }

    #[test]
    fn vt_sizes() {
        assert_eq!(vt_code(6, 0, 2).unwrap().len(), 10);
        assert_eq!(vt_code(7, 0, 2).unwrap().len(), 16);
        assert_eq!(vt_code(8, 0, 2).unwrap().len(), 30);
        assert_eq!(
            cr_code(&AbelianGroup::cyclic(11).unwrap(), &[0], 2)
                .unwrap()
                .len(),
            94
        );
        assert!(vt_code(6, 7, 2).is_err());
    }

    #[test]
    fn best_groups() {
        assert_eq!(best_cr_group(8).unwrap().factors(), &[3, 3]);
        assert_eq!(best_cr_group(15).unwrap().factors(), &[2, 2, 2, 2]);
        assert_eq!(best_cr_group(9).unwrap().factors(), &[2, 5]);
        assert_eq!(best_cr_group(6).unwrap().factors(), &[7]);
    }

    #[test]
    fn nonbinary_requires_large_orders() {
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        assert!(matches!(
            cr_code(&g, &[0, 0], 3),
            Err(Error::PreconditionFailed(_))
        ));
        let z7 = AbelianGroup::cyclic(7).unwrap();
        let c = cr_code(&z7, &[0], 3).unwrap();
        assert!(is_t_code(&c, 1));
        assert!(c.len() as u64 * 7 >= 3u64.pow(6));
    }

    #[test]
    fn pairings() {
        let z7 = AbelianGroup::cyclic(7).unwrap();
        let p = canonical_pairing(&z7, PairingMode::Inverse).unwrap();
        assert_eq!(p.to_string(), "(1,6) (2,5) (3,4)");
        let z9 = AbelianGroup::cyclic(9).unwrap();
        let p = canonical_pairing(&z9, PairingMode::Inverse).unwrap();
        assert_eq!(p.to_string(), "(1,8) (2,7) (3,6) (4,5)");
        let z33 = AbelianGroup::new(vec![3, 3]).unwrap();
        let p = canonical_pairing(&z33, PairingMode::Inverse).unwrap();
        assert_eq!(p.to_string(), "(1,2) (3,6) (4,8) (5,7)");
        let z8 = AbelianGroup::cyclic(8).unwrap();
        let p = canonical_pairing(&z8, PairingMode::VtOdd).unwrap();
        assert_eq!(p.to_string(), "(1,7) (2,6) (3,5) [4]");
        assert!(canonical_pairing(&z8, PairingMode::Inverse).is_err());
        assert!(canonical_pairing(&z7, PairingMode::VtOdd).is_err());
    }
}
