//! Published orbit representatives of shift-closed ternary 1-codes.

use std::sync::Arc;

use super::Orbit;
use crate::error::{Error, Result};
use crate::word::{AlphabetSpec, CodeBook};

/// Orbit representatives of cyclic ternary codes, `(m, words)` for `m = 4..=8`.
pub const TABLE3_GENERATORS: &[(usize, &[&str])] = &[
    (4, &["0000", "0112", "1222", "1111"]),
    (
        5,
        &[
            "00000", "10012", "20110", "12210", "11202", "11111", "22122",
        ],
    ),
    (
        6,
        &[
            "000000", "100021", "122000", "010101", "120102", "101101", "201102", "101202",
            "102012", "222102", "202020", "112011", "220220",
        ],
    ),
    (
        7,
        &[
            "0000000", "0000121", "1100022", "0022020", "1110100", "1020100", "1002001", "0021021",
            "2001011", "1200211", "2021200", "0201220", "1022200", "1221010", "1012020", "1021201",
            "1022121", "2221020", "0112122", "1111121", "1112221", "1122112", "2121211", "2221212",
            "2222222",
        ],
    ),
    (
        8,
        &[
            "00000201", "00010112", "00011010", "00021200", "00101210", "00110011", "00121111",
            "00222110", "01011102", "01212210", "02021002", "02112201", "02211101", "02211210",
            "02211222", "10001122", "10010210", "10122021", "10122111", "10202002", "11021220",
            "11100200", "11111111", "11111210", "11120002", "11222011", "12001200", "12100120",
            "12102200", "12111211", "12112022", "12121212", "20010200", "20102201", "20121212",
            "20210101", "20222011", "20222200", "21100210", "21120111", "21120120", "21200221",
            "21212110", "22000012", "22000100", "22020201", "22022000", "22101102", "22101222",
            "22102210", "22120110", "22221221", "22222222",
        ],
    ),
];

/// Two-part generators, `(m, words)` for `m = 3..=7`; the leading character
/// of each word selects the part, the remaining `m` trits are the
/// representative.
pub const TABLE4_GENERATORS: &[(usize, &[&str])] = &[
    (3, &["0000", "0111", "0222", "1210"]),
    (
        4,
        &[
            "00000", "00221", "01211", "02222", "11010", "12020", "11220",
        ],
    ),
    (
        5,
        &[
            "000000", "010021", "012102", "020111", "022201", "011111", "022222", "102210",
            "101020", "101212",
        ],
    ),
    (
        6,
        &[
            "0100021", "0122000", "0100100", "0200200", "0010101", "0222010", "0110201", "0101202",
            "0202020", "0111111", "0221211", "0212211", "0222222", "1022100", "1112000", "1001002",
            "1120102", "1101101", "1012111", "1102012", "1220220", "1122202", "1211112", "1211222",
            "1121212",
        ],
    ),
    (
        7,
        &[
            "01100002", "00200100", "01200010", "00202200", "00112200", "01002120", "01001011",
            "01210020", "01222100", "00022202", "01221200", "00101121", "00210201", "01102220",
            "01020111", "01012211", "02021210", "00122221", "01112021", "01202221", "01111111",
            "01122112", "02222222", "10221000", "10102000", "10001101", "12000120", "12101100",
            "11100120", "11002202", "11200220", "11200211", "10012112", "11021210", "12201022",
            "11110220", "10111211", "11212210", "10202122", "10211212", "12202212", "11221221",
        ],
    ),
];

fn digits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

/// Union of the rotation orbits of `generators` (all of length `m`).
pub fn orbit_closure<S: AsRef<[u8]>>(generators: &[S], m: usize) -> Result<CodeBook> {
    let alphabet = Arc::new(AlphabetSpec::uniform(3, m)?);
    let mut words = Vec::new();
    for g in generators {
        let g = g.as_ref();
        alphabet.check_symbols(g)?;
        words.extend(Orbit::of(g).members().iter().cloned());
    }
    CodeBook::collect(alphabet, words)
}

fn lookup(
    table: &[(usize, &'static [&'static str])],
    m: usize,
    what: &str,
) -> Result<&'static [&'static str]> {
    table
        .iter()
        .find(|(k, _)| *k == m)
        .map(|(_, w)| *w)
        .ok_or_else(|| Error::param(format!("no {what} generators for m = {m}")))
}

/// Orbit closure of the plain generators for length `m` (4..=8).
pub fn table3_code(m: usize) -> Result<CodeBook> {
    let gens: Vec<Vec<u8>> = lookup(TABLE3_GENERATORS, m, "cyclic")?
        .iter()
        .map(|s| digits(s))
        .collect();
    let mut c = orbit_closure(&gens, m)?;
    c.set_name(Some(format!("cyclic-m{m}")));
    Ok(c)
}

/// The two orbit-closed parts for length `m` (3..=7).
pub fn table4_parts(m: usize) -> Result<(CodeBook, CodeBook)> {
    let words = lookup(TABLE4_GENERATORS, m, "extended cyclic")?;
    let mut parts: [Vec<Vec<u8>>; 2] = [Vec::new(), Vec::new()];
    for w in words {
        let d = digits(w);
        parts[d[0] as usize].push(d[1..].to_vec());
    }
    let mut p0 = orbit_closure(&parts[0], m)?;
    let mut p1 = orbit_closure(&parts[1], m)?;
    p0.set_name(Some(format!("extended-m{m}-part0")));
    p1.set_name(Some(format!("extended-m{m}-part1")));
    Ok((p0, p1))
}

/// One code for the plain table, the two parts for the extended one.
pub fn builtin_table_generators(m: usize, extended: bool) -> Result<Vec<CodeBook>> {
    if extended {
        let (a, b) = table4_parts(m)?;
        Ok(vec![a, b])
    } else {
        Ok(vec![table3_code(m)?])
    }
}
