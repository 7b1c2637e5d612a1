//! Linear codes over `Z_q` (`q` prime): Hamming and Lee parity checks, the
//! pair-coset concatenation, shortening, doubling and a syndrome decoder.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::hamming_weight;
use crate::word::{AlphabetSpec, CodeBook, Word};
use crate::DEFAULT_ENUM_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixRole {
    Generator,
    Parity,
}

impl fmt::Display for MatrixRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixRole::Generator => "generator",
            MatrixRole::Parity => "parity",
        })
    }
}

impl FromStr for MatrixRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generator" | "g" | "G" => Ok(MatrixRole::Generator),
            "parity" | "h" | "H" => Ok(MatrixRole::Parity),
            other => Err(Error::param(format!("unknown matrix role '{other}'"))),
        }
    }
}

pub fn is_prime(q: u32) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

fn inv_mod(a: u32, q: u32) -> u32 {
    // q is prime, so a^(q-2) is the inverse.
    let (mut base, mut exp, mut acc) = (a as u64 % q as u64, q as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Dense matrix over `Z_q`, tagged as a generator or parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixModZq {
    q: u32,
    cols: usize,
    rows: Vec<Vec<u32>>,
    role: MatrixRole,
}

impl MatrixModZq {
    /// Entries are reduced mod `q`; `cols` is needed for the zero-row case.
    pub fn new(q: u32, cols: usize, rows: Vec<Vec<u32>>, role: MatrixRole) -> Result<Self> {
        if !is_prime(q) || q > crate::word::MAX_Q {
            return Err(Error::param(format!(
                "modulus {q} is not a supported prime"
            )));
        }
        if cols == 0 {
            return Err(Error::param("matrix needs at least one column"));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::param(format!(
                "row {} has {} entries, expected {cols}",
                r + 1,
                rows[r].len()
            )));
        }
        let rows: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v % q).collect())
            .collect();
        let m = Self {
            q,
            cols,
            rows,
            role,
        };
        if role == MatrixRole::Parity {
            if let Some(j) = (0..cols).find(|&j| m.column(j).iter().all(|&v| v == 0)) {
                return Err(Error::param(format!(
                    "parity-check column {} is zero",
                    j + 1
                )));
            }
        }
        Ok(m)
    }

    /// Rows given as digit strings, e.g. `["0111", "1012"]` (q <= 10).
    pub fn from_digit_rows(q: u32, rows: &[&str], role: MatrixRole) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .ok_or_else(|| Error::param(format!("bad digit '{c}' in '{r}'")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, cols, rows, role)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn role(&self) -> MatrixRole {
        self.role
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn with_role(mut self, role: MatrixRole) -> Result<Self> {
        self.role = role;
        Self::new(self.q, self.cols, self.rows, role)
    }

    /// `M v` for a column vector `v` of length `cols`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let q = self.q as u64;
        self.rows
            .iter()
            .map(|r| {
                (r.iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % q) as u32
            })
            .collect()
    }

    /// Reduced row echelon form with zero rows dropped, plus pivot columns.
    pub fn row_reduced(&self) -> (Vec<Vec<u32>>, Vec<usize>) {
        let q = self.q;
        let mut a = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, p);
            let inv = inv_mod(a[r][c], q);
            for v in &mut a[r] {
                *v = (*v * inv) % q;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (v, &p) in row.iter_mut().zip(&pivot_row) {
                        *v = (*v + (q - f) * p) % q;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.len() {
                break;
            }
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduced().0.len()
    }

    /// Basis of `{v : M v = 0}` as the rows of a matrix with the given role.
    pub fn kernel(&self, role: MatrixRole) -> Result<MatrixModZq> {
        let (rref, pivots) = self.row_reduced();
        let q = self.q;
        let basis: Vec<Vec<u32>> = (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (row, &p) in rref.iter().zip(&pivots) {
                    v[p] = (q - row[free]) % q;
                }
                v
            })
            .collect();
        MatrixModZq::new(q, self.cols, basis, role)
    }

    /// Generator of the code this matrix describes.
    pub fn generator(&self) -> Result<MatrixModZq> {
        match self.role {
            MatrixRole::Generator => Ok(self.clone()),
            MatrixRole::Parity => self.kernel(MatrixRole::Generator),
        }
    }

    /// Parity check of the code this matrix describes.
    pub fn parity_check(&self) -> Result<MatrixModZq> {
        match self.role {
            MatrixRole::Parity => Ok(self.clone()),
            MatrixRole::Generator => self.kernel(MatrixRole::Parity),
        }
    }

    /// Dimension of the described code.
    pub fn dimension(&self) -> usize {
        match self.role {
            MatrixRole::Generator => self.rank(),
            MatrixRole::Parity => self.cols - self.rank(),
        }
    }

    /// Parses the `q r c role` text form.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty matrix file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::parse(hline, "header must be 'q rows cols role'"));
        }
        let num = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(hline, format!("bad {what} '{s}'")))
        };
        let q = num(fields[0], "modulus")? as u32;
        let r = num(fields[1], "row count")?;
        let c = num(fields[2], "column count")?;
        let role: MatrixRole = fields[3]
            .parse()
            .map_err(|e: Error| Error::parse(hline, e.to_string()))?;
        let mut rows = Vec::with_capacity(r);
        for (ln, line) in lines {
            let row = line
                .split_whitespace()
                .map(|v| {
                    v.parse::<u32>()
                        .ok()
                        .filter(|&x| x < q)
                        .ok_or_else(|| Error::parse(ln, format!("bad entry '{v}' for q={q}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            if row.len() != c {
                return Err(Error::parse(
                    ln,
                    format!("expected {c} entries, got {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != r {
            return Err(Error::parse(
                hline,
                format!("expected {r} rows, got {}", rows.len()),
            ));
        }
        Self::new(q, c, rows, role).map_err(|e| Error::parse(hline, e.to_string()))
    }
}

impl fmt::Display for MatrixModZq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {} {} {}",
            self.q,
            self.rows.len(),
            self.cols,
            self.role
        )?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(u32::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn require_prime(q: u32) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::param(format!("q = {q} is not prime")));
    }
    Ok(())
}

/// All vectors of `Z_q^r` in lexicographic order (top entry most significant).
fn all_vectors(q: u32, r: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (q as u64).pow(r as u32);
    (0..total).map(move |mut i| {
        let mut v = vec![0u32; r];
        for k in (0..r).rev() {
            v[k] = (i % q as u64) as u32;
            i /= q as u64;
        }
        v
    })
}

fn from_columns(q: u32, r: usize, cols: Vec<Vec<u32>>, role: MatrixRole) -> Result<MatrixModZq> {
    let rows = (0..r)
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect();
    MatrixModZq::new(q, cols.len(), rows, role)
}

/// Columns: nonzero vectors of `Z_q^r` whose first nonzero entry is 1.
pub fn hamming_parity_check(q: u32, r: usize) -> Result<MatrixModZq> {
    require_prime(q)?;
    if r < 2 {
        return Err(Error::param("Hamming codes need r >= 2"));
    }
    if (q as f64).powi(r as i32) > 1e7 {
        return Err(Error::param(format!("q^r = {q}^{r} is too large")));
    }
    let cols = all_vectors(q, r)
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    from_columns(q, r, cols, MatrixRole::Parity)
}

/// Columns whose first nonzero entry lies in `1..=(q-1)/2`. With
/// `full = false` only columns with a nonzero top entry are kept.
pub fn lee_parity_check(q: u32, r: usize, full: bool) -> Result<MatrixModZq> {
    require_prime(q)?;
    if q == 2 {
        return Err(Error::param("Lee parity checks need an odd prime q"));
    }
    if r < 1 {
        return Err(Error::param("r must be at least 1"));
    }
    if (q as f64).powi(r as i32) > 1e7 {
        return Err(Error::param(format!("q^r = {q}^{r} is too large")));
    }
    let half = (q - 1) / 2;
    let cols = all_vectors(q, r)
        .filter(|v| matches!(v.iter().find(|&&x| x != 0), Some(&x) if x <= half))
        .filter(|v| full || v[0] != 0)
        .collect();
    from_columns(q, r, cols, MatrixRole::Parity)
}

/// A `+-1` change at any single position has a distinct nonzero syndrome.
pub fn is_single_rq_correcting(h: &MatrixModZq) -> bool {
    let q = h.q();
    let cols: Vec<Vec<u32>> = (0..h.col_count()).map(|j| h.column(j)).collect();
    let neg = |c: &[u32]| c.iter().map(|&v| (q - v) % q).collect::<Vec<u32>>();
    let mut seen = std::collections::HashSet::new();
    for c in &cols {
        if c.iter().all(|&v| v == 0) {
            return false;
        }
        let n = neg(c);
        if n == *c || !seen.insert(c.clone()) || !seen.insert(n) {
            return false;
        }
    }
    true
}

/// Explicit codewords of the described linear code.
pub fn codewords_of(m: &MatrixModZq) -> Result<CodeBook> {
    codewords_capped(m, DEFAULT_ENUM_CAP)
}

pub fn codewords_capped(m: &MatrixModZq, cap: usize) -> Result<CodeBook> {
    let g = m.generator()?;
    let (basis, _) = g.row_reduced();
    let q = m.q();
    let k = basis.len();
    let size = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            what: format!("linear code of dimension {k} over Z_{q}"),
            needed: size,
            cap,
        });
    }
    let n = m.col_count();
    let words: Vec<Vec<u8>> = all_vectors(q, k)
        .map(|coef| {
            let mut w = vec![0u32; n];
            for (c, row) in coef.iter().zip(&basis) {
                if *c != 0 {
                    for (x, &b) in w.iter_mut().zip(row) {
                        *x = (*x + c * b) % q;
                    }
                }
            }
            w.into_iter().map(|v| v as u8).collect()
        })
        .collect();
    CodeBook::new(Arc::new(AlphabetSpec::uniform(q, n)?), words)
}

/// Minimum weight of a nonzero codeword.
pub fn min_hamming_distance(m: &MatrixModZq) -> Result<usize> {
    let c = codewords_of(m)?;
    c.iter()
        .map(hamming_weight)
        .filter(|&w| w > 0)
        .min()
        .ok_or(Error::TooFewWords {
            needed: 2,
            got: c.len(),
        })
}

/// The pair-coset concatenation of an outer code that corrects one `R_q`
/// error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcatCode {
    /// Parity check of the outer code.
    pub outer_parity: MatrixModZq,
    pub generator: MatrixModZq,
    pub shortened: bool,
}

impl ConcatCode {
    pub fn length(&self) -> usize {
        self.generator.col_count()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rank()
    }

    /// Explicit codewords (subject to the enumeration cap).
    pub fn codewords(&self) -> Result<CodeBook> {
        codewords_of(&self.generator)
    }

    pub fn decode(&self, received: &Word) -> Result<Word> {
        decode_concat(&self.outer_parity, received)
    }
}

/// Words `(a_1, a_1 + c_1, .., a_m, a_m + c_m)` for outer codewords `c`;
/// with `shorten`, `a_1 = 0` and the first coordinate is deleted.
pub fn concat_code(outer: &MatrixModZq, shorten: bool) -> Result<ConcatCode> {
    let h = outer.parity_check()?;
    if !is_single_rq_correcting(&h) {
        return Err(Error::precondition(
            "outer code does not correct a single R_q error",
        ));
    }
    concat_code_unchecked(outer, shorten)
}

pub fn concat_code_unchecked(outer: &MatrixModZq, shorten: bool) -> Result<ConcatCode> {
    let q = outer.q();
    let m = outer.col_count();
    let g = outer.generator()?;
    let h = outer.parity_check()?;
    let mut rows = Vec::with_capacity(m + g.row_count());
    for j in 0..m {
        let mut r = vec![0u32; 2 * m];
        r[2 * j] = 1;
        r[2 * j + 1] = 1;
        rows.push(r);
    }
    for grow in g.rows() {
        let mut r = vec![0u32; 2 * m];
        for (j, &v) in grow.iter().enumerate() {
            r[2 * j + 1] = v;
        }
        rows.push(r);
    }
    let (cols, rows) = if shorten {
        let rows = rows.into_iter().skip(1).map(|r| r[1..].to_vec()).collect();
        (2 * m - 1, rows)
    } else {
        (2 * m, rows)
    };
    Ok(ConcatCode {
        outer_parity: h,
        generator: MatrixModZq::new(q, cols, rows, MatrixRole::Generator)?,
        shortened: shorten,
    })
}

/// Corrects a single asymmetric (decrement-by-one) error in a word of the
/// concatenated code with outer parity check `h`; odd lengths are read as
/// the shortened code.
///
/// Two or more errors are either reported or land on another codeword.
pub fn decode_concat(h: &MatrixModZq, received: &Word) -> Result<Word> {
    let q = h.q();
    let m = h.col_count();
    if received.alphabet().uniform_q() != Some(q) {
        return Err(Error::AlphabetMismatch(format!(
            "received word over {}, code over Z_{q}",
            received.alphabet()
        )));
    }
    let shortened = match received.len() {
        n if n == 2 * m => false,
        n if n + 1 == 2 * m => true,
        n => {
            return Err(Error::param(format!(
                "length {n} does not fit an outer code of length {m}"
            )))
        }
    };
    let mut y: Vec<u32> = received.symbols().iter().map(|&s| s as u32).collect();
    if shortened {
        y.insert(0, 0);
    }
    let d: Vec<u32> = (0..m).map(|j| (y[2 * j + 1] + q - y[2 * j]) % q).collect();
    let s = h.apply(&d);
    if s.iter().any(|&v| v != 0) {
        let neg: Vec<u32> = s.iter().map(|&v| (q - v) % q).collect();
        // A decrement on the second coordinate of pair j lowers d_j (syndrome
        // -H_j); on the first coordinate it raises d_j (syndrome H_j).
        let pos = (0..m)
            .find_map(|j| {
                let c = h.column(j);
                if c == neg {
                    Some(2 * j + 1)
                } else if c == s {
                    Some(2 * j)
                } else {
                    None
                }
            })
            .ok_or_else(|| {
                Error::Uncorrectable(format!("syndrome {s:?} matches no single error"))
            })?;
        if shortened && pos == 0 {
            return Err(Error::Uncorrectable(
                "syndrome points at the deleted coordinate".into(),
            ));
        }
        if y[pos] + 1 >= q {
            return Err(Error::Uncorrectable(format!(
                "correction at coordinate {} overflows the alphabet",
                pos + 1 - usize::from(shortened)
            )));
        }
        y[pos] += 1;
    }
    if shortened {
        y.remove(0);
    }
    Word::uniform(q, y.into_iter().map(|v| v as u8).collect())
}

/// Repeats every symbol twice in place; the asymmetric distance doubles.
pub fn double_code(c: &CodeBook) -> Result<CodeBook> {
    let sizes: Vec<u32> = c.alphabet().sizes().iter().flat_map(|&q| [q, q]).collect();
    let words = c
        .iter()
        .map(|x| x.iter().flat_map(|&s| [s, s]).collect())
        .collect();
    let mut out = CodeBook::new(Arc::new(AlphabetSpec::new(sizes)?), words)?;
    if let Some(name) = c.name() {
        out.set_name(Some(format!("double({name})")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_shapes() {
        let h = hamming_parity_check(3, 2).unwrap();
        assert_eq!(h.rows(), &[vec![0, 1, 1, 1], vec![1, 0, 1, 2]]);
        assert_eq!(hamming_parity_check(2, 3).unwrap().col_count(), 7);
        let h5 = hamming_parity_check(5, 2).unwrap();
        assert_eq!(h5.col_count(), 6);
        assert_eq!(h5.dimension(), 4);
        assert_eq!(min_hamming_distance(&h5).unwrap(), 3);
        assert!(hamming_parity_check(4, 2).is_err());
    }

    #[test]
    fn lee_shapes() {
        let h = lee_parity_check(5, 2, false).unwrap();
        assert_eq!(
            h.rows(),
            &[
                vec![1, 1, 1, 1, 1, 2, 2, 2, 2, 2],
                vec![0, 1, 2, 3, 4, 0, 1, 2, 3, 4]
            ]
        );
        assert_eq!(lee_parity_check(5, 2, true).unwrap().col_count(), 12);
        assert_eq!(
            lee_parity_check(3, 2, true).unwrap(),
            hamming_parity_check(3, 2).unwrap()
        );
        assert!(lee_parity_check(2, 2, true).is_err());
    }

    #[test]
    fn rq_correctability() {
        assert!(is_single_rq_correcting(
            &lee_parity_check(5, 2, false).unwrap()
        ));
        let bad = MatrixModZq::new(5, 2, vec![vec![1, 4]], MatrixRole::Parity).unwrap();
        assert!(!is_single_rq_correcting(&bad));
        let zero = MatrixModZq::new(5, 2, vec![vec![1, 0]], MatrixRole::Generator).unwrap();
        assert!(!is_single_rq_correcting(&zero));
    }

    #[test]
    fn kernel_and_rank() {
        let g = MatrixModZq::from_digit_rows(3, &["0111", "1012"], MatrixRole::Generator).unwrap();
        assert_eq!(g.rank(), 2);
        let h = g.parity_check().unwrap();
        for row in g.rows() {
            assert!(h.apply(row).iter().all(|&v| v == 0));
        }
        let c = codewords_of(&g).unwrap();
        assert_eq!(c.len(), 9);
        assert!(
            c.contains(&[0, 0, 0, 0]) && c.contains(&[0, 1, 1, 1]) && c.contains(&[1, 0, 1, 2])
        );
        assert_eq!(min_hamming_distance(&g).unwrap(), 3);
    }

    #[test]
    fn degenerate_generators() {
        let z = MatrixModZq::new(3, 3, vec![vec![0, 0, 0]], MatrixRole::Generator).unwrap();
        let c = codewords_of(&z).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(0), &[0, 0, 0]);
        let id =
            MatrixModZq::from_digit_rows(3, &["100", "010", "001"], MatrixRole::Generator).unwrap();
        assert_eq!(min_hamming_distance(&id).unwrap(), 1);
    }

    #[test]
    fn text_round_trip() {
        let h = lee_parity_check(5, 2, false).unwrap();
        let text = h.to_string();
        assert!(text.starts_with("5 2 10 parity\n"));
        assert_eq!(MatrixModZq::parse(&text).unwrap(), h);
        assert!(matches!(
            MatrixModZq::parse("3 1 2 generator\n1 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(MatrixModZq::parse("3 2 2 generator\n1 1\n").is_err());
    }

    #[test]
    fn doubling() {
        let c = CodeBook::from_digit_strings(3, &["0"]).unwrap();
        let d = double_code(&c).unwrap();
        assert_eq!(d.get(0), &[0, 0]);
    }

    #[test]
    fn decoder_on_repetition_outer() {
        let outer = MatrixModZq::from_digit_rows(3, &["111"], MatrixRole::Generator).unwrap();
        let cc = concat_code(&outer, false).unwrap();
        let code = cc.codewords().unwrap();
        assert_eq!(code.len(), 81);
        for x in code.iter() {
            let w = Word::uniform(3, x.to_vec()).unwrap();
            assert_eq!(cc.decode(&w).unwrap(), w);
            for i in 0..x.len() {
                if x[i] > 0 {
                    let mut y = x.to_vec();
                    y[i] -= 1;
                    let got = cc.decode(&Word::uniform(3, y).unwrap()).unwrap();
                    assert_eq!(got, w);
                }
            }
        }
    }
}
