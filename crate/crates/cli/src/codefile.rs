//! Plain-text code files.
//!
//! ```text
//! v=1 q=3 n=5 name=example code
//! # group=Z3+Z3
//! 00000
//! 00011
//! ```
//!
//! The header carries the format version, the alphabet profile (`q=3`, or
//! `q=2,3,3` for mixed alphabets), the length and an optional name that runs
//! to the end of the line. `# key=value` lines are metadata, other `#` lines
//! and blank lines are ignored. Each remaining line is one codeword: digits
//! when every alphabet has at most ten symbols, comma-separated integers
//! otherwise.

use std::sync::Arc;

use asymcode::{AlphabetSpec, CodeBook, Error, Result};

pub const FORMAT_VERSION: u32 = 1;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Header {
    sizes: Vec<u32>,
    n: usize,
    name: Option<String>,
}

fn parse_header(line_no: usize, line: &str) -> Result<Header> {
    let (fields, name) = match line.find("name=") {
        Some(at) => {
            let name = line[at + 5..].trim();
            (&line[..at], (!name.is_empty()).then(|| name.to_owned()))
        }
        None => (line, None),
    };
    let mut profile = None;
    let mut n = None;
    for field in fields.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("expected key=value, got {field:?}")))?;
        match key {
            "v" => {
                let v: u32 = value
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad version {value:?}")))?;
                if v != FORMAT_VERSION {
                    return Err(parse_err(
                        line_no,
                        format!("unsupported format version {v}"),
                    ));
                }
            }
            "q" => {
                let sizes = value
                    .split(',')
                    .map(|s| s.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| parse_err(line_no, format!("bad alphabet profile {value:?}")))?;
                profile = Some(sizes);
            }
            "n" => {
                n = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| parse_err(line_no, format!("bad length {value:?}")))?,
                )
            }
            _ => return Err(parse_err(line_no, format!("unknown header field {key:?}"))),
        }
    }
    let profile = profile.ok_or_else(|| parse_err(line_no, "header is missing q="))?;
    let n = n.ok_or_else(|| parse_err(line_no, "header is missing n="))?;
    let sizes = match profile.len() {
        1 => vec![profile[0]; n],
        k if k == n => profile,
        k => {
            return Err(parse_err(
                line_no,
                format!("alphabet profile has {k} entries but n={n}"),
            ))
        }
    };
    Ok(Header { sizes, n, name })
}

/// Parses a code file; errors carry 1-based line numbers.
pub fn parse_code_file(text: &str) -> Result<CodeBook> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| parse_err(1, "missing header line"))?;
    let header = parse_header(header_line, header)?;
    let alphabet = Arc::new(
        AlphabetSpec::new(header.sizes).map_err(|e| parse_err(header_line, e.to_string()))?,
    );
    debug_assert_eq!(alphabet.len(), header.n);

    let mut words = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut metadata = Vec::new();
    for (line_no, line) in lines {
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.trim().split_once('=') {
                metadata.push((k.trim().to_owned(), v.trim().to_owned()));
            }
            continue;
        }
        let symbols = alphabet
            .parse_symbols(line)
            .map_err(|e| parse_err(line_no, e.to_string()))?;
        if let Some(first) = seen.insert(symbols.clone(), line_no) {
            return Err(parse_err(
                line_no,
                format!("duplicate codeword {line} (first on line {first})"),
            ));
        }
        words.push(symbols);
    }
    let mut code = CodeBook::new(alphabet, words)?;
    code.set_name(header.name);
    for (k, v) in metadata {
        code.set_meta(k, v);
    }
    Ok(code)
}

fn profile(alphabet: &AlphabetSpec) -> String {
    match alphabet.uniform_q() {
        Some(q) => q.to_string(),
        None => alphabet
            .sizes()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(","),
    }
}

/// Serializes a code book; [`parse_code_file`] inverts it.
pub fn write_code_file(code: &CodeBook) -> String {
    let alphabet = code.alphabet();
    let mut out = format!(
        "v={FORMAT_VERSION} q={} n={}",
        profile(alphabet),
        code.length()
    );
    if let Some(name) = code.name().filter(|s| !s.trim().is_empty()) {
        out.push_str(" name=");
        out.push_str(name.trim());
    }
    out.push('\n');
    for (k, v) in code.metadata() {
        out.push_str(&format!("# {k}={v}\n"));
    }
    for w in code.iter() {
        out.push_str(&alphabet.format_symbols(w));
        out.push('\n');
    }
    out
}
