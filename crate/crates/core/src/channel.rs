//! Single-step transition graphs, error balls and the brute-force
//! correctability oracle every construction is checked against.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{decode_asymmetric, DecodeOutcome};
use crate::word::{AlphabetSpec, CodeBook, Word};

/// Default bound on the number of words materialised by ball computations.
pub const DEFAULT_BALL_CAP: usize = 10_000_000;

/// Named per-coordinate channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelKind {
    /// Binary `1 -> 0`.
    Z,
    /// Ternary channel induced by two Z uses: `0 <-> 1`, `0 <-> 2`.
    T,
    /// `i -> i +- 1 mod q`.
    Rq,
    /// `i -> i - 1`, no wrap-around.
    Chain,
    /// `i -> i - 1 mod q`.
    L1Wrap,
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(ChannelKind::Z),
            "t" => Ok(ChannelKind::T),
            "rq" | "r" => Ok(ChannelKind::Rq),
            "chain" => Ok(ChannelKind::Chain),
            "l1-wrap" | "l1wrap" | "wrap" => Ok(ChannelKind::L1Wrap),
            other => Err(Error::param(format!("unknown channel kind '{other}'"))),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::Z => "Z",
            ChannelKind::T => "T",
            ChannelKind::Rq => "Rq",
            ChannelKind::Chain => "chain",
            ChannelKind::L1Wrap => "L1-wrap",
        })
    }
}

/// Directed single-error transitions on the alphabet `{0, .., q-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChannelGraph {
    q: u32,
    succ: Vec<Vec<u8>>,
}

impl ChannelGraph {
    pub fn from_edges<I>(q: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u8, u8)>,
    {
        if !(2..=crate::word::MAX_Q).contains(&q) {
            return Err(Error::param(format!("alphabet size {q} out of range")));
        }
        let mut succ = vec![Vec::new(); q as usize];
        for (a, b) in edges {
            if a as u32 >= q || b as u32 >= q {
                return Err(Error::param(format!(
                    "edge {a}->{b} outside alphabet of size {q}"
                )));
            }
            if a == b {
                return Err(Error::param(format!("self-loop at {a}")));
            }
            succ[a as usize].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Ok(Self { q, succ })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Successors of `a`, ascending.
    pub fn successors(&self, a: u8) -> &[u8] {
        &self.succ[a as usize]
    }

    pub fn edges(&self) -> Vec<(u8, u8)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a as u8, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        self.succ
            .get(a as usize)
            .is_some_and(|s| s.binary_search(&b).is_ok())
    }

    pub fn reversed(&self) -> Self {
        let edges = self.edges().into_iter().map(|(a, b)| (b, a));
        Self::from_edges(self.q, edges).expect("reversal preserves validity")
    }

    /// Symbols other than `a` reachable in `1..=steps` steps.
    pub fn reachable_within(&self, a: u8, steps: u32) -> Vec<u8> {
        let mut seen = vec![false; self.q as usize];
        seen[a as usize] = true;
        let mut frontier = vec![a];
        let mut out = Vec::new();
        for _ in 0..steps {
            let mut next = Vec::new();
            for &s in &frontier {
                for &b in self.successors(s) {
                    if !seen[b as usize] {
                        seen[b as usize] = true;
                        out.push(b);
                        next.push(b);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        out.sort_unstable();
        out
    }
}

/// Builds one of the named channels; `q` must suit the kind.
pub fn make_channel(kind: ChannelKind, q: u32) -> Result<ChannelGraph> {
    let bad = || Error::param(format!("channel {kind} is not defined for q={q}"));
    let edges: Vec<(u8, u8)> = match kind {
        ChannelKind::Z if q == 2 => vec![(1, 0)],
        ChannelKind::T if q == 3 => vec![(0, 1), (0, 2), (1, 0), (2, 0)],
        ChannelKind::Rq if (3..=crate::word::MAX_Q).contains(&q) => (0..q)
            .flat_map(|i| [(i, (i + 1) % q), (i, (i + q - 1) % q)])
            .map(|(a, b)| (a as u8, b as u8))
            .collect(),
        ChannelKind::Chain if (2..=crate::word::MAX_Q).contains(&q) => {
            (1..q).map(|i| (i as u8, (i - 1) as u8)).collect()
        }
        ChannelKind::L1Wrap if (2..=crate::word::MAX_Q).contains(&q) => {
            (0..q).map(|i| (i as u8, ((i + q - 1) % q) as u8)).collect()
        }
        _ => return Err(bad()),
    };
    ChannelGraph::from_edges(q, edges)
}

/// One channel graph per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductChannel {
    coords: Vec<ChannelGraph>,
}

impl ProductChannel {
    pub fn new(coords: Vec<ChannelGraph>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::param(
                "product channel needs at least one coordinate",
            ));
        }
        Ok(Self { coords })
    }

    pub fn uniform(graph: ChannelGraph, n: usize) -> Result<Self> {
        Self::new(vec![graph; n])
    }

    /// `kind^n`.
    pub fn power(kind: ChannelKind, q: u32, n: usize) -> Result<Self> {
        Self::uniform(make_channel(kind, q)?, n)
    }

    /// `Z^m1 x T^m2`, binary coordinates first.
    pub fn z_t(m1: usize, m2: usize) -> Result<Self> {
        let z = make_channel(ChannelKind::Z, 2)?;
        let t = make_channel(ChannelKind::T, 3)?;
        Self::new(
            std::iter::repeat_n(z, m1)
                .chain(std::iter::repeat_n(t, m2))
                .collect(),
        )
    }

    /// Asymmetric decrement channel matching an alphabet profile: `chain_q`
    /// on every coordinate (which is `Z` for binary coordinates).
    pub fn decrement_for(alphabet: &AlphabetSpec) -> Self {
        Self {
            coords: alphabet
                .sizes()
                .iter()
                .map(|&q| make_channel(ChannelKind::Chain, q).expect("q >= 2"))
                .collect(),
        }
    }

    pub fn coords(&self) -> &[ChannelGraph] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn alphabet(&self) -> AlphabetSpec {
        AlphabetSpec::new(self.coords.iter().map(ChannelGraph::q).collect())
            .expect("channel alphabets are valid")
    }

    pub fn reversed(&self) -> Self {
        Self {
            coords: self.coords.iter().map(ChannelGraph::reversed).collect(),
        }
    }

    /// True when every coordinate is the plain decrement chain, i.e. the
    /// channel whose magnitude-counted errors are exactly asymmetric errors.
    pub fn is_decrement_chain(&self) -> bool {
        self.coords
            .iter()
            .all(|g| *g == make_channel(ChannelKind::Chain, g.q()).expect("q >= 2"))
    }

    fn check_alphabet(&self, alphabet: &AlphabetSpec) -> Result<()> {
        if self.coords.len() != alphabet.len()
            || self
                .coords
                .iter()
                .zip(alphabet.sizes())
                .any(|(g, &q)| g.q() != q)
        {
            return Err(Error::AlphabetMismatch(format!(
                "channel alphabet {} vs word alphabet {alphabet}",
                self.alphabet()
            )));
        }
        Ok(())
    }
}

/// How errors inside a ball are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Counting {
    /// Total number of edge traversals over all coordinates.
    Magnitude,
    /// Number of erroneous coordinates, each moving along at most
    /// `per_coordinate` edges.
    Coordinates { per_coordinate: u32 },
}

impl Counting {
    pub fn coordinates() -> Self {
        Counting::Coordinates { per_coordinate: 1 }
    }
}

fn ball_raw(
    x: &[u8],
    ch: &ProductChannel,
    radius: u32,
    counting: Counting,
    cap: usize,
) -> Result<Vec<Vec<u8>>> {
    let cap_error = || Error::CapExceeded {
        what: "error ball".into(),
        needed: cap as u128 + 1,
        cap,
    };
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(x.to_vec());
    match counting {
        Counting::Magnitude => {
            let mut frontier = vec![x.to_vec()];
            for _ in 0..radius {
                let mut next = Vec::new();
                for w in &frontier {
                    for (i, g) in ch.coords.iter().enumerate() {
                        for &b in g.successors(w[i]) {
                            let mut v = w.clone();
                            v[i] = b;
                            if !seen.contains(&v) {
                                if seen.len() >= cap {
                                    return Err(cap_error());
                                }
                                seen.insert(v.clone());
                                next.push(v);
                            }
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                frontier = next;
            }
        }
        Counting::Coordinates { per_coordinate } => {
            let options: Vec<Vec<u8>> = ch
                .coords
                .iter()
                .zip(x)
                .map(|(g, &s)| g.reachable_within(s, per_coordinate))
                .collect();
            let mut current = x.to_vec();
            fill_coordinate_ball(&options, 0, radius, &mut current, &mut seen, cap)
                .map_err(|_| cap_error())?;
        }
    }
    let mut out: Vec<Vec<u8>> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

fn fill_coordinate_ball(
    options: &[Vec<u8>],
    start: usize,
    budget: u32,
    current: &mut Vec<u8>,
    seen: &mut HashSet<Vec<u8>>,
    cap: usize,
) -> std::result::Result<(), ()> {
    if budget == 0 {
        return Ok(());
    }
    for i in start..options.len() {
        let original = current[i];
        for &b in &options[i] {
            current[i] = b;
            if !seen.contains(current.as_slice()) {
                if seen.len() >= cap {
                    return Err(());
                }
                seen.insert(current.clone());
            }
            fill_coordinate_ball(options, i + 1, budget - 1, current, seen, cap)?;
        }
        current[i] = original;
    }
    Ok(())
}

/// All words reachable from `x` within `radius` errors, sorted.
pub fn error_ball(
    x: &Word,
    ch: &ProductChannel,
    radius: u32,
    counting: Counting,
) -> Result<Vec<Word>> {
    error_ball_capped(x, ch, radius, counting, DEFAULT_BALL_CAP)
}

pub fn error_ball_capped(
    x: &Word,
    ch: &ProductChannel,
    radius: u32,
    counting: Counting,
    cap: usize,
) -> Result<Vec<Word>> {
    ch.check_alphabet(x.alphabet())?;
    Ok(ball_raw(x.symbols(), ch, radius, counting, cap)?
        .into_iter()
        .map(|s| Word::from_parts_unchecked(x.alphabet().clone(), s))
        .collect())
}

/// First pair of codewords (by index) whose error balls intersect, if any.
pub fn ball_conflict(
    c: &CodeBook,
    ch: &ProductChannel,
    t: u32,
    counting: Counting,
) -> Result<Option<(usize, usize)>> {
    ch.check_alphabet(c.alphabet())?;
    let balls: Vec<Vec<Vec<u8>>> = c
        .raw()
        .par_iter()
        .map(|w| ball_raw(w, ch, t, counting, DEFAULT_BALL_CAP))
        .collect::<Result<_>>()?;
    let total: usize = balls.iter().map(Vec::len).sum();
    if total > DEFAULT_BALL_CAP {
        return Err(Error::CapExceeded {
            what: "ball oracle".into(),
            needed: total as u128,
            cap: DEFAULT_BALL_CAP,
        });
    }
    let mut owner: HashMap<&[u8], usize> = HashMap::with_capacity(total);
    let mut conflict: Option<(usize, usize)> = None;
    for (i, ball) in balls.iter().enumerate() {
        for v in ball {
            if let Some(&j) = owner.get(v.as_slice()) {
                if j != i {
                    let pair = (j, i);
                    conflict = Some(conflict.map_or(pair, |c| c.min(pair)));
                }
            } else {
                owner.insert(v, i);
            }
        }
        if conflict.is_some() {
            break;
        }
    }
    Ok(conflict)
}

/// True iff radius-`t` error balls around distinct codewords are disjoint.
pub fn corrects_t_errors(
    c: &CodeBook,
    ch: &ProductChannel,
    t: u32,
    counting: Counting,
) -> Result<bool> {
    Ok(ball_conflict(c, ch, t, counting)?.is_none())
}

/// Decodes by searching the reversed channel from the received word.
pub fn ball_decode(
    c: &CodeBook,
    ch: &ProductChannel,
    received: &Word,
    t: u32,
    counting: Counting,
) -> Result<DecodeOutcome> {
    if received.alphabet() != c.alphabet() {
        return Err(Error::AlphabetMismatch(
            "received word and code differ".into(),
        ));
    }
    let reversed = ch.reversed();
    reversed.check_alphabet(received.alphabet())?;
    let hits: Vec<Vec<u8>> =
        ball_raw(received.symbols(), &reversed, t, counting, DEFAULT_BALL_CAP)?
            .into_iter()
            .filter(|v| c.contains(v))
            .collect();
    let alphabet = c.alphabet();
    Ok(match hits.len() {
        0 => DecodeOutcome::Failure,
        1 => DecodeOutcome::Decoded(Word::from_parts_unchecked(
            alphabet.clone(),
            hits[0].clone(),
        )),
        _ => DecodeOutcome::Ambiguous(
            hits.into_iter()
                .map(|v| Word::from_parts_unchecked(alphabet.clone(), v))
                .collect(),
        ),
    })
}

/// How errors are injected per trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Injection {
    /// Every outgoing edge of every coordinate fires with probability `p`;
    /// the first edge that fires is taken, so each coordinate moves at most
    /// one step.
    Independent { p: f64 },
    /// Exactly `errors` single steps on distinct coordinates that have an
    /// outgoing edge (fewer if not enough such coordinates exist).
    Forced { errors: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub injection: Injection,
    pub trials: u64,
    pub seed: u64,
    /// Decoding radius.
    pub t: u32,
    pub counting: Counting,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub trials: u64,
    pub failures: u64,
    pub ambiguous: u64,
    pub decoder_failures: u64,
    pub miscorrections: u64,
    pub errors_injected: u64,
    pub failure_rate: f64,
}

/// Monte Carlo run of the channel and decoder; deterministic for a seed.
pub fn simulate_channel(
    c: &CodeBook,
    ch: &ProductChannel,
    cfg: &SimulationConfig,
) -> Result<SimulationReport> {
    ch.check_alphabet(c.alphabet())?;
    if let Injection::Independent { p } = cfg.injection {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::param(format!("probability {p} outside [0, 1]")));
        }
    }
    if c.is_empty() {
        return Err(Error::TooFewWords { needed: 1, got: 0 });
    }
    let use_asym = ch.is_decrement_chain() && cfg.counting == Counting::Magnitude;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = SimulationReport {
        trials: cfg.trials,
        failures: 0,
        ambiguous: 0,
        decoder_failures: 0,
        miscorrections: 0,
        errors_injected: 0,
        failure_rate: 0.0,
    };
    let alphabet: Arc<AlphabetSpec> = c.alphabet().clone();
    for _ in 0..cfg.trials {
        let sent = c.get(rng.gen_range(0..c.len()));
        let mut received = sent.to_vec();
        match cfg.injection {
            Injection::Independent { p } => {
                for (i, g) in ch.coords.iter().enumerate() {
                    let from = received[i];
                    for &b in g.successors(from) {
                        if rng.gen_bool(p) {
                            received[i] = b;
                            report.errors_injected += 1;
                            break;
                        }
                    }
                }
            }
            Injection::Forced { errors } => {
                let mut movable: Vec<usize> = (0..received.len())
                    .filter(|&i| !ch.coords[i].successors(received[i]).is_empty())
                    .collect();
                for _ in 0..errors {
                    if movable.is_empty() {
                        break;
                    }
                    let i = movable.swap_remove(rng.gen_range(0..movable.len()));
                    let succ = ch.coords[i].successors(received[i]);
                    received[i] = succ[rng.gen_range(0..succ.len())];
                    report.errors_injected += 1;
                }
            }
        }
        let word = Word::from_parts_unchecked(alphabet.clone(), received);
        let outcome = if use_asym {
            decode_asymmetric(c, &word, cfg.t)?
        } else {
            ball_decode(c, ch, &word, cfg.t, cfg.counting)?
        };
        match outcome {
            DecodeOutcome::Decoded(x) if x.symbols() == sent => {}
            DecodeOutcome::Decoded(_) => {
                report.failures += 1;
                report.miscorrections += 1;
            }
            DecodeOutcome::Ambiguous(_) => {
                report.failures += 1;
                report.ambiguous += 1;
            }
            DecodeOutcome::Failure => {
                report.failures += 1;
                report.decoder_failures += 1;
            }
        }
    }
    report.failure_rate = if cfg.trials == 0 {
        0.0
    } else {
        report.failures as f64 / cfg.trials as f64
    };
    Ok(report)
}
