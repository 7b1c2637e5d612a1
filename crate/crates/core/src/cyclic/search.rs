//! Maximum-weight clique search over the orbit-compatibility graph.
//!
//! Vertices are self-compatible orbits weighted by their binary-image
//! contribution; a clique is a shift-closed code. The exact strategy is a
//! branch and bound with a greedy colouring bound, split into one subtree per
//! first vertex so the subtrees can run in parallel. Subtrees share the best
//! score found so far but only prune against it strictly, which keeps the
//! returned code independent of scheduling whenever the search completes.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate_orbits, index_of, orbits_compatible, t_ball_indices, t_channel, Orbit};
use crate::error::{Error, Result};
use crate::word::{AlphabetSpec, CodeBook};

/// Largest `m` accepted by the heuristic strategies.
const MAX_SEARCH_LENGTH: usize = 10;
const MAX_EXACT_CYCLIC: usize = 8;
const MAX_EXACT_EXTENDED: usize = 7;
const DEFAULT_RESTARTS: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    ExactClique,
    Greedy,
    RandomizedRestart,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact-clique" => Ok(Strategy::ExactClique),
            "greedy" => Ok(Strategy::Greedy),
            "random" | "randomized" | "randomized-restart" => Ok(Strategy::RandomizedRestart),
            other => Err(Error::param(format!("unknown search strategy '{other}'"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::ExactClique => "exact-clique",
            Strategy::Greedy => "greedy",
            Strategy::RandomizedRestart => "randomized-restart",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub time_budget: Duration,
    pub strategy: Strategy,
    pub worker_count: usize,
    /// Per-subtree node limit for the exact strategy, or the number of
    /// restarts for the randomized one. Setting it makes truncated exact
    /// runs reproducible (subtrees then stop sharing bounds).
    pub max_nodes: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            time_budget: Duration::from_secs(60),
            strategy: Strategy::ExactClique,
            worker_count: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_nodes: None,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.time_budget.is_zero() {
            return Err(Error::param("time budget must be positive"));
        }
        if self.worker_count == 0 {
            return Err(Error::param("worker count must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub code: CodeBook,
    /// Binary image size of `code`.
    pub score: u64,
    /// False when the search was cut short or is heuristic.
    pub proven_optimal: bool,
    pub nodes: u64,
    /// Number of self-compatible orbits considered.
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedSearchResult {
    pub part0: CodeBook,
    pub part1: CodeBook,
    pub score: u64,
    pub proven_optimal: bool,
    pub nodes: u64,
    pub candidates: usize,
}

type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bit_clear(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

fn bit_get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn bits_disjoint(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn first_bit(b: &Bits) -> Option<usize> {
    b.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
}

fn is_empty(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

/// Vertex-weighted graph with vertices sorted by weight, heaviest first.
struct Graph {
    weights: Vec<u64>,
    adj: Vec<Bits>,
}

struct Clique {
    vertices: Vec<usize>,
    score: u64,
    proven: bool,
    nodes: u64,
}

fn greedy(g: &Graph, order: &[usize]) -> (Vec<usize>, u64) {
    let mut chosen: Vec<usize> = Vec::new();
    for &v in order {
        if chosen.iter().all(|&u| bit_get(&g.adj[u], v)) {
            chosen.push(v);
        }
    }
    let score = chosen.iter().map(|&v| g.weights[v]).sum();
    (chosen, score)
}

struct Branch<'a> {
    g: &'a Graph,
    global: &'a AtomicU64,
    share: bool,
    deadline: Instant,
    timed_out: &'a AtomicBool,
    max_nodes: Option<u64>,
    nodes: u64,
    aborted: bool,
    best: u64,
    best_clique: Vec<usize>,
}

impl Branch<'_> {
    fn expand(&mut self, cw: u64, clique: &mut Vec<usize>, mut p: Bits) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m) {
            self.aborted = true;
            return;
        }
        if self.nodes.is_multiple_of(256)
            && (self.timed_out.load(Ordering::Relaxed) || Instant::now() >= self.deadline)
        {
            self.timed_out.store(true, Ordering::Relaxed);
            self.aborted = true;
            return;
        }
        if cw > self.best {
            self.best = cw;
            self.best_clique = clique.clone();
            if self.share {
                self.global.fetch_max(cw, Ordering::Relaxed);
            }
        }
        if is_empty(&p) {
            return;
        }
        let (order, bounds) = self.colour(&p);
        for k in (0..order.len()).rev() {
            let bound = cw + bounds[k];
            if bound <= self.best || bound < self.global.load(Ordering::Relaxed) {
                return;
            }
            let v = order[k];
            let next: Bits = p.iter().zip(&self.g.adj[v]).map(|(a, b)| a & b).collect();
            clique.push(v);
            self.expand(cw + self.g.weights[v], clique, next);
            clique.pop();
            if self.aborted {
                return;
            }
            bit_clear(&mut p, v);
        }
    }

    /// Greedy colouring; `bounds[k]` is the sum of class maxima up to the
    /// class of `order[k]`.
    fn colour(&self, p: &Bits) -> (Vec<usize>, Vec<u64>) {
        let mut uncoloured = p.clone();
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        let mut total = 0;
        while !is_empty(&uncoloured) {
            let mut q = uncoloured.clone();
            let mut class_max = None;
            while let Some(v) = first_bit(&q) {
                // Vertices are sorted heaviest first, so the first is the max.
                class_max.get_or_insert(self.g.weights[v]);
                for (a, b) in q.iter_mut().zip(&self.g.adj[v]) {
                    *a &= !b;
                }
                bit_clear(&mut q, v);
                bit_clear(&mut uncoloured, v);
                order.push(v);
            }
            total += class_max.unwrap_or(0);
            bounds.resize(order.len(), total);
        }
        (order, bounds)
    }
}

fn pool(cfg: &SearchConfig) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count)
        .build()
        .map_err(|e| Error::param(format!("cannot start worker pool: {e}")))
}

fn exact(g: &Graph, cfg: &SearchConfig) -> Result<Clique> {
    let n = g.weights.len();
    let order: Vec<usize> = (0..n).collect();
    let (seed_clique, seed_score) = greedy(g, &order);
    let global = AtomicU64::new(seed_score);
    let timed_out = AtomicBool::new(false);
    let deadline = Instant::now() + cfg.time_budget;
    let share = cfg.max_nodes.is_none();
    let outs: Vec<(u64, Vec<usize>, bool, u64)> = pool(cfg)?.install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut cand = g.adj[i].clone();
                for j in 0..=i {
                    bit_clear(&mut cand, j);
                }
                let mut b = Branch {
                    g,
                    global: &global,
                    share,
                    deadline,
                    timed_out: &timed_out,
                    max_nodes: cfg.max_nodes,
                    nodes: 0,
                    aborted: false,
                    best: 0,
                    best_clique: Vec::new(),
                };
                let mut clique = vec![i];
                b.expand(g.weights[i], &mut clique, cand);
                (b.best, b.best_clique, b.aborted, b.nodes)
            })
            .collect()
    });
    let mut best = Clique {
        vertices: seed_clique,
        score: seed_score,
        proven: true,
        nodes: 0,
    };
    for (score, clique, aborted, nodes) in outs {
        best.nodes += nodes;
        best.proven &= !aborted;
        if score > best.score {
            best.score = score;
            best.vertices = clique;
        }
    }
    Ok(best)
}

fn randomized(g: &Graph, cfg: &SearchConfig) -> Result<Clique> {
    let n = g.weights.len();
    let restarts = cfg.max_nodes.unwrap_or(DEFAULT_RESTARTS);
    let deadline = Instant::now() + cfg.time_budget;
    let (mut best_v, mut best_s) = greedy(g, &(0..n).collect::<Vec<_>>());
    let mut done = 0u64;
    let pool = pool(cfg)?;
    let chunk = 64u64;
    while done < restarts {
        if Instant::now() >= deadline {
            break;
        }
        let hi = (done + chunk).min(restarts);
        let outs: Vec<(Vec<usize>, u64)> = pool.install(|| {
            (done..hi)
                .into_par_iter()
                .map(|r| {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    rng.set_stream(r);
                    let mut keyed: Vec<(f64, usize)> = (0..n)
                        .map(|v| (g.weights[v] as f64 * rng.gen_range(0.25..1.0), v))
                        .collect();
                    keyed.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
                    let order: Vec<usize> = keyed.into_iter().map(|(_, v)| v).collect();
                    greedy(g, &order)
                })
                .collect()
        });
        for (v, s) in outs {
            if s > best_s {
                best_s = s;
                best_v = v;
            }
        }
        done = hi;
    }
    Ok(Clique {
        vertices: best_v,
        score: best_s,
        proven: false,
        nodes: done,
    })
}

fn solve(g: &Graph, cfg: &SearchConfig) -> Result<Clique> {
    match cfg.strategy {
        Strategy::ExactClique => exact(g, cfg),
        Strategy::Greedy => {
            let (vertices, score) = greedy(g, &(0..g.weights.len()).collect::<Vec<_>>());
            Ok(Clique {
                vertices,
                score,
                proven: false,
                nodes: 0,
            })
        }
        Strategy::RandomizedRestart => randomized(g, cfg),
    }
}

/// Self-compatible orbits with their ball-union and member bitsets over all
/// `3^m` words.
struct OrbitData {
    orbits: Vec<Orbit>,
    balls: Vec<Bits>,
    members: Vec<Bits>,
}

fn orbit_data(m: usize) -> Result<OrbitData> {
    let t = t_channel();
    let size = 3usize.pow(m as u32);
    let orbits: Vec<Orbit> = enumerate_orbits(m)?
        .into_iter()
        .filter(|o| orbits_compatible(o, o, m))
        .collect();
    let (balls, members) = orbits
        .par_iter()
        .map(|o| {
            let mut ball = bits_new(size);
            let mut mem = bits_new(size);
            for w in o.members() {
                bit_set(&mut mem, index_of(w));
                for i in t_ball_indices(w, &t) {
                    bit_set(&mut ball, i);
                }
            }
            (ball, mem)
        })
        .unzip();
    Ok(OrbitData {
        orbits,
        balls,
        members,
    })
}

/// Relabels vertices heaviest first (ties by original index) and builds the
/// adjacency from `compatible(a, b)` on original labels.
fn build_graph<F>(weights: &[u64], compatible: F) -> (Graph, Vec<usize>)
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let n = weights.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    let adj: Vec<Bits> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = bits_new(n);
            for j in 0..n {
                if i != j && compatible(perm[i], perm[j]) {
                    bit_set(&mut row, j);
                }
            }
            row
        })
        .collect();
    let g = Graph {
        weights: perm.iter().map(|&v| weights[v]).collect(),
        adj,
    };
    (g, perm)
}

fn check_m(m: usize, cfg: &SearchConfig, exact_limit: usize) -> Result<()> {
    cfg.validate()?;
    if m == 0 || m > MAX_SEARCH_LENGTH {
        return Err(Error::param(format!(
            "search length must be in 1..={MAX_SEARCH_LENGTH}"
        )));
    }
    if cfg.strategy == Strategy::ExactClique && m > exact_limit {
        return Err(Error::param(format!(
            "exact search is limited to m <= {exact_limit}; use a heuristic strategy"
        )));
    }
    Ok(())
}

fn union_code(m: usize, orbits: impl Iterator<Item = Orbit>) -> Result<CodeBook> {
    let alphabet = Arc::new(AlphabetSpec::uniform(3, m)?);
    CodeBook::new(
        alphabet,
        orbits.flat_map(|o| o.members().to_vec()).collect(),
    )
}

fn annotate(c: &mut CodeBook, cfg: &SearchConfig, clique: &Clique) {
    c.set_meta("strategy", cfg.strategy.to_string());
    c.set_meta("seed", cfg.seed.to_string());
    c.set_meta("workers", cfg.worker_count.to_string());
    c.set_meta("score", clique.score.to_string());
    c.set_meta(
        "optimal",
        if clique.proven {
            "proven"
        } else {
            "not proven"
        },
    );
}

/// Shift-closed ternary code of length `m` correcting one `T` error, with
/// the largest binary image the chosen strategy finds.
pub fn search_cyclic(m: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    check_m(m, cfg, MAX_EXACT_CYCLIC)?;
    let data = orbit_data(m)?;
    let weights: Vec<u64> = data.orbits.iter().map(Orbit::weight_score).collect();
    let (g, perm) = build_graph(&weights, |a, b| {
        bits_disjoint(&data.balls[a], &data.balls[b])
    });
    let clique = solve(&g, cfg)?;
    let chosen = clique
        .vertices
        .iter()
        .map(|&v| data.orbits[perm[v]].clone());
    let mut code = union_code(m, chosen)?;
    code.set_name(Some(format!("cyclic-search-m{m}")));
    annotate(&mut code, cfg, &clique);
    Ok(SearchResult {
        code,
        score: clique.score,
        proven_optimal: clique.proven,
        nodes: clique.nodes,
        candidates: data.orbits.len(),
    })
}

/// Two shift-closed parts `C0`, `C1` of length `m` such that the code
/// `0C0 u 1C1` corrects one error on `Z x T^m`, maximising the binary image.
pub fn search_extended(m: usize, cfg: &SearchConfig) -> Result<ExtendedSearchResult> {
    check_m(m, cfg, MAX_EXACT_EXTENDED)?;
    let data = orbit_data(m)?;
    let k = data.orbits.len();
    // Vertex v < k is orbit v in part 0, v >= k is orbit v - k in part 1.
    let weights: Vec<u64> = (0..2 * k)
        .map(|v| data.orbits[v % k].weight_score())
        .collect();
    let (g, perm) = build_graph(&weights, |a, b| {
        let (pa, oa, pb, ob) = (a / k, a % k, b / k, b % k);
        match (pa, pb) {
            (0, 1) => bits_disjoint(&data.members[ob], &data.balls[oa]),
            (1, 0) => bits_disjoint(&data.members[oa], &data.balls[ob]),
            _ => bits_disjoint(&data.balls[oa], &data.balls[ob]),
        }
    });
    let clique = solve(&g, cfg)?;
    let (mut in0, mut in1) = (Vec::new(), Vec::new());
    for &v in &clique.vertices {
        let orig = perm[v];
        let o = data.orbits[orig % k].clone();
        if orig < k {
            in0.push(o);
        } else {
            in1.push(o);
        }
    }
    let mut part0 = union_code(m, in0.into_iter())?;
    let mut part1 = union_code(m, in1.into_iter())?;
    part0.set_name(Some(format!("extended-search-m{m}-part0")));
    part1.set_name(Some(format!("extended-search-m{m}-part1")));
    annotate(&mut part0, cfg, &clique);
    annotate(&mut part1, cfg, &clique);
    Ok(ExtendedSearchResult {
        part0,
        part1,
        score: clique.score,
        proven_optimal: clique.proven,
        nodes: clique.nodes,
        candidates: k,
    })
}
