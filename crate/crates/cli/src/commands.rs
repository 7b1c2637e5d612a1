use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use asymcode::bounds::{table2_report, Table1Row, Table2Row};
use asymcode::cyclic::{table3_code, table4_parts, TABLE3_GENERATORS, TABLE4_GENERATORS};
use asymcode::linear::{codewords_capped, concat_code_unchecked, ConcatCode};
use asymcode::ternary::{
    combine_parts, construct_even_unchecked, construct_extended_unchecked,
    construct_odd_mixed_unchecked, corrects_single_zt,
};
use asymcode::*;
use serde_json::json;
use thiserror::Error;

use crate::args::*;
use crate::codefile::{parse_code_file, write_code_file};
use crate::report::{yes_no, ReportDocument};
use crate::{CAP_ENV, EXIT_FALSE, EXIT_OK};

#[derive(Debug, Error)]
pub(crate) enum CliError {
    #[error(transparent)]
    Code(#[from] asymcode::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: asymcode::Error,
    },
    #[error("{0}")]
    Usage(String),
}

type CmdResult<T> = std::result::Result<T, CliError>;

pub(crate) struct Outcome {
    report: ReportDocument,
    /// Code file or matrix text; goes to `--out` or stdout.
    payload: Option<String>,
    /// Replaces the generic text rendering of the report.
    text: Option<String>,
    pub(crate) exit: i32,
}

impl Outcome {
    fn new(report: ReportDocument, exit: i32) -> Self {
        Self {
            report,
            payload: None,
            text: None,
            exit,
        }
    }

    pub(crate) fn emit(&self, cli: &Cli, out: &mut dyn Write) -> CmdResult<()> {
        let out_path = match &cli.command {
            Command::Construct(a) => a.output.out.as_ref(),
            Command::Search(a) => a.output.out.as_ref(),
            _ => None,
        };
        let mut report = self.report.clone();
        if let (Some(path), Some(payload)) = (out_path, &self.payload) {
            std::fs::write(path, payload).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            report.result("written_to", path.display().to_string());
        }
        let io = |source| CliError::Io {
            path: "<stdout>".into(),
            source,
        };
        if cli.json {
            if out_path.is_none() {
                if let Some(p) = &self.payload {
                    report.result("output", p);
                }
            }
            out.write_all(report.to_json().as_bytes()).map_err(io)?;
        } else if let (None, Some(p)) = (out_path, &self.payload) {
            out.write_all(p.as_bytes()).map_err(io)?;
        } else {
            let text = self.text.clone().unwrap_or_else(|| report.to_text());
            out.write_all(text.as_bytes()).map_err(io)?;
        }
        Ok(())
    }
}

fn enum_cap(cli: &Cli) -> CmdResult<usize> {
    if let Some(cap) = cli.cap {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_ENV}={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn read(path: &Path) -> CmdResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_code(path: &Path) -> CmdResult<CodeBook> {
    parse_code_file(&read(path)?).map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })
}

fn read_matrix(path: &Path) -> CmdResult<MatrixModZq> {
    MatrixModZq::parse(&read(path)?).map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })
}

pub(crate) fn execute(cli: &Cli, echo: &[String]) -> CmdResult<Outcome> {
    let report = ReportDocument::new(echo);
    match &cli.command {
        Command::Construct(a) => construct(cli, a, report),
        Command::Verify(a) => verify(a, report),
        Command::Search(a) => search(a, report),
        Command::Decode(a) => decode(a, report),
        Command::Simulate(a) => simulate(a, report),
        Command::Bound(b) => bound(b, report),
        Command::Tables(a) => tables(a, report),
    }
}

fn describe(report: &mut ReportDocument, c: &CodeBook) {
    report.result("size", c.len()).result("length", c.length());
    report.result("alphabet", c.alphabet().to_string());
    if let Some(name) = c.name() {
        report.result("name", name);
    }
}

/// Checks that `c` corrects `t` asymmetric errors, recording the outcome.
fn certify(report: &mut ReportDocument, c: &CodeBook, t: u32, unchecked: bool) -> i32 {
    report.result("t", t);
    if unchecked {
        report.result("oracle", "skipped");
        return EXIT_OK;
    }
    let ok = is_t_code(c, t);
    report.verified = Some(ok);
    if let Ok(d) = min_asym_distance(c) {
        report.result("min_distance", d);
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn code_outcome(
    mut report: ReportDocument,
    mut code: CodeBook,
    t: u32,
    unchecked: bool,
) -> Outcome {
    describe(&mut report, &code);
    let exit = certify(&mut report, &code, t, unchecked);
    if report.verified == Some(true) {
        code.set_meta("corrects", format!("{t} asymmetric"));
    }
    let payload = write_code_file(&code);
    let mut o = Outcome::new(report, exit);
    o.payload = Some(payload);
    o
}

fn parse_element(text: &str) -> CmdResult<Vec<u32>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("bad group element {text:?}")))
        })
        .collect()
}

fn construct(cli: &Cli, a: &ConstructArgs, mut report: ReportDocument) -> CmdResult<Outcome> {
    let cap = enum_cap(cli)?;
    let unchecked = a.unchecked;
    match &a.kind {
        ConstructKind::Vt { n, g, q } => {
            report.param("n", n).param("g", g).param("q", q);
            if *g as usize > *n {
                return Err(CliError::Usage(format!("residue {g} outside 0..={n}")));
            }
            let order = u32::try_from(n + 1).map_err(|_| CliError::Usage("n too large".into()))?;
            let group = AbelianGroup::cyclic(order)?;
            let mut code = asymcode::group::cr_code_with_coefficients(
                &group,
                &group_elements(&group),
                &[*g],
                *q,
                cap,
            )?;
            code.set_name(Some(format!("VT({n},{g})")));
            Ok(code_outcome(report, code, 1, unchecked))
        }
        ConstructKind::Cr { group, g, q } => {
            let group = AbelianGroup::parse(group)?;
            let target = match g {
                Some(text) => parse_element(text)?,
                None => group.identity(),
            };
            report
                .param("group", group.to_string())
                .param("g", &target)
                .param("q", q);
            let code = asymcode::group::cr_code_with_coefficients(
                &group,
                &group_elements(&group),
                &target,
                *q,
                cap,
            )?;
            Ok(code_outcome(report, code, 1, unchecked))
        }
        ConstructKind::Ternary { input } => {
            let c = read_code(input)?;
            report.param("input", input.display().to_string());
            let sizes = c.alphabet().sizes();
            let mixed = sizes.first() == Some(&2) && sizes[1..].iter().all(|&s| s == 3);
            let kind = if c.alphabet().uniform_q() == Some(3) {
                "ternary"
            } else if mixed && sizes.len() > 1 {
                "mixed"
            } else {
                return Err(CliError::Usage(format!(
                    "input alphabet {} is neither ternary nor 2,3,..,3",
                    c.alphabet()
                )));
            };
            if !unchecked {
                let ok = if kind == "ternary" {
                    let ch = ProductChannel::power(ChannelKind::T, 3, c.length())?;
                    corrects_t_errors(&c, &ch, 1, Counting::Magnitude)?
                } else {
                    corrects_single_zt(&c)?
                };
                report.result("input_corrects_single_error", ok);
                if !ok {
                    report.verified = Some(false);
                    return Ok(Outcome::new(report, EXIT_FALSE));
                }
            }
            let image = if kind == "ternary" {
                construct_even_unchecked(&c)?
            } else {
                construct_odd_mixed_unchecked(&c)?
            };
            Ok(code_outcome(report, image, 1, unchecked))
        }
        ConstructKind::Extended { part0, part1 } => {
            let c0 = read_code(part0)?;
            let c1 = read_code(part1)?;
            report
                .param("part0", part0.display().to_string())
                .param("part1", part1.display().to_string());
            if !unchecked {
                let ok = corrects_single_zt(&combine_parts(&c0, &c1)?)?;
                report.result("input_corrects_single_error", ok);
                if !ok {
                    report.verified = Some(false);
                    return Ok(Outcome::new(report, EXIT_FALSE));
                }
            }
            let image = construct_extended_unchecked(&c0, &c1)?;
            Ok(code_outcome(report, image, 1, unchecked))
        }
        ConstructKind::Concat {
            matrix,
            rows,
            q,
            role,
            linear,
        } => {
            let outer = match (matrix, q) {
                (Some(path), _) => {
                    report.param("matrix", path.display().to_string());
                    read_matrix(path)?
                }
                (None, Some(q)) if !rows.is_empty() => {
                    report
                        .param("rows", rows)
                        .param("q", q)
                        .param("role", role.to_string());
                    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
                    MatrixModZq::from_digit_rows(*q, &rows, *role)?
                }
                _ => {
                    return Err(CliError::Usage(
                        "give --matrix FILE or --rows R,.. --q Q".into(),
                    ))
                }
            };
            linear_outcome(report, &outer, linear, unchecked, cap)
        }
        ConstructKind::Hamming { q, r, linear } => {
            report.param("q", q).param("r", r);
            let h = hamming_parity_check(*q, *r)?;
            linear_outcome(report, &h, linear, unchecked, cap)
        }
        ConstructKind::Lee { q, r, full, linear } => {
            report.param("q", q).param("r", r).param("full", full);
            let h = lee_parity_check(*q, *r, *full)?;
            linear_outcome(report, &h, linear, unchecked, cap)
        }
        ConstructKind::Double { input } => {
            let c = read_code(input)?;
            report.param("input", input.display().to_string());
            let d = min_asym_distance(&c)?;
            let doubled = double_code(&c)?;
            // Doubling doubles the asymmetric distance.
            Ok(code_outcome(report, doubled, 2 * d - 1, unchecked))
        }
    }
}

fn linear_outcome(
    mut report: ReportDocument,
    outer: &MatrixModZq,
    linear: &LinearArgs,
    unchecked: bool,
    cap: usize,
) -> CmdResult<Outcome> {
    report.param("shorten", linear.shorten);
    let code: ConcatCode = if unchecked {
        concat_code_unchecked(outer, linear.shorten)?
    } else {
        concat_code(outer, linear.shorten)?
    };
    let (n, k, q) = (code.length(), code.dimension(), code.generator.q());
    let name = format!("[{n},{k}]_{q}");
    report.result("code", &name);
    match linear.emit {
        Emit::Words => {
            let mut words = codewords_capped(&code.generator, cap)?;
            words.set_name(Some(name));
            Ok(code_outcome(report, words, 1, unchecked))
        }
        Emit::Matrix => {
            report.result("length", n).result("dimension", k);
            if unchecked {
                report.result("oracle", "skipped");
            } else {
                // Too many words to enumerate in general; the outer code's
                // single-error property is what makes the concatenation work.
                let ok = is_single_rq_correcting(&code.outer_parity);
                report.result("check", "outer parity check corrects one R_q error");
                report.verified = Some(ok);
            }
            let exit = if report.verified == Some(false) {
                EXIT_FALSE
            } else {
                EXIT_OK
            };
            let mut o = Outcome::new(report, exit);
            o.payload = Some(code.generator.to_string());
            Ok(o)
        }
    }
}

fn verify(a: &VerifyArgs, mut report: ReportDocument) -> CmdResult<Outcome> {
    let c = read_code(&a.input)?;
    report
        .param("input", a.input.display().to_string())
        .param("t", a.t);
    describe(&mut report, &c);
    let ok = match a.model {
        Model::Asym => {
            report.param("model", "asym");
            if let Ok(d) = min_asym_distance(&c) {
                report.result("min_distance", d);
            }
            is_t_code(&c, a.t)
        }
        Model::Limited => {
            report
                .param("model", "limited")
                .param("l", a.l)
                .param("wrap", a.wrap);
            let ok = is_lm_code(&c, a.t, a.l, a.wrap)?;
            if a.wrap {
                let q = c.alphabet().uniform_q().expect("checked by is_lm_code");
                let bound = sphere_bound(q as u64, c.length() as u64, a.t as u64, a.l as u64);
                let size = num_bigint::BigUint::from(c.len());
                report
                    .result("sphere_bound", bound.to_string())
                    .result("within_bound", size <= bound)
                    .result("perfect", ok && size == bound);
            }
            ok
        }
    };
    report.verified = Some(ok);
    Ok(Outcome::new(report, if ok { EXIT_OK } else { EXIT_FALSE }))
}

fn search(a: &SearchArgs, mut report: ReportDocument) -> CmdResult<Outcome> {
    if !(a.budget.is_finite() && a.budget >= 0.0) {
        return Err(CliError::Usage(format!("bad budget {}", a.budget)));
    }
    let mut cfg = SearchConfig {
        seed: a.seed,
        time_budget: Duration::from_secs_f64(a.budget),
        strategy: a.strategy,
        max_nodes: a.max_nodes,
        ..SearchConfig::default()
    };
    if let Some(w) = a.workers {
        cfg.worker_count = w;
    }
    report
        .param("m", a.m)
        .param("strategy", a.strategy)
        .param("budget_seconds", a.budget)
        .param("workers", cfg.worker_count)
        .param("max_nodes", a.max_nodes);
    report.seed = Some(a.seed);
    let (code, score, proven, nodes, candidates, ok) = match a.kind {
        SearchKind::Cyclic => {
            report.param("kind", "cyclic");
            let r = search_cyclic(a.m, &cfg)?;
            let ch = ProductChannel::power(ChannelKind::T, 3, a.m)?;
            let ok = corrects_t_errors(&r.code, &ch, 1, Counting::Magnitude)?;
            let code = if a.binary {
                construct_even_unchecked(&r.code)?
            } else {
                r.code
            };
            (code, r.score, r.proven_optimal, r.nodes, r.candidates, ok)
        }
        SearchKind::Extended => {
            report.param("kind", "extended");
            let r = search_extended(a.m, &cfg)?;
            let mixed = combine_parts(&r.part0, &r.part1)?;
            let ok = corrects_single_zt(&mixed)?;
            report
                .result("part0_size", r.part0.len())
                .result("part1_size", r.part1.len());
            let code = if a.binary {
                construct_extended_unchecked(&r.part0, &r.part1)?
            } else {
                mixed
            };
            (code, r.score, r.proven_optimal, r.nodes, r.candidates, ok)
        }
    };
    describe(&mut report, &code);
    report
        .result("score", score)
        .result("nodes", nodes)
        .result("candidate_orbits", candidates);
    report.optimal = Some(proven);
    report.verified = Some(ok);
    let mut o = Outcome::new(report, if ok { EXIT_OK } else { EXIT_FALSE });
    o.payload = Some(write_code_file(&code));
    Ok(o)
}

fn received_len(text: &str) -> usize {
    if text.contains(',') {
        text.split(',').count()
    } else {
        text.trim().chars().count()
    }
}

fn decode(a: &DecodeArgs, mut report: ReportDocument) -> CmdResult<Outcome> {
    report.param("received", &a.received).param("t", a.t);
    if let Some(path) = &a.matrix {
        report.param("matrix", path.display().to_string());
        if a.t != 1 {
            return Err(CliError::Usage(
                "syndrome decoding corrects a single error; use --t 1".into(),
            ));
        }
        let m = read_matrix(path)?;
        let h = match m.role() {
            MatrixRole::Parity => m,
            MatrixRole::Generator => m.parity_check()?,
        };
        let alphabet = Arc::new(AlphabetSpec::uniform(h.q(), received_len(&a.received))?);
        let y = Word::parse(alphabet, &a.received)?;
        return Ok(match decode_concat(&h, &y) {
            Ok(x) => {
                report
                    .result("outcome", "decoded")
                    .result("decoded", x.to_string());
                Outcome::new(report, EXIT_OK)
            }
            Err(asymcode::Error::Uncorrectable(why)) => {
                report
                    .result("outcome", "uncorrectable")
                    .result("reason", why);
                Outcome::new(report, EXIT_FALSE)
            }
            Err(e) => return Err(e.into()),
        });
    }
    let path = a.code.as_ref().expect("clap requires --code or --matrix");
    report.param("code", path.display().to_string());
    let c = read_code(path)?;
    let y = Word::parse(c.alphabet().clone(), &a.received)?;
    Ok(match decode_asymmetric(&c, &y, a.t)? {
        DecodeOutcome::Decoded(x) => {
            report
                .result("outcome", "decoded")
                .result("decoded", x.to_string());
            Outcome::new(report, EXIT_OK)
        }
        DecodeOutcome::Ambiguous(xs) => {
            let xs: Vec<String> = xs.iter().map(Word::to_string).collect();
            report
                .result("outcome", "ambiguous")
                .result("candidates", xs);
            Outcome::new(report, EXIT_FALSE)
        }
        DecodeOutcome::Failure => {
            report.result("outcome", "failure");
            Outcome::new(report, EXIT_FALSE)
        }
    })
}

fn simulate(a: &SimulateArgs, mut report: ReportDocument) -> CmdResult<Outcome> {
    let c = read_code(&a.code)?;
    report
        .param("code", a.code.display().to_string())
        .param("trials", a.trials)
        .param("t", a.t);
    report.seed = Some(a.seed);
    let injection = match (a.p, a.errors) {
        (Some(p), None) => {
            report.param("p", p);
            Injection::Independent { p }
        }
        (None, Some(errors)) => {
            report.param("errors", errors);
            Injection::Forced { errors }
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --p and --errors".into(),
            ))
        }
    };
    let ch = ProductChannel::decrement_for(c.alphabet());
    let cfg = SimulationConfig {
        injection,
        trials: a.trials,
        seed: a.seed,
        t: a.t,
        counting: Counting::Magnitude,
    };
    let r = simulate_channel(&c, &ch, &cfg)?;
    describe(&mut report, &c);
    report
        .result("failures", r.failures)
        .result("ambiguous", r.ambiguous)
        .result("decoder_failures", r.decoder_failures)
        .result("miscorrections", r.miscorrections)
        .result("errors_injected", r.errors_injected)
        .result("failure_rate", r.failure_rate);
    Ok(Outcome::new(report, EXIT_OK))
}

fn bound(b: &BoundCommand, mut report: ReportDocument) -> CmdResult<Outcome> {
    match *b {
        BoundCommand::Sphere { q, n, t, l } => {
            if q < 2 || n == 0 || l == 0 {
                return Err(CliError::Usage("need q >= 2, n >= 1 and l >= 1".into()));
            }
            if q <= 2 * l {
                return Err(CliError::Usage(format!(
                    "wrap-around needs q > 2l (q={q}, l={l})"
                )));
            }
            report
                .param("q", q)
                .param("n", n)
                .param("t", t)
                .param("l", l);
            let v = sphere_bound(q, n, t, l);
            report.result("sphere_bound", v.to_string());
            let mut o = Outcome::new(report, EXIT_OK);
            o.text = Some(format!("{v}\n"));
            Ok(o)
        }
    }
}

fn tables(a: &TablesArgs, mut report: ReportDocument) -> CmdResult<Outcome> {
    match a.table {
        Table::Table1 => {
            let rows = table1_report()?;
            let flagged = rows.iter().filter(|r| r.deviates).count();
            report
                .result("rows", &rows)
                .result("deviating_rows", flagged);
            let mut o = Outcome::new(report, EXIT_OK);
            o.text = Some(table1_text(&rows));
            Ok(o)
        }
        Table::Table2 => {
            let rows = table2_report(a.verify)?;
            let bad = rows.iter().any(|r| r.mismatch || r.verified == Some(false));
            report.param("verify", a.verify).result("rows", &rows);
            if a.verify {
                report.verified = Some(rows.iter().all(|r| r.verified == Some(true)));
            }
            let mut o = Outcome::new(report, if bad { EXIT_FALSE } else { EXIT_OK });
            o.text = Some(table2_text(&rows));
            Ok(o)
        }
        Table::VerifyGenerators => {
            let mut rows = Vec::new();
            let mut text = String::from("table     m  words  corrects\n");
            for &(m, gens) in TABLE3_GENERATORS {
                let c = table3_code(m)?;
                let ch = ProductChannel::power(ChannelKind::T, 3, m)?;
                let ok = corrects_t_errors(&c, &ch, 1, Counting::Magnitude)?;
                text.push_str(&format!("cyclic    {m}  {:>5}  {}\n", c.len(), yes_no(ok)));
                rows.push(json!({"table": "cyclic", "m": m, "generators": gens.len(), "words": c.len(), "corrects": ok}));
            }
            for &(m, gens) in TABLE4_GENERATORS {
                let (c0, c1) = table4_parts(m)?;
                let ok = corrects_single_zt(&combine_parts(&c0, &c1)?)?;
                let words = c0.len() + c1.len();
                text.push_str(&format!("extended  {m}  {words:>5}  {}\n", yes_no(ok)));
                rows.push(json!({"table": "extended", "m": m, "generators": gens.len(), "words": words, "corrects": ok}));
            }
            let all = rows.iter().all(|r| r["corrects"] == json!(true));
            report.result("rows", rows);
            report.verified = Some(all);
            let mut o = Outcome::new(report, if all { EXIT_OK } else { EXIT_FALSE });
            o.text = Some(text);
            Ok(o)
        }
    }
}

fn table1_text(rows: &[Table1Row]) -> String {
    let mut s = String::from("  n   m   r  ternary image     binary k      s  published  flag\n");
    for r in rows {
        let c = &r.computed;
        s.push_str(&format!(
            "{:>3} {:>3} {:>3}  {:>13}  {:>11}  {:.3}  {:>9.3}  {}\n",
            r.n,
            c.m,
            c.r,
            c.ternary_image.to_string(),
            c.binary_dimension,
            c.s,
            r.reference,
            if r.deviates { "deviates" } else { "" }
        ));
    }
    s
}

fn table2_text(rows: &[Table2Row]) -> String {
    let mut s = String::from(
        " n  group            CR  cyclic  ternary  partition         known          verified\n",
    );
    for r in rows {
        let rf = &r.reference;
        let partition = rf
            .partition
            .map(|(v, src)| format!("{v} ({src})"))
            .unwrap_or_else(|| "-".into());
        let verified = match r.verified {
            Some(v) => yes_no(v),
            None => "-",
        };
        s.push_str(&format!(
            "{:>2}  {:<13} {:>5}  {:>6}  {:>7}  {:<16}  {:>5}..{:<5}  {}{}\n",
            rf.n,
            r.cr_group,
            r.cr,
            r.cyclic,
            rf.ternary,
            partition,
            rf.known.0,
            rf.known.1,
            verified,
            if r.mismatch { "  MISMATCH" } else { "" }
        ));
    }
    s
}
