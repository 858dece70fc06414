//! Command-line front end. Every run prints one JSON report
//! `{command, inputs, verdict, payload, elapsed_ms}` on stdout.
//! Exit codes: 0 for pass or inconclusive, 1 for fail, 2 for usage,
//! input or cost-guard errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::advice::{leq_track_dfa, AdviceFunction, AdvisedLanguage};
use crate::corpus::{intersection_check, named_grammar, CorpusLanguage, GrammarLanguage};
use crate::grammars::{enumerate_bounded, Cfg, Dfa, SymbolTable};
use crate::oracle::{Language, Membership, Memoized};
use crate::refuter::{refute_subset, Refutation};
use crate::suite::{run_suite, DEFAULT_SEED};
use crate::swaplab::{build_slice, choose_params, l2_bound_check, slice_stats, swap_scan, SwapParams};
use crate::words::Word;
use crate::{LabError, Result};

#[derive(Parser, Debug)]
#[command(name = "langlab", version, about = "Experiments on nested palindromes, slices and advice")]
struct Cli {
    /// Lift cost guards.
    #[arg(long, global = true)]
    force: bool,
    /// JSON map from symbol names to letters.
    #[arg(long, global = true, value_name = "FILE")]
    symtab: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct LangArgs {
    /// Corpus language, e.g. L2, L_eq, Pal_sharp.
    #[arg(long, conflicts_with = "grammar")]
    lang: Option<String>,
    /// Grammar file or built-in grammar name.
    #[arg(long)]
    grammar: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Expect {
    None,
    Some,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Command {
    /// List the members of a language up to a length.
    Enumerate {
        #[command(flatten)]
        #[serde(flatten)]
        lang: LangArgs,
        #[arg(long)]
        max_len: usize,
    },
    /// Decide membership of one word.
    Member {
        #[command(flatten)]
        #[serde(flatten)]
        lang: LangArgs,
        /// Comma-separated letters.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Compare the intersection of the two component grammars with L2.
    IntersectCheck {
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Occurrence counts of factors over a slice.
    SliceStats {
        #[command(flatten)]
        #[serde(flatten)]
        lang: LangArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        /// Parallel advice builtin or JSON table file.
        #[arg(long)]
        advice: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check the binding bound on the L2 slice.
    BoundCheck {
        #[arg(long)]
        n: usize,
        /// Single factor length; all of 1..=n/4 when omitted.
        #[arg(long)]
        j: Option<usize>,
    },
    /// Search a slice for swap witnesses.
    SwapScan {
        #[command(flatten)]
        #[serde(flatten)]
        lang: LangArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        j_min: usize,
        /// Defaults to n/4, at least 1.
        #[arg(long)]
        j_max: Option<usize>,
        #[arg(long)]
        i_min: Option<usize>,
        #[arg(long)]
        i_max: Option<usize>,
        #[arg(long)]
        advice: Option<String>,
        /// Turn the scan into a check.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Choose and check the density parameters for m.
    Params {
        #[arg(long)]
        m: u64,
    },
    /// Decide words of an advised language.
    AdviceCheck {
        #[arg(long, conflicts_with = "serial")]
        parallel: bool,
        #[arg(long)]
        serial: bool,
        /// Inner acceptor: DFA JSON file, grammar file or name, or `leq-track`.
        #[arg(long)]
        inner: String,
        /// Advice builtin or JSON table file.
        #[arg(long)]
        advice: String,
        /// Words to decide; `;` separates words, `,` separates letters.
        #[arg(long, allow_hyphen_values = true)]
        words: String,
        /// Corpus language the verdicts must match.
        #[arg(long)]
        expect_lang: Option<String>,
    },
    /// Pumping search for a grammar word outside a predicate.
    PumpRefute {
        #[arg(long)]
        grammar: String,
        #[arg(long)]
        predicate: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Run the acceptance battery.
    Suite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub verdict: Verdict,
    pub payload: Value,
    pub elapsed_ms: u128,
}

enum Outcome {
    Report(Verdict, Value),
    Raw(String),
}

struct Env {
    force: bool,
    symbols: SymbolTable,
}

impl Env {
    fn cfg(&self, arg: &str) -> Result<Cfg> {
        if Path::new(arg).is_file() {
            Cfg::parse_text(&read(arg)?, &self.symbols)
        } else {
            named_grammar(arg)
        }
    }

    fn language(&self, args: &LangArgs) -> Result<Box<dyn Language>> {
        match (&args.lang, &args.grammar) {
            (Some(name), _) => Ok(Box::new(name.parse::<CorpusLanguage>()?)),
            (None, Some(g)) => Ok(Box::new(GrammarLanguage::new(g, self.cfg(g)?))),
            (None, None) => Err(LabError::Precondition("give --lang or --grammar".into())),
        }
    }

    fn advice(&self, arg: &str) -> Result<AdviceFunction> {
        if Path::new(arg).is_file() {
            AdviceFunction::from_json_table(arg, &read(arg)?)
        } else {
            AdviceFunction::builtin(arg)
        }
    }

    fn inner(&self, arg: &str) -> Result<Arc<dyn Membership>> {
        if arg == "leq-track" {
            return Ok(Arc::new(leq_track_dfa()));
        }
        if arg.ends_with(".json") {
            return Ok(Arc::new(Dfa::from_json(&read(arg)?)?));
        }
        Ok(Arc::new(GrammarLanguage::new(arg, self.cfg(arg)?)))
    }

    fn word(&self, text: &str) -> Result<Word> {
        self.symbols.word(text)
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| LabError::Io(format!("{path}: {e}")))
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn execute(cmd: &Command, env: &Env) -> Result<Outcome> {
    let out = match cmd {
        Command::Enumerate { lang, max_len } => {
            let words = match &lang.grammar {
                Some(g) if lang.lang.is_none() => {
                    enumerate_bounded(&env.cfg(g)?, *max_len, 50_000_000)?.into_iter().collect()
                }
                _ => {
                    let l = env.language(lang)?;
                    let mut words = Vec::new();
                    for n in 0..=*max_len {
                        let cost = l.generation_cost(n);
                        if cost > crate::swaplab::SLICE_COST_LIMIT && !env.force {
                            return Err(LabError::CostGuard {
                                what: format!("enumeration of {} at length {n}", l.name()),
                                needed: cost,
                                limit: crate::swaplab::SLICE_COST_LIMIT,
                            });
                        }
                        words.extend(l.members_of_length(n));
                    }
                    words
                }
            };
            let words: Vec<Word> = words;
            Outcome::Report(Verdict::Pass, json!({ "count": words.len(), "words": words }))
        }
        Command::Member { lang, word } => {
            let l = env.language(lang)?;
            let w = env.word(word)?;
            Outcome::Report(Verdict::Pass, json!({ "language": l.name(), "word": w, "member": l.contains(&w) }))
        }
        Command::IntersectCheck { max_len } => {
            let r = intersection_check(*max_len, env.force)?;
            Outcome::Report(pass_if(r.holds), json!(r))
        }
        Command::SliceStats { lang, n, j, advice, format } => {
            let l = env.language(lang)?;
            let h = advice.as_deref().map(|a| env.advice(a)).transpose()?;
            let s = build_slice(&*l, *n, h.as_ref(), env.force)?;
            let stats = slice_stats(&s, *j)?;
            match format {
                Format::Csv => Outcome::Raw(stats.to_csv()),
                Format::Json => {
                    let mut payload = stats.to_json();
                    payload["slice_size"] = json!(s.len());
                    payload["origin"] = json!(s.origin);
                    payload["max"] = json!(stats.max());
                    Outcome::Report(Verdict::Pass, payload)
                }
            }
        }
        Command::BoundCheck { n, j } => {
            let js: Vec<usize> = match j {
                Some(j) => vec![*j],
                None => (1..=(n / 4).max(1)).collect(),
            };
            let reports = js
                .iter()
                .map(|&j| l2_bound_check(*n, j, env.force))
                .collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.holds);
            Outcome::Report(pass_if(ok), json!({ "reports": reports }))
        }
        Command::SwapScan { lang, n, j_min, j_max, i_min, i_max, advice, expect } => {
            let l = env.language(lang)?;
            let h = advice.as_deref().map(|a| env.advice(a)).transpose()?;
            let s = build_slice(&*l, *n, h.as_ref(), env.force)?;
            let j_max = j_max.unwrap_or((n / 4).max(1));
            let i_range = match (i_min, i_max) {
                (None, None) => None,
                (a, b) => Some(a.unwrap_or(0)..=b.unwrap_or(n - 1)),
            };
            let witnesses = match &h {
                None => swap_scan(&Memoized::new(&*l), &s, *j_min..=j_max, i_range, env.force)?,
                Some(h) => {
                    let oracle = crate::swaplab::TrackedOracle { lang: &*l, advice: h.clone() };
                    swap_scan(&Memoized::new(oracle), &s, *j_min..=j_max, i_range, env.force)?
                }
            };
            let verdict = match expect {
                None => Verdict::Pass,
                Some(Expect::None) => pass_if(witnesses.is_empty()),
                Some(Expect::Some) => pass_if(!witnesses.is_empty()),
            };
            let mut payload = json!({ "slice_size": s.len(), "witness_count": witnesses.len(), "witnesses": witnesses });
            if verdict == Verdict::Fail {
                payload["counterexample"] = payload["witnesses"].get(0).cloned().unwrap_or(Value::Null);
            }
            Outcome::Report(verdict, payload)
        }
        Command::Params { m } => {
            let p: SwapParams = choose_params(*m)?;
            let checks = p.checks();
            Outcome::Report(pass_if(checks.all()), json!({ "params": p, "checks": checks }))
        }
        Command::AdviceCheck { parallel, serial, inner, advice, words, expect_lang } => {
            if !parallel && !serial {
                return Err(LabError::Precondition("give --parallel or --serial".into()));
            }
            let inner = env.inner(inner)?;
            let h = env.advice(advice)?;
            let lang = if *parallel {
                AdvisedLanguage::parallel(inner, h)
            } else {
                AdvisedLanguage::serial(inner, h)
            };
            let expected = expect_lang.as_deref().map(str::parse::<CorpusLanguage>).transpose()?;
            let mut verdicts = Vec::new();
            let mut mismatch = None;
            for text in words.split(';') {
                let x = env.word(text.trim())?;
                let member = lang.member(&x)?;
                if let Some(e) = expected {
                    if e.predicate(&x) != member && mismatch.is_none() {
                        mismatch = Some(x.clone());
                    }
                }
                verdicts.push(json!({ "word": x, "member": member }));
            }
            Outcome::Report(
                pass_if(mismatch.is_none()),
                json!({ "verdicts": verdicts, "counterexample": mismatch }),
            )
        }
        Command::PumpRefute { grammar, predicate, max_len } => {
            let g = env.cfg(grammar)?;
            let pred: CorpusLanguage = predicate.parse()?;
            match refute_subset(&g, &pred, *max_len)? {
                r @ Refutation::Refuted(_) => Outcome::Report(Verdict::Pass, json!(r)),
                r @ Refutation::Inconclusive { .. } => Outcome::Report(Verdict::Inconclusive, json!(r)),
            }
        }
        Command::Suite { seed } => {
            let results = run_suite(*seed);
            let ok = results.iter().all(|r| r.passed);
            Outcome::Report(pass_if(ok), json!({ "seed": seed, "criteria": results }))
        }
    };
    Ok(out)
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Enumerate { .. } => "enumerate",
        Command::Member { .. } => "member",
        Command::IntersectCheck { .. } => "intersect-check",
        Command::SliceStats { .. } => "slice-stats",
        Command::BoundCheck { .. } => "bound-check",
        Command::SwapScan { .. } => "swap-scan",
        Command::Params { .. } => "params",
        Command::AdviceCheck { .. } => "advice-check",
        Command::PumpRefute { .. } => "pump-refute",
        Command::Suite { .. } => "suite",
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let symbols = match cli.symtab.as_deref().map(|p| read(p).and_then(|t| SymbolTable::from_json(&t))) {
        None => SymbolTable::new(),
        Some(Ok(s)) => s,
        Some(Err(e)) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let env = Env { force: cli.force, symbols };
    let started = Instant::now();
    match execute(&cli.command, &env) {
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
        Ok(Outcome::Raw(text)) => {
            emit(&text);
            0
        }
        Ok(Outcome::Report(verdict, payload)) => {
            let report = RunReport {
                command: command_name(&cli.command).to_string(),
                inputs: inputs_of(&cli),
                verdict,
                payload,
                elapsed_ms: started.elapsed().as_millis(),
            };
            emit(&(serde_json::to_string_pretty(&report).expect("serializable report") + "\n"));
            match verdict {
                Verdict::Fail => 1,
                _ => 0,
            }
        }
    }
}

// A closed pipe downstream is not an error worth a panic.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn inputs_of(cli: &Cli) -> Value {
    let mut v = json!(cli.command);
    v["force"] = json!(cli.force);
    if let Some(s) = &cli.symtab {
        v["symtab"] = json!(s);
    }
    v
}
