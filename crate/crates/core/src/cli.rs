//! The `smoothwords` command line.
//!
//! Exit codes: 0 clean, 1 resource limit or failed check, 2 usage error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::complexity::{
    estimate_xi, even_constants, even_exponent, fit_exponent, gamma_table, gamma_table_tree,
    growth_report, ComplexityTable,
};
use crate::error::{Error, Result};
use crate::kolakoski;
use crate::lfe::{lf_k, p_level, to_jsonl, DEFAULT_MAX_STATES};
use crate::operators::{closure, derivative, primitives, rho};
use crate::smooth::{
    d_chain, height, is_lfe, is_smooth, left_extensions, rho_chain, rho_height, Chain,
};
use crate::verify::{sweep, SweepConfig};
use crate::word::{Alphabet, Word};

#[derive(Debug, Parser)]
#[command(
    name = "smoothwords",
    version,
    about = "Smooth words over two-letter alphabets"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Alphabet as `a,b`.
    #[arg(long, global = true, default_value = "1,2")]
    #[serde(serialize_with = "ser_display")]
    pub alphabet: Alphabet,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cap on the number of words held at once by an enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: u64,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Reserved; every computation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write a run manifest (JSON) to this path.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub manifest: Option<PathBuf>,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Tree,
    Frontier,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Closure, derivative and rho of a word, with the full D and rho chains.
    Derive {
        #[arg(long)]
        word: String,
    },
    /// Smoothness, height, left extensions and the LFE test.
    Smooth {
        #[arg(long)]
        word: String,
    },
    /// All primitives (preimages under D) of a word.
    Primitives {
        #[arg(long)]
        word: String,
    },
    /// Enumerate LFE words by tree level or by length.
    Lfe {
        #[command(subcommand)]
        by: LfeBy,
    },
    /// Subword complexity table for n = 1..=N.
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Tree)]
        method: Method,
    },
    /// Minimal b-frequency of LFE words with n0 < |u| <= n.
    Xi {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        n0: usize,
    },
    /// Height and growth bounds; even-alphabet constants when both letters are even.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        n0: usize,
    },
    /// Log-log slope of the complexity function.
    Fit {
        #[arg(long)]
        n: usize,
    },
    /// Prefix of the self-run-length-encoding sequence.
    Kolakoski {
        #[arg(long)]
        n: usize,
        /// First letter (default: b).
        #[arg(long)]
        first: Option<u32>,
    },
    /// Run every property check for the alphabet.
    VerifyAll {
        /// Larger horizons (slower).
        #[arg(long)]
        full: bool,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LfeBy {
    /// Level j of the expansion tree below the empty word.
    Level {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        count_only: bool,
    },
    /// All LFE words of length n.
    Length {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Derive { .. } => "derive",
            Command::Smooth { .. } => "smooth",
            Command::Primitives { .. } => "primitives",
            Command::Lfe {
                by: LfeBy::Level { .. },
            } => "lfe level",
            Command::Lfe {
                by: LfeBy::Length { .. },
            } => "lfe length",
            Command::Gamma { .. } => "gamma",
            Command::Xi { .. } => "xi",
            Command::Bounds { .. } => "bounds",
            Command::Fit { .. } => "fit",
            Command::Kolakoski { .. } => "kolakoski",
            Command::VerifyAll { .. } => "verify-all",
        }
    }
}

/// What a command printed, and whether every check it ran passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

impl Outcome {
    fn clean(output: String) -> Self {
        Outcome { output, ok: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub alphabet: String,
    pub parameters: serde_json::Value,
    pub version: String,
    pub elapsed_ms: u128,
    pub output_sha256: String,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn chain_text(chain: &Chain) -> String {
    let mut parts: Vec<String> = chain.words.iter().map(|w| w.to_string()).collect();
    if let Some(reason) = &chain.failure {
        parts.push(format!("[not differentiable: {reason}]"));
    }
    parts.join(" -> ")
}

fn word_text(w: &Word) -> String {
    w.to_string()
}

fn cmd_derive(w: &Word, format: Format) -> Result<Outcome> {
    let c = closure(w);
    let d = derivative(w);
    let r = rho(w);
    let (dc, rc) = (d_chain(w), rho_chain(w));
    let out = match format {
        Format::Json => to_json(&json!({
            "word": w.to_text(),
            "closure": c.as_ref().ok().map(Word::to_text),
            "derivative": d.word().map(Word::to_text),
            "rho": r.word().map(Word::to_text),
            "d_chain": dc.words.iter().map(Word::to_text).collect::<Vec<_>>(),
            "d_chain_failure": dc.failure.map(|f| f.to_string()),
            "rho_chain": rc.words.iter().map(Word::to_text).collect::<Vec<_>>(),
            "rho_chain_failure": rc.failure.map(|f| f.to_string()),
        })),
        _ => {
            let show = |o: Option<&Word>, why: String| o.map(word_text).unwrap_or(why);
            format!(
                "word: {}\nclosure: {}\nD: {}\nrho: {}\nD chain: {}\nrho chain: {}\n",
                word_text(w),
                c.as_ref()
                    .map(word_text)
                    .unwrap_or_else(|e| format!("undefined ({e})")),
                show(d.word(), "not differentiable".into()),
                show(r.word(), "not differentiable".into()),
                chain_text(&dc),
                chain_text(&rc),
            )
        }
    };
    Ok(Outcome::clean(out))
}

fn cmd_smooth(w: &Word, format: Format) -> Result<Outcome> {
    let smooth = is_smooth(w, None);
    let h = if smooth && !w.is_empty() {
        Some(height(w, None)?)
    } else {
        None
    };
    let rh = if smooth && !w.is_empty() {
        Some(rho_height(w)?)
    } else {
        None
    };
    let ext = if smooth {
        left_extensions(w, None)?
    } else {
        Vec::new()
    };
    let lfe = smooth && is_lfe(w, None);
    let out = match format {
        Format::Json => to_json(&json!({
            "word": w.to_text(), "smooth": smooth, "height": h, "rho_height": rh,
            "left_extensions": ext, "lfe": lfe,
        })),
        _ => {
            let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            format!(
                "word: {}\nsmooth: {smooth}\nheight: {}\nrho height: {}\nleft extensions: {:?}\nlfe: {lfe}\n",
                word_text(w),
                opt(h),
                opt(rh),
                ext
            )
        }
    };
    Ok(Outcome::clean(out))
}

fn word_list(words: &[Word], level: Option<u32>, format: Format) -> String {
    match format {
        Format::Json => to_jsonl(words, level),
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            wtr.write_record(["length", "word"])
                .expect("in-memory write");
            for w in words {
                wtr.write_record([w.len().to_string(), w.to_text()])
                    .expect("in-memory write");
            }
            String::from_utf8(wtr.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Text => words
            .iter()
            .map(|w| format!("{}\n", word_text(w)))
            .collect(),
    }
}

fn count_text(count: usize, format: Format) -> String {
    match format {
        Format::Json => format!("{{\"count\":{count}}}\n"),
        _ => format!("{count}\n"),
    }
}

fn table(alphabet: Alphabet, n: usize, method: Method, max_states: u64) -> Result<ComplexityTable> {
    match method {
        Method::Tree => Ok(gamma_table_tree(alphabet, n)),
        Method::Frontier => gamma_table(alphabet, n, max_states),
    }
}

fn table_text(t: &ComplexityTable) -> String {
    let mut s = format!(
        "{:>6} {:>14} {:>12} {:>6} {:>6}  {}\n",
        "n", "gamma", "lf_count", "ht_min", "ht_max", "min_b_ratio"
    );
    let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    for r in &t.rows {
        let ratio = r
            .min_b_ratio
            .map(|q| format!("{}/{}", q.numer(), q.denom()))
            .unwrap_or_else(|| "-".into());
        s.push_str(&format!(
            "{:>6} {:>14} {:>12} {:>6} {:>6}  {}\n",
            r.n,
            r.gamma,
            r.lf_count,
            opt(r.ht_min),
            opt(r.ht_max),
            ratio
        ));
    }
    s
}

/// Runs a parsed command and returns its output without printing.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let s = g.alphabet;
    let parse = |text: &str| Word::parse(s, text);
    match &cli.command {
        Command::Derive { word } => cmd_derive(&parse(word)?, g.format),
        Command::Smooth { word } => cmd_smooth(&parse(word)?, g.format),
        Command::Primitives { word } => {
            let w = parse(word)?;
            let p: Vec<Word> = primitives(&w).into_iter().collect();
            Ok(Outcome::clean(word_list(&p, None, g.format)))
        }
        Command::Lfe {
            by: LfeBy::Level { j, count_only },
        } => {
            let level = p_level(s, *j, g.max_states)?;
            Ok(Outcome::clean(if *count_only {
                count_text(level.words.len(), g.format)
            } else {
                word_list(&level.words, Some(*j), g.format)
            }))
        }
        Command::Lfe {
            by: LfeBy::Length { n, count_only },
        } => {
            let class = lf_k(s, *n, g.max_states)?;
            Ok(Outcome::clean(if *count_only {
                count_text(class.words.len(), g.format)
            } else {
                word_list(&class.words, None, g.format)
            }))
        }
        Command::Gamma { n, method } => {
            let t = table(s, *n, *method, g.max_states)?;
            Ok(Outcome::clean(match g.format {
                Format::Csv => t.to_csv(),
                Format::Json => to_json(&t),
                Format::Text => table_text(&t),
            }))
        }
        Command::Xi { n, n0 } => {
            let t = gamma_table_tree(s, *n);
            let e = estimate_xi(&t, *n0, *n)?;
            Ok(Outcome::clean(match g.format {
                Format::Json => to_json(&e),
                _ => format!(
                    "xi: {} ({:.6})\ncomplement minimum: {}\nn0: {}\nN0: {}\n",
                    e.xi,
                    e.xi_f64(),
                    e.xi_dual,
                    e.n0,
                    e.big_n0
                        .map(|x| x.to_string())
                        .unwrap_or_else(|| "-".into())
                ),
            }))
        }
        Command::Bounds { n, n0 } => {
            let t = gamma_table_tree(s, *n);
            let r = growth_report(&t, *n0, *n)?;
            let even = if s.is_even() {
                Some(even_constants(s)?)
            } else {
                None
            };
            let even_exp = if s.is_even() {
                Some(even_exponent(s)?)
            } else {
                None
            };
            let ok = r.violations.is_empty();
            let out = match g.format {
                Format::Json => {
                    to_json(&json!({ "growth": r, "even": even, "even_exponent": even_exp }))
                }
                _ => {
                    let mut s = format!(
                        "xi: {} ({:.6})\nN0: {}\nalpha: {:.6}\nbeta: {:.6}\nq: {}\nm: {:.6}\nt1: {:.6}\nt2 (fitted): {:.6}\nexponents: [{:.6}, {:.6}]\nc1: {:.6e}\nc2: {:.6e}\nviolations: {}\n",
                        r.estimate.xi,
                        r.xi,
                        r.estimate.big_n0.map(|x| x.to_string()).unwrap_or_else(|| "-".into()),
                        r.alpha,
                        r.beta,
                        r.q,
                        r.m,
                        r.t1,
                        r.t2,
                        r.exponent_lower,
                        r.exponent_upper,
                        r.c1,
                        r.c2,
                        r.violations.len()
                    );
                    for v in &r.violations {
                        s.push_str(&format!(
                            "  {} n={} observed={} bound={:.6}\n",
                            v.kind, v.n, v.observed, v.bound
                        ));
                    }
                    if let (Some(c), Some(e)) = (even, even_exp) {
                        s.push_str(&format!(
                            "even: rho={} q1={} q2={} tau={:.6} t1={:.6} t2={:.6} exponent={:.6}\n",
                            c.rho_half, c.q1, c.q2, c.tau, c.t1, c.t2, e
                        ));
                    }
                    s
                }
            };
            Ok(Outcome { output: out, ok })
        }
        Command::Fit { n } => {
            let t = gamma_table_tree(s, *n);
            let f = fit_exponent(&t)?;
            let target = if s.is_even() {
                Some(even_exponent(s)?)
            } else {
                None
            };
            Ok(Outcome::clean(match g.format {
                Format::Json => to_json(&json!({ "fit": f, "even_exponent": target })),
                _ => {
                    format!(
                    "window: [{}, {}] ({} points)\nslope: {:.6}\nintercept: {:.6}\nr2: {:.6}\n{}",
                    f.n_lo,
                    f.n_hi,
                    f.points,
                    f.slope,
                    f.intercept,
                    f.r2,
                    target.map(|e| format!("even-alphabet exponent: {e:.6}\n")).unwrap_or_default()
                )
                }
            }))
        }
        Command::Kolakoski { n, first } => {
            let w = kolakoski::generate(s, first.unwrap_or(s.b()), *n)?;
            Ok(Outcome::clean(match g.format {
                Format::Json => to_json(&kolakoski::stats(&w)?),
                Format::Csv => format!("{}\n", w.to_comma_text()),
                Format::Text => format!("{}\n", w.to_text()),
            }))
        }
        Command::VerifyAll { full } => {
            let mut cfg = SweepConfig {
                max_states: g.max_states,
                ..SweepConfig::default()
            };
            if *full {
                cfg.level_cap = 100_000;
                cfg.gamma_n = 20;
                cfg.property_len = 14;
                cfg.even_len = 30;
                cfg.bound_n = 256;
                cfg.trend_n = 2048;
                cfg.kolakoski_n = 1_000_000;
            }
            let checks = sweep(s, &cfg);
            let ok = checks.iter().all(|c| c.passed);
            Ok(Outcome {
                output: match g.format {
                    Format::Json => to_json(&checks),
                    _ => checks.iter().map(|c| format!("{}\n", c.line())).collect(),
                },
                ok,
            })
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceLimit { .. } | Error::BoundTooSmall { .. } | Error::Internal(_) => 1,
        _ => 2,
    }
}

/// Parses `args`, runs the command, prints its output and writes the manifest if requested.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot configure {n} threads: {e}");
            return 2;
        }
    }
    let start = Instant::now();
    let (output, code) = match execute(&cli) {
        Ok(o) => {
            let code = if o.ok { 0 } else { 1 };
            (o.output, code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            (String::new(), exit_code(&e))
        }
    };
    print!("{output}");
    if let Some(path) = &cli.global.manifest {
        let manifest = RunManifest {
            command: cli.command.name().to_string(),
            alphabet: cli.global.alphabet.to_string(),
            parameters: json!({ "global": cli.global, "command": cli.command }),
            version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms: start.elapsed().as_millis(),
            output_sha256: sha256_hex(output.as_bytes()),
            exit_code: code,
        };
        if let Err(e) = std::fs::write(path, to_json(&manifest)) {
            eprintln!("error: cannot write manifest {}: {e}", path.display());
            return 2;
        }
    }
    code
}
