//! Command-line front end. Output is built in memory and written only once
//! everything validated and ran, so a failure never leaves partial output.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{parse_profile_family, EpsilonChar, WStarProfile};
use crate::delta::delta_hull;
use crate::dims::{ModuleSpec, SParam};
use crate::error::{Error, Result};
use crate::ghost::coefficient;
use crate::newton::{series_polygon, Agreement};
use crate::zigzag::{
    canonical_tuple, direct_sum_compare, theorem_condition, witness_search, zigzag_check, ZigzagVerdict,
};

/// Environment variable read for the default of `--jobs`.
pub const JOBS_ENV: &str = "GHOST_SLOPES_JOBS";

#[derive(Debug, Parser)]
#[command(name = "ghost-slopes", version, about = "Ghost series slopes and direct-sum checks")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Prime p ≥ 7.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub p: Option<i64>,
    /// Exponent c of ε₁ = ω^c, in [0, p-2].
    #[arg(long, global = true, default_value_t = 0, allow_negative_numbers = true)]
    pub c: i64,
    /// k0 in [2, p].
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k0: Option<i64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads.
    #[arg(long, global = true, env = JOBS_ENV, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Plain,
    Dagger,
    Both,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// `origin:t=<r>` or `k=<int>:t=<r>`; repeatable.
    #[arg(long = "profile")]
    pub profile: Vec<String>,
    /// A sweep such as `anchors=kb:0..200;t=1/2..20/1:step1/2`.
    #[arg(long)]
    pub profiles: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients g_0..g_N as exponent maps.
    Ghost {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "plain")]
        series: SeriesKind,
    },
    /// Newton polygon of the series evaluated at each profile.
    Np {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        prof: ProfileArgs,
        #[arg(long, default_value_t = 20)]
        n: u64,
        #[arg(long)]
        dagger: bool,
    },
    /// Joint polygon against the merge of component polygons.
    Compare {
        /// One component per flag; or use --tuple.
        #[arg(long)]
        spec: Vec<String>,
        /// Comma-separated s-values, one component each.
        #[arg(long)]
        tuple: Option<String>,
        #[command(flatten)]
        prof: ProfileArgs,
        #[arg(long, default_value_t = 200)]
        n: u64,
        #[arg(long)]
        dagger: bool,
    },
    /// Zigzag inequalities on component dagger polygons.
    Zigzag {
        #[arg(long)]
        tuple: String,
        #[command(flatten)]
        prof: ProfileArgs,
        #[arg(long, default_value_t = 200)]
        n: u64,
    },
    /// First profile of a sweep where the joint polygon leaves the merge.
    Search {
        #[arg(long)]
        tuple: String,
        #[command(flatten)]
        prof: ProfileArgs,
        #[arg(long, default_value_t = 200)]
        n: u64,
    },
    /// Δ′ table and its hull at one weight.
    Delta {
        #[arg(long)]
        s: i64,
        #[arg(long)]
        kbullet: i64,
    },
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_DIVERGENCE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_INVALID };
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn eps_of(c: &Common) -> Result<EpsilonChar> {
    let p = c.p.ok_or_else(|| Error::Parse("missing --p".into()))?;
    let k0 = c.k0.ok_or_else(|| Error::Parse("missing --k0".into()))?;
    EpsilonChar::new(p, c.c, k0)
}

fn profiles_of(eps: &EpsilonChar, a: &ProfileArgs) -> Result<Vec<WStarProfile>> {
    let mut v: Vec<WStarProfile> = a.profile.iter().map(|s| WStarProfile::parse(eps, s)).collect::<Result<_>>()?;
    if let Some(f) = &a.profiles {
        v.extend(parse_profile_family(eps, f)?);
    }
    Ok(v)
}

fn tuple_of(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad tuple entry {x:?}"))))
        .collect()
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("cannot start {jobs} workers: {e}")))
}

#[derive(Serialize)]
struct CompareLine<'a> {
    s: &'a [i64],
    profile: String,
    verdict: &'static str,
    confirmed_upto: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<u64>,
}

#[derive(Serialize)]
struct Summary<'a> {
    summary: SummaryBody<'a>,
}

#[derive(Serialize)]
struct SummaryBody<'a> {
    pairs: usize,
    equal: usize,
    diverged: usize,
    /// Every pair of entries is equal or companion.
    condition: bool,
    non_generic: &'a [i64],
    convention: &'static str,
}

/// How companions are paired: `s + s' ≡ k0 - 1`, i.e. `b' = {a + b + 1}`.
pub const COMPANION_CONVENTION: &str = "s+s'=k0-1 mod p-1; (a',b')=({p-3-a},{a+b+1})";

#[derive(Serialize)]
struct ZigzagLine<'a> {
    s: &'a [i64],
    profile: String,
    #[serde(flatten)]
    verdict: ZigzagVerdict,
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let eps = eps_of(&cli.common)?;
    let pool = pool(cli.common.jobs)?;
    let fmt = cli.common.format;
    let mut out = String::new();
    let mut code = EXIT_OK;
    match &cli.cmd {
        Command::Ghost { spec, n, series } => {
            let spec = ModuleSpec::parse(eps, spec)?;
            let kinds: &[(bool, &str)] = match series {
                SeriesKind::Plain => &[(false, "plain")],
                SeriesKind::Dagger => &[(true, "dagger")],
                SeriesKind::Both => &[(false, "plain"), (true, "dagger")],
            };
            for &(dagger, name) in kinds {
                let coeffs: Vec<_> =
                    pool.install(|| (0..=*n).into_par_iter().map(|i| coefficient(&spec, i, dagger)).collect());
                for c in coeffs {
                    match fmt.unwrap_or(Format::Json) {
                        Format::Json if *series == SeriesKind::Both => {
                            let j = c.to_json();
                            out.push_str(&format!("{{\"series\":\"{name}\",{}\n", &j[1..]));
                        }
                        Format::Json => {
                            out.push_str(&c.to_json());
                            out.push('\n');
                        }
                        Format::Tsv => {
                            for (k, e) in &c.factors {
                                out.push_str(&format!("{name}\t{}\t{k}\t{e}\n", c.n));
                            }
                        }
                    }
                }
            }
        }
        Command::Np { spec, prof, n, dagger } => {
            let spec = ModuleSpec::parse(eps, spec)?;
            let ws = profiles_of(&eps, prof)?;
            if ws.is_empty() {
                return Err(Error::Empty("profile list (use --profile or --profiles)"));
            }
            let polys: Vec<_> = pool.install(|| ws.par_iter().map(|w| series_polygon(&spec, w, *n, *dagger)).collect());
            for (w, np) in ws.iter().zip(polys) {
                match fmt.unwrap_or(Format::Json) {
                    Format::Json => {
                        out.push_str(&np.to_json());
                        out.push('\n');
                    }
                    Format::Tsv => {
                        for (x, y) in np.vertices() {
                            out.push_str(&format!("{w}\t{x}\t{y}\n"));
                        }
                    }
                }
            }
        }
        Command::Compare { spec, tuple, prof, n, dagger } => {
            let mut specs: Vec<ModuleSpec> = spec.iter().map(|s| ModuleSpec::parse(eps, s)).collect::<Result<_>>()?;
            if let Some(t) = tuple {
                for s in tuple_of(t)? {
                    specs.push(ModuleSpec::single(eps, s)?);
                }
            }
            if specs.is_empty() {
                return Err(Error::Empty("component list (use --spec or --tuple)"));
            }
            let ws = profiles_of(&eps, prof)?;
            let reports: Vec<_> = pool.install(|| {
                ws.par_iter().map(|w| direct_sum_compare(&specs, w, *n, *dagger)).collect::<Result<Vec<_>>>()
            })?;
            let joint = ModuleSpec::join(&specs)?.flatten();
            let cond = theorem_condition(&eps, &joint)?;
            let mut diverged = 0;
            for (w, r) in ws.iter().zip(&reports) {
                let (verdict, at) = match r.agreement {
                    Agreement::Equal => ("equal", None),
                    Agreement::DivergesAt(x) => {
                        diverged += 1;
                        ("diverges", Some(x))
                    }
                };
                let line =
                    CompareLine { s: &r.s, profile: w.to_string(), verdict, confirmed_upto: r.confirmed_upto, at };
                push_line(&mut out, fmt, &line, || {
                    format!(
                        "{}\t{}\t{}\t{}\t{}",
                        join(&r.s),
                        w,
                        verdict,
                        r.confirmed_upto,
                        at.map_or(String::new(), |x| x.to_string())
                    )
                });
            }
            let summary = Summary {
                summary: SummaryBody {
                    pairs: reports.len(),
                    equal: reports.len() - diverged,
                    diverged,
                    condition: cond.holds,
                    non_generic: &cond.non_generic,
                    convention: COMPANION_CONVENTION,
                },
            };
            if fmt != Some(Format::Tsv) {
                out.push_str(&serde_json::to_string(&summary).expect("plain data serializes"));
                out.push('\n');
            }
            if diverged > 0 {
                code = EXIT_DIVERGENCE;
            }
        }
        Command::Zigzag { tuple, prof, n } => {
            let (s, _) = canonical_tuple(&eps, &tuple_of(tuple)?)?;
            let ws = profiles_of(&eps, prof)?;
            let verdicts: Vec<_> =
                pool.install(|| ws.par_iter().map(|w| zigzag_check(&eps, &s, w, *n)).collect::<Result<Vec<_>>>())?;
            for (w, v) in ws.iter().zip(verdicts) {
                if matches!(v, ZigzagVerdict::Fails { .. }) {
                    code = EXIT_DIVERGENCE;
                }
                push_line(&mut out, fmt, &ZigzagLine { s: &s, profile: w.to_string(), verdict: v }, || match v {
                    ZigzagVerdict::Holds { checked_upto } => format!("{}\t{w}\tholds\t{checked_upto}", join(&s)),
                    ZigzagVerdict::Fails { n, i, j } => format!("{}\t{w}\tfails\t{n}\t{i}\t{j}", join(&s)),
                });
            }
        }
        Command::Search { tuple, prof, n } => {
            let (s, _) = canonical_tuple(&eps, &tuple_of(tuple)?)?;
            let ws = profiles_of(&eps, prof)?;
            let found = pool.install(|| witness_search(&eps, &s, &ws, *n))?;
            #[derive(Serialize)]
            struct SearchLine<'a> {
                s: &'a [i64],
                verdict: &'static str,
                searched: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                profile: Option<String>,
                #[serde(skip_serializing_if = "Option::is_none")]
                at: Option<u64>,
            }
            let line = match &found {
                None => SearchLine { s: &s, verdict: "none", searched: ws.len(), profile: None, at: None },
                Some((w, x)) => {
                    code = EXIT_DIVERGENCE;
                    SearchLine {
                        s: &s,
                        verdict: "found",
                        searched: ws.len(),
                        profile: Some(w.to_string()),
                        at: Some(*x),
                    }
                }
            };
            push_line(&mut out, fmt, &line, || match &found {
                None => format!("{}\tnone\t{}", join(&s), ws.len()),
                Some((w, x)) => format!("{}\tfound\t{}\t{w}\t{x}", join(&s), ws.len()),
            });
        }
        Command::Delta { s, kbullet } => {
            let sp = SParam::new(eps, *s)?;
            let k = eps.weight_bullet(*kbullet)?;
            let t = delta_hull(&sp, &k)?;
            match fmt.unwrap_or(Format::Tsv) {
                Format::Tsv => out.push_str(&t.to_tsv()),
                Format::Json => {
                    for (i, (v, h)) in t.values.iter().zip(t.hull_values()).enumerate() {
                        out.push_str(&format!("{{\"l\":{},\"delta\":\"{v}\",\"hull\":\"{h}\"}}\n", i as i64 - t.half));
                    }
                }
            }
        }
    }
    Ok((out, code))
}

fn join(s: &[i64]) -> String {
    s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn push_line<T: Serialize>(out: &mut String, fmt: Option<Format>, line: &T, tsv: impl FnOnce() -> String) {
    match fmt.unwrap_or(Format::Json) {
        Format::Json => out.push_str(&serde_json::to_string(line).expect("plain data serializes")),
        Format::Tsv => out.push_str(&tsv()),
    }
    out.push('\n');
}
