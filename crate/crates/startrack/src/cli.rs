//! Command-line front end. `run` parses arguments, dispatches, and returns
//! the exit code with the text destined for stdout and stderr.

use std::fmt::{Debug, Display};
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::farey::{self, parse_rational, Rational};
use crate::height::{self, Decoration};
use crate::pruning;
use crate::rotation::{self, MarkedGraph};
use crate::starorbit::{self, StarData};
use crate::symbolic::{EpSeq, Word};
use crate::traintrack;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "startrack",
    version,
    about = "Horseshoe orbits, star maps and star train tracks"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "plain")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Height of a periodic code (e.g. 10010) or of a sequence pre(period)
    Height { code: String },
    /// Split a code into height, prefix c_q and decoration
    Parse { code: Word },
    /// The word c_q
    Cq { q: Rat },
    /// The decoration w_q
    Wq { q: Rat },
    /// q_w for a decoration word or *
    Qw { word: String },
    /// Farey parents, left Farey sequence or admissible set
    Farey {
        #[arg(value_enum)]
        what: FareyQuery,
        q: Rat,
    },
    /// ξ_{u/v,p/q}(r/s)
    Xi { uv: Rat, pq: Rat, rs: Rat },
    /// Rotation interval of a code or of star data (Markov graph)
    Rotint {
        #[arg(value_enum)]
        source: RotSource,
        /// code, or a path to star data
        arg: String,
    },
    /// Legal star data up to a period bound
    Enumerate {
        q: Rat,
        max_period: usize,
        #[arg(long)]
        tt_only: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Train-track orbit of type B: slope, index i, p/q (integers, p < q)
    BuildB { q: Rat, i: usize, pq: String },
    /// Train-track orbit of type A: slope, index i
    BuildA { q: Rat, i: usize },
    /// Renormalize star data of slope 1/2 or LFP into slope m/n
    Phi { file: String, q: Rat },
    /// Inverse renormalization
    Psi { file: String },
    /// Horseshoe code of star data
    Hscode { file: String },
    /// Bestvina–Handel star graph of star data
    Track {
        file: String,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        growth: bool,
    },
    /// Construct f_{m/n} from the horseshoe by glueing and pulling tight
    Prune {
        q: Rat,
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FareyQuery {
    Parents,
    Lfs,
    Admissible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RotSource {
    Code,
    Data,
}

#[derive(Debug, Clone, Copy)]
struct Rat(Rational);

impl std::str::FromStr for Rat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_rational(s).map(Rat)
    }
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// "HeightError::NotMaximal: code 0110 is not maximal"
fn named<E: Debug + Display>(module: &str, e: E) -> String {
    let dbg = format!("{e:?}");
    let variant = dbg
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("");
    format!("{module}::{variant}: {e}")
}

fn star_err(e: starorbit::StarError) -> String {
    named("StarError", e)
}

fn read_data(path: &str) -> Result<StarData, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("IoError: {path}: {e}"))?;
    StarData::from_json(&text).map_err(star_err)
}

fn data_value(d: &StarData) -> Value {
    serde_json::from_str(&d.to_json()).expect("canonical json")
}

fn show_data(d: &StarData, format: Format) -> String {
    match format {
        Format::Json => d.to_json(),
        _ => d.to_plain(),
    }
}

fn ratios(v: &[Rational]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// "height 1/4, decoration (empty), code 1000100"
fn annotation(d: &StarData) -> (Value, String) {
    let code = match starorbit::horseshoe_code(d) {
        Ok(c) => c,
        Err(e) => {
            return (
                json!({ "code": Value::Null }),
                format!("code unavailable ({e})"),
            )
        }
    };
    match height::parse_code(&code) {
        Ok(p) => (
            json!({ "height": p.height.to_string(), "decoration": p.decoration.to_string(), "code": code.to_string() }),
            format!(
                "height {}, decoration {}, code {code}",
                p.height, p.decoration
            ),
        ),
        Err(_) => match height::orbit_height(&code) {
            Ok(h) => (
                json!({ "height": h.to_string(), "code": code.to_string() }),
                format!("height {h}, code {code}"),
            ),
            Err(_) => (json!({ "code": code.to_string() }), format!("code {code}")),
        },
    }
}

fn dispatch(cli: Cli) -> Result<String, String> {
    let fmt = cli.format;
    let out = match cli.command {
        Command::Height { code } => {
            let h = if code.contains('(') {
                let seq: EpSeq = code.parse().map_err(|e| named("SymbolicError", e))?;
                height::height_of_sequence(&seq)
                    .map_err(|e| named("HeightError", e))?
                    .value
            } else {
                let w: Word = code.parse().map_err(|e| named("SymbolicError", e))?;
                height::orbit_height(&w).map_err(|e| named("HeightError", e))?
            };
            match fmt {
                Format::Json => json!({ "height": h.to_string() }).to_string(),
                _ => h.to_string(),
            }
        }
        Command::Parse { code } => {
            let p = height::parse_code(&code).map_err(|e| named("HeightError", e))?;
            let joints: String = p.joints.iter().map(|j| j.to_string()).collect();
            match fmt {
                Format::Json => json!({
                    "height": p.height.to_string(),
                    "prefix": p.prefix.to_string(),
                    "decoration": p.decoration.to_string(),
                    "joints": joints,
                })
                .to_string(),
                _ => format!(
                    "height {}\nprefix {}\ndecoration {}\njoints {joints}",
                    p.height, p.prefix, p.decoration
                ),
            }
        }
        Command::Cq { q } => height::prefix_word(q.0)
            .map_err(|e| named("HeightError", e))?
            .to_string(),
        Command::Wq { q } => height::star_decoration(q.0)
            .map_err(|e| named("HeightError", e))?
            .to_string(),
        Command::Qw { word } => {
            let w: Decoration = word.parse().map_err(|e| named("SymbolicError", e))?;
            height::decoration_qw(&w).to_string()
        }
        Command::Farey { what, q } => {
            let fe = |e| named("FareyError", e);
            let list: Vec<Rational> = match what {
                FareyQuery::Parents => {
                    let (l, r) = farey::farey_parents(q.0).map_err(fe)?;
                    vec![l, r]
                }
                FareyQuery::Lfs => farey::left_farey_sequence(q.0).map_err(fe)?,
                FareyQuery::Admissible => farey::admissible_set(q.0)
                    .map_err(fe)?
                    .into_iter()
                    .map(|k| Rational::from_integer(k as i64))
                    .collect(),
            };
            match fmt {
                Format::Json => {
                    Value::from(list.iter().map(|x| x.to_string()).collect::<Vec<_>>()).to_string()
                }
                _ => ratios(&list),
            }
        }
        Command::Xi { uv, pq, rs } => farey::xi_map(uv.0, pq.0, rs.0)
            .map_err(|e| named("FareyError", e))?
            .to_string(),
        Command::Rotint { source, arg } => {
            let re = |e| named("RotationError", e);
            match source {
                RotSource::Code => {
                    let w: Word = arg.parse().map_err(|e| named("SymbolicError", e))?;
                    rotation::rotation_interval_of_code(&w)
                        .map_err(re)?
                        .to_string()
                }
                RotSource::Data => {
                    let d = read_data(&arg)?;
                    if fmt == Format::Dot {
                        MarkedGraph::from_data(&d).map_err(re)?.to_dot()
                    } else {
                        rotation::markov_rotation_interval(&d)
                            .map_err(re)?
                            .to_string()
                    }
                }
            }
        }
        Command::Enumerate {
            q,
            max_period,
            tt_only,
            jobs,
        } => {
            let (m, n) = farey::parts(q.0);
            if m == 0 || 2 * m > n {
                return Err(named("FareyError", farey::FareyError::OutOfRange(q.0)));
            }
            let mut all = starorbit::enumerate_orbits_parallel(q.0, max_period, jobs);
            if tt_only {
                all.retain(|d| starorbit::is_train_track(d).unwrap_or(false));
            }
            match fmt {
                Format::Json => {
                    let items: Vec<Value> = all
                        .iter()
                        .map(|d| {
                            let (mut ann, _) = annotation(d);
                            ann["data"] = data_value(d);
                            ann["train_track"] =
                                Value::from(starorbit::is_train_track(d).unwrap_or(false));
                            ann
                        })
                        .collect();
                    Value::from(items).to_string()
                }
                _ => all
                    .iter()
                    .map(|d| format!("{}\n  {}", d.to_plain(), annotation(d).1))
                    .collect::<Vec<_>>()
                    .join("\n"),
            }
        }
        Command::BuildB { q, i, pq } => {
            let (p, qq) = pq
                .split_once('/')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| format!("UsageError: expected p/q, got {pq:?}"))?;
            show_data(
                &starorbit::build_tt_orbit_b(q.0, i, p, qq).map_err(star_err)?,
                fmt,
            )
        }
        Command::BuildA { q, i } => {
            show_data(&starorbit::build_tt_orbit_a(q.0, i).map_err(star_err)?, fmt)
        }
        Command::Phi { file, q } => show_data(
            &starorbit::renormalize_phi(&read_data(&file)?, q.0).map_err(star_err)?,
            fmt,
        ),
        Command::Psi { file } => show_data(
            &starorbit::renormalize_psi(&read_data(&file)?).map_err(star_err)?,
            fmt,
        ),
        Command::Hscode { file } => starorbit::horseshoe_code(&read_data(&file)?)
            .map_err(star_err)?
            .to_string(),
        Command::Track { file, dot, growth } => {
            let te = |e| named("TrackError", e);
            let d = read_data(&file)?;
            let g = traintrack::build_bh_graph(&d).map_err(te)?;
            if dot || fmt == Format::Dot {
                return Ok(g.to_dot());
            }
            let absorbed = traintrack::check_absorbed(&g);
            let efficient = if absorbed {
                traintrack::check_efficient(&g).map_err(te)?
            } else {
                Ok(())
            };
            let tt = absorbed && efficient.is_ok();
            let growth = if growth && tt {
                Some(traintrack::growth_rate(&g).map_err(te)?)
            } else {
                None
            };
            let images: Vec<(String, String)> = g
                .labels()
                .iter()
                .map(|&l| {
                    let w: Vec<String> = g.main_image(l).iter().map(|x| x.to_string()).collect();
                    (format!("e{l}"), w.join(" "))
                })
                .collect();
            match fmt {
                Format::Json => {
                    let mut v = json!({
                        "absorbed": absorbed,
                        "efficient": absorbed && efficient.is_ok(),
                        "train_track": tt,
                        "images": images.iter().map(|(k, w)| json!([k, w])).collect::<Vec<_>>(),
                    });
                    if let Err(w) = efficient {
                        v["witness"] = Value::from(w.to_string());
                    }
                    if let Some(gr) = &growth {
                        v["growth"] = Value::from(format!("{:.10}", gr.rate));
                        v["irreducible"] = Value::from(gr.irreducible);
                    }
                    v.to_string()
                }
                _ => {
                    let mut lines = vec![format!(
                        "star train track: {}",
                        if tt { "yes" } else { "no" }
                    )];
                    if !absorbed {
                        lines.push("not absorbed".into());
                    }
                    if let Err(w) = efficient {
                        lines.push(format!("not efficient: {w}"));
                    }
                    lines.extend(images.iter().map(|(k, w)| format!("{k} -> {w}")));
                    if let Some(gr) = growth {
                        lines.push(format!("growth {:.10}", gr.rate));
                        lines.push(format!("irreducible {}", gr.irreducible));
                    }
                    lines.join("\n")
                }
            }
        }
        Command::Prune { q, trace } => {
            let (f, steps) =
                pruning::construct_from_horseshoe(q.0).map_err(|e| named("PruneError", e))?;
            let mut out = String::new();
            if trace {
                out.push_str(&steps.to_string());
            }
            out.push_str(f.to_string().trim_end());
            out
        }
    };
    Ok(out)
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(mut s) => {
            if !s.ends_with('\n') {
                s.push('\n');
            }
            Outcome {
                code: 0,
                stdout: s,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &str) -> Outcome {
        run(std::iter::once("startrack").chain(args.split_whitespace()))
    }

    #[test]
    fn height_and_codes() {
        assert_eq!(go("height 10011011001011010").stdout, "3/10\n");
        assert_eq!(go("height 1(0)").code, 1);
        assert_eq!(go("cq 3/10").stdout, "10011011001\n");
        assert_eq!(go("farey lfs 3/7").stdout, "0 1/3 2/5\n");
        assert_eq!(go("xi 1/3 2/5 1/3").stdout, "4/11\n");
    }

    #[test]
    fn enumerate_annotates() {
        let out = go("enumerate 1/3 7 --tt-only");
        assert_eq!(out.code, 0);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[1].trim(),
            "height 1/4, decoration (empty), code 1000100"
        );
        let json = go("--format json enumerate 1/3 7 --tt-only --jobs 3");
        let v: Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 1);
    }

    #[test]
    fn prune_trace() {
        let out = go("prune 3/10 --trace");
        let stages: Vec<&str> = out
            .stdout
            .lines()
            .filter(|l| !l.starts_with(' ') && l.contains("->") && !l.starts_with('e'))
            .map(|l| l.split_whitespace().next().unwrap())
            .collect();
        assert_eq!(stages, ["L", "tight", "L", "R", "R", "tight"]);
        assert!(out.stdout.contains("e0 -> e0 E1 e1 E2 e2 E3 e3\n"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go("height").code, 2);
        assert_eq!(go("frobnicate").code, 2);
        let bad = go("build-b 3/7 1 2/4");
        assert_eq!(bad.code, 1);
        assert!(
            bad.stderr.contains("StarError::NotCoprime"),
            "{}",
            bad.stderr
        );
        assert_eq!(go("hscode /nonexistent.json").code, 1);
    }
}
