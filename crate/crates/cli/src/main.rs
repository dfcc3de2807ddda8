use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use canonical_lift::crystal::{generate_crystal, verify_corollary_on, DEFAULT_CRYSTAL_BOUND};
use canonical_lift::lifting::{verify_zeta_formula, Realization, Side};
use canonical_lift::parametrize::{
    anchor_constants, phi_map_with_anchor, schutz_affine_with_anchor, Transition,
};
use canonical_lift::scalar::parse_rational;
use canonical_lift::suite::{run_suite, SuiteConfig, CRITERIA};
use canonical_lift::{CartanDatum, Rational, Series, Weight, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "canolift", version, about = "Geometric lifting of canonical-basis parametrizations")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// JSON file (or `-` for stdin) with `word`, `t`, `lambda`, `from`, `to`;
    /// explicit flags take precedence.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct DatumArgs {
    /// Cartan series letter.
    #[arg(long = "type", default_value = "A", value_parser = parse_series)]
    series: Series,
    #[arg(long)]
    rank: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Lusztig,
    String,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced words of the longest element, or a braid path between two.
    Words {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
        #[arg(long, value_parser = parse_word)]
        from: Option<Word>,
        #[arg(long, value_parser = parse_word)]
        to: Option<Word>,
    },
    /// The diagram involution on a letter or a word.
    Star {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, value_parser = parse_word)]
        word: Option<Word>,
    },
    /// Checks the closed form of zeta against the matrix computation.
    ZetaCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_parser = parse_word)]
        word: Option<Word>,
        /// Positive rationals such as `2/9,3/2,1/3`.
        #[arg(long, value_parser = parse_rationals)]
        t: Option<RationalList>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Tropical transition map between two reduced words.
    Transition {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_enum, default_value = "lusztig")]
        side: SideArg,
        #[arg(long, value_parser = parse_word)]
        from: Option<Word>,
        #[arg(long, value_parser = parse_word)]
        to: Option<Word>,
        #[arg(long, value_parser = parse_ints)]
        t: Option<IntList>,
        /// Print the composite piecewise-linear map instead of evaluating.
        #[arg(long)]
        pl: bool,
    },
    /// Maps string data w.r.t. `--word` to Lusztig data w.r.t. `--to`.
    Phi {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_parser = parse_ints)]
        lambda: Option<IntList>,
        #[arg(long, value_parser = parse_word)]
        word: Option<Word>,
        /// Word of the output; defaults to `--word`.
        #[arg(long, value_parser = parse_word)]
        to: Option<Word>,
        #[arg(long, value_parser = parse_ints)]
        t: Option<IntList>,
        /// Constants for the output word, required outside type A.
        #[arg(long, value_parser = parse_ints)]
        anchor: Option<IntList>,
    },
    /// The affine involution formula on string data.
    Schutz {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_parser = parse_ints)]
        lambda: Option<IntList>,
        #[arg(long, value_parser = parse_word)]
        word: Option<Word>,
        #[arg(long, value_parser = parse_ints)]
        t: Option<IntList>,
        #[arg(long, value_parser = parse_ints)]
        anchor: Option<IntList>,
    },
    /// Constants of the affine formula for a weight and word (type A).
    Anchor {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_parser = parse_ints)]
        lambda: Option<IntList>,
        #[arg(long, value_parser = parse_word)]
        word: Option<Word>,
    },
    /// The crystal graph of a type A highest weight in Graphviz DOT.
    CrystalDot {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_parser = parse_ints)]
        lambda: Option<IntList>,
        #[arg(long, default_value_t = DEFAULT_CRYSTAL_BOUND)]
        bound: usize,
    },
    /// The verification table of the affine involution on a whole crystal.
    Corollary {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_parser = parse_ints)]
        lambda: Option<IntList>,
        #[arg(long, value_parser = parse_word)]
        word: Option<Word>,
        #[arg(long, default_value_t = DEFAULT_CRYSTAL_BOUND)]
        bound: usize,
    },
    /// Runs the acceptance suite.
    Verify {
        /// `all` or a comma list of criterion numbers.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long = "box", default_value_t = 20)]
        box_max: i64,
        /// Stride of the A3 cocycle box; 1 walks it fully.
        #[arg(long, default_value_t = 1)]
        a3_stride: i64,
        /// Include wall-clock times (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone)]
struct IntList(Vec<i64>);

#[derive(Clone)]
struct RationalList(Vec<Rational>);

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    word: Option<Vec<usize>>,
    from: Option<Vec<usize>>,
    to: Option<Vec<usize>>,
    t: Option<Vec<i64>>,
    lambda: Option<Vec<i64>>,
}

fn parse_series(s: &str) -> Result<Series, String> {
    let mut chars = s.chars();
    match (chars.next().and_then(Series::from_letter), chars.next()) {
        (Some(series), None) => Ok(series),
        _ => Err(format!("unknown type {s:?}")),
    }
}

fn parse_ints(s: &str) -> Result<IntList, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(IntList)
}

fn parse_word(s: &str) -> Result<Word, String> {
    let letters = parse_ints(s)?.0;
    if letters.iter().any(|&l| l < 1) {
        return Err("letters are 1-based".into());
    }
    Ok(Word::new(letters.into_iter().map(|l| l as usize).collect::<Vec<_>>()))
}

fn parse_rationals(s: &str) -> Result<RationalList, String> {
    s.split(',').map(|p| parse_rational(p).ok_or_else(|| format!("bad rational {p:?}"))).collect::<Result<_, _>>().map(RationalList)
}

enum Failure {
    Usage(String),
    Verification(Value),
}

impl From<canonical_lift::Error> for Failure {
    fn from(e: canonical_lift::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
}

fn require<T>(flag: Option<T>, input: Option<T>, name: &str) -> Result<T, Failure> {
    flag.or(input).ok_or_else(|| Failure::Usage(format!("missing --{name}")))
}

fn datum(args: &DatumArgs) -> Result<CartanDatum, Failure> {
    Ok(CartanDatum::new(args.series, args.rank)?)
}

fn read_input(path: &Option<PathBuf>) -> Result<InputFile, Failure> {
    let Some(path) = path else { return Ok(InputFile::default()) };
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(e.to_string()))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("input: {e}")))
}

fn run(cli: &Cli) -> Outcome {
    let input = read_input(&cli.input)?;
    let word_in = input.word.clone().map(Word::new);
    let from_in = input.from.clone().map(Word::new);
    let to_in = input.to.clone().map(Word::new);
    let t_in = input.t.clone();
    let lambda_in = input.lambda.clone().map(Weight);
    let ints = |x: &Option<IntList>| x.as_ref().map(|l| l.0.clone());
    let weight = |x: &Option<IntList>| x.as_ref().map(|l| Weight(l.0.clone()));

    match &cli.command {
        Command::Words { datum: args, limit, from, to } => {
            let d = datum(args)?;
            match (from.clone().or(from_in), to.clone().or(to_in)) {
                (Some(from), Some(to)) => {
                    let path = d.braid_path(&from, &to)?;
                    let mut words = vec![from.clone()];
                    for mv in &path {
                        words.push(mv.apply(words.last().expect("nonempty")));
                    }
                    Ok(Output::Json(json!({ "from": from, "to": to, "path": path, "words": words })))
                }
                (None, None) => {
                    let words = d.reduced_words_of_longest(*limit)?;
                    Ok(Output::Json(json!({ "count": words.len(), "words": words })))
                }
                _ => Err(Failure::Usage("--from and --to go together".into())),
            }
        }
        Command::Star { datum: args, i, word } => {
            let d = datum(args)?;
            match (i, word.clone().or(word_in)) {
                (Some(i), _) => Ok(Output::Json(json!({ "star": d.star(*i)? }))),
                (None, Some(w)) => Ok(Output::Json(json!({ "star_word": d.star_word(&w)? }))),
                (None, None) => Err(Failure::Usage("missing --i or --word".into())),
            }
        }
        Command::ZetaCheck { datum: args, word, t, samples, seed } => {
            let d = datum(args)?;
            let real = Realization::for_datum(&d)?;
            let mut reports = Vec::new();
            match (word.clone().or(word_in), t) {
                (Some(w), Some(t)) => reports.push(verify_zeta_formula(&real, &w, &t.0)?),
                (word, None) => {
                    let words = match word {
                        Some(w) => vec![w],
                        None => d.reduced_words_of_longest(1000)?,
                    };
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    for _ in 0..*samples {
                        let w = words.choose(&mut rng).expect("nonempty");
                        let t: Vec<Rational> = (0..w.len())
                            .map(|_| Rational::new(rng.gen_range(1..=30).into(), rng.gen_range(1..=30).into()))
                            .collect();
                        reports.push(verify_zeta_formula(&real, w, &t)?);
                    }
                }
                (None, Some(_)) => return Err(Failure::Usage("--t needs --word".into())),
            }
            let pass = reports.iter().all(|r| r.pass);
            let out = json!({ "pass": pass, "reports": reports });
            if pass {
                Ok(Output::Json(out))
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Transition { datum: args, side, from, to, t, pl } => {
            let d = datum(args)?;
            let from = require(from.clone(), from_in, "from")?;
            let to = require(to.clone(), to_in, "to")?;
            let side = match side {
                SideArg::Lusztig => Side::Lusztig,
                SideArg::String => Side::String,
            };
            let tr = Transition::new(&d, side, &from, &to)?;
            if *pl {
                return Ok(Output::Json(json!({ "word_out": to, "pl": tr.to_pl_map()? })));
            }
            let t = require(ints(t), t_in, "t")?;
            Ok(Output::Json(json!({ "word_out": to, "t_out": tr.apply(&t)? })))
        }
        Command::Phi { datum: args, lambda, word, to, t, anchor } => {
            let d = datum(args)?;
            let source = require(word.clone(), word_in, "word")?;
            let target = to.clone().or(to_in).unwrap_or_else(|| source.clone());
            let t = require(ints(t), t_in, "t")?;
            let anchor = match ints(anchor) {
                Some(a) => a,
                None => anchor_constants(&d, &require(weight(lambda), lambda_in, "lambda")?, &target)?,
            };
            let t_out = phi_map_with_anchor(&d, &target, &source, &anchor, &t)?;
            Ok(Output::Json(json!({ "word_out": target, "t_out": t_out })))
        }
        Command::Schutz { datum: args, lambda, word, t, anchor } => {
            let d = datum(args)?;
            let w = require(word.clone(), word_in, "word")?;
            let t = require(ints(t), t_in, "t")?;
            if t.len() != w.len() {
                return Err(Failure::Usage(format!("--t has {} entries, the word {}", t.len(), w.len())));
            }
            let anchor = match ints(anchor) {
                Some(a) => a,
                None => anchor_constants(&d, &require(weight(lambda), lambda_in, "lambda")?, &w)?,
            };
            let map = schutz_affine_with_anchor(&d, &w, anchor)?;
            Ok(Output::Json(json!({ "t_out": map.apply(&t) })))
        }
        Command::Anchor { datum: args, lambda, word } => {
            let d = datum(args)?;
            let w = require(word.clone(), word_in, "word")?;
            let lambda = require(weight(lambda), lambda_in, "lambda")?;
            Ok(Output::Json(json!({ "anchor": anchor_constants(&d, &lambda, &w)? })))
        }
        Command::CrystalDot { datum: args, lambda, bound } => {
            let d = datum(args)?;
            if d.series() != Series::A {
                return Err(Failure::Usage("crystals are available in type A only".into()));
            }
            let lambda = require(weight(lambda), lambda_in, "lambda")?;
            Ok(Output::Text(generate_crystal(d.rank(), &lambda, *bound)?.to_dot()))
        }
        Command::Corollary { datum: args, lambda, word, bound } => {
            let d = datum(args)?;
            let lambda = require(weight(lambda), lambda_in, "lambda")?;
            let w = word.clone().or(word_in).unwrap_or_else(|| d.longest_word());
            let graph = generate_crystal(d.rank(), &lambda, *bound)?;
            let report = verify_corollary_on(&d, &graph, &w)?;
            let out = json!({ "pass": report.pass(), "report": report });
            if report.pass() {
                Ok(Output::Json(out))
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Verify { suite, seed, samples, box_max, a3_stride, timings } => {
            let ids: Vec<u8> = if suite == "all" {
                CRITERIA.to_vec()
            } else {
                let ids = parse_ints(suite).map_err(Failure::Usage)?.0;
                if ids.iter().any(|id| !(1..=9).contains(id)) {
                    return Err(Failure::Usage(format!("criteria are numbered 1 to 9, got {suite:?}")));
                }
                ids.into_iter().map(|id| id as u8).collect()
            };
            let cfg = SuiteConfig { seed: *seed, samples: *samples, box_max: *box_max, a3_box_stride: *a3_stride };
            let results = run_suite(&ids, &cfg);
            for r in &results {
                eprintln!("criterion {}: {} ({})", r.id, if r.pass { "PASS" } else { "FAIL" }, r.name);
            }
            let pass = results.iter().all(|r| r.pass);
            let rows: Vec<Value> = results
                .iter()
                .map(|r| {
                    let mut row = json!({ "id": r.id, "name": r.name, "pass": r.pass, "detail": r.detail });
                    if *timings {
                        row["elapsed_ms"] = json!(r.elapsed_ms);
                    }
                    row
                })
                .collect();
            let out = json!({ "config": cfg, "pass": pass, "results": rows });
            if pass {
                Ok(Output::Json(out))
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

fn emit(output: &Option<PathBuf>, body: &Output) -> Result<(), String> {
    let text = match body {
        Output::Json(v) => format!("{}\n", serde_json::to_string(v).expect("json values serialize")),
        Output::Text(t) => t.clone(),
    };
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(&cli) {
        Ok(body) => (body, 0),
        Err(Failure::Verification(v)) => (Output::Json(v), 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = emit(&cli.output, &body) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
