//! Command-line front end. [`run`] returns the exit code and both output
//! streams so it can be driven from tests.

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arithmetic::{build_picture, ArithmeticContext, PolynomialInput};
use crate::classify::Classification;
use crate::error::{Error, Result};
use crate::frobenius::{act_traced, ClusterMap, EpsilonTable, FrobeniusAction};
use crate::model::{build, build_classified};
use crate::picture::{ChromaticClusterPicture, Depth};
use crate::verify::fixtures::{fixture, FIXTURES};
use crate::verify::{check_graph, match_fixture, Status};

#[derive(Parser, Debug)]
#[command(
    name = "chromatic",
    version,
    about = "Dual graphs of special fibres of bihyperelliptic curves from chromatic cluster pictures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the dual graph.
    Build(CommonArgs),
    /// Print the per-cluster classification table.
    Classify(CommonArgs),
    /// Compute the Frobenius automorphism of the dual graph.
    Frobenius(FrobeniusArgs),
    /// Run the structural checks and report.
    Check(CommonArgs),
    /// Emit the dual graph as DOT.
    Render(InputArgs),
    /// List or show the bundled worked examples.
    Examples(ExamplesArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "input")]
struct InputSource {
    /// Picture as text, JSON, or a path to a file holding either.
    #[arg(long)]
    picture: Option<String>,
    /// Path to a polynomial JSON file (or the JSON itself).
    #[arg(long)]
    polynomials: Option<String>,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[command(flatten)]
    source: InputSource,
    /// Prime for polynomial input (overrides the file's "p").
    #[arg(long)]
    p: Option<u64>,
    /// Multiply all depths by this positive rational before building.
    #[arg(long)]
    scale: Option<String>,
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct FrobeniusArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// ε table JSON (file or inline), for picture input.
    #[arg(long)]
    eps: Option<String>,
    /// Cluster permutation JSON (file or inline), for picture input.
    #[arg(long)]
    perm: Option<String>,
}

#[derive(Args, Debug)]
struct ExamplesArgs {
    /// List the fixture names.
    #[arg(long)]
    list: bool,
    /// Build every fixture and compare with its expected graph.
    #[arg(long)]
    run: bool,
    /// Show one fixture.
    name: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn domain(e: Error) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

fn inline_or_file(value: &str) -> Result<String> {
    let t = value.trim_start();
    if t.starts_with('(') || t.starts_with('{') {
        return Ok(value.to_string());
    }
    fs::read_to_string(value).map_err(|e| Error::Input(format!("cannot read '{value}': {e}")))
}

enum Loaded {
    Picture(ChromaticClusterPicture),
    Polynomials(Box<ArithmeticContext>),
}

impl Loaded {
    fn picture(&self) -> &ChromaticClusterPicture {
        match self {
            Loaded::Picture(p) => p,
            Loaded::Polynomials(ctx) => ctx.picture(),
        }
    }
}

fn load(args: &InputArgs) -> Result<Loaded> {
    let loaded = if let Some(pic) = &args.source.picture {
        if args.p.is_some() {
            return Err(Error::Input("--p applies to polynomial input only".into()));
        }
        let text = inline_or_file(pic)?;
        let picture = if text.trim_start().starts_with('{') {
            ChromaticClusterPicture::from_json(&text)?
        } else {
            ChromaticClusterPicture::parse(&text)?
        };
        Loaded::Picture(picture)
    } else {
        let text = inline_or_file(args.source.polynomials.as_deref().unwrap_or_default())?;
        let input = match args.p {
            Some(p) => PolynomialInput::from_json_with_prime(&text, p)?,
            None => PolynomialInput::from_json(&text)?,
        };
        Loaded::Polynomials(Box::new(build_picture(&input)?))
    };
    match (&args.scale, loaded) {
        (None, loaded) => Ok(loaded),
        (Some(_), Loaded::Polynomials(_)) => {
            Err(Error::Input("--scale applies to picture input only".into()))
        }
        (Some(e), Loaded::Picture(pic)) => {
            let factor: Depth = e
                .parse()
                .map_err(|_| Error::Input(format!("bad scale factor '{e}'")))?;
            Ok(Loaded::Picture(pic.scaled(factor)?))
        }
    }
}

fn cmd_build(args: &CommonArgs) -> Result<String> {
    let loaded = load(&args.input)?;
    let graph = build(loaded.picture())?;
    Ok(match args.format {
        Format::Json => graph.to_json(),
        Format::Dot => graph.to_dot(),
        Format::Text => graph.to_text(),
    })
}

fn cmd_classify(args: &CommonArgs) -> Result<String> {
    let loaded = load(&args.input)?;
    let cls = Classification::new(loaded.picture());
    Ok(match args.format {
        Format::Json => cls.to_json(),
        Format::Dot => return Err(Error::Input("classify has no DOT output".into())),
        Format::Text => cls.to_text(),
    })
}

fn cmd_frobenius(args: &FrobeniusArgs) -> Result<String> {
    let loaded = load(&args.common.input)?;
    let pic = loaded.picture();
    let cls = Classification::new(pic);
    let action = match &loaded {
        Loaded::Polynomials(ctx) => {
            if args.eps.is_some() || args.perm.is_some() {
                return Err(Error::Input(
                    "--eps and --perm apply to picture input only".into(),
                ));
            }
            ctx.action(&cls)?
        }
        Loaded::Picture(_) => FrobeniusAction {
            perm: match &args.perm {
                Some(p) => ClusterMap::from_json(pic, &inline_or_file(p)?)?,
                None => ClusterMap::identity(),
            },
            eps: match &args.eps {
                Some(e) => EpsilonTable::from_json(pic, &inline_or_file(e)?)?,
                None => EpsilonTable::trivial(pic),
            },
        },
    };
    let graph = build_classified(&cls)?;
    let (auto, trace) = act_traced(&cls, &graph, &action)?;
    Ok(match args.common.format {
        Format::Json => auto.to_json(&graph, Some(&trace)),
        Format::Dot => return Err(Error::Input("frobenius has no DOT output".into())),
        Format::Text => auto.to_text(&graph, Some(&trace)),
    })
}

fn cmd_check(args: &CommonArgs) -> Result<(bool, String)> {
    let loaded = load(&args.input)?;
    let mut report = check_graph(loaded.picture());
    if let Loaded::Polynomials(ctx) = &loaded {
        report.entries.push(crate::verify::CheckEntry {
            check: "precision certificate",
            status: if ctx.certified() {
                Status::Pass
            } else {
                Status::Fail
            },
            detail: format!(
                "p = {}, residue degree {}, precision {}",
                ctx.p(),
                ctx.residue_degree(),
                ctx.precision()
            ),
        });
    }
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Dot => return Err(Error::Input("check has no DOT output".into())),
        Format::Text => report.to_text(),
    };
    Ok((report.passed(), text))
}

fn cmd_render(args: &InputArgs) -> Result<String> {
    let loaded = load(args)?;
    Ok(build(loaded.picture())?.to_dot())
}

fn cmd_examples(args: &ExamplesArgs) -> Result<(bool, String)> {
    if let Some(name) = &args.name {
        let fx = fixture(name).ok_or_else(|| Error::Input(format!("unknown example '{name}'")))?;
        let mut out = format!("{}\n  {}\n  picture: {}\n", fx.name, fx.summary, fx.picture);
        if let Some(poly) = fx.polynomials {
            out.push_str(&format!("  polynomials: {poly}\n"));
        }
        return Ok((true, out));
    }
    if args.run {
        let mut ok = true;
        let mut out = String::new();
        for fx in FIXTURES {
            let r = match_fixture(fx.name).expect("bundled fixture");
            ok &= r.matched;
            let tag = if r.matched { "ok" } else { "MISMATCH" };
            out.push_str(&format!("{:<16} {tag:<8} {}\n", r.name, r.detail));
        }
        return Ok((ok, out));
    }
    let mut out = String::new();
    for fx in FIXTURES {
        if args.list {
            out.push_str(&format!("{}\n", fx.name));
        } else {
            out.push_str(&format!("{:<16} {}\n", fx.name, fx.summary));
        }
    }
    Ok((true, out))
}

/// Parses `argv` (including the program name) and runs the subcommand.
/// Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let with_status = |r: Result<(bool, String)>| match r {
        Ok((true, out)) => Outcome::ok(out),
        Ok((false, out)) => Outcome {
            code: 1,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome::domain(e),
    };
    let plain = |r: Result<String>| with_status(r.map(|s| (true, s)));
    match &cli.command {
        Command::Build(a) => plain(cmd_build(a)),
        Command::Classify(a) => plain(cmd_classify(a)),
        Command::Frobenius(a) => plain(cmd_frobenius(a)),
        Command::Check(a) => with_status(cmd_check(a)),
        Command::Render(a) => plain(cmd_render(a)),
        Command::Examples(a) => with_status(cmd_examples(a)),
    }
}
