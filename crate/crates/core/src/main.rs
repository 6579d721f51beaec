use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;

use railyard::input::{load, InputError, InputKind, Source};
use railyard::layout::{print_layout, top_level_well_formed};
use railyard::pipeline::{compile, AlignItems, JustifyContent, LayoutParams, WrapMode};
use railyard::render::{render_named, render_svg, RenderStyle};
use railyard::service::{dump_stage, serve, DumpStage};
use railyard::LayoutError;

/// Parses a kebab-case value through the type's serde names.
fn kebab<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "railyard", version, about = "Lay out railroad diagrams at an exact width and render them to SVG")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Input file, `-` for stdin, or the source text itself. Reads stdin when absent.
    input: Option<String>,

    /// diagram | regex | bnf | layout
    #[arg(long, default_value = "diagram", value_parser = kebab::<InputKind>)]
    input_kind: InputKind,

    /// Target width in layout units.
    #[arg(long, default_value_t = 800.0)]
    width: f64,

    /// local | global
    #[arg(long, default_value = "local", value_parser = kebab::<WrapMode>)]
    wrap: WrapMode,

    /// top | center | bottom | baseline
    #[arg(long, default_value = "baseline", value_parser = kebab::<AlignItems>)]
    align: AlignItems,

    /// start | end | center | space-between | space-around | space-evenly
    #[arg(long, default_value = "start", value_parser = kebab::<JustifyContent>)]
    justify: JustifyContent,

    /// Share of leftover width turned into rails rather than widening concatenations.
    #[arg(long, default_value_t = 0.5)]
    flex_absorb: f64,

    /// Minimum rail between adjacent items.
    #[arg(long, default_value_t = 8.0)]
    gap: f64,

    /// Print an intermediate form instead of SVG: immediate | aligned | wrapped | layout
    #[arg(long, value_parser = kebab::<DumpStage>)]
    dump: Option<DumpStage>,

    /// Output file; for BNF input an existing directory receives one SVG per rule.
    #[arg(short, long)]
    output: Option<PathBuf>,

    /// Emit classes only, without the embedded stylesheet.
    #[arg(long)]
    no_style: bool,

    /// Draw direction arrows on loops.
    #[arg(long)]
    arrows: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the local layout service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

enum Failure {
    Input(String),
    TooSmall(String),
    IllFormed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::TooSmall(_) => 2,
            Failure::IllFormed(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::TooSmall(m) | Failure::IllFormed(m) => m,
        }
    }
}

impl From<LayoutError> for Failure {
    fn from(e: LayoutError) -> Self {
        match e {
            LayoutError::TargetTooSmall { .. } | LayoutError::NoFeasibleWrap { .. } => Failure::TooSmall(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Layout(l) => l.into(),
            InputError::Parse(p) => Failure::Input(p.to_string()),
        }
    }
}

fn read_source(input: Option<&str>) -> Result<String, Failure> {
    let from_stdin = || {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| Failure::Input(format!("reading stdin: {e}")))
    };
    match input {
        None | Some("-") => from_stdin(),
        Some(arg) if Path::new(arg).is_file() => {
            fs::read_to_string(arg).map_err(|e| Failure::Input(format!("reading {arg}: {e}")))
        }
        Some(text) => Ok(text.to_string()),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("writing {}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Input(format!("writing stdout: {e}"))),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let params = LayoutParams {
        target_width: cli.width,
        wrap_mode: cli.wrap,
        align_items: cli.align,
        justify_content: cli.justify,
        flex_absorb: cli.flex_absorb,
        gap: cli.gap,
        ..Default::default()
    };
    params.validate().map_err(Failure::Input)?;
    let rs = RenderStyle { embed_style: !cli.no_style, arrows: cli.arrows, ..RenderStyle::with_style(params.style.clone()) };
    let text = read_source(cli.input.as_deref())?;
    match load(cli.input_kind, &text)? {
        Source::Layout(l) => {
            let report = top_level_well_formed(&l, &params.style);
            if !report.is_ok() {
                return Err(Failure::IllFormed(report.to_string()));
            }
            match cli.dump {
                None => write_out(cli.output.as_deref(), &render_svg(&l, &rs).map_err(|r| Failure::IllFormed(r.to_string()))?),
                Some(DumpStage::Layout) => write_out(cli.output.as_deref(), &(print_layout(&l) + "\n")),
                Some(_) => Err(Failure::Input("layout input can only be checked, rendered or dumped as a layout".into())),
            }
        }
        Source::Diagrams(diagrams) => {
            let mut compiled = Vec::with_capacity(diagrams.len());
            for (name, d) in diagrams {
                compiled.push((name, compile(&d, &params)?));
            }
            if let Some(stage) = cli.dump {
                let parts: Vec<String> = compiled
                    .iter()
                    .map(|(name, c)| match name {
                        Some(n) => format!("; {n}\n{}", dump_stage(c, stage)),
                        None => dump_stage(c, stage),
                    })
                    .collect();
                return write_out(cli.output.as_deref(), &(parts.join("\n") + "\n"));
            }
            let internal = |r: railyard::layout::WfReport| Failure::IllFormed(format!("internal layout is ill-formed: {r}"));
            let named = compiled.iter().any(|(n, _)| n.is_some());
            if !named {
                return write_out(cli.output.as_deref(), &render_svg(&compiled[0].1.layout, &rs).map_err(internal)?);
            }
            match cli.output.as_deref() {
                Some(dir) if dir.is_dir() => {
                    for (name, c) in &compiled {
                        let svg = render_svg(&c.layout, &rs).map_err(internal)?;
                        let file = dir.join(format!("{}.svg", name.as_deref().unwrap_or("rule")));
                        write_out(Some(&file), &svg)?;
                    }
                    Ok(())
                }
                out => {
                    let items: Vec<(String, railyard::Layout)> =
                        compiled.iter().map(|(n, c)| (n.clone().unwrap_or_default(), c.layout.clone())).collect();
                    write_out(out, &render_named(&items, &rs).map_err(internal)?)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(Command::Serve { port }) = cli.command {
        let rt = match tokio::runtime::Runtime::new() {
            Ok(rt) => rt,
            Err(e) => {
                eprintln!("railyard: {e}");
                return ExitCode::from(1);
            }
        };
        eprintln!("railyard: serving on http://127.0.0.1:{port}");
        return match rt.block_on(serve(port)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("railyard: {e}");
                ExitCode::from(1)
            }
        };
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("railyard: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
