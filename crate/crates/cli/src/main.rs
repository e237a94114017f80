use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use scenetalk::bundle::{load_grammar, load_lexicon};
use scenetalk::{narrate, parse_sentence, relations, Bundle, CliError};
use scenetalk_nlg::Tense;

/// Perceptual narratives and natural-language summaries of observed scenes.
#[derive(Parser)]
#[command(name = "scenetalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the narrative of a scene bundle and summarise it.
    Narrate {
        /// Bundle directory or its bundle.toml.
        bundle: PathBuf,
        /// simple_present, simple_past, simple_future, present_continuous,
        /// past_continuous or future_continuous (present, past, future also work).
        #[arg(long, default_value = "simple_present", value_parser = parse_tense)]
        tense: Tense,
        /// Emit the narrative, occurrences and syntax trees as JSON.
        #[arg(long)]
        json: bool,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Scene configuration replacing the bundle's.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print the holdings of a scene narrative, one per line.
    Relations {
        bundle: PathBuf,
        /// Fluent such as `topology(irene_face,right_quadrant)`; `_` matches any argument.
        #[arg(long)]
        fluent: Option<String>,
        /// Relation symbol within the fluent's family, e.g. `ntpp`.
        #[arg(long)]
        relation: Option<String>,
        /// Only holdings whose span contains this time, in seconds.
        #[arg(long)]
        at: Option<f64>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Parse a sentence into every syntax tree the grammar allows.
    Parse {
        #[arg(long)]
        sentence: String,
        /// Lexicon file; defaults to the built-in one.
        #[arg(long)]
        lexicon: Option<PathBuf>,
        /// Grammar file; defaults to the built-in one.
        #[arg(long)]
        grammar: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_tense(s: &str) -> Result<Tense, String> {
    s.parse()
}

fn write_atomically(path: &Path, contents: &str) -> Result<(), CliError> {
    let err = |source| CliError::Output { path: path.display().to_string(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents.as_bytes()).map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let output = match cli.command {
        Command::Narrate { bundle, tense, json, out, config } => {
            let bundle = Bundle::load(&bundle, config.as_deref())?;
            let narration = narrate(&bundle, tense)?;
            let text = if json { narration.json() } else { narration.text() };
            if let Some(path) = out {
                return write_atomically(&path, &text);
            }
            text
        }
        Command::Relations { bundle, fluent, relation, at, config } => {
            let bundle = Bundle::load(&bundle, config.as_deref())?;
            let narration = narrate(&bundle, Tense::SimplePresent)?;
            relations(&narration.narrative, fluent.as_deref(), relation.as_deref(), at)?
        }
        Command::Parse { sentence, lexicon, grammar, json } => {
            let lexicon = load_lexicon(lexicon.as_deref())?;
            let grammar = load_grammar(grammar.as_deref())?;
            parse_sentence(&sentence, &lexicon, &grammar, json)?
        }
    };
    std::io::stdout()
        .write_all(output.as_bytes())
        .map_err(|source| CliError::Output { path: "<stdout>".into(), source })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SCENETALK_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("scenetalk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
