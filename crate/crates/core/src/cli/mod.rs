//! The `tilecode` command line.
//!
//! Exit status: 0 success, 1 domain error, 2 budget exhausted, 3 parse error.
//! With `--format json` every verb prints one object carrying `"schema": 1`,
//! `"verb"` and the same facts as the text output.

pub mod format;
pub mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::codes::{
    eastman_count, family_count, generate_picture_code, is_comma_free_picture_code, is_prime, numerosity_lower_bound,
    search_comma_free_picture_code, CodeError, CodeFamilySpec, ObligationWord, WordCode,
};
use crate::grid::{Alphabet, Picture};
use crate::lang::{
    compare_languages, enumerate_language, slt_to_local, ts_member, LangError, Membership, DEFAULT_BUDGET,
};
use crate::reduce::{pad_picture, reduce_alphabet, FrameSource, ReduceError, ReductionOptions};
use format::{
    parse_code, parse_picture, parse_system, write_code, write_picture, write_system, write_tileset, FormatError,
};
use render::{render_picture, render_tileset};

pub const JSON_SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Io { .. } => 1,
            CliError::Budget(_) => 2,
            CliError::Parse { .. } | CliError::Usage(_) => 3,
        }
    }
}

impl From<LangError> for CliError {
    fn from(e: LangError) -> Self {
        match e {
            LangError::Budget { .. } => CliError::Budget(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::Budget { .. } | CodeError::Lang(LangError::Budget { .. }) => CliError::Budget(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ReduceError> for CliError {
    fn from(e: ReduceError) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FramesArg {
    Local,
    Realized,
}

#[derive(Debug, Parser)]
#[command(name = "tilecode", version, about = "Picture languages, tiling systems and comma-free picture codes")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 6)]
    pub max_rows: usize,
    #[arg(long, global = true, default_value_t = 6)]
    pub max_cols: usize,
    /// Search budget in nodes.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Output directory or file, depending on the verb.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Plain ASCII diagrams instead of box drawing.
    #[arg(long, global = true)]
    pub ascii: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide membership of a picture in a tiling system.
    Member {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        picture: PathBuf,
    },
    /// List every picture of a tiling system within the size bounds.
    Enumerate {
        #[arg(long)]
        system: PathBuf,
    },
    /// Compare two tiling systems within the size bounds.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Pad a picture with `$` to sides divisible by `--k`.
    Pad {
        #[arg(long)]
        picture: PathBuf,
    },
    /// Reduce a 2-tiling system to alphabetic ratio 2; writes a bundle to `--out`.
    Reduce {
        #[arg(long)]
        system: PathBuf,
        /// A binary comma-free code to use instead of a generated one.
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FramesArg::Realized)]
        frames: FramesArg,
        /// Size bounds of the source pictures whose blocks give realized frames.
        #[arg(long, default_value_t = 12)]
        frame_rows: usize,
        #[arg(long, default_value_t = 21)]
        frame_cols: usize,
    },
    /// Generate a picture code from word codes and an obligation word, or greedily.
    CodeGen {
        /// Comma-separated horizontal words.
        #[arg(long)]
        y_hor: Option<String>,
        /// Comma-separated vertical words; defaults to the horizontal ones.
        #[arg(long)]
        y_vert: Option<String>,
        #[arg(long)]
        obligation: Option<String>,
        /// Greedy search for this many binary pictures of size `--k`.
        #[arg(long)]
        greedy: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that a code file is comma-free.
    CodeVerify {
        #[arg(long)]
        code: PathBuf,
    },
    /// Count a code family, or report the word and picture bounds for `--k`.
    CodeCount {
        #[arg(long)]
        y_hor: Option<String>,
        #[arg(long)]
        y_vert: Option<String>,
        #[arg(long)]
        obligation: Option<String>,
    },
    /// Convert a k-tiling system to an equivalent 2-tiling system.
    SltToLocal {
        #[arg(long)]
        system: PathBuf,
    },
    /// Draw a picture, or the tiles of a system.
    Render {
        #[arg(long)]
        picture: Option<PathBuf>,
        #[arg(long)]
        system: Option<PathBuf>,
    },
}

/// What a verb produced: human text and the equivalent JSON fields.
struct Report {
    text: String,
    json: Value,
    exit: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, exit: 0 }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parsed<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn load_picture(path: &Path) -> Result<Picture, CliError> {
    parsed(path, parse_picture(&read(path)?, false))
}

fn load_system(path: &Path) -> Result<crate::lang::TilingSystem, CliError> {
    parsed(path, parse_system(&read(path)?))
}

fn pictures_json(ps: impl IntoIterator<Item = Picture>) -> Value {
    Value::Array(ps.into_iter().map(|p| picture_json(&p)).collect())
}

fn picture_json(p: &Picture) -> Value {
    let rows: Vec<Vec<&str>> = (1..=p.rows()).map(|i| p.row(i).iter().map(|s| s.as_str()).collect()).collect();
    json!(rows)
}

fn words(arg: &str) -> Result<WordCode, CliError> {
    let ws: Vec<&str> = arg.split(',').map(str::trim).collect();
    Ok(WordCode::binary(&ws)?)
}

fn family_spec(
    y_hor: &Option<String>,
    y_vert: &Option<String>,
    obligation: &Option<String>,
) -> Result<Option<CodeFamilySpec>, CliError> {
    match (y_hor, obligation) {
        (None, None) => Ok(None),
        (Some(h), Some(w)) => {
            let hor = words(h)?;
            let vert = match y_vert {
                Some(v) => words(v)?,
                None => hor.clone(),
            };
            Ok(Some(CodeFamilySpec::new(hor, vert, ObligationWord::parse(w)?)?))
        }
        _ => Err(CliError::Usage("--y-hor and --obligation go together".into())),
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let (mr, mc, budget) = (cli.max_rows, cli.max_cols, cli.budget);
    match &cli.command {
        Command::Member { system, picture } => {
            let s = load_system(system)?;
            let p = load_picture(picture)?;
            let m = ts_member(&p, &s, budget)?;
            let mut text = format!("{}\n", m.label());
            let mut j = json!({ "result": m.label() });
            if let Membership::Yes(w) = &m {
                text.push_str(&write_picture(w));
                j["witness"] = picture_json(w);
                if let Some(out) = &cli.out {
                    write(out, &write_picture(w))?;
                }
            }
            let exit = if m == Membership::Unknown { 2 } else { 0 };
            Ok(Report { text, json: j, exit })
        }
        Command::Enumerate { system } => {
            let s = load_system(system)?;
            let l = enumerate_language(&s, mr, mc, budget)?;
            let mut text = format!("{} pictures within {mr}x{mc}\n", l.len());
            for p in &l {
                text.push('\n');
                text.push_str(&write_picture(p));
            }
            Ok(Report::ok(
                text,
                json!({ "count": l.len(), "max_rows": mr, "max_cols": mc, "pictures": pictures_json(l) }),
            ))
        }
        Command::Compare { a, b } => {
            let (sa, sb) = (load_system(a)?, load_system(b)?);
            let c = compare_languages(&sa, &sb, mr, mc, budget)?;
            let mut text = format!(
                "equal: {} within {mr}x{mc}\nonly in a: {}\nonly in b: {}\n",
                c.equal(),
                c.only_a.len(),
                c.only_b.len()
            );
            for (tag, set) in [("a", &c.only_a), ("b", &c.only_b)] {
                for p in set {
                    text.push_str(&format!("\nonly in {tag}:\n{}", write_picture(p)));
                }
            }
            let j = json!({
                "equal": c.equal(), "max_rows": mr, "max_cols": mc,
                "only_a": pictures_json(c.only_a.clone()), "only_b": pictures_json(c.only_b.clone()),
            });
            Ok(Report::ok(text, j))
        }
        Command::Pad { picture } => {
            let k = cli.k.ok_or_else(|| CliError::Usage("pad needs --k".into()))?;
            let p = pad_picture(&load_picture(picture)?, k)?;
            Ok(Report::ok(write_picture(&p), json!({ "k": k, "picture": picture_json(&p) })))
        }
        Command::Reduce { system, code, frames, frame_rows, frame_cols } => {
            let s = load_system(system)?;
            let x = match code {
                Some(path) => Some(parsed(path, parse_code(&read(path)?))?),
                None => None,
            };
            let frames = match frames {
                FramesArg::Local => FrameSource::Local,
                FramesArg::Realized => FrameSource::Realized { max_rows: *frame_rows, max_cols: *frame_cols },
            };
            let opts = ReductionOptions { k: cli.k, code: x, frames, budget, ..Default::default() };
            let art = reduce_alphabet(&s, &opts)?;
            let report = art.report();
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
                let mut frames_txt = String::new();
                for (name, x) in art.frame_alphabet.alphabet().iter().zip(art.frame_alphabet.symbols()) {
                    frames_txt.push_str(&format!("{name} {x}\n"));
                }
                frames_txt.push_str(&format!("frames: {}\n", art.frame_alphabet.frames().len()));
                for (file, text) in [
                    ("padded.ts", write_system(&art.padded_system)),
                    ("frames.txt", frames_txt),
                    ("m2.ts", write_tileset(&art.frame_tiles)),
                    ("codeX.code", write_code(&art.code_x)),
                    ("codeZ.code", write_code(&art.code_z)),
                    ("m2k.ts", write_tileset(&art.encoded_tiles)),
                    ("final.ts", write_system(&art.final_system)),
                    ("report.txt", report.clone()),
                ] {
                    write(&dir.join(file), &text)?;
                }
            }
            let j = json!({
                "k": art.k,
                "frame_symbols": art.frame_alphabet.len(),
                "frames": art.frame_alphabet.frames().len(),
                "frame_tiles": art.frame_tiles.len(),
                "code_x": art.code_x.len(),
                "encoded_tiles": art.encoded_tiles.len(),
                "final_local": art.final_system.local().len(),
                "final_tiles": art.final_system.tileset().len(),
                "ratio": art.ratio_text(),
            });
            Ok(Report::ok(report, j))
        }
        Command::CodeGen { y_hor, y_vert, obligation, greedy, seed } => {
            let (code, diagnostics) = match (family_spec(y_hor, y_vert, obligation)?, greedy) {
                (Some(spec), None) => {
                    let g = generate_picture_code(&spec, budget as u128)?;
                    (g.code, g.diagnostics)
                }
                (None, Some(n)) => {
                    let k = cli.k.ok_or_else(|| CliError::Usage("--greedy needs --k".into()))?;
                    let bits = Alphabet::new("bits", ["0", "1"]).expect("valid tokens");
                    (search_comma_free_picture_code(&bits, k, *n, *seed)?, Vec::new())
                }
                _ => return Err(CliError::Usage("give either --y-hor with --obligation, or --greedy".into())),
            };
            let text = write_code(&code);
            if let Some(out) = &cli.out {
                write(out, &text)?;
            }
            let j = json!({ "k": code.k(), "pictures": code.len(), "diagnostics": diagnostics, "code": text });
            let mut text = text;
            for d in &diagnostics {
                text.push_str(&format!("# {d}\n"));
            }
            Ok(Report::ok(text, j))
        }
        Command::CodeVerify { code } => {
            let x = parsed(code, parse_code(&read(code)?))?;
            let ok = is_comma_free_picture_code(&x);
            let text = format!("comma-free: {ok} ({} pictures, k={})\n", x.len(), x.k());
            Ok(Report {
                text,
                json: json!({ "comma_free": ok, "pictures": x.len(), "k": x.k() }),
                exit: if ok { 0 } else { 1 },
            })
        }
        Command::CodeCount { y_hor, y_vert, obligation } => {
            if let Some(spec) = family_spec(y_hor, y_vert, obligation)? {
                let n = family_count(&spec);
                return Ok(Report::ok(format!("pictures: {n}\n"), json!({ "pictures": n.to_string(), "k": spec.k() })));
            }
            let k = cli.k.ok_or_else(|| CliError::Usage("code-count needs a family or --k".into()))?;
            let mut text = String::new();
            let mut j = json!({ "k": k });
            if is_prime(k as u64) {
                let nu = eastman_count(k as u32)?;
                text.push_str(&format!("comma-free words: {nu}\n"));
                j["comma_free_words"] = json!(nu);
            }
            if let Ok(b) = numerosity_lower_bound(k as u64) {
                text.push_str(&format!("picture code lower bound: 2^{:.2}\n", b.log2));
                j["log2_lower_bound"] = json!(b.log2);
            }
            Ok(Report::ok(text, j))
        }
        Command::SltToLocal { system } => {
            let s = slt_to_local(&load_system(system)?)?;
            let text = write_system(&s);
            if let Some(out) = &cli.out {
                write(out, &text)?;
            }
            let j = json!({ "local": s.local().len(), "tiles": s.tileset().len(), "system": text });
            Ok(Report::ok(text, j))
        }
        Command::Render { picture, system } => {
            let text = match (picture, system) {
                (Some(p), None) => render_picture(&load_picture(p)?, cli.k, cli.ascii),
                (None, Some(s)) => render_tileset(load_system(s)?.tileset(), cli.ascii),
                _ => return Err(CliError::Usage("render needs exactly one of --picture, --system".into())),
            };
            Ok(Report::ok(text.clone(), json!({ "diagram": text })))
        }
    }
}

fn verb(c: &Command) -> &'static str {
    match c {
        Command::Member { .. } => "member",
        Command::Enumerate { .. } => "enumerate",
        Command::Compare { .. } => "compare",
        Command::Pad { .. } => "pad",
        Command::Reduce { .. } => "reduce",
        Command::CodeGen { .. } => "code-gen",
        Command::CodeVerify { .. } => "code-verify",
        Command::CodeCount { .. } => "code-count",
        Command::SltToLocal { .. } => "slt-to-local",
        Command::Render { .. } => "render",
    }
}

/// Parses `args` (including the program name) and runs the verb.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let json_out = cli.format == OutputFormat::Json;
    match execute(&cli) {
        Ok(r) => {
            if json_out {
                let mut j = json!({ "schema": JSON_SCHEMA, "verb": verb(&cli.command) });
                if let (Value::Object(m), Value::Object(extra)) = (&mut j, r.json) {
                    m.extend(extra);
                }
                let _ = writeln!(out, "{j}");
            } else {
                let _ = write!(out, "{}", r.text);
            }
            r.exit
        }
        Err(e) => {
            if json_out {
                let j = json!({ "schema": JSON_SCHEMA, "verb": verb(&cli.command), "error": e.to_string(), "exit": e.exit_code() });
                let _ = writeln!(out, "{j}");
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
