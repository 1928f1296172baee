//! Command-line surface and exit-code policy.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use msforms::classify::{delta2, is_multisymplectic, mu_invariant, orbit_type, structure_extract_with_theta};
use msforms::normal_form::normal_form;
use msforms::orbit_tangent::{complex_table, involution_table, n_filtration, witness_nonintegrable, WitnessKind};
use msforms::{Error, KForm, OrbitType};
use rayon::prelude::*;
use rayon::ThreadPool;
use serde_json::{json, Map, Value};

use crate::format::{parse_3form, parse_theta, write_form, ParseError};
use crate::report::{self, OutputFormat};
use crate::sample;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "msforms", version, about = "Classify multisymplectic 3-forms in dimension six")]
pub struct Cli {
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "plain")]
    json: bool,
    /// Aligned `key: value` output.
    #[arg(long, global = true)]
    plain: bool,
    /// Volume form file, a single term `<rational> 1 2 3 4 5 6`.
    #[arg(long, global = true, value_name = "FILE")]
    theta: Option<PathBuf>,
    /// Worker threads for batch commands.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit type and μ invariant.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Canonical endomorphism S, J or F.
    Structure { file: PathBuf },
    /// Explicit change of basis to the orbit representative.
    NormalForm { file: PathBuf },
    /// Vectors v with (ι_v ω)∧(ι_v ω) = 0.
    Delta2 { file: PathBuf },
    /// Tangent-space table or filtration for the detected orbit.
    OrbitReport { file: PathBuf },
    /// Tangent-space table at an orbit representative.
    Tables {
        #[arg(long, value_enum)]
        which: TableKind,
    },
    /// A pair of tangent vectors with nonzero wedge product.
    Witness { file: PathBuf },
    /// Seeded pullbacks of an orbit representative.
    Sample {
        #[arg(long, value_enum)]
        orbit: OrbitArg,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TableKind {
    Product,
    Complex,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrbitArg {
    Product,
    Complex,
    Tangent,
}

impl From<OrbitArg> for OrbitType {
    fn from(o: OrbitArg) -> Self {
        match o {
            OrbitArg::Product => OrbitType::Product,
            OrbitArg::Complex => OrbitType::Complex,
            OrbitArg::Tangent => OrbitType::Tangent,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    /// A computed table contradicts the expected one; the report is still emitted.
    #[error("inconsistent result: {}", .reasons.join("; "))]
    Inconsistent { report: Value, reasons: Vec<String> },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                Error::WrongOrbit { .. }
                | Error::NotMultisymplectic
                | Error::WrongGrade { .. }
                | Error::ZeroVolume
                | Error::OutsideD2
                | Error::NotBasic => EXIT_PRECONDITION,
                _ => EXIT_INTERNAL,
            },
            CliError::Inconsistent { .. } => EXIT_INTERNAL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

struct Input {
    path: String,
    digest: String,
    form: KForm,
}

fn read(path: &Path) -> Result<(String, Vec<u8>), CliError> {
    let name = path.display().to_string();
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: name.clone(),
        source,
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Usage(format!("{name}: not UTF-8")))?;
    Ok((text, bytes))
}

fn load(path: &Path) -> Result<Input, CliError> {
    let (text, bytes) = read(path)?;
    let name = path.display().to_string();
    let form = parse_3form(&text)
        .map_err(|source| CliError::Parse {
            path: name.clone(),
            source,
        })?
        .form;
    Ok(Input {
        path: name,
        digest: report::digest(&bytes),
        form,
    })
}

fn load_theta(path: Option<&Path>) -> Result<KForm, CliError> {
    let Some(path) = path else {
        return Ok(KForm::volume());
    };
    let (text, _) = read(path)?;
    parse_theta(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn header(command: &str, input: Option<&Input>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    if let Some(i) = input {
        m.insert("file".into(), json!(i.path));
        m.insert("input_digest".into(), json!(i.digest));
    }
    m
}

fn classify_doc(input: &Input, theta: &KForm) -> Result<Value, CliError> {
    let mut doc = header("classify", Some(input));
    let ms = is_multisymplectic(&input.form)?;
    doc.insert("multisymplectic".into(), json!(ms));
    doc.insert("orbit".into(), json!(orbit_type(&input.form).tag()));
    let mu = if ms {
        report::scalar(&mu_invariant(&input.form, theta)?)
    } else {
        Value::Null
    };
    doc.insert("mu".into(), mu);
    doc.insert("theta".into(), report::form(theta));
    Ok(Value::Object(doc))
}

fn table_section(orbit: OrbitType, form: &KForm) -> Result<(&'static str, Value, Vec<String>), CliError> {
    match orbit {
        OrbitType::Product => {
            let t = involution_table(form)?;
            Ok(("product_table", report::involution_table(&t), t.discrepancies.clone()))
        }
        OrbitType::Complex => {
            let t = complex_table(form)?;
            let mut reasons = Vec::new();
            if t.passing.len() != 4 {
                reasons.push(format!("{} quadruples pass, expected 4", t.passing.len()));
            }
            if !t.linked_signs_pass || t.opposite_signs_pass {
                reasons.push("half-quadruple sign pairing differs".into());
            }
            Ok(("complex_table", report::complex_table(&t), reasons))
        }
        OrbitType::Tangent => {
            let r = n_filtration(form)?;
            Ok(("filtration", report::filtration(&r), r.violations()))
        }
        OrbitType::NotMultisymplectic => Err(Error::NotMultisymplectic.into()),
    }
}

fn finish(doc: Map<String, Value>, reasons: Vec<String>) -> Result<Value, CliError> {
    let report = Value::Object(doc);
    if reasons.is_empty() {
        Ok(report)
    } else {
        Err(CliError::Inconsistent { report, reasons })
    }
}

fn orbit_report(command: &str, input: &Input) -> Result<Value, CliError> {
    let orbit = orbit_type(&input.form);
    let (key, section, reasons) = table_section(orbit, &input.form)?;
    let mut doc = header(command, Some(input));
    doc.insert("orbit".into(), json!(orbit.tag()));
    doc.insert(key.into(), section);
    finish(doc, reasons)
}

fn representative_input(orbit: OrbitType) -> Input {
    let form = msforms::representative(orbit).expect("multisymplectic orbit");
    let text = write_form(&form, &[]).expect("rational representative");
    Input {
        path: format!("<{} representative>", orbit.tag()),
        digest: report::digest(text.as_bytes()),
        form,
    }
}

fn execute(cli: &Cli, pool: &ThreadPool) -> Result<Value, CliError> {
    let theta = load_theta(cli.theta.as_deref())?;
    match &cli.command {
        Command::Classify { files } => {
            let docs: Vec<Value> = pool.install(|| {
                files
                    .par_iter()
                    .map(|f| load(f).and_then(|i| classify_doc(&i, &theta)))
                    .collect::<Result<_, _>>()
            })?;
            if docs.len() == 1 {
                Ok(docs.into_iter().next().expect("one document"))
            } else {
                Ok(json!({ "command": "classify", "tool_version": env!("CARGO_PKG_VERSION"), "results": docs }))
            }
        }
        Command::Structure { file } => {
            let input = load(file)?;
            let r = structure_extract_with_theta(&input.form, &theta)?;
            let kind = match r.orbit {
                OrbitType::Product => "S",
                OrbitType::Complex => "J",
                _ => "F",
            };
            let mut doc = header("structure", Some(&input));
            doc.insert("orbit".into(), json!(r.orbit.tag()));
            doc.insert("multisymplectic".into(), json!(true));
            doc.insert("mu".into(), report::scalar(&r.mu));
            doc.insert("lambda".into(), report::field_scalar(&r.lambda));
            doc.insert("structure_kind".into(), json!(kind));
            doc.insert("structure".into(), report::structure(&r));
            Ok(Value::Object(doc))
        }
        Command::NormalForm { file } => {
            let input = load(file)?;
            let cert = normal_form(&input.form)?;
            let mut doc = header("normal-form", Some(&input));
            doc.insert("orbit".into(), json!(cert.orbit.tag()));
            doc.insert("certificate".into(), report::certificate(&cert));
            let reasons = if cert.residual_zero {
                vec![]
            } else {
                vec!["nonzero residual".to_string()]
            };
            finish(doc, reasons)
        }
        Command::Delta2 { file } => {
            let input = load(file)?;
            let d = delta2(&input.form)?;
            let mut doc = header("delta2", Some(&input));
            doc.insert("orbit".into(), json!(orbit_type(&input.form).tag()));
            doc.insert("delta2".into(), report::delta2(&d));
            Ok(Value::Object(doc))
        }
        Command::OrbitReport { file } => orbit_report("orbit-report", &load(file)?),
        Command::Tables { which } => {
            let orbit = match which {
                TableKind::Product => OrbitType::Product,
                TableKind::Complex => OrbitType::Complex,
            };
            orbit_report("tables", &representative_input(orbit))
        }
        Command::Witness { file } => {
            let input = load(file)?;
            let orbit = orbit_type(&input.form);
            let (kind, label) = match orbit {
                OrbitType::Product => (WitnessKind::D21xD12, "d21_x_d12"),
                OrbitType::Tangent => (WitnessKind::KerN2, "ker_n2"),
                OrbitType::Complex => {
                    return Err(Error::WrongOrbit {
                        expected: OrbitType::Tangent,
                        found: orbit,
                    }
                    .into())
                }
                OrbitType::NotMultisymplectic => return Err(Error::NotMultisymplectic.into()),
            };
            let (a, b, w) = witness_nonintegrable(&input.form, kind)?;
            let mut doc = header("witness", Some(&input));
            doc.insert("orbit".into(), json!(orbit.tag()));
            doc.insert(
                "witness".into(),
                json!({ "kind": label, "first": report::form(&a), "second": report::form(&b), "wedge": report::form(&w) }),
            );
            Ok(Value::Object(doc))
        }
        Command::Sample {
            orbit,
            seed,
            count,
            out,
        } => {
            let orbit = OrbitType::from(*orbit);
            let count = *count as usize;
            let forms = sample::sample_orbit(orbit, *seed, count, pool).expect("multisymplectic orbit");
            fs::create_dir_all(out).map_err(|source| CliError::Io {
                path: out.display().to_string(),
                source,
            })?;
            let mut files = Vec::with_capacity(count);
            for (i, f) in forms.iter().enumerate() {
                let path = out.join(sample::file_name(orbit, *seed, i));
                let text = sample::file_text(orbit, *seed, i, f);
                fs::write(&path, &text).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                files.push(json!({ "path": path.display().to_string(), "input_digest": report::digest(text.as_bytes()) }));
            }
            let mut doc = header("sample", None);
            doc.insert("orbit".into(), json!(orbit.tag()));
            doc.insert("seed".into(), json!(seed));
            doc.insert("count".into(), json!(count));
            doc.insert("files".into(), Value::Array(files));
            Ok(Value::Object(doc))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    let format = if cli.plain { OutputFormat::Plain } else { OutputFormat::Json };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs as usize).build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("msforms: cannot start worker threads: {e}\n"),
                code: EXIT_INTERNAL,
            }
        }
    };
    match execute(&cli, &pool) {
        Ok(doc) => Outcome {
            stdout: report::render(&doc, format),
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(err) => {
            let code = err.exit_code();
            let stdout = match &err {
                CliError::Inconsistent { report, .. } => report::render(report, format),
                _ => String::new(),
            };
            Outcome {
                stdout,
                stderr: format!("msforms: {err}\n"),
                code,
            }
        }
    }
}
