mod source;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use labelweight_hss::analysis::gv::{gv_monte_carlo, GvConfig};
use labelweight_hss::analysis::table::{emit_table, TableKind};
use labelweight_hss::codes::io::write_code;
use labelweight_hss::error::Error;
use labelweight_hss::galois::{Fe, Field};
use labelweight_hss::hss::serialize::write_scheme;
use labelweight_hss::hss::{privacy_audit, run_end_to_end, synthesize_eval, HssParams, LabelweightStatus};
use labelweight_hss::protocol::{replay, simulate_with, Schedule, SimOptions, Transcript};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use source::{CodeArgs, SchemeArgs};

#[derive(Parser, Debug)]
#[command(name = "hss", version, about = "Linear HSS from labelweight codes")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Markdown,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableName {
    Hermitian,
    Goppa,
    GvExample,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Baseline versus construction parameter tables.
    Table {
        #[arg(value_enum)]
        kind: TableName,
        #[arg(long, default_value_t = 4)]
        dt: u64,
        /// Comma-separated server counts.
        #[arg(long, value_delimiter = ',')]
        servers: Vec<u64>,
        /// gv-example: field size.
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// gv-example: slack ε.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
    },
    /// Build, describe or measure a labeled code.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Share, evaluate and reconstruct directly, many times.
    Demo {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Also write the synthesized scheme.
        #[arg(long)]
        save_scheme: Option<PathBuf>,
    },
    /// Run the message-passing protocol once.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Deliver in a seeded shuffled order instead of round robin.
        #[arg(long)]
        shuffle: bool,
        #[arg(long)]
        dump_transcript: Option<PathBuf>,
        /// Check a dumped transcript against the scheme instead of running.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Exhaustive CNF privacy check.
    AuditPrivacy {
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
    /// Monte Carlo check of the labelweight GV bound.
    GvSim {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        w: usize,
        #[arg(long, default_value_t = 6)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        delta_s: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CodeAction {
    /// Write the code in the text format.
    Build {
        #[command(flatten)]
        code: CodeArgs,
    },
    Info {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Minimum labelweight by enumeration.
    Labelweight {
        #[command(flatten)]
        code: CodeArgs,
    },
}

/// A check that ran and came out wrong; exit status 1.
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerificationFailed {}

/// Key-value output rendered in the requested format.
struct Record(Vec<(String, String)>);

impl Record {
    fn new() -> Record {
        Record(Vec::new())
    }

    fn add(&mut self, key: &str, value: impl ToString) -> &mut Record {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for (k, v) in &self.0 {
                    writeln!(out, "{k}: {v}").unwrap();
                }
            }
            Format::Csv => {
                let keys: Vec<&str> = self.0.iter().map(|(k, _)| k.as_str()).collect();
                let vals: Vec<String> = self.0.iter().map(|(_, v)| csv_field(v)).collect();
                writeln!(out, "{}\n{}", keys.join(","), vals.join(",")).unwrap();
            }
            Format::Markdown => {
                writeln!(out, "| key | value |\n|---|---|").unwrap();
                for (k, v) in &self.0 {
                    writeln!(out, "| {k} | {v} |").unwrap();
                }
            }
        }
        out
    }
}

fn csv_field(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn join_elements(v: &[Fe]) -> String {
    v.iter().map(|e| e.0.to_string()).collect::<Vec<_>>().join(" ")
}

fn random_secrets(field: &Field, params: &HssParams, rng: &mut ChaCha8Rng) -> Vec<Vec<Fe>> {
    (0..params.ell).map(|_| (0..params.m).map(|_| Fe(rng.random_range(0..field.order()))).collect()).collect()
}

fn labelweight_text(status: LabelweightStatus) -> String {
    match status {
        LabelweightStatus::Verified(w) => format!("{w} (verified)"),
        LabelweightStatus::AssertedByConstruction => "asserted by construction".into(),
        LabelweightStatus::Skipped => "not checked".into(),
    }
}

fn run(cli: Cli) -> anyhow::Result<String> {
    let format = cli.format;
    let text = format.unwrap_or(Format::Text);
    match cli.command {
        Command::Table { kind, dt, servers, q, eps } => {
            let kind = match kind {
                TableName::Hermitian => TableKind::Hermitian,
                TableName::Goppa => TableKind::Goppa,
                TableName::GvExample => TableKind::GvExample { q, eps },
            };
            let servers = if servers.is_empty() { kind.default_servers().to_vec() } else { servers };
            let table = emit_table(kind, dt, &servers)?;
            Ok(match format.unwrap_or(Format::Csv) {
                Format::Csv => table.to_csv(),
                Format::Markdown => table.to_markdown(),
                Format::Text => table.to_text(),
            })
        }
        Command::Code { action } => match action {
            CodeAction::Build { code } => Ok(write_code(&code.build()?.code)),
            CodeAction::Info { code } => {
                let built = code.build()?;
                let c = &built.code;
                let mut r = Record::new();
                r.add("code", &built.description)
                    .add("field", c.field())
                    .add("n", c.n())
                    .add("dimension", c.dimension())
                    .add("servers", c.s())
                    .add("rate", c.rate());
                if let Some(d) = built.designed_distance {
                    r.add("designed_distance", d);
                }
                Ok(r.render(text))
            }
            CodeAction::Labelweight { code } => {
                let built = code.build()?;
                let w = built.code.min_labelweight()?;
                let mut r = Record::new();
                r.add("code", &built.description).add("servers", built.code.s()).add("labelweight", w);
                if built.code.labeling().is_identity() {
                    r.add("min_distance", w);
                }
                Ok(r.render(text))
            }
        },
        Command::Demo { code, scheme, trials, save_scheme } => {
            let built = code.build()?;
            let params = scheme.params(&built.code)?;
            let sch = synthesize_eval(&built.code, &params)?;
            if let Some(path) = save_scheme {
                fs::write(&path, write_scheme(&sch)).with_context(|| format!("writing {}", path.display()))?;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut correct = 0;
            for _ in 0..trials {
                let x = random_secrets(sch.field(), &params, &mut rng);
                if run_end_to_end(&sch, &x, rng.random())?.passed {
                    correct += 1;
                }
            }
            let mut r = Record::new();
            r.add("code", &built.description)
                .add("params", format!("s={} t={} d={} ell={} m={}", params.s, params.t, params.d, params.ell, params.m))
                .add("labelweight", labelweight_text(sch.labelweight))
                .add("rate", sch.rate()?)
                .add("result", format!("{correct}/{trials} correct"));
            let out = r.render(text);
            if correct != trials {
                return Err(VerificationFailed(out).into());
            }
            Ok(out)
        }
        Command::Simulate { code, scheme, shuffle, dump_transcript, replay: replay_path } => {
            let built = code.build()?;
            let params = scheme.params(&built.code)?;
            let sch = synthesize_eval(&built.code, &params)?;
            let mut r = Record::new();
            r.add("code", &built.description);
            if let Some(path) = replay_path {
                let dump = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                let frames = Transcript::parse_dump(&dump)?;
                let rep = replay(&sch, &frames)?;
                let mismatched: Vec<String> = rep.mismatched_servers.iter().map(u16::to_string).collect();
                r.add("frames", rep.frames)
                    .add("outputs", join_elements(&rep.outputs))
                    .add("mismatched_servers", if mismatched.is_empty() { "none".into() } else { mismatched.join(" ") })
                    .add("result_consistent", rep.result_consistent);
                let out = r.render(text);
                if !rep.consistent() {
                    return Err(VerificationFailed(out).into());
                }
                return Ok(out);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let x = random_secrets(sch.field(), &params, &mut rng);
            let schedule = if shuffle { Schedule::Shuffled(cli.seed) } else { Schedule::RoundRobin };
            let sim = simulate_with(&sch, &x, cli.seed, SimOptions { schedule, tamper: None })?;
            if let Some(path) = dump_transcript {
                fs::write(&path, sim.transcript.dump()).with_context(|| format!("writing {}", path.display()))?;
            }
            let expected = sch.expected_outputs(&x);
            let t = &sim.transcript;
            let wire: u64 = t.link_bytes.values().sum();
            r.add("outputs", join_elements(&sim.outputs))
                .add("expected", join_elements(&expected))
                .add("frames", t.frames.len())
                .add("wire_bytes", wire)
                .add("download_symbols", t.download_symbols)
                .add("download_bits", t.download_bits())
                .add("measured_rate", t.measured_rate(params.ell));
            let out = r.render(text);
            if sim.outputs != expected {
                return Err(VerificationFailed(out).into());
            }
            Ok(out)
        }
        Command::AuditPrivacy { s, t, q } => {
            let field = Field::of_order(q)?;
            let rep = privacy_audit(&field, s, t)?;
            let failures = rep.failures().count();
            let mut r = Record::new();
            r.add("s", s)
                .add("t", t)
                .add("q", q)
                .add("randomness_space", rep.randomness_space)
                .add("comparisons", rep.comparisons.len())
                .add("failures", failures)
                .add("private", rep.all_equal());
            let out = r.render(text);
            if !rep.all_equal() {
                return Err(VerificationFailed(out).into());
            }
            Ok(out)
        }
        Command::GvSim { q, w, s, delta_s, eps, trials } => {
            let cfg = GvConfig::new(q, w, s, delta_s, eps)?;
            let rep = gv_monte_carlo(&cfg, trials, cli.seed)?;
            let mut r = Record::new();
            r.add("n", cfg.n())
                .add("k", rep.k)
                .add("trials", rep.trials)
                .add("failures", rep.failures)
                .add("fraction", format!("{:.6}", rep.fraction()))
                .add("bound", format!("{:.6}", rep.bound))
                .add("threshold", format!("{:.6}", rep.threshold))
                .add("volume_bound_holds", rep.volume.holds())
                .add("passed", rep.passed());
            let out = r.render(text);
            if !rep.passed() {
                return Err(VerificationFailed(out).into());
            }
            Ok(out)
        }
    }
}

fn exit_status(err: &anyhow::Error) -> u8 {
    if err.is::<VerificationFailed>() {
        return 1;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Decode(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    let (output, status) = match run(cli) {
        Ok(out) => (out, 0),
        Err(e) => match e.downcast_ref::<VerificationFailed>() {
            Some(VerificationFailed(out)) => (out.clone(), 1),
            None => {
                eprintln!("error: {e:#}");
                return ExitCode::from(exit_status(&e));
            }
        },
    };
    let written = match &out_path {
        Some(path) => fs::write(path, &output).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{output}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if status == 1 {
        eprintln!("verification failed");
    }
    ExitCode::from(status)
}
