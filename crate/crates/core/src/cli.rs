//! `catlower` command-line front end.
//!
//! Every command produces a [`RunReport`]. With `--json` the report is the
//! only thing written to stdout; otherwise a short text summary is printed.
//! The process exits with status 1 whenever `ok` is false, including on
//! input errors.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::gadgets::{
    catalyst_flip_check, cs_gadget, rz_gadget, s_gadget, s_via_prep, verify_one_prep,
};
use crate::ir::{parse_circuit, serialize_circuit, Circuit, GateSetProfile, GateTag};
use crate::lemmas::check_lemmas;
use crate::rewrite::{
    count_report, lower, verify_lowering, MAX_VERIFY_DATA_QUBITS, MAX_VERIFY_TOTAL_QUBITS,
};
use crate::sim::{parse_product_spec, run, DenseUnitary, SimError, Statevector};
use crate::synth::{haar_unitary, parse_matrix_file, synthesize, SynthError, SYNTH_TOLERANCE};

#[derive(Debug, Parser)]
#[command(
    name = "catlower",
    version,
    about = "Catalytic gate-set lowering and verification"
)]
pub struct Cli {
    /// Print the report as a single JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every gadget against its claimed induced operator.
    Verify {
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(1..))]
        theta_steps: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Lower a circuit file onto a target gate set.
    Lower {
        file: PathBuf,
        #[arg(long, default_value = "REAL_O2_CCZ")]
        target: GateSetProfile,
        /// Write the lowered circuit here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize a unitary over {H, X, Z, RY, CCZ}.
    #[command(group(ArgGroup::new("source").required(true).args(["seed", "matrix"])))]
    Synthesize {
        /// Number of qubits; required with --seed.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        m: Option<u8>,
        /// Haar-random target from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Target read from a matrix file.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a circuit prepares |1> on one wire and leaves the rest alone.
    CheckPrep {
        file: PathBuf,
        #[arg(long)]
        target_qubit: usize,
    },
    /// Gate counts and profile membership.
    Counts { file: PathBuf },
    /// Run a circuit on a product input state.
    Simulate {
        file: PathBuf,
        /// Comma-separated per-qubit states from {0, 1, +, -, +i, -i}.
        #[arg(long)]
        input: String,
        /// Hide amplitudes smaller than this in magnitude.
        #[arg(long, default_value_t = 1e-3)]
        cutoff: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Lower { .. } => "lower",
            Command::Synthesize { .. } => "synthesize",
            Command::CheckPrep { .. } => "check-prep",
            Command::Counts { .. } => "counts",
            Command::Simulate { .. } => "simulate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub ok: bool,
    pub metrics: BTreeMap<String, f64>,
    pub artifacts: Vec<String>,
    pub details: Value,
    #[serde(skip)]
    text: String,
}

impl RunReport {
    fn new(command: &str) -> RunReport {
        RunReport {
            command: command.to_string(),
            ok: true,
            metrics: BTreeMap::new(),
            artifacts: Vec::new(),
            details: Value::Object(Default::default()),
            text: String::new(),
        }
    }

    fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    fn detail(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.details {
            map.insert(key.to_string(), value);
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn failure(command: &str, err: &anyhow::Error) -> RunReport {
        let mut r = RunReport::new(command);
        r.ok = false;
        r.detail("error", json!(format!("{err:#}")));
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut s = self.text.clone();
        for (k, v) in &self.metrics {
            if v.fract() == 0.0 && v.abs() < 1e15 {
                let _ = writeln!(s, "{k}: {v}");
            } else {
                let _ = writeln!(s, "{k}: {v:e}");
            }
        }
        for a in &self.artifacts {
            let _ = writeln!(s, "wrote {a}");
        }
        let _ = writeln!(
            s,
            "{}: {}",
            self.command,
            if self.ok { "ok" } else { "FAILED" }
        );
        s
    }
}

/// Runs a parsed command line, returning the report and exit code.
pub fn execute(cli: &Cli) -> (RunReport, i32) {
    let name = cli.command.name();
    let report = dispatch(&cli.command).unwrap_or_else(|e| RunReport::failure(name, &e));
    let code = if report.ok { 0 } else { 1 };
    (report, code)
}

/// Parses `args`, runs the command and prints the result.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (report, code) = execute(&cli);
    let body = if cli.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    // A closed pipe (e.g. `| head`) is not worth a panic.
    let _ = std::io::stdout().write_all(body.as_bytes());
    if let Some(e) = report.details.get("error") {
        eprintln!(
            "catlower {}: {}",
            report.command,
            e.as_str().unwrap_or_default()
        );
    }
    code
}

fn dispatch(cmd: &Command) -> Result<RunReport> {
    match cmd {
        Command::Verify { theta_steps, tol } => cmd_verify(*theta_steps, *tol),
        Command::Lower { file, target, out } => cmd_lower(file, *target, out.as_deref()),
        Command::Synthesize {
            m,
            seed,
            matrix,
            out,
        } => cmd_synthesize(m.map(usize::from), *seed, matrix.as_deref(), out.as_deref()),
        Command::CheckPrep { file, target_qubit } => cmd_check_prep(file, *target_qubit),
        Command::Counts { file } => cmd_counts(file),
        Command::Simulate {
            file,
            input,
            cutoff,
        } => cmd_simulate(file, input, *cutoff),
    }
}

fn read_circuit(path: &Path) -> Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_circuit(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_circuit(path: &Path, c: &Circuit) -> Result<String> {
    let mut text = serialize_circuit(c);
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path.display().to_string())
}

fn counts_json(c: &Circuit) -> Value {
    serde_json::to_value(c.gate_counts()).expect("counts serialize")
}

pub fn cmd_verify(theta_steps: u32, tol: f64) -> Result<RunReport> {
    let mut r = RunReport::new("verify");
    let mut max_rz: f64 = 0.0;
    let mut max_residual: f64 = 0.0;
    let mut min_fidelity: f64 = 1.0;
    for k in 0..theta_steps {
        let theta = TAU * f64::from(k) / f64::from(theta_steps);
        let c = rz_gadget(theta).check()?;
        max_rz = max_rz.max(c.induced_error).max(c.output_error);
        max_residual = max_residual.max(c.residual_norm);
        min_fidelity = min_fidelity.min(c.min_catalyst_fidelity);
    }
    let s = s_gadget().check()?;
    let cs = cs_gadget().check()?;
    let flip = catalyst_flip_check();
    let s_err = s.induced_error.max(s.output_error);
    let cs_err = cs.induced_error.max(cs.output_error);
    let flip_err = (flip.overlap - 1.0).abs();
    max_residual = max_residual.max(s.residual_norm).max(cs.residual_norm);
    min_fidelity = min_fidelity
        .min(s.min_catalyst_fidelity)
        .min(cs.min_catalyst_fidelity);

    let lemma_err = check_lemmas().iter().map(|l| l.error).fold(0.0, f64::max);

    r.metric("max_rz_error", max_rz);
    r.metric("max_lemma_error", lemma_err);
    r.metric("s_gadget_error", s_err);
    r.metric("cs_gadget_error", cs_err);
    r.metric("catalyst_flip_error", flip_err);
    r.metric("catalyst_flip_phase", flip.phase);
    r.metric("max_residual_norm", max_residual);
    r.metric("min_catalyst_fidelity", min_fidelity);
    r.detail("theta_steps", json!(theta_steps));
    r.detail("tol", json!(tol));
    r.ok = [
        max_rz,
        lemma_err,
        s_err,
        cs_err,
        flip_err,
        max_residual,
        1.0 - min_fidelity,
    ]
    .iter()
    .all(|&e| e <= tol);
    r.line(format!(
        "checked {theta_steps} rz angles, S, CS and the catalyst flip at tol {tol:e}"
    ));
    Ok(r)
}

pub fn cmd_lower(file: &Path, target: GateSetProfile, out: Option<&Path>) -> Result<RunReport> {
    let mut r = RunReport::new("lower");
    let source = read_circuit(file)?;
    let lc = lower(&source, target)?;
    let report = count_report(&lc);

    r.detail("target", json!(target.name()));
    r.detail("count_report", serde_json::to_value(&report)?);
    r.metric("ccz_count", lc.counts[GateTag::Ccz] as f64);
    r.metric("gate_count", lc.counts.total() as f64);
    r.metric("total_qubits", lc.circuit.num_qubits() as f64);
    if let Some(path) = out {
        r.artifacts.push(write_circuit(path, &lc.circuit)?);
    }

    let data = source.num_qubits();
    let total = lc.circuit.num_qubits();
    if data <= MAX_VERIFY_DATA_QUBITS && total <= MAX_VERIFY_TOTAL_QUBITS {
        let check = verify_lowering(&source, &lc)?;
        r.metric("distance", check.distance);
        r.metric("catalyst_deficit", check.catalyst_deficit);
        r.detail(
            "verification",
            json!(if check.ok { "passed" } else { "failed" }),
        );
        r.ok = check.ok;
    } else {
        r.detail("verification", json!("skipped"));
        r.line(format!(
            "verification skipped: {data} data / {total} total qubits exceeds {MAX_VERIFY_DATA_QUBITS} / {MAX_VERIFY_TOTAL_QUBITS}"
        ));
    }
    r.line(format!(
        "lowered {} gate(s) to {} gate(s) for {target}",
        source.len(),
        lc.circuit.len()
    ));
    r.line(report.to_json());
    Ok(r)
}

fn load_matrix(path: &Path) -> Result<DenseUnitary> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m = parse_matrix_file(&text)?;
    match DenseUnitary::new(m) {
        Ok(u) => Ok(u),
        Err(SimError::NotUnitary(e)) => Err(SynthError::NotUnitary(e).into()),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_synthesize(
    m: Option<usize>,
    seed: Option<u64>,
    matrix: Option<&Path>,
    out: Option<&Path>,
) -> Result<RunReport> {
    let mut r = RunReport::new("synthesize");
    let u = match (seed, matrix) {
        (Some(seed), None) => {
            let Some(m) = m else {
                bail!("--seed needs --m")
            };
            r.detail("seed", json!(seed));
            haar_unitary(m, seed)
        }
        (None, Some(path)) => {
            let u = load_matrix(path)?;
            if let Some(m) = m {
                if m != u.num_qubits() {
                    bail!("--m {m} does not match a {}-qubit matrix", u.num_qubits());
                }
            }
            u
        }
        _ => bail!("give exactly one of --seed and --matrix"),
    };
    let res = synthesize(&u)?;
    let lc = &res.lowered;

    r.metric("distance", res.distance);
    r.metric("catalyst_deficit", res.catalyst_deficit);
    r.metric("ccz_count", lc.counts[GateTag::Ccz] as f64);
    r.metric(
        "cz_count_decomposed",
        res.decomposed.gate_counts()[GateTag::Cz] as f64,
    );
    r.metric("gate_count", lc.counts.total() as f64);
    r.detail("m", json!(u.num_qubits()));
    r.detail("catalyst", json!(lc.catalyst_qubit));
    r.detail(
        "ancilla",
        json!(lc.ancilla_qubits.iter().map(|a| a.0).collect::<Vec<_>>()),
    );
    r.detail("counts", counts_json(&lc.circuit));
    r.detail("circuit", json!(serialize_circuit(&lc.circuit)));
    if let Some(path) = out {
        r.artifacts.push(write_circuit(path, &lc.circuit)?);
    }
    r.ok = res.distance <= SYNTH_TOLERANCE;
    r.line(serialize_circuit(&lc.circuit));
    Ok(r)
}

pub fn cmd_check_prep(file: &Path, target_qubit: usize) -> Result<RunReport> {
    let mut r = RunReport::new("check-prep");
    let prep = read_circuit(file)?;
    let check = verify_one_prep(&prep, target_qubit)?;
    r.metric("max_error", check.max_error);
    r.metric("phase", check.phase);
    r.metric("ccz_count", check.ccz_count as f64);
    r.detail("passes", json!(check.passes));
    r.detail("gate_set_ok", json!(check.gate_set_ok));
    if check.passes {
        let gadget = s_via_prep(&prep, target_qubit)?;
        let g = gadget.check()?;
        r.metric(
            "s_construction_ccz",
            gadget.circuit.gate_counts()[GateTag::Ccz] as f64,
        );
        r.metric("s_construction_error", g.induced_error.max(g.output_error));
    }
    r.ok = check.passes;
    r.line(format!(
        "prep on qubit {target_qubit}: passes = {}, gate set {{H, CCZ}} = {}",
        check.passes, check.gate_set_ok
    ));
    Ok(r)
}

pub fn cmd_counts(file: &Path) -> Result<RunReport> {
    let mut r = RunReport::new("counts");
    let c = read_circuit(file)?;
    let counts = c.gate_counts();
    for (tag, n) in counts.iter() {
        r.metric(&format!("count_{}", tag.name()), n as f64);
    }
    r.metric("total", counts.total() as f64);
    let mut members = serde_json::Map::new();
    for p in [
        GateSetProfile::Hccz,
        GateSetProfile::Hcs,
        GateSetProfile::RealO2Ccz,
    ] {
        let ok = c.check_membership(p).is_empty();
        members.insert(p.name().to_string(), json!(ok));
        r.line(format!(
            "{p}: {}",
            if ok { "member" } else { "not a member" }
        ));
    }
    r.detail("counts", counts_json(&c));
    r.detail("membership", Value::Object(members));
    let tally: Vec<String> = counts
        .nonzero()
        .map(|(t, n)| format!("{}={n}", t.name()))
        .collect();
    r.line(tally.join(" "));
    Ok(r)
}

pub fn cmd_simulate(file: &Path, input: &str, cutoff: f64) -> Result<RunReport> {
    let mut r = RunReport::new("simulate");
    let c = read_circuit(file)?;
    let states = parse_product_spec(input)?;
    if states.len() != c.num_qubits() {
        bail!(
            "input has {} state(s) but the circuit has {} qubit(s)",
            states.len(),
            c.num_qubits()
        );
    }
    let out = run(&c, &Statevector::product(&states))?;
    let n = c.num_qubits();
    let mut shown = Vec::new();
    for (i, a) in out.amplitudes().iter().enumerate() {
        if a.norm() < cutoff {
            continue;
        }
        let basis = format!("{i:0n$b}");
        r.line(format!("|{basis}> {:+.12} {:+.12}i", a.re, a.im));
        shown.push(json!({"index": i, "basis": basis, "re": a.re, "im": a.im}));
    }
    r.metric("norm", out.norm());
    r.detail("amplitudes", Value::Array(shown));
    r.detail("cutoff", json!(cutoff));
    Ok(r)
}
