//! Phase-shift files, CSV/report emission, and the command-line surface.
//!
//! The phase file format is line oriented.  `#` starts a comment, the two
//! header lines `k = <real>` and `a = <real>` fix the wavenumber and the
//! cut-off radius, and every other non-empty line is one partial wave,
//! either `l delta` or `l delta_plus delta_minus`.  Spin-split rows are
//! combined on input with [`combine_spin_phases`]; a file must use one row
//! shape throughout.  Values are written in the shortest decimal form that
//! parses back to the identical number, so a write/parse round trip is
//! exact.
//!
//! Emitted tables (CSV and reports) use a fixed 12-significant-digit
//! scientific format and contain no timestamps, so identical inputs produce
//! byte-identical outputs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bound_states;
use crate::error::{Error, Result};
use crate::forward::{self, PhaseShiftSet, RadialPotential};
use crate::gl::{self, GlOptions, Reconstruction};
use crate::liouville::{PotentialCurve, TransformParams};
use crate::moments::{self, MultiBsOptions, SpectralExpansion};
use crate::scenarios;
use crate::spectral::MomentSet;
use crate::tuning;

/// Spin-averaged phase shift `[(l+1) d+ + l d-] / (2l+1)`, the combination
/// appropriate for weak spin-orbit coupling.
pub fn combine_spin_phases(l: u32, delta_plus: f64, delta_minus: f64) -> f64 {
    let lf = l as f64;
    ((lf + 1.0) * delta_plus + lf * delta_minus) / (2.0 * lf + 1.0)
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_real(tok: &str, line: usize) -> Result<f64> {
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(parse_err(line, format!("'{tok}' is not a finite real number"))),
    }
}

/// Read a phase file; see the module docs for the grammar.
pub fn parse_phase_file(path: &Path) -> Result<PhaseShiftSet> {
    let text = std::fs::read_to_string(path)?;
    parse_phase_text(&text)
}

/// Parse the phase file grammar from memory.
pub fn parse_phase_text(text: &str) -> Result<PhaseShiftSet> {
    let mut k: Option<f64> = None;
    let mut a: Option<f64> = None;
    let mut rows: Vec<(u32, f64)> = Vec::new();
    let mut split_rows: Option<bool> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some((name, value)) = body.split_once('=') {
            let name = name.trim();
            let slot = match name {
                "k" => &mut k,
                "a" => &mut a,
                _ => return Err(parse_err(line, format!("unknown header '{name}'"))),
            };
            if slot.is_some() {
                return Err(parse_err(line, format!("duplicate header '{name}'")));
            }
            *slot = Some(parse_real(value.trim(), line)?);
            continue;
        }
        let tok: Vec<&str> = body.split_whitespace().collect();
        let (l, delta, split) = match tok.len() {
            2 => {
                let l = parse_wave_index(tok[0], line)?;
                (l, parse_real(tok[1], line)?, false)
            }
            3 => {
                let l = parse_wave_index(tok[0], line)?;
                let plus = parse_real(tok[1], line)?;
                let minus = parse_real(tok[2], line)?;
                (l, combine_spin_phases(l, plus, minus), true)
            }
            n => {
                return Err(parse_err(
                    line,
                    format!("expected 'l delta' or 'l delta+ delta-', found {n} fields"),
                ))
            }
        };
        match split_rows {
            None => split_rows = Some(split),
            Some(s) if s != split => {
                return Err(parse_err(
                    line,
                    "file mixes two-column and three-column phase rows",
                ));
            }
            Some(_) => {}
        }
        if rows.iter().any(|&(seen, _)| seen == l) {
            return Err(parse_err(line, format!("duplicate partial wave l = {l}")));
        }
        rows.push((l, delta));
    }
    let k = k.ok_or_else(|| parse_err(last_line, "missing header 'k = <value>'"))?;
    let a = a.ok_or_else(|| parse_err(last_line, "missing header 'a = <value>'"))?;
    if rows.is_empty() {
        return Err(parse_err(last_line, "no phase-shift rows"));
    }
    rows.sort_by_key(|&(l, _)| l);
    for (want, &(l, _)) in rows.iter().enumerate() {
        if l as usize != want {
            return Err(parse_err(
                last_line,
                format!("partial waves must cover l = 0.. without gaps (missing l = {want})"),
            ));
        }
    }
    PhaseShiftSet::new(k, a, rows.into_iter().map(|(_, d)| d).collect())
}

fn parse_wave_index(tok: &str, line: usize) -> Result<u32> {
    tok.parse::<u32>()
        .map_err(|_| parse_err(line, format!("'{tok}' is not a partial-wave index")))
}

/// Render a phase set in the grammar [`parse_phase_text`] reads.
pub fn render_phase_file(set: &PhaseShiftSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k = {}", set.k);
    let _ = writeln!(out, "a = {}", set.a);
    for (l, d) in set.deltas.iter().enumerate() {
        let _ = writeln!(out, "{l} {d}");
    }
    out
}

pub fn write_phase_file(set: &PhaseShiftSet, path: &Path) -> Result<()> {
    std::fs::write(path, render_phase_file(set))?;
    Ok(())
}

/// Fixed 12-significant-digit form shared by every emitted table.
fn sig12(v: f64) -> String {
    format!("{v:.11e}")
}

/// Two-column CSV `r,q`.
pub fn render_potential_csv(curve: &PotentialCurve) -> String {
    let mut out = String::from("r,q\n");
    for (r, q) in curve.grid.iter().zip(&curve.values) {
        let _ = writeln!(out, "{},{}", sig12(*r), sig12(*q));
    }
    out
}

pub fn write_potential_csv(curve: &PotentialCurve, path: &Path) -> Result<()> {
    std::fs::write(path, render_potential_csv(curve))?;
    Ok(())
}

/// Deterministic line-oriented report: `[section]` headers and `key=value`
/// lines.
#[derive(Debug, Clone, Default)]
pub struct Report {
    text: String,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn section(&mut self, name: &str) {
        if !self.text.is_empty() {
            self.text.push('\n');
        }
        let _ = writeln!(self.text, "[{name}]");
    }

    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{key}={value}");
    }

    /// `key=value` with the shared numeric format.
    pub fn kv_num(&mut self, key: &str, v: f64) {
        self.kv(key, sig12(v));
    }

    pub fn render(&self) -> &str {
        &self.text
    }
}

/// Bound-term treatment of the moment solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    /// Pure lattice expansion, no bound term.
    Zero,
    /// One bound term, its rate fixed by the `F(0) = -h` closure.
    One,
    /// Several bound terms, rates refined iteratively.
    Multi,
}

impl SolveMode {
    fn name(self) -> &'static str {
        match self {
            SolveMode::Zero => "zero",
            SolveMode::One => "one",
            SolveMode::Multi => "multi",
        }
    }
}

/// Everything one inversion run needs besides the phase data.
#[derive(Debug, Clone)]
pub struct InversionConfig {
    /// Log-scale transform parameter, negative.
    pub c: f64,
    /// Boundary parameter of the auxiliary problem.
    pub h: f64,
    /// Use only the first `n` phases when set.
    pub n_phases: Option<usize>,
    pub mode: SolveMode,
    /// Bound-term count for [`SolveMode::Multi`].
    pub bs_count: usize,
    /// Starting positions `lambda_i < 0`: a pair of rate trials for `one`,
    /// the full list for `multi`.
    pub trial_lambdas: Option<Vec<f64>>,
    /// Place the `multi` starting positions by free-motion assessment.
    pub auto_assess: bool,
    /// Drop the constant lattice term (`zero` mode).
    pub drop_c0: bool,
    /// Reconstruction floor; `0.01 a` when unset.
    pub r_min: Option<f64>,
    /// Layer-equation grid step; `0.02 |c|` when unset.
    pub gl_step: Option<f64>,
    /// Lower end of the smoothness window `[r0, a]`.
    pub r0: f64,
}

impl Default for InversionConfig {
    fn default() -> Self {
        InversionConfig {
            c: -1.0,
            h: 0.0,
            n_phases: None,
            mode: SolveMode::One,
            bs_count: 2,
            trial_lambdas: None,
            auto_assess: false,
            drop_c0: false,
            r_min: None,
            gl_step: None,
            r0: 0.05,
        }
    }
}

/// Everything one inversion run produces.
#[derive(Debug, Clone)]
pub struct InversionOutcome {
    pub moments: MomentSet,
    pub expansion: SpectralExpansion,
    pub reconstruction: Reconstruction,
    /// Total variation on `[r0, a]`, or the reason it was unavailable.
    pub smoothness: std::result::Result<f64, String>,
}

/// Phase data in, reconstructed potential out.
pub fn run_inversion(set: &PhaseShiftSet, cfg: &InversionConfig) -> Result<InversionOutcome> {
    let mu = MomentSet::from_phases(set, cfg.c, cfg.h, cfg.n_phases)?;
    run_inversion_from_moments(mu, cfg)
}

/// As [`run_inversion`], for moments that are already available — e.g. from
/// the noise-free constant-well generator, whose extended precision matters
/// when a configuration leaves the bound-state rate barely identifiable
/// (`cfg.n_phases` has no effect here).
pub fn run_inversion_from_moments(
    mu: MomentSet,
    cfg: &InversionConfig,
) -> Result<InversionOutcome> {
    let expansion = solve_expansion(&mu, cfg)?;
    let reconstruction = reconstruct_with(&expansion, cfg)?;
    let smoothness =
        tuning::smoothness(&reconstruction.curve, cfg.r0).map_err(|e| e.to_string());
    Ok(InversionOutcome {
        moments: mu,
        expansion,
        reconstruction,
        smoothness,
    })
}

fn trial_rates(lambdas: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(lambdas.len());
    for &l in lambdas {
        if !(l < 0.0) || !l.is_finite() {
            return Err(Error::domain(format!(
                "trial positions must be negative, got {l}"
            )));
        }
        out.push((-l).sqrt());
    }
    Ok(out)
}

fn solve_expansion(mu: &MomentSet, cfg: &InversionConfig) -> Result<SpectralExpansion> {
    match cfg.mode {
        SolveMode::Zero => moments::solve_zero_bs(mu, cfg.drop_c0),
        SolveMode::One => {
            let trials = match &cfg.trial_lambdas {
                None => None,
                Some(ls) if ls.len() == 2 => {
                    let r = trial_rates(ls)?;
                    Some((r[0], r[1]))
                }
                Some(ls) => {
                    return Err(Error::domain(format!(
                        "one-bound-state mode takes exactly two trial positions, got {}",
                        ls.len()
                    )))
                }
            };
            moments::solve_one_bs(mu, trials)
        }
        SolveMode::Multi => {
            if cfg.bs_count < 2 {
                return Err(Error::domain(
                    "multi mode needs at least two bound terms; use mode=one otherwise",
                ));
            }
            let init = match &cfg.trial_lambdas {
                Some(ls) => {
                    if ls.len() != cfg.bs_count {
                        return Err(Error::domain(format!(
                            "multi mode with {} bound terms needs {} starting positions, got {}",
                            cfg.bs_count,
                            cfg.bs_count,
                            ls.len()
                        )));
                    }
                    ls.clone()
                }
                None if cfg.auto_assess => assessed_positions(mu, cfg.bs_count)?,
                None => {
                    return Err(Error::domain(
                        "multi mode needs starting positions (trial lambdas or auto-assessment)",
                    ))
                }
            };
            moments::solve_multi_bs(mu, &init, &MultiBsOptions::default())
        }
    }
}

/// The `bs_count` deepest free-motion bound states, as `multi` starting
/// positions.
fn assessed_positions(mu: &MomentSet, count: usize) -> Result<Vec<f64>> {
    let positions = bound_states::bound_state_positions(mu.k * mu.a, mu.c, mu.h)?;
    if positions.len() < count {
        return Err(Error::domain(format!(
            "free-motion assessment places {} bound state(s), {count} requested",
            positions.len()
        )));
    }
    Ok(positions[positions.len() - count..].to_vec())
}

fn reconstruct_with(exp: &SpectralExpansion, cfg: &InversionConfig) -> Result<Reconstruction> {
    let p = TransformParams::new(exp.a, exp.c, exp.k)?;
    let mut opts = GlOptions::for_transform(&p);
    if let Some(step) = cfg.gl_step {
        opts.step = step;
    }
    if let Some(r_min) = cfg.r_min {
        opts.r_min = r_min;
    }
    gl::reconstruct(exp, &opts)
}

/// Structured report for one solved inversion: configuration, moments,
/// bound terms, coefficients, and the consistency summary.
pub fn inversion_report(title: &str, cfg: &InversionConfig, out: &InversionOutcome) -> Report {
    let mut rep = Report::new();
    let mu = &out.moments;
    rep.section(title);
    rep.kv_num("k", mu.k);
    rep.kv_num("a", mu.a);
    rep.kv_num("c", mu.c);
    rep.kv_num("h", mu.h);
    rep.kv("mode", cfg.mode.name());
    rep.kv("n_moments", mu.len());
    if cfg.drop_c0 {
        rep.kv("drop_c0", "true");
    }

    rep.section(&format!("{title}.moments"));
    for (l, v) in mu.values().iter().enumerate() {
        rep.kv_num(&format!("mu_{l}"), *v);
    }

    let exp = &out.expansion;
    let betas = exp.betas();
    if !betas.is_empty() {
        rep.section(&format!("{title}.bound_states"));
        let lambdas = exp.lambdas();
        let weights = exp.bound_weights();
        for i in 0..betas.len() {
            rep.kv_num(&format!("sqrt_neg_lambda_{}", i + 1), betas[i]);
            rep.kv_num(&format!("lambda_{}", i + 1), lambdas[i]);
            rep.kv_num(&format!("weight_{}", i + 1), weights[i]);
        }
        if exp.spurious() {
            rep.kv("spurious", "true");
        }
    }

    rep.section(&format!("{title}.coefficients"));
    for (i, w) in exp.bound_half_weights().iter().enumerate() {
        rep.kv_num(&format!("c_-{}", i + 1), *w);
    }
    for (j, v) in exp.coefficients().iter().enumerate() {
        rep.kv_num(&format!("c_{}", exp.n_offset() + j), *v);
    }

    rep.section(&format!("{title}.summary"));
    rep.kv_num("f0_plus_h", exp.f0_residual());
    match &out.smoothness {
        Ok(s) => rep.kv_num("s", *s),
        Err(why) => rep.kv("s_error", why),
    }
    rep.kv_num("q_at_a", out.reconstruction.q_at_support());
    rep.kv_num("kernel_at_origin", out.reconstruction.boundary_kernel);
    rep
}

fn parse_float_list(flag: &str, text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            _ => {
                return Err(Error::domain(format!(
                    "{flag} expects comma-separated reals, '{tok}' is not one"
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Parser)]
#[command(
    name = "invscat",
    version,
    about = "Fixed-energy inverse scattering: phase shifts in, cut-off potential out"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the forward problem for a named well and emit a phase file.
    Forward(ForwardArgs),
    /// Reconstruct q(r) from a phase file; writes a CSV curve and a report.
    Invert(InvertArgs),
    /// Count and place the auxiliary bound states for a free-motion cut-off.
    Assess(AssessArgs),
    /// Scan a (c, h) grid for the smoothest reconstruction.
    Tune(TuneArgs),
    /// Run a named pinned configuration end to end.
    Reproduce(ReproduceArgs),
}

#[derive(clap::Args)]
struct ForwardArgs {
    /// Well shape.
    #[arg(long, value_enum)]
    well: WellKind,
    /// Plateau value (flat), prefactor (gauss), or depth (ws).
    #[arg(long, default_value_t = 1.2, allow_negative_numbers = true)]
    depth: f64,
    /// Gaussian falloff exponent in exp(-alpha r^2).
    #[arg(long, default_value_t = 5.0)]
    alpha: f64,
    /// Half-depth radius (ws).
    #[arg(long, default_value_t = 0.5)]
    radius: f64,
    /// Surface diffuseness (ws).
    #[arg(long, default_value_t = 0.1)]
    diffuseness: f64,
    /// Cut-off radius.
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    /// Wavenumber.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Number of partial waves l = 0..n-1.
    #[arg(long, default_value_t = 11)]
    n_phases: usize,
    /// Accuracy target of the radial integrator.
    #[arg(long, default_value_t = 1e-10)]
    ode_tol: f64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WellKind {
    Flat,
    Gauss,
    Ws,
}

#[derive(clap::Args)]
struct InvertArgs {
    /// Phase-shift file.
    phases: PathBuf,
    /// Log-scale transform parameter (negative).
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    c: f64,
    /// Boundary parameter of the auxiliary problem.
    #[arg(long = "h", default_value_t = 0.0, allow_negative_numbers = true)]
    h: f64,
    /// Use only the first n phases.
    #[arg(long)]
    n_phases: Option<usize>,
    /// Bound-term treatment.
    #[arg(long, value_enum, default_value_t = SolveMode::One)]
    mode: SolveMode,
    /// Bound-term count for --mode multi.
    #[arg(long, default_value_t = 2)]
    bs_count: usize,
    /// Comma-separated starting positions lambda_i < 0.
    #[arg(long, allow_hyphen_values = true)]
    trial_lambdas: Option<String>,
    /// Place multi-mode starting positions by free-motion assessment.
    #[arg(long)]
    auto_assess: bool,
    /// Drop the constant lattice term (zero mode).
    #[arg(long)]
    drop_c0: bool,
    /// Reconstruction floor (default 0.01 a).
    #[arg(long)]
    r_min: Option<f64>,
    /// Layer grid step (default 0.02 |c|).
    #[arg(long)]
    gl_step: Option<f64>,
    /// Smoothness window starts here.
    #[arg(long, default_value_t = 0.05)]
    r0: f64,
    /// Reconstructed curve (CSV r,q).
    #[arg(long, default_value = "potential.csv")]
    csv: PathBuf,
    /// Structured report file.
    #[arg(long, default_value = "report.txt")]
    report: PathBuf,
}

#[derive(clap::Args)]
struct AssessArgs {
    /// Product of the free-motion wavenumber and the cut-off radius.
    #[arg(long)]
    kappa_a: f64,
    /// Log-scale transform parameter (negative).
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    c: f64,
    /// Boundary parameter of the auxiliary problem.
    #[arg(long = "h", default_value_t = 0.0, allow_negative_numbers = true)]
    h: f64,
}

#[derive(clap::Args)]
struct TuneArgs {
    /// Phase-shift file.
    phases: PathBuf,
    /// Comma-separated scale values, each negative.
    #[arg(long, allow_hyphen_values = true)]
    grid_c: String,
    /// Comma-separated boundary values.
    #[arg(long, allow_hyphen_values = true)]
    grid_h: String,
    /// Bound-term treatment per cell (zero or one).
    #[arg(long, value_enum, default_value_t = SolveMode::Zero)]
    mode: SolveMode,
    /// Use only the first n phases.
    #[arg(long)]
    n_phases: Option<usize>,
    /// Smoothness window starts here.
    #[arg(long, default_value_t = 0.05)]
    r0: f64,
    /// Reconstruction floor (default 0.01 a).
    #[arg(long)]
    r_min: Option<f64>,
    /// Layer grid step (default 0.02 |c|).
    #[arg(long)]
    gl_step: Option<f64>,
    /// Worker threads for the grid.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(clap::Args)]
struct ReproduceArgs {
    /// Scenario: table2, fig2, fig4, gauss, ws, e-ar, n-alpha.
    name: String,
    /// Write each scenario curve as CSV into this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

/// Command-line entry point; returns the process exit code.
pub fn run_cli(args: Vec<String>) -> i32 {
    let argv = std::iter::once("invscat".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here and are not failures
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Forward(args) => cmd_forward(args),
        Cmd::Invert(args) => cmd_invert(args),
        Cmd::Assess(args) => cmd_assess(args),
        Cmd::Tune(args) => cmd_tune(args),
        Cmd::Reproduce(args) => cmd_reproduce(args),
    }
}

fn cmd_forward(args: ForwardArgs) -> Result<()> {
    let pot = match args.well {
        WellKind::Flat => RadialPotential::constant(args.depth, args.a)?,
        WellKind::Gauss => RadialPotential::gauss(args.depth, args.alpha, args.a)?,
        WellKind::Ws => {
            RadialPotential::woods_saxon(args.depth, args.radius, args.diffuseness, args.a)?
        }
    };
    if args.n_phases == 0 {
        return Err(Error::domain("--n-phases must be at least 1"));
    }
    let l_max = u32::try_from(args.n_phases - 1)
        .map_err(|_| Error::domain("--n-phases is out of range"))?;
    let set = forward::solve_phase_shifts(&pot, args.k, l_max, args.ode_tol)?;
    let text = render_phase_file(&set);
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_invert(args: InvertArgs) -> Result<()> {
    let set = parse_phase_file(&args.phases)?;
    let trial_lambdas = match &args.trial_lambdas {
        Some(text) => Some(parse_float_list("--trial-lambdas", text)?),
        None => None,
    };
    let cfg = InversionConfig {
        c: args.c,
        h: args.h,
        n_phases: args.n_phases,
        mode: args.mode,
        bs_count: args.bs_count,
        trial_lambdas,
        auto_assess: args.auto_assess,
        drop_c0: args.drop_c0,
        r_min: args.r_min,
        gl_step: args.gl_step,
        r0: args.r0,
    };
    let out = run_inversion(&set, &cfg)?;
    let rep = inversion_report("inversion", &cfg, &out);
    std::fs::write(&args.report, rep.render())?;
    write_potential_csv(&out.reconstruction.curve, &args.csv)?;
    print!("{}", rep.render());
    Ok(())
}

fn cmd_assess(args: AssessArgs) -> Result<()> {
    let positions = bound_states::bound_state_positions(args.kappa_a, args.c, args.h)?;
    let mut rep = Report::new();
    rep.section("assessment");
    rep.kv_num("kappa_a", args.kappa_a);
    rep.kv_num("c", args.c);
    rep.kv_num("h", args.h);
    rep.kv("count", positions.len());
    for (i, lam) in positions.iter().enumerate() {
        rep.kv_num(&format!("lambda_{}", i + 1), *lam);
        match bound_states::step_height(args.kappa_a, args.c, args.h, *lam) {
            Ok(b) => rep.kv_num(&format!("weight_{}", i + 1), b),
            Err(why) => rep.kv(&format!("weight_{}_error", i + 1), why),
        }
    }
    let window = match bound_states::reducibility_window(args.kappa_a)? {
        bound_states::Reducibility::AlreadyOne => "already-at-most-one",
        bound_states::Reducibility::ReducibleToOne => "reducible-to-one",
        bound_states::Reducibility::OutsideLemma => "outside-reduction-window",
    };
    rep.kv("reducibility", window);
    if bound_states::near_sector_boundary(args.kappa_a, 1e-3)? {
        rep.kv("near_transition", "true");
    }
    print!("{}", rep.render());
    Ok(())
}

fn cmd_tune(args: TuneArgs) -> Result<()> {
    if args.mode == SolveMode::Multi {
        return Err(Error::domain(
            "tune supports --mode zero or one; multi needs per-cell starting positions",
        ));
    }
    let set = parse_phase_file(&args.phases)?;
    let cs = parse_float_list("--grid-c", &args.grid_c)?;
    let hs = parse_float_list("--grid-h", &args.grid_h)?;
    let pipeline = |c: f64, h: f64| -> Result<PotentialCurve> {
        let cfg = InversionConfig {
            c,
            h,
            n_phases: args.n_phases,
            mode: args.mode,
            r_min: args.r_min,
            gl_step: args.gl_step,
            r0: args.r0,
            ..InversionConfig::default()
        };
        Ok(run_inversion(&set, &cfg)?.reconstruction.curve)
    };
    let table = tuning::grid_search(pipeline, &cs, &hs, args.r0, args.jobs)?;
    let mut rep = Report::new();
    rep.section("tune");
    rep.kv("n_cells", table.cells.len());
    rep.section("tune.cells");
    for (i, cell) in table.cells.iter().enumerate() {
        let i = i + 1;
        rep.kv_num(&format!("c_{i}"), cell.c);
        rep.kv_num(&format!("h_{i}"), cell.h);
        match &cell.smoothness {
            Ok(s) => rep.kv_num(&format!("s_{i}"), *s),
            Err(why) => rep.kv(&format!("error_{i}"), why),
        }
    }
    rep.section("tune.best");
    match table.best {
        Some((c, h, s)) => {
            rep.kv_num("c", c);
            rep.kv_num("h", h);
            rep.kv_num("s", s);
        }
        None => rep.kv("best", "none"),
    }
    print!("{}", rep.render());
    Ok(())
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<()> {
    let out = scenarios::run(&args.name)?;
    for rep in &out.reports {
        print!("{}", rep.render());
    }
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir)?;
        for (stem, curve) in &out.curves {
            write_potential_csv(curve, &dir.join(format!("{stem}.csv")))?;
        }
    }
    Ok(())
}
