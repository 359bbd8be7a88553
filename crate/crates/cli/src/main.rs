//! Command-line front end: spectra, optimisation, balanced configurations,
//! drum sweeps, summary tables and mesh export.
//!
//! Exit codes: 0 success, 2 input error, 3 numeric degeneracy,
//! 4 nonconvergence diagnostic.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use steklov::catenoid::{configuration_area, derive_cylinder_data, find_symmetric_balanced};
use steklov::cylinder::{transmission_spectrum, CircleConfig};
use steklov::drum::{drum_profile, drum_tau1, tau0_plus, tau_n_pair, DrumParams};
use steklov::mesh::mesh;
use steklov::optimizer::{criticality_report, maximize_full};
use steklov::Error as CoreError;

#[derive(Parser)]
#[command(name = "steklov", version, about = "Steklov transmission eigenvalues of weighted circle configurations, balanced catenoid configurations, and eigenvalue maximisation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Obj,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sweep {
    /// Critical-drum family over the parameter a: columns a, t1, t2,
    /// alpha, T, F, tau1_bar.
    Profile,
    /// Eigenvalue branches over the cylinder length T at fixed density
    /// ratio alpha: columns T, tau0_plus, tau1_minus, tau1.
    Tau,
}

#[derive(Subcommand)]
enum Command {
    /// Transmission spectrum of a configuration file.
    Spectrum {
        /// JSON file {"spacings": [...], "weights": [...]}.
        #[arg(long)]
        config: PathBuf,
        /// Guaranteed number of smallest eigenvalues.
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Relative cluster tolerance for the tau_1 multiplicity.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximise the normalized first eigenvalue over N-circle
    /// configurations.
    Optimize {
        #[arg(long)]
        n: usize,
        /// Random multistart seeds on top of the geometry-derived and
        /// uniform seeds.
        #[arg(long, default_value_t = 8)]
        seeds: usize,
        /// RNG seed recorded in the output.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to reflection-symmetric configurations (default: on
        /// for N >= 3).
        #[arg(long, value_enum)]
        symmetric: Option<OnOff>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetric balanced configuration of order N as JSON.
    Balanced {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV sweeps of the two-circle drum family.
    Drum {
        #[arg(long, value_enum, default_value = "profile")]
        sweep: Sweep,
        /// Density ratio f(0)/f(T) for the tau sweep.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = -2.0)]
        from: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
        to: f64,
        #[arg(long, default_value_t = 81)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summary table N, T1(N), T1(N)/4pi, multiplicity, Area(C(N)) from
    /// both the optimizer and the geometry pipeline.
    Table {
        /// Largest order N to include.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triangulated balanced configuration as an ASCII OBJ file.
    Mesh {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        segments: usize,
        #[arg(long, default_value_t = 64)]
        rings: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// 12 significant digits, locale-free.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.11e}")
}

fn exit_code(err: &CoreError) -> i32 {
    match err {
        CoreError::InvalidConfig(_) | CoreError::DomainError(_) => 2,
        CoreError::SingularMass { .. }
        | CoreError::AllZero
        | CoreError::Tangent
        | CoreError::NoIntersection
        | CoreError::NegativeDiscriminant(..) => 3,
        CoreError::NoSignChange { .. }
        | CoreError::NoConvergence(_)
        | CoreError::EigenNoConvergence(_)
        | CoreError::ModeScanCap { .. }
        | CoreError::IterationCap(_)
        | CoreError::BracketNotFound { .. } => 4,
    }
}

fn fail(code: i32, msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(code)
}

fn write_output(out: Option<&PathBuf>, text: &str) {
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                fail(2, format!("cannot write {}: {e}", path.display()));
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                std::process::exit(2);
            }
        }
    }
}

fn core<T>(result: Result<T, CoreError>) -> T {
    match result {
        Ok(v) => v,
        Err(e) => fail(exit_code(&e), e),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn main() {
    match Cli::parse().command {
        Command::Spectrum { config, kmax, tol, format, out } => {
            cmd_spectrum(&config, kmax, tol, format, out.as_ref())
        }
        Command::Optimize { n, seeds, seed, symmetric, out } => {
            cmd_optimize(n, seeds, seed, symmetric, out.as_ref())
        }
        Command::Balanced { n, out } => cmd_balanced(n, out.as_ref()),
        Command::Drum { sweep, alpha, from, to, steps, out } => {
            cmd_drum(sweep, alpha, from, to, steps, out.as_ref())
        }
        Command::Table { n, seeds, seed, out } => cmd_table(n, seeds, seed, out.as_ref()),
        Command::Mesh { n, segments, rings, out } => cmd_mesh(n, segments, rings, out.as_ref()),
    }
}

fn load_config(path: &PathBuf) -> CircleConfig {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => fail(2, format!("cannot read {}: {e}", path.display())),
    };
    match serde_json::from_str::<CircleConfig>(&text) {
        Ok(c) => c,
        Err(e) => fail(2, format!("invalid configuration {}: {e}", path.display())),
    }
}

fn cmd_spectrum(path: &PathBuf, kmax: usize, tol: f64, format: Format, out: Option<&PathBuf>) {
    if kmax < 1 {
        fail(2, "--kmax must be at least 1");
    }
    let config = load_config(path);
    let reduced = core(steklov::cylinder::reduce_zero_weights(&config));
    let spectrum = core(transmission_spectrum(&reduced, kmax, tol));
    let text = match format {
        Format::Json => to_json(&spectrum),
        Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "# tau1={}", sig12(spectrum.tau1));
            let _ = writeln!(s, "# tau1_bar={}", sig12(spectrum.tau1_bar));
            let _ = writeln!(s, "# multiplicity={}", spectrum.multiplicity);
            let _ = writeln!(s, "tau,mode,multiplicity");
            for e in &spectrum.entries {
                let _ = writeln!(s, "{},{},{}", sig12(e.tau), e.mode, e.angular_multiplicity);
            }
            s
        }
        Format::Obj => fail(2, "--format obj is only valid for mesh"),
    };
    write_output(out, &text);
}

#[derive(Serialize)]
struct OptimizeOut<'a> {
    seed: u64,
    config: &'a CircleConfig,
    value: f64,
    value_over_4pi: f64,
    multiplicity: usize,
    seeds_used: usize,
}

fn cmd_optimize(n: usize, seeds: usize, seed: u64, symmetric: Option<OnOff>, out: Option<&PathBuf>) {
    if n < 1 {
        fail(2, "--n must be at least 1");
    }
    let symmetric = match symmetric {
        Some(OnOff::On) => true,
        Some(OnOff::Off) => false,
        None => n >= 3,
    };
    let result = core(maximize_full(n, seeds, symmetric, seed));
    let text = to_json(&OptimizeOut {
        seed,
        config: &result.config,
        value: result.value,
        value_over_4pi: result.value / (4.0 * std::f64::consts::PI),
        multiplicity: result.multiplicity,
        seeds_used: result.seeds_used,
    });
    write_output(out, &text);
}

#[derive(Serialize)]
struct CatenaryOut {
    a: f64,
    b: f64,
    t_range: (f64, f64),
}

#[derive(Serialize)]
struct DerivedOut {
    spacings: Vec<f64>,
    weights: Vec<f64>,
    mass: f64,
}

#[derive(Serialize)]
struct BalancedOut {
    order: usize,
    latitudes: Vec<f64>,
    contact_angles: Vec<f64>,
    catenaries: Vec<CatenaryOut>,
    area: f64,
    derived: DerivedOut,
}

fn cmd_balanced(n: usize, out: Option<&PathBuf>) {
    if n < 1 {
        fail(2, "--n must be at least 1");
    }
    let cfg = core(find_symmetric_balanced(n));
    let derived = core(derive_cylinder_data(&cfg));
    let text = to_json(&BalancedOut {
        order: cfg.order(),
        latitudes: cfg.latitudes.clone(),
        contact_angles: cfg.contact_angles.clone(),
        catenaries: cfg
            .pieces
            .iter()
            .map(|p| CatenaryOut { a: p.catenary.a, b: p.catenary.b, t_range: p.t_range })
            .collect(),
        area: configuration_area(&cfg),
        derived: DerivedOut {
            spacings: derived.config.spacings().to_vec(),
            weights: derived.config.weights().to_vec(),
            mass: derived.total_mass,
        },
    });
    write_output(out, &text);
}

fn cmd_drum(sweep: Sweep, alpha: f64, from: f64, to: f64, steps: usize, out: Option<&PathBuf>) {
    if steps < 2 || !(from < to) {
        fail(2, "sweep needs --from < --to and --steps >= 2");
    }
    let mut s = String::new();
    match sweep {
        Sweep::Profile => {
            let _ = writeln!(s, "a,t1,t2,alpha,T,F,tau1_bar");
            for i in 0..steps {
                let a = from + (to - from) * i as f64 / (steps - 1) as f64;
                let p = drum_profile(a);
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    sig12(p.a),
                    sig12(p.t1),
                    sig12(p.t2),
                    sig12(p.alpha),
                    sig12(p.t),
                    sig12(p.f),
                    sig12(p.tau1_bar)
                );
            }
        }
        Sweep::Tau => {
            if !(alpha > 0.0) {
                fail(2, "--alpha must be positive");
            }
            if !(from > 0.0) {
                fail(2, "the tau sweep needs --from > 0 (cylinder length)");
            }
            let _ = writeln!(s, "# alpha={}", sig12(alpha));
            let _ = writeln!(s, "T,tau0_plus,tau1_minus,tau1");
            for i in 0..steps {
                let t = from + (to - from) * i as f64 / (steps - 1) as f64;
                let p = core(DrumParams::new(alpha, 1.0, t));
                let pair = core(tau_n_pair(p, 1));
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    sig12(t),
                    sig12(tau0_plus(p)),
                    sig12(pair.0),
                    sig12(drum_tau1(p))
                );
            }
        }
    }
    write_output(out, &s);
}

fn cmd_table(n_max: usize, seeds: usize, seed: u64, out: Option<&PathBuf>) {
    if n_max < 1 {
        fail(2, "--n must be at least 1");
    }
    let mut s = String::new();
    let _ = writeln!(s, "# seed={seed}");
    let _ = writeln!(s, "n,t1_optimizer,t1_geometry,t1_over_4pi,multiplicity,area");
    for n in 1..=n_max {
        let cfg = core(find_symmetric_balanced(n));
        let area = configuration_area(&cfg);
        let result = core(maximize_full(n, seeds, n >= 3, seed));
        let report = core(criticality_report(&result.config, 1e-6));
        let multiplicity = if n == 1 { String::new() } else { report.multiplicity.to_string() };
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            n,
            sig12(result.value),
            sig12(2.0 * area),
            sig12(result.value / (4.0 * std::f64::consts::PI)),
            multiplicity,
            sig12(area)
        );
    }
    write_output(out, &s);
}

fn cmd_mesh(n: usize, segments: usize, rings: usize, out: Option<&PathBuf>) {
    if n < 1 {
        fail(2, "--n must be at least 1");
    }
    if segments < 3 || rings < 2 {
        fail(2, "mesh needs --segments >= 3 and --rings >= 2");
    }
    let cfg = core(find_symmetric_balanced(n));
    let m = mesh(&cfg, segments, rings);
    write_output(out, &m.to_obj());
}
