use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use silting_cluster_cat as cluster;
use silting_dg_core::{homology, DgPathAlgebra, Exec, DEFAULT_DELTA, DEFAULT_TRUNC};
use silting_hochschild as hh;
use silting_mutation_lab as mutation;
use silting_mutation_lab::{Direction, MutationState};
use silting_perf_modules as perf;
use silting_perf_modules::{IsoResult, PerfModule};
use silting_potential_calculus::{check_strongly_cy, normalize_degrees, DoubledAlgebra};
use silting_quiver_dsl::validate;

use crate::config::{parse_window, Format, OnUnstable, RunConfig};
use crate::input::{self, Kind};
use crate::report::Report;
use crate::{scenarios, CliError};

#[derive(Debug, Parser)]
#[command(name = "silting-lab", version, about = "Silting mutation and higher cluster category computations")]
pub struct Cli {
    /// Quiver description file.
    #[arg(long, short, global = true)]
    pub input: Option<String>,
    /// Which dg algebra to build from the input.
    #[arg(long, global = true, value_enum, default_value = "ginzburg")]
    pub kind: Kind,
    /// Path-length truncation L.
    #[arg(long, global = true, env = "SILTING_TRUNC", default_value_t = DEFAULT_TRUNC)]
    pub trunc: usize,
    /// Stability recheck at L + delta.
    #[arg(long, global = true, env = "SILTING_DELTA", default_value_t = DEFAULT_DELTA)]
    pub delta: usize,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value = "warn")]
    pub on_unstable: OnUnstable,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Dir {
    Right,
    Left,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Right => Direction::Right,
            Dir::Left => Direction::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckWhat {
    /// Structural strongly Calabi-Yau criterion.
    Cy,
    /// Degree and potential sanity checks on the input.
    Validate,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Differential table of the Ginzburg or deformed preprojective algebra.
    Build { kind: Kind },
    /// Degree normalisation of a deformed preprojective algebra.
    Normalize,
    Check { what: CheckWhat },
    /// Homology of the algebra in a degree window.
    Homology {
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
        /// Restrict to paths from I to J.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        piece: Option<Vec<String>>,
    },
    /// dim H^n Hom(X, Y).
    Hom {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
    },
    Support {
        #[arg(long)]
        x: String,
    },
    Iso {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// K0 classes, and their determinant when they form a square matrix.
    K0 { modules: Vec<String> },
    Mutate {
        #[arg(long)]
        vertex: String,
        #[arg(long, value_enum, default_value = "right")]
        dir: Dir,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    ResolveSimple {
        #[arg(long)]
        vertex: String,
    },
    /// Weight truncations of the simple resolution against RA_t and LA_{m+1-t}.
    Oracle {
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        t: i64,
    },
    ArAngle {
        #[arg(long)]
        vertex: String,
    },
    /// dim Hom_C(pi X, Sigma^t pi Y).
    ClusterHom {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        t: i64,
    },
    CtCheck {
        #[arg(long)]
        z: String,
    },
    Periodicity {
        #[arg(long)]
        vertex: String,
    },
    Complements {
        #[arg(long)]
        vertex: String,
    },
    EulerLes {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    Hochschild {
        #[arg(long, default_value_t = 1)]
        pmax: usize,
    },
    /// HH_0 = l and HH_p = 0 for 1 <= p < r; r defaults to m.
    Rigidity {
        #[arg(long)]
        r: Option<usize>,
    },
    /// Loops of degree -p with zero differential.
    Loops {
        #[arg(long = "deg")]
        p: i64,
    },
    /// Run a scripted scenario; without a name, list them.
    Scenario { names: Vec<String> },
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let window = match &self.command {
            Some(Command::Homology { window: Some(w), .. }) => *w,
            _ => RunConfig::default().window,
        };
        RunConfig {
            input: self.input.clone(),
            trunc: self.trunc,
            delta: self.delta,
            window,
            format: self.format,
            scenario: match &self.command {
                Some(Command::Scenario { names }) => names.first().cloned(),
                _ => None,
            },
            on_unstable: self.on_unstable,
            exec: if self.sequential { Exec::Sequential } else { Exec::Parallel },
        }
    }
}

fn algebra(cfg: &RunConfig, kind: Kind) -> Result<DoubledAlgebra, CliError> {
    let model = input::load_model(cfg.input.as_deref())?;
    let mut d = input::build(&model, kind)?;
    d.alg = d.alg.with_trunc(cfg.trunc);
    Ok(d)
}

pub fn mutation_json(q: &silting_quiver_dsl::GradedQuiver, s: &MutationState) -> Value {
    json!({
        "t": s.t,
        "module": s.current.to_json(q),
        "display": s.current.display_summands(q),
        "approximations": s.history.iter().map(|a| json!({
            "object": a.object.display_summands(q),
            "map": a.map.display(q),
            "factors": a.factors,
            "minimal": a.minimal,
        })).collect::<Vec<_>>(),
        "checks": s.checks.iter().map(|(n, p)| json!({"name": n, "pass": p})).collect::<Vec<_>>(),
        "all_checks_pass": s.all_checks_pass(),
    })
}

pub fn iso_json(q: &silting_quiver_dsl::GradedQuiver, r: &IsoResult) -> Value {
    json!({
        "iso": r.iso,
        "reason": r.reason,
        "witness": r.witness.as_ref().map(|w| w.display(q)),
    })
}

fn module_json(alg: &DgPathAlgebra, x: &PerfModule) -> Value {
    json!({ "module": x.to_json(&alg.quiver), "display": x.display_summands(&alg.quiver) })
}

fn serialized<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = cli.config();
    cfg.validate()?;
    let o = cfg.hom();
    let command = cli.command.as_ref().expect("dispatch is only called with a command");
    let d = || algebra(&cfg, cli.kind);
    let vtx = |d: &DoubledAlgebra, v: &str| input::vertex(&d.alg.quiver, v);
    let m = |d: &DoubledAlgebra, s: &str| input::module(d, s, cfg.trunc);
    Ok(match command {
        Command::Build { kind } => {
            let d = algebra(&cfg, *kind)?;
            let ok = d.alg.check_d_squared().is_ok();
            Report::new("build", json!({ "table": d.table(), "d_squared_zero": ok })).with_pass(ok)
        }
        Command::Normalize => {
            let d = algebra(&cfg, Kind::Dpp)?;
            let (iso, r) = normalize_degrees(&d)?;
            let pass = r.x_plus_y_is_minus_m && r.chain_map.commutes;
            Report::new("normalize", json!({ "report": r, "target": iso.target.table() })).with_pass(pass)
        }
        Command::Check { what: CheckWhat::Cy } => {
            let d = d()?;
            let r = check_strongly_cy(&d);
            let pass = r.pass();
            Report::new("check cy", serialized(&r)).with_pass(pass)
        }
        Command::Check { what: CheckWhat::Validate } => {
            let model = input::load_model(cfg.input.as_deref())?;
            let r = validate(&model.quiver, &model.potential, model.m);
            let pass = r.all_pass();
            Report::new("check validate", serialized(&r)).with_pass(pass)
        }
        Command::Homology { piece, .. } => {
            let d = d()?;
            let mut ho = cfg.homology();
            if let Some(p) = piece {
                ho.piece = Some((vtx(&d, &p[0])?, vtx(&d, &p[1])?));
            }
            let h = homology(&d.alg, cfg.window.0, cfg.window.1, &ho);
            let stable = h.stable;
            Report::new("homology", serialized(&h)).with_stable(stable)
        }
        Command::Hom { x, y, n } => {
            let d = d()?;
            let h = perf::hom_derived(&d.alg, &m(&d, x)?, &m(&d, y)?, *n, &o);
            let stable = h.stable;
            Report::new("hom", serialized(&h)).with_stable(stable)
        }
        Command::Support { x } => {
            let d = d()?;
            let x = m(&d, x)?;
            let s = perf::support(&d.alg, &x);
            let via = perf::support_via_simples(&d.alg, &x);
            Report::new("support", json!({ "support": s, "via_simples": via })).with_pass(s == via)
        }
        Command::Iso { x, y, seed } => {
            let d = d()?;
            let r = perf::iso_test(&d.alg, &m(&d, x)?, &m(&d, y)?, &o, *seed);
            Report::new("iso", iso_json(&d.alg.quiver, &r))
        }
        Command::K0 { modules } => {
            let d = d()?;
            let n = d.alg.quiver.n_vertices();
            let classes: Vec<perf::K0Class> =
                modules.iter().map(|s| m(&d, s).map(|x| perf::k0_class(&x, n))).collect::<Result<_, _>>()?;
            let det = (classes.len() == n).then(|| perf::determinant(&classes));
            Report::new("k0", json!({ "classes": classes, "determinant": det }))
        }
        Command::Mutate { vertex, dir, steps } => {
            let d = d()?;
            let seq = mutation::mutation_sequence(&d.alg, vtx(&d, vertex)?, (*dir).into(), *steps, &o)?;
            let pass = seq.iter().all(MutationState::all_checks_pass);
            let states: Vec<Value> = seq.iter().map(|s| mutation_json(&d.alg.quiver, s)).collect();
            Report::new("mutate", json!({ "vertex": vertex, "direction": Direction::from(*dir), "states": states }))
                .with_pass(pass)
        }
        Command::ResolveSimple { vertex } => {
            let d = d()?;
            let r = mutation::resolve_simple(&d.alg, vtx(&d, vertex)?, &o)?;
            let mut v = module_json(&d.alg, &r.y);
            v["levels"] = json!(r.levels);
            v["homology"] = json!(r.homology);
            Report::new("resolve-simple", v).with_stable(r.stable)
        }
        Command::Oracle { vertex, t } => {
            let d = d()?;
            let i = vtx(&d, vertex)?;
            let (lo, hi) = mutation::truncation_oracle(&d, i, *t)?;
            let mm = d.m;
            let steps = (mm + 1) as usize;
            let ra = mutation::mutation_sequence(&d.alg, i, Direction::Right, steps, &o)?;
            let la = mutation::mutation_sequence(&d.alg, i, Direction::Left, steps, &o)?;
            let r = perf::iso_test(&d.alg, &lo, &ra[*t as usize].current, &o, 11);
            let l = perf::iso_test(&d.alg, &hi, &la[(mm + 1 - t) as usize].current, &o, 13);
            Report::new(
                "oracle",
                json!({
                    "lower": module_json(&d.alg, &lo),
                    "upper": module_json(&d.alg, &hi),
                    "lower_vs_ra": iso_json(&d.alg.quiver, &r),
                    "upper_vs_la": iso_json(&d.alg.quiver, &l),
                }),
            )
            .with_pass(r.iso && l.iso)
        }
        Command::ArAngle { vertex } => {
            let d = d()?;
            let r = mutation::ar_angle(&d, vtx(&d, vertex)?, &o)?;
            let pass = r.pass();
            Report::new("ar-angle", serialized(&r)).with_pass(pass)
        }
        Command::ClusterHom { x, y, t } => {
            let d = d()?;
            let h = cluster::hom_cluster(&d, &m(&d, x)?, &m(&d, y)?, *t, &o)?;
            let stable = h.stable;
            Report::new("cluster-hom", serialized(&h)).with_stable(stable)
        }
        Command::CtCheck { z } => {
            let d = d()?;
            let r = cluster::cluster_tilting_check(&d, &m(&d, z)?, &o)?;
            let stable = r.dims.iter().all(|h| h.stable);
            Report::new("ct-check", serialized(&r)).with_pass(r.pass).with_stable(stable)
        }
        Command::Periodicity { vertex } => {
            let d = d()?;
            let r = cluster::periodicity_check(&d, vtx(&d, vertex)?, &o)?;
            Report::new("periodicity", serialized(&r)).with_pass(r.pass)
        }
        Command::Complements { vertex } => {
            let d = d()?;
            let r = cluster::complements(&d, vtx(&d, vertex)?, &o)?;
            Report::new("complements", serialized(&r)).with_pass(r.pass)
        }
        Command::EulerLes { x, y } => {
            let d = d()?;
            let r = cluster::euler_les_check(&d, &m(&d, x)?, &m(&d, y)?, &o)?;
            Report::new("euler-les", serialized(&r)).with_pass(r.pass)
        }
        Command::Hochschild { pmax } => {
            let d = d()?;
            let h = hh::hochschild_homology(&d.alg, *pmax, &cfg.homology());
            let stable = h.stable;
            Report::new("hochschild", serialized(&h)).with_stable(stable)
        }
        Command::Rigidity { r } => {
            let d = d()?;
            let r = r.unwrap_or(d.m as usize);
            let rep = hh::rigidity_check(&d.alg, r, &cfg.homology());
            let stable = rep.slice.stable;
            Report::new("rigidity", serialized(&rep)).with_pass(rep.pass).with_stable(stable)
        }
        Command::Loops { p } => {
            let d = d()?;
            Report::new("loops", json!({ "p": p, "degree": -p, "loops": hh::loop_obstruction(&d.alg, *p) }))
        }
        Command::Scenario { names } => scenarios::run_all(names, &cfg)?,
    })
}
