use clap::{Args, Subcommand, ValueEnum};
use num::complex::Complex64;
use randpart::error::{Error, Result};
use randpart::fock::parse_coefficient;
use randpart::gw::{self, GwQuery, HurwitzQuery};
use randpart::kernels::{self, KernelSpec};
use randpart::measures::{self, MeasureSpec, Weight};
use randpart::partition::{dimension, enumerate_partitions_with_limit};
use randpart::shapes::{self, DiscreteProfile, SwCurve};
use randpart::{HalfInt, Partition, Rational};
use serde::Serialize;

use crate::output::{decimal, Cell, Table};

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// List the partitions of n with their dimensions.
    Enumerate(EnumerateArgs),
    /// Dimension and hook data of one partition.
    Dim(DimArgs),
    /// Weights of a measure over its support.
    MeasureTable(MeasureTableArgs),
    /// Seeded samples of Plancherel or poissonized Plancherel measure.
    Sample(SampleArgs),
    /// Correlation function det[K(x_i, x_j)].
    Correlate(PointsArgs),
    /// Gap probability det(1 − K_B).
    Gap(GapArgs),
    /// Kernel values K(x, y).
    Kernel(PointsArgs),
    /// Band structure, density and slope of a Schur limit shape.
    LimitShape(LimitShapeArgs),
    /// Hook functional E of a scaled partition or of the Plancherel limit shape.
    HookEnergy(HookEnergyArgs),
    /// Direct maximizer of the action for a periodic potential.
    Maximize(ShapeArgs),
    /// Limit shape from the Seiberg-Witten conformal map.
    SwShape(SwShapeArgs),
    /// Stationary Gromov-Witten invariants.
    Gw(GwArgs),
    /// Hurwitz numbers.
    Hurwitz(HurwitzArgs),
    /// Trace of q^L0 times E-operators.
    EllipticTrace(EllipticArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Enumerate(_) => "enumerate",
            Command::Dim(_) => "dim",
            Command::MeasureTable(_) => "measure-table",
            Command::Sample(_) => "sample",
            Command::Correlate(_) => "correlate",
            Command::Gap(_) => "gap",
            Command::Kernel(_) => "kernel",
            Command::LimitShape(_) => "limit-shape",
            Command::HookEnergy(_) => "hook-energy",
            Command::Maximize(_) => "maximize",
            Command::SwShape(_) => "sw-shape",
            Command::Gw(_) => "gw",
            Command::Hurwitz(_) => "hurwitz",
            Command::EllipticTrace(_) => "elliptic-trace",
        }
    }

    fn float_only(&self) -> bool {
        matches!(
            self,
            Command::Sample(_)
                | Command::Correlate(_)
                | Command::Gap(_)
                | Command::Kernel(_)
                | Command::LimitShape(_)
                | Command::HookEnergy(_)
                | Command::Maximize(_)
                | Command::SwShape(_)
        )
    }
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Stop with an error beyond this many partitions.
    #[arg(long, default_value_t = 1_000_000)]
    limit: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct DimArgs {
    /// Parts separated by commas, e.g. "4,2,1"; "" is the empty partition.
    #[arg(long, allow_hyphen_values = true)]
    partition: String,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Plancherel,
    Poissonized,
    Schur,
    Jack,
    Periodic,
}

#[derive(Args, Debug, Serialize)]
pub struct MeasureArgs {
    #[arg(long, value_enum)]
    measure: MeasureKind,
    /// Size for Plancherel measure.
    #[arg(long)]
    n: Option<usize>,
    /// Poissonization parameter.
    #[arg(long)]
    xi: Option<f64>,
    /// Schur times t_1, t_2, ...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,
    /// Conjugate Schur times (default: equal to t).
    #[arg(long = "t-bar", value_delimiter = ',', allow_hyphen_values = true)]
    t_bar: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    eps1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps2: Option<String>,
    /// Size for the Jack measure.
    #[arg(long)]
    d: Option<usize>,
    /// Periodic potential u_0, ..., u_{N-1} (rationals summing to 0).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    u: Vec<String>,
    #[arg(long)]
    hbar: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct MeasureTableArgs {
    #[command(flatten)]
    measure: MeasureArgs,
    /// Largest |λ| for measures on all partitions.
    #[arg(long, default_value_t = 8)]
    truncation: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    measure: MeasureArgs,
    #[arg(long, default_value_t = 1)]
    count: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Bessel,
    Schur,
    Sine,
    Multiband,
}

#[derive(Args, Debug, Serialize)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    kernel: KernelKind,
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,
    #[arg(long = "t-bar", value_delimiter = ',', allow_hyphen_values = true)]
    t_bar: Vec<f64>,
    /// Half-width of the band of the sine kernel.
    #[arg(long)]
    a: Option<f64>,
    /// Bands of the multi-band kernel, "alpha:beta,alpha:beta".
    #[arg(long, allow_hyphen_values = true)]
    intervals: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct PointsArgs {
    #[command(flatten)]
    kernel: KernelArgs,
    /// Half-integer sites such as "-1/2,3/2" or "0.5,2.5".
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    points: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct GapArgs {
    #[command(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    points: Vec<String>,
    /// Prob{λ_1 ≤ h} for the Bessel kernel instead of an explicit set.
    #[arg(long)]
    lambda1_at_most: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
pub struct LimitShapeArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1")]
    t: Vec<f64>,
    #[arg(long = "t-bar", value_delimiter = ',', allow_hyphen_values = true)]
    t_bar: Vec<f64>,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    to: f64,
    #[arg(long, default_value_t = 60)]
    steps: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct HookEnergyArgs {
    /// Partition whose profile, scaled by 1/sqrt(|λ|), is evaluated.
    #[arg(long, allow_hyphen_values = true)]
    partition: Option<String>,
    /// Evaluate the Plancherel limit shape instead, refining the grid.
    #[arg(long)]
    vkls: bool,
    #[arg(long, default_value_t = 4096)]
    cells: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ShapeArgs {
    /// Potential u_1 > ... > u_N (reals summing to 0).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
    u: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long, default_value_t = -3.5, allow_hyphen_values = true)]
    lo: f64,
    #[arg(long, default_value_t = 3.5, allow_hyphen_values = true)]
    hi: f64,
    #[arg(long, default_value_t = 512)]
    cells: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct SwShapeArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Period constant C; calibrated against the direct maximizer when omitted.
    #[arg(long)]
    constant: Option<f64>,
    /// Use this curve B (coefficients by increasing degree) instead of matching periods.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Vec<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct GwArgs {
    #[arg(long)]
    degree: usize,
    /// Descendant indices k_i of the point insertions.
    #[arg(long, value_delimiter = ',')]
    insertions: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    target_genus: usize,
    /// Connected one-point invariants <τ_{2g-2+2d}>°_d for g ≤ g-max instead.
    #[arg(long)]
    connected: bool,
    #[arg(long, default_value_t = 3)]
    g_max: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct HurwitzArgs {
    #[arg(long)]
    degree: usize,
    /// Genus of the base curve.
    #[arg(long, default_value_t = 0)]
    genus: usize,
    /// Cycle types separated by ';', e.g. "2,1;3".
    #[arg(long, value_delimiter = ';')]
    branch: Vec<String>,
    /// Also count by enumerating permutations.
    #[arg(long)]
    brute: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct EllipticArgs {
    /// Insertion points z_i (real or complex such as "0.5+0.1i").
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    z: Vec<String>,
    /// Number of insertions for the exact expansion in the z_i.
    #[arg(long, default_value_t = 1)]
    vars: usize,
    /// Highest power of each z_i kept in the exact expansion.
    #[arg(long, default_value_t = 3)]
    z_order: i32,
    #[arg(long, default_value_t = 10)]
    q_order: usize,
}

fn arg_err(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| arg_err(format!("missing --{flag}")))
}

fn parse_partition(s: &str) -> Result<Partition> {
    s.parse()
}

fn parse_points(points: &[String]) -> Result<Vec<HalfInt>> {
    if points.is_empty() {
        return Err(arg_err("missing --points"));
    }
    points.iter().map(|p| p.trim().parse()).collect()
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse().map_err(|_| arg_err(format!("cannot parse rational {s:?}")))
}

fn measure_spec(m: &MeasureArgs) -> Result<MeasureSpec> {
    let spec = match m.measure {
        MeasureKind::Plancherel => MeasureSpec::Plancherel { n: need(m.n, "n")? },
        MeasureKind::Poissonized => MeasureSpec::PoissonizedPlancherel { xi: need(m.xi, "xi")? },
        MeasureKind::Schur => {
            if m.t.is_empty() {
                return Err(arg_err("missing --t"));
            }
            let t_bar = if m.t_bar.is_empty() { m.t.clone() } else { m.t_bar.clone() };
            MeasureSpec::Schur { t: m.t.clone(), t_bar }
        }
        MeasureKind::Jack => {
            let e1 = m.eps1.as_deref().ok_or_else(|| arg_err("missing --eps1"))?;
            let e2 = m.eps2.as_deref().ok_or_else(|| arg_err("missing --eps2"))?;
            MeasureSpec::Jack { eps1: parse_rational(e1)?, eps2: parse_rational(e2)?, d: need(m.d, "d")? }
        }
        MeasureKind::Periodic => MeasureSpec::PeriodicPlancherel {
            u: m.u.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
            xi: need(m.xi, "xi")?,
            hbar: need(m.hbar, "hbar")?,
        },
    };
    spec.validate()?;
    Ok(spec)
}

fn kernel_spec(k: &KernelArgs) -> Result<KernelSpec> {
    let spec = match k.kernel {
        KernelKind::Bessel => KernelSpec::Bessel { xi: need(k.xi, "xi")? },
        KernelKind::Schur => {
            if k.t.is_empty() {
                return Err(arg_err("missing --t"));
            }
            let t_bar = if k.t_bar.is_empty() { k.t.clone() } else { k.t_bar.clone() };
            KernelSpec::schur_contour(k.t.clone(), t_bar)
        }
        KernelKind::Sine => KernelSpec::Sine { a: need(k.a, "a")? },
        KernelKind::Multiband => {
            let text = k.intervals.as_deref().ok_or_else(|| arg_err("missing --intervals"))?;
            let intervals = text
                .split(',')
                .map(|pair| {
                    let (a, b) = pair.split_once(':').ok_or_else(|| arg_err(format!("interval {pair:?} is not alpha:beta")))?;
                    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| arg_err(format!("bad number {s:?}")));
                    Ok((parse(a)?, parse(b)?))
                })
                .collect::<Result<Vec<_>>>()?;
            KernelSpec::MultiBand { intervals }
        }
    };
    spec.validate()?;
    Ok(spec)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn profile_table(p: &DiscreteProfile) -> Table {
    let mut t = Table::new(&["x", "slope", "height"]);
    for (x, s) in p.centers().into_iter().zip(&p.slopes) {
        t.push(vec![x.into(), (*s).into(), p.height_at(x).into()]);
    }
    t
}

pub fn run(cmd: &Command, seed: u64, exact: bool) -> Result<Table> {
    if exact && cmd.float_only() {
        return Err(arg_err(format!("--exact is not available for `{}`: its results are floating point", cmd.name())));
    }
    match cmd {
        Command::Enumerate(a) => {
            let mut t = Table::new(&["partition", "length", "dimension"]);
            for l in enumerate_partitions_with_limit(a.n, a.limit)? {
                t.push(vec![l.to_string().into(), l.len().into(), Cell::Text(dimension(&l).to_string())]);
            }
            Ok(t)
        }
        Command::Dim(a) => {
            let l = parse_partition(&a.partition)?;
            let mut t = Table::new(&["partition", "size", "dimension", "hook_product", "plancherel_weight"]);
            let dim = dimension(&l);
            let n_fact = randpart::partition::factorial(l.size());
            let weight = Rational::new((&dim * &dim).into(), n_fact.into());
            t.push(vec![
                l.to_string().into(),
                l.size().into(),
                Cell::Text(dim.to_string()),
                Cell::Text(l.hook_product().to_string()),
                weight.into(),
            ]);
            Ok(t)
        }
        Command::MeasureTable(a) => {
            let spec = measure_spec(&a.measure)?;
            let table = measures::weight_table(&spec, a.truncation)?;
            let all_exact = table.iter().all(|(_, w)| matches!(w, Weight::Exact(_)));
            if exact && !all_exact {
                return Err(arg_err("--exact: this measure has floating-point weights"));
            }
            let mut t = if all_exact {
                Table::new(&["partition", "weight_num", "weight_den"])
            } else {
                Table::new(&["partition", "weight"])
            };
            for (l, w) in &table {
                match w {
                    Weight::Exact(r) if all_exact => {
                        t.push(vec![l.to_string().into(), Cell::Text(r.numer().to_string()), Cell::Text(r.denom().to_string())])
                    }
                    _ => t.push(vec![l.to_string().into(), w.to_f64().into()]),
                }
            }
            if let Ok(z) = measures::partition_function(&spec, a.truncation) {
                t.note("normalization", z.value.to_string());
                t.note("tail_bound", z.tail_bound);
            }
            Ok(t)
        }
        Command::Sample(a) => {
            let spec = measure_spec(&a.measure)?;
            let mut t = Table::new(&["index", "seed", "size", "lambda1", "length", "partition"]);
            for i in 0..a.count {
                let s = seed.wrapping_add(i as u64);
                let l = match spec {
                    MeasureSpec::Plancherel { n } => measures::sample_plancherel(n, s)?,
                    MeasureSpec::PoissonizedPlancherel { xi } => measures::sample_poissonized(xi, s)?,
                    _ => return Err(arg_err("sampling is available for plancherel and poissonized measures")),
                };
                t.push(vec![
                    i.into(),
                    Cell::Int(s as i128),
                    l.size().into(),
                    (l.part(1) as usize).into(),
                    l.len().into(),
                    l.to_string().into(),
                ]);
            }
            Ok(t)
        }
        Command::Correlate(a) => {
            let k = kernel_spec(&a.kernel)?;
            let xs = parse_points(&a.points)?;
            let p = kernels::correlation(&k, &xs)?;
            let mut t = Table::new(&["points", "probability", "clamped"]);
            t.push(vec![join(&xs).into(), p.value.into(), p.clamped.into()]);
            Ok(t)
        }
        Command::Gap(a) => {
            let mut t = Table::new(&["set", "probability", "clamped"]);
            let k = kernel_spec(&a.kernel)?;
            let (label, p) = match (a.lambda1_at_most, &k) {
                (Some(h), KernelSpec::Bessel { xi }) => (format!("lambda1<={h}"), kernels::lambda1_cdf(*xi, h)?),
                (Some(_), _) => return Err(arg_err("--lambda1-at-most needs the bessel kernel")),
                (None, _) => {
                    let b = parse_points(&a.points)?;
                    (join(&b), kernels::gap_probability(&k, &b)?)
                }
            };
            t.push(vec![label.into(), p.value.into(), p.clamped.into()]);
            Ok(t)
        }
        Command::Kernel(a) => {
            let k = kernel_spec(&a.kernel)?;
            let xs = parse_points(&a.points)?;
            let m = kernels::kernel_matrix(&k, &xs)?;
            let mut t = Table::new(&["x", "y", "K"]);
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in xs.iter().enumerate() {
                    t.push(vec![x.to_string().into(), y.to_string().into(), m[(i, j)].into()]);
                }
            }
            Ok(t)
        }
        Command::LimitShape(a) => {
            let t_c: Vec<Complex64> = a.t.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let tb = if a.t_bar.is_empty() { &a.t } else { &a.t_bar };
            let tb_c: Vec<Complex64> = tb.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            if a.steps == 0 || !(a.from < a.to) {
                return Err(arg_err("need --from < --to and --steps ≥ 1"));
            }
            let mut t = Table::new(&["x", "density", "slope", "bands"]);
            let mut warnings = Vec::new();
            for i in 0..=a.steps {
                let x = a.from + (a.to - a.from) * i as f64 / a.steps as f64;
                let b = shapes::bands_at_level(&t_c, &tb_c, x)?;
                if let Some(w) = &b.warning {
                    warnings.push(format!("x = {x}: {w}"));
                }
                let bands = b.intervals.iter().map(|(p, q)| format!("{p}:{q}")).collect::<Vec<_>>().join(" ");
                let d = b.density();
                t.push(vec![x.into(), d.into(), (1.0 - 2.0 * d).into(), bands.into()]);
            }
            t.note("warnings", warnings);
            Ok(t)
        }
        Command::HookEnergy(a) => {
            let mut t = Table::new(&["source", "cells", "energy"]);
            match (&a.partition, a.vkls) {
                (None, true) => {
                    let e = shapes::hook_energy_refined(shapes::vkls_height, -2.0, 2.0, 1e-6)?;
                    t.push(vec!["vkls".into(), Cell::Text("refined".into()), e.into()]);
                }
                (Some(s), false) => {
                    let l = parse_partition(s)?;
                    if l.is_empty() {
                        return Err(arg_err("the empty partition has no scaled profile"));
                    }
                    let r = (l.size() as f64).sqrt();
                    let (lo, hi) = (-(l.len() as f64) / r - 0.5, l.part(1) as f64 / r + 0.5);
                    let p = DiscreteProfile::of_partition(&l, lo, hi, a.cells)?;
                    t.push(vec![l.to_string().into(), a.cells.into(), shapes::hook_energy(&p).into()]);
                }
                _ => return Err(arg_err("give exactly one of --partition and --vkls")),
            }
            Ok(t)
        }
        Command::Maximize(a) => {
            let r = shapes::maximize_action(&a.u, a.kappa, a.lo, a.hi, a.cells)?;
            let mut t = profile_table(&r.profile);
            t.note("action", r.action);
            t.note("iterations", r.iterations);
            t.note("gradient_norm", r.gradient_norm);
            Ok(t)
        }
        Command::SwShape(a) => {
            let s = &a.shape;
            let mut notes = serde_json::Map::new();
            let curve = if !a.coeffs.is_empty() {
                SwCurve::new(a.coeffs.clone())?
            } else {
                let constant = match a.constant {
                    Some(c) => c,
                    None => {
                        let cal = shapes::calibrate_period_constant(s.lo, s.hi, s.cells)?;
                        notes.insert("calibration".into(), serde_json::to_value(&cal).unwrap_or_default());
                        cal.constant
                    }
                };
                let m = shapes::match_periods(&s.u, s.kappa, constant)?;
                notes.insert("period_constant".into(), constant.into());
                notes.insert("period_residual".into(), m.residual.into());
                notes.insert("newton_iterations".into(), m.iterations.into());
                m.curve
            };
            let p = shapes::maximizer_from_map(&curve, s.lo, s.hi, s.cells)?;
            let mut t = profile_table(&p);
            t.note("curve_coefficients", curve.coeffs());
            t.note("band_edges", curve.roots());
            if curve.degree() >= 2 {
                t.note("periods", shapes::sw_periods(&curve)?);
            }
            t.diagnostics.extend(notes);
            Ok(t)
        }
        Command::Gw(a) => {
            if a.connected {
                if !a.insertions.is_empty() || a.target_genus != 0 {
                    return Err(arg_err("--connected computes one-point invariants of P1; drop --insertions/--target-genus"));
                }
                let mut t = Table::new(&["degree", "genus", "insertion", "value", "decimal"]);
                for c in gw::connected_1pt(a.degree, a.g_max)? {
                    let dec = decimal(&c.value);
                    t.push(vec![a.degree.into(), c.genus.into(), c.insertion.into(), c.value.into(), dec]);
                }
                return Ok(t);
            }
            let q = GwQuery::new(a.degree, a.insertions.clone(), a.target_genus);
            let v = q.evaluate()?;
            let mut t = Table::new(&["value", "decimal", "degree", "insertions", "target_genus"]);
            let dec = decimal(&v);
            t.push(vec![v.into(), dec, a.degree.into(), join(&a.insertions).into(), a.target_genus.into()]);
            if let Some(g) = q.domain_genus() {
                t.note("domain_genus", g);
            }
            Ok(t)
        }
        Command::Hurwitz(a) => {
            let branch = a.branch.iter().map(|s| parse_partition(s)).collect::<Result<Vec<_>>>()?;
            let q = HurwitzQuery::new(a.degree, a.genus, branch.clone())?;
            let v = gw::hurwitz_count(&q)?;
            let label = branch.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(";");
            let mut cols = vec!["value", "decimal", "degree", "genus", "branch"];
            if a.brute {
                cols.push("brute_force");
            }
            let mut t = Table::new(&cols);
            let dec = decimal(&v);
            let mut row = vec![v.into(), dec, a.degree.into(), a.genus.into(), label.into()];
            if a.brute {
                row.push(gw::hurwitz_brute(&q)?.into());
            }
            t.push(row);
            Ok(t)
        }
        Command::EllipticTrace(a) => {
            if exact {
                if a.q_order > gw::MAX_Q_ORDER {
                    return Err(Error::Resource(format!("q order {} exceeds the limit {}", a.q_order, gw::MAX_Q_ORDER)));
                }
                let s = randpart::fock::trace_weighted_formal(a.vars, a.z_order, a.q_order)?;
                let mut t = Table::new(&["q_power", "z_exponents", "coefficient"]);
                for (d, c) in s.coefficients.iter().enumerate() {
                    for (exps, v) in c.terms() {
                        let mut e = exps.to_vec();
                        e.resize(a.vars, 0);
                        t.push(vec![d.into(), join(&e).into(), v.clone().into()]);
                    }
                }
                return Ok(t);
            }
            let z = a
                .z
                .iter()
                .map(|s| parse_coefficient(s.trim()).map(|c| c.to_complex()))
                .collect::<Result<Vec<_>>>()?;
            let s = gw::elliptic_series(&z, a.q_order)?;
            let mut t = Table::new(&["q_power", "re", "im"]);
            for (d, c) in s.coefficients.iter().enumerate() {
                t.push(vec![d.into(), c.re.into(), c.im.into()]);
            }
            Ok(t)
        }
    }
}
