use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qks_core::amplitudes::{amplitude, tau_schur_coefficients, vertex_c};
use qks_core::arith::{format_scalar, parse_scalar};
use qks_core::bases::{basis, format_ks, ks_operators};
use qks_core::geometry::{parse_signs, CtvSpec, End, Geometry, StripSpec};
use qks_core::report::all_pass;
use qks_core::rng::Minstd;
use qks_core::verify::{run, Suite, VerifyConfig};
use qks_core::{Error, Partition, QContext, Scalar};

/// Exact open-string amplitudes, admissible bases and Kac–Schwarz operators.
#[derive(Parser, Debug)]
#[command(name = "qks", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Topological vertex C_{λμν}.
    Vertex {
        #[arg(long, default_value = "[]")]
        lam: String,
        #[arg(long, default_value = "[]")]
        mu: String,
        #[arg(long, default_value = "[]")]
        nu: String,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Coefficients of the basis vector Φ_j from x^{-j} to x^{maxdeg}.
    Basis {
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Normal forms of the Kac–Schwarz operators A and B.
    Ksops {
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Normalized open amplitude Z_β/Z.
    Amplitude {
        #[arg(long, default_value = "[]")]
        beta: String,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Schur coefficients of the tau function up to maxweight.
    Tau {
        #[command(flatten)]
        cfg: RunConfig,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GeometryKind {
    C3,
    Conifold,
    Strip,
    StripLeft,
    StripRight,
    Ctv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    #[arg(long, default_value = "1/2")]
    u: String,
    #[arg(long, value_enum)]
    geometry: Option<GeometryKind>,
    /// Sign pattern of the strip, e.g. "+-+".
    #[arg(long)]
    sigma: Option<String>,
    /// Kähler parameters; repeat or separate with commas.
    #[arg(long = "Q", value_delimiter = ',', allow_hyphen_values = true)]
    kahler: Vec<String>,
    /// Vertical leg of a strip (1-based) or closed-vertex leg (1 or 2).
    #[arg(long, default_value_t = 1)]
    leg: usize,
    #[arg(long = "maxdeg", default_value_t = 24)]
    max_deg: i64,
    #[arg(long = "maxweight", default_value_t = 6)]
    max_weight: usize,
    #[arg(long = "jmax", default_value_t = 4)]
    j_max: usize,
    #[arg(long, default_value_t = 12)]
    cutoff: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

enum Failure {
    Usage(String),
    Degenerate(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_) | Error::Bounds(_) => Failure::Usage(e.to_string()),
            Error::Degenerate(_) | Error::Pole { .. } | Error::ZeroFunction => Failure::Degenerate(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    let v: Vec<i64> =
        serde_json::from_str(s).map_err(|e| Failure::Usage(format!("partition {s:?} is not a JSON array: {e}")))?;
    if v.iter().any(|&x| x < 0) || v.windows(2).any(|w| w[0] < w[1]) {
        return Err(Failure::Usage(format!("{s} is not a partition")));
    }
    Ok(Partition::from_slice(&v.iter().map(|&x| x as usize).collect::<Vec<_>>()))
}

fn partition_json(p: &Partition) -> Value {
    json!(p.parts())
}

fn str_value(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

impl RunConfig {
    fn ctx(&self) -> Result<QContext, Failure> {
        Ok(QContext::new(parse_scalar(&self.u)?)?)
    }

    fn kahler(&self) -> Result<Vec<Scalar>, Failure> {
        Ok(self.kahler.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?)
    }

    fn strip_spec(&self, fill: &mut Option<Minstd>, ctx: &QContext) -> Result<StripSpec, Failure> {
        let sigma = self
            .sigma
            .as_deref()
            .ok_or_else(|| Failure::Usage("strip geometries need --sigma".into()))?;
        let sigma = parse_signs(sigma)?;
        let k = self.kahler_or_random(sigma.len().saturating_sub(1), fill, ctx)?;
        if k.len() + 1 != sigma.len() {
            return Err(Failure::Usage(format!(
                "a strip with {} vertices needs {} Kähler parameters, got {}",
                sigma.len(),
                sigma.len().saturating_sub(1),
                k.len()
            )));
        }
        Ok(StripSpec::new(sigma, k)?)
    }

    /// The given Kähler parameters, or `n` random ones when none were given
    /// and a generator is supplied.
    fn kahler_or_random(&self, n: usize, fill: &mut Option<Minstd>, ctx: &QContext) -> Result<Vec<Scalar>, Failure> {
        match fill {
            Some(rng) if self.kahler.is_empty() => Ok((0..n).map(|_| rng.kahler(ctx)).collect()),
            _ => self.kahler(),
        }
    }

    /// With `fill`, missing Kähler parameters are drawn from the seed.
    fn geometry(&self, mut fill: Option<Minstd>) -> Result<Option<Geometry>, Failure> {
        let Some(kind) = self.geometry else {
            return Ok(None);
        };
        let ctx = self.ctx()?;
        let fill = &mut fill;
        let g = match kind {
            GeometryKind::C3 => Geometry::C3,
            GeometryKind::Conifold => match self.kahler_or_random(1, fill, &ctx)?.as_slice() {
                [q] => Geometry::Conifold(q.clone()),
                _ => return Err(Failure::Usage("conifold needs exactly one --Q".into())),
            },
            GeometryKind::Strip => Geometry::StripVertical(self.strip_spec(fill, &ctx)?, self.leg),
            GeometryKind::StripLeft => Geometry::StripEnd(self.strip_spec(fill, &ctx)?, End::Left),
            GeometryKind::StripRight => Geometry::StripEnd(self.strip_spec(fill, &ctx)?, End::Right),
            GeometryKind::Ctv => match self.kahler_or_random(3, fill, &ctx)?.as_slice() {
                [a, b, c] => {
                    if self.leg > 2 {
                        return Err(Failure::Usage(format!("closed vertex leg must be 1 or 2, got {}", self.leg)));
                    }
                    Geometry::Ctv(CtvSpec::new(a.clone(), b.clone(), c.clone())?, self.leg as u8)
                }
                _ => return Err(Failure::Usage("ctv needs three values --Q Q1,Q2,Q3".into())),
            },
        };
        g.validate()?;
        Ok(Some(g))
    }

    fn geometry_or_c3(&self) -> Result<Geometry, Failure> {
        Ok(self.geometry(None)?.unwrap_or(Geometry::C3))
    }

    fn emit(&self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
        match self.output {
            Output::Text => println!("{}", text()),
            Output::Json => println!("{}", value()),
        }
    }
}

fn cmd_vertex(lam: &str, mu: &str, nu: &str, cfg: &RunConfig) -> CmdResult {
    let (l, m, n) = (parse_partition(lam)?, parse_partition(mu)?, parse_partition(nu)?);
    let ctx = cfg.ctx()?;
    let v = vertex_c(&ctx, &l, &m, &n)?;
    cfg.emit(|| format_scalar(&v), || json!({ "value": format_scalar(&v) }));
    Ok(())
}

fn cmd_verify(suite: &str, cfg: &RunConfig) -> CmdResult {
    let suite: Suite = suite.parse()?;
    let vc = VerifyConfig {
        u: parse_scalar(&cfg.u)?,
        seed: cfg.seed,
        max_deg: cfg.max_deg,
        max_weight: cfg.max_weight,
        j_max: cfg.j_max,
        cutoff: cfg.cutoff,
        geometry: cfg.geometry(Some(Minstd::new(cfg.seed)))?,
    };
    let reports = run(&vc, suite)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    cfg.emit(
        || {
            let mut s = String::new();
            for r in &reports {
                s.push_str(if r.pass { "PASS " } else { "FAIL " });
                s.push_str(&r.case);
                if let Some(d) = r.first_mismatch_degree {
                    s.push_str(&format!(" (first mismatch at x^{d})"));
                }
                if let Some(d) = &r.detail {
                    s.push_str(&format!(" [{d}]"));
                }
                s.push('\n');
            }
            s.push_str(&format!("{} cases, {} failed", reports.len(), failed));
            s
        },
        || serde_json::to_value(&reports).expect("reports serialize"),
    );
    if all_pass(&reports) {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{failed} case(s) failed")))
    }
}

fn cmd_basis(j: usize, cfg: &RunConfig) -> CmdResult {
    let ctx = cfg.ctx()?;
    let g = cfg.geometry_or_c3()?;
    if cfg.max_deg < -(j as i64) {
        return Err(Failure::Usage(format!("maxdeg {} is below x^-{j}", cfg.max_deg)));
    }
    let s = basis(&ctx, &g, j, cfg.max_deg)?;
    let coeffs: Vec<Scalar> = (s.lo()..=cfg.max_deg).map(|n| s.coeff(n).expect("in window")).collect();
    cfg.emit(
        || {
            coeffs
                .iter()
                .zip(s.lo()..)
                .map(|(c, n)| format!("x^{n}: {}", format_scalar(c)))
                .collect::<Vec<_>>()
                .join("\n")
        },
        || {
            json!({
                "geometry": g.to_string(),
                "j": j,
                "lo": s.lo(),
                "coefficients": coeffs.iter().map(str_value).collect::<Vec<_>>(),
            })
        },
    );
    Ok(())
}

fn cmd_ksops(cfg: &RunConfig) -> CmdResult {
    let ctx = cfg.ctx()?;
    let g = cfg.geometry_or_c3()?;
    let (a, b) = format_ks(&ks_operators(&ctx, &g)?);
    cfg.emit(
        || format!("A = {a}\nB = {b}"),
        || json!({ "geometry": g.to_string(), "A": a, "B": b }),
    );
    Ok(())
}

fn cmd_amplitude(beta: &str, cfg: &RunConfig) -> CmdResult {
    let beta = parse_partition(beta)?;
    let ctx = cfg.ctx()?;
    let g = cfg.geometry_or_c3()?;
    let v = amplitude(&ctx, &g, &beta, cfg.cutoff.max(beta.weight()))?;
    cfg.emit(
        || format_scalar(&v),
        || json!({ "geometry": g.to_string(), "beta": partition_json(&beta), "value": format_scalar(&v) }),
    );
    Ok(())
}

fn cmd_tau(cfg: &RunConfig) -> CmdResult {
    let ctx = cfg.ctx()?;
    let g = cfg.geometry_or_c3()?;
    let table = tau_schur_coefficients(&ctx, &g, cfg.max_weight, cfg.cutoff.max(cfg.max_weight))?;
    cfg.emit(
        || {
            table
                .iter()
                .map(|(p, v)| format!("{} {}", partition_json(p), format_scalar(v)))
                .collect::<Vec<_>>()
                .join("\n")
        },
        || {
            Value::Array(
                table
                    .iter()
                    .map(|(p, v)| json!({ "partition": partition_json(p), "value": format_scalar(v) }))
                    .collect(),
            )
        },
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match &cli.cmd {
        Cmd::Vertex { lam, mu, nu, cfg } => cmd_vertex(lam, mu, nu, cfg),
        Cmd::Verify { suite, cfg } => cmd_verify(suite, cfg),
        Cmd::Basis { j, cfg } => cmd_basis(*j, cfg),
        Cmd::Ksops { cfg } => cmd_ksops(cfg),
        Cmd::Amplitude { beta, cfg } => cmd_amplitude(beta, cfg),
        Cmd::Tau { cfg } => cmd_tau(cfg),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Degenerate(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
