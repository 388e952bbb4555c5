//! Command-line front end. Exit codes: 0 success, 1 a check failed,
//! 2 usage or input error, 3 precision too coarse to decide.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::arith::{fmt_ratio, parse_rational, MAX_E_DIGITS};
use crate::cache::{SigmaCache, CACHE_ENV};
use crate::kstability::{
    beta, check_barycenter_bound, logconcave_check, tau_of, vol_from_restricted, CurveFile, RestrictedVolumeProfile,
    VolumeCurve,
};
use crate::lattice::{
    pick_certificate, sigma_exact_2d, sigma_lower_bound, sigma_upper_search, BoundMethod, LatticePolygon, SigmaResult,
};
use crate::monomial::{colength, lct_monomial, supporting_normal, MonomialIdeal};
use crate::replication::replicate_all;
use crate::surface::{gamma_mult_bound, max_mult_from_selfint, pairing, DivisorClass, IntersectionForm};
use crate::thresholds::{min_n, verify_sufficiency_reductions, Cert, ThresholdError, ThresholdQuery, ThresholdRow, Which};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lctcert", version, about = "Exact certificates for thresholds, lattice-point minima and volume inequalities")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// σ witness cache (JSON lines).
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
    /// Seed for randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Decimal digits for enclosures of e.
    #[arg(long, global = true, default_value_t = 30)]
    pub precision: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Log canonical threshold of a monomial ideal given as exponent rows.
    LctMonomial { file: PathBuf },
    /// σ values: exact in the plane, bounds, or a witness search.
    Sigma(SigmaArgs),
    /// Pick certificate for a lattice polygon, e.g. "0,0;4,0;0,4".
    Pick {
        #[arg(long, allow_hyphen_values = true)]
        vertices: String,
    },
    /// Minimal dimension for a threshold family.
    Threshold(ThresholdArgs),
    /// Elementary inequalities behind the linear dimension bounds.
    Sufficiency {
        #[arg(long, default_value_t = 10)]
        r_max: u64,
        #[arg(long, default_value_t = 60)]
        a_max: u64,
    },
    /// β = A·Ln - ∫vol for a volume curve file.
    Beta {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long = "A", default_value = "1")]
        a: String,
    },
    /// Barycenter of a restricted-volume profile against τ/(n+1) + (n-1)η/(n+1).
    BarycenterBound {
        #[arg(long)]
        profile: PathBuf,
        /// Midpoint triples for the sampled log-concavity check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Intersection-form arithmetic on a surface.
    Surface {
        #[command(subcommand)]
        op: SurfaceOp,
    },
    /// Recompute every tabulated claim; writes JSON to OUT when given.
    Replicate { out: Option<PathBuf> },
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub lambda: String,
    #[arg(long, conflicts_with = "closed")]
    pub strict: bool,
    #[arg(long)]
    pub closed: bool,
    #[arg(long, group = "mode")]
    pub exact2d: bool,
    #[arg(long, group = "mode")]
    pub bounds: bool,
    #[arg(long, group = "mode")]
    pub search: bool,
    /// Candidate covectors for --search.
    #[arg(long, default_value_t = 400)]
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WhichArg {
    LctCpi,
    Superrigid,
    Conditional,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CertArg {
    Volume,
    Cube,
    Pick2dNa,
    Block,
    Best,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long, value_enum)]
    pub which: WhichArg,
    #[arg(long)]
    pub r: u64,
    #[arg(long, default_value_t = 1)]
    pub m: u64,
    #[arg(long, value_enum, default_value = "best")]
    pub cert: CertArg,
    #[arg(long, default_value_t = 100)]
    pub limit: u64,
    /// A claimed sufficient dimension to classify.
    #[arg(long)]
    pub claim: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum SurfaceOp {
    /// uᵀGv; matrices and vectors as "6,1;1,-2" and "2,-2".
    Pairing {
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Largest s >= 0 with (base - s·e_i)² >= lower.
    MaxMult {
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long)]
        curve_index: usize,
        #[arg(long, allow_hyphen_values = true)]
        lower: i64,
    },
    /// d/3 + (2/3)√M against 4.
    Gamma {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m2h: u64,
    },
}

struct Failure(i32, String);

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

type Outcome = Result<(i32, String), Failure>;

/// Parses `argv` (program name first) and runs it, writing to the given sinks.
pub fn run_with(argv: impl IntoIterator<Item = impl Into<OsString> + Clone>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((code, text)) => {
            let _ = writeln!(out, "{}", text.trim_end());
            code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::LctMonomial { file } => lct_cmd(cli, file),
        Command::Sigma(a) => sigma_cmd(cli, a),
        Command::Pick { vertices } => pick_cmd(cli, vertices),
        Command::Threshold(a) => threshold_cmd(cli, a),
        Command::Sufficiency { r_max, a_max } => sufficiency_cmd(cli, *r_max, *a_max),
        Command::Beta { curve, a } => beta_cmd(cli, curve, a),
        Command::BarycenterBound { profile, samples } => barycenter_cmd(cli, profile, *samples),
        Command::Surface { op } => surface_cmd(cli, op),
        Command::Replicate { out } => replicate_cmd(cli, out.as_deref()),
    }
}

fn render(cli: &Cli, v: Value, text: String) -> String {
    if cli.json {
        serde_json::to_string_pretty(&v).expect("json values serialize")
    } else {
        text
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn rational(s: &str) -> Result<BigRational, Failure> {
    parse_rational(s).map_err(|e| usage(format!("`{s}`: {e}")))
}

fn lct_cmd(cli: &Cli, file: &Path) -> Outcome {
    let ideal: MonomialIdeal = read(file)?.parse().map_err(usage)?;
    let lct = lct_monomial(&ideal);
    let normal = supporting_normal(&ideal).ok();
    let col = colength(&ideal);
    let normal_s: Option<Vec<String>> = normal.as_ref().map(|q| q.supporting_normal.iter().map(fmt_ratio).collect());
    let v = json!({
        "lct": fmt_ratio(&lct),
        "mu": fmt_ratio(&lct.recip()),
        "supporting_normal": normal_s,
        "colength": col.as_ref().map(|c| c.to_string()),
    });
    let mut text = format!("lct = {}\nmu = {}\n", fmt_ratio(&lct), fmt_ratio(&lct.recip()));
    if let Some(n) = &normal_s {
        text.push_str(&format!("supporting normal = ({})\n", n.join(", ")));
    }
    text.push_str(&format!("colength = {}\n", col.map_or("infinite".into(), |c| c.to_string())));
    Ok((EXIT_OK, render(cli, v, text)))
}

fn sigma_text(r: &SigmaResult) -> String {
    let a: Vec<String> = r.witness.a.iter().map(fmt_ratio).collect();
    let mut t = format!(
        "{} = {} ({:?})\nwitness a = ({})\nincluded = {:?}\nexcluded = {:?}\n",
        if r.strict { "sigma" } else { "sigma_bar" },
        r.value,
        r.exactness,
        a.join(", "),
        r.witness.included,
        r.witness.excluded
    );
    if let Some(lb) = &r.lower_bound {
        t.push_str(&format!("lower bound = {lb}\n"));
    }
    t
}

fn sigma_cmd(cli: &Cli, a: &SigmaArgs) -> Outcome {
    if a.strict == a.closed {
        return Err(usage("pass exactly one of --strict or --closed"));
    }
    let lambda = rational(&a.lambda)?;
    let strict = a.strict;
    if a.bounds {
        let methods = [BoundMethod::Pick2d, BoundMethod::Cube, BoundMethod::Volume, BoundMethod::Block];
        let found: Vec<_> = methods.iter().filter_map(|&m| sigma_lower_bound(a.n, &lambda, strict, m).ok()).collect();
        if found.is_empty() {
            return Err(usage("no lower-bound method applies"));
        }
        let rows: Vec<Value> = found
            .iter()
            .map(|b| json!({"method": format!("{:?}", b.method).to_uppercase(), "value": fmt_ratio(&b.value), "bound_strict": b.bound_strict}))
            .collect();
        let text = found
            .iter()
            .map(|b| format!("{:<8} {} {}", format!("{:?}", b.method).to_uppercase(), if b.bound_strict { ">" } else { ">=" }, fmt_ratio(&b.value)))
            .collect::<Vec<_>>()
            .join("\n");
        return Ok((EXIT_OK, render(cli, json!({"bounds": rows}), text)));
    }
    let two_d = a.n == 2 && lambda.is_integer() && !a.search;
    if a.exact2d && !two_d {
        return Err(usage("--exact2d needs n = 2 and an integer λ"));
    }
    let mut cache = match &cli.cache {
        Some(p) => Some(SigmaCache::open(p).map_err(usage)?),
        None => None,
    };
    let cached = cache.as_mut().and_then(|c| c.get(a.n, &lambda, strict));
    let result = match cached {
        Some(r) if two_d || !a.search => r,
        _ => {
            let r = if two_d {
                let m = lambda.to_integer().try_into().map_err(|_| usage("λ too large"))?;
                sigma_exact_2d(m, strict)
            } else {
                sigma_upper_search(a.n, &lambda, strict, a.budget, cli.seed)
            }
            .map_err(usage)?;
            r.verify().map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
            if let Some(c) = cache.as_mut() {
                c.put(&r).map_err(usage)?;
            }
            r
        }
    };
    let v = serde_json::to_value(result.to_record()).expect("record serializes");
    Ok((EXIT_OK, render(cli, v, sigma_text(&result))))
}

fn parse_pairs(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    s.split([';', ' '])
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("`{x}` is not an integer"))))
                .collect()
        })
        .collect()
}

fn pick_cmd(cli: &Cli, vertices: &str) -> Outcome {
    let pts = parse_pairs(vertices)?;
    if pts.iter().any(|p| p.len() != 2) {
        return Err(usage("vertices are x,y pairs"));
    }
    let poly = LatticePolygon::new(pts.iter().map(|p| (p[0], p[1])).collect()).map_err(usage)?;
    let c = pick_certificate(&poly).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
    let v = json!({"area": fmt_ratio(&c.area), "boundary": c.boundary, "interior": c.interior, "total": c.total});
    let text = format!("area = {}\nboundary = {}\ninterior = {}\ntotal = {}", fmt_ratio(&c.area), c.boundary, c.interior, c.total);
    Ok((EXIT_OK, render(cli, v, text)))
}

fn row_json(r: &ThresholdRow) -> Value {
    json!({
        "n": r.n,
        "lhs": r.lhs.to_string(),
        "rhs": r.rhs.as_ref().map(fmt_ratio),
        "rel": r.rel,
        "cert_used": r.cert_used,
        "pass": r.pass,
        "strict_form_pass": r.strict_form_pass,
    })
}

fn threshold_cmd(cli: &Cli, a: &ThresholdArgs) -> Outcome {
    let which = match a.which {
        WhichArg::LctCpi => Which::LctCpi,
        WhichArg::Superrigid => Which::Superrigid,
        WhichArg::Conditional => Which::Conditional,
    };
    let cert = match a.cert {
        CertArg::Volume => Cert::Volume,
        CertArg::Cube => Cert::Cube,
        CertArg::Pick2dNa => Cert::Pick2dNa,
        CertArg::Block => Cert::Block,
        CertArg::Best => Cert::Best,
    };
    let limit = a.limit.max(a.claim.unwrap_or(0));
    let mut rep = min_n(ThresholdQuery { r: a.r, m: a.m, cert }, which, limit).map_err(usage)?;
    if let Some(c) = a.claim {
        rep.claimed_n = Some(c);
        rep.claim_status = Some(rep.classify(c));
    }
    let v = json!({
        "which": rep.which,
        "r": a.r,
        "m": a.m,
        "cert": cert,
        "limit": limit,
        "start": rep.start,
        "minimal_n": rep.minimal_n,
        "strict_form_minimal_n": rep.strict_form_minimal_n,
        "monotone_tail": rep.monotone_tail,
        "non_monotone": rep.non_monotone,
        "claimed_n": rep.claimed_n,
        "claim_status": rep.claim_status,
        "table": rep.table.iter().map(row_json).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "minimal_n = {}\n",
        rep.minimal_n.map_or(format!("none up to {limit}"), |n| n.to_string())
    );
    if let Some(s) = rep.strict_form_minimal_n {
        text.push_str(&format!("strict form minimal_n = {s}\n"));
    }
    if let (Some(c), Some(s)) = (rep.claimed_n, rep.claim_status) {
        text.push_str(&format!("claim {c}: {}\n", serde_json::to_value(s).unwrap().as_str().unwrap_or("")));
    }
    if !rep.non_monotone.is_empty() {
        text.push_str(&format!("failing after minimal: {:?}\n", rep.non_monotone));
    }
    let code = if rep.minimal_n.is_some() && rep.monotone_tail { EXIT_OK } else { EXIT_FAIL };
    Ok((code, render(cli, v, text)))
}

fn sufficiency_cmd(cli: &Cli, r_max: u64, a_max: u64) -> Outcome {
    if cli.precision > MAX_E_DIGITS {
        return Err(usage(format!("--precision is at most {MAX_E_DIGITS}")));
    }
    match verify_sufficiency_reductions(r_max, a_max, cli.precision) {
        Ok(rep) => {
            let ok = rep.all_pass();
            let v = json!({"digits": rep.digits, "all_pass": ok, "first_checked": rep.first.len(), "second_checked": rep.second.len()});
            let text = format!("digits = {}\nall pass = {ok}", rep.digits);
            Ok((if ok { EXIT_OK } else { EXIT_FAIL }, render(cli, v, text)))
        }
        Err(ThresholdError::InconclusivePrecision { a }) => {
            Err(Failure(EXIT_INCONCLUSIVE, format!("enclosure too coarse at a = {a}; raise --precision")))
        }
        Err(e) => Err(usage(e)),
    }
}

fn curve_file(path: &Path) -> Result<CurveFile, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn beta_cmd(cli: &Cli, path: &Path, a: &str) -> Outcome {
    let a = rational(a)?;
    let curve = VolumeCurve::from_file(&curve_file(path)?).map_err(usage)?;
    let tau = tau_of(&curve).map_err(usage)?;
    let b = beta(&a, &curve);
    let integral = curve.vol().integral();
    let v = json!({"A": fmt_ratio(&a), "Ln": fmt_ratio(curve.ln()), "tau": fmt_ratio(&tau), "integral": fmt_ratio(&integral), "beta": fmt_ratio(&b)});
    let text = format!(
        "Ln = {}\ntau = {}\nintegral = {}\nbeta = {}",
        fmt_ratio(curve.ln()),
        fmt_ratio(&tau),
        fmt_ratio(&integral),
        fmt_ratio(&b)
    );
    Ok((EXIT_OK, render(cli, v, text)))
}

fn barycenter_cmd(cli: &Cli, path: &Path, samples: usize) -> Outcome {
    let profile = RestrictedVolumeProfile::from_file(&curve_file(path)?).map_err(usage)?;
    let chk = check_barycenter_bound(&profile).map_err(usage)?;
    let curve = vol_from_restricted(&profile).map_err(usage)?;
    let consistent = curve.vol().integral() / curve.ln() == chk.b;
    let head = profile.v().head(profile.eta());
    let logconcave = head.as_ref().map(|h| logconcave_check(h, samples));
    let v = json!({
        "b": fmt_ratio(&chk.b),
        "bound": fmt_ratio(&chk.bound),
        "holds": chk.holds,
        "equality": chk.equality,
        "integration_by_parts": consistent,
        "logconcave_sampled": logconcave,
    });
    let text = format!(
        "b = {}\nbound = {}\nholds = {}\nequality = {}\nintegration by parts = {consistent}\nlog-concave on [0, eta] (sampled) = {}",
        fmt_ratio(&chk.b),
        fmt_ratio(&chk.bound),
        chk.holds,
        chk.equality,
        logconcave.map_or("n/a".into(), |b| b.to_string())
    );
    Ok((if chk.holds && consistent { EXIT_OK } else { EXIT_FAIL }, render(cli, v, text)))
}

fn form(gram: &str) -> Result<IntersectionForm, Failure> {
    let rows = parse_pairs(gram)?;
    let labels = (0..rows.len()).map(|i| format!("e{i}")).collect();
    IntersectionForm::new(rows, labels).map_err(usage)
}

fn class(s: &str) -> Result<DivisorClass, Failure> {
    s.split(',').map(|t| rational(t.trim())).collect::<Result<_, _>>().map(DivisorClass)
}

fn surface_cmd(cli: &Cli, op: &SurfaceOp) -> Outcome {
    match op {
        SurfaceOp::Pairing { gram, u, v } => {
            let p = pairing(&form(gram)?, &class(u)?, &class(v)?).map_err(usage)?;
            Ok((EXIT_OK, render(cli, json!({"pairing": fmt_ratio(&p)}), fmt_ratio(&p))))
        }
        SurfaceOp::MaxMult { gram, base, curve_index, lower } => {
            let s = max_mult_from_selfint(&form(gram)?, &class(base)?, *curve_index, *lower)
                .map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
            Ok((EXIT_OK, render(cli, json!({"s_max": s}), format!("s <= {s}"))))
        }
        SurfaceOp::Gamma { d, m2h } => {
            let (val, below) = gamma_mult_bound(*d, *m2h);
            let v = json!({"value": val.to_string(), "less_than_4": below});
            Ok((EXIT_OK, render(cli, v, format!("{val} {} 4", if below { "<" } else { ">=" }))))
        }
    }
}

fn replicate_cmd(cli: &Cli, out: Option<&Path>) -> Outcome {
    let rep = replicate_all();
    let json = serde_json::to_string_pretty(&rep).expect("report serializes");
    let code = if rep.all_pass() { EXIT_OK } else { EXIT_FAIL };
    if let Some(p) = out {
        std::fs::write(p, format!("{json}\n")).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        return Ok((code, rep.table()));
    }
    Ok((code, if cli.json { json } else { rep.table() }))
}
