use std::path::Path;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use spectral_affine::conjugacy::{
    m1_criterion, make_conjugate, sierpinski_class, spectrality_criterion, ConjugacyMode, ConjugateWitness,
    SierpinskiLabel, Verdict,
};
use spectral_affine::fourier::{
    attractor_sample, default_eta, q_value, spectrum_candidate, summarize, GridSpec, MuHat, SampleMode, DEFAULT_DEPTH,
};
use spectral_affine::hadamard::{hadamard_residual, verify_triple, SearchOutcome, SearchPlan, DEFAULT_BUDGET};
use spectral_affine::maskzero::zero_set;
use spectral_affine::modlin::{gl_inverse_mod, is_prime};
use spectral_affine::ortho::{
    case_two_parameters, has_infinite_orthogonal, nonspectral_certificate, nstar_bounds, transport_inclusion_check,
    NStarParams, TransportConstants, UpperMethod,
};
use spectral_affine::{DigitSet, IntMatrix, RationalPoint};

use crate::json as enc;
use crate::output::{csv, point_header};
use crate::problem::{ProblemError, ProblemFile};
use crate::{Command, Options};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Library(#[from] spectral_affine::Error),
    #[error("missing required field `{0}`")]
    Missing(&'static str),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CommandError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.display().to_string(), source }
    }

    pub fn kind(&self) -> String {
        match self {
            Self::Problem(e) => e.kind().to_string(),
            Self::Library(e) => {
                let debug = format!("{e:?}");
                debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("LibraryError").to_string()
            }
            Self::Missing(_) => "ValidationError".into(),
            Self::Usage(_) => "UsageError".into(),
            Self::Io { .. } => "IoError".into(),
        }
    }
}

type Result<T> = std::result::Result<T, CommandError>;

/// What a command produced, before it is wrapped into a report.
pub struct Outcome {
    pub input: Value,
    pub parameters: Value,
    pub result: Value,
    pub undetermined: bool,
    pub csv: Option<String>,
}

struct Ctx<'a> {
    problem: &'a ProblemFile,
    opts: &'a Options,
}

impl Ctx<'_> {
    fn m(&self) -> Result<&IntMatrix> {
        self.problem.m.as_ref().ok_or(CommandError::Missing("M"))
    }

    fn d(&self) -> Result<&DigitSet> {
        self.problem.d.as_ref().ok_or(CommandError::Missing("D"))
    }

    fn b(&self) -> Result<&IntMatrix> {
        self.problem.b.as_ref().ok_or(CommandError::Missing("B"))
    }

    fn c(&self) -> Result<&[RationalPoint]> {
        self.problem.c.as_deref().ok_or(CommandError::Missing("C"))
    }

    /// `p` from the problem, else `|D|` when that is prime.
    fn p(&self) -> Result<u64> {
        if let Some(p) = self.problem.p {
            return Ok(p);
        }
        let k = self.d()?.len() as u64;
        if is_prime(k) {
            Ok(k)
        } else {
            Err(CommandError::Missing("p"))
        }
    }

    fn mode(&self) -> ConjugacyMode {
        self.problem.mode.unwrap_or(ConjugacyMode::I)
    }

    fn depth(&self) -> usize {
        self.opts.depth.or(self.problem.depth).map_or(DEFAULT_DEPTH, |d| d as usize)
    }

    fn levels(&self, default: u32) -> u32 {
        self.opts.levels.or(self.problem.levels).unwrap_or(default)
    }

    fn budget(&self) -> Option<u64> {
        self.opts.budget.or(self.problem.budget)
    }

    fn seed(&self) -> Option<u64> {
        self.opts.seed.or(self.problem.seed)
    }

    fn eta(&self) -> Option<BigRational> {
        self.opts.eta.clone().or_else(|| self.problem.eta.clone())
    }
}

fn outcome(ctx: &Ctx, parameters: Value, result: Value) -> Outcome {
    Outcome { input: ctx.problem.raw.clone(), parameters, result, undetermined: false, csv: None }
}

pub fn dispatch(command: Command, problem: &ProblemFile, opts: &Options) -> Result<Outcome> {
    let ctx = Ctx { problem, opts };
    match command {
        Command::ZeroSet => zero_set_cmd(&ctx),
        Command::FindHadamard => find_hadamard(&ctx),
        Command::VerifyTriple => verify_triple_cmd(&ctx),
        Command::Conjugate => conjugate(&ctx),
        Command::Classify => classify(&ctx),
        Command::Criterion => criterion(&ctx),
        Command::InfiniteOrthogonal => infinite_orthogonal(&ctx),
        Command::Nstar => nstar(&ctx),
        Command::NonspectralCert => nonspectral_cert(&ctx),
        Command::TransportCheck => transport_check(&ctx),
        Command::FourierEval => fourier_eval(&ctx),
        Command::Attractor => attractor(&ctx),
        Command::Spectrum => spectrum(&ctx),
        Command::QScan => q_scan(&ctx),
    }
}

fn zero_set_cmd(ctx: &Ctx) -> Result<Outcome> {
    let hints = ctx.opts.q_hints.clone().or_else(|| ctx.problem.q_hints.clone()).unwrap_or_default();
    if hints.contains(&0) {
        return Err(CommandError::usage("--q-hints entries must be positive"));
    }
    let z = zero_set(ctx.d()?, &hints)?;
    let result = json!({
        "complete": z.is_complete(),
        "q": enc::big(z.q()),
        "count": z.len(),
        "symmetric": z.is_symmetric(),
        "min_torus_norm": z.min_torus_norm().as_ref().map(enc::rational),
        "points": enc::points(z.points()),
    });
    Ok(outcome(ctx, json!({ "q_hints": hints }), result))
}

/// Runs branches a chunk at a time so a found set or an exhausted budget
/// stops the search without visiting later branches.
fn find_hadamard(ctx: &Ctx) -> Result<Outcome> {
    let (m, d) = (ctx.m()?, ctx.d()?);
    let budget = ctx.budget().unwrap_or(DEFAULT_BUDGET);
    let plan = SearchPlan::new(m, d)?;
    let chunk = rayon::current_num_threads().max(1);
    let mut results = Vec::new();
    let mut used = 0u64;
    let mut next = 0;
    while next < plan.branch_count() {
        let end = (next + chunk).min(plan.branch_count());
        let batch: Vec<_> = (next..end).into_par_iter().map(|b| plan.search_branch(b, budget)).collect();
        let mut stop = false;
        for r in &batch {
            used = used.saturating_add(r.nodes);
            stop |= r.exhausted || r.found.is_some() || used > budget;
        }
        results.extend(batch);
        next = end;
        if stop {
            break;
        }
    }
    let search = plan.reduce(&results, budget);
    let (found, s) = match &search.outcome {
        SearchOutcome::Found(s) => (json!(true), enc::digits(s)),
        SearchOutcome::NotFound => (json!(false), Value::Null),
        SearchOutcome::Undetermined => (json!("undetermined"), Value::Null),
    };
    let result = json!({
        "found": found,
        "S": s,
        "search_space": enc::big(&search.search_space),
        "nodes": search.nodes,
        "budget": search.budget,
    });
    let mut out = outcome(ctx, json!({ "budget": budget }), result);
    out.undetermined = search.outcome == SearchOutcome::Undetermined;
    Ok(out)
}

fn verify_triple_cmd(ctx: &Ctx) -> Result<Outcome> {
    let (m, d) = (ctx.m()?, ctx.d()?);
    let s = ctx.problem.s.as_ref().ok_or(CommandError::Missing("S"))?;
    let verified = verify_triple(m, d, s)?;
    let residual = hadamard_residual(m, d, s)?;
    Ok(outcome(ctx, json!({}), json!({ "verified": verified, "residual": enc::float(residual) })))
}

fn mode_name(mode: ConjugacyMode) -> &'static str {
    match mode {
        ConjugacyMode::I => "i",
        ConjugacyMode::II => "ii",
    }
}

fn conjugate(ctx: &Ctx) -> Result<Outcome> {
    let (m, d, b, p, mode) = (ctx.m()?, ctx.d()?, ctx.b()?, ctx.p()?, ctx.mode());
    let (mt, dt, w) = make_conjugate(m, d, b, p, mode)?;
    let result = json!({
        "M_tilde": enc::matrix(&mt),
        "D_tilde": enc::digits(&dt),
        "A": enc::matrix(&w.a),
        "B": enc::matrix(&w.b),
    });
    Ok(outcome(ctx, json!({ "p": p, "mode": mode_name(mode) }), result))
}

fn label(l: SierpinskiLabel) -> &'static str {
    match l {
        SierpinskiLabel::M1 => "M1",
        SierpinskiLabel::M2 => "M2",
        SierpinskiLabel::Other => "Other",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Spectral => "spectral",
        Verdict::NonSpectral => "non-spectral",
    }
}

fn criterion_json(m: &IntMatrix, d: &DigitSet) -> Result<Value> {
    let r = spectrality_criterion(m, d)?;
    Ok(json!({
        "verdict": verdict_name(r.verdict),
        "A": enc::matrix(&r.a),
        "B": enc::matrix(&r.b),
        "AMB": enc::matrix(&r.amb),
    }))
}

fn classify(ctx: &Ctx) -> Result<Outcome> {
    let m = ctx.m()?;
    let default_d = DigitSet::from_i64(&[[0, 0], [1, 0], [0, 1]]);
    let d = ctx.problem.d.as_ref().unwrap_or(&default_d);
    let class = sierpinski_class(m)?;
    let residue: Vec<Vec<u64>> = (0..2).map(|i| (0..2).map(|j| class.residue.get(i, j)).collect()).collect();
    let digit_criterion = match criterion_json(m, d) {
        Ok(v) => v,
        Err(e) => json!({ "verdict": Value::Null, "error": e.to_string() }),
    };
    let result = json!({
        "class": label(class.class),
        "residue": residue,
        "m1_criterion": m1_criterion(m)?,
        "digit_criterion": digit_criterion,
    });
    Ok(outcome(ctx, json!({ "D": enc::digits(d) }), result))
}

fn criterion(ctx: &Ctx) -> Result<Outcome> {
    let result = criterion_json(ctx.m()?, ctx.d()?)?;
    Ok(outcome(ctx, json!({}), result))
}

fn infinite_orthogonal(ctx: &Ctx) -> Result<Outcome> {
    let r = has_infinite_orthogonal(ctx.m()?, ctx.d()?)?;
    let witness = r.witness.as_ref().map(|(j, z)| json!({ "j": j, "z": enc::point(z) }));
    Ok(outcome(ctx, json!({}), json!({ "exists": r.exists, "witness": witness })))
}

fn nstar(ctx: &Ctx) -> Result<Outcome> {
    let (m, d, p) = (ctx.m()?, ctx.d()?, ctx.p()?);
    let defaults = NStarParams::defaults(p, m.dim());
    let params = NStarParams {
        depth: ctx.opts.j.or(ctx.problem.j).unwrap_or(defaults.depth),
        radius: ctx.opts.r.or(ctx.problem.r).unwrap_or(defaults.radius),
        budget: ctx.budget().unwrap_or(defaults.budget),
    };
    let r = nstar_bounds(m, d, p, params)?;
    let method = match r.method {
        UpperMethod::Clique => "clique",
        UpperMethod::TrivialPn => "trivial_pn",
        UpperMethod::Unbounded => "unbounded",
    };
    let result = json!({
        "lower": r.lower,
        "upper": r.upper,
        "method": method,
        "grid": r.grid,
        "witness": enc::points(r.witness.frequencies()),
        "witness_verified": r.witness.is_verified(),
        "search_complete": r.search_complete,
        "budget": params.budget,
    });
    let parameters = json!({ "p": p, "J": params.depth, "R": params.radius, "budget": params.budget });
    let mut out = outcome(ctx, parameters, result);
    out.undetermined = !r.search_complete && r.upper.is_none_or(|u| r.lower < u);
    Ok(out)
}

fn nonspectral_cert(ctx: &Ctx) -> Result<Outcome> {
    let (m, d) = (ctx.m()?, ctx.d()?);
    let (l, j0, source) = match (&ctx.problem.l, ctx.problem.j0) {
        (Some(l), Some(j0)) => (l.clone(), j0, "input"),
        (None, None) => match case_two_parameters(m, d)? {
            Some((l, j0)) => (l, j0, "derived"),
            None => return Err(CommandError::usage("no certificate parameters apply to this pair; supply L and j0")),
        },
        _ => return Err(CommandError::usage("L and j0 must be given together")),
    };
    let c = nonspectral_certificate(m, d, &l, j0)?;
    let result = json!({
        "valid": c.is_valid(),
        "difference_closure": c.difference_closure,
        "emptiness_window": c.emptiness_window,
        "integrality_tail": c.integrality_tail,
    });
    Ok(outcome(ctx, json!({ "L": enc::rational(&l), "j0": j0, "source": source }), result))
}

fn transport_check(ctx: &Ctx) -> Result<Outcome> {
    let (m, d, b, p, mode) = (ctx.m()?, ctx.d()?, ctx.b()?, ctx.p()?, ctx.mode());
    let depth = ctx.opts.depth.or(ctx.problem.depth).unwrap_or(4);
    let w = ConjugateWitness { p, a: gl_inverse_mod(b, p)?, b: b.clone(), mode };
    let r = transport_inclusion_check(m, d, &w, depth)?;
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({ "direction": if v.forward { "forward" } else { "backward" }, "j": v.j, "z": enc::point(&v.z) }))
        .collect();
    let result = json!({
        "holds": r.holds(),
        "constants": match r.constants { TransportConstants::C => "C", TransportConstants::D => "D" },
        "k1": enc::big(&r.k1),
        "k2": enc::big(&r.k2),
        "M_tilde": enc::matrix(&r.m_tilde),
        "D_tilde": enc::digits(&r.d_tilde),
        "checked": r.checked,
        "violations": violations,
    });
    Ok(outcome(ctx, json!({ "p": p, "mode": mode_name(mode), "depth": depth }), result))
}

fn fourier_eval(ctx: &Ctx) -> Result<Outcome> {
    let (m, d) = (ctx.m()?, ctx.d()?);
    let xi = ctx.problem.xi.as_ref().ok_or(CommandError::Missing("xi"))?;
    let depth = ctx.depth();
    if depth == 0 {
        return Err(CommandError::usage("--depth must be at least 1"));
    }
    let mu = MuHat::new(m, d)?;
    let rows: Vec<(Value, f64)> = xi
        .par_iter()
        .map(|x| {
            let f = x.to_f64();
            let v = mu.eval(&f, depth);
            let drift = (v - mu.eval(&f, 2 * depth)).norm();
            let row = json!({ "xi": enc::point(x), "re": enc::float(v.re), "im": enc::float(v.im), "abs": enc::float(v.norm()) });
            (row, drift)
        })
        .collect();
    let drift = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let result = json!({
        "values": rows.into_iter().map(|r| r.0).collect::<Vec<_>>(),
        "convergence_drift": enc::float(drift),
    });
    Ok(outcome(ctx, json!({ "depth": depth }), result))
}

fn cloud_csv(points: &[Vec<f64>], values: Option<&[f64]>) -> String {
    let n = points.first().map_or(2, Vec::len);
    let header = point_header(n, values.is_some());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = points.iter().enumerate().map(|(i, p)| {
        let mut row = p.clone();
        if let Some(v) = values {
            row.push(v[i]);
        }
        row
    });
    csv(&header, rows)
}

fn attractor(ctx: &Ctx) -> Result<Outcome> {
    let (m, d) = (ctx.m()?, ctx.d()?);
    let (mode, parameters) = match ctx.seed() {
        Some(seed) => {
            let n = ctx.problem.samples.unwrap_or(10_000) as usize;
            (SampleMode::ChaosGame { n, seed }, json!({ "mode": "chaos_game", "samples": n, "seed": seed }))
        }
        None => {
            let k = ctx.levels(8);
            (SampleMode::DigitExpansion(k), json!({ "mode": "digit_expansion", "levels": k }))
        }
    };
    let cloud = attractor_sample(m, d, mode)?;
    let result = json!({
        "count": cloud.points.len(),
        "epsilon": enc::float(cloud.epsilon),
        "points": cloud.points.iter().map(|p| enc::floats(p)).collect::<Vec<_>>(),
    });
    let mut out = outcome(ctx, parameters, result);
    out.csv = Some(cloud_csv(&cloud.points, None));
    Ok(out)
}

fn spectrum(ctx: &Ctx) -> Result<Outcome> {
    let (m, d, c) = (ctx.m()?, ctx.d()?, ctx.c()?);
    let levels = ctx.levels(3);
    let cand = spectrum_candidate(m, d, c, levels)?;
    let failing = cand.failing_pair.map(|(i, j)| {
        json!({ "indices": [i, j], "points": enc::points([&cand.frequencies[i], &cand.frequencies[j]]) })
    });
    let result = json!({
        "count": cand.frequencies.len(),
        "distinct": cand.distinct,
        "orthogonal": cand.orthogonal,
        "failing_pair": failing,
        "frequencies": enc::points(&cand.frequencies),
    });
    Ok(outcome(ctx, json!({ "levels": levels }), result))
}

const ETA_LEVELS: u32 = 8;

fn q_scan(ctx: &Ctx) -> Result<Outcome> {
    let (m, d, c) = (ctx.m()?, ctx.d()?, ctx.c()?);
    let levels = ctx.levels(3);
    let depth = ctx.depth();
    let resolution = ctx.opts.grid.or(ctx.problem.grid).unwrap_or(21) as usize;
    if resolution == 0 {
        return Err(CommandError::usage("--grid must be positive"));
    }
    let (eta, eta_source) = match ctx.eta() {
        Some(e) => (e.to_f64().unwrap_or(f64::NAN), json!(enc::rational(&e))),
        None => (default_eta(m, d, c, ETA_LEVELS)?, json!("default")),
    };
    if eta.is_nan() || eta <= 0.0 {
        return Err(CommandError::usage(format!("eta must be positive, got {eta}")));
    }
    let cand = spectrum_candidate(m, d, c, levels)?;
    let mu = MuHat::new(m, d)?;
    let lambda: Vec<Vec<f64>> = cand.frequencies.iter().map(RationalPoint::to_f64).collect();
    let grid = GridSpec { center: vec![0.0; m.dim()], eta, resolution };
    let values: Vec<(Vec<f64>, f64)> = grid
        .points()
        .into_par_iter()
        .map(|xi| {
            let q = q_value(&mu, &lambda, &xi, depth);
            (xi, q)
        })
        .collect();
    let scan = summarize(grid, depth, values);
    let (points, qs): (Vec<Vec<f64>>, Vec<f64>) = scan.values.iter().cloned().unzip();
    let result = json!({
        "min_q": enc::float(scan.min_q),
        "max_q": enc::float(scan.max_q),
        "eta": enc::float(eta),
        "frequencies": cand.frequencies.len(),
        "orthogonal": cand.orthogonal,
        "values": scan.values.iter().map(|(x, q)| {
            let mut row = x.clone();
            row.push(*q);
            enc::floats(&row)
        }).collect::<Vec<_>>(),
    });
    let parameters = json!({
        "levels": levels,
        "depth": depth,
        "grid": resolution,
        "eta": eta_source,
    });
    let mut out = outcome(ctx, parameters, result);
    out.csv = Some(cloud_csv(&points, Some(&qs)));
    Ok(out)
}
