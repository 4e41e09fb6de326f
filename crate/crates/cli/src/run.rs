//! Task pipeline: builds the subject algebra (and T when given) and runs
//! tasks in order.

use std::sync::Arc;

use ctperiod::algebra::{algebra_from_quiver, find_isomorphism, is_self_injective, quiver_of, FDAlgebra};
use ctperiod::cluster::{
    check_rigid, lemma21, periodic_object_check, realize_module, resolution_2_10, thm25_resolution, CTObject, ClusterTrace,
    Frobenius, MFBackend, ModuleBackend, StableEnd, TwistData, ORDER_BOUND,
};
use ctperiod::kernel::{Matrix, PrimeField};
use ctperiod::mfcat::{bikr_loops, bikr_tilting, Curve, GradedMF, MF1};
use ctperiod::periodicity::{
    cy_duality_check, divisibility_check, omega_twist_check, period_bound, period_of, tor_lambda_suite, BimoduleSetting,
    Divisibility,
};
use ctperiod::repcat::FDModule;
use ctperiod::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{Report, Status, TaskReport};
use crate::scenario::{BackendSpec, Scenario, SummandSpec, TaskKind, TaskSpec, TiltingKeyword, TiltingSpec};
use crate::CliError;

const ISO_SEARCH_TRIALS: usize = 200;

struct Cluster<B: Frobenius> {
    t: CTObject<B>,
    end: Option<StableEnd<B>>,
    twist: Option<TwistData<B>>,
}

impl<B: Frobenius> Cluster<B> {
    fn new(t: CTObject<B>) -> Self {
        Cluster { t, end: None, twist: None }
    }

    fn end(&mut self) -> Result<&mut StableEnd<B>, Error> {
        if self.end.is_none() {
            self.end = Some(StableEnd::compute(&self.t)?);
        }
        Ok(self.end.as_mut().expect("set above"))
    }

    fn twist(&mut self) -> Result<&TwistData<B>, Error> {
        if self.twist.is_none() {
            self.end()?;
            let tw = periodic_object_check(&self.t, self.end.as_ref().expect("computed"))?;
            self.twist = Some(tw);
        }
        Ok(self.twist.as_ref().expect("set above"))
    }

    /// Order r of σ when certified; errors other than a failed hypothesis
    /// propagate.
    fn order(&mut self) -> Result<Option<u64>, Error> {
        match self.twist() {
            Ok(tw) => Ok(tw.order.value()),
            Err(Error::Hypothesis(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

enum Subject {
    Algebra(Arc<FDAlgebra>),
    Modules(Box<Cluster<ModuleBackend>>),
    Curve(Box<Cluster<MFBackend>>, Arc<Curve>),
}

impl Subject {
    fn gamma(&mut self) -> Result<Arc<FDAlgebra>, Error> {
        Ok(match self {
            Subject::Algebra(a) => a.clone(),
            Subject::Modules(c) => c.end()?.gamma.clone(),
            Subject::Curve(c, _) => c.end()?.gamma.clone(),
        })
    }

    fn d(&self, scenario_d: usize) -> usize {
        match self {
            Subject::Algebra(_) => scenario_d,
            Subject::Modules(c) => c.t.d,
            Subject::Curve(c, _) => c.t.d,
        }
    }
}

fn summand_label(s: &SummandSpec, i: usize) -> String {
    match s {
        SummandSpec::Regular => "A".into(),
        SummandSpec::Projective(v) => format!("P{v}"),
        SummandSpec::Simple(v) => format!("S{v}"),
        SummandSpec::Truncated { vertex, loewy } => format!("P{vertex}/rad^{loewy}"),
        SummandSpec::Explicit { .. } => format!("M{i}"),
        SummandSpec::Mf(idx) => format!("mf{idx:?}"),
    }
}

fn build_summand(a: &Arc<FDAlgebra>, s: &SummandSpec, i: usize) -> Result<FDModule, CliError> {
    let loc = |msg: String| CliError::Input(format!("tilting[{i}]: {msg}"));
    let vertex = |v: usize| if v < a.num_vertices() { Ok(v) } else { Err(loc(format!("vertex {v} out of range"))) };
    match s {
        SummandSpec::Regular => Ok(FDModule::regular(a.clone())),
        SummandSpec::Projective(v) => Ok(FDModule::projective(a.clone(), vertex(*v)?).0),
        SummandSpec::Simple(v) => Ok(FDModule::simple(a.clone(), vertex(*v)?)),
        SummandSpec::Truncated { vertex: v, loewy } => {
            let v = vertex(*v)?;
            let (p, basis) = FDModule::projective(a.clone(), v);
            let mut power: Vec<Vec<u32>> = vec![a.unit().to_vec()];
            for _ in 0..*loewy {
                power = a.product_span(&power, a.radical());
            }
            let e = &a.idempotents()[v];
            let sys = Matrix::from_columns(a.field(), a.dim(), &basis);
            let sub: Vec<Vec<u32>> = power
                .iter()
                .map(|x| sys.solve(&a.mul(e, x)).ok_or_else(|| loc("radical power outside e_v A".into())))
                .collect::<Result<_, _>>()?;
            Ok(p.quotient(&sub).0)
        }
        SummandSpec::Explicit { dim, action } => {
            let f = a.field();
            let mats = action
                .iter()
                .map(|rows| if rows.is_empty() { Ok(Matrix::zeros(f, 0, 0)) } else { Matrix::from_rows(f, rows) })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| loc(e.to_string()))?;
            FDModule::new(a.clone(), *dim, mats).map_err(|e| loc(e.to_string()))
        }
        SummandSpec::Mf(_) => Err(loc("\"mf\" needs a plane-curve backend".into())),
    }
}

fn build_subject(s: &Scenario, seed: u64) -> Result<Subject, CliError> {
    let field = PrimeField::new(s.field.p).map_err(|e| CliError::Input(format!("field.p: {e}")))?;
    match &s.backend {
        BackendSpec::QuiverAlgebra { presentation } => {
            let a = algebra_from_quiver(presentation, field).map_err(|e| CliError::Input(format!("backend: {e}")))?;
            match &s.tilting {
                None => Ok(Subject::Algebra(a)),
                Some(TiltingSpec::List(list)) => {
                    let summands = list.iter().enumerate().map(|(i, x)| build_summand(&a, x, i)).collect::<Result<_, _>>()?;
                    let labels = list.iter().enumerate().map(|(i, x)| summand_label(x, i)).collect();
                    let be = ModuleBackend::new(a.clone()).map_err(|e| CliError::Input(format!("backend: {e}")))?;
                    let t = CTObject::new(be, summands, labels, s.d, seed).map_err(|e| CliError::Input(format!("tilting: {e}")))?;
                    Ok(Subject::Modules(Box::new(Cluster::new(t))))
                }
                Some(TiltingSpec::Keyword(TiltingKeyword::Bikr)) => {
                    Err(CliError::Input("tilting: \"bikr\" needs a plane-curve backend".into()))
                }
            }
        }
        BackendSpec::PlaneCurve { factors } => {
            let refs: Vec<&str> = factors.iter().map(|f| f.as_str()).collect();
            let curve = Curve::parse(field, &refs).map_err(|e| CliError::Input(format!("backend.factors: {e}")))?;
            let mfs: Vec<MF1> = match &s.tilting {
                Some(TiltingSpec::Keyword(TiltingKeyword::Bikr)) => {
                    bikr_tilting(&curve).map_err(|e| CliError::Input(format!("tilting: {e}")))?
                }
                Some(TiltingSpec::List(list)) => list
                    .iter()
                    .enumerate()
                    .map(|(i, x)| match x {
                        SummandSpec::Mf(idx) => MF1::new(&curve, idx).map_err(|e| CliError::Input(format!("tilting[{i}]: {e}"))),
                        _ => Err(CliError::Input(format!("tilting[{i}]: plane-curve summands must be \"mf\""))),
                    })
                    .collect::<Result<_, _>>()?,
                None => return Err(CliError::Input("tilting: required for a plane-curve backend".into())),
            };
            let objs = mfs
                .iter()
                .map(GradedMF::from_mf1)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Input(format!("tilting: {e}")))?;
            let labels = mfs.iter().map(|m| m.to_string()).collect();
            let be = MFBackend::new(curve.clone()).map_err(|e| CliError::Input(format!("backend: {e}")))?;
            let t = CTObject::new(be, objs, labels, s.d, seed).map_err(|e| CliError::Input(format!("tilting: {e}")))?;
            Ok(Subject::Curve(Box::new(Cluster::new(t)), curve))
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

/// Outcome of one task before expectations are applied.
struct Outcome {
    status: Status,
    summary: String,
    payload: Value,
    certificate: Option<Value>,
}

impl Outcome {
    fn new(status: Status, summary: impl Into<String>, payload: Value) -> Self {
        Outcome { status, summary: summary.into(), payload, certificate: None }
    }

    fn check(ok: bool, summary: impl Into<String>, payload: Value) -> Self {
        Self::new(if ok { Status::Verified } else { Status::Failed }, summary, payload)
    }

    fn from_error(e: Error) -> Result<Self, CliError> {
        let status = match &e {
            Error::Input(_) => return Err(CliError::Input(e.to_string())),
            Error::NotApplicable(_) | Error::Unsupported(_) => Status::NotApplicable,
            Error::Inconclusive(_) => Status::Inconclusive,
            _ => Status::Failed,
        };
        Ok(Outcome::new(status, e.to_string(), json!({ "error": e.to_string() })))
    }
}

fn verdict(holds: Option<bool>) -> Status {
    match holds {
        Some(true) => Status::Verified,
        Some(false) => Status::Failed,
        None => Status::Inconclusive,
    }
}

fn quiver_payload(a: &FDAlgebra) -> Result<Value, Error> {
    let q = quiver_of(a)?;
    Ok(json!({ "vertices": q.vertices, "arrows": q.arrows, "loops": q.loops() }))
}

fn parse_x(x: &str, gamma: &Arc<FDAlgebra>) -> Result<FDModule, CliError> {
    let (kind, v) = x.split_once(':').ok_or_else(|| CliError::Input(format!("x: expected kind:vertex, got {x:?}")))?;
    let v: usize = v.trim().parse().map_err(|_| CliError::Input(format!("x: bad vertex in {x:?}")))?;
    if v >= gamma.num_vertices() {
        return Err(CliError::Input(format!("x: vertex {v} out of range")));
    }
    match kind.trim() {
        "simple" => Ok(FDModule::simple(gamma.clone(), v)),
        "projective" => Ok(FDModule::projective(gamma.clone(), v).0),
        k => Err(CliError::Input(format!("x: unknown module kind {k:?}"))),
    }
}

fn cluster_task<B: Frobenius>(c: &mut Cluster<B>, kind: &TaskKind, seed: u64) -> Result<Option<Outcome>, Error> {
    let out = match kind {
        TaskKind::StableEnd => {
            c.end()?;
            let end = c.end.as_ref().expect("computed");
            let labels: Vec<String> = end.vertices.iter().map(|&v| c.t.labels[v].clone()).collect();
            let si = is_self_injective(&end.gamma)?;
            let payload = json!({
                "dim": end.dim(),
                "vertices": labels,
                "self_injective": si,
                "quiver": quiver_payload(&end.gamma)?,
            });
            Outcome::new(Status::Verified, format!("dim Γ = {}, {} vertices", end.dim(), labels.len()), payload)
        }
        TaskKind::Rigid => {
            let r = check_rigid(&c.t)?;
            Outcome::check(r.rigid, format!("rigid: {}", r.rigid), to_value(&r))
        }
        TaskKind::Lemma21 => {
            let l = lemma21(&c.t)?;
            let ok = l.cond1 && l.cond2 && l.agree;
            Outcome::check(ok, format!("cond1 {}, cond2 {}", l.cond1, l.cond2), to_value(&l))
        }
        TaskKind::Twist => {
            let tw = c.twist()?;
            let order = tw.order.value();
            let payload = json!({
                "permutation": tw.permutation,
                "r": order,
                "bound": ORDER_BOUND,
                "sigma": tw.sigma.matrix.to_signed_rows(),
            });
            let status = if order.is_some() { Status::Verified } else { Status::Inconclusive };
            let summary = match order {
                Some(r) => format!("r = {r}"),
                None => format!("r not found ≤ {ORDER_BOUND}"),
            };
            Outcome::new(status, summary, payload)
        }
        TaskKind::TwistedSyzygy => {
            c.twist()?;
            let end = c.end.as_ref().expect("computed");
            let tw = c.twist.as_ref().expect("computed");
            let s = BimoduleSetting::new(&end.gamma)?;
            let rep = omega_twist_check(&s, &tw.sigma, c.t.d, seed)?;
            let mut o = Outcome::new(verdict(rep.holds), format!("Ω^{} Γ ≅ σΓ₁: {}", rep.shift, rep.verdict), to_value(&rep));
            if let (Some(w), Some(m)) = (&rep.witness, &rep.syzygy) {
                o.certificate = Some(json!({
                    "kind": "bimodule-iso",
                    "target": { "twisted": tw.sigma.matrix.to_signed_rows() },
                    "algebra": s.core.export(),
                    "source": m.export(),
                    "witness": w,
                }));
            }
            o
        }
        TaskKind::Resolve { .. } | TaskKind::Resolution210 { .. } => unreachable!("handled by the caller"),
        _ => return Ok(None),
    };
    Ok(Some(out))
}

fn trace_payload(trace: &ClusterTrace) -> Value {
    to_value(trace)
}

fn resolve_task<B: Frobenius>(c: &mut Cluster<B>, m: &FDModule) -> Result<Outcome, Error> {
    c.end()?;
    let end = c.end.as_ref().expect("computed");
    let r = realize_module(&c.t, end, m)?;
    let trace = thm25_resolution(&c.t, end, &r.object)?;
    let ok = trace.all_passed();
    let passed = trace.certificates.iter().filter(|x| x.passed).count();
    let payload = json!({
        "object": c.t.backend.describe(&r.object),
        "in_e_d_minus_1": r.in_e_d_minus_1,
        "trace": trace_payload(&trace),
    });
    Ok(Outcome::check(ok, format!("{passed}/{} certificates passed", trace.certificates.len()), payload))
}

fn resolution_210_task<B: Frobenius>(c: &mut Cluster<B>, summand: Option<usize>) -> Result<Outcome, Error> {
    c.end()?;
    let end = c.end.as_ref().expect("computed");
    let which = match summand {
        Some(s) => vec![s],
        None => c.t.nonprojective()?,
    };
    let mut runs = Vec::new();
    let mut ok = true;
    for s in which {
        let trace = resolution_2_10(&c.t, end, s)?;
        ok &= trace.all_passed();
        runs.push(json!({ "summand": s, "label": c.t.labels.get(s), "trace": trace_payload(&trace) }));
    }
    let n = runs.len();
    Ok(Outcome::check(ok, format!("{n} summand(s), all certificates passed: {ok}"), json!({ "runs": runs })))
}

fn period_task(subject: &mut Subject, d: usize, nmax: Option<usize>, seed: u64) -> Result<Outcome, Error> {
    let gamma = subject.gamma()?;
    let r = match subject {
        Subject::Algebra(_) => None,
        Subject::Modules(c) => c.order()?,
        Subject::Curve(c, _) => c.order()?,
    };
    let nmax = nmax.unwrap_or_else(|| period_bound(d, r));
    let s = BimoduleSetting::for_period(&gamma)?;
    let (rep, res) = period_of(&s, nmax, seed)?;
    let div = divisibility_check(rep.period, d, r);
    let mut payload = to_value(&rep);
    payload["d"] = json!(d);
    payload["r"] = json!(r);
    payload["divisibility"] = to_value(&div);
    let (status, summary) = match rep.period {
        None => (Status::Inconclusive, format!("none ≤ {nmax}")),
        Some(p) => {
            let status = if div.verdict == Divisibility::DoesNotDivide {
                Status::Failed
            } else if rep.least_certified && rep.witness_verified {
                Status::Verified
            } else {
                Status::Inconclusive
            };
            let tail = match (div.verdict, div.bound) {
                (Divisibility::Divides, Some(b)) => format!("; {p} | {b}"),
                (Divisibility::DoesNotDivide, Some(b)) => format!("; {p} does not divide {b}"),
                _ => String::new(),
            };
            (status, format!("period {p}{tail}"))
        }
    };
    let mut o = Outcome::new(status, summary, payload);
    if let (Some(p), Some(w)) = (rep.period, &rep.witness) {
        o.certificate = Some(json!({
            "kind": "bimodule-iso",
            "target": "regular",
            "algebra": s.core.export(),
            "source": res.syzygies[p].export(),
            "witness": w,
        }));
    }
    Ok(o)
}

fn cy_task(subject: &mut Subject, d: usize, shift: i64, seed: u64) -> Result<Outcome, Error> {
    let gamma = subject.gamma()?;
    let s = BimoduleSetting::new(&gamma)?;
    let rep = cy_duality_check(&s, d, shift, seed)?;
    let summary = format!("Ω^{} vs D: {}", rep.n, rep.verdict);
    let mut o = Outcome::new(verdict(rep.holds), summary, to_value(&rep));
    if let (Some(w), Some(m)) = (&rep.witness, &rep.lhs) {
        o.certificate = Some(json!({
            "kind": "bimodule-iso",
            "target": if rep.n >= 0 { "dual" } else { "regular" },
            "algebra": s.core.export(),
            "source": m.export(),
            "witness": w,
        }));
    }
    Ok(o)
}

fn run_task(subject: &mut Subject, spec: &TaskSpec, scenario_d: usize, seed: u64) -> Result<Outcome, CliError> {
    let d = subject.d(scenario_d);
    let needs_t = |name: &str| CliError::Input(format!("task {name}: needs a tilting object"));
    let res: Result<Outcome, Error> = match &spec.kind {
        TaskKind::Bikr => match subject {
            Subject::Curve(c, curve) => {
                let labels = c.t.labels.clone();
                bikr_loops(curve).map(|loops| {
                    Outcome::new(
                        Status::Verified,
                        format!("{} summands", labels.len()),
                        json!({ "tilting": labels, "loops": loops }),
                    )
                })
            }
            _ => return Err(CliError::Input("task bikr: needs a plane-curve backend".into())),
        },
        TaskKind::Quiver => subject.gamma().and_then(|g| {
            let q = quiver_payload(&g)?;
            let summary = format!("{} vertices, {} loops", q["vertices"], q["loops"]);
            Ok(Outcome::new(Status::Verified, summary, q))
        }),
        TaskKind::SelfInjective => subject.gamma().and_then(|g| {
            let si = is_self_injective(&g)?;
            Ok(Outcome::check(si, format!("self-injective: {si}"), json!({ "self_injective": si })))
        }),
        TaskKind::DetectPeriod { nmax } => period_task(subject, d, *nmax, seed),
        TaskKind::Cy { s } => cy_task(subject, d, *s, seed),
        TaskKind::AlgebraIso { presentation } => subject.gamma().and_then(|g| {
            let other = algebra_from_quiver(presentation, g.field())?;
            let found = find_isomorphism(&g, &other, seed, ISO_SEARCH_TRIALS)?;
            let payload = json!({ "found": found.is_some(), "dims": [g.dim(), other.dim()] });
            let mut o = match &found {
                Some(_) => Outcome::new(Status::Verified, "isomorphism found", payload),
                None if g.dim() != other.dim() => Outcome::new(Status::Failed, "dimensions differ", payload),
                None => Outcome::new(Status::Inconclusive, "no isomorphism found", payload),
            };
            if let Some(m) = found {
                o.certificate = Some(json!({
                    "kind": "algebra-iso",
                    "source": g.export(),
                    "target": other.export(),
                    "matrix": m.to_signed_rows(),
                }));
            }
            Ok(o)
        }),
        TaskKind::Tor { imax } => match subject {
            Subject::Modules(c) => (|| {
                c.twist()?;
                let t = &c.t;
                let end = c.end.as_mut().expect("computed");
                if end.lambda.is_none() {
                    end.attach_lambda(t)?;
                }
                let sigma = &c.twist.as_ref().expect("computed").sigma;
                let lam = end.lambda.as_ref().expect("attached");
                let rep = tor_lambda_suite(&end.gamma, lam, sigma, t.d, *imax, seed)?;
                let holds = match rep.twist_holds {
                    None => None,
                    Some(tw) => Some(tw && rep.vanishing && rep.top_dim_matches),
                };
                let summary = format!("dims {:?}, Tor_{} ≅ σΓ₁: {}", rep.dims, t.d + 1, rep.twist_verdict);
                Ok(Outcome::new(verdict(holds), summary, to_value(&rep)))
            })(),
            Subject::Curve(..) => Err(Error::NotApplicable("Λ is not available for the matrix-factorization backend".into())),
            Subject::Algebra(_) => return Err(needs_t("tor")),
        },
        TaskKind::Resolve { x } => match subject {
            Subject::Modules(c) => {
                let g = c.end().map(|e| e.gamma.clone());
                match g {
                    Ok(g) => resolve_task(c, &parse_x(x, &g)?),
                    Err(e) => Err(e),
                }
            }
            Subject::Curve(c, _) => {
                let g = c.end().map(|e| e.gamma.clone());
                match g {
                    Ok(g) => resolve_task(c, &parse_x(x, &g)?),
                    Err(e) => Err(e),
                }
            }
            Subject::Algebra(_) => return Err(needs_t("resolve")),
        },
        TaskKind::Resolution210 { summand } => match subject {
            Subject::Modules(c) => resolution_210_task(c, *summand),
            Subject::Curve(c, _) => resolution_210_task(c, *summand),
            Subject::Algebra(_) => return Err(needs_t("resolution-2-10")),
        },
        kind => {
            let r = match subject {
                Subject::Modules(c) => cluster_task(c, kind, seed),
                Subject::Curve(c, _) => cluster_task(c, kind, seed),
                Subject::Algebra(_) => return Err(needs_t(&kind.name())),
            };
            match r {
                Ok(Some(o)) => Ok(o),
                Ok(None) => unreachable!("every task kind is dispatched"),
                Err(e) => Err(e),
            }
        }
    };
    match res {
        Ok(o) => Ok(o),
        Err(e) => Outcome::from_error(e),
    }
}

/// Payload keys that differ from the expectation.
fn mismatches(spec: &TaskSpec, payload: &Value) -> Vec<String> {
    let Some(expect) = &spec.expect else { return Vec::new() };
    expect
        .iter()
        .filter_map(|(k, v)| {
            let got = payload.get(k).unwrap_or(&Value::Null);
            (got != v).then(|| format!("{k}: expected {v}, got {got}"))
        })
        .collect()
}

/// Runs every task of the scenario in order.
pub fn run_scenario(s: &Scenario, seed_override: Option<u64>) -> Result<Report, CliError> {
    s.validate()?;
    let seed = seed_override.unwrap_or(s.seed);
    let mut subject = build_subject(s, seed)?;
    let mut tasks = Vec::new();
    for spec in &s.tasks {
        let mut o = run_task(&mut subject, spec, s.d, seed)?;
        let bad = mismatches(spec, &o.payload);
        if !bad.is_empty() {
            o.status = Status::Failed;
            o.summary = format!("{}; expectation mismatch: {}", o.summary, bad.join("; "));
        }
        tasks.push(TaskReport {
            task: spec.kind.name(),
            status: o.status,
            summary: o.summary,
            expect: spec.expect.clone(),
            payload: o.payload,
            certificate: o.certificate,
        });
    }
    Ok(Report::new(s, seed, tasks))
}
