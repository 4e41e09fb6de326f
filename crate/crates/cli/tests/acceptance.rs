//! Acceptance suite: one pass/fail line per criterion, then a single
//! assertion over all of them.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use ctperiod::kernel::PrimeField;
use ctperiod::mfcat::{bikr_tilting, brute_hom_stabilized, mf_stable_hom, mf_syzygy, Curve};
use ctperiod_cli::{run_scenario, Report, Scenario, Status, TaskReport};
use serde_json::{json, Value};

fn scenario(name: &str) -> Scenario {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(format!("{name}.json"));
    Scenario::load(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn run(name: &str) -> (Report, Duration) {
    let t = Instant::now();
    let r = run_scenario(&scenario(name), None).unwrap_or_else(|e| panic!("{name}: {e}"));
    (r, t.elapsed())
}

fn task<'a>(r: &'a Report, name: &str) -> &'a TaskReport {
    r.tasks.iter().find(|t| t.task == name).unwrap_or_else(|| panic!("no {name} task"))
}

fn tasks<'a>(r: &'a Report, name: &str) -> Vec<&'a TaskReport> {
    r.tasks.iter().filter(|t| t.task == name).collect()
}

struct Ledger {
    lines: Vec<(usize, bool, String)>,
}

impl Ledger {
    /// Records a criterion as the conjunction of named checks.
    fn record(&mut self, n: usize, checks: &[(&str, bool)]) {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
        let detail = if failed.is_empty() {
            checks.iter().map(|c| c.0).collect::<Vec<_>>().join("; ")
        } else {
            format!("failed: {}", failed.join("; "))
        };
        self.lines.push((n, failed.is_empty(), detail));
    }
}

fn payload(t: &TaskReport, key: &str) -> Value {
    t.payload.get(key).cloned().unwrap_or(Value::Null)
}

fn two_cycle() -> Value {
    json!({"vertices": 2, "arrows": [[0, 1, 1], [1, 0, 1]], "loops": 0})
}

fn all_certificates_pass(trace: &Value) -> bool {
    let certs = trace["certificates"].as_array();
    certs.is_some_and(|c| !c.is_empty() && c.iter().all(|x| x["passed"] == json!(true)))
}

fn criterion_1(l: &mut Ledger) {
    let (r, time) = run("preprojective_a2");
    let p = task(&r, "detect-period");
    let period = payload(p, "period");
    l.record(
        1,
        &[
            (&format!("self-injective ({})", task(&r, "self-injective").status), task(&r, "self-injective").status == Status::Verified),
            (&format!("period = 6 (measured {period})"), period == json!(6)),
            (&format!("runtime < 30 s ({:.2?})", time), time < Duration::from_secs(30)),
        ],
    );
}

fn criterion_2_3_9(l: &mut Ledger) {
    let (r, _) = run("truncated_cubic");
    let end = task(&r, "stable-end");
    let iso = task(&r, "algebra-iso");
    let tw = task(&r, "twist");
    let p = task(&r, "detect-period");
    let period = payload(p, "period");
    let div = payload(p, "divisibility");
    l.record(
        2,
        &[
            ("dim Γ = 4", payload(end, "dim") == json!(4)),
            ("quiver 1⇄2 without loops", payload(end, "quiver") == two_cycle()),
            ("isomorphic to the A₂ preprojective algebra", iso.status == Status::Verified && payload(iso, "found") == json!(true)),
            ("r = 2", payload(tw, "r") == json!(2)),
            (&format!("period = 6 (measured {period})"), period == json!(6)),
            (
                &format!("6 | 3·2 (verdict for measured period: {})", div["verdict"]),
                period == json!(6) && div["verdict"] == json!("divides") && div["bound"] == json!(6),
            ),
        ],
    );

    let (r, _) = run("truncated_cubic_tor");
    let t = task(&r, "tor");
    l.record(
        3,
        &[
            ("dim Λ = 14", payload(t, "lambda_dim") == json!(14)),
            (&format!("dims {}", payload(t, "dims")), payload(t, "dims") == json!([4, 0, 4, 0, 0, 0, 0])),
            ("nonzero exactly at 0, 2", payload(t, "nonzero") == json!([0, 2])),
            ("dim Tor₂ = 4", payload(t, "dims")[2] == json!(4)),
            ("Tor₂ ≅ σΓ₁", payload(t, "twist_holds") == json!(true)),
        ],
    );

    let (r, _) = run("truncated_cubic_cy");
    let t = task(&r, "cy");
    l.record(
        9,
        &[
            ("n = 3", payload(t, "n") == json!(3)),
            ("Ω³Γ ≅ DΓ", payload(t, "holds") == json!(true) && t.status == Status::Verified),
            ("witness certificate present", t.certificate.is_some()),
        ],
    );
}

fn criterion_4(l: &mut Ledger) {
    let (r, time) = run("bikr_three_lines");
    let b = task(&r, "bikr");
    let end = task(&r, "stable-end");
    let p = task(&r, "detect-period");
    let div = payload(p, "divisibility");
    l.record(
        4,
        &[
            (
                "tilting (x, y(x+y)), (xy, x+y), free",
                payload(b, "tilting") == json!(["(x, x*y + y^2)", "(x*y, x + y)", "(x^2*y + x*y^2, 1)"]),
            ),
            ("rigid", payload(task(&r, "rigid"), "rigid") == json!(true)),
            (
                "lemma21 both true",
                payload(task(&r, "lemma21"), "cond1") == json!(true) && payload(task(&r, "lemma21"), "cond2") == json!(true),
            ),
            ("dim Γ = 6", payload(end, "dim") == json!(6)),
            ("quiver 1⇄2 without loops", payload(end, "quiver") == two_cycle()),
            ("self-injective", payload(end, "self_injective") == json!(true)),
            ("r = 1", payload(task(&r, "twist"), "r") == json!(1)),
            (&format!("period = 4 (measured {})", payload(p, "period")), payload(p, "period") == json!(4)),
            ("4 | 4", div["verdict"] == json!("divides") && div["bound"] == json!(4)),
            (&format!("runtime < 5 min ({:.2?})", time), time < Duration::from_secs(300)),
        ],
    );
}

fn criterion_5(l: &mut Ledger) {
    let (r, _) = run("bikr_cusp_line");
    let q = task(&r, "quiver");
    let p = task(&r, "detect-period");
    l.record(
        5,
        &[
            ("one vertex with one loop", q.payload == json!({"vertices": 1, "arrows": [[0, 0, 1]], "loops": 1})),
            ("self-injective", payload(task(&r, "self-injective"), "self_injective") == json!(true)),
            (&format!("period = 4 (measured {})", payload(p, "period")), payload(p, "period") == json!(4)),
        ],
    );
}

fn criterion_6(l: &mut Ledger) {
    let k = PrimeField::new(5).unwrap();
    let curves: [&[&str]; 4] = [&["x", "y"], &["x", "y", "x+y"], &["x", "x+y^2"], &["x", "y", "x+y", "x+2*y"]];
    let mut pairs = 0;
    let mut mismatches = Vec::new();
    for fs in curves {
        let c = Curve::parse(k, fs).unwrap();
        let t = bikr_tilting(&c).unwrap();
        let mut objs = t.clone();
        for m in &t {
            let s = mf_syzygy(m);
            if !objs.contains(&s) {
                objs.push(s);
            }
        }
        for m in &objs {
            for n in &objs {
                let fast = mf_stable_hom(m, n).map(|h| h.dim());
                let slow = brute_hom_stabilized(m, n).map(|b| b.dim);
                pairs += 1;
                if fast.as_ref().ok() != slow.as_ref().ok() || fast.is_err() {
                    mismatches.push(format!("{m} → {n}"));
                }
            }
        }
    }
    l.record(
        6,
        &[
            (&format!("{pairs} pairs (≥ 20)"), pairs >= 20),
            (&format!("{} mismatches", mismatches.len()), mismatches.is_empty()),
        ],
    );
}

fn criterion_7_8(l: &mut Ledger) {
    let (r, _) = run("bikr_three_lines_resolve");
    let resolves = tasks(&r, "resolve");
    let simples_ok = resolves.len() == 2
        && resolves.iter().all(|t| t.status == Status::Verified && all_certificates_pass(&t.payload["trace"]));
    let five = [
        "(i) L_j in E_j",
        "(ii) C_{d+1} in add T",
        "(iii) evaluated exactness",
        "(iv) Tor vanishing",
        "(v) end kernel",
    ];
    let names_ok = resolves.iter().all(|t| {
        let certs = t.payload["trace"]["certificates"].as_array().cloned().unwrap_or_default();
        five.iter().all(|n| certs.iter().any(|c| c["name"] == json!(n) && c["passed"] == json!(true)))
    });
    l.record(
        7,
        &[("both simple Γ-modules resolved", simples_ok), ("all five certificates pass", names_ok)],
    );

    let runs_ok = |r: &Report, count: usize| {
        let t = task(r, "resolution-2-10");
        let runs = t.payload["runs"].as_array().cloned().unwrap_or_default();
        t.status == Status::Verified
            && runs.len() == count
            && runs.iter().all(|run| {
                let certs = run["trace"]["certificates"].as_array().cloned().unwrap_or_default();
                let named = |n: &str| certs.iter().any(|c| c["name"] == json!(n) && c["passed"] == json!(true));
                named("middle terms stably zero") && named("Ω^d C in add T") && all_certificates_pass(&run["trace"])
            })
    };
    let (r2, _) = run("truncated_cubic_2_10");
    l.record(
        8,
        &[
            ("k[x]/(x³): both nonprojective summands", runs_ok(&r2, 2)),
            ("xy(x+y): both nonfree summands", runs_ok(&r, 2)),
        ],
    );
}

fn criterion_10(l: &mut Ledger) {
    let (r, _) = run("semisimple_control");
    let t = task(&r, "detect-period");
    l.record(
        10,
        &[
            ("status not-applicable", t.status == Status::NotApplicable),
            ("reason", t.summary.contains("semisimple, periodicity not applicable")),
            ("no period reported", payload(t, "period").is_null()),
        ],
    );
}

#[test]
fn acceptance() {
    let mut l = Ledger { lines: Vec::new() };
    criterion_1(&mut l);
    criterion_2_3_9(&mut l);
    criterion_4(&mut l);
    criterion_5(&mut l);
    criterion_6(&mut l);
    criterion_7_8(&mut l);
    criterion_10(&mut l);
    l.lines.sort_by_key(|x| x.0);
    for (n, ok, detail) in &l.lines {
        println!("criterion {n:>2}: {}  {detail}", if *ok { "PASS" } else { "FAIL" });
    }
    let failed: Vec<usize> = l.lines.iter().filter(|x| !x.1).map(|x| x.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
