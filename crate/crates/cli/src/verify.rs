//! Re-checks the witness matrices stored in a report without recomputing
//! any resolution.

use ctperiod::algebra::auto::is_homomorphism;
use ctperiod::algebra::{dual_bimodule, enveloping, regular_bimodule, twisted_bimodule, AlgebraAuto, AlgebraExport, FDAlgebra};
use ctperiod::kernel::Matrix;
use ctperiod::periodicity::verify_witness;
use ctperiod::repcat::{FDModule, ModuleExport};
use ctperiod::Error;
use serde_json::Value;

use crate::report::{Report, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub task: String,
    pub ok: bool,
    pub detail: String,
}

fn field<T: serde::de::DeserializeOwned>(c: &Value, key: &str) -> Result<T, Error> {
    let v = c.get(key).ok_or_else(|| Error::input(format!("certificate lacks {key:?}")))?;
    serde_json::from_value(v.clone()).map_err(|e| Error::input(format!("certificate field {key:?}: {e}")))
}

fn matrix(a: &FDAlgebra, rows: &[Vec<i64>]) -> Result<Matrix, Error> {
    if rows.is_empty() {
        return Ok(Matrix::zeros(a.field(), 0, 0));
    }
    Matrix::from_rows(a.field(), rows)
}

fn check_bimodule_iso(c: &Value) -> Result<String, Error> {
    let alg = FDAlgebra::from_export(&field::<AlgebraExport>(c, "algebra")?)?;
    let env = enveloping(&alg)?;
    let source = FDModule::from_export(&env, &field::<ModuleExport>(c, "source")?)?;
    let target_spec = c.get("target").ok_or_else(|| Error::input("certificate lacks \"target\""))?;
    let (target, name) = match target_spec {
        Value::String(s) if s == "regular" => (regular_bimodule(&alg, &env)?, "Γ".to_string()),
        Value::String(s) if s == "dual" => (dual_bimodule(&alg, &env)?, "DΓ".to_string()),
        Value::Object(o) if o.contains_key("twisted") => {
            let rows: Vec<Vec<i64>> = field(target_spec, "twisted")?;
            let sigma = AlgebraAuto::new(&alg, matrix(&alg, &rows)?)?;
            (twisted_bimodule(&alg, &env, &sigma)?, "σΓ₁".to_string())
        }
        other => return Err(Error::input(format!("unknown certificate target {other}"))),
    };
    let w = matrix(&alg, &field::<Vec<Vec<i64>>>(c, "witness")?)?;
    if verify_witness(&source, &target, &w) {
        Ok(format!("witness is a Γ^e-isomorphism onto {name} (dim {})", target.dim()))
    } else {
        Err(Error::certificate("witness", format!("not an isomorphism onto {name}")))
    }
}

fn check_algebra_iso(c: &Value) -> Result<String, Error> {
    let a = FDAlgebra::from_export(&field::<AlgebraExport>(c, "source")?)?;
    let b = FDAlgebra::from_export(&field::<AlgebraExport>(c, "target")?)?;
    let m = matrix(&a, &field::<Vec<Vec<i64>>>(c, "matrix")?)?;
    if m.rows() == b.dim() && m.cols() == a.dim() && m.is_invertible() && is_homomorphism(&a, &b, &m) {
        Ok(format!("algebra isomorphism of dimension {}", a.dim()))
    } else {
        Err(Error::certificate("algebra-iso", "matrix is not a unital algebra isomorphism"))
    }
}

/// One check per certificate plus one per verified task whose kind must
/// carry one.
pub fn verify_report(r: &Report) -> Vec<Check> {
    let mut out = Vec::new();
    for t in &r.tasks {
        let needs = matches!(t.task.as_str(), "detect-period" | "cy" | "twisted-syzygy" | "algebra-iso");
        match &t.certificate {
            Some(c) => {
                let res = match c.get("kind").and_then(|k| k.as_str()) {
                    Some("bimodule-iso") => check_bimodule_iso(c),
                    Some("algebra-iso") => check_algebra_iso(c),
                    k => Err(Error::input(format!("unknown certificate kind {k:?}"))),
                };
                let (ok, detail) = match res {
                    Ok(d) => (true, d),
                    Err(e) => (false, e.to_string()),
                };
                out.push(Check { task: t.task.clone(), ok, detail });
            }
            None if needs && t.status == Status::Verified => {
                out.push(Check { task: t.task.clone(), ok: false, detail: "verified without a certificate".into() });
            }
            None => {}
        }
    }
    out
}
