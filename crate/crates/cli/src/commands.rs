use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use fibertope::exact::{format_rational, IVec, QVector, Rational, Strictness};
use fibertope::fan::Fan;
use fibertope::fiber::{
    constancy_violations, fiber_over, fiber_polytope_with_budget, FiberPolytopeJson, FiberPolytopeResult, Projection,
    ProjectionJson,
};
use fibertope::flag::{
    gt_pattern_polytope, gt_polytope, hilbert_data, hypersimplex, invariant_count_in, nbar_fan_with_budget,
    parity_lattice, phi, weight_polytope,
};
use fibertope::polytope::{Polytope, PolytopeJson};
use fibertope::{AffineLattice, Budget, Error};

use crate::report::RunReport;

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Options {
    pub out: Option<PathBuf>,
    pub force: bool,
    pub seed: u64,
    pub budget: Budget,
    pub strictness: Strictness,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            out: None,
            force: false,
            seed: DEFAULT_SEED,
            budget: Budget::unlimited(),
            strictness: Strictness::Lenient,
        }
    }
}

pub const DEFAULT_SEED: u64 = 20_050_101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuildObject {
    Hypersimplex,
    Gt,
    GtPattern,
    WeightPolytope,
    Phi,
    ParityLattice,
}

/// Writes `value` as pretty JSON, refusing to replace an existing file unless forced.
fn write_output<T: Serialize>(path: &Path, value: &T, force: bool) -> Result<()> {
    if path.exists() && !force {
        bail!("{} already exists; pass --force to overwrite it", path.display());
    }
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

/// Either writes the result to `--out` or embeds it in the report.
fn emit<T: Serialize>(report: &mut RunReport, value: &T, opts: &Options) -> Result<()> {
    match &opts.out {
        Some(path) => {
            write_output(path, value, opts.force)?;
            report.outputs.push(path.display().to_string());
        }
        None => report.result = serde_json::to_value(value)?,
    }
    Ok(())
}

fn polytope_summary(p: &Polytope) -> Value {
    json!({
        "ambient_dim": p.ambient_dim(),
        "dimension": p.dimension(),
        "vertices": p.vertices().len(),
        "facets": p.facets().len(),
    })
}

fn need_n(n: Option<usize>, object: BuildObject) -> Result<usize> {
    n.with_context(|| format!("{object:?} needs --n"))
}

fn need_lambda(lambda: Option<Vec<i64>>) -> Result<Vec<i64>> {
    lambda.context("this object needs --lambda")
}

pub fn cmd_build(object: BuildObject, n: Option<usize>, lambda: Option<Vec<i64>>, opts: &Options) -> Result<RunReport> {
    let mut report = RunReport::new("build", json!({ "object": object, "n": n, "lambda": lambda }));
    match object {
        BuildObject::Hypersimplex | BuildObject::Gt => {
            let n = need_n(n, object)?;
            let p = match object {
                BuildObject::Hypersimplex => hypersimplex(n)?,
                _ => gt_polytope(n)?,
            };
            report.summary = polytope_summary(&p);
            emit(&mut report, &PolytopeJson::from_polytope(&p), opts)?;
        }
        BuildObject::GtPattern => {
            let p = gt_pattern_polytope(&need_lambda(lambda)?)?;
            report.summary = polytope_summary(&p);
            emit(&mut report, &PolytopeJson::from_polytope(&p), opts)?;
        }
        BuildObject::WeightPolytope => {
            let lambda = need_lambda(lambda)?;
            let p = weight_polytope(&lambda, lambda.len())?;
            report.summary = polytope_summary(&p);
            emit(&mut report, &PolytopeJson::from_polytope(&p), opts)?;
        }
        BuildObject::Phi => {
            let pi = phi(need_n(n, object)?)?;
            report.summary = json!({ "source_dim": pi.source_dim(), "target_dim": pi.target_dim() });
            emit(&mut report, &ProjectionJson::from_projection(&pi)?, opts)?;
        }
        BuildObject::ParityLattice => {
            let l = parity_lattice(need_n(n, object)?)?;
            report.summary = json!({ "ambient_dim": l.ambient_dim(), "congruences": l.congruences().len() });
            emit(&mut report, &l, opts)?;
        }
    }
    Ok(report)
}

fn fan_summary(fan: &Fan) -> Value {
    json!({
        "dimension": fan.dim(),
        "rays": fan.rays().len(),
        "maximal_cones": fan.maximal_cones().len(),
        "f_vector": fan.f_vector().0,
    })
}

const SCALING_NOTE: &str =
    "sigma is the unnormalized sum over chambers of volume times the fiber at the chamber's vertex average; \
     only its normal fan is canonical";

/// Checks shared by every fiber-polytope run.
fn fiber_checks(report: &mut RunReport, p: &Polytope, pi: &Projection, r: &FiberPolytopeResult, seed: u64) -> Result<()> {
    report.expect_eq("sigma dimension = dim P - dim Q", r.sigma_dim(), r.expected_dim());
    report.check(
        "normal fan of sigma = refined fiber fan",
        r.agreement,
        if r.agreement {
            Value::Null
        } else {
            json!({
                "from_sigma": fan_summary(&r.fan_from_sigma),
                "from_refinement": fan_summary(&r.fan_from_refinement),
            })
        },
    );
    report.check("fan is complete", r.fan_from_sigma.is_complete(), Value::Null);
    report.expect_eq(
        "chamber volumes sum to the base volume",
        format_rational(&r.complex.volume_sum()),
        format_rational(&r.complex.base.normalized_volume()),
    );
    let bad = constancy_violations(p, pi, &r.complex, seed)?;
    let witness = if bad.is_empty() {
        Value::Null
    } else {
        json!(bad
            .iter()
            .map(|(c, a, b)| json!({ "chamber": c, "vertices_at_barycenter": a, "vertices_at_sample": b }))
            .collect::<Vec<_>>())
    };
    report.check("fiber type constant on chambers", bad.is_empty(), witness);
    Ok(())
}

fn fiber_summary(r: &FiberPolytopeResult) -> Value {
    json!({
        "sigma_dim": r.sigma_dim(),
        "sigma_vertices": r.sigma.vertices().len(),
        "chambers": r.chamber_count(),
        "walls": r.complex.walls.len(),
        "agreement": r.agreement,
        "fan": fan_summary(&r.fan_from_sigma),
    })
}

/// Turns a budget stop into an incomplete report; other errors propagate.
fn or_incomplete<T>(report: &mut RunReport, outcome: fibertope::Result<T>) -> Result<Option<T>> {
    match outcome {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { stage, done, total }) => {
            report.mark_incomplete(stage, done, total);
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {what} {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} {}", path.display()))
}

pub fn cmd_fiber_polytope(polytope: &Path, projection: &Path, opts: &Options) -> Result<RunReport> {
    let mut report = RunReport::new(
        "fiber-polytope",
        json!({ "polytope": polytope.display().to_string(), "projection": projection.display().to_string() }),
    );
    let pj: PolytopeJson = read_json(polytope, "polytope")?;
    let p = pj.to_polytope(opts.strictness).context("input polytope")?;
    let prj: ProjectionJson = read_json(projection, "projection")?;
    let pi = prj.to_projection(opts.strictness).context("input projection")?;
    if pi.source_dim() != p.ambient_dim() {
        bail!(
            "dimension mismatch: projection has {} columns but the polytope lives in dimension {}",
            pi.source_dim(),
            p.ambient_dim()
        );
    }
    let Some(r) = or_incomplete(&mut report, fiber_polytope_with_budget(&p, &pi, &opts.budget))? else {
        return Ok(report);
    };
    report.summary = fiber_summary(&r);
    fiber_checks(&mut report, &p, &pi, &r, opts.seed)?;
    report.notes.push(SCALING_NOTE.into());
    emit(&mut report, &FiberPolytopeJson::from_result(&r)?, opts)?;
    Ok(report)
}

pub fn cmd_nbar(n: usize, opts: &Options) -> Result<RunReport> {
    let mut report = RunReport::new("nbar", json!({ "n": n }));
    if n >= 7 {
        report.notes.push(format!("n = {n} is beyond desk scale; running best effort"));
    }
    let Some(r) = or_incomplete(&mut report, nbar_fan_with_budget(n, &opts.budget))? else {
        return Ok(report);
    };
    report.summary = fiber_summary(&r);
    fiber_checks(&mut report, &gt_polytope(n)?, &phi(n)?, &r, opts.seed)?;
    report.expect_eq("sigma dimension = n - 3", r.sigma_dim(), n - 3);
    if r.fan_from_sigma.dim() == 2 {
        report.expect_eq(
            "rays = maximal cones in a complete 2-dimensional fan",
            r.fan_from_sigma.rays().len(),
            r.fan_from_sigma.maximal_cones().len(),
        );
    }
    report.notes.push(SCALING_NOTE.into());
    emit(&mut report, &FiberPolytopeJson::from_result(&r)?, opts)?;
    Ok(report)
}

fn neg_reversed(v: &[Rational]) -> QVector {
    v.iter().rev().map(|x| -x).collect()
}

/// Structural checks on the polygon and hypersimplex models for one `n`.
fn model_checks(report: &mut RunReport, n: usize) -> Result<()> {
    let gt = gt_polytope(n)?;
    let delta = hypersimplex(n)?;
    let pi = phi(n)?;
    report.expect_eq(format!("n={n} dim gt = 2n-4"), gt.dimension(), 2 * n - 4);
    report.expect_eq(format!("n={n} dim hypersimplex = n-1"), delta.dimension(), n - 1);
    let image = gt.image(&pi.linear_part(), None)?;
    let same = image.vertices() == delta.vertices();
    report.check(
        format!("n={n} image of gt under phi = hypersimplex"),
        same,
        if same { Value::Null } else { json!({ "image_vertices": image.vertices().len() }) },
    );
    let fat: Vec<String> = delta
        .vertices()
        .iter()
        .filter(|v| fiber_over(&gt, &pi, v).map(|f| f.dimension() != 0).unwrap_or(true))
        .map(|v| format!("{v:?}"))
        .collect();
    report.check(format!("n={n} fibers over hypersimplex vertices are points"), fat.is_empty(), if fat.is_empty() { Value::Null } else { json!(fat) });
    let mut omega2 = vec![0i64; n];
    omega2[0] = 1;
    omega2[1] = 1;
    let w = weight_polytope(&omega2, n)?;
    let mut mapped: Vec<QVector> = w.vertices().iter().map(|v| neg_reversed(v)).collect();
    mapped.sort();
    report.check(
        format!("n={n} weight polytope of omega_2 maps to hypersimplex under x -> -w0 x"),
        mapped == delta.vertices(),
        Value::Null,
    );
    Ok(())
}

fn points_json(points: &[IVec]) -> Value {
    json!(points.iter().map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Hilbert-function and invariant checks for one `(n, k)`.
fn count_checks(report: &mut RunReport, table: &mut Vec<Value>, n: usize, k: u64, lattice: &AffineLattice) -> Result<()> {
    let parity = parity_lattice(n)?;
    let data = hilbert_data(n, k, lattice)?;
    let full = hilbert_data(n, k, &AffineLattice::full(2 * n - 3))?;
    let ok = data.total_matches();
    let witness = if ok {
        Value::Null
    } else {
        let off: Vec<IVec> = data.points.iter().filter(|p| !parity.contains(p)).cloned().collect();
        json!({
            "found": data.total_count,
            "expected": data.oracle_dim,
            "points_off_parity_lattice": points_json(&off),
        })
    };
    report.check(format!("n={n} k={k} lattice points of kGT = dim V(k,k)"), ok, witness);
    let bad: Vec<Value> = data
        .weight_mismatches()
        .iter()
        .map(|w| json!({ "weight": w.weight, "count": w.count, "kostka": w.kostka }))
        .collect();
    report.check(
        format!("n={n} k={k} per-weight counts = Kostka numbers ({} weights)", data.per_weight.len()),
        bad.is_empty(),
        if bad.is_empty() { Value::Null } else { json!(bad) },
    );
    if (2 * k as usize).is_multiple_of(n) {
        let c = invariant_count_in(n, k, lattice)?;
        report.expect_eq(format!("n={n} k={k} invariant count = Kostka"), c.count as u64, c.kostka);
    }
    table.push(json!({
        "n": n,
        "k": k,
        "parity_lattice": ehrhart_parity_count(&data, lattice, &parity, n, k)?,
        "full_lattice": full.total_count,
        "oracle": data.oracle_dim,
    }));
    Ok(())
}

fn ehrhart_parity_count(
    data: &fibertope::flag::HilbertData,
    lattice: &AffineLattice,
    parity: &AffineLattice,
    n: usize,
    k: u64,
) -> Result<usize> {
    if lattice == parity {
        Ok(data.total_count)
    } else {
        Ok(hilbert_data(n, k, parity)?.total_count)
    }
}

/// Runs the model, counting and fan checks for `3 <= n <= n_max`, `1 <= k <= k_max`.
/// With `parity` off the counts use the full integer lattice, which is expected to
/// fail from `(n, k) = (4, 2)` on.
pub fn cmd_verify(n_max: usize, k_max: u64, parity: bool, opts: &Options) -> Result<RunReport> {
    let mut report = RunReport::new("verify", json!({ "n": n_max, "k": k_max, "parity": parity, "seed": opts.seed }));
    if n_max < 3 || k_max < 1 {
        bail!("verify needs --n >= 3 and --k >= 1");
    }
    if !parity {
        report.notes.push("parity congruences disabled: counting in the full integer lattice".into());
    }
    let mut table = Vec::new();
    for n in 3..=n_max {
        if or_incomplete(&mut report, opts.budget.check("model checks", n - 3, n_max - 2))?.is_none() {
            break;
        }
        model_checks(&mut report, n)?;
        let lattice = if parity { parity_lattice(n)? } else { AffineLattice::full(2 * n - 3) };
        for k in 1..=k_max {
            count_checks(&mut report, &mut table, n, k, &lattice)?;
        }
        let Some(r) = or_incomplete(&mut report, nbar_fan_with_budget(n, &opts.budget))? else {
            break;
        };
        fiber_checks(&mut report, &gt_polytope(n)?, &phi(n)?, &r, opts.seed)?;
    }
    report.summary = json!({ "lattice_discrepancy": table });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_small() {
        let r = cmd_verify(4, 2, true, &Options::default()).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn verify_without_parity_fails_at_four_two() {
        let r = cmd_verify(4, 2, false, &Options::default()).unwrap();
        let failed: Vec<_> = r.failed().map(|c| c.name.clone()).collect();
        assert!(failed.iter().any(|n| n.starts_with("n=4 k=2 lattice points")), "{failed:?}");
    }

    #[test]
    fn build_writes_once() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("h.json");
        let opts = Options {
            out: Some(out.clone()),
            ..Options::default()
        };
        cmd_build(BuildObject::Hypersimplex, Some(4), None, &opts).unwrap();
        assert!(cmd_build(BuildObject::Hypersimplex, Some(4), None, &opts).is_err());
        let forced = Options { force: true, ..opts };
        cmd_build(BuildObject::Hypersimplex, Some(4), None, &forced).unwrap();
    }
}
