//! Task execution: builds the requested objects, runs the checks, and
//! assembles a schema-versioned JSON report. Exit policy: 0 when every
//! check passed within tolerance, 1 when a mathematical check failed,
//! 2 for invalid input.

use super::{cached_rep, JobSpec, TaskKind, MATRIX_DUMP_CAP, SCHEMA_VERSION};
use crate::connections::{
    build_casimir, build_ckz, build_kz, check_v0_identity, kohno_flatness_check, CkzInput,
    ConnectionKind, FlatConnection,
};
use crate::duality::{partitions, residue_match_check, schur_weyl_zero_weight};
use crate::error::{Error, Result};
use crate::liecore::{tits_lift, Algebra, Representation};
use crate::linalg::{CMat, C64};
use crate::quantum::{monodromy_normalization, q_tensor_power, qweyl_op, r_matrix, rmat_rep, uq_sl2_module, uq_sln_vector, QModule};
use crate::transport::{
    bmw_check, default_words, hecke_check, kd_compare, monodromy_rep, spectrum,
    verify_braid_relations, Equivariance, MonodromyRep, StepMode,
};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::Path;

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: Value,
    pub pass: bool,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Executes one job; `Err` means invalid input (exit 2).
pub fn run_job(job: &JobSpec) -> Result<RunOutcome> {
    job.validate()?;
    let (details, pass) = match job.task {
        TaskKind::Flatness => flatness(job)?,
        TaskKind::Monodromy => monodromy(job)?,
        TaskKind::Spectra => spectra(job)?,
        TaskKind::Hecke => hecke(job)?,
        TaskKind::Bmw => bmw(job)?,
        TaskKind::BraidRelations => braid_relations(job)?,
        TaskKind::KdCompare => kd(job)?,
        TaskKind::Qweyl => qweyl(job)?,
        TaskKind::Rmatrix => rmatrix(job)?,
        TaskKind::V0Check => v0_check(job)?,
        TaskKind::DualityCheck => duality_check(job)?,
        TaskKind::SchurWeyl => schur_weyl(job)?,
    };
    let report = json!({
        "schema": SCHEMA_VERSION,
        "task": job.task.name(),
        "job": serde_json::to_value(job)?,
        "pass": pass,
        "details": details,
    });
    Ok(RunOutcome { report, pass })
}

fn step_mode(job: &JobSpec) -> StepMode {
    if job.fixed_step {
        StepMode::Fixed
    } else {
        StepMode::Adaptive
    }
}

fn rep_of(job: &JobSpec) -> Result<Representation> {
    let algebra = job.algebra.as_deref().unwrap_or_default();
    let rep = job.rep.as_deref().unwrap_or("vector");
    cached_rep(algebra, rep)
}

fn connection_of(job: &JobSpec, rep: &Representation) -> Result<FlatConnection> {
    let kind = job.connection.as_deref().unwrap_or("kz");
    let h = job.h_c64();
    let mut conn = match kind {
        "kz" => {
            let n = job.n.ok_or_else(|| Error::InvalidInput("kz needs `n`".into()))?;
            build_kz(rep, n, h, None)?
        }
        "casimir" => build_casimir(rep, h, job.weight_block.as_deref())?,
        "ckz" => {
            let rs = rep.root_system.clone();
            let module = CkzInput::reflection_rep(&rs);
            build_ckz(&rs, &module, &vec![h; rs.num_positive_roots()])?
        }
        other => return Err(Error::InvalidInput(format!("unknown connection: {other}"))),
    };
    if job.perturb {
        conn.residues[0] = conn.residues[0].clone() + rep.root_vectors[0].0.clone();
        conn.verified_flat = false;
    }
    Ok(conn)
}

fn equivariance_of(conn: &FlatConnection, rep: &Representation, job: &JobSpec) -> Result<Equivariance> {
    match (&conn.kind, job.connection.as_deref().unwrap_or("kz")) {
        (ConnectionKind::Config { n }, _) => Ok(Equivariance::Permutation {
            factor_dim: rep.dim,
            n: *n,
        }),
        (ConnectionKind::Cartan { root_system }, "ckz") => {
            let mats: Vec<_> =
                (0..root_system.rank).map(|i| root_system.reflection_rep_matrix(i)).collect();
            Ok(Equivariance::from_exact(&mats))
        }
        (ConnectionKind::Cartan { .. }, _) => Ok(Equivariance::from_tits(&tits_lift(rep)?)),
        (ConnectionKind::Custom, _) => {
            Err(Error::InvalidInput("custom connections have no generators".into()))
        }
    }
}

fn monodromy_of(job: &JobSpec) -> Result<(Representation, FlatConnection, MonodromyRep)> {
    if job.weight_block.is_some() {
        return Err(Error::InvalidInput(
            "monodromy generators mix weight blocks; drop `weight_block`".into(),
        ));
    }
    let rep = rep_of(job)?;
    let conn = connection_of(job, &rep)?;
    let equi = equivariance_of(&conn, &rep, job)?;
    let mono = monodromy_rep(&conn, &equi, job.tol_or_default(), step_mode(job))?;
    Ok((rep, conn, mono))
}

fn matrix_json(m: &CMat, dump: bool) -> Value {
    if m.rows() <= MATRIX_DUMP_CAP || dump {
        serde_json::to_value(m).unwrap_or(Value::Null)
    } else {
        json!({"omitted_dim": m.rows()})
    }
}

fn flatness(job: &JobSpec) -> Result<(Value, bool)> {
    let rep = rep_of(job)?;
    let conn = connection_of(job, &rep)?;
    let report = kohno_flatness_check(&conn)?;
    let pass = report.pass;
    Ok((serde_json::to_value(&report)?, pass))
}

fn monodromy(job: &JobSpec) -> Result<(Value, bool)> {
    let (_, _, mono) = monodromy_of(job)?;
    let rel = verify_braid_relations(&mono);
    let threshold = job.threshold.unwrap_or(job.tol_or_default() * 100.0);
    let gens: Vec<Value> =
        mono.generators.iter().map(|g| matrix_json(g, job.dump_matrices)).collect();
    let pass = rel.max_residual <= threshold;
    Ok((
        json!({
            "generators": gens,
            "transport_errors": mono.transport_errors,
            "braid_residuals": rel.residuals,
            "max_braid_residual": rel.max_residual,
            "threshold": threshold,
            "convention": mono.convention,
            "basepoint": mono.basepoint,
        }),
        pass,
    ))
}

fn spectra(job: &JobSpec) -> Result<(Value, bool)> {
    let (_, _, mono) = monodromy_of(job)?;
    let mut all = Vec::new();
    for g in &mono.generators {
        let eig = spectrum(g)?;
        all.push(eig.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
    }
    Ok((json!({ "spectra": all }), true))
}

fn hecke(job: &JobSpec) -> Result<(Value, bool)> {
    let (_, conn, mono) = monodromy_of(job)?;
    // q per generator: exp(i pi h) on configuration space, exp(i pi k_i)
    // for reflection connections.
    let qs: Vec<C64> = match &conn.kind {
        ConnectionKind::Config { n } => {
            let q = (C64::new(0.0, std::f64::consts::PI) * job.h_c64()).exp();
            vec![q; n - 1]
        }
        ConnectionKind::Cartan { root_system } => (0..root_system.rank)
            .map(|i| (C64::new(0.0, std::f64::consts::PI) * conn.coeff(i)).exp())
            .collect(),
        ConnectionKind::Custom => unreachable!("monodromy_of rejects custom"),
    };
    let report = hecke_check(&mono, &qs);
    let threshold = job.threshold.unwrap_or(1e-6);
    let pass = report.max_residual <= threshold;
    Ok((
        json!({
            "q": qs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "residuals": report.residuals,
            "max_residual": report.max_residual,
            "threshold": threshold,
        }),
        pass,
    ))
}

fn bmw(job: &JobSpec) -> Result<(Value, bool)> {
    let algebra = Algebra::parse(job.algebra.as_deref().unwrap_or_default())?;
    let eps = match algebra {
        Algebra::So(_) => 1.0,
        Algebra::Sp(_) => -1.0,
        _ => {
            return Err(Error::InvalidInput(
                "bmw applies to orthogonal/symplectic vector monodromy".into(),
            ))
        }
    };
    let dim = algebra.defining_dim() as f64;
    let (_, _, mono) = monodromy_of(job)?;
    let h = job.h_c64();
    let ipi = C64::new(0.0, std::f64::consts::PI);
    let q = (ipi * h).exp();
    let r = (ipi * h * (dim - eps)).exp() * eps;
    let report = bmw_check(&mono, q, r)?;
    let threshold = job.threshold.unwrap_or(1e-6);
    let pass = report.max_residual <= threshold;
    Ok((
        json!({
            "q": [q.re, q.im],
            "r": [r.re, r.im],
            "epsilon": eps,
            "cubic_residuals": report.cubic,
            "tangle_residuals": report.tangle,
            "max_residual": report.max_residual,
            "threshold": threshold,
        }),
        pass,
    ))
}

fn braid_relations(job: &JobSpec) -> Result<(Value, bool)> {
    let (_, _, mono) = monodromy_of(job)?;
    let rel = verify_braid_relations(&mono);
    let threshold = job.threshold.unwrap_or(1e-8);
    let pass = rel.max_residual <= threshold;
    Ok((
        json!({
            "residuals": rel.residuals,
            "max_residual": rel.max_residual,
            "threshold": threshold,
            "transport_errors": mono.transport_errors,
        }),
        pass,
    ))
}

/// The parameter dictionary: hbar = 2 pi i h; the braiding side evaluates
/// modules at q = exp(hbar/2) = exp(i pi h); the quantum Weyl side at
/// q_i = exp(hbar <alpha_i,alpha_i>/2), with each bare operator multiplied
/// by the abelian wall factor q_i^{C_{alpha_i}/2}.
fn kd(job: &JobSpec) -> Result<(Value, bool)> {
    let connection = job.connection.as_deref().unwrap_or("kz");
    let h = job.h_c64();
    let hbar = C64::new(0.0, 2.0 * std::f64::consts::PI) * h;
    let threshold = job.threshold.unwrap_or(1e-6);
    let word_len = job.word_len.unwrap_or(3);

    let (mono, quantum_gens, dictionary): (MonodromyRep, Vec<CMat>, Value) = match connection {
        "kz" => {
            let (rep, _, mono) = monodromy_of(job)?;
            let n = job.n.ok_or_else(|| Error::InvalidInput("kz needs `n`".into()))?;
            let q = (hbar * 0.5).exp();
            let module = uq_sln_vector(rep.dim, q)?;
            let gens = rmat_rep(&module, n, None)?;
            (
                mono,
                gens,
                json!({"hbar": [hbar.re, hbar.im], "q": [q.re, q.im],
                       "substitution": "q = exp(hbar/2)"}),
            )
        }
        "casimir" => {
            let m = job.m.ok_or_else(|| {
                Error::InvalidInput("casimir comparison needs `m` (rank-1 module)".into())
            })?;
            let mut job2 = job.clone();
            job2.algebra = Some("A1".into());
            job2.rep = Some(format!("sym{m}"));
            let (_rep, _, mono) = monodromy_of(&job2)?;
            // d_i = 1 for the rank-1 module: q_i = exp(hbar).
            let q = hbar.exp();
            let module = uq_sl2_module(m, q)?;
            let op = qweyl_op(&module)?;
            let twist = monodromy_normalization(&module, 0);
            let gens = vec![&op.s[0] * &twist];
            (
                mono,
                gens,
                json!({"hbar": [hbar.re, hbar.im], "q": [q.re, q.im],
                       "substitution": "q_i = exp(hbar <a,a>/2), operator S_i q_i^{3 H_i^2/4}"}),
            )
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "kd-compare supports kz|casimir, got {other}"
            )))
        }
    };

    let words = default_words(mono.generators.len(), word_len);
    let report = kd_compare(&mono.generators, &quantum_gens, &words, threshold)?;
    let pass = report.pass;
    Ok((
        json!({
            "dictionary": dictionary,
            "max_deviation": report.max_deviation,
            "threshold": threshold,
            "word_count": words.len(),
            "words": serde_json::to_value(&report.words)?,
        }),
        pass,
    ))
}

fn quantum_module(job: &JobSpec) -> Result<QModule> {
    let [qre, qim] = job.q.unwrap_or([0.2f64.exp(), 0.0]);
    let q = C64::new(qre, qim);
    let single = match (job.m, job.algebra.as_deref()) {
        (Some(m), _) => uq_sl2_module(m, q)?,
        (None, Some(alg)) => {
            let a = Algebra::parse(alg)?;
            match a {
                Algebra::Sl(n) | Algebra::Gl(n) => uq_sln_vector(n, q)?,
                _ => {
                    return Err(Error::InvalidInput(
                        "quantum modules exist for type-A vector and rank-1 inputs".into(),
                    ))
                }
            }
        }
        _ => return Err(Error::InvalidInput("need `algebra` or `m`".into())),
    };
    match job.n {
        Some(n) if n > 1 => q_tensor_power(&single, n),
        _ => Ok(single),
    }
}

fn qweyl(job: &JobSpec) -> Result<(Value, bool)> {
    let module = quantum_module(job)?;
    let op = qweyl_op(&module)?;
    let threshold = job.threshold.unwrap_or(1e-10);
    // Braid relation residuals.
    let mut residuals = Vec::new();
    for i in 0..module.rank {
        for j in (i + 1)..module.rank {
            let m = module.coxeter_orders[i][j];
            let dim = module.dim;
            let mut lhs = CMat::identity(dim);
            let mut rhs = CMat::identity(dim);
            for k in 0..m {
                let (a, b) = if k % 2 == 0 { (i, j) } else { (j, i) };
                lhs = &lhs * &op.s[a];
                rhs = &rhs * &op.s[b];
            }
            residuals.push(((i + 1, j + 1, m), (&lhs - &rhs).max_norm()));
        }
    }
    let max = residuals.iter().map(|r| r.1).fold(0.0, f64::max);
    let pass = max <= threshold;
    let gens: Vec<Value> = op.s.iter().map(|g| matrix_json(g, job.dump_matrices)).collect();
    Ok((
        json!({
            "operators": gens,
            "braid_residuals": residuals.iter().map(|((i, j, m), r)| json!({"pair": [i, j], "order": m, "residual": r})).collect::<Vec<_>>(),
            "max_residual": max,
            "threshold": threshold,
        }),
        pass,
    ))
}

fn rmatrix(job: &JobSpec) -> Result<(Value, bool)> {
    let module = quantum_module(job)?;
    let rm = r_matrix(&module, &module)?;
    let threshold = job.threshold.unwrap_or(1e-10);
    // Braid relation on the triple tensor product.
    let gens = rmat_rep(&module, 3, None)?;
    let lhs = &(&gens[0] * &gens[1]) * &gens[0];
    let rhs = &(&gens[1] * &gens[0]) * &gens[1];
    let braid_residual = (&lhs - &rhs).max_norm();
    let pass = braid_residual <= threshold * gens[0].max_norm().max(1.0).powi(3);
    Ok((
        json!({
            "rv": matrix_json(&rm.rv, job.dump_matrices),
            "top_eigenvalue": [rm.top_eigenvalue.re, rm.top_eigenvalue.im],
            "convention": rm.convention,
            "braid_residual": braid_residual,
            "threshold": threshold,
        }),
        pass,
    ))
}

fn v0_check(job: &JobSpec) -> Result<(Value, bool)> {
    let rep = rep_of(job)?;
    let report = check_v0_identity(&rep)?;
    let pass = report.identity_holds && report.weyl_invariant;
    Ok((serde_json::to_value(&report)?, pass))
}

fn duality_check(job: &JobSpec) -> Result<(Value, bool)> {
    let k = job.k.unwrap();
    let n = job.n.unwrap();
    let lambda = job.lambda.clone().unwrap();
    let mu = job.mu.clone().unwrap_or_else(|| vec![1; lambda.iter().sum::<usize>()]);
    let report = residue_match_check(k, n, &lambda, &mu)?;
    let pass = report.pass;
    Ok((serde_json::to_value(&report)?, pass))
}

fn schur_weyl(job: &JobSpec) -> Result<(Value, bool)> {
    let n = job.n.unwrap();
    let lams = match &job.lambda {
        Some(l) => vec![l.clone()],
        None => partitions(n),
    };
    let mut rows = Vec::new();
    let mut pass = true;
    for lam in lams {
        let pair = schur_weyl_zero_weight(n, &lam)?;
        pass &= pair.equal;
        rows.push(serde_json::to_value(&pair)?);
    }
    Ok((json!({ "pairs": rows }), pass))
}

/// Writes pretty JSON atomically: temp file in the target directory, then
/// rename.
pub fn write_report_atomic(path: &Path, report: &Value) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("report")
    ));
    std::fs::write(&tmp, serde_json::to_vec_pretty(report)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn suite_names() -> &'static [&'static str] {
    &["paper-exact", "paper-numeric", "all"]
}

fn exact_suite_jobs() -> Vec<JobSpec> {
    let mut jobs = Vec::new();
    // Exact flatness across the three families.
    for (alg, rep, conn, n) in [
        ("sl2", "vector", "kz", Some(3)),
        ("sl2", "vector", "kz", Some(4)),
        ("sl3", "vector", "kz", Some(3)),
        ("sl3", "vector", "kz", Some(4)),
    ] {
        let mut j = JobSpec::new(TaskKind::Flatness);
        j.algebra = Some(alg.into());
        j.rep = Some(rep.into());
        j.connection = Some(conn.into());
        j.n = n;
        j.h = Some([0.1, 0.0]);
        jobs.push(j);
    }
    for alg in ["sl2", "sl3", "sl4", "so5"] {
        for rep in ["vector", "adjoint"] {
            let mut j = JobSpec::new(TaskKind::Flatness);
            j.algebra = Some(alg.into());
            j.rep = Some(rep.into());
            j.connection = Some("casimir".into());
            j.h = Some([0.1, 0.0]);
            jobs.push(j);
        }
    }
    for alg in ["A2", "A3"] {
        let mut j = JobSpec::new(TaskKind::Flatness);
        j.algebra = Some(alg.into());
        j.rep = Some("vector".into());
        j.connection = Some("ckz".into());
        j.h = Some([0.1, 0.0]);
        jobs.push(j);
    }
    // Zero-weight identities.
    for (alg, rep) in [
        ("sl2", "adjoint"),
        ("sl3", "adjoint"),
        ("so5", "vector"),
        ("sl3", "tensor3"),
    ] {
        let mut j = JobSpec::new(TaskKind::V0Check);
        j.algebra = Some(alg.into());
        j.rep = Some(rep.into());
        jobs.push(j);
    }
    // Residue coincidence.
    for (k, n, lam) in [(2usize, 2usize, vec![1, 1]), (2, 2, vec![2, 0]), (3, 3, vec![2, 1, 0])] {
        let mut j = JobSpec::new(TaskKind::DualityCheck);
        j.k = Some(k);
        j.n = Some(n);
        j.lambda = Some(lam);
        jobs.push(j);
    }
    // Zero-weight dimension pairs.
    for n in 1..=5usize {
        let mut j = JobSpec::new(TaskKind::SchurWeyl);
        j.n = Some(n);
        jobs.push(j);
    }
    jobs
}

fn numeric_suite_jobs() -> Vec<JobSpec> {
    let mut jobs = Vec::new();
    for h in [0.05, 0.1] {
        let mut j = JobSpec::new(TaskKind::Hecke);
        j.algebra = Some("gl2".into());
        j.rep = Some("vector".into());
        j.connection = Some("kz".into());
        j.n = Some(3);
        j.h = Some([h, 0.0]);
        jobs.push(j);
    }
    {
        let mut j = JobSpec::new(TaskKind::Bmw);
        j.algebra = Some("so3".into());
        j.rep = Some("vector".into());
        j.connection = Some("kz".into());
        j.n = Some(3);
        j.h = Some([0.1, 0.0]);
        jobs.push(j);
        let mut j = JobSpec::new(TaskKind::Bmw);
        j.algebra = Some("sp2".into());
        j.rep = Some("vector".into());
        j.connection = Some("kz".into());
        j.n = Some(3);
        j.h = Some([0.1, 0.0]);
        jobs.push(j);
    }
    {
        let mut j = JobSpec::new(TaskKind::BraidRelations);
        j.algebra = Some("sl2".into());
        j.rep = Some("vector".into());
        j.connection = Some("kz".into());
        j.n = Some(4);
        j.h = Some([0.1, 0.0]);
        jobs.push(j);
    }
    for rep in ["vector", "adjoint"] {
        let mut j = JobSpec::new(TaskKind::BraidRelations);
        j.algebra = Some("sl3".into());
        j.rep = Some(rep.into());
        j.connection = Some("casimir".into());
        j.h = Some([0.1, 0.0]);
        jobs.push(j);
    }
    {
        let mut j = JobSpec::new(TaskKind::KdCompare);
        j.algebra = Some("gl2".into());
        j.rep = Some("vector".into());
        j.connection = Some("kz".into());
        j.n = Some(3);
        j.h = Some([0.05, 0.0]);
        jobs.push(j);
    }
    for m in [1usize, 2, 3] {
        let mut j = JobSpec::new(TaskKind::KdCompare);
        j.algebra = Some("A1".into());
        j.connection = Some("casimir".into());
        j.m = Some(m);
        j.h = Some([0.05, 0.0]);
        jobs.push(j);
    }
    {
        let mut j = JobSpec::new(TaskKind::Qweyl);
        j.algebra = Some("sl3".into());
        j.q = Some([0.2f64.exp(), 0.0]);
        j.n = Some(3);
        jobs.push(j);
        let mut j = JobSpec::new(TaskKind::Rmatrix);
        j.algebra = Some("sl3".into());
        j.q = Some([0.2f64.exp(), 0.0]);
        jobs.push(j);
    }
    jobs
}

/// Runs a named suite with at most `workers` jobs in flight; job order in
/// the aggregate report is the definition order regardless of scheduling.
pub fn suite(name: &str, workers: usize) -> Result<RunOutcome> {
    let jobs = match name {
        "paper-exact" => exact_suite_jobs(),
        "paper-numeric" => numeric_suite_jobs(),
        "all" => {
            let mut j = exact_suite_jobs();
            j.extend(numeric_suite_jobs());
            j
        }
        other => return Err(Error::InvalidInput(format!("unknown suite: {other}"))),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<RunOutcome>> =
        pool.install(|| jobs.par_iter().map(run_job).collect());

    let mut entries = Vec::new();
    let mut pass = true;
    for (job, outcome) in jobs.iter().zip(outcomes) {
        let outcome = outcome?;
        pass &= outcome.pass;
        entries.push(json!({
            "task": job.task.name(),
            "algebra": job.algebra,
            "rep": job.rep,
            "connection": job.connection,
            "n": job.n,
            "m": job.m,
            "h": job.h,
            "pass": outcome.pass,
        }));
    }
    let report = json!({
        "schema": SCHEMA_VERSION,
        "suite": name,
        "jobs": entries,
        "pass": pass,
    });
    Ok(RunOutcome { report, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatness_job_pass_and_perturbed_fail() {
        let mut j = JobSpec::new(TaskKind::Flatness);
        j.algebra = Some("A2".into());
        j.rep = Some("adjoint".into());
        j.connection = Some("casimir".into());
        j.h = Some([0.1, 0.0]);
        let out = run_job(&j).unwrap();
        assert!(out.pass);
        assert_eq!(out.exit_code(), 0);
        assert_eq!(out.report["schema"], "1");

        j.perturb = true;
        let out = run_job(&j).unwrap();
        assert!(!out.pass);
        assert_eq!(out.exit_code(), 1);
    }

    #[test]
    fn invalid_jobs_are_rejected() {
        let j = JobSpec::new(TaskKind::Flatness);
        assert!(run_job(&j).is_err());
        let mut j = JobSpec::new(TaskKind::Hecke);
        j.algebra = Some("E8".into());
        assert!(run_job(&j).is_err());
    }

    #[test]
    fn hecke_job_small() {
        let mut j = JobSpec::new(TaskKind::Hecke);
        j.algebra = Some("gl2".into());
        j.rep = Some("vector".into());
        j.connection = Some("kz".into());
        j.n = Some(2);
        j.h = Some([0.1, 0.0]);
        let out = run_job(&j).unwrap();
        assert!(out.pass, "{}", out.report);
    }

    #[test]
    fn schur_weyl_job() {
        let mut j = JobSpec::new(TaskKind::SchurWeyl);
        j.n = Some(4);
        let out = run_job(&j).unwrap();
        assert!(out.pass);
    }

    #[test]
    fn duality_job() {
        let mut j = JobSpec::new(TaskKind::DualityCheck);
        j.k = Some(2);
        j.n = Some(2);
        j.lambda = Some(vec![1, 1]);
        let out = run_job(&j).unwrap();
        assert!(out.pass);
    }

    #[test]
    fn qweyl_and_rmatrix_jobs() {
        let mut j = JobSpec::new(TaskKind::Qweyl);
        j.algebra = Some("sl3".into());
        let out = run_job(&j).unwrap();
        assert!(out.pass);

        let mut j = JobSpec::new(TaskKind::Rmatrix);
        j.m = Some(1);
        j.q = Some([1.2, 0.1]);
        let out = run_job(&j).unwrap();
        assert!(out.pass);
    }

    #[test]
    fn report_written_atomically() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let mut j = JobSpec::new(TaskKind::SchurWeyl);
        j.n = Some(3);
        let out = run_job(&j).unwrap();
        write_report_atomic(&path, &out.report).unwrap();
        let loaded: Value =
            serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
        assert_eq!(loaded["pass"], Value::Bool(true));
        assert!(!dir.path().join(".report.json.tmp").exists());
    }

    #[test]
    fn fixed_step_reports_bit_identical() {
        let mut j = JobSpec::new(TaskKind::Monodromy);
        j.algebra = Some("sl2".into());
        j.rep = Some("vector".into());
        j.connection = Some("kz".into());
        j.n = Some(2);
        j.h = Some([0.07, 0.0]);
        j.tol = Some(1e-7);
        j.fixed_step = true;
        let a = run_job(&j).unwrap();
        let b = run_job(&j).unwrap();
        assert_eq!(
            serde_json::to_string(&a.report).unwrap(),
            serde_json::to_string(&b.report).unwrap()
        );
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(suite("nope", 2).is_err());
    }
}
