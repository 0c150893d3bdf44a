//! Verification suites: named bundles of exact checks over the R-matrix,
//! Hecke idempotents, RTT representations, q-immanant centrality and
//! eigenvalues, Newton identities, and the braided Weyl algebra Capelli
//! identities.  The command-line harness and the Python bindings both
//! drive this module; results are deterministic for a fixed configuration.

use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{partitions, partitions_max_rows, ssyt_count, standard_tableaux, Shape};
use crate::error::{Error, Result};
use crate::exact::{QConfig, Scalar};
use crate::hecke::HeckeContext;
use crate::immanants::{
    coefficients_are_central, gelfand_invariant, immanant_eigenvalue, liouville_series,
    newton_identity_holds, AuxChain,
};
use crate::linalg::{rank, RectMat};
use crate::mat::SqMat;
use crate::poly::{Poly, Var};
use crate::report::{Check, Report};
use crate::tensor::{r21, r21_inv, r_check, r_check_inv, r_matrix, r_matrix_inv, TensorSpace};
use crate::uqgln_rep::{central_eigenvalue, eigenvalue_on_vector, Gen, Rep};
use crate::weyl;

/// Canonical suite order; selection and reporting both follow it.
pub const SUITE_NAMES: [&str; 9] = [
    "rmatrix",
    "hecke",
    "rtt",
    "centrality",
    "tableau-independence",
    "eigenvalues",
    "independence",
    "newton",
    "capelli",
];

/// Resolved verification configuration; also the config echo in reports.
/// Rationals stay in their "p/r" wire form so the echo is lossless.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub suites: Vec<String>,
    pub n: usize,
    /// Module site counts; empty means per-suite defaults.
    pub module_sites: Vec<usize>,
    pub m_max: usize,
    pub hecke_m_max: usize,
    pub q: String,
    pub z: Vec<String>,
    pub newton_order: usize,
    pub capelli_m_max: usize,
    pub jobs: usize,
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suites: vec!["all".into()],
            n: 2,
            module_sites: Vec::new(),
            m_max: 3,
            hecke_m_max: 4,
            q: "3/2".into(),
            z: vec!["0".into(), "1".into(), "2".into(), "3".into()],
            newton_order: 6,
            capelli_m_max: 2,
            jobs: 1,
            timings: false,
        }
    }
}

struct Resolved {
    cfg: QConfig,
    z: Vec<Scalar>,
    suites: Vec<&'static str>,
    n: usize,
    m_max: usize,
    hecke_m_max: usize,
    newton_order: usize,
    capelli_m_max: usize,
    jobs: usize,
    timings: bool,
    rtt_sites: Vec<usize>,
    central_sites: Vec<usize>,
    eigen_sites: Vec<usize>,
    indep_sites: Vec<usize>,
    newton_op_sites: Vec<usize>,
    newton_eig_sites: Vec<usize>,
}

fn sites_or(config: &VerifyConfig, default: &[usize]) -> Vec<usize> {
    if config.module_sites.is_empty() {
        default.to_vec()
    } else {
        config.module_sites.clone()
    }
}

fn resolve_suites(config: &VerifyConfig) -> Result<Vec<&'static str>> {
    let mut picked: Vec<&'static str> = Vec::new();
    for s in &config.suites {
        if s == "all" {
            for name in SUITE_NAMES {
                if name == "capelli" && config.n != 2 {
                    continue;
                }
                if !picked.contains(&name) {
                    picked.push(name);
                }
            }
            continue;
        }
        let Some(&name) = SUITE_NAMES.iter().find(|&&x| x == s) else {
            return Err(Error::InvalidConfig(format!("unknown suite {:?}", s)));
        };
        if name == "capelli" && config.n != 2 {
            return Err(Error::InvalidConfig(
                "the capelli suite supports n = 2 only".into(),
            ));
        }
        if !picked.contains(&name) {
            picked.push(name);
        }
    }
    if picked.is_empty() {
        return Err(Error::InvalidConfig("no suites selected".into()));
    }
    picked.sort_by_key(|name| SUITE_NAMES.iter().position(|x| x == name));
    Ok(picked)
}

impl Resolved {
    fn new(config: &VerifyConfig) -> Result<Self> {
        if config.n < 2 {
            return Err(Error::InvalidConfig("n must be at least 2".into()));
        }
        if config.m_max == 0 || config.hecke_m_max == 0 {
            return Err(Error::InvalidConfig("size caps must be positive".into()));
        }
        if config.jobs == 0 {
            return Err(Error::InvalidConfig("jobs must be positive".into()));
        }
        if !(1..=3).contains(&config.capelli_m_max) {
            return Err(Error::InvalidConfig(
                "capelli_m_max must be between 1 and 3".into(),
            ));
        }
        if config.newton_order < config.n {
            return Err(Error::InvalidConfig(
                "newton_order must be at least n".into(),
            ));
        }
        let cfg = QConfig::parse(&config.q)?;
        let z = config
            .z
            .iter()
            .map(|s| s.parse::<Scalar>())
            .collect::<Result<Vec<_>>>()?;
        if z.is_empty() {
            return Err(Error::InvalidConfig("at least one z sample required".into()));
        }
        Ok(Resolved {
            cfg,
            z,
            suites: resolve_suites(config)?,
            n: config.n,
            m_max: config.m_max,
            hecke_m_max: config.hecke_m_max,
            newton_order: config.newton_order,
            capelli_m_max: config.capelli_m_max,
            jobs: config.jobs,
            timings: config.timings,
            rtt_sites: sites_or(config, &[1, 2, 3]),
            central_sites: sites_or(config, &[1, 2]),
            eigen_sites: sites_or(config, &[0, 1, 2, 3]),
            indep_sites: sites_or(config, &[0, 1, 2, 3, 4]),
            newton_op_sites: sites_or(config, &[0, 1, 2]),
            newton_eig_sites: sites_or(config, &[0, 1, 2, 3]),
        })
    }
}

type Values = BTreeMap<String, String>;
type Job<'a> = Box<dyn FnOnce() -> Check + Send + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::VerificationFailed(msg()))
    }
}

fn params(pairs: &[(&str, String)]) -> Values {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn push_job<'a>(
    jobs: &mut Vec<Job<'a>>,
    suite: &'static str,
    p: Values,
    f: impl FnOnce() -> Result<Option<Values>> + Send + 'a,
) {
    jobs.push(Box::new(move || match f() {
        Ok(values) => {
            let mut check = Check::pass(suite, p);
            check.values = values;
            check
        }
        Err(e) => Check::fail(suite, p, e.to_string()),
    }));
}

fn first_tableau(shape: &Shape) -> crate::combinatorics::StandardTableau {
    standard_tableaux(shape)
        .into_iter()
        .next()
        .expect("every shape has a standard tableau")
}

fn rmatrix_jobs<'a>(r: &'a Resolved, jobs: &mut Vec<Job<'a>>) {
    let n = r.n;
    let base = [("n", n.to_string())];
    push_job(jobs, "rmatrix", params(&[("check", "yang-baxter".into()), base[0].clone()]), move || {
        let sp = TensorSpace::new(n, 3);
        let rm = r_matrix(n, &r.cfg);
        let r12 = sp.embed(&rm, &[0, 1])?;
        let r13 = sp.embed(&rm, &[0, 2])?;
        let r23 = sp.embed(&rm, &[1, 2])?;
        ensure(
            r12.mul(&r13).mul(&r23) == r23.mul(&r13).mul(&r12),
            || "R12 R13 R23 != R23 R13 R12".into(),
        )?;
        Ok(None)
    });
    push_job(jobs, "rmatrix", params(&[("check", "braid".into()), base[0].clone()]), move || {
        let sp = TensorSpace::new(n, 3);
        let rc = r_check(n, &r.cfg);
        let b1 = sp.embed(&rc, &[0, 1])?;
        let b2 = sp.embed(&rc, &[1, 2])?;
        ensure(
            b1.mul(&b2).mul(&b1) == b2.mul(&b1).mul(&b2),
            || "braid relation fails for the braided R-matrix".into(),
        )?;
        Ok(None)
    });
    push_job(jobs, "rmatrix", params(&[("check", "hecke-quadratic".into()), base[0].clone()]), move || {
        let rc = r_check(n, &r.cfg);
        let expected = rc
            .scale(&r.cfg.q_minus_qinv())
            .add(&SqMat::identity(rc.dim()));
        ensure(
            rc.mul(&rc) == expected,
            || "(R-check - q)(R-check + 1/q) != 0".into(),
        )?;
        Ok(None)
    });
    push_job(jobs, "rmatrix", params(&[("check", "inverses".into()), base[0].clone()]), move || {
        let id = SqMat::identity(n * n);
        ensure(
            r_matrix(n, &r.cfg).mul(&r_matrix_inv(n, &r.cfg)) == id,
            || "R R^{-1} != Id".into(),
        )?;
        ensure(
            r21(n, &r.cfg).mul(&r21_inv(n, &r.cfg)) == id,
            || "R21 R21^{-1} != Id".into(),
        )?;
        ensure(
            r_check(n, &r.cfg).mul(&r_check_inv(n, &r.cfg)) == id,
            || "R-check inverse fails".into(),
        )?;
        Ok(None)
    });
    push_job(jobs, "rmatrix", params(&[("check", "braided-q-trace".into()), base[0].clone()]), move || {
        let sp = TensorSpace::new(n, 2);
        let traced = sp.q_partial_trace(&r_check(n, &r.cfg), &[1], &r.cfg)?;
        ensure(
            traced == SqMat::identity(n).scale(r.cfg.q()),
            || "partial q-trace of R-check is not q times the identity".into(),
        )?;
        Ok(None)
    });
}

fn hecke_jobs<'a>(r: &'a Resolved, jobs: &mut Vec<Job<'a>>) {
    for m in 1..=r.hecke_m_max {
        let p = params(&[("m", m.to_string()), ("n", r.n.to_string())]);
        push_job(jobs, "hecke", p, move || {
            let ctx = HeckeContext::new(r.n, m, &r.cfg)?;
            let mut all = Vec::new();
            for shape in partitions(m) {
                for t in standard_tableaux(&shape) {
                    let e = ctx.idempotent(&t)?;
                    ensure(e.mul(&e) == e, || format!("E^2 != E for U={}", t))?;
                    for k in 1..=m {
                        let weight = r.cfg.q_power(2 * t.contents()[k - 1]);
                        ensure(
                            ctx.jm(k).mul(&e) == e.scale(&weight),
                            || format!("Jucys-Murphy eigenvalue fails at k={} for U={}", k, t),
                        )?;
                    }
                    ensure(
                        rank(&RectMat::from_sq(&e)) == ssyt_count(&shape, r.n),
                        || format!("rank != semistandard count for U={}", t),
                    )?;
                    all.push((t, e));
                }
            }
            for (i, (ti, ei)) in all.iter().enumerate() {
                for (j, (tj, ej)) in all.iter().enumerate() {
                    if i != j {
                        ensure(
                            ei.mul(ej).is_zero(),
                            || format!("idempotents for U={} and V={} are not orthogonal", ti, tj),
                        )?;
                    }
                }
            }
            let dim = ctx.space().dim();
            let sum = all
                .iter()
                .fold(SqMat::zero(dim), |acc, (_, e)| acc.add(e));
            ensure(sum == SqMat::identity(dim), || {
                "idempotents do not sum to the identity".into()
            })?;
            Ok(None)
        });
    }
}

fn rtt_jobs<'a>(r: &'a Resolved, jobs: &mut Vec<Job<'a>>) {
    for &sites in &r.rtt_sites {
        let p = params(&[("N", sites.to_string()), ("check", "defining-relations".into()), ("n", r.n.to_string())]);
        push_job(jobs, "rtt", p, move || {
            let rep = Rep::new(r.n, sites, &r.cfg)?;
            ensure(rep.rtt_holds(Gen::Plus, Gen::Plus), || "R L1+ L2+ != L2+ L1+ R".into())?;
            ensure(rep.rtt_holds(Gen::Minus, Gen::Minus), || "R L1- L2- != L2- L1- R".into())?;
            ensure(rep.rtt_holds(Gen::Plus, Gen::Minus), || "R L1+ L2- != L2- L1+ R".into())?;
            ensure(rep.exchange_holds(), || "L- L exchange relation fails".into())?;
            ensure(rep.reflection_holds(), || "reflection equation fails for L".into())?;
            ensure(rep.triangularity_holds(), || "L+ or L- triangularity fails".into())?;
            ensure(rep.diagonal_inverses_hold(), || "diagonal entries of L+ L- are not inverse".into())?;
            Ok(None)
        });
        let p = params(&[("N", sites.to_string()), ("check", "highest-weight".into()), ("n", r.n.to_string())]);
        push_job(jobs, "rtt", p, move || {
            let rep = Rep::new(r.n, sites, &r.cfg)?;
            for lambda in partitions_max_rows(sites, r.n) {
                let xi = rep.highest_weight_vector(&lambda)?;
                for i in 1..=r.n {
                    let image = rep.generator_block(Gen::Plus, i, i).matvec(&xi);
                    let got = eigenvalue_on_vector(&image, &xi)?;
                    let expected = r.cfg.q_power(lambda.part(i - 1) as i64);
                    ensure(got == expected, || {
                        format!("weight of {} on l+_{}{} is {}, expected {}", lambda, i, i, got, expected)
                    })?;
                }
            }
            Ok(None)
        });
    }
}

fn centrality_jobs<'a>(r: &'a Resolved, jobs: &mut Vec<Job<'a>>) {
    for &sites in &r.central_sites {
        for m in 1..=r.m_max {
            for mu in partitions_max_rows(m, r.n) {
                let p = params(&[
                    ("N", sites.to_string()),
                    ("mu", mu.to_string()),
                    ("n", r.n.to_string()),
                ]);
                push_job(jobs, "centrality", p, move || {
                    let rep = Rep::new(r.n, sites, &r.cfg)?;
                    let chain = AuxChain::new(&rep, mu.size())?;
                    let poly = chain.immanant_poly(&first_tableau(&mu))?;
                    ensure(coefficients_are_central(&poly, &rep), || {
                        "a z-coefficient fails to commute with a generator block".into()
                    })?;
                    Ok(None)
                });
            }
        }
    }
}

fn tableau_independence_jobs<'a>(r: &'a Resolved, jobs: &mut Vec<Job<'a>>) {
    for &sites in &r.central_sites {
        for m in 1..=r.m_max {
            for mu in partitions_max_rows(m, r.n) {
                let tableaux = standard_tableaux(&mu);
                if tableaux.len() < 2 {
                    continue;
                }
                let p = params(&[
                    ("N", sites.to_string()),
                    ("mu", mu.to_string()),
                    ("n", r.n.to_string()),
                ]);
                push_job(jobs, "tableau-independence", p, move || {
                    let rep = Rep::new(r.n, sites, &r.cfg)?;
                    let chain = AuxChain::new(&rep, mu.size())?;
                    let first = chain.immanant_poly(&tableaux[0])?;
                    for t in &tableaux[1..] {
                        ensure(chain.immanant_poly(t)? == first, || {
                            format!("S_U(z) differs between tableaux of shape {}", mu)
                        })?;
                    }
                    Ok(None)
                });
            }
        }
    }
}

fn eigenvalue_jobs<'a>(r: &'a Resolved, jobs: &mut Vec<Job<'a>>) {
    for &sites in &r.eigen_sites {
        for lambda in partitions_max_rows(sites, r.n) {
            for m in 1..=r.m_max {
                for mu in partitions_max_rows(m, r.n) {
                    let p = params(&[
                        ("lambda", lambda.to_string()),
                        ("mu", mu.to_string()),
                        ("n", r.n.to_string()),
                    ]);
                    let lambda = lambda.clone();
                    push_job(jobs, "eigenvalues", p, move || {
                        let rep = Rep::new(r.n, lambda.size(), &r.cfg)?;
                        let xi = rep.highest_weight_vector(&lambda)?;
                        let chain = AuxChain::new(&rep, mu.size())?;
                        let push = chain.push_operator(&first_tableau(&mu))?;
                        let mut values = Values::new();
                        for z in &r.z {
                            let expected = immanant_eigenvalue(r.n, &mu, &lambda, z, &r.cfg)?;
                            let image = push.apply(z, &xi);
                            let got = eigenvalue_on_vector(&image, &xi)?;
                            ensure(got == expected, || {
                                format!(
                                    "operator eigenvalue {} != factorial Schur value {} at z={}",
                                    got, expected, z
                                )
                            })?;
                            values.insert(format!("z={}", z), expected.to_string());
                        }
                        Ok(Some(values))
                    });
                }
            }
        }
    }
}

fn independence_jobs<'a>(r: &'a Resolved, jobs: &mut Vec<Job<'a>>) {
    let p = params(&[("n", r.n.to_string())]);
    push_job(jobs, "independence", p, move || {
        let mus: Vec<Shape> = (1..=r.m_max)
            .flat_map(|m| partitions_max_rows(m, r.n))
            .collect();
        let lambdas: Vec<Shape> = r
            .indep_sites
            .iter()
            .flat_map(|&sites| partitions_max_rows(sites, r.n))
            .collect();
        let zero = Scalar::zero();
        let mut mat = RectMat::new(lambdas.len());
        for mu in &mus {
            let mut row = Vec::with_capacity(lambdas.len());
            for (col, lambda) in lambdas.iter().enumerate() {
                row.push((col, immanant_eigenvalue(r.n, mu, lambda, &zero, &r.cfg)?));
            }
            mat.push_row(row);
        }
        let got = rank(&mat);
        ensure(got == mus.len(), || {
            format!(
                "eigenvalue matrix rank {} over {} immanants and {} weights",
                got,
                mus.len(),
                lambdas.len()
            )
        })?;
        Ok(Some(params(&[
            ("rank", got.to_string()),
            ("rows", mus.len().to_string()),
            ("cols", lambdas.len().to_string()),
        ])))
    });
}

fn newton_jobs<'a>(r: &'a Resolved, jobs: &mut Vec<Job<'a>>) {
    for &sites in &r.newton_op_sites {
        let p = params(&[
            ("N", sites.to_string()),
            ("check", "operator-identity".into()),
            ("n", r.n.to_string()),
            ("order", r.newton_order.to_string()),
        ]);
        push_job(jobs, "newton", p, move || {
            let rep = Rep::new(r.n, sites, &r.cfg)?;
            ensure(newton_identity_holds(&rep, r.newton_order)?, || {
                "E(u) (1 + (1-q^{-2}) sum tr_q L^m u^{-m}) != E(u q^2)".into()
            })?;
            Ok(None)
        });
    }
    for &sites in &r.newton_eig_sites {
        for lambda in partitions_max_rows(sites, r.n) {
            let p = params(&[
                ("check", "eigenvalue-series".into()),
                ("lambda", lambda.to_string()),
                ("n", r.n.to_string()),
                ("order", r.newton_order.to_string()),
            ]);
            let lambda = lambda.clone();
            push_job(jobs, "newton", p, move || {
                let rep = Rep::new(r.n, lambda.size(), &r.cfg)?;
                let proj = if lambda.size() == 0 {
                    SqMat::identity(1)
                } else {
                    rep.module_projector(&first_tableau(&lambda))?
                };
                let factor = &Scalar::one() - &r.cfg.q_power(-2);
                let mut terms = vec![(0i64, Scalar::one())];
                for m in 1..=r.newton_order {
                    let chi = central_eigenvalue(&gelfand_invariant(&rep, m)?, &proj)?;
                    terms.push((-(m as i64), &chi * &factor));
                }
                let lhs = Poly::from_terms(Var::U, terms);
                let rhs = liouville_series(r.n, &lambda, &r.cfg, r.newton_order)?;
                ensure(lhs == rhs, || {
                    format!("Gelfand eigenvalue series differs from its product form on {}", lambda)
                })?;
                Ok(None)
            });
        }
    }
}

fn capelli_jobs<'a>(r: &'a Resolved, jobs: &mut Vec<Job<'a>>) {
    for m in 1..=r.capelli_m_max {
        for mu in partitions_max_rows(m, r.n) {
            let cap = if m <= 2 { weyl::DEFAULT_SPAN_CAP } else { 1_000_000 };
            for kind in ["entrywise", "traced"] {
                let p = params(&[
                    ("check", kind.into()),
                    ("mu", mu.to_string()),
                    ("n", r.n.to_string()),
                ]);
                let mu = mu.clone();
                push_job(jobs, "capelli", p, move || {
                    let u = first_tableau(&mu);
                    let report = if kind == "entrywise" {
                        weyl::verify_capelli(r.n, &r.cfg, &u, cap)?
                    } else {
                        weyl::verify_traced_capelli(r.n, &r.cfg, &u, cap)?
                    };
                    Ok(Some(params(&[
                        ("nonzero_residuals", report.nonzero_residuals.to_string()),
                        ("span_rows", report.span_rows.to_string()),
                        ("span_rank", report.rank.to_string()),
                    ])))
                });
            }
        }
    }
}

fn run_one(job: Job<'_>, timings: bool) -> Check {
    let start = Instant::now();
    let mut check = job();
    if timings {
        check.time_ms = Some(start.elapsed().as_millis() as u64);
    }
    check
}

fn execute(jobs: Vec<Job<'_>>, workers: usize, timings: bool) -> Vec<Check> {
    if workers <= 1 || jobs.len() <= 1 {
        return jobs.into_iter().map(|j| run_one(j, timings)).collect();
    }
    let queue: Mutex<Vec<(usize, Job<'_>)>> =
        Mutex::new(jobs.into_iter().enumerate().rev().collect());
    let slots: Vec<Mutex<Option<Check>>> = {
        let len = queue.lock().expect("queue").len();
        (0..len).map(|_| Mutex::new(None)).collect()
    };
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let item = queue.lock().expect("queue").pop();
                let Some((i, job)) = item else { break };
                let check = run_one(job, timings);
                *slots[i].lock().expect("slot") = Some(check);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("slot").expect("job completed"))
        .collect()
}

/// Runs the selected suites; `Err` means the configuration itself is
/// invalid, while check failures land in the report with status "fail".
pub fn run(config: &VerifyConfig) -> Result<Report<VerifyConfig>> {
    let resolved = Resolved::new(config)?;
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for &suite in &resolved.suites {
        match suite {
            "rmatrix" => rmatrix_jobs(&resolved, &mut jobs),
            "hecke" => hecke_jobs(&resolved, &mut jobs),
            "rtt" => rtt_jobs(&resolved, &mut jobs),
            "centrality" => centrality_jobs(&resolved, &mut jobs),
            "tableau-independence" => tableau_independence_jobs(&resolved, &mut jobs),
            "eigenvalues" => eigenvalue_jobs(&resolved, &mut jobs),
            "independence" => independence_jobs(&resolved, &mut jobs),
            "newton" => newton_jobs(&resolved, &mut jobs),
            "capelli" => capelli_jobs(&resolved, &mut jobs),
            _ => unreachable!("unknown suite survived resolution"),
        }
    }
    let checks = execute(jobs, resolved.jobs, resolved.timings);
    Ok(Report::new(config.clone(), checks))
}
