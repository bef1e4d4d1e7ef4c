//! Turns a parsed job configuration into computations and result records.
//!
//! Per-weight commands spread their window over a bounded worker pool; rows
//! land in precomputed positions, so output bytes do not depend on the
//! worker count.

use crate::cohomology::{dirac_cohomology, lie_cohomology, Direction};
use crate::config::{CommandName, JobConfig, LeviSpec, ModuleSpec};
use crate::eppair::{ep_pair, verify_main2};
use crate::error::{Error, Result};
use crate::index::{dirac_index, spin_index_windowed};
use crate::liestruct::{chevalley_basis, LieAlgebra, SignedRoot};
use crate::rational::format_q;
use crate::report::{Records, Row};
use crate::rootdata::{build_root_system, ParabolicDatum, Weight, Window};
use crate::wmod::{cuspidal_sl2, dual, induce_parabolic, simple_hw, twist, verma, LeviModule, Module};
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

/// A fully built job: algebra, parabolic, modules, window, command.
pub struct Job {
    pub cfg: JobConfig,
    pub la: Arc<LieAlgebra>,
    pub pd: Arc<ParabolicDatum>,
    pub module: Arc<Module>,
    pub module2: Option<Arc<Module>>,
    pub window: Window,
}

/// Resolves a root name like `alpha`, `alpha2`, `alpha1+alpha2`, optionally
/// prefixed with `-`, to a signed root.
pub fn parse_root_name(la: &Arc<LieAlgebra>, name: &str) -> Result<SignedRoot> {
    let name = name.trim();
    let (body, positive) = match name.strip_prefix('-') {
        Some(rest) => (rest.trim().trim_start_matches('(').trim_end_matches(')'), false),
        None => (name, true),
    };
    for i in 0..la.n_pos() {
        if la.rd.root_name(i) == body {
            return Ok(SignedRoot { pos_index: i, positive });
        }
    }
    Err(Error::ConfigGeneral(format!("unknown root name `{name}`")))
}

fn simple_index(la: &Arc<LieAlgebra>, name: &str) -> Result<usize> {
    let sr = parse_root_name(la, name)?;
    if !sr.positive || sr.pos_index >= la.rank() {
        return Err(Error::ConfigGeneral(format!("`{name}` is not a simple root")));
    }
    Ok(sr.pos_index)
}

fn weight_of(la: &Arc<LieAlgebra>, coords: &[crate::rational::Q]) -> Result<Weight> {
    if coords.len() != la.rank() {
        return Err(Error::ConfigGeneral(format!(
            "weight has {} coordinates, the algebra has rank {}",
            coords.len(),
            la.rank()
        )));
    }
    Ok(Weight(coords.to_vec()))
}

fn build_module(
    la: &Arc<LieAlgebra>,
    pd: &Arc<ParabolicDatum>,
    spec: &ModuleSpec,
) -> Result<Arc<Module>> {
    match spec {
        ModuleSpec::Verma { lambda } => verma(la, &weight_of(la, lambda)?),
        ModuleSpec::SimpleHw { lambda } => simple_hw(la, &weight_of(la, lambda)?),
        ModuleSpec::CuspidalSl2 { mu0, mu1 } => cuspidal_sl2(la, mu0, mu1),
        ModuleSpec::DualOf { inner } => Ok(dual(&build_module(la, pd, inner)?)),
        ModuleSpec::TwistOf { inner, gamma, x } => {
            let m = build_module(la, pd, inner)?;
            let sr = parse_root_name(la, gamma)?;
            twist(&m, &[sr], &[x.clone()])
        }
        ModuleSpec::Induced { levi_module } => {
            let v = match levi_module {
                LeviSpec::CLambda { lambda } => LeviModule::CLambda(weight_of(la, lambda)?),
                LeviSpec::CuspidalSl2 { gamma, mu0, mu1, base } => LeviModule::InflatedCuspidal {
                    gamma: simple_index(la, gamma)?,
                    mu0: mu0.clone(),
                    mu1: mu1.clone(),
                    base: weight_of(la, base)?,
                },
            };
            induce_parabolic(la, pd, v)
        }
    }
}

/// Builds the algebra, parabolic, modules and window from a config.
pub fn build_job(cfg: JobConfig) -> Result<Job> {
    let rd = build_root_system(&cfg.algebra)?;
    let la = chevalley_basis(&rd);
    let mut levi = BTreeSet::new();
    for name in &cfg.levi {
        levi.insert(simple_index(&la, name)?);
    }
    let pd = rd.parabolic(&levi)?;
    let module = build_module(&la, &pd, &cfg.module)?;
    let module2 = match &cfg.module2 {
        Some(spec) => Some(build_module(&la, &pd, spec)?),
        None => None,
    };
    let window = Window::new(weight_of(&la, &cfg.window_base)?, cfg.window_radius);
    Ok(Job { cfg, la, pd, module, module2, window })
}

fn weight_strings(w: &Weight) -> Vec<String> {
    w.0.iter().map(format_q).collect()
}

/// Maps `f` over `0..n` with at most `workers` threads; results keep index
/// order, so downstream output is independent of scheduling.
fn parallel_map<T, F>(n: usize, workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let workers = workers.max(1).min(n.max(1));
    if workers <= 1 {
        return (0..n).map(&f).collect();
    }
    let slots: Vec<Mutex<Option<Result<T>>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let r = f(i);
                *slots[i].lock().unwrap() = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("worker filled its slot"))
        .collect()
}

/// Runs the job; `parallel` bounds the worker count without changing a byte
/// of output.
pub fn execute(job: &Job, parallel: usize) -> Result<Records> {
    let rd = &job.la.rd;
    let weights = job.window.weights(rd);
    let rank = rd.rank;
    let rows: Vec<Row> = match job.cfg.command {
        CommandName::Describe => {
            let per = parallel_map(weights.len(), parallel, |i| {
                let w = &weights[i];
                Ok(Row::Describe { weight: weight_strings(w), dim: job.module.dim(w) })
            })?;
            per
        }
        CommandName::Cohomology => {
            let dir_name = job
                .cfg
                .direction
                .clone()
                .ok_or_else(|| Error::ConfigGeneral("cohomology needs `direction`".into()))?;
            let direction = Direction::parse(&dir_name).ok_or_else(|| {
                Error::ConfigGeneral(format!("unknown cohomology direction `{dir_name}`"))
            })?;
            let per = parallel_map(weights.len(), parallel, |i| {
                let w = &weights[i];
                let bc = lie_cohomology(&job.module, &job.pd, w, direction)?;
                Ok(bc
                    .homology_dims()
                    .into_iter()
                    .enumerate()
                    .map(|(p, d)| Row::Cohomology {
                        weight: weight_strings(w),
                        degree: p,
                        dim: d,
                    })
                    .collect::<Vec<_>>())
            })?;
            per.into_iter().flatten().collect()
        }
        CommandName::Dirac => {
            let per = parallel_map(weights.len(), parallel, |i| {
                let w = &weights[i];
                let dc = dirac_cohomology(&job.module, &job.pd, w)?;
                Ok(Row::Dirac {
                    weight: weight_strings(w),
                    dim_plus: dc.dim_plus,
                    dim_minus: dc.dim_minus,
                })
            })?;
            per
        }
        CommandName::Index => {
            let variant = job.cfg.variant.clone().unwrap_or_else(|| "spin".into());
            let ch = match variant.as_str() {
                "spin" => spin_index_windowed(&job.module, &job.pd, Some(&job.window))?,
                "dirac" => dirac_index(&job.module, &job.pd, Some(&job.window))?,
                other => {
                    return Err(Error::ConfigGeneral(format!("unknown index variant `{other}`")))
                }
            };
            let per = parallel_map(weights.len(), parallel, |i| {
                let w = &weights[i];
                Ok((w.clone(), ch.eval(w)))
            })?;
            per.into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(w, v)| Row::Index { weight: weight_strings(&w), value: v })
                .collect()
        }
        CommandName::Pair => {
            let m2 = job.module2.as_ref().expect("validated by parse_config");
            let r = ep_pair(&job.module, m2, &job.window)?;
            vec![Row::Pair { ep: r.value, method: r.method.name().into(), audit: r.audit }]
        }
        CommandName::Verify => {
            let m2 = job.module2.as_ref().expect("validated by parse_config");
            let r = verify_main2(&job.module, m2, &job.window)?;
            vec![Row::Verify {
                ep: r.ep.value,
                index_pair: r.index_pair,
                equal: r.equal,
                method: r.ep.method.name().into(),
                audit: r.ep.audit,
                notes: r.notes,
            }]
        }
    };
    Ok(Records { command: job.cfg.command, rank, rows })
}

/// Whether the outcome should fail a verification run (exit code 3).
pub fn verification_failed(records: &Records) -> bool {
    records.rows.iter().any(|r| matches!(r, Row::Verify { equal: false, .. }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;
    use crate::report::{emit_report, Format};

    fn run(text: &str, parallel: usize) -> Result<String> {
        let job = build_job(parse_config(text)?)?;
        let records = execute(&job, parallel)?;
        Ok(emit_report(&records, Format::Jsonl))
    }

    const DIRAC_F: &str = "\
[algebra]
type = A1

[module]
kind = cuspidal_sl2
mu0 = 1/2
mu1 = 1/2

[window]
base = [0]
radius = 10

[command]
name = dirac
";

    #[test]
    fn dirac_on_cuspidal_all_zero() {
        let out = run(DIRAC_F, 1).unwrap();
        assert_eq!(out.lines().count(), 21);
        for line in out.lines() {
            assert!(line.ends_with("\"dim_plus\":0,\"dim_minus\":0}"), "{line}");
        }
    }

    #[test]
    fn index_on_simple_two_records() {
        let text = "\
[algebra]
type = A1

[module]
kind = simple_hw
lambda = [0]

[window]
base = [1]
radius = 8

[command]
name = index
";
        let out = run(text, 1).unwrap();
        assert_eq!(
            out,
            "{\"weight\":[\"-1\"],\"value\":1}\n{\"weight\":[\"1\"],\"value\":-1}\n"
        );
        // the Dirac-index variant agrees pointwise here
        let with_dirac = text.replace("name = index", "name = index\nvariant = dirac");
        assert_eq!(run(&with_dirac, 1).unwrap(), out);
    }

    #[test]
    fn verify_pair_record() {
        let text = "\
[algebra]
type = A1

[module]
kind = verma
lambda = [0]

[module2]
kind = simple_hw
lambda = [0]

[window]
base = [0]
radius = 8

[command]
name = verify
";
        let out = run(text, 1).unwrap();
        assert!(out.contains("\"ep\":1,\"index_pair\":1,\"equal\":true"), "{out}");
    }

    #[test]
    fn pair_command_record() {
        let text = "\
[algebra]
type = A1

[module]
kind = simple_hw
lambda = [0]

[module2]
kind = cuspidal_sl2
mu0 = 1/2
mu1 = 1/2

[window]
base = [0]
radius = 8

[command]
name = pair
";
        let out = run(text, 2).unwrap();
        assert!(out.starts_with("{\"ep\":0,\"method\":\""), "{out}");
    }

    #[test]
    fn integral_cuspidal_rejected_at_execution() {
        let text = DIRAC_F.replace("mu0 = 1/2", "mu0 = 2");
        let cfg = parse_config(&text).unwrap();
        let err = match build_job(cfg) {
            Err(e) => e,
            Ok(_) => panic!("integral parameter must be rejected"),
        };
        assert!(matches!(err, Error::IntegralCuspidalParameter(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn parallel_output_identical() {
        for text in [DIRAC_F] {
            let a = run(text, 1).unwrap();
            let b = run(text, 8).unwrap();
            assert_eq!(a, b);
        }
    }
}
