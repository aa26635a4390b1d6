//! Running a job and rendering the result.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::job::{Format, JobSpec, Outputs};
use crate::components::{all_representatives, h1_pi1, kernel_embedding_check, oracle_check, pi0, OracleVerdict};
use crate::error::{Error, Result};

/// Coset enumeration is attempted only up to this index unless overridden.
pub const DEFAULT_ORACLE_BOUND: usize = 4096;

/// Environment variable overriding [`DEFAULT_ORACLE_BOUND`].
pub const ORACLE_BOUND_VAR: &str = "PI0_ORACLE_BOUND";

/// Representatives are listed for every element up to this 2-rank, and only
/// for the generators beyond it.
const FULL_TABLE_RANK: usize = 8;

/// Reads the oracle bound from the environment.
pub fn oracle_bound_from_env() -> Result<usize> {
    match std::env::var(ORACLE_BOUND_VAR) {
        Err(_) => Ok(DEFAULT_ORACLE_BOUND),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("{ORACLE_BOUND_VAR} must be a non-negative integer, got {s:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeEntry {
    pub label: String,
    pub nu: Vec<i64>,
    pub evaluations: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub matrix: String,
}

/// Everything a job computed. Absent sections were not requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub involution: String,
    pub lattice_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generators: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator_labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub representatives: Option<Vec<RepresentativeEntry>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h1_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h1_generator_labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub embedding: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<String>,
}

fn small(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or_else(|| Error::Internal(format!("entry {x} does not fit in 64 bits")))).collect()
}

fn order_u64(k: usize) -> Result<u64> {
    if k >= 64 {
        return Err(Error::Internal(format!("group of 2-rank {k} is too large to report")));
    }
    Ok(1u64 << k)
}

/// Runs a job with an explicit oracle bound.
pub fn run_with_bound(job: &JobSpec, bound: usize) -> Result<Report> {
    // π₀ is always reported; the flags add to it
    let outputs = Outputs { pi0: true, ..job.outputs.or_default() };
    let (rd, inv) = job.build()?;
    let mut report = Report {
        name: rd.name().to_owned(),
        involution: inv.name().to_owned(),
        lattice_rank: rd.rank(),
        order: None,
        rank: None,
        generators: None,
        generator_labels: None,
        representatives: None,
        h1_order: None,
        h1_generator_labels: None,
        embedding: None,
        oracle: None,
    };
    let p = pi0(&rd, &inv)?;
    if outputs.pi0 {
        report.order = Some(order_u64(p.rank())?);
        report.rank = Some(p.rank());
        report.generators = Some(p.generators().iter().map(|g| small(g)).collect::<Result<_>>()?);
        report.generator_labels = Some((0..p.rank()).map(|i| p.generator_label(i)).collect());
    }
    if outputs.reps {
        let reps = if p.rank() <= FULL_TABLE_RANK {
            let all = all_representatives(&rd, &inv, &p)?;
            all.into_iter().enumerate().skip(1).map(|(mask, r)| (p.element_label(mask), r)).collect::<Vec<_>>()
        } else {
            p.generators()
                .iter()
                .enumerate()
                .map(|(i, g)| Ok((p.generator_label(i), crate::components::representative(&rd, &inv, g)?)))
                .collect::<Result<Vec<_>>>()?
        };
        report.representatives = Some(
            reps.into_iter()
                .map(|(label, r)| {
                    Ok(RepresentativeEntry {
                        label,
                        nu: small(&r.nu)?,
                        evaluations: r.evaluations.iter().map(|(l, v)| (l.clone(), v.as_str().to_owned())).collect(),
                        matrix: r.matrix_string(),
                        note: r.note,
                    })
                })
                .collect::<Result<_>>()?,
        );
    }
    let h = if outputs.h1 { Some(h1_pi1(&rd, &inv)?) } else { None };
    if let Some(h) = &h {
        report.h1_order = Some(order_u64(h.rank())?);
        report.h1_generator_labels = Some((0..h.rank()).map(|i| h.generator_label(i)).collect());
        let ok = kernel_embedding_check(&rd, &inv)?;
        if !ok {
            return Err(Error::Internal("π₀ does not embed into H¹".into()));
        }
        report.embedding = Some(ok);
    }
    if outputs.oracle {
        let mut verdict = oracle_check(&p, bound)?;
        if let Some(h) = &h {
            if oracle_check(h, bound)? == OracleVerdict::Skipped {
                verdict = OracleVerdict::Skipped;
            }
        }
        report.oracle = Some(verdict.as_str().to_owned());
    }
    Ok(report)
}

/// Runs a job, taking the oracle bound from the environment.
pub fn run(job: &JobSpec) -> Result<Report> {
    run_with_bound(job, oracle_bound_from_env()?)
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => render_json(report),
        Format::Text => render_text(report),
    }
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_text(r: &Report) -> String {
    const W: usize = 17;
    let mut out = String::new();
    let mut line = |key: &str, value: &str| {
        let _ = writeln!(out, "{key:<W$}{value}");
    };
    line("group", &r.name);
    line("real form", &r.involution);
    line("lattice rank", &r.lattice_rank.to_string());
    if let Some(order) = r.order {
        let suffix = if order == 1 { " (connected)" } else { "" };
        line("pi0 order", &format!("{order}{suffix}"));
    }
    if let (Some(labels), Some(gens)) = (&r.generator_labels, &r.generators) {
        for (i, (l, g)) in labels.iter().zip(gens).enumerate() {
            let key = if i == 0 { "generators" } else { "" };
            line(key, &format!("{l:<12}{}", int_list(g)));
        }
    }
    if let Some(reps) = &r.representatives {
        if reps.is_empty() {
            line("representatives", "none");
        }
        for (i, e) in reps.iter().enumerate() {
            let key = if i == 0 { "representatives" } else { "" };
            line(key, &format!("t{} = exp πi({})  {}", i + 1, e.label, e.matrix));
        }
        if let Some(note) = reps.iter().find_map(|e| e.note.as_deref()) {
            line("note", note);
        }
    }
    if let Some(order) = r.h1_order {
        line("h1 order", &order.to_string());
    }
    if let Some(labels) = &r.h1_generator_labels {
        if !labels.is_empty() {
            line("h1 generators", &labels.join(", "));
        }
    }
    if let Some(ok) = r.embedding {
        line("pi0 -> h1", if ok { "injective" } else { "NOT injective" });
    }
    if let Some(v) = &r.oracle {
        line("oracle", v);
    }
    out
}

fn int_list(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::job::parse_jobspec;

    fn report(doc: &str) -> Report {
        run_with_bound(&parse_jobspec(doc).unwrap(), DEFAULT_ORACLE_BOUND).unwrap()
    }

    #[test]
    fn gl8() {
        let r = report(r#"{"preset":"GL","n":8,"outputs":["pi0","reps","h1","oracle"]}"#);
        assert_eq!(r.order, Some(2));
        assert_eq!(r.generator_labels.as_deref(), Some(&["e∨1".to_string()][..]));
        let reps = r.representatives.as_ref().unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].matrix, "diag(-1,1,1,1,1,1,1,1)");
        assert_eq!(r.h1_order, Some(2));
        assert_eq!(r.oracle.as_deref(), Some("agree"));
        let text = render_text(&r);
        assert!(text.contains("pi0 order        2\n"), "{text}");
    }

    #[test]
    fn pso_cases() {
        assert_eq!(report(r#"{"preset":"PSO","p":2,"q":4}"#).order, Some(2));
        let r = report(r#"{"preset":"PSO","p":1,"q":3}"#);
        assert_eq!(r.order, Some(1));
        assert!(render_text(&r).contains("pi0 order        1 (connected)"));
        let r = report(r#"{"preset":"PSO","p":4,"q":4}"#);
        let reps = r.representatives.unwrap();
        let labels: Vec<_> = reps.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, vec!["e∨1", "ϖ∨4", "e∨1 + ϖ∨4"]);
        assert!(reps.iter().all(|e| e.note.is_some()));
    }

    #[test]
    fn json_round_trip() {
        let r = report(r#"{"preset":"PSO","p":4,"q":4,"outputs":["pi0","reps","h1","oracle"]}"#);
        let s = render_json(&r);
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(render_json(&back), s);
    }

    #[test]
    fn oracle_skipped_when_bound_small() {
        let job = parse_jobspec(r#"{"preset":"TORUS_SPLIT","n":3,"outputs":["oracle"]}"#).unwrap();
        assert_eq!(run_with_bound(&job, 4).unwrap().oracle.as_deref(), Some("skipped"));
        assert_eq!(run_with_bound(&job, 8).unwrap().oracle.as_deref(), Some("agree"));
    }

    #[test]
    fn deterministic() {
        let doc = r#"{"preset":"E7","form":"EVII","outputs":["pi0","reps","h1"]}"#;
        assert_eq!(render_text(&report(doc)), render_text(&report(doc)));
    }
}
