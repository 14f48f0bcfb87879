//! Survey over every degree set up to a bound, one section per set.

use std::fmt::Write;

use degree_trees::asymptotics::DEFAULT_TILT_TOL;
use degree_trees::{
    count_seq, estimate_growth, guess_recurrence, limiting_degree_distribution, BigInt, BigUint, DegreeDistribution,
    DegreeRule, DegreeSet, Error, GrowthEstimate, GuessOptions, PRecurrence,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::ReportArgs;
use crate::commands::guard_terms;
use crate::markdown::{join_values, plain_header};
use crate::{Doc, Failure, RunConfig};

/// Largest bound M accepted; the survey has 2^(M-1) sections.
pub const MAX_SURVEY_BOUND: u32 = 12;

/// Either a value or the reason it is absent from a section.
enum Outcome<T> {
    Found(T),
    Missing(String),
}

/// Errors that only mean "not available for this set".
fn soften<T>(r: degree_trees::Result<T>) -> Result<Outcome<T>, Failure> {
    match r {
        Ok(v) => Ok(Outcome::Found(v)),
        Err(e @ (Error::InsufficientData { .. } | Error::ZeroTerm { .. } | Error::DegenerateDistribution(_))) => {
            Ok(Outcome::Missing(e.to_string()))
        }
        Err(e) => Err(e.into()),
    }
}

struct Section {
    rule: DegreeRule,
    terms: Vec<BigUint>,
    recurrence: Outcome<PRecurrence>,
    growth: Outcome<GrowthEstimate>,
    distribution: Option<Outcome<DegreeDistribution>>,
}

fn section(rule: DegreeRule, a: &ReportArgs) -> Result<Section, Failure> {
    let terms = count_seq(&rule, a.terms)?;
    let signed: Vec<BigInt> = terms.iter().cloned().map(BigInt::from).collect();
    let recurrence = match soften(guess_recurrence(&signed, 2, GuessOptions::new(a.rec_order, a.rec_degree)))? {
        Outcome::Found(Some(r)) => Outcome::Found(r),
        Outcome::Found(None) => {
            Outcome::Missing(format!("none with order <= {} and degree <= {}", a.rec_order, a.rec_degree))
        }
        Outcome::Missing(why) => Outcome::Missing(why),
    };
    let growth = soften(estimate_growth(&terms, 2))?;
    let distribution = match &rule {
        DegreeRule::Allowed(p) => Some(soften(limiting_degree_distribution(p, DEFAULT_TILT_TOL))?),
        DegreeRule::Forbidden(_) => None,
    };
    Ok(Section { rule, terms, recurrence, growth, distribution })
}

fn set_label(rule: &DegreeRule) -> String {
    match rule {
        DegreeRule::Allowed(p) => format!("P = {p}"),
        DegreeRule::Forbidden(f) => format!("F = {f}"),
    }
}

fn outcome_json<T>(o: &Outcome<T>, f: impl Fn(&T) -> Value) -> Value {
    match o {
        Outcome::Found(v) => f(v),
        Outcome::Missing(why) => json!({ "missing": why }),
    }
}

fn growth_json(g: &GrowthEstimate) -> Value {
    json!({ "c": g.c, "c_sequence_tail": g.c_sequence_tail, "stride": g.stride, "exponent_estimate": g.exponent_estimate })
}

fn distribution_json(d: &DegreeDistribution) -> Value {
    let probs: serde_json::Map<String, Value> = d.probs.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({ "probs": probs, "tilt": d.tilt, "boundary": d.boundary })
}

fn distribution_text(d: &DegreeDistribution) -> String {
    let parts: Vec<String> = d.probs.iter().map(|(k, p)| format!("{k}: {p:.6}")).collect();
    match d.tilt {
        Some(t) => format!("{} (tilt {t:.10})", parts.join(", ")),
        None => format!("{} (no finite tilt)", parts.join(", ")),
    }
}

pub fn survey(cfg: &RunConfig, a: &ReportArgs) -> Result<Doc, Failure> {
    if a.terms < 2 {
        return Err(Failure::Usage(format!("--terms must be at least 2, got {}", a.terms)));
    }
    guard_terms(cfg, "--terms", a.terms)?;
    let (kind, bound, rules) = match (a.max_degree, a.forbidden_upto) {
        (Some(m), None) => (
            "allowed",
            m,
            DegreeSet::subsets_containing_one(m).into_iter().map(DegreeRule::Allowed).collect::<Vec<_>>(),
        ),
        (None, Some(m)) => {
            ("forbidden", m, DegreeSet::subsets_of_range(2, m).into_iter().map(DegreeRule::Forbidden).collect())
        }
        _ => return Err(Failure::Usage("give exactly one of --max-degree and --forbidden-upto".into())),
    };
    if bound == 0 {
        return Err(Failure::Usage("the survey bound must be positive".into()));
    }
    if bound > MAX_SURVEY_BOUND {
        return Err(Failure::Guard(format!("survey bound {bound} exceeds {MAX_SURVEY_BOUND}")));
    }
    // Collecting an indexed parallel iterator keeps the input order.
    let sections = rules.into_par_iter().map(|r| section(r, a)).collect::<Result<Vec<_>, _>>()?;

    let scope = match kind {
        "allowed" => format!("every allowed set P ⊆ {{1..{bound}}} with 1 ∈ P"),
        _ => format!("every forbidden set F ⊆ {{2..{bound}}}"),
    };
    let mut markdown = format!(
        "# Labeled trees with restricted degrees\n\nSections cover {scope}. Counts run over n = 2..{}; recurrences are searched up to order {} and degree {}.\n",
        a.terms, a.rec_order, a.rec_degree
    );
    let mut plain = plain_header(&[
        ("report", kind.to_string()),
        ("bound", bound.to_string()),
        ("terms", a.terms.to_string()),
        ("n_start", "2".into()),
    ]);
    let mut items = Vec::new();
    for s in &sections {
        let label = set_label(&s.rule);
        writeln!(markdown, "\n## {label}\n").unwrap();
        writeln!(markdown, "Counts for n = 2..{}: {}\n", a.terms, join_values(&s.terms)).unwrap();
        writeln!(plain, "{}: {}", s.rule, join_values(&s.terms).replace(' ', "")).unwrap();
        match &s.recurrence {
            Outcome::Found(r) => {
                writeln!(
                    markdown,
                    "Recurrence: `{}` (order {}, degree {}, verified on {} held-out terms)\n",
                    r.to_text(),
                    r.order(),
                    r.degree(),
                    r.terms_verified
                )
                .unwrap();
                writeln!(plain, "  recurrence: {}", r.to_text()).unwrap();
            }
            Outcome::Missing(why) => {
                writeln!(markdown, "Recurrence: {why}\n").unwrap();
                writeln!(plain, "  recurrence: {why}").unwrap();
            }
        }
        match &s.growth {
            Outcome::Found(g) => {
                writeln!(
                    markdown,
                    "Growth: a(n) ≈ K · c^n · n! · n^θ with c ≈ {:.10}, θ ≈ {:.3}\n",
                    g.c, g.exponent_estimate
                )
                .unwrap();
                writeln!(plain, "  c: {}", g.c).unwrap();
            }
            Outcome::Missing(why) => {
                writeln!(markdown, "Growth: {why}\n").unwrap();
                writeln!(plain, "  c: {why}").unwrap();
            }
        }
        if let Some(d) = &s.distribution {
            let text = match d {
                Outcome::Found(d) => distribution_text(d),
                Outcome::Missing(why) => why.clone(),
            };
            writeln!(markdown, "Limiting degree fractions: {text}").unwrap();
            writeln!(plain, "  distribution: {text}").unwrap();
        }
        items.push(json!({
            "rule": s.rule.to_string(),
            "terms": s.terms.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "recurrence": outcome_json(&s.recurrence, |r| r.to_json()),
            "growth": outcome_json(&s.growth, growth_json),
            "distribution": s.distribution.as_ref().map(|d| outcome_json(d, distribution_json)),
        }));
    }
    let result = json!({ "kind": kind, "bound": bound, "terms": a.terms, "n_start": 2, "sections": items });
    Ok(Doc { result, markdown, plain })
}
