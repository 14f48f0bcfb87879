use std::collections::BTreeMap;
use std::fmt::Write;

use degree_trees::asymptotics::constrained_degree_fraction;
use degree_trees::numeric::{rational_string, to_f64};
use degree_trees::prufer::sample_degree_counts;
use degree_trees::stats::{expectation, joint_normality_diagnostics, normality_diagnostics, variance};
use degree_trees::{
    count, count_seq, estimate_growth, extend_with_recurrence, guess_recurrence, limiting_degree_distribution,
    oracle_count, oracle_degree_statistics, sample_trees, BigInt, BigRational, DegreeRule, GuessOptions, MomentReport,
    PruferSequence,
};
use serde_json::{json, Map, Value};

use crate::args::{
    AsymArgs, Command, CountArgs, DistArgs, MomentsArgs, NormalityArgs, OracleCommand, OracleSampleArgs,
    OracleStatsArgs, RecArgs, SeqArgs,
};
use crate::markdown::{join_values, plain_header, table};
use crate::{report, Doc, Failure, RunConfig};

const MAX_SAMPLES: usize = 10_000_000;

pub fn dispatch(cfg: &RunConfig) -> Result<Doc, Failure> {
    match &cfg.command {
        Command::Seq(a) => seq(cfg, a),
        Command::Count(a) => count_cmd(cfg, a),
        Command::Rec(a) => rec(cfg, a),
        Command::Asym(a) => asym(cfg, a),
        Command::Dist(a) => dist(cfg, a),
        Command::Moments(a) => moments(a),
        Command::Normality(a) => normality(a),
        Command::Oracle(OracleCommand::Count(a)) => oracle_count_cmd(cfg, a),
        Command::Oracle(OracleCommand::Stats(a)) => oracle_stats(cfg, a),
        Command::Oracle(OracleCommand::Sample(a)) => oracle_sample(cfg, a),
        Command::Report(a) => report::survey(cfg, a),
    }
}

pub fn guard_terms(cfg: &RunConfig, what: &str, n: usize) -> Result<(), Failure> {
    if n > cfg.guards.max_terms {
        return Err(Failure::Guard(format!("{what} = {n} exceeds --max-terms {}", cfg.guards.max_terms)));
    }
    Ok(())
}

fn guard_oracle(cfg: &RunConfig, n: usize) -> Result<(), Failure> {
    if n > cfg.guards.max_oracle_n {
        return Err(Failure::Guard(format!("n = {n} exceeds --max-oracle-n {}", cfg.guards.max_oracle_n)));
    }
    Ok(())
}

fn need_terms(terms: usize) -> Result<(), Failure> {
    if terms < 2 {
        return Err(Failure::Usage(format!("--terms must be at least 2, got {terms}")));
    }
    Ok(())
}

fn float_map<K: ToString>(m: &BTreeMap<K, f64>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn seq(cfg: &RunConfig, a: &SeqArgs) -> Result<Doc, Failure> {
    need_terms(a.terms)?;
    guard_terms(cfg, "--terms", a.terms)?;
    let rule = a.rule.rule()?;
    let values = count_seq(&rule, a.terms)?;
    let indexed = || values.iter().enumerate().map(|(i, v)| (i + 2, v));
    let result = json!({
        "rule": rule.to_string(),
        "n_start": 2,
        "terms": indexed().map(|(n, v)| json!({ "n": n, "value": v.to_string() })).collect::<Vec<_>>(),
    });
    let mut plain = plain_header(&[("rule", rule.to_string()), ("n_start", "2".into())]);
    for v in &values {
        writeln!(plain, "{v}").unwrap();
    }
    let markdown = format!(
        "## Tree counts, {rule}\n\n{}",
        table(&["n", "count"], indexed().map(|(n, v)| vec![n.to_string(), v.to_string()]))
    );
    Ok(Doc { result, markdown, plain })
}

fn count_cmd(cfg: &RunConfig, a: &CountArgs) -> Result<Doc, Failure> {
    guard_terms(cfg, "--n", a.n)?;
    let rule = a.rule.rule()?;
    let value = count(&rule, a.n)?;
    Ok(Doc {
        result: json!({ "rule": rule.to_string(), "n": a.n, "value": value.to_string() }),
        markdown: format!("Trees on {} vertices, {rule}: **{value}**\n", a.n),
        plain: format!("{value}\n"),
    })
}

fn signed_terms(rule: &DegreeRule, max_n: usize) -> Result<Vec<BigInt>, Failure> {
    Ok(count_seq(rule, max_n)?.into_iter().map(BigInt::from).collect())
}

fn rec(cfg: &RunConfig, a: &RecArgs) -> Result<Doc, Failure> {
    need_terms(a.terms)?;
    guard_terms(cfg, "--terms", a.terms)?;
    if let Some(e) = a.extend {
        guard_terms(cfg, "--extend", e)?;
    }
    let rule = a.rule.rule()?;
    let terms = signed_terms(&rule, a.terms)?;
    let opts = GuessOptions::new(a.max_order, a.max_degree).verify(a.verify);
    let found = guess_recurrence(&terms, 2, opts)?;

    let mut extension = Value::Null;
    if let (Some(r), Some(total_n)) = (&found, a.extend) {
        if total_n > a.terms {
            let direct = signed_terms(&rule, total_n)?;
            let extended = extend_with_recurrence(r, &terms, direct.len())?;
            if let Some(i) = (0..direct.len()).find(|&i| direct[i] != extended[i]) {
                return Err(Failure::Arithmetic(format!(
                    "recurrence predicts {} at n = {}, direct count is {}",
                    extended[i],
                    i + 2,
                    direct[i]
                )));
            }
            extension = json!({ "n_max": total_n, "agrees": true, "last": extended.last().unwrap().to_string() });
        }
    }

    let text = found.as_ref().map_or_else(|| "none".to_string(), |r| r.to_text());
    let result = json!({
        "rule": rule.to_string(),
        "terms": a.terms,
        "max_order": a.max_order,
        "max_degree": a.max_degree,
        "verify": a.verify,
        "recurrence": found.as_ref().map(|r| r.to_json()),
        "text": text,
        "extension": extension,
    });
    let mut plain =
        plain_header(&[("rule", rule.to_string()), ("n_start", "2".into()), ("terms", a.terms.to_string())]);
    writeln!(plain, "{text}").unwrap();
    let mut markdown = format!("## Recurrence, {rule}\n\n");
    match &found {
        Some(r) => {
            writeln!(markdown, "`{text}`\n").unwrap();
            writeln!(
                markdown,
                "Order {}, degree {}; fitted on {} terms, verified on {}.",
                r.order(),
                r.degree(),
                r.terms_used,
                r.terms_verified
            )
            .unwrap();
            if let Some(total_n) = a.extend.filter(|&t| t > a.terms) {
                writeln!(markdown, "\nExtension to n = {total_n} agrees with direct counts.").unwrap();
            }
        }
        None => {
            writeln!(markdown, "No recurrence with order <= {} and degree <= {}.", a.max_order, a.max_degree).unwrap()
        }
    }
    Ok(Doc { result, markdown, plain })
}

fn asym(cfg: &RunConfig, a: &AsymArgs) -> Result<Doc, Failure> {
    need_terms(a.terms)?;
    guard_terms(cfg, "--terms", a.terms)?;
    let rule = a.rule.rule()?;
    let g = estimate_growth(&count_seq(&rule, a.terms)?, 2)?;
    let spread = g.c_sequence_tail.iter().fold(0f64, |m, v| m.max((v - g.c).abs()));
    let result = json!({
        "rule": rule.to_string(),
        "terms": a.terms,
        "c": g.c,
        "c_sequence_tail": g.c_sequence_tail,
        "tail_spread": spread,
        "stride": g.stride,
        "n_max_used": g.n_max_used,
        "exponent_estimate": g.exponent_estimate,
    });
    let mut plain = plain_header(&[("rule", rule.to_string()), ("terms", a.terms.to_string())]);
    writeln!(plain, "c = {}", g.c).unwrap();
    writeln!(plain, "c_tail = {}", join_values(&g.c_sequence_tail)).unwrap();
    writeln!(plain, "stride = {}", g.stride).unwrap();
    writeln!(plain, "n_max_used = {}", g.n_max_used).unwrap();
    writeln!(plain, "exponent_estimate = {}", g.exponent_estimate).unwrap();
    let markdown = format!(
        "## Growth, {rule}\n\n{}",
        table(
            &["quantity", "value"],
            [
                vec!["c".to_string(), g.c.to_string()],
                vec!["recent estimates".into(), join_values(&g.c_sequence_tail)],
                vec!["support stride".into(), g.stride.to_string()],
                vec!["largest n used".into(), g.n_max_used.to_string()],
                vec!["power of n".into(), format!("{:.4}", g.exponent_estimate)],
            ]
        )
    );
    Ok(Doc { result, markdown, plain })
}

fn dist(cfg: &RunConfig, a: &DistArgs) -> Result<Doc, Failure> {
    let d = limiting_degree_distribution(&a.allowed, a.tol)?;
    let finite = match a.n {
        Some(n) => {
            guard_terms(cfg, "--n", n)?;
            let mut m = BTreeMap::new();
            for deg in &d.support {
                m.insert(*deg, constrained_degree_fraction(&a.allowed, *deg, n)?);
            }
            Some(m)
        }
        None => None,
    };
    let result = json!({
        "allowed": a.allowed.to_string(),
        "probs": float_map(&d.probs),
        "tilt": d.tilt,
        "boundary": d.boundary,
        "mean_offset": d.mean_offset(),
        "finite_n": a.n,
        "finite_fractions": finite.as_ref().map(float_map),
    });
    let mut plain = plain_header(&[("allowed", a.allowed.to_string())]);
    match d.tilt {
        Some(t) => writeln!(plain, "tilt = {t}").unwrap(),
        None => writeln!(plain, "tilt = none (boundary)").unwrap(),
    }
    for (deg, p) in &d.probs {
        write!(plain, "{deg} {p}").unwrap();
        if let Some(f) = &finite {
            write!(plain, " {}", f[deg]).unwrap();
        }
        plain.push('\n');
    }
    let mut headers = vec!["degree", "limit fraction"];
    let finite_header = a.n.map(|n| format!("fraction at n = {n}"));
    if let Some(h) = &finite_header {
        headers.push(h);
    }
    let rows = d.probs.iter().map(|(deg, p)| {
        let mut row = vec![deg.to_string(), p.to_string()];
        if let Some(f) = &finite {
            row.push(f[deg].to_string());
        }
        row
    });
    let tilt = d.tilt.map_or_else(|| "none; the family degenerates to paths".to_string(), |t| t.to_string());
    let markdown =
        format!("## Limiting degree distribution, allowed {}\n\nTilt: {tilt}\n\n{}", a.allowed, table(&headers, rows));
    Ok(Doc { result, markdown, plain })
}

fn moment_doc(report: MomentReport) -> Doc {
    let label = match report.degrees.as_slice() {
        [d] => format!("X_{d}"),
        ds => ds.iter().map(|d| format!("X_{d}")).collect::<Vec<_>>().join(", "),
    };
    let mut plain =
        plain_header(&[("degrees", join_values(&report.degrees).replace(' ', "")), ("n", report.n.to_string())]);
    let mut rows = Vec::new();
    for (k, v) in &report.exact {
        writeln!(plain, "{k} = {} ({})", rational_string(v), report.floats[k]).unwrap();
        rows.push(vec![k.clone(), rational_string(v), report.floats[k].to_string()]);
    }
    for (k, v) in &report.floats {
        if !report.exact.contains_key(k) {
            writeln!(plain, "{k} ~ {v}").unwrap();
            rows.push(vec![k.clone(), String::new(), v.to_string()]);
        }
    }
    for (k, v) in &report.asymptotic_slopes {
        writeln!(plain, "slope {k} = {v}").unwrap();
    }
    let slopes =
        table(&["limit", "value"], report.asymptotic_slopes.iter().map(|(k, v)| vec![k.clone(), v.to_string()]));
    let markdown = format!(
        "## Moments of {label}, n = {}\n\n{}\n### Asymptotic constants\n\n{slopes}",
        report.n,
        table(&["quantity", "exact", "float"], rows)
    );
    Doc { result: report.to_json(), markdown, plain }
}

fn moments(a: &MomentsArgs) -> Result<Doc, Failure> {
    let report = match (a.d, a.d1, a.d2) {
        (Some(d), _, _) => MomentReport::single(d, a.n, a.upto)?,
        (None, Some(d1), Some(d2)) => MomentReport::mixed(d1, d2, a.n, a.k1, a.k2)?,
        _ => return Err(Failure::Usage("give --d, or both --d1 and --d2".into())),
    };
    Ok(moment_doc(report))
}

fn normality(a: &NormalityArgs) -> Result<Doc, Failure> {
    match (a.d, a.d1, a.d2) {
        (Some(d), _, _) => single_normality(d, &a.n_list),
        (None, Some(d1), Some(d2)) => joint_normality(d1, d2, a),
        _ => Err(Failure::Usage("give --d, or both --d1 and --d2".into())),
    }
}

fn single_normality(d: u32, n_list: &[usize]) -> Result<Doc, Failure> {
    let r = normality_diagnostics(d, n_list)?;
    let orders: Vec<usize> = r.normal.keys().copied().collect();
    let result = json!({
        "d": d,
        "rows": r.rows.iter().map(|row| json!({
            "n": row.n,
            "variance": row.variance,
            "standardized": float_map(&row.standardized),
        })).collect::<Vec<_>>(),
        "degenerate": r.degenerate,
        "extrapolated": float_map(&r.extrapolated),
        "normal": float_map(&r.normal),
    });
    let mut headers = vec!["n".to_string()];
    headers.extend(orders.iter().map(|k| format!("k={k}")));
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    let mut rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            std::iter::once(row.n.to_string())
                .chain(orders.iter().map(|k| format!("{:.6}", row.standardized[k])))
                .collect()
        })
        .collect();
    if !r.extrapolated.is_empty() {
        rows.push(
            std::iter::once("limit".to_string())
                .chain(orders.iter().map(|k| format!("{:.6}", r.extrapolated[k])))
                .collect(),
        );
    }
    rows.push(std::iter::once("normal".to_string()).chain(orders.iter().map(|k| format!("{}", r.normal[k]))).collect());
    let mut plain = plain_header(&[("d", d.to_string()), ("n_list", join_values(n_list).replace(' ', ""))]);
    for row in &rows {
        writeln!(plain, "{}", row.join(" ")).unwrap();
    }
    let markdown = format!("## Standardized central moments of X_{d}\n\n{}", table(&header_refs, rows));
    Ok(Doc { result, markdown, plain })
}

fn joint_normality(d1: u32, d2: u32, a: &NormalityArgs) -> Result<Doc, Failure> {
    let orders: Vec<(usize, usize)> = a.orders.iter().map(|o| (o.0, o.1)).collect();
    let r = joint_normality_diagnostics(d1, d2, &a.n_list, &orders)?;
    let key = |o: &(usize, usize)| format!("{}:{}", o.0, o.1);
    let keyed = |m: &BTreeMap<(usize, usize), f64>| {
        Value::Object(m.iter().map(|(o, v)| (key(o), json!(v))).collect::<Map<_, _>>())
    };
    let result = json!({
        "d1": d1,
        "d2": d2,
        "rows": r.rows.iter().map(|row| json!({ "n": row.n, "scaled": keyed(&row.scaled) })).collect::<Vec<_>>(),
        "degenerate": r.degenerate,
        "extrapolated": keyed(&r.extrapolated),
        "predicted": keyed(&r.predicted),
        "limiting_correlation": r.limit.rho,
        "printed_correlation_form": r.limit.printed_form,
        "within_stated_range": r.limit.within_stated_range,
    });
    let mut headers = vec!["n".to_string()];
    headers.extend(orders.iter().map(key));
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    let mut rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            std::iter::once(row.n.to_string()).chain(orders.iter().map(|o| format!("{:.6}", row.scaled[o]))).collect()
        })
        .collect();
    if !r.extrapolated.is_empty() {
        rows.push(
            std::iter::once("limit".to_string())
                .chain(orders.iter().map(|o| format!("{:.6}", r.extrapolated[o])))
                .collect(),
        );
    }
    rows.push(
        std::iter::once("bivariate normal".to_string())
            .chain(orders.iter().map(|o| format!("{:.6}", r.predicted[o])))
            .collect(),
    );
    let mut plain = plain_header(&[
        ("d1", d1.to_string()),
        ("d2", d2.to_string()),
        ("n_list", join_values(&a.n_list).replace(' ', "")),
        ("rho", r.limit.rho.to_string()),
    ]);
    for row in &rows {
        writeln!(plain, "{}", row.join(" ")).unwrap();
    }
    let markdown = format!(
        "## Scaled mixed central moments of (X_{d1}, X_{d2})\n\nLimiting correlation: {}\n\n{}",
        r.limit.rho,
        table(&header_refs, rows)
    );
    Ok(Doc { result, markdown, plain })
}

fn oracle_count_cmd(cfg: &RunConfig, a: &CountArgs) -> Result<Doc, Failure> {
    guard_oracle(cfg, a.n)?;
    let rule = a.rule.rule()?;
    let brute = oracle_count(&rule, a.n)?;
    let formula = count(&rule, a.n)?;
    if brute != formula {
        return Err(Failure::Arithmetic(format!("enumeration gives {brute}, formula gives {formula}")));
    }
    Ok(Doc {
        result: json!({ "rule": rule.to_string(), "n": a.n, "value": brute.to_string(), "formula_agrees": true }),
        markdown: format!("Enumerated trees on {} vertices, {rule}: **{brute}** (formula agrees)\n", a.n),
        plain: format!("{brute}\n"),
    })
}

fn oracle_stats(cfg: &RunConfig, a: &OracleStatsArgs) -> Result<Doc, Failure> {
    guard_oracle(cfg, a.n)?;
    let law = oracle_degree_statistics(a.n, &a.degrees)?;
    let mut per_degree = Map::new();
    let mut md_rows = Vec::new();
    let mut plain = plain_header(&[("n", a.n.to_string()), ("degrees", join_values(&a.degrees).replace(' ', ""))]);
    writeln!(plain, "trees = {}", law.total()).unwrap();
    for (i, &d) in a.degrees.iter().enumerate() {
        let mean = law.expect(|x| BigRational::from_integer(x[i].into()));
        let second = law.expect(|x| BigRational::from_integer((x[i] * x[i]).into()));
        let var = &second - &mean * &mean;
        let (exact_mean, exact_var) = (expectation(d, a.n)?, variance(d, a.n)?);
        if mean != exact_mean || var != exact_var {
            return Err(Failure::Arithmetic(format!("oracle moments of X_{d} disagree with the closed forms")));
        }
        let marginal: Map<String, Value> = law.marginal(i).iter().map(|(k, c)| (k.to_string(), json!(c))).collect();
        per_degree.insert(
            d.to_string(),
            json!({ "mean": rational_string(&mean), "variance": rational_string(&var), "law": marginal }),
        );
        writeln!(plain, "X_{d}: mean = {} variance = {}", rational_string(&mean), rational_string(&var)).unwrap();
        md_rows.push(vec![format!("X_{d}"), rational_string(&mean), rational_string(&var)]);
    }
    let joint: Vec<Value> = law.counts.iter().map(|(t, c)| json!({ "counts": t, "trees": c })).collect();
    for (t, c) in &law.counts {
        writeln!(plain, "{} {c}", join_values(t).replace(' ', "")).unwrap();
    }
    let mut markdown = format!("## Enumerated degree statistics, n = {}\n\n{} trees in total.\n\n", a.n, law.total());
    markdown.push_str(&table(&["variable", "mean", "variance"], md_rows));
    let labels: Vec<String> = a.degrees.iter().map(|d| format!("X_{d}")).collect();
    markdown.push_str(&format!("\nJoint law of ({}):\n\n", labels.join(", ")));
    markdown
        .push_str(&table(&["counts", "trees"], law.counts.iter().map(|(t, c)| vec![join_values(t), c.to_string()])));
    Ok(Doc {
        result: json!({
            "n": a.n,
            "degrees": a.degrees,
            "trees": law.total(),
            "joint": joint,
            "per_degree": per_degree,
            "closed_forms_agree": true,
        }),
        markdown,
        plain,
    })
}

fn oracle_sample(cfg: &RunConfig, a: &OracleSampleArgs) -> Result<Doc, Failure> {
    guard_terms(cfg, "--n", a.n)?;
    if a.samples == 0 || a.samples > MAX_SAMPLES {
        return Err(Failure::Usage(format!("--samples must lie in 1..={MAX_SAMPLES}")));
    }
    match a.degree {
        Some(d) => sample_summary(cfg, a, d),
        None => sample_listing(cfg, a),
    }
}

fn sample_summary(cfg: &RunConfig, a: &OracleSampleArgs, d: u32) -> Result<Doc, Failure> {
    let xs = sample_degree_counts(a.n, d, a.samples, cfg.seed)?;
    let m = xs.len() as f64;
    let mean = xs.iter().map(|&x| x as f64).sum::<f64>() / m;
    let var = if xs.len() > 1 { xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0) } else { 0.0 };
    let std_error = (var / m).sqrt();
    let exact = to_f64(&expectation(d, a.n)?);
    let result = json!({
        "n": a.n,
        "degree": d,
        "samples": a.samples,
        "seed": cfg.seed,
        "sample_mean": mean,
        "sample_variance": var,
        "standard_error": std_error,
        "exact_mean": exact,
    });
    let mut plain = plain_header(&[
        ("n", a.n.to_string()),
        ("degree", d.to_string()),
        ("samples", a.samples.to_string()),
        ("seed", cfg.seed.to_string()),
    ]);
    writeln!(
        plain,
        "sample_mean = {mean}\nsample_variance = {var}\nstandard_error = {std_error}\nexact_mean = {exact}"
    )
    .unwrap();
    let markdown = format!(
        "## Sampled X_{d}, n = {}, {} trees, seed {}\n\n{}",
        a.n,
        a.samples,
        cfg.seed,
        table(
            &["quantity", "value"],
            [
                vec!["sample mean".to_string(), mean.to_string()],
                vec!["sample variance".into(), var.to_string()],
                vec!["standard error".into(), std_error.to_string()],
                vec!["exact mean".into(), exact.to_string()],
            ]
        )
    );
    Ok(Doc { result, markdown, plain })
}

fn sample_listing(cfg: &RunConfig, a: &OracleSampleArgs) -> Result<Doc, Failure> {
    let trees = sample_trees(a.n, a.samples, cfg.seed)?;
    let mut items = Vec::new();
    let mut plain =
        plain_header(&[("n", a.n.to_string()), ("samples", a.samples.to_string()), ("seed", cfg.seed.to_string())]);
    let mut markdown = format!("## Random trees, n = {}, seed {}\n\n", a.n, cfg.seed);
    for (i, t) in trees.iter().enumerate() {
        let code = PruferSequence::encode(t)?;
        let edges: Vec<String> = t.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        items.push(json!({ "code": code.code(), "edges": t.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>() }));
        writeln!(plain, "code {}\nedges {}", join_values(code.code()).replace(' ', ""), edges.join(" ")).unwrap();
        writeln!(markdown, "{}. code ({}); edges {}", i + 1, join_values(code.code()), edges.join(", ")).unwrap();
    }
    Ok(Doc { result: json!({ "n": a.n, "seed": cfg.seed, "trees": items }), markdown, plain })
}
