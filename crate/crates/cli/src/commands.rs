use serde_json::{json, Value};

use orbitc_core::classifier::{
    analyze, group_decide, min_power, parse_element, Analysis, ElementType, Reason, Status, TorusElement,
};
use orbitc_core::root_system::format_factors;
use orbitc_core::span_oracle::{
    dimension_shortcut, eigenvalue_witness, explore_open, verify_span, Mode, OpenVariant, OracleConfig, SpanReport,
};
use orbitc_core::wright::{wright_check_with_cap, WrightReport};
use orbitc_core::{Error, Family, Result};

use crate::args::{Config, ModeArg, VariantArg};
use crate::render::{align, pairs, Rendered};

pub const EXIT_AC: u8 = 0;
pub const EXIT_SINGULAR: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_ERROR: u8 = 3;
/// A verdict contradicted by a proof: an exact span certificate or a satisfied
/// Wright criterion against Singular.
pub const EXIT_CONTRADICTION: u8 = 64;

const SWEEP_BUDGET: usize = 200_000;

pub struct Outcome {
    pub rendered: Rendered,
    pub code: u8,
    pub diagnostics: Vec<String>,
}

pub fn status_code(s: Status) -> u8 {
    match s {
        Status::AbsolutelyContinuous => EXIT_AC,
        Status::Singular => EXIT_SINGULAR,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn oracle_config(cfg: &Config, stop_at_certificate: bool) -> OracleConfig {
    OracleConfig {
        trials: cfg.trials,
        seed: cfg.seed,
        mode: match cfg.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        },
        tolerance: cfg.tol,
        stop_at_certificate,
        ..OracleConfig::default()
    }
}

/// Parses every spec, pointing at the offending character on failure.
pub fn parse_all(specs: &[String]) -> Result<Vec<TorusElement>> {
    specs
        .iter()
        .map(|s| {
            parse_element(s).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos, msg: format!("{msg}\n  {s}\n  {}^", " ".repeat(pos)) },
                other => other,
            })
        })
        .collect()
}

fn labels(a: &Analysis) -> Vec<String> {
    a.types.iter().map(ElementType::label).collect()
}

fn conjecture(a: &Analysis, cfg: &Config) -> Option<&'static str> {
    (a.verdict.reason == Reason::OpenCase && !cfg.no_conjecture).then_some("conjectured singular")
}

pub fn classify(specs: &[String]) -> Result<Outcome> {
    let elements = parse_all(specs)?;
    let header: Vec<String> =
        ["element", "type", "J", "parts", "sign", "S", "dominance", "|Phi_X|", "orbit_dim", "Phi_X"]
            .map(String::from)
            .to_vec();
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for x in &elements {
        let t = x.element_type()?;
        let phi = x.annihilator();
        let phi_type = format_factors(&phi.subsystem_type()?);
        let sign = serde_json::to_value(t.sign).expect("serializable");
        let dominance = serde_json::to_value(t.dominance()).expect("serializable");
        items.push(json!({
            "element": x.to_string(),
            "family": x.family(),
            "rank": x.rank(),
            "type": t.label(),
            "zero_block": t.zero_block,
            "parts": t.parts,
            "sign": sign,
            "S": t.s_value(),
            "dominance": dominance,
            "annihilator_size": phi.len(),
            "annihilator_type": phi_type,
            "orbit_dim": t.orbit_dim(),
        }));
        rows.push(vec![
            x.to_string(),
            t.label(),
            t.zero_block.to_string(),
            join(&t.parts, "+"),
            plain(&sign),
            t.s_value().to_string(),
            plain(&dominance),
            phi.len().to_string(),
            t.orbit_dim().to_string(),
            phi_type,
        ]);
    }
    Ok(Outcome {
        rendered: Rendered { json: Value::Array(items), table: align(&header, &rows), csv_header: header, csv_rows: rows },
        code: EXIT_AC,
        diagnostics: Vec::new(),
    })
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// How an oracle run relates to the verdict.
fn span_agreement(status: Status, report: &SpanReport) -> &'static str {
    match (status, report.certificate.as_ref()) {
        (Status::AbsolutelyContinuous, Some(_)) => "agree",
        (Status::AbsolutelyContinuous, None) => "inconclusive",
        (Status::Singular, None) => "agree",
        (Status::Singular, Some(c)) if c.exact => "contradiction",
        (Status::Singular, Some(_)) => "disagree",
        (Status::Unknown, Some(c)) if c.exact => "proof",
        (Status::Unknown, _) => "inconclusive",
    }
}

fn wright_agreement(status: Status, report: &WrightReport) -> &'static str {
    match (status, report.overall) {
        (Status::Singular, true) => "contradiction",
        (_, true) => "agree",
        (_, false) => "inconclusive",
    }
}

pub fn decide(specs: &[String], verify: bool, wright: bool, cfg: &Config) -> Result<Outcome> {
    let tuple = parse_all(specs)?;
    let a = analyze(&tuple)?;
    let status = a.verdict.status;
    let mut diagnostics = Vec::new();
    let mut code = status_code(status);
    let mut out = json!({
        "family": a.family,
        "rank": a.rank,
        "elements": tuple.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "types": labels(&a),
        "S": a.s_values,
        "S_sum": a.s_sum,
        "bound": a.bound,
        "eligible": a.eligible,
        "verdict": a.verdict,
    });
    let mut lines: Vec<(&str, String)> = vec![
        ("types", labels(&a).join(", ")),
        ("S", format!("{} (sum {}, bound {})", join(&a.s_values, ", "), a.s_sum, a.bound)),
        ("eligible", a.eligible.to_string()),
        ("verdict", a.verdict.to_string()),
    ];
    if let Some(note) = conjecture(&a, cfg) {
        out["annotation"] = json!(note);
        lines.push(("annotation", note.into()));
    }
    let mut extra_table = String::new();
    if verify {
        let shortcut = dimension_shortcut(&tuple)?;
        let report = verify_span(&tuple, &oracle_config(cfg, false))?;
        let agreement = span_agreement(status, &report);
        if agreement == "contradiction" {
            code = EXIT_CONTRADICTION;
            diagnostics.push(format!(
                "decide says Singular but trial {} gives an exact full-rank certificate",
                report.certificate.as_ref().map_or(0, |c| c.trial)
            ));
        }
        lines.push((
            "span",
            format!(
                "max rank {} of {} over {} {} trials{}",
                report.max_rank(),
                report.target_dim,
                report.trials.len(),
                if report.mode == Mode::Exact { "exact" } else { "numeric" },
                if report.is_proof() { ", exact certificate" } else { "" }
            ),
        ));
        lines.push(("span agreement", agreement.into()));
        if let Some(p) = &shortcut {
            lines.push(("dimension", format!("orbit dims sum to {} < {}", p.orbit_dim_sum, p.target_dim)));
        }
        out["verify"] = json!({
            "span": report,
            "dimension_shortcut": shortcut,
            "agreement": agreement,
        });
        if a.verdict.reason == Reason::NotEligible {
            let witness = eigenvalue_witness(&tuple, cfg.trials, cfg.seed, cfg.tol)?;
            lines.push((
                "eigenvalue witness",
                format!("{} of {} trials pass", witness.trials.iter().filter(|t| t.pass).count(), witness.trials.len()),
            ));
            out["verify"]["eigenvalue_witness"] = serde_json::to_value(&witness).expect("serializable");
        }
    }
    if wright {
        let report = wright_check_with_cap(&tuple, cfg.weyl_cap)?;
        let agreement = wright_agreement(status, &report);
        if agreement == "contradiction" {
            code = EXIT_CONTRADICTION;
            diagnostics.push("decide says Singular but the Wright criterion holds".into());
        }
        lines.push(("wright", format!("{} ({agreement})", if report.overall { "satisfied" } else { "not satisfied" })));
        extra_table = report.to_table();
        out["wright"] = serde_json::to_value(&report).expect("serializable");
        out["wright_agreement"] = json!(agreement);
    }
    let mut table = pairs(&lines);
    if !extra_table.is_empty() {
        table.push('\n');
        table.push_str(&extra_table);
    }
    let mut header = vec!["elements".to_string(), "types".into(), "S".into(), "bound".into(), "status".into(), "reason".into(), "case".into()];
    let mut row = vec![
        join(&tuple, " "),
        labels(&a).join(" "),
        join(&a.s_values, " "),
        a.bound.to_string(),
        a.verdict.status.to_string(),
        a.verdict.reason.to_string(),
        a.verdict.case.map(|c| c.to_string()).unwrap_or_default(),
    ];
    if let Some(v) = out.get("verify") {
        header.extend(["max_rank".to_string(), "target".into(), "span_agreement".into()]);
        row.extend([
            v["span"]["trials"].as_array().map_or(0, |t| t.iter().filter_map(|t| t["rank"].as_u64()).max().unwrap_or(0)).to_string(),
            v["span"]["target_dim"].to_string(),
            plain(&v["agreement"]),
        ]);
    }
    if let Some(w) = out.get("wright_agreement") {
        header.push("wright".into());
        row.push(plain(w));
    }
    Ok(Outcome {
        rendered: Rendered { json: out, table, csv_header: header, csv_rows: vec![row] },
        code,
        diagnostics,
    })
}

/// `B3` or `d4` into family and rank.
pub fn parse_system(s: &str) -> Result<(Family, usize)> {
    let t = s.trim();
    let mut chars = t.chars();
    let family: Family = chars.next().map(|c| c.to_string()).unwrap_or_default().parse()?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::Parse { pos: 1, msg: format!("expected a rank after the family letter in {t:?}") })?;
    family.check_rank(rank)?;
    Ok((family, rank))
}

/// Multisets of size `len` from `0..n`, as nondecreasing index lists.
fn multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, len, cur, out);
            cur.pop();
        }
    }
    rec(0, n, len, &mut cur, &mut out);
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn chain_text(x: &TorusElement) -> String {
    join(&x.reduction_chain(), " -> ")
}

pub fn sweep(system: &str, len: usize, verify: bool, cfg: &Config) -> Result<Outcome> {
    let (family, rank) = parse_system(system)?;
    if family == Family::D && rank < 4 {
        return Err(Error::Domain("sweeps in type D need rank at least 4".into()));
    }
    let types = ElementType::all(family, rank)?;
    let count = binomial((types.len() + len - 1) as u128, len as u128);
    if count > SWEEP_BUDGET as u128 {
        return Err(Error::Capacity { what: "type multisets".into(), needed: count, cap: SWEEP_BUDGET as u128 });
    }
    let witnesses: Vec<TorusElement> = types.iter().map(ElementType::witness).collect();
    let chains: Vec<String> = witnesses.iter().map(chain_text).collect();
    let oracle = oracle_config(cfg, true);
    let combos = multisets(types.len(), len);
    // Oracle trials parallelize internally, so tuples run in order.
    let mut rows = Vec::with_capacity(combos.len());
    let mut items = Vec::with_capacity(combos.len());
    let mut code = EXIT_AC;
    let mut diagnostics = Vec::new();
    let mut tally = [0usize; 3];
    for combo in &combos {
        let tuple: Vec<TorusElement> = combo.iter().map(|&i| witnesses[i].clone()).collect();
        let a = analyze(&tuple)?;
        tally[status_code(a.verdict.status) as usize] += 1;
        let mut item = json!({
            "types": labels(&a),
            "S": a.s_values,
            "bound": a.bound,
            "eligible": a.eligible,
            "verdict": a.verdict,
        });
        if let Some(note) = conjecture(&a, cfg) {
            item["annotation"] = json!(note);
        }
        let mut row = vec![
            labels(&a).join(" "),
            join(&a.s_values, " "),
            a.s_sum.to_string(),
            a.bound.to_string(),
            a.eligible.to_string(),
            a.verdict.status.to_string(),
            a.verdict.reason.to_string(),
            a.verdict.case.map(|c| c.to_string()).unwrap_or_default(),
        ];
        if verify {
            let report = verify_span(&tuple, &oracle)?;
            let agreement = span_agreement(a.verdict.status, &report);
            if agreement == "contradiction" {
                code = EXIT_CONTRADICTION;
                diagnostics.push(format!("{}: Singular contradicted by an exact certificate", labels(&a).join(" ")));
            } else if agreement == "disagree" {
                diagnostics.push(format!("{}: numeric full rank against Singular", labels(&a).join(" ")));
            }
            item["max_rank"] = json!(report.max_rank());
            item["target_dim"] = json!(report.target_dim);
            item["agreement"] = json!(agreement);
            row.extend([report.max_rank().to_string(), report.target_dim.to_string(), agreement.to_string()]);
        }
        row.push(combo.iter().map(|&i| chains[i].as_str()).collect::<Vec<_>>().join(" | "));
        items.push(item);
        rows.push(row);
    }
    let mut header: Vec<String> =
        ["types", "S", "S_sum", "bound", "eligible", "status", "reason", "case"].map(String::from).to_vec();
    if verify {
        header.extend(["max_rank", "target", "agreement"].map(String::from));
    }
    header.push("reduction_chains".into());
    let table_cols = header.len() - 1;
    let trimmed: Vec<Vec<String>> = rows.iter().map(|r| r[..table_cols].to_vec()).collect();
    let mut table = align(&header[..table_cols], &trimmed);
    table.push_str(&format!(
        "{family}{rank}, L={len}: {} tuples, {} AbsolutelyContinuous, {} Singular, {} Unknown\n",
        combos.len(),
        tally[0],
        tally[1],
        tally[2]
    ));
    let json = json!({
        "family": family,
        "rank": rank,
        "len": len,
        "counts": {"total": combos.len(), "absolutely_continuous": tally[0], "singular": tally[1], "unknown": tally[2]},
        "tuples": items,
    });
    Ok(Outcome { rendered: Rendered { json, table, csv_header: header, csv_rows: rows }, code, diagnostics })
}

pub fn explore(n: usize, variant: VariantArg, cfg: &Config) -> Result<Outcome> {
    let variant = match variant {
        VariantArg::D1 => OpenVariant::WithD1,
        VariantArg::Su1 => OpenVariant::WithSu1,
    };
    let report = explore_open(n, variant, &oracle_config(cfg, true))?;
    let proof = report.is_proof();
    let outcome = if proof {
        "PROOF: exact full-rank certificate, the pair is absolutely continuous"
    } else if report.certificate.is_some() {
        "numeric full rank only; rerun in exact mode for a proof"
    } else {
        "no certificate; deficiency is evidence, not proof"
    };
    let table = pairs(&[
        ("pair", format!("D{n}: SU({n}) with SU({})", n - 1)),
        ("variant", serde_json::to_value(variant).map(|v| plain(&v)).expect("serializable")),
        ("trials", report.trials.len().to_string()),
        ("max rank", format!("{} of {}", report.max_rank(), report.target_dim)),
        ("orbit dim sum", report.orbit_dim_sum.to_string()),
        ("outcome", outcome.into()),
    ]);
    let header = ["trial", "seed", "rank"].map(String::from).to_vec();
    let rows = report.trials.iter().map(|t| vec![t.index.to_string(), t.seed.to_string(), t.rank.to_string()]).collect();
    let json = json!({
        "n": n,
        "variant": variant,
        "max_rank": report.max_rank(),
        "proof": proof,
        "outcome": outcome,
        "report": report,
    });
    Ok(Outcome {
        rendered: Rendered { json, table, csv_header: header, csv_rows: rows },
        code: if proof { EXIT_AC } else { EXIT_UNKNOWN },
        diagnostics: Vec::new(),
    })
}

pub fn wright(specs: &[String], cfg: &Config) -> Result<Outcome> {
    let tuple = parse_all(specs)?;
    let report = wright_check_with_cap(&tuple, cfg.weyl_cap)?;
    let l = tuple.len();
    let mut header = ["psi_type", "class_size", "psi_len", "lhs"].map(String::from).to_vec();
    header.extend((1..=l).map(|i| format!("min{i}")));
    header.extend(["rhs", "satisfied"].map(String::from));
    let rows = report
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.psi_type.clone(), r.class_size.to_string(), r.psi_len.to_string(), r.lhs.to_string()];
            row.extend(r.min_intersections.iter().map(ToString::to_string));
            row.extend([r.rhs.to_string(), r.satisfied.to_string()]);
            row
        })
        .collect();
    Ok(Outcome {
        rendered: Rendered {
            json: serde_json::to_value(&report).expect("serializable"),
            table: report.to_table(),
            csv_header: header,
            csv_rows: rows,
        },
        code: EXIT_AC,
        diagnostics: Vec::new(),
    })
}

pub fn group(specs: &[String]) -> Result<Outcome> {
    let tuple = parse_all(specs)?;
    let d = group_decide(&tuple)?;
    let basis = serde_json::to_value(d.basis).expect("serializable");
    let table = pairs(&[
        ("status", d.status.to_string()),
        ("basis", plain(&basis)),
        ("algebra verdict", d.algebra.to_string()),
        ("larger group annihilator", join(&d.mismatched, ", ")),
    ]);
    let header = ["status", "basis", "algebra_status", "mismatched"].map(String::from).to_vec();
    let row = vec![d.status.to_string(), plain(&basis), d.algebra.status.to_string(), join(&d.mismatched, " ")];
    Ok(Outcome {
        rendered: Rendered {
            json: serde_json::to_value(&d).expect("serializable"),
            table,
            csv_header: header,
            csv_rows: vec![row],
        },
        code: status_code(d.status),
        diagnostics: Vec::new(),
    })
}

pub fn power(spec: &str) -> Result<Outcome> {
    let x = parse_all(&[spec.to_string()])?.remove(0);
    let t = x.element_type()?;
    let m = min_power(&x)?;
    let json = json!({"element": x.to_string(), "type": t.label(), "min_power": m.to_string()});
    let table = pairs(&[("element", x.to_string()), ("type", t.label()), ("min power", m.to_string())]);
    Ok(Outcome {
        rendered: Rendered {
            json,
            table,
            csv_header: ["element", "type", "min_power"].map(String::from).to_vec(),
            csv_rows: vec![vec![x.to_string(), t.label(), m.to_string()]],
        },
        code: EXIT_AC,
        diagnostics: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_count() {
        assert_eq!(multisets(4, 2).len(), 10);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(multisets(3, 3).len() as u128, binomial(5, 3));
    }

    #[test]
    fn system_names() {
        assert_eq!(parse_system("B3").unwrap(), (Family::B, 3));
        assert_eq!(parse_system("d4").unwrap(), (Family::D, 4));
        assert!(parse_system("E6").is_err());
        assert!(parse_system("B").is_err());
    }
}
