//! Acceptance criteria 1-8, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use orbitc_core::classifier::{
    decide, is_eligible, min_power, Dominance, ElementType, MinPower, Status, TorusElement,
};
use orbitc_core::matrix_model::{algebra_basis, Mode};
use orbitc_core::root_system::{weyl_elements, Family, RootSubsystem, RootSystem};
use orbitc_core::span_oracle::{
    cross_check, dimension_shortcut, eigenvalue_witness, explore_open, open_pair, verify_span, OpenVariant,
    OracleConfig,
};
use orbitc_core::wright::wright_check;

type Outcome = Result<String, String>;

fn el(f: Family, n: usize, v: &[i64]) -> TorusElement {
    TorusElement::from_ints(f, n, v).unwrap()
}

fn ty(s: &str) -> TorusElement {
    s.parse::<ElementType>().unwrap_or_else(|e| panic!("{s}: {e}")).witness()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:?}, limit {limit:?}", start.elapsed()))
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (family, lo) in [(Family::A, 1), (Family::B, 2), (Family::C, 2), (Family::D, 2)] {
        for n in lo..=8usize {
            let roots = match family {
                Family::A => n * (n + 1),
                Family::B | Family::C => 2 * n * n,
                Family::D => 2 * n * (n - 1),
            };
            let matrix_dim = match family {
                Family::A => (n + 1) * (n + 1) - 1,
                Family::B => (2 * n + 1) * (2 * n) / 2,
                Family::C => n * (2 * n + 1),
                Family::D => (2 * n) * (2 * n - 1) / 2,
            };
            let sys = RootSystem::new(family, n).map_err(|e| e.to_string())?;
            ensure(sys.len() == roots, || format!("{family}{n}: |Φ| = {} want {roots}", sys.len()))?;
            let basis = algebra_basis::<f64>(family, n);
            ensure(basis.len() == n + roots && basis.len() == matrix_dim, || {
                format!("{family}{n}: basis {} vs n+|Φ| {} vs {matrix_dim}", basis.len(), n + roots)
            })?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} (family, rank) cases in {:?}", start.elapsed()))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let sys4 = RootSystem::new(Family::D, 4).unwrap();
    let x1 = el(Family::D, 4, &[1, 1, 1, 1]);
    let x2 = el(Family::D, 4, &[1, 1, 2, -2]);
    let (p1, p2) = (x1.annihilator_in(&sys4), x2.annihilator_in(&sys4));
    ensure(p2.is_conjugate_to_subset(&p1).unwrap().is_none(), || "X2 should not nest in X1".into())?;
    let rep = wright_check(&[x1, x2]).map_err(|e| e.to_string())?;
    let d3 = rep.rows.iter().find(|r| r.psi_type == "D3").ok_or("no D3 row")?;
    ensure(d3.lhs == 11 && d3.rhs <= 8, || format!("D3 row ({}, {})", d3.lhs, d3.rhs))?;
    let same = rep
        .rows
        .iter()
        .find(|r| r.psi_type == "SU(4)" && r.representative.is_weyl_conjugate(&p1).unwrap().is_some())
        .ok_or("no SU(4) row conjugate to Φ_X1")?;
    ensure(same.lhs == 11 && same.rhs <= 10 && same.min_intersections[0] == 4, || {
        format!("SU(4) row ({}, {}) min {:?}", same.lhs, same.rhs, same.min_intersections)
    })?;

    let y1 = el(Family::D, 5, &[1, 1, 1, 1, 1]);
    let y2 = el(Family::D, 5, &[0, 0, 1, 1, 1]);
    let rep5 = wright_check(&[y1, y2]).map_err(|e| e.to_string())?;
    ensure(rep5.root_count == 40 && rep5.annihilator_sizes == [20, 10] && rep5.overall, || {
        format!("D5 pair: {}", rep5.to_table())
    })?;

    let t = [el(Family::D, 4, &[1, 1, 1, 1]), el(Family::D, 4, &[2, 2, 2, 2]), el(Family::D, 4, &[1, 1, 1, -1])];
    let rep3 = wright_check(&t).map_err(|e| e.to_string())?;
    let su_rows: Vec<_> = rep3.rows.iter().filter(|r| r.psi_type == "SU(4)").collect();
    ensure(su_rows.len() == 2 && su_rows.iter().all(|r| r.lhs == 23 && r.rhs <= 22), || rep3.to_table())?;
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "D4 pair D3 row ({}, {}), SU(4) row ({}, {}); D5 pair overall; triple SU(4) rows {:?}",
        d3.lhs,
        d3.rhs,
        same.lhs,
        same.rhs,
        su_rows.iter().map(|r| (r.lhs, r.rhs)).collect::<Vec<_>>()
    ))
}

fn sweep_systems() -> Vec<(Family, usize)> {
    vec![
        (Family::B, 2),
        (Family::B, 3),
        (Family::C, 2),
        (Family::C, 3),
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::A, 4),
        (Family::D, 4),
    ]
}

fn type_pairs(family: Family, n: usize) -> Vec<[TorusElement; 2]> {
    let types = ElementType::all(family, n).unwrap();
    let mut out = Vec::new();
    for i in 0..types.len() {
        for j in i..types.len() {
            out.push([types[i].witness(), types[j].witness()]);
        }
    }
    out
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    let mut disagreements = Vec::new();
    let (mut ac, mut sing) = (0, 0);
    for (family, n) in sweep_systems() {
        for pair in type_pairs(family, n) {
            pairs += 1;
            let verdict = decide(&pair).map_err(|e| e.to_string())?;
            let label = || format!("{family}{n} ({}, {})", pair[0].element_type().unwrap(), pair[1].element_type().unwrap());
            match verdict.status {
                Status::AbsolutelyContinuous => {
                    ac += 1;
                    let cfg = OracleConfig { trials: 8, seed: 1, mode: Mode::Exact, stop_at_certificate: true, ..Default::default() };
                    let r = verify_span(&pair, &cfg).map_err(|e| e.to_string())?;
                    if !r.is_proof() {
                        disagreements.push(format!("{} AC but max rank {}/{}", label(), r.max_rank(), r.target_dim));
                    }
                }
                Status::Singular => {
                    sing += 1;
                    let cfg = OracleConfig { trials: 32, seed: 1, mode: Mode::Exact, ..Default::default() };
                    let r = verify_span(&pair, &cfg).map_err(|e| e.to_string())?;
                    if !r.all_deficient() {
                        disagreements.push(format!("{} Singular but full rank reached", label()));
                    }
                }
                Status::Unknown => disagreements.push(format!("{} Unknown", label())),
            }
        }
    }
    ensure(disagreements.is_empty(), || disagreements.join("; "))?;
    within(start, Duration::from_secs(15 * 60))?;
    Ok(format!("{pairs} pairs ({ac} AC certified, {sing} Singular deficient in 32 trials) in {:?}", start.elapsed()))
}

fn criterion4() -> Outcome {
    let tuples: Vec<(&str, Vec<TorusElement>)> = vec![
        ("A3 (SU(2)xSU(2))^2", vec![ty("A3:SU(2)xSU(2)"), ty("A3:SU(2)xSU(2)")]),
        ("A5 (SU(3)xSU(3))^2", vec![ty("A5:SU(3)xSU(3)"), ty("A5:SU(3)xSU(3)")]),
        ("D4 (SU(4)+, SU(4)+)", vec![ty("D4:SU(4)+"), el(Family::D, 4, &[2, 2, 2, 2])]),
        ("D4 (SU(4)+, SU(4)-)", vec![ty("D4:SU(4)+"), ty("D4:SU(4)-")]),
        ("D5 (SU(5), SU(5))", vec![ty("D5:SU(5)"), el(Family::D, 5, &[2; 5])]),
        ("D4 (SU(4), D1xSU(3))", vec![ty("D4:SU(4)+"), ty("D4:D1xSU(3)")]),
        ("D4 (SU(4), SU(3))", vec![ty("D4:SU(4)-"), ty("D4:SU(3)")]),
        ("D5 (SU(5), D1xSU(4))", vec![ty("D5:SU(5)"), ty("D5:D1xSU(4)")]),
        ("D5 (SU(5), SU(4))", vec![ty("D5:SU(5)"), ty("D5:SU(4)")]),
        ("D4 (SU(4), SU(2)xD2)", vec![ty("D4:SU(4)+"), ty("D4:D2xSU(2)")]),
        ("D4 conjugate SU(4) triple", vec![ty("D4:SU(4)-"), el(Family::D, 4, &[2, 2, 2, -2]), el(Family::D, 4, &[3, -3, -3, -3])]),
        ("D4 nested (SU(4), SU(2)xSU(2))", vec![ty("D4:SU(4)+"), ty("D4:SU(2)xSU(2)+")]),
    ];
    let mut lines = Vec::new();
    for (name, t) in &tuples {
        let v = decide(t).map_err(|e| format!("{name}: {e}"))?;
        ensure(v.status == Status::Singular, || format!("{name}: {v}"))?;
        let cfg = OracleConfig { trials: 16, seed: 7, mode: Mode::Exact, ..Default::default() };
        let r = verify_span(t, &cfg).map_err(|e| e.to_string())?;
        ensure(r.all_deficient(), || format!("{name}: full rank reached"))?;
        lines.push(format!("{name}: max {}/{}", r.max_rank(), r.target_dim));
    }
    let pair = [ty("D4:SU(4)+"), el(Family::D, 4, &[3, 3, 3, 3])];
    let proof = dimension_shortcut(&pair).unwrap().ok_or("no dimension shortcut for the SU(4) pair")?;
    let r = verify_span(&pair, &OracleConfig { trials: 16, seed: 3, mode: Mode::Exact, ..Default::default() }).unwrap();
    ensure(proof.orbit_dim_sum == 24 && proof.target_dim == 28 && r.target_dim - r.max_rank() >= 4, || {
        format!("SU(4) pair deficiency {}", r.target_dim - r.max_rank())
    })?;
    Ok(format!("{} tuples Singular and deficient; SU(4) pair deficiency {} (24 < 28)", tuples.len(), r.target_dim - r.max_rank()))
}

fn criterion5() -> Outcome {
    let mut checked = 0;
    for n in 3..=5 {
        let mut v = vec![0; n - 1];
        v.push(1);
        let got = min_power(&el(Family::B, n, &v)).unwrap();
        ensure(got == MinPower::Exactly(n), || format!("B{n} type B{}: {got}", n - 1))?;
        checked += 1;
    }
    for family in [Family::B, Family::C] {
        for n in 2..=6 {
            for t in ElementType::all(family, n).unwrap() {
                let got = min_power(&t.witness()).unwrap();
                let want = match t.dominance() {
                    Dominance::SU => 2,
                    Dominance::ZeroBlock => n.div_ceil(n - t.zero_block),
                };
                ensure(got == MinPower::Exactly(want), || format!("{family}{n} {t}: {got}, want {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} elements"))
}

fn multisets(k: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in from..k {
            cur.push(i);
            go(k, len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, len, 0, &mut Vec::new(), &mut out);
    out
}

fn criterion6() -> Outcome {
    let types = ElementType::all(Family::B, 5).unwrap();
    let b4 = types.iter().position(|t| t.zero_block == 4).ok_or("no B4 type")?;
    let mut count = 0;
    for m in multisets(types.len(), 4) {
        let tuple: Vec<TorusElement> = m.iter().map(|&i| types[i].witness()).collect();
        let v = decide(&tuple).unwrap();
        let all_b4 = m.iter().all(|&i| i == b4);
        let want = if all_b4 { Status::Singular } else { Status::AbsolutelyContinuous };
        ensure(v.status == want, || {
            format!("{:?}: {v}", m.iter().map(|&i| types[i].to_string()).collect::<Vec<_>>())
        })?;
        count += 1;
    }
    Ok(format!("{count} 4-tuples in B5, only all-B4 Singular"))
}

fn criterion7() -> Outcome {
    // Reduction keeps eligible pairs eligible.
    let mut pairs = 0;
    for family in Family::ALL {
        for n in family.min_rank() + 1..=7 {
            let types = ElementType::all(family, n).unwrap();
            for a in &types {
                for b in &types {
                    let (x, y) = (a.witness(), b.witness());
                    if !is_eligible(&[x.clone(), y.clone()]).unwrap() {
                        continue;
                    }
                    let m = n.div_ceil(2);
                    if family == Family::A && (n + 1) % 2 == 0 && a.parts == [m, m] && b.parts == [m, m] {
                        continue;
                    }
                    let r = [x.reduce().unwrap(), y.reduce().unwrap()];
                    ensure(is_eligible(&r).unwrap(), || format!("{family}{n} ({a}, {b}) reduces to ineligible"))?;
                    pairs += 1;
                }
            }
        }
    }

    // Common eigenvalue of sums for tuples that are not eligible.
    let witness_tuples: Vec<Vec<TorusElement>> = vec![
        vec![ty("B5:B4"), el(Family::B, 5, &[0, 0, 0, 0, 2])],
        vec![ty("B3:B2"), ty("B3:B2")],
        vec![ty("A3:SU(3)"), el(Family::A, 3, &[-2, -2, -2, 6])],
        vec![ty("A2:SU(2)"), ty("A2:SU(2)")],
        vec![ty("C3:C2"), el(Family::C, 3, &[0, 0, 3])],
        vec![ty("D4:D3"), ty("D4:D3")],
        vec![ty("D5:D4"), el(Family::D, 5, &[0, 0, 0, 0, 5])],
        vec![ty("B4:B3"), ty("B4:B3"), el(Family::B, 4, &[0, 0, 0, 2])],
        vec![ty("B5:B4"), ty("B5:SU(5)")],
        vec![ty("A4:SU(4)"), ty("A4:SU(4)"), ty("A4:SU(4)")],
    ];
    for t in &witness_tuples {
        ensure(!is_eligible(t).unwrap(), || format!("{t:?} is eligible"))?;
        let r = eigenvalue_witness(t, 100, 11, 1e-8).map_err(|e| e.to_string())?;
        ensure(r.trials.len() == 100 && r.all_pass(), || {
            let bad = r.trials.iter().find(|w| !w.pass).unwrap();
            format!("{} witness failed: {bad:?}", t[0])
        })?;
    }

    // Weyl conjugacy is an equivalence relation on D4 annihilators and their images.
    let sys = RootSystem::new(Family::D, 4).unwrap();
    let ws: Vec<_> = weyl_elements(Family::D, 4).unwrap().step_by(37).collect();
    let mut subs: Vec<RootSubsystem> = Vec::new();
    for t in ElementType::all(Family::D, 4).unwrap() {
        let phi = t.witness().annihilator_in(&sys);
        subs.push(phi.act(&ws[subs.len() % ws.len()]));
        subs.push(phi);
    }
    let n = subs.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = subs[i].is_weyl_conjugate(&subs[j]).unwrap().is_some();
        }
    }
    for i in 0..n {
        ensure(rel[i][i], || "not reflexive".into())?;
        for j in 0..n {
            ensure(rel[i][j] == rel[j][i], || "not symmetric".into())?;
            for k in 0..n {
                ensure(!(rel[i][j] && rel[j][k]) || rel[i][k], || "not transitive".into())?;
            }
        }
    }

    // Numeric and exact ranks agree trial by trial over the sweep.
    let (mut total, mut agree) = (0, 0);
    let mut boundary = Vec::new();
    for (family, n) in sweep_systems() {
        for pair in type_pairs(family, n) {
            let c = cross_check(&pair, 8, 5, 1e-8).map_err(|e| e.to_string())?;
            total += c.total;
            agree += c.agree;
            boundary.extend(c.disagreements.iter().map(|d| format!("{family}{n} trial {}: {} vs {}", d.index, d.numeric, d.exact)));
        }
    }
    let rate = agree as f64 / total as f64;
    for b in &boundary {
        eprintln!("  tolerance-boundary trial: {b}");
    }
    ensure(rate >= 0.99, || format!("numeric/exact agreement {rate:.4}"))?;
    Ok(format!(
        "{pairs} reduced pairs; 10 witness tuples x 100 trials; conjugacy on {n} subsystems; rank agreement {agree}/{total}"
    ))
}

fn criterion8() -> Outcome {
    let start = Instant::now();
    for variant in [OpenVariant::WithD1, OpenVariant::WithSu1] {
        let pair = open_pair(6, variant).unwrap();
        let v = decide(&pair).unwrap();
        ensure(v.status == Status::Unknown, || format!("{variant:?}: {v}"))?;
    }
    let cfg = OracleConfig { trials: 50, seed: 2026, mode: Mode::Numeric, ..Default::default() };
    let r = explore_open(6, OpenVariant::WithD1, &cfg).map_err(|e| e.to_string())?;
    ensure(r.trials.len() == 50 || r.certificate.is_some(), || format!("{} trials ran", r.trials.len()))?;
    within(start, Duration::from_secs(600))?;
    Ok(format!(
        "Unknown for both SU(5) variants; {} numeric trials, max rank {} of {} (no verdict asserted)",
        r.trials.len(),
        r.max_rank(),
        r.target_dim
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 cardinality and dimension identities", criterion1),
        ("2 Wright numbers for D4/D5", criterion2),
        ("3 oracle agreement sweep", criterion3),
        ("4 exceptional tuples", criterion4),
        ("5 minimal convolution powers", criterion5),
        ("6 sharpness in B5", criterion6),
        ("7 property suites", criterion7),
        ("8 open case", criterion8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{:.1?}]", start.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
