//! Sufficient combinatorial criterion for absolute continuity: for every
//! closed corank-1 subsystem Ψ,
//!
//! (L-1)(|Φ| - |Ψ|) - 1 ≥ Σᵢ (|Φ_Xi| - min_{σ∈W} |Φ_Xi ∩ σΨ|).

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::classifier::{check_tuple, TorusElement};
use crate::error::Result;
use crate::par;
use crate::root_system::{
    closed_corank1_subsystems, format_factors, RootSet, RootSubsystem, RootSystem, WeylElement, DEFAULT_WEYL_CAP,
};

/// min over σ ∈ W of |Φ_X ∩ σ(Ψ)|, with a minimizing σ.
pub fn min_intersection(phi_x: &RootSubsystem, psi: &RootSubsystem) -> Result<(usize, WeylElement)> {
    phi_x.min_intersection(psi)
}

/// One Weyl class of closed corank-1 subsystems.
#[derive(Clone, Debug, Serialize)]
pub struct WrightRow {
    pub psi_type: String,
    /// Number of subsystems in the class.
    pub class_size: usize,
    pub psi_len: usize,
    pub representative: RootSubsystem,
    pub lhs: i64,
    pub min_intersections: Vec<usize>,
    pub rhs: i64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WrightReport {
    pub root_count: usize,
    pub annihilator_sizes: Vec<usize>,
    pub rows: Vec<WrightRow>,
    pub overall: bool,
}

/// Closed corank-1 subsystems grouped into Weyl classes, ordered by the
/// canonical form of each class.
pub fn corank1_classes(sys: &Arc<RootSystem>) -> Result<Vec<(RootSubsystem, usize, RootSet)>> {
    sys.check_weyl_cap()?;
    let all = closed_corank1_subsystems(sys)?;
    let mut classes: Vec<(RootSubsystem, usize, String)> = Vec::new();
    for psi in all {
        let label = format_factors(&psi.subsystem_type()?);
        let mut placed = false;
        for (rep, count, rep_label) in classes.iter_mut() {
            if *rep_label == label && rep.len() == psi.len() && rep.is_weyl_conjugate(&psi)?.is_some() {
                *count += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((psi, 1, label));
        }
    }
    let mut out = classes
        .into_iter()
        .map(|(rep, count, _)| Ok((rep.canonical_form()?, rep, count)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(canon, rep, count)| (rep, count, canon)).collect())
}

pub fn wright_check(tuple: &[TorusElement]) -> Result<WrightReport> {
    wright_check_with_cap(tuple, DEFAULT_WEYL_CAP)
}

pub fn wright_check_with_cap(tuple: &[TorusElement], weyl_cap: u128) -> Result<WrightReport> {
    let (family, rank) = check_tuple(tuple)?;
    let sys = RootSystem::with_weyl_cap(family, rank, weyl_cap)?;
    let phis: Vec<RootSubsystem> = tuple.iter().map(|x| x.annihilator_in(&sys)).collect();
    let classes = corank1_classes(&sys)?;
    let root_count = sys.len();
    let l = tuple.len() as i64;
    let rows = par::map_slice(&classes, |(psi, count, _)| -> Result<WrightRow> {
        let mins = phis.iter().map(|p| p.min_intersection(psi).map(|m| m.0)).collect::<Result<Vec<usize>>>()?;
        let lhs = (l - 1) * (root_count as i64 - psi.len() as i64) - 1;
        let rhs: i64 = phis.iter().zip(&mins).map(|(p, &m)| (p.len() - m) as i64).sum();
        Ok(WrightRow {
            psi_type: format_factors(&psi.subsystem_type()?),
            class_size: *count,
            psi_len: psi.len(),
            representative: psi.clone(),
            lhs,
            min_intersections: mins,
            rhs,
            satisfied: lhs >= rhs,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let overall = rows.iter().all(|r| r.satisfied);
    Ok(WrightReport { root_count, annihilator_sizes: phis.iter().map(RootSubsystem::len).collect(), rows, overall })
}

impl WrightReport {
    /// Aligned text table, one line per class.
    pub fn to_table(&self) -> String {
        let l = self.annihilator_sizes.len();
        let mut header = vec!["Psi".to_string(), "count".into(), "|Psi|".into(), "lhs".into()];
        header.extend((1..=l).map(|i| format!("min|Phi_X{i} n sPsi|")));
        header.extend(["rhs".to_string(), "ok".into()]);
        let mut body: Vec<Vec<String>> = Vec::new();
        for r in &self.rows {
            let mut line = vec![r.psi_type.clone(), r.class_size.to_string(), r.psi_len.to_string(), r.lhs.to_string()];
            line.extend(r.min_intersections.iter().map(ToString::to_string));
            line.push(r.rhs.to_string());
            line.push(if r.satisfied { "yes" } else { "no" }.into());
            body.push(line);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| body.iter().map(|b| b[c].chars().count()).chain([header[c].len()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let sizes: Vec<String> = self.annihilator_sizes.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "|Phi| = {}, |Phi_Xi| = {}", self.root_count, sizes.join(", "));
        for line in std::iter::once(&header).chain(&body) {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (s, &w))| if c == 0 { format!("{s:<w$}") } else { format!("{s:>w$}") })
                .collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
        let _ = writeln!(out, "overall: {}", if self.overall { "satisfied" } else { "not satisfied" });
        out
    }
}
