//! Tangent-space span oracle: absolute continuity holds exactly when, for
//! generic g₂..g_L, the tangent spaces at X₁, Ad(g₂)X₂, ..., Ad(g_L)X_L
//! together span the algebra. One full-rank exact trial proves it; deficient
//! trials are evidence only.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::classifier::{check_tuple, is_eligible, Dominance, TorusElement};
use crate::error::{domain, Error, Result};
use crate::linalg::{exact_rank, numeric_rank};
use crate::matrix_model::{
    adjoint, embed_torus_f64, random_group_exact, random_group_numeric, torus_frame, AlgebraMatrix, Mat,
};
pub use crate::matrix_model::Mode;
use crate::par;
use crate::root_system::Family;

pub const DEFAULT_TRIALS: usize = 8;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_WIDTH: i64 = 3;
/// Exact trials widen the Cayley coefficient range by 2x every this many trials.
pub const WIDEN_EVERY: usize = 8;
/// Largest stacked matrix (rows x columns) a trial may build.
pub const ENTRY_BUDGET: usize = 4_000_000;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Relative singular-value threshold in numeric mode.
    pub tolerance: f64,
    /// Initial Cayley coefficient range in exact mode.
    pub width: i64,
    /// Stop once a full-rank trial is found (output stays deterministic).
    pub stop_at_certificate: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            trials: DEFAULT_TRIALS,
            seed: 0,
            mode: Mode::Exact,
            tolerance: DEFAULT_TOLERANCE,
            width: DEFAULT_WIDTH,
            stop_at_certificate: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRank {
    pub index: usize,
    pub seed: u64,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub trial: usize,
    pub seed: u64,
    /// True for exact-mode certificates, which are proofs.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpanReport {
    pub target_dim: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Σ dim O_Xi, which no trial can exceed.
    pub orbit_dim_sum: usize,
    pub trials: Vec<TrialRank>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl SpanReport {
    pub fn max_rank(&self) -> usize {
        self.trials.iter().map(|t| t.rank).max().unwrap_or(0)
    }

    pub fn is_proof(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| c.exact)
    }

    pub fn all_deficient(&self) -> bool {
        self.trials.iter().all(|t| t.rank < self.target_dim)
    }
}

/// Per-element tangent frames at the torus, reused by every trial.
struct Frames {
    family: Family,
    rank: usize,
    exact: Vec<Vec<Mat<BigInt>>>,
    numeric: Vec<Vec<Mat<f64>>>,
    target_dim: usize,
    orbit_dim_sum: usize,
}

impl Frames {
    fn new(tuple: &[TorusElement]) -> Result<Frames> {
        let (family, rank) = check_tuple(tuple)?;
        let exact: Vec<Vec<Mat<BigInt>>> =
            par::map_slice(tuple, |x| torus_frame(x).into_iter().map(|m| m.entries).collect());
        let numeric: Vec<Vec<Mat<f64>>> = exact
            .iter()
            .map(|f| f.iter().map(|m| m.map(|z| num_complex::Complex::new(to_f64(&z.re), to_f64(&z.im)))).collect())
            .collect();
        let target_dim = family.algebra_dim(rank);
        let orbit_dim_sum: usize = exact.iter().map(Vec::len).sum();
        if orbit_dim_sum.saturating_mul(target_dim) > ENTRY_BUDGET {
            return Err(Error::Capacity {
                what: "stacked tangent matrix entries".into(),
                needed: (orbit_dim_sum * target_dim) as u128,
                cap: ENTRY_BUDGET as u128,
            });
        }
        Ok(Frames { family, rank, exact, numeric, target_dim, orbit_dim_sum })
    }

    fn exact_rows(&self, trial_seed: u64, width: i64) -> Vec<Vec<BigInt>> {
        let mut rows = Vec::with_capacity(self.orbit_dim_sum);
        for (i, frame) in self.exact.iter().enumerate() {
            let p = (i > 0).then(|| {
                random_group_exact(self.family, self.rank, par::child_seed(trial_seed, i as u64), width).integer_scaled()
            });
            for m in frame {
                let moved = match &p {
                    Some(p) => p.mul(m).mul(&p.adjoint()),
                    None => m.clone(),
                };
                rows.push(AlgebraMatrix { family: self.family, rank: self.rank, entries: moved }.coords());
            }
        }
        rows
    }

    fn numeric_rows(&self, trial_seed: u64) -> Vec<Vec<f64>> {
        let mut rows = Vec::with_capacity(self.orbit_dim_sum);
        for (i, frame) in self.numeric.iter().enumerate() {
            let g = (i > 0).then(|| random_group_numeric(self.family, self.rank, par::child_seed(trial_seed, i as u64)));
            for m in frame {
                let moved = match &g {
                    Some(g) => g.entries.mul(m).mul(&g.entries.adjoint()),
                    None => m.clone(),
                };
                rows.push(AlgebraMatrix { family: self.family, rank: self.rank, entries: moved }.coords());
            }
        }
        rows
    }

    fn trial_rank(&self, cfg: &OracleConfig, index: usize) -> TrialRank {
        let seed = par::child_seed(cfg.seed, index as u64);
        let rank = match cfg.mode {
            Mode::Exact => exact_rank(&self.exact_rows(seed, width_for(cfg.width, index))),
            Mode::Numeric => numeric_rank(&self.numeric_rows(seed), cfg.tolerance).0,
        };
        assert!(
            rank <= self.target_dim.min(self.orbit_dim_sum),
            "rank {rank} above min(target {}, orbit sum {})",
            self.target_dim,
            self.orbit_dim_sum
        );
        TrialRank { index, seed, rank }
    }
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().expect("finite")
}

/// Cayley coefficient range for a trial: `base` doubled every `WIDEN_EVERY` trials.
pub fn width_for(base: i64, index: usize) -> i64 {
    base.saturating_mul(1i64 << (index / WIDEN_EVERY).min(20))
}

/// Sample trials and report the rank of the stacked tangent vectors.
pub fn verify_span(tuple: &[TorusElement], cfg: &OracleConfig) -> Result<SpanReport> {
    if cfg.trials == 0 {
        return domain("at least one trial is required");
    }
    let frames = Frames::new(tuple)?;
    let mut trials: Vec<TrialRank> = Vec::with_capacity(cfg.trials);
    let chunk = if cfg.stop_at_certificate { WIDEN_EVERY } else { cfg.trials };
    let mut start = 0;
    while start < cfg.trials {
        let len = chunk.min(cfg.trials - start);
        let batch = par::map_range(len, |k| frames.trial_rank(cfg, start + k));
        trials.extend(batch);
        start += len;
        if cfg.stop_at_certificate {
            if let Some(pos) = trials.iter().position(|t| t.rank == frames.target_dim) {
                trials.truncate(pos + 1);
                break;
            }
        }
    }
    let certificate = trials.iter().find(|t| t.rank == frames.target_dim).map(|t| Certificate {
        trial: t.index,
        seed: t.seed,
        exact: cfg.mode == Mode::Exact,
    });
    Ok(SpanReport {
        target_dim: frames.target_dim,
        mode: cfg.mode,
        tolerance: (cfg.mode == Mode::Numeric).then_some(cfg.tolerance),
        orbit_dim_sum: frames.orbit_dim_sum,
        trials,
        certificate,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossTrial {
    pub index: usize,
    pub seed: u64,
    pub numeric: usize,
    pub exact: usize,
}

/// Numeric and exact ranks for the same trial seeds.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub total: usize,
    pub agree: usize,
    pub disagreements: Vec<CrossTrial>,
}

impl CrossCheck {
    pub fn agreement(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.agree as f64 / self.total as f64
        }
    }
}

pub fn cross_check(tuple: &[TorusElement], trials: usize, seed: u64, tolerance: f64) -> Result<CrossCheck> {
    let frames = Frames::new(tuple)?;
    let base = OracleConfig { trials, seed, tolerance, ..OracleConfig::default() };
    let pairs = par::map_range(trials, |k| {
        let ex = frames.trial_rank(&OracleConfig { mode: Mode::Exact, ..base.clone() }, k);
        let nu = frames.trial_rank(&OracleConfig { mode: Mode::Numeric, ..base.clone() }, k);
        CrossTrial { index: k, seed: ex.seed, numeric: nu.rank, exact: ex.rank }
    });
    let agree = pairs.iter().filter(|p| p.numeric == p.exact).count();
    Ok(CrossCheck {
        total: pairs.len(),
        agree,
        disagreements: pairs.into_iter().filter(|p| p.numeric != p.exact).collect(),
    })
}

/// Deterministic singularity: the orbit dimensions cannot add up to the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionProof {
    pub orbit_dims: Vec<usize>,
    pub orbit_dim_sum: usize,
    pub target_dim: usize,
}

pub fn dimension_shortcut(tuple: &[TorusElement]) -> Result<Option<DimensionProof>> {
    let (family, rank) = check_tuple(tuple)?;
    let orbit_dims = tuple
        .iter()
        .map(|x| Ok(x.element_type()?.orbit_dim()))
        .collect::<Result<Vec<usize>>>()?;
    let orbit_dim_sum = orbit_dims.iter().sum();
    let target_dim = family.algebra_dim(rank);
    Ok((orbit_dim_sum < target_dim).then_some(DimensionProof { orbit_dims, orbit_dim_sum, target_dim }))
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessTrial {
    pub seed: u64,
    /// Distance from the predicted eigenvalue to the nearest eigenvalue.
    pub gap: f64,
    /// Eigenvalues within tolerance of zero.
    pub zero_multiplicity: usize,
    pub pass: bool,
}

/// Common-eigenvalue check for a tuple that is not eligible.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    /// Σ αᵢ, with eigenvalues of -iX (so real).
    pub predicted: f64,
    /// All elements are dominant B type in B_n: 0 must be a double eigenvalue.
    pub double_zero: bool,
    pub tolerance: f64,
    pub trials: Vec<WitnessTrial>,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.trials.iter().all(|t| t.pass)
    }
}

/// Eigenvalues of -i·embed(X) with multiplicities, as (value, multiplicity).
fn spectrum(x: &TorusElement) -> Vec<(f64, usize)> {
    let v: Vec<f64> = x.values().iter().map(|q| q.to_f64().expect("finite")).collect();
    let mut all: Vec<f64> = match x.family() {
        Family::A => v,
        Family::B => v.iter().flat_map(|&a| [a, -a]).chain([0.0]).collect(),
        Family::C | Family::D => v.iter().flat_map(|&a| [a, -a]).collect(),
    };
    all.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, usize)> = Vec::new();
    for a in all {
        match out.last_mut() {
            Some((b, m)) if *b == a => *m += 1,
            _ => out.push((a, 1)),
        }
    }
    out
}

/// The eigenvalue of greatest multiplicity; ties go to 0, then the largest.
fn dominant_eigenvalue(x: &TorusElement) -> f64 {
    let spec = spectrum(x);
    let best = spec.iter().map(|s| s.1).max().expect("nonempty");
    let ties: Vec<f64> = spec.iter().filter(|s| s.1 == best).map(|s| s.0).collect();
    if ties.contains(&0.0) {
        0.0
    } else {
        ties.into_iter().fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn eigenvalue_witness(tuple: &[TorusElement], trials: usize, seed: u64, tolerance: f64) -> Result<WitnessReport> {
    let (family, rank) = check_tuple(tuple)?;
    if is_eligible(tuple)? {
        return domain("the common-eigenvalue witness applies only to tuples that are not eligible");
    }
    let predicted: f64 = tuple.iter().map(dominant_eigenvalue).sum();
    let double_zero = family == Family::B
        && tuple
            .iter()
            .map(|x| x.element_type().map(|t| t.dominance() == Dominance::ZeroBlock))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|d| d);
    let embedded: Vec<AlgebraMatrix<f64>> = tuple.iter().map(embed_torus_f64).collect();
    let out = par::map_range(trials, |k| {
        let tseed = par::child_seed(seed, k as u64);
        let mut z = embedded[0].entries.clone();
        for (i, x) in embedded.iter().enumerate().skip(1) {
            let g = random_group_numeric(family, rank, par::child_seed(tseed, i as u64));
            z = z.add(&adjoint(&g, x).expect("same algebra").entries);
        }
        let h = z.to_nalgebra().map(|c| c * num_complex::Complex::new(0.0, -1.0));
        let h = (&h + h.adjoint()) * num_complex::Complex::new(0.5, 0.0);
        let eig: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        let scale = tolerance * z.frobenius().max(1.0);
        let gap = eig.iter().map(|e| (e - predicted).abs()).fold(f64::INFINITY, f64::min);
        let zero_multiplicity = eig.iter().filter(|e| e.abs() <= scale).count();
        let pass = gap <= scale && (!double_zero || zero_multiplicity >= 2);
        WitnessTrial { seed: tseed, gap, zero_multiplicity, pass }
    });
    Ok(WitnessReport { predicted, double_zero, tolerance, trials: out })
}

/// Which SU(n-1) element pairs with SU(n) in the open case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OpenVariant {
    /// (0, 1, ..., 1): type D1 x SU(n-1).
    WithD1,
    /// (2, 1, ..., 1): type SU(n-1) x SU(1).
    WithSu1,
}

/// The pair (SU(n), SU(n-1)) in D_n.
pub fn open_pair(n: usize, variant: OpenVariant) -> Result<[TorusElement; 2]> {
    if n < 6 {
        return domain(format!("the pair is settled for n = {n}; the open case starts at n = 6"));
    }
    let su_n = TorusElement::from_ints(Family::D, n, &vec![1; n])?;
    let mut v = vec![1; n];
    v[0] = match variant {
        OpenVariant::WithD1 => 0,
        OpenVariant::WithSu1 => 2,
    };
    Ok([su_n, TorusElement::from_ints(Family::D, n, &v)?])
}

/// Run the oracle on the open pair in batches of doubling size until a
/// certificate appears or `cfg.trials` trials have run. Never concludes
/// singularity.
pub fn explore_open(n: usize, variant: OpenVariant, cfg: &OracleConfig) -> Result<SpanReport> {
    let pair = open_pair(n, variant)?;
    let mut done = 0;
    let mut batch = 1;
    let mut report: Option<SpanReport> = None;
    while done < cfg.trials {
        let len = batch.min(cfg.trials - done);
        let sub = OracleConfig { trials: len, seed: par::child_seed(cfg.seed, done as u64), ..cfg.clone() };
        let mut part = verify_span(&pair, &sub)?;
        for t in part.trials.iter_mut() {
            t.index += done;
        }
        if let Some(c) = part.certificate.as_mut() {
            c.trial += done;
        }
        done += len;
        batch *= 2;
        let found = part.certificate.is_some();
        report = Some(match report {
            None => part,
            Some(mut r) => {
                r.trials.extend(part.trials);
                r.certificate = r.certificate.or(part.certificate);
                r
            }
        });
        if found {
            break;
        }
    }
    report.ok_or_else(|| Error::Domain("at least one trial is required".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: Family, n: usize, v: &[i64]) -> TorusElement {
        TorusElement::from_ints(f, n, v).unwrap()
    }

    fn cfg(mode: Mode, trials: usize) -> OracleConfig {
        OracleConfig { trials, seed: 42, mode, ..OracleConfig::default() }
    }

    #[test]
    fn regular_pair_in_b2_spans() {
        let t = [el(Family::B, 2, &[1, 2]), el(Family::B, 2, &[1, 3])];
        for mode in [Mode::Exact, Mode::Numeric] {
            let r = verify_span(&t, &cfg(mode, 5)).unwrap();
            assert_eq!(r.target_dim, 10);
            assert!(r.trials.iter().all(|t| t.rank == 10), "{mode:?} {r:?}");
            assert_eq!(r.certificate.as_ref().unwrap().exact, mode == Mode::Exact);
        }
    }

    #[test]
    fn su4_pair_in_d4_is_deficient() {
        let t = [el(Family::D, 4, &[1, 1, 1, 1]), el(Family::D, 4, &[2, 2, 2, 2])];
        let r = verify_span(&t, &cfg(Mode::Exact, 6)).unwrap();
        assert_eq!(r.orbit_dim_sum, 24);
        assert!(r.trials.iter().all(|t| t.rank <= 24));
        assert!(r.certificate.is_none());
        let proof = dimension_shortcut(&t).unwrap().unwrap();
        assert_eq!((proof.orbit_dim_sum, proof.target_dim), (24, 28));
    }

    #[test]
    fn conjugate_triple_is_deficient() {
        let t = [el(Family::D, 4, &[1, 1, 1, 1]), el(Family::D, 4, &[2, 2, 2, 2]), el(Family::D, 4, &[3, 3, 3, 3])];
        let r = verify_span(&t, &cfg(Mode::Exact, 4)).unwrap();
        assert!(r.all_deficient(), "{r:?}");
        assert!(dimension_shortcut(&t).unwrap().is_none());
    }

    #[test]
    fn shortcut_examples() {
        let half = [el(Family::A, 3, &[1, 1, -1, -1]), el(Family::A, 3, &[2, 2, -2, -2])];
        assert!(dimension_shortcut(&half).unwrap().is_none());
        let reg = [el(Family::C, 3, &[1, 2, 3]), el(Family::C, 3, &[1, 2, 4])];
        assert!(dimension_shortcut(&reg).unwrap().is_none());
    }

    #[test]
    fn determinism_and_early_stop() {
        let t = [el(Family::C, 2, &[1, 1]), el(Family::C, 2, &[0, 1])];
        let a = verify_span(&t, &cfg(Mode::Exact, 3)).unwrap();
        let b = verify_span(&t, &cfg(Mode::Exact, 3)).unwrap();
        assert_eq!(a, b);
        let stop = OracleConfig { stop_at_certificate: true, ..cfg(Mode::Exact, 20) };
        let c = verify_span(&t, &stop).unwrap();
        assert!(c.trials.len() <= 20);
        assert_eq!(c.certificate.as_ref().map(|c| c.trial), Some(c.trials.len() - 1));
        assert_eq!(c.trials[..], a.trials[..c.trials.len().min(3)]);
    }

    #[test]
    fn sequential_matches_parallel() {
        let t = [el(Family::A, 3, &[1, 1, 0, -2]), el(Family::A, 3, &[3, -1, -1, -1])];
        let a = verify_span(&t, &cfg(Mode::Exact, 4)).unwrap();
        par::set_parallel(false);
        let b = verify_span(&t, &cfg(Mode::Exact, 4)).unwrap();
        par::set_parallel(true);
        assert_eq!(a, b);
    }

    #[test]
    fn witness_b4_pair() {
        let x = el(Family::B, 5, &[0, 0, 0, 0, 1]);
        let y = el(Family::B, 5, &[0, 0, 0, 0, 3]);
        let r = eigenvalue_witness(&[x, y], 20, 1, 1e-8).unwrap();
        assert!(r.double_zero);
        assert!(r.all_pass(), "{r:?}");
        assert!(r.trials.iter().all(|t| t.zero_multiplicity >= 2));
    }

    #[test]
    fn witness_mixed_and_a() {
        let x = el(Family::B, 3, &[0, 0, 1]);
        let y = el(Family::B, 3, &[2, 2, 2]);
        let z = el(Family::B, 3, &[0, 0, 5]);
        let r = eigenvalue_witness(&[x, y, z], 10, 3, 1e-8);
        // 4 + 3 + 4 = 11 ≤ 12, eligible.
        assert!(r.is_err());
        let a = el(Family::A, 3, &[1, 1, 1, -3]);
        let b = el(Family::A, 3, &[2, 2, 2, -6]);
        let r = eigenvalue_witness(&[a, b], 10, 3, 1e-8).unwrap();
        assert!((r.predicted - 3.0).abs() < 1e-12);
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn witness_rejects_eligible() {
        let t = [el(Family::D, 4, &[1, 1, 1, 1]), el(Family::D, 4, &[2, 2, 2, 2])];
        assert!(matches!(eigenvalue_witness(&t, 3, 0, 1e-8), Err(Error::Domain(_))));
    }

    #[test]
    fn open_pair_shape() {
        assert!(open_pair(5, OpenVariant::WithD1).is_err());
        let [a, b] = open_pair(6, OpenVariant::WithD1).unwrap();
        assert_eq!(a.element_type().unwrap().label(), "SU(6)+");
        assert_eq!(b.element_type().unwrap().label(), "D1xSU(5)");
        let [_, c] = open_pair(6, OpenVariant::WithSu1).unwrap();
        assert_eq!(c.element_type().unwrap().parts, vec![5, 1]);
    }

    #[test]
    fn cross_check_small() {
        let t = [el(Family::B, 2, &[0, 1]), el(Family::B, 2, &[1, 1])];
        let c = cross_check(&t, 6, 9, 1e-8).unwrap();
        assert_eq!(c.total, 6);
        assert_eq!(c.agree, 6, "{c:?}");
    }

    #[test]
    fn widening() {
        assert_eq!(width_for(3, 0), 3);
        assert_eq!(width_for(3, 7), 3);
        assert_eq!(width_for(3, 8), 6);
        assert_eq!(width_for(3, 17), 12);
    }
}
