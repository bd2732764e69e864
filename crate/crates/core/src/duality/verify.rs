//! Isotypic decomposition reports.
//!
//! `verify_duality` assembles the full sector table for one commuting
//! group action: it runs the joint highest weight search, decodes each
//! sector's algebra weight and diagonal labels, compares them against the
//! closed-form prediction maps under the calibrated orientation, and
//! closes with a completeness count showing that the sectors found
//! exhaust every graded dimension of the space.  Mismatches are recorded
//! in the report rows rather than raised; only infrastructure failures (a
//! window too small to decode an edge, an operator leaving its block)
//! surface as errors.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;
use serde::Serialize;

use super::search::{
    block_kernel, charge_vectors, decode_labels, decode_weight_a, decode_weight_d,
    find_joint_hwvs, group_raising_ops, reconcile_signs, reduce_to_basis, tau_split, GroupKind,
    HwvRecord,
};
use super::{
    exponent_set_a, exponent_set_d, gl_dim, o_dim, weight_map_aa, weight_map_dd, PartitionA,
    PartitionD, WeightDinf,
};
use crate::error::{Error, Result};
use crate::exact::ratio;
use crate::fock::{basis, graded_dim, Factor, FermionLabel, FockConfig, FockMonomial, FockVector};
use crate::qseries::ch_v1plus;
use crate::repops::op_w;
use crate::repops::suites::{RelationFailure, RelationReport};
use crate::symalg::labels::{labels_from_exponents, ExponentSet, LabelFamily, Labels};

/// How many diagonal labels each sector row decodes and compares.
const LABEL_DEPTH: usize = 6;

/// One row of the isotypic table: a group label, where its joint highest
/// weight vectors were found, and how the decoded algebra data compares
/// against the prediction maps.
#[derive(Debug, Clone, Serialize)]
pub struct SectorReport {
    /// Partition parts of the group label.
    pub lambda: Vec<i64>,
    /// Induced orthogonal label (restricts to two chiralities).
    pub bar: bool,
    /// Determinant-twisted orthogonal label.
    pub det: bool,
    /// Doubled energy at which the sector's highest weight vectors sit.
    pub energy2: i64,
    /// Multiplicity of the label in the decomposition; must be 1.
    pub mult: u64,
    /// Where the sector was found: charges, swap eigenvalue, or parity.
    pub group_weight: String,
    /// Decoded algebra weight of the joint highest weight vector.
    pub algebra_weight: String,
    /// Exponent multiset feeding the label prediction.
    pub exponent_set: String,
    /// Decoded diagonal labels, rendered as `n: value`.
    pub labels: Vec<String>,
    /// Predicted algebra weight under the weight map.
    pub predicted: String,
    /// Whether weight, labels, multiplicity and uniqueness all agree.
    #[serde(rename = "match")]
    pub matched: bool,
}

/// One energy row of the completeness count: `lhs` is the dimension the
/// sector table accounts for, `rhs` the full graded dimension.
#[derive(Debug, Clone, Serialize)]
pub struct CompletenessRow {
    pub energy2: i64,
    pub lhs: u64,
    pub rhs: u64,
}

/// Full decomposition report for one group acting on one window.
#[derive(Debug, Clone, Serialize)]
pub struct IsotypicReport {
    pub schema: u32,
    pub group: String,
    pub l: u8,
    pub emax2: i64,
    pub sign_epsilon: i64,
    pub sectors: Vec<SectorReport>,
    pub completeness: Vec<CompletenessRow>,
}

impl IsotypicReport {
    /// True when every sector matched its prediction and every graded
    /// dimension is fully accounted for.
    pub fn passed(&self) -> bool {
        self.sectors.iter().all(|s| s.matched)
            && self.completeness.iter().all(|r| r.lhs == r.rhs)
    }
}

/// Assemble the isotypic report for one group action on the window.
pub fn verify_duality(group: GroupKind, cfg: &FockConfig) -> Result<IsotypicReport> {
    let eps = reconcile_signs(cfg.emax2)?.epsilon;
    match group {
        GroupKind::Gl => verify_gl(cfg, eps),
        GroupKind::OEven => verify_oeven(cfg, eps),
        GroupKind::OOne => verify_oone(cfg, eps),
    }
}

fn render_cell<T: fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn label_cells(r: &Result<Labels>) -> Vec<String> {
    match r {
        Ok(labels) => labels.entry_strings(),
        Err(e) => vec![format!("error: {e}")],
    }
}

fn join_i64(xs: &[i64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Negate a charge vector into candidate partition parts.
fn negated(charges: &[i64]) -> Vec<i64> {
    charges.iter().map(|m| -m).collect()
}

fn verify_gl(cfg: &FockConfig, eps: i64) -> Result<IsotypicReport> {
    let records = find_joint_hwvs(GroupKind::Gl, cfg)?;

    let mut buckets: BTreeMap<(i64, Vec<i64>), Vec<HwvRecord>> = BTreeMap::new();
    for r in records {
        buckets
            .entry((r.energy2, r.charges.clone()))
            .or_default()
            .push(r);
    }
    // Each label must surface at exactly one energy.
    let mut occurrences: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for (_, charges) in buckets.keys() {
        *occurrences.entry(negated(charges)).or_default() += 1;
    }

    let mut sectors = Vec::new();
    for ((e2, charges), recs) in &buckets {
        let parts = negated(charges);
        let mult = recs.len() as u64;
        let unique = occurrences[&parts] == 1;
        let group_weight = format!("charges ({})", join_i64(charges));
        let row = match PartitionA::new(parts.clone()) {
            Ok(lam) => {
                let predicted_w = weight_map_aa(&lam);
                let exps = exponent_set_a(&lam);
                let predicted_l = labels_from_exponents(&exps, LABEL_DEPTH, eps)?;
                let decoded_w = decode_weight_a(&recs[0].vector, cfg);
                let decoded_l = decode_labels(&recs[0].vector, LabelFamily::A, LABEL_DEPTH, cfg);
                let matched = mult == 1
                    && unique
                    && matches!(&decoded_w, Ok(w) if *w == predicted_w)
                    && matches!(&decoded_l, Ok(l) if *l == predicted_l);
                SectorReport {
                    lambda: parts,
                    bar: false,
                    det: false,
                    energy2: *e2,
                    mult,
                    group_weight,
                    algebra_weight: render_cell(&decoded_w),
                    exponent_set: exps.to_string(),
                    labels: label_cells(&decoded_l),
                    predicted: predicted_w.to_string(),
                    matched,
                }
            }
            Err(e) => SectorReport {
                lambda: parts,
                bar: false,
                det: false,
                energy2: *e2,
                mult,
                group_weight,
                algebra_weight: String::new(),
                exponent_set: String::new(),
                labels: Vec::new(),
                predicted: format!("error: {e}"),
                matched: false,
            },
        };
        sectors.push(row);
    }

    Ok(IsotypicReport {
        schema: 1,
        group: "gl".to_string(),
        l: cfg.pairs,
        emax2: cfg.emax2,
        sign_epsilon: eps,
        sectors,
        completeness: gl_completeness(cfg)?,
    })
}

/// Count, per energy, the dimension explained by the group-highest
/// vectors: each block's raising kernel times the label's classical
/// dimension.  A group-highest vector in a non-dominant block is never
/// attributed, so any such anomaly leaves the row visibly short.
fn gl_completeness(cfg: &FockConfig) -> Result<Vec<CompletenessRow>> {
    let raising = group_raising_ops(GroupKind::Gl, cfg);
    let cvs = charge_vectors(cfg);
    let mut rows = Vec::new();
    for e2 in 0..=cfg.emax2 {
        let rhs = graded_dim(cfg, None, None, e2) as u64;
        let mut lhs = 0u64;
        for cv in &cvs {
            let count = block_kernel(cfg, &raising, Some(cv), None, e2)?.len() as u64;
            if count == 0 {
                continue;
            }
            if let Ok(lam) = PartitionA::new(negated(cv)) {
                lhs += gl_dim(&lam) as u64 * count;
            }
        }
        rows.push(CompletenessRow {
            energy2: e2,
            lhs,
            rhs,
        });
    }
    Ok(rows)
}

/// Dominance for the even orthogonal group: the first `l-1` entries are
/// non-increasing and bound the absolute value of the last.
fn o_dominant(w: &[i64]) -> bool {
    let l = w.len();
    for i in 0..l.saturating_sub(2) {
        if w[i] < w[i + 1] {
            return false;
        }
    }
    l < 2 || w[l - 2] >= w[l - 1].abs()
}

fn oeven_group_weight(recs: &[HwvRecord]) -> String {
    let blocks: Vec<String> = recs
        .iter()
        .map(|r| match r.tau_sign {
            Some(s) => format!(
                "({}) swap {}",
                join_i64(&r.charges),
                if s > 0 { "+1" } else { "-1" }
            ),
            None => format!("({})", join_i64(&r.charges)),
        })
        .collect();
    format!("charges {}", blocks.join(" & "))
}

fn verify_oeven(cfg: &FockConfig, eps: i64) -> Result<IsotypicReport> {
    let records = find_joint_hwvs(GroupKind::OEven, cfg)?;

    // Chirality partners bucket together: an induced label is found once
    // per sign of the last charge and must restrict to identical algebra
    // data on both sides.
    let mut buckets: BTreeMap<(i64, Vec<i64>, bool, bool), Vec<HwvRecord>> = BTreeMap::new();
    let mut stray = Vec::new();
    for r in records {
        let w = negated(&r.charges);
        if !o_dominant(&w) {
            stray.push(r);
            continue;
        }
        let mut parts = w;
        let last = parts.last_mut().expect("at least one pair");
        let bar = *last != 0;
        *last = last.abs();
        let det = !bar && r.tau_sign == Some(-1);
        buckets.entry((r.energy2, parts, bar, det)).or_default().push(r);
    }

    let mut occurrences: BTreeMap<(Vec<i64>, bool, bool), u64> = BTreeMap::new();
    for (_, parts, bar, det) in buckets.keys() {
        *occurrences
            .entry((parts.clone(), *bar, *det))
            .or_default() += 1;
    }

    let mut sectors = Vec::new();
    for ((e2, parts, bar, det), recs) in &buckets {
        let unique = occurrences[&(parts.clone(), *bar, *det)] == 1;
        let found = recs.len() as u64;
        let (mult, pairing_ok) = if *bar {
            (found / 2, found % 2 == 0)
        } else {
            (found, true)
        };
        let group_weight = oeven_group_weight(recs);
        let row = match PartitionD::new(parts.clone(), *bar, *det) {
            Ok(lam) => {
                let predicted_w = weight_map_dd(&lam);
                let exps = exponent_set_d(&lam);
                let predicted_l = labels_from_exponents(&exps, LABEL_DEPTH, eps)?;
                let decoded_ws: Vec<_> = recs
                    .iter()
                    .map(|r| decode_weight_d(&r.vector, cfg))
                    .collect();
                let decoded_ls: Vec<_> = recs
                    .iter()
                    .map(|r| decode_labels(&r.vector, LabelFamily::Dplus, LABEL_DEPTH, cfg))
                    .collect();
                let matched = pairing_ok
                    && mult == 1
                    && unique
                    && decoded_ws
                        .iter()
                        .all(|w| matches!(w, Ok(w) if *w == predicted_w))
                    && decoded_ls
                        .iter()
                        .all(|l| matches!(l, Ok(l) if *l == predicted_l));
                SectorReport {
                    lambda: parts.clone(),
                    bar: *bar,
                    det: *det,
                    energy2: *e2,
                    mult,
                    group_weight,
                    algebra_weight: render_cell(&decoded_ws[0]),
                    exponent_set: exps.to_string(),
                    labels: label_cells(&decoded_ls[0]),
                    predicted: predicted_w.to_string(),
                    matched,
                }
            }
            Err(e) => SectorReport {
                lambda: parts.clone(),
                bar: *bar,
                det: *det,
                energy2: *e2,
                mult,
                group_weight,
                algebra_weight: String::new(),
                exponent_set: String::new(),
                labels: Vec::new(),
                predicted: format!("error: {e}"),
                matched: false,
            },
        };
        sectors.push(row);
    }
    for r in stray {
        sectors.push(SectorReport {
            lambda: negated(&r.charges),
            bar: false,
            det: false,
            energy2: r.energy2,
            mult: 1,
            group_weight: oeven_group_weight(std::slice::from_ref(&r)),
            algebra_weight: String::new(),
            exponent_set: String::new(),
            labels: Vec::new(),
            predicted: "a dominant orthogonal weight".to_string(),
            matched: false,
        });
    }

    Ok(IsotypicReport {
        schema: 1,
        group: "o2l".to_string(),
        l: cfg.pairs,
        emax2: cfg.emax2,
        sign_epsilon: eps,
        sectors,
        completeness: oeven_completeness(cfg)?,
    })
}

/// Count, per energy, the dimension explained by the orthogonal sectors.
/// Only the representative of each chirality pair is visited (the last
/// entry of the dominant weight taken non-negative); its mirror block is
/// covered by the doubled dimension of the induced label.  Blocks with a
/// vanishing last charge are split into swap eigenspaces so the plain and
/// determinant-twisted labels are weighed separately.
fn oeven_completeness(cfg: &FockConfig) -> Result<Vec<CompletenessRow>> {
    let raising = group_raising_ops(GroupKind::OEven, cfg);
    let cvs = charge_vectors(cfg);
    let mut rows = Vec::new();
    for e2 in 0..=cfg.emax2 {
        let rhs = graded_dim(cfg, None, None, e2) as u64;
        let mut lhs = 0u64;
        for cv in &cvs {
            let w = negated(cv);
            let last = *w.last().expect("at least one pair");
            if !o_dominant(&w) || last < 0 {
                continue;
            }
            let kernel = block_kernel(cfg, &raising, Some(cv), None, e2)?;
            if kernel.is_empty() {
                continue;
            }
            if last > 0 {
                let lam = PartitionD::barred(w)?;
                lhs += o_dim(&lam) as u64 * kernel.len() as u64;
            } else {
                let domain = basis(cfg, Some(cv), None, e2);
                let (plus, minus) = tau_split(cfg, cfg.pairs, &domain, &kernel)?;
                if !plus.is_empty() {
                    let lam = PartitionD::plain(w.clone())?;
                    lhs += o_dim(&lam) as u64 * plus.len() as u64;
                }
                if !minus.is_empty() {
                    let lam = PartitionD::det_twist(w)?;
                    lhs += o_dim(&lam) as u64 * minus.len() as u64;
                }
            }
        }
        rows.push(CompletenessRow {
            energy2: e2,
            lhs,
            rhs,
        });
    }
    Ok(rows)
}

fn verify_oone(cfg: &FockConfig, eps: i64) -> Result<IsotypicReport> {
    let records = find_joint_hwvs(GroupKind::OOne, cfg)?;
    let mut counts = [0u64; 2];
    for r in &records {
        counts[r.neutral_parity.unwrap_or(0) as usize] += 1;
    }

    let mut sectors = Vec::new();
    for r in &records {
        let parity = r.neutral_parity.unwrap_or(0);
        let det = parity == 1;
        // The trivial label lives on the vacuum, the sign label on the
        // lowest odd state.
        let predicted_w = WeightDinf::new(
            [(i64::from(parity), 1)].into_iter().collect(),
            ratio(1, 2),
        );
        let exps = if det {
            ExponentSet::new_dplus([(1, 1)].into_iter().collect(), ratio(1, 2))
        } else {
            ExponentSet::new_dplus(BTreeMap::new(), ratio(1, 2))
        };
        let predicted_l = labels_from_exponents(&exps, LABEL_DEPTH, eps)?;
        let decoded_w = decode_weight_d(&r.vector, cfg);
        let decoded_l = decode_labels(&r.vector, LabelFamily::Dplus, LABEL_DEPTH, cfg);
        let matched = counts[parity as usize] == 1
            && r.energy2 == i64::from(parity)
            && matches!(&decoded_w, Ok(w) if *w == predicted_w)
            && matches!(&decoded_l, Ok(l) if *l == predicted_l);
        sectors.push(SectorReport {
            lambda: Vec::new(),
            bar: false,
            det,
            energy2: r.energy2,
            mult: counts[parity as usize],
            group_weight: format!("parity {}", if parity == 0 { "even" } else { "odd" }),
            algebra_weight: render_cell(&decoded_w),
            exponent_set: exps.to_string(),
            labels: label_cells(&decoded_l),
            predicted: predicted_w.to_string(),
            matched,
        });
    }

    // Completeness: the two parity sectors are single irreducibles, so the
    // cyclic span of each lowest vector under the negative diagonal-length
    // modes must fill its whole parity subspace level by level.
    let even_dims = virasoro_descendant_dims(cfg, FockVector::vacuum())?;
    let odd_dims = virasoro_descendant_dims(cfg, lowest_odd_state()?)?;
    let mut completeness = Vec::new();
    for e2 in 0..=cfg.emax2 {
        let rhs = graded_dim(cfg, None, None, e2) as u64;
        let spans = if e2 % 2 == 0 { &even_dims } else { &odd_dims };
        let lhs = spans.get(&e2).copied().unwrap_or(0) as u64;
        completeness.push(CompletenessRow {
            energy2: e2,
            lhs,
            rhs,
        });
    }

    Ok(IsotypicReport {
        schema: 1,
        group: "o1".to_string(),
        l: cfg.pairs,
        emax2: cfg.emax2,
        sign_epsilon: eps,
        sectors,
        completeness,
    })
}

fn lowest_odd_state() -> Result<FockVector> {
    let (m, _) = FockMonomial::from_unordered(vec![Factor {
        label: FermionLabel::Neutral,
        n2: -1,
    }])
    .expect("a single factor never collides");
    Ok(FockVector::from_monomial(m))
}

/// Graded dimensions of the cyclic span of `seed` under the negative
/// Virasoro modes realized on the neutral space.  Vectors are queued
/// whenever they enlarge a level's span, so the closure covers every
/// operator word whose intermediate energies fit the window.
fn virasoro_descendant_dims(
    cfg: &FockConfig,
    seed: FockVector,
) -> Result<BTreeMap<i64, usize>> {
    let parity = seed
        .terms()
        .next()
        .map(|(m, _)| m.neutral_parity())
        .ok_or_else(|| Error::InvalidArgument("the cyclic seed must be nonzero".to_string()))?;
    let ops: Vec<_> = (1..=cfg.emax2 / 2).map(|a| op_w(cfg, 1, -a)).collect();

    let seed_e2 = seed.max_energy2().expect("nonzero seed");
    let mut levels: BTreeMap<i64, Vec<FockVector>> = BTreeMap::new();
    levels.insert(seed_e2, vec![seed.clone()]);
    let mut queue = vec![seed];
    while let Some(v) = queue.pop() {
        let ve2 = v.max_energy2().expect("queued vectors are nonzero");
        for op in &ops {
            if ve2 > op.safe_input_energy2() {
                continue;
            }
            let w = op.apply(&v)?;
            if w.is_zero() {
                continue;
            }
            let we2 = w.max_energy2().expect("nonzero");
            let entry = levels.entry(we2).or_default();
            let mut spanning = entry.clone();
            spanning.push(w.clone());
            let domain = basis(cfg, None, Some(parity), we2);
            let reduced = reduce_to_basis(&domain, &spanning);
            if reduced.len() > entry.len() {
                *entry = reduced;
                queue.push(w);
            }
        }
    }
    Ok(levels.into_iter().map(|(e2, vs)| (e2, vs.len())).collect())
}

/// Dimension checks tying the window to its Virasoro content.  On a
/// single charged pair, the swap-even part of each charge-zero level must
/// match the closed-form character of the even subalgebra module and the
/// swap-odd part its complement.  On the neutral space, the cyclic spans
/// of the vacuum and of the lowest odd state must exhaust their parity
/// subspaces level by level.
pub fn virasoro_content_checks(cfg: &FockConfig) -> Result<RelationReport> {
    let mut params = BTreeMap::new();
    params.insert("pairs".to_string(), cfg.pairs.to_string());
    params.insert("neutral".to_string(), cfg.neutral.to_string());
    params.insert("emax2".to_string(), cfg.emax2.to_string());
    let mut failures = Vec::new();
    let mut instances = 0u64;

    if cfg.pairs == 1 && !cfg.neutral {
        params.insert("mode".to_string(), "charge_zero_split".to_string());
        charge_zero_split(cfg, &mut instances, &mut failures)?;
    } else if cfg.pairs == 0 && cfg.neutral {
        params.insert("mode".to_string(), "cyclic_span".to_string());
        neutral_cyclic_span(cfg, &mut instances, &mut failures)?;
    } else {
        return Err(Error::InvalidArgument(
            "content checks run on a single charged pair or on the neutral space".to_string(),
        ));
    }

    Ok(RelationReport {
        schema: 1,
        suite: "virasoro_content".to_string(),
        params,
        instances,
        failures,
    })
}

fn charge_zero_split(
    cfg: &FockConfig,
    instances: &mut u64,
    failures: &mut Vec<RelationFailure>,
) -> Result<()> {
    let even_ch = ch_v1plus(cfg.emax2);
    for e2 in 0..=cfg.emax2 {
        let block = basis(cfg, Some(&[0]), None, e2);
        let (even, odd) = if block.is_empty() {
            (0, 0)
        } else {
            let vecs: Vec<FockVector> = block
                .iter()
                .cloned()
                .map(FockVector::from_monomial)
                .collect();
            let (plus, minus) = tau_split(cfg, 1, &block, &vecs)?;
            (plus.len(), minus.len())
        };
        let want_even = even_ch.coeff(e2);
        let want_odd = BigInt::from(block.len()) - &want_even;
        *instances += 2;
        if BigInt::from(even) != want_even {
            failures.push(RelationFailure {
                instance: format!("swap-even charge-zero dimension at doubled energy {e2}"),
                witness_monomial: format!("charge-zero block of dimension {}", block.len()),
                lhs: even.to_string(),
                rhs: want_even.to_string(),
            });
        }
        if BigInt::from(odd) != want_odd {
            failures.push(RelationFailure {
                instance: format!("swap-odd charge-zero dimension at doubled energy {e2}"),
                witness_monomial: format!("charge-zero block of dimension {}", block.len()),
                lhs: odd.to_string(),
                rhs: want_odd.to_string(),
            });
        }
    }
    Ok(())
}

fn neutral_cyclic_span(
    cfg: &FockConfig,
    instances: &mut u64,
    failures: &mut Vec<RelationFailure>,
) -> Result<()> {
    let seeds = [
        (0u8, FockVector::vacuum(), "descendants of the vacuum"),
        (1u8, lowest_odd_state()?, "descendants of the lowest odd state"),
    ];
    for (parity, seed, what) in seeds {
        let dims = virasoro_descendant_dims(cfg, seed)?;
        for e2 in 0..=cfg.emax2 {
            if e2 % 2 != i64::from(parity) {
                continue;
            }
            let want = graded_dim(cfg, None, Some(parity), e2);
            let got = dims.get(&e2).copied().unwrap_or(0);
            *instances += 1;
            if got != want {
                failures.push(RelationFailure {
                    instance: format!("{what} at doubled energy {e2}"),
                    witness_monomial: "graded dimension".to_string(),
                    lhs: got.to_string(),
                    rhs: want.to_string(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_report_on_one_pair_matches_every_sector() {
        let cfg = FockConfig::charged(1, 6);
        let report = verify_duality(GroupKind::Gl, &cfg).unwrap();
        assert!(report.passed());
        assert_eq!(report.group, "gl");
        assert_eq!(report.sign_epsilon, -1);
        let lambdas: Vec<_> = report.sectors.iter().map(|s| s.lambda.clone()).collect();
        assert_eq!(
            lambdas,
            vec![vec![0], vec![1], vec![-1], vec![2], vec![-2]]
        );
        assert!(report.sectors.iter().all(|s| s.mult == 1));
        assert_eq!(report.completeness.len(), 7);
    }

    #[test]
    fn gl_report_on_two_pairs_is_complete() {
        let cfg = FockConfig::charged(2, 6);
        let report = verify_duality(GroupKind::Gl, &cfg).unwrap();
        assert!(report.passed());
        // Doubled energy 1 carries the defining label and its dual, each
        // found in its dominant block only; the mirror blocks host no
        // highest weight vectors.
        let defining: Vec<_> = report
            .sectors
            .iter()
            .filter(|s| s.energy2 == 1)
            .map(|s| s.lambda.clone())
            .collect();
        assert_eq!(defining, vec![vec![1, 0], vec![0, -1]]);
        for row in &report.completeness {
            assert_eq!(row.lhs, row.rhs, "at doubled energy {}", row.energy2);
        }
    }

    #[test]
    fn even_orthogonal_report_lists_the_four_small_sectors() {
        let cfg = FockConfig::charged(1, 8);
        let report = verify_duality(GroupKind::OEven, &cfg).unwrap();
        assert!(report.passed());
        assert_eq!(report.group, "o2l");
        let shape: Vec<_> = report
            .sectors
            .iter()
            .map(|s| (s.lambda.clone(), s.bar, s.det, s.energy2, s.mult))
            .collect();
        assert_eq!(
            shape,
            vec![
                (vec![0], false, false, 0, 1),
                (vec![1], true, false, 1, 1),
                (vec![0], false, true, 2, 1),
                (vec![2], true, false, 4, 1),
            ]
        );
    }

    #[test]
    fn reflection_group_report_has_the_two_parity_sectors() {
        let cfg = FockConfig::neutral(9);
        let report = verify_duality(GroupKind::OOne, &cfg).unwrap();
        assert!(report.passed());
        assert_eq!(report.group, "o1");
        assert_eq!(report.l, 0);
        assert_eq!(report.sectors.len(), 2);
        assert!(!report.sectors[0].det && report.sectors[0].energy2 == 0);
        assert!(report.sectors[1].det && report.sectors[1].energy2 == 1);
        assert_eq!(
            report.sectors[1].labels,
            vec!["1: 1/2", "3: 1/8", "5: 1/32"]
        );
    }

    #[test]
    fn charge_zero_levels_split_into_the_two_closed_forms() {
        let cfg = FockConfig::charged(1, 8);
        let report = virasoro_content_checks(&cfg).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.instances, 18);
        assert_eq!(report.params["mode"], "charge_zero_split");
    }

    #[test]
    fn neutral_parity_subspaces_are_cyclic_spans() {
        let cfg = FockConfig::neutral(12);
        let report = virasoro_content_checks(&cfg).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.instances, 13);
        assert_eq!(report.params["mode"], "cyclic_span");
    }

    #[test]
    fn reports_serialize_with_the_renamed_match_field() {
        let cfg = FockConfig::charged(1, 4);
        let report = verify_duality(GroupKind::Gl, &cfg).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with("{\"schema\":1,\"group\":\"gl\""));
        assert!(json.contains("\"match\":true"));
        assert!(!json.contains("\"matched\""));
    }
}
