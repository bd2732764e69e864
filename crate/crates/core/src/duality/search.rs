//! Joint highest-weight vector search on the truncated window, and the
//! decoders that read Cartan eigenvalues and diagonal labels off a found
//! vector.
//!
//! The search is a finite, exact kernel computation per graded block: a
//! block of fixed charge vector (or neutral parity) and fixed energy is
//! finite dimensional, the group raising modes preserve energy, and the
//! algebra positive modes strictly lower it, so every annihilation
//! condition restricts to an exact sparse matrix out of the block.  The
//! joint kernel of those matrices is precisely the set of window vectors
//! killed by the group raising operators and by the whole positive part of
//! the dual algebra.

use std::collections::BTreeMap;

use num::{One, Zero};
use rayon::prelude::*;

use super::{exponent_set_a, PartitionA, WeightDinf, WeightGlInf};
use crate::error::{Error, Result};
use crate::exact::{joint_kernel, rat, ratio, Rat, SparseMat, SparseVec};
use crate::fock::{basis, extremal_monomial, tau, FockConfig, FockMonomial, FockVector};
use crate::repops::{
    index_window, op_dinf, op_e, op_horizontal, operator_block, realize_diffop, HorizontalKind,
    ModeOperator,
};
use crate::symalg::labels::{
    labels_from_exponents, LabelFamily, Labels, LabelsA, LabelsDplus,
};
use crate::symalg::{DiffOp, Poly};

/// Which finite group acts horizontally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// `GL_l` on `l` charged pairs, paired with the full diagonal algebra.
    Gl,
    /// `O_{2l}` on `l` charged pairs, paired with the reflection-fixed
    /// algebra.
    OEven,
    /// The order-two group on the neutral fermion.
    OOne,
}

/// One joint highest weight vector, tagged with the graded block it
/// spans a line of.
#[derive(Debug, Clone)]
pub struct HwvRecord {
    pub energy2: i64,
    /// Per-pair fermion charges of the block (empty for the neutral space).
    pub charges: Vec<i64>,
    pub neutral_parity: Option<u8>,
    /// Eigenvalue of the pair-`l` swap, recorded on charge-zero blocks of
    /// the even orthogonal search; `None` elsewhere.
    pub tau_sign: Option<i64>,
    pub vector: FockVector,
}

/// The group raising operators: charge-transfer modes `e*(p,q)`, `p < q`,
/// plus the double-lowering modes `e**(p,q)` for the even orthogonal
/// group.  The order-two group has no raising directions at all.
pub fn group_raising_ops(group: GroupKind, cfg: &FockConfig) -> Vec<ModeOperator> {
    let mut ops = Vec::new();
    if matches!(group, GroupKind::OOne) {
        return ops;
    }
    for p in 1..=cfg.pairs {
        for q in (p + 1)..=cfg.pairs {
            ops.push(op_horizontal(cfg, HorizontalKind::PlusMinus, p, q));
            if matches!(group, GroupKind::OEven) {
                ops.push(op_horizontal(cfg, HorizontalKind::PlusPlus, p, q));
            }
        }
    }
    ops
}

/// Every positive-principal-degree window operator of the dual algebra:
/// the above-diagonal elementary matrices for the GL search, their
/// antisymmetrized counterparts for both orthogonal searches.  Annihilation
/// by all of them is the highest-weight condition; using the whole window
/// family (rather than a generating set) keeps the condition exact under
/// truncation.
pub fn algebra_positive_ops(group: GroupKind, cfg: &FockConfig) -> Result<Vec<ModeOperator>> {
    let (lo, hi) = index_window(cfg);
    let mut ops = Vec::new();
    for i in lo..=hi {
        for j in (i + 1)..=hi {
            let op = match group {
                GroupKind::Gl => op_e(cfg, i, j)?,
                GroupKind::OEven | GroupKind::OOne => op_dinf(cfg, i, j)?,
            };
            if !op.is_zero_here() {
                ops.push(op);
            }
        }
    }
    Ok(ops)
}

fn sparse_to_vector(domain: &[FockMonomial], sv: &SparseVec) -> FockVector {
    let mut v = FockVector::zero();
    for (i, c) in sv.iter() {
        v.add_term(domain[*i].clone(), c.clone());
    }
    v
}

fn vector_to_sparse(index: &BTreeMap<&FockMonomial, usize>, v: &FockVector) -> SparseVec {
    let mut sv = SparseVec::new();
    for (m, c) in v.terms() {
        let col = index.get(m).expect("vector leaves its graded block");
        sv.set(*col, c.clone());
    }
    sv
}

/// Row-reduce a family of vectors supported on one block to a
/// deterministic independent basis (leading coefficients 1, leading
/// monomials ascending).
pub fn reduce_to_basis(domain: &[FockMonomial], vecs: &[FockVector]) -> Vec<FockVector> {
    let index: BTreeMap<&FockMonomial, usize> =
        domain.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut mat = SparseMat::new(domain.len());
    for v in vecs {
        mat.push_row(vector_to_sparse(&index, v));
    }
    let (red, _) = mat.rref();
    red.rows()
        .iter()
        .map(|r| sparse_to_vector(domain, r))
        .collect()
}

/// Exact kernel of several graded operators restricted to one block.
/// Group modes preserve energy and positive modes lower it, so every image
/// block is inside the window and application never truncates.
pub fn block_kernel(
    cfg: &FockConfig,
    ops: &[ModeOperator],
    charges: Option<&[i64]>,
    parity: Option<u8>,
    energy2: i64,
) -> Result<Vec<FockVector>> {
    let domain = basis(cfg, charges, parity, energy2);
    if domain.is_empty() {
        return Ok(Vec::new());
    }
    let mut mats = Vec::new();
    for op in ops {
        if op.is_zero_here() {
            continue;
        }
        let deg = op
            .principal_degree()
            .ok_or_else(|| Error::InvalidArgument(format!("{} is not graded", op.name())))?;
        let shifted: Option<Vec<i64>> = charges.map(|cs| {
            cs.iter()
                .zip(op.charge_shift())
                .map(|(c, s)| c + s)
                .collect()
        });
        let codomain = basis(cfg, shifted.as_deref(), parity, energy2 - 2 * deg);
        mats.push(operator_block(op, &domain, &codomain)?);
    }
    let kernel = if mats.is_empty() {
        // No constraints: the whole block is the kernel.
        (0..domain.len())
            .map(|k| {
                let mut v = SparseVec::new();
                v.set(k, Rat::one());
                v
            })
            .collect()
    } else {
        joint_kernel(&mats)?
    };
    Ok(kernel
        .iter()
        .map(|sv| sparse_to_vector(&domain, sv))
        .collect())
}

/// Split independent vectors spanning a swap-stable subspace into the two
/// eigen-parts of the pair-`pair` swap.  Errors if the span turns out not
/// to be stable (the eigen-parts would then fail to exhaust it).
pub fn tau_split(
    cfg: &FockConfig,
    pair: u8,
    domain: &[FockMonomial],
    vecs: &[FockVector],
) -> Result<(Vec<FockVector>, Vec<FockVector>)> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for v in vecs {
        let tv = tau(cfg, pair, v)?;
        let mut p = v.clone();
        p.add_scaled(&Rat::one(), &tv);
        if !p.is_zero() {
            plus.push(p);
        }
        let m = v.sub(&tv);
        if !m.is_zero() {
            minus.push(m);
        }
    }
    let plus = reduce_to_basis(domain, &plus);
    let minus = reduce_to_basis(domain, &minus);
    if plus.len() + minus.len() != vecs.len() {
        return Err(Error::DimensionMismatch(format!(
            "the pair-{pair} swap does not preserve the {}-dimensional kernel",
            vecs.len()
        )));
    }
    Ok((plus, minus))
}

/// All charge vectors realizable in the window: charge `m` on one pair
/// costs doubled energy at least `m^2`.
pub(crate) fn charge_vectors(cfg: &FockConfig) -> Vec<Vec<i64>> {
    fn rec(pairs: usize, budget2: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == pairs {
            out.push(cur.clone());
            return;
        }
        let s = (0i64..).take_while(|m| m * m <= budget2).last().unwrap_or(0);
        for m in -s..=s {
            cur.push(m);
            rec(pairs, budget2 - m * m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(cfg.pairs as usize, cfg.emax2, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Find every joint highest weight vector on the window: vectors killed by
/// the group raising modes and by the whole positive part of the dual
/// algebra, enumerated per graded block.  Charge-zero blocks of the even
/// orthogonal search are additionally split into swap eigenspaces, which
/// is what separates a label from its determinant twist.
pub fn find_joint_hwvs(group: GroupKind, cfg: &FockConfig) -> Result<Vec<HwvRecord>> {
    match group {
        GroupKind::OOne => {
            if cfg.pairs != 0 || !cfg.neutral {
                return Err(Error::InvalidArgument(
                    "the order-two search runs on the neutral configuration".into(),
                ));
            }
        }
        GroupKind::Gl | GroupKind::OEven => {
            if cfg.pairs == 0 {
                return Err(Error::InvalidArgument(
                    "the charged searches need at least one fermion pair".into(),
                ));
            }
        }
    }
    let mut ops = group_raising_ops(group, cfg);
    ops.extend(algebra_positive_ops(group, cfg)?);

    // Independent graded blocks, in report order: energy outside, then
    // charges (or parity) ascending.
    let mut blocks: Vec<(i64, Option<Vec<i64>>, Option<u8>)> = Vec::new();
    let cvs = if matches!(group, GroupKind::OOne) {
        Vec::new()
    } else {
        charge_vectors(cfg)
    };
    for e2 in 0..=cfg.emax2 {
        if matches!(group, GroupKind::OOne) {
            for parity in [0u8, 1u8] {
                blocks.push((e2, None, Some(parity)));
            }
        } else {
            for cv in &cvs {
                blocks.push((e2, Some(cv.clone()), None));
            }
        }
    }

    let per_block: Result<Vec<Vec<HwvRecord>>> = blocks
        .par_iter()
        .map(|(e2, charges, parity)| {
            let kernel = block_kernel(cfg, &ops, charges.as_deref(), *parity, *e2)?;
            if kernel.is_empty() {
                return Ok(Vec::new());
            }
            let record = |tau_sign, vector| HwvRecord {
                energy2: *e2,
                charges: charges.clone().unwrap_or_default(),
                neutral_parity: *parity,
                tau_sign,
                vector,
            };
            let split_here = matches!(group, GroupKind::OEven)
                && charges.as_ref().is_some_and(|cs| cs[cs.len() - 1] == 0);
            let mut recs = Vec::new();
            if split_here {
                let domain = basis(cfg, charges.as_deref(), *parity, *e2);
                let (plus, minus) = tau_split(cfg, cfg.pairs, &domain, &kernel)?;
                recs.extend(plus.into_iter().map(|v| record(Some(1), v)));
                recs.extend(minus.into_iter().map(|v| record(Some(-1), v)));
            } else {
                recs.extend(kernel.into_iter().map(|v| record(None, v)));
            }
            Ok(recs)
        })
        .collect();
    Ok(per_block?.into_iter().flatten().collect())
}

/// The scalar by which `op` acts on `v`; errors when `v` is not an exact
/// eigenvector.
pub fn eigenvalue_of(op: &ModeOperator, v: &FockVector) -> Result<Rat> {
    if v.is_zero() {
        return Err(Error::InvalidArgument(
            "the zero vector has no eigenvalue".into(),
        ));
    }
    let image = op.apply(v)?;
    if image.is_zero() {
        return Ok(Rat::zero());
    }
    let (m0, c0) = v.terms().next().expect("nonzero vector has a term");
    let k = image.coeff(m0) / c0;
    let mut expect = v.clone();
    expect.scale(&k);
    if image.sub(&expect).is_zero() {
        Ok(k)
    } else {
        Err(Error::NotEigenvector(op.name().to_string()))
    }
}

/// Central charge carried by the configuration: the number of pairs, or
/// one half on the neutral space.
fn level_of(cfg: &FockConfig) -> Rat {
    if cfg.pairs == 0 {
        ratio(1, 2)
    } else {
        rat(cfg.pairs as i64)
    }
}

fn integral_coeff(h: Rat, i: i64) -> Result<i64> {
    if !h.is_integer() {
        return Err(Error::InvalidArgument(format!(
            "fundamental coefficient at index {i} decodes to {h}, not an integer"
        )));
    }
    i64::try_from(&h.to_integer())
        .map_err(|_| Error::InvalidArgument(format!("coefficient at index {i} overflows")))
}

/// Read the diagonal weight of a joint hwv on the GL side: eigenvalues
/// `lam_i` of the diagonal matrices across the window, folded into
/// fundamental coefficients `h_i = lam_i - lam_(i+1)`, plus the level on
/// `h_0`.  The eigenvalues must vanish at the window edges — otherwise the
/// window is too small to hold the whole weight.
pub fn decode_weight_a(v: &FockVector, cfg: &FockConfig) -> Result<WeightGlInf> {
    let (lo, hi) = index_window(cfg);
    let mut lam: BTreeMap<i64, Rat> = BTreeMap::new();
    for i in lo..=hi {
        lam.insert(i, eigenvalue_of(&op_e(cfg, i, i)?, v)?);
    }
    if !lam[&lo].is_zero() || !lam[&hi].is_zero() {
        return Err(Error::WindowTooSmall {
            need_lo: lo - 1,
            need_hi: hi + 1,
            lo,
            hi,
        });
    }
    let c = level_of(cfg);
    let mut coeffs = BTreeMap::new();
    for i in lo..=hi {
        let next = lam.get(&(i + 1)).cloned().unwrap_or_else(Rat::zero);
        let mut h = lam[&i].clone() - next;
        if i == 0 {
            h += c.clone();
        }
        if !h.is_zero() {
            coeffs.insert(i, integral_coeff(h, i)?);
        }
    }
    Ok(WeightGlInf::new(coeffs, c))
}

/// Read the reflection-algebra weight of a joint hwv: eigenvalues `mu_i`
/// of the antisymmetrized diagonals for `i >= 1`, folded via
/// `h_i = mu_i - mu_(i+1)` and `h_0 = -mu_1 - mu_2 + 2c`.
pub fn decode_weight_d(v: &FockVector, cfg: &FockConfig) -> Result<WeightDinf> {
    let (_, hi) = index_window(cfg);
    let mut mu: BTreeMap<i64, Rat> = BTreeMap::new();
    for i in 1..=hi {
        mu.insert(i, eigenvalue_of(&op_dinf(cfg, i, i)?, v)?);
    }
    if hi >= 1 && !mu[&hi].is_zero() {
        return Err(Error::WindowTooSmall {
            need_lo: 1,
            need_hi: hi + 1,
            lo: 1,
            hi,
        });
    }
    let c = level_of(cfg);
    let mu_at = |i: i64| mu.get(&i).cloned().unwrap_or_else(Rat::zero);
    let mut coeffs = BTreeMap::new();
    let h0 = -mu_at(1) - mu_at(2) + rat(2) * c.clone();
    if !h0.is_zero() {
        coeffs.insert(0, integral_coeff(h0, 0)?);
    }
    for i in 1..=hi {
        let h = mu_at(i) - mu_at(i + 1);
        if !h.is_zero() {
            coeffs.insert(i, integral_coeff(h, i)?);
        }
    }
    Ok(WeightDinf::new(coeffs, c))
}

/// Read the diagonal labels of a joint hwv: eigenvalues of the realized
/// `-t^0 D^n` (family `A`, every `n <= n_max`) or `-t^0 (D+1/2)^n`
/// (reflection family, odd `n` only — the even powers fall outside the
/// subalgebra and are not scalar on these vectors).
pub fn decode_labels(
    v: &FockVector,
    side: LabelFamily,
    n_max: usize,
    cfg: &FockConfig,
) -> Result<Labels> {
    match side {
        LabelFamily::A => {
            let mut delta = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let x = DiffOp::from_term(0, Poly::monomial(n).neg());
                delta.push(eigenvalue_of(&realize_diffop(cfg, &x)?, v)?);
            }
            Ok(Labels::A(LabelsA {
                c: level_of(cfg),
                delta,
            }))
        }
        LabelFamily::Dplus => {
            let mut delta_plus = BTreeMap::new();
            let mut n = 1usize;
            while n <= n_max {
                let p = Poly::monomial(n)
                    .compose_affine(&Rat::one(), &ratio(1, 2))
                    .neg();
                let op = realize_diffop(cfg, &DiffOp::from_term(0, p))?;
                delta_plus.insert(n as i64, eigenvalue_of(&op, v)?);
                n += 2;
            }
            Ok(Labels::Dplus(LabelsDplus {
                c: level_of(cfg),
                delta_plus,
            }))
        }
    }
}

/// The calibrated exponent orientation, recorded in every report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignRecord {
    pub epsilon: i64,
}

/// Determine the unique orientation `epsilon` under which the decoded
/// labels of the four explicit single-pair charge sectors (`m = ±1, ±2`)
/// agree with the label generating function of their exponent multisets.
/// The calibration runs on an internal one-pair window regardless of the
/// configuration under study.
pub fn reconcile_signs(emax2: i64) -> Result<SignRecord> {
    let cfg = FockConfig::charged(1, emax2.max(6));
    let n_max = 4usize;
    let mut viable = [true, true]; // epsilon = +1, -1
    for m in [-2i64, -1, 1, 2] {
        let hw = FockVector::from_monomial(extremal_monomial(&cfg, 1, m)?);
        let decoded = decode_labels(&hw, LabelFamily::A, n_max, &cfg)?;
        let lam = PartitionA::new(vec![-m])?;
        let exps = exponent_set_a(&lam);
        for (slot, eps) in [1i64, -1].into_iter().enumerate() {
            if labels_from_exponents(&exps, n_max, eps)? != decoded {
                viable[slot] = false;
            }
        }
    }
    match viable {
        [false, true] => Ok(SignRecord { epsilon: -1 }),
        [true, false] => Ok(SignRecord { epsilon: 1 }),
        [true, true] => Err(Error::ConventionFailure(
            "both orientations fit the charge sectors; the calibration is degenerate".into(),
        )),
        [false, false] => Err(Error::ConventionFailure(
            "no orientation matches the decoded charge-sector labels".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{weight_map_aa, weight_map_dd, PartitionD};
    use crate::fock::{Factor, FermionLabel, Sign};

    #[test]
    fn gl_single_pair_hwvs_sit_at_the_extremal_monomials() {
        let cfg = FockConfig::charged(1, 6);
        let recs = find_joint_hwvs(GroupKind::Gl, &cfg).unwrap();
        assert_eq!(recs.len(), 5);
        for rec in &recs {
            let m = rec.charges[0];
            assert_eq!(rec.energy2, m * m);
            let extremal = FockVector::from_monomial(extremal_monomial(&cfg, 1, m).unwrap());
            assert!(rec.vector.sub(&extremal).is_zero(), "charge {m}");
            assert_eq!(rec.tau_sign, None);
        }
        let charges: Vec<i64> = recs.iter().map(|r| r.charges[0]).collect();
        assert_eq!(charges, vec![0, -1, 1, -2, 2]);
    }

    #[test]
    fn gl_weight_decode_matches_the_prediction_map() {
        let cfg = FockConfig::charged(1, 6);
        for m in [-2i64, -1, 0, 1, 2] {
            let v = FockVector::from_monomial(extremal_monomial(&cfg, 1, m).unwrap());
            let lam = PartitionA::new(vec![-m]).unwrap();
            assert_eq!(
                decode_weight_a(&v, &cfg).unwrap(),
                weight_map_aa(&lam),
                "charge {m}"
            );
        }
    }

    #[test]
    fn charge_two_labels_decode_to_two_and_one() {
        let cfg = FockConfig::charged(1, 6);
        let v = FockVector::from_monomial(extremal_monomial(&cfg, 1, 2).unwrap());
        let labels = decode_labels(&v, LabelFamily::A, 1, &cfg)
            .unwrap()
            .unwrap_a();
        assert_eq!(labels.delta, vec![rat(2), rat(1)]);
    }

    #[test]
    fn orientation_calibrates_to_minus_one() {
        assert_eq!(reconcile_signs(6).unwrap().epsilon, -1);
        assert_eq!(reconcile_signs(12).unwrap().epsilon, -1);
    }

    #[test]
    fn even_orthogonal_search_splits_the_charge_zero_blocks() {
        let cfg = FockConfig::charged(1, 8);
        let recs = find_joint_hwvs(GroupKind::OEven, &cfg).unwrap();
        assert_eq!(recs.len(), 6);

        let vac = &recs[0];
        assert_eq!((vac.energy2, vac.tau_sign), (0, Some(1)));

        // The unique swap-odd hwv at doubled energy 2.
        let det: Vec<_> = recs.iter().filter(|r| r.energy2 == 2).collect();
        assert_eq!(det.len(), 1);
        assert_eq!(det[0].tau_sign, Some(-1));
        let (expected, sign) = crate::fock::FockMonomial::from_unordered(vec![
            Factor {
                label: FermionLabel::charged(Sign::Minus, 1),
                n2: -1,
            },
            Factor {
                label: FermionLabel::charged(Sign::Plus, 1),
                n2: -1,
            },
        ])
        .unwrap();
        assert_eq!(sign, 1);
        assert!(det[0]
            .vector
            .sub(&FockVector::from_monomial(expected))
            .is_zero());

        // Mirror charge pairs at the squares.
        let at = |e2: i64| -> Vec<i64> {
            recs.iter()
                .filter(|r| r.energy2 == e2)
                .map(|r| r.charges[0])
                .collect()
        };
        assert_eq!(at(1), vec![-1, 1]);
        assert_eq!(at(4), vec![-2, 2]);
    }

    #[test]
    fn even_orthogonal_weight_decodes_match_the_prediction_map() {
        let cfg = FockConfig::charged(1, 8);
        for rec in find_joint_hwvs(GroupKind::OEven, &cfg).unwrap() {
            let lam = match (rec.charges[0], rec.tau_sign) {
                (0, Some(1)) => PartitionD::plain(vec![0]).unwrap(),
                (0, Some(-1)) => PartitionD::det_twist(vec![0]).unwrap(),
                (m, _) => PartitionD::barred(vec![m.abs()]).unwrap(),
            };
            assert_eq!(
                decode_weight_d(&rec.vector, &cfg).unwrap(),
                weight_map_dd(&lam),
                "sector {lam}"
            );
        }
    }

    #[test]
    fn neutral_search_finds_exactly_the_two_parity_vacua() {
        let cfg = FockConfig::neutral(12);
        let recs = find_joint_hwvs(GroupKind::OOne, &cfg).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!((recs[0].energy2, recs[0].neutral_parity), (0, Some(0)));
        assert_eq!((recs[1].energy2, recs[1].neutral_parity), (1, Some(1)));

        let w0 = decode_weight_d(&recs[0].vector, &cfg).unwrap();
        assert_eq!(w0, WeightDinf::new([(0, 1)].into(), ratio(1, 2)));
        let w1 = decode_weight_d(&recs[1].vector, &cfg).unwrap();
        assert_eq!(w1, WeightDinf::new([(1, 1)].into(), ratio(1, 2)));

        // Odd sector: the exponent-1 singleton gives the sinh(x/2) labels.
        let labels = decode_labels(&recs[1].vector, LabelFamily::Dplus, 5, &cfg)
            .unwrap()
            .unwrap_dplus();
        assert_eq!(
            labels.delta_plus,
            [(1, ratio(1, 2)), (3, ratio(1, 8)), (5, ratio(1, 32))].into()
        );
        // Even sector: all labels vanish.
        let even = decode_labels(&recs[0].vector, LabelFamily::Dplus, 5, &cfg)
            .unwrap()
            .unwrap_dplus();
        assert!(even.delta_plus.values().all(|d| d.is_zero()));
    }

    #[test]
    fn non_eigenvectors_are_refused() {
        let cfg = FockConfig::charged(1, 6);
        // Sum of two different charge sectors: not diagonal for E(0,0).
        let mut v = FockVector::vacuum();
        v.add_scaled(
            &Rat::one(),
            &FockVector::from_monomial(extremal_monomial(&cfg, 1, 1).unwrap()),
        );
        let err = eigenvalue_of(&op_e(&cfg, 0, 0).unwrap(), &v).unwrap_err();
        assert!(matches!(err, Error::NotEigenvector(_)));
    }
}
