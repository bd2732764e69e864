//! Relation suites: batch verification of the algebra identities the mode
//! operators must satisfy, with explicit witnesses on failure.
//!
//! Every suite enumerates a finite family of operator identities, applies
//! both sides to every basis state inside the safe energy bound, and
//! compares exactly.  An empty failure list is a pass; a failure records
//! the identity, the witness monomial, and both coefficients, so a
//! conventions bug points straight at itself.  Suites parallelize over
//! instances; reports keep the enumeration order, so serialized output is
//! deterministic.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exact::{fmt_rat, rat, ratio};
use crate::fock::{apply_mode, basis, Factor, FockConfig, FockVector};
use crate::repops::{
    bracket, compose, index_window, op_dinf, op_e, op_horizontal, op_j, op_w, realize_diffop,
    realize_gl_matrix, scaled_identity, sum, HorizontalKind, ModeOperator,
};
use crate::symalg::glinf::{self, cocycle_c, GlInfElement};
use crate::symalg::DiffOp;

/// One verified-false identity: which instance, where, and both values.
#[derive(Debug, Clone, Serialize)]
pub struct RelationFailure {
    pub instance: String,
    pub witness_monomial: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub schema: u32,
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub instances: u64,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    fn new(
        suite: &str,
        params: BTreeMap<String, String>,
        instances: u64,
        failures: Vec<RelationFailure>,
    ) -> Self {
        RelationReport {
            schema: 1,
            suite: suite.to_string(),
            params,
            instances,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn params_of(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Homogeneous probe states up to `cap2`, tagged with their energy so
/// instances can trim to their own safe bound without re-enumerating.
fn state_pool(cfg: &FockConfig, cap2: i64) -> Vec<(i64, FockVector)> {
    let mut pool = Vec::new();
    let top = cap2.min(cfg.emax2);
    for e2 in 0..=top.max(-1) {
        for m in basis(cfg, None, None, e2) {
            pool.push((e2, FockVector::from_monomial(m)));
        }
    }
    pool
}

/// Probe energy used by the suites; each instance additionally trims to
/// its own computed safe bound.
fn probe_cap(_cfg: &FockConfig) -> i64 {
    8
}

fn state_display(v: &FockVector) -> String {
    match v.terms().next() {
        Some((m, _)) => m.to_string(),
        None => "0".to_string(),
    }
}

fn mismatch(
    instance: &str,
    input: &FockVector,
    lhs: &FockVector,
    rhs: &FockVector,
) -> Option<RelationFailure> {
    let diff = lhs.sub(rhs);
    let (m, _) = diff.terms().next()?;
    Some(RelationFailure {
        instance: instance.to_string(),
        witness_monomial: format!("{} (input {})", m, state_display(input)),
        lhs: fmt_rat(&lhs.coeff(m)),
        rhs: fmt_rat(&rhs.coeff(m)),
    })
}

fn apply_failure(instance: &str, input: &FockVector, side: &str, err: &str) -> RelationFailure {
    RelationFailure {
        instance: instance.to_string(),
        witness_monomial: format!("application error (input {})", state_display(input)),
        lhs: format!("{side}: {err}"),
        rhs: "exact application".to_string(),
    }
}

/// Apply both operators to every pool state within `cap2` and both safe
/// bounds; the first discrepancy (or application error) is the failure.
fn check_ops_equal(
    instance: &str,
    lhs: &ModeOperator,
    rhs: &ModeOperator,
    pool: &[(i64, FockVector)],
    cap2: i64,
) -> Option<RelationFailure> {
    let cap = cap2
        .min(lhs.safe_input_energy2())
        .min(rhs.safe_input_energy2());
    for (e2, v) in pool {
        if *e2 > cap {
            continue;
        }
        let lv = match lhs.apply(v) {
            Ok(x) => x,
            Err(e) => return Some(apply_failure(instance, v, "lhs", &e.to_string())),
        };
        let rv = match rhs.apply(v) {
            Ok(x) => x,
            Err(e) => return Some(apply_failure(instance, v, "rhs", &e.to_string())),
        };
        if let Some(f) = mismatch(instance, v, &lv, &rv) {
            return Some(f);
        }
    }
    None
}

fn binom(n: i64, k: i64) -> i64 {
    let mut out = 1i64;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Canonical anticommutation relations: `{psi^{+,p}_m, psi^{-,q}_n} =
/// delta_pq delta_{m,-n}` and all other pairs anticommute, plus the
/// self-conjugate `{phi_m, phi_n} = delta_{m,-n}` on the neutral space.
pub fn suite_anticommutators(l: u8, emax2: i64) -> RelationReport {
    // Mode indices are doubled half-odd integers, so the sweep bound must
    // stay odd even when the window is smaller than the usual cap.
    let mode_lim = match emax2.min(5) {
        m if m % 2 == 0 => (m - 1).max(1),
        m => m,
    };
    let mut instances = Vec::new();
    for cfg in [FockConfig::charged(l, emax2), FockConfig::neutral(emax2)] {
        let species = cfg.species();
        for la in &species {
            for lb in &species {
                let mut na = -mode_lim;
                while na <= mode_lim {
                    let mut nb = -mode_lim;
                    while nb <= mode_lim {
                        instances.push((cfg, *la, na, *lb, nb));
                        nb += 2;
                    }
                    na += 2;
                }
            }
        }
    }
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|(cfg, la, na, lb, nb)| {
            let delta = if *lb == la.conjugate() && *nb == -*na {
                rat(1)
            } else {
                rat(0)
            };
            let fa = Factor { label: *la, n2: *na };
            let fb = Factor { label: *lb, n2: *nb };
            let instance = format!("{{{fa}, {fb}}} = {}*id", fmt_rat(&delta));
            let anti = |v: &FockVector| -> Result<FockVector> {
                let mut ab = apply_mode(cfg, *la, *na, &apply_mode(cfg, *lb, *nb, v)?)?;
                let ba = apply_mode(cfg, *lb, *nb, &apply_mode(cfg, *la, *na, v)?)?;
                ab.add_scaled(&rat(1), &ba);
                Ok(ab)
            };
            // Probing below this bound keeps every intermediate inside the
            // window, so no application can overflow.
            let cap = cfg.emax2 - na.abs() - nb.abs();
            for (e2, v) in state_pool(cfg, cap.min(8)) {
                let _ = e2;
                let lv = match anti(&v) {
                    Ok(x) => x,
                    Err(e) => return Some(apply_failure(&instance, &v, "lhs", &e.to_string())),
                };
                let mut rv = v.clone();
                rv.scale(&delta);
                if let Some(f) = mismatch(&instance, &v, &lv, &rv) {
                    return Some(f);
                }
            }
            None
        })
        .collect();
    RelationReport::new(
        "anticommutators",
        params_of(&[
            ("l", l.to_string()),
            ("emax2", emax2.to_string()),
            ("mode_bound2", mode_lim.to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// Bracket-with-cocycle relations of the matrix-unit modes:
/// `[E(a,b), E(c,d)] = delta_bc E(a,d) - delta_da E(c,b) + C(E_ab,E_cd)*l*id`.
pub fn suite_glinf(l: u8, emax2: i64) -> RelationReport {
    let cfg = FockConfig::charged(l, emax2);
    let (wlo, whi) = index_window(&cfg);
    let lo = wlo.max(-3);
    let hi = whi.min(3);
    let mut instances = Vec::new();
    for a in lo..=hi {
        for b in lo..=hi {
            for c in lo..=hi {
                for d in lo..=hi {
                    instances.push((a, b, c, d));
                }
            }
        }
    }
    let pool = state_pool(&cfg, 8);
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|&(a, b, c, d)| {
            let lhs = bracket(op_e(&cfg, a, b).ok()?, op_e(&cfg, c, d).ok()?);
            let cc = cocycle_c(&GlInfElement::e_mat(a, b), &GlInfElement::e_mat(c, d));
            let mut parts = vec![(&cc * rat(l as i64), scaled_identity(&cfg, rat(1)))];
            if b == c {
                parts.push((rat(1), op_e(&cfg, a, d).ok()?));
            }
            if d == a {
                parts.push((rat(-1), op_e(&cfg, c, b).ok()?));
            }
            let rhs = sum(format!("rhs[E({a},{b}),E({c},{d})]"), parts);
            let instance = format!(
                "[E({a},{b}),E({c},{d})] = d_bc E({a},{d}) - d_da E({c},{b}) + {}*id",
                fmt_rat(&(&cc * rat(l as i64)))
            );
            check_ops_equal(&instance, &lhs, &rhs, &pool, 8)
        })
        .collect();
    RelationReport::new(
        "glinf-bracket-cocycle",
        params_of(&[
            ("l", l.to_string()),
            ("emax2", emax2.to_string()),
            ("index_bound", "3".to_string()),
            ("probe_energy2", "8".to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// Heisenberg relations of the charge-field modes:
/// `[J^0_m, J^0_n] = m delta_{m,-n} l id`.
pub fn suite_heisenberg(l: u8, emax2: i64) -> RelationReport {
    let cfg = FockConfig::charged(l, emax2);
    let pool = state_pool(&cfg, probe_cap(&cfg));
    let mut instances = Vec::new();
    for m in -3..=3i64 {
        for n in -3..=3i64 {
            instances.push((m, n));
        }
    }
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|&(m, n)| {
            let lhs = bracket(op_j(&cfg, 0, m), op_j(&cfg, 0, n));
            let central = if m == -n { rat(m * l as i64) } else { rat(0) };
            let rhs = scaled_identity(&cfg, central.clone());
            let instance = format!("[J^0_{m}, J^0_{n}] = {}*id", fmt_rat(&central));
            check_ops_equal(&instance, &lhs, &rhs, &pool, probe_cap(&cfg))
        })
        .collect();
    RelationReport::new(
        "heisenberg",
        params_of(&[
            ("l", l.to_string()),
            ("emax2", emax2.to_string()),
            ("mode_bound", "3".to_string()),
            ("probe_energy2", probe_cap(&cfg).to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// Virasoro relations of the degree-one charge-field modes:
/// `[J^1_m, J^1_n] = (m-n) J^1_{m+n} - delta_{m,-n} (m^3-m)/6 * l id`.
pub fn suite_virasoro_j(l: u8, emax2: i64) -> RelationReport {
    let cfg = FockConfig::charged(l, emax2);
    let pool = state_pool(&cfg, probe_cap(&cfg));
    let mut instances = Vec::new();
    for m in -3..=3i64 {
        for n in -3..=3i64 {
            instances.push((m, n));
        }
    }
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|&(m, n)| {
            let lhs = bracket(op_j(&cfg, 1, m), op_j(&cfg, 1, n));
            let central = if m == -n {
                ratio(-(m * m * m - m) * l as i64, 6)
            } else {
                rat(0)
            };
            let rhs = sum(
                format!("rhs[J^1_{m},J^1_{n}]"),
                vec![
                    (rat(m - n), op_j(&cfg, 1, m + n)),
                    (central.clone(), scaled_identity(&cfg, rat(1))),
                ],
            );
            let instance = format!(
                "[J^1_{m}, J^1_{n}] = {}*J^1_{} + {}*id",
                m - n,
                m + n,
                fmt_rat(&central)
            );
            check_ops_equal(&instance, &lhs, &rhs, &pool, probe_cap(&cfg))
        })
        .collect();
    RelationReport::new(
        "virasoro-j",
        params_of(&[
            ("l", l.to_string()),
            ("emax2", emax2.to_string()),
            ("mode_bound", "3".to_string()),
            ("central_term", "-(m^3-m)/6 * l".to_string()),
            ("probe_energy2", probe_cap(&cfg).to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// Virasoro relations of the symmetrized degree-one modes on both spaces:
/// `[W^1_m, W^1_n] = (m-n) W^1_{m+n} + delta_{m,-n} (m^3-m)/12 * c id` with
/// `c = l` on the charged space and `c = 1/2` on the neutral space.
pub fn suite_virasoro_w(l: u8, emax2: i64) -> RelationReport {
    let mut instances = Vec::new();
    for cfg in [FockConfig::charged(l, emax2), FockConfig::neutral(emax2)] {
        for m in -3..=3i64 {
            for n in -3..=3i64 {
                instances.push((cfg, m, n));
            }
        }
    }
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|(cfg, m, n)| {
            let (m, n) = (*m, *n);
            let c = if cfg.pairs > 0 {
                rat(cfg.pairs as i64)
            } else {
                ratio(1, 2)
            };
            let pool = state_pool(cfg, probe_cap(cfg));
            let lhs = bracket(op_w(cfg, 1, m), op_w(cfg, 1, n));
            let central = if m == -n {
                ratio(m * m * m - m, 12) * &c
            } else {
                rat(0)
            };
            let rhs = sum(
                format!("rhs[W^1_{m},W^1_{n}]"),
                vec![
                    (rat(m - n), op_w(cfg, 1, m + n)),
                    (central.clone(), scaled_identity(cfg, rat(1))),
                ],
            );
            let instance = format!(
                "[W^1_{m}, W^1_{n}] = {}*W^1_{} + {}*id (c = {})",
                m - n,
                m + n,
                fmt_rat(&central),
                fmt_rat(&c)
            );
            check_ops_equal(&instance, &lhs, &rhs, &pool, probe_cap(cfg))
        })
        .collect();
    RelationReport::new(
        "virasoro-w",
        params_of(&[
            ("l", l.to_string()),
            ("emax2", emax2.to_string()),
            ("mode_bound", "3".to_string()),
            ("central_term", "+(m^3-m)/12 * c, c = l resp 1/2".to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// Bracket relations of the antisymmetric-pair modes on both spaces,
/// checked against the matrix-level oracle: `[Ed(a,b), Ed(c,d)]` must equal
/// the realization of the matrix bracket, whose central slot carries the
/// boundary cocycle (acting as `l` resp `1/2`).
pub fn suite_dinf(l: u8, emax2: i64) -> RelationReport {
    let mut instances = Vec::new();
    for cfg in [FockConfig::charged(l, emax2), FockConfig::neutral(emax2)] {
        let (wlo, whi) = index_window(&cfg);
        let lo = wlo.max(-2);
        let hi = whi.min(2);
        for a in lo..=hi {
            for b in lo..=hi {
                for c in lo..=hi {
                    for d in lo..=hi {
                        instances.push((cfg, a, b, c, d));
                    }
                }
            }
        }
    }
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|(cfg, a, b, c, d)| {
            let (a, b, c, d) = (*a, *b, *c, *d);
            let pool = state_pool(cfg, probe_cap(cfg));
            let lhs = bracket(op_dinf(cfg, a, b).ok()?, op_dinf(cfg, c, d).ok()?);
            let amat = GlInfElement::e_mat(a, b).sub(&GlInfElement::e_mat(1 - b, 1 - a));
            let bmat = GlInfElement::e_mat(c, d).sub(&GlInfElement::e_mat(1 - d, 1 - c));
            let instance = format!("[Ed({a},{b}),Ed({c},{d})] = realized matrix bracket");
            let rhs = match realize_gl_matrix(cfg, &amat.bracket(&bmat)) {
                Ok(o) => o,
                Err(e) => {
                    return Some(RelationFailure {
                        instance,
                        witness_monomial: "oracle construction".to_string(),
                        lhs: e.to_string(),
                        rhs: "realizable bracket".to_string(),
                    })
                }
            };
            check_ops_equal(&instance, &lhs, &rhs, &pool, probe_cap(cfg))
        })
        .collect();
    RelationReport::new(
        "dinf-bracket",
        params_of(&[
            ("l", l.to_string()),
            ("emax2", emax2.to_string()),
            ("index_bound", "2".to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// The direct mode constructions agree with the symbolic realization:
/// `op_J(n,k)` matches `phi` of `-t^k [D]_n` and `op_W(n,k)` matches `phi`
/// of `-t^k([D]_n - [-D-k-1]_n)/2`, on the charged and neutral spaces.
pub fn suite_phi_consistency(l: u8, emax2: i64) -> RelationReport {
    let charged = FockConfig::charged(l, emax2);
    let neutral = FockConfig::neutral(emax2);
    let mut instances = Vec::new();
    for k in -3..=3i64 {
        for n in 0..=3usize {
            instances.push((charged, "J", n, k));
        }
        for n in [1usize, 3] {
            instances.push((charged, "W", n, k));
            instances.push((neutral, "W", n, k));
        }
    }
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|(cfg, fam, n, k)| {
            let (n, k) = (*n, *k);
            let pool = state_pool(cfg, probe_cap(cfg));
            let (lhs, x) = match *fam {
                "J" => (op_j(cfg, n, k), DiffOp::j_op(n, k)),
                _ => (op_w(cfg, n, k), DiffOp::w_op(n, k)),
            };
            let space = if cfg.pairs > 0 { "charged" } else { "neutral" };
            let instance = format!("{fam}^{n}_{k} = phi[{x}] on the {space} space");
            let rhs = match realize_diffop(cfg, &x) {
                Ok(o) => o,
                Err(e) => {
                    return Some(RelationFailure {
                        instance,
                        witness_monomial: "realization".to_string(),
                        lhs: e.to_string(),
                        rhs: "realizable".to_string(),
                    })
                }
            };
            check_ops_equal(&instance, &lhs, &rhs, &pool, probe_cap(cfg))
        })
        .collect();
    RelationReport::new(
        "phi-consistency",
        params_of(&[
            ("l", l.to_string()),
            ("emax2", emax2.to_string()),
            ("derivative_bound", "3".to_string()),
            ("mode_bound", "3".to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// The two 2-cocycles agree where they must: the degree-pairing form on
/// differential-operator symbols equals the boundary form on their windowed
/// matrix images, over the `J`-basis pairs that pair nontrivially.
pub fn suite_cocycle_compat() -> RelationReport {
    let mut instances = Vec::new();
    for r in 0..=4usize {
        for s in 0..=4usize {
            for k in -4..=4i64 {
                instances.push((r, s, k));
            }
        }
    }
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|&(r, s, k)| {
            let a = DiffOp::j_op(r, k);
            let b = DiffOp::j_op(s, -k);
            let instance = format!("Psi(J^{r}_{k}, J^{s}_{}) = C(phi a, phi b)", -k);
            match glinf::cocycle_compat(&a, &b, -10, 10) {
                Ok((lhs, rhs)) => {
                    if lhs == rhs {
                        None
                    } else {
                        Some(RelationFailure {
                            instance,
                            witness_monomial: "central pairing".to_string(),
                            lhs: fmt_rat(&lhs),
                            rhs: fmt_rat(&rhs),
                        })
                    }
                }
                Err(e) => Some(RelationFailure {
                    instance,
                    witness_monomial: "window".to_string(),
                    lhs: e.to_string(),
                    rhs: "sufficient window".to_string(),
                }),
            }
        })
        .collect();
    RelationReport::new(
        "cocycle-compatibility",
        params_of(&[
            ("derivative_bound", "4".to_string()),
            ("mode_bound", "4".to_string()),
            ("window", "[-10,10]".to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// Which field family a locality check quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalFamily {
    J,
    W,
}

/// The mode form of field locality: with `N = m + n + 2`,
/// `sum_{k=0}^{N} (-1)^k binom(N,k) [X^m_{a+N-k}, X^n_{b+k}] = 0`
/// for all `|a| <= amax`, `|b| <= bmax`, `X` the chosen family.
pub fn locality_check(
    family: LocalFamily,
    m: usize,
    n: usize,
    amax: i64,
    bmax: i64,
    cfg: &FockConfig,
) -> RelationReport {
    let nn = (m + n + 2) as i64;
    let mut instances = Vec::new();
    for a in -amax..=amax {
        for b in -bmax..=bmax {
            instances.push((a, b));
        }
    }
    let fam = match family {
        LocalFamily::J => "J",
        LocalFamily::W => "W",
    };
    let pool = state_pool(cfg, probe_cap(cfg));
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|&(a, b)| {
            let make = |deriv: usize, idx: i64| match family {
                LocalFamily::J => op_j(cfg, deriv, idx),
                LocalFamily::W => op_w(cfg, deriv, idx),
            };
            let mut parts = Vec::new();
            for k in 0..=nn {
                let coeff = rat(if k % 2 == 0 { 1 } else { -1 } * binom(nn, k));
                parts.push((coeff, bracket(make(m, a + nn - k), make(n, b + k))));
            }
            let lhs = sum(format!("locality[{fam};{m},{n};{a},{b}]"), parts);
            let rhs = scaled_identity(cfg, rat(0));
            let instance = format!(
                "sum_k (-1)^k binom({nn},k) [{fam}^{m}_({a}+{nn}-k), {fam}^{n}_({b}+k)] = 0"
            );
            check_ops_equal(&instance, &lhs, &rhs, &pool, probe_cap(cfg))
        })
        .collect();
    RelationReport::new(
        "locality",
        params_of(&[
            ("family", fam.to_string()),
            ("m", m.to_string()),
            ("n", n.to_string()),
            ("amax", amax.to_string()),
            ("bmax", bmax.to_string()),
            ("l", cfg.pairs.to_string()),
            ("neutral", cfg.neutral.to_string()),
            ("emax2", cfg.emax2.to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// All locality identities at the standard desk scale: `J` with
/// `m, n <= 2` on the charged space, `W` with `m, n` odd `<= 3` on the
/// charged and neutral spaces, `|a|, |b| <= 2`.
pub fn suite_locality(l: u8, emax2: i64) -> RelationReport {
    let charged = FockConfig::charged(l, emax2);
    let neutral = FockConfig::neutral(emax2);
    let mut runs = Vec::new();
    for m in 0..=2usize {
        for n in 0..=2usize {
            runs.push((LocalFamily::J, m, n, charged));
        }
    }
    for m in [1usize, 3] {
        for n in [1usize, 3] {
            runs.push((LocalFamily::W, m, n, charged));
            runs.push((LocalFamily::W, m, n, neutral));
        }
    }
    let reports: Vec<RelationReport> = runs
        .into_iter()
        .map(|(fam, m, n, cfg)| locality_check(fam, m, n, 2, 2, &cfg))
        .collect();
    let instances = reports.iter().map(|r| r.instances).sum();
    let failures = reports.into_iter().flat_map(|r| r.failures).collect();
    RelationReport::new(
        "locality",
        params_of(&[
            ("l", l.to_string()),
            ("emax2", emax2.to_string()),
            ("j_orders", "m,n <= 2".to_string()),
            ("w_orders", "m,n in {1,3}".to_string()),
            ("mode_shift_bound", "2".to_string()),
        ]),
        instances,
        failures,
    )
}

/// The quadratic relation between the first two field families on one
/// charged pair: `J^1_k = (1/2)(-(k+1) J^0_k + sum_{i+j=k} :J^0_i J^0_j:)`,
/// where the normal ordering applies the larger mode index first and the
/// sum runs over ordered pairs.
pub fn j1_from_j0_check(cfg: &FockConfig, safe_energy2: i64) -> RelationReport {
    assert_eq!(cfg.pairs, 1, "the quadratic relation is stated on one pair");
    let pool = state_pool(cfg, safe_energy2);
    let instances: Vec<i64> = (-3..=3).collect();
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|&k| {
            let lhs = op_j(cfg, 1, k);
            let mut parts = vec![(ratio(-(k + 1), 2), op_j(cfg, 0, k))];
            for i in -(cfg.emax2 + 1)..=(cfg.emax2 + 1) {
                let j = k - i;
                let (lo, hi) = (i.min(j), i.max(j));
                let first = op_j(cfg, 0, hi);
                let second = op_j(cfg, 0, lo);
                if first.is_zero_here() || second.is_zero_here() {
                    continue;
                }
                // Larger index applied first: the composition runs
                // right-to-left, so the high mode is the inner operator.
                parts.push((ratio(1, 2), compose(second, first)));
            }
            let rhs = sum(format!("j0-square[{k}]"), parts);
            let instance =
                format!("J^1_{k} = (1/2)(-({}) J^0_{k} + sum_(i+j={k}) :J^0_i J^0_j:)", k + 1);
            check_ops_equal(&instance, &lhs, &rhs, &pool, safe_energy2)
        })
        .collect();
    RelationReport::new(
        "j1-from-j0",
        params_of(&[
            ("l", "1".to_string()),
            ("emax2", cfg.emax2.to_string()),
            ("safe_energy2", safe_energy2.to_string()),
            (
                "mode_formula",
                "J^1_k = (1/2)(-(k+1) J^0_k + sum_{i+j=k} :J^0_i J^0_j:)".to_string(),
            ),
            (
                "normal_order",
                "larger mode index applied first; ordered pairs".to_string(),
            ),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// The horizontal zero modes commute with the dual algebra's fields: the
/// `psi^+ psi^-` pairing modes with every `J^n_k` (the general-linear side)
/// and all three pairing kinds with every `W^n_k` (the orthogonal side).
pub fn suite_horizontal_commute(l: u8, emax2: i64) -> RelationReport {
    let cfg = FockConfig::charged(l, emax2);
    let pool = state_pool(&cfg, probe_cap(&cfg));
    let mut instances = Vec::new();
    for p in 1..=l {
        for q in 1..=l {
            for k in -2..=2i64 {
                for n in 0..=1usize {
                    instances.push((HorizontalKind::PlusMinus, p, q, "J", n, k));
                }
                for n in [1usize, 3] {
                    instances.push((HorizontalKind::PlusMinus, p, q, "W", n, k));
                    if p < q {
                        instances.push((HorizontalKind::MinusMinus, p, q, "W", n, k));
                        instances.push((HorizontalKind::PlusPlus, p, q, "W", n, k));
                    }
                }
            }
        }
    }
    let failures: Vec<RelationFailure> = instances
        .par_iter()
        .filter_map(|(kind, p, q, fam, n, k)| {
            let h = op_horizontal(&cfg, *kind, *p, *q);
            let x = match *fam {
                "J" => op_j(&cfg, *n, *k),
                _ => op_w(&cfg, *n, *k),
            };
            let instance = format!("[{}, {}^{n}_{k}] = 0", h.name(), fam);
            let lhs = bracket(h, x);
            let rhs = scaled_identity(&cfg, rat(0));
            check_ops_equal(&instance, &lhs, &rhs, &pool, probe_cap(&cfg))
        })
        .collect();
    RelationReport::new(
        "horizontal-commutant",
        params_of(&[
            ("l", l.to_string()),
            ("emax2", emax2.to_string()),
            ("mode_bound", "2".to_string()),
        ]),
        instances.len() as u64,
        failures,
    )
}

/// Run every relation suite at the given size.  The order is fixed so
/// serialized output is stable.
pub fn relation_suites(l: u8, emax2: i64) -> Vec<RelationReport> {
    vec![
        suite_anticommutators(l, emax2),
        suite_glinf(l, emax2),
        suite_heisenberg(l, emax2),
        suite_virasoro_j(l, emax2),
        suite_virasoro_w(l, emax2),
        suite_dinf(l, emax2),
        suite_phi_consistency(l, emax2),
        suite_cocycle_compat(),
        suite_locality(l, emax2),
        j1_from_j0_check(&FockConfig::charged(1, emax2), 8),
        suite_horizontal_commute(l, emax2),
    ]
}
