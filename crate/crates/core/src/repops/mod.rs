//! Fourier-mode operators on the truncated Fock space.
//!
//! All operators are built from normally ordered fermion bilinears
//! `c * a b` (annihilators to the right of creators, one sign per
//! transposition), applied right factor first.  On top of the bilinears sit
//! sums, compositions, and commutators.
//!
//! Truncation discipline: a bilinear term whose annihilator mode lies beyond
//! the energy cap kills every representable state, so it is dropped at
//! construction — that is exact.  A term whose creators would push a state
//! past the cap is kept and raises a window error when applied; nothing is
//! ever silently truncated.  `safe_input_energy2` computes, per operator,
//! the largest input energy for which application provably cannot overflow,
//! so relation checks can pick their test states up front.
//!
//! The concrete families:
//!
//! * `op_e(i,j)` — matrix-unit bilinears `sum_p :psi^(+,p)_(1/2-i) psi^(-,p)_(j-1/2):`,
//! * `op_dinf(i,j)` — the antisymmetrized combination `op_e(i,j) - op_e(1-j,1-i)`
//!   (on the neutral space, its `:phi phi:` realization),
//! * `op_j(n,k)`, `op_w(n,k)` — modes of the derivative fields,
//! * `op_horizontal(kind,p,q)` — the zero modes whose span commutes with the
//!   whole `op_j` (resp. `op_w`) family,
//! * `realize_diffop` — the image of a symbolic `t^k f(D)` operator under the
//!   column-wise embedding into matrix units, materialized on the window.

use num::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{rat, ratio, Rat, SparseMat, SparseVec};
use crate::fock::{apply_mode, FermionLabel, FockConfig, FockMonomial, FockVector, Sign};
use crate::symalg::glinf::GlInfElement;
use crate::symalg::{glinf, DiffOp, Poly, SigmaFamily};

pub mod suites;

/// One normally ordered bilinear term `coeff * first second`; the right
/// factor (`second`) is applied first.
#[derive(Debug, Clone)]
struct QuadTerm {
    coeff: Rat,
    first: (FermionLabel, i64),
    second: (FermionLabel, i64),
}

impl QuadTerm {
    /// Doubled energy gained by applying the term (negative for lowering).
    fn gain2(&self) -> i64 {
        -(self.first.1 + self.second.1)
    }

    fn charge_shift(&self, pairs: u8) -> Vec<i64> {
        let mut shift = vec![0i64; pairs as usize];
        for (label, _) in [self.first, self.second] {
            if let FermionLabel::Charged { sign, pair } = label {
                shift[(pair - 1) as usize] += if sign == Sign::Minus { 1 } else { -1 };
            }
        }
        shift
    }
}

#[derive(Debug, Clone)]
enum OpKind {
    /// Sum of bilinear terms plus a scalar multiple of the identity.
    Quadratic { terms: Vec<QuadTerm>, scalar: Rat },
    Sum(Vec<(Rat, ModeOperator)>),
    /// `a ∘ b`: apply `b` first.
    Compose(Box<ModeOperator>, Box<ModeOperator>),
    /// `a b − b a`.
    Commutator(Box<ModeOperator>, Box<ModeOperator>),
}

/// An exact linear operator on the truncated Fock space.
#[derive(Debug, Clone)]
pub struct ModeOperator {
    name: String,
    config: FockConfig,
    /// Doubled energy decrease of a homogeneous operator; `None` when the
    /// operator mixes degrees.
    degree: Option<i64>,
    /// Explicit input-energy cap (set by `commutator`); applications above
    /// it are refused even when they might succeed.
    cap2: Option<i64>,
    kind: OpKind,
}

/// Push `coeff * :a b:` onto `terms`, normal ordering and window filtering.
///
/// Normal ordering moves an annihilator standing left of a creator to the
/// right at the cost of a sign.  A term whose annihilator mode exceeds the
/// window cap is dropped: no representable state contains its partner, so
/// the term is identically zero here.  A repeated factor is the square of a
/// fermion and is dropped for the same reason.
fn push_bilinear(
    terms: &mut Vec<QuadTerm>,
    cfg: &FockConfig,
    coeff: Rat,
    a: (FermionLabel, i64),
    b: (FermionLabel, i64),
) {
    if coeff.is_zero() {
        return;
    }
    let (coeff, first, second) = if a.1 > 0 && b.1 < 0 {
        (-coeff, b, a)
    } else {
        (coeff, a, b)
    };
    if first == second {
        return;
    }
    for (_, n2) in [first, second] {
        if n2 > cfg.emax2 {
            return;
        }
    }
    terms.push(QuadTerm {
        coeff,
        first,
        second,
    });
}

fn quadratic(
    name: String,
    cfg: &FockConfig,
    degree: Option<i64>,
    terms: Vec<QuadTerm>,
    scalar: Rat,
) -> ModeOperator {
    if let Some(d) = degree {
        debug_assert!(
            terms.iter().all(|t| t.gain2() == -2 * d),
            "terms of {name} disagree with degree {d}"
        );
        debug_assert!(d == 0 || scalar.is_zero(), "scalar part must be degree 0");
    }
    debug_assert!(
        terms
            .windows(2)
            .all(|w| w[0].charge_shift(cfg.pairs) == w[1].charge_shift(cfg.pairs)),
        "terms of {name} disagree on charge shift"
    );
    ModeOperator {
        name,
        config: *cfg,
        degree,
        cap2: None,
        kind: OpKind::Quadratic { terms, scalar },
    }
}

impl ModeOperator {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn config(&self) -> &FockConfig {
        &self.config
    }

    /// Doubled-energy decrease under application, when homogeneous.
    pub fn principal_degree(&self) -> Option<i64> {
        self.degree
    }

    /// Per-pair charge shift of the image (uniform across terms).
    pub fn charge_shift(&self) -> Vec<i64> {
        match &self.kind {
            OpKind::Quadratic { terms, .. } => terms
                .first()
                .map(|t| t.charge_shift(self.config.pairs))
                .unwrap_or_else(|| vec![0; self.config.pairs as usize]),
            OpKind::Sum(parts) => parts
                .first()
                .map(|(_, p)| p.charge_shift())
                .unwrap_or_else(|| vec![0; self.config.pairs as usize]),
            OpKind::Compose(a, b) | OpKind::Commutator(a, b) => a
                .charge_shift()
                .iter()
                .zip(b.charge_shift())
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    /// True when the operator annihilates the whole window by construction.
    pub fn is_zero_here(&self) -> bool {
        match &self.kind {
            OpKind::Quadratic { terms, scalar } => terms.is_empty() && scalar.is_zero(),
            OpKind::Sum(parts) => parts.iter().all(|(c, p)| c.is_zero() || p.is_zero_here()),
            OpKind::Compose(a, b) => a.is_zero_here() || b.is_zero_here(),
            OpKind::Commutator(_, _) => false,
        }
    }

    /// Largest doubled energy any output term can exceed its input by.
    fn max_gain2(&self) -> i64 {
        match &self.kind {
            OpKind::Quadratic { terms, scalar } => {
                let g = terms.iter().map(|t| t.gain2()).max();
                match (g, scalar.is_zero()) {
                    (Some(g), false) => g.max(0),
                    (Some(g), true) => g,
                    (None, _) => 0,
                }
            }
            OpKind::Sum(parts) => parts.iter().map(|(_, p)| p.max_gain2()).max().unwrap_or(0),
            OpKind::Compose(a, b) | OpKind::Commutator(a, b) => a.max_gain2() + b.max_gain2(),
        }
    }

    /// Largest input energy (doubled) for which application provably stays
    /// inside the window.  May be negative when the operator cannot act at
    /// all; inputs at or below the bound never raise an overflow.
    pub fn safe_input_energy2(&self) -> i64 {
        let structural = match &self.kind {
            OpKind::Quadratic { terms, .. } => terms
                .iter()
                .map(|t| self.config.emax2 - t.gain2().max(0))
                .min()
                .unwrap_or(self.config.emax2),
            OpKind::Sum(parts) => parts
                .iter()
                .map(|(_, p)| p.safe_input_energy2())
                .min()
                .unwrap_or(self.config.emax2),
            OpKind::Compose(a, b) => b
                .safe_input_energy2()
                .min(a.safe_input_energy2() - b.max_gain2()),
            OpKind::Commutator(a, b) => {
                let ab = b
                    .safe_input_energy2()
                    .min(a.safe_input_energy2() - b.max_gain2());
                let ba = a
                    .safe_input_energy2()
                    .min(b.safe_input_energy2() - a.max_gain2());
                ab.min(ba)
            }
        };
        match self.cap2 {
            Some(c) => structural.min(c),
            None => structural,
        }
    }

    /// Apply to a vector.  Exact: any truncation hazard is an error.
    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if let (Some(cap), Some(e2)) = (self.cap2, v.max_energy2()) {
            if e2 > cap {
                return Err(Error::WindowOverflow {
                    needed2: e2,
                    emax2: cap,
                });
            }
        }
        match &self.kind {
            OpKind::Quadratic { terms, scalar } => {
                let mut out = FockVector::zero();
                if !scalar.is_zero() {
                    out.add_scaled(scalar, v);
                }
                for t in terms {
                    let mid = apply_mode(&self.config, t.second.0, t.second.1, v)?;
                    if mid.is_zero() {
                        continue;
                    }
                    let fin = apply_mode(&self.config, t.first.0, t.first.1, &mid)?;
                    out.add_scaled(&t.coeff, &fin);
                }
                Ok(out)
            }
            OpKind::Sum(parts) => {
                let mut out = FockVector::zero();
                for (c, p) in parts {
                    if c.is_zero() {
                        continue;
                    }
                    out.add_scaled(c, &p.apply(v)?);
                }
                Ok(out)
            }
            OpKind::Compose(a, b) => a.apply(&b.apply(v)?),
            OpKind::Commutator(a, b) => {
                let ab = a.apply(&b.apply(v)?)?;
                let ba = b.apply(&a.apply(v)?)?;
                Ok(ab.sub(&ba))
            }
        }
    }

    pub fn apply_monomial(&self, m: &FockMonomial) -> Result<FockVector> {
        self.apply(&FockVector::from_monomial(m.clone()))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// The identity scaled by `c`.
pub fn scaled_identity(cfg: &FockConfig, c: Rat) -> ModeOperator {
    quadratic(format!("{}*id", c), cfg, Some(0), Vec::new(), c)
}

/// Linear combination of operators over one configuration.
pub fn sum(name: impl Into<String>, parts: Vec<(Rat, ModeOperator)>) -> ModeOperator {
    let cfg = parts
        .first()
        .map(|(_, p)| p.config)
        .expect("sum needs at least one part");
    debug_assert!(parts.iter().all(|(_, p)| p.config == cfg));
    let degree = {
        let ds: Vec<Option<i64>> = parts.iter().map(|(_, p)| p.degree).collect();
        match ds.split_first() {
            Some((d0, rest)) if rest.iter().all(|d| d == d0) => *d0,
            _ => None,
        }
    };
    ModeOperator {
        name: name.into(),
        config: cfg,
        degree,
        cap2: None,
        kind: OpKind::Sum(parts),
    }
}

/// `a ∘ b` (apply `b` first).
pub fn compose(a: ModeOperator, b: ModeOperator) -> ModeOperator {
    debug_assert_eq!(a.config, b.config);
    ModeOperator {
        name: format!("{}*{}", a.name, b.name),
        config: a.config,
        degree: a.degree.zip(b.degree).map(|(x, y)| x + y),
        cap2: None,
        kind: OpKind::Compose(Box::new(a), Box::new(b)),
    }
}

/// `a b − b a`, capped at the computed safe input energy.
pub fn bracket(a: ModeOperator, b: ModeOperator) -> ModeOperator {
    debug_assert_eq!(a.config, b.config);
    let mut op = ModeOperator {
        name: format!("[{},{}]", a.name, b.name),
        config: a.config,
        degree: a.degree.zip(b.degree).map(|(x, y)| x + y),
        cap2: None,
        kind: OpKind::Commutator(Box::new(a), Box::new(b)),
    };
    op.cap2 = Some(op.safe_input_energy2());
    op
}

/// `a b − b a` restricted to inputs of doubled energy at most
/// `safe_energy2`.  Errors when the requested bound is not actually safe —
/// the refusal happens here rather than as a wrong answer later.
pub fn commutator(a: ModeOperator, b: ModeOperator, safe_energy2: i64) -> Result<ModeOperator> {
    let op = bracket(a, b);
    let computed = op.safe_input_energy2();
    if safe_energy2 > computed {
        return Err(Error::WindowOverflow {
            needed2: safe_energy2,
            emax2: computed,
        });
    }
    Ok(ModeOperator {
        cap2: Some(safe_energy2),
        ..op
    })
}

/// Inclusive range of row/column indices `i` whose fermion modes
/// (`(1-2i)/2` and `(2i-1)/2`) are representable in the window.
pub fn index_window(cfg: &FockConfig) -> (i64, i64) {
    let hi = (cfg.emax2 + 1).div_euclid(2);
    (1 - hi, hi)
}

fn check_index(cfg: &FockConfig, idx: i64) -> Result<()> {
    let (lo, hi) = index_window(cfg);
    if idx < lo || idx > hi {
        return Err(Error::WindowOverflow {
            needed2: (2 * idx - 1).abs(),
            emax2: cfg.emax2,
        });
    }
    Ok(())
}

/// The matrix-unit bilinear: `sum_p :psi^(+,p)_(1/2-i) psi^(-,p)_(j-1/2):`,
/// of principal degree `j - i`.
pub fn op_e(cfg: &FockConfig, i: i64, j: i64) -> Result<ModeOperator> {
    check_index(cfg, i)?;
    check_index(cfg, j)?;
    let mut terms = Vec::new();
    for p in 1..=cfg.pairs {
        push_bilinear(
            &mut terms,
            cfg,
            Rat::one(),
            (FermionLabel::charged(Sign::Plus, p), 1 - 2 * i),
            (FermionLabel::charged(Sign::Minus, p), 2 * j - 1),
        );
    }
    Ok(quadratic(
        format!("E({i},{j})"),
        cfg,
        Some(j - i),
        terms,
        Rat::zero(),
    ))
}

/// The antisymmetrized bilinear of principal degree `j - i`.
///
/// On a charged space this is `op_e(i,j) - op_e(1-j,1-i)`.  On the neutral
/// space the same Lie algebra element acts as `:phi_(1/2-i) phi_(j-1/2):`,
/// with half the central charge per the pairing `a |-> a - a^T`-style
/// antisymmetry (see `realize_gl_matrix`).
pub fn op_dinf(cfg: &FockConfig, i: i64, j: i64) -> Result<ModeOperator> {
    check_index(cfg, i)?;
    check_index(cfg, j)?;
    let mut terms = Vec::new();
    if cfg.pairs > 0 {
        for p in 1..=cfg.pairs {
            push_bilinear(
                &mut terms,
                cfg,
                Rat::one(),
                (FermionLabel::charged(Sign::Plus, p), 1 - 2 * i),
                (FermionLabel::charged(Sign::Minus, p), 2 * j - 1),
            );
            // minus op_e(1-j, 1-i): modes (1-2(1-j), 2(1-i)-1) = (2j-1, 1-2i)
            push_bilinear(
                &mut terms,
                cfg,
                -Rat::one(),
                (FermionLabel::charged(Sign::Plus, p), 2 * j - 1),
                (FermionLabel::charged(Sign::Minus, p), 1 - 2 * i),
            );
        }
    } else {
        push_bilinear(
            &mut terms,
            cfg,
            Rat::one(),
            (FermionLabel::Neutral, 1 - 2 * i),
            (FermionLabel::Neutral, 2 * j - 1),
        );
    }
    Ok(quadratic(
        format!("Ed({i},{j})"),
        cfg,
        Some(j - i),
        terms,
        Rat::zero(),
    ))
}

/// Mode `k` of the `n`-th derivative charge field: principal degree `k`,
/// coefficient `[-j]_n` on `:psi^(-,p)_(j-1/2) psi^(+,p)_(k-j+1/2):`.
pub fn op_j(cfg: &FockConfig, n: usize, k: i64) -> ModeOperator {
    assert!(cfg.pairs >= 1, "op_j needs charged pairs");
    let fal = Poly::falling_factorial(n);
    let h = (cfg.emax2 + 1).div_euclid(2);
    let mut terms = Vec::new();
    for p in 1..=cfg.pairs {
        for j in (k - h - 1)..=(h + 1) {
            push_bilinear(
                &mut terms,
                cfg,
                fal.eval_int(-j),
                (FermionLabel::charged(Sign::Minus, p), 2 * j - 1),
                (FermionLabel::charged(Sign::Plus, p), 2 * (k - j) + 1),
            );
        }
    }
    quadratic(format!("J^{n}_{k}"), cfg, Some(k), terms, Rat::zero())
}

/// Mode `k` of the symmetrized `n`-th derivative field (`n` odd): principal
/// degree `k`.  Charged: half the sum over both factor orders; neutral:
/// `(1/2) sum :phi_m phi_(k-m):` weighted by `[-m-1/2]_n` — the half is what
/// makes the degree-1 family close as a Virasoro algebra with the central
/// term `(m^3-m)/12 * 1/2`, since the self-conjugate fermion pairs each
/// unordered mode pair twice.
pub fn op_w(cfg: &FockConfig, n: usize, k: i64) -> ModeOperator {
    assert!(n % 2 == 1, "op_w mode family is indexed by odd n");
    let fal = Poly::falling_factorial(n);
    let half = ratio(1, 2);
    let mut terms = Vec::new();
    let mut m2 = 2 * k - cfg.emax2 - 1;
    if m2 % 2 == 0 {
        m2 -= 1;
    }
    while m2 <= cfg.emax2 + 1 {
        let mp2 = 2 * k - m2;
        let coeff = fal.eval(&ratio(-(m2 + 1), 2));
        if cfg.pairs > 0 {
            for p in 1..=cfg.pairs {
                push_bilinear(
                    &mut terms,
                    cfg,
                    &half * &coeff,
                    (FermionLabel::charged(Sign::Minus, p), m2),
                    (FermionLabel::charged(Sign::Plus, p), mp2),
                );
                push_bilinear(
                    &mut terms,
                    cfg,
                    &half * &coeff,
                    (FermionLabel::charged(Sign::Plus, p), m2),
                    (FermionLabel::charged(Sign::Minus, p), mp2),
                );
            }
        } else {
            push_bilinear(
                &mut terms,
                cfg,
                &half * &coeff,
                (FermionLabel::Neutral, m2),
                (FermionLabel::Neutral, mp2),
            );
        }
        m2 += 2;
    }
    quadratic(format!("W^{n}_{k}"), cfg, Some(k), terms, Rat::zero())
}

/// Which species pair a horizontal zero mode is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HorizontalKind {
    /// `sum_m :psi^(+,p)_m psi^(-,q)_(-m):` — transfers one unit of charge
    /// from pair `p` to pair `q`; the `p = q` diagonal is minus the charge.
    PlusMinus,
    /// `sum_m :psi^(-,p)_m psi^(-,q)_(-m):` — raises both charges.
    MinusMinus,
    /// `sum_m :psi^(+,p)_m psi^(+,q)_(-m):` — lowers both charges.
    PlusPlus,
}

/// A horizontal zero mode (principal degree 0).
pub fn op_horizontal(cfg: &FockConfig, kind: HorizontalKind, p: u8, q: u8) -> ModeOperator {
    assert!(
        p >= 1 && p <= cfg.pairs && q >= 1 && q <= cfg.pairs,
        "pairs out of range"
    );
    let (sa, sb, tag) = match kind {
        HorizontalKind::PlusMinus => (Sign::Plus, Sign::Minus, "+-"),
        HorizontalKind::MinusMinus => (Sign::Minus, Sign::Minus, "--"),
        HorizontalKind::PlusPlus => (Sign::Plus, Sign::Plus, "++"),
    };
    let mut terms = Vec::new();
    let mut m2 = -cfg.emax2 - 1;
    if m2 % 2 == 0 {
        m2 -= 1;
    }
    while m2 <= cfg.emax2 + 1 {
        push_bilinear(
            &mut terms,
            cfg,
            Rat::one(),
            (FermionLabel::charged(sa, p), m2),
            (FermionLabel::charged(sb, q), -m2),
        );
        m2 += 2;
    }
    quadratic(format!("h{tag}({p},{q})"), cfg, Some(0), terms, Rat::zero())
}

/// Materialize a (finitely supported) infinite matrix on the window.
///
/// Charged spaces: entry `a_(i,j)` contributes `a_(i,j) * op_e(i,j)`-terms
/// and the central part acts as `l` times the scalar.  The neutral space
/// only carries the antisymmetric matrices `a_(i,j) = -a_(1-j,1-i)`; each
/// entry contributes `a_(i,j)/2 * :phi_(1/2-i) phi_(j-1/2):` and the central
/// part acts as `1/2` — the factor-2 mismatch between the two conventions is
/// exactly the halving of the pairing.  A non-antisymmetric matrix has no
/// neutral realization and is refused.
pub fn realize_gl_matrix(cfg: &FockConfig, a: &GlInfElement) -> Result<ModeOperator> {
    let mut terms = Vec::new();
    let mut degrees: Vec<i64> = Vec::new();
    if cfg.pairs == 0 {
        for (&(i, j), c) in a.entries() {
            if a.entry(1 - j, 1 - i) != -c.clone() {
                return Err(Error::NotInSubalgebra(format!(
                    "entry ({i},{j}) breaks the antisymmetry needed on the neutral space"
                )));
            }
            degrees.push(j - i);
            push_bilinear(
                &mut terms,
                cfg,
                c / rat(2),
                (FermionLabel::Neutral, 1 - 2 * i),
                (FermionLabel::Neutral, 2 * j - 1),
            );
        }
    } else {
        for (&(i, j), c) in a.entries() {
            degrees.push(j - i);
            for p in 1..=cfg.pairs {
                push_bilinear(
                    &mut terms,
                    cfg,
                    c.clone(),
                    (FermionLabel::charged(Sign::Plus, p), 1 - 2 * i),
                    (FermionLabel::charged(Sign::Minus, p), 2 * j - 1),
                );
            }
        }
    }
    degrees.sort_unstable();
    degrees.dedup();
    let degree = match degrees.as_slice() {
        [] | [_] => degrees.first().copied().or(Some(0)),
        _ => None,
    };
    let level = if cfg.pairs == 0 {
        ratio(1, 2)
    } else {
        rat(cfg.pairs as i64)
    };
    let scalar = a.central() * level;
    let degree = if !scalar.is_zero() && degree != Some(0) {
        if terms.is_empty() {
            Some(0)
        } else {
            None
        }
    } else {
        degree
    };
    Ok(ModeOperator {
        name: "glmat".into(),
        config: *cfg,
        degree,
        cap2: None,
        kind: OpKind::Quadratic { terms, scalar },
    })
}

/// Realize a symbolic `t^k f(D)` operator on the window through the
/// column-wise embedding `t^k f(D) |-> sum_j f(-j) E_(j-k,j)`, central part
/// included at the configuration's level.
///
/// On the neutral space the image must land in the antisymmetric matrices;
/// that holds exactly for the odd family checked by `in_subalgebra`, and
/// anything else is refused.
pub fn realize_diffop(cfg: &FockConfig, x: &DiffOp) -> Result<ModeOperator> {
    if cfg.pairs == 0 && !glinf_ready_for_neutral(x) {
        return Err(Error::NotInSubalgebra(format!(
            "{x} has no action on the neutral space"
        )));
    }
    let h = (cfg.emax2 + 1).div_euclid(2);
    let mut mat = GlInfElement::zero();
    mat.set_central(x.central().clone());
    for k in x.degrees() {
        // Each degree pairs entry (j-k, j) with (1+k-j, 1-j+k) under
        // transposition about the antidiagonal, so the column window must be
        // closed under j <-> 1+k-j; otherwise a window edge would cut one
        // half of an antisymmetric pair and the neutral check would reject
        // an operator that is perfectly fine.
        let jhi = h + k.abs() + 1;
        let jlo = 1 + k - jhi;
        mat = mat.add(&glinf::phi(&DiffOp::from_term(k, x.term(k)), jlo, jhi));
    }
    let op = realize_gl_matrix(cfg, &mat)?;
    Ok(op.with_name(format!("phi[{x}]")))
}

fn glinf_ready_for_neutral(x: &DiffOp) -> bool {
    crate::symalg::in_subalgebra(x, SigmaFamily::Plus, &rat(-1))
}

/// The matrix of `op` from `domain` to `codomain` (rows indexed by the
/// codomain).  Errors when a resulting monomial lies outside the codomain.
pub fn operator_block(
    op: &ModeOperator,
    domain: &[FockMonomial],
    codomain: &[FockMonomial],
) -> Result<SparseMat> {
    let index: BTreeMap<&FockMonomial, usize> =
        codomain.iter().enumerate().map(|(r, m)| (m, r)).collect();
    let mut rows = vec![SparseVec::new(); codomain.len()];
    for (c, m) in domain.iter().enumerate() {
        let image = op.apply_monomial(m)?;
        for (out, coeff) in image.terms() {
            match index.get(out) {
                Some(&r) => rows[r].add_to(c, coeff),
                None => {
                    return Err(Error::DimensionMismatch(format!(
                        "{} maps {} to {} outside the codomain",
                        op.name(),
                        m,
                        out
                    )))
                }
            }
        }
    }
    SparseMat::from_rows(domain.len(), rows)
}
