//! Truncated fermionic Fock spaces with exact signs.
//!
//! The space carries `l` charged fermion pairs `psi^(+,p)_n`, `psi^(-,p)_n`
//! and optionally one neutral fermion `phi_n`, all with half-odd mode indices
//! `n` (stored doubled, so `n2 = 2n` is an odd integer).  The vacuum is
//! annihilated by every positive mode; negative modes create.
//!
//! States are exact rational combinations of monomials
//! `a_1 a_2 ... a_k |0>` whose factors are kept in a fixed canonical order:
//! by pair, then species (`-` before `+`, neutral last), then mode
//! descending.  All signs come from counting the actual transpositions, so
//! the canonical anticommutation relations hold on the nose.
//!
//! Energy is graded by `-n` per factor and stored doubled.  The space is
//! truncated at a doubled energy cap; any operation that would create a
//! state beyond the cap reports an overflow error instead of silently
//! dropping terms.

use num::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, Rat};

/// Charge sign of a charged fermion species (`-` sorts before `+`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

/// Which fermion a mode belongs to: a charged species of some pair, or the
/// neutral fermion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FermionLabel {
    Charged { sign: Sign, pair: u8 },
    Neutral,
}

impl FermionLabel {
    pub fn charged(sign: Sign, pair: u8) -> Self {
        FermionLabel::Charged { sign, pair }
    }

    /// The label whose opposite mode pairs with this one in the
    /// anticommutation relations.
    pub fn conjugate(self) -> Self {
        match self {
            FermionLabel::Charged { sign, pair } => FermionLabel::Charged {
                sign: sign.flip(),
                pair,
            },
            FermionLabel::Neutral => FermionLabel::Neutral,
        }
    }
}

/// One creation factor inside a monomial: a label plus a doubled mode index
/// (odd, negative for the factors that can appear in a state).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub label: FermionLabel,
    pub n2: i64,
}

impl Factor {
    fn sort_key(&self) -> (u8, u8, u8, i64) {
        match self.label {
            FermionLabel::Charged { sign, pair } => (0, pair, sign as u8, -self.n2),
            FermionLabel::Neutral => (1, 0, 0, -self.n2),
        }
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            FermionLabel::Charged { sign, pair } => {
                let s = if sign == Sign::Minus { '-' } else { '+' };
                write!(f, "psi({s},{pair},{}/2)", self.n2)
            }
            FermionLabel::Neutral => write!(f, "phi({}/2)", self.n2),
        }
    }
}

/// Shape of a truncated Fock space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockConfig {
    /// Number of charged pairs `l` (each contributes two species).
    pub pairs: u8,
    /// Whether the neutral fermion is present.
    pub neutral: bool,
    /// Doubled energy cap; states above it are unrepresentable.
    pub emax2: i64,
}

impl FockConfig {
    pub fn charged(pairs: u8, emax2: i64) -> Self {
        assert!(pairs >= 1, "a charged space needs at least one pair");
        Self {
            pairs,
            neutral: false,
            emax2,
        }
    }

    pub fn neutral(emax2: i64) -> Self {
        Self {
            pairs: 0,
            neutral: true,
            emax2,
        }
    }

    fn check_label(&self, label: FermionLabel) -> Result<()> {
        match label {
            FermionLabel::Charged { pair, .. } => {
                if pair == 0 || pair > self.pairs {
                    return Err(Error::InvalidArgument(format!(
                        "pair {pair} outside 1..={}",
                        self.pairs
                    )));
                }
            }
            FermionLabel::Neutral => {
                if !self.neutral {
                    return Err(Error::InvalidArgument(
                        "no neutral fermion in this configuration".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// All species in canonical factor order.
    pub fn species(&self) -> Vec<FermionLabel> {
        let mut out = Vec::new();
        for p in 1..=self.pairs {
            out.push(FermionLabel::charged(Sign::Minus, p));
            out.push(FermionLabel::charged(Sign::Plus, p));
        }
        if self.neutral {
            out.push(FermionLabel::Neutral);
        }
        out
    }
}

/// A basis monomial: canonically ordered distinct creation factors applied
/// to the vacuum.  The empty monomial is the vacuum itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FockMonomial {
    factors: Vec<Factor>,
}

impl FockMonomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Doubled energy: the sum of `-n2` over the factors.
    pub fn energy2(&self) -> i64 {
        self.factors.iter().map(|f| -f.n2).sum()
    }

    /// Charge of one pair: number of `psi^-` factors minus `psi^+` factors.
    pub fn charge(&self, pair: u8) -> i64 {
        let mut c = 0;
        for f in &self.factors {
            if let FermionLabel::Charged { sign, pair: p } = f.label {
                if p == pair {
                    c += if sign == Sign::Minus { 1 } else { -1 };
                }
            }
        }
        c
    }

    pub fn charge_vec(&self, pairs: u8) -> Vec<i64> {
        (1..=pairs).map(|p| self.charge(p)).collect()
    }

    /// Number of neutral factors modulo 2.
    pub fn neutral_parity(&self) -> u8 {
        (self
            .factors
            .iter()
            .filter(|f| f.label == FermionLabel::Neutral)
            .count()
            % 2) as u8
    }

    /// Total number of factors modulo 2.
    pub fn factor_parity(&self) -> u8 {
        (self.factors.len() % 2) as u8
    }

    /// Sort arbitrary factors into canonical order, tracking the sign of the
    /// permutation; `None` if a factor repeats (the square of a fermion).
    pub fn from_unordered(mut factors: Vec<Factor>) -> Option<(Self, i8)> {
        let mut sign = 1i8;
        // Insertion sort, counting transpositions exactly.
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 {
                match factors[j - 1].cmp(&factors[j]) {
                    Ordering::Greater => {
                        factors.swap(j - 1, j);
                        sign = -sign;
                        j -= 1;
                    }
                    Ordering::Equal => return None,
                    Ordering::Less => break,
                }
            }
        }
        Some((Self { factors }, sign))
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "vac");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Exact rational combination of basis monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<FockMonomial, Rat>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::from_monomial(FockMonomial::vacuum())
    }

    pub fn from_monomial(m: FockMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rat::from_integer(1.into()));
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &FockMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: FockMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Rat, other: &FockVector) {
        for (m, v) in other.terms.iter() {
            self.add_term(m.clone(), c * v);
        }
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(&-Rat::from_integer(1.into()), other);
        out
    }

    /// The doubled energies present, ascending.
    pub fn energies2(&self) -> Vec<i64> {
        let mut es: Vec<i64> = self.terms.keys().map(|m| m.energy2()).collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// Largest doubled energy present (`None` when zero).
    pub fn max_energy2(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.energy2()).max()
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            if !first {
                writeln!(f)?;
            }
            write!(f, "{m} : {}", fmt_rat(c))?;
            first = false;
        }
        Ok(())
    }
}

/// Apply one fermion mode to a monomial.
///
/// Negative `n2` creates (errors when the result would exceed the energy
/// window); positive `n2` contracts against the conjugate partner.  Returns
/// `None` when the result vanishes (Pauli exclusion or missing partner).
pub fn apply_mode_monomial(
    cfg: &FockConfig,
    label: FermionLabel,
    n2: i64,
    m: &FockMonomial,
) -> Result<Option<(FockMonomial, i8)>> {
    cfg.check_label(label)?;
    assert!(n2 % 2 != 0, "mode index must be half-odd (doubled odd)");
    if n2 < 0 {
        let f = Factor { label, n2 };
        match m.factors.binary_search(&f) {
            Ok(_) => Ok(None), // Pauli exclusion, before any window concern
            Err(pos) => {
                let needed2 = m.energy2() - n2;
                if needed2 > cfg.emax2 {
                    return Err(Error::WindowOverflow {
                        needed2,
                        emax2: cfg.emax2,
                    });
                }
                let mut factors = m.factors.clone();
                factors.insert(pos, f);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Ok(Some((FockMonomial { factors }, sign)))
            }
        }
    } else {
        let partner = Factor {
            label: label.conjugate(),
            n2: -n2,
        };
        match m.factors.binary_search(&partner) {
            Ok(pos) => {
                let mut factors = m.factors.clone();
                factors.remove(pos);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Ok(Some((FockMonomial { factors }, sign)))
            }
            Err(_) => Ok(None),
        }
    }
}

/// Apply one fermion mode to a vector, exactly.
pub fn apply_mode(
    cfg: &FockConfig,
    label: FermionLabel,
    n2: i64,
    v: &FockVector,
) -> Result<FockVector> {
    let mut out = FockVector::zero();
    for (m, c) in v.terms() {
        if let Some((m2, sign)) = apply_mode_monomial(cfg, label, n2, m)? {
            out.add_term(m2, c * Rat::from_integer(sign.into()));
        }
    }
    Ok(out)
}

/// The involution exchanging `psi^(+,p)` and `psi^(-,p)` on one pair,
/// re-sorting factors with exact transposition signs.
pub fn tau(cfg: &FockConfig, pair: u8, v: &FockVector) -> Result<FockVector> {
    cfg.check_label(FermionLabel::charged(Sign::Minus, pair))?;
    let mut out = FockVector::zero();
    for (m, c) in v.terms() {
        let factors: Vec<Factor> = m
            .factors
            .iter()
            .map(|f| match f.label {
                FermionLabel::Charged { sign, pair: p } if p == pair => Factor {
                    label: FermionLabel::charged(sign.flip(), p),
                    n2: f.n2,
                },
                _ => *f,
            })
            .collect();
        let (sorted, sign) =
            FockMonomial::from_unordered(factors).expect("tau maps distinct factors to distinct");
        out.add_term(sorted, c * Rat::from_integer(sign.into()));
    }
    Ok(out)
}

/// Enumerate the distinct subsets of odd positive doubled energies with sum
/// at most `max2`; each subset is returned with its sum, energies ascending
/// (which is mode index descending, the canonical factor order).
fn distinct_odd_subsets(max2: i64) -> Vec<(i64, Vec<i64>)> {
    let mut out = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    fn rec(min_part: i64, left: i64, current: &mut Vec<i64>, out: &mut Vec<(i64, Vec<i64>)>) {
        let used: i64 = current.iter().sum();
        out.push((used, current.clone()));
        let mut part = min_part;
        while part <= left {
            current.push(part);
            rec(part + 2, left - part, current, out);
            current.pop();
            part += 2;
        }
    }
    rec(1, max2, &mut current, &mut out);
    out.sort();
    out
}

/// Enumerate the canonical basis monomials of a graded piece.
///
/// `charges` (when given) fixes the charge of every pair, `neutral_parity`
/// (when given) fixes the parity of the neutral factor count, and `energy2`
/// fixes the doubled energy.  The result is sorted in monomial order and is
/// deterministic.
pub fn basis(
    cfg: &FockConfig,
    charges: Option<&[i64]>,
    neutral_parity: Option<u8>,
    energy2: i64,
) -> Vec<FockMonomial> {
    if let Some(cs) = charges {
        assert_eq!(cs.len(), cfg.pairs as usize, "one charge per pair");
    }
    if energy2 < 0 || energy2 > cfg.emax2 {
        return Vec::new();
    }
    let species = cfg.species();
    let subsets = distinct_odd_subsets(energy2);
    let mut result = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();

    // Depth-first over species; `chosen` indexes into `subsets`.
    fn rec(
        cfg: &FockConfig,
        species: &[FermionLabel],
        subsets: &[(i64, Vec<i64>)],
        charges: Option<&[i64]>,
        neutral_parity: Option<u8>,
        energy_left: i64,
        idx: usize,
        chosen: &mut Vec<usize>,
        result: &mut Vec<FockMonomial>,
    ) {
        if idx == species.len() {
            if energy_left != 0 {
                return;
            }
            let mut factors = Vec::new();
            for (s, &sel) in species.iter().zip(chosen.iter()) {
                for &e2 in &subsets[sel].1 {
                    factors.push(Factor {
                        label: *s,
                        n2: -e2,
                    });
                }
            }
            // Species are listed in canonical order and modes descend within
            // each species, so the factors are already canonical.
            result.push(FockMonomial { factors });
            return;
        }
        let label = species[idx];
        for (sel, (sum2, modes)) in subsets.iter().enumerate() {
            if *sum2 > energy_left {
                break; // subsets are sorted by sum
            }
            // Charge pruning: the minus species of a pair is enumerated right
            // before the plus species, so once the plus count is chosen the
            // pair's charge is determined.
            if let FermionLabel::Charged { sign, pair } = label {
                if let Some(cs) = charges {
                    let want = cs[(pair - 1) as usize];
                    match sign {
                        Sign::Minus => {
                            // Plus count later must equal minus_count - want >= 0.
                            let minus_count = modes.len() as i64;
                            if minus_count - want < 0 {
                                continue;
                            }
                        }
                        Sign::Plus => {
                            let minus_sel = chosen[idx - 1];
                            let minus_count = subsets[minus_sel].1.len() as i64;
                            if minus_count - modes.len() as i64 != want {
                                continue;
                            }
                        }
                    }
                }
            }
            if label == FermionLabel::Neutral {
                if let Some(par) = neutral_parity {
                    if (modes.len() % 2) as u8 != par {
                        continue;
                    }
                }
            }
            chosen.push(sel);
            rec(
                cfg,
                species,
                subsets,
                charges,
                neutral_parity,
                energy_left - sum2,
                idx + 1,
                chosen,
                result,
            );
            chosen.pop();
        }
    }

    rec(
        cfg,
        &species,
        &subsets,
        charges,
        neutral_parity,
        energy2,
        0,
        &mut chosen,
        &mut result,
    );
    result.sort();
    result
}

/// Dimension of a graded piece.
pub fn graded_dim(
    cfg: &FockConfig,
    charges: Option<&[i64]>,
    neutral_parity: Option<u8>,
    energy2: i64,
) -> usize {
    basis(cfg, charges, neutral_parity, energy2).len()
}

/// Convenience: the extremal charge-`m` monomial of minimal energy on pair
/// `p` (for `m > 0` a stack of `psi^-` modes, for `m < 0` of `psi^+`).
pub fn extremal_monomial(cfg: &FockConfig, pair: u8, m: i64) -> Result<FockMonomial> {
    cfg.check_label(FermionLabel::charged(Sign::Minus, pair))?;
    let sign = if m >= 0 { Sign::Minus } else { Sign::Plus };
    let count = m.unsigned_abs() as i64;
    let mut factors = Vec::new();
    for t in 0..count {
        factors.push(Factor {
            label: FermionLabel::charged(sign, pair),
            n2: -(2 * t + 1),
        });
    }
    let mono = FockMonomial { factors };
    if mono.energy2() > cfg.emax2 {
        return Err(Error::WindowOverflow {
            needed2: mono.energy2(),
            emax2: cfg.emax2,
        });
    }
    Ok(mono)
}
