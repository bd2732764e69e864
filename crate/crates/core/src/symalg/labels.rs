//! Highest-weight labels from exponent-multiplicity data.
//!
//! A weight on the diagonal subalgebra is encoded by its labels: the values
//! `Delta_n` on the powers `D^n` (negated), packaged into the generating
//! function `Delta(x) = sum_n Delta_n x^n / n!`.  Quasifinite weights are
//! exactly those of the form `F(x) / (e^x - 1)` with `F` a quasipolynomial
//! vanishing at 0; for the reflection-fixed subalgebra the denominator is
//! `2 sinh(x/2)` and `F` is even.  An exponent set records `F` through the
//! frequencies and multiplicities of its exponential terms, and this module
//! turns such a set into exact label sequences by truncated Taylor
//! arithmetic over the rationals.

use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, rat, ratio, Rat};

/// Truncated Taylor series over the rationals; `coeffs[n]` multiplies
/// `x^n` and every series carries exactly `order + 1` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorSeries {
    coeffs: Vec<Rat>,
}

impl TaylorSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    /// `e^{a x}` truncated.
    pub fn exp(a: &Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        let mut term = Rat::one();
        for n in 0..=order {
            if n > 0 {
                term = term * a / rat(n as i64);
            }
            s.coeffs[n] = term.clone();
        }
        s
    }

    /// `cosh(a x)` truncated: even part of the exponential.
    pub fn cosh(a: &Rat, order: usize) -> Self {
        let mut s = Self::exp(a, order);
        for n in (1..=order).step_by(2) {
            s.coeffs[n] = Rat::zero();
        }
        s
    }

    /// `sinh(a x)` truncated: odd part of the exponential.
    pub fn sinh(a: &Rat, order: usize) -> Self {
        let mut s = Self::exp(a, order);
        for n in (0..=order).step_by(2) {
            s.coeffs[n] = Rat::zero();
        }
        s
    }

    pub fn add(&self, other: &TaylorSeries) -> TaylorSeries {
        assert_eq!(self.order(), other.order(), "mismatched truncation orders");
        TaylorSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &TaylorSeries) -> TaylorSeries {
        assert_eq!(self.order(), other.order(), "mismatched truncation orders");
        TaylorSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> TaylorSeries {
        TaylorSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &TaylorSeries) -> TaylorSeries {
        assert_eq!(self.order(), other.order(), "mismatched truncation orders");
        let order = self.order();
        let mut out = TaylorSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if !other.coeffs[j].is_zero() {
                    let prod = &self.coeffs[i] * &other.coeffs[j];
                    out.coeffs[i + j] += prod;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Divide two series that both vanish at 0, where the denominator vanishes
/// to exactly first order: the common factor of `x` is cancelled and the
/// remaining unit denominator inverted term by term.  The quotient is one
/// order shorter than the inputs.
pub fn div_factoring_x(num: &TaylorSeries, den: &TaylorSeries) -> Result<TaylorSeries> {
    assert_eq!(num.order(), den.order(), "mismatched truncation orders");
    if !num.coeff(0).is_zero() {
        return Err(Error::MalformedExponentSet(
            "numerator does not vanish at 0".into(),
        ));
    }
    if !den.coeff(0).is_zero() || den.coeff(1).is_zero() {
        return Err(Error::InvalidArgument(
            "denominator must vanish to exactly first order".into(),
        ));
    }
    let order = num.order() - 1;
    let n: Vec<Rat> = (0..=order).map(|i| num.coeff(i + 1)).collect();
    let d: Vec<Rat> = (0..=order).map(|i| den.coeff(i + 1)).collect();
    let mut q = vec![Rat::zero(); order + 1];
    for k in 0..=order {
        let mut acc = n[k].clone();
        for i in 0..k {
            acc -= &q[i] * &d[k - i];
        }
        q[k] = acc / &d[0];
    }
    Ok(TaylorSeries { coeffs: q })
}

/// Which label family an exponent set describes: the full diagonal (`A`)
/// with generating denominator `e^x - 1`, or the reflection-fixed
/// subalgebra (`Dplus`) with denominator `2 sinh(x/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelFamily {
    A,
    Dplus,
}

/// Exponents with integer multiplicities, plus the central charge.
///
/// For family `A` the entries list every exponent including 0, and their
/// total multiplicity must equal the central charge (that is exactly the
/// condition `F(0) = 0`).  For family `Dplus` only nonzero exponents are
/// listed; the implied multiplicity at 0 is absorbed by the central charge
/// and never enters `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    pub family: LabelFamily,
    pub c: Rat,
    entries: BTreeMap<i64, i64>,
}

impl ExponentSet {
    pub fn new_a(entries: BTreeMap<i64, i64>, c: Rat) -> Self {
        let entries = entries.into_iter().filter(|(_, m)| *m != 0).collect();
        Self {
            family: LabelFamily::A,
            c,
            entries,
        }
    }

    pub fn new_dplus(entries: BTreeMap<i64, i64>, c: Rat) -> Self {
        let entries = entries
            .into_iter()
            .filter(|(e, m)| *e != 0 && *m != 0)
            .collect();
        Self {
            family: LabelFamily::Dplus,
            c,
            entries,
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.entries.iter()
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (e, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}: {m}")?;
        }
        write!(f, "}} c={}", fmt_rat(&self.c))
    }
}

/// Labels of a diagonal weight: `delta[n]` is the value on the degree-`n`
/// diagonal generator, for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelsA {
    pub c: Rat,
    pub delta: Vec<Rat>,
}

/// Labels of a reflection-fixed diagonal weight: values over odd `n` only
/// (the even ones vanish identically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelsDplus {
    pub c: Rat,
    pub delta_plus: BTreeMap<i64, Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Labels {
    A(LabelsA),
    Dplus(LabelsDplus),
}

impl Labels {
    pub fn unwrap_a(self) -> LabelsA {
        match self {
            Labels::A(l) => l,
            Labels::Dplus(_) => panic!("expected family-A labels"),
        }
    }

    pub fn unwrap_dplus(self) -> LabelsDplus {
        match self {
            Labels::Dplus(l) => l,
            Labels::A(_) => panic!("expected reflection-family labels"),
        }
    }

    /// The label values rendered one per entry as `n: value`, in
    /// increasing `n`.
    pub fn entry_strings(&self) -> Vec<String> {
        match self {
            Labels::A(a) => a
                .delta
                .iter()
                .enumerate()
                .map(|(n, d)| format!("{n}: {}", fmt_rat(d)))
                .collect(),
            Labels::Dplus(d) => d
                .delta_plus
                .iter()
                .map(|(n, v)| format!("{n}: {}", fmt_rat(v)))
                .collect(),
        }
    }
}

/// Compute labels up to index `n_max` from an exponent set, exactly.
///
/// `epsilon` (`+1` or `-1`) is the global orientation applied to the
/// exponents; it is calibrated once against explicitly decoded weights
/// (see the duality module) and recorded in reports.  The reflection
/// family is insensitive to it since its generating function is even.
pub fn labels_from_exponents(e: &ExponentSet, n_max: usize, epsilon: i64) -> Result<Labels> {
    assert!(epsilon == 1 || epsilon == -1, "orientation must be ±1");
    let order = n_max + 1;
    let mut factorial = Rat::one();
    match e.family {
        LabelFamily::A => {
            // F(x) = sum_s n_s e^{eps s x} - c, which must vanish at 0.
            let mut f = TaylorSeries::constant(-e.c.clone(), order);
            let mut total_mult = Rat::zero();
            for (s, m) in e.entries() {
                f = f.add(&TaylorSeries::exp(&rat(epsilon * s), order).scale(&rat(*m)));
                total_mult += rat(*m);
            }
            if total_mult != e.c {
                return Err(Error::MalformedExponentSet(format!(
                    "multiplicities sum to {total_mult} but the central charge is {}",
                    e.c
                )));
            }
            let den = TaylorSeries::exp(&Rat::one(), order)
                .sub(&TaylorSeries::constant(Rat::one(), order));
            let quotient = div_factoring_x(&f, &den)?;
            let mut delta = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                if n > 0 {
                    factorial *= rat(n as i64);
                }
                delta.push(quotient.coeff(n) * &factorial);
            }
            Ok(Labels::A(LabelsA {
                c: e.c.clone(),
                delta,
            }))
        }
        LabelFamily::Dplus => {
            // F(x) = sum_e n_e (cosh(e x) - 1): even, vanishing at 0 by
            // construction; the zero-exponent multiplicity never appears.
            let mut f = TaylorSeries::zero(order);
            let one = TaylorSeries::constant(Rat::one(), order);
            for (s, m) in e.entries() {
                let termwise = TaylorSeries::cosh(&rat(epsilon * s), order).sub(&one);
                f = f.add(&termwise.scale(&rat(*m)));
            }
            let den = TaylorSeries::sinh(&ratio(1, 2), order).scale(&rat(2));
            let quotient = div_factoring_x(&f, &den)?;
            let mut delta_plus = BTreeMap::new();
            for n in 0..=n_max {
                if n > 0 {
                    factorial *= rat(n as i64);
                }
                if n % 2 == 1 {
                    delta_plus.insert(n as i64, quotient.coeff(n) * &factorial);
                } else {
                    debug_assert!(
                        quotient.coeff(n).is_zero(),
                        "even labels of an even/odd quotient must vanish"
                    );
                }
            }
            Ok(Labels::Dplus(LabelsDplus {
                c: e.c.clone(),
                delta_plus,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set_a(pairs: &[(i64, i64)], c: i64) -> ExponentSet {
        ExponentSet::new_a(pairs.iter().copied().collect(), rat(c))
    }

    fn set_d(pairs: &[(i64, i64)], c: i64) -> ExponentSet {
        ExponentSet::new_dplus(pairs.iter().copied().collect(), rat(c))
    }

    #[test]
    fn series_arithmetic() {
        let e = TaylorSeries::exp(&rat(1), 8);
        let e_inv = TaylorSeries::exp(&rat(-1), 8);
        assert_eq!(e.mul(&e_inv), TaylorSeries::constant(rat(1), 8));
        // cosh^2 - sinh^2 = 1.
        let c = TaylorSeries::cosh(&rat(3), 8);
        let s = TaylorSeries::sinh(&rat(3), 8);
        assert_eq!(
            c.mul(&c).sub(&s.mul(&s)),
            TaylorSeries::constant(rat(1), 8)
        );
    }

    #[test]
    fn division_reconstructs_numerator() {
        let order = 9;
        let num = TaylorSeries::exp(&rat(2), order)
            .sub(&TaylorSeries::constant(rat(1), order));
        let den = TaylorSeries::exp(&rat(1), order)
            .sub(&TaylorSeries::constant(rat(1), order));
        let q = div_factoring_x(&num, &den).unwrap();
        // (e^{2x} - 1)/(e^x - 1) = e^x + 1.
        let expect = TaylorSeries::exp(&rat(1), order - 1)
            .add(&TaylorSeries::constant(rat(1), order - 1));
        assert_eq!(q, expect);
    }

    #[test]
    fn vacuum_labels_vanish() {
        // All exponents zero: F = 0 identically.
        let labels = labels_from_exponents(&set_a(&[(0, 3)], 3), 6, 1)
            .unwrap()
            .unwrap_a();
        assert!(labels.delta.iter().all(|d| d.is_zero()));
        let labels = labels_from_exponents(&set_d(&[], 1), 7, 1)
            .unwrap()
            .unwrap_dplus();
        assert!(labels.delta_plus.values().all(|d| d.is_zero()));
    }

    #[test]
    fn single_charge_two_exponent() {
        // (e^{2x} - 1)/(e^x - 1) = e^x + 1: first label 2, the rest 1.
        let labels = labels_from_exponents(&set_a(&[(2, 1)], 1), 6, 1)
            .unwrap()
            .unwrap_a();
        assert_eq!(labels.delta[0], rat(2));
        for n in 1..=6 {
            assert_eq!(labels.delta[n], rat(1), "n = {n}");
        }
    }

    #[test]
    fn orientation_negates_exponents() {
        // epsilon = -1 on the set {s} equals epsilon = +1 on {-s}.
        let with_eps = labels_from_exponents(&set_a(&[(2, 1), (-1, 2)], 3), 6, -1)
            .unwrap()
            .unwrap_a();
        let negated = labels_from_exponents(&set_a(&[(-2, 1), (1, 2)], 3), 6, 1)
            .unwrap()
            .unwrap_a();
        assert_eq!(with_eps, negated);
    }

    #[test]
    fn reflection_family_det_sector() {
        // Exponent 1 with multiplicity 2: F = 2(cosh x - 1) = 4 sinh^2(x/2),
        // so the quotient is 2 sinh(x/2) and the labels are 2 (1/2)^n.
        let labels = labels_from_exponents(&set_d(&[(1, 2)], 1), 7, 1)
            .unwrap()
            .unwrap_dplus();
        let expect: BTreeMap<i64, Rat> = [
            (1, rat(1)),
            (3, ratio(1, 4)),
            (5, ratio(1, 16)),
            (7, ratio(1, 64)),
        ]
        .into_iter()
        .collect();
        assert_eq!(labels.delta_plus, expect);
    }

    #[test]
    fn reflection_family_exponent_two() {
        // F = cosh 2x - 1: the quotient telescopes to
        // sinh(x/2) + sinh(3x/2), labels (1/2)^n + (3/2)^n.
        let labels = labels_from_exponents(&set_d(&[(2, 1)], 1), 5, 1)
            .unwrap()
            .unwrap_dplus();
        let expect: BTreeMap<i64, Rat> = [
            (1, rat(2)),
            (3, ratio(28, 8)),
            (5, ratio(244, 32)),
        ]
        .into_iter()
        .collect();
        assert_eq!(labels.delta_plus, expect);
        // Insensitive to the orientation: cosh is even.
        let flipped = labels_from_exponents(&set_d(&[(2, 1)], 1), 5, -1)
            .unwrap()
            .unwrap_dplus();
        assert_eq!(flipped.delta_plus, labels.delta_plus);
    }

    #[test]
    fn mismatched_multiplicity_is_malformed() {
        let err = labels_from_exponents(&set_a(&[(2, 1)], 2), 4, 1);
        assert!(matches!(err, Err(Error::MalformedExponentSet(_))));
    }
}
