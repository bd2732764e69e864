//! Group-side bookkeeping for the dual-pair decompositions.
//!
//! The truncated Fock space carries two commuting actions: a finite group
//! (`GL_l`, `O_{2l}`, or the order-two `O_1`) through its horizontal zero
//! modes, and an infinite-rank diagonal algebra through the window
//! operators.  This module owns the *group* side of that picture: the
//! partitions labelling the finite-dimensional irreducibles, the predicted
//! algebra weight and exponent set attached to each partition, and the
//! Weyl dimension formulas that enter the completeness counts.
//!
//! * [`search`] finds the joint highest weight vectors on the window and
//!   decodes their Cartan data,
//! * [`verify`] assembles the full isotypic report and the Virasoro
//!   content checks.

pub mod search;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{rat, Rat};
use crate::symalg::labels::ExponentSet;

/// Highest weight of an irreducible `GL_l`-module: a non-increasing tuple
/// of `l` integers, negative parts allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartitionA {
    parts: Vec<i64>,
}

impl PartitionA {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "GL weight {parts:?} is not non-increasing"
            )));
        }
        Ok(PartitionA { parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn l(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for PartitionA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, m) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// Label of an irreducible `O_{2l}`-module: a non-increasing tuple of `l`
/// non-negative integers.  A positive last part means the induced module
/// (written with a trailing `~`); a vanishing last part admits an optional
/// determinant twist.  The flags are stored explicitly and validated, so a
/// label is barred if and only if its last part is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartitionD {
    parts: Vec<i64>,
    bar: bool,
    det: bool,
}

impl PartitionD {
    pub fn new(parts: Vec<i64>, bar: bool, det: bool) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "an O label needs at least one part".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts[parts.len() - 1] < 0 {
            return Err(Error::InvalidArgument(format!(
                "O label {parts:?} is not a non-increasing tuple of non-negative integers"
            )));
        }
        let last_positive = parts[parts.len() - 1] > 0;
        if bar != last_positive {
            return Err(Error::InvalidArgument(format!(
                "O label {parts:?}: the bar marks exactly the labels with positive last part"
            )));
        }
        if det && last_positive {
            return Err(Error::InvalidArgument(format!(
                "O label {parts:?}: the determinant twist needs a vanishing last part"
            )));
        }
        Ok(PartitionD { parts, bar, det })
    }

    pub fn barred(parts: Vec<i64>) -> Result<Self> {
        Self::new(parts, true, false)
    }

    pub fn plain(parts: Vec<i64>) -> Result<Self> {
        Self::new(parts, false, false)
    }

    pub fn det_twist(parts: Vec<i64>) -> Result<Self> {
        Self::new(parts, false, true)
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn bar(&self) -> bool {
        self.bar
    }

    pub fn det(&self) -> bool {
        self.det
    }

    pub fn l(&self) -> usize {
        self.parts.len()
    }

    /// The two cutoffs the weight and exponent maps case on: the number of
    /// parts exceeding 1 and the number of nonzero parts.
    fn cutoffs(&self) -> (i64, i64) {
        let above_one = self.parts.iter().filter(|&&m| m > 1).count() as i64;
        let nonzero = self.parts.iter().filter(|&&m| m >= 1).count() as i64;
        (above_one, nonzero)
    }
}

impl fmt::Display for PartitionD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, m) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")?;
        if self.bar {
            write!(f, "~")?;
        }
        if self.det {
            write!(f, "*det")?;
        }
        Ok(())
    }
}

/// A finite non-negative combination of the fundamental weights of the full
/// diagonal algebra, plus the central charge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightGlInf {
    coeffs: BTreeMap<i64, i64>,
    pub c: Rat,
}

impl WeightGlInf {
    pub fn new(coeffs: BTreeMap<i64, i64>, c: Rat) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, h)| *h != 0).collect();
        WeightGlInf { coeffs, c }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.coeffs.iter()
    }
}

impl fmt::Display for WeightGlInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_weight(f, &self.coeffs, "aL")
    }
}

/// Same bookkeeping for the reflection-fixed diagonal algebra; fundamental
/// weights are indexed by non-negative integers only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDinf {
    coeffs: BTreeMap<i64, i64>,
    pub c: Rat,
}

impl WeightDinf {
    pub fn new(coeffs: BTreeMap<i64, i64>, c: Rat) -> Self {
        let coeffs: BTreeMap<i64, i64> =
            coeffs.into_iter().filter(|(_, h)| *h != 0).collect();
        debug_assert!(coeffs.keys().all(|&i| i >= 0));
        WeightDinf { coeffs, c }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.coeffs.iter()
    }
}

impl fmt::Display for WeightDinf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_weight(f, &self.coeffs, "dL")
    }
}

fn fmt_weight(f: &mut fmt::Formatter<'_>, coeffs: &BTreeMap<i64, i64>, tag: &str) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    for (k, (j, h)) in coeffs.iter().enumerate() {
        if k > 0 {
            write!(f, " + ")?;
        }
        if *h != 1 {
            write!(f, "{h}*")?;
        }
        write!(f, "{tag}({j})")?;
    }
    Ok(())
}

/// Predicted diagonal weight of the sector labelled by a GL partition: one
/// fundamental weight per part, central charge `l`.
pub fn weight_map_aa(lam: &PartitionA) -> WeightGlInf {
    let mut coeffs: BTreeMap<i64, i64> = BTreeMap::new();
    for &m in lam.parts() {
        *coeffs.entry(m).or_insert(0) += 1;
    }
    WeightGlInf::new(coeffs, rat(lam.l() as i64))
}

/// Predicted reflection-algebra weight of the sector labelled by an O
/// label.  Parts above 1 contribute their own fundamental weight; the
/// remaining mass sits on indices 0 and 1 with coefficients depending on
/// the label kind: `(l-i, l-i)` barred, `(2l-i-j, j-i)` plain, and the
/// plain pair swapped for a determinant twist, where `i` counts parts
/// above 1 and `j` the nonzero parts.
pub fn weight_map_dd(lam: &PartitionD) -> WeightDinf {
    let l = lam.l() as i64;
    let (i, j) = lam.cutoffs();
    let (h0, h1) = if lam.bar() {
        (l - i, l - i)
    } else if lam.det() {
        (j - i, 2 * l - i - j)
    } else {
        (2 * l - i - j, j - i)
    };
    let mut coeffs: BTreeMap<i64, i64> = BTreeMap::new();
    *coeffs.entry(0).or_insert(0) += h0;
    *coeffs.entry(1).or_insert(0) += h1;
    for &m in lam.parts().iter().take(i as usize) {
        *coeffs.entry(m).or_insert(0) += 1;
    }
    WeightDinf::new(coeffs, rat(l))
}

/// Exponent multiset of a GL sector: the parts with their repetition
/// counts, zero included, so the total multiplicity is the central charge.
pub fn exponent_set_a(lam: &PartitionA) -> ExponentSet {
    let mut entries: BTreeMap<i64, i64> = BTreeMap::new();
    for &m in lam.parts() {
        *entries.entry(m).or_insert(0) += 1;
    }
    ExponentSet::new_a(entries, rat(lam.l() as i64))
}

/// Exponent multiset of an O sector: the parts above 1 once each, plus the
/// exponent 1 with multiplicity `l-i` (barred), `j-i` (plain), or
/// `2l-i-j` (det twist).
pub fn exponent_set_d(lam: &PartitionD) -> ExponentSet {
    let l = lam.l() as i64;
    let (i, j) = lam.cutoffs();
    let ones = if lam.bar() {
        l - i
    } else if lam.det() {
        2 * l - i - j
    } else {
        j - i
    };
    let mut entries: BTreeMap<i64, i64> = BTreeMap::new();
    for &m in lam.parts().iter().take(i as usize) {
        *entries.entry(m).or_insert(0) += 1;
    }
    *entries.entry(1).or_insert(0) += ones;
    ExponentSet::new_dplus(entries, rat(l))
}

fn rat_to_i64(d: Rat, what: &str) -> i64 {
    assert!(d.is_integer(), "{what} must be an integer, got {d}");
    let n = d.to_integer();
    i64::try_from(&n).unwrap_or_else(|_| panic!("{what} {n} exceeds i64"))
}

/// Dimension of the irreducible `GL_l`-module, by the Weyl product formula
/// `prod_(a<b) (m_a - m_b + b - a)/(b - a)`.
pub fn gl_dim(lam: &PartitionA) -> i64 {
    let p = lam.parts();
    let mut d = Rat::from_integer(1.into());
    for a in 0..p.len() {
        for b in (a + 1)..p.len() {
            let gap = (b - a) as i64;
            d *= Rat::new((p[a] - p[b] + gap).into(), gap.into());
        }
    }
    rat_to_i64(d, "GL Weyl dimension")
}

/// Dimension of the irreducible `O_{2l}`-module: the `so_{2l}` Weyl product
/// on the parts, doubled for barred labels (each induced module restricts
/// to two mirror-image irreducibles of equal dimension); a determinant
/// twist leaves the dimension unchanged.
pub fn o_dim(lam: &PartitionD) -> i64 {
    let p = lam.parts();
    let l = p.len() as i64;
    let mut d = Rat::from_integer(1.into());
    for a in 0..p.len() {
        for b in (a + 1)..p.len() {
            let (ia, ib) = (a as i64 + 1, b as i64 + 1);
            d *= Rat::new(
                ((p[a] - p[b] + ib - ia) * (p[a] + p[b] + 2 * l - ia - ib)).into(),
                ((ib - ia) * (2 * l - ia - ib)).into(),
            );
        }
    }
    let dim = rat_to_i64(d, "O Weyl dimension");
    if lam.bar() {
        2 * dim
    } else {
        dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::labels::labels_from_exponents;

    fn wa(pairs: &[(i64, i64)], c: i64) -> WeightGlInf {
        WeightGlInf::new(pairs.iter().cloned().collect(), rat(c))
    }

    fn wd(pairs: &[(i64, i64)], c: i64) -> WeightDinf {
        WeightDinf::new(pairs.iter().cloned().collect(), rat(c))
    }

    #[test]
    fn gl_weight_map_counts_parts_with_multiplicity() {
        let single = PartitionA::new(vec![0]).unwrap();
        assert_eq!(weight_map_aa(&single), wa(&[(0, 1)], 1));

        let repeated = PartitionA::new(vec![1, 1]).unwrap();
        assert_eq!(weight_map_aa(&repeated), wa(&[(1, 2)], 2));

        let mixed = PartitionA::new(vec![1, -1]).unwrap();
        assert_eq!(weight_map_aa(&mixed), wa(&[(1, 1), (-1, 1)], 2));
    }

    #[test]
    fn o_weight_map_covers_all_three_label_kinds() {
        let zero = PartitionD::plain(vec![0]).unwrap();
        assert_eq!(weight_map_dd(&zero), wd(&[(0, 2)], 1));

        let det = PartitionD::det_twist(vec![0]).unwrap();
        assert_eq!(weight_map_dd(&det), wd(&[(1, 2)], 1));

        let two = PartitionD::barred(vec![2]).unwrap();
        assert_eq!(weight_map_dd(&two), wd(&[(2, 1)], 1));

        let one = PartitionD::barred(vec![1]).unwrap();
        assert_eq!(weight_map_dd(&one), wd(&[(0, 1), (1, 1)], 1));

        // l = 3, parts (2,1,0): one part above 1, two nonzero.
        let tall = PartitionD::plain(vec![2, 1, 0]).unwrap();
        assert_eq!(weight_map_dd(&tall), wd(&[(0, 3), (1, 1), (2, 1)], 3));

        let tall_bar = PartitionD::barred(vec![2, 1]).unwrap();
        assert_eq!(weight_map_dd(&tall_bar), wd(&[(0, 1), (1, 1), (2, 1)], 2));
    }

    /// The fundamental coefficients always satisfy the central-charge
    /// relation `c = (h_0 + h_1)/2 + sum_(i>=2) h_i` with `c = l`.
    #[test]
    fn o_weight_map_satisfies_the_central_relation() {
        let labels = [
            PartitionD::plain(vec![0, 0]).unwrap(),
            PartitionD::det_twist(vec![1, 0]).unwrap(),
            PartitionD::barred(vec![3, 1]).unwrap(),
            PartitionD::plain(vec![4, 2, 1, 0]).unwrap(),
            PartitionD::barred(vec![2, 2, 1]).unwrap(),
        ];
        for lam in labels {
            let w = weight_map_dd(&lam);
            let mut c = Rat::from_integer(0.into());
            for (&i, &h) in w.coeffs() {
                if i <= 1 {
                    c += Rat::new(h.into(), 2.into());
                } else {
                    c += rat(h);
                }
            }
            assert_eq!(c, rat(lam.l() as i64), "relation fails for {lam}");
        }
    }

    #[test]
    fn exponent_sets_merge_repeated_parts() {
        let lam = PartitionA::new(vec![2, 2, 1]).unwrap();
        let e = exponent_set_a(&lam);
        assert_eq!(
            e.entries().map(|(a, b)| (*a, *b)).collect::<Vec<_>>(),
            vec![(1, 1), (2, 2)]
        );
        assert_eq!(e.c, rat(3));

        // Zero parts stay in the multiset: the A family needs the total
        // multiplicity to be the central charge.
        let zeros = PartitionA::new(vec![0, 0]).unwrap();
        let e0 = exponent_set_a(&zeros);
        assert_eq!(
            e0.entries().map(|(a, b)| (*a, *b)).collect::<Vec<_>>(),
            vec![(0, 2)]
        );
        labels_from_exponents(&e0, 4, -1).unwrap();
    }

    #[test]
    fn o_exponent_sets_follow_the_case_split() {
        let plain = exponent_set_d(&PartitionD::plain(vec![0]).unwrap());
        assert_eq!(plain.entries().count(), 0);

        let det = exponent_set_d(&PartitionD::det_twist(vec![0]).unwrap());
        assert_eq!(
            det.entries().map(|(a, b)| (*a, *b)).collect::<Vec<_>>(),
            vec![(1, 2)]
        );

        let bar1 = exponent_set_d(&PartitionD::barred(vec![1]).unwrap());
        assert_eq!(
            bar1.entries().map(|(a, b)| (*a, *b)).collect::<Vec<_>>(),
            vec![(1, 1)]
        );

        let bar2 = exponent_set_d(&PartitionD::barred(vec![2]).unwrap());
        assert_eq!(
            bar2.entries().map(|(a, b)| (*a, *b)).collect::<Vec<_>>(),
            vec![(2, 1)]
        );

        // l = 2 with both parts above 1: exponent 1 drops out entirely.
        let high = exponent_set_d(&PartitionD::barred(vec![3, 2]).unwrap());
        assert_eq!(
            high.entries().map(|(a, b)| (*a, *b)).collect::<Vec<_>>(),
            vec![(2, 1), (3, 1)]
        );
    }

    #[test]
    fn weyl_dimensions_match_small_classical_modules() {
        let dim_a = |parts: &[i64]| gl_dim(&PartitionA::new(parts.to_vec()).unwrap());
        assert_eq!(dim_a(&[0]), 1);
        assert_eq!(dim_a(&[5]), 1);
        assert_eq!(dim_a(&[1, 0]), 2);
        assert_eq!(dim_a(&[2, 0]), 3);
        assert_eq!(dim_a(&[1, 1]), 1);
        assert_eq!(dim_a(&[1, -1]), 3);
        assert_eq!(dim_a(&[2, 1, 0]), 8);
        assert_eq!(dim_a(&[1, 0, 0]), 3);

        assert_eq!(o_dim(&PartitionD::plain(vec![0]).unwrap()), 1);
        assert_eq!(o_dim(&PartitionD::det_twist(vec![0]).unwrap()), 1);
        assert_eq!(o_dim(&PartitionD::barred(vec![1]).unwrap()), 2);
        assert_eq!(o_dim(&PartitionD::barred(vec![7]).unwrap()), 2);

        // O_4: vector, two-form, traceless symmetric square.
        assert_eq!(o_dim(&PartitionD::plain(vec![1, 0]).unwrap()), 4);
        assert_eq!(o_dim(&PartitionD::barred(vec![1, 1]).unwrap()), 6);
        assert_eq!(o_dim(&PartitionD::plain(vec![2, 0]).unwrap()), 9);
        assert_eq!(o_dim(&PartitionD::det_twist(vec![2, 0]).unwrap()), 9);
    }

    #[test]
    fn o_labels_validate_their_flags() {
        assert!(PartitionD::barred(vec![1, 0]).is_err());
        assert!(PartitionD::det_twist(vec![1]).is_err());
        assert!(PartitionD::plain(vec![1]).is_err());
        assert!(PartitionD::plain(vec![0, 1]).is_err());
        assert!(PartitionD::plain(vec![-1]).is_err());
        assert!(PartitionD::plain(vec![]).is_err());
        assert!(PartitionA::new(vec![0, 1]).is_err());
    }

    #[test]
    fn labels_render_compactly() {
        assert_eq!(PartitionA::new(vec![2, 0, -1]).unwrap().to_string(), "(2,0,-1)");
        assert_eq!(PartitionD::barred(vec![2]).unwrap().to_string(), "(2)~");
        assert_eq!(
            PartitionD::det_twist(vec![0]).unwrap().to_string(),
            "(0)*det"
        );
        assert_eq!(weight_map_dd(&PartitionD::plain(vec![0]).unwrap()).to_string(), "2*dL(0)");
        assert_eq!(
            weight_map_aa(&PartitionA::new(vec![1, -1]).unwrap()).to_string(),
            "aL(-1) + aL(1)"
        );
        assert_eq!(wa(&[], 2).to_string(), "0");
    }
}
