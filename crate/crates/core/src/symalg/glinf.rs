//! Bi-infinite matrices of finite support with a central extension.
//!
//! Elements are finite rational combinations of matrix units `E_ij`
//! (`i, j` integers) plus a central component.  The 2-cocycle is
//! `C(A, B) = Tr([J, A] B)` where `J` projects onto the non-positive
//! coordinates; concretely it counts the entries of `A B` that cross the
//! boundary between index 0 and index 1, with sign.
//!
//! The realization map from differential operators sends `t^k f(D)` to
//! `sum_j f(-j) E_{j-k, j}`.  That image has infinite support, so this
//! module materializes it over an explicit column window; the window
//! needed for an exact cocycle comparison is checked, not assumed.

use num::Zero;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::symalg::DiffOp;

/// A finite-support matrix plus central component.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GlInfElement {
    entries: BTreeMap<(i64, i64), Rat>,
    central: Rat,
}

impl GlInfElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The matrix unit `E_ij`.
    pub fn e_mat(i: i64, j: i64) -> Self {
        let mut out = Self::default();
        out.add_entry(i, j, Rat::from_integer(1.into()));
        out
    }

    pub fn central_element() -> Self {
        Self {
            entries: BTreeMap::new(),
            central: Rat::from_integer(1.into()),
        }
    }

    pub fn central(&self) -> &Rat {
        &self.central
    }

    pub fn set_central(&mut self, c: Rat) {
        self.central = c;
    }

    pub fn entry(&self, i: i64, j: i64) -> Rat {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty() && self.central.is_zero()
    }

    pub fn add_entry(&mut self, i: i64, j: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry((i, j)) {
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

    pub fn add(&self, other: &GlInfElement) -> GlInfElement {
        let mut out = self.clone();
        for ((i, j), c) in &other.entries {
            out.add_entry(*i, *j, c.clone());
        }
        out.central += &other.central;
        out
    }

    pub fn neg(&self) -> GlInfElement {
        GlInfElement {
            entries: self
                .entries
                .iter()
                .map(|(k, c)| (*k, -c.clone()))
                .collect(),
            central: -self.central.clone(),
        }
    }

    pub fn sub(&self, other: &GlInfElement) -> GlInfElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> GlInfElement {
        if c.is_zero() {
            return GlInfElement::zero();
        }
        GlInfElement {
            entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect(),
            central: &self.central * c,
        }
    }

    /// Matrix product of the non-central parts (finite supports make this
    /// exact); the central components are dropped.
    pub fn mul(&self, other: &GlInfElement) -> GlInfElement {
        let mut out = GlInfElement::zero();
        for ((i, j), a) in &self.entries {
            for ((k, l), b) in &other.entries {
                if j == k {
                    out.add_entry(*i, *l, a * b);
                }
            }
        }
        out
    }

    /// Commutator plus the boundary cocycle on the central generator.
    pub fn bracket(&self, other: &GlInfElement) -> GlInfElement {
        let mut out = self.mul(other).sub(&other.mul(self));
        out.central = cocycle_c(self, other);
        out
    }
}

/// The 2-cocycle `Tr([J, A] B)` with `J = sum_{i <= 0} E_ii`: entries of
/// `A` above the boundary (row <= 0 < column) pair positively with the
/// transposed entries of `B`, entries below pair negatively.
pub fn cocycle_c(a: &GlInfElement, b: &GlInfElement) -> Rat {
    let mut total = Rat::zero();
    for ((i, j), av) in a.entries() {
        if *i <= 0 && *j >= 1 {
            total += av * b.entry(*j, *i);
        } else if *j <= 0 && *i >= 1 {
            total -= av * b.entry(*j, *i);
        }
    }
    total
}

/// Materialize the image of a differential operator over the column window
/// `jlo..=jhi`: each term `t^k f(D)` contributes `f(-j) E_{j-k, j}` for
/// every window column `j`.  The central component is copied through.
pub fn phi(a: &DiffOp, jlo: i64, jhi: i64) -> GlInfElement {
    let mut out = GlInfElement::zero();
    for (k, f) in a.terms() {
        for j in jlo..=jhi {
            out.add_entry(j - k, j, f.eval_int(-j));
        }
    }
    out.set_central(a.central().clone());
    out
}

/// Evaluate both cocycles on a pair of differential operators: the
/// degree-pairing cocycle directly, and the boundary cocycle on the
/// windowed matrix images.  The window must cover every column that can
/// cross the boundary, which is `[1-R, R]` for `R` the largest absolute
/// term degree; a smaller window is an error rather than a wrong answer.
pub fn cocycle_compat(a: &DiffOp, b: &DiffOp, jlo: i64, jhi: i64) -> Result<(Rat, Rat)> {
    let r_max = a
        .degrees()
        .into_iter()
        .chain(b.degrees())
        .map(|k| k.abs())
        .max()
        .unwrap_or(0);
    if jlo > 1 - r_max || jhi < r_max {
        return Err(Error::WindowTooSmall {
            need_lo: 1 - r_max,
            need_hi: r_max,
            lo: jlo,
            hi: jhi,
        });
    }
    let lhs = a.psi(b);
    let rhs = cocycle_c(&phi(a, jlo, jhi), &phi(b, jlo, jhi));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::symalg::Poly;

    fn xorshift(state: &mut u64) -> u64 {
        *state ^= *state << 13;
        *state ^= *state >> 7;
        *state ^= *state << 17;
        *state
    }

    fn random_element(state: &mut u64) -> GlInfElement {
        let mut out = GlInfElement::zero();
        for _ in 0..4 {
            let i = (xorshift(state) % 7) as i64 - 3;
            let j = (xorshift(state) % 7) as i64 - 3;
            out.add_entry(i, j, rat((xorshift(state) % 9) as i64 - 4));
        }
        out
    }

    #[test]
    fn cocycle_boundary_values() {
        // Crossing pair straddling the 0|1 boundary.
        assert_eq!(
            cocycle_c(&GlInfElement::e_mat(0, 1), &GlInfElement::e_mat(1, 0)),
            rat(1)
        );
        // Same shape away from the boundary: nothing.
        assert_eq!(
            cocycle_c(&GlInfElement::e_mat(1, 2), &GlInfElement::e_mat(2, 1)),
            rat(0)
        );
        // Antisymmetry on random elements.
        let mut state = 0x1357924680u64;
        for _ in 0..20 {
            let a = random_element(&mut state);
            let b = random_element(&mut state);
            assert_eq!(cocycle_c(&a, &b), -cocycle_c(&b, &a));
        }
    }

    #[test]
    fn bracket_values() {
        // [E_01, E_10] = E_00 - E_11 + C.
        let br = GlInfElement::e_mat(0, 1).bracket(&GlInfElement::e_mat(1, 0));
        let mut expect = GlInfElement::e_mat(0, 0).sub(&GlInfElement::e_mat(1, 1));
        expect.set_central(rat(1));
        assert_eq!(br, expect);
        // Diagonal units commute; off-boundary units compose.
        assert!(GlInfElement::e_mat(1, 1)
            .bracket(&GlInfElement::e_mat(2, 2))
            .is_zero());
        assert_eq!(
            GlInfElement::e_mat(1, 2).bracket(&GlInfElement::e_mat(2, 3)),
            GlInfElement::e_mat(1, 3)
        );
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi() {
        let mut state = 0x2468013579u64;
        for _ in 0..12 {
            let a = random_element(&mut state);
            let b = random_element(&mut state);
            let c = random_element(&mut state);
            assert_eq!(a.bracket(&b), b.bracket(&a).neg());
            let jacobi = a
                .bracket(&b.bracket(&c))
                .add(&b.bracket(&c.bracket(&a)))
                .add(&c.bracket(&a.bracket(&b)));
            assert!(jacobi.is_zero());
        }
    }

    #[test]
    fn phi_images() {
        // t^0 D materializes as the diagonal with entry -j at column j.
        let d = DiffOp::from_term(0, Poly::x());
        let img = phi(&d, -3, 3);
        for j in -3..=3i64 {
            assert_eq!(img.entry(j, j), rat(-j));
        }
        assert_eq!(img.entries().count(), 6); // j = 0 contributes nothing
        // J^0_1 = -t: image is -sum_j E_{j-1, j}.
        let img = phi(&DiffOp::j_op(0, 1), -2, 2);
        for j in -2..=2i64 {
            assert_eq!(img.entry(j - 1, j), rat(-1));
        }
    }

    #[test]
    fn phi_of_w_ops_has_reflection_antisymmetry() {
        // Images of the W family land in the subalgebra with
        // a_ij = -a_{1-j, 1-i}; checked for every entry whose partner
        // column is also inside the window.
        for n in [1usize, 3] {
            for k in -2..=2i64 {
                let img = phi(&DiffOp::w_op(n, k), -8, 8);
                for j in -4..=4i64 {
                    let partner_col = 1 - j + k;
                    assert_eq!(
                        img.entry(j - k, j),
                        -img.entry(1 - j, partner_col),
                        "n {n} k {k} column {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn phi_is_a_lie_homomorphism_with_centers() {
        // phi([a,b]) agrees with [phi a, phi b] entry-for-entry on columns
        // away from the window edge, and the central components match by
        // cocycle compatibility.
        let (jlo, jhi) = (-12i64, 12);
        for r in -4..=4i64 {
            for s in [-r, 1 - r] {
                for m in 0..=3usize {
                    for mp in 0..=2usize {
                        let a = DiffOp::from_term(r, Poly::monomial(m));
                        let b = DiffOp::from_term(s, Poly::monomial(mp));
                        let lhs = phi(&a.bracket(&b), jlo, jhi);
                        let rhs = phi(&a, jlo, jhi).bracket(&phi(&b, jlo, jhi));
                        assert_eq!(lhs.central(), rhs.central(), "r {r} s {s}");
                        let margin = r.abs() + s.abs();
                        for ((i, j), c) in lhs.entries() {
                            if *j >= jlo + margin && *j <= jhi - margin {
                                assert_eq!(rhs.entry(*i, *j), c.clone(), "entry ({i},{j})");
                            }
                        }
                        for ((i, j), c) in rhs.entries() {
                            if *j >= jlo + margin && *j <= jhi - margin {
                                assert_eq!(lhs.entry(*i, *j), c.clone(), "entry ({i},{j})");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cocycle_compatibility_examples() {
        // Heisenberg pairing: both cocycles give 1.
        let (lhs, rhs) =
            cocycle_compat(&DiffOp::j_op(0, 1), &DiffOp::j_op(0, -1), -5, 5).unwrap();
        assert_eq!(lhs, rat(1));
        assert_eq!(rhs, rat(1));
        // Pure translations t^2, t^-2: both give 2.
        let t2 = DiffOp::from_term(2, Poly::one());
        let t2inv = DiffOp::from_term(-2, Poly::one());
        let (lhs, rhs) = cocycle_compat(&t2, &t2inv, -5, 5).unwrap();
        assert_eq!(lhs, rat(2));
        assert_eq!(rhs, rat(2));
        // Degrees that do not pair: both sides vanish.
        let (lhs, rhs) = cocycle_compat(&t2, &DiffOp::j_op(1, 1), -5, 5).unwrap();
        assert_eq!(lhs, rat(0));
        assert_eq!(rhs, rat(0));
        // Insufficient window is an error, not a silent wrong value.
        assert!(matches!(
            cocycle_compat(&t2, &t2inv, -1, 1),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn fractional_coefficients_survive() {
        let mut a = GlInfElement::e_mat(0, 2).scale(&ratio(1, 2));
        a = a.add(&GlInfElement::e_mat(2, 0).scale(&ratio(-3, 2)));
        // The two crossings cancel exactly: +1/2 * -3/2 and -(-3/2 * 1/2).
        assert_eq!(cocycle_c(&a, &a), rat(0));
        assert_eq!(a.entry(0, 2), ratio(1, 2));
    }
}
