//! Truncated formal series in `q^(1/2)` with exact integer coefficients.
//!
//! Exponents are stored doubled, so the coefficient of `q^(k/2)` lives at
//! index `k`.  Everything is truncated consistently at a fixed doubled order;
//! no coefficient beyond the truncation is ever stored.
//!
//! The module also provides the classical product forms and character series
//! used by the identity checks:
//!
//! * `product_form`      — the products over `(1 - q^j)`, `(1 + q^j)`,
//!   `(1 - q^(2j))` and `(1 + q^(j-1/2))`,
//! * `gauss_rhs`         — the theta-like sum over `(-q)^(j^2)`,
//! * `ch_virasoro_c1`    — `(q^(4m^2) - q^((2m+1)^2)) / prod (1 - q^j)`,
//! * `ch_v1plus`         — two expressions for the same character, compared
//!   exactly before being returned,
//! * `partition_count`   — `p(n)` via the pentagonal-number recurrence.

use num::{BigInt, One, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Series `sum c_k q^(k/2)` truncated at doubled order `order2` inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    order2: i64,
    coeffs: Vec<BigInt>, // index k holds the coefficient of q^(k/2)
}

impl QSeries {
    pub fn zero(order2: i64) -> Self {
        assert!(order2 >= 0, "truncation order must be non-negative");
        Self {
            order2,
            coeffs: vec![BigInt::zero(); (order2 + 1) as usize],
        }
    }

    pub fn one(order2: i64) -> Self {
        Self::monomial(0, BigInt::one(), order2)
    }

    /// The single term `c * q^(k2/2)` (zero series if it is beyond the order).
    pub fn monomial(k2: i64, c: BigInt, order2: i64) -> Self {
        let mut s = Self::zero(order2);
        if (0..=order2).contains(&k2) {
            s.coeffs[k2 as usize] = c;
        }
        s
    }

    pub fn order2(&self) -> i64 {
        self.order2
    }

    /// Coefficient of `q^(k2/2)`.
    pub fn coeff(&self, k2: i64) -> BigInt {
        if (0..=self.order2).contains(&k2) {
            self.coeffs[k2 as usize].clone()
        } else {
            BigInt::zero()
        }
    }

    /// Coefficients at integer exponents `q^0, q^1, ...` as `i64` (tests).
    pub fn integer_coeffs(&self, up_to: i64) -> Vec<BigInt> {
        (0..=up_to).map(|n| self.coeff(2 * n)).collect()
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.order2 != other.order2 {
            return Err(Error::DimensionMismatch(format!(
                "series orders {} vs {}",
                self.order2, other.order2
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut out = Self::zero(self.order2);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > self.order2 as usize {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a *= c;
        }
        out
    }

    /// Multiplicative inverse; requires the constant term to be a unit (+-1).
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NotInvertible(format!(
                "constant term {c0} is not a unit"
            )));
        }
        let mut inv = Self::zero(self.order2);
        inv.coeffs[0] = c0.clone(); // 1/c0 = c0 for units
        for k in 1..=self.order2 as usize {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv.coeffs[k - j];
                }
            }
            inv.coeffs[k] = -c0 * acc;
        }
        Ok(inv)
    }

    /// Divide every coefficient exactly by 2 (errors if any is odd).
    pub fn halve(&self) -> Result<Self> {
        let two = BigInt::from(2);
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            let (q, r) = num::Integer::div_rem(&*a, &two);
            if !r.is_zero() {
                return Err(Error::NotInvertible(
                    "coefficient is odd; exact halving impossible".into(),
                ));
            }
            *a = q;
        }
        Ok(out)
    }

    /// CSV rows `exponent_numerator,exponent_denominator,coefficient` with
    /// the denominator fixed at 2 (one row per stored doubled exponent).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent_numerator,exponent_denominator,coefficient\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{k},2,{c}");
        }
        out
    }
}

/// The classical infinite products, truncated exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    /// `prod_{j>=1} (1 - q^j)`
    OneMinusQj,
    /// `prod_{j>=1} (1 + q^j)`
    OnePlusQj,
    /// `prod_{j>=1} (1 - q^(2j))`
    OneMinusQ2j,
    /// `prod_{j>=1} (1 + q^(j-1/2))`
    OnePlusQHalfOdd,
}

/// Expand one of the standard products to the requested doubled order.
pub fn product_form(kind: ProductKind, order2: i64) -> QSeries {
    let mut acc = QSeries::one(order2);
    let (step2, start2, sign) = match kind {
        ProductKind::OneMinusQj => (2, 2, -1),
        ProductKind::OnePlusQj => (2, 2, 1),
        ProductKind::OneMinusQ2j => (4, 4, -1),
        ProductKind::OnePlusQHalfOdd => (2, 1, 1),
    };
    let mut e2 = start2;
    while e2 <= order2 {
        let mut factor = QSeries::one(order2);
        factor.coeffs[e2 as usize] += BigInt::from(sign);
        acc = acc.mul(&factor).expect("same order");
        e2 += step2;
    }
    acc
}

/// `sum_{j in Z} (-q)^(j^2) = 1 + 2 sum_{j>=1} (-1)^j q^(j^2)`.
pub fn gauss_rhs(order2: i64) -> QSeries {
    let mut s = QSeries::one(order2);
    let mut j = 1i64;
    while 2 * j * j <= order2 {
        let c = if j % 2 == 0 {
            BigInt::from(2)
        } else {
            BigInt::from(-2)
        };
        s.coeffs[(2 * j * j) as usize] += c;
        j += 1;
    }
    s
}

/// Irreducible Virasoro character at central charge 1:
/// `(q^(4m^2) - q^((2m+1)^2)) / prod_{j>=1} (1 - q^j)`.
pub fn ch_virasoro_c1(m: i64, order2: i64) -> QSeries {
    let m = m.abs();
    let num = QSeries::monomial(8 * m * m, BigInt::one(), order2)
        .sub(&QSeries::monomial(
            2 * (2 * m + 1) * (2 * m + 1),
            BigInt::one(),
            order2,
        ))
        .expect("same order");
    let den_inv = product_form(ProductKind::OneMinusQj, order2)
        .inverse()
        .expect("unit constant term");
    num.mul(&den_inv).expect("same order")
}

/// Character of the even charge-zero sector, computed two independent ways
/// (a half-sum of products over a product, and a theta-like sum over the
/// Euler product) and compared exactly before returning.
pub fn ch_v1plus(order2: i64) -> QSeries {
    // Form 1: ((prod (1+q^j)) + (prod (1-q^j))) / 2 / prod (1-q^(2j)).
    let plus = product_form(ProductKind::OnePlusQj, order2);
    let minus = product_form(ProductKind::OneMinusQj, order2);
    let half_sum = plus.add(&minus).unwrap().halve().expect("even sum");
    let den_inv = product_form(ProductKind::OneMinusQ2j, order2)
        .inverse()
        .unwrap();
    let form1 = half_sum.mul(&den_inv).unwrap();

    // Form 2: sum_{j>=0} (-q)^(j^2) / prod (1-q^j).
    let mut theta_half = QSeries::one(order2);
    let mut j = 1i64;
    while 2 * j * j <= order2 {
        let c = if j % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        theta_half.coeffs[(2 * j * j) as usize] += c;
        j += 1;
    }
    let euler_inv = product_form(ProductKind::OneMinusQj, order2)
        .inverse()
        .unwrap();
    let form2 = theta_half.mul(&euler_inv).unwrap();

    assert_eq!(form1, form2, "the two closed forms must agree exactly");
    form1
}

/// Partition count `p(n)` via Euler's pentagonal-number recurrence.
pub fn partition_count(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    let n = n as usize;
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 as usize > m {
                break;
            }
            let sign_pos = k % 2 == 1;
            if g1 as usize <= m {
                let t = p[m - g1 as usize].clone();
                if sign_pos {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            if g2 as usize <= m {
                let t = p[m - g2 as usize].clone();
                if sign_pos {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            k += 1;
        }
        p[m] = acc;
    }
    p[n].clone()
}

/// Integer coefficients graded by (charge, doubled energy).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BigradedSeries {
    coeffs: BTreeMap<(i64, i64), BigInt>,
}

impl BigradedSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, charge: i64, energy2: i64, c: BigInt) {
        if c.is_zero() {
            self.coeffs.remove(&(charge, energy2));
        } else {
            self.coeffs.insert((charge, energy2), c);
        }
    }

    pub fn get(&self, charge: i64, energy2: i64) -> BigInt {
        self.coeffs
            .get(&(charge, energy2))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.coeffs.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: count partitions of `n` by direct enumeration.
    fn partitions_brute(n: i64, max_part: i64) -> i64 {
        if n == 0 {
            return 1;
        }
        if n < 0 || max_part == 0 {
            return 0;
        }
        partitions_brute(n - max_part, max_part) + partitions_brute(n, max_part - 1)
    }

    /// Oracle: partitions of `n` into distinct parts.
    fn distinct_partitions_brute(n: i64, max_part: i64) -> i64 {
        if n == 0 {
            return 1;
        }
        if n < 0 || max_part == 0 {
            return 0;
        }
        distinct_partitions_brute(n - max_part, max_part - 1)
            + distinct_partitions_brute(n, max_part - 1)
    }

    fn ints(s: &QSeries, up_to: i64) -> Vec<i64> {
        s.integer_coeffs(up_to)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn euler_product_expansion() {
        let s = product_form(ProductKind::OneMinusQj, 10);
        assert_eq!(ints(&s, 5), vec![1, -1, -1, 0, 0, 1]);
    }

    #[test]
    fn distinct_parts_product_expansion() {
        let s = product_form(ProductKind::OnePlusQj, 8);
        assert_eq!(ints(&s, 4), vec![1, 1, 1, 2, 2]);
        for n in 0..=4 {
            assert_eq!(
                s.coeff(2 * n),
                BigInt::from(distinct_partitions_brute(n, n))
            );
        }
    }

    #[test]
    fn half_odd_product_has_half_integer_support() {
        let s = product_form(ProductKind::OnePlusQHalfOdd, 6);
        // 1 + q^(1/2) + q^(3/2) + q^2 + q^(5/2) + q^3 ...
        assert_eq!(s.coeff(0), BigInt::one());
        assert_eq!(s.coeff(1), BigInt::one());
        assert_eq!(s.coeff(2), BigInt::zero());
        assert_eq!(s.coeff(3), BigInt::one());
        assert_eq!(s.coeff(4), BigInt::one());
    }

    #[test]
    fn gauss_rhs_expansion() {
        let s = gauss_rhs(8);
        assert_eq!(ints(&s, 4), vec![1, -2, 0, 0, 2]);
    }

    #[test]
    fn gauss_identity_to_high_order() {
        let order2 = 40;
        let lhs = product_form(ProductKind::OneMinusQj, order2)
            .mul(&product_form(ProductKind::OnePlusQj, order2).inverse().unwrap())
            .unwrap();
        assert_eq!(lhs, gauss_rhs(order2));
    }

    #[test]
    fn virasoro_character_m0() {
        let s = ch_virasoro_c1(0, 12);
        assert_eq!(ints(&s, 6), vec![1, 0, 1, 1, 2, 2, 4]);
        // Independent route: p(n) - p(n-1).
        for n in 0..=6 {
            assert_eq!(s.coeff(2 * n), partition_count(n) - partition_count(n - 1));
        }
    }

    #[test]
    fn v1plus_expansion() {
        let s = ch_v1plus(8);
        assert_eq!(ints(&s, 4), vec![1, 0, 1, 1, 3]);
    }

    #[test]
    fn v1plus_is_sum_of_virasoro_characters() {
        // The summands beyond m = 1 start at q^16, so to q^8 two terms suffice.
        let order2 = 16;
        let sum = ch_virasoro_c1(0, order2)
            .add(&ch_virasoro_c1(1, order2))
            .unwrap();
        let v = ch_v1plus(order2);
        for n in 0..=8 {
            assert_eq!(sum.coeff(2 * n), v.coeff(2 * n));
        }
    }

    #[test]
    fn partition_recurrence_matches_enumeration() {
        for n in 0..=12 {
            assert_eq!(partition_count(n), BigInt::from(partitions_brute(n, n)));
        }
        assert_eq!(partition_count(4), BigInt::from(5));
        assert_eq!(partition_count(8), BigInt::from(22));
    }

    #[test]
    fn inverse_is_exact() {
        let s = product_form(ProductKind::OneMinusQj, 20);
        let prod = s.mul(&s.inverse().unwrap()).unwrap();
        assert_eq!(prod, QSeries::one(20));
    }

    #[test]
    fn csv_rows_use_doubled_exponents() {
        let s = QSeries::monomial(3, BigInt::from(5), 3);
        let csv = s.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "exponent_numerator,exponent_denominator,coefficient");
        assert_eq!(lines[1], "0,2,0");
        assert_eq!(lines[4], "3,2,5");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn truncation_is_consistent() {
        let a = QSeries::monomial(10, BigInt::one(), 12);
        let b = QSeries::monomial(8, BigInt::one(), 12);
        let prod = a.mul(&b).unwrap();
        // q^9 is beyond the order: nothing stored, nothing panics.
        assert_eq!(prod, QSeries::zero(12));
        assert_eq!(prod.coeff(18), BigInt::zero());
    }

    #[test]
    fn bigraded_storage_roundtrip() {
        let mut b = BigradedSeries::new();
        b.set(1, 3, BigInt::from(4));
        b.set(-1, 3, BigInt::from(4));
        b.set(1, 3, BigInt::zero());
        assert_eq!(b.get(-1, 3), BigInt::from(4));
        assert_eq!(b.get(1, 3), BigInt::zero());
        assert_eq!(b.iter().count(), 1);
    }
}
