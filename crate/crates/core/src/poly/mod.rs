//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! A [`Polynomial`] owns a [`VarSpace`] (an ordered list of variable names)
//! and a map from exponent vectors to non-zero coefficients. Exponents are
//! signed so that Laurent polynomials such as the bivariate Ising polynomial
//! need no shifting.

mod subst;
mod text;

pub use subst::Substitution;
pub use text::{PolyJson, TermJson};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Ordered list of variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSpace(Arc<[String]>);

impl VarSpace {
    pub fn new<I, S>(names: I) -> VarSpace
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarSpace(names.into_iter().map(Into::into).collect())
    }

    /// Variables of the order-`q` homomorphism polynomial: `x1..xq`, then
    /// `y{i}_{j}` for `1 <= i <= j <= q` in row-major order. There are
    /// `2q + C(q, 2)` of them.
    pub fn homomorphism(q: usize) -> VarSpace {
        let mut names: Vec<String> = (1..=q).map(|i| format!("x{i}")).collect();
        for i in 1..=q {
            for j in i..=q {
                names.push(format!("y{i}_{j}"));
            }
        }
        VarSpace::new(names)
    }

    /// Recovers `q` when this is exactly [`VarSpace::homomorphism`]`(q)`.
    pub fn homomorphism_order(&self) -> Option<usize> {
        let len = self.len();
        let q = (1..=len).find(|&q| 2 * q + q * (q - 1) / 2 >= len)?;
        (2 * q + q * (q - 1) / 2 == len && *self == VarSpace::homomorphism(q)).then_some(q)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl fmt::Debug for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Index of `y_{i,j}` (1-based, `i <= j`) inside [`VarSpace::homomorphism`]`(q)`.
pub fn y_index(q: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows 1..i-1 hold q, q-1, ..., q-i+2 entries
    let before: usize = (1..i).map(|r| q - r + 1).sum();
    q + before + (j - i)
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the exponent vectors compared left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    space: VarSpace,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(space: &VarSpace) -> Polynomial {
        Polynomial {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &VarSpace, c: impl Into<BigInt>) -> Polynomial {
        Polynomial::monomial(space, vec![0; space.len()], c)
    }

    pub fn one(space: &VarSpace) -> Polynomial {
        Polynomial::constant(space, 1)
    }

    /// The single variable `name`.
    pub fn var(space: &VarSpace, name: &str) -> Result<Polynomial> {
        let i = space
            .index(name)
            .ok_or_else(|| Error::Invalid(format!("no variable {name} in {space:?}")))?;
        let mut e = vec![0; space.len()];
        e[i] = 1;
        Ok(Polynomial::monomial(space, e, 1))
    }

    pub fn monomial(space: &VarSpace, exps: Vec<i32>, c: impl Into<BigInt>) -> Polynomial {
        assert_eq!(exps.len(), space.len(), "exponent vector length");
        let mut p = Polynomial::zero(space);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// Sums the given terms, merging repeats and dropping zeros.
    pub fn from_terms<I, C>(space: &VarSpace, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Polynomial::zero(space);
        for (e, c) in terms {
            assert_eq!(e.len(), space.len(), "exponent vector length");
            p.add_term(Monomial(e), c.into());
        }
        p
    }

    /// Univariate polynomial `sum coeffs[i] * var^i` in a one-variable space.
    pub fn univariate<C: Into<BigInt>>(var: &str, coeffs: impl IntoIterator<Item = C>) -> Polynomial {
        let space = VarSpace::new([var]);
        Polynomial::from_terms(&space, coeffs.into_iter().enumerate().map(|(i, c)| (vec![i as i32], c)))
    }

    /// Builds from terms whose exponent vectors are pairwise distinct and
    /// whose coefficients are nonzero. Sorts once instead of inserting.
    pub(crate) fn from_distinct_terms(space: &VarSpace, terms: Vec<(Vec<i32>, BigInt)>) -> Polynomial {
        let mut keyed: Vec<(i64, Monomial, BigInt)> = terms
            .into_iter()
            .map(|(e, c)| {
                debug_assert_eq!(e.len(), space.len());
                debug_assert!(!c.is_zero());
                let m = Monomial(e);
                (m.degree(), m, c)
            })
            .collect();
        keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1 .0.cmp(&b.1 .0)));
        Polynomial {
            space: space.clone(),
            terms: keyed.into_iter().map(|(_, m, c)| (m, c)).collect(),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of non-zero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> BigInt {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_default()
    }

    /// Coefficient of the monomial described by `(name, exponent)` pairs.
    pub fn coefficient_of(&self, factors: &[(&str, i32)]) -> Result<BigInt> {
        let mut e = vec![0; self.space.len()];
        for &(name, k) in factors {
            let i = self
                .space
                .index(name)
                .ok_or_else(|| Error::Invalid(format!("no variable {name}")))?;
            e[i] += k;
        }
        Ok(self.coefficient(&e))
    }

    /// Sum of all coefficients (the value at all variables equal to 1).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn check_space(&self, other: &Polynomial) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(
                self.space.names().join(","),
                other.space.names().join(","),
            ))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_space(other)?;
        let mut out = Polynomial::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero(&self.space);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.space);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit monomial (`±1` times a single exponent vector).
    pub fn unit_inverse(&self) -> Option<Polynomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if c.abs() != BigInt::one() {
            return None;
        }
        let e = m.0.iter().map(|x| -x).collect();
        Some(Polynomial::monomial(&self.space, e, c.clone()))
    }

    /// Keeps exactly the terms with exponent 0 on every listed variable and
    /// removes those variables from the space. Unknown names are ignored.
    pub fn restrict_zero(&self, vars: &[&str]) -> Polynomial {
        let drop: Vec<usize> = vars.iter().filter_map(|v| self.space.index(v)).collect();
        let keep: Vec<usize> = (0..self.space.len()).filter(|i| !drop.contains(i)).collect();
        let space = VarSpace::new(keep.iter().map(|&i| self.space.names()[i].clone()));
        let mut out = Polynomial::zero(&space);
        for (m, c) in &self.terms {
            if drop.iter().all(|&i| m.0[i] == 0) {
                let e = keep.iter().map(|&i| m.0[i]).collect();
                out.terms.insert(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Evaluates at integer values, one per variable. A negative exponent is
    /// only allowed on a variable valued `±1`.
    pub fn evaluate(&self, values: &[BigInt]) -> Result<BigInt> {
        if values.len() != self.space.len() {
            return Err(Error::Invalid("one value per variable required".into()));
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (&e, v) in m.0.iter().zip(values) {
                if e < 0 && v.abs() != BigInt::one() {
                    return Err(Error::Substitution(format!("negative exponent at non-unit value {v}")));
                }
                t *= num_traits::pow(v.clone(), e.unsigned_abs() as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Dense coefficient list of a polynomial in the single variable `var`
    /// (index `i` holds the coefficient of `var^i`). Fails if any term
    /// involves another variable or a negative power.
    pub fn univariate_coeffs(&self, var: &str) -> Result<Vec<BigInt>> {
        let i = self
            .space
            .index(var)
            .ok_or_else(|| Error::Invalid(format!("no variable {var}")))?;
        let mut out: Vec<BigInt> = Vec::new();
        for (m, c) in &self.terms {
            let other = m.0.iter().enumerate().any(|(j, &e)| j != i && e != 0);
            if other || m.0[i] < 0 {
                return Err(Error::Invalid(format!("not a polynomial in {var} alone")));
            }
            let k = m.0[i] as usize;
            if out.len() <= k {
                out.resize(k + 1, BigInt::zero());
            }
            out[k] = c.clone();
        }
        Ok(out)
    }

    /// Same terms over a different space with the same number of variables.
    pub fn rename(&self, space: &VarSpace) -> Result<Polynomial> {
        if space.len() != self.space.len() {
            return Err(Error::SpaceMismatch(
                self.space.names().join(","),
                space.names().join(","),
            ));
        }
        Ok(Polynomial {
            space: space.clone(),
            terms: self.terms.clone(),
        })
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("adding polynomials over different spaces")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs)
            .expect("subtracting polynomials over different spaces")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs)
            .expect("multiplying polynomials over different spaces")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&BigInt::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xs() -> VarSpace {
        VarSpace::new(["x1", "x2"])
    }

    fn v(name: &str) -> Polynomial {
        Polynomial::var(&xs(), name).unwrap()
    }

    #[test]
    fn var_count() {
        for q in 2..7 {
            assert_eq!(VarSpace::homomorphism(q).len(), 2 * q + q * (q - 1) / 2);
            assert_eq!(VarSpace::homomorphism(q).homomorphism_order(), Some(q));
        }
        assert_eq!(xs().homomorphism_order(), None);
        let s = VarSpace::homomorphism(3);
        assert_eq!(s.names()[y_index(3, 2, 3)], "y2_3");
        assert_eq!(s.names()[y_index(3, 3, 1)], "y1_3");
        assert_eq!(s.names()[y_index(3, 3, 3)], "y3_3");
    }

    #[test]
    fn products() {
        let s = &v("x1") + &v("x2");
        let sq = &s * &s;
        assert_eq!(sq.canonical_text(), "1*x1^2 + 2*x1^1*x2^1 + 1*x2^2");
        assert!((&s * &Polynomial::zero(&xs())).is_zero());
        let d = &v("x1") - &v("x2");
        assert_eq!((&d * &s).canonical_text(), "1*x1^2 + -1*x2^2");
    }

    #[test]
    fn space_mismatch() {
        let other = Polynomial::var(&VarSpace::new(["x1"]), "x1").unwrap();
        assert!(matches!(v("x1").try_add(&other), Err(Error::SpaceMismatch(..))));
        assert!(v("x1").try_mul(&other).is_err());
    }

    #[test]
    fn restrict() {
        let s = &v("x1") + &v("x2");
        let r = s.restrict_zero(&["x2"]);
        assert_eq!(r.space().names(), ["x1"]);
        assert_eq!(r.canonical_text(), "1*x1^1");
        assert_eq!(s.restrict_zero(&[]), s);
    }

    #[test]
    fn evaluation_and_units() {
        let p = Polynomial::from_terms(&xs(), [(vec![2, -1], 3), (vec![0, 0], 1)]);
        let val = p.evaluate(&[BigInt::from(2), BigInt::from(-1)]).unwrap();
        assert_eq!(val, BigInt::from(-11));
        assert!(p.evaluate(&[BigInt::from(2), BigInt::from(2)]).is_err());
        let m = Polynomial::monomial(&xs(), vec![1, -2], -1);
        assert_eq!((&m * &m.unit_inverse().unwrap()), Polynomial::one(&xs()));
        assert!(p.unit_inverse().is_none());
    }

    #[test]
    fn univariate_round_trip() {
        let p = Polynomial::univariate("k", [0, -1, 1]);
        assert_eq!(p.canonical_text(), "1*k^2 + -1*k^1");
        assert_eq!(
            p.univariate_coeffs("k").unwrap(),
            vec![BigInt::from(0), BigInt::from(-1), BigInt::from(1)]
        );
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((-2i32..3, -2i32..3, 0i32..3), -5i64..6), 0..6).prop_map(|ts| {
            let s = VarSpace::new(["a", "b", "c"]);
            Polynomial::from_terms(&s, ts.into_iter().map(|((x, y, z), c)| (vec![x, y, z], c)))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn text_is_order_independent(a in small_poly(), b in small_poly(), c in small_poly()) {
            let one = &(&a + &b) + &c;
            let two = &c + &(&b + &a);
            prop_assert_eq!(one.canonical_text(), two.canonical_text());
            prop_assert_eq!(one.canonical_text() == a.canonical_text(), one == a);
        }
    }
}
