//! The quadratic Lie algebra `L_r = S²(H[t,t⁻¹]) ⊕ ℂ` with the deformed bracket.
//!
//! Elements are combinations of normal-ordered quadratics `:v^i(m) v^j(n):`
//! plus a central part. The bracket is evaluated in the undeformed
//! Heisenberg algebra at level one by Wick contraction and the scalar part
//! of the result is then multiplied by `r`. This is equivalent to the
//! `(1/r)`-rescaled commutator at level `r` and never divides by `r`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::scalar::{int, Rational, Scalar};

/// A Heisenberg generator `v^{(index)}(mode) = v^{(index)} t^mode`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Oscillator {
    pub index: u16,
    pub mode: i32,
}

impl Oscillator {
    pub fn new(index: u16, mode: i32) -> Self {
        Self { index, mode }
    }

    /// `[self, other]` at level one for an orthonormal basis of `H`.
    pub fn contract(self, other: Oscillator) -> i64 {
        if self.index == other.index && self.mode + other.mode == 0 {
            i64::from(self.mode)
        } else {
            0
        }
    }
}

/// Basis element `:v^i(m) v^j(n):` of `L_r'`.
///
/// Either `i < j` with arbitrary modes, or `i == j` with `m <= n`. Ordering
/// is lexicographic in `(i, j, m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalQuadratic {
    i: u16,
    j: u16,
    m: i32,
    n: i32,
}

impl NormalQuadratic {
    /// Returns `None` unless the arguments already satisfy the basis convention.
    pub fn new(i: u16, m: i32, j: u16, n: i32) -> Option<Self> {
        (i < j || (i == j && m <= n)).then_some(Self { i, j, m, n })
    }

    /// Orders the two factors of a product. The second component is the
    /// level-one central correction picked up by swapping equal-index factors.
    pub fn order(a: Oscillator, b: Oscillator) -> (Self, i64) {
        let swap = a.index > b.index || (a.index == b.index && a.mode > b.mode);
        let (x, y) = if swap { (b, a) } else { (a, b) };
        let correction = if swap { a.contract(b) } else { 0 };
        (
            Self {
                i: x.index,
                j: y.index,
                m: x.mode,
                n: y.mode,
            },
            correction,
        )
    }

    pub fn i(&self) -> u16 {
        self.i
    }

    pub fn j(&self) -> u16 {
        self.j
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn left(&self) -> Oscillator {
        Oscillator::new(self.i, self.m)
    }

    pub fn right(&self) -> Oscillator {
        Oscillator::new(self.j, self.n)
    }

    /// Conformal weight `-m-n`.
    pub fn degree(&self) -> i64 {
        -(i64::from(self.m) + i64::from(self.n))
    }

    /// Both modes strictly negative, i.e. an element of `L_r⁻`.
    pub fn is_creation(&self) -> bool {
        self.m < 0 && self.n < 0
    }

    pub fn max_index(&self) -> u16 {
        self.j
    }
}

impl fmt::Display for NormalQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, ":v{}({})v{}({}):", self.i, self.m, self.j, self.n)
    }
}

/// Finite combination of normal-ordered quadratics plus a central scalar.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    quadratic: BTreeMap<NormalQuadratic, Scalar>,
    central: Scalar,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(q: NormalQuadratic) -> Self {
        let mut e = Self::zero();
        e.add_quadratic(q, &Scalar::one());
        e
    }

    pub fn central(value: Scalar) -> Self {
        Self {
            quadratic: BTreeMap::new(),
            central: value,
        }
    }

    pub fn quadratic_terms(&self) -> impl Iterator<Item = (&NormalQuadratic, &Scalar)> {
        self.quadratic.iter()
    }

    pub fn coefficient(&self, q: &NormalQuadratic) -> Scalar {
        self.quadratic.get(q).cloned().unwrap_or_default()
    }

    pub fn central_part(&self) -> &Scalar {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.quadratic.is_empty() && self.central.is_zero()
    }

    pub fn add_quadratic(&mut self, q: NormalQuadratic, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.quadratic.entry(q).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.quadratic.remove(&q);
        }
    }

    pub fn add_central(&mut self, value: &Scalar) {
        self.central += value;
    }

    pub fn add_scaled(&mut self, other: &LieElement, coeff: &Scalar) {
        for (q, c) in &other.quadratic {
            self.add_quadratic(*q, &(c * coeff));
        }
        self.central += &(&other.central * coeff);
    }

    pub fn scaled(&self, coeff: &Scalar) -> LieElement {
        let mut out = LieElement::zero();
        out.add_scaled(self, coeff);
        out
    }

    pub fn sum(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn difference(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_i64(-1));
        out
    }

    fn max_index(&self) -> u16 {
        self.quadratic
            .keys()
            .map(NormalQuadratic::max_index)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self
            .quadratic
            .iter()
            .map(|(q, c)| format!("({c}){q}"))
            .collect();
        if !self.central.is_zero() {
            parts.push(format!("({})", self.central));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// The two halves of the triangular decomposition `L_r = L_r⁻ ⊕ L_r⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSplit {
    pub creation: LieElement,
    pub annihilation_or_mixed: LieElement,
}

/// Deliberate bracket corruption used to exercise failure reporting.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketFault {
    /// Multiply every central contribution by the given factor.
    ScaleCentral(i64),
}

/// `L_r` for a fixed rank `d` of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedLie {
    d: usize,
    fault: Option<BracketFault>,
}

impl DeformedLie {
    pub fn new(d: usize) -> Result<Self, AlgebraError> {
        if d == 0 {
            return Err(AlgebraError::EmptyDimension);
        }
        Ok(Self { d, fault: None })
    }

    #[doc(hidden)]
    pub fn with_fault(mut self, fault: BracketFault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn check_index(&self, index: usize) -> Result<(), AlgebraError> {
        if index == 0 || index > self.d {
            return Err(AlgebraError::IndexOutOfRange { index, d: self.d });
        }
        Ok(())
    }

    fn check_element(&self, x: &LieElement) -> Result<(), AlgebraError> {
        let top = usize::from(x.max_index());
        if top > self.d {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.d,
                found: top,
            });
        }
        Ok(())
    }

    /// The central value `r · c₁` of a level-one scalar `c₁`.
    pub(crate) fn deform_central(&self, level_one: &Rational) -> Scalar {
        let value = match self.fault {
            Some(BracketFault::ScaleCentral(k)) => level_one * int(k),
            None => level_one.clone(),
        };
        Scalar::monomial(value, 1)
    }

    /// Expands the ordered product `v^i(m) v^j(n)` in the basis.
    pub fn normalize_quadratic(
        &self,
        i: usize,
        m: i32,
        j: usize,
        n: i32,
    ) -> Result<LieElement, AlgebraError> {
        self.check_index(i)?;
        self.check_index(j)?;
        let (q, correction) =
            NormalQuadratic::order(Oscillator::new(i as u16, m), Oscillator::new(j as u16, n));
        let mut out = LieElement::basis(q);
        out.add_central(&self.deform_central(&int(correction)));
        Ok(out)
    }

    /// Level-one commutator of two basis quadratics, before deformation:
    /// `[xy, zw] = [y,z]xw + [y,w]xz + [x,z]wy + [x,w]zy`, each product
    /// re-ordered into the basis.
    pub(crate) fn bracket_level_one(
        a: &NormalQuadratic,
        b: &NormalQuadratic,
    ) -> (Vec<(NormalQuadratic, i64)>, i64) {
        let (x, y) = (a.left(), a.right());
        let (z, w) = (b.left(), b.right());
        let contractions = [
            (y.contract(z), x, w),
            (y.contract(w), x, z),
            (x.contract(z), w, y),
            (x.contract(w), z, y),
        ];
        let mut terms: Vec<(NormalQuadratic, i64)> = Vec::with_capacity(4);
        let mut central = 0;
        for (k, p, q) in contractions {
            if k == 0 {
                continue;
            }
            let (nq, corr) = NormalQuadratic::order(p, q);
            central += k * corr;
            match terms.iter_mut().find(|(t, _)| *t == nq) {
                Some((_, c)) => *c += k,
                None => terms.push((nq, k)),
            }
        }
        terms.retain(|(_, c)| *c != 0);
        (terms, central)
    }

    /// Deformed bracket of two basis quadratics.
    pub fn bracket_basis(&self, a: &NormalQuadratic, b: &NormalQuadratic) -> LieElement {
        let (terms, central) = Self::bracket_level_one(a, b);
        let mut out = LieElement::zero();
        for (q, c) in terms {
            out.add_quadratic(q, &Scalar::from_i64(c));
        }
        if central != 0 {
            out.add_central(&self.deform_central(&int(central)));
        }
        out
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, AlgebraError> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = LieElement::zero();
        for (qa, ca) in &a.quadratic {
            for (qb, cb) in &b.quadratic {
                out.add_scaled(&self.bracket_basis(qa, qb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn split_sign(&self, x: &LieElement) -> SignSplit {
        let mut creation = LieElement::zero();
        let mut rest = LieElement::central(x.central.clone());
        for (q, c) in &x.quadratic {
            if q.is_creation() {
                creation.add_quadratic(*q, c);
            } else {
                rest.add_quadratic(*q, c);
            }
        }
        SignSplit {
            creation,
            annihilation_or_mixed: rest,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: u16, m: i32, j: u16, n: i32) -> NormalQuadratic {
        NormalQuadratic::new(i, m, j, n).unwrap()
    }

    fn lie() -> DeformedLie {
        DeformedLie::new(2).unwrap()
    }

    #[test]
    fn normalize_reorders_without_correction() {
        let e = lie().normalize_quadratic(1, -1, 1, -2).unwrap();
        assert_eq!(e, LieElement::basis(q(1, -2, 1, -1)));
    }

    #[test]
    fn normalize_distinct_indices_commute() {
        let e = lie().normalize_quadratic(2, 5, 1, 3).unwrap();
        assert_eq!(e, LieElement::basis(q(1, 3, 2, 5)));
    }

    #[test]
    fn normalize_swap_picks_up_deformed_central_term() {
        let e = lie().normalize_quadratic(1, 2, 1, -2).unwrap();
        let mut expected = LieElement::basis(q(1, -2, 1, 2));
        expected.add_central(&Scalar::r().scale(&int(2)));
        assert_eq!(e, expected);
    }

    #[test]
    fn normalize_rejects_bad_index() {
        assert_eq!(
            lie().normalize_quadratic(3, 0, 1, 0),
            Err(AlgebraError::IndexOutOfRange { index: 3, d: 2 })
        );
        assert!(DeformedLie::new(0).is_err());
    }

    #[test]
    fn central_elements_bracket_to_zero() {
        let c = LieElement::central(Scalar::one());
        let x = LieElement::basis(q(1, -1, 2, 3));
        assert!(lie().bracket(&c, &x).unwrap().is_zero());
        assert!(lie().bracket(&x, &c).unwrap().is_zero());
    }

    #[test]
    fn raising_against_lowering_pair() {
        let a = LieElement::basis(q(1, 1, 1, 1));
        let b = LieElement::basis(q(1, -1, 1, -1));
        let got = lie().bracket(&a, &b).unwrap();
        let mut expected = LieElement::basis(q(1, -1, 1, 1)).scaled(&Scalar::from_i64(4));
        expected.add_central(&Scalar::r().scale(&int(2)));
        assert_eq!(got, expected);
    }

    #[test]
    fn zero_modes_are_central_like() {
        let a = LieElement::basis(q(1, 0, 1, 0));
        let b = LieElement::basis(q(1, -1, 1, -1));
        assert!(lie().bracket(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_foreign_indices() {
        let a = LieElement::basis(q(1, 0, 3, 0));
        assert!(lie().bracket(&a, &a).is_err());
    }

    #[test]
    fn split_by_sign() {
        let l = lie();
        let creation = LieElement::basis(q(1, -1, 1, -1));
        assert_eq!(l.split_sign(&creation).creation, creation);
        let mixed = LieElement::basis(q(1, -3, 1, 1));
        let split = l.split_sign(&mixed);
        assert!(split.creation.is_zero());
        assert_eq!(split.annihilation_or_mixed, mixed);

        let mut x = LieElement::basis(q(1, -1, 1, 1)).scaled(&Scalar::from_i64(4));
        x.add_central(&Scalar::r().scale(&int(2)));
        let split = l.split_sign(&x);
        assert!(split.creation.is_zero());
        assert_eq!(split.annihilation_or_mixed, x);
    }
}
