//! The vacuum module `M_r = U(L_r⁻)·1`.
//!
//! `L_r⁻` is commutative, so `M_r` is the symmetric algebra on the creation
//! quadratics and a basis vector is a sorted multiset of them. Everything
//! else in `L_r` acts by commuting through the factors left to right until
//! it reaches the vacuum, which it annihilates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use dashmap::DashMap;

use crate::error::AlgebraError;
use crate::lie::{DeformedLie, LieElement, NormalQuadratic};
use crate::scalar::{Rational, Scalar};

/// Sorted multiset of creation quadratics; empty is the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockMonomial {
    factors: Vec<NormalQuadratic>,
}

impl FockMonomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Sorts the factors. Returns `None` if any factor is not a creation quadratic.
    pub fn new(mut factors: Vec<NormalQuadratic>) -> Option<Self> {
        if !factors.iter().all(NormalQuadratic::is_creation) {
            return None;
        }
        factors.sort_unstable();
        Some(Self { factors })
    }

    pub fn factors(&self) -> &[NormalQuadratic] {
        &self.factors
    }

    pub fn is_vacuum(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(NormalQuadratic::degree).sum()
    }

    pub fn with_factor(&self, q: NormalQuadratic) -> Self {
        debug_assert!(q.is_creation());
        let pos = self.factors.partition_point(|f| *f <= q);
        let mut factors = Vec::with_capacity(self.factors.len() + 1);
        factors.extend_from_slice(&self.factors[..pos]);
        factors.push(q);
        factors.extend_from_slice(&self.factors[pos..]);
        Self { factors }
    }

    /// Product in the symmetric algebra.
    pub fn product(&self, other: &FockMonomial) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort_unstable();
        Self { factors }
    }

    fn split_first(&self) -> Option<(NormalQuadratic, FockMonomial)> {
        let (first, rest) = self.factors.split_first()?;
        Some((
            *first,
            FockMonomial {
                factors: rest.to_vec(),
            },
        ))
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in &self.factors {
            write!(f, "{q}")?;
        }
        f.write_str("1")
    }
}

/// Scalar combination of Fock monomials. Not necessarily homogeneous.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<FockMonomial, Scalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::from_monomial(FockMonomial::vacuum())
    }

    pub fn from_monomial(m: FockMonomial) -> Self {
        Self::from_term(m, Scalar::one())
    }

    pub fn from_term(m: FockMonomial, coeff: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(m, &coeff);
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &FockMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn vacuum_coefficient(&self) -> Scalar {
        self.coefficient(&FockMonomial::vacuum())
    }

    pub fn leading_monomial(&self) -> Option<&FockMonomial> {
        self.terms.keys().next()
    }

    pub fn add_term(&mut self, m: FockMonomial, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        let unit = coeff.is_one();
        for (m, c) in &other.terms {
            if unit {
                self.add_term(m.clone(), c);
            } else {
                self.add_term(m.clone(), &(c * coeff));
            }
        }
    }

    pub fn scaled(&self, coeff: &Scalar) -> FockVector {
        let mut out = FockVector::zero();
        out.add_scaled(self, coeff);
        out
    }

    pub fn sum(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn difference(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_i64(-1));
        out
    }

    /// Multiplication by a creation quadratic.
    pub fn times_creation(&self, q: NormalQuadratic) -> FockVector {
        FockVector {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with_factor(q), c.clone()))
                .collect(),
        }
    }

    /// Product in the symmetric algebra `S(L_r⁻)`.
    pub fn product(&self, other: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.product(b), &(ca * cb));
            }
        }
        out
    }

    /// Common degree of all terms; `None` if empty or mixed.
    pub fn weight(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(FockMonomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.terms.keys().map(FockMonomial::degree).max()
    }

    pub fn weight_decompose(&self) -> BTreeMap<i64, FockVector> {
        let mut out: BTreeMap<i64, FockVector> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(m.clone(), c);
        }
        out
    }

    pub fn specialize(&self, value: &Rational) -> FockVector {
        let mut out = FockVector::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &Scalar::constant(c.specialize(value)));
        }
        out
    }

    /// Multiplies every coefficient so the result has no common polynomial
    /// factor and a monic leading coefficient.
    pub(crate) fn primitive(&self) -> FockVector {
        let content = self
            .terms
            .values()
            .fold(Scalar::zero(), |acc, c| Scalar::gcd(&acc, c));
        if content.is_zero() {
            return self.clone();
        }
        let mut out = FockVector {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.exact_div(&content).expect("content divides")))
                .collect(),
        };
        if let Some(lc) = out
            .terms
            .values()
            .next()
            .and_then(|c| c.leading_coeff().cloned())
        {
            let inv = Scalar::constant(lc.recip());
            out = out.scaled(&inv);
        }
        out
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c}){m}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

type ActKey = (NormalQuadratic, FockMonomial);

/// `M_r` over a fixed `d`, with memoized bases and quadratic action.
pub struct FockSpace {
    lie: DeformedLie,
    bases: Mutex<HashMap<usize, Arc<Vec<FockMonomial>>>>,
    actions: DashMap<ActKey, Arc<FockVector>>,
}

impl fmt::Debug for FockSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockSpace").field("lie", &self.lie).finish()
    }
}

impl FockSpace {
    pub fn new(lie: DeformedLie) -> Self {
        Self {
            lie,
            bases: Mutex::new(HashMap::new()),
            actions: DashMap::new(),
        }
    }

    pub fn with_dim(d: usize) -> Result<Self, AlgebraError> {
        Ok(Self::new(DeformedLie::new(d)?))
    }

    pub fn lie(&self) -> &DeformedLie {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    /// Creation quadratics of degree exactly `s`, in canonical order.
    pub fn creation_quadratics(&self, s: i64) -> Vec<NormalQuadratic> {
        let d = self.dim() as u16;
        let s = s as i32;
        let mut out = Vec::new();
        for i in 1..=d {
            for j in i..=d {
                for m in -(s - 1)..=-1 {
                    let n = -s - m;
                    if n > -1 {
                        continue;
                    }
                    if let Some(q) = NormalQuadratic::new(i, m, j, n) {
                        out.push(q);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Monomial basis of `(M_r)_weight`, sorted.
    pub fn basis_of_weight(&self, weight: usize) -> Arc<Vec<FockMonomial>> {
        if let Some(hit) = self
            .bases
            .lock()
            .expect("basis cache poisoned")
            .get(&weight)
        {
            return Arc::clone(hit);
        }
        let mut generators: Vec<NormalQuadratic> = (2..=weight as i64)
            .flat_map(|s| self.creation_quadratics(s))
            .collect();
        generators.sort_unstable();

        let mut out = Vec::new();
        let mut stack = Vec::new();
        enumerate_multisets(&generators, 0, weight as i64, &mut stack, &mut out);
        out.sort_unstable();
        let out = Arc::new(out);
        self.bases
            .lock()
            .expect("basis cache poisoned")
            .insert(weight, Arc::clone(&out));
        out
    }

    pub fn dim_of_weight(&self, weight: usize) -> usize {
        self.basis_of_weight(weight).len()
    }

    /// Action of a Lie element on a Fock vector.
    pub fn act(&self, x: &LieElement, v: &FockVector) -> FockVector {
        let mut out = v.scaled(x.central_part());
        for (q, c) in x.quadratic_terms() {
            for (m, cm) in v.terms() {
                out.add_scaled(&self.act_quadratic(*q, m), &(c * cm));
            }
        }
        out
    }

    /// Action of a single basis quadratic on a basis monomial.
    pub fn act_quadratic(&self, q: NormalQuadratic, m: &FockMonomial) -> Arc<FockVector> {
        if q.is_creation() {
            return Arc::new(FockVector::from_monomial(m.with_factor(q)));
        }
        if !can_contract(&q, m) {
            return Arc::new(FockVector::zero());
        }
        let key = (q, m.clone());
        if let Some(hit) = self.actions.get(&key) {
            return Arc::clone(hit.value());
        }
        let result = Arc::new(self.act_uncached(q, m));
        self.actions.insert(key, Arc::clone(&result));
        result
    }

    fn act_uncached(&self, q: NormalQuadratic, m: &FockMonomial) -> FockVector {
        let Some((first, rest)) = m.split_first() else {
            return FockVector::zero();
        };
        // q (u w) = u (q w) + [q, u] w
        let mut out = self.act_quadratic(q, &rest).times_creation(first);
        let commutator = self.lie.bracket_basis(&q, &first);
        for (t, c) in commutator.quadratic_terms() {
            out.add_scaled(&self.act_quadratic(*t, &rest), c);
        }
        out.add_term(rest, commutator.central_part());
        out
    }

    /// Number of memoized (quadratic, monomial) actions.
    pub fn cached_actions(&self) -> usize {
        self.actions.len()
    }
}

/// Cheap necessary condition for a non-creation quadratic to act nontrivially:
/// every non-negative mode must find a partner `-p` among the factors.
fn can_contract(q: &NormalQuadratic, m: &FockMonomial) -> bool {
    [q.left(), q.right()].into_iter().all(|o| {
        if o.mode < 0 {
            return true;
        }
        o.mode > 0
            && m.factors().iter().any(|f| {
                [f.left(), f.right()]
                    .into_iter()
                    .any(|g| g.index == o.index && g.mode == -o.mode)
            })
    })
}

fn enumerate_multisets(
    generators: &[NormalQuadratic],
    start: usize,
    remaining: i64,
    stack: &mut Vec<NormalQuadratic>,
    out: &mut Vec<FockMonomial>,
) {
    if remaining == 0 {
        out.push(FockMonomial {
            factors: stack.clone(),
        });
        return;
    }
    for (k, g) in generators.iter().enumerate().skip(start) {
        let deg = g.degree();
        if deg > remaining {
            continue;
        }
        stack.push(*g);
        enumerate_multisets(generators, k, remaining - deg, stack, out);
        stack.pop();
    }
}
