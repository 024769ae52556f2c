//! Sugawara-type mode operators `L^{ij}(n)` on `M_r` and sweeps that check
//! their commutation relations, locality, grading and translation covariance.
//!
//! `L^{ij}(n) = ½ Σ_h :v^i(n-h) v^j(h):`. For `i == j` this collapses to
//! coefficient 1 on `:v(p)v(q):` with `p < q` and ½ on `:v(n/2)v(n/2):`.
//! On a vector of weight `N` only `h ∈ [n-N, N]` can contribute, so every
//! application is a finite exact sum.

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num::{One, Zero};

use crate::check::{CaseOutcome, IdentityCheck, RMode, VerificationReport, Witness};
use crate::error::AlgebraError;
use crate::fock::{FockMonomial, FockSpace, FockVector};
use crate::lie::{DeformedLie, LieElement, NormalQuadratic, Oscillator};
use crate::scalar::{int, ratio, Rational, Scalar};

/// `L^{ij}(n)` with `i <= j`. `L^{ij} = L^{ji}`, so construction sorts the indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeSymbol {
    pub i: u16,
    pub j: u16,
    pub n: i32,
}

impl ModeSymbol {
    pub fn new(i: u16, j: u16, n: i32) -> Self {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        Self { i, j, n }
    }

    pub fn with_mode(self, n: i32) -> Self {
        Self { n, ..self }
    }

    /// The adjoint `L^{ij}(-n)` under the invariant form.
    pub fn adjoint(self) -> Self {
        self.with_mode(-self.n)
    }

    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }

    pub fn indices(&self) -> [u16; 2] {
        [self.i, self.j]
    }
}

impl fmt::Display for ModeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[{},{}]({})", self.i, self.j, self.n)
    }
}

/// Linear combination of modes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModeOperator {
    terms: Vec<(ModeSymbol, Rational)>,
}

impl ModeOperator {
    pub fn single(s: ModeSymbol) -> Self {
        Self {
            terms: vec![(s, Rational::one())],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ModeSymbol, Rational)>) -> Self {
        let mut op = Self::default();
        for (s, c) in terms {
            op.add(s, &c);
        }
        op
    }

    /// `L(n) = Σ_i L^{ii}(n)`.
    pub fn virasoro(d: usize, n: i32) -> Self {
        Self::from_terms((1..=d as u16).map(|i| (ModeSymbol::new(i, i, n), Rational::one())))
    }

    pub fn add(&mut self, s: ModeSymbol, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.iter_mut().position(|(t, _)| *t == s) {
            Some(k) => {
                self.terms[k].1 += c;
                if self.terms[k].1.is_zero() {
                    self.terms.remove(k);
                }
            }
            None => self.terms.push((s, c.clone())),
        }
    }

    pub fn terms(&self) -> &[(ModeSymbol, Rational)] {
        &self.terms
    }

    pub fn adjoint(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.adjoint(), c.clone()))
                .collect(),
        }
    }
}

/// `L^{s_1}(n_1) ⋯ L^{s_k}(n_k) 1`, stored leftmost first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeWord {
    modes: Vec<ModeSymbol>,
}

impl ModeWord {
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn new(modes: Vec<ModeSymbol>) -> Self {
        Self { modes }
    }

    pub fn modes(&self) -> &[ModeSymbol] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// `L(n)1 = 0` for `n >= -1`, so such words are the zero vector.
    pub fn is_zero(&self) -> bool {
        self.modes.last().is_some_and(|s| s.n >= -1)
    }

    pub fn weight(&self) -> i64 {
        -self.modes.iter().map(|s| i64::from(s.n)).sum::<i64>()
    }

    /// `L^s(n) · self`.
    pub fn prepend(&self, s: ModeSymbol) -> Self {
        let mut modes = Vec::with_capacity(self.modes.len() + 1);
        modes.push(s);
        modes.extend_from_slice(&self.modes);
        Self { modes }
    }
}

impl fmt::Display for ModeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.modes {
            write!(f, "{s}")?;
        }
        f.write_str("1")
    }
}

/// Mode operators over `M_r` for fixed `d`, with a per-(mode, monomial) cache.
#[derive(Debug)]
pub struct Sugawara {
    fock: FockSpace,
    cache: DashMap<(ModeSymbol, FockMonomial), Arc<FockVector>>,
}

impl Sugawara {
    pub fn new(d: usize) -> Result<Self, AlgebraError> {
        Ok(Self::from_lie(DeformedLie::new(d)?))
    }

    pub fn from_lie(lie: DeformedLie) -> Self {
        Self {
            fock: FockSpace::new(lie),
            cache: DashMap::new(),
        }
    }

    pub fn fock(&self) -> &FockSpace {
        &self.fock
    }

    pub fn dim(&self) -> usize {
        self.fock.dim()
    }

    /// Validated constructor for user-supplied indices.
    pub fn symbol(&self, i: usize, j: usize, n: i32) -> Result<ModeSymbol, AlgebraError> {
        self.fock.lie().check_index(i)?;
        self.fock.lie().check_index(j)?;
        Ok(ModeSymbol::new(i as u16, j as u16, n))
    }

    /// All index pairs `i <= j`, in order.
    pub fn index_pairs(&self) -> Vec<(u16, u16)> {
        let d = self.dim() as u16;
        (1..=d).flat_map(|i| (i..=d).map(move |j| (i, j))).collect()
    }

    /// Quadratics of `L^{ij}(n)` that can act on a vector of weight at most
    /// `weight`. Terms containing a zero mode are dropped; they act as zero.
    pub fn mode_terms(&self, s: ModeSymbol, weight: i64) -> Vec<(NormalQuadratic, Rational)> {
        let n = s.n;
        let top = weight as i32;
        let mut out = Vec::new();
        if s.is_diagonal() {
            let half = ratio(1, 2);
            for q in n.div_euclid(2) + n.rem_euclid(2)..=top {
                let p = n - q;
                if p == 0 || q == 0 {
                    continue;
                }
                let quad = NormalQuadratic::new(s.i, p, s.i, q).expect("p <= q by construction");
                out.push((
                    quad,
                    if p == q {
                        half.clone()
                    } else {
                        Rational::one()
                    },
                ));
            }
        } else {
            for h in n - top..=top {
                let p = n - h;
                if p == 0 || h == 0 {
                    continue;
                }
                let quad = NormalQuadratic::new(s.i, p, s.j, h).expect("i < j");
                out.push((quad, ratio(1, 2)));
            }
        }
        out
    }

    /// `L^{ij}(n)` exactly as the two-sum definition reads, restricted to
    /// `h ∈ [lo, hi]`, with every product re-ordered through the Lie algebra.
    pub fn literal_mode_element(&self, s: ModeSymbol, lo: i32, hi: i32) -> LieElement {
        let lie = self.fock.lie();
        let half = Scalar::constant(ratio(1, 2));
        let mut out = LieElement::zero();
        let (i, j, n) = (usize::from(s.i), usize::from(s.j), s.n);
        for h in lo..=hi {
            if s.is_diagonal() {
                if n - h <= h {
                    out.add_scaled(&lie.normalize_quadratic(i, n - h, i, h).unwrap(), &half);
                }
                if h < n - h {
                    out.add_scaled(&lie.normalize_quadratic(i, h, i, n - h).unwrap(), &half);
                }
            } else {
                out.add_scaled(&lie.normalize_quadratic(i, n - h, j, h).unwrap(), &half);
            }
        }
        out
    }

    pub fn mode_apply(&self, s: ModeSymbol, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.mode_apply_monomial(s, m), c);
        }
        out
    }

    pub fn mode_apply_monomial(&self, s: ModeSymbol, m: &FockMonomial) -> Arc<FockVector> {
        if m.is_vacuum() && s.n >= -1 {
            return Arc::new(FockVector::zero());
        }
        let key = (s, m.clone());
        if let Some(hit) = self.cache.get(&key) {
            return Arc::clone(hit.value());
        }
        let mut out = FockVector::zero();
        for (q, c) in self.mode_terms(s, m.degree()) {
            out.add_scaled(&self.fock.act_quadratic(q, m), &Scalar::constant(c));
        }
        let out = Arc::new(out);
        self.cache.insert(key, Arc::clone(&out));
        out
    }

    pub fn apply_operator(&self, op: &ModeOperator, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (s, c) in op.terms() {
            out.add_scaled(&self.mode_apply(*s, v), &Scalar::constant(c.clone()));
        }
        out
    }

    pub fn word_to_fock(&self, w: &ModeWord) -> FockVector {
        if w.is_zero() {
            return FockVector::zero();
        }
        w.modes()
            .iter()
            .rev()
            .fold(FockVector::vacuum(), |v, s| self.mode_apply(*s, &v))
    }

    /// Applies `Σ_h coeff(h) · v^i(total-h) v^j(h)` with the products
    /// normal-ordered, truncated to the window that can act on `v`.
    pub fn series_apply(
        &self,
        i: u16,
        j: u16,
        total: i32,
        coeff: impl Fn(i32) -> Rational,
        v: &FockVector,
    ) -> FockVector {
        let Some(top) = v.max_weight() else {
            return FockVector::zero();
        };
        let top = top as i32;
        let lie = self.fock.lie();
        let mut element = LieElement::zero();
        for h in total - top..=top {
            let c = coeff(h);
            if c.is_zero() {
                continue;
            }
            let (q, corr) =
                NormalQuadratic::order(Oscillator::new(i, total - h), Oscillator::new(j, h));
            let c = Scalar::constant(c);
            element.add_quadratic(q, &c);
            if corr != 0 {
                element.add_central(&(&lie.deform_central(&int(corr)) * &c));
            }
        }
        self.fock.act(&element, v)
    }

    /// `[a, b] v = a(b v) - b(a v)`.
    pub fn commutator(&self, a: &ModeOperator, b: &ModeOperator, v: &FockVector) -> FockVector {
        let ab = self.apply_operator(a, &self.apply_operator(b, v));
        let ba = self.apply_operator(b, &self.apply_operator(a, v));
        ab.difference(&ba)
    }

    /// All basis monomials of weights `0..=max_weight`.
    pub fn basis_up_to(&self, max_weight: usize) -> Vec<FockMonomial> {
        (0..=max_weight)
            .flat_map(|n| self.fock.basis_of_weight(n).to_vec())
            .collect()
    }
}

fn virasoro_central(m: i32, denominator: i64) -> Scalar {
    let m = i64::from(m);
    Scalar::monomial(ratio(m * m * m - m, denominator), 1)
}

fn compare(
    outcome: &mut CaseOutcome,
    rmode: &RMode,
    context: impl FnOnce() -> String,
    vector: &FockMonomial,
    lhs: &FockVector,
    rhs: &FockVector,
) {
    let ok = rmode.vanishes(&lhs.difference(rhs));
    outcome.record(ok, || Witness {
        context: context(),
        vector: vector.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    });
}

type Rhs = Box<dyn Fn(&Sugawara, &FockVector) -> FockVector + Send + Sync>;

struct CommutatorCase {
    a: ModeOperator,
    b: ModeOperator,
    label: String,
    rhs: Rhs,
}

fn run_commutator_cases(
    sug: &Sugawara,
    name: &str,
    cases: &[CommutatorCase],
    basis: &[FockMonomial],
    rmode: &RMode,
) -> IdentityCheck {
    IdentityCheck::sweep(name, cases, |case| {
        let mut out = CaseOutcome::default();
        for m in basis {
            let v = FockVector::from_monomial(m.clone());
            let lhs = sug.commutator(&case.a, &case.b, &v);
            let rhs = (case.rhs)(sug, &v);
            compare(&mut out, rmode, || case.label.clone(), m, &lhs, &rhs);
        }
        out
    })
}

fn mode_range(max_weight: usize) -> std::ops::RangeInclusive<i32> {
    let w = max_weight as i32;
    -w..=w
}

/// The six commutator formulas, checked on every basis vector of weight
/// `<= max_weight` for all `|m|, |n| <= max_weight`.
pub fn verify_commutators(sug: &Sugawara, max_weight: usize, rmode: &RMode) -> VerificationReport {
    let d = sug.dim() as u16;
    let basis = sug.basis_up_to(max_weight);
    let range = mode_range(max_weight);
    let single = |i, j, n| ModeOperator::single(ModeSymbol::new(i, j, n));
    let mut report = VerificationReport::default();

    // [L^ii(m), L^ii(n)] = (m-n) L^ii(m+n) + δ (m³-m)/12 r
    let mut cases = Vec::new();
    for i in 1..=d {
        for m in range.clone() {
            for n in range.clone() {
                cases.push(CommutatorCase {
                    a: single(i, i, m),
                    b: single(i, i, n),
                    label: format!("[L[{i},{i}]({m}), L[{i},{i}]({n})]"),
                    rhs: Box::new(move |sug, v| {
                        let mut out = sug
                            .mode_apply(ModeSymbol::new(i, i, m + n), v)
                            .scaled(&Scalar::from_i64(i64::from(m - n)));
                        if m + n == 0 {
                            out.add_scaled(v, &virasoro_central(m, 12));
                        }
                        out
                    }),
                });
            }
        }
    }
    report.checks.push(run_commutator_cases(
        sug,
        "diagonal Virasoro relation",
        &cases,
        &basis,
        rmode,
    ));

    // disjoint index sets commute
    let pairs = sug.index_pairs();
    let mut cases = Vec::new();
    for &(i, j) in &pairs {
        for &(s, t) in &pairs {
            if [i, j].iter().any(|x| *x == s || *x == t) {
                continue;
            }
            for m in range.clone() {
                for n in range.clone() {
                    cases.push(CommutatorCase {
                        a: single(i, j, m),
                        b: single(s, t, n),
                        label: format!("[L[{i},{j}]({m}), L[{s},{t}]({n})]"),
                        rhs: Box::new(|_, _| FockVector::zero()),
                    });
                }
            }
        }
    }
    report.checks.push(run_commutator_cases(
        sug,
        "disjoint indices commute",
        &cases,
        &basis,
        rmode,
    ));

    // [L^ii(m), L^ij(n)] = ½ Σ_k (m-k) :v^i(k) v^j(m+n-k):
    let mut cases = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            if i == j {
                continue;
            }
            for m in range.clone() {
                for n in range.clone() {
                    cases.push(CommutatorCase {
                        a: single(i, i, m),
                        b: single(i, j, n),
                        label: format!("[L[{i},{i}]({m}), L[{i},{j}]({n})]"),
                        rhs: Box::new(move |sug, v| {
                            // h is the mode on v^j, k = m+n-h the mode on v^i
                            sug.series_apply(i, j, m + n, |h| ratio(i64::from(h - n), 2), v)
                        }),
                    });
                }
            }
        }
    }
    report.checks.push(run_commutator_cases(
        sug,
        "diagonal with off-diagonal",
        &cases,
        &basis,
        rmode,
    ));

    report
        .checks
        .push(off_diagonal_self_check(sug, max_weight, 4, rmode));

    // [L^ij(m), L^jk(n)] = ¼ Σ_l l :v^i(m-l) v^k(n+l):, i, j, k distinct
    let mut cases = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                if i == j || j == k || i == k {
                    continue;
                }
                for m in range.clone() {
                    for n in range.clone() {
                        cases.push(CommutatorCase {
                            a: single(i, j, m),
                            b: single(j, k, n),
                            label: format!("[L[{i},{j}]({m}), L[{j},{k}]({n})]"),
                            rhs: Box::new(move |sug, v| {
                                // h = n + l is the mode on v^k
                                sug.series_apply(i, k, m + n, |h| ratio(i64::from(h - n), 4), v)
                            }),
                        });
                    }
                }
            }
        }
    }
    report.checks.push(run_commutator_cases(
        sug,
        "shared single index",
        &cases,
        &basis,
        rmode,
    ));

    report
        .checks
        .push(translation_check(sug, max_weight, &basis, rmode));
    report
}

/// `[L^{ij}(m), L^{ij}(n)] = (m-n)/q (L^{ii} + L^{jj})(m+n) + δ_{m+n,0} (m³-m)/24 r`
/// for `i < j`. The operators satisfy it with `q = 4`; that is the value forced
/// by the central term and by `L^{ij}(0) ω^{ij} = ½(ω^{ii} + ω^{jj})`.
/// Other values of `q` are accepted so that a misprinted coefficient can be
/// tested and refuted.
pub fn off_diagonal_self_check(
    sug: &Sugawara,
    max_weight: usize,
    q: i64,
    rmode: &RMode,
) -> IdentityCheck {
    let basis = sug.basis_up_to(max_weight);
    let range = mode_range(max_weight);
    let mut cases = Vec::new();
    for (i, j) in sug.index_pairs().into_iter().filter(|(i, j)| i != j) {
        for m in range.clone() {
            for n in range.clone() {
                cases.push(CommutatorCase {
                    a: ModeOperator::single(ModeSymbol::new(i, j, m)),
                    b: ModeOperator::single(ModeSymbol::new(i, j, n)),
                    label: format!("[L[{i},{j}]({m}), L[{i},{j}]({n})]"),
                    rhs: Box::new(move |sug, v| {
                        let sum = ModeOperator::from_terms([
                            (ModeSymbol::new(i, i, m + n), Rational::one()),
                            (ModeSymbol::new(j, j, m + n), Rational::one()),
                        ]);
                        let mut out = sug
                            .apply_operator(&sum, v)
                            .scaled(&Scalar::constant(ratio(i64::from(m - n), q)));
                        if m + n == 0 {
                            out.add_scaled(v, &virasoro_central(m, 24));
                        }
                        out
                    }),
                });
            }
        }
    }
    let name = if q == 4 {
        "off-diagonal with itself".to_string()
    } else {
        format!("off-diagonal with itself, coefficient (m-n)/{q}")
    };
    run_commutator_cases(sug, &name, &cases, &basis, rmode)
}

// [L(-1), L^st(m)] = (-1-m) L^st(m-1)
fn translation_check(
    sug: &Sugawara,
    max_weight: usize,
    basis: &[FockMonomial],
    rmode: &RMode,
) -> IdentityCheck {
    let d = sug.dim();
    let mut cases = Vec::new();
    for (s, t) in sug.index_pairs() {
        for m in mode_range(max_weight) {
            cases.push(CommutatorCase {
                a: ModeOperator::virasoro(d, -1),
                b: ModeOperator::single(ModeSymbol::new(s, t, m)),
                label: format!("[L(-1), L[{s},{t}]({m})]"),
                rhs: Box::new(move |sug, v| {
                    sug.mode_apply(ModeSymbol::new(s, t, m - 1), v)
                        .scaled(&Scalar::from_i64(i64::from(-1 - m)))
                }),
            });
        }
    }
    run_commutator_cases(sug, "translation covariance", &cases, basis, rmode)
}

/// Order-four locality in mode form:
/// `Σ_k (-1)^k C(4,k) [L^{ij}(m+4-k), L^{st}(n+k)] = 0`.
pub fn verify_locality(sug: &Sugawara, max_weight: usize, rmode: &RMode) -> VerificationReport {
    const BINOMIAL: [i64; 5] = [1, -4, 6, -4, 1];
    let basis = sug.basis_up_to(max_weight);
    let pairs = sug.index_pairs();
    let mut cases = Vec::new();
    for &a in &pairs {
        for &b in &pairs {
            for m in mode_range(max_weight) {
                for n in mode_range(max_weight) {
                    cases.push((a, b, m, n));
                }
            }
        }
    }
    let check = IdentityCheck::sweep("order-4 locality", &cases, |&((i, j), (s, t), m, n)| {
        let mut out = CaseOutcome::default();
        for mono in &basis {
            let v = FockVector::from_monomial(mono.clone());
            let mut total = FockVector::zero();
            for (k, c) in BINOMIAL.iter().enumerate() {
                let k = k as i32;
                let a = ModeOperator::single(ModeSymbol::new(i, j, m + 4 - k));
                let b = ModeOperator::single(ModeSymbol::new(s, t, n + k));
                total.add_scaled(&sug.commutator(&a, &b, &v), &Scalar::from_i64(*c));
            }
            compare(
                &mut out,
                rmode,
                || format!("L[{i},{j}] vs L[{s},{t}] at m={m}, n={n}"),
                mono,
                &total,
                &FockVector::zero(),
            );
        }
        out
    });
    VerificationReport {
        checks: vec![check],
    }
}

/// `L(0)` acts as the degree, `L(-1)1 = 0`, and the translation relation.
pub fn verify_grading_and_translation(
    sug: &Sugawara,
    max_weight: usize,
    rmode: &RMode,
) -> VerificationReport {
    let d = sug.dim();
    let basis = sug.basis_up_to(max_weight);
    let l0 = ModeOperator::virasoro(d, 0);
    let grading = IdentityCheck::sweep("L(0) eigenvalue equals degree", &basis, |m| {
        let mut out = CaseOutcome::default();
        let v = FockVector::from_monomial(m.clone());
        let lhs = sug.apply_operator(&l0, &v);
        let rhs = v.scaled(&Scalar::from_i64(m.degree()));
        compare(&mut out, rmode, || "L(0)".to_string(), m, &lhs, &rhs);
        out
    });

    let vacuum = [FockMonomial::vacuum()];
    let creativity = IdentityCheck::sweep("L(-1) annihilates the vacuum", &vacuum, |m| {
        let mut out = CaseOutcome::default();
        let lhs = sug.apply_operator(&ModeOperator::virasoro(d, -1), &FockVector::vacuum());
        compare(
            &mut out,
            rmode,
            || "L(-1)1".to_string(),
            m,
            &lhs,
            &FockVector::zero(),
        );
        out
    });

    VerificationReport {
        checks: vec![
            grading,
            creativity,
            translation_check(sug, max_weight, &basis, rmode),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::BracketFault;

    fn q(i: u16, m: i32, j: u16, n: i32) -> NormalQuadratic {
        NormalQuadratic::new(i, m, j, n).unwrap()
    }

    fn omega(i: u16, j: u16) -> FockVector {
        let m = FockMonomial::new(vec![q(i, -1, j, -1)]).unwrap();
        FockVector::from_term(m, Scalar::constant(ratio(1, 2)))
    }

    #[test]
    fn l_minus_two_on_vacuum_is_omega() {
        let sug = Sugawara::new(2).unwrap();
        for (i, j) in sug.index_pairs() {
            let got = sug.mode_apply(ModeSymbol::new(i, j, -2), &FockVector::vacuum());
            assert_eq!(got, omega(i, j));
        }
    }

    #[test]
    fn low_modes_kill_vacuum() {
        let sug = Sugawara::new(2).unwrap();
        for (i, j) in sug.index_pairs() {
            for n in -1..=4 {
                let s = ModeSymbol::new(i, j, n);
                assert!(sug.mode_apply(s, &FockVector::vacuum()).is_zero());
                assert!(ModeWord::new(vec![s]).is_zero());
            }
        }
    }

    #[test]
    fn l2_on_omega_gives_half_r() {
        let sug = Sugawara::new(1).unwrap();
        let got = sug.mode_apply(ModeSymbol::new(1, 1, 2), &omega(1, 1));
        let expected =
            FockVector::from_term(FockMonomial::vacuum(), Scalar::monomial(ratio(1, 2), 1));
        assert_eq!(got, expected);
    }

    #[test]
    fn word_evaluation() {
        let sug = Sugawara::new(1).unwrap();
        assert_eq!(sug.word_to_fock(&ModeWord::vacuum()), FockVector::vacuum());
        let l2 = ModeSymbol::new(1, 1, -2);
        assert_eq!(sug.word_to_fock(&ModeWord::new(vec![l2])), omega(1, 1));

        let twice = sug.word_to_fock(&ModeWord::new(vec![l2, l2]));
        assert_eq!(twice.weight(), Some(4));
        let square = FockMonomial::new(vec![q(1, -1, 1, -1), q(1, -1, 1, -1)]).unwrap();
        assert_eq!(twice.coefficient(&square), Scalar::constant(ratio(1, 4)));
        // composition through the raw Lie action agrees
        let mut manual = FockVector::vacuum();
        for _ in 0..2 {
            let element = sug.literal_mode_element(l2, -6, 6);
            manual = sug.fock().act(&element, &manual);
        }
        assert_eq!(twice, manual);
    }

    #[test]
    fn collapsed_form_matches_literal_two_sum_definition() {
        let sug = Sugawara::new(2).unwrap();
        let basis = sug.basis_up_to(4);
        for (i, j) in sug.index_pairs() {
            for n in -5..=5 {
                let s = ModeSymbol::new(i, j, n);
                let element = sug.literal_mode_element(s, -12, 12);
                for m in &basis {
                    let v = FockVector::from_monomial(m.clone());
                    assert_eq!(
                        sug.fock().act(&element, &v),
                        sug.mode_apply(s, &v),
                        "{s} on {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn mode_maps_weight_n_to_n_minus_mode() {
        let sug = Sugawara::new(2).unwrap();
        for m in sug.basis_up_to(4) {
            let v = FockVector::from_monomial(m.clone());
            for n in -3..=4 {
                let out = sug.mode_apply(ModeSymbol::new(1, 2, n), &v);
                if let Some(w) = out.weight() {
                    assert_eq!(w, m.degree() - i64::from(n));
                } else {
                    assert!(out.is_zero());
                }
            }
        }
    }

    #[test]
    fn virasoro_central_term_on_vacuum() {
        let sug = Sugawara::new(1).unwrap();
        let l = |n| ModeOperator::single(ModeSymbol::new(1, 1, n));
        let got = sug.commutator(&l(2), &l(-2), &FockVector::vacuum());
        let expected =
            FockVector::from_term(FockMonomial::vacuum(), Scalar::monomial(ratio(1, 2), 1));
        assert_eq!(got, expected);
    }

    #[test]
    fn off_diagonal_central_term_on_vacuum() {
        let sug = Sugawara::new(2).unwrap();
        let l = |n| ModeOperator::single(ModeSymbol::new(1, 2, n));
        let got = sug.commutator(&l(2), &l(-2), &FockVector::vacuum());
        let expected =
            FockVector::from_term(FockMonomial::vacuum(), Scalar::monomial(ratio(1, 4), 1));
        assert_eq!(got, expected);
    }

    #[test]
    fn small_sweeps_pass() {
        let sug = Sugawara::new(3).unwrap();
        let r = RMode::Symbolic;
        let report = verify_commutators(&sug, 2, &r);
        assert!(report.passed(), "{:?}", report.first_failure());
        assert!(report.checks.iter().all(|c| c.cases > 0));
        assert!(verify_locality(&sug, 2, &r).passed());
        assert!(verify_grading_and_translation(&sug, 3, &r).passed());
    }

    #[test]
    fn numeric_r_sweep_passes() {
        let sug = Sugawara::new(2).unwrap();
        assert!(verify_commutators(&sug, 2, &RMode::At(ratio(-22, 5))).passed());
    }

    #[test]
    fn off_diagonal_coefficient_half_is_refuted() {
        let sug = Sugawara::new(2).unwrap();
        let check = off_diagonal_self_check(&sug, 2, 2, &RMode::Symbolic);
        assert!(!check.passed());
        // [L12(-2), L12(-1)]1 = -¼ (L11 + L22)(-3)1, not -½
        let l = |n| ModeOperator::single(ModeSymbol::new(1, 2, n));
        let got = sug.commutator(&l(-2), &l(-1), &FockVector::vacuum());
        let sum = ModeOperator::virasoro(2, -3);
        let quarter = sug
            .apply_operator(&sum, &FockVector::vacuum())
            .scaled(&Scalar::constant(ratio(-1, 4)));
        assert_eq!(got, quarter);
        assert!(off_diagonal_self_check(&sug, 2, 4, &RMode::Symbolic).passed());
    }

    #[test]
    fn corrupted_bracket_is_caught() {
        let lie = DeformedLie::new(1)
            .unwrap()
            .with_fault(BracketFault::ScaleCentral(2));
        let sug = Sugawara::from_lie(lie);
        let report = verify_commutators(&sug, 2, &RMode::Symbolic);
        assert!(!report.passed());
        let failure = report.first_failure().unwrap();
        let witness = failure.witness.as_ref().unwrap();
        assert!(witness.context.starts_with("[L[1,1]"));
    }

    #[test]
    fn rank_four_disjoint_pairs_commute() {
        let sug = Sugawara::new(4).unwrap();
        let basis = sug.basis_up_to(3);
        for m in -3..=3 {
            for n in -3..=3 {
                let a = ModeOperator::single(ModeSymbol::new(1, 2, m));
                let b = ModeOperator::single(ModeSymbol::new(3, 4, n));
                for mono in &basis {
                    let v = FockVector::from_monomial(mono.clone());
                    assert!(sug.commutator(&a, &b, &v).is_zero());
                }
            }
        }
    }
}
