//! The Jordan algebra of symmetric matrices, its identification with the
//! Griess algebra `E^{ij} ↦ ω^{ij}`, and the action of rational orthogonal
//! matrices on everything built from the generators `v^i`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num::{One, Zero};

use crate::check::{CaseOutcome, IdentityCheck, VerificationReport, Witness};
use crate::error::AlgebraError;
use crate::fock::{FockMonomial, FockVector};
use crate::lie::{NormalQuadratic, Oscillator};
use crate::matrix::ScalarMatrix;
use crate::scalar::{int, ratio, Rational, Scalar};
use crate::sugawara::{ModeOperator, ModeSymbol, Sugawara};
use crate::voa::{gram_matrix, omega, pair_operators, saturate, GriessTable};

/// Symmetric `d × d` matrix stored as its upper triangle, row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    d: usize,
    upper: Vec<Scalar>,
}

fn tri(d: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * d - i * (i + 1) / 2 + j
}

impl SymMatrix {
    pub fn zeros(d: usize) -> Self {
        Self {
            d,
            upper: vec![Scalar::zero(); d * (d + 1) / 2],
        }
    }

    /// `E^{ij}` for `1 <= i, j <= d`: ones at `(i,j)` and `(j,i)`, so `E^{ii}`
    /// has a 2 on the diagonal.
    pub fn basis(d: usize, i: usize, j: usize) -> Result<Self, AlgebraError> {
        for k in [i, j] {
            if k == 0 || k > d {
                return Err(AlgebraError::IndexOutOfRange { index: k, d });
            }
        }
        let mut m = Self::zeros(d);
        let value = if i == j {
            Scalar::from_i64(2)
        } else {
            Scalar::one()
        };
        m.set(i - 1, j - 1, value);
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let d = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != d) {
            return Err(AlgebraError::BadShape {
                expected: d,
                found: bad.len(),
            });
        }
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in i..d {
                if rows[i][j] != rows[j][i] {
                    return Err(AlgebraError::NotSymmetric);
                }
                m.set(i, j, rows[i][j].clone());
            }
        }
        Ok(m)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.upper[tri(self.d, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        let k = tri(self.d, i, j);
        self.upper[k] = value;
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_dim(other)?;
        Ok(Self {
            d: self.d,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Self {
            d: self.d,
            upper: self.upper.iter().map(|a| a * c).collect(),
        }
    }

    /// `A ∗ B = ½(AB + BA)`.
    pub fn jordan_product(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_dim(other)?;
        let d = self.d;
        let half = Scalar::constant(ratio(1, 2));
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in i..d {
                let mut acc = Scalar::zero();
                for k in 0..d {
                    acc += &(self.get(i, k) * other.get(k, j));
                    acc += &(other.get(i, k) * self.get(k, j));
                }
                out.set(i, j, &acc * &half);
            }
        }
        Ok(out)
    }

    /// Coordinates in the basis `E^{ij}`, `i <= j`, row by row.
    pub fn e_coordinates(&self) -> Vec<Scalar> {
        let half = Scalar::constant(ratio(1, 2));
        (0..self.d)
            .flat_map(|i| (i..self.d).map(move |j| (i, j)))
            .map(|(i, j)| {
                if i == j {
                    self.get(i, i) * &half
                } else {
                    self.get(i, j).clone()
                }
            })
            .collect()
    }

    pub fn from_e_coordinates(d: usize, coords: &[Scalar]) -> Result<Self, AlgebraError> {
        let expected = d * (d + 1) / 2;
        if coords.len() != expected {
            return Err(AlgebraError::DimensionMismatch {
                expected,
                found: coords.len(),
            });
        }
        let two = Scalar::from_i64(2);
        let mut m = Self::zeros(d);
        let cells = (0..d).flat_map(|i| (i..d).map(move |j| (i, j)));
        for ((i, j), c) in cells.zip(coords) {
            m.set(i, j, if i == j { c * &two } else { c.clone() });
        }
        Ok(m)
    }

    fn same_dim(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.d,
                found: other.d,
            })
        }
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = ScalarMatrix::from_rows(self.to_rows());
        write!(f, "{rows}")
    }
}

/// Checks `g(E^a ∗ E^b) = (ω^a)_1 ω^b` for every unordered pair of basis
/// elements, and that `g` maps the `E^{ij}` to linearly independent vectors
/// spanning the weight-2 space.
pub fn check_isomorphism(sug: &Sugawara, table: &GriessTable) -> VerificationReport {
    let d = sug.dim();
    let pairs = &table.pairs;
    let n = pairs.len();
    let cases: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let products =
        IdentityCheck::sweep("g maps Jordan products to 1-products", &cases, |&(a, b)| {
            let mut out = CaseOutcome::default();
            let e = |k: usize| {
                SymMatrix::basis(d, usize::from(pairs[k].0), usize::from(pairs[k].1))
                    .expect("pairs are in range")
            };
            let jordan = e(a).jordan_product(&e(b)).expect("same d").e_coordinates();
            let griess = table.product(a, b);
            out.record(jordan == griess, || Witness {
                context: format!("E{:?} * E{:?}", pairs[a], pairs[b]),
                vector: String::new(),
                lhs: jordan.iter().join(", "),
                rhs: griess.iter().join(", "),
            });
            out
        });

    let weight_two = sug.fock().basis_of_weight(2);
    let columns: Vec<FockVector> = pairs.iter().map(|&(i, j)| omega(sug, i, j)).collect();
    let images = ScalarMatrix::from_rows(
        weight_two
            .iter()
            .map(|m| columns.iter().map(|v| v.coefficient(m)).collect())
            .collect(),
    );
    let rank = images.rank(None);
    let mut bijection = CaseOutcome::default();
    bijection.record(rank == n && weight_two.len() == n, || Witness {
        context: "rank of g".to_string(),
        vector: String::new(),
        lhs: format!("rank {rank}, target dimension {}", weight_two.len()),
        rhs: format!("{n}"),
    });

    VerificationReport {
        checks: vec![
            products,
            IdentityCheck {
                identity: "g is a linear bijection onto weight 2".to_string(),
                cases: bijection.cases,
                failures: bijection.failures,
                witness: bijection.witness,
            },
        ],
    }
}

/// `d × d` rational matrix with `QᵀQ = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalMatrix {
    d: usize,
    entries: Vec<Rational>,
}

impl OrthogonalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, AlgebraError> {
        let d = rows.len();
        if d == 0 {
            return Err(AlgebraError::EmptyDimension);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != d) {
            return Err(AlgebraError::BadShape {
                expected: d,
                found: bad.len(),
            });
        }
        let q = Self {
            d,
            entries: rows.into_iter().flatten().collect(),
        };
        for a in 0..d {
            for b in 0..d {
                let dot: Rational = (0..d).map(|k| q.get(k, a) * q.get(k, b)).sum();
                let expected = if a == b {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if dot != expected {
                    return Err(AlgebraError::NotOrthogonal);
                }
            }
        }
        Ok(q)
    }

    pub fn identity(d: usize) -> Self {
        Self::scalar(d, 1)
    }

    pub fn negated_identity(d: usize) -> Self {
        Self::scalar(d, -1)
    }

    fn scalar(d: usize, c: i64) -> Self {
        let mut entries = vec![Rational::zero(); d * d];
        for i in 0..d {
            entries[i * d + i] = int(c);
        }
        Self { d, entries }
    }

    /// Sends `v^{k+1}` to `v^{perm[k]+1}` (zero-based `perm`).
    pub fn permutation(perm: &[usize]) -> Result<Self, AlgebraError> {
        let d = perm.len();
        let mut rows = vec![vec![Rational::zero(); d]; d];
        for (k, &p) in perm.iter().enumerate() {
            if p >= d {
                return Err(AlgebraError::IndexOutOfRange { index: p + 1, d });
            }
            rows[p][k] = Rational::one();
        }
        Self::new(rows)
    }

    pub fn all_permutations(d: usize) -> Vec<Self> {
        (0..d)
            .permutations(d)
            .map(|p| Self::permutation(&p).expect("a permutation is orthogonal"))
            .collect()
    }

    /// `[[3/5, 4/5], [-4/5, 3/5]]` on the first two coordinates, identity
    /// elsewhere. Needs `d >= 2`.
    pub fn rotation_345(d: usize) -> Result<Self, AlgebraError> {
        if d < 2 {
            return Err(AlgebraError::DimensionMismatch {
                expected: 2,
                found: d,
            });
        }
        let mut q = Self::identity(d);
        q.entries[0] = ratio(3, 5);
        q.entries[1] = ratio(4, 5);
        q.entries[d] = ratio(-4, 5);
        q.entries[d + 1] = ratio(3, 5);
        Ok(q)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Zero-based.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.d + j]
    }

    /// `Q = ±I`.
    pub fn is_central(&self) -> bool {
        *self == Self::identity(self.d) || *self == Self::negated_identity(self.d)
    }

    /// `Q_ki` with one-based generator indices.
    fn coeff(&self, k: u16, i: u16) -> &Rational {
        self.get(usize::from(k) - 1, usize::from(i) - 1)
    }

    fn check_index(&self, index: u16) -> Result<(), AlgebraError> {
        if index == 0 || usize::from(index) > self.d {
            Err(AlgebraError::IndexOutOfRange {
                index: usize::from(index),
                d: self.d,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for OrthogonalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = (0..self.d)
            .map(|i| format!("[{}]", (0..self.d).map(|j| self.get(i, j)).join(", ")))
            .join(", ");
        write!(f, "[{rows}]")
    }
}

/// Action induced by `v^i(m) ↦ Σ_k Q_ki v^k(m)`.
pub trait OrthogonalAction: Sized {
    fn act_orthogonal(&self, q: &OrthogonalMatrix) -> Result<Self, AlgebraError>;
}

fn transform_quadratic(q: &OrthogonalMatrix, quad: NormalQuadratic) -> FockVector {
    let mut out = FockVector::zero();
    for k in 1..=q.d as u16 {
        for l in 1..=q.d as u16 {
            let c = q.coeff(k, quad.i()) * q.coeff(l, quad.j());
            if c.is_zero() {
                continue;
            }
            // creation modes commute, so no central correction arises
            let (nq, _) =
                NormalQuadratic::order(Oscillator::new(k, quad.m()), Oscillator::new(l, quad.n()));
            out.add_term(FockMonomial::vacuum().with_factor(nq), &Scalar::constant(c));
        }
    }
    out
}

impl OrthogonalAction for FockVector {
    fn act_orthogonal(&self, q: &OrthogonalMatrix) -> Result<Self, AlgebraError> {
        let mut images: HashMap<NormalQuadratic, FockVector> = HashMap::new();
        let mut out = FockVector::zero();
        for (m, c) in self.terms() {
            let mut image = FockVector::vacuum();
            for &factor in m.factors() {
                q.check_index(factor.max_index())?;
                let t = images
                    .entry(factor)
                    .or_insert_with(|| transform_quadratic(q, factor));
                image = image.product(t);
            }
            out.add_scaled(&image, c);
        }
        Ok(out)
    }
}

/// `S ↦ Q S Qᵀ`, the action on ω-coordinates read as a symmetric matrix.
impl OrthogonalAction for SymMatrix {
    fn act_orthogonal(&self, q: &OrthogonalMatrix) -> Result<Self, AlgebraError> {
        if self.d != q.d {
            return Err(AlgebraError::DimensionMismatch {
                expected: q.d,
                found: self.d,
            });
        }
        let d = self.d;
        let mut out = SymMatrix::zeros(d);
        for a in 0..d {
            for b in a..d {
                let mut acc = Scalar::zero();
                for i in 0..d {
                    for j in 0..d {
                        let c = q.get(a, i) * q.get(b, j);
                        if !c.is_zero() {
                            acc += &self.get(i, j).scale(&c);
                        }
                    }
                }
                out.set(a, b, acc);
            }
        }
        Ok(out)
    }
}

/// `L^{ij}(n) ↦ Σ_{k,l} Q_ki Q_lj L^{kl}(n)`.
impl OrthogonalAction for ModeOperator {
    fn act_orthogonal(&self, q: &OrthogonalMatrix) -> Result<Self, AlgebraError> {
        let mut out = ModeOperator::default();
        for (s, c) in self.terms() {
            q.check_index(s.j)?;
            for k in 1..=q.d as u16 {
                for l in 1..=q.d as u16 {
                    let coeff = q.coeff(k, s.i) * q.coeff(l, s.j) * c;
                    out.add(ModeSymbol::new(k, l, s.n), &coeff);
                }
            }
        }
        Ok(out)
    }
}

/// Checks that `Q` is an automorphism on weights `<= max_weight`: the action
/// intertwines every mode, preserves the Griess structure constants and every
/// Gram matrix, and `±I` fixes every basis vector.
pub fn verify_automorphism(
    sug: &Sugawara,
    q: &OrthogonalMatrix,
    max_weight: usize,
) -> Result<VerificationReport, AlgebraError> {
    if q.d != sug.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: sug.dim(),
            found: q.d,
        });
    }
    if max_weight < 2 {
        return Err(AlgebraError::WeightTooSmall(max_weight));
    }
    let w = max_weight as i32;
    let basis = sug.basis_up_to(max_weight);
    let act = |v: &FockVector| v.act_orthogonal(q).expect("indices checked");
    let mut report = VerificationReport::default();

    let symbols: Vec<ModeSymbol> = sug
        .index_pairs()
        .into_iter()
        .flat_map(|(i, j)| (-w..=w).map(move |m| ModeSymbol::new(i, j, m)))
        .collect();
    report
        .checks
        .push(IdentityCheck::sweep("mode equivariance", &symbols, |&s| {
            let mut out = CaseOutcome::default();
            let moved = ModeOperator::single(s)
                .act_orthogonal(q)
                .expect("indices checked");
            for m in &basis {
                let v = FockVector::from_monomial(m.clone());
                let lhs = act(&sug.mode_apply(s, &v));
                let rhs = sug.apply_operator(&moved, &act(&v));
                out.record(lhs == rhs, || Witness {
                    context: format!("Q {s} vs (Q {s} Q^-1) Q"),
                    vector: m.to_string(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
            out
        }));

    let table = crate::voa::griess_table(sug);
    let pairs = &table.pairs;
    let moved_omega: Vec<FockVector> = pairs.iter().map(|&(i, j)| act(&omega(sug, i, j))).collect();
    let index: Vec<(usize, usize)> = (0..pairs.len())
        .flat_map(|a| (0..pairs.len()).map(move |b| (a, b)))
        .collect();
    report.checks.push(IdentityCheck::sweep(
        "Griess constants invariant",
        &index,
        |&(a, b)| {
            let mut out = CaseOutcome::default();
            let (i, j) = pairs[a];
            let op = ModeOperator::single(ModeSymbol::new(i, j, 0))
                .act_orthogonal(q)
                .expect("indices checked");
            let lhs = sug.apply_operator(&op, &moved_omega[b]);
            let mut rhs = FockVector::zero();
            for (c, image) in table.product(a, b).iter().zip(&moved_omega) {
                rhs.add_scaled(image, c);
            }
            out.record(lhs == rhs, || Witness {
                context: format!("(Q w{:?})_1 (Q w{:?})", pairs[a], pairs[b]),
                vector: String::new(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
            out
        },
    ));

    let space = saturate(sug, max_weight)?;
    let weights: Vec<usize> = (0..=max_weight).collect();
    report.checks.push(IdentityCheck::sweep(
        "Gram matrices invariant",
        &weights,
        |&n| {
            let mut out = CaseOutcome::default();
            let gram = gram_matrix(sug, &space, n, None).matrix;
            let words: Vec<Vec<ModeOperator>> = space
                .words(n)
                .iter()
                .map(|word| {
                    word.modes()
                        .iter()
                        .map(|&s| {
                            ModeOperator::single(s)
                                .act_orthogonal(q)
                                .expect("indices checked")
                        })
                        .collect()
                })
                .collect();
            let vectors: Vec<FockVector> = space.vectors(n).iter().map(act).collect();
            for a in 0..words.len() {
                for b in 0..words.len() {
                    let value = pair_operators(sug, &words[a], &vectors[b]);
                    out.record(&value == gram.get(a, b), || Witness {
                        context: format!("<Q u, Q w> at weight {n}"),
                        vector: format!("{} , {}", space.words(n)[a], space.words(n)[b]),
                        lhs: value.to_string(),
                        rhs: gram.get(a, b).to_string(),
                    });
                }
            }
            out
        },
    ));

    if q.is_central() {
        report
            .checks
            .push(IdentityCheck::sweep("+-I acts trivially", &basis, |m| {
                let mut out = CaseOutcome::default();
                let v = FockVector::from_monomial(m.clone());
                let image = act(&v);
                out.record(image == v, || Witness {
                    context: format!("Q = {q}"),
                    vector: m.to_string(),
                    lhs: image.to_string(),
                    rhs: v.to_string(),
                });
                out
            }));
    }
    Ok(report)
}
