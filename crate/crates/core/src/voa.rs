//! `V_J`, the subspace of `M_r` generated from the vacuum by the modes
//! `L^{ij}(m)`: graded bases by saturation, the Griess algebra on weight 2,
//! the invariant form and its Gram matrices.
//!
//! The form is `⟨u, w⟩ = vacuum coefficient of u† w`, with the adjoint
//! `L^{ij}(m)† = L^{ij}(-m)`. On weight 2 this is `⟨a, b⟩1 = a_3 b`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::check::{CaseOutcome, IdentityCheck, Witness};
use crate::error::AlgebraError;
use crate::fock::{FockMonomial, FockVector};
use crate::matrix::ScalarMatrix;
use crate::scalar::{ratio, Rational, Scalar};
use crate::sugawara::{ModeOperator, ModeSymbol, ModeWord, Sugawara};

/// Fraction-free echelon over ℚ[r]. Each row is primitive and keyed by its
/// smallest monomial; reducing a vector by the row at its own smallest
/// monomial strictly raises that monomial, so insertion terminates.
#[derive(Debug, Default)]
struct Echelon {
    rows: BTreeMap<FockMonomial, FockVector>,
}

impl Echelon {
    /// Inserts `v` if it is independent of the rows over ℚ(r).
    fn insert(&mut self, v: &FockVector) -> bool {
        let mut v = v.primitive();
        loop {
            let Some(pivot) = v.leading_monomial().cloned() else {
                return false;
            };
            match self.rows.get(&pivot) {
                Some(row) => {
                    let a = row.coefficient(&pivot);
                    let c = v.coefficient(&pivot);
                    v = v.scaled(&a).difference(&row.scaled(&c)).primitive();
                }
                None => {
                    self.rows.insert(pivot, v);
                    return true;
                }
            }
        }
    }
}

/// Bases of `(V_J)_N` for `N <= max_weight`.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    d: usize,
    max_weight: usize,
    words: Vec<Vec<ModeWord>>,
    vectors: Vec<Vec<FockVector>>,
}

impl GradedSubspace {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// Words whose images form the basis at `weight`.
    pub fn words(&self, weight: usize) -> &[ModeWord] {
        &self.words[weight]
    }

    pub fn vectors(&self, weight: usize) -> &[FockVector] {
        &self.vectors[weight]
    }

    pub fn dim(&self, weight: usize) -> usize {
        self.words[weight].len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }
}

/// Saturates `{1}` under every `L^{ij}(m)` with `|m| <= max_weight`, keeping
/// images of weight `<= max_weight` that raise the generic rank. Words are
/// tried shortest first, then in lexicographic order, so bases are
/// reproducible.
pub fn saturate(sug: &Sugawara, max_weight: usize) -> Result<GradedSubspace, AlgebraError> {
    if max_weight < 2 {
        return Err(AlgebraError::WeightTooSmall(max_weight));
    }
    let top = max_weight as i64;
    let symbols: Vec<ModeSymbol> = sug
        .index_pairs()
        .into_iter()
        .flat_map(|(i, j)| {
            (-(max_weight as i32)..=max_weight as i32).map(move |m| ModeSymbol::new(i, j, m))
        })
        .collect();

    let mut echelons: Vec<Echelon> = (0..=max_weight).map(|_| Echelon::default()).collect();
    let mut words = vec![Vec::new(); max_weight + 1];
    let mut vectors = vec![Vec::new(); max_weight + 1];
    echelons[0].insert(&FockVector::vacuum());
    words[0].push(ModeWord::vacuum());
    vectors[0].push(FockVector::vacuum());

    let mut frontier = vec![(ModeWord::vacuum(), FockVector::vacuum())];
    while !frontier.is_empty() {
        let mut candidates: Vec<(ModeWord, usize, ModeSymbol)> = Vec::new();
        for (k, (w, _)) in frontier.iter().enumerate() {
            for &s in &symbols {
                let weight = w.weight() - i64::from(s.n);
                if (0..=top).contains(&weight) {
                    let word = w.prepend(s);
                    if !word.is_zero() {
                        candidates.push((word, k, s));
                    }
                }
            }
        }
        candidates.sort_by(|a, b| a.0.cmp(&b.0));

        let images: Vec<FockVector> = candidates
            .par_iter()
            .map(|(_, k, s)| sug.mode_apply(*s, &frontier[*k].1))
            .collect();

        let mut next = Vec::new();
        for ((word, _, _), image) in candidates.into_iter().zip(images) {
            if image.is_zero() {
                continue;
            }
            let weight = word.weight() as usize;
            if echelons[weight].insert(&image) {
                words[weight].push(word.clone());
                vectors[weight].push(image.clone());
                next.push((word, image));
            }
        }
        frontier = next;
    }

    Ok(GradedSubspace {
        d: sug.dim(),
        max_weight,
        words,
        vectors,
    })
}

/// `ω^{ij} = L^{ij}(-2)1 = ½ :v^i(-1)v^j(-1):1`.
pub fn omega(sug: &Sugawara, i: u16, j: u16) -> FockVector {
    sug.mode_apply(ModeSymbol::new(i, j, -2), &FockVector::vacuum())
}

/// Coordinates of a weight-2 vector in the basis `ω^{ij}`, `i <= j`, in
/// `index_pairs` order. `None` if the vector has components outside weight 2.
pub fn omega_coordinates(sug: &Sugawara, v: &FockVector) -> Option<Vec<Scalar>> {
    let pairs = sug.index_pairs();
    let mut coords = vec![Scalar::zero(); pairs.len()];
    for (m, c) in v.terms() {
        let [q] = m.factors() else {
            return None;
        };
        if q.m() != -1 || q.n() != -1 {
            return None;
        }
        let k = pairs.iter().position(|&p| p == (q.i(), q.j()))?;
        coords[k] = c.scale(&Rational::from_integer(2.into()));
    }
    Some(coords)
}

/// Structure constants of the 1-product `(ω^a)_1 ω^b = L^a(0) ω^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GriessTable {
    pub pairs: Vec<(u16, u16)>,
    /// `products[a][b]` holds the ω-coordinates of `(ω^a)_1 ω^b`.
    pub products: Vec<Vec<Vec<Scalar>>>,
}

impl GriessTable {
    pub fn product(&self, a: usize, b: usize) -> &[Scalar] {
        &self.products[a][b]
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.pairs.len();
        (0..n).all(|a| (0..a).all(|b| self.products[a][b] == self.products[b][a]))
    }

    pub fn is_r_independent(&self) -> bool {
        self.products
            .iter()
            .flatten()
            .flatten()
            .all(Scalar::is_constant)
    }
}

/// `(ω^{ij})_1 ω^{st} = ½(δ_is ω^{jt} + δ_it ω^{js} + δ_js ω^{it} + δ_jt ω^{is})`
/// in ω-coordinates.
pub fn delta_formula(pairs: &[(u16, u16)], a: (u16, u16), b: (u16, u16)) -> Vec<Scalar> {
    let ((i, j), (s, t)) = (a, b);
    let mut coords = vec![Scalar::zero(); pairs.len()];
    let half = Scalar::constant(ratio(1, 2));
    for (hit, x, y) in [
        (i == s, j, t),
        (i == t, j, s),
        (j == s, i, t),
        (j == t, i, s),
    ] {
        if hit {
            let key = if x <= y { (x, y) } else { (y, x) };
            let k = pairs
                .iter()
                .position(|&p| p == key)
                .expect("index pair in range");
            coords[k] += &half;
        }
    }
    coords
}

pub fn griess_table(sug: &Sugawara) -> GriessTable {
    let pairs = sug.index_pairs();
    let products = pairs
        .par_iter()
        .map(|&(i, j)| {
            pairs
                .iter()
                .map(|&(s, t)| {
                    let image = sug.mode_apply(ModeSymbol::new(i, j, 0), &omega(sug, s, t));
                    omega_coordinates(sug, &image).expect("1-product stays in weight 2")
                })
                .collect()
        })
        .collect();
    GriessTable { pairs, products }
}

fn coords_string(pairs: &[(u16, u16)], coords: &[Scalar]) -> String {
    let terms: Vec<String> = pairs
        .iter()
        .zip(coords)
        .filter(|(_, c)| !c.is_zero())
        .map(|((i, j), c)| format!("({c})w[{i},{j}]"))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Compares every entry of the table with the δ-formula and checks that the
/// constants are symmetric and free of `r`.
pub fn verify_griess(table: &GriessTable) -> Vec<IdentityCheck> {
    let n = table.pairs.len();
    let index: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let formula = IdentityCheck::sweep("Griess product delta formula", &index, |&(a, b)| {
        let mut out = CaseOutcome::default();
        let expected = delta_formula(&table.pairs, table.pairs[a], table.pairs[b]);
        let got = table.product(a, b);
        out.record(got == expected.as_slice(), || Witness {
            context: format!("(w{:?})_1 w{:?}", table.pairs[a], table.pairs[b]),
            vector: format!("w{:?}", table.pairs[b]),
            lhs: coords_string(&table.pairs, got),
            rhs: coords_string(&table.pairs, &expected),
        });
        out
    });
    let mut symmetric = CaseOutcome::default();
    let mut constant = CaseOutcome::default();
    for &(a, b) in &index {
        let got = table.product(a, b);
        symmetric.record(got == table.product(b, a), || Witness {
            context: format!("w{:?} and w{:?}", table.pairs[a], table.pairs[b]),
            vector: String::new(),
            lhs: coords_string(&table.pairs, got),
            rhs: coords_string(&table.pairs, table.product(b, a)),
        });
        constant.record(got.iter().all(Scalar::is_constant), || Witness {
            context: format!("(w{:?})_1 w{:?}", table.pairs[a], table.pairs[b]),
            vector: String::new(),
            lhs: coords_string(&table.pairs, got),
            rhs: "r-free constants".to_string(),
        });
    }
    let wrap = |name: &str, o: CaseOutcome| IdentityCheck {
        identity: name.to_string(),
        cases: o.cases,
        failures: o.failures,
        witness: o.witness,
    };
    vec![
        formula,
        wrap("Griess product is commutative", symmetric),
        wrap("Griess constants are r-independent", constant),
    ]
}

/// Vacuum coefficient of `ops[0]† ops[1]† ⋯ v`, where the left factor is
/// the word `ops[0] ops[1] ⋯ 1`. Adjoints are applied leftmost first.
pub fn pair_operators(sug: &Sugawara, ops: &[ModeOperator], v: &FockVector) -> Scalar {
    ops.iter()
        .fold(v.clone(), |acc, op| sug.apply_operator(&op.adjoint(), &acc))
        .vacuum_coefficient()
}

/// `⟨u, v⟩` for a word `u` and any vector `v`.
pub fn pair_word(sug: &Sugawara, u: &ModeWord, v: &FockVector) -> Scalar {
    if u.is_zero() {
        return Scalar::zero();
    }
    u.modes()
        .iter()
        .fold(v.clone(), |acc, s| sug.mode_apply(s.adjoint(), &acc))
        .vacuum_coefficient()
}

/// `⟨u, w⟩`; zero when the weights differ.
pub fn inner_product(sug: &Sugawara, u: &ModeWord, w: &ModeWord) -> Scalar {
    if u.weight() != w.weight() {
        return Scalar::zero();
    }
    pair_word(sug, u, &sug.word_to_fock(w))
}

/// `2⟨ω, ω⟩` with `ω = Σ_i ω^{ii}`.
pub fn central_charge(sug: &Sugawara) -> Scalar {
    let d = sug.dim();
    let omega = ModeOperator::virasoro(d, -2);
    let w = sug.apply_operator(&omega, &FockVector::vacuum());
    let half = pair_operators(sug, &[omega], &w);
    &half + &half
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramData {
    pub weight: usize,
    pub labels: Vec<String>,
    pub matrix: ScalarMatrix,
}

impl GramData {
    pub fn determinant(&self) -> Scalar {
        self.matrix.determinant()
    }
}

/// Gram matrix of the saturation basis at `weight`, symbolic in `r` unless a
/// value is given.
pub fn gram_matrix(
    sug: &Sugawara,
    space: &GradedSubspace,
    weight: usize,
    r_value: Option<&Rational>,
) -> GramData {
    let words = space.words(weight);
    let vectors = space.vectors(weight);
    let n = words.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let values: Vec<Scalar> = cells
        .par_iter()
        .map(|&(a, b)| pair_word(sug, &words[a], &vectors[b]))
        .collect();
    let mut matrix = ScalarMatrix::zeros(n, n);
    for (&(a, b), v) in cells.iter().zip(values) {
        let v = match r_value {
            Some(x) => Scalar::constant(v.specialize(x)),
            None => v,
        };
        matrix.set(b, a, v.clone());
        matrix.set(a, b, v);
    }
    GramData {
        weight,
        labels: words.iter().map(ToString::to_string).collect(),
        matrix,
    }
}

/// Nullity of the Gram matrix at `weight` after setting `r = r_value`.
pub fn radical_dimension(
    sug: &Sugawara,
    space: &GradedSubspace,
    weight: usize,
    r_value: &Rational,
) -> usize {
    gram_matrix(sug, space, weight, None)
        .matrix
        .nullspace(Some(r_value))
        .nullity()
}

/// `L(1) ω^{ij} = 0` for every generator.
pub fn quasi_primary_check(sug: &Sugawara) -> IdentityCheck {
    let l1 = ModeOperator::virasoro(sug.dim(), 1);
    IdentityCheck::sweep(
        "generators are quasi-primary",
        &sug.index_pairs(),
        |&(i, j)| {
            let mut out = CaseOutcome::default();
            let image = sug.apply_operator(&l1, &omega(sug, i, j));
            out.record(image.is_zero(), || Witness {
                context: format!("L(1) w[{i},{j}]"),
                vector: omega(sug, i, j).to_string(),
                lhs: image.to_string(),
                rhs: "0".to_string(),
            });
            out
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn virasoro_dims_are_partitions_into_parts_at_least_two() {
        let sug = Sugawara::new(1).unwrap();
        let space = saturate(&sug, 6).unwrap();
        assert_eq!(space.dims(), vec![1, 0, 1, 1, 2, 2, 4]);
    }

    #[test]
    fn weight_two_is_spanned_by_omegas() {
        for d in 1..=3 {
            let sug = Sugawara::new(d).unwrap();
            let space = saturate(&sug, 2).unwrap();
            assert_eq!(space.dims(), vec![1, 0, d * (d + 1) / 2]);
        }
    }

    #[test]
    fn small_max_weight_is_rejected() {
        let sug = Sugawara::new(1).unwrap();
        assert_eq!(
            saturate(&sug, 1).unwrap_err(),
            AlgebraError::WeightTooSmall(1)
        );
    }

    #[test]
    fn level_four_basis_and_gram() {
        let sug = Sugawara::new(1).unwrap();
        let space = saturate(&sug, 4).unwrap();
        let labels: Vec<String> = space.words(4).iter().map(ToString::to_string).collect();
        assert_eq!(labels, ["L[1,1](-4)1", "L[1,1](-2)L[1,1](-2)1"]);
        let gram = gram_matrix(&sug, &space, 4, None);
        assert_eq!(
            gram.matrix.to_rows(),
            vec![vec![s("5*r"), s("3*r")], vec![s("3*r"), s("1/2*r^2 + 4*r")],]
        );
        assert_eq!(gram.determinant(), s("5/2*r^3 + 11*r^2"));
        assert_eq!(radical_dimension(&sug, &space, 4, &ratio(-22, 5)), 1);
        assert_eq!(radical_dimension(&sug, &space, 4, &int(1)), 0);
    }

    #[test]
    fn weight_two_gram_is_diagonal() {
        let sug = Sugawara::new(2).unwrap();
        let space = saturate(&sug, 2).unwrap();
        let gram = gram_matrix(&sug, &space, 2, None);
        let expected = ScalarMatrix::from_rows(vec![
            vec![s("1/2*r"), s("0"), s("0")],
            vec![s("0"), s("1/4*r"), s("0")],
            vec![s("0"), s("0"), s("1/2*r")],
        ]);
        assert_eq!(gram.matrix, expected);
        assert!(gram.matrix.specialize(&int(0)).is_zero());
    }

    #[test]
    fn central_charge_is_d_times_r() {
        for d in 1..=3 {
            let sug = Sugawara::new(d).unwrap();
            assert_eq!(central_charge(&sug), Scalar::r().scale(&int(d as i64)));
        }
    }

    #[test]
    fn griess_products() {
        let sug = Sugawara::new(2).unwrap();
        let table = griess_table(&sug);
        // pairs: (1,1), (1,2), (2,2)
        assert_eq!(table.product(0, 0), &[s("2"), s("0"), s("0")]);
        assert_eq!(table.product(0, 2), &[s("0"), s("0"), s("0")]);
        assert_eq!(table.product(1, 1), &[s("1/2"), s("0"), s("1/2")]);
        assert!(verify_griess(&table).iter().all(IdentityCheck::passed));
    }

    #[test]
    fn generators_are_quasi_primary() {
        for d in 1..=3 {
            assert!(quasi_primary_check(&Sugawara::new(d).unwrap()).passed());
        }
    }

    #[test]
    fn pairing_on_weight_two() {
        let sug = Sugawara::new(2).unwrap();
        let w = |i, j| ModeWord::new(vec![ModeSymbol::new(i, j, -2)]);
        assert_eq!(
            inner_product(&sug, &ModeWord::vacuum(), &ModeWord::vacuum()),
            Scalar::one()
        );
        assert_eq!(inner_product(&sug, &w(1, 1), &w(1, 1)), s("1/2*r"));
        assert_eq!(inner_product(&sug, &w(1, 2), &w(1, 2)), s("1/4*r"));
        assert_eq!(inner_product(&sug, &w(1, 1), &w(2, 2)), Scalar::zero());
    }
}
