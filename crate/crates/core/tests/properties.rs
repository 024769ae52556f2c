mod common;

use common::*;
use deformed_voa::jordan::SymMatrix;
use deformed_voa::scalar::ratio;
use deformed_voa::voa::pair_word;
use deformed_voa::{FockMonomial, FockVector, LieElement, ModeSymbol, Scalar, ScalarMatrix};
use proptest::prelude::*;

proptest! {
    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &a), &Scalar::zero());
    }

    #[test]
    fn specialize_is_a_ring_homomorphism(a in scalar(), b in scalar(), x in rational()) {
        prop_assert_eq!((&a * &b).specialize(&x), a.specialize(&x) * b.specialize(&x));
        prop_assert_eq!((&a + &b).specialize(&x), a.specialize(&x) + b.specialize(&x));
    }

    #[test]
    fn display_parse_round_trip(a in scalar()) {
        let parsed: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn kernel_vectors_are_exact(
        rows in 1usize..4,
        entries in prop::collection::vec(scalar(), 16),
        at in prop::option::of(rational()),
    ) {
        let cols = 4;
        let m = ScalarMatrix::from_rows(
            (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect(),
        );
        let ns = m.nullspace(at.as_ref());
        prop_assert_eq!(ns.rank + ns.nullity(), cols);
        let target = match &at {
            Some(x) => m.specialize(x),
            None => m.clone(),
        };
        for v in &ns.basis {
            prop_assert!(target.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn bracket_is_antisymmetric(a in element(), b in element()) {
        let ab = lie().bracket(&a, &b).unwrap();
        let ba = lie().bracket(&b, &a).unwrap();
        prop_assert!(ab.sum(&ba).is_zero());
    }

    #[test]
    fn pure_quadratic_brackets_split_by_r(a in quadratic(4), b in quadratic(4)) {
        let strip = |x: &LieElement| {
            let mut y = LieElement::zero();
            for (q, c) in x.quadratic_terms() {
                y.add_quadratic(*q, c);
            }
            y
        };
        let out = lie().bracket(&strip(&a), &strip(&b)).unwrap();
        prop_assert!(out.quadratic_terms().all(|(_, c)| c.is_constant()));
        let central = out.central_part();
        prop_assert!(central.is_zero() || (central.degree() == Some(1) && central.coeff(0) == ratio(0, 1)));
    }

    #[test]
    fn creation_part_is_commutative(
        i in 1..=D, j in 1..=D, s in 1..=D, t in 1..=D,
        m in -4i32..=-1, n in -4i32..=-1, p in -4i32..=-1, q in -4i32..=-1,
    ) {
        let a = lie().normalize_quadratic(i, m, j, n).unwrap();
        let b = lie().normalize_quadratic(s, p, t, q).unwrap();
        prop_assert!(lie().bracket(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn jordan_axioms(d in 1usize..=4, seed in prop::collection::vec(rational(), 20)) {
        let sym = |offset: usize| {
            let mut m = SymMatrix::zeros(d);
            let mut k = offset;
            for i in 0..d {
                for j in i..d {
                    m.set(i, j, Scalar::constant(seed[k % seed.len()].clone()));
                    k += 1;
                }
            }
            m
        };
        let (a, b) = (sym(0), sym(10));
        let ab = a.jordan_product(&b).unwrap();
        prop_assert_eq!(&ab, &b.jordan_product(&a).unwrap());
        let aa = a.jordan_product(&a).unwrap();
        let lhs = ab.jordan_product(&aa).unwrap();
        let rhs = a.jordan_product(&b.jordan_product(&aa).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn jacobi_identity(a in element(), b in element(), c in element()) {
        prop_assert!(jacobi_holds(&a, &b, &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn module_axiom(a in element(), b in element(), v in fock_vector(6)) {
        prop_assert!(module_axiom_holds(&a, &b, &v));
    }

    #[test]
    fn creation_raises_weight(i in 1..=D, j in 1..=D, m in -3i32..=-1, n in -3i32..=-1, w in 0usize..=4, idx in any::<prop::sample::Index>()) {
        let basis = fock().basis_of_weight(w);
        prop_assume!(!basis.is_empty());
        let v = FockVector::from_monomial(idx.get(&basis).clone());
        let out = fock().act(&lie().normalize_quadratic(i, m, j, n).unwrap(), &v);
        prop_assert_eq!(out.weight(), Some(w as i64 - i64::from(m + n)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// `⟨L(m) u, w⟩ = ⟨u, L(-m) w⟩`, with each side computed from a different
    /// end.
    #[test]
    fn form_is_invariant(
        u in any::<prop::sample::Index>(),
        w in any::<prop::sample::Index>(),
        pair in 0usize..3,
    ) {
        let words = creation_words();
        let (u, w) = (u.get(words), w.get(words));
        let holds = invariance_holds(u, w, pair);
        prop_assume!(holds.is_some());
        prop_assert_eq!(holds, Some(true));
    }

    /// Summands of `L^{ij}(n)` outside `h ∈ [n-N, N]` annihilate weight `N`.
    #[test]
    fn truncation_window_is_sufficient(
        i in 1u16..=2, j in 1u16..=2, n in -5i32..=5,
        w in 0usize..=5, idx in any::<prop::sample::Index>(), widen in 1i32..=4,
    ) {
        let sug = sugawara();
        let basis = sug.fock().basis_of_weight(w);
        prop_assume!(!basis.is_empty());
        let m: &FockMonomial = idx.get(&basis);
        let v = FockVector::from_monomial(m.clone());
        let s = ModeSymbol::new(i, j, n);
        let top = w as i32;
        let wide = sug.literal_mode_element(s, n - top - widen, top + widen);
        prop_assert_eq!(sug.fock().act(&wide, &v), sug.mode_apply(s, &v));
    }
}

#[test]
fn invariance_sample_is_not_vacuous() {
    let sug = sugawara();
    let words = creation_words();
    let mut nonzero = 0;
    let mut total = 0;
    for (a, u) in words.iter().enumerate().step_by(7) {
        for w in words.iter().skip(a % 5).step_by(11) {
            let m = u.weight() - w.weight();
            if m.abs() > 6 {
                continue;
            }
            let s = ModeSymbol::new(1, 2, -(m as i32));
            let lhs = pair_word(sug, w, &sug.mode_apply(s, &sug.word_to_fock(u)));
            total += 1;
            nonzero += usize::from(!lhs.is_zero());
        }
    }
    assert!(total > 100 && nonzero * 10 > total, "{nonzero} of {total}");
}
