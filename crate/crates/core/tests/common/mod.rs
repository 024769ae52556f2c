//! Generators shared by the property tests and the acceptance suite.
#![allow(dead_code)]

use std::sync::OnceLock;

use deformed_voa::scalar::ratio;
use deformed_voa::voa::pair_word;
use deformed_voa::{
    DeformedLie, FockSpace, FockVector, LieElement, ModeSymbol, ModeWord, Rational, Scalar,
    Sugawara,
};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(rational(), 0..4).prop_map(Scalar::from_coeffs)
}

pub const D: usize = 3;

pub fn lie() -> &'static DeformedLie {
    static LIE: OnceLock<DeformedLie> = OnceLock::new();
    LIE.get_or_init(|| DeformedLie::new(D).unwrap())
}

pub fn fock() -> &'static FockSpace {
    static FOCK: OnceLock<FockSpace> = OnceLock::new();
    FOCK.get_or_init(|| FockSpace::new(lie().clone()))
}

/// A product `v^i(m) v^j(n)` in normal form, possibly with a central part.
pub fn quadratic(modes: i32) -> impl Strategy<Value = LieElement> {
    (1..=D, -modes..=modes, 1..=D, -modes..=modes)
        .prop_map(|(i, m, j, n)| lie().normalize_quadratic(i, m, j, n).unwrap())
}

pub fn element() -> impl Strategy<Value = LieElement> {
    prop::collection::vec((quadratic(3), -3i64..=3), 1..3).prop_map(|terms| {
        let mut out = LieElement::zero();
        for (q, c) in terms {
            out.add_scaled(&q, &Scalar::from_i64(c));
        }
        out
    })
}

pub fn fock_vector(max_weight: usize) -> impl Strategy<Value = FockVector> {
    prop::collection::vec(
        (0..=max_weight, any::<prop::sample::Index>(), scalar()),
        1..4,
    )
    .prop_map(|terms| {
        let mut v = FockVector::zero();
        for (w, idx, c) in terms {
            let basis = fock().basis_of_weight(w);
            if !basis.is_empty() {
                v.add_term(idx.get(&basis).clone(), &c);
            }
        }
        v
    })
}

pub fn sugawara() -> &'static Sugawara {
    static SUG: OnceLock<Sugawara> = OnceLock::new();
    SUG.get_or_init(|| Sugawara::new(2).unwrap())
}

/// Words of creation modes `L^{ij}(n)`, `n <= -2`, of total weight `<= 6`.
pub fn creation_words() -> &'static Vec<ModeWord> {
    static WORDS: OnceLock<Vec<ModeWord>> = OnceLock::new();
    WORDS.get_or_init(|| {
        let pairs = sugawara().index_pairs();
        let mut out = vec![ModeWord::vacuum()];
        let mut frontier = vec![ModeWord::vacuum()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for &(i, j) in &pairs {
                    for n in -6..=-2 {
                        let word = w.prepend(ModeSymbol::new(i, j, n));
                        if word.weight() <= 6 {
                            next.push(word);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    })
}

/// `⟨L^s(-m) u, w⟩ == ⟨u, L^s(m) w⟩` with `m = weight(u) - weight(w)`, each
/// side computed from a different end. `None` if `|m| > 6`.
pub fn invariance_holds(u: &ModeWord, w: &ModeWord, pair: usize) -> Option<bool> {
    let m = u.weight() - w.weight();
    if m.abs() > 6 {
        return None;
    }
    let sug = sugawara();
    let (i, j) = sug.index_pairs()[pair];
    let s = ModeSymbol::new(i, j, -(m as i32));
    let lhs = pair_word(sug, w, &sug.mode_apply(s, &sug.word_to_fock(u)));
    let rhs = pair_word(sug, u, &sug.mode_apply(s.adjoint(), &sug.word_to_fock(w)));
    Some(lhs == rhs)
}

pub fn jacobi_holds(a: &LieElement, b: &LieElement, c: &LieElement) -> bool {
    let br = |x: &LieElement, y: &LieElement| lie().bracket(x, y).unwrap();
    br(a, &br(b, c))
        .sum(&br(b, &br(c, a)))
        .sum(&br(c, &br(a, b)))
        .is_zero()
}

pub fn module_axiom_holds(a: &LieElement, b: &LieElement, v: &FockVector) -> bool {
    let f = fock();
    let lhs = f.act(&lie().bracket(a, b).unwrap(), v);
    let rhs = f.act(a, &f.act(b, v)).difference(&f.act(b, &f.act(a, v)));
    lhs == rhs
}
