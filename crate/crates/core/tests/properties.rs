//! Property tests against small independent oracles: a naive propositional
//! evaluator over every valuation, brute-force frame isomorphism, and the
//! plain EF game rules as algebraic laws.

use std::collections::BTreeMap;

use proptest::prelude::*;

use predmodal::efgames::{duplicator_wins, frame_structure};
use predmodal::frames::{chain_frame, reach_exactly, ring_frame};
use predmodal::gen;
use predmodal::translate::describe_frame;
use predmodal::validity::frame_validity;
use predmodal::{
    eval_fol, parse_fol, parse_modal, Assignment, ClassicalStructure, FolFormula, Frame,
    ModalFormula,
};

fn modal_strategy() -> impl Strategy<Value = ModalFormula> {
    let leaf = prop_oneof![
        Just(ModalFormula::bot()),
        prop::sample::select(vec!["p", "q", "r"]).prop_map(ModalFormula::prop),
        (
            prop::sample::select(vec!["x", "y"]),
            prop::sample::select(vec!["x", "y"])
        )
            .prop_map(|(a, b)| ModalFormula::atom("P", [a, b])),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ModalFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::implies(a, b)),
            inner.clone().prop_map(ModalFormula::nec),
            inner.clone().prop_map(ModalFormula::poss),
            (prop::sample::select(vec!["x", "y"]), inner.clone())
                .prop_map(|(v, f)| ModalFormula::forall(v, f)),
            (prop::sample::select(vec!["x", "y"]), inner)
                .prop_map(|(v, f)| ModalFormula::exists(v, f)),
        ]
    })
}

fn fol_strategy() -> impl Strategy<Value = FolFormula> {
    let var = || prop::sample::select(vec!["x", "y", "z"]);
    let leaf = prop_oneof![
        Just(FolFormula::bot()),
        (var(), var()).prop_map(|(a, b)| FolFormula::eq(a, b)),
        (var(), var()).prop_map(|(a, b)| FolFormula::r(a, b)),
        var().prop_map(FolFormula::w),
        (var(), var()).prop_map(|(a, b)| FolFormula::rel("P'", [a, b])),
    ];
    leaf.prop_recursive(5, 40, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(FolFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FolFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FolFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FolFormula::iff(a, b)),
            (var(), inner.clone()).prop_map(|(v, f)| FolFormula::forall(v, f)),
            (var(), inner).prop_map(|(v, f)| FolFormula::exists(v, f)),
        ]
    })
}

proptest! {
    #[test]
    fn modal_print_parse_round_trip(phi in modal_strategy()) {
        let text = phi.to_string();
        prop_assert_eq!(parse_modal(&text).unwrap(), phi, "{}", text);
    }

    #[test]
    fn fol_print_parse_round_trip(phi in fol_strategy()) {
        let text = phi.to_string();
        prop_assert_eq!(parse_fol(&text).unwrap(), phi, "{}", text);
    }

    #[test]
    fn ef_symmetric_and_monotone(seed in any::<u64>(), r in 0usize..4) {
        let mut rng = gen::rng(seed);
        let a = frame_structure(&gen::random_frame(&mut rng, 4, 0.4));
        let b = frame_structure(&gen::random_frame(&mut rng, 4, 0.4));
        let ab = duplicator_wins(&a, &b, r).unwrap();
        prop_assert_eq!(ab, duplicator_wins(&b, &a, r).unwrap());
        if duplicator_wins(&a, &b, r + 1).unwrap() {
            prop_assert!(ab);
        }
    }
}

/// Truth of a propositional modal formula under one valuation, straight
/// from the clauses.
fn naive(f: &Frame, val: &BTreeMap<String, Vec<bool>>, w: usize, phi: &ModalFormula) -> bool {
    match phi {
        ModalFormula::Atom { letter, .. } => val[letter][w],
        ModalFormula::Falsum => false,
        ModalFormula::Not(g) => !naive(f, val, w, g),
        ModalFormula::And(a, b) => naive(f, val, w, a) && naive(f, val, w, b),
        ModalFormula::Nec(g) => f.successors(w).iter().all(|&v| naive(f, val, v, g)),
        ModalFormula::Forall(_, g) => naive(f, val, w, g),
    }
}

/// Frame validity by enumerating every valuation on every world.
fn naive_valid(f: &Frame, phi: &ModalFormula) -> bool {
    let letters: Vec<String> = phi.letters().unwrap().into_keys().collect();
    let bits = letters.len() * f.len();
    (0u64..1 << bits).all(|code| {
        let val: BTreeMap<String, Vec<bool>> = letters
            .iter()
            .enumerate()
            .map(|(i, l)| {
                (
                    l.clone(),
                    (0..f.len())
                        .map(|w| code >> (i * f.len() + w) & 1 == 1)
                        .collect(),
                )
            })
            .collect();
        (0..f.len()).all(|w| naive(f, &val, w, phi))
    })
}

#[test]
fn frame_validity_matches_full_valuation_enumeration() {
    let mut rng = gen::rng(99);
    let mut refuted = 0;
    for _ in 0..400 {
        let f = gen::random_frame(&mut rng, 4, 0.35);
        let phi = gen::random_prop_formula(&mut rng, &["p", "q"], 3, 6);
        let expected = naive_valid(&f, &phi);
        refuted += usize::from(!expected);
        assert_eq!(
            frame_validity(&f, &phi, 1).unwrap(),
            expected,
            "{phi} on {f:?}"
        );
    }
    assert!(
        refuted > 50 && refuted < 400,
        "degenerate sample: {refuted} refuted"
    );
}

#[test]
fn family_frames_against_full_enumeration() {
    let zeta = predmodal::syntax::mk_zeta();
    for n in 2..=5 {
        let f = chain_frame(n).unwrap();
        assert_eq!(
            frame_validity(&f, &zeta, 1).unwrap(),
            naive_valid(&f, &zeta)
        );
        let g = ring_frame(n).unwrap();
        assert_eq!(
            frame_validity(&g, &zeta, 1).unwrap(),
            naive_valid(&g, &zeta)
        );
    }
}

fn isomorphic(f: &Frame, g: &Frame) -> bool {
    fn go(f: &Frame, g: &Frame, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == f.len() {
            return true;
        }
        for j in 0..g.len() {
            if used[j] {
                continue;
            }
            let fits = (0..i).all(|k| {
                f.has_edge(k, i) == g.has_edge(map[k], j)
                    && f.has_edge(i, k) == g.has_edge(j, map[k])
            }) && f.has_edge(i, i) == g.has_edge(j, j);
            if fits {
                map.push(j);
                used[j] = true;
                if go(f, g, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    f.len() == g.len()
        && f.edge_count() == g.edge_count()
        && go(f, g, &mut Vec::new(), &mut vec![false; g.len()])
}

fn all_frames(n: usize) -> Vec<Frame> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    (0u32..1 << (n * n))
        .map(|code| {
            let edges = (0..n * n)
                .filter(|b| code >> b & 1 == 1)
                .map(|b| (b / n, b % n))
                .collect::<Vec<_>>();
            Frame::from_indices(names.clone(), edges).unwrap()
        })
        .collect()
}

#[test]
fn describer_holds_exactly_on_isomorphic_copies() {
    let mut frames = all_frames(1);
    frames.extend(all_frames(2));
    let threes = all_frames(3);
    frames.extend(threes.iter().step_by(7).cloned());
    for f in &frames {
        let description = describe_frame(f);
        assert!(description.is_closed());
        for g in &frames {
            let holds = eval_fol(
                &ClassicalStructure::from_frame(g),
                &Assignment::new(),
                &description,
            )
            .unwrap();
            assert_eq!(holds, isomorphic(f, g), "{f:?} vs {g:?}");
        }
    }
}

#[test]
fn reach_exactly_on_rings_is_modular() {
    for m in 2..=6 {
        let g = ring_frame(m).unwrap();
        for k in 0..=2 * m {
            let layer = reach_exactly(&g, 0, k);
            assert!(layer.contains(&(k % m)), "G{m}, k={k}");
            assert_eq!(layer.contains(&m), k % m == 1, "wstar at k={k}");
        }
    }
}
