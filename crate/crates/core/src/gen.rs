//! Seeded random frames, models and formulas for property checks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kripke::{Frame, KripkeModel, PredicateFrame};
use crate::syntax::ModalFormula;

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `1..=max_worlds` worlds named `u0, u1, …`, each ordered pair (loops
/// included) an edge with probability `edge_prob`.
pub fn random_frame(rng: &mut GenRng, max_worlds: usize, edge_prob: f64) -> Frame {
    let n = rng.gen_range(1..=max_worlds.max(1));
    let names = (0..n).map(|i| format!("u{i}")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(edge_prob) {
                edges.push((a, b));
            }
        }
    }
    Frame::from_indices(names, edges).expect("generated pairs are distinct")
}

/// Monotone domains over a pool of `1..=max_domain` elements: random seeds
/// per world, then closed upward along `R`.
pub fn random_pframe(rng: &mut GenRng, frame: Frame, max_domain: usize) -> PredicateFrame {
    let pool = rng.gen_range(1..=max_domain.max(1));
    let mut masks: Vec<u32> = (0..frame.len())
        .map(|_| rng.gen_range(1..(1u32 << pool)))
        .collect();
    loop {
        let mut changed = false;
        for (a, b) in frame.edges() {
            let grown = masks[b] | masks[a];
            if grown != masks[b] {
                masks[b] = grown;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let elements = (0..pool).map(|e| format!("a{e}")).collect();
    let domains = masks
        .iter()
        .map(|&m| (0..pool).filter(|e| m >> e & 1 == 1).collect())
        .collect();
    PredicateFrame::new(frame, elements, domains).expect("upward closure is monotone")
}

/// Up to `max_letters` letters (`P`, `Q`, `S`, …) with arities in
/// `0..=max_arity`.
pub fn random_signature(
    rng: &mut GenRng,
    max_letters: usize,
    max_arity: usize,
) -> BTreeMap<String, usize> {
    const NAMES: [&str; 6] = ["P", "Q", "S", "T", "U", "V"];
    let k = rng.gen_range(1..=max_letters.clamp(1, NAMES.len()));
    NAMES[..k]
        .iter()
        .map(|l| (l.to_string(), rng.gen_range(0..=max_arity)))
        .collect()
}

/// Each admissible tuple holds with probability `density`.
pub fn random_model(
    rng: &mut GenRng,
    pframe: PredicateFrame,
    signature: BTreeMap<String, usize>,
    density: f64,
) -> KripkeModel {
    let mut m = KripkeModel::new(pframe, signature.clone());
    for (letter, &arity) in &signature {
        for w in 0..m.frame().len() {
            let dom: Vec<usize> = m.pframe().domain(w).iter().copied().collect();
            for t in tuples(&dom, arity) {
                if rng.gen_bool(density) {
                    m.insert(letter, w, t).expect("tuple drawn from the domain");
                }
            }
        }
    }
    m
}

fn tuples(dom: &[usize], arity: usize) -> Vec<Vec<usize>> {
    (0..arity).fold(vec![Vec::new()], |acc, _| {
        acc.iter()
            .flat_map(|t| {
                dom.iter().map(move |&e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect()
    })
}

/// Random closed formula over `signature` with modal depth at most
/// `max_md` and roughly `size` connectives. Letters of positive arity only
/// appear under quantifiers binding enough variables.
pub fn random_formula(
    rng: &mut GenRng,
    signature: &BTreeMap<String, usize>,
    max_md: usize,
    size: usize,
) -> ModalFormula {
    let letters: Vec<(&str, usize)> = signature.iter().map(|(l, &a)| (l.as_str(), a)).collect();
    let mut scope = Vec::new();
    formula(rng, &letters, max_md, size, &mut scope)
}

/// As [`random_formula`] with the given 0-ary letters only.
pub fn random_prop_formula(
    rng: &mut GenRng,
    letters: &[&str],
    max_md: usize,
    size: usize,
) -> ModalFormula {
    let sig: BTreeMap<String, usize> = letters.iter().map(|l| (l.to_string(), 0)).collect();
    random_formula(rng, &sig, max_md, size)
}

fn leaf(rng: &mut GenRng, letters: &[(&str, usize)], scope: &[String]) -> ModalFormula {
    let usable: Vec<&(&str, usize)> = letters
        .iter()
        .filter(|(_, a)| *a == 0 || !scope.is_empty())
        .collect();
    if usable.is_empty() || rng.gen_bool(0.15) {
        return if rng.gen_bool(0.5) {
            ModalFormula::bot()
        } else {
            ModalFormula::top()
        };
    }
    let &&(letter, arity) = usable.choose(rng).expect("non-empty");
    let args: Vec<String> = (0..arity)
        .map(|_| scope.choose(rng).expect("scope").clone())
        .collect();
    ModalFormula::atom(letter, args)
}

fn formula(
    rng: &mut GenRng,
    letters: &[(&str, usize)],
    md: usize,
    size: usize,
    scope: &mut Vec<String>,
) -> ModalFormula {
    let needs_binder = scope.is_empty() && letters.iter().all(|(_, a)| *a > 0);
    if size == 0 && !needs_binder {
        return leaf(rng, letters, scope);
    }
    let choice = rng.gen_range(0..8);
    let size = size.saturating_sub(1);
    match choice {
        _ if needs_binder || choice >= 6 => {
            let v = format!("x{}", scope.len());
            scope.push(v.clone());
            let body = formula(rng, letters, md, size, scope);
            scope.pop();
            if rng.gen_bool(0.5) {
                ModalFormula::forall(v, body)
            } else {
                ModalFormula::exists(v, body)
            }
        }
        0 => ModalFormula::not(formula(rng, letters, md, size, scope)),
        1 | 2 => {
            let left = rng.gen_range(0..=size);
            let a = formula(rng, letters, md, left, scope);
            let b = formula(rng, letters, md, size - left, scope);
            match rng.gen_range(0..3) {
                0 => ModalFormula::and(a, b),
                1 => ModalFormula::or(a, b),
                _ => ModalFormula::implies(a, b),
            }
        }
        _ if md == 0 => leaf(rng, letters, scope),
        3 | 4 => ModalFormula::nec(formula(rng, letters, md - 1, size, scope)),
        _ => ModalFormula::poss(formula(rng, letters, md - 1, size, scope)),
    }
}
