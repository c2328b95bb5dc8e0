//! Modal-to-classical compilation: the standard translation, relativization
//! to the world sort, the frame theory `M`, finite frame describers, and the
//! two embeddings `φ̂` (even chains) and `φ̄` (even rings).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::frames::{chain_union, ring_union};
use crate::kripke::{primed, Frame};
use crate::syntax::{FolFormula, ModalFormula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("variable `{0}` already occurs in the formula")]
    VariableCapture(String),
    #[error("the embedding needs a closed formula; free variables: {0:?}")]
    NotClosed(Vec<String>),
}

/// Which frame class an embedding targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Logic {
    /// Even chains with a dead end off the root.
    L0,
    /// Even rings with a dead end off `w1`.
    L1,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::L0 => "L0",
            Logic::L1 => "L1",
        })
    }
}

impl FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L0" | "l0" => Ok(Logic::L0),
            "L1" | "l1" => Ok(Logic::L1),
            other => Err(format!("unknown logic `{other}` (expected L0 or L1)")),
        }
    }
}

/// Fresh-variable supply for one translation.
///
/// Generated names live in the `_v` namespace, which the modal parser
/// refuses, so they cannot clash with anything a user wrote.
#[derive(Debug, Clone)]
pub struct TranslationContext {
    next: usize,
    taken: BTreeSet<String>,
}

impl TranslationContext {
    pub fn for_formula(phi: &ModalFormula) -> Self {
        TranslationContext {
            next: 0,
            taken: phi.variables(),
        }
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let v = format!("_v{}", self.next);
            self.next += 1;
            if self.taken.insert(v.clone()) {
                return v;
            }
        }
    }

    fn translate(&mut self, phi: &ModalFormula, x: &str) -> FolFormula {
        match phi {
            ModalFormula::Atom { letter, args } => {
                let mut row = args.clone();
                row.push(x.to_string());
                FolFormula::rel(primed(letter), row)
            }
            ModalFormula::Falsum => FolFormula::bot(),
            ModalFormula::Not(f) => FolFormula::not(self.translate(f, x)),
            ModalFormula::And(a, b) => FolFormula::and(self.translate(a, x), self.translate(b, x)),
            ModalFormula::Nec(f) => {
                let y = self.fresh();
                let body = self.translate(f, &y);
                FolFormula::forall(
                    y.clone(),
                    FolFormula::implies(
                        FolFormula::and(FolFormula::w(&y), FolFormula::r(x, &y)),
                        body,
                    ),
                )
            }
            ModalFormula::Forall(y, f) => FolFormula::forall(
                y.clone(),
                FolFormula::implies(
                    FolFormula::and(FolFormula::not(FolFormula::w(y)), FolFormula::d(x, y)),
                    self.translate(f, x),
                ),
            ),
        }
    }
}

/// `ST_x(φ)`.
pub fn standard_translation(phi: &ModalFormula, x: &str) -> Result<FolFormula, TranslateError> {
    let mut ctx = TranslationContext::for_formula(phi);
    if !ctx.taken.insert(x.to_string()) {
        return Err(TranslateError::VariableCapture(x.to_string()));
    }
    Ok(ctx.translate(phi, x))
}

/// `Φ*`: every quantifier is guarded by `W`.
pub fn relativize(phi: &FolFormula) -> FolFormula {
    match phi {
        FolFormula::Eq(..) | FolFormula::Rel { .. } | FolFormula::Falsum => phi.clone(),
        FolFormula::Not(f) => FolFormula::not(relativize(f)),
        FolFormula::And(a, b) => FolFormula::and(relativize(a), relativize(b)),
        FolFormula::Forall(x, f) => FolFormula::forall(
            x.clone(),
            FolFormula::implies(FolFormula::w(x), relativize(f)),
        ),
    }
}

/// Label of the first conjunct of `M`.
pub const M_WORLDS: &str = "∃x W(x)";
/// Label of the second conjunct of `M`.
pub const M_DOMAINS: &str = "∃y D(x,y)";
/// Label of the third conjunct of `M`.
pub const M_MONOTONE: &str = "R(x,y) ∧ D(x,z) → D(y,z)";

/// The three conjuncts of `M` with short labels for error reporting.
pub fn mk_m_conjuncts() -> [(FolFormula, &'static str); 3] {
    use FolFormula as F;
    let worlds = F::exists("x", F::w("x"));
    let domains = F::forall("x", F::implies(F::w("x"), F::exists("y", F::d("x", "y"))));
    let guard = F::conj([
        F::w("x"),
        F::w("y"),
        F::not(F::w("z")),
        F::r("x", "y"),
        F::d("x", "z"),
    ]);
    let monotone = F::forall(
        "x",
        F::forall("y", F::forall("z", F::implies(guard, F::d("y", "z")))),
    );
    [
        (worlds, M_WORLDS),
        (domains, M_DOMAINS),
        (monotone, M_MONOTONE),
    ]
}

/// `M`: worlds exist, domains are non-empty, domains grow along `R`.
pub fn mk_m() -> FolFormula {
    FolFormula::conj(mk_m_conjuncts().into_iter().map(|(f, _)| f))
}

/// A closed `{R, =}`-sentence true exactly in the structures isomorphic to
/// `f`.
///
/// Shape: `∃x₀(C₀ ∧ ∃x₁(C₁ ∧ … ∃xₙ₋₁(Cₙ₋₁ ∧ ∀u ⋁ᵢ u = xᵢ)))` where `Cᵢ`
/// collects every distinctness, edge and non-edge literal whose largest
/// variable is `xᵢ`. This is equivalent to the flat prenex description, and
/// evaluates as a backtracking isomorphism search.
pub fn describe_frame(f: &Frame) -> FolFormula {
    use FolFormula as F;
    let var = |i: usize| format!("_w{i}");
    let n = f.len();
    let total = F::forall("_u", F::disj((0..n).map(|i| F::eq("_u", var(i)))));
    (0..n).rev().fold(total, |inner, i| {
        let xi = var(i);
        let literal = |a: usize, b: usize| {
            let atom = F::r(&var(a), &var(b));
            if f.has_edge(a, b) {
                atom
            } else {
                F::not(atom)
            }
        };
        let mut lits: Vec<FolFormula> = (0..i).map(|j| F::neq(var(j), xi.clone())).collect();
        for j in 0..i {
            lits.push(literal(j, i));
            lits.push(literal(i, j));
        }
        lits.push(literal(i, i));
        lits.push(inner);
        F::exists(xi, F::conj(lits))
    })
}

fn embed_with(phi: &ModalFormula, union: &Frame) -> Result<FolFormula, TranslateError> {
    if !phi.is_closed() {
        return Err(TranslateError::NotClosed(
            phi.free_vars().into_iter().collect(),
        ));
    }
    let mut ctx = TranslationContext::for_formula(phi);
    let x = ctx.fresh();
    let st = ctx.translate(phi, &x);
    let antecedent = FolFormula::and(mk_m(), relativize(&describe_frame(union)));
    let consequent = FolFormula::forall(x.clone(), FolFormula::implies(FolFormula::w(&x), st));
    Ok(FolFormula::implies(antecedent, consequent))
}

/// The union frame whose description appears in the embedding of `phi`.
pub fn embedding_frame(logic: Logic, phi: &ModalFormula) -> Frame {
    let bound = phi.modal_depth() + 3;
    match logic {
        Logic::L0 => chain_union(bound),
        Logic::L1 => ring_union(bound),
    }
    .expect("md + 3 >= 3 leaves at least one component")
}

/// `φ̂ = M ∧ F*_{md(φ)+3} → ∀x(W(x) → ST_x(φ))`.
pub fn embed_l0(phi: &ModalFormula) -> Result<FolFormula, TranslateError> {
    embed_with(phi, &embedding_frame(Logic::L0, phi))
}

/// `φ̄ = M ∧ G*_{md(φ)+3} → ∀x(W(x) → ST_x(φ))`.
pub fn embed_l1(phi: &ModalFormula) -> Result<FolFormula, TranslateError> {
    embed_with(phi, &embedding_frame(Logic::L1, phi))
}

pub fn embed(logic: Logic, phi: &ModalFormula) -> Result<FolFormula, TranslateError> {
    match logic {
        Logic::L0 => embed_l0(phi),
        Logic::L1 => embed_l1(phi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{chain_frame, ring_frame};
    use crate::kripke::{eval_fol, Assignment, ClassicalStructure};
    use crate::syntax::{parse_fol, parse_modal};

    #[test]
    fn st_examples() {
        let st = standard_translation(&parse_modal("[]P(y)").unwrap(), "x").unwrap();
        assert_eq!(
            st,
            parse_fol("!_v0. (W(_v0) & R(x,_v0) -> P'(y,_v0))").unwrap()
        );
        let st = standard_translation(&parse_modal("p").unwrap(), "x").unwrap();
        assert_eq!(st, FolFormula::rel("p'", ["x"]));
        let st = standard_translation(&parse_modal("forall y. P(y)").unwrap(), "x").unwrap();
        assert_eq!(st, parse_fol("!y. (~W(y) & D(x,y) -> P'(y,x))").unwrap());
    }

    #[test]
    fn st_rejects_capture() {
        let phi = parse_modal("forall x. P(x)").unwrap();
        assert_eq!(
            standard_translation(&phi, "x"),
            Err(TranslateError::VariableCapture("x".into()))
        );
    }

    #[test]
    fn fresh_variables_avoid_input() {
        let phi = parse_modal("forall y. [][] (P(y) & <> forall z. Q(y, z))").unwrap();
        let st = standard_translation(&phi, "x").unwrap();
        let fresh: Vec<String> = st
            .variables()
            .into_iter()
            .filter(|v| !phi.variables().contains(v) && v != "x")
            .collect();
        assert_eq!(fresh.len(), 3);
        assert!(fresh.iter().all(|v| v.starts_with("_v")));
        assert_eq!(st.free_vars(), BTreeSet::from(["x".to_string()]));
    }

    #[test]
    fn relativize_examples() {
        let phi = parse_fol("!x. ~R(x,x)").unwrap();
        assert_eq!(
            relativize(&phi),
            parse_fol("!x. (W(x) -> ~R(x,x))").unwrap()
        );
        let eq = parse_fol("x = y").unwrap();
        assert_eq!(relativize(&eq), eq);
        let deep = parse_fol("!x. ?y. !z. (R(x,y) | z = x)").unwrap();
        assert_eq!(relativize(&deep).quantifier_rank(), deep.quantifier_rank());
    }

    #[test]
    fn m_is_closed_with_three_conjuncts() {
        let m = mk_m();
        assert!(m.is_closed());
        assert_eq!(m.quantifier_rank(), 3);
        let empty = {
            let mut s = ClassicalStructure::new(vec!["e".into()]).unwrap();
            s.declare("R", 2);
            s.declare("W", 1);
            s.declare("D", 2);
            s
        };
        let g = Assignment::new();
        let conj = mk_m_conjuncts();
        assert!(!eval_fol(&empty, &g, &conj[0].0).unwrap());
        assert!(eval_fol(&empty, &g, &conj[1].0).unwrap());
        assert!(eval_fol(&empty, &g, &conj[2].0).unwrap());
    }

    #[test]
    fn describer_accepts_own_frame_only() {
        let f2 = chain_frame(2).unwrap();
        let f3 = chain_frame(3).unwrap();
        let d2 = describe_frame(&f2);
        let g = Assignment::new();
        assert!(d2.is_closed());
        assert!(eval_fol(&ClassicalStructure::from_frame(&f2), &g, &d2).unwrap());
        assert!(!eval_fol(&ClassicalStructure::from_frame(&f3), &g, &d2).unwrap());
        let g4 = ring_frame(4).unwrap();
        assert!(eval_fol(
            &ClassicalStructure::from_frame(&g4),
            &g,
            &describe_frame(&g4)
        )
        .unwrap());
    }

    #[test]
    fn embedding_shapes() {
        let phi = parse_modal("[] false").unwrap();
        assert_eq!(embedding_frame(Logic::L0, &phi).len(), 3 + 5);
        assert_eq!(embedding_frame(Logic::L1, &phi).len(), 3 + 5);
        let hat = embed_l0(&phi).unwrap();
        assert!(hat.is_closed());
        let open = parse_modal("P(y)").unwrap();
        assert!(matches!(embed_l1(&open), Err(TranslateError::NotClosed(_))));
    }
}
