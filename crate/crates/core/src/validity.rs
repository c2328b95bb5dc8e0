//! Frame validity by exhaustive interpretation search, and bounded
//! membership in the logics of even chains (`L0`) and even rings (`L1`).
//!
//! Truth of `φ` at `w` only looks at worlds reachable from `w` in exactly
//! `j` steps, for the modal depths `j` at which atoms and quantifiers occur.
//! The search enumerates interpretation bits on those worlds only. Domains
//! are drawn from a pool of at most `d` elements, enumerated as monotone
//! maps over the whole frame, then deduplicated by their restriction to
//! the relevant worlds.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::frames::{
    chain_frame, component_of, even_indices, reach_exactly, ring_frame, FrameError,
};
use crate::kripke::{
    eval_modal, Assignment, Frame, KripkeModel, ModelError, PredicateFrame, World,
};
use crate::syntax::{mk_alpha, mk_beta, ArityError, ModalFormula};
use crate::translate::{embedding_frame, Logic};

/// Default cap on formula evaluations plus domain maps visited.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Default pool size for domains.
pub const DEFAULT_DOMAIN_SIZE: usize = 2;

const MAX_POOL: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidityError {
    #[error("search budget of {budget} evaluations exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("membership search needs a closed formula; free variables: {0:?}")]
    NotClosed(Vec<String>),
    #[error(transparent)]
    Arity(#[from] ArityError),
    #[error("domain bound must be between 1 and {MAX_POOL}, got {0}")]
    DomainBound(usize),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("countermodel failed independent re-evaluation at `{0}`")]
    Unverified(String),
    #[error("frame index {index} is not a component of the embedding union up to {bound}")]
    OutsideEmbedding { index: usize, bound: usize },
}

/// Limits of a membership search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest frame index `m` tried (only even `m` belong to the classes).
    pub max_frame_index: usize,
    /// Size of the element pool domains are drawn from.
    pub max_domain_size: usize,
    /// The predicate letters of the formula with their arities.
    pub letters: BTreeMap<String, usize>,
    /// Evaluation budget shared by the whole search.
    pub budget: u64,
}

impl SearchBounds {
    /// `md(φ) + 3` frames, pool of two elements, default budget.
    pub fn for_formula(phi: &ModalFormula) -> Result<Self, ValidityError> {
        Ok(SearchBounds {
            max_frame_index: phi.modal_depth() + 3,
            max_domain_size: DEFAULT_DOMAIN_SIZE,
            letters: phi.letters()?,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_frame_index(mut self, m: usize) -> Self {
        self.max_frame_index = m;
        self
    }

    pub fn with_domain_size(mut self, d: usize) -> Self {
        self.max_domain_size = d;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// True when a negative answer under these bounds settles membership:
    /// only 0-ary letters, and every frame up to `md(φ) + 3` was searched.
    pub fn decides(&self, phi: &ModalFormula) -> bool {
        self.letters.values().all(|&a| a == 0) && self.max_frame_index >= phi.modal_depth() + 3
    }
}

/// A countermodel found by a membership search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub logic: Logic,
    /// `m` of the chain `F_m` or ring `G_m` carrying the model.
    pub frame_index: usize,
    pub model: KripkeModel,
    pub world: World,
}

impl Refutation {
    pub fn world_name(&self) -> &str {
        self.model.frame().name(self.world)
    }

    /// The countermodel carried over to the union frame described inside
    /// the embedding of `phi`. It becomes the component for its frame
    /// index; every other component gets the first pool element as its
    /// only domain member and an empty interpretation.
    pub fn embedding_model(&self, phi: &ModalFormula) -> Result<KripkeModel, ValidityError> {
        let union = embedding_frame(self.logic, phi);
        let bound = phi.modal_depth() + 3;
        if self.frame_index < 2 || self.frame_index % 2 == 1 || self.frame_index > bound {
            return Err(ValidityError::OutsideEmbedding {
                index: self.frame_index,
                bound,
            });
        }
        let own = self.frame_index / 2 - 1;
        let src = &self.model;
        let origin: Vec<Option<World>> = union
            .worlds()
            .iter()
            .map(|name| match component_of(name) {
                Some((c, w)) if c == own => src.frame().world(w),
                _ => None,
            })
            .collect();
        let domains = origin
            .iter()
            .map(|o| match o {
                Some(v) => src.pframe().domain(*v).clone(),
                None => BTreeSet::from([0]),
            })
            .collect();
        let pframe = PredicateFrame::new(union, src.pframe().elements().to_vec(), domains)?;
        let mut out = KripkeModel::new(pframe, src.signature().clone());
        for letter in src.signature().keys() {
            for (u, o) in origin.iter().enumerate() {
                if let Some(v) = o {
                    for t in src.tuples(letter, *v).into_iter().flatten() {
                        out.insert(letter, u, t.clone())?;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of a membership search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Refuted(Box<Refutation>),
    NoCountermodelUpTo(SearchBounds),
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Verdict::Refuted(r) => Some(r),
            Verdict::NoCountermodelUpTo(_) => None,
        }
    }
}

/// Formula with letters and bound variables resolved to indices.
enum Node {
    Atom { letter: usize, slots: Vec<usize> },
    Falsum,
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Nec(Box<Node>),
    Forall { slot: usize, body: Box<Node> },
}

struct Compiled {
    root: Node,
    letters: Vec<(String, usize)>,
    slots: usize,
    /// For each letter, the modal depths at which it occurs.
    atom_depths: Vec<BTreeSet<usize>>,
    /// Depths at which some atom or quantifier occurs.
    domain_depths: BTreeSet<usize>,
}

fn compile(phi: &ModalFormula) -> Result<Compiled, ValidityError> {
    let free = phi.free_vars();
    if !free.is_empty() {
        return Err(ValidityError::NotClosed(free.into_iter().collect()));
    }
    let sig = phi.letters()?;
    let letters: Vec<(String, usize)> = sig.into_iter().collect();
    let index: HashMap<&str, usize> = letters
        .iter()
        .enumerate()
        .map(|(i, (l, _))| (l.as_str(), i))
        .collect();
    let mut c = Compiled {
        root: Node::Falsum,
        atom_depths: vec![BTreeSet::new(); letters.len()],
        domain_depths: BTreeSet::new(),
        letters: Vec::new(),
        slots: 0,
    };
    let mut scope: Vec<&str> = Vec::new();
    c.root = compile_node(phi, 0, &index, &mut scope, &mut c);
    c.letters = letters;
    Ok(c)
}

fn compile_node<'a>(
    f: &'a ModalFormula,
    depth: usize,
    index: &HashMap<&str, usize>,
    scope: &mut Vec<&'a str>,
    c: &mut Compiled,
) -> Node {
    match f {
        ModalFormula::Atom { letter, args } => {
            let letter = index[letter.as_str()];
            c.atom_depths[letter].insert(depth);
            c.domain_depths.insert(depth);
            let slots = args
                .iter()
                .map(|a| scope.iter().rposition(|v| v == a).expect("closed formula"))
                .collect();
            Node::Atom { letter, slots }
        }
        ModalFormula::Falsum => Node::Falsum,
        ModalFormula::Not(g) => Node::Not(Box::new(compile_node(g, depth, index, scope, c))),
        ModalFormula::And(a, b) => Node::And(
            Box::new(compile_node(a, depth, index, scope, c)),
            Box::new(compile_node(b, depth, index, scope, c)),
        ),
        ModalFormula::Nec(g) => Node::Nec(Box::new(compile_node(g, depth + 1, index, scope, c))),
        ModalFormula::Forall(v, g) => {
            c.domain_depths.insert(depth);
            let slot = scope.len();
            scope.push(v);
            c.slots = c.slots.max(scope.len());
            let body = compile_node(g, depth, index, scope, c);
            scope.pop();
            Node::Forall {
                slot,
                body: Box::new(body),
            }
        }
    }
}

/// A model in search form: domains as bitmasks over the pool, and one bit
/// per (letter, world, tuple code).
struct Compact<'f> {
    frame: &'f Frame,
    pool: usize,
    domains: Vec<u32>,
    interp: Vec<Vec<Vec<bool>>>,
}

impl Compact<'_> {
    fn code(&self, env: &[usize], slots: &[usize]) -> usize {
        slots
            .iter()
            .rev()
            .fold(0, |acc, &s| acc * self.pool + env[s])
    }

    fn eval(&self, node: &Node, w: World, env: &mut [usize]) -> bool {
        match node {
            Node::Atom { letter, slots } => self.interp[*letter][w][self.code(env, slots)],
            Node::Falsum => false,
            Node::Not(g) => !self.eval(g, w, env),
            Node::And(a, b) => self.eval(a, w, env) && self.eval(b, w, env),
            Node::Nec(g) => self
                .frame
                .successors(w)
                .iter()
                .all(|&v| self.eval(g, v, env)),
            Node::Forall { slot, body } => {
                let saved = env[*slot];
                let mut ok = true;
                for e in 0..self.pool {
                    if self.domains[w] >> e & 1 == 1 {
                        env[*slot] = e;
                        if !self.eval(body, w, env) {
                            ok = false;
                            break;
                        }
                    }
                }
                env[*slot] = saved;
                ok
            }
        }
    }
}

/// Exhaustive countermodel search on one frame, with a shared budget.
pub struct Search<'a> {
    frame: &'a Frame,
    compiled: Compiled,
    phi: &'a ModalFormula,
    budget: u64,
    spent: u64,
}

impl<'a> Search<'a> {
    pub fn new(
        frame: &'a Frame,
        phi: &'a ModalFormula,
        budget: u64,
    ) -> Result<Self, ValidityError> {
        Ok(Search {
            frame,
            compiled: compile(phi)?,
            phi,
            budget,
            spent: 0,
        })
    }

    /// Evaluations spent so far.
    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn charge(&mut self, n: u64) -> Result<(), ValidityError> {
        self.spent = self.spent.saturating_add(n);
        if self.spent > self.budget {
            Err(ValidityError::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    fn propositional(&self) -> bool {
        self.compiled.letters.iter().all(|(_, a)| *a == 0)
    }

    /// The first model (in search order) with domains from a pool of at
    /// most `d` elements falsifying `φ` at `w`, re-verified by
    /// [`eval_modal`]. For 0-ary formulas `d` is irrelevant and a
    /// singleton domain is used.
    pub fn countermodel_at(
        &mut self,
        w: World,
        d: usize,
    ) -> Result<Option<KripkeModel>, ValidityError> {
        if d == 0 || d > MAX_POOL {
            return Err(ValidityError::DomainBound(d));
        }
        let f = self.frame;
        let layers: BTreeMap<usize, BTreeSet<World>> = self
            .compiled
            .domain_depths
            .iter()
            .map(|&j| (j, reach_exactly(f, w, j)))
            .collect();
        let letter_worlds: Vec<BTreeSet<World>> = self
            .compiled
            .atom_depths
            .iter()
            .map(|ds| ds.iter().flat_map(|j| layers[j].iter().copied()).collect())
            .collect();
        let relevant: BTreeSet<World> = layers.values().flatten().copied().collect();

        let pools: Vec<usize> = if self.propositional() {
            vec![1]
        } else {
            (1..=d).collect()
        };
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for pool in pools {
            for domains in monotone_domain_maps(f, pool) {
                self.charge(1)?;
                let projection: Vec<u32> = relevant.iter().map(|&v| domains[v]).collect();
                if !seen.insert(projection) {
                    continue;
                }
                if let Some(m) = self.search_interpretations(w, pool, domains, &letter_worlds)? {
                    return Ok(Some(m));
                }
            }
        }
        Ok(None)
    }

    fn search_interpretations(
        &mut self,
        w: World,
        pool: usize,
        domains: Vec<u32>,
        letter_worlds: &[BTreeSet<World>],
    ) -> Result<Option<KripkeModel>, ValidityError> {
        let f = self.frame;
        let mut interp: Vec<Vec<Vec<bool>>> = Vec::with_capacity(self.compiled.letters.len());
        let mut bits: Vec<(usize, World, usize)> = Vec::new();
        for (l, (_, arity)) in self.compiled.letters.iter().enumerate() {
            let width = pool.pow(*arity as u32);
            interp.push(vec![vec![false; width]; f.len()]);
            for &v in &letter_worlds[l] {
                for code in 0..width {
                    if tuple_of(code, pool, *arity)
                        .iter()
                        .all(|&e| domains[v] >> e & 1 == 1)
                    {
                        bits.push((l, v, code));
                    }
                }
            }
        }
        if bits.len() >= 63 {
            return Err(ValidityError::BudgetExceeded {
                budget: self.budget,
            });
        }
        let mut model = Compact {
            frame: f,
            pool,
            domains,
            interp,
        };
        let mut env = vec![0usize; self.compiled.slots];
        for pattern in 0u64..(1u64 << bits.len()) {
            self.charge(1)?;
            for (i, &(l, v, code)) in bits.iter().enumerate() {
                model.interp[l][v][code] = pattern >> i & 1 == 1;
            }
            if !model.eval(&self.compiled.root, w, &mut env) {
                let km = self.to_model(&model)?;
                if eval_modal(&km, w, &Assignment::new(), self.phi)? {
                    return Err(ValidityError::Unverified(f.name(w).to_string()));
                }
                return Ok(Some(km));
            }
        }
        Ok(None)
    }

    fn to_model(&self, c: &Compact<'_>) -> Result<KripkeModel, ValidityError> {
        let elements = (0..c.pool).map(|e| format!("a{e}")).collect();
        let domains = c
            .domains
            .iter()
            .map(|&mask| (0..c.pool).filter(|e| mask >> e & 1 == 1).collect())
            .collect();
        let pf = PredicateFrame::new(self.frame.clone(), elements, domains)?;
        let sig = self.compiled.letters.iter().cloned().collect();
        let mut km = KripkeModel::new(pf, sig);
        for (l, (letter, arity)) in self.compiled.letters.iter().enumerate() {
            for (v, row) in c.interp[l].iter().enumerate() {
                for (code, &on) in row.iter().enumerate() {
                    if on {
                        km.insert(letter, v, tuple_of(code, c.pool, *arity))?;
                    }
                }
            }
        }
        Ok(km)
    }
}

fn tuple_of(mut code: usize, pool: usize, arity: usize) -> Vec<usize> {
    let mut t = Vec::with_capacity(arity);
    for _ in 0..arity {
        t.push(code % pool);
        code /= pool;
    }
    t
}

/// Every assignment of non-empty subsets of a `pool`-element set to the
/// worlds of `f` that grows along `R`, in lexicographic order of the mask
/// vector.
pub fn monotone_domain_maps(f: &Frame, pool: usize) -> Vec<Vec<u32>> {
    fn go(f: &Frame, pool: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let w = cur.len();
        if w == f.len() {
            out.push(cur.clone());
            return;
        }
        for mask in 1..(1u32 << pool) {
            let fits = f
                .predecessors(w)
                .iter()
                .filter(|&&p| p < w)
                .all(|&p| cur[p] & !mask == 0)
                && f.successors(w)
                    .iter()
                    .filter(|&&s| s < w)
                    .all(|&s| mask & !cur[s] == 0);
            if fits {
                cur.push(mask);
                go(f, pool, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(f, pool, &mut Vec::with_capacity(f.len()), &mut out);
    out
}

/// Validity of `φ` at `w` over models whose domains come from a pool of `d`
/// elements, with the default budget.
pub fn frame_validity_at(
    f: &Frame,
    w: World,
    phi: &ModalFormula,
    d: usize,
) -> Result<bool, ValidityError> {
    frame_validity_at_with_budget(f, w, phi, d, DEFAULT_BUDGET)
}

pub fn frame_validity_at_with_budget(
    f: &Frame,
    w: World,
    phi: &ModalFormula,
    d: usize,
    budget: u64,
) -> Result<bool, ValidityError> {
    Ok(Search::new(f, phi, budget)?
        .countermodel_at(w, d)?
        .is_none())
}

/// Validity at every world.
pub fn frame_validity(f: &Frame, phi: &ModalFormula, d: usize) -> Result<bool, ValidityError> {
    frame_validity_with_budget(f, phi, d, DEFAULT_BUDGET)
}

pub fn frame_validity_with_budget(
    f: &Frame,
    phi: &ModalFormula,
    d: usize,
    budget: u64,
) -> Result<bool, ValidityError> {
    let mut search = Search::new(f, phi, budget)?;
    for w in 0..f.len() {
        if search.countermodel_at(w, d)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The `m`-th frame of the class behind `logic`.
pub fn class_frame(logic: Logic, m: usize) -> Result<Frame, FrameError> {
    match logic {
        Logic::L0 => chain_frame(m),
        Logic::L1 => ring_frame(m),
    }
}

/// Searches the even frames of `logic`'s class up to the bounds, in order
/// of frame index, then world, then pool size, then domain map, then
/// interpretation. The first countermodel in that order is returned.
pub fn in_logic(
    logic: Logic,
    phi: &ModalFormula,
    bounds: &SearchBounds,
) -> Result<Verdict, ValidityError> {
    if !phi.is_closed() {
        return Err(ValidityError::NotClosed(
            phi.free_vars().into_iter().collect(),
        ));
    }
    let mut spent = 0u64;
    for m in even_indices(bounds.max_frame_index) {
        let frame = class_frame(logic, m)?;
        let mut search = Search::new(&frame, phi, bounds.budget.saturating_sub(spent))?;
        for w in 0..frame.len() {
            if let Some(model) = search.countermodel_at(w, bounds.max_domain_size)? {
                return Ok(Verdict::Refuted(Box::new(Refutation {
                    logic,
                    frame_index: m,
                    model,
                    world: w,
                })));
            }
        }
        spent += search.spent();
    }
    Ok(Verdict::NoCountermodelUpTo(bounds.clone()))
}

pub fn in_l0(phi: &ModalFormula, bounds: &SearchBounds) -> Result<Verdict, ValidityError> {
    in_logic(Logic::L0, phi, bounds)
}

pub fn in_l1(phi: &ModalFormula, bounds: &SearchBounds) -> Result<Verdict, ValidityError> {
    in_logic(Logic::L1, phi, bounds)
}

/// The two parity dichotomies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityFamily {
    /// `¬α_n` against `L0`, `n ≥ 1`.
    Alpha,
    /// `¬β_n` against `L1`, `n ≥ 2`.
    Beta,
}

/// Membership of `¬α_n` in `L0` (or `¬β_n` in `L1`) for each admissible
/// `n ≤ n_max`, with default bounds.
pub fn parity_table(
    family: ParityFamily,
    n_max: usize,
) -> Result<Vec<(usize, bool)>, ValidityError> {
    let (logic, first) = match family {
        ParityFamily::Alpha => (Logic::L0, 1),
        ParityFamily::Beta => (Logic::L1, 2),
    };
    let mut rows = Vec::new();
    for n in first..=n_max {
        let phi = match family {
            ParityFamily::Alpha => ModalFormula::not(mk_alpha(n).map_err(FrameError::from)?),
            ParityFamily::Beta => ModalFormula::not(mk_beta(n).map_err(FrameError::from)?),
        };
        let bounds = SearchBounds::for_formula(&phi)?;
        rows.push((n, !in_logic(logic, &phi, &bounds)?.is_refuted()));
    }
    Ok(rows)
}
