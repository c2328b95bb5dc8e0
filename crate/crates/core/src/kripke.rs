//! Finite Kripke frames and models, classical structures, and the two
//! satisfaction relations.
//!
//! Worlds and domain elements are addressed by index into the owning
//! frame/model; names are kept for I/O and for the classical encoding.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::syntax::{FolFormula, ModalFormula};

/// Index of a world inside its frame.
pub type World = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a frame needs at least one world")]
    NoWorlds,
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("world `{0}` has an empty domain")]
    EmptyDomain(String),
    #[error("domains are not monotone along {0} -> {1}")]
    NotMonotone(String, String),
    #[error("predicate letter `{0}` is not declared")]
    UnknownLetter(String),
    #[error("letter `{letter}` has arity {expected}, used with {found} arguments")]
    ArityMismatch {
        letter: String,
        expected: usize,
        found: usize,
    },
    #[error("element `{element}` is outside the domain of world `{world}`")]
    OutsideDomain { world: String, element: String },
    #[error("variable `{0}` is not assigned")]
    UnboundVariable(String),
    #[error("M violated: {0}")]
    NotAFrameStructure(&'static str),
}

/// `⟨W, R⟩` with an ordered, non-empty world set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    worlds: Vec<String>,
    index: HashMap<String, World>,
    edges: BTreeSet<(World, World)>,
    succ: Vec<Vec<World>>,
    pred: Vec<Vec<World>>,
}

impl Frame {
    /// Builds a frame from world names and named edges.
    pub fn new<S: AsRef<str>>(worlds: &[S], edges: &[(S, S)]) -> Result<Self, ModelError> {
        let names: Vec<String> = worlds.iter().map(|w| w.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(ModelError::DuplicateWorld(n.clone()));
            }
        }
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let look = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| ModelError::UnknownWorld(s.to_string()))
            };
            idx_edges.push((look(a.as_ref())?, look(b.as_ref())?));
        }
        Self::from_indices(names, idx_edges)
    }

    /// Builds a frame from names and index pairs.
    pub fn from_indices(
        worlds: Vec<String>,
        edges: impl IntoIterator<Item = (World, World)>,
    ) -> Result<Self, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::NoWorlds);
        }
        let mut index = HashMap::new();
        for (i, n) in worlds.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(ModelError::DuplicateWorld(n.clone()));
            }
        }
        let n = worlds.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(ModelError::UnknownWorld(format!("#{}", a.max(b))));
            }
            if !set.insert((a, b)) {
                return Err(ModelError::DuplicateEdge(
                    worlds[a].clone(),
                    worlds[b].clone(),
                ));
            }
        }
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(a, b) in &set {
            succ[a].push(b);
            pred[b].push(a);
        }
        Ok(Frame {
            worlds,
            index,
            edges: set,
            succ,
            pred,
        })
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn name(&self, w: World) -> &str {
        &self.worlds[w]
    }

    pub fn world(&self, name: &str) -> Option<World> {
        self.index.get(name).copied()
    }

    pub fn world_or_err(&self, name: &str) -> Result<World, ModelError> {
        self.world(name)
            .ok_or_else(|| ModelError::UnknownWorld(name.to_string()))
    }

    pub fn successors(&self, w: World) -> &[World] {
        &self.succ[w]
    }

    pub fn predecessors(&self, w: World) -> &[World] {
        &self.pred[w]
    }

    pub fn has_edge(&self, a: World, b: World) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn edges(&self) -> impl Iterator<Item = (World, World)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The same frame with world order permuted and names replaced;
    /// `perm[i]` is the new position of world `i`.
    pub fn relabel(&self, perm: &[usize], names: Vec<String>) -> Result<Frame, ModelError> {
        let mut ordered = vec![String::new(); self.len()];
        for (old, &new) in perm.iter().enumerate() {
            ordered[new] = names[old].clone();
        }
        Frame::from_indices(ordered, self.edges().map(|(a, b)| (perm[a], perm[b])))
    }
}

/// `⟨W, R, D⟩` with non-empty, monotone domains drawn from a named element
/// pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateFrame {
    frame: Frame,
    elements: Vec<String>,
    domains: Vec<BTreeSet<usize>>,
}

impl PredicateFrame {
    pub fn new(
        frame: Frame,
        elements: Vec<String>,
        domains: Vec<BTreeSet<usize>>,
    ) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(ModelError::DuplicateElement(e.clone()));
            }
        }
        if domains.len() != frame.len() {
            return Err(ModelError::UnknownWorld(format!(
                "expected {} domains, got {}",
                frame.len(),
                domains.len()
            )));
        }
        for (w, d) in domains.iter().enumerate() {
            if d.is_empty() {
                return Err(ModelError::EmptyDomain(frame.name(w).to_string()));
            }
            if let Some(&e) = d.iter().find(|&&e| e >= elements.len()) {
                return Err(ModelError::UnknownElement(format!("#{e}")));
            }
        }
        for (a, b) in frame.edges() {
            if !domains[a].is_subset(&domains[b]) {
                return Err(ModelError::NotMonotone(
                    frame.name(a).to_string(),
                    frame.name(b).to_string(),
                ));
            }
        }
        Ok(PredicateFrame {
            frame,
            elements,
            domains,
        })
    }

    /// Every world gets the whole pool.
    pub fn constant(frame: Frame, elements: Vec<String>) -> Result<Self, ModelError> {
        let all: BTreeSet<usize> = (0..elements.len()).collect();
        let domains = vec![all; frame.len()];
        Self::new(frame, elements, domains)
    }

    /// Constant singleton domain `{a0}`.
    pub fn singleton(frame: Frame) -> Self {
        Self::constant(frame, vec!["a0".to_string()]).expect("singleton domains are monotone")
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn domain(&self, w: World) -> &BTreeSet<usize> {
        &self.domains[w]
    }
}

/// `⟨W, R, D, I⟩`. Letters must be declared with their arity; an
/// undeclared letter is an evaluation error, a declared one with no tuples
/// is empty everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    pframe: PredicateFrame,
    signature: BTreeMap<String, usize>,
    interp: BTreeMap<String, Vec<BTreeSet<Vec<usize>>>>,
}

impl KripkeModel {
    pub fn new(pframe: PredicateFrame, signature: BTreeMap<String, usize>) -> Self {
        let n = pframe.frame.len();
        let interp = signature
            .keys()
            .map(|l| (l.clone(), vec![BTreeSet::new(); n]))
            .collect();
        KripkeModel {
            pframe,
            signature,
            interp,
        }
    }

    pub fn pframe(&self) -> &PredicateFrame {
        &self.pframe
    }

    pub fn frame(&self) -> &Frame {
        &self.pframe.frame
    }

    pub fn signature(&self) -> &BTreeMap<String, usize> {
        &self.signature
    }

    /// Adds `tuple` to `I(w, letter)`.
    pub fn insert(&mut self, letter: &str, w: World, tuple: Vec<usize>) -> Result<(), ModelError> {
        let arity = *self
            .signature
            .get(letter)
            .ok_or_else(|| ModelError::UnknownLetter(letter.to_string()))?;
        if tuple.len() != arity {
            return Err(ModelError::ArityMismatch {
                letter: letter.to_string(),
                expected: arity,
                found: tuple.len(),
            });
        }
        let dom = &self.pframe.domains[w];
        if let Some(&e) = tuple.iter().find(|e| !dom.contains(e)) {
            return Err(ModelError::OutsideDomain {
                world: self.frame().name(w).to_string(),
                element: self
                    .pframe
                    .elements
                    .get(e)
                    .cloned()
                    .unwrap_or_else(|| format!("#{e}")),
            });
        }
        self.interp.get_mut(letter).expect("declared")[w].insert(tuple);
        Ok(())
    }

    /// Sets a 0-ary letter at `w`.
    pub fn set_prop(&mut self, letter: &str, w: World, value: bool) -> Result<(), ModelError> {
        if value {
            self.insert(letter, w, Vec::new())
        } else {
            self.insert(letter, w, Vec::new())?;
            self.interp.get_mut(letter).expect("declared")[w].clear();
            Ok(())
        }
    }

    pub fn tuples(&self, letter: &str, w: World) -> Option<&BTreeSet<Vec<usize>>> {
        self.interp.get(letter).map(|v| &v[w])
    }

    pub fn holds(&self, letter: &str, w: World, tuple: &[usize]) -> bool {
        self.interp
            .get(letter)
            .is_some_and(|v| v[w].contains(tuple))
    }
}

/// A variable assignment by element name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(pub BTreeMap<String, String>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<String>, value: impl Into<String>) -> Self {
        self.0.insert(var.into(), value.into());
        self
    }
}

type Env<'a> = Vec<(&'a str, usize)>;

fn lookup(env: &Env<'_>, var: &str) -> Result<usize, ModelError> {
    env.iter()
        .rev()
        .find(|(v, _)| *v == var)
        .map(|&(_, e)| e)
        .ok_or_else(|| ModelError::UnboundVariable(var.to_string()))
}

/// `𝔐, w ⊨^g φ` under expanding-domain semantics.
pub fn eval_modal(
    m: &KripkeModel,
    w: World,
    g: &Assignment,
    phi: &ModalFormula,
) -> Result<bool, ModelError> {
    let mut env: Env<'_> = Vec::new();
    for (var, elem) in &g.0 {
        let e = m
            .pframe
            .element(elem)
            .ok_or_else(|| ModelError::UnknownElement(elem.clone()))?;
        env.push((var.as_str(), e));
    }
    for var in phi.free_vars() {
        let e = lookup(&env, &var)?;
        if !m.pframe.domains[w].contains(&e) {
            return Err(ModelError::OutsideDomain {
                world: m.frame().name(w).to_string(),
                element: m.pframe.elements[e].clone(),
            });
        }
    }
    eval_modal_env(m, w, &mut env, phi)
}

fn eval_modal_env<'a>(
    m: &KripkeModel,
    w: World,
    env: &mut Env<'a>,
    phi: &'a ModalFormula,
) -> Result<bool, ModelError> {
    Ok(match phi {
        ModalFormula::Atom { letter, args } => {
            let arity = *m
                .signature
                .get(letter)
                .ok_or_else(|| ModelError::UnknownLetter(letter.clone()))?;
            if arity != args.len() {
                return Err(ModelError::ArityMismatch {
                    letter: letter.clone(),
                    expected: arity,
                    found: args.len(),
                });
            }
            let tuple = args
                .iter()
                .map(|a| lookup(env, a))
                .collect::<Result<Vec<_>, _>>()?;
            m.interp[letter][w].contains(&tuple)
        }
        ModalFormula::Falsum => false,
        ModalFormula::Not(f) => !eval_modal_env(m, w, env, f)?,
        ModalFormula::And(a, b) => eval_modal_env(m, w, env, a)? && eval_modal_env(m, w, env, b)?,
        ModalFormula::Nec(f) => {
            for &v in m.frame().successors(w) {
                if !eval_modal_env(m, v, env, f)? {
                    return Ok(false);
                }
            }
            true
        }
        ModalFormula::Forall(var, f) => {
            for &e in &m.pframe.domains[w] {
                env.push((var.as_str(), e));
                let r = eval_modal_env(m, w, env, f);
                env.pop();
                if !r? {
                    return Ok(false);
                }
            }
            true
        }
    })
}

/// A finite classical structure. Equality is built in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalStructure {
    universe: Vec<String>,
    relations: BTreeMap<String, (usize, BTreeSet<Vec<usize>>)>,
}

impl ClassicalStructure {
    pub fn new(universe: Vec<String>) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for e in &universe {
            if !seen.insert(e) {
                return Err(ModelError::DuplicateElement(e.clone()));
            }
        }
        Ok(ClassicalStructure {
            universe,
            relations: BTreeMap::new(),
        })
    }

    /// Declares a relation, replacing any previous one with that name.
    pub fn declare(&mut self, letter: impl Into<String>, arity: usize) {
        self.relations
            .insert(letter.into(), (arity, BTreeSet::new()));
    }

    pub fn insert(&mut self, letter: &str, tuple: Vec<usize>) -> Result<(), ModelError> {
        let n = self.universe.len();
        let (arity, set) = self
            .relations
            .get_mut(letter)
            .ok_or_else(|| ModelError::UnknownLetter(letter.to_string()))?;
        if tuple.len() != *arity {
            return Err(ModelError::ArityMismatch {
                letter: letter.to_string(),
                expected: *arity,
                found: tuple.len(),
            });
        }
        if let Some(e) = tuple.iter().find(|&&e| e >= n) {
            return Err(ModelError::UnknownElement(format!("#{e}")));
        }
        set.insert(tuple);
        Ok(())
    }

    /// The frame as a `{R, =}`-structure over its worlds.
    pub fn from_frame(f: &Frame) -> Self {
        let mut s = ClassicalStructure {
            universe: f.worlds().to_vec(),
            relations: BTreeMap::new(),
        };
        s.declare("R", 2);
        for (a, b) in f.edges() {
            s.insert("R", vec![a, b])
                .expect("edge endpoints are worlds");
        }
        s
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|e| e == name)
    }

    pub fn relation(&self, letter: &str) -> Option<(usize, &BTreeSet<Vec<usize>>)> {
        self.relations.get(letter).map(|(a, s)| (*a, s))
    }

    pub fn relation_names(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(n, (a, _))| (n.as_str(), *a))
    }

    pub fn holds(&self, letter: &str, tuple: &[usize]) -> bool {
        self.relations
            .get(letter)
            .is_some_and(|(_, s)| s.contains(tuple))
    }
}

/// Tarskian satisfaction over a finite universe.
pub fn eval_fol(
    a: &ClassicalStructure,
    g: &Assignment,
    phi: &FolFormula,
) -> Result<bool, ModelError> {
    let mut env: Env<'_> = Vec::new();
    for (var, elem) in &g.0 {
        let e = a
            .element(elem)
            .ok_or_else(|| ModelError::UnknownElement(elem.clone()))?;
        env.push((var.as_str(), e));
    }
    eval_fol_env(a, &mut env, phi)
}

pub(crate) fn eval_fol_env<'a>(
    a: &ClassicalStructure,
    env: &mut Env<'a>,
    phi: &'a FolFormula,
) -> Result<bool, ModelError> {
    Ok(match phi {
        FolFormula::Eq(x, y) => lookup(env, x)? == lookup(env, y)?,
        FolFormula::Rel { letter, args } => {
            let (arity, set) = a
                .relations
                .get(letter)
                .ok_or_else(|| ModelError::UnknownLetter(letter.clone()))?;
            if *arity != args.len() {
                return Err(ModelError::ArityMismatch {
                    letter: letter.clone(),
                    expected: *arity,
                    found: args.len(),
                });
            }
            let tuple = args
                .iter()
                .map(|v| lookup(env, v))
                .collect::<Result<Vec<_>, _>>()?;
            set.contains(&tuple)
        }
        FolFormula::Falsum => false,
        FolFormula::Not(f) => !eval_fol_env(a, env, f)?,
        FolFormula::And(x, y) => eval_fol_env(a, env, x)? && eval_fol_env(a, env, y)?,
        FolFormula::Forall(var, f) => {
            for e in 0..a.universe.len() {
                env.push((var.as_str(), e));
                let r = eval_fol_env(a, env, f);
                env.pop();
                if !r? {
                    return Ok(false);
                }
            }
            true
        }
    })
}

/// Prefix of world elements in [`model_to_structure`].
pub const WORLD_TAG: &str = "w:";
/// Prefix of individual elements in [`model_to_structure`].
pub const ELEMENT_TAG: &str = "e:";

/// Name of the classical letter standing for the modal letter `letter`.
pub fn primed(letter: &str) -> String {
    format!("{letter}'")
}

/// Encodes a Kripke model as a classical structure over `{R, W, D, P′…}`.
///
/// The universe lists the worlds (tagged `w:`) followed by the element pool
/// (tagged `e:`). Each n-ary letter `P` becomes `P'` of arity n+1 whose last
/// coordinate is the world.
pub fn model_to_structure(m: &KripkeModel) -> ClassicalStructure {
    let f = m.frame();
    let nw = f.len();
    let mut universe: Vec<String> = f
        .worlds()
        .iter()
        .map(|w| format!("{WORLD_TAG}{w}"))
        .collect();
    universe.extend(
        m.pframe
            .elements
            .iter()
            .map(|e| format!("{ELEMENT_TAG}{e}")),
    );
    let mut s = ClassicalStructure::new(universe).expect("tags keep worlds and elements apart");
    s.declare("R", 2);
    s.declare("W", 1);
    s.declare("D", 2);
    for (a, b) in f.edges() {
        s.insert("R", vec![a, b]).expect("in range");
    }
    for w in 0..nw {
        s.insert("W", vec![w]).expect("in range");
        for &e in &m.pframe.domains[w] {
            s.insert("D", vec![w, nw + e]).expect("in range");
        }
    }
    for (letter, &arity) in &m.signature {
        let name = primed(letter);
        s.declare(name.clone(), arity + 1);
        for (w, tuples) in m.interp[letter].iter().enumerate() {
            for t in tuples {
                let mut row: Vec<usize> = t.iter().map(|&e| nw + e).collect();
                row.push(w);
                s.insert(&name, row).expect("in range");
            }
        }
    }
    s
}

fn strip_tag<'a>(name: &'a str, tag: &str) -> &'a str {
    name.strip_prefix(tag).unwrap_or(name)
}

/// Reads a Kripke model back out of a structure satisfying `M`.
///
/// Worlds are the `W`-elements, `R` is restricted to worlds, the domain of
/// `w` is `{e : ¬W(e), D(w, e)}`, and each relation `P'` of arity n+1
/// yields the letter `P` of arity n. Tuples falling outside the domain of
/// their world are dropped; the standard translation never inspects them.
pub fn structure_to_model(a: &ClassicalStructure) -> Result<KripkeModel, ModelError> {
    let m_conjuncts = crate::translate::mk_m_conjuncts();
    for (formula, label) in &m_conjuncts {
        if !eval_fol(a, &Assignment::new(), formula)? {
            return Err(ModelError::NotAFrameStructure(label));
        }
    }
    let is_world: Vec<bool> = (0..a.len()).map(|e| a.holds("W", &[e])).collect();
    let world_elems: Vec<usize> = (0..a.len()).filter(|&e| is_world[e]).collect();
    let elem_elems: Vec<usize> = (0..a.len()).filter(|&e| !is_world[e]).collect();
    let world_of: HashMap<usize, usize> = world_elems
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let elem_of: HashMap<usize, usize> = elem_elems
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();

    let edges: Vec<(World, World)> = a
        .relation("R")
        .map(|(_, set)| {
            set.iter()
                .filter_map(|t| Some((*world_of.get(&t[0])?, *world_of.get(&t[1])?)))
                .collect()
        })
        .unwrap_or_default();
    let frame = Frame::from_indices(
        world_elems
            .iter()
            .map(|&e| strip_tag(&a.universe[e], WORLD_TAG).to_string())
            .collect(),
        edges,
    )?;
    let mut domains = vec![BTreeSet::new(); frame.len()];
    if let Some((_, set)) = a.relation("D") {
        for t in set {
            if let (Some(&w), Some(&e)) = (world_of.get(&t[0]), elem_of.get(&t[1])) {
                domains[w].insert(e);
            }
        }
    }
    let elements = elem_elems
        .iter()
        .map(|&e| strip_tag(&a.universe[e], ELEMENT_TAG).to_string())
        .collect();
    let pframe = PredicateFrame::new(frame, elements, domains)?;

    let mut signature = BTreeMap::new();
    for (name, arity) in a.relation_names() {
        if let Some(base) = name.strip_suffix('\'') {
            if arity >= 1 {
                signature.insert(base.to_string(), arity - 1);
            }
        }
    }
    let mut model = KripkeModel::new(pframe, signature.clone());
    for (letter, arity) in signature {
        let (_, set) = a.relation(&primed(&letter)).expect("declared above");
        for t in set {
            let Some(&w) = world_of.get(&t[arity]) else {
                continue;
            };
            let args: Option<Vec<usize>> =
                t[..arity].iter().map(|e| elem_of.get(e).copied()).collect();
            if let Some(args) = args {
                if args.iter().all(|e| model.pframe.domains[w].contains(e)) {
                    model.insert(&letter, w, args)?;
                }
            }
        }
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{mk_alpha, parse_fol, parse_modal};

    fn chain2() -> Frame {
        Frame::new(&["w1", "w2", "wstar"], &[("w1", "w2"), ("w1", "wstar")]).unwrap()
    }

    #[test]
    fn frame_rejects_bad_input() {
        assert_eq!(
            Frame::new::<&str>(&[], &[]).unwrap_err(),
            ModelError::NoWorlds
        );
        assert!(matches!(
            Frame::new(&["a", "a"], &[]),
            Err(ModelError::DuplicateWorld(_))
        ));
        assert!(matches!(
            Frame::new(&["a"], &[("a", "b")]),
            Err(ModelError::UnknownWorld(_))
        ));
        assert!(matches!(
            Frame::new(&["a", "b"], &[("a", "b"), ("a", "b")]),
            Err(ModelError::DuplicateEdge(..))
        ));
    }

    #[test]
    fn domains_must_be_monotone_and_nonempty() {
        let f = Frame::new(&["u", "v"], &[("u", "v")]).unwrap();
        let els = vec!["a".to_string(), "b".to_string()];
        let bad = PredicateFrame::new(
            f.clone(),
            els.clone(),
            vec![BTreeSet::from([0, 1]), BTreeSet::from([0])],
        );
        assert!(matches!(bad, Err(ModelError::NotMonotone(..))));
        let empty = PredicateFrame::new(
            f.clone(),
            els.clone(),
            vec![BTreeSet::new(), BTreeSet::from([0])],
        );
        assert!(matches!(empty, Err(ModelError::EmptyDomain(_))));
        assert!(
            PredicateFrame::new(f, els, vec![BTreeSet::from([0]), BTreeSet::from([0, 1])]).is_ok()
        );
    }

    #[test]
    fn dead_end_satisfies_box_falsum() {
        let m = KripkeModel::new(PredicateFrame::singleton(chain2()), BTreeMap::new());
        let bf = parse_modal("[] false").unwrap();
        assert!(eval_modal(&m, 2, &Assignment::new(), &bf).unwrap());
        assert!(!eval_modal(&m, 0, &Assignment::new(), &bf).unwrap());
        assert!(eval_modal(&m, 0, &Assignment::new(), &mk_alpha(1).unwrap()).unwrap());
    }

    #[test]
    fn quantifier_ranges_over_local_domain() {
        let f = Frame::new(&["u", "v"], &[("u", "v")]).unwrap();
        let els = vec!["a".to_string(), "b".to_string()];
        let pf =
            PredicateFrame::new(f, els, vec![BTreeSet::from([0]), BTreeSet::from([0, 1])]).unwrap();
        let mut m = KripkeModel::new(pf, BTreeMap::from([("P".to_string(), 1)]));
        m.insert("P", 0, vec![0]).unwrap();
        m.insert("P", 1, vec![0]).unwrap();
        let all_p = parse_modal("forall y. P(y)").unwrap();
        assert!(eval_modal(&m, 0, &Assignment::new(), &all_p).unwrap());
        assert!(!eval_modal(&m, 1, &Assignment::new(), &all_p).unwrap());
        // the value of y is carried to the successor
        let carried = parse_modal("forall y. [] P(y)").unwrap();
        assert!(eval_modal(&m, 0, &Assignment::new(), &carried).unwrap());
    }

    #[test]
    fn evaluation_errors() {
        let m = KripkeModel::new(
            PredicateFrame::singleton(chain2()),
            BTreeMap::from([("P".to_string(), 1)]),
        );
        let py = parse_modal("P(y)").unwrap();
        assert!(matches!(
            eval_modal(&m, 0, &Assignment::new(), &py),
            Err(ModelError::UnboundVariable(_))
        ));
        assert!(eval_modal(&m, 0, &Assignment::new().with("y", "a0"), &py).is_ok());
        let q = parse_modal("Q").unwrap();
        assert!(matches!(
            eval_modal(&m, 0, &Assignment::new(), &q),
            Err(ModelError::UnknownLetter(_))
        ));
    }

    #[test]
    fn fol_on_frames() {
        let s = ClassicalStructure::from_frame(&chain2());
        assert!(eval_fol(
            &s,
            &Assignment::new(),
            &parse_fol("?x. ?y. R(x,y)").unwrap()
        )
        .unwrap());
        let point = ClassicalStructure::from_frame(&Frame::new(&["o"], &[]).unwrap());
        assert!(eval_fol(
            &point,
            &Assignment::new(),
            &parse_fol("!x. ~R(x,x)").unwrap()
        )
        .unwrap());
        assert!(matches!(
            eval_fol(&s, &Assignment::new(), &parse_fol("?x. P(x)").unwrap()),
            Err(ModelError::UnknownLetter(_))
        ));
    }

    #[test]
    fn encoding_sizes() {
        let one = Frame::new(&["o"], &[]).unwrap();
        let els: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let m = KripkeModel::new(PredicateFrame::constant(one, els).unwrap(), BTreeMap::new());
        let s = model_to_structure(&m);
        assert_eq!(s.len(), 4);
        assert!(s.relation("R").unwrap().1.is_empty());

        let m2 = KripkeModel::new(PredicateFrame::singleton(chain2()), BTreeMap::new());
        let s2 = model_to_structure(&m2);
        assert_eq!(s2.len(), 3 + 1);
        assert_eq!(s2.relation("D").unwrap().1.len(), 3);
    }

    #[test]
    fn empty_domain_world_rejected() {
        let mut s = ClassicalStructure::new(vec!["w".into(), "e".into()]).unwrap();
        s.declare("R", 2);
        s.declare("W", 1);
        s.declare("D", 2);
        s.insert("W", vec![0]).unwrap();
        let err = structure_to_model(&s).unwrap_err();
        assert_eq!(err.to_string(), "M violated: ∃y D(x,y)");
    }

    #[test]
    fn non_monotone_structure_rejected() {
        let mut s =
            ClassicalStructure::new(vec!["u".into(), "v".into(), "a".into(), "b".into()]).unwrap();
        s.declare("R", 2);
        s.declare("W", 1);
        s.declare("D", 2);
        s.insert("W", vec![0]).unwrap();
        s.insert("W", vec![1]).unwrap();
        s.insert("R", vec![0, 1]).unwrap();
        s.insert("D", vec![0, 2]).unwrap();
        s.insert("D", vec![0, 3]).unwrap();
        s.insert("D", vec![1, 2]).unwrap();
        let err = structure_to_model(&s).unwrap_err();
        assert_eq!(
            err,
            ModelError::NotAFrameStructure(crate::translate::M_MONOTONE)
        );
    }

    #[test]
    fn structure_round_trip() {
        let f = Frame::new(&["u", "v"], &[("u", "v"), ("v", "v")]).unwrap();
        let els = vec!["a".to_string(), "b".to_string()];
        let pf =
            PredicateFrame::new(f, els, vec![BTreeSet::from([1]), BTreeSet::from([0, 1])]).unwrap();
        let mut m = KripkeModel::new(
            pf,
            BTreeMap::from([("P".to_string(), 2), ("q".to_string(), 0)]),
        );
        m.insert("P", 1, vec![0, 1]).unwrap();
        m.insert("P", 0, vec![1, 1]).unwrap();
        m.set_prop("q", 1, true).unwrap();
        let back = structure_to_model(&model_to_structure(&m)).unwrap();
        assert_eq!(back, m);
    }
}
