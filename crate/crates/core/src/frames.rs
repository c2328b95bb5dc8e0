//! Frame families, graph predicates on frames, and model surgery.
//!
//! World names follow one fixed scheme: chain and ring worlds are `w1..wn`,
//! the dead end hanging off `w1` is `wstar`, markers are `wstar2`, `wstar4`,
//! …, and components of a disjoint union are prefixed `c{i}.`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kripke::{Frame, KripkeModel, ModelError, PredicateFrame, World};
use crate::syntax::{mk_beta, parse_fol, FamilyError, FolFormula, FormulaFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("{family} frames need n >= {min}, got {n}")]
    IndexTooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("a disjoint union needs at least one component")]
    EmptyUnion,
    #[error("unknown frame family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Formula(#[from] FamilyError),
}

fn at_least(family: &'static str, min: usize, n: usize) -> Result<(), FrameError> {
    if n < min {
        Err(FrameError::IndexTooSmall { family, min, n })
    } else {
        Ok(())
    }
}

/// Which generator produced a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameFamilyTag {
    /// `F_n`; the even ones make up `C₀`.
    ChainC0,
    /// `G_n`; the even ones make up `C₁`.
    RingC1,
    /// `F_{2k}` with a marker below every even world.
    MarkedChain,
    /// A disjoint union of any of the above.
    DisjointUnion,
}

impl fmt::Display for FrameFamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameFamilyTag::ChainC0 => "chain",
            FrameFamilyTag::RingC1 => "ring",
            FrameFamilyTag::MarkedChain => "marked",
            FrameFamilyTag::DisjointUnion => "union",
        })
    }
}

impl FromStr for FrameFamilyTag {
    type Err = FrameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chain" => Ok(FrameFamilyTag::ChainC0),
            "ring" => Ok(FrameFamilyTag::RingC1),
            "marked" => Ok(FrameFamilyTag::MarkedChain),
            "union" => Ok(FrameFamilyTag::DisjointUnion),
            other => Err(FrameError::UnknownFamily(other.to_string())),
        }
    }
}

fn line_worlds(n: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
    names.push("wstar".to_string());
    names
}

fn line_edges(n: usize) -> Vec<(World, World)> {
    let mut edges: Vec<(World, World)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    edges.push((0, n));
    edges
}

/// `F_n`: the chain `w1 → … → wn` plus `w1 → wstar`.
pub fn chain_frame(n: usize) -> Result<Frame, FrameError> {
    at_least("chain", 1, n)?;
    Ok(Frame::from_indices(line_worlds(n), line_edges(n))?)
}

/// `G_n`: the ring `w1 → … → wn → w1` plus `w1 → wstar`.
pub fn ring_frame(n: usize) -> Result<Frame, FrameError> {
    at_least("ring", 2, n)?;
    let mut edges = line_edges(n);
    edges.push((n - 1, 0));
    Ok(Frame::from_indices(line_worlds(n), edges)?)
}

/// `F_{2k}` with an extra world `wstar2j → w2j` for each `j ≤ k`.
pub fn marked_chain_frame(k: usize) -> Result<Frame, FrameError> {
    at_least("marked", 1, k)?;
    let n = 2 * k;
    let mut names = line_worlds(n);
    let mut edges = line_edges(n);
    for j in 1..=k {
        names.push(format!("wstar{}", 2 * j));
        edges.push((names.len() - 1, 2 * j - 1));
    }
    Ok(Frame::from_indices(names, edges)?)
}

/// Tagged disjoint union; world `v` of component `i` becomes `c{i}.v`.
pub fn disjoint_union(frames: &[Frame]) -> Result<Frame, FrameError> {
    if frames.is_empty() {
        return Err(FrameError::EmptyUnion);
    }
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for (i, f) in frames.iter().enumerate() {
        let offset = names.len();
        names.extend(f.worlds().iter().map(|w| format!("c{i}.{w}")));
        edges.extend(f.edges().map(|(a, b)| (a + offset, b + offset)));
    }
    Ok(Frame::from_indices(names, edges)?)
}

/// Splits a union world name into its component index and original name.
pub fn component_of(name: &str) -> Option<(usize, &str)> {
    let rest = name.strip_prefix('c')?;
    let (idx, world) = rest.split_once('.')?;
    Some((idx.parse().ok()?, world))
}

/// Even indices `2, 4, …` not exceeding `bound`.
pub fn even_indices(bound: usize) -> impl Iterator<Item = usize> {
    (2..=bound).step_by(2)
}

/// `F⊎_n`: the union of `F_m` for every even `m ≤ n`.
pub fn chain_union(n: usize) -> Result<Frame, FrameError> {
    at_least("chain union", 2, n)?;
    let parts = even_indices(n)
        .map(chain_frame)
        .collect::<Result<Vec<_>, _>>()?;
    disjoint_union(&parts)
}

/// `G⊎_n`: the union of `G_m` for every even `m ≤ n`.
pub fn ring_union(n: usize) -> Result<Frame, FrameError> {
    at_least("ring union", 2, n)?;
    let parts = even_indices(n)
        .map(ring_frame)
        .collect::<Result<Vec<_>, _>>()?;
    disjoint_union(&parts)
}

const PHI1: &str = "(!x. ~R(x,x)) & (!x. !y. !z. (R(x,y) & R(y,z) -> ~R(x,z)))";

const PHI2: &str = "?ws. ?w2. ?ws2. ( \
    (!x. (R(w1,x) <-> x = ws | x = w2)) \
    & R(ws2,w2) \
    & ~(?x. R(x,w1)) \
    & ~(?x. R(x,ws2)) \
    & (!x. (R(x,ws) -> x = w1)) \
    & ~(?x. R(ws,x)) \
    & w1 != ws2 )";

const PHI3: &str = "(!x. (x != w1 -> ~(?y. ?z. (y != z & R(x,y) & R(x,z))))) \
    & (!w. ~(?x. ?y. ?z. (x != y & y != z & x != z & R(x,w) & R(y,w) & R(z,w))))";

const PHI4: &str = "!w. ( (?y. ?z. (y != z & R(y,w) & R(z,w))) -> \
    ~(?x. R(w,x)) \
    | (?x. ?y. ?z. (R(w,y) & R(y,x) & R(z,x) & y != z & x != w \
        & (!u. (R(u,y) -> u = w)) & ~(?u. R(u,z)))) )";

/// `∃w₁(Φ₁ ∧ Φ₂(w₁) ∧ Φ₃(w₁) ∧ Φ₄)`, the first-order axiom of the marked
/// chain class, transcribed conjunct by conjunct.
pub fn mk_c0star_axiom() -> FolFormula {
    let text = format!("?w1. (({PHI1}) & ({PHI2}) & ({PHI3}) & ({PHI4}))");
    parse_fol(&text).expect("the axiom text is well formed")
}

/// `Φ₁` alone: irreflexive, no transitive triangles.
pub fn mk_c0star_phi1() -> FolFormula {
    parse_fol(PHI1).expect("well formed")
}

/// Worlds without successors.
pub fn dead_ends(f: &Frame) -> BTreeSet<World> {
    (0..f.len())
        .filter(|&w| f.successors(w).is_empty())
        .collect()
}

/// Shortest-path distances from `w`, for worlds within `limit` steps.
pub fn distances(f: &Frame, w: World, limit: usize) -> BTreeMap<World, usize> {
    let mut dist = BTreeMap::from([(w, 0)]);
    let mut queue = VecDeque::from([w]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == limit {
            continue;
        }
        for &u in f.successors(v) {
            dist.entry(u).or_insert_with(|| {
                queue.push_back(u);
                d + 1
            });
        }
    }
    dist
}

/// `R*`-successors of `w`, including `w`.
pub fn reachable(f: &Frame, w: World) -> BTreeSet<World> {
    distances(f, w, usize::MAX).into_keys().collect()
}

/// Worlds at the end of some path of exactly `k` steps from `w`.
pub fn reach_exactly(f: &Frame, w: World, k: usize) -> BTreeSet<World> {
    let mut layer = BTreeSet::from([w]);
    for _ in 0..k {
        layer = layer
            .iter()
            .flat_map(|&v| f.successors(v).iter().copied())
            .collect();
    }
    layer
}

/// The identifier-least world from which every world is `R*`-reachable.
pub fn is_rooted(f: &Frame) -> Option<World> {
    (0..f.len())
        .filter(|&w| reachable(f, w).len() == f.len())
        .min_by(|&a, &b| f.name(a).cmp(f.name(b)))
}

/// Restriction of `f` to the given worlds, keeping their order. Returns the
/// new frame and, for each new index, the old one.
pub fn restrict(f: &Frame, keep: &BTreeSet<World>) -> (Frame, Vec<World>) {
    let old: Vec<World> = keep.iter().copied().collect();
    let new_of: BTreeMap<World, usize> = old.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let names = old.iter().map(|&w| f.name(w).to_string()).collect();
    let edges = f
        .edges()
        .filter_map(|(a, b)| Some((*new_of.get(&a)?, *new_of.get(&b)?)));
    let frame =
        Frame::from_indices(names, edges).expect("restriction of a valid frame with a kept world");
    (frame, old)
}

/// The subframe generated by `w`.
pub fn generated_subframe(f: &Frame, w: World) -> Frame {
    restrict(f, &reachable(f, w)).0
}

/// The submodel on worlds within `d` steps of `w`.
///
/// Edges leaving the retained set are dropped; edges inside it are kept,
/// including those of the outermost layer. Truth at `w` of any formula of
/// modal depth at most `d` is unchanged.
pub fn truncate_depth(m: &KripkeModel, w: &str, d: usize) -> Result<KripkeModel, FrameError> {
    let f = m.frame();
    let root = f.world_or_err(w)?;
    let keep: BTreeSet<World> = distances(f, root, d).into_keys().collect();
    let (frame, old) = restrict(f, &keep);
    let pf = m.pframe();
    let domains = old.iter().map(|&v| pf.domain(v).clone()).collect();
    let pframe = PredicateFrame::new(frame, pf.elements().to_vec(), domains)?;
    let mut out = KripkeModel::new(pframe, m.signature().clone());
    for letter in m.signature().keys() {
        for (new, &v) in old.iter().enumerate() {
            for t in m.tuples(letter, v).into_iter().flatten() {
                out.insert(letter, new, t.clone())?;
            }
        }
    }
    Ok(out)
}

fn sees_dead_end(f: &Frame, w: World) -> bool {
    f.successors(w).iter().any(|&v| f.successors(v).is_empty())
}

fn beta_holds(f: &Frame, w: World, n: usize) -> bool {
    sees_dead_end(f, w)
        && reach_exactly(f, w, n)
            .into_iter()
            .any(|v| sees_dead_end(f, v))
        && (2..n).all(|k| {
            !reach_exactly(f, w, k)
                .into_iter()
                .any(|v| sees_dead_end(f, v))
        })
}

/// The graph condition that matches validity of `family` at `w`: quantifying
/// over valuations is replaced by a statement about paths and successors.
pub fn structural_characterization(
    f: &Frame,
    w: World,
    family: FormulaFamily,
) -> Result<bool, FrameError> {
    // building the formula validates the parameters
    family.formula()?;
    Ok(match family {
        FormulaFamily::Alpha(n) => {
            sees_dead_end(f, w)
                && reach_exactly(f, w, n)
                    .iter()
                    .any(|&v| f.successors(v).is_empty())
        }
        FormulaFamily::Beta(n) => beta_holds(f, w, n),
        FormulaFamily::Gamma => sees_dead_end(f, w) || f.successors(w).len() <= 1,
        FormulaFamily::Delta { k, n } => {
            let triggered = reach_exactly(f, w, k)
                .into_iter()
                .any(|v| beta_holds(f, v, n));
            !triggered || reach_exactly(f, w, n).contains(&w)
        }
        FormulaFamily::Epsilon(n) => {
            !beta_holds(f, w, n) || reach_exactly(f, w, n).iter().all(|&v| v == w)
        }
        FormulaFamily::Alt2 => f.successors(w).len() <= 2,
        FormulaFamily::Zeta => f.successors(w).len() <= 1,
    })
}

/// Frame-level version: the condition at every world.
pub fn structural_characterization_frame(
    f: &Frame,
    family: FormulaFamily,
) -> Result<bool, FrameError> {
    for w in 0..f.len() {
        if !structural_characterization(f, w, family)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Validity of `β_n` at `w` does not depend on the valuation; this is its
/// truth value.
pub fn beta_at(f: &Frame, w: World, n: usize) -> Result<bool, FrameError> {
    mk_beta(n)?;
    Ok(beta_holds(f, w, n))
}

/// Generates a family member by tag and index, as the CLI does.
pub fn generate(tag: FrameFamilyTag, n: usize) -> Result<Frame, FrameError> {
    match tag {
        FrameFamilyTag::ChainC0 => chain_frame(n),
        FrameFamilyTag::RingC1 => ring_frame(n),
        FrameFamilyTag::MarkedChain => marked_chain_frame(n),
        FrameFamilyTag::DisjointUnion => chain_union(n),
    }
}
