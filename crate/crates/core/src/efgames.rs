//! Ehrenfeucht–Fraïssé games on finite `{R, =}`-structures.
//!
//! Duplicator wins the `r`-round game on `A` and `B` exactly when the empty
//! position has the same rank-`r` back-and-forth type in both. Types are
//! computed bottom-up: a `k`-tuple's type with `r - k` rounds left is the
//! set of types of its one-element extensions, and an `r`-tuple's type is
//! its atomic type. Types are interned in a table shared by both
//! structures, so equal ids mean equal types.

use std::collections::HashMap;

use thiserror::Error;

use crate::frames::{chain_frame, FrameError};
use crate::kripke::{ClassicalStructure, Frame};

/// Default cap on tuple visits for one game.
pub const DEFAULT_EF_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EfError {
    #[error("EF games here only handle the binary letter R; found `{0}`")]
    ExtraRelation(String),
    #[error("relation R must be binary, found arity {0}")]
    BadArity(usize),
    #[error("game search budget of {budget} tuple visits exceeded")]
    BudgetExceeded { budget: u64 },
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// A structure reduced to its adjacency matrix.
#[derive(Debug, Clone)]
struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    fn of(a: &ClassicalStructure) -> Result<Self, EfError> {
        let n = a.len();
        let mut adj = vec![false; n * n];
        for (name, arity) in a.relation_names() {
            if name != "R" {
                return Err(EfError::ExtraRelation(name.to_string()));
            }
            if arity != 2 {
                return Err(EfError::BadArity(arity));
            }
        }
        if let Some((_, tuples)) = a.relation("R") {
            for t in tuples {
                adj[t[0] * n + t[1]] = true;
            }
        }
        Ok(Graph { n, adj })
    }

    fn r(&self, x: usize, y: usize) -> bool {
        self.adj[x * self.n + y]
    }

    /// Equality and `R` pattern of a tuple, packed into words.
    fn atomic_type(&self, t: &[usize]) -> Vec<u32> {
        let k = t.len();
        let mut bits = Vec::with_capacity(k * k * 2);
        for i in 0..k {
            for j in 0..k {
                bits.push(t[i] == t[j]);
                bits.push(self.r(t[i], t[j]));
            }
        }
        bits.chunks(32)
            .map(|c| {
                c.iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &b)| acc | (b as u32) << i)
            })
            .collect()
    }
}

struct Refiner {
    budget: u64,
    spent: u64,
}

impl Refiner {
    fn charge(&mut self, n: u64) -> Result<(), EfError> {
        self.spent = self.spent.saturating_add(n);
        if self.spent > self.budget {
            Err(EfError::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    /// Type ids of the empty tuple in each structure for the `rounds`-round
    /// game.
    fn root_types(&mut self, gs: [&Graph; 2], rounds: usize) -> Result<[u32; 2], EfError> {
        let mut atomic: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut levels: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
        for (side, g) in gs.iter().enumerate() {
            let count = g.n.checked_pow(rounds as u32).unwrap_or(usize::MAX);
            self.charge(count as u64)?;
            let mut types = Vec::with_capacity(count);
            let mut t = vec![0usize; rounds];
            for code in 0..count {
                let mut c = code;
                for slot in t.iter_mut().rev() {
                    *slot = c % g.n;
                    c /= g.n;
                }
                let key = g.atomic_type(&t);
                let next = atomic.len() as u32;
                types.push(*atomic.entry(key).or_insert(next));
            }
            levels[side] = types;
        }
        for _ in 0..rounds {
            let mut table: HashMap<Vec<u32>, u32> = HashMap::new();
            for (side, g) in gs.iter().enumerate() {
                let children = &levels[side];
                let count = children.len() / g.n.max(1);
                self.charge(children.len() as u64)?;
                let mut parent = Vec::with_capacity(count);
                for p in 0..count {
                    let mut set: Vec<u32> = children[p * g.n..(p + 1) * g.n].to_vec();
                    set.sort_unstable();
                    set.dedup();
                    let next = table.len() as u32;
                    parent.push(*table.entry(set).or_insert(next));
                }
                levels[side] = parent;
            }
        }
        Ok([type_of_root(&levels[0]), type_of_root(&levels[1])])
    }
}

// An empty universe has no tuples at any level; give it a type no real
// tuple can share.
fn type_of_root(level: &[u32]) -> u32 {
    level.first().copied().unwrap_or(u32::MAX)
}

/// Whether Duplicator survives `rounds` rounds, with the default budget.
pub fn duplicator_wins(
    a: &ClassicalStructure,
    b: &ClassicalStructure,
    rounds: usize,
) -> Result<bool, EfError> {
    duplicator_wins_with_budget(a, b, rounds, DEFAULT_EF_BUDGET)
}

pub fn duplicator_wins_with_budget(
    a: &ClassicalStructure,
    b: &ClassicalStructure,
    rounds: usize,
    budget: u64,
) -> Result<bool, EfError> {
    let (ga, gb) = (Graph::of(a)?, Graph::of(b)?);
    if ga.n == 0 || gb.n == 0 {
        // with no elements to pick, only the 0-round game is a draw
        return Ok(rounds == 0 || ga.n == gb.n);
    }
    let mut refiner = Refiner { budget, spent: 0 };
    let [ta, tb] = refiner.root_types([&ga, &gb], rounds)?;
    Ok(ta == tb)
}

/// Least `r ≤ max_rank` at which Spoiler wins, if any.
pub fn smallest_distinguishing_rank(
    a: &ClassicalStructure,
    b: &ClassicalStructure,
    max_rank: usize,
) -> Result<Option<usize>, EfError> {
    for r in 0..=max_rank {
        if !duplicator_wins(a, b, r)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// The `{R, =}`-structure of a frame.
pub fn frame_structure(f: &Frame) -> ClassicalStructure {
    ClassicalStructure::from_frame(f)
}

/// Outcome of the chain parity game between `F_{2ⁿ}` and `F_{2ⁿ+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainParityReport {
    pub n: usize,
    pub rounds: usize,
    pub left_index: usize,
    pub right_index: usize,
    pub duplicator_wins: bool,
}

/// Plays `n` rounds on `F_{2ⁿ}` against `F_{2ⁿ+1}`.
pub fn chain_parity_witness(n: usize) -> Result<ChainParityReport, EfError> {
    chain_parity_witness_rounds(n, n)
}

/// As [`chain_parity_witness`] with an explicit number of rounds.
pub fn chain_parity_witness_rounds(n: usize, rounds: usize) -> Result<ChainParityReport, EfError> {
    let left_index = 1usize << n;
    let right_index = left_index + 1;
    let a = frame_structure(&chain_frame(left_index)?);
    let b = frame_structure(&chain_frame(right_index)?);
    Ok(ChainParityReport {
        n,
        rounds,
        left_index,
        right_index,
        duplicator_wins: duplicator_wins(&a, &b, rounds)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::ring_frame;

    fn edgeless(n: usize) -> ClassicalStructure {
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        frame_structure(&Frame::from_indices(names, []).unwrap())
    }

    // Plain game tree search without memoization, following the rules
    // directly: Spoiler picks a structure and an element, Duplicator
    // answers in the other, and a position is lost as soon as the pairs
    // stop being a partial isomorphism.
    fn oracle(a: &Graph, b: &Graph, pairs: &mut Vec<(usize, usize)>, rounds: usize) -> bool {
        for i in 0..pairs.len() {
            for j in 0..pairs.len() {
                let (x, y) = (pairs[i], pairs[j]);
                if (x.0 == y.0) != (x.1 == y.1) || a.r(x.0, y.0) != b.r(x.1, y.1) {
                    return false;
                }
            }
        }
        if rounds == 0 {
            return true;
        }
        let left = (0..a.n).all(|x| {
            (0..b.n).any(|y| {
                pairs.push((x, y));
                let ok = oracle(a, b, pairs, rounds - 1);
                pairs.pop();
                ok
            })
        });
        left && (0..b.n).all(|y| {
            (0..a.n).any(|x| {
                pairs.push((x, y));
                let ok = oracle(a, b, pairs, rounds - 1);
                pairs.pop();
                ok
            })
        })
    }

    fn oracle_wins(a: &ClassicalStructure, b: &ClassicalStructure, r: usize) -> bool {
        oracle(
            &Graph::of(a).unwrap(),
            &Graph::of(b).unwrap(),
            &mut Vec::new(),
            r,
        )
    }

    #[test]
    fn identity_strategy() {
        let g = frame_structure(&ring_frame(3).unwrap());
        for r in 0..=4 {
            assert!(duplicator_wins(&g, &g, r).unwrap());
        }
    }

    #[test]
    fn one_point_vs_two_points() {
        let (a, b) = (edgeless(1), edgeless(2));
        assert!(duplicator_wins(&a, &b, 1).unwrap());
        assert!(!duplicator_wins(&a, &b, 2).unwrap());
        assert_eq!(smallest_distinguishing_rank(&a, &b, 5).unwrap(), Some(2));
        assert_eq!(smallest_distinguishing_rank(&a, &a, 5).unwrap(), None);
    }

    #[test]
    fn agrees_with_plain_search_on_small_frames() {
        let frames = [
            chain_frame(1).unwrap(),
            chain_frame(2).unwrap(),
            chain_frame(3).unwrap(),
            ring_frame(2).unwrap(),
            ring_frame(3).unwrap(),
            Frame::new(&["a"], &[("a", "a")]).unwrap(),
        ];
        for f in &frames {
            for g in &frames {
                let (a, b) = (frame_structure(f), frame_structure(g));
                for r in 0..=3 {
                    assert_eq!(
                        duplicator_wins(&a, &b, r).unwrap(),
                        oracle_wins(&a, &b, r),
                        "{f:?} {g:?} {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_other_letters() {
        let mut s = edgeless(2);
        s.declare("W", 1);
        assert_eq!(
            duplicator_wins(&s, &s, 1),
            Err(EfError::ExtraRelation("W".into()))
        );
    }

    #[test]
    fn budget() {
        let g = frame_structure(&ring_frame(4).unwrap());
        assert_eq!(
            duplicator_wins_with_budget(&g, &g, 4, 100),
            Err(EfError::BudgetExceeded { budget: 100 })
        );
    }

    #[test]
    fn small_chain_parity() {
        assert!(chain_parity_witness(1).unwrap().duplicator_wins);
        assert!(chain_parity_witness(2).unwrap().duplicator_wins);
        assert!(!chain_parity_witness_rounds(2, 6).unwrap().duplicator_wins);
    }
}
