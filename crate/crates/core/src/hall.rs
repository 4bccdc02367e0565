//! P. Hall basic commutators and the tower family `s₁ = x`, `s_{k+1} = [s_k, y]`.
//!
//! Basic commutators of weight one are the generators in their given order.
//! A weight-`n` basic commutator is `[c_i, c_j]` with `c_i`, `c_j` basic,
//! `wt(c_i) + wt(c_j) = n`, `c_i > c_j`, and, when `c_i = [c_s, c_t]`,
//! `c_j ≥ c_t`. Basics of equal weight are ordered by
//! `(rank(c_i), rank(c_j))`.

use std::fmt;

use crate::presentation::{Presentation, WordExpr};
use crate::word::{cyclically_equivalent, Gen, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorTree {
    Leaf(Gen),
    /// `[left, right]`
    Node(Box<CommutatorTree>, Box<CommutatorTree>),
}

impl CommutatorTree {
    pub fn leaf(g: usize) -> Self {
        CommutatorTree::Leaf(Gen(g))
    }

    pub fn node(l: CommutatorTree, r: CommutatorTree) -> Self {
        CommutatorTree::Node(Box::new(l), Box::new(r))
    }

    pub fn weight(&self) -> usize {
        match self {
            CommutatorTree::Leaf(_) => 1,
            CommutatorTree::Node(l, r) => l.weight() + r.weight(),
        }
    }

    pub fn leaves(&self) -> Vec<Gen> {
        match self {
            CommutatorTree::Leaf(g) => vec![*g],
            CommutatorTree::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    pub fn to_expr(&self) -> WordExpr {
        match self {
            CommutatorTree::Leaf(g) => WordExpr::Symbol(*g),
            CommutatorTree::Node(l, r) => WordExpr::comm(l.to_expr(), r.to_expr()),
        }
    }

    pub fn to_word(&self) -> Word {
        match self {
            CommutatorTree::Leaf(g) => Word::generator(*g),
            CommutatorTree::Node(l, r) => l.to_word().commutator(&r.to_word()),
        }
    }

    /// Reads a tree back from an expression built only of symbols and
    /// commutator brackets.
    pub fn from_expr(e: &WordExpr) -> Option<Self> {
        match e {
            WordExpr::Symbol(g) => Some(CommutatorTree::Leaf(*g)),
            WordExpr::Commutator(l, r) => Some(CommutatorTree::node(
                CommutatorTree::from_expr(l)?,
                CommutatorTree::from_expr(r)?,
            )),
            WordExpr::Product(parts) if parts.len() == 1 => CommutatorTree::from_expr(&parts[0]),
            _ => None,
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> DisplayTree<'a> {
        DisplayTree { tree: self, names }
    }
}

pub struct DisplayTree<'a> {
    tree: &'a CommutatorTree,
    names: &'a [String],
}

impl fmt::Display for DisplayTree<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tree {
            CommutatorTree::Leaf(g) => match self.names.get(g.0) {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "g{}", g.0),
            },
            CommutatorTree::Node(l, r) => {
                write!(f, "[{},{}]", l.display(self.names), r.display(self.names))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCommutator {
    pub tree: CommutatorTree,
    pub weight: usize,
    /// Position in the global order.
    pub rank: usize,
    /// Ranks of `(c_i, c_j)` for weight ≥ 2.
    pub components: Option<(usize, usize)>,
}

/// All basic commutators on `gens` (in that order) up to `max_weight`.
pub fn enumerate_basic(gens: &[Gen], max_weight: usize) -> Vec<BasicCommutator> {
    let mut out: Vec<BasicCommutator> = gens
        .iter()
        .enumerate()
        .map(|(rank, &g)| BasicCommutator {
            tree: CommutatorTree::Leaf(g),
            weight: 1,
            rank,
            components: None,
        })
        .collect();
    if max_weight == 0 {
        out.clear();
        return out;
    }
    for n in 2..=max_weight {
        let known = out.len();
        let mut fresh = Vec::new();
        for i in 0..known {
            for j in 0..i {
                if out[i].weight + out[j].weight != n {
                    continue;
                }
                if let Some((_, t)) = out[i].components {
                    if j < t {
                        continue;
                    }
                }
                fresh.push((i, j));
            }
        }
        // (i, j) pairs come out sorted lexicographically already.
        for (i, j) in fresh {
            let rank = out.len();
            out.push(BasicCommutator {
                tree: CommutatorTree::node(out[i].tree.clone(), out[j].tree.clone()),
                weight: n,
                rank,
                components: Some((i, j)),
            });
        }
    }
    out
}

pub fn is_basic(t: &CommutatorTree, gens: &[Gen]) -> bool {
    if t.leaves().iter().any(|g| !gens.contains(g)) {
        return false;
    }
    enumerate_basic(gens, t.weight())
        .iter()
        .any(|b| b.weight == t.weight() && b.tree == *t)
}

/// `s_k` with `s₁ = x` and `s_{k+1} = [s_k, y]`.
pub fn tower_tree(x: Gen, y: Gen, k: usize) -> CommutatorTree {
    assert!(k >= 1);
    let mut s = CommutatorTree::Leaf(x);
    for _ in 1..k {
        s = CommutatorTree::node(s, CommutatorTree::Leaf(y));
    }
    s
}

/// The relator `[s_k, y]`, i.e. `s_{k+1}`, as a reduced word.
pub fn tower_relator(x: Gen, y: Gen, k: usize) -> Word {
    let yw = Word::generator(y);
    let mut s = Word::generator(x);
    for _ in 0..k {
        s = s.commutator(&yw);
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerMatch {
    pub k: usize,
    pub x: Gen,
    pub y: Gen,
}

/// Finds `k ≥ 1` and distinct generators `x, y` such that the relator is
/// `[s_k, y]` up to inversion and cyclic conjugation.
pub fn recognize_tower(p: &Presentation) -> Option<TowerMatch> {
    let r = p.relator_cyclic();
    if r.is_empty() || r.occurring_generators().len() != 2 {
        return None;
    }
    let occ: Vec<Gen> = r.occurring_generators().into_iter().collect();
    for (x, y) in [(occ[0], occ[1]), (occ[1], occ[0])] {
        let mut k = 1;
        loop {
            let core = tower_relator(x, y, k).cyclic_core();
            if core.len() > r.len() {
                break;
            }
            if core.len() == r.len() && cyclically_equivalent(&core, r) {
                return Some(TowerMatch { k, x, y });
            }
            k += 1;
        }
    }
    None
}
