//! Planar full binary trees with lump-labelled leaves.

use std::fmt;

use crate::composition::SetComposition;
use crate::error::{Error, Result};
use crate::labels::{LabelSet, Relabel, Relabeling};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(LabelSet),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf(lump: LabelSet) -> Result<Tree> {
        if lump.is_empty() {
            return Err(Error::InvalidTree("empty leaf".into()));
        }
        Ok(Tree::Leaf(lump))
    }

    /// `[left, right]`; the grounds must be disjoint.
    pub fn node(left: Tree, right: Tree) -> Result<Tree> {
        let (a, b) = (left.ground(), right.ground());
        if !a.is_disjoint(b) {
            return Err(Error::InvalidTree(format!("branches {a} and {b} overlap")));
        }
        Ok(Tree::Node(Box::new(left), Box::new(right)))
    }

    /// The right comb `[…[[S_1, S_2], S_3], …, S_k]`.
    pub fn comb(f: &SetComposition) -> Result<Tree> {
        let mut it = f.lumps().iter();
        let first = it.next().ok_or_else(|| Error::InvalidTree("a comb needs at least one lump".into()))?;
        let mut t = Tree::Leaf(*first);
        for &l in it {
            t = Tree::Node(Box::new(t), Box::new(Tree::Leaf(l)));
        }
        Ok(t)
    }

    pub fn ground(&self) -> LabelSet {
        match self {
            Tree::Leaf(l) => *l,
            Tree::Node(a, b) => a.ground() | b.ground(),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(a, b) => a.leaves() + b.leaves(),
        }
    }

    /// Leaf lumps from left to right.
    pub fn debracket(&self) -> SetComposition {
        let mut lumps = Vec::new();
        self.collect(&mut lumps);
        SetComposition::new(lumps).expect("tree leaves are disjoint")
    }

    fn collect(&self, out: &mut Vec<LabelSet>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// All `2^(leaves-1)` trees obtained by switching branches at nodes,
    /// each with the parity sign of the number of switches.
    pub fn antisym(&self) -> Vec<(Tree, i64)> {
        match self {
            Tree::Leaf(_) => vec![(self.clone(), 1)],
            Tree::Node(a, b) => {
                let (la, lb) = (a.antisym(), b.antisym());
                let mut out = Vec::with_capacity(2 * la.len() * lb.len());
                for (x, sx) in &la {
                    for (y, sy) in &lb {
                        out.push((Tree::Node(Box::new(x.clone()), Box::new(y.clone())), sx * sy));
                        out.push((Tree::Node(Box::new(y.clone()), Box::new(x.clone())), -sx * sy));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(l) => {
                for i in l.iter() {
                    write!(f, "{}", i + 1)?;
                }
                Ok(())
            }
            Tree::Node(a, b) => write!(f, "[{a:?},{b:?}]"),
        }
    }
}

impl Relabel for Tree {
    fn relabel(&self, r: &Relabeling) -> Result<Self> {
        r.check_onto(self.ground())?;
        fn go(t: &Tree, r: &Relabeling) -> Tree {
            match t {
                Tree::Leaf(l) => Tree::Leaf(r.map_set(*l)),
                Tree::Node(a, b) => Tree::Node(Box::new(go(a, r)), Box::new(go(b, r))),
            }
        }
        Ok(go(self, r))
    }
}
