//! Sparse rational combinations of basis vectors.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::composition::SetComposition;
use crate::error::{Error, Result};
use crate::labels::{LabelSet, Relabel, Relabeling};
use crate::rational::Rational;

/// The bases of `Σ*` (`M`, `P`, `C`) and of `Σ` (`H`, `Q`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Basis {
    M,
    P,
    C,
    H,
    Q,
}

/// Which of the two dual Hopf algebras a basis belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Algebra {
    /// `Σ*`, functions on compositions.
    Dual,
    /// `Σ`, spanned by compositions.
    Primal,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::M, Basis::P, Basis::C, Basis::H, Basis::Q];

    pub fn algebra(self) -> Algebra {
        match self {
            Basis::M | Basis::P | Basis::C => Algebra::Dual,
            Basis::H | Basis::Q => Algebra::Primal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::P => "P",
            Basis::C => "C",
            Basis::H => "H",
            Basis::Q => "Q",
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        match s {
            "M" => Ok(Basis::M),
            "P" => Ok(Basis::P),
            "C" => Ok(Basis::C),
            "H" => Ok(Basis::H),
            "Q" => Ok(Basis::Q),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A linear combination `Σ c_F X_F` over the compositions of one ground.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    ground: LabelSet,
    basis: Basis,
    terms: BTreeMap<SetComposition, Rational>,
}

impl Element {
    pub fn zero(ground: LabelSet, basis: Basis) -> Self {
        Element { ground, basis, terms: BTreeMap::new() }
    }

    /// The single basis vector `X_F`.
    pub fn basis_vector(basis: Basis, f: SetComposition) -> Self {
        let ground = f.ground();
        let mut terms = BTreeMap::new();
        terms.insert(f, Rational::from_integer(1.into()));
        Element { ground, basis, terms }
    }

    /// The unit: the basis vector of the empty composition.
    pub fn unit(basis: Basis) -> Self {
        Element::basis_vector(basis, SetComposition::empty())
    }

    pub fn from_terms<I>(ground: LabelSet, basis: Basis, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SetComposition, Rational)>,
    {
        let mut e = Element::zero(ground, basis);
        for (k, c) in terms {
            if k.ground() != ground {
                return Err(Error::GroundMismatch(k.ground(), ground));
            }
            e.add_term(k, c);
        }
        Ok(e)
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<SetComposition, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SetComposition, &Rational)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, f: &SetComposition) -> Rational {
        self.terms.get(f).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c·X_key`; the caller guarantees the key lies over the ground.
    pub fn add_term(&mut self, key: SetComposition, c: Rational) {
        debug_assert_eq!(key.ground(), self.ground);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis.to_string(), other.basis.to_string()));
        }
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut e = self.clone();
        for (k, c) in &other.terms {
            e.add_term(k.clone(), c.clone());
        }
        Ok(e)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, k: &Rational) -> Element {
        let mut e = Element::zero(self.ground, self.basis);
        if k.is_zero() {
            return e;
        }
        e.terms = self.terms.iter().map(|(f, c)| (f.clone(), c * k)).collect();
        e
    }
}

impl Relabel for Element {
    fn relabel(&self, r: &Relabeling) -> Result<Self> {
        r.check_onto(self.ground)?;
        let mut e = Element::zero(r.domain(), self.basis);
        for (k, c) in &self.terms {
            e.add_term(k.relabel(r)?, c.clone());
        }
        Ok(e)
    }
}

/// A combination of `k`-fold tensors `X_{F_1} ⊗ … ⊗ X_{F_k}` over fixed
/// grounds `I_1, …, I_k`, all in one basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    grounds: Vec<LabelSet>,
    basis: Basis,
    terms: BTreeMap<Vec<SetComposition>, Rational>,
}

impl TensorElement {
    pub fn zero(grounds: Vec<LabelSet>, basis: Basis) -> Self {
        TensorElement { grounds, basis, terms: BTreeMap::new() }
    }

    pub fn grounds(&self) -> &[LabelSet] {
        &self.grounds
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<SetComposition>, &Rational)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, keys: &[SetComposition]) -> Rational {
        self.terms.get(keys).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, keys: Vec<SetComposition>, c: Rational) {
        debug_assert!(keys.iter().zip(&self.grounds).all(|(k, g)| k.ground() == *g));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(keys) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `a ⊗ b`.
    pub fn product(a: &Element, b: &Element) -> Result<TensorElement> {
        if a.basis != b.basis {
            return Err(Error::BasisMismatch(a.basis.to_string(), b.basis.to_string()));
        }
        let mut t = TensorElement::zero(vec![a.ground, b.ground], a.basis);
        for (f, x) in &a.terms {
            for (g, y) in &b.terms {
                t.add_term(vec![f.clone(), g.clone()], x * y);
            }
        }
        Ok(t)
    }

    /// Adds another tensor with the same grounds and basis.
    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis.to_string(), other.basis.to_string()));
        }
        if self.grounds != other.grounds {
            return Err(Error::InvalidComposition("tensor grounds differ".into()));
        }
        let mut t = self.clone();
        for (k, c) in &other.terms {
            t.add_term(k.clone(), c.clone());
        }
        Ok(t)
    }

    pub fn scale(&self, k: &Rational) -> TensorElement {
        let mut t = TensorElement::zero(self.grounds.clone(), self.basis);
        for (keys, c) in &self.terms {
            t.add_term(keys.clone(), c * k);
        }
        t
    }

    /// Applies a linear map to factor `slot`, given on basis vectors.
    pub fn map_factor<F>(&self, slot: usize, mut f: F) -> Result<TensorElement>
    where
        F: FnMut(&SetComposition) -> Result<Element>,
    {
        let mut out: Option<TensorElement> = None;
        for (keys, c) in &self.terms {
            let image = f(&keys[slot])?;
            let t = out.get_or_insert_with(|| {
                let mut g = self.grounds.clone();
                g[slot] = image.ground;
                TensorElement::zero(g, image.basis)
            });
            for (k, d) in &image.terms {
                let mut ks = keys.clone();
                ks[slot] = k.clone();
                t.add_term(ks, c * d);
            }
        }
        Ok(out.unwrap_or_else(|| TensorElement::zero(self.grounds.clone(), self.basis)))
    }

    /// Swaps the two factors of a 2-fold tensor.
    pub fn swap(&self) -> TensorElement {
        let mut t = TensorElement::zero(self.grounds.iter().rev().copied().collect(), self.basis);
        for (keys, c) in &self.terms {
            t.add_term(keys.iter().rev().cloned().collect(), c.clone());
        }
        t
    }
}
