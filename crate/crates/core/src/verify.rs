//! Invariant suites, runnable from the CLI and from tests.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adjoint::{c_functional, c_of, dynkin as dynkin_element, egs_expansion, is_steinmann, relation_rank, Atlas};
use crate::composition::SetComposition;
use crate::error::Result;
use crate::labels::LabelSet;
use crate::preposet::Preposet;
use crate::ratgeom::rank;
use crate::rational::{int, Rational};
use crate::sigma::{antipode, comultiply, counit, multiply, pairing, pairing_tensor, Basis, Element, TensorElement};
use crate::zie::{based_compositions, dimension};

/// Outcome of a suite: per-check counts and the first few failures.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub ok: bool,
    pub checks: BTreeMap<String, u64>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report { ok: true, ..Default::default() }
    }

    pub fn check<F: FnOnce() -> String>(&mut self, name: &str, pass: bool, detail: F) {
        *self.checks.entry(name.to_string()).or_insert(0) += 1;
        if !pass {
            self.ok = false;
            if self.failures.len() < 20 {
                self.failures.push(format!("{name}: {}", detail()));
            }
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.ok &= other.ok;
        for (k, v) in other.checks {
            *self.checks.entry(k).or_insert(0) += v;
        }
        for f in other.failures {
            if self.failures.len() < 20 {
                self.failures.push(f);
            }
        }
    }
}

/// Every way of assigning each label of `ground` to one of `k` ordered parts.
pub fn ordered_splits(ground: LabelSet, k: usize) -> Vec<Vec<LabelSet>> {
    let labels: Vec<usize> = ground.iter().collect();
    let total = k.pow(labels.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut parts = vec![LabelSet::EMPTY; k];
            for &i in &labels {
                parts[code % k] = parts[code % k] | LabelSet::singleton(i);
                code /= k;
            }
            parts
        })
        .collect()
}

fn bv(basis: Basis, f: &SetComposition) -> Element {
    Element::basis_vector(basis, f.clone())
}

/// Comultiplies factor `slot` of a tensor at `s`, producing one more factor.
fn split_factor(t: &TensorElement, slot: usize, s: LabelSet) -> Result<TensorElement> {
    let mut grounds = t.grounds().to_vec();
    let g = grounds[slot];
    grounds.splice(slot..=slot, [s, g - s]);
    let mut out = TensorElement::zero(grounds, t.basis());
    for (keys, c) in t.iter() {
        let d = comultiply(&bv(t.basis(), &keys[slot]), s)?;
        for (pair, e) in d.iter() {
            let mut ks = keys.clone();
            ks.splice(slot..=slot, pair.iter().cloned());
            out.add_term(ks, c * e);
        }
    }
    Ok(out)
}

fn associativity(basis: Basis, f: &SetComposition, g: &SetComposition, h: &SetComposition) -> Result<bool> {
    let (x, y, z) = (bv(basis, f), bv(basis, g), bv(basis, h));
    Ok(multiply(&multiply(&x, &y)?, &z)? == multiply(&x, &multiply(&y, &z)?)?)
}

fn coassociativity(basis: Basis, f: &SetComposition, parts: &[LabelSet]) -> Result<bool> {
    let x = bv(basis, f);
    let (a, b, c) = (parts[0], parts[1], parts[2]);
    let left = split_factor(&comultiply(&x, a)?, 1, b)?;
    let right = split_factor(&comultiply(&x, a | b)?, 0, a)?;
    let _ = c;
    Ok(left == right)
}

fn bimonoid(basis: Basis, f: &SetComposition, g: &SetComposition, u: LabelSet) -> Result<bool> {
    let (x, y) = (bv(basis, f), bv(basis, g));
    let (s, t) = (f.ground(), g.ground());
    let v = (s | t) - u;
    let lhs = comultiply(&multiply(&x, &y)?, u)?;
    let dx = comultiply(&x, s & u)?;
    let dy = comultiply(&y, t & u)?;
    let mut rhs = TensorElement::zero(vec![u, v], basis);
    for (kx, cx) in dx.iter() {
        for (ky, cy) in dy.iter() {
            let left = multiply(&bv(basis, &kx[0]), &bv(basis, &ky[0]))?;
            let right = multiply(&bv(basis, &kx[1]), &bv(basis, &ky[1]))?;
            let c = cx * cy;
            for (l, a) in left.iter() {
                for (r, b) in right.iter() {
                    rhs.add_term(vec![l.clone(), r.clone()], &c * a * b);
                }
            }
        }
    }
    Ok(lhs == rhs)
}

fn unit_counit(basis: Basis, f: &SetComposition) -> Result<bool> {
    let x = bv(basis, f);
    let one = Element::unit(basis);
    let products = multiply(&one, &x)? == x && multiply(&x, &one)? == x;
    let g = f.ground();
    let left = comultiply(&x, LabelSet::EMPTY)?;
    let right = comultiply(&x, g)?;
    let expect_left = TensorElement::product(&one, &x)?;
    let expect_right = TensorElement::product(&x, &one)?;
    let eps =
        counit(&x) == if g.is_empty() { Rational::from_integer(1.into()) } else { Rational::from_integer(0.into()) };
    Ok(products && left == expect_left && right == expect_right && eps)
}

/// `Σ_{S⊔T=I} μ(s ⊗ id)Δ_{S,T}(x)` and its mirror both equal `ε(x)·1`.
fn antipode_identity(basis: Basis, f: &SetComposition) -> Result<bool> {
    let x = bv(basis, f);
    let g = f.ground();
    let mut left = Element::zero(g, basis);
    let mut right = Element::zero(g, basis);
    for s in g.subsets() {
        let d = comultiply(&x, s)?;
        for (keys, c) in d.iter() {
            let a = bv(basis, &keys[0]);
            let b = bv(basis, &keys[1]);
            left = left.add(&multiply(&antipode(&a)?, &b)?.scale(c))?;
            right = right.add(&multiply(&a, &antipode(&b)?)?.scale(c))?;
        }
    }
    let expect = if g.is_empty() { Element::unit(basis).scale(&counit(&x)) } else { Element::zero(g, basis) };
    Ok(left == expect && right == expect)
}

/// Hopf axioms in every basis: exhaustive for `n ≤ 3`, otherwise `samples`
/// random instances per check and basis.
pub fn hopf(n: usize, samples: usize, seed: u64) -> Result<Report> {
    let ground = LabelSet::first(n);
    let mut rep = Report::new();
    let exhaustive = n <= 3;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps: BTreeMap<LabelSet, Vec<SetComposition>> =
        ground.subsets().map(|s| (s, SetComposition::enumerate(s))).collect();
    let splits3 = ordered_splits(ground, 3);
    let splits2 = ordered_splits(ground, 2);
    for basis in Basis::ALL {
        let tag = |name: &str| format!("{name}[{basis}]");
        if exhaustive {
            for parts in &splits3 {
                for f in &comps[&parts[0]] {
                    for g in &comps[&parts[1]] {
                        for h in &comps[&parts[2]] {
                            let ok = associativity(basis, f, g, h)?;
                            rep.check(&tag("associativity"), ok, || format!("{f:?} {g:?} {h:?}"));
                        }
                    }
                }
                for f in &comps[&ground] {
                    let ok = coassociativity(basis, f, parts)?;
                    rep.check(&tag("coassociativity"), ok, || format!("{f:?} {parts:?}"));
                }
            }
            for parts in &splits2 {
                for f in &comps[&parts[0]] {
                    for g in &comps[&parts[1]] {
                        for u in ground.subsets() {
                            let ok = bimonoid(basis, f, g, u)?;
                            rep.check(&tag("bimonoid"), ok, || format!("{f:?} {g:?} {u}"));
                        }
                    }
                }
            }
            for s in ground.subsets() {
                for f in &comps[&s] {
                    let ok = unit_counit(basis, f)?;
                    rep.check(&tag("unit_counit"), ok, || format!("{f:?}"));
                    let ok = antipode_identity(basis, f)?;
                    rep.check(&tag("antipode"), ok, || format!("{f:?}"));
                }
            }
        } else {
            for _ in 0..samples {
                let p3 = splits3.choose(&mut rng).unwrap();
                let f = comps[&p3[0]].choose(&mut rng).unwrap();
                let g = comps[&p3[1]].choose(&mut rng).unwrap();
                let h = comps[&p3[2]].choose(&mut rng).unwrap();
                let ok = associativity(basis, f, g, h)?;
                rep.check(&tag("associativity"), ok, || format!("{f:?} {g:?} {h:?}"));
                let full = comps[&ground].choose(&mut rng).unwrap();
                let ok = coassociativity(basis, full, p3)?;
                rep.check(&tag("coassociativity"), ok, || format!("{full:?} {p3:?}"));
                let p2 = splits2.choose(&mut rng).unwrap();
                let f = comps[&p2[0]].choose(&mut rng).unwrap();
                let g = comps[&p2[1]].choose(&mut rng).unwrap();
                let u = LabelSet::from_bits(rng.gen::<u32>() & ground.bits());
                let ok = bimonoid(basis, f, g, u)?;
                rep.check(&tag("bimonoid"), ok, || format!("{f:?} {g:?} {u}"));
                let ok = unit_counit(basis, full)?;
                rep.check(&tag("unit_counit"), ok, || format!("{full:?}"));
                let ok = antipode_identity(basis, full)?;
                rep.check(&tag("antipode"), ok, || format!("{full:?}"));
            }
        }
    }
    Ok(rep)
}

/// Pairing adjunctions `⟨μ(a⊗b), x⟩ = ⟨a⊗b, Δx⟩` and `⟨s a, x⟩ = ⟨a, s x⟩`,
/// exhaustively over basis vectors of every dual/primal basis pair.
pub fn duality(n: usize) -> Result<Report> {
    let ground = LabelSet::first(n);
    let mut rep = Report::new();
    let comps: BTreeMap<LabelSet, Vec<SetComposition>> =
        ground.subsets().map(|s| (s, SetComposition::enumerate(s))).collect();
    for dual in [Basis::M, Basis::P, Basis::C] {
        for primal in [Basis::H, Basis::Q] {
            let tag = |name: &str| format!("{name}[{dual},{primal}]");
            for s in ground.subsets() {
                let t = ground - s;
                for x in &comps[&ground] {
                    let xe = bv(primal, x);
                    let dx = comultiply(&xe, s)?;
                    for a in &comps[&s] {
                        for b in &comps[&t] {
                            let (ae, be) = (bv(dual, a), bv(dual, b));
                            let lhs = pairing(&multiply(&ae, &be)?, &xe)?;
                            let rhs = pairing_tensor(&TensorElement::product(&ae, &be)?, &dx)?;
                            rep.check(&tag("product_coproduct"), lhs == rhs, || format!("{a:?} {b:?} {x:?}"));
                        }
                    }
                }
            }
            for a in &comps[&ground] {
                for x in &comps[&ground] {
                    let (ae, xe) = (bv(dual, a), bv(primal, x));
                    let lhs = pairing(&antipode(&ae)?, &xe)?;
                    let rhs = pairing(&ae, &antipode(&xe)?)?;
                    rep.check(&tag("antipode"), lhs == rhs, || format!("{a:?} {x:?}"));
                }
            }
        }
    }
    Ok(rep)
}

/// Random element with small integer coefficients over `ground`.
pub fn random_element(rng: &mut impl Rng, ground: LabelSet, basis: Basis, terms: usize) -> Element {
    let all = SetComposition::enumerate(ground);
    let mut e = Element::zero(ground, basis);
    for _ in 0..terms {
        let f = all.choose(rng).unwrap().clone();
        let c: i64 = rng.gen_range(-3..=3);
        e.add_term(f, Rational::from_integer(c.into()));
    }
    e
}

/// Steinmann relations at `n`: every `č_p` satisfies them, the relation rank
/// is `#chambers - dim Zie[n]`, and the `č_F` for `F ∈ Σ*_{i0}` are
/// independent. The last two together say the kernel of the relation system
/// is exactly their span.
pub fn steinmann(atlas: &Atlas, n: usize) -> Result<Report> {
    let ground = LabelSet::first(n);
    let mut rep = Report::new();
    let arr = atlas.arrangement(ground)?;
    let rels = atlas.relations(ground)?;
    for p in Preposet::enumerate(ground) {
        let ok = is_steinmann(&rels, &c_functional(&arr, &p)?);
        rep.check("c_satisfies_relations", ok, || format!("{p:?}"));
    }
    let r = relation_rank(&arr, &rels);
    let dim = dimension(ground) as usize;
    rep.check("relation_rank", r + dim == arr.len(), || format!("rank {r} + dim {dim} != {} chambers", arr.len()));
    let based = based_compositions(ground);
    let rows: Vec<Vec<Rational>> =
        based.iter().map(|f| c_of(&arr, f).map(|c| c.values().to_vec())).collect::<Result<_>>()?;
    let k = rank(&rows, arr.len());
    rep.check("c_independent", k == based.len(), || format!("rank {k} of {} functionals", based.len()));
    rep.check("kernel_is_span", k == arr.len() - r, || format!("span {k}, kernel {}", arr.len() - r));
    Ok(rep)
}

/// Dynkin elements at `n`: they equal the EGS products, are primitive, and
/// their signed sum over every Steinmann relation vanishes.
pub fn dynkin(atlas: &Atlas, n: usize) -> Result<Report> {
    let ground = LabelSet::first(n);
    let mut rep = Report::new();
    let arr = atlas.arrangement(ground)?;
    let elements: Vec<Element> = (0..arr.len()).map(|id| dynkin_element(&arr, id)).collect();
    for (id, d) in elements.iter().enumerate() {
        let egs = egs_expansion(&arr, id)?;
        rep.check("egs", *d == egs, || arr.sign_string(id));
        for s in ground.subsets() {
            if s.is_empty() || s == ground {
                continue;
            }
            let ok = comultiply(d, s)?.is_zero();
            rep.check("primitive", ok, || format!("{} at {s}", arr.sign_string(id)));
        }
    }
    for rel in atlas.relations(ground)?.iter() {
        let mut sum = Element::zero(ground, Basis::H);
        for &(id, sign) in &rel.terms {
            sum = sum.add(&elements[id].scale(&int(sign as i64)))?;
        }
        rep.check("relations", sum.is_zero(), || format!("{:?}", rel.hyperplanes));
    }
    Ok(rep)
}
