//! Universal constructions found by exhaustive search and verified against
//! every cone, plus monoidal and cartesian structure.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{find_right_adjoint, is_initial, is_iso, is_terminal};
use crate::category::{FinCategory, MorId, ObjId};
use crate::construct::opposite;
use crate::functor::FunctorData;
use crate::report::{as_pairs, Counterexample, LawEntry, LawReport};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum StructureError {
    #[error("missing product of {0} and {1}")]
    MissingProduct(ObjId, ObjId),
    #[error("invalid witness: {0}")]
    Invalid(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, StructureError> {
    Err(StructureError::Invalid(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TerminalWitness {
    pub object: ObjId,
    /// `bang[B]` is the unique morphism `B → 1`
    pub bang: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub left: ObjId,
    pub right: ObjId,
    pub apex: ObjId,
    pub pi1: MorId,
    pub pi2: MorId,
    /// `(f₁, f₂) ↦ ⟨f₁, f₂⟩` for every cone
    #[serde(serialize_with = "as_pairs")]
    pub mediator: BTreeMap<(MorId, MorId), MorId>,
}

impl ProductWitness {
    pub fn pair(&self, f1: MorId, f2: MorId) -> Option<MorId> {
        self.mediator.get(&(f1, f2)).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackWitness {
    pub f1: MorId,
    pub f2: MorId,
    pub apex: ObjId,
    pub p1: MorId,
    pub p2: MorId,
    #[serde(serialize_with = "as_pairs")]
    pub mediator: BTreeMap<(MorId, MorId), MorId>,
}

impl PullbackWitness {
    pub fn mediate(&self, g1: MorId, g2: MorId) -> Option<MorId> {
        self.mediator.get(&(g1, g2)).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualizerWitness {
    pub f: MorId,
    pub g: MorId,
    pub object: ObjId,
    pub e: MorId,
    /// fork `h` (with `f h = g h`) ↦ unique `v` with `e v = h`
    #[serde(serialize_with = "as_pairs")]
    pub mediator: BTreeMap<MorId, MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentialWitness {
    /// the argument `A₂`
    pub arg: ObjId,
    /// the target `A₁`
    pub target: ObjId,
    /// `A₂ ⇒ A₁`
    pub object: ObjId,
    pub eval: MorId,
    /// the product `(A₂ ⇒ A₁) × A₂` used by `eval`
    pub product: ProductWitness,
    /// `(C, g: C × A₂ → A₁) ↦ λg`
    #[serde(serialize_with = "as_pairs")]
    pub transpose: BTreeMap<(ObjId, MorId), MorId>,
    /// `u: C → (A₂ ⇒ A₁) ↦ λ⁻¹u = eval ∘ (u × id)`
    #[serde(serialize_with = "as_pairs")]
    pub inverse: BTreeMap<MorId, MorId>,
    /// objects `C` quantified over (those with a chosen `C × A₂`)
    pub quantified: Vec<ObjId>,
    /// every object was quantified over
    pub complete: bool,
}

impl ExponentialWitness {
    pub fn lambda(&self, c: ObjId, g: MorId) -> Option<MorId> {
        self.transpose.get(&(c, g)).copied()
    }

    pub fn unlambda(&self, u: MorId) -> Option<MorId> {
        self.inverse.get(&u).copied()
    }
}

/// Chosen products keyed by factor pair.
pub type ProductTable = BTreeMap<(ObjId, ObjId), ProductWitness>;

/// `f₁ × f₂ = ⟨f₁ ∘ π₁, f₂ ∘ π₂⟩` through chosen products.
pub fn times(c: &FinCategory, products: &ProductTable, f1: MorId, f2: MorId) -> Option<MorId> {
    let src = products.get(&(c.dom(f1), c.dom(f2)))?;
    let tgt = products.get(&(c.cod(f1), c.cod(f2)))?;
    tgt.pair(c.comp(f1, src.pi1), c.comp(f2, src.pi2))
}

pub fn find_terminals(c: &FinCategory) -> Vec<ObjId> {
    c.objects().filter(|&a| is_terminal(c, a)).collect()
}

pub fn find_initials(c: &FinCategory) -> Vec<ObjId> {
    c.objects().filter(|&a| is_initial(c, a)).collect()
}

pub fn terminal_witness(c: &FinCategory, a: ObjId) -> Option<TerminalWitness> {
    is_terminal(c, a).then(|| TerminalWitness { object: a, bang: c.objects().map(|b| c.hom(b, a)[0]).collect() })
}

pub fn validate_terminal(c: &FinCategory, w: &TerminalWitness) -> Result<(), StructureError> {
    if w.bang.len() != c.num_objects() {
        return invalid("bang table has the wrong size");
    }
    for b in c.objects() {
        let hom = c.hom(b, w.object);
        if hom.len() != 1 || hom[0] != w.bang[b.idx()] {
            return invalid(format!("{} has {} morphisms into the terminal candidate", c.obj_name(b), hom.len()));
        }
    }
    Ok(())
}

/// Verifies `v ↦ key(v)` is a bijection from `Hom(D, apex)` onto `cones`, returning the inverse table.
fn bijection<K: Ord + Copy>(apex_hom: &[MorId], cones: &[K], key: impl Fn(MorId) -> K) -> Option<BTreeMap<K, MorId>> {
    if apex_hom.len() != cones.len() {
        return None;
    }
    let mut table = BTreeMap::new();
    for &v in apex_hom {
        if table.insert(key(v), v).is_some() {
            return None;
        }
    }
    cones.iter().all(|k| table.contains_key(k)).then_some(table)
}

fn product_cones(c: &FinCategory, d: ObjId, a: ObjId, b: ObjId) -> Vec<(MorId, MorId)> {
    c.hom(d, a).iter().flat_map(|&f1| c.hom(d, b).iter().map(move |&f2| (f1, f2))).collect()
}

fn product_search(c: &FinCategory, a: ObjId, b: ObjId, first_only: bool) -> Vec<ProductWitness> {
    let cones: Vec<Vec<(MorId, MorId)>> = c.objects().map(|d| product_cones(c, d, a, b)).collect();
    let mut out = Vec::new();
    for p in c.objects() {
        if c.objects().any(|d| c.hom(d, p).len() != cones[d.idx()].len()) {
            continue;
        }
        for &pi1 in c.hom(p, a) {
            for &pi2 in c.hom(p, b) {
                let mut mediator = BTreeMap::new();
                let ok = c.objects().all(|d| match bijection(c.hom(d, p), &cones[d.idx()], |v| (c.comp(pi1, v), c.comp(pi2, v))) {
                    Some(t) => {
                        mediator.extend(t);
                        true
                    }
                    None => false,
                });
                if ok {
                    out.push(ProductWitness { left: a, right: b, apex: p, pi1, pi2, mediator });
                    if first_only {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// All product witnesses for `(a, b)`, in canonical order.
pub fn find_products(c: &FinCategory, a: ObjId, b: ObjId) -> Vec<ProductWitness> {
    product_search(c, a, b, false)
}

/// The least product witness.
pub fn first_product(c: &FinCategory, a: ObjId, b: ObjId) -> Option<ProductWitness> {
    product_search(c, a, b, true).pop()
}

pub fn validate_product(c: &FinCategory, w: &ProductWitness) -> Result<(), StructureError> {
    if c.dom(w.pi1) != w.apex || c.dom(w.pi2) != w.apex || c.cod(w.pi1) != w.left || c.cod(w.pi2) != w.right {
        return invalid("projections have the wrong type");
    }
    let mut entries = 0;
    for d in c.objects() {
        for (f1, f2) in product_cones(c, d, w.left, w.right) {
            let n: Vec<MorId> = c.hom(d, w.apex).iter().copied().filter(|&v| c.comp(w.pi1, v) == f1 && c.comp(w.pi2, v) == f2).collect();
            if n.len() != 1 {
                return invalid(format!("cone ({}, {}) has {} mediators", c.mor_name(f1), c.mor_name(f2), n.len()));
            }
            if w.pair(f1, f2) != Some(n[0]) {
                return invalid(format!("mediator table entry for ({}, {}) is wrong", c.mor_name(f1), c.mor_name(f2)));
            }
            entries += 1;
        }
    }
    if entries != w.mediator.len() {
        return invalid("mediator table has extra entries");
    }
    Ok(())
}

fn pullback_cones(c: &FinCategory, d: ObjId, f1: MorId, f2: MorId) -> Vec<(MorId, MorId)> {
    let mut out = Vec::new();
    for &g1 in c.hom(d, c.dom(f1)) {
        for &g2 in c.hom(d, c.dom(f2)) {
            if c.comp(f1, g1) == c.comp(f2, g2) {
                out.push((g1, g2));
            }
        }
    }
    out
}

fn pullback_search(c: &FinCategory, f1: MorId, f2: MorId, first_only: bool) -> Vec<PullbackWitness> {
    assert_eq!(c.cod(f1), c.cod(f2), "pullback of a non-cospan");
    let cones: Vec<Vec<(MorId, MorId)>> = c.objects().map(|d| pullback_cones(c, d, f1, f2)).collect();
    let mut out = Vec::new();
    for p in c.objects() {
        if c.objects().any(|d| c.hom(d, p).len() != cones[d.idx()].len()) {
            continue;
        }
        for (p1, p2) in pullback_cones(c, p, f1, f2) {
            let mut mediator = BTreeMap::new();
            let ok = c.objects().all(|d| match bijection(c.hom(d, p), &cones[d.idx()], |v| (c.comp(p1, v), c.comp(p2, v))) {
                Some(t) => {
                    mediator.extend(t);
                    true
                }
                None => false,
            });
            if ok {
                out.push(PullbackWitness { f1, f2, apex: p, p1, p2, mediator });
                if first_only {
                    return out;
                }
            }
        }
    }
    out
}

pub fn find_pullbacks(c: &FinCategory, f1: MorId, f2: MorId) -> Vec<PullbackWitness> {
    pullback_search(c, f1, f2, false)
}

pub fn first_pullback(c: &FinCategory, f1: MorId, f2: MorId) -> Option<PullbackWitness> {
    pullback_search(c, f1, f2, true).pop()
}

/// Pushouts of a span `f₁: B → A₁`, `f₂: B → A₂`: pullbacks in the opposite
/// category, which shares ids, so the legs read as `p_i: A_i → apex` in `c`.
pub fn find_pushouts(c: &FinCategory, f1: MorId, f2: MorId) -> Vec<PullbackWitness> {
    let op = opposite(c);
    find_pullbacks(&op, f1, f2)
}

pub fn validate_pullback(c: &FinCategory, w: &PullbackWitness) -> Result<(), StructureError> {
    if c.comp(w.f1, w.p1) != c.comp(w.f2, w.p2) {
        return invalid("pullback square does not commute");
    }
    let mut entries = 0;
    for d in c.objects() {
        for (g1, g2) in pullback_cones(c, d, w.f1, w.f2) {
            let n: Vec<MorId> = c.hom(d, w.apex).iter().copied().filter(|&v| c.comp(w.p1, v) == g1 && c.comp(w.p2, v) == g2).collect();
            if n.len() != 1 || w.mediate(g1, g2) != Some(n[0]) {
                return invalid(format!("cone ({}, {}) has {} mediators", c.mor_name(g1), c.mor_name(g2), n.len()));
            }
            entries += 1;
        }
    }
    if entries != w.mediator.len() {
        return invalid("mediator table has extra entries");
    }
    Ok(())
}

fn equalizer_search(c: &FinCategory, f: MorId, g: MorId, first_only: bool) -> Vec<EqualizerWitness> {
    let a = c.dom(f);
    let forks: Vec<Vec<MorId>> = c.objects().map(|d| c.hom(d, a).iter().copied().filter(|&h| c.comp(f, h) == c.comp(g, h)).collect()).collect();
    let mut out = Vec::new();
    for e_obj in c.objects() {
        if c.objects().any(|d| c.hom(d, e_obj).len() != forks[d.idx()].len()) {
            continue;
        }
        for &e in &forks[e_obj.idx()] {
            let mut mediator = BTreeMap::new();
            let ok = c.objects().all(|d| match bijection(c.hom(d, e_obj), &forks[d.idx()], |v| c.comp(e, v)) {
                Some(t) => {
                    mediator.extend(t);
                    true
                }
                None => false,
            });
            if ok {
                out.push(EqualizerWitness { f, g, object: e_obj, e, mediator });
                if first_only {
                    return out;
                }
            }
        }
    }
    out
}

pub fn find_equalizers(c: &FinCategory, f: MorId, g: MorId) -> Vec<EqualizerWitness> {
    assert!(c.dom(f) == c.dom(g) && c.cod(f) == c.cod(g), "equalizer of a non-parallel pair");
    equalizer_search(c, f, g, false)
}

pub fn first_equalizer(c: &FinCategory, f: MorId, g: MorId) -> Option<EqualizerWitness> {
    equalizer_search(c, f, g, true).pop()
}

pub fn validate_equalizer(c: &FinCategory, w: &EqualizerWitness) -> Result<(), StructureError> {
    if c.comp(w.f, w.e) != c.comp(w.g, w.e) {
        return invalid("e does not equalize");
    }
    for d in c.objects() {
        for &h in c.hom(d, c.dom(w.f)) {
            if c.comp(w.f, h) != c.comp(w.g, h) {
                continue;
            }
            let n: Vec<MorId> = c.hom(d, w.object).iter().copied().filter(|&v| c.comp(w.e, v) == h).collect();
            if n.len() != 1 || w.mediator.get(&h) != Some(&n[0]) {
                return invalid(format!("fork {} has {} mediators", c.mor_name(h), n.len()));
            }
        }
    }
    Ok(())
}

/// `u × id_A` through chosen products, for `u: C → E`.
fn times_id(c: &FinCategory, products: &ProductTable, u: MorId, a: ObjId) -> Option<MorId> {
    times(c, products, u, c.id(a))
}

fn exponential_search(c: &FinCategory, products: &ProductTable, a: ObjId, b: ObjId, first_only: bool) -> Result<Vec<ExponentialWitness>, StructureError> {
    let quantified: Vec<ObjId> = c.objects().filter(|&x| products.contains_key(&(x, a))).collect();
    if quantified.is_empty() {
        return Err(StructureError::MissingProduct(a, a));
    }
    let complete = quantified.len() == c.num_objects();
    let mut out = Vec::new();
    for &e in &quantified {
        let pe = &products[&(e, a)];
        if quantified.iter().any(|&x| c.hom(x, e).len() != c.hom(products[&(x, a)].apex, b).len()) {
            continue;
        }
        for &ev in c.hom(pe.apex, b) {
            let mut transpose = BTreeMap::new();
            let mut inverse = BTreeMap::new();
            let ok = quantified.iter().all(|&x| {
                let targets: Vec<MorId> = c.hom(products[&(x, a)].apex, b).to_vec();
                let key = |u: MorId| times_id(c, products, u, a).map(|ui| c.comp(ev, ui));
                let mut seen = BTreeMap::new();
                for &u in c.hom(x, e) {
                    let Some(g) = key(u) else { return false };
                    if seen.insert(g, u).is_some() {
                        return false;
                    }
                    inverse.insert(u, g);
                }
                if !targets.iter().all(|g| seen.contains_key(g)) {
                    return false;
                }
                for (g, u) in seen {
                    transpose.insert((x, g), u);
                }
                true
            });
            if ok {
                out.push(ExponentialWitness {
                    arg: a,
                    target: b,
                    object: e,
                    eval: ev,
                    product: pe.clone(),
                    transpose,
                    inverse,
                    quantified: quantified.clone(),
                    complete,
                });
                if first_only {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Exponentials `a ⇒ b`, universal over every `C` whose product with `a` is chosen.
pub fn find_exponentials(c: &FinCategory, products: &ProductTable, a: ObjId, b: ObjId) -> Result<Vec<ExponentialWitness>, StructureError> {
    exponential_search(c, products, a, b, false)
}

pub fn first_exponential(c: &FinCategory, products: &ProductTable, a: ObjId, b: ObjId) -> Option<ExponentialWitness> {
    exponential_search(c, products, a, b, true).ok().and_then(|mut v| v.pop())
}

pub fn validate_exponential(c: &FinCategory, products: &ProductTable, w: &ExponentialWitness) -> Result<(), StructureError> {
    let pe = products.get(&(w.object, w.arg)).ok_or(StructureError::MissingProduct(w.object, w.arg))?;
    if c.dom(w.eval) != pe.apex || c.cod(w.eval) != w.target {
        return invalid("eval has the wrong type");
    }
    for &x in &w.quantified {
        let px = products.get(&(x, w.arg)).ok_or(StructureError::MissingProduct(x, w.arg))?;
        for &g in c.hom(px.apex, w.target) {
            let sols: Vec<MorId> =
                c.hom(x, w.object).iter().copied().filter(|&u| times_id(c, products, u, w.arg).map(|ui| c.comp(w.eval, ui)) == Some(g)).collect();
            if sols.len() != 1 || w.lambda(x, g) != Some(sols[0]) {
                return invalid(format!("{} has {} transposes", c.mor_name(g), sols.len()));
            }
            if w.unlambda(sols[0]) != Some(g) {
                return invalid("inverse transpose is not inverse");
            }
        }
    }
    Ok(())
}

/// Every cospan has a pullback.
pub fn has_all_pullbacks(c: &FinCategory) -> bool {
    c.morphisms().all(|f1| c.incoming(c.cod(f1)).iter().all(|&f2| first_pullback(c, f1, f2).is_some()))
}

/// Every parallel pair has an equalizer.
pub fn has_all_equalizers(c: &FinCategory) -> bool {
    c.morphisms().all(|f| c.hom(c.dom(f), c.cod(f)).iter().all(|&g| first_equalizer(c, f, g).is_some()))
}

/// The unique isomorphism between two product witnesses commuting with the projections.
pub fn product_iso(c: &FinCategory, w1: &ProductWitness, w2: &ProductWitness) -> Option<MorId> {
    let phi = w2.pair(w1.pi1, w1.pi2)?;
    let psi = w1.pair(w2.pi1, w2.pi2)?;
    (c.comp(psi, phi) == c.id(w1.apex) && c.comp(phi, psi) == c.id(w2.apex)).then_some(phi)
}

pub fn pullback_iso(c: &FinCategory, w1: &PullbackWitness, w2: &PullbackWitness) -> Option<MorId> {
    let phi = w2.mediate(w1.p1, w1.p2)?;
    let psi = w1.mediate(w2.p1, w2.p2)?;
    (c.comp(psi, phi) == c.id(w1.apex) && c.comp(phi, psi) == c.id(w2.apex)).then_some(phi)
}

pub fn equalizer_iso(c: &FinCategory, w1: &EqualizerWitness, w2: &EqualizerWitness) -> Option<MorId> {
    let phi = *w2.mediator.get(&w1.e)?;
    let psi = *w1.mediator.get(&w2.e)?;
    (c.comp(psi, phi) == c.id(w1.object) && c.comp(phi, psi) == c.id(w2.object)).then_some(phi)
}

/// `λ₂(eval₁)`, checked to be an isomorphism.
pub fn exponential_iso(c: &FinCategory, w1: &ExponentialWitness, w2: &ExponentialWitness) -> Option<MorId> {
    let phi = w2.lambda(w1.object, w1.eval)?;
    let psi = w1.lambda(w2.object, w2.eval)?;
    (c.comp(psi, phi) == c.id(w1.object) && c.comp(phi, psi) == c.id(w2.object)).then_some(phi)
}

/// Chosen terminal, products and exponentials (least witnesses), with flags.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CartesianStructure {
    pub terminal: Option<TerminalWitness>,
    #[serde(serialize_with = "as_pairs")]
    pub products: ProductTable,
    #[serde(serialize_with = "as_pairs")]
    pub exponentials: BTreeMap<(ObjId, ObjId), ExponentialWitness>,
    pub has_finite_products: bool,
    pub is_ccc: bool,
    /// `B` with `A ⇒ B` for every `A`
    pub exponentiating: Vec<ObjId>,
    /// `B` with `B ⇒ A` for every `A`
    pub exponentiable: Vec<ObjId>,
}

impl CartesianStructure {
    pub fn product(&self, a: ObjId, b: ObjId) -> Option<&ProductWitness> {
        self.products.get(&(a, b))
    }

    /// Exponential with argument `a` and target `b`.
    pub fn exponential(&self, a: ObjId, b: ObjId) -> Option<&ExponentialWitness> {
        self.exponentials.get(&(a, b))
    }

    pub fn times(&self, c: &FinCategory, f: MorId, g: MorId) -> Option<MorId> {
        times(c, &self.products, f, g)
    }

    pub fn from_parts(
        c: &FinCategory,
        terminal: Option<TerminalWitness>,
        products: ProductTable,
        exponentials: BTreeMap<(ObjId, ObjId), ExponentialWitness>,
    ) -> Self {
        let n = c.num_objects();
        let has_finite_products = terminal.is_some() && products.len() == n * n;
        let exponentiating: Vec<ObjId> = c.objects().filter(|&b| c.objects().all(|a| exponentials.contains_key(&(a, b)))).collect();
        let exponentiable: Vec<ObjId> = c.objects().filter(|&b| c.objects().all(|a| exponentials.contains_key(&(b, a)))).collect();
        let is_ccc = has_finite_products && exponentiating.len() == n && exponentials.values().all(|w| w.complete);
        CartesianStructure { terminal, products, exponentials, has_finite_products, is_ccc, exponentiating, exponentiable }
    }

    /// The induced cartesian monoidal structure (partial where products are missing).
    pub fn monoidal(&self, c: &FinCategory) -> Option<MonoidalStructure> {
        let one = self.terminal.as_ref()?.object;
        let mut m = MonoidalStructure { unit: one, ..Default::default() };
        for (&(a, b), w) in &self.products {
            m.tensor_obj.insert((a, b), w.apex);
            if let Some(s) = self.product(b, a).and_then(|ba| ba.pair(w.pi2, w.pi1)) {
                m.symmetry_mut().insert((a, b), s);
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                if let Some(h) = self.times(c, f, g) {
                    m.tensor_mor.insert((f, g), h);
                }
            }
        }
        for a in c.objects() {
            if let Some(w) = self.product(one, a) {
                m.left_unitor.insert(a, w.pi2);
            }
            if let Some(w) = self.product(a, one) {
                m.right_unitor.insert(a, w.pi1);
            }
        }
        for ((&(a, b), ab), x) in self.products.iter().flat_map(|p| c.objects().map(move |x| (p, x))) {
            let (Some(abx), Some(bx)) = (self.product(ab.apex, x), self.product(b, x)) else { continue };
            let Some(a_bx) = self.product(a, bx.apex) else { continue };
            // α = ⟨π₁ ∘ π₁, π₂ × id⟩
            let first = c.comp(ab.pi1, abx.pi1);
            let Some(rest) = self.times(c, ab.pi2, c.id(x)) else { continue };
            if let Some(alpha) = a_bx.pair(first, rest) {
                m.assoc.insert((a, b, x), alpha);
            }
        }
        Some(m)
    }
}

/// Least-witness cartesian structure of `c`.
pub fn choose_cartesian_structure(c: &FinCategory) -> CartesianStructure {
    let terminal = find_terminals(c).first().and_then(|&t| terminal_witness(c, t));
    let mut products = ProductTable::new();
    for a in c.objects() {
        for b in c.objects() {
            if let Some(w) = first_product(c, a, b) {
                products.insert((a, b), w);
            }
        }
    }
    let mut exponentials = BTreeMap::new();
    for a in c.objects() {
        for b in c.objects() {
            if let Some(w) = first_exponential(c, &products, a, b) {
                exponentials.insert((a, b), w);
            }
        }
    }
    CartesianStructure::from_parts(c, terminal, products, exponentials)
}

/// Tabulated monoidal data; entries are absent where the tensor is undefined.
#[derive(Clone, Debug, Default, Serialize)]
pub struct MonoidalStructure {
    pub unit: ObjId,
    #[serde(serialize_with = "as_pairs")]
    pub tensor_obj: BTreeMap<(ObjId, ObjId), ObjId>,
    #[serde(serialize_with = "as_pairs")]
    pub tensor_mor: BTreeMap<(MorId, MorId), MorId>,
    /// `α_{A,B,C}: (A ⊗ B) ⊗ C → A ⊗ (B ⊗ C)`
    #[serde(serialize_with = "as_pairs")]
    pub assoc: BTreeMap<(ObjId, ObjId, ObjId), MorId>,
    /// `λ_A: I ⊗ A → A`
    #[serde(serialize_with = "as_pairs")]
    pub left_unitor: BTreeMap<ObjId, MorId>,
    /// `ρ_A: A ⊗ I → A`
    #[serde(serialize_with = "as_pairs")]
    pub right_unitor: BTreeMap<ObjId, MorId>,
    /// `s_{A,B}: A ⊗ B → B ⊗ A`
    #[serde(skip)]
    pub symmetry: Option<BTreeMap<(ObjId, ObjId), MorId>>,
}

impl MonoidalStructure {
    fn symmetry_mut(&mut self) -> &mut BTreeMap<(ObjId, ObjId), MorId> {
        self.symmetry.get_or_insert_with(BTreeMap::new)
    }

    fn t(&self, a: ObjId, b: ObjId) -> Option<ObjId> {
        self.tensor_obj.get(&(a, b)).copied()
    }

    fn tm(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.tensor_mor.get(&(f, g)).copied()
    }

    /// A strict structure on a one-object category whose tensor is composition.
    pub fn composition_tensor(c: &FinCategory) -> Option<Self> {
        if c.num_objects() != 1 {
            return None;
        }
        let o = ObjId(0);
        let mut m = MonoidalStructure { unit: o, ..Default::default() };
        m.tensor_obj.insert((o, o), o);
        for f in c.morphisms() {
            for g in c.morphisms() {
                m.tensor_mor.insert((f, g), c.comp(f, g));
            }
        }
        m.assoc.insert((o, o, o), c.id(o));
        m.left_unitor.insert(o, c.id(o));
        m.right_unitor.insert(o, c.id(o));
        Some(m)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonoidalReport {
    pub laws: LawReport,
    pub strict: bool,
    pub symmetric: bool,
    /// `Some` when the tensor is total and right adjoints were searched
    pub closed: Option<bool>,
}

/// Checks bifunctoriality, naturality and invertibility of α, λ, ρ, the
/// pentagon and triangle, and (when present) the symmetry axioms.
pub fn validate_monoidal(c: &FinCategory, m: &MonoidalStructure) -> MonoidalReport {
    let suite = "monoidal";
    let mut laws = LawReport::new(suite);
    let name = |f: MorId| c.mor_name(f).to_string();
    let cx = |binding: Vec<(String, String)>, l: MorId, r: MorId| Counterexample { binding, lhs: name(l), rhs: name(r), at: 0 };
    let objs: Vec<ObjId> = c.objects().collect();

    let mut bif = LawEntry::new(suite, "tensor-bifunctor", "monoidal tensor is a bifunctor");
    for a in c.objects() {
        for b in c.objects() {
            if let (Some(ab), Some(h)) = (m.t(a, b), m.tm(c.id(a), c.id(b))) {
                bif.record(h == c.id(ab), || cx(vec![("A".into(), c.obj_name(a).into()), ("B".into(), c.obj_name(b).into())], h, c.id(ab)));
            }
        }
    }
    for (&(f1, g1), &fg1) in &m.tensor_mor {
        for &f2 in c.out_of(c.cod(f1)) {
            for &g2 in c.out_of(c.cod(g1)) {
                let (Some(fg2), Some(whole)) = (m.tm(f2, g2), m.tm(c.comp(f2, f1), c.comp(g2, g1))) else { continue };
                let lhs = c.comp(fg2, fg1);
                bif.record(lhs == whole, || {
                    cx(vec![("f1".into(), name(f1)), ("g1".into(), name(g1)), ("f2".into(), name(f2)), ("g2".into(), name(g2))], lhs, whole)
                });
            }
        }
    }
    bif.settle();
    laws.entries.push(bif);

    let mut nat = LawEntry::new(suite, "assoc-natural", "associator is a natural isomorphism");
    for (&(a, b, x), &al) in &m.assoc {
        nat.record(is_iso(c, al), || cx(vec![("A".into(), c.obj_name(a).into())], al, al));
        for &f in c.out_of(a) {
            for &g in c.out_of(b) {
                for &h in c.out_of(x) {
                    let (a2, b2, x2) = (c.cod(f), c.cod(g), c.cod(h));
                    let Some(&al2) = m.assoc.get(&(a2, b2, x2)) else { continue };
                    let lhs = m.tm(f, g).and_then(|fg| m.tm(fg, h)).map(|fgh| c.comp(al2, fgh));
                    let rhs = m.tm(g, h).and_then(|gh| m.tm(f, gh)).map(|fgh| c.comp(fgh, al));
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        nat.record(l == r, || cx(vec![("f".into(), name(f)), ("g".into(), name(g)), ("h".into(), name(h))], l, r));
                    }
                }
            }
        }
    }
    nat.settle();
    laws.entries.push(nat);

    for (label, table, left) in [("left-unitor-natural", &m.left_unitor, true), ("right-unitor-natural", &m.right_unitor, false)] {
        let mut e = LawEntry::new(suite, label, "unitors are natural isomorphisms");
        for (&a, &l) in table {
            e.record(is_iso(c, l), || cx(vec![("A".into(), c.obj_name(a).into())], l, l));
            for &f in c.out_of(a) {
                let Some(&l2) = table.get(&c.cod(f)) else { continue };
                let idu = c.id(m.unit);
                let Some(tf) = (if left { m.tm(idu, f) } else { m.tm(f, idu) }) else { continue };
                let (lhs, rhs) = (c.comp(l2, tf), c.comp(f, l));
                e.record(lhs == rhs, || cx(vec![("f".into(), name(f))], lhs, rhs));
            }
        }
        e.settle();
        laws.entries.push(e);
    }

    let mut pent = LawEntry::new(suite, "pentagon", "pentagon diagram");
    for &a in &objs {
        for &b in &objs {
            for &x in &objs {
                for &d in &objs {
                    let lhs = (|| {
                        let ab = m.t(a, b)?;
                        let xd = m.t(x, d)?;
                        let al1 = *m.assoc.get(&(ab, x, d))?;
                        let al2 = *m.assoc.get(&(a, b, xd))?;
                        Some(c.comp(al2, al1))
                    })();
                    let rhs = (|| {
                        let ab = m.t(a, b)?;
                        let bx = m.t(b, x)?;
                        let al_abx = *m.assoc.get(&(a, b, x))?;
                        let first = m.tm(al_abx, c.id(d))?;
                        let mid = *m.assoc.get(&(a, bx, d))?;
                        let last = m.tm(c.id(a), *m.assoc.get(&(b, x, d))?)?;
                        let _ = ab;
                        Some(c.comp(last, c.comp(mid, first)))
                    })();
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        pent.record(l == r, || {
                            cx([("A", a), ("B", b), ("C", x), ("D", d)].iter().map(|(k, o)| (k.to_string(), c.obj_name(*o).to_string())).collect(), l, r)
                        });
                    }
                }
            }
        }
    }
    pent.settle();
    laws.entries.push(pent);

    let mut tri = LawEntry::new(suite, "triangle", "triangle diagram");
    for &a in &objs {
        for &b in &objs {
            let r = (|| {
                let al = *m.assoc.get(&(a, m.unit, b))?;
                let lhs = c.comp(m.tm(c.id(a), *m.left_unitor.get(&b)?)?, al);
                let rhs = m.tm(*m.right_unitor.get(&a)?, c.id(b))?;
                Some((lhs, rhs))
            })();
            if let Some((l, r)) = r {
                tri.record(l == r, || cx(vec![("A".into(), c.obj_name(a).into()), ("B".into(), c.obj_name(b).into())], l, r));
            }
        }
    }
    tri.settle();
    laws.entries.push(tri);

    let mut symmetric = false;
    if let Some(s) = &m.symmetry {
        let mut inv = LawEntry::new(suite, "symmetry-involutive", "s ∘ s = id");
        let mut natural = LawEntry::new(suite, "symmetry-natural", "symmetry is natural");
        let mut unit = LawEntry::new(suite, "symmetry-unit", "λ ∘ s = ρ");
        let mut hex = LawEntry::new(suite, "hexagon", "symmetric hexagon");
        for (&(a, b), &sab) in s {
            if let Some(&sba) = s.get(&(b, a)) {
                let l = c.comp(sba, sab);
                inv.record(l == c.id(c.dom(sab)), || cx(vec![("A".into(), c.obj_name(a).into()), ("B".into(), c.obj_name(b).into())], l, c.id(c.dom(sab))));
            }
            for &f in c.out_of(a) {
                for &g in c.out_of(b) {
                    let Some(&s2) = s.get(&(c.cod(f), c.cod(g))) else { continue };
                    let (Some(fg), Some(gf)) = (m.tm(f, g), m.tm(g, f)) else { continue };
                    let (l, r) = (c.comp(s2, fg), c.comp(gf, sab));
                    natural.record(l == r, || cx(vec![("f".into(), name(f)), ("g".into(), name(g))], l, r));
                }
            }
        }
        for &a in &objs {
            if let (Some(&sai), Some(&la), Some(&ra)) = (s.get(&(a, m.unit)), m.left_unitor.get(&a), m.right_unitor.get(&a)) {
                let l = c.comp(la, sai);
                unit.record(l == ra, || cx(vec![("A".into(), c.obj_name(a).into())], l, ra));
            }
            for &b in &objs {
                for &x in &objs {
                    // α_{B,C,A} ∘ s_{A,B⊗C} ∘ α_{A,B,C} = (id_B ⊗ s_{A,C}) ∘ α_{B,A,C} ∘ (s_{A,B} ⊗ id_C)
                    let r = (|| {
                        let bx = m.t(b, x)?;
                        let lhs = c.comp(*m.assoc.get(&(b, x, a))?, c.comp(*s.get(&(a, bx))?, *m.assoc.get(&(a, b, x))?));
                        let rhs = c.comp(m.tm(c.id(b), *s.get(&(a, x))?)?, c.comp(*m.assoc.get(&(b, a, x))?, m.tm(*s.get(&(a, b))?, c.id(x))?));
                        Some((lhs, rhs))
                    })();
                    if let Some((l, r)) = r {
                        hex.record(l == r, || {
                            cx([("A", a), ("B", b), ("C", x)].iter().map(|(k, o)| (k.to_string(), c.obj_name(*o).to_string())).collect(), l, r)
                        });
                    }
                }
            }
        }
        for e in [&mut inv, &mut natural, &mut unit, &mut hex] {
            e.settle();
        }
        symmetric = [&inv, &natural, &unit, &hex].iter().all(|e| e.counterexample.is_none());
        laws.entries.extend([inv, natural, unit, hex]);
    }

    let strict = m.assoc.values().all(|&f| c.is_identity(f))
        && m.left_unitor.values().all(|&f| c.is_identity(f))
        && m.right_unitor.values().all(|&f| c.is_identity(f))
        && laws.no_failures();
    let closed = closed_flag(c, m);
    MonoidalReport { laws, strict, symmetric, closed }
}

/// Right adjoint to `− ⊗ B` for every `B`, when the tensor is total.
fn closed_flag(c: &FinCategory, m: &MonoidalStructure) -> Option<bool> {
    let n = c.num_objects();
    if m.tensor_obj.len() != n * n || m.tensor_mor.len() != c.num_morphisms() * c.num_morphisms() {
        return None;
    }
    let cat = std::sync::Arc::new(c.clone());
    let mut seen = HashSet::new();
    for b in c.objects() {
        let obj_map: Vec<ObjId> = c.objects().map(|a| m.tensor_obj[&(a, b)]).collect();
        let mor_map: Vec<MorId> = c.morphisms().map(|f| m.tensor_mor[&(f, c.id(b))]).collect();
        let Ok(f) = FunctorData::new(cat.clone(), cat.clone(), obj_map, mor_map) else { return Some(false) };
        if find_right_adjoint(&f).is_none() {
            return Some(false);
        }
        seen.insert(b);
    }
    Some(seen.len() == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catspec::load_category;
    use crate::report::LawStatus;

    fn arrow() -> FinCategory {
        load_category("object a\nobject b\nmorphism f : a -> b\n").unwrap()
    }

    fn c2() -> FinCategory {
        load_category("object o\nmorphism s : o -> o\ncompose s . s = id_o\n").unwrap()
    }

    #[test]
    fn walking_arrow_is_a_ccc() {
        let c = arrow();
        let (a, b) = (c.obj_by_name("a").unwrap(), c.obj_by_name("b").unwrap());
        assert_eq!(find_terminals(&c), vec![b]);
        assert_eq!(find_initials(&c), vec![a]);
        let p = find_products(&c, a, b);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].apex, a);
        validate_product(&c, &p[0]).unwrap();
        let cs = choose_cartesian_structure(&c);
        assert!(cs.has_finite_products && cs.is_ccc);
        let e = cs.exponential(b, a).unwrap();
        assert_eq!(e.object, a);
        validate_exponential(&c, &cs.products, e).unwrap();
        // b ⇒ b = b, a ⇒ a = b
        assert_eq!(cs.exponential(a, a).unwrap().object, b);
        let m = cs.monoidal(&c).unwrap();
        let r = validate_monoidal(&c, &m);
        assert!(r.laws.all_pass(), "{:?}", r.laws);
        assert!(r.symmetric);
        assert_eq!(r.closed, Some(true));
    }

    #[test]
    fn c2_has_no_terminal_and_no_square() {
        let c = c2();
        let o = ObjId(0);
        assert!(find_terminals(&c).is_empty());
        assert!(find_products(&c, o, o).is_empty());
        let cs = choose_cartesian_structure(&c);
        assert!(!cs.has_finite_products);
        assert!(cs.monoidal(&c).is_none());
    }

    #[test]
    fn composition_tensor_is_strict_and_tampering_breaks_the_pentagon() {
        let c = c2();
        let m = MonoidalStructure::composition_tensor(&c).unwrap();
        let r = validate_monoidal(&c, &m);
        assert!(r.laws.all_pass() && r.strict);
        let s = c.mor_by_name("s").unwrap();
        let mut bad = m.clone();
        bad.assoc.insert((ObjId(0), ObjId(0), ObjId(0)), s);
        let r = validate_monoidal(&c, &bad);
        assert_eq!(r.laws.entry("pentagon").unwrap().status, LawStatus::Fail);
        assert!(!r.strict);
    }

    #[test]
    fn equalizers_of_identical_maps_and_pushouts_by_duality() {
        let c = arrow();
        let f = c.mor_by_name("f").unwrap();
        let w = find_equalizers(&c, f, f);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].e, c.id(c.dom(f)));
        validate_equalizer(&c, &w[0]).unwrap();
        let id_b = c.id(c.cod(f));
        let pb = find_pullbacks(&c, id_b, id_b);
        assert_eq!(pb.len(), 1);
        validate_pullback(&c, &pb[0]).unwrap();
        // pushout of the span a ← a → b is b
        let po = find_pushouts(&c, c.id(c.dom(f)), f);
        assert_eq!(po.len(), 1);
        assert_eq!(po[0].apex, c.cod(f));
    }

    #[test]
    fn witnesses_are_isomorphic_and_serialize() {
        let c = load_category("object a\nobject b\nmorphism i : a -> b\nmorphism j : b -> a\ncompose j . i = id_a\ncompose i . j = id_b\n").unwrap();
        let a = c.obj_by_name("a").unwrap();
        let ws = find_products(&c, a, a);
        // every object is terminal, so each of a, b is an apex with the unique projections
        assert_eq!(ws.len(), 2);
        let phi = product_iso(&c, &ws[0], &ws[1]).unwrap();
        assert!(is_iso(&c, phi));
        let json = serde_json::to_string(&ws[0]).unwrap();
        assert!(json.contains("\"mediator\":[["));
    }
}
