//! A category presented by operations rather than tables.
//!
//! Law suites and the monad theorems quantify over a bounded set of objects
//! of a [`Model`], so unbounded universes such as finite sets with pairing
//! encodings can be checked alongside explicit [`FinCategory`] instances.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::category::{FinCategory, MorId, ObjId};
use crate::structures::{first_equalizer, first_pullback, CartesianStructure, EqualizerWitness, PullbackWitness};

pub trait Model {
    type Obj: Clone + Eq + Ord + Hash + Debug;
    type Mor: Clone + Eq + Ord + Hash + Debug;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn id(&self, a: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`, or `None` when `cod f ≠ dom g`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    /// The objects quantified over.
    fn objects(&self) -> Vec<Self::Obj>;
    /// `None` when the hom-set is too large to enumerate.
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Option<Vec<Self::Mor>>;

    fn show_obj(&self, a: &Self::Obj) -> String;
    fn show_mor(&self, f: &Self::Mor) -> String;
    fn parse_obj(&self, s: &str) -> Option<Self::Obj>;
    fn parse_mor(&self, s: &str) -> Option<Self::Mor>;

    fn terminal(&self) -> Option<Self::Obj> {
        None
    }
    fn bang(&self, _a: &Self::Obj) -> Option<Self::Mor> {
        None
    }
    fn product(&self, _a: &Self::Obj, _b: &Self::Obj) -> Option<Self::Obj> {
        None
    }
    fn proj1(&self, _a: &Self::Obj, _b: &Self::Obj) -> Option<Self::Mor> {
        None
    }
    fn proj2(&self, _a: &Self::Obj, _b: &Self::Obj) -> Option<Self::Mor> {
        None
    }
    /// `⟨f, g⟩` for `f: D → A`, `g: D → B`.
    fn pair(&self, _f: &Self::Mor, _g: &Self::Mor) -> Option<Self::Mor> {
        None
    }

    fn times(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor> {
        let (a, b) = (self.dom(f), self.dom(g));
        let l = self.compose(f, &self.proj1(&a, &b)?)?;
        let r = self.compose(g, &self.proj2(&a, &b)?)?;
        self.pair(&l, &r)
    }
    fn delta(&self, a: &Self::Obj) -> Option<Self::Mor> {
        self.pair(&self.id(a), &self.id(a))
    }
    /// `A × B → B × A`.
    fn swap(&self, a: &Self::Obj, b: &Self::Obj) -> Option<Self::Mor> {
        self.pair(&self.proj2(a, b)?, &self.proj1(a, b)?)
    }
    /// `(A × B) × C → A × (B × C)`.
    fn assoc(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Option<Self::Mor> {
        let ab = self.product(a, b)?;
        let first = self.compose(&self.proj1(a, b)?, &self.proj1(&ab, c)?)?;
        let rest = self.times(&self.proj2(a, b)?, &self.id(c))?;
        self.pair(&first, &rest)
    }
    /// `A × (B × C) → (A × B) × C`.
    fn assoc_inv(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Option<Self::Mor> {
        let bc = self.product(b, c)?;
        let first = self.times(&self.id(a), &self.proj1(b, c)?)?;
        let last = self.compose(&self.proj2(b, c)?, &self.proj2(a, &bc)?)?;
        self.pair(&first, &last)
    }

    /// `A ⇒ B`, argument `A`, target `B`.
    fn exponential(&self, _a: &Self::Obj, _b: &Self::Obj) -> Option<Self::Obj> {
        None
    }
    /// `ev: (A ⇒ B) × A → B`.
    fn eval(&self, _a: &Self::Obj, _b: &Self::Obj) -> Option<Self::Mor> {
        None
    }
    /// `λg: C → (A ⇒ B)` for `g: C × A → B`.
    fn curry(&self, _c: &Self::Obj, _a: &Self::Obj, _g: &Self::Mor) -> Option<Self::Mor> {
        None
    }
    /// `λ⁻¹u: C × A → B` for `u: C → (A ⇒ B)`.
    fn uncurry(&self, a: &Self::Obj, b: &Self::Obj, u: &Self::Mor) -> Option<Self::Mor> {
        let ua = self.times(u, &self.id(a))?;
        self.compose(&self.eval(a, b)?, &ua)
    }

    /// Chosen equalizer `(E, e)` of a parallel pair.
    fn equalizer(&self, _f: &Self::Mor, _g: &Self::Mor) -> Option<(Self::Obj, Self::Mor)> {
        None
    }
    /// The unique `v` with `e ∘ v = h`.
    fn equalizer_mediate(&self, _f: &Self::Mor, _g: &Self::Mor, _h: &Self::Mor) -> Option<Self::Mor> {
        None
    }
    /// Chosen pullback `(P, p₁, p₂)` of a cospan.
    fn pullback(&self, _f1: &Self::Mor, _f2: &Self::Mor) -> Option<(Self::Obj, Self::Mor, Self::Mor)> {
        None
    }
    fn pullback_mediate(&self, _f1: &Self::Mor, _f2: &Self::Mor, _g1: &Self::Mor, _g2: &Self::Mor) -> Option<Self::Mor> {
        None
    }

    /// Composite of a right-to-left chain.
    fn chain(&self, ms: &[Self::Mor]) -> Option<Self::Mor> {
        let (last, rest) = ms.split_last()?;
        rest.iter().rev().try_fold(last.clone(), |acc, g| self.compose(g, &acc))
    }
}

/// A monad on a model, with an optional left strength `A × TB → T(A × B)`.
pub trait Monad<M: Model> {
    fn name(&self) -> String;
    fn t_obj(&self, m: &M, a: &M::Obj) -> Option<M::Obj>;
    fn t_mor(&self, m: &M, f: &M::Mor) -> Option<M::Mor>;
    fn eta(&self, m: &M, a: &M::Obj) -> Option<M::Mor>;
    fn mu(&self, m: &M, a: &M::Obj) -> Option<M::Mor>;
    fn lst(&self, _m: &M, _a: &M::Obj, _b: &M::Obj) -> Option<M::Mor> {
        None
    }
    /// `TA × B → T(A × B)`, the left strength conjugated by the symmetry.
    fn rst(&self, m: &M, a: &M::Obj, b: &M::Obj) -> Option<M::Mor> {
        let ta = self.t_obj(m, a)?;
        m.chain(&[self.t_mor(m, &m.swap(b, a)?)?, self.lst(m, b, a)?, m.swap(&ta, b)?])
    }
}

/// An explicit finite category with a chosen cartesian structure.
pub struct FinModel {
    pub cat: Arc<FinCategory>,
    pub structure: CartesianStructure,
    pullbacks: Mutex<HashMap<(MorId, MorId), Option<PullbackWitness>>>,
    equalizers: Mutex<HashMap<(MorId, MorId), Option<EqualizerWitness>>>,
}

impl FinModel {
    pub fn new(cat: Arc<FinCategory>, structure: CartesianStructure) -> Self {
        FinModel { cat, structure, pullbacks: Mutex::default(), equalizers: Mutex::default() }
    }

    pub fn pullback_witness(&self, f1: MorId, f2: MorId) -> Option<PullbackWitness> {
        if self.cat.cod(f1) != self.cat.cod(f2) {
            return None;
        }
        let mut cache = self.pullbacks.lock().expect("pullback cache");
        cache.entry((f1, f2)).or_insert_with(|| first_pullback(&self.cat, f1, f2)).clone()
    }

    pub fn equalizer_witness(&self, f: MorId, g: MorId) -> Option<EqualizerWitness> {
        let c = &self.cat;
        if c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g) {
            return None;
        }
        let mut cache = self.equalizers.lock().expect("equalizer cache");
        cache.entry((f, g)).or_insert_with(|| first_equalizer(c, f, g)).clone()
    }
}

impl Model for FinModel {
    type Obj = ObjId;
    type Mor = MorId;

    fn dom(&self, f: &MorId) -> ObjId {
        self.cat.dom(*f)
    }
    fn cod(&self, f: &MorId) -> ObjId {
        self.cat.cod(*f)
    }
    fn id(&self, a: &ObjId) -> MorId {
        self.cat.id(*a)
    }
    fn compose(&self, g: &MorId, f: &MorId) -> Option<MorId> {
        self.cat.compose(*g, *f)
    }
    fn objects(&self) -> Vec<ObjId> {
        self.cat.objects().collect()
    }
    fn hom(&self, a: &ObjId, b: &ObjId) -> Option<Vec<MorId>> {
        Some(self.cat.hom(*a, *b).to_vec())
    }
    fn show_obj(&self, a: &ObjId) -> String {
        self.cat.obj_name(*a).to_string()
    }
    fn show_mor(&self, f: &MorId) -> String {
        self.cat.mor_name(*f).to_string()
    }
    fn parse_obj(&self, s: &str) -> Option<ObjId> {
        self.cat.obj_by_name(s)
    }
    fn parse_mor(&self, s: &str) -> Option<MorId> {
        self.cat.mor_by_name(s)
    }

    fn terminal(&self) -> Option<ObjId> {
        self.structure.terminal.as_ref().map(|t| t.object)
    }
    fn bang(&self, a: &ObjId) -> Option<MorId> {
        self.structure.terminal.as_ref().map(|t| t.bang[a.idx()])
    }
    fn product(&self, a: &ObjId, b: &ObjId) -> Option<ObjId> {
        self.structure.product(*a, *b).map(|w| w.apex)
    }
    fn proj1(&self, a: &ObjId, b: &ObjId) -> Option<MorId> {
        self.structure.product(*a, *b).map(|w| w.pi1)
    }
    fn proj2(&self, a: &ObjId, b: &ObjId) -> Option<MorId> {
        self.structure.product(*a, *b).map(|w| w.pi2)
    }
    fn pair(&self, f: &MorId, g: &MorId) -> Option<MorId> {
        if self.cat.dom(*f) != self.cat.dom(*g) {
            return None;
        }
        self.structure.product(self.cat.cod(*f), self.cat.cod(*g))?.pair(*f, *g)
    }
    fn times(&self, f: &MorId, g: &MorId) -> Option<MorId> {
        self.structure.times(&self.cat, *f, *g)
    }

    fn exponential(&self, a: &ObjId, b: &ObjId) -> Option<ObjId> {
        self.structure.exponential(*a, *b).map(|w| w.object)
    }
    fn eval(&self, a: &ObjId, b: &ObjId) -> Option<MorId> {
        self.structure.exponential(*a, *b).map(|w| w.eval)
    }
    fn curry(&self, c: &ObjId, a: &ObjId, g: &MorId) -> Option<MorId> {
        let b = self.cat.cod(*g);
        self.structure.exponential(*a, b)?.lambda(*c, *g)
    }
    fn uncurry(&self, a: &ObjId, b: &ObjId, u: &MorId) -> Option<MorId> {
        self.structure.exponential(*a, *b)?.unlambda(*u)
    }

    fn equalizer(&self, f: &MorId, g: &MorId) -> Option<(ObjId, MorId)> {
        self.equalizer_witness(*f, *g).map(|w| (w.object, w.e))
    }
    fn equalizer_mediate(&self, f: &MorId, g: &MorId, h: &MorId) -> Option<MorId> {
        self.equalizer_witness(*f, *g)?.mediator.get(h).copied()
    }
    fn pullback(&self, f1: &MorId, f2: &MorId) -> Option<(ObjId, MorId, MorId)> {
        self.pullback_witness(*f1, *f2).map(|w| (w.apex, w.p1, w.p2))
    }
    fn pullback_mediate(&self, f1: &MorId, f2: &MorId, g1: &MorId, g2: &MorId) -> Option<MorId> {
        self.pullback_witness(*f1, *f2)?.mediate(*g1, *g2)
    }
}
