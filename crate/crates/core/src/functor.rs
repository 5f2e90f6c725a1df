//! Functors and natural transformations between finite categories.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::category::{FinCategory, MorId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum FunctorError {
    #[error("map sizes do not match the source category")]
    WrongArity,
    #[error("image of {mor} has the wrong domain or codomain")]
    DomCodMismatch { mor: String },
    #[error("identity of {obj} is not sent to an identity")]
    IdentityNotPreserved { obj: String },
    #[error("composite {g} . {f} is not preserved")]
    CompositionNotPreserved { g: String, f: String },
    #[error("functors do not share source and target")]
    ShapeMismatch,
    #[error("component at {obj} has the wrong type")]
    ComponentMismatch { obj: String },
    #[error("{name} is not mapped")]
    Unmapped { name: String },
    #[error("unknown name {name}")]
    UnknownName { name: String },
}

pub(crate) fn same_cat(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct FunctorData {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl PartialEq for FunctorData {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map && self.mor_map == other.mor_map && same_cat(&self.source, &other.source) && same_cat(&self.target, &other.target)
    }
}

impl FunctorData {
    /// Validated constructor: dom/cod, identities and composites are preserved strictly.
    pub fn new(source: Arc<FinCategory>, target: Arc<FinCategory>, obj_map: Vec<ObjId>, mor_map: Vec<MorId>) -> Result<Self, FunctorError> {
        let f = FunctorData { source, target, obj_map, mor_map };
        f.validate()?;
        Ok(f)
    }

    /// Constructor without the functor-law check; typing of the maps is still required
    /// by [`FunctorData::check_typing`] before any analysis uses them.
    pub fn unchecked(source: Arc<FinCategory>, target: Arc<FinCategory>, obj_map: Vec<ObjId>, mor_map: Vec<MorId>) -> Self {
        FunctorData { source, target, obj_map, mor_map }
    }

    pub fn check_typing(&self) -> Result<(), FunctorError> {
        let (s, t) = (&self.source, &self.target);
        if self.obj_map.len() != s.num_objects() || self.mor_map.len() != s.num_morphisms() {
            return Err(FunctorError::WrongArity);
        }
        if self.obj_map.iter().any(|o| o.idx() >= t.num_objects()) || self.mor_map.iter().any(|m| m.idx() >= t.num_morphisms()) {
            return Err(FunctorError::WrongArity);
        }
        for f in s.morphisms() {
            let g = self.mor(f);
            if t.dom(g) != self.obj(s.dom(f)) || t.cod(g) != self.obj(s.cod(f)) {
                return Err(FunctorError::DomCodMismatch { mor: s.mor_name(f).to_string() });
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), FunctorError> {
        self.check_typing()?;
        let (s, t) = (&self.source, &self.target);
        for a in s.objects() {
            if self.mor(s.id(a)) != t.id(self.obj(a)) {
                return Err(FunctorError::IdentityNotPreserved { obj: s.obj_name(a).to_string() });
            }
        }
        for f in s.morphisms() {
            for &g in s.out_of(s.cod(f)) {
                if self.mor(s.comp(g, f)) != t.comp(self.mor(g), self.mor(f)) {
                    return Err(FunctorError::CompositionNotPreserved { g: s.mor_name(g).to_string(), f: s.mor_name(f).to_string() });
                }
            }
        }
        Ok(())
    }

    pub fn obj(&self, a: ObjId) -> ObjId {
        self.obj_map[a.idx()]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.mor_map[f.idx()]
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let obj_map = c.objects().collect();
        let mor_map = c.morphisms().collect();
        FunctorData { source: c.clone(), target: c, obj_map, mor_map }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FunctorData) -> Result<FunctorData, FunctorError> {
        if !same_cat(&first.target, &self.source) {
            return Err(FunctorError::ShapeMismatch);
        }
        Ok(FunctorData {
            source: first.source.clone(),
            target: self.target.clone(),
            obj_map: first.obj_map.iter().map(|&a| self.obj(a)).collect(),
            mor_map: first.mor_map.iter().map(|&f| self.mor(f)).collect(),
        })
    }

    /// The functor constant at `b`.
    pub fn constant(source: Arc<FinCategory>, target: Arc<FinCategory>, b: ObjId) -> Self {
        let obj_map = vec![b; source.num_objects()];
        let mor_map = vec![target.id(b); source.num_morphisms()];
        FunctorData { source, target, obj_map, mor_map }
    }

    pub fn is_endofunctor(&self) -> bool {
        same_cat(&self.source, &self.target)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NatTransData {
    pub source: FunctorData,
    pub target: FunctorData,
    pub components: Vec<MorId>,
}

impl NatTransData {
    /// Checks shapes and component typing; naturality is checked by
    /// [`crate::analysis::check_natural`].
    pub fn new(source: FunctorData, target: FunctorData, components: Vec<MorId>) -> Result<Self, FunctorError> {
        if !same_cat(&source.source, &target.source) || !same_cat(&source.target, &target.target) {
            return Err(FunctorError::ShapeMismatch);
        }
        let c = &source.source;
        let d = &source.target;
        if components.len() != c.num_objects() {
            return Err(FunctorError::WrongArity);
        }
        for a in c.objects() {
            let m = components[a.idx()];
            if m.idx() >= d.num_morphisms() || d.dom(m) != source.obj(a) || d.cod(m) != target.obj(a) {
                return Err(FunctorError::ComponentMismatch { obj: c.obj_name(a).to_string() });
            }
        }
        Ok(NatTransData { source, target, components })
    }

    pub fn at(&self, a: ObjId) -> MorId {
        self.components[a.idx()]
    }

    pub fn identity(f: FunctorData) -> Self {
        let components = f.source.objects().map(|a| f.target.id(f.obj(a))).collect();
        NatTransData { source: f.clone(), target: f, components }
    }

    /// Whiskering `self · H` (precompose with a functor): components at `H a`.
    pub fn whisker_right(&self, h: &FunctorData) -> Result<NatTransData, FunctorError> {
        let source = self.source.after(h)?;
        let target = self.target.after(h)?;
        let components = h.source.objects().map(|a| self.at(h.obj(a))).collect();
        NatTransData::new(source, target, components)
    }

    /// Whiskering `K · self` (postcompose with a functor).
    pub fn whisker_left(&self, k: &FunctorData) -> Result<NatTransData, FunctorError> {
        let source = k.after(&self.source)?;
        let target = k.after(&self.target)?;
        let components = self.components.iter().map(|&m| k.mor(m)).collect();
        NatTransData::new(source, target, components)
    }

    /// Vertical composite `other ∘ self`.
    pub fn then(&self, other: &NatTransData) -> Result<NatTransData, FunctorError> {
        if self.target != other.source {
            return Err(FunctorError::ShapeMismatch);
        }
        let d = &self.source.target;
        let components = self.components.iter().zip(&other.components).map(|(&a, &b)| d.comp(b, a)).collect();
        NatTransData::new(self.source.clone(), other.target.clone(), components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catspec::load_category;

    #[test]
    fn identity_functor_validates_and_composes() {
        let c = Arc::new(load_category("object a\nobject b\nmorphism f : a -> b\n").unwrap());
        let id = FunctorData::identity(c.clone());
        id.validate().unwrap();
        assert_eq!(id.after(&id).unwrap(), id);
        let t = NatTransData::identity(id.clone());
        assert_eq!(t.then(&t).unwrap(), t);
    }

    #[test]
    fn collapsing_the_arrow_is_a_functor_but_swapping_is_not() {
        let c = Arc::new(load_category("object a\nobject b\nmorphism f : a -> b\n").unwrap());
        let one = Arc::new(load_category("object *\n").unwrap());
        let bang = FunctorData::constant(c.clone(), one.clone(), ObjId(0));
        bang.validate().unwrap();
        let a = c.obj_by_name("a").unwrap();
        let b = c.obj_by_name("b").unwrap();
        let f = c.mor_by_name("f").unwrap();
        let swapped = FunctorData::unchecked(c.clone(), c.clone(), vec![b, a], c.morphisms().map(|_| f).collect());
        assert!(swapped.validate().is_err());
    }
}
