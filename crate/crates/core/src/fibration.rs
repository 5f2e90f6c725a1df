//! Fibrations `U: E → B` between finite categories.
//!
//! Cartesian liftings are found by search and a cleavage picks the least one.
//! Fibres, reindexing and opreindexing functors, fibred structure, generic
//! objects and the faithful ⇔ preorder-fibres lemma are computed from the
//! definitions by quantification.
//!
//! Two properties are deliberately not decided: Beck–Chevalley conditions on
//! the product adjoints (the intended squares are not specified), and the
//! "exponent" property ("some functor has a fibred right adjoint"), which is
//! too loose to check. Both show up in [`FibrationProfile`] as fixed strings.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{check_adjunction, find_right_adjoint, inverse, is_cartesian, is_iso, is_opcartesian, is_terminal};
use crate::category::{CategoryError, FinCategory, MorId, ObjId, RawCategory};
use crate::construct::arrow_category;
use crate::functor::{FunctorData, FunctorError};
use crate::instances::FinSetInstance;
use crate::structures::{choose_cartesian_structure, has_all_pullbacks, CartesianStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("no cartesian lifting of {u} at {y}")]
    NotAFibration { u: String, y: String },
    #[error("no opcartesian lifting of {u} at {x}")]
    NotAnOpfibration { u: String, x: String },
    #[error("the cleavage has the wrong variance for this operation")]
    WrongVariance,
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

/// The least cartesian `f: X → Y` over `u`.
pub fn cartesian_lifting(p: &FunctorData, u: MorId, y: ObjId) -> Option<MorId> {
    p.source.incoming(y).iter().copied().find(|&f| p.mor(f) == u && is_cartesian(p, f))
}

/// The least opcartesian `f: X → Y` over `u`.
pub fn opcartesian_lifting(p: &FunctorData, u: MorId, x: ObjId) -> Option<MorId> {
    p.source.out_of(x).iter().copied().find(|&f| p.mor(f) == u && is_opcartesian(p, f))
}

/// First `(u, Y)` with `u: I → U Y` and no cartesian lifting.
pub fn missing_lifting(p: &FunctorData) -> Option<(MorId, ObjId)> {
    p.source.objects().find_map(|y| p.target.incoming(p.obj(y)).iter().find(|&&u| cartesian_lifting(p, u, y).is_none()).map(|&u| (u, y)))
}

/// First `(u, X)` with `u: U X → J` and no opcartesian lifting.
pub fn missing_oplifting(p: &FunctorData) -> Option<(MorId, ObjId)> {
    p.source.objects().find_map(|x| p.target.out_of(p.obj(x)).iter().find(|&&u| opcartesian_lifting(p, u, x).is_none()).map(|&u| (u, x)))
}

pub fn is_fibration(p: &FunctorData) -> bool {
    missing_lifting(p).is_none()
}

pub fn is_opfibration(p: &FunctorData) -> bool {
    missing_oplifting(p).is_none()
}

pub fn is_bifibration(p: &FunctorData) -> bool {
    is_fibration(p) && is_opfibration(p)
}

/// The objects over `over` and the morphisms over its identity.
#[derive(Clone, Debug)]
pub struct FibreCategory {
    pub over: ObjId,
    pub cat: Arc<FinCategory>,
    /// fibre object -> total object
    pub objects: Vec<ObjId>,
    /// fibre morphism -> total morphism
    pub morphisms: Vec<MorId>,
    obj_lookup: HashMap<ObjId, ObjId>,
    mor_lookup: HashMap<MorId, MorId>,
}

impl FibreCategory {
    pub fn object_of(&self, x: ObjId) -> Option<ObjId> {
        self.obj_lookup.get(&x).copied()
    }

    pub fn morphism_of(&self, f: MorId) -> Option<MorId> {
        self.mor_lookup.get(&f).copied()
    }

    /// At most one morphism between any two objects.
    pub fn is_preorder(&self) -> bool {
        self.cat.objects().all(|a| self.cat.objects().all(|b| self.cat.hom(a, b).len() <= 1))
    }
}

pub fn fibre(p: &FunctorData, x: ObjId) -> Result<FibreCategory, FibrationError> {
    let e = &p.source;
    let id = p.target.id(x);
    let objs: Vec<ObjId> = e.objects().filter(|&y| p.obj(y) == x).collect();
    let pos: HashMap<ObjId, usize> = objs.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let mors: Vec<MorId> = e.morphisms().filter(|&f| p.mor(f) == id && pos.contains_key(&e.dom(f))).collect();
    let mpos: HashMap<MorId, usize> = mors.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let raw = RawCategory {
        objects: objs.iter().map(|&y| e.obj_name(y).to_string()).collect(),
        morphisms: mors.iter().map(|&f| (e.mor_name(f).to_string(), pos[&e.dom(f)], pos[&e.cod(f)])).collect(),
        identity: objs.iter().map(|&y| mpos[&e.id(y)]).collect(),
    };
    let assembled = FinCategory::assemble(raw, |g, f| mpos.get(&e.comp(mors[g], mors[f])).copied())?;
    let mut objects = vec![ObjId(0); objs.len()];
    for (i, &y) in objs.iter().enumerate() {
        objects[assembled.obj_map[i].idx()] = y;
    }
    let mut morphisms = vec![MorId(0); mors.len()];
    for (i, &f) in mors.iter().enumerate() {
        morphisms[assembled.mor_map[i].idx()] = f;
    }
    let obj_lookup = objects.iter().enumerate().map(|(i, &y)| (y, ObjId(i as u32))).collect();
    let mor_lookup = morphisms.iter().enumerate().map(|(i, &f)| (f, MorId(i as u32))).collect();
    Ok(FibreCategory { over: x, cat: Arc::new(assembled.category), objects, morphisms, obj_lookup, mor_lookup })
}

/// A choice of (op)cartesian liftings, the fibres they act on and the two
/// split equations.
#[derive(Clone, Debug)]
pub struct Cleavage {
    pub functor: FunctorData,
    /// opcartesian liftings `(u, X) ↦ u_§^X` instead of cartesian ones
    pub op: bool,
    /// `(u, Y) ↦ u^§_Y`, or `(u, X) ↦ u_§^X` when `op`
    pub lifts: BTreeMap<(MorId, ObjId), MorId>,
    /// per base object
    pub fibres: Vec<Arc<FibreCategory>>,
    /// `id* = id`
    pub split_identity: bool,
    /// `(v ∘ u)* = u* ∘ v*`
    pub split_composition: bool,
}

impl Cleavage {
    pub fn lift(&self, u: MorId, y: ObjId) -> MorId {
        self.lifts[&(u, y)]
    }

    pub fn split(&self) -> bool {
        self.split_identity && self.split_composition
    }

    /// Reindexing (or opreindexing, when `op`) along `u`.
    pub fn along(&self, u: MorId) -> Result<FunctorData, FibrationError> {
        if self.op {
            opreindex(self, u)
        } else {
            reindex(self, u)
        }
    }
}

fn cleave(p: &FunctorData, op: bool) -> Result<Cleavage, FibrationError> {
    let (e, b) = (&p.source, &p.target);
    let mut lifts = BTreeMap::new();
    for y in e.objects() {
        let us = if op { b.out_of(p.obj(y)) } else { b.incoming(p.obj(y)) };
        for &u in us {
            let f = if op { opcartesian_lifting(p, u, y) } else { cartesian_lifting(p, u, y) };
            let f = f.ok_or_else(|| {
                let (u, y) = (b.mor_name(u).to_string(), e.obj_name(y).to_string());
                if op {
                    FibrationError::NotAnOpfibration { u, x: y }
                } else {
                    FibrationError::NotAFibration { u, y }
                }
            })?;
            lifts.insert((u, y), f);
        }
    }
    let fibres = b.objects().map(|x| fibre(p, x).map(Arc::new)).collect::<Result<Vec<_>, _>>()?;
    let mut cl = Cleavage { functor: p.clone(), op, lifts, fibres, split_identity: false, split_composition: false };
    cl.split_identity = b
        .objects()
        .map(|x| cl.along(b.id(x)).map(|r| r == FunctorData::identity(cl.fibres[x.idx()].cat.clone())))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|ok| ok);
    let mut composition = true;
    for u in b.morphisms() {
        let ru = cl.along(u)?;
        for &v in b.out_of(b.cod(u)) {
            let rv = cl.along(v)?;
            let composite = cl.along(b.comp(v, u))?;
            // (v u)* = u* v*  or  (v u)_! = v_! u_!
            let expected = if op { rv.after(&ru)? } else { ru.after(&rv)? };
            composition &= composite.obj_map == expected.obj_map && composite.mor_map == expected.mor_map;
        }
    }
    cl.split_composition = composition;
    Ok(cl)
}

/// Least cartesian liftings, with the split equations evaluated.
pub fn make_cleavage(p: &FunctorData) -> Result<Cleavage, FibrationError> {
    cleave(p, false)
}

/// Least opcartesian liftings.
pub fn make_opcleavage(p: &FunctorData) -> Result<Cleavage, FibrationError> {
    cleave(p, true)
}

/// `u*: E_J → E_I` for `u: I → J`. On morphisms, `u* k` is the vertical map
/// given by cartesianity of `u^§_{P'}` along `k ∘ u^§_P`.
pub fn reindex(cl: &Cleavage, u: MorId) -> Result<FunctorData, FibrationError> {
    if cl.op {
        return Err(FibrationError::WrongVariance);
    }
    let (p, e, b) = (&cl.functor, &cl.functor.source, &cl.functor.target);
    let (src, tgt) = (&cl.fibres[b.cod(u).idx()], &cl.fibres[b.dom(u).idx()]);
    let vertical = b.id(b.dom(u));
    let obj_map: Vec<ObjId> = src.objects.iter().map(|&y| tgt.object_of(e.dom(cl.lift(u, y))).expect("lifting lands in the fibre")).collect();
    let mut mor_map = Vec::with_capacity(src.morphisms.len());
    for &k in &src.morphisms {
        let (l, l2) = (cl.lift(u, e.dom(k)), cl.lift(u, e.cod(k)));
        let target = e.comp(k, l);
        let h = e.hom(e.dom(l), e.dom(l2)).iter().copied().find(|&h| p.mor(h) == vertical && e.comp(l2, h) == target).expect("cartesian factorization");
        mor_map.push(tgt.morphism_of(h).expect("vertical"));
    }
    Ok(FunctorData::new(src.cat.clone(), tgt.cat.clone(), obj_map, mor_map)?)
}

/// `u_!: E_I → E_J` for `u: I → J`, dually through opcartesian liftings.
pub fn opreindex(cl: &Cleavage, u: MorId) -> Result<FunctorData, FibrationError> {
    if !cl.op {
        return Err(FibrationError::WrongVariance);
    }
    let (p, e, b) = (&cl.functor, &cl.functor.source, &cl.functor.target);
    let (src, tgt) = (&cl.fibres[b.dom(u).idx()], &cl.fibres[b.cod(u).idx()]);
    let vertical = b.id(b.cod(u));
    let obj_map: Vec<ObjId> = src.objects.iter().map(|&x| tgt.object_of(e.cod(cl.lift(u, x))).expect("lifting lands in the fibre")).collect();
    let mut mor_map = Vec::with_capacity(src.morphisms.len());
    for &k in &src.morphisms {
        let (l, l2) = (cl.lift(u, e.dom(k)), cl.lift(u, e.cod(k)));
        let target = e.comp(l2, k);
        let h = e.hom(e.cod(l), e.cod(l2)).iter().copied().find(|&h| p.mor(h) == vertical && e.comp(h, l) == target).expect("opcartesian factorization");
        mor_map.push(tgt.morphism_of(h).expect("vertical"));
    }
    Ok(FunctorData::new(src.cat.clone(), tgt.cat.clone(), obj_map, mor_map)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibreSummary {
    pub over: String,
    pub objects: usize,
    pub morphisms: usize,
    pub terminal: bool,
    pub products: bool,
    pub ccc: bool,
    pub preorder: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibredStructure {
    pub fibred_terminal: bool,
    pub fibred_product: bool,
    pub fibred_exponent: bool,
    pub fibres: Vec<FibreSummary>,
}

fn all_products(c: &FinCategory, s: &CartesianStructure) -> bool {
    s.products.len() == c.num_objects() * c.num_objects()
}

/// Per-fibre structure and its preservation by every reindexing functor,
/// through the canonical comparison maps.
pub fn fibred_structure(cl: &Cleavage) -> Result<FibredStructure, FibrationError> {
    if cl.op {
        return Err(FibrationError::WrongVariance);
    }
    let b = &cl.functor.target;
    let structures: Vec<CartesianStructure> = cl.fibres.iter().map(|f| choose_cartesian_structure(&f.cat)).collect();
    let fibres: Vec<FibreSummary> = cl
        .fibres
        .iter()
        .zip(&structures)
        .map(|(f, s)| FibreSummary {
            over: b.obj_name(f.over).to_string(),
            objects: f.cat.num_objects(),
            morphisms: f.cat.num_morphisms(),
            terminal: s.terminal.is_some(),
            products: all_products(&f.cat, s),
            ccc: s.is_ccc,
            preorder: f.is_preorder(),
        })
        .collect();
    let mut terminal = fibres.iter().all(|f| f.terminal);
    let mut product = fibres.iter().all(|f| f.products);
    let mut exponent = fibres.iter().all(|f| f.ccc);
    for u in b.morphisms() {
        if !(terminal || product || exponent) {
            break;
        }
        let r = reindex(cl, u)?;
        let (sj, si) = (&structures[b.cod(u).idx()], &structures[b.dom(u).idx()]);
        let fi = &cl.fibres[b.dom(u).idx()].cat;
        if terminal {
            terminal = sj.terminal.as_ref().is_some_and(|t| is_terminal(fi, r.obj(t.object)));
        }
        if product || exponent {
            // u*(A × B) → u*A × u*B must be invertible
            let comparison = |a: ObjId, c: ObjId| -> Option<MorId> {
                let w = sj.product(a, c)?;
                let w2 = si.product(r.obj(a), r.obj(c))?;
                w2.pair(r.mor(w.pi1), r.mor(w.pi2)).filter(|&k| is_iso(fi, k))
            };
            if product {
                product = sj.products.keys().all(|&(a, c)| comparison(a, c).is_some());
            }
            if exponent {
                exponent = sj.exponentials.values().all(|x| {
                    let Some(k) = comparison(x.object, x.arg).and_then(|k| inverse(fi, k)) else { return false };
                    let Some(x2) = si.exponential(r.obj(x.arg), r.obj(x.target)) else { return false };
                    let g = fi.comp(r.mor(x.eval), k);
                    x2.lambda(r.obj(x.object), g).is_some_and(|phi| is_iso(fi, phi))
                });
            }
        }
    }
    Ok(FibredStructure { fibred_terminal: terminal, fibred_product: product, fibred_exponent: exponent, fibres })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericObjectReport {
    pub object: String,
    /// `U X`
    pub omega: String,
    /// every `Y` has a cartesian map to `X`
    pub weak_generic: bool,
    /// ... over exactly one base morphism
    pub generic: bool,
    /// every `Y` has exactly one map to `X`, and it is cartesian
    pub strong_generic: bool,
    /// `θ_I : Hom(I, Ω) ≅ Obj(E_I)` natural in `I`; `None` unless split
    pub split_generic: Option<bool>,
    #[serde(skip)]
    pub id: ObjId,
}

/// The generic-object flags of every object of the total category.
pub fn generic_objects(p: &FunctorData, cl: Option<&Cleavage>) -> Vec<GenericObjectReport> {
    let (e, b) = (&p.source, &p.target);
    let split = cl.filter(|c| !c.op && c.split());
    e.objects()
        .map(|x| {
            let mut weak = true;
            let mut generic = true;
            let mut strong = true;
            for y in e.objects() {
                let cart: Vec<MorId> = e.hom(y, x).iter().copied().filter(|&f| is_cartesian(p, f)).collect();
                let mut over: Vec<MorId> = cart.iter().map(|&f| p.mor(f)).collect();
                over.sort();
                over.dedup();
                weak &= !cart.is_empty();
                generic &= over.len() == 1;
                strong &= e.hom(y, x).len() == 1 && cart.len() == 1;
            }
            let split_generic = split.map(|cl| {
                let omega = p.obj(x);
                b.objects().all(|i| {
                    let fibre = &cl.fibres[i.idx()];
                    let mut image: Vec<ObjId> = b.hom(i, omega).iter().map(|&u| e.dom(cl.lift(u, x))).collect();
                    let n = image.len();
                    image.sort();
                    image.dedup();
                    let bijective = image.len() == n && n == fibre.objects.len();
                    // θ_J(u ∘ v) = v*(θ_I u)
                    let natural = b.hom(i, omega).iter().all(|&u| {
                        let theta = e.dom(cl.lift(u, x));
                        b.incoming(i).iter().all(|&v| e.dom(cl.lift(b.comp(u, v), x)) == e.dom(cl.lift(v, theta)))
                    });
                    bijective && natural
                })
            });
            GenericObjectReport {
                object: e.obj_name(x).to_string(),
                omega: b.obj_name(p.obj(x)).to_string(),
                weak_generic: weak,
                generic,
                strong_generic: strong,
                split_generic,
                id: x,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulPreorder {
    pub faithful: bool,
    /// every fibre is a preorder
    pub partial_order: bool,
    pub agree: bool,
    /// every `g: P → Q` is `(U g)^§_Q ∘ v` for a vertical `v`
    pub factorizations: bool,
}

/// Both sides of "faithful iff every fibre is a preorder", computed apart.
pub fn check_faithful_preorder_lemma(cl: &Cleavage) -> Result<FaithfulPreorder, FibrationError> {
    if cl.op {
        return Err(FibrationError::WrongVariance);
    }
    let (p, e) = (&cl.functor, &cl.functor.source);
    let faithful = e.objects().all(|a| {
        e.objects().all(|c| {
            let mut images: Vec<MorId> = e.hom(a, c).iter().map(|&f| p.mor(f)).collect();
            let n = images.len();
            images.sort();
            images.dedup();
            images.len() == n
        })
    });
    let partial_order = cl.fibres.iter().all(|f| f.is_preorder());
    let factorizations = e.morphisms().all(|g| {
        let lift = cl.lift(p.mor(g), e.cod(g));
        let vertical = p.target.id(p.obj(e.dom(g)));
        e.hom(e.dom(g), e.dom(lift)).iter().any(|&v| p.mor(v) == vertical && e.comp(lift, v) == g)
    });
    Ok(FaithfulPreorder { faithful, partial_order, agree: faithful == partial_order, factorizations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationProducts {
    /// every `u*` has a right adjoint; `None` when the base lacks pullbacks
    pub product_adjoints: Option<bool>,
    /// reindexing along product projections has right adjoints; `None`
    /// when the base lacks binary products
    pub simple_product_adjoints: Option<bool>,
    /// ... along projections `I × Ω → I`; `None` without products or `Ω`
    pub simple_omega_product: Option<bool>,
    pub beck_chevalley: &'static str,
}

fn has_right_adjoint(cl: &Cleavage, u: MorId) -> Result<bool, FibrationError> {
    Ok(find_right_adjoint(&reindex(cl, u)?).is_some_and(|adj| check_adjunction(&adj)))
}

pub fn fibration_products(cl: &Cleavage, omega: Option<ObjId>) -> Result<FibrationProducts, FibrationError> {
    let b = &cl.functor.target;
    let product_adjoints = if has_all_pullbacks(b) {
        let mut all = true;
        for u in b.morphisms() {
            if !has_right_adjoint(cl, u)? {
                all = false;
                break;
            }
        }
        Some(all)
    } else {
        None
    };
    let s = choose_cartesian_structure(b);
    let (simple, simple_omega) = if all_products(b, &s) {
        let mut simple = true;
        for w in s.products.values() {
            if !has_right_adjoint(cl, w.pi1)? {
                simple = false;
                break;
            }
        }
        let omega = match omega {
            Some(o) => {
                let mut ok = true;
                for i in b.objects() {
                    if !has_right_adjoint(cl, s.products[&(i, o)].pi1)? {
                        ok = false;
                        break;
                    }
                }
                Some(ok)
            }
            None => None,
        };
        (Some(simple), omega)
    } else {
        (None, None)
    };
    Ok(FibrationProducts { product_adjoints, simple_product_adjoints: simple, simple_omega_product: simple_omega, beck_chevalley: "unchecked" })
}

/// Every flag of a functor viewed as a fibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationProfile {
    pub fibration: bool,
    pub opfibration: bool,
    pub bifibration: bool,
    /// first `(u, Y)` without a cartesian lifting
    pub missing_lifting: Option<(String, String)>,
    pub cloven: bool,
    pub split: Option<bool>,
    pub faithful: bool,
    pub partial_order: bool,
    pub lemma_agrees: Option<bool>,
    pub fibred_terminal: Option<bool>,
    pub fibred_product: Option<bool>,
    pub fibred_exponent: Option<bool>,
    pub generic_objects: Vec<GenericObjectReport>,
    /// has a generic object, fibred finite products and a base with finite products
    pub polymorphic: Option<bool>,
    pub products: Option<FibrationProducts>,
    pub exponent: &'static str,
}

pub fn profile(p: &FunctorData) -> Result<FibrationProfile, FibrationError> {
    let missing = missing_lifting(p);
    let fibration = missing.is_none();
    let opfibration = is_opfibration(p);
    let fibres = p.target.objects().map(|x| fibre(p, x)).collect::<Result<Vec<_>, _>>()?;
    let partial_order = fibres.iter().all(FibreCategory::is_preorder);
    let faithful = p.source.objects().all(|a| {
        p.source.objects().all(|c| {
            let hom = p.source.hom(a, c);
            let mut images: Vec<MorId> = hom.iter().map(|&f| p.mor(f)).collect();
            images.sort();
            images.dedup();
            images.len() == hom.len()
        })
    });
    let cl = if fibration { Some(make_cleavage(p)?) } else { None };
    let generic = generic_objects(p, cl.as_ref());
    let mut prof = FibrationProfile {
        fibration,
        opfibration,
        bifibration: fibration && opfibration,
        missing_lifting: missing.map(|(u, y)| (p.target.mor_name(u).to_string(), p.source.obj_name(y).to_string())),
        cloven: fibration,
        split: None,
        faithful,
        partial_order,
        lemma_agrees: None,
        fibred_terminal: None,
        fibred_product: None,
        fibred_exponent: None,
        generic_objects: generic,
        polymorphic: None,
        products: None,
        exponent: "unsupported",
    };
    if let Some(cl) = &cl {
        let fs = fibred_structure(cl)?;
        let omega = prof.generic_objects.iter().find(|g| g.generic).map(|g| p.obj(g.id));
        prof.split = Some(cl.split());
        prof.lemma_agrees = Some(check_faithful_preorder_lemma(cl)?.agree);
        prof.fibred_terminal = Some(fs.fibred_terminal);
        prof.fibred_product = Some(fs.fibred_product);
        prof.fibred_exponent = Some(fs.fibred_exponent);
        let base_products = choose_cartesian_structure(&p.target).has_finite_products;
        prof.polymorphic = Some(omega.is_some() && fs.fibred_terminal && fs.fibred_product && base_products);
        prof.products = Some(fibration_products(cl, omega)?);
    }
    Ok(prof)
}

/// `cod: C^→ → C`.
pub fn codomain_fibration(base: &Arc<FinCategory>) -> Result<FunctorData, FibrationError> {
    Ok(arrow_category(base)?.codomain_functor())
}

/// The unique functor to the one-object category.
pub fn to_point(e: Arc<FinCategory>) -> Result<FunctorData, FibrationError> {
    let one = FinCategory::assemble(RawCategory { objects: vec!["*".into()], morphisms: vec![("id".into(), 0, 0)], identity: vec![0] }, |_, _| Some(0))?;
    let n = e.num_objects();
    let m = e.num_morphisms();
    Ok(FunctorData::new(e, Arc::new(one.category), vec![ObjId(0); n], vec![MorId(0); m])?)
}

/// Predicates on finite sets: objects `(n, S ⊆ n)`, morphisms the maps with
/// `f(S) ⊆ T`, projected to `n`.
pub fn predicate_fibration(inst: &FinSetInstance) -> Result<FunctorData, FibrationError> {
    let c = &inst.cat;
    let mut objs: Vec<(ObjId, u32)> = Vec::new();
    for a in c.objects() {
        for s in 0..(1u32 << inst.size(a)) {
            objs.push((a, s));
        }
    }
    let name = |(a, s): (ObjId, u32)| {
        let bits: String = (0..inst.size(a)).map(|i| if s >> i & 1 == 1 { '1' } else { '0' }).collect();
        format!("{}:{bits}", c.obj_name(a))
    };
    let mut mors: Vec<(MorId, usize, usize)> = Vec::new();
    for (i, &(a, s)) in objs.iter().enumerate() {
        for (j, &(b, t)) in objs.iter().enumerate() {
            for &f in c.hom(a, b) {
                let tab = inst.table(f);
                if (0..inst.size(a)).all(|x| s >> x & 1 == 0 || t >> tab[x as usize] & 1 == 1) {
                    mors.push((f, i, j));
                }
            }
        }
    }
    let index: HashMap<(MorId, usize, usize), usize> = mors.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let raw = RawCategory {
        objects: objs.iter().map(|&o| name(o)).collect(),
        morphisms: mors.iter().map(|&(f, i, j)| (format!("{}>{}:{}", name(objs[i]), name(objs[j]), c.mor_name(f)), i, j)).collect(),
        identity: objs.iter().enumerate().map(|(i, &(a, _))| index[&(c.id(a), i, i)]).collect(),
    };
    let assembled = FinCategory::assemble(raw, |g, f| {
        let ((fg, _, tg), (ff, sf, _)) = (mors[g], mors[f]);
        index.get(&(c.comp(fg, ff), sf, tg)).copied()
    })?;
    let mut obj_map = vec![ObjId(0); objs.len()];
    for (i, &(a, _)) in objs.iter().enumerate() {
        obj_map[assembled.obj_map[i].idx()] = a;
    }
    let mut mor_map = vec![MorId(0); mors.len()];
    for (k, &(f, _, _)) in mors.iter().enumerate() {
        mor_map[assembled.mor_map[k].idx()] = f;
    }
    Ok(FunctorData::new(Arc::new(assembled.category), c.clone(), obj_map, mor_map)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::finset;
    use crate::instances::zoo::zoo_by_name;

    #[test]
    fn identity_is_a_split_fibration() {
        let c = zoo_by_name("walking_arrow").unwrap().category;
        let id = FunctorData::identity(c.clone());
        assert!(is_bifibration(&id));
        let cl = make_cleavage(&id).unwrap();
        assert!(cl.split());
        for x in c.objects() {
            assert_eq!(cl.fibres[x.idx()].cat.num_objects(), 1);
        }
        let lemma = check_faithful_preorder_lemma(&cl).unwrap();
        assert!(lemma.faithful && lemma.partial_order && lemma.agree && lemma.factorizations);
    }

    #[test]
    fn identity_on_one_has_a_strong_generic_object() {
        let c = zoo_by_name("one").unwrap().category;
        let id = FunctorData::identity(c);
        let cl = make_cleavage(&id).unwrap();
        let g = generic_objects(&id, Some(&cl));
        assert!(g[0].strong_generic && g[0].generic && g[0].weak_generic);
        assert_eq!(g[0].split_generic, Some(true));
    }

    #[test]
    fn disconnected_objects_over_a_point() {
        let e = zoo_by_name("discrete2").unwrap().category;
        let p = to_point(e).unwrap();
        assert!(is_fibration(&p));
        let f = fibre(&p, ObjId(0)).unwrap();
        assert_eq!(f.cat.num_objects(), 2);
    }

    #[test]
    fn empty_fibre_over_an_unreached_object() {
        let c = zoo_by_name("walking_arrow").unwrap().category;
        let one = zoo_by_name("one").unwrap().category;
        let p = FunctorData::constant(one, c.clone(), ObjId(1));
        let f = fibre(&p, ObjId(0)).unwrap();
        assert_eq!(f.cat.num_objects(), 0);
    }

    #[test]
    fn predicates_form_a_split_fibration_with_a_generic_object() {
        let inst = finset(2).unwrap();
        let p = predicate_fibration(&inst).unwrap();
        assert_eq!(p.source.num_objects(), 1 + 2 + 4);
        let cl = make_cleavage(&p).unwrap();
        assert!(cl.split());
        let g = generic_objects(&p, Some(&cl));
        let omega: Vec<_> = g.iter().filter(|r| r.generic).collect();
        // either singleton of 2 classifies predicates
        let names: Vec<&str> = omega.iter().map(|r| r.object.as_str()).collect();
        assert_eq!(names, ["2:01", "2:10"]);
        for r in &omega {
            assert_eq!(r.omega, "2");
            assert!(!r.strong_generic);
            assert_eq!(r.split_generic, Some(true));
        }
        for r in &g {
            assert!(!r.strong_generic || r.generic);
            assert!(!r.generic || r.weak_generic);
        }
        let lemma = check_faithful_preorder_lemma(&cl).unwrap();
        assert!(lemma.faithful && lemma.partial_order && lemma.factorizations);
    }
}
