//! Classification of morphisms, objects, functors and categories, plus
//! naturality, adjunction and (op)cartesianity checks.
//!
//! Every predicate quantifies literally over the finite data.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{FinCategory, MorId, ObjId};
use crate::functor::{same_cat, FunctorData, NatTransData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismProfile {
    pub morphism: MorId,
    pub epi: bool,
    pub mono: bool,
    pub bimorphism: bool,
    pub retraction: bool,
    pub section: bool,
    pub iso: bool,
    pub endo: bool,
    pub auto: bool,
    pub inverse: Option<MorId>,
    /// distinct `g₁, g₂` with `g₁ ∘ f = g₂ ∘ f`
    pub epi_counterexample: Option<(MorId, MorId)>,
    /// distinct `g₁, g₂` with `f ∘ g₁ = f ∘ g₂`
    pub mono_counterexample: Option<(MorId, MorId)>,
}

pub fn classify_morphism(c: &FinCategory, f: MorId) -> MorphismProfile {
    let (x, y) = (c.dom(f), c.cod(f));
    let mut epi_counterexample = None;
    let mut seen: HashMap<MorId, MorId> = HashMap::new();
    for &g in c.out_of(y) {
        if let Some(&prev) = seen.get(&c.comp(g, f)) {
            epi_counterexample = Some((prev, g));
            break;
        }
        seen.insert(c.comp(g, f), g);
    }
    let mut mono_counterexample = None;
    seen.clear();
    for &g in c.incoming(x) {
        if let Some(&prev) = seen.get(&c.comp(f, g)) {
            mono_counterexample = Some((prev, g));
            break;
        }
        seen.insert(c.comp(f, g), g);
    }
    let back = c.hom(y, x);
    let retraction = back.iter().any(|&g| c.comp(f, g) == c.id(y));
    let section = back.iter().any(|&g| c.comp(g, f) == c.id(x));
    let inverse = back.iter().copied().find(|&g| c.comp(f, g) == c.id(y) && c.comp(g, f) == c.id(x));
    let (epi, mono) = (epi_counterexample.is_none(), mono_counterexample.is_none());
    let iso = inverse.is_some();
    let endo = x == y;
    MorphismProfile {
        morphism: f,
        epi,
        mono,
        bimorphism: epi && mono,
        retraction,
        section,
        iso,
        endo,
        auto: iso && endo,
        inverse,
        epi_counterexample,
        mono_counterexample,
    }
}

pub fn is_iso(c: &FinCategory, f: MorId) -> bool {
    c.hom(c.cod(f), c.dom(f)).iter().any(|&g| c.comp(f, g) == c.id(c.cod(f)) && c.comp(g, f) == c.id(c.dom(f)))
}

pub fn inverse(c: &FinCategory, f: MorId) -> Option<MorId> {
    c.hom(c.cod(f), c.dom(f)).iter().copied().find(|&g| c.comp(f, g) == c.id(c.cod(f)) && c.comp(g, f) == c.id(c.dom(f)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectProfile {
    pub object: ObjId,
    pub terminal: bool,
    pub initial: bool,
    pub strict_initial: bool,
    pub zero: bool,
    /// `!_B : B → A` for every `B`, when terminal
    pub to_terminal: Vec<MorId>,
    /// `!^B : A → B` for every `B`, when initial
    pub from_initial: Vec<MorId>,
}

pub fn is_terminal(c: &FinCategory, a: ObjId) -> bool {
    c.objects().all(|b| c.hom(b, a).len() == 1)
}

pub fn is_initial(c: &FinCategory, a: ObjId) -> bool {
    c.objects().all(|b| c.hom(a, b).len() == 1)
}

pub fn classify_object(c: &FinCategory, a: ObjId) -> ObjectProfile {
    let terminal = is_terminal(c, a);
    let initial = is_initial(c, a);
    let strict_initial = initial && c.incoming(a).iter().all(|&f| is_iso(c, f));
    ObjectProfile {
        object: a,
        terminal,
        initial,
        strict_initial,
        zero: terminal && initial,
        to_terminal: if terminal { c.objects().map(|b| c.hom(b, a)[0]).collect() } else { Vec::new() },
        from_initial: if initial { c.objects().map(|b| c.hom(a, b)[0]).collect() } else { Vec::new() },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorProfile {
    pub full: bool,
    pub faithful: bool,
    pub fully_faithful: bool,
    pub endofunctor: bool,
    /// object pair whose hom-set map is not surjective
    pub not_full_at: Option<(ObjId, ObjId)>,
    /// distinct parallel morphisms with equal images
    pub not_faithful_at: Option<(MorId, MorId)>,
}

pub fn functor_profile(f: &FunctorData) -> FunctorProfile {
    let (s, t) = (&f.source, &f.target);
    let mut not_full_at = None;
    let mut not_faithful_at = None;
    'outer: for a in s.objects() {
        for b in s.objects() {
            let mut images: HashMap<MorId, MorId> = HashMap::new();
            for &m in s.hom(a, b) {
                if let Some(&prev) = images.get(&f.mor(m)) {
                    if not_faithful_at.is_none() {
                        not_faithful_at = Some((prev, m));
                    }
                }
                images.insert(f.mor(m), m);
            }
            if not_full_at.is_none() && t.hom(f.obj(a), f.obj(b)).iter().any(|g| !images.contains_key(g)) {
                not_full_at = Some((a, b));
            }
            if not_full_at.is_some() && not_faithful_at.is_some() {
                break 'outer;
            }
        }
    }
    let (full, faithful) = (not_full_at.is_none(), not_faithful_at.is_none());
    FunctorProfile { full, faithful, fully_faithful: full && faithful, endofunctor: f.is_endofunctor(), not_full_at, not_faithful_at }
}

/// Parallel `u, v` are isomorphic when `ψ ∘ u = v ∘ φ` for isomorphisms `φ, ψ`
/// (isomorphic objects of the arrow category, endpoints fixed).
fn iso_related(c: &FinCategory, u: MorId, v: MorId, autos: &[Vec<MorId>]) -> bool {
    if u == v {
        return true;
    }
    let (x, y) = (c.dom(u), c.cod(u));
    autos[x.idx()].iter().any(|&phi| autos[y.idx()].iter().any(|&psi| c.comp(psi, u) == c.comp(v, phi)))
}

/// Functor laws checked strictly, or up to isomorphism when `up_to_iso`.
pub fn check_pseudo_functor(f: &FunctorData, up_to_iso: bool) -> bool {
    if f.check_typing().is_err() {
        return false;
    }
    let (s, t) = (&f.source, &f.target);
    let autos: Vec<Vec<MorId>> = t.objects().map(|a| t.hom(a, a).iter().copied().filter(|&m| is_iso(t, m)).collect()).collect();
    let same = |u: MorId, v: MorId| if up_to_iso { iso_related(t, u, v, &autos) } else { u == v };
    for a in s.objects() {
        if !same(f.mor(s.id(a)), t.id(f.obj(a))) {
            return false;
        }
    }
    for m in s.morphisms() {
        for &g in s.out_of(s.cod(m)) {
            if !same(f.mor(s.comp(g, m)), t.comp(f.mor(g), f.mor(m))) {
                return false;
            }
        }
    }
    true
}

/// Source morphisms whose naturality square fails.
pub fn naturality_failures(alpha: &NatTransData) -> Vec<MorId> {
    let (f, g) = (&alpha.source, &alpha.target);
    let (c, d) = (&f.source, &f.target);
    c.morphisms().filter(|&h| d.comp(alpha.at(c.cod(h)), f.mor(h)) != d.comp(g.mor(h), alpha.at(c.dom(h)))).collect()
}

pub fn check_natural(alpha: &NatTransData) -> bool {
    naturality_failures(alpha).is_empty()
}

pub fn is_natural_iso(alpha: &NatTransData) -> bool {
    check_natural(alpha) && alpha.components.iter().all(|&m| is_iso(&alpha.source.target, m))
}

/// `F ⊣ G` with `F: D → C`, `G: C → D`, `η: id_D ⇒ G F`, `ε: F G ⇒ id_C`.
#[derive(Clone, Debug)]
pub struct AdjunctionData {
    pub left: FunctorData,
    pub right: FunctorData,
    pub unit: NatTransData,
    pub counit: NatTransData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub holds: bool,
    pub shapes_ok: bool,
    pub unit_natural: bool,
    pub counit_natural: bool,
    /// objects `c` with `G ε_c ∘ η_{G c} ≠ id`
    pub right_triangle_failures: Vec<ObjId>,
    /// objects `d` with `ε_{F d} ∘ F η_d ≠ id`
    pub left_triangle_failures: Vec<ObjId>,
}

pub fn adjunction_report(adj: &AdjunctionData) -> AdjunctionReport {
    let (f, g) = (&adj.left, &adj.right);
    let (d, c) = (&f.source, &f.target);
    let shapes_ok = same_cat(&g.source, c)
        && same_cat(&g.target, d)
        && adj.unit.source == FunctorData::identity(d.clone())
        && adj.unit.target.obj_map == g.after(f).map(|h| h.obj_map).unwrap_or_default()
        && adj.unit.target.mor_map == g.after(f).map(|h| h.mor_map).unwrap_or_default()
        && adj.counit.target == FunctorData::identity(c.clone())
        && adj.counit.source.obj_map == f.after(g).map(|h| h.obj_map).unwrap_or_default()
        && adj.counit.source.mor_map == f.after(g).map(|h| h.mor_map).unwrap_or_default();
    if !shapes_ok {
        return AdjunctionReport {
            holds: false,
            shapes_ok,
            unit_natural: false,
            counit_natural: false,
            right_triangle_failures: Vec::new(),
            left_triangle_failures: Vec::new(),
        };
    }
    let unit_natural = check_natural(&adj.unit);
    let counit_natural = check_natural(&adj.counit);
    let right_triangle_failures: Vec<ObjId> = c.objects().filter(|&x| d.comp(g.mor(adj.counit.at(x)), adj.unit.at(g.obj(x))) != d.id(g.obj(x))).collect();
    let left_triangle_failures: Vec<ObjId> = d.objects().filter(|&y| c.comp(adj.counit.at(f.obj(y)), f.mor(adj.unit.at(y))) != c.id(f.obj(y))).collect();
    AdjunctionReport {
        holds: unit_natural && counit_natural && right_triangle_failures.is_empty() && left_triangle_failures.is_empty(),
        shapes_ok,
        unit_natural,
        counit_natural,
        right_triangle_failures,
        left_triangle_failures,
    }
}

/// Both triangle identities hold componentwise (and η, ε are natural).
pub fn check_adjunction(adj: &AdjunctionData) -> bool {
    adjunction_report(adj).holds
}

/// `k ↦ G k ∘ η_d` is a bijection `Hom(F d, c) → Hom(d, G c)` for all `d, c`.
pub fn check_hom_bijection(adj: &AdjunctionData) -> bool {
    let (f, g) = (&adj.left, &adj.right);
    let (d, c) = (&f.source, &f.target);
    for y in d.objects() {
        for x in c.objects() {
            let lhs = c.hom(f.obj(y), x);
            let rhs = d.hom(y, g.obj(x));
            if lhs.len() != rhs.len() {
                return false;
            }
            let mut images: Vec<MorId> = lhs.iter().map(|&k| d.comp(g.mor(k), adj.unit.at(y))).collect();
            images.sort();
            images.dedup();
            if images.len() != rhs.len() {
                return false;
            }
        }
    }
    true
}

/// Searches a right adjoint of `f: D → C` by finding, for each `c`, the least
/// couniversal arrow `ε_c : F d → c`.
pub fn find_right_adjoint(f: &FunctorData) -> Option<AdjunctionData> {
    let (d, c) = (f.source.clone(), f.target.clone());
    let mut g_obj = Vec::with_capacity(c.num_objects());
    let mut eps = Vec::with_capacity(c.num_objects());
    for x in c.objects() {
        let found = d.objects().find_map(|y| c.hom(f.obj(y), x).iter().copied().find(|&k| is_couniversal(f, y, x, k)).map(|k| (y, k)))?;
        g_obj.push(found.0);
        eps.push(found.1);
    }
    // G on morphisms: the unique l with ε_{x'} ∘ F l = m ∘ ε_x
    let mut g_mor = Vec::with_capacity(c.num_morphisms());
    for m in c.morphisms() {
        let (x, x2) = (c.dom(m), c.cod(m));
        let target = c.comp(m, eps[x.idx()]);
        let l = d.hom(g_obj[x.idx()], g_obj[x2.idx()]).iter().copied().find(|&l| c.comp(eps[x2.idx()], f.mor(l)) == target)?;
        g_mor.push(l);
    }
    let g = FunctorData::new(c.clone(), d.clone(), g_obj, g_mor).ok()?;
    let unit_comps: Vec<MorId> = d
        .objects()
        .map(|y| {
            let fy = f.obj(y);
            d.hom(y, g.obj(fy)).iter().copied().find(|&l| c.comp(eps[fy.idx()], f.mor(l)) == c.id(fy))
        })
        .collect::<Option<_>>()?;
    let gf = g.after(f).ok()?;
    let fg = f.after(&g).ok()?;
    let unit = NatTransData::new(FunctorData::identity(d.clone()), gf, unit_comps).ok()?;
    let counit = NatTransData::new(fg, FunctorData::identity(c.clone()), eps).ok()?;
    Some(AdjunctionData { left: f.clone(), right: g, unit, counit })
}

fn is_couniversal(f: &FunctorData, y: ObjId, x: ObjId, k: MorId) -> bool {
    let (d, c) = (&f.source, &f.target);
    d.objects().all(|y2| c.hom(f.obj(y2), x).iter().all(|&k2| d.hom(y2, y).iter().filter(|&&l| c.comp(k, f.mor(l)) == k2).count() == 1))
}

/// A tested `(Z, g, w)` whose mediator count is not exactly one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub z: ObjId,
    pub g: MorId,
    pub w: MorId,
    pub mediators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartesianityReport {
    pub morphism: MorId,
    pub base: MorId,
    pub over_u: bool,
    pub cartesian_over_u: bool,
    pub opcartesian_over_u: bool,
    pub cartesian: bool,
    pub opcartesian: bool,
    pub vertical: bool,
    pub tested: usize,
    pub cartesian_violations: Vec<Violation>,
    pub opcartesian_violations: Vec<Violation>,
}

/// For `f: X → Y` over `u: I → J`: every `g: Z → Y` and `w: U Z → I` with
/// `U g = u ∘ w` factor as `g = f ∘ h` for a unique `h` over `w`.
fn cartesian_violations(p: &FunctorData, f: MorId, u: MorId, stop_early: bool) -> (usize, Vec<Violation>) {
    let (e, b) = (&p.source, &p.target);
    let (x, y) = (e.dom(f), e.cod(f));
    let mut tested = 0;
    let mut out = Vec::new();
    for z in e.objects() {
        for &g in e.hom(z, y) {
            for &w in b.hom(p.obj(z), b.dom(u)) {
                if p.mor(g) != b.comp(u, w) {
                    continue;
                }
                tested += 1;
                let n = e.hom(z, x).iter().filter(|&&h| p.mor(h) == w && e.comp(f, h) == g).count();
                if n != 1 {
                    out.push(Violation { z, g, w, mediators: n });
                    if stop_early {
                        return (tested, out);
                    }
                }
            }
        }
    }
    (tested, out)
}

/// Dual: every `g: X → Z` and `w: J → U Z` with `U g = w ∘ u` factor as
/// `g = h ∘ f` for a unique `h` over `w`.
fn opcartesian_violations(p: &FunctorData, f: MorId, u: MorId, stop_early: bool) -> (usize, Vec<Violation>) {
    let (e, b) = (&p.source, &p.target);
    let (x, y) = (e.dom(f), e.cod(f));
    let mut tested = 0;
    let mut out = Vec::new();
    for z in e.objects() {
        for &g in e.hom(x, z) {
            for &w in b.hom(b.cod(u), p.obj(z)) {
                if p.mor(g) != b.comp(w, u) {
                    continue;
                }
                tested += 1;
                let n = e.hom(y, z).iter().filter(|&&h| p.mor(h) == w && e.comp(h, f) == g).count();
                if n != 1 {
                    out.push(Violation { z, g, w, mediators: n });
                    if stop_early {
                        return (tested, out);
                    }
                }
            }
        }
    }
    (tested, out)
}

pub fn is_cartesian(p: &FunctorData, f: MorId) -> bool {
    cartesian_violations(p, f, p.mor(f), true).1.is_empty()
}

pub fn is_opcartesian(p: &FunctorData, f: MorId) -> bool {
    opcartesian_violations(p, f, p.mor(f), true).1.is_empty()
}

pub fn is_vertical(p: &FunctorData, f: MorId) -> bool {
    p.mor(f) == p.target.id(p.obj(p.source.dom(f)))
}

pub fn cartesianity(p: &FunctorData, f: MorId, u: MorId) -> CartesianityReport {
    let over_u = p.mor(f) == u;
    let (tested, cv) = if over_u { cartesian_violations(p, f, u, false) } else { (0, Vec::new()) };
    let (_, ov) = if over_u { opcartesian_violations(p, f, u, false) } else { (0, Vec::new()) };
    let cartesian = if over_u { cv.is_empty() } else { is_cartesian(p, f) };
    let opcartesian = if over_u { ov.is_empty() } else { is_opcartesian(p, f) };
    CartesianityReport {
        morphism: f,
        base: u,
        over_u,
        cartesian_over_u: over_u && cv.is_empty(),
        opcartesian_over_u: over_u && ov.is_empty(),
        cartesian,
        opcartesian,
        vertical: is_vertical(p, f),
        tested,
        cartesian_violations: cv,
        opcartesian_violations: ov,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CategoryProfile {
    pub discrete: bool,
    pub preorder: bool,
    pub pointed: bool,
    pub well_pointed: bool,
    pub zero_object: Option<ObjId>,
    pub terminal: Option<ObjId>,
    /// unequal parallel pair not separated by any point
    pub unseparated: Option<(MorId, MorId)>,
}

pub fn category_profile(c: &FinCategory) -> CategoryProfile {
    let discrete = c.morphisms().all(|f| c.is_identity(f));
    let preorder = c.objects().all(|a| c.objects().all(|b| c.hom(a, b).len() <= 1));
    let zero_object = c.objects().find(|&a| is_terminal(c, a) && is_initial(c, a));
    let terminal = c.objects().find(|&a| is_terminal(c, a));
    let mut unseparated = None;
    if let Some(one) = terminal {
        'pairs: for a in c.objects() {
            for b in c.objects() {
                let hom = c.hom(a, b);
                for (i, &f1) in hom.iter().enumerate() {
                    for &f2 in &hom[i + 1..] {
                        if !c.hom(one, a).iter().any(|&p| c.comp(f1, p) != c.comp(f2, p)) {
                            unseparated = Some((f1, f2));
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    CategoryProfile {
        discrete,
        preorder,
        pointed: zero_object.is_some(),
        well_pointed: terminal.is_some() && unseparated.is_none(),
        zero_object,
        terminal,
        unseparated,
    }
}

/// Convenience: the identity adjunction `id ⊣ id`.
pub fn identity_adjunction(c: Arc<FinCategory>) -> AdjunctionData {
    let id = FunctorData::identity(c);
    let t = NatTransData::identity(id.clone());
    AdjunctionData { left: id.clone(), right: id, unit: t.clone(), counit: t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catspec::load_category;

    fn arrow() -> Arc<FinCategory> {
        Arc::new(load_category("object a\nobject b\nmorphism f : a -> b\n").unwrap())
    }

    fn c2() -> Arc<FinCategory> {
        Arc::new(load_category("object *\nidentity * = e\nmorphism s : * -> *\ncompose s . s = e\n").unwrap())
    }

    #[test]
    fn walking_arrow_f_is_bimorphism_not_iso() {
        let c = arrow();
        let p = classify_morphism(&c, c.mor_by_name("f").unwrap());
        assert!(p.epi && p.mono && p.bimorphism && !p.iso && !p.retraction && !p.section);
    }

    #[test]
    fn identities_are_automorphisms() {
        let c = c2();
        for f in c.morphisms() {
            let p = classify_morphism(&c, f);
            assert!(p.iso && p.auto && p.endo);
        }
        let s = c.mor_by_name("s").unwrap();
        assert_eq!(classify_morphism(&c, s).inverse, Some(s));
    }

    #[test]
    fn object_profiles() {
        let c = arrow();
        let a = classify_object(&c, c.obj_by_name("a").unwrap());
        let b = classify_object(&c, c.obj_by_name("b").unwrap());
        assert!(a.initial && !a.terminal && a.strict_initial);
        assert!(b.terminal && !b.initial);
        let one = load_category("object *\n").unwrap();
        assert!(classify_object(&one, ObjId(0)).zero);
    }

    #[test]
    fn pseudo_functor_on_group() {
        let c = c2();
        let s = c.mor_by_name("s").unwrap();
        let f = FunctorData::unchecked(c.clone(), c.clone(), vec![ObjId(0)], vec![s, s]);
        assert!(check_pseudo_functor(&f, true));
        assert!(!check_pseudo_functor(&f, false));
    }

    #[test]
    fn identity_adjunction_holds_and_perturbed_fails() {
        let adj = identity_adjunction(c2());
        assert!(check_adjunction(&adj));
        assert!(check_hom_bijection(&adj));
        let mut bad = adj.clone();
        let s = c2().mor_by_name("s").unwrap();
        bad.counit.components[0] = s;
        assert!(!check_adjunction(&bad));
    }

    #[test]
    fn category_profiles() {
        let one = load_category("object *\n").unwrap();
        let p = category_profile(&one);
        assert!(p.discrete && p.preorder && p.pointed && p.well_pointed);
        assert!(!category_profile(&c2()).preorder);
    }

    #[test]
    fn right_adjoint_of_identity_is_identity() {
        let c = arrow();
        let adj = find_right_adjoint(&FunctorData::identity(c.clone())).unwrap();
        assert_eq!(adj.right, FunctorData::identity(c));
        assert!(check_adjunction(&adj));
    }
}
