//! Standard constructions over finite categories and functors.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{Assembled, CategoryError, FinCategory, MorId, ObjId, RawCategory};
use crate::functor::{same_cat, FunctorData, NatTransData};

/// Default cap on candidate functors for [`functor_category`].
pub const DEFAULT_FUNCTOR_BOUND: u128 = 1_000_000;

/// Same names, reversed arrows; an involution on canonical ids.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let raw = RawCategory {
        objects: c.objects().map(|a| c.obj_name(a).to_string()).collect(),
        morphisms: c.morphisms().map(|f| (c.mor_name(f).to_string(), c.cod(f).idx(), c.dom(f).idx())).collect(),
        identity: c.objects().map(|a| c.id(a).idx()).collect(),
    };
    FinCategory::assemble(raw, |g, f| c.compose(MorId(f as u32), MorId(g as u32)).map(|h| h.idx())).expect("opposite of a valid category is valid").category
}

/// Assembles `raw` and reorders per-index metadata into canonical order.
fn finish<O: Clone, M: Clone>(assembled: Assembled, obj_meta: Vec<O>, mor_meta: Vec<M>) -> (FinCategory, Vec<O>, Vec<M>) {
    let mut objs: Vec<Option<O>> = vec![None; obj_meta.len()];
    for (raw, meta) in obj_meta.into_iter().enumerate() {
        objs[assembled.obj_map[raw].idx()] = Some(meta);
    }
    let mut mors: Vec<Option<M>> = vec![None; mor_meta.len()];
    for (raw, meta) in mor_meta.into_iter().enumerate() {
        mors[assembled.mor_map[raw].idx()] = Some(meta);
    }
    (assembled.category, objs.into_iter().map(Option::unwrap).collect(), mors.into_iter().map(Option::unwrap).collect())
}

/// Commuting square `bottom ∘ src = tgt ∘ top` between arrows `src` and `tgt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Square {
    pub src: MorId,
    pub tgt: MorId,
    pub top: MorId,
    pub bottom: MorId,
}

#[derive(Clone, Debug)]
pub struct ArrowCategory {
    pub base: Arc<FinCategory>,
    pub cat: Arc<FinCategory>,
    /// arrow object -> morphism of the base
    pub objects: Vec<MorId>,
    pub squares: Vec<Square>,
    obj_lookup: HashMap<MorId, ObjId>,
    mor_lookup: HashMap<Square, MorId>,
}

impl ArrowCategory {
    pub fn object_of(&self, f: MorId) -> ObjId {
        self.obj_lookup[&f]
    }

    pub fn square_of(&self, sq: &Square) -> Option<MorId> {
        self.mor_lookup.get(sq).copied()
    }

    /// The codomain functor `arrow(C) → C`.
    pub fn codomain_functor(&self) -> FunctorData {
        let obj_map = self.objects.iter().map(|&f| self.base.cod(f)).collect();
        let mor_map = self.squares.iter().map(|s| s.bottom).collect();
        FunctorData::new(self.cat.clone(), self.base.clone(), obj_map, mor_map).expect("codomain functor is a functor")
    }

    /// The domain functor `arrow(C) → C`.
    pub fn domain_functor(&self) -> FunctorData {
        let obj_map = self.objects.iter().map(|&f| self.base.dom(f)).collect();
        let mor_map = self.squares.iter().map(|s| s.top).collect();
        FunctorData::new(self.cat.clone(), self.base.clone(), obj_map, mor_map).expect("domain functor is a functor")
    }
}

pub fn arrow_category(base: &Arc<FinCategory>) -> Result<ArrowCategory, CategoryError> {
    let c = base.as_ref();
    let objects: Vec<MorId> = c.morphisms().collect();
    let mut squares = Vec::new();
    for &f1 in &objects {
        for &f2 in &objects {
            for &top in c.hom(c.dom(f1), c.dom(f2)) {
                for &bottom in c.hom(c.cod(f1), c.cod(f2)) {
                    if c.comp(bottom, f1) == c.comp(f2, top) {
                        squares.push(Square { src: f1, tgt: f2, top, bottom });
                    }
                }
            }
        }
    }
    let sq_index: HashMap<Square, usize> = squares.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let raw = RawCategory {
        objects: objects.iter().map(|&f| c.mor_name(f).to_string()).collect(),
        morphisms: squares
            .iter()
            .map(|s| (format!("[{},{}]:{}>{}", c.mor_name(s.top), c.mor_name(s.bottom), c.mor_name(s.src), c.mor_name(s.tgt)), s.src.idx(), s.tgt.idx()))
            .collect(),
        identity: objects.iter().map(|&f| sq_index[&Square { src: f, tgt: f, top: c.id(c.dom(f)), bottom: c.id(c.cod(f)) }]).collect(),
    };
    let assembled = FinCategory::assemble(raw, |g, f| {
        let (sg, sf) = (&squares[g], &squares[f]);
        let s = Square { src: sf.src, tgt: sg.tgt, top: c.comp(sg.top, sf.top), bottom: c.comp(sg.bottom, sf.bottom) };
        sq_index.get(&s).copied()
    })?;
    let (cat, objects, squares) = finish(assembled, objects, squares);
    let obj_lookup = objects.iter().enumerate().map(|(i, &f)| (f, ObjId(i as u32))).collect();
    let mor_lookup = squares.iter().enumerate().map(|(i, s)| (*s, MorId(i as u32))).collect();
    Ok(ArrowCategory { base: base.clone(), cat: Arc::new(cat), objects, squares, obj_lookup, mor_lookup })
}

/// A slice `C/A` (or coslice `A/C`) with its tagging by base data.
#[derive(Clone, Debug)]
pub struct SliceCategory {
    pub base: Arc<FinCategory>,
    pub cat: Arc<FinCategory>,
    pub over: ObjId,
    pub coslice: bool,
    /// slice object -> its structure morphism `f_X`
    pub objects: Vec<MorId>,
    /// slice morphism -> underlying base morphism
    pub morphisms: Vec<MorId>,
    obj_lookup: HashMap<MorId, ObjId>,
    mor_lookup: HashMap<(MorId, ObjId, ObjId), MorId>,
}

impl SliceCategory {
    /// Slice object with structure morphism `f`.
    pub fn object_of(&self, f: MorId) -> Option<ObjId> {
        self.obj_lookup.get(&f).copied()
    }

    /// Slice morphism with underlying `h` between the given slice objects.
    pub fn morphism_of(&self, h: MorId, src: ObjId, tgt: ObjId) -> Option<MorId> {
        self.mor_lookup.get(&(h, src, tgt)).copied()
    }

    pub fn structure(&self, x: ObjId) -> MorId {
        self.objects[x.idx()]
    }

    /// The base object carrying a slice object.
    pub fn carrier(&self, x: ObjId) -> ObjId {
        let f = self.objects[x.idx()];
        if self.coslice {
            self.base.cod(f)
        } else {
            self.base.dom(f)
        }
    }

    pub fn underlying(&self, h: MorId) -> MorId {
        self.morphisms[h.idx()]
    }

    /// The forgetful functor to the base.
    pub fn forgetful(&self) -> FunctorData {
        let obj_map = self.cat.objects().map(|x| self.carrier(x)).collect();
        FunctorData::new(self.cat.clone(), self.base.clone(), obj_map, self.morphisms.clone()).expect("forgetful functor")
    }
}

fn slice_like(base: &Arc<FinCategory>, a: ObjId, coslice: bool) -> Result<SliceCategory, CategoryError> {
    let c = base.as_ref();
    if a.idx() >= c.num_objects() {
        return Err(CategoryError::UnknownObject(a.to_string()));
    }
    let objects: Vec<MorId> = if coslice { c.out_of(a).to_vec() } else { c.incoming(a).to_vec() };
    let carrier = |f: MorId| if coslice { c.cod(f) } else { c.dom(f) };
    let mut morphisms: Vec<(MorId, usize, usize)> = Vec::new();
    for (i, &fx) in objects.iter().enumerate() {
        for (j, &fy) in objects.iter().enumerate() {
            for &h in c.hom(carrier(fx), carrier(fy)) {
                let ok = if coslice { c.comp(h, fx) == fy } else { c.comp(fy, h) == fx };
                if ok {
                    morphisms.push((h, i, j));
                }
            }
        }
    }
    let index: HashMap<(MorId, usize, usize), usize> = morphisms.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let raw = RawCategory {
        objects: objects.iter().map(|&f| c.mor_name(f).to_string()).collect(),
        morphisms: morphisms.iter().map(|&(h, i, j)| (format!("{}:{}>{}", c.mor_name(h), c.mor_name(objects[i]), c.mor_name(objects[j])), i, j)).collect(),
        identity: objects.iter().enumerate().map(|(i, &f)| index[&(c.id(carrier(f)), i, i)]).collect(),
    };
    let assembled = FinCategory::assemble(raw, |g, f| {
        let (hg, _, tg) = morphisms[g];
        let (hf, sf, _) = morphisms[f];
        index.get(&(c.comp(hg, hf), sf, tg)).copied()
    })?;
    let obj_meta = objects.clone();
    let (cat, objects, raw_mors) = finish(assembled.clone(), obj_meta, morphisms.clone());
    let morphisms_base: Vec<MorId> = raw_mors.iter().map(|m| m.0).collect();
    let obj_lookup = objects.iter().enumerate().map(|(i, &f)| (f, ObjId(i as u32))).collect();
    let mor_lookup = raw_mors.iter().enumerate().map(|(k, &(h, i, j))| ((h, assembled.obj_map[i], assembled.obj_map[j]), MorId(k as u32))).collect();
    Ok(SliceCategory { base: base.clone(), cat: Arc::new(cat), over: a, coslice, objects, morphisms: morphisms_base, obj_lookup, mor_lookup })
}

pub fn slice_category(base: &Arc<FinCategory>, a: ObjId) -> Result<SliceCategory, CategoryError> {
    slice_like(base, a, false)
}

pub fn coslice_category(base: &Arc<FinCategory>, a: ObjId) -> Result<SliceCategory, CategoryError> {
    slice_like(base, a, true)
}

#[derive(Clone, Debug)]
pub struct ProductCategory {
    pub cat: Arc<FinCategory>,
    pub objects: Vec<(ObjId, ObjId)>,
    pub morphisms: Vec<(MorId, MorId)>,
    obj_lookup: HashMap<(ObjId, ObjId), ObjId>,
    mor_lookup: HashMap<(MorId, MorId), MorId>,
}

impl ProductCategory {
    pub fn object_of(&self, a: ObjId, b: ObjId) -> ObjId {
        self.obj_lookup[&(a, b)]
    }

    pub fn morphism_of(&self, f: MorId, g: MorId) -> MorId {
        self.mor_lookup[&(f, g)]
    }
}

pub fn product_category(c: &FinCategory, d: &FinCategory) -> Result<ProductCategory, CategoryError> {
    let objects: Vec<(ObjId, ObjId)> = c.objects().flat_map(|a| d.objects().map(move |b| (a, b))).collect();
    let morphisms: Vec<(MorId, MorId)> = c.morphisms().flat_map(|f| d.morphisms().map(move |g| (f, g))).collect();
    let oi: HashMap<(ObjId, ObjId), usize> = objects.iter().enumerate().map(|(i, o)| (*o, i)).collect();
    let mi: HashMap<(MorId, MorId), usize> = morphisms.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let raw = RawCategory {
        objects: objects.iter().map(|&(a, b)| format!("({},{})", c.obj_name(a), d.obj_name(b))).collect(),
        morphisms: morphisms
            .iter()
            .map(|&(f, g)| (format!("({},{})", c.mor_name(f), d.mor_name(g)), oi[&(c.dom(f), d.dom(g))], oi[&(c.cod(f), d.cod(g))]))
            .collect(),
        identity: objects.iter().map(|&(a, b)| mi[&(c.id(a), d.id(b))]).collect(),
    };
    let assembled = FinCategory::assemble(raw, |g, f| {
        let ((g1, g2), (f1, f2)) = (morphisms[g], morphisms[f]);
        Some(mi[&(c.comp(g1, f1), d.comp(g2, f2))])
    })?;
    let (cat, objects, morphisms) = finish(assembled, objects, morphisms);
    let obj_lookup = objects.iter().enumerate().map(|(i, o)| (*o, ObjId(i as u32))).collect();
    let mor_lookup = morphisms.iter().enumerate().map(|(i, m)| (*m, MorId(i as u32))).collect();
    Ok(ProductCategory { cat: Arc::new(cat), objects, morphisms, obj_lookup, mor_lookup })
}

/// Comma object `(a, b, f: G a → F b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CommaObject {
    pub a: ObjId,
    pub b: ObjId,
    pub f: MorId,
}

#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub cat: Arc<FinCategory>,
    pub objects: Vec<CommaObject>,
    /// (h in the source of G, k in the source of F)
    pub morphisms: Vec<(MorId, MorId)>,
}

/// `(G ↓ F)` for `G: 𝒜 → 𝒞` and `F: ℬ → 𝒞`.
pub fn comma_category(g: &FunctorData, f: &FunctorData) -> Result<CommaCategory, CategoryError> {
    if !same_cat(&g.target, &f.target) {
        return Err(CategoryError::UnknownObject("comma functors must share a target".into()));
    }
    let (ca, cb, cc) = (&g.source, &f.source, &g.target);
    let mut objects = Vec::new();
    for a in ca.objects() {
        for b in cb.objects() {
            for &m in cc.hom(g.obj(a), f.obj(b)) {
                objects.push(CommaObject { a, b, f: m });
            }
        }
    }
    let mut morphisms: Vec<(MorId, MorId, usize, usize)> = Vec::new();
    for (i, o1) in objects.iter().enumerate() {
        for (j, o2) in objects.iter().enumerate() {
            for &h in ca.hom(o1.a, o2.a) {
                for &k in cb.hom(o1.b, o2.b) {
                    if cc.comp(f.mor(k), o1.f) == cc.comp(o2.f, g.mor(h)) {
                        morphisms.push((h, k, i, j));
                    }
                }
            }
        }
    }
    let index: HashMap<(MorId, MorId, usize, usize), usize> = morphisms.iter().enumerate().map(|(n, m)| (*m, n)).collect();
    let oname = |o: &CommaObject| format!("({},{},{})", ca.obj_name(o.a), cb.obj_name(o.b), cc.mor_name(o.f));
    let raw = RawCategory {
        objects: objects.iter().map(oname).collect(),
        morphisms: morphisms
            .iter()
            .map(|&(h, k, i, j)| (format!("[{},{}]:{}>{}", ca.mor_name(h), cb.mor_name(k), oname(&objects[i]), oname(&objects[j])), i, j))
            .collect(),
        identity: objects.iter().enumerate().map(|(i, o)| index[&(ca.id(o.a), cb.id(o.b), i, i)]).collect(),
    };
    let assembled = FinCategory::assemble(raw, |x, y| {
        let (h2, k2, _, t) = morphisms[x];
        let (h1, k1, s, _) = morphisms[y];
        index.get(&(ca.comp(h2, h1), cb.comp(k2, k1), s, t)).copied()
    })?;
    let mors: Vec<(MorId, MorId)> = morphisms.iter().map(|m| (m.0, m.1)).collect();
    let (cat, objects, morphisms) = finish(assembled, objects, mors);
    Ok(CommaCategory { cat: Arc::new(cat), objects, morphisms })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    All,
    Injective,
    Bijective,
}

/// Exhaustive functor search in canonical order; stops after `limit` results.
pub fn search_functors(src: &Arc<FinCategory>, tgt: &Arc<FinCategory>, mode: SearchMode, limit: usize) -> Vec<FunctorData> {
    let (s, t) = (src.as_ref(), tgt.as_ref());
    if mode == SearchMode::Bijective && (s.num_objects() != t.num_objects() || s.num_morphisms() != t.num_morphisms()) {
        return Vec::new();
    }
    if mode != SearchMode::All && s.num_objects() > t.num_objects() {
        return Vec::new();
    }
    let non_id: Vec<MorId> = s.morphisms().filter(|&f| !s.is_identity(f)).collect();
    let pos: HashMap<MorId, usize> = non_id.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    // composites to check, keyed by the last-assigned position among (g, f, g∘f)
    let mut checks: Vec<Vec<(MorId, MorId, MorId)>> = vec![Vec::new(); non_id.len()];
    for &f in &non_id {
        for &g in s.out_of(s.cod(f)) {
            if s.is_identity(g) {
                continue;
            }
            let h = s.comp(g, f);
            let mut k = pos[&f].max(pos[&g]);
            if let Some(&p) = pos.get(&h) {
                k = k.max(p);
            }
            checks[k].push((g, f, h));
        }
    }
    let mut st = SearchState {
        s,
        t,
        mode,
        limit,
        non_id: &non_id,
        checks: &checks,
        obj_map: vec![ObjId(0); s.num_objects()],
        obj_used: vec![false; t.num_objects()],
        mor_map: vec![None; s.num_morphisms()],
        mor_used: vec![false; t.num_morphisms()],
        found: Vec::new(),
    };
    st.objects(0);
    st.found.into_iter().map(|(o, m)| FunctorData::unchecked(src.clone(), tgt.clone(), o, m)).collect()
}

struct SearchState<'a> {
    s: &'a FinCategory,
    t: &'a FinCategory,
    mode: SearchMode,
    limit: usize,
    non_id: &'a [MorId],
    checks: &'a [Vec<(MorId, MorId, MorId)>],
    obj_map: Vec<ObjId>,
    obj_used: Vec<bool>,
    mor_map: Vec<Option<MorId>>,
    mor_used: Vec<bool>,
    found: Vec<(Vec<ObjId>, Vec<MorId>)>,
}

impl SearchState<'_> {
    fn done(&self) -> bool {
        self.found.len() >= self.limit
    }

    fn objects(&mut self, i: usize) {
        if self.done() {
            return;
        }
        if i == self.s.num_objects() {
            if !self.hom_counts_fit() {
                return;
            }
            for a in self.s.objects() {
                let ida = self.t.id(self.obj_map[a.idx()]);
                self.mor_map[self.s.id(a).idx()] = Some(ida);
                self.mor_used[ida.idx()] = true;
            }
            self.morphisms(0);
            for a in self.s.objects() {
                let ida = self.t.id(self.obj_map[a.idx()]);
                self.mor_map[self.s.id(a).idx()] = None;
                self.mor_used[ida.idx()] = false;
            }
            return;
        }
        for b in self.t.objects() {
            if self.mode != SearchMode::All && self.obj_used[b.idx()] {
                continue;
            }
            self.obj_map[i] = b;
            self.obj_used[b.idx()] = true;
            self.objects(i + 1);
            self.obj_used[b.idx()] = false;
            if self.done() {
                return;
            }
        }
    }

    fn hom_counts_fit(&self) -> bool {
        if self.mode == SearchMode::All {
            return true;
        }
        for a in self.s.objects() {
            for b in self.s.objects() {
                let n = self.s.hom(a, b).len();
                let m = self.t.hom(self.obj_map[a.idx()], self.obj_map[b.idx()]).len();
                let ok = match self.mode {
                    SearchMode::Bijective => n == m,
                    _ => n <= m,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn morphisms(&mut self, i: usize) {
        if self.done() {
            return;
        }
        if i == self.non_id.len() {
            self.found.push((self.obj_map.clone(), self.mor_map.iter().map(|m| m.unwrap()).collect()));
            return;
        }
        let f = self.non_id[i];
        let (a, b) = (self.obj_map[self.s.dom(f).idx()], self.obj_map[self.s.cod(f).idx()]);
        for &g in self.t.hom(a, b) {
            if self.mode != SearchMode::All && self.mor_used[g.idx()] {
                continue;
            }
            self.mor_map[f.idx()] = Some(g);
            self.mor_used[g.idx()] = true;
            let ok = self.checks[i].iter().all(|&(x, y, h)| {
                let (fx, fy, fh) = (self.mor_map[x.idx()].unwrap(), self.mor_map[y.idx()].unwrap(), self.mor_map[h.idx()].unwrap());
                self.t.comp(fx, fy) == fh
            });
            if ok {
                self.morphisms(i + 1);
            }
            self.mor_used[g.idx()] = false;
            self.mor_map[f.idx()] = None;
            if self.done() {
                return;
            }
        }
    }
}

/// True iff `b` embeds into `c` injectively on objects and morphisms.
pub fn is_subcategory(b: &Arc<FinCategory>, c: &Arc<FinCategory>) -> bool {
    !search_functors(b, c, SearchMode::Injective, 1).is_empty()
}

/// An isomorphism of categories, if one exists.
pub fn find_isomorphism(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Option<FunctorData> {
    search_functors(c, d, SearchMode::Bijective, 1).into_iter().next()
}

#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub cat: Arc<FinCategory>,
    pub functors: Vec<FunctorData>,
    pub transformations: Vec<NatTransData>,
}

/// Upper estimate of candidate functors `C → D`.
pub fn functor_count_estimate(c: &FinCategory, d: &FinCategory) -> u128 {
    let non_id = c.morphisms().filter(|&f| !c.is_identity(f)).count() as u32;
    (d.num_objects() as u128).saturating_pow(c.num_objects() as u32).saturating_mul((d.num_morphisms() as u128).saturating_pow(non_id))
}

pub fn functor_category(c: &Arc<FinCategory>, d: &Arc<FinCategory>, bound: u128) -> Result<FunctorCategory, CategoryError> {
    let estimate = functor_count_estimate(c, d);
    if estimate > bound {
        return Err(CategoryError::BoundExceeded { what: "candidate functors".into(), estimate, cap: bound });
    }
    let functors = search_functors(c, d, SearchMode::All, usize::MAX);
    let mut trans: Vec<(usize, usize, Vec<MorId>)> = Vec::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            let mut comps = Vec::new();
            natural_components(c, d, f, g, &mut comps, &mut trans, i, j);
        }
    }
    let index: HashMap<(usize, usize, Vec<MorId>), usize> = trans.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
    let width = functors.len().to_string().len();
    let raw = RawCategory {
        objects: (0..functors.len()).map(|i| format!("F{i:0width$}")).collect(),
        morphisms: trans.iter().enumerate().map(|(k, (i, j, _))| (format!("t{i:0width$}_{j:0width$}_{k:06}"), *i, *j)).collect(),
        identity: functors.iter().enumerate().map(|(i, f)| index[&(i, i, c.objects().map(|a| d.id(f.obj(a))).collect())]).collect(),
    };
    let assembled = FinCategory::assemble(raw, |x, y| {
        let (_, tx, cx) = &trans[x];
        let (sy, _, cy) = &trans[y];
        let comps: Vec<MorId> = cy.iter().zip(cx).map(|(&a, &b)| d.comp(b, a)).collect();
        index.get(&(*sy, *tx, comps)).copied()
    })?;
    let raw_trans = trans.clone();
    let (cat, _, trans) = finish(assembled, vec![(); functors.len()], raw_trans);
    let transformations =
        trans.into_iter().map(|(i, j, comps)| NatTransData::new(functors[i].clone(), functors[j].clone(), comps).expect("typed components")).collect();
    Ok(FunctorCategory { cat: Arc::new(cat), functors, transformations })
}

#[allow(clippy::too_many_arguments)]
fn natural_components(
    c: &FinCategory,
    d: &FinCategory,
    f: &FunctorData,
    g: &FunctorData,
    comps: &mut Vec<MorId>,
    out: &mut Vec<(usize, usize, Vec<MorId>)>,
    i: usize,
    j: usize,
) {
    let k = comps.len();
    if k == c.num_objects() {
        out.push((i, j, comps.clone()));
        return;
    }
    let a = ObjId(k as u32);
    for &m in d.hom(f.obj(a), g.obj(a)) {
        comps.push(m);
        // naturality squares whose endpoints are both assigned
        let ok = c.morphisms().all(|h| {
            let (x, y) = (c.dom(h).idx(), c.cod(h).idx());
            if x > k || y > k {
                return true;
            }
            d.comp(comps[y], f.mor(h)) == d.comp(g.mor(h), comps[x])
        });
        if ok {
            natural_components(c, d, f, g, comps, out, i, j);
        }
        comps.pop();
    }
}
