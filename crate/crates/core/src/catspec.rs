//! The `catspec` text format.
//!
//! ```text
//! # the walking arrow
//! object a
//! object b
//! morphism f : a -> b
//! identity a = id_a
//! compose g . f = h
//! functor U
//!   obj a |-> x
//!   mor f |-> u
//! end
//! ```
//!
//! Lines may appear in any order. Identities that are not declared are
//! created as `id_<object>`, and composites with an identity factor are
//! filled in unless stated explicitly.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::category::{CategoryError, FinCategory, RawCategory};
use crate::functor::{FunctorData, FunctorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorSpec {
    pub name: String,
    pub obj_map: Vec<(String, String)>,
    pub mor_map: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatSpec {
    pub objects: Vec<String>,
    /// (name, dom, cod)
    pub morphisms: Vec<(String, String, String)>,
    /// (object, identity name)
    pub identities: Vec<(String, String)>,
    /// (g, f, g∘f)
    pub compositions: Vec<(String, String, String)>,
    pub functors: Vec<FunctorSpec>,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<CatSpec, ParseError> {
    let mut spec = CatSpec::default();
    let mut current: Option<FunctorSpec> = None;
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if let Some(fs) = current.as_mut() {
            match toks.as_slice() {
                ["obj", a, "|->", b] => fs.obj_map.push((a.to_string(), b.to_string())),
                ["mor", f, "|->", g] => fs.mor_map.push((f.to_string(), g.to_string())),
                ["end"] => spec.functors.push(current.take().unwrap()),
                _ => return Err(err(line_no, format!("unexpected line in functor block: {}", line.trim()))),
            }
            continue;
        }
        match toks.as_slice() {
            ["object", a] => spec.objects.push(a.to_string()),
            ["morphism", f, ":", a, "->", b] => spec.morphisms.push((f.to_string(), a.to_string(), b.to_string())),
            ["identity", a, "=", f] => spec.identities.push((a.to_string(), f.to_string())),
            ["compose", g, ".", f, "=", h] => spec.compositions.push((g.to_string(), f.to_string(), h.to_string())),
            ["functor", name] => current = Some(FunctorSpec { name: name.to_string(), ..Default::default() }),
            _ => return Err(err(line_no, format!("unrecognised line: {}", line.trim()))),
        }
    }
    if let Some(fs) = current {
        return Err(err(text.lines().count(), format!("functor block {} is not closed with `end`", fs.name)));
    }
    Ok(spec)
}

/// Builds and validates the category described by `spec` (functor blocks are ignored).
pub fn build_category(spec: &CatSpec) -> Result<FinCategory, CategoryError> {
    let mut objects: Vec<String> = Vec::new();
    let mut obj_ix: HashMap<&str, usize> = HashMap::new();
    for o in &spec.objects {
        if obj_ix.contains_key(o.as_str()) {
            return Err(CategoryError::DuplicateId { name: o.clone() });
        }
        obj_ix.insert(o, objects.len());
        objects.push(o.clone());
    }
    let mut morphisms: Vec<(String, usize, usize)> = Vec::new();
    let mut mor_ix: HashMap<String, usize> = HashMap::new();
    for (f, a, b) in &spec.morphisms {
        let d = *obj_ix.get(a.as_str()).ok_or_else(|| CategoryError::DanglingId { name: a.clone() })?;
        let c = *obj_ix.get(b.as_str()).ok_or_else(|| CategoryError::DanglingId { name: b.clone() })?;
        if mor_ix.contains_key(f) {
            return Err(CategoryError::DuplicateId { name: f.clone() });
        }
        mor_ix.insert(f.clone(), morphisms.len());
        morphisms.push((f.clone(), d, c));
    }
    let mut identity = vec![usize::MAX; objects.len()];
    for (a, f) in &spec.identities {
        let o = *obj_ix.get(a.as_str()).ok_or_else(|| CategoryError::DanglingId { name: a.clone() })?;
        if identity[o] != usize::MAX {
            return Err(CategoryError::DuplicateId { name: format!("identity of {a}") });
        }
        let m = match mor_ix.get(f) {
            Some(&m) => m,
            None => {
                mor_ix.insert(f.clone(), morphisms.len());
                morphisms.push((f.clone(), o, o));
                morphisms.len() - 1
            }
        };
        identity[o] = m;
    }
    for o in 0..objects.len() {
        if identity[o] == usize::MAX {
            let name = format!("id_{}", objects[o]);
            if mor_ix.contains_key(&name) {
                return Err(CategoryError::DuplicateId { name });
            }
            mor_ix.insert(name.clone(), morphisms.len());
            morphisms.push((name, o, o));
            identity[o] = morphisms.len() - 1;
        }
    }
    let mut is_id = vec![false; morphisms.len()];
    for &m in &identity {
        is_id[m] = true;
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (g, f, h) in &spec.compositions {
        let look = |n: &String| mor_ix.get(n).copied().ok_or_else(|| CategoryError::DanglingId { name: n.clone() });
        let (gi, fi, hi) = (look(g)?, look(f)?, look(h)?);
        if morphisms[fi].2 != morphisms[gi].1 {
            return Err(CategoryError::NotComposable { g: g.clone(), f: f.clone() });
        }
        if let Some(&prev) = table.get(&(gi, fi)) {
            if prev != hi {
                return Err(CategoryError::ConflictingComposite { g: g.clone(), f: f.clone() });
            }
        }
        table.insert((gi, fi), hi);
    }
    let raw = RawCategory { objects, morphisms, identity };
    let assembled = FinCategory::assemble(raw, |g, f| {
        table.get(&(g, f)).copied().or_else(|| {
            if is_id[g] {
                Some(f)
            } else if is_id[f] {
                Some(g)
            } else {
                None
            }
        })
    })?;
    Ok(assembled.category)
}

/// Parses and builds in one step.
pub fn load_category(text: &str) -> Result<FinCategory, LoadError> {
    let spec = parse(text)?;
    Ok(build_category(&spec)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error("no functor block named {0}")]
    NoSuchFunctor(String),
}

/// Builds a functor block against given source and target categories.
pub fn build_functor(spec: &FunctorSpec, source: Arc<FinCategory>, target: Arc<FinCategory>) -> Result<FunctorData, FunctorError> {
    let mut obj_map = vec![None; source.num_objects()];
    for (a, b) in &spec.obj_map {
        let sa = source.obj_by_name(a).ok_or_else(|| FunctorError::UnknownName { name: a.clone() })?;
        let tb = target.obj_by_name(b).ok_or_else(|| FunctorError::UnknownName { name: b.clone() })?;
        obj_map[sa.idx()] = Some(tb);
    }
    let mut mor_map = vec![None; source.num_morphisms()];
    for (f, g) in &spec.mor_map {
        let sf = source.mor_by_name(f).ok_or_else(|| FunctorError::UnknownName { name: f.clone() })?;
        let tg = target.mor_by_name(g).ok_or_else(|| FunctorError::UnknownName { name: g.clone() })?;
        mor_map[sf.idx()] = Some(tg);
    }
    // identities may be left implicit
    for a in source.objects() {
        let i = source.id(a);
        if mor_map[i.idx()].is_none() {
            if let Some(b) = obj_map[a.idx()] {
                mor_map[i.idx()] = Some(target.id(b));
            }
        }
    }
    let obj_map = obj_map
        .into_iter()
        .enumerate()
        .map(|(i, o)| o.ok_or_else(|| FunctorError::Unmapped { name: source.obj_name(crate::ObjId(i as u32)).to_string() }))
        .collect::<Result<Vec<_>, _>>()?;
    let mor_map = mor_map
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| FunctorError::Unmapped { name: source.mor_name(crate::MorId(i as u32)).to_string() }))
        .collect::<Result<Vec<_>, _>>()?;
    FunctorData::new(source, target, obj_map, mor_map)
}

/// Canonical text for a category: sorted declarations, explicit identities,
/// and every composite whose factors are both non-identities.
pub fn serialize(c: &FinCategory) -> String {
    let mut out = String::new();
    for a in c.objects() {
        out.push_str(&format!("object {}\n", c.obj_name(a)));
    }
    for f in c.morphisms() {
        out.push_str(&format!("morphism {} : {} -> {}\n", c.mor_name(f), c.obj_name(c.dom(f)), c.obj_name(c.cod(f))));
    }
    for a in c.objects() {
        out.push_str(&format!("identity {} = {}\n", c.obj_name(a), c.mor_name(c.id(a))));
    }
    let mut lines: BTreeMap<(String, String), String> = BTreeMap::new();
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        for &g in c.out_of(c.cod(f)) {
            if c.is_identity(g) {
                continue;
            }
            let h = c.comp(g, f);
            lines.insert((c.mor_name(g).to_string(), c.mor_name(f).to_string()), c.mor_name(h).to_string());
        }
    }
    for ((g, f), h) in lines {
        out.push_str(&format!("compose {g} . {f} = {h}\n"));
    }
    out
}

pub fn serialize_functor(name: &str, f: &FunctorData) -> String {
    let mut out = format!("functor {name}\n");
    for a in f.source.objects() {
        out.push_str(&format!("  obj {} |-> {}\n", f.source.obj_name(a), f.target.obj_name(f.obj(a))));
    }
    for m in f.source.morphisms() {
        out.push_str(&format!("  mor {} |-> {}\n", f.source.mor_name(m), f.target.mor_name(f.mor(m))));
    }
    out.push_str("end\n");
    out
}
