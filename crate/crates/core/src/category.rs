//! Explicit finite categories with a dense composition table.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Object identifier; ids follow the lexicographic order of object names.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct ObjId(pub u32);

/// Morphism identifier; ids follow the lexicographic order of morphism names.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct MorId(pub u32);

impl ObjId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

const NONE: u32 = u32::MAX;

/// Largest morphism count accepted for a dense composition table.
pub const MAX_MORPHISMS: usize = 5_000;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum CategoryError {
    #[error("missing composite for {g} . {f}")]
    MissingComposite { g: String, f: String },
    #[error("composition is not associative: {h} . ({g} . {f}) differs from ({h} . {g}) . {f}")]
    NonAssociative { f: String, g: String, h: String },
    #[error("unit law fails for {f}")]
    BrokenUnit { f: String },
    #[error("dangling identifier {name}")]
    DanglingId { name: String },
    #[error("duplicate identifier {name}")]
    DuplicateId { name: String },
    #[error("composite {h} of {g} . {f} has the wrong domain or codomain")]
    IllTypedComposite { g: String, f: String, h: String },
    #[error("composition entry for non-composable pair {g} . {f}")]
    NotComposable { g: String, f: String },
    #[error("conflicting composition entries for {g} . {f}")]
    ConflictingComposite { g: String, f: String },
    #[error("identity {name} of {object} is not an endomorphism of {object}")]
    BadIdentity { object: String, name: String },
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("bound exceeded for {what}: estimated {estimate}, cap {cap}")]
    BoundExceeded { what: String, estimate: u128, cap: u128 },
}

/// Unsorted description handed to [`FinCategory::assemble`].
#[derive(Clone, Debug, Default)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// (name, dom index, cod index)
    pub morphisms: Vec<(String, usize, usize)>,
    /// identity morphism index per object index
    pub identity: Vec<usize>,
}

/// Result of assembling a raw category: the category plus the renumbering.
#[derive(Clone, Debug)]
pub struct Assembled {
    pub category: FinCategory,
    /// raw object index -> canonical id
    pub obj_map: Vec<ObjId>,
    /// raw morphism index -> canonical id
    pub mor_map: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<MorId>,
    table: Vec<u32>,
    hom: Vec<Vec<MorId>>,
    out: Vec<Vec<MorId>>,
    inc: Vec<Vec<MorId>>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

impl FinCategory {
    /// Sorts names, renumbers, fills the composition table from `compose`
    /// (called with raw indices `(g, f)` for every composable pair) and
    /// validates the category axioms.
    pub fn assemble<F>(raw: RawCategory, compose: F) -> Result<Assembled, CategoryError>
    where
        F: Fn(usize, usize) -> Option<usize>,
    {
        let n_obj = raw.objects.len();
        let n_mor = raw.morphisms.len();
        if n_mor > MAX_MORPHISMS {
            return Err(CategoryError::BoundExceeded {
                what: "morphisms in a dense composition table".into(),
                estimate: n_mor as u128,
                cap: MAX_MORPHISMS as u128,
            });
        }
        let mut obj_order: Vec<usize> = (0..n_obj).collect();
        obj_order.sort_by(|&a, &b| raw.objects[a].cmp(&raw.objects[b]));
        for w in obj_order.windows(2) {
            if raw.objects[w[0]] == raw.objects[w[1]] {
                return Err(CategoryError::DuplicateId { name: raw.objects[w[0]].clone() });
            }
        }
        let mut obj_map = vec![ObjId(0); n_obj];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_map[old] = ObjId(new as u32);
        }
        let mut mor_order: Vec<usize> = (0..n_mor).collect();
        mor_order.sort_by(|&a, &b| raw.morphisms[a].0.cmp(&raw.morphisms[b].0));
        for w in mor_order.windows(2) {
            if raw.morphisms[w[0]].0 == raw.morphisms[w[1]].0 {
                return Err(CategoryError::DuplicateId { name: raw.morphisms[w[0]].0.clone() });
            }
        }
        let mut mor_map = vec![MorId(0); n_mor];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_map[old] = MorId(new as u32);
        }
        for (name, d, c) in &raw.morphisms {
            if *d >= n_obj || *c >= n_obj {
                return Err(CategoryError::DanglingId { name: name.clone() });
            }
        }
        if raw.identity.len() != n_obj {
            return Err(CategoryError::DanglingId { name: "identity".into() });
        }

        let obj_names: Vec<String> = obj_order.iter().map(|&o| raw.objects[o].clone()).collect();
        let mor_names: Vec<String> = mor_order.iter().map(|&m| raw.morphisms[m].0.clone()).collect();
        let dom: Vec<ObjId> = mor_order.iter().map(|&m| obj_map[raw.morphisms[m].1]).collect();
        let cod: Vec<ObjId> = mor_order.iter().map(|&m| obj_map[raw.morphisms[m].2]).collect();
        let mut identity = vec![MorId(0); n_obj];
        for (o, &m) in raw.identity.iter().enumerate() {
            if m >= n_mor {
                return Err(CategoryError::DanglingId { name: format!("identity of {}", raw.objects[o]) });
            }
            let (ref name, d, c) = raw.morphisms[m];
            if d != o || c != o {
                return Err(CategoryError::BadIdentity { object: raw.objects[o].clone(), name: name.clone() });
            }
            identity[obj_map[o].idx()] = mor_map[m];
        }

        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for m in 0..n_mor {
            hom[dom[m].idx() * n_obj + cod[m].idx()].push(MorId(m as u32));
        }
        // out-lists by raw domain for the composable-pair scan
        let mut out_raw: Vec<Vec<usize>> = vec![Vec::new(); n_obj];
        for (m, (_, d, _)) in raw.morphisms.iter().enumerate() {
            out_raw[*d].push(m);
        }
        let mut table = vec![NONE; n_mor * n_mor];
        for f in 0..n_mor {
            let cf = raw.morphisms[f].2;
            for &g in &out_raw[cf] {
                let h = compose(g, f).ok_or_else(|| CategoryError::MissingComposite { g: raw.morphisms[g].0.clone(), f: raw.morphisms[f].0.clone() })?;
                if h >= n_mor {
                    return Err(CategoryError::DanglingId { name: format!("composite of {} . {}", raw.morphisms[g].0, raw.morphisms[f].0) });
                }
                if raw.morphisms[h].1 != raw.morphisms[f].1 || raw.morphisms[h].2 != raw.morphisms[g].2 {
                    return Err(CategoryError::IllTypedComposite {
                        g: raw.morphisms[g].0.clone(),
                        f: raw.morphisms[f].0.clone(),
                        h: raw.morphisms[h].0.clone(),
                    });
                }
                table[mor_map[g].idx() * n_mor + mor_map[f].idx()] = mor_map[h].0;
            }
        }
        let obj_index = obj_names.iter().enumerate().map(|(i, n)| (n.clone(), ObjId(i as u32))).collect();
        let mor_index = mor_names.iter().enumerate().map(|(i, n)| (n.clone(), MorId(i as u32))).collect();
        let mut out = vec![Vec::new(); n_obj];
        let mut inc = vec![Vec::new(); n_obj];
        for m in 0..n_mor {
            out[dom[m].idx()].push(MorId(m as u32));
            inc[cod[m].idx()].push(MorId(m as u32));
        }
        let category = FinCategory { obj_names, mor_names, dom, cod, identity, table, hom, out, inc, obj_index, mor_index };
        category.check_axioms()?;
        Ok(Assembled { category, obj_map, mor_map })
    }

    fn check_axioms(&self) -> Result<(), CategoryError> {
        for f in self.morphisms() {
            let l = self.compose(f, self.id(self.dom(f)));
            let r = self.compose(self.id(self.cod(f)), f);
            if l != Some(f) || r != Some(f) {
                return Err(CategoryError::BrokenUnit { f: self.mor_name(f).to_string() });
            }
        }
        for f in self.morphisms() {
            for &g in self.out_of(self.cod(f)) {
                let gf = self.comp(g, f);
                for &h in self.out_of(self.cod(g)) {
                    let hg = self.comp(h, g);
                    if self.comp(h, gf) != self.comp(hg, f) {
                        return Err(CategoryError::NonAssociative {
                            f: self.mor_name(f).to_string(),
                            g: self.mor_name(g).to_string(),
                            h: self.mor_name(h).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + Clone {
        (0..self.obj_names.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + Clone {
        (0..self.mor_names.len() as u32).map(MorId)
    }

    pub fn obj_name(&self, a: ObjId) -> &str {
        &self.obj_names[a.idx()]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.mor_names[f.idx()]
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn mor_by_name(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.dom[f.idx()]
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.cod[f.idx()]
    }

    pub fn id(&self, a: ObjId) -> MorId {
        self.identity[a.idx()]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.dom(f) == self.cod(f) && self.id(self.dom(f)) == f
    }

    /// `g ∘ f`, defined exactly when `cod f = dom g`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        let v = self.table[g.idx() * self.mor_names.len() + f.idx()];
        (v != NONE).then_some(MorId(v))
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| panic!("{} . {} is not composable", self.mor_name(g), self.mor_name(f)))
    }

    /// Composes right-to-left: `chain[0] ∘ chain[1] ∘ …`.
    pub fn comp_all(&self, chain: &[MorId]) -> MorId {
        let (last, rest) = chain.split_last().expect("empty chain");
        rest.iter().rev().fold(*last, |acc, &g| self.comp(g, acc))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a.idx() * self.obj_names.len() + b.idx()]
    }

    /// All morphisms with domain `a`, in id order.
    pub fn out_of(&self, a: ObjId) -> &[MorId] {
        &self.out[a.idx()]
    }

    /// All morphisms with codomain `b`, in id order.
    pub fn incoming(&self, b: ObjId) -> &[MorId] {
        &self.inc[b.idx()]
    }

    pub fn is_endo(&self, f: MorId) -> bool {
        self.dom(f) == self.cod(f)
    }
}
