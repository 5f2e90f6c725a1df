//! Small synthetic categories shipped as catspec files, each carrying
//! `# expect key=value` annotations that are re-verified on load.

use std::sync::Arc;

use serde::Serialize;

use crate::analysis::{category_profile, is_iso};
use crate::category::FinCategory;
use crate::catspec::load_category;
use crate::structures::{choose_cartesian_structure, find_initials, find_terminals, has_all_equalizers, has_all_pullbacks};

const SOURCES: [(&str, &str); 8] = [
    ("one", include_str!("../../../../data/zoo/one.catspec")),
    ("walking_arrow", include_str!("../../../../data/zoo/walking_arrow.catspec")),
    ("parallel_pair", include_str!("../../../../data/zoo/parallel_pair.catspec")),
    ("walking_iso", include_str!("../../../../data/zoo/walking_iso.catspec")),
    ("square", include_str!("../../../../data/zoo/square.catspec")),
    ("c2", include_str!("../../../../data/zoo/c2.catspec")),
    ("discrete2", include_str!("../../../../data/zoo/discrete2.catspec")),
    ("bowtie", include_str!("../../../../data/zoo/bowtie.catspec")),
];

#[derive(Clone, Debug, Serialize)]
pub struct ZooEntry {
    pub name: String,
    #[serde(skip)]
    pub category: Arc<FinCategory>,
    pub source: String,
    /// annotated property ↦ expected value
    pub expected: Vec<(String, bool)>,
    /// annotated property ↦ computed value
    pub computed: Vec<(String, bool)>,
}

impl ZooEntry {
    pub fn verified(&self) -> bool {
        self.expected == self.computed
    }

    pub fn mismatches(&self) -> Vec<&str> {
        self.expected.iter().zip(&self.computed).filter(|(e, c)| e.1 != c.1).map(|(e, _)| e.0.as_str()).collect()
    }
}

/// Computes a named property; `None` for unknown keys.
pub fn property(c: &FinCategory, key: &str) -> Option<bool> {
    let (terminals, initials) = (find_terminals(c), find_initials(c));
    Some(match key {
        "terminal" => !terminals.is_empty(),
        "initial" => !initials.is_empty(),
        "zero" => terminals.iter().any(|t| initials.contains(t)),
        "finite_products" => choose_cartesian_structure(c).has_finite_products,
        "ccc" => choose_cartesian_structure(c).is_ccc,
        "pullbacks" => has_all_pullbacks(c),
        "equalizers" => has_all_equalizers(c),
        "preorder" => category_profile(c).preorder,
        "discrete" => category_profile(c).discrete,
        "pointed" => category_profile(c).pointed,
        "groupoid" => c.morphisms().all(|f| is_iso(c, f)),
        _ => return None,
    })
}

fn annotations(text: &str) -> Vec<(String, bool)> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix("# expect "))
        .flat_map(|l| l.split_whitespace())
        .filter_map(|kv| {
            let (k, v) = kv.split_once('=')?;
            Some((k.to_string(), v.parse().ok()?))
        })
        .collect()
}

pub fn zoo_entry(name: &str, source: &str) -> ZooEntry {
    let category = Arc::new(load_category(source).unwrap_or_else(|e| panic!("zoo entry {name}: {e}")));
    let expected = annotations(source);
    let computed = expected.iter().map(|(k, _)| (k.clone(), property(&category, k).unwrap_or(false))).collect();
    ZooEntry { name: name.into(), category, source: source.into(), expected, computed }
}

pub fn zoo() -> Vec<ZooEntry> {
    SOURCES.iter().map(|(n, s)| zoo_entry(n, s)).collect()
}

pub fn zoo_by_name(name: &str) -> Option<ZooEntry> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(n, s)| zoo_entry(n, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_annotation_holds() {
        for e in zoo() {
            assert!(e.verified(), "{}: {:?}", e.name, e.mismatches());
            assert!(e.expected.len() >= 10, "{}", e.name);
        }
    }

    #[test]
    fn walking_iso_arrows_are_isos() {
        let e = zoo_by_name("walking_iso").unwrap();
        assert!(e.category.morphisms().all(|f| is_iso(&e.category, f)));
    }
}
