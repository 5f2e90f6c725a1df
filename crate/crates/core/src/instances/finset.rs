//! The full subcategory of finite sets of size at most `N`, as an explicit table,
//! with structure chosen by the encodings of [`super::sets`].

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{CategoryError, FinCategory, MorId, ObjId, RawCategory, MAX_MORPHISMS};
use crate::model::FinModel;
use crate::structures::{CartesianStructure, EqualizerWitness, ExponentialWitness, ProductTable, ProductWitness, PullbackWitness, TerminalWitness};

use super::sets::{checked_pow, digit, numeral, Func};

pub struct FinSetInstance {
    pub max_size: u32,
    pub cat: Arc<FinCategory>,
    pub structure: CartesianStructure,
    sizes: Vec<u32>,
    funcs: Vec<Func>,
}

/// Morphism count of `finset(n)`: `Σ_{a,b ≤ n} b^a`.
pub fn finset_morphism_count(n: u32) -> u128 {
    (0..=n as u128).flat_map(|a| (0..=n as u128).map(move |b| b.pow(a as u32))).sum()
}

pub fn finset(n: u32) -> Result<FinSetInstance, CategoryError> {
    let count = finset_morphism_count(n);
    if n == 0 || n > 9 || count > MAX_MORPHISMS as u128 {
        return Err(CategoryError::BoundExceeded { what: format!("finset({n}) morphisms"), estimate: count, cap: MAX_MORPHISMS as u128 });
    }
    let mut raw = RawCategory { objects: (0..=n).map(|k| k.to_string()).collect(), ..Default::default() };
    let mut funcs = Vec::new();
    let mut index = BTreeMap::new();
    for a in 0..=n {
        for b in 0..=n {
            for u in 0..b.pow(a) {
                let f = Func::from_fn(a, b, |x| digit(u, x, a, b));
                let digits: String = f.table.iter().map(|d| char::from_digit(*d, 10).expect("digit")).collect();
                raw.morphisms.push((format!("{a}>{b}:{digits}"), a as usize, b as usize));
                index.insert(f.clone(), funcs.len());
                funcs.push(f);
            }
        }
    }
    raw.identity = (0..=n).map(|k| index[&Func::identity(k)]).collect();
    let assembled = FinCategory::assemble(raw, |g, f| {
        let (g, f) = (&funcs[g], &funcs[f]);
        index.get(&Func::from_fn(f.dom, g.cod, |x| g.at(f.at(x)))).copied()
    })?;
    let cat = Arc::new(assembled.category);
    let mut sorted = vec![Func::identity(0); funcs.len()];
    for (raw_idx, f) in funcs.into_iter().enumerate() {
        sorted[assembled.mor_map[raw_idx].idx()] = f;
    }
    let sizes = (0..=n).collect();
    let mut inst = FinSetInstance { max_size: n, cat, structure: CartesianStructure::default(), sizes, funcs: sorted };
    inst.structure = inst.chosen_structure();
    Ok(inst)
}

impl FinSetInstance {
    /// The object `{0, …, k-1}`.
    pub fn obj(&self, k: u32) -> Option<ObjId> {
        (k <= self.max_size).then_some(ObjId(k))
    }

    pub fn size(&self, a: ObjId) -> u32 {
        self.sizes[a.idx()]
    }

    pub fn func(&self, f: MorId) -> &Func {
        &self.funcs[f.idx()]
    }

    pub fn table(&self, f: MorId) -> &[u32] {
        &self.funcs[f.idx()].table
    }

    /// The morphism with the given table, when both ends are in range.
    pub fn mor(&self, f: &Func) -> Option<MorId> {
        let (a, b) = (self.obj(f.dom)?, self.obj(f.cod)?);
        self.cat.hom(a, b).get(numeral(&f.table, f.cod) as usize).copied()
    }

    fn mor_fn(&self, a: u32, b: u32, f: impl Fn(u32) -> u32) -> MorId {
        self.mor(&Func::from_fn(a, b, f)).expect("in range")
    }

    pub fn model(&self) -> FinModel {
        FinModel::new(self.cat.clone(), self.structure.clone())
    }

    /// Product `a × b` with apex `a·b`, when it fits.
    pub fn product_witness(&self, a: u32, b: u32) -> Option<ProductWitness> {
        let p = self.obj(a * b)?;
        let mut mediator = BTreeMap::new();
        for d in self.cat.objects() {
            let dn = self.size(d);
            for &f1 in self.cat.hom(d, ObjId(a)) {
                for &f2 in self.cat.hom(d, ObjId(b)) {
                    let (t1, t2) = (self.func(f1), self.func(f2));
                    mediator.insert((f1, f2), self.mor_fn(dn, a * b, |x| t1.at(x) * b + t2.at(x)));
                }
            }
        }
        Some(ProductWitness {
            left: ObjId(a),
            right: ObjId(b),
            apex: p,
            pi1: self.mor_fn(a * b, a, |x| x / b),
            pi2: self.mor_fn(a * b, b, |x| x % b),
            mediator,
        })
    }

    /// `a ⇒ b` with carrier `b^a`, universal over the `C` with `C × a` in range.
    pub fn exponential_witness(&self, products: &ProductTable, a: u32, b: u32) -> Option<ExponentialWitness> {
        let e = checked_pow(b, a, self.max_size as u64)?;
        let pe = products.get(&(ObjId(e), ObjId(a)))?.clone();
        let eval = self.mor_fn(e * a, b, |p| digit(p / a, p % a, a, b));
        let quantified: Vec<ObjId> = self.cat.objects().filter(|&c| products.contains_key(&(c, ObjId(a)))).collect();
        let mut transpose = BTreeMap::new();
        let mut inverse = BTreeMap::new();
        for &c in &quantified {
            let cn = self.size(c);
            for &g in self.cat.hom(ObjId(cn * a), ObjId(b)) {
                let t = self.func(g);
                let u = self.mor_fn(cn, e, |x| numeral(&t.table[(x * a) as usize..((x + 1) * a) as usize], b));
                transpose.insert((c, g), u);
                inverse.insert(u, g);
            }
        }
        let complete = quantified.len() == self.cat.num_objects();
        Some(ExponentialWitness { arg: ObjId(a), target: ObjId(b), object: ObjId(e), eval, product: pe, transpose, inverse, quantified, complete })
    }

    fn chosen_structure(&self) -> CartesianStructure {
        let one = self.obj(1).expect("n ≥ 1");
        let terminal = TerminalWitness { object: one, bang: self.cat.objects().map(|a| self.mor_fn(self.size(a), 1, |_| 0)).collect() };
        let n = self.max_size;
        let mut products = ProductTable::new();
        for a in 0..=n {
            for b in 0..=n {
                if let Some(w) = self.product_witness(a, b) {
                    products.insert((ObjId(a), ObjId(b)), w);
                }
            }
        }
        let mut exponentials = BTreeMap::new();
        for a in 0..=n {
            for b in 0..=n {
                if let Some(w) = self.exponential_witness(&products, a, b) {
                    exponentials.insert((ObjId(a), ObjId(b)), w);
                }
            }
        }
        CartesianStructure::from_parts(&self.cat, Some(terminal), products, exponentials)
    }

    /// Pullback as the lexicographic subset `{(x, y) : f₁x = f₂y}` of the product.
    pub fn pullback_witness(&self, f1: MorId, f2: MorId) -> Option<PullbackWitness> {
        let (t1, t2) = (self.func(f1), self.func(f2));
        if t1.cod != t2.cod {
            return None;
        }
        let pts: Vec<(u32, u32)> = (0..t1.dom).flat_map(|x| (0..t2.dom).map(move |y| (x, y))).filter(|&(x, y)| t1.at(x) == t2.at(y)).collect();
        let k = pts.len() as u32;
        let apex = self.obj(k)?;
        let p1 = self.mor_fn(k, t1.dom, |i| pts[i as usize].0);
        let p2 = self.mor_fn(k, t2.dom, |i| pts[i as usize].1);
        let mut mediator = BTreeMap::new();
        for d in self.cat.objects() {
            for &g1 in self.cat.hom(d, self.cat.dom(f1)) {
                for &g2 in self.cat.hom(d, self.cat.dom(f2)) {
                    if self.cat.comp(f1, g1) != self.cat.comp(f2, g2) {
                        continue;
                    }
                    let (u1, u2) = (self.func(g1), self.func(g2));
                    let v = self.mor_fn(u1.dom, k, |x| pts.iter().position(|&p| p == (u1.at(x), u2.at(x))).expect("cone point") as u32);
                    mediator.insert((g1, g2), v);
                }
            }
        }
        Some(PullbackWitness { f1, f2, apex, p1, p2, mediator })
    }

    /// Equalizer as the subset where `f` and `g` agree.
    pub fn equalizer_witness(&self, f: MorId, g: MorId) -> Option<EqualizerWitness> {
        let (tf, tg) = (self.func(f), self.func(g));
        if tf.dom != tg.dom || tf.cod != tg.cod {
            return None;
        }
        let agree: Vec<u32> = (0..tf.dom).filter(|&x| tf.at(x) == tg.at(x)).collect();
        let k = agree.len() as u32;
        let e = self.mor_fn(k, tf.dom, |i| agree[i as usize]);
        let mut mediator = BTreeMap::new();
        for d in self.cat.objects() {
            for &h in self.cat.hom(d, self.cat.dom(f)) {
                if self.cat.comp(f, h) == self.cat.comp(g, h) {
                    let th = self.func(h);
                    mediator.insert(h, self.mor_fn(th.dom, k, |x| agree.iter().position(|&a| a == th.at(x)).expect("fork") as u32));
                }
            }
        }
        Some(EqualizerWitness { f, g, object: ObjId(k), e, mediator })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{
        exponential_iso, find_pullbacks, first_exponential, first_product, product_iso, pullback_iso, validate_equalizer, validate_exponential,
        validate_product, validate_pullback, validate_terminal,
    };

    #[test]
    fn hom_sets_have_the_expected_sizes() {
        let i = finset(2).unwrap();
        assert_eq!(i.cat.num_objects(), 3);
        assert_eq!(i.cat.num_morphisms(), finset_morphism_count(2) as usize);
        for a in 0..=2 {
            for b in 0..=2 {
                assert_eq!(i.cat.hom(ObjId(a), ObjId(b)).len() as u32, b.pow(a));
            }
        }
        assert!(finset(5).is_err());
    }

    #[test]
    fn tables_round_trip_through_ids() {
        let i = finset(3).unwrap();
        for f in i.cat.morphisms() {
            assert_eq!(i.mor(i.func(f)), Some(f));
        }
        for f in i.cat.morphisms() {
            for &g in i.cat.out_of(i.cat.cod(f)) {
                let h = i.cat.comp(g, f);
                assert!((0..i.func(f).dom).all(|x| i.func(h).at(x) == i.func(g).at(i.func(f).at(x))));
            }
        }
    }

    #[test]
    fn chosen_structure_passes_the_validators_and_agrees_with_search() {
        let i = finset(3).unwrap();
        let cs = &i.structure;
        validate_terminal(&i.cat, cs.terminal.as_ref().unwrap()).unwrap();
        for w in cs.products.values() {
            validate_product(&i.cat, w).unwrap();
            let found = first_product(&i.cat, w.left, w.right).unwrap();
            assert!(product_iso(&i.cat, w, &found).is_some());
        }
        for w in cs.exponentials.values() {
            validate_exponential(&i.cat, &cs.products, w).unwrap();
            let found = first_exponential(&i.cat, &cs.products, w.arg, w.target).unwrap();
            assert!(exponential_iso(&i.cat, w, &found).is_some());
        }
        // 2 × 2 does not fit, nor does 2 ⇒ 2
        assert!(cs.product(ObjId(2), ObjId(2)).is_none());
        assert!(cs.exponential(ObjId(2), ObjId(2)).is_none());
        assert!(!cs.is_ccc);
    }

    #[test]
    fn one_element_fragment_is_cartesian_closed() {
        let i = finset(1).unwrap();
        assert!(i.structure.has_finite_products && i.structure.is_ccc);
    }

    #[test]
    fn pullbacks_and_equalizers_are_subsets() {
        let i = finset(2).unwrap();
        for f1 in i.cat.morphisms() {
            for &f2 in i.cat.incoming(i.cat.cod(f1)) {
                match i.pullback_witness(f1, f2) {
                    Some(w) => {
                        validate_pullback(&i.cat, &w).unwrap();
                        let found = find_pullbacks(&i.cat, f1, f2);
                        assert!(pullback_iso(&i.cat, &w, &found[0]).is_some());
                    }
                    None => assert!(find_pullbacks(&i.cat, f1, f2).is_empty()),
                }
            }
            for &g in i.cat.hom(i.cat.dom(f1), i.cat.cod(f1)) {
                validate_equalizer(&i.cat, &i.equalizer_witness(f1, g).unwrap()).unwrap();
            }
        }
    }
}
