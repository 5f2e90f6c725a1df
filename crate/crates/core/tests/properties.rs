use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use catkernel::analysis::{check_adjunction, check_hom_bijection, classify_morphism, classify_object};
use catkernel::catspec::{load_category, serialize};
use catkernel::construct::{opposite, slice_category};
use catkernel::fibration::{check_faithful_preorder_lemma, codomain_fibration, is_fibration, make_cleavage, to_point};
use catkernel::instances::{finset, Func, Maybe, Sets};
use catkernel::lawcheck::{run_suite, suite, Bounds, Target};
use catkernel::model::{Model, Monad};
use catkernel::monad::klift;
use catkernel::slice::{is_lcc, sigma_adjunction, SliceContext};
use catkernel::structures::{find_products, product_iso};
use catkernel::{FinCategory, MorId, ObjId, RawCategory};

/// Identities and `gens` closed under composition, as functions between
/// sets of the given sizes.
fn concrete(sizes: &[u32], gens: &[(usize, usize, u64)]) -> Option<FinCategory> {
    let mut mors: BTreeSet<(usize, usize, Vec<u32>)> = BTreeSet::new();
    for (i, &n) in sizes.iter().enumerate() {
        mors.insert((i, i, (0..n).collect()));
    }
    for &(a, b, seed) in gens {
        let (a, b) = (a % sizes.len(), b % sizes.len());
        let table = (0..sizes[a]).map(|x| ((seed >> (2 * x)) % sizes[b] as u64) as u32).collect();
        mors.insert((a, b, table));
    }
    loop {
        let list: Vec<_> = mors.iter().cloned().collect();
        let mut grew = false;
        for (a, b, f) in &list {
            for (b2, c, g) in &list {
                if b == b2 && mors.insert((*a, *c, f.iter().map(|&x| g[x as usize]).collect())) {
                    grew = true;
                }
            }
        }
        if mors.len() > 40 {
            return None;
        }
        if !grew {
            break;
        }
    }
    let list: Vec<_> = mors.into_iter().collect();
    let name = |(a, b, t): &(usize, usize, Vec<u32>)| format!("m{a}{b}_{}", t.iter().map(|d| d.to_string()).collect::<String>());
    let raw = RawCategory {
        objects: (0..sizes.len()).map(|i| format!("o{i}")).collect(),
        morphisms: list.iter().map(|m| (name(m), m.0, m.1)).collect(),
        identity: (0..sizes.len())
            .map(|i| list.iter().position(|m| m.0 == i && m.1 == i && m.2.iter().enumerate().all(|(x, &y)| x as u32 == y)).unwrap())
            .collect(),
    };
    let composite = |g: usize, f: usize| {
        let (a, _, tf) = &list[f];
        let (_, c, tg) = &list[g];
        let t: Vec<u32> = tf.iter().map(|&x| tg[x as usize]).collect();
        list.iter().position(|m| m.0 == *a && m.1 == *c && m.2 == t)
    };
    Some(FinCategory::assemble(raw, composite).expect("closed under composition").category)
}

fn concrete_strategy() -> impl Strategy<Value = FinCategory> {
    (prop::collection::vec(1u32..=3, 1..=3), prop::collection::vec((0usize..3, 0usize..3, any::<u64>()), 0..=3))
        .prop_filter_map("closure too large", |(sizes, gens)| concrete(&sizes, &gens))
}

/// A random order on `0..n` with `i ≤ j` only for `i < j`, transitively closed.
fn poset(n: usize, edges: &[bool]) -> FinCategory {
    let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || (i < j && edges[(i * n + j) % edges.len()])).collect()).collect();
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][m] && le[m][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| le[i][j]).collect();
    let raw = RawCategory {
        objects: (0..n).map(|i| format!("x{i}")).collect(),
        morphisms: pairs.iter().map(|&(i, j)| (format!("x{i}<x{j}"), i, j)).collect(),
        identity: (0..n).map(|i| pairs.iter().position(|&p| p == (i, i)).unwrap()).collect(),
    };
    FinCategory::assemble(raw, |g, f| pairs.iter().position(|&p| p == (pairs[f].0, pairs[g].1))).unwrap().category
}

fn poset_strategy() -> impl Strategy<Value = FinCategory> {
    (1usize..=5, prop::collection::vec(any::<bool>(), 10)).prop_map(|(n, e)| poset(n, &e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catspec_round_trips(c in concrete_strategy()) {
        prop_assert_eq!(load_category(&serialize(&c)).unwrap(), c);
    }

    #[test]
    fn opposite_is_an_involution(c in concrete_strategy()) {
        prop_assert_eq!(opposite(&opposite(&c)), c);
    }

    #[test]
    fn iso_and_the_one_sided_inverses(c in concrete_strategy()) {
        for f in c.morphisms() {
            let m = classify_morphism(&c, f);
            prop_assert!(!m.iso || (m.epi && m.mono));
            prop_assert!(!(m.retraction && m.mono) || m.iso);
            prop_assert!(!(m.section && m.epi) || m.iso);
        }
    }

    #[test]
    fn classification_dualizes(c in concrete_strategy()) {
        let op = opposite(&c);
        for f in c.morphisms() {
            let (m, d) = (classify_morphism(&c, f), classify_morphism(&op, f));
            prop_assert_eq!((m.mono, m.epi, m.section, m.retraction, m.iso), (d.epi, d.mono, d.retraction, d.section, d.iso));
        }
        for a in c.objects() {
            let (o, d) = (classify_object(&c, a), classify_object(&op, a));
            prop_assert_eq!((o.terminal, o.initial, o.zero), (d.initial, d.terminal, d.zero));
        }
    }

    #[test]
    fn slice_objects_are_the_arrows_into_the_base(c in concrete_strategy()) {
        let c = Arc::new(c);
        for a in c.objects() {
            let s = slice_category(&c, a).unwrap();
            prop_assert_eq!(s.cat.num_objects(), c.morphisms().filter(|&f| c.cod(f) == a).count());
        }
    }

    #[test]
    fn product_witnesses_are_isomorphic(c in concrete_strategy()) {
        for a in c.objects() {
            for b in c.objects() {
                let ws = find_products(&c, a, b);
                for w in &ws {
                    prop_assert!(product_iso(&c, &ws[0], w).is_some());
                }
            }
        }
    }

    #[test]
    fn lcc_clauses_agree_on_posets(c in poset_strategy()) {
        let ctx = SliceContext::new(Arc::new(c));
        let r = is_lcc(&ctx).unwrap();
        prop_assert!(r.agree, "{:?}", r);
    }

    #[test]
    fn sigma_adjunctions_are_hom_bijections(c in poset_strategy()) {
        let ctx = SliceContext::new(Arc::new(c));
        for f in ctx.base.morphisms() {
            if let Ok(adj) = sigma_adjunction(&ctx, f) {
                prop_assert!(check_adjunction(&adj));
                prop_assert!(check_hom_bijection(&adj));
            }
        }
    }

    #[test]
    fn faithful_iff_preorder_fibres_on_random_fibrations(c in concrete_strategy(), p in poset_strategy()) {
        let point = to_point(Arc::new(c)).unwrap();
        let cod = codomain_fibration(&Arc::new(p)).unwrap();
        for f in [point, cod] {
            if is_fibration(&f) {
                let r = check_faithful_preorder_lemma(&make_cleavage(&f).unwrap()).unwrap();
                prop_assert!(r.agree && r.factorizations, "{:?}", r);
            }
        }
    }

    #[test]
    fn finset_pullback_apex_counts_pairs(i in 0usize..1000, j in 0usize..1000) {
        let inst = finset(3).unwrap();
        let n = inst.cat.num_morphisms();
        let (f1, f2) = (MorId((i % n) as u32), MorId((j % n) as u32));
        let (t1, t2) = (inst.func(f1), inst.func(f2));
        prop_assume!(t1.cod == t2.cod);
        let pairs = (0..t1.dom).flat_map(|x| (0..t2.dom).map(move |y| (x, y))).filter(|&(x, y)| t1.at(x) == t2.at(y)).count() as u32;
        match inst.pullback_witness(f1, f2) {
            Some(w) => prop_assert_eq!(inst.size(w.apex), pairs),
            None => prop_assert!(pairs > 3),
        }
    }

    #[test]
    fn finset_mono_epi_are_injective_surjective(i in 0usize..499) {
        let inst = finset(4).unwrap();
        let f = MorId(i as u32);
        let m = classify_morphism(&inst.cat, f);
        prop_assert_eq!((m.mono, m.epi), (inst.func(f).is_injective(), inst.func(f).is_surjective()));
    }

    #[test]
    fn suite_verdicts_ignore_object_order(seed in any::<u64>()) {
        let inst = finset(2).unwrap();
        let model = inst.model();
        let mut objects = model.objects();
        // a seeded rotation and swap
        let k = (seed as usize) % objects.len();
        objects.rotate_left(k);
        if seed & 1 == 1 {
            objects.reverse();
        }
        let s = suite("product").unwrap();
        let plain = run_suite(&Target::new(&model), &s, &Bounds::unbounded()).unwrap();
        let mut shuffled = Target::new(&model);
        shuffled.objects = Some(objects);
        let other = run_suite(&shuffled, &s, &Bounds::unbounded()).unwrap();
        for (a, b) in plain.entries.iter().zip(&other.entries) {
            prop_assert_eq!((&a.label, a.status, a.checked), (&b.label, b.status, b.checked));
        }
    }

    #[test]
    fn kleisli_lifting_laws(a in 0u32..=3, b in 0u32..=3, c in 0u32..=3, s1 in any::<u64>(), s2 in any::<u64>()) {
        let s = Sets::new(4);
        let table = |dom: u32, cod: u32, seed: u64| Func::from_fn(dom, cod + 1, |x| ((seed >> (3 * x)) % (cod as u64 + 1)) as u32);
        let (f, g) = (table(a, b, s1), table(b, c, s2));
        // f^# ∘ η = f
        let eta = Maybe.eta(&s, &a).unwrap();
        prop_assert_eq!(s.compose(&klift(&s, &Maybe, &b, &f).unwrap(), &eta), Some(f.clone()));
        // (g^# ∘ f)^# = g^# ∘ f^#
        let gs = klift(&s, &Maybe, &c, &g).unwrap();
        let lhs = klift(&s, &Maybe, &c, &s.compose(&gs, &f).unwrap()).unwrap();
        let rhs = s.compose(&gs, &klift(&s, &Maybe, &b, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn generators_cover_non_thin_categories() {
    let c = concrete(&[2], &[(0, 0, 0b0101)]).unwrap();
    assert_eq!(c.hom(ObjId(0), ObjId(0)).len(), 2);
    // edges[1] is 0 ≤ 1, edges[5] is 1 ≤ 2, edges[2] (0 ≤ 2) is off
    let p = poset(3, &[false, true, false, false, false, true, false, false, false]);
    // 0 ≤ 2 comes from transitivity
    assert_eq!(p.num_morphisms(), 6);
}
