use std::sync::Arc;

use catkernel::analysis::{is_cartesian, is_iso};
use catkernel::catspec::{build_functor, load_category, parse};
use catkernel::construct::{arrow_category, find_isomorphism};
use catkernel::fibration::*;
use catkernel::functor::FunctorData;
use catkernel::instances::finset;
use catkernel::instances::zoo::zoo_by_name;
use catkernel::slice::{composition_functor, pullback_object, SliceContext};
use catkernel::FinCategory;

fn codomain_cases() -> Vec<(&'static str, Arc<FinCategory>, SliceContext)> {
    let arrow = zoo_by_name("walking_arrow").unwrap().category;
    let one = Arc::new(finset(1).unwrap());
    vec![("walking_arrow", arrow.clone(), SliceContext::new(arrow)), ("finset1", one.cat.clone(), SliceContext::finset(one))]
}

#[test]
fn codomain_fibres_are_slices_and_reindexing_is_pullback() {
    for (name, base, ctx) in codomain_cases() {
        let arrows = arrow_category(&base).unwrap();
        let p = arrows.codomain_functor();
        assert!(is_fibration(&p), "{name}");
        let cl = make_cleavage(&p).unwrap();
        for z in base.objects() {
            let f = &cl.fibres[z.idx()];
            let s = ctx.slice(z).unwrap();
            assert!(find_isomorphism(&f.cat, &s.cat).is_some(), "{name}: fibre over {}", base.obj_name(z));
            // the fibre object for `x → Z` is the slice object `x → Z`
            for (i, &e) in f.objects.iter().enumerate() {
                assert!(s.object_of(arrows.objects[e.idx()]).is_some(), "{name} fibre object {i}");
            }
        }
        for u in base.morphisms() {
            let r = reindex(&cl, u).unwrap();
            let (src, tgt) = (&cl.fibres[base.cod(u).idx()], &cl.fibres[base.dom(u).idx()]);
            let (sj, si) = (ctx.slice(base.cod(u)).unwrap(), ctx.slice(base.dom(u)).unwrap());
            for (i, &e) in src.objects.iter().enumerate() {
                let y = sj.object_of(arrows.objects[e.idx()]).unwrap();
                let pulled = pullback_object(&ctx, u, y).unwrap();
                let lifted = si.object_of(arrows.objects[tgt.objects[r.obj_map[i].idx()].idx()]).unwrap();
                assert!(si.cat.hom(pulled, lifted).iter().any(|&h| is_iso(&si.cat, h)), "{name}: reindexing along {}", base.mor_name(u));
            }
        }
    }
}

#[test]
fn codomain_over_truncated_finsets_lacks_a_lifting() {
    let inst = finset(2).unwrap();
    let p = codomain_fibration(&inst.cat).unwrap();
    let (u, y) = missing_lifting(&p).expect("2 x_1 2 has four elements");
    assert_eq!(inst.size(p.target.dom(u)), 2);
    assert_eq!(inst.size(p.obj(y)), 1);
    assert!(matches!(make_cleavage(&p), Err(FibrationError::NotAFibration { .. })));
    let prof = profile(&p).unwrap();
    assert!(!prof.fibration && prof.split.is_none() && prof.products.is_none());
}

#[test]
fn codomain_over_walking_arrow_is_split_with_fibred_structure() {
    let base = zoo_by_name("walking_arrow").unwrap().category;
    let p = codomain_fibration(&base).unwrap();
    let cl = make_cleavage(&p).unwrap();
    // posets have unique liftings, so any choice is split
    assert!(cl.split());
    let fs = fibred_structure(&cl).unwrap();
    assert!(fs.fibred_terminal && fs.fibred_product && fs.fibred_exponent, "{fs:?}");
    let prod = fibration_products(&cl, None).unwrap();
    assert_eq!(prod.product_adjoints, Some(true));
}

fn lemma_cases() -> Vec<(&'static str, FunctorData)> {
    let mut cases = Vec::new();
    for name in ["one", "walking_arrow", "walking_iso", "c2", "parallel_pair", "square"] {
        let c = zoo_by_name(name).unwrap().category;
        cases.push((name, FunctorData::identity(c.clone())));
        cases.push((name, to_point(c).unwrap()));
    }
    for (name, base, _) in codomain_cases() {
        cases.push((name, codomain_fibration(&base).unwrap()));
    }
    cases.push(("predicates1", predicate_fibration(&finset(1).unwrap()).unwrap()));
    cases.push(("predicates2", predicate_fibration(&finset(2).unwrap()).unwrap()));
    cases
}

#[test]
fn faithful_iff_preorder_fibres() {
    let mut seen = (false, false);
    for (name, p) in lemma_cases() {
        let cl = make_cleavage(&p).unwrap_or_else(|e| panic!("{name}: {e}"));
        let r = check_faithful_preorder_lemma(&cl).unwrap();
        assert!(r.agree && r.factorizations, "{name}: {r:?}");
        if r.faithful {
            seen.0 = true;
        } else {
            seen.1 = true;
        }
    }
    assert_eq!(seen, (true, true), "both sides of the lemma are exercised");
}

#[test]
fn predicates_form_a_bifibration_with_fibred_heyting_structure() {
    let inst = finset(1).unwrap();
    let p = predicate_fibration(&inst).unwrap();
    let prof = profile(&p).unwrap();
    assert!(prof.bifibration && prof.faithful && prof.partial_order);
    assert_eq!(prof.split, Some(true));
    assert_eq!((prof.fibred_terminal, prof.fibred_product, prof.fibred_exponent), (Some(true), Some(true), Some(true)));
    // no Ω = 2 within sizes ≤ 1, so no generic object
    assert!(prof.generic_objects.iter().all(|g| !g.generic));
    assert_eq!(prof.polymorphic, Some(false));
    let products = prof.products.unwrap();
    assert_eq!(products.product_adjoints, Some(true));
    assert_eq!(products.simple_product_adjoints, Some(true));
    assert_eq!(products.simple_omega_product, None);

    let inst = finset(2).unwrap();
    let prof = profile(&predicate_fibration(&inst).unwrap()).unwrap();
    assert!(prof.generic_objects.iter().any(|g| g.generic && g.split_generic == Some(true)));
    assert_eq!(prof.fibred_exponent, Some(true));
}

#[test]
fn opreindexing_along_maps_is_direct_image() {
    let inst = finset(2).unwrap();
    let p = predicate_fibration(&inst).unwrap();
    let cl = make_opcleavage(&p).unwrap();
    let e = &p.source;
    for u in p.target.morphisms() {
        let r = opreindex(&cl, u).unwrap();
        let (src, tgt) = (&cl.fibres[p.target.dom(u).idx()], &cl.fibres[p.target.cod(u).idx()]);
        for (i, &x) in src.objects.iter().enumerate() {
            let image = e.obj_name(tgt.objects[r.obj_map[i].idx()]);
            let bits = e.obj_name(x).split(':').nth(1).unwrap();
            let mut expected = vec!['0'; inst.size(p.target.cod(u)) as usize];
            for (k, b) in bits.chars().enumerate() {
                if b == '1' {
                    expected[inst.table(u)[k] as usize] = '1';
                }
            }
            assert_eq!(image.split(':').nth(1).unwrap(), expected.into_iter().collect::<String>());
        }
    }
    assert!(matches!(reindex(&cl, p.target.morphisms().next().unwrap()), Err(FibrationError::WrongVariance)));
}

fn fork() -> FunctorData {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");
    let total_text = std::fs::read_to_string(format!("{root}/fib/fork.catspec")).unwrap();
    let base_text = std::fs::read_to_string(format!("{root}/zoo/walking_arrow.catspec")).unwrap();
    let total = Arc::new(load_category(&total_text).unwrap());
    let base = Arc::new(load_category(&base_text).unwrap());
    let spec = parse(&total_text).unwrap();
    build_functor(&spec.functors[0], total, base).unwrap()
}

#[test]
fn a_fibre_without_terminal_blocks_structure_and_adjoints() {
    let p = fork();
    let cl = make_cleavage(&p).unwrap();
    let fs = fibred_structure(&cl).unwrap();
    assert!(!fs.fibred_terminal && !fs.fibred_product, "{fs:?}");
    let over_b = fs.fibres.iter().find(|f| f.over == "b").unwrap();
    assert_eq!((over_b.objects, over_b.terminal, over_b.products), (2, false, false));
    let products = fibration_products(&cl, None).unwrap();
    assert_eq!(products.product_adjoints, Some(false));
    assert_eq!(products.beck_chevalley, "unchecked");
}

#[test]
fn parallel_fibre_over_a_point_lacks_products() {
    let p = to_point(zoo_by_name("parallel_pair").unwrap().category).unwrap();
    let fs = fibred_structure(&make_cleavage(&p).unwrap()).unwrap();
    assert!(!fs.fibred_product && !fs.fibred_terminal);
}

#[test]
fn identity_fibration_has_product_adjoints() {
    let c = zoo_by_name("walking_arrow").unwrap().category;
    let cl = make_cleavage(&FunctorData::identity(c)).unwrap();
    let r = fibration_products(&cl, None).unwrap();
    assert_eq!((r.product_adjoints, r.simple_product_adjoints), (Some(true), Some(true)));
}

#[test]
fn codomain_over_truncated_finsets_is_not_faithful_and_has_no_strong_generic() {
    let inst = finset(2).unwrap();
    let p = codomain_fibration(&inst.cat).unwrap();
    let prof = profile(&p).unwrap();
    assert!(!prof.faithful && !prof.partial_order);
    assert!(prof.generic_objects.iter().all(|g| !g.strong_generic));
    assert!(prof.generic_objects.iter().all(|g| g.split_generic.is_none()));
}

#[test]
fn codomain_opreindexing_is_composition() {
    let inst = Arc::new(finset(2).unwrap());
    let ctx = SliceContext::finset(inst.clone());
    let arrows = arrow_category(&inst.cat).unwrap();
    let p = arrows.codomain_functor();
    assert!(is_opfibration(&p));
    let cl = make_opcleavage(&p).unwrap();
    for u in inst.cat.morphisms() {
        let r = opreindex(&cl, u).unwrap();
        let sigma = composition_functor(&ctx, u).unwrap();
        let (src, tgt) = (&cl.fibres[inst.cat.dom(u).idx()], &cl.fibres[inst.cat.cod(u).idx()]);
        let (si, sj) = (ctx.slice(inst.cat.dom(u)).unwrap(), ctx.slice(inst.cat.cod(u)).unwrap());
        for (i, &e) in src.objects.iter().enumerate() {
            let x = si.object_of(arrows.objects[e.idx()]).unwrap();
            let ours = sj.object_of(arrows.objects[tgt.objects[r.obj_map[i].idx()].idx()]).unwrap();
            assert!(sj.cat.hom(sigma.obj(x), ours).iter().any(|&h| is_iso(&sj.cat, h)));
        }
    }
}

#[test]
fn cartesian_liftings_are_unique_up_to_vertical_iso() {
    for (name, p) in lemma_cases().into_iter().chain([("fork", fork())]) {
        let cl = make_cleavage(&p).unwrap();
        let e = &p.source;
        for (&(u, y), &l) in &cl.lifts {
            assert!(is_cartesian(&p, l));
            for &f in e.incoming(y).iter().filter(|&&f| p.mor(f) == u && is_cartesian(&p, f)) {
                let vertical = p.target.id(p.target.dom(u));
                let found = e.hom(e.dom(f), e.dom(l)).iter().any(|&h| p.mor(h) == vertical && is_iso(e, h) && e.comp(l, h) == f);
                assert!(found, "{name}: {} vs {}", e.mor_name(f), e.mor_name(l));
            }
        }
    }
}
