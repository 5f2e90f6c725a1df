//! The nine acceptance criteria, one verdict line each.
//!
//! Every criterion is evaluated even when an earlier one fails; the single
//! test asserts at the end so the whole table is always printed.

use std::sync::Arc;
use std::time::{Duration, Instant};

use catkernel::analysis::{check_adjunction, classify_morphism, is_iso};
use catkernel::construct::{arrow_category, find_isomorphism};
use catkernel::fibration::*;
use catkernel::functor::FunctorData;
use catkernel::instances::zoo::zoo_by_name;
use catkernel::instances::{finset, Maybe, Monoid, Sets, Writer};
use catkernel::lawcheck::{run_suite, suite, Bounds, Target};
use catkernel::model::Monad;
use catkernel::monad::*;
use catkernel::slice::finsets::check_triple;
use catkernel::slice::*;
use catkernel::{LawReport, LawStatus};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn from(problems: Vec<String>, summary: String) -> Self {
        if problems.is_empty() {
            Verdict { ok: true, detail: summary }
        } else {
            Verdict { ok: false, detail: format!("{summary}; {}", problems.join("; ")) }
        }
    }
}

fn within(start: Instant, limit: Duration, problems: &mut Vec<String>) -> String {
    let took = start.elapsed();
    if took > limit {
        problems.push(format!("took {took:.1?}, budget {limit:?}"));
    }
    format!("{took:.1?}")
}

/// Entries must pass, except the listed as-printed variants which must be
/// flagged; a failure without a binding is itself a problem.
fn judge(report: &LawReport, suspects: &[&str], problems: &mut Vec<String>) -> usize {
    for e in &report.entries {
        let expected = if suspects.contains(&e.label.as_str()) { LawStatus::SuspectedTypo } else { LawStatus::Pass };
        if e.status != expected {
            problems.push(format!("{}/{} is {:?} (checked {})", report.suite, e.label, e.status, e.checked));
        }
        if e.status == LawStatus::Fail && e.counterexample.as_ref().is_none_or(|c| c.binding.is_empty()) {
            problems.push(format!("{}/{} failed without a binding", report.suite, e.label));
        }
    }
    report.entries.iter().map(|e| e.checked as usize).sum()
}

fn cheat_sheet_suites() -> Verdict {
    let start = Instant::now();
    let mut problems = Vec::new();
    let inst = finset(3).unwrap();
    let model = inst.model();
    let target = Target::new(&model);
    let product = run_suite(&target, &suite("product").unwrap(), &Bounds::unbounded()).unwrap();
    let assoc = run_suite(&target, &suite("assoc").unwrap(), &Bounds::unbounded()).unwrap();
    let mut checked = judge(&product, &["sdef-printed", "p16-printed"], &mut problems);
    checked += judge(&assoc, &[], &mut problems);
    let inst4 = finset(4).unwrap();
    let model4 = inst4.model();
    let exponent = run_suite(&Target::new(&model4), &suite("exponent").unwrap(), &Bounds::unbounded()).unwrap();
    checked += judge(&exponent, &[], &mut problems);
    let took = within(start, Duration::from_secs(60), &mut problems);
    let n = product.entries.len() + assoc.entries.len() + exponent.entries.len();
    Verdict::from(problems, format!("{n} equations, {checked} bindings, {took}"))
}

fn monad_suites() -> Verdict {
    let start = Instant::now();
    let mut problems = Vec::new();
    let s = Sets::new(3);
    let c2 = Writer { monoid: Monoid::c2() };
    let mut checked = 0;
    for t in [&Maybe as &dyn Monad<Sets>, &c2] {
        let target = Target::with_monad(&s, t);
        let monad = run_suite(&target, &suite("monad").unwrap(), &Bounds::unbounded()).unwrap();
        checked += judge(&monad, &["m5"], &mut problems);
        match monad.entry("m5") {
            Some(m5) if m5.ill_typed > 0 && m5.note.as_deref().is_some_and(|n| n.starts_with("as printed")) => {}
            other => problems.push(format!("{}: m5 caveat not reported: {other:?}", t.name())),
        }
        for name in ["strength", "algebra"] {
            let r = run_suite(&target, &suite(name).unwrap(), &Bounds::unbounded()).unwrap();
            checked += judge(&r, &[], &mut problems);
        }
    }
    let took = within(start, Duration::from_secs(30), &mut problems);
    Verdict::from(problems, format!("Maybe and writer-C2, {checked} bindings, m5 flagged as printed, {took}"))
}

fn slice_ccc_finset3() -> Verdict {
    let start = Instant::now();
    let mut problems = Vec::new();
    let inst = Arc::new(finset(3).unwrap());
    let ctx = SliceContext::finset(inst.clone());
    let (mut products, mut exponentials) = (0, 0);
    for a in ctx.base.objects() {
        let name = ctx.base.obj_name(a);
        let t = slice_terminal(&ctx, a).unwrap();
        let s = ctx.slice(a).unwrap();
        if s.structure(t.object) != ctx.base.id(a) {
            problems.push(format!("terminal over {name} is not the identity"));
        }
        let r = slice_ccc(&ctx, a).unwrap();
        if !r.terminal || !r.failures.is_empty() {
            problems.push(format!("over {name}: {:?}", r.failures));
        }
        if r.products_valid != r.product_pairs || r.orientations_isomorphic != r.product_pairs {
            problems.push(format!(
                "over {name}: {} of {} products valid, {} orientations isomorphic",
                r.products_valid, r.product_pairs, r.orientations_isomorphic
            ));
        }
        if !(r.apex_is_pullback_apex && r.eval_domain_matches && r.sigma_pullback_is_times) {
            problems.push(format!("over {name}: exponential shape {r:?}"));
        }
        products += r.products_valid;
        exponentials += r.exponentials_valid;
    }
    let lcc = is_lcc(&ctx).unwrap();
    if !lcc.agree {
        problems.push(format!("lcc clauses disagree: {lcc:?}"));
    }
    let took = within(start, Duration::from_secs(120), &mut problems);
    Verdict::from(problems, format!("{products} products and {exponentials} exponentials validated, lcc clauses agree ({}), {took}", lcc.lcc))
}

fn adjoint_triples() -> Verdict {
    let mut problems = Vec::new();
    let inst = Arc::new(finset(2).unwrap());
    let mut element_checks = 0;
    for f in inst.cat.morphisms() {
        let r = check_triple(inst.func(f), 2);
        element_checks += r.checks;
        if !r.holds() {
            problems.push(format!("finset(2) {}: {:?}", r.f, r.failures));
        }
    }
    let (mut sigma, mut pi) = (0, 0);
    let arrow = zoo_by_name("walking_arrow").unwrap().category;
    for ctx in [SliceContext::new(arrow), SliceContext::finset(inst.clone())] {
        for f in ctx.base.morphisms() {
            // table-level functors exist only where every pullback along f does
            let Ok(triple) = adjoint_triple(&ctx, f) else { continue };
            sigma += 1;
            if !triple.report.sigma_adjunction || !check_adjunction(&triple.sigma) {
                problems.push(format!("Σ ⊣ f* fails along {}", ctx.base.mor_name(f)));
            }
            if let Some(adj) = &triple.pi {
                pi += 1;
                if !check_adjunction(adj) {
                    problems.push(format!("f* ⊣ Π fails along {}", ctx.base.mor_name(f)));
                }
            }
            if ctx.base.num_objects() == 2 && !triple.report.holds() {
                problems.push(format!("walking arrow triple along {}: {:?}", ctx.base.mor_name(f), triple.report));
            }
        }
    }
    Verdict::from(problems, format!("{element_checks} element-level checks over finset(2), {sigma} table-level Σ ⊣ f* and {pi} f* ⊣ Π exact"))
}

fn fibrations() -> Verdict {
    let mut problems = Vec::new();
    let inst = Arc::new(finset(2).unwrap());
    let ctx = SliceContext::finset(inst.clone());
    let arrows = arrow_category(&inst.cat).unwrap();
    let p = arrows.codomain_functor();

    // the literal claim
    if let Some((u, y)) = missing_lifting(&p) {
        let f = arrows.objects[y.idx()];
        problems.push(format!("cod on finset(2) arrows is not a fibration: no cartesian lifting of {} at {}", inst.cat.mor_name(u), inst.cat.mor_name(f)));
    }

    // fibres are slices, for every Z
    for z in inst.cat.objects() {
        let fib = fibre(&p, z).unwrap();
        if find_isomorphism(&fib.cat, &ctx.slice(z).unwrap().cat).is_none() {
            problems.push(format!("fibre over {} is not the slice", inst.cat.obj_name(z)));
        }
    }

    // each lifting exists exactly when the pullback does, and then its domain is the pulled-back object
    let mut liftings = 0;
    for u in inst.cat.morphisms() {
        let (i, j) = (inst.cat.dom(u), inst.cat.cod(u));
        let (si, sj) = (ctx.slice(i).unwrap(), ctx.slice(j).unwrap());
        for &y in fibre(&p, j).unwrap().objects.iter() {
            let fy = arrows.objects[y.idx()];
            let lifting = cartesian_lifting(&p, u, y);
            let pulled = pullback_object(&ctx, u, sj.object_of(fy).unwrap()).ok();
            match (lifting, pulled) {
                (Some(l), Some(x)) => {
                    liftings += 1;
                    let ours = si.object_of(arrows.objects[p.source.dom(l).idx()]).unwrap();
                    if !si.cat.hom(x, ours).iter().any(|&h| is_iso(&si.cat, h)) {
                        problems.push(format!("lifting of {} at {} is not the pullback", inst.cat.mor_name(u), inst.cat.mor_name(fy)));
                    }
                }
                (None, None) => {}
                (l, x) => problems.push(format!("lifting {l:?} vs pullback {x:?} along {}", inst.cat.mor_name(u))),
            }
        }
    }

    // whole reindexing functors against the slice pullback functor, where cod is a fibration
    let one = Arc::new(finset(1).unwrap());
    let arrow = zoo_by_name("walking_arrow").unwrap().category;
    let mut fibrations: Vec<(String, FunctorData)> = Vec::new();
    for (name, ctx) in [("walking arrow", SliceContext::new(arrow.clone())), ("finset(1)", SliceContext::finset(one.clone()))] {
        let arrows = arrow_category(&ctx.base).unwrap();
        let p = arrows.codomain_functor();
        let cl = make_cleavage(&p).unwrap();
        for u in ctx.base.morphisms() {
            let r = reindex(&cl, u).unwrap();
            let pb = pullback_functor(&ctx, u).unwrap();
            let (src, tgt) = (&cl.fibres[ctx.base.cod(u).idx()], &cl.fibres[ctx.base.dom(u).idx()]);
            let (sj, si) = (ctx.slice(ctx.base.cod(u)).unwrap(), ctx.slice(ctx.base.dom(u)).unwrap());
            for (k, &e) in src.objects.iter().enumerate() {
                let y = sj.object_of(arrows.objects[e.idx()]).unwrap();
                let ours = si.object_of(arrows.objects[tgt.objects[r.obj_map[k].idx()].idx()]).unwrap();
                if !si.cat.hom(pb.obj(y), ours).iter().any(|&h| is_iso(&si.cat, h)) {
                    problems.push(format!("{name}: reindexing along {} differs from pullback", ctx.base.mor_name(u)));
                }
            }
        }
        fibrations.push((format!("cod on {name}"), p));
    }

    // the lemma on every fibration in the set
    for zoo in ["one", "walking_arrow", "c2", "square"] {
        let c = zoo_by_name(zoo).unwrap().category;
        fibrations.push((format!("identity on {zoo}"), FunctorData::identity(c.clone())));
        fibrations.push((format!("{zoo} over a point"), to_point(c).unwrap()));
    }
    fibrations.push(("predicates on finset(2)".into(), predicate_fibration(&inst).unwrap()));
    let mut agree = 0;
    for (name, p) in &fibrations {
        match make_cleavage(p).map(|cl| check_faithful_preorder_lemma(&cl)) {
            Ok(Ok(r)) if r.agree && r.factorizations => agree += 1,
            other => problems.push(format!("lemma on {name}: {other:?}")),
        }
    }
    Verdict::from(
        problems,
        format!(
            "fibres ≅ slices over finset(2), {liftings} liftings match pullbacks, reindexing = f* on 2 bases, lemma agrees on {agree} of {} fibrations",
            fibrations.len()
        ),
    )
}

/// Counts Maybe-actions on `n` from the element-level laws, without the model.
fn maybe_census_oracle(n: u32) -> usize {
    let total = (n as u64).pow(n + 1);
    (0..total)
        .filter(|code| {
            let g: Vec<u32> = (0..=n).map(|i| ((code / (n as u64).pow(i)) % n as u64) as u32).collect();
            let unit = (0..n).all(|x| g[x as usize] == x);
            let tg = |z: u32| if z == n + 1 { n } else { g[z as usize] };
            unit && (0..n + 2).all(|z| g[z.min(n) as usize] == g[tg(z) as usize])
        })
        .count()
}

fn em_theorems() -> Verdict {
    let mut problems = Vec::new();
    let s = Sets::new(9);
    // products up to 2 × 2 land inside the enumerated category
    let em = em_category(&s, &Maybe, &[0, 1, 2, 3, 4]).unwrap();
    let census = em.census();
    for n in 0..=3u32 {
        if census[&n] != n as usize || census[&n] != maybe_census_oracle(n) {
            problems.push(format!("census on {n}: {} vs oracle {}", census[&n], maybe_census_oracle(n)));
        }
    }
    let term = em_terminal(&s, &Maybe, &em).unwrap();
    if !(term.verified() && term.agrees()) {
        problems.push(format!("terminal: {term:?}"));
    }
    let (mut compared, mut verified, mut diagonals) = (0, 0, 0);
    let small: Vec<_> = em.algebras.iter().filter(|a| a.carrier <= 3).cloned().collect();
    for a in &small {
        for b in &small {
            let p = em_product(&s, &Maybe, &em, a, b).unwrap();
            if !p.verified() {
                problems.push(format!("{a:?} x {b:?} not a product"));
            }
            verified += 1;
            match p.agrees() {
                Some(true) => compared += 1,
                Some(false) => problems.push(format!("{a:?} x {b:?} disagrees with search")),
                None => {}
            }
            if a == b {
                if p.diagonal_hom == Some(true) {
                    diagonals += 1;
                } else {
                    problems.push(format!("diagonal of {a:?}"));
                }
            }
        }
    }
    Verdict::from(
        problems,
        format!(
            "census 0,1,2,3 matches oracle, terminal agrees, {verified} products verified, {compared} match search, {diagonals} diagonals are homomorphisms"
        ),
    )
}

fn all_algebras(s: &Sets, t: &dyn Monad<Sets>, max: u32) -> Vec<AlgebraOf<Sets>> {
    (0..=max).flat_map(|n| enumerate_algebras(s, t, &n).unwrap().into_iter().map(move |f| Algebra::new(n, f))).collect()
}

fn exponent_structures() -> Verdict {
    let mut problems = Vec::new();
    let s = Sets::new(3);
    let mut internal = 0;
    for b in 0..=2 {
        for a in all_algebras(&s, &Maybe, 2) {
            let x = internal_exponent(&s, &Maybe, &b, &a).unwrap();
            if !(x.al1 && x.al2) {
                problems.push(format!("{b} ⇒* {a:?}: al1 {} al2 {}", x.al1, x.al2));
            }
            internal += 1;
        }
    }
    let mut bijections = 0;
    let c2 = Writer { monoid: Monoid::c2() };
    for t in [&Maybe as &dyn Monad<Sets>, &c2] {
        let algs = all_algebras(&s, t, 2);
        for a in &algs {
            for b in &algs {
                let x = external_exponent(&s, t, a, b).unwrap();
                for c in 0..=3 {
                    let check = x.bijection(&s, t, &c).unwrap();
                    if !check.exact() || check.ahom != check.hom {
                        problems.push(format!("{}: C = {c}, {a:?} ⊸ {b:?}: {check:?}", t.name()));
                    }
                    bijections += 1;
                }
            }
        }
    }
    Verdict::from(problems, format!("{internal} internal exponents satisfy al1/al2, {bijections} Θ/Ω pairs exact"))
}

fn conjecture_probe_table() -> Verdict {
    let s = Sets::new(3);
    let c2 = Writer { monoid: Monoid::c2() };
    let (mut rows, mut equal) = (0, 0);
    let mut problems = Vec::new();
    for t in [&Maybe as &dyn Monad<Sets>, &c2] {
        let algs: Vec<_> = all_algebras(&s, t, 2).into_iter().filter(|a| a.carrier > 0).collect();
        for c in 0..=2 {
            for a in &algs {
                for b in &algs {
                    match conjecture_probe(&s, t, &c, a, b) {
                        Ok(row) => {
                            rows += 1;
                            equal += row.equal() as usize;
                        }
                        Err(e) => problems.push(format!("{}: {e}", t.name())),
                    }
                }
            }
        }
    }
    if rows < 6 {
        problems.push(format!("only {rows} rows"));
    }
    Verdict::from(problems, format!("{rows} rows across Maybe and writer-C2: {equal} equal, {} unequal", rows - equal))
}

fn counterexample_pinning() -> Verdict {
    let mut problems = Vec::new();
    let arrow = zoo_by_name("walking_arrow").unwrap().category;
    let f = arrow.mor_by_name("f").unwrap();
    let m = classify_morphism(&arrow, f);
    if !(m.bimorphism && !m.iso) {
        problems.push(format!("walking arrow f: {m:?}"));
    }
    let inst = finset(3).unwrap();
    for g in inst.cat.morphisms() {
        let m = classify_morphism(&inst.cat, g);
        let func = inst.func(g);
        if m.mono != func.is_injective() || m.epi != func.is_surjective() {
            problems.push(format!("{}: mono {} epi {}", inst.cat.mor_name(g), m.mono, m.epi));
        }
    }
    Verdict::from(
        problems,
        format!("walking arrow f is a bimorphism and not an iso; mono ⇔ injective and epi ⇔ surjective on all {} maps of finset(3)", inst.cat.num_morphisms()),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("cheat-sheet suites", cheat_sheet_suites),
        ("monad suites", monad_suites),
        ("slice cartesian closure", slice_ccc_finset3),
        ("adjoint triple", adjoint_triples),
        ("fibrations", fibrations),
        ("Eilenberg-Moore theorems", em_theorems),
        ("exponent-like structures", exponent_structures),
        ("conjecture probe", conjecture_probe_table),
        ("counterexample pinning", counterexample_pinning),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        println!("criterion {} {}: {name}: {}", i + 1, if v.ok { "PASS" } else { "FAIL" }, v.detail);
        if !v.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
