//! One function per subcommand, each returning a [`Report`].

use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use catkernel::analysis::{category_profile, classify_morphism, classify_object};
use catkernel::catspec::{build_functor, parse};
use catkernel::fibration::{codomain_fibration, predicate_fibration, profile};
use catkernel::instances::zoo::{zoo, zoo_entry};
use catkernel::instances::{finset, SetMonad, Sets};
use catkernel::lawcheck::{run_suite, suite, Bounds, Target, SUITE_NAMES};
use catkernel::model::Monad;
use catkernel::monad::{
    conjecture_probe, em_category, em_product, em_terminal, enumerate_algebras, external_exponent, internal_exponent, show_algebra, Algebra, AlgebraOf,
};
use catkernel::slice::{is_lcc, slice_ccc, SliceContext};
use catkernel::structures::{choose_cartesian_structure, has_all_equalizers, has_all_pullbacks};
use catkernel::{FinCategory, ObjId};

use crate::input::{load_error, load_file, read, resolve, Input};
use crate::{CliError, Report};

fn obj_names(c: &FinCategory) -> Vec<&str> {
    c.objects().map(|a| c.obj_name(a)).collect()
}

pub fn validate(path: &str) -> Result<Report, CliError> {
    let (text, c) = load_file(path)?;
    let spec = parse(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    let entry = zoo_entry(path, &text);
    let mismatches: Vec<&str> = entry.mismatches();
    let composable = c.morphisms().map(|f| c.out_of(c.cod(f)).len()).sum::<usize>();
    let value = json!({
        "input": path,
        "objects": c.num_objects(),
        "morphisms": c.num_morphisms(),
        "composable_pairs": composable,
        "functor_blocks": spec.functors.iter().map(|f| f.name.clone()).collect::<Vec<_>>(),
        "annotations": entry.expected.len(),
        "annotation_mismatches": mismatches,
    });
    let ok = mismatches.is_empty();
    Ok(Report::new("validate", value, ok))
}

pub fn analyze(spec: &str) -> Result<Report, CliError> {
    let input = resolve(spec)?;
    let c = input.cat();
    let p = category_profile(c);
    let name = |a: Option<ObjId>| a.map(|a| c.obj_name(a).to_string());
    let morphisms: Vec<Value> = c
        .morphisms()
        .map(|f| {
            let m = classify_morphism(c, f);
            json!({
                "name": c.mor_name(f),
                "dom": c.obj_name(c.dom(f)),
                "cod": c.obj_name(c.cod(f)),
                "mono": m.mono,
                "epi": m.epi,
                "iso": m.iso,
                "section": m.section,
                "retraction": m.retraction,
                "bimorphism_not_iso": m.bimorphism && !m.iso,
            })
        })
        .collect();
    let objects: Vec<Value> = c
        .objects()
        .map(|a| {
            let o = classify_object(c, a);
            json!({"name": c.obj_name(a), "terminal": o.terminal, "initial": o.initial, "strict_initial": o.strict_initial, "zero": o.zero})
        })
        .collect();
    let value = json!({
        "input": spec,
        "discrete": p.discrete,
        "preorder": p.preorder,
        "pointed": p.pointed,
        "well_pointed": p.well_pointed,
        "terminal": name(p.terminal),
        "zero_object": name(p.zero_object),
        "unseparated": p.unseparated.map(|(f, g)| [c.mor_name(f), c.mor_name(g)]),
        "objects": objects,
        "morphisms": morphisms,
    });
    Ok(Report::new("analyze", value, true))
}

pub fn limits(spec: &str) -> Result<Report, CliError> {
    let input = resolve(spec)?;
    let c = input.cat();
    let s = choose_cartesian_structure(c);
    let (o, m) = (|a: ObjId| c.obj_name(a).to_string(), |f| c.mor_name(f).to_string());
    let products: Vec<Value> =
        s.products.values().map(|w| json!({"left": o(w.left), "right": o(w.right), "apex": o(w.apex), "pi1": m(w.pi1), "pi2": m(w.pi2)})).collect();
    let exponentials: Vec<Value> = s
        .exponentials
        .values()
        .map(|x| json!({"arg": o(x.arg), "target": o(x.target), "object": o(x.object), "eval": m(x.eval), "complete": x.complete}))
        .collect();
    let n = c.num_objects();
    let value = json!({
        "input": spec,
        "terminal": s.terminal.as_ref().map(|t| o(t.object)),
        "products": products,
        "products_missing": n * n - s.products.len(),
        "exponentials": exponentials,
        "has_finite_products": s.has_finite_products,
        "is_ccc": s.is_ccc,
        "all_pullbacks": has_all_pullbacks(c),
        "all_equalizers": has_all_equalizers(c),
    });
    Ok(Report::new("limits", value, true))
}

pub fn slice(spec: &str, base: Option<&str>) -> Result<Report, CliError> {
    let input = resolve(spec)?;
    let ctx = match &input {
        Input::FinSet(inst) => SliceContext::finset(inst.clone()),
        Input::Cat(c) => SliceContext::new(c.clone()),
    };
    let err = |e: catkernel::slice::SliceError| CliError::Input(e.to_string());
    if let Some(b) = base {
        let a = ctx.base.obj_by_name(b).ok_or_else(|| CliError::Usage(format!("no object {b} in {spec}")))?;
        let r = slice_ccc(&ctx, a).map_err(err)?;
        let ok = r.failures.is_empty();
        let mut value = serde_json::to_value(&r).expect("serializable");
        value["input"] = json!(spec);
        return Ok(Report::new("slice", value, ok));
    }
    let mut slices = Vec::new();
    let mut ok = true;
    for a in ctx.base.objects() {
        let r = slice_ccc(&ctx, a).map_err(err)?;
        ok &= r.failures.is_empty();
        slices.push(r);
    }
    let lcc = is_lcc(&ctx).map_err(err)?;
    ok &= lcc.agree;
    let value = json!({"input": spec, "slices": slices, "lcc": lcc});
    Ok(Report::new("slice", value, ok))
}

pub struct FibArgs<'a> {
    pub total: Option<&'a str>,
    pub base: Option<&'a str>,
    pub functor: Option<&'a str>,
    pub codomain: Option<&'a str>,
    pub predicates: Option<u32>,
}

pub fn fib(args: FibArgs) -> Result<Report, CliError> {
    let (label, p) = if let Some(spec) = args.codomain {
        let input = resolve(spec)?;
        let p = codomain_fibration(input.cat()).map_err(|e| CliError::Input(e.to_string()))?;
        (format!("cod over {spec}"), p)
    } else if let Some(n) = args.predicates {
        let inst = finset(n).map_err(|e| CliError::Input(e.to_string()))?;
        (format!("predicates over finset:{n}"), predicate_fibration(&inst).map_err(|e| CliError::Input(e.to_string()))?)
    } else {
        let (Some(total), Some(base)) = (args.total, args.base) else {
            return Err(CliError::Usage("fib needs TOTAL and BASE catspec files, --codomain or --predicates".into()));
        };
        let text = read(total)?;
        let spec = parse(&text).map_err(|e| CliError::Input(format!("{total}: {e}")))?;
        let block = match args.functor {
            Some(name) => spec.functors.iter().find(|f| f.name == name),
            None if spec.functors.len() == 1 => spec.functors.first(),
            None => return Err(CliError::Usage(format!("{total} has {} functor blocks; pick one with --functor", spec.functors.len()))),
        }
        .ok_or_else(|| CliError::Usage(format!("no such functor block in {total}")))?;
        let e = Arc::new(catkernel::catspec::load_category(&text).map_err(|e| load_error(total, e))?);
        let b = Arc::new(load_file(base)?.1);
        let p = build_functor(block, e, b).map_err(|e| CliError::Input(format!("functor {}: {e}", block.name)))?;
        (format!("{} from {total} to {base}", block.name), p)
    };
    let prof = profile(&p).map_err(|e| CliError::Input(e.to_string()))?;
    let ok = prof.lemma_agrees != Some(false);
    let mut value = serde_json::to_value(&prof).expect("serializable");
    value["input"] = json!(label);
    Ok(Report::new("fib", value, ok))
}

fn parse_monad(name: &str) -> Result<SetMonad, CliError> {
    SetMonad::parse(name).map_err(|e| CliError::Usage(e.to_string()))
}

fn algebras(s: &Sets, t: &dyn Monad<Sets>, sizes: std::ops::RangeInclusive<u32>) -> Vec<AlgebraOf<Sets>> {
    sizes.flat_map(|n| enumerate_algebras(s, t, &n).unwrap_or_default().into_iter().map(move |f| Algebra::new(n, f))).collect()
}

pub fn monad(name: &str, max_size: u32) -> Result<Report, CliError> {
    let m = parse_monad(name)?;
    let t = m.as_monad();
    let s = Sets::new(max_size);
    let err = |e: catkernel::monad::MonadError| CliError::Input(e.to_string());
    let carriers: Vec<u32> = (0..=max_size).collect();
    let em = em_category(&s, t, &carriers).map_err(err)?;
    let census: Vec<Value> = em.census().into_iter().map(|(n, k)| json!({"carrier": n, "algebras": k})).collect();
    let mut ok = true;

    let term = em_terminal(&s, t, &em).map_err(err)?;
    ok &= term.verified() && term.agrees();
    let terminal = json!({"algebra": show_algebra(&s, &term.algebra), "verified": term.verified(), "agrees_with_search": term.agrees()});

    let mut products = Vec::new();
    for a in &em.algebras {
        for b in &em.algebras {
            if a.carrier * b.carrier > max_size {
                continue;
            }
            let p = em_product(&s, t, &em, a, b).map_err(err)?;
            ok &= p.verified() && p.agrees() != Some(false);
            products.push(json!({
                "left": show_algebra(&s, a),
                "right": show_algebra(&s, b),
                "verified": p.verified(),
                "agrees_with_search": p.agrees(),
                "diagonal_hom": p.diagonal_hom,
            }));
        }
    }

    let small = max_size.min(2);
    let mut internal = Vec::new();
    for b in 0..=small {
        for a in algebras(&s, t, 1..=small) {
            let x = internal_exponent(&s, t, &b, &a).map_err(err)?;
            ok &= x.verified();
            internal.push(json!({"base": b, "algebra": show_algebra(&s, &a), "al1": x.al1, "al2": x.al2, "verified": x.verified()}));
        }
    }

    let mut external = Vec::new();
    let algs = algebras(&s, t, 0..=small);
    for a in &algs {
        for b in &algs {
            let x = external_exponent(&s, t, a, b).map_err(err)?;
            for c in 0..=max_size {
                let check = x.bijection(&s, t, &c).ok_or_else(|| CliError::Input("bijection check exceeded the hom cap".into()))?;
                ok &= check.exact();
                external.push(json!({
                    "c": c,
                    "a": show_algebra(&s, a),
                    "b": show_algebra(&s, b),
                    "ahom": check.ahom,
                    "hom": check.hom,
                    "exact": check.exact(),
                }));
            }
        }
    }

    let mut probe = Vec::new();
    let inhabited: Vec<_> = algs.iter().filter(|a| a.carrier > 0).collect();
    for c in 0..=small {
        for a in &inhabited {
            for b in &inhabited {
                let row = conjecture_probe(&s, t, &c, a, b).map_err(err)?;
                probe.push(json!({"c": c, "a": show_algebra(&s, a), "b": show_algebra(&s, b), "lhs": row.lhs, "rhs": row.rhs, "equal": row.equal()}));
            }
        }
    }

    let value = json!({
        "monad": t.name(),
        "max_size": max_size,
        "census": census,
        "em_terminal": terminal,
        "em_products": products,
        "internal_exponents": internal,
        "external_exponents": external,
        "conjecture_probe": probe,
    });
    Ok(Report::new("monad", value, ok))
}

pub fn laws(name: &str, max_size: u32, monad: &str, bound: Option<u64>, deadline: Option<Instant>) -> Result<Report, CliError> {
    if !SUITE_NAMES.contains(&name) {
        return Err(CliError::Usage(format!("unknown suite {name}; one of {}", SUITE_NAMES.join(", "))));
    }
    let s = suite(name).map_err(|e| CliError::Input(e.to_string()))?;
    let bounds = Bounds { max_instances: bound, deadline };
    let needs_monad = s.laws.iter().any(|l| l.needs_monad());
    let (instance, report) = if needs_monad {
        let m = parse_monad(monad)?;
        let sets = Sets::new(max_size);
        let target = Target::with_monad(&sets, m.as_monad());
        (format!("{} on sets of size <= {max_size}", m.as_monad().name()), run_suite(&target, &s, &bounds))
    } else {
        let inst = finset(max_size).map_err(|e| CliError::Input(e.to_string()))?;
        let model = inst.model();
        (format!("finset:{max_size}"), run_suite(&Target::new(&model), &s, &bounds))
    };
    let report = report.map_err(|e| CliError::Input(e.to_string()))?;
    let ok = report.no_failures();
    let value = json!({"suite": name, "instance": instance, "entries": report.entries});
    Ok(Report::new("laws", value, ok))
}

pub fn zoo_cmd(name: Option<&str>) -> Result<Report, CliError> {
    let entries: Vec<_> = zoo().into_iter().filter(|e| name.is_none_or(|n| e.name == n)).collect();
    if let (Some(n), true) = (name, entries.is_empty()) {
        return Err(CliError::Usage(format!("no zoo entry {n}")));
    }
    let ok = entries.iter().all(|e| e.verified());
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "objects": obj_names(&e.category),
                "morphisms": e.category.num_morphisms(),
                "verified": e.verified(),
                "mismatches": e.mismatches(),
            })
        })
        .collect();
    Ok(Report::new("zoo", json!({"entries": rows}), ok))
}
