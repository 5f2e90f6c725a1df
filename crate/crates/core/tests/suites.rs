use std::time::Instant;

use catkernel::instances::{finset, Maybe, Monoid, Sets, Writer};
use catkernel::lawcheck::{run_suite, suite, Bounds, Target};
use catkernel::model::Monad;
use catkernel::{LawReport, LawStatus};

fn assert_passes(report: &LawReport, suspects: &[&str]) {
    for e in &report.entries {
        if suspects.contains(&e.label.as_str()) {
            assert_eq!(e.status, LawStatus::SuspectedTypo, "{e:?}");
        } else {
            assert_eq!(e.status, LawStatus::Pass, "{e:?}");
        }
    }
}

#[test]
fn finset3_product_and_assoc_suites_pass() {
    let inst = finset(3).unwrap();
    let model = inst.model();
    let target = Target::new(&model);
    let start = Instant::now();
    let product = run_suite(&target, &suite("product").unwrap(), &Bounds::unbounded()).unwrap();
    assert_passes(&product, &["sdef-printed", "p16-printed"]);
    let assoc = run_suite(&target, &suite("assoc").unwrap(), &Bounds::unbounded()).unwrap();
    assert_passes(&assoc, &[]);
    eprintln!("finset(3) product+assoc: {:?}", start.elapsed());
    for e in product.entries.iter().chain(&assoc.entries) {
        eprintln!("{:14} {:?} checked={} unavailable={}", e.label, e.status, e.checked, e.unavailable);
    }
}

#[test]
fn finset4_exponent_suite_passes_on_available_exponentials() {
    let inst = finset(4).unwrap();
    let model = inst.model();
    let start = Instant::now();
    let report = run_suite(&Target::new(&model), &suite("exponent").unwrap(), &Bounds::unbounded()).unwrap();
    assert_passes(&report, &[]);
    eprintln!("finset(4) exponent: {:?}", start.elapsed());
    for e in &report.entries {
        eprintln!("{:4} checked={} unavailable={}", e.label, e.checked, e.unavailable);
    }
}

fn monad_suites(t: &dyn Monad<Sets>) {
    let s = Sets::new(3);
    let target = Target::with_monad(&s, t);
    let start = Instant::now();
    let monad = run_suite(&target, &suite("monad").unwrap(), &Bounds::unbounded()).unwrap();
    assert_passes(&monad, &["m5"]);
    let m5 = monad.entry("m5").unwrap();
    assert!(m5.ill_typed > 0 && m5.note.as_deref().unwrap().starts_with("as printed"));
    assert_passes(&run_suite(&target, &suite("strength").unwrap(), &Bounds::unbounded()).unwrap(), &[]);
    assert_passes(&run_suite(&target, &suite("algebra").unwrap(), &Bounds::unbounded()).unwrap(), &[]);
    eprintln!("{} suites: {:?}", t.name(), start.elapsed());
}

#[test]
fn maybe_passes_the_monad_suites() {
    monad_suites(&Maybe);
}

#[test]
fn writer_c2_passes_the_monad_suites() {
    monad_suites(&Writer { monoid: Monoid::c2() });
}
