//! Slices of finite sets computed on elements, with no cap on intermediate
//! objects. `Σ_f`, `f*` and `Π_f` are given by formula (`Π_f` as fibrewise
//! sections), so the adjoint triple can be checked at every object of a
//! truncated slice even when the truncation lacks the pullbacks.

use serde::Serialize;

use crate::instances::sets::{show_func, Func};

/// `g ∘ f`
pub fn after(g: &Func, f: &Func) -> Func {
    Func::from_fn(f.dom, g.cod, |x| g.at(f.at(x)))
}

/// Every `h: X → Y` with `f_Y ∘ h = f_X`, lexicographically.
pub fn homs(x: &Func, y: &Func) -> Vec<Func> {
    let choices: Vec<Vec<u32>> = x.table.iter().map(|&a| (0..y.dom).filter(|&v| y.at(v) == a).collect()).collect();
    product(&choices).into_iter().map(|t| Func::new(x.dom, y.dom, t)).collect()
}

fn product(choices: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out.iter().flat_map(|prefix| c.iter().map(move |&v| [prefix.as_slice(), &[v]].concat())).collect();
    }
    out
}

/// Every object over a set of size `a` with carrier of size at most `n`.
pub fn objects_over(a: u32, n: u32) -> Vec<Func> {
    (0..=n).flat_map(|x| product(&vec![(0..a).collect(); x as usize]).into_iter().map(move |t| Func::new(x, a, t))).collect()
}

/// `f*(Y)` for `f: A → B` and `Y` over `B`: the pairs `(a, y)` with
/// `f a = f_Y y`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Pulled {
    pub pairs: Vec<(u32, u32)>,
    /// `f*f_Y`, to `A`
    pub structure: Func,
    /// `f_Y*f`, to `Y`
    pub proj: Func,
}

impl Pulled {
    fn index(&self, a: u32, y: u32) -> u32 {
        self.pairs.binary_search(&(a, y)).expect("pair in the pullback") as u32
    }
}

pub fn pull(f: &Func, y: &Func) -> Pulled {
    let pairs: Vec<(u32, u32)> = (0..f.dom).flat_map(|a| (0..y.dom).map(move |v| (a, v))).filter(|&(a, v)| f.at(a) == y.at(v)).collect();
    let k = pairs.len() as u32;
    Pulled { structure: Func::from_fn(k, f.dom, |i| pairs[i as usize].0), proj: Func::from_fn(k, y.dom, |i| pairs[i as usize].1), pairs }
}

/// `f*(m)` for `m: Y → Y'` over `B`: `(a, y) ↦ (a, m y)`.
pub fn pull_mor(f: &Func, y: &Func, y2: &Func, m: &Func) -> Func {
    let (p, p2) = (pull(f, y), pull(f, y2));
    Func::from_fn(p.structure.dom, p2.structure.dom, |i| {
        let (a, v) = p.pairs[i as usize];
        p2.index(a, m.at(v))
    })
}

/// `Π_f(Z)` for `f: A → B` and `Z` over `A`: pairs `(b, s)` where `s` picks a
/// point of `Z` over each element of the fibre `f⁻¹(b)`.
#[derive(Clone, Debug)]
pub struct Sections {
    pub elems: Vec<(u32, Vec<u32>)>,
    /// to `B`
    pub structure: Func,
    fibres: Vec<Vec<u32>>,
}

impl Sections {
    fn index(&self, b: u32, s: &[u32]) -> u32 {
        self.elems.iter().position(|(b2, s2)| *b2 == b && s2 == s).expect("section") as u32
    }

    /// the value of the `e`-th section at `a`
    fn at(&self, e: u32, a: u32) -> u32 {
        let (b, s) = &self.elems[e as usize];
        s[self.fibres[*b as usize].iter().position(|&x| x == a).expect("a in its fibre")]
    }
}

pub fn fibres(f: &Func) -> Vec<Vec<u32>> {
    (0..f.cod).map(|b| (0..f.dom).filter(|&a| f.at(a) == b).collect()).collect()
}

pub fn pi(f: &Func, z: &Func) -> Sections {
    let fibres = fibres(f);
    let mut elems = Vec::new();
    for (b, fib) in fibres.iter().enumerate() {
        let choices: Vec<Vec<u32>> = fib.iter().map(|&a| (0..z.dom).filter(|&v| z.at(v) == a).collect()).collect();
        elems.extend(product(&choices).into_iter().map(|s| (b as u32, s)));
    }
    let structure = Func::from_fn(elems.len() as u32, f.cod, |i| elems[i as usize].0);
    Sections { elems, structure, fibres }
}

/// `Π_f(k)` for `k: Z → Z'` over `A`: `(b, s) ↦ (b, k ∘ s)`.
pub fn pi_mor(f: &Func, z: &Func, z2: &Func, k: &Func) -> Func {
    let (p, p2) = (pi(f, z), pi(f, z2));
    Func::from_fn(p.structure.dom, p2.structure.dom, |i| {
        let (b, s) = &p.elems[i as usize];
        let t: Vec<u32> = s.iter().map(|&v| k.at(v)).collect();
        p2.index(*b, &t)
    })
}

/// `η_X : X → f*Σ_f X`, `x ↦ (f_X x, x)`.
pub fn sigma_unit(f: &Func, x: &Func) -> Func {
    let p = pull(f, &after(f, x));
    Func::from_fn(x.dom, p.structure.dom, |v| p.index(x.at(v), v))
}

/// `ε_Y : Σ_f f* Y → Y`, the second projection.
pub fn sigma_counit(f: &Func, y: &Func) -> Func {
    pull(f, y).proj
}

/// `η_Y : Y → Π_f f* Y`, `y ↦ (f_Y y, a ↦ (a, y))`.
pub fn pi_unit(f: &Func, y: &Func) -> Func {
    let fy = pull(f, y);
    let p = pi(f, &fy.structure);
    Func::from_fn(y.dom, p.structure.dom, |v| {
        let b = y.at(v);
        let s: Vec<u32> = p.fibres[b as usize].iter().map(|&a| fy.index(a, v)).collect();
        p.index(b, &s)
    })
}

/// `ε_Z : f* Π_f Z → Z`, `(a, (b, s)) ↦ s(a)`.
pub fn pi_counit(f: &Func, z: &Func) -> Func {
    let p = pi(f, z);
    let q = pull(f, &p.structure);
    Func::from_fn(q.structure.dom, z.dom, |i| {
        let (a, e) = q.pairs[i as usize];
        p.at(e, a)
    })
}

/// The adjoint triple `Σ_f ⊣ f* ⊣ Π_f` checked at every object whose
/// carrier has at most `max_carrier` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleCheck {
    pub f: String,
    pub max_carrier: u32,
    pub objects_over_dom: usize,
    pub objects_over_cod: usize,
    pub morphisms: usize,
    /// equations and unique-factorization counts checked
    pub checks: usize,
    pub failures: Vec<String>,
}

impl TripleCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    /// `k` factors through `through` in exactly one way among `candidates`.
    fn unique(&mut self, candidates: &[Func], k: &Func, through: impl Fn(&Func) -> Func, what: impl FnOnce() -> String) {
        let n = candidates.iter().filter(|l| through(l) == *k).count();
        self.check(n == 1, what);
    }
}

pub fn check_triple(f: &Func, max_carrier: u32) -> TripleCheck {
    let over_a = objects_over(f.dom, max_carrier);
    let over_b = objects_over(f.cod, max_carrier);
    let mut t = Tally { checks: 0, failures: Vec::new() };
    let id = |x: &Func| Func::identity(x.dom);
    let sh = show_func;

    for x in &over_a {
        let sx = after(f, x);
        t.check(after(&sigma_counit(f, &sx), &sigma_unit(f, x)) == id(x), || format!("Σ ⊣ f* triangle at {}", sh(x)));
    }
    for y in &over_b {
        let fy = pull(f, y);
        let eta = sigma_unit(f, &fy.structure);
        let f_eps = pull_mor(f, &after(f, &fy.structure), y, &fy.proj);
        t.check(after(&f_eps, &eta) == id(&fy.structure), || format!("Σ ⊣ f* triangle at {}", sh(y)));
        let pi_eta = pi_unit(f, y);
        let pfy = pi(f, &fy.structure);
        let f_pi_eta = pull_mor(f, y, &pfy.structure, &pi_eta);
        t.check(after(&pi_counit(f, &fy.structure), &f_pi_eta) == id(&fy.structure), || format!("f* ⊣ Π triangle at {}", sh(y)));
    }
    for z in &over_a {
        let pz = pi(f, z);
        let eta = pi_unit(f, &pz.structure);
        let q = pull(f, &pz.structure);
        let pi_eps = pi_mor(f, &q.structure, z, &pi_counit(f, z));
        t.check(after(&pi_eps, &eta) == id(&pz.structure), || format!("f* ⊣ Π triangle at {}", sh(z)));
    }

    let mut morphisms = 0;
    for x in &over_a {
        for x2 in &over_a {
            for h in homs(x, x2) {
                morphisms += 1;
                let lhs = after(&sigma_unit(f, x2), &h);
                let rhs = after(&pull_mor(f, &after(f, x), &after(f, x2), &h), &sigma_unit(f, x));
                t.check(lhs == rhs, || format!("Σ ⊣ f* unit naturality at {}", sh(&h)));
                let (pz, pz2) = (pi(f, x), pi(f, x2));
                let lhs = after(&h, &pi_counit(f, x));
                let rhs = after(&pi_counit(f, x2), &pull_mor(f, &pz.structure, &pz2.structure, &pi_mor(f, x, x2, &h)));
                t.check(lhs == rhs, || format!("f* ⊣ Π counit naturality at {}", sh(&h)));
            }
        }
    }
    for y in &over_b {
        for y2 in &over_b {
            for m in homs(y, y2) {
                morphisms += 1;
                let lhs = after(&m, &sigma_counit(f, y));
                let rhs = after(&sigma_counit(f, y2), &pull_mor(f, y, y2, &m));
                t.check(lhs == rhs, || format!("Σ ⊣ f* counit naturality at {}", sh(&m)));
                let (fy, fy2) = (pull(f, y), pull(f, y2));
                let lhs = after(&pi_unit(f, y2), &m);
                let rhs = after(&pi_mor(f, &fy.structure, &fy2.structure, &pull_mor(f, y, y2, &m)), &pi_unit(f, y));
                t.check(lhs == rhs, || format!("f* ⊣ Π unit naturality at {}", sh(&m)));
            }
        }
    }

    for x in &over_a {
        let sx = after(f, x);
        for y in &over_b {
            let fy = pull(f, y);
            let (to_pulled, from_sigma) = (homs(x, &fy.structure), homs(&sx, y));
            let eta = sigma_unit(f, x);
            for k in &to_pulled {
                t.unique(&from_sigma, k, |l| after(&pull_mor(f, &sx, y, l), &eta), || format!("Σ ⊣ f* unit universal at {} {}", sh(x), sh(y)));
            }
            for k in &from_sigma {
                t.unique(&to_pulled, k, |l| after(&fy.proj, l), || format!("Σ ⊣ f* counit universal at {} {}", sh(x), sh(y)));
            }
        }
    }
    for y in &over_b {
        let fy = pull(f, y);
        let eta = pi_unit(f, y);
        for z in &over_a {
            let pz = pi(f, z);
            let (to_pi, from_pulled) = (homs(y, &pz.structure), homs(&fy.structure, z));
            let eps = pi_counit(f, z);
            for k in &to_pi {
                t.unique(&from_pulled, k, |l| after(&pi_mor(f, &fy.structure, z, l), &eta), || format!("f* ⊣ Π unit universal at {} {}", sh(y), sh(z)));
            }
            for k in &from_pulled {
                t.unique(&to_pi, k, |l| after(&eps, &pull_mor(f, y, &pz.structure, l)), || format!("f* ⊣ Π counit universal at {} {}", sh(y), sh(z)));
            }
        }
    }

    TripleCheck {
        f: show_func(f),
        max_carrier,
        objects_over_dom: over_a.len(),
        objects_over_cod: over_b.len(),
        morphisms,
        checks: t.checks,
        failures: t.failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_product_counts_sections() {
        // f: 2 → 1 and Z → 2 with fibres of sizes 2 and 3
        let f = Func::new(2, 1, vec![0, 0]);
        let z = Func::new(5, 2, vec![0, 0, 1, 1, 1]);
        assert_eq!(pi(&f, &z).structure.dom, 6);
        // along an identity Π does nothing
        let id = Func::identity(2);
        assert_eq!(pi(&id, &z).structure, z);
    }

    #[test]
    fn pulling_back_a_point() {
        // f: 1 → 2 picks 0, (2, id) pulls back to a single point
        let f = Func::new(1, 2, vec![0]);
        assert_eq!(pull(&f, &Func::identity(2)).structure.dom, 1);
    }

    #[test]
    fn triple_holds_along_a_collapse() {
        let r = check_triple(&Func::new(2, 1, vec![0, 0]), 2);
        assert!(r.holds(), "{:?}", r.failures);
        assert!(r.checks > 100);
    }

    #[test]
    fn a_broken_counit_is_caught() {
        // the swapped projection is not a slice morphism, let alone a counit
        let f = Func::new(2, 1, vec![0, 0]);
        let y = Func::new(2, 1, vec![0, 0]);
        let fy = pull(&f, &y);
        let bad = Func::from_fn(fy.structure.dom, 2, |i| 1 - fy.proj.at(i));
        let eta = sigma_unit(&f, &fy.structure);
        let f_eps = pull_mor(&f, &after(&f, &fy.structure), &y, &bad);
        assert_ne!(after(&f_eps, &eta), Func::identity(fy.structure.dom));
    }
}
