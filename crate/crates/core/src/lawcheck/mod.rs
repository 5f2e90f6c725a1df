//! Quantified equation suites over a [`Model`].
//!
//! A suite is data: each law declares object variables, algebra variables,
//! typed morphism variables and optional premises, then states equations,
//! equivalences or a chain of equalities. Every binding within bounds is
//! enumerated; both sides are composed in the model and compared.

mod parse;
mod schema;

use std::time::Instant;

use thiserror::Error;

pub use parse::{parse_suite, ParseError};
pub use schema::check as schema_check;

use crate::model::{Model, Monad};
use crate::monad::enumerate_algebras;
use crate::report::{Counterexample, LawEntry, LawReport, LawStatus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjExpr {
    Var(usize),
    One,
    Prod(Box<ObjExpr>, Box<ObjExpr>),
    /// argument, target
    Exp(Box<ObjExpr>, Box<ObjExpr>),
    T(Box<ObjExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Id(ObjExpr),
    Pi1(ObjExpr, ObjExpr),
    Pi2(ObjExpr, ObjExpr),
    Delta(ObjExpr),
    Swap(ObjExpr, ObjExpr),
    Assoc(ObjExpr, ObjExpr, ObjExpr),
    AssocInv(ObjExpr, ObjExpr, ObjExpr),
    Bang(ObjExpr),
    /// `ev: (A ⇒ B) × A → B`
    Ev(ObjExpr, ObjExpr),
    /// `λ` over `C × A`
    Lam(ObjExpr, ObjExpr, Box<Term>),
    /// `λ⁻¹` into `A ⇒ B`
    Unlam(ObjExpr, ObjExpr, Box<Term>),
    /// `g ∘ f`
    Comp(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    TMap(Box<Term>),
    Eta(ObjExpr),
    Mu(ObjExpr),
    Lst(ObjExpr, ObjExpr),
    Rst(ObjExpr, ObjExpr),
    Act(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Check(Term, Term),
    Iff((Term, Term), (Term, Term)),
    /// terms with the justification of the step leading to them
    Chain(Vec<(Term, Option<String>)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law {
    pub label: String,
    pub anchor: String,
    pub printed: Option<String>,
    /// checked as printed; failures are reported as a suspected typo
    pub suspect: bool,
    pub objs: Vec<String>,
    /// (name, carrier object variable)
    pub algs: Vec<(String, usize)>,
    pub vars: Vec<(String, ObjExpr, ObjExpr)>,
    pub givens: Vec<(Term, Term)>,
    pub stmts: Vec<Stmt>,
}

impl Law {
    pub fn needs_monad(&self) -> bool {
        !self.algs.is_empty() || self.vars.iter().any(|(_, d, c)| obj_uses_t(d) || obj_uses_t(c)) || self.terms().any(term_uses_t)
    }

    fn terms(&self) -> impl Iterator<Item = &Term> {
        let stmt_terms = self.stmts.iter().flat_map(|s| match s {
            Stmt::Check(l, r) => vec![l, r],
            Stmt::Iff((a, b), (c, d)) => vec![a, b, c, d],
            Stmt::Chain(steps) => steps.iter().map(|s| &s.0).collect(),
        });
        self.givens.iter().flat_map(|(l, r)| [l, r]).chain(stmt_terms)
    }
}

fn obj_uses_t(o: &ObjExpr) -> bool {
    match o {
        ObjExpr::Var(_) | ObjExpr::One => false,
        ObjExpr::Prod(a, b) | ObjExpr::Exp(a, b) => obj_uses_t(a) || obj_uses_t(b),
        ObjExpr::T(_) => true,
    }
}

fn term_uses_t(t: &Term) -> bool {
    use Term::*;
    match t {
        TMap(_) | Eta(_) | Mu(_) | Lst(..) | Rst(..) | Act(_) => true,
        Var(_) => false,
        Id(a) | Delta(a) | Bang(a) => obj_uses_t(a),
        Pi1(a, b) | Pi2(a, b) | Swap(a, b) | Ev(a, b) => obj_uses_t(a) || obj_uses_t(b),
        Assoc(a, b, c) | AssocInv(a, b, c) => obj_uses_t(a) || obj_uses_t(b) || obj_uses_t(c),
        Lam(a, b, t) | Unlam(a, b, t) => obj_uses_t(a) || obj_uses_t(b) || term_uses_t(t),
        Comp(a, b) | Times(a, b) | Pair(a, b) => term_uses_t(a) || term_uses_t(b),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suite {
    pub name: String,
    pub laws: Vec<Law>,
}

impl Suite {
    pub fn law(&self, label: &str) -> Option<&Law> {
        self.laws.iter().find(|l| l.label == label)
    }
}

const SOURCES: [(&str, &str); 7] = [
    ("product", include_str!("suites/product.law")),
    ("exponent", include_str!("suites/exponent.law")),
    ("assoc", include_str!("suites/assoc.law")),
    ("monad", include_str!("suites/monad.law")),
    ("strength", include_str!("suites/strength.law")),
    ("algebra", include_str!("suites/algebra.law")),
    ("derivation", include_str!("suites/derivation.law")),
];

pub const SUITE_NAMES: [&str; 6] = ["product", "exponent", "assoc", "monad", "strength", "algebra"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("unknown derivation {0}")]
    UnknownDerivation(String),
    #[error("law {0} needs structure the instance does not carry")]
    MissingStructure(String),
    #[error("embedded suite {0} does not parse: {1}")]
    Embedded(String, ParseError),
}

/// One of the built-in suites, or `derivation` for the proof chains.
pub fn suite(name: &str) -> Result<Suite, LawError> {
    let (_, text) = SOURCES.iter().find(|(n, _)| *n == name).ok_or_else(|| LawError::UnknownSuite(name.into()))?;
    parse_suite(text).map_err(|e| LawError::Embedded(name.into(), e))
}

/// Algebra actions on a carrier, or `None` when too many to enumerate.
pub type AlgebraSource<'a, M> = &'a dyn Fn(&<M as Model>::Obj) -> Option<Vec<<M as Model>::Mor>>;

/// The instance a suite runs against.
pub struct Target<'a, M: Model> {
    pub model: &'a M,
    pub monad: Option<&'a dyn Monad<M>>,
    /// algebras on a carrier; defaults to filtering every `TA → A`
    pub algebras: Option<AlgebraSource<'a, M>>,
    /// replaces the model's object quantifier
    pub objects: Option<Vec<M::Obj>>,
}

impl<'a, M: Model> Target<'a, M> {
    pub fn new(model: &'a M) -> Self {
        Target { model, monad: None, algebras: None, objects: None }
    }

    pub fn with_monad(model: &'a M, monad: &'a dyn Monad<M>) -> Self {
        Target { model, monad: Some(monad), algebras: None, objects: None }
    }

    pub fn objects(&self) -> Vec<M::Obj> {
        self.objects.clone().unwrap_or_else(|| self.model.objects())
    }

    fn algebras_on(&self, a: &M::Obj) -> Option<Vec<M::Mor>> {
        match (self.algebras, self.monad) {
            (Some(f), _) => f(a),
            (None, Some(t)) => enumerate_algebras(self.model, t, a),
            (None, None) => None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Bounds {
    /// stop a law after this many checked bindings
    pub max_instances: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Bounds {
    pub fn unbounded() -> Self {
        Bounds::default()
    }

    fn exhausted(&self, checked: u64) -> bool {
        self.max_instances.is_some_and(|m| checked >= m) || self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum EvalError {
    Unavailable(&'static str),
    IllTyped(String),
}

type Ev<T> = Result<T, EvalError>;

struct Env<M: Model> {
    objs: Vec<M::Obj>,
    algs: Vec<M::Mor>,
    vars: Vec<M::Mor>,
}

struct Eval<'t, 'a, M: Model> {
    t: &'t Target<'a, M>,
    law: &'t Law,
}

impl<M: Model> Eval<'_, '_, M> {
    fn monad(&self) -> Ev<&dyn Monad<M>> {
        self.t.monad.ok_or(EvalError::Unavailable("monad"))
    }

    fn obj(&self, env: &Env<M>, o: &ObjExpr) -> Ev<M::Obj> {
        let m = self.t.model;
        match o {
            ObjExpr::Var(i) => Ok(env.objs[*i].clone()),
            ObjExpr::One => m.terminal().ok_or(EvalError::Unavailable("terminal")),
            ObjExpr::Prod(a, b) => m.product(&self.obj(env, a)?, &self.obj(env, b)?).ok_or(EvalError::Unavailable("product")),
            ObjExpr::Exp(a, b) => m.exponential(&self.obj(env, a)?, &self.obj(env, b)?).ok_or(EvalError::Unavailable("exponential")),
            ObjExpr::T(a) => {
                let a = self.obj(env, a)?;
                self.monad()?.t_obj(m, &a).ok_or(EvalError::Unavailable("monad image"))
            }
        }
    }

    fn prod(&self, a: &M::Obj, b: &M::Obj) -> Ev<M::Obj> {
        self.t.model.product(a, b).ok_or(EvalError::Unavailable("product"))
    }

    fn t_obj(&self, a: &M::Obj) -> Ev<M::Obj> {
        self.monad()?.t_obj(self.t.model, a).ok_or(EvalError::Unavailable("monad image"))
    }

    fn ill(&self, what: &str, x: &M::Obj, y: &M::Obj) -> EvalError {
        let m = self.t.model;
        EvalError::IllTyped(format!("{what}: {} vs {}", m.show_obj(x), m.show_obj(y)))
    }

    /// Domain and codomain, computed from objects alone.
    fn ty(&self, env: &Env<M>, t: &Term) -> Ev<(M::Obj, M::Obj)> {
        use Term::*;
        let o = |x: &ObjExpr| self.obj(env, x);
        Ok(match t {
            Var(i) => {
                let (_, d, c) = &self.law.vars[*i];
                (o(d)?, o(c)?)
            }
            Id(a) => {
                let a = o(a)?;
                (a.clone(), a)
            }
            Pi1(a, b) => {
                let (a, b) = (o(a)?, o(b)?);
                (self.prod(&a, &b)?, a)
            }
            Pi2(a, b) => {
                let (a, b) = (o(a)?, o(b)?);
                (self.prod(&a, &b)?, b)
            }
            Delta(a) => {
                let a = o(a)?;
                (a.clone(), self.prod(&a, &a)?)
            }
            Swap(a, b) => {
                let (a, b) = (o(a)?, o(b)?);
                (self.prod(&a, &b)?, self.prod(&b, &a)?)
            }
            Assoc(a, b, c) | AssocInv(a, b, c) => {
                let (a, b, c) = (o(a)?, o(b)?, o(c)?);
                let left = self.prod(&self.prod(&a, &b)?, &c)?;
                let right = self.prod(&a, &self.prod(&b, &c)?)?;
                if matches!(t, Assoc(..)) {
                    (left, right)
                } else {
                    (right, left)
                }
            }
            Bang(a) => (o(a)?, self.t.model.terminal().ok_or(EvalError::Unavailable("terminal"))?),
            Ev(a, b) => {
                let (a, b) = (o(a)?, o(b)?);
                let e = self.t.model.exponential(&a, &b).ok_or(EvalError::Unavailable("exponential"))?;
                (self.prod(&e, &a)?, b)
            }
            Lam(c, a, body) => {
                let (c, a) = (o(c)?, o(a)?);
                let (d, b) = self.ty(env, body)?;
                let ca = self.prod(&c, &a)?;
                if d != ca {
                    return Err(self.ill("transpose domain", &d, &ca));
                }
                (c, self.t.model.exponential(&a, &b).ok_or(EvalError::Unavailable("exponential"))?)
            }
            Unlam(a, b, body) => {
                let (a, b) = (o(a)?, o(b)?);
                let (c, e) = self.ty(env, body)?;
                let ab = self.t.model.exponential(&a, &b).ok_or(EvalError::Unavailable("exponential"))?;
                if e != ab {
                    return Err(self.ill("inverse transpose codomain", &e, &ab));
                }
                (self.prod(&c, &a)?, b)
            }
            Comp(g, f) => {
                let (fd, fc) = self.ty(env, f)?;
                let (gd, gc) = self.ty(env, g)?;
                if fc != gd {
                    return Err(self.ill("composite", &fc, &gd));
                }
                (fd, gc)
            }
            Times(f, g) => {
                let (fd, fc) = self.ty(env, f)?;
                let (gd, gc) = self.ty(env, g)?;
                (self.prod(&fd, &gd)?, self.prod(&fc, &gc)?)
            }
            Pair(f, g) => {
                let (fd, fc) = self.ty(env, f)?;
                let (gd, gc) = self.ty(env, g)?;
                if fd != gd {
                    return Err(self.ill("pairing", &fd, &gd));
                }
                (fd, self.prod(&fc, &gc)?)
            }
            TMap(f) => {
                let (d, c) = self.ty(env, f)?;
                (self.t_obj(&d)?, self.t_obj(&c)?)
            }
            Eta(a) => {
                let a = o(a)?;
                let ta = self.t_obj(&a)?;
                (a, ta)
            }
            Mu(a) => {
                let ta = self.t_obj(&o(a)?)?;
                (self.t_obj(&ta)?, ta)
            }
            Lst(a, b) => {
                let (a, b) = (o(a)?, o(b)?);
                (self.prod(&a, &self.t_obj(&b)?)?, self.t_obj(&self.prod(&a, &b)?)?)
            }
            Rst(a, b) => {
                let (a, b) = (o(a)?, o(b)?);
                (self.prod(&self.t_obj(&a)?, &b)?, self.t_obj(&self.prod(&a, &b)?)?)
            }
            Act(i) => {
                let a = env.objs[self.law.algs[*i].1].clone();
                (self.t_obj(&a)?, a)
            }
        })
    }

    fn eval(&self, env: &Env<M>, t: &Term) -> Ev<M::Mor> {
        use Term::*;
        let m = self.t.model;
        let o = |x: &ObjExpr| self.obj(env, x);
        let un = |what: &'static str| EvalError::Unavailable(what);
        match t {
            Var(i) => Ok(env.vars[*i].clone()),
            Act(i) => Ok(env.algs[*i].clone()),
            Id(a) => Ok(m.id(&o(a)?)),
            Pi1(a, b) => m.proj1(&o(a)?, &o(b)?).ok_or(un("product")),
            Pi2(a, b) => m.proj2(&o(a)?, &o(b)?).ok_or(un("product")),
            Delta(a) => m.delta(&o(a)?).ok_or(un("product")),
            Swap(a, b) => m.swap(&o(a)?, &o(b)?).ok_or(un("product")),
            Assoc(a, b, c) => m.assoc(&o(a)?, &o(b)?, &o(c)?).ok_or(un("product")),
            AssocInv(a, b, c) => m.assoc_inv(&o(a)?, &o(b)?, &o(c)?).ok_or(un("product")),
            Bang(a) => m.bang(&o(a)?).ok_or(un("terminal")),
            Ev(a, b) => m.eval(&o(a)?, &o(b)?).ok_or(un("exponential")),
            Lam(c, a, body) => {
                let g = self.eval(env, body)?;
                m.curry(&o(c)?, &o(a)?, &g).ok_or(un("transpose"))
            }
            Unlam(a, b, body) => {
                let u = self.eval(env, body)?;
                m.uncurry(&o(a)?, &o(b)?, &u).ok_or(un("inverse transpose"))
            }
            Comp(g, f) => {
                let (f, g) = (self.eval(env, f)?, self.eval(env, g)?);
                m.compose(&g, &f).ok_or_else(|| self.ill("composite", &m.cod(&f), &m.dom(&g)))
            }
            Times(f, g) => {
                let (f, g) = (self.eval(env, f)?, self.eval(env, g)?);
                m.times(&f, &g).ok_or(un("product"))
            }
            Pair(f, g) => {
                let (f, g) = (self.eval(env, f)?, self.eval(env, g)?);
                if m.dom(&f) != m.dom(&g) {
                    return Err(self.ill("pairing", &m.dom(&f), &m.dom(&g)));
                }
                m.pair(&f, &g).ok_or(un("product"))
            }
            TMap(f) => {
                let f = self.eval(env, f)?;
                self.monad()?.t_mor(m, &f).ok_or(un("monad image"))
            }
            Eta(a) => self.monad()?.eta(m, &o(a)?).ok_or(un("unit")),
            Mu(a) => self.monad()?.mu(m, &o(a)?).ok_or(un("multiplication")),
            Lst(a, b) => self.monad()?.lst(m, &o(a)?, &o(b)?).ok_or(un("strength")),
            Rst(a, b) => self.monad()?.rst(m, &o(a)?, &o(b)?).ok_or(un("strength")),
        }
    }
}

/// Free algebra and morphism variables of a term, as slot indices
/// (algebras first, then morphisms).
fn slots(t: &Term, n_algs: usize, out: &mut Vec<usize>) {
    use Term::*;
    match t {
        Var(i) => out.push(n_algs + i),
        Act(i) => out.push(*i),
        Lam(_, _, b) | Unlam(_, _, b) | TMap(b) => slots(b, n_algs, out),
        Comp(a, b) | Times(a, b) | Pair(a, b) => {
            slots(a, n_algs, out);
            slots(b, n_algs, out);
        }
        _ => {}
    }
}

enum Verdict {
    Holds,
    /// statement or chain step, rendered sides, justification
    Fails(usize, String, String, Option<String>),
}

struct Run<'r, 't, 'a, M: Model> {
    ev: Eval<'t, 'a, M>,
    entry: &'r mut LawEntry,
    bounds: &'r Bounds,
    domains: Vec<Vec<M::Mor>>,
    /// premises to test once slot `k` is bound
    givens_at: Vec<Vec<usize>>,
    stopped: bool,
    note: Option<String>,
}

impl<M: Model> Run<'_, '_, '_, M> {
    fn binding(&self, env: &Env<M>) -> Vec<(String, String)> {
        let (m, law) = (self.ev.t.model, self.ev.law);
        let mut out: Vec<(String, String)> = law.objs.iter().zip(&env.objs).map(|(n, o)| (n.clone(), m.show_obj(o))).collect();
        out.extend(law.algs.iter().zip(&env.algs).map(|((n, _), f)| (n.clone(), m.show_mor(f))));
        out.extend(law.vars.iter().zip(&env.vars).map(|((n, _, _), f)| (n.clone(), m.show_mor(f))));
        out
    }

    fn ill_typed(&mut self, env: &Env<M>, msg: String) {
        self.entry.ill_typed += 1;
        if self.entry.counterexample.is_none() {
            self.entry.counterexample = Some(Counterexample { binding: self.binding(env), lhs: "ill-typed".into(), rhs: msg, at: 0 });
        }
    }

    fn premise(&self, env: &Env<M>, i: usize) -> Ev<bool> {
        let (l, r) = &self.ev.law.givens[i];
        Ok(self.ev.eval(env, l)? == self.ev.eval(env, r)?)
    }

    fn verdict(&self, env: &Env<M>) -> Ev<Verdict> {
        let (ev, m) = (&self.ev, self.ev.t.model);
        for (k, stmt) in ev.law.stmts.iter().enumerate() {
            match stmt {
                Stmt::Check(l, r) => {
                    let (x, y) = (ev.eval(env, l)?, ev.eval(env, r)?);
                    if x != y {
                        return Ok(Verdict::Fails(k + 1, m.show_mor(&x), m.show_mor(&y), None));
                    }
                }
                Stmt::Iff((a, b), (c, d)) => {
                    let left = ev.eval(env, a)? == ev.eval(env, b)?;
                    let right = ev.eval(env, c)? == ev.eval(env, d)?;
                    if left != right {
                        let side = |t: bool| if t { "holds" } else { "fails" };
                        return Ok(Verdict::Fails(k + 1, format!("left {}", side(left)), format!("right {}", side(right)), None));
                    }
                }
                Stmt::Chain(steps) => {
                    let values: Vec<M::Mor> = steps.iter().map(|(t, _)| ev.eval(env, t)).collect::<Result<_, _>>()?;
                    for s in 1..values.len() {
                        if values[s - 1] != values[s] {
                            let by = steps[s].1.clone();
                            return Ok(Verdict::Fails(s, m.show_mor(&values[s - 1]), m.show_mor(&values[s]), by));
                        }
                    }
                }
            }
        }
        Ok(Verdict::Holds)
    }

    fn leaf(&mut self, env: &Env<M>) {
        if self.bounds.exhausted(self.entry.checked) {
            self.stopped = true;
            self.note = Some(format!("truncated after {} instances", self.entry.checked));
            return;
        }
        match self.verdict(env) {
            Ok(Verdict::Holds) => self.entry.record(true, || unreachable!()),
            Ok(Verdict::Fails(at, lhs, rhs, by)) => {
                let first = self.entry.counterexample.is_none();
                let binding = self.binding(env);
                self.entry.record(false, || Counterexample { binding, lhs, rhs, at });
                if first {
                    if let Some(by) = by {
                        self.note = Some(format!("first failing step {at} (by {by})"));
                    }
                }
            }
            Err(EvalError::Unavailable(_)) => self.entry.unavailable += 1,
            Err(EvalError::IllTyped(msg)) => self.ill_typed(env, msg),
        }
    }

    fn bind(&mut self, env: &mut Env<M>, slot: usize) {
        if self.stopped {
            return;
        }
        if slot == self.domains.len() {
            self.leaf(env);
            return;
        }
        let n_algs = self.ev.law.algs.len();
        for k in 0..self.domains[slot].len() {
            let v = self.domains[slot][k].clone();
            if slot < n_algs {
                env.algs.push(v);
            } else {
                env.vars.push(v);
            }
            let mut ok = true;
            for &g in &self.givens_at[slot] {
                match self.premise(env, g) {
                    Ok(true) => {}
                    Ok(false) => {
                        ok = false;
                        break;
                    }
                    Err(EvalError::Unavailable(_)) => {
                        self.entry.unavailable += 1;
                        ok = false;
                        break;
                    }
                    Err(EvalError::IllTyped(msg)) => {
                        self.ill_typed(env, msg);
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                self.bind(env, slot + 1);
            }
            if slot < n_algs {
                env.algs.pop();
            } else {
                env.vars.pop();
            }
            if self.stopped {
                return;
            }
        }
    }
}

fn object_tuples<O: Clone>(objects: &[O], n: usize) -> Vec<Vec<O>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| objects.iter().map(move |o| [t.clone(), vec![o.clone()]].concat())).collect();
    }
    out
}

/// Checks one law over every binding.
pub fn run_law<M: Model>(t: &Target<M>, suite: &str, law: &Law, bounds: &Bounds) -> Result<LawEntry, LawError> {
    if law.needs_monad() && t.monad.is_none() {
        return Err(LawError::MissingStructure(law.label.clone()));
    }
    let mut entry = LawEntry::new(suite, &law.label, &law.anchor);
    let n_algs = law.algs.len();
    let n_slots = n_algs + law.vars.len();
    let mut givens_at = vec![Vec::new(); n_slots];
    let mut closed_givens = Vec::new();
    for (i, (l, r)) in law.givens.iter().enumerate() {
        let mut s = Vec::new();
        slots(l, n_algs, &mut s);
        slots(r, n_algs, &mut s);
        match s.into_iter().max() {
            Some(k) => givens_at[k].push(i),
            None => closed_givens.push(i),
        }
    }
    let ev = Eval { t, law };
    let mut run = Run { ev, entry: &mut entry, bounds, domains: Vec::new(), givens_at, stopped: false, note: None };
    for objs in object_tuples(&t.objects(), law.objs.len()) {
        if run.stopped {
            break;
        }
        let mut env = Env { objs, algs: Vec::new(), vars: Vec::new() };
        if let Err(e) = typecheck(&run.ev, &env) {
            match e {
                EvalError::Unavailable(_) => run.entry.unavailable += 1,
                EvalError::IllTyped(msg) => run.ill_typed(&env, msg),
            }
            continue;
        }
        let Some(domains) = domains(&run.ev, &env) else {
            run.entry.unavailable += 1;
            continue;
        };
        let mut premises = Ok(true);
        for &g in &closed_givens {
            premises = premises.and_then(|ok| if ok { run.premise(&env, g) } else { Ok(false) });
        }
        match premises {
            Ok(true) => {
                run.domains = domains;
                run.bind(&mut env, 0);
            }
            Ok(false) => {}
            Err(_) => run.entry.unavailable += 1,
        }
    }
    let note = run.note.take();
    entry.settle();
    entry.note = note;
    if let Some(p) = &law.printed {
        let printed = format!("as printed: {p}");
        entry.note = Some(match entry.note.take() {
            Some(n) => format!("{printed}; {n}"),
            None => printed,
        });
    }
    if let Err(msg) = schema::check(law) {
        let n = format!("ill-typed schema ({msg})");
        entry.note = Some(match entry.note.take() {
            Some(prev) => format!("{prev}; {n}"),
            None => n,
        });
        entry.status = LawStatus::Fail;
    }
    if law.suspect && (entry.status == LawStatus::Fail || entry.ill_typed > 0) {
        entry.status = LawStatus::SuspectedTypo;
    }
    Ok(entry)
}

fn typecheck<M: Model>(ev: &Eval<M>, env: &Env<M>) -> Ev<()> {
    let same = |a: &Term, b: &Term| -> Ev<()> {
        let (x, y) = (ev.ty(env, a)?, ev.ty(env, b)?);
        if x.0 != y.0 {
            return Err(ev.ill("equation domains", &x.0, &y.0));
        }
        if x.1 != y.1 {
            return Err(ev.ill("equation codomains", &x.1, &y.1));
        }
        Ok(())
    };
    for (l, r) in &ev.law.givens {
        same(l, r)?;
    }
    for s in &ev.law.stmts {
        match s {
            Stmt::Check(l, r) => same(l, r)?,
            Stmt::Iff((a, b), (c, d)) => {
                same(a, b)?;
                same(c, d)?;
            }
            Stmt::Chain(steps) => {
                for w in steps.windows(2) {
                    same(&w[0].0, &w[1].0)?;
                }
            }
        }
    }
    Ok(())
}

fn domains<M: Model>(ev: &Eval<M>, env: &Env<M>) -> Option<Vec<Vec<M::Mor>>> {
    let mut out = Vec::new();
    for (_, c) in &ev.law.algs {
        out.push(ev.t.algebras_on(&env.objs[*c])?);
    }
    for (_, d, c) in &ev.law.vars {
        let (d, c) = (ev.obj(env, d).ok()?, ev.obj(env, c).ok()?);
        out.push(ev.t.model.hom(&d, &c)?);
    }
    Some(out)
}

/// Runs every law of a suite.
pub fn run_suite<M: Model>(t: &Target<M>, suite: &Suite, bounds: &Bounds) -> Result<LawReport, LawError> {
    let mut report = LawReport::new(&suite.name);
    for law in &suite.laws {
        report.entries.push(run_law(t, &suite.name, law, bounds)?);
    }
    Ok(report)
}

/// Like [`run_suite`], but laws whose structure is absent are reported as
/// skipped instead of aborting.
pub fn run_suite_lenient<M: Model>(t: &Target<M>, suite: &Suite, bounds: &Bounds) -> LawReport {
    let mut report = LawReport::new(&suite.name);
    for law in &suite.laws {
        let entry = run_law(t, &suite.name, law, bounds).unwrap_or_else(|e| {
            let mut e2 = LawEntry::new(&suite.name, &law.label, &law.anchor);
            e2.note = Some(e.to_string());
            e2
        });
        report.entries.push(entry);
    }
    report
}

/// Replays a proof chain (or every chain whose label starts with `id-`),
/// checking each intermediate equality in order.
pub fn replay_derivation<M: Model>(t: &Target<M>, id: &str, bounds: &Bounds) -> Result<LawReport, LawError> {
    let all = suite("derivation")?;
    let prefix = format!("{id}-");
    let laws: Vec<Law> = all.laws.into_iter().filter(|l| l.label == id || l.label.starts_with(&prefix)).collect();
    if laws.is_empty() {
        return Err(LawError::UnknownDerivation(id.into()));
    }
    run_suite(t, &Suite { name: "derivation".into(), laws }, bounds)
}

/// Labels of the built-in derivations.
pub fn derivation_labels() -> Vec<String> {
    suite("derivation").map(|s| s.laws.into_iter().map(|l| l.label).collect()).unwrap_or_default()
}

/// Re-evaluates a recorded counterexample; `Some(true)` when it still fails
/// the same way.
pub fn replay<M: Model>(t: &Target<M>, law: &Law, cx: &Counterexample) -> Option<bool> {
    let m = t.model;
    let lookup = |name: &str| cx.binding.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str());
    let objs: Vec<M::Obj> = law.objs.iter().map(|n| m.parse_obj(lookup(n)?)).collect::<Option<_>>()?;
    let algs: Vec<M::Mor> = law.algs.iter().map(|(n, _)| m.parse_mor(lookup(n)?)).collect::<Option<_>>()?;
    let vars: Vec<M::Mor> = law.vars.iter().map(|(n, _, _)| m.parse_mor(lookup(n)?)).collect::<Option<_>>()?;
    let env = Env { objs, algs, vars };
    let ev = Eval { t, law };
    let mut entry = LawEntry::new("", &law.label, "");
    let run = Run { ev, entry: &mut entry, bounds: &Bounds::default(), domains: Vec::new(), givens_at: Vec::new(), stopped: false, note: None };
    match run.verdict(&env).ok()? {
        Verdict::Holds => Some(false),
        Verdict::Fails(at, lhs, rhs, _) => Some(at == cx.at && lhs == cx.lhs && rhs == cx.rhs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{finset, Maybe, Sets};

    #[test]
    fn embedded_suites_parse() {
        for (name, _) in SOURCES {
            let s = suite(name).unwrap();
            assert_eq!(s.name, name);
            assert!(!s.laws.is_empty());
        }
    }

    #[test]
    fn only_suspect_laws_are_ill_typed_as_schemas() {
        for (name, _) in SOURCES {
            for law in suite(name).unwrap().laws {
                assert_eq!(schema_check(&law).is_err(), law.suspect, "{name}/{}: {:?}", law.label, schema_check(&law));
            }
        }
    }

    #[test]
    fn tampered_equation_yields_a_replayable_counterexample() {
        let s = parse_suite("suite t\nlaw bad : wrong projection\nobj A\ncheck pi1[A,A] = pi2[A,A]\n").unwrap();
        let sets = Sets::new(2);
        let t = Target::new(&sets);
        let e = run_law(&t, "t", &s.laws[0], &Bounds::default()).unwrap();
        assert_eq!(e.status, LawStatus::Fail);
        let cx = e.counterexample.unwrap();
        assert_eq!(cx.binding, vec![("A".to_string(), "2".to_string())]);
        assert_eq!(replay(&t, &s.laws[0], &cx), Some(true));
    }

    #[test]
    fn monad_laws_need_a_monad() {
        let sets = Sets::new(1);
        let s = suite("monad").unwrap();
        assert!(matches!(run_suite(&Target::new(&sets), &s, &Bounds::default()), Err(LawError::MissingStructure(_))));
        let r = run_suite(&Target::with_monad(&sets, &Maybe), &s, &Bounds::default()).unwrap();
        assert!(r.no_failures());
    }

    #[test]
    fn missing_products_count_as_unavailable() {
        let inst = finset(2).unwrap();
        let m = inst.model();
        let s = parse_suite("suite t\nlaw d : diagonal\nobj A\ncheck pi1[A,A] . delta[A] = id[A]\n").unwrap();
        let e = run_law(&Target::new(&m), "t", &s.laws[0], &Bounds::default()).unwrap();
        // 2 × 2 is missing from finset(2)
        assert_eq!((e.status, e.checked, e.unavailable), (LawStatus::Pass, 2, 1));
    }

    #[test]
    fn bounds_truncate_and_say_so() {
        let sets = Sets::new(2);
        let s = suite("product").unwrap();
        let b = Bounds { max_instances: Some(3), deadline: None };
        let e = run_law(&Target::new(&sets), "product", s.law("p1").unwrap(), &b).unwrap();
        assert_eq!(e.checked, 3);
        assert!(e.note.unwrap().contains("truncated"));
    }
}
