//! Monads on a [`Model`]: algebras, the Kleisli and Eilenberg–Moore categories,
//! maps that are homomorphisms in their right argument, and the internal and
//! external exponent constructions.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{CategoryError, FinCategory, MorId, ObjId, RawCategory};
use crate::functor::{FunctorData, FunctorError, NatTransData};
use crate::lawcheck::{self, Bounds, LawError, Target};
use crate::model::{FinModel, Model, Monad};
use crate::report::LawReport;
use crate::structures::{find_products, find_terminals};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonadError {
    #[error("the base category has no terminal object")]
    NoTerminalInBase,
    #[error("missing product {0}")]
    MissingProduct(String),
    #[error("missing exponential {0}")]
    MissingExponential(String),
    #[error("missing equalizer {0}")]
    MissingEqualizer(String),
    #[error("the monad carries no strength")]
    MissingStrength,
    #[error("{0} is not an algebra")]
    NotAnAlgebra(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

/// An object with a `T`-action `TA → A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Algebra<O, F> {
    pub carrier: O,
    pub action: F,
}

pub type AlgebraOf<M> = Algebra<<M as Model>::Obj, <M as Model>::Mor>;

impl<O, F> Algebra<O, F> {
    pub fn new(carrier: O, action: F) -> Self {
        Algebra { carrier, action }
    }
}

pub fn show_algebra<M: Model>(m: &M, a: &AlgebraOf<M>) -> String {
    format!("({}, {})", m.show_obj(&a.carrier), m.show_mor(&a.action))
}

/// Checks the unit and multiplication laws of an action; `None` if ill-typed.
pub fn is_algebra<M: Model>(m: &M, t: &dyn Monad<M>, a: &M::Obj, action: &M::Mor) -> Option<bool> {
    let unit = m.compose(action, &t.eta(m, a)?)? == m.id(a);
    let mult = m.compose(action, &t.mu(m, a)?)? == m.compose(action, &t.t_mor(m, action)?)?;
    Some(unit && mult)
}

/// `h ∘ f_A = f_B ∘ Th`.
pub fn is_homomorphism<M: Model>(m: &M, t: &dyn Monad<M>, src: &AlgebraOf<M>, tgt: &AlgebraOf<M>, h: &M::Mor) -> Option<bool> {
    Some(m.compose(h, &src.action)? == m.compose(&tgt.action, &t.t_mor(m, h)?)?)
}

/// Every action on `a`, in hom order. `None` when `Hom(TA, A)` is too large.
pub fn enumerate_algebras<M: Model>(m: &M, t: &dyn Monad<M>, a: &M::Obj) -> Option<Vec<M::Mor>> {
    let ta = t.t_obj(m, a)?;
    let hom = m.hom(&ta, a)?;
    Some(hom.into_iter().filter(|f| is_algebra(m, t, a, f) == Some(true)).collect())
}

/// Homomorphisms between two algebras, filtered from the underlying hom-set.
pub fn homomorphisms<M: Model>(m: &M, t: &dyn Monad<M>, src: &AlgebraOf<M>, tgt: &AlgebraOf<M>) -> Option<Vec<M::Mor>> {
    let hom = m.hom(&src.carrier, &tgt.carrier)?;
    Some(hom.into_iter().filter(|h| is_homomorphism(m, t, src, tgt, h) == Some(true)).collect())
}

/// Runs the monad suite (m-series and the Kleisli remarks).
pub fn validate_monad<M: Model>(target: &Target<M>, bounds: &Bounds) -> Result<LawReport, LawError> {
    lawcheck::run_suite(target, &lawcheck::suite("monad")?, bounds)
}

#[derive(Clone, Debug)]
pub struct StrengthReport {
    pub report: LawReport,
    /// `None` when some double strength could not be formed
    pub commutative: Option<bool>,
    pub affine: Option<bool>,
}

/// Runs the strength suite and computes the commutative and affine flags.
pub fn validate_strength<M: Model>(target: &Target<M>, bounds: &Bounds) -> Result<StrengthReport, LawError> {
    let report = lawcheck::run_suite(target, &lawcheck::suite("strength")?, bounds)?;
    let t = target.monad.ok_or_else(|| LawError::MissingStructure("strength".into()))?;
    let objects = target.objects();
    Ok(StrengthReport { report, commutative: is_commutative(target.model, t, &objects), affine: is_affine(target.model, t) })
}

/// The two double strengths `TA × TB → T(A × B)`: through `rst` first, and through `ℓst` first.
pub fn double_strengths<M: Model>(m: &M, t: &dyn Monad<M>, a: &M::Obj, b: &M::Obj) -> Option<(M::Mor, M::Mor)> {
    let (ta, tb) = (t.t_obj(m, a)?, t.t_obj(m, b)?);
    let mu = t.mu(m, &m.product(a, b)?)?;
    let via_rst = m.chain(&[mu.clone(), t.t_mor(m, &t.lst(m, a, b)?)?, t.rst(m, a, &tb)?])?;
    let via_lst = m.chain(&[mu, t.t_mor(m, &t.rst(m, a, b)?)?, t.lst(m, &ta, b)?])?;
    Some((via_rst, via_lst))
}

/// The two double strengths agree on every pair of `objects`.
pub fn is_commutative<M: Model>(m: &M, t: &dyn Monad<M>, objects: &[M::Obj]) -> Option<bool> {
    let mut all = true;
    for a in objects {
        for b in objects {
            let (l, r) = double_strengths(m, t, a, b)?;
            all &= l == r;
        }
    }
    Some(all)
}

/// `T1 ≅ 1`: the unique map `T1 → 1` has an inverse.
pub fn is_affine<M: Model>(m: &M, t: &dyn Monad<M>) -> Option<bool> {
    let one = m.terminal()?;
    let t1 = t.t_obj(m, &one)?;
    let bang = m.bang(&t1)?;
    let id = m.id(&t1);
    Some(m.hom(&one, &t1)?.iter().any(|g| m.compose(g, &bang).as_ref() == Some(&id)))
}

/// `f♯ = μ_B ∘ Tf` for `f: A → TB`.
pub fn klift<M: Model>(m: &M, t: &dyn Monad<M>, b: &M::Obj, f: &M::Mor) -> Option<M::Mor> {
    m.compose(&t.mu(m, b)?, &t.t_mor(m, f)?)
}

/// Builds a finite category from tagged objects and morphisms; composition is
/// computed on the underlying morphisms (given the codomain index of `g`) and
/// looked up by `(dom, cod, mor)`.
fn tabulate<O: Clone, F: Clone + Eq + Hash>(
    objects: Vec<(String, O)>,
    morphisms: Vec<(String, usize, usize, F)>,
    identity: Vec<usize>,
    compose: impl Fn(usize, &F, &F) -> Option<F>,
) -> Result<(FinCategory, Vec<O>, Vec<F>), MonadError> {
    let index: HashMap<(usize, usize, F), usize> = morphisms.iter().enumerate().map(|(i, (_, d, c, f))| ((*d, *c, f.clone()), i)).collect();
    let raw = RawCategory {
        objects: objects.iter().map(|(n, _)| n.clone()).collect(),
        morphisms: morphisms.iter().map(|(n, d, c, _)| (n.clone(), *d, *c)).collect(),
        identity,
    };
    let assembled = FinCategory::assemble(raw, |g, f| {
        let (_, d, _, ff) = &morphisms[f];
        let (_, _, c, gg) = &morphisms[g];
        index.get(&(*d, *c, compose(*c, gg, ff)?)).copied()
    })?;
    let mut objs: Vec<Option<O>> = vec![None; objects.len()];
    for (i, (_, o)) in objects.into_iter().enumerate() {
        objs[assembled.obj_map[i].idx()] = Some(o);
    }
    let mut mors: Vec<Option<F>> = vec![None; morphisms.len()];
    for (i, (_, _, _, f)) in morphisms.into_iter().enumerate() {
        mors[assembled.mor_map[i].idx()] = Some(f);
    }
    Ok((assembled.category, objs.into_iter().flatten().collect(), mors.into_iter().flatten().collect()))
}

fn too_big<M: Model>(m: &M, what: &str, a: &M::Obj, b: &M::Obj) -> MonadError {
    MonadError::BoundExceeded(format!("{what} {} -> {}", m.show_obj(a), m.show_obj(b)))
}

/// Objects of the base with `Hom(A, TB)` as morphisms and `g ∘ f = g♯ ∘ f`.
#[derive(Clone, Debug)]
pub struct KleisliCategory<O, F> {
    pub cat: Arc<FinCategory>,
    /// base object per object id
    pub objects: Vec<O>,
    /// underlying `A → TB` per morphism id
    pub arrows: Vec<F>,
}

pub fn kleisli_category<M: Model>(m: &M, t: &dyn Monad<M>, objects: &[M::Obj]) -> Result<KleisliCategory<M::Obj, M::Mor>, MonadError> {
    let missing = |a: &M::Obj| MonadError::Shape(format!("T is undefined at {}", m.show_obj(a)));
    let mut mors = Vec::new();
    let mut identity = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            let tb = t.t_obj(m, b).ok_or_else(|| missing(b))?;
            let hom = m.hom(a, &tb).ok_or_else(|| too_big(m, "Kleisli hom", a, b))?;
            for f in hom {
                mors.push((format!("{}>{}:{}", m.show_obj(a), m.show_obj(b), m.show_mor(&f)), i, j, f));
            }
        }
        let eta = t.eta(m, a).ok_or_else(|| missing(a))?;
        let pos = mors.iter().position(|(_, d, c, f)| *d == i && *c == i && *f == eta);
        identity.push(pos.ok_or_else(|| MonadError::Shape(format!("unit at {} is not a Kleisli arrow", m.show_obj(a))))?);
    }
    let objs = objects.iter().map(|a| (m.show_obj(a), a.clone())).collect();
    let (cat, objects, arrows) = tabulate(objs, mors, identity, |c, g, f| m.compose(&klift(m, t, &objects[c], g)?, f))?;
    Ok(KleisliCategory { cat: Arc::new(cat), objects, arrows })
}

/// All algebras on the given carriers with all homomorphisms between them.
#[derive(Clone, Debug)]
pub struct EmCategory<O, F> {
    pub cat: Arc<FinCategory>,
    pub carriers: Vec<O>,
    /// algebra per object id
    pub algebras: Vec<Algebra<O, F>>,
    /// underlying morphism per morphism id
    pub homs: Vec<F>,
}

impl<O: Clone + Eq + Ord, F: Clone + Eq> EmCategory<O, F> {
    pub fn algebra(&self, x: ObjId) -> &Algebra<O, F> {
        &self.algebras[x.idx()]
    }

    pub fn object_of(&self, a: &Algebra<O, F>) -> Option<ObjId> {
        self.algebras.iter().position(|b| b == a).map(|i| ObjId(i as u32))
    }

    pub fn morphism_of(&self, src: ObjId, tgt: ObjId, h: &F) -> Option<MorId> {
        self.cat.hom(src, tgt).iter().copied().find(|m| &self.homs[m.idx()] == h)
    }

    /// Number of algebras per carrier.
    pub fn census(&self) -> BTreeMap<O, usize> {
        let mut out: BTreeMap<O, usize> = self.carriers.iter().map(|c| (c.clone(), 0)).collect();
        for a in &self.algebras {
            *out.entry(a.carrier.clone()).or_default() += 1;
        }
        out
    }
}

pub fn em_category<M: Model>(m: &M, t: &dyn Monad<M>, carriers: &[M::Obj]) -> Result<EmCategory<M::Obj, M::Mor>, MonadError> {
    let mut algebras = Vec::new();
    for a in carriers {
        let actions = enumerate_algebras(m, t, a).ok_or_else(|| too_big(m, "actions", a, a))?;
        algebras.extend(actions.into_iter().map(|f| Algebra::new(a.clone(), f)));
    }
    let w = algebras.len().to_string().len();
    let mut mors = Vec::new();
    let mut identity = Vec::new();
    for (i, a) in algebras.iter().enumerate() {
        for (j, b) in algebras.iter().enumerate() {
            let homs = homomorphisms(m, t, a, b).ok_or_else(|| too_big(m, "homomorphisms", &a.carrier, &b.carrier))?;
            for h in homs {
                mors.push((format!("a{i:0w$}>a{j:0w$}:{}", m.show_mor(&h)), i, j, h));
            }
        }
        let id = m.id(&a.carrier);
        identity.push(mors.iter().position(|(_, d, c, f)| *d == i && *c == i && *f == id).expect("identity is a homomorphism"));
    }
    let objs = algebras.iter().enumerate().map(|(i, a)| (format!("a{i:0w$}"), a.clone())).collect();
    let (cat, algebras, homs) = tabulate(objs, mors, identity, |_, g, f| m.compose(g, f))?;
    Ok(EmCategory { cat: Arc::new(cat), carriers: carriers.to_vec(), algebras, homs })
}

/// The algebra `(1, !_{T1})` and how it fares as a terminal object.
#[derive(Clone, Debug)]
pub struct EmTerminal<O, F> {
    pub algebra: Algebra<O, F>,
    pub is_algebra: bool,
    /// every algebra of the census has exactly one homomorphism into it
    pub unique_from_all: bool,
    pub object: Option<ObjId>,
    /// terminal objects found by generic search inside the census category
    pub search: Vec<ObjId>,
}

impl<O, F> EmTerminal<O, F> {
    pub fn verified(&self) -> bool {
        self.is_algebra && self.unique_from_all
    }

    /// The formula's verdict matches generic search.
    pub fn agrees(&self) -> bool {
        self.object.is_some_and(|o| self.search.contains(&o) == self.verified())
    }
}

pub fn em_terminal<M: Model>(m: &M, t: &dyn Monad<M>, em: &EmCategory<M::Obj, M::Mor>) -> Result<EmTerminal<M::Obj, M::Mor>, MonadError> {
    let one = m.terminal().ok_or(MonadError::NoTerminalInBase)?;
    let t1 = t.t_obj(m, &one).ok_or(MonadError::NoTerminalInBase)?;
    let algebra = Algebra::new(one.clone(), m.bang(&t1).ok_or(MonadError::NoTerminalInBase)?);
    let is_algebra = is_algebra(m, t, &one, &algebra.action) == Some(true);
    let unique_from_all = em.algebras.iter().all(|a| homomorphisms(m, t, a, &algebra).is_some_and(|h| h.len() == 1));
    Ok(EmTerminal { object: em.object_of(&algebra), search: find_terminals(&em.cat), algebra, is_algebra, unique_from_all })
}

/// The product algebra `(A × B, (f_A × f_B) ∘ ⟨Tπ₁, Tπ₂⟩)` and its checks.
#[derive(Clone, Debug)]
pub struct EmProduct<O, F> {
    pub algebra: Algebra<O, F>,
    pub pi1: F,
    pub pi2: F,
    pub is_algebra: bool,
    pub projections_hom: bool,
    /// `⟨f, g⟩` is a homomorphism for all homomorphisms from census algebras
    pub mediators_hom: bool,
    /// and it is the only homomorphism with those projections
    pub mediators_unique: bool,
    /// `δ` is a homomorphism, when both factors are the same algebra
    pub diagonal_hom: Option<bool>,
    /// generic search in the census category finds this witness; `None` when the
    /// product algebra lies outside the census
    pub search: Option<bool>,
}

impl<O, F> EmProduct<O, F> {
    pub fn verified(&self) -> bool {
        self.is_algebra && self.projections_hom && self.mediators_hom && self.mediators_unique && self.diagonal_hom != Some(false)
    }

    pub fn agrees(&self) -> Option<bool> {
        self.search.map(|s| s == self.verified())
    }
}

pub fn product_action<M: Model>(m: &M, t: &dyn Monad<M>, a: &AlgebraOf<M>, b: &AlgebraOf<M>) -> Option<M::Mor> {
    let (x, y) = (&a.carrier, &b.carrier);
    let tp = m.pair(&t.t_mor(m, &m.proj1(x, y)?)?, &t.t_mor(m, &m.proj2(x, y)?)?)?;
    m.compose(&m.times(&a.action, &b.action)?, &tp)
}

pub fn em_product<M: Model>(
    m: &M,
    t: &dyn Monad<M>,
    em: &EmCategory<M::Obj, M::Mor>,
    a: &AlgebraOf<M>,
    b: &AlgebraOf<M>,
) -> Result<EmProduct<M::Obj, M::Mor>, MonadError> {
    let (x, y) = (&a.carrier, &b.carrier);
    let name = || format!("{} x {}", m.show_obj(x), m.show_obj(y));
    let p = m.product(x, y).ok_or_else(|| MonadError::MissingProduct(name()))?;
    let (pi1, pi2) = m.proj1(x, y).zip(m.proj2(x, y)).ok_or_else(|| MonadError::MissingProduct(name()))?;
    let action = product_action(m, t, a, b).ok_or_else(|| MonadError::MissingProduct(name()))?;
    let prod = Algebra::new(p, action);
    let is_algebra = is_algebra(m, t, &prod.carrier, &prod.action) == Some(true);
    let projections_hom = is_homomorphism(m, t, &prod, a, &pi1) == Some(true) && is_homomorphism(m, t, &prod, b, &pi2) == Some(true);

    let (mut mediators_hom, mut mediators_unique) = (true, true);
    for c in &em.algebras {
        let (Some(fs), Some(gs), Some(hs)) = (homomorphisms(m, t, c, a), homomorphisms(m, t, c, b), homomorphisms(m, t, c, &prod)) else {
            return Err(too_big(m, "homomorphisms", &c.carrier, &prod.carrier));
        };
        let mut by_legs: HashMap<(M::Mor, M::Mor), usize> = HashMap::new();
        for h in &hs {
            if let (Some(l), Some(r)) = (m.compose(&pi1, h), m.compose(&pi2, h)) {
                *by_legs.entry((l, r)).or_default() += 1;
            }
        }
        for f in &fs {
            for g in &gs {
                mediators_hom &= m.pair(f, g).is_some_and(|u| hs.contains(&u));
                mediators_unique &= by_legs.get(&(f.clone(), g.clone())) == Some(&1);
            }
        }
    }
    let diagonal_hom = (a == b).then(|| m.delta(x).is_some_and(|d| is_homomorphism(m, t, a, &prod, &d) == Some(true)));
    let search = match (em.object_of(a), em.object_of(b), em.object_of(&prod)) {
        (Some(oa), Some(ob), Some(op)) => {
            Some(find_products(&em.cat, oa, ob).iter().any(|w| w.apex == op && em.homs[w.pi1.idx()] == pi1 && em.homs[w.pi2.idx()] == pi2))
        }
        _ => None,
    };
    Ok(EmProduct { algebra: prod, pi1, pi2, is_algebra, projections_hom, mediators_hom, mediators_unique, diagonal_hom, search })
}

/// `f: D × A → C` satisfies `f ∘ (id × f_A) = f_C ∘ Tf ∘ ℓst`.
pub fn ahom_check<M: Model>(m: &M, t: &dyn Monad<M>, f: &M::Mor, d: &M::Obj, a: &AlgebraOf<M>, c: &AlgebraOf<M>) -> Option<bool> {
    let lhs = m.compose(f, &m.times(&m.id(d), &a.action)?)?;
    let rhs = m.chain(&[c.action.clone(), t.t_mor(m, f)?, t.lst(m, d, &a.carrier)?])?;
    Some(lhs == rhs)
}

/// All of `AHom(D × 𝒜, 𝒞)`.
pub fn ahom<M: Model>(m: &M, t: &dyn Monad<M>, d: &M::Obj, a: &AlgebraOf<M>, c: &AlgebraOf<M>) -> Option<Vec<M::Mor>> {
    let p = m.product(d, &a.carrier)?;
    let hom = m.hom(&p, &c.carrier)?;
    Some(hom.into_iter().filter(|f| ahom_check(m, t, f, d, a, c) == Some(true)).collect())
}

/// `λ(f_A ∘ Tev ∘ Ts ∘ ℓst ∘ s): T(B ⇒ A) → B ⇒ A`.
pub fn internal_action<M: Model>(m: &M, t: &dyn Monad<M>, b: &M::Obj, a: &AlgebraOf<M>) -> Option<M::Mor> {
    let e = m.exponential(b, &a.carrier)?;
    let te = t.t_obj(m, &e)?;
    let phi = m.chain(&[a.action.clone(), t.t_mor(m, &m.eval(b, &a.carrier)?)?, t.t_mor(m, &m.swap(b, &e)?)?, t.lst(m, b, &e)?, m.swap(&te, b)?])?;
    m.curry(&te, b, &phi)
}

/// `B ⇒* 𝒜` with its verified laws.
#[derive(Clone, Debug)]
pub struct InternalExponent<O, F> {
    pub base: O,
    pub algebra: Algebra<O, F>,
    pub al1: bool,
    pub al2: bool,
    /// `ev ∘ s ∈ AHom(B × (B ⇒* 𝒜), 𝒜)`
    pub ev_s_ahom: bool,
}

impl<O, F> InternalExponent<O, F> {
    pub fn verified(&self) -> bool {
        self.al1 && self.al2 && self.ev_s_ahom
    }
}

pub fn internal_exponent<M: Model>(m: &M, t: &dyn Monad<M>, b: &M::Obj, a: &AlgebraOf<M>) -> Result<InternalExponent<M::Obj, M::Mor>, MonadError> {
    let name = || format!("{} => {}", m.show_obj(b), m.show_obj(&a.carrier));
    let e = m.exponential(b, &a.carrier).ok_or_else(|| MonadError::MissingExponential(name()))?;
    t.lst(m, b, &e).ok_or(MonadError::MissingStrength)?;
    let action = internal_action(m, t, b, a).ok_or_else(|| MonadError::MissingExponential(name()))?;
    let alg = Algebra::new(e.clone(), action);
    let al1 = m.compose(&alg.action, &t.eta(m, &e).ok_or(MonadError::MissingStrength)?) == Some(m.id(&e));
    let al2 = {
        let l = t.mu(m, &e).and_then(|mu| m.compose(&alg.action, &mu));
        let r = t.t_mor(m, &alg.action).and_then(|ta| m.compose(&alg.action, &ta));
        l.is_some() && l == r
    };
    let ev_s = m.eval(b, &a.carrier).zip(m.swap(b, &e)).and_then(|(ev, s)| m.compose(&ev, &s));
    let ev_s_ahom = ev_s.and_then(|f| ahom_check(m, t, &f, b, &alg, a)) == Some(true);
    Ok(InternalExponent { base: b.clone(), algebra: alg, al1, al2, ev_s_ahom })
}

/// `𝒜 ⊸ ℬ`: the equalizer of `λ(ev ∘ (id × f_A))` and `λ(f_B ∘ Tev ∘ ℓst)`.
#[derive(Clone, Debug)]
pub struct ExternalExponent<O, F> {
    pub a: Algebra<O, F>,
    pub b: Algebra<O, F>,
    pub object: O,
    pub e: F,
    /// the parallel pair `A ⇒ B → TA ⇒ B`
    pub pair: (F, F),
    /// `ev ∘ (e × id): (𝒜 ⊸ ℬ) × A → B`
    pub ev: F,
    pub ev_ahom: bool,
}

/// `Θ` and `Ω` compared on one test object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCheck<O> {
    pub c: O,
    /// `|AHom(C × 𝒜, ℬ)|`
    pub ahom: usize,
    /// `|Hom(C, 𝒜 ⊸ ℬ)|`
    pub hom: usize,
    pub theta_defined: bool,
    pub omega_lands: bool,
    pub theta_omega: bool,
    pub omega_theta: bool,
}

impl<O> BijectionCheck<O> {
    pub fn exact(&self) -> bool {
        self.ahom == self.hom && self.theta_defined && self.omega_lands && self.theta_omega && self.omega_theta
    }
}

impl<O: Clone, F: Clone + Eq> ExternalExponent<O, F> {
    /// The unique `m_f` with `e ∘ m_f = λf`.
    pub fn theta<M: Model<Obj = O, Mor = F>>(&self, m: &M, c: &O, f: &F) -> Option<F> {
        let lf = m.curry(c, &self.a.carrier, f)?;
        m.equalizer_mediate(&self.pair.0, &self.pair.1, &lf)
    }

    /// `λ⁻¹(e ∘ g)`.
    pub fn omega<M: Model<Obj = O, Mor = F>>(&self, m: &M, g: &F) -> Option<F> {
        m.uncurry(&self.a.carrier, &self.b.carrier, &m.compose(&self.e, g)?)
    }

    /// Enumerates both sides over `C` and checks `Θ ∘ Ω = id` and `Ω ∘ Θ = id`.
    pub fn bijection<M: Model<Obj = O, Mor = F>>(&self, m: &M, t: &dyn Monad<M>, c: &O) -> Option<BijectionCheck<O>> {
        let fs = ahom(m, t, c, &self.a, &self.b)?;
        let gs = m.hom(c, &self.object)?;
        let thetas: Vec<Option<F>> = fs.iter().map(|f| self.theta(m, c, f)).collect();
        let omegas: Vec<Option<F>> = gs.iter().map(|g| self.omega(m, g)).collect();
        Some(BijectionCheck {
            c: c.clone(),
            ahom: fs.len(),
            hom: gs.len(),
            theta_defined: thetas.iter().all(Option::is_some),
            omega_lands: omegas.iter().all(|w| w.as_ref().is_some_and(|f| fs.contains(f))),
            theta_omega: gs.iter().zip(&omegas).all(|(g, w)| w.as_ref().and_then(|f| self.theta(m, c, f)).as_ref() == Some(g)),
            omega_theta: fs.iter().zip(&thetas).all(|(f, th)| th.as_ref().and_then(|g| self.omega(m, g)).as_ref() == Some(f)),
        })
    }
}

pub fn external_exponent<M: Model>(m: &M, t: &dyn Monad<M>, a: &AlgebraOf<M>, b: &AlgebraOf<M>) -> Result<ExternalExponent<M::Obj, M::Mor>, MonadError> {
    let (x, y) = (&a.carrier, &b.carrier);
    let name = || format!("{} => {}", m.show_obj(x), m.show_obj(y));
    let missing = || MonadError::MissingExponential(name());
    let ab = m.exponential(x, y).ok_or_else(missing)?;
    let tx = t.t_obj(m, x).ok_or_else(missing)?;
    let ev = m.eval(x, y).ok_or_else(missing)?;
    let lst = t.lst(m, &ab, x).ok_or(MonadError::MissingStrength)?;
    let prod = || MonadError::MissingProduct(format!("{} x {}", m.show_obj(&ab), m.show_obj(&tx)));
    let left = m.compose(&ev, &m.times(&m.id(&ab), &a.action).ok_or_else(prod)?).ok_or_else(prod)?;
    let right = m.chain(&[b.action.clone(), t.t_mor(m, &ev).ok_or_else(missing)?, lst]).ok_or_else(prod)?;
    let u1 = m.curry(&ab, &tx, &left).ok_or_else(missing)?;
    let u2 = m.curry(&ab, &tx, &right).ok_or_else(missing)?;
    let (object, e) = m.equalizer(&u1, &u2).ok_or_else(|| MonadError::MissingEqualizer(name()))?;
    let ev_lolli = m.times(&e, &m.id(x)).and_then(|ex| m.compose(&ev, &ex)).ok_or_else(prod)?;
    let ev_ahom = ahom_check(m, t, &ev_lolli, &object, a, b) == Some(true);
    Ok(ExternalExponent { a: a.clone(), b: b.clone(), object, e, pair: (u1, u2), ev: ev_lolli, ev_ahom })
}

/// One row of the comparison `Hom(C, 𝒜 ⊸ ℬ)` against `Hom_T(𝒜, C ⇒* ℬ)`.
#[derive(Clone, Debug)]
pub struct ProbeRow<O, F> {
    pub c: O,
    pub a: Algebra<O, F>,
    pub b: Algebra<O, F>,
    pub lhs: usize,
    pub rhs: usize,
}

impl<O, F> ProbeRow<O, F> {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Counts both sides; the outcome is data, not a law.
pub fn conjecture_probe<M: Model>(m: &M, t: &dyn Monad<M>, c: &M::Obj, a: &AlgebraOf<M>, b: &AlgebraOf<M>) -> Result<ProbeRow<M::Obj, M::Mor>, MonadError> {
    let ext = external_exponent(m, t, a, b)?;
    let lhs = m.hom(c, &ext.object).ok_or_else(|| too_big(m, "hom", c, &ext.object))?.len();
    let int = internal_exponent(m, t, c, b)?;
    let rhs = homomorphisms(m, t, a, &int.algebra).ok_or_else(|| too_big(m, "homomorphisms", &a.carrier, &int.algebra.carrier))?.len();
    Ok(ProbeRow { c: c.clone(), a: a.clone(), b: b.clone(), lhs, rhs })
}

/// A monad on an explicit finite category, given by functor and natural transformations.
#[derive(Clone, Debug)]
pub struct MonadData {
    pub name: String,
    pub functor: FunctorData,
    pub eta: NatTransData,
    pub mu: NatTransData,
    /// `ℓst_{A,B}` keyed by `(A, B)`
    pub strength: Option<BTreeMap<(ObjId, ObjId), MorId>>,
}

impl MonadData {
    /// Checks that `η: id ⇒ T` and `μ: T² ⇒ T` have the right shapes; the
    /// monad laws themselves are left to [`validate_monad`].
    pub fn new(name: &str, functor: FunctorData, eta: NatTransData, mu: NatTransData) -> Result<Self, MonadError> {
        if !functor.is_endofunctor() {
            return Err(MonadError::Shape("T is not an endofunctor".into()));
        }
        let id = FunctorData::identity(functor.source.clone());
        let tt = functor.after(&functor)?;
        if eta.source != id || eta.target != functor {
            return Err(MonadError::Shape("unit is not id => T".into()));
        }
        if mu.source != tt || mu.target != functor {
            return Err(MonadError::Shape("multiplication is not T.T => T".into()));
        }
        Ok(MonadData { name: name.into(), functor, eta, mu, strength: None })
    }

    pub fn with_strength(mut self, strength: BTreeMap<(ObjId, ObjId), MorId>) -> Self {
        self.strength = Some(strength);
        self
    }

    /// A closure operator on a thin category: every structure map is the unique
    /// arrow of its type. Fails if some required arrow is missing. A strength is
    /// attached when every `A × TB → T(A × B)` exists.
    pub fn closure(model: &FinModel, closure: &[ObjId]) -> Result<Self, MonadError> {
        let c = &model.cat;
        if c.objects().any(|a| c.objects().any(|b| c.hom(a, b).len() > 1)) {
            return Err(MonadError::Shape("closure monads need a thin category".into()));
        }
        if closure.len() != c.num_objects() {
            return Err(MonadError::Shape("closure map has the wrong size".into()));
        }
        let unique =
            |a: ObjId, b: ObjId| c.hom(a, b).first().copied().ok_or_else(|| MonadError::Shape(format!("no arrow {} -> {}", c.obj_name(a), c.obj_name(b))));
        let t = |a: ObjId| closure[a.idx()];
        let mor_map = c.morphisms().map(|f| unique(t(c.dom(f)), t(c.cod(f)))).collect::<Result<Vec<_>, _>>()?;
        let functor = FunctorData::new(c.clone(), c.clone(), closure.to_vec(), mor_map)?;
        let eta_c = c.objects().map(|a| unique(a, t(a))).collect::<Result<Vec<_>, _>>()?;
        let mu_c = c.objects().map(|a| unique(t(t(a)), t(a))).collect::<Result<Vec<_>, _>>()?;
        let eta = NatTransData::new(FunctorData::identity(c.clone()), functor.clone(), eta_c)?;
        let mu = NatTransData::new(functor.after(&functor)?, functor.clone(), mu_c)?;
        let monad = MonadData::new("closure", functor, eta, mu)?;
        let mut strength = BTreeMap::new();
        for a in c.objects() {
            for b in c.objects() {
                let (Some(src), Some(tgt)) = (model.product(&a, &t(b)), model.product(&a, &b)) else {
                    return Ok(monad);
                };
                match c.hom(src, t(tgt)).first() {
                    Some(&s) => strength.insert((a, b), s),
                    None => return Ok(monad),
                };
            }
        }
        Ok(monad.with_strength(strength))
    }
}

impl Monad<FinModel> for MonadData {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn t_obj(&self, _m: &FinModel, a: &ObjId) -> Option<ObjId> {
        Some(self.functor.obj(*a))
    }
    fn t_mor(&self, _m: &FinModel, f: &MorId) -> Option<MorId> {
        Some(self.functor.mor(*f))
    }
    fn eta(&self, _m: &FinModel, a: &ObjId) -> Option<MorId> {
        Some(self.eta.at(*a))
    }
    fn mu(&self, _m: &FinModel, a: &ObjId) -> Option<MorId> {
        Some(self.mu.at(*a))
    }
    fn lst(&self, _m: &FinModel, a: &ObjId, b: &ObjId) -> Option<MorId> {
        self.strength.as_ref()?.get(&(*a, *b)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{zoo, Func, Maybe, Monoid, Sets, Writer};
    use crate::structures::choose_cartesian_structure;

    fn pointed(n: u32, base: u32) -> AlgebraOf<Sets> {
        Algebra::new(n, Func::from_fn(n + 1, n, |x| if x == n { base } else { x }))
    }

    #[test]
    fn maybe_algebras_are_pointed_sets() {
        let s = Sets::new(3);
        for n in 0..=3 {
            let algs = enumerate_algebras(&s, &Maybe, &n).unwrap();
            assert_eq!(algs.len(), n as usize);
            assert!(algs.iter().all(|f| (0..n).all(|x| f.at(x) == x)));
        }
    }

    #[test]
    fn writer_c2_algebras_are_involutions() {
        let s = Sets::new(2);
        let w = Writer { monoid: Monoid::c2() };
        assert_eq!(enumerate_algebras(&s, &w, &2).unwrap().len(), 2);
        assert_eq!(enumerate_algebras(&s, &w, &0).unwrap().len(), 1);
    }

    #[test]
    fn kleisli_lifting_of_the_unit_is_the_identity() {
        let s = Sets::new(3);
        assert_eq!(klift(&s, &Maybe, &2, &Maybe.eta(&s, &2).unwrap()), Some(s.id(&3)));
        let bottom = Func::from_fn(2, 3, |_| 2);
        assert_eq!(klift(&s, &Maybe, &2, &bottom).unwrap().table, vec![2, 2, 2]);
    }

    #[test]
    fn kleisli_category_counts() {
        let s = Sets::new(2);
        let k = kleisli_category(&s, &Maybe, &[0, 1, 2]).unwrap();
        let one = k.objects.iter().position(|&o| o == 1).unwrap();
        assert_eq!(k.cat.hom(ObjId(one as u32), ObjId(one as u32)).len(), 2);
        assert_eq!(k.cat.num_morphisms(), 23);
    }

    #[test]
    fn pointed_product_has_the_pairwise_basepoint() {
        let s = Sets::new(4);
        let em = em_category(&s, &Maybe, &[0, 1, 2, 3, 4]).unwrap();
        let (a, b) = (pointed(2, 0), pointed(2, 1));
        let p = em_product(&s, &Maybe, &em, &a, &b).unwrap();
        assert!(p.verified());
        assert_eq!(p.algebra.action.at(4), 1);
        assert_eq!(p.agrees(), Some(true));
    }

    #[test]
    fn external_exponent_counts_pointed_maps() {
        let s = Sets::new(3);
        let a = pointed(2, 0);
        let x = external_exponent(&s, &Maybe, &a, &a).unwrap();
        assert_eq!(x.object, 2);
        assert!(x.ev_ahom);
        assert!(x.bijection(&s, &Maybe, &1).unwrap().exact());
    }

    #[test]
    fn closure_monad_on_the_walking_arrow() {
        let c = zoo().into_iter().find(|z| z.name == "walking_arrow").unwrap().category;
        let model = FinModel::new(c.clone(), choose_cartesian_structure(&c));
        let b = c.obj_by_name("b").unwrap();
        let t = MonadData::closure(&model, &[b, b]).unwrap();
        assert!(t.strength.is_some());
        let report = validate_monad(&Target::with_monad(&model, &t), &Bounds::unbounded()).unwrap();
        assert!(report.no_failures());
        let em = em_category(&model, &t, &model.objects()).unwrap();
        assert_eq!(em.algebras.len(), 1);
    }
}
