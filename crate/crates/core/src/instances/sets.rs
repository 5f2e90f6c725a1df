//! Finite sets `{0, …, n-1}` and total functions, with element-level structure.
//!
//! Pairs are encoded lexicographically (`(x, y) ↦ x·|B| + y`) and functions
//! `A → B` as big-endian base-`|B|` numerals of their tables.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::model::{Model, Monad};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum InstanceError {
    #[error("bound exceeded for {what}: estimated {estimate}, cap {cap}")]
    BoundExceeded { what: String, estimate: u128, cap: u128 },
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("unknown monad or monoid {0}")]
    Unknown(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Func {
    pub dom: u32,
    pub cod: u32,
    pub table: Vec<u32>,
}

impl Func {
    pub fn new(dom: u32, cod: u32, table: Vec<u32>) -> Self {
        debug_assert!(table.len() == dom as usize && table.iter().all(|&y| y < cod));
        Func { dom, cod, table }
    }

    pub fn from_fn(dom: u32, cod: u32, f: impl Fn(u32) -> u32) -> Self {
        Func::new(dom, cod, (0..dom).map(f).collect())
    }

    pub fn identity(n: u32) -> Self {
        Func::from_fn(n, n, |x| x)
    }

    pub fn at(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod as usize];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod as usize];
        for &y in &self.table {
            seen[y as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Debug for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", show_func(self))
    }
}

/// `dom->cod[t0,t1,…]`
pub fn show_func(f: &Func) -> String {
    let cells: Vec<String> = f.table.iter().map(|y| y.to_string()).collect();
    format!("{}->{}[{}]", f.dom, f.cod, cells.join(","))
}

pub fn parse_func(s: &str) -> Option<Func> {
    let (head, rest) = s.trim().split_once('[')?;
    let (d, c) = head.split_once("->")?;
    let (dom, cod): (u32, u32) = (d.trim().parse().ok()?, c.trim().parse().ok()?);
    let body = rest.strip_suffix(']')?;
    let table: Vec<u32> = if body.trim().is_empty() { Vec::new() } else { body.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()? };
    (table.len() == dom as usize && table.iter().all(|&y| y < cod)).then(|| Func::new(dom, cod, table))
}

/// `b^a`, or `None` above `cap`.
pub fn checked_pow(b: u32, a: u32, cap: u64) -> Option<u32> {
    let mut acc: u64 = 1;
    for _ in 0..a {
        acc = acc.checked_mul(b as u64)?;
        if acc > cap {
            return None;
        }
    }
    (acc <= cap).then_some(acc as u32)
}

/// Digit `x` (big-endian, `a` digits, base `b`) of the numeral `u`.
pub fn digit(u: u32, x: u32, a: u32, b: u32) -> u32 {
    (u / b.pow(a - 1 - x)) % b
}

/// Numeral of a table in base `b`.
pub fn numeral(table: &[u32], b: u32) -> u32 {
    table.iter().fold(0, |acc, &d| acc * b + d)
}

/// The universe of finite sets, quantified over sizes `0..=bound`.
#[derive(Clone, Debug)]
pub struct Sets {
    pub bound: u32,
    /// largest hom-set enumerated
    pub hom_cap: u64,
    /// largest set materialized as an exponential
    pub obj_cap: u64,
}

impl Sets {
    pub fn new(bound: u32) -> Self {
        Sets { bound, hom_cap: 1 << 20, obj_cap: 1 << 16 }
    }

    /// All functions `a → b` in numeral order.
    pub fn functions(&self, a: u32, b: u32) -> Option<Vec<Func>> {
        let count = checked_pow(b, a, self.hom_cap)?;
        Some((0..count).map(|u| Func::from_fn(a, b, |x| digit(u, x, a, b))).collect())
    }
}

impl Model for Sets {
    type Obj = u32;
    type Mor = Func;

    fn dom(&self, f: &Func) -> u32 {
        f.dom
    }
    fn cod(&self, f: &Func) -> u32 {
        f.cod
    }
    fn id(&self, a: &u32) -> Func {
        Func::identity(*a)
    }
    fn compose(&self, g: &Func, f: &Func) -> Option<Func> {
        (f.cod == g.dom).then(|| Func::from_fn(f.dom, g.cod, |x| g.at(f.at(x))))
    }
    fn objects(&self) -> Vec<u32> {
        (0..=self.bound).collect()
    }
    fn hom(&self, a: &u32, b: &u32) -> Option<Vec<Func>> {
        self.functions(*a, *b)
    }
    fn show_obj(&self, a: &u32) -> String {
        a.to_string()
    }
    fn show_mor(&self, f: &Func) -> String {
        show_func(f)
    }
    fn parse_obj(&self, s: &str) -> Option<u32> {
        s.trim().parse().ok()
    }
    fn parse_mor(&self, s: &str) -> Option<Func> {
        parse_func(s)
    }

    fn terminal(&self) -> Option<u32> {
        Some(1)
    }
    fn bang(&self, a: &u32) -> Option<Func> {
        Some(Func::from_fn(*a, 1, |_| 0))
    }
    fn product(&self, a: &u32, b: &u32) -> Option<u32> {
        a.checked_mul(*b)
    }
    fn proj1(&self, a: &u32, b: &u32) -> Option<Func> {
        Some(Func::from_fn(a * b, *a, |p| p / b))
    }
    fn proj2(&self, a: &u32, b: &u32) -> Option<Func> {
        Some(Func::from_fn(a * b, *b, |p| p % b))
    }
    fn pair(&self, f: &Func, g: &Func) -> Option<Func> {
        (f.dom == g.dom).then(|| Func::from_fn(f.dom, f.cod * g.cod, |d| f.at(d) * g.cod + g.at(d)))
    }
    fn times(&self, f: &Func, g: &Func) -> Option<Func> {
        Some(Func::from_fn(f.dom * g.dom, f.cod * g.cod, |p| f.at(p / g.dom) * g.cod + g.at(p % g.dom)))
    }
    fn delta(&self, a: &u32) -> Option<Func> {
        Some(Func::from_fn(*a, a * a, |x| x * a + x))
    }
    fn swap(&self, a: &u32, b: &u32) -> Option<Func> {
        Some(Func::from_fn(a * b, a * b, |p| (p % b) * a + p / b))
    }
    fn assoc(&self, a: &u32, b: &u32, c: &u32) -> Option<Func> {
        Some(Func::from_fn(a * b * c, a * b * c, |p| {
            let (x, y, z) = (p / (b * c), (p / c) % b, p % c);
            x * (b * c) + (y * c + z)
        }))
    }
    fn assoc_inv(&self, a: &u32, b: &u32, c: &u32) -> Option<Func> {
        Some(Func::from_fn(a * b * c, a * b * c, |p| {
            let (x, yz) = (p / (b * c), p % (b * c));
            (x * b + yz / c) * c + yz % c
        }))
    }

    fn exponential(&self, a: &u32, b: &u32) -> Option<u32> {
        checked_pow(*b, *a, self.obj_cap)
    }
    fn eval(&self, a: &u32, b: &u32) -> Option<Func> {
        let e = self.exponential(a, b)?;
        Some(Func::from_fn(e * a, *b, |p| digit(p / a, p % a, *a, *b)))
    }
    fn curry(&self, c: &u32, a: &u32, g: &Func) -> Option<Func> {
        if g.dom != c * a {
            return None;
        }
        let e = self.exponential(a, &g.cod)?;
        Some(Func::from_fn(*c, e, |x| numeral(&g.table[(x * a) as usize..((x + 1) * a) as usize], g.cod)))
    }
    fn uncurry(&self, a: &u32, b: &u32, u: &Func) -> Option<Func> {
        if Some(u.cod) != self.exponential(a, b) {
            return None;
        }
        Some(Func::from_fn(u.dom * a, *b, |p| digit(u.at(p / a), p % a, *a, *b)))
    }

    fn equalizer(&self, f: &Func, g: &Func) -> Option<(u32, Func)> {
        if f.dom != g.dom || f.cod != g.cod {
            return None;
        }
        let agree: Vec<u32> = (0..f.dom).filter(|&x| f.at(x) == g.at(x)).collect();
        Some((agree.len() as u32, Func::new(agree.len() as u32, f.dom, agree)))
    }
    fn equalizer_mediate(&self, f: &Func, g: &Func, h: &Func) -> Option<Func> {
        let (e, incl) = self.equalizer(f, g)?;
        let idx: Option<Vec<u32>> = h.table.iter().map(|y| incl.table.iter().position(|z| z == y).map(|i| i as u32)).collect();
        (h.cod == f.dom).then_some(()).and(idx.map(|t| Func::new(h.dom, e, t)))
    }
    fn pullback(&self, f1: &Func, f2: &Func) -> Option<(u32, Func, Func)> {
        if f1.cod != f2.cod {
            return None;
        }
        let pts: Vec<(u32, u32)> = (0..f1.dom).flat_map(|x| (0..f2.dom).map(move |y| (x, y))).filter(|&(x, y)| f1.at(x) == f2.at(y)).collect();
        let n = pts.len() as u32;
        Some((n, Func::new(n, f1.dom, pts.iter().map(|p| p.0).collect()), Func::new(n, f2.dom, pts.iter().map(|p| p.1).collect())))
    }
    fn pullback_mediate(&self, f1: &Func, f2: &Func, g1: &Func, g2: &Func) -> Option<Func> {
        let (n, p1, p2) = self.pullback(f1, f2)?;
        if g1.dom != g2.dom {
            return None;
        }
        let t: Option<Vec<u32>> = (0..g1.dom).map(|d| (0..n).find(|&i| p1.at(i) == g1.at(d) && p2.at(i) == g2.at(d))).collect();
        t.map(|t| Func::new(g1.dom, n, t))
    }
}

/// `TA = A + 1`, with `⊥` the last element.
#[derive(Clone, Copy, Debug, Default)]
pub struct Maybe;

impl Monad<Sets> for Maybe {
    fn name(&self) -> String {
        "maybe".into()
    }
    fn t_obj(&self, _m: &Sets, a: &u32) -> Option<u32> {
        Some(a + 1)
    }
    fn t_mor(&self, _m: &Sets, f: &Func) -> Option<Func> {
        Some(Func::from_fn(f.dom + 1, f.cod + 1, |x| if x == f.dom { f.cod } else { f.at(x) }))
    }
    fn eta(&self, _m: &Sets, a: &u32) -> Option<Func> {
        Some(Func::from_fn(*a, a + 1, |x| x))
    }
    fn mu(&self, _m: &Sets, a: &u32) -> Option<Func> {
        // both the inner ⊥ (a) and the outer ⊥ (a + 1) collapse to ⊥
        Some(Func::from_fn(a + 2, a + 1, |x| x.min(*a)))
    }
    fn lst(&self, _m: &Sets, a: &u32, b: &u32) -> Option<Func> {
        Some(Func::from_fn(a * (b + 1), a * b + 1, |p| {
            let (x, y) = (p / (b + 1), p % (b + 1));
            if y == *b {
                a * b
            } else {
                x * b + y
            }
        }))
    }
}

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monoid {
    pub name: String,
    pub size: u32,
    pub unit: u32,
    /// `table[x * size + y] = x · y`
    pub table: Vec<u32>,
}

impl Monoid {
    pub fn new(name: &str, size: u32, unit: u32, table: Vec<u32>) -> Result<Self, InstanceError> {
        let bad = |m: String| Err(InstanceError::InvalidMonoid(m));
        if size == 0 || unit >= size || table.len() != (size * size) as usize || table.iter().any(|&v| v >= size) {
            return bad(format!("{name}: malformed table"));
        }
        let m = Monoid { name: name.into(), size, unit, table };
        for x in 0..size {
            if m.mul(unit, x) != x || m.mul(x, unit) != x {
                return bad(format!("{name}: {unit} is not a unit at {x}"));
            }
            for y in 0..size {
                for z in 0..size {
                    if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)) {
                        return bad(format!("{name}: not associative at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[(x * self.size + y) as usize]
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn trivial() -> Self {
        Monoid::new("trivial", 1, 0, vec![0]).expect("trivial monoid")
    }

    /// The cyclic group of order two.
    pub fn c2() -> Self {
        Monoid::new("c2", 2, 0, vec![0, 1, 1, 0]).expect("c2")
    }

    /// Unit `0` adjoined to the left-zero semigroup `{1, 2}`; not commutative.
    pub fn lz3() -> Self {
        Monoid::new("lz3", 3, 0, vec![0, 1, 2, 1, 1, 1, 2, 2, 2]).expect("lz3")
    }

    pub fn by_name(name: &str) -> Result<Self, InstanceError> {
        match name {
            "trivial" => Ok(Monoid::trivial()),
            "c2" => Ok(Monoid::c2()),
            "lz3" => Ok(Monoid::lz3()),
            other => Err(InstanceError::Unknown(other.into())),
        }
    }
}

/// `TA = M × A` with `μ((m₁, (m₂, x))) = (m₁·m₂, x)`.
#[derive(Clone, Debug)]
pub struct Writer {
    pub monoid: Monoid,
}

impl Monad<Sets> for Writer {
    fn name(&self) -> String {
        format!("writer:{}", self.monoid.name)
    }
    fn t_obj(&self, _m: &Sets, a: &u32) -> Option<u32> {
        Some(self.monoid.size * a)
    }
    fn t_mor(&self, _m: &Sets, f: &Func) -> Option<Func> {
        let k = self.monoid.size;
        Some(Func::from_fn(k * f.dom, k * f.cod, |p| (p / f.dom) * f.cod + f.at(p % f.dom)))
    }
    fn eta(&self, _m: &Sets, a: &u32) -> Option<Func> {
        Some(Func::from_fn(*a, self.monoid.size * a, |x| self.monoid.unit * a + x))
    }
    fn mu(&self, _m: &Sets, a: &u32) -> Option<Func> {
        let k = self.monoid.size;
        Some(Func::from_fn(k * k * a, k * a, |p| {
            let (m1, m2, x) = (p / (k * a), (p / a) % k, p % a);
            self.monoid.mul(m1, m2) * a + x
        }))
    }
    fn lst(&self, _m: &Sets, a: &u32, b: &u32) -> Option<Func> {
        let k = self.monoid.size;
        Some(Func::from_fn(a * k * b, k * a * b, |p| {
            let (x, m, y) = (p / (k * b), (p / b) % k, p % b);
            m * (a * b) + x * b + y
        }))
    }
}

/// `maybe` or `writer:<c2|trivial|lz3>`.
pub enum SetMonad {
    Maybe(Maybe),
    Writer(Writer),
}

impl SetMonad {
    pub fn parse(s: &str) -> Result<Self, InstanceError> {
        match s.split_once(':') {
            None if s == "maybe" => Ok(SetMonad::Maybe(Maybe)),
            Some(("writer", m)) => Ok(SetMonad::Writer(Writer { monoid: Monoid::by_name(m)? })),
            _ => Err(InstanceError::Unknown(s.into())),
        }
    }

    pub fn as_monad(&self) -> &dyn Monad<Sets> {
        match self {
            SetMonad::Maybe(m) => m,
            SetMonad::Writer(w) => w,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_transpose_round_trips() {
        let s = Sets::new(3);
        let g = Func::new(6, 2, vec![0, 1, 1, 1, 0, 0]);
        let u = s.curry(&2, &3, &g).unwrap();
        assert_eq!(u.cod, 8);
        assert_eq!(s.uncurry(&3, &2, &u).unwrap(), g);
        let via_eval = s.compose(&s.eval(&3, &2).unwrap(), &s.times(&u, &s.id(&3)).unwrap()).unwrap();
        assert_eq!(via_eval, g);
    }

    #[test]
    fn element_formulas_match_the_generic_definitions() {
        let s = Sets::new(3);
        let generic_swap = s.pair(&s.proj2(&2, &3).unwrap(), &s.proj1(&2, &3).unwrap()).unwrap();
        assert_eq!(s.swap(&2, &3).unwrap(), generic_swap);
        let ab = 6;
        let first = s.compose(&s.proj1(&2, &3).unwrap(), &s.proj1(&ab, &2).unwrap()).unwrap();
        let rest = s.times(&s.proj2(&2, &3).unwrap(), &s.id(&2)).unwrap();
        assert_eq!(s.assoc(&2, &3, &2).unwrap(), s.pair(&first, &rest).unwrap());
    }

    #[test]
    fn monoids_are_validated() {
        assert!(Monoid::new("or", 2, 0, vec![0, 1, 1, 1]).is_ok());
        assert!(matches!(Monoid::new("bad", 2, 1, vec![0, 1, 1, 0]), Err(InstanceError::InvalidMonoid(_))));
        assert!(!Monoid::lz3().is_commutative());
        assert!(Monoid::c2().is_commutative());
    }

    #[test]
    fn maybe_mu_collapses_both_bottoms() {
        let s = Sets::new(3);
        let mu = Maybe.mu(&s, &2).unwrap();
        assert_eq!(mu.table, vec![0, 1, 2, 2]);
        assert_eq!(parse_func(&show_func(&mu)), Some(mu));
    }

    #[test]
    fn pullbacks_and_equalizers_are_subsets() {
        let s = Sets::new(3);
        let (n, _, _) = s.pullback(&Func::new(1, 2, vec![0]), &Func::new(1, 2, vec![1])).unwrap();
        assert_eq!(n, 0);
        let swap = Func::new(2, 2, vec![1, 0]);
        assert_eq!(s.equalizer(&s.id(&2), &swap).unwrap().0, 0);
    }
}
