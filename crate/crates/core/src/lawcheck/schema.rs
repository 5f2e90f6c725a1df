//! Typing of equation schemas with products, exponentials and `T` as free
//! constructors, independent of any instance.

use super::{Law, ObjExpr, Stmt, Term};

type Ty = (ObjExpr, ObjExpr);

fn prod(a: &ObjExpr, b: &ObjExpr) -> ObjExpr {
    ObjExpr::Prod(Box::new(a.clone()), Box::new(b.clone()))
}

fn t(a: &ObjExpr) -> ObjExpr {
    ObjExpr::T(Box::new(a.clone()))
}

/// Renders an object expression with the law's variable names.
pub fn show(law: &Law, o: &ObjExpr) -> String {
    match o {
        ObjExpr::Var(i) => law.objs[*i].clone(),
        ObjExpr::One => "1".into(),
        ObjExpr::Prod(a, b) => format!("({} * {})", show(law, a), show(law, b)),
        ObjExpr::Exp(a, b) => format!("({} => {})", show(law, a), show(law, b)),
        ObjExpr::T(a) => format!("T({})", show(law, a)),
    }
}

fn expect(law: &Law, what: &str, x: &ObjExpr, y: &ObjExpr) -> Result<(), String> {
    if x == y {
        Ok(())
    } else {
        Err(format!("{what}: {} vs {}", show(law, x), show(law, y)))
    }
}

/// Domain and codomain of a term as object expressions.
pub fn type_of(law: &Law, term: &Term) -> Result<Ty, String> {
    use Term::*;
    Ok(match term {
        Var(i) => (law.vars[*i].1.clone(), law.vars[*i].2.clone()),
        Id(a) => (a.clone(), a.clone()),
        Pi1(a, b) => (prod(a, b), a.clone()),
        Pi2(a, b) => (prod(a, b), b.clone()),
        Delta(a) => (a.clone(), prod(a, a)),
        Swap(a, b) => (prod(a, b), prod(b, a)),
        Assoc(a, b, c) => (prod(&prod(a, b), c), prod(a, &prod(b, c))),
        AssocInv(a, b, c) => (prod(a, &prod(b, c)), prod(&prod(a, b), c)),
        Bang(a) => (a.clone(), ObjExpr::One),
        Ev(a, b) => (prod(&ObjExpr::Exp(Box::new(a.clone()), Box::new(b.clone())), a), b.clone()),
        Lam(c, a, body) => {
            let (d, b) = type_of(law, body)?;
            expect(law, "transpose domain", &d, &prod(c, a))?;
            (c.clone(), ObjExpr::Exp(Box::new(a.clone()), Box::new(b)))
        }
        Unlam(a, b, body) => {
            let (c, e) = type_of(law, body)?;
            expect(law, "inverse transpose codomain", &e, &ObjExpr::Exp(Box::new(a.clone()), Box::new(b.clone())))?;
            (prod(&c, a), b.clone())
        }
        Comp(g, f) => {
            let (fd, fc) = type_of(law, f)?;
            let (gd, gc) = type_of(law, g)?;
            expect(law, "composite", &fc, &gd)?;
            (fd, gc)
        }
        Times(f, g) => {
            let (fd, fc) = type_of(law, f)?;
            let (gd, gc) = type_of(law, g)?;
            (prod(&fd, &gd), prod(&fc, &gc))
        }
        Pair(f, g) => {
            let (fd, fc) = type_of(law, f)?;
            let (gd, gc) = type_of(law, g)?;
            expect(law, "pairing domains", &fd, &gd)?;
            (fd, prod(&fc, &gc))
        }
        TMap(f) => {
            let (d, c) = type_of(law, f)?;
            (t(&d), t(&c))
        }
        Eta(a) => (a.clone(), t(a)),
        Mu(a) => (t(&t(a)), t(a)),
        Lst(a, b) => (prod(a, &t(b)), t(&prod(a, b))),
        Rst(a, b) => (prod(&t(a), b), t(&prod(a, b))),
        Act(i) => {
            let c = ObjExpr::Var(law.algs[*i].1);
            (t(&c), c)
        }
    })
}

fn same(law: &Law, l: &Term, r: &Term) -> Result<(), String> {
    let (x, y) = (type_of(law, l)?, type_of(law, r)?);
    expect(law, "equation domains", &x.0, &y.0)?;
    expect(law, "equation codomains", &x.1, &y.1)
}

/// Every equation of the law relates two composites of the same type.
pub fn check(law: &Law) -> Result<(), String> {
    for (l, r) in &law.givens {
        same(law, l, r)?;
    }
    for s in &law.stmts {
        match s {
            Stmt::Check(l, r) => same(law, l, r)?,
            Stmt::Iff((a, b), (c, d)) => {
                same(law, a, b)?;
                same(law, c, d)?;
            }
            Stmt::Chain(steps) => {
                for (k, w) in steps.windows(2).enumerate() {
                    same(law, &w[0].0, &w[1].0).map_err(|e| format!("step {}: {e}", k + 1))?;
                }
            }
        }
    }
    Ok(())
}
