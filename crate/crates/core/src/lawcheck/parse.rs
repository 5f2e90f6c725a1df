//! Parser for the equation-suite format.
//!
//! ```text
//! suite product
//!
//! law p4 : projection of a product map
//! printed πᵢ ∘ (f₁ × f₂) = fᵢ ∘ πᵢ
//! obj A B C D
//! var f1 : A -> C
//! var f2 : B -> D
//! check pi1[C,D] . (f1 * f2) = f1 . pi1[A,B]
//! check pi2[C,D] . (f1 * f2) = f2 . pi2[A,B]
//! ```
//!
//! Objects are written `A`, `1`, `A*B`, `A=>B` (argument `A`, target `B`)
//! and `T(A)`. `.` composes right to left and binds loosest; `*` is the
//! product of morphisms. A `chain` is followed by `= term [by label]` lines.

use std::collections::HashMap;

use thiserror::Error;

use super::{Law, ObjExpr, Stmt, Suite, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    Sym(&'static str),
}

const SYMBOLS: [&str; 14] = ["<=>", "=>", "->", "=", ".", "*", "<", ">", ",", "(", ")", "[", "]", ":"];

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    'outer: while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(s[start..i].to_string()));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(s[start..i].parse().map_err(|_| "bad number".to_string())?));
            continue;
        }
        for sym in SYMBOLS {
            if s[i..].starts_with(sym) {
                out.push(Tok::Sym(sym));
                i += sym.len();
                continue 'outer;
            }
        }
        return Err(format!("unexpected character {c:?}"));
    }
    Ok(out)
}

/// Names in scope while parsing one law.
#[derive(Default)]
struct Scope {
    objs: Vec<String>,
    algs: Vec<String>,
    vars: Vec<String>,
    defs: HashMap<String, Term>,
    objdefs: HashMap<String, ObjExpr>,
}

struct Cursor<'a> {
    toks: Vec<Tok>,
    pos: usize,
    scope: &'a Scope,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn expect(&mut self, s: &str) -> Result<(), String> {
        match self.next() {
            Some(Tok::Sym(x)) if x == s => Ok(()),
            other => Err(format!("expected `{s}`, found {other:?}")),
        }
    }

    fn ident(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Ident(x)) => Ok(x),
            other => Err(format!("expected a name, found {other:?}")),
        }
    }

    fn done(&self) -> Result<(), String> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(format!("trailing input at {t:?}")),
        }
    }

    fn obj(&mut self) -> Result<ObjExpr, String> {
        let left = self.obj_prod()?;
        if self.at_sym("=>") {
            self.next();
            let right = self.obj()?;
            return Ok(ObjExpr::Exp(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn obj_prod(&mut self) -> Result<ObjExpr, String> {
        let mut acc = self.obj_atom()?;
        while self.at_sym("*") {
            self.next();
            let r = self.obj_atom()?;
            acc = ObjExpr::Prod(Box::new(acc), Box::new(r));
        }
        Ok(acc)
    }

    fn obj_atom(&mut self) -> Result<ObjExpr, String> {
        match self.next() {
            Some(Tok::Num(1)) => Ok(ObjExpr::One),
            Some(Tok::Sym("(")) => {
                let o = self.obj()?;
                self.expect(")")?;
                Ok(o)
            }
            Some(Tok::Ident(x)) if x == "T" => {
                self.expect("(")?;
                let o = self.obj()?;
                self.expect(")")?;
                Ok(ObjExpr::T(Box::new(o)))
            }
            Some(Tok::Ident(x)) => {
                if let Some(o) = self.scope.objdefs.get(&x) {
                    return Ok(o.clone());
                }
                let i = self.scope.objs.iter().position(|o| *o == x).ok_or(format!("undeclared object {x}"))?;
                Ok(ObjExpr::Var(i))
            }
            other => Err(format!("expected an object, found {other:?}")),
        }
    }

    fn objs(&mut self, n: usize) -> Result<Vec<ObjExpr>, String> {
        self.expect("[")?;
        let mut out = vec![self.obj()?];
        while self.at_sym(",") {
            self.next();
            out.push(self.obj()?);
        }
        self.expect("]")?;
        if out.len() != n {
            return Err(format!("expected {n} object arguments, found {}", out.len()));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Term, String> {
        let mut parts = vec![self.term_prod()?];
        while self.at_sym(".") {
            self.next();
            parts.push(self.term_prod()?);
        }
        // right to left: a . b . c = a ∘ (b ∘ c)
        let mut acc = parts.pop().expect("nonempty");
        while let Some(g) = parts.pop() {
            acc = Term::Comp(Box::new(g), Box::new(acc));
        }
        Ok(acc)
    }

    fn term_prod(&mut self) -> Result<Term, String> {
        let mut acc = self.term_atom()?;
        while self.at_sym("*") {
            self.next();
            let r = self.term_atom()?;
            acc = Term::Times(Box::new(acc), Box::new(r));
        }
        Ok(acc)
    }

    fn paren_term(&mut self) -> Result<Term, String> {
        self.expect("(")?;
        let t = self.term()?;
        self.expect(")")?;
        Ok(t)
    }

    fn term_atom(&mut self) -> Result<Term, String> {
        match self.next() {
            Some(Tok::Sym("(")) => {
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            Some(Tok::Sym("<")) => {
                let l = self.term()?;
                self.expect(",")?;
                let r = self.term()?;
                self.expect(">")?;
                Ok(Term::Pair(Box::new(l), Box::new(r)))
            }
            Some(Tok::Ident(x)) => self.named(x),
            other => Err(format!("expected a morphism, found {other:?}")),
        }
    }

    fn named(&mut self, x: String) -> Result<Term, String> {
        let one = |c: &mut Self| -> Result<ObjExpr, String> { Ok(c.objs(1)?.remove(0)) };
        let two = |c: &mut Self| -> Result<(ObjExpr, ObjExpr), String> {
            let mut v = c.objs(2)?;
            let b = v.pop().expect("two");
            Ok((v.pop().expect("two"), b))
        };
        Ok(match x.as_str() {
            "id" => Term::Id(one(self)?),
            "delta" => Term::Delta(one(self)?),
            "bang" => Term::Bang(one(self)?),
            "eta" => Term::Eta(one(self)?),
            "mu" => Term::Mu(one(self)?),
            "pi1" => {
                let (a, b) = two(self)?;
                Term::Pi1(a, b)
            }
            "pi2" => {
                let (a, b) = two(self)?;
                Term::Pi2(a, b)
            }
            "swap" => {
                let (a, b) = two(self)?;
                Term::Swap(a, b)
            }
            "ev" => {
                let (a, b) = two(self)?;
                Term::Ev(a, b)
            }
            "lst" => {
                let (a, b) = two(self)?;
                Term::Lst(a, b)
            }
            "rst" => {
                let (a, b) = two(self)?;
                Term::Rst(a, b)
            }
            "assoc" | "assoc_inv" => {
                let mut v = self.objs(3)?;
                let c = v.pop().expect("three");
                let b = v.pop().expect("three");
                let a = v.pop().expect("three");
                if x == "assoc" {
                    Term::Assoc(a, b, c)
                } else {
                    Term::AssocInv(a, b, c)
                }
            }
            "lam" => {
                let (c, a) = two(self)?;
                Term::Lam(c, a, Box::new(self.paren_term()?))
            }
            "unlam" => {
                let (a, b) = two(self)?;
                Term::Unlam(a, b, Box::new(self.paren_term()?))
            }
            "T" => Term::TMap(Box::new(self.paren_term()?)),
            "act" => {
                self.expect("[")?;
                let a = self.ident()?;
                self.expect("]")?;
                let i = self.scope.algs.iter().position(|n| *n == a).ok_or(format!("undeclared algebra {a}"))?;
                Term::Act(i)
            }
            _ => {
                if let Some(t) = self.scope.defs.get(&x) {
                    return Ok(t.clone());
                }
                let i = self.scope.vars.iter().position(|n| *n == x).ok_or(format!("undeclared morphism {x}"))?;
                Term::Var(i)
            }
        })
    }
}

fn parse_with<T>(scope: &Scope, text: &str, f: impl FnOnce(&mut Cursor) -> Result<T, String>) -> Result<T, String> {
    let mut c = Cursor { toks: lex(text)?, pos: 0, scope };
    let out = f(&mut c)?;
    c.done()?;
    Ok(out)
}

fn equation(c: &mut Cursor) -> Result<(Term, Term), String> {
    let l = c.term()?;
    c.expect("=")?;
    Ok((l, c.term()?))
}

struct Pending {
    law: Law,
    scope: Scope,
}

/// Parses a suite file.
pub fn parse_suite(text: &str) -> Result<Suite, ParseError> {
    let mut name = None;
    let mut laws = Vec::new();
    let mut cur: Option<Pending> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let fail = |m: String| ParseError { line, message: m };
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        let (head, rest) = t.split_once(char::is_whitespace).map(|(h, r)| (h, r.trim())).unwrap_or((t, ""));
        match head {
            "suite" => name = Some(rest.to_string()),
            "law" => {
                if let Some(p) = cur.take() {
                    laws.push(finish(p).map_err(fail)?);
                }
                let (lhs, anchor) = rest.split_once(':').ok_or_else(|| fail("law needs `: anchor`".into()))?;
                let mut words = lhs.split_whitespace();
                let label = words.next().ok_or_else(|| fail("law needs a label".into()))?;
                let suspect = match words.next() {
                    None => false,
                    Some("suspect") => true,
                    Some(w) => return Err(fail(format!("unexpected `{w}`"))),
                };
                cur = Some(Pending {
                    law: Law {
                        label: label.to_string(),
                        anchor: anchor.trim().to_string(),
                        printed: None,
                        suspect,
                        objs: Vec::new(),
                        algs: Vec::new(),
                        vars: Vec::new(),
                        givens: Vec::new(),
                        stmts: Vec::new(),
                    },
                    scope: Scope::default(),
                });
            }
            _ => {
                let p = cur.as_mut().ok_or_else(|| fail(format!("`{head}` outside a law")))?;
                statement(p, head, rest).map_err(fail)?;
            }
        }
    }
    if let Some(p) = cur.take() {
        laws.push(finish(p).map_err(|m| ParseError { line: text.lines().count(), message: m })?);
    }
    let name = name.ok_or(ParseError { line: 1, message: "missing `suite` line".into() })?;
    Ok(Suite { name, laws })
}

fn fresh(scope: &Scope, name: &str) -> Result<(), String> {
    let taken = scope.objs.iter().chain(&scope.algs).chain(&scope.vars).any(|n| n == name) || scope.defs.contains_key(name) || scope.objdefs.contains_key(name);
    if taken {
        Err(format!("{name} declared twice"))
    } else {
        Ok(())
    }
}

fn statement(p: &mut Pending, head: &str, rest: &str) -> Result<(), String> {
    let (law, scope) = (&mut p.law, &mut p.scope);
    match head {
        "printed" => law.printed = Some(rest.to_string()),
        "obj" => {
            for o in rest.split_whitespace() {
                fresh(scope, o)?;
                if o == "T" {
                    return Err("`T` is reserved".into());
                }
                scope.objs.push(o.to_string());
                law.objs.push(o.to_string());
            }
        }
        "alg" => {
            let (a, carrier) = rest.split_once(':').ok_or("alg needs `name : Object`")?;
            let (a, carrier) = (a.trim(), carrier.trim());
            fresh(scope, a)?;
            let c = scope.objs.iter().position(|o| o == carrier).ok_or(format!("carrier {carrier} must be an object variable"))?;
            scope.algs.push(a.to_string());
            law.algs.push((a.to_string(), c));
        }
        "var" => {
            let (f, ty) = rest.split_once(':').ok_or("var needs `name : A -> B`")?;
            let f = f.trim();
            fresh(scope, f)?;
            let (d, c) = parse_with(scope, ty, |c| {
                let d = c.obj()?;
                c.expect("->")?;
                Ok((d, c.obj()?))
            })?;
            scope.vars.push(f.to_string());
            law.vars.push((f.to_string(), d, c));
        }
        "def" => {
            let (n, body) = rest.split_once('=').ok_or("def needs `name = term`")?;
            let n = n.trim();
            fresh(scope, n)?;
            let t = parse_with(scope, body, |c| c.term())?;
            scope.defs.insert(n.to_string(), t);
        }
        "objdef" => {
            let (n, body) = rest.split_once('=').ok_or("objdef needs `name = object`")?;
            let n = n.trim();
            fresh(scope, n)?;
            let o = parse_with(scope, body, |c| c.obj())?;
            scope.objdefs.insert(n.to_string(), o);
        }
        "given" => law.givens.push(parse_with(scope, rest, equation)?),
        "check" => {
            let (l, r) = parse_with(scope, rest, equation)?;
            law.stmts.push(Stmt::Check(l, r));
        }
        "iff" => {
            let (a, b) = parse_with(scope, rest, |c| {
                let a = equation(c)?;
                c.expect("<=>")?;
                Ok((a, equation(c)?))
            })?;
            law.stmts.push(Stmt::Iff(a, b));
        }
        "chain" => {
            let t = parse_with(scope, rest, |c| c.term())?;
            law.stmts.push(Stmt::Chain(vec![(t, None)]));
        }
        "=" => {
            let Some(Stmt::Chain(steps)) = law.stmts.last_mut() else {
                return Err("`=` step outside a chain".into());
            };
            let (body, by) = match rest.rsplit_once(" by ") {
                Some((b, l)) => (b, Some(l.trim().to_string())),
                None => (rest, None),
            };
            steps.push((parse_with(scope, body, |c| c.term())?, by));
        }
        other => return Err(format!("unknown statement `{other}`")),
    }
    Ok(())
}

fn finish(p: Pending) -> Result<Law, String> {
    let law = p.law;
    if law.stmts.is_empty() {
        return Err(format!("law {} has no check", law.label));
    }
    let chains = law.stmts.iter().filter(|s| matches!(s, Stmt::Chain(_))).count();
    if chains > 0 && law.stmts.len() > 1 {
        return Err(format!("law {}: a chain must be the only statement", law.label));
    }
    if let Some(Stmt::Chain(steps)) = law.stmts.first() {
        if steps.len() < 2 {
            return Err(format!("law {}: chain without steps", law.label));
        }
    }
    Ok(law)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_nested_and_binds_loosest() {
        let s = parse_suite("suite t\nlaw x : a\nobj A\nvar f : A -> A\ncheck f . f * f . f = f\n").unwrap();
        let Stmt::Check(l, _) = &s.laws[0].stmts[0] else { panic!() };
        let f = || Box::new(Term::Var(0));
        let expected = Term::Comp(f(), Box::new(Term::Comp(Box::new(Term::Times(f(), f())), f())));
        assert_eq!(*l, expected);
    }

    #[test]
    fn object_grammar() {
        let s = parse_suite("suite t\nlaw x : a\nobj A B\nvar f : A*B => T(A) -> 1\ncheck f = f\n").unwrap();
        let (_, d, c) = &s.laws[0].vars[0];
        let a = || Box::new(ObjExpr::Var(0));
        let prod = ObjExpr::Prod(a(), Box::new(ObjExpr::Var(1)));
        assert_eq!(*d, ObjExpr::Exp(Box::new(prod), Box::new(ObjExpr::T(a()))));
        assert_eq!(*c, ObjExpr::One);
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_suite("suite t\nlaw x : a\nobj A\ncheck g = id[A]\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("undeclared morphism g"));
        assert!(parse_suite("suite t\nlaw x : a\nobj A\n").is_err());
    }

    #[test]
    fn chains_record_justifications() {
        let s = parse_suite("suite t\nlaw c : a\nobj A\nchain id[A]\n= id[A] . id[A] by unit\n= id[A]\n").unwrap();
        let Stmt::Chain(steps) = &s.laws[0].stmts[0] else { panic!() };
        assert_eq!(steps.len(), 3);
        assert_eq!(steps[1].1.as_deref(), Some("unit"));
        assert_eq!(steps[2].1, None);
    }
}
