//! Recursive-descent parser for types, terms, rewrites and derivations.

use std::sync::Arc;

use super::lexer::{lex, Span, SyntaxError, Tok};
use crate::equational::{ArgKind, AxiomId, AxiomInstance, Derivation, MetaArg};
use crate::signature::{Tier, Type};
use crate::syntax::{eval_binders, positional_binder, proj_binder, var, Binding, Context, Rewrite, Term, Var};

pub type PResult<T> = Result<T, SyntaxError>;

/// Names that head rewrite constructors and so cannot name surfaces.
pub const REWRITE_KEYWORDS: [&str; 11] = ["id", "assoc", "subid", "projc", "counitx", "transx", "counite", "transe", "inv", "unitx", "unite"];
/// Names that head term constructors and so cannot name constants.
pub const TERM_KEYWORDS: [&str; 4] = ["pair", "proj", "lam", "eval"];

pub struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    pub fn new(src: &str) -> PResult<Parser> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    pub fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(SyntaxError { span: self.span(), message: message.into() })
    }

    pub fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    pub fn at(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    pub fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    pub fn eat(&mut self, s: &str) -> bool {
        if self.at(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> PResult<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.unexpected(&format!("`{s}`"))
        }
    }

    pub fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.at_word(w) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{w}`"))
        }
    }

    pub fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected("a name"),
        }
    }

    /// A name that may also be a numeral, as for objects of finite categories.
    pub fn name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n.to_string())
            }
            _ => self.ident(),
        }
    }

    pub fn int(&mut self) -> PResult<usize> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("a number"),
        }
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    /// `p (, p)*` up to `close`, which is consumed.
    pub fn list<T>(&mut self, close: &str, mut p: impl FnMut(&mut Parser) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(p(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    // Types.

    pub fn ty(&mut self) -> PResult<Type> {
        let a = self.ty_atom()?;
        if self.eat("->") {
            Ok(Type::arrow(a, self.ty()?))
        } else {
            Ok(a)
        }
    }

    pub fn ty_atom(&mut self) -> PResult<Type> {
        match self.peek().clone() {
            Tok::Int(1) => {
                self.bump();
                Ok(Type::unit())
            }
            Tok::Sym("(") => {
                self.bump();
                let t = self.ty()?;
                self.expect(")")?;
                Ok(t)
            }
            Tok::Ident(s) if s == "prod" && matches!(self.peek_at(1), Tok::Sym("(")) => {
                self.bump();
                self.bump();
                Ok(Type::Prod(self.list(")", Parser::ty)?))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Type::base(&s))
            }
            _ => self.unexpected("a type"),
        }
    }

    pub fn tier(&mut self) -> PResult<Tier> {
        let s = self.ident()?;
        Tier::parse(&s).map_or_else(|| self.error(format!("unknown tier `{s}` (expected b, x or xarrow)")), Ok)
    }

    /// `x : A, y : B`, possibly empty, up to `)`.
    pub fn context(&mut self) -> PResult<Context> {
        let entries = self.list(")", |p| {
            let x = p.ident()?;
            p.expect(":")?;
            Ok((var(&x), p.ty()?))
        })?;
        Ok(Context(entries))
    }

    // Terms.

    pub fn term(&mut self) -> PResult<Term> {
        if self.at_word("lam") {
            self.bump();
            let x = self.ident()?;
            self.expect(":")?;
            let ty = self.ty()?;
            self.expect(".")?;
            let body = self.term()?;
            return Ok(Term::Lam { var: var(&x), ty, body: Box::new(body) });
        }
        let mut t = self.term_atom()?;
        while self.at("{") {
            self.bump();
            let bs = self.list("}", |p| p.binding(Parser::term))?;
            t = Term::subst(t, bs);
        }
        Ok(t)
    }

    pub fn binding<T>(&mut self, value: impl Fn(&mut Parser) -> PResult<T>) -> PResult<Binding<T>> {
        let x = self.ident()?;
        let ty = if self.eat(":") { Some(self.ty_atom()?) } else { None };
        self.expect("->")?;
        Ok(Binding { var: var(&x), ty, value: value(self)? })
    }

    fn term_atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Sym("(") => {
                self.bump();
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            Tok::Ident(s) if s == "pair" && matches!(self.peek_at(1), Tok::Sym("(")) => {
                self.bump();
                self.bump();
                Ok(Term::Pair(self.list(")", Parser::term)?))
            }
            Tok::Ident(s) if s == "proj" && matches!(self.peek_at(1), Tok::Sym("[")) => {
                self.bump();
                self.bump();
                let k = self.int()?;
                self.expect("/")?;
                let n = self.int()?;
                self.expect("]")?;
                if self.eat("{") {
                    let u = self.term()?;
                    self.expect("}")?;
                    let p = proj_binder();
                    return Ok(Term::subst(Term::proj(k, n, Term::Var(p.clone())), vec![Binding::new(p, u)]));
                }
                self.expect("(")?;
                let arg = self.term()?;
                self.expect(")")?;
                Ok(Term::proj(k, n, arg))
            }
            Tok::Ident(s) if s == "eval" && matches!(self.peek_at(1), Tok::Sym("(") | Tok::Sym("{")) => {
                self.bump();
                let sugared = self.eat("{");
                if !sugared {
                    self.expect("(")?;
                }
                let g = self.term()?;
                self.expect(",")?;
                let a = self.term()?;
                self.expect(if sugared { "}" } else { ")" })?;
                if sugared {
                    let (f, x) = eval_binders();
                    let body = Term::eval(Term::Var(f.clone()), Term::Var(x.clone()));
                    return Ok(Term::subst(body, vec![Binding::new(f, g), Binding::new(x, a)]));
                }
                Ok(Term::eval(g, a))
            }
            Tok::Ident(s) => {
                self.bump();
                if self.eat("(") {
                    return Ok(Term::Const(Arc::from(s.as_str()), self.list(")", Parser::term)?));
                }
                if self.at("{") && !matches!(self.peek_at(1), Tok::Sym("}")) && !self.after_brace_binding() {
                    self.bump();
                    let args = self.list("}", Parser::term)?;
                    let binders: Vec<Var> = (1..=args.len()).map(positional_binder).collect();
                    let body = Term::Const(Arc::from(s.as_str()), binders.iter().cloned().map(Term::Var).collect());
                    let bs = binders.into_iter().zip(args).map(|(x, u)| Binding::new(x, u)).collect();
                    return Ok(Term::subst(body, bs));
                }
                Ok(Term::Var(var(&s)))
            }
            _ => self.unexpected("a term"),
        }
    }

    fn after_brace_binding(&self) -> bool {
        matches!(self.peek_at(1), Tok::Ident(_)) && matches!(self.peek_at(2), Tok::Sym("->") | Tok::Sym(":"))
    }

    // Rewrites.

    pub fn rewrite(&mut self) -> PResult<Rewrite> {
        let mut r = self.rw_post()?;
        while self.eat("|") {
            let first = self.rw_post()?;
            r = Rewrite::vert(r, first);
        }
        Ok(r)
    }

    fn rw_post(&mut self) -> PResult<Rewrite> {
        let mut r = self.rw_atom()?;
        while self.at("{") {
            self.bump();
            let bs = self.list("}", |p| p.binding(Parser::rewrite))?;
            r = Rewrite::subst(r, bs);
        }
        Ok(r)
    }

    fn index(&mut self) -> PResult<usize> {
        self.expect("[")?;
        let k = self.int()?;
        self.expect("]")?;
        Ok(k)
    }

    fn source(&mut self) -> PResult<Term> {
        self.expect("[")?;
        let t = self.term()?;
        self.expect("]")?;
        Ok(t)
    }

    fn term_bindings(&mut self, close: &str) -> PResult<Vec<Binding<Term>>> {
        let mut out = Vec::new();
        if self.at(close) {
            return Ok(out);
        }
        loop {
            out.push(self.binding(Parser::term)?);
            if self.at(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn rw_atom(&mut self) -> PResult<Rewrite> {
        let head = match self.peek().clone() {
            Tok::Sym("(") => {
                self.bump();
                let r = self.rewrite()?;
                self.expect(")")?;
                return Ok(r);
            }
            Tok::Ident(s) => s,
            _ => return self.unexpected("a rewrite"),
        };
        self.bump();
        match head.as_str() {
            "inv" => {
                self.expect("(")?;
                let r = self.rw_invertible(true)?;
                self.expect(")")?;
                Ok(r)
            }
            "id" => {
                self.expect("(")?;
                let t = self.term()?;
                self.expect(")")?;
                Ok(Rewrite::Id(t))
            }
            "transx" => {
                let source = self.source()?;
                self.expect("(")?;
                Ok(Rewrite::TransposeProd { source, alphas: self.list(")", Parser::rewrite)? })
            }
            "transe" => {
                let source = self.source()?;
                self.expect("(")?;
                let x = self.ident()?;
                self.expect(":")?;
                let ty = self.ty()?;
                self.expect(".")?;
                let alpha = self.rewrite()?;
                self.expect(")")?;
                Ok(Rewrite::TransposeExp { var: var(&x), ty, source, alpha: Box::new(alpha) })
            }
            "assoc" | "subid" | "projc" | "counitx" | "counite" => {
                self.pos -= 1;
                self.rw_invertible(false)
            }
            "unitx" | "unite" => self.error(format!("`{head}` occurs only inverted, as `inv({head}(...))`")),
            _ => {
                self.expect("(")?;
                Ok(Rewrite::ConstCell(Arc::from(head.as_str()), self.list(")", Parser::term)?))
            }
        }
    }

    /// The constructors that may appear under `inv(...)`.
    fn rw_invertible(&mut self, inv: bool) -> PResult<Rewrite> {
        let head = self.ident()?;
        match head.as_str() {
            "assoc" => {
                self.expect("(")?;
                let body = self.term()?;
                self.expect(";")?;
                let inner = self.term_bindings(";")?;
                self.expect(";")?;
                let outer = self.term_bindings(")")?;
                self.expect(")")?;
                Ok(Rewrite::Assoc { body, inner, outer, inv })
            }
            "subid" => {
                self.expect("(")?;
                let term = self.term()?;
                self.expect(")")?;
                Ok(Rewrite::SubId { term, inv })
            }
            "projc" => {
                let k = self.index()?;
                self.expect("(")?;
                Ok(Rewrite::ProjCell { k, args: self.list(")", Parser::term)?, inv })
            }
            "counitx" => {
                let k = self.index()?;
                self.expect("(")?;
                Ok(Rewrite::CounitProd { k, terms: self.list(")", Parser::term)?, inv })
            }
            "counite" => {
                self.expect("(")?;
                let x = self.ident()?;
                self.expect(".")?;
                let body = self.term()?;
                self.expect(")")?;
                Ok(Rewrite::CounitExp { var: var(&x), body, inv })
            }
            "unitx" if inv => {
                self.expect("(")?;
                let t = self.term()?;
                self.expect(")")?;
                Ok(Rewrite::UnitProdInv(t))
            }
            "unite" if inv => {
                self.expect("(")?;
                let x = self.ident()?;
                self.expect(".")?;
                let source = self.term()?;
                self.expect(")")?;
                Ok(Rewrite::UnitExpInv { var: var(&x), source })
            }
            _ => self.error(format!("`{head}` cannot be inverted")),
        }
    }

    // Derivations.

    pub fn derivation(&mut self) -> PResult<Derivation> {
        let head = self.ident()?;
        match head.as_str() {
            "refl" => {
                self.expect("(")?;
                let r = self.rewrite()?;
                self.expect(")")?;
                Ok(Derivation::Refl(r))
            }
            "symm" => {
                self.expect("(")?;
                let d = self.derivation()?;
                self.expect(")")?;
                Ok(Derivation::symm(d))
            }
            "trans" | "cong-vert" => {
                self.expect("(")?;
                let a = self.derivation()?;
                self.expect(",")?;
                let b = self.derivation()?;
                self.expect(")")?;
                Ok(if head == "trans" { Derivation::trans(a, b) } else { Derivation::cong_vert(a, b) })
            }
            "cong-subst" => {
                self.expect("[")?;
                let binders = self.list("]", |p| p.ident().map(|x| var(&x)))?;
                self.expect("(")?;
                let body = self.derivation()?;
                self.expect(";")?;
                let args = self.list(")", Parser::derivation)?;
                Ok(Derivation::CongSubst { binders, body: Box::new(body), args })
            }
            "cong-transx" => {
                let source = self.source()?;
                self.expect("(")?;
                Ok(Derivation::CongTransposeProd { source, comps: self.list(")", Parser::derivation)? })
            }
            "cong-transe" => {
                let source = self.source()?;
                self.expect("(")?;
                let x = self.ident()?;
                self.expect(":")?;
                let ty = self.ty()?;
                self.expect(".")?;
                let body = self.derivation()?;
                self.expect(")")?;
                Ok(Derivation::CongTransposeExp { var: var(&x), ty, source, body: Box::new(body) })
            }
            _ => {
                let Some(axiom) = AxiomId::parse(&head) else {
                    return self.error(format!("unknown rule `{head}`"));
                };
                self.expect("(")?;
                let mut args = Vec::new();
                for (i, kind) in axiom.schema().iter().enumerate() {
                    if i > 0 {
                        self.expect(",")?;
                    }
                    args.push(self.meta_arg(*kind)?);
                }
                self.expect(")")?;
                Ok(Derivation::Axiom(AxiomInstance::new(axiom, args)))
            }
        }
    }

    pub fn meta_arg(&mut self, kind: ArgKind) -> PResult<MetaArg> {
        Ok(match kind {
            ArgKind::Index => MetaArg::Index(self.int()?),
            ArgKind::Term => MetaArg::Term(self.term()?),
            ArgKind::Rewrite => MetaArg::Rewrite(self.rewrite()?),
            ArgKind::Binder => MetaArg::Binder(var(&self.ident()?)),
            ArgKind::Terms => {
                self.expect("[")?;
                MetaArg::Terms(self.list("]", Parser::term)?)
            }
            ArgKind::Rewrites => {
                self.expect("[")?;
                MetaArg::Rewrites(self.list("]", Parser::rewrite)?)
            }
            ArgKind::TermBindings => {
                self.expect("{")?;
                MetaArg::TermBindings(self.list("}", |p| p.binding(Parser::term))?)
            }
            ArgKind::RewriteBindings => {
                self.expect("{")?;
                MetaArg::RewriteBindings(self.list("}", |p| p.binding(Parser::rewrite))?)
            }
        })
    }

    /// Requires the whole input to have been consumed.
    pub fn finish(&self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }
}

/// Parses a standalone term.
pub fn parse_term(src: &str) -> PResult<Term> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_rewrite(src: &str) -> PResult<Rewrite> {
    let mut p = Parser::new(src)?;
    let r = p.rewrite()?;
    p.finish()?;
    Ok(r)
}

pub fn parse_type(src: &str) -> PResult<Type> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_derivation(src: &str) -> PResult<Derivation> {
    let mut p = Parser::new(src)?;
    let d = p.derivation()?;
    p.finish()?;
    Ok(d)
}
