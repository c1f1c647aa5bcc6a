//! Parsing of whole source files.

use super::ast::{Entry, HomDef, Item, ModelDef, SourceFile};
use super::lexer::Tok;
use super::parser::{PResult, Parser, REWRITE_KEYWORDS, TERM_KEYWORDS};
use crate::semantics::BackendKind;
use crate::syntax::Context;

impl Parser {
    fn opt_context(&mut self) -> PResult<Context> {
        if self.eat("(") {
            self.context()
        } else {
            Ok(Context::empty())
        }
    }

    pub fn item(&mut self) -> PResult<Item> {
        let kw = self.ident()?;
        let item = match kw.as_str() {
            "tier" => Item::Tier(self.tier()?),
            "sort" => Item::Sort(self.ident()?),
            "const" => {
                let span = self.span();
                let name = self.ident()?;
                if TERM_KEYWORDS.contains(&name.as_str()) {
                    return Err(super::lexer::SyntaxError { span, message: format!("`{name}` is reserved and cannot name a constant") });
                }
                let source = if self.eat("(") { self.list(")", Parser::ty)? } else { Vec::new() };
                self.expect(":")?;
                Item::Const { name, source, target: self.ty()? }
            }
            "cell" => {
                let span = self.span();
                let name = self.ident()?;
                if REWRITE_KEYWORDS.contains(&name.as_str()) {
                    return Err(super::lexer::SyntaxError { span, message: format!("`{name}` is reserved and cannot name a cell") });
                }
                self.expect(":")?;
                let from = self.ident()?;
                self.expect("=>")?;
                Item::Cell { name, from, to: self.ident()? }
            }
            "term" => {
                let name = self.ident()?;
                let ctx = self.opt_context()?;
                let ty = if self.eat(":") { Some(self.ty()?) } else { None };
                self.expect(":=")?;
                Item::Term { name, ctx, ty, body: self.term()? }
            }
            "rewrite" => {
                let name = self.ident()?;
                let ctx = self.opt_context()?;
                let ends = if self.eat(":") {
                    let s = self.term()?;
                    self.expect("=>")?;
                    Some((s, self.term()?))
                } else {
                    None
                };
                self.expect(":=")?;
                Item::Rewrite { name, ctx, ends, body: self.rewrite()? }
            }
            "eq" => {
                let name = self.ident()?;
                let ctx = self.opt_context()?;
                self.expect(":")?;
                let lhs = self.rewrite()?;
                self.expect("==")?;
                let rhs = self.rewrite()?;
                self.expect(":=")?;
                Item::Eq { name, ctx, lhs, rhs, proof: self.derivation()? }
            }
            "model" => {
                let name = self.ident()?;
                let def = self.model_def()?;
                if matches!(def, ModelDef::Explicit { .. }) {
                    return Ok(Item::Model { name, def });
                }
                Item::Model { name, def }
            }
            "hom" => {
                let name = self.ident()?;
                self.expect(":")?;
                return Ok(Item::Hom { name, def: self.hom_def()? });
            }
            _ => return Err(super::lexer::SyntaxError { span: self.span(), message: format!("unknown item `{kw}`") }),
        };
        self.expect(";")?;
        Ok(item)
    }

    fn model_def(&mut self) -> PResult<ModelDef> {
        if self.eat("=") {
            let family = self.ident()?;
            self.expect("(")?;
            return match family.as_str() {
                "set" => Ok(ModelDef::Set(self.list(")", Parser::name)?)),
                "discrete" | "chain" => {
                    let n = self.int()?;
                    self.expect(")")?;
                    Ok(if family == "chain" { ModelDef::Chain(n) } else { ModelDef::Discrete(n) })
                }
                _ => self.error(format!("unknown model family `{family}` (expected set, discrete or chain)")),
            };
        }
        self.expect("{")?;
        let (mut objects, mut arrows, mut laws) = (Vec::new(), Vec::new(), Vec::new());
        while !self.eat("}") {
            let kw = self.ident()?;
            match kw.as_str() {
                "object" => loop {
                    objects.push(self.name()?);
                    if !self.eat(",") {
                        break;
                    }
                },
                "arrow" => {
                    let a = self.name()?;
                    self.expect(":")?;
                    let s = self.name()?;
                    self.expect("->")?;
                    arrows.push((a, s, self.name()?));
                }
                "law" => {
                    let g = self.name()?;
                    self.expect(".")?;
                    let f = self.name()?;
                    self.expect("=")?;
                    laws.push((g, f, self.name()?));
                }
                _ => return self.error(format!("unknown model entry `{kw}` (expected object, arrow or law)")),
            }
            self.expect(";")?;
        }
        Ok(ModelDef::Explicit { objects, arrows, laws })
    }

    fn entries(&mut self) -> PResult<Vec<Entry>> {
        self.expect("{")?;
        let mut out = Vec::new();
        while !self.eat("}") {
            let (key, tuple) = if self.eat("(") { (self.list(")", Parser::name)?, true) } else { (vec![self.name()?], false) };
            self.expect("=>")?;
            out.push(Entry { key, tuple, value: self.name()? });
            self.expect(";")?;
        }
        Ok(out)
    }

    fn hom_def(&mut self) -> PResult<HomDef> {
        let backend = match self.ident()?.as_str() {
            "finset" => BackendKind::FinSet,
            "fincat" => BackendKind::FinCat,
            other => return self.error(format!("unknown backend `{other}` (expected finset or fincat)")),
        };
        self.expect("{")?;
        let mut def = HomDef { backend, sorts: Vec::new(), consts: Vec::new(), cells: Vec::new() };
        while !self.eat("}") {
            let kw = self.ident()?;
            let name = self.ident()?;
            match kw.as_str() {
                "sort" => {
                    self.expect("=")?;
                    def.sorts.push((name, self.ident()?));
                    self.expect(";")?;
                }
                "const" => def.consts.push((name, self.entries()?)),
                "cell" => def.cells.push((name, self.entries()?)),
                _ => return self.error(format!("unknown hom entry `{kw}` (expected sort, const or cell)")),
            }
        }
        Ok(def)
    }

    pub fn source_file(&mut self) -> PResult<SourceFile> {
        let mut file = SourceFile::default();
        while !matches!(self.peek(), Tok::Eof) {
            file.spans.push(self.span());
            file.items.push(self.item()?);
        }
        Ok(file)
    }
}

pub fn parse_source(src: &str) -> PResult<SourceFile> {
    Parser::new(src)?.source_file()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "tier xarrow;\nsort A;\nconst m(A, A) : A;\nconst z() : A;\ncell s : m => m;\n\
        term i : A -> A := lam x : A. x;\n\
        rewrite r(x : A) : proj[1/2]{pair(x, x)} => x := counitx[1](x, x);\n\
        eq e(x : A) : id(x) | id(x) == id(x) := vert-left-unit(id(x));\n\
        model two = chain(2);\n\
        model arrow { object 0, 1; arrow f : 0 -> 1; }\n\
        hom h : fincat { sort A = two; const m { (0, 0) => 0; (id_0, id_0) => id_0; } cell s { (0, 1) => id_0; } }\n";

    #[test]
    fn sample_round_trips() {
        let file = parse_source(SAMPLE).unwrap();
        assert_eq!(file.items.len(), 11);
        let printed = file.to_string();
        let again = parse_source(&printed).unwrap();
        assert_eq!(again.items, file.items);
        assert_eq!(file.spans[1].line, 2);
    }

    #[test]
    fn bad_projection_parses() {
        assert!(parse_source("term bad := proj[3/2](p);").is_ok());
        assert!(parse_source("pair(").is_err());
    }

    #[test]
    fn reserved_names_are_rejected() {
        let e = parse_source("cell id : c => c;").unwrap_err();
        assert_eq!((e.span.line, e.span.col), (1, 6));
        assert!(parse_source("const pair(A) : A;").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_source("sort A;\nterm t := c(x;").unwrap_err();
        assert_eq!(e.span.line, 2);
    }
}
