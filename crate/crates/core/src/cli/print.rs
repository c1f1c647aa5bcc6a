//! Printing of derivations and source items, inverse to the parser.

use std::fmt::{self, Display, Formatter};

use super::ast::{Entry, HomDef, Item, ModelDef, SourceFile};
use crate::equational::{Derivation, MetaArg};
use crate::semantics::BackendKind;
use crate::signature::Type;
use crate::syntax::{Binding, Context};

fn join<T: Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn bindings<T: Display>(bs: &[Binding<T>]) -> String {
    let one = |b: &Binding<T>| match &b.ty {
        Some(Type::Arrow(..)) => format!("{} : ({}) -> {}", b.var, b.ty.as_ref().expect("typed"), b.value),
        Some(t) => format!("{} : {t} -> {}", b.var, b.value),
        None => format!("{} -> {}", b.var, b.value),
    };
    bs.iter().map(one).collect::<Vec<_>>().join(", ")
}

/// Printable form of a derivation.
pub struct ShowDerivation<'a>(pub &'a Derivation);

impl Display for ShowDerivation<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            Derivation::Refl(r) => write!(f, "refl({r})"),
            Derivation::Symm(d) => write!(f, "symm({})", ShowDerivation(d)),
            Derivation::Trans(a, b) => write!(f, "trans({}, {})", ShowDerivation(a), ShowDerivation(b)),
            Derivation::CongVert(a, b) => write!(f, "cong-vert({}, {})", ShowDerivation(a), ShowDerivation(b)),
            Derivation::CongSubst { binders, body, args } => {
                let args: Vec<String> = args.iter().map(|d| ShowDerivation(d).to_string()).collect();
                write!(f, "cong-subst[{}]({}; {})", join(binders), ShowDerivation(body), args.join(", "))
            }
            Derivation::CongTransposeProd { source, comps } => {
                let comps: Vec<String> = comps.iter().map(|d| ShowDerivation(d).to_string()).collect();
                write!(f, "cong-transx[{source}]({})", comps.join(", "))
            }
            Derivation::CongTransposeExp { var, ty, source, body } => {
                write!(f, "cong-transe[{source}]({var} : {ty}. {})", ShowDerivation(body))
            }
            Derivation::Axiom(inst) => {
                let args: Vec<String> = inst.args.iter().map(meta_arg).collect();
                write!(f, "{}({})", inst.axiom, args.join(", "))
            }
        }
    }
}

fn meta_arg(a: &MetaArg) -> String {
    match a {
        MetaArg::Index(k) => k.to_string(),
        MetaArg::Term(t) => t.to_string(),
        MetaArg::Rewrite(r) => r.to_string(),
        MetaArg::Binder(x) => x.to_string(),
        MetaArg::Terms(ts) => format!("[{}]", join(ts)),
        MetaArg::Rewrites(rs) => format!("[{}]", join(rs)),
        MetaArg::TermBindings(bs) => format!("{{{}}}", bindings(bs)),
        MetaArg::RewriteBindings(bs) => format!("{{{}}}", bindings(bs)),
    }
}

fn context(ctx: &Context) -> String {
    if ctx.is_empty() {
        return String::new();
    }
    let xs: Vec<String> = ctx.0.iter().map(|(x, t)| format!("{x} : {t}")).collect();
    format!("({})", xs.join(", "))
}

fn entry(e: &Entry) -> String {
    let key = if e.tuple { format!("({})", e.key.join(", ")) } else { e.key.join(", ") };
    format!("{key} => {};", e.value)
}

fn table(f: &mut Formatter<'_>, kw: &str, rows: &[(String, Vec<Entry>)]) -> fmt::Result {
    for (name, es) in rows {
        let body: Vec<String> = es.iter().map(entry).collect();
        writeln!(f, "  {kw} {name} {{ {} }}", body.join(" "))?;
    }
    Ok(())
}

impl Display for ModelDef {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ModelDef::Set(xs) => write!(f, "= set({})", xs.join(", ")),
            ModelDef::Discrete(n) => write!(f, "= discrete({n})"),
            ModelDef::Chain(n) => write!(f, "= chain({n})"),
            ModelDef::Explicit { objects, arrows, laws } => {
                writeln!(f, "{{")?;
                writeln!(f, "  object {};", objects.join(", "))?;
                for (a, s, t) in arrows {
                    writeln!(f, "  arrow {a} : {s} -> {t};")?;
                }
                for (g, h, k) in laws {
                    writeln!(f, "  law {g} . {h} = {k};")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl Display for HomDef {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let backend = match self.backend {
            BackendKind::FinSet => "finset",
            BackendKind::FinCat => "fincat",
        };
        writeln!(f, "{backend} {{")?;
        for (s, m) in &self.sorts {
            writeln!(f, "  sort {s} = {m};")?;
        }
        table(f, "const", &self.consts)?;
        table(f, "cell", &self.cells)?;
        write!(f, "}}")
    }
}

impl Display for Item {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Item::Tier(t) => write!(f, "tier {};", t.name()),
            Item::Sort(s) => write!(f, "sort {s};"),
            Item::Const { name, source, target } => write!(f, "const {name}({}) : {target};", join(source)),
            Item::Cell { name, from, to } => write!(f, "cell {name} : {from} => {to};"),
            Item::Term { name, ctx, ty, body } => {
                write!(f, "term {name}{}", context(ctx))?;
                if let Some(t) = ty {
                    write!(f, " : {t}")?;
                }
                write!(f, " := {body};")
            }
            Item::Rewrite { name, ctx, ends, body } => {
                write!(f, "rewrite {name}{}", context(ctx))?;
                if let Some((s, t)) = ends {
                    write!(f, " : {s} => {t}")?;
                }
                write!(f, " := {body};")
            }
            Item::Eq { name, ctx, lhs, rhs, proof } => {
                write!(f, "eq {name}{} : {lhs} == {rhs} := {};", context(ctx), ShowDerivation(proof))
            }
            Item::Model { name, def } => match def {
                ModelDef::Explicit { .. } => write!(f, "model {name} {def}"),
                _ => write!(f, "model {name} {def};"),
            },
            Item::Hom { name, def } => write!(f, "hom {name} : {def}"),
        }
    }
}

impl Display for SourceFile {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}
