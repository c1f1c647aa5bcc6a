//! Canonical surface syntax; the parser in `cli` reads exactly this.

use std::fmt::{self, Display, Formatter, Write};

use super::{Binding, Rewrite, Term};
use crate::signature::Type;

/// Types in a position terminated by `->` need parentheses around arrows.
struct Guarded<'a>(&'a Type);

impl Display for Guarded<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            Type::Arrow(..) => write!(f, "({})", self.0),
            t => write!(f, "{t}"),
        }
    }
}

fn list<T>(f: &mut Formatter<'_>, items: &[T], sep: &str, one: impl Fn(&mut Formatter<'_>, &T) -> fmt::Result) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        one(f, x)?;
    }
    Ok(())
}

fn bindings<T>(f: &mut Formatter<'_>, bs: &[Binding<T>], value: impl Fn(&mut Formatter<'_>, &T) -> fmt::Result) -> fmt::Result {
    list(f, bs, ", ", |f, b| {
        write!(f, "{}", b.var)?;
        if let Some(t) = &b.ty {
            write!(f, " : {}", Guarded(t))?;
        }
        f.write_str(" -> ")?;
        value(f, &b.value)
    })
}

fn is_var(t: &Term, x: &str) -> bool {
    matches!(t, Term::Var(y) if &**y == x)
}

/// Recognizes the sugared substitution forms `c{..}`, `proj[k/n]{..}`, `eval{..}`.
fn sugar(body: &Term, bs: &[Binding<Term>]) -> Option<String> {
    match body {
        Term::Const(c, args)
            if !args.is_empty()
                && args.len() == bs.len()
                && args.iter().zip(bs).all(|(a, b)| is_var(a, &b.var))
                && distinct(bs) =>
        {
            Some(c.to_string())
        }
        Term::Proj { k, n, arg } if bs.len() == 1 && is_var(arg, &bs[0].var) => Some(format!("proj[{k}/{n}]")),
        Term::Eval(g, a) if bs.len() == 2 && is_var(g, &bs[0].var) && is_var(a, &bs[1].var) && bs[0].var != bs[1].var => {
            Some("eval".to_string())
        }
        _ => None,
    }
}

fn distinct<T>(bs: &[Binding<T>]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    bs.iter().all(|b| seen.insert(b.var.clone()))
}

fn term_atomic(t: &Term) -> bool {
    !matches!(t, Term::Lam { .. })
}

fn term_atom(f: &mut Formatter<'_>, t: &Term) -> fmt::Result {
    if term_atomic(t) {
        write!(f, "{t}")
    } else {
        write!(f, "({t})")
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Const(c, args) => {
                write!(f, "{c}(")?;
                list(f, args, ", ", |f, a| write!(f, "{a}"))?;
                f.write_char(')')
            }
            Term::Subst(body, bs) => {
                if let Some(head) = sugar(body, bs) {
                    write!(f, "{head}{{")?;
                    list(f, bs, ", ", |f, b| write!(f, "{}", b.value))?;
                    return f.write_char('}');
                }
                term_atom(f, body)?;
                f.write_char('{')?;
                bindings(f, bs, |f, v| write!(f, "{v}"))?;
                f.write_char('}')
            }
            Term::Pair(args) => {
                f.write_str("pair(")?;
                list(f, args, ", ", |f, a| write!(f, "{a}"))?;
                f.write_char(')')
            }
            Term::Proj { k, n, arg } => write!(f, "proj[{k}/{n}]({arg})"),
            Term::Lam { var, ty, body } => write!(f, "lam {var} : {ty}. {body}"),
            Term::Eval(g, a) => write!(f, "eval({g}, {a})"),
        }
    }
}

fn rw_atom(f: &mut Formatter<'_>, r: &Rewrite) -> fmt::Result {
    if matches!(r, Rewrite::Vert(..)) {
        write!(f, "({r})")
    } else {
        write!(f, "{r}")
    }
}

fn term_list(f: &mut Formatter<'_>, ts: &[Term]) -> fmt::Result {
    list(f, ts, ", ", |f, a| write!(f, "{a}"))
}

fn inv(f: &mut Formatter<'_>, flag: bool, body: impl FnOnce(&mut Formatter<'_>) -> fmt::Result) -> fmt::Result {
    if flag {
        f.write_str("inv(")?;
        body(f)?;
        f.write_char(')')
    } else {
        body(f)
    }
}

impl Display for Rewrite {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Rewrite::Id(t) => write!(f, "id({t})"),
            Rewrite::Vert(later, first) => {
                write!(f, "{later} | ")?;
                rw_atom(f, first)
            }
            Rewrite::Subst(body, bs) => {
                rw_atom(f, body)?;
                f.write_char('{')?;
                bindings(f, bs, |f, v| write!(f, "{v}"))?;
                f.write_char('}')
            }
            Rewrite::ConstCell(s, args) => {
                write!(f, "{s}(")?;
                term_list(f, args)?;
                f.write_char(')')
            }
            Rewrite::Assoc { body, inner, outer, inv: flag } => inv(f, *flag, |f| {
                write!(f, "assoc({body}; ")?;
                bindings(f, inner, |f, v| write!(f, "{v}"))?;
                f.write_str("; ")?;
                bindings(f, outer, |f, v| write!(f, "{v}"))?;
                f.write_char(')')
            }),
            Rewrite::SubId { term, inv: flag } => inv(f, *flag, |f| write!(f, "subid({term})")),
            Rewrite::ProjCell { k, args, inv: flag } => inv(f, *flag, |f| {
                write!(f, "projc[{k}](")?;
                term_list(f, args)?;
                f.write_char(')')
            }),
            Rewrite::CounitProd { k, terms, inv: flag } => inv(f, *flag, |f| {
                write!(f, "counitx[{k}](")?;
                term_list(f, terms)?;
                f.write_char(')')
            }),
            Rewrite::TransposeProd { source, alphas } => {
                write!(f, "transx[{source}](")?;
                list(f, alphas, ", ", |f, a| write!(f, "{a}"))?;
                f.write_char(')')
            }
            Rewrite::UnitProdInv(t) => write!(f, "inv(unitx({t}))"),
            Rewrite::CounitExp { var, body, inv: flag } => inv(f, *flag, |f| write!(f, "counite({var}. {body})")),
            Rewrite::TransposeExp { var, ty, source, alpha } => write!(f, "transe[{source}]({var} : {ty}. {alpha})"),
            Rewrite::UnitExpInv { var, source } => write!(f, "inv(unite({var}. {source}))"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{var, Context};

    #[test]
    fn sugared_forms() {
        let a = Type::base("A");
        let p = Type::prod(vec![a.clone(), a.clone()]);
        let t = Term::proj_sub(1, &p, Term::Pair(vec![Term::var("x"), Term::var("y")]));
        assert_eq!(t.to_string(), "proj[1/2]{pair(x, y)}");
        let arrow = Type::arrow(a.clone(), a.clone());
        let e = Term::eval_sub(&arrow, Term::var("g"), Term::var("y"));
        assert_eq!(e.to_string(), "eval{g, y}");
        let c = Term::const_sub("c", &[a.clone(), a.clone()], vec![Term::var("y"), Term::var("y")]);
        assert_eq!(c.to_string(), "c{y, y}");
        let w = Term::weaken(Term::var("y"), &Context::single("y", arrow));
        assert_eq!(w.to_string(), "y{y : (A -> A) -> y}");
        assert_eq!(Term::Pair(vec![]).to_string(), "pair()");
    }

    #[test]
    fn rewrites() {
        let a = Type::base("A");
        let r = Rewrite::vert(
            Rewrite::Id(Term::var("x")),
            Rewrite::vert(Rewrite::SubId { term: Term::var("x"), inv: true }, Rewrite::Id(Term::var("x"))),
        );
        assert_eq!(r.to_string(), "id(x) | (inv(subid(x)) | id(x))");
        let t = Rewrite::TransposeExp {
            var: var("x"),
            ty: a,
            source: Term::var("g"),
            alpha: Box::new(Rewrite::CounitExp { var: var("x"), body: Term::var("x"), inv: false }),
        };
        assert_eq!(t.to_string(), "transe[g](x : A. counite(x. x))");
    }
}
