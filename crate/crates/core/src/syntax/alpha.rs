//! α-equivalence by simultaneous traversal with a binder-pair environment.

use super::{Binding, Rewrite, Term, Var};

/// Pairs of corresponding binders, innermost last.
#[derive(Default, Clone)]
struct Env(Vec<(Var, Var)>);

impl Env {
    fn from_bindings<A, B>(l: &[Binding<A>], r: &[Binding<B>]) -> Env {
        Env(l.iter().zip(r).map(|(a, b)| (a.var.clone(), b.var.clone())).collect())
    }

    fn push(&self, x: &Var, y: &Var) -> Env {
        let mut out = self.clone();
        out.0.push((x.clone(), y.clone()));
        out
    }

    fn same(&self, x: &Var, y: &Var) -> bool {
        let left = self.0.iter().rposition(|(a, _)| a == x);
        let right = self.0.iter().rposition(|(_, b)| b == y);
        match (left, right) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        }
    }
}

pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    term_eq(&Env::default(), a, b)
}

pub fn alpha_eq_rewrite(a: &Rewrite, b: &Rewrite) -> bool {
    rw_eq(&Env::default(), a, b)
}

fn terms_eq(env: &Env, a: &[Term], b: &[Term]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| term_eq(env, x, y))
}

fn bindings_eq<T>(env: &Env, a: &[Binding<T>], b: &[Binding<T>], eq: impl Fn(&Env, &T, &T) -> bool) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| eq(env, &x.value, &y.value))
}

fn term_eq(env: &Env, a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => env.same(x, y),
        (Term::Const(c, xs), Term::Const(d, ys)) => c == d && terms_eq(env, xs, ys),
        (Term::Subst(t, xs), Term::Subst(u, ys)) => {
            bindings_eq(env, xs, ys, term_eq) && term_eq(&Env::from_bindings(xs, ys), t, u)
        }
        (Term::Pair(xs), Term::Pair(ys)) => terms_eq(env, xs, ys),
        (Term::Proj { k, n, arg }, Term::Proj { k: k2, n: n2, arg: arg2 }) => {
            k == k2 && n == n2 && term_eq(env, arg, arg2)
        }
        (Term::Lam { var: x, ty: s, body: t }, Term::Lam { var: y, ty: s2, body: u }) => {
            s == s2 && term_eq(&env.push(x, y), t, u)
        }
        (Term::Eval(f, x), Term::Eval(g, y)) => term_eq(env, f, g) && term_eq(env, x, y),
        _ => false,
    }
}

fn rws_eq(env: &Env, a: &[Rewrite], b: &[Rewrite]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| rw_eq(env, x, y))
}

fn rw_eq(env: &Env, a: &Rewrite, b: &Rewrite) -> bool {
    use Rewrite as R;
    match (a, b) {
        (R::Id(t), R::Id(u)) => term_eq(env, t, u),
        (R::Vert(a1, a2), R::Vert(b1, b2)) => rw_eq(env, a1, b1) && rw_eq(env, a2, b2),
        (R::Subst(t, xs), R::Subst(u, ys)) => {
            bindings_eq(env, xs, ys, rw_eq) && rw_eq(&Env::from_bindings(xs, ys), t, u)
        }
        (R::ConstCell(s, xs), R::ConstCell(r, ys)) => s == r && terms_eq(env, xs, ys),
        (
            R::Assoc { body: t, inner: i1, outer: o1, inv: v1 },
            R::Assoc { body: u, inner: i2, outer: o2, inv: v2 },
        ) => {
            v1 == v2
                && bindings_eq(env, o1, o2, term_eq)
                && bindings_eq(&Env::from_bindings(o1, o2), i1, i2, term_eq)
                && term_eq(&Env::from_bindings(i1, i2), t, u)
        }
        (R::SubId { term: t, inv: v1 }, R::SubId { term: u, inv: v2 }) => v1 == v2 && term_eq(env, t, u),
        (R::ProjCell { k, args: xs, inv: v1 }, R::ProjCell { k: k2, args: ys, inv: v2 }) => {
            k == k2 && v1 == v2 && terms_eq(env, xs, ys)
        }
        (R::CounitProd { k, terms: xs, inv: v1 }, R::CounitProd { k: k2, terms: ys, inv: v2 }) => {
            k == k2 && v1 == v2 && terms_eq(env, xs, ys)
        }
        (R::TransposeProd { source: u, alphas: xs }, R::TransposeProd { source: v, alphas: ys }) => {
            term_eq(env, u, v) && rws_eq(env, xs, ys)
        }
        (R::UnitProdInv(t), R::UnitProdInv(u)) => term_eq(env, t, u),
        (R::CounitExp { var: x, body: t, inv: v1 }, R::CounitExp { var: y, body: u, inv: v2 }) => {
            v1 == v2 && env.same(x, y) && term_eq(env, t, u)
        }
        (
            R::TransposeExp { var: x, ty: s, source: u, alpha: a },
            R::TransposeExp { var: y, ty: s2, source: v, alpha: b },
        ) => s == s2 && term_eq(env, u, v) && rw_eq(&env.push(x, y), a, b),
        // The binder only names the λ of the generated source term.
        (R::UnitExpInv { source: u, .. }, R::UnitExpInv { source: v, .. }) => term_eq(env, u, v),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Type;
    use crate::syntax::var;

    fn a() -> Type {
        Type::base("A")
    }

    #[test]
    fn lambda_binders() {
        let l = Term::lam("x", a(), Term::var("x"));
        assert!(alpha_eq(&l, &Term::lam("y", a(), Term::var("y"))));
        assert!(!alpha_eq(&l, &Term::lam("x", a(), Term::var("y"))));
        assert!(!alpha_eq(&l, &Term::lam("x", Type::base("B"), Term::var("x"))));
    }

    #[test]
    fn subst_binders() {
        let u = Term::var("u");
        let l = Term::subst(Term::var("x"), vec![Binding::new(var("x"), u.clone())]);
        let r = Term::subst(Term::var("y"), vec![Binding::typed(var("y"), a(), u)]);
        assert!(alpha_eq(&l, &r));
    }

    #[test]
    fn shadowing() {
        // λx.λy.x vs λy.λy.y differ; λx.λx.x vs λy.λz.z agree.
        let l1 = Term::lam("x", a(), Term::lam("y", a(), Term::var("x")));
        let r1 = Term::lam("y", a(), Term::lam("y", a(), Term::var("y")));
        assert!(!alpha_eq(&l1, &r1));
        let l2 = Term::lam("x", a(), Term::lam("x", a(), Term::var("x")));
        let r2 = Term::lam("y", a(), Term::lam("z", a(), Term::var("z")));
        assert!(alpha_eq(&l2, &r2));
    }

    #[test]
    fn free_against_bound() {
        let l = Term::lam("x", a(), Term::var("y"));
        let r = Term::lam("y", a(), Term::var("y"));
        assert!(!alpha_eq(&l, &r));
    }

    #[test]
    fn transpose_exp_binds() {
        let mk = |x: &str| Rewrite::TransposeExp {
            var: var(x),
            ty: a(),
            source: Term::var("u"),
            alpha: Box::new(Rewrite::Id(Term::var(x))),
        };
        assert!(alpha_eq_rewrite(&mk("x"), &mk("z")));
    }
}
