//! The syntactic model: contexts, tuples of terms and tuples of rewrites.
//!
//! Composition is explicit substitution and the structural cells are the
//! biclone rewrites. Equality of 2-cells is evidence-based.

use super::engine::{Result, SemError};
use super::model::{Model, Verdict};
use crate::equational::{check_equation, AxiomId, AxiomInstance, Derivation, MetaArg};
use crate::signature::{Signature, Tier, Type};
use crate::syntax::{alpha_eq, alpha_eq_rewrite, proj_binder, var, Binding, Context, Rewrite, Term};
use crate::typing::{Checker, TypeError};

/// A 1-cell `dom → cod`: one term in `dom` per variable of `cod`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynOne {
    pub dom: Context,
    pub cod: Context,
    pub terms: Vec<Term>,
}

/// A 2-cell between parallel 1-cells, given pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynTwo {
    pub dom: Context,
    pub cod: Context,
    pub rewrites: Vec<Rewrite>,
    pub source: Vec<Term>,
    pub target: Vec<Term>,
}

impl SynOne {
    /// `cod`'s variables bound to the terms, as a substitution.
    pub fn bindings(&self) -> Vec<Binding<Term>> {
        self.cod.0.iter().zip(&self.terms).map(|((x, ty), t)| Binding::typed(x.clone(), ty.clone(), t.clone())).collect()
    }
}

pub struct SyntacticModel {
    pub sig: Signature,
    pub tier: Tier,
    pub lax: bool,
}

fn ill(msg: impl Into<String>) -> SemError {
    SemError::IllTyped(msg.into())
}

fn same_types(a: &Context, b: &Context) -> bool {
    a.len() == b.len() && a.types().zip(b.types()).all(|(x, y)| x == y)
}

impl SyntacticModel {
    pub fn new(sig: Signature, tier: Tier) -> SyntacticModel {
        SyntacticModel { sig, tier, lax: false }
    }

    pub fn checker(&self) -> Checker<'_> {
        Checker::new(&self.sig, self.tier).lax(self.lax)
    }

    /// Checks the terms against `cod` and builds the 1-cell.
    pub fn one(&self, dom: &Context, cod: &Context, terms: Vec<Term>) -> Result<SynOne> {
        let c = self.checker();
        c.check_context(dom)?;
        c.check_context(cod)?;
        if terms.len() != cod.len() {
            return Err(ill(format!("{} terms for a codomain of length {}", terms.len(), cod.len())));
        }
        for (t, ty) in terms.iter().zip(cod.types()) {
            let found = c.check_term(dom, t)?;
            if &found != ty {
                return Err(TypeError::TypeMismatch { expected: ty.clone(), found }.into());
            }
        }
        Ok(SynOne { dom: dom.clone(), cod: cod.clone(), terms })
    }

    /// Checks the rewrites and records their endpoints.
    pub fn two(&self, dom: &Context, cod: &Context, rewrites: Vec<Rewrite>) -> Result<SynTwo> {
        let c = self.checker();
        if rewrites.len() != cod.len() {
            return Err(ill(format!("{} rewrites for a codomain of length {}", rewrites.len(), cod.len())));
        }
        let mut source = Vec::with_capacity(rewrites.len());
        let mut target = Vec::with_capacity(rewrites.len());
        for (r, ty) in rewrites.iter().zip(cod.types()) {
            let rt = c.check_rewrite(dom, r)?;
            if &rt.ty != ty {
                return Err(TypeError::TypeMismatch { expected: ty.clone(), found: rt.ty }.into());
            }
            source.push(rt.source);
            target.push(rt.target);
        }
        Ok(SynTwo { dom: dom.clone(), cod: cod.clone(), rewrites, source, target })
    }

    pub fn source(&self, a: &SynTwo) -> SynOne {
        SynOne { dom: a.dom.clone(), cod: a.cod.clone(), terms: a.source.clone() }
    }

    pub fn target(&self, a: &SynTwo) -> SynOne {
        SynOne { dom: a.dom.clone(), cod: a.cod.clone(), terms: a.target.clone() }
    }

    /// `r⁻¹ : f ⇒ f ∘ id`.
    pub fn right_unit_inv(&self, f: &SynOne) -> Result<SynTwo> {
        self.two(&f.dom, &f.cod, f.terms.iter().map(|t| Rewrite::SubId { term: t.clone(), inv: false }).collect())
    }

    /// Decides equality from evidence: one derivation per component, or a
    /// refutation by a semantic probe.
    pub fn decide(&self, a: &SynTwo, b: &SynTwo, evidence: Option<&[Derivation]>, refuted: bool) -> Verdict {
        if self.eq2(a, b) == Verdict::Equal {
            return Verdict::Equal;
        }
        if let Some(ds) = evidence {
            let c = self.checker();
            let ok = ds.len() == a.rewrites.len()
                && a.rewrites.iter().zip(&b.rewrites).zip(ds).all(|((l, r), d)| check_equation(&c, &a.dom, l, r, d).is_ok());
            if ok {
                return Verdict::Equal;
            }
        }
        if refuted {
            Verdict::Distinct
        } else {
            Verdict::Unknown
        }
    }

    /// The triangle law in its biclone form, one derivation per component:
    /// `((id_g ∘ l_f) · a_{g,id,f}) · (r⁻¹_g ∘ id_f) ≡ id_{g ∘ f}`.
    pub fn triangle(&self, g: &SynOne, f: &SynOne) -> Result<(SynTwo, SynTwo, Vec<Derivation>)> {
        let id_mid = self.id1(&f.cod)?;
        let lhs = self.vert(
            &self.vert(&self.horiz(&self.id2(g)?, &self.left_unit(f)?)?, &self.assoc(g, &id_mid, f)?)?,
            &self.horiz(&self.right_unit_inv(g)?, &self.id2(f)?)?,
        )?;
        let rhs = self.id2(&self.comp1(g, f)?)?;
        let ds = g.terms.iter().map(|t| Derivation::Axiom(AxiomInstance::new(AxiomId::BicloneCompat1, vec![MetaArg::Term(t.clone()), MetaArg::TermBindings(f.bindings())]))).collect();
        Ok((lhs, rhs, ds))
    }

    /// The pentagon in its biclone form for `t ∘ w ∘ v ∘ u`, one derivation per component.
    pub fn pentagon(&self, t: &SynOne, w: &SynOne, v: &SynOne, u: &SynOne) -> Result<(SynTwo, SynTwo, Vec<Derivation>)> {
        let lhs = self.vert(
            &self.vert(&self.horiz(&self.id2(t)?, &self.assoc(w, v, u)?)?, &self.assoc(t, &self.comp1(w, v)?, u)?)?,
            &self.horiz(&self.assoc(t, w, v)?, &self.id2(u)?)?,
        )?;
        let rhs = self.vert(&self.assoc(t, w, &self.comp1(v, u)?)?, &self.assoc(&self.comp1(t, w)?, v, u)?)?;
        let ds = t
            .terms
            .iter()
            .map(|ti| {
                Derivation::Axiom(AxiomInstance::new(
                    AxiomId::BicloneCompat2,
                    vec![MetaArg::Term(ti.clone()), MetaArg::TermBindings(w.bindings()), MetaArg::TermBindings(v.bindings()), MetaArg::TermBindings(u.bindings())],
                ))
            })
            .collect();
        Ok((lhs, rhs, ds))
    }
}

impl Model for SyntacticModel {
    type Obj = Context;
    type One = SynOne;
    type Two = SynTwo;

    fn name(&self) -> &'static str {
        "syntactic"
    }

    fn id1(&self, a: &Context) -> Result<SynOne> {
        self.one(a, a, a.vars().map(|x| Term::Var(x.clone())).collect())
    }

    fn comp1(&self, g: &SynOne, f: &SynOne) -> Result<SynOne> {
        if !same_types(&f.cod, &g.dom) || f.cod != g.dom {
            return Err(ill("composite of non-matching 1-cells"));
        }
        let bs = f.bindings();
        Ok(SynOne { dom: f.dom.clone(), cod: g.cod.clone(), terms: g.terms.iter().map(|t| Term::subst(t.clone(), bs.clone())).collect() })
    }

    fn id2(&self, f: &SynOne) -> Result<SynTwo> {
        self.two(&f.dom, &f.cod, f.terms.iter().cloned().map(Rewrite::Id).collect())
    }

    fn vert(&self, later: &SynTwo, first: &SynTwo) -> Result<SynTwo> {
        if first.target.len() != later.source.len() || !first.target.iter().zip(&later.source).all(|(a, b)| alpha_eq(a, b)) {
            return Err(ill("vertical composite of non-matching 2-cells"));
        }
        let rs = later.rewrites.iter().zip(&first.rewrites).map(|(l, f)| Rewrite::vert(l.clone(), f.clone())).collect();
        self.two(&first.dom, &first.cod, rs)
    }

    fn horiz(&self, beta: &SynTwo, alpha: &SynTwo) -> Result<SynTwo> {
        if alpha.cod != beta.dom {
            return Err(ill("horizontal composite of non-matching 2-cells"));
        }
        let bs: Vec<Binding<Rewrite>> =
            alpha.cod.0.iter().zip(&alpha.rewrites).map(|((x, ty), r)| Binding::typed(x.clone(), ty.clone(), r.clone())).collect();
        self.two(&alpha.dom, &beta.cod, beta.rewrites.iter().map(|r| Rewrite::subst(r.clone(), bs.clone())).collect())
    }

    fn assoc(&self, h: &SynOne, g: &SynOne, f: &SynOne) -> Result<SynTwo> {
        let (inner, outer) = (g.bindings(), f.bindings());
        let rs = h.terms.iter().map(|t| Rewrite::Assoc { body: t.clone(), inner: inner.clone(), outer: outer.clone(), inv: false }).collect();
        self.two(&f.dom, &h.cod, rs)
    }

    fn left_unit(&self, f: &SynOne) -> Result<SynTwo> {
        let rs = (1..=f.terms.len()).map(|k| Rewrite::ProjCell { k, args: f.terms.clone(), inv: false }).collect();
        self.two(&f.dom, &f.cod, rs)
    }

    fn right_unit(&self, f: &SynOne) -> Result<SynTwo> {
        self.two(&f.dom, &f.cod, f.terms.iter().map(|t| Rewrite::SubId { term: t.clone(), inv: true }).collect())
    }

    /// Context concatenation; the factors must have disjoint variables.
    fn product(&self, factors: &[Context]) -> Result<Context> {
        if !self.tier.has_products() {
            return Err(TypeError::Tier { construct: "products", tier: self.tier }.into());
        }
        let ctx = Context(factors.iter().flat_map(|c| c.0.iter().cloned()).collect());
        self.checker().check_context(&ctx)?;
        Ok(ctx)
    }

    fn proj(&self, factors: &[Context], k: usize) -> Result<SynOne> {
        let prod = self.product(factors)?;
        let cod = factors.get(k.wrapping_sub(1)).ok_or_else(|| ill("projection index out of range"))?;
        self.one(&prod, cod, cod.vars().map(|x| Term::Var(x.clone())).collect())
    }

    fn tuple(&self, fs: &[SynOne]) -> Result<SynOne> {
        let dom = fs.first().map(|f| f.dom.clone()).ok_or_else(|| ill("tupling needs a domain"))?;
        if fs.iter().any(|f| f.dom != dom) {
            return Err(ill("tupling 1-cells with different domains"));
        }
        let cod = self.product(&fs.iter().map(|f| f.cod.clone()).collect::<Vec<_>>())?;
        self.one(&dom, &cod, fs.iter().flat_map(|f| f.terms.iter().cloned()).collect())
    }

    /// For unary contexts `(x : A)` and `(y : B)`, the context `(f : A -> B)`.
    fn exp(&self, a: &Context, b: &Context) -> Result<Context> {
        let (Some((_, ta)), Some((_, tb))) = (a.0.first().filter(|_| a.len() == 1), b.0.first().filter(|_| b.len() == 1)) else {
            return Err(ill("exponentials are formed between unary contexts"));
        };
        let ctx = Context::single("f", Type::arrow(ta.clone(), tb.clone()));
        self.checker().check_context(&ctx)?;
        Ok(ctx)
    }

    fn eval(&self, a: &Context, b: &Context) -> Result<SynOne> {
        let e = self.exp(a, b)?;
        let x = crate::syntax::fresh_var("x", &e.var_set());
        let (_, ta) = &a.0[0];
        let dom = e.extend(x.clone(), ta.clone());
        self.one(&dom, b, vec![Term::eval(Term::var("f"), Term::Var(x))])
    }

    /// `lam x. t` for `t` in a context ending with `x`.
    fn curry(&self, f: &SynOne) -> Result<SynOne> {
        let (rest, x, ta) = f.dom.split_last().ok_or_else(|| ill("currying needs a non-empty context"))?;
        let [body] = f.terms.as_slice() else { return Err(ill("currying needs a unary codomain")) };
        let a = Context::new(vec![(x.clone(), ta.clone())]);
        let cod = self.exp(&a, &f.cod)?;
        self.one(&rest, &cod, vec![Term::lam(x, ta.clone(), body.clone())])
    }

    fn eq2(&self, a: &SynTwo, b: &SynTwo) -> Verdict {
        if a.rewrites.len() == b.rewrites.len() && a.rewrites.iter().zip(&b.rewrites).all(|(x, y)| alpha_eq_rewrite(x, y)) {
            Verdict::Equal
        } else {
            Verdict::Unknown
        }
    }
}

/// The equivalence between a context and the unary context on its product.
#[derive(Debug, Clone)]
pub struct ContextProduct {
    /// `(p : Πn(A1, ..., An))`.
    pub product: Context,
    /// `pair(x1, ..., xn)`.
    pub forward: SynOne,
    /// `(proj[1]{p}, ..., proj[n]{p})`.
    pub backward: SynOne,
    /// `backward ∘ forward ⇒ id`.
    pub unit: SynTwo,
    /// `forward ∘ backward ⇒ id`.
    pub counit: SynTwo,
}

/// The equivalence `Γ ≃ (p : Πn(A1, ..., An))` together with its unit and counit.
pub fn context_product_equiv(m: &SyntacticModel, gamma: &Context) -> Result<ContextProduct> {
    if !m.tier.has_products() {
        return Err(TypeError::Tier { construct: "context products", tier: m.tier }.into());
    }
    m.checker().check_context(gamma)?;
    let tys: Vec<Type> = gamma.types().cloned().collect();
    let pty = Type::prod(tys.clone());
    let p = proj_binder();
    let product = Context::single(&p, pty.clone());
    let xs: Vec<Term> = gamma.vars().map(|x| Term::Var(x.clone())).collect();
    let pair = Term::Pair(xs.clone());
    let n = xs.len();
    let forward = m.one(gamma, &product, vec![pair.clone()])?;
    let vs: Vec<Term> = (1..=n).map(|i| Term::proj_sub(i, &pty, Term::Var(p.clone()))).collect();
    let backward = m.one(&product, gamma, vs.clone())?;

    let proj_body = |i: usize| Term::proj(i, n, Term::Var(p.clone()));
    let to_pair = vec![Binding::typed(p.clone(), pty.clone(), pair.clone())];
    let unit_rs = (1..=n)
        .map(|i| {
            Rewrite::chain(vec![
                Rewrite::Assoc { body: proj_body(i), inner: vec![Binding::typed(p.clone(), pty.clone(), Term::Var(p.clone()))], outer: to_pair.clone(), inv: false },
                Rewrite::subst(
                    Rewrite::Id(proj_body(i)),
                    vec![Binding::typed(p.clone(), pty.clone(), Rewrite::ProjCell { k: 1, args: vec![pair.clone()], inv: false })],
                ),
                Rewrite::CounitProd { k: i, terms: xs.clone(), inv: false },
            ])
            .expect("non-empty chain")
        })
        .collect();
    let unit = m.two(gamma, gamma, unit_rs)?;

    let back_bs = backward.bindings();
    let source = Term::subst(pair.clone(), back_bs.clone());
    let id_vs: Vec<Binding<Rewrite>> = back_bs.iter().map(|b| b.map(|t| Rewrite::Id(t.clone()))).collect();
    let alphas = (1..=n)
        .map(|i| {
            Rewrite::chain(vec![
                Rewrite::Assoc { body: proj_body(i), inner: to_pair.clone(), outer: back_bs.clone(), inv: true },
                Rewrite::subst(Rewrite::CounitProd { k: i, terms: xs.clone(), inv: false }, id_vs.clone()),
                Rewrite::ProjCell { k: i, args: vs.clone(), inv: false },
            ])
            .expect("non-empty chain")
        })
        .collect();
    let counit = Rewrite::vert(Rewrite::UnitProdInv(Term::Var(p.clone())), Rewrite::TransposeProd { source, alphas });
    let counit = m.two(&product, &product, vec![counit])?;
    Ok(ContextProduct { product, forward, backward, unit, counit })
}

/// Unary context `(x : A)` on a fresh variable, used to build exponentials.
pub fn unary(name: &str, ty: Type) -> Context {
    Context::new(vec![(var(name), ty)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Edge;

    fn sig(tier: Tier) -> Signature {
        let a = Type::base("A");
        Signature::build(&["A", "B"], vec![Edge { name: "c".into(), source: vec![a.clone()], target: a }], vec![], tier).unwrap()
    }

    #[test]
    fn pair_context_equivalence() {
        let m = SyntacticModel::new(sig(Tier::Products), Tier::Products);
        let gamma = Context::new(vec![(var("x"), Type::base("A")), (var("y"), Type::base("B"))]);
        let e = context_product_equiv(&m, &gamma).unwrap();
        assert_eq!(e.forward.terms[0].to_string(), "pair(x, y)");
        assert_eq!(e.backward.terms.len(), 2);
        for (s, t) in e.unit.source.iter().zip(&m.comp1(&e.backward, &e.forward).unwrap().terms) {
            assert!(alpha_eq(s, t));
        }
        assert!(alpha_eq(&e.counit.target[0], &Term::var("p")));
    }

    #[test]
    fn unary_and_empty_contexts() {
        let m = SyntacticModel::new(sig(Tier::Products), Tier::Products);
        for gamma in [Context::empty(), Context::single("x", Type::base("A"))] {
            let e = context_product_equiv(&m, &gamma).unwrap();
            assert_eq!(e.product.types().next().unwrap().as_prod().unwrap().len(), gamma.len());
        }
        let b = SyntacticModel::new(sig(Tier::Bicat), Tier::Bicat);
        assert!(context_product_equiv(&b, &Context::single("x", Type::base("A"))).is_err());
    }

    #[test]
    fn biclone_laws_hold_with_evidence() {
        let m = SyntacticModel::new(sig(Tier::Bicat), Tier::Bicat);
        let x = Context::single("x", Type::base("A"));
        let c = m.one(&x, &x, vec![Term::konst("c", vec![Term::var("x")])]).unwrap();
        let (l, r, ds) = m.triangle(&c, &c).unwrap();
        assert_eq!(m.eq2(&l, &r), Verdict::Unknown);
        assert_eq!(m.decide(&l, &r, Some(&ds), false), Verdict::Equal);
        let (l, r, ds) = m.pentagon(&c, &c, &c, &c).unwrap();
        assert_eq!(m.decide(&l, &r, Some(&ds), false), Verdict::Equal);
        assert_eq!(m.decide(&l, &r, None, false), Verdict::Unknown);
    }
}
