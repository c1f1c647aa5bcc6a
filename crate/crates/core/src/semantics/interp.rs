//! The interpretation of types, terms and rewrites in a strict backend.
//!
//! A judgement is compiled once against its context and then evaluated
//! pointwise: a term at each object (and arrow) of the context category, a
//! rewrite at each object.

use std::sync::Arc;

use super::engine::{split_arr, split_obj, tuple_arr, tuple_obj, Engine, Result, SemError};
use super::hom::GraphHom;
use super::value::{Arr, Cat, FunctorVal, NatVal, Obj};
use crate::signature::Type;
use crate::syntax::{Context, Rewrite, Term};
use crate::typing::Checker;

#[derive(Debug, Clone)]
enum Code {
    Var(usize),
    Const { table: Arc<FunctorVal>, dom: Arc<Cat>, args: Vec<Code> },
    Subst { body: Box<Code>, args: Vec<Code> },
    Pair(Vec<Code>),
    Proj { k: usize, n: usize, arg: Box<Code> },
    Lam { ctx_tys: Vec<Type>, dom: Arc<Cat>, body: Box<Code> },
    Eval { dom: Arc<Cat>, cod: Type, arg_ty: Type, f: Box<Code>, a: Box<Code> },
}

#[derive(Debug, Clone)]
enum RwCode {
    Id { code: Code, ty: Type },
    Vert { ty: Type, later: Box<RwCode>, first: Box<RwCode> },
    Subst { body: Box<RwCode>, body_tgt: Code, ty: Type, args: Vec<(RwCode, Type)> },
    Const { nat: Arc<NatVal>, dom: Arc<Cat>, args: Vec<Code> },
    Structural { src: Code, tgt: Code, ty: Type, label: String },
    TransProd(Vec<RwCode>),
    TransExp { dom: Arc<Cat>, u: Code, lam: Code, alpha: Box<RwCode> },
}

pub struct Interpreter<'a> {
    pub engine: &'a Engine,
    pub hom: &'a GraphHom,
    pub checker: &'a Checker<'a>,
}

fn var_index(ctx: &Context, x: &str) -> Result<usize> {
    ctx.0.iter().rposition(|(y, _)| &**y == x).ok_or_else(|| SemError::IllTyped(format!("unbound variable {x}")))
}

fn binder_ctx(bs: &[(crate::syntax::Var, Type)]) -> Context {
    Context(bs.to_vec())
}

impl<'a> Interpreter<'a> {
    pub fn new(engine: &'a Engine, hom: &'a GraphHom, checker: &'a Checker<'a>) -> Self {
        Interpreter { engine, hom, checker }
    }

    pub fn interpret_type(&self, ty: &Type) -> Result<Arc<Cat>> {
        self.engine.cat(ty)
    }

    pub fn context_cat(&self, ctx: &Context) -> Result<Arc<Cat>> {
        self.engine.context_cat(&ctx.types().cloned().collect::<Vec<_>>())
    }

    fn compile(&self, ctx: &Context, t: &Term) -> Result<Code> {
        Ok(match t {
            Term::Var(x) => Code::Var(var_index(ctx, x)?),
            Term::Const(name, args) => {
                let edge = self.checker.sig.edge(name).ok_or_else(|| SemError::UnmappedEdge(name.to_string()))?;
                let table = self.hom.edges.get(&**name).ok_or_else(|| SemError::UnmappedEdge(name.to_string()))?.clone();
                let dom = self.engine.cat(&Type::Prod(edge.source.clone()))?;
                let args = args.iter().map(|a| self.compile(ctx, a)).collect::<Result<_>>()?;
                Code::Const { table, dom, args }
            }
            Term::Subst(body, bs) => {
                let mut inner = Vec::with_capacity(bs.len());
                let mut args = Vec::with_capacity(bs.len());
                for b in bs {
                    inner.push((b.var.clone(), self.checker.check_term(ctx, &b.value)?));
                    args.push(self.compile(ctx, &b.value)?);
                }
                Code::Subst { body: Box::new(self.compile(&binder_ctx(&inner), body)?), args }
            }
            Term::Pair(ts) => Code::Pair(ts.iter().map(|t| self.compile(ctx, t)).collect::<Result<_>>()?),
            Term::Proj { k, n, arg } => Code::Proj { k: *k, n: *n, arg: Box::new(self.compile(ctx, arg)?) },
            Term::Lam { var, ty, body } => Code::Lam {
                ctx_tys: ctx.types().cloned().collect(),
                dom: self.engine.cat(ty)?,
                body: Box::new(self.compile(&ctx.extend(var.clone(), ty.clone()), body)?),
            },
            Term::Eval(f, a) => {
                let fty = self.checker.check_term(ctx, f)?;
                let (arg_ty, cod) = fty.as_arrow().ok_or_else(|| SemError::IllTyped(format!("{f} is not a function")))?;
                Code::Eval {
                    dom: self.engine.cat(arg_ty)?,
                    cod: cod.clone(),
                    arg_ty: arg_ty.clone(),
                    f: Box::new(self.compile(ctx, f)?),
                    a: Box::new(self.compile(ctx, a)?),
                }
            }
        })
    }

    fn compile_rw(&self, ctx: &Context, r: &Rewrite) -> Result<RwCode> {
        let rt = self.checker.check_rewrite(ctx, r)?;
        Ok(match r {
            Rewrite::Id(t) => RwCode::Id { code: self.compile(ctx, t)?, ty: rt.ty },
            Rewrite::Vert(later, first) => RwCode::Vert {
                ty: rt.ty,
                later: Box::new(self.compile_rw(ctx, later)?),
                first: Box::new(self.compile_rw(ctx, first)?),
            },
            Rewrite::Subst(body, bs) => {
                let mut inner = Vec::with_capacity(bs.len());
                let mut args = Vec::with_capacity(bs.len());
                for b in bs {
                    let bt = self.checker.check_rewrite(ctx, &b.value)?;
                    inner.push((b.var.clone(), bt.ty.clone()));
                    args.push((self.compile_rw(ctx, &b.value)?, bt.ty));
                }
                let inner = binder_ctx(&inner);
                let body_rt = self.checker.check_rewrite(&inner, body)?;
                RwCode::Subst {
                    body: Box::new(self.compile_rw(&inner, body)?),
                    body_tgt: self.compile(&inner, &body_rt.target)?,
                    ty: rt.ty,
                    args,
                }
            }
            Rewrite::ConstCell(name, args) => {
                let surf = self.checker.sig.surface(name).ok_or_else(|| SemError::UnmappedSurface(name.to_string()))?;
                let edge = self.checker.sig.edge(&surf.from).ok_or_else(|| SemError::UnmappedEdge(surf.from.clone()))?;
                let nat = self.hom.surfaces.get(&**name).ok_or_else(|| SemError::UnmappedSurface(name.to_string()))?.clone();
                RwCode::Const {
                    nat,
                    dom: self.engine.cat(&Type::Prod(edge.source.clone()))?,
                    args: args.iter().map(|a| self.compile(ctx, a)).collect::<Result<_>>()?,
                }
            }
            Rewrite::TransposeProd { alphas, .. } => {
                RwCode::TransProd(alphas.iter().map(|a| self.compile_rw(ctx, a)).collect::<Result<_>>()?)
            }
            Rewrite::TransposeExp { var, ty, source, alpha } => RwCode::TransExp {
                dom: self.engine.cat(ty)?,
                u: self.compile(ctx, source)?,
                lam: self.compile(ctx, &rt.target)?,
                alpha: Box::new(self.compile_rw(&ctx.extend(var.clone(), ty.clone()), alpha)?),
            },
            Rewrite::Assoc { .. }
            | Rewrite::SubId { .. }
            | Rewrite::ProjCell { .. }
            | Rewrite::CounitProd { .. }
            | Rewrite::UnitProdInv(_)
            | Rewrite::CounitExp { .. }
            | Rewrite::UnitExpInv { .. } => RwCode::Structural {
                src: self.compile(ctx, &rt.source)?,
                tgt: self.compile(ctx, &rt.target)?,
                ty: rt.ty,
                label: r.to_string(),
            },
        })
    }

    fn obj(&self, code: &Code, env: &[Obj]) -> Result<Obj> {
        match code {
            Code::Var(i) => env.get(*i).cloned().ok_or_else(|| SemError::IllTyped("environment too short".into())),
            Code::Const { table, dom, args } => {
                let x = tuple_obj(args.iter().map(|a| self.obj(a, env)).collect::<Result<_>>()?);
                let i = dom.obj_index(&x).ok_or_else(|| SemError::IllTyped("constant applied outside its domain".into()))?;
                Ok(table.obj[i].clone())
            }
            Code::Subst { body, args } => {
                let inner = args.iter().map(|a| self.obj(a, env)).collect::<Result<Vec<_>>>()?;
                self.obj(body, &inner)
            }
            Code::Pair(ts) => Ok(tuple_obj(ts.iter().map(|t| self.obj(t, env)).collect::<Result<_>>()?)),
            Code::Proj { k, n, arg } => Ok(split_obj(*n, &self.obj(arg, env)?)?.swap_remove(k - 1)),
            Code::Lam { ctx_tys, dom, body } => Ok(Obj::Fun(Arc::new(self.lam_at(ctx_tys, dom, body, env)?))),
            Code::Eval { dom, f, a, .. } => {
                let Obj::Fun(fv) = self.obj(f, env)? else { return Err(SemError::IllTyped("applying a non-functor".into())) };
                let x = self.obj(a, env)?;
                let i = dom.obj_index(&x).ok_or_else(|| SemError::IllTyped("argument outside the domain".into()))?;
                Ok(fv.obj[i].clone())
            }
        }
    }

    fn lam_at(&self, ctx_tys: &[Type], dom: &Cat, body: &Code, env: &[Obj]) -> Result<FunctorVal> {
        let mut obj = Vec::with_capacity(dom.objs.len());
        for a in &dom.objs {
            let mut e = env.to_vec();
            e.push(a.clone());
            obj.push(self.obj(body, &e)?);
        }
        let ids = ctx_tys.iter().zip(env).map(|(t, o)| self.engine.id(t, o)).collect::<Result<Vec<_>>>()?;
        let mut arr = Vec::with_capacity(dom.arrs.len());
        for f in &dom.arrs {
            let mut e = ids.clone();
            e.push(f.clone());
            arr.push(self.arr(body, &e)?);
        }
        Ok(FunctorVal { obj, arr })
    }

    fn arr(&self, code: &Code, env: &[Arr]) -> Result<Arr> {
        match code {
            Code::Var(i) => env.get(*i).cloned().ok_or_else(|| SemError::IllTyped("environment too short".into())),
            Code::Const { table, dom, args } => {
                let x = tuple_arr(args.iter().map(|a| self.arr(a, env)).collect::<Result<_>>()?);
                let i = dom.arr_index(&x).ok_or_else(|| SemError::IllTyped("constant applied outside its domain".into()))?;
                Ok(table.arr[i].clone())
            }
            Code::Subst { body, args } => {
                let inner = args.iter().map(|a| self.arr(a, env)).collect::<Result<Vec<_>>>()?;
                self.arr(body, &inner)
            }
            Code::Pair(ts) => Ok(tuple_arr(ts.iter().map(|t| self.arr(t, env)).collect::<Result<_>>()?)),
            Code::Proj { k, n, arg } => Ok(split_arr(*n, &self.arr(arg, env)?)?.swap_remove(k - 1)),
            Code::Lam { ctx_tys, dom, body } => {
                let srcs = ctx_tys.iter().zip(env).map(|(t, g)| self.engine.src(t, g)).collect::<Result<Vec<_>>>()?;
                let tgts = ctx_tys.iter().zip(env).map(|(t, g)| self.engine.tgt(t, g)).collect::<Result<Vec<_>>>()?;
                let src = Arc::new(self.lam_at(ctx_tys, dom, body, &srcs)?);
                let tgt = Arc::new(self.lam_at(ctx_tys, dom, body, &tgts)?);
                let mut comps = Vec::with_capacity(dom.objs.len());
                for &id in &dom.ids {
                    let mut e = env.to_vec();
                    e.push(dom.arrs[id].clone());
                    comps.push(self.arr(body, &e)?);
                }
                Ok(Arr::Nat(Arc::new(NatVal { src, tgt, comps })))
            }
            Code::Eval { dom, cod, arg_ty, f, a } => {
                let Arr::Nat(phi) = self.arr(f, env)? else { return Err(SemError::IllTyped("applying a non-transformation".into())) };
                let g = self.arr(a, env)?;
                let gi = dom.arr_index(&g).ok_or_else(|| SemError::IllTyped("argument outside the domain".into()))?;
                let s = self.engine.src(arg_ty, &g)?;
                let si = dom.obj_index(&s).ok_or_else(|| SemError::IllTyped("argument outside the domain".into()))?;
                self.engine.comp(cod, &phi.tgt.arr[gi], &phi.comps[si])
            }
        }
    }

    fn cell(&self, code: &RwCode, env: &[Obj]) -> Result<Arr> {
        match code {
            RwCode::Id { code, ty } => self.engine.id(ty, &self.obj(code, env)?),
            RwCode::Vert { ty, later, first } => {
                let f = self.cell(first, env)?;
                let g = self.cell(later, env)?;
                self.engine.comp(ty, &g, &f)
            }
            RwCode::Subst { body, body_tgt, ty, args } => {
                let mut sigma = Vec::with_capacity(args.len());
                let mut srcs = Vec::with_capacity(args.len());
                for (a, aty) in args {
                    let s = self.cell(a, env)?;
                    srcs.push(self.engine.src(aty, &s)?);
                    sigma.push(s);
                }
                let tau = self.cell(body, &srcs)?;
                let whisker = self.arr(body_tgt, &sigma)?;
                self.engine.comp(ty, &whisker, &tau)
            }
            RwCode::Const { nat, dom, args } => {
                let x = tuple_obj(args.iter().map(|a| self.obj(a, env)).collect::<Result<_>>()?);
                let i = dom.obj_index(&x).ok_or_else(|| SemError::IllTyped("surface applied outside its domain".into()))?;
                Ok(nat.comps[i].clone())
            }
            RwCode::Structural { src, tgt, ty, label } => {
                let s = self.obj(src, env)?;
                if s != self.obj(tgt, env)? {
                    return Err(SemError::NonStrict(label.clone()));
                }
                self.engine.id(ty, &s)
            }
            RwCode::TransProd(alphas) => Ok(tuple_arr(alphas.iter().map(|a| self.cell(a, env)).collect::<Result<_>>()?)),
            RwCode::TransExp { dom, u, lam, alpha } => {
                let Obj::Fun(src) = self.obj(u, env)? else { return Err(SemError::IllTyped("transpose source is not a functor".into())) };
                let Obj::Fun(tgt) = self.obj(lam, env)? else { return Err(SemError::IllTyped("transpose target is not a functor".into())) };
                let mut comps = Vec::with_capacity(dom.objs.len());
                for a in &dom.objs {
                    let mut e = env.to_vec();
                    e.push(a.clone());
                    comps.push(self.cell(alpha, &e)?);
                }
                Ok(Arr::Nat(Arc::new(NatVal { src, tgt, comps })))
            }
        }
    }

    /// `⟦Γ ⊢ t⟧` as a functor table over the context category.
    pub fn interpret_term(&self, ctx: &Context, t: &Term) -> Result<FunctorVal> {
        self.checker.check_term(ctx, t)?;
        let code = self.compile(ctx, t)?;
        let cat = self.context_cat(ctx)?;
        let n = ctx.len();
        let obj = cat.objs.iter().map(|o| self.obj(&code, &split_obj(n, o)?)).collect::<Result<_>>()?;
        let arr = cat.arrs.iter().map(|a| self.arr(&code, &split_arr(n, a)?)).collect::<Result<_>>()?;
        Ok(FunctorVal { obj, arr })
    }

    /// `⟦Γ ⊢ t⟧` at one object of the context category only.
    pub fn term_at(&self, ctx: &Context, t: &Term, env: &Obj) -> Result<Obj> {
        self.checker.check_term(ctx, t)?;
        let code = self.compile(ctx, t)?;
        self.obj(&code, &split_obj(ctx.len(), env)?)
    }

    /// `⟦Γ ⊢ τ⟧` as a transformation between the interpretations of its endpoints.
    pub fn interpret_rewrite(&self, ctx: &Context, r: &Rewrite) -> Result<NatVal> {
        let rt = self.checker.check_rewrite(ctx, r)?;
        let code = self.compile_rw(ctx, r)?;
        let cat = self.context_cat(ctx)?;
        let n = ctx.len();
        let comps = cat.objs.iter().map(|o| self.cell(&code, &split_obj(n, o)?)).collect::<Result<_>>()?;
        Ok(NatVal {
            src: Arc::new(self.interpret_term(ctx, &rt.source)?),
            tgt: Arc::new(self.interpret_term(ctx, &rt.target)?),
            comps,
        })
    }
}
