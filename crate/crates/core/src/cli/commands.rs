//! The `check`, `eq` and `interp` commands, and dispatch.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ast::Item;
use super::workspace::Workspace;
use super::{Backend, CommandKind, Diag, Options, Report};
use crate::equational::check_equation;
use crate::gen::{probe_signature, random_hom};
use crate::semantics::{Arr, BackendKind, Engine, GraphHom, Obj, StrictModel};
use crate::signature::Type;
use crate::syntax::alpha_eq;
use crate::typing::Checker;

pub fn run(command: CommandKind, files: &[String], opts: &Options) -> Report {
    let mut sources = Vec::new();
    for f in files {
        match std::fs::read_to_string(f) {
            Ok(s) => sources.push((f.clone(), s)),
            Err(e) => return Report::new(command).error(Diag::plain(format!("cannot read {f}: {e}"))),
        }
    }
    run_sources(command, &sources, opts)
}

pub fn run_sources(command: CommandKind, sources: &[(String, String)], opts: &Options) -> Report {
    let report = Report::new(command);
    if sources.is_empty() && matches!(command, CommandKind::Check | CommandKind::Eq | CommandKind::Interp) {
        return report.error(Diag::plain(format!("{} needs at least one source file", command.name())));
    }
    let mut ws = match Workspace::load(sources, opts) {
        Ok(ws) => ws,
        Err(d) => return report.error(d),
    };
    // Without sources the experiments run over a fixed probe signature.
    if sources.is_empty() {
        ws.sig = probe_signature(ws.tier);
    }
    match command {
        CommandKind::Check => check(report, &ws, false),
        CommandKind::Eq => check(report, &ws, true),
        CommandKind::Interp => interp(report, &ws, opts),
        CommandKind::Synth => super::experiments::synth(report, &ws, opts),
        CommandKind::Probe => super::experiments::probe(report, &ws, opts),
        CommandKind::Free => super::experiments::free(report, &ws, opts),
    }
}

/// Checks one item, returning a summary line for those with content.
fn check_item(ws: &Workspace, c: &Checker, file: &str, span: super::Span, item: &Item) -> Result<Option<String>, String> {
    match item {
        Item::Term { name, ctx, ty, body } => {
            c.check_context(ctx).map_err(|e| e.to_string())?;
            let found = c.check_term(ctx, body).map_err(|e| e.to_string())?;
            if let Some(t) = ty.as_ref().filter(|t| **t != found) {
                return Err(format!("declared type {t}, found {found}"));
            }
            Ok(Some(format!("term {name} : {found}")))
        }
        Item::Rewrite { name, ctx, ends, body } => {
            c.check_context(ctx).map_err(|e| e.to_string())?;
            let rt = c.check_rewrite(ctx, body).map_err(|e| e.to_string())?;
            if let Some((s, t)) = ends {
                if !alpha_eq(s, &rt.source) || !alpha_eq(t, &rt.target) {
                    return Err(format!("declared {s} => {t}, found {} => {}", rt.source, rt.target));
                }
            }
            Ok(Some(format!("rewrite {name} : {} => {} : {}", rt.source, rt.target, rt.ty)))
        }
        Item::Eq { name, ctx, lhs, rhs, proof } => {
            c.check_context(ctx).map_err(|e| e.to_string())?;
            let concl = check_equation(c, ctx, lhs, rhs, proof).map_err(|d| d.to_string())?;
            Ok(Some(format!("eq {name} : {} => {} holds", concl.judgement.source, concl.judgement.target)))
        }
        Item::Hom { name, def } => {
            ws.build(file, span, def, &ws.models).map_err(|d| d.message)?;
            Ok(Some(format!("hom {name} is a homomorphism into {}", def.backend.name())))
        }
        Item::Model { name, .. } => Ok(ws.models.get(name).map(|m| format!("model {name} : {} objects, {} arrows", m.num_objects(), m.num_arrows()))),
        _ => Ok(None),
    }
}

fn check(mut report: Report, ws: &Workspace, only_eqs: bool) -> Report {
    for d in &ws.failures {
        report.fail(d.clone());
    }
    let c = Checker::new(&ws.sig, ws.tier).lax(ws.lax);
    let (mut checked, mut failed) = (0, 0);
    for (file, span, item) in ws.items() {
        if only_eqs && !matches!(item, Item::Eq { .. }) {
            continue;
        }
        if ws.failures.iter().any(|d| d.item.as_deref() == item.name() && item.name().is_some()) {
            continue;
        }
        match check_item(ws, &c, file, span, item) {
            Ok(Some(line)) => {
                checked += 1;
                report.say(line);
            }
            Ok(None) => {}
            Err(msg) => {
                failed += 1;
                report.fail(Diag::at(file, span, item.name(), msg));
            }
        }
    }
    let what = if only_eqs { "equations" } else { "items" };
    report.say(format!("{checked} {what} passed, {} failed at tier {}", failed + ws.failures.len(), ws.tier.name()));
    report
}

/// The model for `interp`, `probe` and `free`: `--hom`, else a random one.
pub fn strict_model(ws: &Workspace, opts: &Options, backend: BackendKind, rng: &mut ChaCha8Rng) -> Result<StrictModel, (bool, Diag)> {
    let h = match &opts.hom {
        Some(spec) => ws.hom(spec)?,
        None => random_hom(&ws.sig, backend, rng).ok_or_else(|| (false, Diag::plain("no homomorphism into the library categories was found")))?,
    };
    if h.backend != backend {
        return Err((true, Diag::plain(format!("--backend {} conflicts with a hom into {}", backend.name(), h.backend.name()))));
    }
    Ok(StrictModel::new(h))
}

/// The strict backend requested, defaulting to that of `--hom`.
pub fn strict_backend(ws: &Workspace, opts: &Options) -> Option<BackendKind> {
    match opts.backend {
        Some(Backend::Finset) => Some(BackendKind::FinSet),
        Some(Backend::Fincat) => Some(BackendKind::FinCat),
        Some(Backend::Syntactic) => None,
        None => Some(opts.hom.as_ref().and_then(|s| ws.hom(s).ok()).map_or(BackendKind::FinCat, |h| h.backend)),
    }
}

/// Renders values with the object and arrow names of the hom's categories.
pub struct Render<'a> {
    pub hom: &'a GraphHom,
    pub engine: &'a Engine,
}

impl Render<'_> {
    fn dom_objs(&self, ty: &Type) -> Vec<Obj> {
        self.engine.cat(ty).map(|c| c.objs.clone()).unwrap_or_default()
    }

    pub fn obj(&self, ty: &Type, o: &Obj) -> String {
        match (ty, o) {
            (Type::Base(b), Obj::Base(i)) => self.hom.sorts.get(&**b).and_then(|c| c.objects.get(*i as usize).cloned()).unwrap_or_else(|| i.to_string()),
            (Type::Prod(ts), _) if ts.len() == 1 => self.obj(&ts[0], o),
            (Type::Prod(ts), Obj::Tuple(xs)) => {
                let parts: Vec<String> = ts.iter().zip(xs).map(|(t, x)| self.obj(t, x)).collect();
                format!("({})", parts.join(", "))
            }
            (Type::Arrow(a, b), Obj::Fun(f)) => {
                let parts: Vec<String> = self.dom_objs(a).iter().zip(&f.obj).map(|(x, y)| format!("{} => {}", self.obj(a, x), self.obj(b, y))).collect();
                format!("{{{}}}", parts.join(", "))
            }
            _ => format!("{o:?}"),
        }
    }

    pub fn arr(&self, ty: &Type, a: &Arr) -> String {
        match (ty, a) {
            (Type::Base(b), Arr::Base(i)) => self.hom.sorts.get(&**b).and_then(|c| c.arrows.get(*i as usize).map(|x| x.0.clone())).unwrap_or_else(|| i.to_string()),
            (Type::Prod(ts), _) if ts.len() == 1 => self.arr(&ts[0], a),
            (Type::Prod(ts), Arr::Tuple(xs)) => {
                let parts: Vec<String> = ts.iter().zip(xs).map(|(t, x)| self.arr(t, x)).collect();
                format!("({})", parts.join(", "))
            }
            (Type::Arrow(d, b), Arr::Nat(n)) => {
                let parts: Vec<String> = self.dom_objs(d).iter().zip(&n.comps).map(|(x, c)| format!("{}: {}", self.obj(d, x), self.arr(b, c))).collect();
                format!("[{}]", parts.join(", "))
            }
            _ => format!("{a:?}"),
        }
    }
}

fn interp(mut report: Report, ws: &Workspace, opts: &Options) -> Report {
    let Some(name) = &opts.judgement else {
        return report.error(Diag::plain("interp needs --judgement NAME"));
    };
    let Some((file, span, item)) = ws.find(name) else {
        return report.error(Diag::plain(format!("unknown judgement `{name}`")));
    };
    if !matches!(item, Item::Term { .. } | Item::Rewrite { .. }) {
        return report.error(Diag::at(file, span, Some(name), "only terms and rewrites can be interpreted"));
    }
    for d in &ws.failures {
        report.fail(d.clone());
    }
    let c = Checker::new(&ws.sig, ws.tier).lax(ws.lax);
    let summary = match check_item(ws, &c, file, span, item) {
        Ok(s) => s.unwrap_or_default(),
        Err(msg) => {
            report.fail(Diag::at(file, span, Some(name), msg));
            return report;
        }
    };
    if report.status != super::Status::Pass {
        return report;
    }
    report.say(summary);
    let Some(backend) = strict_backend(ws, opts) else {
        report.say("syntactic model: the judgement denotes itself up to the equational theory");
        return report;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let model = match strict_model(ws, opts, backend, &mut rng) {
        Ok(m) => m,
        Err((true, d)) => return report.error(d),
        Err((false, d)) => {
            report.fail(d);
            return report;
        }
    };
    let render = Render { hom: &model.hom, engine: &model.engine };
    let i = model.interpreter(&c);
    let at = |msg: String| Diag::at(file, span, Some(name), msg);
    match item {
        Item::Term { ctx, body, .. } => {
            let ty = c.check_term(ctx, body).expect("checked above");
            let env_ty = Type::Prod(ctx.types().cloned().collect());
            match i.interpret_term(ctx, body) {
                Ok(f) if ctx.is_empty() => report.say(format!("{name} = {}", render.obj(&ty, &f.obj[0]))),
                Ok(f) => {
                    for (env, o) in render.dom_objs(&env_ty).iter().zip(&f.obj) {
                        report.say(format!("{name} at {} = {}", render.obj(&env_ty, env), render.obj(&ty, o)));
                    }
                }
                Err(e) => report.fail(at(e.to_string())),
            }
        }
        Item::Rewrite { ctx, body, .. } => {
            let ty = c.check_rewrite(ctx, body).expect("checked above").ty;
            let env_ty = Type::Prod(ctx.types().cloned().collect());
            match i.interpret_rewrite(ctx, body) {
                Ok(n) => {
                    for (k, env) in render.dom_objs(&env_ty).iter().enumerate() {
                        let (s, t) = (render.obj(&ty, &n.src.obj[k]), render.obj(&ty, &n.tgt.obj[k]));
                        let head = if ctx.is_empty() { name.clone() } else { format!("{name} at {}", render.obj(&env_ty, env)) };
                        report.say(format!("{head} = {} : {s} => {t}", render.arr(&ty, &n.comps[k])));
                    }
                }
                Err(e) => report.fail(at(e.to_string())),
            }
        }
        _ => unreachable!("filtered above"),
    }
    report
}
