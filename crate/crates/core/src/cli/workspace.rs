//! Loaded sources: the signature they declare, their tier, models and homs.

use std::collections::BTreeMap;

use super::ast::{HomDef, Item, SourceFile};
use super::convert::{build_hom, model_category};
use super::lexer::Span;
use super::{items::parse_source, Diag, Options};
use crate::equational::{AxiomId, Derivation, Invertible};
use crate::semantics::{check_hom, BaseCat, GraphHom};
use crate::signature::{Edge, Signature, Surface, Tier};

pub struct Workspace {
    pub files: Vec<(String, SourceFile)>,
    pub sig: Signature,
    pub tier: Tier,
    pub lax: bool,
    pub models: BTreeMap<String, BaseCat>,
    /// Ill-formed declarations, reported as check failures.
    pub failures: Vec<Diag>,
}

/// Whether a derivation cites a law of an inverse unit or counit.
fn cites_inverse(d: &Derivation) -> bool {
    let universal = |k: Invertible| matches!(k, Invertible::CounitProd | Invertible::UnitProd | Invertible::CounitExp | Invertible::UnitExp);
    match d {
        Derivation::Axiom(inst) => matches!(inst.axiom, AxiomId::InvLeft(k) | AxiomId::InvRight(k) if universal(k)),
        Derivation::Refl(r) => r.uses_universal_inverse(),
        Derivation::Symm(a) => cites_inverse(a),
        Derivation::Trans(a, b) | Derivation::CongVert(a, b) => cites_inverse(a) || cites_inverse(b),
        Derivation::CongSubst { body, args, .. } => cites_inverse(body) || args.iter().any(cites_inverse),
        Derivation::CongTransposeProd { comps, .. } => comps.iter().any(cites_inverse),
        Derivation::CongTransposeExp { body, .. } => cites_inverse(body),
    }
}

fn uses_inverse(item: &Item) -> bool {
    match item {
        Item::Rewrite { body, .. } => body.uses_universal_inverse(),
        Item::Eq { lhs, rhs, proof, .. } => lhs.uses_universal_inverse() || rhs.uses_universal_inverse() || cites_inverse(proof),
        _ => false,
    }
}

pub fn parse_all(sources: &[(String, String)]) -> Result<Vec<(String, SourceFile)>, Diag> {
    sources
        .iter()
        .map(|(name, src)| parse_source(src).map(|f| (name.clone(), f)).map_err(|e| Diag::at(name, e.span, None, e.message)))
        .collect()
}

impl Workspace {
    pub fn items(&self) -> impl Iterator<Item = (&str, Span, &Item)> {
        self.files.iter().flat_map(|(name, f)| f.items.iter().zip(&f.spans).map(move |(i, s)| (name.as_str(), *s, i)))
    }

    pub fn find(&self, name: &str) -> Option<(&str, Span, &Item)> {
        self.items().find(|(_, _, i)| i.name() == Some(name))
    }

    /// Parses and assembles the sources. An `Err` is a usage error.
    pub fn load(sources: &[(String, String)], opts: &Options) -> Result<Workspace, Diag> {
        let files = parse_all(sources)?;
        let mut declared: Option<(Tier, String, Span)> = None;
        for (name, f) in &files {
            for (item, span) in f.items.iter().zip(&f.spans) {
                let Item::Tier(t) = item else { continue };
                match &declared {
                    Some((d, dn, ds)) if d != t => {
                        return Err(Diag::at(name, *span, None, format!("tier {} conflicts with tier {} declared at {dn}:{ds}", t.name(), d.name())));
                    }
                    Some(_) => {}
                    None => declared = Some((*t, name.clone(), *span)),
                }
            }
        }
        let tier = match (opts.tier, &declared) {
            (Some(t), Some((d, dn, ds))) if t != *d => {
                return Err(Diag::at(dn, *ds, None, format!("--tier {} conflicts with the declared tier {}", t.name(), d.name())));
            }
            (Some(t), _) => t,
            (None, Some((d, _, _))) => *d,
            (None, None) => Tier::Closed,
        };
        if opts.lax {
            for (name, f) in &files {
                if let Some((item, span)) = f.items.iter().zip(&f.spans).find(|(i, _)| uses_inverse(i)) {
                    return Err(Diag::at(name, *span, item.name(), "--lax conflicts with inverse units and counits"));
                }
            }
        }
        let mut ws = Workspace { files, sig: Signature::empty(tier), tier, lax: opts.lax, models: BTreeMap::new(), failures: Vec::new() };
        ws.assemble();
        Ok(ws)
    }

    fn assemble(&mut self) {
        let mut failures = Vec::new();
        let mut sig = Signature::empty(self.tier);
        let mut models = BTreeMap::new();
        let mut seen: BTreeMap<String, (String, Span)> = BTreeMap::new();
        for (file, span, item) in self.items() {
            let fail = |msg: String| Diag::at(file, span, item.name(), msg);
            if let Some(n) = item.name() {
                if let Some((f0, s0)) = seen.get(n) {
                    failures.push(fail(format!("duplicate name, first declared at {f0}:{s0}")));
                    continue;
                }
                seen.insert(n.to_string(), (file.to_string(), span));
            }
            let result = match item {
                Item::Sort(s) => sig.add_sort(s).map_err(|e| e.to_string()),
                Item::Const { name, source, target } => {
                    sig.add_edge(Edge { name: name.clone(), source: source.clone(), target: target.clone() }).map_err(|e| e.to_string())
                }
                Item::Cell { name, from, to } => {
                    sig.add_surface(Surface { name: name.clone(), from: from.clone(), to: to.clone() }).map_err(|e| e.to_string())
                }
                Item::Model { name, def } => model_category(name, def).map(|c| {
                    models.insert(name.clone(), c);
                }).map_err(|e| e.message),
                _ => Ok(()),
            };
            if let Err(msg) = result {
                failures.push(fail(msg));
            }
        }
        self.sig = sig;
        self.models = models;
        self.failures = failures;
    }

    /// The hom named by `--hom`: a hom item of the sources, or a file
    /// whose first hom is used. `Err(true)` is a usage error.
    pub fn hom(&self, spec: &str) -> Result<GraphHom, (bool, Diag)> {
        let (file, span, def, models) = if let Some((file, span, Item::Hom { def, .. })) = self.find(spec) {
            (file.to_string(), span, def.clone(), self.models.clone())
        } else {
            let src = std::fs::read_to_string(spec).map_err(|e| (true, Diag::plain(format!("--hom {spec}: no hom of that name, and the file cannot be read: {e}"))))?;
            let parsed = parse_all(&[(spec.to_string(), src)]).map_err(|d| (true, d))?;
            let (_, f) = &parsed[0];
            let mut models = self.models.clone();
            for item in &f.items {
                if let Item::Model { name, def } = item {
                    let c = model_category(name, def).map_err(|e| (false, Diag::plain(e.to_string())))?;
                    models.insert(name.clone(), c);
                }
            }
            let found = f.items.iter().zip(&f.spans).find_map(|(i, s)| match i {
                Item::Hom { def, .. } => Some((*s, def.clone())),
                _ => None,
            });
            let Some((span, def)) = found else {
                return Err((true, Diag::plain(format!("--hom {spec}: the file declares no hom"))));
            };
            (spec.to_string(), span, def, models)
        };
        self.build(&file, span, &def, &models).map_err(|d| (false, d))
    }

    pub fn build(&self, file: &str, span: Span, def: &HomDef, models: &BTreeMap<String, BaseCat>) -> Result<GraphHom, Diag> {
        let h = build_hom(def, &self.sig, models).map_err(|e| Diag::at(file, span, Some(&e.item), e.message))?;
        let report = check_hom(&h, &self.sig);
        match report.violations.first() {
            Some(v) => Err(Diag::at(file, span, Some(&v.item), v.message.clone())),
            None => Ok(h),
        }
    }
}
