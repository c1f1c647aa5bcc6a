//! Builds finite categories and homomorphisms from their source definitions.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::ast::{Entry, HomDef, ModelDef};
use crate::gen::category_library;
use crate::semantics::engine::{tuple_arr, tuple_obj};
use crate::semantics::{Arr, BaseCat, Cat, Engine, FunctorVal, GraphHom, Limits, NatVal, Obj};
use crate::signature::{Signature, Type};

/// A conversion failure, attributed to the named item.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{item}: {message}")]
pub struct ConvertError {
    pub item: String,
    pub message: String,
}

fn fail<T>(item: &str, message: impl Into<String>) -> Result<T, ConvertError> {
    Err(ConvertError { item: item.to_string(), message: message.into() })
}

pub fn model_category(name: &str, def: &ModelDef) -> Result<BaseCat, ConvertError> {
    let cat = match def {
        ModelDef::Set(xs) => BaseCat::discrete_named(xs.clone()),
        ModelDef::Discrete(n) => BaseCat::discrete(*n),
        ModelDef::Chain(n) => BaseCat::preorder(*n, |i, j| i <= j),
        ModelDef::Explicit { objects, arrows, laws } => explicit(name, objects, arrows, laws)?,
    };
    cat.validate().map_err(|e| ConvertError { item: name.to_string(), message: e.to_string() })?;
    Ok(cat)
}

fn explicit(name: &str, objects: &[String], arrows: &[(String, String, String)], laws: &[(String, String, String)]) -> Result<BaseCat, ConvertError> {
    let obj = |o: &str| objects.iter().position(|x| x == o).map_or_else(|| fail(name, format!("unknown object `{o}`")), Ok);
    let mut all: Vec<(String, usize, usize)> = objects.iter().enumerate().map(|(i, o)| (format!("id_{o}"), i, i)).collect();
    for (a, s, t) in arrows {
        all.push((a.clone(), obj(s)?, obj(t)?));
    }
    let n = all.len();
    let mut comp = vec![vec![None; n]; n];
    for (g, &(_, gs, _)) in all.iter().enumerate() {
        for (f, &(_, _, ft)) in all.iter().enumerate() {
            if ft != gs {
                continue;
            }
            if g < objects.len() {
                comp[g][f] = Some(f);
            } else if f < objects.len() {
                comp[g][f] = Some(g);
            }
        }
    }
    let arrow = |a: &str| all.iter().position(|x| x.0 == a).map_or_else(|| fail(name, format!("unknown arrow `{a}`")), Ok);
    for (g, f, h) in laws {
        let (gi, fi, hi) = (arrow(g)?, arrow(f)?, arrow(h)?);
        if all[fi].2 != all[gi].1 || all[hi].1 != all[fi].1 || all[hi].2 != all[gi].2 {
            return fail(name, format!("law `{g} . {f} = {h}` is ill-typed"));
        }
        comp[gi][fi] = Some(hi);
    }
    Ok(BaseCat { objects: objects.to_vec(), arrows: all, ids: (0..objects.len()).collect(), comp })
}

/// Resolves a sort image: a model from the sources, or a library category.
pub fn resolve_category(name: &str, models: &BTreeMap<String, BaseCat>) -> Option<BaseCat> {
    models.get(name).cloned().or_else(|| category_library().into_iter().find(|(n, _)| n == name).map(|(_, c)| c))
}

fn base_sort<'a>(item: &str, ty: &'a Type) -> Result<&'a str, ConvertError> {
    match ty {
        Type::Base(b) => Ok(b),
        _ => fail(item, format!("type `{ty}` is not a sort; tables only cover constants between sorts")),
    }
}

/// A key component as an object, or as an arrow with objects promoted to identities.
fn key_obj(cat: &BaseCat, name: &str) -> Option<Obj> {
    cat.object_named(name).map(|i| Obj::Base(i as u32))
}

fn key_arr(cat: &BaseCat, name: &str) -> Option<Arr> {
    cat.arrow_named(name).or_else(|| cat.object_named(name).map(|i| cat.ids[i])).map(|i| Arr::Base(i as u32))
}

/// The product of the source categories, enumerated as the interpreter does.
fn domain(item: &str, cats: &[Arc<BaseCat>]) -> Result<Arc<Cat>, ConvertError> {
    let engine = Engine::new(cats.iter().enumerate().map(|(i, c)| (Arc::from(format!("_{i}").as_str()), c.clone())).collect(), Limits::FINSET);
    let ty = Type::Prod((0..cats.len()).map(|i| Type::base(&format!("_{i}"))).collect());
    engine.cat(&ty).map_err(|e| ConvertError { item: item.to_string(), message: e.to_string() })
}

fn functor(item: &str, cats: &[Arc<BaseCat>], target: &BaseCat, entries: &[Entry]) -> Result<FunctorVal, ConvertError> {
    let dcat = domain(item, cats)?;
    let mut obj: Vec<Option<Obj>> = vec![None; dcat.objs.len()];
    let mut arr: Vec<Option<Arr>> = vec![None; dcat.arrs.len()];
    for e in entries {
        if e.key.len() != cats.len() {
            return fail(item, format!("key `{}` has {} components, expected {}", e.key.join(", "), e.key.len(), cats.len()));
        }
        let objs: Option<Vec<Obj>> = e.key.iter().zip(cats).map(|(k, c)| key_obj(c, k)).collect();
        if let Some(os) = objs {
            let ix = dcat.obj_index(&tuple_obj(os)).expect("object of the product");
            let Some(v) = target.object_named(&e.value) else {
                return fail(item, format!("`{}` is not an object of the target", e.value));
            };
            obj[ix] = Some(Obj::Base(v as u32));
            continue;
        }
        let arrs: Option<Vec<Arr>> = e.key.iter().zip(cats).map(|(k, c)| key_arr(c, k)).collect();
        let Some(arrs) = arrs else {
            return fail(item, format!("key `{}` names no object or arrow of the domain", e.key.join(", ")));
        };
        let ix = dcat.arr_index(&tuple_arr(arrs)).expect("arrow of the product");
        let Some(v) = key_arr(target, &e.value) else {
            return fail(item, format!("`{}` is not an arrow of the target", e.value));
        };
        arr[ix] = Some(v);
    }
    let obj: Vec<Obj> = obj
        .into_iter()
        .enumerate()
        .map(|(i, o)| o.map_or_else(|| fail(item, format!("object {} of the domain is not mapped", i + 1)), Ok))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(arr.len());
    for (i, a) in arr.into_iter().enumerate() {
        match a {
            Some(a) => out.push(a),
            None => match dcat.ids.iter().position(|&j| j == i) {
                Some(o) => {
                    let Obj::Base(v) = obj[o] else { unreachable!("targets are sorts") };
                    out.push(Arr::Base(target.ids[v as usize] as u32));
                }
                None => return fail(item, format!("arrow {} of the domain is not mapped", i + 1)),
            },
        }
    }
    Ok(FunctorVal { obj, arr: out })
}

/// Builds the hom described by `def` for `sig`, resolving sort images by name.
pub fn build_hom(def: &HomDef, sig: &Signature, models: &BTreeMap<String, BaseCat>) -> Result<GraphHom, ConvertError> {
    let mut h = GraphHom::new(def.backend);
    for (sort, m) in &def.sorts {
        let Some(c) = resolve_category(m, models) else {
            return fail(sort, format!("unknown model `{m}`"));
        };
        h.sorts.insert(sort.clone(), Arc::new(c));
    }
    let cat = |item: &str, s: &str| h.sorts.get(s).cloned().map_or_else(|| fail(item, format!("sort `{s}` is not mapped")), Ok);
    let mut edges = BTreeMap::new();
    for (name, entries) in &def.consts {
        let Some(e) = sig.edge(name) else {
            return fail(name, "unknown constant");
        };
        let cats = e.source.iter().map(|t| base_sort(name, t).and_then(|s| cat(name, s))).collect::<Result<Vec<_>, _>>()?;
        let target = cat(name, base_sort(name, &e.target)?)?;
        edges.insert(name.clone(), Arc::new(functor(name, &cats, &target, entries)?));
    }
    for (name, entries) in &def.cells {
        let Some(s) = sig.surface(name) else {
            return fail(name, "unknown cell");
        };
        let (Some(src), Some(tgt)) = (edges.get(&s.from).cloned(), edges.get(&s.to).cloned()) else {
            return fail(name, "both endpoint constants must be mapped");
        };
        let e = sig.edge(&s.from).expect("surface endpoints are edges");
        let cats = e.source.iter().map(|t| base_sort(name, t).and_then(|s| cat(name, s))).collect::<Result<Vec<_>, _>>()?;
        let target = cat(name, base_sort(name, &e.target)?)?;
        // Unlisted components default to identities.
        let dcat = domain(name, &cats)?;
        let mut comps: Vec<Option<Arr>> = vec![None; dcat.objs.len()];
        for en in entries {
            let objs: Option<Vec<Obj>> = en.key.iter().zip(&cats).map(|(k, c)| key_obj(c, k)).collect();
            let (Some(os), true) = (objs, en.key.len() == cats.len()) else {
                return fail(name, format!("key `{}` is not an object of the domain", en.key.join(", ")));
            };
            let ix = dcat.obj_index(&tuple_obj(os)).expect("object of the product");
            let Some(v) = key_arr(&target, &en.value) else {
                return fail(name, format!("`{}` is not an arrow of the target", en.value));
            };
            comps[ix] = Some(v);
        }
        let comps = comps
            .into_iter()
            .enumerate()
            .map(|(i, c)| match c {
                Some(c) => Ok(c),
                None if src.obj[i] == tgt.obj[i] => {
                    let Obj::Base(v) = src.obj[i] else { unreachable!("targets are sorts") };
                    Ok(Arr::Base(target.ids[v as usize] as u32))
                }
                None => fail(name, format!("component {} is not given", i + 1)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        h.surfaces.insert(name.clone(), Arc::new(NatVal { src, tgt, comps }));
    }
    h.edges = edges;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{check_hom, BackendKind};
    use crate::signature::{Edge, Surface, Tier};

    #[test]
    fn explicit_model_with_law() {
        let def = ModelDef::Explicit {
            objects: vec!["a".into(), "b".into(), "c".into()],
            arrows: vec![("f".into(), "a".into(), "b".into()), ("g".into(), "b".into(), "c".into()), ("h".into(), "a".into(), "c".into())],
            laws: vec![("g".into(), "f".into(), "h".into())],
        };
        let c = model_category("m", &def).unwrap();
        assert_eq!(c.num_arrows(), 6);
        let ModelDef::Explicit { objects, arrows, .. } = def else { unreachable!() };
        let missing = ModelDef::Explicit { objects, arrows, laws: vec![] };
        assert!(model_category("m", &missing).is_err());
    }

    #[test]
    fn table_hom_checks() {
        let a = Type::base("A");
        let sig = Signature::build(
            &["A"],
            vec![Edge { name: "c".into(), source: vec![a.clone()], target: a.clone() }],
            vec![Surface { name: "s".into(), from: "c".into(), to: "c".into() }],
            Tier::Bicat,
        )
        .unwrap();
        let e = |k: &str, v: &str| Entry { key: vec![k.into()], tuple: false, value: v.into() };
        let def = HomDef {
            backend: BackendKind::FinCat,
            sorts: vec![("A".into(), "chain2".into())],
            consts: vec![("c".into(), vec![e("0", "0"), e("1", "1"), e("0<1", "0<1")])],
            cells: vec![("s".into(), vec![])],
        };
        let h = build_hom(&def, &sig, &BTreeMap::new()).unwrap();
        assert!(check_hom(&h, &sig).passed());
        let bad = HomDef { consts: vec![("c".into(), vec![e("0", "0")])], ..def };
        assert!(build_hom(&bad, &sig, &BTreeMap::new()).is_err());
    }
}
