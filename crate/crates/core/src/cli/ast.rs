//! Abstract syntax of source files.

use crate::equational::Derivation;
use crate::semantics::BackendKind;
use crate::signature::{Tier, Type};
use crate::syntax::{Context, Rewrite, Term};

use super::lexer::Span;

/// A finite category, either from a builtin family or listed explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelDef {
    /// `set(a, b, ...)`: the discrete category on the named objects.
    Set(Vec<String>),
    /// `discrete(n)`.
    Discrete(usize),
    /// `chain(n)`: the total order `0 <= ... <= n-1`.
    Chain(usize),
    /// Objects, non-identity arrows, and composites of non-identity arrows.
    Explicit { objects: Vec<String>, arrows: Vec<(String, String, String)>, laws: Vec<(String, String, String)> },
}

/// One line `key => value` of a functor or transformation table. The key
/// names an object or arrow of the domain, as a tuple for products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: Vec<String>,
    /// Whether the key was written with parentheses.
    pub tuple: bool,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDef {
    pub backend: BackendKind,
    pub sorts: Vec<(String, String)>,
    pub consts: Vec<(String, Vec<Entry>)>,
    pub cells: Vec<(String, Vec<Entry>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Tier(Tier),
    Sort(String),
    Const { name: String, source: Vec<Type>, target: Type },
    Cell { name: String, from: String, to: String },
    Term { name: String, ctx: Context, ty: Option<Type>, body: Term },
    Rewrite { name: String, ctx: Context, ends: Option<(Term, Term)>, body: Rewrite },
    Eq { name: String, ctx: Context, lhs: Rewrite, rhs: Rewrite, proof: Derivation },
    Model { name: String, def: ModelDef },
    Hom { name: String, def: HomDef },
}

impl Item {
    pub fn name(&self) -> Option<&str> {
        match self {
            Item::Tier(_) => None,
            Item::Sort(n) => Some(n),
            Item::Const { name, .. }
            | Item::Cell { name, .. }
            | Item::Term { name, .. }
            | Item::Rewrite { name, .. }
            | Item::Eq { name, .. }
            | Item::Model { name, .. }
            | Item::Hom { name, .. } => Some(name),
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Item::Tier(_) => "tier",
            Item::Sort(_) => "sort",
            Item::Const { .. } => "const",
            Item::Cell { .. } => "cell",
            Item::Term { .. } => "term",
            Item::Rewrite { .. } => "rewrite",
            Item::Eq { .. } => "eq",
            Item::Model { .. } => "model",
            Item::Hom { .. } => "hom",
        }
    }
}

/// A parsed file: items in order, with the position of each.
#[derive(Debug, Clone, Default)]
pub struct SourceFile {
    pub items: Vec<Item>,
    pub spans: Vec<Span>,
}

impl SourceFile {
    pub fn new(items: Vec<Item>) -> SourceFile {
        let spans = vec![Span::default(); items.len()];
        SourceFile { items, spans }
    }

    pub fn find(&self, name: &str) -> Option<(&Item, Span)> {
        self.items.iter().zip(&self.spans).find(|(i, _)| i.name() == Some(name)).map(|(i, s)| (i, *s))
    }

    pub fn tier(&self) -> Option<Tier> {
        self.items.iter().find_map(|i| match i {
            Item::Tier(t) => Some(*t),
            _ => None,
        })
    }
}
