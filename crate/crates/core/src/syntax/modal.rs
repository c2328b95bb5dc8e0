use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{record_letter, ArityError};

/// A predicate modal formula in primitive form.
///
/// Only atoms, `⊥`, `¬`, `∧`, `□` and `∀` are stored. Use the associated
/// builder functions ([`ModalFormula::or`], [`ModalFormula::poss`], ...) for
/// the derived connectives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalFormula {
    /// `P(y1, ..., yn)`; a 0-ary letter has no arguments.
    Atom {
        letter: String,
        args: Vec<String>,
    },
    Falsum,
    Not(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Nec(Box<ModalFormula>),
    Forall(String, Box<ModalFormula>),
}

impl ModalFormula {
    pub fn atom<S: Into<String>>(
        letter: impl Into<String>,
        args: impl IntoIterator<Item = S>,
    ) -> Self {
        ModalFormula::Atom {
            letter: letter.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }

    /// A 0-ary letter (propositional variable).
    pub fn prop(letter: impl Into<String>) -> Self {
        ModalFormula::Atom {
            letter: letter.into(),
            args: Vec::new(),
        }
    }

    pub fn bot() -> Self {
        ModalFormula::Falsum
    }

    pub fn top() -> Self {
        Self::not(ModalFormula::Falsum)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Self) -> Self {
        ModalFormula::Not(Box::new(f))
    }

    pub fn and(a: Self, b: Self) -> Self {
        ModalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        Self::not(Self::and(Self::not(a), Self::not(b)))
    }

    pub fn implies(a: Self, b: Self) -> Self {
        Self::not(Self::and(a, Self::not(b)))
    }

    pub fn iff(a: Self, b: Self) -> Self {
        Self::and(Self::implies(a.clone(), b.clone()), Self::implies(b, a))
    }

    pub fn nec(f: Self) -> Self {
        ModalFormula::Nec(Box::new(f))
    }

    pub fn poss(f: Self) -> Self {
        Self::not(Self::nec(Self::not(f)))
    }

    pub fn forall(var: impl Into<String>, f: Self) -> Self {
        ModalFormula::Forall(var.into(), Box::new(f))
    }

    pub fn exists(var: impl Into<String>, f: Self) -> Self {
        let var = var.into();
        Self::not(Self::forall(var, Self::not(f)))
    }

    /// `□ⁿφ`, with `□⁰φ = φ`.
    pub fn box_n(n: usize, f: Self) -> Self {
        (0..n).fold(f, |acc, _| Self::nec(acc))
    }

    /// `◇ⁿφ`, with `◇⁰φ = φ`.
    pub fn diamond_n(n: usize, f: Self) -> Self {
        (0..n).fold(f, |acc, _| Self::poss(acc))
    }

    /// Left-nested conjunction; the empty conjunction is `⊤`.
    pub fn conj(items: impl IntoIterator<Item = Self>) -> Self {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Self::top(),
            Some(first) => iter.fold(first, Self::and),
        }
    }

    /// Left-nested disjunction; the empty disjunction is `⊥`.
    pub fn disj(items: impl IntoIterator<Item = Self>) -> Self {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Self::bot(),
            Some(first) => iter.fold(first, Self::or),
        }
    }

    /// Maximal nesting of `□`.
    pub fn modal_depth(&self) -> usize {
        match self {
            ModalFormula::Atom { .. } | ModalFormula::Falsum => 0,
            ModalFormula::Not(f) | ModalFormula::Forall(_, f) => f.modal_depth(),
            ModalFormula::And(a, b) => a.modal_depth().max(b.modal_depth()),
            ModalFormula::Nec(f) => f.modal_depth() + 1,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            ModalFormula::Atom { args, .. } => {
                for a in args {
                    if !bound.contains(&a.as_str()) {
                        out.insert(a.clone());
                    }
                }
            }
            ModalFormula::Falsum => {}
            ModalFormula::Not(f) | ModalFormula::Nec(f) => f.collect_free(bound, out),
            ModalFormula::And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            ModalFormula::Forall(v, f) => {
                bound.push(v);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every individual variable occurring in the formula, bound or free.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            ModalFormula::Atom { args, .. } => out.extend(args.iter().cloned()),
            ModalFormula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Predicate letters with their arities.
    pub fn letters(&self) -> Result<BTreeMap<String, usize>, ArityError> {
        let mut sig = BTreeMap::new();
        let mut err = None;
        self.walk(&mut |f| {
            if let ModalFormula::Atom { letter, args } = f {
                if err.is_none() {
                    if let Err(e) = record_letter(&mut sig, letter, args.len()) {
                        err = Some(e);
                    }
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(sig),
        }
    }

    /// True when every predicate letter is 0-ary.
    pub fn is_propositional(&self) -> bool {
        let mut ok = true;
        self.walk(&mut |f| {
            if let ModalFormula::Atom { args, .. } = f {
                ok &= args.is_empty();
            }
        });
        ok
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a ModalFormula)) {
        visit(self);
        match self {
            ModalFormula::Atom { .. } | ModalFormula::Falsum => {}
            ModalFormula::Not(f) | ModalFormula::Nec(f) | ModalFormula::Forall(_, f) => {
                f.walk(visit)
            }
            ModalFormula::And(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }
}

/// Sugared reading of a node, used by the printer.
enum View<'a> {
    Atom(&'a str, &'a [String]),
    Bot,
    Top,
    Not(&'a ModalFormula),
    And(&'a ModalFormula, &'a ModalFormula),
    Or(&'a ModalFormula, &'a ModalFormula),
    Implies(&'a ModalFormula, &'a ModalFormula),
    Nec(usize, &'a ModalFormula),
    Poss(usize, &'a ModalFormula),
    Forall(&'a str, &'a ModalFormula),
    Exists(&'a str, &'a ModalFormula),
}

fn as_not(f: &ModalFormula) -> Option<&ModalFormula> {
    match f {
        ModalFormula::Not(inner) => Some(inner),
        _ => None,
    }
}

/// Matches `¬□¬φ`.
fn as_poss(f: &ModalFormula) -> Option<&ModalFormula> {
    match as_not(f)? {
        ModalFormula::Nec(inner) => as_not(inner),
        _ => None,
    }
}

fn view(f: &ModalFormula) -> View<'_> {
    match f {
        ModalFormula::Atom { letter, args } => View::Atom(letter, args),
        ModalFormula::Falsum => View::Bot,
        ModalFormula::And(a, b) => View::And(a, b),
        ModalFormula::Nec(_) => {
            let mut n = 0;
            let mut cur = f;
            while let ModalFormula::Nec(inner) = cur {
                n += 1;
                cur = inner;
            }
            View::Nec(n, cur)
        }
        ModalFormula::Forall(v, body) => View::Forall(v, body),
        ModalFormula::Not(inner) => {
            if as_poss(f).is_some() {
                let mut n = 0;
                let mut cur = f;
                while let Some(inner) = as_poss(cur) {
                    n += 1;
                    cur = inner;
                }
                return View::Poss(n, cur);
            }
            match inner.as_ref() {
                ModalFormula::Falsum => View::Top,
                ModalFormula::And(a, b) => match (as_not(a), as_not(b)) {
                    (Some(na), Some(nb)) => View::Or(na, nb),
                    (_, Some(nb)) => View::Implies(a, nb),
                    _ => View::Not(inner),
                },
                ModalFormula::Forall(v, body) => match as_not(body) {
                    Some(nb) => View::Exists(v, nb),
                    None => View::Not(inner),
                },
                _ => View::Not(inner),
            }
        }
    }
}

// Precedence levels: quantifier 0, implication 1, disjunction 2,
// conjunction 3, prefix operators 4, atoms 5.
fn level(v: &View<'_>) -> u8 {
    match v {
        View::Forall(..) | View::Exists(..) => 0,
        View::Implies(..) => 1,
        View::Or(..) => 2,
        View::And(..) => 3,
        View::Not(_) | View::Nec(..) | View::Poss(..) => 4,
        View::Atom(..) | View::Bot | View::Top => 5,
    }
}

fn write_prefix(out: &mut fmt::Formatter<'_>, op: &str, n: usize) -> fmt::Result {
    if n == 1 {
        write!(out, "{op} ")
    } else {
        write!(out, "{op}^{n} ")
    }
}

fn write_at(out: &mut fmt::Formatter<'_>, f: &ModalFormula, min: u8) -> fmt::Result {
    let v = view(f);
    let wrap = level(&v) < min;
    if wrap {
        out.write_str("(")?;
    }
    match v {
        View::Atom(letter, args) => {
            out.write_str(letter)?;
            if !args.is_empty() {
                write!(out, "({})", args.join(","))?;
            }
        }
        View::Bot => out.write_str("false")?,
        View::Top => out.write_str("true")?,
        View::Not(g) => {
            out.write_str("~")?;
            write_at(out, g, 4)?;
        }
        View::Nec(n, g) => {
            write_prefix(out, "[]", n)?;
            write_at(out, g, 4)?;
        }
        View::Poss(n, g) => {
            write_prefix(out, "<>", n)?;
            write_at(out, g, 4)?;
        }
        View::And(a, b) => {
            write_at(out, a, 3)?;
            out.write_str(" & ")?;
            write_at(out, b, 4)?;
        }
        View::Or(a, b) => {
            write_at(out, a, 2)?;
            out.write_str(" | ")?;
            write_at(out, b, 3)?;
        }
        View::Implies(a, b) => {
            write_at(out, a, 2)?;
            out.write_str(" -> ")?;
            write_at(out, b, 1)?;
        }
        View::Forall(x, g) => {
            write!(out, "forall {x}. ")?;
            write_at(out, g, 0)?;
        }
        View::Exists(x, g) => {
            write!(out, "exists {x}. ")?;
            write_at(out, g, 0)?;
        }
    }
    if wrap {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}
