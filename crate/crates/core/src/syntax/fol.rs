use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{record_letter, ArityError};

/// Reserved signature letters and their fixed arities.
pub(crate) const RESERVED: [(&str, usize); 3] = [("R", 2), ("W", 1), ("D", 2)];

/// A classical first-order formula with equality, in primitive form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FolFormula {
    Eq(String, String),
    Rel { letter: String, args: Vec<String> },
    Falsum,
    Not(Box<FolFormula>),
    And(Box<FolFormula>, Box<FolFormula>),
    Forall(String, Box<FolFormula>),
}

impl FolFormula {
    pub fn eq(a: impl Into<String>, b: impl Into<String>) -> Self {
        FolFormula::Eq(a.into(), b.into())
    }

    pub fn neq(a: impl Into<String>, b: impl Into<String>) -> Self {
        Self::not(Self::eq(a, b))
    }

    pub fn rel<S: Into<String>>(
        letter: impl Into<String>,
        args: impl IntoIterator<Item = S>,
    ) -> Self {
        FolFormula::Rel {
            letter: letter.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }

    /// `R(x, y)`.
    pub fn r(x: &str, y: &str) -> Self {
        Self::rel("R", [x, y])
    }

    /// `W(x)`.
    pub fn w(x: &str) -> Self {
        Self::rel("W", [x])
    }

    /// `D(x, y)`.
    pub fn d(x: &str, y: &str) -> Self {
        Self::rel("D", [x, y])
    }

    pub fn bot() -> Self {
        FolFormula::Falsum
    }

    pub fn top() -> Self {
        Self::not(FolFormula::Falsum)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Self) -> Self {
        FolFormula::Not(Box::new(f))
    }

    pub fn and(a: Self, b: Self) -> Self {
        FolFormula::And(Box::new(a), Box::new(b))
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

    pub fn forall(var: impl Into<String>, f: Self) -> Self {
        FolFormula::Forall(var.into(), Box::new(f))
    }

    pub fn exists(var: impl Into<String>, f: Self) -> Self {
        Self::not(Self::forall(var, Self::not(f)))
    }

    /// Left-nested conjunction; empty is `⊤`.
    pub fn conj(items: impl IntoIterator<Item = Self>) -> Self {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Self::top(),
            Some(first) => iter.fold(first, Self::and),
        }
    }

    /// Left-nested disjunction; empty is `⊥`.
    pub fn disj(items: impl IntoIterator<Item = Self>) -> Self {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Self::bot(),
            Some(first) => iter.fold(first, Self::or),
        }
    }

    /// Maximal nesting depth of quantifiers.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            FolFormula::Eq(..) | FolFormula::Rel { .. } | FolFormula::Falsum => 0,
            FolFormula::Not(f) => f.quantifier_rank(),
            FolFormula::And(a, b) => a.quantifier_rank().max(b.quantifier_rank()),
            FolFormula::Forall(_, f) => f.quantifier_rank() + 1,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut note = |v: &String, bound: &Vec<&str>| {
            if !bound.contains(&v.as_str()) {
                out.insert(v.clone());
            }
        };
        match self {
            FolFormula::Eq(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            FolFormula::Rel { args, .. } => args.iter().for_each(|a| note(a, bound)),
            FolFormula::Falsum => {}
            FolFormula::Not(f) => f.collect_free(bound, out),
            FolFormula::And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FolFormula::Forall(v, f) => {
                bound.push(v);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            FolFormula::Eq(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            FolFormula::Rel { args, .. } => out.extend(args.iter().cloned()),
            FolFormula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Relation letters with arities; `R`, `W`, `D` must keep their
    /// reserved arities.
    pub fn letters(&self) -> Result<BTreeMap<String, usize>, ArityError> {
        let mut sig = BTreeMap::new();
        let mut err = None;
        self.walk(&mut |f| {
            if let (FolFormula::Rel { letter, args }, None) = (f, &err) {
                let res = match RESERVED.iter().find(|(name, _)| name == letter) {
                    Some(&(_, expected)) if expected != args.len() => Err(ArityError::Reserved {
                        letter: letter.clone(),
                        expected,
                        found: args.len(),
                    }),
                    _ => record_letter(&mut sig, letter, args.len()),
                };
                if let Err(e) = res {
                    err = Some(e);
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(sig),
        }
    }

    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a FolFormula)) {
        visit(self);
        match self {
            FolFormula::Eq(..) | FolFormula::Rel { .. } | FolFormula::Falsum => {}
            FolFormula::Not(f) | FolFormula::Forall(_, f) => f.walk(visit),
            FolFormula::And(a, b) => {
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

    /// Renders the formula as a TPTP `fof` annotated formula.
    ///
    /// Variables become upper-case `V_name`, letters become lower-case with
    /// primes spelled `_p`. Best effort, intended for handing the output to
    /// an external prover.
    pub fn to_tptp(&self, name: &str, role: &str) -> String {
        let mut body = String::new();
        tptp(self, &mut body);
        format!("fof({name}, {role}, {body}).")
    }
}

fn tptp_var(v: &str) -> String {
    let cleaned: String = v
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("V_{cleaned}")
}

fn tptp_letter(l: &str) -> String {
    let mut out = String::new();
    for c in l.chars() {
        match c {
            '\'' => out.push_str("_p"),
            c if c.is_ascii_alphanumeric() || c == '_' => out.push(c.to_ascii_lowercase()),
            _ => out.push('_'),
        }
    }
    if !out.starts_with(|c: char| c.is_ascii_lowercase()) {
        out.insert(0, 'l');
    }
    out
}

fn tptp(f: &FolFormula, out: &mut String) {
    match view(f) {
        View::Eq(a, b) => out.push_str(&format!("{} = {}", tptp_var(a), tptp_var(b))),
        View::Neq(a, b) => out.push_str(&format!("{} != {}", tptp_var(a), tptp_var(b))),
        View::Rel(l, args) => {
            out.push_str(&tptp_letter(l));
            if !args.is_empty() {
                let vs: Vec<_> = args.iter().map(|a| tptp_var(a)).collect();
                out.push_str(&format!("({})", vs.join(",")));
            }
        }
        View::Bot => out.push_str("$false"),
        View::Top => out.push_str("$true"),
        View::Not(g) => {
            out.push_str("~ (");
            tptp(g, out);
            out.push(')');
        }
        View::And(a, b) | View::Or(a, b) | View::Implies(a, b) => {
            let op = match view(f) {
                View::And(..) => "&",
                View::Or(..) => "|",
                _ => "=>",
            };
            out.push('(');
            tptp(a, out);
            out.push_str(&format!(" {op} "));
            tptp(b, out);
            out.push(')');
        }
        View::Forall(x, g) | View::Exists(x, g) => {
            let q = if matches!(view(f), View::Forall(..)) {
                '!'
            } else {
                '?'
            };
            out.push_str(&format!("({q}[{}] : ", tptp_var(x)));
            tptp(g, out);
            out.push(')');
        }
    }
}

enum View<'a> {
    Eq(&'a str, &'a str),
    Neq(&'a str, &'a str),
    Rel(&'a str, &'a [String]),
    Bot,
    Top,
    Not(&'a FolFormula),
    And(&'a FolFormula, &'a FolFormula),
    Or(&'a FolFormula, &'a FolFormula),
    Implies(&'a FolFormula, &'a FolFormula),
    Forall(&'a str, &'a FolFormula),
    Exists(&'a str, &'a FolFormula),
}

fn as_not(f: &FolFormula) -> Option<&FolFormula> {
    match f {
        FolFormula::Not(inner) => Some(inner),
        _ => None,
    }
}

fn view(f: &FolFormula) -> View<'_> {
    match f {
        FolFormula::Eq(a, b) => View::Eq(a, b),
        FolFormula::Rel { letter, args } => View::Rel(letter, args),
        FolFormula::Falsum => View::Bot,
        FolFormula::And(a, b) => View::And(a, b),
        FolFormula::Forall(v, g) => View::Forall(v, g),
        FolFormula::Not(inner) => match inner.as_ref() {
            FolFormula::Falsum => View::Top,
            FolFormula::Eq(a, b) => View::Neq(a, b),
            FolFormula::And(a, b) => match (as_not(a), as_not(b)) {
                (Some(na), Some(nb)) => View::Or(na, nb),
                (_, Some(nb)) => View::Implies(a, nb),
                _ => View::Not(inner),
            },
            FolFormula::Forall(v, body) => match as_not(body) {
                Some(nb) => View::Exists(v, nb),
                None => View::Not(inner),
            },
            _ => View::Not(inner),
        },
    }
}

fn level(v: &View<'_>) -> u8 {
    match v {
        View::Forall(..) | View::Exists(..) => 0,
        View::Implies(..) => 1,
        View::Or(..) => 2,
        View::And(..) => 3,
        View::Not(_) => 4,
        View::Eq(..) | View::Neq(..) | View::Rel(..) | View::Bot | View::Top => 5,
    }
}

fn write_at(out: &mut fmt::Formatter<'_>, f: &FolFormula, min: u8) -> fmt::Result {
    let v = view(f);
    let wrap = level(&v) < min;
    if wrap {
        out.write_str("(")?;
    }
    match v {
        View::Eq(a, b) => write!(out, "{a} = {b}")?,
        View::Neq(a, b) => write!(out, "{a} != {b}")?,
        View::Rel(letter, args) => {
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

impl fmt::Display for FolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}
