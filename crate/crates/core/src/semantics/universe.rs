use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use rustc_hash::FxHashMap as HashMap;

use crate::equations::{GraphBuilder, Label, RationalTerm};
use crate::syntax::{parse_term, ParseError};
use crate::term::{sym, Sym, Term, Var};

/// A finite set of ground rational terms, each with a display name.
/// Elements are pairwise distinct as trees.
#[derive(Clone, Debug, Default)]
pub struct Universe {
    terms: Vec<RationalTerm>,
    names: Vec<Option<String>>,
    index: HashMap<RationalTerm, usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum UniverseError {
    #[error("{origin}:{line}: {message}")]
    Syntax { origin: String, line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Universe {
    pub fn new() -> Self {
        Universe::default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add a ground term; returns the index of the (possibly pre-existing)
    /// element equal to it. A name is attached if the element has none yet.
    pub fn insert(&mut self, name: Option<&str>, t: &RationalTerm) -> usize {
        assert!(t.is_ground(), "universe elements must be ground");
        let key = t.canonical();
        if let Some(&i) = self.index.get(&key) {
            if self.names[i].is_none() {
                self.names[i] = name.map(str::to_string);
            }
            return i;
        }
        let i = self.terms.len();
        self.terms.push(key.clone());
        self.names.push(name.map(str::to_string));
        self.index.insert(key, i);
        i
    }

    pub fn term(&self, i: usize) -> &RationalTerm {
        &self.terms[i]
    }

    /// Index of the element equal to `t`, if any.
    pub fn lookup(&self, t: &RationalTerm) -> Option<usize> {
        self.index.get(&t.canonical()).copied()
    }

    pub fn lookup_term(&self, t: &Term) -> Option<usize> {
        self.lookup(&RationalTerm::from_term(t))
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.terms.len()
    }

    /// Display form of element `i`: its name, or the term itself with named
    /// subterms abbreviated.
    pub fn show(&self, i: usize) -> String {
        if let Some(n) = &self.names[i] {
            return n.clone();
        }
        self.show_graph(&self.terms[i])
    }

    /// Render any ground rational term, naming universe elements it contains.
    pub fn show_graph(&self, g: &RationalTerm) -> String {
        self.render(g, None)
    }

    fn render(&self, g: &RationalTerm, own_name: Option<&str>) -> String {
        let mut names: HashMap<usize, Var> = HashMap::default();
        if let Some(n) = own_name {
            names.insert(g.root(), Var::new(n));
        }
        for n in 0..g.len() {
            if n == g.root() {
                continue;
            }
            if let Some(i) = self.lookup(&g.rooted_at(n)) {
                if let Some(name) = &self.names[i] {
                    names.insert(n, Var::new(name));
                }
            }
        }
        // Cycles not broken by a name get placeholder names.
        for (k, t) in g.back_edge_targets(&[g.root()]).into_iter().enumerate() {
            names.entry(t).or_insert_with(|| Var::new(&format!("_S{}", k + 1)));
        }
        g.to_named_term(&names, g.root()).to_string()
    }

    /// Parse the `.univ` format: one element per line, either `name := term`
    /// or a bare ground term. Terms may mention defined names, cyclically.
    /// `%` starts a comment.
    pub fn parse(text: &str, origin: &str) -> Result<Universe, UniverseError> {
        let err = |line: usize, message: String| UniverseError::Syntax { origin: origin.to_string(), line, message };
        let mut defs: Vec<(usize, Option<String>, Term)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let body = match raw.find('%') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            let body = body.strip_suffix('.').unwrap_or(body).trim();
            if body.is_empty() {
                continue;
            }
            let (name, term_text) = match body.split_once(":=") {
                Some((n, t)) => {
                    let n = n.trim();
                    let plain = n.chars().next().is_some_and(|c| c.is_lowercase())
                        && n.chars().all(|c| c.is_alphanumeric() || c == '_');
                    if !plain {
                        return Err(err(line, format!("invalid element name {n:?}")));
                    }
                    (Some(n.to_string()), t.trim())
                }
                None => (None, body),
            };
            let t = parse_term(term_text).map_err(|e: ParseError| err(line, e.message))?;
            if !t.is_ground() {
                return Err(err(line, format!("{t} is not ground")));
            }
            defs.push((line, name, t));
        }

        let mut b = GraphBuilder::new();
        let mut slots: BTreeMap<Sym, usize> = BTreeMap::new();
        for (line, name, _) in &defs {
            if let Some(n) = name {
                if slots.insert(sym(n), b.add(Label::Int(0), Vec::new())).is_some() {
                    return Err(err(*line, format!("{n} defined twice")));
                }
            }
        }
        // Resolve `a := b` aliases to the defining term.
        let target = |t: &Term| match t {
            Term::Compound(f, args) if args.is_empty() && slots.contains_key(f) => Some(f.clone()),
            _ => None,
        };
        let mut body_of: BTreeMap<Sym, &Term> = BTreeMap::new();
        for (_, name, t) in &defs {
            if let Some(n) = name {
                body_of.insert(sym(n), t);
            }
        }
        let mut roots = Vec::new();
        for (line, name, t) in &defs {
            let mut t = t;
            let mut hops = 0;
            while let Some(next) = target(t) {
                hops += 1;
                if hops > defs.len() {
                    return Err(err(*line, "definition refers only to itself".into()));
                }
                t = body_of[&next];
            }
            let id = match name {
                Some(n) => slots[&sym(n)],
                None => b.add(Label::Int(0), Vec::new()),
            };
            let (label, kids) = build(&mut b, &slots, t);
            b.set(id, label, kids);
            roots.push((name.clone(), id));
        }
        let (graph, ids) = b.finish_many(&roots.iter().map(|r| r.1).collect::<Vec<_>>());
        let mut u = Universe::new();
        for ((name, _), id) in roots.iter().zip(ids) {
            u.insert(name.as_deref(), &graph.rooted_at(id));
        }
        Ok(u)
    }

    pub fn from_file(path: &Path) -> Result<Universe, UniverseError> {
        let text = std::fs::read_to_string(path)?;
        Universe::parse(&text, &path.display().to_string())
    }

    /// All terms of depth at most `depth` built from `constants` and
    /// `functors` (name, arity), plus the given named terms.
    pub fn generate(
        constants: &[Term],
        functors: &[(&str, usize)],
        depth: usize,
        named: &[(&str, RationalTerm)],
    ) -> Universe {
        let mut layers: Vec<Term> = constants.to_vec();
        for _ in 0..depth {
            let mut next = layers.clone();
            for &(f, n) in functors {
                for args in tuples(&layers, n) {
                    let t = Term::compound(f, args);
                    if !next.contains(&t) {
                        next.push(t);
                    }
                }
            }
            layers = next;
        }
        let mut u = Universe::new();
        for (name, t) in named {
            u.insert(Some(name), t);
        }
        for t in &layers {
            u.insert(None, &RationalTerm::from_term(t));
        }
        u
    }
}

fn build(b: &mut GraphBuilder, slots: &BTreeMap<Sym, usize>, t: &Term) -> (Label, Vec<usize>) {
    match t {
        Term::Int(n) => (Label::Int(*n), Vec::new()),
        Term::Var(_) => unreachable!("ground checked"),
        Term::Compound(f, args) => {
            let kids = args.iter().map(|a| child(b, slots, a)).collect();
            (Label::Functor(f.clone()), kids)
        }
    }
}

fn child(b: &mut GraphBuilder, slots: &BTreeMap<Sym, usize>, t: &Term) -> usize {
    if let Term::Compound(f, args) = t {
        if args.is_empty() {
            if let Some(&id) = slots.get(f) {
                return id;
            }
        }
    }
    let (label, kids) = build(b, slots, t);
    b.add(label, kids)
}

/// All `n`-tuples over `items`, in lexicographic order.
pub(crate) fn tuples<T: Clone>(items: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.indices() {
            match &self.names[i] {
                Some(n) => writeln!(f, "{n} := {}", self.render(&self.terms[i], Some(n)))?,
                None => writeln!(f, "{}", self.show(i))?,
            }
        }
        Ok(())
    }
}
