//! Small finite categories given by explicit (partial) composition tables.
//!
//! The base Γ of a biparcel is a gaunt category: its only isomorphisms are
//! identities. Posets and truncated path categories are gaunt; finite
//! groupoids (groups, chaotic preorders) are not, and only ever appear as the
//! target of a functor we pull back along.
//!
//! Composition is written in diagrammatic order: for `f: x -> y` and
//! `g: y -> z`, `compose(f, g)` is the arrow `x -> z`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category with a partial composition table.
#[derive(Clone, Debug)]
pub struct Category {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    object_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    embeds_in_free_groupoid: Option<bool>,
}

impl PartialEq for Category {
    fn eq(&self, other: &Self) -> bool {
        self.to_file() == other.to_file()
    }
}

impl Category {
    /// Builds a category from named parts, checking that every reference
    /// resolves and that endpoints line up. Category laws are checked
    /// separately by [`Category::check_laws`].
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<(String, String, String)>,
        identities: Vec<(String, String)>,
        compose: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate object {o}")));
            }
        }
        let obj = |name: &str| {
            object_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Malformed(format!("unknown object {name}")))
        };
        let mut arrow_list = Vec::with_capacity(arrows.len());
        let mut arrow_index = HashMap::new();
        for (id, s, t) in arrows {
            let (src, tgt) = (obj(&s)?, obj(&t)?);
            if arrow_index.insert(id.clone(), arrow_list.len()).is_some() {
                return Err(Error::Malformed(format!("duplicate arrow {id}")));
            }
            arrow_list.push(Arrow { id, src, tgt });
        }
        let arr = |name: &str| {
            arrow_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Malformed(format!("unknown arrow {name}")))
        };
        let mut ids = vec![usize::MAX; objects.len()];
        for (o, a) in identities {
            let (oi, ai) = (obj(&o)?, arr(&a)?);
            let arrow = &arrow_list[ai];
            if arrow.src != oi || arrow.tgt != oi {
                return Err(Error::Malformed(format!("identity {a} is not an endo-arrow of {o}")));
            }
            if ids[oi] != usize::MAX {
                return Err(Error::Malformed(format!("object {o} has two identities")));
            }
            ids[oi] = ai;
        }
        if let Some(i) = ids.iter().position(|&a| a == usize::MAX) {
            return Err(Error::Malformed(format!("object {} has no identity", objects[i])));
        }
        let mut table = HashMap::new();
        for (f, g, fg) in compose {
            let (fi, gi, hi) = (arr(&f)?, arr(&g)?, arr(&fg)?);
            let (af, ag, ah) = (&arrow_list[fi], &arrow_list[gi], &arrow_list[hi]);
            if af.tgt != ag.src || ah.src != af.src || ah.tgt != ag.tgt {
                return Err(Error::Malformed(format!(
                    "composite {f} ; {g} = {fg} has mismatched endpoints"
                )));
            }
            if table.insert((fi, gi), hi).is_some() {
                return Err(Error::Malformed(format!("composite {f} ; {g} listed twice")));
            }
        }
        Ok(Self {
            objects,
            arrows: arrow_list,
            identities: ids,
            compose: table,
            object_index,
            arrow_index,
            embeds_in_free_groupoid: None,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, arrow: usize) -> bool {
        let a = &self.arrows[arrow];
        a.src == a.tgt && self.identities[a.src] == arrow
    }

    pub fn src(&self, arrow: usize) -> usize {
        self.arrows[arrow].src
    }

    pub fn tgt(&self, arrow: usize) -> usize {
        self.arrows[arrow].tgt
    }

    /// Diagrammatic composite `f ; g`, if the table defines it.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    pub fn compose_checked(&self, f: usize, g: usize) -> Result<usize> {
        self.compose(f, g).ok_or_else(|| Error::UndefinedComposite {
            f: self.arrows[f].id.clone(),
            g: self.arrows[g].id.clone(),
        })
    }

    pub fn composites(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.compose.iter().map(|(k, v)| (*k, *v))
    }

    /// Arrows `x -> y`.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].src == x && self.arrows[a].tgt == y)
            .collect()
    }

    /// An arrow `g` with `f ; g` and `g ; f` both identities.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let a = &self.arrows[f];
        self.hom(a.tgt, a.src).into_iter().find(|&g| {
            self.compose(f, g) == Some(self.identities[a.src])
                && self.compose(g, f) == Some(self.identities[a.tgt])
        })
    }

    /// User-asserted flag: Γ embeds in the groupoid it freely generates.
    /// Recorded, never decided.
    pub fn embeds_in_free_groupoid(&self) -> Option<bool> {
        self.embeds_in_free_groupoid
    }

    pub fn set_embeds_in_free_groupoid(&mut self, flag: Option<bool>) {
        self.embeds_in_free_groupoid = flag;
    }

    /// Identity laws and associativity wherever the table defines both sides.
    pub fn check_laws(&self) -> Report {
        let mut report = Report::new();
        report.declare("identity-laws");
        report.declare("associativity");
        for (f, a) in self.arrows.iter().enumerate() {
            let (l, r) = (self.identities[a.src], self.identities[a.tgt]);
            if self.compose(l, f) != Some(f) {
                report.fail("identity-laws", format!("id ; {} != {}", a.id, a.id));
            }
            if self.compose(f, r) != Some(f) {
                report.fail("identity-laws", format!("{} ; id != {}", a.id, a.id));
            }
        }
        let mut keys: Vec<_> = self.compose.keys().copied().collect();
        keys.sort_unstable();
        for &(f, g) in &keys {
            let fg = self.compose[&(f, g)];
            for h in 0..self.arrows.len() {
                if self.arrows[h].src != self.arrows[g].tgt {
                    continue;
                }
                let left = self.compose(fg, h);
                let right = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        report.fail(
                            "associativity",
                            format!(
                                "({} ; {}) ; {}",
                                self.arrows[f].id, self.arrows[g].id, self.arrows[h].id
                            ),
                        );
                    }
                }
            }
        }
        report
    }

    /// Gauntness surrogate: no non-identity arrow has a two-sided inverse.
    /// Returns the first offending pair.
    pub fn check_gaunt(&self) -> std::result::Result<(), (String, String)> {
        for f in 0..self.arrows.len() {
            if self.is_identity(f) {
                continue;
            }
            if let Some(g) = self.inverse(f) {
                return Err((self.arrows[f].id.clone(), self.arrows[g].id.clone()));
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> CategoryFile {
        let mut arrows: Vec<ArrowEntry> = self
            .arrows
            .iter()
            .map(|a| ArrowEntry {
                id: a.id.clone(),
                src: self.objects[a.src].clone(),
                tgt: self.objects[a.tgt].clone(),
            })
            .collect();
        arrows.sort_by(|a, b| a.id.cmp(&b.id));
        let identities = self
            .identities
            .iter()
            .enumerate()
            .map(|(o, &a)| (self.objects[o].clone(), self.arrows[a].id.clone()))
            .collect();
        let mut compose: Vec<ComposeEntry> = self
            .compose
            .iter()
            .map(|(&(f, g), &h)| ComposeEntry {
                f: self.arrows[f].id.clone(),
                g: self.arrows[g].id.clone(),
                fg: self.arrows[h].id.clone(),
            })
            .collect();
        compose.sort_by(|a, b| (&a.f, &a.g).cmp(&(&b.f, &b.g)));
        CategoryFile {
            objects: self.objects.clone(),
            arrows,
            identities,
            compose,
            embeds_in_free_groupoid: self.embeds_in_free_groupoid,
        }
    }

    pub fn from_file(file: &CategoryFile) -> Result<Self> {
        let mut c = Self::new(
            file.objects.clone(),
            file.arrows.iter().map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone())).collect(),
            file.identities.iter().map(|(o, a)| (o.clone(), a.clone())).collect(),
            file.compose.iter().map(|c| (c.f.clone(), c.g.clone(), c.fg.clone())).collect(),
        )?;
        c.embeds_in_free_groupoid = file.embeds_in_free_groupoid;
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeEntry {
    pub f: String,
    pub g: String,
    pub fg: String,
}

/// JSON form of a category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<ComposeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embeds_in_free_groupoid: Option<bool>,
}

fn order_arrow(a: &str, b: &str) -> String {
    format!("{a}->{b}")
}

/// The total order on the given labels, one arrow `a->b` for every `a <= b`.
pub fn poset_on(labels: &[String]) -> Result<Category> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument("a chain needs at least one object".into()));
    }
    let n = labels.len();
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i..n {
            arrows.push((order_arrow(&labels[i], &labels[j]), labels[i].clone(), labels[j].clone()));
        }
    }
    let identities = labels.iter().map(|l| (l.clone(), order_arrow(l, l))).collect();
    let mut compose = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                compose.push((
                    order_arrow(&labels[i], &labels[j]),
                    order_arrow(&labels[j], &labels[k]),
                    order_arrow(&labels[i], &labels[k]),
                ));
            }
        }
    }
    Category::new(labels.to_vec(), arrows, identities, compose)
}

/// The chain `1 < 2 < ... < n`.
pub fn poset_chain(n: usize) -> Result<Category> {
    if n == 0 {
        return Err(Error::InvalidArgument("poset_chain needs n >= 1".into()));
    }
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    poset_on(&labels)
}

/// Path category of a digraph truncated at words of length `max_word_length`.
///
/// Identities are named `id_<vertex>`. Paths are named by concatenating edge
/// names (joined with `.` unless every edge name is a single character).
/// Composites whose length would exceed the bound are left undefined.
pub fn path_category(
    vertices: &[&str],
    edges: &[(&str, &str, &str)],
    max_word_length: usize,
) -> Result<Category> {
    if max_word_length == 0 {
        return Err(Error::InvalidArgument("max_word_length must be >= 1".into()));
    }
    if vertices.is_empty() {
        return Err(Error::InvalidArgument("path category needs a vertex".into()));
    }
    let vidx: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    for (e, s, t) in edges {
        if !vidx.contains_key(s) || !vidx.contains_key(t) {
            return Err(Error::InvalidArgument(format!("edge {e} has an unknown endpoint")));
        }
    }
    let sep = if edges.iter().all(|(e, _, _)| e.chars().count() == 1) { "" } else { "." };

    // Words as edge-index sequences, grouped by length.
    struct Word {
        edges: Vec<usize>,
        src: usize,
        tgt: usize,
    }
    let mut words: Vec<Word> = vertices
        .iter()
        .enumerate()
        .map(|(i, _)| Word { edges: vec![], src: i, tgt: i })
        .collect();
    let mut frontier: Vec<usize> = (0..words.len()).collect();
    for _ in 0..max_word_length {
        let mut next = Vec::new();
        for &w in &frontier {
            for (ei, (_, s, t)) in edges.iter().enumerate() {
                if vidx[s] == words[w].tgt {
                    let mut e = words[w].edges.clone();
                    e.push(ei);
                    let src = words[w].src;
                    words.push(Word { edges: e, src, tgt: vidx[t] });
                    next.push(words.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let name = |w: &Word| -> String {
        if w.edges.is_empty() {
            format!("id_{}", vertices[w.src])
        } else {
            w.edges.iter().map(|&e| edges[e].0).collect::<Vec<_>>().join(sep)
        }
    };
    let names: Vec<String> = words.iter().map(name).collect();
    if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
        return Err(Error::InvalidArgument("edge names produce ambiguous path names".into()));
    }
    let by_edges: HashMap<&[usize], usize> =
        words.iter().enumerate().map(|(i, w)| (w.edges.as_slice(), i)).collect();
    let mut compose = Vec::new();
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            if a.tgt != b.src || a.edges.len() + b.edges.len() > max_word_length {
                continue;
            }
            let joined: Vec<usize> = a.edges.iter().chain(&b.edges).copied().collect();
            let k = if a.edges.is_empty() {
                j
            } else if b.edges.is_empty() {
                i
            } else {
                by_edges[joined.as_slice()]
            };
            compose.push((names[i].clone(), names[j].clone(), names[k].clone()));
        }
    }
    Category::new(
        vertices.iter().map(|v| v.to_string()).collect(),
        words
            .iter()
            .zip(&names)
            .map(|(w, n)| (n.clone(), vertices[w.src].to_string(), vertices[w.tgt].to_string()))
            .collect(),
        vertices.iter().map(|v| (v.to_string(), format!("id_{v}"))).collect(),
        compose,
    )
}

/// The chaotic (codiscrete) preorder on `labels`: exactly one arrow between
/// any ordered pair. A groupoid, hence not gaunt once there are two objects.
pub fn chaotic_preorder(labels: &[String]) -> Result<Category> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument("chaotic preorder on an empty set".into()));
    }
    let mut arrows = Vec::new();
    let mut compose = Vec::new();
    for i in labels {
        for j in labels {
            arrows.push((order_arrow(i, j), i.clone(), j.clone()));
            for k in labels {
                compose.push((order_arrow(i, j), order_arrow(j, k), order_arrow(i, k)));
            }
        }
    }
    let identities = labels.iter().map(|l| (l.clone(), order_arrow(l, l))).collect();
    Category::new(labels.to_vec(), arrows, identities, compose)
}

/// A finite category in which every arrow is invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroupoid {
    category: Category,
    inverses: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn from_category(category: Category) -> Result<Self> {
        let laws = category.check_laws();
        if !laws.passed() {
            let c = laws.failed().next().unwrap();
            return Err(Error::InvalidArgument(format!("{}: {:?}", c.name, c.witnesses)));
        }
        let mut inverses = Vec::with_capacity(category.arrows().len());
        for f in 0..category.arrows().len() {
            match category.inverse(f) {
                Some(g) => inverses.push(g),
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "arrow {} is not invertible",
                        category.arrows()[f].id
                    )))
                }
            }
        }
        Ok(Self { category, inverses })
    }

    pub fn category(&self) -> &Category {
        &self.category
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverses[f]
    }

    pub fn is_group(&self) -> bool {
        self.category.objects().len() == 1
    }

    /// Number of arrows; the group order when there is one object.
    pub fn order(&self) -> usize {
        self.category.arrows().len()
    }

    /// Group product by arrow index (total for one-object groupoids).
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.category.compose(g, h).expect("groupoid composition is total on composable pairs")
    }

    pub fn unit(&self) -> usize {
        self.category.identity(0)
    }

    /// The codiscrete groupoid on `n` objects named `1..n`.
    pub fn codiscrete(n: usize) -> Result<Self> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        Self::from_category(chaotic_preorder(&labels)?)
    }

    /// Multiplication table with `table[g][h] = g*h`, elements by index.
    pub fn table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|g| (0..n).map(|h| self.mul(g, h)).collect()).collect()
    }
}

/// A finite group presented by its multiplication table, as a one-object
/// groupoid whose arrows are named `0..n-1` after the table rows.
pub fn group_as_groupoid(table: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup { axiom: "non-empty", witness: "empty table".into() });
    }
    for (g, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup { axiom: "closure", witness: format!("row {g} has wrong length") });
        }
        if let Some(h) = row.iter().position(|&x| x >= n) {
            return Err(Error::NotAGroup { axiom: "closure", witness: format!("({g},{h})") });
        }
    }
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                if table[table[g][h]][k] != table[g][table[h][k]] {
                    return Err(Error::NotAGroup {
                        axiom: "associativity",
                        witness: format!("({g},{h},{k})"),
                    });
                }
            }
        }
    }
    let unit = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or(Error::NotAGroup { axiom: "identity", witness: "no two-sided unit".into() })?;
    for g in 0..n {
        if !(0..n).any(|h| table[g][h] == unit && table[h][g] == unit) {
            return Err(Error::NotAGroup { axiom: "inverses", witness: format!("{g}") });
        }
    }
    let names: Vec<String> = (0..n).map(|g| g.to_string()).collect();
    let star = "*".to_string();
    let category = Category::new(
        vec![star.clone()],
        names.iter().map(|g| (g.clone(), star.clone(), star.clone())).collect(),
        vec![(star, names[unit].clone())],
        (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .map(|(g, h)| (names[g].clone(), names[h].clone(), names[table[g][h]].clone()))
            .collect(),
    )?;
    FiniteGroupoid::from_category(category)
}

/// Multiplication table of Z/n.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect()
}

/// A functor between finite categories, stored as index maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &Category) -> Self {
        Self { objects: (0..c.objects().len()).collect(), arrows: (0..c.arrows().len()).collect() }
    }

    /// The unique functor to a category with one object and one arrow
    /// per identity; more generally, everything goes to the first object's identity.
    pub fn to_point(source: &Category, target: &Category) -> Self {
        Self {
            objects: vec![0; source.objects().len()],
            arrows: vec![target.identity(0); source.arrows().len()],
        }
    }

    pub fn from_names(
        source: &Category,
        target: &Category,
        objects: &BTreeMap<String, String>,
        arrows: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let lookup_obj = |name: &String| {
            let t = objects
                .get(name)
                .ok_or_else(|| Error::InvalidFunctor(format!("object {name} is not mapped")))?;
            target.object(t).ok_or_else(|| Error::InvalidFunctor(format!("unknown target object {t}")))
        };
        let lookup_arr = |name: &String| {
            let t = arrows
                .get(name)
                .ok_or_else(|| Error::InvalidFunctor(format!("arrow {name} is not mapped")))?;
            target.arrow(t).ok_or_else(|| Error::InvalidFunctor(format!("unknown target arrow {t}")))
        };
        let f = Self {
            objects: source.objects().iter().map(lookup_obj).collect::<Result<_>>()?,
            arrows: source.arrows().iter().map(|a| lookup_arr(&a.id)).collect::<Result<_>>()?,
        };
        f.validate(source, target)?;
        Ok(f)
    }

    /// Checks endpoints, identities and every defined composite.
    pub fn validate(&self, source: &Category, target: &Category) -> Result<()> {
        if self.objects.len() != source.objects().len() || self.arrows.len() != source.arrows().len() {
            return Err(Error::InvalidFunctor("map sizes do not match the source".into()));
        }
        if self.objects.iter().any(|&o| o >= target.objects().len())
            || self.arrows.iter().any(|&a| a >= target.arrows().len())
        {
            return Err(Error::InvalidFunctor("map points outside the target".into()));
        }
        for (i, a) in source.arrows().iter().enumerate() {
            let fa = self.arrows[i];
            if target.src(fa) != self.objects[a.src] || target.tgt(fa) != self.objects[a.tgt] {
                return Err(Error::InvalidFunctor(format!("arrow {} lands with wrong endpoints", a.id)));
            }
        }
        for o in 0..source.objects().len() {
            if self.arrows[source.identity(o)] != target.identity(self.objects[o]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of {} is not preserved",
                    source.objects()[o]
                )));
            }
        }
        let mut composites: Vec<_> = source.composites().collect();
        composites.sort_unstable();
        for ((f, g), fg) in composites {
            if target.compose(self.arrows[f], self.arrows[g]) != Some(self.arrows[fg]) {
                return Err(Error::InvalidFunctor(format!(
                    "composite {} ; {} is not preserved",
                    source.arrows()[f].id,
                    source.arrows()[g].id
                )));
            }
        }
        Ok(())
    }

    pub fn to_file(&self, source: &Category, target: &Category) -> FunctorFile {
        FunctorFile {
            objects: source
                .objects()
                .iter()
                .zip(&self.objects)
                .map(|(s, &t)| (s.clone(), target.objects()[t].clone()))
                .collect(),
            arrows: source
                .arrows()
                .iter()
                .zip(&self.arrows)
                .map(|(s, &t)| (s.id.clone(), target.arrows()[t].id.clone()))
                .collect(),
        }
    }
}

/// JSON form of a functor, relative to known source and target categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}
