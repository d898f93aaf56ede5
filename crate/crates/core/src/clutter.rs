use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family;
use crate::set::{ElementSet, MAX_ELEMENTS};

/// A ground set of labelled elements together with an antichain of
/// hyperedges, kept in canonical order.
///
/// Minor operations may produce the empty clutter or a clutter whose only
/// edge is `∅`; those are representable and reported by
/// [`Clutter::degeneracy`], but the analysis operations reject them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clutter {
    ground: Vec<String>,
    edges: Vec<ElementSet>,
}

/// Build a validated clutter from element labels and label families.
pub fn make_clutter<G, F, E, S>(ground: G, families: F) -> Result<Clutter>
where
    G: IntoIterator<Item = S>,
    F: IntoIterator<Item = E>,
    E: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let ground: Vec<String> = ground.into_iter().map(|s| s.as_ref().to_owned()).collect();
    let index = label_index(&ground)?;
    let mut edges = Vec::new();
    for family in families {
        let mut set = ElementSet::EMPTY;
        for label in family {
            let label = label.as_ref();
            let i = *index.get(label).ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
            set = set.with(i);
        }
        edges.push(set);
    }
    Clutter::from_edges(ground, edges)
}

fn label_index(ground: &[String]) -> Result<HashMap<&str, usize>> {
    if ground.len() > MAX_ELEMENTS {
        return Err(Error::TooManyElements(ground.len()));
    }
    let mut index = HashMap::with_capacity(ground.len());
    for (i, label) in ground.iter().enumerate() {
        if label.is_empty() || label.starts_with('#') || label.chars().any(char::is_whitespace) {
            return Err(Error::Invalid(format!("bad element label {label:?}")));
        }
        if index.insert(label.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    Ok(index)
}

impl Clutter {
    /// Validate `edges` (no duplicates, antichain, inside the ground set)
    /// and store them canonically.
    pub fn from_edges(ground: Vec<String>, mut edges: Vec<ElementSet>) -> Result<Clutter> {
        label_index(&ground)?;
        let full = ElementSet::full(ground.len());
        edges.sort_unstable();
        let render = |s: ElementSet| render_set(&ground, s);
        for e in &edges {
            if !e.is_subset(full) {
                return Err(Error::Invalid(format!("edge {e:?} outside ground set")));
            }
        }
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(render(w[0])));
            }
        }
        for (i, &a) in edges.iter().enumerate() {
            for &b in &edges[i + 1..] {
                if a.is_subset(b) {
                    return Err(Error::NotAntichain {
                        subset: render(a),
                        superset: render(b),
                    });
                }
            }
        }
        Ok(Clutter { ground, edges })
    }

    /// Minimalize an arbitrary family over `ground` into a clutter.
    pub(crate) fn from_family(ground: Vec<String>, sets: impl IntoIterator<Item = ElementSet>) -> Clutter {
        Clutter {
            ground,
            edges: family::minimalize(sets),
        }
    }

    /// Same ground set, different edges (validated).
    pub fn with_edges(&self, edges: Vec<ElementSet>) -> Result<Clutter> {
        Clutter::from_edges(self.ground.clone(), edges)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.ground.len())
    }

    pub fn edges(&self) -> &[ElementSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, s: ElementSet) -> bool {
        self.edges.binary_search(&s).is_ok()
    }

    /// Every edge of `self` is an edge of `other` (same ground set assumed).
    pub fn is_subclutter_of(&self, other: &Clutter) -> bool {
        self.edges.iter().all(|&e| other.contains_edge(e))
    }

    pub fn same_ground(&self, other: &Clutter) -> bool {
        self.ground == other.ground
    }

    pub fn label(&self, i: usize) -> &str {
        &self.ground[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.ground.iter().position(|l| l == label)
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<ElementSet> {
        labels.into_iter().try_fold(ElementSet::EMPTY, |s, l| {
            let l = l.as_ref();
            self.index_of(l)
                .map(|i| s.with(i))
                .ok_or_else(|| Error::UnknownLabel(l.to_owned()))
        })
    }

    pub fn labels_of(&self, s: ElementSet) -> Vec<String> {
        s.iter().map(|i| self.ground[i].clone()).collect()
    }

    /// Compact rendering: `ac` when every label is one character,
    /// `{1 3 5}` style otherwise.
    pub fn render(&self, s: ElementSet) -> String {
        render_set(&self.ground, s)
    }

    /// `Some(reason)` for the empty clutter or a clutter containing `∅`.
    pub fn degeneracy(&self) -> Option<&'static str> {
        if self.edges.is_empty() {
            Some("no hyperedges")
        } else if self.edges[0].is_empty() {
            Some("contains the empty hyperedge")
        } else {
            None
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy().is_some()
    }

    pub(crate) fn require_nondegenerate(&self) -> Result<()> {
        match self.degeneracy() {
            Some(reason) => Err(Error::DegenerateClutter(reason)),
            None => Ok(()),
        }
    }

    /// Drop the elements outside `keep` and re-index the rest densely;
    /// edges are mapped through and minimalized.
    pub(crate) fn reground(&self, keep: ElementSet, edges: impl IntoIterator<Item = ElementSet>) -> Clutter {
        let mut map = vec![None; self.ground.len()];
        let mut ground = Vec::with_capacity(keep.len());
        for i in keep {
            map[i] = Some(ground.len());
            ground.push(self.ground[i].clone());
        }
        Clutter::from_family(ground, edges.into_iter().map(|e| e.remap(&map)))
    }

    /// Serialize in the `.clt` text format.
    pub fn to_clt(&self) -> String {
        let mut out = self.ground.join(" ");
        out.push('\n');
        for &e in &self.edges {
            out.push_str(&self.labels_of(e).join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the `.clt` text format: the first content line lists the
    /// ground set, each further line one hyperedge. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse_clt(text: &str) -> Result<Clutter> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, ground_line) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing ground-set line".into(),
        })?;
        let ground: Vec<String> = ground_line.split_whitespace().map(str::to_owned).collect();
        let index = label_index(&ground).map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        let mut edges = Vec::new();
        for (n, line) in lines {
            let mut set = ElementSet::EMPTY;
            for label in line.split_whitespace() {
                let i = index.get(label).ok_or_else(|| Error::Parse {
                    line: n,
                    message: format!("unknown element label `{label}`"),
                })?;
                set = set.with(*i);
            }
            edges.push(set);
        }
        Clutter::from_edges(ground, edges)
    }

    pub fn to_json(&self) -> ClutterJson {
        ClutterJson {
            ground: self.ground.clone(),
            edges: self.edges.iter().map(|&e| self.labels_of(e)).collect(),
        }
    }

    pub fn from_json(json: &ClutterJson) -> Result<Clutter> {
        make_clutter(&json.ground, &json.edges)
    }
}

/// JSON mirror of the `.clt` format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClutterJson {
    pub ground: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

pub(crate) fn render_set(ground: &[String], s: ElementSet) -> String {
    if ground.iter().all(|l| l.chars().count() == 1) {
        s.iter().map(|i| ground[i].as_str()).collect()
    } else {
        let parts: Vec<&str> = s.iter().map(|i| ground[i].as_str()).collect();
        format!("{{{}}}", parts.join(" "))
    }
}

impl fmt::Debug for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.iter().map(|&e| self.render(e)).collect();
        write!(f, "Clutter{{{}}} on [{}]", edges.join(","), self.ground.join(" "))
    }
}

impl fmt::Display for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.iter().map(|&e| self.render(e)).collect();
        write!(f, "{{{}}}", edges.join(","))
    }
}
