use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Largest graph accepted by [`is_brick`].
pub const BRICK_MAX_VERTICES: usize = 12;

/// A simple undirected graph. Edges keep the orientation they were given
/// in, which only affects their labels `u-v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(edges: impl IntoIterator<Item = (S, S)>) -> Result<Graph> {
        let mut g = Graph {
            vertices: Vec::new(),
            edges: Vec::new(),
        };
        for (u, v) in edges {
            g.add_edge(u.as_ref(), v.as_ref())?;
        }
        Ok(g)
    }

    fn vertex(&mut self, label: &str) -> usize {
        match self.vertices.iter().position(|v| v == label) {
            Some(i) => i,
            None => {
                self.vertices.push(label.to_string());
                self.vertices.len() - 1
            }
        }
    }

    fn add_edge(&mut self, u: &str, v: &str) -> Result<()> {
        if u == v {
            return Err(Error::DegenerateGraph(format!("loop at {u}")));
        }
        if u.contains('-') || v.contains('-') {
            return Err(Error::DegenerateGraph(format!(
                "vertex labels may not contain '-': {u} {v}"
            )));
        }
        let (a, b) = (self.vertex(u), self.vertex(v));
        if self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)) {
            return Err(Error::DegenerateGraph(format!("repeated edge {u} {v}")));
        }
        self.edges.push((a, b));
        Ok(())
    }

    /// One edge `u v` per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph::new(std::iter::empty::<(&str, &str)>())?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = words[..] else {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected two vertex labels, found {}", words.len()),
                });
            };
            g.add_edge(u, v)?;
        }
        if g.edges.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(g)
    }

    /// `K_n` on vertices `0..n`.
    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i.to_string(), j.to_string())));
        Graph::new(edges).expect("simple graph")
    }

    /// `C_n` on vertices `0..n`.
    pub fn cycle(n: usize) -> Graph {
        Graph::new((0..n).map(|i| (i.to_string(), ((i + 1) % n).to_string()))).expect("simple graph")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_label(&self, i: usize) -> String {
        let (u, v) = self.edges[i];
        format!("{}-{}", self.vertices[u], self.vertices[v])
    }

    pub fn without_edge(&self, i: usize) -> Graph {
        let mut g = self.clone();
        g.edges.remove(i);
        g
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    /// Whether the vertices outside `removed` induce a connected graph.
    fn connected_without(&self, removed: &[usize]) -> bool {
        let n = self.vertices.len();
        let alive: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
        let Some(&start) = alive.first() else {
            return true;
        };
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] && !removed.contains(&w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        alive.iter().all(|&v| seen[v])
    }

    fn has_perfect_matching_without(&self, removed: &[usize]) -> bool {
        let n = self.vertices.len();
        let mut covered = vec![false; n];
        for &r in removed {
            covered[r] = true;
        }
        self.match_rest(&mut covered)
    }

    fn match_rest(&self, covered: &mut [bool]) -> bool {
        let Some(v) = covered.iter().position(|c| !c) else {
            return true;
        };
        covered[v] = true;
        for w in self.neighbours(v) {
            if !covered[w] {
                covered[w] = true;
                if self.match_rest(covered) {
                    covered[v] = false;
                    covered[w] = false;
                    return true;
                }
                covered[w] = false;
            }
        }
        covered[v] = false;
        false
    }
}

/// Ground set = edges of `g`, one hyperedge per vertex holding its incident
/// edges, minimalized.
pub fn vertex_cut_clutter(g: &Graph) -> Result<Clutter> {
    let ground: Vec<String> = (0..g.edges.len()).map(|i| g.edge_label(i)).collect();
    let mut stars = Vec::new();
    for v in 0..g.vertices.len() {
        let star: ElementSet = (0..g.edges.len())
            .filter(|&i| g.edges[i].0 == v || g.edges[i].1 == v)
            .collect();
        if star.is_empty() {
            return Err(Error::DegenerateGraph(format!("isolated vertex {}", g.vertices[v])));
        }
        stars.push(star);
    }
    if ground.len() > crate::set::MAX_ELEMENTS {
        return Err(Error::TooManyElements(ground.len()));
    }
    let c = Clutter::from_edges(ground.clone(), Vec::new())?;
    Ok(Clutter::from_family(c.ground().to_vec(), stars))
}

/// 3-connected, and `G - {u, v}` has a perfect matching for every pair.
pub fn is_brick(g: &Graph) -> Result<bool> {
    let n = g.vertices.len();
    if n > BRICK_MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "brick check vertices",
            limit: BRICK_MAX_VERTICES,
        });
    }
    if n < 4 || n % 2 == 1 || !g.connected_without(&[]) {
        return Ok(false);
    }
    for u in 0..n {
        if !g.connected_without(&[u]) {
            return Ok(false);
        }
        for v in u + 1..n {
            if !g.connected_without(&[u, v]) || !g.has_perfect_matching_without(&[u, v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_is_brick() {
        let k4 = Graph::complete(4);
        assert!(is_brick(&k4).unwrap());
        assert!(!is_brick(&Graph::cycle(6)).unwrap());
        assert!(!is_brick(&k4.without_edge(0)).unwrap());
    }

    #[test]
    fn prism_is_brick() {
        let g = Graph::parse("a b\nb c\nc a\nd e\ne f\nf d\na d\nb e\nc f\n").unwrap();
        assert!(is_brick(&g).unwrap());
        // The cube is 3-connected and bipartite, so removing two vertices of
        // one colour class leaves no perfect matching.
        let cube = Graph::parse("0 1\n1 2\n2 3\n3 0\n4 5\n5 6\n6 7\n7 4\n0 4\n1 5\n2 6\n3 7").unwrap();
        assert!(!is_brick(&cube).unwrap());
    }

    #[test]
    fn stars() {
        let c = vertex_cut_clutter(&Graph::complete(4)).unwrap();
        assert_eq!((c.ground_size(), c.len()), (6, 4));
        assert!(c.edges().iter().all(|e| e.len() == 3));
        let tri = vertex_cut_clutter(&Graph::cycle(3)).unwrap();
        assert_eq!(tri.len(), 3);
        let p3 = vertex_cut_clutter(&Graph::parse("a b\nb c").unwrap()).unwrap();
        assert_eq!(p3.to_string(), "{{a-b},{b-c}}");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Graph::parse("a a"), Err(Error::DegenerateGraph(_))));
        assert!(matches!(Graph::parse("a b\nb a"), Err(Error::DegenerateGraph(_))));
        assert!(matches!(Graph::parse("a b c"), Err(Error::Parse { line: 1, .. })));
        assert_eq!(Graph::parse("# nothing\n"), Err(Error::EmptyInput));
    }
}
