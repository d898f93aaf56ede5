use crate::clutter::Clutter;
use crate::set::ElementSet;

/// Per-element invariant: degree and sorted sizes of the edges through it.
fn signature(c: &Clutter, a: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = c.edges().iter().filter(|e| e.contains(a)).map(|e| e.len()).collect();
    sizes.sort_unstable();
    sizes
}

fn pair_counts(c: &Clutter) -> Vec<Vec<usize>> {
    let n = c.ground_size();
    let mut m = vec![vec![0; n]; n];
    for e in c.edges() {
        for a in e.iter() {
            for b in e.iter() {
                m[a][b] += 1;
            }
        }
    }
    m
}

/// A bijection `map` of ground sets with `map(C) = D`, found by
/// backtracking over elements with matching signatures and pair counts.
pub fn isomorphism(c: &Clutter, d: &Clutter) -> Option<Vec<usize>> {
    let n = c.ground_size();
    if n != d.ground_size() || c.len() != d.len() {
        return None;
    }
    let mut sizes_c: Vec<usize> = c.edges().iter().map(|e| e.len()).collect();
    let mut sizes_d: Vec<usize> = d.edges().iter().map(|e| e.len()).collect();
    sizes_c.sort_unstable();
    sizes_d.sort_unstable();
    if sizes_c != sizes_d {
        return None;
    }
    let sig_c: Vec<Vec<usize>> = (0..n).map(|a| signature(c, a)).collect();
    let sig_d: Vec<Vec<usize>> = (0..n).map(|a| signature(d, a)).collect();
    let mut sorted_c = sig_c.clone();
    let mut sorted_d = sig_d.clone();
    sorted_c.sort();
    sorted_d.sort();
    if sorted_c != sorted_d {
        return None;
    }
    let search = Search {
        c,
        d,
        sig_c,
        sig_d,
        pc: pair_counts(c),
        pd: pair_counts(d),
    };
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search.extend(0, &mut map, &mut used).then_some(map)
}

pub fn is_isomorphic(c: &Clutter, d: &Clutter) -> bool {
    isomorphism(c, d).is_some()
}

struct Search<'a> {
    c: &'a Clutter,
    d: &'a Clutter,
    sig_c: Vec<Vec<usize>>,
    sig_d: Vec<Vec<usize>>,
    pc: Vec<Vec<usize>>,
    pd: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn extend(&self, a: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = map.len();
        if a == n {
            return self.maps_edges(map);
        }
        for b in 0..n {
            if used[b] || self.sig_c[a] != self.sig_d[b] {
                continue;
            }
            if (0..a).any(|x| self.pc[a][x] != self.pd[b][map[x]]) {
                continue;
            }
            map[a] = b;
            used[b] = true;
            if self.extend(a + 1, map, used) {
                return true;
            }
            used[b] = false;
        }
        map[a] = usize::MAX;
        false
    }

    fn maps_edges(&self, map: &[usize]) -> bool {
        self.c.edges().iter().all(|e| {
            let image: ElementSet = e.iter().map(|a| map[a]).collect();
            self.d.contains_edge(image)
        })
    }
}
