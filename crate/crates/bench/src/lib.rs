//! Fixed instances shared by the benchmarks.

use clutterkit::{make_clutter, Clutter};

/// `Q6`: the triangles of `K4` as a clutter on its six edges.
pub fn q6() -> Clutter {
    make_clutter(
        ["a", "b", "c", "d", "e", "f"],
        [["a", "b", "c"], ["a", "e", "f"], ["b", "d", "f"], ["c", "d", "e"]],
    )
    .expect("valid clutter")
}

/// The odd cycle `C_{2k+1}` as a clutter of consecutive pairs.
pub fn odd_cycle(k: usize) -> Clutter {
    let n = 2 * k + 1;
    let ground: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<Vec<String>> = (0..n)
        .map(|i| vec![ground[i].clone(), ground[(i + 1) % n].clone()])
        .collect();
    make_clutter(ground, edges).expect("valid clutter")
}
