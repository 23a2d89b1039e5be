//! Random instance generators and independent oracles shared by the
//! property tests and the acceptance suite.

#![allow(dead_code)]

use num_bigint::BigInt;
use pinchlink_core::{
    AbelianGroup, Arrow, Attachment, IntMatrix, PlumbingGraph, SingularCurveData,
    SingularLinkDescription, Vertex,
};
use rand::seq::SliceRandom;
use rand::Rng;

// ---------------------------------------------------------------- oracles

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * laplace_det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as `d_k / d_{k-1}` where `d_k` is the gcd of all k×k
/// minors.
pub fn minor_gcd_invariant_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| i128::from(m[r][c])).collect())
                    .collect();
                g = gcd(g, laplace_det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        factors.push(g / prev);
        prev = g;
    }
    factors
}

/// Row reduction over Q, keeping rows as integer vectors divided by their
/// content.
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i == rank || a[i][c] == 0 {
                continue;
            }
            let (f, g) = (a[rank][c], a[i][c]);
            let pivot_row = a[rank].clone();
            for (x, &y) in a[i].iter_mut().zip(&pivot_row) {
                *x = *x * f - y * g;
            }
            let content = a[i].iter().fold(0, |acc, &x| gcd(acc, x));
            if content > 1 {
                a[i].iter_mut().for_each(|x| *x /= content);
            }
        }
        rank += 1;
    }
    rank
}

pub fn to_matrix(m: &[Vec<i64>]) -> IntMatrix {
    if m.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::from_rows(m.iter().map(|r| r.iter().copied())).unwrap()
}

/// Fill at the presentation level: add the relation `p·μ + q·λ = 0`.
pub fn fill_by_relation(g: &PlumbingGraph, arrow: usize, p: i64, q: i64) -> AbelianGroup {
    let pres = g.h1_presentation();
    let mut col = vec![BigInt::from(0); pres.generators.len()];
    col[pres.framings[arrow].meridian] += p;
    col[pres.framings[arrow].parallel] += q;
    let mut rel = pres.relations.clone();
    rel.push_column(&col);
    pinchlink_core::zlattice::cokernel(&rel)
}

// ------------------------------------------------------------- generators

pub fn random_matrix(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

/// Random tree on `n` vertices with relabelled vertices.
pub fn random_tree_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| (order[rng.gen_range(0..i)], order[i]))
        .collect()
}

pub fn random_closed_tree(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> PlumbingGraph {
    let vertices = (0..n)
        .map(|_| Vertex::sphere(rng.gen_range(lo..=hi)))
        .collect();
    PlumbingGraph::new(vertices, random_tree_edges(rng, n), vec![]).unwrap()
}

/// Random forest with occasional positive genus.
pub fn random_forest(rng: &mut impl Rng, n: usize, lo: i64, hi: i64, genus: bool) -> PlumbingGraph {
    let vertices = (0..n)
        .map(|_| {
            let g = if genus && rng.gen_bool(0.15) { 1 } else { 0 };
            Vertex::new(rng.gen_range(lo..=hi), g)
        })
        .collect();
    let edges = random_tree_edges(rng, n)
        .into_iter()
        .filter(|_| rng.gen_bool(0.8))
        .collect();
    PlumbingGraph::new(vertices, edges, vec![]).unwrap()
}

pub fn random_unimodular(rng: &mut impl Rng) -> [[i64; 2]; 2] {
    let mut m = [[1i64, 0], [0, 1]];
    for _ in 0..rng.gen_range(0..4) {
        let k = rng.gen_range(-3..=3);
        m = if rng.gen_bool(0.5) {
            // right multiply by [[1, k], [0, 1]]
            [
                [m[0][0], m[0][0] * k + m[0][1]],
                [m[1][0], m[1][0] * k + m[1][1]],
            ]
        } else {
            [
                [m[0][0] + m[0][1] * k, m[0][1]],
                [m[1][0] + m[1][1] * k, m[1][1]],
            ]
        };
    }
    if rng.gen_bool(0.5) {
        m = [[m[0][1], m[0][0]], [m[1][1], m[1][0]]];
    }
    m
}

/// Connected exterior with one arrow per sheet of the given curves.
pub fn random_link(rng: &mut impl Rng, degrees: Vec<Vec<usize>>) -> SingularLinkDescription {
    let nv = rng.gen_range(1..=5);
    let vertices = (0..nv)
        .map(|_| {
            let g = if rng.gen_bool(0.1) { 1 } else { 0 };
            Vertex::new(rng.gen_range(-3..=3), g)
        })
        .collect();
    let edges = random_tree_edges(rng, nv);
    let mut arrows = Vec::new();
    let mut attachments = Vec::new();
    let mut curves = Vec::new();
    for (ci, ds) in degrees.into_iter().enumerate() {
        let name = format!("c{ci}");
        for sheet in 0..ds.len() {
            let label = format!("{name}.b{sheet}");
            arrows.push(Arrow::new(rng.gen_range(0..nv), label.clone()));
            attachments.push(Attachment::new(
                name.clone(),
                sheet,
                label,
                random_unimodular(rng),
            ));
        }
        curves.push(SingularCurveData::new(name, ds).unwrap());
    }
    let exterior = PlumbingGraph::new(vertices, edges, arrows).unwrap();
    SingularLinkDescription::new(exterior, curves, attachments).unwrap()
}

/// Curves with `Σ n(σ) <= max_sheets`, degrees in `1..=4`.
pub fn random_degrees(rng: &mut impl Rng, max_sheets: usize) -> Vec<Vec<usize>> {
    let mut left = max_sheets;
    let mut out = Vec::new();
    let count = rng.gen_range(1..=3);
    for _ in 0..count {
        if left == 0 {
            break;
        }
        let n = rng.gen_range(1..=left.min(3));
        left -= n;
        out.push((0..n).map(|_| rng.gen_range(1..=4)).collect());
    }
    out
}

/// Same link with arrows, curves and attachments listed in shuffled order.
pub fn shuffled(rng: &mut impl Rng, s: &SingularLinkDescription) -> SingularLinkDescription {
    let ext = s.exterior();
    let mut arrows = ext.arrows().to_vec();
    arrows.shuffle(rng);
    let exterior =
        PlumbingGraph::new(ext.vertices().to_vec(), ext.edges().to_vec(), arrows).unwrap();
    let mut curves = s.curves().to_vec();
    curves.shuffle(rng);
    let mut attachments = s.attachments().to_vec();
    attachments.shuffle(rng);
    SingularLinkDescription::new(exterior, curves, attachments).unwrap()
}
