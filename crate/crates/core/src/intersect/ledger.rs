use serde::{Deserialize, Serialize};

use crate::arith::{FieldCtx, Rationals};
use crate::linalg::Mat;

/// `dim G(k, n) = k (n - k)`, Grassmannian of `k`-planes in `n`-space.
pub fn grassmannian_dim(k: usize, n: usize) -> usize {
    assert!(k <= n, "G({k}, {n})");
    k * (n - k)
}

/// Number of independent linear conditions `v^T M w = 0` imposed on
/// symmetric `n x n` matrices `M` by the given vector pairs.
pub fn vanishing_conditions(n: usize, pairs: &[(Vec<i64>, Vec<i64>)]) -> usize {
    let q = Rationals::default();
    let rows: Vec<Vec<_>> = pairs
        .iter()
        .map(|(v, w)| {
            let mut row = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in i..n {
                    let c = if i == j { v[i] * w[i] } else { v[i] * w[j] + v[j] * w[i] };
                    row.push(q.elem(c));
                }
            }
            row
        })
        .collect();
    if rows.is_empty() {
        return 0;
    }
    Mat::from_rows(rows).expect("rows have equal length").rank()
}

fn e(i: usize) -> Vec<i64> {
    let mut v = vec![0; 8];
    v[i] = 1;
    v
}

/// Pairs of basis vectors of a linear subspace: containing it is
/// `b_a^T M b_b = 0` for all `a <= b`.
fn containment(basis: &[Vec<i64>]) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    for a in 0..basis.len() {
        for b in a..basis.len() {
            out.push((basis[a].clone(), basis[b].clone()));
        }
    }
    out
}

fn span(idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter().map(|&i| e(i)).collect()
}

/// Quadrics in `P^7` vanishing on all of the given subspaces.
fn quadrics_containing(subspaces: &[Vec<Vec<i64>>]) -> usize {
    let pairs: Vec<_> = subspaces.iter().flat_map(|s| containment(s)).collect();
    36 - vanishing_conditions(8, &pairs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub name: String,
    pub value: i64,
    pub derivation: String,
}

fn entry(name: &str, value: usize, derivation: String) -> LedgerEntry {
    LedgerEntry { name: name.into(), value: value as i64, derivation }
}

/// Dimensions of parameter spaces of webs of quadrics in `P^7`, as base
/// dimension plus fibre dimension; fibre dimensions come from counting
/// independent conditions on a representative configuration.
pub fn incidence_dimension_ledger() -> Vec<LedgerEntry> {
    let webs = |space: usize| grassmannian_dim(4, space);
    let planes = grassmannian_dim(3, 8);
    let mut out = Vec::new();

    out.push(entry("all_webs", webs(36), "G(4,36)".into()));

    let with_p = quadrics_containing(&[span(&[5, 6, 7])]);
    out.push(entry("webs_with_plane", planes + webs(with_p), format!("G(3,8) + G(4,{with_p})")));
    out.push(entry("webs_with_fixed_plane", webs(with_p), format!("G(4,{with_p})")));

    let disjoint = quadrics_containing(&[span(&[0, 1, 2]), span(&[5, 6, 7])]);
    out.push(entry(
        "two_disjoint_planes",
        2 * planes + webs(disjoint),
        format!("2 G(3,8) + G(4,{disjoint})"),
    ));

    // pairs of planes through a common line: line, then a P^5 of planes each
    let line = quadrics_containing(&[span(&[0, 1, 2]), span(&[1, 2, 3])]);
    let line_base = grassmannian_dim(2, 8) + 2 * grassmannian_dim(1, 6);
    out.push(entry("two_planes_line", line_base + webs(line), format!("{line_base} + G(4,{line})")));

    // pairs of planes through a common point: point, then G(2,7) each
    let point = quadrics_containing(&[span(&[0, 1, 2]), span(&[2, 3, 4])]);
    let point_base = grassmannian_dim(1, 8) + 2 * grassmannian_dim(2, 7);
    out.push(entry("two_planes_point", point_base + webs(point), format!("{point_base} + G(4,{point})")));

    // plane, a point on it, and a line through that point
    let incidence = planes + grassmannian_dim(1, 3) + grassmannian_dim(1, 7);
    out.push(entry("plane_line_incidence", incidence, "G(3,8) + G(1,3) + G(1,7)".into()));

    let plane_and_line = quadrics_containing(&[span(&[5, 6, 7]), span(&[4, 5])]);
    out.push(entry("fiber_G(4,28)", webs(plane_and_line), format!("G(4,{plane_and_line})")));

    // V = {x0..x3 = 0} meets the member in P and a plane through the line
    // l = {x0..x5 = 0}: the restriction to V lies in span(x4^2, x4 x5)
    let mut pairs = containment(&span(&[5, 6, 7]));
    pairs.push((e(4), e(6)));
    pairs.push((e(4), e(7)));
    let line_on_p = 36 - vanishing_conditions(8, &pairs);
    let bound = webs(line_on_p) + grassmannian_dim(2, 3) + grassmannian_dim(1, 5);
    out.push(entry("line_on_P_bound", bound, format!("G(4,{line_on_p}) + G(2,3) + G(1,5)")));
    out
}
