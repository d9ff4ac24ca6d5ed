use super::gpoly::{Mono, MAX_VARS};

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of
/// `k[x] / (gens)` for a monomial ideal, by pivoting on variables:
/// `N(I) = N(I + (x)) + t N(I : x)`.
pub(crate) fn hilbert_numerator(gens: &[Mono]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    if gens.is_empty() {
        return vec![1];
    }
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if g.e[i] > 0 {
                *c += 1;
            }
        }
    }
    let (pivot, &most) = counts.iter().enumerate().max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i))).unwrap();
    if most <= 1 {
        // pairwise coprime generators
        return gens.iter().fold(vec![1], |acc, g| poly_mul(&acc, &one_minus_t_pow(g.deg as usize)));
    }
    let mut x = Mono::one();
    x.e[pivot] = 1;
    x.deg = 1;
    let mut plus = gens.clone();
    plus.push(x);
    let colon: Vec<Mono> = gens
        .iter()
        .map(|g| {
            let mut h = *g;
            if h.e[pivot] > 0 {
                h.e[pivot] -= 1;
                h.deg -= 1;
            }
            h
        })
        .collect();
    let a = hilbert_numerator(&plus);
    let b = hilbert_numerator(&colon);
    let mut out = a;
    let shifted: Vec<i64> = std::iter::once(0).chain(b).collect();
    poly_add(&mut out, &shifted);
    out
}

fn minimalize(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Mono> = Vec::with_capacity(gens.len());
    // ascending order: a divisor always precedes its multiples
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn one_minus_t_pow(d: usize) -> Vec<i64> {
    let mut v = vec![0; d + 1];
    v[0] += 1;
    v[d] -= 1;
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &mut Vec<i64>, b: &[i64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// `(krull_dim, degree)` from the numerator: divide by `(1 - t)` while
/// `N(1) = 0`. Returns `None` for the zero numerator (unit ideal).
pub(crate) fn dim_degree(numerator: &[i64], nvars: usize) -> Option<(usize, i64)> {
    let mut q: Vec<i64> = numerator.to_vec();
    while q.last() == Some(&0) {
        q.pop();
    }
    if q.is_empty() {
        return None;
    }
    let mut k = 0;
    while q.iter().sum::<i64>() == 0 {
        // q(t) = (1 - t) r(t), r_k = sum_{j <= k} q_j
        let mut acc = 0;
        let mut r = Vec::with_capacity(q.len() - 1);
        for &c in &q[..q.len() - 1] {
            acc += c;
            r.push(acc);
        }
        q = r;
        k += 1;
    }
    Some((nvars - k, q.iter().sum()))
}
