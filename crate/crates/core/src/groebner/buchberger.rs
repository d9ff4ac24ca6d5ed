use super::gpoly::{normal_form, GPoly, Mono, Zp};
use super::{Budget, GroebnerBasis, GroebnerError, GroebnerStats, IdealPresentation};

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

struct State {
    zp: Zp,
    polys: Vec<GPoly>,
    leads: Vec<(Mono, u64)>,
    /// Still a member of the current basis (not made redundant by a later
    /// leading monomial).
    in_basis: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
}

impl State {
    fn push(&mut self, h: GPoly) {
        let lm = h.lm();
        let hi = self.polys.len();
        self.polys.push(h);
        self.leads.push((lm, lm.divmask()));
        self.in_basis.push(true);
        self.update(hi);
    }

    /// Gebauer-Moeller installation of the new element `h`.
    fn update(&mut self, h: usize) {
        let lh = self.leads[h].0;
        let mut cands: Vec<Pair> = (0..h)
            .filter(|&g| self.in_basis[g])
            .map(|g| Pair { i: g, j: h, lcm: lh.lcm(&self.leads[g].0) })
            .collect();
        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in cands.iter().enumerate() {
            let coprime = lh.coprime(&self.leads[p.i].0);
            let dominated = cands[k + 1..].iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(*p);
            } else {
                self.stats.pairs_skipped += 1;
            }
        }
        // product criterion
        let before = kept.len();
        kept.retain(|p| !lh.coprime(&self.leads[p.i].0));
        self.stats.pairs_skipped += (before - kept.len()) as u64;
        // old pairs made redundant by h
        let leads = &self.leads;
        let before = self.pairs.len();
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && lh.lcm(&leads[p.i].0) != p.lcm
                && lh.lcm(&leads[p.j].0) != p.lcm)
        });
        self.stats.pairs_skipped += (before - self.pairs.len()) as u64;
        self.pairs.append(&mut kept);
        for g in 0..h {
            if self.in_basis[g] && lh.divides(&self.leads[g].0) {
                self.in_basis[g] = false;
            }
        }
        cands.clear();
    }

    /// Smallest lcm first, ties by generator index.
    fn pop_pair(&mut self) -> Option<Pair> {
        let k = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.lcm.cmp(&q.lcm).then((p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(k))
    }

    fn spoly(&self, p: &Pair) -> GPoly {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let qf = f.lm().quotient(&p.lcm);
        let qg = g.lm().quotient(&p.lcm);
        let scaled: Vec<(Mono, u32)> = f.terms.iter().map(|&(m, c)| (qf.mul(&m), c)).collect();
        GPoly { terms: super::gpoly::sub_mul(self.zp, &scaled, 1, &qg, &g.terms) }
    }

    fn reduce(&self, f: &GPoly) -> GPoly {
        normal_form(self.zp, f, &self.polys, &self.leads, |_| true)
    }
}

pub fn buchberger(ideal: &IdealPresentation, budget: &Budget) -> Result<GroebnerBasis, GroebnerError> {
    let zp = Zp(ideal.prime);
    let max_degree = budget.max_degree.min(250);
    let mut st = State {
        zp,
        polys: Vec::new(),
        leads: Vec::new(),
        in_basis: Vec::new(),
        pairs: Vec::new(),
        stats: GroebnerStats::default(),
    };
    for g in &ideal.gens {
        let h = st.reduce(g);
        if !h.is_zero() {
            st.stats.max_degree = st.stats.max_degree.max(h.degree() as u32);
            st.push(h.monic(zp));
        }
    }
    while let Some(pair) = st.pop_pair() {
        if st.stats.pairs_processed >= budget.max_pairs {
            return Err(exceeded(&st, "pair budget", pair.lcm.deg as u32));
        }
        if pair.lcm.deg as u32 > max_degree {
            return Err(exceeded(&st, "degree budget", pair.lcm.deg as u32));
        }
        st.stats.pairs_processed += 1;
        let h = st.reduce(&st.spoly(&pair));
        if h.is_zero() {
            st.stats.zero_reductions += 1;
            continue;
        }
        st.stats.max_degree = st.stats.max_degree.max(h.degree() as u32);
        st.push(h.monic(zp));
    }
    let polys = interreduce(zp, &st);
    Ok(GroebnerBasis { nvars: ideal.nvars, prime: ideal.prime, polys, stats: st.stats })
}

fn exceeded(st: &State, reason: &str, degree: u32) -> GroebnerError {
    GroebnerError::BudgetExceeded {
        reason: reason.into(),
        pairs_processed: st.stats.pairs_processed,
        pairs_pending: st.pairs.len(),
        basis_size: st.in_basis.iter().filter(|&&b| b).count(),
        degree,
    }
}

/// Reduced basis, sorted by leading monomial.
fn interreduce(zp: Zp, st: &State) -> Vec<GPoly> {
    let mut keep: Vec<usize> = (0..st.polys.len()).filter(|&i| st.in_basis[i]).collect();
    // equal leading monomials cannot both survive `update`, but be explicit
    keep.sort_by_key(|&i| st.leads[i].0);
    keep.dedup_by_key(|i| st.leads[*i].0);
    let basis: Vec<GPoly> = keep.iter().map(|&i| st.polys[i].clone()).collect();
    let leads: Vec<(Mono, u64)> = basis.iter().map(|g| (g.lm(), g.lm().divmask())).collect();
    let mut out: Vec<GPoly> = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let lead = basis[k].terms[0];
        let tail = GPoly { terms: basis[k].terms[1..].to_vec() };
        let mut r = normal_form(zp, &tail, &basis, &leads, |i| i != k);
        r.terms.insert(0, lead);
        out.push(r.monic(zp));
    }
    out
}

/// Every S-polynomial of `basis` reduces to zero.
pub(crate) fn is_groebner(zp: Zp, basis: &[GPoly]) -> bool {
    let leads: Vec<(Mono, u64)> = basis.iter().map(|g| (g.lm(), g.lm().divmask())).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (basis[i].lm(), basis[j].lm());
            if a.coprime(&b) {
                continue;
            }
            let lcm = a.lcm(&b);
            let scaled: Vec<(Mono, u32)> = basis[i].terms.iter().map(|&(m, c)| (a.quotient(&lcm).mul(&m), c)).collect();
            let s = GPoly { terms: super::gpoly::sub_mul(zp, &scaled, 1, &b.quotient(&lcm), &basis[j].terms) };
            if !normal_form(zp, &s, basis, &leads, |_| true).is_zero() {
                return false;
            }
        }
    }
    true
}
