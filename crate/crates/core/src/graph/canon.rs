//! Canonical labeling by color refinement and individualization.
//!
//! Colors are ranks in an ordered partition, so every step is independent
//! of the input labeling. The certificate is the lexicographically least
//! sorted edge list over all leaves of the search tree.

use super::Skeleton;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub certificate: String,
    /// `labeling[v]` is the canonical index of vertex `v`.
    pub labeling: Vec<usize>,
}

struct Ctx {
    n: usize,
    /// mult[u * n + v]: number of edges between u and v (loops on the diagonal).
    mult: Vec<usize>,
}

impl Ctx {
    fn m(&self, u: usize, v: usize) -> usize {
        self.mult[u * self.n + v]
    }

    /// Refines `colors` to the coarsest equitable ordered partition below it.
    fn refine(&self, colors: &mut Vec<usize>) {
        loop {
            let mut sig: Vec<(usize, Vec<(usize, usize)>, usize)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<(usize, usize)> = (0..self.n)
                        .filter(|&w| w != v && self.m(v, w) > 0)
                        .map(|w| (colors[w], self.m(v, w)))
                        .collect();
                    nb.sort();
                    (colors[v], nb, v)
                })
                .collect();
            sig.sort();
            let mut next = vec![0; self.n];
            let mut rank = 0;
            for i in 0..self.n {
                if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                    rank = i;
                }
                next[sig[i].2] = rank;
            }
            let stable = count_classes(&next) == count_classes(colors);
            *colors = next;
            if stable {
                return;
            }
        }
    }

    fn encode(&self, labeling: &[usize], edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (labeling[u], labeling[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort();
        out
    }

    fn search(
        &self,
        colors: Vec<usize>,
        edges: &[(usize, usize)],
        best: &mut Option<(Vec<(usize, usize)>, Vec<usize>)>,
    ) {
        let mut colors = colors;
        self.refine(&mut colors);
        if count_classes(&colors) == self.n {
            let code = self.encode(&colors, edges);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, colors));
            }
            return;
        }
        // First non-singleton cell, by color rank.
        let mut sizes = vec![0usize; self.n];
        for &c in &colors {
            sizes[c] += 1;
        }
        let cell = (0..self.n).find(|&c| sizes[c] > 1).unwrap();
        for v in 0..self.n {
            if colors[v] != cell {
                continue;
            }
            let mut c = colors.clone();
            // Split v off ahead of its cell; other ranks stay valid because
            // the cell occupies ranks cell..cell + size.
            for (w, cw) in c.iter_mut().enumerate() {
                if *cw == cell && w != v {
                    *cw = cell + 1;
                }
            }
            self.search(c, edges, best);
        }
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort();
    c.dedup();
    c.len()
}

pub fn canonical_form(g: &Skeleton) -> CanonicalForm {
    let n = g.vertex_count();
    let mut mult = vec![0; n * n];
    for &(u, v) in g.edges() {
        mult[u * n + v] += 1;
        if u != v {
            mult[v * n + u] += 1;
        }
    }
    let ctx = Ctx { n, mult };
    // Initial colors: loop count, then the multiset of parallel multiplicities.
    let mut keys: Vec<(usize, Vec<usize>, usize)> = (0..n)
        .map(|v| {
            let mut par: Vec<usize> = (0..n).filter(|&w| w != v).map(|w| ctx.m(v, w)).filter(|&m| m > 0).collect();
            par.sort();
            (ctx.m(v, v), par, v)
        })
        .collect();
    keys.sort();
    let mut colors = vec![0; n];
    let mut rank = 0;
    for i in 0..n {
        if i > 0 && (keys[i].0 != keys[i - 1].0 || keys[i].1 != keys[i - 1].1) {
            rank = i;
        }
        colors[keys[i].2] = rank;
    }
    let mut best = None;
    ctx.search(colors, g.edges(), &mut best);
    let (code, labeling) = best.expect("search reaches a leaf");
    let body: Vec<String> = code.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    CanonicalForm { certificate: format!("n{}:{}", n, body.join(",")), labeling }
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn theta_vs_dumbbell() {
        assert_eq!(theta().certificate(), theta().permuted(&[1, 0]).certificate());
        assert_ne!(theta().certificate(), dumbbell().certificate());
    }

    #[test]
    fn labeling_reproduces_certificate() {
        let g = k33();
        let cf = canonical_form(&g);
        let relabeled = g.permuted(&cf.labeling);
        let mut e: Vec<_> = relabeled.edges().to_vec();
        e.sort();
        let body: Vec<String> = e.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        assert_eq!(cf.certificate, format!("n6:{}", body.join(",")));
    }

    #[test]
    fn permutation_invariance_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let graphs = [theta(), dumbbell(), k4(), k33(), triple_loop_star()];
        for _ in 0..1000 {
            let g = graphs.choose(&mut rng).unwrap();
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            perm.shuffle(&mut rng);
            assert_eq!(g.permuted(&perm).certificate(), g.certificate());
        }
        assert_ne!(k4().certificate(), triple_loop_star().certificate());
    }
}
