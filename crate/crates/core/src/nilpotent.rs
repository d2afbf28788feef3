//! The graded nilpotent algebra `g_-` and its enveloping algebra.
//!
//! Basis: `Y_a = x_{-beta_a}` for the positive roots of positive Σ-height,
//! sorted by (degree, root index) with degree 1 first. PBW monomials are
//! nondecreasing index words; any word is brought into this order by
//! repeatedly replacing `Y_a Y_b` (with `a > b`) by `Y_b Y_a + [Y_a, Y_b]`.

use std::collections::BTreeMap;

use crate::chevalley::StructureConstants;
use crate::field::Field;
use crate::grading::ParabolicGrading;
use crate::linalg::Matrix;
use crate::module::ModuleModel;
use crate::root_system::Root;

/// Index word; nondecreasing words are PBW monomials.
pub type Word = Vec<usize>;
/// Linear combination of words.
pub type PbwExpr<F> = BTreeMap<Word, F>;

#[derive(Clone, Debug)]
pub struct NilpotentModel {
    /// Positive roots `beta_a`; the basis element is `x_{-beta_a}`.
    pub roots: Vec<Root>,
    pub degrees: Vec<usize>,
    /// Index of `x_{-beta_a}` in the ambient Chevalley basis.
    pub elements: Vec<usize>,
    /// Index of `x_{beta_a}` in the ambient Chevalley basis.
    pub dual_elements: Vec<usize>,
    /// `d_beta = <beta, beta>/2`; `Z_a = d_beta x_beta` pairs to 1 with `Y_a`.
    pub dual_scale: Vec<i64>,
    /// `[Y_a, Y_b] = c Y_t` stored as `Some((t, c))`.
    pub bracket: Vec<Vec<Option<(usize, i64)>>>,
    pub depth: usize,
}

/// PBW monomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwBasis {
    pub degree: usize,
    pub monomials: Vec<Word>,
}

impl PbwBasis {
    /// Exponent vectors over the graded basis.
    pub fn exponents(&self, dim: usize) -> Vec<Vec<usize>> {
        self.monomials
            .iter()
            .map(|w| {
                let mut e = vec![0; dim];
                for &a in w {
                    e[a] += 1;
                }
                e
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.monomials.iter().position(|m| m == w)
    }
}

impl NilpotentModel {
    pub fn build(sc: &StructureConstants, g: &ParabolicGrading) -> Self {
        let d = &sc.datum;
        let mut order: Vec<(usize, usize)> = d
            .positive_roots
            .iter()
            .enumerate()
            .filter_map(|(k, r)| {
                let h = g.height_of(r);
                (h > 0).then_some((h as usize, k))
            })
            .collect();
        order.sort();
        let roots: Vec<Root> = order.iter().map(|&(_, k)| d.positive_roots[k].clone()).collect();
        let degrees = order.iter().map(|&(h, _)| h).collect();
        let elements: Vec<usize> = roots.iter().map(|r| sc.root_element(&r.neg()).expect("negative root")).collect();
        let dual_elements = roots.iter().map(|r| sc.root_element(r).expect("positive root")).collect();
        let dual_scale = roots.iter().map(|r| d.root_norm(r) / 2).collect();
        let pos: BTreeMap<usize, usize> = elements.iter().enumerate().map(|(a, &e)| (e, a)).collect();
        let m = roots.len();
        let mut bracket = vec![vec![None; m]; m];
        for a in 0..m {
            for b in 0..m {
                let br = sc.bracket(elements[a], elements[b]);
                assert!(br.len() <= 1, "bracket of root vectors is a root vector");
                if let Some(&(t, c)) = br.first() {
                    bracket[a][b] = Some((pos[&t], c));
                }
            }
        }
        Self { roots, degrees, elements, dual_elements, dual_scale, bracket, depth: g.depth }
    }

    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    /// Basis indices of `g_{-i}`.
    pub fn degree_indices(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&a| self.degrees[a] == i).collect()
    }

    pub fn word_degree(&self, w: &[usize]) -> usize {
        w.iter().map(|&a| self.degrees[a]).sum()
    }

    /// Invariant form between `g_i` (rows, `x_beta`) and `g_{-i}`
    /// (columns, `x_{-beta}`): `(x_beta, x_{-beta}) = 1/d_beta`.
    pub fn pairing_matrix<F: Field>(&self, i: usize) -> Matrix<F> {
        let idx = self.degree_indices(i);
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (k, &a) in idx.iter().enumerate() {
            m.set(k, k, F::from_ratio(1, self.dual_scale[a]));
        }
        m
    }

    /// Rank of `(X, Y) -> [X, Y]` on `g_{-1}` projected to `g_{-2}`, or
    /// `None` when `g_{-2}` is not one-dimensional.
    pub fn contact_form_rank(&self) -> Option<usize> {
        let top = self.degree_indices(2);
        if top.len() != 1 {
            return None;
        }
        let one = self.degree_indices(1);
        let mut m = Matrix::<crate::Rational>::zeros(one.len(), one.len());
        for (r, &a) in one.iter().enumerate() {
            for (c, &b) in one.iter().enumerate() {
                if let Some((t, v)) = self.bracket[a][b] {
                    if t == top[0] {
                        m.set(r, c, crate::Rational::from_int(v));
                    }
                }
            }
        }
        Some(m.rank())
    }

    /// PBW monomials of degree `i`: longest words first, then
    /// lexicographic.
    pub fn pbw_basis(&self, i: usize) -> PbwBasis {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate_words(i, 0, &mut cur, &mut out);
        out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        PbwBasis { degree: i, monomials: out }
    }

    fn enumerate_words(&self, rest: usize, start: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for a in start..self.dim() {
            if self.degrees[a] <= rest {
                cur.push(a);
                self.enumerate_words(rest - self.degrees[a], a, cur, out);
                cur.pop();
            }
        }
    }

    /// All words (not only PBW ones) of total degree `i`.
    pub fn tensor_words(&self, i: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.all_words(i, &mut cur, &mut out);
        out
    }

    fn all_words(&self, rest: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if rest == 0 {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..self.dim() {
            if self.degrees[a] <= rest {
                cur.push(a);
                self.all_words(rest - self.degrees[a], cur, out);
                cur.pop();
            }
        }
    }

    /// Rewrites a combination of words in PBW order.
    pub fn reduce_expr<F: Field>(&self, expr: PbwExpr<F>) -> PbwExpr<F> {
        let mut done: PbwExpr<F> = BTreeMap::new();
        let mut todo = expr;
        while let Some((w, c)) = todo.pop_first() {
            if c.is_zero() {
                continue;
            }
            match (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
                None => add_term(&mut done, w, c),
                Some(k) => {
                    let mut swapped = w.clone();
                    swapped.swap(k, k + 1);
                    add_term(&mut todo, swapped, c.clone());
                    if let Some((t, v)) = self.bracket[w[k]][w[k + 1]] {
                        let mut short = w[..k].to_vec();
                        short.push(t);
                        short.extend_from_slice(&w[k + 2..]);
                        add_term(&mut todo, short, c * F::from_int(v));
                    }
                }
            }
        }
        done
    }

    pub fn reduce<F: Field>(&self, w: &[usize]) -> PbwExpr<F> {
        self.reduce_expr(BTreeMap::from([(w.to_vec(), F::one())]))
    }

    /// `(Y_1 ... Y_p)^T = (-1)^p Y_p ... Y_1`, in PBW order.
    pub fn transpose<F: Field>(&self, w: &[usize]) -> PbwExpr<F> {
        let mut rev = w.to_vec();
        rev.reverse();
        let sign = if w.len() % 2 == 0 { F::one() } else { -F::one() };
        self.reduce_expr(BTreeMap::from([(rev, sign)]))
    }

    pub fn transpose_expr<F: Field>(&self, expr: &PbwExpr<F>) -> PbwExpr<F> {
        let mut out = BTreeMap::new();
        for (w, c) in expr {
            for (v, d) in self.transpose::<F>(w) {
                add_term(&mut out, v, c.clone() * d);
            }
        }
        out
    }

    /// Average over all orderings of the factors, in PBW order.
    pub fn symmetrise<F: Field>(&self, factors: &[usize]) -> PbwExpr<F> {
        let perms = distinct_permutations(factors);
        let count = F::from_int(perms.len() as i64);
        let expr = perms.into_iter().map(|p| (p, F::one() / count.clone())).collect();
        self.reduce_expr(expr)
    }

    /// `u . v` for `u = Y_1 ... Y_p`: the product of the action matrices
    /// applied to `v`, rightmost factor first.
    pub fn u_action<F: Field>(&self, mm: &ModuleModel<F>, w: &[usize], v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for &a in w.iter().rev() {
            out = mm.action[self.elements[a]].mul_vec(&out);
        }
        out
    }

    /// Matrix of `u` acting on the module.
    pub fn u_matrix<F: Field>(&self, mm: &ModuleModel<F>, expr: &PbwExpr<F>) -> Matrix<F> {
        let n = mm.dim();
        let mut total = Matrix::zeros(n, n);
        for (w, c) in expr {
            let mut m = Matrix::identity(n);
            for &a in w {
                m = m.mul(&mm.action[self.elements[a]]);
            }
            total = total.add(&m.scale(c));
        }
        total
    }

    /// `[x, Y_a]` for an ambient basis element `x` normalizing `g_-`.
    pub fn ad(&self, sc: &StructureConstants, x: usize, a: usize) -> Vec<(usize, i64)> {
        sc.bracket(x, self.elements[a])
            .iter()
            .map(|&(t, c)| {
                let b = self.elements.iter().position(|&e| e == t).expect("g_0 preserves g_-");
                (b, c)
            })
            .collect()
    }

    /// Derivation action of `x` on a word, in PBW order.
    pub fn derive_word<F: Field>(&self, sc: &StructureConstants, x: usize, w: &[usize]) -> PbwExpr<F> {
        let mut expr = BTreeMap::new();
        for k in 0..w.len() {
            for (b, c) in self.ad(sc, x, w[k]) {
                let mut v = w.to_vec();
                v[k] = b;
                add_term(&mut expr, v, F::from_int(c));
            }
        }
        self.reduce_expr(expr)
    }
}

fn add_term<F: Field>(expr: &mut PbwExpr<F>, w: Word, c: F) {
    let e = expr.entry(w).or_insert_with(F::zero);
    *e = e.clone() + c;
    expr.retain(|_, v| !v.is_zero());
}

fn distinct_permutations(items: &[usize]) -> Vec<Word> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut used = vec![false; sorted.len()];
    let mut cur = Vec::with_capacity(sorted.len());
    fn go(sorted: &[usize], used: &mut [bool], cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == sorted.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..sorted.len() {
            if used[k] || (k > 0 && sorted[k] == sorted[k - 1] && !used[k - 1]) {
                continue;
            }
            used[k] = true;
            cur.push(sorted[k]);
            go(sorted, used, cur, out);
            cur.pop();
            used[k] = false;
        }
    }
    go(&sorted, &mut used, &mut cur, &mut out);
    out
}
