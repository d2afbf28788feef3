//! Chevalley basis and integer structure constants.
//!
//! Basis order: `h_1, ..., h_n`, then `x_beta` for the positive roots in
//! datum order, then `x_{-beta}` in the same order. For a non-simple
//! positive root `beta`, let `i` be the smallest node with
//! `gamma = beta - a_i` a root and `p` the largest integer with
//! `gamma - p a_i` a root; then
//!
//! ```text
//! x_beta    = [x_{a_i}, x_gamma] / (p + 1)
//! x_{-beta} = eps [x_{-a_i}, x_{-gamma}] / (p + 1)
//! ```
//!
//! with `eps = +-1` chosen so that `[x_beta, x_{-beta}] = h_beta`, the coroot.
//! The same recipe realizes the basis in every module, so bracket relations
//! hold as matrix identities.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::module::{highest_weight_generators, Generators};
use crate::root_system::{Root, RootDatum, Weight};
use crate::weights::weyl_dim;
use crate::Rational;

/// Short description of the sign convention, embedded in exported files.
pub const SIGN_CONVENTION: &str = "x_beta = [x_{a_i}, x_{beta - a_i}]/(p+1) with i minimal; \
x_{-beta} = eps [x_{-a_i}, x_{-(beta - a_i)}]/(p+1) with [x_beta, x_{-beta}] = h_beta";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Recipe {
    Simple(usize),
    Composite { i: usize, gamma: usize, p: i64, eps: i64 },
}

/// Structure constants of a simple Lie algebra in a Chevalley basis.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub datum: RootDatum,
    /// All roots: positive ones then their negatives.
    pub roots: Vec<Root>,
    recipes: Vec<Recipe>,
    /// Sparse brackets of basis elements.
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

impl StructureConstants {
    pub fn build(datum: RootDatum) -> Result<Self> {
        let n = datum.rank();
        let npos = datum.positive_roots.len();
        let mut roots = datum.positive_roots.clone();
        roots.extend(datum.positive_roots.iter().map(Root::neg));
        let mut recipes = Vec::with_capacity(npos);
        for beta in &datum.positive_roots {
            if beta.height() == 1 {
                let i = beta.0.iter().position(|&c| c == 1).expect("simple root");
                recipes.push(Recipe::Simple(i));
                continue;
            }
            let i = (0..n)
                .find(|&i| beta.0[i] > 0 && datum.positive_root_index(&beta.sub(&datum.simple_root(i))).is_some())
                .ok_or_else(|| Error::Construction(format!("no simple predecessor of {:?}", beta.0)))?;
            let gamma_root = beta.sub(&datum.simple_root(i));
            let gamma = datum.positive_root_index(&gamma_root).expect("checked above");
            let mut p = 0;
            let mut probe = gamma_root.clone();
            loop {
                probe.0[i] -= 1;
                if datum.positive_root_index(&probe).is_none() {
                    break;
                }
                p += 1;
            }
            recipes.push(Recipe::Composite { i, gamma, p, eps: 1 });
        }
        let mut sc = Self { datum, roots, recipes, table: Vec::new() };
        // faithful module: smallest fundamental representation
        let faithful = (0..n)
            .map(|k| Weight::fundamental(n, k))
            .min_by_key(|w| weyl_dim(&sc.datum, w).expect("fundamental weights are dominant"))
            .expect("rank is positive");
        let gens = highest_weight_generators::<Rational>(&sc.datum, &faithful, usize::MAX)?;
        sc.fix_signs(&gens)?;
        let mats = sc.realize(&gens)?;
        sc.table = sc.bracket_table(&mats)?;
        sc.check_jacobi()?;
        Ok(sc)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.roots.len()
    }

    fn npos(&self) -> usize {
        self.datum.positive_roots.len()
    }

    /// Basis index of the root vector `x_r`.
    pub fn root_element(&self, r: &Root) -> Option<usize> {
        let n = self.rank();
        if let Some(k) = self.datum.positive_root_index(r) {
            Some(n + k)
        } else {
            self.datum.positive_root_index(&r.neg()).map(|k| n + self.npos() + k)
        }
    }

    /// Root of a basis element, `None` for Cartan elements.
    pub fn root_of(&self, a: usize) -> Option<&Root> {
        a.checked_sub(self.rank()).map(|k| &self.roots[k])
    }

    pub fn element_name(&self, a: usize) -> String {
        match self.root_of(a) {
            None => format!("h{}", a + 1),
            Some(r) => format!("x{:?}", r.0),
        }
    }

    /// `[a, b]` as a sparse combination of basis elements.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a][b]
    }

    /// Coroot `h_beta` as a combination of `h_i`.
    pub fn coroot(&self, beta: &Root) -> Vec<(usize, i64)> {
        let d = &self.datum;
        let db = d.root_norm(beta) / 2;
        (0..self.rank())
            .filter(|&i| beta.0[i] != 0)
            .map(|i| (i, beta.0[i] * d.symmetrizer[i] / db))
            .collect()
    }

    fn cartan_matrices<F: Field>(&self, gens: &Generators<F>) -> Vec<Matrix<F>> {
        let dim = gens.weights.len();
        (0..self.rank())
            .map(|i| {
                let mut h = Matrix::zeros(dim, dim);
                for (k, w) in gens.weights.iter().enumerate() {
                    if w.0[i] != 0 {
                        h.set(k, k, F::from_int(w.0[i]));
                    }
                }
                h
            })
            .collect()
    }

    /// Matrices of every basis element in the module given by `gens`.
    pub fn realize<F: Field>(&self, gens: &Generators<F>) -> Result<Vec<Matrix<F>>> {
        let n = self.rank();
        let npos = self.npos();
        let mut out = self.cartan_matrices(gens);
        let mut pos: Vec<Matrix<F>> = Vec::with_capacity(npos);
        let mut neg: Vec<Matrix<F>> = Vec::with_capacity(npos);
        for recipe in &self.recipes {
            match *recipe {
                Recipe::Simple(i) => {
                    pos.push(gens.e[i].clone());
                    neg.push(gens.f[i].clone());
                }
                Recipe::Composite { i, gamma, p, eps } => {
                    let s = F::one() / F::from_int(p + 1);
                    pos.push(gens.e[i].commutator(&pos[gamma]).scale(&s));
                    neg.push(gens.f[i].commutator(&neg[gamma]).scale(&(s * F::from_int(eps))));
                }
            }
        }
        debug_assert_eq!(out.len(), n);
        out.extend(pos);
        out.extend(neg);
        Ok(out)
    }

    /// Chooses `eps` so that `[x_beta, x_{-beta}] = h_beta`.
    fn fix_signs(&mut self, gens: &Generators<Rational>) -> Result<()> {
        let h = self.cartan_matrices(gens);
        let mut pos: Vec<Matrix<Rational>> = Vec::new();
        let mut neg: Vec<Matrix<Rational>> = Vec::new();
        for k in 0..self.recipes.len() {
            let (xp, xn) = match self.recipes[k] {
                Recipe::Simple(i) => (gens.e[i].clone(), gens.f[i].clone()),
                Recipe::Composite { i, gamma, p, .. } => {
                    let s = Rational::from_int(1) / Rational::from_int(p + 1);
                    (gens.e[i].commutator(&pos[gamma]).scale(&s), gens.f[i].commutator(&neg[gamma]).scale(&s))
                }
            };
            let beta = self.datum.positive_roots[k].clone();
            let mut hb = Matrix::zeros(xp.rows(), xp.cols());
            for (i, c) in self.coroot(&beta) {
                hb = hb.add(&h[i].scale(&Rational::from_int(c)));
            }
            let br = xp.commutator(&xn);
            let eps = if br == hb {
                1
            } else if br.neg() == hb {
                -1
            } else {
                return Err(Error::Construction(format!("[x_b, x_-b] is not +-h_b for b = {:?}", beta.0)));
            };
            if let Recipe::Composite { eps: ref mut e, .. } = self.recipes[k] {
                *e = eps;
            } else if eps != 1 {
                return Err(Error::Construction("simple generators violate [e, f] = h".into()));
            }
            pos.push(xp);
            neg.push(xn.scale(&Rational::from_int(eps)));
        }
        Ok(())
    }

    fn bracket_table(&self, mats: &[Matrix<Rational>]) -> Result<Vec<Vec<Vec<(usize, i64)>>>> {
        let dim = self.dim();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let expect = self.expected_support(a, b);
                let c = mats[a].commutator(&mats[b]);
                let entry = match expect {
                    Support::Zero => Vec::new(),
                    Support::Scalar(t, coef) => vec![(t, coef)],
                    Support::Coroot(beta) => self.coroot(&beta),
                    Support::Root(t) => {
                        let ratio = ratio_of(&c, &mats[t])
                            .ok_or_else(|| Error::Construction(format!("[{a}, {b}] is not a multiple of element {t}")))?;
                        if !ratio.is_integer() {
                            return Err(Error::Construction(format!("non-integral constant at ({a}, {b})")));
                        }
                        let v: i64 = ratio.to_integer().try_into().map_err(|_| Error::Construction("overflow".into()))?;
                        if v == 0 { Vec::new() } else { vec![(t, v)] }
                    }
                };
                let mut rhs = Matrix::zeros(c.rows(), c.cols());
                for &(t, coef) in &entry {
                    rhs = rhs.add(&mats[t].scale(&Rational::from_int(coef)));
                }
                if rhs != c {
                    return Err(Error::Construction(format!("bracket ({a}, {b}) disagrees with the faithful model")));
                }
                table[a][b] = entry;
            }
        }
        Ok(table)
    }

    fn expected_support(&self, a: usize, b: usize) -> Support {
        let d = &self.datum;
        match (self.root_of(a), self.root_of(b)) {
            (None, None) => Support::Zero,
            (None, Some(r)) => {
                let c = d.coroot_pairing(&d.root_to_weight(r), &d.simple_root(a));
                if c == 0 { Support::Zero } else { Support::Scalar(b, c) }
            }
            (Some(r), None) => {
                let c = d.coroot_pairing(&d.root_to_weight(r), &d.simple_root(b));
                if c == 0 { Support::Zero } else { Support::Scalar(a, -c) }
            }
            (Some(r), Some(s)) => {
                let sum = r.add(s);
                if sum.0.iter().all(|&c| c == 0) {
                    // [x_{-b}, x_b] = -h_b, and coroot(-b) = -h_b
                    Support::Coroot(r.clone())
                } else {
                    match self.root_element(&sum) {
                        Some(t) => Support::Root(t),
                        None => Support::Zero,
                    }
                }
            }
        }
    }

    fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        let apply = |x: usize, v: &[(usize, i64)]| -> Vec<i64> {
            let mut out = vec![0i64; dim];
            for &(y, c) in v {
                for &(z, e) in &self.table[x][y] {
                    out[z] += c * e;
                }
            }
            out
        };
        for a in 0..dim {
            for b in a + 1..dim {
                for c in b + 1..dim {
                    let t1 = apply(a, &self.table[b][c]);
                    let t2 = apply(b, &self.table[c][a]);
                    let t3 = apply(c, &self.table[a][b]);
                    if (0..dim).any(|k| t1[k] + t2[k] + t3[k] != 0) {
                        return Err(Error::Construction(format!("Jacobi identity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

enum Support {
    Zero,
    Scalar(usize, i64),
    Coroot(Root),
    Root(usize),
}

/// `c = t * m` for a scalar `t`, if such a scalar exists.
fn ratio_of(c: &Matrix<Rational>, m: &Matrix<Rational>) -> Option<Rational> {
    let (r, k) = (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |k| (r, k))).find(|&(r, k)| !num_traits::Zero::is_zero(m.get(r, k)))?;
    let t = c.get(r, k).clone() / m.get(r, k).clone();
    if *c == m.scale(&t) { Some(t) } else { None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> StructureConstants {
        StructureConstants::build(RootDatum::from_type_str(s).unwrap()).unwrap()
    }

    #[test]
    fn sl2() {
        let s = sc("A1");
        assert_eq!(s.dim(), 3);
        // basis h, e, f
        assert_eq!(s.bracket(1, 2), &[(0, 1)]);
        assert_eq!(s.bracket(0, 1), &[(1, 2)]);
        assert_eq!(s.bracket(0, 2), &[(2, -2)]);
    }

    #[test]
    fn a2_extraspecial_sign() {
        let s = sc("A2");
        let a1 = s.root_element(&Root(vec![1, 0])).unwrap();
        let a2 = s.root_element(&Root(vec![0, 1])).unwrap();
        let a12 = s.root_element(&Root(vec![1, 1])).unwrap();
        assert_eq!(s.bracket(a1, a2), &[(a12, 1)]);
        assert_eq!(s.bracket(a2, a1), &[(a12, -1)]);
    }

    #[test]
    fn c2_table() {
        let s = sc("C2");
        assert_eq!(s.dim(), 10);
        for a in 0..10 {
            for b in 0..10 {
                let ab: Vec<_> = s.bracket(a, b).to_vec();
                let ba: Vec<_> = s.bracket(b, a).iter().map(|&(t, c)| (t, -c)).collect();
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn root_space_relations() {
        for name in ["B3", "C3", "G2", "A3", "D4", "F4"] {
            let s = sc(name);
            let n = s.rank();
            for (k, r) in s.roots.iter().enumerate() {
                for i in 0..n {
                    let c = s.datum.coroot_pairing(&s.datum.root_to_weight(r), &s.datum.simple_root(i));
                    let expect: Vec<(usize, i64)> = if c == 0 { vec![] } else { vec![(n + k, c)] };
                    assert_eq!(s.bracket(i, n + k), &expect[..], "{name}");
                }
                if r.is_positive() {
                    let neg = s.root_element(&r.neg()).unwrap();
                    assert!(s.bracket(n + k, neg).iter().all(|&(t, _)| t < n));
                }
            }
        }
    }

    #[test]
    fn structure_constants_are_string_lengths() {
        // |N_{a,b}| = p + 1 for a Chevalley basis
        let s = sc("G2");
        let d = &s.datum;
        for (ka, a) in s.roots.iter().enumerate() {
            for (kb, b) in s.roots.iter().enumerate() {
                let sum = a.add(b);
                if let Some(t) = s.root_element(&sum) {
                    let mut p = 0;
                    let mut probe = b.sub(a);
                    while d.is_root(&probe) {
                        p += 1;
                        probe = probe.sub(a);
                    }
                    let n = s.rank();
                    assert_eq!(s.bracket(n + ka, n + kb), &[(t, s.bracket(n + ka, n + kb)[0].1)]);
                    assert_eq!(s.bracket(n + ka, n + kb)[0].1.abs(), p + 1);
                }
            }
        }
    }
}
