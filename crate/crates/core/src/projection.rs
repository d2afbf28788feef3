//! The Levi-equivariant projection `U_{-r}* (x) V_0 -> S^r g_{-1,j}* (x) V_0
//! -> Cartan component`.
//!
//! Coordinates: a functional on `U_{-r}` is stored by its values on the PBW
//! monomials, a functional on `S^r g_{-1,j}` by its values on commutative
//! monomials. An element `x` of the Levi factor acts on such coordinates
//! by `-D_x^T (x) 1 + 1 (x) rho_0(x)` where `D_x` is the derivation action.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::chevalley::StructureConstants;
use crate::cochain::CochainComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::ParabolicGrading;
use crate::linalg::Matrix;
use crate::nilpotent::Word;
use crate::root_system::Weight;

#[derive(Clone, Debug)]
pub struct NaturalProjection<F: Field> {
    /// Crossed node, 1-based.
    pub node: usize,
    pub order: usize,
    /// Restriction along symmetrisation, `U_{-r}* (x) V_0 -> S^r (x) V_0`.
    pub restriction: Matrix<F>,
    /// Projector on `S^r (x) V_0` onto the Cartan component.
    pub projector: Matrix<F>,
    /// `projector * restriction`.
    pub matrix: Matrix<F>,
    /// Basis of the Cartan component inside `S^r (x) V_0`.
    pub cartan_basis: Matrix<F>,
    /// Commutative monomials of `S^r g_{-1,j}`.
    pub monomials: Vec<Word>,
    source_actions: Vec<Matrix<F>>,
    target_actions: Vec<Matrix<F>>,
}

/// Ambient basis indices of the Levi generators: all `h_i`, then `e_i`
/// and `f_i` for each uncrossed node.
pub fn levi_generators(sc: &StructureConstants, g: &ParabolicGrading) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let d = &sc.datum;
    let h = (0..d.rank()).collect();
    let e = g.levi_ss_nodes.iter().map(|&i| sc.root_element(&d.simple_root(i)).unwrap()).collect();
    let f = g.levi_ss_nodes.iter().map(|&i| sc.root_element(&d.simple_root(i).neg()).unwrap()).collect();
    (h, e, f)
}

fn commutative_monomials(gens: &[usize], r: usize) -> Vec<Word> {
    fn go(gens: &[usize], start: usize, r: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for k in start..gens.len() {
            cur.push(gens[k]);
            go(gens, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(gens, 0, r, &mut Vec::new(), &mut out);
    out
}

impl<F: Field> NaturalProjection<F> {
    pub fn build(sc: &StructureConstants, cc: &CochainComplex<F>, g: &ParabolicGrading, node: usize, r: usize) -> Result<Self> {
        let d = &sc.datum;
        let nm = &cc.nilpotent;
        let j = node - 1;
        if !g.is_crossed(j) || r == 0 {
            return Err(Error::InvalidOrders(format!("node {node} with order {r}")));
        }
        let gens: Vec<usize> = nm.degree_indices(1).into_iter().filter(|&a| nm.roots[a].0[j] == 1).collect();
        let monomials = commutative_monomials(&gens, r);
        let pbw = nm.pbw_basis(r);
        let v0 = cc.v_indices(0);
        let k0 = v0.len();
        let ident0 = Matrix::<F>::identity(k0);

        let mut sym = Matrix::zeros(monomials.len(), pbw.len());
        for (row, m) in monomials.iter().enumerate() {
            for (w, c) in nm.symmetrise::<F>(m) {
                let p = pbw.index_of(&w).expect("symmetrisation stays in degree r");
                sym.set(row, p, c);
            }
        }
        let restriction = sym.kron(&ident0);

        let (hs, es, fs) = levi_generators(sc, g);
        let all: Vec<usize> = hs.iter().chain(&es).chain(&fs).copied().collect();
        let rho0 = |x: usize| cc.module.action[x].block(&v0, &v0);
        let mut source_actions = Vec::new();
        let mut target_actions = Vec::new();
        for &x in &all {
            let mut dp = Matrix::zeros(pbw.len(), pbw.len());
            for (col, w) in pbw.monomials.iter().enumerate() {
                for (v, c) in nm.derive_word::<F>(sc, x, w) {
                    dp.add_at(pbw.index_of(&v).unwrap(), col, c);
                }
            }
            let mut ds = Matrix::zeros(monomials.len(), monomials.len());
            for (col, m) in monomials.iter().enumerate() {
                for k in 0..m.len() {
                    for (b, c) in nm.ad(sc, x, m[k]) {
                        let mut v = m.clone();
                        v[k] = b;
                        v.sort_unstable();
                        let row = monomials.iter().position(|u| *u == v).expect("Levi preserves g_{-1,j}");
                        ds.add_at(row, col, F::from_int(c));
                    }
                }
            }
            let r0 = rho0(x);
            source_actions.push(dp.transpose().neg().kron(&ident0).add(&Matrix::identity(pbw.len()).kron(&r0)));
            target_actions.push(ds.transpose().neg().kron(&ident0).add(&Matrix::identity(monomials.len()).kron(&r0)));
        }

        // weights of target coordinates: functional on a monomial has the
        // negated monomial weight
        let weights: Vec<Weight> = monomials
            .iter()
            .flat_map(|m| {
                let base = m.iter().fold(Weight::zero(d.rank()), |acc, &a| acc.add(&d.root_to_weight(&nm.roots[a])));
                v0.iter().map(move |&k| base.add(&cc.module.weights[k]))
            })
            .collect();
        let raising: Vec<&Matrix<F>> = target_actions[hs.len()..hs.len() + es.len()].iter().collect();
        let lowering: Vec<&Matrix<F>> = target_actions[hs.len() + es.len()..].iter().collect();
        let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (k, w) in weights.iter().enumerate() {
            by_weight.entry(w.clone()).or_default().push(k);
        }
        let dim_t = weights.len();
        let mut singular: Vec<(Weight, Matrix<F>)> = Vec::new();
        for (w, idx) in &by_weight {
            let mut stacked = Matrix::zeros(0, idx.len());
            for e in &raising {
                stacked = stacked.vcat(&e.select_cols(idx));
            }
            let ker = stacked.kernel();
            if ker.cols() > 0 {
                let mut full = Matrix::zeros(dim_t, ker.cols());
                for (r, &k) in idx.iter().enumerate() {
                    for c in 0..ker.cols() {
                        full.set(k, c, ker.get(r, c).clone());
                    }
                }
                singular.push((w.clone(), full));
            }
        }
        let height = |w: &Weight| d.weight_to_root_coords(w).into_iter().fold(num_rational::BigRational::zero(), |a, b| a + b);
        let top = singular
            .iter()
            .enumerate()
            .max_by(|a, b| height(&a.1 .0).cmp(&height(&b.1 .0)))
            .map(|(k, _)| k)
            .ok_or_else(|| Error::Verification("no singular vectors".into()))?;
        if singular[top].1.cols() != 1 {
            return Err(Error::Verification("Cartan weight has multiplicity > 1".into()));
        }
        let cartan_basis = generate(&singular[top].1, &lowering);
        let mut others = Matrix::zeros(dim_t, 0);
        for (k, (_, s)) in singular.iter().enumerate() {
            if k != top {
                others = others.hcat(s);
            }
        }
        let complement = generate(&others, &lowering);
        let frame = cartan_basis.hcat(&complement);
        let inv = frame
            .inverse()
            .map_err(|_| Error::Verification(format!("isotypic pieces do not fill S^{r} (x) V_0")))?;
        let projector = cartan_basis.hcat(&Matrix::zeros(dim_t, complement.cols())).mul(&inv);
        let matrix = projector.mul(&restriction);
        Ok(Self {
            node,
            order: r,
            restriction,
            projector,
            matrix,
            cartan_basis,
            monomials,
            source_actions,
            target_actions,
        })
    }

    pub fn image_dim(&self) -> usize {
        self.cartan_basis.cols()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.image_dim()
    }

    /// `P a_src = a_tgt P` for every Levi generator.
    pub fn is_equivariant(&self) -> bool {
        self.source_actions
            .iter()
            .zip(&self.target_actions)
            .all(|(s, t)| self.matrix.mul(s) == t.mul(&self.matrix))
    }
}

/// Span of `start` closed under the given operators.
fn generate<F: Field>(start: &Matrix<F>, ops: &[&Matrix<F>]) -> Matrix<F> {
    let mut basis = start.column_basis();
    loop {
        let mut acc = basis.clone();
        for op in ops {
            acc = acc.hcat(&op.mul(&basis));
        }
        let next = acc.column_basis();
        if next.cols() == basis.cols() {
            return basis;
        }
        basis = next;
    }
}
