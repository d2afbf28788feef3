//! Lie algebra cochains `Lambda^n g_-* (x) V` for `n = 0, 1, 2` as exact
//! matrices, with the codifferential, Laplacian and `delta*`.
//!
//! Bases: `C0 = V`; `C1` has index `a * dim V + v` for `xi_a (x) e_v`;
//! `C2` has index `p * dim V + v` for `xi_a ^ xi_b (x) e_v` where `p` runs
//! over pairs `a < b`. `xi_a` is dual to `Y_a` and identified with
//! `Z_a = d_beta x_beta`. Grade of `e_v` is its eigenvalue above the
//! lowest one, so `V_0` is annihilated by `g_-` and the label of
//! `xi_a (x) e_v` is `deg(a) + grade(v)`.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::chevalley::StructureConstants;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::ParabolicGrading;
use crate::linalg::{is_direct_sum, Matrix};
use crate::module::ModuleModel;
use crate::nilpotent::NilpotentModel;

#[derive(Clone, Debug)]
pub struct CochainComplex<F: Field> {
    pub module: ModuleModel<F>,
    pub nilpotent: NilpotentModel,
    pub grades: Vec<usize>,
    pub labels0: Vec<usize>,
    pub labels1: Vec<usize>,
    pub labels2: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    /// `rho(Y_a)`.
    pub y: Vec<Matrix<F>>,
    /// `rho(Z_a)`.
    pub z: Vec<Matrix<F>>,
    /// `[Z_a, Z_b] = c Z_t` as `Some((t, c))`.
    pub z_bracket: Vec<Vec<Option<(usize, F)>>>,
    pub d0: Matrix<F>,
    pub d1: Matrix<F>,
}

#[derive(Clone, Debug)]
pub struct HodgeData<F: Field> {
    pub dstar1: Matrix<F>,
    pub dstar2: Matrix<F>,
    /// `d0 dstar1 + dstar2 d1` on `C1`.
    pub laplacian: Matrix<F>,
    pub ker_box: Matrix<F>,
    pub deltastar1: Matrix<F>,
    pub deltastar2: Matrix<F>,
    /// Bases of `im dstar1` in `C0` and `im dstar2` in `C1`.
    pub im_dstar1: Matrix<F>,
    pub im_dstar2: Matrix<F>,
}

impl<F: Field> CochainComplex<F> {
    pub fn build(sc: &StructureConstants, mm: &ModuleModel<F>, nm: &NilpotentModel, g: &ParabolicGrading) -> Self {
        let n = mm.dim();
        let m = nm.dim();
        let grades = mm.grades(g);
        let y: Vec<Matrix<F>> = nm.elements.iter().map(|&e| mm.action[e].clone()).collect();
        let z: Vec<Matrix<F>> = (0..m)
            .map(|a| mm.action[nm.dual_elements[a]].scale(&F::from_int(nm.dual_scale[a])))
            .collect();
        let mut z_bracket = vec![vec![None; m]; m];
        for a in 0..m {
            for b in 0..m {
                if let Some(&(t, c)) = sc.bracket(nm.dual_elements[a], nm.dual_elements[b]).first() {
                    let k = nm.dual_elements.iter().position(|&e| e == t).expect("p_+ is a subalgebra");
                    let coef = F::from_int(nm.dual_scale[a] * nm.dual_scale[b] * c) / F::from_int(nm.dual_scale[k]);
                    z_bracket[a][b] = Some((k, coef));
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
        let labels0 = grades.clone();
        let labels1 = (0..m).flat_map(|a| grades.iter().map(move |&v| nm.degrees[a] + v)).collect();
        let labels2 = pairs
            .iter()
            .flat_map(|&(a, b)| grades.iter().map(move |&v| nm.degrees[a] + nm.degrees[b] + v))
            .collect();

        let mut d0 = Matrix::zeros(m * n, n);
        for a in 0..m {
            for w in 0..n {
                for v in 0..n {
                    let x = y[a].get(w, v);
                    if !x.is_zero() {
                        d0.set(a * n + w, v, x.clone());
                    }
                }
            }
        }
        // d1(f)(Y_b ^ Y_c) = Y_b f(Y_c) - Y_c f(Y_b) - f([Y_b, Y_c])
        let mut d1 = Matrix::zeros(pairs.len() * n, m * n);
        for (p, &(b, c)) in pairs.iter().enumerate() {
            for v in 0..n {
                for w in 0..n {
                    let yb = y[b].get(w, v);
                    if !yb.is_zero() {
                        d1.add_at(p * n + w, c * n + v, yb.clone());
                    }
                    let yc = y[c].get(w, v);
                    if !yc.is_zero() {
                        d1.add_at(p * n + w, b * n + v, -yc.clone());
                    }
                }
                if let Some((t, k)) = nm.bracket[b][c] {
                    d1.add_at(p * n + v, t * n + v, -F::from_int(k));
                }
            }
        }
        Self {
            module: mm.clone(),
            nilpotent: nm.clone(),
            grades,
            labels0,
            labels1,
            labels2,
            pairs,
            y,
            z,
            z_bracket,
            d0,
            d1,
        }
    }

    pub fn v_dim(&self) -> usize {
        self.module.dim()
    }

    /// Basis indices of `V_i`.
    pub fn v_indices(&self, i: usize) -> Vec<usize> {
        (0..self.v_dim()).filter(|&v| self.grades[v] == i).collect()
    }

    /// Largest grade `N`.
    pub fn top_grade(&self) -> usize {
        self.grades.iter().copied().max().unwrap_or(0)
    }

    /// `dstar1: C1 -> C0` and `dstar2: C2 -> C1`.
    pub fn partial_star(&self) -> (Matrix<F>, Matrix<F>) {
        let n = self.v_dim();
        let m = self.nilpotent.dim();
        let mut s1 = Matrix::zeros(n, m * n);
        for a in 0..m {
            for w in 0..n {
                for v in 0..n {
                    let x = self.z[a].get(w, v);
                    if !x.is_zero() {
                        s1.set(w, a * n + v, -x.clone());
                    }
                }
            }
        }
        // Z_a ^ Z_b (x) v -> -Z_b (x) Z_a v + Z_a (x) Z_b v - [Z_a, Z_b] (x) v
        let mut s2 = Matrix::zeros(m * n, self.pairs.len() * n);
        for (p, &(a, b)) in self.pairs.iter().enumerate() {
            for v in 0..n {
                let col = p * n + v;
                for w in 0..n {
                    let za = self.z[a].get(w, v);
                    if !za.is_zero() {
                        s2.add_at(b * n + w, col, -za.clone());
                    }
                    let zb = self.z[b].get(w, v);
                    if !zb.is_zero() {
                        s2.add_at(a * n + w, col, zb.clone());
                    }
                }
                if let Some((t, c)) = &self.z_bracket[a][b] {
                    s2.add_at(t * n + v, col, -c.clone());
                }
            }
        }
        (s1, s2)
    }

    /// `dim H^0` by rank.
    pub fn h0_dim(&self) -> usize {
        self.v_dim() - self.d0.rank()
    }

    /// `dim H^1` by rank.
    pub fn h1_dim(&self) -> usize {
        self.d1.cols() - self.d1.rank() - self.d0.rank()
    }

    /// `phi_i: V_i -> U_{-i}* (x) V_0`, `v -> (u -> -u^T v)`. Rows are
    /// `(PBW monomial, V_0 basis vector)` pairs, columns the basis of `V_i`.
    pub fn phi_matrix(&self, i: usize) -> Matrix<F> {
        let nm = &self.nilpotent;
        let pbw = nm.pbw_basis(i);
        let v0 = self.v_indices(0);
        let vi = self.v_indices(i);
        let cols = self.unit_columns(&vi);
        let mut out = Matrix::zeros(pbw.len() * v0.len(), vi.len());
        for (p, w) in pbw.monomials.iter().enumerate() {
            let img = self.apply_expr(&nm.transpose::<F>(w), &cols);
            for (k, &r) in v0.iter().enumerate() {
                for c in 0..vi.len() {
                    let x = img.get(r, c);
                    if !x.is_zero() {
                        out.set(p * v0.len() + k, c, -x.clone());
                    }
                }
            }
        }
        out
    }

    /// Columns `e_v` of the identity for the given indices.
    pub fn unit_columns(&self, idx: &[usize]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.v_dim(), idx.len());
        for (c, &v) in idx.iter().enumerate() {
            m.set(v, c, F::one());
        }
        m
    }

    /// Applies a combination of words to each column of `x`.
    pub fn apply_expr(&self, expr: &BTreeMap<Vec<usize>, F>, x: &Matrix<F>) -> Matrix<F> {
        let mut total = Matrix::zeros(x.rows(), x.cols());
        for (w, c) in expr {
            total = total.add(&self.apply_word(w, x).scale(c));
        }
        total
    }

    /// `Y_{w_1} ... Y_{w_p}` applied to each column of `x`.
    pub fn apply_word(&self, w: &[usize], x: &Matrix<F>) -> Matrix<F> {
        let mut out = x.clone();
        for &a in w.iter().rev() {
            out = self.y[a].mul(&out);
        }
        out
    }

    /// Exactness of `0 -> V_i -> (g_-* (x) V)_i -> (Lambda^2 g_-* (x) V)_i`
    /// for `0 < i < r`. Returns the first failing `i`.
    pub fn exactness_check(&self, r: usize) -> std::result::Result<(), usize> {
        for i in 1..r {
            let vi = self.v_indices(i);
            let c1: Vec<usize> = label_indices(&self.labels1, i);
            let c2: Vec<usize> = label_indices(&self.labels2, i);
            let d0i = self.d0.block(&c1, &vi);
            let d1i = self.d1.block(&c2, &c1);
            let rank0 = d0i.rank();
            if rank0 != vi.len() || c1.len() - d1i.rank() != rank0 {
                return Err(i);
            }
        }
        Ok(())
    }
}

pub(crate) fn label_indices(labels: &[usize], i: usize) -> Vec<usize> {
    (0..labels.len()).filter(|&k| labels[k] == i).collect()
}

/// `delta*` for `d: C_k -> C_{k+1}` and `dstar: C_{k+1} -> C_k`: the
/// inverse of `d` restricted to `im dstar`, extended by zero on
/// `ker dstar`.
fn delta_star<F: Field>(d: &Matrix<F>, dstar: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let b = dstar.column_basis();
    let k = dstar.kernel();
    let frame = d.mul(&b).hcat(&k);
    let inv = frame.inverse().map_err(|_| {
        Error::Verification(format!(
            "im(d) and ker(d*) are not complementary: {} + {} columns in dimension {}",
            b.cols(),
            k.cols(),
            frame.rows()
        ))
    })?;
    let lift = b.hcat(&Matrix::zeros(b.rows(), k.cols()));
    Ok((lift.mul(&inv), b))
}

impl<F: Field> HodgeData<F> {
    pub fn compute(cc: &CochainComplex<F>) -> Result<Self> {
        let (dstar1, dstar2) = cc.partial_star();
        let laplacian = cc.d0.mul(&dstar1).add(&dstar2.mul(&cc.d1));
        let ker_box = laplacian.kernel();
        let (deltastar1, im_dstar1) = delta_star(&cc.d0, &dstar1)?;
        let (deltastar2, im_dstar2) = delta_star(&cc.d1, &dstar2)?;
        Ok(Self { dstar1, dstar2, laplacian, ker_box, deltastar1, deltastar2, im_dstar1, im_dstar2 })
    }

    /// Dimension of `ker(box)` on `C1` per grading label.
    pub fn h1_location(&self, cc: &CochainComplex<F>) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        let labels: std::collections::BTreeSet<usize> = cc.labels1.iter().copied().collect();
        for l in labels {
            let idx = label_indices(&cc.labels1, l);
            let dim = idx.len() - self.laplacian.block(&idx, &idx).rank();
            if dim > 0 {
                out.insert(l, dim);
            }
        }
        out
    }

    /// The single grading label carrying `ker(box)`; mixed labels are an
    /// error.
    pub fn h1_location_check(&self, cc: &CochainComplex<F>) -> Result<usize> {
        if !block_diagonal(&self.laplacian, &cc.labels1, &cc.labels1) {
            return Err(Error::Verification("laplacian mixes grading labels".into()));
        }
        let loc = self.h1_location(cc);
        match loc.len() {
            1 => Ok(*loc.keys().next().unwrap()),
            0 => Err(Error::Verification("ker(box) is zero".into())),
            _ => Err(Error::Verification(format!("ker(box) spread over labels {:?}", loc.keys().collect::<Vec<_>>()))),
        }
    }

    /// `psi_j o phi_j = -id` on `V_j`; returns the first disagreeing column.
    pub fn splitting_symbol_check(&self, cc: &CochainComplex<F>, j: usize) -> std::result::Result<(), usize> {
        if j == 0 {
            return Ok(());
        }
        let n = cc.v_dim();
        let nm = &cc.nilpotent;
        let vj = cc.v_indices(j);
        let start = cc.unit_columns(&vj);
        let mut total = Matrix::zeros(n, vj.len());
        let words = nm.tensor_words(j);
        let max_len = words.iter().map(Vec::len).max().unwrap_or(0);
        for i in 1..=max_len {
            // F_i(w) = (-1)^(i-1) Y_{w_i} ... Y_{w_1} v on words of length i
            let sign = if i % 2 == 1 { F::one() } else { -F::one() };
            let mut level: BTreeMap<Vec<usize>, Matrix<F>> = words
                .iter()
                .filter(|w| w.len() == i)
                .map(|w| {
                    let rev: Vec<usize> = w.iter().rev().copied().collect();
                    (w.clone(), cc.apply_word(&rev, &start).scale(&sign))
                })
                .collect();
            for _ in 0..i {
                let mut next: BTreeMap<Vec<usize>, Matrix<F>> = BTreeMap::new();
                for (w, val) in &level {
                    let prefix = w[..w.len() - 1].to_vec();
                    let a = *w.last().unwrap();
                    let slot = next.entry(prefix).or_insert_with(|| Matrix::zeros(nm.dim() * n, vj.len()));
                    for r in 0..n {
                        for c in 0..vj.len() {
                            let x = val.get(r, c);
                            if !x.is_zero() {
                                slot.add_at(a * n + r, c, x.clone());
                            }
                        }
                    }
                }
                level = next.into_iter().map(|(p, m)| (p, self.deltastar1.mul(&m))).collect();
            }
            let contracted = level.remove(&Vec::new()).unwrap_or_else(|| Matrix::zeros(n, vj.len()));
            let term_sign = if i % 2 == 0 { F::one() } else { -F::one() };
            total = total.add(&contracted.scale(&term_sign));
        }
        let expected = start.neg();
        (0..vj.len()).find(|&c| total.column(c) != expected.column(c)).map_or(Ok(()), Err)
    }

    /// Structural identities of the complex and its Hodge data, as
    /// `(name, outcome)` pairs.
    /// Each entry carries the time in microseconds spent on it.
    pub fn structural_checks(&self, cc: &CochainComplex<F>) -> Vec<(&'static str, std::result::Result<(), String>, u64)> {
        let c1 = cc.d0.rows();
        let mut out = Vec::new();
        let mut clock = Instant::now();
        let mut push = |(name, res): (&'static str, std::result::Result<(), String>)| {
            out.push((name, res, clock.elapsed().as_micros() as u64));
            clock = Instant::now();
        };
        push(("d_squared_zero", ok_if(cc.d1.mul(&cc.d0).is_zero(), "d1 d0 != 0")));
        push(("dstar_squared_zero", ok_if(self.dstar1.mul(&self.dstar2).is_zero(), "dstar1 dstar2 != 0")));
        push((
            "deltastar_squared_zero",
            ok_if(self.deltastar1.mul(&self.deltastar2).is_zero(), "deltastar1 deltastar2 != 0"),
        ));
        let l0 = &cc.labels0;
        let l1 = &cc.labels1;
        let l2 = &cc.labels2;
        let graded = block_diagonal(&cc.d0, l1, l0)
            && block_diagonal(&cc.d1, l2, l1)
            && block_diagonal(&self.dstar1, l0, l1)
            && block_diagonal(&self.dstar2, l1, l2)
            && block_diagonal(&self.deltastar1, l0, l1)
            && block_diagonal(&self.deltastar2, l1, l2)
            && block_diagonal(&self.laplacian, l1, l1);
        push(("grading_preserved", ok_if(graded, "a map mixes grading labels")));

        let im_d0 = cc.d0.column_basis();
        let rank_d0 = im_d0.cols();
        let rank_s2 = self.im_dstar2.cols();
        let kb = self.ker_box.cols();
        push((
            "hodge_decomposition",
            ok_if(
                rank_d0 + rank_s2 + kb == c1 && is_direct_sum(&[&im_d0, &self.im_dstar2, &self.ker_box], c1),
                &format!("{rank_d0} + {rank_s2} + {kb} vs {c1}"),
            ),
        ));
        let ker_s1 = c1 - self.dstar1.rank();
        push((
            "ker_dstar_split",
            ok_if(
                ker_s1 == rank_s2 + kb && self.dstar1.mul(&self.ker_box).is_zero(),
                &format!("dim ker dstar1 {ker_s1} vs {rank_s2} + {kb}"),
            ),
        ));
        let ker_d1 = c1 - cc.d1.rank();
        push((
            "ker_d_split",
            ok_if(
                ker_d1 == rank_d0 + kb && cc.d1.mul(&self.ker_box).is_zero(),
                &format!("dim ker d1 {ker_d1} vs {rank_d0} + {kb}"),
            ),
        ));
        let v0 = cc.unit_columns(&cc.v_indices(0));
        push(("v0_is_ker_d0", ok_if(cc.d0.kernel().same_column_span(&v0), "ker d0 != V_0")));
        let inverse_ok = self.deltastar1.mul(&cc.d0).mul(&self.im_dstar1) == self.im_dstar1
            && self.deltastar2.mul(&cc.d1).mul(&self.im_dstar2) == self.im_dstar2
            && self.deltastar1.mul(&self.dstar1.kernel()).is_zero()
            && self.deltastar2.mul(&self.dstar2.kernel()).is_zero();
        push(("deltastar_inverts_d", ok_if(inverse_ok, "deltastar is not the inverse of d on im(deltastar)")));
        let phi1 = cc.phi_matrix(1);
        let rows: Vec<usize> = cc
            .nilpotent
            .degree_indices(1)
            .iter()
            .flat_map(|&a| cc.v_indices(0).into_iter().map(move |w| a * cc.v_dim() + w))
            .collect();
        let block = cc.d0.block(&rows, &cc.v_indices(1));
        push(("phi1_equals_d0_block", ok_if(phi1 == block, "phi_1 differs from the V_1 block of d0")));
        out
    }
}

fn ok_if(cond: bool, msg: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// Nonzero entries only connect equal labels.
pub fn block_diagonal<F: Field>(m: &Matrix<F>, row_labels: &[usize], col_labels: &[usize]) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| m.get(r, c).is_zero() || row_labels[r] == col_labels[c]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prolongation::{construct_v, kostant_h1};
    use crate::root_system::{RootDatum, Weight};
    use crate::weights::IrrepLabel;
    use crate::Rational;

    fn complex(s: &str, sigma: &[usize], v: &[i64]) -> (ParabolicGrading, CochainComplex<Rational>) {
        let d = RootDatum::from_type_str(s).unwrap();
        let sc = StructureConstants::build(d.clone()).unwrap();
        let g = ParabolicGrading::new(d, sigma).unwrap();
        let nm = NilpotentModel::build(&sc, &g);
        let mm = ModuleModel::build(&sc, &IrrepLabel::ambient(Weight(v.to_vec())), 400).unwrap();
        let cc = CochainComplex::build(&sc, &mm, &nm, &g);
        (g, cc)
    }

    #[test]
    fn trivial_module() {
        let (_, cc) = complex("C2", &[1], &[0, 0]);
        assert!(cc.d0.is_zero());
        assert_eq!(cc.h0_dim(), 1);
        let hd = HodgeData::compute(&cc).unwrap();
        assert!(hd.dstar1.is_zero());
        // H^1 with trivial coefficients is (g_- / [g_-, g_-])*
        assert_eq!(hd.ker_box.cols(), 2);
        assert_eq!(hd.h1_location_check(&cc).unwrap(), 1);
        for (name, res, _) in hd.structural_checks(&cc) {
            assert!(res.is_ok(), "{name}");
        }
    }

    #[test]
    fn borel_sl2() {
        for m in 0..=4 {
            let (_, cc) = complex("A1", &[1], &[m]);
            assert_eq!(cc.d0.rank(), m as usize);
            assert_eq!(cc.h0_dim(), 1);
            let hd = HodgeData::compute(&cc).unwrap();
            assert_eq!(hd.dstar1.rank(), m as usize);
            assert_eq!(hd.h1_location_check(&cc).unwrap(), m as usize + 1);
            assert_eq!(cc.exactness_check(m as usize + 1), Ok(()));
            for j in 1..=cc.top_grade() {
                assert_eq!(hd.splitting_symbol_check(&cc, j), Ok(()));
            }
        }
    }

    #[test]
    fn contact_c2_dim5() {
        let (g, cc) = complex("C2", &[1], &[0, 1]);
        assert_eq!(cc.v_dim(), 5);
        assert_eq!(cc.d1.rows(), 15);
        assert!(cc.d1.mul(&cc.d0).is_zero());
        let hd = HodgeData::compute(&cc).unwrap();
        assert!(hd.dstar1.mul(&hd.dstar2).is_zero());
        assert_eq!(hd.ker_box.cols(), 3);
        assert_eq!(hd.ker_box.cols(), cc.h1_dim());
        let deg = kostant_h1(&g, &cc.module.label).unwrap()[0].grading_degree;
        assert_eq!(hd.h1_location_check(&cc).unwrap() as i64, deg);
        assert_eq!(deg, 1);
        let phi1 = cc.phi_matrix(1);
        assert_eq!((phi1.rank(), phi1.rows()), (1, 4));
        assert_eq!(cc.phi_matrix(0), Matrix::identity(2).neg());
        for (name, res, _) in hd.structural_checks(&cc) {
            assert!(res.is_ok(), "{name}: {res:?}");
        }
        for j in 1..=2 {
            assert_eq!(hd.splitting_symbol_check(&cc, j), Ok(()));
        }
    }

    #[test]
    fn contact_c2_r2() {
        let d = RootDatum::from_type_str("C2").unwrap();
        let g = ParabolicGrading::new(d, &[1]).unwrap();
        let e = crate::prolongation::contact_e_label(&g, 1).unwrap();
        let v = construct_v(&g, &e, &BTreeMap::from([(1, 2)])).unwrap();
        let (_, cc) = complex("C2", &[1], &v.weight.0);
        assert_eq!(cc.v_dim(), 16);
        let hd = HodgeData::compute(&cc).unwrap();
        assert_eq!(hd.h1_location_check(&cc).unwrap(), 2);
        assert_eq!(cc.exactness_check(2), Ok(()));
        let phi1 = cc.phi_matrix(1);
        assert_eq!(phi1.rank(), phi1.rows());
        for j in 1..=cc.top_grade() {
            assert_eq!(hd.splitting_symbol_check(&cc, j), Ok(()), "j = {j}");
        }
    }

    #[test]
    fn a2_full_flag() {
        let (g, cc) = complex("A2", &[1, 2], &[1, 1]);
        let hd = HodgeData::compute(&cc).unwrap();
        for (name, res, _) in hd.structural_checks(&cc) {
            assert!(res.is_ok(), "{name}: {res:?}");
        }
        let h1 = kostant_h1(&g, &cc.module.label).unwrap();
        let total: usize = h1.iter().map(|e| e.dim.to_string().parse::<usize>().unwrap()).sum();
        assert_eq!(hd.ker_box.cols(), total);
        assert_eq!(cc.h1_dim(), total);
    }
}
