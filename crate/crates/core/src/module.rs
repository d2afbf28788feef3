//! Irreducible highest-weight modules realized by exact matrices.
//!
//! The module is grown from a highest-weight vector by lowering operators.
//! A candidate vector `f_j b` at weight `mu != lambda` is zero in the
//! irreducible quotient exactly when every raising operator kills it, so
//! candidates are compared through their images under `e_1, ..., e_n`,
//! which are computed from already constructed data via
//! `e_i f_j b = f_j e_i b + delta_ij <wt(b), a_i^vee> b`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chevalley::StructureConstants;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::ParabolicGrading;
use crate::linalg::Matrix;
use crate::root_system::{RootDatum, Weight};
use crate::weights::{weyl_dim, IrrepLabel};

/// Default bound on module dimensions built by [`ModuleModel::build`].
pub const DEFAULT_SIZE_CAP: usize = 400;

type Sparse<F> = BTreeMap<usize, F>;

/// Chevalley generators `e_i`, `f_i` on a weight basis of `L(hw)`.
#[derive(Clone, Debug)]
pub struct Generators<F: Field> {
    pub weights: Vec<Weight>,
    pub e: Vec<Matrix<F>>,
    pub f: Vec<Matrix<F>>,
}

fn axpy<F: Field>(acc: &mut Sparse<F>, s: &F, x: &Sparse<F>) {
    for (k, v) in x {
        let entry = acc.entry(*k).or_insert_with(F::zero);
        *entry = entry.clone() + s.clone() * v.clone();
    }
    acc.retain(|_, v| !v.is_zero());
}

/// Builds the generators of `L(hw)`, failing once the dimension exceeds `cap`.
pub fn highest_weight_generators<F: Field>(d: &RootDatum, hw: &Weight, cap: usize) -> Result<Generators<F>> {
    let n = d.rank();
    if hw.rank() != n {
        return Err(Error::WeightLength { expected: n, got: hw.rank() });
    }
    if !hw.is_dominant() {
        return Err(Error::NotDominant(hw.0.clone()));
    }
    let alpha: Vec<Weight> = (0..n).map(|i| d.root_to_weight(&d.simple_root(i))).collect();
    let mut weights = vec![hw.clone()];
    // e_img[i][b], f_img[j][b] as sparse vectors in the basis
    let mut e_img: Vec<Vec<Sparse<F>>> = vec![vec![Sparse::new()]; n];
    let mut f_img: Vec<Vec<Sparse<F>>> = vec![Vec::new(); n];
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        // candidates f_j b grouped by weight, in a deterministic order
        let mut groups: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for &b in &layer {
            for j in 0..n {
                groups.entry(weights[b].sub(&alpha[j])).or_default().push((j, b));
            }
        }
        let mut images: HashMap<(usize, usize), Sparse<F>> = HashMap::new();
        let mut next = Vec::new();
        for (mu, cands) in groups.into_iter().rev() {
            // e_i (f_j b) for every candidate
            let sigs: Vec<Vec<Sparse<F>>> = cands
                .iter()
                .map(|&(j, b)| {
                    (0..n)
                        .map(|i| {
                            let mut out = Sparse::new();
                            for (k, c) in &e_img[i][b] {
                                axpy(&mut out, c, &f_img[j][*k]);
                            }
                            if i == j && weights[b].0[i] != 0 {
                                axpy(&mut out, &F::from_int(weights[b].0[i]), &Sparse::from([(b, F::one())]));
                            }
                            out
                        })
                        .collect()
                })
                .collect();
            let mut keys: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for s in &sigs {
                for (i, part) in s.iter().enumerate() {
                    for k in part.keys() {
                        let len = keys.len();
                        keys.entry((i, *k)).or_insert(len);
                    }
                }
            }
            let mut m = Matrix::<F>::zeros(keys.len(), cands.len());
            for (c, s) in sigs.iter().enumerate() {
                for (i, part) in s.iter().enumerate() {
                    for (k, v) in part {
                        m.set(keys[&(i, *k)], c, v.clone());
                    }
                }
            }
            let ech = m.rref();
            let mut new_index = Vec::with_capacity(ech.pivots.len());
            for &p in &ech.pivots {
                let idx = weights.len();
                if idx >= cap {
                    return Err(Error::SizeCap { dim: format!("> {cap}"), cap });
                }
                weights.push(mu.clone());
                for i in 0..n {
                    e_img[i].push(sigs[p][i].clone());
                }
                new_index.push(idx);
                next.push(idx);
            }
            for (c, &(j, b)) in cands.iter().enumerate() {
                let mut v = Sparse::new();
                for (row, &idx) in new_index.iter().enumerate() {
                    let coef = ech.reduced.get(row, c);
                    if !coef.is_zero() {
                        v.insert(idx, coef.clone());
                    }
                }
                images.insert((j, b), v);
            }
        }
        for ((j, b), v) in images {
            let fj = &mut f_img[j];
            if fj.len() <= b {
                fj.resize(b + 1, Sparse::new());
            }
            fj[b] = v;
        }
        layer = next;
    }
    let dim = weights.len();
    let dense = |imgs: &Vec<Sparse<F>>| {
        let mut m = Matrix::zeros(dim, dim);
        for (b, col) in imgs.iter().enumerate() {
            for (k, v) in col {
                m.set(*k, b, v.clone());
            }
        }
        m
    };
    Ok(Generators { e: e_img.iter().map(dense).collect(), f: f_img.iter().map(dense).collect(), weights })
}

/// Explicit irreducible module: weight basis and action matrices of every
/// basis element of the ambient algebra, in [`StructureConstants`] order.
#[derive(Clone, Debug)]
pub struct ModuleModel<F: Field> {
    pub label: IrrepLabel,
    pub weights: Vec<Weight>,
    pub action: Vec<Matrix<F>>,
}

impl<F: Field> ModuleModel<F> {
    pub fn build(sc: &StructureConstants, label: &IrrepLabel, cap: usize) -> Result<Self> {
        let d = &sc.datum;
        let expected = weyl_dim(d, &label.weight)?;
        if expected > BigUint::from(cap) {
            return Err(Error::SizeCap { dim: expected.to_string(), cap });
        }
        let gens = highest_weight_generators::<F>(d, &label.weight, cap)?;
        let action = sc.realize(&gens)?;
        Ok(Self { label: label.clone(), weights: gens.weights, action })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Grading-element eigenvalues shifted so that the lowest is 0.
    pub fn grades(&self, g: &ParabolicGrading) -> Vec<usize> {
        let eig: Vec<_> = self.weights.iter().map(|w| g.eigenvalue(w)).collect();
        let min = eig.iter().min().cloned().unwrap_or_else(num_rational::BigRational::zero);
        eig.into_iter()
            .map(|e| {
                let q = e - min.clone();
                assert!(q.is_integer(), "eigenvalues on an irreducible differ by integers");
                q.to_integer().to_usize().expect("grade fits in usize")
            })
            .collect()
    }

    /// Checks `[rho(a), rho(b)] = rho([a, b])` for all basis pairs and that
    /// weight tags are the Cartan eigenvalues. Returns the first failure.
    pub fn check_relations(&self, sc: &StructureConstants) -> std::result::Result<(), String> {
        let n = sc.datum.rank();
        for i in 0..n {
            for (k, w) in self.weights.iter().enumerate() {
                if *self.action[i].get(k, k) != F::from_int(w.0[i]) {
                    return Err(format!("weight tag {k} disagrees with h_{}", i + 1));
                }
            }
        }
        for a in 0..sc.dim() {
            for b in a + 1..sc.dim() {
                let lhs = self.action[a].commutator(&self.action[b]);
                let mut rhs = Matrix::zeros(self.dim(), self.dim());
                for &(c, coef) in sc.bracket(a, b) {
                    rhs = rhs.add(&self.action[c].scale(&F::from_int(coef)));
                }
                if lhs != rhs {
                    return Err(format!("bracket relation fails for basis pair ({a}, {b})"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct ExportedVector {
    weight: Vec<i64>,
    grade: Option<usize>,
}

#[derive(Serialize)]
struct ExportedMatrix {
    element: String,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<[String; 2]>>,
}

#[derive(Serialize)]
struct ExportedModule {
    schema: &'static str,
    lie_type: String,
    highest_weight: Vec<i64>,
    sign_convention: &'static str,
    basis: Vec<ExportedVector>,
    action: Vec<ExportedMatrix>,
}

impl<F: Field> ModuleModel<F> {
    /// JSON document `parabolica.module/1`: weight tags, optional grades,
    /// and dense action matrices with entries as `[numerator, denominator]`.
    pub fn to_json(&self, sc: &StructureConstants, g: Option<&ParabolicGrading>) -> serde_json::Value {
        let grades = g.map(|g| self.grades(g));
        let basis = self
            .weights
            .iter()
            .enumerate()
            .map(|(k, w)| ExportedVector { weight: w.0.clone(), grade: grades.as_ref().map(|v| v[k]) })
            .collect();
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(a, m)| ExportedMatrix {
                element: sc.element_name(a),
                rows: m.rows(),
                cols: m.cols(),
                entries: (0..m.rows())
                    .map(|r| {
                        m.row(r)
                            .iter()
                            .map(|x| {
                                let (p, q) = x.to_fraction_strings();
                                [p, q]
                            })
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        let doc = ExportedModule {
            schema: "parabolica.module/1",
            lie_type: sc.datum.lie_type.map(|t| t.to_string()).unwrap_or_default(),
            highest_weight: self.label.weight.0.clone(),
            sign_convention: crate::chevalley::SIGN_CONVENTION,
            basis,
            action,
        };
        serde_json::to_value(doc).expect("module export is serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::freudenthal_multiplicities;
    use crate::Rational;
    use proptest::prelude::*;

    fn sc(s: &str) -> StructureConstants {
        StructureConstants::build(RootDatum::from_type_str(s).unwrap()).unwrap()
    }

    fn model(sc: &StructureConstants, w: &[i64]) -> ModuleModel<Rational> {
        ModuleModel::build(sc, &IrrepLabel::ambient(Weight(w.to_vec())), DEFAULT_SIZE_CAP).unwrap()
    }

    #[test]
    fn sl2_three_dim() {
        let s = sc("A1");
        let m = model(&s, &[2]);
        assert_eq!(m.dim(), 3);
        let e = &m.action[1];
        assert!(!e.mul(e).is_zero());
        assert!(e.mul(e).mul(e).is_zero());
        m.check_relations(&s).unwrap();
    }

    #[test]
    fn trivial_module() {
        let s = sc("C2");
        let m = model(&s, &[0, 0]);
        assert_eq!(m.dim(), 1);
        assert!(m.action.iter().all(|a| a.is_zero()));
    }

    #[test]
    fn c2_weights_match_freudenthal() {
        let s = sc("C2");
        for w in [[0, 1], [1, 0], [1, 1], [2, 0], [0, 2]] {
            let m = model(&s, &w);
            let table = freudenthal_multiplicities(&s.datum, &Weight(w.to_vec())).unwrap();
            let mut counts: BTreeMap<Weight, u64> = BTreeMap::new();
            for x in &m.weights {
                *counts.entry(x.clone()).or_insert(0) += 1;
            }
            assert_eq!(counts, table.entries);
            m.check_relations(&s).unwrap();
        }
    }

    #[test]
    fn size_cap_enforced() {
        let s = sc("A2");
        let r = ModuleModel::<Rational>::build(&s, &IrrepLabel::ambient(Weight(vec![3, 3])), 10);
        assert!(matches!(r, Err(Error::SizeCap { .. })));
        let r = highest_weight_generators::<Rational>(&s.datum, &Weight(vec![3, 3]), 10);
        assert!(matches!(r, Err(Error::SizeCap { .. })));
    }

    #[test]
    fn small_scalar_type() {
        let s = sc("B2");
        let m = ModuleModel::<num_rational::Ratio<i64>>::build(&s, &IrrepLabel::ambient(Weight(vec![1, 1])), 64).unwrap();
        assert_eq!(m.dim(), 16);
        m.check_relations(&s).unwrap();
    }

    #[test]
    fn export_has_schema() {
        let s = sc("A1");
        let m = model(&s, &[1]);
        let v = m.to_json(&s, None);
        assert_eq!(v["schema"], "parabolica.module/1");
        assert_eq!(v["action"].as_array().unwrap().len(), 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn dimension_is_weyl_dim(ty in 0usize..4, a in 0i64..3, b in 0i64..2) {
            let name = ["A2", "B2", "C2", "G2"][ty];
            let s = sc(name);
            let w = Weight(vec![a, b]);
            let m = model(&s, &w.0);
            prop_assert_eq!(BigUint::from(m.dim()), weyl_dim(&s.datum, &w).unwrap());
            prop_assert!(m.check_relations(&s).is_ok());
        }
    }
}
