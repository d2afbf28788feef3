//! The prolongation module `V[E, r]`, Kostant's `H^0`/`H^1` and the
//! solution-space bounds derived from them.
//!
//! Convention: Kostant's theorem is applied on the dual side. For a module
//! `V` with highest weight `v`, let `mu = dual(v)` be the highest weight of
//! `V*`; cohomology labels are computed from `mu` and dualized over the
//! Levi factor at the end, so that returned labels describe `H^*(g_-, V)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::ParabolicGrading;
use crate::root_system::Weight;
use crate::weights::{decompose_character, freudenthal_multiplicities, weyl_dim, IrrepLabel, Scope, WeightTable};

/// Dimensions of the grading-element eigenspaces `V_0, ..., V_N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingDecomposition {
    pub dims: Vec<u64>,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Entry {
    pub label: IrrepLabel,
    #[serde(with = "crate::decimal")]
    pub dim: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Entry {
    /// Crossed node, 1-based.
    pub node: usize,
    pub label: IrrepLabel,
    #[serde(with = "crate::decimal")]
    pub dim: BigUint,
    pub grading_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub h0: H0Entry,
    pub h1: Vec<H1Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionBound {
    pub v_label: IrrepLabel,
    #[serde(with = "crate::decimal")]
    pub bound: BigUint,
    pub n: usize,
}

/// Orders `r_j` keyed by 1-based crossed node.
pub type Orders = BTreeMap<usize, usize>;

fn expect_scope(label: &IrrepLabel, scope: Scope, len: usize) -> Result<()> {
    if label.scope != scope {
        return Err(Error::ScopeMismatch);
    }
    if label.weight.rank() != len {
        return Err(Error::WeightLength { expected: len, got: label.weight.rank() });
    }
    if !label.weight.is_dominant() {
        return Err(Error::NotDominant(label.weight.0.clone()));
    }
    Ok(())
}

/// Dual over the Levi factor of a weight on the uncrossed nodes.
pub fn levi_dual(g: &ParabolicGrading, w: &Weight) -> Result<Weight> {
    g.levi.dual_weight(w)
}

/// Complete orders for every crossed node; missing nodes get order 1.
pub fn resolve_orders(g: &ParabolicGrading, orders: &Orders) -> Result<Vec<usize>> {
    for (&j, &r) in orders {
        if j == 0 || !g.is_crossed(j - 1) {
            return Err(Error::InvalidOrders(format!("node {j} is not crossed")));
        }
        if r == 0 {
            return Err(Error::InvalidOrders(format!("order at node {j} must be at least 1")));
        }
    }
    Ok(g.sigma.iter().map(|&j| orders.get(&(j + 1)).copied().unwrap_or(1)).collect())
}

/// Highest weight of `V[E, (r_j)]`: the dual of
/// `lambda + sum_j (r_j - 1) omega_j` with `lambda` the Levi dual of `E`.
pub fn construct_v(g: &ParabolicGrading, e_label: &IrrepLabel, orders: &Orders) -> Result<IrrepLabel> {
    expect_scope(e_label, Scope::Levi, g.levi_ss_nodes.len())?;
    let rs = resolve_orders(g, orders)?;
    let mu = dual_side_weight(g, &e_label.weight, &rs)?;
    Ok(IrrepLabel::ambient(g.datum.dual_weight(&mu)?))
}

fn dual_side_weight(g: &ParabolicGrading, e: &Weight, rs: &[usize]) -> Result<Weight> {
    let mut mu = g.extend(&levi_dual(g, e)?);
    for (k, &j) in g.sigma.iter().enumerate() {
        mu.0[j] += rs[k] as i64 - 1;
    }
    Ok(mu)
}

/// Recovers `E` and the orders from the highest weight of `V`; inverse of
/// [`construct_v`].
pub fn e_and_orders_of(g: &ParabolicGrading, v_label: &IrrepLabel) -> Result<(IrrepLabel, Orders)> {
    expect_scope(v_label, Scope::Ambient, g.rank())?;
    let mu = g.datum.dual_weight(&v_label.weight)?;
    let e = levi_dual(g, &g.restrict(&mu))?;
    let orders = g.sigma.iter().map(|&j| (j + 1, mu.0[j] as usize + 1)).collect();
    Ok((IrrepLabel::levi(e), orders))
}

/// `H^0(g_-, V)` as a Levi representation.
pub fn kostant_h0(g: &ParabolicGrading, v_label: &IrrepLabel) -> Result<H0Entry> {
    expect_scope(v_label, Scope::Ambient, g.rank())?;
    let mu = g.datum.dual_weight(&v_label.weight)?;
    let w = levi_dual(g, &g.restrict(&mu))?;
    let dim = weyl_dim(&g.levi, &w)?;
    Ok(H0Entry { label: IrrepLabel::levi(w), dim })
}

/// Full weight `s_j(mu + rho) - rho` on the dual side.
fn affine_reflection(g: &ParabolicGrading, mu: &Weight, j: usize) -> Weight {
    let d = &g.datum;
    d.reflect_unchecked(j, &mu.add(&d.rho)).sub(&d.rho)
}

/// `H^1(g_-, V)`: one component per crossed node. The grading degree is
/// the label of the extreme vector `xi_j (x) v` with `xi_j` dual to
/// `x_{-a_j}` and `v` of weight `-s_j(mu)`, measured against the lowest
/// eigenvalue on `V`.
pub fn kostant_h1(g: &ParabolicGrading, v_label: &IrrepLabel) -> Result<Vec<H1Entry>> {
    expect_scope(v_label, Scope::Ambient, g.rank())?;
    let d = &g.datum;
    let mu = d.dual_weight(&v_label.weight)?;
    // lowest eigenvalue on V is attained at its lowest weight -mu
    let v_min = g.eigenvalue(&mu.neg());
    g.sigma
        .iter()
        .map(|&j| {
            let lam = affine_reflection(g, &mu, j);
            let w = levi_dual(g, &g.restrict(&lam))?;
            let dim = weyl_dim(&g.levi, &w)?;
            let alpha = d.root_to_weight(&d.simple_root(j));
            let extreme = d.reflect_unchecked(j, &mu).neg();
            let label = g.eigenvalue(&alpha) + g.eigenvalue(&extreme) - v_min.clone();
            let grading_degree = integral(&label)?;
            Ok(H1Entry { node: j + 1, label: IrrepLabel::levi(w), dim, grading_degree })
        })
        .collect()
}

pub fn cohomology(g: &ParabolicGrading, v_label: &IrrepLabel) -> Result<CohomologyReport> {
    Ok(CohomologyReport { h0: kostant_h0(g, v_label)?, h1: kostant_h1(g, v_label)? })
}

fn integral(q: &BigRational) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::Construction(format!("non-integral grading label {q}")));
    }
    q.to_integer().to_i64().ok_or_else(|| Error::Construction("grading label overflow".into()))
}

/// Character of `g_-` (negative roots of positive Σ-height).
pub fn g_minus_character(g: &ParabolicGrading) -> WeightTable {
    let d = &g.datum;
    let entries = d
        .positive_roots
        .iter()
        .filter(|r| g.height_of(r) > 0)
        .map(|r| (d.root_to_weight(r).neg(), 1))
        .collect();
    WeightTable { entries }
}

/// Multiplicity of each `H^1` component inside `g_- (x) V*`, decomposed
/// under the full Levi factor `g_0` (center included), on the dual side.
pub fn h1_multiplicities(g: &ParabolicGrading, v_label: &IrrepLabel) -> Result<Vec<(usize, u64)>> {
    expect_scope(v_label, Scope::Ambient, g.rank())?;
    let d = &g.datum;
    let mu = d.dual_weight(&v_label.weight)?;
    let chi = g_minus_character(g).tensor(&freudenthal_multiplicities(d, &mu)?);
    let dec = decompose_character(d, &g.levi_ss_nodes, &chi);
    Ok(g
        .sigma
        .iter()
        .map(|&j| (j + 1, dec.get(&affine_reflection(g, &mu, j)).copied().unwrap_or(0)))
        .collect())
}

/// Buckets the weights of `V` by grading-element eigenvalue.
pub fn grading_decomposition(g: &ParabolicGrading, v_label: &IrrepLabel) -> Result<GradingDecomposition> {
    expect_scope(v_label, Scope::Ambient, g.rank())?;
    let table = freudenthal_multiplicities(&g.datum, &v_label.weight)?;
    let eig: Vec<(BigRational, u64)> = table.entries.iter().map(|(w, m)| (g.eigenvalue(w), *m)).collect();
    let min = eig.iter().map(|(e, _)| e.clone()).min().unwrap_or_else(BigRational::zero);
    let mut buckets: BTreeMap<i64, u64> = BTreeMap::new();
    for (e, m) in eig {
        *buckets.entry(integral(&(e - min.clone()))?).or_insert(0) += m;
    }
    let n = buckets.keys().max().copied().unwrap_or(0) as usize;
    let mut dims = vec![0; n + 1];
    for (k, m) in buckets {
        dims[k as usize] = m;
    }
    Ok(GradingDecomposition { dims, n })
}

/// Upper bound on the solution space and the weighted jet order `N` that
/// determines solutions.
pub fn solution_space_bound(g: &ParabolicGrading, e_label: &IrrepLabel, orders: &Orders) -> Result<SolutionBound> {
    let v_label = construct_v(g, e_label, orders)?;
    let bound = weyl_dim(&g.datum, &v_label.weight)?;
    let n = top_eigen_gap(g, &v_label.weight)?;
    Ok(SolutionBound { v_label, bound, n })
}

/// `N` from the extreme weights: the highest weight has the largest and
/// the lowest weight the smallest eigenvalue.
pub fn top_eigen_gap(g: &ParabolicGrading, v: &Weight) -> Result<usize> {
    let low = g.datum.dual_weight(v)?.neg();
    Ok(integral(&(g.eigenvalue(v) - g.eigenvalue(&low)))? as usize)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Closed form for contact gradings of `C_{n+1}` with `E = S^t g_{-1}*`.
pub fn contact_bound_closed_form(n: u64, r: u64, t: u64) -> BigUint {
    let num = factorial(r + t + 2 * n - 1) * factorial(2 * n + t - 1) * r * (r + 2 * t + 2 * n);
    let den = factorial(r + t) * factorial(t) * factorial(2 * n + 1) * factorial(2 * n - 1);
    num / den
}

/// `S^t g_{-1}*` for the contact grading of `C_{n+1}` as a Levi label.
pub fn contact_e_label(g: &ParabolicGrading, t: usize) -> Result<IrrepLabel> {
    let comp = g.g_minus1_decomposition();
    let dual = levi_dual(g, &comp[0].levi_weight)?;
    Ok(IrrepLabel::levi(dual.scaled(t as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::RootDatum;

    fn grading(s: &str, sigma: &[usize]) -> ParabolicGrading {
        ParabolicGrading::new(RootDatum::from_type_str(s).unwrap(), sigma).unwrap()
    }

    fn orders(pairs: &[(usize, usize)]) -> Orders {
        pairs.iter().copied().collect()
    }

    /// Independent evaluation of the first closed form.
    fn first_closed_form(n: u64, r: u64) -> BigUint {
        factorial(2 * n + r) * factorial(2 * n) * r * (2 * n + 2 + r)
            / (factorial(r + 1) * factorial(2 * n + 1) * factorial(2 * n - 1))
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(contact_bound_closed_form(1, 1, 1), 5u32.into());
        assert_eq!(contact_bound_closed_form(1, 2, 1), 16u32.into());
        assert_eq!(contact_bound_closed_form(2, 1, 1), 14u32.into());
        assert_eq!(contact_bound_closed_form(1, 1, 2), 14u32.into());
        for n in 1..6 {
            for r in 1..6 {
                assert_eq!(contact_bound_closed_form(n, r, 1), first_closed_form(n, r));
            }
        }
    }

    #[test]
    fn contact_c2() {
        let g = grading("C2", &[1]);
        let e = contact_e_label(&g, 1).unwrap();
        assert_eq!(e.weight, Weight(vec![1]));
        let v1 = construct_v(&g, &e, &orders(&[(1, 1)])).unwrap();
        assert_eq!(weyl_dim(&g.datum, &v1.weight).unwrap(), 5u32.into());
        let v2 = construct_v(&g, &e, &orders(&[(1, 2)])).unwrap();
        assert_eq!(weyl_dim(&g.datum, &v2.weight).unwrap(), 16u32.into());
        assert_eq!(kostant_h0(&g, &v1).unwrap().dim, 2u32.into());
        let h1 = kostant_h1(&g, &v1).unwrap();
        assert_eq!((h1[0].dim.clone(), h1[0].grading_degree), (3u32.into(), 1));
        assert_eq!(kostant_h1(&g, &v2).unwrap()[0].grading_degree, 2);
        assert_eq!(grading_decomposition(&g, &v1).unwrap(), GradingDecomposition { dims: vec![2, 1, 2], n: 2 });
        let adj = IrrepLabel::ambient(Weight(vec![2, 0]));
        assert_eq!(grading_decomposition(&g, &adj).unwrap(), GradingDecomposition { dims: vec![1, 2, 4, 2, 1], n: 4 });
        let b = solution_space_bound(&g, &e, &orders(&[(1, 1)])).unwrap();
        assert_eq!((b.bound, b.n), (5u32.into(), 2));
    }

    #[test]
    fn other_contact_bounds() {
        let g = grading("C3", &[1]);
        let e = contact_e_label(&g, 1).unwrap();
        assert_eq!(solution_space_bound(&g, &e, &orders(&[(1, 1)])).unwrap().bound, 14u32.into());
        let g = grading("C2", &[1]);
        let e = contact_e_label(&g, 2).unwrap();
        assert_eq!(solution_space_bound(&g, &e, &orders(&[(1, 1)])).unwrap().bound, 14u32.into());
    }

    #[test]
    fn a1_borel() {
        let g = grading("A1", &[1]);
        for m in 0..5usize {
            let v = construct_v(&g, &IrrepLabel::levi(Weight(vec![])), &orders(&[(1, m + 1)])).unwrap();
            assert_eq!(v.weight, Weight(vec![m as i64]));
            assert_eq!(kostant_h0(&g, &v).unwrap().dim, 1u32.into());
            let h1 = kostant_h1(&g, &v).unwrap();
            assert_eq!((h1[0].dim.clone(), h1[0].grading_degree), (1u32.into(), m as i64 + 1));
        }
        let b = solution_space_bound(&g, &IrrepLabel::levi(Weight(vec![])), &orders(&[(1, 1)])).unwrap();
        assert_eq!((b.bound, b.n), (1u32.into(), 0));
    }

    #[test]
    fn trivial_module() {
        let g = grading("A2", &[1]);
        let v = IrrepLabel::ambient(Weight(vec![0, 0]));
        assert_eq!(grading_decomposition(&g, &v).unwrap(), GradingDecomposition { dims: vec![1], n: 0 });
        assert_eq!(kostant_h0(&g, &v).unwrap().dim, 1u32.into());
    }

    #[test]
    fn round_trip_and_h0() {
        let grid: Vec<(&str, Vec<usize>)> =
            vec![("A3", vec![2]), ("B3", vec![1]), ("C3", vec![1, 3]), ("G2", vec![1]), ("A2", vec![1, 2])];
        for (s, sigma) in grid {
            let g = grading(s, &sigma);
            let nl = g.levi_ss_nodes.len();
            for e in [vec![0; nl], vec![1; nl]] {
                for r in 1..3 {
                    let o: Orders = g.sigma_labels().into_iter().map(|j| (j, r)).collect();
                    let e = IrrepLabel::levi(Weight(e.clone()));
                    let v = construct_v(&g, &e, &o).unwrap();
                    let h0 = kostant_h0(&g, &v).unwrap();
                    assert_eq!(h0.label, e);
                    assert_eq!(grading_decomposition(&g, &v).unwrap().dims[0], h0.dim.to_u64().unwrap());
                    let (e2, o2) = e_and_orders_of(&g, &v).unwrap();
                    assert_eq!((e2, o2), (e.clone(), o.clone()));
                    for h in kostant_h1(&g, &v).unwrap() {
                        if sigma.len() == 1 {
                            assert_eq!(h.grading_degree, r as i64);
                        }
                    }
                    for (_, m) in h1_multiplicities(&g, &v).unwrap() {
                        assert_eq!(m, 1, "{s} {sigma:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_orders() {
        let g = grading("C2", &[1]);
        let e = IrrepLabel::levi(Weight(vec![1]));
        assert!(construct_v(&g, &e, &orders(&[(2, 1)])).is_err());
        assert!(construct_v(&g, &e, &orders(&[(1, 0)])).is_err());
        assert!(construct_v(&g, &IrrepLabel::ambient(Weight(vec![1])), &orders(&[])).is_err());
    }
}
