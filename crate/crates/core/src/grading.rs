//! Gradings of a simple Lie algebra by a set of crossed nodes.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::big;
use crate::root_system::{Root, RootDatum, Weight};
use crate::weights::weyl_dim;

/// The `|k|`-grading attached to a set of crossed nodes.
#[derive(Clone, Debug)]
pub struct ParabolicGrading {
    pub datum: RootDatum,
    /// Crossed nodes, 0-based, sorted.
    pub sigma: Vec<usize>,
    pub depth: usize,
    /// `dims[i + depth] = dim g_i` for `-depth <= i <= depth`.
    pub dims: Vec<usize>,
    /// Grading element in coweight coordinates (indicator of the crossed nodes).
    pub grading_element: Vec<BigRational>,
    /// Uncrossed nodes, 0-based, sorted.
    pub levi_ss_nodes: Vec<usize>,
    pub center_dim: usize,
    /// Semisimple part of the Levi factor, possibly reducible or of rank 0.
    pub levi: RootDatum,
    /// Value of the grading element on each fundamental weight.
    omega_eigen: Vec<BigRational>,
}

/// One irreducible summand `g_{-1,j}` of `g_{-1}` under the Levi factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviIrrepComponent {
    /// Crossed node, 1-based.
    pub node: usize,
    pub levi_weight: Weight,
    #[serde(with = "crate::decimal")]
    pub dim: BigUint,
}

impl ParabolicGrading {
    /// `sigma` holds 1-based Bourbaki node labels.
    pub fn new(datum: RootDatum, sigma: &[usize]) -> Result<Self> {
        let n = datum.rank();
        if sigma.is_empty() {
            return Err(Error::EmptySigma);
        }
        let mut s: Vec<usize> = Vec::with_capacity(sigma.len());
        for &i in sigma {
            if i == 0 || i > n {
                return Err(Error::NodeOutOfRange { index: i, rank: n });
            }
            if !s.contains(&(i - 1)) {
                s.push(i - 1);
            }
        }
        s.sort_unstable();
        let levi_ss_nodes: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
        let height = |r: &Root| -> i64 { s.iter().map(|&i| r.0[i]).sum() };
        let depth = datum.positive_roots.iter().map(&height).max().unwrap_or(0) as usize;
        let mut dims = vec![0usize; 2 * depth + 1];
        dims[depth] = n;
        for r in &datum.positive_roots {
            let h = height(r) as usize;
            dims[depth + h] += 1;
            dims[depth - h] += 1;
        }
        let grading_element = (0..n).map(|i| if s.contains(&i) { BigRational::one() } else { BigRational::zero() }).collect();
        let omega_eigen = (0..n)
            .map(|k| {
                let coords = datum.weight_to_root_coords(&Weight::fundamental(n, k));
                s.iter().fold(BigRational::zero(), |acc, &i| acc + coords[i].clone())
            })
            .collect();
        let levi = datum.subdatum(&levi_ss_nodes);
        Ok(Self {
            center_dim: s.len(),
            datum,
            sigma: s,
            depth,
            dims,
            grading_element,
            levi_ss_nodes,
            levi,
            omega_eigen,
        })
    }

    /// Crossed nodes as 1-based labels.
    pub fn sigma_labels(&self) -> Vec<usize> {
        self.sigma.iter().map(|i| i + 1).collect()
    }

    pub fn levi_labels(&self) -> Vec<usize> {
        self.levi_ss_nodes.iter().map(|i| i + 1).collect()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// `dim g_i`, zero outside `[-depth, depth]`.
    pub fn dim(&self, i: i64) -> usize {
        let k = self.depth as i64;
        if i < -k || i > k {
            0
        } else {
            self.dims[(i + k) as usize]
        }
    }

    pub fn is_crossed(&self, i: usize) -> bool {
        self.sigma.contains(&i)
    }

    /// Σ-height of a root lattice element without checking it is a root.
    pub fn height_of(&self, r: &Root) -> i64 {
        self.sigma.iter().map(|&i| r.0[i]).sum()
    }

    pub fn sigma_height(&self, r: &Root) -> Result<i64> {
        if r.0.len() != self.rank() || !self.datum.is_root(r) {
            return Err(Error::NotARoot(r.0.clone()));
        }
        Ok(self.height_of(r))
    }

    /// Heisenberg negative part: depth 2 with one-dimensional `g_{-2}`.
    pub fn is_contact(&self) -> bool {
        self.depth == 2 && self.dim(-2) == 1
    }

    /// Eigenvalue of the grading element on a weight.
    pub fn eigenvalue(&self, w: &Weight) -> BigRational {
        w.0.iter()
            .zip(&self.omega_eigen)
            .filter(|(c, _)| **c != 0)
            .fold(BigRational::zero(), |acc, (c, e)| acc + e.clone() * big(*c))
    }

    /// Restriction of a full weight to the uncrossed nodes.
    pub fn restrict(&self, w: &Weight) -> Weight {
        w.restrict(&self.levi_ss_nodes)
    }

    /// Extends a Levi weight by zeros on the crossed nodes.
    pub fn extend(&self, w: &Weight) -> Weight {
        let mut out = vec![0; self.rank()];
        for (k, &i) in self.levi_ss_nodes.iter().enumerate() {
            out[i] = w.0[k];
        }
        Weight(out)
    }

    /// Irreducible Levi summands of `g_{-1}`, one per crossed node, with
    /// highest weight `-a_j` restricted to the uncrossed nodes.
    pub fn g_minus1_decomposition(&self) -> Vec<LeviIrrepComponent> {
        self.sigma
            .iter()
            .map(|&j| {
                let minus = self.datum.root_to_weight(&self.datum.simple_root(j)).neg();
                let levi_weight = self.restrict(&minus);
                let dim = weyl_dim(&self.levi, &levi_weight).expect("restricted -a_j is Levi dominant");
                LeviIrrepComponent { node: j + 1, levi_weight, dim }
            })
            .collect()
    }

    /// `dim U_{-i}(g_-)` as the coefficient of `q^i` in
    /// `prod_j (1 - q^j)^{-dim g_{-j}}`.
    pub fn dim_u_minus(&self, i: usize) -> BigUint {
        self.dim_u_minus_series(i).pop().expect("series has i + 1 terms")
    }

    /// Coefficients `dim U_0, ..., dim U_{-i}`.
    pub fn dim_u_minus_series(&self, i: usize) -> Vec<BigUint> {
        let mut series = vec![BigUint::zero(); i + 1];
        series[0] = BigUint::one();
        for j in 1..=self.depth {
            for _ in 0..self.dim(-(j as i64)) {
                // multiply by 1/(1 - q^j)
                for t in j..=i {
                    let prev = series[t - j].clone();
                    series[t] += prev;
                }
            }
        }
        series
    }

    /// Dimension of the weighted `r`-jet fiber of a bundle of rank `dim_e`.
    pub fn weighted_jet_fiber_dim(&self, r: usize, dim_e: usize) -> BigUint {
        self.dim_u_minus_series(r).into_iter().sum::<BigUint>() * BigUint::from(dim_e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grading(s: &str, sigma: &[usize]) -> ParabolicGrading {
        ParabolicGrading::new(RootDatum::from_type_str(s).unwrap(), sigma).unwrap()
    }

    /// Counts exponent vectors over a graded basis directly.
    fn pbw_count(degrees: &[usize], i: usize) -> u64 {
        fn go(degrees: &[usize], i: usize) -> u64 {
            match degrees.split_first() {
                None => u64::from(i == 0),
                Some((&d, rest)) => (0..=i / d).map(|a| go(rest, i - a * d)).sum(),
            }
        }
        go(degrees, i)
    }

    fn degrees(g: &ParabolicGrading) -> Vec<usize> {
        (1..=g.depth).flat_map(|j| std::iter::repeat(j).take(g.dim(-(j as i64)))).collect()
    }

    #[test]
    fn heights() {
        let g = grading("C2", &[1]);
        assert_eq!(g.sigma_height(&Root(vec![2, 1])).unwrap(), 2);
        assert_eq!(g.sigma_height(&Root(vec![0, 1])).unwrap(), 0);
        assert!(g.sigma_height(&Root(vec![1, 2])).is_err());
        let g = grading("A2", &[1, 2]);
        assert_eq!(g.sigma_height(&Root(vec![1, 1])).unwrap(), 2);
        assert_eq!(g.sigma_height(&Root(vec![-1, -1])).unwrap(), -2);
    }

    #[test]
    fn contact_gradings_of_type_c() {
        for n in 1..=5 {
            let g = grading(&format!("C{}", n + 1), &[1]);
            assert_eq!(g.depth, 2);
            assert_eq!(g.dim(-1), 2 * n);
            assert_eq!(g.dim(-2), 1);
            assert!(g.is_contact());
        }
    }

    #[test]
    fn small_gradings() {
        let g = grading("A1", &[1]);
        assert_eq!(g.dims, vec![1, 1, 1]);
        assert!(!g.is_contact());
        let g = grading("A2", &[1]);
        assert_eq!((g.depth, g.dim(-1), g.dim(0)), (1, 2, 4));
        let g = grading("A2", &[1, 2]);
        assert_eq!((g.depth, g.center_dim), (2, 2));
        assert!(ParabolicGrading::new(RootDatum::from_type_str("A2").unwrap(), &[]).is_err());
        assert!(ParabolicGrading::new(RootDatum::from_type_str("A2").unwrap(), &[3]).is_err());
    }

    #[test]
    fn eigenvalues_on_roots_are_heights() {
        let g = grading("B3", &[1, 3]);
        for r in &g.datum.positive_roots {
            let e = g.eigenvalue(&g.datum.root_to_weight(r));
            assert_eq!(e, big(g.height_of(r)));
        }
    }

    #[test]
    fn g_minus1_components() {
        let g = grading("C2", &[1]);
        let c = g.g_minus1_decomposition();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].levi_weight, Weight(vec![1]));
        assert_eq!(c[0].dim, 2u32.into());
        let g = grading("A2", &[1, 2]);
        let c = g.g_minus1_decomposition();
        assert_eq!(c.iter().map(|x| x.dim.clone()).collect::<Vec<_>>(), vec![1u32.into(), 1u32.into()]);
        let g = grading("D4", &[1, 2, 3, 4]);
        assert_eq!(g.g_minus1_decomposition().len(), 4);
        for s in ["B4", "E6", "F4", "C4"] {
            for sigma in [vec![1], vec![2], vec![1, 3]] {
                let g = grading(s, &sigma);
                let total: BigUint = g.g_minus1_decomposition().into_iter().map(|c| c.dim).sum();
                assert_eq!(total, BigUint::from(g.dim(-1)), "{s} {sigma:?}");
            }
        }
    }

    #[test]
    fn heisenberg_enveloping_dims() {
        let g = grading("C2", &[1]);
        assert_eq!(g.dim_u_minus(0), 1u32.into());
        assert_eq!(g.dim_u_minus(2), 4u32.into());
        assert_eq!(g.dim_u_minus(3), 6u32.into());
        assert_eq!(g.weighted_jet_fiber_dim(2, 1), 7u32.into());
        assert_eq!(g.weighted_jet_fiber_dim(3, 2), 26u32.into());
        assert_eq!(g.weighted_jet_fiber_dim(0, 5), 5u32.into());
    }

    #[test]
    fn generating_function_matches_enumeration() {
        for (s, sigma) in [("C2", vec![1]), ("A2", vec![1, 2]), ("B3", vec![2]), ("G2", vec![2])] {
            let g = grading(s, &sigma);
            let deg = degrees(&g);
            for i in 0..=10 {
                assert_eq!(g.dim_u_minus(i), BigUint::from(pbw_count(&deg, i)), "{s} {i}");
            }
        }
    }

    proptest! {
        #[test]
        fn grading_invariants(ty in 0usize..8, mask in 1u32..256) {
            let s = ["A4", "B4", "C4", "D5", "E6", "F4", "G2", "E7"][ty];
            let d = RootDatum::from_type_str(s).unwrap();
            let sigma: Vec<usize> = (1..=d.rank()).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            prop_assume!(!sigma.is_empty());
            let g = ParabolicGrading::new(d, &sigma).unwrap();
            let k = g.depth as i64;
            for i in -k..=k {
                prop_assert_eq!(g.dim(i), g.dim(-i));
            }
            prop_assert_eq!(g.dims.iter().sum::<usize>(), g.datum.dim());
            let height0 = g.datum.positive_roots.iter().filter(|r| g.height_of(r) == 0).count();
            prop_assert_eq!(g.dim(0), g.rank() + 2 * height0);
            prop_assert_eq!(g.center_dim, sigma.len());
            for j in 2..=k {
                prop_assert!(g.dim(-j) > 0);
                prop_assert!(g.dim(-j) <= g.dim(-1) * g.dim(-(j - 1)));
            }
        }
    }
}
