//! Characters of finite-dimensional irreducibles: Weyl dimension,
//! Freudenthal multiplicities and Racah-Speiser style decompositions.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{Root, RootDatum, Weight};

/// Which algebra a label refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Ambient,
    Levi,
}

/// Highest weight of an irreducible representation. Levi labels carry
/// coordinates on the uncrossed nodes only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub scope: Scope,
    pub weight: Weight,
}

impl IrrepLabel {
    pub fn ambient(w: Weight) -> Self {
        Self { scope: Scope::Ambient, weight: w }
    }

    pub fn levi(w: Weight) -> Self {
        Self { scope: Scope::Levi, weight: w }
    }
}

/// Cartan product: the label with highest weight `a + b`.
pub fn cartan_product_label(a: &IrrepLabel, b: &IrrepLabel) -> Result<IrrepLabel> {
    if a.scope != b.scope {
        return Err(Error::ScopeMismatch);
    }
    if a.weight.rank() != b.weight.rank() {
        return Err(Error::WeightLength { expected: a.weight.rank(), got: b.weight.rank() });
    }
    Ok(IrrepLabel { scope: a.scope, weight: a.weight.add(&b.weight) })
}

/// Weight multiplicities of a module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightTable {
    pub entries: BTreeMap<Weight, u64>,
}

impl WeightTable {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    /// Character of the tensor product.
    pub fn tensor(&self, other: &WeightTable) -> WeightTable {
        let mut entries = BTreeMap::new();
        for (a, m) in &self.entries {
            for (b, n) in &other.entries {
                *entries.entry(a.add(b)).or_insert(0) += m * n;
            }
        }
        WeightTable { entries }
    }

    /// Character of the dual module.
    pub fn dual(&self) -> WeightTable {
        WeightTable { entries: self.entries.iter().map(|(w, m)| (w.neg(), *m)).collect() }
    }
}

fn check_dominant(d: &RootDatum, w: &Weight) -> Result<()> {
    if w.rank() != d.rank() {
        return Err(Error::WeightLength { expected: d.rank(), got: w.rank() });
    }
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.0.clone()));
    }
    Ok(())
}

/// Weyl dimension formula.
pub fn weyl_dim(d: &RootDatum, w: &Weight) -> Result<BigUint> {
    check_dominant(d, w)?;
    let shifted = w.add(&d.rho);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for beta in &d.positive_roots {
        num *= d.pair_root(&shifted, beta);
        den *= d.pair_root(&d.rho, beta);
    }
    let q = num / den;
    Ok(q.to_biguint().expect("Weyl dimension is positive"))
}

/// Dominant weights of `L(w)` keyed by depth below `w`, each with the
/// simple-root coordinates of `w - mu`.
fn dominant_weights(d: &RootDatum, w: &Weight) -> Vec<(Weight, Root)> {
    let n = d.rank();
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut out = vec![(w.clone(), Root(vec![0; n]))];
    seen.insert(w.clone());
    let mut queue = VecDeque::from([(w.clone(), Root(vec![0; n]))]);
    while let Some((mu, depth)) = queue.pop_front() {
        for beta in &d.positive_roots {
            let nu = mu.sub(&d.root_to_weight(beta));
            if nu.is_dominant() && seen.insert(nu.clone()) {
                let dd = depth.add(beta);
                out.push((nu.clone(), dd.clone()));
                queue.push_back((nu, dd));
            }
        }
    }
    out.sort_by(|a, b| a.1.height().cmp(&b.1.height()).then_with(|| b.0.cmp(&a.0)));
    out
}

/// Multiplicities of the dominant weights of `L(w)` by Freudenthal's
/// recursion.
pub fn dominant_multiplicities(d: &RootDatum, w: &Weight) -> Result<BTreeMap<Weight, u64>> {
    check_dominant(d, w)?;
    let doms = dominant_weights(d, w);
    let shifted = w.add(&d.rho);
    let top = d.inner_product(&shifted, &shifted);
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    let lookup = |mult: &HashMap<Weight, u64>, nu: &Weight| -> u64 {
        let (dom, _) = d.to_dominant(nu);
        mult.get(&dom).copied().unwrap_or(0)
    };
    for (k, (mu, _)) in doms.iter().enumerate() {
        if k == 0 {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut acc = BigInt::zero();
        for beta in &d.positive_roots {
            let bw = d.root_to_weight(beta);
            let mut nu = mu.add(&bw);
            loop {
                let m = lookup(&mult, &nu);
                if m == 0 {
                    break;
                }
                acc += BigInt::from(m) * d.pair_root(&nu, beta);
                nu = nu.add(&bw);
            }
        }
        let mr = mu.add(&d.rho);
        let den = top.clone() - d.inner_product(&mr, &mr);
        let m = BigRational::from_integer(acc * 2) / den;
        if !m.is_integer() || m.is_negative() {
            return Err(Error::Construction(format!("non-integral multiplicity at {mu}")));
        }
        let m = m.to_integer().to_u64().expect("multiplicity fits in u64");
        if m > 0 {
            mult.insert(mu.clone(), m);
        }
    }
    Ok(mult.into_iter().collect())
}

/// Weyl group orbit of a dominant weight, by reflecting in walls it is not
/// fixed by.
pub fn orbit(d: &RootDatum, w: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::from([w.clone()]);
    let mut out = vec![w.clone()];
    let mut k = 0;
    while k < out.len() {
        let x = out[k].clone();
        for i in 0..d.rank() {
            if x.0[i] > 0 {
                let y = d.reflect_unchecked(i, &x);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
        }
        k += 1;
    }
    out
}

/// Full weight table of `L(w)`.
pub fn freudenthal_multiplicities(d: &RootDatum, w: &Weight) -> Result<WeightTable> {
    let dom = dominant_multiplicities(d, w)?;
    let mut entries = BTreeMap::new();
    for (mu, m) in dom {
        for nu in orbit(d, &mu) {
            entries.insert(nu, m);
        }
    }
    Ok(WeightTable { entries })
}

/// Decomposes a Weyl-invariant character into irreducibles by moving each
/// `nu + rho` into the dominant chamber with sign; walls cancel.
///
/// `nodes` selects the reflections in use: all nodes for the ambient
/// algebra, the uncrossed ones for a Levi factor acting on full weights.
pub fn decompose_character(d: &RootDatum, nodes: &[usize], chi: &WeightTable) -> BTreeMap<Weight, u64> {
    let mut signed: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in &chi.entries {
        let shifted = nu.add(&d.rho);
        let (dom, odd) = d.to_dominant_on(&shifted, nodes);
        if nodes.iter().any(|&i| dom.0[i] == 0) {
            continue;
        }
        let m = *m as i64;
        *signed.entry(dom.sub(&d.rho)).or_insert(0) += if odd { -m } else { m };
    }
    signed
        .into_iter()
        .filter(|(_, m)| *m != 0)
        .map(|(w, m)| {
            assert!(m > 0, "negative multiplicity in decomposition of a character");
            (w, m as u64)
        })
        .collect()
}

/// Klimyk's formula: weights of `b` added to the highest weight of `a`.
pub fn tensor_decompose(d: &RootDatum, a: &Weight, b: &Weight) -> Result<BTreeMap<Weight, u64>> {
    check_dominant(d, a)?;
    check_dominant(d, b)?;
    let (a, b) = if weyl_dim(d, a)? >= weyl_dim(d, b)? { (a, b) } else { (b, a) };
    let tb = freudenthal_multiplicities(d, b)?;
    let shifted = WeightTable { entries: tb.entries.iter().map(|(w, m)| (w.add(a), *m)).collect() };
    let all: Vec<usize> = (0..d.rank()).collect();
    Ok(decompose_character(d, &all, &shifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::from_type_str(s).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim(&datum("A1"), &w(&[5])).unwrap(), 6u32.into());
        assert_eq!(weyl_dim(&datum("C2"), &w(&[0, 1])).unwrap(), 5u32.into());
        assert_eq!(weyl_dim(&datum("C2"), &w(&[2, 0])).unwrap(), 10u32.into());
        assert_eq!(weyl_dim(&datum("E8"), &w(&[0, 0, 0, 0, 0, 0, 0, 0])).unwrap(), 1u32.into());
        assert_eq!(weyl_dim(&datum("E8"), &w(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), 248u32.into());
        assert_eq!(weyl_dim(&datum("G2"), &w(&[1, 0])).unwrap(), 7u32.into());
        assert_eq!(weyl_dim(&datum("F4"), &w(&[0, 0, 0, 1])).unwrap(), 26u32.into());
        assert!(weyl_dim(&datum("A2"), &w(&[1, -1])).is_err());
    }

    #[test]
    fn a1_table() {
        let t = freudenthal_multiplicities(&datum("A1"), &w(&[2])).unwrap();
        let expected: BTreeMap<Weight, u64> = [(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)].into_iter().collect();
        assert_eq!(t.entries, expected);
    }

    #[test]
    fn c2_omega2_table() {
        let t = freudenthal_multiplicities(&datum("C2"), &w(&[0, 1])).unwrap();
        assert_eq!(t.entries.len(), 5);
        assert!(t.entries.values().all(|&m| m == 1));
        assert_eq!(t.multiplicity(&w(&[0, 0])), 1);
    }

    #[test]
    fn adjoint_zero_weight_is_rank() {
        for (s, hw) in [("A3", vec![1, 0, 1]), ("C3", vec![2, 0, 0]), ("G2", vec![0, 1]), ("D4", vec![0, 1, 0, 0])] {
            let d = datum(s);
            let t = freudenthal_multiplicities(&d, &Weight(hw)).unwrap();
            assert_eq!(t.multiplicity(&Weight::zero(d.rank())), d.rank() as u64, "{s}");
            assert_eq!(t.total() as usize, d.dim());
        }
    }

    #[test]
    fn klimyk_examples() {
        let d = datum("A1");
        let got = tensor_decompose(&d, &w(&[1]), &w(&[1])).unwrap();
        assert_eq!(got, [(w(&[0]), 1), (w(&[2]), 1)].into_iter().collect());
        let d = datum("C2");
        let got = tensor_decompose(&d, &w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(got, [(w(&[0, 0]), 1), (w(&[0, 1]), 1), (w(&[2, 0]), 1)].into_iter().collect());
        let got = tensor_decompose(&d, &w(&[1, 1]), &w(&[0, 0])).unwrap();
        assert_eq!(got, [(w(&[1, 1]), 1)].into_iter().collect());
    }

    #[test]
    fn cartan_product() {
        let a = IrrepLabel::ambient(w(&[2]));
        let b = IrrepLabel::ambient(w(&[3]));
        assert_eq!(cartan_product_label(&a, &b).unwrap().weight, w(&[5]));
        assert_eq!(cartan_product_label(&a, &IrrepLabel::ambient(w(&[0]))).unwrap(), a);
        assert_eq!(cartan_product_label(&a, &IrrepLabel::levi(w(&[1]))), Err(Error::ScopeMismatch));
    }

    proptest! {
        #[test]
        fn freudenthal_total_is_weyl_dim(a in 0i64..3, b in 0i64..3, c in 0i64..2, ty in 0usize..4) {
            let s = ["A3", "B3", "C3", "G2"][ty];
            let d = datum(s);
            let mut v = vec![a, b, c];
            v.truncate(d.rank());
            let x = Weight(v);
            let t = freudenthal_multiplicities(&d, &x).unwrap();
            prop_assert_eq!(BigUint::from(t.total()), weyl_dim(&d, &x).unwrap());
            prop_assert_eq!(t.multiplicity(&x), 1);
            for (nu, m) in &t.entries {
                for i in 0..d.rank() {
                    prop_assert_eq!(t.multiplicity(&d.reflect_unchecked(i, nu)), *m);
                }
            }
        }

        #[test]
        fn tensor_preserves_dimension(a in 0i64..3, b in 0i64..2, c in 0i64..3, e in 0i64..2) {
            let d = datum("B2");
            let (x, y) = (Weight(vec![a, b]), Weight(vec![c, e]));
            let dec = tensor_decompose(&d, &x, &y).unwrap();
            let total: BigUint = dec.iter().map(|(w, m)| weyl_dim(&d, w).unwrap() * *m).sum();
            prop_assert_eq!(total, weyl_dim(&d, &x).unwrap() * weyl_dim(&d, &y).unwrap());
            prop_assert_eq!(dec.get(&x.add(&y)).copied(), Some(1));
        }
    }
}
