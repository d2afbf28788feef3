//! Root systems of the simple complex Lie algebras.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * nodes are numbered as in Bourbaki and exposed 1-based at interfaces,
//!   0-based internally;
//! * the Cartan matrix is `A[i][j] = 2<a_i, a_j> / <a_i, a_i>`, so the
//!   fundamental-weight coordinates of the simple root `a_j` form column `j`;
//! * the invariant inner product is normalized so that short roots have
//!   squared length 2, and `d[i] = <a_i, a_i> / 2` symmetrizes `A`.
//!
//! Roots are integer vectors in the simple-root basis, weights integer vectors
//! in the fundamental-weight basis. Every derived quantity is exact.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::big;
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }

    /// Number of positive roots from the classification.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Gram matrix of the simple roots with short roots of squared length 2.
    fn simple_gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut b = vec![vec![0i64; n]; n];
        let chain = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            b[i][j] = v;
            b[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                for i in 0..n.saturating_sub(1) {
                    chain(&mut b, i, i + 1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    b[i][i] = 4;
                }
                b[n - 1][n - 1] = 2;
                for i in 0..n - 1 {
                    chain(&mut b, i, i + 1, -2);
                }
            }
            Family::C => {
                for i in 0..n - 1 {
                    b[i][i] = 2;
                }
                b[n - 1][n - 1] = 4;
                for i in 0..n - 2 {
                    chain(&mut b, i, i + 1, -1);
                }
                chain(&mut b, n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                for i in 0..n - 2 {
                    chain(&mut b, i, i + 1, -1);
                }
                chain(&mut b, n - 3, n - 1, -1);
            }
            Family::E => {
                for i in 0..n {
                    b[i][i] = 2;
                }
                // Bourbaki: 1-3-4-5-6(-7(-8)), with 2 attached to 4
                chain(&mut b, 0, 2, -1);
                chain(&mut b, 1, 3, -1);
                for i in 2..n - 1 {
                    chain(&mut b, i, i + 1, -1);
                }
            }
            Family::F => {
                b[0][0] = 4;
                b[1][1] = 4;
                b[2][2] = 2;
                b[3][3] = 2;
                chain(&mut b, 0, 1, -2);
                chain(&mut b, 1, 2, -2);
                chain(&mut b, 2, 3, -1);
            }
            Family::G => {
                b[0][0] = 2;
                b[1][1] = 6;
                chain(&mut b, 0, 1, -3);
            }
        }
        b
    }
}

impl Family {
    pub fn letter(&self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::UnknownType(s.to_string()))?;
        LieType::new(family, rank)
    }
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scaled(-1)
    }

    pub fn restrict(&self, nodes: &[usize]) -> Weight {
        Weight(nodes.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Root datum of a semisimple algebra given by a Cartan matrix.
///
/// Simple algebras come from [`RootDatum::build`]; Levi subdiagrams, which
/// may be reducible or empty, from [`RootDatum::from_cartan`].
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub lie_type: Option<LieType>,
    /// 0-based node labels in the ambient diagram.
    pub nodes: Vec<usize>,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    pub positive_roots: Vec<Root>,
    pub rho: Weight,
    root_index: HashMap<Root, usize>,
    /// Row k: simple-root coordinates of the k-th fundamental weight.
    fund_in_roots: Vec<Vec<BigRational>>,
    /// Gram matrix of the fundamental weights.
    fund_gram: Vec<Vec<BigRational>>,
}

impl RootDatum {
    pub fn build(t: LieType) -> Self {
        let gram = t.simple_gram();
        let n = t.rank;
        let symmetrizer: Vec<i64> = (0..n).map(|i| gram[i][i] / 2).collect();
        let cartan = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();
        let mut d = Self::from_cartan(cartan, symmetrizer, (0..n).collect());
        d.lie_type = Some(t);
        d
    }

    pub fn from_type_str(s: &str) -> Result<Self> {
        Ok(Self::build(s.parse()?))
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>, symmetrizer: Vec<i64>, nodes: Vec<usize>) -> Self {
        let n = cartan.len();
        let positive_roots = enumerate_positive_roots(&cartan);
        let root_index = positive_roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        // alpha_j = sum_i A[i][j] omega_i, so omega = (A^T)^{-1} alpha
        let fund_in_roots = if n == 0 {
            Vec::new()
        } else {
            let at = Matrix::<BigRational>::from_int_rows(&cartan).transpose();
            let m = at.inverse().expect("Cartan matrix is invertible");
            (0..n).map(|k| m.row(k).to_vec()).collect::<Vec<_>>()
        };
        let fund_gram = (0..n)
            .map(|i| (0..n).map(|k| fund_in_roots[k][i].clone() * big(symmetrizer[i])).collect())
            .collect();
        Self {
            lie_type: None,
            nodes,
            cartan,
            symmetrizer,
            positive_roots,
            rho: Weight(vec![1; n]),
            root_index,
            fund_in_roots,
            fund_gram,
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.rank() + 2 * self.positive_roots.len()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        Root(c)
    }

    /// Fundamental-weight coordinates of a root lattice element.
    pub fn root_to_weight(&self, r: &Root) -> Weight {
        let n = self.rank();
        Weight((0..n).map(|i| (0..n).map(|j| self.cartan[i][j] * r.0[j]).sum()).collect())
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<BigRational> {
        let n = self.rank();
        let mut out = vec![BigRational::zero(); n];
        for (k, &c) in w.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..n {
                out[j] += self.fund_in_roots[k][j].clone() * big(c);
            }
        }
        out
    }

    pub fn positive_root_index(&self, r: &Root) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.root_index.contains_key(r) || self.root_index.contains_key(&r.neg())
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// `<x, beta>` for a weight and a root lattice element.
    pub fn pair_root(&self, x: &Weight, beta: &Root) -> i64 {
        x.0.iter().zip(&beta.0).zip(&self.symmetrizer).map(|((a, b), d)| a * b * d).sum()
    }

    pub fn root_norm(&self, beta: &Root) -> i64 {
        self.pair_root(&self.root_to_weight(beta), beta)
    }

    /// `<x, beta^vee>`.
    pub fn coroot_pairing(&self, x: &Weight, beta: &Root) -> i64 {
        let num = 2 * self.pair_root(x, beta);
        let den = self.root_norm(beta);
        debug_assert_eq!(num % den, 0, "integral weight pairs integrally with coroots");
        num / den
    }

    /// Exact invariant inner product of two weights.
    pub fn inner_product(&self, x: &Weight, y: &Weight) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &a) in x.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.0.iter().enumerate() {
                if b != 0 {
                    acc += self.fund_gram[i][j].clone() * BigRational::from_integer(BigInt::from(a * b));
                }
            }
        }
        acc
    }

    fn check_len(&self, x: &Weight) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::WeightLength { expected: self.rank(), got: x.rank() });
        }
        Ok(())
    }

    /// `s_i(x) = x - <x, a_i^vee> a_i` with `i` 0-based.
    pub fn simple_reflection(&self, i: usize, x: &Weight) -> Result<Weight> {
        if i >= self.rank() {
            return Err(Error::NodeOutOfRange { index: i + 1, rank: self.rank() });
        }
        self.check_len(x)?;
        Ok(self.reflect_unchecked(i, x))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, x: &Weight) -> Weight {
        let c = x.0[i];
        if c == 0 {
            return x.clone();
        }
        Weight(x.0.iter().enumerate().map(|(k, &v)| v - c * self.cartan[k][i]).collect())
    }

    /// Moves `x` into the dominant chamber by simple reflections.
    /// Returns the dominant representative and the parity of the word used.
    pub fn to_dominant(&self, x: &Weight) -> (Weight, bool) {
        self.to_dominant_on(x, &(0..self.rank()).collect::<Vec<_>>())
    }

    /// As [`to_dominant`](Self::to_dominant) but only reflecting in `nodes`;
    /// dominance is then only required on those coordinates.
    pub fn to_dominant_on(&self, x: &Weight, nodes: &[usize]) -> (Weight, bool) {
        let mut w = x.clone();
        let mut odd = false;
        while let Some(&i) = nodes.iter().find(|&&i| w.0[i] < 0) {
            w = self.reflect_unchecked(i, &w);
            odd = !odd;
        }
        (w, odd)
    }

    /// Highest weight of the dual representation, `-w0(x)`.
    pub fn dual_weight(&self, x: &Weight) -> Result<Weight> {
        self.check_len(x)?;
        if !x.is_dominant() {
            return Err(Error::NotDominant(x.0.clone()));
        }
        Ok(self.to_dominant(&x.neg()).0)
    }

    /// Node labels (1-based, ambient numbering) as a display string.
    pub fn node_labels(&self) -> Vec<usize> {
        self.nodes.iter().map(|i| i + 1).collect()
    }

    /// Principal sub-datum on a subset of nodes (0-based, local numbering).
    pub fn subdatum(&self, nodes: &[usize]) -> RootDatum {
        let cartan = nodes.iter().map(|&i| nodes.iter().map(|&j| self.cartan[i][j]).collect()).collect();
        let sym = nodes.iter().map(|&i| self.symmetrizer[i]).collect();
        RootDatum::from_cartan(cartan, sym, nodes.iter().map(|&i| self.nodes[i]).collect())
    }
}

/// Closure of the simple roots under adding simple roots along root strings.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut known: std::collections::HashSet<Root> = std::collections::HashSet::new();
    let mut layer: Vec<Root> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            Root(c)
        })
        .collect();
    let mut all = Vec::new();
    while !layer.is_empty() {
        for r in &layer {
            known.insert(r.clone());
        }
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // q: how far the a_i-string extends downwards from beta
                let mut q = 0;
                let mut probe = beta.clone();
                loop {
                    probe.0[i] -= 1;
                    if known.contains(&probe) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta.0[j] * cartan[i][j]).sum();
                if q - pairing > 0 {
                    let mut up = beta.clone();
                    up.0[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(layer);
        layer = next;
    }
    // graded by height, then descending lexicographic so that a_1 comes first
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    all
}
