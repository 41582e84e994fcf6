//! Integral bilinear lattices given by Gram matrices.

use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::enumerate::{box_search, fincke_pohst};
use crate::error::{LatticeError, Result};
use crate::matrix::{congruence_diagonalize, Diagonalization, Int, IntMatrix};

/// Coordinates of a lattice element in the lattice's basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![Int::zero(); rank])
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = Int::one();
        v
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Max-norm of the coordinates.
    pub fn height(&self) -> Int {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn scaled(&self, s: &Int) -> Self {
        LatticeVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    /// `self + c·other`
    pub fn add_scaled(&self, c: &Int, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, "]")
    }
}

/// Standard lattice families for [`Lattice::standard`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardKind {
    /// Hyperbolic plane `[[0,1],[1,0]]`.
    U,
    A(usize),
    D(usize),
    /// `n ∈ {6, 7, 8}`.
    E(usize),
    Diag(Vec<Int>),
}

/// Signs of a congruence diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature { positive, negative, zero }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn is_definite(&self) -> bool {
        self.zero == 0 && (self.positive == 0 || self.negative == 0)
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature::new(self.positive + o.positive, self.negative + o.negative, self.zero + o.zero)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// Determinant and Smith invariants of a Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantData {
    /// Non-unit Smith invariant factors, ascending under divisibility. A
    /// degenerate form contributes trailing zeros, one per radical dimension.
    pub invariant_factors: Vec<Int>,
    pub determinant: Int,
}

/// A free integral lattice with a symmetric bilinear form.
#[derive(Clone)]
pub struct Lattice {
    gram: IntMatrix,
    labels: Option<Vec<String>>,
    diagonalization: OnceLock<Diagonalization>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram && self.labels == other.labels
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice").field("gram", &self.gram).field("labels", &self.labels).finish()
    }
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(LatticeError::Parameter(format!(
                "Gram matrix must be square, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::Parameter("Gram matrix is not symmetric".into()));
        }
        Ok(Lattice { gram, labels: None, diagonalization: OnceLock::new() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank() {
            return Err(LatticeError::Parameter(format!(
                "{} labels for a lattice of rank {}",
                labels.len(),
                self.rank()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The rank-0 lattice.
    pub fn empty() -> Self {
        Lattice { gram: IntMatrix::zeros(0, 0), labels: None, diagonalization: OnceLock::new() }
    }

    /// Standard Gram matrices (positive-definite Cartan convention for A/D/E),
    /// multiplied entrywise by `scale`.
    pub fn standard(kind: &StandardKind, scale: i64) -> Result<Self> {
        if scale == 0 {
            return Err(LatticeError::Parameter("scale must be nonzero".into()));
        }
        let (gram, prefix) = match kind {
            StandardKind::U => (IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]), "u"),
            StandardKind::A(n) => {
                if *n < 1 {
                    return Err(LatticeError::Parameter("A(n) needs n >= 1".into()));
                }
                let edges: Vec<(usize, usize)> = (1..*n).map(|i| (i - 1, i)).collect();
                (cartan(*n, &edges), "a")
            }
            StandardKind::D(n) => {
                if *n < 4 {
                    return Err(LatticeError::Parameter("D(n) needs n >= 4".into()));
                }
                let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
                edges.push((n - 3, n - 1));
                (cartan(*n, &edges), "d")
            }
            StandardKind::E(n) => {
                if !(6..=8).contains(n) {
                    return Err(LatticeError::Parameter("E(n) needs n in {6,7,8}".into()));
                }
                // Bourbaki numbering: 1-3-4-5-6-7-8 with 2 attached to 4
                let all = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
                let edges: Vec<_> = all.iter().copied().filter(|&(a, b)| a < *n && b < *n).collect();
                (cartan(*n, &edges), "e")
            }
            StandardKind::Diag(entries) => {
                let mut g = IntMatrix::zeros(entries.len(), entries.len());
                for (i, x) in entries.iter().enumerate() {
                    g[(i, i)] = x.clone();
                }
                (g, "b")
            }
        };
        let gram = gram.scaled(&Int::from(scale));
        let labels = (1..=gram.rows()).map(|i| format!("{prefix}{i}")).collect();
        Lattice::new(gram)?.with_labels(labels)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Orthogonal direct sum; labels concatenate (generated when missing).
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let gram = IntMatrix::block_diagonal(&self.gram, &other.gram);
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            (a, b) => {
                let fill = |l: &Option<Vec<String>>, n: usize, off: usize| {
                    l.clone().unwrap_or_else(|| (off..off + n).map(|i| format!("b{}", i + 1)).collect())
                };
                let mut all = fill(a, self.rank(), 0);
                all.extend(fill(b, other.rank(), self.rank()));
                Some(all)
            }
        };
        Lattice { gram, labels, diagonalization: OnceLock::new() }
    }

    /// Direct sum of `n` copies.
    pub fn power(&self, n: usize) -> Lattice {
        (0..n).fold(Lattice::empty(), |acc, _| acc.direct_sum(self))
    }

    pub fn check_vector(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(LatticeError::Usage(format!(
                "vector of length {} used in a lattice of rank {}",
                v.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn inner_product(&self, v: &LatticeVector, w: &LatticeVector) -> Result<Int> {
        self.check_vector(v)?;
        self.check_vector(w)?;
        Ok(self.pair(v, w))
    }

    /// Pairing `vᵀ·G·w` without the length check; panics on a rank mismatch.
    pub fn pair(&self, v: &LatticeVector, w: &LatticeVector) -> Int {
        let gw = self.gram.mul_vec(w.coords());
        v.coords().iter().zip(&gw).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()
    }

    pub fn square(&self, v: &LatticeVector) -> Result<Int> {
        self.inner_product(v, v)
    }

    /// `G·v`: the pairings of `v` with each basis vector.
    pub(crate) fn dual_coords(&self, v: &LatticeVector) -> Vec<Int> {
        self.gram.mul_vec(v.coords())
    }

    pub(crate) fn diagonalization(&self) -> &Diagonalization {
        self.diagonalization.get_or_init(|| congruence_diagonalize(&self.gram))
    }

    pub fn signature(&self) -> Signature {
        let d = &self.diagonalization().diagonal;
        Signature::new(
            d.iter().filter(|x| x.is_positive()).count(),
            d.iter().filter(|x| x.is_negative()).count(),
            d.iter().filter(|x| x.is_zero()).count(),
        )
    }

    pub fn determinant(&self) -> Int {
        self.gram.determinant()
    }

    pub fn discriminant(&self) -> DiscriminantData {
        let snf = self.gram.smith_normal_form(false);
        DiscriminantData { invariant_factors: snf.nontrivial_factors(), determinant: self.determinant() }
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn is_definite(&self) -> bool {
        self.signature().is_definite()
    }

    /// Saturated integral basis of the radical `ker(G)`.
    pub fn radical_basis(&self) -> Vec<LatticeVector> {
        let k = self.gram.integer_kernel();
        (0..k.cols()).map(|j| LatticeVector::new(k.column(j))).collect()
    }

    /// The saturated sublattice `{x : x·v = 0 for all v in vs}`.
    pub fn orthogonal_complement(&self, vs: &[LatticeVector]) -> Result<Sublattice> {
        for v in vs {
            self.check_vector(v)?;
        }
        let rows: Vec<Vec<Int>> = vs.iter().map(|v| self.dual_coords(v)).collect();
        let constraints = if rows.is_empty() {
            IntMatrix::zeros(0, self.rank())
        } else {
            IntMatrix::from_rows(rows).expect("rows share the lattice rank")
        };
        let embedding = constraints.integer_kernel();
        Ok(Sublattice::from_embedding(self, embedding))
    }

    /// All `v` with `v·v = square` and `max|vᵢ| ≤ height`, lexicographically
    /// ordered, both signs kept.
    ///
    /// Definite forms use Fincke–Pohst pruning; other forms run the bounded
    /// box. In an indefinite lattice the result is only ever the part of an
    /// infinite set inside the box.
    pub fn enumerate_roots(&self, square: &Int, height: u64) -> Result<Vec<LatticeVector>> {
        if square.is_zero() {
            return Err(LatticeError::Parameter("root square must be nonzero".into()));
        }
        let sig = self.signature();
        let vectors = if sig.is_definite() && self.rank() > 0 {
            let positive = sig.negative == 0;
            if positive != square.is_positive() {
                return Ok(Vec::new());
            }
            let (gram, bound) = if positive { (self.gram.clone(), square.clone()) } else { (self.gram.scaled(&Int::from(-1)), -square) };
            let h = Int::from(height);
            fincke_pohst(&gram, &bound)
                .into_iter()
                .filter(|x| x.iter().all(|c| c.abs() <= h))
                .filter(|x| crate::enumerate::quadratic(&gram, x) == bound)
                .collect()
        } else {
            box_search(&self.gram, square, height)
        };
        Ok(vectors.into_iter().map(LatticeVector::new).collect())
    }

    /// All nonzero vectors of square `value` in a definite lattice.
    pub fn vectors_of_square(&self, value: &Int) -> Result<Vec<LatticeVector>> {
        let sig = self.signature();
        if !sig.is_definite() {
            return Err(LatticeError::Unsupported("vector sets of fixed square are finite only for definite lattices".into()));
        }
        let positive = sig.negative == 0;
        if value.is_zero() || positive != value.is_positive() {
            return Ok(Vec::new());
        }
        let (gram, bound) = if positive { (self.gram.clone(), value.clone()) } else { (self.gram.scaled(&Int::from(-1)), -value) };
        Ok(fincke_pohst(&gram, &bound)
            .into_iter()
            .filter(|x| crate::enumerate::quadratic(&gram, x) == bound)
            .map(LatticeVector::new)
            .collect())
    }
}

fn cartan(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = Int::from(2);
    }
    for &(a, b) in edges {
        g[(a, b)] = Int::from(-1);
        g[(b, a)] = Int::from(-1);
    }
    g
}

/// A sublattice given by an integral basis expressed in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    /// The sublattice with its induced form, in its own basis.
    pub lattice: Lattice,
    /// `ambient_rank × sub_rank`; column `j` is the `j`-th basis vector.
    pub embedding: IntMatrix,
}

impl Sublattice {
    pub fn from_embedding(ambient: &Lattice, embedding: IntMatrix) -> Self {
        let gram = embedding.transpose().mul(&ambient.gram).mul(&embedding);
        let lattice = Lattice::new(gram).expect("induced form is symmetric");
        Sublattice { lattice, embedding }
    }

    /// The whole lattice, with the identity embedding.
    pub fn whole(ambient: &Lattice) -> Self {
        Sublattice { lattice: ambient.clone(), embedding: IntMatrix::identity(ambient.rank()) }
    }

    pub fn rank(&self) -> usize {
        self.embedding.cols()
    }

    pub fn ambient_rank(&self) -> usize {
        self.embedding.rows()
    }

    /// Basis vectors in ambient coordinates.
    pub fn generators(&self) -> Vec<LatticeVector> {
        (0..self.rank()).map(|j| LatticeVector::new(self.embedding.column(j))).collect()
    }

    pub fn embed(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector::new(self.embedding.mul_vec(v.coords()))
    }

    /// Coordinates of an ambient vector in the sublattice basis, if it lies in
    /// the sublattice.
    pub fn coordinates_of(&self, v: &LatticeVector) -> Option<LatticeVector> {
        if v.len() != self.ambient_rank() {
            return None;
        }
        self.embedding.solve_integer(v.coords()).map(LatticeVector::new)
    }

    /// Saturated in the ambient lattice: the embedding's Smith factors are all 1.
    pub fn is_saturated(&self) -> bool {
        let snf = self.embedding.smith_normal_form(false);
        snf.rank == self.rank() && snf.diagonal.iter().take(snf.rank).all(One::is_one)
    }
}
