//! Isometries, reflections and the real spinor norm.
//!
//! Matrices act on coordinate columns, so `a.compose(&b)` is `a ∘ b` and
//! applies `b` first.
//!
//! # Spinor-norm convention
//!
//! The real spinor norm is the character `O(L ⊗ ℝ) → {±1}` sending a
//! reflection in a vector `v` to the sign of `−(v·v)`. A reflection in a
//! negative-square vector (every `−2` root in particular) therefore has
//! spinor norm `+1`, and one in a positive-square vector has `−1`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{LatticeError, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::{Int, IntMatrix, Rat, RatMatrix};

/// Value of the real spinor norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinorSign {
    Plus,
    Minus,
}

impl SpinorSign {
    pub fn value(self) -> i8 {
        match self {
            SpinorSign::Plus => 1,
            SpinorSign::Minus => -1,
        }
    }

    /// Sign of a reflection in a vector of the given nonzero square.
    pub fn of_reflection_square(square: &Rat) -> SpinorSign {
        if square.is_negative() {
            SpinorSign::Plus
        } else {
            SpinorSign::Minus
        }
    }
}

impl std::ops::Mul for SpinorSign {
    type Output = SpinorSign;
    fn mul(self, o: SpinorSign) -> SpinorSign {
        if self == o {
            SpinorSign::Plus
        } else {
            SpinorSign::Minus
        }
    }
}

impl fmt::Display for SpinorSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinorSign::Plus => "+1",
            SpinorSign::Minus => "-1",
        })
    }
}

/// An integral isometry of a lattice.
#[derive(Clone)]
pub struct Isometry {
    matrix: IntMatrix,
    lattice: Arc<Lattice>,
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isometry({})", self.matrix)
    }
}

impl PartialEq for Isometry {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && same_lattice(&self.lattice, &other.lattice)
    }
}

impl Eq for Isometry {}

fn same_lattice(a: &Arc<Lattice>, b: &Arc<Lattice>) -> bool {
    Arc::ptr_eq(a, b) || a.gram() == b.gram()
}

/// `true` when `matrix` is square of the lattice's rank, `Mᵀ·G·M = G` and
/// `det M = ±1`.
pub fn is_isometry(lattice: &Lattice, matrix: &IntMatrix) -> bool {
    matrix.rows() == lattice.rank()
        && matrix.is_square()
        && matrix.transpose().mul(lattice.gram()).mul(matrix) == *lattice.gram()
        && matrix.determinant().abs().is_one()
}

impl Isometry {
    /// Checks the isometry conditions.
    pub fn new(lattice: Arc<Lattice>, matrix: IntMatrix) -> Result<Self> {
        if !is_isometry(&lattice, &matrix) {
            return Err(LatticeError::NotIsometry(format!("{matrix}")));
        }
        Ok(Isometry { matrix, lattice })
    }

    pub fn identity(lattice: Arc<Lattice>) -> Self {
        let matrix = IntMatrix::identity(lattice.rank());
        Isometry { matrix, lattice }
    }

    /// The reflection `x ↦ x − (2(x·v)/(v·v))·v`.
    pub fn reflection(lattice: &Arc<Lattice>, v: &LatticeVector) -> Result<Self> {
        lattice.check_vector(v)?;
        let sq = lattice.pair(v, v);
        if sq.is_zero() {
            return Err(LatticeError::IsotropicRoot(v.to_string()));
        }
        let gv = lattice.gram().mul_vec(v.coords());
        let n = lattice.rank();
        let mut matrix = IntMatrix::identity(n);
        // column j is the image of basis vector j
        for (j, pj) in gv.iter().enumerate() {
            let num: Int = pj * 2;
            if !num.is_multiple_of(&sq) {
                return Err(LatticeError::NotIntegralReflection(v.to_string()));
            }
            let c = num / &sq;
            if c.is_zero() {
                continue;
            }
            for (i, vi) in v.coords().iter().enumerate() {
                matrix[(i, j)] -= &c * vi;
            }
        }
        let iso = Isometry { matrix, lattice: Arc::clone(lattice) };
        debug_assert!(is_isometry(&iso.lattice, &iso.matrix));
        Ok(iso)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    fn check_same(&self, other: &Isometry) -> Result<()> {
        if !same_lattice(&self.lattice, &other.lattice) {
            return Err(LatticeError::Usage("isometries of different lattices".into()));
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        self.check_same(other)?;
        let matrix = self.matrix.mul(&other.matrix);
        debug_assert!(is_isometry(&self.lattice, &matrix));
        Ok(Isometry { matrix, lattice: Arc::clone(&self.lattice) })
    }

    pub fn inverse(&self) -> Isometry {
        let matrix = self.matrix.unimodular_inverse().expect("isometries are unimodular");
        debug_assert!(is_isometry(&self.lattice, &matrix));
        Isometry { matrix, lattice: Arc::clone(&self.lattice) }
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        self.lattice.check_vector(v)?;
        Ok(LatticeVector::new(self.matrix.mul_vec(v.coords())))
    }

    /// `σ_v ∘ self` for a root `v` with `v·v = −2`, as a rank-one update.
    pub fn then_reflect_root(&self, v: &LatticeVector) -> Result<Isometry> {
        self.lattice.check_vector(v)?;
        if self.lattice.pair(v, v) != Int::from(-2) {
            return Err(LatticeError::Parameter(format!("{v} is not a -2 root")));
        }
        // σ_v(M) = M + v·(vᵀ G M)
        let row = self.matrix.transpose_mul_vec(&self.lattice.gram().mul_vec(v.coords()));
        let mut matrix = self.matrix.clone();
        for (i, vi) in v.coords().iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    matrix[(i, j)] += vi * r;
                }
            }
        }
        Ok(Isometry { matrix, lattice: Arc::clone(&self.lattice) })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn fixes(&self, k: &LatticeVector) -> Result<bool> {
        Ok(self.apply(k)? == *k)
    }

    /// Real spinor norm.
    ///
    /// On a nondegenerate lattice this is read off the Wall form of `g`:
    /// on `W = im(1 − g)` put `[w, w'] = w·y'` where `(1 − g)y' = w'`. By
    /// Zassenhaus the spinor norm is the discriminant of this form, which
    /// with the sign convention above gives `(−1)^dim W · sign det [ , ]`.
    /// Taking `W`'s basis from pivot columns `J` of `M = 1 − g`, the Gram
    /// matrix of the Wall form is the `J×J` block of `Mᵀ·G`, so everything
    /// stays in integers. Degenerate lattices go through
    /// [`Isometry::real_spinor_norm_by_reflections`].
    pub fn real_spinor_norm(&self) -> SpinorSign {
        if self.lattice.signature().zero > 0 {
            return self.real_spinor_norm_by_reflections();
        }
        let n = self.lattice.rank();
        let m = IntMatrix::identity(n).add(&self.matrix.scaled(&Int::from(-1)));
        let pivots = m.pivot_columns();
        let mtg = m.transpose().mul(self.lattice.gram());
        let mut wall = IntMatrix::zeros(pivots.len(), pivots.len());
        for (a, &i) in pivots.iter().enumerate() {
            for (b, &j) in pivots.iter().enumerate() {
                wall[(a, b)] = mtg[(i, j)].clone();
            }
        }
        let det = wall.determinant();
        debug_assert!(!det.is_zero(), "Wall form is nondegenerate");
        let negative = det.is_negative() != (pivots.len() % 2 == 1);
        if negative {
            SpinorSign::Minus
        } else {
            SpinorSign::Plus
        }
    }

    /// Real spinor norm from an explicit Cartan–Dieudonné factorization of
    /// the induced isometry on `(L/radical) ⊗ ℚ`. Slower than
    /// [`Isometry::real_spinor_norm`] but defined for every lattice.
    pub fn real_spinor_norm_by_reflections(&self) -> SpinorSign {
        cartan_dieudonne(self).iter().fold(SpinorSign::Plus, |acc, sq| acc * SpinorSign::of_reflection_square(sq))
    }

    /// Membership in `O′_k`: fixes `k` and has spinor norm `+1`.
    pub fn is_in_o_prime_k(&self, k: &LatticeVector) -> Result<bool> {
        Ok(self.fixes(k)? && self.real_spinor_norm() == SpinorSign::Plus)
    }
}

/// The induced action on the nondegenerate quotient, in the orthogonal
/// basis of the lattice's congruence diagonalization: `(matrix, diagonal)`.
pub(crate) fn nondegenerate_action(iso: &Isometry) -> (RatMatrix, Vec<Rat>) {
    let diag = iso.lattice.diagonalization();
    let keep: Vec<usize> = (0..diag.diagonal.len()).filter(|&i| !diag.diagonal[i].is_zero()).collect();
    let full = diag.basis_inverse.mul_int(&iso.matrix).mul(&diag.basis);
    let mut a = RatMatrix::zeros(keep.len(), keep.len());
    for (r, &i) in keep.iter().enumerate() {
        for (c, &j) in keep.iter().enumerate() {
            a[(r, c)] = full[(i, j)].clone();
        }
    }
    (a, keep.iter().map(|&i| diag.diagonal[i].clone()).collect())
}

/// Squares of the reflection vectors in a Cartan–Dieudonné factorization.
///
/// Works on an orthogonal basis `w₁..wₛ` of the quotient. For each `wᵢ` with
/// `y = h(wᵢ) ≠ wᵢ`: if `y − wᵢ` is anisotropic, reflect in it (this sends
/// `y` to `wᵢ`); otherwise reflect in `y + wᵢ` and then in `wᵢ`. Every
/// reflection vector is orthogonal to `w₁..wᵢ₋₁`, which stay fixed, so `h`
/// ends at the identity.
fn cartan_dieudonne(iso: &Isometry) -> Vec<Rat> {
    let (mut h, d) = nondegenerate_action(iso);
    let s = d.len();
    let form = |x: &[Rat], y: &[Rat]| -> Rat {
        x.iter().zip(y).zip(&d).filter(|((a, b), _)| !a.is_zero() && !b.is_zero()).map(|((a, b), di)| a * b * di).sum()
    };
    let mut squares = Vec::new();
    for i in 0..s {
        let y = h.column(i);
        let mut e = vec![Rat::zero(); s];
        e[i] = Rat::one();
        if y == e {
            continue;
        }
        let diff: Vec<Rat> = y.iter().zip(&e).map(|(a, b)| a - b).collect();
        let q = form(&diff, &diff);
        if !q.is_zero() {
            reflect_left(&mut h, &diff, &q, &d);
            squares.push(q);
        } else {
            let sum: Vec<Rat> = y.iter().zip(&e).map(|(a, b)| a + b).collect();
            let q2 = form(&sum, &sum);
            debug_assert!(!q2.is_zero());
            reflect_left(&mut h, &sum, &q2, &d);
            squares.push(q2);
            let qe = d[i].clone();
            reflect_left(&mut h, &e, &qe, &d);
            squares.push(qe);
        }
        debug_assert!(h.column(i) == e);
    }
    debug_assert!(h == RatMatrix::identity(s));
    squares
}

/// `h ← σ_v ∘ h` with `σ_v(x) = x − (2(x·v)/q)·v` and the diagonal form `d`.
fn reflect_left(h: &mut RatMatrix, v: &[Rat], q: &Rat, d: &[Rat]) {
    let s = v.len();
    let two = Rat::from_integer(Int::from(2));
    let dv: Vec<Rat> = v.iter().zip(d).map(|(a, b)| a * b).collect();
    for j in 0..s {
        let mut pairing = Rat::zero();
        for (i, c) in dv.iter().enumerate() {
            if !c.is_zero() && !h[(i, j)].is_zero() {
                pairing += c * &h[(i, j)];
            }
        }
        if pairing.is_zero() {
            continue;
        }
        let coef = &two * pairing / q;
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                let x = &coef * vi;
                h[(i, j)] -= x;
            }
        }
    }
}

/// Largest definite rank accepted by [`enumerate_orthogonal_group`].
pub const MAX_ENUMERATION_RANK: usize = 8;

/// All isometries of a definite lattice of rank at most 8.
///
/// Backtracks over images of the basis vectors: basis vector `i` goes to a
/// vector of the same square whose pairings with the images already chosen
/// match the Gram matrix. Any complete assignment is an isometry. Output
/// order is the lexicographic order of the image tuples.
pub fn enumerate_orthogonal_group(lattice: &Arc<Lattice>) -> Result<Vec<Isometry>> {
    let n = lattice.rank();
    if !lattice.is_definite() {
        return Err(LatticeError::Unsupported("orthogonal group enumeration needs a definite lattice".into()));
    }
    if n > MAX_ENUMERATION_RANK {
        return Err(LatticeError::Unsupported(format!("rank {n} exceeds the enumeration cap {MAX_ENUMERATION_RANK}")));
    }
    let gram = lattice.gram();
    let mut by_square: HashMap<Int, Vec<LatticeVector>> = HashMap::new();
    let mut candidates = Vec::with_capacity(n);
    for i in 0..n {
        let sq = gram[(i, i)].clone();
        let list = match by_square.get(&sq) {
            Some(l) => l.clone(),
            None => {
                let l = lattice.vectors_of_square(&sq)?;
                by_square.insert(sq, l.clone());
                l
            }
        };
        candidates.push(list);
    }
    let mut out = Vec::new();
    let mut chosen: Vec<LatticeVector> = Vec::with_capacity(n);
    backtrack(lattice, &candidates, &mut chosen, &mut out);
    Ok(out)
}

fn backtrack(lattice: &Arc<Lattice>, candidates: &[Vec<LatticeVector>], chosen: &mut Vec<LatticeVector>, out: &mut Vec<Isometry>) {
    let i = chosen.len();
    let n = candidates.len();
    if i == n {
        let cols: Vec<&[Int]> = chosen.iter().map(|v| v.coords()).collect();
        let matrix = IntMatrix::from_columns(n, &cols);
        debug_assert!(is_isometry(lattice, &matrix));
        out.push(Isometry { matrix, lattice: Arc::clone(lattice) });
        return;
    }
    let gram = lattice.gram();
    for w in &candidates[i] {
        if chosen.iter().enumerate().all(|(j, u)| lattice.pair(w, u) == gram[(i, j)]) {
            chosen.push(w.clone());
            backtrack(lattice, candidates, chosen, out);
            chosen.pop();
        }
    }
}
