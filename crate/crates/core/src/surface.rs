//! Homology-lattice models of regular minimal elliptic surfaces and the
//! Milnor lattices of Brieskorn–Pham singularities.
//!
//! The model of `H₂(X)` for invariants `p_g ≥ 1, q = 0, χ = p_g + 1` is
//!
//! ```text
//! L_X = H ⊕ U^(2χ−2) ⊕ E8(−1)^χ,   H = span(e, g)
//! ```
//!
//! with `e` the primitive generator of the fibre line, `f = m·e`,
//! `f_i = (m/m_i)·e` and `k = s·e`, where `m = lcm(m_i)` and
//! `s = (χ−2)·m + Σ(m_i−1)·(m/m_i)`. The first plane `H` is the hyperbolic
//! plane `U` when `s` is even and the odd unimodular plane `[[0,1],[1,−1]]`
//! when `s` is odd: `k` must be characteristic (`k·x ≡ x·x mod 2`), so the
//! lattice is odd exactly when `s` is. `L' = {e, g}^⊥ = U^(2χ−2) ⊕ E8(−1)^χ`
//! is even unimodular in both cases.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::enumerate::{random_sparse_vector_of_square, SmallSupportVectors};
use crate::error::{LatticeError, Result};
use crate::lattice::{Lattice, LatticeVector, Signature, StandardKind, Sublattice};
use crate::matrix::{Int, IntMatrix};

/// A multiple fibre `m_i·f_i = f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipleFibre {
    pub multiplicity: u64,
    pub class: LatticeVector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceModel {
    pub lattice: Arc<Lattice>,
    pub pg: u64,
    pub q: u64,
    pub chi: u64,
    /// `lcm` of the multiplicities, 1 without multiple fibres.
    pub m: u64,
    pub f: LatticeVector,
    pub e: LatticeVector,
    /// The partner of `e` in the first plane, `e·g = 1`.
    pub g: LatticeVector,
    pub fibres: Vec<MultipleFibre>,
    pub k: LatticeVector,
    /// `k = k_scalar·e`.
    pub k_scalar: Int,
    /// Section class, only without multiple fibres.
    pub sigma: Option<LatticeVector>,
    /// Whether the first plane is the odd one.
    pub odd_plane: bool,
}

/// `(χ−2)·m + Σ(m_i−1)·(m/m_i)` with `m = lcm(m_i)`.
pub fn k_scalar(chi: u64, multiplicities: &[u64]) -> Int {
    let m = multiplicities.iter().fold(1u64, |a, &b| a.lcm(&b));
    let mut s = (Int::from(chi) - 2) * m;
    for &mi in multiplicities {
        s += Int::from((mi - 1) * (m / mi));
    }
    s
}

pub fn build_surface_model(pg: u64, multiplicities: &[u64]) -> Result<SurfaceModel> {
    if pg < 1 {
        return Err(LatticeError::Unsupported("the monodromy description needs positive geometric genus (pg >= 1)".into()));
    }
    if let Some(bad) = multiplicities.iter().find(|&&mi| mi < 2) {
        return Err(LatticeError::Parameter(format!("fibre multiplicities must be at least 2, got {bad}")));
    }
    let chi = pg + 1;
    let m = multiplicities.iter().fold(1u64, |a, &b| a.lcm(&b));
    let s = k_scalar(chi, multiplicities);
    let odd_plane = s.is_odd();

    let plane = if odd_plane { Lattice::from_i64_rows(&[&[0, 1], &[1, -1]])? } else { Lattice::standard(&StandardKind::U, 1)? };
    let u = Lattice::standard(&StandardKind::U, 1)?;
    let e8 = Lattice::standard(&StandardKind::E(8), -1)?;
    let n_u = (2 * chi - 2) as usize;
    let n_e8 = chi as usize;
    let gram = plane.direct_sum(&u.power(n_u)).direct_sum(&e8.power(n_e8));
    let mut labels = vec!["e".to_string(), "g".to_string()];
    for b in 1..=n_u {
        labels.push(format!("u{b}a"));
        labels.push(format!("u{b}b"));
    }
    for b in 1..=n_e8 {
        labels.extend((1..=8).map(|i| format!("x{b}_{i}")));
    }
    let lattice = Arc::new(gram.with_labels(labels)?);
    let n = lattice.rank();

    let e = LatticeVector::basis(n, 0);
    let g = LatticeVector::basis(n, 1);
    let f = e.scaled(&Int::from(m));
    let fibres = multiplicities
        .iter()
        .map(|&mi| MultipleFibre { multiplicity: mi, class: e.scaled(&Int::from(m / mi)) })
        .collect();
    let k = e.scaled(&s);
    let sigma = if multiplicities.is_empty() {
        // σ = g + t·e with σ² = g² + 2t = −χ
        let g2: i64 = if odd_plane { -1 } else { 0 };
        let t = (-(chi as i64) - g2) / 2;
        Some(g.add_scaled(&Int::from(t), &e))
    } else {
        None
    };
    let model = SurfaceModel { lattice, pg, q: 0, chi, m, f, e, g, fibres, k, k_scalar: s, sigma, odd_plane };
    let failures = model.invariant_failures();
    if !failures.is_empty() {
        return Err(LatticeError::Precondition(format!("model invariants failed: {}", failures.join("; "))));
    }
    Ok(model)
}

impl SurfaceModel {
    pub fn multiplicities(&self) -> Vec<u64> {
        self.fibres.iter().map(|fi| fi.multiplicity).collect()
    }

    pub fn is_k3(&self) -> bool {
        self.pg == 1 && self.fibres.is_empty()
    }

    /// Every model invariant that does not hold, as a readable message.
    pub fn invariant_failures(&self) -> Vec<String> {
        let l = &self.lattice;
        let chi = self.chi as usize;
        let mut out = Vec::new();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                out.push(what.to_string());
            }
        };
        check(self.chi == self.pg + 1 && self.q == 0, "chi = pg + 1, q = 0");
        check(l.rank() == 12 * chi - 2, "rank = 12 chi - 2");
        check(l.signature() == Signature::new(2 * chi - 1, 10 * chi - 1, 0), "signature (2chi-1, 10chi-1)");
        check(l.is_unimodular(), "unimodular");
        check(l.pair(&self.f, &self.f).is_zero(), "f.f = 0");
        check(self.f == self.e.scaled(&Int::from(self.m)), "f = m e");
        for fi in &self.fibres {
            check(fi.class.scaled(&Int::from(fi.multiplicity)) == self.f, "m_i f_i = f");
        }
        check(l.pair(&self.k, &self.k).is_zero() && l.pair(&self.k, &self.f).is_zero(), "k.k = 0 and k.f = 0");
        check(self.k == self.e.scaled(&self.k_scalar), "k = s e");
        // canonical bundle formula, evaluated as vectors
        let mut formula = self.f.scaled(&(Int::from(self.chi) - 2));
        for fi in &self.fibres {
            formula = formula.add_scaled(&Int::from(fi.multiplicity - 1), &fi.class);
        }
        check(formula == self.k, "k = (chi-2) f + sum (m_i-1) f_i");
        // Wu: k is characteristic
        check((0..l.rank()).all(|i| (l.pair(&self.k, &LatticeVector::basis(l.rank(), i)) - &l.gram()[(i, i)]).is_even()), "k characteristic");
        check(l.is_even() != self.odd_plane, "parity matches the first plane");
        match &self.sigma {
            Some(s) => {
                check(self.fibres.is_empty(), "section only without multiple fibres");
                check(l.pair(s, s) == Int::from(-(self.chi as i64)), "sigma.sigma = -chi");
                check(l.pair(s, &self.f) == Int::from(1), "sigma.f = 1");
            }
            None => check(!self.fibres.is_empty(), "section present without multiple fibres"),
        }
        out
    }

    /// `L' = {e, g}^⊥`, spanned by the basis vectors after the first plane.
    pub fn l_prime(&self) -> Sublattice {
        let n = self.lattice.rank();
        let mut emb = IntMatrix::zeros(n, n - 2);
        for j in 0..n - 2 {
            emb[(j + 2, j)] = Int::from(1);
        }
        Sublattice::from_embedding(&self.lattice, emb)
    }

    /// `k^⊥` with an explicit basis: everything when `k = 0`, else `e` followed
    /// by the basis of `L'`.
    pub fn canonical_complement(&self) -> Sublattice {
        if self.k.is_zero() {
            return Sublattice::whole(&self.lattice);
        }
        self.fibre_line_complement()
    }

    fn fibre_line_complement(&self) -> Sublattice {
        let n = self.lattice.rank();
        let mut emb = IntMatrix::zeros(n, n - 1);
        emb[(0, 0)] = Int::from(1);
        for j in 1..n - 1 {
            emb[(j + 1, j)] = Int::from(1);
        }
        Sublattice::from_embedding(&self.lattice, emb)
    }
}

/// `L = f^⊥`, its radical and the even unimodular `L'`.
#[derive(Clone, Debug)]
pub struct FibreComplement {
    pub l: Sublattice,
    /// Generator of the radical of `L`, in ambient coordinates.
    pub radical: LatticeVector,
    pub l_prime: Sublattice,
}

pub fn fibre_complement(s: &SurfaceModel) -> Result<FibreComplement> {
    let l = s.lattice.orthogonal_complement(std::slice::from_ref(&s.f))?;
    let rad = l.lattice.radical_basis();
    if l.rank() + 1 != s.lattice.rank() || rad.len() != 1 {
        return Err(LatticeError::Precondition(format!(
            "f-complement has rank {} and radical rank {}, expected {} and 1",
            l.rank(),
            rad.len(),
            s.lattice.rank() - 1
        )));
    }
    let mut radical = l.embed(&rad[0]);
    // normalize the sign so that the generator is +e
    if radical.coords().iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        radical = radical.neg();
    }
    if radical != s.e {
        return Err(LatticeError::Precondition(format!("radical of the f-complement is {radical}, not e")));
    }
    let l_prime = s.l_prime();
    Ok(FibreComplement { l, radical, l_prime })
}

/// Brieskorn–Pham singularity `x^a + y^b + z^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BPSingularity {
    pub exponents: [u64; 3],
}

impl BPSingularity {
    pub fn new(exponents: &[u64]) -> Result<Self> {
        let exponents: [u64; 3] = exponents
            .try_into()
            .map_err(|_| LatticeError::Unsupported(format!("surface singularities need exactly 3 exponents, got {}", exponents.len())))?;
        if exponents.iter().any(|&a| a < 2) {
            return Err(LatticeError::Parameter(format!("exponents must be at least 2, got {exponents:?}")));
        }
        Ok(BPSingularity { exponents })
    }

    /// `z² + y³ + x^(6k−1)`, of type `E_(12k−4)`.
    pub fn e_series(k: u64) -> Result<Self> {
        if k < 1 {
            return Err(LatticeError::Parameter("k must be at least 1".into()));
        }
        Self::new(&[6 * k - 1, 3, 2])
    }

    /// Milnor number `(a−1)(b−1)(c−1)`.
    pub fn mu(&self) -> u64 {
        self.exponents.iter().map(|a| a - 1).product()
    }
}

/// Sign `ε` in `S = ε·(V + Vᵀ)`. Of the sign/transpose variants this is the
/// one sending `(2,2,2)` to `⟨−2⟩` and `(3,2,2)` to `A2(−1)`.
pub const MILNOR_FORM_SIGN: i64 = -1;

/// `(a−1)×(a−1)` upper bidiagonal: 1 on the diagonal, −1 above it.
fn one_variable_seifert(a: u64) -> IntMatrix {
    let n = (a - 1) as usize;
    let mut v = IntMatrix::zeros(n, n);
    for i in 0..n {
        v[(i, i)] = Int::from(1);
        if i + 1 < n {
            v[(i, i + 1)] = Int::from(-1);
        }
    }
    v
}

/// Intersection form on the Pham basis: `V = V_a ⊗ V_b ⊗ V_c`,
/// `S = ε·(V + Vᵀ)`.
pub fn milnor_lattice(s: &BPSingularity) -> Lattice {
    let [a, b, c] = s.exponents;
    let v = one_variable_seifert(a).kron(&one_variable_seifert(b)).kron(&one_variable_seifert(c));
    let gram = v.add(&v.transpose()).scaled(&Int::from(MILNOR_FORM_SIGN));
    Lattice::new(gram).expect("V + Vᵀ is symmetric")
}

/// Invariant comparison between a Milnor lattice and a model's `L'`.
///
/// For indefinite even unimodular lattices equal invariants mean isometric,
/// so a match certifies an embedding of the Milnor lattice as `L'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorComparison {
    pub rank: (usize, usize),
    pub signature: (Signature, Signature),
    pub even: (bool, bool),
    pub determinant: (Int, Int),
}

impl MilnorComparison {
    pub fn invariants_match(&self) -> bool {
        self.rank.0 == self.rank.1 && self.signature.0 == self.signature.1 && self.even.0 == self.even.1 && self.determinant.0 == self.determinant.1
    }

    /// Whether the match also certifies isometry (indefinite even unimodular).
    pub fn certifies_isometry(&self) -> bool {
        self.invariants_match() && self.even.0 && self.determinant.0.abs() == Int::from(1) && !self.signature.0.is_definite()
    }
}

pub fn embed_milnor(s: &SurfaceModel, m: &Lattice) -> MilnorComparison {
    let lp = s.l_prime().lattice;
    MilnorComparison {
        rank: (m.rank(), lp.rank()),
        signature: (m.signature(), lp.signature()),
        even: (m.is_even(), lp.is_even()),
        determinant: (m.determinant(), lp.determinant()),
    }
}

/// Bounds for the witness searches: candidates have coordinates in
/// `[−height, height]` and at most `max_support` nonzero entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub height: u64,
    pub max_support: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { height: 3, max_support: 3 }
    }
}

fn root_candidates<'a>(l: &'a Lattice, bounds: SearchBounds) -> impl Iterator<Item = LatticeVector> + 'a {
    let minus_two = Int::from(-2);
    SmallSupportVectors::new(l.rank(), bounds.height, bounds.max_support)
        .map(LatticeVector::new)
        .filter(move |v| l.pair(v, v) == minus_two)
}

/// Roots `α, α'` with `α + α' = target`.
pub fn find_splitting_roots(l: &Lattice, target: &LatticeVector, bounds: SearchBounds) -> Result<Option<(LatticeVector, LatticeVector)>> {
    l.check_vector(target)?;
    let t2 = l.pair(target, target);
    if t2.is_odd() {
        return Ok(None);
    }
    // (t − α)² = −2 ⇔ α·t = t²/2
    let want = t2 / 2;
    for alpha in root_candidates(l, bounds) {
        if l.pair(&alpha, target) != want {
            continue;
        }
        let alpha_p = target.sub(&alpha);
        if verify_splitting(l, target, &alpha, &alpha_p) {
            return Ok(Some((alpha, alpha_p)));
        }
    }
    Ok(None)
}

pub fn verify_splitting(l: &Lattice, target: &LatticeVector, a: &LatticeVector, ap: &LatticeVector) -> bool {
    let m2 = Int::from(-2);
    l.pair(a, a) == m2 && l.pair(ap, ap) == m2 && &a.add(ap) == target
}

pub fn find_fibre_splitting_roots(s: &SurfaceModel, bounds: SearchBounds) -> Option<(LatticeVector, LatticeVector)> {
    find_splitting_roots(&s.lattice, &s.f, bounds).expect("f belongs to the model")
}

/// Whether `target` lies in the span of `gens`.
pub fn in_span(gens: &[&LatticeVector], target: &LatticeVector) -> bool {
    let cols: Vec<&[Int]> = gens.iter().map(|v| v.coords()).collect();
    IntMatrix::from_columns(target.len(), &cols).solve_integer(target.coords()).is_some()
}

/// Roots `α_m, α'_m` with the class of the fibre of multiplicity `m_i` in
/// `span{α_m, α'_m, f}`.
pub fn find_multiple_fibre_span(s: &SurfaceModel, m_i: u64, bounds: SearchBounds) -> Result<Option<(LatticeVector, LatticeVector)>> {
    let fi = s
        .fibres
        .iter()
        .find(|fi| fi.multiplicity == m_i)
        .ok_or_else(|| LatticeError::Parameter(format!("{m_i} is not a fibre multiplicity of the model {:?}", s.multiplicities())))?;
    let l = &s.lattice;
    for a in root_candidates(l, bounds) {
        for ap in root_candidates(l, bounds) {
            if in_span(&[&a, &ap, &s.f], &fi.class) {
                return Ok(Some((a, ap)));
            }
        }
    }
    Ok(None)
}

pub fn verify_multiple_fibre_span(s: &SurfaceModel, m_i: u64, a: &LatticeVector, ap: &LatticeVector) -> bool {
    let m2 = Int::from(-2);
    let l = &s.lattice;
    s.fibres.iter().any(|fi| fi.multiplicity == m_i && in_span(&[a, ap, &s.f], &fi.class)) && l.pair(a, a) == m2 && l.pair(ap, ap) == m2
}

/// `α + α' = f`, `α·σ = 1`, `α'·σ = 0` with all three of square −2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Extras {
    pub alpha: LatticeVector,
    pub alpha_prime: LatticeVector,
    pub sigma: LatticeVector,
}

impl K3Extras {
    pub fn verify(&self, s: &SurfaceModel) -> bool {
        let l = &s.lattice;
        verify_splitting(l, &s.f, &self.alpha, &self.alpha_prime)
            && l.pair(&self.sigma, &self.sigma) == Int::from(-2)
            && l.pair(&self.alpha, &self.sigma) == Int::from(1)
            && l.pair(&self.alpha_prime, &self.sigma).is_zero()
    }
}

pub fn find_k3_extra_classes(s: &SurfaceModel, bounds: SearchBounds) -> Result<Option<K3Extras>> {
    if !s.is_k3() {
        return Err(LatticeError::Parameter(format!(
            "K3 classes need the K3 model (pg = 1, no multiple fibres), got pg = {} with multiplicities {:?}",
            s.pg,
            s.multiplicities()
        )));
    }
    let l = &s.lattice;
    let one = Int::from(1);
    for sigma in root_candidates(l, bounds).filter(|v| l.pair(v, &s.f) == one) {
        for alpha in root_candidates(l, bounds) {
            if !l.pair(&alpha, &s.f).is_zero() || l.pair(&alpha, &sigma) != one {
                continue;
            }
            let w = K3Extras { alpha_prime: s.f.sub(&alpha), alpha, sigma: sigma.clone() };
            if w.verify(s) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Up to `count` random roots of `sub`, in ambient coordinates. Each draw
/// starts from between 1 and 6 random sublattice coordinates.
pub fn sample_roots<R: Rng + ?Sized>(sub: &Sublattice, count: usize, height: u64, rng: &mut R) -> Vec<LatticeVector> {
    let minus_two = Int::from(-2);
    (0..count)
        .filter_map(|_| {
            let support = rng.gen_range(1..=6);
            random_sparse_vector_of_square(sub.lattice.gram(), &minus_two, height, support, 10_000, rng)
        })
        .map(|x| sub.embed(&LatticeVector::new(x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::Isometry;
    use rand::SeedableRng;

    const CONFIGS: &[(u64, &[u64])] = &[(1, &[]), (1, &[2]), (1, &[2, 3]), (1, &[2, 2]), (1, &[2, 3, 5]), (2, &[]), (2, &[2, 3]), (3, &[2, 2]), (4, &[2, 3, 5])];

    #[test]
    fn models_satisfy_invariants() {
        for &(pg, ms) in CONFIGS {
            let s = build_surface_model(pg, ms).unwrap();
            assert!(s.invariant_failures().is_empty(), "{pg} {ms:?}");
            assert_eq!(s.lattice.rank() as u64, 12 * (pg + 1) - 2);
        }
    }

    #[test]
    fn spot_values() {
        let k3 = build_surface_model(1, &[]).unwrap();
        assert!(k3.k.is_zero());
        assert!(k3.lattice.is_even());
        assert_eq!(k3.lattice.signature(), Signature::new(3, 19, 0));
        assert_eq!(k3.sigma.as_ref().map(|s| k3.lattice.pair(s, s)), Some(Int::from(-2)));

        let d = build_surface_model(1, &[2, 3]).unwrap();
        assert_eq!(d.m, 6);
        assert_eq!(d.f, d.e.scaled(&Int::from(6)));
        // npq − p − q with n = 2, p = 2, q = 3
        assert_eq!(d.k_scalar, Int::from(2 * 2 * 3 - 2 - 3));
        assert_eq!(d.fibres[0].class, d.e.scaled(&Int::from(3)));
        assert_eq!(d.fibres[1].class, d.e.scaled(&Int::from(2)));
        assert!(!d.lattice.is_even());
        assert!(d.sigma.is_none());

        let p2 = build_surface_model(2, &[]).unwrap();
        assert_eq!(p2.k, p2.f);
        assert_eq!(p2.lattice.signature(), Signature::new(5, 29, 0));

        assert!(matches!(build_surface_model(0, &[]), Err(LatticeError::Unsupported(_))));
        assert!(matches!(build_surface_model(1, &[1]), Err(LatticeError::Parameter(_))));
    }

    #[test]
    fn complements() {
        let k3 = build_surface_model(1, &[]).unwrap();
        let c = fibre_complement(&k3).unwrap();
        assert_eq!(c.l.rank(), 21);
        assert_eq!(c.radical, k3.e);
        assert_eq!(c.l_prime.rank(), 20);
        assert!(c.l_prime.lattice.is_even() && c.l_prime.lattice.is_unimodular());
        assert_eq!(c.l_prime.lattice.signature(), Signature::new(2, 18, 0));
        for g in c.l.generators() {
            assert!(k3.lattice.pair(&c.radical, &g).is_zero());
        }
        let p2 = build_surface_model(2, &[]).unwrap();
        assert_eq!(fibre_complement(&p2).unwrap().l_prime.lattice.signature(), Signature::new(4, 28, 0));

        let d = build_surface_model(1, &[2, 3]).unwrap();
        let kc = d.canonical_complement();
        assert_eq!(kc.rank(), 21);
        for g in kc.generators() {
            assert!(d.lattice.pair(&g, &d.k).is_zero());
        }
        let oc = d.lattice.orthogonal_complement(std::slice::from_ref(&d.k)).unwrap();
        for g in oc.generators() {
            assert!(kc.coordinates_of(&g).is_some());
        }
    }

    #[test]
    fn milnor_calibration() {
        let a1 = milnor_lattice(&BPSingularity::new(&[2, 2, 2]).unwrap());
        assert_eq!(a1.gram(), &IntMatrix::from_i64_rows(&[&[-2]]));
        let a2 = milnor_lattice(&BPSingularity::new(&[3, 2, 2]).unwrap());
        assert_eq!(a2.rank(), 2);
        assert_eq!(a2.determinant(), Int::from(3));
        assert!(a2.is_even());
        assert_eq!(a2.signature(), Signature::new(0, 2, 0));
        // the opposite sign fails the first anchor
        let [a, b, c] = [2u64, 2, 2].map(one_variable_seifert);
        let v = a.kron(&b).kron(&c);
        assert_ne!(v.add(&v.transpose()), IntMatrix::from_i64_rows(&[&[-2]]));
        assert!(matches!(BPSingularity::new(&[2, 3]), Err(LatticeError::Unsupported(_))));
    }

    #[test]
    fn milnor_small_types() {
        for (ex, det, rank) in [([4u64, 2, 2], -4i64, 3usize), ([3, 3, 2], 4, 4), ([5, 3, 2], 1, 8)] {
            let l = milnor_lattice(&BPSingularity::new(&ex).unwrap());
            assert_eq!(l.rank(), rank);
            assert_eq!(l.determinant(), Int::from(det), "{ex:?}");
            assert!(l.is_definite() && l.is_even());
        }
    }

    #[test]
    fn witness_searches() {
        let b = SearchBounds::default();
        let k3 = build_surface_model(1, &[]).unwrap();
        let (a, ap) = find_fibre_splitting_roots(&k3, b).unwrap();
        assert!(verify_splitting(&k3.lattice, &k3.f, &a, &ap));
        assert_eq!(k3.lattice.pair(&a, &ap), Int::from(2));
        let w = find_k3_extra_classes(&k3, b).unwrap().unwrap();
        assert!(w.verify(&k3));

        let d = build_surface_model(1, &[2, 3]).unwrap();
        for mi in [2, 3] {
            let (a, ap) = find_multiple_fibre_span(&d, mi, b).unwrap().unwrap();
            assert!(verify_multiple_fibre_span(&d, mi, &a, &ap));
        }
        assert!(matches!(find_multiple_fibre_span(&d, 5, b), Err(LatticeError::Parameter(_))));
        assert!(matches!(find_k3_extra_classes(&d, b), Err(LatticeError::Parameter(_))));

        let zero = SearchBounds { height: 0, max_support: 3 };
        assert!(find_fibre_splitting_roots(&k3, zero).is_none());
        assert!(find_k3_extra_classes(&k3, zero).unwrap().is_none());
        assert!(find_multiple_fibre_span(&d, 2, zero).unwrap().is_none());
    }

    #[test]
    fn doubled_fibre_still_splits() {
        let k3 = build_surface_model(1, &[]).unwrap();
        let two_f = k3.f.scaled(&Int::from(2));
        let (a, ap) = find_splitting_roots(&k3.lattice, &two_f, SearchBounds::default()).unwrap().unwrap();
        assert!(verify_splitting(&k3.lattice, &two_f, &a, &ap));
    }

    #[test]
    fn splitting_reflections_fix_k() {
        for (pg, ms) in [(1u64, &[][..]), (1, &[2, 3][..]), (2, &[][..])] {
            let s = build_surface_model(pg, ms).unwrap();
            let (a, ap) = find_fibre_splitting_roots(&s, SearchBounds::default()).unwrap();
            let g = Isometry::reflection(&s.lattice, &a).unwrap().compose(&Isometry::reflection(&s.lattice, &ap).unwrap()).unwrap();
            assert!(g.is_in_o_prime_k(&s.k).unwrap());
        }
    }

    #[test]
    fn sampled_roots_are_orthogonal_to_k() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let d = build_surface_model(1, &[2, 3]).unwrap();
        let roots = sample_roots(&d.canonical_complement(), 20, 2, &mut rng);
        assert_eq!(roots.len(), 20);
        for r in &roots {
            assert_eq!(d.lattice.pair(r, r), Int::from(-2));
            assert!(d.lattice.pair(r, &d.k).is_zero());
        }
    }
}
