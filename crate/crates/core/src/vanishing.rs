//! Vanishing sets of `−2` roots: generation, orbit and diagram certificates
//! for complete vanishing lattices, and the order of the reflection group.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{LatticeError, Result};
use crate::isometry::Isometry;
use crate::lattice::{Lattice, LatticeVector, Sublattice};
use crate::matrix::{Int, IntMatrix};

/// The pattern shipped with the crate; see `patterns/default.json`.
pub const DEFAULT_PATTERN_JSON: &str = include_str!("../patterns/default.json");

/// Default bound on new roots during orbit closure.
pub const DEFAULT_ORBIT_BOUND: usize = 10_000;

/// Cap on the number of group elements held by [`VanishingSet::reflection_group_order`].
pub const DEFAULT_GROUP_ORDER_CAP: usize = 5_000_000;

/// A finite set of roots (`v·v = −2`) in a lattice.
#[derive(Clone, Debug)]
pub struct VanishingSet {
    lattice: Arc<Lattice>,
    roots: Vec<LatticeVector>,
}

/// Required absolute pairings of six roots; the diagonal is `−2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramPattern {
    gram: [[i64; 6]; 6],
}

impl DiagramPattern {
    pub fn new(gram: [[i64; 6]; 6]) -> Result<Self> {
        for i in 0..6 {
            if gram[i][i] != -2 {
                return Err(LatticeError::Parameter("pattern diagonal must be -2".into()));
            }
            for j in 0..6 {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::Parameter("pattern must be symmetric".into()));
                }
                if i != j && gram[i][j] < 0 {
                    return Err(LatticeError::Parameter("off-diagonal pattern entries are absolute values".into()));
                }
            }
        }
        Ok(DiagramPattern { gram })
    }

    /// The pattern from the bundled configuration file.
    pub fn default_pattern() -> Self {
        crate::io::pattern_from_json(DEFAULT_PATTERN_JSON).expect("bundled pattern is valid")
    }

    pub fn gram(&self) -> &[[i64; 6]; 6] {
        &self.gram
    }

    /// The pattern read as a Gram matrix with every off-diagonal sign `+`.
    pub fn as_lattice(&self) -> Lattice {
        let rows: Vec<Vec<Int>> = self.gram.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Lattice::new(IntMatrix::from_rows(rows).expect("6x6")).expect("pattern is symmetric")
    }
}

/// One BFS step: `closure[k + 1] = σ_{roots[generator]}(closure[source])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitStep {
    pub source: usize,
    pub generator: usize,
}

/// Record of an orbit closure computation.
#[derive(Clone, Debug)]
pub struct OrbitCertificate {
    pub seed: usize,
    /// Per input root: reached from the seed.
    pub reached: Vec<bool>,
    pub bfs_depth: usize,
    /// One entry per closure element after the seed, in closure order.
    pub generator_log: Vec<OrbitStep>,
    /// The closure finished without hitting the bound.
    pub closed: bool,
    /// Roots produced that are not in the input set.
    pub new_roots: usize,
    pub max_new: usize,
}

/// Outcome of the single-orbit condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitVerdict {
    /// Closure finished, every input root was reached and nothing new appeared.
    Certified,
    /// Every input root was reached, but the closure hit its bound.
    Bounded,
    /// Closure finished and the set is not one orbit.
    False,
    /// Bound hit before every input root was reached.
    Unknown,
}

impl fmt::Display for OrbitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitVerdict::Certified => "certified",
            OrbitVerdict::Bounded => "bounded",
            OrbitVerdict::False => "false",
            OrbitVerdict::Unknown => "unknown",
        })
    }
}

impl OrbitCertificate {
    pub fn all_reached(&self) -> bool {
        self.reached.iter().all(|&r| r)
    }

    pub fn verdict(&self) -> OrbitVerdict {
        match (self.closed, self.all_reached()) {
            (true, true) if self.new_roots == 0 => OrbitVerdict::Certified,
            (true, _) => OrbitVerdict::False,
            (false, true) => OrbitVerdict::Bounded,
            (false, false) => OrbitVerdict::Unknown,
        }
    }

    /// Rebuilds the closure from the seed by replaying the log.
    pub fn replay(&self, set: &VanishingSet) -> Result<Vec<LatticeVector>> {
        let mut out = vec![set.roots[self.seed].clone()];
        for step in &self.generator_log {
            let src = out.get(step.source).ok_or_else(|| LatticeError::Usage("log refers to a later element".into()))?;
            out.push(set.reflect(src, step.generator));
        }
        Ok(out)
    }
}

/// Outcome of a bounded diagram search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramSearch {
    Found([usize; 6]),
    NotFound,
    /// Node budget exhausted before the search finished.
    Exhausted,
}

impl DiagramSearch {
    pub fn witness(&self) -> Option<[usize; 6]> {
        match self {
            DiagramSearch::Found(w) => Some(*w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DiagramSearch::Found(_) => "true",
            DiagramSearch::NotFound => "false",
            DiagramSearch::Exhausted => "unknown",
        }
    }
}

/// Bounds for [`is_complete_vanishing_lattice`].
#[derive(Clone, Copy, Debug)]
pub struct CvlBounds {
    pub seed: usize,
    pub orbit_max_new: usize,
    /// Maximum number of partial tuples visited by the diagram search.
    pub tuple_bound: Option<u64>,
}

impl Default for CvlBounds {
    fn default() -> Self {
        CvlBounds { seed: 0, orbit_max_new: DEFAULT_ORBIT_BOUND, tuple_bound: None }
    }
}

/// The three complete-vanishing-lattice conditions.
#[derive(Clone, Debug)]
pub struct CvlReport {
    pub generates: bool,
    pub orbit: OrbitVerdict,
    pub orbit_certificate: Option<OrbitCertificate>,
    pub diagram: DiagramSearch,
}

impl CvlReport {
    /// Complete, with every condition established exactly.
    pub fn is_certified_complete(&self) -> bool {
        self.generates && self.orbit == OrbitVerdict::Certified && matches!(self.diagram, DiagramSearch::Found(_))
    }

    pub fn verdict_line(&self) -> String {
        format!("CVL:(1)={} (2)={} (3)={}", self.generates, self.orbit, self.diagram.label())
    }
}

impl VanishingSet {
    pub fn new(lattice: Arc<Lattice>, roots: Vec<LatticeVector>) -> Result<Self> {
        let minus_two = Int::from(-2);
        for r in &roots {
            lattice.check_vector(r)?;
            if lattice.pair(r, r) != minus_two {
                return Err(LatticeError::Parameter(format!("{r} has square {} instead of -2", lattice.pair(r, r))));
            }
        }
        Ok(VanishingSet { lattice, roots })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn roots(&self) -> &[LatticeVector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `σ_{roots[g]}(x) = x + (x·r)·r`.
    fn reflect(&self, x: &LatticeVector, g: usize) -> LatticeVector {
        let r = &self.roots[g];
        x.add_scaled(&self.lattice.pair(x, r), r)
    }

    pub fn reflections(&self) -> Vec<Isometry> {
        self.roots.iter().map(|r| Isometry::reflection(&self.lattice, r).expect("roots reflect integrally")).collect()
    }

    /// Whether the roots generate `target` (given in ambient coordinates).
    pub fn generates_lattice(&self, target: &Sublattice) -> Result<bool> {
        if target.ambient_rank() != self.lattice.rank() {
            return Err(LatticeError::Usage("target lives in a different ambient lattice".into()));
        }
        let mut coords = Vec::with_capacity(self.roots.len());
        for r in &self.roots {
            match target.coordinates_of(r) {
                Some(c) => coords.push(c),
                None => return Err(LatticeError::Containment(r.to_string())),
            }
        }
        let k = target.rank();
        if coords.len() < k {
            return Ok(false);
        }
        if k == 0 {
            return Ok(true);
        }
        let cols: Vec<&[Int]> = coords.iter().map(LatticeVector::coords).collect();
        let m = IntMatrix::from_columns(k, &cols);
        let snf = m.smith_normal_form(false);
        Ok(snf.rank == k && snf.diagonal.iter().take(k).all(|d| *d == Int::from(1)))
    }

    /// Indices of the generators with distinct reflections (`σ_v = σ_{−v}`).
    fn distinct_generators(&self) -> Vec<usize> {
        let mut seen: HashSet<&LatticeVector> = HashSet::new();
        let mut negs: HashSet<LatticeVector> = HashSet::new();
        let mut out = Vec::new();
        for (i, r) in self.roots.iter().enumerate() {
            if seen.contains(r) || negs.contains(r) {
                continue;
            }
            seen.insert(r);
            negs.insert(r.neg());
            out.push(i);
        }
        out
    }

    /// Breadth-first orbit of `roots[seed]` under the group generated by the
    /// reflections in all roots of the set.
    ///
    /// Images already in the set never count against `max_new`; reaching the
    /// `(max_new + 1)`-th new root stops the search.
    pub fn orbit_closure(&self, seed: usize, max_new: usize) -> Result<(VanishingSet, OrbitCertificate)> {
        if seed >= self.roots.len() {
            return Err(LatticeError::Parameter(format!("seed {seed} out of range for {} roots", self.roots.len())));
        }
        let mut original: HashMap<&LatticeVector, Vec<usize>> = HashMap::new();
        for (i, r) in self.roots.iter().enumerate() {
            original.entry(r).or_default().push(i);
        }
        let gens = self.distinct_generators();
        let duals: Vec<Vec<Int>> = gens.iter().map(|&g| self.lattice.dual_coords(&self.roots[g])).collect();

        let mut reached = vec![false; self.roots.len()];
        let mut index: HashMap<LatticeVector, usize> = HashMap::new();
        let mut closure = vec![self.roots[seed].clone()];
        let mut depth = vec![0usize];
        let mut log = Vec::new();
        let mut new_roots = 0;
        let mut closed = true;
        index.insert(self.roots[seed].clone(), 0);
        for &i in &original[&self.roots[seed]] {
            reached[i] = true;
        }
        let mut queue = VecDeque::from([0usize]);
        'bfs: while let Some(k) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let x = &closure[k];
                let p: Int = x.coords().iter().zip(&duals[gi]).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum();
                if p.is_zero() {
                    continue;
                }
                let y = x.add_scaled(&p, &self.roots[g]);
                if index.contains_key(&y) {
                    continue;
                }
                match original.get(&y) {
                    Some(ids) => {
                        for &i in ids {
                            reached[i] = true;
                        }
                    }
                    None => {
                        if new_roots == max_new {
                            closed = false;
                            break 'bfs;
                        }
                        new_roots += 1;
                    }
                }
                let id = closure.len();
                index.insert(y.clone(), id);
                closure.push(y);
                depth.push(depth[k] + 1);
                log.push(OrbitStep { source: k, generator: g });
                queue.push_back(id);
            }
        }
        let cert = OrbitCertificate {
            seed,
            reached,
            bfs_depth: depth.into_iter().max().unwrap_or(0),
            generator_log: log,
            closed,
            new_roots,
            max_new,
        };
        Ok((VanishingSet { lattice: Arc::clone(&self.lattice), roots: closure }, cert))
    }

    /// The `Γ`-saturation of the set: union of the orbits of every root.
    /// `None` when some orbit exceeds `max_new` new roots.
    pub fn closed_root_set(&self, max_new: usize) -> Result<Option<VanishingSet>> {
        let mut seen: HashSet<LatticeVector> = HashSet::new();
        let mut all = Vec::new();
        for i in 0..self.roots.len() {
            if seen.contains(&self.roots[i]) {
                continue;
            }
            let (orbit, cert) = self.orbit_closure(i, max_new)?;
            if !cert.closed {
                return Ok(None);
            }
            for r in orbit.roots {
                if seen.insert(r.clone()) {
                    all.push(r);
                }
            }
        }
        Ok(Some(VanishingSet { lattice: Arc::clone(&self.lattice), roots: all }))
    }

    /// First six roots (in lexicographic index order) whose absolute
    /// pairings match the pattern, no two of them equal up to sign.
    pub fn contains_diagram(&self, pattern: &DiagramPattern) -> Option<[usize; 6]> {
        self.search_diagram(pattern, None).witness()
    }

    pub fn search_diagram(&self, pattern: &DiagramPattern, node_bound: Option<u64>) -> DiagramSearch {
        let n = self.roots.len();
        if n < 6 {
            return DiagramSearch::NotFound;
        }
        // |pairing| table; None marks values too large for any pattern entry
        let duals: Vec<Vec<Int>> = self.roots.iter().map(|r| self.lattice.dual_coords(r)).collect();
        let mut table = vec![vec![None; n]; n];
        let mut collinear = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p: Int = self.roots[i].coords().iter().zip(&duals[j]).map(|(a, b)| a * b).sum();
                table[i][j] = p.abs().to_i64();
                collinear[i][j] = i == j || self.roots[i] == self.roots[j] || self.roots[i] == self.roots[j].neg();
            }
        }
        let mut search = TupleSearch { table: &table, collinear: &collinear, pattern: &pattern.gram, nodes: 0, bound: node_bound, chosen: Vec::with_capacity(6) };
        match search.run() {
            Ok(Some(w)) => {
                debug_assert!(self.verify_witness(pattern, &w));
                DiagramSearch::Found(w)
            }
            Ok(None) => DiagramSearch::NotFound,
            Err(()) => DiagramSearch::Exhausted,
        }
    }

    /// Recomputes all 15 pairings of a witness against the pattern.
    pub fn verify_witness(&self, pattern: &DiagramPattern, w: &[usize; 6]) -> bool {
        for a in 0..6 {
            for b in a + 1..6 {
                let (x, y) = (&self.roots[w[a]], &self.roots[w[b]]);
                if x == y || *x == y.neg() {
                    return false;
                }
                if self.lattice.pair(x, y).abs() != Int::from(pattern.gram[a][b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Definite-span check: the Gram of the roots is semidefinite with rank
    /// equal to the rank of their span.
    fn span_is_definite(&self) -> bool {
        if self.roots.is_empty() {
            return true;
        }
        let cols: Vec<&[Int]> = self.roots.iter().map(LatticeVector::coords).collect();
        let r = IntMatrix::from_columns(self.lattice.rank(), &cols);
        let g = r.transpose().mul(self.lattice.gram()).mul(&r);
        let sig = Lattice::new(g).expect("symmetric").signature();
        (sig.positive == 0 || sig.negative == 0) && sig.positive + sig.negative == r.rank()
    }

    /// Order of the group generated by the reflections, by closed enumeration
    /// of its action on the closed root set.
    ///
    /// Each element is stored as the images of a fixed spanning subset of the
    /// closed roots, which determines it (the group acts trivially on the
    /// orthogonal complement of a definite span).
    pub fn reflection_group_order(&self) -> Result<u64> {
        self.reflection_group_order_capped(DEFAULT_GROUP_ORDER_CAP)
    }

    pub fn reflection_group_order_capped(&self, cap: usize) -> Result<u64> {
        if !self.span_is_definite() {
            return Err(LatticeError::Unsupported("reflection group of an indefinite span is infinite".into()));
        }
        let closed = self
            .closed_root_set(DEFAULT_ORBIT_BOUND)?
            .ok_or_else(|| LatticeError::Unsupported("root closure exceeded its bound".into()))?;
        let phi = &closed.roots;
        if phi.is_empty() {
            return Ok(1);
        }
        let pos: HashMap<&LatticeVector, u32> = phi.iter().enumerate().map(|(i, r)| (r, i as u32)).collect();
        let perms: Vec<Vec<u32>> = closed
            .distinct_generators()
            .into_iter()
            .map(|g| phi.iter().map(|x| pos[&closed.reflect(x, g)]).collect())
            .collect();
        let base = spanning_subset(self.lattice.rank(), phi);
        let identity: Vec<u32> = base.iter().map(|&b| b as u32).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(e) = queue.pop_front() {
            for s in &perms {
                let next: Vec<u32> = e.iter().map(|&i| s[i as usize]).collect();
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(LatticeError::Unsupported(format!("group order exceeds the cap {cap}")));
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.len() as u64)
    }

    /// Order of the reflection group by the orbit–stabilizer recursion
    /// `|W(Φ)| = |W·x| · |W(Φ ∩ x^⊥)|`, valid because the stabilizer of a
    /// vector in a finite reflection group is generated by the reflections
    /// fixing it.
    pub fn reflection_group_order_by_stabilizers(&self) -> Result<u128> {
        if !self.span_is_definite() {
            return Err(LatticeError::Unsupported("reflection group of an indefinite span is infinite".into()));
        }
        let closed = self
            .closed_root_set(DEFAULT_ORBIT_BOUND)?
            .ok_or_else(|| LatticeError::Unsupported("root closure exceeded its bound".into()))?;
        let mut phi = closed.roots;
        let mut order: u128 = 1;
        while let Some(x) = phi.first().cloned() {
            let set = VanishingSet { lattice: Arc::clone(&self.lattice), roots: phi };
            let (orbit, cert) = set.orbit_closure(0, 0)?;
            debug_assert!(cert.closed);
            order *= orbit.len() as u128;
            phi = set.roots.into_iter().filter(|r| set.lattice.pair(r, &x).is_zero()).collect();
        }
        Ok(order)
    }
}

fn spanning_subset(rank: usize, vectors: &[LatticeVector]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current_rank = 0;
    for (i, v) in vectors.iter().enumerate() {
        let mut cols: Vec<&[Int]> = chosen.iter().map(|&c| vectors[c].coords()).collect();
        cols.push(v.coords());
        let r = IntMatrix::from_columns(rank, &cols).rank();
        if r > current_rank {
            chosen.push(i);
            current_rank = r;
        }
    }
    chosen
}

struct TupleSearch<'a> {
    table: &'a [Vec<Option<i64>>],
    collinear: &'a [Vec<bool>],
    pattern: &'a [[i64; 6]; 6],
    nodes: u64,
    bound: Option<u64>,
    chosen: Vec<usize>,
}

impl TupleSearch<'_> {
    /// `Err` when the node budget runs out.
    fn run(&mut self) -> std::result::Result<Option<[usize; 6]>, ()> {
        let k = self.chosen.len();
        if k == 6 {
            let mut w = [0; 6];
            w.copy_from_slice(&self.chosen);
            return Ok(Some(w));
        }
        for cand in 0..self.table.len() {
            self.nodes += 1;
            if self.bound.is_some_and(|b| self.nodes > b) {
                return Err(());
            }
            let fits = self.chosen.iter().enumerate().all(|(a, &prev)| {
                !self.collinear[prev][cand] && self.table[prev][cand] == Some(self.pattern[a][k])
            });
            if !fits {
                continue;
            }
            self.chosen.push(cand);
            let r = self.run()?;
            self.chosen.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }
}

/// Checks the three conditions for `(l, d)` against `pattern`.
///
/// Condition (2) is exact only when the orbit closure finishes; see
/// [`OrbitVerdict`].
pub fn is_complete_vanishing_lattice(
    l: &Arc<Lattice>,
    d: &VanishingSet,
    pattern: &DiagramPattern,
    bounds: CvlBounds,
) -> Result<CvlReport> {
    if !l.is_even() {
        return Err(LatticeError::Precondition("complete vanishing lattices are even".into()));
    }
    if l.gram() != d.lattice.gram() {
        return Err(LatticeError::Usage("root set belongs to a different lattice".into()));
    }
    let generates = d.generates_lattice(&Sublattice::whole(l))?;
    let (orbit, orbit_certificate) = if d.is_empty() {
        (OrbitVerdict::False, None)
    } else {
        let (_, cert) = d.orbit_closure(bounds.seed, bounds.orbit_max_new)?;
        (cert.verdict(), Some(cert))
    };
    let diagram = d.search_diagram(pattern, bounds.tuple_bound);
    Ok(CvlReport { generates, orbit, orbit_certificate, diagram })
}
