use std::fmt;
use std::path::Path;
use std::sync::Arc;

use latmon::io;
use latmon::isometry::is_isometry;
use latmon::surface::{
    find_fibre_splitting_roots, find_k3_extra_classes, find_multiple_fibre_span, sample_roots, verify_multiple_fibre_span, verify_splitting,
};
use latmon::vanishing::CvlBounds;
use latmon::{
    build_surface_model, embed_milnor, fibre_complement, is_complete_vanishing_lattice, milnor_lattice, BPSingularity, DiagramPattern, Int,
    Isometry, Lattice, LatticeError, LatticeVector, SearchBounds, VanishingSet,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::report::{InputDigest, Report};

#[derive(Debug)]
pub enum CliError {
    Io(String, std::io::Error),
    Lattice(LatticeError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) | CliError::Lattice(LatticeError::Parse(_)) => 2,
            CliError::Lattice(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Lattice(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}

/// Parse errors are prefixed with the file they came from.
fn parse<T>(path: &Path, text: &str, f: impl FnOnce(&str) -> latmon::Result<T>) -> Result<T, CliError> {
    f(text).map_err(|e| match e {
        LatticeError::Parse(m) => CliError::Lattice(LatticeError::Parse(format!("{}: {m}", path.display()))),
        other => CliError::Lattice(other),
    })
}

fn describe_lattice(r: &mut Report, prefix: &str, l: &Lattice) {
    let d = l.discriminant();
    let factors: Vec<String> = d.invariant_factors.iter().map(Int::to_string).collect();
    r.push(format!("{prefix}RANK"), l.rank());
    r.push(format!("{prefix}SIGNATURE"), l.signature());
    r.push(format!("{prefix}DET"), &d.determinant);
    r.push(format!("{prefix}INVARIANT_FACTORS"), format!("[{}]", factors.join(",")));
    r.push(format!("{prefix}EVEN"), l.is_even());
    r.push(format!("{prefix}UNIMODULAR"), l.is_unimodular());
}

pub fn lattice_info(path: &Path) -> Result<Report, CliError> {
    let text = read(path)?;
    let l = parse(path, &text, io::lattice_from_json)?;
    let mut r = Report::new("lattice-info", InputDigest::new("lattice-info").field("lattice", text.as_bytes()));
    let rows: Vec<String> = l.gram().to_rows().iter().map(|row| LatticeVector::new(row.clone()).to_string()).collect();
    r.push("GRAM", format!("[{}]", rows.join(",")));
    describe_lattice(&mut r, "", &l);
    r.push("DEFINITE", l.is_definite());
    r.push("RADICAL_RANK", l.signature().zero);
    Ok(r)
}

pub fn spinor(lattice: &Path, isometry: &Path, canonical: Option<&Path>) -> Result<Report, CliError> {
    let lt = read(lattice)?;
    let it = read(isometry)?;
    let l = Arc::new(parse(lattice, &lt, io::lattice_from_json)?);
    let m = parse(isometry, &it, io::isometry_matrix_from_json)?;
    let mut digest = InputDigest::new("spinor");
    digest.field("lattice", lt.as_bytes()).field("isometry", it.as_bytes());
    let k = match canonical {
        Some(p) => {
            let kt = read(p)?;
            digest.field("canonical", kt.as_bytes());
            let k = parse(p, &kt, io::vector_from_json)?;
            l.check_vector(&k)?;
            Some(k)
        }
        None => None,
    };
    let mut r = Report::new("spinor", &digest);
    let shape_ok = m.is_square() && m.rows() == l.rank();
    if !shape_ok || !is_isometry(&l, &m) {
        r.push("ISOMETRY", false);
        if !shape_ok {
            r.push("REASON", format!("matrix is {}x{}, lattice rank {}", m.rows(), m.cols(), l.rank()));
        }
        return Ok(r);
    }
    let g = Isometry::new(Arc::clone(&l), m)?;
    r.push("ISOMETRY", true);
    r.push("SPINOR", g.real_spinor_norm());
    if let Some(k) = k {
        let fixes = g.fixes(&k)?;
        r.push("FIXES_K", fixes);
        r.push("O_PRIME_K", g.is_in_o_prime_k(&k)?);
    }
    Ok(r)
}

pub fn cvl_check(
    lattice: &Path,
    roots: Option<&Path>,
    pattern: Option<&Path>,
    orbit_bound: usize,
    tuple_bound: Option<u64>,
    seed: usize,
    height: u64,
) -> Result<Report, CliError> {
    let lt = read(lattice)?;
    let l = Arc::new(parse(lattice, &lt, io::lattice_from_json)?);
    let mut digest = InputDigest::new("cvl-check");
    digest.field("lattice", lt.as_bytes());
    digest.field("orbit_bound", orbit_bound.to_string().as_bytes());
    digest.field("tuple_bound", format!("{tuple_bound:?}").as_bytes());
    digest.field("seed", seed.to_string().as_bytes());

    let (root_list, source) = match roots {
        Some(p) => {
            let rt = read(p)?;
            digest.field("roots", rt.as_bytes());
            let file = parse(p, &rt, io::root_set_from_json)?;
            let base = p.parent().unwrap_or(Path::new("."));
            if let Some(inner) = file.resolve_lattice(base)? {
                if inner.gram() != l.gram() {
                    return Err(LatticeError::Usage(format!("{} refers to a different lattice", p.display())).into());
                }
            }
            (file.roots, format!("file:{}", p.display()))
        }
        None if l.is_definite() => (l.vectors_of_square(&Int::from(-2))?, "enumerated:all".to_string()),
        None => {
            digest.field("height", height.to_string().as_bytes());
            (l.enumerate_roots(&Int::from(-2), height)?, format!("enumerated:height={height}"))
        }
    };
    let (pat, pattern_source) = match pattern {
        Some(p) if p.exists() => {
            let pt = read(p)?;
            digest.field("pattern", pt.as_bytes());
            (parse(p, &pt, io::pattern_from_json)?, format!("file:{}", p.display()))
        }
        Some(p) => (DiagramPattern::default_pattern(), format!("default (missing {})", p.display())),
        None => (DiagramPattern::default_pattern(), "default".to_string()),
    };
    let d = VanishingSet::new(Arc::clone(&l), root_list)?;
    let mut r = Report::new("cvl-check", &digest);
    r.push("ROOTS", d.len());
    r.push("ROOTS_SOURCE", source);
    r.push("PATTERN", pattern_source);
    let report = is_complete_vanishing_lattice(&l, &d, &pat, CvlBounds { seed, orbit_max_new: orbit_bound, tuple_bound })?;
    r.push("GENERATES", report.generates);
    r.push("ORBIT", report.orbit);
    if let Some(c) = &report.orbit_certificate {
        r.push("ORBIT_SIZE", c.generator_log.len() + 1);
        r.push("ORBIT_NEW_ROOTS", c.new_roots);
        r.push("ORBIT_BOUND_HIT", !c.closed);
        r.push("ORBIT_BFS_DEPTH", c.bfs_depth);
    }
    r.push("DIAGRAM", report.diagram.label());
    if let Some(w) = report.diagram.witness() {
        let vs: Vec<String> = w.iter().map(|&i| d.roots()[i].to_string()).collect();
        r.push("DIAGRAM_WITNESS", vs.join(" "));
    }
    r.push("CVL", report.verdict_line().trim_start_matches("CVL:"));
    r.push("COMPLETE", report.is_certified_complete());
    Ok(r)
}

pub fn surface(pg: u64, multiplicities: &[u64], bounds: SearchBounds, model_out: Option<&Path>, seed: u64, spot_checks: usize) -> Result<Report, CliError> {
    let mut digest = InputDigest::new("surface");
    digest.field("pg", pg.to_string().as_bytes());
    digest.field("multiplicities", format!("{multiplicities:?}").as_bytes());
    digest.field("bounds", format!("{}/{}", bounds.height, bounds.max_support).as_bytes());
    digest.field("seed", seed.to_string().as_bytes());
    digest.field("spot_checks", spot_checks.to_string().as_bytes());
    let s = build_surface_model(pg, multiplicities)?;
    let l = &s.lattice;
    let mut r = Report::new("surface", &digest);
    r.push("PG", s.pg);
    r.push("Q", s.q);
    r.push("CHI", s.chi);
    r.push("MULTIPLICITIES", format!("{:?}", s.multiplicities()).replace(' ', ""));
    describe_lattice(&mut r, "", l);
    r.push("FIRST_PLANE", if s.odd_plane { "odd" } else { "U" });
    r.push("INVARIANTS_OK", s.invariant_failures().is_empty());
    r.push("E", &s.e);
    r.push("F", &s.f);
    r.push("F_OVER_E", s.m);
    for fi in &s.fibres {
        r.push(format!("FIBRE_{}", fi.multiplicity), &fi.class);
    }
    r.push("K", &s.k);
    r.push("K_SCALAR", &s.k_scalar);
    r.push("K_CLASS", if s.k_scalar == Int::from(0) { "0".to_string() } else if s.k == s.f { "f".to_string() } else { format!("{}e", s.k_scalar) });
    r.push("SIGMA", s.sigma.as_ref().map_or("none".to_string(), |v| v.to_string()));
    r.push("E_PRIMITIVE", "by-construction");

    let fc = fibre_complement(&s)?;
    r.push("L_RANK", fc.l.rank());
    r.push("L_RADICAL", if fc.radical == s.e { "e".to_string() } else { fc.radical.to_string() });
    describe_lattice(&mut r, "LPRIME_", &fc.l_prime.lattice);

    let sing = BPSingularity::e_series(s.chi)?;
    let m = milnor_lattice(&sing);
    let cmp = embed_milnor(&s, &m);
    let [a, b, c] = sing.exponents;
    r.push("MILNOR_EXPONENTS", format!("({a},{b},{c})"));
    r.push("MILNOR_TYPE", format!("E{}", 12 * s.chi - 4));
    r.push("MILNOR_RANK", m.rank());
    r.push("MILNOR_SIGNATURE", m.signature());
    r.push("MILNOR_EVEN", m.is_even());
    r.push("MILNOR_DET", m.determinant());
    r.push("MILNOR_MATCH", cmp.invariants_match());
    r.push("MILNOR_MATCH_BASIS", "invariants (rank, signature, parity, determinant)");
    r.push("MILNOR_ISOMETRIC", cmp.certifies_isometry());

    r.push("SEARCH_HEIGHT", bounds.height);
    r.push("SEARCH_MAX_SUPPORT", bounds.max_support);
    let split = find_fibre_splitting_roots(&s, bounds);
    match &split {
        Some((a, ap)) => {
            r.push("SPLITTING", "found");
            r.push("SPLITTING_ALPHA", a);
            r.push("SPLITTING_ALPHA_PRIME", ap);
            r.push("SPLITTING_VERIFIED", verify_splitting(l, &s.f, a, ap) && l.pair(a, ap) == Int::from(2));
        }
        None => r.push("SPLITTING", "none"),
    }
    for mi in s.multiplicities() {
        match find_multiple_fibre_span(&s, mi, bounds)? {
            Some((a, ap)) => {
                r.push(format!("FIBRE_SPAN_{mi}"), "found");
                r.push(format!("FIBRE_SPAN_{mi}_ALPHA"), &a);
                r.push(format!("FIBRE_SPAN_{mi}_ALPHA_PRIME"), &ap);
                r.push(format!("FIBRE_SPAN_{mi}_VERIFIED"), verify_multiple_fibre_span(&s, mi, &a, &ap));
            }
            None => r.push(format!("FIBRE_SPAN_{mi}"), "none"),
        }
    }
    if s.is_k3() {
        match find_k3_extra_classes(&s, bounds)? {
            Some(w) => {
                r.push("K3_EXTRAS", "found");
                r.push("K3_ALPHA", &w.alpha);
                r.push("K3_ALPHA_PRIME", &w.alpha_prime);
                r.push("K3_SIGMA", &w.sigma);
                r.push("K3_VERIFIED", w.verify(&s));
            }
            None => r.push("K3_EXTRAS", "none"),
        }
    } else {
        r.push("K3_EXTRAS", "n/a");
    }

    // words in reflections in roots orthogonal to k, with the splitting
    // witnesses mixed in when present
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pool = sample_roots(&s.canonical_complement(), 50, 2, &mut rng);
    if let Some((a, ap)) = split {
        pool.push(a);
        pool.push(ap);
    }
    let mut passed = 0;
    for _ in 0..spot_checks {
        let mut g = Isometry::identity(Arc::clone(l));
        for _ in 0..rng.gen_range(1..=10) {
            g = g.then_reflect_root(&pool[rng.gen_range(0..pool.len())])?;
        }
        if g.is_in_o_prime_k(&s.k)? {
            passed += 1;
        }
    }
    r.push("O_PRIME_K_SPOT_CHECKS", format!("{passed}/{spot_checks}"));

    if let Some(p) = model_out {
        write(p, &io::model_to_json(&s))?;
        r.push("MODEL_FILE", p.display());
    }
    Ok(r)
}

pub fn milnor(exponents: [u64; 3], compare_pg: Option<u64>, lattice_out: Option<&Path>) -> Result<Report, CliError> {
    let mut digest = InputDigest::new("milnor");
    digest.field("exponents", format!("{exponents:?}").as_bytes());
    digest.field("compare_pg", format!("{compare_pg:?}").as_bytes());
    let sing = BPSingularity::new(&exponents)?;
    let m = milnor_lattice(&sing);
    let mut r = Report::new("milnor", &digest);
    r.push("EXPONENTS", format!("({},{},{})", exponents[0], exponents[1], exponents[2]));
    r.push("MU", sing.mu());
    describe_lattice(&mut r, "", &m);
    let e_series_k = (exponents[1] == 3 && exponents[2] == 2 && exponents[0] % 6 == 5).then(|| (exponents[0] + 1) / 6);
    if let Some(k) = e_series_k {
        r.push("TYPE", format!("E{}", 12 * k - 4));
    }
    if let Some(pg) = compare_pg.or(e_series_k.filter(|&k| k >= 2).map(|k| k - 1)) {
        let s = build_surface_model(pg, &[])?;
        let cmp = embed_milnor(&s, &m);
        r.push("COMPARE_PG", pg);
        r.push("MATCH", cmp.invariants_match());
        r.push("MATCH_BASIS", "invariants (rank, signature, parity, determinant)");
        r.push("ISOMETRIC", cmp.certifies_isometry());
    }
    if let Some(p) = lattice_out {
        write(p, &io::lattice_to_json(&m))?;
        r.push("LATTICE_FILE", p.display());
    }
    Ok(r)
}

pub fn orbit(lattice: &Path, roots: &Path, seed: usize, orbit_bound: usize, roots_out: Option<&Path>) -> Result<Report, CliError> {
    let lt = read(lattice)?;
    let rt = read(roots)?;
    let l = Arc::new(parse(lattice, &lt, io::lattice_from_json)?);
    let file = parse(roots, &rt, io::root_set_from_json)?;
    let mut digest = InputDigest::new("orbit");
    digest.field("lattice", lt.as_bytes()).field("roots", rt.as_bytes());
    digest.field("seed", seed.to_string().as_bytes()).field("orbit_bound", orbit_bound.to_string().as_bytes());
    let d = VanishingSet::new(Arc::clone(&l), file.roots)?;
    let (orbit, cert) = d.orbit_closure(seed, orbit_bound)?;
    let mut r = Report::new("orbit", &digest);
    r.push("SEED", &d.roots()[seed]);
    r.push("ORBIT_SIZE", orbit.len());
    r.push("NEW_ROOTS", cert.new_roots);
    r.push("BOUND_HIT", !cert.closed);
    r.push("BFS_DEPTH", cert.bfs_depth);
    r.push("REACHED", format!("{}/{}", cert.reached.iter().filter(|&&x| x).count(), d.len()));
    r.push("VERDICT", cert.verdict());
    r.push("REPLAY_OK", cert.replay(&d).map(|v| v == orbit.roots()).unwrap_or(false));
    if let Some(p) = roots_out {
        write(p, &io::root_set_to_json(Some(&l), orbit.roots()))?;
        r.push("ROOTS_FILE", p.display());
    }
    Ok(r)
}
