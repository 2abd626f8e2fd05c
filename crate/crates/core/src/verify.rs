//! Verification suites over the family sweep. Each suite produces a
//! [`Check`] with per-metric maxima and per-family pass counts; a
//! [`Report`] collects them in a fixed order and serializes
//! deterministically (no timings, sorted maps, shortest float form).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::adjoint::{
    ad_matrix, character_ad, closed_form_eigenvalues, exp_ad_closed, exp_matrix_numeric, is_exponential,
    multiset_distance, numeric_eigenvalues,
};
use crate::coadjoint::{coadjoint_move, orbit_classify_with, orbit_dimension, sample_orbit};
use crate::error::Result;
use crate::foliation::{
    connes_label, equivalence_h, h_residual, in_foliated_manifold_with, jacobian_constancy, verify_tangency,
};
use crate::representation::{character, faithful_rep, mu_report, verify_faithful, verify_homomorphism};
use crate::sampling::{label_hash, rng_for, stratified_functional, uniform_vec, COORD_RANGE};
use crate::{build, FamilySpec, LieAlgebra};

/// Parameters of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub k_max: u32,
    /// Replaces every float bound when set.
    pub tolerance: Option<f64>,
    pub zero_threshold: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 42, k_max: 3, tolerance: None, zero_threshold: crate::coadjoint::ZERO_THRESHOLD }
    }
}

impl VerifyConfig {
    fn bound(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn rng(&self, id: u8, label: &str, stream: u64) -> rand_chacha::ChaCha8Rng {
        rng_for(self.seed.wrapping_add(label_hash(&format!("{id}:{label}"))), stream)
    }
}

/// The indecomposable families of the classification with the default
/// parameter sweep: `λ ∈ {−1, −0.5, 0.5, 1}` for `G3_1`, `λ ∈ {0, 0.5, 1}`
/// for `G3_3` and `k ∈ 0..=k_max` for the general-dimension families.
pub fn family_sweep(k_max: u32) -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = [-1.0, -0.5, 0.5, 1.0].map(|lambda| FamilySpec::G3_1 { lambda }).into();
    out.push(FamilySpec::G3_2);
    out.extend([0.0, 0.5, 1.0].map(|lambda| FamilySpec::G3_3 { lambda }));
    out.extend([FamilySpec::G4_1, FamilySpec::G4_2, FamilySpec::G4_3, FamilySpec::G4_4]);
    for k in 0..=k_max {
        out.extend([FamilySpec::G5_2k { k }, FamilySpec::G6_2k_1 { k }, FamilySpec::G6_2k_2 { k }]);
    }
    out
}

/// The families carrying a foliation by maximal orbits.
pub fn foliation_sweep(k_max: u32) -> Vec<FamilySpec> {
    family_sweep(k_max).into_iter().filter(|s| s.k().is_some()).collect()
}

/// One measured quantity of a check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Largest defect seen, for float-bounded metrics.
    pub max_defect: Option<f64>,
    pub bound: Option<f64>,
}

impl Metric {
    fn new(name: &str, bound: Option<f64>) -> Self {
        Metric { name: name.into(), samples: 0, failures: 0, max_defect: bound.map(|_| 0.0), bound }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct FamilyCount {
    pub pass: usize,
    pub fail: usize,
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub metrics: Vec<Metric>,
    pub families: BTreeMap<String, FamilyCount>,
    /// First few failure descriptions.
    pub notes: Vec<String>,
}

const MAX_NOTES: usize = 5;

struct Tally {
    check: Check,
}

impl Tally {
    fn new(id: u8, name: &str) -> Self {
        Tally {
            check: Check {
                id,
                name: name.into(),
                passed: true,
                metrics: Vec::new(),
                families: BTreeMap::new(),
                notes: Vec::new(),
            },
        }
    }

    fn metric(&mut self, name: &str, bound: Option<f64>) -> usize {
        if let Some(i) = self.check.metrics.iter().position(|m| m.name == name) {
            return i;
        }
        self.check.metrics.push(Metric::new(name, bound));
        self.check.metrics.len() - 1
    }

    fn outcome(&mut self, family: &str, metric: usize, ok: bool, note: impl FnOnce() -> String) {
        let m = &mut self.check.metrics[metric];
        m.samples += 1;
        let fam = self.check.families.entry(family.to_string()).or_default();
        if ok {
            fam.pass += 1;
        } else {
            fam.fail += 1;
            m.failures += 1;
            if self.check.notes.len() < MAX_NOTES {
                let text = format!("{family}: {}", note());
                self.check.notes.push(text);
            }
        }
    }

    /// Records a float defect against the metric's bound. NaN fails.
    fn defect(&mut self, family: &str, metric: usize, defect: f64) {
        let bound = self.check.metrics[metric].bound.expect("float metric");
        let m = &mut self.check.metrics[metric];
        let worst = m.max_defect.unwrap_or(0.0);
        m.max_defect = Some(if defect.is_nan() || worst.is_nan() { f64::NAN } else { worst.max(defect) });
        let ok = defect <= bound;
        let name = self.check.metrics[metric].name.clone();
        self.outcome(family, metric, ok, || format!("{name} = {defect:e} > {bound:e}"));
    }

    fn flag(&mut self, family: &str, metric: usize, ok: bool, note: impl FnOnce() -> String) {
        self.outcome(family, metric, ok, note);
    }

    fn error(&mut self, family: &str, metric: usize, err: crate::Error) {
        self.outcome(family, metric, false, || format!("error: {err}"));
    }

    fn finish(mut self) -> Check {
        self.check.passed = self.check.metrics.iter().all(Metric::passed);
        self.check
    }
}

fn frob_rel(a: &crate::linalg::Matrix, b: &crate::linalg::Matrix) -> f64 {
    (a - b).norm() / (1.0 + a.norm())
}

/// Closed-form `exp(ad_X)` against the numeric exponential of `ad_X`.
pub fn check_exp_oracle(cfg: &VerifyConfig, samples: usize) -> Check {
    let mut t = Tally::new(1, "exp_ad_closed_vs_oracle");
    let m = t.metric("relative_frobenius", Some(cfg.bound(1e-9)));
    for spec in family_sweep(cfg.k_max) {
        let label = spec.to_string();
        let alg = build(&spec).expect("sweep families build");
        for i in 0..samples {
            let x = uniform_vec(&mut cfg.rng(1, &label, i as u64), spec.dim(), COORD_RANGE);
            match exp_ad_closed(&spec, &x).and_then(|c| Ok((c, ad_matrix(&alg, &x)?))) {
                Ok((closed, ad)) => {
                    let d = frob_rel(&closed.matrix, &exp_matrix_numeric(&ad.matrix));
                    t.defect(&label, m, d);
                }
                Err(e) => t.error(&label, m, e),
            }
        }
    }
    t.finish()
}

/// Closed-form eigenvalues against the numeric eigensolver, and the
/// exponentiality flags.
pub fn check_eigenvalues(cfg: &VerifyConfig, samples: usize) -> Check {
    let mut t = Tally::new(2, "eigenvalues_and_exponentiality");
    let m = t.metric("multiset_distance", Some(cfg.bound(1e-8)));
    let flags = t.metric("exponential_flag", None);
    for spec in family_sweep(cfg.k_max) {
        let label = spec.to_string();
        let alg = build(&spec).expect("sweep families build");
        let forms = match closed_form_eigenvalues(&spec) {
            Ok(f) => f,
            Err(e) => {
                t.error(&label, m, e);
                continue;
            }
        };
        for i in 0..samples {
            let x = uniform_vec(&mut cfg.rng(2, &label, i as u64), spec.dim(), COORD_RANGE);
            let closed: Vec<_> = forms
                .iter()
                .flat_map(|f| std::iter::repeat_n(f.eval(&x), f.multiplicity))
                .collect();
            match ad_matrix(&alg, &x) {
                Ok(ad) => {
                    let d = multiset_distance(&closed, &numeric_eigenvalues(&ad.matrix)).unwrap_or(f64::INFINITY);
                    t.defect(&label, m, d);
                }
                Err(e) => t.error(&label, m, e),
            }
        }
        let expected = !matches!(spec, FamilySpec::G4_4)
            && !matches!(spec, FamilySpec::G3_3 { lambda } if lambda == 0.0);
        match is_exponential(&spec) {
            Ok(got) => t.flag(&label, flags, got == expected, || format!("exponential = {got}, expected {expected}")),
            Err(e) => t.error(&label, flags, e),
        }
    }
    t.finish()
}

/// Kirillov-form rank against the classified orbit dimension.
pub fn check_orbit_dimension(cfg: &VerifyConfig, samples: usize) -> Check {
    let mut t = Tally::new(3, "orbit_dimension_concordance");
    let m = t.metric("rank_equals_classified_dim", None);
    for spec in family_sweep(cfg.k_max) {
        let label = spec.to_string();
        let alg = build(&spec).expect("sweep families build");
        for i in 0..samples {
            let f = stratified_functional(&mut cfg.rng(3, &label, i as u64), spec.dim());
            match orbit_classify_with(&alg, &f, cfg.zero_threshold).and_then(|d| Ok((d.dim, orbit_dimension(&alg, &f)?))) {
                Ok((dim, rank)) => t.flag(&label, m, dim == rank, || format!("rank {rank} but classified {dim} at {f:?}")),
                Err(e) => t.error(&label, m, e),
            }
        }
    }
    t.finish()
}

/// Invariant drift and sign constraints along sampled coadjoint moves.
pub fn check_orbit_invariants(cfg: &VerifyConfig, functionals: usize, moves: usize) -> Check {
    let mut t = Tally::new(4, "orbit_invariant_conservation");
    let m = t.metric("relative_drift", Some(cfg.bound(1e-8)));
    let signs = t.metric("constraints_hold", None);
    for spec in family_sweep(cfg.k_max) {
        let label = spec.to_string();
        let alg = build(&spec).expect("sweep families build");
        for i in 0..functionals {
            let f = stratified_functional(&mut cfg.rng(4, &label, i as u64), spec.dim());
            let desc = match orbit_classify_with(&alg, &f, cfg.zero_threshold) {
                Ok(d) => d,
                Err(e) => {
                    t.error(&label, m, e);
                    continue;
                }
            };
            let seed = cfg.seed.wrapping_add(label_hash(&label)).wrapping_add(i as u64);
            let points = match sample_orbit(&alg, &f, moves, seed) {
                Ok(p) => p,
                Err(e) => {
                    t.error(&label, m, e);
                    continue;
                }
            };
            for p in points {
                match desc.drift(&p) {
                    Ok(d) => t.defect(&label, m, d),
                    Err(e) => t.error(&label, m, e),
                }
                t.flag(&label, signs, desc.constraints_hold(&p), || format!("constraint flipped at {p:?}"));
            }
        }
    }
    t.finish()
}

/// Faithful representations, the character shift of `(π∘φ) ⊕ ad` and the
/// exact `μ` table.
pub fn check_representations(cfg: &VerifyConfig, char_samples: usize) -> Check {
    let mut t = Tally::new(5, "representation_suite");
    let degree = t.metric("faithful_degree", None);
    let hom = t.metric("homomorphism_defect", Some(cfg.bound(1e-12)));
    let faithful = t.metric("faithfulness_rank", None);
    let shift = t.metric("character_shift", Some(cfg.bound(1e-9)));
    let mu = t.metric("mu_exact_table", None);
    for spec in family_sweep(cfg.k_max) {
        let label = spec.to_string();
        let n = spec.dim();
        let heis_center = matches!(spec, FamilySpec::G4_1 | FamilySpec::G6_2k_1 { .. });
        let trivial_center = matches!(
            spec,
            FamilySpec::G3_1 { .. } | FamilySpec::G3_2 | FamilySpec::G3_3 { .. } | FamilySpec::G4_3 | FamilySpec::G4_4
        );
        if !(heis_center || trivial_center) {
            continue;
        }
        let alg = build(&spec).expect("sweep families build");
        let rep = match faithful_rep(&alg) {
            Ok(r) => r,
            Err(e) => {
                t.error(&label, degree, e);
                continue;
            }
        };
        let want = if heis_center { 3 * n / 2 + 1 } else { n };
        t.flag(&label, degree, rep.degree == want, || format!("degree {} expected {want}", rep.degree));
        t.defect(&label, hom, verify_homomorphism(&alg, &rep));
        t.flag(&label, faithful, verify_faithful(&alg, &rep), || "basis images are dependent".into());
        if heis_center {
            let adj = crate::representation::adjoint_rep(&alg);
            for i in 0..char_samples {
                let x = uniform_vec(&mut cfg.rng(5, &label, i as u64), n, COORD_RANGE);
                match character(&rep, &x).and_then(|a| Ok(a - character(&adj, &x)?)) {
                    Ok(d) => t.defect(&label, shift, (d - (n / 2 + 1) as f64).abs()),
                    Err(e) => t.error(&label, shift, e),
                }
            }
        }
    }
    let table = [
        (FamilySpec::G4_1, 4),
        (FamilySpec::G4_2, 4),
        (FamilySpec::G4_3, 3),
        (FamilySpec::G4_4, 3),
        (FamilySpec::G5_2k { k: 0 }, 4),
        (FamilySpec::G6_2k_2 { k: 0 }, 5),
    ];
    for (spec, want) in table {
        let got = mu_report(&spec).exact_known;
        t.flag(&spec.to_string(), mu, got == Some(want), || format!("exact mu {got:?}, expected {want}"));
    }
    t.finish()
}

/// Closed-form adjoint characters against the trace of the closed-form
/// exponential, and the value `n` at the origin.
pub fn check_characters(cfg: &VerifyConfig, samples: usize) -> Check {
    let mut t = Tally::new(6, "character_table");
    let m = t.metric("character_vs_trace", Some(cfg.bound(1e-9)));
    let origin = t.metric("character_at_origin", None);
    for spec in family_sweep(cfg.k_max) {
        let label = spec.to_string();
        let n = spec.dim();
        for i in 0..samples {
            let x = uniform_vec(&mut cfg.rng(6, &label, i as u64), n, COORD_RANGE);
            match character_ad(&spec, &x).and_then(|c| Ok((c, exp_ad_closed(&spec, &x)?.matrix.trace()))) {
                Ok((c, tr)) => t.defect(&label, m, (c - tr).abs()),
                Err(e) => t.error(&label, m, e),
            }
        }
        match character_ad(&spec, &vec![0.0; n]) {
            Ok(c) => t.flag(&label, origin, c == n as f64, || format!("chi_ad(0) = {c}")),
            Err(e) => t.error(&label, origin, e),
        }
    }
    t.finish()
}

fn random_leaf_point<R: Rng>(rng: &mut R, alg: &LieAlgebra, zero: f64) -> Vec<f64> {
    loop {
        let f = uniform_vec(rng, alg.dim(), COORD_RANGE);
        if in_foliated_manifold_with(alg, &f, zero).unwrap_or(false) {
            return f;
        }
    }
}

/// Tangency of the differential systems on `samples` points of one family.
pub fn tangency_sweep(alg: &LieAlgebra, samples: usize, seed: u64, zero: f64) -> Result<f64> {
    let label = alg.spec().to_string();
    let mut worst = 0.0f64;
    for i in 0..samples {
        let mut rng = rng_for(seed.wrapping_add(label_hash(&format!("7t:{label}"))), i as u64);
        worst = worst.max(verify_tangency(alg, &random_leaf_point(&mut rng, alg, zero))?);
    }
    Ok(worst)
}

/// Random point of dimension `n` with `|x_4/x_2| ≤ 10` and `x_2 ≠ 0`.
fn h_point<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let x = uniform_vec(rng, n, COORD_RANGE);
        if x[1].abs() > 1e-12 && (x[3] / x[1]).abs() <= 10.0 {
            return x;
        }
    }
}

/// Largest h-identity residual over `samples` points of dimension `n`.
pub fn h_sweep(n: usize, samples: usize, seed: u64) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..samples {
        let mut rng = rng_for(seed.wrapping_add(label_hash(&format!("7h:{n}"))), i as u64);
        let x = h_point(&mut rng, n);
        equivalence_h(&x)?;
        worst = worst.max(h_residual(&x)?);
    }
    Ok(worst)
}

/// Largest leafwise Jacobian spread over `triples` random `(X, F, F')`
/// with `F'` on the leaf of `F`.
pub fn jacobian_sweep(cfg: &VerifyConfig, alg: &LieAlgebra, triples: usize) -> Result<f64> {
    let label = alg.spec().to_string();
    let n = alg.dim();
    let mut worst = 0.0f64;
    for i in 0..triples {
        let mut rng = cfg.rng(27, &label, i as u64);
        let x = uniform_vec(&mut rng, n, COORD_RANGE);
        let y = uniform_vec(&mut rng, n, COORD_RANGE);
        let f = random_leaf_point(&mut rng, alg, cfg.zero_threshold);
        let f2 = coadjoint_move(alg, &f, &y)?;
        worst = worst.max(jacobian_constancy(alg, &x, &f, &f2)?);
    }
    Ok(worst)
}

/// Tangency, the h identity, leafwise Jacobian constancy and the labels.
pub fn check_foliation(cfg: &VerifyConfig, tangency: usize, h_points: usize, triples: usize) -> Check {
    let mut t = Tally::new(7, "foliation_suite");
    let tan = t.metric("tangency_defect", Some(cfg.bound(1e-10)));
    let h = t.metric("h_identity_residual", Some(cfg.bound(1e-10)));
    let jac = t.metric("jacobian_constancy", Some(cfg.bound(1e-8)));
    let labels = t.metric("connes_label", None);
    for spec in foliation_sweep(cfg.k_max) {
        let label = spec.to_string();
        let alg = build(&spec).expect("sweep families build");
        for i in 0..tangency {
            let f = random_leaf_point(&mut cfg.rng(7, &label, i as u64), &alg, cfg.zero_threshold);
            match verify_tangency(&alg, &f) {
                Ok(d) => t.defect(&label, tan, d),
                Err(e) => t.error(&label, tan, e),
            }
        }
        if let FamilySpec::G6_2k_1 { .. } = spec {
            for i in 0..h_points {
                let x = h_point(&mut cfg.rng(17, &label, i as u64), spec.dim());
                match h_residual(&x) {
                    Ok(d) => t.defect(&label, h, d),
                    Err(e) => t.error(&label, h, e),
                }
            }
        }
        for i in 0..triples {
            let mut rng = cfg.rng(27, &label, i as u64);
            let x = uniform_vec(&mut rng, spec.dim(), COORD_RANGE);
            let y = uniform_vec(&mut rng, spec.dim(), COORD_RANGE);
            let f = random_leaf_point(&mut rng, &alg, cfg.zero_threshold);
            match coadjoint_move(&alg, &f, &y).and_then(|f2| jacobian_constancy(&alg, &x, &f, &f2)) {
                Ok(d) => t.defect(&label, jac, d),
                Err(e) => t.error(&label, jac, e),
            }
        }
        let want = if matches!(spec, FamilySpec::G5_2k { .. }) { "C0(R*) ⊗ K" } else { "C0(R* x R) ⊗ K" };
        match connes_label(&alg) {
            Ok(got) => t.flag(&label, labels, got == want, || format!("label `{got}`")),
            Err(e) => t.error(&label, labels, e),
        }
    }
    t.finish()
}

/// Bit-exact Jacobi identity for integer structure constants and exact
/// antisymmetry everywhere.
pub fn check_exactness(cfg: &VerifyConfig) -> Check {
    let mut t = Tally::new(8, "exactness");
    let jacobi = t.metric("jacobi_defect_exact", None);
    let anti = t.metric("antisymmetry_exact", None);
    let mut specs = family_sweep(cfg.k_max);
    specs.extend([FamilySpec::AffR, FamilySpec::AffC, FamilySpec::Heisenberg { m: 2 }]);
    for spec in specs {
        let label = spec.to_string();
        let alg = build(&spec).expect("sweep families build");
        if alg.tensor().iter().all(|c| c.fract() == 0.0) {
            let d = alg.jacobi_defect();
            t.flag(&label, jacobi, d == 0.0, || format!("jacobi defect {d:e}"));
        }
        let d = alg.antisymmetry_defect();
        t.flag(&label, anti, d == 0.0, || format!("antisymmetry defect {d:e}"));
    }
    t.finish()
}

/// Sample counts of a full run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSizes {
    pub exp: usize,
    pub eigen: usize,
    pub orbit_dim: usize,
    pub orbit_functionals: usize,
    pub orbit_moves: usize,
    pub char_shift: usize,
    pub characters: usize,
    pub tangency: usize,
    pub h_points: usize,
    pub jacobian_triples: usize,
}

impl Default for SampleSizes {
    fn default() -> Self {
        SampleSizes {
            exp: 1000,
            eigen: 1000,
            orbit_dim: 500,
            orbit_functionals: 100,
            orbit_moves: 50,
            char_shift: 200,
            characters: 1000,
            tangency: 500,
            h_points: 1000,
            jacobian_triples: 100,
        }
    }
}

/// Aggregate result of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub k_max: u32,
    pub tolerance: Option<f64>,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Float-bounded metrics that exceeded their bound.
    pub fn exceeded(&self) -> Vec<(u8, &Metric)> {
        self.checks
            .iter()
            .flat_map(|c| c.metrics.iter().map(move |m| (c.id, m)))
            .filter(|(_, m)| m.bound.is_some() && !m.passed())
            .collect()
    }

    /// Plain-text rendering, one line per check plus indented metrics.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let tol = self.tolerance.map_or("default".to_string(), |t| format!("{t:e}"));
        let _ = writeln!(s, "verify-all seed={} k_max={} tolerance={tol}", self.seed, self.k_max);
        for c in &self.checks {
            let _ = writeln!(s, "[{}] criterion {} {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name);
            for m in &c.metrics {
                let _ = write!(s, "    {} samples={} failures={}", m.name, m.samples, m.failures);
                if let (Some(d), Some(b)) = (m.max_defect, m.bound) {
                    let _ = write!(s, " max={d:e} bound={b:e}");
                }
                s.push('\n');
            }
            for n in &c.notes {
                let _ = writeln!(s, "    note: {n}");
            }
        }
        let exceeded = self.exceeded();
        if !exceeded.is_empty() {
            let names: Vec<String> = exceeded.iter().map(|(id, m)| format!("{id}:{}", m.name)).collect();
            let _ = writeln!(s, "exceeded: {}", names.join(", "));
        }
        let _ = writeln!(s, "overall: {}", if self.passed { "PASS" } else { "FAIL" });
        s
    }

    /// CSV rendering: one row per metric.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record(["criterion", "check", "metric", "samples", "failures", "max_defect", "bound", "passed"]);
        for c in &self.checks {
            for m in &c.metrics {
                let opt = |v: Option<f64>| v.map_or(String::new(), |v| v.to_string());
                let _ = w.write_record([
                    c.id.to_string(),
                    c.name.clone(),
                    m.name.clone(),
                    m.samples.to_string(),
                    m.failures.to_string(),
                    opt(m.max_defect),
                    opt(m.bound),
                    m.passed().to_string(),
                ]);
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf8 csv")
    }
}

/// Runs criteria 1 to 8. Determinism of whole runs is checked externally
/// by comparing two reports.
pub fn run_all(cfg: &VerifyConfig, n: &SampleSizes) -> Report {
    let checks = vec![
        check_exp_oracle(cfg, n.exp),
        check_eigenvalues(cfg, n.eigen),
        check_orbit_dimension(cfg, n.orbit_dim),
        check_orbit_invariants(cfg, n.orbit_functionals, n.orbit_moves),
        check_representations(cfg, n.char_shift),
        check_characters(cfg, n.characters),
        check_foliation(cfg, n.tangency, n.h_points, n.jacobian_triples),
        check_exactness(cfg),
    ];
    Report {
        seed: cfg.seed,
        k_max: cfg.k_max,
        tolerance: cfg.tolerance,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SampleSizes {
        SampleSizes {
            exp: 20,
            eigen: 20,
            orbit_dim: 40,
            orbit_functionals: 5,
            orbit_moves: 5,
            char_shift: 10,
            characters: 20,
            tangency: 20,
            h_points: 20,
            jacobian_triples: 5,
        }
    }

    #[test]
    fn sweep_shape() {
        assert_eq!(family_sweep(3).len(), 12 + 12);
        assert_eq!(foliation_sweep(1).len(), 6);
    }

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let cfg = VerifyConfig { k_max: 1, ..VerifyConfig::default() };
        let a = run_all(&cfg, &small());
        assert!(a.passed, "{}", a.to_text());
        assert_eq!(a.to_json().to_string(), run_all(&cfg, &small()).to_json().to_string());
    }

    #[test]
    fn tight_tolerance_is_reported() {
        let cfg = VerifyConfig { k_max: 0, tolerance: Some(1e-300), ..VerifyConfig::default() };
        let r = run_all(&cfg, &small());
        assert!(!r.passed);
        assert!(r.to_text().contains("exceeded:"));
        assert!(r.exceeded().iter().all(|(_, m)| m.bound == Some(1e-300)));
    }
}
