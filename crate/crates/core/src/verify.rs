//! Mechanical verification of the polyhedral identities tying core images to
//! their closed-form descriptions.
//!
//! Every checker computes both sides of its identity independently and
//! compares them with exact arithmetic. Nothing is assumed: a failed
//! comparison produces a `fails` verdict with a checkable witness (a point or
//! ray on the wrong side of a named constraint), and unmet preconditions
//! produce `skipped` verdicts with a reason. Reports serialize to JSON with a
//! stable field order, so suite runs are byte-reproducible given a seed.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::allocation::{
    blocked_coalitions, enumerate_selectors, marginal_value, selector_count,
    union_closure_violation, Permutation, Selector, SharingFunction,
};
use crate::cores::{
    build_core, build_monotone_cone, core_polyhedron, is_k_balanced_monotone, mobius_coalitions,
    preimputation_polyhedron, project_core, value_map_matrix, CoreSpec, CoreVariant,
};
use crate::games::{self, GameClass};
use crate::polyhedra::{
    compare, dd, fm, payoff_vars, DdConfig, FmConfig, HPolyhedron, LinearConstraint, Relation,
    VPolyhedron,
};
use crate::set_functions::{Coalition, SetFunction};
use crate::{Error, Result, Scalar};

/// Budgets shared by all checkers.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub fm: FmConfig,
    pub dd: DdConfig,
    pub selector_budget: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            fm: FmConfig::default(),
            dd: DdConfig::default(),
            selector_budget: 25_000,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
}

/// Outcome of one verification instance.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub stats: BTreeMap<String, u64>,
    /// Wall-clock time; shown in human output, excluded from structured
    /// output to keep reports byte-reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    fn new(theorem: &str, instance: &str) -> Self {
        TheoremReport {
            theorem: theorem.into(),
            instance: instance.into(),
            verdict: Verdict::Holds,
            reason: None,
            witness: None,
            notes: Vec::new(),
            stats: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn fail(mut self, witness: String) -> Self {
        self.verdict = Verdict::Fails;
        self.witness = Some(witness);
        self
    }

    fn skip(mut self, reason: String) -> Self {
        self.verdict = Verdict::Skipped;
        self.reason = Some(reason);
        self
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn stat(&mut self, key: &str, value: u64) {
        self.stats.insert(key.into(), value);
    }

    pub fn render_human(&self) -> String {
        let mut line = format!(
            "[{}] {} {} ({:.1}ms)",
            match self.verdict {
                Verdict::Holds => "holds",
                Verdict::Fails => "FAILS",
                Verdict::Skipped => "skip ",
            },
            self.theorem,
            self.instance,
            self.elapsed.as_secs_f64() * 1e3,
        );
        if let Some(reason) = &self.reason {
            line.push_str(&format!("\n    reason: {reason}"));
        }
        if let Some(witness) = &self.witness {
            line.push_str(&format!("\n    witness: {witness}"));
        }
        for note in &self.notes {
            line.push_str(&format!("\n    note: {note}"));
        }
        line
    }
}

fn points_text<T: Scalar>(point: &[T]) -> String {
    let parts: Vec<String> = point.iter().map(T::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Payoff-space rationality system: preimputations satisfying
/// `x(S) ≥ v(S)` for every proper nonempty coalition outside `blocked`.
fn rationality_outside<T: Scalar>(
    v: &SetFunction<T>,
    blocked: &BTreeSet<Coalition>,
) -> HPolyhedron<T> {
    let n = v.player_count();
    let full = Coalition::full(n);
    let mut p = preimputation_polyhedron(v);
    for s in Coalition::nonempty(n) {
        if s == full || blocked.contains(&s) {
            continue;
        }
        let coeffs = (1..=n)
            .map(|i| if s.contains(i) { T::one() } else { T::zero() })
            .collect();
        p.push(LinearConstraint::new(coeffs, Relation::Ge, v.value(s).clone()))
            .expect("dimension matches");
    }
    p
}

fn nonnegative_orthant_rows<T: Scalar>(p: &mut HPolyhedron<T>, n: usize) {
    for i in 1..=n {
        let mut coeffs = vec![T::zero(); n];
        coeffs[i - 1] = T::one();
        p.push(LinearConstraint::new(coeffs, Relation::Ge, T::zero()))
            .expect("dimension matches");
    }
}

/// Prefix-chain system of a permutation: preimputations whose rank prefixes
/// are rational against the game.
pub fn chain_polyhedron<T: Scalar>(v: &SetFunction<T>, sigma: &Permutation) -> HPolyhedron<T> {
    let n = v.player_count();
    let mut p = preimputation_polyhedron(v);
    for i in 1..n {
        let prefix = sigma.prefix(i);
        let coeffs = (1..=n)
            .map(|j| if prefix.contains(j) { T::one() } else { T::zero() })
            .collect();
        p.push(LinearConstraint::new(
            coeffs,
            Relation::Ge,
            v.value(prefix).clone(),
        ))
        .expect("dimension matches");
    }
    p
}

/// Selector image of a Möbius coordinate vector.
fn selector_image_of_point<T: Scalar>(
    alpha: &Selector,
    axes: &[Coalition],
    point: &[T],
    n: usize,
) -> Vec<T> {
    let mut x = vec![T::zero(); n];
    for (c, value) in axes.iter().zip(point) {
        if !value.is_zero() {
            x[alpha.choose(*c) - 1] += value.clone();
        }
    }
    x
}

/// Image of the order-k core under a strictly positive sharing rule equals
/// the whole preimputation hyperplane. Suite token `th1`.
pub fn verify_positive_sharing_image<T: Scalar>(
    v: &SetFunction<T>,
    k: usize,
    q: &SharingFunction<T>,
    instance: &str,
    cfg: &VerifyConfig,
) -> Result<TheoremReport> {
    let timer = Instant::now();
    let mut report = TheoremReport::new("th1", instance);
    if k < 2 {
        return Err(Error::InvalidArgument("the identity needs k >= 2".into()));
    }
    if !q.is_strictly_positive_up_to(k) {
        report = report.skip("sharing rule has zero weights on some member".into());
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    let spec = CoreSpec::new(v, k, CoreVariant::Plain)?;
    let projected = project_core(&spec, q, &cfg.fm)?;
    report.stat("image_rows", projected.constraints().len() as u64);
    let target = preimputation_polyhedron(v);
    if let Some(failure) = compare::check_equal(&projected, &target, &cfg.fm)? {
        report = report.fail(failure.render(target.vars()));
    } else if projected.constraints().len() == 1 {
        report.note("image reduces to the single efficiency constraint");
    }
    report.elapsed = timer.elapsed();
    Ok(report)
}

/// Image of the order-k core under the marginal value of a permutation:
/// equals the prefix-chain system, contains the marginal vector, and its
/// generators are exactly that vector plus the adjacent-rank difference
/// directions. Suite token `th2`.
pub fn verify_marginal_image<T: Scalar>(
    v: &SetFunction<T>,
    k: usize,
    sigma: &Permutation,
    instance: &str,
    cfg: &VerifyConfig,
) -> Result<TheoremReport> {
    let timer = Instant::now();
    let mut report = TheoremReport::new("th2", instance);
    if k < 2 {
        return Err(Error::InvalidArgument("the identity needs k >= 2".into()));
    }
    let n = v.player_count();
    let spec = CoreSpec::new(v, k, CoreVariant::Plain)?;
    let q = sigma.last_member_selector().to_sharing::<T>();
    let projected = project_core(&spec, &q, &cfg.fm)?;
    report.stat("image_rows", projected.constraints().len() as u64);

    let chain = chain_polyhedron(v, sigma);
    if let Some(failure) = compare::check_equal(&projected, &chain, &cfg.fm)? {
        report = report.fail(format!("chain system mismatch: {}", failure.render(chain.vars())));
        report.elapsed = timer.elapsed();
        return Ok(report);
    }

    let marginal = marginal_value(sigma, v);
    if !projected.contains(marginal.as_slice())? {
        report = report.fail(format!(
            "marginal vector {} escapes the image",
            points_text(marginal.as_slice())
        ));
        report.elapsed = timer.elapsed();
        return Ok(report);
    }

    let gens = dd::enumerate_generators(&projected, &cfg.dd)?;
    let mut expected = VPolyhedron {
        vertices: vec![marginal.as_slice().to_vec()],
        rays: (2..=n)
            .map(|i| {
                let mut ray = vec![T::zero(); n];
                ray[sigma.player_at_rank(i - 1) - 1] = T::one();
                ray[sigma.player_at_rank(i) - 1] = -T::one();
                ray
            })
            .collect(),
    };
    expected.canonicalize();
    report.stat("image_vertices", gens.vertices.len() as u64);
    report.stat("image_rays", gens.rays.len() as u64);
    if gens != expected {
        report = report.fail(format!(
            "generator mismatch: got {:?} vertices and rays {}, expected vertex {} with adjacent-rank rays",
            gens.vertices.len(),
            gens.rays.len(),
            points_text(marginal.as_slice()),
        ));
    } else {
        report.note("unique vertex is the marginal vector; rays are adjacent-rank differences");
    }
    report.elapsed = timer.elapsed();
    Ok(report)
}

/// Image of the order-k core under a selector value equals the preimputation
/// hyperplane plus the rationality constraints of the unblocked coalitions.
/// Suite token `th3`.
///
/// The blocked collection is computed both with witnessing coalitions bounded
/// by `k` and by `n`; the verdict uses the `bound` argument and the report
/// records which of the two matches the projection.
pub fn verify_selector_image<T: Scalar>(
    v: &SetFunction<T>,
    k: usize,
    alpha: &Selector,
    bound: usize,
    instance: &str,
    cfg: &VerifyConfig,
) -> Result<TheoremReport> {
    let timer = Instant::now();
    let mut report = TheoremReport::new("th3", instance);
    if k < 2 {
        return Err(Error::InvalidArgument("the identity needs k >= 2".into()));
    }
    let n = v.player_count();
    let spec = CoreSpec::new(v, k, CoreVariant::Plain)?;
    let projected = project_core(&spec, &alpha.to_sharing(), &cfg.fm)?;
    report.stat("image_rows", projected.constraints().len() as u64);

    let blocked_k = blocked_coalitions(alpha, k)?;
    let blocked_n = blocked_coalitions(alpha, n)?;
    let same = blocked_k == blocked_n;
    report.stat("blocked_k", blocked_k.len() as u64);
    report.stat("blocked_n", blocked_n.len() as u64);

    let rhs_k = rationality_outside(v, &blocked_k);
    let matches_k = compare::equal(&projected, &rhs_k, &cfg.fm)?;
    let matches_n = if same {
        matches_k
    } else {
        let rhs_n = rationality_outside(v, &blocked_n);
        compare::equal(&projected, &rhs_n, &cfg.fm)?
    };
    if same {
        report.note("blocked collections with size bounds k and n coincide");
    } else {
        report.note(format!(
            "blocked collections differ; bound k matches projection: {matches_k}, bound n matches: {matches_n}"
        ));
    }

    let verdict_matches = if bound <= k { matches_k } else { matches_n };
    if !verdict_matches {
        let rhs = if bound <= k {
            rhs_k
        } else {
            rationality_outside(v, &blocked_n)
        };
        let failure = compare::check_equal(&projected, &rhs, &cfg.fm)?
            .expect("inequality just observed");
        report = report.fail(failure.render(&payoff_vars(n)));
    }
    report.elapsed = timer.elapsed();
    Ok(report)
}

/// Intersecting the selector-value images of the order-k core over all
/// selectors (and, separately, over all permutations) recovers the classical
/// core. Suite token `th4`.
pub fn verify_image_intersection<T: Scalar>(
    v: &SetFunction<T>,
    k: usize,
    instance: &str,
    cfg: &VerifyConfig,
) -> Result<TheoremReport> {
    let timer = Instant::now();
    let mut report = TheoremReport::new("th4", instance);
    if k < 2 {
        return Err(Error::InvalidArgument("the identity needs k >= 2".into()));
    }
    let n = v.player_count();
    let spec = CoreSpec::new(v, k, CoreVariant::Plain)?;
    let core_x = core_polyhedron(v);
    let core_empty = fm::is_empty(&core_x, &cfg.fm)?;

    // intersection in halfspace form: concatenate the projected systems
    let mut selector_intersection = HPolyhedron::<T>::universe(payoff_vars(n));
    let mut selectors = 0u64;
    for alpha in enumerate_selectors(n, n, cfg.selector_budget)? {
        let projected = project_core(&spec, &alpha.to_sharing(), &cfg.fm)?;
        for c in projected.constraints() {
            selector_intersection.push(c.clone())?;
        }
        selectors += 1;
    }
    let selector_intersection =
        fm::remove_redundant(&selector_intersection, fm::Redundancy::Full, &cfg.fm)?;
    report.stat("selectors", selectors);
    report.stat(
        "selector_intersection_rows",
        selector_intersection.constraints().len() as u64,
    );

    let mut marginal_intersection = HPolyhedron::<T>::universe(payoff_vars(n));
    for sigma in Permutation::all(n) {
        let q = sigma.last_member_selector().to_sharing::<T>();
        let projected = project_core(&spec, &q, &cfg.fm)?;
        for c in projected.constraints() {
            marginal_intersection.push(c.clone())?;
        }
    }
    let marginal_intersection =
        fm::remove_redundant(&marginal_intersection, fm::Redundancy::Full, &cfg.fm)?;

    if let Some(failure) = compare::check_equal(&selector_intersection, &core_x, &cfg.fm)? {
        report = report.fail(format!(
            "selector intersection differs from the core: {}",
            failure.render(core_x.vars())
        ));
    } else if let Some(failure) = compare::check_equal(&marginal_intersection, &core_x, &cfg.fm)? {
        report = report.fail(format!(
            "permutation intersection differs from the core: {}",
            failure.render(core_x.vars())
        ));
    } else if core_empty {
        report.note("core is empty and both intersections are empty");
    } else {
        report.note("both intersections equal the nonempty core");
    }
    report.elapsed = timer.elapsed();
    Ok(report)
}

/// Image of the monotone order-k core under a union-closed selector equals
/// the nonnegative part of the preimputation hyperplane plus the unblocked
/// rationality constraints. Suite token `th5`.
pub fn verify_monotone_selector_image<T: Scalar>(
    v: &SetFunction<T>,
    k: usize,
    alpha: &Selector,
    instance: &str,
    cfg: &VerifyConfig,
) -> Result<TheoremReport> {
    let timer = Instant::now();
    let mut report = TheoremReport::new("th5", instance);
    if k < 2 {
        return Err(Error::InvalidArgument("the identity needs k >= 2".into()));
    }
    let n = v.player_count();
    if let Some((a, b, c)) = union_closure_violation(alpha, k)? {
        report = report.skip(format!(
            "selector is not union-closed at order {k}: {a} and {b} pick player {}, but {c} picks {}",
            alpha.choose(a),
            alpha.choose(c)
        ));
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    if !is_k_balanced_monotone(v, k, &cfg.fm)? {
        report = report.skip("monotone order-k core is empty".into());
        report.elapsed = timer.elapsed();
        return Ok(report);
    }

    let spec = CoreSpec::new(v, k, CoreVariant::Monotone)?;
    let projected = project_core(&spec, &alpha.to_sharing(), &cfg.fm)?;
    report.stat("image_rows", projected.constraints().len() as u64);

    let blocked_k = blocked_coalitions(alpha, k)?;
    let blocked_n = blocked_coalitions(alpha, n)?;
    let mut target = rationality_outside(v, &blocked_k);
    nonnegative_orthant_rows(&mut target, n);
    if blocked_k == blocked_n {
        report.note("blocked collections with size bounds k and n coincide");
    } else {
        let mut target_n = rationality_outside(v, &blocked_n);
        nonnegative_orthant_rows(&mut target_n, n);
        let matches_n = compare::equal(&projected, &target_n, &cfg.fm)?;
        report.note(format!(
            "blocked collections differ; bound n matches projection: {matches_n}"
        ));
    }

    // the same image through the lens of intersecting first vs mapping first
    let plain_spec = CoreSpec::new(v, k, CoreVariant::Plain)?;
    let plain_image = project_core(&plain_spec, &alpha.to_sharing(), &cfg.fm)?;
    let cone = build_monotone_cone::<T>(n, k);
    let matrix = value_map_matrix(&alpha.to_sharing(), k);
    let cone_image = fm::linear_image(&cone, &matrix, &payoff_vars(n), &cfg.fm)?;
    let images_intersected = plain_image.intersect(&cone_image)?;
    let map_commutes = compare::equal(&projected, &images_intersected, &cfg.fm)?;
    report.note(format!(
        "image of intersection equals intersection of images: {map_commutes}"
    ));

    if let Some(failure) = compare::check_equal(&projected, &target, &cfg.fm)? {
        report = report.fail(failure.render(target.vars()));
    }
    report.elapsed = timer.elapsed();
    Ok(report)
}

/// The monotone order-k core is a polytope whose image vertices come from
/// source vertices, and the image equals the hull of the mapped vertices.
/// Also spot-checks that selector images of core points stay inside the hull
/// of the vertex selectope points. Suite token `prop1`.
pub fn verify_bounded_image_extremes<T: Scalar>(
    v: &SetFunction<T>,
    k: usize,
    q: &SharingFunction<T>,
    instance: &str,
    cfg: &VerifyConfig,
) -> Result<TheoremReport> {
    let timer = Instant::now();
    let mut report = TheoremReport::new("prop1", instance);
    if k < 2 {
        return Err(Error::InvalidArgument("the identity needs k >= 2".into()));
    }
    let n = v.player_count();
    let spec = CoreSpec::new(v, k, CoreVariant::Monotone)?;
    let mc = build_core(&spec);
    let gens = dd::enumerate_generators(&mc, &cfg.dd)?;
    if gens.is_empty_set() {
        report = report.skip("monotone order-k core is empty".into());
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    if let Some(ray) = gens.rays.first() {
        report = report.fail(format!(
            "monotone order-k core must be bounded, found ray {}",
            points_text(ray)
        ));
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    report.stat("source_vertices", gens.vertices.len() as u64);

    let matrix = value_map_matrix(q, k);
    let mut mapped: BTreeSet<Vec<T>> = BTreeSet::new();
    for vertex in &gens.vertices {
        let image: Vec<T> = matrix
            .iter()
            .map(|row| crate::scalar::dot(row, vertex))
            .collect();
        mapped.insert(image);
    }
    let mapped: Vec<Vec<T>> = mapped.into_iter().collect();
    report.stat("mapped_vertices", mapped.len() as u64);

    let image = project_core(&spec, q, &cfg.fm)?;
    let image_gens = dd::enumerate_generators(&image, &cfg.dd)?;
    report.stat("image_vertices", image_gens.vertices.len() as u64);
    if let Some(ray) = image_gens.rays.first() {
        report = report.fail(format!(
            "image of a polytope must be bounded, found ray {}",
            points_text(ray)
        ));
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    if image_gens.vertices.len() > gens.vertices.len() {
        report = report.fail(format!(
            "image has {} vertices, more than the {} source vertices",
            image_gens.vertices.len(),
            gens.vertices.len()
        ));
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    for vertex in &image_gens.vertices {
        if !mapped.contains(vertex) {
            report = report.fail(format!(
                "image vertex {} is not the image of any source vertex",
                points_text(vertex)
            ));
            report.elapsed = timer.elapsed();
            return Ok(report);
        }
    }

    let hull = dd::hrep_from_vrep(
        &VPolyhedron {
            vertices: mapped.clone(),
            rays: Vec::new(),
        },
        &payoff_vars(n),
        &cfg.dd,
    )?;
    if let Some(failure) = compare::check_equal(&image, &hull, &cfg.fm)? {
        report = report.fail(format!(
            "image differs from the hull of mapped vertices: {}",
            failure.render(&payoff_vars(n))
        ));
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    report.note("image equals the hull of the mapped source vertices");

    // selectope spot-check: selector images of sampled core points stay in
    // the hull of the vertex selectope points
    let axes = mobius_coalitions(n, k);
    let mut selectope_points: BTreeSet<Vec<T>> = BTreeSet::new();
    for alpha in enumerate_selectors(n, n, cfg.selector_budget)? {
        for vertex in &gens.vertices {
            selectope_points.insert(selector_image_of_point(&alpha, &axes, vertex, n));
        }
    }
    let selectope_hull = dd::hrep_from_vrep(
        &VPolyhedron {
            vertices: selectope_points.into_iter().collect(),
            rays: Vec::new(),
        },
        &payoff_vars(n),
        &cfg.dd,
    )?;
    let mut samples: Vec<Vec<T>> = gens.vertices.clone();
    if gens.vertices.len() > 1 {
        let count = T::from_int(gens.vertices.len() as i64);
        let centroid: Vec<T> = (0..mc.dimension())
            .map(|i| {
                let mut acc = T::zero();
                for vtx in &gens.vertices {
                    acc += vtx[i].clone();
                }
                acc / count.clone()
            })
            .collect();
        samples.push(centroid);
        for pair in gens.vertices.windows(2).take(8) {
            let mid: Vec<T> = pair[0]
                .iter()
                .zip(&pair[1])
                .map(|(a, b)| (a.clone() + b.clone()) / T::from_int(2))
                .collect();
            samples.push(mid);
        }
    }
    let mut checked = 0u64;
    for sample in &samples {
        for alpha in enumerate_selectors(n, n, cfg.selector_budget)? {
            let y = selector_image_of_point(&alpha, &axes, sample, n);
            if !selectope_hull.contains(&y)? {
                report = report.fail(format!(
                    "selector image {} of a core point leaves the vertex selectope hull",
                    points_text(&y)
                ));
                report.elapsed = timer.elapsed();
                return Ok(report);
            }
            checked += 1;
        }
    }
    report.stat("selectope_samples", checked);
    report.elapsed = timer.elapsed();
    Ok(report)
}

/// Nonempty classical cores are contained in every sharing image of the
/// order-k core (and the monotone analogue when it applies). Suite token
/// `prop3`.
pub fn verify_core_inclusion<T: Scalar>(
    v: &SetFunction<T>,
    k: usize,
    q: &SharingFunction<T>,
    instance: &str,
    cfg: &VerifyConfig,
) -> Result<TheoremReport> {
    let timer = Instant::now();
    let mut report = TheoremReport::new("prop3", instance);
    if k < 2 {
        return Err(Error::InvalidArgument("the identity needs k >= 2".into()));
    }
    let core_x = core_polyhedron(v);
    if fm::is_empty(&core_x, &cfg.fm)? {
        report = report.skip("classical core is empty".into());
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    let spec = CoreSpec::new(v, k, CoreVariant::Plain)?;
    let image = project_core(&spec, q, &cfg.fm)?;
    if let Some(failure) = compare::check_subset(&core_x, &image, &cfg.fm)? {
        report = report.fail(format!(
            "core point escapes the image: {}",
            failure.render(core_x.vars())
        ));
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    report.note("core is contained in the sharing image");

    let mono_spec = CoreSpec::new(v, 1, CoreVariant::Monotone)?;
    let mc_x = build_core(&mono_spec).with_var_names(payoff_vars(v.player_count()))?;
    if fm::is_empty(&mc_x, &cfg.fm)? {
        report.note("monotone core is empty; monotone inclusion not applicable");
    } else {
        let k_mono = CoreSpec::new(v, k, CoreVariant::Monotone)?;
        let mono_image = project_core(&k_mono, q, &cfg.fm)?;
        if let Some(failure) = compare::check_subset(&mc_x, &mono_image, &cfg.fm)? {
            report = report.fail(format!(
                "monotone core point escapes the monotone image: {}",
                failure.render(mc_x.vars())
            ));
            report.elapsed = timer.elapsed();
            return Ok(report);
        }
        report.note("monotone core is contained in the monotone sharing image");
    }
    report.elapsed = timer.elapsed();
    Ok(report)
}

/// At order 1 the monotone core and the positive core are the same
/// polyhedron; when every singleton worth is nonnegative the positive core
/// moreover equals the core. Suite token `remark1`.
pub fn verify_monotone_equals_positive<T: Scalar>(
    v: &SetFunction<T>,
    instance: &str,
    cfg: &VerifyConfig,
) -> Result<TheoremReport> {
    let timer = Instant::now();
    let mut report = TheoremReport::new("remark1", instance);
    let monotone = build_core(&CoreSpec::new(v, 1, CoreVariant::Monotone)?);
    let positive = build_core(&CoreSpec::new(v, 1, CoreVariant::Positive)?);
    if let Some(failure) = compare::check_equal(&monotone, &positive, &cfg.fm)? {
        report = report.fail(format!(
            "monotone and positive cores differ: {}",
            failure.render(monotone.vars())
        ));
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    report.note("monotone core equals positive core at order 1");

    let n = v.player_count();
    let singletons_nonnegative =
        (1..=n).all(|i| !v.value(Coalition::singleton(i)).is_negative());
    if singletons_nonnegative {
        let plain = build_core(&CoreSpec::new(v, 1, CoreVariant::Plain)?);
        if let Some(failure) = compare::check_equal(&positive, &plain, &cfg.fm)? {
            report = report.fail(format!(
                "nonnegative singleton worths should make the positive core equal the core: {}",
                failure.render(plain.vars())
            ));
            report.elapsed = timer.elapsed();
            return Ok(report);
        }
        report.note("singleton worths are nonnegative and the positive core equals the core");
    } else {
        report.note("some singleton worth is negative; core equality is not asserted");
    }
    report.elapsed = timer.elapsed();
    Ok(report)
}

/// The order-2 core is nonempty for every game. Suite token `c2`.
pub fn verify_order2_nonempty<T: Scalar>(
    v: &SetFunction<T>,
    instance: &str,
    cfg: &VerifyConfig,
) -> Result<TheoremReport> {
    let timer = Instant::now();
    let mut report = TheoremReport::new("c2", instance);
    let n = v.player_count();
    if n < 2 {
        report = report.skip("needs at least two players".into());
        report.elapsed = timer.elapsed();
        return Ok(report);
    }
    let spec = CoreSpec::new(v, 2, CoreVariant::Plain)?;
    let core = build_core(&spec);
    report.stat("core_rows", core.constraints().len() as u64);
    match fm::sample_point(&core, &cfg.fm)? {
        Some(point) => {
            report.note(format!("contains {}", points_text(&point)));
        }
        None => {
            report = report.fail(
                "total elimination certified the order-2 core empty, contradicting feasibility"
                    .into(),
            );
        }
    }
    report.elapsed = timer.elapsed();
    Ok(report)
}

/// Named verification suites, in the order `all` runs them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Th1,
    Th2,
    Th3,
    Th4,
    Th5,
    Prop1,
    Prop3,
    Remark1,
    C2,
    All,
}

impl Suite {
    pub fn parse(text: &str) -> Option<Suite> {
        match text {
            "th1" => Some(Suite::Th1),
            "th2" => Some(Suite::Th2),
            "th3" => Some(Suite::Th3),
            "th4" => Some(Suite::Th4),
            "th5" => Some(Suite::Th5),
            "prop1" => Some(Suite::Prop1),
            "prop3" => Some(Suite::Prop3),
            "remark1" => Some(Suite::Remark1),
            "c2" => Some(Suite::C2),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Suite::Th1 => "th1",
            Suite::Th2 => "th2",
            Suite::Th3 => "th3",
            Suite::Th4 => "th4",
            Suite::Th5 => "th5",
            Suite::Prop1 => "prop1",
            Suite::Prop3 => "prop3",
            Suite::Remark1 => "remark1",
            Suite::C2 => "c2",
            Suite::All => "all",
        }
    }

    pub fn individual() -> [Suite; 9] {
        [
            Suite::Th1,
            Suite::Th2,
            Suite::Th3,
            Suite::Th4,
            Suite::Th5,
            Suite::Prop1,
            Suite::Prop3,
            Suite::Remark1,
            Suite::C2,
        ]
    }
}

/// What a suite runs over.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub n: usize,
    pub ks: Vec<usize>,
    pub seed: u64,
    pub random_games: usize,
    pub config: VerifyConfig,
}

impl SuiteOptions {
    pub fn new(n: usize) -> Self {
        SuiteOptions {
            n,
            ks: (2..=n.min(3)).collect(),
            seed: 42,
            random_games: 5,
            config: VerifyConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub holds: u64,
    pub fails: u64,
    pub skipped: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub n: usize,
    pub seed: u64,
    pub reports: Vec<TheoremReport>,
    pub summary: SuiteSummary,
}

impl SuiteResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are plain data")
    }

    pub fn all_hold(&self) -> bool {
        self.summary.fails == 0
    }
}

fn summarize(reports: &[TheoremReport]) -> SuiteSummary {
    let mut summary = SuiteSummary {
        holds: 0,
        fails: 0,
        skipped: 0,
    };
    for r in reports {
        match r.verdict {
            Verdict::Holds => summary.holds += 1,
            Verdict::Fails => summary.fails += 1,
            Verdict::Skipped => summary.skipped += 1,
        }
    }
    summary
}

/// The standard desk corpus: the named games over `n` players followed by
/// seeded random games of the requested class. Labels are stable.
pub fn corpus<T: Scalar>(
    n: usize,
    seed: u64,
    count: usize,
    class: GameClass,
) -> Vec<(String, SetFunction<T>)> {
    let mut out: Vec<(String, SetFunction<T>)> = Vec::new();
    out.push(("additive".into(), games::additive_game(n)));
    if n >= 2 {
        out.push((
            "unanimity-12".into(),
            games::unanimity_game(n, Coalition::from_players(&[1, 2])),
        ));
    }
    out.push((
        "unanimity-full".into(),
        games::unanimity_game(n, Coalition::full(n)),
    ));
    out.push(("square".into(), games::square_game(n)));
    if n == 3 {
        out.push(("pair".into(), games::pair_game()));
    }
    for i in 0..count {
        let game_seed = seed.wrapping_add(i as u64);
        out.push((
            format!("rand-{}-{game_seed}", class.name()),
            games::random_game(n, game_seed, class),
        ));
    }
    out
}

/// Runs one suite over the default corpus, returning reports in a
/// deterministic instance order.
pub fn run_suite<T: Scalar>(suite: Suite, opts: &SuiteOptions) -> Result<SuiteResult> {
    let mut reports = Vec::new();
    collect_suite::<T>(suite, opts, &mut reports)?;
    Ok(SuiteResult {
        suite: suite.token().into(),
        n: opts.n,
        seed: opts.seed,
        summary: summarize(&reports),
        reports,
    })
}

fn collect_suite<T: Scalar>(
    suite: Suite,
    opts: &SuiteOptions,
    reports: &mut Vec<TheoremReport>,
) -> Result<()> {
    let cfg = &opts.config;
    let n = opts.n;
    match suite {
        Suite::All => {
            for s in Suite::individual() {
                collect_suite::<T>(s, opts, reports)?;
            }
        }
        Suite::Th1 => {
            let games = corpus::<T>(n, opts.seed, opts.random_games, GameClass::General);
            let q = SharingFunction::uniform(n);
            for (label, v) in &games {
                for &k in &opts.ks {
                    let instance = format!("game={label} k={k} q=uniform");
                    reports.push(verify_positive_sharing_image(v, k, &q, &instance, cfg)?);
                }
            }
        }
        Suite::Th2 => {
            let games = corpus::<T>(n, opts.seed, opts.random_games, GameClass::General);
            for (label, v) in &games {
                for &k in &opts.ks {
                    for sigma in Permutation::all(n) {
                        let instance =
                            format!("game={label} k={k} sigma={}", sigma.describe());
                        reports.push(verify_marginal_image(v, k, &sigma, &instance, cfg)?);
                    }
                }
            }
        }
        Suite::Th3 => {
            let games = corpus::<T>(n, opts.seed, opts.random_games, GameClass::General);
            for (label, v) in &games {
                for &k in &opts.ks {
                    for alpha in enumerate_selectors(n, n, cfg.selector_budget)? {
                        let instance =
                            format!("game={label} k={k} alpha=[{}]", alpha.describe());
                        reports.push(verify_selector_image(v, k, &alpha, k, &instance, cfg)?);
                    }
                }
            }
        }
        Suite::Th4 => {
            let games = corpus::<T>(n, opts.seed, opts.random_games, GameClass::General);
            for (label, v) in &games {
                for &k in &opts.ks {
                    let instance = format!("game={label} k={k}");
                    reports.push(verify_image_intersection(v, k, &instance, cfg)?);
                }
            }
        }
        Suite::Th5 => {
            let games = corpus::<T>(n, opts.seed, opts.random_games, GameClass::Monotone);
            for (label, v) in &games {
                for &k in &opts.ks {
                    for sigma in Permutation::all(n) {
                        let alpha = sigma.last_member_selector();
                        let instance =
                            format!("game={label} k={k} sigma={}", sigma.describe());
                        reports.push(verify_monotone_selector_image(
                            v, k, &alpha, &instance, cfg,
                        )?);
                    }
                }
            }
        }
        Suite::Prop1 => {
            let games = corpus::<T>(n, opts.seed, opts.random_games, GameClass::Monotone);
            let q = SharingFunction::uniform(n);
            for (label, v) in &games {
                for &k in &opts.ks {
                    let instance = format!("game={label} k={k} q=uniform");
                    reports.push(verify_bounded_image_extremes(v, k, &q, &instance, cfg)?);
                }
            }
        }
        Suite::Prop3 => {
            let games = corpus::<T>(n, opts.seed, opts.random_games, GameClass::Convex);
            let q = SharingFunction::uniform(n);
            for (label, v) in &games {
                for &k in &opts.ks {
                    let instance = format!("game={label} k={k} q=uniform");
                    reports.push(verify_core_inclusion(v, k, &q, &instance, cfg)?);
                }
            }
        }
        Suite::Remark1 => {
            let games = corpus::<T>(n, opts.seed, opts.random_games, GameClass::General);
            for (label, v) in &games {
                let instance = format!("game={label}");
                reports.push(verify_monotone_equals_positive(v, &instance, cfg)?);
            }
        }
        Suite::C2 => {
            let games = corpus::<T>(n, opts.seed, opts.random_games, GameClass::General);
            for (label, v) in &games {
                let instance = format!("game={label}");
                reports.push(verify_order2_nonempty(v, &instance, cfg)?);
            }
        }
    }
    Ok(())
}

/// Sanity guard used by callers that must bound selector sweeps up front.
pub fn selector_sweep_within_budget(n: usize, budget: u128) -> bool {
    selector_count(n, n).is_some_and(|c| c <= budget)
}
