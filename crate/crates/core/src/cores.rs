//! Core variants of a cooperative game as exact halfspace systems in Möbius
//! coordinates, and their images in payoff space under sharing values.
//!
//! An order-k core element is a k-additive game dominating `v` coalition-wise
//! with equal grand-coalition value; its unknowns are the Möbius coefficients
//! `m[K]` for nonempty `K` of size at most `k`. The classical core is the
//! order-1 instance, where `m[{i}]` is just the payoff of player `i`.

use crate::allocation::SharingFunction;
use crate::polyhedra::{fm, payoff_vars, FmConfig, HPolyhedron, LinearConstraint, Relation};
use crate::set_functions::{Coalition, SetFunction};
use crate::{Error, Result, Scalar};

/// Which core polyhedron to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoreVariant {
    /// Domination and efficiency only.
    Plain,
    /// Additionally requires the dominating game to be monotone.
    Monotone,
    /// Additionally requires the dominating game to be nonnegative.
    Positive,
}

impl CoreVariant {
    pub fn parse(text: &str) -> Option<CoreVariant> {
        match text {
            "plain" => Some(CoreVariant::Plain),
            "monotone" => Some(CoreVariant::Monotone),
            "positive" => Some(CoreVariant::Positive),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoreVariant::Plain => "plain",
            CoreVariant::Monotone => "monotone",
            CoreVariant::Positive => "positive",
        }
    }
}

/// A core-construction request: game, order, variant.
#[derive(Clone, Copy, Debug)]
pub struct CoreSpec<'g, T> {
    pub game: &'g SetFunction<T>,
    pub k: usize,
    pub variant: CoreVariant,
}

impl<'g, T: Scalar> CoreSpec<'g, T> {
    pub fn new(game: &'g SetFunction<T>, k: usize, variant: CoreVariant) -> Result<Self> {
        let n = game.player_count();
        if k < 1 || k > n {
            return Err(Error::InvalidArgument(format!(
                "order k = {k} out of range 1..={n}"
            )));
        }
        Ok(CoreSpec { game, k, variant })
    }
}

/// Nonempty coalitions of size ≤ k in ascending mask order: the coordinate
/// axes of Möbius space.
pub fn mobius_coalitions(n: usize, k: usize) -> Vec<Coalition> {
    Coalition::nonempty(n).filter(|c| c.len() <= k).collect()
}

/// Möbius variable names, `m[{1,3}]` style.
pub fn mobius_vars(n: usize, k: usize) -> Vec<String> {
    mobius_coalitions(n, k)
        .iter()
        .map(|c| format!("m[{}]", c))
        .collect()
}

/// The Möbius coefficients of `mobius` as a point of order-k Möbius space, or
/// `None` when some coefficient beyond size `k` is nonzero.
pub fn mobius_point<T: Scalar>(mobius: &SetFunction<T>, k: usize) -> Option<Vec<T>> {
    let n = mobius.player_count();
    for (c, value) in mobius.iter() {
        if c.len() > k && !value.is_zero() {
            return None;
        }
    }
    Some(
        mobius_coalitions(n, k)
            .iter()
            .map(|c| mobius.value(*c).clone())
            .collect(),
    )
}

fn domination_row<T: Scalar>(
    axes: &[Coalition],
    s: Coalition,
    relation: Relation,
    rhs: T,
) -> LinearConstraint<T> {
    let coeffs = axes
        .iter()
        .map(|k| if k.is_subset_of(s) { T::one() } else { T::zero() })
        .collect();
    LinearConstraint::new(coeffs, relation, rhs)
}

/// The order-k core of `spec.game` as a halfspace system over
/// [`mobius_vars`]: one domination constraint per proper nonempty coalition,
/// the efficiency equality on the grand coalition, plus the variant's extra
/// rows.
pub fn build_core<T: Scalar>(spec: &CoreSpec<'_, T>) -> HPolyhedron<T> {
    let v = spec.game;
    let n = v.player_count();
    let k = spec.k;
    let axes = mobius_coalitions(n, k);
    let full = Coalition::full(n);
    let mut p = HPolyhedron::universe(mobius_vars(n, k));
    for s in Coalition::nonempty(n) {
        if s == full {
            continue;
        }
        p.push(domination_row(&axes, s, Relation::Ge, v.value(s).clone()))
            .expect("row matches dimension");
    }
    p.push(domination_row(&axes, full, Relation::Eq, v.value(full).clone()))
        .expect("row matches dimension");

    match spec.variant {
        CoreVariant::Plain => {}
        CoreVariant::Monotone => {
            let cone = build_monotone_cone::<T>(n, k);
            for c in cone.constraints() {
                p.push(c.clone()).expect("same dimension");
            }
        }
        CoreVariant::Positive => {
            // order 1: the payoffs themselves must be nonnegative; beyond
            // that, every coalition value of the dominating game must be
            if k == 1 {
                for (i, _) in axes.iter().enumerate() {
                    let mut coeffs = vec![T::zero(); axes.len()];
                    coeffs[i] = T::one();
                    p.push(LinearConstraint::new(coeffs, Relation::Ge, T::zero()))
                        .expect("same dimension");
                }
            } else {
                for s in Coalition::nonempty(n) {
                    p.push(domination_row(&axes, s, Relation::Ge, T::zero()))
                        .expect("same dimension");
                }
            }
        }
    }
    p
}

/// The cone of monotone at-most-k-additive games in Möbius coordinates:
/// for every nonempty `S` and every `i ∈ S`, the coefficients of the
/// coalitions inside `S` containing `i` sum to at least zero.
pub fn build_monotone_cone<T: Scalar>(n: usize, k: usize) -> HPolyhedron<T> {
    let axes = mobius_coalitions(n, k);
    let mut p = HPolyhedron::universe(mobius_vars(n, k));
    for s in Coalition::nonempty(n) {
        for i in s.members() {
            let coeffs = axes
                .iter()
                .map(|c| {
                    if c.contains(i) && c.is_subset_of(s) {
                        T::one()
                    } else {
                        T::zero()
                    }
                })
                .collect();
            p.push(LinearConstraint::new(coeffs, Relation::Ge, T::zero()))
                .expect("row matches dimension");
        }
    }
    p
}

/// `{x : x(N) = v(N)}` in payoff coordinates.
pub fn preimputation_polyhedron<T: Scalar>(v: &SetFunction<T>) -> HPolyhedron<T> {
    let n = v.player_count();
    let mut p = HPolyhedron::universe(payoff_vars(n));
    p.push(LinearConstraint::new(
        vec![T::one(); n],
        Relation::Eq,
        v.value(Coalition::full(n)).clone(),
    ))
    .expect("row matches dimension");
    p
}

/// Preimputations giving every player at least their singleton worth.
pub fn imputation_polyhedron<T: Scalar>(v: &SetFunction<T>) -> HPolyhedron<T> {
    let n = v.player_count();
    let mut p = preimputation_polyhedron(v);
    for i in 1..=n {
        let mut coeffs = vec![T::zero(); n];
        coeffs[i - 1] = T::one();
        p.push(LinearConstraint::new(
            coeffs,
            Relation::Ge,
            v.value(Coalition::singleton(i)).clone(),
        ))
        .expect("row matches dimension");
    }
    p
}

/// The classical core directly in payoff coordinates: coalition rationality
/// for every proper nonempty coalition plus efficiency.
pub fn core_polyhedron<T: Scalar>(v: &SetFunction<T>) -> HPolyhedron<T> {
    let n = v.player_count();
    let full = Coalition::full(n);
    let mut p = HPolyhedron::universe(payoff_vars(n));
    for s in Coalition::nonempty(n) {
        let coeffs = (1..=n)
            .map(|i| if s.contains(i) { T::one() } else { T::zero() })
            .collect();
        let relation = if s == full { Relation::Eq } else { Relation::Ge };
        p.push(LinearConstraint::new(coeffs, relation, v.value(s).clone()))
            .expect("row matches dimension");
    }
    p
}

/// The (n × η(k)) matrix of the linear map from order-k Möbius coordinates to
/// payoffs under the sharing rule `q`: row `i` has 1 on `m[{i}]` and
/// `q(K, i)` on every larger `m[K]` containing `i`.
pub fn value_map_matrix<T: Scalar>(q: &SharingFunction<T>, k: usize) -> Vec<Vec<T>> {
    let n = q.player_count();
    let axes = mobius_coalitions(n, k);
    (1..=n)
        .map(|i| {
            axes.iter()
                .map(|c| {
                    if !c.contains(i) {
                        T::zero()
                    } else if c.len() == 1 {
                        T::one()
                    } else {
                        q.weight(*c, i).clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// Image of the core in payoff space: adjoins the sharing rule's value map
/// and eliminates the Möbius variables exactly.
pub fn project_core<T: Scalar>(
    spec: &CoreSpec<'_, T>,
    q: &SharingFunction<T>,
    cfg: &FmConfig,
) -> Result<HPolyhedron<T>> {
    let n = spec.game.player_count();
    if q.player_count() != n {
        return Err(Error::DimensionMismatch(format!(
            "sharing rule is over {} players, game over {n}",
            q.player_count()
        )));
    }
    let core = build_core(spec);
    let matrix = value_map_matrix(q, spec.k);
    fm::linear_image(&core, &matrix, &payoff_vars(n), cfg)
}

/// Nonemptiness of the monotone order-k core, decided by exact feasibility.
pub fn is_k_balanced_monotone<T: Scalar>(
    v: &SetFunction<T>,
    k: usize,
    cfg: &FmConfig,
) -> Result<bool> {
    let spec = CoreSpec::new(v, k, CoreVariant::Monotone)?;
    Ok(!fm::is_empty(&build_core(&spec), cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::{sharing_value, SharingFunction};
    use crate::games::{self, GameClass};
    use crate::polyhedra::{compare, dd, DdConfig};
    use crate::Rat;
    use num_traits::Zero;

    fn r(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    fn cfg() -> FmConfig {
        FmConfig::default()
    }

    #[test]
    fn mobius_axis_order_is_mask_ascending() {
        let axes = mobius_coalitions(3, 2);
        let keys: Vec<String> = axes.iter().map(|c| c.key()).collect();
        assert_eq!(keys, vec!["1", "2", "1,2", "3", "1,3", "2,3"]);
        assert_eq!(mobius_vars(3, 2)[2], "m[{1,2}]".to_string());
    }

    #[test]
    fn pair_game_core_empty_at_order_one_not_at_two() {
        let v = games::pair_game::<Rat>();
        let k1 = build_core(&CoreSpec::new(&v, 1, CoreVariant::Plain).unwrap());
        assert!(fm::is_empty(&k1, &cfg()).unwrap());

        let k2 = build_core(&CoreSpec::new(&v, 2, CoreVariant::Plain).unwrap());
        assert!(!fm::is_empty(&k2, &cfg()).unwrap());
        // m(i) = 2/3, m(ij) = -1/3 satisfies all seven constraints
        let point = vec![r(2, 3), r(2, 3), r(-1, 3), r(2, 3), r(-1, 3), r(-1, 3)];
        assert!(k2.contains(&point).unwrap());
    }

    #[test]
    fn additive_core_is_a_single_point() {
        let v = games::additive_game::<Rat>(3);
        let k1 = build_core(&CoreSpec::new(&v, 1, CoreVariant::Plain).unwrap());
        let gens = dd::enumerate_generators(&k1, &DdConfig::default()).unwrap();
        assert_eq!(gens.vertices, vec![vec![r(1, 1), r(2, 1), r(3, 1)]]);
        assert!(gens.rays.is_empty());
    }

    #[test]
    fn order_one_core_matches_payoff_space_form() {
        for seed in 0..10 {
            let v = games::random_game::<Rat>(3, seed, GameClass::General);
            let k1 = build_core(&CoreSpec::new(&v, 1, CoreVariant::Plain).unwrap());
            let renamed = k1.with_var_names(payoff_vars(3)).unwrap();
            assert!(compare::equal(&renamed, &core_polyhedron(&v), &cfg()).unwrap());
        }
    }

    #[test]
    fn monotone_cone_small_cases() {
        let c1 = build_monotone_cone::<Rat>(1, 1);
        assert_eq!(c1.constraints().len(), 1);
        assert_eq!(c1.constraints()[0].render(c1.vars()), "m[{1}] >= 0");

        let c2 = build_monotone_cone::<Rat>(2, 2);
        let rendered: Vec<String> = c2
            .constraints()
            .iter()
            .map(|c| c.render(c2.vars()))
            .collect();
        assert_eq!(
            rendered,
            vec![
                "m[{1}] >= 0",
                "m[{2}] >= 0",
                "m[{1}] + m[{1,2}] >= 0",
                "m[{2}] + m[{1,2}] >= 0",
            ]
        );
    }

    #[test]
    fn monotone_cone_membership_tracks_monotonicity() {
        for n in 2..=4 {
            let cone = build_monotone_cone::<Rat>(n, n);
            for seed in 0..15 {
                let v = games::random_game::<Rat>(n, seed, GameClass::General);
                let point = mobius_point(&v.mobius_transform(), n).unwrap();
                assert_eq!(
                    cone.contains(&point).unwrap(),
                    v.is_monotone(),
                    "n={n} seed={seed}"
                );
                let m = games::random_game::<Rat>(n, seed, GameClass::Monotone);
                let point = mobius_point(&m.mobius_transform(), n).unwrap();
                assert!(cone.contains(&point).unwrap());
            }
        }
    }

    #[test]
    fn preimputations_and_imputations() {
        let mut v = SetFunction::<Rat>::zero(2);
        v.set(Coalition::full(2), Rat::from_int(1)).unwrap();
        let pi = preimputation_polyhedron(&v);
        assert_eq!(pi.constraints().len(), 1);
        assert!(pi.contains(&[r(5, 1), r(-4, 1)]).unwrap());
        assert!(!pi.contains(&[r(1, 1), r(1, 1)]).unwrap());

        // imputations of the pair game form the standard simplex
        let pair = games::pair_game::<Rat>();
        let imp = imputation_polyhedron(&pair);
        let gens = dd::enumerate_generators(&imp, &DdConfig::default()).unwrap();
        assert_eq!(gens.vertices.len(), 3);
        assert!(gens.rays.is_empty());

        for seed in 0..10 {
            let v = games::random_game::<Rat>(3, seed, GameClass::General);
            assert!(compare::is_subset(
                &imputation_polyhedron(&v),
                &preimputation_polyhedron(&v),
                &cfg()
            )
            .unwrap());
        }
    }

    #[test]
    fn value_matrix_structure() {
        let q = SharingFunction::<Rat>::uniform(2);
        let m1 = value_map_matrix(&q, 1);
        assert_eq!(
            m1,
            vec![vec![r(1, 1), Rat::zero()], vec![Rat::zero(), r(1, 1)]]
        );

        let m2 = value_map_matrix(&q, 2);
        assert_eq!(
            m2,
            vec![
                vec![r(1, 1), Rat::zero(), r(1, 2)],
                vec![Rat::zero(), r(1, 1), r(1, 2)],
            ]
        );
    }

    #[test]
    fn value_matrix_agrees_with_sharing_value() {
        let q = SharingFunction::<Rat>::uniform(4);
        let matrix = value_map_matrix(&q, 4);
        for seed in 0..10 {
            let v = games::random_game::<Rat>(4, seed, GameClass::General);
            let point = mobius_point(&v.mobius_transform(), 4).unwrap();
            let image: Vec<Rat> = matrix
                .iter()
                .map(|row| crate::scalar::dot(row, &point))
                .collect();
            assert_eq!(image, sharing_value(&q, &v).into_vec());
        }
    }

    #[test]
    fn projection_at_order_one_is_the_core_itself() {
        let v = games::square_game::<Rat>(3);
        let spec = CoreSpec::new(&v, 1, CoreVariant::Plain).unwrap();
        let projected = project_core(&spec, &SharingFunction::uniform(3), &cfg()).unwrap();
        assert!(compare::equal(&projected, &core_polyhedron(&v), &cfg()).unwrap());
    }

    #[test]
    fn uniform_projection_of_pair_game_fills_the_hyperplane() {
        let v = games::pair_game::<Rat>();
        let spec = CoreSpec::new(&v, 2, CoreVariant::Plain).unwrap();
        let projected = project_core(&spec, &SharingFunction::uniform(3), &cfg()).unwrap();
        assert!(compare::equal(&projected, &preimputation_polyhedron(&v), &cfg()).unwrap());
    }

    #[test]
    fn marginal_projection_of_pair_game_is_the_prefix_chain() {
        use crate::allocation::Permutation;
        let v = games::pair_game::<Rat>();
        let spec = CoreSpec::new(&v, 2, CoreVariant::Plain).unwrap();
        let sigma = Permutation::identity(3);
        let q = sigma.last_member_selector().to_sharing::<Rat>();
        let projected = project_core(&spec, &q, &cfg()).unwrap();

        let mut expected = preimputation_polyhedron(&v);
        expected
            .push(LinearConstraint::new(
                vec![r(1, 1), Rat::zero(), Rat::zero()],
                Relation::Ge,
                Rat::zero(),
            ))
            .unwrap();
        expected
            .push(LinearConstraint::new(
                vec![r(1, 1), r(1, 1), Rat::zero()],
                Relation::Ge,
                r(1, 1),
            ))
            .unwrap();
        assert!(compare::equal(&projected, &expected, &cfg()).unwrap());
    }

    #[test]
    fn cores_nest_as_the_order_grows() {
        // generators of the order-k core, padded with zero coefficients,
        // satisfy the order-(k+1) system
        for seed in 0..5 {
            let v = games::random_game::<Rat>(3, seed, GameClass::General);
            for k in 1..3 {
                let small = build_core(&CoreSpec::new(&v, k, CoreVariant::Plain).unwrap());
                let big = build_core(&CoreSpec::new(&v, k + 1, CoreVariant::Plain).unwrap());
                let small_axes = mobius_coalitions(3, k);
                let big_axes = mobius_coalitions(3, k + 1);
                let embed = |point: &[Rat]| -> Vec<Rat> {
                    big_axes
                        .iter()
                        .map(|c| {
                            small_axes
                                .iter()
                                .position(|s| s == c)
                                .map(|i| point[i].clone())
                                .unwrap_or_else(Rat::zero)
                        })
                        .collect()
                };
                let gens = dd::enumerate_generators(&small, &DdConfig::default()).unwrap();
                for vertex in &gens.vertices {
                    assert!(big.contains(&embed(vertex)).unwrap());
                }
                for ray in &gens.rays {
                    let lifted = embed(ray);
                    assert!(big.constraints().iter().all(|c| c.admits_ray(&lifted)));
                }
            }
        }
    }

    #[test]
    fn core_elements_dominate_the_game() {
        let v = games::pair_game::<Rat>();
        let spec = CoreSpec::new(&v, 2, CoreVariant::Plain).unwrap();
        let core = build_core(&spec);
        let point = fm::sample_point(&core, &cfg()).unwrap().expect("nonempty");
        // reconstruct the dominating game through the zeta transform
        let axes = mobius_coalitions(3, 2);
        let mut mobius = SetFunction::<Rat>::zero(3);
        for (c, value) in axes.iter().zip(&point) {
            mobius.set(*c, value.clone()).unwrap();
        }
        let phi = mobius.zeta_transform();
        for s in Coalition::nonempty(3) {
            if s == Coalition::full(3) {
                assert_eq!(phi.value(s), v.value(s));
            } else {
                assert!(phi.value(s) >= v.value(s));
            }
        }
    }

    #[test]
    fn balanced_monotone_detection() {
        let pair = games::pair_game::<Rat>();
        assert!(is_k_balanced_monotone(&pair, 2, &cfg()).unwrap());
        assert!(is_k_balanced_monotone(&pair, 3, &cfg()).unwrap());

        // monotone games always sit inside their own order-n monotone core
        for seed in 0..10 {
            let v = games::random_game::<Rat>(3, seed, GameClass::Monotone);
            assert!(is_k_balanced_monotone(&v, 3, &cfg()).unwrap());
        }

        let mut v = SetFunction::<Rat>::zero(2);
        // grand coalition strictly below a singleton worth: no monotone
        // dominating game can be efficient
        v.set(Coalition::singleton(1), r(2, 1)).unwrap();
        v.set(Coalition::full(2), r(1, 1)).unwrap();
        assert!(!is_k_balanced_monotone(&v, 2, &cfg()).unwrap());

        assert!(matches!(
            CoreSpec::new(&v, 5, CoreVariant::Plain),
            Err(Error::InvalidArgument(_))
        ));
    }
}
