//! Exact set comparisons between polyhedra.
//!
//! Inclusion is checked generator-first: every vertex of the left side must
//! satisfy the right side's constraints and every ray must satisfy their
//! homogenized forms. When the left side is not pointed, the check falls back
//! to one Fourier–Motzkin feasibility problem per constraint (left side plus
//! the constraint's strict complement). Every failure carries a witness.

use super::{dd, fm, DdConfig, FmConfig, HPolyhedron, LinearConstraint};
use crate::{Error, Result, Scalar};

/// A generator of the left polyhedron escaping a constraint of the right.
#[derive(Clone, Debug)]
pub struct SubsetViolation<T> {
    pub constraint: LinearConstraint<T>,
    pub witness: Witness<T>,
}

#[derive(Clone, Debug)]
pub enum Witness<T> {
    Point(Vec<T>),
    Ray(Vec<T>),
}

impl<T: Scalar> SubsetViolation<T> {
    pub fn render(&self, vars: &[String]) -> String {
        match &self.witness {
            Witness::Point(p) => {
                let coords: Vec<String> = p.iter().map(T::to_string).collect();
                format!(
                    "point ({}) violates {}",
                    coords.join(", "),
                    self.constraint.render(vars)
                )
            }
            Witness::Ray(r) => {
                let coords: Vec<String> = r.iter().map(T::to_string).collect();
                format!(
                    "ray ({}) escapes {}",
                    coords.join(", "),
                    self.constraint.render(vars)
                )
            }
        }
    }
}

/// Which inclusion failed during an equality check.
#[derive(Clone, Debug)]
pub enum EqualityFailure<T> {
    LeftNotInRight(SubsetViolation<T>),
    RightNotInLeft(SubsetViolation<T>),
}

impl<T: Scalar> EqualityFailure<T> {
    pub fn render(&self, vars: &[String]) -> String {
        match self {
            EqualityFailure::LeftNotInRight(v) => {
                format!("left ⊄ right: {}", v.render(vars))
            }
            EqualityFailure::RightNotInLeft(v) => {
                format!("right ⊄ left: {}", v.render(vars))
            }
        }
    }
}

fn require_same_vars<T: Scalar>(p: &HPolyhedron<T>, q: &HPolyhedron<T>) -> Result<()> {
    if p.vars() != q.vars() {
        return Err(Error::DimensionMismatch(format!(
            "variable lists differ: {:?} vs {:?}",
            p.vars(),
            q.vars()
        )));
    }
    Ok(())
}

/// `p ⊆ q`, with a witness generator on failure.
pub fn check_subset<T: Scalar>(
    p: &HPolyhedron<T>,
    q: &HPolyhedron<T>,
    cfg: &FmConfig,
) -> Result<Option<SubsetViolation<T>>> {
    require_same_vars(p, q)?;
    match dd::enumerate_generators(p, &DdConfig::default()) {
        Ok(gens) => {
            for c in q.constraints() {
                for vertex in &gens.vertices {
                    if !c.satisfied_by(vertex) {
                        return Ok(Some(SubsetViolation {
                            constraint: c.clone(),
                            witness: Witness::Point(vertex.clone()),
                        }));
                    }
                }
                for ray in &gens.rays {
                    if !c.admits_ray(ray) {
                        return Ok(Some(SubsetViolation {
                            constraint: c.clone(),
                            witness: Witness::Ray(ray.clone()),
                        }));
                    }
                }
            }
            Ok(None)
        }
        Err(Error::NotPointed) => check_subset_by_feasibility(p, q, cfg),
        Err(e) => Err(e),
    }
}

fn check_subset_by_feasibility<T: Scalar>(
    p: &HPolyhedron<T>,
    q: &HPolyhedron<T>,
    cfg: &FmConfig,
) -> Result<Option<SubsetViolation<T>>> {
    for c in q.constraints() {
        for neg in c.negations() {
            let mut escape = p.clone();
            escape.push(neg)?;
            if let Some(point) = fm::sample_point(&escape, &cfg.quick())? {
                return Ok(Some(SubsetViolation {
                    constraint: c.clone(),
                    witness: Witness::Point(point),
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_subset<T: Scalar>(
    p: &HPolyhedron<T>,
    q: &HPolyhedron<T>,
    cfg: &FmConfig,
) -> Result<bool> {
    Ok(check_subset(p, q, cfg)?.is_none())
}

/// Set equality by mutual inclusion, with a witness on failure.
pub fn check_equal<T: Scalar>(
    p: &HPolyhedron<T>,
    q: &HPolyhedron<T>,
    cfg: &FmConfig,
) -> Result<Option<EqualityFailure<T>>> {
    if let Some(v) = check_subset(p, q, cfg)? {
        return Ok(Some(EqualityFailure::LeftNotInRight(v)));
    }
    if let Some(v) = check_subset(q, p, cfg)? {
        return Ok(Some(EqualityFailure::RightNotInLeft(v)));
    }
    Ok(None)
}

pub fn equal<T: Scalar>(p: &HPolyhedron<T>, q: &HPolyhedron<T>, cfg: &FmConfig) -> Result<bool> {
    Ok(check_equal(p, q, cfg)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::{payoff_vars, Relation};
    use crate::Rat;

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> LinearConstraint<Rat> {
        LinearConstraint::new(
            coeffs.iter().map(|&x| Rat::from_int(x)).collect(),
            rel,
            Rat::from_int(rhs),
        )
    }

    fn poly(names: &[&str], rows: Vec<LinearConstraint<Rat>>) -> HPolyhedron<Rat> {
        HPolyhedron::from_constraints(names.iter().map(|s| s.to_string()).collect(), rows).unwrap()
    }

    fn square(scale: i64) -> HPolyhedron<Rat> {
        poly(
            &["x", "y"],
            vec![
                c(&[1, 0], Relation::Ge, 0),
                c(&[0, 1], Relation::Ge, 0),
                c(&[-1, 0], Relation::Ge, -scale),
                c(&[0, -1], Relation::Ge, -scale),
            ],
        )
    }

    #[test]
    fn reflexive_and_scaled_inclusion() {
        let cfg = FmConfig::default();
        let p = square(1);
        assert!(is_subset(&p, &p, &cfg).unwrap());
        assert!(equal(&p, &p, &cfg).unwrap());

        let big = square(2);
        assert!(is_subset(&p, &big, &cfg).unwrap());
        assert!(!is_subset(&big, &p, &cfg).unwrap());
        assert!(!equal(&p, &big, &cfg).unwrap());

        let fail = check_equal(&p, &big, &cfg).unwrap().unwrap();
        match fail {
            EqualityFailure::RightNotInLeft(v) => match v.witness {
                Witness::Point(pt) => assert!(big.contains(&pt).unwrap() && !p.contains(&pt).unwrap()),
                Witness::Ray(_) => panic!("polytopes have no rays"),
            },
            other => panic!("unexpected failure side: {other:?}"),
        }
    }

    #[test]
    fn ray_witnesses_surface_for_unbounded_left_sides() {
        let cfg = FmConfig::default();
        let quadrant = poly(
            &["x", "y"],
            vec![c(&[1, 0], Relation::Ge, 0), c(&[0, 1], Relation::Ge, 0)],
        );
        let box1 = square(1);
        let v = check_subset(&quadrant, &box1, &cfg).unwrap().unwrap();
        assert!(matches!(v.witness, Witness::Ray(_)));
    }

    #[test]
    fn non_pointed_left_sides_fall_back_to_feasibility() {
        let cfg = FmConfig::default();
        // the half-plane x >= 0 has lineality along y
        let half = poly(&["x", "y"], vec![c(&[1, 0], Relation::Ge, 0)]);
        let weaker = poly(&["x", "y"], vec![c(&[1, 0], Relation::Ge, -1)]);
        assert!(is_subset(&half, &weaker, &cfg).unwrap());
        let v = check_subset(&weaker, &half, &cfg).unwrap().unwrap();
        match v.witness {
            Witness::Point(pt) => {
                assert!(weaker.contains(&pt).unwrap() && !half.contains(&pt).unwrap())
            }
            Witness::Ray(_) => panic!("feasibility route yields points"),
        }
    }

    #[test]
    fn empty_sets_compare_equal() {
        let cfg = FmConfig::default();
        let a = poly(
            &["x"],
            vec![c(&[1], Relation::Ge, 1), c(&[-1], Relation::Ge, 0)],
        );
        let b = HPolyhedron::<Rat>::empty(vec!["x".to_string()]);
        assert!(fm::is_empty(&a, &cfg).unwrap());
        assert!(equal(&a, &b, &cfg).unwrap());
        // the empty set is a subset of everything
        let anything = poly(&["x"], vec![c(&[1], Relation::Ge, 5)]);
        assert!(is_subset(&a, &anything, &cfg).unwrap());
    }

    #[test]
    fn mismatched_vars_error() {
        let cfg = FmConfig::default();
        let a = poly(&["x", "y"], vec![]);
        let b = HPolyhedron::<Rat>::universe(payoff_vars(2));
        assert!(matches!(
            equal(&a, &b, &cfg),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn equality_behaves_like_an_equivalence_on_samples() {
        let cfg = FmConfig::default();
        // two presentations of the same simplex
        let s1 = poly(
            &["x", "y", "z"],
            vec![
                c(&[1, 0, 0], Relation::Ge, 0),
                c(&[0, 1, 0], Relation::Ge, 0),
                c(&[0, 0, 1], Relation::Ge, 0),
                c(&[1, 1, 1], Relation::Eq, 1),
            ],
        );
        let s2 = poly(
            &["x", "y", "z"],
            vec![
                c(&[2, 0, 0], Relation::Ge, 0),
                c(&[0, 3, 0], Relation::Ge, 0),
                c(&[0, 0, 5], Relation::Ge, 0),
                c(&[-1, -1, -1], Relation::Ge, -1),
                c(&[1, 1, 1], Relation::Ge, 1),
            ],
        );
        assert!(equal(&s1, &s2, &cfg).unwrap());
        assert!(equal(&s2, &s1, &cfg).unwrap());
    }
}
