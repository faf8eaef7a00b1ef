//! Exact-rational polyhedra in halfspace and generator form.
//!
//! [`HPolyhedron`] is a finite list of linear constraints over named
//! variables; [`VPolyhedron`] is a list of vertices and extreme rays.
//! Projections are computed by Fourier–Motzkin elimination ([`fm`]),
//! generator enumeration and hull reconstruction by the double description
//! method ([`dd`]), and set comparisons by [`compare`]. All arithmetic is
//! exact; two polyhedra are equal exactly when mutual inclusion holds.

use std::fmt;

use crate::scalar::dot;
use crate::{Error, Result, Scalar};

pub mod compare;
pub mod dd;
pub mod fm;

pub use compare::{
    check_equal, check_subset, equal, is_subset, EqualityFailure, SubsetViolation, Witness,
};
pub use dd::{enumerate_generators, hrep_from_vrep, DdConfig};
pub use fm::{
    eliminate, eliminate_all, eliminate_heuristic, is_empty, linear_image, remove_redundant,
    sample_point, FmConfig, Redundancy,
};

/// Constraint sense. `Gt` never appears in public representations; it exists
/// for the strict systems used by feasibility-based subset tests.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Relation {
    Ge,
    Gt,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        })
    }
}

/// `coeffs · x REL rhs` over the ambient variable list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearConstraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> LinearConstraint<T> {
    pub fn new(coeffs: Vec<T>, relation: Relation, rhs: T) -> Self {
        LinearConstraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn satisfied_by(&self, point: &[T]) -> bool {
        let lhs = dot(&self.coeffs, point);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    /// Whether a recession direction is compatible with this constraint.
    pub fn admits_ray(&self, ray: &[T]) -> bool {
        let lhs = dot(&self.coeffs, ray);
        match self.relation {
            Relation::Ge | Relation::Gt => !lhs.is_negative(),
            Relation::Eq => lhs.is_zero(),
        }
    }

    pub fn is_zero_row(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    /// For a zero coefficient row: does `0 REL rhs` hold?
    pub fn zero_row_holds(&self) -> bool {
        debug_assert!(self.is_zero_row());
        match self.relation {
            Relation::Ge => !self.rhs.is_positive(),
            Relation::Gt => self.rhs.is_negative(),
            Relation::Eq => self.rhs.is_zero(),
        }
    }

    /// Canonical form: scaled by the positive factor that makes all entries
    /// coprime integers; equalities additionally get a positive leading
    /// coefficient.
    pub fn canonical(&self) -> Self {
        let mut all = self.coeffs.clone();
        all.push(self.rhs.clone());
        let factor = T::integer_normalizer(&all);
        let mut coeffs: Vec<T> = self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect();
        let mut rhs = self.rhs.clone() * factor;
        if self.relation == Relation::Eq {
            if let Some(first) = coeffs.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    for c in &mut coeffs {
                        *c = -c.clone();
                    }
                    rhs = -rhs;
                }
            }
        }
        LinearConstraint {
            coeffs,
            relation: self.relation,
            rhs,
        }
    }

    /// Strict complements: points violating `self` are exactly the points
    /// satisfying one of the returned constraints.
    pub fn negations(&self) -> Vec<LinearConstraint<T>> {
        let flipped: Vec<T> = self.coeffs.iter().map(|c| -c.clone()).collect();
        match self.relation {
            Relation::Ge => vec![LinearConstraint::new(flipped, Relation::Gt, -self.rhs.clone())],
            Relation::Gt => vec![LinearConstraint::new(flipped, Relation::Ge, -self.rhs.clone())],
            Relation::Eq => vec![
                LinearConstraint::new(self.coeffs.clone(), Relation::Gt, self.rhs.clone()),
                LinearConstraint::new(flipped, Relation::Gt, -self.rhs.clone()),
            ],
        }
    }

    pub fn render(&self, vars: &[String]) -> String {
        let mut lhs = String::new();
        for (c, name) in self.coeffs.iter().zip(vars) {
            if c.is_zero() {
                continue;
            }
            if lhs.is_empty() {
                if *c == -T::one() {
                    lhs.push('-');
                } else if *c != T::one() {
                    lhs.push_str(&format!("{c}·"));
                }
            } else if c.is_negative() {
                lhs.push_str(" - ");
                let a = -c.clone();
                if !a.is_one() {
                    lhs.push_str(&format!("{a}·"));
                }
            } else {
                lhs.push_str(" + ");
                if !c.is_one() {
                    lhs.push_str(&format!("{c}·"));
                }
            }
            lhs.push_str(name);
        }
        if lhs.is_empty() {
            lhs.push('0');
        }
        format!("{lhs} {} {}", self.relation, self.rhs)
    }
}

/// A polyhedron as a finite system of exact linear constraints over named
/// variables. The empty constraint list denotes the whole space.
#[derive(Clone, Debug)]
pub struct HPolyhedron<T> {
    vars: Vec<String>,
    constraints: Vec<LinearConstraint<T>>,
}

impl<T: Scalar> HPolyhedron<T> {
    /// The whole space over the given variables. Zero variables is allowed
    /// (the space is then a single point), which is what total elimination
    /// produces.
    pub fn universe(vars: Vec<String>) -> Self {
        HPolyhedron {
            vars,
            constraints: Vec::new(),
        }
    }

    pub fn from_constraints(vars: Vec<String>, constraints: Vec<LinearConstraint<T>>) -> Result<Self> {
        let mut p = HPolyhedron::universe(vars);
        for c in constraints {
            p.push(c)?;
        }
        Ok(p)
    }

    /// Canonical representation of the empty set in the given variables.
    pub fn empty(vars: Vec<String>) -> Self {
        let dim = vars.len();
        let mut p = HPolyhedron::universe(vars);
        p.push(LinearConstraint::new(
            vec![T::zero(); dim],
            Relation::Ge,
            T::one(),
        ))
        .expect("dimension matches");
        p
    }

    pub fn push(&mut self, c: LinearConstraint<T>) -> Result<()> {
        if c.coeffs.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "constraint has {} coefficients, polyhedron has {} variables",
                c.coeffs.len(),
                self.vars.len()
            )));
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn constraints(&self) -> &[LinearConstraint<T>] {
        &self.constraints
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn contains(&self, point: &[T]) -> Result<bool> {
        Ok(self.violated_by(point)?.is_none())
    }

    /// First constraint the point violates, if any.
    pub fn violated_by(&self, point: &[T]) -> Result<Option<&LinearConstraint<T>>> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polyhedron has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        Ok(self.constraints.iter().find(|c| !c.satisfied_by(point)))
    }

    /// Same constraints with right-hand sides set to zero: the directions of
    /// unboundedness.
    pub fn recession_cone(&self) -> Self {
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let relation = match c.relation {
                    Relation::Eq => Relation::Eq,
                    _ => Relation::Ge,
                };
                LinearConstraint::new(c.coeffs.clone(), relation, T::zero())
            })
            .collect();
        HPolyhedron {
            vars: self.vars.clone(),
            constraints,
        }
    }

    /// Constraint-list concatenation; both systems must share variables.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::DimensionMismatch(
                "intersection requires identical variable lists".into(),
            ));
        }
        let mut p = self.clone();
        p.constraints.extend(other.constraints.iter().cloned());
        Ok(p)
    }

    /// Relabels variables without touching the constraints.
    pub fn with_var_names(&self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(
                "renaming must preserve the dimension".into(),
            ));
        }
        Ok(HPolyhedron {
            vars,
            constraints: self.constraints.clone(),
        })
    }

    /// Interchange format: header line with variable names, then one
    /// constraint per line as coefficients, relation symbol, rhs.
    pub fn to_text(&self) -> String {
        let mut out = self.vars.join(" ");
        out.push('\n');
        for c in &self.constraints {
            let mut parts: Vec<String> = c.coeffs.iter().map(T::to_string).collect();
            parts.push(c.relation.to_string());
            parts.push(c.rhs.to_string());
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line with variable names".into()))?;
        let vars: Vec<String> = header.split_whitespace().map(String::from).collect();
        let dim = vars.len();
        let mut p = HPolyhedron::universe(vars);
        for line in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != dim + 2 {
                return Err(Error::Parse(format!(
                    "constraint line {line:?} must have {dim} coefficients, a relation, and a rhs"
                )));
            }
            let coeffs = tokens[..dim]
                .iter()
                .map(|t| T::parse(t))
                .collect::<Result<Vec<T>>>()?;
            let relation = match tokens[dim] {
                ">=" => Relation::Ge,
                ">" => Relation::Gt,
                "=" => Relation::Eq,
                "<=" => {
                    // normalized on input: flip into >= form
                    let coeffs: Vec<T> = coeffs.iter().map(|c| -c.clone()).collect();
                    let rhs = -T::parse(tokens[dim + 1])?;
                    p.push(LinearConstraint::new(coeffs, Relation::Ge, rhs))?;
                    continue;
                }
                other => {
                    return Err(Error::Parse(format!("unknown relation symbol {other:?}")));
                }
            };
            let rhs = T::parse(tokens[dim + 1])?;
            p.push(LinearConstraint::new(coeffs, relation, rhs))?;
        }
        Ok(p)
    }
}

impl<T: Scalar> fmt::Display for HPolyhedron<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Generator representation: vertices plus extreme rays, both canonically
/// ordered. Rays are scaled to coprime integer coordinates (positive scaling
/// only, so the geometric direction is preserved).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VPolyhedron<T> {
    pub vertices: Vec<Vec<T>>,
    pub rays: Vec<Vec<T>>,
}

impl<T: Scalar> VPolyhedron<T> {
    pub fn empty() -> Self {
        VPolyhedron {
            vertices: Vec::new(),
            rays: Vec::new(),
        }
    }

    pub fn is_empty_set(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Sorts generators, scales rays to coprime integers, drops duplicates
    /// and zero rays.
    pub fn canonicalize(&mut self) {
        self.rays = self
            .rays
            .drain(..)
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .map(|r| canonical_ray(&r))
            .collect();
        self.vertices.sort();
        self.vertices.dedup();
        self.rays.sort();
        self.rays.dedup();
    }

    /// Keeps the listed coordinates, in order. Rays collapsing to zero are
    /// dropped.
    pub fn project_onto(&self, keep: &[usize]) -> VPolyhedron<T> {
        let take = |v: &Vec<T>| -> Vec<T> { keep.iter().map(|&i| v[i].clone()).collect() };
        let mut out = VPolyhedron {
            vertices: self.vertices.iter().map(take).collect(),
            rays: self.rays.iter().map(take).collect(),
        };
        out.canonicalize();
        out
    }

    /// Interchange format: one generator per line, tagged `V` or `R`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let parts: Vec<String> = v.iter().map(T::to_string).collect();
            out.push_str(&format!("V {}\n", parts.join(" ")));
        }
        for r in &self.rays {
            let parts: Vec<String> = r.iter().map(T::to_string).collect();
            out.push_str(&format!("R {}\n", parts.join(" ")));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut out = VPolyhedron::empty();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let tag = tokens.next().expect("nonempty line");
            let coords = tokens.map(T::parse).collect::<Result<Vec<T>>>()?;
            match tag {
                "V" => out.vertices.push(coords),
                "R" => out.rays.push(coords),
                other => return Err(Error::Parse(format!("unknown generator tag {other:?}"))),
            }
        }
        out.canonicalize();
        Ok(out)
    }
}

impl<T: Scalar> fmt::Display for VPolyhedron<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Scales a direction vector to coprime integer coordinates. Positive factor
/// only: the direction is preserved.
pub fn canonical_ray<T: Scalar>(ray: &[T]) -> Vec<T> {
    let factor = T::integer_normalizer(ray);
    ray.iter().map(|c| c.clone() * factor.clone()).collect()
}

/// Standard payoff-space variable names `x[1], …, x[n]`.
pub fn payoff_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x[{i}]")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::{One, Zero};

    fn r(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    fn ge(coeffs: &[i64], rhs: i64) -> LinearConstraint<Rat> {
        LinearConstraint::new(
            coeffs.iter().map(|&c| Rat::from_int(c)).collect(),
            Relation::Ge,
            Rat::from_int(rhs),
        )
    }

    #[test]
    fn constraint_evaluation() {
        let c = ge(&[1, -1], 0);
        assert!(c.satisfied_by(&[Rat::one(), Rat::zero()]));
        assert!(c.satisfied_by(&[Rat::one(), Rat::one()]));
        assert!(!c.satisfied_by(&[Rat::zero(), Rat::one()]));

        let strict = LinearConstraint::new(vec![Rat::one()], Relation::Gt, Rat::zero());
        assert!(!strict.satisfied_by(&[Rat::zero()]));
        assert!(strict.satisfied_by(&[r(1, 7)]));

        assert!(c.admits_ray(&[Rat::one(), Rat::one()]));
        assert!(!c.admits_ray(&[Rat::zero(), Rat::one()]));
    }

    #[test]
    fn canonical_scaling() {
        let c = LinearConstraint::new(vec![r(2, 3), r(-4, 3)], Relation::Ge, r(2, 1));
        let canon = c.canonical();
        assert_eq!(canon.coeffs, vec![Rat::one(), Rat::from_int(-2)]);
        assert_eq!(canon.rhs, Rat::from_int(3));

        // equalities get a positive leading coefficient
        let e = LinearConstraint::new(vec![r(-2, 1), r(2, 1)], Relation::Eq, r(-4, 1));
        let canon = e.canonical();
        assert_eq!(canon.coeffs, vec![Rat::one(), -Rat::one()]);
        assert_eq!(canon.rhs, Rat::from_int(2));
    }

    #[test]
    fn h_text_round_trip() {
        let mut p = HPolyhedron::<Rat>::universe(payoff_vars(3));
        p.push(ge(&[1, 0, 0], 0)).unwrap();
        p.push(LinearConstraint::new(
            vec![Rat::one(), Rat::one(), Rat::one()],
            Relation::Eq,
            r(3, 2),
        ))
        .unwrap();
        let text = p.to_text();
        let q: HPolyhedron<Rat> = HPolyhedron::parse_text(&text).unwrap();
        assert_eq!(q.vars(), p.vars());
        assert_eq!(q.constraints(), p.constraints());

        // <= lines are normalized to >= on input
        let q: HPolyhedron<Rat> =
            HPolyhedron::parse_text("x[1] x[2]\n1 1 <= 1\n").unwrap();
        assert_eq!(q.constraints()[0], ge(&[-1, -1], -1));
    }

    #[test]
    fn v_text_round_trip_and_canonical_rays() {
        let mut v = VPolyhedron::<Rat> {
            vertices: vec![vec![Rat::zero(), Rat::one(), Rat::zero()]],
            rays: vec![vec![r(2, 3), r(-2, 3), Rat::zero()]],
        };
        v.canonicalize();
        assert_eq!(v.rays, vec![vec![Rat::one(), -Rat::one(), Rat::zero()]]);
        let parsed: VPolyhedron<Rat> = VPolyhedron::parse_text(&v.to_text()).unwrap();
        assert_eq!(parsed, v);
    }

    #[test]
    fn recession_cone_zeroes_rhs() {
        let mut p = HPolyhedron::<Rat>::universe(payoff_vars(1));
        p.push(ge(&[1], 3)).unwrap();
        let cone = p.recession_cone();
        assert_eq!(cone.constraints()[0], ge(&[1], 0));
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let mut p = HPolyhedron::<Rat>::universe(payoff_vars(2));
        assert!(p.push(ge(&[1], 0)).is_err());
        assert!(p.contains(&[Rat::one()]).is_err());
    }
}
