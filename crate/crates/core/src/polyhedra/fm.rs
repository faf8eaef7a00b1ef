//! Fourier–Motzkin elimination with eager redundancy removal.
//!
//! Elimination of one variable keeps the rows not mentioning it, pivots on an
//! equality when one is available, and otherwise combines opposite-sign
//! inequality pairs. When the variable occurs in no equality and all its
//! inequality coefficients share one sign, those rows are dropped outright:
//! they can always be satisfied by pushing the variable far enough toward the
//! unconstrained side.

use super::{HPolyhedron, LinearConstraint, Relation};
use crate::bits::RowSet;
use crate::{Error, Result, Scalar};

/// A constraint with its derivation metadata: which original rows it combines
/// and which variables were eliminated along the way.
struct Traced<T> {
    row: LinearConstraint<T>,
    ancestors: RowSet,
    history: u64,
}

impl<T: Scalar> Traced<T> {
    /// Imbert's criterion: a derived row combining more original rows than
    /// eliminated variables plus one is a nonnegative combination of other
    /// derived rows and can be dropped.
    fn redundant_by_count(&self) -> bool {
        self.ancestors.len() > self.history.count_ones() as usize + 1
    }
}

/// Traced counterpart of [`quick_reduce`]: canonical rows in, tautologies
/// out, same-vector rows merged keeping the tighter one.
fn reduce_traced<T: Scalar>(rows: Vec<Traced<T>>) -> Vec<Traced<T>> {
    let mut out: Vec<Traced<T>> = Vec::with_capacity(rows.len());
    for t in rows {
        if t.row.is_zero_row() && t.row.zero_row_holds() {
            continue;
        }
        let mut subsumed = false;
        let mut remove: Option<usize> = None;
        for (i, kept) in out.iter().enumerate() {
            if kept.row.coeffs != t.row.coeffs {
                continue;
            }
            match (kept.row.relation, t.row.relation) {
                (Relation::Eq, Relation::Eq) => {
                    if kept.row.rhs == t.row.rhs {
                        subsumed = true;
                    }
                }
                (Relation::Eq, _) => {
                    let implied = match t.row.relation {
                        Relation::Ge => kept.row.rhs >= t.row.rhs,
                        _ => kept.row.rhs > t.row.rhs,
                    };
                    if implied {
                        subsumed = true;
                    }
                }
                (_, Relation::Eq) => {
                    let implied = match kept.row.relation {
                        Relation::Ge => t.row.rhs >= kept.row.rhs,
                        _ => t.row.rhs > kept.row.rhs,
                    };
                    if implied {
                        remove = Some(i);
                    }
                }
                (a, b) => {
                    let tighter = t.row.rhs > kept.row.rhs
                        || (t.row.rhs == kept.row.rhs && b == Relation::Gt && a == Relation::Ge);
                    if tighter {
                        remove = Some(i);
                    } else {
                        subsumed = true;
                    }
                }
            }
            if subsumed || remove.is_some() {
                break;
            }
        }
        if let Some(i) = remove {
            out.remove(i);
        }
        if !subsumed {
            out.push(t);
        }
    }
    out
}

/// How hard redundancy removal works.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Redundancy {
    /// Canonical scaling, duplicate merging, single-constraint implication.
    Quick,
    /// `Quick` plus exact feasibility subproblems: every surviving inequality
    /// is irredundant.
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct FmConfig {
    /// Ceiling on the constraint count of any intermediate system.
    pub max_rows: usize,
    pub redundancy: Redundancy,
}

impl Default for FmConfig {
    fn default() -> Self {
        FmConfig {
            max_rows: 50_000,
            redundancy: Redundancy::Full,
        }
    }
}

impl FmConfig {
    pub fn quick(self) -> Self {
        FmConfig {
            redundancy: Redundancy::Quick,
            ..self
        }
    }
}

/// Projects `p` onto the variables other than `var`.
pub fn eliminate<T: Scalar>(p: &HPolyhedron<T>, var: &str, cfg: &FmConfig) -> Result<HPolyhedron<T>> {
    let ix = p
        .var_index(var)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {var:?}")))?;
    let rows = eliminate_rows(p.constraints(), ix, cfg, var)?;
    let vars: Vec<String> = p
        .vars()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != ix)
        .map(|(_, v)| v.clone())
        .collect();
    let dropped: Vec<LinearConstraint<T>> = rows
        .into_iter()
        .map(|c| drop_column(&c, ix))
        .collect();
    let out = HPolyhedron::from_constraints(vars, dropped)?;
    remove_redundant(&out, cfg.redundancy, cfg)
}

/// Sequential elimination in exactly the order given.
pub fn eliminate_all<T: Scalar>(
    p: &HPolyhedron<T>,
    vars: &[String],
    cfg: &FmConfig,
) -> Result<HPolyhedron<T>> {
    let mut cur = p.clone();
    for v in vars {
        cur = eliminate(&cur, v, cfg)?;
    }
    Ok(cur)
}

/// Eliminates a set of variables, choosing the order by the standard degree
/// heuristic: free same-sign drops first, then equality pivots, then the
/// variable minimizing (#positive × #negative) inequality occurrences.
pub fn eliminate_heuristic<T: Scalar>(
    p: &HPolyhedron<T>,
    vars: &[String],
    cfg: &FmConfig,
) -> Result<HPolyhedron<T>> {
    let mut cur = p.clone();
    let mut remaining: Vec<String> = vars.to_vec();
    for v in &remaining {
        if cur.var_index(v).is_none() {
            return Err(Error::InvalidArgument(format!("unknown variable {v:?}")));
        }
    }
    while !remaining.is_empty() {
        let pick = {
            let mut best: Option<(u128, usize)> = None;
            for (slot, name) in remaining.iter().enumerate() {
                let ix = cur.var_index(name).expect("still present");
                let cost = elimination_cost(cur.constraints(), ix);
                if best.as_ref().is_none_or(|&(c, _)| cost < c) {
                    best = Some((cost, slot));
                }
            }
            best.expect("nonempty").1
        };
        let name = remaining.remove(pick);
        cur = eliminate(&cur, &name, cfg)?;
    }
    Ok(cur)
}

fn elimination_cost<T: Scalar>(rows: &[LinearConstraint<T>], ix: usize) -> u128 {
    let mut eqs = 0u128;
    let mut pos = 0u128;
    let mut neg = 0u128;
    for row in rows {
        let c = &row.coeffs[ix];
        if c.is_zero() {
            continue;
        }
        match row.relation {
            Relation::Eq => eqs += 1,
            _ if c.is_positive() => pos += 1,
            _ => neg += 1,
        }
    }
    if eqs > 0 {
        // pivoting touches every row mentioning the variable, never blows up
        return 1 + pos + neg;
    }
    if pos == 0 || neg == 0 {
        return 0; // dropped for free
    }
    2 + pos * neg
}

fn drop_column<T: Scalar>(c: &LinearConstraint<T>, ix: usize) -> LinearConstraint<T> {
    debug_assert!(c.coeffs[ix].is_zero());
    let coeffs = c
        .coeffs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != ix)
        .map(|(_, v)| v.clone())
        .collect();
    LinearConstraint::new(coeffs, c.relation, c.rhs.clone())
}

/// One elimination step over raw rows; the variable's coefficient is zero in
/// every returned row.
fn eliminate_rows<T: Scalar>(
    rows: &[LinearConstraint<T>],
    ix: usize,
    cfg: &FmConfig,
    var: &str,
) -> Result<Vec<LinearConstraint<T>>> {
    let mut kept: Vec<LinearConstraint<T>> = Vec::new();
    let mut pos: Vec<&LinearConstraint<T>> = Vec::new();
    let mut neg: Vec<&LinearConstraint<T>> = Vec::new();
    let mut pivot: Option<&LinearConstraint<T>> = None;
    for row in rows {
        let c = &row.coeffs[ix];
        if c.is_zero() {
            kept.push(row.clone());
        } else if row.relation == Relation::Eq {
            if pivot.is_none() {
                pivot = Some(row);
            } else {
                // substituted below like every other row
                if c.is_positive() {
                    pos.push(row);
                } else {
                    neg.push(row);
                }
            }
        } else if c.is_positive() {
            pos.push(row);
        } else {
            neg.push(row);
        }
    }

    if let Some(eq) = pivot {
        let pivot_coeff = eq.coeffs[ix].clone();
        for row in pos.into_iter().chain(neg) {
            let factor = row.coeffs[ix].clone() / pivot_coeff.clone();
            let coeffs: Vec<T> = row
                .coeffs
                .iter()
                .zip(&eq.coeffs)
                .map(|(a, b)| a.clone() - factor.clone() * b.clone())
                .collect();
            let rhs = row.rhs.clone() - factor * eq.rhs.clone();
            kept.push(LinearConstraint::new(coeffs, row.relation, rhs));
        }
        check_rows(kept.len(), cfg, var)?;
        return Ok(kept);
    }

    if pos.is_empty() || neg.is_empty() {
        // one-sided occurrences: the variable can absorb every such row
        check_rows(kept.len(), cfg, var)?;
        return Ok(kept);
    }

    for p_row in &pos {
        for n_row in &neg {
            let a = p_row.coeffs[ix].clone();
            let b = n_row.coeffs[ix].clone();
            // a > 0 > b: (-b)·p_row + a·n_row cancels the variable
            let coeffs: Vec<T> = p_row
                .coeffs
                .iter()
                .zip(&n_row.coeffs)
                .map(|(x, y)| -b.clone() * x.clone() + a.clone() * y.clone())
                .collect();
            let rhs = -b.clone() * p_row.rhs.clone() + a.clone() * n_row.rhs.clone();
            let relation = if p_row.relation == Relation::Gt || n_row.relation == Relation::Gt {
                Relation::Gt
            } else {
                Relation::Ge
            };
            kept.push(LinearConstraint::new(coeffs, relation, rhs).canonical());
            check_rows(kept.len(), cfg, var)?;
        }
    }
    Ok(kept)
}

fn check_rows(count: usize, cfg: &FmConfig, var: &str) -> Result<()> {
    if count > cfg.max_rows {
        return Err(Error::Resource(format!(
            "eliminating {var}: intermediate system exceeds {} constraints",
            cfg.max_rows
        )));
    }
    Ok(())
}

/// Image of `p` under the linear map given by `matrix` (one row per output
/// variable): adjoins `y = M·x` and eliminates the original variables.
pub fn linear_image<T: Scalar>(
    p: &HPolyhedron<T>,
    matrix: &[Vec<T>],
    out_names: &[String],
    cfg: &FmConfig,
) -> Result<HPolyhedron<T>> {
    if matrix.len() != out_names.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but {} output names were given",
            matrix.len(),
            out_names.len()
        )));
    }
    for row in matrix {
        if row.len() != p.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "matrix row has {} columns, polyhedron has {} variables",
                row.len(),
                p.dimension()
            )));
        }
    }
    for name in out_names {
        if p.var_index(name).is_some() {
            return Err(Error::InvalidArgument(format!(
                "output variable {name:?} collides with an input variable"
            )));
        }
    }
    let old_dim = p.dimension();
    let mut vars: Vec<String> = p.vars().to_vec();
    vars.extend(out_names.iter().cloned());
    let mut combined = HPolyhedron::universe(vars);
    for c in p.constraints() {
        let mut coeffs = c.coeffs.clone();
        coeffs.extend(std::iter::repeat_n(T::zero(), out_names.len()));
        combined.push(LinearConstraint::new(coeffs, c.relation, c.rhs.clone()))?;
    }
    for (i, row) in matrix.iter().enumerate() {
        let mut coeffs: Vec<T> = row.iter().map(|a| -a.clone()).collect();
        coeffs.extend((0..out_names.len()).map(|j| if i == j { T::one() } else { T::zero() }));
        combined.push(LinearConstraint::new(coeffs, Relation::Eq, T::zero()))?;
    }
    let inputs: Vec<String> = p.vars().to_vec();
    debug_assert_eq!(combined.dimension(), old_dim + out_names.len());
    eliminate_heuristic(&combined, &inputs, cfg)
}

/// Exact emptiness test: eliminate everything with pruning and look for a
/// violated zero row.
pub fn is_empty<T: Scalar>(p: &HPolyhedron<T>, cfg: &FmConfig) -> Result<bool> {
    let shadow = project_traced(trace_rows(p.constraints()), |_| false, cfg)?;
    Ok(shadow
        .iter()
        .any(|t| t.row.is_zero_row() && !t.row.zero_row_holds()))
}

fn trace_rows<T: Scalar>(rows: &[LinearConstraint<T>]) -> Vec<Traced<T>> {
    let total = rows.len().max(1);
    rows.iter()
        .enumerate()
        .map(|(i, c)| Traced {
            row: c.canonical(),
            ancestors: RowSet::singleton(total, i),
            history: 0,
        })
        .collect()
}

/// Eliminates every variable outside `keep`, rows staying at full width with
/// zeroed columns. Derived rows carry ancestor sets and elimination
/// histories; rows combining more ancestors than eliminated variables plus
/// one are dropped (Imbert's acceleration), which is sound for the projection
/// even though intermediate systems may lose redundant rows.
fn project_traced<T: Scalar>(
    mut rows: Vec<Traced<T>>,
    keep: impl Fn(usize) -> bool,
    cfg: &FmConfig,
) -> Result<Vec<Traced<T>>> {
    let dim = rows.first().map_or(0, |t| t.row.coeffs.len());
    let mut alive: Vec<usize> = (0..dim).filter(|&i| !keep(i)).collect();

    loop {
        rows = reduce_traced(rows);
        if rows
            .iter()
            .any(|t| t.row.is_zero_row() && !t.row.zero_row_holds())
        {
            // already infeasible; the projection of an empty set is empty
            return Ok(rows);
        }
        // drop variables with no occurrences outright
        alive.retain(|&ix| rows.iter().any(|t| !t.row.coeffs[ix].is_zero()));
        if alive.is_empty() {
            return Ok(rows);
        }

        let slot = {
            let mut best = (u128::MAX, 0usize);
            for (s, &ix) in alive.iter().enumerate() {
                let mut eqs = 0u128;
                let mut pos = 0u128;
                let mut neg = 0u128;
                for t in &rows {
                    let c = &t.row.coeffs[ix];
                    if c.is_zero() {
                        continue;
                    }
                    match t.row.relation {
                        Relation::Eq => eqs += 1,
                        _ if c.is_positive() => pos += 1,
                        _ => neg += 1,
                    }
                }
                let cost = if eqs > 0 {
                    1 + pos + neg
                } else if pos == 0 || neg == 0 {
                    0
                } else {
                    2 + pos * neg
                };
                if cost < best.0 {
                    best = (cost, s);
                }
            }
            best.1
        };
        let ix = alive.remove(slot);

        let mut kept: Vec<Traced<T>> = Vec::new();
        let mut touching: Vec<Traced<T>> = Vec::new();
        for t in rows {
            if t.row.coeffs[ix].is_zero() {
                kept.push(t);
            } else {
                touching.push(t);
            }
        }
        let pivot_pos = touching.iter().position(|t| t.row.relation == Relation::Eq);
        if let Some(pp) = pivot_pos {
            let eq = touching.remove(pp);
            let pivot_coeff = eq.row.coeffs[ix].clone();
            for t in touching {
                let factor = t.row.coeffs[ix].clone() / pivot_coeff.clone();
                let coeffs: Vec<T> = t
                    .row
                    .coeffs
                    .iter()
                    .zip(&eq.row.coeffs)
                    .map(|(a, b)| a.clone() - factor.clone() * b.clone())
                    .collect();
                let rhs = t.row.rhs.clone() - factor * eq.row.rhs.clone();
                kept.push(Traced {
                    row: LinearConstraint::new(coeffs, t.row.relation, rhs).canonical(),
                    ancestors: t.ancestors.union(&eq.ancestors),
                    history: t.history | (1 << ix),
                });
            }
        } else {
            let has_pos = touching.iter().any(|t| t.row.coeffs[ix].is_positive());
            let has_neg = touching.iter().any(|t| t.row.coeffs[ix].is_negative());
            if has_pos && has_neg {
                for p_t in touching.iter().filter(|t| t.row.coeffs[ix].is_positive()) {
                    for n_t in touching.iter().filter(|t| t.row.coeffs[ix].is_negative()) {
                        let p_row = &p_t.row;
                        let n_row = &n_t.row;
                        let a = p_row.coeffs[ix].clone();
                        let b = n_row.coeffs[ix].clone();
                        let coeffs: Vec<T> = p_row
                            .coeffs
                            .iter()
                            .zip(&n_row.coeffs)
                            .map(|(x, y)| -b.clone() * x.clone() + a.clone() * y.clone())
                            .collect();
                        let rhs =
                            -b.clone() * p_row.rhs.clone() + a.clone() * n_row.rhs.clone();
                        let relation = if p_row.relation == Relation::Gt
                            || n_row.relation == Relation::Gt
                        {
                            Relation::Gt
                        } else {
                            Relation::Ge
                        };
                        let combined = Traced {
                            row: LinearConstraint::new(coeffs, relation, rhs).canonical(),
                            ancestors: p_t.ancestors.union(&n_t.ancestors),
                            history: p_t.history | n_t.history | (1 << ix),
                        };
                        if combined.redundant_by_count() {
                            continue;
                        }
                        kept.push(combined);
                        if kept.len() > cfg.max_rows {
                            return Err(Error::Resource(format!(
                                "feasibility elimination exceeds {} constraints",
                                cfg.max_rows
                            )));
                        }
                    }
                }
            }
            // one-sided rows vanish with the variable
        }
        rows = kept;
    }
}

/// A point of `p`, or `None` when `p` is empty. Variables are fixed one at a
/// time against their exact projected interval, so the point is exact and
/// deterministic; strict bounds are respected.
pub fn sample_point<T: Scalar>(p: &HPolyhedron<T>, cfg: &FmConfig) -> Result<Option<Vec<T>>> {
    if is_empty(p, cfg)? {
        return Ok(None);
    }
    let dim = p.dimension();
    let mut current: Vec<LinearConstraint<T>> =
        p.constraints().iter().map(|c| c.canonical()).collect();
    let mut point = vec![T::zero(); dim];

    for ix in 0..dim {
        let shadow = project_traced(trace_rows(&current), |j| j == ix, cfg)?;
        let mut lower: Option<(T, bool)> = None; // (bound, strict)
        let mut upper: Option<(T, bool)> = None;
        for t in &shadow {
            let coeff = t.row.coeffs[ix].clone();
            if coeff.is_zero() {
                debug_assert!(t.row.zero_row_holds());
                continue;
            }
            let bound = t.row.rhs.clone() / coeff.clone();
            let (is_lower, strict) = match t.row.relation {
                Relation::Eq => {
                    lower = Some((bound.clone(), false));
                    upper = Some((bound, false));
                    continue;
                }
                rel => (coeff.is_positive(), rel == Relation::Gt),
            };
            let slot = if is_lower { &mut lower } else { &mut upper };
            let replace = match slot {
                None => true,
                Some((b, s)) => {
                    if is_lower {
                        bound > *b || (bound == *b && strict && !*s)
                    } else {
                        bound < *b || (bound == *b && strict && !*s)
                    }
                }
            };
            if replace {
                *slot = Some((bound, strict));
            }
        }
        let value = match (&lower, &upper) {
            (None, None) => T::zero(),
            (Some((lo, strict)), None) => {
                if *strict {
                    lo.clone() + T::one()
                } else {
                    lo.clone()
                }
            }
            (None, Some((hi, strict))) => {
                if *strict {
                    hi.clone() - T::one()
                } else {
                    hi.clone()
                }
            }
            (Some((lo, lo_strict)), Some((hi, hi_strict))) => {
                debug_assert!(
                    lo < hi || (lo == hi && !lo_strict && !hi_strict),
                    "projected interval must be nonempty for a feasible system"
                );
                if lo == hi {
                    lo.clone()
                } else {
                    (lo.clone() + hi.clone()) / T::from_int(2)
                }
            }
        };
        // fix the variable and fold it into the right-hand sides
        for row in &mut current {
            if !row.coeffs[ix].is_zero() {
                let delta = row.coeffs[ix].clone() * value.clone();
                row.rhs -= delta;
                row.coeffs[ix] = T::zero();
            }
        }
        point[ix] = value;
    }
    debug_assert!(p.constraints().iter().all(|c| c.satisfied_by(&point)));
    Ok(Some(point))
}

/// Feasibility of a raw row system (full-width rows over `dim` variables).
fn rows_feasible<T: Scalar>(rows: &[LinearConstraint<T>], cfg: &FmConfig) -> Result<bool> {
    let shadow = project_traced(trace_rows(rows), |_| false, cfg)?;
    Ok(!shadow
        .iter()
        .any(|t| t.row.is_zero_row() && !t.row.zero_row_holds()))
}

/// Returns an equal polyhedron with duplicates merged, single-constraint
/// implications dropped, and — at [`Redundancy::Full`] — every remaining
/// inequality certified irredundant by an exact feasibility subproblem.
pub fn remove_redundant<T: Scalar>(
    p: &HPolyhedron<T>,
    level: Redundancy,
    cfg: &FmConfig,
) -> Result<HPolyhedron<T>> {
    let mut rows = quick_reduce(p.constraints().to_vec());
    if level == Redundancy::Full {
        rows = drop_dependent_equalities(rows);
        rows = drop_implied_inequalities(rows, p.vars().len(), cfg)?;
    }
    HPolyhedron::from_constraints(p.vars().to_vec(), rows)
}

/// Canonicalization, tautology dropping, and same-vector tightening.
fn quick_reduce<T: Scalar>(rows: Vec<LinearConstraint<T>>) -> Vec<LinearConstraint<T>> {
    let mut out: Vec<LinearConstraint<T>> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.canonical();
        if row.is_zero_row() && row.zero_row_holds() {
            continue;
        }
        let mut subsumed = false;
        let mut remove: Option<usize> = None;
        for (i, kept) in out.iter().enumerate() {
            if kept.coeffs != row.coeffs {
                continue;
            }
            match (kept.relation, row.relation) {
                (Relation::Eq, Relation::Eq) => {
                    if kept.rhs == row.rhs {
                        subsumed = true;
                    }
                    // conflicting equalities stay: the system is empty and
                    // emptiness checks must see it
                }
                (Relation::Eq, _) => {
                    let implied = match row.relation {
                        Relation::Ge => kept.rhs >= row.rhs,
                        _ => kept.rhs > row.rhs,
                    };
                    if implied {
                        subsumed = true;
                    }
                }
                (_, Relation::Eq) => {
                    let implied = match kept.relation {
                        Relation::Ge => row.rhs >= kept.rhs,
                        _ => row.rhs > kept.rhs,
                    };
                    if implied {
                        remove = Some(i);
                    }
                }
                (a, b) => {
                    // both inequalities on the same vector: keep the tighter
                    let row_tighter = row.rhs > kept.rhs
                        || (row.rhs == kept.rhs && b == Relation::Gt && a == Relation::Ge);
                    if row_tighter {
                        remove = Some(i);
                    } else {
                        subsumed = true;
                    }
                }
            }
            if subsumed || remove.is_some() {
                break;
            }
        }
        if let Some(i) = remove {
            out.remove(i);
        }
        if !subsumed {
            out.push(row);
        }
    }
    out
}

/// Keeps a maximal independent subset of the equality rows (augmented with
/// the rhs), preserving order. Inconsistent dependents are kept: they witness
/// emptiness.
fn drop_dependent_equalities<T: Scalar>(rows: Vec<LinearConstraint<T>>) -> Vec<LinearConstraint<T>> {
    let mut kept_aug: Vec<Vec<T>> = Vec::new();
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        if row.relation != Relation::Eq {
            out.push(row);
            continue;
        }
        let mut aug = row.coeffs.clone();
        aug.push(row.rhs.clone());
        let before = crate::linalg::rank(&kept_aug);
        kept_aug.push(aug);
        if crate::linalg::rank(&kept_aug) == before {
            // linear combination of earlier equalities, rhs included
            kept_aug.pop();
            continue;
        }
        out.push(row);
    }
    out
}

fn drop_implied_inequalities<T: Scalar>(
    rows: Vec<LinearConstraint<T>>,
    _dim: usize,
    cfg: &FmConfig,
) -> Result<Vec<LinearConstraint<T>>> {
    let mut kept = rows;
    let mut i = 0;
    while i < kept.len() {
        if kept[i].relation == Relation::Eq {
            i += 1;
            continue;
        }
        let mut test_rows: Vec<LinearConstraint<T>> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r.clone())
            .collect();
        test_rows.extend(kept[i].negations());
        if !rows_feasible(&test_rows, cfg)? {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}
