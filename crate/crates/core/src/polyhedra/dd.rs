//! Double description at desk scale: generator enumeration for pointed
//! polyhedra and hull reconstruction from generators.
//!
//! Equalities are removed up front by solving for the affine subspace, the
//! rest is homogenized, and the cone's extreme rays are grown one constraint
//! at a time with the combinatorial adjacency test (two rays are adjacent iff
//! no third ray's tight set contains their common tight set).

use super::{fm, FmConfig, HPolyhedron, LinearConstraint, Relation, VPolyhedron};
use crate::bits::RowSet;
use crate::scalar::dot;
use crate::{linalg, Error, Result, Scalar};

#[derive(Clone, Copy, Debug)]
pub struct DdConfig {
    /// Ceiling on the number of rays alive at any point.
    pub max_rays: usize,
    /// Ceiling on the ambient dimension.
    pub max_dim: usize,
}

impl Default for DdConfig {
    fn default() -> Self {
        DdConfig {
            max_rays: 200_000,
            max_dim: 16,
        }
    }
}

struct Ray<T> {
    coords: Vec<T>,
    tight: RowSet,
}

/// Extreme rays of the pointed cone `{y : rows·y ≥ 0}`. Errors with
/// [`Error::NotPointed`] when the rows do not have full column rank.
fn extreme_rays_of_cone<T: Scalar>(
    rows: &[Vec<T>],
    dim: usize,
    cfg: &DdConfig,
) -> Result<Vec<Vec<T>>> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    if dim > cfg.max_dim + 1 {
        return Err(Error::Resource(format!(
            "cone dimension {dim} exceeds the budget {}",
            cfg.max_dim + 1
        )));
    }

    // greedy independent subset for the initial simplicial cone
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut chosen: Vec<Vec<T>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if basis_rows.len() == dim {
            break;
        }
        chosen.push(row.clone());
        if linalg::rank(&chosen) == basis_rows.len() + 1 {
            basis_rows.push(i);
        } else {
            chosen.pop();
        }
    }
    if basis_rows.len() < dim {
        return Err(Error::NotPointed);
    }

    let order: Vec<usize> = basis_rows
        .iter()
        .copied()
        .chain((0..rows.len()).filter(|i| !basis_rows.contains(i)))
        .collect();
    let total = order.len();

    // rays of {y : B y >= 0} are the columns of B^{-1}
    let mut rays: Vec<Ray<T>> = Vec::with_capacity(dim);
    for col in 0..dim {
        let mut unit = vec![T::zero(); dim];
        unit[col] = T::one();
        let coords = linalg::solve(&chosen, &unit).expect("basis is invertible");
        let mut tight = RowSet::new(total);
        for i in 0..dim {
            if i != col {
                tight.insert(i);
            }
        }
        rays.push(Ray {
            coords: super::canonical_ray(&coords),
            tight,
        });
    }

    for step in dim..total {
        let row = &rows[order[step]];
        let values: Vec<T> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let has_neg = values.iter().any(|v| v.is_negative());
        if !has_neg {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.tight.insert(step);
                }
            }
            continue;
        }

        let mut next: Vec<Ray<T>> = Vec::new();
        for (ray, v) in rays.iter().zip(&values) {
            if !v.is_negative() {
                let mut kept = Ray {
                    coords: ray.coords.clone(),
                    tight: ray.tight.clone(),
                };
                if v.is_zero() {
                    kept.tight.insert(step);
                }
                next.push(kept);
            }
        }
        for (pi, pv) in values.iter().enumerate() {
            if !pv.is_positive() {
                continue;
            }
            for (ni, nv) in values.iter().enumerate() {
                if !nv.is_negative() {
                    continue;
                }
                let common = rays[pi].tight.intersection(&rays[ni].tight);
                // rank needs dim-2 tight rows; cardinality is a cheap filter
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, other)| k == pi || k == ni || !other.tight.is_superset_of(&common));
                if !adjacent {
                    continue;
                }
                // pv > 0 > nv: pv·neg − nv·pos is a positive combination
                let coords: Vec<T> = rays[pi]
                    .coords
                    .iter()
                    .zip(&rays[ni].coords)
                    .map(|(p, n)| pv.clone() * n.clone() - nv.clone() * p.clone())
                    .collect();
                let mut tight = common;
                tight.insert(step);
                next.push(Ray {
                    coords: super::canonical_ray(&coords),
                    tight,
                });
                if next.len() > cfg.max_rays {
                    return Err(Error::Resource(format!(
                        "double description exceeds {} rays",
                        cfg.max_rays
                    )));
                }
            }
        }
        rays = next;
    }

    Ok(rays.into_iter().map(|r| r.coords).collect())
}

/// All vertices and extreme rays of a pointed polyhedron.
///
/// Empty polyhedra yield the empty generator set. Polyhedra with a nonzero
/// lineality space are rejected with [`Error::NotPointed`].
pub fn enumerate_generators<T: Scalar>(
    p: &HPolyhedron<T>,
    cfg: &DdConfig,
) -> Result<VPolyhedron<T>> {
    let dim = p.dimension();
    if dim > cfg.max_dim {
        return Err(Error::Resource(format!(
            "dimension {dim} exceeds the generator-enumeration budget {}",
            cfg.max_dim
        )));
    }
    if p.constraints().iter().any(|c| c.relation == Relation::Gt) {
        return Err(Error::InvalidArgument(
            "strict constraints have no generator representation".into(),
        ));
    }

    // split equalities out and reduce to the affine subspace they define
    let eq_rows: Vec<Vec<T>> = p
        .constraints()
        .iter()
        .filter(|c| c.relation == Relation::Eq)
        .map(|c| c.coeffs.clone())
        .collect();
    let eq_rhs: Vec<T> = p
        .constraints()
        .iter()
        .filter(|c| c.relation == Relation::Eq)
        .map(|c| c.rhs.clone())
        .collect();
    let origin = if eq_rows.is_empty() {
        vec![T::zero(); dim]
    } else {
        match linalg::solve(&eq_rows, &eq_rhs) {
            Some(x) => x,
            None => return Ok(VPolyhedron::empty()),
        }
    };
    let basis = if eq_rows.is_empty() {
        (0..dim)
            .map(|i| {
                let mut e = vec![T::zero(); dim];
                e[i] = T::one();
                e
            })
            .collect::<Vec<_>>()
    } else {
        linalg::kernel_basis(&eq_rows, dim)
    };
    let sub_dim = basis.len();

    // inequalities in subspace coordinates: a'·z >= b − a·origin
    let mut sub_rows: Vec<Vec<T>> = Vec::new();
    let mut sub_rhs: Vec<T> = Vec::new();
    for c in p.constraints() {
        if c.relation == Relation::Eq {
            continue;
        }
        let row: Vec<T> = basis.iter().map(|b| dot(&c.coeffs, b)).collect();
        let rhs = c.rhs.clone() - dot(&c.coeffs, &origin);
        sub_rows.push(row);
        sub_rhs.push(rhs);
    }

    if sub_dim == 0 {
        // the equalities pin a single candidate point
        let ok = sub_rhs.iter().all(|b| !b.is_positive());
        return Ok(if ok {
            let mut v = VPolyhedron {
                vertices: vec![origin],
                rays: Vec::new(),
            };
            v.canonicalize();
            v
        } else {
            VPolyhedron::empty()
        });
    }

    if linalg::rank(&sub_rows) < sub_dim {
        // lineality: only acceptable when the polyhedron is empty anyway
        let probe = HPolyhedron::from_constraints(
            (0..sub_dim).map(|i| format!("z[{i}]")).collect(),
            sub_rows
                .iter()
                .zip(&sub_rhs)
                .map(|(r, b)| LinearConstraint::new(r.clone(), Relation::Ge, b.clone()))
                .collect(),
        )?;
        if fm::is_empty(&probe, &FmConfig::default().quick())? {
            return Ok(VPolyhedron::empty());
        }
        return Err(Error::NotPointed);
    }

    // homogenize: rows (a', -b') plus the z0 >= 0 row, cone in dim sub_dim+1
    let mut cone_rows: Vec<Vec<T>> = sub_rows
        .into_iter()
        .zip(&sub_rhs)
        .map(|(mut r, b)| {
            r.push(-b.clone());
            r
        })
        .collect();
    let mut last = vec![T::zero(); sub_dim + 1];
    last[sub_dim] = T::one();
    cone_rows.push(last);

    let cone_rays = extreme_rays_of_cone(&cone_rows, sub_dim + 1, cfg)?;

    let mut out = VPolyhedron::empty();
    for ray in cone_rays {
        let (z, z0) = ray.split_at(sub_dim);
        let z0 = &z0[0];
        let lift = |scale: &T, z: &[T]| -> Vec<T> {
            (0..dim)
                .map(|i| {
                    let mut acc = T::zero();
                    for (zj, bj) in z.iter().zip(&basis) {
                        acc += zj.clone() * bj[i].clone();
                    }
                    acc / scale.clone()
                })
                .collect()
        };
        if z0.is_zero() {
            out.rays.push(lift(&T::one(), z));
        } else {
            let dir = lift(z0, z);
            let vertex: Vec<T> = origin
                .iter()
                .zip(&dir)
                .map(|(o, d)| o.clone() + d.clone())
                .collect();
            out.vertices.push(vertex);
        }
    }
    if out.vertices.is_empty() {
        // no vertex means the polyhedron itself is empty
        return Ok(VPolyhedron::empty());
    }
    out.canonicalize();
    Ok(out)
}

/// Halfspace representation of `conv(vertices) + cone(rays)`.
///
/// Works for any generating set, minimal or not; the output carries the
/// affine-hull equalities plus one inequality per facet.
pub fn hrep_from_vrep<T: Scalar>(
    v: &VPolyhedron<T>,
    vars: &[String],
    cfg: &DdConfig,
) -> Result<HPolyhedron<T>> {
    let dim = vars.len();
    for g in v.vertices.iter().chain(&v.rays) {
        if g.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator has {} coordinates, expected {dim}",
                g.len()
            )));
        }
    }
    if v.is_empty_set() {
        return Ok(HPolyhedron::empty(vars.to_vec()));
    }

    // lift generators into homogeneous space
    let mut gens: Vec<Vec<T>> = Vec::with_capacity(v.vertices.len() + v.rays.len());
    for vertex in &v.vertices {
        let mut g = vertex.clone();
        g.push(T::one());
        gens.push(g);
    }
    for ray in &v.rays {
        let mut g = ray.clone();
        g.push(T::zero());
        gens.push(g);
    }

    // span basis and its orthogonal complement (the affine-hull equalities)
    let mut span = gens.clone();
    linalg::rref(&mut span);
    let complement = linalg::kernel_basis(&span, dim + 1);

    let mut out = HPolyhedron::universe(vars.to_vec());
    for w in &complement {
        let coeffs = w[..dim].to_vec();
        let rhs = -w[dim].clone();
        out.push(LinearConstraint::new(coeffs, Relation::Eq, rhs))?;
    }

    // dual cone within the span, in span coordinates
    let span_dim = span.len();
    let dual_rows: Vec<Vec<T>> = gens
        .iter()
        .map(|g| span.iter().map(|b| dot(g, b)).collect())
        .collect();
    let dual_rays = extreme_rays_of_cone(&dual_rows, span_dim, cfg)?;
    for u in dual_rays {
        // w = Σ u_j · basis_j is a supporting functional
        let w: Vec<T> = (0..dim + 1)
            .map(|i| {
                let mut acc = T::zero();
                for (uj, bj) in u.iter().zip(&span) {
                    acc += uj.clone() * bj[i].clone();
                }
                acc
            })
            .collect();
        let coeffs = w[..dim].to_vec();
        if coeffs.iter().all(T::is_zero) {
            continue; // homogenization facet, no x constraint
        }
        let rhs = -w[dim].clone();
        out.push(LinearConstraint::new(coeffs, Relation::Ge, rhs).canonical())?;
    }
    fm::remove_redundant(&out, fm::Redundancy::Quick, &FmConfig::default())
}
