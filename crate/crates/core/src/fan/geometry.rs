//! Exact cone geometry by brute force over generator subsets. Fine for the
//! small ranks (n ≤ 6) and cone sizes this crate targets.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::{dot, kernel_basis, rank, saturation_and_complement, IntVector, IntegerMatrix};

/// A facet inequality `⟨normal, x⟩ ≥ 0` and the generators it is tight on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: IntVector,
    pub rays: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct ConeGeometry {
    pub dim: usize,
    pub n_sigma_basis: Vec<IntVector>,
    pub facets: Vec<Facet>,
    pub pointed: bool,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Geometry of the cone generated by `gens` (pairs of global ray index and
/// generator) in `ℤ^n`.
pub(crate) fn cone_geometry(n: usize, gens: &[(usize, &IntVector)]) -> ConeGeometry {
    if gens.is_empty() {
        return ConeGeometry {
            dim: 0,
            n_sigma_basis: Vec::new(),
            facets: Vec::new(),
            pointed: true,
        };
    }
    let vectors: Vec<IntVector> = gens.iter().map(|(_, g)| (*g).clone()).collect();
    let (sat, comp) = saturation_and_complement(&vectors, n);
    let dim = sat.len();

    let mut seen = BTreeSet::new();
    let mut facets = Vec::new();
    for subset in combinations(gens.len(), dim - 1) {
        let mut rows: Vec<IntVector> = subset.iter().map(|&i| vectors[i].clone()).collect();
        rows.extend(comp.iter().cloned());
        let kernel = kernel_basis(&IntegerMatrix::from_rows(n, &rows));
        if kernel.len() != 1 {
            continue;
        }
        let mut normal = kernel.into_iter().next().expect("one vector");
        let values: Vec<BigInt> = vectors.iter().map(|g| dot(&normal, g)).collect();
        if values.iter().any(Signed::is_negative) {
            if values.iter().any(Signed::is_positive) {
                continue;
            }
            normal = normal.iter().map(|x| -x).collect();
        }
        let tight: Vec<usize> = gens
            .iter()
            .zip(&values)
            .filter(|(_, v)| v.is_zero())
            .map(|((r, _), _)| *r)
            .collect();
        if seen.insert(tight.clone()) {
            facets.push(Facet { normal, rays: tight });
        }
    }
    let normals: Vec<IntVector> = facets.iter().map(|f| f.normal.clone()).collect();
    let pointed = rank(&IntegerMatrix::from_rows(n, &normals)) == dim;
    ConeGeometry {
        dim,
        n_sigma_basis: sat,
        facets,
        pointed,
    }
}

/// Face lattice of a pointed cone as sorted ray-index sets: the cone itself,
/// its facets, and all their intersections (down to the empty set).
pub(crate) fn faces(all_rays: &[usize], facets: &[Facet]) -> BTreeSet<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut whole = all_rays.to_vec();
    whole.sort_unstable();
    out.insert(whole);
    let mut frontier: Vec<Vec<usize>> = facets.iter().map(|f| f.rays.clone()).collect();
    while let Some(f) = frontier.pop() {
        if !out.insert(f.clone()) {
            continue;
        }
        for g in facets {
            let meet: Vec<usize> = f.iter().copied().filter(|r| g.rays.contains(r)).collect();
            if !out.contains(&meet) {
                frontier.push(meet);
            }
        }
    }
    out
}

/// True iff the point `x` lies in the cone described by `facets` and the
/// equalities `perp`.
pub(crate) fn contains(perp: &[IntVector], facets: &[Facet], x: &[BigInt]) -> bool {
    perp.iter().all(|w| dot(w, x).is_zero()) && facets.iter().all(|f| !dot(&f.normal, x).is_negative())
}

/// Half-space data of a cone needed for intersection tests.
pub(crate) struct HalfSpaces<'a> {
    pub perp: &'a [IntVector],
    pub facets: &'a [Facet],
}

/// Extreme rays of the intersection of two pointed cones, by brute force over
/// tight constraint sets.
pub(crate) fn intersection_extreme_rays(n: usize, a: &HalfSpaces<'_>, b: &HalfSpaces<'_>) -> Vec<IntVector> {
    let equalities: Vec<IntVector> = a.perp.iter().chain(b.perp).cloned().collect();
    let inequalities: Vec<&IntVector> = a.facets.iter().chain(b.facets).map(|f| &f.normal).collect();
    let eq_rank = rank(&IntegerMatrix::from_rows(n, &equalities));
    if eq_rank >= n {
        return Vec::new();
    }
    let k = n - 1 - eq_rank;
    let mut found = BTreeSet::new();
    for subset in combinations(inequalities.len(), k) {
        let mut rows = equalities.clone();
        rows.extend(subset.iter().map(|&i| inequalities[i].clone()));
        let kernel = kernel_basis(&IntegerMatrix::from_rows(n, &rows));
        if kernel.len() != 1 {
            continue;
        }
        let x = &kernel[0];
        for cand in [x.clone(), x.iter().map(|v| -v).collect::<IntVector>()] {
            if inequalities.iter().all(|u| !dot(u, &cand).is_negative()) {
                found.insert(cand);
            }
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vector;
    use alloc::vec;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(4, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(6, 3).len(), 20);
    }

    fn geom(n: usize, rays: &[IntVector]) -> ConeGeometry {
        let gens: Vec<(usize, &IntVector)> = rays.iter().enumerate().collect();
        cone_geometry(n, &gens)
    }

    #[test]
    fn simplicial_faces() {
        let rays = [int_vector(&[1, 0, 0]), int_vector(&[0, 1, 0]), int_vector(&[0, 0, 1])];
        let g = geom(3, &rays);
        assert_eq!(g.dim, 3);
        assert!(g.pointed);
        assert_eq!(g.facets.len(), 3);
        assert_eq!(faces(&[0, 1, 2], &g.facets).len(), 8);
    }

    #[test]
    fn square_cone_faces() {
        // cone over a square: 4 rays, 4 facets, 1 + 4 + 4 + 1 faces
        let rays = [
            int_vector(&[1, 0, 1]),
            int_vector(&[0, 1, 1]),
            int_vector(&[-1, 0, 1]),
            int_vector(&[0, -1, 1]),
        ];
        let g = geom(3, &rays);
        assert_eq!(g.facets.len(), 4);
        assert_eq!(faces(&[0, 1, 2, 3], &g.facets).len(), 10);
    }

    #[test]
    fn line_is_not_pointed() {
        let g = geom(2, &[int_vector(&[1, 0]), int_vector(&[-1, 0])]);
        assert_eq!(g.dim, 1);
        assert!(!g.pointed);
        let g = geom(2, &[int_vector(&[1, 0]), int_vector(&[-1, 0]), int_vector(&[0, 1])]);
        assert!(!g.pointed);
    }

    #[test]
    fn lower_dimensional_cone() {
        let g = geom(3, &[int_vector(&[1, 0, 0]), int_vector(&[1, 1, 0])]);
        assert_eq!(g.dim, 2);
        assert!(g.pointed);
        assert_eq!(g.facets.len(), 2);
    }
}
