//! Rational polyhedral fans in `N ≅ ℤ^n`.
//!
//! A [`Fan`] is built from a [`FanInput`] (rank, primitive ray generators and
//! a list of generating cones). Construction takes the face closure, checks
//! strong convexity and the fan condition exactly, and precomputes per-cone
//! lattice data:
//!
//! * `N_σ = span(σ) ∩ N`,
//! * `M(σ) = σ^⊥ ∩ M`,
//! * a section `L_σ` with `M = M(σ) ⊕ L_σ`,
//!
//! and for every incidence `σ ≺ τ` with `dim τ = dim σ + 1` a lattice point
//! `n_{σ,τ} ∈ τ` whose class generates `N_τ / N_σ`.

mod geometry;
mod presets;
mod subdivide;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::lattice::{
    add_vectors, dot, extended_gcd, is_primitive, is_zero_vector, kernel_basis, primitive_part,
    saturation_and_complement, scale_vector, unimodular_inverse, IntVector, IntegerMatrix,
};

pub use geometry::{combinations, Facet};
pub use presets::Preset;
pub use subdivide::{relative_interior_point, star_subdivide};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("fan rank must be positive")]
    ZeroRank,
    #[error("ray {ray} has {found} coordinates, expected {expected}")]
    RayDimension { ray: usize, expected: usize, found: usize },
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(usize),
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("cone {cone} references unknown ray {ray}")]
    UnknownRay { cone: usize, ray: usize },
    #[error("cone {0} is not strongly convex")]
    NotStronglyConvex(usize),
    #[error("ray {ray} is not an extreme ray of cone {cone}")]
    NonExtremeRay { cone: usize, ray: usize },
    #[error("ray {0} is not used by any cone")]
    UnusedRay(usize),
    #[error("cones {0} and {1} do not meet in a common face")]
    FanCondition(usize, usize),
    #[error("cone {face} is not a facet of cone {cone}")]
    NotAnIncidence { face: usize, cone: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid preset parameters: {0}")]
    InvalidPreset(String),
    #[error("vector is not a primitive point in the relative interior of cone {0}")]
    NotInRelativeInterior(usize),
}

/// Raw fan description, as read from a fan file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanInput {
    pub rank: usize,
    pub rays: Vec<IntVector>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A primitive ray generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray(IntVector);

impl Ray {
    pub fn generator(&self) -> &[BigInt] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct Cone {
    rays: Vec<usize>,
    dim: usize,
    n_sigma_basis: Vec<IntVector>,
    m_perp_basis: Vec<IntVector>,
    l_section_basis: Vec<IntVector>,
    /// Inverse of the matrix with columns `m_perp_basis ++ l_section_basis`.
    coordinates: IntegerMatrix,
    facets: Vec<Facet>,
}

impl Cone {
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn n_sigma_basis(&self) -> &[IntVector] {
        &self.n_sigma_basis
    }
    pub fn m_perp_basis(&self) -> &[IntVector] {
        &self.m_perp_basis
    }
    pub fn l_section_basis(&self) -> &[IntVector] {
        &self.l_section_basis
    }
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Splits `m ∈ M` as `m_perp + m_sec` and returns the coordinates of both
    /// parts: first against `m_perp_basis`, then against `l_section_basis`.
    pub fn split_character(&self, m: &[BigInt]) -> (IntVector, IntVector) {
        let mut a = self.coordinates.mul_vector(m);
        let sec = a.split_off(self.m_perp_basis.len());
        (a, sec)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        geometry::contains(&self.m_perp_basis, &self.facets, x)
    }
}

/// `face ≺ cone` with `dim cone = dim face + 1`, annotated with `n_{face,cone}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub face: usize,
    pub cone: usize,
    pub normal: IntVector,
}

#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<Ray>,
    cones: Vec<Cone>,
    cone_index: BTreeMap<Vec<usize>, usize>,
    incidences: Vec<Incidence>,
    /// incidence indices grouped by their face
    upward: Vec<Vec<usize>>,
    max_cones: Vec<Vec<usize>>,
}

/// Outcome of one named validation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Per listed cone: sorted rays, geometry and face lattice.
struct Analysis {
    listed: Vec<Vec<usize>>,
    geometry: Vec<geometry::ConeGeometry>,
    perp: Vec<Vec<IntVector>>,
    faces: Vec<BTreeSet<Vec<usize>>>,
    /// one result per check, in report order
    results: Vec<(&'static str, Result<(), FanError>)>,
}

impl FanInput {
    pub fn new(rank: usize, rays: Vec<IntVector>, max_cones: Vec<Vec<usize>>) -> Self {
        Self { rank, rays, max_cones }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rank: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Self {
        Self {
            rank,
            rays: rays.iter().map(|r| crate::lattice::int_vector(r)).collect(),
            max_cones: max_cones.iter().map(|c| c.to_vec()).collect(),
        }
    }

    /// Input-level checks: shapes, primitivity, duplicates, ray indices.
    pub fn check_input(&self) -> Result<(), FanError> {
        if self.rank == 0 {
            return Err(FanError::ZeroRank);
        }
        let mut seen: BTreeMap<&IntVector, usize> = BTreeMap::new();
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.rank {
                return Err(FanError::RayDimension {
                    ray: i,
                    expected: self.rank,
                    found: r.len(),
                });
            }
            if is_zero_vector(r) {
                return Err(FanError::ZeroRay(i));
            }
            if !is_primitive(r) {
                return Err(FanError::NonPrimitiveRay(i));
            }
            if let Some(&j) = seen.get(r) {
                return Err(FanError::DuplicateRay(j, i));
            }
            seen.insert(r, i);
        }
        for (c, cone) in self.max_cones.iter().enumerate() {
            if let Some(&ray) = cone.iter().find(|&&r| r >= self.rays.len()) {
                return Err(FanError::UnknownRay { cone: c, ray });
            }
        }
        Ok(())
    }

    fn analyze(&self) -> Result<Analysis, FanError> {
        self.check_input()?;
        let n = self.rank;
        let listed: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let s: BTreeSet<usize> = c.iter().copied().collect();
                s.into_iter().collect()
            })
            .collect();

        let mut geometry = Vec::new();
        let mut perp = Vec::new();
        let mut faces = Vec::new();
        let mut convexity = Ok(());
        let mut extreme = Ok(());
        for (c, rays) in listed.iter().enumerate() {
            let gens: Vec<(usize, &IntVector)> = rays.iter().map(|&r| (r, &self.rays[r])).collect();
            let g = geometry::cone_geometry(n, &gens);
            let rows: Vec<IntVector> = rays.iter().map(|&r| self.rays[r].clone()).collect();
            perp.push(kernel_basis(&IntegerMatrix::from_rows(n, &rows)));
            if !g.pointed {
                if convexity.is_ok() {
                    convexity = Err(FanError::NotStronglyConvex(c));
                }
                faces.push(BTreeSet::new());
            } else {
                let f = geometry::faces(rays, &g.facets);
                if extreme.is_ok() {
                    if let Some(&r) = rays.iter().find(|&&r| !f.contains(&alloc::vec![r])) {
                        extreme = Err(FanError::NonExtremeRay { cone: c, ray: r });
                    }
                }
                faces.push(f);
            }
            geometry.push(g);
        }

        let used: BTreeSet<usize> = listed.iter().flatten().copied().collect();
        let closure = match (0..self.rays.len()).find(|r| !used.contains(r)) {
            Some(r) => Err(FanError::UnusedRay(r)),
            None => extreme,
        };

        let mut fan_condition = Ok(());
        if convexity.is_ok() {
            'pairs: for a in 0..listed.len() {
                for b in a + 1..listed.len() {
                    if !self.meet_in_common_face(a, b, &listed, &geometry, &perp, &faces) {
                        fan_condition = Err(FanError::FanCondition(a, b));
                        break 'pairs;
                    }
                }
            }
        }

        Ok(Analysis {
            listed,
            geometry,
            perp,
            faces,
            results: alloc::vec![
                ("strong convexity", convexity),
                ("face closure", closure),
                ("fan condition", fan_condition),
            ],
        })
    }

    fn meet_in_common_face(
        &self,
        a: usize,
        b: usize,
        listed: &[Vec<usize>],
        geometry: &[geometry::ConeGeometry],
        perp: &[Vec<IntVector>],
        faces: &[BTreeSet<Vec<usize>>],
    ) -> bool {
        let common: Vec<usize> = listed[a].iter().copied().filter(|r| listed[b].contains(r)).collect();
        if !faces[a].contains(&common) || !faces[b].contains(&common) {
            return false;
        }
        // A hyperplane u with u ≥ 0 on A, u ≤ 0 on B, vanishing on exactly
        // the common rays of each, proves A ∩ B = cone(common).
        let expose = |g: &geometry::ConeGeometry| -> IntVector {
            g.facets
                .iter()
                .filter(|f| common.iter().all(|r| f.rays.contains(r)))
                .fold(alloc::vec![BigInt::zero(); self.rank], |acc, f| add_vectors(&acc, &f.normal))
        };
        let (ua, ub) = (expose(&geometry[a]), expose(&geometry[b]));
        let separates = |u: &IntVector| -> bool {
            let side = |cone: &[usize], sign: i32| {
                cone.iter().all(|&r| {
                    let v = dot(u, &self.rays[r]) * sign;
                    if common.contains(&r) {
                        v.is_zero()
                    } else {
                        v.is_positive()
                    }
                })
            };
            side(&listed[a], 1) && side(&listed[b], -1)
        };
        let minus_ub: IntVector = ub.iter().map(|x| -x).collect();
        let difference = add_vectors(&ua, &minus_ub);
        if [&ua, &minus_ub, &difference].into_iter().any(separates) {
            return true;
        }

        let ha = geometry::HalfSpaces {
            perp: &perp[a],
            facets: &geometry[a].facets,
        };
        let hb = geometry::HalfSpaces {
            perp: &perp[b],
            facets: &geometry[b].facets,
        };
        let supporting: Vec<&Facet> = geometry[a]
            .facets
            .iter()
            .filter(|f| common.iter().all(|r| f.rays.contains(r)))
            .collect();
        geometry::intersection_extreme_rays(self.rank, &ha, &hb)
            .iter()
            .all(|x| supporting.iter().all(|f| dot(&f.normal, x).is_zero()))
    }

    /// Runs every fan check and reports each outcome. Input-level problems
    /// (shapes, non-primitive rays, unknown ray indices) are errors instead.
    pub fn validate(&self) -> Result<ValidationReport, FanError> {
        let analysis = self.analyze()?;
        let checks = analysis
            .results
            .into_iter()
            .map(|(name, r)| ValidationCheck {
                name,
                passed: r.is_ok(),
                detail: match r {
                    Ok(()) => String::new(),
                    Err(e) => format!("{e}"),
                },
            })
            .collect();
        Ok(ValidationReport { checks })
    }

    /// Applies a linear map of `N` to every ray.
    pub fn transformed(&self, map: &IntegerMatrix) -> FanInput {
        FanInput {
            rank: self.rank,
            rays: self.rays.iter().map(|r| map.mul_vector(r)).collect(),
            max_cones: self.max_cones.clone(),
        }
    }
}

/// Rule for choosing the section `L_σ` complementing `M(σ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SectionRule {
    /// Complement read off the Smith transform of `M(σ)`.
    #[default]
    Smith,
    /// The `Smith` section, sheared: every section vector gets the sum of the
    /// `M(σ)` basis added, and the first section vector gets the second.
    Sheared,
}

impl Fan {
    pub fn new(input: &FanInput) -> Result<Fan, FanError> {
        Self::with_section_rule(input, SectionRule::Smith)
    }

    pub fn with_section_rule(input: &FanInput, rule: SectionRule) -> Result<Fan, FanError> {
        let analysis = input.analyze()?;
        for (_, r) in &analysis.results {
            r.clone()?;
        }
        let n = input.rank;

        let mut all_faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        all_faces.insert(Vec::new());
        for f in &analysis.faces {
            all_faces.extend(f.iter().cloned());
        }

        // every face of a listed cone is a pointed cone; recompute its data
        let mut cones: Vec<Cone> = all_faces
            .into_iter()
            .map(|rays| build_cone(n, &input.rays, rays, rule))
            .collect();
        cones.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
        let cone_index: BTreeMap<Vec<usize>, usize> =
            cones.iter().enumerate().map(|(i, c)| (c.rays.clone(), i)).collect();

        let mut incidences = Vec::new();
        for (t, tau) in cones.iter().enumerate() {
            for f in &tau.facets {
                let s = cone_index[&f.rays];
                debug_assert_eq!(cones[s].dim + 1, tau.dim);
                let normal = compute_normal(&cones[s], tau, &input.rays);
                incidences.push(Incidence {
                    face: s,
                    cone: t,
                    normal,
                });
            }
        }
        incidences.sort_by_key(|a| (a.face, a.cone));
        let mut upward = alloc::vec![Vec::new(); cones.len()];
        for (i, inc) in incidences.iter().enumerate() {
            upward[inc.face].push(i);
        }

        drop(analysis.geometry);
        drop(analysis.perp);
        Ok(Fan {
            rank: n,
            rays: input.rays.iter().cloned().map(Ray).collect(),
            cones,
            cone_index,
            incidences,
            upward,
            max_cones: analysis.listed,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    /// Index of the cone with exactly these rays.
    pub fn cone_by_rays(&self, rays: &[usize]) -> Option<usize> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.cone_index.get(&key).copied()
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    /// Incidences `σ ≺ τ` with the given `σ`.
    pub fn incidences_from(&self, face: usize) -> impl Iterator<Item = &Incidence> + '_ {
        self.upward[face].iter().map(move |&i| &self.incidences[i])
    }

    /// The generating cones as given in the input (ray indices sorted).
    pub fn listed_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Cones that are not a proper face of another cone.
    pub fn maximal_cones(&self) -> Vec<usize> {
        let mut has_up = alloc::vec![false; self.cones.len()];
        for inc in &self.incidences {
            has_up[inc.face] = true;
        }
        (0..self.cones.len()).filter(|&i| !has_up[i]).collect()
    }

    /// Number of cones of each dimension `0..=n`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = alloc::vec![0; self.rank + 1];
        for c in &self.cones {
            f[c.dim] += 1;
        }
        f
    }

    pub fn to_input(&self) -> FanInput {
        FanInput {
            rank: self.rank,
            rays: self.rays.iter().map(|r| r.0.clone()).collect(),
            max_cones: self.max_cones.clone(),
        }
    }

    /// The image of the fan under a unimodular change of coordinates on `N`.
    /// Ray and cone order are kept.
    pub fn transformed(&self, map: &IntegerMatrix) -> Result<Fan, FanError> {
        Fan::new(&self.to_input().transformed(map))
    }

    /// `n_{σ,τ}` for an incidence `σ ≺ τ`.
    pub fn normal_generator(&self, face: usize, cone: usize) -> Result<&IntVector, FanError> {
        self.incidences_from(face)
            .find(|inc| inc.cone == cone)
            .map(|inc| &inc.normal)
            .ok_or(FanError::NotAnIncidence { face, cone })
    }

    /// Every cone's rays extend to a basis of `N`.
    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| {
            let gens: Vec<IntVector> = c.rays.iter().map(|&r| self.rays[r].0.clone()).collect();
            c.rays.len() == c.dim
                && crate::lattice::smith_normal_form(&IntegerMatrix::from_columns(self.rank, &gens))
                    .diagonal
                    .iter()
                    .all(|d| d == &BigInt::from(1))
        })
    }

    /// Every `(n−1)`-cone is a face of exactly two `n`-cones, and at least one
    /// `n`-cone exists. Together with the fan condition this forces the
    /// support to be all of `N_ℝ`.
    pub fn is_complete(&self) -> bool {
        let n = self.rank;
        let mut any_full = false;
        for (i, c) in self.cones.iter().enumerate() {
            if c.dim == n {
                any_full = true;
            }
            if c.dim + 1 == n && self.incidences_from(i).count() != 2 {
                return false;
            }
        }
        any_full && self.maximal_cones().iter().all(|&i| self.cones[i].dim == n)
    }

    /// Index of some cone containing `x`, if any.
    pub fn locate(&self, x: &[BigInt]) -> Option<usize> {
        self.cones.iter().position(|c| c.contains(x))
    }
}

fn build_cone(n: usize, all_rays: &[IntVector], rays: Vec<usize>, rule: SectionRule) -> Cone {
    let gens: Vec<(usize, &IntVector)> = rays.iter().map(|&r| (r, &all_rays[r])).collect();
    let g = geometry::cone_geometry(n, &gens);
    let rows: Vec<IntVector> = rays.iter().map(|&r| all_rays[r].clone()).collect();
    let m_perp_basis = kernel_basis(&IntegerMatrix::from_rows(n, &rows));
    let (_, mut l_section_basis) = saturation_and_complement(&m_perp_basis, n);
    if rule == SectionRule::Sheared {
        let shift = m_perp_basis
            .iter()
            .fold(alloc::vec![BigInt::zero(); n], |acc, w| add_vectors(&acc, w));
        for l in &mut l_section_basis {
            *l = add_vectors(l, &shift);
        }
        if l_section_basis.len() >= 2 {
            l_section_basis[0] = add_vectors(&l_section_basis[0], &l_section_basis[1]);
        }
    }
    let mut cols = m_perp_basis.clone();
    cols.extend(l_section_basis.iter().cloned());
    let coordinates =
        unimodular_inverse(&IntegerMatrix::from_columns(n, &cols)).expect("M(σ) ⊕ L_σ is unimodular");
    debug_assert_eq!(g.dim, l_section_basis.len());
    Cone {
        rays,
        dim: g.dim,
        n_sigma_basis: g.n_sigma_basis,
        m_perp_basis,
        l_section_basis,
        coordinates,
        facets: g.facets,
    }
}

/// Lattice point of `tau` generating `N_τ / N_σ`, oriented toward `tau`, and
/// normalized by sliding along the barycenter of `sigma` to the first point
/// that lies in `tau`.
fn compute_normal(sigma: &Cone, tau: &Cone, all_rays: &[IntVector]) -> IntVector {
    let pair = |x: &[BigInt]| -> IntVector { sigma.m_perp_basis.iter().map(|w| dot(w, x)).collect() };
    let outside = tau
        .rays
        .iter()
        .find(|r| !sigma.rays.contains(r))
        .expect("tau has a ray outside sigma");
    let g = primitive_part(&pair(&all_rays[*outside]));
    let lead = g.iter().position(|x| !x.is_zero()).expect("ray outside span(sigma)");

    // N_τ maps onto ℤ·g; combine its basis to hit g exactly
    let multiples: Vec<BigInt> = tau
        .n_sigma_basis
        .iter()
        .map(|b| &pair(b)[lead] / &g[lead])
        .collect();
    let (one, coeffs) = extended_gcd(&multiples);
    debug_assert_eq!(one, BigInt::from(1));
    let dim = all_rays[0].len();
    let mut normal = alloc::vec![BigInt::zero(); dim];
    for (b, c) in tau.n_sigma_basis.iter().zip(&coeffs) {
        normal = add_vectors(&normal, &scale_vector(b, c));
    }
    debug_assert_eq!(pair(&normal), g);

    if !sigma.rays.is_empty() {
        let s = sigma
            .rays
            .iter()
            .fold(alloc::vec![BigInt::zero(); dim], |acc, &r| add_vectors(&acc, &all_rays[r]));
        let mut t: Option<BigInt> = None;
        for f in &tau.facets {
            let us = dot(&f.normal, &s);
            if us.is_positive() {
                let need = (-dot(&f.normal, &normal)).div_ceil(&us);
                t = Some(match t {
                    Some(cur) if cur >= need => cur,
                    _ => need,
                });
            }
        }
        if let Some(t) = t {
            normal = add_vectors(&normal, &scale_vector(&s, &t));
        }
    }
    debug_assert!(tau.contains(&normal));
    normal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vector;
    use alloc::vec;

    #[test]
    fn projective_line() {
        let fan = Fan::new(&FanInput::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]])).unwrap();
        assert_eq!(fan.cones().len(), 3);
        assert_eq!(fan.incidences().len(), 2);
        assert_eq!(fan.normal_generator(0, 1).unwrap(), &int_vector(&[1]));
        assert_eq!(fan.normal_generator(0, 2).unwrap(), &int_vector(&[-1]));
    }

    #[test]
    fn punctured_plane() {
        let fan = Fan::new(&FanInput::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0], &[1]])).unwrap();
        assert_eq!(fan.cones().len(), 3);
        assert_eq!(fan.incidences().len(), 2);
        assert!(!fan.is_complete());
    }

    #[test]
    fn non_primitive_rejected() {
        let err = Fan::new(&FanInput::from_i64(2, &[&[2, 0]], &[&[0]])).unwrap_err();
        assert_eq!(err, FanError::NonPrimitiveRay(0));
    }

    #[test]
    fn quadric_normals() {
        // σ = ray(e2), τ = ⟨e2, 2e1 − e2⟩: n = e1
        let fan = Fan::new(&FanInput::from_i64(2, &[&[0, 1], &[2, -1]], &[&[0, 1]])).unwrap();
        let s = fan.cone_by_rays(&[0]).unwrap();
        let t = fan.cone_by_rays(&[0, 1]).unwrap();
        assert_eq!(fan.normal_generator(s, t).unwrap(), &int_vector(&[1, 0]));
        // σ = 0, τ = ray(e1) is a primitive generator
        let z = fan.cone_by_rays(&[]).unwrap();
        let r = fan.cone_by_rays(&[1]).unwrap();
        assert_eq!(fan.normal_generator(z, r).unwrap(), &int_vector(&[2, -1]));
        assert!(fan.normal_generator(z, t).is_err());
    }

    #[test]
    fn smooth_cone_normal() {
        let fan = Fan::new(&FanInput::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]])).unwrap();
        let s = fan.cone_by_rays(&[0]).unwrap();
        let t = fan.cone_by_rays(&[0, 1]).unwrap();
        assert_eq!(fan.normal_generator(s, t).unwrap(), &int_vector(&[0, 1]));
    }

    #[test]
    fn cone_lattice_examples() {
        let fan = Fan::new(&FanInput::from_i64(2, &[&[2, -1], &[1, 0]], &[&[0, 1]])).unwrap();
        let zero = fan.cone(fan.cone_by_rays(&[]).unwrap());
        assert_eq!(zero.m_perp_basis().len(), 2);
        assert!(zero.l_section_basis().is_empty());
        let full = fan.cone(fan.cone_by_rays(&[0, 1]).unwrap());
        assert!(full.m_perp_basis().is_empty());
        assert_eq!(full.l_section_basis().len(), 2);
        let ray = fan.cone(fan.cone_by_rays(&[0]).unwrap());
        let w = &ray.m_perp_basis()[0];
        assert!(w == &int_vector(&[1, 2]) || w == &int_vector(&[-1, -2]));
        let mut cols = ray.m_perp_basis().to_vec();
        cols.extend(ray.l_section_basis().iter().cloned());
        assert!(IntegerMatrix::from_columns(2, &cols).is_unimodular());
    }

    #[test]
    fn validation_failures() {
        // overlapping 2-cones ⟨e1,e2⟩ and ⟨e1+e2, e1−e2⟩
        let input = FanInput::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]], &[&[0, 1], &[2, 3]]);
        let report = input.validate().unwrap();
        assert!(!report.passed());
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(failed, vec!["fan condition"]);
        assert_eq!(Fan::new(&input).unwrap_err(), FanError::FanCondition(0, 1));

        let line = FanInput::from_i64(2, &[&[1, 0], &[-1, 0]], &[&[0, 1]]);
        let report = line.validate().unwrap();
        assert!(!report.checks[0].passed);
        assert_eq!(report.checks[0].name, "strong convexity");
    }

    #[test]
    fn non_extreme_generator() {
        let input = FanInput::from_i64(2, &[&[1, 0], &[1, 1], &[0, 1]], &[&[0, 1, 2]]);
        assert_eq!(Fan::new(&input).unwrap_err(), FanError::NonExtremeRay { cone: 0, ray: 1 });
    }

    #[test]
    fn adjacent_cones_pass() {
        let input = FanInput::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        assert!(input.validate().unwrap().passed());
        let fan = Fan::new(&input).unwrap();
        assert!(fan.is_complete());
        assert!(fan.is_smooth());
        assert_eq!(fan.f_vector(), vec![1, 3, 3]);
    }

    #[test]
    fn cones_touching_in_non_face() {
        // ⟨e1, e2⟩ and ⟨e2, −e1 + e2⟩ share e2 fine; ⟨e1,e2⟩ and ⟨(1,1),(−1,2)⟩ meet along part of
        // the ray (1,1) which is not a ray of the first cone
        let input = FanInput::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1], &[-1, 2]], &[&[0, 1], &[2, 3]]);
        assert!(!input.validate().unwrap().passed());
    }
}
