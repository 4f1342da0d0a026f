use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Fan, FanError, FanInput};
use crate::lattice::{add_vectors, dot, is_primitive, primitive_part, scale_vector, IntVector};

/// Primitive part of `Σ c_i r_i` over the rays of cone `cone`. With all
/// `c_i > 0` this lies in the relative interior of the cone.
pub fn relative_interior_point(fan: &Fan, cone: usize, coefficients: &[u32]) -> IntVector {
    let c = fan.cone(cone);
    assert_eq!(coefficients.len(), c.rays().len(), "one coefficient per ray");
    let mut v = alloc::vec![BigInt::zero(); fan.rank()];
    for (&r, &k) in c.rays().iter().zip(coefficients) {
        v = add_vectors(&v, &scale_vector(fan.rays()[r].generator(), &BigInt::from(k)));
    }
    primitive_part(&v)
}

/// Star subdivision of `fan` at the primitive vector `v`, which must lie in the
/// relative interior of cone `cone` and must not already be a ray.
///
/// Every generating cone `τ ⊇ σ` is replaced by the cones `v + F` over the
/// facets `F` of `τ` that do not contain `σ`; other generating cones are kept.
pub fn star_subdivide(fan: &Fan, cone: usize, v: IntVector) -> Result<FanInput, FanError> {
    let sigma = fan.cone(cone);
    let in_relint = is_primitive(&v)
        && sigma.m_perp_basis().iter().all(|w| dot(w, &v).is_zero())
        && sigma.facets().iter().all(|f| dot(&f.normal, &v).is_positive())
        && sigma.dim() >= 2;
    if !in_relint {
        return Err(FanError::NotInRelativeInterior(cone));
    }
    let new_ray = fan.rays().len();
    let mut rays: Vec<IntVector> = fan.rays().iter().map(|r| r.generator().to_vec()).collect();
    rays.push(v);

    let mut max_cones = Vec::new();
    for listed in fan.listed_cones() {
        let contains_sigma = sigma.rays().iter().all(|r| listed.contains(r));
        if !contains_sigma {
            max_cones.push(listed.clone());
            continue;
        }
        let tau = fan.cone(fan.cone_by_rays(listed).expect("listed cones are in the fan"));
        for f in tau.facets() {
            if sigma.rays().iter().all(|r| f.rays.contains(r)) {
                continue;
            }
            let mut c = f.rays.clone();
            c.push(new_ray);
            max_cones.push(c);
        }
    }
    Ok(FanInput::new(fan.rank(), rays, max_cones))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Preset;
    use crate::lattice::int_vector;

    #[test]
    fn blow_up_plane_point() {
        let p2 = Preset::ProjectiveSpace(2).fan().unwrap();
        let sigma = p2.cone_by_rays(&[0, 1]).unwrap();
        let v = relative_interior_point(&p2, sigma, &[1, 1]);
        assert_eq!(v, int_vector(&[1, 1]));
        let blown = Fan::new(&star_subdivide(&p2, sigma, v).unwrap()).unwrap();
        assert_eq!(blown.f_vector(), alloc::vec![1, 4, 4]);
        assert!(blown.is_complete());
    }

    #[test]
    fn subdivide_inside_a_facet() {
        let p3 = Preset::ProjectiveSpace(3).fan().unwrap();
        let sigma = p3.cone_by_rays(&[0, 1]).unwrap();
        let v = relative_interior_point(&p3, sigma, &[2, 1]);
        let fan = Fan::new(&star_subdivide(&p3, sigma, v).unwrap()).unwrap();
        // two maximal cones contain σ; each splits in two
        assert_eq!(fan.f_vector()[3], 6);
        assert!(fan.is_complete());
    }

    #[test]
    fn rejects_boundary_point() {
        let p2 = Preset::ProjectiveSpace(2).fan().unwrap();
        let sigma = p2.cone_by_rays(&[0, 1]).unwrap();
        assert!(star_subdivide(&p2, sigma, int_vector(&[1, 0])).is_err());
    }
}
