//! Named fans used as a test corpus and as seeds for the torsion search.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{combinations, Fan, FanError, FanInput};
use crate::lattice::{int_vector, IntVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    ProjectiveSpace(usize),
    Product(Box<Preset>, Box<Preset>),
    Hirzebruch(i64),
    WeightedProjective(Vec<i64>),
    Torus(usize),
    PuncturedPlane,
    QuadricConeAffine,
}

impl Preset {
    /// Parses `name params...`. Products read `product <left> x <right>`,
    /// nesting to the right, e.g. `product projective_space 1 x hirzebruch 2`.
    pub fn parse(tokens: &[&str]) -> Result<Preset, FanError> {
        let (preset, rest) = Self::parse_prefix(tokens)?;
        if let Some(extra) = rest.first() {
            return Err(FanError::InvalidPreset(format!("unexpected token `{extra}`")));
        }
        Ok(preset)
    }

    fn parse_prefix<'a, 'b>(tokens: &'a [&'b str]) -> Result<(Preset, &'a [&'b str]), FanError> {
        let Some((&name, rest)) = tokens.split_first() else {
            return Err(FanError::InvalidPreset("missing preset name".to_string()));
        };
        let int = |s: &str| -> Result<i64, FanError> {
            s.parse::<i64>()
                .map_err(|_| FanError::InvalidPreset(format!("`{s}` is not an integer")))
        };
        let count = |rest: &'a [&'b str]| -> Result<(usize, &'a [&'b str]), FanError> {
            let Some((&t, rest)) = rest.split_first() else {
                return Err(FanError::InvalidPreset(format!("{name} needs a dimension")));
            };
            let v = int(t)?;
            if v < 1 {
                return Err(FanError::InvalidPreset(format!("{name} dimension must be positive")));
            }
            Ok((v as usize, rest))
        };
        match name {
            "projective_space" => {
                let (n, rest) = count(rest)?;
                Ok((Preset::ProjectiveSpace(n), rest))
            }
            "torus" => {
                let (n, rest) = count(rest)?;
                Ok((Preset::Torus(n), rest))
            }
            "hirzebruch" => {
                let Some((&t, rest)) = rest.split_first() else {
                    return Err(FanError::InvalidPreset("hirzebruch needs a parameter".to_string()));
                };
                Ok((Preset::Hirzebruch(int(t)?), rest))
            }
            "weighted_projective" => {
                let k = rest.iter().take_while(|t| t.parse::<i64>().is_ok()).count();
                let weights = rest[..k].iter().map(|t| int(t)).collect::<Result<Vec<_>, _>>()?;
                Ok((Preset::WeightedProjective(weights), &rest[k..]))
            }
            "punctured_plane" => Ok((Preset::PuncturedPlane, rest)),
            "quadric_cone_affine" => Ok((Preset::QuadricConeAffine, rest)),
            "product" => {
                let (left, rest) = Self::parse_prefix(rest)?;
                let Some((&"x", rest)) = rest.split_first() else {
                    return Err(FanError::InvalidPreset("product expects `<left> x <right>`".to_string()));
                };
                let (right, rest) = Self::parse_prefix(rest)?;
                Ok((Preset::Product(Box::new(left), Box::new(right)), rest))
            }
            other => Err(FanError::UnknownPreset(other.to_string())),
        }
    }

    pub fn input(&self) -> Result<FanInput, FanError> {
        match self {
            Preset::ProjectiveSpace(n) => {
                let n = *n;
                let mut rays: Vec<IntVector> = (0..n).map(|i| unit(n, i)).collect();
                rays.push((0..n).map(|_| -BigInt::one()).collect());
                Ok(FanInput::new(n, rays, combinations(n + 1, n)))
            }
            Preset::Torus(n) => Ok(FanInput::new(*n, Vec::new(), Vec::new())),
            Preset::Hirzebruch(a) => Ok(FanInput::from_i64(
                2,
                &[&[1, 0], &[0, 1], &[-1, *a], &[0, -1]],
                &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
            )),
            Preset::WeightedProjective(w) => weighted_projective(w),
            Preset::PuncturedPlane => Ok(FanInput::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0], &[1]])),
            Preset::QuadricConeAffine => Ok(FanInput::from_i64(2, &[&[0, 1], &[2, -1]], &[&[0, 1]])),
            Preset::Product(a, b) => {
                let (a, b) = (a.input()?, b.input()?);
                let n = a.rank + b.rank;
                let mut rays: Vec<IntVector> = a
                    .rays
                    .iter()
                    .map(|r| r.iter().cloned().chain((0..b.rank).map(|_| BigInt::zero())).collect())
                    .collect();
                rays.extend(
                    b.rays
                        .iter()
                        .map(|r| (0..a.rank).map(|_| BigInt::zero()).chain(r.iter().cloned()).collect()),
                );
                let offset = a.rays.len();
                let left = if a.max_cones.is_empty() { alloc::vec![Vec::new()] } else { a.max_cones };
                let right = if b.max_cones.is_empty() { alloc::vec![Vec::new()] } else { b.max_cones };
                let mut cones = Vec::new();
                for l in &left {
                    for r in &right {
                        let mut c = l.clone();
                        c.extend(r.iter().map(|i| i + offset));
                        cones.push(c);
                    }
                }
                cones.retain(|c| !c.is_empty());
                Ok(FanInput::new(n, rays, cones))
            }
        }
    }

    pub fn fan(&self) -> Result<Fan, FanError> {
        Fan::new(&self.input()?)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::ProjectiveSpace(n) => write!(f, "projective_space {n}"),
            Preset::Torus(n) => write!(f, "torus {n}"),
            Preset::Hirzebruch(a) => write!(f, "hirzebruch {a}"),
            Preset::WeightedProjective(w) => {
                write!(f, "weighted_projective")?;
                for x in w {
                    write!(f, " {x}")?;
                }
                Ok(())
            }
            Preset::PuncturedPlane => write!(f, "punctured_plane"),
            Preset::QuadricConeAffine => write!(f, "quadric_cone_affine"),
            Preset::Product(a, b) => write!(f, "product {a} x {b}"),
        }
    }
}

fn unit(n: usize, i: usize) -> IntVector {
    (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
}

/// Fan of `ℙ(w_0, …, w_n)` in `N = ℤ^{n+1} / ℤ·w`, coordinates taken by
/// dropping the first coordinate after the change of basis that sends `w`
/// to `e_0`. With `w_0 = 1` the rays are `e_1 … e_n, −(w_1, …, w_n)`.
fn weighted_projective(w: &[i64]) -> Result<FanInput, FanError> {
    if w.len() < 2 {
        return Err(FanError::InvalidPreset("weighted_projective needs at least two weights".into()));
    }
    if w.iter().any(|&x| x <= 0) {
        return Err(FanError::InvalidPreset("weights must be positive".into()));
    }
    let n = w.len() - 1;
    let rays: Vec<IntVector> = if w[0] == 1 {
        // x ↦ (x_1 − w_1 x_0, …, x_n − w_n x_0)
        let mut rays: Vec<IntVector> = (0..n).map(|i| unit(n, i)).collect();
        rays.push(w[1..].iter().map(|&x| BigInt::from(-x)).collect());
        rays
    } else {
        let wv = int_vector(w);
        if !crate::lattice::is_primitive(&wv) {
            return Err(FanError::InvalidPreset("weights must have gcd 1".into()));
        }
        let (_, comp) = crate::lattice::saturation_and_complement(core::slice::from_ref(&wv), n + 1);
        let mut cols = alloc::vec![wv];
        cols.extend(comp);
        let basis = crate::lattice::IntegerMatrix::from_columns(n + 1, &cols);
        let inv = crate::lattice::unimodular_inverse(&basis).expect("unimodular by construction");
        // coordinates of e_i in the basis (w | comp), w-coordinate dropped
        let image = |i: usize| -> IntVector { inv.column(i)[1..].to_vec() };
        let mut rays: Vec<IntVector> = (1..=n).map(image).collect();
        rays.push(image(0));
        rays
    };
    for (i, r) in rays.iter().enumerate() {
        if !crate::lattice::is_primitive(r) {
            return Err(FanError::InvalidPreset(format!(
                "weights are not well formed: ray {i} is not primitive"
            )));
        }
    }
    Ok(FanInput::new(n, rays, combinations(n + 1, n)))
}

/// Convenience for tests and corpus builders.
pub fn preset_from_str(spec: &str) -> Result<Preset, FanError> {
    let tokens: Vec<&str> = spec.split_whitespace().collect();
    Preset::parse(&tokens)
}

impl core::str::FromStr for Preset {
    type Err = FanError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        preset_from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn projective_line_matches_hand_fan() {
        let fan = Preset::ProjectiveSpace(1).fan().unwrap();
        assert_eq!(fan.cones().len(), 3);
        assert_eq!(fan.incidences().len(), 2);
    }

    #[test]
    fn hirzebruch_two() {
        let input = Preset::Hirzebruch(2).input().unwrap();
        assert_eq!(input.rays, vec![int_vector(&[1, 0]), int_vector(&[0, 1]), int_vector(&[-1, 2]), int_vector(&[0, -1])]);
        let fan = Fan::new(&input).unwrap();
        assert!(input.validate().unwrap().passed());
        assert!(fan.is_complete());
        assert_eq!(fan.f_vector(), vec![1, 4, 4]);
    }

    #[test]
    fn product_of_lines() {
        let p: Preset = "product projective_space 1 x projective_space 1".parse().unwrap();
        let fan = p.fan().unwrap();
        assert_eq!(fan.rank(), 2);
        assert_eq!(fan.maximal_cones().len(), 4);
        assert_eq!(fan.cones().len(), 9);
    }

    #[test]
    fn weighted_example() {
        let input = Preset::WeightedProjective(vec![1, 1, 2]).input().unwrap();
        assert_eq!(input.rays, vec![int_vector(&[1, 0]), int_vector(&[0, 1]), int_vector(&[-1, -2])]);
        assert_eq!(input.max_cones.len(), 3);
        let input = Preset::WeightedProjective(vec![2, 3, 5]).input().unwrap();
        Fan::new(&input).unwrap();
        assert!(Preset::WeightedProjective(vec![1, 0, 2]).input().is_err());
        assert!(Preset::WeightedProjective(vec![2, 4]).input().is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(preset_from_str("torus 3").unwrap(), Preset::Torus(3));
        assert!(matches!(preset_from_str("blah 1"), Err(FanError::UnknownPreset(_))));
        assert!(preset_from_str("projective_space").is_err());
        assert!(preset_from_str("projective_space 2 7").is_err());
        let nested = preset_from_str("product product projective_space 1 x projective_space 1 x projective_space 1").unwrap();
        assert_eq!(nested.fan().unwrap().rank(), 3);
        assert_eq!(format!("{nested}"), "product product projective_space 1 x projective_space 1 x projective_space 1");
    }

    #[test]
    fn torus_is_zero_cone() {
        let fan = Preset::Torus(3).fan().unwrap();
        assert_eq!(fan.cones().len(), 1);
        assert!(fan.incidences().is_empty());
    }
}
