//! The equivariant Chow module `A^T_*(X)` with an explicit ℤ-basis.
//!
//! As a `Sym M`-module it is generated by the orbit-closure classes `x_σ`
//! subject to, for every `m ∈ M(σ) = σ^⊥ ∩ M`,
//!
//! ```text
//! m · x_σ = Σ_{σ ≺ τ, dim τ = dim σ + 1} ⟨m, n_{σ,τ}⟩ · x_τ
//! ```
//!
//! As an abelian group it is free on the elements `(σ, u) = l^u · x_σ`, where
//! `l_1, …, l_d` is the chosen basis of the section `L_σ` and `u ∈ ℕ^d`; this
//! element sits in degree `2(codim σ − |u|)`. Acting by `m` splits
//! `m = m_perp + m_sec` along `M = M(σ) ⊕ L_σ`: the section part multiplies the
//! monomial, the perpendicular part moves to the cones one dimension up and
//! the monomial is pushed there factor by factor. Pushes strictly raise the
//! cone dimension, so the recursion stops at full-dimensional cones.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::fan::Fan;
use crate::lattice::{add_vectors, dot, is_zero_vector, scale_vector, IntVector};

/// Basis element `l^exponents · x_cone`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChowBasisElement {
    pub cone: usize,
    pub exponents: Vec<u32>,
}

impl ChowBasisElement {
    /// The class `x_σ` of the orbit closure.
    pub fn generator(fan: &Fan, cone: usize) -> Self {
        Self {
            cone,
            exponents: alloc::vec![0; fan.cone(cone).dim()],
        }
    }

    pub fn sym_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Homological degree `2(codim σ − |u|)`.
    pub fn degree(&self, fan: &Fan) -> i64 {
        let codim = (fan.rank() - fan.cone(self.cone).dim()) as i64;
        2 * (codim - self.sym_degree() as i64)
    }
}

/// Finite integer combination of basis elements; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChowElement {
    terms: BTreeMap<ChowBasisElement, BigInt>,
}

impl ChowElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(e: ChowBasisElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::from(1));
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ChowBasisElement) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChowBasisElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: ChowBasisElement, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(k.clone());
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += k;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `self += k · other`
    pub fn add_scaled(&mut self, other: &ChowElement, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            self.add_term(e.clone(), &(v * k));
        }
    }

    pub fn scaled(&self, k: &BigInt) -> ChowElement {
        let mut out = ChowElement::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn sum(&self, other: &ChowElement) -> ChowElement {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::from(1));
        out
    }

    pub fn difference(&self, other: &ChowElement) -> ChowElement {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::from(-1));
        out
    }
}

/// All exponent vectors of length `vars` and total `degree`, lexicographically
/// ascending.
pub fn monomials(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if degree == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=degree {
        for mut rest in monomials(vars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Basis of `A_k`, ordered by cone index and then lexicographic exponents.
/// Odd `k` and `k > 2n` give the empty basis.
pub fn basis_in_degree(fan: &Fan, k: i64) -> Vec<ChowBasisElement> {
    if k % 2 != 0 {
        return Vec::new();
    }
    let n = fan.rank() as i64;
    let mut out = Vec::new();
    for (i, cone) in fan.cones().iter().enumerate() {
        let sym = (n - cone.dim() as i64) - k / 2;
        if sym < 0 {
            continue;
        }
        for exponents in monomials(cone.dim(), sym as u32) {
            out.push(ChowBasisElement { cone: i, exponents });
        }
    }
    out
}

/// A formal `Sym M`-combination `Σ coefficient · Π factors · x_cone`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expression {
    pub terms: Vec<ExpressionTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpressionTerm {
    pub coefficient: BigInt,
    pub factors: Vec<IntVector>,
    pub cone: usize,
}

impl Expression {
    /// The basis element written as `l^u · x_σ`.
    pub fn from_basis(fan: &Fan, e: &ChowBasisElement) -> Self {
        let cone = fan.cone(e.cone);
        let mut factors = Vec::new();
        for (l, &k) in cone.l_section_basis().iter().zip(&e.exponents) {
            factors.extend(core::iter::repeat_n(l.clone(), k as usize));
        }
        Self {
            terms: alloc::vec![ExpressionTerm {
                coefficient: BigInt::from(1),
                factors,
                cone: e.cone,
            }],
        }
    }

    pub fn from_element(fan: &Fan, x: &ChowElement) -> Self {
        let mut terms = Vec::new();
        for (e, k) in x.terms() {
            let mut t = Self::from_basis(fan, e).terms.remove(0);
            t.coefficient = k.clone();
            terms.push(t);
        }
        Self { terms }
    }
}

/// The module `A^T_*(X)` of a fan, with a memo of computed actions.
pub struct ChowModule<'a> {
    fan: &'a Fan,
    memo: BTreeMap<(IntVector, ChowBasisElement), ChowElement>,
}

impl<'a> ChowModule<'a> {
    pub fn new(fan: &'a Fan) -> Self {
        Self {
            fan,
            memo: BTreeMap::new(),
        }
    }

    pub fn fan(&self) -> &'a Fan {
        self.fan
    }

    /// `m · e` in normal form.
    pub fn act(&mut self, m: &[BigInt], e: &ChowBasisElement) -> ChowElement {
        let key = (m.to_vec(), e.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = self.act_uncached(m, e);
        self.memo.insert(key, out.clone());
        out
    }

    fn act_uncached(&mut self, m: &[BigInt], e: &ChowBasisElement) -> ChowElement {
        let mut out = ChowElement::zero();
        if is_zero_vector(m) {
            return out;
        }
        let fan = self.fan;
        let cone = fan.cone(e.cone);
        let (perp, sec) = cone.split_character(m);

        for (j, a) in sec.iter().enumerate() {
            if !a.is_zero() {
                let mut bumped = e.clone();
                bumped.exponents[j] += 1;
                out.add_term(bumped, a);
            }
        }

        if perp.iter().all(Zero::is_zero) {
            return out;
        }
        let mut m_perp = alloc::vec![BigInt::zero(); fan.rank()];
        for (w, a) in cone.m_perp_basis().iter().zip(&perp) {
            m_perp = add_vectors(&m_perp, &scale_vector(w, a));
        }
        for inc in fan.incidences_from(e.cone) {
            let c = dot(&m_perp, &inc.normal);
            if c.is_zero() {
                continue;
            }
            let pushed = self.push(e, inc.cone);
            out.add_scaled(&pushed, &c);
        }
        out
    }

    /// `l^u · x_τ` for `e = (σ, u)`, with the `l_j` the section basis of `σ`.
    fn push(&mut self, e: &ChowBasisElement, tau: usize) -> ChowElement {
        let sigma = self.fan.cone(e.cone);
        let mut x = ChowElement::basis(ChowBasisElement::generator(self.fan, tau));
        for (l, &k) in sigma.l_section_basis().iter().zip(&e.exponents) {
            for _ in 0..k {
                x = self.act_element(l, &x);
            }
        }
        x
    }

    /// Linear extension of [`ChowModule::act`].
    pub fn act_element(&mut self, m: &[BigInt], x: &ChowElement) -> ChowElement {
        let mut out = ChowElement::zero();
        for (e, k) in x.terms() {
            let y = self.act(m, e);
            out.add_scaled(&y, k);
        }
        out
    }

    /// Rewrites a formal expression into the basis.
    pub fn normal_form(&mut self, expr: &Expression) -> ChowElement {
        let mut out = ChowElement::zero();
        for t in &expr.terms {
            let mut x = ChowElement::basis(ChowBasisElement::generator(self.fan, t.cone));
            for f in &t.factors {
                x = self.act_element(f, &x);
            }
            out.add_scaled(&x, &t.coefficient);
        }
        out
    }
}

/// `m · e` in normal form, without keeping a memo around.
pub fn act_character(fan: &Fan, m: &[BigInt], e: &ChowBasisElement) -> ChowElement {
    ChowModule::new(fan).act(m, e)
}

pub fn normal_form(fan: &Fan, expr: &Expression) -> ChowElement {
    ChowModule::new(fan).normal_form(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Preset;
    use crate::lattice::int_vector;
    use alloc::vec;

    #[test]
    fn monomial_order() {
        assert_eq!(monomials(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(monomials(0, 0), vec![Vec::<u32>::new()]);
        assert!(monomials(0, 1).is_empty());
        assert_eq!(monomials(3, 2).len(), 6);
    }

    #[test]
    fn projective_line_bases() {
        let fan = Preset::ProjectiveSpace(1).fan().unwrap();
        assert_eq!(basis_in_degree(&fan, 2), vec![ChowBasisElement::generator(&fan, 0)]);
        let b0 = basis_in_degree(&fan, 0);
        assert_eq!(b0.len(), 2);
        assert!(b0.iter().all(|e| e.sym_degree() == 0 && e.cone != 0));
        assert_eq!(basis_in_degree(&fan, -4).len(), 2);
        assert!(basis_in_degree(&fan, 1).is_empty());
        assert!(basis_in_degree(&fan, 4).is_empty());
    }

    #[test]
    fn torus_basis() {
        let fan = Preset::Torus(3).fan().unwrap();
        assert_eq!(basis_in_degree(&fan, 6).len(), 1);
        for k in [-4, -2, 0, 2, 4, 8] {
            assert!(basis_in_degree(&fan, k).is_empty());
        }
    }

    #[test]
    fn projective_line_relation() {
        let fan = Preset::ProjectiveSpace(1).fan().unwrap();
        let x0 = ChowBasisElement::generator(&fan, 0);
        let plus = fan.cone_by_rays(&[0]).unwrap();
        let minus = fan.cone_by_rays(&[1]).unwrap();
        let y = act_character(&fan, &int_vector(&[1]), &x0);
        let mut expected = ChowElement::basis(ChowBasisElement::generator(&fan, plus));
        expected.add_term(ChowBasisElement::generator(&fan, minus), &BigInt::from(-1));
        assert_eq!(y, expected);
    }

    #[test]
    fn full_cone_pure_multiplication() {
        let fan = Preset::ProjectiveSpace(2).fan().unwrap();
        let sigma = fan.cone_by_rays(&[0, 1]).unwrap();
        let e = ChowBasisElement::generator(&fan, sigma);
        for (j, l) in fan.cone(sigma).l_section_basis().iter().enumerate() {
            let y = act_character(&fan, l, &e);
            let mut bumped = e.clone();
            bumped.exponents[j] = 1;
            assert_eq!(y, ChowElement::basis(bumped));
        }
    }

    #[test]
    fn punctured_plane_no_receiver() {
        let fan = Preset::PuncturedPlane.fan().unwrap();
        let ray = fan.cone_by_rays(&[0]).unwrap();
        let e = ChowBasisElement::generator(&fan, ray);
        // t2 ∈ σ^⊥ for σ = ray(e1); no 2-cones
        assert!(act_character(&fan, &int_vector(&[0, 1]), &e).is_zero());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let fan = Preset::Hirzebruch(1).fan().unwrap();
        let mut module = ChowModule::new(&fan);
        for k in [-2, 0, 2] {
            for e in basis_in_degree(&fan, k) {
                let x = ChowElement::basis(e.clone());
                assert_eq!(module.normal_form(&Expression::from_basis(&fan, &e)), x);
            }
        }
    }

    #[test]
    fn projective_line_square() {
        // t² · x_0 applied in two orders of a factorization agrees
        let fan = Preset::ProjectiveSpace(1).fan().unwrap();
        let mut module = ChowModule::new(&fan);
        let t = int_vector(&[1]);
        let expr = Expression {
            terms: vec![ExpressionTerm {
                coefficient: BigInt::from(1),
                factors: vec![t.clone(), t.clone()],
                cone: 0,
            }],
        };
        let y = module.normal_form(&expr);
        assert_eq!(y.len(), 2);
        for (e, k) in y.terms() {
            assert_eq!(e.sym_degree(), 1);
            assert_eq!(e.degree(&fan), -2);
            // ⟨t, ±1⟩ = ±1 and t restricted to L_ρ± = ±l, so each coefficient is ±1
            assert_eq!(k.magnitude(), &num_bigint::BigUint::from(1u32));
        }
    }
}
