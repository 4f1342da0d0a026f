//! The equivariant Chow module: basis counts against the orbit decomposition,
//! the defining relation, commutativity of the action, and the lattice
//! properties of the incidence generators.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use toric_bm::chow::{basis_in_degree, ChowBasisElement, ChowElement, ChowModule, Expression, ExpressionTerm};
use toric_bm::fan::Preset;
use toric_bm::lattice::{dot, int_vector, scale_vector, smith_normal_form, IntVector};
use toric_bm::{Fan, IntegerMatrix};

fn corpus() -> Vec<Fan> {
    [
        "projective_space 1",
        "projective_space 2",
        "projective_space 3",
        "hirzebruch 2",
        "hirzebruch -3",
        "weighted_projective 1 1 2",
        "weighted_projective 2 3 5",
        "quadric_cone_affine",
        "punctured_plane",
        "torus 2",
        "product projective_space 1 x torus 1",
        "product quadric_cone_affine x projective_space 1",
    ]
    .iter()
    .map(|p| p.parse::<Preset>().unwrap().fan().unwrap())
    .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|A_k| = Σ_σ #{monomials of degree codim σ − k/2 in dim σ variables}`.
fn orbit_sum(fan: &Fan, k: i64) -> u64 {
    if k % 2 != 0 {
        return 0;
    }
    let n = fan.rank() as i64;
    fan.cones()
        .iter()
        .map(|c| {
            let d = c.dim() as i64;
            let i = n - d - k / 2;
            match (d, i) {
                (_, i) if i < 0 => 0,
                (0, 0) => 1,
                (0, _) => 0,
                (d, i) => binomial((d - 1 + i) as u64, (d - 1) as u64),
            }
        })
        .sum()
}

#[test]
fn basis_ranks_match_orbit_sums() {
    for fan in corpus() {
        let n = fan.rank() as i64;
        for k in -2 * n..=2 * n + 2 {
            assert_eq!(basis_in_degree(&fan, k).len() as u64, orbit_sum(&fan, k), "k = {k}");
        }
    }
}

#[test]
fn defining_relation() {
    // m ∈ M(σ): m · x_σ = Σ ⟨m, n_{σ,τ}⟩ x_τ
    for fan in corpus() {
        let mut module = ChowModule::new(&fan);
        for (s, cone) in fan.cones().iter().enumerate() {
            for w in cone.m_perp_basis() {
                for scale in [1i64, -2] {
                    let m = scale_vector(w, &BigInt::from(scale));
                    let got = module.act(&m, &ChowBasisElement::generator(&fan, s));
                    let mut expected = ChowElement::zero();
                    for inc in fan.incidences_from(s) {
                        expected.add_term(ChowBasisElement::generator(&fan, inc.cone), &dot(&m, &inc.normal));
                    }
                    assert_eq!(got, expected);
                }
            }
        }
    }
}

#[test]
fn normal_generators_complete_the_lattice() {
    for fan in corpus() {
        for inc in fan.incidences() {
            let sigma = fan.cone(inc.face);
            let tau = fan.cone(inc.cone);
            assert!(tau.contains(&inc.normal));
            assert!(!sigma.contains(&inc.normal) || sigma.dim() == tau.dim());
            // N_σ + ℤ n spans a saturated lattice of rank dim τ
            let mut cols: Vec<IntVector> = sigma.n_sigma_basis().to_vec();
            cols.push(inc.normal.clone());
            let d = smith_normal_form(&IntegerMatrix::from_columns(fan.rank(), &cols));
            assert_eq!(d.rank(), tau.dim());
            assert!(d.diagonal.iter().all(|x| x == &BigInt::from(1)));
            // and it lies in span(τ)
            assert!(tau.m_perp_basis().iter().all(|w| dot(w, &inc.normal).is_zero()));
        }
    }
}

#[test]
fn degrees_drop_by_two() {
    for fan in corpus() {
        let mut module = ChowModule::new(&fan);
        let n = fan.rank();
        for k in -4..=2 * n as i64 {
            for e in basis_in_degree(&fan, k) {
                for i in 0..n {
                    let mut m = vec![0i64; n];
                    m[i] = 1;
                    for (b, _) in module.act(&int_vector(&m), &e).terms() {
                        assert_eq!(b.degree(&fan), k - 2);
                    }
                }
            }
        }
    }
}

fn small_vector(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_commutes(which in 0usize..12, seed in any::<u64>(), m in small_vector(3), m2 in small_vector(3)) {
        let fans = corpus();
        let fan = &fans[which % fans.len()];
        let n = fan.rank();
        let (m, m2) = (int_vector(&m[..n]), int_vector(&m2[..n]));
        let k = 2 * (n as i64) - 2 * (seed % (n as u64 + 2)) as i64;
        let basis = basis_in_degree(fan, k);
        prop_assume!(!basis.is_empty());
        let e = basis[(seed as usize / 7) % basis.len()].clone();
        let mut module = ChowModule::new(fan);
        let x = ChowElement::basis(e);
        let inner = module.act_element(&m2, &x);
        let a = module.act_element(&m, &inner);
        let inner = module.act_element(&m, &x);
        let b = module.act_element(&m2, &inner);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn action_is_linear_in_m(which in 0usize..12, seed in any::<u64>(), m in small_vector(3), m2 in small_vector(3)) {
        let fans = corpus();
        let fan = &fans[which % fans.len()];
        let n = fan.rank();
        let (m, m2) = (int_vector(&m[..n]), int_vector(&m2[..n]));
        let sum: IntVector = m.iter().zip(&m2).map(|(a, b)| a + b).collect();
        let k = 2 * (n as i64) - 2 * (seed % (n as u64 + 1)) as i64;
        let basis = basis_in_degree(fan, k);
        prop_assume!(!basis.is_empty());
        let e = &basis[(seed as usize / 5) % basis.len()];
        let mut module = ChowModule::new(fan);
        let lhs = module.act(&sum, e);
        let rhs = module.act(&m, e).sum(&module.act(&m2, e));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_of_products(which in 0usize..12, a in small_vector(3), b in small_vector(3)) {
        let fans = corpus();
        let fan = &fans[which % fans.len()];
        let n = fan.rank();
        let (a, b) = (int_vector(&a[..n]), int_vector(&b[..n]));
        let mut module = ChowModule::new(fan);
        // 3·a·b·x_0 as one expression, against 1·b·a·x_0 + 2·b·a·x_0 by actions
        let expr = Expression {
            terms: vec![ExpressionTerm { coefficient: BigInt::from(3), factors: vec![a.clone(), b.clone()], cone: 0 }],
        };
        let x0 = ChowElement::basis(ChowBasisElement::generator(fan, 0));
        let bx = module.act_element(&b, &x0);
        let bax = module.act_element(&a, &bx);
        let direct = bax.sum(&bax.scaled(&BigInt::from(2)));
        prop_assert_eq!(module.normal_form(&expr), direct);
    }
}
