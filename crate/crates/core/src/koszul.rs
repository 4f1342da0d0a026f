//! The Koszul complex `A^T_*(X) ⊗ Λ^* M` and its splitting by weight.
//!
//! For a fixed even Chow degree `c` the subcomplex is
//!
//! ```text
//! 0 → A_{c+2n} ⊗ Λ^n M → … → A_{c+2} ⊗ Λ^1 M → A_c ⊗ Λ^0 M → 0
//! ```
//!
//! with `K_s = A_{c+2s} ⊗ Λ^s M` in total degree `c + s` and weight `c / 2`.
//! The differential is
//! `d(a ⊗ e_I) = Σ_j (−1)^{j−1} (e_{i_j} · a) ⊗ e_{I∖i_j}`.
//!
//! Basis of `K_s`: Chow basis index major, exterior subset index minor.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::chow::{basis_in_degree, ChowBasisElement, ChowModule};
use crate::fan::{combinations, Fan};
use crate::lattice::{IntVector, IntegerMatrix, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KoszulError {
    #[error("d ∘ d ≠ 0 at weight {weight}, position {position}")]
    NotAComplex { weight: i64, position: usize },
}

/// Basis of `Λ^s M` as sorted 0-based index sets, lexicographically ordered.
pub fn exterior_basis(n: usize, s: usize) -> Vec<Vec<usize>> {
    combinations(n, s)
}

/// Even Chow degrees `c` with a possibly non-zero subcomplex: `−n ≤ c ≤ 2n`.
pub fn weight_range(n: usize) -> impl Iterator<Item = i64> {
    let n = n as i64;
    let start = if n % 2 == 0 { -n } else { -n + 1 };
    (start..=2 * n).step_by(2)
}

/// One term `K_s` of a weight subcomplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulTerm {
    pub chow_degree: i64,
    pub chow: Vec<ChowBasisElement>,
    pub exterior: Vec<Vec<usize>>,
}

impl KoszulTerm {
    pub fn dim(&self) -> usize {
        self.chow.len() * self.exterior.len()
    }

    /// Position of `a ⊗ e_I` in the basis.
    pub fn index(&self, chow: usize, exterior: usize) -> usize {
        chow * self.exterior.len() + exterior
    }
}

/// The subcomplex of Chow degree offset `c`.
#[derive(Clone, Debug)]
pub struct WeightSubcomplex {
    pub c: i64,
    /// `K_0, …, K_n`
    pub terms: Vec<KoszulTerm>,
    /// `D_1, …, D_n` with `D_s : K_s → K_{s−1}` (rows index `K_{s−1}`)
    pub differentials: Vec<SparseMatrix>,
}

impl WeightSubcomplex {
    pub fn weight(&self) -> i64 {
        self.c / 2
    }

    pub fn total_degree(&self, s: usize) -> i64 {
        self.c + s as i64
    }

    /// `D_s` for `1 ≤ s ≤ n`; zero maps at the ends.
    pub fn differential(&self, s: usize) -> SparseMatrix {
        let n = self.terms.len() - 1;
        if s == 0 {
            SparseMatrix::zeros(0, self.terms[0].dim())
        } else if s > n {
            SparseMatrix::zeros(self.terms[n].dim(), 0)
        } else {
            self.differentials[s - 1].clone()
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.iter().all(|t| t.dim() == 0)
    }
}

/// Builds differentials, caching `e_i · a` for every Chow basis element.
struct Builder<'a> {
    module: ChowModule<'a>,
    units: Vec<IntVector>,
    bases: BTreeMap<i64, Vec<ChowBasisElement>>,
    /// `(k, i)` → for each basis element of `A_k`, `e_i · a` as
    /// `(index in A_{k−2}, coefficient)` pairs
    actions: BTreeMap<(i64, usize), Vec<Vec<(usize, BigInt)>>>,
    exterior: Vec<Vec<Vec<usize>>>,
    exterior_index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl<'a> Builder<'a> {
    fn new(fan: &'a Fan) -> Self {
        let n = fan.rank();
        let units = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        let exterior: Vec<Vec<Vec<usize>>> = (0..=n).map(|s| exterior_basis(n, s)).collect();
        let exterior_index = exterior
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect())
            .collect();
        Self {
            module: ChowModule::new(fan),
            units,
            bases: BTreeMap::new(),
            actions: BTreeMap::new(),
            exterior,
            exterior_index,
        }
    }

    fn basis(&mut self, k: i64) -> &Vec<ChowBasisElement> {
        let fan = self.module.fan();
        self.bases.entry(k).or_insert_with(|| basis_in_degree(fan, k))
    }

    fn action(&mut self, k: i64, i: usize) -> &Vec<Vec<(usize, BigInt)>> {
        if !self.actions.contains_key(&(k, i)) {
            let source = self.basis(k).clone();
            let target: BTreeMap<ChowBasisElement, usize> = self
                .basis(k - 2)
                .iter()
                .enumerate()
                .map(|(j, e)| (e.clone(), j))
                .collect();
            let m = self.units[i].clone();
            let table = source
                .iter()
                .map(|a| {
                    self.module
                        .act(&m, a)
                        .terms()
                        .map(|(b, v)| (target[b], v.clone()))
                        .collect()
                })
                .collect();
            self.actions.insert((k, i), table);
        }
        &self.actions[&(k, i)]
    }

    fn term(&mut self, c: i64, s: usize) -> KoszulTerm {
        let k = c + 2 * s as i64;
        KoszulTerm {
            chow_degree: k,
            chow: self.basis(k).clone(),
            exterior: self.exterior[s].clone(),
        }
    }

    /// Triplets of `D_s` on the subcomplex of offset `c`.
    fn differential(&mut self, c: i64, s: usize) -> SparseMatrix {
        let k = c + 2 * s as i64;
        let source_len = self.basis(k).len();
        let target_len = self.basis(k - 2).len();
        let ext_src = self.exterior[s].clone();
        let ext_tgt_len = self.exterior[s - 1].len();
        let mut triplets = Vec::new();
        for a in 0..source_len {
            for (ei, subset) in ext_src.iter().enumerate() {
                let col = a * ext_src.len() + ei;
                for (j, &i) in subset.iter().enumerate() {
                    let mut rest = subset.clone();
                    rest.remove(j);
                    let e_rest = self.exterior_index[s - 1][&rest];
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    for (b, v) in &self.action(k, i)[a] {
                        triplets.push((b * ext_tgt_len + e_rest, col, v * sign));
                    }
                }
            }
        }
        SparseMatrix::from_triplets(target_len * ext_tgt_len, source_len * ext_src.len(), triplets)
    }
}

/// `D_s : K_s → K_{s−1}` of the subcomplex with offset `c`, as a dense matrix.
pub fn differential_matrix(fan: &Fan, c: i64, s: usize) -> IntegerMatrix {
    assert!(s >= 1 && s <= fan.rank(), "differential index out of range");
    Builder::new(fan).differential(c, s).to_dense()
}

/// All weight subcomplexes, each checked for `D_{s−1} D_s = 0`.
pub fn assemble_subcomplexes(fan: &Fan) -> Result<Vec<WeightSubcomplex>, KoszulError> {
    let n = fan.rank();
    let mut builder = Builder::new(fan);
    let mut out = Vec::new();
    for c in weight_range(n) {
        let terms: Vec<KoszulTerm> = (0..=n).map(|s| builder.term(c, s)).collect();
        let differentials: Vec<SparseMatrix> = (1..=n).map(|s| builder.differential(c, s)).collect();
        for s in 2..=n {
            if !differentials[s - 2].mul(&differentials[s - 1]).is_zero() {
                return Err(KoszulError::NotAComplex { weight: c / 2, position: s });
            }
        }
        out.push(WeightSubcomplex { c, terms, differentials });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Preset;
    use alloc::vec;

    #[test]
    fn weight_ranges() {
        assert_eq!(weight_range(1).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(weight_range(2).collect::<Vec<_>>(), vec![-2, 0, 2, 4]);
        assert_eq!(weight_range(3).collect::<Vec<_>>(), vec![-2, 0, 2, 4, 6]);
    }

    #[test]
    fn exterior_order() {
        assert_eq!(exterior_basis(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(exterior_basis(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn projective_line_differential() {
        let fan = Preset::ProjectiveSpace(1).fan().unwrap();
        // c = 0: A_2 ⊗ Λ^1 → A_0 ⊗ Λ^0 sends x_0 ⊗ e_1 to x_+ − x_−
        let d = differential_matrix(&fan, 0, 1);
        assert_eq!(d.rows(), 2);
        assert_eq!(d.cols(), 1);
        let mut col = d.column(0);
        col.sort();
        assert_eq!(col, vec![BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn torus_differentials_vanish() {
        let fan = Preset::Torus(2).fan().unwrap();
        let subs = assemble_subcomplexes(&fan).unwrap();
        let live: Vec<_> = subs.iter().filter(|s| !s.is_trivial()).collect();
        // A_4 = ℤ·x_0 sits at s = 0, 1, 2 for c = 4, 2, 0
        assert_eq!(live.iter().map(|s| s.c).collect::<Vec<_>>(), vec![0, 2, 4]);
        assert!(live.iter().all(|s| s.differentials.iter().all(SparseMatrix::is_zero)));
    }

    #[test]
    fn plane_is_a_complex() {
        for p in ["projective_space 2", "hirzebruch 3", "quadric_cone_affine", "weighted_projective 1 2 3"] {
            let fan = p.parse::<Preset>().unwrap().fan().unwrap();
            assert!(assemble_subcomplexes(&fan).is_ok(), "{p}");
        }
    }
}
