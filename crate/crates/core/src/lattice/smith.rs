//! Smith normal form with unimodular transforms, and the lattice operations
//! built on top of it (integer kernels, saturation, complements).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Diagonal of `S`, length `min(rows, cols)`: nonzero entries first, each
    /// dividing the next, then zeros.
    pub diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Working state: the matrix being reduced plus the accumulated transforms
/// and their inverses.
struct SmithState {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

impl SmithState {
    fn new(a: &IntegerMatrix) -> Self {
        Self {
            a: a.row_vectors(),
            u: identity_rows(a.rows()),
            u_inv: identity_rows(a.rows()),
            v: identity_rows(a.cols()),
            v_inv: identity_rows(a.cols()),
            rows: a.rows(),
            cols: a.cols(),
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        self.u.swap(i, k);
        for row in &mut self.u_inv {
            row.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in &mut self.a {
            row.swap(j, k);
        }
        for row in &mut self.v {
            row.swap(j, k);
        }
        self.v_inv.swap(j, k);
    }

    /// row_i -= q · row_k
    fn row_axpy(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self.a[k][j] * q;
            self.a[i][j] -= t;
        }
        for j in 0..self.rows {
            let t = &self.u[k][j] * q;
            self.u[i][j] -= t;
        }
        // U ← E·U with E = I − q e_i e_kᵀ, so U⁻¹ ← U⁻¹·E⁻¹: col_k += q · col_i.
        for r in 0..self.rows {
            let t = &self.u_inv[r][i] * q;
            self.u_inv[r][k] += t;
        }
    }

    /// col_j -= q · col_k
    fn col_axpy(&mut self, j: usize, k: usize, q: &BigInt) {
        for r in 0..self.rows {
            let t = &self.a[r][k] * q;
            self.a[r][j] -= t;
        }
        for r in 0..self.cols {
            let t = &self.v[r][k] * q;
            self.v[r][j] -= t;
        }
        for c in 0..self.cols {
            let t = &self.v_inv[j][c] * q;
            self.v_inv[k][c] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        for x in &mut self.u[i] {
            *x = -&*x;
        }
        for row in &mut self.u_inv {
            row[i] = -&row[i];
        }
    }

    /// Minimal |a_ij| over the trailing submatrix, ties by (row, col).
    fn select_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.select_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.a[t][t].clone();

            let mut clean = true;
            for i in t + 1..self.rows {
                if !self.a[i][t].is_zero() {
                    let q = self.a[i][t].div_floor(&p);
                    self.row_axpy(i, t, &q);
                    clean &= self.a[i][t].is_zero();
                }
            }
            for j in t + 1..self.cols {
                if !self.a[t][j].is_zero() {
                    let q = self.a[t][j].div_floor(&p);
                    self.col_axpy(j, t, &q);
                    clean &= self.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }

            let offender = (t + 1..self.rows).find(|&i| {
                (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p))
            });
            if let Some(i) = offender {
                // row_t += row_i brings a non-multiple into row t
                self.row_axpy(t, i, &-BigInt::one());
                continue;
            }
            if p.is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }

    fn to_matrix(rows: &[Vec<BigInt>], r: usize, c: usize) -> IntegerMatrix {
        IntegerMatrix::new(r, c, rows.iter().flatten().cloned().collect())
            .expect("consistent shape")
    }
}

/// Smith normal form with the deterministic pivot rule: the nonzero entry of
/// minimal absolute value in the unreduced block, ties broken by (row, col).
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    smith_full(a).0
}

/// Smith decomposition together with `U⁻¹` and `V⁻¹`.
pub(crate) fn smith_full(a: &IntegerMatrix) -> (SmithDecomposition, IntegerMatrix, IntegerMatrix) {
    let mut st = SmithState::new(a);
    st.reduce();
    let (r, c) = (st.rows, st.cols);
    let diagonal = (0..r.min(c)).map(|i| st.a[i][i].clone()).collect();
    let dec = SmithDecomposition {
        u: SmithState::to_matrix(&st.u, r, r),
        s: SmithState::to_matrix(&st.a, r, c),
        v: SmithState::to_matrix(&st.v, c, c),
        diagonal,
    };
    let u_inv = SmithState::to_matrix(&st.u_inv, r, r);
    let v_inv = SmithState::to_matrix(&st.v_inv, c, c);
    (dec, u_inv, v_inv)
}

/// Basis of the integer kernel `{v ∈ ℤ^cols : A·v = 0}`. The basis is
/// saturated: it spans every integer point of the rational kernel.
pub fn kernel_basis(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let dec = smith_normal_form(a);
    let r = dec.rank();
    (r..a.cols()).map(|j| dec.v.column(j)).collect()
}

/// Saturation and complement of the span of `vectors` in `ℤ^dim`.
///
/// Returns `(sat, comp)` where `sat` is a basis of `span(vectors) ∩ ℤ^dim` and
/// the square matrix with columns `sat ++ comp` is unimodular.
pub fn saturation_and_complement(
    vectors: &[Vec<BigInt>],
    dim: usize,
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    if vectors.is_empty() {
        let id = IntegerMatrix::identity(dim);
        return (Vec::new(), id.column_vectors());
    }
    let a = IntegerMatrix::from_columns(dim, vectors);
    let (dec, u_inv, _) = smith_full(&a);
    let r = dec.rank();
    let cols = u_inv.column_vectors();
    let (sat, comp) = cols.split_at(r);
    (sat.to_vec(), comp.to_vec())
}

/// Inverse of a unimodular matrix, `None` if the matrix is not unimodular.
pub fn unimodular_inverse(a: &IntegerMatrix) -> Option<IntegerMatrix> {
    if !a.is_square() {
        return None;
    }
    let dec = smith_normal_form(a);
    if !dec.diagonal.iter().all(One::is_one) {
        return None;
    }
    // U A V = I  ⇒  A⁻¹ = V U
    Some(dec.v.mul(&dec.u))
}

/// Rank of an integer matrix.
pub fn rank(a: &IntegerMatrix) -> usize {
    smith_normal_form(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(cols, rows)
    }

    fn check(a: &IntegerMatrix) -> SmithDecomposition {
        let (dec, u_inv, v_inv) = smith_full(a);
        assert_eq!(dec.u.mul(a).mul(&dec.v), dec.s);
        assert!(dec.u.is_unimodular() && dec.v.is_unimodular());
        assert_eq!(dec.u.mul(&u_inv), IntegerMatrix::identity(a.rows()));
        assert_eq!(dec.v.mul(&v_inv), IntegerMatrix::identity(a.cols()));
        dec
    }

    #[test]
    fn identity_case() {
        let dec = check(&IntegerMatrix::identity(2));
        assert_eq!(dec.diagonal, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn two_by_two_example() {
        let dec = check(&m(2, &[vec![2, 4], vec![6, 8]]));
        assert_eq!(dec.diagonal, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn empty_shapes() {
        let dec = check(&IntegerMatrix::zeros(0, 3));
        assert!(dec.diagonal.is_empty());
        assert_eq!(dec.rank(), 0);
        assert_eq!(dec.v.rows(), 3);
        let dec = check(&IntegerMatrix::zeros(4, 0));
        assert_eq!(dec.u.rows(), 4);
    }

    #[test]
    fn zeros_trail() {
        let dec = check(&m(3, &[vec![0, 0, 0], vec![0, 6, 0], vec![0, 0, 4]]));
        assert_eq!(
            dec.diagonal,
            vec![BigInt::from(2), BigInt::from(12), BigInt::zero()]
        );
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&m(2, &[vec![1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], BigInt::zero());
        assert_eq!(k[0][0].abs(), BigInt::one());

        assert!(kernel_basis(&IntegerMatrix::identity(3)).is_empty());
        let k = kernel_basis(&IntegerMatrix::zeros(1, 2));
        assert_eq!(k.len(), 2);
        assert!(IntegerMatrix::from_columns(2, &k).is_unimodular());
    }

    #[test]
    fn kernel_is_saturated() {
        // kernel of [2 4] over ℤ is spanned by (2,-1), not (4,-2)
        let k = kernel_basis(&m(2, &[vec![2, 4]]));
        let basis = IntegerMatrix::from_columns(2, &k);
        assert!(smith_normal_form(&basis).diagonal.iter().all(One::is_one));
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn saturation_examples() {
        let (sat, comp) = saturation_and_complement(&[big(&[2, 0])], 2);
        assert_eq!(sat, vec![big(&[1, 0])]);
        assert_eq!(comp, vec![big(&[0, 1])]);

        let std3: Vec<_> = IntegerMatrix::identity(3).column_vectors();
        let (sat, comp) = saturation_and_complement(&std3, 3);
        assert_eq!(sat, std3);
        assert!(comp.is_empty());

        let (sat, comp) = saturation_and_complement(&[big(&[1, 1]), big(&[1, -1])], 2);
        assert_eq!(sat.len(), 2);
        assert!(comp.is_empty());
        assert!(IntegerMatrix::from_columns(2, &sat).is_unimodular());

        let (sat, comp) = saturation_and_complement(&[], 2);
        assert!(sat.is_empty());
        assert_eq!(comp, vec![big(&[1, 0]), big(&[0, 1])]);
    }

    #[test]
    fn inverse() {
        let a = m(2, &[vec![2, 1], vec![1, 1]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), IntegerMatrix::identity(2));
        assert!(unimodular_inverse(&m(2, &[vec![2, 0], vec![0, 1]])).is_none());
    }
}
