//! Data-driven orthonormal polynomial bases.
//!
//! Univariate polynomials are obtained from raw moments alone: for degree `j`
//! the monic coefficients `a_0..a_j` solve a `(j+1) x (j+1)` system whose first
//! `j` rows are Hankel rows of moments (orthogonality to all lower powers) and
//! whose last row pins the leading coefficient to one. Each polynomial is then
//! divided by its norm under the same moments, so the stored family is
//! orthonormal and the monic form is `coeffs[j] * norms[j]`.
//!
//! Multivariate terms are tensor products indexed by a total-degree
//! [`MultiIndexSet`] in graded order: by total degree, and within one degree
//! by decreasing lexicographic order of the exponent tuple, so for `d = 2`
//! the sequence is `(0,0) (1,0) (0,1) (2,0) (1,1) (0,2) ...`.

use ndarray::{Array2, ArrayView2, Axis};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rv::{raw_moments_analytic, raw_moments_empirical, Family, MomentSource, MomentVector};

/// Reciprocal condition numbers below this reject the moment system.
pub const RCOND_THRESHOLD: f64 = 1e-13;

/// Orders at or above this get one modified Gram–Schmidt pass.
pub const REORTHOGONALIZE_FROM: usize = 7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnivariateBasis {
    pub degree: usize,
    /// Row `j` holds the coefficients of `phi_j` in increasing powers.
    pub coeffs: Vec<Vec<f64>>,
    /// Norms of the monic polynomials under the moment measure.
    pub norms: Vec<f64>,
    pub normalized: bool,
}

impl UnivariateBasis {
    /// Monic coefficients (leading coefficient one).
    pub fn monic_coeffs(&self) -> Vec<Vec<f64>> {
        if !self.normalized {
            return self.coeffs.clone();
        }
        self.coeffs
            .iter()
            .zip(&self.norms)
            .map(|(row, n)| row.iter().map(|a| a * n).collect())
            .collect()
    }

    pub fn eval(&self, j: usize, x: f64) -> f64 {
        horner(&self.coeffs[j], x)
    }

    /// Values of `phi_0 .. phi_degree` at `x`.
    pub fn eval_all(&self, x: f64, out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(&self.coeffs) {
            *o = horner(row, x);
        }
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// `<f, g>` for polynomials given by coefficient rows, using raw moments.
pub fn moment_inner_product(moments: &[f64], f: &[f64], g: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (m, a) in f.iter().enumerate() {
        for (k, b) in g.iter().enumerate() {
            acc += a * b * moments[m + k];
        }
    }
    acc
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting and return
/// the solution along with the 1-norm reciprocal condition number of `A`.
fn solve_with_rcond(a: &[Vec<f64>], b: &[f64]) -> (Option<Vec<f64>>, f64) {
    let n = a.len();
    let mut lu: Vec<Vec<f64>> = a.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| lu[i][col].abs().total_cmp(&lu[j][col].abs()))
            .unwrap();
        if lu[pivot][col] == 0.0 || !lu[pivot][col].is_finite() {
            return (None, 0.0);
        }
        lu.swap(col, pivot);
        perm.swap(col, pivot);
        for row in col + 1..n {
            let factor = lu[row][col] / lu[col][col];
            lu[row][col] = factor;
            for k in col + 1..n {
                lu[row][k] -= factor * lu[col][k];
            }
        }
    }
    let solve = |rhs: &[f64]| -> Vec<f64> {
        let mut y: Vec<f64> = perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            for k in 0..i {
                y[i] -= lu[i][k] * y[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= lu[i][k] * y[k];
            }
            y[i] /= lu[i][i];
        }
        y
    };
    let norm_a = (0..n)
        .map(|c| a.iter().map(|row| row[c].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut norm_inv: f64 = 0.0;
    let mut unit = vec![0.0; n];
    for c in 0..n {
        unit.iter_mut().for_each(|u| *u = 0.0);
        unit[c] = 1.0;
        norm_inv = norm_inv.max(solve(&unit).iter().map(|v| v.abs()).sum());
    }
    let rcond = 1.0 / (norm_a * norm_inv);
    (Some(solve(b)), if rcond.is_finite() { rcond } else { 0.0 })
}

/// Orthonormal univariate polynomials of degree `0..=p` from raw moments.
///
/// Needs moments through order `2p`.
pub fn apc_univariate(moments: &MomentVector, p: usize) -> Result<UnivariateBasis> {
    let mu = &moments.moments;
    if mu.len() < 2 * p + 1 {
        return Err(Error::InsufficientData(format!(
            "order-{p} basis needs raw moments through order {}, got {}",
            2 * p,
            mu.len().saturating_sub(1)
        )));
    }
    let mut monic = Vec::with_capacity(p + 1);
    for j in 0..=p {
        let mut system = vec![vec![0.0; j + 1]; j + 1];
        for (m, row) in system.iter_mut().take(j).enumerate() {
            for (k, entry) in row.iter_mut().enumerate() {
                *entry = mu[m + k];
            }
        }
        system[j][j] = 1.0;
        let mut rhs = vec![0.0; j + 1];
        rhs[j] = 1.0;
        let (solution, rcond) = solve_with_rcond(&system, &rhs);
        match solution {
            Some(coeffs) if rcond >= RCOND_THRESHOLD => {
                let sq = moment_inner_product(mu, &coeffs, &coeffs);
                if !(sq > 0.0) || !sq.is_finite() {
                    return Err(Error::Conditioning { degree: j, rcond });
                }
                monic.push(coeffs)
            }
            _ => return Err(Error::Conditioning { degree: j, rcond }),
        }
    }

    if p >= REORTHOGONALIZE_FROM {
        gram_schmidt_pass(mu, &mut monic);
    }

    let mut coeffs = Vec::with_capacity(p + 1);
    let mut norms = Vec::with_capacity(p + 1);
    for (j, row) in monic.into_iter().enumerate() {
        let sq = moment_inner_product(mu, &row, &row);
        if !(sq > 0.0) || !sq.is_finite() {
            return Err(Error::Conditioning { degree: j, rcond: 0.0 });
        }
        let norm = sq.sqrt();
        coeffs.push(row.iter().map(|a| a / norm).collect());
        norms.push(norm);
    }
    Ok(UnivariateBasis { degree: p, coeffs, norms, normalized: true })
}

/// One modified Gram–Schmidt sweep under the moment inner product. Leading
/// coefficients are untouched because only lower-degree rows are subtracted.
fn gram_schmidt_pass(mu: &[f64], rows: &mut [Vec<f64>]) {
    let mut done: Vec<Vec<f64>> = Vec::with_capacity(rows.len());
    for row in rows.iter_mut() {
        for q in &done {
            let proj = moment_inner_product(mu, row, q);
            for (r, qc) in row.iter_mut().zip(q) {
                *r -= proj * qc;
            }
        }
        let norm = moment_inner_product(mu, row, row).sqrt();
        done.push(row.iter().map(|a| a / norm).collect());
    }
}

/// Total-degree multi-index set in graded order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiIndexSet {
    pub d: usize,
    pub p: usize,
    pub indices: Vec<Vec<u32>>,
}

impl MultiIndexSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// `C(d+p, p)`, or `None` when it does not fit in `usize`.
pub fn basis_size(d: usize, p: usize) -> Option<usize> {
    let mut r: u128 = 1;
    for i in 1..=p as u128 {
        r = r.checked_mul(d as u128 + i)? / i;
    }
    usize::try_from(r).ok()
}

pub fn multi_indices(d: usize, p: usize) -> Result<MultiIndexSet> {
    if d == 0 {
        return Err(Error::Shape("index set needs at least one dimension".into()));
    }
    let size = basis_size(d, p).ok_or(Error::Capacity { d, p })?;
    if size > u32::MAX as usize {
        return Err(Error::Capacity { d, p });
    }
    fn fill(total: u32, remaining: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            fill(total - first, remaining - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut indices = Vec::with_capacity(size);
    let mut prefix = Vec::with_capacity(d);
    for total in 0..=p as u32 {
        fill(total, d, &mut prefix, &mut indices);
    }
    Ok(MultiIndexSet { d, p, indices })
}

/// Tensor-product orthonormal basis `{Phi_i}` over `d` standardized inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthonormalBasis {
    pub univariate: Vec<UnivariateBasis>,
    pub index_set: MultiIndexSet,
    pub moment_sources: Vec<MomentSource>,
}

impl OrthonormalBasis {
    /// Build an order-`p` basis from one moment vector per dimension.
    pub fn new(moments: &[MomentVector], p: usize) -> Result<Self> {
        let univariate = moments
            .iter()
            .map(|m| apc_univariate(m, p))
            .collect::<Result<Vec<_>>>()?;
        let index_set = multi_indices(moments.len(), p)?;
        Ok(Self {
            univariate,
            index_set,
            moment_sources: moments.iter().map(|m| m.source).collect(),
        })
    }

    /// Empirical moments (through order `2p`) of each column of `xi`.
    pub fn from_samples(xi: ArrayView2<f64>, p: usize) -> Result<Self> {
        Self::new(&empirical_moment_set(xi, 2 * p)?, p)
    }

    pub fn analytic(families: &[Family], p: usize) -> Result<Self> {
        let moments = families
            .iter()
            .map(|&f| raw_moments_analytic(f, 2 * p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&moments, p)
    }

    pub fn dim(&self) -> usize {
        self.index_set.d
    }

    pub fn order(&self) -> usize {
        self.index_set.p
    }

    pub fn len(&self) -> usize {
        self.index_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index_set.is_empty()
    }

    /// Structural checks for a deserialized basis.
    pub fn validate(&self) -> Result<()> {
        let (d, p) = (self.index_set.d, self.index_set.p);
        if self.univariate.len() != d || self.moment_sources.len() != d {
            return Err(Error::Shape(format!(
                "basis declares {d} dimensions but carries {} univariate families",
                self.univariate.len()
            )));
        }
        for (k, u) in self.univariate.iter().enumerate() {
            let rows_ok = u.coeffs.len() == p + 1
                && u.norms.len() == p + 1
                && u.coeffs.iter().enumerate().all(|(j, r)| r.len() == j + 1);
            if u.degree != p || !rows_ok {
                return Err(Error::Shape(format!("univariate table {k} does not match order {p}")));
            }
        }
        if self.index_set != multi_indices(d, p)? {
            return Err(Error::Shape("index set is not the canonical graded order".into()));
        }
        Ok(())
    }

    fn fill_table(&self, xi: &[f64], table: &mut [f64]) -> Result<()> {
        let stride = self.order() + 1;
        for (k, (u, &x)) in self.univariate.iter().zip(xi).enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite(format!("input component {k} is {x}")));
            }
            u.eval_all(x, &mut table[k * stride..(k + 1) * stride]);
        }
        Ok(())
    }

    fn products(&self, table: &[f64], out: &mut [f64]) {
        let stride = self.order() + 1;
        for (o, index) in out.iter_mut().zip(&self.index_set.indices) {
            *o = index
                .iter()
                .enumerate()
                .map(|(k, &s)| table[k * stride + s as usize])
                .product();
        }
    }

    /// `(Phi_1(xi), ..., Phi_M(xi))`.
    pub fn eval(&self, xi: &[f64]) -> Result<Vec<f64>> {
        if xi.len() != self.dim() {
            return Err(Error::Shape(format!("input has {} components, basis expects {}", xi.len(), self.dim())));
        }
        let mut table = vec![0.0; self.dim() * (self.order() + 1)];
        self.fill_table(xi, &mut table)?;
        let mut out = vec![0.0; self.len()];
        self.products(&table, &mut out);
        Ok(out)
    }

    /// Row-wise evaluation: an `n x M` design matrix.
    pub fn eval_batch(&self, xi: ArrayView2<f64>) -> Result<Array2<f64>> {
        if xi.ncols() != self.dim() {
            return Err(Error::Shape(format!("input has {} columns, basis expects {}", xi.ncols(), self.dim())));
        }
        let mut out = Array2::zeros((xi.nrows(), self.len()));
        let table_len = self.dim() * (self.order() + 1);
        out.axis_iter_mut(Axis(0))
            .into_par_iter()
            .zip(xi.axis_iter(Axis(0)).into_par_iter())
            .try_for_each_init(
                || (vec![0.0; table_len], vec![0.0; self.dim()]),
                |(table, row_buf), (mut out_row, in_row)| -> Result<()> {
                    row_buf.iter_mut().zip(in_row).for_each(|(b, &v)| *b = v);
                    self.fill_table(row_buf, table)?;
                    self.products(table, out_row.as_slice_mut().expect("row-major"));
                    Ok(())
                },
            )?;
        Ok(out)
    }
}

/// Empirical raw moments through `max_order` for every column.
pub fn empirical_moment_set(xi: ArrayView2<f64>, max_order: usize) -> Result<Vec<MomentVector>> {
    xi.columns()
        .into_iter()
        .map(|c| {
            let mut m = raw_moments_empirical(&c.to_vec(), max_order)?;
            m.moments[0] = 1.0;
            Ok(m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rv::{sample, RandomVariableSpec, SampleKind};
    use proptest::prelude::*;

    fn assert_rows(actual: &[Vec<f64>], expected: &[&[f64]], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert_eq!(a.len(), e.len());
            for (x, y) in a.iter().zip(e.iter()) {
                assert!((x - y).abs() < tol, "{a:?} vs {e:?}");
            }
        }
    }

    // Gauss–Legendre nodes on [-1, 1], 5 points (exact to degree 9).
    const GL5: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_888_9),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];

    #[test]
    fn hermite_from_normal_moments() {
        let m = raw_moments_analytic(Family::Normal, 8).unwrap();
        let b = apc_univariate(&m, 4).unwrap();
        assert_rows(
            &b.monic_coeffs(),
            &[&[1.0], &[0.0, 1.0], &[-1.0, 0.0, 1.0], &[0.0, -3.0, 0.0, 1.0], &[3.0, 0.0, -6.0, 0.0, 1.0]],
            1e-10,
        );
        // squared norms of He_j are j!
        for (j, n) in b.norms.iter().enumerate() {
            let fact: f64 = (1..=j).map(|k| k as f64).product();
            assert!((n * n - fact).abs() < 1e-10);
        }
    }

    #[test]
    fn uniform_family_and_quadrature_orthogonality() {
        let m = raw_moments_analytic(Family::Uniform, 6).unwrap();
        let b = apc_univariate(&m, 3).unwrap();
        assert_rows(
            &b.monic_coeffs(),
            &[&[1.0], &[0.0, 1.0], &[-1.0, 0.0, 1.0], &[0.0, -1.8, 0.0, 1.0]],
            1e-10,
        );
        // <phi_j, phi_k> with density 1/(2 sqrt3) on [-sqrt3, sqrt3]
        let h = 3f64.sqrt();
        for j in 0..=3 {
            for k in 0..=3 {
                let ip: f64 = GL5
                    .iter()
                    .map(|&(t, w)| 0.5 * w * b.eval(j, h * t) * b.eval(k, h * t))
                    .sum();
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((ip - expected).abs() < 1e-12, "({j},{k}) -> {ip}");
            }
        }
    }

    #[test]
    fn degree_zero_is_constant_one() {
        let m = raw_moments_analytic(Family::Normal, 0).unwrap();
        let b = apc_univariate(&m, 0).unwrap();
        assert_eq!(b.coeffs, vec![vec![1.0]]);
    }

    #[test]
    fn analytic_bases_are_orthonormal_up_to_order_six() {
        for family in [Family::Normal, Family::Uniform] {
            let m = raw_moments_analytic(family, 12).unwrap();
            let b = apc_univariate(&m, 6).unwrap();
            for j in 0..=6 {
                for k in 0..=6 {
                    let ip = moment_inner_product(&m.moments, &b.coeffs[j], &b.coeffs[k]);
                    let expected = if j == k { 1.0 } else { 0.0 };
                    assert!((ip - expected).abs() < 1e-8, "{family} ({j},{k}) {ip}");
                }
            }
        }
    }

    #[test]
    fn high_order_reorthogonalization_keeps_monic_leading_terms() {
        let m = raw_moments_analytic(Family::Normal, 16).unwrap();
        let b = apc_univariate(&m, 8).unwrap();
        for (j, row) in b.monic_coeffs().iter().enumerate() {
            assert!((row[j] - 1.0).abs() < 1e-9, "degree {j}: {}", row[j]);
        }
        for j in 0..=8 {
            let ip = moment_inner_product(&m.moments, &b.coeffs[j], &b.coeffs[j]);
            assert!((ip - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn degenerate_moments_fail_with_degree() {
        // point mass at 0: every moment beyond order 0 vanishes
        let m = MomentVector { moments: vec![1.0, 0.0, 0.0, 0.0, 0.0], source: MomentSource::Analytic };
        match apc_univariate(&m, 2) {
            Err(Error::Conditioning { degree, .. }) => assert_eq!(degree, 1),
            other => panic!("expected conditioning error, got {other:?}"),
        }
    }

    #[test]
    fn tabulated_basis_sizes() {
        for (d, p, m) in [(9, 4, 715), (9, 5, 2002), (9, 6, 5005), (7, 2, 36), (6, 2, 28), (9, 2, 55), (1, 0, 1)] {
            assert_eq!(multi_indices(d, p).unwrap().len(), m, "d={d} p={p}");
        }
        assert_eq!(multi_indices(1, 0).unwrap().indices, vec![vec![0]]);
    }

    #[test]
    fn graded_order_for_two_dimensions() {
        let set = multi_indices(2, 2).unwrap();
        let expected: Vec<Vec<u32>> =
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]];
        assert_eq!(set.indices, expected);
    }

    #[test]
    fn capacity_overflow_is_reported() {
        assert!(matches!(multi_indices(1000, 400), Err(Error::Capacity { .. })));
    }

    fn count_recursive(d: usize, p: usize) -> usize {
        // tuples of length d with sum <= p
        if d == 0 {
            return 1;
        }
        (0..=p).map(|first| count_recursive(d - 1, p - first)).sum()
    }

    #[test]
    fn count_law_matches_enumeration() {
        for d in 1..=12 {
            for p in 0..=8 {
                let set = multi_indices(d, p).unwrap();
                assert_eq!(set.len(), count_recursive(d, p));
                assert_eq!(set.len(), basis_size(d, p).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn index_set_is_unique_graded_and_bounded(d in 1usize..6, p in 0usize..6) {
            let set = multi_indices(d, p).unwrap();
            prop_assert!(set.indices[0].iter().all(|&s| s == 0));
            let mut seen = std::collections::HashSet::new();
            let mut last_degree = 0;
            for idx in &set.indices {
                let deg: u32 = idx.iter().sum();
                prop_assert!(deg as usize <= p);
                prop_assert!(deg >= last_degree);
                last_degree = deg;
                prop_assert!(seen.insert(idx.clone()));
            }
        }
    }

    #[test]
    fn eval_at_origin_and_product_structure() {
        let basis = OrthonormalBasis::analytic(&[Family::Normal, Family::Normal], 2).unwrap();
        let at_zero = basis.eval(&[0.0, 0.0]).unwrap();
        assert_eq!(at_zero[0], 1.0);
        assert_eq!(at_zero[1], 0.0);
        assert_eq!(at_zero[2], 0.0);
        // (2,0) normalized He2 at 0 = -1/sqrt2
        assert!((at_zero[3] + 1.0 / 2f64.sqrt()).abs() < 1e-15);

        let x = [0.7, -1.3];
        let phi = basis.eval(&x).unwrap();
        let u = &basis.univariate;
        assert!((phi[4] - u[0].eval(1, x[0]) * u[1].eval(1, x[1])).abs() < 1e-15);
        assert!(basis.eval(&[f64::NAN, 0.0]).is_err());
        assert!(basis.eval(&[0.0]).is_err());
    }

    #[test]
    fn batch_matches_pointwise() {
        let basis = OrthonormalBasis::analytic(&[Family::Normal, Family::Uniform, Family::Normal], 3).unwrap();
        let xi = sample(
            &[
                RandomVariableSpec::normal("a", 0.0, 1.0),
                RandomVariableSpec::uniform("b", 0.0, 1.0),
                RandomVariableSpec::normal("c", 0.0, 1.0),
            ],
            17,
            SampleKind::Mc,
            3,
        )
        .unwrap()
        .data;
        let batch = basis.eval_batch(xi.view()).unwrap();
        for (r, row) in xi.rows().into_iter().enumerate() {
            assert_eq!(batch.row(r).to_vec(), basis.eval(&row.to_vec()).unwrap());
        }
    }

    fn assert_mc_gram(specs: &[RandomVariableSpec], max_p: usize) {
        let xi = sample(specs, 200_000, SampleKind::Mc, 8).unwrap().data;
        for p in 1..=max_p {
            let basis = OrthonormalBasis::from_samples(xi.view(), p).unwrap();
            let phi = basis.eval_batch(xi.view()).unwrap();
            let gram = phi.t().dot(&phi) / xi.nrows() as f64;
            for ((i, j), g) in gram.indexed_iter() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((g - expected).abs() < 0.05, "p={p} ({i},{j}) {g}");
            }
        }
    }

    #[test]
    fn monte_carlo_gram_is_identity() {
        assert_mc_gram(
            &[
                RandomVariableSpec::normal("a", 3.0, 0.2),
                RandomVariableSpec::uniform("b", 1.0, 2.0),
                RandomVariableSpec::normal("c", -1.0, 4.0),
            ],
            4,
        );
        // Gumbel tails make the higher-degree cross products too noisy at this n
        assert_mc_gram(
            &[RandomVariableSpec::normal("a", 3.0, 0.2), RandomVariableSpec::gumbel("p", 12.0, 1.2)],
            2,
        );
    }

    #[test]
    fn serde_round_trip_validates() {
        let basis = OrthonormalBasis::analytic(&[Family::Normal, Family::Uniform], 3).unwrap();
        let json = serde_json::to_string(&basis).unwrap();
        let back: OrthonormalBasis = serde_json::from_str(&json).unwrap();
        back.validate().unwrap();
        assert_eq!(back, basis);
        let mut broken = back.clone();
        broken.univariate.pop();
        assert!(broken.validate().is_err());
    }
}
