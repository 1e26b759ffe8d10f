//! Lattice constructions: generator matrices, dual bases and point sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::diophantine::Alpha;
use crate::error::{LatticeError, Result};
use crate::matrix::{self, QMat};

/// Default cap on the number of candidate integer vectors inspected while
/// enumerating a Frolov or general-matrix point set.
pub const DEFAULT_ENUM_CAP: u64 = 20_000_000;

/// Description of a lattice rule from which generator and dual bases derive.
#[derive(Clone, Debug)]
pub enum LatticeSpec {
    /// Points `(n/N, {n a_1}, ..., {n a_{d-1}})`.
    Kronecker { n: u64, alpha: Vec<Alpha> },
    /// Kronecker lattice with `alpha = g/N`; all arithmetic is exact.
    Rank1 { n: u64, g: Vec<u64> },
    /// Shrunk inverse-transpose Vandermonde lattice of the roots of
    /// `p_d(x) = -1 + prod_j (x - 2j + 1)`.
    Frolov { d: usize, a: f64 },
    /// Arbitrary invertible generator matrix.
    GeneralMatrix { t: QMat },
}

impl LatticeSpec {
    pub fn kronecker(n: u64, alpha: Vec<Alpha>) -> Result<LatticeSpec> {
        if n == 0 {
            return Err(LatticeError::invalid("N must be positive"));
        }
        if alpha.is_empty() {
            return Err(LatticeError::invalid("Kronecker layout requires d >= 2"));
        }
        Ok(LatticeSpec::Kronecker { n, alpha })
    }

    /// Rank-1 spec with components reduced mod N. Components that reduce to 0
    /// are allowed; they degenerate that coordinate and are reported by
    /// [`LatticeSpec::degenerate_coords`].
    pub fn rank1(n: u64, g: &[i64]) -> Result<LatticeSpec> {
        if n == 0 {
            return Err(LatticeError::invalid("N must be positive"));
        }
        if g.is_empty() {
            return Err(LatticeError::invalid("rank-1 layout requires d >= 2"));
        }
        let reduced = g.iter().map(|&gj| gj.rem_euclid(n as i64) as u64).collect();
        Ok(LatticeSpec::Rank1 { n, g: reduced })
    }

    pub fn frolov(d: usize, a: f64) -> Result<LatticeSpec> {
        if d == 0 {
            return Err(LatticeError::invalid("dimension must be >= 1"));
        }
        if !(a > 1.0) || !a.is_finite() {
            return Err(LatticeError::invalid("shrinking factor must satisfy a > 1"));
        }
        Ok(LatticeSpec::Frolov { d, a })
    }

    pub fn general(rows: Vec<Vec<f64>>) -> Result<LatticeSpec> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(LatticeError::invalid("generator matrix must be square"));
        }
        let t: QMat = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        BigRational::from_float(v)
                            .ok_or_else(|| LatticeError::invalid("non-finite matrix entry"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if matrix::determinant(&t).is_zero() {
            return Err(LatticeError::invalid("generator matrix is singular"));
        }
        Ok(LatticeSpec::GeneralMatrix { t })
    }

    pub fn dim(&self) -> usize {
        match self {
            LatticeSpec::Kronecker { alpha, .. } => alpha.len() + 1,
            LatticeSpec::Rank1 { g, .. } => g.len() + 1,
            LatticeSpec::Frolov { d, .. } => *d,
            LatticeSpec::GeneralMatrix { t } => t.len(),
        }
    }

    /// True when all stored data are the exact numbers (no 96-bit approximants).
    pub fn is_exact(&self) -> bool {
        match self {
            LatticeSpec::Kronecker { alpha, .. } => alpha.iter().all(Alpha::is_exact),
            LatticeSpec::Rank1 { .. } => true,
            LatticeSpec::Frolov { .. } => false,
            LatticeSpec::GeneralMatrix { .. } => true,
        }
    }

    /// Indices j with g_j = 0 mod N (the point set degenerates in coordinate j+1).
    pub fn degenerate_coords(&self) -> Vec<usize> {
        match self {
            LatticeSpec::Rank1 { g, .. } => g
                .iter()
                .enumerate()
                .filter(|(_, &gj)| gj == 0)
                .map(|(j, _)| j)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Per-component `gcd(g_j, N)` for rank-1 specs.
    pub fn rank1_gcds(&self) -> Option<Vec<u64>> {
        match self {
            LatticeSpec::Rank1 { n, g } => Some(
                g.iter()
                    .map(|&gj| if gj == 0 { *n } else { gj.gcd(n) })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// The Kronecker generator vector as exact rationals, when applicable.
    pub fn alpha_rationals(&self) -> Option<Vec<BigRational>> {
        match self {
            LatticeSpec::Kronecker { alpha, .. } => {
                Some(alpha.iter().map(Alpha::to_rational).collect())
            }
            LatticeSpec::Rank1 { n, g } => Some(
                g.iter()
                    .map(|&gj| BigRational::new(BigInt::from(gj), BigInt::from(*n)))
                    .collect(),
            ),
            _ => None,
        }
    }
}

/// A generator matrix `T`; entries are exact rationals (96-bit dyadic
/// approximants for irrational data, flagged by `exact = false`).
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    pub rows: QMat,
    pub exact: bool,
}

impl GeneratorMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn det(&self) -> BigRational {
        matrix::determinant(&self.rows)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        matrix::to_f64(&self.rows)
    }
}

/// The dual basis `B = (T^t)^{-1}`.
#[derive(Clone, Debug)]
pub struct DualBasis {
    pub rows: QMat,
    pub exact: bool,
}

impl DualBasis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Kronecker layout: first row `(0, ..., 0, 1/N)`, identity subdiagonal,
/// last column `(1/N, a_1, ..., a_{d-1})`.
pub fn kronecker_matrix(n: u64, alpha: &[Alpha]) -> Result<GeneratorMatrix> {
    if n == 0 {
        return Err(LatticeError::invalid("N must be positive"));
    }
    if alpha.is_empty() {
        return Err(LatticeError::invalid("Kronecker layout requires d >= 2"));
    }
    let d = alpha.len() + 1;
    let mut rows = vec![vec![BigRational::zero(); d]; d];
    rows[0][d - 1] = BigRational::new(BigInt::one(), BigInt::from(n));
    for i in 1..d {
        rows[i][i - 1] = BigRational::one();
        rows[i][d - 1] = alpha[i - 1].to_rational();
    }
    Ok(GeneratorMatrix {
        rows,
        exact: alpha.iter().all(Alpha::is_exact),
    })
}

/// Rank-1 layout: Kronecker matrix with `alpha = g/N`, exact end to end.
pub fn rank1_matrix(n: u64, g: &[u64]) -> Result<GeneratorMatrix> {
    if n == 0 {
        return Err(LatticeError::invalid("N must be positive"));
    }
    let alpha: Vec<Alpha> = g
        .iter()
        .map(|&gj| Alpha::Rational(BigRational::new(BigInt::from(gj % n), BigInt::from(n))))
        .collect();
    kronecker_matrix(n, &alpha)
}

pub fn dual_basis(t: &GeneratorMatrix) -> Result<DualBasis> {
    if t.det().is_zero() {
        return Err(LatticeError::invalid("generator matrix is singular"));
    }
    let rows = matrix::inverse(&matrix::transpose(&t.rows))?;
    Ok(DualBasis {
        rows,
        exact: t.exact,
    })
}

/// Integer coefficients of `p_d(x) = -1 + prod_{j=1}^d (x - 2j + 1)`,
/// lowest degree first.
pub fn frolov_polynomial(d: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    for j in 1..=d {
        let root = BigInt::from(2 * j as i64 - 1);
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &root;
        }
        coeffs = next;
    }
    coeffs[0] -= 1;
    coeffs
}

fn poly_eval(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// The `d` real roots of `p_d`, ascending, certified to within `2^-100`.
///
/// Roots are isolated by sign changes on the integer grid `[-1, 2d]` (they
/// interlace near the odd integers) and refined by bisection.
pub fn frolov_roots(d: usize) -> Result<Vec<BigRational>> {
    let coeffs = frolov_polynomial(d);
    let mut roots: Vec<BigRational> = Vec::with_capacity(d);
    let grid: Vec<BigRational> = (-1..=2 * d as i64)
        .map(|x| BigRational::from_integer(x.into()))
        .collect();
    let vals: Vec<BigRational> = grid.iter().map(|x| poly_eval(&coeffs, x)).collect();
    for i in 0..grid.len() {
        if vals[i].is_zero() {
            roots.push(grid[i].clone());
            continue;
        }
        if i + 1 < grid.len()
            && !vals[i + 1].is_zero()
            && vals[i].is_negative() != vals[i + 1].is_negative()
        {
            let (mut lo, mut hi) = (grid[i].clone(), grid[i + 1].clone());
            let neg_at_lo = vals[i].is_negative();
            for _ in 0..104 {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                let v = poly_eval(&coeffs, &mid);
                if v.is_zero() {
                    lo = mid.clone();
                    hi = mid;
                    break;
                }
                if v.is_negative() == neg_at_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push((&lo + &hi) / BigRational::from_integer(2.into()));
        }
    }
    if roots.len() != d {
        return Err(LatticeError::Internal(format!(
            "expected {d} real roots of p_{d}, isolated {}",
            roots.len()
        )));
    }
    Ok(roots)
}

/// Frolov generator `T = (1/a) (B^t)^{-1}` with `B` the Vandermonde matrix of
/// the roots of `p_d`.
pub fn frolov_matrix(d: usize, a: f64) -> Result<GeneratorMatrix> {
    if d == 0 {
        return Err(LatticeError::invalid("dimension must be >= 1"));
    }
    if !(a > 1.0) || !a.is_finite() {
        return Err(LatticeError::invalid("shrinking factor must satisfy a > 1"));
    }
    let roots = frolov_roots(d)?;
    let vandermonde: QMat = roots
        .iter()
        .map(|xi| {
            let mut row = Vec::with_capacity(d);
            let mut pow = BigRational::one();
            for _ in 0..d {
                row.push(pow.clone());
                pow *= xi;
            }
            row
        })
        .collect();
    let a_q = BigRational::from_float(a).expect("finite");
    let inv_bt = matrix::inverse(&matrix::transpose(&vandermonde))?;
    let rows: QMat = inv_bt
        .iter()
        .map(|row| row.iter().map(|e| e / &a_q).collect())
        .collect();
    Ok(GeneratorMatrix { rows, exact: false })
}

pub fn generator_matrix(spec: &LatticeSpec) -> Result<GeneratorMatrix> {
    match spec {
        LatticeSpec::Kronecker { n, alpha } => kronecker_matrix(*n, alpha),
        LatticeSpec::Rank1 { n, g } => rank1_matrix(*n, g),
        LatticeSpec::Frolov { d, a } => frolov_matrix(*d, *a),
        LatticeSpec::GeneralMatrix { t } => Ok(GeneratorMatrix {
            rows: t.clone(),
            exact: true,
        }),
    }
}

/// The lattice points inside `[0,1)^d` together with the rule weight `|det T|`.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub points: Vec<Vec<BigRational>>,
    pub weight: BigRational,
    pub exact: bool,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points_f64(&self) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .map(|p| p.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// CSV with header `x1,...,xd` and 17 significant digits per coordinate.
    pub fn to_csv(&self) -> String {
        let d = self.points.first().map_or(0, Vec::len);
        let mut out = String::new();
        let header: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for p in &self.points {
            let row: Vec<String> = p
                .iter()
                .map(|c| format!("{:.16e}", c.to_f64().unwrap_or(f64::NAN)))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// All lattice points of `spec` inside the half-open unit cube.
pub fn enumerate_points(spec: &LatticeSpec) -> Result<PointSet> {
    enumerate_points_with_cap(spec, DEFAULT_ENUM_CAP)
}

pub fn enumerate_points_with_cap(spec: &LatticeSpec, cap: u64) -> Result<PointSet> {
    match spec {
        LatticeSpec::Kronecker { n, alpha } => {
            let alphas: Vec<BigRational> = alpha.iter().map(Alpha::to_rational).collect();
            Ok(kronecker_points(*n, &alphas, spec.is_exact()))
        }
        LatticeSpec::Rank1 { n, g } => {
            let alphas: Vec<BigRational> = g
                .iter()
                .map(|&gj| BigRational::new(BigInt::from(gj), BigInt::from(*n)))
                .collect();
            Ok(kronecker_points(*n, &alphas, true))
        }
        LatticeSpec::Frolov { .. } | LatticeSpec::GeneralMatrix { .. } => {
            let t = generator_matrix(spec)?;
            enumerate_box(&t, cap)
        }
    }
}

fn kronecker_points(n: u64, alphas: &[BigRational], exact: bool) -> PointSet {
    let n_q = BigRational::from_integer(BigInt::from(n));
    let points = (0..n)
        .map(|i| {
            let mut p = Vec::with_capacity(alphas.len() + 1);
            p.push(BigRational::new(BigInt::from(i), BigInt::from(n)));
            for a in alphas {
                let v = a * BigRational::from_integer(BigInt::from(i));
                p.push(&v - v.floor());
            }
            p
        })
        .collect();
    PointSet {
        points,
        weight: n_q.recip(),
        exact,
    }
}

/// Enumerate `T l` over the integer bounding box of `T^{-1}([0,1]^d)` and keep
/// the points inside `[0,1)^d`. Exact rational membership tests, so boundary
/// points with a coordinate equal to 1 are excluded.
fn enumerate_box(t: &GeneratorMatrix, cap: u64) -> Result<PointSet> {
    let d = t.dim();
    let det = t.det();
    if det.is_zero() {
        return Err(LatticeError::invalid("generator matrix is singular"));
    }
    let t_inv = matrix::inverse(&t.rows)?;
    // Coordinate ranges of T^{-1}([0,1]^d): sum negative entries for the
    // minimum corner, positive entries for the maximum.
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for row in &t_inv {
        let mut mn = BigRational::zero();
        let mut mx = BigRational::zero();
        for e in row {
            if e.is_negative() {
                mn += e;
            } else {
                mx += e;
            }
        }
        lo.push(mn.floor().to_integer());
        hi.push(mx.ceil().to_integer());
    }
    let mut total: u128 = 1;
    for (l, h) in lo.iter().zip(&hi) {
        let width = (h - l + BigInt::one())
            .to_u128()
            .ok_or_else(|| LatticeError::Internal("enumeration box width overflow".into()))?;
        total = total.saturating_mul(width);
    }
    if total > cap as u128 {
        return Err(LatticeError::ResourceLimit {
            what: "Frolov/general point enumeration".into(),
            required: total,
            cap: cap as u128,
        });
    }

    let one = BigRational::one();
    let first_lo = lo[0].to_i64().unwrap();
    let first_hi = hi[0].to_i64().unwrap();
    let mut points: Vec<Vec<BigRational>> = (first_lo..=first_hi)
        .into_par_iter()
        .map(|l0| {
            let mut local = Vec::new();
            let mut ell: Vec<BigInt> = vec![BigInt::zero(); d];
            ell[0] = BigInt::from(l0);
            collect_points(&t.rows, &lo, &hi, 1, &mut ell, &one, &mut local);
            local
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    points.sort();
    Ok(PointSet {
        points,
        weight: matrix::abs(&det),
        exact: t.exact,
    })
}

fn collect_points(
    rows: &QMat,
    lo: &[BigInt],
    hi: &[BigInt],
    depth: usize,
    ell: &mut Vec<BigInt>,
    one: &BigRational,
    out: &mut Vec<Vec<BigRational>>,
) {
    if depth == lo.len() {
        let x = matrix::mat_vec_int(rows, ell);
        if x.iter().all(|c| !c.is_negative() && c < one) {
            out.push(x);
        }
        return;
    }
    let mut v = lo[depth].clone();
    while v <= hi[depth] {
        ell[depth] = v.clone();
        collect_points(rows, lo, hi, depth + 1, ell, one, out);
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed::Fixed;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn kronecker_layout_matches_display() {
        // N=4, alpha=(1/3): T = [[0, 1/4], [1, 1/3]]
        let t = kronecker_matrix(4, &[Alpha::from_ratio(1, 3).unwrap()]).unwrap();
        assert_eq!(t.rows, vec![vec![q(0, 1), q(1, 4)], vec![q(1, 1), q(1, 3)]]);
        assert_eq!(t.det(), q(-1, 4));
    }

    #[test]
    fn degenerate_dimension_rejected() {
        assert!(kronecker_matrix(1, &[]).is_err());
        assert!(LatticeSpec::rank1(4, &[]).is_err());
        assert!(kronecker_matrix(0, &[Alpha::from_ratio(1, 3).unwrap()]).is_err());
    }

    #[test]
    fn kronecker_det_d3() {
        // N=5, alpha=(phi, sqrt2): |det| = 1/5
        let alpha = vec![
            Alpha::Real(Fixed::golden()),
            Alpha::Real(Fixed::sqrt_u64(2)),
        ];
        let t = kronecker_matrix(5, &alpha).unwrap();
        assert_eq!(matrix::abs(&t.det()), q(1, 5));
        assert!(!t.exact);
    }

    #[test]
    fn rank1_layout_and_reduction() {
        let t = rank1_matrix(5, &[3]).unwrap();
        assert_eq!(t.rows, vec![vec![q(0, 1), q(1, 5)], vec![q(1, 1), q(3, 5)]]);
        // g = 8 reduces to 3 mod 5
        let spec = LatticeSpec::rank1(5, &[8]).unwrap();
        let LatticeSpec::Rank1 { g, .. } = &spec else {
            panic!()
        };
        assert_eq!(g, &vec![3]);
        // d = 3 determinant
        let t3 = rank1_matrix(7, &[2, 3]).unwrap();
        assert_eq!(matrix::abs(&t3.det()), q(1, 7));
    }

    #[test]
    fn rank1_zero_component_warns_not_errors() {
        let spec = LatticeSpec::rank1(5, &[5]).unwrap();
        assert_eq!(spec.degenerate_coords(), vec![0]);
        assert_eq!(spec.rank1_gcds().unwrap(), vec![5]);
    }

    #[test]
    fn dual_matches_display() {
        // B for N=4, alpha = 1/3: [[-4/3, 4], [1, 0]]
        let t = kronecker_matrix(4, &[Alpha::from_ratio(1, 3).unwrap()]).unwrap();
        let b = dual_basis(&t).unwrap();
        assert_eq!(
            b.rows,
            vec![vec![q(-4, 3), q(4, 1)], vec![q(1, 1), q(0, 1)]]
        );
        // identity is self-dual
        let id = GeneratorMatrix {
            rows: matrix::identity(3),
            exact: true,
        };
        assert_eq!(dual_basis(&id).unwrap().rows, matrix::identity(3));
    }

    #[test]
    fn dual_defining_property() {
        let t = rank1_matrix(7, &[2, 3]).unwrap();
        let b = dual_basis(&t).unwrap();
        let prod = matrix::mat_vec(&matrix::transpose(&b.rows), &t.rows[0]);
        // B^t T = I, column by column
        let bt = matrix::transpose(&b.rows);
        for col in 0..3 {
            let t_col: Vec<BigRational> = (0..3).map(|r| t.rows[r][col].clone()).collect();
            let e = matrix::mat_vec(&bt, &t_col);
            for (i, v) in e.iter().enumerate() {
                assert_eq!(*v, if i == col { q(1, 1) } else { q(0, 1) });
            }
        }
        let _ = prod;
    }

    #[test]
    fn frolov_polynomial_small() {
        // p_1 = x - 2, p_2 = x^2 - 4x + 2
        assert_eq!(
            frolov_polynomial(1),
            vec![BigInt::from(-2), BigInt::from(1)]
        );
        assert_eq!(
            frolov_polynomial(2),
            vec![BigInt::from(2), BigInt::from(-4), BigInt::from(1)]
        );
    }

    #[test]
    fn frolov_roots_d1_d2() {
        let r1 = frolov_roots(1).unwrap();
        assert_eq!(r1, vec![BigRational::from_integer(2.into())]);
        let r2 = frolov_roots(2).unwrap();
        let sqrt2 = std::f64::consts::SQRT_2;
        assert!((r2[0].to_f64().unwrap() - (2.0 - sqrt2)).abs() < 1e-14);
        assert!((r2[1].to_f64().unwrap() - (2.0 + sqrt2)).abs() < 1e-14);
        // certified precision: polynomial residual below 2^-95 at each root
        let coeffs = frolov_polynomial(2);
        let eps = BigRational::new(BigInt::one(), BigInt::one() << 95);
        for r in &r2 {
            let resid = poly_eval(&coeffs, r);
            assert!(matrix::abs(&resid) < eps, "residual {resid}");
        }
        // d=1, a=2: T = (1/2)
        let t = frolov_matrix(1, 2.0).unwrap();
        assert_eq!(t.rows, vec![vec![q(1, 2)]]);
    }

    #[test]
    fn frolov_p3_irreducible_over_rationals() {
        // rational-root test: no divisor of the constant term is a root
        let coeffs = frolov_polynomial(3);
        let c0 = coeffs[0].clone();
        assert_eq!(c0, BigInt::from(-16));
        let mut divs = Vec::new();
        let mut k = BigInt::one();
        while &k * &k <= c0.abs() {
            if (c0.clone() % &k).is_zero() {
                divs.push(k.clone());
                divs.push(c0.abs() / &k);
            }
            k += 1;
        }
        for divisor in divs {
            for sign in [1i64, -1] {
                let cand = BigRational::from_integer(&divisor * BigInt::from(sign));
                assert!(
                    !poly_eval(&coeffs, &cand).is_zero(),
                    "rational root {cand} found"
                );
            }
        }
    }

    #[test]
    fn frolov_det_b_d2() {
        // det of the Vandermonde for d=2 is xi2 - xi1 = 2 sqrt 2
        let t = frolov_matrix(2, 1.5).unwrap();
        let det_t_inv = matrix::abs(&t.det()).recip();
        let expect = 1.5 * 1.5 * 2.0 * std::f64::consts::SQRT_2;
        assert!((det_t_inv.to_f64().unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn rank1_point_set_diagonal() {
        let spec = LatticeSpec::rank1(4, &[1]).unwrap();
        let ps = enumerate_points(&spec).unwrap();
        let expect: Vec<Vec<BigRational>> = (0..4).map(|i| vec![q(i, 4), q(i, 4)]).collect();
        assert_eq!(ps.points, expect);
        assert_eq!(ps.weight, q(1, 4));
    }

    #[test]
    fn kronecker_rational_equals_rank1() {
        let k = LatticeSpec::kronecker(5, vec![Alpha::from_ratio(3, 5).unwrap()]).unwrap();
        let r = LatticeSpec::rank1(5, &[3]).unwrap();
        assert_eq!(
            enumerate_points(&k).unwrap().points,
            enumerate_points(&r).unwrap().points
        );
    }

    #[test]
    fn frolov_count_close_to_determinant() {
        let spec = LatticeSpec::frolov(2, 8.0).unwrap();
        let ps = enumerate_points(&spec).unwrap();
        let det_inv = 8.0 * 8.0 * 2.0 * std::f64::consts::SQRT_2;
        let ratio = ps.len() as f64 / det_inv;
        assert!((ratio - 1.0).abs() < 0.25, "ratio {ratio}");
        // every coordinate in [0,1)
        for p in &ps.points {
            for c in p {
                assert!(!c.is_negative() && c < &BigRational::one());
            }
        }
    }

    #[test]
    fn enumeration_cap_reports_budget() {
        let spec = LatticeSpec::frolov(2, 64.0).unwrap();
        match enumerate_points_with_cap(&spec, 100) {
            Err(LatticeError::ResourceLimit { required, cap, .. }) => {
                assert!(required > 100);
                assert_eq!(cap, 100);
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn duality_inner_products_are_integers() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let specs = vec![
            LatticeSpec::rank1(12, &[5, 7]).unwrap(),
            LatticeSpec::kronecker(6, vec![Alpha::Real(Fixed::golden())]).unwrap(),
            LatticeSpec::frolov(2, 3.0).unwrap(),
        ];
        for spec in specs {
            let t = generator_matrix(&spec).unwrap();
            let b = dual_basis(&t).unwrap();
            let d = t.dim();
            for _ in 0..40 {
                let k: Vec<BigInt> = (0..d)
                    .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
                    .collect();
                let l: Vec<BigInt> = (0..d)
                    .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
                    .collect();
                let z = matrix::mat_vec_int(&b.rows, &k);
                let x = matrix::mat_vec_int(&t.rows, &l);
                let ip: BigRational = z.iter().zip(&x).map(|(a, b)| a * b).sum();
                assert!(ip.is_integer(), "<z,x> = {ip} not an integer");
            }
        }
    }
}
