//! Square-volumes of k-simplices.
//!
//! Two routes are provided and cross-checked:
//!
//! * **Cayley–Menger** (Heron's formula generalized): only the pairwise
//!   square distances `g(xᵢ, xⱼ)` are used. The `(k+1)×(k+1)` table is
//!   bordered by a `(0, 1, …, 1)` row and column; the square volume is
//!   `det(C) / (−(−2)ᵏ · (k!)²)`. Row and column 0 hold the border.
//! * **Gram**: with `Y` the `n×k` matrix of columns `xᵢ − x₀` and a symmetric
//!   metric `G`, the square volume is `det(YᵀGY) / (k!)²`.
//!
//! For a metric `G = HᵀH`, the metric square volume equals the standard
//! Cayley–Menger square volume of the simplex mapped through `H`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact_linalg::{det_exact, LinalgError, Matrix, RationalMatrix, Ring};
use crate::exec::Execution;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VolumeError {
    #[error("invalid square-distance data: {0}")]
    InvalidDistanceData(String),
    #[error("a simplex needs at least one vertex for this operation")]
    EmptySimplex,
    #[error("vertices have different dimensions")]
    RaggedPoints,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("metric matrix is not symmetric")]
    NotSymmetric,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Ordered `(k+1)`-tuple of points in ℚⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    points: Vec<Vec<Rational>>,
}

impl Simplex {
    pub fn new(points: Vec<Vec<Rational>>) -> Result<Self, VolumeError> {
        let Some(first) = points.first() else {
            return Err(VolumeError::EmptySimplex);
        };
        let n = first.len();
        if points.iter().any(|p| p.len() != n) {
            return Err(VolumeError::RaggedPoints);
        }
        Ok(Simplex { points })
    }

    pub fn from_integers<R: AsRef<[i64]>>(points: &[R]) -> Result<Self, VolumeError> {
        Simplex::new(
            points
                .iter()
                .map(|p| p.as_ref().iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// `k`, one less than the number of vertices.
    pub fn dim_k(&self) -> usize {
        self.points.len() - 1
    }

    /// `n`, the length of each point.
    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// Vertex `i` of the result is vertex `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Simplex {
        Simplex {
            points: perm.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// Image under the linear map `h` (`x ↦ h·x`).
    pub fn transformed(&self, h: &RationalMatrix) -> Result<Simplex, VolumeError> {
        let n = self.ambient_dim();
        if h.cols() != n {
            return Err(VolumeError::DimensionMismatch(format!(
                "{}x{} map applied to points of length {n}",
                h.rows(),
                h.cols()
            )));
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                (0..h.rows())
                    .map(|i| {
                        h.row(i)
                            .iter()
                            .zip(p)
                            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                    })
                    .collect()
            })
            .collect();
        Ok(Simplex { points })
    }

    pub fn scaled(&self, factor: &Rational) -> Simplex {
        Simplex {
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(|v| v * factor).collect())
                .collect(),
        }
    }
}

/// Symmetric table of pairwise square distances with zero diagonal.
///
/// Entries need not be realizable as Euclidean distances; square volumes of
/// non-realizable data may come out negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareDistanceData {
    table: RationalMatrix,
}

impl SquareDistanceData {
    pub fn new(table: RationalMatrix) -> Result<Self, VolumeError> {
        if !table.is_square() || table.rows() == 0 {
            return Err(VolumeError::InvalidDistanceData(format!(
                "table must be square and non-empty, got {}x{}",
                table.rows(),
                table.cols()
            )));
        }
        for i in 0..table.rows() {
            if !table.get(i, i).is_zero() {
                return Err(VolumeError::InvalidDistanceData(format!(
                    "diagonal entry {i} is {}",
                    table.get(i, i)
                )));
            }
            for j in i + 1..table.cols() {
                if table.get(i, j) != table.get(j, i) {
                    return Err(VolumeError::InvalidDistanceData(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(SquareDistanceData { table })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, VolumeError> {
        let table = Matrix::from_rows(rows)
            .map_err(|e| VolumeError::InvalidDistanceData(e.to_string()))?;
        SquareDistanceData::new(table)
    }

    pub fn dim_k(&self) -> usize {
        self.table.rows() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.table.get(i, j)
    }

    pub fn table(&self) -> &RationalMatrix {
        &self.table
    }

    /// Relabels vertices: entry `(i, j)` of the result is `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> SquareDistanceData {
        let n = self.table.rows();
        SquareDistanceData {
            table: Matrix::from_fn(n, n, |i, j| self.table.get(perm[i], perm[j]).clone()),
        }
    }
}

/// The bordered `(k+2)×(k+2)` Cayley–Menger matrix of a `k`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyMengerMatrix {
    matrix: RationalMatrix,
}

impl CayleyMengerMatrix {
    pub fn dim_k(&self) -> usize {
        self.matrix.rows() - 2
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RationalMatrix {
        self.matrix
    }
}

/// Borders a square table with a `(0, 1, …, 1)` first row and column. Works
/// over any ring, so the same construction serves rational, symbolic and
/// jet-valued distance tables.
pub fn bordered_cayley_menger<T: Ring>(table: &Matrix<T>, unit: &T) -> Matrix<T> {
    let size = table.rows() + 1;
    let zero = unit.zero_like();
    let one = unit.one_like();
    Matrix::from_fn(size, size, |i, j| match (i, j) {
        (0, 0) => zero.clone(),
        (0, _) | (_, 0) => one.clone(),
        _ => table.get(i - 1, j - 1).clone(),
    })
}

/// Squared area of a triangle from its squared side lengths.
pub fn heron_triangle(a2: &Rational, b2: &Rational, c2: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    let sum_sq = a2 * a2 + b2 * b2 + c2 * c2;
    let cross = &two * (a2 * b2 + a2 * c2 + b2 * c2);
    -(sum_sq - cross) / Rational::from_integer(16.into())
}

pub fn cm_matrix(d: &SquareDistanceData) -> CayleyMengerMatrix {
    CayleyMengerMatrix {
        matrix: bordered_cayley_menger(&d.table, &Rational::one()),
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `−(−2)ᵏ`, the constant relating the Cayley–Menger and Gram determinants.
pub fn cm_normalizer(k: usize) -> Rational {
    let pow = num_traits::pow(BigInt::from(-2), k);
    Rational::from_integer(-pow)
}

/// `1 / (−(−2)ᵏ · (k!)²)`: 1/2, −1/16, 1/288 for k = 1, 2, 3.
pub fn cm_factor(k: usize) -> Rational {
    let f = factorial(k);
    (cm_normalizer(k) * Rational::from_integer(&f * &f)).recip()
}

pub fn vol2_cm(d: &SquareDistanceData) -> Rational {
    let det = det_exact(cm_matrix(d).matrix()).expect("Cayley-Menger matrix is square");
    cm_factor(d.dim_k()) * det
}

/// `n×k` matrix whose column `j` is `x_{j+1} − x₀`.
pub fn difference_matrix(s: &Simplex) -> Result<RationalMatrix, VolumeError> {
    let k = s.dim_k();
    if k == 0 {
        return Err(VolumeError::EmptySimplex);
    }
    let x0 = &s.points[0];
    Ok(Matrix::from_fn(s.ambient_dim(), k, |i, j| {
        &s.points[j + 1][i] - &x0[i]
    }))
}

fn check_metric(s: &Simplex, g: &RationalMatrix) -> Result<(), VolumeError> {
    let n = s.ambient_dim();
    if g.rows() != n || g.cols() != n {
        return Err(VolumeError::DimensionMismatch(format!(
            "metric is {}x{}, points have length {n}",
            g.rows(),
            g.cols()
        )));
    }
    if !g.is_symmetric() {
        return Err(VolumeError::NotSymmetric);
    }
    Ok(())
}

/// `YᵀGY`; with `G = I` this is the ordinary Gram matrix.
pub fn gram_matrix(s: &Simplex, g: &RationalMatrix) -> Result<RationalMatrix, VolumeError> {
    check_metric(s, g)?;
    let y = difference_matrix(s)?;
    Ok(y.transpose().mat_mul(g)?.mat_mul(&y)?)
}

/// `det(YᵀGY) / (k!)²`, with the empty-determinant convention 1 for `k = 0`.
pub fn vol2_gram(s: &Simplex, g: &RationalMatrix) -> Result<Rational, VolumeError> {
    check_metric(s, g)?;
    if s.dim_k() == 0 {
        return Ok(Rational::one());
    }
    let f = factorial(s.dim_k());
    Ok(det_exact(&gram_matrix(s, g)?)? / Rational::from_integer(&f * &f))
}

/// Square distances `(xᵢ − xⱼ)ᵀ G (xᵢ − xⱼ)`.
pub fn square_distances_of(
    s: &Simplex,
    g: &RationalMatrix,
) -> Result<SquareDistanceData, VolumeError> {
    check_metric(s, g)?;
    let n = s.ambient_dim();
    let m = s.points.len();
    let quad = |a: &[Rational], b: &[Rational]| {
        let d: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        let mut acc = Rational::zero();
        for i in 0..n {
            if d[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &d[i] * g.get(i, j) * &d[j];
            }
        }
        acc
    };
    let mut table = RationalMatrix::zeros(m, m).entries().to_vec();
    for i in 0..m {
        for j in i + 1..m {
            let v = quad(&s.points[i], &s.points[j]);
            table[i * m + j] = v.clone();
            table[j * m + i] = v;
        }
    }
    SquareDistanceData::new(Matrix::from_vec(m, m, table)?)
}

/// Standard Cayley–Menger square volume of the simplex `(H·x₀, …, H·x_k)`.
pub fn vol2_metric_via_cm(s: &Simplex, h: &RationalMatrix) -> Result<Rational, VolumeError> {
    if !h.is_square() {
        return Err(VolumeError::DimensionMismatch(format!(
            "factor must be square, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let image = s.transformed(h)?;
    let identity = RationalMatrix::identity(image.ambient_dim());
    Ok(vol2_cm(&square_distances_of(&image, &identity)?))
}

/// Both sides of the determinant comparison for one simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub k: usize,
    pub n: usize,
    /// `det(C) / (−(−2)ᵏ)`.
    #[serde(serialize_with = "ser_rational")]
    pub cayley_menger: Rational,
    /// `det(YᵀY)`.
    #[serde(serialize_with = "ser_rational")]
    pub gram: Rational,
    pub agree: bool,
    /// Whether `det(C) / (−(−2)ᵏ) = det(YᵀY)²` also holds (the variant with
    /// a squared right-hand side; true only when `det(YᵀY)` is 0 or 1).
    pub squared_variant_holds: bool,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn verify_comparison(s: &Simplex) -> ComparisonReport {
    let k = s.dim_k();
    let identity = RationalMatrix::identity(s.ambient_dim());
    let distances = square_distances_of(s, &identity).expect("identity metric fits");
    let det_c = det_exact(cm_matrix(&distances).matrix()).expect("square");
    let cayley_menger = det_c / cm_normalizer(k);
    let gram = if k == 0 {
        Rational::one()
    } else {
        det_exact(&gram_matrix(s, &identity).expect("identity metric fits")).expect("square")
    };
    ComparisonReport {
        k,
        n: s.ambient_dim(),
        agree: cayley_menger == gram,
        squared_variant_holds: cayley_menger == &gram * &gram,
        cayley_menger,
        gram,
    }
}

/// `k+1` points with integer coordinates drawn uniformly from `[−bound, bound]`.
pub fn random_integer_simplex<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    n: usize,
    bound: i64,
) -> Simplex {
    let points = (0..=k)
        .map(|_| {
            (0..n)
                .map(|_| Rational::from_integer(rng.random_range(-bound..=bound).into()))
                .collect()
        })
        .collect();
    Simplex { points }
}

/// Deterministic generator for random comparison trials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialConfig {
    pub trials: usize,
    pub max_k: usize,
    pub max_n: usize,
    pub seed: u64,
    pub coordinate_bound: i64,
}

impl TrialConfig {
    pub fn new(trials: usize, max_k: usize, max_n: usize, seed: u64) -> Self {
        TrialConfig {
            trials,
            max_k,
            max_n,
            seed,
            coordinate_bound: 9,
        }
    }

    /// RNG for trial `index`: the seed selects the key, the index the stream,
    /// so every trial is reproducible on its own and independent of
    /// scheduling.
    pub fn trial_rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }

    /// Draws `n ∈ [1, max_n]`, then `k ∈ [1, min(max_k, n)]`, then the points.
    pub fn simplex(&self, index: usize) -> Simplex {
        let mut rng = self.trial_rng(index);
        let n = rng.random_range(1..=self.max_n.max(1));
        let k = rng.random_range(1..=self.max_k.clamp(1, n));
        random_integer_simplex(&mut rng, k, n, self.coordinate_bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonTrial {
    pub index: usize,
    pub simplex: Simplex,
    pub report: ComparisonReport,
    /// `vol2_cm` of the identity-metric distances equals `vol2_gram` with `G = I`.
    pub volumes_agree: bool,
}

impl ComparisonTrial {
    pub fn passed(&self) -> bool {
        self.report.agree && self.volumes_agree
    }
}

pub fn run_comparison_trials(config: &TrialConfig, exec: Execution) -> Vec<ComparisonTrial> {
    exec.map_range(config.trials, |index| {
        let simplex = config.simplex(index);
        let report = verify_comparison(&simplex);
        let identity = RationalMatrix::identity(simplex.ambient_dim());
        let via_cm = vol2_cm(&square_distances_of(&simplex, &identity).expect("identity fits"));
        let via_gram = vol2_gram(&simplex, &identity).expect("identity fits");
        ComparisonTrial {
            index,
            volumes_agree: via_cm == via_gram,
            simplex,
            report,
        }
    })
}

/// Sign-insensitive magnitude helper used in reports.
pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn unit_right_triangle() -> Simplex {
        Simplex::from_integers(&[[0, 0], [1, 0], [0, 1]]).unwrap()
    }

    #[test]
    fn heron_examples() {
        assert_eq!(heron_triangle(&rat(9), &rat(16), &rat(25)), rat(36));
        let q = ratio(7, 3);
        assert_eq!(heron_triangle(&rat(0), &q, &q), rat(0));
        assert_eq!(heron_triangle(&rat(1), &rat(1), &rat(1)), ratio(3, 16));
    }

    #[test]
    fn cm_matrix_shapes() {
        let seg = SquareDistanceData::from_rows(vec![vec![rat(0), rat(5)], vec![rat(5), rat(0)]])
            .unwrap();
        assert_eq!(
            cm_matrix(&seg).into_matrix(),
            RationalMatrix::from_integers(&[[0, 1, 1], [1, 0, 5], [1, 5, 0]]).unwrap()
        );
        let eq = SquareDistanceData::from_rows(vec![
            vec![rat(0), rat(1), rat(1)],
            vec![rat(1), rat(0), rat(1)],
            vec![rat(1), rat(1), rat(0)],
        ])
        .unwrap();
        assert_eq!(
            cm_matrix(&eq).into_matrix(),
            RationalMatrix::from_integers(&[[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
                .unwrap()
        );
        let point = SquareDistanceData::from_rows(vec![vec![rat(0)]]).unwrap();
        let c = cm_matrix(&point);
        assert_eq!(c.dim_k(), 0);
        assert_eq!(
            c.into_matrix(),
            RationalMatrix::from_integers(&[[0, 1], [1, 0]]).unwrap()
        );
    }

    #[test]
    fn invalid_distance_tables() {
        let diag = SquareDistanceData::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(0)]]);
        assert!(matches!(diag, Err(VolumeError::InvalidDistanceData(_))));
        let asym = SquareDistanceData::from_rows(vec![vec![rat(0), rat(2)], vec![rat(3), rat(0)]]);
        assert!(matches!(asym, Err(VolumeError::InvalidDistanceData(_))));
        assert!(SquareDistanceData::from_rows(vec![]).is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(cm_factor(1), ratio(1, 2));
        assert_eq!(cm_factor(2), ratio(-1, 16));
        assert_eq!(cm_factor(3), ratio(1, 288));
        assert_eq!(cm_factor(4), ratio(-1, 9216));
        assert_eq!(cm_factor(0), rat(-1));
    }

    #[test]
    fn vol2_cm_examples() {
        let seg = SquareDistanceData::from_rows(vec![vec![rat(0), rat(7)], vec![rat(7), rat(0)]])
            .unwrap();
        assert_eq!(vol2_cm(&seg), rat(7));
        let t = SquareDistanceData::from_rows(vec![
            vec![rat(0), rat(9), rat(16)],
            vec![rat(9), rat(0), rat(25)],
            vec![rat(16), rat(25), rat(0)],
        ])
        .unwrap();
        assert_eq!(vol2_cm(&t), rat(36));
        // vertices 1 and 2 have identical rows
        let twin = SquareDistanceData::from_rows(vec![
            vec![rat(0), rat(4), rat(4)],
            vec![rat(4), rat(0), rat(0)],
            vec![rat(4), rat(0), rat(0)],
        ])
        .unwrap();
        assert_eq!(vol2_cm(&twin), rat(0));
        let point = SquareDistanceData::from_rows(vec![vec![rat(0)]]).unwrap();
        assert_eq!(vol2_cm(&point), rat(1));
    }

    #[test]
    fn difference_matrix_examples() {
        assert_eq!(
            difference_matrix(&unit_right_triangle()).unwrap(),
            RationalMatrix::identity(2)
        );
        let rep = Simplex::from_integers(&[[1, 2], [1, 2], [0, 1]]).unwrap();
        let y = difference_matrix(&rep).unwrap();
        assert!(y.get(0, 0).is_zero() && y.get(1, 0).is_zero());
        let seg = Simplex::from_integers(&[[0], [3]]).unwrap();
        assert_eq!(
            difference_matrix(&seg).unwrap(),
            RationalMatrix::from_integers(&[[3]]).unwrap()
        );
        let point = Simplex::from_integers(&[[4, 4]]).unwrap();
        assert_eq!(difference_matrix(&point), Err(VolumeError::EmptySimplex));
    }

    #[test]
    fn gram_examples() {
        let s = unit_right_triangle();
        let id = RationalMatrix::identity(2);
        let g = RationalMatrix::diagonal(&[rat(4), rat(1)]);
        assert_eq!(gram_matrix(&s, &id).unwrap(), RationalMatrix::identity(2));
        assert_eq!(gram_matrix(&s, &g).unwrap(), g);
        let flat = Simplex::from_integers(&[[0, 0], [1, 1], [2, 2]]).unwrap();
        assert_eq!(det_exact(&gram_matrix(&flat, &id).unwrap()).unwrap(), rat(0));
        assert_eq!(vol2_gram(&s, &id).unwrap(), ratio(1, 4));
        assert_eq!(vol2_gram(&s, &g).unwrap(), rat(1));
        let seg = Simplex::from_integers(&[[0], [5]]).unwrap();
        assert_eq!(vol2_gram(&seg, &RationalMatrix::identity(1)).unwrap(), rat(25));
        assert!(matches!(
            gram_matrix(&s, &RationalMatrix::identity(3)),
            Err(VolumeError::DimensionMismatch(_))
        ));
        let asym = RationalMatrix::from_integers(&[[1, 1], [0, 1]]).unwrap();
        assert_eq!(gram_matrix(&s, &asym), Err(VolumeError::NotSymmetric));
    }

    #[test]
    fn square_distance_examples() {
        let d = square_distances_of(&unit_right_triangle(), &RationalMatrix::identity(2)).unwrap();
        assert_eq!((d.get(0, 1), d.get(0, 2), d.get(1, 2)), (&rat(1), &rat(1), &rat(2)));
        assert!(d.get(1, 1).is_zero());
        let seg = Simplex::from_integers(&[[0, 0], [1, 0]]).unwrap();
        let g = RationalMatrix::diagonal(&[rat(4), rat(1)]);
        assert_eq!(square_distances_of(&seg, &g).unwrap().get(0, 1), &rat(4));
    }

    #[test]
    fn metric_via_cm_examples() {
        let s = unit_right_triangle();
        let id = RationalMatrix::identity(2);
        assert_eq!(
            vol2_metric_via_cm(&s, &id).unwrap(),
            vol2_cm(&square_distances_of(&s, &id).unwrap())
        );
        let h = RationalMatrix::diagonal(&[rat(2), rat(1)]);
        assert_eq!(vol2_metric_via_cm(&s, &h).unwrap(), rat(1));
        let singular = RationalMatrix::from_integers(&[[1, 1], [1, 1]]).unwrap();
        assert_eq!(vol2_metric_via_cm(&s, &singular).unwrap(), rat(0));
    }

    #[test]
    fn comparison_examples() {
        let r = verify_comparison(&unit_right_triangle());
        assert_eq!((r.cayley_menger.clone(), r.gram.clone()), (rat(1), rat(1)));
        assert!(r.agree);
        let flat = Simplex::from_integers(&[[0, 0, 0], [1, 2, 3], [2, 4, 6]]).unwrap();
        let r = verify_comparison(&flat);
        assert!(r.agree && r.gram.is_zero() && r.cayley_menger.is_zero());
        let big = Simplex::from_integers(&[[0, 0], [2, 0], [0, 3]]).unwrap();
        let r = verify_comparison(&big);
        assert!(r.agree);
        assert_eq!(r.gram, rat(36));
        assert!(!r.squared_variant_holds);
    }

    #[test]
    fn trial_generation_is_deterministic() {
        let cfg = TrialConfig::new(20, 3, 4, 7);
        let a = run_comparison_trials(&cfg, Execution::Sequential);
        let b = run_comparison_trials(&cfg, Execution::Parallel);
        assert_eq!(a, b);
        for t in &a {
            assert!(t.passed());
            let k = t.simplex.dim_k();
            let n = t.simplex.ambient_dim();
            assert!(1 <= k && k <= n && n <= 4 && k <= 3);
        }
    }
}
