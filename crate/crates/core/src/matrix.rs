//! Dense exact linear algebra over ℚ[r] and its fraction field.

use std::fmt;

use num::One;

use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Rank and a kernel basis. Kernel vectors have polynomial entries with
/// denominators cleared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nullspace {
    pub rank: usize,
    pub basis: Vec<Vec<Scalar>>,
}

impl Nullspace {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn specialize(&self, value: &Rational) -> ScalarMatrix {
        ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|e| Scalar::constant(e.specialize(value)))
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination in ℚ[r].
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        let mut a = self.to_rows();
        let mut prev = Scalar::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Scalar::zero();
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .exact_div(&prev)
                        .expect("Bareiss step must divide exactly");
                }
                a[i][k] = Scalar::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Rank and kernel. With `r_value` the matrix is specialized first and the
    /// computation runs over ℚ; without it, over the fraction field ℚ(r).
    pub fn nullspace(&self, r_value: Option<&Rational>) -> Nullspace {
        let source = match r_value {
            Some(v) => self.specialize(v),
            None => self.clone(),
        };
        let mut a: Vec<Vec<RatFunc>> = source
            .to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(RatFunc::from).collect())
            .collect();

        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(p, row);
            let inv = a[row][col].recip();
            for entry in a[row].iter_mut() {
                *entry = entry.mul(&inv);
            }
            for i in 0..self.rows {
                if i == row || a[i][col].is_zero() {
                    continue;
                }
                let factor = a[i][col].clone();
                for j in 0..self.cols {
                    let delta = factor.mul(&a[row][j]);
                    a[i][j] = a[i][j].sub(&delta);
                }
            }
            pivots.push(col);
            row += 1;
        }

        let rank = pivots.len();
        let basis = (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![RatFunc::zero(); self.cols];
                v[free] = RatFunc::one();
                for (prow, &pcol) in pivots.iter().enumerate() {
                    v[pcol] = a[prow][free].neg();
                }
                clear_denominators(v)
            })
            .collect();
        Nullspace { rank, basis }
    }

    pub fn rank(&self, r_value: Option<&Rational>) -> usize {
        self.nullspace(r_value).rank
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

fn clear_denominators(v: Vec<RatFunc>) -> Vec<Scalar> {
    let lcm = v.iter().fold(Scalar::one(), |acc, x| {
        let g = Scalar::gcd(&acc, &x.den);
        (&acc * &x.den).exact_div(&g).expect("gcd divides")
    });
    let scaled: Vec<Scalar> = v
        .into_iter()
        .map(|x| &x.num * &lcm.exact_div(&x.den).expect("lcm is a multiple"))
        .collect();
    let content = scaled
        .iter()
        .fold(Scalar::zero(), |acc, x| Scalar::gcd(&acc, x));
    if content.is_zero() {
        return scaled;
    }
    scaled
        .iter()
        .map(|x| x.exact_div(&content).expect("content divides"))
        .collect()
}

/// Reduced element of ℚ(r): `num / den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RatFunc {
    num: Scalar,
    den: Scalar,
}

impl From<Scalar> for RatFunc {
    fn from(num: Scalar) -> Self {
        RatFunc {
            num,
            den: Scalar::one(),
        }
    }
}

impl RatFunc {
    fn zero() -> Self {
        Scalar::zero().into()
    }

    fn one() -> Self {
        Scalar::one().into()
    }

    fn new(num: Scalar, den: Scalar) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Scalar::gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        let lc = den.leading_coeff().cloned().unwrap_or_else(Rational::one);
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        RatFunc::new(&self.num * &other.num, &self.den * &other.den)
    }

    fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::new(&self.num - &other.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
}
