use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::GaussianRational;
use crate::{Error, Result};

/// Univariate polynomial over `Q(i)`, coefficients lowest degree first.
///
/// Trailing zero coefficients are always stripped; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`.
    pub fn linear_factor(root: &GaussianRational) -> Self {
        Self::new(vec![-root, GaussianRational::one()])
    }

    /// `a x - b`.
    pub fn linear(a: &GaussianRational, b: &GaussianRational) -> Self {
        Self::new(vec![-b, a.clone()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = GaussianRational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of an exact division; panics if a remainder is left.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &GaussianRational::from_int(i as i64))
                .collect(),
        )
    }

    /// Monic square-free part `p / gcd(p, p')`.
    pub fn squarefree(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c.is_real() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{coef}*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `det(x*p - q)` by fraction-free (Bareiss) elimination over `F[x]`.
pub fn pencil_det_poly(p: &Matrix, q: &Matrix) -> Result<Polynomial> {
    if !p.is_square() {
        return Err(Error::NotSquare {
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    if p.rows() != q.rows() || p.cols() != q.cols() {
        return Err(Error::DimensionMismatch("pencil coefficients differ in shape".into()));
    }
    let n = p.rows();
    let mut m: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Polynomial::linear(&p[(i, j)], &q[(i, j)]))
                .collect()
        })
        .collect();
    Ok(bareiss(&mut m))
}

fn bareiss(m: &mut [Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n {
        // prefer the lowest-degree pivot to keep intermediate degrees small
        let pivot = (k..n)
            .filter(|&r| !m[r][k].is_zero())
            .min_by_key(|&r| m[r][k].degree());
        let Some(p) = pivot else {
            return Polynomial::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = if prev.is_unit() && prev.coeffs()[0].is_one() {
                    num
                } else {
                    num.div_exact(&prev)
                };
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Monic gcd of all `order x order` minors of `x*p - q` (zero if all vanish).
pub fn minor_gcd_poly(p: &Matrix, q: &Matrix, order: usize) -> Result<Polynomial> {
    if p.rows() != q.rows() || p.cols() != q.cols() {
        return Err(Error::DimensionMismatch("pencil coefficients differ in shape".into()));
    }
    let (rows, cols) = (p.rows(), p.cols());
    if order > rows.min(cols) {
        return Err(Error::OrderOutOfRange { order, rows, cols });
    }
    let mut acc = Polynomial::zero();
    for rs in (0..rows).combinations(order) {
        for cs in (0..cols).combinations(order) {
            let minor = pencil_det_poly(&p.submatrix(&rs, &cs), &q.submatrix(&rs, &cs))?;
            acc = acc.gcd(&minor);
            if acc.is_unit() {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    /// Cofactor expansion of `det(x p - q)` along the first row.
    fn det_by_cofactors(p: &Matrix, qm: &Matrix) -> Polynomial {
        let n = p.rows();
        if n == 0 {
            return Polynomial::one();
        }
        let mut acc = Polynomial::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = det_by_cofactors(&p.submatrix(&rows, &cols), &qm.submatrix(&rows, &cols));
            let term = Polynomial::linear(&p[(0, j)], &qm[(0, j)]).mul(&minor);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn det_examples() {
        let i2 = Matrix::identity(2);
        let j2 = Matrix::from_ints(&[[0, 1], [0, 0]]);
        assert_eq!(pencil_det_poly(&i2, &j2).unwrap(), Polynomial::from_ints(&[0, 0, 1]));
        assert_eq!(pencil_det_poly(&Matrix::zeros(2, 2), &i2).unwrap(), Polynomial::one());
        let e = Matrix::from_ints(&[[1, 0], [0, 0]]);
        assert_eq!(pencil_det_poly(&e, &i2).unwrap(), Polynomial::from_ints(&[1, -1]));
        assert!(pencil_det_poly(&Matrix::zeros(2, 3), &Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        let p = Matrix::from_ints(&[[1, 2, 0, -1], [0, 1, 3, 2], [2, 0, 0, 1], [1, 1, 1, 1]]);
        let qm = Matrix::from_ints(&[[0, 1, -2, 3], [4, 0, 1, 0], [1, 1, 0, 2], [0, -3, 1, 1]]);
        assert_eq!(pencil_det_poly(&p, &qm).unwrap(), det_by_cofactors(&p, &qm));
        let p = Matrix::from_ints(&[[0, 0, 1], [0, 0, 0], [1, 0, 0]]);
        let qm = Matrix::from_ints(&[[1, 2, 0], [0, 0, 1], [3, 1, 1]]);
        assert_eq!(pencil_det_poly(&p, &qm).unwrap(), det_by_cofactors(&p, &qm));
    }

    #[test]
    fn minor_gcd_examples() {
        let i2 = Matrix::identity(2);
        let j2 = Matrix::from_ints(&[[0, 1], [0, 0]]);
        let det = pencil_det_poly(&i2, &j2).unwrap();
        assert_eq!(minor_gcd_poly(&i2, &j2, 2).unwrap(), det.monic());
        let z = Matrix::zeros(2, 2);
        assert!(minor_gcd_poly(&z, &z, 1).unwrap().is_zero());
        let p = Matrix::from_ints(&[[1], [0]]);
        let qm = Matrix::from_ints(&[[0], [1]]);
        assert_eq!(minor_gcd_poly(&p, &qm, 1).unwrap(), Polynomial::one());
        assert!(matches!(
            minor_gcd_poly(&p, &qm, 2),
            Err(Error::OrderOutOfRange { .. })
        ));
        // J2 has the order-1 minors x, -1, 0, x: gcd 1
        assert_eq!(minor_gcd_poly(&i2, &j2, 1).unwrap(), Polynomial::one());
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = Polynomial::from_ints(&[1, 1]); // x + 1
        let (qt, r) = a.div_rem(&b).unwrap();
        assert_eq!(qt, Polynomial::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&Polynomial::from_ints(&[1, 2, 1])), b);
        let sq = Polynomial::from_ints(&[0, 0, 1]).mul(&b);
        assert_eq!(sq.squarefree(), Polynomial::from_ints(&[0, 1, 1]));
        assert_eq!(Polynomial::from_ints(&[0, 0, 1]).eval(&q("0+1*i")), q("-1"));
    }
}
