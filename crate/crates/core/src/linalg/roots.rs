//! Roots in `Q(i)` of polynomials over `Q(i)`.
//!
//! After clearing denominators every root `a/b` (with `a`, `b` coprime
//! Gaussian integers) has `a` dividing the constant term and `b` dividing the
//! leading coefficient `c` in `Z[i]`, so `c r` is a Gaussian integer.
//!
//! The roots are first located numerically and enclosed in discs that are
//! guaranteed to cover every root; only the lattice points `c r` inside
//! those discs are tested, exactly. When the discs are too wide the search
//! falls back to testing every quotient of Gaussian divisors.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::polynomial::Polynomial;
use super::rational::{lcm_denominators, Rational};
use super::scalar::GaussianRational;
use crate::{Error, Result};

/// `p = unit * prod (x - r)^m * residual` with `residual` monic and free of
/// roots in `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFactorization {
    pub roots: Vec<(GaussianRational, usize)>,
    pub unit: GaussianRational,
    pub residual: Polynomial,
}

impl RootFactorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Polynomial {
        self.roots
            .iter()
            .fold(self.residual.scale(&self.unit), |acc, (r, m)| {
                (0..*m).fold(acc, |acc, _| acc.mul(&Polynomial::linear_factor(r)))
            })
    }
}

pub fn gaussian_rational_roots(p: &Polynomial) -> Result<RootFactorization> {
    let unit = p.leading().cloned().ok_or(Error::ZeroPolynomial)?;
    let mut rest = p.monic();
    let distinct = distinct_roots(&rest.squarefree())?;
    let mut roots = Vec::with_capacity(distinct.len());
    for r in distinct {
        let factor = Polynomial::linear_factor(&r);
        let mut mult = 0;
        loop {
            let (q, rem) = rest.div_rem(&factor)?;
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        roots.push((r, mult));
    }
    Ok(RootFactorization {
        roots,
        unit,
        residual: rest,
    })
}

/// Gaussian integer `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn new(re: BigInt, im: BigInt) -> Self {
        Self { re, im }
    }

    fn from_i64(re: i64, im: i64) -> Self {
        Self::new(re.into(), im.into())
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    /// `self / d` if it is exact in `Z[i]`.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        // self * conj(d)
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        if re.is_multiple_of(&n) && im.is_multiple_of(&n) {
            Some(Self::new(re / &n, im / &n))
        } else {
            None
        }
    }

    fn to_scalar(&self) -> GaussianRational {
        GaussianRational::new(
            Rational::new(self.re.clone(), BigInt::one()),
            Rational::new(self.im.clone(), BigInt::one()),
        )
    }
}

const TRIAL_LIMIT: u64 = 1 << 20;

fn small_primes() -> impl Iterator<Item = u64> {
    std::iter::once(2).chain((3..TRIAL_LIMIT).step_by(2))
}

/// Distinct prime factors of `n > 0`.
fn prime_factors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut n = n.clone();
    let mut out = Vec::new();
    for p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        if n.is_multiple_of(&pb) {
            out.push(pb.clone());
            while n.is_multiple_of(&pb) {
                n /= &pb;
            }
        }
    }
    if n > BigInt::one() {
        split_large(n, &mut out)?;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Factors a cofactor with no prime below the trial limit.
fn split_large(n: BigInt, out: &mut Vec<BigInt>) -> Result<()> {
    let limit = BigInt::from(TRIAL_LIMIT);
    if n < &limit * &limit || is_probable_prime(&n) {
        out.push(n);
        return Ok(());
    }
    if n.bits() > 160 {
        return Err(Error::RootSearchTooLarge);
    }
    let d = pollard_rho(&n).ok_or(Error::RootSearchTooLarge)?;
    let other = &n / &d;
    split_large(d, out)?;
    split_large(other, out)
}

fn is_probable_prime(n: &BigInt) -> bool {
    let one = BigInt::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    for c in 1u32..64 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y) = (BigInt::from(2), BigInt::from(2));
        for _ in 0..1_000_000 {
            x = f(&x);
            y = f(&f(&y));
            let d = (&x - &y).abs().gcd(n);
            if d == *n {
                break;
            }
            if !d.is_one() {
                return Some(d);
            }
        }
    }
    None
}

/// A Gaussian prime of norm `p` for a rational prime `p ≡ 1 (mod 4)`.
fn split_prime(p: &BigInt) -> GInt {
    let one = BigInt::one();
    let exp_half = (p - &one) / 2u32;
    let exp_quarter = (p - &one) / 4u32;
    let mut c = BigInt::from(2);
    while c.modpow(&exp_half, p) != p - &one {
        c += 1;
    }
    // t^2 = -1 (mod p); Euclid on (p, t) stops at x with x^2 + y^2 = p
    let (mut a, mut b) = (p.clone(), c.modpow(&exp_quarter, p));
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let y = (p - &b * &b).sqrt();
    debug_assert_eq!(&b * &b + &y * &y, *p);
    GInt::new(b, y)
}

/// All divisors of `z` in `Z[i]`, one associate each.
fn gaussian_divisors(z: &GInt) -> Result<Vec<GInt>> {
    let mut primes = Vec::new();
    for p in prime_factors(&z.norm())? {
        if p == BigInt::from(2) {
            primes.push(GInt::from_i64(1, 1));
        } else if (&p % 4u32) == BigInt::from(3) {
            primes.push(GInt::new(p, BigInt::zero()));
        } else {
            let pi = split_prime(&p);
            let conj = GInt::new(pi.re.clone(), -&pi.im);
            primes.push(pi);
            primes.push(conj);
        }
    }
    let mut divisors = vec![GInt::from_i64(1, 0)];
    for pi in primes {
        let mut rest = z.clone();
        let mut power = GInt::from_i64(1, 0);
        let mut powers = Vec::new();
        while let Some(q) = rest.div_exact(&pi) {
            rest = q;
            power = power.mul(&pi);
            powers.push(power.clone());
        }
        let extra: Vec<GInt> = divisors
            .iter()
            .flat_map(|d| powers.iter().map(move |pw| d.mul(pw)))
            .collect();
        divisors.extend(extra);
    }
    Ok(divisors)
}

/// Distinct roots of a square-free polynomial, sorted.
fn distinct_roots(f: &Polynomial) -> Result<Vec<GaussianRational>> {
    let mut roots = BTreeSet::new();
    let Some(deg) = f.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    let mut g = f.clone();
    if g.coeffs()[0].is_zero() && deg > 0 {
        roots.insert(GaussianRational::zero());
        g = g.div_exact(&Polynomial::new(vec![
            GaussianRational::zero(),
            GaussianRational::one(),
        ]));
    }
    let deg_g = g.degree().unwrap_or(0);
    if deg_g == 0 {
        return Ok(roots.into_iter().collect());
    }
    if deg_g == 1 {
        let c = g.coeffs();
        roots.insert(-&(&c[0] / &c[1]));
        return Ok(roots.into_iter().collect());
    }

    // integral coefficients
    let scale = lcm_denominators(g.coeffs().iter().flat_map(|c| [c.re(), c.im()]));
    let to_int = |r: &Rational| r.numer() * (&scale / r.denom());
    let ints: Vec<GInt> = g
        .coeffs()
        .iter()
        .map(|c| GInt::new(to_int(c.re()), to_int(c.im())))
        .collect();
    let c0 = &ints[0];
    let cn = &ints[deg_g];

    let found = match enclosed_roots(&g, cn) {
        Some(found) => found,
        None => divisor_roots(&g, c0, cn)?,
    };
    roots.extend(found);
    Ok(roots.into_iter().collect())
}

/// Tests every `unit * a / b` with `a | c0`, `b | cn` inside the Cauchy bound.
fn divisor_roots(g: &Polynomial, c0: &GInt, cn: &GInt) -> Result<Vec<GaussianRational>> {
    let deg_g = g.degree().unwrap_or(0);
    let mut roots = BTreeSet::new();
    let bound = 1.0
        + g.coeffs()
            .iter()
            .map(GaussianRational::abs_f64)
            .fold(0.0, f64::max)
            / g.leading().map_or(1.0, GaussianRational::abs_f64);

    let numerators = gaussian_divisors(c0)?;
    let denominators = gaussian_divisors(cn)?;
    let units = [
        GInt::from_i64(1, 0),
        GInt::from_i64(0, 1),
        GInt::from_i64(-1, 0),
        GInt::from_i64(0, -1),
    ];
    for a in &numerators {
        for b in &denominators {
            let (an, bn) = (a.norm().to_f64(), b.norm().to_f64());
            if let (Some(an), Some(bn)) = (an, bn) {
                if (an / bn).sqrt() > bound * (1.0 + 1e-9) {
                    continue;
                }
            }
            let base = &a.to_scalar() / &b.to_scalar();
            for u in &units {
                let r = &base * &u.to_scalar();
                if !roots.contains(&r) && g.eval(&r).is_zero() {
                    roots.insert(r);
                    if roots.len() == deg_g {
                        return Ok(roots.into_iter().collect());
                    }
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

const MAX_LATTICE_RADIUS: f64 = 40.0;

/// Roots of a square-free `g` with `lead * r` integral, found by testing the
/// lattice points inside rigorous inclusion discs. `None` if the numeric
/// approximation is not tight enough.
fn enclosed_roots(g: &Polynomial, lead: &GInt) -> Option<Vec<GaussianRational>> {
    let n = g.degree()?;
    let coeffs: Vec<Complex64> = g
        .coeffs()
        .iter()
        .map(|c| Complex64::new(c.re().to_f64(), c.im().to_f64()))
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let z = aberth(&coeffs)?;
    let lead_f = Complex64::new(lead.re.to_f64()?, lead.im.to_f64()?);
    let lead_abs = g.leading()?.abs_f64();
    let mut out = BTreeSet::new();
    for (j, zj) in z.iter().enumerate() {
        // every root lies in some disc |x - z_j| <= n |g(z_j)| / |a_n prod (z_j - z_k)|
        let exact = GaussianRational::new(exact_f64(zj.re)?, exact_f64(zj.im)?);
        let value = g.eval(&exact).abs_f64();
        let spread: f64 = z
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, zk)| (zj - zk).norm())
            .product();
        if !(spread > 0.0) || !value.is_finite() {
            return None;
        }
        let radius = n as f64 * value / (lead_abs * spread) * (1.0 + 1e-6);
        let center = lead_f * zj;
        let scaled = lead_f.norm() * radius + 1.0;
        if !(scaled <= MAX_LATTICE_RADIUS) || center.norm() > 1e15 {
            return None;
        }
        let (lo_re, hi_re) = ((center.re - scaled).floor(), (center.re + scaled).ceil());
        let (lo_im, hi_im) = ((center.im - scaled).floor(), (center.im + scaled).ceil());
        let lead_s = lead.to_scalar();
        for re in lo_re as i64..=hi_re as i64 {
            for im in lo_im as i64..=hi_im as i64 {
                if (Complex64::new(re as f64, im as f64) - center).norm() > scaled {
                    continue;
                }
                let r = &GInt::from_i64(re, im).to_scalar() / &lead_s;
                if !out.contains(&r) && g.eval(&r).is_zero() {
                    out.insert(r);
                }
            }
        }
    }
    Some(out.into_iter().collect())
}

fn exact_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x).map(Rational::from_big)
}

/// Simultaneous Aberth-Ehrlich iteration for all roots.
fn aberth(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let a: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + a[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, angle)
        })
        .collect();
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for c in a.iter().rev() {
                dp = dp * z[j] + p;
                p = p * z[j] + c;
            }
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repel: Complex64 = (0..n)
                .filter(|&k| k != j)
                .map(|k| (z[j] - z[k]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repel);
            if !step.is_finite() {
                return None;
            }
            z[j] -= step;
            worst = worst.max(step.norm() / z[j].norm().max(1.0));
        }
        if worst < 1e-15 {
            break;
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn real_roots() {
        let f = gaussian_rational_roots(&Polynomial::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(f.roots, vec![(q("-1"), 1), (q("1"), 1)]);
        assert_eq!(f.residual, Polynomial::one());
    }

    #[test]
    fn imaginary_roots() {
        let f = gaussian_rational_roots(&Polynomial::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(f.roots, vec![(q("0-1*i"), 1), (q("0+1*i"), 1)]);
        for (r, _) in &f.roots {
            assert!(Polynomial::from_ints(&[1, 0, 1]).eval(r).is_zero());
        }
        assert_eq!(f.residual, Polynomial::one());
    }

    #[test]
    fn irrational_roots_stay_in_residual() {
        let p = Polynomial::from_ints(&[-2, 0, 1]);
        let f = gaussian_rational_roots(&p).unwrap();
        assert!(f.roots.is_empty());
        assert_eq!(f.residual, p);
    }

    #[test]
    fn multiplicities_and_fractions() {
        // 4 (x - 1/2)^2 (x + 3) (x^2 + 2) (x - (1+2i)/3)
        let p = Polynomial::from_ints(&[-1, 2])
            .mul(&Polynomial::from_ints(&[-1, 2]))
            .mul(&Polynomial::from_ints(&[3, 1]))
            .mul(&Polynomial::from_ints(&[2, 0, 1]))
            .mul(&Polynomial::linear_factor(&q("1/3+2/3*i")));
        let f = gaussian_rational_roots(&p).unwrap();
        assert_eq!(
            f.roots,
            vec![(q("-3"), 1), (q("1/3+2/3*i"), 1), (q("1/2"), 2)]
        );
        assert_eq!(f.residual, Polynomial::from_ints(&[2, 0, 1]));
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn zero_root_and_zero_poly() {
        let f = gaussian_rational_roots(&Polynomial::from_ints(&[0, 0, 5])).unwrap();
        assert_eq!(f.roots, vec![(GaussianRational::zero(), 2)]);
        assert_eq!(f.unit, q("5"));
        assert_eq!(
            gaussian_rational_roots(&Polynomial::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn large_prime_constant() {
        // (x - 1000003) (x - (999983 + 2i))
        let p = Polynomial::linear_factor(&q("1000003"))
            .mul(&Polynomial::linear_factor(&q("999983+2*i")));
        let f = gaussian_rational_roots(&p).unwrap();
        assert_eq!(f.roots.len(), 2);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn enclosure_and_divisor_search_agree() {
        // large leading coefficient with many divisors
        let p = Polynomial::linear(&q("3203460"), &q("7"))
            .mul(&Polynomial::linear(&q("720720"), &q("11+13*i")))
            .mul(&Polynomial::from_ints(&[-3, 5, 1]));
        let f = gaussian_rational_roots(&p).unwrap();
        assert_eq!(f.roots.len(), 2);
        assert_eq!(f.residual.degree(), Some(2));
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn enclosure_matches_divisor_search() {
        let cases = [
            vec![q("1/2"), q("-3"), q("1+1*i"), q("2/3-1/5*i")],
            vec![q("0+1*i"), q("0-1*i"), q("7/11")],
            vec![q("100"), q("101"), q("1/100")],
        ];
        for roots in cases {
            let p = roots
                .iter()
                .fold(Polynomial::from_ints(&[-2, 0, 1]), |acc, r| {
                    acc.mul(&Polynomial::linear_factor(r))
                });
            let scale = lcm_denominators(p.coeffs().iter().flat_map(|c| [c.re(), c.im()]));
            let ints: Vec<GInt> = p
                .coeffs()
                .iter()
                .map(|c| {
                    let f = |r: &Rational| r.numer() * (&scale / r.denom());
                    GInt::new(f(c.re()), f(c.im()))
                })
                .collect();
            let fast = enclosed_roots(&p, ints.last().unwrap()).unwrap();
            let slow = divisor_roots(&p, &ints[0], ints.last().unwrap()).unwrap();
            let mut expected = roots.clone();
            expected.sort();
            assert_eq!(fast, expected);
            assert_eq!(slow, expected);
        }
    }

    #[test]
    fn aberth_finds_simple_roots() {
        let c: Vec<Complex64> = [6.0, -5.0, 1.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let mut z = aberth(&c).unwrap();
        z.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((z[0].re - 2.0).abs() < 1e-12 && (z[1].re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn split_primes() {
        for p in [5u64, 13, 17, 29, 1_000_037] {
            let pi = split_prime(&BigInt::from(p));
            assert_eq!(pi.norm(), BigInt::from(p));
        }
    }
}
