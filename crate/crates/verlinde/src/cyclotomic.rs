//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `1, z, ..., z^{phi(N)-1}` of
//! `Q[z]/(Phi_N)`, i.e. always reduced modulo the N-th cyclotomic
//! polynomial. That makes equality and rationality decidable by
//! coefficient comparison. Floats appear only in [`Cyclotomic::to_complex`],
//! which exists for test-side cross-checks.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rat;

/// Euler totient.
pub fn phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients (constant term first) of the N-th cyclotomic polynomial.
///
/// Computed by dividing `x^N - 1` by the cyclotomic polynomials of the
/// proper divisors; results are cached process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); (n + 1) as usize];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

/// Exact division of integer polynomials (monic divisor), remainder zero.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Exact element of `Q(zeta_N)` in the power basis mod `Phi_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rat>,
}

impl Cyclotomic {
    pub fn zero(conductor: u64) -> Cyclotomic {
        assert!(conductor >= 1);
        Cyclotomic {
            conductor,
            coeffs: vec![Rat::zero(); phi(conductor) as usize],
        }
    }

    pub fn one(conductor: u64) -> Cyclotomic {
        Self::from_rational(conductor, Rat::one())
    }

    pub fn from_rational(conductor: u64, q: Rat) -> Cyclotomic {
        let mut c = Self::zero(conductor);
        c.coeffs[0] = q;
        c
    }

    pub fn from_integer(conductor: u64, n: i64) -> Cyclotomic {
        Self::from_rational(conductor, Rat::from_integer(BigInt::from(n)))
    }

    /// `zeta_N^j` (j may be any integer; it is reduced mod N).
    pub fn root_of_unity(conductor: u64, j: i64) -> Cyclotomic {
        let n = conductor as i64;
        let j = j.rem_euclid(n) as u64;
        Self::from_exponents(conductor, &[(j, Rat::one())])
    }

    /// Build `sum c_j zeta^j` from exponent/coefficient pairs.
    pub fn from_exponents(conductor: u64, terms: &[(u64, Rat)]) -> Cyclotomic {
        let mut poly = vec![Rat::zero(); conductor as usize];
        for (e, c) in terms {
            poly[(e % conductor) as usize] += c;
        }
        Self::reduce(conductor, poly)
    }

    fn reduce(conductor: u64, mut poly: Vec<Rat>) -> Cyclotomic {
        let modulus = cyclotomic_polynomial(conductor);
        let deg = modulus.len() - 1;
        if poly.len() < deg {
            poly.resize(deg, Rat::zero());
        }
        for k in (deg..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[k], Rat::zero());
            for (i, m) in modulus.iter().enumerate().take(deg) {
                if !m.is_zero() {
                    poly[k - deg + i] -= &c * Rat::from_integer(m.clone());
                }
            }
        }
        poly.truncate(deg);
        Cyclotomic {
            conductor,
            coeffs: poly,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn assert_same_field(&self, other: &Cyclotomic) {
        assert_eq!(
            self.conductor, other.conductor,
            "cyclotomic arithmetic across different conductors; embed first"
        );
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(other);
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(other);
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        self.assert_same_field(other);
        let n = self.coeffs.len();
        let mut prod = vec![Rat::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        Self::reduce(self.conductor, prod)
    }

    pub fn scale(&self, q: &Rat) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x]` against `Phi_N`.
    pub fn inverse(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.conductor));
        }
        let modulus: Vec<Rat> = cyclotomic_polynomial(self.conductor)
            .into_iter()
            .map(Rat::from_integer)
            .collect();
        // extended gcd of (self, Phi_N); Phi_N is irreducible so the gcd is
        // a nonzero constant.
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while poly_deg(&r1) > 0 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        debug_assert!(!r1.is_empty(), "Phi_N must be coprime to nonzero elements");
        let c = r1[0].recip();
        let inv: Vec<Rat> = s1.iter().map(|x| x * &c).collect();
        Ok(Self::reduce(self.conductor, inv))
    }

    pub fn div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Integer power, negative exponents via the inverse.
    pub fn pow(&self, e: i64) -> Result<Cyclotomic> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Cyclotomic::one(self.conductor);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Galois automorphism `zeta -> zeta^a` for `gcd(a, N) = 1`.
    pub fn galois(&self, a: i64) -> Result<Cyclotomic> {
        let n = self.conductor;
        let a_red = a.rem_euclid(n as i64) as u64;
        if n > 1 && a_red.gcd(&n) != 1 {
            return Err(Error::GaloisNotCoprime { a, n });
        }
        let terms: Vec<(u64, Rat)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| ((j as u64 * a_red) % n.max(1), c.clone()))
            .collect();
        Ok(Self::from_exponents(n, &terms))
    }

    /// Complex conjugation, `galois(-1)`.
    pub fn conjugate(&self) -> Cyclotomic {
        self.galois(-1).expect("-1 is always coprime to N")
    }

    /// The exact rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Result<Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational {
                conductor: self.conductor,
                value: self.to_string(),
            })
        }
    }

    /// Re-express in `Q(zeta_M)` for a multiple `M` of the conductor.
    pub fn embed(&self, m: u64) -> Result<Cyclotomic> {
        if m % self.conductor != 0 {
            return Err(Error::ConductorNotDivisible {
                found: self.conductor,
                target: m,
            });
        }
        let stride = m / self.conductor;
        let terms: Vec<(u64, Rat)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u64 * stride, c.clone()))
            .collect();
        Ok(Self::from_exponents(m, &terms))
    }

    /// Floating-point image under `zeta_N -> exp(2 pi i / N)`; for
    /// test-side cross-checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = rat_to_f64(c);
            let t = 2.0 * std::f64::consts::PI * (j as f64) / n;
            re += x * t.cos();
            im += x * t.sin();
        }
        (re, im)
    }

    /// JSON form: conductor plus coefficient strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "conductor": self.conductor,
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // good enough for cross-checks: split to avoid overflow on big ints
    let num = r.numer();
    let den = r.denom();
    let nf = bigint_to_f64(num);
    let df = bigint_to_f64(den);
    nf / df
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    let s = b.to_string();
    s.parse::<f64>().unwrap_or(f64::NAN)
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_deg(p: &[Rat]) -> usize {
    p.len().saturating_sub(1)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![Rat::zero()];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let den = trim(den.to_vec());
    let dd = poly_deg(&den);
    let mut rem = trim(num.to_vec());
    if poly_deg(&rem) < dd || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); poly_deg(&rem) - dd + 1];
    let lead = den[dd].recip();
    while poly_deg(&rem) >= dd && !(rem.len() == 1 && rem[0].is_zero()) {
        let k = poly_deg(&rem) - dd;
        let c = &rem[poly_deg(&rem)] * &lead;
        quot[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            let sub = &c * d;
            rem[k + i] = &rem[k + i] - &sub;
        }
        rem = trim(rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    (quot, rem)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "  (mod Phi_{})", self.conductor)
    }
}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::add(self, rhs)
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::sub(self, rhs)
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::mul(self, rhs)
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn phi_values() {
        assert_eq!(phi(1), 1);
        assert_eq!(phi(2), 1);
        assert_eq!(phi(3), 2);
        assert_eq!(phi(8), 4);
        assert_eq!(phi(36), 12);
        assert_eq!(phi(40), 16);
    }

    #[test]
    fn cyclotomic_polynomials() {
        // Phi_1 = x - 1, Phi_4 = x^2 + 1, Phi_6 = x^2 - x + 1
        assert_eq!(cyclotomic_polynomial(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(
            cyclotomic_polynomial(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(cyclotomic_polynomial(12).len() - 1, 4);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Cyclotomic::root_of_unity(4, 1);
        let sq = i.mul(&i);
        assert_eq!(sq.as_rational().unwrap(), rat(-1));
    }

    #[test]
    fn vanishing_geometric_sum() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let sum = Cyclotomic::one(3).add(&z).add(&z.mul(&z));
        assert!(sum.is_zero());
    }

    #[test]
    fn zeta8_difference_squared_is_minus_two() {
        let z = Cyclotomic::root_of_unity(8, 1);
        let z7 = Cyclotomic::root_of_unity(8, 7);
        let d = z.sub(&z7);
        assert_eq!(d.mul(&d).as_rational().unwrap(), rat(-2));
    }

    #[test]
    fn zeta_power_n_is_one() {
        for n in [1u64, 2, 3, 4, 5, 6, 8, 12, 20, 36] {
            let z = Cyclotomic::root_of_unity(n, 1);
            assert_eq!(z.pow(n as i64).unwrap(), Cyclotomic::one(n), "N={n}");
            // minimal polynomial relation: Phi_N(zeta) = 0
            let phi_n = cyclotomic_polynomial(n);
            let mut acc = Cyclotomic::zero(n);
            for (j, c) in phi_n.iter().enumerate() {
                acc = acc.add(
                    &Cyclotomic::root_of_unity(n, j as i64).scale(&Rat::from_integer(c.clone())),
                );
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta) != 0");
        }
    }

    #[test]
    fn inverse_and_division() {
        let z = Cyclotomic::root_of_unity(12, 5);
        let x = z.add(&Cyclotomic::from_integer(12, 3));
        let inv = x.inverse().unwrap();
        assert_eq!(x.mul(&inv), Cyclotomic::one(12));
        assert!(Cyclotomic::zero(12).inverse().is_err());
    }

    #[test]
    fn galois_composition_and_conjugate() {
        let x = Cyclotomic::root_of_unity(20, 3).add(&Cyclotomic::root_of_unity(20, 7));
        let g3 = x.galois(3).unwrap();
        let g7 = g3.galois(7).unwrap();
        assert_eq!(g7, x.galois(21).unwrap());
        assert_eq!(x.conjugate(), x.galois(-1).unwrap());
        assert!(x.galois(5).is_err()); // gcd(5,20) != 1
    }

    #[test]
    fn embed_preserves_value() {
        let z2 = Cyclotomic::root_of_unity(2, 1);
        let in4 = z2.embed(4).unwrap();
        assert_eq!(in4, Cyclotomic::root_of_unity(4, 2));
        let one = Cyclotomic::one(3);
        assert_eq!(one.embed(12).unwrap(), Cyclotomic::one(12));
        // 1 + zeta_3 + zeta_3^2 = 0 also in Q(zeta_12)
        let z = Cyclotomic::root_of_unity(3, 1);
        let sum = Cyclotomic::one(3).add(&z).add(&z.mul(&z));
        let emb = sum.embed(12).unwrap();
        assert_eq!(emb.as_rational().unwrap(), rat(0));
        assert!(z2.embed(5).is_err());
    }

    #[test]
    fn as_rational_rejects_irrational() {
        let z = Cyclotomic::root_of_unity(5, 1);
        assert!(z.as_rational().is_err());
        assert_eq!(
            Cyclotomic::from_rational(5, ratio(3, 7)).as_rational().unwrap(),
            ratio(3, 7)
        );
    }

    #[test]
    fn display_form() {
        let x = Cyclotomic::from_rational(4, ratio(1, 2)).add(&Cyclotomic::root_of_unity(4, 1));
        assert_eq!(x.to_string(), "1/2 + 1*z  (mod Phi_4)");
    }

    #[test]
    fn float_image_tracks_products() {
        let a = Cyclotomic::root_of_unity(7, 2).add(&Cyclotomic::from_integer(7, 1));
        let b = Cyclotomic::root_of_unity(7, 5).sub(&Cyclotomic::from_integer(7, 2));
        let prod = a.mul(&b);
        let (re, im) = prod.to_complex();
        let (ar, ai) = a.to_complex();
        let (br, bi) = b.to_complex();
        let pre = ar * br - ai * bi;
        let pim = ar * bi + ai * br;
        assert!((re - pre).abs() < 1e-9 * (1.0 + pre.abs()));
        assert!((im - pim).abs() < 1e-9 * (1.0 + pim.abs()));
    }
}
