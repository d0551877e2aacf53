//! Rational generating functions `numer(t) / (1-t)^den_exp` and the linear
//! algebra of the spaces `V(n, a)`.
//!
//! `V(n, a)` is the space of sequences whose generating function is
//! `b(t) / (1-t)^n` with `deg b <= a + n`. After dividing out common factors
//! of `(1-t)`, a series `N/(1-t)^d` lies in `V(n, a)` exactly when `d <= n`
//! and `deg N - d <= a`, so membership is independent of how the series is
//! stored.

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratcalc::{backward_difference, binom, binom_poly, factorial, rat, Poly, Rat};

/// `numer(t) / (1-t)^den_exp` in lowest terms.
///
/// Canonical: either `den_exp == 0` or `numer(1) != 0`; the zero series has
/// `den_exp == 0`. Structural equality is therefore equality of series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenFun {
    den_exp: usize,
    numer: Poly,
}

impl GenFun {
    pub fn new(den_exp: usize, numer: Poly) -> Self {
        let mut den_exp = den_exp;
        let mut numer = numer;
        if numer.is_zero() {
            return GenFun::zero();
        }
        while den_exp > 0 {
            let (q, rem) = numer.div_linear(&Rat::one());
            if !rem.is_zero() {
                break;
            }
            // numer = (t - 1) q = (1 - t)(-q)
            numer = -q;
            den_exp -= 1;
        }
        GenFun { den_exp, numer }
    }

    pub fn zero() -> Self {
        GenFun {
            den_exp: 0,
            numer: Poly::zero(),
        }
    }

    pub fn one() -> Self {
        GenFun::polynomial(Poly::one())
    }

    pub fn polynomial(p: Poly) -> Self {
        GenFun::new(0, p)
    }

    /// `t^k`.
    pub fn t_pow(k: usize) -> Self {
        GenFun::polynomial(Poly::monomial(k, Rat::one()))
    }

    /// `(1-t)^i` for any integer `i`.
    pub fn one_minus_t_pow(i: i64) -> Self {
        if i >= 0 {
            GenFun::polynomial(one_minus_t().pow(i as usize))
        } else {
            GenFun::new((-i) as usize, Poly::one())
        }
    }

    pub fn den_exp(&self) -> usize {
        self.den_exp
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// `deg numer - den_exp`; `None` for the zero series.
    pub fn excess(&self) -> Option<i64> {
        self.numer
            .degree()
            .map(|d| d as i64 - self.den_exp as i64)
    }

    pub fn in_space(&self, n: usize, a: i64) -> bool {
        match self.excess() {
            None => true,
            Some(e) => self.den_exp <= n && e <= a,
        }
    }

    pub fn require_space(&self, n: usize, a: i64) -> Result<()> {
        if self.in_space(n, a) {
            Ok(())
        } else {
            Err(Error::NotInSpace { n, a })
        }
    }

    /// Numerator over `(1-t)^n`; `None` if `n < den_exp`.
    pub fn numer_over(&self, n: usize) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let extra = n.checked_sub(self.den_exp)?;
        Some(&self.numer * one_minus_t().pow(extra))
    }

    pub fn scale(&self, c: &Rat) -> GenFun {
        GenFun::new(self.den_exp, self.numer.scale(c))
    }

    /// The `j`-th power-series coefficient.
    pub fn coeff_at(&self, j: usize) -> Rat {
        if self.den_exp == 0 {
            return self.numer.coeff(j);
        }
        let d = self.den_exp as u64;
        self.numer
            .coeffs()
            .iter()
            .enumerate()
            .take(j + 1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c * Rat::from_integer(binom(d - 1 + (j - k) as u64, d - 1)))
            .sum()
    }

    pub fn coeffs_upto(&self, len: usize) -> Vec<Rat> {
        (0..len).map(|j| self.coeff_at(j)).collect()
    }
}

fn one_minus_t() -> Poly {
    Poly::from_ints(&[1, -1])
}

impl Add<&GenFun> for &GenFun {
    type Output = GenFun;
    fn add(self, rhs: &GenFun) -> GenFun {
        let d = self.den_exp.max(rhs.den_exp);
        let a = self.numer_over(d).expect("d >= den_exp");
        let b = rhs.numer_over(d).expect("d >= den_exp");
        GenFun::new(d, a + b)
    }
}

impl Sub<&GenFun> for &GenFun {
    type Output = GenFun;
    fn sub(self, rhs: &GenFun) -> GenFun {
        self + &(-rhs)
    }
}

impl Neg for &GenFun {
    type Output = GenFun;
    fn neg(self) -> GenFun {
        GenFun {
            den_exp: self.den_exp,
            numer: -&self.numer,
        }
    }
}

impl Add for GenFun {
    type Output = GenFun;
    fn add(self, rhs: GenFun) -> GenFun {
        &self + &rhs
    }
}

impl Sub for GenFun {
    type Output = GenFun;
    fn sub(self, rhs: GenFun) -> GenFun {
        &self - &rhs
    }
}

impl std::iter::Sum for GenFun {
    fn sum<I: Iterator<Item = GenFun>>(iter: I) -> GenFun {
        iter.fold(GenFun::zero(), |acc, g| &acc + &g)
    }
}

/// JSON wire form: `{"den_exp": n, "numer": ["p/q", ...]}`, index = power of
/// `t`. Deserialization canonicalizes.
#[derive(Serialize, Deserialize)]
struct GenFunWire {
    den_exp: usize,
    #[serde(with = "crate::ratcalc::serde_rat::vec")]
    numer: Vec<Rat>,
}

impl Serialize for GenFun {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GenFunWire {
            den_exp: self.den_exp,
            numer: self.numer.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenFun {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = GenFunWire::deserialize(d)?;
        Ok(GenFun::new(w.den_exp, Poly::new(w.numer)))
    }
}

/// Polynomial `q` in `s` with `q(j) = coeff_at(g, j)` for every `j > a`.
pub fn hilbert_polynomial(g: &GenFun, a: i64) -> Result<Poly> {
    if let Some(e) = g.excess() {
        if e > a {
            return Err(Error::NotInSpace {
                n: g.den_exp(),
                a,
            });
        }
    }
    let d = g.den_exp();
    if d == 0 {
        return Ok(Poly::zero());
    }
    // N_k t^k / (1-t)^d contributes C(j - k + d - 1, d - 1), a polynomial in j
    // for j >= k - d + 1, which covers every j > a.
    Ok(g
        .numer()
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Poly::zero(), |acc, (k, c)| {
            acc + binom_poly(d - 1, d as i64 - 1 - k as i64).scale(c)
        }))
}

/// Generating function of `h(j) = p(j)` for `j >= start`, `h(j) = 0` below.
///
/// `p(u + start)` is expanded in the triangular basis `C(u + k, k)`, and
/// `sum_{j >= start} C(j - start + k, k) t^j = t^start / (1-t)^(k+1)`.
pub fn poly_tail_to_genfun(p: &Poly, start: usize) -> GenFun {
    let Some(deg) = p.degree() else {
        return GenFun::zero();
    };
    let coords = binomial_basis_coords(&p.translate(&rat(start as i64)));
    let numer = coords
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (k, c)| {
            acc + one_minus_t().pow(deg - k).scale(c)
        })
        .shift_up(start);
    GenFun::new(deg + 1, numer)
}

/// Coordinates `c_k` with `q(u) = sum_k c_k C(u + k, k)`, by back-substitution
/// from the top degree.
pub fn binomial_basis_coords(q: &Poly) -> Vec<Rat> {
    let Some(deg) = q.degree() else {
        return Vec::new();
    };
    let mut rest = q.clone();
    let mut coords = vec![Rat::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = rest.coeff(k) * Rat::from_integer(factorial(k as u64));
        if !c.is_zero() {
            rest = rest - binom_poly(k, k as i64).scale(&c);
        }
        coords[k] = c;
    }
    debug_assert!(rest.is_zero());
    coords
}

/// `T[h](j) = (n+j+1) h(j) - (j+1) h(j+1)`, computed as the differential
/// operator `(n+1) - (1-t) d/dt`. On `N/(1-t)^d` this gives
/// `((n+1-d) N - (1-t) N') / (1-t)^d`.
pub fn apply_t(g: &GenFun, n: usize) -> GenFun {
    if g.is_zero() {
        return GenFun::zero();
    }
    let d = g.den_exp() as i64;
    let numer = g.numer();
    let lhs = numer.scale(&rat(n as i64 + 1 - d));
    let rhs = one_minus_t() * numer.derivative();
    GenFun::new(g.den_exp(), lhs - rhs)
}

/// The unique `h` in `V(n, a)` with `apply_t(h, n) = g`.
///
/// In the eigenbasis `(1-t)^i`, `-n <= i <= a`, `T` acts diagonally with
/// eigenvalue `n+1+i >= 1`. Writing the numerator over `(1-t)^n` as a
/// polynomial in `u = 1 - t`, the coefficient of `u^p` carries eigenvalue
/// `p + 1`.
pub fn invert_t(g: &GenFun, n: usize, a: i64) -> Result<GenFun> {
    if a < -(n as i64) {
        return Err(Error::InvalidParameter(format!("a = {a} < -n = -{n}")));
    }
    g.require_space(n, a)?;
    let numer = g.numer_over(n).expect("den_exp <= n");
    let minus_one = -Rat::one();
    let in_u = numer.compose_linear(&minus_one, &Rat::one());
    let divided = Poly::new(
        in_u.coeffs()
            .iter()
            .enumerate()
            .map(|(p, c)| c / rat(p as i64 + 1))
            .collect(),
    );
    let back = divided.compose_linear(&minus_one, &Rat::one());
    Ok(GenFun::new(n, back))
}

/// Coordinates of `h` in `V(n+1, m)` with respect to the triangular basis
/// `1, t, ..., t^m, t^(m+1)/(1-t), ..., t^(m+1)/(1-t)^(n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RCoordinates {
    /// `c_0 ... c_m`, equal to `h(0) ... h(m)`.
    #[serde(with = "crate::ratcalc::serde_rat::vec")]
    pub head: Vec<Rat>,
    /// `c_{-1} ... c_{-n-1}`, equal to `nabla^i q_h(m)` for `i = 0..=n`.
    #[serde(with = "crate::ratcalc::serde_rat::vec")]
    pub tail: Vec<Rat>,
}

pub fn r_coordinates(g: &GenFun, n: usize, m: usize) -> Result<RCoordinates> {
    g.require_space(n + 1, m as i64)?;
    let q = hilbert_polynomial(g, m as i64)?;
    let head = g.coeffs_upto(m + 1);
    let tail = (0..=n)
        .map(|i| backward_difference(&q, i).eval_int(m as i64))
        .collect();
    Ok(RCoordinates { head, tail })
}

/// Inverse of [`r_coordinates`].
pub fn from_r_coordinates(coords: &RCoordinates, m: usize) -> GenFun {
    let head = GenFun::polynomial(Poly::new(coords.head.clone()));
    let tail: GenFun = coords
        .tail
        .iter()
        .enumerate()
        .map(|(i, c)| GenFun::new(i + 1, Poly::monomial(m + 1, c.clone())))
        .sum();
    &head + &tail
}

/// Coordinates in the eigenbasis of `T`: entry `p` is the coefficient of
/// `(1-t)^(p-n)`.
pub fn eigen_coordinates(g: &GenFun, n: usize) -> Option<Vec<Rat>> {
    let numer = g.numer_over(n)?;
    let minus_one = -Rat::one();
    Some(numer.compose_linear(&minus_one, &Rat::one()).coeffs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcalc::frac;

    fn gf(den: usize, numer: &[i64]) -> GenFun {
        GenFun::new(den, Poly::from_ints(numer))
    }

    #[test]
    fn canonical_form_divides_common_factors() {
        // (1 - t^2)/(1-t)^3 = (1+t)/(1-t)^2
        let g = gf(3, &[1, 0, -1]);
        assert_eq!(g.den_exp(), 2);
        assert_eq!(g.numer(), &Poly::from_ints(&[1, 1]));
        assert_eq!(gf(2, &[1, -2, 1]), GenFun::one());
        assert_eq!(gf(4, &[]), GenFun::zero());
    }

    #[test]
    fn coeff_at_examples() {
        assert_eq!(gf(3, &[1]).coeff_at(2), rat(6));
        // S/m^2, n = 3
        let g = gf(0, &[1, 4]);
        assert_eq!(g.coeffs_upto(3), vec![rat(1), rat(4), rat(0)]);
        assert_eq!(gf(2, &[1, 2]).coeff_at(3), rat(10));
    }

    #[test]
    fn hilbert_polynomial_examples() {
        let n = 3;
        let q = hilbert_polynomial(&gf(n + 1, &[1]), 0).unwrap();
        assert_eq!(q, binom_poly(3, 3));
        assert_eq!(hilbert_polynomial(&gf(0, &[1, 4, 6]), 2).unwrap(), Poly::zero());
        let g = gf(2, &[1, 2, 3]);
        let q = hilbert_polynomial(&g, 2).unwrap();
        // Lagrange on j = 3, 4: h(3) = 4+2*3+3*2 = 16, h(4) = 5+8+9 = 22
        let lagrange = Poly::from_ints(&[-2, 6]);
        assert_eq!(q, lagrange);
        for j in 3..=8 {
            assert_eq!(q.eval_int(j as i64), g.coeff_at(j));
        }
        assert!(hilbert_polynomial(&g, -1).is_err());
    }

    #[test]
    fn tail_examples() {
        assert_eq!(poly_tail_to_genfun(&Poly::one(), 0), gf(1, &[1]));
        assert_eq!(poly_tail_to_genfun(&Poly::var(), 0), gf(2, &[0, 1]));
        let p = Poly::from_ints(&[1, 1]);
        let g = poly_tail_to_genfun(&p, 3);
        assert_eq!(
            g.coeffs_upto(7),
            [0, 0, 0, 4, 5, 6, 7].map(rat).to_vec()
        );
        assert_eq!(poly_tail_to_genfun(&Poly::zero(), 2), GenFun::zero());
    }

    #[test]
    fn t_on_eigenvectors_and_cyclic_modules() {
        let n = 3;
        for i in -(n as i64)..=3 {
            let v = GenFun::one_minus_t_pow(i);
            assert_eq!(apply_t(&v, n), v.scale(&rat(n as i64 + 1 + i)));
        }
        // S/<x_0,...,x_{l-1}>^i maps to i C(l-1+i, i) t^(i-1) (1-t)^(l-1-n)
        for ell in 1..=n + 1 {
            for i in 1..=4usize {
                let numer = Poly::new(
                    (0..i)
                        .map(|k| Rat::from_integer(binom((ell - 1 + k) as u64, k as u64)))
                        .collect(),
                );
                let hs = GenFun::new(n + 1 - ell, numer);
                let scalar = rat(i as i64) * Rat::from_integer(binom((ell - 1 + i) as u64, i as u64));
                let expected = GenFun::new(n + 1 - ell, Poly::monomial(i - 1, scalar));
                assert_eq!(apply_t(&hs, n), expected);
            }
        }
        assert_eq!(apply_t(&GenFun::zero(), 2), GenFun::zero());
    }

    #[test]
    fn invert_t_examples() {
        let n = 3;
        // sum j t^j
        let g = gf(2, &[0, 1]);
        let h = invert_t(&g, n, -1).unwrap();
        let displayed = &gf(1, &[-2]) + &gf(2, &[3]);
        assert_eq!(h, displayed.scale(&frac(1, 6)));
        assert_eq!(apply_t(&h, n), g);
        for i in 0..5i64 {
            let g = poly_tail_to_genfun(&Poly::from_roots(&[rat(i), rat(i + 1)]), 0);
            let h = invert_t(&g, n, -1).unwrap();
            let expected = GenFun::new(1, Poly::constant(frac((i + 1) * (i + 2), 3)))
                + gf(2, &[-(i + 2)])
                + gf(3, &[2]);
            assert_eq!(h, expected);
        }
        assert!(invert_t(&gf(4, &[1]), 3, 0).is_err());
    }

    #[test]
    fn r_coordinate_examples() {
        // h(j) = 3j + 1
        let g = gf(2, &[1, 2]);
        let c = r_coordinates(&g, 3, 2).unwrap();
        assert_eq!(c.head, [1, 4, 7].map(rat).to_vec());
        assert_eq!(c.tail, [7, 3, 0, 0].map(rat).to_vec());
        assert_eq!(from_r_coordinates(&c, 2), g);
        // S/m^(m+1), n = 3, m = 2: 1 + 4t + 10t^2
        let g = gf(0, &[1, 4, 10]);
        let c = r_coordinates(&g, 3, 2).unwrap();
        assert_eq!(c.head, [1, 4, 10].map(rat).to_vec());
        assert!(c.tail.iter().all(Zero::is_zero));
        let c = r_coordinates(&GenFun::zero(), 2, 1).unwrap();
        assert!(c.head.iter().chain(&c.tail).all(Zero::is_zero));
        assert!(r_coordinates(&gf(5, &[1]), 3, 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = GenFun::new(2, Poly::new(vec![frac(1, 2), rat(-3)]));
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"den_exp":2,"numer":["1/2","-3"]}"#);
        assert_eq!(serde_json::from_str::<GenFun>(&s).unwrap(), g);
        let g: GenFun = serde_json::from_str(r#"{"den_exp":2,"numer":["1","-1"]}"#).unwrap();
        assert_eq!(g, gf(1, &[1]));
    }
}
