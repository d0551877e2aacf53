use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, rat, Partition, Rat};

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[k]` is the coefficient of the `k`-th power. Trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients and equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// `c * x^k`.
    pub fn monomial(k: usize, c: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `x - root`.
    pub fn linear_root(root: &Rat) -> Self {
        Poly::new(vec![-root.clone(), Rat::one()])
    }

    /// Monic product of `(x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rat>) -> Self {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, r| acc * Poly::linear_root(r))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rat {
        self.eval(&rat(x))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `p(x) * x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc * self)
    }

    /// `p(alpha * x + beta)`, by Horner's rule.
    pub fn compose_linear(&self, alpha: &Rat, beta: &Rat) -> Poly {
        let inner = Poly::new(vec![beta.clone(), alpha.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc * &inner + Poly::constant(c.clone()))
    }

    /// `p(x + c)`.
    pub fn translate(&self, c: &Rat) -> Poly {
        self.compose_linear(&Rat::one(), c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Quotient and remainder by the monic `x - r`.
    pub fn div_linear(&self, r: &Rat) -> (Poly, Rat) {
        let Some(d) = self.degree() else {
            return (Poly::zero(), Rat::zero());
        };
        let mut q = vec![Rat::zero(); d];
        let mut carry = Rat::zero();
        for k in (0..=d).rev() {
            let v = &self.coeffs[k] + &carry * r;
            if k == 0 {
                return (Poly::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*s")?,
                _ => write!(f, "({c})*s^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `C(s + shift, k) = (s+shift)(s+shift-1)...(s+shift-k+1) / k!` as a
/// polynomial in `s` of degree `k`.
pub fn binom_poly(k: usize, shift: i64) -> Poly {
    let mut p = Poly::one();
    for m in 0..k as i64 {
        p = p * Poly::new(vec![rat(shift - m), Rat::one()]);
    }
    p.scale(&Rat::new(BigInt::one(), factorial(k as u64)))
}

/// `nabla^order q`, where `nabla q(s) = q(s) - q(s-1)`.
pub fn backward_difference(q: &Poly, order: usize) -> Poly {
    let minus_one = -Rat::one();
    let mut p = q.clone();
    for _ in 0..order {
        if p.is_zero() {
            break;
        }
        p = &p - p.translate(&minus_one);
    }
    p
}

/// Monic polynomial of degree `2r` whose roots are the consecutive pairs
/// `lambda_{r-i+1} + 2i - 2`, `lambda_{r-i+1} + 2i - 1` for `i = 1..=r`.
pub fn p_lambda(lambda: &Partition) -> Poly {
    let parts = lambda.parts();
    let r = parts.len();
    let mut p = Poly::one();
    for i in 1..=r {
        let part = parts[r - i] as i64;
        let i = i as i64;
        p = p
            * Poly::linear_root(&rat(part + 2 * i - 2))
            * Poly::linear_root(&rat(part + 2 * i - 1));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcalc::frac;

    #[test]
    fn canonical_trim() {
        let p = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::from_ints(&[0, 0]).degree(), None);
        assert!(Poly::from_ints(&[0]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = Poly::from_ints(&[1, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(a.pow(3), Poly::from_ints(&[1, 3, 3, 1]));
        assert_eq!(a.eval_int(4), rat(5));
    }

    #[test]
    fn composition_and_division() {
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(p.translate(&rat(-1)), Poly::from_ints(&[1, -2, 1]));
        assert_eq!(
            p.compose_linear(&rat(-1), &rat(1)),
            Poly::from_ints(&[1, -2, 1])
        );
        let (q, r) = Poly::from_ints(&[-1, 0, 1]).div_linear(&rat(1));
        assert_eq!(q, Poly::from_ints(&[1, 1]));
        assert_eq!(r, rat(0));
        let (q, r) = Poly::from_ints(&[3, 0, 1]).div_linear(&rat(2));
        assert_eq!(q, Poly::from_ints(&[2, 1]));
        assert_eq!(r, rat(7));
    }

    #[test]
    fn binom_poly_examples() {
        assert_eq!(binom_poly(0, 5), Poly::one());
        assert_eq!(binom_poly(1, 1), Poly::from_ints(&[1, 1]));
        assert_eq!(
            binom_poly(2, 2),
            Poly::new(vec![rat(1), frac(3, 2), frac(1, 2)])
        );
    }

    #[test]
    fn backward_difference_examples() {
        let s2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(backward_difference(&s2, 1), Poly::from_ints(&[-1, 2]));
        assert_eq!(backward_difference(&s2, 0), s2);
        assert_eq!(backward_difference(&Poly::from_ints(&[7]), 1), Poly::zero());
        // nabla C(n+s, n) = C(n-1+s, n-1), n = 3
        assert_eq!(backward_difference(&binom_poly(3, 3), 1), binom_poly(2, 2));
    }

    #[test]
    fn p_lambda_examples() {
        assert_eq!(p_lambda(&Partition::empty()), Poly::one());
        let i = 3;
        let expected = Poly::from_roots(&[rat(i), rat(i + 1)]);
        assert_eq!(p_lambda(&Partition::new(vec![i as u32]).unwrap()), expected);
        let expected = Poly::from_roots(&[rat(1), rat(2), rat(3), rat(4)]);
        assert_eq!(p_lambda(&Partition::new(vec![1, 1]).unwrap()), expected);
    }
}
