use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{rat, rat_to_f64, Poly, Rat};
use crate::error::{Error, Result};

/// Outcome of [`integer_nonneg_on_ray`]. `witness` is the smallest integer
/// `j >= start` with `p(j) < 0`, present iff `holds` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegDecision {
    pub holds: bool,
    pub witness: Option<i64>,
}

/// Integer `B` with every complex root of `p` strictly inside `|z| < B`.
///
/// The Cauchy bound `1 + max_k |c_k / lead|` is exact but grows like the
/// coefficients; the Fujiwara bound `2 max_k |c_(d-k) / lead|^(1/k)` grows
/// like the roots. The latter is evaluated in floating point and padded, and
/// the smaller of the two is used.
pub fn root_bound(p: &Poly) -> i64 {
    let lead = p.lead();
    let deg = p.degree().unwrap_or(0);
    let ratios: Vec<Rat> = p.coeffs()[..deg].iter().map(|c| (c / &lead).abs()).collect();
    let max = ratios.iter().max().cloned().unwrap_or_else(Rat::zero);
    let b = max + rat(1);
    let (q, r) = b.numer().div_rem(b.denom());
    let cauchy = if r.is_zero() { q } else { q + 1 };
    let cauchy = cauchy.to_i64().unwrap_or(i64::MAX / 4);

    let fujiwara = (1..=deg)
        .map(|k| {
            let mut x = rat_to_f64(&ratios[deg - k]);
            if k == deg {
                x /= 2.0;
            }
            x.powf(1.0 / k as f64)
        })
        .fold(0.0f64, f64::max);
    let padded = (2.0 * fujiwara * 1.001).ceil() + 1.0;
    if padded.is_finite() && padded < cauchy as f64 {
        padded as i64
    } else {
        cauchy
    }
}

/// Decide whether `p(j) >= 0` for every integer `j >= start`.
///
/// Outside `[-B, B]`, where `B` bounds the roots, the sign of `p` is
/// constant, so a finite scan decides the question exactly.
pub fn integer_nonneg_on_ray(p: &Poly, start: i64) -> NonnegDecision {
    let fail = |j| NonnegDecision {
        holds: false,
        witness: Some(j),
    };
    if p.is_zero() {
        return NonnegDecision {
            holds: true,
            witness: None,
        };
    }
    let bound = root_bound(p);
    let mut lo = start;
    if start < -bound {
        if p.eval_int(start).is_negative() {
            return fail(start);
        }
        lo = -bound;
    }
    let hi = lo.max(bound);
    for j in lo..=hi {
        if p.eval_int(j).is_negative() {
            return fail(j);
        }
    }
    debug_assert!(p.lead().is_positive());
    NonnegDecision {
        holds: true,
        witness: None,
    }
}

/// Write `f` as `sum_k c_k C(s+k, k)` with every `c_k >= 0`.
///
/// `f` must have degree `r`, exactly `r` distinct negative integer roots and
/// a positive leading coefficient. The roots are peeled from the smallest
/// upward: if `f = (s + d + l) g` with `-d-l` the smallest root of a degree
/// `d` polynomial, the coefficients of `f` are `k c'_{k-1} + (d-1-k+l) c'_k`
/// in terms of those of `g`.
pub fn lemma_pos_decompose(f: &Poly) -> Result<Vec<Rat>> {
    let Some(r) = f.degree() else {
        return Err(Error::LemmaPosPrecondition("zero polynomial".into()));
    };
    let lead = f.lead();
    if !lead.is_positive() {
        return Err(Error::LemmaPosPrecondition(format!(
            "leading coefficient {lead} is not positive"
        )));
    }
    let mut roots = negative_integer_roots(f)?;
    if roots.len() != r {
        return Err(Error::LemmaPosPrecondition(format!(
            "degree {r} polynomial has only {} distinct negative integer roots",
            roots.len()
        )));
    }
    // ascending: roots[0] is the smallest
    roots.sort();
    let mut c = vec![lead];
    for (step, root) in roots.iter().rev().enumerate() {
        let d = (step + 1) as i64;
        let l = -root - d;
        debug_assert!(l >= 0);
        let mut next = vec![Rat::zero(); c.len() + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let ki = k as i64;
            if k >= 1 {
                *slot += &c[k - 1] * rat(ki);
            }
            if k < c.len() {
                *slot += &c[k] * rat(d - 1 - ki + l);
            }
        }
        c = next;
    }
    Ok(c)
}

/// Distinct negative integer roots of `f`; errors on a repeated root.
fn negative_integer_roots(f: &Poly) -> Result<Vec<i64>> {
    let bound = root_bound(f);
    let mut rest = f.clone();
    let mut roots = Vec::new();
    for j in 1..=bound {
        let x = rat(-j);
        let (q, rem) = rest.div_linear(&x);
        if rem.is_zero() && rest.degree().unwrap_or(0) > 0 {
            if q.degree().unwrap_or(0) > 0 && q.eval(&x).is_zero() {
                return Err(Error::LemmaPosPrecondition(format!(
                    "repeated root {}",
                    -j
                )));
            }
            roots.push(-j);
            rest = q;
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::LemmaPosPrecondition(format!(
            "factor {rest} has roots that are not distinct negative integers"
        )));
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcalc::binom_poly;

    fn recombine(c: &[Rat]) -> Poly {
        c.iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (k, ck)| acc + binom_poly(k, k as i64).scale(ck))
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            lemma_pos_decompose(&Poly::from_ints(&[1, 1])).unwrap(),
            vec![rat(0), rat(1)]
        );
        let f = Poly::from_roots(&[rat(-1), rat(-2)]);
        assert_eq!(lemma_pos_decompose(&f).unwrap(), vec![rat(0), rat(0), rat(2)]);
        let f = Poly::from_roots(&[rat(-2), rat(-3)]);
        let c = lemma_pos_decompose(&f).unwrap();
        assert_eq!(c, vec![rat(2), rat(2), rat(2)]);
        assert_eq!(recombine(&c), f);
        assert_eq!(lemma_pos_decompose(&Poly::from_ints(&[5])).unwrap(), vec![rat(5)]);
    }

    #[test]
    fn decompose_rejects_bad_input() {
        assert!(lemma_pos_decompose(&Poly::zero()).is_err());
        // negative leading coefficient
        assert!(lemma_pos_decompose(&Poly::from_ints(&[-1, -1])).is_err());
        // non-negative root
        assert!(lemma_pos_decompose(&Poly::from_ints(&[0, 1])).is_err());
        // repeated root
        assert!(lemma_pos_decompose(&Poly::from_roots(&[rat(-1), rat(-1)])).is_err());
        // irreducible quadratic
        assert!(lemma_pos_decompose(&Poly::from_ints(&[1, 0, 1])).is_err());
    }

    #[test]
    fn nonneg_examples() {
        let s2 = Poly::from_ints(&[0, 0, 1]);
        assert!(integer_nonneg_on_ray(&s2, -5).holds);
        let p = Poly::from_roots(&[rat(2), rat(3)]);
        assert!(integer_nonneg_on_ray(&p, 0).holds);
        let p = Poly::from_ints(&[-10, 1]);
        assert_eq!(
            integer_nonneg_on_ray(&p, 0),
            NonnegDecision {
                holds: false,
                witness: Some(0)
            }
        );
        assert!(integer_nonneg_on_ray(&Poly::zero(), 3).holds);
        // negative lead: first violation is found
        let p = Poly::from_ints(&[20, 0, -1]);
        assert_eq!(integer_nonneg_on_ray(&p, 0).witness, Some(5));
        // roots 2.5 and 2.6 straddle no integer
        let p = Poly::from_roots(&[Rat::new(5.into(), 2.into()), Rat::new(13.into(), 5.into())]);
        assert!(integer_nonneg_on_ray(&p, -100).holds);
        let p = Poly::from_roots(&[rat(-7), rat(-4)]);
        assert_eq!(integer_nonneg_on_ray(&p, -100).witness, Some(-6));
    }
}
