//! Explicit modules for the extreme rays of `P(n, a)`: a non-negative sum of
//! cyclic modules whose Hilbert series maps under `T` to a positive multiple
//! of the ray.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::{a_hat, family_tail_poly, p_ray, RayLabel};
use crate::error::{Error, Result};
use crate::oracle::{hs_cyclic_power, hs_module_sum, CyclicPowerModule, ModuleSum};
use crate::ratcalc::{binom_rat, lemma_pos_decompose, rat, root_bound, serde_rat, Poly, Rat};
use crate::series::{apply_t, GenFun};

/// `F = F1 + F2` with `F1` a polynomial of degree below `cutoff` and
/// `F2 = t^cutoff sum_s f2(s) t^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitRay {
    pub f1: GenFun,
    pub f2: GenFun,
    pub f2_poly: Poly,
    pub cutoff: usize,
}

/// Largest integer root of `p`, if any.
fn largest_integer_root(p: &Poly) -> Option<i64> {
    p.degree()?;
    let b = root_bound(p);
    (-b..=b).rev().find(|&j| p.eval_int(j).is_zero())
}

/// Split a series-family ray at `cutoff = max(a_hat, 1 + largest root)`.
pub fn split_ray(label: &RayLabel, n: usize, a: i64) -> Result<SplitRay> {
    let (p, _) = family_tail_poly(label, n, a)?;
    let f = p_ray(label, n, a)?;
    let cutoff = largest_integer_root(&p)
        .map_or(a_hat(a), |r| (r + 1).max(a_hat(a))) as usize;
    let f1 = GenFun::polynomial(Poly::new(f.coeffs_upto(cutoff)));
    let f2 = &f - &f1;
    let f2_poly = p.translate(&rat(cutoff as i64));
    Ok(SplitRay {
        f1,
        f2,
        f2_poly,
        cutoff,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub scalar: Rat,
    pub modules: ModuleSum,
    pub working_a: i64,
}

#[derive(Serialize, Deserialize)]
struct SummandWire {
    ell: usize,
    power: usize,
    #[serde(with = "serde_rat")]
    mult: Rat,
}

#[derive(Serialize, Deserialize)]
struct RealizationWire {
    #[serde(with = "serde_rat")]
    scalar: Rat,
    summands: Vec<SummandWire>,
    working_a: i64,
}

impl Serialize for Realization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RealizationWire {
            scalar: self.scalar.clone(),
            summands: self
                .modules
                .summands
                .iter()
                .map(|(m, c)| SummandWire {
                    ell: m.ell,
                    power: m.power,
                    mult: c.clone(),
                })
                .collect(),
            working_a: self.working_a,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Realization {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = RealizationWire::deserialize(d)?;
        if !w.scalar.is_positive() {
            return Err(D::Error::custom("scalar must be positive"));
        }
        let summands = w
            .summands
            .into_iter()
            .map(|s| CyclicPowerModule::new(s.ell, s.power).map(|m| (m, s.mult)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Realization {
            scalar: w.scalar,
            modules: ModuleSum::new(summands).map_err(D::Error::custom)?,
            working_a: w.working_a,
        })
    }
}

/// Multiplicity making `T[S/<x_0..x_{ell-1}>^power]` equal to
/// `t^(power-1) / (1-t)^(n+1-ell)`.
fn unit_mult(module: CyclicPowerModule) -> Rat {
    let CyclicPowerModule { ell, power } = module;
    Rat::one() / (rat(power as i64) * binom_rat((ell + power - 1) as u64, power as u64))
}

/// Realization of an extreme ray of `P(n, a)` with scalar 1.
pub fn realize_p_ray(label: &RayLabel, n: usize, a: i64) -> Result<Realization> {
    // validates the label
    p_ray(label, n, a)?;
    let mut summands = Vec::new();
    match label {
        RayLabel::Power { k } => {
            let m = CyclicPowerModule::new(n + 1, k + 1)?;
            summands.push((m, unit_mult(m)));
        }
        _ => {
            let split = split_ray(label, n, a)?;
            for (j, c) in split.f1.coeffs_upto(split.cutoff).into_iter().enumerate() {
                if !c.is_zero() {
                    let m = CyclicPowerModule::new(n + 1, j + 1)?;
                    summands.push((m, c * unit_mult(m)));
                }
            }
            let coeffs = lemma_pos_decompose(&split.f2_poly)
                .map_err(|e| Error::DecompositionFailed(e.to_string()))?;
            for (k, c) in coeffs.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k >= n {
                    return Err(Error::DecompositionFailed(format!(
                        "f2 term of degree {k} needs a module with no variables"
                    )));
                }
                let m = CyclicPowerModule::new(n - k, split.cutoff + 1)?;
                summands.push((m, c * unit_mult(m)));
            }
        }
    }
    let working_a = summands
        .iter()
        .map(|(m, _)| m.min_a(n))
        .fold(a, i64::max);
    Ok(Realization {
        scalar: Rat::one(),
        modules: ModuleSum::new(summands)?,
        working_a,
    })
}

/// Scale so that every multiplicity is an integer with no common factor;
/// the scalar absorbs the factor.
pub fn clear_denominators(r: &Realization) -> Realization {
    let mult = r
        .modules
        .summands
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let gcd = r
        .modules
        .summands
        .iter()
        .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c.numer() * &mult / c.denom())));
    let factor = if gcd.is_zero() {
        Rat::one()
    } else {
        Rat::new(mult, gcd)
    };
    Realization {
        scalar: &r.scalar * &factor,
        modules: ModuleSum {
            summands: r
                .modules
                .summands
                .iter()
                .map(|(m, c)| (*m, c * &factor))
                .collect(),
        },
        working_a: r.working_a,
    }
}

/// Check `T[sum mult * hs(summand)] = scalar * p_ray(label)` exactly, with
/// every summand series inside `V(n, working_a)` and the sum inside `V(n, a)`.
pub fn verify_realization(r: &Realization, label: &RayLabel, n: usize, a: i64) -> Result<bool> {
    if !r.scalar.is_positive() || r.modules.summands.iter().any(|(_, c)| c.is_negative()) {
        return Ok(false);
    }
    for (m, _) in &r.modules.summands {
        if !hs_cyclic_power(*m, n)?.in_space(n, r.working_a) {
            return Ok(false);
        }
    }
    let sum = hs_module_sum(&r.modules, n)?;
    if !sum.in_space(n, a) {
        return Ok(false);
    }
    Ok(apply_t(&sum, n) == p_ray(label, n, a)?.scale(&r.scalar))
}

/// Smallest positive `c` with `c * g` integral coefficientwise.
pub fn primitive_scale(g: &GenFun) -> Rat {
    let coeffs = g.numer().coeffs();
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = coeffs
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &den / c.denom())));
    if num.is_zero() {
        Rat::one()
    } else {
        Rat::new(den, num)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcalc::{frac, Partition};

    fn lambda(parts: &[u32]) -> RayLabel {
        RayLabel::Lambda {
            parts: Partition::new(parts.to_vec()).unwrap(),
        }
    }

    #[test]
    fn split_examples() {
        let s = split_ray(&lambda(&[0]), 3, -1).unwrap();
        assert_eq!(s.cutoff, 2);
        assert!(s.f1.is_zero());
        assert_eq!(s.f2_poly, Poly::from_roots(&[rat(-1), rat(-2)]));
        let s = split_ray(&RayLabel::Mu { parts: Partition::empty() }, 3, -1).unwrap();
        assert_eq!(s.cutoff, 1);
        assert!(s.f1.is_zero());
        assert_eq!(s.f2_poly, Poly::from_ints(&[1, 1]));
        assert!(split_ray(&RayLabel::Power { k: 0 }, 3, 0).is_err());
        // lambda = (2): zeros at j = 2, 3 with positive values before
        let s = split_ray(&lambda(&[2]), 3, -1).unwrap();
        assert_eq!(s.cutoff, 4);
        assert_eq!(s.f1.coeffs_upto(4), [6, 2, 0, 0].map(rat).to_vec());
    }

    #[test]
    fn realize_examples() {
        let r = realize_p_ray(&lambda(&[0]), 3, -1).unwrap();
        assert_eq!(
            r.modules.summands,
            vec![(CyclicPowerModule { ell: 1, power: 3 }, frac(2, 3))]
        );
        assert!(verify_realization(&r, &lambda(&[0]), 3, -1).unwrap());
        let c = clear_denominators(&r);
        assert_eq!(c.scalar, frac(3, 2));
        assert_eq!(c.modules.summands[0].1, rat(1));
        assert!(verify_realization(&c, &lambda(&[0]), 3, -1).unwrap());

        let r = realize_p_ray(&RayLabel::Power { k: 0 }, 3, 0).unwrap();
        assert_eq!(
            r.modules.summands,
            vec![(CyclicPowerModule { ell: 4, power: 1 }, frac(1, 4))]
        );
        assert!(verify_realization(&r, &RayLabel::Power { k: 0 }, 3, 0).unwrap());
    }

    #[test]
    fn wire_form() {
        let r = realize_p_ray(&lambda(&[0]), 3, -1).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"scalar":"1","summands":[{"ell":1,"power":3,"mult":"2/3"}],"working_a":-1}"#
        );
        assert_eq!(serde_json::from_str::<Realization>(&s).unwrap(), r);
    }

    #[test]
    fn primitive() {
        let g = GenFun::new(1, Poly::constant(frac(1, 3)));
        assert_eq!(primitive_scale(&g), rat(3));
        let g = GenFun::new(1, Poly::from_ints(&[4, 6]));
        assert_eq!(primitive_scale(&g), frac(1, 2));
    }
}
