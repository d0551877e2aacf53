//! Ground-truth Hilbert functions.
//!
//! [`hf_monomial_quotient`] counts standard monomials by brute force and
//! shares no code with the closed forms in [`hs_cyclic_power`]; the two are
//! compared in the test suites.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cones::Certificate;
use crate::error::{Error, Result};
use crate::ratcalc::{binom, rat, Poly, Rat};
use crate::series::GenFun;

/// Identifier of the generator behind [`random_monomial_ideal`], reported in
/// campaign metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng/rand_chacha-0.9";

/// Monomial ideal in `nvars` variables, kept minimally generated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidParameter("nvars must be >= 1".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != nvars) {
            return Err(Error::InvalidParameter(format!(
                "generator {g:?} does not have {nvars} exponents"
            )));
        }
        let mut gens = gens;
        gens.sort_by_key(|g| (g.iter().sum::<u32>(), g.clone()));
        gens.dedup();
        let mut minimal: Vec<Vec<u32>> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|m| divides(m, &g)) {
                minimal.push(g);
            }
        }
        Ok(MonomialIdeal {
            nvars,
            gens: minimal,
        })
    }

    /// `<x_0, ..., x_{ell-1}>^power` in `nvars` variables.
    pub fn variable_power(nvars: usize, ell: usize, power: u32) -> Result<Self> {
        if ell > nvars {
            return Err(Error::InvalidParameter(format!("ell = {ell} > nvars = {nvars}")));
        }
        let gens = compositions(ell, power)
            .into_iter()
            .map(|mut e| {
                e.resize(nvars, 0);
                e
            })
            .collect();
        MonomialIdeal::new(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn contains(&self, monomial: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, monomial))
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            nvars: usize,
            gens: Vec<Vec<u32>>,
        }
        let w = Wire::deserialize(d)?;
        MonomialIdeal::new(w.nvars, w.gens).map_err(serde::de::Error::custom)
    }
}

/// All exponent vectors of length `parts` summing to `total`.
fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, parts: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == parts {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            go(prefix, parts, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(&mut Vec::with_capacity(parts), parts, total, &mut out);
    out
}

/// Number of degree-`j` monomials outside `ideal`.
pub fn hf_monomial_quotient(ideal: &MonomialIdeal, j: u32) -> u64 {
    compositions(ideal.nvars, j)
        .iter()
        .filter(|m| !ideal.contains(m))
        .count() as u64
}

/// `S / <x_0, ..., x_{ell-1}>^power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicPowerModule {
    pub ell: usize,
    pub power: usize,
}

impl CyclicPowerModule {
    pub fn new(ell: usize, power: usize) -> Result<Self> {
        if ell == 0 || power == 0 {
            return Err(Error::InvalidParameter(format!(
                "cyclic module needs ell >= 1 and power >= 1, got ({ell}, {power})"
            )));
        }
        Ok(CyclicPowerModule { ell, power })
    }

    /// Smallest `a` with the Hilbert series in `V(n, a)`.
    pub fn min_a(&self, n: usize) -> i64 {
        self.power as i64 + self.ell as i64 - n as i64 - 2
    }
}

/// `(1-t)^(ell-1-n) * sum_{k < power} C(ell-1+k, k) t^k`.
pub fn hs_cyclic_power(module: CyclicPowerModule, n: usize) -> Result<GenFun> {
    let CyclicPowerModule { ell, power } = module;
    if ell == 0 || ell > n + 1 || power == 0 {
        return Err(Error::InvalidParameter(format!(
            "cyclic module ({ell}, {power}) invalid for n = {n}"
        )));
    }
    let numer = Poly::new(
        (0..power)
            .map(|k| Rat::from_integer(binom((ell - 1 + k) as u64, k as u64)))
            .collect(),
    );
    Ok(GenFun::new(n + 1 - ell, numer))
}

/// Direct sum with non-negative rational multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleSum {
    pub summands: Vec<(CyclicPowerModule, Rat)>,
}

impl ModuleSum {
    pub fn new(summands: Vec<(CyclicPowerModule, Rat)>) -> Result<Self> {
        if let Some((m, c)) = summands.iter().find(|(_, c)| c.is_negative()) {
            return Err(Error::InvalidParameter(format!(
                "negative multiplicity {c} for {m:?}"
            )));
        }
        Ok(ModuleSum { summands })
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

pub fn hs_module_sum(ms: &ModuleSum, n: usize) -> Result<GenFun> {
    ms.summands
        .iter()
        .map(|(m, c)| hs_cyclic_power(*m, n).map(|g| g.scale(c)))
        .sum()
}

pub fn hf_module_sum(ms: &ModuleSum, n: usize, j: usize) -> Result<Rat> {
    ms.summands.iter().try_fold(Rat::zero(), |acc, (m, c)| {
        Ok(acc + c * hs_cyclic_power(*m, n)?.coeff_at(j))
    })
}

/// `(n+j+1) h(j) >= (j+1) h(j+1)` for each consecutive pair of `h`; the
/// certificate names the first failing `j`.
pub fn macaulay_check(h: &[Rat], n: usize) -> Certificate {
    for (j, w) in h.windows(2).enumerate() {
        let lhs = rat((n + j + 1) as i64) * &w[0];
        let rhs = rat(j as i64 + 1) * &w[1];
        if lhs < rhs {
            return Certificate::facet(j);
        }
    }
    Certificate::member()
}

/// Seeded random ideal: `ngens` exponent vectors drawn uniformly from all
/// vectors of total degree in `[1, maxdeg]`, then minimalized.
pub fn random_monomial_ideal(
    nvars: usize,
    maxdeg: u32,
    ngens: usize,
    seed: u64,
) -> Result<MonomialIdeal> {
    if nvars == 0 || maxdeg == 0 {
        return Err(Error::InvalidParameter(
            "random ideal needs nvars >= 1 and maxdeg >= 1".into(),
        ));
    }
    let pool: Vec<Vec<u32>> = (1..=maxdeg).flat_map(|d| compositions(nvars, d)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = (0..ngens)
        .map(|_| pool[rng.random_range(0..pool.len())].clone())
        .collect();
    MonomialIdeal::new(nvars, gens)
}

/// Parameters of a seeded Macaulay campaign. Trial `t` draws its ideal with
/// seed `seed + t`, so any trial reproduces on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub vars: usize,
    pub maxdeg: u32,
    pub gens: usize,
    pub trials: usize,
    pub seed: u64,
    pub degree_limit: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignFailure {
    pub trial: usize,
    pub seed: u64,
    pub ideal: MonomialIdeal,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub rng: String,
    pub passed: usize,
    pub failures: Vec<CampaignFailure>,
}

/// Brute-force Hilbert function of `S/I` in degrees `0..=degree_limit`,
/// checked against the Macaulay inequalities with `n = nvars - 1`.
pub fn macaulay_trial(ideal: &MonomialIdeal, degree_limit: u32) -> Certificate {
    let h: Vec<Rat> = (0..=degree_limit)
        .map(|j| Rat::from_integer(hf_monomial_quotient(ideal, j).into()))
        .collect();
    macaulay_check(&h, ideal.nvars() - 1)
}

pub fn macaulay_campaign(config: CampaignConfig) -> Result<CampaignReport> {
    let mut passed = 0;
    let mut failures = Vec::new();
    for trial in 0..config.trials {
        let seed = config.seed.wrapping_add(trial as u64);
        let ideal = random_monomial_ideal(config.vars, config.maxdeg, config.gens, seed)?;
        let certificate = macaulay_trial(&ideal, config.degree_limit);
        if certificate.member {
            passed += 1;
        } else {
            failures.push(CampaignFailure {
                trial,
                seed,
                ideal,
                certificate,
            });
        }
    }
    Ok(CampaignReport {
        config,
        rng: RNG_ALGORITHM.to_string(),
        passed,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximal_ideal_quotient() {
        let m = MonomialIdeal::variable_power(3, 3, 1).unwrap();
        assert_eq!(hf_monomial_quotient(&m, 0), 1);
        assert!((1..6).all(|j| hf_monomial_quotient(&m, j) == 0));
    }

    #[test]
    fn small_quotients() {
        let i = MonomialIdeal::new(2, vec![vec![2, 0], vec![1, 1]]).unwrap();
        let h: Vec<u64> = (0..5).map(|j| hf_monomial_quotient(&i, j)).collect();
        assert_eq!(h, vec![1, 2, 1, 1, 1]);
        let i = MonomialIdeal::new(2, vec![vec![1, 1]]).unwrap();
        assert!((1..8).all(|j| hf_monomial_quotient(&i, j) == 2));
    }

    #[test]
    fn minimalization() {
        let i = MonomialIdeal::new(2, vec![vec![2, 1], vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(i.gens(), &[vec![1, 0]]);
        assert!(MonomialIdeal::new(2, vec![vec![1]]).is_err());
        let j: MonomialIdeal = serde_json::from_str(r#"{"nvars":2,"gens":[[3,0],[1,0]]}"#).unwrap();
        assert_eq!(j.gens(), &[vec![1, 0]]);
    }

    #[test]
    fn cyclic_closed_forms() {
        let n = 3;
        let g = hs_cyclic_power(CyclicPowerModule::new(4, 2).unwrap(), n).unwrap();
        assert_eq!(g, GenFun::polynomial(Poly::from_ints(&[1, 4])));
        let g = hs_cyclic_power(CyclicPowerModule::new(1, 1).unwrap(), n).unwrap();
        assert_eq!(g, GenFun::new(3, Poly::one()));
        let g = hs_cyclic_power(CyclicPowerModule::new(2, 3).unwrap(), n).unwrap();
        assert_eq!(g, GenFun::new(2, Poly::from_ints(&[1, 2, 3])));
        assert!(hs_cyclic_power(CyclicPowerModule { ell: 5, power: 1 }, n).is_err());
    }

    #[test]
    fn module_sums() {
        let n = 3;
        let m2 = CyclicPowerModule::new(4, 2).unwrap();
        let single = ModuleSum::new(vec![(m2, rat(1))]).unwrap();
        assert_eq!(hf_module_sum(&single, n, 1).unwrap(), rat(4));
        let double = ModuleSum::new(vec![(m2, rat(2))]).unwrap();
        assert_eq!(hf_module_sum(&double, n, 1).unwrap(), rat(8));
        assert_eq!(hf_module_sum(&ModuleSum::default(), n, 3).unwrap(), rat(0));
        assert!(ModuleSum::new(vec![(m2, rat(-1))]).is_err());
    }

    #[test]
    fn macaulay_examples() {
        let h = [1, 2, 1, 1].map(rat);
        assert!(macaulay_check(&h, 1).member);
        let n = 3;
        let h = [1, n as i64 + 2, 0].map(rat);
        assert_eq!(macaulay_check(&h, n), Certificate::facet(0));
    }

    #[test]
    fn random_ideals() {
        let a = random_monomial_ideal(2, 1, 2, 11).unwrap();
        assert!(a.gens().iter().all(|g| g.iter().sum::<u32>() == 1));
        assert_eq!(random_monomial_ideal(4, 8, 6, 5).unwrap(), random_monomial_ideal(4, 8, 6, 5).unwrap());
        let i = random_monomial_ideal(4, 8, 6, 99).unwrap();
        let h: Vec<Rat> = (0..=12).map(|j| rat(hf_monomial_quotient(&i, j) as i64)).collect();
        assert!(macaulay_check(&h, 3).member);
    }

    #[test]
    fn small_campaign() {
        let config = CampaignConfig {
            vars: 3,
            maxdeg: 4,
            gens: 3,
            trials: 20,
            seed: 1,
            degree_limit: 8,
        };
        let report = macaulay_campaign(config).unwrap();
        assert_eq!(report.passed, 20);
        assert!(report.failures.is_empty());
    }
}
