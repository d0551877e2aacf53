//! The cones `P(n, a)`, `Q(n, a)` and `R(n, m)`: membership certificates,
//! extreme rays and the unique ray decompositions of `R(n, m)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{hs_cyclic_power, CyclicPowerModule};
use crate::ratcalc::{
    backward_difference, binom_rat, integer_nonneg_on_ray, p_lambda, partitions_bounded, rat,
    Partition, Poly, Rat,
};
use crate::series::{apply_t, eigen_coordinates, hilbert_polynomial, invert_t, poly_tail_to_genfun, GenFun};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeKind {
    P,
    Q,
    R,
}

impl std::str::FromStr for ConeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(ConeKind::P),
            "Q" | "q" => Ok(ConeKind::Q),
            "R" | "r" => Ok(ConeKind::R),
            _ => Err(Error::InvalidParameter(format!("unknown cone {s:?}"))),
        }
    }
}

/// `bound` is `a` for `P` and `Q` (with `a >= -n`) and `m >= 0` for `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConeId {
    pub kind: ConeKind,
    pub n: usize,
    pub bound: i64,
}

impl ConeId {
    pub fn new(kind: ConeKind, n: usize, bound: i64) -> Result<Self> {
        let ok = match kind {
            ConeKind::P | ConeKind::Q => bound >= -(n as i64),
            ConeKind::R => bound >= 0,
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "bound {bound} out of range for cone {kind:?} with n = {n}"
            )));
        }
        Ok(ConeId { kind, n, bound })
    }
}

/// Which inequality a non-member fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    /// `h(j) >= 0` fails (cone `P`).
    Coefficient(usize),
    /// Facet `i` fails (cones `Q` and `R`, and [`crate::oracle::macaulay_check`]).
    Facet(usize),
    /// Negative leading coefficient of the eventual polynomial.
    Infinity,
    /// `nabla^i q_h(m) = 0` fails.
    Equality(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub member: bool,
    pub violation: Option<Violation>,
}

impl Certificate {
    pub fn member() -> Self {
        Certificate {
            member: true,
            violation: None,
        }
    }

    pub fn violated(v: Violation) -> Self {
        Certificate {
            member: false,
            violation: Some(v),
        }
    }

    pub fn facet(i: usize) -> Self {
        Certificate::violated(Violation::Facet(i))
    }
}

#[derive(Serialize, Deserialize)]
struct ViolationWire {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    index: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    violation: Option<ViolationWire>,
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let violation = self.violation.map(|v| {
            let (kind, index) = match v {
                Violation::Coefficient(j) => ("coefficient", Some(j)),
                Violation::Facet(i) => ("facet", Some(i)),
                Violation::Infinity => ("infinity", None),
                Violation::Equality(i) => ("equality", Some(i)),
            };
            ViolationWire {
                kind: kind.to_string(),
                index,
            }
        });
        CertificateWire {
            member: self.member,
            violation,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = CertificateWire::deserialize(d)?;
        let violation = match w.violation {
            None => None,
            Some(v) => {
                let idx = || v.index.ok_or_else(|| D::Error::custom("violation index missing"));
                Some(match v.kind.as_str() {
                    "coefficient" => Violation::Coefficient(idx()?),
                    "facet" => Violation::Facet(idx()?),
                    "infinity" => Violation::Infinity,
                    "equality" => Violation::Equality(idx()?),
                    other => return Err(D::Error::custom(format!("unknown violation kind {other:?}"))),
                })
            }
        };
        if w.member == violation.is_some() {
            return Err(D::Error::custom("violation must be present iff member is false"));
        }
        Ok(Certificate {
            member: w.member,
            violation,
        })
    }
}

/// Extreme-ray descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RayLabel {
    /// `t^k`, `0 <= k <= a`.
    Power { k: usize },
    /// The `p_lambda(j - a_hat)` family.
    Lambda { parts: Partition },
    /// The `p_mu(j - a_hat - 1)` family.
    Mu { parts: Partition },
    /// `S / <x_0, ..., x_{ell-1}>^power`.
    Cyclic { ell: usize, power: usize },
}

impl fmt::Display for RayLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RayLabel::Power { k } => write!(f, "power:{k}"),
            RayLabel::Lambda { parts } => write!(f, "lambda:{parts}"),
            RayLabel::Mu { parts } => write!(f, "mu:{parts}"),
            RayLabel::Cyclic { ell, power } => write!(f, "cyclic:{ell},{power}"),
        }
    }
}

impl std::str::FromStr for RayLabel {
    type Err = Error;

    /// `power:K`, `lambda:P1,P2,...`, `mu:...` (empty after the colon for the
    /// empty partition; parentheses optional) or `cyclic:ELL,POWER`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad ray label {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let rest = rest.trim().trim_start_matches('(').trim_end_matches(')');
        let nums: Vec<usize> = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        let partition = |nums: Vec<usize>| Partition::new(nums.into_iter().map(|x| x as u32).collect());
        match kind.trim() {
            "power" if nums.len() == 1 => Ok(RayLabel::Power { k: nums[0] }),
            "lambda" => Ok(RayLabel::Lambda {
                parts: partition(nums)?,
            }),
            "mu" => Ok(RayLabel::Mu {
                parts: partition(nums)?,
            }),
            "cyclic" if nums.len() == 2 => Ok(RayLabel::Cyclic {
                ell: nums[0],
                power: nums[1],
            }),
            _ => Err(bad()),
        }
    }
}

fn check_a(n: usize, a: i64) -> Result<()> {
    if a < -(n as i64) {
        return Err(Error::InvalidParameter(format!("a = {a} < -n = -{n}")));
    }
    Ok(())
}

/// `a + max(1, -a)`: `a + 1` for `a >= 0`, and `0` otherwise.
pub fn a_hat(a: i64) -> i64 {
    a + 1.max(-a)
}

/// Maximal number of parts of the `lambda` family; negative means the family
/// is empty.
pub fn lambda_max_parts(n: usize, a: i64) -> i64 {
    (n as i64 - a_hat(a) + a).div_euclid(2)
}

pub fn mu_max_parts(n: usize, a: i64) -> i64 {
    (n as i64 - a_hat(a) + a - 1).div_euclid(2)
}

/// Defining polynomial `P(j)` of a series-family ray together with the first
/// index `a_hat` of its support.
pub fn family_tail_poly(label: &RayLabel, n: usize, a: i64) -> Result<(Poly, usize)> {
    check_a(n, a)?;
    let ah = a_hat(a);
    let (parts, shift, first_factor, bound) = match label {
        RayLabel::Lambda { parts } => (parts, ah, 1, lambda_max_parts(n, a)),
        RayLabel::Mu { parts } => (parts, ah + 1, 0, mu_max_parts(n, a)),
        other => return Err(Error::NotSeriesFamily(other.to_string())),
    };
    if parts.len() as i64 > bound {
        return Err(Error::LabelOutOfRange(format!(
            "{label} has {} parts, at most {bound} allowed for n = {n}, a = {a}",
            parts.len()
        )));
    }
    // The extra roots sit at s = -l with s = j - a_hat. For a < 0 this is
    // j = -l; for a >= 0 the mu family gets its forced root at j = a_hat.
    let mut p = p_lambda(parts).translate(&rat(-shift));
    for l in first_factor..=(ah - a - 1) {
        p = p * Poly::new(vec![rat(l - ah), Rat::one()]);
    }
    Ok((p, ah as usize))
}

/// Extreme ray of `P(n, a)` named by `label`.
pub fn p_ray(label: &RayLabel, n: usize, a: i64) -> Result<GenFun> {
    check_a(n, a)?;
    match label {
        RayLabel::Power { k } => {
            if (*k as i64) > a {
                return Err(Error::LabelOutOfRange(format!("t^{k} needs k <= a = {a}")));
            }
            Ok(GenFun::t_pow(*k))
        }
        RayLabel::Lambda { .. } | RayLabel::Mu { .. } => {
            let (p, start) = family_tail_poly(label, n, a)?;
            Ok(poly_tail_to_genfun(&p, start))
        }
        RayLabel::Cyclic { .. } => Err(Error::LabelOutOfRange(format!(
            "{label} is not a ray label of P"
        ))),
    }
}

/// Ray labels of `P(n, a)` whose partition entries are at most `max_part`.
pub fn p_ray_labels(n: usize, a: i64, max_part: u32) -> Result<Vec<RayLabel>> {
    check_a(n, a)?;
    let mut labels: Vec<RayLabel> = (0..=a.max(-1))
        .filter(|&k| k >= 0)
        .map(|k| RayLabel::Power { k: k as usize })
        .collect();
    let lam = lambda_max_parts(n, a);
    if lam >= 0 {
        labels.extend(
            partitions_bounded(lam as usize, max_part)
                .into_iter()
                .map(|parts| RayLabel::Lambda { parts }),
        );
    }
    let mu = mu_max_parts(n, a);
    if mu >= 0 {
        labels.extend(
            partitions_bounded(mu as usize, max_part)
                .into_iter()
                .map(|parts| RayLabel::Mu { parts }),
        );
    }
    Ok(labels)
}

/// Every extreme ray of `P(n, a)` whose partition entries are at most
/// `max_part`. The families are infinite, so this is a bounded slice.
pub fn enumerate_p_rays(n: usize, a: i64, max_part: u32) -> Result<Vec<(RayLabel, GenFun)>> {
    p_ray_labels(n, a, max_part)?
        .into_iter()
        .map(|l| p_ray(&l, n, a).map(|g| (l, g)))
        .collect()
}

/// Extreme ray of `Q(n, a)`: the artinian `S/m^i` for `1 <= i <= a+1`
/// (also reachable as `Power { k: i - 1 }`), or the `T`-preimage of a
/// series-family ray of `P(n, a)`.
pub fn q_extreme_ray(label: &RayLabel, n: usize, a: i64) -> Result<GenFun> {
    check_a(n, a)?;
    match label {
        RayLabel::Power { k } => q_extreme_ray(
            &RayLabel::Cyclic {
                ell: n + 1,
                power: k + 1,
            },
            n,
            a,
        ),
        RayLabel::Cyclic { ell, power } => {
            if *ell != n + 1 || *power == 0 || (*power as i64) > a + 1 {
                return Err(Error::LabelOutOfRange(format!(
                    "{label} is not an artinian ray of Q(n={n}, a={a})"
                )));
            }
            hs_cyclic_power(CyclicPowerModule::new(*ell, *power)?, n)
        }
        RayLabel::Lambda { .. } | RayLabel::Mu { .. } => invert_t(&p_ray(label, n, a)?, n, a),
    }
}

pub fn enumerate_q_rays(n: usize, a: i64, max_part: u32) -> Result<Vec<(RayLabel, GenFun)>> {
    p_ray_labels(n, a, max_part)?
        .into_iter()
        .map(|l| {
            let l = match l {
                RayLabel::Power { k } => RayLabel::Cyclic {
                    ell: n + 1,
                    power: k + 1,
                },
                other => other,
            };
            q_extreme_ray(&l, n, a).map(|g| (l, g))
        })
        .collect()
}

/// Membership of `g` in the cone with a certificate.
pub fn membership(cone: ConeId, g: &GenFun) -> Result<Certificate> {
    let ConeId { kind, n, bound } = ConeId::new(cone.kind, cone.n, cone.bound)?;
    match kind {
        ConeKind::P => {
            g.require_space(n, bound)?;
            p_membership(g, bound)
        }
        ConeKind::Q => {
            g.require_space(n, bound)?;
            let cert = p_membership(&apply_t(g, n), bound)?;
            Ok(match cert.violation {
                Some(Violation::Coefficient(j)) => Certificate::facet(j),
                _ => cert,
            })
        }
        ConeKind::R => r_membership(g, n, bound as usize),
    }
}

/// `h(j) >= 0` for all `j`: explicit checks up to `max(a, 0)`, then the
/// eventual polynomial decides the rest.
fn p_membership(g: &GenFun, a: i64) -> Result<Certificate> {
    let head = a.max(0) as usize;
    if let Some(j) = (0..=head).find(|&j| g.coeff_at(j).is_negative()) {
        return Ok(Certificate::violated(Violation::Coefficient(j)));
    }
    let q = hilbert_polynomial(g, a)?;
    if q.lead().is_negative() {
        return Ok(Certificate::violated(Violation::Infinity));
    }
    let decision = integer_nonneg_on_ray(&q, head as i64 + 1);
    Ok(match decision.witness {
        Some(j) => Certificate::violated(Violation::Coefficient(j as usize)),
        None => Certificate::member(),
    })
}

/// Slack of each facet inequality of `R(n, m)`, in order: the `m` Macaulay
/// inequalities, `h(m) - q_h(m)`, then `n` inequalities on the backward
/// differences of `q_h` at `m`. The cone is where every slack is `>= 0` and
/// `nabla^n q_h(m) = 0`.
pub fn r_facet_slacks(g: &GenFun, n: usize, m: usize) -> Result<Vec<Rat>> {
    g.require_space(n + 1, m as i64)?;
    let h = g.coeffs_upto(m + 1);
    let q = hilbert_polynomial(g, m as i64)?;
    let nabla = nabla_at(&q, n, m);
    let mut out = Vec::with_capacity(n + m + 1);
    for j in 0..m {
        out.push(rat((n + j + 1) as i64) * &h[j] - rat(j as i64 + 1) * &h[j + 1]);
    }
    out.push(&h[m] - q.eval_int(m as i64));
    for i in 0..n {
        out.push(rat((n - i) as i64) * &nabla[i] - rat((n + m - i) as i64) * &nabla[i + 1]);
    }
    Ok(out)
}

fn nabla_at(q: &Poly, n: usize, m: usize) -> Vec<Rat> {
    (0..=n)
        .map(|i| backward_difference(q, i).eval_int(m as i64))
        .collect()
}

fn r_membership(g: &GenFun, n: usize, m: usize) -> Result<Certificate> {
    let slacks = r_facet_slacks(g, n, m)?;
    if let Some(i) = slacks.iter().position(Signed::is_negative) {
        return Ok(Certificate::facet(i));
    }
    let q = hilbert_polynomial(g, m as i64)?;
    if !backward_difference(&q, n).eval_int(m as i64).is_zero() {
        return Ok(Certificate::violated(Violation::Equality(n)));
    }
    Ok(Certificate::member())
}

/// Membership in the subcone of `R(n, m)` of modules of dimension at most
/// `d`: adds `nabla^i q_h(m) = 0` for `d <= i <= n`.
pub fn r_membership_dim_restricted(g: &GenFun, n: usize, m: usize, d: usize) -> Result<Certificate> {
    if d > n {
        return Err(Error::InvalidParameter(format!("d = {d} > n = {n}")));
    }
    let cert = r_membership(g, n, m)?;
    if !cert.member {
        return Ok(cert);
    }
    let q = hilbert_polynomial(g, m as i64)?;
    let nabla = nabla_at(&q, n, m);
    Ok(match (d..=n).find(|&i| !nabla[i].is_zero()) {
        Some(i) => Certificate::violated(Violation::Equality(i)),
        None => Certificate::member(),
    })
}

/// Rays of `R(n, m)` in their fixed order: `S/m^i` for `1 <= i <= m+1`, then
/// `S/<x_0, ..., x_{ell-1}>^(m+1)` for `ell = n` down to `1`.
pub fn r_extreme_rays(n: usize, m: usize) -> Vec<(RayLabel, GenFun)> {
    let artinian = (1..=m + 1).map(|i| (n + 1, i));
    let linear = (1..=n).rev().map(|ell| (ell, m + 1));
    artinian
        .chain(linear)
        .map(|(ell, power)| {
            let g = hs_cyclic_power(CyclicPowerModule { ell, power }, n).expect("valid cyclic module");
            (RayLabel::Cyclic { ell, power }, g)
        })
        .collect()
}

/// Coefficients `alpha_0..alpha_m, alpha_{-1}..alpha_{-n}` of `g` in the
/// rays of [`r_extreme_rays`].
pub fn r_decompose(g: &GenFun, n: usize, m: usize) -> Result<Vec<Rat>> {
    g.require_space(n + 1, m as i64)?;
    let q = hilbert_polynomial(g, m as i64)?;
    let nabla = nabla_at(&q, n, m);
    if !nabla[n].is_zero() {
        return Err(Error::OutsideSubspace {
            n,
            m,
            value: nabla[n].to_string(),
        });
    }
    let h = g.coeffs_upto(m + 1);
    let hs = |j: usize| binom_rat((n + j) as u64, n as u64);
    let mut alpha = Vec::with_capacity(n + m + 1);
    for j in 0..m {
        alpha.push(&h[j] / hs(j) - &h[j + 1] / hs(j + 1));
    }
    alpha.push((&h[m] - q.eval_int(m as i64)) / hs(m));
    for i in 1..=n {
        let upper = binom_rat((n + m + 1 - i) as u64, m as u64);
        let lower = binom_rat((n + m - i) as u64, m as u64);
        alpha.push(&nabla[i - 1] / upper - &nabla[i] / lower);
    }
    Ok(alpha)
}

/// `d_i = h(i-1)/C(n+i-1, n) - h(i)/C(n+i, n)` for `1 <= i <= cutoff`: the
/// coordinates of a truncated sequence in the artinian rays `S/m^i`.
pub fn thm_one_coefficients(h: &[Rat], n: usize, cutoff: usize) -> Result<Vec<Rat>> {
    if h.len() < cutoff + 1 {
        return Err(Error::InvalidParameter(format!(
            "need h(0..={cutoff}), got {} values",
            h.len()
        )));
    }
    let hs = |j: usize| binom_rat((n + j) as u64, n as u64);
    Ok((1..=cutoff)
        .map(|i| &h[i - 1] / hs(i - 1) - &h[i] / hs(i))
        .collect())
}

/// Which pair of supporting lines meets at a cross-section vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossSectionVertex {
    /// `H_i` and `H_{i+1}`.
    Consecutive(usize),
    /// `H_0` and `H_inf`.
    Corner,
    /// Limit of the consecutive vertices.
    Limit,
}

impl fmt::Display for CrossSectionVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossSectionVertex::Consecutive(i) => write!(f, "{i}"),
            CrossSectionVertex::Corner => write!(f, "corner"),
            CrossSectionVertex::Limit => write!(f, "limit"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSectionPoint {
    pub vertex: CrossSectionVertex,
    pub c2: Rat,
    pub c1: Rat,
}

/// Line `a c1 + b c2 + c >= 0` in the `(c2, c1)`-plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl HalfPlane {
    pub fn slack(&self, c2: &Rat, c1: &Rat) -> Rat {
        &self.a * c1 + &self.b * c2 + &self.c
    }

    fn meet(&self, other: &HalfPlane) -> Option<(Rat, Rat)> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let c1 = (&self.b * &other.c - &self.c * &other.b) / &det;
        let c2 = (&self.c * &other.a - &self.a * &other.c) / &det;
        Some((c2, c1))
    }
}

const Q31_N: usize = 3;

/// Supporting half-planes `H_0..=H_upto` of the cross-section
/// `c1 + c2 + c3 = 1` of `Q(3, -1)`: `H_j` is `T[h](j) >= 0` with
/// `h = c1/(1-t) + c2/(1-t)^2 + c3/(1-t)^3`.
pub fn q31_half_planes(upto: usize) -> Vec<HalfPlane> {
    let images: Vec<GenFun> = (1..=3)
        .map(|k| apply_t(&GenFun::one_minus_t_pow(-k), Q31_N))
        .collect();
    (0..=upto)
        .map(|j| {
            let w: Vec<Rat> = images.iter().map(|g| g.coeff_at(j)).collect();
            HalfPlane {
                a: &w[0] - &w[2],
                b: &w[1] - &w[2],
                c: w[2].clone(),
            }
        })
        .collect()
}

pub fn q31_half_plane(j: usize) -> HalfPlane {
    q31_half_planes(j).pop().expect("non-empty")
}

/// The limiting half-plane: the leading coefficient `c3 / 2` of `T[h]` is
/// non-negative.
pub fn q31_half_plane_infinity() -> HalfPlane {
    HalfPlane {
        a: -Rat::one(),
        b: -Rat::one(),
        c: Rat::one(),
    }
}

/// `(c2, c1)` of a series in `V(3, -1)` scaled so that `h(0) = 1`.
fn q31_normalized(g: &GenFun) -> Option<(Rat, Rat)> {
    let e = eigen_coordinates(g, Q31_N)?;
    let get = |p: usize| e.get(p).cloned().unwrap_or_else(Rat::zero);
    let (c3, c2, c1) = (get(0), get(1), get(2));
    let total = &c1 + &c2 + &c3;
    if total.is_zero() {
        return None;
    }
    Some((c2 / &total, c1 / total))
}

/// Vertices of the cross-section of `Q(3, -1)`: `H_i` meets `H_{i+1}` for
/// `0 <= i <= i_max`, `H_0` meets `H_inf`, and the limit point, which is the
/// normalized ray `1/(1-t)`. Every point is checked against `H_j` for
/// `j <= verify_upto` and against `H_inf`.
pub fn q31_cross_section_verified(i_max: usize, verify_upto: usize) -> Result<Vec<CrossSectionPoint>> {
    let lines = q31_half_planes(verify_upto.max(i_max + 1));
    let inf = q31_half_plane_infinity();
    let mut points = Vec::with_capacity(i_max + 3);
    for i in 0..=i_max {
        let (c2, c1) = lines[i]
            .meet(&lines[i + 1])
            .ok_or_else(|| Error::DecompositionFailed(format!("H_{i} parallel to H_{}", i + 1)))?;
        points.push(CrossSectionPoint {
            vertex: CrossSectionVertex::Consecutive(i),
            c2,
            c1,
        });
    }
    let (c2, c1) = lines[0]
        .meet(&inf)
        .ok_or_else(|| Error::DecompositionFailed("H_0 parallel to H_inf".into()))?;
    points.push(CrossSectionPoint {
        vertex: CrossSectionVertex::Corner,
        c2,
        c1,
    });
    let limit_ray = q_extreme_ray(
        &RayLabel::Lambda {
            parts: Partition::empty(),
        },
        Q31_N,
        -1,
    )?;
    let (c2, c1) = q31_normalized(&limit_ray)
        .ok_or_else(|| Error::DecompositionFailed("degenerate limit ray".into()))?;
    points.push(CrossSectionPoint {
        vertex: CrossSectionVertex::Limit,
        c2,
        c1,
    });
    // integer forms keep the sign checks cheap
    let int_lines: Vec<[BigInt; 3]> = lines
        .iter()
        .take(verify_upto + 1)
        .chain(std::iter::once(&inf))
        .map(|h| {
            let l = h.a.denom().lcm(h.b.denom()).lcm(h.c.denom());
            [&h.a, &h.b, &h.c].map(|x| x.numer() * (&l / x.denom()))
        })
        .collect();
    for p in &points {
        let q = p.c1.denom().lcm(p.c2.denom());
        let x1 = p.c1.numer() * (&q / p.c1.denom());
        let x2 = p.c2.numer() * (&q / p.c2.denom());
        let bad = int_lines
            .iter()
            .position(|[a, b, c]| (a * &x1 + b * &x2 + c * &q).is_negative())
            .map(|k| if k + 1 == int_lines.len() { &inf } else { &lines[k] });
        if let Some(bad) = bad {
            return Err(Error::DecompositionFailed(format!(
                "vertex {} = ({}, {}) violates {:?}",
                p.vertex, p.c2, p.c1, bad
            )));
        }
    }
    Ok(points)
}

pub fn q31_cross_section(i_max: usize) -> Result<Vec<CrossSectionPoint>> {
    q31_cross_section_verified(i_max, 200.max(2 * i_max + 10))
}
