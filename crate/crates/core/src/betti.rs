//! Betti tables: pure tables, the `Psi` projection, tables of the cyclic
//! generators and the upper bounds on regularity-bounded modules.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::{membership, r_decompose, r_extreme_rays, ConeId, ConeKind, RayLabel};
use crate::error::{Error, Result};
use crate::oracle::{CyclicPowerModule, ModuleSum};
use crate::ratcalc::{binom_rat, format_rat, parse_rat, rat, Poly, Rat};
use crate::series::{apply_t, GenFun};

/// Sparse table of `beta_{i, i+j}`, keyed by homological degree `i` and row
/// `j`. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), Rat>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, i: usize, row: i64) -> Rat {
        self.entries.get(&(i, row)).cloned().unwrap_or_else(Rat::zero)
    }

    /// `beta_{i, d}` by total degree.
    pub fn get_degree(&self, i: usize, d: i64) -> Rat {
        self.get(i, d - i as i64)
    }

    pub fn set(&mut self, i: usize, row: i64, v: Rat) {
        if v.is_zero() {
            self.entries.remove(&(i, row));
        } else {
            self.entries.insert((i, row), v);
        }
    }

    pub fn add_to(&mut self, i: usize, row: i64, v: &Rat) {
        let total = self.get(i, row) + v;
        self.set(i, row, total);
    }

    /// `((i, row), value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, &Rat)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rows(&self) -> Option<(i64, i64)> {
        let min = self.entries.keys().map(|k| k.1).min()?;
        let max = self.entries.keys().map(|k| k.1).max()?;
        Some((min, max))
    }

    pub fn max_column(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn scale(&self, c: &Rat) -> BettiTable {
        let mut out = BettiTable::new();
        for (i, j, v) in self.entries() {
            out.set(i, j, v * c);
        }
        out
    }

    pub fn add(&self, other: &BettiTable) -> BettiTable {
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn is_nonneg(&self) -> bool {
        self.entries.values().all(|v| !v.is_negative())
    }

    /// Dot-matrix layout: columns `0..=max(cols, last nonzero column)`, rows
    /// from the first to the last nonzero row (at least row 0).
    pub fn render_text(&self, cols: usize) -> String {
        let ncols = self.max_column().map_or(cols, |c| c.max(cols)) + 1;
        let (lo, hi) = self.rows().map_or((0, 0), |(lo, hi)| (lo.min(0), hi));
        let cell = |i: usize, j: i64| {
            let v = self.get(i, j);
            if v.is_zero() {
                ".".to_string()
            } else {
                format_rat(&v)
            }
        };
        let mut width = vec![1usize; ncols];
        for (i, w) in width.iter_mut().enumerate() {
            *w = (lo..=hi).map(|j| cell(i, j).len()).max().unwrap_or(1).max(i.to_string().len());
        }
        let label_w = (lo..=hi).map(|j| j.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        let mut line = format!("{:>label_w$} |", "");
        for (i, w) in width.iter().enumerate() {
            let _ = write!(line, " {i:>w$}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
        let rule_len = line.len().max(label_w + 2);
        out.push_str(&"-".repeat(label_w + 1));
        out.push('+');
        out.push_str(&"-".repeat(rule_len - label_w - 2));
        out.push('\n');
        for j in lo..=hi {
            let mut line = format!("{j:>label_w$} |");
            for (i, w) in width.iter().enumerate() {
                let _ = write!(line, " {:>w$}", cell(i, j));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct BettiWire {
    rows: BTreeMap<String, BTreeMap<String, String>>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // numeric order of keys, which BTreeMap<String> would not give
        let mut rows: BTreeMap<i64, BTreeMap<usize, String>> = BTreeMap::new();
        for (i, j, v) in self.entries() {
            rows.entry(j).or_default().insert(i, format_rat(v));
        }
        use serde::ser::SerializeMap;
        struct Row<'a>(&'a BTreeMap<usize, String>);
        impl Serialize for Row<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (i, v) in self.0 {
                    m.serialize_entry(&i.to_string(), v)?;
                }
                m.end()
            }
        }
        struct Rows<'a>(&'a BTreeMap<i64, BTreeMap<usize, String>>);
        impl Serialize for Rows<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (j, row) in self.0 {
                    m.serialize_entry(&j.to_string(), &Row(row))?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("rows", &Rows(&rows))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = BettiWire::deserialize(d)?;
        let mut t = BettiTable::new();
        for (j, row) in w.rows {
            let j: i64 = j.parse().map_err(D::Error::custom)?;
            for (i, v) in row {
                let i: usize = i.parse().map_err(D::Error::custom)?;
                t.set(i, j, parse_rat(&v).map_err(D::Error::custom)?);
            }
        }
        Ok(t)
    }
}

/// Strictly increasing degrees `d_0 < ... < d_e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence(Vec<i64>);

impl DegreeSequence {
    pub fn new(degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() || degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "degree sequence must be non-empty and strictly increasing: {degrees:?}"
            )));
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }
}

/// `beta_{i, d_i} = prod_{j != i} 1 / |d_j - d_i|`.
pub fn pure_table(d: &DegreeSequence) -> BettiTable {
    let degs = d.degrees();
    let mut t = BettiTable::new();
    for (i, &di) in degs.iter().enumerate() {
        let prod = degs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Rat::one(), |acc, (_, &dj)| acc / rat((dj - di).abs()));
        t.set(i, di - i as i64, prod);
    }
    t
}

/// `Psi(beta)_{i, d} = d beta_{i+1, d}`: drops column 0 and shifts the rest
/// one column left, which moves each entry down one row.
pub fn psi_map(b: &BettiTable) -> BettiTable {
    let mut out = BettiTable::new();
    for (i, j, v) in b.entries() {
        if i == 0 {
            continue;
        }
        let d = i as i64 + j;
        out.set(i - 1, j + 1, v * rat(d));
    }
    out
}

/// Table of `S / <x_0, ..., x_{ell-1}>^d`: `beta_{0,0} = 1` and
/// `beta_{i, i+d-1} = i/(i+d-1) C(ell+d-1, ell) C(ell, i)` for `1 <= i <= ell`.
pub fn betti_cyclic_power(module: CyclicPowerModule) -> BettiTable {
    let CyclicPowerModule { ell, power: d } = module;
    let mut t = BettiTable::new();
    t.set(0, 0, Rat::one());
    let top = binom_rat((ell + d - 1) as u64, ell as u64);
    for i in 1..=ell {
        let v = rat(i as i64) / rat((i + d - 1) as i64) * &top * binom_rat(ell as u64, i as u64);
        t.set(i, d as i64 - 1, v);
    }
    t
}

pub fn betti_module_sum(ms: &ModuleSum) -> BettiTable {
    ms.summands
        .iter()
        .fold(BettiTable::new(), |acc, (m, c)| acc.add(&betti_cyclic_power(*m).scale(c)))
}

/// `sum_{i,d} (-1)^i beta_{i,d} t^d / (1-t)^(n+1)`. Entries in negative total
/// degree have no power-series meaning here and are rejected.
pub fn hs_from_betti(b: &BettiTable, n: usize) -> Result<GenFun> {
    let mut numer = Poly::zero();
    for (i, j, v) in b.entries() {
        let d = i as i64 + j;
        if d < 0 {
            return Err(Error::InvalidParameter(format!(
                "entry beta_({i},{d}) has negative total degree"
            )));
        }
        let sign = if i % 2 == 0 { v.clone() } else { -v };
        numer = numer + Poly::monomial(d as usize, sign);
    }
    Ok(GenFun::new(n + 1, numer))
}

/// Entrywise upper bounds on the Betti table of a module in `R(n, m)`.
pub fn betti_bounds(g: &GenFun, n: usize, m: usize) -> Result<BettiTable> {
    let cert = membership(ConeId::new(ConeKind::R, n, m as i64)?, g)?;
    if !cert.member {
        return Err(Error::NotInCone { n, m });
    }
    let h = g.coeffs_upto(m + n + 2);
    let th = apply_t(g, n);
    let mut t = BettiTable::new();
    t.set(0, 0, h[0].clone());
    for j in 0..m {
        let tj = th.coeff_at(j);
        for i in 1..=n + 1 {
            let v = binom_rat(n as u64, i as u64 - 1) / rat((i + j) as i64) * &tj;
            t.set(i, j as i64, v);
        }
    }
    for i in 1..=n + 1 {
        let mut v = rat((n + m + 1) as i64) / rat((i + m) as i64)
            * binom_rat(n as u64, i as u64 - 1)
            * &h[m];
        for k in 1..=i {
            let term = binom_rat(n as u64 + 1, (i - k) as u64) * &h[m + k];
            if k % 2 == 1 {
                v -= term;
            } else {
                v += term;
            }
        }
        t.set(i, m as i64, v);
    }
    Ok(t)
}

/// `sum_k alpha_k beta(ray_k)` with `alpha = r_decompose(g)`: the table the
/// bounds are sharp for.
pub fn betti_bounds_from_rays(g: &GenFun, n: usize, m: usize) -> Result<BettiTable> {
    let alpha = r_decompose(g, n, m)?;
    Ok(r_extreme_rays(n, m)
        .into_iter()
        .zip(&alpha)
        .fold(BettiTable::new(), |acc, ((label, _), a)| {
            let RayLabel::Cyclic { ell, power } = label else {
                unreachable!("R rays are cyclic")
            };
            acc.add(&betti_cyclic_power(CyclicPowerModule { ell, power }).scale(a))
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hs_cyclic_power;
    use crate::ratcalc::frac;

    fn degs(d: &[i64]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    #[test]
    fn pure_tables() {
        let t = pure_table(&degs(&[0, 1]));
        assert_eq!((t.get(0, 0), t.get(1, 0)), (rat(1), rat(1)));
        let t = pure_table(&degs(&[0, 1, 2]));
        assert_eq!(
            [t.get_degree(0, 0), t.get_degree(1, 1), t.get_degree(2, 2)],
            [frac(1, 2), rat(1), frac(1, 2)]
        );
        let t = pure_table(&degs(&[0, 2, 3]));
        assert_eq!(
            [t.get_degree(0, 0), t.get_degree(1, 2), t.get_degree(2, 3)],
            [frac(1, 6), frac(1, 2), frac(1, 3)]
        );
        assert!(DegreeSequence::new(vec![1, 1]).is_err());
        assert!(DegreeSequence::new(vec![]).is_err());
    }

    #[test]
    fn psi() {
        assert_eq!(psi_map(&pure_table(&degs(&[0, 1, 2]))), pure_table(&degs(&[1, 2])));
        assert_eq!(psi_map(&pure_table(&degs(&[0, 2, 3]))), pure_table(&degs(&[2, 3])));
        assert!(psi_map(&BettiTable::new()).is_zero());
    }

    #[test]
    fn cyclic_tables() {
        let t = betti_cyclic_power(CyclicPowerModule::new(4, 2).unwrap());
        let row: Vec<Rat> = (1..=4).map(|i| t.get(i, 1)).collect();
        assert_eq!(row, [10, 20, 15, 4].map(rat).to_vec());
        let t = betti_cyclic_power(CyclicPowerModule::new(1, 2).unwrap());
        assert_eq!(t.entries().count(), 2);
        assert_eq!(t.get_degree(1, 2), rat(1));
        for ell in 1..=4 {
            let t = betti_cyclic_power(CyclicPowerModule::new(ell, 1).unwrap());
            assert_eq!(hs_from_betti(&t, 3).unwrap(), hs_cyclic_power(CyclicPowerModule::new(ell, 1).unwrap(), 3).unwrap());
        }
        let koszul = betti_cyclic_power(CyclicPowerModule::new(4, 1).unwrap());
        assert_eq!(hs_from_betti(&koszul, 3).unwrap(), GenFun::one());
    }

    #[test]
    fn hs_of_pure() {
        let g = hs_from_betti(&pure_table(&degs(&[0, 2, 3])), 1).unwrap();
        assert_eq!(g.coeffs_upto(4), vec![frac(1, 6), frac(1, 3), rat(0), rat(0)]);
        assert!(hs_from_betti(&pure_table(&degs(&[-2, 0])), 1).is_err());
    }

    #[test]
    fn bounds_examples() {
        let g = GenFun::new(2, Poly::from_ints(&[1, 2]));
        let t = betti_bounds(&g, 3, 1).unwrap();
        let mut want = BettiTable::new();
        want.set(0, 0, rat(1));
        want.set(1, 1, rat(3));
        want.set(2, 1, rat(2));
        assert_eq!(t, want);
        let t = betti_bounds(&g, 3, 2).unwrap();
        let row1: Vec<Rat> = (1..=4).map(|i| t.get(i, 1)).collect();
        let row2: Vec<Rat> = (1..=4).map(|i| t.get(i, 2)).collect();
        assert_eq!(row1, vec![rat(3), rat(6), frac(9, 2), frac(6, 5)]);
        assert_eq!(row2, vec![rat(4), frac(9, 2), frac(6, 5), rat(0)]);
        assert_eq!(t, betti_bounds_from_rays(&g, 3, 2).unwrap());
        assert!(betti_bounds(&GenFun::new(2, Poly::from_ints(&[1, 2])), 3, 0).is_err());
    }

    #[test]
    fn single_ray_bounds() {
        for (label, g) in r_extreme_rays(2, 2) {
            let RayLabel::Cyclic { ell, power } = label else { unreachable!() };
            let t = betti_bounds(&g, 2, 2).unwrap();
            assert_eq!(t, betti_cyclic_power(CyclicPowerModule { ell, power }));
        }
    }

    #[test]
    fn wire_and_text() {
        let g = GenFun::new(2, Poly::from_ints(&[1, 2]));
        let t = betti_bounds(&g, 3, 2).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"{"rows":{"0":{"0":"1"},"1":{"1":"3","2":"6","3":"9/2","4":"6/5"},"2":{"1":"4","2":"9/2","3":"6/5"}}}"#
        );
        assert_eq!(serde_json::from_str::<BettiTable>(&s).unwrap(), t);
        let text = betti_bounds(&g, 3, 1).unwrap().render_text(4);
        assert_eq!(text, "  | 0 1 2 3 4\n--+----------\n0 | 1 . . . .\n1 | . 3 2 . .\n");
    }
}
