//! The cuspidal divisor class group of the Fermat curve `F_N`.
//!
//! The `3N` cusps are `a_j = (0 : ζʲ : 1)`, `b_j = (ζʲ : 0 : 1)` and
//! `c_j = (εζʲ : 1 : 0)`; they are treated as abstract labels. Divisors
//! supported on them are dense integer vectors indexed `a₀ … b₀ … c₀ …`.
//! The principal ones are spanned by Rohrlich's relations, so the cuspidal
//! group is `ℤ[cusps]⁰ / 𝒫`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::symmetric_rep;
use crate::zlinalg::{invariant_factors, quotient_invariants, snf, AbelianInvariants, IntMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    C,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::B, Family::C];

    fn offset(self) -> usize {
        match self {
            Family::A => 0,
            Family::B => 1,
            Family::C => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FermatCusp {
    pub family: Family,
    pub index: u64,
}

impl FermatCusp {
    pub fn new(family: Family, j: i64, n: u64) -> Self {
        Self {
            family,
            index: j.rem_euclid(n as i64) as u64,
        }
    }

    fn position(&self, n: u64) -> usize {
        self.family.offset() * n as usize + self.index as usize
    }
}

impl fmt::Display for FermatCusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
        };
        write!(f, "{c}{}", self.index)
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParams(format!("N = {n} must be odd and ≥ 3")));
    }
    Ok(())
}

/// A divisor supported on the cusps of `F_N`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "RawDivisor")]
pub struct CuspDivisor {
    n: u64,
    coeffs: Vec<i64>,
}

#[derive(Deserialize)]
struct RawDivisor {
    n: u64,
    coeffs: Vec<i64>,
}

impl TryFrom<RawDivisor> for CuspDivisor {
    type Error = Error;
    fn try_from(r: RawDivisor) -> Result<Self> {
        if r.coeffs.len() as u64 != 3 * r.n {
            return Err(Error::InvalidParams(format!(
                "{} coefficients for {} cusps",
                r.coeffs.len(),
                3 * r.n
            )));
        }
        Ok(Self {
            n: r.n,
            coeffs: r.coeffs,
        })
    }
}

impl Serialize for CuspDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let support = self.support();
        let mut m = s.serialize_map(Some(support.len()))?;
        for (p, c) in support {
            m.serialize_entry(&p.to_string(), &c)?;
        }
        m.end()
    }
}

impl CuspDivisor {
    pub fn zero(n: u64) -> Self {
        Self {
            n,
            coeffs: vec![0; 3 * n as usize],
        }
    }

    pub fn point(p: FermatCusp, n: u64) -> Self {
        let mut d = Self::zero(n);
        d.coeffs[p.position(n)] = 1;
        d
    }

    /// `Σ_j [x_j]` over one family.
    pub fn fiber(family: Family, n: u64) -> Self {
        let mut d = Self::zero(n);
        for j in 0..n as i64 {
            d.add_point(FermatCusp::new(family, j, n), 1);
        }
        d
    }

    /// `D_X = Σ_i {i}[x_i]`.
    pub fn weighted(family: Family, n: u64) -> Self {
        let mut d = Self::zero(n);
        for j in 0..n as i64 {
            d.add_point(FermatCusp::new(family, j, n), symmetric_rep(j, n));
        }
        d
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, p: FermatCusp) -> i64 {
        self.coeffs[p.position(self.n)]
    }

    pub fn add_point(&mut self, p: FermatCusp, k: i64) {
        let i = p.position(self.n);
        self.coeffs[i] += k;
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn support(&self) -> BTreeMap<FermatCusp, i64> {
        let n = self.n;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let fam = Family::ALL[i / n as usize];
                (FermatCusp::new(fam, (i % n as usize) as i64, n), c)
            })
            .collect()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "divisors on different curves");
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }
}

/// `div(x − ζʲ) = N·b_j − Σc`.
pub fn div_x_minus_zeta(j: i64, n: u64) -> CuspDivisor {
    let mut d = CuspDivisor::fiber(Family::C, n).scale(-1);
    d.add_point(FermatCusp::new(Family::B, j, n), n as i64);
    d
}

/// `div(y − ζʲ) = N·a_j − Σc`.
pub fn div_y_minus_zeta(j: i64, n: u64) -> CuspDivisor {
    let mut d = CuspDivisor::fiber(Family::C, n).scale(-1);
    d.add_point(FermatCusp::new(Family::A, j, n), n as i64);
    d
}

/// `div(x − εξʲy) = N·c_j − Σc`.
pub fn div_x_minus_eps_y(j: i64, n: u64) -> CuspDivisor {
    let mut d = CuspDivisor::fiber(Family::C, n).scale(-1);
    d.add_point(FermatCusp::new(Family::C, j, n), n as i64);
    d
}

/// `div f_A` for `f_A = ∏_i (−y + ζⁱ)^{i}`, summed factor by factor.
pub fn div_f_a(n: u64) -> CuspDivisor {
    (0..n as i64).fold(CuspDivisor::zero(n), |acc, i| {
        acc.add(&div_y_minus_zeta(i, n).scale(symmetric_rep(i, n)))
    })
}

/// The relation lattice `𝒫 ⊂ ℤ[cusps]⁰` with base point `p`, as full
/// `3N`-dimensional columns.
fn relation_columns(n: u64, p: FermatCusp) -> Vec<CuspDivisor> {
    let base = CuspDivisor::point(p, n);
    let mut cols = Vec::new();
    for fam in Family::ALL {
        for j in 0..n as i64 {
            let q = FermatCusp::new(fam, j, n);
            if q != p {
                cols.push(CuspDivisor::point(q, n).sub(&base).scale(n as i64));
            }
        }
    }
    for fam in Family::ALL {
        cols.push(CuspDivisor::fiber(fam, n).sub(&base.scale(n as i64)));
    }
    let weighted = |fam: Family, w: &dyn Fn(i64) -> i64| {
        let mut d = CuspDivisor::zero(n);
        for i in 0..n as i64 {
            d.add_point(FermatCusp::new(fam, i, n), w(i));
        }
        d
    };
    let lin = |i: i64| i;
    cols.push(weighted(Family::A, &lin).sub(&weighted(Family::B, &lin)));
    cols.push(weighted(Family::A, &lin).sub(&weighted(Family::C, &lin)));
    let sq = |i: i64| i * i;
    let total: i64 = (0..n as i64).map(sq).sum();
    let mut quad = Family::ALL
        .iter()
        .fold(CuspDivisor::zero(n), |acc, &f| acc.add(&weighted(f, &sq)));
    quad.add_point(p, -3 * total);
    cols.push(quad);
    cols
}

/// Coordinates of a degree-0 divisor in `ℤ[cusps]⁰ ≅ ℤ^{3N−1}`: the
/// coefficient of the base point is dropped.
fn reduced_coords(d: &CuspDivisor, p: FermatCusp) -> Vec<BigInt> {
    let skip = p.position(d.n);
    d.coeffs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &c)| BigInt::from(c))
        .collect()
}

/// The relation lattice for base point `p`, in reduced coordinates.
pub fn rohrlich_lattice_at(n: u64, p: FermatCusp) -> Result<IntMatrix> {
    check_n(n)?;
    let cols: Vec<Vec<BigInt>> = relation_columns(n, p)
        .iter()
        .map(|d| {
            debug_assert_eq!(d.degree(), 0);
            reduced_coords(d, p)
        })
        .collect();
    IntMatrix::from_columns(3 * n as usize - 1, &cols)
}

/// The relation lattice with base point `a₀`: `(3N − 1) + 6` columns in
/// `ℤ^{3N−1}`.
pub fn rohrlich_lattice(n: u64) -> Result<IntMatrix> {
    rohrlich_lattice_at(n, base_a0(n))
}

fn base_a0(n: u64) -> FermatCusp {
    FermatCusp::new(Family::A, 0, n)
}

/// `ℤ[cusps]⁰ / 𝒫`.
pub fn cuspidal_group(n: u64) -> Result<AbelianInvariants> {
    cuspidal_group_at(n, base_a0(n))
}

pub fn cuspidal_group_at(n: u64, p: FermatCusp) -> Result<AbelianInvariants> {
    let m = rohrlich_lattice_at(n, p)?;
    quotient_invariants(&m, m.rows())
}

/// Precomputed Smith data for repeated order queries.
#[derive(Debug, Clone)]
pub struct CuspidalGroup {
    n: u64,
    base: FermatCusp,
    u: IntMatrix,
    diag: Vec<BigInt>,
}

impl CuspidalGroup {
    pub fn new(n: u64) -> Result<Self> {
        Self::with_base(n, base_a0(n))
    }

    pub fn with_base(n: u64, base: FermatCusp) -> Result<Self> {
        let m = rohrlich_lattice_at(n, base)?;
        let s = snf(&m);
        let diag = s.diagonal();
        if diag.len() != m.rows() {
            return Err(Error::Invariant(format!(
                "relation lattice has rank {} in ℤ^{}",
                diag.len(),
                m.rows()
            )));
        }
        Ok(Self {
            n,
            base,
            u: s.u,
            diag,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn base(&self) -> FermatCusp {
        self.base
    }

    /// Order of the class of `d`: with `U·M·V = diag(d_i)` the class of `x`
    /// has order `lcm_i d_i / gcd(d_i, (Ux)_i)`.
    pub fn class_order(&self, d: &CuspDivisor) -> Result<u64> {
        if d.n != self.n {
            return Err(Error::ParamMismatch);
        }
        if d.degree() != 0 {
            return Err(Error::Domain(format!("divisor has degree {}", d.degree())));
        }
        let w = self.u.mul_vec(&reduced_coords(d, self.base))?;
        let order = self
            .diag
            .iter()
            .zip(&w)
            .fold(BigInt::one(), |acc, (di, wi)| acc.lcm(&(di / di.gcd(wi))));
        order
            .to_u64()
            .ok_or_else(|| Error::Invariant(format!("class order {order} overflows")))
    }

    pub fn is_principal(&self, d: &CuspDivisor) -> Result<bool> {
        Ok(self.class_order(d)? == 1)
    }
}

/// Order of the class of `d` in `ℤ[cusps]⁰ / 𝒫`.
pub fn class_order(d: &CuspDivisor, n: u64) -> Result<u64> {
    CuspidalGroup::new(n)?.class_order(d)
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisorCheck {
    pub name: String,
    pub divisor: CuspDivisor,
    pub degree: i64,
    pub class_order: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisorChecks {
    #[serde(rename = "N")]
    pub n: u64,
    pub checks: Vec<DivisorCheck>,
    /// `div f_A = N·D_A` coefficientwise.
    pub div_fa_is_n_da: bool,
    pub all_ok: bool,
}

/// Degree and principality of the divisors of `x − ζʲ`, `y − ζʲ`,
/// `x − εξʲy` and `f_A`.
pub fn known_divisor_checks(n: u64) -> Result<DivisorChecks> {
    let g = CuspidalGroup::new(n)?;
    let mut named: Vec<(String, CuspDivisor)> = Vec::new();
    for j in 0..n as i64 {
        named.push((format!("div(x-zeta^{j})"), div_x_minus_zeta(j, n)));
        named.push((format!("div(y-zeta^{j})"), div_y_minus_zeta(j, n)));
        named.push((format!("div(x-eps*xi^{j}*y)"), div_x_minus_eps_y(j, n)));
    }
    let fa = div_f_a(n);
    let da = CuspDivisor::weighted(Family::A, n);
    let db = CuspDivisor::weighted(Family::B, n);
    named.push(("div(f_A)".into(), fa.clone()));
    named.push(("N*D_A - N*D_B".into(), da.sub(&db).scale(n as i64)));
    let mut checks = Vec::with_capacity(named.len());
    for (name, divisor) in named {
        let degree = divisor.degree();
        let class_order = g.class_order(&divisor)?;
        checks.push(DivisorCheck {
            name,
            divisor,
            degree,
            class_order,
            ok: degree == 0 && class_order == 1,
        });
    }
    let div_fa_is_n_da = fa == da.scale(n as i64);
    let all_ok = div_fa_is_n_da && checks.iter().all(|c| c.ok);
    Ok(DivisorChecks {
        n,
        checks,
        div_fa_is_n_da,
        all_ok,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BaseComparison {
    pub base: String,
    pub invariants: AbelianInvariants,
    pub order_da: u64,
    pub order_da_minus_db: u64,
    pub order_a0_minus_b0: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiteralReading {
    /// Degrees of `Σ[a_i] − [P]`, `Σ[b_i] − [P]`, `Σ[c_i] − [P]`.
    pub fiber_degrees: [i64; 3],
    /// Invariants of `ℤ[cusps]` modulo the literal relations together with
    /// `N([Q] − [P])`.
    pub quotient_of_all_divisors: AbelianInvariants,
    pub lies_in_degree_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CuspidalReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub invariants: AbelianInvariants,
    pub expected_rank: u64,
    pub matches_expected: bool,
    #[serde(rename = "order_DA")]
    pub order_da: u64,
    #[serde(rename = "order_DA_minus_DB")]
    pub order_da_minus_db: u64,
    #[serde(rename = "order_DA_minus_DC")]
    pub order_da_minus_dc: u64,
    /// The fiber relations are read as `Σ[x_i] − N[P]`.
    pub adopted_reading: String,
    pub literal_reading: LiteralReading,
    pub base_points: Vec<BaseComparison>,
    pub base_point_independent: bool,
    pub checks: Vec<DivisorCheck>,
    #[serde(rename = "div_fA_is_N_DA")]
    pub div_fa_is_n_da: bool,
    pub checks_ok: bool,
}

fn literal_reading(n: u64) -> Result<LiteralReading> {
    let p = base_a0(n);
    let base = CuspDivisor::point(p, n);
    let mut cols: Vec<CuspDivisor> = relation_columns(n, p);
    let literal: Vec<CuspDivisor> = Family::ALL
        .iter()
        .map(|&f| CuspDivisor::fiber(f, n).sub(&base))
        .collect();
    let k = 3 * n as usize - 1;
    cols.splice(k..k + 3, literal.iter().cloned());
    let full: Vec<Vec<BigInt>> = cols
        .iter()
        .map(|d| d.coeffs.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let m = IntMatrix::from_columns(3 * n as usize, &full)?;
    let fiber_degrees = [literal[0].degree(), literal[1].degree(), literal[2].degree()];
    Ok(LiteralReading {
        fiber_degrees,
        quotient_of_all_divisors: quotient_invariants(&m, m.rows())?,
        lies_in_degree_zero: fiber_degrees.iter().all(|&d| d == 0),
    })
}

fn compare_at(n: u64, p: FermatCusp) -> Result<BaseComparison> {
    let g = CuspidalGroup::with_base(n, p)?;
    let da = CuspDivisor::weighted(Family::A, n);
    let db = CuspDivisor::weighted(Family::B, n);
    let a0b0 = CuspDivisor::point(FermatCusp::new(Family::A, 0, n), n)
        .sub(&CuspDivisor::point(FermatCusp::new(Family::B, 0, n), n));
    Ok(BaseComparison {
        base: p.to_string(),
        invariants: cuspidal_group_at(n, p)?,
        order_da: g.class_order(&da)?,
        order_da_minus_db: g.class_order(&da.sub(&db))?,
        order_a0_minus_b0: g.class_order(&a0b0)?,
    })
}

pub fn cuspidal_report(n: u64) -> Result<CuspidalReport> {
    check_n(n)?;
    let g = CuspidalGroup::new(n)?;
    let invariants = cuspidal_group(n)?;
    let expected_rank = 3 * n - 7;
    let da = CuspDivisor::weighted(Family::A, n);
    let db = CuspDivisor::weighted(Family::B, n);
    let dc = CuspDivisor::weighted(Family::C, n);
    let base_points = Family::ALL
        .iter()
        .map(|&f| compare_at(n, FermatCusp::new(f, 0, n)))
        .collect::<Result<Vec<_>>>()?;
    let checks = known_divisor_checks(n)?;
    let first = &base_points[0];
    let base_point_independent = base_points.iter().all(|b| {
        b.invariants == first.invariants
            && b.order_da == first.order_da
            && b.order_da_minus_db == first.order_da_minus_db
            && b.order_a0_minus_b0 == first.order_a0_minus_b0
    }) && lattices_coincide(n)?;
    Ok(CuspidalReport {
        n,
        matches_expected: invariants.is_elementary(n, expected_rank as usize),
        invariants,
        expected_rank,
        order_da: g.class_order(&da)?,
        order_da_minus_db: g.class_order(&da.sub(&db))?,
        order_da_minus_dc: g.class_order(&da.sub(&dc))?,
        adopted_reading: "sum_i [x_i] - N[P]".into(),
        literal_reading: literal_reading(n)?,
        base_points,
        base_point_independent,
        checks: checks.checks,
        div_fa_is_n_da: checks.div_fa_is_n_da,
        checks_ok: checks.all_ok,
    })
}

/// Every relation for one base point is principal for every other one.
fn lattices_coincide(n: u64) -> Result<bool> {
    let bases: Vec<FermatCusp> = Family::ALL.iter().map(|&f| FermatCusp::new(f, 0, n)).collect();
    for &p in &bases {
        let g = CuspidalGroup::with_base(n, p)?;
        for &q in &bases {
            for d in relation_columns(n, q) {
                if !g.is_principal(&d)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Index of the column span of `m` in `ℤ^rows`, or `None` if infinite.
fn lattice_index(m: &IntMatrix) -> Option<BigInt> {
    let d = invariant_factors(m);
    (d.len() == m.rows()).then(|| d.iter().fold(BigInt::one(), |acc, x| acc * x.abs()))
}

/// Order by lattice membership: least `k` such that adjoining `k·d` to `𝒫`
/// leaves the index unchanged. Used as an independent check of
/// [`CuspidalGroup::class_order`].
pub fn class_order_by_index(d: &CuspDivisor, n: u64, limit: u64) -> Result<Option<u64>> {
    if d.degree() != 0 {
        return Err(Error::Domain(format!("divisor has degree {}", d.degree())));
    }
    let p = base_a0(n);
    let m = rohrlich_lattice_at(n, p)?;
    let index = lattice_index(&m).ok_or_else(|| Error::Invariant("relation lattice not of full rank".into()))?;
    let x = reduced_coords(d, p);
    for k in 1..=limit {
        let mut cols = m.columns();
        cols.push(x.iter().map(|c| c * BigInt::from(k)).collect());
        let ext = IntMatrix::from_columns(m.rows(), &cols)?;
        if lattice_index(&ext).is_some_and(|i| i == index) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cusp(f: Family, j: i64, n: u64) -> CuspDivisor {
        CuspDivisor::point(FermatCusp::new(f, j, n), n)
    }

    #[test]
    fn lattice_shape() {
        for n in [3u64, 5, 7] {
            let m = rohrlich_lattice(n).unwrap();
            assert_eq!(m.rows(), 3 * n as usize - 1);
            assert_eq!(m.cols(), (3 * n as usize - 1) + 6);
            for d in relation_columns(n, base_a0(n)) {
                assert_eq!(d.degree(), 0);
            }
        }
        assert!(rohrlich_lattice(4).is_err());
        assert!(rohrlich_lattice(1).is_err());
    }

    #[test]
    fn group_structure() {
        assert!(cuspidal_group(3).unwrap().is_elementary(3, 2));
        assert!(cuspidal_group(5).unwrap().is_elementary(5, 8));
        assert!(cuspidal_group(7).unwrap().is_elementary(7, 14));
        assert!(cuspidal_group(9).unwrap().is_elementary(9, 20));
    }

    #[test]
    fn distinguished_orders() {
        for n in [3u64, 5, 7, 9] {
            let g = CuspidalGroup::new(n).unwrap();
            let da = CuspDivisor::weighted(Family::A, n);
            let db = CuspDivisor::weighted(Family::B, n);
            let dc = CuspDivisor::weighted(Family::C, n);
            assert_eq!(g.class_order(&da).unwrap(), n);
            assert_eq!(g.class_order(&da.sub(&db)).unwrap(), 1);
            assert_eq!(g.class_order(&da.sub(&dc)).unwrap(), 1);
        }
        let a0b0 = cusp(Family::A, 0, 5).sub(&cusp(Family::B, 0, 5));
        assert_eq!(class_order(&a0b0, 5).unwrap(), 5);
        assert_eq!(class_order_by_index(&a0b0, 5, 10).unwrap(), Some(5));
        assert!(class_order(&cusp(Family::A, 1, 5), 5).is_err());
    }

    #[test]
    fn known_divisors_are_principal() {
        for n in [3u64, 5, 7] {
            let r = known_divisor_checks(n).unwrap();
            assert!(r.all_ok, "N = {n}");
            assert!(r.div_fa_is_n_da);
        }
        let d = div_x_minus_zeta(0, 5);
        assert_eq!(d.degree(), 0);
        assert_eq!(d.coeff(FermatCusp::new(Family::B, 0, 5)), 5);
        assert_eq!(d.coeff(FermatCusp::new(Family::C, 3, 5)), -1);
    }

    #[test]
    fn base_point_independence() {
        for n in [3u64, 5, 7] {
            let r = cuspidal_report(n).unwrap();
            assert!(r.base_point_independent, "N = {n}");
            assert!(r.matches_expected);
            assert_eq!(r.order_da, n);
        }
    }

    #[test]
    fn literal_reading_is_not_degree_zero() {
        let r = literal_reading(5).unwrap();
        assert_eq!(r.fiber_degrees, [4, 4, 4]);
        assert!(!r.lies_in_degree_zero);
    }

    #[test]
    fn divisor_json() {
        let d = cusp(Family::A, 1, 3).sub(&cusp(Family::C, 2, 3));
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"a1":1,"c2":-1}"#);
    }

    fn arb_degree_zero(n: u64) -> impl Strategy<Value = CuspDivisor> {
        prop::collection::vec(-6i64..=6, 3 * n as usize - 1).prop_map(move |mut v| {
            let s: i64 = v.iter().sum();
            v.push(-s);
            CuspDivisor { n, coeffs: v }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn order_divides_n(d in arb_degree_zero(5)) {
            let o = class_order(&d, 5).unwrap();
            prop_assert_eq!(5 % o, 0);
            prop_assert_eq!(class_order_by_index(&d, 5, 5).unwrap(), Some(o));
        }

        #[test]
        fn order_is_base_independent(d in arb_degree_zero(5)) {
            let orders: Vec<u64> = Family::ALL
                .iter()
                .map(|&f| CuspidalGroup::with_base(5, FermatCusp::new(f, 0, 5)).unwrap().class_order(&d).unwrap())
                .collect();
            prop_assert!(orders.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
