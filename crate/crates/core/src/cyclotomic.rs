//! Exact arithmetic in `ℤ[μ_N] = ℤ[x]/Φ_N(x)`, and the identities involving
//! `f_A(a₀)`, the smoothness unit, the `N = 5` factorisation of `T⁵ + 1` and
//! its reductions modulo 11.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::zlinalg::{det, IntMatrix};
use crate::{Error, Result};

/// `{i}`: the representative of `i mod n` in `[−(n−1)/2, (n−1)/2]` (`n` odd).
pub fn symmetric_rep(i: i64, n: u64) -> i64 {
    let n = n as i64;
    let r = i.rem_euclid(n);
    if r > (n - 1) / 2 {
        r - n
    } else {
        r
    }
}

fn poly_divrem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let d = den.len() - 1;
    let mut r = num.to_vec();
    if r.len() <= d {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - d];
    for k in (d..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        q[k - d] = c.clone();
        for (i, di) in den.iter().enumerate() {
            r[k - d + i] -= &c * di;
        }
    }
    r.truncate(d);
    (q, r)
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be ≥ 1".into()));
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = poly_divrem_monic(&p, &cyclotomic_polynomial(d)?);
        debug_assert!(r.iter().all(Zero::is_zero));
        p = q;
    }
    Ok(p)
}

/// `ℤ[μ_n]` with the power basis `1, ζ, …, ζ^{φ(n)−1}`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycRing {
    n: u64,
    phi: Vec<BigInt>,
}

impl CycRing {
    pub fn new(n: u64) -> Result<Arc<Self>> {
        Ok(Arc::new(Self {
            n,
            phi: cyclotomic_polynomial(n)?,
        }))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `φ(n)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.phi
    }

    fn reduce(&self, mut c: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        if c.len() > d {
            c = poly_divrem_monic(&c, &self.phi).1;
        }
        c.resize(d, BigInt::zero());
        c
    }
}

pub fn zero(ring: &Arc<CycRing>) -> CycElement {
    CycElement::from_coeffs(ring, vec![])
}

pub fn one(ring: &Arc<CycRing>) -> CycElement {
    int(ring, 1)
}

pub fn int(ring: &Arc<CycRing>, k: i64) -> CycElement {
    CycElement::from_coeffs(ring, vec![BigInt::from(k)])
}

/// `ζᵏ`.
pub fn zeta_pow(ring: &Arc<CycRing>, k: i64) -> CycElement {
    let e = k.rem_euclid(ring.n as i64) as usize;
    let mut c = vec![BigInt::zero(); e + 1];
    c[e] = BigInt::one();
    CycElement::from_coeffs(ring, c)
}

pub fn zeta(ring: &Arc<CycRing>) -> CycElement {
    zeta_pow(ring, 1)
}

#[derive(Clone)]
pub struct CycElement {
    ring: Arc<CycRing>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycElement {
    fn eq(&self, o: &Self) -> bool {
        self.ring.n == o.ring.n && self.coeffs == o.coeffs
    }
}

impl Eq for CycElement {}

impl fmt::Debug for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[N={}] {}", self.ring.n, self)
    }
}

impl fmt::Display for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            if out.is_empty() {
                out = if c.is_negative() { format!("-{body}") } else { body };
            } else {
                out += if c.is_negative() { " - " } else { " + " };
                out += &body;
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Serialize for CycElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            #[serde(rename = "N")]
            n: u64,
            #[serde(with = "crate::json::int_vec")]
            coeffs: &'a [BigInt],
            text: String,
        }
        Repr {
            n: self.ring.n,
            coeffs: &self.coeffs,
            text: self.to_string(),
        }
        .serialize(s)
    }
}

impl CycElement {
    /// Class of `Σ cᵢ xⁱ`.
    pub fn from_coeffs(ring: &Arc<CycRing>, c: Vec<BigInt>) -> Self {
        Self {
            ring: ring.clone(),
            coeffs: ring.reduce(c),
        }
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == one(&self.ring)
    }

    fn same_ring(&self, o: &Self) {
        assert_eq!(self.ring.n, o.ring.n, "elements of different cyclotomic rings");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_ring(o);
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Self {
            ring: self.ring.clone(),
            coeffs: c,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_ring(o);
        let d = self.coeffs.len();
        if d == 0 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(&self.ring, c)
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Matrix of `v ↦ self·v` on the power basis.
    pub fn multiplication_matrix(&self) -> IntMatrix {
        let d = self.ring.degree();
        let cols: Vec<Vec<BigInt>> = (0..d)
            .map(|j| self.mul(&zeta_pow(&self.ring, j as i64)).coeffs)
            .collect();
        IntMatrix::from_columns(d, &cols).expect("square")
    }

    /// `N_{ℚ(μ_N)/ℚ}`, the product of the conjugates, as a determinant.
    pub fn norm(&self) -> BigInt {
        det(&self.multiplication_matrix()).expect("square")
    }

    /// `Res(Φ_N, rep)` via the Sylvester matrix; equals the norm because
    /// `Φ_N` is monic.
    pub fn resultant_norm(&self) -> BigInt {
        let f = &self.ring.phi;
        let mut g = self.coeffs.clone();
        while g.last().is_some_and(Zero::is_zero) {
            g.pop();
        }
        if g.is_empty() {
            return BigInt::zero();
        }
        let m = f.len() - 1;
        let k = g.len() - 1;
        let size = m + k;
        let mut s = IntMatrix::zeros(size, size);
        for r in 0..k {
            for (i, c) in f.iter().rev().enumerate() {
                s.set(r, r + i, c.clone());
            }
        }
        for r in 0..m {
            for (i, c) in g.iter().rev().enumerate() {
                s.set(k + r, r + i, c.clone());
            }
        }
        det(&s).expect("square")
    }

    /// `self / o`, required to lie in `ℤ[μ_N]`.
    pub fn div_exact(&self, o: &Self) -> Result<Self> {
        self.same_ring(o);
        let m = o.multiplication_matrix();
        let x = solve_rational(&m, &self.coeffs).ok_or(Error::InexactDivision("divisor is zero"))?;
        let mut out = Vec::with_capacity(x.len());
        for q in x {
            if !q.is_integer() {
                return Err(Error::InexactDivision("quotient is not integral"));
            }
            out.push(q.to_integer());
        }
        Ok(Self {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    /// `(s, k)` with `self = s·ζᵏ`, `s = ±1`, if `self` is a signed root of
    /// unity of order dividing `2N`.
    pub fn as_signed_root_of_unity(&self) -> Option<(i8, u64)> {
        (0..self.ring.n).find_map(|k| {
            let z = zeta_pow(&self.ring, k as i64);
            if *self == z {
                Some((1, k))
            } else if *self == z.neg() {
                Some((-1, k))
            } else {
                None
            }
        })
    }

    /// `σ_ρ: ζ ↦ ζ^ρ`.
    pub fn galois(&self, rho: i64) -> Self {
        let mut acc = zero(&self.ring);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let t = zeta_pow(&self.ring, rho * i as i64);
                acc = acc.add(&t.scale(c));
            }
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }
}

/// Solves `m·x = b` over `ℚ` for square nonsingular `m`.
fn solve_rational(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = m.row(i).iter().cloned().map(BigRational::from_integer).collect();
            row.push(BigRational::from_integer(b[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}

fn check_odd(n: u64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParams(format!("N = {n} must be odd and ≥ 3")));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct FaReport {
    #[serde(rename = "N")]
    pub n: u64,
    /// `∏_{i=1}^{(N−1)/2} (−ζⁱ)ⁱ`.
    pub value: CycElement,
    /// `±ζᵏ` form of the value.
    pub sign: i8,
    pub zeta_exponent: u64,
    pub quotient_form_agrees: bool,
    pub closed_form_agrees: bool,
    pub sixth_power_is_one: bool,
}

/// `f_A(a₀)` by the direct product, by exact division of
/// `∏(−1+ζⁱ)ⁱ` by `∏(−1+ζ⁻ⁱ)ⁱ`, and by the closed form
/// `(−1)^{(N²−1)/8} ζ^{(N−1)N(N+1)/24}`.
pub fn fa_at_a0(n: u64) -> Result<FaReport> {
    check_odd(n)?;
    let ring = CycRing::new(n)?;
    let half = (n as i64 - 1) / 2;
    let minus_one = int(&ring, -1);
    let mut direct = one(&ring);
    let mut num = one(&ring);
    let mut den = one(&ring);
    for i in 1..=half {
        direct = direct.mul(&zeta_pow(&ring, i).neg().pow(i as u64));
        num = num.mul(&minus_one.add(&zeta_pow(&ring, i)).pow(i as u64));
        den = den.mul(&minus_one.add(&zeta_pow(&ring, -i)).pow(i as u64));
    }
    let quotient = num.div_exact(&den)?;
    let sign_exp = (n * n - 1) / 8;
    let zeta_exp = ((n - 1) * n * (n + 1) / 24) as i64;
    let mut closed = zeta_pow(&ring, zeta_exp);
    if sign_exp % 2 == 1 {
        closed = closed.neg();
    }
    let (sign, k) = direct
        .as_signed_root_of_unity()
        .ok_or_else(|| Error::Invariant(format!("f_A(a0) = {direct} is not ±ζ^k")))?;
    Ok(FaReport {
        n,
        sign,
        zeta_exponent: k,
        quotient_form_agrees: quotient == direct,
        closed_form_agrees: closed == direct,
        sixth_power_is_one: direct.pow(6).is_one(),
        value: direct,
    })
}

/// Polynomials in `Y` over `ℤ[μ_N]`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPoly {
    ring: Arc<CycRing>,
    coeffs: Vec<CycElement>,
}

impl CycPoly {
    pub fn new(ring: &Arc<CycRing>, mut coeffs: Vec<CycElement>) -> Self {
        while coeffs.last().is_some_and(CycElement::is_zero) {
            coeffs.pop();
        }
        Self {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// `a·Y + b`.
    pub fn linear(a: CycElement, b: CycElement) -> Self {
        let ring = a.ring.clone();
        Self::new(&ring, vec![b, a])
    }

    pub fn constant(c: CycElement) -> Self {
        let ring = c.ring.clone();
        Self::new(&ring, vec![c])
    }

    pub fn coeffs(&self) -> &[CycElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> CycElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| zero(&self.ring))
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.ring, (0..len).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(&self.ring, vec![]);
        }
        let mut c = vec![zero(&self.ring); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.ring, c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(one(&self.ring)), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.scale(&BigInt::from(i)))
            .collect();
        Self::new(&self.ring, c)
    }

    pub fn eval(&self, y: &CycElement) -> CycElement {
        self.coeffs
            .iter()
            .rev()
            .fold(zero(&self.ring), |acc, c| acc.mul(y).add(c))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothnessReport {
    #[serde(rename = "N")]
    pub n: u64,
    /// `−∏_{j=2}^{(N−1)/2} (ζ − ζʲ)ʲ`.
    pub unit: CycElement,
    #[serde(with = "crate::json::int")]
    pub norm_abs: BigInt,
    /// `k` with `|norm| = Nᵏ`, if such `k` exists.
    pub power_of_n: Option<u32>,
    /// Every prime factor of the norm divides `N`.
    pub unit_away_from_n: bool,
    /// `−d/dY ∏_{j=1}^{(N−1)/2} (Y − ζʲ)ʲ` at `Y = ζ` equals the product.
    pub derivative_agrees: bool,
}

/// Strips every prime factor of `n` from `x`.
fn strip_primes_of(mut x: BigInt, n: u64) -> BigInt {
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            let bp = BigInt::from(p);
            while !x.is_zero() && (&x % &bp).is_zero() {
                x /= &bp;
            }
        }
        p += 1;
    }
    x
}

pub fn smoothness_unit(n: u64) -> Result<SmoothnessReport> {
    check_odd(n)?;
    let ring = CycRing::new(n)?;
    let half = (n as i64 - 1) / 2;
    let z = zeta(&ring);
    let mut prod = one(&ring);
    for j in 2..=half {
        prod = prod.mul(&z.sub(&zeta_pow(&ring, j)).pow(j as u64));
    }
    let unit = prod.neg();

    let y = CycPoly::linear(one(&ring), zero(&ring));
    let mut big = CycPoly::constant(one(&ring));
    for j in 1..=half {
        let f = y.add(&CycPoly::constant(zeta_pow(&ring, j).neg()));
        big = big.mul(&f.pow(j as u32));
    }
    let via_derivative = big.derivative().eval(&z).neg();

    let norm_abs = unit.norm().abs();
    let nb = BigInt::from(n);
    let mut rest = norm_abs.clone();
    let mut k = 0u32;
    while !rest.is_zero() && (&rest % &nb).is_zero() {
        rest /= &nb;
        k += 1;
    }
    Ok(SmoothnessReport {
        n,
        power_of_n: rest.is_one().then_some(k),
        unit_away_from_n: strip_primes_of(norm_abs.clone(), n).is_one(),
        norm_abs,
        derivative_agrees: via_derivative == unit,
        unit,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FivrootReport {
    pub identity_holds: bool,
    /// `c = 2 − 2(ζ² + ζ³) − ζ − ζ⁴`.
    pub c: CycElement,
    pub c_simplified: CycElement,
    pub c_is_4_plus_zeta_plus_zeta4: bool,
    pub value_at_0: CycElement,
    pub lhs_at_1_is_zero: bool,
}

fn fivroot_sides(ring: &Arc<CycRing>) -> (CycPoly, CycPoly, CycElement) {
    let m1 = int(ring, -1);
    let lin = |k: i64| CycPoly::linear(m1.clone(), zeta_pow(ring, k));
    let lhs = lin(1)
        .mul(&lin(2).pow(2))
        .add(&lin(4).mul(&lin(3).pow(2)));
    let z = |k| zeta_pow(ring, k);
    let c = int(ring, 2)
        .sub(&z(2).add(&z(3)).scale(&BigInt::from(2)))
        .sub(&z(1))
        .sub(&z(4));
    let two = int(ring, 2);
    let quad = CycPoly::new(ring, vec![two.clone(), c.clone(), two]);
    let rhs = CycPoly::linear(m1.clone(), one(ring)).mul(&quad);
    (lhs, rhs, c)
}

/// `(−Y+ζ)(−Y+ζ²)² + (−Y+ζ⁴)(−Y+ζ³)² = (1−Y)(2Y² + cY + 2)` in `ℤ[μ₅][Y]`.
pub fn fivroot_identity() -> FivrootReport {
    let ring = CycRing::new(5).expect("N = 5");
    let (lhs, rhs, c) = fivroot_sides(&ring);
    let simplified = int(&ring, 4).add(&zeta(&ring)).add(&zeta_pow(&ring, 4));
    FivrootReport {
        identity_holds: lhs == rhs,
        c_is_4_plus_zeta_plus_zeta4: c == simplified,
        c_simplified: simplified,
        c,
        value_at_0: lhs.eval(&zero(&ring)),
        lhs_at_1_is_zero: lhs.eval(&one(&ring)).is_zero(),
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow_mod(b: u64, e: u64, p: u64) -> u64 {
    let (mut acc, mut b, mut e) = (1u128, b as u128 % p as u128, e);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    acc as u64
}

fn mod_p(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// The homomorphism `ℤ[μ_N] → 𝔽_p`, `ζ ↦ r`, for a split prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEmbedding {
    #[serde(rename = "N")]
    pub n: u64,
    pub p: u64,
    pub root: u64,
}

impl PrimeEmbedding {
    pub fn new(n: u64, p: u64, root: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if n == 0 || p % n != 1 {
            return Err(Error::Domain(format!("only split primes p ≡ 1 mod {n} are supported, got {p}")));
        }
        let phi = cyclotomic_polynomial(n)?;
        let r = root % p;
        let val = phi
            .iter()
            .rev()
            .fold(0u64, |acc, c| ((acc as u128 * r as u128 + mod_p(c, p) as u128) % p as u128) as u64);
        if val != 0 {
            return Err(Error::Domain(format!("{r} is not a root of Φ_{n} mod {p}")));
        }
        debug_assert!(pow_mod(r, n, p) == 1 && (1..n).all(|k| pow_mod(r, k, p) != 1));
        Ok(Self { n, p, root: r })
    }

    /// Every root of `Φ_N` in `𝔽_p`, by exhaustive search.
    pub fn all(n: u64, p: u64) -> Result<Vec<Self>> {
        if !is_prime(p) || n == 0 || p % n != 1 {
            return Err(Error::Domain(format!("only split primes p ≡ 1 mod {n} are supported, got {p}")));
        }
        Ok((1..p).filter_map(|r| Self::new(n, p, r).ok()).collect())
    }

    pub fn reduce(&self, e: &CycElement) -> Result<u64> {
        if e.ring.n != self.n {
            return Err(Error::ParamMismatch);
        }
        let p = self.p as u128;
        let mut acc = 0u128;
        for c in e.coeffs.iter().rev() {
            acc = (acc * self.root as u128 + mod_p(c, self.p) as u128) % p;
        }
        Ok(acc as u64)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Mod11Row {
    pub root: u64,
    pub c: u64,
    /// `[2, c, 2]` reduced: coefficients of `Y⁰, Y¹, Y²`.
    pub polynomial: [u64; 3],
    pub is_twice_y_minus_1_squared: bool,
    pub discriminant: u64,
    pub roots_in_field: Vec<u64>,
}

/// Reduction of `2Y² + cY + 2` along each embedding `ℤ[μ₅] → 𝔽₁₁`.
pub fn mod11_double_root() -> Vec<Mod11Row> {
    let p = 11u64;
    let ring = CycRing::new(5).expect("N = 5");
    let (_, _, c) = fivroot_sides(&ring);
    PrimeEmbedding::all(5, p)
        .expect("11 splits in ℚ(μ₅)")
        .into_iter()
        .map(|emb| {
            let cr = emb.reduce(&c).expect("same ring");
            let eval = |y: u64| (2 * y * y + cr * y + 2) % p;
            Mod11Row {
                root: emb.root,
                c: cr,
                polynomial: [2, cr, 2],
                is_twice_y_minus_1_squared: cr == (p - 4) % p,
                discriminant: (cr * cr + p * p - 16) % p,
                roots_in_field: (0..p).filter(|&y| eval(y) == 0).collect(),
            }
        })
        .collect()
}

/// `(ρ{i/ρ} − {i}) / N`, required to be an integer.
pub fn galois_exponent(i: i64, rho: i64, n: u64) -> Result<i64> {
    check_odd(n)?;
    let nn = n as i64;
    if rho.gcd(&nn) != 1 {
        return Err(Error::Domain(format!("{rho} is not a unit mod {n}")));
    }
    let inv = BigInt::from(rho)
        .extended_gcd(&BigInt::from(nn))
        .x
        .to_i64()
        .expect("small");
    let q = rho * symmetric_rep(i * inv, n) - symmetric_rep(i, n);
    if q % nn != 0 {
        return Err(Error::InexactDivision("Galois exponent"));
    }
    Ok(q / nn)
}

/// Checks integrality of every Galois exponent for `N`.
pub fn galois_integrality(n: u64) -> Result<bool> {
    let nn = n as i64;
    for rho in (1..nn).filter(|r| r.gcd(&nn) == 1) {
        for i in 0..nn {
            match galois_exponent(i, rho, n) {
                Ok(_) => {}
                Err(Error::InexactDivision(_)) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct NormSample {
    pub element: CycElement,
    #[serde(with = "crate::json::int")]
    pub norm: BigInt,
    pub resultant_agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclotomicReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub norms: Vec<NormSample>,
    pub zeta_to_n_is_one: bool,
    pub f_a_at_a0: FaReport,
    pub smoothness: SmoothnessReport,
    pub galois_integrality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fivroot: Option<FivrootReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mod11: Option<Vec<Mod11Row>>,
}

pub fn cyclotomic_report(n: u64, with_mod11: bool) -> Result<CyclotomicReport> {
    check_odd(n)?;
    let ring = CycRing::new(n)?;
    let z = zeta(&ring);
    let norms = [z.clone(), one(&ring).sub(&z), z.sub(&zeta_pow(&ring, 2)), int(&ring, 2).add(&z)]
        .into_iter()
        .map(|e| {
            let norm = e.norm();
            NormSample {
                resultant_agrees: e.resultant_norm() == norm,
                norm,
                element: e,
            }
        })
        .collect();
    Ok(CyclotomicReport {
        n,
        norms,
        zeta_to_n_is_one: z.pow(n).is_one(),
        f_a_at_a0: fa_at_a0(n)?,
        smoothness: smoothness_unit(n)?,
        galois_integrality: galois_integrality(n)?,
        fivroot: (n == 5).then(fivroot_identity),
        mod11: with_mod11.then(mod11_double_root),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn elem(ring: &Arc<CycRing>, c: &[i64]) -> CycElement {
        CycElement::from_coeffs(ring, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_polynomial(n).unwrap().iter().map(|c| c.to_i64().unwrap()).collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(as_i64(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(as_i64(15), vec![1, -1, 0, 1, -1, 1, 0, -1, 1]);
    }

    #[test]
    fn basics() {
        let r = CycRing::new(5).unwrap();
        let z = zeta(&r);
        assert_eq!(z.norm(), BigInt::one());
        assert_eq!(one(&r).sub(&z).norm(), BigInt::from(5));
        assert_eq!(one(&r).sub(&z).resultant_norm(), BigInt::from(5));
        assert!(z.pow(5).is_one());
        assert_eq!(z.pow(4), z.add(&z.pow(2)).add(&z.pow(3)).add(&one(&r)).neg());
        assert_eq!(int(&r, 3).norm(), BigInt::from(81));
        assert_eq!(zero(&r).resultant_norm(), BigInt::zero());
        assert_eq!(elem(&r, &[-1, 0, 2]).to_string(), "-1 + 2*z^2");
    }

    #[test]
    fn exact_division() {
        let r = CycRing::new(7).unwrap();
        let a = elem(&r, &[1, -2, 0, 3]);
        let b = one(&r).sub(&zeta(&r));
        assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
        assert!(matches!(one(&r).div_exact(&int(&r, 2)), Err(Error::InexactDivision(_))));
        assert!(one(&r).div_exact(&zero(&r)).is_err());
    }

    #[test]
    fn fa_values() {
        let r3 = fa_at_a0(3).unwrap();
        assert_eq!((r3.sign, r3.zeta_exponent), (-1, 1));
        let r5 = fa_at_a0(5).unwrap();
        assert_eq!((r5.sign, r5.zeta_exponent), (-1, 0));
        let r7 = fa_at_a0(7).unwrap();
        assert_eq!((r7.sign, r7.zeta_exponent), (1, 0));
        for n in (3..=15).step_by(2) {
            let r = fa_at_a0(n).unwrap();
            assert!(r.quotient_form_agrees && r.closed_form_agrees && r.sixth_power_is_one, "N = {n}");
        }
        assert!(fa_at_a0(4).is_err());
    }

    #[test]
    fn smoothness() {
        let s3 = smoothness_unit(3).unwrap();
        assert_eq!(s3.unit, int(&CycRing::new(3).unwrap(), -1));
        assert_eq!(s3.norm_abs, BigInt::one());
        let s5 = smoothness_unit(5).unwrap();
        assert_eq!(s5.norm_abs, BigInt::from(25));
        assert_eq!(s5.power_of_n, Some(2));
        let s7 = smoothness_unit(7).unwrap();
        assert!(s7.power_of_n.is_some());
        assert_eq!(s7.unit.resultant_norm().abs(), s7.norm_abs);
        for n in (3..=15).step_by(2) {
            let s = smoothness_unit(n).unwrap();
            assert!(s.unit_away_from_n && s.derivative_agrees, "N = {n}");
        }
        // Composite N: 1 − ζ³ has norm a power of 5 only.
        assert_eq!(smoothness_unit(15).unwrap().power_of_n, None);
    }

    #[test]
    fn fivroot() {
        let r = fivroot_identity();
        assert!(r.identity_holds);
        assert!(r.c_is_4_plus_zeta_plus_zeta4);
        assert_eq!(r.value_at_0, int(&CycRing::new(5).unwrap(), 2));
        assert!(r.lhs_at_1_is_zero);
    }

    #[test]
    fn mod11_table() {
        let rows = mod11_double_root();
        let roots: Vec<u64> = rows.iter().map(|r| r.root).collect();
        assert_eq!(roots, vec![3, 4, 5, 9]);
        for r in &rows {
            match r.root {
                5 | 9 => {
                    assert_eq!(r.c, 7);
                    assert!(r.is_twice_y_minus_1_squared);
                    assert_eq!(r.roots_in_field, vec![1]);
                    assert_eq!(r.discriminant, 0);
                }
                _ => {
                    assert_eq!(r.c, 0);
                    assert!(!r.is_twice_y_minus_1_squared);
                    assert!(r.roots_in_field.is_empty());
                }
            }
        }
    }

    #[test]
    fn embeddings() {
        assert!(PrimeEmbedding::new(5, 11, 3).is_ok());
        assert!(PrimeEmbedding::new(5, 11, 2).is_err());
        assert!(PrimeEmbedding::new(5, 7, 2).is_err());
        assert!(PrimeEmbedding::new(5, 12, 2).is_err());
        assert_eq!(PrimeEmbedding::all(3, 31).unwrap().len(), 2);
    }

    #[test]
    fn galois() {
        for n in (3..=15).step_by(2) {
            assert!(galois_integrality(n).unwrap(), "N = {n}");
        }
        assert_eq!(galois_exponent(1, 2, 5).unwrap(), (2 * symmetric_rep(3, 5) - 1) / 5);
        let r = CycRing::new(7).unwrap();
        let x = elem(&r, &[2, 1, 0, -1]);
        assert_eq!(x.galois(3).norm(), x.norm());
        assert_eq!(x.galois(1), x);
    }

    #[test]
    fn symmetric_reps() {
        assert_eq!((0..5).map(|i| symmetric_rep(i, 5)).collect::<Vec<_>>(), vec![0, 1, 2, -2, -1]);
        assert_eq!(symmetric_rep(-1, 7), -1);
    }

    fn arb_elem(n: u64) -> impl Strategy<Value = Vec<i64>> {
        let d = cyclotomic_polynomial(n).unwrap().len() - 1;
        prop::collection::vec(-5i64..=5, d)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in arb_elem(7), b in arb_elem(7), c in arb_elem(7)) {
            let r = CycRing::new(7).unwrap();
            let (a, b, c) = (elem(&r, &a), elem(&r, &b), elem(&r, &c));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&a.neg()), zero(&r));
            prop_assert_eq!(a.mul(&one(&r)), a);
        }

        #[test]
        fn norm_multiplicative(a in arb_elem(5), b in arb_elem(5)) {
            let r = CycRing::new(5).unwrap();
            let (a, b) = (elem(&r, &a), elem(&r, &b));
            prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
            prop_assert_eq!(a.norm(), a.resultant_norm());
        }

        #[test]
        fn norm_matches_resultant_n9(a in arb_elem(9)) {
            let r = CycRing::new(9).unwrap();
            let a = elem(&r, &a);
            prop_assert_eq!(a.norm(), a.resultant_norm());
        }

        #[test]
        fn reduction_is_homomorphism(a in arb_elem(5), b in arb_elem(5), p in prop::sample::select(vec![11u64, 31])) {
            let r = CycRing::new(5).unwrap();
            let (a, b) = (elem(&r, &a), elem(&r, &b));
            for emb in PrimeEmbedding::all(5, p).unwrap() {
                let (ra, rb) = (emb.reduce(&a).unwrap(), emb.reduce(&b).unwrap());
                prop_assert_eq!(emb.reduce(&a.mul(&b)).unwrap(), ra * rb % p);
                prop_assert_eq!(emb.reduce(&a.add(&b)).unwrap(), (ra + rb) % p);
            }
        }
    }
}
