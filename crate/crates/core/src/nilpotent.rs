//! The free class-3 nilpotent quotient `Γ̄(2)/Γ̄(2)₄`.
//!
//! Elements are kept in the normal form `A^a B^b C^c D^d E^e` with
//! `C = [A,B]`, `D = [C,A]`, `E = [C,B]` (`[x,y] = xyx⁻¹y⁻¹`), `D` and `E`
//! central. The collection rules are
//!
//! ```text
//! BA → AB·C⁻¹D⁻¹E⁻¹      CA → AC·D      CB → BC·E
//! ```
//!
//! and the product below is their closed form:
//!
//! ```text
//! (a,b,c,d,e)(a',b',c',d',e') =
//!   ( a+a', b+b', c+c'-a'b,
//!     d+d'+c·a' - b·a'(a'+1)/2,
//!     e+e' - a'·b(b+1)/2 + (c-a'b)·b' )
//! ```

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::json::IntRef;

use crate::perm::PermAction;
use crate::words::{FreeWord, Gen};
use crate::{Error, Result};

/// Normal form `A^a B^b C^c D^d E^e` modulo `Γ̄(2)₄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Class3Element {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
    pub e: BigInt,
}

impl Class3Element {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_exponents<T: Into<BigInt>>(a: T, b: T, c: T, d: T, e: T) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
            e: e.into(),
        }
    }

    pub fn gen_power(gen: Gen, k: i64) -> Self {
        match gen {
            Gen::A => Self::from_exponents(k, 0, 0, 0, 0),
            Gen::B => Self::from_exponents(0, k, 0, 0, 0),
        }
    }

    pub fn c_power(k: i64) -> Self {
        Self::from_exponents(0, 0, k, 0, 0)
    }

    pub fn d_power(k: i64) -> Self {
        Self::from_exponents(0, 0, 0, k, 0)
    }

    pub fn e_power(k: i64) -> Self {
        Self::from_exponents(0, 0, 0, 0, k)
    }

    pub fn is_identity(&self) -> bool {
        self.exponents().iter().all(|x| x.is_zero())
    }

    pub fn exponents(&self) -> [&BigInt; 5] {
        [&self.a, &self.b, &self.c, &self.d, &self.e]
    }

    pub fn inverse(&self) -> Self {
        // g⁻¹ = E^{-e} D^{-d} C^{-c} B^{-b} A^{-a}
        let pieces = [
            Self::from_exponents(0.into(), 0.into(), 0.into(), 0.into(), -&self.e),
            Self::from_exponents(0.into(), 0.into(), 0.into(), -&self.d, 0.into()),
            Self::from_exponents(0.into(), 0.into(), -&self.c, 0.into(), 0.into()),
            Self::from_exponents(0.into(), -&self.b, 0.into(), 0.into(), 0.into()),
            Self::from_exponents(-&self.a, 0.into(), 0.into(), 0.into(), 0.into()),
        ];
        pieces.iter().fold(Self::identity(), |acc, p| &acc * p)
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn commutator(x: &Self, y: &Self) -> Self {
        &(&(x * y) * &x.inverse()) * &y.inverse()
    }

    fn require_weight_two(&self) -> Result<()> {
        if self.a.is_zero() && self.b.is_zero() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "element {self} does not lie in Γ̄(2)₂ (A,B exponents must vanish)"
            )))
        }
    }
}

impl Mul for &Class3Element {
    type Output = Class3Element;

    fn mul(self, rhs: &Class3Element) -> Class3Element {
        let two = BigInt::from(2);
        let (a1, b1, c1) = (&self.a, &self.b, &self.c);
        let (a2, b2) = (&rhs.a, &rhs.b);
        let a2b1 = a2 * b1;
        let tri_a2 = (a2 * (a2 + 1u32)).div_floor(&two);
        let tri_b1 = (b1 * (b1 + 1u32)).div_floor(&two);
        Class3Element {
            a: a1 + a2,
            b: b1 + b2,
            c: c1 + &rhs.c - &a2b1,
            d: &self.d + &rhs.d + c1 * a2 - b1 * &tri_a2,
            e: &self.e + &rhs.e - a2 * &tri_b1 + (c1 - &a2b1) * b2,
        }
    }
}

impl Mul for Class3Element {
    type Output = Class3Element;

    fn mul(self, rhs: Class3Element) -> Class3Element {
        &self * &rhs
    }
}

impl fmt::Display for Class3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.a, self.b, self.c, self.d, self.e)
    }
}

impl Serialize for Class3Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.a, &self.b, &self.c, &self.d, &self.e].map(IntRef).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Class3Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c, d, e] = crate::json::int_array::deserialize::<_, 5>(d)?;
        Ok(Self { a, b, c, d, e })
    }
}

/// Image of a free word in `Γ̄(2)/Γ̄(2)₄`, collected syllable by syllable.
pub fn collect(w: &FreeWord) -> Class3Element {
    w.syllables()
        .iter()
        .fold(Class3Element::identity(), |acc, &(g, e)| {
            &acc * &Class3Element::gen_power(g, e)
        })
}

/// `φ₂`, defined on `Γ̄(2)₂` by `φ₂(C) = 1`.
pub fn phi2(x: &Class3Element) -> Result<BigInt> {
    x.require_weight_two()?;
    Ok(x.c.clone())
}

/// `ψ : Γ̄(2)₂/Γ̄(2)₄ ≅ ℤ³` with `[C,A] ↦ (1,0,0)`, `[C,B] ↦ (0,1,0)`, `C ↦ (0,0,1)`.
pub fn psi(x: &Class3Element) -> Result<[BigInt; 3]> {
    x.require_weight_two()?;
    Ok([x.d.clone(), x.e.clone(), x.c.clone()])
}

/// `N`, `N′` and `N″` for a level `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelParams {
    pub n: u64,
    pub n_prime: u64,
    pub n_double_prime: u64,
}

impl LevelParams {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("level N must be ≥ 1".into()));
        }
        let n_prime = if n % 2 == 1 { n } else { n / 2 };
        let n_double_prime = if n % 3 == 0 { n_prime / 3 } else { n_prime };
        Ok(Self {
            n,
            n_prime,
            n_double_prime,
        })
    }
}

fn residue(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// `ψ̄ : Φ_N → (ℤ/N′)³`, computed by peeling off `A^{s_A}` and `B^{s_B}`.
pub fn barpsi(w: &FreeWord, params: &LevelParams) -> Result<[u64; 3]> {
    let (sa, sb) = w.exponent_sums();
    let n = params.n as i64;
    if sa.rem_euclid(n) != 0 || sb.rem_euclid(n) != 0 {
        return Err(Error::Domain(format!(
            "word {w} has exponent sums ({sa},{sb}) not ≡ 0 mod {n}; not in Φ_N"
        )));
    }
    let peeled = &(&Class3Element::gen_power(Gen::B, -sb) * &Class3Element::gen_power(Gen::A, -sa))
        * &collect(w);
    let [d, e, c] = psi(&peeled)?;
    let m = params.n_prime;
    Ok([residue(&d, m), residue(&e, m), residue(&c, m)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Membership {
    None,
    Phi,
    PhiPrime,
    PhiDoublePrime,
}

/// Deepest member of `Γ̄(2) ⊃ Φ_N ⊃ Φ′_N ⊃ Φ″_N` containing `w`.
pub fn membership(w: &FreeWord, params: &LevelParams) -> Membership {
    let Ok([d, e, c]) = barpsi(w, params) else {
        return Membership::None;
    };
    if c != 0 {
        return Membership::Phi;
    }
    let n2 = params.n_double_prime;
    if d % n2 != 0 || e % n2 != 0 {
        return Membership::PhiPrime;
    }
    Membership::PhiDoublePrime
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Rank of `G_k/G_{k+1}` for a free group on `m` generators (necklace count).
pub fn witt_rank(m: u64, k: u64) -> Result<BigInt> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidParams("witt_rank needs m ≥ 1 and k ≥ 1".into()));
    }
    let base = BigInt::from(m);
    let sum = (1..=k)
        .filter(|d| k % d == 0)
        .map(|d| BigInt::from(mobius(d)) * num_traits::pow(base.clone(), (k / d) as usize))
        .fold(BigInt::zero(), |acc, t| acc + t);
    let (q, r) = sum.div_rem(&BigInt::from(k));
    if !r.is_zero() {
        return Err(Error::Invariant("necklace sum not divisible by k".into()));
    }
    Ok(q)
}

/// An integer-valued cubic `p(n) = Σ_k coeffs[k]·C(n,k)`, `k = 0..=3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialPoly {
    #[serde(with = "crate::json::int_array")]
    pub coeffs: [BigInt; 4],
}

impl BinomialPoly {
    /// Newton forward differences of the values at `n = 0, 1, 2, 3`.
    pub fn interpolate(values: &[BigInt; 4]) -> Self {
        let mut diffs = values.clone();
        let mut coeffs: [BigInt; 4] = Default::default();
        for k in 0..4 {
            coeffs[k] = diffs[0].clone();
            for i in 0..3 - k {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
        }
        Self { coeffs }
    }

    pub fn eval(&self, n: i64) -> BigInt {
        let n = BigInt::from(n);
        let mut binom = BigInt::one();
        let mut acc = BigInt::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * &binom;
            binom = binom * (&n - k) / (k + 1);
        }
        acc
    }

    /// Monomial coefficients of `6·p(n)`, lowest degree first.
    pub fn times_six_monomial(&self) -> [BigInt; 4] {
        // 6·C(n,1) = 6n, 6·C(n,2) = 3n² - 3n, 6·C(n,3) = n³ - 3n² + 2n
        let [c0, c1, c2, c3] = &self.coeffs;
        [
            c0 * 6,
            c1 * 6 - c2 * 3 + c3 * 2,
            c2 * 3 - c3 * 3,
            c3.clone(),
        ]
    }

    /// Human-readable `(q₃n³ + q₂n² + q₁n + q₀)/6`.
    pub fn render(&self) -> String {
        let m = self.times_six_monomial();
        let mut terms = Vec::new();
        for (deg, c) in m.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (deg, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "n".to_string(),
                (1, false) => format!("{mag}n"),
                (_, true) => format!("n^{deg}"),
                (_, false) => format!("{mag}n^{deg}"),
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (sign, body)) in terms.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => s.push('-'),
                (0, _) => {}
                (_, sg) => s.push_str(&format!(" {sg} ")),
            }
            s.push_str(body);
        }
        format!("({s})/6")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerIdentityRow {
    pub n: i64,
    /// Exponents `(x, y)` with `(αβ)ⁿ = αⁿ γ^{-n(n-1)/2} βⁿ α′ˣ β′ʸ`.
    #[serde(with = "crate::json::int_pair")]
    pub actual: (BigInt, BigInt),
    #[serde(with = "crate::json::int_pair")]
    pub claimed: (BigInt, BigInt),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HallPetrescuReport {
    pub n_max: i64,
    /// `n` values for which `βⁿα = α γ⁻ⁿ βⁿ α′ⁿ β′^{-n(n-1)/2}` fails.
    pub commutation_failures: Vec<i64>,
    pub power_rows: Vec<PowerIdentityRow>,
    pub alpha_prime_exponent: BinomialPoly,
    pub beta_prime_exponent: BinomialPoly,
    /// Whether the interpolated polynomials reproduce every row.
    pub polynomials_fit: bool,
    pub alpha_prime_matches_claim: bool,
    pub beta_prime_matches_claim: bool,
}

impl HallPetrescuReport {
    pub fn commutation_identity_holds(&self) -> bool {
        self.commutation_failures.is_empty()
    }
}

/// Evaluates both commutator identities used for the exponent of
/// `H′_{ℤ/N}` with `α = A`, `β = B`, `γ = [α,β]`, `α′ = [γ⁻¹,α]`,
/// `β′ = [γ⁻¹,β]`, for `0 ≤ n ≤ n_max`.
pub fn verify_hall_petrescu(n_max: i64) -> HallPetrescuReport {
    let alpha = Class3Element::gen_power(Gen::A, 1);
    let beta = Class3Element::gen_power(Gen::B, 1);
    let gamma = Class3Element::commutator(&alpha, &beta);
    let alpha_p = Class3Element::commutator(&gamma.inverse(), &alpha);
    let beta_p = Class3Element::commutator(&gamma.inverse(), &beta);
    debug_assert_eq!(alpha_p, Class3Element::d_power(-1));
    debug_assert_eq!(beta_p, Class3Element::e_power(-1));

    let mut commutation_failures = Vec::new();
    let mut power_rows = Vec::new();
    let ab = &alpha * &beta;
    for n in 0..=n_max {
        let lhs = &beta.pow(n) * &alpha;
        let rhs = [
            alpha.clone(),
            gamma.pow(-n),
            beta.pow(n),
            alpha_p.pow(n),
            beta_p.pow(-n * (n - 1) / 2),
        ]
        .iter()
        .fold(Class3Element::identity(), |acc, x| &acc * x);
        if lhs != rhs {
            commutation_failures.push(n);
        }

        // (αβ)ⁿ = αⁿ γ^{-n(n-1)/2} βⁿ · rest, with rest = α′ˣ β′ʸ = D^{-x} E^{-y}.
        let power = ab.pow(n);
        let head = &(&alpha.pow(n) * &gamma.pow(-n * (n - 1) / 2)) * &beta.pow(n);
        let rest = &head.inverse() * &power;
        debug_assert!(rest.a.is_zero() && rest.b.is_zero() && rest.c.is_zero());
        let actual = (-rest.d.clone(), -rest.e.clone());
        let claimed = (
            BigInt::from(-n * (n - 4) * (n + 1)),
            BigInt::from(n * (n - 1) * (n + 1)) / 6,
        );
        power_rows.push(PowerIdentityRow { n, actual, claimed });
    }

    let sample = |f: &dyn Fn(i64) -> BigInt| -> [BigInt; 4] { [f(0), f(1), f(2), f(3)] };
    let power_exps = |n: i64| {
        let rest = &(&(&alpha.pow(n) * &gamma.pow(-n * (n - 1) / 2)) * &beta.pow(n)).inverse()
            * &ab.pow(n);
        (-rest.d, -rest.e)
    };
    let alpha_poly = BinomialPoly::interpolate(&sample(&|n| power_exps(n).0));
    let beta_poly = BinomialPoly::interpolate(&sample(&|n| power_exps(n).1));
    let polynomials_fit = power_rows.iter().all(|r| {
        alpha_poly.eval(r.n) == r.actual.0 && beta_poly.eval(r.n) == r.actual.1
    });
    let alpha_prime_matches_claim = power_rows.iter().all(|r| r.actual.0 == r.claimed.0);
    let beta_prime_matches_claim = power_rows.iter().all(|r| r.actual.1 == r.claimed.1);

    HallPetrescuReport {
        n_max,
        commutation_failures,
        power_rows,
        alpha_prime_exponent: alpha_poly,
        beta_prime_exponent: beta_poly,
        polynomials_fit,
        alpha_prime_matches_claim,
        beta_prime_matches_claim,
    }
}

/// The finite group `H′_{ℤ/N} = Γ̄(2)/Φ″_N`.
///
/// A coset of `Φ″_N` is determined by the normal-form exponents reduced
/// modulo `(N, N, N′, N″, N″)`, and the class-3 product formula descends to
/// these residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelQuotient {
    pub params: LevelParams,
}

impl LevelQuotient {
    pub fn new(n: u64) -> Result<Self> {
        Ok(Self {
            params: LevelParams::new(n)?,
        })
    }

    fn moduli(&self) -> [u64; 5] {
        let p = &self.params;
        [p.n, p.n, p.n_prime, p.n_double_prime, p.n_double_prime]
    }

    pub fn order(&self) -> u64 {
        self.moduli().iter().product()
    }

    pub fn reduce(&self, x: &Class3Element) -> [u64; 5] {
        let m = self.moduli();
        let ex = x.exponents();
        std::array::from_fn(|i| residue(ex[i], m[i]))
    }

    pub fn mul(&self, x: [u64; 5], y: [u64; 5]) -> [u64; 5] {
        let lift = |v: [u64; 5]| Class3Element::from_exponents(v[0], v[1], v[2], v[3], v[4]);
        self.reduce(&(&lift(x) * &lift(y)))
    }

    pub fn encode(&self, x: [u64; 5]) -> usize {
        let m = self.moduli();
        x.iter()
            .zip(m.iter())
            .fold(0u64, |acc, (&v, &mi)| acc * mi + v) as usize
    }

    pub fn decode(&self, mut idx: usize) -> [u64; 5] {
        let m = self.moduli();
        let mut out = [0u64; 5];
        for i in (0..5).rev() {
            out[i] = (idx as u64) % m[i];
            idx /= m[i] as usize;
        }
        out
    }

    /// Right-regular action of `A` and `B` on the cosets `Φ″_N\Γ̄(2)`.
    pub fn regular_action(&self) -> PermAction {
        let order = self.order() as usize;
        let a = self.reduce(&Class3Element::gen_power(Gen::A, 1));
        let b = self.reduce(&Class3Element::gen_power(Gen::B, 1));
        let (px, py) = (0..order)
            .map(|i| {
                let g = self.decode(i);
                (self.encode(self.mul(g, a)), self.encode(self.mul(g, b)))
            })
            .unzip();
        PermAction::new(px, py).expect("regular action is a pair of permutations")
    }

    /// Least common multiple of element orders, by exhaustion.
    pub fn exponent(&self) -> u64 {
        let id = [0u64; 5];
        (0..self.order() as usize)
            .map(|i| {
                let g = self.decode(i);
                let mut acc = g;
                let mut k = 1u64;
                while acc != id {
                    acc = self.mul(acc, g);
                    k += 1;
                }
                k
            })
            .fold(1, num_integer::lcm)
    }
}
