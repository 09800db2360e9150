//! Reduced words in the free group `Γ̄(2) = ⟨A, B⟩`.
//!
//! Words are stored run-length encoded as syllables `(generator, exponent)`.
//! The text form uses the alphabet `{A, a, B, b}` where lowercase letters are
//! inverses, so `"ABab"` is the commutator `C = ABA⁻¹B⁻¹`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

/// A freely reduced word. Adjacent syllables always use distinct generators
/// and no exponent is zero, so equality of values is equality in the group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    syllables: Vec<(Gen, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn a() -> Self {
        Self::power(Gen::A, 1)
    }

    pub fn b() -> Self {
        Self::power(Gen::B, 1)
    }

    /// `C = ABA⁻¹B⁻¹`.
    pub fn c() -> Self {
        Self::commutator(&Self::a(), &Self::b())
    }

    pub fn power(gen: Gen, exp: i64) -> Self {
        Self::reduce([(gen, exp)])
    }

    /// Free reduction of an arbitrary sequence of syllables.
    pub fn reduce<I: IntoIterator<Item = (Gen, i64)>>(raw: I) -> Self {
        let mut out: Vec<(Gen, i64)> = Vec::new();
        for (g, e) in raw {
            push_syllable(&mut out, g, e);
        }
        Self { syllables: out }
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, counting `A³` as three.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        Self {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Self, v: &Self) -> Self {
        &(&(u * v) * &u.inverse()) * &v.inverse()
    }

    /// `g w g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        &(g * self) * &g.inverse()
    }

    /// Image under the abelianisation `φ₁ : Γ̄(2) → ℤ²`.
    pub fn exponent_sums(&self) -> (i64, i64) {
        self.syllables
            .iter()
            .fold((0, 0), |(sa, sb), &(g, e)| match g {
                Gen::A => (sa + e, sb),
                Gen::B => (sa, sb + e),
            })
    }

    /// Letters as `(generator, ±1)` in order.
    pub fn letters(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }
}

fn push_syllable(out: &mut Vec<(Gen, i64)>, g: Gen, e: i64) {
    if e == 0 {
        return;
    }
    match out.last_mut() {
        Some((lg, le)) if *lg == g => {
            *le += e;
            if *le == 0 {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        let mut out = self.syllables.clone();
        for &(g, e) in &rhs.syllables {
            push_syllable(&mut out, g, e);
        }
        FreeWord { syllables: out }
    }
}

impl Mul for FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: FreeWord) -> FreeWord {
        &self * &rhs
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for (g, e) in self.letters() {
            let ch = match (g, e > 0) {
                (Gen::A, true) => 'A',
                (Gen::A, false) => 'a',
                (Gen::B, true) => 'B',
                (Gen::B, false) => 'b',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Parses words over `{A, a, B, b}`; `"1"` and the empty string are the
    /// identity. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::identity());
        }
        let mut raw = Vec::with_capacity(s.len());
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            raw.push(match ch {
                'A' => (Gen::A, 1),
                'a' => (Gen::A, -1),
                'B' => (Gen::B, 1),
                'b' => (Gen::B, -1),
                other => return Err(Error::Parse(format!("unexpected letter {other:?} in word"))),
            });
        }
        Ok(Self::reduce(raw))
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ordering of the double product in the `Φ_N` relation
/// `A^N B^N A^{-N} B^{-N} = ∏ A^{N-1-i} B^j C B^{-j} A^{i+1-N}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductOrder {
    /// `i` outer, `j` inner, both increasing. This is the order as written.
    OuterIAscending,
    OuterJAscending,
    OuterIDescending,
    OuterJDescending,
}

impl ProductOrder {
    pub const ALL: [ProductOrder; 4] = [
        ProductOrder::OuterIAscending,
        ProductOrder::OuterJAscending,
        ProductOrder::OuterIDescending,
        ProductOrder::OuterJDescending,
    ];
}

fn phi_generator(n: i64, i: i64, j: i64) -> FreeWord {
    // A^{N-1-i} B^j C B^{-j} A^{i+1-N}
    let conj = FreeWord::power(Gen::A, n - 1 - i) * FreeWord::power(Gen::B, j);
    FreeWord::c().conjugate_by(&conj)
}

pub fn phi_relation_lhs(n: i64) -> FreeWord {
    FreeWord::reduce([(Gen::A, n), (Gen::B, n), (Gen::A, -n), (Gen::B, -n)])
}

pub fn phi_relation_rhs(n: i64, order: ProductOrder) -> FreeWord {
    let idx: Vec<i64> = (0..n).collect();
    let rev: Vec<i64> = (0..n).rev().collect();
    let mut out = FreeWord::identity();
    let (outer, inner, i_outer) = match order {
        ProductOrder::OuterIAscending => (&idx, &idx, true),
        ProductOrder::OuterJAscending => (&idx, &idx, false),
        ProductOrder::OuterIDescending => (&rev, &rev, true),
        ProductOrder::OuterJDescending => (&rev, &rev, false),
    };
    for &p in outer {
        for &q in inner {
            let (i, j) = if i_outer { (p, q) } else { (q, p) };
            out = &out * &phi_generator(n, i, j);
        }
    }
    out
}

/// Checks the relation between the `N² + 2` generators of `Φ_N` with the
/// product taken in the written order.
pub fn verify_phi_relation(n: i64) -> bool {
    n >= 1 && phi_relation_lhs(n) == phi_relation_rhs(n, ProductOrder::OuterIAscending)
}

/// All product orders for which the `Φ_N` relation holds.
pub fn phi_relation_orders(n: i64) -> Vec<ProductOrder> {
    let lhs = phi_relation_lhs(n);
    ProductOrder::ALL
        .into_iter()
        .filter(|&o| phi_relation_rhs(n, o) == lhs)
        .collect()
}

/// `A B^N A⁻¹ B^{-N} = C · (BCB⁻¹) ⋯ (B^{N-1} C B^{1-N})`.
pub fn verify_conjugation_expansion(n: i64) -> bool {
    if n < 1 {
        return false;
    }
    let lhs = FreeWord::reduce([(Gen::A, 1), (Gen::B, n), (Gen::A, -1), (Gen::B, -n)]);
    let c = FreeWord::c();
    let rhs = (0..n).fold(FreeWord::identity(), |acc, j| {
        &acc * &c.conjugate_by(&FreeWord::power(Gen::B, j))
    });
    lhs == rhs
}
