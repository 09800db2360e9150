//! Genera, cusps and levels of the curves `X_Γ` attached to finite-index
//! subgroups `Γ ⊂ Γ̄(2)`, given as permutation actions.
//!
//! Cusps over `∞`, `0` and `1` of `X(2)` are the cycles of `π_x`, `π_y` and
//! `π₁ = π_x⁻¹ ∘ π_y`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::heisenberg::HeisParams;
use crate::nilpotent::LevelParams;
pub use crate::perm::PermAction;
use crate::perm::cycles;
use crate::psl2;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspCycles {
    pub inf: Vec<u64>,
    pub zero: Vec<u64>,
    pub one: Vec<u64>,
}

impl CuspCycles {
    pub fn of(action: &PermAction) -> Self {
        let lens = |p: &[usize]| {
            let mut v: Vec<u64> = cycles(p).iter().map(|c| c.len() as u64).collect();
            v.sort_unstable();
            v
        };
        Self {
            inf: lens(action.px()),
            zero: lens(action.py()),
            one: lens(&action.p1()),
        }
    }

    pub fn count(&self) -> u64 {
        (self.inf.len() + self.zero.len() + self.one.len()) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub degree: u64,
    pub genus: u64,
    pub cusp_count: u64,
    pub cusps: CuspCycles,
}

/// Riemann–Hurwitz for a covering of `X(2)` branched over `{0, 1, ∞}`:
/// `2g - 2 = -2d + Σ (ℓ - 1)` over the cycles of the three permutations.
pub fn rh_genus(action: &PermAction) -> Result<CurveData> {
    action.require_transitive()?;
    let cusps = CuspCycles::of(action);
    let d = action.degree() as i64;
    let ramification: i64 = [&cusps.inf, &cusps.zero, &cusps.one]
        .iter()
        .flat_map(|v| v.iter())
        .map(|&l| l as i64 - 1)
        .sum();
    let two_g = 2 - 2 * d + ramification;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::Invariant(format!(
            "Riemann–Hurwitz gives 2g = {two_g} for degree {d}"
        )));
    }
    Ok(CurveData {
        degree: d as u64,
        genus: (two_g / 2) as u64,
        cusp_count: cusps.count(),
        cusps,
    })
}

/// Genus of `X_{M,N,L}`: `(NML - NL - ML - NML/e)/2 + 1`, where `e = 2T`
/// when `T = lcm(M,N)` is even and `T/L` odd, and `e = T` otherwise.
pub fn genus_closed_form(m: u64, n: u64, l: u64) -> Result<u64> {
    let p = HeisParams::new(m, n, l)?;
    let e = p.closed_form_exponent();
    let (m, n, l) = (m as i64, n as i64, l as i64);
    let nml = n * m * l;
    let twice = nml - n * l - m * l - nml / e as i64 + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Invariant(format!("closed-form 2g = {twice}")));
    }
    Ok((twice / 2) as u64)
}

/// Every valid `(M, N, L)` with `M, N ≤ bound` whose curve has genus `target`,
/// sorted lexicographically.
pub fn classify_small_genus(bound: u64, target: i64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    if target < 0 {
        return out;
    }
    for m in 1..=bound {
        for n in 1..=bound {
            let g = m.gcd(&n);
            for l in (1..=g).filter(|l| g % l == 0) {
                if genus_closed_form(m, n, l).ok() == Some(target as u64) {
                    out.push((m, n, l));
                }
            }
        }
    }
    out
}

/// `g′_N`, the genus of `X′_N = X_{N,N,N′}`.
pub fn genus_prime(n: u64) -> Result<u64> {
    let p = LevelParams::new(n)?;
    genus_closed_form(n, n, p.n_prime)
}

fn require_odd_level(n: u64) -> Result<LevelParams> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParams(format!("N = {n} must be odd and ≥ 3")));
    }
    LevelParams::new(n)
}

/// `g″_N` from unramified Riemann–Hurwitz for the degree-`N″²` covering
/// `X″_N → X′_N`: `N″²(g′_N - 1) + 1`.
pub fn genus_xpp(n: u64) -> Result<u64> {
    let p = require_odd_level(n)?;
    let gp = genus_prime(n)?;
    let k = p.n_double_prime * p.n_double_prime;
    Ok(k * (gp - 1) + 1)
}

/// The expression `N″²·g′_N - N² + 1`. It agrees with [`genus_xpp`] exactly
/// when `N″ = N`.
pub fn genus_xpp_displayed(n: u64) -> Result<i64> {
    let p = require_odd_level(n)?;
    let gp = genus_prime(n)? as i64;
    let n2 = p.n_double_prime as i64;
    let n = n as i64;
    Ok(n2 * n2 * gp - n * n + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspWidths {
    pub inf: Vec<u64>,
    pub zero: Vec<u64>,
    pub one: Vec<u64>,
    pub level: u64,
}

/// Widths in `PSL₂(ℤ)` normalisation (twice the cycle length over `X(2)`) and
/// the generalised level, their least common multiple.
pub fn cusp_widths_and_level(action: &PermAction) -> Result<CuspWidths> {
    action.require_transitive()?;
    let c = CuspCycles::of(action);
    let double = |v: &[u64]| v.iter().map(|x| 2 * x).collect::<Vec<_>>();
    let (inf, zero, one) = (double(&c.inf), double(&c.zero), double(&c.one));
    let level = inf
        .iter()
        .chain(&zero)
        .chain(&one)
        .fold(1u64, |acc, &w| acc.lcm(&w));
    Ok(CuspWidths {
        inf,
        zero,
        one,
        level,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NotCongruence,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCertificate {
    pub verdict: Verdict,
    /// Generalised level `m`.
    pub level: u64,
    /// `h = [Γ̄(2) : Γ̄(2) ∩ Γ̄(m)]`, when `m` is within the enumeration guard.
    pub gamma2_index: Option<u64>,
    pub index: u64,
}

/// If `Γ` were a congruence subgroup its level would be the generalised level
/// `m` and `Γ ⊇ Γ̄(m)`, so `[Γ̄(2) : Γ]` would divide `h`. A failure of that
/// divisibility refutes congruence.
pub fn congruence_refutation(action: &PermAction, index: u64) -> Result<CongruenceCertificate> {
    let widths = cusp_widths_and_level(action)?;
    let m = widths.level;
    let h = if m <= psl2::MAX_MODULUS as u64 {
        Some(psl2::gamma2_index_mod(m as u32)? as u64)
    } else {
        None
    };
    let verdict = match h {
        Some(h) if h % index != 0 => Verdict::NotCongruence,
        _ => Verdict::Inconclusive,
    };
    Ok(CongruenceCertificate {
        verdict,
        level: m,
        gamma2_index: h,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::LevelQuotient;

    fn regular(m: u64, n: u64, l: u64) -> PermAction {
        HeisParams::new(m, n, l).unwrap().regular_action()
    }

    #[test]
    fn rh_examples() {
        assert_eq!(rh_genus(&regular(3, 3, 1)).unwrap().genus, 1);
        assert_eq!(rh_genus(&regular(5, 5, 5)).unwrap().genus, 26);
        let p = HeisParams::new(5, 5, 5).unwrap();
        let c5 = rh_genus(&p.coset_action(&[p.y()]).unwrap()).unwrap();
        assert_eq!((c5.genus, c5.cusp_count), (4, 19));
        let x2 = rh_genus(&PermAction::trivial()).unwrap();
        assert_eq!((x2.genus, x2.cusp_count), (0, 3));
        let bad = PermAction::new(vec![0, 1], vec![0, 1]).unwrap();
        assert!(matches!(rh_genus(&bad), Err(Error::NotTransitive { .. })));
    }

    /// Genus of `T^p = ∏ (Y - α_i)^{e_i}` for a prime `p`, distinct `α_i`:
    /// each `α_i` with `p ∤ e_i`, and `∞` when `p ∤ Σ e_i`, is totally ramified.
    fn superelliptic_genus(p: i64, exps: &[i64]) -> i64 {
        let total: i64 = exps.iter().sum();
        let branch = exps.iter().filter(|e| *e % p != 0).count() as i64
            + i64::from(total % p != 0);
        (-2 * p + branch * (p - 1)) / 2 + 1
    }

    #[test]
    fn quotient_by_y_matches_plane_model() {
        // T⁵ = (Y-ζ)(Y-ζ²)²(Y-ζ⁻¹)⁻¹(Y-ζ⁻²)⁻²; exponents taken mod 5
        let g = superelliptic_genus(5, &[1, 2, 4, 3]);
        let p = HeisParams::new(5, 5, 5).unwrap();
        let c5 = rh_genus(&p.coset_action(&[p.y()]).unwrap()).unwrap();
        assert_eq!(c5.genus as i64, g);
        // cusps: 5 over each of Y = 0, 1, ∞ plus the four branch points
        assert_eq!(c5.cusp_count, 3 * 5 + 4);
    }

    #[test]
    fn closed_form_examples() {
        for n in 1..=10i64 {
            assert_eq!(genus_closed_form(n as u64, n as u64, 1).unwrap() as i64, (n - 1) * (n - 2) / 2);
        }
        assert_eq!(genus_closed_form(5, 5, 5).unwrap(), 26);
        assert_eq!(genus_closed_form(2, 2, 2).unwrap(), 0);
        assert!(genus_closed_form(4, 6, 4).is_err());
    }

    #[test]
    fn closed_form_matches_riemann_hurwitz() {
        for m in 1..=512u64 {
            for n in 1..=512 / m {
                let g = m.gcd(&n);
                for l in (1..=g).filter(|l| g % l == 0 && m * n * l <= 512) {
                    let rh = rh_genus(&regular(m, n, l)).unwrap().genus;
                    assert_eq!(genus_closed_form(m, n, l).unwrap(), rh, "({m},{n},{l})");
                }
            }
        }
    }

    #[test]
    fn genus_prime_values() {
        // odd N: (N³ - 3N² + 2)/2; even N: (N-2)(2N² - N - 2)/4 fails at N = 4
        let odd = |n: u64| (n * n * n - 3 * n * n + 2) / 2;
        for n in [3u64, 5, 7, 9, 11] {
            assert_eq!(genus_prime(n).unwrap(), odd(n));
        }
        assert_eq!(genus_prime(2).unwrap(), 0);
        assert_eq!(genus_prime(4).unwrap(), 5);
        assert_eq!(genus_prime(6).unwrap(), rh_genus(&regular(6, 6, 3)).unwrap().genus);
    }

    #[test]
    fn genus_xpp_values() {
        assert_eq!(genus_xpp(5).unwrap(), 626);
        assert_eq!(genus_xpp(3).unwrap(), 1);
        assert_eq!(genus_xpp(7).unwrap(), 4803);
        assert_eq!(genus_xpp_displayed(5).unwrap(), 626);
        assert_eq!(genus_xpp_displayed(3).unwrap(), -7);
        assert!(genus_xpp(4).is_err());
    }

    #[test]
    fn genus_xpp_matches_level_quotient() {
        for n in [3u64, 5] {
            let q = LevelQuotient::new(n).unwrap();
            let g = rh_genus(&q.regular_action()).unwrap().genus;
            assert_eq!(g, genus_xpp(n).unwrap(), "N = {n}");
        }
    }

    #[test]
    fn cusps_above_each_point() {
        for n in 1..=7u64 {
            let lp = LevelParams::new(n).unwrap();
            let data = rh_genus(&regular(n, n, lp.n_prime)).unwrap();
            let k = (n * lp.n_prime) as usize;
            assert_eq!(data.cusps.inf.len(), k);
            assert_eq!(data.cusps.zero.len(), k);
            assert_eq!(data.cusps.one.len(), k);
        }
    }

    #[test]
    fn genus_lists() {
        let g0 = classify_small_genus(12, 0);
        let mut expected: Vec<(u64, u64, u64)> = (1..=12).map(|n| (n, 1, 1)).collect();
        expected.extend((2..=12).map(|m| (1, m, 1)));
        expected.extend([(2, 2, 1), (2, 2, 2)]);
        expected.sort_unstable();
        assert_eq!(g0, expected);
        let mut expected1 = vec![
            (3, 2, 1),
            (2, 3, 1),
            (4, 2, 1),
            (2, 4, 1),
            (4, 2, 2),
            (2, 4, 2),
            (3, 3, 1),
            (3, 3, 3),
        ];
        expected1.sort_unstable();
        assert_eq!(classify_small_genus(12, 1), expected1);
        assert!(classify_small_genus(12, -1).is_empty());
    }

    #[test]
    fn widths() {
        let w = cusp_widths_and_level(&regular(3, 3, 3)).unwrap();
        assert!(w.inf.iter().chain(&w.zero).chain(&w.one).all(|&x| x == 6));
        assert_eq!(w.level, 6);
        for n in 2..=6u64 {
            let w = cusp_widths_and_level(&regular(n, n, 1)).unwrap();
            assert!(w.inf.iter().chain(&w.zero).chain(&w.one).all(|&x| x == 2 * n));
        }
        let w = cusp_widths_and_level(&PermAction::trivial()).unwrap();
        assert_eq!((w.inf, w.zero, w.one, w.level), (vec![2], vec![2], vec![2], 2));
    }

    #[test]
    fn congruence() {
        let c = congruence_refutation(&regular(3, 3, 3), 27).unwrap();
        assert_eq!(c.verdict, Verdict::NotCongruence);
        assert_eq!((c.level, c.gamma2_index), (6, Some(12)));
        let c = congruence_refutation(&regular(3, 3, 1), 9).unwrap();
        assert_eq!(c.verdict, Verdict::NotCongruence);
        let c = congruence_refutation(&PermAction::trivial(), 1).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        // Γ̄(2) ⊃ Γ̄(4) has index 4 and is congruence
        let c = congruence_refutation(&regular(2, 2, 1), 4).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn curve_data_json() {
        let d = rh_genus(&PermAction::trivial()).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"degree":1,"genus":0,"cusp_count":3,"cusps":{"inf":[1],"zero":[1],"one":[1]}}"#
        );
    }
}
