//! `H₁(X′_N; ℤ)` as a subquotient of the modular-symbol lattice
//! `ℤ[H_{N,N,N′}] ≅ H₁(X′_N − ∂⁻, ∂⁺; ℤ)`.
//!
//! The edge attached to `g ∈ H_{N,N,N′}` runs from the cusp `g⟨y⟩` (above 0)
//! to the cusp `g⟨x⟩` (above ∞). Faces are the orbits of `⟨xy⁻¹⟩` (cusps
//! above 1). `S_N = ker δ_N` and `R_N = im δ*_N`, so that
//! `H₁(X′_N; ℤ) = S_N / R_N`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::curves::genus_prime;
use crate::heisenberg::{HeisElement, HeisParams, SignConvention};
use crate::nilpotent::LevelParams;
use crate::perm::cycles;
use crate::zlinalg::{quotient_invariants, rank, AbelianInvariants, IntMatrix, Kernel};
use crate::{Error, Result};

/// Default bound on `N³` for the homology computation.
pub const DEFAULT_GUARD: u64 = 100_000;

fn heis(n: u64) -> Result<HeisParams> {
    let lp = LevelParams::new(n)?;
    HeisParams::new(n, n, lp.n_prime)
}

/// Cusp index of every point for the cycles of `p`, numbered by least point.
fn cusp_index(p: &[usize]) -> (Vec<usize>, usize) {
    let cyc = cycles(p);
    let mut idx = vec![0; p.len()];
    for (k, c) in cyc.iter().enumerate() {
        for &i in c {
            idx[i] = k;
        }
    }
    (idx, cyc.len())
}

/// `δ_N`: rows are the cusps above ∞ followed by those above 0, columns are
/// the edges `g` in index order of `H_{N,N,N′}`.
pub fn boundary_matrix(n: u64) -> Result<IntMatrix> {
    Ok(boundary_of(&heis(n)?))
}

fn boundary_of(p: &HeisParams) -> IntMatrix {
    let action = p.regular_action();
    let (inf, n_inf) = cusp_index(action.px());
    let (zero, n_zero) = cusp_index(action.py());
    let d = action.degree();
    let mut m = IntMatrix::zeros(n_inf + n_zero, d);
    for g in 0..d {
        m.add_at(inf[g], g, 1);
        m.add_at(n_inf + zero[g], g, -1);
    }
    m
}

/// `δ*_N`: one column per cusp above 1, equal to `Σ_{h ∈ F} ([h·y] − [h])`
/// over the face `F`.
pub fn dual_boundary_matrix(n: u64) -> Result<IntMatrix> {
    Ok(dual_boundary_of(&heis(n)?))
}

fn dual_boundary_of(p: &HeisParams) -> IntMatrix {
    let action = p.regular_action();
    let faces = cycles(&action.p1());
    let d = action.degree();
    let mut m = IntMatrix::zeros(d, faces.len());
    for (f, face) in faces.iter().enumerate() {
        for &h in face {
            m.add_at(action.py()[h], f, 1);
            m.add_at(h, f, -1);
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusCheck {
    pub genus: u64,
    pub expected_rank: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub ambient_dim: usize,
    pub rank_delta: usize,
    pub rank_delta_dual: usize,
    #[serde(rename = "rank_S")]
    pub rank_s: usize,
    #[serde(rename = "rank_R")]
    pub rank_r: usize,
    pub invariants: AbelianInvariants,
    /// Invariants of `ℤ^ambient / R_N`; its torsion must agree with that of
    /// `S_N / R_N` because `ℤ^ambient / S_N` is torsion-free.
    pub ambient_quotient: AbelianInvariants,
    pub complex_ok: bool,
    pub genus_check: GenusCheck,
}

fn check_guard(n: u64, limit: u64) -> Result<()> {
    let cube = n.saturating_pow(3);
    if cube > limit {
        return Err(Error::Guard {
            what: "N^3",
            value: cube,
            limit,
        });
    }
    Ok(())
}

/// Invariants of `S_N / R_N` with the default size guard.
pub fn h1_invariants(n: u64) -> Result<AbelianInvariants> {
    Ok(homology_report(n, DEFAULT_GUARD)?.invariants)
}

pub fn homology_report(n: u64, guard: u64) -> Result<HomologyReport> {
    homology_report_with(n, guard, SignConvention::Commutator)
}

/// As [`homology_report`], with the Heisenberg group law in the given
/// convention. The two conventions differ by `c ↦ −c`, an automorphism of
/// the whole complex, so the invariants agree.
pub fn homology_report_with(
    n: u64,
    guard: u64,
    convention: SignConvention,
) -> Result<HomologyReport> {
    check_guard(n, guard)?;
    let lp = LevelParams::new(n)?;
    let p = HeisParams::with_convention(n, n, lp.n_prime, convention)?;
    let delta = boundary_of(&p);
    let dual = dual_boundary_of(&p);
    let complex_ok = delta.mul(&dual)?.is_zero();
    if !complex_ok {
        return Err(Error::Invariant("δ ∘ δ* ≠ 0".into()));
    }
    let s = Kernel::of(&delta);
    let r_coords = s.coordinates_of_columns(&dual)?;
    let invariants = quotient_invariants(&r_coords, s.rank())?;
    let ambient_quotient = quotient_invariants(&dual, delta.cols())?;
    let rank_r = rank(&dual);
    if ambient_quotient.torsion != invariants.torsion
        || invariants.free_rank != s.rank() - rank_r
    {
        return Err(Error::Invariant("S/R and ℤⁿ/R disagree".into()));
    }
    let genus = genus_prime(n)?;
    let expected_rank = 2 * genus as usize;
    Ok(HomologyReport {
        n,
        ambient_dim: delta.cols(),
        rank_delta: rank(&delta),
        rank_delta_dual: rank_r,
        rank_s: s.rank(),
        rank_r,
        genus_check: GenusCheck {
            genus,
            expected_rank,
            ok: invariants.is_free() && invariants.free_rank == expected_rank,
        },
        invariants,
        ambient_quotient,
        complex_ok,
    })
}

/// Relabelling of edges `(a, c, b)` tried when matching the displayed
/// lattices with the group-theoretic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRelabel {
    Identity,
    NegateC,
}

impl EdgeRelabel {
    const ALL: [EdgeRelabel; 2] = [EdgeRelabel::Identity, EdgeRelabel::NegateC];

    fn apply(self, p: &HeisParams, g: &HeisElement) -> HeisElement {
        match self {
            EdgeRelabel::Identity => *g,
            EdgeRelabel::NegateC => p.element(g.a as i64, -(g.c as i64), g.b as i64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    #[serde(rename = "N")]
    pub n: u64,
    /// Relabellings under which the displayed `S_N` equals `ker δ_N`.
    pub s_matches: Vec<EdgeRelabel>,
    /// Relabellings under which the displayed generators `e_{c,d}` are
    /// exactly the columns of `δ*_N`.
    pub r_matches: Vec<EdgeRelabel>,
    /// Whether each displayed `e_{c,d}` satisfies the displayed conditions.
    pub r_inside_s: bool,
    pub displayed_invariants: AbelianInvariants,
    pub group_invariants: AbelianInvariants,
    pub invariants_agree: bool,
}

/// Conditions `Σ_b λ_{a,b,c} = 0` for all `(a,c)` and `Σ_a λ_{a,b,c+ab} = 0`
/// for all `(b,c)`, as rows of a matrix on the edge lattice.
fn displayed_conditions(p: &HeisParams) -> IntMatrix {
    let (n, l) = (p.n as i64, p.l as i64);
    let nl = (n * l) as usize;
    let mut m = IntMatrix::zeros(2 * nl, p.order() as usize);
    for a in 0..n {
        for c in 0..l {
            let row = (a * l + c) as usize;
            for b in 0..n {
                m.add_at(row, p.index_of(&p.element(a, c, b)), 1);
            }
        }
    }
    for b in 0..n {
        for c in 0..l {
            let row = nl + (b * l + c) as usize;
            for a in 0..n {
                m.add_at(row, p.index_of(&p.element(a, c + a * b, b)), 1);
            }
        }
    }
    m
}

/// `e_{c,d} = Σ_{a+b=d} [a, b+1, c − b(b+1)/2] − [a, b, c − b(b+1)/2]`.
fn displayed_generators(p: &HeisParams) -> IntMatrix {
    let (n, l) = (p.n as i64, p.l as i64);
    let mut m = IntMatrix::zeros(p.order() as usize, (n * l) as usize);
    for d in 0..n {
        for c in 0..l {
            let col = (d * l + c) as usize;
            for b in 0..n {
                let a = d - b;
                let cc = c - b * (b + 1) / 2;
                m.add_at(p.index_of(&p.element(a, cc, b + 1)), col, 1);
                m.add_at(p.index_of(&p.element(a, cc, b)), col, -1);
            }
        }
    }
    m
}

fn relabel_rows(m: &IntMatrix, p: &HeisParams, r: EdgeRelabel) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        let j = p.index_of(&r.apply(p, &p.from_index(i)));
        for k in 0..m.cols() {
            out.set(j, k, m.get(i, k).clone());
        }
    }
    out
}

fn column_multiset(m: &IntMatrix) -> BTreeMap<Vec<BigInt>, usize> {
    let mut out = BTreeMap::new();
    for c in m.columns() {
        *out.entry(c).or_insert(0) += 1;
    }
    out
}

/// Builds `S_N` and `R_N` from their displayed linear descriptions and
/// compares them with `ker δ_N` and `im δ*_N`.
pub fn closed_form_check(n: u64) -> Result<ClosedFormReport> {
    check_guard(n, DEFAULT_GUARD)?;
    let p = heis(n)?;
    let cond = displayed_conditions(&p);
    let gens = displayed_generators(&p);
    let delta = boundary_matrix(n)?;
    let dual = dual_boundary_matrix(n)?;
    let group_s = Kernel::of(&delta);

    let s_matches = EdgeRelabel::ALL
        .into_iter()
        .filter(|&r| {
            // both lattices are saturated, so equal ranks plus inclusion is equality
            let moved = relabel_rows(&group_s.basis, &p, r);
            cond.mul(&moved).is_ok_and(|x| x.is_zero())
                && cond.cols() - rank(&cond) == group_s.rank()
        })
        .collect();
    let dual_cols = column_multiset(&dual);
    let r_matches = EdgeRelabel::ALL
        .into_iter()
        .filter(|&r| column_multiset(&relabel_rows(&gens, &p, r)) == dual_cols)
        .collect();
    let r_inside_s = cond.mul(&gens)?.is_zero();

    let displayed_s = Kernel::of(&cond);
    let displayed_invariants = match displayed_s.coordinates_of_columns(&gens) {
        Ok(coords) => quotient_invariants(&coords, displayed_s.rank())?,
        Err(_) => AbelianInvariants {
            torsion: Vec::new(),
            free_rank: 0,
        },
    };
    let r_coords = group_s.coordinates_of_columns(&dual)?;
    let group_invariants = quotient_invariants(&r_coords, group_s.rank())?;
    Ok(ClosedFormReport {
        n,
        s_matches,
        r_matches,
        invariants_agree: r_inside_s && displayed_invariants == group_invariants,
        r_inside_s,
        displayed_invariants,
        group_invariants,
    })
}
