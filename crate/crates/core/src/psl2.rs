//! `PSL₂(ℤ/n)` and finite-level images of `Γ̄(2)`.
//!
//! `Ā` and `B̄` are the reductions of `A = (1 2; 0 1)` and `B = (1 0; 2 1)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest modulus accepted by the enumerating routines.
pub const MAX_MODULUS: u32 = 30;

fn check_modulus(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("modulus {n} must be ≥ 2")));
    }
    if n > MAX_MODULUS {
        return Err(Error::Guard {
            what: "modulus",
            value: n as u64,
            limit: MAX_MODULUS as u64,
        });
    }
    Ok(())
}

/// `±(a b; c d)` with entries in `[0, n)`; the stored lift is the
/// lexicographically smaller of the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjMat {
    pub n: u32,
    pub m: [u32; 4],
}

impl ProjMat {
    pub fn new(entries: [i64; 4], n: u32) -> Result<Self> {
        check_modulus(n)?;
        let r = |x: i64| x.rem_euclid(n as i64) as u32;
        let m = entries.map(r);
        let det = (m[0] as i64 * m[3] as i64 - m[1] as i64 * m[2] as i64).rem_euclid(n as i64);
        if det != 1 % n as i64 {
            return Err(Error::Domain(format!("{entries:?} has determinant {det} mod {n}")));
        }
        Ok(Self::canonical(m, n))
    }

    fn canonical(m: [u32; 4], n: u32) -> Self {
        let neg = m.map(|x| (n - x) % n);
        Self {
            n,
            m: m.min(neg),
        }
    }

    pub fn identity(n: u32) -> Self {
        Self::canonical([1, 0, 0, 1], n)
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.n, o.n);
        let n = self.n as u64;
        let [a, b, c, d] = self.m.map(u64::from);
        let [e, f, g, h] = o.m.map(u64::from);
        let m = [
            (a * e + b * g) % n,
            (a * f + b * h) % n,
            (c * e + d * g) % n,
            (c * f + d * h) % n,
        ]
        .map(|x| x as u32);
        Self::canonical(m, self.n)
    }

    pub fn inverse(&self) -> Self {
        let n = self.n;
        let [a, b, c, d] = self.m;
        Self::canonical([d, (n - b) % n, (n - c) % n, a], n)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { *self };
        (0..k.unsigned_abs()).fold(Self::identity(self.n), |acc, _| acc.mul(&base))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).mul(&self.inverse()).mul(&o.inverse())
    }
}

pub fn gen_a(n: u32) -> Result<ProjMat> {
    ProjMat::new([1, 2, 0, 1], n)
}

pub fn gen_b(n: u32) -> Result<ProjMat> {
    ProjMat::new([1, 0, 2, 1], n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    pub n: u32,
    pub elements: BTreeSet<ProjMat>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &ProjMat) -> bool {
        self.elements.contains(g)
    }

    pub fn is_subset(&self, o: &Subgroup) -> bool {
        self.elements.is_subset(&o.elements)
    }
}

/// Number of elements of `PSL₂(ℤ/n)`, by enumeration of all matrices.
pub fn psl2_order(n: u32) -> Result<usize> {
    check_modulus(n)?;
    let mut seen = BTreeSet::new();
    let n64 = n as i64;
    for a in 0..n64 {
        for b in 0..n64 {
            for c in 0..n64 {
                for d in 0..n64 {
                    if (a * d - b * c).rem_euclid(n64) == 1 % n64 {
                        seen.insert(ProjMat::canonical([a, b, c, d].map(|x| x as u32), n));
                    }
                }
            }
        }
    }
    Ok(seen.len())
}

/// Subgroup generated by `gens` (breadth-first).
pub fn closure(gens: &[ProjMat], n: u32) -> Result<Subgroup> {
    check_modulus(n)?;
    if let Some(g) = gens.iter().find(|g| g.n != n) {
        return Err(Error::InvalidParams(format!(
            "generator {:?} is taken mod {}, not mod {n}",
            g.m, g.n
        )));
    }
    let id = ProjMat::identity(n);
    let mut elements = BTreeSet::from([id]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for g in gens {
                let hg = h.mul(g);
                if elements.insert(hg) {
                    next.push(hg);
                }
            }
        }
        frontier = next;
    }
    Ok(Subgroup { n, elements })
}

/// Subgroup generated by all commutators of elements of `h`.
pub fn derived_closure(h: &Subgroup) -> Subgroup {
    let comms: BTreeSet<ProjMat> = h
        .elements
        .iter()
        .flat_map(|g| h.elements.iter().map(move |k| g.commutator(k)))
        .collect();
    let gens: Vec<ProjMat> = comms.into_iter().collect();
    closure(&gens, h.n).expect("modulus already validated")
}

/// Image of `Γ̄(2)` in `PSL₂(ℤ/n)`.
pub fn gamma2_image(n: u32) -> Result<Subgroup> {
    closure(&[gen_a(n)?, gen_b(n)?], n)
}

/// `[Γ̄(2) : Γ̄(2) ∩ Γ̄(n)]`, the order of the image of `Γ̄(2)` mod `n`.
pub fn gamma2_index_mod(n: u32) -> Result<usize> {
    if n % 2 != 0 {
        return Err(Error::InvalidParams(format!("modulus {n} must be even")));
    }
    Ok(gamma2_image(n)?.order())
}

/// Image mod 3 of `Φ_N = ⟨A^N, B^N⟩·[Γ̄(2), Γ̄(2)]`.
pub fn phi_image_mod3(big_n: u64) -> Result<Subgroup> {
    if big_n == 0 {
        return Err(Error::InvalidParams("N must be ≥ 1".into()));
    }
    let k = (big_n % 3) as i64;
    let derived = derived_closure(&gamma2_image(3)?);
    let mut gens: Vec<ProjMat> = derived.elements.into_iter().collect();
    gens.push(gen_a(3)?.pow(k));
    gens.push(gen_b(3)?.pow(k));
    closure(&gens, 3)
}

/// `±I`, `±(0 -1; 1 0)`, `±(-1 1; 1 1)`, `±(1 1; 1 -1)` mod 3.
pub fn d3() -> Subgroup {
    let elements = [[1, 0, 0, 1], [0, -1, 1, 0], [-1, 1, 1, 1], [1, 1, 1, -1]]
        .into_iter()
        .map(|m| ProjMat::new(m, 3).expect("determinant one mod 3"))
        .collect();
    Subgroup { n: 3, elements }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(psl2_order(2).unwrap(), 6);
        assert_eq!(psl2_order(3).unwrap(), 12);
        assert_eq!(psl2_order(5).unwrap(), 60);
        assert_eq!(psl2_order(6).unwrap(), 72);
        assert_eq!(psl2_order(6).unwrap(), psl2_order(2).unwrap() * psl2_order(3).unwrap());
        assert!(matches!(psl2_order(31), Err(Error::Guard { .. })));
        assert!(psl2_order(1).is_err());
    }

    #[test]
    fn canonical_is_sign_stable() {
        let m = ProjMat::new([2, 1, 1, 1], 5).unwrap();
        let neg = ProjMat::new([-2, -1, -1, -1], 5).unwrap();
        assert_eq!(m, neg);
        assert!(ProjMat::new([1, 1, 1, 1], 5).is_err());
    }

    #[test]
    fn closures() {
        assert_eq!(gamma2_image(3).unwrap().order(), 12);
        assert_eq!(gamma2_image(5).unwrap().order(), 60);
        assert_eq!(closure(&[gen_a(3).unwrap()], 3).unwrap().order(), 3);
    }

    #[test]
    fn closure_properties() {
        for n in [3, 4, 5, 6, 8, 10] {
            let h = gamma2_image(n).unwrap();
            assert!(h.contains(&gen_a(n).unwrap()) && h.contains(&gen_b(n).unwrap()));
            let again: Vec<ProjMat> = h.elements.iter().copied().collect();
            assert_eq!(closure(&again, n).unwrap(), h);
            assert_eq!(psl2_order(n).unwrap() % h.order(), 0);
        }
    }

    #[test]
    fn d3_is_klein() {
        let d = d3();
        assert_eq!(d.order(), 4);
        let id = ProjMat::identity(3);
        for g in &d.elements {
            assert_eq!(g.mul(g), id);
            for h in &d.elements {
                assert!(d.contains(&g.mul(h)));
                assert_eq!(g.mul(h), h.mul(g));
            }
        }
    }

    #[test]
    fn derived_series_mod_3() {
        let full = closure(
            &[ProjMat::new([1, 1, 0, 1], 3).unwrap(), ProjMat::new([0, -1, 1, 0], 3).unwrap()],
            3,
        )
        .unwrap();
        assert_eq!(full.order(), 12);
        let der = derived_closure(&full);
        assert_eq!(der, d3());
        assert_eq!(derived_closure(&der).order(), 1);
        assert_eq!(derived_closure(&gamma2_image(3).unwrap()), d3());
    }

    #[test]
    fn phi_images() {
        for n in 1..=9u64 {
            let order = phi_image_mod3(n).unwrap().order();
            assert_eq!(order, if n % 3 == 0 { 4 } else { 12 }, "N = {n}");
        }
    }

    #[test]
    fn gamma2_indices() {
        assert_eq!(gamma2_index_mod(2).unwrap(), 1);
        assert_eq!(gamma2_index_mod(6).unwrap(), 12);
        // Γ̄(2) has index 6 in PSL₂(ℤ) and contains Γ̄(n) for even n.
        for n in [4, 6, 8, 10, 12] {
            assert_eq!(gamma2_index_mod(n).unwrap() * 6, psl2_order(n).unwrap(), "n = {n}");
        }
        assert!(gamma2_index_mod(3).is_err());
    }
}
