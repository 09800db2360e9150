//! Finite permutation actions of `Γ̄(2) = ⟨A, B⟩`.
//!
//! A point `p` is sent to `px[p]` by `A` and to `py[p]` by `B` (right action).

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAction", into = "RawAction")]
pub struct PermAction {
    px: Vec<usize>,
    py: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawAction {
    px: Vec<usize>,
    py: Vec<usize>,
}

impl TryFrom<RawAction> for PermAction {
    type Error = Error;

    fn try_from(raw: RawAction) -> Result<Self> {
        PermAction::new(raw.px, raw.py)
    }
}

impl From<PermAction> for RawAction {
    fn from(a: PermAction) -> Self {
        RawAction { px: a.px, py: a.py }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &i in p {
        if i >= p.len() || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Disjoint cycles, each starting at its least point, ordered by that point.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i);
            i = p[i];
        }
        out.push(cyc);
    }
    out
}

impl PermAction {
    pub fn new(px: Vec<usize>, py: Vec<usize>) -> Result<Self> {
        if px.len() != py.len() {
            return Err(Error::InvalidParams(format!(
                "permutations have different degrees {} and {}",
                px.len(),
                py.len()
            )));
        }
        if px.is_empty() {
            return Err(Error::InvalidParams("degree must be at least 1".into()));
        }
        if !is_permutation(&px) || !is_permutation(&py) {
            return Err(Error::InvalidParams("image lists are not permutations".into()));
        }
        Ok(Self { px, py })
    }

    /// Action of `Γ̄(2)` on a single point.
    pub fn trivial() -> Self {
        Self {
            px: vec![0],
            py: vec![0],
        }
    }

    pub fn degree(&self) -> usize {
        self.px.len()
    }

    pub fn px(&self) -> &[usize] {
        &self.px
    }

    pub fn py(&self) -> &[usize] {
        &self.py
    }

    /// `π₁ = π_x⁻¹ ∘ π_y`: first `B`, then `A⁻¹`.
    pub fn p1(&self) -> Vec<usize> {
        let px_inv = invert(&self.px);
        self.py.iter().map(|&j| px_inv[j]).collect()
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut comp = vec![usize::MAX; d];
        let mut out = Vec::new();
        for start in 0..d {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![start];
            comp[start] = id;
            let mut k = 0;
            while k < orbit.len() {
                let p = orbit[k];
                for q in [self.px[p], self.py[p]] {
                    if comp[q] == usize::MAX {
                        comp[q] = id;
                        orbit.push(q);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn require_transitive(&self) -> Result<()> {
        let n = self.orbits().len();
        if n == 1 {
            Ok(())
        } else {
            Err(Error::NotTransitive {
                degree: self.degree(),
                orbits: n,
            })
        }
    }
}
