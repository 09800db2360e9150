//! Finite Heisenberg groups `H_{M,N,L}`.
//!
//! Elements are written `x^a z^c y^b` with `a mod M`, `c mod L`, `b mod N`
//! and `z = [x, y] = xyx⁻¹y⁻¹` central. This forces `yx = z⁻¹xy` and
//!
//! ```text
//! (a,c,b)·(a',c',b') = (a+a', c+c'-a'b, b+b')
//! ```
//!
//! [`SignConvention::Opposite`] is the opposite law `c+c'+a'b`, the image
//! of the first under `c ↦ -c`. It is kept so that constructions written in
//! that convention can be compared against group multiplication.

use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::perm::PermAction;
use crate::words::{FreeWord, Gen};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `z = [x, y]`, law `c + c' - a'b`.
    #[default]
    Commutator,
    /// Law `c + c' + a'b`.
    Opposite,
}

impl SignConvention {
    fn sign(self) -> i128 {
        match self {
            SignConvention::Commutator => -1,
            SignConvention::Opposite => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisParams {
    pub m: u64,
    pub n: u64,
    pub l: u64,
    #[serde(default, skip_serializing_if = "is_default_convention")]
    pub convention: SignConvention,
}

fn is_default_convention(c: &SignConvention) -> bool {
    *c == SignConvention::Commutator
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisElement {
    pub a: u64,
    pub c: u64,
    pub b: u64,
}

fn md(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

impl HeisParams {
    pub fn new(m: u64, n: u64, l: u64) -> Result<Self> {
        Self::with_convention(m, n, l, SignConvention::Commutator)
    }

    pub fn with_convention(m: u64, n: u64, l: u64, convention: SignConvention) -> Result<Self> {
        if m == 0 || n == 0 || l == 0 {
            return Err(Error::InvalidParams(format!(
                "H_{{{m},{n},{l}}}: M, N, L must be positive"
            )));
        }
        if m.gcd(&n) % l != 0 {
            return Err(Error::InvalidParams(format!(
                "H_{{{m},{n},{l}}}: L must divide gcd(M, N)"
            )));
        }
        Ok(Self {
            m,
            n,
            l,
            convention,
        })
    }

    pub fn order(&self) -> u64 {
        self.m * self.n * self.l
    }

    pub fn identity(&self) -> HeisElement {
        HeisElement { a: 0, c: 0, b: 0 }
    }

    pub fn x(&self) -> HeisElement {
        self.element(1, 0, 0)
    }

    pub fn y(&self) -> HeisElement {
        self.element(0, 0, 1)
    }

    pub fn z(&self) -> HeisElement {
        self.element(0, 1, 0)
    }

    /// `x^a z^c y^b` with arbitrary integer exponents.
    pub fn element(&self, a: i64, c: i64, b: i64) -> HeisElement {
        HeisElement {
            a: md(a as i128, self.m),
            c: md(c as i128, self.l),
            b: md(b as i128, self.n),
        }
    }

    pub fn contains(&self, g: &HeisElement) -> bool {
        g.a < self.m && g.c < self.l && g.b < self.n
    }

    pub fn mul(&self, g: &HeisElement, h: &HeisElement) -> HeisElement {
        let s = self.convention.sign();
        HeisElement {
            a: (g.a + h.a) % self.m,
            c: md(
                g.c as i128 + h.c as i128 + s * h.a as i128 * g.b as i128,
                self.l,
            ),
            b: (g.b + h.b) % self.n,
        }
    }

    pub fn inv(&self, g: &HeisElement) -> HeisElement {
        let s = self.convention.sign();
        HeisElement {
            a: md(-(g.a as i128), self.m),
            c: md(-(g.c as i128) + s * g.a as i128 * g.b as i128, self.l),
            b: md(-(g.b as i128), self.n),
        }
    }

    /// Closed form `g^k = (ka, kc ± ab·k(k-1)/2, kb)`.
    pub fn pow(&self, g: &HeisElement, k: i64) -> HeisElement {
        let s = self.convention.sign();
        let k = k as i128;
        let (a, c, b) = (g.a as i128, g.c as i128, g.b as i128);
        let tri = (k * (k - 1) / 2).rem_euclid(self.l as i128);
        HeisElement {
            a: md(k * a, self.m),
            c: md(k * c + s * ((a * b) % self.l as i128) * tri, self.l),
            b: md(k * b, self.n),
        }
    }

    /// Least `k ≥ 1` with `g^k = 1`.
    pub fn element_order(&self, g: &HeisElement) -> u64 {
        let ka = self.m / g.a.gcd(&self.m);
        let kb = self.n / g.b.gcd(&self.n);
        let step = ka.lcm(&kb);
        let id = self.identity();
        let mut k = step;
        while self.pow(g, k as i64) != id {
            k += step;
        }
        k
    }

    /// Order by repeated multiplication; independent of [`Self::pow`].
    pub fn element_order_by_iteration(&self, g: &HeisElement) -> u64 {
        let id = self.identity();
        let mut acc = *g;
        let mut k = 1;
        while acc != id {
            acc = self.mul(&acc, g);
            k += 1;
        }
        k
    }

    pub fn index_of(&self, g: &HeisElement) -> usize {
        ((g.a * self.l + g.c) * self.n + g.b) as usize
    }

    pub fn from_index(&self, idx: usize) -> HeisElement {
        let idx = idx as u64;
        HeisElement {
            b: idx % self.n,
            c: (idx / self.n) % self.l,
            a: idx / (self.n * self.l),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = HeisElement> + '_ {
        (0..self.order() as usize).map(|i| self.from_index(i))
    }

    /// Image of `w` under `A ↦ x`, `B ↦ y`.
    pub fn from_word(&self, w: &FreeWord) -> HeisElement {
        w.syllables().iter().fold(self.identity(), |acc, &(g, e)| {
            let step = match g {
                Gen::A => self.element(e, 0, 0),
                Gen::B => self.element(0, 0, e),
            };
            self.mul(&acc, &step)
        })
    }

    /// Group exponent, by brute force over all elements.
    pub fn exponent(&self) -> u64 {
        self.elements()
            .map(|g| self.element_order(&g))
            .fold(1, |acc, k| acc.lcm(&k))
    }

    /// `T = lcm(M, N)` if `T` is odd or `T/L` is even, `2T` otherwise.
    pub fn closed_form_exponent(&self) -> u64 {
        let t = self.m.lcm(&self.n);
        if t % 2 == 0 && (t / self.l) % 2 == 1 {
            2 * t
        } else {
            t
        }
    }

    /// Order of the centraliser of `{x, y}`, by brute force.
    pub fn center_order(&self) -> u64 {
        let (x, y) = (self.x(), self.y());
        self.elements()
            .filter(|g| self.mul(g, &x) == self.mul(&x, g) && self.mul(g, &y) == self.mul(&y, g))
            .count() as u64
    }

    /// Subgroup generated by `gens`, as a sorted list.
    pub fn closure(&self, gens: &[HeisElement]) -> Result<Vec<HeisElement>> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::InvalidParams(format!(
                "({},{},{}) is not an element of H_{{{},{},{}}}",
                g.a, g.c, g.b, self.m, self.n, self.l
            )));
        }
        let mut seen: HashSet<HeisElement> = HashSet::from([self.identity()]);
        let mut queue = vec![self.identity()];
        while let Some(h) = queue.pop() {
            for g in gens {
                let hg = self.mul(&h, g);
                if seen.insert(hg) {
                    queue.push(hg);
                }
            }
        }
        let mut out: Vec<HeisElement> = seen.into_iter().collect();
        out.sort_by_key(|g| self.index_of(g));
        Ok(out)
    }

    /// Right action of `x` and `y` on the right cosets `K\H`, `K = ⟨gens⟩`.
    /// Cosets are numbered in order of their least element index.
    pub fn coset_action(&self, gens: &[HeisElement]) -> Result<PermAction> {
        let k = self.closure(gens)?;
        let total = self.order() as usize;
        let mut coset = vec![usize::MAX; total];
        let mut count = 0;
        for i in 0..total {
            if coset[i] != usize::MAX {
                continue;
            }
            let g = self.from_index(i);
            for h in &k {
                coset[self.index_of(&self.mul(h, &g))] = count;
            }
            count += 1;
        }
        let mut px = vec![0; count];
        let mut py = vec![0; count];
        let (x, y) = (self.x(), self.y());
        for i in 0..total {
            let g = self.from_index(i);
            px[coset[i]] = coset[self.index_of(&self.mul(&g, &x))];
            py[coset[i]] = coset[self.index_of(&self.mul(&g, &y))];
        }
        PermAction::new(px, py)
    }

    /// Right-regular action; point `i` is the element with index `i`.
    pub fn regular_action(&self) -> PermAction {
        let (x, y) = (self.x(), self.y());
        let (px, py) = self
            .elements()
            .map(|g| {
                (
                    self.index_of(&self.mul(&g, &x)),
                    self.index_of(&self.mul(&g, &y)),
                )
            })
            .unzip();
        PermAction::new(px, py).expect("right multiplication permutes the group")
    }
}

/// Product of elements of possibly different groups.
pub fn h_mul(
    p: &HeisParams,
    g: (&HeisParams, &HeisElement),
    h: (&HeisParams, &HeisElement),
) -> Result<HeisElement> {
    if g.0 != p || h.0 != p || !p.contains(g.1) || !p.contains(h.1) {
        return Err(Error::ParamMismatch);
    }
    Ok(p.mul(g.1, h.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::{membership, LevelParams, Membership};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(m: u64, n: u64, l: u64) -> HeisParams {
        HeisParams::new(m, n, l).unwrap()
    }

    fn valid_triples(max_prod: u64) -> Vec<(u64, u64, u64)> {
        let mut out = Vec::new();
        for m in 1..=max_prod {
            for n in 1..=max_prod / m {
                for l in 1..=m.gcd(&n) {
                    if m.gcd(&n) % l == 0 && m * n * l <= max_prod {
                        out.push((m, n, l));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn params_validation() {
        assert!(HeisParams::new(4, 6, 2).is_ok());
        assert!(HeisParams::new(4, 6, 4).is_err());
        assert!(HeisParams::new(0, 1, 1).is_err());
    }

    #[test]
    fn basic_products() {
        let p = h(5, 5, 5);
        let (x, y, z) = (p.x(), p.y(), p.z());
        assert_eq!(p.mul(&p.identity(), &x), x);
        assert_eq!(p.mul(&x, &y), p.element(1, 0, 1));
        assert_eq!(p.mul(&y, &x), p.element(1, -1, 1));
        let comm = p.mul(&p.mul(&p.mul(&x, &y), &p.inv(&x)), &p.inv(&y));
        assert_eq!(comm, z);
        let p3 = h(3, 3, 3);
        assert_eq!(
            p3.mul(&p3.element(1, 0, 1), &p3.element(1, 0, 0)),
            p3.element(2, -1, 1)
        );
    }

    #[test]
    fn opposite_is_c_negation() {
        let p = h(5, 5, 5);
        let q = HeisParams::with_convention(5, 5, 5, SignConvention::Opposite).unwrap();
        let neg = |g: &HeisElement| p.element(g.a as i64, -(g.c as i64), g.b as i64);
        for g in p.elements() {
            for k in [p.element(1, 0, 0), p.element(2, 3, 4), p.element(0, 1, 3)] {
                assert_eq!(neg(&p.mul(&g, &k)), q.mul(&neg(&g), &neg(&k)));
            }
            assert_eq!(neg(&p.inv(&g)), q.inv(&neg(&g)));
            assert_eq!(neg(&p.pow(&g, 7)), q.pow(&neg(&g), 7));
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let (p, q) = (h(3, 3, 3), h(3, 3, 1));
        let g = p.x();
        assert_eq!(h_mul(&p, (&p, &g), (&q, &g)), Err(Error::ParamMismatch));
        assert_eq!(h_mul(&p, (&p, &g), (&p, &g)), Ok(p.element(2, 0, 0)));
    }

    #[test]
    fn word_images() {
        let p = h(4, 6, 2);
        assert_eq!(p.from_word(&FreeWord::c()), p.z());
        assert_eq!(p.from_word(&FreeWord::power(Gen::A, 4)), p.identity());
        assert_eq!(p.from_word(&FreeWord::power(Gen::B, 6)), p.identity());
    }

    #[test]
    fn orders() {
        let p3 = h(3, 3, 3);
        assert_eq!(p3.element_order(&p3.identity()), 1);
        assert_eq!(p3.element_order(&p3.mul(&p3.x(), &p3.y())), 3);
        let p2 = h(2, 2, 2);
        assert_eq!(p2.element_order(&p2.mul(&p2.inv(&p2.x()), &p2.y())), 4);
    }

    #[test]
    fn exponents() {
        assert_eq!(h(3, 3, 3).exponent(), 3);
        assert_eq!(h(2, 2, 2).exponent(), 4);
        assert_eq!(h(4, 2, 2).exponent(), 4);
    }

    #[test]
    fn exponent_case_split() {
        for m in 1..=12u64 {
            for n in 1..=12u64 {
                if m.lcm(&n) > 12 {
                    continue;
                }
                for l in (1..=m.gcd(&n)).filter(|l| m.gcd(&n) % l == 0) {
                    let p = h(m, n, l);
                    assert_eq!(p.exponent(), p.closed_form_exponent(), "H_{{{m},{n},{l}}}");
                }
            }
        }
    }

    #[test]
    fn centers() {
        assert_eq!(h(3, 3, 3).center_order(), 3);
        assert_eq!(h(4, 4, 1).center_order(), 16);
        assert_eq!(h(5, 5, 5).center_order(), 5);
    }

    #[test]
    fn coset_actions() {
        let p = h(3, 3, 3);
        assert_eq!(p.coset_action(&[]).unwrap().degree(), 27);
        assert_eq!(p.coset_action(&[]).unwrap(), p.regular_action());
        assert_eq!(h(5, 5, 5).coset_action(&[h(5, 5, 5).y()]).unwrap().degree(), 25);
        for n in 1..=6 {
            let q = h(n, n, 1);
            assert_eq!(q.coset_action(&[q.x()]).unwrap().degree(), n as usize);
        }
        assert!(p.coset_action(&[HeisElement { a: 5, c: 0, b: 0 }]).is_err());
    }

    #[test]
    fn associativity_exhaustive() {
        for (m, n, l) in valid_triples(64) {
            let p = h(m, n, l);
            let els: Vec<_> = p.elements().collect();
            let sample: Vec<_> = els.iter().step_by(1 + els.len() / 8).copied().collect();
            for g in &els {
                for k in &sample {
                    for r in &els {
                        assert_eq!(p.mul(&p.mul(g, k), r), p.mul(g, &p.mul(k, r)));
                    }
                }
                assert_eq!(p.mul(g, &p.inv(g)), p.identity());
            }
        }
    }

    #[test]
    fn order_divides_exponent_and_matches_iteration() {
        for (m, n, l) in valid_triples(216) {
            let p = h(m, n, l);
            let e = p.exponent();
            for g in p.elements() {
                let k = p.element_order(&g);
                assert_eq!(k, p.element_order_by_iteration(&g));
                assert_eq!(e % k, 0);
            }
        }
    }

    #[test]
    fn genus_exponent_is_order_of_x_inverse_y() {
        for (m, n, l) in valid_triples(512) {
            let p = h(m, n, l);
            let g = p.mul(&p.inv(&p.x()), &p.y());
            assert_eq!(p.element_order(&g), p.closed_form_exponent(), "H_{{{m},{n},{l}}}");
        }
    }

    fn random_word(rng: &mut ChaCha8Rng) -> FreeWord {
        let len = rng.gen_range(0..12);
        FreeWord::reduce((0..len).map(|_| {
            let g = if rng.gen_bool(0.5) { Gen::A } else { Gen::B };
            (g, rng.gen_range(-5..=5))
        }))
    }

    #[test]
    fn kernel_coincides_with_phi_prime() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3u64, 4, 5] {
            let lp = LevelParams::new(n).unwrap();
            let p = h(n, n, lp.n_prime);
            let mut hits = 0;
            for i in 0..500 {
                let mut w = random_word(&mut rng);
                if i % 2 == 0 {
                    // bias half the sample into Φ_N
                    let (sa, sb) = w.exponent_sums();
                    let k = n as i64;
                    w = &w * &FreeWord::reduce([(Gen::B, -sb.rem_euclid(k)), (Gen::A, -sa.rem_euclid(k))]);
                    w = &w * &FreeWord::c().pow(rng.gen_range(0..2) * k);
                }
                let trivial = p.from_word(&w) == p.identity();
                hits += trivial as u32;
                assert_eq!(trivial, membership(&w, &lp) >= Membership::PhiPrime, "{w}");
            }
            assert!(hits > 0);
        }
    }

    proptest! {
        #[test]
        fn from_word_is_homomorphism(
            u in prop::collection::vec((prop::bool::ANY, -6i64..=6), 0..10),
            v in prop::collection::vec((prop::bool::ANY, -6i64..=6), 0..10),
        ) {
            let mk = |s: Vec<(bool, i64)>| FreeWord::reduce(
                s.into_iter().map(|(f, e)| (if f { Gen::A } else { Gen::B }, e)),
            );
            let (u, v) = (mk(u), mk(v));
            for p in [h(3, 3, 3), h(4, 6, 2), h(5, 5, 5)] {
                prop_assert_eq!(p.from_word(&(&u * &v)), p.mul(&p.from_word(&u), &p.from_word(&v)));
            }
        }
    }
}
