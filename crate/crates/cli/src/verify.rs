//! The acceptance suite behind `heiscurve verify`.
//!
//! Every check belongs to one of the ten acceptance criteria and has an id
//! `Ckk.n.name`. Checks run concurrently; the report is sorted by id.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use heiscurve::cuspidal::{self, CuspDivisor, CuspidalGroup, Family};
use heiscurve::curves::{
    classify_small_genus, congruence_refutation, genus_closed_form, genus_prime, genus_xpp,
    genus_xpp_displayed, rh_genus, Verdict,
};
use heiscurve::cyclotomic::{self, CycRing};
use heiscurve::dessin::{self, Dessin};
use heiscurve::heisenberg::{HeisParams, SignConvention};
use heiscurve::homology::{self, EdgeRelabel, DEFAULT_GUARD};
use heiscurve::nilpotent::{
    barpsi, collect, membership, psi, verify_hall_petrescu, LevelParams, LevelQuotient, Membership,
};
use heiscurve::perm::PermAction;
use heiscurve::psl2;
use heiscurve::words::{verify_conjugation_expansion, verify_phi_relation, FreeWord, Gen};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    DocumentedDiscrepancy,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::DocumentedDiscrepancy => "DOCUMENTED_DISCREPANCY",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub criterion: u8,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub documented_discrepancy: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub quick: bool,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    /// Checks of one criterion.
    pub fn criterion(&self, k: u8) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(move |c| c.criterion == k)
    }
}

struct Outcome {
    status: Status,
    details: String,
}

fn pass(details: impl Into<String>) -> Outcome {
    Outcome {
        status: Status::Pass,
        details: details.into(),
    }
}

fn fail(details: impl Into<String>) -> Outcome {
    Outcome {
        status: Status::Fail,
        details: details.into(),
    }
}

fn documented(details: impl Into<String>) -> Outcome {
    Outcome {
        status: Status::DocumentedDiscrepancy,
        details: details.into(),
    }
}

fn check(ok: bool, good: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if ok {
        pass(good)
    } else {
        fail(bad)
    }
}

type CheckFn = Box<dyn Fn(bool) -> Outcome + Send + Sync>;

struct Check {
    id: String,
    criterion: u8,
    run: CheckFn,
}

fn add(list: &mut Vec<Check>, criterion: u8, id: impl Into<String>, f: impl Fn(bool) -> Outcome + Send + Sync + 'static) {
    list.push(Check {
        id: format!("C{criterion:02}.{}", id.into()),
        criterion,
        run: Box::new(f),
    });
}

fn heis(m: u64, n: u64, l: u64) -> HeisParams {
    HeisParams::new(m, n, l).expect("valid parameters")
}

fn valid_triples(max_product: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for m in 1..=max_product {
        for n in 1..=max_product / m {
            let g = m.gcd(&n);
            for l in (1..=g).filter(|l| g % l == 0 && m * n * l <= max_product) {
                out.push((m, n, l));
            }
        }
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng) -> FreeWord {
    let len = rng.gen_range(0..12);
    FreeWord::reduce((0..len).map(|_| {
        let g = if rng.gen_bool(0.5) { Gen::A } else { Gen::B };
        (g, rng.gen_range(-5..=5))
    }))
}

fn criterion_1(list: &mut Vec<Check>) {
    add(list, 1, "1.closed_form_vs_rh", |_| {
        let triples = valid_triples(512);
        for &(m, n, l) in &triples {
            let closed = genus_closed_form(m, n, l);
            let rh = rh_genus(&heis(m, n, l).regular_action()).map(|c| c.genus);
            if closed.as_ref().ok() != rh.as_ref().ok() {
                return fail(format!("H_{{{m},{n},{l}}}: closed form {closed:?}, Riemann-Hurwitz {rh:?}"));
            }
        }
        pass(format!("{} triples with MNL <= 512 agree", triples.len()))
    });
    add(list, 1, "2.fermat_genus", |_| {
        for n in 1..=10u64 {
            let want = (n - 1) * n.saturating_sub(2) / 2;
            let closed = genus_closed_form(n, n, 1).ok();
            let rh = rh_genus(&heis(n, n, 1).regular_action()).ok().map(|c| c.genus);
            if closed != Some(want) || rh != Some(want) {
                return fail(format!("N = {n}: expected {want}, closed form {closed:?}, RH {rh:?}"));
            }
        }
        pass("g_{N,N,1} = (N-1)(N-2)/2 for N <= 10")
    });
    add(list, 1, "3.g_prime", |_| {
        let g3 = genus_prime(3).ok();
        let g5 = genus_prime(5).ok();
        let rh5 = rh_genus(&heis(5, 5, 5).regular_action()).ok().map(|c| c.genus);
        check(
            g3 == Some(1) && g5 == Some(26) && rh5 == Some(26),
            "g'_3 = 1, g'_5 = 26",
            format!("g'_3 = {g3:?}, g'_5 = {g5:?}, RH(H_5,5,5) = {rh5:?}"),
        )
    });
    add(list, 1, "4.g_double_prime", |_| {
        let g5 = genus_xpp(5).ok();
        let mut rh = Vec::new();
        for n in [3u64, 5] {
            let q = LevelQuotient::new(n).expect("level");
            rh.push(rh_genus(&q.regular_action()).ok().map(|c| c.genus) == genus_xpp(n).ok());
        }
        check(
            g5 == Some(626) && rh.iter().all(|&x| x),
            "g''_5 = 626; unramified RH agrees with the regular action of the level quotient for N = 3, 5",
            format!("g''_5 = {g5:?}, RH agreement {rh:?}"),
        )
    });
    add(list, 1, "5.g_double_prime_display", |_| {
        let mut diffs = Vec::new();
        for n in [3u64, 5, 7] {
            let (Ok(rh), Ok(shown)) = (genus_xpp(n), genus_xpp_displayed(n)) else {
                return fail(format!("N = {n}: genus computation failed"));
            };
            if rh as i64 != shown {
                diffs.push(format!("N = {n}: N''^2 g' - N^2 + 1 = {shown}, Riemann-Hurwitz {rh}"));
            }
        }
        if diffs.is_empty() {
            pass("displayed g'' formula agrees")
        } else {
            documented(diffs.join("; "))
        }
    });
    add(list, 1, "6.g_prime_even_display", |_| {
        let mut diffs = Vec::new();
        for n in [2i64, 4, 6] {
            let shown = (n - 2) * (2 * n * n - n - 2) / 4;
            let Ok(g) = genus_prime(n as u64) else {
                return fail(format!("N = {n}: closed form failed"));
            };
            let lp = LevelParams::new(n as u64).expect("level");
            let rh = rh_genus(&heis(n as u64, n as u64, lp.n_prime).regular_action()).map(|c| c.genus);
            if rh.as_ref().ok() != Some(&g) {
                return fail(format!("N = {n}: closed form {g}, RH {rh:?}"));
            }
            if shown != g as i64 {
                diffs.push(format!("N = {n}: (N-2)(2N^2-N-2)/4 = {shown}, genus {g}"));
            }
        }
        if diffs.is_empty() {
            pass("even-N display agrees")
        } else {
            documented(diffs.join("; "))
        }
    });
}

fn criterion_2(list: &mut Vec<Check>) {
    add(list, 2, "1.genus0_list", |_| {
        let mut want: Vec<(u64, u64, u64)> = (1..=12).map(|n| (n, 1, 1)).collect();
        want.extend((2..=12).map(|m| (1, m, 1)));
        want.extend([(2, 2, 1), (2, 2, 2)]);
        want.sort_unstable();
        let got = classify_small_genus(12, 0);
        check(
            got == want,
            format!("{} triples: (N,1,1), (1,M,1), (2,2,1), (2,2,2)", got.len()),
            format!("scan gives {got:?}"),
        )
    });
    add(list, 2, "2.genus1_list", |_| {
        let mut want = Vec::new();
        for (n, m, l) in [(3, 2, 1), (4, 2, 1), (4, 2, 2), (3, 3, 1), (3, 3, 3)] {
            want.push((n, m, l));
            want.push((m, n, l));
        }
        want.sort_unstable();
        want.dedup();
        let got = classify_small_genus(12, 1);
        check(
            got == want,
            format!("{} triples: (3,2,1), (4,2,1), (4,2,2), (3,3,1), (3,3,3) up to swapping M, N", got.len()),
            format!("scan gives {got:?}"),
        )
    });
}

fn criterion_3(list: &mut Vec<Check>) {
    for n in [2u64, 3, 4, 5, 7] {
        add(list, 3, format!("1.homology_N{n}"), move |quick| {
            if quick && n == 7 {
                return pass("skipped in quick mode");
            }
            let start = Instant::now();
            let r = match homology::homology_report(n, DEFAULT_GUARD) {
                Ok(r) => r,
                Err(e) => return fail(e.to_string()),
            };
            let elapsed = start.elapsed();
            let lp = LevelParams::new(n).expect("level");
            let g = genus_prime(n).expect("genus");
            let rank_delta = (2 * n * lp.n_prime - 1) as usize;
            let ok = r.invariants.is_free()
                && r.invariants.free_rank as u64 == 2 * g
                && r.complex_ok
                && r.rank_delta == rank_delta;
            let timely = n != 7 || elapsed < Duration::from_secs(60);
            check(
                ok && timely,
                format!(
                    "S/R = Z^{} = Z^(2g'), delta.delta* = 0, rank delta = {rank_delta}{}",
                    r.invariants.free_rank,
                    if n == 7 { ", within 60 s" } else { "" }
                ),
                format!(
                    "invariants {}, complex_ok {}, rank delta {} (want {rank_delta}), 2g' = {}, elapsed {:?}",
                    r.invariants, r.complex_ok, r.rank_delta, 2 * g, elapsed
                ),
            )
        });
    }
    for n in [2u64, 3, 4, 5] {
        add(list, 3, format!("2.closed_form_N{n}"), move |_| match homology::closed_form_check(n) {
            Ok(r) => check(
                r.invariants_agree && r.r_inside_s && !r.s_matches.is_empty() && !r.r_matches.is_empty(),
                format!("closed-form S/R = {} = group S/R", r.displayed_invariants),
                format!("{r:?}"),
            ),
            Err(e) => fail(e.to_string()),
        });
    }
    add(list, 3, "3.closed_form_sign", |_| {
        let mut identity_ok = true;
        for n in [2u64, 3, 5] {
            let Ok(r) = homology::closed_form_check(n) else {
                return fail(format!("N = {n}: closed-form check failed"));
            };
            if !r.s_matches.contains(&EdgeRelabel::NegateC) || !r.r_matches.contains(&EdgeRelabel::NegateC) {
                return fail(format!("N = {n}: closed form matches neither convention"));
            }
            identity_ok &= r.s_matches.contains(&EdgeRelabel::Identity) && r.r_matches.contains(&EdgeRelabel::Identity);
        }
        if identity_ok {
            pass("closed-form lattices match the group labels directly")
        } else {
            documented("closed-form S_N and e_{c,d} match the group lattices after relabelling c -> -c (law c+c'+a'b)")
        }
    });
}

fn criterion_4(list: &mut Vec<Check>) {
    for n in [3u64, 5, 7, 9] {
        add(list, 4, format!("1.group_N{n}"), move |_| match cuspidal::cuspidal_group(n) {
            Ok(inv) => check(
                inv.is_elementary(n, (3 * n - 7) as usize),
                format!("(Z/{n})^{}", 3 * n - 7),
                format!("got {inv}"),
            ),
            Err(e) => fail(e.to_string()),
        });
    }
    add(list, 4, "2.distinguished_classes", |_| {
        for n in [3u64, 5, 7, 9] {
            let Ok(g) = CuspidalGroup::new(n) else {
                return fail(format!("N = {n}: lattice failed"));
            };
            let da = CuspDivisor::weighted(Family::A, n);
            let db = CuspDivisor::weighted(Family::B, n);
            let dc = CuspDivisor::weighted(Family::C, n);
            let orders = (
                g.class_order(&da).ok(),
                g.class_order(&da.sub(&db)).ok(),
                g.class_order(&da.sub(&dc)).ok(),
            );
            if orders != (Some(n), Some(1), Some(1)) {
                return fail(format!("N = {n}: orders (D_A, D_A-D_B, D_A-D_C) = {orders:?}"));
            }
        }
        pass("ord D_A = N and D_A = D_B = D_C in the cuspidal group for N = 3, 5, 7, 9")
    });
    add(list, 4, "3.base_point", |quick| {
        let ns: &[u64] = if quick { &[3, 5] } else { &[3, 5, 7, 9] };
        for &n in ns {
            match cuspidal::cuspidal_report(n) {
                Ok(r) if r.base_point_independent => {}
                Ok(_) => return fail(format!("N = {n}: results depend on the base point")),
                Err(e) => return fail(e.to_string()),
            }
        }
        pass(format!("P in {{a0, b0, c0}} give the same lattice and orders for N in {ns:?}"))
    });
    add(list, 4, "4.known_divisors", |_| {
        for n in [3u64, 5, 7] {
            match cuspidal::known_divisor_checks(n) {
                Ok(r) if r.all_ok => {}
                Ok(r) => return fail(format!("N = {n}: {:?}", r.checks.iter().find(|c| !c.ok))),
                Err(e) => return fail(e.to_string()),
            }
        }
        pass("div(x-zeta^j), div(y-zeta^j), div(x-eps xi^j y) principal; div f_A = N D_A")
    });
    add(list, 4, "5.fiber_relation_reading", |_| match cuspidal::cuspidal_report(5) {
        Ok(r) if !r.literal_reading.lies_in_degree_zero => documented(format!(
            "sum[a_i] - [P] has degree {}; relations read as sum[a_i] - N[P]",
            r.literal_reading.fiber_degrees[0]
        )),
        Ok(_) => pass("literal reading is degree 0"),
        Err(e) => fail(e.to_string()),
    });
}

fn criterion_5(list: &mut Vec<Check>) {
    add(list, 5, "1.exponent_case_split", |_| {
        let mut count = 0;
        for m in 1..=12u64 {
            for n in 1..=12u64 {
                if m.lcm(&n) > 12 {
                    continue;
                }
                let g = m.gcd(&n);
                for l in (1..=g).filter(|l| g % l == 0) {
                    let p = heis(m, n, l);
                    let by_iteration = p
                        .elements()
                        .map(|x| p.element_order_by_iteration(&x))
                        .fold(1u64, |acc, k| acc.lcm(&k));
                    if by_iteration != p.closed_form_exponent() {
                        return fail(format!(
                            "H_{{{m},{n},{l}}}: exponent {by_iteration}, closed form {}",
                            p.closed_form_exponent()
                        ));
                    }
                    count += 1;
                }
            }
        }
        pass(format!("{count} groups with lcm(M,N) <= 12"))
    });
    add(list, 5, "2.kernel_coincidence", |quick| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let samples = if quick { 100 } else { 500 };
        let mut trivial_hits = 0;
        for n in [3u64, 4, 5] {
            let lp = LevelParams::new(n).expect("level");
            let p = heis(n, n, lp.n_prime);
            for i in 0..samples {
                let mut w = random_word(&mut rng);
                if i % 2 == 0 {
                    let (sa, sb) = w.exponent_sums();
                    let k = n as i64;
                    w = &w * &FreeWord::reduce([(Gen::B, -sb.rem_euclid(k)), (Gen::A, -sa.rem_euclid(k))]);
                    w = &w * &FreeWord::c().pow(rng.gen_range(0..2) * k);
                }
                let trivial = p.from_word(&w) == p.identity();
                trivial_hits += usize::from(trivial);
                if trivial != (membership(&w, &lp) >= Membership::PhiPrime) {
                    return fail(format!("N = {n}: word {w} disagrees"));
                }
            }
        }
        pass(format!(
            "{samples} words per N in {{3,4,5}}; {trivial_hits} in the kernel"
        ))
    });
    add(list, 5, "3.group_law_sign", |_| {
        let p = heis(5, 5, 5);
        let q = HeisParams::with_convention(5, 5, 5, SignConvention::Opposite).expect("valid");
        let comm = |h: &HeisParams| {
            let (x, y) = (h.x(), h.y());
            h.mul(&h.mul(&h.mul(&x, &y), &h.inv(&x)), &h.inv(&y))
        };
        if comm(&p) != p.z() {
            return fail("[x,y] != z under the law c+c'-a'b");
        }
        if comm(&q) == q.z() {
            pass("displayed law also gives [x,y] = z")
        } else {
            documented("displayed law c+c'+a'b gives [x,y] = z^-1; ground truth uses c+c'-a'b")
        }
    });
}

fn criterion_6(list: &mut Vec<Check>) {
    add(list, 6, "1.phi_relation", |_| {
        let bad: Vec<i64> = (1..=6).filter(|&n| !verify_phi_relation(n)).collect();
        check(bad.is_empty(), "holds for N <= 6", format!("fails for N in {bad:?}"))
    });
    add(list, 6, "2.conjugation_expansion", |_| {
        let bad: Vec<i64> = (1..=6).filter(|&n| !verify_conjugation_expansion(n)).collect();
        check(bad.is_empty(), "A B^N A^-1 B^-N expansion holds for N <= 6", format!("fails for N in {bad:?}"))
    });
    add(list, 6, "3.psi_conjugates", |_| {
        for i in -5..=5i64 {
            for j in -5..=5i64 {
                for k in -5..=5i64 {
                    let g = FreeWord::reduce([(Gen::A, i), (Gen::B, j)]);
                    let w = FreeWord::c().pow(k).conjugate_by(&g);
                    let want = [BigInt::from(-k * i), BigInt::from(-k * j), BigInt::from(k)];
                    if psi(&collect(&w)).ok() != Some(want.clone()) {
                        return fail(format!("(i,j,k) = ({i},{j},{k})"));
                    }
                }
            }
        }
        pass("psi(A^i B^j C^k B^-j A^-i) = (-ki, -kj, k) for |i|,|j|,|k| <= 5")
    });
    add(list, 6, "4.barpsi_ab_n", |_| {
        for n in (1..=9u64).step_by(2) {
            let lp = LevelParams::new(n).expect("level");
            let k = n as i64;
            let w = FreeWord::reduce([(Gen::A, 1), (Gen::B, k), (Gen::A, -1), (Gen::B, -k)]);
            if barpsi(&w, &lp).ok() != Some([0, 0, 0]) {
                return fail(format!("N = {n}: {:?}", barpsi(&w, &lp)));
            }
        }
        pass("barpsi(A B^N A^-1 B^-N) = 0 mod N' for odd N <= 9")
    });
    add(list, 6, "5.nth_powers", |quick| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xface);
        let samples = if quick { 50 } else { 200 };
        for n in [3u64, 5] {
            let lp = LevelParams::new(n).expect("level");
            for _ in 0..samples {
                let g = random_word(&mut rng);
                if membership(&g.pow(n as i64), &lp) != Membership::PhiDoublePrime {
                    return fail(format!("N = {n}: ({g})^N not in Phi''_N"));
                }
            }
        }
        pass(format!("gamma^N in Phi''_N for {samples} random gamma, N in {{3,5}}"))
    });
    add(list, 6, "6.psi_ab_n_display", |_| {
        let mut diffs = Vec::new();
        for n in 1..=6i64 {
            let w = FreeWord::reduce([(Gen::A, 1), (Gen::B, n), (Gen::A, -1), (Gen::B, -n)]);
            let Ok(got) = psi(&collect(&w)) else {
                return fail(format!("N = {n}: not in the derived subgroup"));
            };
            let truth = [BigInt::from(0), BigInt::from(-n * (n - 1) / 2), BigInt::from(n)];
            if got != truth {
                return fail(format!("N = {n}: psi = {got:?}"));
            }
            let shown = [BigInt::from(0), BigInt::from(n * (n - 1) / 2), BigInt::from(0)];
            if got != shown {
                diffs.push(n);
            }
        }
        if diffs.is_empty() {
            pass("displayed value agrees")
        } else {
            documented(format!(
                "psi(A B^N A^-1 B^-N) = (0, -N(N-1)/2, N), not (0, N(N-1)/2, 0), for N in {diffs:?}"
            ))
        }
    });
}

fn criterion_7(list: &mut Vec<Check>) {
    add(list, 7, "1.betan_alpha", |_| {
        let r = verify_hall_petrescu(50);
        check(
            r.commutation_identity_holds(),
            "beta^n alpha identity holds for 0 <= n <= 50",
            format!("fails for n in {:?}", r.commutation_failures),
        )
    });
    add(list, 7, "2.alpha_beta_power", |_| {
        let r = verify_hall_petrescu(50);
        if !r.polynomials_fit {
            return fail("exponents are not cubic in n");
        }
        let found = format!(
            "alpha' exponent {}, beta' exponent {}",
            r.alpha_prime_exponent.render(),
            r.beta_prime_exponent.render()
        );
        if r.alpha_prime_matches_claim && r.beta_prime_matches_claim {
            pass(found)
        } else {
            documented(format!("displayed exponents differ; true {found}"))
        }
    });
}

fn criterion_8(list: &mut Vec<Check>) {
    add(list, 8, "1.fa_at_a0", |_| {
        for n in (3..=15u64).step_by(2) {
            match cyclotomic::fa_at_a0(n) {
                Ok(r) if r.quotient_form_agrees && r.closed_form_agrees && r.sixth_power_is_one => {}
                Ok(r) => return fail(format!("N = {n}: {r:?}")),
                Err(e) => return fail(format!("N = {n}: {e}")),
            }
        }
        pass("product, quotient and closed form agree and are sixth roots of unity for odd N <= 15")
    });
    add(list, 8, "2.smoothness_norm", |_| {
        let mut parts = Vec::new();
        for n in [3u64, 5, 7] {
            match cyclotomic::smoothness_unit(n) {
                Ok(r) if r.derivative_agrees && r.power_of_n.is_some() => {
                    parts.push(format!("N = {n}: |norm| = {}", r.norm_abs));
                }
                Ok(r) => return fail(format!("N = {n}: {r:?}")),
                Err(e) => return fail(e.to_string()),
            }
        }
        pass(parts.join(", "))
    });
    add(list, 8, "3.fivroot", |_| {
        let r = cyclotomic::fivroot_identity();
        let two = cyclotomic::int(&CycRing::new(5).expect("ring"), 2);
        check(
            r.identity_holds && r.c_is_4_plus_zeta_plus_zeta4 && r.value_at_0 == two && r.lhs_at_1_is_zero,
            "identity holds in Z[mu_5][Y]; c = 4 + zeta + zeta^4",
            format!("{r:?}"),
        )
    });
    add(list, 8, "4.mod11_table", |_| {
        let rows = cyclotomic::mod11_double_root();
        let roots: Vec<u64> = rows.iter().map(|r| r.root).collect();
        let doubles: Vec<u64> = rows.iter().filter(|r| r.is_twice_y_minus_1_squared).map(|r| r.root).collect();
        check(
            rows.len() == 4 && !doubles.is_empty(),
            format!("embeddings zeta -> {roots:?}; 2(Y-1)^2 for zeta -> {doubles:?}"),
            format!("roots {roots:?}, double roots {doubles:?}"),
        )
    });
    add(list, 8, "5.mod11_fibers", |_| {
        let rows = cyclotomic::mod11_double_root();
        let other: Vec<String> = rows
            .iter()
            .filter(|r| !r.is_twice_y_minus_1_squared)
            .map(|r| format!("zeta -> {}: 2Y^2 + {}Y + 2", r.root, r.c))
            .collect();
        if other.is_empty() {
            pass("double root at 1 in every fiber above 11")
        } else {
            documented(format!("no double root in {}", other.join("; ")))
        }
    });
    add(list, 8, "6.norm_resultant", |_| {
        for n in [3u64, 5, 7, 9] {
            let r = CycRing::new(n).expect("ring");
            let z = cyclotomic::zeta(&r);
            for e in [z.clone(), cyclotomic::one(&r).sub(&z), cyclotomic::int(&r, 3).add(&z.pow(2))] {
                if e.norm() != e.resultant_norm() {
                    return fail(format!("N = {n}: {e}"));
                }
            }
        }
        let r5 = CycRing::new(5).expect("ring");
        let n5 = cyclotomic::one(&r5).sub(&cyclotomic::zeta(&r5)).norm();
        check(n5 == BigInt::from(5), "determinant and resultant norms agree; N(1 - zeta_5) = 5", format!("N(1 - zeta_5) = {n5}"))
    });
}

fn criterion_9(list: &mut Vec<Check>) {
    add(list, 9, "1.d3", |_| {
        let der = psl2::gamma2_image(3).map(|g| psl2::derived_closure(&g));
        check(
            der.as_ref().is_ok_and(|d| *d == psl2::d3() && d.order() == 4),
            "derived image of Gamma(2) mod 3 is D3 (order 4)",
            format!("{der:?}"),
        )
    });
    add(list, 9, "2.phi_mod3", |_| {
        for n in 1..=9u64 {
            let order = psl2::phi_image_mod3(n).map(|s| s.order());
            let want = if n % 3 == 0 { 4 } else { 12 };
            if order.as_ref().ok() != Some(&want) {
                return fail(format!("N = {n}: order {order:?}"));
            }
        }
        pass("image of Phi_N mod 3 has order 4 iff 3 | N, N <= 9")
    });
    add(list, 9, "3.gamma2_mod5", |_| {
        let o = psl2::gamma2_image(5).map(|s| s.order());
        check(o.as_ref().ok() == Some(&60), "<A, B> mod 5 has order 60", format!("{o:?}"))
    });
    for (name, l, index) in [("4.congruence_phi3", 1u64, 9u64), ("5.congruence_phi_prime3", 3, 27)] {
        add(list, 9, name, move |_| match congruence_refutation(&heis(3, 3, l).regular_action(), index) {
            Ok(c) => check(
                c.verdict == Verdict::NotCongruence,
                format!(
                    "NOT_CONGRUENCE: level {}, h = {}, index {index} does not divide h",
                    c.level,
                    c.gamma2_index.map_or("?".into(), |h| h.to_string())
                ),
                format!("{c:?}"),
            ),
            Err(e) => fail(e.to_string()),
        });
    }
    add(list, 9, "6.index_144", |_| match psl2::gamma2_index_mod(6) {
        Ok(h) if h == 144 => pass("[Gamma(2) : Gamma(6)] = 144"),
        Ok(h) => {
            let still = h % 27 != 0 && h % 9 != 0;
            if still {
                documented(format!(
                    "[Gamma(2) : Gamma(6)] = {h} in PSL2, not 144 (|SL2(Z/6)|); refutation unaffected"
                ))
            } else {
                fail(format!("[Gamma(2) : Gamma(6)] = {h} breaks the refutation"))
            }
        }
        Err(e) => fail(e.to_string()),
    });
}

fn sample_actions() -> Vec<(String, PermAction)> {
    let mut out = Vec::new();
    for (m, n, l) in valid_triples(125) {
        let p = heis(m, n, l);
        out.push((format!("H_{m},{n},{l}"), p.regular_action()));
        for (name, g) in [("x", p.x()), ("y", p.y()), ("xy", p.mul(&p.x(), &p.y()))] {
            if let Ok(a) = p.coset_action(&[g]) {
                out.push((format!("H_{m},{n},{l}/<{name}>"), a));
            }
        }
    }
    out.push(("X2".into(), PermAction::trivial()));
    out.push(("Phi''_3".into(), LevelQuotient::new(3).expect("level").regular_action()));
    out
}

fn criterion_10(list: &mut Vec<Check>) {
    add(list, 10, "1.x3_prime_dessin", |_| {
        let Ok(d) = dessin::x_prime_dessin(3) else {
            return fail("construction failed");
        };
        let c = d.counts();
        let g = dessin::dessin_genus(&d).ok();
        let ok = c.edges == 27
            && c.vertices == 18
            && c.faces == 9
            && g == Some(1)
            && c.black_degrees.iter().chain(&c.white_degrees).all(|&k| k == 3);
        check(
            ok,
            "27 edges, 18 vertices, 9 faces, genus 1, all vertex degrees 3",
            format!("{c:?}, genus {g:?}"),
        )
    });
    add(list, 10, "2.genus_vs_rh", |_| {
        let actions = sample_actions();
        for (name, a) in &actions {
            match dessin::genus_cross_check(a) {
                Ok((e, r)) if e == r => {}
                other => return fail(format!("{name}: {other:?}")),
            }
        }
        pass(format!("Euler characteristic genus = Riemann-Hurwitz genus on {} actions", actions.len()))
    });
    add(list, 10, "3.dot_json_roundtrip", |_| {
        for n in [3u64, 5] {
            let Ok(d) = dessin::x_prime_dessin(n) else {
                return fail("construction failed");
            };
            let back = match Dessin::from_json(&dessin::export_json(&d)) {
                Ok(b) => b,
                Err(e) => return fail(e.to_string()),
            };
            let dot = dessin::parse_dot(&dessin::export_dot(&d));
            if back != d || dot.as_ref().ok() != Some(&back.dot_graph()) {
                return fail(format!("N = {n}: round trip differs"));
            }
        }
        pass("JSON re-import is exact and the parsed DOT graph matches it for X'_3, X'_5")
    });
    add(list, 10, "4.white_rule", |_| match dessin::adjacency_rule_check(3) {
        Ok(r) if !r.black_rule_matches || !r.white_rule_ground_truth_holds || !r.invariant_holds_ground_truth => {
            fail(format!("{r:?}"))
        }
        Ok(r) if r.white_rule_displayed_matches => pass("displayed white rule agrees"),
        Ok(r) => documented(format!(
            "white vertices join (a,c,b) to {}, not {} ({} of 27 edges differ; invariant (b, c+ab) {} under the displayed rule; relabelling {})",
            r.white_rule_ground_truth,
            r.white_rule_displayed,
            r.displayed_mismatches,
            if r.invariant_holds_displayed { "holds" } else { "fails" },
            if r.reconciling_relabeling_exists { "exists" } else { "does not exist" },
        )),
        Err(e) => fail(e.to_string()),
    });
}

fn all_checks() -> Vec<Check> {
    let mut list = Vec::new();
    criterion_1(&mut list);
    criterion_2(&mut list);
    criterion_3(&mut list);
    criterion_4(&mut list);
    criterion_5(&mut list);
    criterion_6(&mut list);
    criterion_7(&mut list);
    criterion_8(&mut list);
    criterion_9(&mut list);
    criterion_10(&mut list);
    list
}

/// Ids of every check, in report order.
pub fn check_ids() -> Vec<String> {
    let mut ids: Vec<String> = all_checks().into_iter().map(|c| c.id).collect();
    ids.sort();
    ids
}

/// Runs the suite restricted to `criteria` (all when empty).
pub fn run_criteria(quick: bool, criteria: &[u8]) -> VerifyReport {
    let mut checks: Vec<CheckResult> = all_checks()
        .into_par_iter()
        .filter(|c| criteria.is_empty() || criteria.contains(&c.criterion))
        .map(|c| {
            let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(quick)))
                .unwrap_or_else(|p| {
                    let msg = p
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".into());
                    fail(format!("panicked: {msg}"))
                });
            CheckResult {
                id: c.id,
                criterion: c.criterion,
                status: outcome.status,
                details: outcome.details,
            }
        })
        .collect();
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let summary = Summary {
        pass: count(Status::Pass),
        fail: count(Status::Fail),
        documented_discrepancy: count(Status::DocumentedDiscrepancy),
    };
    VerifyReport { quick, checks, summary }
}

pub fn run(quick: bool) -> VerifyReport {
    run_criteria(quick, &[])
}
