//! The twelve acceptance criteria, each with a pinned wall-clock limit.
//! Prints one PASS/FAIL line per criterion; exits 1 if any fails.

use iwalab::algebra::{simple_element, AlgebraElement, UnitCharacter};
use iwalab::flats::{detect_flats, find_nonsimple_twist, integral_twist, ns_hypothesis_level, zero_set_level, NsVerdict};
use iwalab::ideals::{chi, finite_level_size, growth_profile, ideals_equal, sharp_ideal, twist_ideal, unit_monomial_multiple, ElementaryModule, IdealDescriptor, IdealEquality};
use iwalab::systems::*;
use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const BUDGET: u128 = 1 << 12;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn el(d: usize, t: &[(i64, Vec<i64>)]) -> AlgebraElement {
    AlgebraElement::from_int_terms(d, t)
}

fn unit_vec(d: usize, i: usize, k: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = k;
    v
}

fn constant(d: usize, c: i64) -> AlgebraElement {
    el(d, &[(c, vec![0; d])])
}

/// γ₁ − c.
fn lin(d: usize, c: i64) -> AlgebraElement {
    el(d, &[(1, unit_vec(d, 0, 1)), (-c, vec![0; d])])
}

/// Φ_p(γ₁) = 1 + γ₁ + … + γ₁^{p−1}.
fn phi_p(p: u64, d: usize) -> AlgebraElement {
    let t: Vec<(i64, Vec<i64>)> = (0..p as i64).map(|k| (1, unit_vec(d, 0, k))).collect();
    el(d, &t)
}

fn system(p: u64, d: usize, factors: Vec<(AlgebraElement, u32)>, top: u32, mode: Mode) -> Result<GammaSystem, String> {
    let m = ElementaryModule::new(p, d, factors).map_err(|e| e.to_string())?;
    from_torsion_module(&m, top, mode, BUDGET).map_err(|e| e.to_string())
}

fn valid(s: &GammaSystem, what: &str) -> Result<(), String> {
    let r = validate(s);
    ensure(r.passed(), || format!("{what}: {:?}", r.failures().first()))
}

// ---- 1 ----

/// Coefficients of ∏_{a ∈ (Z/p^l)^×} (x − e^{2πia/p^l}) in floating point, rounded.
fn product_over_roots(p: u64, l: u32) -> Vec<i64> {
    let q = p.pow(l);
    let mut poly: Vec<(f64, f64)> = vec![(1.0, 0.0)];
    for a in (0..q).filter(|a| l == 0 || a % p != 0) {
        let t = 2.0 * std::f64::consts::PI * a as f64 / q as f64;
        let (zr, zi) = (t.cos(), t.sin());
        let mut next = vec![(0.0, 0.0); poly.len() + 1];
        for (k, &(cr, ci)) in poly.iter().enumerate() {
            next[k + 1].0 += cr;
            next[k + 1].1 += ci;
            next[k].0 -= cr * zr - ci * zi;
            next[k].1 -= cr * zi + ci * zr;
        }
        poly = next;
    }
    poly.iter().map(|c| c.0.round() as i64).collect()
}

/// (x^{p^l} − 1)/(x^{p^{l−1}} − 1) by exact long division; x − 1 for l = 0.
fn division_oracle(p: u64, l: u32) -> Vec<i64> {
    if l == 0 {
        return vec![-1, 1];
    }
    let (big, small) = (p.pow(l) as usize, p.pow(l - 1) as usize);
    let mut num = vec![0i64; big + 1];
    num[0] = -1;
    num[big] = 1;
    let mut quo = vec![0i64; big - small + 1];
    for k in (0..quo.len()).rev() {
        let c = num[k + small];
        quo[k] = c;
        num[k + small] -= c;
        num[k] += c;
    }
    ensure(num.iter().all(|&x| x == 0), || "division left a remainder".into()).unwrap();
    quo
}

fn criterion1() -> Outcome {
    let mut count = 0;
    for p in [2u64, 3] {
        for l in 0..=2u32 {
            let oracle = division_oracle(p, l);
            ensure(product_over_roots(p, l) == oracle, || format!("oracles disagree at p={p}, l={l}"))?;
            for dir in [vec![1i64], vec![1, 0], vec![1, 2], vec![2, -1]] {
                if dir.iter().all(|a| a.rem_euclid(p as i64) == 0) {
                    continue;
                }
                let d = dir.len();
                let f = simple_element(p, &dir, l).map_err(|e| e.to_string())?;
                let t: Vec<(i64, Vec<i64>)> =
                    oracle.iter().enumerate().map(|(k, &c)| (c, dir.iter().map(|a| a * k as i64).collect())).collect();
                ensure(f == el(d, &t), || format!("f for p={p}, l={l}, γ^{dir:?} is {f}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} simple elements match both oracles"))
}

// ---- 2 ----

fn criterion2() -> Outcome {
    let mut count = 0;
    for p in [2u64, 3, 5] {
        for l in 0..=2u32 {
            for dir in [vec![1i64], vec![0, 1], vec![1, 1], vec![1, -2]] {
                if dir.iter().all(|a| a.rem_euclid(p as i64) == 0) {
                    continue;
                }
                let f = simple_element(p, &dir, l).map_err(|e| e.to_string())?;
                ensure(f.sharp().sharp() == f, || format!("♯♯ ≠ id on {f}"))?;
                ensure(unit_monomial_multiple(&f.sharp(), &f, p).is_some(), || format!("f^♯ is not a unit multiple of {f}"))?;
                let i = IdealDescriptor::principal(f.clone());
                let eq = ideals_equal(&sharp_ideal(&i), &i, p, 729).map_err(|e| e.to_string())?;
                ensure(eq == IdealEquality::Equal, || format!("sharp_ideal moves ({f}): {eq:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} simple elements"))
}

// ---- 3, 4 ----

fn suite() -> Vec<(String, u64, usize, u32, Vec<(AlgebraElement, u32)>, Mode)> {
    let mut out = Vec::new();
    for (p, d, top) in [(2u64, 1usize, 2u32), (3, 1, 2), (3, 2, 1)] {
        let pi = p as i64;
        out.push((format!("Λ/(p), p={p} d={d} N={top}"), p, d, top, vec![(constant(d, pi), 1)], Mode::Full));
        out.push((format!("Λ/(γ−1−p), p={p} d={d} N={top}"), p, d, top, vec![(lin(d, 1 + pi), 1)], Mode::Full));
        out.push((format!("Λ/(p²), p={p} d={d} N={top}"), p, d, top, vec![(constant(d, pi), 2)], Mode::Full));
        out.push((format!("Λ/(Φ(γ)) torsion, p={p} d={d} N={top}"), p, d, top, vec![(phi_p(p, d), 1)], Mode::Torsion));
    }
    out
}

fn criterion3() -> Outcome {
    let mut n = 0;
    for (name, p, d, top, f, mode) in suite() {
        let s = system(p, d, f, top, mode)?;
        let r = validate(&s);
        for ax in [Axiom::Gamma1, Axiom::Gamma2, Axiom::Gamma3, Axiom::Gamma4] {
            ensure(r.axiom_passed(ax), || format!("{name}: {ax:?} fails: {:?}", r.failures().first()))?;
        }
        n += 1;
    }
    Ok(format!("{n} systems pass (Γ-1)–(Γ-4)"))
}

fn criterion4() -> Outcome {
    let mut n = 0;
    for (name, p, d, top, f, mode) in suite() {
        if mode != Mode::Full {
            continue;
        }
        let m = ElementaryModule::new(p, d, f.clone()).map_err(|e| e.to_string())?;
        let s = system(p, d, f, top, mode)?;
        for lvl in 0..=top {
            let size = finite_level_size(&m, lvl, BUDGET).map_err(|e| e.to_string())?;
            ensure(size.exponent == s.b_orders()[lvl as usize] as u64, || format!("{name}, n={lvl}: {} vs SNF {}", size.exponent, s.b_orders()[lvl as usize]))?;
            n += 1;
        }
    }
    let m = ElementaryModule::new(3, 1, vec![(lin(1, 4), 1)]).map_err(|e| e.to_string())?;
    let s = from_torsion_module(&m, 4, Mode::Full, BUDGET).map_err(|e| e.to_string())?;
    for lvl in 0..=4u32 {
        let size = finite_level_size(&m, lvl, BUDGET).map_err(|e| e.to_string())?;
        ensure(size.exponent == (lvl + 1) as u64, || format!("|Λ/(γ−4, I_{lvl})| = 3^{}", size.exponent))?;
        ensure(s.b_orders()[lvl as usize] == lvl + 1, || format!("SNF order at n={lvl}: 3^{}", s.b_orders()[lvl as usize]))?;
    }
    Ok(format!("{n} size comparisons; |Λ/(γ−4, I_n)| = 3^(n+1) for n ≤ 4"))
}

// ---- 5, 6 ----

fn valuation_example() -> AlgebraElement {
    // (γ₁−1) + 3(γ₂−1) + 9(γ₁−1)(γ₂−1)
    let g1 = lin(2, 1);
    let g2 = el(2, &[(1, vec![0, 1]), (-1, vec![0, 0])]);
    g1.add(&g2.scale_int(&BigInt::from(3))).unwrap().add(&g1.mul(&g2).unwrap().scale_int(&BigInt::from(9))).unwrap()
}

fn criterion5() -> Outcome {
    let xi = valuation_example();
    for n in 1..=2u32 {
        let z = zero_set_level(&xi, 3, n, 729).map_err(|e| e.to_string())?;
        ensure(z.len() == 1 && z[0].c == vec![0, 0], || format!("level {n}: zeros {z:?}"))?;
        let f = detect_flats(&z, 3, n, 2);
        ensure(f.cover.len() == 1 && f.cover[0].codim() == 2 && f.residual.is_empty() && f.exact, || format!("level {n}: flats {f:?}"))?;
        let (v, _) = ns_hypothesis_level(&xi, 3, n, 729).map_err(|e| e.to_string())?;
        ensure(v == NsVerdict::Holds, || format!("level {n}: NS {v:?}"))?;
    }
    Ok("zero set {trivial} at levels 1, 2 (9 and 81 characters); one codim-2 flat; NS holds".into())
}

fn criterion6() -> Outcome {
    for p in [2u64, 3] {
        let xi = lin(2, 1);
        for n in 1..=2u32 {
            let z = zero_set_level(&xi, p, n, 729).map_err(|e| e.to_string())?;
            let q = p.pow(n) as usize;
            ensure(z.len() == q && z.iter().all(|w| w.c[0] == 0), || format!("p={p} level {n}: zeros {z:?}"))?;
            let f = detect_flats(&z, p, n, 2);
            ensure(f.residual.is_empty() && f.cover.len() == 1, || format!("p={p} level {n}: {f:?}"))?;
            let fl = &f.cover[0];
            ensure(fl.codim() == 1 && fl.basis == vec![vec![1, 0]] && fl.target == vec![0], || format!("flat {fl:?}"))?;
            let (v, _) = ns_hypothesis_level(&xi, p, n, 729).map_err(|e| e.to_string())?;
            ensure(matches!(v, NsVerdict::ViolatedAtLevel(_)), || format!("p={p} level {n}: NS {v:?}"))?;
        }
    }
    Ok("{ω(γ₁) = 1} found as a codim-1 flat, empty residual, NS violated".into())
}

// ---- 7 ----

fn criterion7() -> Outcome {
    let systems = [
        system(3, 1, vec![(constant(1, 3), 1)], 2, Mode::Full)?,
        system(3, 1, vec![(lin(1, 4), 1)], 2, Mode::Full)?,
        system(2, 1, vec![(constant(1, 2), 1)], 2, Mode::Full)?,
        system(3, 1, vec![(phi_p(3, 1), 1)], 2, Mode::Torsion)?,
        system(3, 2, vec![(constant(2, 3), 1)], 1, Mode::Full)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs = 0;
    for i in 0..100 {
        let s = &systems[i % systems.len()];
        let n = rng.gen_range(0..=s.top());
        let b = &s.level(n).b;
        let vals = (0..b.gens()).map(|j| Ratio::new(rng.gen_range(0..b.modulus(j)), b.modulus(j))).collect();
        let f = CharacterHom::new(b, vals).map_err(|e| e.to_string())?;
        let hat = fourier_hat(b, &f).map_err(|e| e.to_string())?;
        ensure(hat.delta_e() == f, || format!("round trip fails on hom {i}"))?;
        ensure(hat.is_linear(b, s.p()), || format!("f̂ not Λ_n-linear on hom {i}"))?;
        for m in 0..=n {
            ensure(check1(s, m, n, &f).map_err(|e| e.to_string())?, || format!("compatibility fails for hom {i}, (m, n) = ({m}, {n})"))?;
            pairs += 1;
        }
    }
    Ok(format!("100 homomorphisms, {pairs} (m, n) compatibility checks"))
}

// ---- 8 ----

fn criterion8() -> Outcome {
    let mut iso = 0;
    for (p, d, top) in [(2u64, 1usize, 2u32), (3, 1, 2), (3, 2, 1)] {
        let pi = p as i64;
        for f in [constant(d, pi), lin(d, 1 + pi)] {
            let s = system(p, d, vec![(f.clone(), 1)], top, Mode::Full)?;
            let r = funeq_check(&s, SearchBudget::default()).map_err(|e| e.to_string())?;
            ensure(r.all_isomorphic(), || format!("Λ/({f}), p={p} d={d}: {:?}", r.levels.iter().map(|l| &l.verdict).collect::<Vec<_>>()))?;
            iso += 1;
        }
    }
    let mut valid_count = 0;
    let mut all: Vec<GammaSystem> = Vec::new();
    for (_, p, d, top, f, mode) in suite() {
        all.push(system(p, d, f, top, mode)?);
    }
    for s in all.clone() {
        let k = twistable_order(&s).max(1);
        let u = 1 + (s.p() as i128).pow(k + if s.p() == 2 { 1 } else { 0 });
        let m = s.precision().max(k + 2);
        let phi = UnitCharacter::new(s.p(), m, &vec![u; s.d()]).map_err(|e| e.to_string())?;
        all.push(twist_system(&s, &phi).map_err(|e| e.to_string())?);
    }
    for s in &all {
        if validate(s).passed() {
            ensure(s.a_orders() == s.b_orders(), || format!("|a_n| ≠ |b_n|: {:?} vs {:?}", s.a_orders(), s.b_orders()))?;
            valid_count += 1;
        }
    }
    ensure(valid_count == all.len(), || format!("only {valid_count} of {} suite systems are valid", all.len()))?;
    Ok(format!("{iso} systems level-wise a_n ≅ b_n^♯; |a_n| = |b_n| on {valid_count} systems incl. torsion and twisted"))
}

// ---- 9 ----

fn mutate(rng: &mut ChaCha8Rng, base: &[GammaSystem]) -> Result<(GammaSystem, String), String> {
    let mut s = base[rng.gen_range(0..base.len())].clone();
    let mut log = Vec::new();
    let steps = rng.gen_range(1..=3);
    let mut summed = false;
    for _ in 0..steps {
        let g = lin(1, 0);
        let lambdas = [constant(1, 3), lin(1, 1), lin(1, -2), phi_p(3, 1), g.add(&constant(1, 3)).unwrap()];
        let op = rng.gen_range(0..5);
        let next = match op {
            0 if !summed => {
                summed = true;
                let y = &base[rng.gen_range(0..base.len())];
                log.push("sum");
                direct_sum(&s, y).map(|x| x.system)
            }
            1 => {
                log.push("scalar");
                scalar_system(&s, &lambdas[rng.gen_range(0..lambdas.len())])
            }
            2 => {
                log.push("torsion");
                torsion_system(&s, &lambdas[rng.gen_range(0..lambdas.len())])
            }
            3 => {
                log.push("twist");
                let k = twistable_order(&s).max(1);
                let u = 1 + 3i128.pow(k) * rng.gen_range(1..3);
                let phi = UnitCharacter::new(3, s.precision().max(k + 2), &[u]).map_err(|e| e.to_string())?;
                twist_system(&s, &phi)
            }
            _ => {
                log.push("derived");
                derived_prime(&s)
            }
        };
        s = next.map_err(|e| format!("{}: {e}", log.join(" → ")))?;
    }
    Ok((s, log.join(" → ")))
}

fn criterion9() -> Outcome {
    let t = system(3, 1, vec![(phi_p(3, 1), 1)], 2, Mode::Torsion)?;
    let dp = derived_prime(&t).map_err(|e| e.to_string())?;
    valid(&dp, "derived_prime")?;
    ensure(is_strongly_controlled(&dp).holds(), || "derived_prime of the torsion Φ₃ system is not strongly controlled".into())?;
    let base = [
        system(3, 1, vec![(constant(1, 3), 1)], 2, Mode::Full)?,
        system(3, 1, vec![(lin(1, 4), 1)], 2, Mode::Full)?,
        system(3, 1, vec![(constant(1, 3), 2)], 2, Mode::Full)?,
        t,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut held, mut failed) = (0, 0);
    for i in 0..50 {
        let (s, log) = mutate(&mut rng, &base)?;
        valid(&s, &format!("mutation {i} ({log})"))?;
        let c = is_strongly_controlled(&s);
        ensure(c.consistent(), || format!("mutation {i} ({log}): r injective {} but k surjective {}", c.r_injective, c.k_surjective))?;
        if c.holds() {
            held += 1;
        } else {
            failed += 1;
        }
    }
    ensure(held > 0 && failed > 0, || format!("mutations not diverse: {held} controlled, {failed} not"))?;
    Ok(format!("derived_prime controlled; 50 mutations agree ({held} controlled, {failed} jointly not)"))
}

// ---- 10 ----

fn criterion10() -> Outcome {
    let s = system(3, 1, vec![(constant(1, 3), 1)], 2, Mode::Full)?;
    let phi = UnitCharacter::new(3, 9, &[4]).map_err(|e| e.to_string())?;
    let t = twist_system(&s, &phi).map_err(|e| e.to_string())?;
    valid(&t, "twist by 1+p")?;
    let back = twist_system(&t, &phi.inverse()).map_err(|e| e.to_string())?;
    let s9 = s.with_precision(9);
    for n in 0..=2 {
        ensure(back.level(n) == s9.level(n), || format!("double twist changes level {n}"))?;
    }
    let s2 = system(3, 2, vec![(lin(2, 4), 1)], 1, Mode::Full)?;
    let phi2 = UnitCharacter::new(3, 9, &[4, 7]).map_err(|e| e.to_string())?;
    valid(&twist_system(&s2, &phi2).map_err(|e| e.to_string())?, "d = 2 twist")?;

    let ids = [
        (chi(&ElementaryModule::new(3, 1, vec![(lin(1, 1).mul(&lin(1, 4)).unwrap(), 2)]).unwrap()), phi.clone(), 1),
        (IdealDescriptor::principal(valuation_example()), phi2, 2),
    ];
    for (i, ph, d) in ids {
        let there = twist_ideal(&i, &ph).map_err(|e| e.to_string())?;
        let back = twist_ideal(&there, &ph.inverse()).map_err(|e| e.to_string())?;
        let g = i.generator().and_then(|x| x.to_modular(3, 9)).map_err(|e| e.to_string())?;
        let h = back.generator().and_then(|x| x.to_modular(3, 9)).map_err(|e| e.to_string())?;
        ensure(g == h, || format!("d={d}: twist then inverse twist gives {h}, expected {g}"))?;
    }

    let xi = lin(1, 1).mul(&lin(1, 4)).unwrap();
    let found = find_nonsimple_twist(&xi, 3, 1, 9, 1000).map_err(|e| e.to_string())?;
    let u: Vec<BigInt> = found.u.iter().map(|&x| BigInt::from(x)).collect();
    let tw = integral_twist(&xi, &u, false).map_err(|e| e.to_string())?;
    for n in 0..=2 {
        let z = zero_set_level(&tw, 3, n, 729).map_err(|e| e.to_string())?;
        ensure(z.is_empty(), || format!("φ*(ξ) vanishes at level {n}: {z:?}"))?;
    }
    Ok(format!("twists valid, involutive; φ = {:?} clears the zero set of (γ−1)(γ−4) at levels ≤ 2", found.u))
}

// ---- 11 ----

fn criterion11() -> Outcome {
    for p in [2u64, 3] {
        let g = growth_profile(&lin(2, 1), p, 2, BUDGET).map_err(|e| e.to_string())?;
        ensure(g.ranks == vec![1, p, p * p], || format!("p={p}: ranks {:?}", g.ranks))?;
        ensure(g.within_bound, || format!("p={p}: bound fails"))?;
    }
    for (p, xi) in [(3u64, lin(1, 1)), (3, phi_p(3, 1)), (2, lin(1, 1).mul(&phi_p(2, 1)).unwrap()), (3, lin(1, 4))] {
        let g = growth_profile(&xi, p, 4, BUDGET).map_err(|e| e.to_string())?;
        let r = &g.ranks;
        ensure(r[r.len() - 1] == r[r.len() - 2] && r[r.len() - 2] == r[r.len() - 3], || format!("d=1 profile of {xi} not constant: {r:?}"))?;
    }
    Ok("ranks of γ₁−1 are 1, p, p²; d = 1 profiles constant from n = 2".into())
}

// ---- 12 ----

fn criterion12() -> Outcome {
    let x = system(3, 1, vec![(lin(1, 4), 1)], 2, Mode::Full)?;
    let y = system(3, 1, vec![(constant(1, 3), 1)], 2, Mode::Full)?;
    let sum = direct_sum(&x, &y).map_err(|e| e.to_string())?;
    valid(&sum.system, "product")?;
    let split = idempotent_split(&sum.system, &sum.first_a, &sum.first_b).map_err(|e| e.to_string())?;
    for (part, orig, name) in [(&split.first, &x, "first"), (&split.second, &y, "second")] {
        valid(part, name)?;
        for n in 0..=2 {
            let (l, o) = (part.level(n), orig.level(n));
            ensure(l.a.exps() == o.a.exps() && l.b.exps() == o.b.exps(), || format!("{name} factor differs at level {n}"))?;
            ensure(l.pairing.is_perfect(), || format!("{name}: restricted pairing degenerate at level {n}"))?;
        }
    }
    for n in 0..=2u32 {
        let l = sum.system.level(n);
        let (fa, fb) = (&sum.first_a[n as usize], &sum.first_b[n as usize]);
        for i in 0..l.a.gens() {
            for j in 0..l.b.gens() {
                let a1 = l.a.apply(fa, &l.a.basis(i));
                let b1 = l.b.basis(j);
                let b2 = l.b.add(&b1, &l.b.scale(-1, &l.b.apply(fb, &b1)));
                ensure(l.pairing.value(&a1, &b2) == Ratio::from_integer(0), || format!("cross pairing nonzero at level {n}"))?;
            }
        }
    }
    Ok("both factors recovered with perfect pairings; cross pairing zero".into())
}

fn main() {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        (1, "simple-element identity", 1, criterion1),
        (2, "sharp and ideal laws", 1, criterion2),
        (3, "axiom suite", 10, criterion3),
        (4, "size oracle agreement", 5, criterion4),
        (5, "zero set of the three-valuation element", 30, criterion5),
        (6, "codim-1 flat detection", 10, criterion6),
        (7, "Fourier round trip and compatibility", 10, criterion7),
        (8, "functional-equation shadow", 10, criterion8),
        (9, "derived-system laws", 20, criterion9),
        (10, "twist laws", 10, criterion10),
        (11, "growth bound", 30, criterion11),
        (12, "idempotent split", 5, criterion12),
    ];
    let mut failed = 0;
    for (k, name, limit, f) in criteria {
        let start = Instant::now();
        let out = f();
        let dt = start.elapsed();
        let over = dt > Duration::from_secs(limit);
        let (status, detail) = match (&out, over) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("{msg}; over the {limit} s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("[{status}] {k:>2}. {name} ({:.3} s, limit {limit} s): {detail}", dt.as_secs_f64());
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
