//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with timing.
//! Exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use pointfree::format::{emit, parse};
use pointfree_core::covering::{audit_axioms, check_witness, saturate, Derivative, UniformMonoid};
use pointfree_core::formal::{commutative_monoids, FormalBase, FormalPresentation, Judgment};
use pointfree_core::frames::{frame_from_space, frame_iso, product_space, Frame};
use pointfree_core::game::{counterplay, replay, solve, unwind, Arena, GameSpec, Player};
use pointfree_core::order::{equivalent, ElemId};
use pointfree_core::products::{
    canonical_cov, canonical_monoid, coproduct_frames, embed_phi_check, fine_monoid,
    locale_from_cov, point_correspondence, rect_basis_check, spatial_product_eq, star_variant_eq,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn lambda(m: &UniformMonoid) -> UniformMonoid {
    m.lambda_close(Derivative::Slowed).unwrap().0
}

fn build(n: usize, basis: &[Vec<u64>]) -> UniformMonoid {
    let b: Vec<_> = basis.iter().map(|c| to_cover(c)).collect();
    monoid(n, &b)
}

const RANDOM_MONOIDS: usize = 250;

fn coreflection() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x1a4b);
    let mut probes_checked = 0;
    for _ in 0..RANDOM_MONOIDS {
        let (n, basis) = random_basis(&mut rng);
        let m = build(n, &basis);
        let l = lambda(&m);
        let ll = lambda(&l);
        let mut bigger = basis.clone();
        bigger.push(random_cover(&mut rng, n));
        let lb = lambda(&build(n, &bigger));
        let c = m.carrier();
        check(equivalent(&ll.finest(), &l.finest(), c), || format!("not idempotent: {basis:?}"))?;
        for v in probes(&mut rng, n, &meet_closure(n, &basis)) {
            let v = to_cover(&v);
            let in_l = l.member_base(&v).unwrap();
            check(!m.member_base(&v).unwrap() || in_l, || format!("not extensive: {basis:?} {v:?}"))?;
            check(ll.member_base(&v).unwrap() == in_l, || format!("not idempotent: {basis:?} {v:?}"))?;
            check(!in_l || lb.member_base(&v).unwrap(), || format!("not monotone: {basis:?} {v:?}"))?;
            probes_checked += 1;
        }
    }
    Ok(format!("{RANDOM_MONOIDS} monoids, {probes_checked} probes"))
}

fn finite_collapse() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x1a4b);
    let mut mismatches = 0;
    let mut checked = 0;
    for _ in 0..RANDOM_MONOIDS {
        let (n, basis) = random_basis(&mut rng);
        let l = lambda(&build(n, &basis));
        let closure = meet_closure(n, &basis);
        for v in probes(&mut rng, n, &closure) {
            checked += 1;
            if l.member_base(&to_cover(&v)).unwrap() != member(&closure, &v) {
                mismatches += 1;
            }
        }
    }
    check(mismatches == 0, || format!("{mismatches} mismatches"))?;
    Ok(format!("{checked} memberships, 0 mismatches"))
}

fn induced_equivalence() -> Outcome {
    let corpus = corpus3();
    for m in &corpus {
        let c4 = audit_axioms(&m.induced_relation().unwrap().relation).c4.is_empty();
        check(c4 == m.is_locally_fine().unwrap(), || format!("mismatch on {:?}", m.basis()))?;
    }
    Ok(format!("{} monoids", corpus.len()))
}

fn witnesses() -> Outcome {
    let covers = all_covers(3);
    let mut trees = 0;
    for m in corpus3() {
        let sys = m.local_covers();
        for v in &covers {
            let t = m.witness_tree(v).unwrap();
            check(t.is_some() == m.member(v, true).unwrap(), || format!("{:?} {v:?}", m.basis()))?;
            if let Some(t) = t {
                check(check_witness(&sys, v.members(), &t).unwrap().is_ok(), || {
                    format!("bad tree for {:?} {v:?}", m.basis())
                })?;
                trees += 1;
            }
        }
    }
    Ok(format!("{trees} trees checked"))
}

fn games() -> Outcome {
    let mut played = 0;
    for n in 1..=3 {
        let covers = all_covers(n);
        for basis in small_bases(n) {
            let m = monoid(n, &basis);
            for v in &covers {
                let g = GameSpec::new(m.clone(), v.clone()).unwrap();
                let r = solve(&g).unwrap();
                let member = m.member(v, true).unwrap();
                check((r.winner == Player::I) == member, || format!("{basis:?} {v:?}"))?;
                if let Some(s) = &r.strategy {
                    let rp = replay(&g, s).unwrap();
                    check(rp.terminates && rp.stuck.is_empty(), || format!("replay {basis:?} {v:?}"))?;
                    let t = unwind(&g, s).unwrap().unwrap();
                    let sys = g.system().unwrap();
                    check(check_witness(&sys, v.members(), &t).unwrap().is_ok(), || {
                        format!("unwound tree {basis:?} {v:?}")
                    })?;
                } else {
                    check(counterplay(&g).unwrap().is_some(), || format!("counterplay {basis:?} {v:?}"))?;
                }
                played += 1;
            }
        }
    }
    Ok(format!("{played} games"))
}

fn canonical_locales() -> Outcome {
    let mut fs: Vec<(String, Frame)> = vec![
        ("2-chain".into(), chain_frame(2)),
        ("3-chain".into(), chain_frame(3)),
        ("4-Boolean".into(), boolean4()),
        ("4-chain".into(), chain_frame(4)),
    ];
    for (i, s) in six_element_spaces().iter().enumerate() {
        fs.push((format!("6-element T0 #{i}"), frame_from_space(s).unwrap().frame));
    }
    for (name, f) in &fs {
        let l = locale_from_cov(&canonical_cov(f).unwrap()).unwrap().to_frame().unwrap();
        check(frame_iso(&l.frame, f).is_some(), || format!("{name} not recovered"))?;
    }
    Ok(format!("{} frames", fs.len()))
}

fn space_pairs() -> Vec<(String, Frame, Frame, pointfree_core::frames::SpaceDescription, pointfree_core::frames::SpaceDescription)> {
    let spaces = factor_spaces();
    let mut out = Vec::new();
    for (xn, x) in &spaces {
        for (yn, y) in &spaces {
            out.push((
                format!("{xn} x {yn}"),
                frame_from_space(x).unwrap().frame,
                frame_from_space(y).unwrap().frame,
                x.clone(),
                y.clone(),
            ));
        }
    }
    out
}

fn coproduct_oracle() -> Outcome {
    let pairs = space_pairs();
    for (name, fx, fy, x, y) in &pairs {
        let fs = [fx.clone(), fy.clone()];
        let cp = coproduct_frames(&fs).map_err(|e| format!("{name}: {e}"))?;
        let lf = cp.locale.to_frame().unwrap();
        let prod = frame_from_space(&product_space(&[x.clone(), y.clone()]).unwrap().space).unwrap();
        check(frame_iso(&lf.frame, &prod.frame).is_some(), || format!("{name}: not isomorphic"))?;
        let pc = point_correspondence(&fs, &cp).unwrap();
        check(pc.bijective, || format!("{name}: points not in bijection"))?;
    }
    Ok(format!("{} ordered pairs", pairs.len()))
}

fn embedding() -> Outcome {
    let pairs = space_pairs();
    for (name, fx, fy, _, _) in &pairs {
        let cp = coproduct_frames(&[fx.clone(), fy.clone()]).unwrap();
        let ms = [canonical_monoid(fx).unwrap(), canonical_monoid(fy).unwrap()];
        let r = embed_phi_check(&ms, &cp).unwrap();
        check(r.is_empty(), || format!("{name}: {r:?}"))?;
    }
    Ok(format!("{} ordered pairs", pairs.len()))
}

fn rect_basis() -> Outcome {
    let mut factors = Vec::new();
    for n in 1..=2 {
        for t in topologies(n) {
            factors.push(fine_monoid(&space(n, &t)));
        }
    }
    let mut products = 0;
    let k = factors.len();
    for a in 0..k {
        check(rect_basis_check(&[factors[a].clone()]).unwrap().is_empty(), || format!("factor {a}"))?;
        for b in a..k {
            let fs = [factors[a].clone(), factors[b].clone()];
            check(rect_basis_check(&fs).unwrap().is_empty(), || format!("factors {a},{b}"))?;
            products += 1;
            for c in b..k {
                let fs = [factors[a].clone(), factors[b].clone(), factors[c].clone()];
                let r = rect_basis_check(&fs).unwrap();
                check(r.is_empty(), || format!("factors {a},{b},{c}: {r:?}"))?;
                products += 1;
            }
        }
    }
    Ok(format!("{} single factors, {products} products", k))
}

fn spatial_consistency() -> Outcome {
    let pairs = space_pairs();
    for (name, _, _, x, y) in &pairs {
        let r = spatial_product_eq(&[x.clone(), y.clone()]).unwrap();
        check(r.monoids_equal && r.coproduct_spatial && r.consistent(), || format!("{name}: {r:?}"))?;
    }
    Ok(format!("{} ordered pairs", pairs.len()))
}

fn star_scan() -> Outcome {
    let mut covers = 0;
    for n in 1..=2 {
        for k in 1..=2 {
            let x = discrete(n).with_regular_flag(true);
            let y = discrete(k).with_regular_flag(true);
            let r = star_variant_eq(&[x, y]).unwrap();
            check(r.equivalence_holds, || format!("discrete {n} x {k}: {r:?}"))?;
            covers += r.covers_checked;
        }
    }
    Ok(format!("4 pairs, {covers} covers"))
}

fn judgments(b: &FormalBase) -> Vec<Judgment> {
    b.elements()
        .flat_map(|a| {
            (0..1usize << b.len()).map(move |m| {
                Judgment::new(a, (0..32).filter(|i| m >> i & 1 == 1).map(|i| ElemId(i as u32)))
            })
        })
        .collect()
}

fn formal_cross_engine() -> Outcome {
    let mut presentations = 0;
    for n in 1..=4 {
        for t in commutative_monoids(n).unwrap() {
            let names: Vec<String> = (0..n).map(|i| format!("m{i}")).collect();
            let b = FormalBase::new(&names, &t, "m0").unwrap();
            let js = judgments(&b);
            let mut axiom_sets: Vec<Vec<Judgment>> = vec![Vec::new()];
            for (i, x) in js.iter().enumerate() {
                axiom_sets.push(vec![x.clone()]);
                for y in &js[i + 1..] {
                    axiom_sets.push(vec![x.clone(), y.clone()]);
                }
            }
            for ax in axiom_sets {
                let p = FormalPresentation::new(b.clone(), ax.clone()).unwrap();
                let e = p.saturate();
                let (r, _) = saturate(&pointfree_core::formal::to_covering_relation(&p));
                for j in &js {
                    check(e.holds(j).unwrap() == r.holds(j.subject, &j.cover), || {
                        format!("monoid {t:?}, axioms {ax:?}, judgment {j:?}")
                    })?;
                }
                presentations += 1;
            }
        }
    }
    Ok(format!("{presentations} presentations"))
}

fn cli() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "pf"))
        .collect();
    files.sort();
    for f in &files {
        let text = std::fs::read_to_string(f).unwrap();
        let again = emit(&parse(&text).map_err(|e| format!("{}: {e}", f.display()))?);
        check(again == text, || format!("{} does not round-trip", f.display()))?;
    }
    let canned: [(&[&str], i32); 10] = [
        (&["spatial", "sierpinski.frame.pf"], 0),
        (&["check", "m3.frame.pf"], 1),
        (&["lambda", "--rank", "trivial.monoid.pf"], 0),
        (&["check", "tree.covrel.pf"], 1),
        (&["saturate", "tree.covrel.pf"], 0),
        (&["entail", "diamond.formal.pf", "--judgment", "b : {}"], 1),
        (&["coproduct", "--compare-space", "sierpinski.space.pf", "chain3.space.pf"], 0),
        (&["check", "invalid/unknown-key.pf"], 2),
        (&["spatial", "missing-file.pf"], 2),
        (&["--max-base", "2", "check", "chain3.space.pf"], 3),
    ];
    for (args, want) in canned {
        let out = Command::new(env!("CARGO_BIN_EXE_pointfree"))
            .args(args)
            .current_dir(&dir)
            .output()
            .unwrap();
        let got = out.status.code().unwrap_or(-1);
        check(got == want, || format!("{args:?}: exit {got}, expected {want}"))?;
    }
    Ok(format!("{} files round-trip, 10 invocations", files.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 13] = [
        ("coreflection laws", coreflection, Some(Duration::from_secs(60))),
        ("finite collapse oracle", finite_collapse, None),
        ("induced relation C4 iff locally fine", induced_equivalence, Some(Duration::from_secs(120))),
        ("witness soundness and completeness", witnesses, None),
        ("game winner iff closure membership", games, None),
        ("canonical locale recovers the frame", canonical_locales, Some(Duration::from_secs(10))),
        ("coproduct oracle and point bijection", coproduct_oracle, Some(Duration::from_secs(300))),
        ("coproduct embedding report empty", embedding, None),
        ("rectangular basis for fine products", rect_basis, None),
        ("spatial product consistency", spatial_consistency, None),
        ("star variant on discrete pairs", star_scan, None),
        ("formal and covering engines agree", formal_cross_engine, None),
        ("cli round trip and exit codes", cli, None),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS {name} ({detail}; {took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} ({took:.2?})");
            }
        }
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
