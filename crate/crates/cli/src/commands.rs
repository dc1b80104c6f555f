//! One function per subcommand, each producing a [`Report`].

use std::path::{Path, PathBuf};

use pointfree_core::covering::{
    audit_axioms, bounded_member, cover_name, saturate, Bounded,
    DerivationTrace, Derivative, NoetherianTree, RelationalMonoid, UniformMonoid,
};
use pointfree_core::formal::{Derivation, FormalBase, Judgment};
use pointfree_core::frames::{
    frame_from_space, frame_iso, is_spatial, points_of, product_space, validate_frame, Frame,
    SpaceDescription,
};
use pointfree_core::game::{counterplay, replay, solve, Arena, Player};
use pointfree_core::order::{Cover, ElemId, PointSet, Preorder};
use pointfree_core::products::{
    canonical_monoid, coproduct_frames, embed_phi_check, point_correspondence, product_monoid,
    rect_basis_check, spatial_product_eq, star_variant_eq,
};
use serde_json::Value;

use crate::format::{emit, parse, parse_judgment, parse_set_list};
use crate::report::Report;
use crate::structure::{build, formal_judgment, point_cover, CliError, Structure};
use crate::{read, Cli, Command};

pub fn name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Points(_) => "points",
        Command::Spatial(_) => "spatial",
        Command::Lambda { .. } => "lambda",
        Command::Saturate { .. } => "saturate",
        Command::Witness { .. } => "witness",
        Command::Product { .. } => "product",
        Command::Coproduct { .. } => "coproduct",
        Command::Game { .. } => "game",
        Command::Entail { .. } => "entail",
        Command::Bounded { .. } => "bounded",
        Command::Fmt(_) => "fmt",
    }
}

struct Ctx {
    max_base: usize,
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<Structure, CliError> {
        let s = build(&parse(&read(path)?)?)?;
        self.guard(s.base_size(), &format!("{} base", s.kind()))?;
        Ok(s)
    }

    fn guard(&self, size: usize, what: &str) -> Result<(), CliError> {
        if size > self.max_base {
            return Err(CliError::limit(format!(
                "limit exceeded: {what} has {size} elements, above --max-base {}",
                self.max_base
            )));
        }
        Ok(())
    }
}

fn wrong_kind(s: &Structure, wanted: &str) -> CliError {
    CliError::invalid(format!("expected {wanted}, got a {} file", s.kind()))
}

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let ctx = Ctx {
        max_base: cli.max_base,
    };
    match &cli.command {
        Command::Check(o) => check(&ctx.load(&o.file)?),
        Command::Points(o) => points(&ctx.load(&o.file)?),
        Command::Spatial(o) => spatial(&ctx.load(&o.file)?),
        Command::Lambda {
            file,
            trace,
            rank,
            classical,
        } => {
            let variant = if *classical {
                Derivative::Classical
            } else {
                Derivative::Slowed
            };
            lambda(&ctx.load(file)?, variant, *trace, *rank)
        }
        Command::Saturate { file, trace } => saturate_cmd(&ctx.load(file)?, *trace),
        Command::Witness { file, cover } => witness(&ctx.load(file)?, cover, None),
        Command::Bounded { file, cover, depth } => witness(&ctx.load(file)?, cover, Some(*depth)),
        Command::Product { files } => product(&ctx, files),
        Command::Coproduct {
            files,
            compare_space,
        } => coproduct(&ctx, files, *compare_space),
        Command::Game { file, strategy } => game(&ctx.load(file)?, *strategy),
        Command::Entail {
            file,
            judgment,
            proof,
        } => entail(&ctx.load(file)?, judgment, *proof),
        Command::Fmt(o) => {
            let mut r = Report::new("fmt");
            r.set("text", emit(&parse(&read(&o.file)?)?));
            Ok(r)
        }
    }
}

fn trace_lines<T>(t: &DerivationTrace<T>, show: impl Fn(&T) -> String) -> Vec<String> {
    t.stages
        .iter()
        .map(|s| {
            let items: Vec<String> = s.added.iter().map(&show).collect();
            if items.is_empty() {
                format!("stage {}: (none)", s.index)
            } else {
                format!("stage {}: {}", s.index, items.join("; "))
            }
        })
        .collect()
}

fn tree_lines<P: Copy + Ord>(t: &NoetherianTree<P>, show: &dyn Fn(P) -> String) -> Vec<String> {
    fn walk<P: Copy + Ord>(t: &NoetherianTree<P>, d: usize, show: &dyn Fn(P) -> String, out: &mut Vec<String>) {
        out.push(format!("{}{}", "  ".repeat(d), show(t.node)));
        for c in &t.children {
            walk(c, d + 1, show, out);
        }
    }
    let mut out = Vec::new();
    walk(t, 0, show, &mut out);
    out
}

fn covers_line(p: &Preorder, a: ElemId, cs: &[Cover<ElemId>]) -> String {
    let parts: Vec<String> = cs.iter().map(|c| p.cover_name(c)).collect();
    format!("{} : {}", p.name(a), parts.join(" | "))
}

fn topology_frame(s: &Structure) -> Result<Frame, CliError> {
    match s {
        Structure::Frame(f) => Ok(f.clone()),
        Structure::Space(sp) => Ok(frame_from_space(sp)?.frame),
        other => Err(wrong_kind(other, "a frame or space")),
    }
}

fn check(s: &Structure) -> Result<Report, CliError> {
    let mut r = Report::new("check");
    r.set("kind", s.kind().name());
    match s {
        Structure::Frame(f) => {
            let v = validate_frame(f);
            r.set("elements", f.len());
            r.set("frame", v.is_empty());
            r.list("violations", v.iter().map(|x| x.to_string()));
            r.require(v.is_empty());
        }
        Structure::Space(sp) => {
            let tf = frame_from_space(sp)?;
            r.set("points", sp.carrier().len());
            r.set("opens", sp.opens().len());
            r.set("t0", sp.is_t0());
            r.set("regular", sp.is_regular());
            r.set("regular_flag", sp.regular_flag().map_or(Value::Null, Value::Bool));
            r.set("frame", validate_frame(&tf.frame).is_empty());
        }
        Structure::Preorder(p) => {
            r.set("elements", p.len());
            r.set("antisymmetric", p.is_antisymmetric());
        }
        Structure::Covrel(rel) => {
            let a = audit_axioms(rel);
            let p = rel.carrier();
            r.set("elements", p.len());
            r.set("pairs", rel.len());
            r.set("closed", a.is_empty());
            let mut lines = Vec::new();
            for (tag, list) in [("C1", &a.c1), ("C2", &a.c2), ("C3", &a.c3), ("C4", &a.c4)] {
                for (x, u) in list {
                    lines.push(format!("{tag}: {} : {}", p.name(*x), p.cover_name(u)));
                }
            }
            r.list("violations", lines);
            r.require(a.is_empty());
        }
        Structure::Monoid(m) => {
            let fine = m.is_locally_fine()?;
            r.set("points", m.carrier().len());
            r.set("basis", m.basis().len());
            r.set("locally_fine", fine);
            r.set("normal", m.is_normal());
            r.require(fine);
        }
        Structure::Formal(p) => {
            let bad = p.saturate().audit()?;
            r.set("elements", p.base().len());
            r.set("axioms", p.axioms().len());
            r.set("closed", bad.is_empty());
            r.list("violations", bad.iter().map(|j| judgment_text(p.base(), j)));
            r.require(bad.is_empty());
        }
        Structure::Game(g) => {
            r.set("points", g.monoid.carrier().len());
            r.set("basis", g.monoid.basis().len());
            r.set("target", cover_name(g.monoid.carrier(), &g.target));
        }
    }
    Ok(r)
}

fn points(s: &Structure) -> Result<Report, CliError> {
    let f = topology_frame(s)?;
    let ps = points_of(&f);
    let mut r = Report::new("points");
    r.set("points", ps.len());
    r.list(
        "filters",
        ps.iter().map(|p| {
            let names: Vec<&str> = p.filter().iter().map(|&e| f.name(e)).collect();
            format!("[{}]", names.join(", "))
        }),
    );
    Ok(r)
}

fn spatial(s: &Structure) -> Result<Report, CliError> {
    let f = topology_frame(s)?;
    let sp = is_spatial(&f);
    let mut r = Report::new("spatial");
    r.headline = Some(format!("spatial: {}, points: {}", sp.spatial, sp.points));
    r.set("spatial", sp.spatial);
    r.set("points", sp.points);
    r.set("elements", f.len());
    r.set(
        "witness",
        sp.witness
            .map_or(Value::Null, |(x, y)| Value::String(format!("{} != {}", f.name(x), f.name(y)))),
    );
    r.require(sp.spatial);
    Ok(r)
}

fn lambda(s: &Structure, variant: Derivative, trace: bool, rank: bool) -> Result<Report, CliError> {
    let mut r = Report::new("lambda");
    match s {
        Structure::Monoid(m) => {
            let (l, t) = m.lambda_close(variant)?;
            let c = m.carrier();
            r.set("locally_fine", m.is_locally_fine()?);
            r.set("finest", cover_name(c, &l.finest()));
            r.set("meet_closure", l.meet_closure().len());
            if rank {
                r.set("rank", t.rank());
            }
            if trace {
                r.list("trace", trace_lines(&t, |v| cover_name(c, v)));
            }
        }
        Structure::Covrel(rel) => {
            let m = RelationalMonoid::from_relation(rel);
            let (l, t) = m.lambda_close(variant)?;
            let p = m.carrier();
            r.set("locally_fine", m.is_locally_fine()?);
            r.list("covers", p.elements().map(|a| covers_line(p, a, l.base_covers(a))));
            if rank {
                r.set("rank", t.rank());
            }
            if trace {
                r.list(
                    "trace",
                    trace_lines(&t, |(a, u)| format!("{} : {}", p.name(*a), p.cover_name(u))),
                );
            }
        }
        other => return Err(wrong_kind(other, "a monoid or covrel")),
    }
    Ok(r)
}

fn saturate_cmd(s: &Structure, trace: bool) -> Result<Report, CliError> {
    let Structure::Covrel(rel) = s else {
        return Err(wrong_kind(s, "a covrel"));
    };
    let (c, t) = saturate(rel);
    let p = c.carrier();
    let mut r = Report::new("saturate");
    r.set("input_closed", rel.is_closed());
    r.set("closed", c.is_closed());
    r.set("rank", t.rank());
    r.list(
        "finest",
        p.elements().map(|a| match c.finest(a) {
            Some(u) => format!("{} : {}", p.name(a), p.cover_name(u)),
            None => format!("{} : none", p.name(a)),
        }),
    );
    if trace {
        r.list(
            "trace",
            trace_lines(&t, |(a, u)| format!("{} : {}", p.name(*a), p.cover_name(u))),
        );
    }
    Ok(r)
}

fn single_set(sets: Vec<Vec<String>>) -> Result<Vec<String>, CliError> {
    match <[Vec<String>; 1]>::try_from(sets) {
        Ok([s]) => Ok(s),
        Err(_) => Err(CliError::invalid("a covrel cover is a single set of elements")),
    }
}

/// `witness` when `depth` is absent, `bounded` otherwise.
fn witness(s: &Structure, cover: &str, depth: Option<usize>) -> Result<Report, CliError> {
    let command = if depth.is_some() { "bounded" } else { "witness" };
    let sets = parse_set_list(cover)?;
    let mut r = Report::new(command);
    let (found, lines) = match s {
        Structure::Monoid(m) => {
            let c = m.carrier();
            let v = point_cover(c, &sets)?;
            r.set("cover", cover_name(c, &v));
            let show = |p: PointSet| c.set_name(p);
            let tree = match depth {
                None => {
                    let t = m.witness_tree(&v)?;
                    r.set("member", m.member(&v, true)?);
                    t
                }
                Some(d) => proven(bounded_member(&m.local_covers(), v.members(), d).unwrap_or_else(|e| match e {})),
            };
            (tree.is_some(), tree.map(|t| tree_lines(&t, &show)))
        }
        Structure::Covrel(rel) => {
            let m = RelationalMonoid::from_relation(rel);
            let p = m.carrier();
            let v = p.cover_of_names(&single_set(sets)?)?;
            r.set("cover", p.cover_name(&v));
            let show = |e: ElemId| p.name(e).to_string();
            let tree = match depth {
                None => {
                    let (l, _) = m.lambda_close(Derivative::Slowed)?;
                    r.set("member", l.member(&v)?);
                    m.witness_tree(&v)?
                }
                Some(d) => {
                    proven(bounded_member(&m.local_covers()?, v.members(), d).unwrap_or_else(|e| match e {}))
                }
            };
            (tree.is_some(), tree.map(|t| tree_lines(&t, &show)))
        }
        other => return Err(wrong_kind(other, "a monoid or covrel")),
    };
    match depth {
        Some(d) => {
            r.set("depth", d);
            r.set("result", if found { "proven" } else { "unknown" });
        }
        None => r.set("found", found),
    }
    match lines {
        Some(ls) => r.list("tree", ls),
        None => r.set("tree", Value::Null),
    }
    r.require(found);
    Ok(r)
}

fn proven<P>(b: Bounded<P>) -> Option<NoetherianTree<P>> {
    match b {
        Bounded::Proven(t) => Some(t),
        Bounded::Unknown => None,
    }
}

fn product(ctx: &Ctx, files: &[PathBuf]) -> Result<Report, CliError> {
    let structures = files.iter().map(|f| ctx.load(f)).collect::<Result<Vec<_>, _>>()?;
    let mut r = Report::new("product");
    r.set("factors", structures.len());
    if let Some(spaces) = all_spaces(&structures) {
        ctx.guard(spaces.iter().map(|s| s.opens().len()).product(), "product of open sets")?;
        let ps = product_space(&spaces)?;
        r.set("points", ps.space.carrier().len());
        r.set("opens", ps.space.opens().len());
        let rep = spatial_product_eq(&spaces)?;
        r.set("monoids_equal", rep.monoids_equal);
        r.set("pairs_checked", rep.pairs_checked);
        r.set("coproduct_spatial", rep.coproduct_spatial);
        r.set("coproduct_is_product_topology", rep.coproduct_is_product_topology);
        r.set("consistent", rep.consistent());
        r.require(rep.consistent());
        if spaces.iter().all(|s| s.regular_flag().is_some()) {
            let st = star_variant_eq(&spaces)?;
            r.set("star_equivalence", st.equivalence_holds);
            r.set("star_covers_checked", st.covers_checked);
            r.set("regular_asserted", st.regular_asserted);
            r.set("fine_equal", st.fine_equal);
            r.require(st.equivalence_holds);
        }
        return Ok(r);
    }
    let monoids: Vec<UniformMonoid> = structures
        .iter()
        .map(|s| match s {
            Structure::Monoid(m) => Ok(m.clone()),
            other => Err(wrong_kind(other, "spaces or monoids")),
        })
        .collect::<Result<_, _>>()?;
    ctx.guard(monoids.iter().map(|m| m.carrier().len()).product(), "product of point sets")?;
    let pm = product_monoid(&monoids)?;
    let c = pm.monoid.carrier();
    r.set("points", c.len());
    r.list("basis", pm.monoid.basis().iter().map(|b| cover_name(c, b)));
    let rect = rect_basis_check(&monoids)?;
    r.set("rect_covers_checked", rect.covers_checked);
    r.set("rect_basis", rect.is_empty());
    r.require(rect.is_empty());
    Ok(r)
}

fn all_spaces(ss: &[Structure]) -> Option<Vec<SpaceDescription>> {
    ss.iter()
        .map(|s| match s {
            Structure::Space(sp) => Some(sp.clone()),
            _ => None,
        })
        .collect()
}

fn coproduct(ctx: &Ctx, files: &[PathBuf], compare: bool) -> Result<Report, CliError> {
    let structures = files.iter().map(|f| ctx.load(f)).collect::<Result<Vec<_>, _>>()?;
    let frames = structures.iter().map(topology_frame).collect::<Result<Vec<_>, _>>()?;
    ctx.guard(frames.iter().map(Frame::len).product(), "coproduct base")?;
    let cp = coproduct_frames(&frames)?;
    let lf = cp.locale.to_frame()?;
    let sp = is_spatial(&lf.frame);
    let monoids = frames.iter().map(canonical_monoid).collect::<Result<Vec<_>, _>>()?;
    let embed = embed_phi_check(&monoids, &cp)?;
    let pc = point_correspondence(&frames, &cp)?;
    let mut r = Report::new("coproduct");
    r.set("factors", frames.len());
    r.set("base", cp.base().len());
    r.set("generators", cp.generators.len());
    r.set("elements", lf.frame.len());
    r.set("frame", validate_frame(&lf.frame).is_empty());
    r.set("spatial", sp.spatial);
    r.set("points", sp.points);
    r.set("points_bijective", pc.bijective);
    r.set("embedding", embed.is_empty());
    r.set("locale_covers_checked", embed.locale_covers_checked);
    r.require(embed.is_empty());
    if compare {
        let spaces = all_spaces(&structures)
            .ok_or_else(|| CliError::invalid("--compare-space needs space files"))?;
        let prod = frame_from_space(&product_space(&spaces)?.space)?;
        let iso = frame_iso(&lf.frame, &prod.frame).is_some();
        r.set("product_topology_elements", prod.frame.len());
        r.set("isomorphic", iso);
        r.require(iso && pc.bijective);
    }
    Ok(r)
}

fn game(s: &Structure, strategy: bool) -> Result<Report, CliError> {
    let Structure::Game(g) = s else {
        return Err(wrong_kind(s, "a game"));
    };
    let res = solve(g)?;
    let c = g.monoid.carrier();
    let member = g.monoid.member(&g.target, true)?;
    let wins = res.winner == Player::I;
    let mut r = Report::new("game");
    r.set("target", cover_name(c, &g.target));
    r.set("start", c.set_name(g.start()));
    r.set("winner", if wins { "I" } else { "II" });
    r.set("closure_member", member);
    r.set("agrees", wins == member);
    r.set("rank", res.ranks.get(&g.start()).map_or(Value::Null, |&k| k.into()));
    r.set("winning_pieces", res.winning_set.len());
    r.require(wins == member);
    if strategy {
        match &res.strategy {
            Some(st) => {
                let rp = replay(g, st)?;
                r.list(
                    "strategy",
                    st.moves.iter().map(|(p, v)| format!("{} -> {}", c.set_name(*p), cover_name(c, v))),
                );
                r.set("replay_terminates", rp.terminates);
                r.set("max_moves", rp.max_moves);
                r.require(rp.terminates);
            }
            None => {
                let replies = counterplay(g)?.unwrap_or_default();
                r.list(
                    "counterplay",
                    replies.iter().map(|(p, v, q)| {
                        format!("{} vs {} -> {}", c.set_name(*p), cover_name(c, v), c.set_name(*q))
                    }),
                );
            }
        }
    }
    Ok(r)
}

fn judgment_text(b: &FormalBase, j: &Judgment) -> String {
    let names: Vec<&str> = j.cover.members().iter().map(|&e| b.name(e)).collect();
    format!("{} : {{{}}}", b.name(j.subject), names.join(", "))
}

fn proof_lines(b: &FormalBase, d: &Derivation) -> Vec<String> {
    fn walk(b: &FormalBase, d: &Derivation, depth: usize, out: &mut Vec<String>) {
        out.push(format!("{}{} [{}]", "  ".repeat(depth), judgment_text(b, &d.conclusion), d.rule));
        for p in &d.premises {
            walk(b, p, depth + 1, out);
        }
    }
    let mut out = Vec::new();
    walk(b, d, 0, &mut out);
    out
}

fn entail(s: &Structure, judgment: &str, proof: bool) -> Result<Report, CliError> {
    let Structure::Formal(p) = s else {
        return Err(wrong_kind(s, "a formal presentation"));
    };
    let (a, u) = parse_judgment(judgment)?;
    let j = formal_judgment(p.base(), &a, &u)?;
    let e = p.saturate();
    let holds = e.holds(&j)?;
    let mut r = Report::new("entail");
    r.set("judgment", judgment_text(p.base(), &j));
    r.set("holds", holds);
    r.set("stages", e.trace().stages.len());
    if proof {
        match e.derivation(&j)? {
            Some(d) => {
                r.set("depth", d.depth());
                r.list("proof", proof_lines(p.base(), &d));
            }
            None => r.set("proof", Value::Null),
        }
    }
    r.require(holds);
    Ok(r)
}
