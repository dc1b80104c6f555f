//! Building engine values from parsed structure files.

use std::fmt;

use pointfree_core::covering::{CoveringError, CoveringRelation, UniformMonoid};
use pointfree_core::formal::{FormalBase, FormalError, FormalPresentation, Judgment};
use pointfree_core::frames::{Frame, FrameError, SpaceDescription};
use pointfree_core::game::{GameError, GameSpec};
use pointfree_core::order::{Cover, ElemId, OrderError, PointSet, Preorder, SubsetCarrier};
use pointfree_core::products::ProductError;

use crate::format::{Kind, ParseError, StructureFile};

/// Exit codes of the command-line contract.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    pub fn limit(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_LIMIT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn order_is_limit(e: &OrderError) -> bool {
    matches!(e, OrderError::LimitExceeded { .. } | OrderError::TooManyPoints(_))
}

fn covering_is_limit(e: &CoveringError) -> bool {
    match e {
        CoveringError::Order(o) => order_is_limit(o),
        CoveringError::LimitExceeded { .. } => true,
        CoveringError::NotACoverOfTop(_) => false,
    }
}

fn frame_is_limit(e: &FrameError) -> bool {
    matches!(e, FrameError::Order(o) if order_is_limit(o))
}

fn classify(limit: bool, message: String) -> CliError {
    if limit {
        CliError::limit(message)
    } else {
        CliError::invalid(message)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<OrderError> for CliError {
    fn from(e: OrderError) -> Self {
        classify(order_is_limit(&e), e.to_string())
    }
}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        classify(frame_is_limit(&e), e.to_string())
    }
}

impl From<CoveringError> for CliError {
    fn from(e: CoveringError) -> Self {
        classify(covering_is_limit(&e), e.to_string())
    }
}

impl From<ProductError> for CliError {
    fn from(e: ProductError) -> Self {
        let limit = match &e {
            ProductError::Order(o) => order_is_limit(o),
            ProductError::Frame(f) => frame_is_limit(f),
            ProductError::Covering(c) => covering_is_limit(c),
            ProductError::LimitExceeded { .. } => true,
            _ => false,
        };
        classify(limit, e.to_string())
    }
}

impl From<FormalError> for CliError {
    fn from(e: FormalError) -> Self {
        let limit = match &e {
            FormalError::Order(o) => order_is_limit(o),
            FormalError::LimitExceeded { .. } => true,
            _ => false,
        };
        classify(limit, e.to_string())
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Covering(c) => c.into(),
            other => CliError::invalid(other.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Structure {
    Space(SpaceDescription),
    Frame(Frame),
    Preorder(Preorder),
    Covrel(CoveringRelation),
    Monoid(UniformMonoid),
    Formal(FormalPresentation),
    Game(GameSpec),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Space(_) => Kind::Space,
            Structure::Frame(_) => Kind::Frame,
            Structure::Preorder(_) => Kind::Preorder,
            Structure::Covrel(_) => Kind::Covrel,
            Structure::Monoid(_) => Kind::Monoid,
            Structure::Formal(_) => Kind::Formal,
            Structure::Game(_) => Kind::Game,
        }
    }

    /// Number of points or elements, the quantity the scan guard bounds.
    pub fn base_size(&self) -> usize {
        match self {
            Structure::Space(s) => s.carrier().len(),
            Structure::Frame(f) => f.len(),
            Structure::Preorder(p) => p.len(),
            Structure::Covrel(r) => r.carrier().len(),
            Structure::Monoid(m) => m.carrier().len(),
            Structure::Formal(p) => p.base().len(),
            Structure::Game(g) => g.monoid.carrier().len(),
        }
    }
}

pub fn point_set(c: &SubsetCarrier, names: &[String]) -> Result<PointSet, CliError> {
    names
        .iter()
        .map(|n| {
            c.index_of(n)
                .ok_or_else(|| CliError::invalid(format!("unknown point {n}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(PointSet::from_indices)
}

pub fn point_cover(c: &SubsetCarrier, sets: &[Vec<String>]) -> Result<Cover<PointSet>, CliError> {
    sets.iter()
        .map(|s| point_set(c, s))
        .collect::<Result<Vec<_>, _>>()
        .map(Cover::raw)
}

pub fn element(p: &Preorder, name: &str) -> Result<ElemId, CliError> {
    p.index_of(name)
        .ok_or_else(|| CliError::invalid(format!("unknown element {name}")))
}

fn preorder(f: &StructureFile) -> Result<Preorder, CliError> {
    Ok(Preorder::from_relation(&f.names("elements"), &f.relation())?)
}

fn monoid(f: &StructureFile) -> Result<UniformMonoid, CliError> {
    let c = SubsetCarrier::new(f.names("points"))?;
    let basis = f
        .sets("basis")
        .iter()
        .map(|b| point_cover(&c, b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UniformMonoid::new(c, basis)?)
}

fn formal_base(f: &StructureFile) -> Result<FormalBase, CliError> {
    let names = f.names("elements");
    let unit = f.word("unit").unwrap_or_default();
    let index = |n: &str| {
        names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| CliError::invalid(format!("unknown element {n}")))
    };
    let u = index(unit)?;
    let n = names.len();
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for i in 0..n {
        table[u][i] = Some(i);
        table[i][u] = Some(i);
    }
    for (a, b, c) in f.products() {
        let (i, j, k) = (index(&a)?, index(&b)?, index(&c)?);
        for (x, y) in [(i, j), (j, i)] {
            match table[x][y] {
                Some(old) if old != k => {
                    return Err(CliError::invalid(format!(
                        "conflicting products for {a} * {b}: {} and {c}",
                        names[old]
                    )))
                }
                _ => table[x][y] = Some(k),
            }
        }
    }
    let mut full = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            full[i][j] = table[i][j].ok_or_else(|| {
                CliError::invalid(format!("missing product {} * {}", names[i], names[j]))
            })?;
        }
    }
    Ok(FormalBase::new(&names, &full, unit)?)
}

pub fn formal_judgment(b: &FormalBase, a: &str, u: &[String]) -> Result<Judgment, CliError> {
    let id = |n: &str| {
        b.index_of(n)
            .ok_or_else(|| CliError::invalid(format!("unknown element {n}")))
    };
    let members = u.iter().map(|n| id(n)).collect::<Result<Vec<_>, _>>()?;
    Ok(Judgment::new(id(a)?, members))
}

pub fn build(f: &StructureFile) -> Result<Structure, CliError> {
    Ok(match f.kind {
        Kind::Space => {
            let points = f.names("points");
            let opens = f.sets("opens").concat();
            let refs: Vec<&[String]> = opens.iter().map(|o| o.as_slice()).collect();
            let s = SpaceDescription::from_names(&points, &refs)?;
            match f.word("regular") {
                None => Structure::Space(s),
                Some("true") => Structure::Space(s.with_regular_flag(true)),
                Some("false") => Structure::Space(s.with_regular_flag(false)),
                Some(w) => return Err(CliError::invalid(format!("regular must be true or false, not {w}"))),
            }
        }
        Kind::Frame => Structure::Frame(Frame::from_order(preorder(f)?)?),
        Kind::Preorder => Structure::Preorder(preorder(f)?),
        Kind::Covrel => {
            let p = preorder(f)?;
            let pairs = f
                .covers("cover")
                .iter()
                .map(|(a, u)| Ok((element(&p, a)?, p.cover_of_names(u)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            Structure::Covrel(CoveringRelation::new(p, pairs)?)
        }
        Kind::Monoid => Structure::Monoid(monoid(f)?),
        Kind::Game => {
            let m = monoid(f)?;
            let c = m.carrier().clone();
            let target = point_cover(&c, &f.sets("target")[0])?;
            let g = match f.sets("start").first() {
                None => GameSpec::new(m, target)?,
                Some(s) if s.len() == 1 => GameSpec::with_start(m, target, point_set(&c, &s[0])?)?,
                Some(_) => return Err(CliError::invalid("start must be a single set")),
            };
            Structure::Game(g)
        }
        Kind::Formal => {
            let b = formal_base(f)?;
            let axioms = f
                .covers("axiom")
                .iter()
                .map(|(a, u)| formal_judgment(&b, a, u))
                .collect::<Result<Vec<_>, _>>()?;
            Structure::Formal(FormalPresentation::new(b, axioms)?)
        }
    })
}
