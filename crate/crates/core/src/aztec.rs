//! Aztec diamonds, domino tilings, the rank statistic and the bijection with
//! tuples of non-intersecting Schröder paths.
//!
//! Cells are unit squares named by their lower-left corner `(i, j)`. A region
//! with `n` paths and path width `m` maps the cell plane to path coordinates by
//! `X = x + m`, `Y = y + n - 1/2`, so the centre of every non-trivial domino is the
//! midpoint of exactly one path step.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nipaths::PathTuple;
use crate::paths::{SchroederPath, Step};
use crate::report::{CheckEntry, Report};
use crate::ring::{tq, LaurentPoly, Var};

pub type Cell = (i64, i64);

/// Largest number of tilings [`enumerate_tilings`] will produce.
pub const MAX_TILINGS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// `AD_n`.
    Aztec,
    /// `AD_{n+1}` without the two cells of its lowest row.
    AztecCut2,
}

/// A finite set of cells with the data needed to colour it and read paths off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    kind: RegionKind,
    n: i64,
    order: i64,
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

fn in_diamond(order: i64, (i, j): Cell) -> bool {
    i.abs().max((i + 1).abs()) + j.abs().max((j + 1).abs()) <= order + 1
}

impl Region {
    pub fn build(kind: RegionKind, n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::OutOfRange(format!("region order n = {n}")));
        }
        let order = match kind {
            RegionKind::Aztec => n,
            RegionKind::AztecCut2 => n + 1,
        };
        let mut cells: Vec<Cell> = (-order - 1..=order)
            .flat_map(|i| (-order - 1..=order).map(move |j| (i, j)))
            .filter(|&c| in_diamond(order, c))
            .collect();
        if kind == RegionKind::AztecCut2 {
            cells.retain(|&(_, j)| j > -order);
        }
        cells.sort_unstable();
        let index = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        Ok(Region {
            kind,
            n,
            order,
            cells,
            index,
        })
    }

    pub fn aztec(n: i64) -> Result<Self> {
        Self::build(RegionKind::Aztec, n)
    }

    pub fn kind(&self) -> RegionKind {
        self.kind
    }

    /// Number of paths in the corresponding tuples.
    pub fn n(&self) -> i64 {
        self.n
    }

    /// Order of the underlying diamond.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Width parameter `m` of the corresponding tuple set `S_(m,n)`.
    pub fn path_width(&self) -> i64 {
        match self.kind {
            RegionKind::Aztec => 1,
            RegionKind::AztecCut2 => 2,
        }
    }

    /// Cells in lexicographic `(i, j)` order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.index.contains_key(&c)
    }

    fn idx(&self, c: Cell) -> Option<usize> {
        self.index.get(&c).copied()
    }

    /// White iff `i + j + order` is even.
    pub fn is_white(&self, (i, j): Cell) -> bool {
        (i + j + self.order).rem_euclid(2) == 0
    }

    /// Cells whose upper-left corner lies on the upper-left edge `y - x = order + 1`.
    pub fn upper_left_border(&self) -> Vec<Cell> {
        self.cells
            .iter()
            .copied()
            .filter(|&(i, j)| j - i == self.order)
            .collect()
    }
}

pub fn build_region(kind: RegionKind, n: i64) -> Result<Region> {
    Region::build(kind, n)
}

/// Every cell with its colour, `true` for white.
pub fn checkerboard_color(region: &Region) -> Vec<(Cell, bool)> {
    region.cells.iter().map(|&c| (c, region.is_white(c))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// Two adjacent cells; `anchor` is the left cell (horizontal) or the lower cell (vertical).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Domino {
    pub anchor: Cell,
    pub orientation: Orientation,
    pub parity: Parity,
}

impl Domino {
    pub fn cells(&self) -> [Cell; 2] {
        let (i, j) = self.anchor;
        match self.orientation {
            Orientation::Horizontal => [(i, j), (i + 1, j)],
            Orientation::Vertical => [(i, j), (i, j + 1)],
        }
    }
}

// Per-cell partner direction.
const RIGHT: u8 = 0;
const LEFT: u8 = 1;
const UP: u8 = 2;
const DOWN: u8 = 3;

/// A domino tiling of a region, stored as the partner direction of every cell.
#[derive(Clone)]
pub struct Tiling {
    region: Arc<Region>,
    code: Vec<u8>,
}

impl PartialEq for Tiling {
    fn eq(&self, other: &Self) -> bool {
        self.region.kind == other.region.kind && self.region.n == other.region.n && self.code == other.code
    }
}

impl Eq for Tiling {}

impl std::hash::Hash for Tiling {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.region.kind.hash(h);
        self.region.n.hash(h);
        self.code.hash(h);
    }
}

impl fmt::Debug for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.code.iter().map(|&c| ['>', '<', '^', 'v'][c as usize]).collect();
        write!(f, "Tiling({:?} {}: {s})", self.region.kind, self.region.n)
    }
}

impl Tiling {
    /// Validates that the dominoes lie in the region and cover it exactly once.
    pub fn from_dominoes(region: Arc<Region>, dominoes: &[(Cell, Orientation)]) -> Result<Self> {
        let mut code = vec![u8::MAX; region.len()];
        for &((i, j), o) in dominoes {
            let (other, here, there) = match o {
                Orientation::Horizontal => ((i + 1, j), RIGHT, LEFT),
                Orientation::Vertical => ((i, j + 1), UP, DOWN),
            };
            let (a, b) = match (region.idx((i, j)), region.idx(other)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::Malformed(format!("domino at {:?} leaves the region", (i, j)))),
            };
            if code[a] != u8::MAX || code[b] != u8::MAX {
                return Err(Error::Malformed(format!("dominoes overlap at {:?}", (i, j))));
            }
            code[a] = here;
            code[b] = there;
        }
        if let Some(k) = code.iter().position(|&c| c == u8::MAX) {
            return Err(Error::Malformed(format!("cell {:?} is uncovered", region.cells[k])));
        }
        Ok(Tiling { region, code })
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    /// Dominoes in order of their anchors.
    pub fn dominoes(&self) -> Vec<Domino> {
        let r = &self.region;
        r.cells
            .iter()
            .zip(&self.code)
            .filter_map(|(&c, &d)| {
                let orientation = match d {
                    RIGHT => Orientation::Horizontal,
                    UP => Orientation::Vertical,
                    _ => return None,
                };
                let key_cell = match orientation {
                    Orientation::Horizontal => c,
                    Orientation::Vertical => (c.0, c.1 + 1),
                };
                let parity = if r.is_white(key_cell) {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                Some(Domino {
                    anchor: c,
                    orientation,
                    parity,
                })
            })
            .collect()
    }

    pub fn vertical_count(&self) -> usize {
        self.code.iter().filter(|&&c| c == UP).count()
    }

    fn block_move(&self, (i, j): Cell) -> Option<Tiling> {
        let r = &self.region;
        let ll = r.idx((i, j))?;
        let lr = r.idx((i + 1, j))?;
        let ul = r.idx((i, j + 1))?;
        let ur = r.idx((i + 1, j + 1))?;
        let c = &self.code;
        let mut code = c.clone();
        if c[ll] == RIGHT && c[ul] == RIGHT {
            code[ll] = UP;
            code[ul] = DOWN;
            code[lr] = UP;
            code[ur] = DOWN;
        } else if c[ll] == UP && c[lr] == UP {
            code[ll] = RIGHT;
            code[lr] = LEFT;
            code[ul] = RIGHT;
            code[ur] = LEFT;
        } else {
            return None;
        }
        Some(Tiling {
            region: self.region.clone(),
            code,
        })
    }

    /// Tilings one elementary move away: a 2x2 block covered by two parallel dominoes, rotated.
    pub fn neighbours(&self) -> Vec<Tiling> {
        self.region.cells.iter().filter_map(|&c| self.block_move(c)).collect()
    }
}

impl Serialize for Tiling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Tiling", 3)?;
        st.serialize_field("kind", &self.region.kind)?;
        st.serialize_field("n", &self.region.n)?;
        st.serialize_field("dominoes", &self.dominoes())?;
        st.end()
    }
}

/// All tilings, filling the least uncovered cell with a right or an upward domino.
pub fn enumerate_tilings(region: &Arc<Region>) -> Result<Vec<Tiling>> {
    if !region.len().is_multiple_of(2) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut code = vec![u8::MAX; region.len()];
    fill(region, 0, &mut code, &mut out)?;
    Ok(out)
}

fn fill(region: &Arc<Region>, from: usize, code: &mut Vec<u8>, out: &mut Vec<Tiling>) -> Result<()> {
    let Some(k) = (from..code.len()).find(|&k| code[k] == u8::MAX) else {
        if out.len() >= MAX_TILINGS {
            return Err(Error::SizeLimit(format!("more than {MAX_TILINGS} tilings")));
        }
        out.push(Tiling {
            region: region.clone(),
            code: code.clone(),
        });
        return Ok(());
    };
    let (i, j) = region.cells[k];
    for (other, here, there) in [((i + 1, j), RIGHT, LEFT), ((i, j + 1), UP, DOWN)] {
        if let Some(b) = region.idx(other) {
            if code[b] == u8::MAX {
                code[k] = here;
                code[b] = there;
                fill(region, k + 1, code, out)?;
                code[k] = u8::MAX;
                code[b] = u8::MAX;
            }
        }
    }
    Ok(())
}

/// Half the number of vertical dominoes; errors if that number is odd.
pub fn v_stat(t: &Tiling) -> Result<i64> {
    let v = t.vertical_count();
    if !v.is_multiple_of(2) {
        return Err(Error::Malformed(format!("{v} vertical dominoes")));
    }
    Ok(v as i64 / 2)
}

/// Reads one path step off every domino except the even horizontal ones.
pub fn tiling_to_paths(t: &Tiling) -> Result<PathTuple> {
    let r = t.region();
    let (m, n) = (r.path_width(), r.n());
    let mut steps: HashMap<(i64, i64), Step> = HashMap::new();
    for d in t.dominoes() {
        let (i, j) = d.anchor;
        let (start, step) = match (d.orientation, d.parity) {
            (Orientation::Horizontal, Parity::Even) => continue,
            (Orientation::Horizontal, Parity::Odd) => ((i + m, j + n), Step::Level),
            (Orientation::Vertical, Parity::Even) => ((i + m, j + n), Step::Up),
            (Orientation::Vertical, Parity::Odd) => ((i + m, j + n + 1), Step::Down),
        };
        if steps.insert(start, step).is_some() {
            return Err(Error::Malformed(format!("two steps start at {start:?}")));
        }
    }
    let mut paths = Vec::with_capacity(n as usize);
    for k in 0..n {
        let (mut x, mut y) = (-k, k);
        let mut seq = Vec::new();
        while x < 2 * m + k {
            let s = steps
                .remove(&(x, y))
                .ok_or_else(|| Error::Malformed(format!("path {k} breaks off at {:?}", (x, y))))?;
            let (dx, dy) = s.delta();
            x += dx;
            y += dy;
            seq.push(s);
        }
        paths.push(SchroederPath::new((-k, k), seq, k)?);
    }
    if !steps.is_empty() {
        return Err(Error::Malformed(format!("{} steps belong to no path", steps.len())));
    }
    PathTuple::new(m, paths)
}

/// The tiling whose paths are `p`: one domino per step, the rest even horizontal.
pub fn paths_to_tiling(p: &PathTuple, region: &Arc<Region>) -> Result<Tiling> {
    let (m, n) = (region.path_width(), region.n());
    if p.m() != m || p.paths().len() as i64 != n {
        return Err(Error::Malformed(format!(
            "tuple in S_({},{}) does not fit a region for S_({m},{n})",
            p.m(),
            p.paths().len()
        )));
    }
    let mut placed: Vec<(Cell, Orientation, Parity)> = Vec::new();
    for path in p.paths() {
        for ((x, y), s) in path.steps_with_origin() {
            placed.push(match s {
                Step::Level => ((x - m, y - n), Orientation::Horizontal, Parity::Odd),
                Step::Up => ((x - m, y - n), Orientation::Vertical, Parity::Even),
                Step::Down => ((x - m, y - n - 1), Orientation::Vertical, Parity::Odd),
            });
        }
    }
    let mut covered: HashSet<Cell> = HashSet::new();
    for &(a, o, _) in &placed {
        let d = Domino {
            anchor: a,
            orientation: o,
            parity: Parity::Even,
        };
        for c in d.cells() {
            if !region.contains(c) || !covered.insert(c) {
                return Err(Error::Malformed(format!("step domino at {a:?} does not fit")));
            }
        }
    }
    for &(i, j) in region.cells() {
        if covered.contains(&(i, j)) {
            continue;
        }
        if !region.contains((i + 1, j)) || covered.contains(&(i + 1, j)) {
            return Err(Error::Malformed(format!("cell {:?} cannot be covered", (i, j))));
        }
        covered.insert((i, j));
        covered.insert((i + 1, j));
        placed.push(((i, j), Orientation::Horizontal, Parity::Even));
    }
    let specs: Vec<(Cell, Orientation)> = placed.iter().map(|&(a, o, _)| (a, o)).collect();
    let tiling = Tiling::from_dominoes(region.clone(), &specs)?;
    let actual: HashMap<Cell, Parity> = tiling.dominoes().into_iter().map(|d| (d.anchor, d.parity)).collect();
    for (a, _, want) in placed {
        if actual[&a] != want {
            return Err(Error::Malformed(format!("domino at {a:?} has the wrong colour")));
        }
    }
    Ok(tiling)
}

/// Breadth-first distances from the tilings without vertical dominoes, aligned
/// with `tilings`. Errors unless every tiling is reached.
pub fn rank_bfs(tilings: &[Tiling]) -> Result<Vec<usize>> {
    let pos: HashMap<&Tiling, usize> = tilings.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut rank = vec![usize::MAX; tilings.len()];
    let mut queue = VecDeque::new();
    for (k, t) in tilings.iter().enumerate() {
        if t.vertical_count() == 0 {
            rank[k] = 0;
            queue.push_back(k);
        }
    }
    while let Some(k) = queue.pop_front() {
        for nb in tilings[k].neighbours() {
            let Some(&j) = pos.get(&nb) else {
                return Err(Error::Malformed("a move leaves the enumerated tiling set".into()));
            };
            if rank[j] == usize::MAX {
                rank[j] = rank[k] + 1;
                queue.push_back(j);
            }
        }
    }
    let reached = rank.iter().filter(|&&r| r != usize::MAX).count();
    if reached != tilings.len() {
        return Err(Error::Disconnected {
            reached,
            total: tilings.len(),
        });
    }
    Ok(rank)
}

/// `sum over tilings of t^v q^r`.
pub fn tiling_poly(region: &Arc<Region>) -> Result<LaurentPoly> {
    let tilings = enumerate_tilings(region)?;
    let ranks = rank_bfs(&tilings)?;
    tilings
        .iter()
        .zip(ranks)
        .map(|(t, r)| Ok(tq(v_stat(t)?, r as i64)))
        .sum()
}

/// `sum over tilings of AD_n of t^v(T) q^r(T)`.
pub fn ad_poly(n: i64) -> Result<LaurentPoly> {
    tiling_poly(&Arc::new(Region::aztec(n)?))
}

/// `prod_{k=0}^{n-1} (1 + t q^(2k+1))^(n-k)`.
pub fn adt_formula(n: i64) -> LaurentPoly {
    (0..n)
        .map(|k| (&LaurentPoly::one() + &tq(1, 2 * k + 1)).pow((n - k) as u32))
        .product()
}

/// `adt_formula(n) * sum_{l=0}^{n} t^l q^(l^2) [n+1 choose l]_(q^2)`.
pub fn variant_formula(n: i64) -> Result<LaurentPoly> {
    let mut sum = LaurentPoly::zero();
    for l in 0..=n {
        let qb = crate::dets::qbinom(n + 1, l)?.subst_power(Var::Q, 2);
        sum += &(&tq(l, l * l) * &qb);
    }
    Ok(&adt_formula(n) * &sum)
}

/// Per tiling of `AD_n`: `v = n(n+1)/2 - level` and `r = area - 2n(n+1)(n-1)/3`;
/// plus the total path length and the area of the all-level tuple.
pub fn lemma71_check(n: i64) -> Result<Report> {
    let region = Arc::new(Region::aztec(n)?);
    let tilings = enumerate_tilings(&region)?;
    let ranks = rank_bfs(&tilings)?;
    let c = |v: i64| LaurentPoly::from_int(v);
    let half = n * (n + 1) / 2;
    let base_area = 2 * n * (n + 1) * (n - 1) / 3;
    let mut report = Report::new();
    for (k, (t, r)) in tilings.iter().zip(ranks).enumerate() {
        let k = k as i64;
        let p = tiling_to_paths(t)?;
        report.push(CheckEntry::equality(
            "vertical_from_level",
            n,
            k,
            c(v_stat(t)?),
            c(half - p.level()),
        ));
        report.push(CheckEntry::equality(
            "rank_from_area",
            n,
            k,
            c(r as i64),
            c(p.area() - base_area),
        ));
        let length: i64 = p.paths().iter().map(|q| q.stats().length).sum();
        report.push(CheckEntry::equality("total_length", n, k, c(length), c(half)));
        if t.vertical_count() == 0 {
            report.push(CheckEntry::equality("base_area", n, k, c(p.area()), c(base_area)));
        }
    }
    Ok(report)
}

/// Round trip tiling -> paths -> tiling on every tiling of the region, and the
/// count against the tuple enumeration.
pub fn bijection_check(region: &Arc<Region>) -> Result<Report> {
    let tilings = enumerate_tilings(region)?;
    let tuples = crate::nipaths::enumerate_tuples(region.path_width(), region.n())?;
    let mut report = Report::new();
    let mut images = HashSet::new();
    for (k, t) in tilings.iter().enumerate() {
        let p = tiling_to_paths(t)?;
        let back = paths_to_tiling(&p, region)?;
        report.push(CheckEntry {
            check: "bijection_round_trip".into(),
            n: region.n(),
            k: k as i64,
            pass: &back == t,
            lhs: LaurentPoly::from_int(k as i64),
            rhs: LaurentPoly::from_int(tilings.iter().position(|x| x == &back).map_or(-1, |x| x as i64)),
        });
        images.insert(p);
    }
    report.push(CheckEntry::equality(
        "bijection_count",
        region.n(),
        -1,
        LaurentPoly::from_int(images.len() as i64),
        LaurentPoly::from_int(tuples.len() as i64),
    ));
    for (k, p) in tuples.iter().enumerate() {
        let back = tiling_to_paths(&paths_to_tiling(p, region)?)?;
        report.push(CheckEntry {
            check: "bijection_inverse".into(),
            n: region.n(),
            k: k as i64,
            pass: &back == p,
            lhs: LaurentPoly::from_int(k as i64),
            rhs: LaurentPoly::from_int(k as i64),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_sizes() {
        for n in 0..=6 {
            assert_eq!(Region::aztec(n).unwrap().len() as i64, 2 * n * (n + 1));
        }
        assert_eq!(Region::build(RegionKind::AztecCut2, 1).unwrap().len(), 10);
    }

    #[test]
    fn colouring_is_a_checkerboard() {
        for n in 1..=4 {
            let r = Region::aztec(n).unwrap();
            for &(i, j) in r.cells() {
                for nb in [(i + 1, j), (i, j + 1)] {
                    if r.contains(nb) {
                        assert_ne!(r.is_white((i, j)), r.is_white(nb));
                    }
                }
            }
            let border = r.upper_left_border();
            assert_eq!(border.len() as i64, n);
            assert!(border.iter().all(|&c| r.is_white(c)));
        }
    }

    #[test]
    fn ad1_tilings() {
        let r = Arc::new(Region::aztec(1).unwrap());
        let ts = enumerate_tilings(&r).unwrap();
        assert_eq!(ts.len(), 2);
        let steps: Vec<String> = ts
            .iter()
            .map(|t| tiling_to_paths(t).unwrap().paths()[0].to_step_string())
            .collect();
        assert!(steps.contains(&"L".to_string()) && steps.contains(&"UD".to_string()));
        assert_eq!(rank_bfs(&ts).unwrap().iter().max(), Some(&1));
    }

    #[test]
    fn empty_region() {
        let r = Arc::new(Region::aztec(0).unwrap());
        let ts = enumerate_tilings(&r).unwrap();
        assert_eq!(ts.len(), 1);
        let p = tiling_to_paths(&ts[0]).unwrap();
        assert!(p.paths().is_empty());
        assert_eq!(paths_to_tiling(&p, &r).unwrap(), ts[0]);
        assert_eq!(ad_poly(0).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn overlapping_dominoes_rejected() {
        let r = Arc::new(Region::aztec(1).unwrap());
        let bad = [((-1, -1), Orientation::Horizontal), ((-1, -1), Orientation::Vertical)];
        assert!(Tiling::from_dominoes(r, &bad).is_err());
    }
}
