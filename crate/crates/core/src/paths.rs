//! Schröder paths: construction, enumeration, statistics and step weights.
//!
//! Paths store absolute lattice coordinates. A down step from height `h` is
//! labelled `b_h` and a level step at height `h` is labelled `c_h`, so paths
//! with a raised baseline draw coefficients at their true heights.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use crate::coeffs::CoefficientSeq;
use crate::error::{Error, Result};
use crate::ring::LaurentPoly;

/// Largest `k` for which [`enumerate_paths`] will materialize `S_k`.
pub const MAX_PATH_K: usize = 11;

pub type Point = (i64, i64);

/// Ordered `Up < Down < Level`; enumeration order follows this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
    Level,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::Up, Step::Down, Step::Level];

    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::Up => (1, 1),
            Step::Down => (1, -1),
            Step::Level => (2, 0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
            Step::Level => 'L',
        }
    }

    pub fn from_letter(c: char) -> Option<Step> {
        match c {
            'U' => Some(Step::Up),
            'D' => Some(Step::Down),
            'L' => Some(Step::Level),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PathStats {
    pub level: i64,
    pub area: i64,
    pub length: i64,
}

/// A lattice path of up, down and level steps that never drops below `baseline`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchroederPath {
    start: Point,
    steps: Vec<Step>,
    baseline: i64,
}

impl SchroederPath {
    /// Validates the height constraint.
    pub fn new(start: Point, steps: Vec<Step>, baseline: i64) -> Result<Self> {
        let p = SchroederPath { start, steps, baseline };
        if start.1 < baseline {
            return Err(Error::Malformed(format!(
                "start {start:?} lies below baseline {baseline}"
            )));
        }
        if let Some(pt) = p.vertices().find(|pt| pt.1 < baseline) {
            return Err(Error::Malformed(format!(
                "path {p} reaches {pt:?} below baseline {baseline}"
            )));
        }
        Ok(p)
    }

    /// A path from the origin with baseline zero.
    pub fn from_origin(steps: Vec<Step>) -> Result<Self> {
        Self::new((0, 0), steps, 0)
    }

    /// Parses `"UDL"`-style step strings.
    pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
        s.chars()
            .map(|c| Step::from_letter(c).ok_or_else(|| Error::Parse(format!("bad step {c:?}"))))
            .collect()
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn baseline(&self) -> i64 {
        self.baseline
    }

    pub fn end(&self) -> Point {
        self.vertices().last().unwrap_or(self.start)
    }

    /// All step endpoints, starting point first.
    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        let mut cur = self.start;
        std::iter::once(self.start).chain(self.steps.iter().map(move |s| {
            let (dx, dy) = s.delta();
            cur = (cur.0 + dx, cur.1 + dy);
            cur
        }))
    }

    /// `(starting point, step)` pairs.
    pub fn steps_with_origin(&self) -> impl Iterator<Item = (Point, Step)> + '_ {
        self.vertices().zip(self.steps.iter().copied())
    }

    /// Lattice points covered by the path, including the midpoint of every level step.
    pub fn occupied_points(&self) -> Vec<Point> {
        let mut out = vec![self.start];
        for ((x, y), s) in self.steps_with_origin() {
            let (dx, dy) = s.delta();
            if s == Step::Level {
                out.push((x + 1, y));
            }
            out.push((x + dx, y + dy));
        }
        out
    }

    pub fn stats(&self) -> PathStats {
        path_stats(self)
    }

    pub fn to_step_string(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }
}

impl fmt::Display for SchroederPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{}", self.start, self.to_step_string())
    }
}

#[derive(Serialize, Deserialize)]
struct PathRepr {
    start: [i64; 2],
    steps: String,
}

impl Serialize for SchroederPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PathRepr {
            start: [self.start.0, self.start.1],
            steps: self.to_step_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SchroederPath {
    /// The baseline is taken to be the starting height.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PathRepr::deserialize(deserializer)?;
        let steps = SchroederPath::parse_steps(&r.steps).map_err(D::Error::custom)?;
        SchroederPath::new((r.start[0], r.start[1]), steps, r.start[1]).map_err(D::Error::custom)
    }
}

/// `level`, `area`, `length` of a path.
///
/// `area = sum over down steps from height h of (2h - 1) + sum over level steps
/// at height h of 2h`, which equals the trapezoid area between the path and the
/// x-axis whenever the path starts and ends at the same height.
pub fn path_stats(p: &SchroederPath) -> PathStats {
    let (mut level, mut area, mut diag) = (0, 0, 0);
    for ((_, h), s) in p.steps_with_origin() {
        match s {
            Step::Up => diag += 1,
            Step::Down => {
                diag += 1;
                area += 2 * h - 1;
            }
            Step::Level => {
                level += 1;
                area += 2 * h;
            }
        }
    }
    PathStats {
        level,
        area,
        length: diag / 2 + level,
    }
}

/// Product of step labels: up `1`, down from `h` gives `b_h`, level at `h` gives `c_h`.
pub fn path_weight(p: &SchroederPath, cs: &CoefficientSeq) -> Result<LaurentPoly> {
    let mut w = LaurentPoly::one();
    for ((_, h), s) in p.steps_with_origin() {
        match s {
            Step::Up => {}
            Step::Down => w = &w * &cs.b(h)?,
            Step::Level => w = &w * &cs.c(h)?,
        }
    }
    Ok(w)
}

/// Depth-first enumeration of Schröder paths from `start` to `end` staying at or
/// above `baseline`, in `Up < Down < Level` lexicographic order.
///
/// `blocked` prunes any step whose covered points (endpoint, plus midpoint for
/// level steps) it rejects. `visit` receives every complete step sequence.
pub fn for_each_path<B, V>(start: Point, end: Point, baseline: i64, blocked: B, mut visit: V)
where
    B: Fn(Point) -> bool,
    V: FnMut(&[Step]),
{
    fn reachable(p: Point, end: Point, baseline: i64) -> bool {
        let rx = end.0 - p.0;
        p.1 >= baseline && rx >= (end.1 - p.1).abs() && (rx - (end.1 - p.1)).rem_euclid(2) == 0
    }

    fn go<B: Fn(Point) -> bool, V: FnMut(&[Step])>(
        cur: Point,
        end: Point,
        baseline: i64,
        blocked: &B,
        visit: &mut V,
        acc: &mut Vec<Step>,
    ) {
        if cur == end {
            visit(acc);
            return;
        }
        for s in Step::ALL {
            let (dx, dy) = s.delta();
            let next = (cur.0 + dx, cur.1 + dy);
            if !reachable(next, end, baseline) || blocked(next) {
                continue;
            }
            if s == Step::Level && blocked((cur.0 + 1, cur.1)) {
                continue;
            }
            acc.push(s);
            go(next, end, baseline, blocked, visit, acc);
            acc.pop();
        }
    }

    if !reachable(start, end, baseline) || blocked(start) {
        return;
    }
    let mut acc = Vec::new();
    go(start, end, baseline, &blocked, &mut visit, &mut acc);
}

/// All members of `S_k` (paths from `(0,0)` to `(2k,0)`), in canonical order.
pub fn enumerate_paths(k: usize) -> Result<Vec<SchroederPath>> {
    if k > MAX_PATH_K {
        return Err(Error::SizeLimit(format!(
            "S_{k} has too many paths to enumerate (limit k <= {MAX_PATH_K})"
        )));
    }
    let mut out = Vec::new();
    let end = (2 * k as i64, 0);
    for_each_path(
        (0, 0),
        end,
        0,
        |_| false,
        |steps| {
            out.push(SchroederPath {
                start: (0, 0),
                steps: steps.to_vec(),
                baseline: 0,
            })
        },
    );
    Ok(out)
}

/// `sum over P in S_k of w(P)`, accumulated column by column.
///
/// `W[x][h]` is the total weight of path prefixes from `(0,0)` to `(x,h)`; only
/// heights through which some member of `S_k` passes are visited, so exactly the
/// coefficients used by the enumeration are requested.
pub fn path_sum(k: usize, cs: &CoefficientSeq) -> Result<LaurentPoly> {
    let k = k as i64;
    let width = 2 * k;
    let cap = |x: i64| x.min(width - x);
    let mut cols: Vec<Vec<LaurentPoly>> = Vec::with_capacity(width as usize + 1);
    cols.push(vec![LaurentPoly::one()]);
    for x in 1..=width {
        let mut col = Vec::with_capacity(cap(x) as usize + 1);
        for h in 0..=cap(x) {
            if (x + h) % 2 != 0 {
                col.push(LaurentPoly::zero());
                continue;
            }
            let mut w = LaurentPoly::zero();
            let prev = &cols[x as usize - 1];
            if h >= 1 && h - 1 <= cap(x - 1) {
                w += &prev[h as usize - 1];
            }
            if h < cap(x - 1) {
                w += &(&prev[h as usize + 1] * &cs.b(h + 1)?);
            }
            if x >= 2 && h <= cap(x - 2) {
                w += &(&cols[x as usize - 2][h as usize] * &cs.c(h)?);
            }
            col.push(w);
        }
        cols.push(col);
    }
    Ok(cols[width as usize][0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tq;
    use Step::*;

    fn path(s: &str) -> SchroederPath {
        SchroederPath::from_origin(SchroederPath::parse_steps(s).unwrap()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_paths(0).unwrap(), vec![path("")]);
        assert_eq!(enumerate_paths(2).unwrap().len(), 6);
        assert_eq!(enumerate_paths(4).unwrap().len(), 90);
        assert!(matches!(enumerate_paths(MAX_PATH_K + 1), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn canonical_order_for_k2() {
        let got: Vec<String> = enumerate_paths(2)
            .unwrap()
            .iter()
            .map(SchroederPath::to_step_string)
            .collect();
        assert_eq!(got, ["UUDD", "UDUD", "UDL", "ULD", "LUD", "LL"]);
    }

    #[test]
    fn stats_examples() {
        let p = |s| path_stats(&path(s));
        assert_eq!(
            p("L"),
            PathStats {
                level: 1,
                area: 0,
                length: 1
            }
        );
        assert_eq!(
            p("UD"),
            PathStats {
                level: 0,
                area: 1,
                length: 1
            }
        );
        assert_eq!(
            p("ULD"),
            PathStats {
                level: 1,
                area: 3,
                length: 2
            }
        );
    }

    #[test]
    fn weight_examples() {
        let cs = CoefficientSeq::q_narayana();
        assert_eq!(path_weight(&path("L"), &cs).unwrap(), cs.c(0).unwrap());
        assert_eq!(path_weight(&path("UD"), &cs).unwrap(), cs.b(1).unwrap());
        assert_eq!(
            path_weight(&path("ULD"), &cs).unwrap(),
            &cs.b(1).unwrap() * &cs.c(1).unwrap()
        );
        assert_eq!(path_weight(&path("ULD"), &cs).unwrap(), tq(1, 3));
    }

    #[test]
    fn below_baseline_is_rejected() {
        assert!(SchroederPath::from_origin(vec![Down, Up]).is_err());
        let raised = SchroederPath::new((-1, 1), vec![Level], 1).unwrap();
        assert_eq!(raised.end(), (1, 1));
        assert!(SchroederPath::new((-1, 1), vec![Down, Up], 1).is_err());
    }

    #[test]
    fn weight_of_down_step_below_one_is_undefined() {
        let p = SchroederPath::new((0, 0), vec![Down], -1).unwrap();
        assert!(matches!(
            path_weight(&p, &CoefficientSeq::q_narayana()),
            Err(Error::UndefinedCoefficient { name: "b", index: 0 })
        ));
    }

    #[test]
    fn occupied_points_include_level_midpoints() {
        let p = path("UL");
        assert_eq!(p.occupied_points(), vec![(0, 0), (1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn json_format() {
        let p = SchroederPath::new((-1, 1), vec![Up, Level, Down], 1).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"start":[-1,1],"steps":"ULD"}"#);
        let back: SchroederPath = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<SchroederPath>(r#"{"start":[0,0],"steps":"DU"}"#).is_err());
        assert!(serde_json::from_str::<SchroederPath>(r#"{"start":[0,0],"steps":"X"}"#).is_err());
    }

    #[test]
    fn path_sum_matches_enumeration() {
        let cs = CoefficientSeq::q_narayana();
        for k in 0..=6 {
            let mut direct = LaurentPoly::zero();
            for p in enumerate_paths(k).unwrap() {
                direct += &path_weight(&p, &cs).unwrap();
            }
            assert_eq!(path_sum(k, &cs).unwrap(), direct, "k = {k}");
        }
    }

    #[test]
    fn path_sum_uses_only_reachable_coefficients() {
        let cs = CoefficientSeq::random_rational(3, 2);
        assert!(path_sum(2, &cs).is_ok());
        assert!(path_sum(3, &cs).is_err());
    }
}
