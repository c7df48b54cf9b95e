//! Legendrian fronts as words in cusps and crossings, with the classical
//! invariants, stabilization, the satellite formula and τ bounds.
//!
//! A word is read left to right over a running stack of strands indexed
//! from the bottom, starting at 1. `L i` opens a left cusp whose two new
//! strands sit at positions `i, i+1`; `R i` closes strands `i, i+1` in a
//! right cusp; `X i` crosses strands `i, i+1`. At a crossing the strand
//! moving down is in front.
//!
//! Operator fronts live in `J¹(S¹)`: they start and end with the same number
//! of strands, and strand `j` leaving on the right re-enters as strand `j`
//! on the left.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LegendrianError {
    #[error("malformed token '{token}' at line {line}, column {column}")]
    Parse { token: String, line: usize, column: usize },
    #[error("event {position} ({event}) needs strands that are not present")]
    BadIndex { position: usize, event: String },
    #[error("open strands at end")]
    OpenStrands,
    #[error("not a knot")]
    NotAKnot,
    #[error("operator fronts have no absolute invariants; use satellite")]
    OperatorFront,
    #[error("closed front given where an operator front is required")]
    ClosedFront,
    #[error("stabilize companion to tb = 0 first")]
    CompanionTb,
    #[error("inconsistent certificate inputs")]
    Inconsistent,
    #[error("builtin front failed its self-check: expected tb = {tb}, rot = {rot}")]
    BuiltinCheck { tb: i64, rot: i64 },
    #[error("no builtin front named '{0}'")]
    UnknownBuiltin(String),
    #[error("parameter out of range")]
    OutOfRange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    LeftCusp(usize),
    RightCusp(usize),
    Crossing(usize),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::LeftCusp(i) => write!(f, "L{}", i),
            Event::RightCusp(i) => write!(f, "R{}", i),
            Event::Crossing(i) => write!(f, "X{}", i),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Cusp(usize),
    Boundary(usize),
}

#[derive(Clone, Debug)]
struct Segment {
    left: End,
    right: End,
}

#[derive(Clone, Debug)]
struct Cusp {
    left: bool,
    lower: usize,
    upper: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct CrossingData {
    /// Strand entering from below (moves up, passes behind).
    pub under: usize,
    /// Strand entering from above (moves down, passes in front).
    pub over: usize,
}

/// The strand graph of a front.
#[derive(Clone, Debug)]
pub(crate) struct Diagram {
    segments: Vec<Segment>,
    cusps: Vec<Cusp>,
    pub crossings: Vec<CrossingData>,
    /// Segment order along the knot with direction (+1 rightward).
    pub traversal: Vec<(usize, i8)>,
}

/// A validated front word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontWord {
    events: Vec<Event>,
    endpoints: usize,
}

/// Thurston–Bennequin and rotation numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LegInvariants {
    pub tb: i64,
    pub rot: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauBounds {
    pub lower: i64,
    pub upper: i64,
    pub exact: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabSign {
    Positive,
    Negative,
}

fn parse_tokens(text: &str) -> Result<Vec<Event>, LegendrianError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let mut col = 0;
        for piece in body.split_inclusive(char::is_whitespace) {
            let tok = piece.trim();
            let start = col + piece.find(|c: char| !c.is_whitespace()).unwrap_or(0);
            col += piece.len();
            if tok.is_empty() {
                continue;
            }
            let err = || LegendrianError::Parse { token: tok.to_string(), line: ln + 1, column: start + 1 };
            let (kind, rest) = tok.split_at(tok.chars().next().map(|c| c.len_utf8()).unwrap_or(0));
            let idx: usize = rest.parse().map_err(|_| err())?;
            if idx == 0 {
                return Err(err());
            }
            out.push(match kind {
                "L" => Event::LeftCusp(idx),
                "R" => Event::RightCusp(idx),
                "X" => Event::Crossing(idx),
                _ => return Err(err()),
            });
        }
    }
    Ok(out)
}

/// Parses a closed front.
pub fn parse_front(text: &str) -> Result<FrontWord, LegendrianError> {
    FrontWord::new(parse_tokens(text)?, 0)
}

/// Parses an operator front with the given number of endpoints on each side.
pub fn parse_operator_front(text: &str, endpoints: usize) -> Result<FrontWord, LegendrianError> {
    FrontWord::new(parse_tokens(text)?, endpoints)
}

impl FrontWord {
    pub fn new(events: Vec<Event>, endpoints: usize) -> Result<Self, LegendrianError> {
        let f = FrontWord { events, endpoints };
        f.diagram()?;
        Ok(f)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn endpoints(&self) -> usize {
        self.endpoints
    }

    pub fn is_closed(&self) -> bool {
        self.endpoints == 0
    }

    /// Number of strands just before each event, and at the end.
    fn strand_counts(&self) -> Vec<usize> {
        let mut n = self.endpoints;
        let mut out = vec![n];
        for e in &self.events {
            match e {
                Event::LeftCusp(_) => n += 2,
                Event::RightCusp(_) => n -= 2,
                Event::Crossing(_) => {}
            }
            out.push(n);
        }
        out
    }

    pub(crate) fn diagram(&self) -> Result<Diagram, LegendrianError> {
        let mut segments: Vec<Segment> = Vec::new();
        let mut cusps: Vec<Cusp> = Vec::new();
        let mut crossings: Vec<CrossingData> = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        for j in 0..self.endpoints {
            segments.push(Segment { left: End::Boundary(j), right: End::Boundary(usize::MAX) });
            cur.push(j);
        }
        for (pos, e) in self.events.iter().enumerate() {
            let n = cur.len();
            let bad = || LegendrianError::BadIndex { position: pos + 1, event: e.to_string() };
            match *e {
                Event::LeftCusp(i) => {
                    if i > n + 1 {
                        return Err(bad());
                    }
                    let c = cusps.len();
                    let a = segments.len();
                    segments.push(Segment { left: End::Cusp(c), right: End::Boundary(usize::MAX) });
                    segments.push(Segment { left: End::Cusp(c), right: End::Boundary(usize::MAX) });
                    cusps.push(Cusp { left: true, lower: a, upper: a + 1 });
                    cur.splice(i - 1..i - 1, [a, a + 1]);
                }
                Event::RightCusp(i) => {
                    if i + 1 > n {
                        return Err(bad());
                    }
                    let c = cusps.len();
                    let (a, b) = (cur[i - 1], cur[i]);
                    segments[a].right = End::Cusp(c);
                    segments[b].right = End::Cusp(c);
                    cusps.push(Cusp { left: false, lower: a, upper: b });
                    cur.drain(i - 1..i + 1);
                }
                Event::Crossing(i) => {
                    if i + 1 > n {
                        return Err(bad());
                    }
                    let (a, b) = (cur[i - 1], cur[i]);
                    crossings.push(CrossingData { under: a, over: b });
                    cur.swap(i - 1, i);
                }
            }
        }
        if cur.len() != self.endpoints {
            return Err(LegendrianError::OpenStrands);
        }
        for (j, s) in cur.iter().enumerate() {
            segments[*s].right = End::Boundary(j);
        }
        let traversal = trace(&segments, &cusps)?;
        Ok(Diagram { segments, cusps, crossings, traversal })
    }

    /// Direction (+1 rightward) of each segment along the chosen orientation.
    fn directions(d: &Diagram) -> Vec<i8> {
        let mut dir = vec![0i8; d.segments.len()];
        for (s, v) in &d.traversal {
            dir[*s] = *v;
        }
        dir
    }

    /// `(writhe, down cusps, up cusps)`.
    fn counts(&self) -> Result<(i64, i64, i64), LegendrianError> {
        let d = self.diagram()?;
        let dir = Self::directions(&d);
        let writhe: i64 = d.crossings.iter().map(|c| if dir[c.under] == dir[c.over] { 1 } else { -1 }).sum();
        let (mut down, mut up) = (0, 0);
        for c in &d.cusps {
            // Left cusp: leaving along the lower branch to the right means
            // arriving along the upper branch, so the knot moves down.
            let moving_down = if c.left { dir[c.lower] == 1 } else { dir[c.lower] != 1 };
            if moving_down {
                down += 1;
            } else {
                up += 1;
            }
        }
        Ok((writhe, down, up))
    }

    fn invariants_unchecked(&self) -> Result<LegInvariants, LegendrianError> {
        let (w, down, up) = self.counts()?;
        Ok(LegInvariants { tb: w - (down + up) / 2, rot: (down - up) / 2 })
    }

    /// Invariants of an operator front computed from the same formulas on
    /// its periodic closure.
    pub fn operator_invariants(&self) -> Result<LegInvariants, LegendrianError> {
        if self.is_closed() {
            return Err(LegendrianError::ClosedFront);
        }
        self.invariants_unchecked()
    }

    /// Direction of the strand at `position` (1-based) just before event
    /// index `at`: +1 rightward.
    fn strand_direction(&self, at: usize, position: usize) -> Result<i8, LegendrianError> {
        let d = self.diagram()?;
        let dir = Self::directions(&d);
        // Replay to find the segment at that slot.
        let mut cur: Vec<usize> = (0..self.endpoints).collect();
        let mut next_seg = self.endpoints;
        for e in &self.events[..at] {
            match *e {
                Event::LeftCusp(i) => {
                    cur.splice(i - 1..i - 1, [next_seg, next_seg + 1]);
                    next_seg += 2;
                }
                Event::RightCusp(i) => {
                    cur.drain(i - 1..i + 1);
                }
                Event::Crossing(i) => cur.swap(i - 1, i),
            }
        }
        let seg = *cur.get(position - 1).ok_or(LegendrianError::OutOfRange)?;
        Ok(dir[seg])
    }

    /// Inserts a zig-zag on strand `position` just before event index `at`.
    /// A positive stabilization raises rot by one, a negative one lowers it;
    /// both lower tb by one.
    pub fn stabilize_at(&self, sign: StabSign, at: usize, position: usize) -> Result<FrontWord, LegendrianError> {
        if at > self.events.len() || position == 0 || position > self.strand_counts()[at] {
            return Err(LegendrianError::OutOfRange);
        }
        let rightward = self.strand_direction(at, position)? == 1;
        // A zig-zag stepping down gives two down cusps on a rightward strand.
        let step_down = rightward == (sign == StabSign::Positive);
        let zig = if step_down {
            [Event::LeftCusp(position), Event::RightCusp(position + 1)]
        } else {
            [Event::LeftCusp(position + 1), Event::RightCusp(position)]
        };
        let mut events = self.events.clone();
        events.splice(at..at, zig);
        FrontWord::new(events, self.endpoints)
    }

    /// Stabilizes on the lowest strand after the first event.
    pub fn stabilize(&self, sign: StabSign) -> Result<FrontWord, LegendrianError> {
        let at = if self.events.is_empty() { 0 } else { 1 };
        if self.strand_counts()[at] == 0 {
            return Err(LegendrianError::OutOfRange);
        }
        self.stabilize_at(sign, at, 1)
    }

    /// Swaps events `pos` and `pos + 1` when they act on separate strands,
    /// re-indexing as needed. Returns `None` if they interact.
    pub fn commute(&self, pos: usize) -> Option<FrontWord> {
        if pos + 1 >= self.events.len() {
            return None;
        }
        let n0 = self.strand_counts()[pos];
        let (e1, e2) = (self.events[pos], self.events[pos + 1]);
        // Strands carry labels; cusps create labels named after the event.
        let reference = label_run(n0, &[(e1, 1), (e2, 2)])?;
        let max_idx = n0 + 3;
        for i2 in 1..=max_idx {
            for i1 in 1..=max_idx {
                let f2 = with_index(e2, i2);
                let f1 = with_index(e1, i1);
                if let Some(run) = label_run(n0, &[(f2, 2), (f1, 1)]) {
                    if run.end == reference.end && run.actions_sorted() == reference.actions_sorted() {
                        let mut events = self.events.clone();
                        events[pos] = f2;
                        events[pos + 1] = f1;
                        let w = FrontWord { events, endpoints: self.endpoints };
                        if (f2, f1) == (e1, e2) {
                            return None;
                        }
                        return Some(w);
                    }
                }
            }
        }
        None
    }
}

fn with_index(e: Event, i: usize) -> Event {
    match e {
        Event::LeftCusp(_) => Event::LeftCusp(i),
        Event::RightCusp(_) => Event::RightCusp(i),
        Event::Crossing(_) => Event::Crossing(i),
    }
}

#[derive(PartialEq, Eq)]
struct LabelRun {
    end: Vec<(u8, usize)>,
    actions: Vec<(u8, (u8, usize), (u8, usize))>,
}

impl LabelRun {
    fn actions_sorted(&self) -> Vec<(u8, (u8, usize), (u8, usize))> {
        let mut a = self.actions.clone();
        a.sort();
        a
    }
}

/// Applies events to labelled strands; `(0, j)` labels an initial strand,
/// `(tag, 0|1)` the strands born at a cusp event with that tag.
fn label_run(n0: usize, events: &[(Event, u8)]) -> Option<LabelRun> {
    let mut cur: Vec<(u8, usize)> = (0..n0).map(|j| (0, j)).collect();
    let mut actions = Vec::new();
    for (e, tag) in events {
        let n = cur.len();
        match *e {
            Event::LeftCusp(i) => {
                if i > n + 1 {
                    return None;
                }
                cur.splice(i - 1..i - 1, [(*tag, 0), (*tag, 1)]);
            }
            Event::RightCusp(i) => {
                if i + 1 > n {
                    return None;
                }
                actions.push((*tag, cur[i - 1], cur[i]));
                cur.drain(i - 1..i + 1);
            }
            Event::Crossing(i) => {
                if i + 1 > n {
                    return None;
                }
                actions.push((*tag, cur[i - 1], cur[i]));
                cur.swap(i - 1, i);
            }
        }
    }
    Some(LabelRun { end: cur, actions })
}

/// Follows the knot from the lower branch of the first left cusp (or the
/// first boundary strand), moving right.
fn trace(segments: &[Segment], cusps: &[Cusp]) -> Result<Vec<(usize, i8)>, LegendrianError> {
    if segments.is_empty() {
        return Err(LegendrianError::NotAKnot);
    }
    let start = cusps.iter().find(|c| c.left).map(|c| c.lower).unwrap_or(0);
    let mut left_of_boundary = vec![usize::MAX; segments.len()];
    for (s, seg) in segments.iter().enumerate() {
        if let End::Boundary(j) = seg.left {
            left_of_boundary[j] = s;
        }
    }
    let mut right_of_boundary = vec![usize::MAX; segments.len()];
    for (s, seg) in segments.iter().enumerate() {
        if let End::Boundary(j) = seg.right {
            right_of_boundary[j] = s;
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; segments.len()];
    let (mut s, mut d) = (start, 1i8);
    loop {
        if seen[s] {
            break;
        }
        seen[s] = true;
        out.push((s, d));
        let end = if d == 1 { segments[s].right } else { segments[s].left };
        match end {
            End::Cusp(c) => {
                let cu = &cusps[c];
                s = if cu.lower == s { cu.upper } else { cu.lower };
                d = -d;
            }
            End::Boundary(j) => {
                s = if d == 1 { left_of_boundary[j] } else { right_of_boundary[j] };
            }
        }
    }
    if out.len() != segments.len() {
        return Err(LegendrianError::NotAKnot);
    }
    Ok(out)
}

/// tb and rot of a closed front.
pub fn classical_invariants(f: &FrontWord) -> Result<LegInvariants, LegendrianError> {
    if !f.is_closed() {
        return Err(LegendrianError::OperatorFront);
    }
    f.invariants_unchecked()
}

impl LegInvariants {
    pub fn new(tb: i64, rot: i64) -> Self {
        LegInvariants { tb, rot }
    }

    pub fn stabilize(&self, sign: StabSign) -> Self {
        let step = if sign == StabSign::Positive { 1 } else { -1 };
        LegInvariants { tb: self.tb - 1, rot: self.rot + step }
    }

    /// Stabilizes positively until tb = 0; `None` if tb is already negative.
    pub fn stabilize_to_zero(&self) -> Option<Self> {
        if self.tb < 0 {
            return None;
        }
        let mut x = *self;
        while x.tb > 0 {
            x = x.stabilize(StabSign::Positive);
        }
        Some(x)
    }
}

impl fmt::Display for LegInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tb = {}, rot = {}", self.tb, self.rot)
    }
}

/// Invariants of the Legendrian satellite of a companion by an operator
/// front; the companion must have tb = 0 so that the result represents the
/// topological satellite.
pub fn legendrian_satellite(op: &LegInvariants, companion: &LegInvariants) -> Result<LegInvariants, LegendrianError> {
    if companion.tb != 0 {
        return Err(LegendrianError::CompanionTb);
    }
    Ok(*op)
}

/// `⌈(tb + |rot| + 1)/2⌉ ≤ τ ≤ g`.
pub fn tau_bounds(inv: &LegInvariants, genus_upper: i64) -> Result<TauBounds, LegendrianError> {
    let s = inv.tb + inv.rot.abs() + 1;
    let lower = s.div_euclid(2) + i64::from(s.rem_euclid(2) != 0);
    if lower > genus_upper || genus_upper < 0 {
        return Err(LegendrianError::Inconsistent);
    }
    let exact = (lower == genus_upper).then_some(lower);
    Ok(TauBounds { lower, upper: genus_upper, exact })
}

impl fmt::Display for FrontWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.events.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// The standard two-cusp unknot.
pub fn unknot_front() -> FrontWord {
    parse_front("L1 R1").expect("valid word")
}

/// Front of the twist knot with `j` full negative twists.
pub fn twist_front(j: i64) -> Result<FrontWord, LegendrianError> {
    if j < 1 {
        return Err(LegendrianError::OutOfRange);
    }
    let mut w = String::from("L1 L3 X2");
    for _ in 1..j {
        w.push_str(" L1 X2 R3 L1 X2 R3");
    }
    w.push_str(" X2 X2 R1 R1");
    let f = parse_front(&w)?;
    check_builtin(classical_invariants(&f)?, 1, 0)?;
    Ok(f)
}

/// Operator front of the genus-one ribbon pattern whose two bands both run
/// around the solid torus and wind around each other `k` times. Four
/// endpoints, winding number 0.
pub fn q_front(k: i64) -> Result<FrontWord, LegendrianError> {
    if k < 1 {
        return Err(LegendrianError::OutOfRange);
    }
    // A crossing of the two bands: four strand crossings of writhe 0.
    let mut w = String::from("X2 X1 X1 R2 L2");
    for _ in 0..2 * k + 1 {
        w.push_str(" X2 X1 X3 X2");
    }
    let f = parse_operator_front(&w, 4)?;
    check_builtin(f.operator_invariants()?, 0, 1)?;
    Ok(f)
}

/// Closed front of the pattern knot itself: the operator front in the
/// 4-copy of the standard unknot, with one extra full twist cancelling the
/// unknot's contact framing.
pub fn q_front_closed(k: i64) -> Result<FrontWord, LegendrianError> {
    let op = q_front(k)?;
    let mut w = String::from("L1 L3 L5 L7 X2 X4 X6 X3 X5 X4");
    for _ in 0..4 {
        w.push_str(" X1 X2 X3");
    }
    w.push(' ');
    w.push_str(&op.to_string());
    w.push_str(" X4 X5 X3 X6 X4 X2 R1 R1 R1 R1");
    parse_front(&w)
}

fn check_builtin(inv: LegInvariants, tb: i64, rot: i64) -> Result<(), LegendrianError> {
    if inv.tb == tb && inv.rot == rot {
        Ok(())
    } else {
        Err(LegendrianError::BuiltinCheck { tb, rot })
    }
}
