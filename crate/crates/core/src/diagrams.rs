//! Framed tangles as Morse words: parsing, validation, component tracing,
//! linking data and Kirby-move generators.
//!
//! Slices are read top to bottom. `cup i` opens a new pair of strands at
//! positions i, i+1; `cap i` closes the strands at i, i+1. In `xp i` the strand
//! moving from i to i+1 passes over, in `xn i` it passes under. Framing is the
//! blackboard framing, so kinks carry it.

use std::fmt;

use dashu_int::IBig;

use crate::error::{Error, Result};
use crate::ring::{CyclotomicOrder, RingElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceKind {
    Cup,
    Cap,
    Xp,
    Xn,
}

impl SliceKind {
    fn word(self) -> &'static str {
        match self {
            SliceKind::Cup => "cup",
            SliceKind::Cap => "cap",
            SliceKind::Xp => "xp",
            SliceKind::Xn => "xn",
        }
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, SliceKind::Xp | SliceKind::Xn)
    }
}

/// One elementary slice; `pos` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slice {
    pub kind: SliceKind,
    pub pos: usize,
}

impl Slice {
    pub fn new(kind: SliceKind, pos: usize) -> Self {
        Slice { kind, pos }
    }
}

/// Unvalidated slice sequence with its boundary.
#[derive(Debug, Clone, Default)]
pub struct MorseWord {
    pub top_pairs: usize,
    pub bottom_pairs: usize,
    pub slices: Vec<Slice>,
    /// Source line of each slice, when parsed from text.
    pub lines: Vec<usize>,
}

impl PartialEq for MorseWord {
    fn eq(&self, other: &Self) -> bool {
        self.top_pairs == other.top_pairs && self.bottom_pairs == other.bottom_pairs && self.slices == other.slices
    }
}

impl Eq for MorseWord {}

impl MorseWord {
    pub fn closed(slices: Vec<Slice>) -> Self {
        MorseWord { top_pairs: 0, bottom_pairs: 0, slices, lines: Vec::new() }
    }

    pub fn is_closed(&self) -> bool {
        self.top_pairs == 0 && self.bottom_pairs == 0
    }

    fn line_of(&self, k: usize) -> usize {
        self.lines.get(k).copied().unwrap_or(k + 2)
    }

    /// Canonical text, one event per line.
    pub fn render(&self) -> String {
        let mut s = if self.is_closed() {
            "closed\n".to_string()
        } else {
            format!("tangle {} {}\n", self.top_pairs, self.bottom_pairs)
        };
        for sl in &self.slices {
            s.push_str(&format!("{} {}\n", sl.kind.word(), sl.pos));
        }
        s
    }
}

impl fmt::Display for MorseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses the line grammar; `;` also separates events so one-line words work.
pub fn parse(text: &str) -> Result<MorseWord> {
    let mut word: Option<MorseWord> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        for item in body.split(';') {
            let toks: Vec<&str> = item.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line, msg };
            let num = |t: &str| -> Result<usize> {
                t.parse::<usize>().map_err(|_| err(format!("expected a non-negative integer, found {t:?}")))
            };
            match (&mut word, toks[0]) {
                (None, "closed") if toks.len() == 1 => word = Some(MorseWord::closed(Vec::new())),
                (None, "tangle") if toks.len() == 3 => {
                    word = Some(MorseWord {
                        top_pairs: num(toks[1])?,
                        bottom_pairs: num(toks[2])?,
                        ..Default::default()
                    })
                }
                (None, _) => return Err(err("expected header \"closed\" or \"tangle <n> <m>\"".into())),
                (Some(w), kw) => {
                    let kind = match kw {
                        "cup" => SliceKind::Cup,
                        "cap" => SliceKind::Cap,
                        "xp" => SliceKind::Xp,
                        "xn" => SliceKind::Xn,
                        _ => return Err(err(format!("unknown event {kw:?}"))),
                    };
                    if toks.len() != 2 {
                        return Err(err(format!("{kw} takes exactly one position")));
                    }
                    let pos = num(toks[1])?;
                    if pos == 0 {
                        return Err(err("positions are 1-based".into()));
                    }
                    w.slices.push(Slice::new(kind, pos));
                    w.lines.push(line);
                }
            }
        }
    }
    word.ok_or(Error::Parse { line: 0, msg: "empty diagram".into() })
}

/// Vertical direction of travel along a strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Down,
    Up,
}

impl Dir {
    fn sign(self) -> i32 {
        match self {
            Dir::Down => 1,
            Dir::Up => -1,
        }
    }
}

/// Turning sense at an extremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    Ccw,
    Cw,
}

/// What a traversal meets, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event {
    /// `left` is true for the strand that enters the crossing at position i.
    Cross { slice: usize, left: bool, over: bool, dir: Dir },
    Cup { slice: usize, turn: Turn },
    Cap { slice: usize, turn: Turn },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Closed,
    /// Arc between top endpoints 2j−1 and 2j, 1-based j.
    Top(usize),
    Bottom(usize),
}

#[derive(Debug, Clone)]
pub struct Component {
    pub kind: ComponentKind,
    pub events: Vec<Event>,
    pub writhe: i32,
    /// Signed extremum count, counter-clockwise positive.
    pub turns: i32,
}

impl Component {
    /// Rotation number of a closed component.
    pub fn rotation(&self) -> i32 {
        self.turns / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingInfo {
    pub slice: usize,
    /// Components of the strands entering at i and at i+1.
    pub left: usize,
    pub right: usize,
    pub sign: i32,
}

/// A validated word with its traced components.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub word: MorseWord,
    pub components: Vec<Component>,
    pub crossings: Vec<CrossingInfo>,
    /// Direction of travel of every strand just below each slice, by position.
    pub dirs: Vec<Vec<Dir>>,
    /// Component owning every strand just below each slice, by position.
    pub owners: Vec<Vec<usize>>,
    /// Directions and owners of the top boundary strands.
    pub top_dirs: Vec<Dir>,
    pub top_owners: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Attach {
    Top(usize),
    Bottom(usize),
    Cup { slice: usize, other: usize, left: bool },
    Cap { slice: usize, other: usize, left: bool },
    Cross { slice: usize, next: usize, left: bool, over: bool },
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    top: Attach,
    bottom: Attach,
}

/// Checks positions and boundary, then traces components.
pub fn validate(word: MorseWord) -> Result<Diagram> {
    let mut segs: Vec<Seg> = Vec::new();
    let placeholder = Attach::Top(0);
    let mut line: Vec<usize> = Vec::new();
    for p in 0..2 * word.top_pairs {
        segs.push(Seg { top: Attach::Top(p), bottom: placeholder });
        line.push(segs.len() - 1);
    }
    let mut below: Vec<Vec<usize>> = Vec::with_capacity(word.slices.len());
    for (k, sl) in word.slices.iter().enumerate() {
        let n = line.len();
        let i = sl.pos - 1;
        let bad = |need: usize| Error::Parse {
            line: word.line_of(k),
            msg: format!("position {} out of range for {} strands (needs {})", sl.pos, n, need),
        };
        match sl.kind {
            SliceKind::Cup => {
                if i > n {
                    return Err(bad(i));
                }
                let a = segs.len();
                segs.push(Seg { top: Attach::Cup { slice: k, other: a + 1, left: true }, bottom: placeholder });
                segs.push(Seg { top: Attach::Cup { slice: k, other: a, left: false }, bottom: placeholder });
                line.splice(i..i, [a, a + 1]);
            }
            SliceKind::Cap => {
                if i + 2 > n {
                    return Err(bad(i + 2));
                }
                let (a, b) = (line[i], line[i + 1]);
                segs[a].bottom = Attach::Cap { slice: k, other: b, left: true };
                segs[b].bottom = Attach::Cap { slice: k, other: a, left: false };
                line.drain(i..i + 2);
            }
            SliceKind::Xp | SliceKind::Xn => {
                if i + 2 > n {
                    return Err(bad(i + 2));
                }
                let over_left = sl.kind == SliceKind::Xp;
                let (a, b) = (line[i], line[i + 1]);
                let (na, nb) = (segs.len(), segs.len() + 1);
                // a continues as nb at i+1, b continues as na at i
                segs.push(Seg { top: Attach::Cross { slice: k, next: b, left: false, over: !over_left }, bottom: placeholder });
                segs.push(Seg { top: Attach::Cross { slice: k, next: a, left: true, over: over_left }, bottom: placeholder });
                segs[a].bottom = Attach::Cross { slice: k, next: nb, left: true, over: over_left };
                segs[b].bottom = Attach::Cross { slice: k, next: na, left: false, over: !over_left };
                line[i] = na;
                line[i + 1] = nb;
            }
        }
        below.push(line.clone());
    }
    if line.len() != 2 * word.bottom_pairs {
        return Err(Error::Parse {
            line: word.lines.last().copied().unwrap_or(1),
            msg: format!("unbalanced boundary: {} strands at the bottom, header declares {}", line.len(), 2 * word.bottom_pairs),
        });
    }
    for (p, &s) in line.iter().enumerate() {
        segs[s].bottom = Attach::Bottom(p);
    }

    let mut owner = vec![usize::MAX; segs.len()];
    let mut dir = vec![Dir::Down; segs.len()];
    let mut components = Vec::new();

    let walk = |start: usize, d0: Dir, owner: &mut Vec<usize>, dir: &mut Vec<Dir>, cid: usize| -> (Vec<Event>, Attach) {
        let mut events = Vec::new();
        let (mut s, mut d) = (start, d0);
        loop {
            owner[s] = cid;
            dir[s] = d;
            let end = if d == Dir::Down { segs[s].bottom } else { segs[s].top };
            match end {
                Attach::Top(_) | Attach::Bottom(_) => return (events, end),
                Attach::Cap { slice, other, left } => {
                    // arriving down on the left turns counter-clockwise
                    events.push(Event::Cap { slice, turn: if left { Turn::Ccw } else { Turn::Cw } });
                    s = other;
                    d = Dir::Up;
                }
                Attach::Cup { slice, other, left } => {
                    events.push(Event::Cup { slice, turn: if left { Turn::Cw } else { Turn::Ccw } });
                    s = other;
                    d = Dir::Down;
                }
                Attach::Cross { slice, next, left, over } => {
                    events.push(Event::Cross { slice, left, over, dir: d });
                    s = next;
                }
            }
            if s == start && d == d0 {
                return (events, Attach::Top(usize::MAX));
            }
        }
    };

    let bad_boundary = |msg: String| Error::Parse { line: 1, msg };
    // top arcs start at endpoint 2j going down
    for j in 0..word.top_pairs {
        let start = (0..segs.len()).find(|&s| segs[s].top == Attach::Top(2 * j + 1)).expect("top segment");
        let cid = components.len();
        let (events, end) = walk(start, Dir::Down, &mut owner, &mut dir, cid);
        if end != Attach::Top(2 * j) {
            return Err(bad_boundary(format!("top endpoint {} is not joined to endpoint {}", 2 * j + 2, 2 * j + 1)));
        }
        components.push(Component { kind: ComponentKind::Top(j + 1), events, writhe: 0, turns: 0 });
    }
    // bottom arcs start at endpoint 2k−1 going up
    for k in 0..word.bottom_pairs {
        let start = line[2 * k];
        if owner[start] != usize::MAX {
            return Err(bad_boundary(format!("bottom endpoint {} is joined to the top", 2 * k + 1)));
        }
        let cid = components.len();
        let (events, end) = walk(start, Dir::Up, &mut owner, &mut dir, cid);
        if end != Attach::Bottom(2 * k + 1) {
            return Err(bad_boundary(format!("bottom endpoint {} is not joined to endpoint {}", 2 * k + 1, 2 * k + 2)));
        }
        components.push(Component { kind: ComponentKind::Bottom(k + 1), events, writhe: 0, turns: 0 });
    }
    // closed components start at their first cup, down the left leg
    for (k, sl) in word.slices.iter().enumerate() {
        if sl.kind != SliceKind::Cup {
            continue;
        }
        let start = below[k][sl.pos - 1];
        if owner[start] != usize::MAX {
            continue;
        }
        let cid = components.len();
        let (mut events, _) = walk(start, Dir::Down, &mut owner, &mut dir, cid);
        // the closing cup belongs at the end of the cycle already
        debug_assert!(matches!(events.last(), Some(Event::Cup { slice, .. }) if *slice == k));
        events.shrink_to_fit();
        components.push(Component { kind: ComponentKind::Closed, events, writhe: 0, turns: 0 });
    }

    let mut crossings = Vec::new();
    for (k, sl) in word.slices.iter().enumerate() {
        if !sl.kind.is_crossing() {
            continue;
        }
        let i = sl.pos - 1;
        let (na, nb) = (below[k][i], below[k][i + 1]);
        // nb carries the strand that entered at i
        let (cl, dl) = (owner[nb], dir[nb]);
        let (cr, dr) = (owner[na], dir[na]);
        let nominal = if sl.kind == SliceKind::Xp { 1 } else { -1 };
        let sign = -nominal * dl.sign() * dr.sign();
        crossings.push(CrossingInfo { slice: k, left: cl, right: cr, sign });
        if cl == cr {
            components[cl].writhe += sign;
        }
    }
    for c in components.iter_mut() {
        c.turns = c
            .events
            .iter()
            .map(|e| match e {
                Event::Cup { turn, .. } | Event::Cap { turn, .. } => {
                    if *turn == Turn::Ccw {
                        1
                    } else {
                        -1
                    }
                }
                _ => 0,
            })
            .sum();
    }
    let dirs = below.iter().map(|l| l.iter().map(|&s| dir[s]).collect()).collect();
    let owners = below.iter().map(|l| l.iter().map(|&s| owner[s]).collect()).collect();
    let tops: Vec<usize> = (0..2 * word.top_pairs).collect();
    let top_dirs = tops.iter().map(|&s| dir[s]).collect();
    let top_owners = tops.iter().map(|&s| owner[s]).collect();
    Ok(Diagram { word, components, crossings, dirs, owners, top_dirs, top_owners })
}

/// Parses and validates in one step.
pub fn load(text: &str) -> Result<Diagram> {
    validate(parse(text)?)
}

impl Diagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn closed_components(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&c| self.components[c].kind == ComponentKind::Closed).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.word.is_closed()
    }

    /// Strand directions just above slice k.
    pub fn dirs_above(&self, k: usize) -> &[Dir] {
        if k == 0 {
            &self.top_dirs
        } else {
            &self.dirs[k - 1]
        }
    }

    pub fn owners_above(&self, k: usize) -> &[usize] {
        if k == 0 {
            &self.top_owners
        } else {
            &self.owners[k - 1]
        }
    }
}

/// Linking matrix with its signature and determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingData {
    pub matrix: Vec<Vec<i64>>,
    pub sigma: i64,
    pub det: IBig,
}

pub fn linking(d: &Diagram) -> Result<LinkingData> {
    if !d.is_closed() {
        return Err(Error::Domain("linking data needs a closed link".into()));
    }
    let n = d.components.len();
    let mut twice = vec![vec![0i64; n]; n];
    for c in &d.crossings {
        if c.left == c.right {
            twice[c.left][c.left] += 2 * c.sign as i64;
        } else {
            twice[c.left][c.right] += c.sign as i64;
            twice[c.right][c.left] += c.sign as i64;
        }
    }
    let matrix: Vec<Vec<i64>> = twice.iter().map(|r| r.iter().map(|v| v / 2).collect()).collect();
    let sigma = signature(&matrix);
    let det = determinant(&matrix);
    Ok(LinkingData { matrix, sigma, det })
}

fn rational_field() -> CyclotomicOrder {
    CyclotomicOrder::new(1).expect("Q")
}

fn rat_sign(x: &RingElem) -> i64 {
    let (p, _) = x.as_rational().expect("rational entry");
    match p.signum() {
        s if s > IBig::ZERO => 1,
        s if s < IBig::ZERO => -1,
        _ => 0,
    }
}

/// Signature by congruence diagonalization over Q.
pub fn signature(m: &[Vec<i64>]) -> i64 {
    let q = rational_field();
    let n = m.len();
    let mut a: Vec<Vec<RingElem>> = m.iter().map(|r| r.iter().map(|&v| q.int(v)).collect()).collect();
    let mut sigma = 0;
    let mut alive: Vec<usize> = (0..n).collect();
    while let Some(&first) = alive.first() {
        let p = match alive.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = alive.iter().flat_map(|&i| alive.iter().map(move |&j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                match pair {
                    None => break,
                    Some((i, j)) => {
                        // row/col i += row/col j makes a nonzero diagonal
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += &v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += &v;
                        }
                        i
                    }
                }
            }
        };
        let _ = first;
        let piv = a[p][p].clone();
        sigma += rat_sign(&piv);
        let inv = piv.inv().expect("nonzero pivot");
        for &i in alive.iter().filter(|&&i| i != p) {
            let f = &a[i][p] * &inv;
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                let v = &f * &a[p][k];
                a[i][k] -= &v;
            }
        }
        for &i in alive.iter().filter(|&&i| i != p) {
            a[p][i] = q.zero();
        }
        alive.retain(|&i| i != p);
    }
    sigma
}

/// Exact integer determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> IBig {
    let n = m.len();
    let mut a: Vec<Vec<IBig>> = m.iter().map(|r| r.iter().map(|&v| IBig::from(v)).collect()).collect();
    let mut sign = IBig::ONE;
    let mut prev = IBig::ONE;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return IBig::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return IBig::ONE;
    }
    sign * &a[n - 1][n - 1]
}

/// Order of the first homology of the surgered manifold; 0 when infinite.
pub fn h_of_m(d: &Diagram) -> Result<u64> {
    let det = linking(d)?.det;
    let abs = if det < IBig::ZERO { -det } else { det };
    u64::try_from(abs).map_err(|_| Error::Resource("determinant exceeds u64".into()))
}

/// Kirby moves used to generate equivalent presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KirbyMove {
    /// Adds isolated unknots with framings +1 and −1 at the right.
    T1AddPair,
    /// Removes an isolated ±1 pair in the form produced by `T1AddPair`.
    T1RemovePair,
    /// Slides component `a` over the closed component `b`.
    T2Slide { a: usize, b: usize },
}

pub fn kirby_move(d: &Diagram, mv: KirbyMove) -> Result<Diagram> {
    match mv {
        KirbyMove::T1AddPair => {
            let mut w = d.word.clone();
            w.lines.clear();
            let p = 2 * w.bottom_pairs + 1;
            for kind in [SliceKind::Xp, SliceKind::Xn] {
                w.slices.extend([Slice::new(SliceKind::Cup, p), Slice::new(kind, p), Slice::new(SliceKind::Cap, p)]);
            }
            validate(w)
        }
        KirbyMove::T1RemovePair => {
            let s = &d.word.slices;
            let kink = |k: usize, kind: SliceKind| {
                k + 2 < s.len()
                    && s[k].kind == SliceKind::Cup
                    && s[k + 1] == Slice::new(kind, s[k].pos)
                    && s[k + 2] == Slice::new(SliceKind::Cap, s[k].pos)
            };
            let find = |kind: SliceKind, skip: Option<usize>| (0..s.len()).find(|&k| kink(k, kind) && Some(k) != skip);
            let a = find(SliceKind::Xp, None).ok_or_else(|| Error::Domain("no isolated +1 unknot".into()))?;
            let b = find(SliceKind::Xn, Some(a)).ok_or_else(|| Error::Domain("no isolated −1 unknot".into()))?;
            let mut w = d.word.clone();
            w.lines.clear();
            w.slices = s.iter().enumerate().filter(|(k, _)| !(a..a + 3).contains(k) && !(b..b + 3).contains(k)).map(|(_, x)| *x).collect();
            validate(w)
        }
        KirbyMove::T2Slide { a, b } => handle_slide(d, a, b),
    }
}

/// Doubles component b into two blackboard-parallel copies. Also returns, for
/// every new slice, the original component of each strand just below it.
fn double_component(d: &Diagram, b: usize) -> (MorseWord, Vec<Vec<usize>>) {
    let w = &d.word;
    let mut out = Vec::new();
    let mut origin: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = d.top_owners.iter().flat_map(|&o| if o == b { vec![o, o] } else { vec![o] }).collect();
    let mut emit = |sl: Slice, owner: usize, cur: &mut Vec<usize>| {
        let i = sl.pos - 1;
        match sl.kind {
            SliceKind::Cup => {
                cur.splice(i..i, [owner, owner]);
            }
            SliceKind::Cap => {
                cur.drain(i..i + 2);
            }
            _ => cur.swap(i, i + 1),
        }
        out.push(sl);
        origin.push(cur.clone());
    };
    // new position of old 0-based index p given the owners just above the slice
    let shift = |owners: &[usize], p: usize| p + owners[..p].iter().filter(|&&o| o == b).count();
    for (k, sl) in w.slices.iter().enumerate() {
        let above = d.owners_above(k);
        let i = sl.pos - 1;
        let ni = shift(above, i) + 1;
        match sl.kind {
            SliceKind::Cup => {
                let o = d.owners[k][i];
                emit(Slice::new(SliceKind::Cup, ni), o, &mut cur);
                if o == b {
                    emit(Slice::new(SliceKind::Cup, ni + 1), o, &mut cur);
                }
            }
            SliceKind::Cap => {
                if above[i] == b {
                    emit(Slice::new(SliceKind::Cap, ni + 1), b, &mut cur);
                }
                emit(Slice::new(SliceKind::Cap, ni), above[i], &mut cur);
            }
            SliceKind::Xp | SliceKind::Xn => {
                let (l, r) = (above[i] == b, above[i + 1] == b);
                let steps: &[usize] = match (l, r) {
                    (false, false) => &[0],
                    (true, false) => &[1, 0],
                    (false, true) => &[0, 1],
                    (true, true) => &[1, 0, 2, 1],
                };
                for &o in steps {
                    emit(Slice::new(sl.kind, ni + o), 0, &mut cur);
                }
            }
        }
    }
    (MorseWord { top_pairs: w.top_pairs, bottom_pairs: w.bottom_pairs, slices: out, lines: Vec::new() }, origin)
}

/// Keeps a closed component alive until the end: its final cap is replaced by
/// a finger parked at the far right, capped after the last slice.
fn extend_to_end(d: &Diagram, c: usize) -> MorseWord {
    let w = &d.word;
    let last = (0..w.slices.len())
        .rev()
        .find(|&k| w.slices[k].kind == SliceKind::Cap && d.owners_above(k)[w.slices[k].pos - 1] == c)
        .expect("closed component has a cap");
    let n = d.owners_above(last).len();
    let mut slices = w.slices[..last].to_vec();
    for j in w.slices[last].pos - 1..n - 2 {
        slices.push(Slice::new(SliceKind::Xp, j + 2));
        slices.push(Slice::new(SliceKind::Xp, j + 1));
    }
    slices.extend_from_slice(&w.slices[last + 1..]);
    slices.push(Slice::new(SliceKind::Cap, 2 * w.bottom_pairs + 1));
    MorseWord { top_pairs: w.top_pairs, bottom_pairs: w.bottom_pairs, slices, lines: Vec::new() }
}

/// Band-sums a with a parallel copy of b along a finger that passes over
/// everything in between.
fn handle_slide(d: &Diagram, a: usize, b: usize) -> Result<Diagram> {
    let n = d.components.len();
    if a >= n || b >= n || a == b {
        return Err(Error::Domain(format!("slide needs two distinct components below {n}")));
    }
    if d.components[b].kind != ComponentKind::Closed {
        return Err(Error::Domain("can only slide over a closed component".into()));
    }
    let levels = |c: usize| (0..d.word.slices.len()).filter(move |&k| d.owners[k].contains(&c));
    let shared = levels(a).any(|k| d.owners[k].contains(&b));
    let stretched;
    let d = if shared {
        d
    } else {
        let (la, lb) = (levels(a).max().unwrap_or(0), levels(b).max().unwrap_or(0));
        stretched = validate(extend_to_end(d, if la < lb { a } else { b }))?;
        &stretched
    };
    let (word, origin) = double_component(d, b);
    let dbl = validate(word)?;
    for k in 0..dbl.word.slices.len() {
        let orig = &origin[k];
        let own = &dbl.owners[k];
        let Some(pa) = orig.iter().position(|&o| o == a) else { continue };
        let Some(pb) = (0..orig.len()).filter(|&p| orig[p] == b).min_by_key(|&p| p.abs_diff(pa)) else { continue };
        debug_assert_ne!(own[pa], own[pb]);
        let mut slices = dbl.word.slices[..=k].to_vec();
        let saddle_at;
        if pa < pb {
            slices.extend((pa..pb - 1).map(|p| Slice::new(SliceKind::Xp, p + 1)));
            saddle_at = pb;
            slices.push(Slice::new(SliceKind::Cap, saddle_at));
            slices.push(Slice::new(SliceKind::Cup, saddle_at));
            slices.extend((pa..pb - 1).rev().map(|p| Slice::new(SliceKind::Xn, p + 1)));
        } else {
            slices.extend((pb + 1..pa).rev().map(|p| Slice::new(SliceKind::Xn, p + 1)));
            saddle_at = pb + 1;
            slices.push(Slice::new(SliceKind::Cap, saddle_at));
            slices.push(Slice::new(SliceKind::Cup, saddle_at));
            slices.extend((pb + 1..pa).map(|p| Slice::new(SliceKind::Xp, p + 1)));
        }
        slices.extend_from_slice(&dbl.word.slices[k + 1..]);
        let w = MorseWord { top_pairs: d.word.top_pairs, bottom_pairs: d.word.bottom_pairs, slices, lines: Vec::new() };
        return validate(w);
    }
    Err(Error::Domain("components never share a level".into()))
}

/// Small named surgery presentations.
pub mod library {
    fn kinks(f: i64, pos: usize) -> String {
        let k = if f > 0 { "xp" } else { "xn" };
        (0..f.unsigned_abs()).map(|_| format!("; {k} {pos}")).collect()
    }

    /// Unknot with blackboard framing f; surgery gives L(f,1).
    pub fn unknot(f: i64) -> String {
        format!("closed; cup 1{}; cap 1", kinks(f, 1))
    }

    /// Hopf link with framings f1, f2.
    pub fn hopf(f1: i64, f2: i64) -> String {
        format!("closed; cup 1{}; cup 3; xp 2; xp 2{}; cap 3; cap 1", kinks(f1, 1), kinks(f2, 3))
    }

    /// Chain of three unknots, neighbours linked once.
    pub fn chain3(f: [i64; 3]) -> String {
        format!(
            "closed; cup 1{}; cup 3{}; xp 2; xp 2; cap 1; cup 3{}; xp 2; xp 2; cap 3; cap 1",
            kinks(f[0], 1),
            kinks(f[1], 3),
            kinks(f[2], 3)
        )
    }

    /// Two-bridge closure of a two-strand twist; 3 crossings give a trefoil.
    pub fn twist_closure(n: usize, positive: bool) -> String {
        let k = if positive { "xp" } else { "xn" };
        let body: String = (0..n).map(|_| format!("; {k} 2")).collect();
        format!("closed; cup 1; cup 3{body}; cap 3; cap 1")
    }

    /// Disjoint union of closed words, placed side by side in time.
    pub fn disjoint(a: &str, b: &str) -> String {
        let strip = |s: &str| s.trim_start_matches("closed").to_string();
        format!("closed{}{}", strip(a), strip(b))
    }

    /// Closed presentations with at most 4 components and 8 crossings.
    pub fn corpus() -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = vec![("empty".into(), "closed".into())];
        for f in -2..=7 {
            v.push((format!("unknot{f}"), unknot(f)));
        }
        for (a, b) in [(0, 0), (0, 1), (0, -1), (1, 1), (2, -1), (-1, -1)] {
            v.push((format!("hopf{a}_{b}"), hopf(a, b)));
        }
        v.push(("chain".into(), chain3([0, 1, -1])));
        v.push(("chain_2".into(), chain3([1, 0, 2])));
        v.push(("trefoil".into(), twist_closure(3, true)));
        v.push(("torus24".into(), twist_closure(4, false)));
        v.push(("unlink".into(), disjoint(&unknot(1), &unknot(-2))));
        v.push(("four".into(), disjoint(&hopf(0, 1), &hopf(1, 0))));
        v
    }
}
