//! Combinatorial diagrams of framed links in `L(p,1)`.
//!
//! A diagram is drawn next to the surgery unknot `U`. Arcs run between
//! undercrossings of the link and points where the link pierces the disk
//! bounded by `U`. Every arc ends at exactly one *terminator* (the `in` end
//! of a crossing or of a strand) and starts at exactly one *originator* (the
//! `out` end of one), except a closed loop consisting of a single arc with
//! neither.
//!
//! Crossing relations: `out = in ▷ over` for a positive crossing and
//! `out = in ▷̄ over` for a negative one. Strand `i` carries the level shift
//! `(out_i, k) = (in_i, k + 1)`; the strands are listed in the order they
//! pierce the disk.

use std::fmt;

use thiserror::Error;

pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub sign: Sign,
    pub over: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
}

/// A passage of the link through the surgery disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Strand {
    pub in_arc: ArcId,
    pub out_arc: ArcId,
    pub eps: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid diagram: {0}")]
    Validation(#[from] ValidationError),
    #[error("component index {index} out of range (diagram has {count})")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("arc {arc} out of range (diagram has {count})")]
    ArcOutOfRange { arc: ArcId, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("lens parameter p must be at least 1")]
    BadLensParameter,
    #[error("diagram must have at least one arc")]
    NoArcs,
    #[error("arc {0} referenced but not in 1..=arcs")]
    ArcOutOfRange(ArcId),
    #[error("component {0} is empty")]
    EmptyComponent(usize),
    #[error("arc {0} appears in no component")]
    ArcNotInComponent(ArcId),
    #[error("arc {0} appears more than once in the component lists")]
    ArcRepeated(ArcId),
    #[error("arc {0} has more than one terminator")]
    MultipleTerminators(ArcId),
    #[error("arc {0} has more than one originator")]
    MultipleOriginators(ArcId),
    #[error("arc {0} has no terminator")]
    MissingTerminator(ArcId),
    #[error("arc {0} has no originator")]
    MissingOriginator(ArcId),
    #[error("crossing {0} joins arcs of different components")]
    CrossingSplitsComponents(usize),
    #[error("strand {0} joins arcs of different components")]
    StrandSplitsComponents(usize),
    #[error("arc {from} is followed by {found} at its terminator, but the component lists {expected} next")]
    BrokenCycle {
        from: ArcId,
        expected: ArcId,
        found: ArcId,
    },
}

/// A framed link diagram in `L(p,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LensDiagram {
    p: u32,
    arc_count: usize,
    components: Vec<Vec<ArcId>>,
    crossings: Vec<Crossing>,
    strands: Vec<Strand>,
}

/// Where an arc ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminator {
    Crossing(usize),
    Strand(usize),
}

impl LensDiagram {
    /// Builds and validates a diagram.
    pub fn new(
        p: u32,
        arc_count: usize,
        components: Vec<Vec<ArcId>>,
        crossings: Vec<Crossing>,
        strands: Vec<Strand>,
    ) -> Result<Self, ValidationError> {
        let d = Self {
            p,
            arc_count,
            components,
            crossings,
            strands,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn components(&self) -> &[Vec<ArcId>] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    /// Number of strands through the surgery disk.
    pub fn d(&self) -> usize {
        self.strands.len()
    }

    /// Number of arcs not starting at the disk.
    pub fn m(&self) -> usize {
        self.arc_count - self.strands.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_affine(&self) -> bool {
        self.strands.is_empty()
    }

    /// Same diagram with a different lens parameter.
    pub fn with_p(&self, p: u32) -> Result<Self, ValidationError> {
        let mut d = self.clone();
        d.p = p;
        d.validate()?;
        Ok(d)
    }

    /// 0-based component index of every arc (index `arc - 1`).
    pub fn component_of_arcs(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.arc_count];
        for (c, comp) in self.components.iter().enumerate() {
            for &a in comp {
                out[a - 1] = c;
            }
        }
        out
    }

    pub fn terminator(&self, arc: ArcId) -> Option<Terminator> {
        if let Some(i) = self.crossings.iter().position(|c| c.under_in == arc) {
            return Some(Terminator::Crossing(i));
        }
        self.strands
            .iter()
            .position(|s| s.in_arc == arc)
            .map(Terminator::Strand)
    }

    fn validate(&self) -> Result<(), ValidationError> {
        use ValidationError as E;
        if self.p < 1 {
            return Err(E::BadLensParameter);
        }
        let a = self.arc_count;
        if a == 0 {
            return Err(E::NoArcs);
        }
        let in_range = |x: ArcId| {
            if (1..=a).contains(&x) {
                Ok(())
            } else {
                Err(E::ArcOutOfRange(x))
            }
        };
        let mut comp_of = vec![usize::MAX; a];
        for (c, comp) in self.components.iter().enumerate() {
            if comp.is_empty() {
                return Err(E::EmptyComponent(c + 1));
            }
            for &x in comp {
                in_range(x)?;
                if comp_of[x - 1] != usize::MAX {
                    return Err(E::ArcRepeated(x));
                }
                comp_of[x - 1] = c;
            }
        }
        if let Some(i) = comp_of.iter().position(|&c| c == usize::MAX) {
            return Err(E::ArcNotInComponent(i + 1));
        }

        // next[x] is the arc that starts where x ends
        let mut next: Vec<Option<ArcId>> = vec![None; a];
        let mut has_origin = vec![false; a];
        for (i, c) in self.crossings.iter().enumerate() {
            in_range(c.over)?;
            in_range(c.under_in)?;
            in_range(c.under_out)?;
            if comp_of[c.under_in - 1] != comp_of[c.under_out - 1] {
                return Err(E::CrossingSplitsComponents(i + 1));
            }
        }
        for (i, s) in self.strands.iter().enumerate() {
            in_range(s.in_arc)?;
            in_range(s.out_arc)?;
            if comp_of[s.in_arc - 1] != comp_of[s.out_arc - 1] {
                return Err(E::StrandSplitsComponents(i + 1));
            }
        }
        let ends = self
            .crossings
            .iter()
            .map(|c| (c.under_in, c.under_out))
            .chain(self.strands.iter().map(|s| (s.in_arc, s.out_arc)));
        for (from, to) in ends {
            if next[from - 1].replace(to).is_some() {
                return Err(E::MultipleTerminators(from));
            }
            if std::mem::replace(&mut has_origin[to - 1], true) {
                return Err(E::MultipleOriginators(to));
            }
        }

        for comp in &self.components {
            let closed_loop =
                comp.len() == 1 && next[comp[0] - 1].is_none() && !has_origin[comp[0] - 1];
            if closed_loop {
                continue;
            }
            for (t, &x) in comp.iter().enumerate() {
                let Some(found) = next[x - 1] else {
                    return Err(E::MissingTerminator(x));
                };
                if !has_origin[x - 1] {
                    return Err(E::MissingOriginator(x));
                }
                let expected = comp[(t + 1) % comp.len()];
                if found != expected {
                    return Err(E::BrokenCycle {
                        from: x,
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(())
    }

    /// Per-component sum of the signs of self-crossings.
    pub fn writhe_vector(&self) -> Vec<i64> {
        let comp = self.component_of_arcs();
        let mut w = vec![0i64; self.components.len()];
        for c in &self.crossings {
            let k = comp[c.over - 1];
            if comp[c.under_in - 1] == k && comp[c.under_out - 1] == k {
                w[k] += c.sign.value();
            }
        }
        w
    }

    fn check_component(&self, component: usize) -> Result<(), DiagramError> {
        if component >= self.components.len() {
            return Err(DiagramError::ComponentOutOfRange {
                index: component,
                count: self.components.len(),
            });
        }
        Ok(())
    }

    fn check_arc(&self, arc: ArcId) -> Result<(), DiagramError> {
        if !(1..=self.arc_count).contains(&arc) {
            return Err(DiagramError::ArcOutOfRange {
                arc,
                count: self.arc_count,
            });
        }
        Ok(())
    }

    /// Re-points the terminator of `arc` to `replacement`.
    fn retarget_terminator(&mut self, arc: ArcId, replacement: ArcId) {
        match self.terminator(arc) {
            Some(Terminator::Crossing(i)) => self.crossings[i].under_in = replacement,
            Some(Terminator::Strand(i)) => self.strands[i].in_arc = replacement,
            None => {}
        }
    }

    fn insert_after(&mut self, arc: ArcId, new_arcs: &[ArcId]) {
        for comp in &mut self.components {
            if let Some(pos) = comp.iter().position(|&x| x == arc) {
                for (k, &n) in new_arcs.iter().enumerate() {
                    comp.insert(pos + 1 + k, n);
                }
                return;
            }
        }
    }

    /// Adds one positive kink (relation `b = a ▷ a`) at the end of the
    /// lowest-numbered arc `a` of the 0-based `component`.
    ///
    /// On a closed single-arc loop the kink closes back onto the same arc, so
    /// the result has the relation `a ▷ a = a` and no new arc.
    pub fn add_positive_kink(&self, component: usize) -> Result<Self, DiagramError> {
        self.check_component(component)?;
        let a = *self.components[component].iter().min().unwrap();
        let mut d = self.clone();
        if self.terminator(a).is_none() {
            d.crossings.push(Crossing {
                sign: Sign::Positive,
                over: a,
                under_in: a,
                under_out: a,
            });
        } else {
            let b = d.arc_count + 1;
            d.arc_count = b;
            d.retarget_terminator(a, b);
            d.crossings.push(Crossing {
                sign: Sign::Positive,
                over: a,
                under_in: a,
                under_out: b,
            });
            d.insert_after(a, &[b]);
        }
        debug_assert!(d.validate().is_ok());
        Ok(d)
    }

    /// Adds `count` positive kinks to `component`.
    pub fn add_positive_kinks(&self, component: usize, count: u64) -> Result<Self, DiagramError> {
        self.check_component(component)?;
        let mut d = self.clone();
        for _ in 0..count {
            d = d.add_positive_kink(component)?;
        }
        Ok(d)
    }

    /// Pushes `moving_arc` under `over_arc` twice (a Reidemeister II move) at
    /// the end of `moving_arc`: new arcs `u = moving ▷ over` and
    /// `v = u ▷̄ over`, with the old terminator of `moving_arc` now fed by `v`.
    ///
    /// On a closed single-arc loop the second crossing closes onto the
    /// moving arc itself and only `u` is added.
    pub fn apply_omega2(&self, moving_arc: ArcId, over_arc: ArcId) -> Result<Self, DiagramError> {
        self.check_arc(moving_arc)?;
        self.check_arc(over_arc)?;
        let mut d = self.clone();
        let u = d.arc_count + 1;
        if self.terminator(moving_arc).is_none() {
            d.arc_count = u;
            d.crossings.push(Crossing {
                sign: Sign::Positive,
                over: over_arc,
                under_in: moving_arc,
                under_out: u,
            });
            d.crossings.push(Crossing {
                sign: Sign::Negative,
                over: over_arc,
                under_in: u,
                under_out: moving_arc,
            });
            d.insert_after(moving_arc, &[u]);
        } else {
            let v = u + 1;
            d.arc_count = v;
            d.retarget_terminator(moving_arc, v);
            d.crossings.push(Crossing {
                sign: Sign::Positive,
                over: over_arc,
                under_in: moving_arc,
                under_out: u,
            });
            d.crossings.push(Crossing {
                sign: Sign::Negative,
                over: over_arc,
                under_in: u,
                under_out: v,
            });
            d.insert_after(moving_arc, &[u, v]);
        }
        debug_assert!(d.validate().is_ok());
        Ok(d)
    }

    /// Reflection of the diagram: every crossing changes sign, arcs and
    /// strands are kept.
    pub fn mirrored(&self) -> Self {
        let mut d = self.clone();
        for c in &mut d.crossings {
            c.sign = match c.sign {
                Sign::Positive => Sign::Negative,
                Sign::Negative => Sign::Positive,
            };
        }
        d
    }

    /// One diagram per framing class `w ∈ (Z_N)^n`, in lexicographic order of `w`.
    ///
    /// Component `c` receives `(w_c - writhe_c) mod N` positive kinks.
    pub fn framing_representatives(&self, modulus: u64) -> Vec<(Vec<u64>, LensDiagram)> {
        assert!(modulus >= 1, "framing modulus must be positive");
        let n = self.components.len();
        let writhe = self.writhe_vector();
        let total = (modulus as usize).pow(n as u32);
        let mut out = Vec::with_capacity(total);
        let mut w = vec![0u64; n];
        for _ in 0..total {
            let mut d = self.clone();
            for c in 0..n {
                let kinks = (w[c] as i64 - writhe[c]).rem_euclid(modulus as i64) as u64;
                d = d.add_positive_kinks(c, kinks).expect("component in range");
            }
            out.push((w.clone(), d));
            // odometer, last coordinate fastest
            for c in (0..n).rev() {
                w[c] += 1;
                if w[c] < modulus {
                    break;
                }
                w[c] = 0;
            }
        }
        out
    }
}

/// Free function form of [`LensDiagram::writhe_vector`].
pub fn writhe_vector(d: &LensDiagram) -> Vec<i64> {
    d.writhe_vector()
}

/// Parses the line-oriented diagram format.
pub fn parse_diagram(text: &str) -> Result<LensDiagram, DiagramError> {
    let syntax = |line: usize, msg: &str| DiagramError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let mut p: Option<u32> = None;
    let mut arcs: Option<usize> = None;
    let mut components: Vec<Vec<ArcId>> = Vec::new();
    let mut crossings = Vec::new();
    let mut strands = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = body
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((body, ""));
        match keyword {
            "p" => {
                if p.is_some() {
                    return Err(syntax(line, "duplicate `p` line"));
                }
                p = Some(
                    rest.parse()
                        .map_err(|_| syntax(line, "`p` expects a nonnegative integer"))?,
                );
            }
            "arcs" => {
                if arcs.is_some() {
                    return Err(syntax(line, "duplicate `arcs` line"));
                }
                arcs = Some(
                    rest.parse()
                        .map_err(|_| syntax(line, "`arcs` expects a nonnegative integer"))?,
                );
            }
            "component" => {
                let (id, list) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `component <id>: <arc> ...`"))?;
                let id: usize = id
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, "component id must be an integer"))?;
                if id != components.len() + 1 {
                    return Err(syntax(
                        line,
                        &format!("component ids must run 1, 2, ...; expected {}", components.len() + 1),
                    ));
                }
                let list = list
                    .split_whitespace()
                    .map(|w| w.parse::<ArcId>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| syntax(line, "component arcs must be integers"))?;
                components.push(list);
            }
            "crossing" => {
                let mut words = rest.split_whitespace();
                let sign = match words.next() {
                    Some("+") => Sign::Positive,
                    Some("-") => Sign::Negative,
                    _ => return Err(syntax(line, "crossing sign must be `+` or `-`")),
                };
                let kv = key_values(words, line)?;
                crossings.push(Crossing {
                    sign,
                    over: take(&kv, "over", line)?,
                    under_in: take(&kv, "in", line)?,
                    under_out: take(&kv, "out", line)?,
                });
                if kv.len() != 3 {
                    return Err(syntax(line, "crossing takes exactly over=, in=, out="));
                }
            }
            "strand" => {
                let kv = key_values(rest.split_whitespace(), line)?;
                let in_arc = take(&kv, "in", line)?;
                let out_arc = take(&kv, "out", line)?;
                let eps = kv
                    .iter()
                    .find(|(k, _)| k == "eps")
                    .ok_or_else(|| syntax(line, "missing `eps=`"))?
                    .1
                    .as_str();
                let eps = match eps {
                    "+1" | "1" => Sign::Positive,
                    "-1" => Sign::Negative,
                    _ => return Err(syntax(line, "`eps` must be +1 or -1")),
                };
                if kv.len() != 3 {
                    return Err(syntax(line, "strand takes exactly in=, out=, eps="));
                }
                strands.push(Strand {
                    in_arc,
                    out_arc,
                    eps,
                });
            }
            other => return Err(syntax(line, &format!("unknown keyword `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| syntax(1, "missing `p` line"))?;
    let arcs = arcs.ok_or_else(|| syntax(1, "missing `arcs` line"))?;
    if components.is_empty() {
        return Err(syntax(1, "at least one `component` line is required"));
    }
    Ok(LensDiagram::new(p, arcs, components, crossings, strands)?)
}

fn key_values<'a>(
    words: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<Vec<(String, String)>, DiagramError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| DiagramError::Syntax {
            line,
            msg: format!("expected key=value, found `{w}`"),
        })?;
        if out.iter().any(|(kk, _)| kk == k) {
            return Err(DiagramError::Syntax {
                line,
                msg: format!("duplicate key `{k}`"),
            });
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

fn take(kv: &[(String, String)], key: &str, line: usize) -> Result<ArcId, DiagramError> {
    let (_, v) = kv
        .iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| DiagramError::Syntax {
            line,
            msg: format!("missing `{key}=`"),
        })?;
    v.parse().map_err(|_| DiagramError::Syntax {
        line,
        msg: format!("`{key}` must be an arc number"),
    })
}

/// Canonical text form; `parse_diagram(&serialize_diagram(d)) == d`.
pub fn serialize_diagram(d: &LensDiagram) -> String {
    d.to_string()
}

impl fmt::Display for LensDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p {}", self.p)?;
        writeln!(f, "arcs {}", self.arc_count)?;
        for (i, comp) in self.components.iter().enumerate() {
            let arcs: Vec<String> = comp.iter().map(|a| a.to_string()).collect();
            writeln!(f, "component {}: {}", i + 1, arcs.join(" "))?;
        }
        for c in &self.crossings {
            let s = if c.sign.is_positive() { '+' } else { '-' };
            writeln!(
                f,
                "crossing {s} over={} in={} out={}",
                c.over, c.under_in, c.under_out
            )?;
        }
        for s in &self.strands {
            let e = if s.eps.is_positive() { "+1" } else { "-1" };
            writeln!(f, "strand in={} out={} eps={e}", s.in_arc, s.out_arc)?;
        }
        Ok(())
    }
}
