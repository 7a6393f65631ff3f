//! Combinatorial oriented link diagrams: validation, component tracing,
//! trivial-crossing (kink) insertion, the alternating-writhes construction,
//! Reidemeister rewriting for invariance fuzzing, and split unions.
//!
//! A crossing stores orientation-level data: the over arc, the under arc
//! entered along the orientation (`under_in`), the under arc exited
//! (`under_out`), and the writhe. The geometric roles `(a_2, a_3)` of the
//! crossing figure are derived from the writhe: for `w = +1` they are
//! `(under_in, under_out)`, for `w = -1` they are `(under_out, under_in)`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub component: usize,
    pub id: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub id: String,
    pub over: String,
    pub under_in: String,
    pub under_out: String,
    pub writhe: i8,
}

impl Crossing {
    /// The figure roles `(a_1, a_2, a_3)` of this crossing.
    pub fn roles(&self) -> (&str, &str, &str) {
        if self.writhe >= 0 {
            (&self.over, &self.under_in, &self.under_out)
        } else {
            (&self.over, &self.under_out, &self.under_in)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDiagram {
    pub arcs: Vec<Arc>,
    pub crossings: Vec<Crossing>,
    pub mu: usize,
}

/// One Reidemeister move instance, addressed by arc/crossing ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveSpec {
    /// Insert a kink of the given writhe into an arc.
    R1Plus { arc: String, writhe: i8 },
    /// Remove the kink at a crossing.
    R1Inv { crossing: String },
    /// Slide `over` across `under`, creating a cancelling pair whose first
    /// crossing has the given writhe.
    R2 { over: String, under: String, writhe: i8 },
    /// Remove the cancelling pair `(c1, c2)`.
    R2Inv { c1: String, c2: String },
    /// Triangle slide across the three crossings.
    R3 { c1: String, c2: String, c3: String },
}

impl LinkDiagram {
    pub fn arc(&self, id: &str) -> Result<&Arc> {
        self.arcs
            .iter()
            .find(|a| a.id == id)
            .ok_or_else(|| Error::UnknownArc(id.to_string()))
    }

    pub fn crossing(&self, id: &str) -> Result<&Crossing> {
        self.crossings
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::UnknownCrossing(id.to_string()))
    }

    pub fn component_of(&self, arc_id: &str) -> usize {
        self.arc(arc_id).map(|a| a.component).unwrap_or(0)
    }

    fn arc_index(&self, id: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a.id == id)
    }

    fn fresh_arc_id(&self, base: &str) -> String {
        for i in 1.. {
            let cand = format!("{}.{}", base, i);
            if self.arc_index(&cand).is_none() {
                return cand;
            }
        }
        unreachable!()
    }

    fn fresh_crossing_id(&self, base: &str) -> String {
        for i in 1.. {
            let cand = format!("{}.{}", base, i);
            if self.crossings.iter().all(|c| c.id != cand) {
                return cand;
            }
        }
        unreachable!()
    }

    /// Renders the canonical JSON form (sorted keys, stable ordering).
    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    /// Relabel component indices through the permutation `perm`
    /// (1-based: component `i` becomes `perm[i-1]`).
    pub fn permute_components(&self, perm: &[usize]) -> Result<LinkDiagram> {
        if perm.len() != self.mu {
            return Err(Error::Usage("permutation length must equal mu".into()));
        }
        let mut seen = vec![false; self.mu];
        for &p in perm {
            if p < 1 || p > self.mu || seen[p - 1] {
                return Err(Error::Usage("not a bijection of 1..mu".into()));
            }
            seen[p - 1] = true;
        }
        let mut out = self.clone();
        for a in &mut out.arcs {
            a.component = perm[a.component - 1];
        }
        Ok(out)
    }
}

/// Per-component cyclic arc order plus per-arc incidence data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    /// `cycles[i]` is the cyclic arc order of component `i+1`.
    pub cycles: Vec<Vec<String>>,
    /// arc id -> (crossing where the arc is under_out, crossing where it is
    /// under_in); `None` for crossing-free closed arcs.
    pub incidences: BTreeMap<String, Option<(String, String)>>,
}

/// Checks every structural invariant; the returned list is empty iff the
/// diagram is well formed. Violations are data, not errors.
pub fn validate(d: &LinkDiagram) -> Vec<String> {
    let mut out = Vec::new();
    if d.mu < 1 {
        out.push("mu must be at least 1".to_string());
        return out;
    }
    let mut ids = BTreeSet::new();
    for a in &d.arcs {
        if !ids.insert(a.id.clone()) {
            out.push(format!("duplicate arc id {}", a.id));
        }
        if a.component < 1 || a.component > d.mu {
            out.push(format!("arc {} has component {} outside 1..{}", a.id, a.component, d.mu));
        }
    }
    for i in 1..=d.mu {
        if !d.arcs.iter().any(|a| a.component == i) {
            out.push(format!("component {} has no arcs", i));
        }
    }
    let mut cids = BTreeSet::new();
    for c in &d.crossings {
        if !cids.insert(c.id.clone()) {
            out.push(format!("duplicate crossing id {}", c.id));
        }
        if c.writhe != 1 && c.writhe != -1 {
            out.push(format!("crossing {} has writhe {} (must be +1 or -1)", c.id, c.writhe));
        }
        for arc in [&c.over, &c.under_in, &c.under_out] {
            if d.arc_index(arc).is_none() {
                out.push(format!("crossing {} references unknown arc {}", c.id, arc));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for c in &d.crossings {
        if d.component_of(&c.under_in) != d.component_of(&c.under_out) {
            out.push(format!("under arcs of crossing {} on different components", c.id));
        }
    }
    for a in &d.arcs {
        let ins = d.crossings.iter().filter(|c| c.under_in == a.id).count();
        let outs = d.crossings.iter().filter(|c| c.under_out == a.id).count();
        if ins > 1 || outs > 1 {
            out.push(format!("arc {} underpasses more than once ({} in, {} out)", a.id, ins, outs));
        } else if ins != outs {
            out.push(format!("arc {} has unbalanced underpass ends ({} in, {} out)", a.id, ins, outs));
        }
    }
    if !out.is_empty() {
        return out;
    }
    // each component must trace a single closed cycle
    for comp in 1..=d.mu {
        let arcs: Vec<&Arc> = d.arcs.iter().filter(|a| a.component == comp).collect();
        let with_crossings: Vec<&&Arc> = arcs
            .iter()
            .filter(|a| d.crossings.iter().any(|c| c.under_in == a.id))
            .collect();
        if with_crossings.is_empty() {
            if arcs.len() > 1 {
                out.push(format!(
                    "component {} has {} crossing-free arcs (must be a single closed arc)",
                    comp,
                    arcs.len()
                ));
            }
            continue;
        }
        if with_crossings.len() != arcs.len() {
            out.push(format!("component {} mixes crossing-free and underpassing arcs", comp));
            continue;
        }
        let start = &arcs[0].id;
        let mut seen = BTreeSet::new();
        let mut cur = start.clone();
        loop {
            if !seen.insert(cur.clone()) {
                break;
            }
            let next = d
                .crossings
                .iter()
                .find(|c| c.under_in == cur)
                .map(|c| c.under_out.clone());
            match next {
                Some(n) => cur = n,
                None => break,
            }
        }
        if cur != *start || seen.len() != arcs.len() {
            out.push(format!(
                "component {} does not trace a single closed cycle ({} of {} arcs reached)",
                comp,
                seen.len(),
                arcs.len()
            ));
        }
    }
    out
}

fn ensure_valid(d: &LinkDiagram) -> Result<()> {
    let v = validate(d);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidDiagram(v))
    }
}

/// The under_out -> under_in walk around every component.
pub fn trace_components(d: &LinkDiagram) -> Result<Trace> {
    ensure_valid(d)?;
    let mut cycles = Vec::new();
    let mut incidences = BTreeMap::new();
    for a in &d.arcs {
        let prev = d.crossings.iter().find(|c| c.under_out == a.id).map(|c| c.id.clone());
        let next = d.crossings.iter().find(|c| c.under_in == a.id).map(|c| c.id.clone());
        let entry = match (prev, next) {
            (Some(p), Some(n)) => Some((p, n)),
            (None, None) => None,
            _ => return Err(Error::Internal(format!("broken cycle at arc {}", a.id))),
        };
        incidences.insert(a.id.clone(), entry);
    }
    for comp in 1..=d.mu {
        let arcs: Vec<&Arc> = d.arcs.iter().filter(|a| a.component == comp).collect();
        let start = arcs[0].id.clone();
        let mut cycle = Vec::new();
        let mut cur = start.clone();
        loop {
            cycle.push(cur.clone());
            let next = d
                .crossings
                .iter()
                .find(|c| c.under_in == cur)
                .map(|c| c.under_out.clone());
            match next {
                Some(n) if n != start => cur = n,
                _ => break,
            }
        }
        cycles.push(cycle);
    }
    Ok(Trace { cycles, incidences })
}

/// Parse either the JSON diagram format or a PD-code line.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram> {
    let d = parse_diagram_lenient(text)?;
    ensure_valid(&d)?;
    Ok(d)
}

/// Parse without the validation gate, so violations can be reported as
/// data.
pub fn parse_diagram_lenient(text: &str) -> Result<LinkDiagram> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        serde_json::from_str::<LinkDiagram>(text).map_err(|e| Error::Parse {
            pos: format!("line {}, column {}", e.line(), e.column()),
            msg: e.to_string(),
        })
    } else {
        parse_pd_code(text)
    }
}

/// PD convention: `X[a,b,c,d]` lists the strand labels counterclockwise
/// starting at the incoming under-strand, so the under-strand runs a -> c
/// and the over-strand occupies b and d. Edge labels ascend along each
/// component's orientation; the over-strand direction is inferred from that
/// numbering, entering at the smaller label when both readings close up.
pub fn parse_pd_code(text: &str) -> Result<LinkDiagram> {
    let mut quads = Vec::new();
    for (tokidx, tok) in text.split_whitespace().enumerate() {
        let pos = format!("token {}", tokidx + 1);
        let inner = tok
            .strip_prefix("X[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                pos: pos.clone(),
                msg: format!("expected X[a,b,c,d], got `{}`", tok),
            })?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse { pos, msg: "expected four strand labels".into() });
        }
        let mut quad = [0usize; 4];
        for (i, p) in parts.iter().enumerate() {
            quad[i] = p.trim().parse::<usize>().map_err(|_| Error::Parse {
                pos: pos.clone(),
                msg: format!("bad strand label `{}`", p),
            })?;
        }
        quads.push(quad);
    }
    if quads.is_empty() {
        return Err(Error::Parse { pos: "input".into(), msg: "no PD tokens".into() });
    }

    // Each edge label must occur exactly twice.
    let mut occurs: BTreeMap<usize, usize> = BTreeMap::new();
    for q in &quads {
        for &e in q {
            *occurs.entry(e).or_insert(0) += 1;
        }
    }
    for (e, n) in &occurs {
        if *n != 2 {
            return Err(Error::Parse {
                pos: "input".into(),
                msg: format!("strand label {} occurs {} times (expected 2)", e, n),
            });
        }
    }

    // Union edges into components: (i,k) and (j,l) are consecutive edges.
    let edges: Vec<usize> = occurs.keys().copied().collect();
    let idx_of: BTreeMap<usize, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut dsu: Vec<usize> = (0..edges.len()).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        if dsu[x] != x {
            let r = find(dsu, dsu[x]);
            dsu[x] = r;
        }
        dsu[x]
    }
    for q in &quads {
        let (i, j, k, l) = (idx_of[&q[0]], idx_of[&q[1]], idx_of[&q[2]], idx_of[&q[3]]);
        let (a, b) = (find(&mut dsu, i), find(&mut dsu, k));
        dsu[a] = b;
        let (a, b) = (find(&mut dsu, j), find(&mut dsu, l));
        dsu[a] = b;
    }
    let mut comp_edges: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        comp_edges.entry(find(&mut dsu, i)).or_default().push(e);
    }
    // Components ordered by their smallest edge label.
    let mut comps: Vec<Vec<usize>> = comp_edges.into_values().collect();
    comps.sort_by_key(|v| v[0]);
    let mu = comps.len();
    let mut comp_of_edge: BTreeMap<usize, usize> = BTreeMap::new();
    let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
    for (ci, es) in comps.iter().enumerate() {
        for (i, &e) in es.iter().enumerate() {
            comp_of_edge.insert(e, ci + 1);
            succ.insert(e, es[(i + 1) % es.len()]);
        }
    }
    for q in &quads {
        if succ[&q[0]] != q[2] {
            return Err(Error::Parse {
                pos: "input".into(),
                msg: format!(
                    "under-strand {} -> {} conflicts with ascending edge numbering",
                    q[0], q[2]
                ),
            });
        }
    }

    // Arcs: cut each component after every under-in edge.
    let under_in_edges: BTreeSet<usize> = quads.iter().map(|q| q[0]).collect();
    let mut arc_of_edge: BTreeMap<usize, String> = BTreeMap::new();
    let mut arcs = Vec::new();
    for (ci, es) in comps.iter().enumerate() {
        let cuts: Vec<usize> = es.iter().copied().filter(|e| under_in_edges.contains(e)).collect();
        if cuts.is_empty() {
            // component never underpasses: single closed arc
            let id = format!("e{}", es[0]);
            for &e in es {
                arc_of_edge.insert(e, id.clone());
            }
            arcs.push(Arc { id, component: ci + 1 });
            continue;
        }
        for &cut in &cuts {
            // arc starts at the edge after `cut` and runs to the next cut
            let start = succ[&cut];
            let id = format!("e{}", start);
            let mut e = start;
            loop {
                arc_of_edge.insert(e, id.clone());
                if under_in_edges.contains(&e) {
                    break;
                }
                e = succ[&e];
            }
            arcs.push(Arc { id, component: ci + 1 });
        }
    }
    arcs.sort_by_key(|a| {
        (a.component, a.id.trim_start_matches('e').parse::<usize>().unwrap_or(0))
    });

    let mut crossings = Vec::new();
    for (n, q) in quads.iter().enumerate() {
        let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
        // over-strand direction: the in-edge's successor is the out-edge
        let over_in = if succ[&j] == l {
            if succ[&l] == j {
                // two-edge component: both readings close up; ascending default
                j.min(l)
            } else {
                j
            }
        } else if succ[&l] == j {
            l
        } else {
            return Err(Error::Parse {
                pos: format!("token {}", n + 1),
                msg: format!("over-strand labels {} and {} are not consecutive", j, l),
            });
        };
        // CCW from the incoming under-strand: position b is the right side,
        // position d the left. Over entering from position d is positive.
        let writhe = if over_in == l { 1 } else { -1 };
        crossings.push(Crossing {
            id: format!("x{}", n + 1),
            over: arc_of_edge[&j].clone(),
            under_in: arc_of_edge[&i].clone(),
            under_out: arc_of_edge[&k].clone(),
            writhe,
        });
    }
    Ok(LinkDiagram { arcs, crossings, mu })
}

/// Insert a trivial crossing (R1 kink) of writhe `w` into an arc. The kink
/// splits the arc just before its under_in end; a closed crossing-free arc
/// becomes the single arc of a one-crossing kink.
pub fn insert_trivial_crossing(d: &LinkDiagram, arc_id: &str, w: i8) -> Result<LinkDiagram> {
    let arc = d.arc(arc_id)?.clone();
    let mut out = d.clone();
    let kink_id = out.fresh_crossing_id("k");
    let has_under = d.crossings.iter().any(|c| c.under_in == arc.id);
    if !has_under {
        out.crossings.push(Crossing {
            id: kink_id,
            over: arc.id.clone(),
            under_in: arc.id.clone(),
            under_out: arc.id,
            writhe: w,
        });
        return Ok(out);
    }
    let new_id = out.fresh_arc_id(&arc.id);
    let pos = out.arc_index(&arc.id).unwrap();
    out.arcs.insert(pos + 1, Arc { id: new_id.clone(), component: arc.component });
    for c in &mut out.crossings {
        if c.under_in == arc.id {
            c.under_in = new_id.clone();
        }
    }
    out.crossings.push(Crossing {
        id: kink_id,
        over: new_id.clone(),
        under_in: arc.id,
        under_out: new_id,
        writhe: w,
    });
    Ok(out)
}

/// True iff every arc underpasses exactly twice, once at a crossing of each
/// writhe.
pub fn is_alternating_writhes(d: &LinkDiagram) -> bool {
    d.arcs.iter().all(|a| {
        let w_in = d.crossings.iter().find(|c| c.under_in == a.id).map(|c| c.writhe);
        let w_out = d.crossings.iter().find(|c| c.under_out == a.id).map(|c| c.writhe);
        matches!((w_in, w_out), (Some(x), Some(y)) if x + y == 0)
    })
}

/// The alternating-writhes construction: give every crossing-free component
/// a trivial crossing, then compensate every arc whose two underpass
/// incidences share a writhe with a kink of the opposite writhe. An already
/// alternating diagram is returned unchanged.
pub fn make_alternating(d: &LinkDiagram) -> Result<LinkDiagram> {
    ensure_valid(d)?;
    let mut out = d.clone();
    let free: Vec<String> = out
        .arcs
        .iter()
        .filter(|a| !out.crossings.iter().any(|c| c.under_in == a.id))
        .map(|a| a.id.clone())
        .collect();
    for id in free {
        out = insert_trivial_crossing(&out, &id, 1)?;
    }
    loop {
        let bad = out.arcs.iter().find_map(|a| {
            let w_in = out.crossings.iter().find(|c| c.under_in == a.id).map(|c| c.writhe)?;
            let w_out = out.crossings.iter().find(|c| c.under_out == a.id).map(|c| c.writhe)?;
            (w_in == w_out).then(|| (a.id.clone(), w_in))
        });
        match bad {
            Some((id, w)) => out = insert_trivial_crossing(&out, &id, -w)?,
            None => break,
        }
    }
    debug_assert!(is_alternating_writhes(&out));
    Ok(out)
}

/// Disjoint union; the second diagram's component indices are shifted by
/// `d1.mu` and all ids are prefixed to stay unique.
pub fn split_union(d1: &LinkDiagram, d2: &LinkDiagram) -> LinkDiagram {
    let relabel = |prefix: &str, s: &str| format!("{}{}", prefix, s);
    let mut arcs: Vec<Arc> = d1
        .arcs
        .iter()
        .map(|a| Arc { id: relabel("1.", &a.id), component: a.component })
        .collect();
    arcs.extend(d2.arcs.iter().map(|a| Arc {
        id: relabel("2.", &a.id),
        component: a.component + d1.mu,
    }));
    let map_crossing = |prefix: &str, c: &Crossing| Crossing {
        id: relabel(prefix, &c.id),
        over: relabel(prefix, &c.over),
        under_in: relabel(prefix, &c.under_in),
        under_out: relabel(prefix, &c.under_out),
        writhe: c.writhe,
    };
    let mut crossings: Vec<Crossing> = d1.crossings.iter().map(|c| map_crossing("1.", c)).collect();
    crossings.extend(d2.crossings.iter().map(|c| map_crossing("2.", c)));
    LinkDiagram { arcs, crossings, mu: d1.mu + d2.mu }
}

/// Apply one Reidemeister move; the site must match the required local
/// pattern exactly.
pub fn reidemeister_move(d: &LinkDiagram, m: &MoveSpec) -> Result<LinkDiagram> {
    let out = match m {
        MoveSpec::R1Plus { arc, writhe } => insert_trivial_crossing(d, arc, *writhe)?,
        MoveSpec::R1Inv { crossing } => r1_inverse(d, crossing)?,
        MoveSpec::R2 { over, under, writhe } => r2_slide(d, over, under, *writhe)?,
        MoveSpec::R2Inv { c1, c2 } => r2_inverse(d, c1, c2)?,
        MoveSpec::R3 { c1, c2, c3 } => r3_slide(d, c1, c2, c3)?,
    };
    ensure_valid(&out)?;
    Ok(out)
}

fn r1_inverse(d: &LinkDiagram, crossing_id: &str) -> Result<LinkDiagram> {
    let c = d.crossing(crossing_id)?.clone();
    let is_kink = c.over == c.under_in || c.over == c.under_out;
    if !is_kink {
        return Err(Error::PatternMismatch(format!("crossing {} is not a kink", c.id)));
    }
    let mut out = d.clone();
    out.crossings.retain(|x| x.id != c.id);
    if c.under_in == c.under_out {
        return Ok(out);
    }
    // merge under_out into under_in
    let keep = c.under_in.clone();
    let gone = c.under_out.clone();
    out.arcs.retain(|a| a.id != gone);
    for x in &mut out.crossings {
        for field in [&mut x.over, &mut x.under_in, &mut x.under_out] {
            if *field == gone {
                *field = keep.clone();
            }
        }
    }
    Ok(out)
}

fn r2_slide(d: &LinkDiagram, over_id: &str, under_id: &str, w: i8) -> Result<LinkDiagram> {
    d.arc(over_id)?;
    let under = d.arc(under_id)?.clone();
    if w != 1 && w != -1 {
        return Err(Error::Usage("R2 writhe must be +1 or -1".into()));
    }
    let mut out = d.clone();
    let ca = out.fresh_crossing_id("q");
    let has_under = d.crossings.iter().any(|c| c.under_in == under.id);
    if !has_under {
        // closed crossing-free under arc: two cuts make two arcs
        let mid = out.fresh_arc_id(&under.id);
        let pos = out.arc_index(&under.id).unwrap();
        out.arcs.insert(pos + 1, Arc { id: mid.clone(), component: under.component });
        out.crossings.push(Crossing {
            id: ca,
            over: over_id.to_string(),
            under_in: under.id.clone(),
            under_out: mid.clone(),
            writhe: w,
        });
        let cb = out.fresh_crossing_id("q");
        out.crossings.push(Crossing {
            id: cb,
            over: over_id.to_string(),
            under_in: mid,
            under_out: under.id,
            writhe: -w,
        });
        return Ok(out);
    }
    let mid = out.fresh_arc_id(&under.id);
    let pos = out.arc_index(&under.id).unwrap();
    out.arcs.insert(pos + 1, Arc { id: mid.clone(), component: under.component });
    let tail = out.fresh_arc_id(&under.id);
    out.arcs.insert(pos + 2, Arc { id: tail.clone(), component: under.component });
    for c in &mut out.crossings {
        if c.under_in == under.id {
            c.under_in = tail.clone();
        }
    }
    out.crossings.push(Crossing {
        id: ca,
        over: over_id.to_string(),
        under_in: under.id,
        under_out: mid.clone(),
        writhe: w,
    });
    let cb = out.fresh_crossing_id("q");
    out.crossings.push(Crossing {
        id: cb,
        over: over_id.to_string(),
        under_in: mid,
        under_out: tail,
        writhe: -w,
    });
    Ok(out)
}

fn r2_inverse(d: &LinkDiagram, c1_id: &str, c2_id: &str) -> Result<LinkDiagram> {
    let c1 = d.crossing(c1_id)?.clone();
    let c2 = d.crossing(c2_id)?.clone();
    let mid = c1.under_out.clone();
    let pattern_ok = c1.over == c2.over
        && c2.under_in == mid
        && c1.writhe + c2.writhe == 0
        && c1.id != c2.id
        && mid != c1.under_in
        && mid != c2.under_out
        && mid != c1.over
        && d.crossings.iter().all(|c| c.over != mid);
    if !pattern_ok {
        return Err(Error::PatternMismatch(format!(
            "crossings {} and {} do not form a cancelling pair with a clean middle arc",
            c1_id, c2_id
        )));
    }
    let mut out = d.clone();
    out.crossings.retain(|c| c.id != c1.id && c.id != c2.id);
    out.arcs.retain(|a| a.id != mid);
    let first = c1.under_in.clone();
    let last = c2.under_out.clone();
    if first != last {
        out.arcs.retain(|a| a.id != last);
        for c in &mut out.crossings {
            for field in [&mut c.over, &mut c.under_in, &mut c.under_out] {
                if *field == last {
                    *field = first.clone();
                }
            }
        }
    }
    Ok(out)
}

/// The R3 pattern, in either direction. Direction A: the bottom strand
/// passes under the middle strand (at `c1`, over arc `m0`) and then under
/// the top strand (at `c2`, over arc `t0`), while `m0` itself passes under
/// `t0` at `c3`; sliding moves the bottom strand to the other side of `c3`.
/// The middle arc of the bottom strand must be free of other incidences and
/// the two crossings under the top strand must have equal writhes.
fn r3_slide(d: &LinkDiagram, c1_id: &str, c2_id: &str, c3_id: &str) -> Result<LinkDiagram> {
    let c1 = d.crossing(c1_id)?.clone();
    let c2 = d.crossing(c2_id)?.clone();
    let c3 = d.crossing(c3_id)?.clone();
    if c1.id == c2.id || c1.id == c3.id || c2.id == c3.id {
        return Err(Error::PatternMismatch("R3 needs three distinct crossings".into()));
    }
    let b1 = c1.under_out.clone();
    if c2.under_in != b1 {
        return Err(Error::PatternMismatch(format!(
            "under arcs are not consecutive across {} and {}",
            c1_id, c2_id
        )));
    }
    if d.crossings.iter().any(|c| c.over == b1) {
        return Err(Error::PatternMismatch(format!("triangle arc {} is not clear", b1)));
    }
    if c1.over == c2.over {
        return Err(Error::PatternMismatch("degenerate triangle (one strand plays two roles)".into()));
    }
    let mut out = d.clone();
    if c3.over == c2.over && c3.under_in == c1.over && c3.writhe == c2.writhe {
        // direction A: bottom strand slides past c3
        let m1 = c3.under_out.clone();
        let t0 = c2.over.clone();
        let (w1, w2) = (c1.writhe, c2.writhe);
        for c in &mut out.crossings {
            if c.id == c1.id {
                c.over = t0.clone();
                c.writhe = w2;
            } else if c.id == c2.id {
                c.over = m1.clone();
                c.writhe = w1;
            }
        }
        Ok(out)
    } else if c3.over == c1.over && c3.under_out == c2.over && c3.writhe == c1.writhe {
        // direction B: the inverse slide
        let m0 = c3.under_in.clone();
        let t0 = c1.over.clone();
        let (w2, w1) = (c1.writhe, c2.writhe);
        for c in &mut out.crossings {
            if c.id == c1.id {
                c.over = m0.clone();
                c.writhe = w1;
            } else if c.id == c2.id {
                c.over = t0.clone();
                c.writhe = w2;
            }
        }
        Ok(out)
    } else {
        Err(Error::PatternMismatch(format!(
            "crossings {}, {}, {} do not form a triangle site",
            c1_id, c2_id, c3_id
        )))
    }
}

/// Kink crossings (R1 inverse sites).
pub fn kink_sites(d: &LinkDiagram) -> Vec<String> {
    d.crossings
        .iter()
        .filter(|c| c.over == c.under_in || c.over == c.under_out)
        .map(|c| c.id.clone())
        .collect()
}

/// Cancelling pairs with a clean middle arc (R2 inverse sites). Each arc
/// is under_in at most once, so candidate partners are found by chaining
/// under_out to under_in.
pub fn r2inv_sites(d: &LinkDiagram) -> Vec<(String, String)> {
    let mut over_arcs = BTreeSet::new();
    for c in &d.crossings {
        over_arcs.insert(c.over.as_str());
    }
    let mut out = Vec::new();
    for c1 in &d.crossings {
        let mid = &c1.under_out;
        let Some(c2) = d.crossings.iter().find(|c| &c.under_in == mid) else { continue };
        if c1.id == c2.id
            || c1.over != c2.over
            || c1.writhe + c2.writhe != 0
            || mid == &c1.under_in
            || mid == &c2.under_out
            || mid == &c1.over
            || over_arcs.contains(mid.as_str())
        {
            continue;
        }
        out.push((c1.id.clone(), c2.id.clone()));
    }
    out
}

/// Triangle sites for the R3 slide, in either direction.
pub fn r3_sites(d: &LinkDiagram) -> Vec<(String, String, String)> {
    let mut over_arcs = BTreeSet::new();
    for c in &d.crossings {
        over_arcs.insert(c.over.as_str());
    }
    let mut out = Vec::new();
    for c1 in &d.crossings {
        let b1 = &c1.under_out;
        let Some(c2) = d.crossings.iter().find(|c| &c.under_in == b1) else { continue };
        if c1.id == c2.id || over_arcs.contains(b1.as_str()) || c1.over == c2.over {
            continue;
        }
        // direction A: the middle strand's over arc still has to duck
        // under the top strand
        if let Some(c3) = d.crossings.iter().find(|c| c.under_in == c1.over) {
            if c3.id != c1.id
                && c3.id != c2.id
                && c3.over == c2.over
                && c3.writhe == c2.writhe
            {
                out.push((c1.id.clone(), c2.id.clone(), c3.id.clone()));
            }
        }
        // direction B: the inverse slide
        if let Some(c3) = d.crossings.iter().find(|c| c.under_out == c2.over) {
            if c3.id != c1.id
                && c3.id != c2.id
                && c3.over == c1.over
                && c3.writhe == c1.writhe
            {
                out.push((c1.id.clone(), c2.id.clone(), c3.id.clone()));
            }
        }
    }
    out
}

/// Enumerate every legal move instance on the diagram, in a deterministic
/// order.
pub fn enumerate_moves(d: &LinkDiagram) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    for a in &d.arcs {
        for w in [1i8, -1] {
            out.push(MoveSpec::R1Plus { arc: a.id.clone(), writhe: w });
        }
    }
    for c in kink_sites(d) {
        out.push(MoveSpec::R1Inv { crossing: c });
    }
    for x in &d.arcs {
        for y in &d.arcs {
            for w in [1i8, -1] {
                out.push(MoveSpec::R2 { over: x.id.clone(), under: y.id.clone(), writhe: w });
            }
        }
    }
    for (c1, c2) in r2inv_sites(d) {
        out.push(MoveSpec::R2Inv { c1, c2 });
    }
    for (c1, c2, c3) in r3_sites(d) {
        out.push(MoveSpec::R3 { c1, c2, c3 });
    }
    out
}

/// Apply `count` random legal moves drawn from a seeded generator,
/// returning the rewritten diagram and the moves taken. A move kind is
/// drawn first, then a site; shrinking kinds take over once the diagram
/// has grown well past its original size.
pub fn random_moves<R: Rng>(
    d: &LinkDiagram,
    count: usize,
    rng: &mut R,
) -> Result<(LinkDiagram, Vec<MoveSpec>)> {
    let mut cur = d.clone();
    let mut taken = Vec::new();
    let limit = d.crossings.len() + 16;
    for _ in 0..count {
        let kinks = kink_sites(&cur);
        let pairs = r2inv_sites(&cur);
        let triangles = r3_sites(&cur);
        let mut kinds: Vec<u8> = vec![0, 1]; // R1+, R2
        if !kinks.is_empty() {
            kinds.push(2);
        }
        if !pairs.is_empty() {
            kinds.push(3);
        }
        if !triangles.is_empty() {
            kinds.push(4);
        }
        if cur.crossings.len() >= limit {
            let shrinking: Vec<u8> = kinds.iter().copied().filter(|k| *k == 2 || *k == 3).collect();
            if !shrinking.is_empty() {
                kinds = shrinking;
            }
        }
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let m = match kind {
            0 => MoveSpec::R1Plus {
                arc: cur.arcs[rng.gen_range(0..cur.arcs.len())].id.clone(),
                writhe: if rng.gen_bool(0.5) { 1 } else { -1 },
            },
            1 => MoveSpec::R2 {
                over: cur.arcs[rng.gen_range(0..cur.arcs.len())].id.clone(),
                under: cur.arcs[rng.gen_range(0..cur.arcs.len())].id.clone(),
                writhe: if rng.gen_bool(0.5) { 1 } else { -1 },
            },
            2 => MoveSpec::R1Inv { crossing: kinks[rng.gen_range(0..kinks.len())].clone() },
            3 => {
                let (c1, c2) = pairs[rng.gen_range(0..pairs.len())].clone();
                MoveSpec::R2Inv { c1, c2 }
            }
            _ => {
                let (c1, c2, c3) = triangles[rng.gen_range(0..triangles.len())].clone();
                MoveSpec::R3 { c1, c2, c3 }
            }
        };
        cur = reidemeister_move(&cur, &m)?;
        taken.push(m);
    }
    Ok((cur, taken))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hopf_json_round_trip() {
        let hopf = fixtures::hopf();
        assert!(validate(&hopf).is_empty());
        let rendered = hopf.render_json();
        let back = parse_diagram(&rendered).unwrap();
        assert_eq!(back, hopf);
    }

    #[test]
    fn zero_crossing_unknot_is_valid() {
        let d = parse_diagram(r#"{"mu":1,"arcs":[{"id":"c","component":1}],"crossings":[]}"#)
            .unwrap();
        assert_eq!(d.mu, 1);
        assert!(validate(&d).is_empty());
    }

    #[test]
    fn validate_reports_cross_component_under_arcs() {
        let mut d = fixtures::hopf();
        d.crossings[0].under_in = "a".into();
        let v = validate(&d);
        assert!(!v.is_empty());
    }

    #[test]
    fn validate_reports_empty_component() {
        let mut d = fixtures::hopf();
        d.mu = 3;
        let v = validate(&d);
        assert!(v.iter().any(|m| m.contains("component 3 has no arcs")), "{:?}", v);
    }

    #[test]
    fn trace_hopf_and_split() {
        let t = trace_components(&fixtures::hopf()).unwrap();
        assert_eq!(t.cycles, vec![vec!["a".to_string()], vec!["b".to_string()]]);
        let t = trace_components(&fixtures::trefoil()).unwrap();
        assert_eq!(t.cycles.len(), 1);
        assert_eq!(t.cycles[0].len(), 3);
        let d = split_union(&fixtures::hopf(), &fixtures::unknot());
        let t = trace_components(&d).unwrap();
        assert_eq!(t.cycles.len(), 3);
        assert_eq!(t.cycles.iter().map(|c| c.len()).sum::<usize>(), d.arcs.len());
    }

    #[test]
    fn kink_on_unknot() {
        let d = insert_trivial_crossing(&fixtures::unknot(), "c", 1).unwrap();
        assert_eq!(d.arcs.len(), 1);
        assert_eq!(d.crossings.len(), 1);
        let c = &d.crossings[0];
        assert_eq!(c.over, "c");
        assert_eq!(c.under_in, "c");
        assert_eq!(c.under_out, "c");
        assert!(validate(&d).is_empty());
    }

    #[test]
    fn double_kink_alternates() {
        let d = insert_trivial_crossing(&fixtures::unknot(), "c", 1).unwrap();
        let d = insert_trivial_crossing(&d, "c", -1).unwrap();
        assert_eq!(d.crossings.len(), 2);
        assert_eq!(d.arcs.len(), 2);
        assert!(is_alternating_writhes(&d));
    }

    #[test]
    fn make_alternating_outputs_satisfy_predicate() {
        for d in fixtures::corpus() {
            let alt = make_alternating(&d.diagram).unwrap();
            assert!(is_alternating_writhes(&alt), "fixture {}", d.name);
            assert!(validate(&alt).is_empty());
        }
        let unknot_alt = make_alternating(&fixtures::unknot()).unwrap();
        assert_eq!(unknot_alt.crossings.len(), 2);
        let ws: Vec<i8> = unknot_alt.crossings.iter().map(|c| c.writhe).collect();
        assert_eq!(ws.iter().sum::<i8>(), 0);
    }

    #[test]
    fn make_alternating_fixed_point() {
        let alt = make_alternating(&fixtures::unknot()).unwrap();
        let again = make_alternating(&alt).unwrap();
        assert_eq!(alt, again);
    }

    #[test]
    fn split_union_counts() {
        let hu = split_union(&fixtures::hopf(), &fixtures::unknot());
        assert_eq!((hu.mu, hu.arcs.len(), hu.crossings.len()), (3, 3, 2));
        let tu = split_union(&fixtures::trefoil(), &fixtures::unknot());
        assert_eq!((tu.mu, tu.arcs.len(), tu.crossings.len()), (2, 4, 3));
        let hh = split_union(&fixtures::hopf(), &fixtures::hopf());
        assert_eq!((hh.mu, hh.arcs.len(), hh.crossings.len()), (4, 4, 4));
    }

    #[test]
    fn r1_inverse_undoes_kink() {
        let d0 = fixtures::trefoil();
        let d1 = insert_trivial_crossing(&d0, "a", -1).unwrap();
        let kink = d1.crossings.last().unwrap().id.clone();
        let d2 = r1_inverse(&d1, &kink).unwrap();
        assert_eq!(d2.arcs.len(), d0.arcs.len());
        assert_eq!(d2.crossings.len(), d0.crossings.len());
        assert!(validate(&d2).is_empty());
    }

    #[test]
    fn r2_then_r2_inverse_is_identity_up_to_relabel() {
        let d0 = fixtures::trefoil();
        let d1 = r2_slide(&d0, "a", "b", 1).unwrap();
        assert!(validate(&d1).is_empty());
        assert_eq!(d1.crossings.len(), d0.crossings.len() + 2);
        let new: Vec<&Crossing> =
            d1.crossings.iter().filter(|c| c.id.starts_with("q.")).collect();
        let d2 = r2_inverse(&d1, &new[0].id, &new[1].id).unwrap();
        assert_eq!(d2.arcs.len(), d0.arcs.len());
        assert_eq!(d2.crossings.len(), d0.crossings.len());
        assert!(validate(&d2).is_empty());
    }

    #[test]
    fn pd_import_trefoil() {
        let d = parse_pd_code("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(d.mu, 1);
        assert_eq!(d.arcs.len(), 3);
        assert_eq!(d.crossings.len(), 3);
        assert!(validate(&d).is_empty());
        assert!(d.crossings.iter().all(|c| c.writhe == -1));
    }

    #[test]
    fn pd_import_hopf() {
        let d = parse_pd_code("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(d.mu, 2);
        assert_eq!(d.arcs.len(), 2);
        assert!(validate(&d).is_empty());
    }

    #[test]
    fn pd_rejects_garbage() {
        assert!(parse_pd_code("X[1,2,3]").is_err());
        assert!(parse_pd_code("Y[1,2,3,4]").is_err());
        assert!(parse_pd_code("X[1,3,2,4] X[3,1,4,5]").is_err());
    }

    #[test]
    fn fuzz_moves_stay_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for d in fixtures::corpus() {
            let (out, moves) = random_moves(&d.diagram, 12, &mut rng).unwrap();
            assert!(validate(&out).is_empty(), "fixture {} moves {:?}", d.name, moves);
        }
    }
}
