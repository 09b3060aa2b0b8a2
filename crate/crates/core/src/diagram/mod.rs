//! Oriented link diagrams in planar-diagram (PD) notation.
//!
//! A crossing is written `X[a,b,c,d]`: the four edge labels around it,
//! counterclockwise, starting from the incoming under edge. A crossing-free
//! circle is written `O[i]`. Labels run over `1..=N` and each label names a
//! PD *edge* (a piece of strand between two crossings).
//!
//! The unit that receives a color is an *arc*: a maximal run of edges along
//! a component that is only interrupted where the strand passes under. Arcs
//! are numbered from 0 in order of first appearance along the components.
//!
//! Orientation is read from the under strands (`a` runs into `c`). A
//! component that never passes under falls back to increasing labels. A
//! crossing is positive when the over strand leaves through slot `b`.

mod generate;
mod text;
mod transform;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub use generate::{
    braid_closure, generate_pretzel, generate_standard_form, generate_torus_two_strand, StandardForm, StandardFormSpec,
};
pub use text::parse_link_text;
pub use transform::{reverse_component_orientation, sublink};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed token at byte {position}: {found:?}")]
    MalformedToken { position: usize, found: String },
    #[error("diagram has no crossings and no circles")]
    Empty,
    #[error("arc label 0 is not allowed")]
    ZeroLabel,
    #[error("arc {arc} appears {count} times")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error("inconsistent strand traversal through arc {arc}")]
    InconsistentTraversal { arc: u32 },
    #[error("components {0} and {1} cross an odd number of times")]
    OddInterComponentCrossings(usize, usize),
    #[error("component index {0} out of range")]
    NoSuchComponent(usize),
    #[error("sublink must keep at least one component")]
    EmptySublink,
    #[error("twist sequence must be nonempty with nonzero entries")]
    InvalidTwists,
    #[error("braid generator {generator} is invalid on {strands} strands")]
    InvalidBraid { generator: i32, strands: usize },
    #[error("closure component {component} makes an odd number ({passes}) of passes through the twist boxes")]
    OddPasses { component: usize, passes: u64 },
}

/// Sign of an oriented crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
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

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId(pub usize);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Raw PD crossing: edge labels counterclockwise from the incoming under edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [u32; 4],
}

/// A passage of a component through a crossing, entering at `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pass {
    pub crossing: usize,
    pub slot: usize,
}

impl Pass {
    pub fn is_under(&self) -> bool {
        self.slot.is_multiple_of(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Edge labels in orientation order, starting from the smallest.
    pub edges: Vec<u32>,
    /// `passes[i]` is the crossing passage right after `edges[i]`.
    pub passes: Vec<Pass>,
    pub arcs: Vec<ArcId>,
    pub circle: bool,
}

/// Arcs and sign at one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingArcs {
    pub over: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    circles: Vec<u32>,
    edge_count: u32,
    components: Vec<Component>,
    edge_component: Vec<ComponentId>,
    edge_arc: Vec<ArcId>,
    arc_component: Vec<ComponentId>,
    arc_edges: Vec<Vec<u32>>,
    crossing_arcs: Vec<CrossingArcs>,
}

impl Diagram {
    /// Validates PD data and derives orientation, arcs and signs.
    pub fn from_pd(crossings: Vec<[u32; 4]>, circles: Vec<u32>) -> Result<Diagram, DiagramError> {
        build(crossings.into_iter().map(|slots| Crossing { slots }).collect(), circles)
    }

    /// As [`Diagram::from_pd`], but for programmatically assembled data whose
    /// crossing signs are known: components that never pass under and have
    /// only two edges cannot be oriented from labels alone, and their two
    /// labels are exchanged where the derived signs disagree.
    pub(crate) fn from_pd_with_signs(
        mut crossings: Vec<[u32; 4]>,
        circles: Vec<u32>,
        expected: &[Sign],
    ) -> Result<Diagram, DiagramError> {
        let d = Self::from_pd(crossings.clone(), circles.clone())?;
        let wrong = |c: &Component| c.passes.iter().any(|p| d.crossing_arcs[p.crossing].sign != expected[p.crossing]);
        let swaps: Vec<(u32, u32)> = d
            .components
            .iter()
            .filter(|c| wrong(c) && c.passes.len() == 2 && c.passes.iter().all(|p| !p.is_under()))
            .map(|c| (c.edges[0], c.edges[1]))
            .collect();
        if swaps.is_empty() {
            assert!(
                (0..expected.len()).all(|x| d.crossing_arcs[x].sign == expected[x]),
                "sign mismatch that is not an orientation ambiguity"
            );
            return Ok(d);
        }
        for slots in crossings.iter_mut() {
            for l in slots.iter_mut() {
                for &(e, f) in &swaps {
                    if *l == e {
                        *l = f;
                    } else if *l == f {
                        *l = e;
                    }
                }
            }
        }
        let d = Self::from_pd(crossings, circles)?;
        assert!(
            (0..expected.len()).all(|x| d.crossing_arcs[x].sign == expected[x]),
            "could not realize the requested orientation"
        );
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn circles(&self) -> &[u32] {
        &self.circles
    }

    /// Number of PD labels, circles included.
    pub fn edge_count(&self) -> u32 {
        self.edge_count
    }

    pub fn arc_count(&self) -> usize {
        self.arc_component.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, c: ComponentId) -> &Component {
        &self.components[c.0]
    }

    pub fn component_ids(&self) -> impl Iterator<Item = ComponentId> {
        (0..self.components.len()).map(ComponentId)
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> {
        (0..self.arc_component.len()).map(ArcId)
    }

    pub fn arc_component(&self, a: ArcId) -> ComponentId {
        self.arc_component[a.0]
    }

    pub fn arc_edges(&self, a: ArcId) -> &[u32] {
        &self.arc_edges[a.0]
    }

    pub fn edge_component(&self, label: u32) -> ComponentId {
        self.edge_component[label as usize - 1]
    }

    pub fn edge_arc(&self, label: u32) -> ArcId {
        self.edge_arc[label as usize - 1]
    }

    pub fn crossing_arcs(&self) -> &[CrossingArcs] {
        &self.crossing_arcs
    }

    pub fn sign(&self, crossing: usize) -> Sign {
        self.crossing_arcs[crossing].sign
    }

    /// Components of the over and under strands at a crossing.
    pub fn crossing_components(&self, crossing: usize) -> (ComponentId, ComponentId) {
        let c = &self.crossing_arcs[crossing];
        (self.arc_component(c.over), self.arc_component(c.under_in))
    }

    /// PD text, `X[..]` tokens in order followed by `O[..]` tokens.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for c in &self.crossings {
            if !out.is_empty() {
                out.push(' ');
            }
            let [a, b, cc, d] = c.slots;
            let _ = write!(out, "X[{a},{b},{cc},{d}]");
        }
        for o in &self.circles {
            if !out.is_empty() {
                out.push(' ');
            }
            let _ = write!(out, "O[{o}]");
        }
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn build(crossings: Vec<Crossing>, circles: Vec<u32>) -> Result<Diagram, DiagramError> {
    if crossings.is_empty() && circles.is_empty() {
        return Err(DiagramError::Empty);
    }
    let labels = crossings.iter().flat_map(|c| c.slots).chain(circles.iter().copied());
    let mut max = 0;
    for l in labels {
        if l == 0 {
            return Err(DiagramError::ZeroLabel);
        }
        max = max.max(l);
    }
    let n = max as usize;

    let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (ci, c) in crossings.iter().enumerate() {
        for (s, &l) in c.slots.iter().enumerate() {
            occurrences[l as usize].push((ci, s));
        }
    }
    let mut circle_count = vec![0usize; n + 1];
    for &o in &circles {
        circle_count[o as usize] += 1;
    }
    for l in 1..=n {
        let (k, o) = (occurrences[l].len(), circle_count[l]);
        let ok = (o == 0 && k == 2) || (o == 1 && k == 0);
        if !ok {
            return Err(DiagramError::ArcMultiplicity { arc: l as u32, count: k + o });
        }
    }

    let mut visited = vec![false; n + 1];
    let mut components = Vec::new();
    for start in 1..=n {
        if visited[start] {
            continue;
        }
        if circle_count[start] == 1 {
            visited[start] = true;
            components.push(Component {
                edges: vec![start as u32],
                passes: Vec::new(),
                arcs: Vec::new(),
                circle: true,
            });
            continue;
        }
        let mut passes = trace(&crossings, &occurrences, start);
        for p in &passes {
            visited[crossings[p.crossing].slots[p.slot] as usize] = true;
        }
        orient(&crossings, &mut passes, start as u32)?;
        let entering = |p: &Pass| crossings[p.crossing].slots[p.slot];
        let min_at = (0..passes.len()).min_by_key(|&i| entering(&passes[i])).unwrap_or(0);
        passes.rotate_left(min_at);
        components.push(Component {
            edges: passes.iter().map(entering).collect(),
            passes,
            arcs: Vec::new(),
            circle: false,
        });
    }

    // Arcs: cut each component after every under passage.
    let mut edge_component = vec![ComponentId(0); n];
    let mut edge_arc = vec![ArcId(0); n];
    let mut arc_component = Vec::new();
    let mut arc_edges: Vec<Vec<u32>> = Vec::new();
    for (ci, comp) in components.iter_mut().enumerate() {
        let first = ArcId(arc_edges.len());
        arc_edges.push(Vec::new());
        arc_component.push(ComponentId(ci));
        comp.arcs.push(first);
        let mut current = first;
        let m = comp.edges.len();
        for i in 0..m {
            let e = comp.edges[i];
            arc_edges[current.0].push(e);
            edge_arc[e as usize - 1] = current;
            edge_component[e as usize - 1] = ComponentId(ci);
            let cut = comp.passes.get(i).is_some_and(Pass::is_under);
            if cut && i + 1 < m {
                current = ArcId(arc_edges.len());
                arc_edges.push(Vec::new());
                arc_component.push(ComponentId(ci));
                comp.arcs.push(current);
            }
        }
        // The run after the last under passage continues into the first arc.
        let wraps = comp.passes.last().is_some_and(|p| !p.is_under());
        if wraps && current != first {
            let tail = arc_edges.pop().expect("tail arc");
            arc_component.pop();
            comp.arcs.pop();
            for &e in &tail {
                edge_arc[e as usize - 1] = first;
            }
            let mut merged = tail;
            merged.extend(core::mem::take(&mut arc_edges[first.0]));
            arc_edges[first.0] = merged;
        }
    }

    let mut crossing_arcs = Vec::with_capacity(crossings.len());
    let mut over_entry = vec![usize::MAX; crossings.len()];
    for comp in &components {
        for p in &comp.passes {
            if !p.is_under() {
                over_entry[p.crossing] = p.slot;
            }
        }
    }
    for (ci, c) in crossings.iter().enumerate() {
        let arc = |s: usize| edge_arc[c.slots[s] as usize - 1];
        let sign = if over_entry[ci] == 3 { Sign::Positive } else { Sign::Negative };
        crossing_arcs.push(CrossingArcs { over: arc(1), under_in: arc(0), under_out: arc(2), sign });
    }

    let mut pair_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for ca in &crossing_arcs {
        let (o, u) = (arc_component[ca.over.0].0, arc_component[ca.under_in.0].0);
        if o != u {
            *pair_counts.entry((o.min(u), o.max(u))).or_default() += 1;
        }
    }
    if let Some((&(i, j), _)) = pair_counts.iter().find(|(_, &k)| k % 2 == 1) {
        return Err(DiagramError::OddInterComponentCrossings(i, j));
    }

    Ok(Diagram {
        crossings,
        circles,
        edge_count: max,
        components,
        edge_component,
        edge_arc,
        arc_component,
        arc_edges,
        crossing_arcs,
    })
}

/// Follows a strand from the first occurrence of `start`, treating it as the
/// edge entering that crossing.
fn trace(crossings: &[Crossing], occurrences: &[Vec<(usize, usize)>], start: usize) -> Vec<Pass> {
    let first = occurrences[start][0];
    let mut passes = Vec::new();
    let mut entry = first;
    loop {
        let (c, s) = entry;
        passes.push(Pass { crossing: c, slot: s });
        let exit = (c, (s + 2) % 4);
        let label = crossings[c].slots[exit.1] as usize;
        let occ = &occurrences[label];
        entry = if occ[0] == exit { occ[1] } else { occ[0] };
        if entry == first {
            return passes;
        }
    }
}

fn reverse(passes: &mut [Pass]) {
    passes.reverse();
    for p in passes.iter_mut() {
        p.slot = (p.slot + 2) % 4;
    }
}

fn orient(crossings: &[Crossing], passes: &mut [Pass], start: u32) -> Result<(), DiagramError> {
    let forward = passes.iter().filter(|p| p.slot == 0).count();
    let backward = passes.iter().filter(|p| p.slot == 2).count();
    if forward > 0 && backward > 0 {
        return Err(DiagramError::InconsistentTraversal { arc: start });
    }
    if backward > 0 {
        reverse(passes);
        return Ok(());
    }
    if forward > 0 {
        return Ok(());
    }
    // Never passes under: follow increasing labels.
    let m = passes.len();
    let entering = |p: &Pass| crossings[p.crossing].slots[p.slot];
    let i0 = (0..m).min_by_key(|&i| entering(&passes[i])).unwrap_or(0);
    let flip = match m {
        0 | 1 => false,
        2 => {
            // Both neighbours of the smallest label coincide; the smaller
            // label enters the earlier-listed crossing.
            let other = (i0 + 1) % 2;
            passes[i0].crossing > passes[other].crossing
        }
        _ => {
            let succ = entering(&passes[(i0 + 1) % m]);
            let pred = entering(&passes[(i0 + m - 1) % m]);
            succ > pred
        }
    };
    if flip {
        reverse(passes);
    }
    Ok(())
}
