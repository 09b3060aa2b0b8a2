//! Diagram families built from planar port connections.

use alloc::vec;
use alloc::vec::Vec;

use super::{ArcId, ComponentId, Diagram, DiagramError, Sign};

/// Crossings as four ports in counterclockwise order; ports 0 and 2 carry the
/// under strand, 1 and 3 the over strand. Edges are undirected port pairs and
/// components are oriented by the order they are first walked.
struct PlanarBuilder {
    link: Vec<Option<usize>>,
    circles: usize,
    starts: Vec<usize>,
}

struct Built {
    diagram: Diagram,
    /// Label of the first edge walked from each start port.
    start_labels: Vec<u32>,
    circle_labels: Vec<u32>,
}

impl PlanarBuilder {
    fn new() -> Self {
        PlanarBuilder { link: Vec::new(), circles: 0, starts: Vec::new() }
    }

    fn add_crossing(&mut self) -> [usize; 4] {
        let base = self.link.len();
        self.link.extend([None; 4]);
        [base, base + 1, base + 2, base + 3]
    }

    fn connect(&mut self, a: usize, b: usize) {
        debug_assert!(self.link[a].is_none() && self.link[b].is_none());
        self.link[a] = Some(b);
        self.link[b] = Some(a);
    }

    fn add_circle(&mut self) {
        self.circles += 1;
    }

    /// Walk a component starting by leaving through `port`.
    fn start_at(&mut self, port: usize) {
        self.starts.push(port);
    }

    fn build(self) -> Result<Built, DiagramError> {
        let ports = self.link.len();
        let link: Vec<usize> = self.link.iter().map(|p| p.expect("unconnected port")).collect();
        let mut label = vec![0u32; ports];
        let mut entered = vec![false; ports];
        let mut next = 1u32;
        let mut start_labels = Vec::new();
        let order = self.starts.iter().copied().chain(0..ports);
        for (k, start) in order.enumerate() {
            if label[start] != 0 {
                if k < self.starts.len() {
                    start_labels.push(label[start]);
                }
                continue;
            }
            if k < self.starts.len() {
                start_labels.push(next);
            }
            let mut exit = start;
            loop {
                let entry = link[exit];
                label[exit] = next;
                label[entry] = next;
                entered[entry] = true;
                next += 1;
                exit = entry - entry % 4 + (entry % 4 + 2) % 4;
                if exit == start {
                    break;
                }
            }
        }

        let crossing_count = ports / 4;
        let mut crossings = Vec::with_capacity(crossing_count);
        let mut signs = Vec::with_capacity(crossing_count);
        for c in 0..crossing_count {
            let l = |i: usize| label[4 * c + i];
            let under_first = entered[4 * c];
            let slots = if under_first { [l(0), l(1), l(2), l(3)] } else { [l(2), l(3), l(0), l(1)] };
            let over_port = if entered[4 * c + 1] { 1 } else { 3 };
            let over_slot = if under_first { over_port } else { (over_port + 2) % 4 };
            signs.push(if over_slot == 3 { Sign::Positive } else { Sign::Negative });
            crossings.push(slots);
        }
        let circle_labels: Vec<u32> = (0..self.circles as u32).map(|i| next + i).collect();
        let diagram = Diagram::from_pd_with_signs(crossings, circle_labels.clone(), &signs)?;
        Ok(Built { diagram, start_labels, circle_labels })
    }
}

struct BraidBuilt {
    diagram: Diagram,
    /// Component of the strand starting at each bottom position.
    position_components: Vec<ComponentId>,
    /// First arc of each position's strand, walking up from the bottom.
    position_arcs: Vec<ArcId>,
}

fn braid_closure_detailed(strands: usize, word: &[i32]) -> Result<BraidBuilt, DiagramError> {
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= strands {
            return Err(DiagramError::InvalidBraid { generator: g, strands });
        }
    }
    if strands == 0 {
        return Err(DiagramError::Empty);
    }
    let mut b = PlanarBuilder::new();
    let mut first_entry: Vec<Option<usize>> = vec![None; strands];
    let mut last_exit: Vec<Option<usize>> = vec![None; strands];
    for &g in word {
        let i = g.unsigned_abs() as usize;
        let p = b.add_crossing();
        // (sw, se, nw, ne): the strand over-crossing runs sw-ne for positive letters.
        let (sw, se, nw, ne) = if g > 0 { (p[3], p[0], p[2], p[1]) } else { (p[0], p[1], p[3], p[2]) };
        for (pos, entry, exit) in [(i - 1, sw, nw), (i, se, ne)] {
            match last_exit[pos] {
                Some(x) => b.connect(x, entry),
                None => first_entry[pos] = Some(entry),
            }
            last_exit[pos] = Some(exit);
        }
    }
    // Positions entered after the permutation: strand at bottom position p.
    let mut circle_positions = Vec::new();
    for pos in 0..strands {
        match (last_exit[pos], first_entry[pos]) {
            (Some(x), Some(e)) => {
                b.connect(x, e);
                b.start_at(x);
            }
            _ => {
                circle_positions.push(pos);
                b.add_circle();
            }
        }
    }
    let built = b.build()?;
    let d = built.diagram;
    let mut position_components = vec![ComponentId(0); strands];
    let mut position_arcs = vec![ArcId(0); strands];
    let mut starts = built.start_labels.iter();
    let mut circles = built.circle_labels.iter();
    for pos in 0..strands {
        let label = if circle_positions.contains(&pos) {
            *circles.next().expect("circle label")
        } else {
            *starts.next().expect("start label")
        };
        position_components[pos] = d.edge_component(label);
        position_arcs[pos] = d.edge_arc(label);
    }
    Ok(BraidBuilt { diagram: d, position_components, position_arcs })
}

/// Closure of a braid word on `strands` strands. Letter `i` is the generator
/// crossing positions `i-1` and `i` (positive), `-i` its inverse. Strands are
/// oriented upward.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, DiagramError> {
    braid_closure_detailed(strands, word).map(|b| b.diagram)
}

/// The two-strand torus link `T(2, q)`: the closure of `q` equal twists.
pub fn generate_torus_two_strand(q: u32) -> Result<Diagram, DiagramError> {
    if q == 0 {
        return Err(DiagramError::InvalidTwists);
    }
    braid_closure(2, &vec![1; q as usize])
}

/// The pretzel link with the given twist counts: vertical columns of
/// half-twists joined side by side in a ring.
pub fn generate_pretzel(twists: &[i32]) -> Result<Diagram, DiagramError> {
    if twists.is_empty() || twists.contains(&0) {
        return Err(DiagramError::InvalidTwists);
    }
    let mut b = PlanarBuilder::new();
    // (top-left, top-right, bottom-left, bottom-right) of each column
    let mut columns = Vec::new();
    for &t in twists {
        let mut column: Vec<[usize; 4]> = Vec::new();
        for _ in 0..t.unsigned_abs() {
            let p = b.add_crossing();
            // (nw, sw, se, ne)
            let corners = if t > 0 { [p[3], p[0], p[1], p[2]] } else { [p[2], p[3], p[0], p[1]] };
            if let Some(prev) = column.last() {
                b.connect(prev[1], corners[0]);
                b.connect(prev[2], corners[3]);
            }
            column.push(corners);
        }
        let top = column[0];
        let bottom = column[column.len() - 1];
        columns.push((top[0], top[3], bottom[1], bottom[2]));
    }
    let k = columns.len();
    for i in 0..k {
        let (_, tr, _, br) = columns[i];
        let (tl, _, bl, _) = columns[(i + 1) % k];
        b.connect(tr, tl);
        b.connect(br, bl);
    }
    b.build().map(|built| built.diagram)
}

/// A round component wrapped by twist boxes and closed by a braid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormSpec {
    /// Full twists of each closure strand around the round component.
    pub twists: Vec<i32>,
    /// Braid word on the closure strands (letters `±1..=±(k-1)`).
    pub closure: Vec<i32>,
}

#[derive(Clone, Debug)]
pub struct StandardForm {
    pub diagram: Diagram,
    pub round: ComponentId,
    /// An arc of the round component.
    pub alpha: ArcId,
    /// Components made by the closure strands, in order of first position.
    pub closure_components: Vec<ComponentId>,
    /// First arc of each closure component.
    pub betas: Vec<ArcId>,
}

pub fn generate_standard_form(spec: &StandardFormSpec) -> Result<StandardForm, DiagramError> {
    let k = spec.twists.len();
    for &g in &spec.closure {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= k {
            return Err(DiagramError::InvalidBraid { generator: g, strands: k });
        }
    }
    if k == 0 {
        let diagram = Diagram::from_pd(Vec::new(), vec![1])?;
        return Ok(StandardForm {
            diagram,
            round: ComponentId(0),
            alpha: ArcId(0),
            closure_components: Vec::new(),
            betas: Vec::new(),
        });
    }

    // Passes of each closure component through the twist boxes.
    let mut perm: Vec<usize> = (0..k).collect();
    for &g in &spec.closure {
        let i = g.unsigned_abs() as usize;
        perm.swap(i - 1, i);
    }
    // perm[p] = strand at top position p; cycles follow position -> position.
    let mut top_of = vec![0; k];
    for (p, &s) in perm.iter().enumerate() {
        top_of[s] = p;
    }
    let mut cycle = vec![usize::MAX; k];
    let mut ncycles = 0;
    for s in 0..k {
        if cycle[s] != usize::MAX {
            continue;
        }
        let mut passes = 0u64;
        let mut p = s;
        while cycle[p] == usize::MAX {
            cycle[p] = ncycles;
            passes += u64::from(spec.twists[p].unsigned_abs());
            p = top_of[p];
        }
        if passes % 2 == 1 {
            return Err(DiagramError::OddPasses { component: ncycles, passes });
        }
        ncycles += 1;
    }

    let mut word = Vec::new();
    for (idx, &t) in spec.twists.iter().enumerate() {
        let j = idx as i32 + 1;
        if t == 0 {
            continue;
        }
        word.extend((2..=j).rev());
        word.extend(core::iter::repeat_n(t.signum(), 2 * t.unsigned_abs() as usize));
        word.extend((2..=j).map(|g| -g));
    }
    word.extend(spec.closure.iter().map(|&g| g.signum() * (g.abs() + 1)));

    let built = braid_closure_detailed(k + 1, &word)?;
    let mut closure_components = Vec::new();
    let mut betas = Vec::new();
    for pos in 1..=k {
        let c = built.position_components[pos];
        if !closure_components.contains(&c) {
            closure_components.push(c);
            betas.push(built.position_arcs[pos]);
        }
    }
    Ok(StandardForm {
        round: built.position_components[0],
        alpha: built.position_arcs[0],
        diagram: built.diagram,
        closure_components,
        betas,
    })
}
