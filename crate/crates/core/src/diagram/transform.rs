use alloc::vec;
use alloc::vec::Vec;

use super::{ComponentId, Diagram, DiagramError};

/// Deletes every component not in `keep`, merging the edges that met at the
/// removed crossings. Kept components are relabelled consecutively in their
/// original order; surviving crossings keep their relative order.
pub fn sublink(d: &Diagram, keep: &[ComponentId]) -> Result<Diagram, DiagramError> {
    let mut kept = vec![false; d.component_count()];
    for c in keep {
        if c.0 >= kept.len() {
            return Err(DiagramError::NoSuchComponent(c.0));
        }
        kept[c.0] = true;
    }
    if !kept.iter().any(|&k| k) {
        return Err(DiagramError::EmptySublink);
    }
    if kept.iter().all(|&k| k) {
        return Ok(d.clone());
    }

    let crossing_kept: Vec<bool> = (0..d.crossing_count())
        .map(|x| {
            let (o, u) = d.crossing_components(x);
            kept[o.0] && kept[u.0]
        })
        .collect();

    let mut relabel = vec![0u32; d.edge_count() as usize + 1];
    let mut circles = Vec::new();
    let mut next = 1u32;
    for (ci, comp) in d.components().iter().enumerate() {
        if !kept[ci] {
            continue;
        }
        let k = comp.passes.iter().filter(|p| crossing_kept[p.crossing]).count() as u32;
        if k == 0 {
            for &e in &comp.edges {
                relabel[e as usize] = next;
            }
            circles.push(next);
            next += 1;
            continue;
        }
        let mut seen = 0u32;
        for (i, &e) in comp.edges.iter().enumerate() {
            relabel[e as usize] = next + seen % k;
            if crossing_kept[comp.passes[i].crossing] {
                seen += 1;
            }
        }
        next += k;
    }

    let mut crossings = Vec::new();
    let mut signs = Vec::new();
    for (x, c) in d.crossings().iter().enumerate() {
        if crossing_kept[x] {
            crossings.push(c.slots.map(|e| relabel[e as usize]));
            signs.push(d.sign(x));
        }
    }
    Diagram::from_pd_with_signs(crossings, circles, &signs)
}

/// Reverses one component's orientation, keeping its label set: the edges are
/// renumbered along the reversed traversal and crossings where it passes under
/// are rotated to start from the new incoming edge.
pub fn reverse_component_orientation(d: &Diagram, c: ComponentId) -> Result<Diagram, DiagramError> {
    if c.0 >= d.component_count() {
        return Err(DiagramError::NoSuchComponent(c.0));
    }
    let comp = d.component(c);
    let mut relabel: Vec<u32> = (0..=d.edge_count()).collect();
    let mut sorted = comp.edges.clone();
    sorted.sort_unstable();
    let m = comp.edges.len();
    for (j, &label) in sorted.iter().enumerate() {
        let old = comp.edges[(m - j) % m];
        relabel[old as usize] = label;
    }

    let mut crossings = Vec::new();
    let mut signs = Vec::new();
    for (x, cr) in d.crossings().iter().enumerate() {
        let mut slots = cr.slots.map(|e| relabel[e as usize]);
        let (o, u) = d.crossing_components(x);
        if u == c {
            slots.rotate_left(2);
        }
        crossings.push(slots);
        signs.push(if (o == c) != (u == c) { d.sign(x).flip() } else { d.sign(x) });
    }
    let circles = d.circles().to_vec();
    Diagram::from_pd_with_signs(crossings, circles, &signs)
}
