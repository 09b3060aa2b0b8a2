//! PD text: whitespace- or comma-separated `X[a,b,c,d]` and `O[i]` tokens,
//! optionally wrapped in `PD[...]`.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::{Diagram, DiagramError};

pub fn parse_link_text(text: &str) -> Result<Diagram, DiagramError> {
    let (crossings, circles) = tokens(text)?;
    Diagram::from_pd(crossings, circles)
}

fn tokens(text: &str) -> Result<(Vec<[u32; 4]>, Vec<u32>), DiagramError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut crossings = Vec::new();
    let mut circles = Vec::new();

    let skip = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || bytes[*pos] == b',') {
            *pos += 1;
        }
    };

    skip(&mut pos);
    let wrapped = text[pos..].starts_with("PD[");
    if wrapped {
        pos += 3;
    }
    loop {
        skip(&mut pos);
        if pos >= bytes.len() {
            if wrapped {
                return Err(malformed(text, pos));
            }
            break;
        }
        if wrapped && bytes[pos] == b']' {
            pos += 1;
            skip(&mut pos);
            if pos < bytes.len() {
                return Err(malformed(text, pos));
            }
            break;
        }
        let start = pos;
        let arity = match bytes[pos] {
            b'X' => 4,
            b'O' => 1,
            _ => return Err(malformed(text, start)),
        };
        pos += 1;
        if bytes.get(pos) != Some(&b'[') {
            return Err(malformed(text, start));
        }
        pos += 1;
        let close = text[pos..].find(']').ok_or_else(|| malformed(text, start))? + pos;
        let values: Result<Vec<u32>, _> = text[pos..close].split(',').map(|s| s.trim().parse::<u32>()).collect();
        let values = values.map_err(|_| malformed(text, start))?;
        if values.len() != arity {
            return Err(malformed(text, start));
        }
        if arity == 4 {
            crossings.push([values[0], values[1], values[2], values[3]]);
        } else {
            circles.push(values[0]);
        }
        pos = close + 1;
    }
    Ok((crossings, circles))
}

fn malformed(text: &str, position: usize) -> DiagramError {
    let found: alloc::string::String =
        text[position.min(text.len())..].split(|c: char| c.is_whitespace()).next().unwrap_or("").to_string();
    DiagramError::MalformedToken { position, found }
}
