//! Burmeister `.cxt` contexts (discrete orders only).
//!
//! ```text
//! B
//!
//! <|G|>
//! <|M|>
//!
//! <object names, one per line>
//! <attribute names, one per line>
//! <|G| rows of '.' and 'X'>
//! ```

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::order::Poset;

pub fn parse_context(text: &str) -> Result<FormalContext> {
    let lines: Vec<&str> = text.lines().collect();
    let at = |i: usize| -> Result<&str> {
        lines
            .get(i)
            .copied()
            .ok_or_else(|| Error::parse(format!("line {}", i + 1), "unexpected end of input"))
    };
    if at(0)?.trim() != "B" {
        return Err(Error::parse("line 1", "expected `B`"));
    }
    // Line 2 is a blank (some writers put a context name here; it is ignored).
    at(1)?;
    let count = |i: usize| -> Result<usize> {
        at(i)?
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("line {}", i + 1), "expected a count"))
    };
    let ng = count(2)?;
    let nm = count(3)?;
    if !at(4)?.trim().is_empty() {
        return Err(Error::parse("line 5", "expected a blank line"));
    }
    let mut line = 5;
    let mut take = |n: usize| -> Result<Vec<String>> {
        let names = (line..line + n)
            .map(|i| at(i).map(str::to_string))
            .collect::<Result<Vec<_>>>()?;
        line += n;
        Ok(names)
    };
    let objects = take(ng)?;
    let attributes = take(nm)?;
    let rows = take(ng)?;
    if let Some(extra) = lines[line..].iter().position(|l| !l.trim().is_empty()) {
        return Err(Error::parse(
            format!("line {}", line + extra + 1),
            "trailing content",
        ));
    }

    let mut pairs = Vec::new();
    for (g, row) in rows.iter().enumerate() {
        let row_line = 5 + ng + nm + g + 1;
        let row = row.trim_end();
        if row.chars().count() != nm {
            return Err(Error::parse(
                format!("line {row_line}"),
                format!("row has {} cells, expected {nm}", row.chars().count()),
            ));
        }
        for (m, ch) in row.chars().enumerate() {
            match ch {
                'X' => pairs.push((g, m)),
                '.' => {}
                other => {
                    return Err(Error::parse(
                        format!("line {row_line}, column {}", m + 1),
                        format!("unexpected `{other}` in matrix"),
                    ))
                }
            }
        }
    }
    let objects = Poset::discrete(objects).map_err(|e| Error::parse("objects", e.to_string()))?;
    let attributes =
        Poset::discrete(attributes).map_err(|e| Error::parse("attributes", e.to_string()))?;
    FormalContext::new(objects, attributes, pairs)
}

/// Writes the context; any object or attribute order is dropped.
pub fn emit_context(ctx: &FormalContext) -> String {
    let mut out = format!("B\n\n{}\n{}\n\n", ctx.num_objects(), ctx.num_attributes());
    for name in ctx.objects().names().iter().chain(ctx.attributes().names()) {
        out.push_str(name);
        out.push('\n');
    }
    for g in 0..ctx.num_objects() {
        for m in 0..ctx.num_attributes() {
            out.push(if ctx.has(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}
