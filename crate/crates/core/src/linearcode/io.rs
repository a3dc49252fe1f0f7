//! Generator-matrix import and export.
//!
//! The text format is a header line followed by one row per line:
//!
//! ```text
//! # p=2 r=1 m=3 level=prime n=7
//! 1 0 0 0 0 1 1
//! ```
//!
//! Entries are top-field element indices. Blank lines and further `#` lines are ignored.

use serde::{Deserialize, Serialize};

use super::LinearCode;
use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx, Level};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub p: u32,
    pub r: u32,
    pub m: u32,
    /// Modulus of the top field, constant term first; checked on import when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub level: Level,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

fn level_name(level: Level) -> &'static str {
    match level {
        Level::Prime => "prime",
        Level::Sub => "sub",
        Level::Top => "top",
    }
}

fn parse_err(input: &str, pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { input: input.to_string(), pos, msg: msg.into() }
}

impl LinearCode {
    pub fn to_generator_json(&self) -> GeneratorJson {
        let ctx = self.ctx();
        GeneratorJson {
            p: ctx.p(),
            r: ctx.r(),
            m: ctx.m(),
            modulus: Some(ctx.modulus().to_vec()),
            level: self.level(),
            n: self.n(),
            rows: self.generator().iter().map(|r| r.iter().map(|x| x.0).collect()).collect(),
        }
    }

    pub fn from_generator_json(g: &GeneratorJson) -> Result<LinearCode> {
        let ctx = FieldCtx::new(g.p, g.r, g.m)?;
        if let Some(modulus) = &g.modulus {
            if modulus.as_slice() != ctx.modulus() {
                return Err(Error::InvalidParams(format!(
                    "modulus {modulus:?} differs from the canonical {:?}",
                    ctx.modulus()
                )));
            }
        }
        let size = ctx.size();
        let mut rows = Vec::with_capacity(g.rows.len());
        for row in &g.rows {
            if let Some(&bad) = row.iter().find(|&&x| x >= size) {
                return Err(Error::InvalidParams(format!("element index {bad} outside a field of size {size}")));
            }
            rows.push(row.iter().map(|&x| Elem(x)).collect());
        }
        LinearCode::from_rows(&ctx, g.level, g.n, rows)
    }

    pub fn to_text(&self) -> String {
        let ctx = self.ctx();
        let mut s = format!(
            "# p={} r={} m={} level={} n={}\n",
            ctx.p(),
            ctx.r(),
            ctx.m(),
            level_name(self.level()),
            self.n()
        );
        for row in self.generator() {
            let line: Vec<String> = row.iter().map(|x| x.0.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<LinearCode> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| parse_err(text, 0, "empty input"))?;
        let body = header
            .strip_prefix('#')
            .ok_or_else(|| parse_err(header, 0, "expected a '# p=.. r=.. m=.. level=.. n=..' header"))?;
        let (mut p, mut r, mut m, mut level, mut n) = (None, Some(1), Some(1), Some(Level::Prime), None);
        for tok in body.split_whitespace() {
            let pos = header.find(tok).unwrap_or(0);
            let (key, val) = tok.split_once('=').ok_or_else(|| parse_err(header, pos, "expected key=value"))?;
            let num = || val.parse::<u32>().map_err(|_| parse_err(header, pos, format!("bad number {val:?}")));
            match key {
                "p" => p = Some(num()?),
                "r" => r = Some(num()?),
                "m" => m = Some(num()?),
                "n" => n = Some(num()? as usize),
                "level" => {
                    level = Some(match val {
                        "prime" => Level::Prime,
                        "sub" => Level::Sub,
                        "top" => Level::Top,
                        _ => return Err(parse_err(header, pos, format!("unknown level {val:?}"))),
                    })
                }
                _ => return Err(parse_err(header, pos, format!("unknown key {key:?}"))),
            }
        }
        let p = p.ok_or_else(|| parse_err(header, 0, "missing p"))?;
        let mut rows = Vec::new();
        for line in lines.filter(|l| !l.starts_with('#')) {
            let row: std::result::Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
            rows.push(row.map_err(|_| parse_err(line, 0, "expected element indices"))?);
        }
        let n = match n {
            Some(n) => n,
            None => rows.first().map_or(0, Vec::len),
        };
        let g = GeneratorJson { p, r: r.unwrap_or(1), m: m.unwrap_or(1), modulus: None, level: level.unwrap_or(Level::Prime), n, rows };
        Self::from_generator_json(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let text = "# p=2 r=1 m=3 level=prime n=7\n1 0 0 0 0 1 1\n0 1 0 0 1 0 1\n";
        let c = LinearCode::from_text(text).unwrap();
        assert_eq!((c.n(), c.k()), (7, 2));
        assert_eq!(c.to_text(), text);
        assert_eq!(LinearCode::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn json_roundtrip() {
        let ctx = FieldCtx::new(3, 1, 2).unwrap();
        let c = LinearCode::from_rows(&ctx, Level::Top, 3, vec![vec![Elem(1), Elem(5), Elem(7)]]).unwrap();
        let json = serde_json::to_string(&c.to_generator_json()).unwrap();
        let back: GeneratorJson = serde_json::from_str(&json).unwrap();
        assert_eq!(LinearCode::from_generator_json(&back).unwrap(), c);
    }

    #[test]
    fn header_errors_carry_position() {
        let err = LinearCode::from_text("# p=2 q=4\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 6, .. }));
    }
}
