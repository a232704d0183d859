//! Text syntax for group descriptors.
//!
//! ```text
//! cyclic:M | dihedral:M | quaternion:M | semidihedral:M | modular:M
//! elementary:P^K | product:(D1,D2) | file:PATH
//! ```
//!
//! `M` is always the total order. Inside a product a file path ends at the
//! first `,` or `)`.

use std::path::PathBuf;

use powcov_core::GroupDescriptor;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid descriptor `{input}` at position {position}: {message}")]
pub struct ParseError {
    pub input: String,
    /// Byte offset of the offending token.
    pub position: usize,
    pub message: String,
}

pub fn parse_descriptor(text: &str) -> Result<GroupDescriptor, ParseError> {
    let mut p = Parser { text, pos: 0, depth: 0 };
    let d = p.descriptor()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error(p.pos, "unexpected trailing input"));
    }
    Ok(d)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.text.to_string(),
            position,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected `{c}`")))
        }
    }

    fn number(&mut self) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error(start, "expected a non-negative integer"));
        }
        self.pos += len;
        let value = self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error(start, "integer too large"))?;
        Ok((value, start))
    }

    fn descriptor(&mut self) -> Result<GroupDescriptor, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_alphabetic).count();
        let kind = self.text[start..start + len].to_ascii_lowercase();
        self.pos += len;
        if len == 0 {
            return Err(self.error(start, "expected a group kind"));
        }
        self.expect(':')?;
        use GroupDescriptor::*;
        let d = match kind.as_str() {
            "cyclic" | "dihedral" | "quaternion" | "semidihedral" | "modular" => {
                let (m, at) = self.number()?;
                let d = match kind.as_str() {
                    "cyclic" => Cyclic(m),
                    "dihedral" => Dihedral(m),
                    "quaternion" => Quaternion(m),
                    "semidihedral" => Semidihedral(m),
                    _ => Modular(m),
                };
                self.check(&d, at)?;
                d
            }
            "elementary" => {
                let (p, at) = self.number()?;
                self.expect('^')?;
                let (rank, rank_at) = self.number()?;
                let rank = u32::try_from(rank).map_err(|_| self.error(rank_at, "rank too large"))?;
                let d = ElementaryAbelian { p, rank };
                self.check(&d, at)?;
                d
            }
            "product" => {
                self.expect('(')?;
                self.depth += 1;
                let a = self.descriptor()?;
                self.expect(',')?;
                let b = self.descriptor()?;
                self.expect(')')?;
                self.depth -= 1;
                DirectProduct(Box::new(a), Box::new(b))
            }
            "file" => {
                let at = self.pos;
                let len = if self.depth == 0 {
                    self.rest().len()
                } else {
                    self.rest().find([',', ')']).unwrap_or(self.rest().len())
                };
                let path = self.text[at..at + len].trim();
                if path.is_empty() {
                    return Err(self.error(at, "expected a file path"));
                }
                self.pos += len;
                File(PathBuf::from(path))
            }
            _ => {
                return Err(self.error(
                    start,
                    format!(
                        "unknown group kind `{kind}` (expected cyclic, dihedral, quaternion, \
                         semidihedral, modular, elementary, product or file)"
                    ),
                ))
            }
        };
        Ok(d)
    }

    fn check(&self, d: &GroupDescriptor, at: usize) -> Result<(), ParseError> {
        d.validate().map_err(|e| match e {
            powcov_core::GroupError::Descriptor { reason, .. } => self.error(at, reason),
            other => self.error(at, other.to_string()),
        })
    }
}
