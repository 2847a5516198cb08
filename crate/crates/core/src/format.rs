//! Text and record forms.
//!
//! Text grammar (whitespace is free between tokens):
//!
//! ```text
//! semigroup := "G(" int ("," int)* ")"
//! graph     := "sf(" "-" int (";" leg ("," leg)*)? ")"
//! leg       := (int ("x" | "×" | "*"))? "(" int "," int ")"
//! flat      := "flat(alpha=[" ints "], s=[" ints "])"
//! ```
//!
//! Records are JSON objects, see [`GraphRecord`], [`SemigroupRecord`] and
//! [`CertificateRecord`].

use serde::{Deserialize, Serialize};

use crate::arith::Int;
use crate::decomposition::QuotientCertificate;
use crate::error::{Error, Result};
use crate::flatness::FlatPresentation;
use crate::seifert::{SSRGraph, SeifertLeg};
use crate::semigroup::GeneratorSet;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn int(&mut self) -> Result<Int> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.rest().as_bytes();
        let mut len = 0;
        if matches!(bytes.first(), Some(b'-' | b'+')) {
            len = 1;
        }
        let digits = bytes[len..].iter().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        len += digits;
        let s = &self.rest()[..len];
        let v = s.parse::<Int>().map_err(|_| Error::parse(start, format!("integer `{s}` is out of range")))?;
        self.pos += len;
        Ok(v)
    }

    fn int_list(&mut self, close: &str) -> Result<Vec<Int>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

/// Parses `G(a,b,…)`.
pub fn parse_semigroup(text: &str) -> Result<GeneratorSet> {
    let mut c = Cursor::new(text);
    c.expect("G(")?;
    let start = c.pos;
    let gens = c.int_list(")")?;
    c.finish()?;
    if gens.is_empty() {
        return Err(Error::parse(start, "a semigroup needs at least one generator"));
    }
    GeneratorSet::from_ints(&gens)
}

/// Parses the `sf(…)` text form or a JSON graph record, then validates.
pub fn parse_graph(text: &str) -> Result<SSRGraph> {
    if text.trim_start().starts_with('{') {
        let rec: GraphRecord = serde_json::from_str(text).map_err(|e| json_error(text, &e))?;
        return rec.to_graph();
    }
    let mut c = Cursor::new(text);
    c.expect("sf(")?;
    let at = c.pos;
    let weight = c.int()?;
    let mut legs = Vec::new();
    if c.eat(";") {
        loop {
            legs.push(parse_leg(&mut c)?);
            if !c.eat(",") {
                break;
            }
        }
    }
    c.expect(")")?;
    c.finish()?;
    if weight > 0 {
        return Err(Error::parse(at, "the central weight is written -b0 with b0 >= 1"));
    }
    SSRGraph::new(-weight, legs)
}

fn parse_leg(c: &mut Cursor) -> Result<SeifertLeg> {
    let mut mult = 1;
    if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        mult = c.int()?;
        if !(c.eat("x") || c.eat("×") || c.eat("*")) {
            return Err(c.error("expected `x` after a leg multiplicity"));
        }
    }
    c.expect("(")?;
    let alpha = c.int()?;
    c.expect(",")?;
    let omega = c.int()?;
    c.expect(")")?;
    SeifertLeg::new(alpha, omega, mult)
}

/// Parses `flat(alpha=[…], s=[…])`.
pub fn parse_flat(text: &str) -> Result<FlatPresentation> {
    let mut c = Cursor::new(text);
    c.expect("flat(")?;
    c.expect("alpha")?;
    c.expect("=")?;
    c.expect("[")?;
    let alphas = c.int_list("]")?;
    c.expect(",")?;
    c.expect("s")?;
    c.expect("=")?;
    c.expect("[")?;
    let mults = c.int_list("]")?;
    c.expect(")")?;
    c.finish()?;
    FlatPresentation::new(alphas, mults)
}

/// Parses a comma separated integer list such as `2,3,5`.
pub fn parse_int_list(text: &str) -> Result<Vec<Int>> {
    let mut c = Cursor::new(text);
    let mut out = vec![c.int()?];
    while c.eat(",") {
        out.push(c.int()?);
    }
    c.finish()?;
    Ok(out)
}

pub fn render_semigroup(gens: &[u64]) -> String {
    let parts: Vec<String> = gens.iter().map(u64::to_string).collect();
    format!("G({})", parts.join(","))
}

fn json_error(text: &str, e: &serde_json::Error) -> Error {
    // serde_json reports 1-based line and column; convert to a byte offset
    let line_start: usize = text
        .split_inclusive('\n')
        .take(e.line().saturating_sub(1))
        .map(str::len)
        .sum();
    Error::parse(line_start + e.column().saturating_sub(1), e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegRecord {
    pub alpha: Int,
    pub omega: Int,
    pub mult: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub b0: Int,
    pub legs: Vec<LegRecord>,
}

impl GraphRecord {
    pub fn from_graph(g: &SSRGraph) -> Self {
        Self {
            b0: g.b0(),
            legs: g
                .legs()
                .iter()
                .map(|l| LegRecord {
                    alpha: l.alpha,
                    omega: l.omega,
                    mult: l.mult,
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<SSRGraph> {
        let legs = self
            .legs
            .iter()
            .map(|l| SeifertLeg::new(l.alpha, l.omega, l.mult))
            .collect::<Result<Vec<_>>>()?;
        SSRGraph::new(self.b0, legs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupRecord {
    pub generators: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatRecord {
    pub alpha: Vec<Int>,
    pub s: Vec<Int>,
}

impl FlatRecord {
    pub fn from_presentation(p: &FlatPresentation) -> Self {
        Self {
            alpha: p.alphas().to_vec(),
            s: p.mults().to_vec(),
        }
    }

    pub fn to_presentation(&self) -> Result<FlatPresentation> {
        FlatPresentation::new(self.alpha.clone(), self.s.clone())
    }
}

/// Certificate file form. The perturbed and canonical graphs are optional
/// for hand-written certificates; [`CertificateRecord::to_certificate`]
/// fills them in from `graph` and `flat`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub graph: GraphRecord,
    pub flat: FlatRecord,
    pub divisor: Int,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbed_graph: Option<GraphRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tilde_graph: Option<GraphRecord>,
}

impl CertificateRecord {
    pub fn from_certificate(c: &QuotientCertificate, verified: bool) -> Self {
        Self {
            graph: GraphRecord::from_graph(&c.graph),
            flat: FlatRecord::from_presentation(&c.flat),
            divisor: c.divisor,
            verified,
            perturbed_graph: Some(GraphRecord::from_graph(&c.perturbed_graph)),
            tilde_graph: Some(GraphRecord::from_graph(&c.tilde_graph)),
        }
    }

    pub fn to_certificate(&self) -> Result<QuotientCertificate> {
        let graph = self.graph.to_graph()?;
        let flat = self.flat.to_presentation()?;
        let perturbed_graph = match &self.perturbed_graph {
            Some(r) => r.to_graph()?,
            None => graph.clone(),
        };
        let tilde_graph = match &self.tilde_graph {
            Some(r) => r.to_graph()?,
            None => crate::flat_rep::canonical_representative(&flat)?.graph,
        };
        Ok(QuotientCertificate {
            graph,
            perturbed_graph,
            flat,
            divisor: self.divisor,
            tilde_graph,
        })
    }
}

pub fn parse_certificate(text: &str) -> Result<CertificateRecord> {
    serde_json::from_str(text).map_err(|e| json_error(text, &e))
}
