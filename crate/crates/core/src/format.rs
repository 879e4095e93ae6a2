//! Canonical text format for images, maps and homotopy certificates.
//!
//! ```text
//! digitop 1
//! kind homotopy
//! domain
//! dimension 3
//! adjacency 18
//! points 10
//! -1,1,0
//! ...
//! end
//! codomain
//! ...
//! end
//! from identity
//! to constant 0,1,-1
//! steps 4
//! step 0
//! -1,1,0 -> -1,1,0
//! ...
//! end
//! ...
//! ```
//!
//! Points are written in lexicographic order and map tables in domain order,
//! so serialization is byte-stable. Blank lines and lines starting with `#`
//! are ignored by the parser. An `image` document has a single `image`
//! block; a `map` document has `domain`, `codomain` and a `table N` block.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::homotopy::Homotopy;
use crate::image::DigitalImage;
use crate::lattice::{Adjacency, LatticePoint};
use crate::mapping::DigitalMap;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "digitop";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndpointError {
    #[error("endpoint `identity` needs the domain and codomain to be the same image")]
    IdentityNotSelfMap,
    #[error("endpoint constant ({0}) is not a point of the codomain")]
    ConstantOutsideCodomain(LatticePoint),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Image,
    Map,
    Homotopy,
}

impl DocumentKind {
    fn as_str(self) -> &'static str {
        match self {
            DocumentKind::Image => "image",
            DocumentKind::Map => "map",
            DocumentKind::Homotopy => "homotopy",
        }
    }
}

/// The claimed endpoint of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndpointSpec {
    /// No claim: the certificate's own first or last step.
    Free,
    Identity,
    Constant(LatticePoint),
}

impl EndpointSpec {
    fn resolve(&self, h: &Homotopy, own: &DigitalMap) -> Result<DigitalMap, EndpointError> {
        match self {
            EndpointSpec::Free => Ok(own.clone()),
            EndpointSpec::Identity => {
                if h.domain() != h.codomain() {
                    return Err(EndpointError::IdentityNotSelfMap);
                }
                Ok(DigitalMap::identity(h.domain().clone()))
            }
            EndpointSpec::Constant(q) => DigitalMap::constant_into(h.domain().clone(), h.codomain().clone(), q)
                .map_err(|_| EndpointError::ConstantOutsideCodomain(q.clone())),
        }
    }

    fn write(&self, out: &mut String) {
        match self {
            EndpointSpec::Free => out.push_str("free"),
            EndpointSpec::Identity => out.push_str("identity"),
            EndpointSpec::Constant(q) => {
                let _ = write!(out, "constant {q}");
            }
        }
    }
}

/// A certificate together with the endpoints it claims to join.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyDocument {
    pub homotopy: Homotopy,
    pub from: EndpointSpec,
    pub to: EndpointSpec,
}

impl HomotopyDocument {
    /// A contraction certificate: identity to the constant at its last step.
    pub fn contraction(homotopy: Homotopy) -> Self {
        let to = match homotopy.last().constant_value() {
            Some(q) => EndpointSpec::Constant(q.clone()),
            None => EndpointSpec::Free,
        };
        HomotopyDocument { homotopy, from: EndpointSpec::Identity, to }
    }

    /// The endpoint maps (f, g) the certificate must join.
    pub fn endpoints(&self) -> Result<(DigitalMap, DigitalMap), EndpointError> {
        let h = &self.homotopy;
        Ok((self.from.resolve(h, h.first())?, self.to.resolve(h, h.last())?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Image(DigitalImage),
    Map(DigitalMap),
    Homotopy(HomotopyDocument),
}

impl Document {
    pub fn kind(&self) -> DocumentKind {
        match self {
            Document::Image(_) => DocumentKind::Image,
            Document::Map(_) => DocumentKind::Map,
            Document::Homotopy(_) => DocumentKind::Homotopy,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC} {FORMAT_VERSION}");
        let _ = writeln!(out, "kind {}", self.kind().as_str());
        match self {
            Document::Image(img) => write_image(&mut out, "image", img),
            Document::Map(map) => {
                write_image(&mut out, "domain", map.domain());
                write_image(&mut out, "codomain", map.codomain());
                let _ = writeln!(out, "table {}", map.domain().len());
                write_table(&mut out, map);
            }
            Document::Homotopy(doc) => {
                let h = &doc.homotopy;
                write_image(&mut out, "domain", h.domain());
                write_image(&mut out, "codomain", h.codomain());
                out.push_str("from ");
                doc.from.write(&mut out);
                out.push_str("\nto ");
                doc.to.write(&mut out);
                let _ = writeln!(out, "\nsteps {}", h.steps().len());
                for (t, step) in h.steps().iter().enumerate() {
                    let _ = writeln!(out, "step {t}");
                    write_table(&mut out, step);
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Document, ParseError> {
        Parser::new(text).document()
    }

    pub fn into_image(self) -> Option<DigitalImage> {
        match self {
            Document::Image(img) => Some(img),
            _ => None,
        }
    }

    pub fn into_homotopy(self) -> Option<HomotopyDocument> {
        match self {
            Document::Homotopy(h) => Some(h),
            _ => None,
        }
    }
}

fn write_image(out: &mut String, role: &str, img: &DigitalImage) {
    let _ = writeln!(out, "{role}");
    let _ = writeln!(out, "dimension {}", img.dimension());
    let _ = writeln!(out, "adjacency {}", img.adjacency());
    let _ = writeln!(out, "points {}", img.len());
    for p in img.points() {
        let _ = writeln!(out, "{p}");
    }
    out.push_str("end\n");
}

fn write_table(out: &mut String, map: &DigitalMap) {
    for (x, y) in map.pairs() {
        let _ = writeln!(out, "{x} -> {y}");
    }
    out.push_str("end\n");
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let last_line = text.lines().count().max(1);
        Parser { lines, pos: 0, last_line }
    }

    fn err<T>(&self, line: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line, message: message.into() })
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        match self.lines.get(self.pos) {
            Some(&l) => {
                self.pos += 1;
                Ok(l)
            }
            None => self.err(self.last_line, format!("unexpected end of input, expected {what}")),
        }
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str), ParseError> {
        let (line, text) = self.next(&format!("`{key}`"))?;
        let (head, rest) = match text.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (text, ""),
        };
        if head != key {
            return self.err(line, format!("expected `{key}`, found `{text}`"));
        }
        Ok((line, rest))
    }

    fn count(&mut self, key: &str) -> Result<usize, ParseError> {
        let (line, rest) = self.keyword(key)?;
        rest.parse().or_else(|_| self.err(line, format!("`{key}` needs a non-negative integer, found `{rest}`")))
    }

    fn point(&self, line: usize, text: &str, dimension: usize) -> Result<LatticePoint, ParseError> {
        let p: LatticePoint = text.parse().or_else(|e: crate::lattice::LatticeError| self.err(line, e.to_string()))?;
        if p.dimension() != dimension {
            return self.err(line, format!("point ({p}) has dimension {}, expected {dimension}", p.dimension()));
        }
        Ok(p)
    }

    fn document(mut self) -> Result<Document, ParseError> {
        let (line, version) = self.keyword(MAGIC)?;
        match version.parse::<u32>() {
            Ok(FORMAT_VERSION) => {}
            _ => return self.err(line, format!("unsupported format version `{version}`")),
        }
        let (line, kind) = self.keyword("kind")?;
        let doc = match kind {
            "image" => Document::Image(self.image("image")?),
            "map" => {
                let dom = Arc::new(self.image("domain")?);
                let cod = Arc::new(self.image("codomain")?);
                let n = self.count("table")?;
                if n != dom.len() {
                    return self
                        .err(self.lines[self.pos - 1].0, format!("table has {n} entries, domain has {}", dom.len()));
                }
                Document::Map(self.table(&dom, &cod)?)
            }
            "homotopy" => {
                let dom = Arc::new(self.image("domain")?);
                let cod = Arc::new(self.image("codomain")?);
                let (fl, from) = self.keyword("from")?;
                let from = self.endpoint(fl, from, cod.dimension())?;
                let (tl, to) = self.keyword("to")?;
                let to = self.endpoint(tl, to, cod.dimension())?;
                let n = self.count("steps")?;
                if n == 0 {
                    return self.err(self.lines[self.pos - 1].0, "a homotopy needs at least one step");
                }
                let mut steps = Vec::with_capacity(n);
                for t in 0..n {
                    let (line, idx) = self.keyword("step")?;
                    if idx.parse::<usize>() != Ok(t) {
                        return self.err(line, format!("expected `step {t}`, found `step {idx}`"));
                    }
                    steps.push(self.table(&dom, &cod)?);
                }
                let homotopy = Homotopy::new(steps).expect("steps share the parsed images");
                Document::Homotopy(HomotopyDocument { homotopy, from, to })
            }
            other => return self.err(line, format!("unknown document kind `{other}`")),
        };
        if let Some(&(line, text)) = self.lines.get(self.pos) {
            return self.err(line, format!("trailing content `{text}`"));
        }
        Ok(doc)
    }

    fn endpoint(&self, line: usize, text: &str, dimension: usize) -> Result<EndpointSpec, ParseError> {
        match text.split_once(char::is_whitespace) {
            None if text == "free" => Ok(EndpointSpec::Free),
            None if text == "identity" => Ok(EndpointSpec::Identity),
            Some(("constant", p)) => Ok(EndpointSpec::Constant(self.point(line, p.trim(), dimension)?)),
            _ => self.err(line, format!("endpoint must be `free`, `identity` or `constant <point>`, found `{text}`")),
        }
    }

    fn image(&mut self, role: &str) -> Result<DigitalImage, ParseError> {
        self.keyword(role)?;
        let (dl, dim) = self.keyword("dimension")?;
        let dimension: usize = match dim.parse() {
            Ok(d) if d >= 1 => d,
            _ => return self.err(dl, format!("bad dimension `{dim}`")),
        };
        let (al, adj) = self.keyword("adjacency")?;
        let adjacency: Adjacency =
            adj.parse().or_else(|e: crate::lattice::LatticeError| self.err(al, e.to_string()))?;
        if adjacency.dimension() != dimension {
            return self.err(
                al,
                format!("adjacency {adjacency} lives in Z^{}, image is in Z^{dimension}", adjacency.dimension()),
            );
        }
        let n = self.count("points")?;
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, text) = self.next("a point")?;
            let p = self.point(line, text, dimension)?;
            if points.last().is_some_and(|q| q >= &p) {
                return self.err(line, "points must be strictly increasing in lexicographic order");
            }
            points.push(p);
        }
        self.keyword("end")?;
        Ok(DigitalImage::new(points, adjacency).expect("validated above"))
    }

    fn table(&mut self, dom: &Arc<DigitalImage>, cod: &Arc<DigitalImage>) -> Result<DigitalMap, ParseError> {
        let mut pairs = Vec::with_capacity(dom.len());
        for i in 0..dom.len() {
            let (line, text) = self.next("a table entry `x -> y`")?;
            let Some((x, y)) = text.split_once("->") else {
                return self.err(line, format!("expected `x -> y`, found `{text}`"));
            };
            let x = self.point(line, x.trim(), dom.dimension())?;
            let y = self.point(line, y.trim(), cod.dimension())?;
            if &x != dom.point(i) {
                return self.err(line, format!("expected entry for ({}) in domain order, found ({x})", dom.point(i)));
            }
            if !cod.contains(&y) {
                return self.err(line, format!("value ({y}) is not a point of the codomain"));
            }
            pairs.push((x, y));
        }
        self.keyword("end")?;
        Ok(DigitalMap::from_pairs(dom.clone(), cod.clone(), pairs).expect("validated above"))
    }
}
