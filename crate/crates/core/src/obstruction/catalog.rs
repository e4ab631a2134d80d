//! Named obstruction patterns loaded from a text catalog.
//!
//! ```text
//! entry <name>
//! kind <ObstructionKind>
//! source: <free text>
//! graph ... end        (a fixed graph, matched up to isomorphism)
//! predicate <name>     (a built-in detector)
//! ```

use thiserror::Error;

use super::{is_crowded, Obstruction, ObstructionKind, Witness};
use crate::graph::{Graph, Skeleton};
use crate::io::{parse_graph, FormatError, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    /// No compatible embedding exists.
    Crowded,
}

impl Predicate {
    fn from_name(s: &str) -> Option<Self> {
        (s == "crowded").then_some(Predicate::Crowded)
    }

    fn holds(self, g: &Skeleton) -> bool {
        match self {
            Predicate::Crowded => is_crowded(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Graph { graph: Graph, certificate: String },
    Predicate(Predicate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: ObstructionKind,
    pub source: String,
    pub pattern: Pattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog has no entry of kind {}", .0.name())]
    CatalogMissing(ObstructionKind),
    #[error(transparent)]
    Format(#[from] FormatError),
}

fn perr(line: usize, msg: impl Into<String>) -> CatalogError {
    CatalogError::Format(FormatError::Parse(ParseError { line, col: 1, msg: msg.into() }))
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let raw: Vec<&str> = text.lines().collect();
        let mut entries = Vec::new();
        let mut i = 0;
        let mut current: Option<(usize, String, Option<ObstructionKind>, String, Option<Pattern>)> = None;
        let finish = |c: Option<(usize, String, Option<ObstructionKind>, String, Option<Pattern>)>,
                      entries: &mut Vec<CatalogEntry>|
         -> Result<(), CatalogError> {
            if let Some((line, name, kind, source, pattern)) = c {
                let kind = kind.ok_or_else(|| perr(line, format!("entry `{name}` has no `kind` line")))?;
                let pattern = pattern.ok_or_else(|| perr(line, format!("entry `{name}` has no pattern")))?;
                entries.push(CatalogEntry { name, kind, source, pattern });
            }
            Ok(())
        };
        while i < raw.len() {
            let l = raw[i].trim();
            let no = i + 1;
            i += 1;
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (word, rest) = l.split_once(char::is_whitespace).map_or((l, ""), |(w, r)| (w, r.trim()));
            if word == "entry" {
                finish(current.take(), &mut entries)?;
                if rest.is_empty() {
                    return Err(perr(no, "entry needs a name"));
                }
                current = Some((no, rest.to_string(), None, String::new(), None));
                continue;
            }
            let Some(c) = current.as_mut() else {
                return Err(perr(no, "expected `entry`"));
            };
            match word {
                "kind" => {
                    c.2 = Some(ObstructionKind::from_name(rest).ok_or_else(|| perr(no, format!("unknown kind `{rest}`")))?);
                }
                "source:" => c.3 = rest.to_string(),
                "predicate" => {
                    let p = Predicate::from_name(rest).ok_or_else(|| perr(no, format!("unknown predicate `{rest}`")))?;
                    c.4 = Some(Pattern::Predicate(p));
                }
                "graph" => {
                    let start = i - 1;
                    let end = (i..raw.len())
                        .find(|&k| raw[k].trim() == "end")
                        .ok_or_else(|| perr(no, "graph block without `end`"))?;
                    // Blank padding keeps line numbers of graph errors.
                    let mut block = "\n".repeat(start);
                    for r in &raw[start..end] {
                        block.push_str(r);
                        block.push('\n');
                    }
                    let graph = parse_graph(&block)?;
                    let certificate = graph.certificate();
                    c.4 = Some(Pattern::Graph { graph, certificate });
                    i = end + 1;
                }
                _ => return Err(perr(no, format!("unexpected `{word}`"))),
            }
        }
        finish(current, &mut entries)?;
        Ok(Catalog { entries })
    }

    /// The catalog shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(crate::fixtures::CATALOG).expect("bundled catalog parses")
    }

    pub fn has(&self, kind: ObstructionKind) -> bool {
        self.entries.iter().any(|e| e.kind == kind)
    }
}

/// Matches `g` against every entry of `kind`.
pub fn detect_catalog(g: &Graph, catalog: &Catalog, kind: ObstructionKind) -> Result<Option<Obstruction>, CatalogError> {
    if !catalog.has(kind) {
        return Err(CatalogError::CatalogMissing(kind));
    }
    let cert = g.certificate();
    for e in catalog.entries.iter().filter(|e| e.kind == kind) {
        let hit = match &e.pattern {
            Pattern::Graph { certificate, .. } => *certificate == cert,
            Pattern::Predicate(p) => g.as_skeleton().is_some_and(|s| p.holds(s)),
        };
        if hit {
            return Ok(Some(Obstruction { kind, witness: Witness::Catalog(e.name.clone()) }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::tests::theta;

    #[test]
    fn bundled_entries() {
        let c = Catalog::bundled();
        assert!(c.has(ObstructionKind::EnveLoopCatalog));
        assert!(c.has(ObstructionKind::Crowded));
        assert!(!c.has(ObstructionKind::TieFighter));
        assert!(c.entries.iter().all(|e| !e.source.is_empty()));
    }

    #[test]
    fn enve_loop_matches_graph_g_only() {
        let c = Catalog::bundled();
        let k = ObstructionKind::EnveLoopCatalog;
        let g = fixtures::fig2_graph('g');
        assert_eq!(detect_catalog(&g, &c, k).unwrap().unwrap().kind, k);
        assert_eq!(detect_catalog(&Graph::Skeleton(theta()), &c, k), Ok(None));
        assert_eq!(detect_catalog(&fixtures::fig1_skeleton(), &c, k), Ok(None));
        for key in "abcdefh".chars() {
            assert_eq!(detect_catalog(&fixtures::fig2_graph(key), &c, k), Ok(None), "{key}");
        }
    }

    #[test]
    fn missing_entry_reported() {
        let c = Catalog::bundled();
        let k = ObstructionKind::TieFighter;
        assert_eq!(detect_catalog(&Graph::Skeleton(theta()), &c, k), Err(CatalogError::CatalogMissing(k)));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = Catalog::parse("entry x\nkind Nope\n").unwrap_err();
        assert!(e.to_string().starts_with("2:"), "{e}");
        let e = Catalog::parse("entry x\nkind Crowded\ngraph\nn 2\ne 0 1\nend\n").unwrap_err();
        assert!(matches!(e, CatalogError::Format(FormatError::Graph(_))));
        let e = Catalog::parse("entry x\nkind Crowded\ngraph\nn 2\ne 0 q\nend\n").unwrap_err();
        assert!(e.to_string().starts_with("5:"), "{e}");
    }
}
