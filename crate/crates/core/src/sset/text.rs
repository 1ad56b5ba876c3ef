//! The line-oriented `.sset` format.
//!
//! ```text
//! # Δ[1] → Δ[0]
//! object X
//! dim 2
//! simplex #0 0
//! act s_0@0 #0 -> #1
//! ...
//! map p X Y
//! send #0 -> #0
//! ```
//!
//! A file without `object` lines describes one object named `main`.

use std::fmt::Write as _;
use std::sync::Arc;

use super::{SSetBuilder, SimplicialMap, TruncatedSimplicialSet};
use crate::delta::Generator;
use crate::error::{Error, Result};
use crate::hfcore::HfSet;
use crate::textline::{strip_comment, Line};

pub const DEFAULT_OBJECT: &str = "main";

/// Named objects and maps read from one file, in file order.
#[derive(Clone, Debug, Default)]
pub struct SSetDocument {
    pub objects: Vec<(String, Arc<TruncatedSimplicialSet>)>,
    pub maps: Vec<(String, SimplicialMap)>,
}

impl SSetDocument {
    pub fn object(&self, name: &str) -> Option<&Arc<TruncatedSimplicialSet>> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, x)| x)
    }

    pub fn map(&self, name: &str) -> Option<&SimplicialMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// Cuts every object and map down to `truncation` if it is smaller.
    pub fn truncated(&self, truncation: usize) -> Result<SSetDocument> {
        let mut out = SSetDocument::default();
        let cut = |x: &Arc<TruncatedSimplicialSet>| -> Result<Arc<TruncatedSimplicialSet>> {
            if x.truncation() <= truncation {
                Ok(x.clone())
            } else {
                Ok(Arc::new(x.truncate(truncation)?))
            }
        };
        for (name, x) in &self.objects {
            out.objects.push((name.clone(), cut(x)?));
        }
        for (name, f) in &self.maps {
            let source = cut(f.source())?;
            let target = cut(f.target())?;
            // truncation keeps a prefix of the simplices
            let carrier = f.carrier()[..source.len()].to_vec();
            out.maps
                .push((name.clone(), SimplicialMap::new_unchecked(source, target, carrier)?));
        }
        Ok(out)
    }
}

enum Block {
    None,
    Object {
        name: String,
        line: usize,
        builder: Option<SSetBuilder>,
    },
    Map {
        name: String,
        line: usize,
        source: Arc<TruncatedSimplicialSet>,
        target: Arc<TruncatedSimplicialSet>,
        pairs: Vec<(HfSet, HfSet)>,
    },
}

fn close(block: Block, doc: &mut SSetDocument) -> Result<()> {
    match block {
        Block::None => Ok(()),
        Block::Object { name, line, builder } => {
            let builder = builder.ok_or_else(|| Error::parse(line, 1, format!("object `{name}` has no `dim` line")))?;
            let x = builder
                .build()
                .map_err(|e| Error::parse(line, 1, format!("object `{name}`: {e}")))?;
            doc.objects.push((name, Arc::new(x)));
            Ok(())
        }
        Block::Map {
            name,
            line,
            source,
            target,
            pairs,
        } => {
            let f = SimplicialMap::from_ids(source, target, pairs)
                .map_err(|e| Error::parse(line, 1, format!("map `{name}`: {e}")))?;
            doc.maps.push((name, f));
            Ok(())
        }
    }
}

/// Parses a document of objects and maps. Every object is checked for
/// completeness and every map for commuting with the action.
pub fn parse_sset_document(input: &str) -> Result<SSetDocument> {
    let mut doc = SSetDocument::default();
    let mut block = Block::None;
    for (i, raw) in input.lines().enumerate() {
        let text = strip_comment(raw);
        let mut line = Line {
            number: i + 1,
            text,
            pos: 0,
        };
        line.skip_ws();
        if line.pos == text.len() {
            continue;
        }
        let keyword_at = line.pos;
        let keyword = line.word()?;
        match keyword {
            "object" => {
                close(std::mem::replace(&mut block, Block::None), &mut doc)?;
                let name = line.word()?.to_string();
                line.end()?;
                if doc.object(&name).is_some() {
                    return Err(Error::parse(
                        i + 1,
                        keyword_at + 1,
                        format!("object `{name}` defined twice"),
                    ));
                }
                block = Block::Object {
                    name,
                    line: i + 1,
                    builder: None,
                };
            }
            "map" => {
                close(std::mem::replace(&mut block, Block::None), &mut doc)?;
                let name = line.word()?.to_string();
                let endpoint = |line: &mut Line| -> Result<Arc<TruncatedSimplicialSet>> {
                    let at = line.pos;
                    let n = line.word()?;
                    doc.object(n).cloned().ok_or_else(|| {
                        line.pos = at;
                        line.skip_ws();
                        line.error(format!("unknown object `{n}`"))
                    })
                };
                let source = endpoint(&mut line)?;
                let target = endpoint(&mut line)?;
                line.end()?;
                block = Block::Map {
                    name,
                    line: i + 1,
                    source,
                    target,
                    pairs: Vec::new(),
                };
            }
            "dim" => {
                if matches!(block, Block::None) {
                    block = Block::Object {
                        name: DEFAULT_OBJECT.to_string(),
                        line: i + 1,
                        builder: None,
                    };
                }
                let Block::Object { builder, .. } = &mut block else {
                    return Err(Error::parse(i + 1, keyword_at + 1, "`dim` outside an object"));
                };
                if builder.is_some() {
                    return Err(Error::parse(i + 1, keyword_at + 1, "second `dim` line"));
                }
                let d = line.number()?;
                line.end()?;
                *builder = Some(SSetBuilder::new(d));
            }
            "simplex" | "act" => {
                let Block::Object { builder: Some(b), .. } = &mut block else {
                    return Err(Error::parse(i + 1, keyword_at + 1, format!("`{keyword}` before `dim`")));
                };
                if keyword == "simplex" {
                    let id = line.literal()?;
                    let n_at = line.pos;
                    let n = line.number()?;
                    line.end()?;
                    b.add_simplex(id, n)
                        .map_err(|e| Error::parse(i + 1, n_at + 2, e.to_string()))?;
                } else {
                    let g_at = line.pos;
                    let word = line.word()?;
                    let g: Generator = word
                        .parse()
                        .map_err(|e: Error| Error::parse(i + 1, g_at + 2, e.to_string()))?;
                    line.skip_ws();
                    let x_at = line.pos;
                    let x = line.literal()?;
                    line.arrow()?;
                    line.skip_ws();
                    let y_at = line.pos;
                    let y = line.literal()?;
                    line.end()?;
                    let lookup = |id: &HfSet, at: usize| {
                        b.index_of(id)
                            .ok_or_else(|| Error::parse(i + 1, at + 1, format!("unknown simplex {id}")))
                    };
                    let (xs, ys) = (lookup(&x, x_at)?, lookup(&y, y_at)?);
                    if b.dim(ys) != g.lands_in() {
                        return Err(Error::parse(
                            i + 1,
                            y_at + 1,
                            format!("{g} lands in dimension {}", g.lands_in()),
                        ));
                    }
                    b.set_action(g, xs, ys)
                        .map_err(|e| Error::parse(i + 1, g_at + 2, e.to_string()))?;
                }
            }
            "send" => {
                let Block::Map { pairs, .. } = &mut block else {
                    return Err(Error::parse(i + 1, keyword_at + 1, "`send` outside a map"));
                };
                line.skip_ws();
                let x = line.literal()?;
                line.arrow()?;
                let y = line.literal()?;
                line.end()?;
                pairs.push((x, y));
            }
            other => {
                return Err(Error::parse(
                    i + 1,
                    keyword_at + 1,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }
    close(block, &mut doc)?;
    Ok(doc)
}

/// Parses a file holding exactly one object.
pub fn parse_sset(input: &str) -> Result<TruncatedSimplicialSet> {
    let doc = parse_sset_document(input)?;
    match doc.objects.len() {
        1 => Ok((*doc.objects[0].1).clone()),
        n => Err(Error::parse(1, 1, format!("expected one object, found {n}"))),
    }
}

fn write_object(out: &mut String, x: &TruncatedSimplicialSet) {
    writeln!(out, "dim {}", x.truncation()).unwrap();
    for s in 0..x.len() {
        writeln!(out, "simplex {} {}", x.id(s), x.dim(s)).unwrap();
    }
    for s in 0..x.len() {
        let n = x.dim(s);
        for (index, &t) in x.faces_of(s).iter().enumerate() {
            writeln!(
                out,
                "act {} {} -> {}",
                Generator::Face { dim: n, index },
                x.id(s),
                x.id(t)
            )
            .unwrap();
        }
        for (index, &t) in x.degeneracies_of(s).iter().enumerate() {
            writeln!(
                out,
                "act {} {} -> {}",
                Generator::Degeneracy { dim: n, index },
                x.id(s),
                x.id(t)
            )
            .unwrap();
        }
    }
}

/// The canonical text of one object.
pub fn print_sset(x: &TruncatedSimplicialSet) -> String {
    let mut out = String::new();
    write_object(&mut out, x);
    out
}

pub fn print_sset_document(doc: &SSetDocument) -> String {
    let mut out = String::new();
    let single = doc.objects.len() == 1 && doc.maps.is_empty() && doc.objects[0].0 == DEFAULT_OBJECT;
    for (name, x) in &doc.objects {
        if !single {
            writeln!(out, "object {name}").unwrap();
        }
        write_object(&mut out, x);
    }
    for (name, f) in &doc.maps {
        let src = doc
            .objects
            .iter()
            .find(|(_, x)| Arc::ptr_eq(x, f.source()) || **x == **f.source());
        let tgt = doc
            .objects
            .iter()
            .find(|(_, x)| Arc::ptr_eq(x, f.target()) || **x == **f.target());
        let (Some((src, _)), Some((tgt, _))) = (src, tgt) else {
            continue;
        };
        writeln!(out, "map {name} {src} {tgt}").unwrap();
        for s in 0..f.source().len() {
            writeln!(out, "send {} -> {}", f.source().id(s), f.target().id(f.apply(s))).unwrap();
        }
    }
    out
}
