use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::square::{boundary_cells, horn_cells, unfilled_squares, CellSquare};
use crate::delta::{surjections, DeltaMap, Generator};
use crate::error::{Error, Result};
use crate::hfcore::HfSet;
use crate::sset::{Cell, SSetBuilder, SimplicialMap, TruncatedSimplicialSet};
use crate::wtype::{Operator, Signature, WTerm};

/// Which cell inclusions the factorization fills against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    /// Horns: `z -> y` becomes a fibration and `x -> z` an acyclic cofibration.
    Horn,
    /// Boundaries: `z -> y` becomes an acyclic fibration and `x -> z` a cofibration.
    Boundary,
}

impl CellKind {
    pub fn cells(self, nmax: usize) -> Vec<Cell> {
        match self {
            CellKind::Horn => horn_cells(nmax),
            CellKind::Boundary => boundary_cells(nmax),
        }
    }
}

impl fmt::Display for CellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellKind::Horn => "horn",
            CellKind::Boundary => "boundary",
        })
    }
}

impl FromStr for CellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "horn" => Ok(CellKind::Horn),
            "boundary" => Ok(CellKind::Boundary),
            _ => Err(Error::OutOfRange(format!("unknown cell kind `{s}`"))),
        }
    }
}

/// A cell adjoined to fill one square. Simplices are given by identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjoinedCell {
    /// Stage at which the cell was added, counting from 1.
    pub stage: usize,
    pub cell: Cell,
    /// The simplices the square sent the faces of the cell to.
    pub faces: Vec<HfSet>,
    /// The simplex of the base the filler lies over.
    pub base: usize,
    pub filler: HfSet,
    /// The new missing face, for horns.
    pub missing: Option<HfSet>,
}

/// The factorization `f = p ∘ j` with its bookkeeping.
///
/// Every simplex of `z` is identified with the code of a term over
/// [`Factorization::signature`]: constants `c_x<j>` for the simplices of the
/// source, constants `y#<j>` for the simplices of the base, filler operators
/// and unary degeneracy operators `s<i>`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub kind: CellKind,
    pub nmax: usize,
    pub z: Arc<TruncatedSimplicialSet>,
    pub j: SimplicialMap,
    pub p: SimplicialMap,
    pub signature: Signature,
    /// The term naming each simplex of `z`.
    pub terms: Vec<WTerm>,
    /// The stage each simplex of `z` was added at; `0` for the image of `j`.
    pub stage_of: Vec<usize>,
    pub cells: Vec<AdjoinedCell>,
    pub stages_requested: usize,
    /// Stages that added at least one cell.
    pub stages_run: usize,
    /// Squares still unfilled at the end.
    pub remaining: usize,
}

fn tag(i: usize) -> HfSet {
    HfSet::ordinal(i)
}

fn constant_code(t: usize, id: &HfSet) -> HfSet {
    HfSet::pair(tag(t), id.clone())
}

/// Operator codes of the filler operators of one cell.
fn filler_codes(cell: Cell) -> (HfSet, Option<HfSet>) {
    match cell {
        Cell::Horn { n, k } => {
            let nk = HfSet::pair(tag(n), tag(k));
            (HfSet::pair(tag(3), nk.clone()), Some(HfSet::pair(tag(4), nk)))
        }
        Cell::Boundary { n } => (HfSet::pair(tag(5), tag(n)), None),
    }
}

fn filler_names(cell: Cell) -> (String, Option<String>) {
    match cell {
        Cell::Horn { n, k } => (format!("phi{n}_{k}"), Some(format!("kappa{n}_{k}"))),
        Cell::Boundary { n } => (format!("phi{n}"), None),
    }
}

/// The signature of the terms naming the simplices of `z`.
pub fn factorization_signature(f: &SimplicialMap, kind: CellKind, nmax: usize) -> Result<Signature> {
    let (x, y) = (f.source(), f.target());
    let d = y.truncation();
    let mut ops = Vec::new();
    for s in 0..x.len() {
        ops.push(Operator {
            code: constant_code(0, x.id(s)),
            name: format!("c_x{s}"),
            arity: 0,
        });
    }
    for s in 0..y.len() {
        ops.push(Operator {
            code: constant_code(1, y.id(s)),
            name: format!("y#{s}"),
            arity: 0,
        });
    }
    for i in 0..d {
        ops.push(Operator {
            code: HfSet::pair(tag(2), tag(i)),
            name: format!("s{i}"),
            arity: 1,
        });
    }
    for cell in kind.cells(nmax) {
        let arity = cell.face_indices().len() + 1;
        let (code, extra) = filler_codes(cell);
        let (name, extra_name) = filler_names(cell);
        ops.push(Operator { code, name, arity });
        if let (Some(code), Some(name)) = (extra, extra_name) {
            ops.push(Operator { code, name, arity });
        }
    }
    Signature::new(ops)
}

struct Grower<'a> {
    y: &'a TruncatedSimplicialSet,
    d: usize,
    b: SSetBuilder,
    p: Vec<usize>,
    terms: HashMap<HfSet, WTerm>,
    stage_of: HashMap<HfSet, usize>,
    degeneracy_heads: Vec<HfSet>,
}

impl Grower<'_> {
    fn term_of(&self, s: usize) -> WTerm {
        self.terms[self.b.id(s)].clone()
    }

    fn degenerate(&self, theta: &DeltaMap, base: &WTerm) -> WTerm {
        theta.generator_word().into_iter().fold(base.clone(), |t, g| match g {
            Generator::Degeneracy { index, .. } => WTerm::new_unchecked(self.degeneracy_heads[index].clone(), vec![t]),
            Generator::Face { .. } => unreachable!("surjections act by degeneracies"),
        })
    }

    /// Adds a nondegenerate `q`-simplex with the given faces together with all
    /// its degeneracies up to the truncation. Returns its index.
    fn add_cell(&mut self, term: WTerm, q: usize, faces: Vec<usize>, base: usize, stage: usize) -> Result<usize> {
        let mut table: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut members = Vec::new();
        for m in q..=self.d {
            for theta in surjections(m, q) {
                let t = self.degenerate(&theta, &term);
                let id = t.code().clone();
                let s = self.b.add_simplex(id.clone(), m)?;
                self.terms.insert(id.clone(), t);
                self.stage_of.insert(id, stage);
                self.p.push(self.y.act(&theta, base)?);
                table.insert(theta.values().to_vec(), s);
                members.push((theta, s));
            }
        }
        let c = members[0].1;
        self.b.set_faces(c, faces);
        for (theta, s) in &members {
            let m = theta.source();
            if m > q {
                let faces = (0..=m)
                    .map(|i| {
                        let phi = theta.after(&DeltaMap::face(m, i)?)?;
                        let (epi, mono) = phi.epi_mono();
                        Ok(if mono.is_identity() {
                            table[epi.values()]
                        } else {
                            let r = self.b.act_word(&mono.generator_word(), c);
                            self.b.act_word(&epi.generator_word(), r)
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.b.set_faces(*s, faces);
            }
            if m < self.d {
                let degens = (0..=m)
                    .map(|i| Ok(table[theta.after(&DeltaMap::degeneracy(m, i)?)?.values()]))
                    .collect::<Result<Vec<_>>>()?;
                self.b.set_degeneracies(*s, degens);
            }
        }
        Ok(c)
    }
}

fn source_term(x: &TruncatedSimplicialSet, s: usize) -> WTerm {
    WTerm::new_unchecked(constant_code(0, x.id(s)), Vec::new())
}

fn y_constant(y: &TruncatedSimplicialSet, s: usize) -> WTerm {
    WTerm::new_unchecked(constant_code(1, y.id(s)), Vec::new())
}

/// Factors `f : x -> y` as `p ∘ j` by adjoining fillers for the unfilled
/// squares against the cells of `kind` up to dimension `nmax`, for at most
/// `stages` rounds. Each round fills exactly the squares unfilled at its start.
pub fn factorize(f: &SimplicialMap, kind: CellKind, stages: usize, nmax: usize) -> Result<Factorization> {
    let (x, y) = (f.source(), f.target());
    let d = y.truncation();
    if nmax > d {
        let cell = kind
            .cells(nmax)
            .into_iter()
            .find(|c| c.dim() > d)
            .expect("a cell above the truncation");
        return Err(Error::TruncationOverflow {
            square: cell.to_string(),
            truncation: d,
        });
    }
    let signature = factorization_signature(f, kind, nmax)?;
    let cells = kind.cells(nmax);

    let mut b = SSetBuilder::new(d);
    let mut terms = HashMap::new();
    let mut stage_of = HashMap::new();
    for s in 0..x.len() {
        let t = source_term(x, s);
        b.add_simplex(t.code().clone(), x.dim(s))?;
        stage_of.insert(t.code().clone(), 0);
        terms.insert(t.code().clone(), t);
    }
    for s in 0..x.len() {
        b.set_faces(s, x.faces_of(s).to_vec());
        b.set_degeneracies(s, x.degeneracies_of(s).to_vec());
    }
    let (mut z, mut p) = rebuild(b, f.carrier().to_vec(), y)?;

    let degeneracy_heads = (0..d).map(|i| HfSet::pair(tag(2), tag(i))).collect();
    let mut grower = Grower {
        y,
        d,
        b: SSetBuilder::new(d),
        p: Vec::new(),
        terms,
        stage_of,
        degeneracy_heads,
    };
    let mut adjoined = Vec::new();
    let mut stages_run = 0;
    let mut pending = unfilled_squares(&p, &cells);
    for stage in 1..=stages {
        if pending.is_empty() {
            break;
        }
        grower.b = z.to_builder();
        grower.p = p.carrier().to_vec();
        for sq in &pending {
            adjoined.push(fill(&mut grower, &z, sq, stage)?);
        }
        let b = std::mem::replace(&mut grower.b, SSetBuilder::new(d));
        (z, p) = rebuild(b, std::mem::take(&mut grower.p), y)?;
        stages_run = stage;
        pending = unfilled_squares(&p, &cells);
    }

    let j_carrier = (0..x.len())
        .map(|s| {
            z.index_of(&source_term(x, s).code().clone())
                .expect("source simplices are kept")
        })
        .collect();
    let j = SimplicialMap::new(x.clone(), z.clone(), j_carrier)?;
    let terms = z.ids().iter().map(|id| grower.terms[id].clone()).collect();
    let stage_of = z.ids().iter().map(|id| grower.stage_of[id]).collect();
    Ok(Factorization {
        kind,
        nmax,
        z,
        j,
        p,
        signature,
        terms,
        stage_of,
        cells: adjoined,
        stages_requested: stages,
        stages_run,
        remaining: pending.len(),
    })
}

fn rebuild(
    b: SSetBuilder,
    p: Vec<usize>,
    y: &Arc<TruncatedSimplicialSet>,
) -> Result<(Arc<TruncatedSimplicialSet>, SimplicialMap)> {
    let ids: Vec<HfSet> = (0..b.len()).map(|s| b.id(s).clone()).collect();
    let z = Arc::new(b.build()?);
    let mut carrier = vec![0; z.len()];
    for (old, id) in ids.iter().enumerate() {
        carrier[z.index_of(id).expect("build keeps every simplex")] = p[old];
    }
    let p = SimplicialMap::new(z.clone(), y.clone(), carrier)?;
    Ok((z, p))
}

fn fill(g: &mut Grower<'_>, z: &TruncatedSimplicialSet, sq: &CellSquare, stage: usize) -> Result<AdjoinedCell> {
    let n = sq.cell.dim();
    let mut args: Vec<WTerm> = sq.faces.iter().map(|&s| g.term_of(s)).collect();
    args.push(y_constant(g.y, sq.base));
    let (head, extra) = filler_codes(sq.cell);
    let indices = sq.cell.face_indices();
    let face_at = |i: usize| sq.faces[indices.iter().position(|&j| j == i).expect("face in the cell")];

    let mut missing = None;
    let mut filler_faces = Vec::new();
    if let (Cell::Horn { k, .. }, Some(kappa)) = (sq.cell, extra) {
        let faces = if n >= 2 {
            (0..n)
                .map(|j| {
                    if j < k {
                        z.face(face_at(j), k - 1)
                    } else {
                        z.face(face_at(j + 1), k)
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        let base = g.y.face(sq.base, k);
        let w = g.add_cell(WTerm::new_unchecked(kappa, args.clone()), n - 1, faces, base, stage)?;
        missing = Some(g.b.id(w).clone());
        filler_faces = (0..=n).map(|i| if i == k { w } else { face_at(i) }).collect();
    } else if n >= 1 {
        filler_faces = (0..=n).map(face_at).collect();
    }
    let filler = g.add_cell(WTerm::new_unchecked(head, args), n, filler_faces, sq.base, stage)?;
    Ok(AdjoinedCell {
        stage,
        cell: sq.cell,
        faces: sq.faces.iter().map(|&s| z.id(s).clone()).collect(),
        base: sq.base,
        filler: g.b.id(filler).clone(),
        missing,
    })
}

impl Factorization {
    /// The stage-`i` object `z^i` with its map to the base.
    pub fn snapshot(&self, stage: usize) -> Result<(Arc<TruncatedSimplicialSet>, SimplicialMap)> {
        let (sub, kept) = self.z.restrict(|s| self.stage_of[s] <= stage)?;
        let sub = Arc::new(sub);
        let carrier = kept.iter().map(|&s| self.p.apply(s)).collect();
        let p = SimplicialMap::new(sub.clone(), self.p.target().clone(), carrier)?;
        Ok((sub, p))
    }

    /// The term of every simplex added after stage 0, by identifier.
    pub fn provenance(&self) -> impl Iterator<Item = (&HfSet, &WTerm)> {
        (0..self.z.len())
            .filter(|&s| self.stage_of[s] > 0)
            .map(|s| (self.z.id(s), &self.terms[s]))
    }

    pub fn term(&self, s: usize) -> &WTerm {
        &self.terms[s]
    }

    /// Number of simplices added.
    pub fn added(&self) -> usize {
        self.stage_of.iter().filter(|&&s| s > 0).count()
    }

    /// Recovers the square a filler term was adjoined for: the faces of the
    /// cell as simplices of `z` and the simplex of the base.
    pub fn decode_square(&self, term: &WTerm) -> Option<(Cell, Vec<usize>, usize)> {
        let (head, rest) = term.head().as_pair()?;
        let cell = if head == tag(3) || head == tag(4) {
            let (n, k) = rest.as_pair()?;
            Cell::Horn {
                n: n.as_ordinal()?,
                k: k.as_ordinal()?,
            }
        } else if head == tag(5) {
            Cell::Boundary { n: rest.as_ordinal()? }
        } else {
            return None;
        };
        let (last, faces) = term.children().split_last()?;
        let faces = faces
            .iter()
            .map(|t| self.z.index_of(t.code()))
            .collect::<Option<Vec<_>>>()?;
        let (ytag, yid) = last.head().as_pair()?;
        if ytag != tag(1) {
            return None;
        }
        let base = self.p.target().index_of(&yid)?;
        Some((cell, faces, base))
    }

    /// A plain-text listing of the adjoined cells.
    pub fn report(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let sig = &self.signature;
        let name = |id: &HfSet| {
            let s = self.z.index_of(id).expect("cell simplices are in z");
            self.terms[s].display(sig).to_string()
        };
        for c in &self.cells {
            let _ = write!(out, "stage {} {} {}", c.stage, c.cell, name(&c.filler));
            if let Some(w) = &c.missing {
                let _ = write!(out, " missing {}", name(w));
            }
            out.push('\n');
        }
        out
    }
}
