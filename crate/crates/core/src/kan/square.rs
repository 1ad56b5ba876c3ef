use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::delta::{monotone_maps, DeltaMap};
use crate::error::{Error, Result};
use crate::hfcore::HfSet;
use crate::sset::{cell_subobject, yoneda_map, Cell, MapSearch, SimplicialMap, TruncatedSimplicialSet};

/// A commutative square `right ∘ top = bottom ∘ left`:
///
/// ```text
///   a --top--> x
///   |          |
/// left       right
///   v          v
///   b -bottom> y
/// ```
#[derive(Clone, Debug)]
pub struct LiftingSquare {
    pub left: SimplicialMap,
    pub top: SimplicialMap,
    pub right: SimplicialMap,
    pub bottom: SimplicialMap,
}

impl LiftingSquare {
    pub fn new(left: SimplicialMap, top: SimplicialMap, right: SimplicialMap, bottom: SimplicialMap) -> Result<Self> {
        let endpoints = [
            (left.source(), top.source(), "left and top sources"),
            (left.target(), bottom.source(), "left target and bottom source"),
            (top.target(), right.source(), "top target and right source"),
            (right.target(), bottom.target(), "right and bottom targets"),
        ];
        for (u, v, what) in endpoints {
            if **u != **v {
                return Err(Error::Mismatch(format!("{what} differ")));
            }
        }
        let a = left.source();
        for s in 0..a.len() {
            let via_top = right.apply(top.apply(s));
            let via_left = bottom.apply(left.apply(s));
            if via_top != via_left {
                return Err(Error::NonCommutingSquare(format!(
                    "{} goes to {} along the top and to {} along the left",
                    a.id(s),
                    right.target().id(via_top),
                    right.target().id(via_left)
                )));
            }
        }
        Ok(Self {
            left,
            top,
            right,
            bottom,
        })
    }
}

/// A diagonal `h : b -> x` with `h ∘ left = top` and `right ∘ h = bottom`,
/// found by exhaustive search.
pub fn find_lift(sq: &LiftingSquare) -> Option<SimplicialMap> {
    let b = sq.left.target();
    let x = sq.top.target();
    let mut search = MapSearch::new(b, x);
    for s in 0..sq.left.source().len() {
        let at = sq.left.apply(s);
        match search.fixed[at] {
            Some(v) if v != sq.top.apply(s) => return None,
            _ => search.fixed[at] = Some(sq.top.apply(s)),
        }
    }
    search.over = Some((&sq.right, sq.bottom.carrier().to_vec()));
    let carrier = search.first()?;
    Some(SimplicialMap::new(b.clone(), x.clone(), carrier).expect("search yields simplicial maps"))
}

/// A lifting problem against a cell inclusion, stored by its data: the
/// simplices `faces[j]` of `x` sitting at the face indices of the cell, and
/// the `n`-simplex `base` of `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellSquare {
    pub cell: Cell,
    /// One simplex of `x` per entry of `cell.face_indices()`.
    pub faces: Vec<usize>,
    pub base: usize,
}

impl CellSquare {
    pub fn display<'a>(&'a self, f: &'a SimplicialMap) -> impl fmt::Display + 'a {
        SquareDisplay { sq: self, f }
    }

    /// The square as maps: the cell inclusion, the map of the cell into `x`
    /// determined by the faces, `f`, and the map `Δ[n] -> y` classifying the base.
    pub fn to_lifting_square(&self, f: &SimplicialMap) -> Result<LiftingSquare> {
        let (x, y) = (f.source(), f.target());
        let d = x.truncation();
        let (cell, left) = cell_subobject(self.cell, d)?;
        let cell = Arc::new(cell);
        let indices = self.cell.face_indices();
        let maps: HashMap<&HfSet, DeltaMap> = (0..=d)
            .flat_map(|m| monotone_maps(m, self.cell.dim()))
            .map(|alpha| (alpha.graph_hf(), alpha))
            .filter_map(|(id, alpha)| cell.index_of(&id).map(|s| (cell.id(s), alpha)))
            .collect();
        let mut carrier = Vec::with_capacity(cell.len());
        for s in 0..cell.len() {
            let alpha = &maps[cell.id(s)];
            let image = alpha.image();
            let (slot, &j) = indices
                .iter()
                .enumerate()
                .find(|(_, j)| image.binary_search(j).is_err())
                .expect("cell simplices miss a face index");
            // alpha = delta_j ∘ beta
            let beta = DeltaMap::new(
                alpha.source(),
                alpha.target() - 1,
                alpha.values().iter().map(|&v| if v < j { v } else { v - 1 }).collect(),
            )?;
            carrier.push(x.act(&beta, self.faces[slot])?);
        }
        let left = SimplicialMap::new(cell.clone(), left.target().clone(), left.carrier().to_vec())?;
        let top = SimplicialMap::new(cell, x.clone(), carrier)?;
        let bottom = yoneda_map(y, self.cell.dim(), self.base)?;
        LiftingSquare::new(left, top, f.clone(), bottom)
    }
}

struct SquareDisplay<'a> {
    sq: &'a CellSquare,
    f: &'a SimplicialMap,
}

impl fmt::Display for SquareDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.f.source();
        write!(out, "{} faces [", self.sq.cell)?;
        for (k, (i, s)) in self.sq.cell.face_indices().iter().zip(&self.sq.faces).enumerate() {
            if k > 0 {
                out.write_str(", ")?;
            }
            write!(out, "d_{i}: {}", x.id(*s))?;
        }
        write!(out, "] over {}", self.f.target().id(self.sq.base))
    }
}

/// Simplices of `x` grouped by their image under `f`.
pub(crate) struct Fibers {
    by_base: HashMap<usize, Vec<usize>>,
}

impl Fibers {
    pub fn new(f: &SimplicialMap) -> Self {
        let mut by_base: HashMap<usize, Vec<usize>> = HashMap::new();
        for s in 0..f.source().len() {
            by_base.entry(f.apply(s)).or_default().push(s);
        }
        Self { by_base }
    }

    pub fn over(&self, base: usize) -> &[usize] {
        self.by_base.get(&base).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Calls `visit` on every square of `f` against `cell`, in the order of the
/// base simplex and then of the faces.
pub(crate) fn for_each_square<F>(f: &SimplicialMap, fibers: &Fibers, cell: Cell, mut visit: F)
where
    F: FnMut(&[usize], usize),
{
    let (x, y) = (f.source(), f.target());
    let n = cell.dim();
    if n > y.truncation() {
        return;
    }
    let indices = cell.face_indices();
    let mut chosen = Vec::with_capacity(indices.len());

    fn go<F: FnMut(&[usize], usize)>(
        x: &TruncatedSimplicialSet,
        y: &TruncatedSimplicialSet,
        fibers: &Fibers,
        indices: &[usize],
        sigma: usize,
        chosen: &mut Vec<usize>,
        visit: &mut F,
    ) {
        let slot = chosen.len();
        if slot == indices.len() {
            visit(chosen, sigma);
            return;
        }
        let i = indices[slot];
        for &c in fibers.over(y.face(sigma, i)) {
            // d_{i'} x_i = d_{i-1} x_{i'} for earlier i' < i
            let fits = x.dim(c) == 0
                || indices[..slot]
                    .iter()
                    .zip(chosen.iter())
                    .all(|(&ip, &xp)| x.face(c, ip) == x.face(xp, i - 1));
            if fits {
                chosen.push(c);
                go(x, y, fibers, indices, sigma, chosen, visit);
                chosen.pop();
            }
        }
    }

    for sigma in y.range(n) {
        go(x, y, fibers, &indices, sigma, &mut chosen, &mut visit);
    }
}

/// Whether some `n`-simplex of `x` over `base` has the given faces.
pub(crate) fn has_filler(f: &SimplicialMap, fibers: &Fibers, cell: Cell, faces: &[usize], base: usize) -> bool {
    let x = f.source();
    let indices = cell.face_indices();
    fibers
        .over(base)
        .iter()
        .any(|&t| indices.iter().zip(faces).all(|(&i, &s)| x.face(t, i) == s))
}

/// The squares of `f` against `cells` with no lift, in order.
pub fn unfilled_squares(f: &SimplicialMap, cells: &[Cell]) -> Vec<CellSquare> {
    let fibers = Fibers::new(f);
    let mut out = Vec::new();
    for &cell in cells {
        for_each_square(f, &fibers, cell, |faces, base| {
            if !has_filler(f, &fibers, cell, faces, base) {
                out.push(CellSquare {
                    cell,
                    faces: faces.to_vec(),
                    base,
                });
            }
        });
    }
    out
}

/// The outcome of checking a lifting property.
#[derive(Clone, Debug)]
pub struct LiftCheck {
    /// The first square without a lift.
    pub witness: Option<CellSquare>,
    /// Number of squares examined.
    pub squares: usize,
}

impl LiftCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn check(f: &SimplicialMap, cells: &[Cell]) -> LiftCheck {
    let fibers = Fibers::new(f);
    let mut squares = 0;
    for &cell in cells {
        let mut witness = None;
        for_each_square(f, &fibers, cell, |faces, base| {
            if witness.is_none() {
                squares += 1;
                if !has_filler(f, &fibers, cell, faces, base) {
                    witness = Some(CellSquare {
                        cell,
                        faces: faces.to_vec(),
                        base,
                    });
                }
            }
        });
        if witness.is_some() {
            return LiftCheck { witness, squares };
        }
    }
    LiftCheck { witness: None, squares }
}

/// Horn inclusions `Λ^k[n]` for `1 <= n <= nmax`, by `n` then `k`.
pub fn horn_cells(nmax: usize) -> Vec<Cell> {
    (1..=nmax).flat_map(Cell::horns).collect()
}

/// Boundary inclusions `∂Δ[n]` for `0 <= n <= nmax`.
pub fn boundary_cells(nmax: usize) -> Vec<Cell> {
    (0..=nmax).map(|n| Cell::Boundary { n }).collect()
}

fn check_nmax(f: &SimplicialMap, nmax: usize) -> Result<()> {
    let d = f.source().truncation();
    if nmax > d {
        return Err(Error::Truncation {
            dim: nmax,
            truncation: d,
        });
    }
    Ok(())
}

/// Right lifting against every horn up to dimension `nmax`.
pub fn is_fibration(f: &SimplicialMap, nmax: usize) -> Result<LiftCheck> {
    check_nmax(f, nmax)?;
    Ok(check(f, &horn_cells(nmax)))
}

/// Right lifting against every boundary inclusion up to dimension `nmax`.
pub fn is_acyclic_fibration(f: &SimplicialMap, nmax: usize) -> Result<LiftCheck> {
    check_nmax(f, nmax)?;
    Ok(check(f, &boundary_cells(nmax)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{coproduct_sset, representable, terminal_sset};

    fn to_point(x: &Arc<TruncatedSimplicialSet>) -> SimplicialMap {
        let pt = Arc::new(terminal_sset(x.truncation()));
        SimplicialMap::new(x.clone(), pt, (0..x.len()).map(|s| x.dim(s)).collect()).unwrap()
    }

    #[test]
    fn representable_fills_its_own_horn() {
        let d2 = Arc::new(representable(2, 3).unwrap());
        let (horn, inc) = cell_subobject(Cell::Horn { n: 2, k: 1 }, 3).unwrap();
        let horn = Arc::new(horn);
        let inc = SimplicialMap::new(horn.clone(), d2.clone(), inc.carrier().to_vec()).unwrap();
        let p = to_point(&d2);
        let bottom = to_point(&d2);
        let sq = LiftingSquare::new(inc.clone(), inc, p, bottom).unwrap();
        let lift = find_lift(&sq).unwrap();
        assert_eq!(lift, SimplicialMap::identity(d2));
    }

    #[test]
    fn delta1_is_not_kan() {
        let d1 = Arc::new(representable(1, 3).unwrap());
        let f = to_point(&d1);
        let check = is_fibration(&f, 2).unwrap();
        let w = check.witness.expect("not a fibration");
        assert_eq!(w.cell, Cell::Horn { n: 2, k: 0 });
        let sq = w.to_lifting_square(&f).unwrap();
        assert!(find_lift(&sq).is_none());
        assert!(is_fibration(&f, 1).unwrap().holds());
        let acyclic = is_acyclic_fibration(&f, 2).unwrap();
        assert_eq!(acyclic.witness.unwrap().cell, Cell::Boundary { n: 1 });
    }

    #[test]
    fn two_points_over_a_point() {
        let pt = Arc::new(terminal_sset(3));
        let two = coproduct_sset(&pt, &pt).unwrap().object;
        let f = to_point(&two);
        assert!(is_fibration(&f, 2).unwrap().holds());
        let w = is_acyclic_fibration(&f, 2).unwrap().witness.unwrap();
        assert_eq!(w.cell, Cell::Boundary { n: 1 });
        assert_ne!(w.faces[0], w.faces[1]);
        assert!(is_fibration(&f, 4).is_err());
    }

    #[test]
    fn identities_lift_everything() {
        for n in 0..=2 {
            let x = Arc::new(representable(n, 3).unwrap());
            let id = SimplicialMap::identity(x);
            assert!(is_fibration(&id, 3).unwrap().holds());
            assert!(is_acyclic_fibration(&id, 3).unwrap().holds());
        }
    }

    #[test]
    fn direct_check_agrees_with_search() {
        let pt = Arc::new(terminal_sset(3));
        let d1 = Arc::new(representable(1, 3).unwrap());
        let x = coproduct_sset(&d1, &pt).unwrap().object;
        let f = to_point(&x);
        let fibers = Fibers::new(&f);
        for cell in horn_cells(2).into_iter().chain(boundary_cells(2)) {
            for_each_square(&f, &fibers, cell, |faces, base| {
                let sq = CellSquare {
                    cell,
                    faces: faces.to_vec(),
                    base,
                };
                let lifting = sq.to_lifting_square(&f).unwrap();
                assert_eq!(
                    find_lift(&lifting).is_some(),
                    has_filler(&f, &fibers, cell, faces, base),
                    "{cell}"
                );
            });
        }
    }

    #[test]
    fn non_commuting_square_rejected() {
        let d1 = Arc::new(representable(1, 2).unwrap());
        let (b1, inc) = cell_subobject(Cell::Boundary { n: 1 }, 2).unwrap();
        let b1 = Arc::new(b1);
        let inc = SimplicialMap::new(b1.clone(), d1.clone(), inc.carrier().to_vec()).unwrap();
        let id = SimplicialMap::identity(d1.clone());
        // the constant map at one end does not agree with the inclusion
        let v = d1.range(0).start;
        let vertex = yoneda_map(&d1, 0, v).unwrap();
        let pt_to_d1 = vertex;
        let collapse = SimplicialMap::new(
            d1.clone(),
            pt_to_d1.source().clone(),
            (0..d1.len()).map(|s| d1.dim(s)).collect(),
        )
        .unwrap();
        let constant = pt_to_d1.after(&collapse).unwrap();
        assert!(matches!(
            LiftingSquare::new(inc.clone(), inc, id, constant),
            Err(Error::NonCommutingSquare(_))
        ));
    }
}
