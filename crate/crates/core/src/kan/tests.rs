use std::collections::HashSet;
use std::sync::Arc;

use super::*;
use crate::error::Error;
use crate::sset::{
    cell_subobject, coproduct_sset, terminal_sset, validate_presheaf, Cell, SimplicialMap, TruncatedSimplicialSet,
};

fn to_point(x: &Arc<TruncatedSimplicialSet>) -> SimplicialMap {
    let pt = Arc::new(terminal_sset(x.truncation()));
    SimplicialMap::new(x.clone(), pt, (0..x.len()).map(|s| x.dim(s)).collect()).unwrap()
}

fn inner_horn(d: usize) -> Arc<TruncatedSimplicialSet> {
    Arc::new(cell_subobject(Cell::Horn { n: 2, k: 1 }, d).unwrap().0)
}

fn check_invariants(f: &SimplicialMap, fac: &Factorization) {
    assert!(validate_presheaf(&fac.z).is_empty());
    assert_eq!(fac.p.after(&fac.j).unwrap(), *f);
    assert!(fac.j.is_monic());
    for s in 0..fac.z.len() {
        let t = fac.term(s);
        assert_eq!(t.code(), fac.z.id(s));
        assert!(t.is_well_formed(&fac.signature));
    }
    let images: HashSet<usize> = fac.j.carrier().iter().copied().collect();
    for s in 0..fac.z.len() {
        assert_eq!(fac.stage_of[s] == 0, images.contains(&s));
    }
}

#[test]
fn inner_horn_gets_one_filler() {
    let x = inner_horn(2);
    let f = to_point(&x);
    let fac = factorize(&f, CellKind::Horn, 1, 2).unwrap();
    check_invariants(&f, &fac);
    let inner: Vec<_> = fac
        .cells
        .iter()
        .filter(|c| c.cell == Cell::Horn { n: 2, k: 1 })
        .collect();
    assert_eq!(inner.len(), 1);
    let cell = inner[0];
    let w = fac.z.index_of(cell.missing.as_ref().unwrap()).unwrap();
    let z = fac.z.index_of(&cell.filler).unwrap();
    assert_eq!(fac.z.dim(z), 2);
    assert_eq!(fac.z.face(z, 1), w);
    assert!(!fac.z.is_degenerate(w));
    let name = fac.term(z).display(&fac.signature).to_string();
    assert!(name.starts_with("phi2_1(c_x"), "{name}");
    assert!(name.ends_with(",y#2)"), "{name}");
    assert_eq!(fac.stages_run, 1);
}

#[test]
fn fillers_decode_to_their_squares() {
    let x = inner_horn(2);
    let f = to_point(&x);
    let fac = factorize(&f, CellKind::Horn, 2, 2).unwrap();
    check_invariants(&f, &fac);
    for c in &fac.cells {
        let z = fac.z.index_of(&c.filler).unwrap();
        let (cell, faces, base) = fac.decode_square(fac.term(z)).unwrap();
        assert_eq!(cell, c.cell);
        assert_eq!(base, c.base);
        let ids: Vec<_> = faces.iter().map(|&s| fac.z.id(s).clone()).collect();
        assert_eq!(ids, c.faces);
        for (&i, &s) in c.cell.face_indices().iter().zip(&faces) {
            assert_eq!(fac.z.face(z, i), s);
        }
    }
    let fillers: HashSet<_> = fac.cells.iter().map(|c| c.filler.clone()).collect();
    assert_eq!(fillers.len(), fac.cells.len());
}

#[test]
fn each_stage_fills_the_previous_squares() {
    let x = inner_horn(2);
    let f = to_point(&x);
    let cells = CellKind::Horn.cells(2);
    let fac = factorize(&f, CellKind::Horn, 2, 2).unwrap();
    for i in 0..fac.stages_run {
        let (_, before) = fac.snapshot(i).unwrap();
        let (after_z, after) = fac.snapshot(i + 1).unwrap();
        for sq in unfilled_squares(&before, &cells) {
            let faces: Vec<usize> = sq
                .faces
                .iter()
                .map(|&s| after_z.index_of(before.source().id(s)).unwrap())
                .collect();
            let lifted = CellSquare {
                cell: sq.cell,
                faces,
                base: sq.base,
            };
            assert!(find_lift(&lifted.to_lifting_square(&after).unwrap()).is_some());
        }
    }
    let (full, _) = fac.snapshot(fac.stages_run).unwrap();
    assert_eq!(full.len(), fac.z.len());
}

#[test]
fn identity_adds_nothing() {
    let x = inner_horn(2);
    let id = SimplicialMap::identity(x.clone());
    for kind in [CellKind::Horn, CellKind::Boundary] {
        let fac = factorize(&id, kind, 2, 2).unwrap();
        assert_eq!(fac.added(), 0);
        assert!(fac.cells.is_empty());
        assert_eq!(fac.remaining, 0);
        assert_eq!(fac.z.len(), x.len());
    }
}

#[test]
fn boundary_kind_connects_two_points() {
    let pt = Arc::new(terminal_sset(2));
    let two = coproduct_sset(&pt, &pt).unwrap().object;
    let f = to_point(&two);
    let fac = factorize(&f, CellKind::Boundary, 1, 2).unwrap();
    check_invariants(&f, &fac);
    let edges: Vec<_> = fac.cells.iter().filter(|c| c.cell == Cell::Boundary { n: 1 }).collect();
    assert_eq!(edges.len(), 2);
    assert!(fac.cells.iter().all(|c| c.missing.is_none()));
    assert!(fac.remaining > 0);
}

#[test]
fn overflow_names_the_cell() {
    let f = to_point(&inner_horn(2));
    match factorize(&f, CellKind::Horn, 1, 3) {
        Err(Error::TruncationOverflow { square, truncation }) => {
            assert_eq!(square, "horn(3,0)");
            assert_eq!(truncation, 2);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn identity_type_of_two_points() {
    let pt = Arc::new(terminal_sset(2));
    let two = coproduct_sset(&pt, &pt).unwrap().object;
    let p = to_point(&two);
    let id = id_type(&p, 1, 2).unwrap();
    assert_eq!(id.pullback.object.count(0), 4);
    let hit: HashSet<usize> = id.diagonal.carrier().iter().copied().collect();
    assert_eq!(hit.iter().filter(|&&s| id.pullback.object.dim(s) == 0).count(), 2);
    assert_eq!(id.endpoints().after(id.r()).unwrap(), id.diagonal);
}

#[test]
fn identity_type_needs_a_fibration() {
    let d1 = Arc::new(crate::sset::representable(1, 2).unwrap());
    let p = to_point(&d1);
    assert!(matches!(id_type(&p, 1, 2), Err(Error::NotFibration(_))));
}
