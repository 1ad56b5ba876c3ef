use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::{representable, MapSearch, SSetBuilder, SimplicialMap, TruncatedSimplicialSet};
use crate::delta::{monotone_maps, DeltaMap, Generator};
use crate::error::{Error, Result};
use crate::hfcore::HfSet;

fn same_truncation(x: &TruncatedSimplicialSet, y: &TruncatedSimplicialSet) -> Result<usize> {
    if x.truncation() != y.truncation() {
        return Err(Error::Mismatch(format!(
            "truncations differ: {} vs {}",
            x.truncation(),
            y.truncation()
        )));
    }
    Ok(x.truncation())
}

/// A degreewise product with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: Arc<TruncatedSimplicialSet>,
    pub first: SimplicialMap,
    pub second: SimplicialMap,
}

impl Product {
    /// Index of the simplex `<a, b>`.
    pub fn pair_index(&self, a: &HfSet, b: &HfSet) -> Option<usize> {
        self.object.index_of(&HfSet::pair(a.clone(), b.clone()))
    }

    /// The map `z -> x × y` induced by `f : z -> x` and `g : z -> y`.
    pub fn tuple(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        if f.source() != g.source() {
            return Err(Error::Mismatch("tupled maps have different sources".into()));
        }
        let (x, y) = (self.first.target(), self.second.target());
        let carrier = (0..f.source().len())
            .map(|s| {
                self.pair_index(x.id(f.apply(s)), y.id(g.apply(s)))
                    .ok_or_else(|| Error::Mismatch("maps do not land in the factors".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(f.source().clone(), self.object.clone(), carrier)
    }
}

/// `x × y`, with `n`-simplices the pairs `<a, b>` of `n`-simplices and the
/// action taken componentwise.
pub fn product_sset(x: &Arc<TruncatedSimplicialSet>, y: &Arc<TruncatedSimplicialSet>) -> Result<Product> {
    let d = same_truncation(x, y)?;
    let mut b = SSetBuilder::new(d);
    let mut parts = Vec::new();
    for n in 0..=d {
        for a in x.range(n) {
            for c in y.range(n) {
                b.add_simplex(HfSet::pair(x.id(a).clone(), y.id(c).clone()), n)?;
                parts.push((a, c));
            }
        }
    }
    // insertion order is (dim, a, c); pair order can differ, so look indices up
    let offsets: Vec<usize> = (0..=d)
        .scan(0, |acc, n| {
            let start = *acc;
            *acc += x.count(n) * y.count(n);
            Some(start)
        })
        .collect();
    let index = |a: usize, c: usize| {
        let n = x.dim(a);
        offsets[n] + (a - x.range(n).start) * y.count(n) + (c - y.range(n).start)
    };
    for (s, &(a, c)) in parts.iter().enumerate() {
        let faces = (0..x.faces_of(a).len())
            .map(|i| index(x.face(a, i), y.face(c, i)))
            .collect();
        let degeneracies = (0..x.degeneracies_of(a).len())
            .map(|i| index(x.degeneracy(a, i), y.degeneracy(c, i)))
            .collect();
        b.set_faces(s, faces);
        b.set_degeneracies(s, degeneracies);
    }
    let object = Arc::new(b.build()?);
    let mut first = vec![0; object.len()];
    let mut second = vec![0; object.len()];
    for s in 0..object.len() {
        let (a, c) = object.id(s).as_pair().expect("product simplices are pairs");
        first[s] = x.index_of(&a).expect("first component");
        second[s] = y.index_of(&c).expect("second component");
    }
    Ok(Product {
        first: SimplicialMap::new_unchecked(object.clone(), x.clone(), first)?,
        second: SimplicialMap::new_unchecked(object.clone(), y.clone(), second)?,
        object,
    })
}

/// A coproduct with its injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: Arc<TruncatedSimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

impl Coproduct {
    /// The copairing `[f, g] : x + y -> z`.
    pub fn copair(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        if f.target() != g.target() {
            return Err(Error::Mismatch("copaired maps have different targets".into()));
        }
        let mut carrier = vec![0; self.object.len()];
        for (s, &t) in self.left.carrier().iter().enumerate() {
            carrier[t] = f.apply(s);
        }
        for (s, &t) in self.right.carrier().iter().enumerate() {
            carrier[t] = g.apply(s);
        }
        SimplicialMap::new(self.object.clone(), f.target().clone(), carrier)
    }
}

/// `x + y`, tagging simplices as `<a, #0>` and `<b, #1>`.
pub fn coproduct_sset(x: &Arc<TruncatedSimplicialSet>, y: &Arc<TruncatedSimplicialSet>) -> Result<Coproduct> {
    let d = same_truncation(x, y)?;
    let mut b = SSetBuilder::new(d);
    for (tag, part) in [x, y].into_iter().enumerate() {
        for s in 0..part.len() {
            b.add_simplex(HfSet::pair(part.id(s).clone(), HfSet::ordinal(tag)), part.dim(s))?;
        }
    }
    let shift = x.len();
    for s in 0..x.len() {
        b.set_faces(s, x.faces_of(s).to_vec());
        b.set_degeneracies(s, x.degeneracies_of(s).to_vec());
    }
    for s in 0..y.len() {
        b.set_faces(shift + s, y.faces_of(s).iter().map(|&t| t + shift).collect());
        b.set_degeneracies(shift + s, y.degeneracies_of(s).iter().map(|&t| t + shift).collect());
    }
    let object = Arc::new(b.build()?);
    let inject = |part: &Arc<TruncatedSimplicialSet>, tag: usize| {
        let carrier = (0..part.len())
            .map(|s| {
                object
                    .index_of(&HfSet::pair(part.id(s).clone(), HfSet::ordinal(tag)))
                    .expect("tagged simplex")
            })
            .collect();
        SimplicialMap::new_unchecked(part.clone(), object.clone(), carrier)
    };
    Ok(Coproduct {
        left: inject(x, 0)?,
        right: inject(y, 1)?,
        object: object.clone(),
    })
}

/// The exponential `y^x` up to degree `degree`, with its evaluation map.
#[derive(Clone, Debug)]
pub struct Exponential {
    /// Truncated at `degree`.
    pub object: Arc<TruncatedSimplicialSet>,
    /// `y^x × x -> y`, all three truncated at `degree`.
    pub evaluation: SimplicialMap,
    pub product: Product,
}

/// `y^x` with `n`-simplices the maps `x × Δ[n] -> y` for `n <= degree`,
/// named by their graphs, and the action given by precomposition on the
/// `Δ[n]` factor.
///
/// A map out of `x × Δ[n]` is only seen correctly when its nondegenerate
/// simplices fit, so the top nondegenerate dimension of `x` plus `degree`
/// must not exceed the truncation.
pub fn exponential_sset(
    y: &Arc<TruncatedSimplicialSet>,
    x: &Arc<TruncatedSimplicialSet>,
    degree: usize,
) -> Result<Exponential> {
    let d = same_truncation(x, y)?;
    let needed = x.max_nondegenerate_dim().unwrap_or(0) + degree;
    if needed > d {
        return Err(Error::Truncation {
            dim: needed,
            truncation: d,
        });
    }
    // maps x × Δ[n] -> y, as carriers, with the product used for each n
    let mut products = Vec::new();
    let mut maps: Vec<Vec<Vec<usize>>> = Vec::new();
    for n in 0..=degree {
        let delta = Arc::new(representable(n, d)?);
        let p = product_sset(x, &delta)?;
        let mut found = Vec::new();
        MapSearch::new(&p.object, y).for_each(|a| {
            found.push(a.to_vec());
            ControlFlow::Continue(())
        });
        maps.push(found);
        products.push((delta, p));
    }
    let graph = |n: usize, carrier: &[usize]| {
        let obj = &products[n].1.object;
        HfSet::from_members((0..obj.len()).map(|s| HfSet::pair(obj.id(s).clone(), y.id(carrier[s]).clone())))
    };
    let mut b = SSetBuilder::new(degree);
    let mut start = Vec::new();
    let mut origin = HashMap::new();
    for (n, found) in maps.iter().enumerate() {
        start.push(b.len());
        for (k, carrier) in found.iter().enumerate() {
            let id = graph(n, carrier);
            origin.insert(id.clone(), (n, k));
            b.add_simplex(id, n)?;
        }
    }
    // index of the n-simplex with a given carrier
    let lookup =
        |b: &SSetBuilder, n: usize, carrier: &[usize]| b.index_of(&graph(n, carrier)).expect("precomposite is a map");
    for (n, found) in maps.iter().enumerate() {
        let (_, pn) = &products[n];
        let mut gens: Vec<Generator> = Vec::new();
        if n > 0 {
            gens.extend((0..=n).map(|index| Generator::Face { dim: n, index }));
        }
        if n < degree {
            gens.extend((0..=n).map(|index| Generator::Degeneracy { dim: n, index }));
        }
        for (k, carrier) in found.iter().enumerate() {
            let s = start[n] + k;
            for &g in &gens {
                let m = g.lands_in();
                let (delta_m, pm) = &products[m];
                let gmap = g.to_map();
                // (a, alpha) ↦ carrier(a, g ∘ alpha)
                let pre: Vec<usize> = (0..pm.object.len())
                    .map(|t| {
                        let (a, alpha) = (pm.first.apply(t), pm.second.apply(t));
                        let alpha_map = alpha_of(delta_m, alpha, m);
                        let moved = gmap.after(&alpha_map).expect("composable");
                        let target = pn
                            .pair_index(x.id(a), &moved.graph_hf())
                            .expect("simplex of the product");
                        carrier[target]
                    })
                    .collect();
                let t = lookup(&b, m, &pre);
                b.set_action(g, s, t)?;
            }
        }
    }
    let object = Arc::new(b.build()?);

    // evaluation: (phi, a) ↦ phi(a, id)
    let xt = Arc::new(x.truncate(degree)?);
    let yt = Arc::new(y.truncate(degree)?);
    let product = product_sset(&object, &xt)?;
    let carrier = (0..product.object.len())
        .map(|t| {
            let phi = product.first.apply(t);
            let a = product.second.apply(t);
            let (n, k) = origin[object.id(phi)];
            let carrier = &maps[n][k];
            let pn = &products[n].1;
            let ida = DeltaMap::identity(n).graph_hf();
            let s = pn.pair_index(xt.id(a), &ida).expect("diagonal simplex");
            yt.index_of(y.id(carrier[s])).expect("truncated target")
        })
        .collect();
    let evaluation = SimplicialMap::new(product.object.clone(), yt, carrier)?;
    Ok(Exponential {
        object,
        evaluation,
        product,
    })
}

fn alpha_of(delta: &TruncatedSimplicialSet, alpha: usize, m: usize) -> DeltaMap {
    let id = delta.id(alpha);
    let dim = delta.dim(alpha);
    monotone_maps(dim, m)
        .into_iter()
        .find(|f| &f.graph_hf() == id)
        .expect("simplex of a representable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{count_maps, initial_sset, terminal_sset, validate_presheaf};

    fn delta(n: usize, d: usize) -> Arc<TruncatedSimplicialSet> {
        Arc::new(representable(n, d).unwrap())
    }

    #[test]
    fn product_counts() {
        let p = product_sset(&delta(1, 4), &delta(1, 4)).unwrap();
        assert_eq!(p.object.count(1), 9);
        assert!(validate_presheaf(&p.object).is_empty());
        let unit = product_sset(&delta(0, 4), &delta(2, 4)).unwrap();
        assert!((0..=4).all(|n| unit.object.count(n) == delta(2, 4).count(n)));
        let second = &unit.second;
        assert!(second.is_monic());
    }

    #[test]
    fn coproduct_of_points() {
        let c = coproduct_sset(&delta(0, 3), &delta(0, 3)).unwrap();
        assert_eq!(c.object.count(0), 2);
        assert!(validate_presheaf(&c.object).is_empty());
        assert!(c.left.is_monic() && c.right.is_monic());
        let tagged = c.object.id(c.left.apply(0));
        assert_eq!(tagged.as_pair().unwrap().1, HfSet::ordinal(0));
    }

    #[test]
    fn universal_properties_by_counting() {
        let d = 3;
        let x = delta(1, d);
        let y = Arc::new(
            coproduct_sset(&delta(0, d), &delta(0, d))
                .unwrap()
                .object
                .as_ref()
                .clone(),
        );
        let z = delta(1, d);
        let p = product_sset(&x, &y).unwrap();
        assert_eq!(count_maps(&z, &p.object), count_maps(&z, &x) * count_maps(&z, &y));
        let c = coproduct_sset(&x, &y).unwrap();
        assert_eq!(count_maps(&c.object, &z), count_maps(&x, &z) * count_maps(&y, &z));
        let empty = initial_sset(d);
        let point = terminal_sset(d);
        assert_eq!(count_maps(&empty, &z), 1);
        assert_eq!(count_maps(&z, &point), 1);
    }

    #[test]
    fn exponential_small_cases() {
        let d = 3;
        let e = exponential_sset(&delta(1, d), &delta(1, d), 1).unwrap();
        assert_eq!(e.object.count(0), 3);
        assert!(validate_presheaf(&e.object).is_empty());
        let by_point = exponential_sset(&delta(1, d), &delta(0, d), 2).unwrap();
        assert!((0..=2).all(|n| by_point.object.count(n) == delta(1, d).count(n)));
        assert!(matches!(
            exponential_sset(&delta(1, d), &delta(2, d), 2),
            Err(Error::Truncation { dim: 4, truncation: 3 })
        ));
    }
}
