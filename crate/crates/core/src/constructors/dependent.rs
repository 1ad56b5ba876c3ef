use crate::error::{Error, Result};
use crate::hfcore::{canonical_over_base, FinFunction, HfSet};

fn composable(k: &FinFunction, f: &FinFunction) -> Result<()> {
    if k.codomain() != f.domain() {
        return Err(Error::Mismatch(format!(
            "codomain {} is not the domain {}",
            k.codomain(),
            f.domain()
        )));
    }
    Ok(())
}

/// `Σ_f k`: the canonical function over `B` isomorphic to `f ∘ k`.
pub fn sigma_dependent(k: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
    composable(k, f)?;
    Ok(canonical_over_base(&f.after(k)?))
}

/// The sections of `k` over `f⁻¹(b)`, each as a list of values indexed by
/// the members of the fiber.
pub fn sections_over(k: &FinFunction, f: &FinFunction, b: &HfSet) -> Result<Vec<Vec<HfSet>>> {
    composable(k, f)?;
    let fiber = f.fiber(b);
    let mut out = vec![Vec::new()];
    for a in fiber.members() {
        let choices = k.fiber(a);
        out = out
            .into_iter()
            .flat_map(|s| {
                choices.members().iter().map(move |x| {
                    let mut s = s.clone();
                    s.push(x.clone());
                    s
                })
            })
            .collect();
    }
    Ok(out)
}

/// `Π_f k`: over each `b`, one element per section of `k` over `f⁻¹(b)`,
/// canonicalized over `B`.
pub fn pi_dependent(k: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
    composable(k, f)?;
    let mut pairs = Vec::new();
    for b in f.codomain().members() {
        for s in sections_over(k, f, b)? {
            pairs.push((HfSet::pair(b.clone(), HfSet::sequence(s)), b.clone()));
        }
    }
    let domain = HfSet::from_members(pairs.iter().map(|(x, _)| x.clone()));
    let total = FinFunction::new(domain, f.codomain().clone(), pairs)?;
    Ok(canonical_over_base(&total))
}

/// Number of maps `u` with `p ∘ u = m`, found by trying every function
/// `dom(m) -> dom(p)`.
pub fn slice_hom_count(m: &FinFunction, p: &FinFunction) -> Result<usize> {
    if m.codomain() != p.codomain() {
        return Err(Error::Mismatch("objects live over different bases".into()));
    }
    let targets = p.domain().members();
    let n = m.domain().len();
    if targets.is_empty() {
        return Ok(usize::from(n == 0));
    }
    let mut u = vec![0usize; n];
    let mut count = 0;
    loop {
        if m.values().iter().zip(&u).all(|(b, &t)| &p.values()[t] == b) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            u[i] += 1;
            if u[i] < targets.len() {
                break;
            }
            u[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::selected_pullback;

    fn ord(n: usize) -> HfSet {
        HfSet::ordinal(n)
    }

    fn func(dom: usize, cod: usize, values: &[usize]) -> FinFunction {
        FinFunction::new(
            ord(dom),
            ord(cod),
            values.iter().enumerate().map(|(i, &v)| (ord(i), ord(v))),
        )
        .unwrap()
    }

    #[test]
    fn sigma_fibers_add() {
        let k = func(3, 2, &[0, 0, 1]);
        let f = func(2, 1, &[0, 0]);
        let s = sigma_dependent(&k, &f).unwrap();
        assert_eq!(s.fiber_sizes(), vec![3]);
        assert_eq!(
            sigma_dependent(&FinFunction::identity(&ord(2)), &f).unwrap(),
            canonical_over_base(&f)
        );
        assert_eq!(
            sigma_dependent(&k, &FinFunction::identity(&ord(2))).unwrap(),
            canonical_over_base(&k)
        );
    }

    #[test]
    fn pi_fibers_multiply() {
        let k = func(5, 2, &[0, 0, 1, 1, 1]);
        let f = func(2, 1, &[0, 0]);
        assert_eq!(pi_dependent(&k, &f).unwrap().fiber_sizes(), vec![6]);
        let gap = func(2, 2, &[0, 0]);
        assert_eq!(pi_dependent(&gap, &f).unwrap().fiber_sizes(), vec![0]);
        assert_eq!(
            pi_dependent(&k, &FinFunction::identity(&ord(2))).unwrap(),
            canonical_over_base(&k)
        );
    }

    #[test]
    fn adjunction_small() {
        let k = func(3, 2, &[0, 1, 1]);
        let f = func(2, 2, &[1, 1]);
        let m = func(2, 2, &[1, 0]);
        let pi = pi_dependent(&k, &f).unwrap();
        let pulled = selected_pullback(&f, &m).unwrap().leg;
        assert_eq!(slice_hom_count(&m, &pi).unwrap(), slice_hom_count(&pulled, &k).unwrap());
        let sigma = sigma_dependent(&k, &f).unwrap();
        assert_eq!(
            slice_hom_count(&sigma, &m).unwrap(),
            slice_hom_count(&k, &pulled).unwrap()
        );
    }
}
