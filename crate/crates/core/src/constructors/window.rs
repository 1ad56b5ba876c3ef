use std::fmt;
use std::sync::Arc;

use crate::hfcore::{FinFunction, HfSet};

type Evaluator = Arc<dyn Fn(&HfSet) -> Option<HfSet> + Send + Sync>;

/// A class function seen through a finite window of its domain, evaluated
/// pointwise under an evaluation budget.
///
/// The evaluator returns `None` where the function is undefined.
#[derive(Clone)]
pub struct ClassFunctionView {
    eval: Evaluator,
    window: HfSet,
    budget: usize,
}

impl fmt::Debug for ClassFunctionView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassFunctionView(window={}, budget={})", self.window, self.budget)
    }
}

/// Answer of a window check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowAnswer {
    /// The set and the graph of the restriction.
    Yes { set: HfSet, graph: HfSet },
    /// The function is undefined at the witness.
    No { witness: HfSet },
    /// The budget ran out after this many evaluations.
    Unknown(usize),
}

impl ClassFunctionView {
    pub fn new<F>(eval: F, window: HfSet, budget: usize) -> Self
    where
        F: Fn(&HfSet) -> Option<HfSet> + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            window,
            budget,
        }
    }

    /// A finite function, windowed on its whole domain.
    pub fn from_function(f: &FinFunction, budget: usize) -> Self {
        let g = f.clone();
        Self::new(move |x| g.apply(x).cloned(), f.domain().clone(), budget)
    }

    pub fn window(&self) -> &HfSet {
        &self.window
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn with_budget(&self, budget: usize) -> Self {
        Self { budget, ..self.clone() }
    }

    /// Evaluates on `points` in order until the budget is spent.
    fn graph_on(&self, points: &[HfSet]) -> Result<Vec<(HfSet, HfSet)>, WindowAnswer> {
        let mut graph = Vec::with_capacity(points.len());
        for (used, x) in points.iter().enumerate() {
            if used == self.budget {
                return Err(WindowAnswer::Unknown(self.budget));
            }
            match (self.eval)(x) {
                Some(y) => graph.push((x.clone(), y)),
                None => return Err(WindowAnswer::No { witness: x.clone() }),
            }
        }
        Ok(graph)
    }
}

fn pairs_set(graph: &[(HfSet, HfSet)]) -> HfSet {
    HfSet::from_members(graph.iter().map(|(x, y)| HfSet::pair(x.clone(), y.clone())))
}

/// Whether `a` has an image set, with the graph of the restriction.
pub fn is_bounded_window(g: &ClassFunctionView, a: &HfSet) -> WindowAnswer {
    let points: Vec<HfSet> = a.members().iter().filter(|x| g.window.contains(x)).cloned().collect();
    match g.graph_on(&points) {
        Ok(graph) => WindowAnswer::Yes {
            set: HfSet::from_members(graph.iter().map(|(_, y)| y.clone())),
            graph: pairs_set(&graph),
        },
        Err(answer) => answer,
    }
}

/// Whether `b` has a preimage set inside the window, with the graph of the
/// restriction. Every point of the window has to be evaluated.
pub fn is_locally_small_window(g: &ClassFunctionView, b: &HfSet) -> WindowAnswer {
    match g.graph_on(g.window.members()) {
        Ok(graph) => {
            let graph: Vec<_> = graph.into_iter().filter(|(_, y)| b.contains(y)).collect();
            WindowAnswer::Yes {
                set: HfSet::from_members(graph.iter().map(|(x, _)| x.clone())),
                graph: pairs_set(&graph),
            }
        }
        Err(answer) => answer,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ordinals(n: usize) -> HfSet {
        HfSet::ordinal(n)
    }

    #[test]
    fn finite_functions_are_bounded_and_locally_small() {
        let f = FinFunction::new(
            ordinals(3),
            ordinals(2),
            [
                (ordinals(0), ordinals(1)),
                (ordinals(1), ordinals(1)),
                (ordinals(2), ordinals(0)),
            ],
        )
        .unwrap();
        let g = ClassFunctionView::from_function(&f, 10);
        assert!(
            matches!(is_bounded_window(&g, &ordinals(2)), WindowAnswer::Yes { ref set, .. } if *set == HfSet::singleton(ordinals(1)))
        );
        assert!(
            matches!(is_locally_small_window(&g, &HfSet::singleton(ordinals(1))), WindowAnswer::Yes { ref set, .. } if *set == ordinals(2))
        );
        assert_eq!(
            is_bounded_window(&g.with_budget(0), &ordinals(1)),
            WindowAnswer::Unknown(0)
        );
    }

    #[test]
    fn enumerators() {
        let id = ClassFunctionView::new(|x| Some(x.clone()), ordinals(10), 100);
        assert!(
            matches!(is_bounded_window(&id, &ordinals(10)), WindowAnswer::Yes { ref set, .. } if *set == ordinals(10))
        );
        let double = ClassFunctionView::new(|x| Some(HfSet::ordinal(2 * x.as_ordinal()?)), ordinals(10), 100);
        assert!(
            matches!(is_locally_small_window(&double, &ordinals(10)), WindowAnswer::Yes { ref set, .. } if *set == ordinals(5))
        );
        assert_eq!(
            is_locally_small_window(&double.with_budget(4), &ordinals(10)),
            WindowAnswer::Unknown(4)
        );
        let partial = ClassFunctionView::new(|x| (x.len() < 3).then(|| x.clone()), ordinals(5), 100);
        assert_eq!(
            is_bounded_window(&partial, &ordinals(5)),
            WindowAnswer::No { witness: ordinals(3) }
        );
    }
}
