//! Counting minimal dominating sets by folding a composition plan through `⋆`.

use num_bigint::BigUint;

use crate::algebra::CatVector;
use crate::error::TreeError;
use crate::tree::{decompose, CompositionPlan, Tree};

/// Evaluates a plan bottom-up; every part starts as the seed vector.
pub fn evaluate_plan(plan: &CompositionPlan) -> CatVector {
    let mut acc = vec![CatVector::seed(); plan.n];
    for step in &plan.steps {
        let right = std::mem::take(&mut acc[step.right]);
        acc[step.left] = acc[step.left].star(&right);
    }
    std::mem::take(&mut acc[plan.root])
}

/// The category vector of `t` rooted at `root`.
pub fn vector_of(t: &Tree, root: usize) -> Result<CatVector, TreeError> {
    Ok(evaluate_plan(&decompose(t, root)?))
}

/// Number of minimal dominating sets of `t`.
pub fn count_mds(t: &Tree) -> BigUint {
    vector_of(t, 0).expect("vertex 0 exists").total()
}
