use serde::Serialize;

use super::{part, DecompositionTree, SumType};
use crate::cone;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::semigroup::GeneratorSet;

/// A decomposition tree flattened into partitions `J_1 > J_2 > … > J_r`,
/// `J_1 = {all}`, each refining the previous by splitting one part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionChain {
    pub chain: Vec<Vec<Vec<usize>>>,
    /// `D(J) = Σ_parts (extreme rays − dim)`.
    pub d_values: Vec<usize>,
    /// `splits[i]` is the type of the node that turns `J_{i+1}` into `J_{i+2}`.
    pub splits: Vec<SumType>,
}

impl PartitionChain {
    /// `D` drops by one across internal splits and is unchanged otherwise.
    pub fn accounting_holds(&self) -> bool {
        self.d_values.windows(2).zip(&self.splits).all(|(w, ty)| {
            let expected = usize::from(*ty == SumType::Internal);
            w[0].checked_sub(w[1]) == Some(expected)
        })
    }
}

/// Linearises a full decomposition of `A` into its chain of partitions.
pub fn chain_of_partitions(tree: &DecompositionTree, a: &GeneratorSet) -> Result<PartitionChain> {
    let m = a.len();
    cone::integer_functional(a)?;
    let rank_of = |idx: &[usize]| {
        linalg::rank(&IntMatrix::new(part(a, idx), a.ambient()).expect("uniform rows"))
    };

    let mut covered: Vec<usize> = tree.leaves().concat();
    covered.sort_unstable();
    if covered != (0..m).collect::<Vec<_>>() {
        return Err(Error::MalformedTree(format!(
            "leaves must partition 0..{m}, got {covered:?}"
        )));
    }
    for leaf in tree.leaves() {
        if rank_of(leaf) != leaf.len() {
            return Err(Error::MalformedTree(format!(
                "leaf {leaf:?} is not linearly independent"
            )));
        }
    }
    let nodes = tree.nodes();
    for node in &nodes {
        let DecompositionTree::Node { left, right, cert, .. } = node else {
            unreachable!("nodes() yields internal nodes")
        };
        if left.indices() != sorted(cert.e1()) || right.indices() != sorted(cert.e2()) {
            return Err(Error::MalformedTree(
                "certificate parts differ from the subtrees".into(),
            ));
        }
    }
    let rank = rank_of(&(0..m).collect::<Vec<_>>());
    if tree.leaves().len() != m - rank + 1 {
        return Err(Error::MalformedTree(format!(
            "{} leaves, expected {}",
            tree.leaves().len(),
            m - rank + 1
        )));
    }

    let defect = |p: &[usize]| cone::rays_of(&part(a, p)).len() - rank_of(p);
    let mut parts: Vec<Vec<usize>> = vec![(0..m).collect()];
    let mut chain = vec![parts.clone()];
    let mut d_values = vec![defect(&parts[0])];
    let mut splits = Vec::new();
    for node in nodes {
        let DecompositionTree::Node { left, right, sum_type, .. } = node else {
            unreachable!()
        };
        let whole = node.indices();
        let pos = parts
            .iter()
            .position(|p| *p == whole)
            .ok_or_else(|| Error::MalformedTree("node does not split a current part".into()))?;
        parts.splice(pos..=pos, [left.indices(), right.indices()]);
        d_values.push(parts.iter().map(|p| defect(p)).sum());
        chain.push(parts.clone());
        splits.push(*sum_type);
    }
    if d_values.last() != Some(&0) {
        return Err(Error::MalformedTree("leaf defect must vanish".into()));
    }
    Ok(PartitionChain {
        chain,
        d_values,
        splits,
    })
}

fn sorted(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::{is_ci_cone, is_complete_intersection};

    fn gs(rows: &[&[i64]]) -> GeneratorSet {
        GeneratorSet::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn numerical_chain_has_zero_defect() {
        let a = gs(&[&[4], &[6], &[9]]);
        let tree = is_complete_intersection(&a).unwrap().tree.unwrap();
        let c = chain_of_partitions(&tree, &a).unwrap();
        assert_eq!(c.chain.len(), 3);
        assert_eq!(c.d_values, vec![0, 0, 0]);
        assert!(c.accounting_holds());
    }

    #[test]
    fn bipyramid_chain() {
        let a = gs(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]);
        let tree = is_ci_cone(&a).unwrap().tree.unwrap();
        let c = chain_of_partitions(&tree, &a).unwrap();
        assert_eq!(c.chain, vec![vec![vec![0, 1, 2, 3]], vec![vec![0, 1], vec![2, 3]]]);
        assert_eq!(c.d_values, vec![1, 0]);
        assert_eq!(c.splits, vec![SumType::Internal]);
        assert!(c.accounting_holds());
    }

    #[test]
    fn leaf_only_chain() {
        let a = gs(&[&[1, 0], &[0, 1]]);
        let tree = DecompositionTree::Leaf { indices: vec![0, 1] };
        let c = chain_of_partitions(&tree, &a).unwrap();
        assert_eq!(c.d_values, vec![0]);
        assert!(c.splits.is_empty());
    }

    #[test]
    fn malformed_trees_are_rejected() {
        let a = gs(&[&[4], &[6], &[9]]);
        let dependent = DecompositionTree::Leaf { indices: vec![0, 1, 2] };
        assert!(matches!(chain_of_partitions(&dependent, &a), Err(Error::MalformedTree(_))));
        let partial = DecompositionTree::Leaf { indices: vec![0] };
        assert!(matches!(chain_of_partitions(&partial, &a), Err(Error::MalformedTree(_))));
    }
}
