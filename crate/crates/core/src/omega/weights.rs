use crate::error::{Error, Result};
use crate::genus0::StableTree;

use super::OmegaSpec;

/// Decoration of the half-edges of a tree by residues in `0..r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWeighting {
    weights: Vec<u32>,
}

impl EdgeWeighting {
    pub fn weight(&self, h: usize) -> u32 {
        self.weights[h]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.weights
    }

    /// Checks both decoration rules: partner weights cancel mod `r`, and
    /// every vertex sums to `(valence - 2) s` mod `r`.
    pub fn check(&self, tree: &StableTree, spec: &OmegaSpec) -> Result<()> {
        let r = spec.r as i64;
        for (h, g) in tree.edges() {
            if (self.weights[h] + self.weights[g]) as i64 % r != 0 {
                return Err(Error::InvalidInput(format!("edge ({h},{g}) weights do not cancel")));
            }
        }
        for v in 0..tree.n_vertices() {
            let mut sum: i64 = tree.legs_at(v).iter().map(|&i| spec.a[i]).sum();
            sum += tree.half_edges_at(v).iter().map(|&h| self.weights[h] as i64).sum::<i64>();
            let target = (tree.valence(v) as i64 - 2) * spec.s as i64;
            if (sum - target).rem_euclid(r) != 0 {
                return Err(Error::InvalidInput(format!("vertex {v} violates the local constraint")));
            }
        }
        Ok(())
    }
}

/// Weight of the half-edge lying on the side whose legs are `side`:
/// the subtree there is a curve with `|side| + 1` markings, so the constraint
/// summed over its vertices leaves `(|side| - 1) s - Σ_side a` mod `r`.
pub fn side_weight(spec: &OmegaSpec, side: u32) -> u32 {
    let r = spec.r as i64;
    let count = side.count_ones() as i64;
    let sum: i64 = (0..spec.n()).filter(|&i| side >> i & 1 == 1).map(|i| spec.a[i]).sum();
    ((count - 1) * spec.s as i64 - sum).rem_euclid(r) as u32
}

/// The unique weighting of a tree, obtained by pruning leaves: the weight at
/// a half-edge is forced by the legs beyond it. A zero weight is carried on
/// both half-edges of its edge.
pub fn edge_weights(tree: &StableTree, spec: &OmegaSpec) -> EdgeWeighting {
    assert_eq!(tree.n_legs(), spec.n(), "tree and spec disagree on n");
    let weights = (0..2 * tree.n_edges()).map(|h| side_weight(spec, tree.side_legs(h))).collect();
    EdgeWeighting { weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus0::enumerate_stable_trees;

    fn split_tree(n: usize, side: u32) -> StableTree {
        enumerate_stable_trees(n)
            .unwrap()
            .into_iter()
            .find(|t| t.n_edges() == 1 && t.splits() == vec![side])
            .unwrap()
    }

    #[test]
    fn examples() {
        let spec = OmegaSpec::new(2, 0, vec![1, 1, 1, 1]).unwrap();
        let t = split_tree(4, 0b1100);
        assert_eq!(edge_weights(&t, &spec).as_slice(), &[0, 0]);

        let spec = OmegaSpec::new(13, 0, vec![4, 4, 3, 6, 2, 7]).unwrap();
        let t = split_tree(6, 0b111100);
        let w = edge_weights(&t, &spec);
        let (h, g) = t.edges().next().unwrap();
        let on_01 = if t.side_legs(h) & 1 == 1 { (w.weight(h), w.weight(g)) } else { (w.weight(g), w.weight(h)) };
        assert_eq!(on_01, (5, 8));
        w.check(&t, &spec).unwrap();
    }

    #[test]
    fn weightings_satisfy_rules() {
        let specs = [
            OmegaSpec::new(1, 0, vec![0, 3, 5, 2, 7]).unwrap(),
            OmegaSpec::new(3, 1, vec![1, 2, 0, 2, 1]).unwrap(),
            OmegaSpec::new(5, 5, vec![4, 1, 2, 9, -1]).unwrap(),
        ];
        for spec in &specs {
            for t in enumerate_stable_trees(spec.n()).unwrap() {
                let w = edge_weights(&t, spec);
                w.check(&t, spec).unwrap();
                if spec.r == 1 {
                    assert!(w.as_slice().iter().all(|&x| x == 0));
                }
            }
        }
    }
}
