//! Explicit finite posets with a distinguished subset `Γ`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{AlgebraError, Result};

/// `(Ω, ≤, Γ)` with `Ω` interned as labels `0..n`. Row `x` of `upper` holds
/// every `y` with `x ≤ y`.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    upper: Vec<FixedBitSet>,
    lower: Vec<FixedBitSet>,
    gamma: FixedBitSet,
}

impl FinitePoset {
    /// The order generated by `covers`; cycles are rejected.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)], gamma: &[usize]) -> Result<Self> {
        let n = labels.len();
        let mut upper: Vec<FixedBitSet> = (0..n).map(|x| single(n, x)).collect();
        for &(x, y) in covers {
            if x >= n || y >= n {
                return Err(AlgebraError::InvalidPoset(format!("cover ({x}, {y}) is out of range")));
            }
            upper[x].insert(y);
        }
        // Warshall closure over bit rows
        for k in 0..n {
            let row_k = upper[k].clone();
            for row in upper.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_upper(labels, upper, gamma)
    }

    /// The order given by its full relation: `leq[x]` lists every `y ≥ x`.
    pub fn from_relation(labels: Vec<String>, leq: &[Vec<usize>], gamma: &[usize]) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n {
            return Err(AlgebraError::InvalidPoset("relation table has the wrong number of rows".into()));
        }
        let mut upper = Vec::with_capacity(n);
        for row in leq {
            let mut bits = FixedBitSet::with_capacity(n);
            for &y in row {
                if y >= n {
                    return Err(AlgebraError::InvalidPoset(format!("element {y} is out of range")));
                }
                bits.insert(y);
            }
            upper.push(bits);
        }
        for x in 0..n {
            if !upper[x].contains(x) {
                return Err(AlgebraError::InvalidPoset(format!("not reflexive at {}", labels[x])));
            }
            for y in upper[x].ones() {
                if !upper[y].is_subset(&upper[x]) {
                    return Err(AlgebraError::InvalidPoset(format!("not transitive at {} ≤ {}", labels[x], labels[y])));
                }
            }
        }
        Self::from_upper(labels, upper, gamma)
    }

    /// Builds from cover pairs given by label.
    pub fn from_labeled_covers(labels: Vec<String>, covers: &[(String, String)], gamma: &[String]) -> Result<Self> {
        let index = intern(&labels)?;
        let look = |l: &String| index.get(l).copied().ok_or_else(|| AlgebraError::InvalidPoset(format!("unknown label {l}")));
        let covers = covers.iter().map(|(x, y)| Ok((look(x)?, look(y)?))).collect::<Result<Vec<_>>>()?;
        let gamma = gamma.iter().map(look).collect::<Result<Vec<_>>>()?;
        Self::from_covers(labels, &covers, &gamma)
    }

    fn from_upper(labels: Vec<String>, upper: Vec<FixedBitSet>, gamma: &[usize]) -> Result<Self> {
        let n = labels.len();
        let index = intern(&labels)?;
        for x in 0..n {
            for y in upper[x].ones() {
                if y != x && upper[y].contains(x) {
                    return Err(AlgebraError::InvalidPoset(format!(
                        "not antisymmetric: {} and {}",
                        labels[x], labels[y]
                    )));
                }
            }
        }
        let mut lower: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for x in 0..n {
            for y in upper[x].ones() {
                lower[y].insert(x);
            }
        }
        let mut g = FixedBitSet::with_capacity(n);
        for &x in gamma {
            if x >= n {
                return Err(AlgebraError::InvalidPoset(format!("Γ element {x} is out of range")));
            }
            g.insert(x);
        }
        Ok(Self { labels, index, upper, lower, gamma: g })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.upper[x].contains(y)
    }

    pub fn upper_set(&self, x: usize) -> &FixedBitSet {
        &self.upper[x]
    }

    pub fn lower_set(&self, x: usize) -> &FixedBitSet {
        &self.lower[x]
    }

    pub fn gamma(&self) -> &FixedBitSet {
        &self.gamma
    }

    pub fn in_gamma(&self, x: usize) -> bool {
        self.gamma.contains(x)
    }

    /// Elements with nothing strictly above them.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].count_ones(..) == 1).collect()
    }

    /// No common upper bound in `Ω`.
    pub fn are_comaximal(&self, x: usize, y: usize) -> bool {
        self.upper[x].is_disjoint(&self.upper[y])
    }

    /// All inclusion-maximal comaximal subsets of `Γ ∩ ↑a`.
    pub fn comaximal_subsets(&self, above: usize) -> Vec<Vec<usize>> {
        let mut candidates = self.upper[above].clone();
        candidates.intersect_with(&self.gamma);
        let n = self.len();
        let mut adj: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for x in candidates.ones() {
            for y in candidates.ones() {
                if x != y && self.are_comaximal(x, y) {
                    adj[x].insert(y);
                }
            }
        }
        let mut out = Vec::new();
        if candidates.count_ones(..) > 0 {
            bron_kerbosch(&mut Vec::new(), candidates, FixedBitSet::with_capacity(n), &adj, &mut out);
        }
        out.sort();
        out
    }
}

fn single(n: usize, x: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    b.insert(x);
    b
}

fn intern(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(AlgebraError::InvalidPoset(format!("duplicate label {l}")));
        }
    }
    Ok(index)
}

/// Maximal cliques of `adj` inside `p`, with Tomita pivoting.
fn bron_kerbosch(r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet, adj: &[FixedBitSet], out: &mut Vec<Vec<usize>>) {
    if p.count_ones(..) == 0 {
        if x.count_ones(..) == 0 {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
        }
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| (p.intersection(&adj[u]).count(), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    let branch: Vec<usize> = p.ones().filter(|&v| !adj[pivot].contains(v)).collect();
    for v in branch {
        r.push(v);
        let mut p2 = p.clone();
        p2.intersect_with(&adj[v]);
        let mut x2 = x.clone();
        x2.intersect_with(&adj[v]);
        bron_kerbosch(r, p2, x2, adj, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn chain_and_antichain() {
        let chain = FinitePoset::from_covers(labels(&["a", "b", "c"]), &[(0, 1), (1, 2)], &[0, 1, 2]).unwrap();
        assert_eq!(chain.maximal_elements(), vec![2]);
        assert!(!chain.are_comaximal(0, 1));
        let anti = FinitePoset::from_covers(labels(&["a", "b", "c"]), &[], &[0, 1, 2]).unwrap();
        assert_eq!(anti.maximal_elements(), vec![0, 1, 2]);
        assert!(anti.are_comaximal(0, 1));
        assert_eq!(anti.comaximal_subsets(0), vec![vec![0]]);
    }

    #[test]
    fn cycles_and_bad_tables_are_rejected() {
        assert!(FinitePoset::from_covers(labels(&["a", "b"]), &[(0, 1), (1, 0)], &[]).is_err());
        assert!(FinitePoset::from_relation(labels(&["a", "b"]), &[vec![1], vec![1]], &[]).is_err());
        assert!(FinitePoset::from_relation(labels(&["a", "b", "c"]), &[vec![0, 1], vec![1, 2], vec![2]], &[]).is_err());
        assert!(FinitePoset::from_covers(labels(&["a", "a"]), &[], &[]).is_err());
    }
}
