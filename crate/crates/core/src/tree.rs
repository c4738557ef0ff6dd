//! Head-vector utilities shared by the validator and the parser.
//!
//! A head vector holds, for word `i` (1-based), its head at index `i - 1`;
//! `0` is the artificial root.

/// Structural problems of a head vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeProblems {
    /// Ids of words attached to the root.
    pub roots: Vec<usize>,
    /// Ids of words whose head does not exist.
    pub dangling: Vec<usize>,
    /// Ids of words lying on a cycle, ascending.
    pub cyclic: Vec<usize>,
}

impl TreeProblems {
    pub fn is_tree(&self) -> bool {
        self.roots.len() == 1 && self.dangling.is_empty() && self.cyclic.is_empty()
    }
}

pub fn check(heads: &[usize]) -> TreeProblems {
    let n = heads.len();
    let mut problems = TreeProblems::default();

    for (idx, &head) in heads.iter().enumerate() {
        if head == 0 {
            problems.roots.push(idx + 1);
        } else if head > n {
            problems.dangling.push(idx + 1);
        }
    }

    // 0 = unvisited, 1 = on the current path, 2 = done
    let mut state = vec![0u8; n + 1];
    let mut on_cycle = vec![false; n + 1];
    for start in 1..=n {
        let mut path = Vec::new();
        let mut node = start;
        while node != 0 && node <= n && state[node] == 0 {
            state[node] = 1;
            path.push(node);
            node = heads[node - 1];
        }
        if node != 0 && node <= n && state[node] == 1 {
            let pos = path.iter().position(|&p| p == node).expect("node on path");
            for &p in &path[pos..] {
                on_cycle[p] = true;
            }
        }
        for p in path {
            state[p] = 2;
        }
    }
    problems.cyclic = (1..=n).filter(|&i| on_cycle[i]).collect();

    problems
}

/// Whether `ancestor` dominates `node` (reflexively). Assumes an acyclic
/// head vector.
pub fn dominates(heads: &[usize], ancestor: usize, mut node: usize) -> bool {
    loop {
        if node == ancestor {
            return true;
        }
        if node == 0 || node > heads.len() {
            return false;
        }
        node = heads[node - 1];
    }
}

/// Dependents whose incoming arc is non-projective.
///
/// An arc is non-projective when a word strictly between head and
/// dependent is not dominated by the head.
pub fn non_projective_arcs(heads: &[usize]) -> Vec<usize> {
    (1..=heads.len())
        .filter(|&dep| {
            let head = heads[dep - 1];
            let (lo, hi) = if head < dep { (head, dep) } else { (dep, head) };
            (lo + 1..hi).any(|k| !dominates(heads, head, k))
        })
        .collect()
}

pub fn is_projective(heads: &[usize]) -> bool {
    non_projective_arcs(heads).is_empty()
}

/// Make a tree projective by repeatedly lifting the shortest
/// non-projective arc to the grandparent. Ties go to the leftmost
/// dependent. Returns the number of lifts.
pub fn projectivize(heads: &mut [usize]) -> usize {
    let mut lifts = 0;
    loop {
        let arcs = non_projective_arcs(heads);
        let Some(&dep) = arcs
            .iter()
            .min_by_key(|&&d| (heads[d - 1].abs_diff(d), d))
        else {
            return lifts;
        };
        let head = heads[dep - 1];
        debug_assert!(head != 0, "root arcs are never non-projective");
        heads[dep - 1] = heads[head - 1];
        lifts += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_tree_shapes() {
        assert!(check(&[2, 0, 2]).is_tree());

        let cycle = check(&[2, 1]);
        assert_eq!(cycle.cyclic, vec![1, 2]);
        assert!(cycle.roots.is_empty());

        let two_roots = check(&[0, 0]);
        assert_eq!(two_roots.roots, vec![1, 2]);

        assert_eq!(check(&[0, 5]).dangling, vec![2]);
        assert_eq!(check(&[0, 2]).cyclic, vec![2]);
        // tail leading into a cycle is not itself cyclic
        assert_eq!(check(&[0, 3, 4, 3]).cyclic, vec![3, 4]);
    }

    #[test]
    fn finds_and_lifts_crossing_arcs() {
        // arcs 3->1 and 4->2 cross; only 4->2 spans a word its head does not dominate
        let mut heads = vec![3, 4, 0, 3];
        assert_eq!(non_projective_arcs(&heads), vec![2]);
        let lifts = projectivize(&mut heads);
        assert!(lifts > 0);
        assert!(is_projective(&heads));
        assert!(check(&heads).is_tree());
    }

    #[test]
    fn projective_tree_is_untouched() {
        let mut heads = vec![2, 0, 2, 3];
        assert_eq!(projectivize(&mut heads), 0);
        assert_eq!(heads, vec![2, 0, 2, 3]);
    }
}
