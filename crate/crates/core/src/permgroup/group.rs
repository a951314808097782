use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Bsgs, GroupError, Permutation};

/// Default cap for the full-enumeration oracle.
pub const ENUMERATION_CAP: usize = 100_000;

/// A permutation group given by generators, optionally carrying a BSGS.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    bsgs: Option<Bsgs>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    degree: usize,
    generators: Vec<Permutation>,
}

impl TryFrom<GroupRepr> for PermGroup {
    type Error = GroupError;

    fn try_from(r: GroupRepr) -> Result<Self, Self::Error> {
        PermGroup::new(r.degree, r.generators)
    }
}

impl From<PermGroup> for GroupRepr {
    fn from(g: PermGroup) -> Self {
        GroupRepr {
            degree: g.degree,
            generators: g.generators,
        }
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

/// Result of [`PermGroup::induced_action`].
#[derive(Debug, Clone)]
pub struct InducedAction {
    pub group: PermGroup,
    pub faithful: bool,
    /// `true` if faithfulness was decided by enumerating the source group.
    pub by_enumeration: bool,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            bsgs: None,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            bsgs: None,
        }
    }

    /// Parses generators in cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self, GroupError> {
        let generators = gens
            .iter()
            .map(|s| super::parse_cycles(degree, s))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, generators)
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[vec![0, 1]]).unwrap());
        }
        if degree >= 3 {
            gens.push(Permutation::from_cycles(degree, &[(0..degree).collect()]).unwrap());
        }
        PermGroup::new(degree, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    fn check_point(&self, x: usize) -> Result<(), GroupError> {
        if x >= self.degree {
            Err(GroupError::IndexOutOfRange {
                index: x,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    fn check_degree(&self, p: &Permutation) -> Result<(), GroupError> {
        if p.degree() != self.degree {
            Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            })
        } else {
            Ok(())
        }
    }

    /// Orbit of `x`, sorted ascending.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>, GroupError> {
        self.check_point(x)?;
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut queue = vec![x];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    queue.push(z);
                }
            }
        }
        queue.sort_unstable();
        Ok(queue)
    }

    /// All orbits on `0..degree`, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let orbit = self.orbit(x).unwrap();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Orbits meeting `subset`, restricted to it.
    pub fn orbits_on(&self, subset: &[usize]) -> Result<Vec<Vec<usize>>, GroupError> {
        let member: HashSet<usize> = subset.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut sorted: Vec<usize> = member.iter().copied().collect();
        sorted.sort_unstable();
        for x in sorted {
            if seen.contains(&x) {
                continue;
            }
            let orbit = self.orbit(x)?;
            for &y in &orbit {
                seen.insert(y);
            }
            out.push(orbit.into_iter().filter(|y| member.contains(y)).collect());
        }
        Ok(out)
    }

    /// Orbit of a tuple under the componentwise action, sorted.
    pub fn orbit_on_tuples(&self, t: &[usize]) -> Result<Vec<Vec<usize>>, GroupError> {
        for &x in t {
            self.check_point(x)?;
        }
        Ok(self.tuple_orbit_unchecked(t.to_vec(), false))
    }

    /// Orbit of an unordered set (tuples are re-sorted after each image).
    pub fn orbit_on_sets(&self, s: &[usize]) -> Result<Vec<Vec<usize>>, GroupError> {
        for &x in s {
            self.check_point(x)?;
        }
        let mut start = s.to_vec();
        start.sort_unstable();
        Ok(self.tuple_orbit_unchecked(start, true))
    }

    fn tuple_orbit_unchecked(&self, start: Vec<usize>, as_sets: bool) -> Vec<Vec<usize>> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let t = queue[head].clone();
            head += 1;
            for g in &self.generators {
                let mut image: Vec<usize> = t.iter().map(|&x| g.apply(x)).collect();
                if as_sets {
                    image.sort_unstable();
                }
                if seen.insert(image.clone()) {
                    queue.push(image);
                }
            }
        }
        queue.sort();
        queue
    }

    /// `true` iff `set` is exactly one orbit on tuples. The empty set counts as transitive.
    pub fn is_transitive_on(&self, set: &[Vec<usize>]) -> Result<bool, GroupError> {
        let Some(first) = set.first() else {
            return Ok(true);
        };
        let arity = first.len();
        for t in set {
            if t.len() != arity {
                return Err(GroupError::MixedArity);
            }
            for &x in t {
                self.check_point(x)?;
            }
        }
        let wanted: HashSet<&Vec<usize>> = set.iter().collect();
        let orbit = self.tuple_orbit_unchecked(first.clone(), false);
        Ok(orbit.len() == wanted.len() && orbit.iter().all(|t| wanted.contains(t)))
    }

    pub fn is_transitive(&self, subset: &[usize]) -> Result<bool, GroupError> {
        let Some(&x) = subset.first() else {
            return Ok(true);
        };
        let orbit: BTreeSet<usize> = self.orbit(x)?.into_iter().collect();
        let wanted: BTreeSet<usize> = subset.iter().copied().collect();
        Ok(orbit == wanted)
    }

    /// Number of orbits on ordered pairs of `subset`, which must be a single orbit.
    pub fn rank(&self, subset: &[usize]) -> Result<usize, GroupError> {
        if subset.is_empty() || !self.is_transitive(subset)? {
            return Err(GroupError::NotTransitive);
        }
        let n = subset.len();
        let index: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut seen = vec![false; n * n];
        let mut count = 0;
        for start in 0..n * n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(code) = stack.pop() {
                let (a, b) = (subset[code / n], subset[code % n]);
                for g in &self.generators {
                    let c = index[&g.apply(a)] * n + index[&g.apply(b)];
                    if !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                }
            }
        }
        Ok(count)
    }

    pub fn build_bsgs(&self) -> PermGroup {
        let mut g = self.clone();
        if g.bsgs.is_none() {
            g.bsgs = Some(Bsgs::build(self.degree, &self.generators, &[]));
        }
        g
    }

    pub fn has_bsgs(&self) -> bool {
        self.bsgs.is_some()
    }

    /// The cached BSGS, or a freshly computed one.
    pub fn bsgs(&self) -> Cow<'_, Bsgs> {
        match &self.bsgs {
            Some(b) => Cow::Borrowed(b),
            None => Cow::Owned(Bsgs::build(self.degree, &self.generators, &[])),
        }
    }

    pub fn order(&self) -> u128 {
        self.bsgs().order()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        self.check_degree(p)?;
        Ok(self.bsgs().contains(p))
    }

    /// `true` iff every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool, GroupError> {
        if self.degree != other.degree {
            return Err(GroupError::DegreeMismatch {
                expected: other.degree,
                found: self.degree,
            });
        }
        let b = other.bsgs();
        Ok(self.generators.iter().all(|g| b.contains(g)))
    }

    /// Decides `self ⊴ g`. Errors when `self` is not a subgroup of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> Result<bool, GroupError> {
        if !self.is_subgroup_of(g)? {
            return Err(GroupError::NotSubgroup);
        }
        let own = self.bsgs();
        Ok(g
            .generators
            .iter()
            .all(|x| self.generators.iter().all(|n| own.contains(&n.conjugate_by(x)))))
    }

    /// Stabiliser of `x`, generated by the Schreier generators of a chain with base starting at `x`.
    pub fn point_stabilizer(&self, x: usize) -> Result<PermGroup, GroupError> {
        self.check_point(x)?;
        let chain = Bsgs::build(self.degree, &self.generators, &[x]);
        let tail = chain.tail(1);
        let mut gens = tail.strong_generators();
        gens.sort();
        gens.dedup();
        Ok(PermGroup {
            degree: self.degree,
            generators: gens,
            bsgs: Some(tail),
        })
    }

    /// Restricts to a group of the same degree generated by the given words' images.
    pub fn with_generators(&self, generators: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        PermGroup::new(self.degree, generators)
    }

    /// Action on a list of disjoint parts, with a faithfulness verdict.
    ///
    /// Faithfulness is decided by enumerating the group when its order is at
    /// most `cap`, otherwise by comparing BSGS orders of source and image.
    pub fn induced_action_with_cap(
        &self,
        parts: &[Vec<usize>],
        cap: usize,
    ) -> Result<InducedAction, GroupError> {
        let mut owner = vec![usize::MAX; self.degree];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(GroupError::InvalidParts("empty part".into()));
            }
            for &x in part {
                self.check_point(x)?;
                if owner[x] != usize::MAX {
                    return Err(GroupError::InvalidParts(format!("point {x} in two parts")));
                }
                owner[x] = i;
            }
        }
        let mut images = Vec::with_capacity(self.generators.len());
        for (gi, g) in self.generators.iter().enumerate() {
            images.push(self.part_image(g, parts, &owner).ok_or_else(|| {
                GroupError::InvalidParts(format!("generator {gi} does not permute the parts"))
            })?);
        }
        let image = PermGroup::new(parts.len(), images)?;

        let order = self.order();
        let (faithful, by_enumeration) = if order <= cap as u128 {
            let elements = self
                .enumerate(cap)
                .expect("order within cap implies enumeration succeeds");
            let kernel_trivial = elements.iter().all(|e| {
                e.is_identity()
                    || parts
                        .iter()
                        .enumerate()
                        .any(|(i, part)| owner[e.apply(part[0])] != i)
            });
            (kernel_trivial, true)
        } else {
            (image.order() == order, false)
        };
        Ok(InducedAction {
            group: image,
            faithful,
            by_enumeration,
        })
    }

    pub fn induced_action(&self, parts: &[Vec<usize>]) -> Result<InducedAction, GroupError> {
        self.induced_action_with_cap(parts, ENUMERATION_CAP)
    }

    fn part_image(&self, g: &Permutation, parts: &[Vec<usize>], owner: &[usize]) -> Option<Permutation> {
        let mut images = Vec::with_capacity(parts.len());
        for part in parts {
            let target = owner[g.apply(part[0])];
            if target == usize::MAX || parts[target].len() != part.len() {
                return None;
            }
            if part.iter().any(|&x| owner[g.apply(x)] != target) {
                return None;
            }
            images.push(target);
        }
        Permutation::from_images(images).ok()
    }

    /// Restriction to an invariant subset, relabelled `subset[i] -> i`.
    pub fn restrict(&self, subset: &[usize]) -> Result<PermGroup, GroupError> {
        let parts: Vec<Vec<usize>> = subset.iter().map(|&x| vec![x]).collect();
        let mut owner = vec![usize::MAX; self.degree];
        for (i, &x) in subset.iter().enumerate() {
            self.check_point(x)?;
            owner[x] = i;
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                self.part_image(g, &parts, &owner)
                    .ok_or_else(|| GroupError::InvalidParts("subset is not invariant".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(subset.len(), gens)
    }

    /// All elements, or `None` once more than `cap` have been found.
    pub fn enumerate(&self, cap: usize) -> Option<Vec<Permutation>> {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in &self.generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return None;
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
        Some(queue)
    }

    /// Order by closure under products, or `None` when it exceeds `cap`.
    pub fn enumeration_order(&self, cap: usize) -> Option<usize> {
        self.enumerate(cap).map(|e| e.len())
    }

    /// Conjugates every generator by a relabelling of the domain.
    pub fn relabel(&self, map: &[usize]) -> PermGroup {
        PermGroup {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.relabel(map)).collect(),
            bsgs: None,
        }
    }

    /// Subgroup generated by the pointwise stabiliser of a set of points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup, GroupError> {
        for &x in points {
            self.check_point(x)?;
        }
        let chain = Bsgs::build(self.degree, &self.generators, points);
        let tail = chain.tail(points.len());
        let mut gens = tail.strong_generators();
        gens.sort();
        gens.dedup();
        Ok(PermGroup {
            degree: self.degree,
            generators: gens,
            bsgs: Some(tail),
        })
    }
}

/// Direct product acting on the disjoint union of the two domains.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let n = a.degree() + b.degree();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<usize> = g.to_vec();
        images.extend(a.degree()..n);
        gens.push(Permutation::from_images(images).unwrap());
    }
    for g in b.generators() {
        let mut images: Vec<usize> = (0..a.degree()).collect();
        images.extend(g.images().map(|x| x + a.degree()));
        gens.push(Permutation::from_images(images).unwrap());
    }
    PermGroup::new(n, gens).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::from_cycle_strings(3, &["(0 1)", "(0 1 2)"]).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let trivial = PermGroup::trivial(5);
        assert_eq!(trivial.orbit(3).unwrap(), vec![3]);
        let c3 = PermGroup::from_cycle_strings(4, &["(0 1 2)"]).unwrap();
        assert_eq!(c3.orbit(1).unwrap(), vec![0, 1, 2]);
        assert!(matches!(c3.orbit(4), Err(GroupError::IndexOutOfRange { .. })));
    }

    #[test]
    fn tuple_orbits() {
        assert_eq!(
            PermGroup::trivial(3).orbit_on_tuples(&[0, 1]).unwrap(),
            vec![vec![0, 1]]
        );
        assert_eq!(s3().orbit_on_tuples(&[0, 1]).unwrap().len(), 6);
        let g = PermGroup::from_cycle_strings(4, &["(0 1)(2 3)"]).unwrap();
        assert_eq!(
            g.orbit_on_tuples(&[0, 2]).unwrap(),
            vec![vec![0, 2], vec![1, 3]]
        );
    }

    #[test]
    fn transitivity_on_sets() {
        assert!(s3().is_transitive_on(&[]).unwrap());
        let all_pairs: Vec<Vec<usize>> = (0..3)
            .flat_map(|a| (0..3).filter(move |&b| b != a).map(move |b| vec![a, b]))
            .collect();
        assert!(s3().is_transitive_on(&all_pairs).unwrap());
        let g = PermGroup::from_cycle_strings(3, &["(0 1)"]).unwrap();
        assert!(!g.is_transitive_on(&[vec![0, 1], vec![1, 2]]).unwrap());
        assert!(matches!(
            g.is_transitive_on(&[vec![0, 1], vec![1]]),
            Err(GroupError::MixedArity)
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(s3().rank(&[0, 1, 2]).unwrap(), 2);
        let c4 = PermGroup::from_cycle_strings(4, &["(0 1 2 3)"]).unwrap();
        assert_eq!(c4.rank(&[0, 1, 2, 3]).unwrap(), 4);
        let g = PermGroup::from_cycle_strings(3, &["(0 1)"]).unwrap();
        assert!(matches!(g.rank(&[0, 1, 2]), Err(GroupError::NotTransitive)));
    }

    #[test]
    fn orders_and_membership() {
        let t = PermGroup::trivial(4).build_bsgs();
        assert_eq!(t.order(), 1);
        assert!(t.bsgs().base().is_empty());
        assert_eq!(s3().order(), 6);
        let c3 = PermGroup::from_cycle_strings(3, &["(0 1 2)"]).unwrap();
        assert!(c3.contains(&Permutation::identity(3)).unwrap());
        assert!(!c3
            .contains(&Permutation::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap());
        assert!(c3.contains(&Permutation::identity(4)).is_err());
        assert_eq!(PermGroup::symmetric(7).order(), 5040);
    }

    #[test]
    fn normality() {
        let g = s3();
        assert!(g.is_normal_in(&g).unwrap());
        let a3 = PermGroup::from_cycle_strings(3, &["(0 1 2)"]).unwrap();
        assert!(a3.is_normal_in(&g).unwrap());
        let c2 = PermGroup::from_cycle_strings(3, &["(0 1)"]).unwrap();
        assert!(!c2.is_normal_in(&g).unwrap());
        assert!(matches!(g.is_normal_in(&a3), Err(GroupError::NotSubgroup)));
    }

    #[test]
    fn stabilizers() {
        let t = PermGroup::trivial(3).point_stabilizer(1).unwrap();
        assert_eq!(t.order(), 1);
        let st = s3().point_stabilizer(0).unwrap();
        assert_eq!(st.order(), 2);
        assert!(st.generators().iter().all(|g| g.apply(0) == 0));
    }

    #[test]
    fn induced_actions() {
        let g = s3();
        let singletons: Vec<Vec<usize>> = (0..3).map(|x| vec![x]).collect();
        let act = g.induced_action(&singletons).unwrap();
        assert!(act.faithful);
        assert_eq!(act.group.generators(), g.generators());

        // S3 on 2-subsets, realised on 3 points plus the 3 pairs (degree 6).
        let on_pairs = PermGroup::from_cycle_strings(6, &["(0 1)(4 5)", "(0 1 2)(3 4 5)"]).unwrap();
        let parts = vec![vec![3], vec![4], vec![5]];
        let act = on_pairs.induced_action(&parts).unwrap();
        assert_eq!(act.group.degree(), 3);
        assert!(act.faithful);

        let g = PermGroup::from_cycle_strings(4, &["(0 1)(2 3)", "(0 1)"]).unwrap();
        let act = g.induced_action(&[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!act.faithful);
        assert!(act.group.generators()[1].is_identity());

        let bad = g.induced_action(&[vec![0, 2], vec![1, 3]]);
        assert!(matches!(bad, Err(GroupError::InvalidParts(_))));
    }

    #[test]
    fn faithfulness_by_order_comparison() {
        let g = PermGroup::from_cycle_strings(4, &["(0 1)(2 3)", "(0 1)"]).unwrap();
        let act = g.induced_action_with_cap(&[vec![0, 1], vec![2, 3]], 1).unwrap();
        assert!(!act.by_enumeration);
        assert!(!act.faithful);
    }

    #[test]
    fn enumeration_cap() {
        assert_eq!(PermGroup::symmetric(5).enumeration_order(1000), Some(120));
        assert_eq!(PermGroup::symmetric(5).enumeration_order(100), None);
    }

    #[test]
    fn group_json() {
        let g = s3();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"degree":3,"generators":[[1,0,2],[1,2,0]]}"#);
        let back: PermGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<PermGroup>(r#"{"degree":2,"generators":[[1,0,2]]}"#).is_err());
    }
}
