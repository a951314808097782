use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::DesignError;
use crate::permgroup::{PermGroup, Permutation};

/// Optional display names for points and blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Labels {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<String>,
}

/// A point-block incidence structure with blocks given by their point sets.
///
/// Blocks are strictly ascending and the block list is sorted, so two designs
/// on the same labelled points are equal iff their block lists are equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DesignRepr", into = "DesignRepr")]
pub struct Design {
    v: usize,
    blocks: Vec<Vec<usize>>,
    labels: Option<Labels>,
    /// Blocks through each point, ascending.
    point_blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DesignRepr {
    v: usize,
    blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Labels>,
}

impl TryFrom<DesignRepr> for Design {
    type Error = DesignError;

    fn try_from(r: DesignRepr) -> Result<Self, Self::Error> {
        match r.labels {
            Some(labels) => Design::with_labels(r.v, r.blocks, labels),
            None => Design::new(r.v, r.blocks),
        }
    }
}

impl From<Design> for DesignRepr {
    fn from(d: Design) -> Self {
        DesignRepr {
            v: d.v,
            blocks: d.blocks,
            labels: d.labels,
        }
    }
}

impl Design {
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let blocks = blocks
            .into_iter()
            .map(|b| canonical_block(v, b))
            .collect::<Result<Vec<_>, _>>()?;
        let mut blocks = blocks;
        blocks.sort();
        Ok(Self::from_canonical(v, blocks, None))
    }

    /// Like [`Design::new`]; block labels follow their blocks through canonical sorting.
    pub fn with_labels(v: usize, blocks: Vec<Vec<usize>>, labels: Labels) -> Result<Self, DesignError> {
        if !labels.points.is_empty() && labels.points.len() != v {
            return Err(DesignError::Labels("point label count differs from v".into()));
        }
        if !labels.blocks.is_empty() && labels.blocks.len() != blocks.len() {
            return Err(DesignError::Labels("block label count differs from block count".into()));
        }
        let mut paired = blocks
            .into_iter()
            .enumerate()
            .map(|(i, b)| canonical_block(v, b).map(|b| (b, i)))
            .collect::<Result<Vec<_>, _>>()?;
        paired.sort();
        let block_labels = if labels.blocks.is_empty() {
            Vec::new()
        } else {
            paired.iter().map(|(_, i)| labels.blocks[*i].clone()).collect()
        };
        let blocks = paired.into_iter().map(|(b, _)| b).collect();
        Ok(Self::from_canonical(
            v,
            blocks,
            Some(Labels {
                points: labels.points,
                blocks: block_labels,
            }),
        ))
    }

    fn from_canonical(v: usize, blocks: Vec<Vec<usize>>, labels: Option<Labels>) -> Self {
        let mut point_blocks = vec![Vec::new(); v];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                point_blocks[x].push(i);
            }
        }
        Design {
            v,
            blocks,
            labels,
            point_blocks,
        }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    /// Blocks incident with point `x`.
    pub fn blocks_through(&self, x: usize) -> &[usize] {
        &self.point_blocks[x]
    }

    pub fn is_incident(&self, x: usize, block: usize) -> bool {
        self.blocks[block].binary_search(&x).is_ok()
    }

    /// Size of the intersection of two blocks.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let (x, y) = (&self.blocks[a], &self.blocks[b]);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// Index of points⊔blocks for block `i`.
    pub fn block_vertex(&self, i: usize) -> usize {
        self.v + i
    }

    pub fn vertex_count(&self) -> usize {
        self.v + self.blocks.len()
    }

    pub fn incidences(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Map from block point set to block index (first occurrence).
    pub fn block_index(&self) -> HashMap<&[usize], usize> {
        let mut map = HashMap::new();
        for (i, b) in self.blocks.iter().enumerate() {
            map.entry(b.as_slice()).or_insert(i);
        }
        map
    }

    /// Extends a permutation of the points to points⊔blocks, if it maps blocks to blocks.
    pub fn lift_point_permutation(&self, g: &Permutation) -> Option<Permutation> {
        self.lift_with_index(g, &self.block_index())
    }

    pub(crate) fn lift_with_index(
        &self,
        g: &Permutation,
        index: &HashMap<&[usize], usize>,
    ) -> Option<Permutation> {
        if g.degree() != self.v {
            return None;
        }
        let mut images: Vec<usize> = g.images().collect();
        for b in &self.blocks {
            let mut image: Vec<usize> = b.iter().map(|&x| g.apply(x)).collect();
            image.sort_unstable();
            images.push(self.v + *index.get(image.as_slice())?);
        }
        Permutation::from_images(images).ok()
    }

    /// Lifts a group on the points to points⊔blocks.
    pub fn lift_point_group(&self, gens: &[Permutation]) -> Result<PermGroup, DesignError> {
        let index = self.block_index();
        let lifted = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                self.lift_with_index(g, &index)
                    .ok_or(DesignError::NotAutomorphism(i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PermGroup::new(self.vertex_count(), lifted)?)
    }

    /// Checks that every generator preserves points, blocks and incidence.
    pub fn check_automorphisms(&self, group: &PermGroup) -> Result<(), DesignError> {
        if group.degree() != self.vertex_count() {
            return Err(DesignError::Group(crate::GroupError::DegreeMismatch {
                expected: self.vertex_count(),
                found: group.degree(),
            }));
        }
        for (i, g) in group.generators().iter().enumerate() {
            if (0..self.v).any(|x| g.apply(x) >= self.v) {
                return Err(DesignError::NotAutomorphism(i));
            }
            for (bi, block) in self.blocks.iter().enumerate() {
                let target = g.apply(self.v + bi) - self.v;
                let mut image: Vec<usize> = block.iter().map(|&x| g.apply(x)).collect();
                image.sort_unstable();
                if image != self.blocks[target] {
                    return Err(DesignError::NotAutomorphism(i));
                }
            }
        }
        Ok(())
    }

    pub fn has_repeated_blocks(&self) -> bool {
        self.blocks.windows(2).any(|w| w[0] == w[1])
    }

    /// Two distinct points on exactly the same blocks.
    pub fn has_repeated_points(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.point_blocks.iter().any(|pb| !seen.insert(pb.clone()))
    }

    /// Set of sizes `|b ∩ b'|` over unordered pairs of distinct blocks.
    pub fn intersection_numbers(&self) -> Result<Vec<usize>, DesignError> {
        if self.blocks.len() < 2 {
            return Err(DesignError::TooFewBlocks);
        }
        let mut sizes = std::collections::BTreeSet::new();
        for a in 0..self.blocks.len() {
            for b in a + 1..self.blocks.len() {
                sizes.insert(self.meet(a, b));
            }
        }
        Ok(sizes.into_iter().collect())
    }

    pub fn parameters(&self) -> DesignParameters {
        let mut block_sizes = BTreeMap::new();
        for b in &self.blocks {
            *block_sizes.entry(b.len()).or_insert(0) += 1;
        }
        let mut replication = BTreeMap::new();
        for pb in &self.point_blocks {
            *replication.entry(pb.len()).or_insert(0) += 1;
        }
        let k = (block_sizes.len() == 1).then(|| *block_sizes.keys().next().unwrap());
        let lambda1 = (replication.len() == 1).then(|| *replication.keys().next().unwrap());
        let lambda2 = if self.v < 2 {
            None
        } else {
            let mut counts = vec![0usize; self.v * self.v];
            for b in &self.blocks {
                for (i, &x) in b.iter().enumerate() {
                    for &y in &b[i + 1..] {
                        counts[x * self.v + y] += 1;
                    }
                }
            }
            let mut values = (0..self.v).flat_map(|x| (x + 1..self.v).map(move |y| (x, y)));
            let (x0, y0) = values.next().unwrap();
            let first = counts[x0 * self.v + y0];
            values
                .all(|(x, y)| counts[x * self.v + y] == first)
                .then_some(first)
        };
        DesignParameters {
            v: self.v,
            b: self.blocks.len(),
            k,
            block_sizes,
            replication,
            lambda1,
            lambda2,
        }
    }

    /// Connected components of the incidence graph, as vertex sets on points⊔blocks.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut stack = vec![start];
            let mut members = vec![start];
            while let Some(x) = stack.pop() {
                let nbrs: Vec<usize> = if x < self.v {
                    self.point_blocks[x].iter().map(|&b| self.v + b).collect()
                } else {
                    self.blocks[x - self.v].clone()
                };
                for y in nbrs {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The dual design together with the relabelling that transports structure to it.
    pub fn dual(&self) -> Result<DualDesign, DesignError> {
        if self.has_repeated_blocks() {
            return Err(DesignError::RepeatedBlocks);
        }
        if self.has_repeated_points() {
            return Err(DesignError::RepeatedPoints);
        }
        if self.point_blocks.iter().any(Vec::is_empty) {
            return Err(DesignError::EmptyBlock);
        }
        let mut order: Vec<usize> = (0..self.v).collect();
        order.sort_by(|&a, &b| self.point_blocks[a].cmp(&self.point_blocks[b]));
        let blocks: Vec<Vec<usize>> = order.iter().map(|&x| self.point_blocks[x].clone()).collect();
        let design = Design::from_canonical(self.blocks.len(), blocks, None);
        let b = self.blocks.len();
        let mut vertex_map = vec![0; self.vertex_count()];
        for (new_block, &x) in order.iter().enumerate() {
            vertex_map[x] = b + new_block;
        }
        for i in 0..b {
            vertex_map[self.v + i] = i;
        }
        Ok(DualDesign { design, vertex_map })
    }

    /// If the blocks partition the points into parts of equal size `k`, returns `(k, number of parts)`.
    pub fn degenerate_shape(&self) -> Option<(usize, usize)> {
        let k = self.blocks.first()?.len();
        let mut covered = vec![false; self.v];
        for b in &self.blocks {
            if b.len() != k {
                return None;
            }
            for &x in b {
                if covered[x] {
                    return None;
                }
                covered[x] = true;
            }
        }
        covered.iter().all(|&c| c).then_some((k, self.blocks.len()))
    }

    /// Pair-class sizes and parameters as `metric,value` CSV.
    pub fn summary_csv(&self) -> Result<String, DesignError> {
        let classes = super::pair_classes(self);
        let params = self.parameters();
        let mut w = csv::Writer::from_writer(Vec::new());
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_else(|| "nonconstant".into());
        let rows: Vec<(&str, String)> = vec![
            ("v", params.v.to_string()),
            ("b", params.b.to_string()),
            ("k", opt(params.k)),
            ("lambda1", opt(params.lambda1)),
            ("lambda2", opt(params.lambda2)),
            ("incident_pb", classes.incident_pb.len().to_string()),
            ("nonincident_pb", classes.nonincident_pb.len().to_string()),
            ("collinear_pp", classes.collinear_pp.len().to_string()),
            ("noncollinear_pp", classes.noncollinear_pp.len().to_string()),
            ("intersecting_bb", classes.intersecting_bb.len().to_string()),
            ("nonintersecting_bb", classes.nonintersecting_bb.len().to_string()),
        ];
        w.write_record(["metric", "value"]).map_err(csv_err)?;
        for (m, v) in rows {
            w.write_record([m, v.as_str()]).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| DesignError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_err(e: csv::Error) -> DesignError {
    DesignError::Io(e.to_string())
}

fn canonical_block(v: usize, mut block: Vec<usize>) -> Result<Vec<usize>, DesignError> {
    if block.is_empty() {
        return Err(DesignError::EmptyBlock);
    }
    block.sort_unstable();
    for w in block.windows(2) {
        if w[0] == w[1] {
            return Err(DesignError::DuplicatePoint(w[0]));
        }
    }
    if let Some(&x) = block.last().filter(|&&x| x >= v) {
        return Err(DesignError::PointOutOfRange { point: x, v });
    }
    Ok(block)
}

/// The dual design and the vertex relabelling original points⊔blocks -> dual points⊔blocks.
#[derive(Debug, Clone)]
pub struct DualDesign {
    pub design: Design,
    pub vertex_map: Vec<usize>,
}

impl DualDesign {
    /// Transports a group acting on the original design to the dual.
    pub fn transport(&self, group: &PermGroup) -> PermGroup {
        group.relabel(&self.vertex_map)
    }
}

/// Counted design parameters. `None` marks a nonconstant quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignParameters {
    pub v: usize,
    pub b: usize,
    pub k: Option<usize>,
    /// block size -> number of blocks
    pub block_sizes: BTreeMap<usize, usize>,
    /// replication number -> number of points
    pub replication: BTreeMap<usize, usize>,
    pub lambda1: Option<usize>,
    pub lambda2: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let d = Design::new(4, vec![vec![3, 2], vec![1, 0]]).unwrap();
        assert_eq!(d.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert!(matches!(Design::new(2, vec![vec![]]), Err(DesignError::EmptyBlock)));
        assert!(matches!(
            Design::new(2, vec![vec![0, 2]]),
            Err(DesignError::PointOutOfRange { .. })
        ));
        assert!(matches!(
            Design::new(3, vec![vec![1, 1]]),
            Err(DesignError::DuplicatePoint(1))
        ));
    }

    #[test]
    fn labels_follow_blocks() {
        let labels = Labels {
            points: vec!["a".into(), "b".into(), "c".into()],
            blocks: vec!["second".into(), "first".into()],
        };
        let d = Design::with_labels(3, vec![vec![1, 2], vec![0, 1]], labels).unwrap();
        assert_eq!(d.labels().unwrap().blocks, vec!["first", "second"]);
        let json = serde_json::to_string(&d).unwrap();
        let back: Design = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn repeated_blocks() {
        let d = Design::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(d.has_repeated_blocks());
        assert!(matches!(d.dual(), Err(DesignError::RepeatedBlocks)));
    }

    #[test]
    fn single_point_dual() {
        let d = Design::new(1, vec![vec![0]]).unwrap();
        let dual = d.dual().unwrap();
        assert_eq!(dual.design, d);
    }

    #[test]
    fn intersection_numbers_need_two_blocks() {
        let d = Design::new(2, vec![vec![0, 1]]).unwrap();
        assert!(matches!(d.intersection_numbers(), Err(DesignError::TooFewBlocks)));
    }

    #[test]
    fn summary_csv_lists_pair_classes() {
        let d = Design::new(2, vec![vec![0, 1]]).unwrap();
        let csv = d.summary_csv().unwrap();
        assert!(csv.starts_with("metric,value\n"));
        assert!(csv.contains("collinear_pp,2\n"));
        assert!(csv.contains("noncollinear_pp,0\n"));
    }
}
