//! Face lattice from vertex-facet incidences.
//!
//! Walks down from `P`: the facets of a face `F` are the inclusion-maximal
//! sets among the proper nonempty intersections `F ∩ facet_j`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::Face;

pub(super) struct FaceLattice {
    pub faces: Vec<Face>,
    pub subfaces: Vec<Vec<usize>>,
    pub grading: Vec<usize>,
}

pub(super) fn build(num_vertices: usize, dim: usize, incidence: &[FixedBitSet]) -> FaceLattice {
    let mut top = FixedBitSet::with_capacity(num_vertices);
    top.insert_range(..);

    // levels[k] holds the vertex sets of the (dim - k)-faces in discovery order;
    // edges[k][i] lists indices into levels[k + 1].
    let mut levels: Vec<Vec<FixedBitSet>> = vec![vec![top]];
    let mut edges: Vec<Vec<Vec<usize>>> = Vec::new();
    for _ in 0..dim {
        let current = levels.last().expect("nonempty");
        let mut next: Vec<FixedBitSet> = Vec::new();
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut children = Vec::with_capacity(current.len());
        for face in current {
            let mut cands: Vec<FixedBitSet> = Vec::new();
            for facet in incidence {
                let mut s = face.clone();
                s.intersect_with(facet);
                if s.is_clear() || s == *face || cands.contains(&s) {
                    continue;
                }
                cands.push(s);
            }
            let maximal: Vec<&FixedBitSet> = cands
                .iter()
                .filter(|s| !cands.iter().any(|t| t != *s && s.is_subset(t)))
                .collect();
            let mut kids = Vec::with_capacity(maximal.len());
            for s in maximal {
                let id = *index.entry(s.clone()).or_insert_with(|| {
                    next.push(s.clone());
                    next.len() - 1
                });
                kids.push(id);
            }
            children.push(kids);
        }
        edges.push(children);
        levels.push(next);
    }

    // Re-index: ascending dimension, lexicographic vertex lists within a level.
    let mut faces = Vec::new();
    let mut grading = Vec::with_capacity(dim + 2);
    let mut new_id: Vec<Vec<usize>> = vec![Vec::new(); dim + 1];
    for k in 0..=dim {
        let level = &levels[dim - k];
        let mut order: Vec<(Vec<usize>, usize)> =
            level.iter().enumerate().map(|(i, s)| (s.ones().collect(), i)).collect();
        order.sort();
        grading.push(faces.len());
        new_id[dim - k] = vec![0; level.len()];
        for (verts, old) in order {
            let id = faces.len();
            new_id[dim - k][old] = id;
            let facet_ids = if k == dim {
                Vec::new()
            } else {
                incidence
                    .iter()
                    .enumerate()
                    .filter(|(_, inc)| verts.iter().all(|&v| inc.contains(v)))
                    .map(|(j, _)| j)
                    .collect()
            };
            faces.push(Face { id, dim: k, vertex_ids: verts, facet_ids });
        }
    }
    grading.push(faces.len());

    let mut subfaces = vec![Vec::new(); faces.len()];
    for (lvl, children) in edges.iter().enumerate() {
        for (old, kids) in children.iter().enumerate() {
            let id = new_id[lvl][old];
            let mut ks: Vec<usize> = kids.iter().map(|&c| new_id[lvl + 1][c]).collect();
            ks.sort_unstable();
            subfaces[id] = ks;
        }
    }
    FaceLattice { faces, subfaces, grading }
}
