use std::collections::VecDeque;

use super::{Collage, DirectedGluing};
use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A chart embedded into the base chart's affine space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DevelopedChart {
    pub chart: usize,
    /// Chart coordinates to base coordinates.
    pub embedding: AffineMap,
    /// Steps `(gluing, reversed)` from the base chart.
    pub path: Vec<(usize, bool)>,
}

fn find(directed: &[DirectedGluing], step: (usize, bool)) -> Option<&DirectedGluing> {
    directed.iter().find(|d| d.index == step.0 && d.reversed == step.1)
}

impl Collage {
    /// Breadth-first development of every chart into the base chart's space.
    pub fn develop(&self, base: usize) -> Result<Vec<DevelopedChart>> {
        self.chart(base)?;
        let directed = self.directed_gluings()?;
        let n = self.charts[base].ambient_dim();
        let mut out: Vec<Option<DevelopedChart>> = vec![None; self.charts.len()];
        out[base] = Some(DevelopedChart { chart: base, embedding: AffineMap::identity(n), path: Vec::new() });
        let mut queue = VecDeque::from([base]);
        while let Some(i) = queue.pop_front() {
            let current = out[i].clone().expect("visited");
            for d in directed.iter().filter(|d| d.from == i) {
                if out[d.to].is_some() || d.map.source_dim != d.map.target_dim() {
                    continue;
                }
                let mut path = current.path.clone();
                path.push((d.index, d.reversed));
                let embedding = current.embedding.compose(&d.map.inverse()?);
                out[d.to] = Some(DevelopedChart { chart: d.to, embedding, path });
                queue.push_back(d.to);
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or(Error::DisconnectedChart(i)))
            .collect()
    }

    /// Follows a sequence of steps from `base` and returns the composed
    /// transition map of the path: chart coordinates at the start to chart
    /// coordinates at the end.
    pub fn path_map(&self, base: usize, steps: &[(usize, bool)]) -> Result<(usize, AffineMap)> {
        self.chart(base)?;
        let directed = self.directed_gluings()?;
        let mut at = base;
        let mut map = AffineMap::identity(self.charts[base].ambient_dim());
        for (k, &step) in steps.iter().enumerate() {
            let d = find(&directed, step).ok_or(Error::PathMismatch(k))?;
            if d.from != at {
                return Err(Error::PathMismatch(k));
            }
            map = d.map.compose(&map);
            at = d.to;
        }
        Ok((at, map))
    }

    /// The automorphism of the base space obtained by continuing the base
    /// chart around a loop.
    pub fn monodromy(&self, base: usize, steps: &[(usize, bool)]) -> Result<AffineMap> {
        let (end, map) = self.path_map(base, steps)?;
        if end != base {
            return Err(Error::PathMismatch(steps.len()));
        }
        map.inverse()
    }

    /// Monodromy of the loops closed by each gluing outside a spanning tree
    /// of the development from `base`.
    pub fn monodromy_generators(&self, base: usize) -> Result<Vec<AffineMap>> {
        let developed = self.develop(base)?;
        let mut out = Vec::new();
        for (index, g) in self.gluings.iter().enumerate() {
            let in_tree = developed.iter().any(|d| d.path.last().is_some_and(|s| s.0 == index));
            if in_tree {
                continue;
            }
            let ei = &developed[g.from].embedding;
            let ej = &developed[g.to].embedding;
            let m = ei.compose(&g.map.inverse()?).compose(&ej.inverse()?);
            if !m.is_identity() && !out.contains(&m) {
                out.push(m);
            }
        }
        Ok(out)
    }

    /// Translation parts of the monodromy generators, when all are translations.
    pub fn monodromy_translations(&self, base: usize) -> Result<Option<Vec<Vec<Scalar>>>> {
        let gens = self.monodromy_generators(base)?;
        if gens.iter().any(|g| !g.is_translation()) {
            return Ok(None);
        }
        Ok(Some(gens.into_iter().map(|g| g.translation).collect()))
    }
}
