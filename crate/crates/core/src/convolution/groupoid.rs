use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hilbert::Label;

use super::crossed::GroupAction;

/// Finite discrete groupoid. Objects are identified with their unit arrows;
/// `g ∘ h` is defined when `s(g) = r(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    arrows: Vec<Label>,
    index: HashMap<Label, usize>,
    objects: Vec<usize>,
    source: Vec<usize>,
    range: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    inverse: Vec<usize>,
}

impl FiniteGroupoid {
    /// Builds and validates a groupoid from its tables. `source` and `range`
    /// map each arrow to an object; `compose` lists `(g, h, g∘h)`.
    pub fn new(
        objects: Vec<Label>,
        arrows: Vec<Label>,
        source: &HashMap<Label, Label>,
        range: &HashMap<Label, Label>,
        compose: &[(Label, Label, Label)],
    ) -> Result<Self> {
        let bad = |msg: String| Error::InvalidGroupoid(msg);
        let mut index = HashMap::with_capacity(arrows.len());
        for (i, a) in arrows.iter().enumerate() {
            if index.insert(a.clone(), i).is_some() {
                return Err(bad(format!("duplicate arrow {}", a)));
            }
        }
        let lookup = |l: &Label| index.get(l).copied().ok_or_else(|| bad(format!("unknown arrow {}", l)));
        let objects = objects.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        let mut is_object = vec![false; arrows.len()];
        for &o in &objects {
            if std::mem::replace(&mut is_object[o], true) {
                return Err(bad(format!("duplicate object {}", arrows[o])));
            }
        }
        let endpoint = |map: &HashMap<Label, Label>, a: &Label, what: &str| -> Result<usize> {
            let o = map.get(a).ok_or_else(|| bad(format!("{} of {} missing", what, a)))?;
            let o = lookup(o)?;
            if !is_object[o] {
                return Err(bad(format!("{} of {} is not an object", what, a)));
            }
            Ok(o)
        };
        let source = arrows.iter().map(|a| endpoint(source, a, "source")).collect::<Result<Vec<_>>>()?;
        let range = arrows.iter().map(|a| endpoint(range, a, "range")).collect::<Result<Vec<_>>>()?;
        for &o in &objects {
            if source[o] != o || range[o] != o {
                return Err(bad(format!("unit {} must be its own source and range", arrows[o])));
            }
        }
        let mut table = HashMap::with_capacity(compose.len());
        for (g, h, gh) in compose {
            let (g, h, gh) = (lookup(g)?, lookup(h)?, lookup(gh)?);
            if source[g] != range[h] {
                return Err(bad(format!("{} and {} are not composable", arrows[g], arrows[h])));
            }
            if table.insert((g, h), gh).is_some() {
                return Err(bad(format!("composite of {} and {} listed twice", arrows[g], arrows[h])));
            }
        }
        Self::from_parts(arrows, index, objects, source, range, table)
    }

    fn from_parts(
        arrows: Vec<Label>,
        index: HashMap<Label, usize>,
        objects: Vec<usize>,
        source: Vec<usize>,
        range: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let bad = |msg: String| Error::InvalidGroupoid(msg);
        let n = arrows.len();
        for g in 0..n {
            for h in 0..n {
                if source[g] == range[h] {
                    let gh = *compose
                        .get(&(g, h))
                        .ok_or_else(|| bad(format!("composite of {} and {} missing", arrows[g], arrows[h])))?;
                    if source[gh] != source[h] || range[gh] != range[g] {
                        return Err(bad(format!("composite of {} and {} has wrong endpoints", arrows[g], arrows[h])));
                    }
                }
            }
        }
        for g in 0..n {
            if compose[&(g, source[g])] != g || compose[&(range[g], g)] != g {
                return Err(bad(format!("units do not act neutrally on {}", arrows[g])));
            }
        }
        for (&(g, h), &gh) in &compose {
            for k in (0..n).filter(|&k| range[k] == source[h]) {
                if compose[&(gh, k)] != compose[&(g, compose[&(h, k)])] {
                    return Err(bad(format!("not associative at ({}, {}, {})", arrows[g], arrows[h], arrows[k])));
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| {
                    source[h] == range[g]
                        && range[h] == source[g]
                        && compose[&(g, h)] == range[g]
                        && compose[&(h, g)] == source[g]
                })
                .ok_or_else(|| bad(format!("{} has no inverse", arrows[g])))?;
            inverse.push(inv);
        }
        Ok(FiniteGroupoid { arrows, index, objects, source, range, compose, inverse })
    }

    /// `X × X` with `s(x, y) = y`, `r(x, y) = x` and `(x, y)(y, z) = (x, z)`.
    pub fn pair(points: &[Label]) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::InvalidGroupoid("no points".into()));
        }
        let arrows: Vec<Label> = points
            .iter()
            .flat_map(|x| points.iter().map(move |y| Label::pair(x.clone(), y.clone())))
            .collect();
        let index: HashMap<Label, usize> = arrows.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        if index.len() != arrows.len() {
            return Err(Error::InvalidGroupoid("duplicate points".into()));
        }
        let at = |x: usize, y: usize| x * n + y;
        let objects = (0..n).map(|x| at(x, x)).collect();
        let source = (0..n * n).map(|a| at(a % n, a % n)).collect();
        let range = (0..n * n).map(|a| at(a / n, a / n)).collect();
        let mut compose = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    compose.insert((at(x, y), at(y, z)), at(x, z));
                }
            }
        }
        Self::from_parts(arrows, index, objects, source, range, compose)
    }

    /// `X ⋊ H` with arrows `(h, x)`, `s(h, x) = x`, `r(h, x) = h·x` and
    /// `(g, h·x)(h, x) = (gh, x)`. Objects are the unit arrows `(e, x)`.
    pub fn action(action: &GroupAction) -> Self {
        let group = action.group();
        let (m, n) = (group.order(), action.points().len());
        let arrows: Vec<Label> = group
            .elements()
            .iter()
            .flat_map(|h| action.points().iter().map(move |x| Label::pair(h.clone(), x.clone())))
            .collect();
        let index = arrows.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let at = |h: usize, x: usize| h * n + x;
        let e = group.identity();
        let objects = (0..n).map(|x| at(e, x)).collect();
        let source = (0..m * n).map(|a| at(e, a % n)).collect();
        let range = (0..m * n).map(|a| at(e, action.act(a / n, a % n))).collect();
        let mut compose = HashMap::new();
        for h in 0..m {
            for x in 0..n {
                for g in 0..m {
                    compose.insert((at(g, action.act(h, x)), at(h, x)), at(group.mul(g, h), x));
                }
            }
        }
        Self::from_parts(arrows, index, objects, source, range, compose).expect("action groupoid axioms")
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[Label] {
        &self.arrows
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn label(&self, g: usize) -> &Label {
        &self.arrows[g]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn range(&self, g: usize) -> usize {
        self.range[g]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn is_unit(&self, g: usize) -> bool {
        self.source[g] == g
    }

    /// `g ∘ h` when `s(g) = r(h)`.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.compose.get(&(g, h)).copied()
    }

    /// All composable triples `(g, h, g∘h)` in arrow order.
    pub fn composition_table(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = self.compose.iter().map(|(&(g, h), &gh)| (g, h, gh)).collect();
        out.sort_unstable();
        out
    }
}
