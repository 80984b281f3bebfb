use std::fmt;

use crate::error::{Error, Result};

/// A tuple of point indices with consecutive entries distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSequence(Vec<usize>);

impl PointSequence {
    pub fn new(points: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(pos) = points.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::RepeatedPoint { pos, point: points[pos] });
        }
        Ok(Self(points))
    }

    pub(crate) fn new_unchecked(points: Vec<usize>) -> Self {
        debug_assert!(!points.is_empty() && points.windows(2).all(|w| w[0] != w[1]));
        Self(points)
    }

    pub fn single(point: usize) -> Self {
        Self(vec![point])
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn into_points(self) -> Vec<usize> {
        self.0
    }

    /// The sequence with the point at `pos` removed, if the result is still a sequence.
    pub fn without(&self, pos: usize) -> Option<PointSequence> {
        let mut pts = self.0.clone();
        pts.remove(pos);
        PointSequence::new(pts).ok()
    }

    /// Renders the sequence as a tuple of labels.
    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        LabelTuple { points: &self.0, labels }
    }
}

pub(crate) struct LabelTuple<'a> {
    pub points: &'a [usize],
    pub labels: &'a [String],
}

impl fmt::Display for LabelTuple<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.labels[*p])?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeats_and_empty() {
        assert_eq!(PointSequence::new(vec![]), Err(Error::EmptySequence));
        assert_eq!(PointSequence::new(vec![0, 1, 1]), Err(Error::RepeatedPoint { pos: 1, point: 1 }));
        let s = PointSequence::new(vec![0, 1, 0]).unwrap();
        assert_eq!(s.degree(), 2);
        assert_eq!(s.without(1), None);
        assert_eq!(s.without(0).unwrap().points(), &[1, 0]);
    }
}
