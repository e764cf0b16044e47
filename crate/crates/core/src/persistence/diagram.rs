use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::complex::Filt;
use crate::error::FormatError;

/// Death time of an interval; infinite deaths sort after every finite one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Death {
    Finite(Filt),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub dim: usize,
    pub birth: Filt,
    pub death: Death,
}

impl Interval {
    pub fn finite(dim: usize, birth: Filt, death: Filt) -> Self {
        Self {
            dim,
            birth,
            death: Death::Finite(death),
        }
    }

    pub fn infinite(dim: usize, birth: Filt) -> Self {
        Self {
            dim,
            birth,
            death: Death::Infinite,
        }
    }

    pub fn is_essential(&self) -> bool {
        self.death == Death::Infinite
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.death {
            Death::Finite(d) => write!(f, "{} {} {}", self.dim, self.birth, d),
            Death::Infinite => write!(f, "{} {} inf", self.dim, self.birth),
        }
    }
}

/// Sorted multiset of intervals with `birth < death`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PersistenceDiagram {
    intervals: Vec<Interval>,
}

impl PersistenceDiagram {
    /// Drops zero-length intervals and sorts the rest.
    pub fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.retain(|iv| match iv.death {
            Death::Finite(d) => iv.birth < d,
            Death::Infinite => true,
        });
        intervals.sort_unstable();
        Self { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &Interval> + '_ {
        self.intervals.iter().filter(move |iv| iv.dim == dim)
    }

    /// Intervals whose dimension passes `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self {
            intervals: self
                .intervals
                .iter()
                .copied()
                .filter(|iv| keep(iv.dim))
                .collect(),
        }
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.intervals.iter().map(|iv| iv.dim).max()
    }

    /// Merges `other` into this diagram (used to splice a separately
    /// computed dimension back in).
    pub fn merged(&self, other: &PersistenceDiagram) -> Self {
        let mut all = self.intervals.clone();
        all.extend_from_slice(&other.intervals);
        Self::new(all)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PersistenceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for iv in &self.intervals {
            writeln!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl FromStr for PersistenceDiagram {
    type Err = FormatError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut intervals = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| FormatError::Malformed {
                line: i + 1,
                msg: msg.to_string(),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(bad("expected `<dim> <birth> <death|inf>`"));
            }
            let dim = toks[0].parse().map_err(|_| bad("invalid dimension"))?;
            let birth = toks[1].parse().map_err(|_| bad("invalid birth"))?;
            let death = match toks[2] {
                "inf" => Death::Infinite,
                t => Death::Finite(t.parse().map_err(|_| bad("invalid death"))?),
            };
            if let Death::Finite(d) = death {
                if d < birth {
                    return Err(bad("death precedes birth"));
                }
            }
            intervals.push(Interval { dim, birth, death });
        }
        Ok(Self::new(intervals))
    }
}

/// First interval whose multiplicity differs between two diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramMismatch {
    pub interval: Interval,
    pub left: usize,
    pub right: usize,
}

impl fmt::Display for DiagramMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "interval `{}` occurs {} time(s) on the left and {} on the right",
            self.interval, self.left, self.right
        )
    }
}

/// Multiset equality restricted to the dimensions accepted by `dims`.
pub fn diagrams_equal(
    a: &PersistenceDiagram,
    b: &PersistenceDiagram,
    dims: impl Fn(usize) -> bool,
) -> Result<(), DiagramMismatch> {
    let xs: Vec<&Interval> = a.intervals.iter().filter(|iv| dims(iv.dim)).collect();
    let ys: Vec<&Interval> = b.intervals.iter().filter(|iv| dims(iv.dim)).collect();
    let (mut i, mut j) = (0, 0);
    while i < xs.len() || j < ys.len() {
        let next = match (xs.get(i), ys.get(j)) {
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    continue;
                }
                Ordering::Less => **x,
                Ordering::Greater => **y,
            },
            (Some(x), None) => **x,
            (None, Some(y)) => **y,
            (None, None) => unreachable!(),
        };
        return Err(DiagramMismatch {
            interval: next,
            left: xs.iter().filter(|iv| ***iv == next).count(),
            right: ys.iter().filter(|iv| ***iv == next).count(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_length_intervals_are_dropped() {
        let d = PersistenceDiagram::new(vec![
            Interval::finite(1, 3, 3),
            Interval::infinite(0, 0),
            Interval::finite(0, 1, 2),
        ]);
        assert_eq!(
            d.intervals(),
            &[Interval::infinite(0, 0), Interval::finite(0, 1, 2)]
        );
    }

    #[test]
    fn text_round_trip() {
        let d = PersistenceDiagram::new(vec![
            Interval::finite(1, 0, 10),
            Interval::infinite(0, 0),
            Interval::finite(0, 2, 5),
        ]);
        let text = d.to_text();
        assert_eq!(text, "0 0 inf\n0 2 5\n1 0 10\n");
        assert_eq!(text.parse::<PersistenceDiagram>().unwrap(), d);
        assert!("0 1".parse::<PersistenceDiagram>().is_err());
        assert!("0 5 1".parse::<PersistenceDiagram>().is_err());
    }

    #[test]
    fn equality_with_witness() {
        let d = PersistenceDiagram::new(vec![Interval::infinite(0, 0), Interval::finite(1, 0, 10)]);
        let e = PersistenceDiagram::new(vec![Interval::infinite(0, 0)]);
        assert!(diagrams_equal(&d, &d, |_| true).is_ok());
        assert!(diagrams_equal(
            &PersistenceDiagram::default(),
            &PersistenceDiagram::default(),
            |_| true
        )
        .is_ok());
        let miss = diagrams_equal(&d, &e, |_| true).unwrap_err();
        assert_eq!(miss.interval, Interval::finite(1, 0, 10));
        assert_eq!((miss.left, miss.right), (1, 0));
        assert!(diagrams_equal(&d, &e, |k| k == 0).is_ok());
    }

    #[test]
    fn multiplicity_matters() {
        let one = PersistenceDiagram::new(vec![Interval::finite(1, 0, 1)]);
        let two = PersistenceDiagram::new(vec![Interval::finite(1, 0, 1); 2]);
        let miss = diagrams_equal(&one, &two, |_| true).unwrap_err();
        assert_eq!((miss.left, miss.right), (1, 2));
    }
}
