//! Grid specs such as `x1=-2:2:41,x2=0`.

use crate::UsageError;

#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Range { start: f64, stop: f64, points: usize },
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Axis::Fixed(v) => vec![v],
            Axis::Range { start, points: 1, .. } => vec![start],
            Axis::Range { start, stop, points } => {
                (0..points).map(|k| start + (stop - start) * k as f64 / (points - 1) as f64).collect()
            }
        }
    }
}

/// One axis per coordinate `x1..xN`; the first axis varies slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub axes: Vec<(usize, Axis)>,
    pub text: String,
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let bad = |m: String| UsageError::new(format!("field `grid`: {m}"));
        let mut axes = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, spec) = part.split_once('=').ok_or_else(|| bad(format!("`{part}` is not xK=spec")))?;
            let k: usize = name
                .trim()
                .strip_prefix('x')
                .and_then(|s| s.parse().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| bad(format!("unknown coordinate `{name}`")))?;
            let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(format!("cannot parse `{s}` in `{part}`")));
            let fields: Vec<&str> = spec.split(':').collect();
            let axis = match fields.as_slice() {
                [v] => Axis::Fixed(num(v)?),
                [a, b, n] => {
                    let points: usize = n.trim().parse().map_err(|_| bad(format!("point count `{n}` in `{part}`")))?;
                    if points == 0 {
                        return Err(bad(format!("`{part}` has no points")));
                    }
                    Axis::Range { start: num(a)?, stop: num(b)?, points }
                }
                _ => return Err(bad(format!("`{spec}` is neither a value nor start:stop:points"))),
            };
            if axes.iter().any(|(j, _)| *j == k) {
                return Err(bad(format!("coordinate x{k} given twice")));
            }
            axes.push((k, axis));
        }
        axes.sort_by_key(|(k, _)| *k);
        Ok(GridSpec { axes, text: text.to_string() })
    }

    pub fn check_rank(&self, n: usize) -> Result<(), UsageError> {
        for k in 1..=n {
            if !self.axes.iter().any(|(j, _)| *j == k) {
                return Err(UsageError::new(format!("field `grid`: coordinate x{k} missing")));
            }
        }
        if let Some((k, _)) = self.axes.iter().find(|(k, _)| *k > n) {
            return Err(UsageError::new(format!("field `grid`: coordinate x{k} beyond n = {n}")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|(_, a)| a.values().len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points in row-major order.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::new()];
        for (_, axis) in &self.axes {
            let vals = axis.values();
            out = out.into_iter().flat_map(|p| vals.iter().map(move |&v| [p.as_slice(), &[v]].concat())).collect();
        }
        out
    }
}
