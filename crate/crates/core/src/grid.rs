use crate::error::{ModelError, Result};

/// `points` equally spaced values from `start` to `end` inclusive.
pub fn uniform_grid(start: f64, end: f64, points: usize) -> Result<Vec<f64>> {
    if !start.is_finite() || !end.is_finite() {
        return Err(ModelError::InvalidGrid("bounds must be finite"));
    }
    match points {
        0 => Err(ModelError::InvalidGrid("grid is empty")),
        1 => Ok(vec![start]),
        _ => {
            if end <= start {
                return Err(ModelError::InvalidGrid("end must exceed start"));
            }
            let step = (end - start) / (points - 1) as f64;
            let mut g: Vec<f64> = (0..points).map(|k| start + step * k as f64).collect();
            g[points - 1] = end;
            Ok(g)
        }
    }
}

/// Rejects empty, non-finite or non-increasing grids.
pub fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(ModelError::InvalidGrid("grid is empty"));
    }
    if grid.iter().any(|t| !t.is_finite()) {
        return Err(ModelError::InvalidGrid("grid contains non-finite values"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ModelError::InvalidGrid("grid must be strictly increasing"));
    }
    Ok(())
}
