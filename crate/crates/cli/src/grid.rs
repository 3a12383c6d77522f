//! Parsing for the little grid language used by the sweep flags: a single
//! number, a comma list, or an inclusive range `lo:hi:step`.

/// Hard cap on generated grid points, to catch runaway steps.
const MAX_POINTS: usize = 200_001;

fn parse_num(token: &str, name: &str) -> Result<f64, String> {
    let v: f64 = token
        .trim()
        .parse()
        .map_err(|_| format!("{name}: '{}' is not a number", token.trim()))?;
    if !v.is_finite() {
        return Err(format!("{name}: '{}' is not finite", token.trim()));
    }
    Ok(v)
}

/// Parses a grid spec and validates every point against `[lo, hi]`.
///
/// Range grids include the upper endpoint whenever it lands within half a
/// step, and points within floating point slop of a bound are snapped onto
/// it, so `0:1:0.05` really ends at 1.
pub fn parse(spec: &str, name: &str, lo: f64, hi: f64) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(format!("{name}: empty grid"));
    }
    let mut vals = if spec.contains(':') {
        let mut parts = spec.split(':');
        let (a, b, c) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), Some(c), None) => (a, b, c),
            _ => return Err(format!("{name}: a range is written lo:hi:step")),
        };
        let start = parse_num(a, name)?;
        let stop = parse_num(b, name)?;
        let step = parse_num(c, name)?;
        if step <= 0.0 {
            return Err(format!("{name}: step must be positive"));
        }
        if stop < start {
            return Err(format!("{name}: range is empty ({start} > {stop})"));
        }
        let count = ((stop - start) / step + 0.5).floor() as usize;
        if count + 1 > MAX_POINTS {
            return Err(format!("{name}: grid has more than {MAX_POINTS} points"));
        }
        (0..=count).map(|i| start + i as f64 * step).collect()
    } else {
        spec.split(',')
            .map(|t| parse_num(t, name))
            .collect::<Result<Vec<f64>, String>>()?
    };
    let slop = 1e-9 * (1.0 + hi.abs());
    for v in &mut vals {
        if *v < lo - slop || *v > hi + slop {
            return Err(format!("{name}: {v} is outside [{lo}, {hi}]"));
        }
        if *v < lo {
            *v = lo;
        }
        if *v > hi {
            *v = hi;
        }
    }
    Ok(vals)
}
