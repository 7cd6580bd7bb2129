//! Parameter sweeps: `1`, `0.5,1,2`, `lin:start:stop:count`, `log:start:stop:count`.

pub fn parse_sweep(flag: &str, text: &str) -> Result<Vec<f64>, String> {
    let bad = |msg: &str| format!("--{flag}: {msg} (got '{text}')");
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("--{flag}: '{}' is not a number", s.trim()));
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("lin:").or_else(|| text.strip_prefix("log:")) {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected kind:start:stop:count"));
        }
        let (a, b) = (num(parts[0])?, num(parts[1])?);
        let n: usize = parts[2].trim().parse().map_err(|_| bad("count must be a positive integer"))?;
        if n == 0 {
            return Err(bad("sweep count must be >= 1"));
        }
        let log = text.starts_with("log:");
        if log && !(a > 0.0 && b > 0.0) {
            return Err(bad("log sweep needs positive endpoints"));
        }
        let frac = |i: usize| if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
        return Ok((0..n)
            .map(|i| if log { (a.ln() + frac(i) * (b.ln() - a.ln())).exp() } else { a + frac(i) * (b - a) })
            .collect());
    }
    let vals = text.split(',').map(num).collect::<Result<Vec<f64>, String>>()?;
    if vals.is_empty() {
        return Err(bad("empty sweep"));
    }
    if let Some(v) = vals.iter().find(|v| !v.is_finite()) {
        return Err(bad(&format!("{v} is not finite")));
    }
    Ok(vals)
}

/// Sweep whose values must all be strictly positive.
pub fn parse_positive(flag: &str, text: &str) -> Result<Vec<f64>, String> {
    let v = parse_sweep(flag, text)?;
    if v.iter().any(|x| *x <= 0.0) {
        return Err(format!("--{flag}: values must be > 0 (got '{text}')"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_sweep("t", "1").unwrap(), vec![1.0]);
        assert_eq!(parse_sweep("t", "0.5, 1,2").unwrap(), vec![0.5, 1.0, 2.0]);
        assert_eq!(parse_sweep("t", "lin:0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        let l = parse_sweep("t", "log:0.01:1:3").unwrap();
        assert!((l[1] - 0.1).abs() < 1e-15 && (l[2] - 1.0).abs() < 1e-15);
        assert_eq!(parse_sweep("t", "lin:2:3:1").unwrap(), vec![2.0]);
    }

    #[test]
    fn errors_name_the_flag() {
        for bad in ["", "x", "lin:0:1", "lin:0:1:0", "log:0:1:3", "1,,2", "nan"] {
            let e = parse_sweep("theta", bad).unwrap_err();
            assert!(e.starts_with("--theta:"), "{e}");
        }
        assert!(parse_positive("t", "0,1").unwrap_err().starts_with("--t:"));
    }
}
