use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Holonomy of one primitive class: trivial of dimension d, an explicit list
/// tr ρ(γ^k) for k = 1..K, or the eigenphases θ_j of ρ(γ) (so that
/// tr ρ(γ^k) = Σ_j e^{ikθ_j} for all k).
#[derive(Debug, Clone, PartialEq)]
pub enum Holonomy {
    Trivial(usize),
    Traces(Vec<Complex64>),
    Phases(Vec<f64>),
}

impl Holonomy {
    /// tr ρ(γ^k), k ≥ 1; `None` once an explicit trace list runs out.
    pub fn trace(&self, k: usize) -> Option<Complex64> {
        match self {
            Holonomy::Trivial(d) => Some(Complex64::new(*d as f64, 0.0)),
            Holonomy::Traces(v) => v.get(k - 1).copied(),
            Holonomy::Phases(p) => Some(p.iter().map(|th| Complex64::from_polar(1.0, k as f64 * th)).sum()),
        }
    }

    pub fn max_power(&self) -> Option<usize> {
        match self {
            Holonomy::Traces(v) => Some(v.len()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassEntry {
    pub length: f64,
    pub multiplicity: usize,
    /// χ_orb as (numerator, denominator).
    pub chi_orb: (i64, i64),
    /// Generic multiplicity of the primitive class; the k-th power has k·n.
    pub n: usize,
    pub holonomy: Holonomy,
}

impl ClassEntry {
    pub fn primitive(length: f64, multiplicity: usize) -> Self {
        ClassEntry { length, multiplicity, chi_orb: (1, 1), n: 1, holonomy: Holonomy::Trivial(1) }
    }

    pub fn chi(&self) -> f64 {
        self.chi_orb.0 as f64 / self.chi_orb.1 as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthSpectrum {
    pub classes: Vec<ClassEntry>,
    /// dim ρ.
    pub rank: usize,
    /// Explicit growth abscissa; overrides the estimate.
    pub abscissa: Option<f64>,
    /// The list is a truncation of an infinite spectrum (abscissa is then
    /// estimated from the entry count).
    pub truncated: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawClass {
    length: f64,
    multiplicity: usize,
    #[serde(default = "one_over_one")]
    chi_orb: [i64; 2],
    #[serde(default = "one")]
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    holonomy_traces: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phases: Option<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawSpectrum {
    classes: Vec<RawClass>,
    #[serde(default = "one")]
    rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    abscissa: Option<f64>,
    #[serde(default)]
    truncated: bool,
}

fn one() -> usize {
    1
}

fn one_over_one() -> [i64; 2] {
    [1, 1]
}

impl LengthSpectrum {
    pub fn new(classes: Vec<ClassEntry>, rank: usize) -> Result<Self> {
        let s = LengthSpectrum { classes, rank, abscissa: None, truncated: false };
        s.validate()?;
        Ok(s)
    }

    pub fn empty() -> Self {
        LengthSpectrum { classes: vec![], rank: 1, abscissa: None, truncated: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::InvalidInput("holonomy rank must be >= 1".into()));
        }
        let mut prev = 0.0;
        for (i, c) in self.classes.iter().enumerate() {
            if !(c.length > 0.0 && c.length.is_finite()) {
                return Err(Error::InvalidInput(format!("class {i}: length must be positive")));
            }
            if c.length < prev {
                return Err(Error::InvalidInput(format!("class {i}: lengths must be sorted ascending")));
            }
            prev = c.length;
            if c.multiplicity == 0 || c.n == 0 || c.chi_orb.1 == 0 {
                return Err(Error::InvalidInput(format!("class {i}: multiplicity, n and chi_orb denominator must be nonzero")));
            }
            match &c.holonomy {
                Holonomy::Trivial(d) if *d != self.rank => {
                    return Err(Error::InvalidInput(format!("class {i}: trivial holonomy of dimension {d} != rank {}", self.rank)));
                }
                Holonomy::Traces(v) => {
                    if let Some(bad) = v.iter().position(|z| z.norm() > self.rank as f64 * (1.0 + 1e-12)) {
                        return Err(Error::InvalidInput(format!("class {i}: |tr rho(gamma^{})| exceeds dim rho", bad + 1)));
                    }
                }
                Holonomy::Phases(p) if p.len() != self.rank => {
                    return Err(Error::InvalidInput(format!("class {i}: {} phases for rank {}", p.len(), self.rank)));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Re σ must exceed this for the Ruelle series to converge.
    pub fn growth_abscissa(&self) -> f64 {
        if let Some(a) = self.abscissa {
            return a;
        }
        if self.truncated && !self.classes.is_empty() {
            let count: usize = self.classes.iter().map(|c| c.multiplicity).sum();
            let l_max = self.classes.last().map(|c| c.length).unwrap_or(1.0);
            return (count as f64).ln().max(0.0) / l_max;
        }
        0.0
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawSpectrum = serde_json::from_str(s)?;
        let classes = raw
            .classes
            .into_iter()
            .map(|c| {
                let holonomy = match (c.holonomy_traces, c.phases) {
                    (Some(_), Some(_)) => {
                        return Err(Error::InvalidInput("give either holonomy_traces or phases, not both".into()))
                    }
                    (Some(tr), None) => Holonomy::Traces(tr.iter().map(|p| Complex64::new(p[0], p[1])).collect()),
                    (None, Some(ph)) => Holonomy::Phases(ph),
                    (None, None) => Holonomy::Trivial(raw.rank),
                };
                Ok(ClassEntry { length: c.length, multiplicity: c.multiplicity, chi_orb: (c.chi_orb[0], c.chi_orb[1]), n: c.n, holonomy })
            })
            .collect::<Result<Vec<_>>>()?;
        let s = LengthSpectrum { classes, rank: raw.rank, abscissa: raw.abscissa, truncated: raw.truncated };
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let raw = RawSpectrum {
            classes: self
                .classes
                .iter()
                .map(|c| {
                    let (traces, phases) = match &c.holonomy {
                        Holonomy::Trivial(_) => (None, None),
                        Holonomy::Traces(v) => (Some(v.iter().map(|z| [z.re, z.im]).collect()), None),
                        Holonomy::Phases(p) => (None, Some(p.clone())),
                    };
                    RawClass {
                        length: c.length,
                        multiplicity: c.multiplicity,
                        chi_orb: [c.chi_orb.0, c.chi_orb.1],
                        n: c.n,
                        holonomy_traces: traces,
                        phases,
                    }
                })
                .collect(),
            rank: self.rank,
            abscissa: self.abscissa,
            truncated: self.truncated,
        };
        serde_json::to_string_pretty(&raw).expect("spectrum serializes")
    }
}

/// Closed geodesics of the unit circle twisted by holonomy e^{iθ}: the two
/// orientations of the primitive loop, each carrying one phase.
pub fn circle_length_spectrum(theta: f64) -> LengthSpectrum {
    let class = |phase: f64| ClassEntry { length: 1.0, multiplicity: 1, chi_orb: (1, 1), n: 1, holonomy: Holonomy::Phases(vec![phase]) };
    LengthSpectrum { classes: vec![class(theta), class(-theta)], rank: 1, abscissa: Some(0.0), truncated: false }
}

/// A deterministic stand-in for the primitive length spectrum of a genus-2
/// surface: systole 2, with class counts following the prime geodesic
/// theorem N(ℓ) ~ e^ℓ/ℓ in half-unit bins up to `l_max`.
pub fn synthetic_genus2_spectrum(l_max: f64) -> LengthSpectrum {
    let mut classes = Vec::new();
    let mut l = 2.0;
    let mut counted = 0.0;
    while l <= l_max {
        let upto = (l + 0.5).exp() / (l + 0.5);
        let mult = ((upto - counted).round() as usize).max(1);
        counted += mult as f64;
        classes.push(ClassEntry::primitive(l, mult));
        l += 0.5;
    }
    LengthSpectrum { classes, rank: 1, abscissa: None, truncated: true }
}

/// Spectral input for zeta functions.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralData {
    /// λ_k = ((2πk + θ)/L)², k ∈ ℤ.
    Circle { theta: f64, circumference: f64 },
    /// (λ_j, m_j), nondecreasing.
    Eigenvalues(Vec<(f64, usize)>),
}

impl SpectralData {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpectralData::Circle { theta, circumference } => {
                if !theta.is_finite() || !(*circumference > 0.0) {
                    return Err(Error::InvalidInput("circle needs finite theta and positive circumference".into()));
                }
            }
            SpectralData::Eigenvalues(v) => {
                let mut prev = 0.0;
                for (i, (l, m)) in v.iter().enumerate() {
                    if !(*l >= prev) || !l.is_finite() {
                        return Err(Error::InvalidInput(format!("eigenvalue {i}: must be >= 0 and nondecreasing")));
                    }
                    if *m == 0 {
                        return Err(Error::InvalidInput(format!("eigenvalue {i}: multiplicity must be >= 1")));
                    }
                    prev = *l;
                }
            }
        }
        Ok(())
    }

    /// Reads `lambda,multiplicity` CSV with a header row.
    pub fn from_csv_reader<R: std::io::Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let mut out = Vec::new();
        for (i, rec) in rdr.deserialize::<(f64, usize)>().enumerate() {
            out.push(rec.map_err(|e| Error::InvalidInput(format!("eigenvalue row {}: {e}", i + 1)))?);
        }
        let s = SpectralData::Eigenvalues(out);
        s.validate()?;
        Ok(s)
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let s = LengthSpectrum {
            classes: vec![
                ClassEntry { length: 1.0, multiplicity: 2, chi_orb: (1, 2), n: 1, holonomy: Holonomy::Traces(vec![Complex64::new(0.5, 0.5)]) },
                ClassEntry { length: 1.5, multiplicity: 1, chi_orb: (1, 1), n: 2, holonomy: Holonomy::Phases(vec![0.3]) },
            ],
            rank: 1,
            abscissa: None,
            truncated: false,
        };
        let back = LengthSpectrum::from_json_str(&s.to_json_string()).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn rejects_unsorted_and_oversized_traces() {
        let bad = r#"{"classes":[{"length":2,"multiplicity":1},{"length":1,"multiplicity":1}]}"#;
        assert!(LengthSpectrum::from_json_str(bad).is_err());
        let big = r#"{"classes":[{"length":1,"multiplicity":1,"chi_orb":[1,1],"n":1,"holonomy_traces":[[2.0,0.0]]}]}"#;
        assert!(LengthSpectrum::from_json_str(big).is_err());
    }

    #[test]
    fn eigenvalue_csv() {
        let s = SpectralData::from_csv_reader("lambda,multiplicity\n0.5,1\n2.0,2\n".as_bytes()).unwrap();
        assert_eq!(s, SpectralData::Eigenvalues(vec![(0.5, 1), (2.0, 2)]));
        assert!(SpectralData::from_csv_reader("lambda,multiplicity\n2,1\n1,1\n".as_bytes()).is_err());
    }

    #[test]
    fn genus2_counts_grow() {
        let s = synthetic_genus2_spectrum(8.0);
        assert!(s.classes.len() > 5);
        assert!(s.classes.last().unwrap().multiplicity > s.classes[0].multiplicity);
        assert!(s.growth_abscissa() > 0.0);
    }
}
