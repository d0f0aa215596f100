//! Sectioned scenario files.
//!
//! ```text
//! [space]
//! dimension: 3
//!
//! [family slits]
//! labels: A B C
//! canonical
//!
//! [family screen]
//! labels: D E X
//! 0.7071067811865476  0.7071067811865476 0
//! 0.7071067811865476 -0.7071067811865476 0
//! 0 0 1
//!
//! [prior]
//! A@slits
//!
//! [query]
//! D@screen after (A@slits or B@slits)
//! ```
//!
//! A family block lists its outcome labels and either `canonical` or the
//! rows of a unitary whose columns are the outcome states. The prior is a
//! pure outcome state `LABEL@FAMILY` or the rows of a density matrix.
//! Complex entries are written `1`, `-0.5`, `0.5-0.5i`, `2i`, and are
//! separated by spaces or commas.
//!
//! Interferometers can be declared directly instead of `[space]` and
//! `[family]` blocks:
//!
//! ```text
//! [slits]
//! slits: A B
//! wall: C            # optional label, optionally followed by an amplitude
//! source: 0.7071067811865476 0.7071067811865476
//! detector D0: 0.7071067811865476 0.7071067811865476
//! detector D1: 0.7071067811865476 -0.7071067811865476
//!
//! [param phi]
//! detector: D0
//! slit: B
//! value: 0
//! ```
//!
//! This declares the families `source`, `slits` and `screen` and, unless a
//! `[prior]` is given, the prior `S@source`. A `[param NAME]` places a phase
//! plate `e^{i·value}` behind one slit; it can be swept from the command
//! line, reading out the named detector (the first one by default).

use num_complex::Complex64;
use thiserror::Error;

use crate::quantum::{
    CMatrix, DensityOperator, FamilySet, QuantumError, QuestionFamily, Tolerance,
};
use crate::scenarios::{phase_sweep, PhasePath, ScenarioError, SweepRow, YoungSlits};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Quantum { line: usize, source: QuantumError },
    #[error("line {line}: {source}")]
    Scenario { line: usize, source: ScenarioError },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
}

impl ScenarioFileError {
    /// Whether the error is a numerically invalid input (as opposed to a
    /// malformed or inconsistent one).
    pub fn is_numeric(&self) -> bool {
        fn quantum(e: &QuantumError) -> bool {
            !matches!(
                e,
                QuantumError::LabelCountMismatch { .. }
                    | QuantumError::DuplicateLabel(_)
                    | QuantumError::UnknownLabel(_)
                    | QuantumError::DimensionMismatch { .. }
            )
        }
        match self {
            ScenarioFileError::Syntax { .. } | ScenarioFileError::UnknownParameter(_) => false,
            ScenarioFileError::Quantum { source, .. } => quantum(source),
            ScenarioFileError::Scenario { source, .. } => match source {
                ScenarioError::Quantum(e) => quantum(e),
                ScenarioError::NotNormalized { .. }
                | ScenarioError::DetectorsNotContractive { .. } => true,
                _ => false,
            },
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ScenarioFileError {
    ScenarioFileError::Syntax {
        line,
        message: message.into(),
    }
}

fn at_line<E>(line: usize) -> impl Fn(E) -> ScenarioFileError
where
    E: Into<LineSource>,
{
    move |e| match e.into() {
        LineSource::Quantum(source) => ScenarioFileError::Quantum { line, source },
        LineSource::Scenario(source) => ScenarioFileError::Scenario { line, source },
    }
}

enum LineSource {
    Quantum(QuantumError),
    Scenario(ScenarioError),
}

impl From<QuantumError> for LineSource {
    fn from(e: QuantumError) -> Self {
        LineSource::Quantum(e)
    }
}

impl From<ScenarioError> for LineSource {
    fn from(e: ScenarioError) -> Self {
        LineSource::Scenario(e)
    }
}

fn parse_complex(line: usize, tok: &str) -> Result<Complex64, ScenarioFileError> {
    tok.parse::<Complex64>()
        .map_err(|_| syntax(line, format!("invalid complex number `{tok}`")))
}

fn parse_row(line: usize, text: &str) -> Result<Vec<Complex64>, ScenarioFileError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_complex(line, t))
        .collect()
}

fn parse_matrix(rows: &[(usize, &str)], dim: usize) -> Result<CMatrix, ScenarioFileError> {
    if rows.len() != dim {
        let line = rows.first().map_or(0, |r| r.0);
        return Err(syntax(
            line,
            format!("expected {dim} matrix rows, found {}", rows.len()),
        ));
    }
    let mut m = CMatrix::zeros(dim, dim);
    for (i, &(line, text)) in rows.iter().enumerate() {
        let row = parse_row(line, text)?;
        if row.len() != dim {
            return Err(syntax(
                line,
                format!("expected {dim} entries, found {}", row.len()),
            ));
        }
        for (j, z) in row.into_iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    Ok(m)
}

#[derive(Debug)]
struct Section<'a> {
    line: usize,
    kind: &'a str,
    name: Option<&'a str>,
    body: Vec<(usize, &'a str)>,
}

fn sections(input: &str) -> Result<Vec<Section<'_>>, ScenarioFileError> {
    let mut out: Vec<Section> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(header) = text.strip_prefix('[') {
            let header = header
                .strip_suffix(']')
                .ok_or_else(|| syntax(line, "unterminated section header"))?;
            let mut words = header.split_whitespace();
            let kind = words
                .next()
                .ok_or_else(|| syntax(line, "empty section header"))?;
            let name = words.next();
            if words.next().is_some() {
                return Err(syntax(
                    line,
                    format!("malformed section header `[{header}]`"),
                ));
            }
            match (kind, name) {
                ("family" | "param", Some(_)) | ("space" | "prior" | "query" | "slits", None) => {}
                ("family" | "param", None) => {
                    return Err(syntax(line, format!("`[{kind}]` needs a name")))
                }
                ("space" | "prior" | "query" | "slits", Some(_)) => {
                    return Err(syntax(line, format!("`[{kind}]` takes no name")))
                }
                _ => return Err(syntax(line, format!("unknown section `[{kind}]`"))),
            }
            out.push(Section {
                line,
                kind,
                name,
                body: Vec::new(),
            });
        } else {
            out.last_mut()
                .ok_or_else(|| syntax(line, "content before the first section"))?
                .body
                .push((line, text));
        }
    }
    Ok(out)
}

fn key_value(line: usize, text: &str) -> Result<(&str, &str), ScenarioFileError> {
    text.split_once(':')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| syntax(line, format!("expected `key: value`, found `{text}`")))
}

/// A phase plate behind one slit. `detector` is the detector a sweep of
/// the parameter reads out.
#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub name: String,
    pub detector: usize,
    pub slit: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
struct SlitsBlock {
    base: YoungSlits,
    params: Vec<Param>,
    line: usize,
}

impl SlitsBlock {
    fn apply(&self, skip: Option<&str>) -> Result<YoungSlits, ScenarioFileError> {
        let mut y = self.base.clone();
        for p in &self.params {
            if Some(p.name.as_str()) != skip {
                y = y.with_phase(p.slit, p.value).map_err(at_line(self.line))?;
            }
        }
        Ok(y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    families: FamilySet,
    prior: DensityOperator,
    queries: Vec<(usize, String)>,
    slits: Option<SlitsBlock>,
}

fn parse_slits(
    section: &Section<'_>,
    params: &[&Section<'_>],
    tol: Tolerance,
) -> Result<SlitsBlock, ScenarioFileError> {
    let mut slit_labels: Option<Vec<String>> = None;
    let mut wall_label = "C".to_string();
    let mut wall_amp = None;
    let mut source: Option<Vec<Complex64>> = None;
    let mut detectors: Vec<(String, Vec<Complex64>)> = Vec::new();
    for &(line, text) in &section.body {
        let (key, value) = key_value(line, text)?;
        let mut words = key.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("slits"), None, _) => {
                slit_labels = Some(value.split_whitespace().map(String::from).collect())
            }
            (Some("wall"), None, _) => {
                let mut parts = value.split_whitespace();
                if let Some(l) = parts.next() {
                    wall_label = l.to_string();
                }
                if let Some(a) = parts.next() {
                    wall_amp = Some(parse_complex(line, a)?);
                }
                if parts.next().is_some() {
                    return Err(syntax(line, "expected `wall: LABEL [AMPLITUDE]`"));
                }
            }
            (Some("source"), None, _) => source = Some(parse_row(line, value)?),
            (Some("detector"), Some(name), None) => {
                detectors.push((name.to_string(), parse_row(line, value)?))
            }
            _ => return Err(syntax(line, format!("unknown key `{key}` in [slits]"))),
        }
    }
    let line = section.line;
    let source = source.ok_or_else(|| syntax(line, "[slits] needs a `source:` line"))?;
    let rows: Vec<Vec<Complex64>> = detectors.iter().map(|(_, r)| r.clone()).collect();
    let mut y = YoungSlits::from_rows(source, wall_amp, &rows, tol).map_err(at_line(line))?;
    let slit_labels = match slit_labels {
        Some(l) => l,
        None => y.slit_labels().to_vec(),
    };
    let detector_labels = detectors.iter().map(|(n, _)| n.clone()).collect();
    y = y
        .with_labels(slit_labels, wall_label, detector_labels)
        .map_err(at_line(line))?;

    let mut out = Vec::new();
    for p in params {
        let name = p.name.expect("params are named").to_string();
        if out.iter().any(|q: &Param| q.name == name) {
            return Err(syntax(p.line, format!("duplicate parameter `{name}`")));
        }
        let (mut detector, mut slit, mut value) = (Some(0), None, 0.0);
        for &(line, text) in &p.body {
            let (key, v) = key_value(line, text)?;
            match key {
                "detector" => {
                    detector = Some(
                        y.detector_labels()
                            .iter()
                            .position(|l| l == v)
                            .ok_or_else(|| syntax(line, format!("unknown detector `{v}`")))?,
                    )
                }
                "slit" => {
                    slit = Some(
                        y.slit_labels()
                            .iter()
                            .position(|l| l == v)
                            .ok_or_else(|| syntax(line, format!("unknown slit `{v}`")))?,
                    )
                }
                "value" => {
                    value = v
                        .parse()
                        .map_err(|_| syntax(line, format!("invalid number `{v}`")))?
                }
                _ => return Err(syntax(line, format!("unknown key `{key}` in [param]"))),
            }
        }
        out.push(Param {
            name,
            detector: detector.ok_or_else(|| syntax(p.line, "[param] needs `detector:`"))?,
            slit: slit.ok_or_else(|| syntax(p.line, "[param] needs `slit:`"))?,
            value,
        });
    }
    Ok(SlitsBlock {
        base: y,
        params: out,
        line,
    })
}

fn parse_family(
    section: &Section<'_>,
    dim: usize,
    tol: Tolerance,
) -> Result<QuestionFamily, ScenarioFileError> {
    let (first, rest) = section
        .body
        .split_first()
        .ok_or_else(|| syntax(section.line, "family needs a `labels:` line"))?;
    let (key, value) = key_value(first.0, first.1)?;
    if key != "labels" {
        return Err(syntax(first.0, "family must start with `labels:`"));
    }
    let labels: Vec<&str> = value.split_whitespace().collect();
    let u = match rest {
        [(_, "canonical")] => CMatrix::identity(dim, dim),
        rows => parse_matrix(rows, dim)?,
    };
    QuestionFamily::from_unitary(u, labels, tol).map_err(at_line(section.line))
}

fn parse_prior(
    section: &Section<'_>,
    families: &FamilySet,
    dim: usize,
    tol: Tolerance,
) -> Result<DensityOperator, ScenarioFileError> {
    match section.body.as_slice() {
        [] => Err(syntax(section.line, "empty [prior]")),
        [(line, text)] if text.contains('@') => {
            let (label, family) = text.split_once('@').expect("checked");
            let f = families
                .get(family.trim())
                .ok_or_else(|| syntax(*line, format!("unknown family `{family}`")))?;
            let psi = f.state(label.trim()).map_err(at_line(*line))?;
            DensityOperator::pure(&psi, tol).map_err(at_line(*line))
        }
        rows => DensityOperator::new(parse_matrix(rows, dim)?, tol).map_err(at_line(section.line)),
    }
}

impl ScenarioFile {
    pub fn parse(input: &str, tol: Tolerance) -> Result<Self, ScenarioFileError> {
        let sections = sections(input)?;
        let slit_sections: Vec<&Section> = sections.iter().filter(|s| s.kind == "slits").collect();
        let params: Vec<&Section> = sections.iter().filter(|s| s.kind == "param").collect();
        let slits = match slit_sections.as_slice() {
            [] => {
                if let Some(p) = params.first() {
                    return Err(syntax(p.line, "[param] requires a [slits] section"));
                }
                None
            }
            [s] => Some(parse_slits(s, &params, tol)?),
            [_, s, ..] => return Err(syntax(s.line, "duplicate [slits] section")),
        };

        let mut families = FamilySet::new();
        let mut dim = None;
        if let Some(block) = &slits {
            let (set, _) = block
                .apply(None)?
                .to_question_space(tol)
                .map_err(at_line(block.line))?;
            dim = set.dim();
            families = set;
        }

        let mut prior = None;
        let mut queries = Vec::new();
        for s in &sections {
            match s.kind {
                "space" => {
                    if slits.is_some() {
                        return Err(syntax(s.line, "[space] cannot be combined with [slits]"));
                    }
                    if dim.is_some() {
                        return Err(syntax(s.line, "duplicate [space] section"));
                    }
                    let [(line, text)] = s.body.as_slice() else {
                        return Err(syntax(s.line, "[space] takes one `dimension: N` line"));
                    };
                    let n = text.strip_prefix("dimension:").unwrap_or(text).trim();
                    let n: usize = n
                        .parse()
                        .ok()
                        .filter(|&n| n > 0)
                        .ok_or_else(|| syntax(*line, format!("invalid dimension `{n}`")))?;
                    dim = Some(n);
                }
                "family" => {
                    if slits.is_some() {
                        return Err(syntax(s.line, "[family] cannot be combined with [slits]"));
                    }
                    let d = dim.ok_or_else(|| syntax(s.line, "[family] before [space]"))?;
                    let f = parse_family(s, d, tol)?;
                    families
                        .insert(s.name.expect("named"), f)
                        .map_err(at_line(s.line))?;
                }
                "prior" => {
                    if prior.is_some() {
                        return Err(syntax(s.line, "duplicate [prior] section"));
                    }
                    let d = dim.ok_or_else(|| syntax(s.line, "[prior] before [space]"))?;
                    prior = Some(parse_prior(s, &families, d, tol)?);
                }
                "query" => queries.extend(s.body.iter().map(|&(l, q)| (l, q.to_string()))),
                _ => {}
            }
        }

        let prior = match (prior, &slits) {
            (Some(p), _) => p,
            (None, Some(block)) => {
                let psi = families
                    .get("source")
                    .expect("slit scenarios declare a source")
                    .state("S")
                    .map_err(at_line(block.line))?;
                DensityOperator::pure(&psi, tol).map_err(at_line(block.line))?
            }
            (None, None) => return Err(syntax(0, "missing [prior] section")),
        };
        Ok(ScenarioFile {
            families,
            prior,
            queries,
            slits,
        })
    }

    pub fn families(&self) -> &FamilySet {
        &self.families
    }

    pub fn prior(&self) -> &DensityOperator {
        &self.prior
    }

    /// Queries with the line they were declared on.
    pub fn queries(&self) -> &[(usize, String)] {
        &self.queries
    }

    pub fn params(&self) -> &[Param] {
        self.slits.as_ref().map_or(&[], |s| &s.params)
    }

    /// The interferometer with every parameter at its declared value.
    pub fn interferometer(&self) -> Option<YoungSlits> {
        self.slits.as_ref().and_then(|s| s.apply(None).ok())
    }

    /// Sweeps parameter `name` from `from` to `to`, other parameters held at
    /// their declared values, reading the parameter's detector.
    pub fn sweep(
        &self,
        name: &str,
        from: f64,
        to: f64,
        steps: usize,
    ) -> Result<Vec<SweepRow>, ScenarioFileError> {
        let block = self
            .slits
            .as_ref()
            .ok_or_else(|| ScenarioFileError::UnknownParameter(name.to_string()))?;
        let p = block
            .params
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| ScenarioFileError::UnknownParameter(name.to_string()))?;
        let y = block.apply(Some(name))?;
        let path = PhasePath {
            slit: p.slit,
            start: from,
            end: to,
        };
        phase_sweep(&y, p.detector, path, steps).map_err(at_line(block.line))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::query::{compile, evaluate, parse_query};

    const EXPLICIT: &str = "\
# three-dimensional toy
[space]
dimension: 3

[family slits]
labels: A B C
canonical

[family screen]
labels: D E X
0.7071067811865476, 0.7071067811865476, 0
0.7071067811865476 -0.7071067811865476 0
0 0 1

[prior]
0.5 0.5 0
0.5 0.5 0
0 0 0

[query]
D@screen after (A@slits or B@slits)
(D@screen after A@slits) or (D@screen after B@slits)
";

    const SLITS: &str = "\
[slits]
slits: A B
wall: C
source: 0.7071067811865476 0.7071067811865476
detector D0: 0.7071067811865476 0.7071067811865476
detector D1: 0.7071067811865476 -0.7071067811865476

[param phi]
detector: D0
slit: B
value: 3.141592653589793
";

    fn eval(s: &ScenarioFile, q: &str) -> f64 {
        let plan = compile(&parse_query(q).unwrap(), s.families()).unwrap();
        evaluate(&plan, s.prior(), s.families(), Tolerance::default()).unwrap()
    }

    #[test]
    fn explicit_families() {
        let s = ScenarioFile::parse(EXPLICIT, Tolerance::default()).unwrap();
        assert_eq!(s.queries().len(), 2);
        assert_eq!(s.queries()[0].0, 21);
        assert!((eval(&s, &s.queries()[0].1) - 1.0).abs() < 1e-12);
        assert!((eval(&s, &s.queries()[1].1) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn slit_block_with_param() {
        let s = ScenarioFile::parse(SLITS, Tolerance::default()).unwrap();
        assert_eq!(s.params()[0].slit, 1);
        // φ = π: destructive at D0
        assert!(eval(&s, "D0@screen after (A@slits or B@slits)") < 1e-12);
        assert!((eval(&s, "S@source after S@source") - 1.0).abs() < 1e-12);
        let rows = s.sweep("phi", 0.0, std::f64::consts::PI, 3).unwrap();
        assert!((rows[0].p_indistinguishable - 1.0).abs() < 1e-12);
        assert!((rows[1].p_indistinguishable - 0.5).abs() < 1e-12);
        assert_eq!(
            s.sweep("theta", 0.0, 1.0, 3),
            Err(ScenarioFileError::UnknownParameter("theta".into()))
        );
    }

    #[test]
    fn complex_literals() {
        let row = parse_row(1, "1 -0.5 0.5-0.5i 2i -i").unwrap();
        assert_eq!(
            row,
            [
                Complex64::new(1.0, 0.0),
                Complex64::new(-0.5, 0.0),
                Complex64::new(0.5, -0.5),
                Complex64::new(0.0, 2.0),
                Complex64::new(0.0, -1.0)
            ]
        );
        assert!(parse_row(3, "1 x").is_err());
    }

    #[test]
    fn errors_and_their_classes() {
        let tol = Tolerance::default();
        let e = ScenarioFile::parse("[bogus]\n", tol).unwrap_err();
        assert!(matches!(e, ScenarioFileError::Syntax { line: 1, .. }));
        assert!(!e.is_numeric());

        let e = ScenarioFile::parse(
            "[space]\n2\n[family f]\nlabels: a b\n1 1\n1 1\n[prior]\na@f\n",
            tol,
        )
        .unwrap_err();
        assert!(matches!(
            e,
            ScenarioFileError::Quantum {
                line: 3,
                source: QuantumError::NotUnitary { .. }
            }
        ));
        assert!(e.is_numeric());

        let e = ScenarioFile::parse("[space]\n2\n[prior]\nz@f\n", tol).unwrap_err();
        assert!(matches!(e, ScenarioFileError::Syntax { line: 4, .. }));

        let e = ScenarioFile::parse("[space]\n2\n[family f]\nlabels: a b\ncanonical\n", tol)
            .unwrap_err();
        assert_eq!(e, syntax(0, "missing [prior] section"));

        let e = ScenarioFile::parse("[slits]\nsource: 1 1\ndetector D: 1 0\n", tol).unwrap_err();
        assert!(e.is_numeric());

        let e = ScenarioFile::parse("a: b\n", tol).unwrap_err();
        assert!(matches!(e, ScenarioFileError::Syntax { line: 1, .. }));
    }
}
