//! Text format for function descriptions.
//!
//! ```text
//! # comment
//! [blaschke]
//! family = geometric
//! alpha = 2
//! count = 20
//!
//! [singular]
//! atoms = 0:1; 3.14:0.5
//! ```
//!
//! Unknown keys, duplicate keys and keys the chosen family does not use are
//! rejected with the line they appear on.

use std::fmt::Write as _;

use innerfn::{Atom, AtomFamily, AtomKind, Spec, ZeroFamily, ZeroKind, C64};
use thiserror::Error;

use crate::format::{complex_literal, g17, parse_complex, parse_float};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key '{key}' in [{section}] section")]
    UnknownKey {
        line: usize,
        key: String,
        section: &'static str,
    },
    #[error("line {line}: invalid value for '{key}': {message}")]
    Value {
        line: usize,
        key: String,
        message: String,
    },
    #[error("line {line}: [{section}] section is missing '{key}'")]
    MissingKey {
        line: usize,
        key: &'static str,
        section: &'static str,
    },
    #[error("no [blaschke] or [singular] section")]
    Empty,
}

const BLASCHKE_KEYS: &[&str] = &["family", "alpha", "gamma", "count", "rotation", "zeros"];
const SINGULAR_KEYS: &[&str] = &["family", "alpha", "gamma0", "count", "rotation", "atoms"];

#[derive(Clone, Copy, PartialEq)]
enum SectionKind {
    Blaschke,
    Singular,
}

impl SectionKind {
    fn name(self) -> &'static str {
        match self {
            SectionKind::Blaschke => "blaschke",
            SectionKind::Singular => "singular",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            SectionKind::Blaschke => BLASCHKE_KEYS,
            SectionKind::Singular => SINGULAR_KEYS,
        }
    }
}

struct Entry {
    key: String,
    value: String,
    line: usize,
}

struct Section {
    kind: SectionKind,
    line: usize,
    entries: Vec<Entry>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn value_error(&self, key: &str, message: impl Into<String>) -> SpecError {
        SpecError::Value {
            line: self.get(key).map_or(self.line, |e| e.line),
            key: key.to_string(),
            message: message.into(),
        }
    }

    /// Rejects keys the family does not use.
    fn only(&self, family: &str, allowed: &[&str]) -> Result<(), SpecError> {
        match self
            .entries
            .iter()
            .find(|e| e.key != "family" && !allowed.contains(&e.key.as_str()))
        {
            Some(e) => Err(SpecError::Value {
                line: e.line,
                key: e.key.clone(),
                message: format!("not used by family '{family}'"),
            }),
            None => Ok(()),
        }
    }

    fn float(&self, key: &'static str) -> Result<Option<f64>, SpecError> {
        self.get(key)
            .map(|e| {
                parse_float(&e.value).ok_or_else(|| SpecError::Value {
                    line: e.line,
                    key: key.into(),
                    message: format!("'{}' is not a finite decimal number", e.value),
                })
            })
            .transpose()
    }

    fn required_float(&self, key: &'static str) -> Result<f64, SpecError> {
        self.float(key)?.ok_or(SpecError::MissingKey {
            line: self.line,
            key,
            section: self.kind.name(),
        })
    }

    fn count(&self) -> Result<usize, SpecError> {
        let e = self.get("count").ok_or(SpecError::MissingKey {
            line: self.line,
            key: "count",
            section: self.kind.name(),
        })?;
        e.value.parse::<usize>().map_err(|_| SpecError::Value {
            line: e.line,
            key: "count".into(),
            message: format!("'{}' is not a non-negative integer", e.value),
        })
    }

    fn list<T>(
        &self,
        key: &'static str,
        item: impl Fn(&str) -> Option<T>,
        grammar: &str,
    ) -> Result<Vec<T>, SpecError> {
        let e = self.get(key).ok_or(SpecError::MissingKey {
            line: self.line,
            key,
            section: self.kind.name(),
        })?;
        e.value
            .split(';')
            .map(str::trim)
            .map(|s| {
                item(s).ok_or_else(|| SpecError::Value {
                    line: e.line,
                    key: key.into(),
                    message: format!("'{s}' does not match {grammar}"),
                })
            })
            .collect()
    }

    /// Maps a library construction error onto the key that caused it.
    fn lift(&self, err: innerfn::Error, fallback: &str) -> SpecError {
        let key = match &err {
            innerfn::Error::Parameter { name, .. } => match *name {
                "exponent" => "alpha",
                other => other,
            },
            _ => fallback,
        };
        self.value_error(key, err.to_string())
    }
}

fn tokenize(text: &str) -> Result<Vec<Section>, SpecError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let kind = match rest.strip_suffix(']').map(str::trim) {
                Some("blaschke") => SectionKind::Blaschke,
                Some("singular") => SectionKind::Singular,
                _ => {
                    return Err(SpecError::Syntax {
                        line,
                        message: format!("unknown section header '{content}'"),
                    })
                }
            };
            sections.push(Section {
                kind,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| SpecError::Syntax {
            line,
            message: format!("expected 'key = value', found '{content}'"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(SpecError::Syntax {
                line,
                message: "empty key or value".into(),
            });
        }
        let section = sections.last_mut().ok_or_else(|| SpecError::Syntax {
            line,
            message: format!("key '{key}' appears before any section header"),
        })?;
        if !section.kind.keys().contains(&key) {
            return Err(SpecError::UnknownKey {
                line,
                key: key.into(),
                section: section.kind.name(),
            });
        }
        if section.get(key).is_some() {
            return Err(SpecError::Syntax {
                line,
                message: format!("duplicate key '{key}'"),
            });
        }
        section.entries.push(Entry {
            key: key.into(),
            value: value.into(),
            line,
        });
    }
    Ok(sections)
}

fn family_name<'a>(section: &'a Section, list_key: &str) -> Result<&'a str, SpecError> {
    match section.get("family") {
        Some(e) => Ok(e.value.as_str()),
        None if section.get(list_key).is_some() => Ok("explicit"),
        None => Err(SpecError::MissingKey {
            line: section.line,
            key: "family",
            section: section.kind.name(),
        }),
    }
}

fn zero_family(s: &Section) -> Result<ZeroFamily, SpecError> {
    let name = family_name(s, "zeros")?;
    let family = match name {
        "power" | "logpower" | "geometric" => {
            s.only(name, &["alpha", "count", "rotation"])?;
            let alpha = s.required_float("alpha")?;
            let count = s.count()?;
            match name {
                "power" => ZeroFamily::power(alpha, count),
                "logpower" => ZeroFamily::log_power(alpha, count),
                _ => ZeroFamily::geometric(alpha, count),
            }
        }
        "doubleexp" => {
            s.only(name, &["count", "rotation"])?;
            ZeroFamily::double_exp(s.count()?)
        }
        "tangential" => {
            s.only(name, &["alpha", "gamma", "count", "rotation"])?;
            let alpha = s.required_float("alpha")?;
            let gamma = s.required_float("gamma")?;
            ZeroFamily::tangential(alpha, gamma, s.count()?)
        }
        "explicit" => {
            s.only(name, &["zeros", "rotation"])?;
            ZeroFamily::explicit(s.list("zeros", parse_complex, "the literal a+bi")?)
        }
        other => {
            return Err(s.value_error(
                "family",
                format!(
                    "'{other}' is not one of power, logpower, geometric, doubleexp, tangential, explicit"
                ),
            ))
        }
    }
    .map_err(|e| s.lift(e, if name == "explicit" { "zeros" } else { "family" }))?;
    Ok(family.with_rotation(s.float("rotation")?.unwrap_or(0.0)))
}

fn parse_atom(s: &str) -> Option<Atom> {
    let (theta, gamma) = s.split_once(':')?;
    Some(Atom {
        theta: parse_float(theta)?,
        gamma: parse_float(gamma)?,
    })
}

fn atom_family(s: &Section) -> Result<AtomFamily, SpecError> {
    let name = family_name(s, "atoms")?;
    let family = match name {
        "dyadic_square" => {
            s.only(name, &["gamma0", "count", "rotation"])?;
            let gamma0 = s.float("gamma0")?.unwrap_or(1.0);
            AtomFamily::dyadic_square(gamma0, s.count()?)
        }
        "harmonic" => {
            s.only(name, &["gamma0", "alpha", "count", "rotation"])?;
            let gamma0 = s.float("gamma0")?.unwrap_or(1.0);
            let exponent = s.required_float("alpha")?;
            AtomFamily::harmonic(gamma0, exponent, s.count()?)
        }
        "explicit" => {
            s.only(name, &["atoms", "rotation"])?;
            AtomFamily::explicit(s.list("atoms", parse_atom, "the pair theta:gamma")?)
        }
        other => {
            return Err(s.value_error(
                "family",
                format!("'{other}' is not one of dyadic_square, harmonic, explicit"),
            ))
        }
    }
    .map_err(|e| s.lift(e, if name == "explicit" { "atoms" } else { "family" }))?;
    Ok(family.with_rotation(s.float("rotation")?.unwrap_or(0.0)))
}

/// Parses a function description. The result is deterministic in the text.
pub fn parse_spec(text: &str) -> Result<Spec, SpecError> {
    let mut blaschke = Vec::new();
    let mut singular = Vec::new();
    for section in tokenize(text)? {
        match section.kind {
            SectionKind::Blaschke => blaschke.push(zero_family(&section)?),
            SectionKind::Singular => singular.push(atom_family(&section)?),
        }
    }
    Spec::new(blaschke, singular).map_err(|_| SpecError::Empty)
}

fn push_rotation(out: &mut String, rotation: f64) {
    if rotation != 0.0 {
        writeln!(out, "rotation = {}", g17(rotation)).unwrap();
    }
}

/// Canonical text for `spec`; `parse_spec` maps it back to an equal value.
pub fn to_spec_text(spec: &Spec) -> String {
    let mut out = String::new();
    for f in spec.blaschke_parts() {
        out.push_str("[blaschke]\n");
        match f.kind() {
            ZeroKind::Power { alpha } => {
                writeln!(out, "family = power\nalpha = {}", g17(*alpha)).unwrap()
            }
            ZeroKind::LogPower { alpha } => {
                writeln!(out, "family = logpower\nalpha = {}", g17(*alpha)).unwrap()
            }
            ZeroKind::Geometric { alpha } => {
                writeln!(out, "family = geometric\nalpha = {}", g17(*alpha)).unwrap()
            }
            ZeroKind::DoubleExp => out.push_str("family = doubleexp\n"),
            ZeroKind::Tangential { alpha, gamma } => writeln!(
                out,
                "family = tangential\nalpha = {}\ngamma = {}",
                g17(*alpha),
                g17(*gamma)
            )
            .unwrap(),
            ZeroKind::Explicit(zeros) => {
                let list: Vec<String> = zeros.iter().map(|&z: &C64| complex_literal(z)).collect();
                writeln!(out, "family = explicit\nzeros = {}", list.join("; ")).unwrap();
            }
        }
        if !f.is_explicit() {
            writeln!(out, "count = {}", f.count()).unwrap();
        }
        push_rotation(&mut out, f.rotation());
        out.push('\n');
    }
    for f in spec.singular_parts() {
        out.push_str("[singular]\n");
        match f.kind() {
            AtomKind::DyadicSquare { gamma0 } => {
                writeln!(out, "family = dyadic_square\ngamma0 = {}", g17(*gamma0)).unwrap()
            }
            AtomKind::Harmonic { gamma0, exponent } => writeln!(
                out,
                "family = harmonic\ngamma0 = {}\nalpha = {}",
                g17(*gamma0),
                g17(*exponent)
            )
            .unwrap(),
            AtomKind::Explicit(atoms) => {
                let list: Vec<String> = atoms
                    .iter()
                    .map(|a| format!("{}:{}", g17(a.theta), g17(a.gamma)))
                    .collect();
                writeln!(out, "family = explicit\natoms = {}", list.join("; ")).unwrap();
            }
        }
        if !f.is_explicit() {
            writeln!(out, "count = {}", f.count()).unwrap();
        }
        push_rotation(&mut out, f.rotation());
        out.push('\n');
    }
    out.pop();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometric_section() {
        let spec = parse_spec("[blaschke]\nfamily = geometric\nalpha = 2\ncount = 20\n").unwrap();
        assert_eq!(spec, Spec::blaschke(ZeroFamily::geometric(2.0, 20).unwrap()));
    }

    #[test]
    fn dyadic_section() {
        let spec = parse_spec("[singular]\nfamily = dyadic_square\ncount = 30\ngamma0 = 1\n").unwrap();
        assert_eq!(spec, Spec::singular(AtomFamily::dyadic_square(1.0, 30).unwrap()));
    }

    #[test]
    fn explicit_zeros_without_family() {
        let spec = parse_spec("[blaschke]\nzeros = 0.5+0i; 0+0.3i\n").unwrap();
        let want = ZeroFamily::explicit(vec![C64::new(0.5, 0.0), C64::new(0.0, 0.3)]).unwrap();
        assert_eq!(spec, Spec::blaschke(want));
    }

    #[test]
    fn comments_and_product() {
        let text = "# two parts\n[blaschke] # zeros\nzeros = 0.5+0i\n\n[singular]\natoms = 0:1 ; 3:0.5\nrotation = 0.25\n";
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.blaschke_parts().len(), 1);
        assert_eq!(spec.singular_parts().len(), 1);
        assert_eq!(spec.singular_parts()[0].rotation(), 0.25);
    }

    #[test]
    fn errors_carry_lines_and_keys() {
        let cases: Vec<(&str, SpecError)> = vec![
            (
                "[blaschke]\nfamily = geometric\nalpah = 2\n",
                SpecError::UnknownKey { line: 3, key: "alpah".into(), section: "blaschke" },
            ),
            (
                "alpha = 2\n",
                SpecError::Syntax {
                    line: 1,
                    message: "key 'alpha' appears before any section header".into(),
                },
            ),
            ("", SpecError::Empty),
            ("# only a comment\n", SpecError::Empty),
        ];
        for (text, want) in cases {
            assert_eq!(parse_spec(text).unwrap_err(), want, "{text:?}");
        }
        let err = parse_spec("[blaschke]\nfamily = geometric\n\nalpha = 1\ncount = 4\n").unwrap_err();
        assert!(matches!(err, SpecError::Value { line: 4, ref key, .. } if key == "alpha"), "{err}");
        let err = parse_spec("[singular]\nfamily = harmonic\nalpha = 0.5\ncount = 4\n").unwrap_err();
        assert!(matches!(err, SpecError::Value { line: 3, ref key, .. } if key == "alpha"), "{err}");
        let err = parse_spec("[blaschke]\nzeros = 0.5+0i; 1.5+0i\n").unwrap_err();
        assert!(matches!(err, SpecError::Value { line: 2, ref key, .. } if key == "zeros"), "{err}");
        let err = parse_spec("[blaschke]\nzeros = 0.5 + 0i\n").unwrap_err();
        assert!(matches!(err, SpecError::Value { line: 2, .. }), "{err}");
        let err = parse_spec("[blaschke]\nfamily = doubleexp\nalpha = 2\ncount = 3\n").unwrap_err();
        assert!(matches!(err, SpecError::Value { line: 3, ref key, .. } if key == "alpha"), "{err}");
        let err = parse_spec("[blaschke]\nfamily = power\nalpha = 2\n").unwrap_err();
        assert!(matches!(err, SpecError::MissingKey { line: 1, key: "count", .. }), "{err}");
        let err = parse_spec("[blaschke]\ncount = 3\ncount = 4\n").unwrap_err();
        assert!(matches!(err, SpecError::Syntax { line: 3, .. }), "{err}");
        let err = parse_spec("[cauchy]\n").unwrap_err();
        assert!(matches!(err, SpecError::Syntax { line: 1, .. }), "{err}");
        let err = parse_spec("[blaschke]\nfamily = power\nalpha = 2\ncount = -3\n").unwrap_err();
        assert!(matches!(err, SpecError::Value { line: 4, .. }), "{err}");
    }

    #[test]
    fn canonical_text_round_trips() {
        let spec = Spec::blaschke(ZeroFamily::tangential(3.0, 2.0, 50).unwrap().with_rotation(0.1))
            .times(Spec::blaschke(ZeroFamily::log_power(1.5, 40).unwrap()))
            .times(Spec::singular(AtomFamily::harmonic(0.5, 1.5, 12).unwrap()))
            .times(Spec::singular(
                AtomFamily::explicit(vec![Atom { theta: 1.0, gamma: 0.25 }, Atom { theta: -2.0, gamma: 3.0 }])
                    .unwrap(),
            ));
        assert_eq!(parse_spec(&to_spec_text(&spec)).unwrap(), spec);
    }

    proptest! {
        #[test]
        fn explicit_zeros_round_trip(
            zs in proptest::collection::vec((0.0f64..0.999, 0.0f64..std::f64::consts::TAU), 1..12),
            rotation in -4.0f64..4.0,
        ) {
            let zeros: Vec<C64> = zs.iter().map(|&(r, t)| C64::from_polar(r, t)).collect();
            let spec = Spec::blaschke(ZeroFamily::explicit(zeros).unwrap().with_rotation(rotation));
            prop_assert_eq!(parse_spec(&to_spec_text(&spec)).unwrap(), spec);
        }

        #[test]
        fn generated_families_round_trip(alpha in 1.01f64..5.0, count in 1usize..300) {
            let spec = Spec::blaschke(ZeroFamily::power(alpha, count).unwrap())
                .times(Spec::singular(AtomFamily::dyadic_square(alpha - 1.0, count).unwrap()));
            prop_assert_eq!(parse_spec(&to_spec_text(&spec)).unwrap(), spec);
        }
    }
}
