//! Sort layouts for the input language, given as a specification of sorts,
//! axioms `(s, s')` and product rules `(s, s', s'')`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("invalid sort layout: {0}")]
pub struct PtsError(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Layout {
    Finite {
        sorts: Vec<String>,
        axioms: Vec<(String, String)>,
        rules: Vec<(String, String, String)>,
    },
    /// Sorts are the naturals, `(n, n+1)` axioms and `(n, m, max n m)` rules.
    Naturals,
}

/// A functional sort specification. Only used to validate tags: erasure
/// forgets sorts, so the layout never influences the elaborated output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pts {
    name: String,
    layout: Layout,
    aliases: Vec<(String, String)>,
}

impl Default for Pts {
    /// The impredicative layout: `Omega : Box`, with `Omega` closed under
    /// products over `Box`.
    fn default() -> Self {
        let s = |x: &str| x.to_owned();
        Pts {
            name: "I".into(),
            layout: Layout::Finite {
                sorts: vec![s("Omega"), s("Box")],
                axioms: vec![(s("Omega"), s("Box"))],
                rules: vec![
                    (s("Omega"), s("Omega"), s("Omega")),
                    (s("Box"), s("Omega"), s("Omega")),
                    (s("Box"), s("Box"), s("Box")),
                ],
            },
            aliases: vec![(s("Ω"), s("Omega")), (s("□"), s("Box"))],
        }
    }
}

impl Pts {
    /// The predicative layout over the naturals.
    pub fn naturals() -> Self {
        Pts {
            name: "P".into(),
            layout: Layout::Naturals,
            aliases: Vec::new(),
        }
    }

    /// `I`, `P`, or an inline `sorts=a,b;axioms=a:b;rules=a:a:a,b:a:a`.
    pub fn profile(desc: &str) -> Result<Self, PtsError> {
        match desc.trim() {
            "I" => Ok(Pts::default()),
            "P" => Ok(Pts::naturals()),
            inline => Pts::inline(inline),
        }
    }

    fn inline(desc: &str) -> Result<Self, PtsError> {
        let (mut sorts, mut axioms, mut rules) = (Vec::new(), Vec::new(), Vec::new());
        for part in desc.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| PtsError(format!("`{part}` is not of the form key=value")))?;
            let items = val.split(',').map(str::trim).filter(|v| !v.is_empty());
            for item in items {
                let fields: Vec<String> = item.split(':').map(|f| f.trim().to_owned()).collect();
                match (key.trim(), fields.as_slice()) {
                    ("sorts", [s]) => sorts.push(s.clone()),
                    ("axioms", [s, t]) => axioms.push((s.clone(), t.clone())),
                    ("rules", [s, t, u]) => rules.push((s.clone(), t.clone(), u.clone())),
                    ("sorts" | "axioms" | "rules", _) => {
                        return Err(PtsError(format!("malformed {key} item `{item}`")));
                    }
                    _ => return Err(PtsError(format!("unknown key `{key}`"))),
                }
            }
        }
        if sorts.is_empty() {
            return Err(PtsError("no sorts declared".into()));
        }
        let known = |s: &String| sorts.contains(s);
        for s in axioms.iter().flat_map(|(a, b)| [a, b]).chain(rules.iter().flat_map(|(a, b, c)| [a, b, c])) {
            if !known(s) {
                return Err(PtsError(format!("sort `{s}` is not declared")));
            }
        }
        for (n, (a, b)) in axioms.iter().enumerate() {
            if axioms[..n].iter().any(|(a2, b2)| a2 == a && b2 != b) {
                return Err(PtsError(format!("axioms are not functional at `{a}`")));
            }
        }
        for (n, (a, b, c)) in rules.iter().enumerate() {
            if rules[..n].iter().any(|(a2, b2, c2)| a2 == a && b2 == b && c2 != c) {
                return Err(PtsError(format!("rules are not functional at `({a}, {b})`")));
            }
        }
        Ok(Pts {
            name: desc.to_owned(),
            layout: Layout::Finite { sorts, axioms, rules },
            aliases: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The canonical spelling of a sort tag, if it names a sort.
    pub fn sort(&self, tag: &str) -> Option<String> {
        let tag = self
            .aliases
            .iter()
            .find(|(a, _)| a == tag)
            .map_or(tag, |(_, s)| s.as_str());
        match &self.layout {
            Layout::Finite { sorts, .. } => sorts.iter().find(|s| *s == tag).cloned(),
            Layout::Naturals => tag.parse::<u64>().ok().map(|n| n.to_string()),
        }
    }

    /// The sort of `s` as a term, if `s` has one.
    pub fn axiom(&self, s: &str) -> Option<String> {
        match &self.layout {
            Layout::Finite { axioms, .. } => axioms.iter().find(|(a, _)| a == s).map(|(_, b)| b.clone()),
            Layout::Naturals => s.parse::<u64>().ok().map(|n| (n + 1).to_string()),
        }
    }

    /// The sort of products from `s1` into `s2`, if they are allowed.
    pub fn rule(&self, s1: &str, s2: &str) -> Option<String> {
        match &self.layout {
            Layout::Finite { rules, .. } => rules
                .iter()
                .find(|(a, b, _)| a == s1 && b == s2)
                .map(|(_, _, c)| c.clone()),
            Layout::Naturals => Some(s1.parse::<u64>().ok()?.max(s2.parse().ok()?).to_string()),
        }
    }
}

impl FromStr for Pts {
    type Err = PtsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pts::profile(s)
    }
}

impl fmt::Display for Pts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
