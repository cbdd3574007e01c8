//! Canonical text and JSON renderings. Both read back through the parser.

use serde::{Deserialize, Serialize};

use setshare::{Classification, SharingGroup, SharingSet, SsElement, SsPair, Subst, Term, Var, VarSet};

use crate::parse::{parse_term, ParseError, Symbols};

pub fn term(t: &Term, symbols: &Symbols) -> String {
    match t {
        Term::Var(v) => symbols.name(*v),
        Term::App(f, args) if args.is_empty() => f.to_string(),
        Term::App(f, args) => {
            let args: Vec<String> = args.iter().map(|a| term(a, symbols)).collect();
            format!("{f}({})", args.join(","))
        }
    }
}

/// `{X -> f(Y), Z -> a}`, bindings in variable order.
pub fn subst(sigma: &Subst, symbols: &Symbols) -> String {
    let parts: Vec<String> = sigma.iter().map(|(x, t)| format!("{} -> {}", symbols.name(x), term(t, symbols))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn group_names(g: &SharingGroup, symbols: &Symbols) -> Vec<String> {
    g.vars().iter().map(|&v| symbols.name(v)).collect()
}

/// `{{X1,X2},{X3}}`; groups and their members in variable order.
pub fn sharing(sh: &SharingSet, symbols: &Symbols) -> String {
    let groups: Vec<String> = sh.iter().map(|g| format!("{{{}}}", group_names(g, symbols).join(","))).collect();
    format!("{{{}}}", groups.join(","))
}

pub fn element(e: &SsElement, symbols: &Symbols) -> String {
    match e {
        SsElement::Bottom => "bottom".into(),
        SsElement::Top => "top".into(),
        SsElement::Pair(p) => sharing(p.sharing(), symbols),
    }
}

pub fn classification(c: &Classification) -> String {
    format!(
        "rsubst: {}\nidempotent: {}\nvariable-idempotent: {}\nordered: {}",
        c.rsubst, c.idempotent, c.var_idempotent, c.ordered
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub status: String,
    pub universe: Vec<String>,
    pub sharing: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub rsubst: bool,
    pub idempotent: bool,
    pub variable_idempotent: bool,
    pub ordered: bool,
}

impl From<Classification> for ClassificationJson {
    fn from(c: Classification) -> Self {
        ClassificationJson {
            rsubst: c.rsubst,
            idempotent: c.idempotent,
            variable_idempotent: c.var_idempotent,
            ordered: c.ordered,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstJson {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// `[variable, term]` pairs in variable order.
    pub substitution: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationJson>,
}

/// The JSON form of an element. `universe` is used for bottom and top, which
/// carry none of their own.
pub fn element_json(e: &SsElement, universe: &VarSet, symbols: &Symbols) -> ElementJson {
    let (status, universe, sharing) = match e {
        SsElement::Bottom => ("bottom", universe, Vec::new()),
        SsElement::Top => ("top", universe, Vec::new()),
        SsElement::Pair(p) => ("ok", p.universe(), p.sharing().iter().map(|g| group_names(g, symbols)).collect()),
    };
    ElementJson {
        status: status.into(),
        universe: universe.iter().map(|&v| symbols.name(v)).collect(),
        sharing,
    }
}

pub fn subst_json(sigma: &Subst, symbols: &Symbols) -> SubstJson {
    SubstJson {
        status: "ok".into(),
        reason: None,
        substitution: sigma.iter().map(|(x, t)| (symbols.name(x), term(t, symbols))).collect(),
        classification: None,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReadBackError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Domain(#[from] setshare::Error),
    #[error("unknown status `{0}`")]
    Status(String),
}

/// Reads an element back from its JSON form. The universe is interned first,
/// so it fixes the variable order.
pub fn element_from_json(text: &str, symbols: &mut Symbols) -> Result<(SsElement, VarSet), ReadBackError> {
    let j: ElementJson = serde_json::from_str(text)?;
    let universe: VarSet = j.universe.iter().map(|n| symbols.intern(n)).collect();
    let e = match j.status.as_str() {
        "bottom" => SsElement::Bottom,
        "top" => SsElement::Top,
        "ok" => {
            let groups = j
                .sharing
                .iter()
                .map(|g| SharingGroup::new(g.iter().map(|n| symbols.intern(n))))
                .collect::<Result<SharingSet, _>>()?;
            SsPair::new(groups, universe.clone())?.into()
        }
        other => return Err(ReadBackError::Status(other.into())),
    };
    Ok((e, universe))
}

/// Reads a substitution back from its JSON form.
pub fn subst_from_json(text: &str, symbols: &mut Symbols) -> Result<Subst, ReadBackError> {
    let j: SubstJson = serde_json::from_str(text)?;
    let pairs = j
        .substitution
        .iter()
        .map(|(x, t)| Ok((symbols.intern(x), parse_term(t, symbols)?)))
        .collect::<Result<Vec<(Var, Term)>, ParseError>>()?;
    Ok(Subst::from_pairs(pairs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse, parse_sharing};

    #[test]
    fn substitution_text_reads_back() {
        let f = parse("p(Z, f(X,Y)) = p(f(Z,Y), Z)\nW -> g(a, W)").unwrap();
        let sigma = Subst::from_pairs(f.items.iter().filter_map(|i| match i {
            crate::parse::Item::Binding(x, t) => Some((*x, t.clone())),
            _ => None,
        }))
        .unwrap();
        let text = subst(&sigma, &f.symbols);
        assert_eq!(text, "{W -> g(a,W)}");
        let back = crate::parse::parse_with_universe(&text, &["Z".into(), "X".into(), "Y".into(), "W".into()]).unwrap();
        assert_eq!(back.as_subst().unwrap(), sigma);
    }

    #[test]
    fn sharing_text_reads_back() {
        let mut s = Symbols::new();
        let sh = parse_sharing("{{X2,X1},{X3}}", &mut s).unwrap();
        let text = sharing(&sh, &s);
        assert_eq!(text, "{{X2,X1},{X3}}");
        assert_eq!(parse_sharing(&text, &mut s).unwrap(), sh);
        assert_eq!(sharing(&SharingSet::new(), &s), "{}");
    }

    #[test]
    fn element_json_reads_back() {
        let mut s = Symbols::new();
        let sh = parse_sharing("{{X1,X2},{X3}}", &mut s).unwrap();
        let u: VarSet = s.vars().into_iter().collect();
        let e: SsElement = SsPair::new(sh, u.clone()).unwrap().into();
        let text = serde_json::to_string(&element_json(&e, &u, &s)).unwrap();
        assert_eq!(text, r#"{"status":"ok","universe":["X1","X2","X3"],"sharing":[["X1","X2"],["X3"]]}"#);
        let mut fresh = Symbols::new();
        let (back, _) = element_from_json(&text, &mut fresh).unwrap();
        assert_eq!(back, e);
        for e in [SsElement::Bottom, SsElement::Top] {
            let text = serde_json::to_string(&element_json(&e, &u, &s)).unwrap();
            assert_eq!(element_from_json(&text, &mut Symbols::new()).unwrap(), (e, u.clone()));
        }
    }
}
