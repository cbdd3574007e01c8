//! Command execution, independent of argument parsing and process exit.

use setshare::{
    alpha, aunify, satisfiable, to_vsubst, unify, EqualityMode, SsElement, SsPair, Subst, UnifyFailure, VarSet,
};

use crate::parse::{parse, parse_with_universe, ParseError, ProblemFile};
use crate::render;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Command {
    Unify,
    Vtransform,
    Abstract,
    Aunify,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Overrides any `@mode` line; rational when neither is given.
    pub mode: Option<EqualityMode>,
    /// Overrides any `@universe` line.
    pub universe: Option<Vec<String>>,
    pub format: Format,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

/// Parses `input` and runs `command` on it.
pub fn run(command: Command, input: &str, opts: &Options) -> Result<Output, ParseError> {
    let file = match &opts.universe {
        Some(u) => parse_with_universe(input, u)?,
        None => parse(input)?,
    };
    Ok(run_file(command, &file, opts))
}

pub fn run_file(command: Command, file: &ProblemFile, opts: &Options) -> Output {
    let mode = opts.mode.or(file.mode).unwrap_or_default();
    let universe: VarSet = match &file.universe {
        Some(u) => u.iter().copied().collect(),
        None => file.symbols.vars().into_iter().collect(),
    };
    match command {
        Command::Unify => subst_output(unify(&file.equations(), mode), file, opts, false),
        Command::Vtransform => {
            let result = body_subst(file, mode).map(|s| to_vsubst(&s).expect("unifier output is in rational solved form"));
            subst_output(result, file, opts, true)
        }
        Command::Abstract => {
            let e = match body_subst(file, mode) {
                Ok(s) => alpha(&s, &universe).expect("in rational solved form").into(),
                Err(_) => SsElement::Bottom,
            };
            element_output(&e, &universe, file, opts)
        }
        Command::Aunify => {
            let e = match body_bindings(file) {
                Some(nu) => aunify(&SsPair::free(universe.clone()).into(), &nu, mode).expect("in rational solved form"),
                None => SsElement::Bottom,
            };
            element_output(&e, &universe, file, opts)
        }
    }
}

/// The substitution a body denotes: the bindings themselves when they form
/// one in rational solved form and are satisfiable in `mode`, otherwise a
/// unifier of the body read as equations.
fn body_subst(file: &ProblemFile, mode: EqualityMode) -> Result<Subst, UnifyFailure> {
    match file.as_subst() {
        Some(s) if satisfiable(&s, mode).expect("in rational solved form") => Ok(s),
        Some(_) => Err(UnifyFailure::OccursCheck),
        None => unify(&file.equations(), mode),
    }
}

/// The bindings fed to abstract unification. Satisfiability is left to
/// `aunify`, so equations are solved over rational trees here. `None` when
/// they clash.
fn body_bindings(file: &ProblemFile) -> Option<Subst> {
    file.as_subst().or_else(|| unify(&file.equations(), EqualityMode::RationalTrees).ok())
}

fn subst_output(result: Result<Subst, UnifyFailure>, file: &ProblemFile, opts: &Options, classify: bool) -> Output {
    let code = if result.is_ok() { EXIT_OK } else { EXIT_FAILURE };
    let text = match (opts.format, &result) {
        (Format::Text, Ok(s)) if classify => {
            format!("{}\n{}", render::subst(s, &file.symbols), render::classification(&s.classify()))
        }
        (Format::Text, Ok(s)) => render::subst(s, &file.symbols),
        (Format::Text, Err(f)) => format!("failure: {f}"),
        (Format::Json, Ok(s)) => {
            let mut j = render::subst_json(s, &file.symbols);
            if classify {
                j.classification = Some(s.classify().into());
            }
            serde_json::to_string(&j).expect("plain data")
        }
        (Format::Json, Err(f)) => serde_json::to_string(&render::SubstJson {
            status: "failure".into(),
            reason: Some(f.to_string()),
            substitution: Vec::new(),
            classification: None,
        })
        .expect("plain data"),
    };
    Output { text, code }
}

fn element_output(e: &SsElement, universe: &VarSet, file: &ProblemFile, opts: &Options) -> Output {
    let code = if *e == SsElement::Bottom { EXIT_FAILURE } else { EXIT_OK };
    let text = match opts.format {
        Format::Text => render::element(e, &file.symbols),
        Format::Json => {
            serde_json::to_string(&render::element_json(e, universe, &file.symbols)).expect("plain data")
        }
    };
    Output { text, code }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(command: Command, input: &str) -> Output {
        run(command, input, &Options::default()).unwrap()
    }

    #[test]
    fn unify_failures() {
        assert_eq!(text(Command::Unify, "f(X) = g(X,X)"), Output { text: "failure: clash".into(), code: 1 });
        let herbrand = Options { mode: Some(EqualityMode::Herbrand), ..Options::default() };
        let out = run(Command::Unify, "X = f(X)", &herbrand).unwrap();
        assert_eq!(out, Output { text: "failure: occurs_check".into(), code: 1 });
        assert_eq!(text(Command::Unify, "@mode herbrand\nX = f(X)").code, 1);
        assert_eq!(text(Command::Unify, "X = f(X)"), Output { text: "{X -> f(X)}".into(), code: 0 });
    }

    #[test]
    fn vtransform_prints_classification() {
        let out = text(Command::Vtransform, "X1 -> f(X2)\nX2 -> g(X3,X4)\nX3 -> X1");
        assert_eq!(out.code, 0);
        let lines: Vec<&str> = out.text.lines().collect();
        assert_eq!(lines[1..], ["rsubst: true", "idempotent: false", "variable-idempotent: true", "ordered: true"]);
    }

    #[test]
    fn abstract_of_a_ground_binding() {
        assert_eq!(text(Command::Abstract, "@universe X,Y\nX -> a").text, "{{Y}}");
        assert_eq!(text(Command::Abstract, "X = a\nX = b"), Output { text: "bottom".into(), code: 1 });
    }

    #[test]
    fn aunify_starts_free() {
        assert_eq!(text(Command::Aunify, "@universe X,Y,Z\nX -> Y").text, "{{X,Y},{Z}}");
        assert_eq!(text(Command::Aunify, "X = f(X)").text, "{{X}}");
    }

    #[test]
    fn universe_flag_overrides_header() {
        let opts = Options { universe: Some(vec!["Y".into(), "X".into()]), ..Options::default() };
        let out = run(Command::Abstract, "@universe X\nX -> f(Y)", &opts).unwrap();
        assert_eq!(out.text, "{{Y,X}}");
    }
}
