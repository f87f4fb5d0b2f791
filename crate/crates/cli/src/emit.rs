use sbdo_core::jordan::{JordanAlgebra, Param};
use sbdo_core::poly::{Rational, Var};
use sbdo_core::weyl::WeylOp;
use serde::Serialize;

use crate::report::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Latex,
    Json,
    Text,
}

#[derive(Serialize)]
struct Term {
    derivative: Vec<(String, u8)>,
    coefficient: String,
}

#[derive(Serialize)]
struct Emission<'a> {
    schema: u32,
    algebra: &'a str,
    operator: &'a str,
    specialized: Vec<(String, String)>,
    text: String,
    latex: String,
    symbol: Option<String>,
    terms: Vec<Term>,
}

/// Parameter values given on the command line.
pub fn specialization(pairs: &[(Param, Option<Rational>)]) -> Vec<(Var, Rational)> {
    pairs
        .iter()
        .filter_map(|(p, v)| v.clone().map(|v| (p.var(), v)))
        .collect()
}

pub fn render(
    alg: &JordanAlgebra,
    name: &str,
    op: &WeylOp,
    symbol: Option<String>,
    values: &[(Var, Rational)],
    format: Format,
) -> String {
    match format {
        Format::Latex => op.render(true),
        Format::Text => op.render(false),
        Format::Json => {
            let arena = alg.ring();
            let terms = op
                .terms()
                .map(|(idx, c)| Term {
                    derivative: idx
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(s, &e)| (arena.name(Var::Geo(s)).to_string(), e))
                        .collect(),
                    coefficient: c.to_text(),
                })
                .collect();
            let e = Emission {
                schema: SCHEMA_VERSION,
                algebra: &alg.id,
                operator: name,
                specialized: values
                    .iter()
                    .map(|(v, q)| (arena.name(*v).to_string(), q.to_string()))
                    .collect(),
                text: op.render(false),
                latex: op.render(true),
                symbol,
                terms,
            };
            serde_json::to_string_pretty(&e).expect("emission serializes")
        }
    }
}
