use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// JSON form of a graph: either an explicit vertex/edge list or a generator.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialises")
    }
}

/// A named generator with integer parameters. `product` takes its two
/// factors in `factors` instead of `params`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default)]
    pub params: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<GeneratorSpec>,
}

impl GeneratorSpec {
    pub fn new(name: &str, params: &[i64]) -> Self {
        GeneratorSpec {
            name: name.to_string(),
            params: params.to_vec(),
            factors: Vec::new(),
        }
    }

    pub fn product(a: GeneratorSpec, b: GeneratorSpec) -> Self {
        GeneratorSpec {
            name: "product".into(),
            params: Vec::new(),
            factors: vec![a, b],
        }
    }

    /// Parses `name:p1,p2,...`. Products are written `product:A*B`, where
    /// the factors are themselves specs; more than two factors fold left.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, rest) = match text.split_once(':') {
            Some((n, r)) => (n.trim(), r.trim()),
            None => (text, ""),
        };
        if name.is_empty() {
            return Err(Error::BadParams(format!("empty generator name in {text:?}")));
        }
        if name == "product" {
            let mut factors = rest.split('*').map(GeneratorSpec::parse);
            let first = factors
                .next()
                .ok_or_else(|| Error::BadParams("product needs two factors".into()))??;
            let mut acc: Option<GeneratorSpec> = None;
            for f in factors {
                let f = f?;
                acc = Some(GeneratorSpec::product(acc.unwrap_or_else(|| first.clone()), f));
            }
            return acc.ok_or_else(|| Error::BadParams("product needs two factors".into()));
        }
        let params = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::BadParams(format!("bad parameter {p:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(GeneratorSpec::new(name, &params))
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.name == "product" {
            let parts: Vec<String> = self.factors.iter().map(|s| s.to_string()).collect();
            return write!(f, "product:{}", parts.join("*"));
        }
        write!(f, "{}", self.name)?;
        if !self.params.is_empty() {
            let parts: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, ":{}", parts.join(","))?;
        }
        Ok(())
    }
}
