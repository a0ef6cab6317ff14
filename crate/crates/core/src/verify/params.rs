use serde::Deserialize;
use serde_json::Value;

use crate::constructors::BuiltGroup;
use crate::error::{Error, Result};
use crate::group::{Elem, Subgroup};

/// A subgroup named in theorem parameters.
///
/// Accepted forms: a list of generator indices, `{"generators": [...]}`,
/// `{"normal_index": i}` into the sorted normal-subgroup list, or one of the
/// names `whole`, `trivial`, `base`, `complement`, `center`, `derived`,
/// `fitting`, `layer`, `O_p` and `O_p'` (for a prime `p`, e.g. `O_2'`).
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum SubgroupRef {
    Generators(Vec<Elem>),
    Named(String),
    NormalIndex { normal_index: usize },
    GeneratorList { generators: Vec<Elem> },
}

impl SubgroupRef {
    pub fn resolve(&self, built: &BuiltGroup) -> Result<Subgroup> {
        let g = &built.group;
        let check = |xs: &[Elem]| {
            xs.iter()
                .find(|&&x| x as usize >= g.order())
                .map_or(Ok(()), |x| Err(Error::InvalidParams(format!("element {x} out of range"))))
        };
        match self {
            SubgroupRef::Generators(xs) | SubgroupRef::GeneratorList { generators: xs } => {
                check(xs)?;
                Ok(g.subgroup_generated(xs))
            }
            SubgroupRef::NormalIndex { normal_index } => g
                .normal_subgroups()?
                .get(*normal_index)
                .cloned()
                .ok_or_else(|| Error::InvalidParams(format!("no normal subgroup with index {normal_index}"))),
            SubgroupRef::Named(name) => {
                let name = name.trim();
                match name {
                    "whole" => Ok(Subgroup::whole(g)),
                    "trivial" => Ok(Subgroup::trivial(g.order())),
                    "base" => built
                        .base
                        .clone()
                        .ok_or_else(|| Error::InvalidParams("group has no distinguished base".into())),
                    "complement" => built
                        .complement
                        .clone()
                        .ok_or_else(|| Error::InvalidParams("group has no distinguished complement".into())),
                    "center" => Ok(g.center().clone()),
                    "derived" => Ok(g.derived_subgroup(&Subgroup::whole(g))),
                    "fitting" => Ok(g.core_subgroups(2)?.fitting),
                    "layer" => g.layer(),
                    _ => {
                        let rest = name
                            .strip_prefix("O_")
                            .ok_or_else(|| Error::InvalidParams(format!("unknown subgroup name {name:?}")))?;
                        let (digits, prime_complement) = match rest.strip_suffix('\'') {
                            Some(d) => (d, true),
                            None => (rest, false),
                        };
                        let p: u64 = digits
                            .parse()
                            .map_err(|_| Error::InvalidParams(format!("bad prime in {name:?}")))?;
                        if !crate::arith::is_prime(p) {
                            return Err(Error::InvalidParams(format!("{p} is not prime")));
                        }
                        let cores = g.core_subgroups(p)?;
                        Ok(if prime_complement { cores.o_p_prime } else { cores.o_p })
                    }
                }
            }
        }
    }
}

/// Parsed theorem parameters: an optional JSON object.
#[derive(Clone, Debug, Default)]
pub struct Params(serde_json::Map<String, Value>);

impl Params {
    pub fn from_value(v: Option<&Value>) -> Result<Self> {
        match v {
            None | Some(Value::Null) => Ok(Self::default()),
            Some(Value::Object(m)) => Ok(Self(m.clone())),
            Some(other) => Err(Error::InvalidParams(format!("expected a JSON object, got {other}"))),
        }
    }

    pub fn subgroup(&self, key: &str) -> Result<Option<SubgroupRef>> {
        self.0
            .get(key)
            .map(|v| serde_json::from_value(v.clone()).map_err(|e| Error::InvalidParams(format!("{key}: {e}"))))
            .transpose()
    }

    pub fn integer(&self, key: &str) -> Result<Option<u64>> {
        self.0
            .get(key)
            .map(|v| v.as_u64().ok_or_else(|| Error::InvalidParams(format!("{key} must be a non-negative integer"))))
            .transpose()
    }

    pub fn list(&self, key: &str) -> Result<Option<Vec<SubgroupRef>>> {
        self.0
            .get(key)
            .map(|v| serde_json::from_value(v.clone()).map_err(|e| Error::InvalidParams(format!("{key}: {e}"))))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{build, GroupSpec};
    use serde_json::json;

    #[test]
    fn subgroup_forms() {
        let b = build(&GroupSpec::Symmetric { n: 4 }).unwrap();
        let p = Params::from_value(Some(&json!({
            "a": "O_2", "b": "O_2'", "c": {"normal_index": 2}, "d": [1], "e": {"generators": [1]}, "f": "nope"
        })))
        .unwrap();
        let order = |k| p.subgroup(k).unwrap().unwrap().resolve(&b).map(|s| s.order());
        assert_eq!(order("a"), Ok(4));
        assert_eq!(order("b"), Ok(1));
        assert_eq!(order("c"), Ok(12));
        assert_eq!(order("d"), order("e"));
        assert!(matches!(order("f"), Err(Error::InvalidParams(_))));
        assert!(p.subgroup("missing").unwrap().is_none());
        assert!(Params::from_value(Some(&json!([1]))).is_err());
    }
}
