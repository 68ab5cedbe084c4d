//! Channel specification text.
//!
//! A spec is a whitespace-separated list of `key=value` pairs with a
//! mandatory `kind`. A value is either a nested spec in parentheses or an
//! arithmetic expression without spaces, where `$name` refers to a sweep
//! parameter and `pi` is available:
//!
//! ```text
//! kind=gad gamma=0.3 N=0.5
//! kind=dephrasure p=$p q=$p^2
//! kind=compose first=(kind=amplitude_damping gamma=$p) second=(kind=depolarizing p=$p)
//! kind=tensor left=(kind=identity d=2) right=(kind=erasure p=0.25)
//! kind=swap_dephase p=$p phi=pi
//! ```

use crate::channels::{BipartiteChannel, Channel};
use crate::error::{Error, Result};
use crate::linalg::Hermitian;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Expr(String),
    Spec(Box<ChannelSpec>),
}

/// Parsed, not yet evaluated, channel description.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSpec {
    pub kind: String,
    pub params: BTreeMap<String, Value>,
}

/// A built channel: ordinary, or bipartite for the bidirectional bounds.
#[derive(Clone, Debug)]
pub enum Target {
    Single(Channel),
    Bipartite(BipartiteChannel),
}

impl Target {
    pub fn channel(&self) -> &Channel {
        match self {
            Target::Single(c) => c,
            Target::Bipartite(b) => b.channel(),
        }
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Splits `text` into top-level tokens, keeping parenthesized groups whole.
fn tokens(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| parse_err("unbalanced ')'"))?;
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(parse_err("unbalanced '('"));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

impl ChannelSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kind = None;
        let mut params = BTreeMap::new();
        for tok in tokens(text.trim())? {
            let (key, value) = tok.split_once('=').ok_or_else(|| parse_err(format!("expected key=value, got '{tok}'")))?;
            if key.is_empty() || value.is_empty() {
                return Err(parse_err(format!("empty key or value in '{tok}'")));
            }
            if key == "kind" {
                if kind.replace(value.to_string()).is_some() {
                    return Err(parse_err("kind given twice"));
                }
                continue;
            }
            let value = match value.strip_prefix('(').and_then(|v| v.strip_suffix(')')) {
                Some(inner) if inner.contains('=') => Value::Spec(Box::new(ChannelSpec::parse(inner)?)),
                _ => Value::Expr(value.to_string()),
            };
            if params.insert(key.to_string(), value).is_some() {
                return Err(parse_err(format!("'{key}' given twice")));
            }
        }
        let kind = kind.ok_or_else(|| parse_err(format!("missing kind in '{text}'")))?;
        Ok(ChannelSpec { kind, params })
    }

    /// Names of the `$` parameters referenced anywhere in the spec.
    pub fn parameters(&self) -> Vec<String> {
        let mut out = Vec::new();
        for v in self.params.values() {
            match v {
                Value::Expr(e) => {
                    for piece in e.split('$').skip(1) {
                        let name: String = piece.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
                        if !out.contains(&name) {
                            out.push(name);
                        }
                    }
                }
                Value::Spec(s) => {
                    for name in s.parameters() {
                        if !out.contains(&name) {
                            out.push(name);
                        }
                    }
                }
            }
        }
        out
    }

    /// Builds the channel with the given parameter values.
    pub fn build(&self, vars: &BTreeMap<String, f64>) -> Result<Target> {
        Builder { spec: self, vars, used: Default::default() }.build()
    }
}

struct Builder<'a> {
    spec: &'a ChannelSpec,
    vars: &'a BTreeMap<String, f64>,
    used: std::cell::RefCell<Vec<&'static str>>,
}

impl Builder<'_> {
    fn number(&self, key: &'static str, default: Option<f64>) -> Result<f64> {
        self.used.borrow_mut().push(key);
        match (self.spec.params.get(key), default) {
            (Some(Value::Expr(e)), _) => eval(e, self.vars),
            (Some(Value::Spec(_)), _) => Err(parse_err(format!("'{key}' must be a number"))),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(parse_err(format!("kind={} needs '{key}'", self.spec.kind))),
        }
    }

    fn dimension(&self, key: &'static str, default: usize) -> Result<usize> {
        let v = self.number(key, Some(default as f64))?;
        if v < 1.0 || v.fract() != 0.0 || v > 64.0 {
            return Err(Error::InvalidParameter(format!("'{key}' must be a dimension, got {v}")));
        }
        Ok(v as usize)
    }

    fn nested(&self, key: &'static str) -> Result<Channel> {
        self.used.borrow_mut().push(key);
        match self.spec.params.get(key) {
            Some(Value::Spec(s)) => Ok(s.build(self.vars)?.channel().clone()),
            _ => Err(parse_err(format!("kind={} needs '{key}=(...)'", self.spec.kind))),
        }
    }

    fn build(&self) -> Result<Target> {
        let single = |c: Channel| Target::Single(c);
        let target = match self.spec.kind.as_str() {
            "identity" => single(Channel::identity(self.dimension("d", 2)?)),
            "depolarizing" => single(Channel::depolarizing(self.dimension("d", 2)?, self.number("p", None)?)?),
            "erasure" => single(Channel::erasure(self.dimension("d", 2)?, self.number("p", None)?)?),
            "dephasing" => single(Channel::dephasing(self.number("p", None)?)?),
            "dephrasure" => single(Channel::dephrasure(self.number("p", None)?, self.number("q", None)?)?),
            "gad" => single(Channel::generalized_amplitude_damping(self.number("gamma", None)?, self.number("N", None)?)?),
            "amplitude_damping" => single(Channel::amplitude_damping(self.number("gamma", None)?)?),
            "qutrit_t_depolarizing" => single(Channel::qutrit_t_depolarizing(self.number("p", None)?)?),
            "replacer" => {
                let d_out = self.dimension("d_out", 2)?;
                let mixed = Hermitian::identity(d_out).scale(1.0 / d_out as f64);
                single(Channel::replacer(self.dimension("d_in", 2)?, &mixed)?)
            }
            "swap_dephase" => {
                Target::Bipartite(BipartiteChannel::swap_dephase(self.number("p", None)?, self.number("phi", None)?)?)
            }
            "compose" => single(self.nested("second")?.after(&self.nested("first")?)?),
            "tensor" => single(self.nested("left")?.tensor(&self.nested("right")?)?),
            other => return Err(parse_err(format!("unknown channel kind '{other}'"))),
        };
        let used = self.used.borrow();
        if let Some(extra) = self.spec.params.keys().find(|k| !used.contains(&k.as_str())) {
            return Err(parse_err(format!("kind={} does not take '{extra}'", self.spec.kind)));
        }
        Ok(target)
    }
}

/// Evaluates an arithmetic expression with `$name` variables.
fn eval(expr: &str, vars: &BTreeMap<String, f64>) -> Result<f64> {
    let text = expr.replace('$', "");
    let mut missing = None;
    let mut lookup = |name: &str, args: Vec<f64>| -> Option<f64> {
        if !args.is_empty() {
            return None;
        }
        if name == "pi" {
            return Some(std::f64::consts::PI);
        }
        let v = vars.get(name).copied();
        if v.is_none() {
            missing = Some(name.to_string());
        }
        v
    };
    let value = fasteval::ez_eval(&text, &mut lookup);
    match (value, missing) {
        (Ok(v), _) if v.is_finite() => Ok(v),
        (Ok(v), _) => Err(parse_err(format!("'{expr}' evaluates to {v}"))),
        (Err(_), Some(name)) => Err(parse_err(format!("'{expr}': no value for parameter '{name}'"))),
        (Err(e), None) => Err(parse_err(format!("'{expr}': {e:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(p: f64) -> BTreeMap<String, f64> {
        BTreeMap::from([("p".to_string(), p)])
    }

    #[test]
    fn parses_flat_and_nested() {
        let s = ChannelSpec::parse("kind=compose first=(kind=amplitude_damping gamma=$p) second=(kind=depolarizing p=$p)").unwrap();
        assert_eq!(s.kind, "compose");
        assert_eq!(s.parameters(), vec!["p".to_string()]);
        let built = s.build(&vars(0.2)).unwrap();
        let direct = Channel::depolarizing(2, 0.2).unwrap().after(&Channel::amplitude_damping(0.2).unwrap()).unwrap();
        assert!(crate::linalg::max_abs(&(built.channel().choi().matrix() - direct.choi().matrix())) < 1e-15);
    }

    #[test]
    fn expressions_use_float_arithmetic() {
        let s = ChannelSpec::parse("kind=dephrasure p=$p q=$p^2").unwrap();
        assert!(s.build(&vars(0.5)).is_ok());
        assert_eq!(eval("1/3", &BTreeMap::new()).unwrap(), 1.0 / 3.0);
        assert_eq!(eval("pi", &BTreeMap::new()).unwrap(), std::f64::consts::PI);
        assert_eq!(eval("(1-$p)/2", &vars(0.5)).unwrap(), 0.25);
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in ["gamma=0.3", "kind=gad gamma=0.3", "kind=gad gamma=0.3 N=0 x=1", "kind=nope", "kind=gad gamma=(0.3 N=0"] {
            let r = ChannelSpec::parse(bad).and_then(|s| s.build(&BTreeMap::new()));
            assert!(matches!(r, Err(Error::Parse(_))), "{bad}");
        }
        assert!(ChannelSpec::parse("kind=gad gamma=$q N=0").unwrap().build(&vars(0.1)).is_err());
    }
}
