//! The `name:key=val,key=val` generator mini-grammar.
//!
//! Integer-valued keys per family:
//!   path:n=4              cycle:n=5            complete:n=4
//!   star:n=4              wheel:n=6
//!   symstar:n=5,k=2       ccs:n=3,k=2          ccs2:n=5,k1=2,k2=1
//!   palm:n=4,k=2          lollipop:n=4,k=2
//!   two-coupled:n1=4,n2=2,n3=3
//! The Cartesian product composes factors with `x`:
//!   cartesian:complete(2)xcomplete(3)
//! where each factor is `name(args..)` with positional integers.

use gossip_core::topology::Generator;
use gossip_core::{Error, Result};
use std::collections::BTreeMap;

pub fn parse(text: &str) -> Result<Generator> {
    let (name, rest) = match text.split_once(':') {
        Some((n, r)) => (n.trim(), r.trim()),
        None => (text.trim(), ""),
    };
    if name == "cartesian" {
        let factors: Result<Vec<Generator>> = rest
            .split('x')
            .map(|f| parse_factor(f.trim()))
            .collect();
        return Ok(Generator::Cartesian { factors: factors? });
    }

    let mut params: BTreeMap<&str, usize> = BTreeMap::new();
    if !rest.is_empty() {
        for pair in rest.split(',') {
            let (key, value) = pair.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("expected key=value, got {pair:?}"))
            })?;
            let value: usize = value.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("non-integer value in {pair:?}"))
            })?;
            params.insert(key.trim(), value);
        }
    }
    let get = |key: &str| -> Result<usize> {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{name} needs {key}=..")))
    };

    match name {
        "path" => Ok(Generator::Path { n: get("n")? }),
        "cycle" => Ok(Generator::Cycle { n: get("n")? }),
        "complete" => Ok(Generator::Complete { n: get("n")? }),
        "star" => Ok(Generator::Star { n: get("n")? }),
        "wheel" => Ok(Generator::Wheel { n: get("n")? }),
        "symstar" => Ok(Generator::Symstar {
            n: get("n")?,
            k: get("k")?,
        }),
        "ccs" => Ok(Generator::Ccs {
            n: get("n")?,
            k: get("k")?,
        }),
        "ccs2" => Ok(Generator::Ccs2 {
            n: get("n")?,
            k1: get("k1")?,
            k2: params.get("k2").copied().unwrap_or(0),
        }),
        "palm" => Ok(Generator::Palm {
            n: get("n")?,
            k: get("k")?,
        }),
        "lollipop" => Ok(Generator::Lollipop {
            n: get("n")?,
            k: get("k")?,
        }),
        "two-coupled" => Ok(Generator::TwoCoupled {
            n1: get("n1")?,
            n2: get("n2")?,
            n3: get("n3")?,
        }),
        other => Err(Error::UnsupportedDescriptor(other.to_string())),
    }
}

/// `name(a)` or `name(a,b)` with positional integers, for product factors.
fn parse_factor(text: &str) -> Result<Generator> {
    let open = text
        .find('(')
        .ok_or_else(|| Error::InvalidParameter(format!("factor {text:?} needs (..)")))?;
    if !text.ends_with(')') {
        return Err(Error::InvalidParameter(format!("unclosed factor {text:?}")));
    }
    let name = &text[..open];
    let args: Result<Vec<usize>> = text[open + 1..text.len() - 1]
        .split(',')
        .map(|a| {
            a.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad factor arg in {text:?}")))
        })
        .collect();
    let args = args?;
    let arg = |i: usize| -> Result<usize> {
        args.get(i)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("factor {text:?} missing arg {i}")))
    };
    match name {
        "complete" => Ok(Generator::Complete { n: arg(0)? }),
        "cycle" => Ok(Generator::Cycle { n: arg(0)? }),
        "path" => Ok(Generator::Path { n: arg(0)? }),
        "star" => Ok(Generator::Star { n: arg(0)? }),
        other => Err(Error::UnsupportedDescriptor(format!(
            "factor family {other}"
        ))),
    }
}
