//! JSON encoding of forms. Rationals are written as lowest-terms `"p/q"`
//! strings; on input a bare integer (string or number) is also accepted.

use serde::{Deserialize, Serialize};

use super::{FourierIndex, NearHolForm};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, gq, parse_rational, Gq};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RatJson {
    Str(String),
    Int(i64),
}

impl RatJson {
    fn parse(&self) -> Result<num_rational::BigRational> {
        match self {
            RatJson::Str(s) => parse_rational(s),
            RatJson::Int(n) => Ok(crate::scalar::rat(*n, 1)),
        }
    }

    fn emit(r: &num_rational::BigRational) -> Self {
        RatJson::Str(format_rational(r))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    re: RatJson,
    im: RatJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    abc: [u32; 3],
    w: Vec<ComplexJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeJson {
    #[serde(rename = "Q")]
    q: [RatJson; 3],
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormJson {
    ell: i64,
    m: i64,
    level: u64,
    modes: Vec<ModeJson>,
}

fn to_json(f: &NearHolForm) -> FormJson {
    FormJson {
        ell: f.ell,
        m: f.m,
        level: f.level,
        modes: f
            .modes()
            .iter()
            .map(|(q, terms)| ModeJson {
                q: [RatJson::emit(&q.a), RatJson::emit(&q.b), RatJson::emit(&q.c)],
                terms: terms
                    .iter()
                    .map(|(abc, w)| TermJson {
                        abc: *abc,
                        w: w.iter().map(|x| ComplexJson { re: RatJson::emit(&x.re), im: RatJson::emit(&x.im) }).collect(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn from_json(j: FormJson) -> Result<NearHolForm> {
    if j.level == 0 {
        return Err(Error::Parse("level must be positive".into()));
    }
    if j.m < 0 && !j.modes.is_empty() {
        return Err(Error::Parse(format!("m = {} is negative but the form has modes", j.m)));
    }
    let mut f = NearHolForm::zero(j.ell, j.m, j.level);
    let mut seen = std::collections::BTreeSet::new();
    for mode in j.modes {
        let q = FourierIndex::new(mode.q[0].parse()?, mode.q[1].parse()?, mode.q[2].parse()?);
        if !seen.insert(q.clone()) {
            return Err(Error::Parse(format!("Fourier index {q} listed twice")));
        }
        let mut abcs = std::collections::BTreeSet::new();
        for t in mode.terms {
            if !abcs.insert(t.abc) {
                return Err(Error::Parse(format!("monomial {:?} listed twice in mode {q}", t.abc)));
            }
            let w: Vec<Gq> = t
                .w
                .iter()
                .map(|c| Ok(gq(c.re.parse()?, c.im.parse()?)))
                .collect::<Result<_>>()?;
            f.add_term(q.clone(), t.abc, w).map_err(|e| Error::Parse(e.to_string()))?;
        }
    }
    Ok(f)
}

pub fn form_to_json(f: &NearHolForm) -> serde_json::Value {
    serde_json::to_value(to_json(f)).expect("form JSON is always serializable")
}

pub fn form_to_string(f: &NearHolForm) -> String {
    serde_json::to_string_pretty(&to_json(f)).expect("form JSON is always serializable")
}

pub fn form_from_str(s: &str) -> Result<NearHolForm> {
    let j: FormJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    from_json(j)
}

pub fn form_from_value(v: serde_json::Value) -> Result<NearHolForm> {
    let j: FormJson = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    from_json(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{"ell":4,"m":1,"level":2,"modes":[{"Q":["1/2","-1","3"],"terms":[{"abc":[0,1,0],"w":[{"re":"2/4","im":"0"},{"re":3,"im":"-1/3"}]}]}]}"#;

    #[test]
    fn parse_normalizes_and_round_trips() {
        let f = form_from_str(SAMPLE).unwrap();
        let s = form_to_string(&f);
        assert!(s.contains("\"1/2\"") && s.contains("\"3/1\"") && s.contains("\"0/1\""));
        assert_eq!(form_from_str(&s).unwrap(), f);
        assert_eq!(form_to_string(&form_from_str(&s).unwrap()), s);
    }

    #[test]
    fn rejects_malformed() {
        assert!(form_from_str("{").is_err());
        assert!(form_from_str(&SAMPLE.replace("\"level\":2", "\"level\":1")).is_err());
        assert!(form_from_str(&SAMPLE.replace("\"2/4\"", "\"2/0\"")).is_err());
        assert!(form_from_str(&SAMPLE.replace("\"m\":1", "\"m\":2")).is_err());
    }
}
