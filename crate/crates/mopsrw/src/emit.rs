//! Byte-deterministic JSON and CSV emission. Objects are BTree-backed (keys
//! always sorted) and rationals print as "p/q", or "p" when the denominator
//! is one, so identical inputs serialize identically.

use serde_json::{Map, Value};

use crate::gaussborel::GaussBorel;
use crate::kmcg::TransitionSeries;
use crate::lu::StochasticLu;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::rational::{fmt_rat, Rat};
use crate::sim::SimReport;
use crate::stochastic::{Kind, SigmaKind, StochasticSystem};

pub const SCHEMA: &str = "mopsrw/1";

pub fn rat_value(x: &Rat) -> Value {
    Value::String(fmt_rat(x))
}

pub fn rats_value(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(rat_value).collect())
}

pub fn rows_value(rows: &[Vec<Rat>]) -> Value {
    Value::Array(rows.iter().map(|r| rats_value(r)).collect())
}

pub fn matrix_value(m: &Matrix) -> Value {
    rows_value(m.rows())
}

/// Coefficient list, constant term first.
pub fn poly_value(p: &Poly) -> Value {
    rats_value(&p.0)
}

pub fn polys_value(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(poly_value).collect())
}

pub fn object<'a>(pairs: impl IntoIterator<Item = (&'a str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// Wraps a payload with the schema marker.
pub fn envelope<'a>(pairs: impl IntoIterator<Item = (&'a str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("schema".to_string(), Value::String(SCHEMA.to_string()));
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// Lifts an object's fields next to the schema marker.
pub fn envelope_from(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut out = Map::new();
            out.insert("schema".to_string(), Value::String(SCHEMA.to_string()));
            out.extend(map);
            Value::Object(out)
        }
        other => envelope([("value", other)]),
    }
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

/// Two-column plot export.
pub fn csv(header: &str, rows: &[(String, String)]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for (a, b) in rows {
        out.push_str(a);
        out.push(',');
        out.push_str(b);
        out.push('\n');
    }
    out
}

pub fn kind_str(kind: Kind) -> &'static str {
    match kind {
        Kind::TypeII => "II",
        Kind::TypeI => "I",
    }
}

pub fn sigma_kind_str(kind: SigmaKind) -> &'static str {
    match kind {
        SigmaKind::Unity => "unity",
        SigmaKind::Geometric => "geometric",
    }
}

/// Gauss-Borel payload: triangular factors, pivots, and the two polynomial
/// families they encode.
pub fn factorization_value(gb: &GaussBorel, rows: usize) -> Value {
    let tri = |row_of: &dyn Fn(usize) -> Vec<Rat>| -> Value {
        Value::Array((0..rows).map(|i| rats_value(&row_of(i))).collect())
    };
    object([
        ("tuple", Value::String(gb.tuple.to_string())),
        ("n", Value::from(rows)),
        ("S", tri(&|i| gb.fac.s_row(i)[..=i].to_vec())),
        ("Stilde", tri(&|i| gb.fac.stilde_row(i)[..=i].to_vec())),
        ("H", rats_value(&gb.fac.h_all()[..rows])),
        (
            "B",
            polys_value(&(0..rows).map(|i| gb.b_poly(i)).collect::<Vec<_>>()),
        ),
        (
            "A1",
            polys_value(&(0..rows).map(|i| gb.a1_poly(i)).collect::<Vec<_>>()),
        ),
        (
            "A2",
            polys_value(&(0..rows).map(|i| gb.a2_poly(i)).collect::<Vec<_>>()),
        ),
    ])
}

pub fn system_value(sys: &StochasticSystem) -> Value {
    object([
        ("tuple", Value::String(sys.tuple.to_string())),
        ("kind", Value::String(kind_str(sys.kind).to_string())),
        (
            "sigmaKind",
            Value::String(sigma_kind_str(sys.sigma_kind).to_string()),
        ),
        ("sigma", rats_value(&sys.sigma)),
        ("P", matrix_value(&sys.p)),
        (
            "rowBalance",
            Value::Array(
                sys.row_balance
                    .iter()
                    .map(|b| Value::String(b.to_string()))
                    .collect(),
            ),
        ),
    ])
}

/// The three bidiagonal factors in multiplication order.
pub fn lu_value(lu: &StochasticLu) -> Value {
    let names: [&str; 3] = match lu.kind {
        Kind::TypeII => ["L1", "L2", "U"],
        Kind::TypeI => ["L", "U2", "U1"],
    };
    object([
        ("kind", Value::String(kind_str(lu.kind).to_string())),
        (
            "factorNames",
            Value::Array(names.iter().map(|n| Value::String(n.to_string())).collect()),
        ),
        (
            "factors",
            Value::Array(lu.factors.iter().map(matrix_value).collect()),
        ),
    ])
}

pub fn series_value(ts: &TransitionSeries) -> Value {
    object([
        ("n", Value::from(ts.n)),
        ("m", Value::from(ts.m)),
        ("transition", rats_value(&ts.p)),
        ("firstReturn", rats_value(&ts.f)),
    ])
}

pub fn report_value(rep: &SimReport) -> Value {
    object([
        ("start", Value::from(rep.start)),
        ("steps", Value::from(rep.steps)),
        ("samples", Value::from(rep.samples)),
        (
            "counts",
            Value::Array(rep.counts.iter().map(|c| Value::from(*c)).collect()),
        ),
        ("destroyed", Value::from(rep.destroyed)),
        ("exact", rats_value(&rep.exact)),
        ("exactDestroyed", rat_value(&rep.exact_destroyed)),
        (
            "z",
            Value::Array(rep.z.iter().map(|z| Value::from(*z)).collect()),
        ),
        ("zDestroyed", Value::from(rep.z_destroyed)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::stochastic::stochastic_normalize;
    use crate::tuple::Tuple;

    #[test]
    fn rationals_and_integers_format_plainly() {
        assert_eq!(rat_value(&rat(3, 4)), Value::String("3/4".into()));
        assert_eq!(rat_value(&rat(-8, 2)), Value::String("-4".into()));
    }

    #[test]
    fn keys_sort_regardless_of_insertion_order() {
        let a = object([("b", Value::from(1)), ("a", Value::from(2))]);
        let b = object([("a", Value::from(2)), ("b", Value::from(1))]);
        assert_eq!(to_text(&a), to_text(&b));
        let e = envelope([("x", Value::from(0))]);
        assert_eq!(e["schema"], Value::String("mopsrw/1".into()));
    }

    #[test]
    fn payload_shapes_carry_the_contract_keys() {
        let t = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        let gb = GaussBorel::new(&t, 4).unwrap();
        let f = factorization_value(&gb, 4);
        for key in ["S", "Stilde", "H", "B", "A1", "A2"] {
            assert!(f.get(key).is_some(), "{key}");
        }
        let sys = stochastic_normalize(&t, 5, Kind::TypeII).unwrap();
        let sv = system_value(&sys);
        for key in ["P", "sigma", "rowBalance"] {
            assert!(sv.get(key).is_some(), "{key}");
        }
        let lu = crate::lu::stochastic_lu(&sys).unwrap();
        assert!(lu_value(&lu).get("factors").is_some());
        let text = to_text(&f);
        assert_eq!(text, to_text(&factorization_value(&gb, 4)));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn csv_is_plain_two_column_text() {
        let rows = vec![
            ("0".to_string(), "1".to_string()),
            ("1".to_string(), "2/3".to_string()),
        ];
        assert_eq!(csv("n,value", &rows), "n,value\n0,1\n1,2/3\n");
    }
}
