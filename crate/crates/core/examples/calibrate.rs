//! Desk-scale calibration run. Writes the JSON stored at
//! `tests/fixtures/calibration.json`:
//!
//!     cargo run --release -p ideal-moments --example calibrate > crates/core/tests/fixtures/calibration.json

use ideal_moments::moments::{
    first_main, first_moment, gcd_sum_identity, key_estimate, second_main, second_moment, DomainPolicy, MainTerm,
    MomentKind, MomentReport,
};
use ideal_moments::zeta::field_constants;
use ideal_moments::{IdealTable, NumberField, Param, TableMode};
use serde_json::{json, Value};

const GRID: [f64; 3] = [16.0, 32.0, 64.0];

fn row(r: &MomentReport) -> Value {
    json!({"x": r.x, "y": r.y, "lhs": r.lhs.to_string(), "main": r.main_terms, "residual": r.residual, "normalized": r.normalized})
}

fn main() -> ideal_moments::Result<()> {
    let fields = [
        ("quadratic:-1", NumberField::quadratic(-1)?),
        ("quadratic:5", NumberField::quadratic(5)?),
        ("cubic:-1,-3,0,1", NumberField::cubic(&[-1, -3, 0, 1])?),
    ];
    let (mut first, mut second, mut low) = (json!({}), json!({}), json!({}));
    for (name, k) in &fields {
        let c = field_constants::<f64>(k)?;
        let table = IdealTable::build(k, 64f64.powf(2.5) as u64, TableMode::Full)?;
        let (mut a, mut b, mut l) = (Vec::new(), Vec::new(), Vec::new());
        for &x in &GRID {
            let y = x.powf(2.5);
            let main = vec![MainTerm {
                name: "rho_y".into(),
                value: first_main(&c, y),
            }];
            a.push(row(&MomentReport::new(
                MomentKind::First,
                x,
                y,
                Some(2.5),
                first_moment(&table, x, y)?,
                main,
            )));
            let s = second_moment(&table, x, y, 1)?;
            b.push(row(&MomentReport::new(
                MomentKind::Second,
                x,
                y,
                Some(2.5),
                s,
                second_main(&c, x, y)?,
            )));
            let y = x.powf(1.5);
            let s = second_moment(&table, x, y, 1)?;
            l.push(row(&MomentReport::new(
                MomentKind::Second,
                x,
                y,
                Some(1.5),
                s,
                second_main(&c, x, y)?,
            )));
        }
        first[name] = json!(a);
        second[name] = json!(b);
        low[name] = json!(l);
    }
    let gauss = NumberField::quadratic(-1)?;
    let c = field_constants::<f64>(&gauss)?;
    let table = IdealTable::build(&gauss, 100_000, TableMode::Full)?;
    let (g, main) = gcd_sum_identity(&table, &c, 1000.0)?;
    let gf: f64 = g.to_string().parse().unwrap();
    let gcd = json!({"x": 1000.0, "lhs": g.to_string(), "main": main, "normalized": (gf - main).abs() / main});
    let mut keys = Vec::new();
    for (a1, a2) in [(-0.10, -0.15), (-0.10, -0.05)] {
        for x in [1e3, 1e4, 1e5] {
            let r = key_estimate(&table, x, Param::real(a1), Param::real(a2), DomainPolicy::Report)?;
            keys.push(json!({
                "z1": a1, "z2": a2, "x": x,
                "lhs": [r.lhs.re, r.lhs.im], "r_k": [r.r_k.re, r.r_k.im],
                "terms": r.terms.iter().map(|t| t.re).collect::<Vec<_>>(),
                "normalized": r.normalized, "in_proven_domain": r.in_proven_domain,
            }));
        }
    }
    let key_at_1e5 = keys[2]["normalized"].as_f64().unwrap();
    let out = json!({
        "first_theta_2_5": first,
        "second_theta_2_5": second,
        "second_theta_1_5": low,
        "gcd_identity": gcd,
        "key_estimate": keys,
        "thresholds": {
            "key_estimate_normalized_at_1e5_max": 2.0 * key_at_1e5,
            "gcd_identity_normalized_max": 0.05,
            "lhs_relative_tolerance": 1e-9,
        },
    });
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(())
}
