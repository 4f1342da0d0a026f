//! Fan files and report documents.
//!
//! A fan file is a JSON object `{"rank": n, "rays": [[int, ...], ...],
//! "max_cones": [[ray_index, ...], ...]}` with 0-based ray indices. An empty
//! `max_cones` list is the torus.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use toric_bm::homology::{describe_group, DegreeHomology, HomologyReport};
use toric_bm::FanInput;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed fan file: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("ray coordinate {0} does not fit in 64 bits")]
    TooLarge(BigInt),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

/// Parses the fan file format. Geometric checks happen later, in
/// [`toric_bm::Fan::new`].
pub fn parse_fan_text(text: &str) -> Result<FanInput, FormatError> {
    let file: FanFile = serde_json::from_str(text)?;
    Ok(FanInput::new(
        file.rank,
        file.rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        file.max_cones,
    ))
}

/// Fan file text, one line per field, trailing newline.
pub fn fan_to_text(input: &FanInput) -> Result<String, FormatError> {
    let mut rays = Vec::with_capacity(input.rays.len());
    for r in &input.rays {
        let coords = r
            .iter()
            .map(|x| x.to_i64().map(|v| v.to_string()).ok_or_else(|| FormatError::TooLarge(x.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        rays.push(format!("[{}]", coords.join(", ")));
    }
    let cones: Vec<String> = input
        .max_cones
        .iter()
        .map(|c| format!("[{}]", c.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    Ok(format!(
        "{{\n  \"rank\": {},\n  \"rays\": [{}],\n  \"max_cones\": [{}]\n}}\n",
        input.rank,
        rays.join(", "),
        cones.join(", ")
    ))
}

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn degree_value(d: &DegreeHomology) -> Value {
    let pieces: Vec<Value> = d
        .pieces
        .iter()
        .map(|p| {
            json!({
                "weight": p.weight,
                "rank": p.group.free_rank,
                "torsion": p.group.torsion.iter().map(int_value).collect::<Vec<_>>(),
                "torsion_certified": p.torsion_certified,
                "conjugation_sign": p.conjugation_sign,
            })
        })
        .collect();
    json!({ "j": d.j, "pieces": pieces })
}

/// The report as a JSON object. `outside_range` only appears when non-empty.
pub fn report_value(report: &HomologyReport) -> Value {
    let mut doc = Map::new();
    doc.insert("n".into(), json!(report.n));
    doc.insert("coefficients".into(), json!(report.coefficients.to_string()));
    doc.insert("degrees".into(), Value::Array(report.degrees.iter().map(degree_value).collect()));
    doc.insert(
        "certification".into(),
        Value::Array(
            report
                .certification
                .iter()
                .map(|c| {
                    json!({
                        "q": c.q,
                        "field_degeneration": c.field_degeneration,
                        "integral_torsion": c.integral_torsion,
                    })
                })
                .collect(),
        ),
    );
    if !report.outside_range.is_empty() {
        doc.insert(
            "outside_range".into(),
            Value::Array(report.outside_range.iter().map(degree_value).collect()),
        );
    }
    Value::Object(doc)
}

pub fn report_json(report: &HomologyReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_value(report)).expect("values serialize");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Table with one row per non-zero weight piece.
pub fn report_table(report: &HomologyReport) -> String {
    let mut rows = vec![["j".to_string(), "weight".into(), "group".into(), "conj".into(), "flags".into()]];
    for d in report.degrees.iter().chain(&report.outside_range) {
        for p in &d.pieces {
            let flags = if p.torsion_certified.is_empty() {
                String::new()
            } else if p.torsion_certified.iter().all(|&c| c) {
                "torsion certified".into()
            } else {
                "torsion conjectural".into()
            };
            let flags = if (0..=2 * report.n as i64).contains(&d.j) {
                flags
            } else {
                format!("outside [0, 2n] {flags}").trim_end().to_string()
            };
            rows.push([
                d.j.to_string(),
                p.weight.to_string(),
                describe_group(&p.group, report.coefficients),
                if p.conjugation_sign > 0 { "+" } else { "-" }.into(),
                flags,
            ]);
        }
    }
    let mut out = format!("n = {}, coefficients {}\n", report.n, report.coefficients);
    if rows.len() == 1 {
        out.push_str("all homology vanishes\n");
    } else {
        let widths: Vec<usize> = (0..5).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        for r in &rows {
            let line = format!(
                "{:>w0$}  {:>w1$}  {:<w2$}  {:<w3$}  {}",
                r[0],
                r[1],
                r[2],
                r[3],
                r[4],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2],
                w3 = widths[3]
            );
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    out.push_str("certification\n");
    for c in &report.certification {
        out.push_str(&format!(
            "  q = {}: field_degeneration {}, integral_torsion {}\n",
            c.q,
            yes_no(c.field_degeneration),
            yes_no(c.integral_torsion)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use toric_bm::fan::Preset;
    use toric_bm::{bm_homology_report, Coefficients, Fan};

    #[test]
    fn fan_text_round_trip() {
        for p in ["projective_space 2", "torus 3", "weighted_projective 1 1 2", "hirzebruch -1"] {
            let input = p.parse::<Preset>().unwrap().input().unwrap();
            let text = fan_to_text(&input).unwrap();
            assert_eq!(parse_fan_text(&text).unwrap(), input, "{p}");
        }
    }

    #[test]
    fn fan_text_shape() {
        let input = Preset::WeightedProjective(vec![1, 1, 2]).input().unwrap();
        assert_eq!(
            fan_to_text(&input).unwrap(),
            "{\n  \"rank\": 2,\n  \"rays\": [[1, 0], [0, 1], [-1, -2]],\n  \"max_cones\": [[0, 1], [0, 2], [1, 2]]\n}\n"
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_fan_text("{\"rank\": 2}").is_err());
        assert!(parse_fan_text("{\"rank\": 1, \"rays\": [], \"max_cones\": [], \"extra\": 1}").is_err());
        assert!(parse_fan_text("not json").is_err());
    }

    #[test]
    fn report_document() {
        let fan = Fan::new(&Preset::QuadricConeAffine.input().unwrap()).unwrap();
        let r = bm_homology_report(&fan, Coefficients::Integers).unwrap();
        let v = report_value(&r);
        assert_eq!(v["n"], 2);
        assert_eq!(v["coefficients"], "Z");
        assert_eq!(v["degrees"][2]["pieces"][0]["torsion"], json!([2]));
        assert_eq!(v["degrees"][2]["pieces"][0]["torsion_certified"], json!([false]));
        assert_eq!(v["certification"][0], json!({"q": 2, "field_degeneration": true, "integral_torsion": false}));
        assert!(v.get("outside_range").is_none());
        let table = report_table(&r);
        assert!(table.contains("Z/2"));
        assert!(table.contains("torsion conjectural"));
    }
}
