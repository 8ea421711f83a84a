//! Browser bindings. Each export takes text in the CLI file formats and
//! returns a JSON string; errors come back as plain messages.

use dmkit::{
    classify::component_shapes, cross_check, intersection_graph, normalize, ops, parse_set_system, twist_polynomial_fast,
    DeltaMatroid, Gf2SymMatrix, TwistPolynomial,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Keeps a single call well under a second in the browser.
const WEB_CAP: usize = 16;

type Out = Result<String, String>;

fn json<T: Serialize>(value: &T) -> Out {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn load(text: &str) -> Result<DeltaMatroid, String> {
    let parsed = parse_set_system(text).map_err(|e| e.to_string())?;
    if parsed.system.size() > WEB_CAP {
        return Err(format!("the demo handles at most {WEB_CAP} elements"));
    }
    DeltaMatroid::new(parsed.system).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct PolyReport {
    display: String,
    polynomial: TwistPolynomial,
    normal: bool,
    even: bool,
    twisted_by: String,
    width: usize,
}

/// Twist polynomial of a set system in `elements:`/`feasible:` form.
#[wasm_bindgen]
pub fn twist_polynomial(text: &str) -> Out {
    let d = load(text)?;
    let flags = d.flags();
    let (normal, by) = normalize(&d);
    let p = twist_polynomial_fast(&normal).map_err(|e| e.to_string())?;
    json(&PolyReport {
        display: p.to_string(),
        polynomial: p,
        normal: flags.normal,
        even: flags.even,
        twisted_by: d.ground().format_set(by),
        width: ops::width(&d),
    })
}

#[derive(Serialize)]
struct Component {
    shape: String,
    vertices: Vec<usize>,
}

#[derive(Serialize)]
struct ClassifyReport {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    loops: Vec<usize>,
    components: Vec<Component>,
    predicted: bool,
    actual: bool,
    polynomial: String,
    delta_matroid: String,
}

/// Intersection graph, component shapes and the checked prediction for a
/// matrix in the `.mat` format.
#[wasm_bindgen]
pub fn classify_matrix(text: &str) -> Out {
    let c: Gf2SymMatrix = text.parse().map_err(|e: dmkit::Error| e.to_string())?;
    if c.size() > WEB_CAP {
        return Err(format!("the demo handles at most {WEB_CAP} vertices"));
    }
    let g = intersection_graph(&c);
    let check = cross_check(&c).map_err(|e| e.to_string())?;
    let labels = g.vertices();
    let components = dmkit::connected_components(&g)
        .iter()
        .zip(component_shapes(&g))
        .map(|(comp, shape)| Component {
            shape: shape.to_string(),
            vertices: comp.vertices().iter().filter_map(|v| labels.iter().position(|l| l == v)).collect(),
        })
        .collect();
    let d = dmkit::delta_matroid_of_matrix(&c).map_err(|e| e.to_string())?;
    json(&ClassifyReport {
        vertices: labels.to_vec(),
        edges: g.edges().collect(),
        loops: g.loops().collect(),
        components,
        predicted: check.predicted,
        actual: check.actual,
        polynomial: check.polynomial.to_string(),
        delta_matroid: d.to_string(),
    })
}

/// Applies one of `twist`, `dual`, `delete`, `contract`, `restrict` and
/// returns the result in the set-system format.
#[wasm_bindgen]
pub fn transform(text: &str, op: &str, arg: &str) -> Out {
    let d = load(text)?;
    let g = d.ground();
    let err = |e: dmkit::Error| e.to_string();
    let out = match op {
        "twist" => ops::twist(&d, g.parse_set(arg).map_err(err)?),
        "dual" => Ok(ops::dual(&d)),
        "delete" => ops::delete(&d, g.index_of(arg.trim()).map_err(err)?),
        "contract" => ops::contract(&d, g.index_of(arg.trim()).map_err(err)?),
        "restrict" => ops::restrict(&d, g.parse_set(arg).map_err(err)?),
        other => return Err(format!("unknown operation {other:?}")),
    }
    .map_err(err)?;
    Ok(out.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn polynomial_of_an_edge() {
        let v = parse(&twist_polynomial("elements: 1 2\nfeasible: {}\nfeasible: {1,2}\n").unwrap());
        assert_eq!(v["display"], "2*z^2 + 2");
        assert_eq!(v["polynomial"]["terms"][0]["coef"], 2);
        assert_eq!(v["normal"], true);
        assert_eq!(v["twisted_by"], "{}");
    }

    #[test]
    fn polynomial_normalizes_first() {
        let v = parse(&twist_polynomial("elements: 1 2\nfeasible: {1}\nfeasible: {2}\n").unwrap());
        assert_eq!(v["display"], "2*z^2 + 2");
        assert_eq!(v["twisted_by"], "{1}");
        assert!(twist_polynomial("elements: 1 2 3 4\nfeasible: {}\nfeasible: {1,2}\nfeasible: {3,4}\n").is_err());
        assert!(twist_polynomial("feasible: {}").is_err());
    }

    #[test]
    fn classify_triangle_plus_loop() {
        let v = parse(&classify_matrix("labels: a b c d\n4\n1000\n0011\n0101\n0110\n").unwrap());
        assert_eq!(v["edges"], parse("[[1,2],[1,3],[2,3]]"));
        assert_eq!(v["loops"], parse("[0]"));
        assert_eq!(v["components"][0]["shape"], "loop-vertex");
        assert_eq!(v["components"][1]["vertices"], parse("[1,2,3]"));
        assert_eq!(v["predicted"], true);
        assert_eq!(v["actual"], true);
        assert_eq!(v["polynomial"], "16*z^3");
    }

    #[test]
    fn classify_rejects_asymmetric() {
        assert!(classify_matrix("2\n01\n00\n").is_err());
    }

    #[test]
    fn transforms() {
        let chain = "elements: 1 2\nfeasible: {}\nfeasible: {1}\nfeasible: {1,2}\n";
        assert_eq!(transform(chain, "dual", "").unwrap(), "elements: 1 2\nfeasible: {}\nfeasible: {2}\nfeasible: {1,2}\n");
        assert_eq!(transform(chain, "contract", "1").unwrap(), "elements: 2\nfeasible: {}\nfeasible: {2}\n");
        assert_eq!(transform(chain, "twist", "{1,2}").unwrap(), "elements: 1 2\nfeasible: {}\nfeasible: {2}\nfeasible: {1,2}\n");
        assert!(transform(chain, "delete", "9").is_err());
        assert!(transform(chain, "rotate", "").is_err());
    }
}
