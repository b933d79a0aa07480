//! Circuit JSON document. Angles are decimal strings with 17 significant
//! digits so that every `f64` survives a round trip bit-for-bit.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Circuit, ControlSpec, GivensRotation, Operation, PhaseRotation};
use crate::error::{PrepError, Result};
use crate::register::QuditRegister;

#[derive(Serialize, Deserialize)]
struct ControlDoc {
    qudit: usize,
    levels: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum OpDoc {
    #[serde(rename = "R")]
    Givens {
        target: usize,
        levels: [usize; 2],
        theta: String,
        phi: String,
        controls: Vec<ControlDoc>,
    },
    #[serde(rename = "RZ")]
    Phase {
        target: usize,
        levels: [usize; 2],
        angle: String,
        controls: Vec<ControlDoc>,
    },
}

#[derive(Serialize)]
struct CircuitDoc {
    dims: Vec<usize>,
    ops: Vec<OpDoc>,
}

#[derive(Deserialize)]
struct RawCircuitDoc {
    dims: Vec<usize>,
    ops: Vec<Value>,
}

pub(crate) fn format_angle(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_angle(field: &str, text: &str) -> Result<f64> {
    let x: f64 = text
        .trim()
        .parse()
        .map_err(|_| PrepError::Parse(format!("{field} `{text}` is not a number")))?;
    if !x.is_finite() {
        return Err(PrepError::Parse(format!("{field} `{text}` is not finite")));
    }
    Ok(x)
}

fn controls_doc(controls: &[ControlSpec]) -> Vec<ControlDoc> {
    controls.iter().map(|c| ControlDoc { qudit: c.qudit, levels: c.levels.clone() }).collect()
}

fn controls_from(doc: Vec<ControlDoc>) -> Vec<ControlSpec> {
    doc.into_iter().map(|c| ControlSpec { qudit: c.qudit, levels: c.levels }).collect()
}

impl From<&Operation> for OpDoc {
    fn from(op: &Operation) -> Self {
        match op {
            Operation::Givens(g) => OpDoc::Givens {
                target: g.target,
                levels: [g.levels.0, g.levels.1],
                theta: format_angle(g.theta),
                phi: format_angle(g.phi),
                controls: controls_doc(&g.controls),
            },
            Operation::Phase(p) => OpDoc::Phase {
                target: p.target,
                levels: [p.levels.0, p.levels.1],
                angle: format_angle(p.angle),
                controls: controls_doc(&p.controls),
            },
        }
    }
}

impl OpDoc {
    fn into_op(self) -> Result<Operation> {
        Ok(match self {
            OpDoc::Givens { target, levels, theta, phi, controls } => Operation::Givens(GivensRotation {
                target,
                levels: (levels[0], levels[1]),
                theta: parse_angle("theta", &theta)?,
                phi: parse_angle("phi", &phi)?,
                controls: controls_from(controls),
            }),
            OpDoc::Phase { target, levels, angle, controls } => Operation::Phase(PhaseRotation {
                target,
                levels: (levels[0], levels[1]),
                angle: parse_angle("angle", &angle)?,
                controls: controls_from(controls),
            }),
        })
    }
}

impl Circuit {
    pub fn to_json(&self) -> String {
        let doc = CircuitDoc {
            dims: self.register.dims().to_vec(),
            ops: self.ops.iter().map(OpDoc::from).collect(),
        };
        serde_json::to_string(&doc).expect("circuit document always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawCircuitDoc =
            serde_json::from_str(text).map_err(|e| PrepError::Parse(format!("circuit file: {e}")))?;
        let register = QuditRegister::new(raw.dims)?;
        let mut ops = Vec::with_capacity(raw.ops.len());
        for (k, value) in raw.ops.into_iter().enumerate() {
            let op = serde_json::from_value::<OpDoc>(value)
                .map_err(|e| PrepError::Parse(format!("op {k}: {e}")))
                .and_then(|doc| doc.into_op().map_err(|e| PrepError::Parse(format!("op {k}: {e}"))))?;
            op.validate(&register).map_err(|e| PrepError::Parse(format!("op {k}: {e}")))?;
            ops.push(op);
        }
        Ok(Circuit { register, ops })
    }
}

pub fn serialize(circuit: &Circuit) -> String {
    circuit.to_json()
}

pub fn deserialize(text: &str) -> Result<Circuit> {
    Circuit::from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::tests::arb_circuit;
    use proptest::prelude::*;

    #[test]
    fn empty_circuit_document() {
        let c = Circuit::new(QuditRegister::new(vec![3, 2]).unwrap());
        assert_eq!(c.to_json(), r#"{"dims":[3,2],"ops":[]}"#);
    }

    #[test]
    fn single_op_full_precision() {
        let reg = QuditRegister::new(vec![3, 2]).unwrap();
        let op = Operation::Givens(GivensRotation {
            target: 1,
            levels: (0, 1),
            theta: std::f64::consts::PI / 3.0,
            phi: -0.1,
            controls: vec![ControlSpec::new(0, 2)],
        });
        let c = Circuit::from_ops(reg, vec![op]).unwrap();
        let text = c.to_json();
        assert_eq!(
            text,
            r#"{"dims":[3,2],"ops":[{"kind":"R","target":1,"levels":[0,1],"theta":"1.0471975511965976e0","phi":"-1.0000000000000001e-1","controls":[{"qudit":0,"levels":[2]}]}]}"#
        );
        let back = Circuit::from_json(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn unknown_kind_names_op() {
        let text = r#"{"dims":[2],"ops":[{"kind":"RZ","target":0,"levels":[0,1],"angle":"0","controls":[]},{"kind":"CX","target":0}]}"#;
        let err = Circuit::from_json(text).unwrap_err().to_string();
        assert!(err.contains("op 1"), "{err}");
        assert!(err.contains("CX"), "{err}");
    }

    #[test]
    fn schema_violations() {
        for text in [
            r#"{"dims":[2],"ops":[{"kind":"R","target":0,"levels":[0,1],"theta":"abc","phi":"0","controls":[]}]}"#,
            r#"{"dims":[2],"ops":[{"kind":"R","target":0,"levels":[0,2],"theta":"1","phi":"0","controls":[]}]}"#,
            r#"{"dims":[2,2],"ops":[{"kind":"R","target":0,"levels":[0,1],"theta":"1","phi":"0","controls":[{"qudit":0,"levels":[1]}]}]}"#,
            r#"{"dims":[2],"ops":[{"kind":"R","target":0,"levels":[0,1],"theta":"inf","phi":"0","controls":[]}]}"#,
            r#"{"dims":[2],"ops":[{"kind":"R","target":0,"levels":[0,1],"theta":"1","controls":[]}]}"#,
            r#"{"ops":[]}"#,
        ] {
            let err = Circuit::from_json(text).unwrap_err();
            assert!(matches!(err, PrepError::Parse(_)), "{text}: {err}");
        }
    }

    proptest! {
        #[test]
        fn round_trip(c in arb_circuit()) {
            let text = serialize(&c);
            let back = deserialize(&text).unwrap();
            prop_assert_eq!(&back, &c);
            prop_assert_eq!(serialize(&back), text);
        }
    }
}
