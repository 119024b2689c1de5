//! JSON protocol files and input-distribution files.
//!
//! Protocol file:
//!
//! ```json
//! { "players": 2, "alphabets": [2, 2],
//!   "tree": { "speaker": 1, "p_one": { "0": 1.0, "1": 0.0 },
//!             "zero": { "output": 0 }, "one": { "output": 1 } } }
//! ```
//!
//! `speaker` is 1-based. `p_one` keys are the speaker's view `z^{-j}`: the
//! other players' symbol indices joined by commas, in player order. Every
//! view must be present. An input-distribution file maps input tuples such
//! as `"0,1,1"` to probabilities; inputs left out have mass 0.

use serde_json::{json, Map, Value};

use super::space::InputSpace;
use super::tree::{Node, ProtocolTree};
use crate::error::{Error, Result};
use crate::prob::FiniteDistribution;

fn field_error(path: &str, reason: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {reason}"))
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
    })
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| field_error(path, "expected an object"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| field_error(path, "expected a nonnegative integer"))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(field_error(path, format!("unknown field {k:?}"))),
        None => Ok(()),
    }
}

fn required<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| field_error(path, format!("missing field {key:?}")))
}

fn parse_node(v: &Value, space: &InputSpace, path: &str) -> Result<Node> {
    let obj = as_object(v, path)?;
    if obj.contains_key("output") {
        reject_unknown(obj, &["output"], path)?;
        return match obj["output"].as_u64() {
            Some(0) => Ok(Node::leaf(false)),
            Some(1) => Ok(Node::leaf(true)),
            _ => Err(field_error(&format!("{path}.output"), "expected 0 or 1")),
        };
    }
    reject_unknown(obj, &["speaker", "p_one", "zero", "one"], path)?;
    let speaker_path = format!("{path}.speaker");
    let speaker = as_usize(required(obj, "speaker", path)?, &speaker_path)?;
    if speaker == 0 || speaker > space.players() {
        return Err(field_error(
            &speaker_path,
            format!("speaker {speaker} outside 1..={}", space.players()),
        ));
    }
    let j = speaker - 1;
    let rule_path = format!("{path}.p_one");
    let rule = as_object(required(obj, "p_one", path)?, &rule_path)?;
    let mut p_one = vec![None; space.visible_len(j)];
    for (key, value) in rule {
        let view = space
            .parse_visible(j, key)
            .ok_or_else(|| field_error(&rule_path, format!("{key:?} is not a view of player {speaker}")))?;
        if p_one[view].is_some() {
            return Err(field_error(&rule_path, format!("view {key:?} listed twice")));
        }
        let p = value
            .as_f64()
            .ok_or_else(|| field_error(&format!("{rule_path}.{key}"), "expected a number"))?;
        p_one[view] = Some(p);
    }
    let p_one = p_one
        .into_iter()
        .enumerate()
        .map(|(v, p)| {
            p.ok_or_else(|| {
                field_error(
                    &rule_path,
                    format!("missing view \"{}\"", space.visible_label(j, v)),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let zero = parse_node(required(obj, "zero", path)?, space, &format!("{path}.zero"))?;
    let one = parse_node(required(obj, "one", path)?, space, &format!("{path}.one"))?;
    Ok(Node::speak(j, p_one, zero, one))
}

/// Parses and validates a protocol file.
pub fn parse_protocol(text: &str) -> Result<ProtocolTree> {
    let root = parse_json(text)?;
    let obj = as_object(&root, "$")?;
    reject_unknown(obj, &["players", "alphabets", "tree"], "$")?;
    let players = as_usize(required(obj, "players", "$")?, "$.players")?;
    let alphabets = required(obj, "alphabets", "$")?
        .as_array()
        .ok_or_else(|| field_error("$.alphabets", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, v)| as_usize(v, &format!("$.alphabets[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if alphabets.len() != players {
        return Err(field_error(
            "$.alphabets",
            format!("{} alphabets for {players} players", alphabets.len()),
        ));
    }
    let space = InputSpace::new(alphabets)?;
    let node = parse_node(required(obj, "tree", "$")?, &space, "$.tree")?;
    ProtocolTree::new(space, &node)
}

fn node_json(node: &Node, space: &InputSpace) -> Value {
    match node {
        Node::Leaf { output } => json!({ "output": u8::from(*output) }),
        Node::Internal {
            speaker,
            p_one,
            zero,
            one,
        } => {
            let rule: Map<String, Value> = p_one
                .iter()
                .enumerate()
                .map(|(v, &p)| (space.visible_label(*speaker, v), json!(p)))
                .collect();
            json!({
                "speaker": speaker + 1,
                "p_one": rule,
                "zero": node_json(zero, space),
                "one": node_json(one, space),
            })
        }
    }
}

/// Serializes a protocol in the file format; probabilities round-trip exactly.
pub fn protocol_to_json(tree: &ProtocolTree) -> String {
    let space = tree.space();
    let doc = json!({
        "players": space.players(),
        "alphabets": space.alphabets(),
        "tree": node_json(&tree.to_node(), space),
    });
    serde_json::to_string_pretty(&doc).expect("JSON values always serialize")
}

/// Parses an input-distribution file over `space`.
pub fn parse_input_distribution(text: &str, space: &InputSpace) -> Result<FiniteDistribution> {
    let root = parse_json(text)?;
    let obj = as_object(&root, "$")?;
    let mut mass = vec![None; space.len()];
    for (key, value) in obj {
        let z = space
            .parse_tuple(key)
            .map_err(|e| field_error("$", format!("key {key:?}: {e}")))?;
        let i = space.index_of(&z)?;
        if mass[i].is_some() {
            return Err(field_error("$", format!("input {key:?} listed twice")));
        }
        mass[i] = Some(
            value
                .as_f64()
                .ok_or_else(|| field_error(&format!("$.{key}"), "expected a number"))?,
        );
    }
    let mass = mass.into_iter().map(|m| m.unwrap_or(0.0)).collect();
    FiniteDistribution::new(space.outcome_set(), mass)
}

/// Serializes a distribution over `space`, listing only positive masses.
pub fn input_distribution_to_json(zeta: &FiniteDistribution, space: &InputSpace) -> String {
    let map: Map<String, Value> = (0..space.len())
        .filter(|&i| zeta.mass(i) > 0.0)
        .map(|i| (space.label(i).to_string(), json!(zeta.mass(i))))
        .collect();
    serde_json::to_string_pretty(&Value::Object(map)).expect("JSON values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const ANNOUNCE: &str = r#"{
        "players": 2, "alphabets": [2, 2],
        "tree": { "speaker": 1, "p_one": { "0": 0.0, "1": 1.0 },
                  "zero": { "output": 0 }, "one": { "output": 1 } }
    }"#;

    #[test]
    fn parses_a_small_protocol() {
        let tree = parse_protocol(ANNOUNCE).unwrap();
        assert_eq!(tree.players(), 2);
        assert_eq!(tree.leaf_count(), 2);
        let again = parse_protocol(&protocol_to_json(&tree)).unwrap();
        assert_eq!(again.to_node(), tree.to_node());
    }

    #[test]
    fn missing_view_is_an_error() {
        let text = ANNOUNCE.replace(r#""1": 1.0"#, r#""9": 1.0"#);
        let err = parse_protocol(&text).unwrap_err().to_string();
        assert!(err.contains("$.tree.p_one"), "{err}");
        let text = ANNOUNCE.replace(r#", "1": 1.0"#, "");
        let err = parse_protocol(&text).unwrap_err().to_string();
        assert!(err.contains("missing view \"1\""), "{err}");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_protocol("{\n \"players\": 2,\n oops }").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn structural_errors_name_the_field() {
        let cases = [
            (ANNOUNCE.replace(r#""speaker": 1"#, r#""speaker": 3"#), "$.tree.speaker"),
            (ANNOUNCE.replace(r#""output": 1"#, r#""output": 2"#), "$.tree.one.output"),
            (ANNOUNCE.replace(r#""alphabets": [2, 2]"#, r#""alphabets": [2]"#), "$.alphabets"),
            (ANNOUNCE.replace(r#""zero": "#, r#""nil": "#), "$.tree"),
        ];
        for (text, needle) in cases {
            let err = parse_protocol(&text).unwrap_err().to_string();
            assert!(err.contains(needle), "{needle} not in {err}");
        }
    }

    #[test]
    fn range_violation_surfaces_from_validation() {
        let text = ANNOUNCE.replace(r#""1": 1.0"#, r#""1": 1.3"#);
        assert!(matches!(parse_protocol(&text), Err(Error::InvalidProtocol { .. })));
    }

    #[test]
    fn input_distribution_files() {
        let space = InputSpace::cube(2).unwrap();
        let zeta = parse_input_distribution(r#"{ "0,0": 0.5, "0,1": 0.5 }"#, &space).unwrap();
        assert_eq!(zeta.masses(), &[0.5, 0.5, 0.0, 0.0]);
        let again = parse_input_distribution(&input_distribution_to_json(&zeta, &space), &space).unwrap();
        assert_eq!(again, zeta);
        assert!(parse_input_distribution(r#"{ "0,0,1": 1.0 }"#, &space).is_err());
        assert!(parse_input_distribution(r#"{ "0,0": 0.4 }"#, &space).is_err());
        assert!(parse_input_distribution(r#"{ "0,0": 0.5, "0, 0": 0.5 }"#, &space).is_err());
    }
}
