use std::io::{BufRead, Write};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Permutation;
use crate::qaoa::Bitstring;
use crate::relations::FactorResult;

/// One measured bitstring and what it contributed.
///
/// `sr_pair` is set only when the pair is new, so repeated measurements of a
/// known pair leave it empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub step: usize,
    pub permutation: Permutation,
    pub circuit: usize,
    pub bitstring: Bitstring,
    pub sr_pair: Option<(BigInt, BigInt)>,
    pub n_pairs: usize,
    pub factored: bool,
}

/// Input of a replay: the measurement half of a [`StepRecord`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub permutation: Permutation,
    pub circuit: usize,
    pub bitstring: Bitstring,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunRecord {
    pub steps: Vec<StepRecord>,
    pub result: Option<FactorResult>,
}

impl RunRecord {
    /// Step index at which the factoring flag first turned on.
    pub fn first_factored_step(&self) -> Option<usize> {
        self.steps.iter().find(|s| s.factored).map(|s| s.step)
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(BigInt, BigInt)> {
        self.steps.iter().filter_map(|s| s.sr_pair.as_ref())
    }

    pub fn circuits(&self) -> usize {
        self.steps.last().map_or(0, |s| s.circuit)
    }

    pub fn trace(&self) -> Vec<TraceStep> {
        self.steps
            .iter()
            .map(|s| TraceStep {
                permutation: s.permutation.clone(),
                circuit: s.circuit,
                bitstring: s.bitstring.clone(),
            })
            .collect()
    }

    /// Writes one JSON object per step.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for s in &self.steps {
            let wire = Wire {
                step: Some(s.step),
                permutation: s.permutation.clone(),
                circuit: s.circuit,
                bitstring: s.bitstring.clone(),
                sr_pair: s.sr_pair.as_ref().map(|(u, v)| [number(u), number(v)]),
                n_pairs: Some(s.n_pairs),
                factored: Some(s.factored),
            };
            serde_json::to_writer(&mut w, &wire)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    step: Option<usize>,
    permutation: Permutation,
    circuit: usize,
    bitstring: Bitstring,
    #[serde(default)]
    sr_pair: Option<[serde_json::Number; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_pairs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factored: Option<bool>,
}

fn number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("decimal integers are valid JSON numbers")
}

fn parse_line(raw: &str) -> serde_json::Result<Wire> {
    serde_json::from_str(raw)
}

/// Reads a line-delimited trace; only the measurement fields are required.
pub fn read_trace<R: BufRead>(r: R) -> Result<Vec<TraceStep>> {
    let mut steps = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let wire = parse_line(&line).map_err(|e| Error::MalformedTrace {
            line: i + 1,
            message: e.to_string(),
        })?;
        steps.push(TraceStep {
            permutation: wire.permutation,
            circuit: wire.circuit,
            bitstring: wire.bitstring,
        });
    }
    Ok(steps)
}

/// Reads a full run record, as written by [`RunRecord::write_jsonl`].
pub fn read_record<R: BufRead>(r: R) -> Result<RunRecord> {
    let mut record = RunRecord::default();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |message: String| Error::MalformedTrace { line: i + 1, message };
        let wire = parse_line(&line).map_err(|e| malformed(e.to_string()))?;
        let sr_pair = wire
            .sr_pair
            .map(|[u, v]| -> Result<(BigInt, BigInt)> {
                let parse = |x: &serde_json::Number| {
                    x.to_string()
                        .parse::<BigInt>()
                        .map_err(|_| malformed(format!("non-integer sr-pair entry {x}")))
                };
                Ok((parse(&u)?, parse(&v)?))
            })
            .transpose()?;
        let (Some(step), Some(n_pairs), Some(factored)) = (wire.step, wire.n_pairs, wire.factored) else {
            return Err(malformed("missing step, n_pairs or factored".into()));
        };
        record.steps.push(StepRecord {
            step,
            permutation: wire.permutation,
            circuit: wire.circuit,
            bitstring: wire.bitstring,
            sr_pair,
            n_pairs,
            factored,
        });
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_record() -> RunRecord {
        RunRecord {
            steps: vec![
                StepRecord {
                    step: 1,
                    permutation: Permutation::new(vec![2, 1, 3]).unwrap(),
                    circuit: 1,
                    bitstring: "010".parse().unwrap(),
                    sr_pair: None,
                    n_pairs: 0,
                    factored: false,
                },
                StepRecord {
                    step: 2,
                    permutation: Permutation::new(vec![2, 1, 3]).unwrap(),
                    circuit: 1,
                    bitstring: "000".parse().unwrap(),
                    sr_pair: Some(("123456789012345678901234567890".parse().unwrap(), 7.into())),
                    n_pairs: 1,
                    factored: false,
                },
            ],
            result: None,
        }
    }

    #[test]
    fn jsonl_round_trip() {
        let rec = sample_record();
        let mut buf = Vec::new();
        rec.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("\"sr_pair\":[123456789012345678901234567890,7]"));
        assert!(text.starts_with(
            "{\"step\":1,\"permutation\":[2,1,3],\"circuit\":1,\"bitstring\":\"010\",\"sr_pair\":null,"
        ));
        assert_eq!(read_record(buf.as_slice()).unwrap(), rec);
        assert_eq!(read_trace(buf.as_slice()).unwrap(), rec.trace());
    }

    #[test]
    fn minimal_trace_lines() {
        let text = "{\"permutation\":[1,2],\"circuit\":3,\"bitstring\":\"10\"}\n\n";
        let t = read_trace(text.as_bytes()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].circuit, 3);
        assert!(read_record(text.as_bytes()).is_err());
    }

    #[test]
    fn malformed_lines_report_position() {
        let text = "{\"permutation\":[1,2],\"circuit\":1,\"bitstring\":\"10\"}\n{\"permutation\":[1,1],\"circuit\":1,\"bitstring\":\"10\"}\n";
        match read_trace(text.as_bytes()) {
            Err(Error::MalformedTrace { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let bad_bits = "{\"permutation\":[1,2],\"circuit\":1,\"bitstring\":\"1x\"}\n";
        assert!(read_trace(bad_bits.as_bytes()).is_err());
    }
}
