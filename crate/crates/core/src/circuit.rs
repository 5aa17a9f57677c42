//! Gate-sequence intermediate representation, gate counting, inversion
//! and phase-gate lowering.
//!
//! A circuit is an ordered gate list over a `d`-level digit register;
//! index 0 is applied first to the state. Netlists serialize one gate per
//! line under a `QDNET` header and round-trip bit-exactly.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetlistError {
    #[error("line {line}: missing or malformed header (expected `QDNET d=<int> q=<int>`)")]
    BadHeader { line: usize },
    #[error("line {line}: unknown opcode `{opcode}`")]
    UnknownOpcode { line: usize, opcode: String },
    #[error("line {line}: expected {expected} operands, got {got}")]
    BadOperandCount { line: usize, expected: usize, got: usize },
    #[error("line {line}: operand `{text}` is not a valid integer")]
    BadOperand { line: usize, text: String },
    #[error("line {line}: digit index {index} out of range for register size {register}")]
    IndexOutOfRange { line: usize, index: usize, register: usize },
    #[error("line {line}: power {power} out of range, must lie in [1, {d})")]
    PowerOutOfRange { line: usize, power: i64, d: u32 },
    #[error("line {line}: control equals target")]
    ControlEqualsTarget { line: usize },
}

/// An elementary gate on a digit register.
///
/// `Fourier` is the local discrete Fourier transform (the Hadamard gate at
/// d = 2), `CShift` adds `power` times the control digit onto the target
/// digit mod d (CNOT at d = 2, power 1), and `CPhase` is the diagonal
/// controlled-phase gate, symmetric in its two digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Fourier(usize),
    FourierInv(usize),
    CShift { control: usize, target: usize, power: u32 },
    CPhase { a: usize, b: usize, power: u32 },
}

impl Gate {
    /// Controlled-phase constructor; stores the two digits with the
    /// smaller index first since the gate is symmetric.
    pub fn cphase(i: usize, j: usize, power: u32) -> Gate {
        Gate::CPhase { a: i.min(j), b: i.max(j), power }
    }

    /// Digit indices the gate acts on.
    pub fn support(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::Fourier(i) | Gate::FourierInv(i) => (i, None),
            Gate::CShift { control, target, .. } => (control, Some(target)),
            Gate::CPhase { a, b, .. } => (a, Some(b)),
        }
    }

    fn touches(&self, wire: usize) -> bool {
        let (a, b) = self.support();
        a == wire || b == Some(wire)
    }
}

/// Gate tallies per variant.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub fourier: usize,
    pub fourier_inv: usize,
    pub cshift: usize,
    pub cphase: usize,
    pub total: usize,
}

/// An ordered gate sequence over `register_size` digits of `d` levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    d: u32,
    register_size: usize,
    gates: Vec<Gate>,
    /// Free-form comment lines emitted after the netlist header.
    pub comments: Vec<String>,
}

impl Circuit {
    /// Creates an empty circuit. Panics if `d < 2`.
    pub fn new(d: u32, register_size: usize) -> Circuit {
        assert!(d >= 2, "level count must be at least 2");
        Circuit {
            d,
            register_size,
            gates: Vec::new(),
            comments: Vec::new(),
        }
    }

    pub fn level_count(&self) -> u32 {
        self.d
    }

    pub fn register_size(&self) -> usize {
        self.register_size
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate, enforcing the circuit invariants. Panics on an
    /// out-of-range index, equal control/target or power outside `[1, d)`;
    /// these are construction bugs, not runtime inputs (the netlist parser
    /// reports them as errors instead).
    pub fn push(&mut self, gate: Gate) {
        let (a, b) = gate.support();
        assert!(a < self.register_size, "digit index {a} out of range");
        if let Some(b) = b {
            assert!(b < self.register_size, "digit index {b} out of range");
            assert!(a != b, "two-digit gate with equal indices");
        }
        match gate {
            Gate::CShift { power, .. } | Gate::CPhase { power, .. } => {
                assert!(
                    power >= 1 && power < self.d,
                    "gate power {power} outside [1, {})",
                    self.d
                );
            }
            _ => {}
        }
        self.gates.push(gate);
    }

    /// Appends a shift or phase gate only when its power is nonzero mod d.
    /// Accepts arbitrary integer powers and reduces them.
    pub fn push_reduced(&mut self, gate: Gate) {
        match gate {
            Gate::CShift { control, target, power } => {
                let p = power % self.d;
                if p != 0 {
                    self.push(Gate::CShift { control, target, power: p });
                }
            }
            Gate::CPhase { a, b, power } => {
                let p = power % self.d;
                if p != 0 {
                    self.push(Gate::cphase(a, b, p));
                }
            }
            other => self.push(other),
        }
    }

    /// Exact per-variant gate tallies.
    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for gate in &self.gates {
            match gate {
                Gate::Fourier(_) => counts.fourier += 1,
                Gate::FourierInv(_) => counts.fourier_inv += 1,
                Gate::CShift { .. } => counts.cshift += 1,
                Gate::CPhase { .. } => counts.cphase += 1,
            }
        }
        counts.total = self.gates.len();
        counts
    }

    /// The inverse circuit: reversed gate order, Fourier swapped with its
    /// adjoint and every power negated mod d. Running the result after the
    /// original yields the identity.
    pub fn inverted(&self) -> Circuit {
        let mut out = Circuit::new(self.d, self.register_size);
        out.comments = self.comments.clone();
        for gate in self.gates.iter().rev() {
            let inv = match *gate {
                Gate::Fourier(i) => Gate::FourierInv(i),
                Gate::FourierInv(i) => Gate::Fourier(i),
                Gate::CShift { control, target, power } => Gate::CShift {
                    control,
                    target,
                    power: self.d - power,
                },
                Gate::CPhase { a, b, power } => Gate::CPhase {
                    a,
                    b,
                    power: self.d - power,
                },
            };
            out.push(inv);
        }
        out
    }

    /// Rewrites every controlled-phase gate as
    /// `FourierInv(target), CShift(control, target, power), Fourier(target)`
    /// and cancels the Fourier pairs the rewrite creates.
    ///
    /// Two gates cancel when they are mutually inverse Fourier gates on the
    /// same wire with no intervening gate touching that wire, so a pair may
    /// cancel across gates on disjoint wires. Circuits without phase gates
    /// are returned unchanged.
    pub fn lower_phases(&self) -> Circuit {
        let mut gates: Vec<Gate> = Vec::with_capacity(self.gates.len());
        // Positions of the FourierInv / Fourier gates each rewrite inserts.
        let mut openings: Vec<usize> = Vec::new();
        let mut closings: Vec<usize> = Vec::new();
        for gate in &self.gates {
            match *gate {
                Gate::CPhase { a, b, power } => {
                    openings.push(gates.len());
                    gates.push(Gate::FourierInv(b));
                    gates.push(Gate::CShift { control: a, target: b, power });
                    closings.push(gates.len());
                    gates.push(Gate::Fourier(b));
                }
                other => gates.push(other),
            }
        }

        let mut removed = vec![false; gates.len()];
        let prev_on_wire = |gates: &[Gate], removed: &[bool], from: usize, wire: usize| {
            (0..from)
                .rev()
                .find(|&p| !removed[p] && gates[p].touches(wire))
        };
        let next_on_wire = |gates: &[Gate], removed: &[bool], from: usize, wire: usize| {
            (from + 1..gates.len()).find(|&p| !removed[p] && gates[p].touches(wire))
        };

        for &pos in &openings {
            let Gate::FourierInv(wire) = gates[pos] else { unreachable!() };
            if let Some(p) = prev_on_wire(&gates, &removed, pos, wire) {
                if gates[p] == Gate::Fourier(wire) {
                    removed[p] = true;
                    removed[pos] = true;
                }
            }
        }
        for &pos in &closings {
            if removed[pos] {
                continue;
            }
            let Gate::Fourier(wire) = gates[pos] else { unreachable!() };
            if let Some(p) = next_on_wire(&gates, &removed, pos, wire) {
                if gates[p] == Gate::FourierInv(wire) {
                    removed[p] = true;
                    removed[pos] = true;
                }
            }
        }

        let mut out = Circuit::new(self.d, self.register_size);
        out.comments = self.comments.clone();
        for (pos, gate) in gates.into_iter().enumerate() {
            if !removed[pos] {
                out.push(gate);
            }
        }
        out
    }

    /// Serializes to the netlist text format: `QDNET d=<d> q=<q>` header,
    /// comment lines, one gate per line, LF endings, single trailing
    /// newline and no trailing whitespace.
    pub fn to_netlist(&self) -> String {
        let mut out = format!("QDNET d={} q={}\n", self.d, self.register_size);
        for comment in &self.comments {
            out.push_str("# ");
            out.push_str(comment);
            out.push('\n');
        }
        for gate in &self.gates {
            match *gate {
                Gate::Fourier(i) => {
                    out.push_str(&format!("F {i}\n"));
                }
                Gate::FourierInv(i) => {
                    out.push_str(&format!("FINV {i}\n"));
                }
                Gate::CShift { control, target, power } => {
                    out.push_str(&format!("CSHIFT {control} {target} {power}\n"));
                }
                Gate::CPhase { a, b, power } => {
                    out.push_str(&format!("CPHASE {a} {b} {power}\n"));
                }
            }
        }
        out
    }

    /// Parses the netlist text format.
    pub fn parse_netlist(text: &str) -> Result<Circuit, NetlistError> {
        let mut lines = text.lines().enumerate();
        let (header_no, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or(NetlistError::BadHeader { line: 1 })?;
        let line_no = header_no + 1;
        let mut parts = header.split_ascii_whitespace();
        let bad_header = NetlistError::BadHeader { line: line_no };
        if parts.next() != Some("QDNET") {
            return Err(bad_header);
        }
        let d: u32 = parts
            .next()
            .and_then(|p| p.strip_prefix("d="))
            .and_then(|p| p.parse().ok())
            .ok_or(NetlistError::BadHeader { line: line_no })?;
        let q: usize = parts
            .next()
            .and_then(|p| p.strip_prefix("q="))
            .and_then(|p| p.parse().ok())
            .ok_or(NetlistError::BadHeader { line: line_no })?;
        if parts.next().is_some() || d < 2 {
            return Err(NetlistError::BadHeader { line: line_no });
        }

        let mut circuit = Circuit::new(d, q);
        for (idx, raw) in lines {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                circuit.comments.push(comment.trim_start().to_string());
                continue;
            }
            let fields: Vec<&str> = trimmed.split_ascii_whitespace().collect();
            let opcode = fields[0];
            let operands = &fields[1..];
            let expect = |n: usize| -> Result<(), NetlistError> {
                if operands.len() == n {
                    Ok(())
                } else {
                    Err(NetlistError::BadOperandCount {
                        line,
                        expected: n,
                        got: operands.len(),
                    })
                }
            };
            let parse_int = |text: &str| -> Result<i64, NetlistError> {
                text.parse().map_err(|_| NetlistError::BadOperand {
                    line,
                    text: text.to_string(),
                })
            };
            let parse_index = |text: &str| -> Result<usize, NetlistError> {
                let value = parse_int(text)?;
                if value < 0 || value as usize >= q {
                    Err(NetlistError::IndexOutOfRange {
                        line,
                        index: value.max(0) as usize,
                        register: q,
                    })
                } else {
                    Ok(value as usize)
                }
            };
            let parse_power = |text: &str| -> Result<u32, NetlistError> {
                let value = parse_int(text)?;
                if value < 1 || value >= d as i64 {
                    Err(NetlistError::PowerOutOfRange { line, power: value, d })
                } else {
                    Ok(value as u32)
                }
            };
            let gate = match opcode {
                "F" => {
                    expect(1)?;
                    Gate::Fourier(parse_index(operands[0])?)
                }
                "FINV" => {
                    expect(1)?;
                    Gate::FourierInv(parse_index(operands[0])?)
                }
                "CSHIFT" | "CPHASE" => {
                    expect(3)?;
                    let i = parse_index(operands[0])?;
                    let j = parse_index(operands[1])?;
                    let power = parse_power(operands[2])?;
                    if i == j {
                        return Err(NetlistError::ControlEqualsTarget { line });
                    }
                    if opcode == "CSHIFT" {
                        Gate::CShift { control: i, target: j, power }
                    } else {
                        Gate::cphase(i, j, power)
                    }
                }
                other => {
                    return Err(NetlistError::UnknownOpcode {
                        line,
                        opcode: other.to_string(),
                    })
                }
            };
            circuit.push(gate);
        }
        Ok(circuit)
    }
}
