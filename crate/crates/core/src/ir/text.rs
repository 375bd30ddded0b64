//! Line-oriented circuit text format.
//!
//! ```text
//! qubits 3          # header, n >= 1
//! H 2
//! RY(1.5707963267948966) 0
//! CCZ 0 1 2
//! ```
//!
//! Gate names are case-insensitive, `#` comments run to end of line and
//! blank lines are ignored. LF and CRLF line endings are both accepted.

use super::{Circuit, CircuitError, GateApp, GateKind, GateTag};

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines.next().ok_or(CircuitError::MissingHeader)?;
    let num_qubits = parse_header(header).map_err(|e| e.at(line_no))?;
    let mut circuit = Circuit::new(num_qubits).map_err(|e| e.at(line_no))?;

    for (line_no, line) in lines {
        let gate = parse_gate_line(line).map_err(|e| e.at(line_no))?;
        circuit.push(gate).map_err(|e| e.at(line_no))?;
    }
    Ok(circuit)
}

/// Canonical text form: uppercase names, one gate per line, angles with 17
/// significant digits, no trailing newline.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = format!("qubits {}", c.num_qubits());
    for g in c.gates() {
        out.push('\n');
        out.push_str(g.tag().name());
        if let Some(a) = g.kind().angle() {
            out.push('(');
            out.push_str(&format_angle(a));
            out.push(')');
        }
        for q in g.operands() {
            out.push(' ');
            out.push_str(&q.to_string());
        }
    }
    out
}

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros removed,
/// exponent notation outside `1e-5 <= |x| < 1e17`.
pub fn format_angle(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_fraction(format!("{:.*}", decimals, x))
    } else {
        let mantissa = trim_fraction(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_header(line: &str) -> Result<usize, CircuitError> {
    let mut tokens = line.split_whitespace();
    match (tokens.next(), tokens.next(), tokens.next()) {
        (Some(kw), Some(n), None) if kw.eq_ignore_ascii_case("qubits") => n
            .parse::<usize>()
            .map_err(|_| CircuitError::BadQubitCount(n.to_string())),
        _ => Err(CircuitError::MissingHeader),
    }
}

fn parse_gate_line(line: &str) -> Result<GateApp, CircuitError> {
    let (name, angle, rest) = match line.find('(') {
        Some(open) => {
            let close = line[open..]
                .find(')')
                .map(|i| open + i)
                .ok_or_else(|| CircuitError::Malformed(line.to_string()))?;
            let raw = line[open + 1..close].trim();
            let angle = raw
                .parse::<f64>()
                .map_err(|_| CircuitError::BadAngle(raw.to_string()))?;
            (line[..open].trim(), Some(angle), &line[close + 1..])
        }
        None => {
            let name = line.split_whitespace().next().unwrap_or("");
            (name, None, &line[name.len()..])
        }
    };
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(CircuitError::Malformed(line.to_string()));
    }
    let tag =
        GateTag::from_name(name).ok_or_else(|| CircuitError::UnknownGate(name.to_string()))?;
    let kind = GateKind::from_parts(tag, angle)?;
    let operands = rest
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CircuitError::BadOperand(t.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    GateApp::new(kind, operands)
}
