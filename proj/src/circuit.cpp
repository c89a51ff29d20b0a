#include "homolattice/circuit.hpp"

#include <sstream>

namespace homolattice {

void CnotCircuit::add(uint32_t control, uint32_t target) {
  if (control == target)
    throw DimensionMismatch("CNOT control and target must differ");
  if (control >= n_ || target >= n_)
    throw DimensionMismatch("CNOT qubit index out of range");
  gates_.push_back({control, target});
}

CnotCircuit CnotCircuit::reversed() const {
  CnotCircuit r(n_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it)
    r.add(it->control, it->target);
  return r;
}

BinaryMatrix circuit_to_matrix(const CnotCircuit& c) {
  BinaryMatrix w = BinaryMatrix::identity(c.n());
  // Left-multiplying by W(c,t) adds row t into row c.
  for (const auto& g : c.gates()) w.xor_row_into(g.target, g.control);
  return w;
}

CnotCircuit synthesize_circuit(const BinaryMatrix& w) {
  if (w.rows() != w.cols())
    throw DimensionMismatch("synthesize_circuit: matrix not square");
  const size_t n = w.rows();
  BinaryMatrix work = w;
  // Row operation "row a ^= row b" is left-multiplication by W(a,b); the
  // reduction W(a_m,b_m)...W(a_1,b_1) W = I gives W as the same transvections
  // read first-op-leftmost, i.e. the circuit emits them in reverse.
  std::vector<CnotGate> ops;
  for (size_t c = 0; c < n; ++c) {
    if (!work.get(c, c)) {
      size_t pivot = c + 1;
      while (pivot < n && !work.get(pivot, c)) ++pivot;
      if (pivot == n) throw SingularMatrix();
      work.xor_row_into(pivot, c);
      ops.push_back({uint32_t(c), uint32_t(pivot)});
    }
    for (size_t r = 0; r < n; ++r) {
      if (r != c && work.get(r, c)) {
        work.xor_row_into(c, r);
        ops.push_back({uint32_t(r), uint32_t(c)});
      }
    }
  }
  CnotCircuit circuit(n);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    circuit.add(it->control, it->target);
  return circuit;
}

PauliOperator conjugate_pauli(const CnotCircuit& c, PauliOperator p,
                              bool inverse) {
  if (p.n() != c.n())
    throw DimensionMismatch("conjugate_pauli: size mismatch");
  if (inverse) {
    const auto& gates = c.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it)
      apply_cnot(p, it->control, it->target);
  } else {
    for (const auto& g : c.gates()) apply_cnot(p, g.control, g.target);
  }
  return p;
}

CnotCircuit product_encoder(const CnotCircuit& enc1, const CnotCircuit& enc2,
                            size_t n1, size_t n2) {
  if (enc1.n() != n1 || enc2.n() != n2)
    throw DimensionMismatch("product_encoder: factor sizes disagree");
  CnotCircuit full(n1 * n2);
  // U2 copies couple qubits with a fixed first index.
  for (size_t a = 0; a < n1; ++a)
    for (const auto& g : enc2.gates())
      full.add(uint32_t(a * n2 + g.control), uint32_t(a * n2 + g.target));
  // U1 copies couple qubits with a fixed second index.
  for (size_t b = 0; b < n2; ++b)
    for (const auto& g : enc1.gates())
      full.add(uint32_t(g.control * n2 + b), uint32_t(g.target * n2 + b));
  return full;
}

void apply_gate(PauliOperator& p, const Gate& g, bool inverse) {
  switch (g.kind) {
    case GateKind::CX:
      apply_cnot(p, g.q0, g.q1);
      break;
    case GateKind::H: {
      const bool xb = p.x().get(g.q0), zb = p.z().get(g.q0);
      p.x().set(g.q0, zb);
      p.z().set(g.q0, xb);
      break;
    }
    case GateKind::S:
      // S: X -> Y, S^-1: Y -> X; phase-free both toggle z on x-support.
      (void)inverse;
      if (p.x().get(g.q0)) p.z().flip(g.q0);
      break;
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::T:
      break;  // Paulis and the T placeholder leave the frame unchanged
  }
}

std::vector<Gate> to_gates(const CnotCircuit& c) {
  std::vector<Gate> out;
  out.reserve(c.size());
  for (const auto& g : c.gates()) out.push_back(Gate::cx(g.control, g.target));
  return out;
}

std::string format_gates(const std::vector<Gate>& gates, size_t n) {
  std::string out = "QUBITS " + std::to_string(n) + "\n";
  for (const auto& g : gates) {
    switch (g.kind) {
      case GateKind::CX:
        out += "CX " + std::to_string(g.q0) + " " + std::to_string(g.q1) + "\n";
        break;
      case GateKind::H: out += "H " + std::to_string(g.q0) + "\n"; break;
      case GateKind::S: out += "S " + std::to_string(g.q0) + "\n"; break;
      case GateKind::X: out += "X " + std::to_string(g.q0) + "\n"; break;
      case GateKind::Y: out += "Y " + std::to_string(g.q0) + "\n"; break;
      case GateKind::Z: out += "Z " + std::to_string(g.q0) + "\n"; break;
      case GateKind::T: out += "T " + std::to_string(g.q0) + "\n"; break;
    }
  }
  return out;
}

std::pair<std::vector<Gate>, size_t> parse_gates(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  size_t lineno = 0;
  size_t n = 0;
  bool have_header = false;
  std::vector<Gate> gates;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op) || op[0] == '#') continue;
    if (!have_header) {
      if (op != "QUBITS") throw ParseError(lineno, "expected QUBITS header");
      if (!(ls >> n)) throw ParseError(lineno, "QUBITS needs a count");
      have_header = true;
      continue;
    }
    uint32_t a = 0, b = 0;
    if (op == "CX") {
      if (!(ls >> a >> b)) throw ParseError(lineno, "CX needs two qubits");
      if (a >= n || b >= n || a == b) throw ParseError(lineno, "bad CX qubits");
      gates.push_back(Gate::cx(a, b));
    } else if (op == "H" || op == "S" || op == "T" || op == "X" || op == "Y" ||
               op == "Z") {
      if (!(ls >> a)) throw ParseError(lineno, op + " needs one qubit");
      if (a >= n) throw ParseError(lineno, "qubit index out of range");
      GateKind kind = op == "H"   ? GateKind::H
                      : op == "S" ? GateKind::S
                      : op == "T" ? GateKind::T
                      : op == "X" ? GateKind::X
                      : op == "Y" ? GateKind::Y
                                  : GateKind::Z;
      gates.push_back({kind, a});
    } else {
      throw ParseError(lineno, "unknown gate \"" + op + "\"");
    }
  }
  if (!have_header) throw ParseError(1, "missing QUBITS header");
  return {gates, n};
}

}  // namespace homolattice
