#pragma once

#include <cstdint>
#include <vector>

#include "homolattice/gf2.hpp"
#include "homolattice/pauli.hpp"

namespace homolattice {

struct CnotGate {
  uint32_t control;
  uint32_t target;
  bool operator==(const CnotGate&) const = default;
};

/// Ordered CNOT sequence. Simultaneously a unitary and, via transvections
/// W(c,t) = 1 + e_c e_t^T, an invertible GF(2) matrix.
class CnotCircuit {
 public:
  CnotCircuit() = default;
  explicit CnotCircuit(size_t n) : n_(n) {}

  size_t n() const { return n_; }
  size_t size() const { return gates_.size(); }
  const std::vector<CnotGate>& gates() const { return gates_; }

  void add(uint32_t control, uint32_t target);
  CnotCircuit reversed() const;

  bool operator==(const CnotCircuit&) const = default;

 private:
  size_t n_ = 0;
  std::vector<CnotGate> gates_;
};

/// Ordered transvection product: gates applied first sit rightmost in the
/// matrix product, matching conjugation delta -> W delta W^-1.
BinaryMatrix circuit_to_matrix(const CnotCircuit& c);

/// CNOT sequence whose matrix form equals w exactly. Gauss-Jordan with
/// lowest-index pivoting; O(n^2) gates. Throws SingularMatrix.
CnotCircuit synthesize_circuit(const BinaryMatrix& w);

/// Conjugation gate by gate, phase-free: CNOT(c,t) maps X_c -> X_c X_t and
/// Z_t -> Z_c Z_t. With inverse=true the gate order is reversed.
PauliOperator conjugate_pauli(const CnotCircuit& c, PauliOperator p,
                              bool inverse = false);

/// In-place single-gate conjugation used in hot loops.
inline void apply_cnot(PauliOperator& p, uint32_t control, uint32_t target) {
  if (p.x().get(control)) p.x().flip(target);
  if (p.z().get(target)) p.z().flip(control);
}

/// Full encoder for the tensor grid: enc2 replicated across every band of
/// fixed first index, then enc1 replicated across every band of fixed second
/// index. Matrix form equals tensor(W1, W2).
CnotCircuit product_encoder(const CnotCircuit& enc1, const CnotCircuit& enc2,
                            size_t n1, size_t n2);

// General gates, for transversal layers and schedules. T is scheduled but
// never state-simulated; on the Pauli frame it is support-preserving.
enum class GateKind : uint8_t { CX, H, S, X, Y, Z, T };

struct Gate {
  GateKind kind;
  uint32_t q0;
  uint32_t q1 = UINT32_MAX;  // target, CX only

  static Gate cx(uint32_t c, uint32_t t) { return {GateKind::CX, c, t}; }
  static Gate h(uint32_t q) { return {GateKind::H, q}; }
  static Gate s(uint32_t q) { return {GateKind::S, q}; }
  static Gate t(uint32_t q) { return {GateKind::T, q}; }
  bool two_qubit() const { return kind == GateKind::CX; }
  bool operator==(const Gate&) const = default;
};

/// Phase-free Pauli-frame conjugation by a single gate. T acts as identity
/// on the frame (support-preserving propagation only).
void apply_gate(PauliOperator& p, const Gate& g, bool inverse = false);

std::vector<Gate> to_gates(const CnotCircuit& c);

// Circuit text format: header "QUBITS n", then one gate per line,
// "CX c t" / "H q" / "S q" / "T q", 0-indexed.
std::string format_gates(const std::vector<Gate>& gates, size_t n);
std::pair<std::vector<Gate>, size_t> parse_gates(std::string_view text);

}  // namespace homolattice
