#pragma once

#include <map>
#include <optional>
#include <string>

#include "homolattice/complex.hpp"

namespace homolattice {

// Catalog codes. The reference boundary operators are embedded verbatim;
// the data/ files carry the same digits.

/// Boundary operator of the 7-qubit Steane code (every row and column has
/// weight 4).
ChainComplex steane();

/// Reference boundary operator of the padded 15-qubit Reed-Muller code on
/// 21 qubits; rank 10, no Z stabilizer touches the last 6 qubits.
ChainComplex padded_reed_muller_21();

/// The [[15,1,3]] gauge-fixed code: 4 X cell generators and 10 Z generators
/// (4 cells + 6 fixed faces). Qubit ordering is chosen so that the padded
/// code's stabilizer spans match padded_reed_muller_21().
CssCode reed_muller_15();

/// The [[4,2,2]] code {XXXX, ZZZZ} with its 4-gate encoder
/// (inputs psi1, psi2, |0>, |+>).
std::pair<CssCode, CnotCircuit> four_two_two();

/// Append `extra` qubits in |+>, each carrying a single-qubit X generator.
/// Equalizes generator counts when Z outnumbers X; with allow_flip the dual
/// padding (|0> qubits, Z generators) is applied when X outnumbers Z.
CssCode pad(const CssCode& code, size_t extra, bool allow_flip = false);

/// Swap X and Z generator sets, support patterns preserved.
CssCode rotate(const CssCode& code);

struct DoubledCode {
  CssCode code;
  CnotCircuit encoder;  // n parallel copies of the [[4,2,2]] encoder
};

/// Code doubling: blocks (1)=code, (2)=rotate(code), (3)=|0>^n, (4)=|+>^n,
/// re-encoded qubit-wise through the [[4,2,2]] circuit. The stabilizers are
/// the six transformed families; X and Z counts are equal by construction
/// and the distance doubles.
DoubledCode double_code(const CssCode& code);

struct LogicalOperators {
  std::vector<PauliOperator> x;  // X-bar representatives
  std::vector<PauliOperator> z;  // Z-bar, paired so x[i] anticommutes with
                                 // z[j] iff i == j
};
LogicalOperators logical_operators(const CssCode& code);

struct DistanceResult {
  std::optional<size_t> dx;  // nullopt: no X logical of weight <= cap
  std::optional<size_t> dz;
  size_t cap = 0;
};

/// Exhaustive minimum-weight nontrivial-logical search per Pauli type.
/// Plain enumeration up to cap 5, meet-in-the-middle syndrome collision
/// above. A nullopt side certifies distance > cap. jobs > 1 splits the
/// enumeration weight-classes across threads; results do not depend on it.
DistanceResult distance(const CssCode& code, size_t cap, unsigned jobs = 1);

enum class DecoderStrategy { Lookup, MinWeight };

/// Syndrome-keyed recovery. Syndromes are bit vectors against the code's
/// generator lists in order (X stabilizers detect Z support and vice versa).
class Decoder {
 public:
  Decoder(CssCode code, DecoderStrategy strategy, size_t correctable_weight,
          uint64_t table_cap = uint64_t(1) << 22);

  const CssCode& code() const { return code_; }
  size_t correctable_weight() const { return t_c_; }

  /// Recovery for the measured bits, or nullopt when the syndrome is outside
  /// the correctable set (lookup) / no match below the search bound.
  std::optional<PauliOperator> decode(const BitVector& x_stab_bits,
                                      const BitVector& z_stab_bits) const;

 private:
  CssCode code_;
  DecoderStrategy strategy_;
  size_t t_c_;
  uint64_t search_budget_;
  std::map<std::pair<std::string, std::string>, PauliOperator> table_;
};

BitVector x_stabilizer_bits(const CssCode& code, const PauliOperator& e);
BitVector z_stabilizer_bits(const CssCode& code, const PauliOperator& e);

/// Build a decoder; correctable weight defaults to floor((d-1)/2) with d
/// from the distance oracle (capped search). Throws CapExceeded when a
/// lookup table would exceed table_cap entries.
Decoder build_decoder(const CssCode& code, DecoderStrategy strategy,
                      std::optional<size_t> correctable_weight = std::nullopt,
                      uint64_t table_cap = uint64_t(1) << 22);

/// Catalog entry: a code, its boundary when one is defined, and an encoder
/// circuit when the construction fixes one.
struct CatalogCode {
  std::string name;
  CssCode code;
  std::optional<ChainComplex> complex;
  std::optional<CnotCircuit> encoder;
  bool transversal_t = false;
};

/// Names: steane, rm15, rm15-padded, 422, trivial1, double:<name>.
std::optional<CatalogCode> catalog_lookup(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace homolattice
