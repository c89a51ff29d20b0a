#pragma once

#include <vector>

#include "homolattice/circuit.hpp"
#include "homolattice/pauli.hpp"

namespace homolattice {

/// Sign-tracked stabilizer rows. Rows must mutually commute and stay
/// independent; Clifford updates follow the usual tableau rules.
class StabilizerTableau {
 public:
  StabilizerTableau() = default;
  explicit StabilizerTableau(size_t n) : n_(n) {}

  size_t n() const { return n_; }
  size_t num_rows() const { return rows_.size(); }
  const PauliOperator& row(size_t i) const { return rows_[i]; }
  bool sign(size_t i) const { return signs_[i]; }  // true = -1

  void add_row(PauliOperator p, bool negative = false);

  void apply(const Gate& g);

  /// True when p (with the requested sign) lies in the generated group.
  bool contains(const PauliOperator& p, bool negative = false) const;

  /// True when the generated group is, sign-free, exactly the span of the
  /// given generators and every generator carries +1 in the tableau group.
  bool group_equals(const std::vector<PauliOperator>& generators) const;

 private:
  size_t n_ = 0;
  std::vector<PauliOperator> rows_;
  std::vector<uint8_t> signs_;
};

/// Conjugate every row through the gates, in order. CNOT, H, S and Paulis
/// only; anything else throws Unsupported.
StabilizerTableau tableau_run(const std::vector<Gate>& gates,
                              StabilizerTableau initial);

}  // namespace homolattice
