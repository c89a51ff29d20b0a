#pragma once

#include <optional>
#include <vector>

#include "homolattice/complex.hpp"

namespace homolattice {

/// Flat index convention for the tensor grid: flat = i * n2 + j with i the
/// factor-1 coordinate. Error band E_a^1 fixes i = a, E_a^2 fixes j = a.
struct GridMap {
  size_t n1 = 0, n2 = 0;
  size_t flat(size_t i, size_t j) const { return i * n2 + j; }
  size_t row_of(size_t q) const { return q / n2; }
  size_t col_of(size_t q) const { return q % n2; }
  size_t size() const { return n1 * n2; }
};

/// Homological product of two single-sector complexes.
struct ProductCode {
  ChainComplex factor1;
  ChainComplex factor2;
  CssCode code1;          // css_from_boundary(factor1)
  CssCode code2;
  BinaryMatrix boundary;  // tensor(d1, I) + tensor(I, d2)
  size_t k = 0;           // k1 * k2, cross-checked against n - 2 rank
  GridMap grid;
};

ProductCode homological_product(const ChainComplex& c1, const ChainComplex& c2);

/// Fully canonical product boundary d10 (x) 1 + 1 (x) d20.
BinaryMatrix canonical_product_boundary(size_t k1, size_t l1, size_t k2,
                                        size_t l2);
/// Half-canonical form d10 (x) 1 + 1 (x) delta2, the frame reached after
/// unencoding factor 1.
BinaryMatrix canonical_product_boundary(size_t k1, size_t l1,
                                        const BinaryMatrix& delta2);

enum class QubitRole : uint8_t { Logical, ZeroAncilla, PlusAncilla, BellPair };

/// Per-qubit preparation roles before encoding, derived from the canonical
/// product boundary: weight-1 rows mark |+> qubits, weight-1 columns mark
/// |0> qubits, matched weight-2 row/column pairs mark Bell pairs, and the
/// untouched top-left k1 x k2 block holds the logical qubits.
struct InitialStateLayout {
  GridMap grid;
  std::vector<QubitRole> roles;                 // indexed by flat qubit
  std::vector<std::optional<size_t>> partner;   // Bell partner, by flat qubit
  size_t logical_count = 0;
  size_t zero_count = 0;
  size_t plus_count = 0;
  size_t bell_pair_count = 0;
};

InitialStateLayout initial_state_layout(size_t k1, size_t l1, size_t k2,
                                        size_t l2);

struct DistancePair {
  size_t x = 0;
  size_t z = 0;
};

/// Parameter report for a product. Factor distances are inputs; the window
/// is [max(d1, d2), d1 * d2] per Pauli type.
struct ProductParams {
  size_t n1 = 0, n2 = 0, k1 = 0, k2 = 0, k = 0;
  size_t sparsity = 0;
  size_t sparsity_bound = 0;  // w1 + w2
  size_t window_x_lo = 0, window_x_hi = 0;
  size_t window_z_lo = 0, window_z_hi = 0;
};

ProductParams product_params(const ProductCode& p, DistancePair d1,
                             DistancePair d2);

}  // namespace homolattice
