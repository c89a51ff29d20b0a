#pragma once

#include <vector>

#include "homolattice/circuit.hpp"
#include "homolattice/gf2.hpp"
#include "homolattice/pauli.hpp"

namespace homolattice {

/// Single-sector chain complex: one n x n boundary operator with
/// boundary^2 = 0, checked at construction.
class ChainComplex {
 public:
  explicit ChainComplex(BinaryMatrix boundary);

  size_t n() const { return boundary_.rows(); }
  const BinaryMatrix& boundary() const { return boundary_; }

  bool operator==(const ChainComplex&) const = default;

 private:
  BinaryMatrix boundary_;
};

/// CSS code data: X-type and Z-type generating sets (possibly over-complete;
/// kept as given), with ranks tracked separately so asymmetric codes are
/// representable.
struct CssCode {
  size_t n = 0;
  std::vector<PauliOperator> x_stabilizers;
  std::vector<PauliOperator> z_stabilizers;
  size_t k = 0;
  size_t rank_x = 0;
  size_t rank_z = 0;

  bool symmetric() const { return rank_x == rank_z; }
  /// Count of independent X (= Z) stabilizers; only meaningful when symmetric.
  size_t l() const;

  std::vector<BitVector> x_supports() const;
  std::vector<BitVector> z_supports() const;
};

/// Validates pairwise commutation and fills in k and the ranks.
CssCode make_css_code(size_t n, std::vector<BitVector> x_supports,
                      std::vector<BitVector> z_supports);

/// X generators from the nonzero rows, Z generators from the nonzero columns;
/// k = n - 2 rank(boundary).
CssCode css_from_boundary(const ChainComplex& c);

/// The canonical block matrix: zero except an l x l identity in block
/// (row-block 2, column-block 3) of the (k, l, l) partition.
BinaryMatrix canonical_delta0(size_t k, size_t l);

struct CanonicalForm {
  BinaryMatrix delta0;
  BinaryMatrix encoder_matrix;  // W
  CnotCircuit encoder_circuit;  // matrix form equals W
  size_t k = 0;
  size_t l = 0;
};

/// Encoder synthesis from a generating set, by symplectic Gaussian
/// elimination with lowest-index pivots. The encoder maps Z_{k+i} to the i-th
/// selected Z generator and X_{k+l+i} to the i-th selected X generator
/// exactly, so W delta0 W^-1 reproduces both stabilizer groups and inherits
/// the t-squared sparsity bound. Throws AsymmetricCode when the independent
/// X and Z counts differ.
CanonicalForm canonical_form(const CssCode& code);

/// Exact similarity witness for a boundary operator:
/// W delta0 W^-1 == boundary as matrices. Every valid single-sector boundary
/// is conjugate to delta0, so this never fails.
CanonicalForm canonical_form(const ChainComplex& c);

/// delta = W delta0 W^-1 rebuilt from canonical_form(code). Row and column
/// spans equal the code's stabilizer groups; sparsity is at most t^2 for a
/// generator set of sparsity t.
ChainComplex boundary_from_css(const CssCode& code);

/// Generator-set sparsity: max over generator weights and per-qubit
/// participation counts taken per type.
size_t sparsity(const CssCode& code);

}  // namespace homolattice
