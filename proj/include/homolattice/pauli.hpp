#pragma once

#include <string>

#include "homolattice/gf2.hpp"

namespace homolattice {

/// Phase-free n-qubit Pauli as a symplectic (x, z) bit-vector pair.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(size_t n) : x_(n), z_(n) {}
  PauliOperator(BitVector x, BitVector z);

  static PauliOperator single_x(size_t n, size_t q);
  static PauliOperator single_z(size_t n, size_t q);
  static PauliOperator single_y(size_t n, size_t q);
  static PauliOperator x_type(const BitVector& support);
  static PauliOperator z_type(const BitVector& support);
  /// From a word like "IXZY..".
  static PauliOperator from_word(std::string_view word);

  size_t n() const { return x_.size(); }
  const BitVector& x() const { return x_; }
  const BitVector& z() const { return z_; }
  BitVector& x() { return x_; }
  BitVector& z() { return z_; }

  bool is_identity() const { return !x_.any() && !z_.any(); }
  size_t weight() const;
  std::vector<size_t> support() const;

  /// Even symplectic overlap <=> commute.
  bool commutes_with(const PauliOperator& other) const {
    return !(x_.dot(other.z_) ^ z_.dot(other.x_));
  }

  /// Phase-free composition.
  PauliOperator& operator*=(const PauliOperator& other) {
    x_ ^= other.x_;
    z_ ^= other.z_;
    return *this;
  }
  friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) {
    a *= b;
    return a;
  }
  bool operator==(const PauliOperator&) const = default;

  std::string to_word() const;

 private:
  BitVector x_, z_;
};

}  // namespace homolattice
