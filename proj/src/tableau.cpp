#include "homolattice/tableau.hpp"

namespace homolattice {

namespace {

// Phase exponent of i contributed by one qubit when left-multiplying by
// (x1,z1), with (1,1) read as Y. Standard tableau bookkeeping.
int phase_g(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return int(z2) - int(x2);
  if (x1) return z2 ? (x2 ? 1 : -1) : 0;
  return x2 ? (z2 ? -1 : 1) : 0;
}

// acc := other * acc with sign tracking; requires the two to commute.
void multiply_signed(PauliOperator& acc, bool& acc_sign,
                     const PauliOperator& other, bool other_sign) {
  int phase = 2 * int(acc_sign) + 2 * int(other_sign);
  for (size_t q = 0; q < acc.n(); ++q)
    phase += phase_g(other.x().get(q), other.z().get(q), acc.x().get(q),
                     acc.z().get(q));
  phase = ((phase % 4) + 4) % 4;
  acc *= other;
  acc_sign = phase == 2;
}

// symplectic pivot index: x-bits first, then z-bits
int first_symplectic_bit(const PauliOperator& p) {
  int ix = p.x().find_first();
  if (ix >= 0) return ix;
  int iz = p.z().find_first();
  return iz >= 0 ? int(p.n()) + iz : -1;
}

bool symplectic_bit(const PauliOperator& p, size_t idx) {
  return idx < p.n() ? p.x().get(idx) : p.z().get(idx - p.n());
}

// Row-reduced signed span for membership tests.
class SignedSpan {
 public:
  explicit SignedSpan(size_t n) : n_(n) {}

  void insert(PauliOperator p, bool sign) {
    reduce(p, sign);
    int pivot = first_symplectic_bit(p);
    if (pivot < 0) return;
    for (size_t i = 0; i < rows_.size(); ++i)
      if (symplectic_bit(rows_[i], size_t(pivot))) {
        bool s = signs_[i] != 0;
        multiply_signed(rows_[i], s, p, sign);
        signs_[i] = s;
      }
    rows_.push_back(std::move(p));
    signs_.push_back(sign);
    pivots_.push_back(pivot);
  }

  void reduce(PauliOperator& p, bool& sign) const {
    for (size_t i = 0; i < rows_.size(); ++i)
      if (symplectic_bit(p, size_t(pivots_[i])))
        multiply_signed(p, sign, rows_[i], signs_[i] != 0);
  }

  bool contains(PauliOperator p, bool sign) const {
    reduce(p, sign);
    return p.is_identity() && !sign;
  }

  size_t dim() const { return rows_.size(); }

 private:
  size_t n_;
  std::vector<PauliOperator> rows_;
  std::vector<uint8_t> signs_;
  std::vector<int> pivots_;
};

}  // namespace

void StabilizerTableau::add_row(PauliOperator p, bool negative) {
  if (p.n() != n_) throw DimensionMismatch("tableau row size mismatch");
  for (const auto& r : rows_)
    if (!r.commutes_with(p))
      throw DimensionMismatch("tableau rows must mutually commute");
  rows_.push_back(std::move(p));
  signs_.push_back(negative);
}

void StabilizerTableau::apply(const Gate& g) {
  switch (g.kind) {
    case GateKind::CX:
      for (size_t i = 0; i < rows_.size(); ++i) {
        auto& p = rows_[i];
        const bool xc = p.x().get(g.q0), zc = p.z().get(g.q0);
        const bool xt = p.x().get(g.q1), zt = p.z().get(g.q1);
        if (xc && zt && !(xt ^ zc)) signs_[i] ^= 1;
        p.x().set(g.q1, xt ^ xc);
        p.z().set(g.q0, zc ^ zt);
      }
      break;
    case GateKind::H:
      for (size_t i = 0; i < rows_.size(); ++i) {
        auto& p = rows_[i];
        const bool xb = p.x().get(g.q0), zb = p.z().get(g.q0);
        if (xb && zb) signs_[i] ^= 1;
        p.x().set(g.q0, zb);
        p.z().set(g.q0, xb);
      }
      break;
    case GateKind::S:
      for (size_t i = 0; i < rows_.size(); ++i) {
        auto& p = rows_[i];
        const bool xb = p.x().get(g.q0), zb = p.z().get(g.q0);
        if (xb && zb) signs_[i] ^= 1;
        p.z().set(g.q0, zb ^ xb);
      }
      break;
    case GateKind::X:
      for (size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].z().get(g.q0)) signs_[i] ^= 1;
      break;
    case GateKind::Z:
      for (size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].x().get(g.q0)) signs_[i] ^= 1;
      break;
    case GateKind::Y:
      for (size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].x().get(g.q0) ^ rows_[i].z().get(g.q0)) signs_[i] ^= 1;
      break;
    case GateKind::T:
      throw Unsupported("tableau simulation supports Clifford gates only");
  }
}

bool StabilizerTableau::contains(const PauliOperator& p, bool negative) const {
  SignedSpan span(n_);
  for (size_t i = 0; i < rows_.size(); ++i)
    span.insert(rows_[i], signs_[i] != 0);
  return span.contains(p, negative);
}

bool StabilizerTableau::group_equals(
    const std::vector<PauliOperator>& generators) const {
  SignedSpan ours(n_);
  for (size_t i = 0; i < rows_.size(); ++i)
    ours.insert(rows_[i], signs_[i] != 0);
  SignedSpan theirs(n_);
  for (const auto& g : generators) theirs.insert(g, false);

  for (const auto& g : generators)
    if (!ours.contains(g, false)) return false;
  for (size_t i = 0; i < rows_.size(); ++i)
    if (!theirs.contains(rows_[i], signs_[i] != 0)) return false;
  return true;
}

StabilizerTableau tableau_run(const std::vector<Gate>& gates,
                              StabilizerTableau initial) {
  for (const auto& g : gates) initial.apply(g);
  return initial;
}

}  // namespace homolattice
