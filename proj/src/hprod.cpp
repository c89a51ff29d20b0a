#include "homolattice/hprod.hpp"

#include <algorithm>

namespace homolattice {

ProductCode homological_product(const ChainComplex& c1, const ChainComplex& c2) {
  const size_t n1 = c1.n(), n2 = c2.n();
  BinaryMatrix boundary =
      tensor(c1.boundary(), BinaryMatrix::identity(n2)) +
      tensor(BinaryMatrix::identity(n1), c2.boundary());

  ProductCode p{c1, c2, css_from_boundary(c1), css_from_boundary(c2),
                std::move(boundary), 0, GridMap{n1, n2}};
  p.k = p.code1.k * p.code2.k;

  const size_t r = rank(p.boundary);
  if (n1 * n2 != p.k + 2 * r)
    throw DimensionMismatch("product rank does not match k1*k2");
  return p;
}

BinaryMatrix canonical_product_boundary(size_t k1, size_t l1, size_t k2,
                                        size_t l2) {
  return canonical_product_boundary(k1, l1, canonical_delta0(k2, l2));
}

BinaryMatrix canonical_product_boundary(size_t k1, size_t l1,
                                        const BinaryMatrix& delta2) {
  if (delta2.rows() != delta2.cols())
    throw DimensionMismatch("delta2 must be square");
  const size_t n1 = k1 + 2 * l1;
  return tensor(canonical_delta0(k1, l1), BinaryMatrix::identity(delta2.rows())) +
         tensor(BinaryMatrix::identity(n1), delta2);
}

InitialStateLayout initial_state_layout(size_t k1, size_t l1, size_t k2,
                                        size_t l2) {
  const size_t n1 = k1 + 2 * l1, n2 = k2 + 2 * l2;
  BinaryMatrix d0 = canonical_product_boundary(k1, l1, k2, l2);

  InitialStateLayout layout;
  layout.grid = GridMap{n1, n2};
  layout.roles.assign(n1 * n2, QubitRole::Logical);
  layout.partner.assign(n1 * n2, std::nullopt);

  const size_t n = n1 * n2;
  for (size_t r = 0; r < n; ++r) {
    const size_t w = d0.row_weight(r);
    if (w == 1) {
      layout.roles[size_t(d0.row(r).find_first())] = QubitRole::PlusAncilla;
    } else if (w == 2) {
      auto s = d0.row(r).support();
      layout.roles[s[0]] = QubitRole::BellPair;
      layout.roles[s[1]] = QubitRole::BellPair;
      layout.partner[s[0]] = s[1];
      layout.partner[s[1]] = s[0];
    }
  }
  for (size_t c = 0; c < n; ++c) {
    if (d0.col_weight(c) != 1) continue;
    const size_t q = size_t(d0.column(c).find_first());
    if (layout.roles[q] == QubitRole::Logical)
      layout.roles[q] = QubitRole::ZeroAncilla;
  }

  for (size_t q = 0; q < n; ++q) {
    switch (layout.roles[q]) {
      case QubitRole::Logical: ++layout.logical_count; break;
      case QubitRole::ZeroAncilla: ++layout.zero_count; break;
      case QubitRole::PlusAncilla: ++layout.plus_count; break;
      case QubitRole::BellPair: break;
    }
  }
  size_t bell_qubits = 0;
  for (auto role : layout.roles)
    if (role == QubitRole::BellPair) ++bell_qubits;
  layout.bell_pair_count = bell_qubits / 2;
  return layout;
}

ProductParams product_params(const ProductCode& p, DistancePair d1,
                             DistancePair d2) {
  ProductParams out;
  out.n1 = p.grid.n1;
  out.n2 = p.grid.n2;
  out.k1 = p.code1.k;
  out.k2 = p.code2.k;
  out.k = p.k;
  out.sparsity = sparsity(p.boundary);
  out.sparsity_bound = sparsity(p.factor1.boundary()) + sparsity(p.factor2.boundary());
  out.window_x_lo = std::max(d1.x, d2.x);
  out.window_x_hi = d1.x * d2.x;
  out.window_z_lo = std::max(d1.z, d2.z);
  out.window_z_hi = d1.z * d2.z;
  return out;
}

}  // namespace homolattice
