#include "homolattice/complex.hpp"

#include <algorithm>

namespace homolattice {

ChainComplex::ChainComplex(BinaryMatrix boundary) : boundary_(std::move(boundary)) {
  if (boundary_.rows() != boundary_.cols())
    throw DimensionMismatch("boundary operator must be square");
  if (!multiply(boundary_, boundary_).is_zero())
    throw DimensionMismatch("boundary operator must square to zero");
}

size_t CssCode::l() const {
  if (!symmetric()) throw AsymmetricCode(rank_x, rank_z);
  return rank_x;
}

std::vector<BitVector> CssCode::x_supports() const {
  std::vector<BitVector> out;
  out.reserve(x_stabilizers.size());
  for (const auto& p : x_stabilizers) out.push_back(p.x());
  return out;
}

std::vector<BitVector> CssCode::z_supports() const {
  std::vector<BitVector> out;
  out.reserve(z_stabilizers.size());
  for (const auto& p : z_stabilizers) out.push_back(p.z());
  return out;
}

CssCode make_css_code(size_t n, std::vector<BitVector> x_supports,
                      std::vector<BitVector> z_supports) {
  CssCode code;
  code.n = n;
  for (const auto& x : x_supports) {
    if (x.size() != n) throw DimensionMismatch("X generator width mismatch");
    code.x_stabilizers.push_back(PauliOperator::x_type(x));
  }
  for (const auto& z : z_supports) {
    if (z.size() != n) throw DimensionMismatch("Z generator width mismatch");
    code.z_stabilizers.push_back(PauliOperator::z_type(z));
  }
  for (const auto& x : x_supports)
    for (const auto& z : z_supports)
      if (x.dot(z))
        throw DimensionMismatch("X and Z generators must commute");
  code.rank_x = x_supports.empty()
                    ? 0
                    : rank(BinaryMatrix::from_rows(x_supports, n));
  code.rank_z = z_supports.empty()
                    ? 0
                    : rank(BinaryMatrix::from_rows(z_supports, n));
  code.k = n - code.rank_x - code.rank_z;
  return code;
}

CssCode css_from_boundary(const ChainComplex& c) {
  const BinaryMatrix& d = c.boundary();
  std::vector<BitVector> xs, zs;
  for (size_t r = 0; r < d.rows(); ++r) {
    BitVector row = d.row(r);
    if (row.any()) xs.push_back(std::move(row));
  }
  for (size_t col = 0; col < d.cols(); ++col) {
    BitVector column = d.column(col);
    if (column.any()) zs.push_back(std::move(column));
  }
  return make_css_code(c.n(), std::move(xs), std::move(zs));
}

BinaryMatrix canonical_delta0(size_t k, size_t l) {
  BinaryMatrix d(k + 2 * l, k + 2 * l);
  for (size_t i = 0; i < l; ++i) d.set(k + i, k + l + i);
  return d;
}

namespace {

// Greedy lowest-index selection of an independent subset of the given
// support vectors; returns their indices.
std::vector<size_t> select_independent(const std::vector<BitVector>& vectors,
                                       size_t width) {
  RowSpan acc({}, width);
  std::vector<size_t> picked;
  for (size_t i = 0; i < vectors.size(); ++i)
    if (acc.insert(vectors[i])) picked.push_back(i);
  return picked;
}

}  // namespace

CanonicalForm canonical_form(const CssCode& code) {
  const size_t n = code.n;
  if (code.rank_x != code.rank_z) throw AsymmetricCode(code.rank_x, code.rank_z);
  const size_t l = code.rank_x;
  const size_t k = n - 2 * l;

  auto xsupp = code.x_supports();
  auto zsupp = code.z_supports();
  const auto xsel = select_independent(xsupp, n);
  const auto zsel = select_independent(zsupp, n);

  // mz = HZ^T (n x l), mx = HX^T; decoder gates are recorded as row
  // operations on these transposes.
  BinaryMatrix mz(n, l), mx(n, l);
  for (size_t i = 0; i < l; ++i) {
    for (size_t q = 0; q < n; ++q) {
      if (zsupp[zsel[i]].get(q)) mz.set(q, i);
      if (xsupp[xsel[i]].get(q)) mx.set(q, i);
    }
  }

  std::vector<CnotGate> decoder;
  // CNOT(c,t) transforms Z supports by z_c ^= z_t (mz row c ^= row t) and X
  // supports by x_t ^= x_c (mx row t ^= row c).
  auto emit = [&](size_t control, size_t target) {
    decoder.push_back({uint32_t(control), uint32_t(target)});
    mz.xor_row_into(target, control);
    mx.xor_row_into(control, target);
  };

  // Phase 1: bring HZ to exactly [0 | I_l | 0], pivot row k+i for column i.
  for (size_t i = 0; i < l; ++i) {
    const size_t p = k + i;
    if (!mz.get(p, i)) {
      // lowest source row; earlier pivot rows are excluded so the
      // already-cleared columns stay intact
      size_t src = n;
      for (size_t r = 0; r < n; ++r) {
        if (r >= k && r < k + i) continue;
        if (mz.get(r, i)) {
          src = r;
          break;
        }
      }
      if (src == n) throw DimensionMismatch("Z generators lost rank");
      emit(p, src);
    }
    for (size_t r = 0; r < n; ++r)
      if (r != p && mz.get(r, i)) emit(r, p);
  }

  // Phase 2: bring HX to exactly [0 | 0 | I_l]. Commutation forces the
  // middle block of HX to zero already; gates avoid middle-block targets so
  // HZ stays canonical. Row op "mx row a ^= row b" is CNOT(b, a).
  auto emit_x = [&](size_t a, size_t b) { emit(b, a); };
  auto is_middle = [&](size_t r) { return r >= k && r < k + l; };
  for (size_t i = 0; i < l; ++i) {
    const size_t p = k + l + i;
    if (!mx.get(p, i)) {
      size_t src = n;
      for (size_t r = 0; r < n; ++r) {
        if (is_middle(r) || r == p) continue;
        if (r >= k + l && r < k + l + i) continue;  // earlier pivot rows
        if (mx.get(r, i)) {
          src = r;
          break;
        }
      }
      if (src == n) throw DimensionMismatch("X generators lost rank");
      emit_x(p, src);
    }
    for (size_t r = 0; r < n; ++r) {
      if (is_middle(r) || r == p) continue;
      if (mx.get(r, i)) emit_x(r, p);
    }
  }

  CanonicalForm cf;
  cf.k = k;
  cf.l = l;
  cf.delta0 = canonical_delta0(k, l);
  cf.encoder_circuit = CnotCircuit(n);
  for (auto it = decoder.rbegin(); it != decoder.rend(); ++it)
    cf.encoder_circuit.add(it->control, it->target);
  cf.encoder_matrix = circuit_to_matrix(cf.encoder_circuit);
  return cf;
}

CanonicalForm canonical_form(const ChainComplex& c) {
  const BinaryMatrix& d = c.boundary();
  const size_t n = c.n();
  const size_t l = rank(d);
  const size_t k = n - 2 * l;

  // Change of basis S with d = S delta0 S^-1: columns k+l+i are preimages
  // u_i of an image basis, columns k+i are d u_i, and the first k columns
  // complete {d u_i} to a kernel basis.
  BinaryMatrix work = d;
  std::vector<size_t> pivot_cols;
  {
    // lowest-index independent columns of d
    BinaryMatrix elim = d;
    size_t next_row = 0;
    for (size_t col = 0; col < n && next_row < n; ++col) {
      size_t p = next_row;
      while (p < n && !elim.get(p, col)) ++p;
      if (p == n) continue;
      elim.swap_rows(p, next_row);
      for (size_t r = 0; r < n; ++r)
        if (r != next_row && elim.get(r, col)) elim.xor_row_into(next_row, r);
      pivot_cols.push_back(col);
      ++next_row;
    }
  }

  std::vector<BitVector> image;  // d u_i
  image.reserve(l);
  for (size_t c2 : pivot_cols) image.push_back(d.column(c2));

  // kernel completion, lowest-index-first
  std::vector<BitVector> completion;
  {
    RowSpan span(image, n);
    for (const auto& v : kernel_basis(d))
      if (span.insert(v)) completion.push_back(v);
  }
  if (completion.size() != k)
    throw DimensionMismatch("kernel completion has unexpected size");

  BinaryMatrix s(n, n);
  for (size_t j = 0; j < k; ++j)
    for (size_t q = 0; q < n; ++q)
      if (completion[j].get(q)) s.set(q, j);
  for (size_t i = 0; i < l; ++i)
    for (size_t q = 0; q < n; ++q) {
      if (image[i].get(q)) s.set(q, k + i);
      if (q == pivot_cols[i]) s.set(q, k + l + i);
    }

  CanonicalForm cf;
  cf.k = k;
  cf.l = l;
  cf.delta0 = canonical_delta0(k, l);
  cf.encoder_circuit = synthesize_circuit(s);
  cf.encoder_matrix = std::move(s);
  return cf;
}

ChainComplex boundary_from_css(const CssCode& code) {
  CanonicalForm cf = canonical_form(code);
  BinaryMatrix w_inv = invert(cf.encoder_matrix);
  return ChainComplex(multiply(multiply(cf.encoder_matrix, cf.delta0), w_inv));
}

size_t sparsity(const CssCode& code) {
  size_t best = 0;
  std::vector<size_t> x_part(code.n, 0), z_part(code.n, 0);
  for (const auto& p : code.x_stabilizers) {
    best = std::max(best, p.weight());
    for (size_t q : p.x().support()) ++x_part[q];
  }
  for (const auto& p : code.z_stabilizers) {
    best = std::max(best, p.weight());
    for (size_t q : p.z().support()) ++z_part[q];
  }
  for (size_t q = 0; q < code.n; ++q)
    best = std::max({best, x_part[q], z_part[q]});
  return best;
}

}  // namespace homolattice
