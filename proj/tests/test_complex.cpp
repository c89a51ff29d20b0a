#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homolattice/codes.hpp"
#include "homolattice/complex.hpp"

using namespace homolattice;

namespace {

BinaryMatrix j4() {
  BinaryMatrix m(4, 4);
  for (size_t r = 0; r < 4; ++r)
    for (size_t c = 0; c < 4; ++c) m.set(r, c);
  return m;
}

// random boundary via a random similarity transform of delta0
ChainComplex random_boundary(std::mt19937_64& rng, size_t k, size_t l) {
  const size_t n = k + 2 * l;
  BinaryMatrix w = BinaryMatrix::identity(n);
  for (int i = 0; i < 60; ++i) {
    size_t a = rng() % n, b = rng() % n;
    if (a != b) w.xor_row_into(a, b);
  }
  BinaryMatrix d = multiply(multiply(w, canonical_delta0(k, l)), invert(w));
  return ChainComplex(std::move(d));
}

bool delta0_shape_ok(const BinaryMatrix& d0, size_t k, size_t l) {
  if (d0.rows() != k + 2 * l) return false;
  for (size_t r = 0; r < d0.rows(); ++r)
    for (size_t c = 0; c < d0.cols(); ++c) {
      const bool expected = r >= k && r < k + l && c == r + l;
      if (d0.get(r, c) != expected) return false;
    }
  return true;
}

bool spans_match(const CssCode& code, const BinaryMatrix& d) {
  RowSpan rows(d);
  RowSpan cols(d.transposed());
  RowSpan xspan(code.x_supports(), code.n);
  RowSpan zspan(code.z_supports(), code.n);
  if (rows.dim() != xspan.dim() || cols.dim() != zspan.dim()) return false;
  for (const auto& g : code.x_supports())
    if (!rows.contains(g)) return false;
  for (const auto& g : code.z_supports())
    if (!cols.contains(g)) return false;
  for (size_t r = 0; r < d.rows(); ++r)
    if (!xspan.contains(d.row(r))) return false;
  for (size_t c = 0; c < d.cols(); ++c)
    if (!zspan.contains(d.column(c))) return false;
  return true;
}

}  // namespace

TEST_CASE("chain complex validation") {
  CHECK_THROWS_AS(ChainComplex(BinaryMatrix(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(ChainComplex(BinaryMatrix::identity(3)), DimensionMismatch);
  CHECK_NOTHROW(ChainComplex{BinaryMatrix(4, 4)});
  CHECK_NOTHROW(ChainComplex{j4()});
}

TEST_CASE("css_from_boundary") {
  SUBCASE("steane") {
    CssCode code = css_from_boundary(steane());
    CHECK(code.n == 7);
    CHECK(code.k == 1);
    CHECK(code.l() == 3);
    CHECK(code.x_stabilizers.size() == 7);  // over-complete set kept
    for (const auto& g : code.x_stabilizers) CHECK(g.weight() == 4);
  }

  SUBCASE("zero boundary keeps every qubit logical") {
    CssCode code = css_from_boundary(ChainComplex(BinaryMatrix(4, 4)));
    CHECK(code.k == 4);
    CHECK(code.x_stabilizers.empty());
    CHECK(code.z_stabilizers.empty());
  }

  SUBCASE("J4 gives the [[4,2,2]] code") {
    CssCode code = css_from_boundary(ChainComplex(j4()));
    CHECK(code.k == 2);
    CHECK(code.l() == 1);
    for (const auto& g : code.x_stabilizers)
      CHECK(g == PauliOperator::from_word("XXXX"));
    for (const auto& g : code.z_stabilizers)
      CHECK(g == PauliOperator::from_word("ZZZZ"));
  }
}

TEST_CASE("canonical_form on generating sets") {
  SUBCASE("steane") {
    CssCode code = css_from_boundary(steane());
    CanonicalForm cf = canonical_form(code);
    CHECK(cf.k == 1);
    CHECK(cf.l == 3);
    CHECK(delta0_shape_ok(cf.delta0, 1, 3));
    CHECK(circuit_to_matrix(cf.encoder_circuit) == cf.encoder_matrix);
    BinaryMatrix d =
        multiply(multiply(cf.encoder_matrix, cf.delta0), invert(cf.encoder_matrix));
    CHECK(spans_match(code, d));
  }

  SUBCASE("a code already in canonical layout needs no gates") {
    // delta0 itself: Z on qubit k+i, X on qubit k+l+i
    const size_t k = 2, l = 2, n = k + 2 * l;
    std::vector<BitVector> xs, zs;
    for (size_t i = 0; i < l; ++i) {
      xs.push_back(BitVector::unit(n, k + l + i));
      zs.push_back(BitVector::unit(n, k + i));
    }
    CanonicalForm cf = canonical_form(make_css_code(n, xs, zs));
    CHECK(cf.encoder_circuit.size() == 0);
    CHECK(cf.encoder_matrix == BinaryMatrix::identity(n));
  }

  SUBCASE("padded Reed-Muller has (k,l) = (1,10)") {
    CanonicalForm cf =
        canonical_form(css_from_boundary(padded_reed_muller_21()));
    CHECK(cf.k == 1);
    CHECK(cf.l == 10);
  }

  SUBCASE("asymmetric codes are rejected") {
    CHECK_THROWS_AS(canonical_form(reed_muller_15()), AsymmetricCode);
  }

  SUBCASE("the encoder maps each selected generator exactly") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
      ChainComplex c = random_boundary(rng, 1 + rng() % 3, 1 + rng() % 3);
      CssCode code = css_from_boundary(c);
      CanonicalForm cf = canonical_form(code);
      // encoder action: Z supports map by W, X supports by W^-1 on rows
      BinaryMatrix w_inv = invert(cf.encoder_matrix);
      auto zsel = code.z_supports();
      auto xsel = code.x_supports();
      // reconstruct the selected independent sub-lists
      RowSpan zspan({}, code.n), xspan({}, code.n);
      std::vector<BitVector> zind, xind;
      for (const auto& v : zsel)
        if (zspan.insert(v)) zind.push_back(v);
      for (const auto& v : xsel)
        if (xspan.insert(v)) xind.push_back(v);
      for (size_t i = 0; i < cf.l; ++i) {
        CHECK(cf.encoder_matrix.column(cf.k + i) == zind[i]);
        CHECK(w_inv.row(cf.k + cf.l + i) == xind[i]);
      }
    }
  }
}

TEST_CASE("canonical_form on boundaries is an exact similarity") {
  auto exact = [](const ChainComplex& c) {
    CanonicalForm cf = canonical_form(c);
    BinaryMatrix rebuilt = multiply(multiply(cf.encoder_matrix, cf.delta0),
                                    invert(cf.encoder_matrix));
    CHECK(rebuilt == c.boundary());
    CHECK(circuit_to_matrix(cf.encoder_circuit) == cf.encoder_matrix);
    CHECK(delta0_shape_ok(cf.delta0, cf.k, cf.l));
  };
  exact(steane());
  exact(padded_reed_muller_21());
  exact(ChainComplex(j4()));
  exact(ChainComplex(BinaryMatrix(3, 3)));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial)
    exact(random_boundary(rng, rng() % 3, 1 + rng() % 4));
}

TEST_CASE("boundary_from_css") {
  SUBCASE("round trip preserves both stabilizer groups") {
    CssCode code = css_from_boundary(steane());
    ChainComplex rebuilt = boundary_from_css(code);
    CHECK(spans_match(code, rebuilt.boundary()));
    CHECK(multiply(rebuilt.boundary(), rebuilt.boundary()).is_zero());
  }

  SUBCASE("no stabilizers gives the zero boundary") {
    CssCode trivial = make_css_code(3, {}, {});
    CHECK(boundary_from_css(trivial).boundary() == BinaryMatrix(3, 3));
  }

  SUBCASE("steane sparsity bound") {
    CssCode code = css_from_boundary(steane());
    CHECK(sparsity(code) == 4);
    CHECK(sparsity(boundary_from_css(code).boundary()) <= 16);
  }

  SUBCASE("t^2 bound holds on random symmetric codes") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
      ChainComplex c = random_boundary(rng, rng() % 3, 1 + rng() % 4);
      CssCode code = css_from_boundary(c);
      const size_t t = sparsity(code);
      ChainComplex rebuilt = boundary_from_css(code);
      CHECK(spans_match(code, rebuilt.boundary()));
      CHECK(sparsity(rebuilt.boundary()) <= t * t);
      CHECK(code.k + 2 * rank(rebuilt.boundary()) == code.n);
    }
  }
}

TEST_CASE("generator-set sparsity") {
  CHECK(sparsity(css_from_boundary(steane())) == 4);
  CssCode rm = reed_muller_15();
  CHECK(sparsity(rm) == 10);  // a qubit can sit in all 10 Z checks
}
