#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homolattice/codes.hpp"
#include "homolattice/gf2.hpp"

using namespace homolattice;

namespace {

BinaryMatrix ones(size_t n) {
  BinaryMatrix m(n, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) m.set(r, c);
  return m;
}

BinaryMatrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols) {
  BinaryMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c)
      if (rng() & 1) m.set(r, c);
  return m;
}

BinaryMatrix random_invertible(std::mt19937_64& rng, size_t n, size_t ops) {
  BinaryMatrix m = BinaryMatrix::identity(n);
  for (size_t i = 0; i < ops; ++i) {
    size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    m.xor_row_into(a, b);
  }
  return m;
}

}  // namespace

TEST_CASE("reference matrices parse from the data files") {
  BinaryMatrix d7 = read_matrix_file(std::string(HOMOLATTICE_DATA_DIR) + "/delta7.txt");
  CHECK(d7.rows() == 7);
  CHECK(d7 == steane().boundary());

  BinaryMatrix d15p =
      read_matrix_file(std::string(HOMOLATTICE_DATA_DIR) + "/delta15p.txt");
  CHECK(d15p.rows() == 21);
  CHECK(d15p == padded_reed_muller_21().boundary());
}

TEST_CASE("rank") {
  BinaryMatrix d7 = steane().boundary();
  CHECK(rank(d7) == 3);
  CHECK(rank(padded_reed_muller_21().boundary()) == 10);
  CHECK(rank(BinaryMatrix(5, 5)) == 0);
  CHECK(rank(BinaryMatrix::identity(6)) == 6);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    BinaryMatrix m = random_matrix(rng, 1 + rng() % 12, 1 + rng() % 12);
    CHECK(rank(m) == rank(m.transposed()));
  }
}

TEST_CASE("multiply") {
  BinaryMatrix d7 = steane().boundary();
  CHECK(multiply(d7, d7).is_zero());
  CHECK(multiply(BinaryMatrix::identity(7), d7) == d7);
  CHECK(multiply(ones(4), ones(4)).is_zero());
  CHECK_THROWS_AS(multiply(BinaryMatrix(2, 3), BinaryMatrix(2, 3)),
                  DimensionMismatch);
}

TEST_CASE("kernel basis") {
  BinaryMatrix d7 = steane().boundary();
  auto kb = kernel_basis(d7);
  CHECK(kb.size() == 4);
  for (const auto& v : kb) CHECK_FALSE(mat_vec(d7, v).any());

  CHECK(kernel_basis(BinaryMatrix::identity(5)).empty());
  auto zero_kb = kernel_basis(BinaryMatrix(4, 4));
  CHECK(zero_kb.size() == 4);
  for (size_t i = 0; i < 4; ++i) CHECK(zero_kb[i] == BitVector::unit(4, i));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    BinaryMatrix m = random_matrix(rng, 1 + rng() % 10, 1 + rng() % 10);
    auto basis = kernel_basis(m);
    CHECK(basis.size() + rank(m) == m.cols());
    for (const auto& v : basis) CHECK_FALSE(mat_vec(m, v).any());
  }
}

TEST_CASE("image basis") {
  CHECK(image_basis(steane().boundary()).size() == 3);
  CHECK(image_basis(BinaryMatrix(3, 3)).empty());
  auto j4 = image_basis(ones(4));
  REQUIRE(j4.size() == 1);
  CHECK(j4[0] == BitVector::from_string("1111"));
}

TEST_CASE("tensor") {
  BinaryMatrix d7 = steane().boundary();
  BinaryMatrix d15p = padded_reed_muller_21().boundary();

  SUBCASE("identity left factor gives block diagonal") {
    BinaryMatrix t = tensor(BinaryMatrix::identity(2), d7);
    CHECK(t.rows() == 14);
    for (size_t r = 0; r < 7; ++r)
      for (size_t c = 0; c < 7; ++c) {
        CHECK(t.get(r, c) == d7.get(r, c));
        CHECK(t.get(7 + r, 7 + c) == d7.get(r, c));
        CHECK_FALSE(t.get(r, 7 + c));
        CHECK_FALSE(t.get(7 + r, c));
      }
  }

  SUBCASE("1x1 unit is neutral") {
    BinaryMatrix one(1, 1);
    one.set(0, 0);
    CHECK(tensor(one, d7) == d7);
    CHECK(tensor(d7, one) == d7);
  }

  SUBCASE("index convention") {
    std::mt19937_64 rng(3);
    BinaryMatrix a = random_matrix(rng, 3, 4), b = random_matrix(rng, 2, 5);
    BinaryMatrix t = tensor(a, b);
    for (size_t i1 = 0; i1 < 3; ++i1)
      for (size_t i2 = 0; i2 < 2; ++i2)
        for (size_t j1 = 0; j1 < 4; ++j1)
          for (size_t j2 = 0; j2 < 5; ++j2)
            CHECK(t.get(i1 * 2 + i2, j1 * 5 + j2) ==
                  (a.get(i1, j1) && b.get(i2, j2)));
  }

  SUBCASE("product boundary squares to zero") {
    BinaryMatrix partial = tensor(d7, BinaryMatrix::identity(21)) +
                           tensor(BinaryMatrix::identity(7), d15p);
    CHECK(multiply(partial, partial).is_zero());
  }

  SUBCASE("associative and bilinear on random small matrices") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      BinaryMatrix a = random_matrix(rng, 2, 3), b = random_matrix(rng, 3, 2),
                   c = random_matrix(rng, 2, 2);
      CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
      BinaryMatrix b2 = random_matrix(rng, 3, 2);
      CHECK(tensor(a, b + b2) == tensor(a, b) + tensor(a, b2));
    }
  }
}

TEST_CASE("invert") {
  CHECK(invert(BinaryMatrix::identity(5)) == BinaryMatrix::identity(5));
  CHECK_THROWS_AS(invert(ones(4)), SingularMatrix);

  // one transvection is its own inverse
  BinaryMatrix w = BinaryMatrix::identity(4);
  w.set(0, 2);
  CHECK(invert(w) == w);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    BinaryMatrix m = random_invertible(rng, 8, 40);
    CHECK(multiply(m, invert(m)) == BinaryMatrix::identity(8));
  }
}

TEST_CASE("sparsity") {
  CHECK(sparsity(steane().boundary()) == 4);
  CHECK(sparsity(BinaryMatrix(6, 6)) == 0);
  CHECK(sparsity(padded_reed_muller_21().boundary()) == 11);
}

TEST_CASE("text format") {
  SUBCASE("separators are ignored") {
    BinaryMatrix m = parse_matrix("2 4\n10|10\n01 01\n");
    CHECK(m.get(0, 0));
    CHECK(m.get(0, 2));
    CHECK(m.get(1, 1));
    CHECK(m.get(1, 3));
  }

  SUBCASE("round trip") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
      BinaryMatrix m = random_matrix(rng, 1 + rng() % 9, 1 + rng() % 9);
      CHECK(parse_matrix(format_matrix(m)) == m);
    }
  }

  SUBCASE("diagnostics carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_matrix("1 2\n1x\n"),
                         "line 2: invalid character 'x'", ParseError);
    CHECK_THROWS_AS(parse_matrix("2 2\n11\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2 2\n11\n111\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix(""), ParseError);
  }
}

TEST_CASE("solver") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    const size_t rows = 1 + rng() % 10, cols = 1 + rng() % 10;
    BinaryMatrix a = random_matrix(rng, rows, cols);
    Gf2Solver solver(a);

    // consistent system: b = A x0
    BitVector x0(cols);
    for (size_t c = 0; c < cols; ++c)
      if (rng() & 1) x0.set(c);
    BitVector b = mat_vec(a, x0);
    auto x = solver.solve(b);
    REQUIRE(x.has_value());
    CHECK(mat_vec(a, *x) == b);
  }

  // inconsistent system
  BinaryMatrix a(2, 2);
  a.set(0, 0);
  a.set(1, 0);
  Gf2Solver solver(a);
  BitVector b(2);
  b.set(0);
  CHECK_FALSE(solver.solve(b).has_value());
}

TEST_CASE("row span") {
  BinaryMatrix d7 = steane().boundary();
  RowSpan span(d7);
  CHECK(span.dim() == 3);
  for (size_t r = 0; r < 7; ++r) CHECK(span.contains(d7.row(r)));
  CHECK(span.contains(d7.row(0) ^ d7.row(3)));
  CHECK_FALSE(span.contains(BitVector::unit(7, 0)));
}
