#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homolattice/codes.hpp"
#include "homolattice/hprod.hpp"
#include "homolattice/tableau.hpp"

using namespace homolattice;

namespace {

StabilizerTableau layout_tableau(const InitialStateLayout& layout) {
  const size_t n = layout.roles.size();
  StabilizerTableau t(n);
  for (size_t q = 0; q < n; ++q) {
    switch (layout.roles[q]) {
      case QubitRole::ZeroAncilla:
        t.add_row(PauliOperator::single_z(n, q));
        break;
      case QubitRole::PlusAncilla:
        t.add_row(PauliOperator::single_x(n, q));
        break;
      case QubitRole::BellPair: {
        const size_t partner = *layout.partner[q];
        if (partner > q) {
          PauliOperator xx(n), zz(n);
          xx.x().set(q);
          xx.x().set(partner);
          zz.z().set(q);
          zz.z().set(partner);
          t.add_row(xx);
          t.add_row(zz);
        }
        break;
      }
      case QubitRole::Logical:
        break;
    }
  }
  return t;
}

std::vector<PauliOperator> boundary_gens(const BinaryMatrix& d) {
  std::vector<PauliOperator> gens;
  for (size_t r = 0; r < d.rows(); ++r)
    if (d.row(r).any()) gens.push_back(PauliOperator::x_type(d.row(r)));
  for (size_t c = 0; c < d.cols(); ++c)
    if (d.column(c).any()) gens.push_back(PauliOperator::z_type(d.column(c)));
  return gens;
}

}  // namespace

TEST_CASE("single qubit rules") {
  StabilizerTableau t(1);
  t.add_row(PauliOperator::single_z(1, 0));  // |0>
  t.apply(Gate::h(0));
  CHECK(t.row(0) == PauliOperator::single_x(1, 0));
  CHECK_FALSE(t.sign(0));

  t.apply(Gate::s(0));  // X -> Y
  CHECK(t.row(0) == PauliOperator::single_y(1, 0));
  CHECK_FALSE(t.sign(0));

  t.apply(Gate::s(0));  // Y -> -X
  CHECK(t.row(0) == PauliOperator::single_x(1, 0));
  CHECK(t.sign(0));

  t.apply({GateKind::Z, 0});  // -X -> +X
  CHECK_FALSE(t.sign(0));
}

TEST_CASE("empty circuit returns the initial tableau") {
  StabilizerTableau t(2);
  t.add_row(PauliOperator::from_word("XX"));
  t.add_row(PauliOperator::from_word("ZZ"));
  StabilizerTableau out = tableau_run({}, t);
  CHECK(out.row(0) == PauliOperator::from_word("XX"));
  CHECK(out.row(1) == PauliOperator::from_word("ZZ"));
}

TEST_CASE("T gates are rejected") {
  StabilizerTableau t(1);
  t.add_row(PauliOperator::single_z(1, 0));
  CHECK_THROWS_AS(tableau_run({Gate::t(0)}, t), Unsupported);
}

TEST_CASE("tableau agrees with conjugate_pauli sign-free") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t n = 6;
    CnotCircuit c(n);
    for (int g = 0; g < 20; ++g) {
      uint32_t a = uint32_t(rng() % n), b = uint32_t(rng() % n);
      if (a != b) c.add(a, b);
    }
    const size_t q = rng() % n;
    for (PauliOperator p : {PauliOperator::single_x(n, q),
                            PauliOperator::single_z(n, q),
                            PauliOperator::single_y(n, q)}) {
      StabilizerTableau t(n);
      t.add_row(p);
      StabilizerTableau out = tableau_run(to_gates(c), t);
      CHECK(out.row(0) == conjugate_pauli(c, p));
    }
  }
}

TEST_CASE("[[4,2,2]] encoder fixes the advertised stabilizers") {
  auto [code, enc] = four_two_two();
  StabilizerTableau t(4);
  t.add_row(PauliOperator::single_z(4, 2));  // |0> wire
  t.add_row(PauliOperator::single_x(4, 3));  // |+> wire
  StabilizerTableau out = tableau_run(to_gates(enc), t);
  CHECK(out.group_equals({PauliOperator::from_word("ZZZZ"),
                          PauliOperator::from_word("XXXX")}));
  CHECK(out.contains(PauliOperator::from_word("XXXX")));
  CHECK(out.contains(PauliOperator::from_word("ZZZZ")));
}

TEST_CASE("membership is sign aware") {
  StabilizerTableau t(2);
  t.add_row(PauliOperator::from_word("XX"));
  t.add_row(PauliOperator::from_word("ZZ"));
  CHECK(t.contains(PauliOperator::from_word("XX")));
  CHECK_FALSE(t.contains(PauliOperator::from_word("XX"), true));
  // XX * ZZ = -YY
  CHECK(t.contains(PauliOperator::from_word("YY"), true));
  CHECK_FALSE(t.contains(PauliOperator::from_word("YY")));
}

TEST_CASE("encoded product initial state generates the product stabilizers") {
  // Steane x [[4,2,2]]: encode the role-derived initial tableau through the
  // banded product encoder and compare groups with the boundary generators.
  ChainComplex c1 = steane();
  BinaryMatrix j4(4, 4);
  for (size_t r = 0; r < 4; ++r)
    for (size_t c = 0; c < 4; ++c) j4.set(r, c);
  ChainComplex c2{j4};

  CanonicalForm cf1 = canonical_form(c1);
  CanonicalForm cf2 = canonical_form(c2);
  ProductCode product = homological_product(c1, c2);

  InitialStateLayout layout =
      initial_state_layout(cf1.k, cf1.l, cf2.k, cf2.l);
  StabilizerTableau initial = layout_tableau(layout);
  CnotCircuit encoder =
      product_encoder(cf1.encoder_circuit, cf2.encoder_circuit, 7, 4);
  StabilizerTableau encoded = tableau_run(to_gates(encoder), initial);

  CHECK(encoded.group_equals(boundary_gens(product.boundary)));
}

TEST_CASE("transversal H preserves the doubled Steane stabilizer group") {
  DoubledCode doubled = double_code(css_from_boundary(steane()));
  const size_t n = doubled.code.n;

  StabilizerTableau t(n);
  std::vector<PauliOperator> gens;
  for (const auto& g : doubled.code.x_stabilizers) gens.push_back(g);
  for (const auto& g : doubled.code.z_stabilizers) gens.push_back(g);
  // an independent generating subset seeds the tableau
  StabilizerTableau seeded(n);
  RowSpan span({}, 2 * n);
  for (const auto& g : gens) {
    BitVector sym(2 * n);
    for (size_t q : g.x().support()) sym.set(q);
    for (size_t q : g.z().support()) sym.set(n + q);
    if (span.insert(sym)) seeded.add_row(g);
  }

  std::vector<Gate> layer;
  for (size_t q = 0; q < n; ++q) layer.push_back(Gate::h(uint32_t(q)));
  StabilizerTableau after = tableau_run(layer, seeded);
  CHECK(after.group_equals(gens));
}
