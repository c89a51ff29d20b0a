#include "homolattice/codes.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <thread>

namespace homolattice {

namespace {

constexpr const char* kDelta7 =
    "7 7\n"
    "1111000\n"
    "1100110\n"
    "1010101\n"
    "1001011\n"
    "0110011\n"
    "0101101\n"
    "0011110\n";

constexpr const char* kDelta15p =
    "21 21\n"
    "011010011001011|111000\n"
    "110000110011110|110010\n"
    "101001010101101|101100\n"
    "000011111111000|100100\n"
    "100110010110011|011001\n"
    "001100111100110|010010\n"
    "010101011010101|001001\n"
    "111111110000000|000000\n"
    "100101101001011|000000\n"
    "001111000011110|000010\n"
    "010110100101101|000100\n"
    "111100001111000|000100\n"
    "011001100110011|000001\n"
    "110011001100110|000010\n"
    "101010101010101|000001\n"
    "000000000000000|000000\n"
    "000000000000000|000000\n"
    "000000000000000|000000\n"
    "000000000000000|000000\n"
    "000000000000000|000000\n"
    "000000000000000|000000\n";

// Cell generators of the 15-qubit Reed-Muller code, in the qubit order that
// makes the padded spans agree with the 21-qubit reference boundary.
constexpr std::array<const char*, 4> kRm15Cells = {
    "100101101001011",
    "010101011010101",
    "001100111100110",
    "000011111111000",
};

}  // namespace

ChainComplex steane() { return ChainComplex(parse_matrix(kDelta7)); }

ChainComplex padded_reed_muller_21() {
  return ChainComplex(parse_matrix(kDelta15p));
}

CssCode reed_muller_15() {
  std::vector<BitVector> cells;
  for (const char* row : kRm15Cells) cells.push_back(BitVector::from_string(row));

  std::vector<BitVector> xg = cells;
  std::vector<BitVector> zg = cells;
  for (size_t a = 0; a < 4; ++a)
    for (size_t b = a + 1; b < 4; ++b) {
      BitVector face(15);
      for (size_t q = 0; q < 15; ++q)
        if (cells[a].get(q) && cells[b].get(q)) face.set(q);
      zg.push_back(std::move(face));
    }
  return make_css_code(15, std::move(xg), std::move(zg));
}

std::pair<CssCode, CnotCircuit> four_two_two() {
  CssCode code = make_css_code(4, {BitVector::from_string("1111")},
                               {BitVector::from_string("1111")});
  CnotCircuit enc(4);
  enc.add(0, 2);
  enc.add(3, 1);
  enc.add(1, 2);
  enc.add(3, 0);
  return {std::move(code), std::move(enc)};
}

namespace {

BitVector widen(const BitVector& v, size_t n) {
  BitVector out(n);
  for (size_t q : v.support()) out.set(q);
  return out;
}

}  // namespace

CssCode pad(const CssCode& code, size_t extra, bool allow_flip) {
  if (extra == 0) return code;
  const bool flip = code.rank_x > code.rank_z;
  if (flip && !allow_flip)
    throw Unsupported(
        "pad adds |+> qubits with X generators; this code has more X than Z "
        "generators (rotate it or pass allow_flip)");

  const size_t n = code.n + extra;
  std::vector<BitVector> xg, zg;
  for (const auto& p : code.x_stabilizers) xg.push_back(widen(p.x(), n));
  for (const auto& p : code.z_stabilizers) zg.push_back(widen(p.z(), n));
  for (size_t i = 0; i < extra; ++i) {
    BitVector single(n);
    single.set(code.n + i);
    (flip ? zg : xg).push_back(std::move(single));
  }
  return make_css_code(n, std::move(xg), std::move(zg));
}

CssCode rotate(const CssCode& code) {
  std::vector<BitVector> xg, zg;
  for (const auto& p : code.z_stabilizers) xg.push_back(p.z());
  for (const auto& p : code.x_stabilizers) zg.push_back(p.x());
  return make_css_code(code.n, std::move(xg), std::move(zg));
}

DoubledCode double_code(const CssCode& code) {
  const size_t n = code.n;
  const size_t N = 4 * n;
  auto embed = [&](const BitVector& sup, std::initializer_list<size_t> blocks) {
    BitVector v(N);
    for (size_t b : blocks)
      for (size_t q : sup.support()) v.set(b * n + q);
    return v;
  };

  // The six transformed stabilizer families, in order.
  std::vector<BitVector> xg, zg;
  for (const auto& p : code.x_stabilizers) xg.push_back(embed(p.x(), {0, 2}));
  for (const auto& p : code.z_stabilizers) xg.push_back(embed(p.z(), {1, 2}));
  for (size_t j = 0; j < n; ++j) {
    BitVector e(n);
    e.set(j);
    xg.push_back(embed(e, {0, 1, 2, 3}));
  }
  for (const auto& p : code.z_stabilizers) zg.push_back(embed(p.z(), {0, 3}));
  for (const auto& p : code.x_stabilizers) zg.push_back(embed(p.x(), {1, 3}));
  for (size_t j = 0; j < n; ++j) {
    BitVector e(n);
    e.set(j);
    zg.push_back(embed(e, {0, 1, 2, 3}));
  }

  DoubledCode out{make_css_code(N, std::move(xg), std::move(zg)),
                  CnotCircuit(N)};
  // one [[4,2,2]] encoder per qubit position, on wires (j, n+j, 2n+j, 3n+j)
  for (size_t j = 0; j < n; ++j) {
    out.encoder.add(uint32_t(j), uint32_t(2 * n + j));
    out.encoder.add(uint32_t(3 * n + j), uint32_t(n + j));
    out.encoder.add(uint32_t(n + j), uint32_t(2 * n + j));
    out.encoder.add(uint32_t(3 * n + j), uint32_t(j));
  }
  return out;
}

LogicalOperators logical_operators(const CssCode& code) {
  const size_t n = code.n;
  auto candidates = [&](const std::vector<BitVector>& commute_with,
                        const std::vector<BitVector>& modulo) {
    std::vector<BitVector> out;
    BinaryMatrix constraints =
        commute_with.empty() ? BinaryMatrix(0, n)
                             : BinaryMatrix::from_rows(commute_with, n);
    RowSpan span(modulo, n);
    for (const auto& v : kernel_basis(constraints))
      if (span.insert(v)) out.push_back(v);
    return out;
  };

  auto xbars = candidates(code.z_supports(), code.x_supports());
  auto zbars = candidates(code.x_supports(), code.z_supports());
  if (xbars.size() != code.k || zbars.size() != code.k)
    throw DimensionMismatch("logical operator count does not match k");

  // symplectic Gram-Schmidt pairing
  for (size_t i = 0; i < xbars.size(); ++i) {
    size_t match = zbars.size();
    for (size_t j = i; j < zbars.size(); ++j)
      if (xbars[i].dot(zbars[j])) {
        match = j;
        break;
      }
    if (match == zbars.size())
      throw DimensionMismatch("no anticommuting partner for a logical X");
    std::swap(zbars[i], zbars[match]);
    for (size_t j = 0; j < zbars.size(); ++j)
      if (j != i && xbars[i].dot(zbars[j])) zbars[j] ^= zbars[i];
    for (size_t m = i + 1; m < xbars.size(); ++m)
      if (xbars[m].dot(zbars[i])) xbars[m] ^= xbars[i];
  }

  LogicalOperators out;
  for (const auto& x : xbars) out.x.push_back(PauliOperator::x_type(x));
  for (const auto& z : zbars) out.z.push_back(PauliOperator::z_type(z));
  return out;
}

namespace {

// Minimum weight of a vector orthogonal to every row of `checks` but outside
// span(trivial), searched over weights 1..cap. Plain enumeration at small
// caps, syndrome-collision meet-in-the-middle above.
std::optional<size_t> min_logical_weight(const std::vector<BitVector>& checks,
                                         const std::vector<BitVector>& trivial,
                                         size_t n, size_t cap, unsigned jobs) {
  BinaryMatrix check_mat = checks.empty() ? BinaryMatrix(0, n)
                                          : BinaryMatrix::from_rows(checks, n);
  RowSpan trivial_span(trivial, n);

  auto is_logical = [&](const BitVector& v) {
    return !mat_vec(check_mat, v).any() && !trivial_span.contains(v);
  };

  if (cap <= 5) {
    // any logical at weight w with a fixed first support index?
    auto exists_with_first = [&](size_t w, size_t first) {
      if (w == 1) {
        BitVector v(n);
        v.set(first);
        return is_logical(v);
      }
      std::vector<size_t> comb(w - 1);
      for (size_t i = 0; i + 1 < w; ++i) comb[i] = first + 1 + i;
      if (comb.back() >= n) return false;
      while (true) {
        BitVector v(n);
        v.set(first);
        for (size_t idx : comb) v.set(idx);
        if (is_logical(v)) return true;
        size_t i = w - 1;
        bool done = false;
        while (i-- > 0) {
          if (comb[i] != i + n - (w - 1)) {
            ++comb[i];
            for (size_t j = i + 1; j + 1 < w; ++j) comb[j] = comb[j - 1] + 1;
            break;
          }
          if (i == 0) done = true;
        }
        if (done) return false;
      }
    };
    for (size_t w = 1; w <= std::min(cap, n); ++w) {
      std::atomic<bool> found{false};
      if (jobs <= 1) {
        for (size_t first = 0; first + w <= n && !found; ++first)
          if (exists_with_first(w, first)) found = true;
      } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> threads;
        for (unsigned j = 0; j < jobs; ++j)
          threads.emplace_back([&] {
            while (!found) {
              const size_t first = next.fetch_add(1);
              if (first + w > n) break;
              if (exists_with_first(w, first)) found = true;
            }
          });
        for (auto& t : threads) t.join();
      }
      if (found) return w;
    }
    return std::nullopt;
  }

  // meet in the middle: every weight <= cap vector splits into two halves of
  // weight <= ceil(cap/2); bucket half-vectors by syndrome and combine.
  const size_t half = std::min((cap + 1) / 2, n);
  std::map<std::string, std::vector<BitVector>> buckets;
  {
    std::vector<size_t> comb;
    BitVector zero(n);
    buckets[mat_vec(check_mat, zero).to_string()].push_back(zero);
    for (size_t w = 1; w <= half; ++w) {
      comb.assign(w, 0);
      for (size_t i = 0; i < w; ++i) comb[i] = i;
      while (true) {
        BitVector v(n);
        for (size_t idx : comb) v.set(idx);
        buckets[mat_vec(check_mat, v).to_string()].push_back(v);
        size_t i = w;
        bool done = false;
        while (i-- > 0) {
          if (comb[i] != i + n - w) {
            ++comb[i];
            for (size_t j = i + 1; j < w; ++j) comb[j] = comb[j - 1] + 1;
            break;
          }
          if (i == 0) done = true;
        }
        if (done) break;
      }
    }
  }

  std::optional<size_t> best;
  for (const auto& [syndrome, members] : buckets) {
    for (size_t a = 0; a < members.size(); ++a)
      for (size_t b = a; b < members.size(); ++b) {
        BitVector v = members[a] ^ members[b];
        if (!v.any()) continue;
        const size_t w = v.weight();
        if (w > cap || (best && w >= *best)) continue;
        if (!trivial_span.contains(v)) best = w;
      }
  }
  return best;
}

}  // namespace

DistanceResult distance(const CssCode& code, size_t cap, unsigned jobs) {
  DistanceResult out;
  out.cap = cap;
  out.dx = min_logical_weight(code.z_supports(), code.x_supports(), code.n,
                              cap, jobs);
  out.dz = min_logical_weight(code.x_supports(), code.z_supports(), code.n,
                              cap, jobs);
  return out;
}

BitVector x_stabilizer_bits(const CssCode& code, const PauliOperator& e) {
  BitVector bits(code.x_stabilizers.size());
  for (size_t i = 0; i < code.x_stabilizers.size(); ++i)
    if (code.x_stabilizers[i].x().dot(e.z())) bits.set(i);
  return bits;
}

BitVector z_stabilizer_bits(const CssCode& code, const PauliOperator& e) {
  BitVector bits(code.z_stabilizers.size());
  for (size_t i = 0; i < code.z_stabilizers.size(); ++i)
    if (code.z_stabilizers[i].z().dot(e.x())) bits.set(i);
  return bits;
}

namespace {

// Deterministic enumeration of Paulis by (weight, support lex, kind lex).
template <typename Fn>
bool for_each_pauli(size_t n, size_t max_weight, uint64_t budget, Fn&& fn) {
  uint64_t visited = 0;
  std::vector<size_t> comb;
  std::vector<unsigned> kinds;
  for (size_t w = 0; w <= std::min(max_weight, n); ++w) {
    if (w == 0) {
      if (++visited > budget) return false;
      if (!fn(PauliOperator(n))) return true;
      continue;
    }
    comb.assign(w, 0);
    for (size_t i = 0; i < w; ++i) comb[i] = i;
    while (true) {
      kinds.assign(w, 0);
      while (true) {
        PauliOperator p(n);
        for (size_t i = 0; i < w; ++i) {
          // kind order: X, Y, Z
          if (kinds[i] != 2) p.x().set(comb[i]);
          if (kinds[i] != 0) p.z().set(comb[i]);
        }
        if (++visited > budget) return false;
        if (!fn(p)) return true;
        size_t i = w;
        bool rolled = true;
        while (i-- > 0) {
          if (++kinds[i] < 3) {
            rolled = false;
            break;
          }
          kinds[i] = 0;
        }
        if (rolled) break;
      }
      size_t i = w;
      bool done = false;
      while (i-- > 0) {
        if (comb[i] != i + n - w) {
          ++comb[i];
          for (size_t j = i + 1; j < w; ++j) comb[j] = comb[j - 1] + 1;
          break;
        }
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  return true;
}

std::pair<std::string, std::string> syndrome_key(const CssCode& code,
                                                 const PauliOperator& e) {
  return {x_stabilizer_bits(code, e).to_string(),
          z_stabilizer_bits(code, e).to_string()};
}

bool lex_less(const PauliOperator& a, const PauliOperator& b) {
  const auto ax = a.x().to_string(), bx = b.x().to_string();
  if (ax != bx) return ax < bx;
  return a.z().to_string() < b.z().to_string();
}

}  // namespace

Decoder::Decoder(CssCode code, DecoderStrategy strategy,
                 size_t correctable_weight, uint64_t table_cap)
    : code_(std::move(code)),
      strategy_(strategy),
      t_c_(correctable_weight),
      search_budget_(table_cap) {
  if (strategy_ != DecoderStrategy::Lookup) return;
  const bool complete = for_each_pauli(
      code_.n, t_c_, table_cap, [&](const PauliOperator& e) {
        auto key = syndrome_key(code_, e);
        auto it = table_.find(key);
        if (it == table_.end()) {
          table_.emplace(std::move(key), e);
        } else {
          const auto& cur = it->second;
          if (e.weight() < cur.weight() ||
              (e.weight() == cur.weight() && lex_less(e, cur)))
            it->second = e;
        }
        return true;
      });
  if (!complete)
    throw CapExceeded("lookup table enumeration exceeds the configured cap");
}

std::optional<PauliOperator> Decoder::decode(const BitVector& x_stab_bits,
                                             const BitVector& z_stab_bits) const {
  if (x_stab_bits.size() != code_.x_stabilizers.size() ||
      z_stab_bits.size() != code_.z_stabilizers.size())
    throw DimensionMismatch("syndrome bit counts do not match generator lists");

  if (strategy_ == DecoderStrategy::Lookup) {
    auto it = table_.find({x_stab_bits.to_string(), z_stab_bits.to_string()});
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  // on-demand minimum-weight search with the lookup tie-break
  std::optional<PauliOperator> found;
  size_t found_weight = 0;
  for_each_pauli(code_.n, code_.n, search_budget_, [&](const PauliOperator& e) {
    if (found && e.weight() > found_weight) return false;  // stop
    if (x_stabilizer_bits(code_, e) == x_stab_bits &&
        z_stabilizer_bits(code_, e) == z_stab_bits) {
      if (!found || e.weight() < found_weight ||
          (e.weight() == found_weight && lex_less(e, *found))) {
        found = e;
        found_weight = e.weight();
      }
    }
    return true;
  });
  return found;
}

Decoder build_decoder(const CssCode& code, DecoderStrategy strategy,
                      std::optional<size_t> correctable_weight,
                      uint64_t table_cap) {
  size_t t_c;
  if (correctable_weight) {
    t_c = *correctable_weight;
  } else {
    DistanceResult d = distance(code, std::min<size_t>(code.n, 6));
    const size_t dmin = std::min(d.dx.value_or(d.cap + 1), d.dz.value_or(d.cap + 1));
    t_c = (dmin - 1) / 2;
  }
  return Decoder(code, strategy, t_c, table_cap);
}

std::optional<CatalogCode> catalog_lookup(const std::string& name) {
  if (name == "steane") {
    ChainComplex c = steane();
    return CatalogCode{name, css_from_boundary(c), c, std::nullopt, false};
  }
  if (name == "rm15") {
    return CatalogCode{name, reed_muller_15(), std::nullopt, std::nullopt, true};
  }
  if (name == "rm15-padded") {
    ChainComplex c = padded_reed_muller_21();
    return CatalogCode{name, css_from_boundary(c), c, std::nullopt, true};
  }
  if (name == "422") {
    auto [code, enc] = four_two_two();
    BinaryMatrix j4(4, 4);
    for (size_t r = 0; r < 4; ++r)
      for (size_t c = 0; c < 4; ++c) j4.set(r, c);
    return CatalogCode{name, std::move(code), ChainComplex(std::move(j4)),
                       std::move(enc), false};
  }
  if (name == "trivial1") {
    ChainComplex c{BinaryMatrix(1, 1)};
    return CatalogCode{name, css_from_boundary(c), c, std::nullopt, false};
  }
  if (name.rfind("double:", 0) == 0) {
    auto base = catalog_lookup(name.substr(7));
    if (!base) return std::nullopt;
    DoubledCode d = double_code(base->code);
    ChainComplex boundary = boundary_from_css(d.code);
    return CatalogCode{name, std::move(d.code), std::move(boundary),
                       std::move(d.encoder), false};
  }
  return std::nullopt;
}

std::vector<std::string> catalog_names() {
  return {"steane", "rm15", "rm15-padded", "422", "trivial1", "double:<name>"};
}

}  // namespace homolattice
