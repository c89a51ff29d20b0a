#include "homolattice/ftgate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace homolattice {

std::set<size_t> band_support(const PauliOperator& p, int axis,
                              const GridMap& grid) {
  if (axis != 1 && axis != 2) throw DimensionMismatch("axis must be 1 or 2");
  if (p.n() != grid.size())
    throw DimensionMismatch("Pauli size does not match the grid");
  std::set<size_t> bands;
  for (size_t q : p.support())
    bands.insert(axis == 1 ? grid.row_of(q) : grid.col_of(q));
  return bands;
}

namespace {

// Symplectic (x|z) concatenation for span membership.
BitVector symplectic_bits(const PauliOperator& p) {
  BitVector v(2 * p.n());
  for (size_t q : p.x().support()) v.set(q);
  for (size_t q : p.z().support()) v.set(p.n() + q);
  return v;
}

struct StabilizerFrame {
  std::vector<PauliOperator> gens;
  RowSpan span;

  explicit StabilizerFrame(std::vector<PauliOperator> generators)
      : gens(std::move(generators)) {
    std::vector<BitVector> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) rows.push_back(symplectic_bits(g));
    span = RowSpan(rows, gens.empty() ? 0 : 2 * gens.front().n());
  }

  bool detects(const PauliOperator& p) const {
    for (const auto& g : gens)
      if (!g.commutes_with(p)) return true;
    return false;
  }

  bool in_group(const PauliOperator& p) const {
    return span.contains(symplectic_bits(p));
  }

  ResidualClass classify(const PauliOperator& p) const {
    if (p.is_identity()) return ResidualClass::Identity;
    if (detects(p)) return ResidualClass::Detectable;
    if (in_group(p)) return ResidualClass::Stabilizer;
    return ResidualClass::Logical;
  }
};

std::vector<PauliOperator> boundary_generators(const BinaryMatrix& d) {
  std::vector<PauliOperator> gens;
  gens.reserve(2 * d.rows());
  for (size_t r = 0; r < d.rows(); ++r)
    gens.push_back(PauliOperator::x_type(d.row(r)));
  for (size_t c = 0; c < d.cols(); ++c)
    gens.push_back(PauliOperator::z_type(d.column(c)));
  return gens;
}

}  // namespace

BandCheckVerdict check_band_theorem(const ProductCode& product, int axis,
                                    size_t band_budget, CheckMode mode,
                                    const BandCheckOptions& options) {
  const GridMap& grid = product.grid;
  const size_t n_bands = axis == 1 ? grid.n1 : grid.n2;
  const size_t band_size = axis == 1 ? grid.n2 : grid.n1;
  StabilizerFrame frame(boundary_generators(product.boundary));

  BandCheckVerdict verdict;
  if (band_budget == 0) return verdict;  // vacuously true
  const size_t budget = std::min(band_budget, n_bands);

  auto qubits_of_bands = [&](const std::vector<size_t>& bands) {
    std::vector<size_t> qubits;
    for (size_t a : bands)
      for (size_t t = 0; t < band_size; ++t)
        qubits.push_back(axis == 1 ? grid.flat(a, t) : grid.flat(t, a));
    return qubits;
  };

  auto check_one = [&](const PauliOperator& p) {
    ++verdict.checked;
    if (p.is_identity()) return true;
    if (frame.detects(p)) return true;
    if (frame.in_group(p)) return true;
    verdict.pass = false;
    verdict.counterexample = p;
    return false;
  };

  if (mode == CheckMode::Exhaustive) {
    // count the enumeration before running it
    double combos = 1;
    for (size_t i = 0; i < budget; ++i)
      combos = combos * double(n_bands - i) / double(i + 1);
    const double per_set = std::pow(4.0, double(budget * band_size));
    if (combos * per_set > double(options.enumeration_cap))
      throw CapExceeded("exhaustive band enumeration exceeds the cap");

    std::vector<size_t> bands(budget);
    for (size_t i = 0; i < budget; ++i) bands[i] = i;
    while (true) {
      const auto qubits = qubits_of_bands(bands);
      // odometer over 4^|qubits| Paulis
      std::vector<unsigned> kinds(qubits.size(), 0);
      while (true) {
        PauliOperator p(grid.size());
        for (size_t i = 0; i < qubits.size(); ++i) {
          if (kinds[i] & 1) p.x().set(qubits[i]);
          if (kinds[i] & 2) p.z().set(qubits[i]);
        }
        if (!check_one(p)) return verdict;
        size_t i = qubits.size();
        bool rolled = true;
        while (i-- > 0) {
          if (++kinds[i] < 4) {
            rolled = false;
            break;
          }
          kinds[i] = 0;
        }
        if (rolled) break;
      }
      // next band combination
      size_t i = budget;
      bool done = false;
      while (i-- > 0) {
        if (bands[i] != i + n_bands - budget) {
          ++bands[i];
          for (size_t j = i + 1; j < budget; ++j) bands[j] = bands[j - 1] + 1;
          break;
        }
        if (i == 0) done = true;
      }
      if (done) break;
    }
    return verdict;
  }

  std::mt19937_64 rng(options.seed);
  for (uint64_t s = 0; s < options.samples; ++s) {
    // distinct random bands
    std::vector<size_t> bands;
    while (bands.size() < budget) {
      size_t b = rng() % n_bands;
      if (std::find(bands.begin(), bands.end(), b) == bands.end())
        bands.push_back(b);
    }
    const auto qubits = qubits_of_bands(bands);
    PauliOperator p(grid.size());
    bool nonzero = false;
    while (!nonzero) {
      for (size_t q : qubits) {
        const unsigned kind = rng() & 3;
        p.x().set(q, kind & 1);
        p.z().set(q, kind & 2);
        if (kind) nonzero = true;
      }
    }
    if (!check_one(p)) return verdict;
  }
  return verdict;
}

std::vector<ScheduledGate> GateSchedule::all_gates() const {
  std::vector<ScheduledGate> out;
  for (size_t s = 0; s < steps_.size(); ++s)
    for (const auto& g : steps_[s]) out.push_back({g, s + 1, phases_[s]});
  return out;
}

size_t GateSchedule::total_gate_count() const {
  size_t total = 0;
  for (const auto& step : steps_) total += step.size();
  return total;
}

size_t GateSchedule::protected_band(size_t q) const {
  return protected_axis() == 1 ? product_.grid.row_of(q)
                               : product_.grid.col_of(q);
}

PauliOperator GateSchedule::to_mid_frame(PauliOperator p, size_t step) const {
  if (step <= mid_point_) {
    for (size_t s = step + 1; s <= mid_point_; ++s)
      for (const auto& g : steps_[s - 1]) apply_gate(p, g);
  } else {
    for (size_t s = step; s > mid_point_; --s) {
      const auto& gates = steps_[s - 1];
      for (auto it = gates.rbegin(); it != gates.rend(); ++it)
        apply_gate(p, *it, true);
    }
  }
  return p;
}

PauliOperator GateSchedule::from_mid_frame(PauliOperator p, size_t step) const {
  if (step <= mid_point_) {
    for (size_t s = mid_point_; s > step; --s) {
      const auto& gates = steps_[s - 1];
      for (auto it = gates.rbegin(); it != gates.rend(); ++it)
        apply_gate(p, *it, true);
    }
  } else {
    for (size_t s = mid_point_ + 1; s <= step; ++s)
      for (const auto& g : steps_[s - 1]) apply_gate(p, g);
  }
  return p;
}

BinaryMatrix GateSchedule::boundary_at(size_t step) const {
  BinaryMatrix m = product_.boundary;
  for (size_t s = 1; s <= step; ++s)
    for (const auto& g : steps_[s - 1])
      if (g.kind == GateKind::CX) {
        // conjugation by the transvection: row c += row t, col t += col c
        m.xor_row_into(g.q1, g.q0);
        m.xor_col_into(g.q0, g.q1);
      }
  return m;
}

std::pair<BitVector, BitVector> GateSchedule::syndrome_at(
    const PauliOperator& error, size_t step) const {
  PauliOperator mid = to_mid_frame(error, step);
  return {mat_vec(mid_boundary_, mid.z()), vec_mat(mid.x(), mid_boundary_)};
}

std::vector<PauliOperator> GateSchedule::frame_generators(size_t step) const {
  std::vector<PauliOperator> gens = boundary_generators(mid_boundary_);
  if (step <= mid_point_) {
    for (size_t s = mid_point_; s > step; --s) {
      const auto& gates = steps_[s - 1];
      for (auto it = gates.rbegin(); it != gates.rend(); ++it)
        for (auto& gen : gens) apply_gate(gen, *it, true);
    }
  } else {
    for (size_t s = mid_point_ + 1; s <= step; ++s)
      for (const auto& g : steps_[s - 1])
        for (auto& gen : gens) apply_gate(gen, g);
  }
  return gens;
}

ResidualClass GateSchedule::classify(const PauliOperator& residual) const {
  if (residual.is_identity()) return ResidualClass::Identity;
  for (const auto& g : final_gens_)
    if (!g.commutes_with(residual)) return ResidualClass::Detectable;
  if (final_span_.contains(symplectic_bits(residual)))
    return ResidualClass::Stabilizer;
  return ResidualClass::Logical;
}

size_t GateSchedule::qubit_in_block(size_t block, size_t block_qubit) const {
  const size_t band = mid_.block_cols.at(block);
  return unencode_factor_ == 2 ? product_.grid.flat(block_qubit, band)
                               : product_.grid.flat(band, block_qubit);
}

GateSchedule build_protocol(const ProductCode& product, int unencode_factor,
                            const std::vector<Gate>& transversal_layer,
                            const ProtocolOptions& options) {
  if (unencode_factor != 1 && unencode_factor != 2)
    throw DimensionMismatch("unencode factor must be 1 or 2");

  GateSchedule sched(product);
  sched.unencode_factor_ = unencode_factor;
  sched.block_index_ = options.block_index;
  sched.protected_distance_ = options.protected_distance;

  const GridMap& grid = product.grid;
  const ChainComplex& unenc_complex =
      unencode_factor == 2 ? product.factor2 : product.factor1;
  const ChainComplex& prot_complex =
      unencode_factor == 2 ? product.factor1 : product.factor2;
  const CssCode& unenc_code =
      unencode_factor == 2 ? product.code2 : product.code1;

  // exact similarity witness, so the mid frame is half-canonical
  CanonicalForm cf = canonical_form(unenc_complex);
  const CnotCircuit& encoder = cf.encoder_circuit;
  const size_t bands = unencode_factor == 2 ? grid.n1 : grid.n2;

  auto place = [&](uint32_t q, size_t band) {
    return unencode_factor == 2 ? uint32_t(grid.flat(band, q))
                                : uint32_t(grid.flat(q, band));
  };

  // banded unencode in lockstep: one encoder gate (reversed) per step
  const CnotCircuit decoder_circ = encoder.reversed();
  for (const auto& g : decoder_circ.gates()) {
    std::vector<Gate> step;
    step.reserve(bands);
    for (size_t a = 0; a < bands; ++a)
      step.push_back(Gate::cx(place(g.control, a), place(g.target, a)));
    sched.steps_.push_back(std::move(step));
    sched.phases_.push_back(SchedulePhase::Unencode);
  }
  sched.mid_point_ = sched.steps_.size();

  // transversal layer; gates must stay inside one protected band or one
  // allowed band group
  if (!transversal_layer.empty()) {
    const size_t protected_bands = unencode_factor == 2 ? grid.n1 : grid.n2;
    std::vector<size_t> group_id(protected_bands, SIZE_MAX);
    for (size_t gi = 0; gi < options.band_groups.size(); ++gi)
      for (size_t b : options.band_groups[gi]) group_id.at(b) = gi;

    auto same_band_or_group = [&](size_t q0, size_t q1) {
      const size_t b0 = sched.protected_band(q0);
      const size_t b1 = sched.protected_band(q1);
      if (b0 == b1) return true;
      return group_id[b0] != SIZE_MAX && group_id[b0] == group_id[b1];
    };
    for (const auto& g : transversal_layer) {
      if (g.kind == GateKind::T) sched.has_t_ = true;
      if (g.two_qubit() && !same_band_or_group(g.q0, g.q1))
        throw NotTransversal(
            "transversal layer gate couples distinct protected bands");
    }
    sched.steps_.push_back(transversal_layer);
    sched.phases_.push_back(SchedulePhase::Transversal);
  }

  // banded re-encode
  for (const auto& g : encoder.gates()) {
    std::vector<Gate> step;
    step.reserve(bands);
    for (size_t a = 0; a < bands; ++a)
      step.push_back(Gate::cx(place(g.control, a), place(g.target, a)));
    sched.steps_.push_back(std::move(step));
    sched.phases_.push_back(SchedulePhase::Reencode);
  }

  // mid-frame structure: delta_protected (x) 1 + 1 (x) delta0  (factor 2
  // unencoded), or delta0 (x) 1 + 1 (x) delta_protected (factor 1)
  const BinaryMatrix& dp = prot_complex.boundary();
  if (unencode_factor == 2)
    sched.mid_boundary_ =
        tensor(dp, BinaryMatrix::identity(grid.n2)) +
        tensor(BinaryMatrix::identity(grid.n1), cf.delta0);
  else
    sched.mid_boundary_ =
        tensor(cf.delta0, BinaryMatrix::identity(grid.n2)) +
        tensor(BinaryMatrix::identity(grid.n1), dp);

  sched.protected_code_ = css_from_boundary(prot_complex);
  const size_t k_unenc = unenc_code.k;

  // logical blocks sit at the first k coordinates of the unencoded factor
  auto& mid = sched.mid_;
  const size_t n_prot = dp.rows();
  const size_t n = grid.size();
  std::vector<bool> is_block_gen_row(n, false), is_block_gen_col(n, false);
  for (size_t b = 0; b < k_unenc; ++b) {
    mid.block_cols.push_back(b);
    std::vector<size_t> row_gens, col_gens;
    for (size_t r = 0; r < n_prot; ++r) {
      if (!dp.row(r).any()) continue;
      const size_t gen =
          unencode_factor == 2 ? grid.flat(r, b) : grid.flat(b, r);
      row_gens.push_back(gen);
      is_block_gen_row[gen] = true;
    }
    for (size_t c = 0; c < n_prot; ++c) {
      if (!dp.column(c).any()) continue;
      const size_t gen =
          unencode_factor == 2 ? grid.flat(c, b) : grid.flat(b, c);
      col_gens.push_back(gen);
      is_block_gen_col[gen] = true;
    }
    mid.block_row_gens.push_back(std::move(row_gens));
    mid.block_col_gens.push_back(std::move(col_gens));
  }
  for (size_t g = 0; g < n; ++g) {
    if (!is_block_gen_row[g] && sched.mid_boundary_.row(g).any())
      mid.ancilla_row_gens.push_back(g);
    if (!is_block_gen_col[g] && sched.mid_boundary_.column(g).any())
      mid.ancilla_col_gens.push_back(g);
  }

  // ancilla recovery systems: X-type row gens constrain the z-part,
  // Z-type column gens constrain the x-part
  BinaryMatrix rows_mat(mid.ancilla_row_gens.size(), n);
  for (size_t i = 0; i < mid.ancilla_row_gens.size(); ++i)
    rows_mat.set_row(i, sched.mid_boundary_.row(mid.ancilla_row_gens[i]));
  BinaryMatrix cols_mat(mid.ancilla_col_gens.size(), n);
  for (size_t i = 0; i < mid.ancilla_col_gens.size(); ++i)
    cols_mat.set_row(i, sched.mid_boundary_.column(mid.ancilla_col_gens[i]));
  mid.solve_z_from_rows = Gf2Solver(rows_mat);
  mid.solve_x_from_cols = Gf2Solver(cols_mat);

  // final-frame stabilizer group for residual classification
  sched.final_gens_ = sched.frame_generators(sched.steps_.size());
  {
    std::vector<BitVector> rows;
    rows.reserve(sched.final_gens_.size());
    for (const auto& g : sched.final_gens_) rows.push_back(symplectic_bits(g));
    sched.final_span_ = RowSpan(rows, 2 * n);
  }
  return sched;
}

std::vector<Gate> transversal_layer(const ProductCode& product,
                                    int unencode_factor, GateKind kind,
                                    size_t block) {
  const CssCode& unenc_code =
      unencode_factor == 2 ? product.code2 : product.code1;
  if (block >= unenc_code.k)
    throw DimensionMismatch("block index exceeds the unencoded factor's k");
  const size_t n_prot = unencode_factor == 2 ? product.grid.n1 : product.grid.n2;
  std::vector<Gate> layer;
  layer.reserve(n_prot);
  for (size_t q = 0; q < n_prot; ++q) {
    const size_t flat = unencode_factor == 2 ? product.grid.flat(q, block)
                                             : product.grid.flat(block, q);
    layer.push_back({kind, uint32_t(flat)});
  }
  return layer;
}

std::vector<Gate> doubled_t_layer(const ProductCode& product,
                                  int unencode_factor, size_t block) {
  const CssCode& unenc_code =
      unencode_factor == 2 ? product.code2 : product.code1;
  if (block >= unenc_code.k)
    throw DimensionMismatch("block index exceeds the unencoded factor's k");
  const size_t n_prot = unencode_factor == 2 ? product.grid.n1 : product.grid.n2;
  if (n_prot % 4 != 0)
    throw DimensionMismatch("surviving factor is not a doubled code");
  const size_t base = n_prot / 4;
  auto place = [&](size_t q) {
    return uint32_t(unencode_factor == 2 ? product.grid.flat(q, block)
                                         : product.grid.flat(block, q));
  };
  // one [[4,2,2]] decode per position: the four-gate encoder reversed
  std::vector<Gate> layer;
  for (size_t j = 0; j < base; ++j) {
    layer.push_back(Gate::cx(place(3 * base + j), place(j)));
    layer.push_back(Gate::cx(place(base + j), place(2 * base + j)));
    layer.push_back(Gate::cx(place(3 * base + j), place(base + j)));
    layer.push_back(Gate::cx(place(j), place(2 * base + j)));
  }
  for (size_t j = 0; j < base; ++j) layer.push_back(Gate::t(place(j)));
  for (size_t j = 0; j < base; ++j) {
    layer.push_back(Gate::cx(place(j), place(2 * base + j)));
    layer.push_back(Gate::cx(place(3 * base + j), place(base + j)));
    layer.push_back(Gate::cx(place(base + j), place(2 * base + j)));
    layer.push_back(Gate::cx(place(3 * base + j), place(j)));
  }
  return layer;
}

std::vector<std::vector<size_t>> doubled_band_groups(size_t base_n) {
  std::vector<std::vector<size_t>> groups;
  groups.reserve(base_n);
  for (size_t j = 0; j < base_n; ++j)
    groups.push_back({j, base_n + j, 2 * base_n + j, 3 * base_n + j});
  return groups;
}

std::string format_schedule(const GateSchedule& schedule) {
  std::string out = "QUBITS " + std::to_string(schedule.n()) + "\n";
  for (size_t step = 1; step <= schedule.num_steps(); ++step) {
    out += "#STEP " + std::to_string(step) + "\n";
    std::string block = format_gates(schedule.step_gates(step), schedule.n());
    out += block.substr(block.find('\n') + 1);  // drop the QUBITS header
  }
  return out;
}

MappedSyndrome map_syndrome(const GateSchedule& schedule, size_t step,
                            const BitVector& row_bits,
                            const BitVector& col_bits) {
  if (step > schedule.num_steps())
    throw DimensionMismatch("step beyond the schedule");
  const size_t n = schedule.n();
  if (row_bits.size() != n || col_bits.size() != n)
    throw DimensionMismatch("syndrome bit counts do not match the generators");

  const auto& mid = schedule.mid_frame();
  MappedSyndrome out;
  for (size_t b = 0; b < mid.block_cols.size(); ++b) {
    BitVector xb(mid.block_row_gens[b].size());
    for (size_t i = 0; i < mid.block_row_gens[b].size(); ++i)
      if (row_bits.get(mid.block_row_gens[b][i])) xb.set(i);
    BitVector zb(mid.block_col_gens[b].size());
    for (size_t i = 0; i < mid.block_col_gens[b].size(); ++i)
      if (col_bits.get(mid.block_col_gens[b][i])) zb.set(i);
    out.block_x_bits.push_back(std::move(xb));
    out.block_z_bits.push_back(std::move(zb));
  }
  out.ancilla_row_bits = BitVector(mid.ancilla_row_gens.size());
  for (size_t i = 0; i < mid.ancilla_row_gens.size(); ++i)
    if (row_bits.get(mid.ancilla_row_gens[i])) out.ancilla_row_bits.set(i);
  out.ancilla_col_bits = BitVector(mid.ancilla_col_gens.size());
  for (size_t i = 0; i < mid.ancilla_col_gens.size(); ++i)
    if (col_bits.get(mid.ancilla_col_gens[i])) out.ancilla_col_bits.set(i);
  return out;
}

DecodeOutcome decode_step(const GateSchedule& schedule, size_t step,
                          const BitVector& row_bits, const BitVector& col_bits,
                          const Decoder& underlying) {
  const auto& mid = schedule.mid_frame();
  MappedSyndrome mapped = map_syndrome(schedule, step, row_bits, col_bits);

  DecodeOutcome outcome{PauliOperator(schedule.n()), false};
  PauliOperator mid_recovery(schedule.n());

  for (size_t b = 0; b < mid.block_cols.size(); ++b) {
    if (!mapped.block_x_bits[b].any() && !mapped.block_z_bits[b].any())
      continue;
    auto rec =
        underlying.decode(mapped.block_x_bits[b], mapped.block_z_bits[b]);
    if (!rec) {
      outcome.decoder_failure = true;
      continue;
    }
    for (size_t q = 0; q < rec->n(); ++q) {
      const size_t flat = schedule.qubit_in_block(b, q);
      if (rec->x().get(q)) mid_recovery.x().flip(flat);
      if (rec->z().get(q)) mid_recovery.z().flip(flat);
    }
  }

  if (mapped.ancilla_row_bits.any()) {
    auto z_part = mid.solve_z_from_rows.solve(mapped.ancilla_row_bits);
    if (!z_part)
      outcome.decoder_failure = true;
    else
      mid_recovery.z() ^= *z_part;
  }
  if (mapped.ancilla_col_bits.any()) {
    auto x_part = mid.solve_x_from_cols.solve(mapped.ancilla_col_bits);
    if (!x_part)
      outcome.decoder_failure = true;
    else
      mid_recovery.x() ^= *x_part;
  }

  outcome.recovery = schedule.from_mid_frame(std::move(mid_recovery), step);
  return outcome;
}

namespace {

struct FaultLocation {
  size_t step;        // 0 = initial idle, else gate-step index
  size_t gate_index;  // index within the step's gate list
  bool two_qubit;
  uint32_t q0, q1;
};

std::vector<FaultLocation> enumerate_locations(const GateSchedule& s) {
  std::vector<FaultLocation> locs;
  for (size_t q = 0; q < s.n(); ++q)
    locs.push_back({0, q, false, uint32_t(q), 0});
  for (size_t step = 1; step <= s.num_steps(); ++step) {
    const auto& gates = s.step_gates(step);
    for (size_t gi = 0; gi < gates.size(); ++gi) {
      const Gate& g = gates[gi];
      locs.push_back({step, gi, g.two_qubit(), g.q0,
                      g.two_qubit() ? g.q1 : 0});
    }
  }
  return locs;
}

void inject(PauliOperator& e, const FaultLocation& loc, unsigned kind) {
  if (loc.two_qubit) {
    // kind in 1..15: (kA, kB) != (0,0), each 2-bit (x,z)
    const unsigned ka = kind >> 2, kb = kind & 3;
    if (ka & 1) e.x().flip(loc.q0);
    if (ka & 2) e.z().flip(loc.q0);
    if (kb & 1) e.x().flip(loc.q1);
    if (kb & 2) e.z().flip(loc.q1);
  } else {
    if (kind & 1) e.x().flip(loc.q0);
    if (kind & 2) e.z().flip(loc.q0);
  }
}

struct RunOutcome {
  ResidualClass cls;
  bool decoder_failure;
  std::vector<size_t> fault_bands;  // one entry per faulted qubit
};

// Shared single-trial engine: propagate the frame through the schedule,
// injecting planned or sampled faults, correcting as requested.
template <typename FaultFn>
RunOutcome run_trial(const GateSchedule& s, const Decoder& dec,
                     CorrectAt correct_at, FaultFn&& fault_kind_at) {
  const size_t n = s.n();
  PauliOperator frame(n);
  RunOutcome out{ResidualClass::Identity, false, {}};
  size_t loc_index = 0;
  bool dirty = false;  // frame may be outside the stabilizer group

  auto maybe_fault = [&](const FaultLocation& loc) {
    const unsigned kind = fault_kind_at(loc_index);
    ++loc_index;
    if (kind == 0) return;
    inject(frame, loc, kind);
    dirty = true;
    out.fault_bands.push_back(s.protected_band(loc.q0));
    if (loc.two_qubit) out.fault_bands.push_back(s.protected_band(loc.q1));
  };

  for (size_t q = 0; q < n; ++q)
    maybe_fault({0, q, false, uint32_t(q), 0});

  auto correct_now = [&](size_t step) {
    auto [row_bits, col_bits] = s.syndrome_at(frame, step);
    if (!row_bits.any() && !col_bits.any()) {
      // in the normalizer of every generator; group membership is checked
      // once at the end
      dirty = false;
      return;
    }
    DecodeOutcome d = decode_step(s, step, row_bits, col_bits, dec);
    out.decoder_failure |= d.decoder_failure;
    frame *= d.recovery;
    auto [r2, c2] = s.syndrome_at(frame, step);
    dirty = r2.any() || c2.any();
  };

  for (size_t step = 1; step <= s.num_steps(); ++step) {
    const auto& gates = s.step_gates(step);
    for (size_t gi = 0; gi < gates.size(); ++gi) {
      const Gate& g = gates[gi];
      apply_gate(frame, g);
      maybe_fault({step, gi, g.two_qubit(), g.q0, g.two_qubit() ? g.q1 : 0});
    }
    if (correct_at == CorrectAt::EveryStep && dirty) correct_now(step);
  }
  if (correct_at == CorrectAt::End) correct_now(s.num_steps());

  out.cls = s.classify(frame);
  return out;
}

double wilson_lo(double phat, double nd, double z) {
  if (nd == 0) return 0;
  const double z2 = z * z;
  const double denom = 1 + z2 / nd;
  const double center = phat + z2 / (2 * nd);
  const double spread = z * std::sqrt(phat * (1 - phat) / nd + z2 / (4 * nd * nd));
  return std::max(0.0, (center - spread) / denom);
}

double wilson_hi(double phat, double nd, double z) {
  if (nd == 0) return 0;
  const double z2 = z * z;
  const double denom = 1 + z2 / nd;
  const double center = phat + z2 / (2 * nd);
  const double spread = z * std::sqrt(phat * (1 - phat) / nd + z2 / (4 * nd * nd));
  return std::min(1.0, (center + spread) / denom);
}

uint64_t mix_seed(uint64_t seed, uint64_t trial) {
  // splitmix64 over (seed, trial)
  uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

size_t fault_location_count(const GateSchedule& schedule) {
  return enumerate_locations(schedule).size();
}

PlannedRunResult planned_fault_run(const GateSchedule& schedule,
                                   const Decoder& underlying,
                                   CorrectAt correct_at,
                                   const std::vector<PlannedFault>& faults) {
  const size_t n_locs = fault_location_count(schedule);
  std::vector<unsigned> kinds(n_locs, 0);
  for (const auto& f : faults) {
    if (f.location >= n_locs)
      throw DimensionMismatch("fault location beyond the schedule");
    kinds[f.location] = f.kind;
  }
  RunOutcome out = run_trial(schedule, underlying, correct_at,
                             [&](size_t loc) { return kinds[loc]; });
  return {out.cls, out.decoder_failure};
}

RunStatistics fault_injection_run(const GateSchedule& schedule,
                                  const Decoder& underlying,
                                  const ErrorModel& model, uint64_t trials,
                                  CorrectAt correct_at, unsigned jobs) {
  if (trials == 0) throw DimensionMismatch("trials must be at least 1");
  if (!(model.p >= 0.0 && model.p <= 1.0))
    throw DimensionMismatch("fault probability must lie in [0,1]");
  const auto locations = enumerate_locations(schedule);
  const size_t n_locs = locations.size();

  struct Partial {
    uint64_t identity = 0, stabilizer = 0, detectable = 0, logical = 0;
    uint64_t decoder_failures = 0;
    std::map<size_t, uint64_t> band_histogram;
  };

  auto run_range = [&](uint64_t lo, uint64_t hi, Partial& part) {
    std::vector<unsigned> kinds(n_locs);
    for (uint64_t trial = lo; trial < hi; ++trial) {
      std::mt19937_64 rng(mix_seed(model.seed, trial));
      std::fill(kinds.begin(), kinds.end(), 0u);
      if (model.p >= 1.0) {
        for (size_t i = 0; i < n_locs; ++i)
          kinds[i] = locations[i].two_qubit ? 1 + rng() % 15 : 1 + rng() % 3;
      } else if (model.p > 0.0) {
        // geometric skipping over fault locations
        const double log1mp = std::log1p(-model.p);
        size_t i = 0;
        while (i < n_locs) {
          const double u =
              std::uniform_real_distribution<double>(0.0, 1.0)(rng);
          const double skip = std::floor(std::log(1.0 - u) / log1mp);
          if (skip >= double(n_locs - i)) break;
          i += size_t(skip);
          kinds[i] = locations[i].two_qubit ? 1 + rng() % 15 : 1 + rng() % 3;
          ++i;
        }
      }
      RunOutcome out = run_trial(schedule, underlying, correct_at,
                                 [&](size_t loc) { return kinds[loc]; });
      switch (out.cls) {
        case ResidualClass::Identity: ++part.identity; break;
        case ResidualClass::Stabilizer: ++part.stabilizer; break;
        case ResidualClass::Detectable: ++part.detectable; break;
        case ResidualClass::Logical: ++part.logical; break;
      }
      if (out.decoder_failure) ++part.decoder_failures;
      if (!out.fault_bands.empty()) {
        // attribute the trial to the band with the most faulted qubits;
        // ascending map order resolves ties to the lowest band index
        std::map<size_t, size_t> counts;
        for (size_t b : out.fault_bands) ++counts[b];
        size_t best_band = counts.begin()->first;
        size_t best = 0;
        for (auto [band, cnt] : counts)
          if (cnt > best) {
            best = cnt;
            best_band = band;
          }
        ++part.band_histogram[best_band];
      }
    }
  };

  std::vector<Partial> parts(std::max(1u, jobs));
  if (jobs <= 1) {
    run_range(0, trials, parts[0]);
  } else {
    std::vector<std::thread> threads;
    const uint64_t chunk = (trials + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const uint64_t lo = j * chunk, hi = std::min<uint64_t>(trials, lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back([&, lo, hi, j] { run_range(lo, hi, parts[j]); });
    }
    for (auto& t : threads) t.join();
  }

  RunStatistics stats;
  stats.trials = trials;
  stats.propagation_approximate = schedule.propagation_approximate();
  for (const auto& p : parts) {
    stats.identity += p.identity;
    stats.stabilizer += p.stabilizer;
    stats.detectable += p.detectable;
    stats.logical += p.logical;
    stats.decoder_failures += p.decoder_failures;
    for (auto [band, cnt] : p.band_histogram) stats.band_histogram[band] += cnt;
  }
  stats.failure_rate = double(stats.logical) / double(trials);
  stats.ci95_lo = wilson_lo(stats.failure_rate, double(trials), 1.959963985);
  stats.ci95_hi = wilson_hi(stats.failure_rate, double(trials), 1.959963985);
  return stats;
}

SweepResult single_fault_sweep(const GateSchedule& schedule,
                               const Decoder& underlying, CorrectAt correct_at,
                               size_t verify_mapping_stride) {
  const auto locations = enumerate_locations(schedule);
  SweepResult result;
  result.locations = locations.size();

  for (size_t loc = 0; loc < locations.size(); ++loc) {
    const unsigned max_kind = locations[loc].two_qubit ? 15 : 3;
    for (unsigned kind = 1; kind <= max_kind; ++kind) {
      ++result.runs;
      RunOutcome out =
          run_trial(schedule, underlying, correct_at,
                    [&](size_t li) { return li == loc ? kind : 0u; });
      if (out.decoder_failure) ++result.decoder_failures;
      switch (out.cls) {
        case ResidualClass::Identity:
        case ResidualClass::Stabilizer:
          ++result.fully_corrected;
          break;
        case ResidualClass::Detectable:
          ++result.detectable;
          if (!result.first_failure) result.first_failure = {loc, kind};
          break;
        case ResidualClass::Logical:
          ++result.logical_failures;
          if (!result.first_failure) result.first_failure = {loc, kind};
          break;
      }

      // dual-path syndrome check: the error-side shortcut (syndrome_at
      // back-propagates the error to the mid frame) against explicit
      // generator-side conjugation carried along with the run
      if (verify_mapping_stride &&
          (result.runs - 1) % verify_mapping_stride == 0) {
        PauliOperator frame(schedule.n());
        // mid-anchored generators, conjugated back to the initial point
        std::vector<PauliOperator> gens;
        {
          const BinaryMatrix& mid = schedule.mid_boundary();
          for (size_t r = 0; r < schedule.n(); ++r)
            gens.push_back(PauliOperator::x_type(mid.row(r)));
          for (size_t c = 0; c < schedule.n(); ++c)
            gens.push_back(PauliOperator::z_type(mid.column(c)));
          for (size_t s = schedule.mid_point(); s > 0; --s) {
            const auto& gates = schedule.step_gates(s);
            for (auto it = gates.rbegin(); it != gates.rend(); ++it)
              for (auto& gen : gens) apply_gate(gen, *it, true);
          }
        }
        size_t li = 0;
        auto compare_now = [&](size_t step) {
          BitVector direct_rows(schedule.n()), direct_cols(schedule.n());
          for (size_t g = 0; g < schedule.n(); ++g)
            if (!gens[g].commutes_with(frame)) direct_rows.set(g);
          for (size_t g = 0; g < schedule.n(); ++g)
            if (!gens[schedule.n() + g].commutes_with(frame))
              direct_cols.set(g);
          auto [mapped_rows, mapped_cols] = schedule.syndrome_at(frame, step);
          if (!(direct_rows == mapped_rows && direct_cols == mapped_cols))
            ++result.mapping_mismatches;
        };
        for (size_t q = 0; q < schedule.n(); ++q) {
          if (li == loc) inject(frame, locations[loc], kind);
          ++li;
        }
        compare_now(0);
        for (size_t step = 1; step <= schedule.num_steps(); ++step) {
          const auto& gates = schedule.step_gates(step);
          for (const auto& g : gates) {
            apply_gate(frame, g);
            for (auto& gen : gens) apply_gate(gen, g);
            if (li == loc) inject(frame, locations[loc], kind);
            ++li;
          }
          compare_now(step);
        }
      }
    }
  }
  return result;
}

std::vector<size_t> sparsity_profile(const GateSchedule& schedule) {
  // weights of the boundary-operator representation; single-qubit layer
  // gates do not move supports
  BinaryMatrix m = schedule.product().boundary;
  std::vector<size_t> profile;
  profile.push_back(sparsity(m));
  for (size_t step = 1; step <= schedule.num_steps(); ++step) {
    for (const auto& g : schedule.step_gates(step))
      if (g.kind == GateKind::CX) {
        m.xor_row_into(g.q1, g.q0);
        m.xor_col_into(g.q0, g.q1);
      }
    profile.push_back(sparsity(m));
  }
  return profile;
}

}  // namespace homolattice
