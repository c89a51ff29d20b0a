#pragma once

#include <map>
#include <optional>
#include <set>

#include "homolattice/codes.hpp"
#include "homolattice/hprod.hpp"
#include "homolattice/tableau.hpp"

namespace homolattice {

/// Minimal set of bands of the given axis covering the support of p.
/// Axis-1 band a is {(a,j)}; axis-2 band a is {(i,a)}.
std::set<size_t> band_support(const PauliOperator& p, int axis,
                              const GridMap& grid);

enum class CheckMode { Exhaustive, Sampled };

struct BandCheckOptions {
  uint64_t enumeration_cap = uint64_t(1) << 24;
  uint64_t samples = 100000;
  uint64_t seed = 0;
};

struct BandCheckVerdict {
  bool pass = true;
  uint64_t checked = 0;
  std::optional<PauliOperator> counterexample;
};

/// Enumerates (or samples) Pauli operators supported on at most band_budget
/// bands of one axis and asserts each is detectable or a stabilizer.
/// An error on fewer than d_i bands of axis i can never be a nontrivial
/// logical, so the check passes whenever band_budget < d(that factor).
BandCheckVerdict check_band_theorem(const ProductCode& product, int axis,
                                    size_t band_budget, CheckMode mode,
                                    const BandCheckOptions& options = {});

enum class SchedulePhase : uint8_t { Unencode, Transversal, Reencode };

struct ScheduledGate {
  Gate gate;
  size_t step;  // gate-steps are 1-based; measurement points run 0..num_steps
  SchedulePhase phase;
};

enum class CorrectAt { None, End, EveryStep };
enum class ResidualClass : uint8_t { Identity, Stabilizer, Detectable, Logical };

struct ProtocolOptions {
  size_t block_index = 0;         // which logical block the layer targets
  size_t protected_distance = 0;  // 0 = not supplied
  // Bands the transversal layer may couple (e.g. the 4-qubit groups of a
  // doubled factor). Empty means strictly band-local layers.
  std::vector<std::vector<size_t>> band_groups;
};

/// The partial-decode protocol timeline: banded unencode of one factor, a
/// transversal layer on the surviving factor, banded re-encode. Gates are
/// emitted in lockstep, one underlying encoder gate per step replicated
/// across every band, so mid-protocol stabilizers keep the half-canonical
/// tensor form.
class GateSchedule {
 public:
  const ProductCode& product() const { return product_; }
  int unencoded_factor() const { return unencode_factor_; }
  int protected_axis() const { return 3 - unencode_factor_; }
  size_t n() const { return product_.grid.size(); }
  size_t num_steps() const { return steps_.size(); }
  size_t mid_point() const { return mid_point_; }
  size_t block_index() const { return block_index_; }
  size_t protected_distance() const { return protected_distance_; }
  bool propagation_approximate() const { return has_t_; }

  const std::vector<Gate>& step_gates(size_t step) const {
    return steps_.at(step - 1);
  }
  SchedulePhase step_phase(size_t step) const { return phases_.at(step - 1); }
  std::vector<ScheduledGate> all_gates() const;
  size_t total_gate_count() const;

  /// Band of the protected axis containing qubit q.
  size_t protected_band(size_t q) const;

  /// Boundary operator of the mid-protocol (half-canonical) frame.
  const BinaryMatrix& mid_boundary() const { return mid_boundary_; }
  /// One logical block's checks: the protected factor's code.
  const CssCode& protected_code() const { return protected_code_; }

  /// Conjugate a current-frame Pauli at measurement point `step` into the
  /// mid-protocol frame, and back.
  PauliOperator to_mid_frame(PauliOperator p, size_t step) const;
  PauliOperator from_mid_frame(PauliOperator p, size_t step) const;

  /// Boundary-operator representation at a measurement point, conjugated
  /// matrix-wise gate by gate from the product boundary (single-qubit layer
  /// gates leave it unchanged). Exact: boundary_at(0) is the product
  /// boundary and boundary_at(mid_point()) the half-canonical form.
  BinaryMatrix boundary_at(size_t step) const;

  /// Syndrome bits of a current-frame error against the instantaneous
  /// generators anchored at the mid frame (generator i is the i-th row or
  /// column of mid_boundary() conjugated to the step). Computed through the
  /// mid frame; conjugation preserves commutation, so these equal the
  /// directly measured bits.
  std::pair<BitVector, BitVector> syndrome_at(const PauliOperator& error,
                                              size_t step) const;

  /// The mid-anchored instantaneous generators themselves, conjugated gate
  /// by gate. frame_generators(mid_point()) equals the rows and columns of
  /// mid_boundary() exactly.
  std::vector<PauliOperator> frame_generators(size_t step) const;

  /// Classification of a final-frame residual against the final stabilizer
  /// group.
  ResidualClass classify(const PauliOperator& residual) const;

  // Mid-frame layout shared with the decoding routines.
  struct MidFrame {
    std::vector<size_t> block_cols;  // protected-axis coordinate per block
    // per logical block, global row/col generator indices of the protected
    // code's checks, in the protected code's generator order
    std::vector<std::vector<size_t>> block_row_gens;
    std::vector<std::vector<size_t>> block_col_gens;
    std::vector<size_t> ancilla_row_gens;
    std::vector<size_t> ancilla_col_gens;
    Gf2Solver solve_z_from_rows;  // recovery z-part from ancilla X-check bits
    Gf2Solver solve_x_from_cols;  // recovery x-part from ancilla Z-check bits
  };
  const MidFrame& mid_frame() const { return mid_; }

  /// Map a product-grid qubit to its index inside logical block b, and back.
  size_t qubit_in_block(size_t block, size_t block_qubit) const;

  friend GateSchedule build_protocol(const ProductCode&, int,
                                     const std::vector<Gate>&,
                                     const ProtocolOptions&);

 private:
  explicit GateSchedule(ProductCode product) : product_(std::move(product)) {}

  ProductCode product_;
  int unencode_factor_ = 2;
  size_t block_index_ = 0;
  size_t protected_distance_ = 0;
  bool has_t_ = false;
  size_t mid_point_ = 0;
  std::vector<std::vector<Gate>> steps_;
  std::vector<SchedulePhase> phases_;
  BinaryMatrix mid_boundary_;
  CssCode protected_code_;
  MidFrame mid_;
  std::vector<PauliOperator> final_gens_;  // conjugated through the schedule
  RowSpan final_span_;                     // symplectic span of final_gens_
};

GateSchedule build_protocol(const ProductCode& product, int unencode_factor,
                            const std::vector<Gate>& transversal_layer,
                            const ProtocolOptions& options = {});

/// Single-qubit layer of the given kind on one logical block of the
/// surviving factor.
std::vector<Gate> transversal_layer(const ProductCode& product,
                                    int unencode_factor, GateKind kind,
                                    size_t block);

/// Composite layer for a doubled surviving factor: unencode its [[4,2,2]]
/// sheets on the logical block, apply T on the first (inner-code) sheet,
/// re-encode. The 4-qubit groups couple distinct protected bands, so
/// schedules using this layer need doubled_band_groups().
std::vector<Gate> doubled_t_layer(const ProductCode& product,
                                  int unencode_factor, size_t block);

/// Band groups {j, n+j, 2n+j, 3n+j} of a doubled factor with base size n.
std::vector<std::vector<size_t>> doubled_band_groups(size_t base_n);

/// Schedule text: the circuit format with "#STEP i" markers.
std::string format_schedule(const GateSchedule& schedule);

struct PlannedFault {
  size_t location;  // index into the schedule's fault-location list
  unsigned kind;    // 1..3 single-qubit, 1..15 two-qubit
};

struct PlannedRunResult {
  ResidualClass residual;
  bool decoder_failure = false;
};

/// Number of fault locations (initial idles plus one per gate).
size_t fault_location_count(const GateSchedule& schedule);

/// Run one trial with the given faults injected, correcting as requested.
PlannedRunResult planned_fault_run(const GateSchedule& schedule,
                                   const Decoder& underlying,
                                   CorrectAt correct_at,
                                   const std::vector<PlannedFault>& faults);

/// Measured bits reinterpreted against the half-canonical frame: per-block
/// checks of the protected code plus ancilla checks. Values carry over
/// unchanged; only the labeling changes.
struct MappedSyndrome {
  std::vector<BitVector> block_x_bits;  // per block, protected-code X checks
  std::vector<BitVector> block_z_bits;
  BitVector ancilla_row_bits;
  BitVector ancilla_col_bits;
};

MappedSyndrome map_syndrome(const GateSchedule& schedule, size_t step,
                            const BitVector& row_bits,
                            const BitVector& col_bits);

struct DecodeOutcome {
  PauliOperator recovery;  // in the frame of the given step
  bool decoder_failure = false;
};

/// Decode measured bits at a step: per-block decoding with the protected
/// code's decoder, ancilla recovery by linear solve, and the combined
/// recovery conjugated back through the gate suffix into the step's frame.
DecodeOutcome decode_step(const GateSchedule& schedule, size_t step,
                          const BitVector& row_bits, const BitVector& col_bits,
                          const Decoder& underlying);

/// Location kinds follow the error model: after every gate (15 two-qubit
/// Paulis after a CX, 3 after a single-qubit gate) plus an initial idle
/// location per qubit (3 Paulis).
struct ErrorModel {
  double p = 0.0;
  uint64_t seed = 0;
};

struct RunStatistics {
  uint64_t trials = 0;
  uint64_t identity = 0;
  uint64_t stabilizer = 0;
  uint64_t detectable = 0;
  uint64_t logical = 0;
  uint64_t decoder_failures = 0;
  double failure_rate = 0.0;
  double ci95_lo = 0.0, ci95_hi = 0.0;
  std::map<size_t, uint64_t> band_histogram;
  bool propagation_approximate = false;
};

RunStatistics fault_injection_run(const GateSchedule& schedule,
                                  const Decoder& underlying,
                                  const ErrorModel& model, uint64_t trials,
                                  CorrectAt correct_at, unsigned jobs = 1);

struct SweepResult {
  uint64_t locations = 0;
  uint64_t runs = 0;
  uint64_t fully_corrected = 0;  // residual in the stabilizer group
  uint64_t detectable = 0;
  uint64_t logical_failures = 0;
  uint64_t decoder_failures = 0;
  uint64_t mapping_mismatches = 0;  // dual-path syndrome disagreements
  std::optional<std::pair<size_t, unsigned>> first_failure;  // location, kind
};

/// Exhaustive single-fault sweep over every location and Pauli kind.
/// verify_mapping_stride > 0 additionally replays every stride-th run with
/// explicitly conjugated per-step generators and compares syndromes at every
/// measurement point.
SweepResult single_fault_sweep(const GateSchedule& schedule,
                               const Decoder& underlying, CorrectAt correct_at,
                               size_t verify_mapping_stride = 0);

/// Max stabilizer generator weight after each measurement point, index 0
/// being the untouched product code.
std::vector<size_t> sparsity_profile(const GateSchedule& schedule);

}  // namespace homolattice
