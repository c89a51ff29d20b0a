#include "homolattice/json_io.hpp"

#include <json.hpp>

namespace homolattice {

using ordered_json = nlohmann::ordered_json;

std::string css_code_to_json(const CssCode& code) {
  ordered_json j;
  j["n"] = code.n;
  j["k"] = code.k;
  auto words = [](const std::vector<PauliOperator>& gens, bool x_type) {
    std::vector<std::string> out;
    out.reserve(gens.size());
    for (const auto& g : gens)
      out.push_back(x_type ? g.x().to_string() : g.z().to_string());
    return out;
  };
  j["x_stabilizers"] = words(code.x_stabilizers, true);
  j["z_stabilizers"] = words(code.z_stabilizers, false);
  return j.dump(2) + "\n";
}

CssCode css_code_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  const size_t n = j.at("n").get<size_t>();
  std::vector<BitVector> xg, zg;
  for (const auto& s : j.at("x_stabilizers"))
    xg.push_back(BitVector::from_string(s.get<std::string>()));
  for (const auto& s : j.at("z_stabilizers"))
    zg.push_back(BitVector::from_string(s.get<std::string>()));
  CssCode code = make_css_code(n, std::move(xg), std::move(zg));
  if (j.contains("k") && j.at("k").get<size_t>() != code.k)
    throw DimensionMismatch("declared k does not match the generators");
  return code;
}

std::string product_report_to_json(const ProductParams& p) {
  ordered_json j;
  j["n1"] = p.n1;
  j["n2"] = p.n2;
  j["k1"] = p.k1;
  j["k2"] = p.k2;
  j["k"] = p.k;
  j["sparsity"] = p.sparsity;
  j["sparsity_bound"] = p.sparsity_bound;
  j["distance_window_x"] = {p.window_x_lo, p.window_x_hi};
  j["distance_window_z"] = {p.window_z_lo, p.window_z_hi};
  return j.dump(2) + "\n";
}

namespace {

ordered_json histogram_json(const std::map<size_t, uint64_t>& hist) {
  ordered_json h = ordered_json::object();
  for (auto [band, count] : hist) h[std::to_string(band)] = count;
  return h;
}

}  // namespace

std::string run_record_to_json(const RunRecord& r) {
  ordered_json j;
  j["schedule_id"] = r.schedule_id;
  j["p"] = r.p;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["correct_at"] = r.correct_at;
  j["counts"] = {{"identity", r.stats.identity},
                 {"stabilizer", r.stats.stabilizer},
                 {"detectable", r.stats.detectable},
                 {"logical", r.stats.logical}};
  j["decoder_failures"] = r.stats.decoder_failures;
  j["failure_rate"] = r.stats.failure_rate;
  j["ci95"] = {r.stats.ci95_lo, r.stats.ci95_hi};
  j["band_histogram"] = histogram_json(r.stats.band_histogram);
  j["propagation_approximate"] = r.stats.propagation_approximate;
  return j.dump(2) + "\n";
}

std::string sweep_report_to_json(const std::string& schedule_id,
                                 const SweepResult& s,
                                 const std::string& correct_at,
                                 bool propagation_approximate) {
  ordered_json j;
  j["schedule_id"] = schedule_id;
  j["sweep"] = "single-fault";
  j["correct_at"] = correct_at;
  j["locations"] = s.locations;
  j["runs"] = s.runs;
  j["counts"] = {{"fully_corrected", s.fully_corrected},
                 {"detectable", s.detectable},
                 {"logical", s.logical_failures}};
  j["decoder_failures"] = s.decoder_failures;
  j["mapping_mismatches"] = s.mapping_mismatches;
  j["propagation_approximate"] = propagation_approximate;
  return j.dump(2) + "\n";
}

}  // namespace homolattice
