#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "homolattice/codes.hpp"
#include "homolattice/ftgate.hpp"
#include "homolattice/json_io.hpp"

using namespace homolattice;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapExceeded = 3;

uint64_t default_seed() {
  if (const char* env = std::getenv("HOMOLATTICE_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

// A code argument is a catalog name or a path to a boundary text file /
// CssCode JSON file.
CatalogCode resolve_code(const std::string& arg) {
  if (auto cat = catalog_lookup(arg)) return *cat;
  std::filesystem::path path(arg);
  if (!std::filesystem::exists(path)) {
    std::string names;
    for (const auto& n : catalog_names()) names += " " + n;
    throw std::runtime_error("unknown code \"" + arg +
                             "\"; catalog names:" + names +
                             ", or pass a boundary/.json file");
  }
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  CatalogCode out;
  out.name = path.stem().string();
  if (path.extension() == ".json") {
    out.code = css_code_from_json(text);
    if (out.code.symmetric()) out.complex = boundary_from_css(out.code);
  } else {
    ChainComplex c(parse_matrix(text));
    out.code = css_from_boundary(c);
    out.complex = std::move(c);
  }
  return out;
}

struct ProductSpec {
  CatalogCode a, b;
  std::string id;
};

// "prod147", "prod422", or "<name1>x<name2>" / two comma-separated names
ProductSpec resolve_product(std::string arg) {
  if (arg == "prod147") arg = "steane,rm15-padded";
  if (arg == "prod422") arg = "422,422";
  auto split = arg.find(',');
  if (split == std::string::npos) split = arg.find('x');
  if (split == std::string::npos)
    throw std::runtime_error(
        "product spec must be prod147, prod422 or <code1>,<code2>");
  ProductSpec spec{resolve_code(arg.substr(0, split)),
                   resolve_code(arg.substr(split + 1)), ""};
  spec.id = spec.a.name + ".x." + spec.b.name;
  return spec;
}

ProductCode make_product(const ProductSpec& spec) {
  if (!spec.a.complex)
    throw AsymmetricCode(spec.a.code.rank_x, spec.a.code.rank_z);
  if (!spec.b.complex)
    throw AsymmetricCode(spec.b.code.rank_x, spec.b.code.rank_z);
  return homological_product(*spec.a.complex, *spec.b.complex);
}

DistancePair factor_distances(const CssCode& code, size_t cap) {
  DistanceResult d = distance(code, cap);
  if (!d.dx || !d.dz)
    throw CapExceeded("factor distance exceeds the oracle cap " +
                      std::to_string(cap));
  return {*d.dx, *d.dz};
}

int cmd_build(const std::string& name, const std::string& out_dir) {
  CatalogCode code = resolve_code(name);
  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/" + code.name;
  write_file(base + ".code.json", css_code_to_json(code.code));
  std::cout << "wrote " << base << ".code.json\n";
  if (code.complex) {
    write_matrix_file(code.complex->boundary(), base + ".delta.txt");
    std::cout << "wrote " << base << ".delta.txt\n";
  }
  std::cout << "[[" << code.code.n << "," << code.code.k << "]]  X gens "
            << code.code.x_stabilizers.size() << "  Z gens "
            << code.code.z_stabilizers.size();
  if (code.transversal_t) std::cout << "  (transversal T)";
  std::cout << "\n";
  return 0;
}

int cmd_product(const std::string& spec_arg, const std::string& out_dir,
                size_t distance_cap) {
  ProductSpec spec = resolve_product(spec_arg);
  ProductCode p = make_product(spec);
  ProductParams params =
      product_params(p, factor_distances(p.code1, distance_cap),
                     factor_distances(p.code2, distance_cap));
  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/" + spec.id;
  write_matrix_file(p.boundary, base + ".delta.txt");
  write_file(base + ".report.json", product_report_to_json(params));
  std::cout << "wrote " << base << ".delta.txt\n";
  std::cout << "wrote " << base << ".report.json\n";
  std::cout << "n=" << p.grid.size() << " k=" << p.k
            << " sparsity=" << params.sparsity << " (bound "
            << params.sparsity_bound << ")\n";
  return 0;
}

int cmd_distance(const std::string& name, size_t cap, unsigned jobs) {
  CatalogCode code = resolve_code(name);
  DistanceResult d = distance(code.code, cap, jobs);
  auto show = [&](const char* label, const std::optional<size_t>& v) {
    if (v)
      std::cout << label << "=" << *v << "\n";
    else
      std::cout << label << ">" << cap << "\n";
  };
  show("dX", d.dx);
  show("dZ", d.dz);
  return 0;
}

int run_checks(const std::string& target, const std::vector<std::string>& checks,
               int axis, size_t budget, const std::string& mode,
               uint64_t samples, uint64_t cap, uint64_t seed,
               size_t distance_cap) {
  bool all_pass = true;
  auto report = [&](const std::string& check, bool pass) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << check << " " << target
              << "\n";
    all_pass &= pass;
  };

  for (const std::string& check : checks) {
    if (check == "boundary-squared") {
      CatalogCode code = resolve_code(target);
      if (!code.complex)
        throw std::runtime_error("no boundary operator for " + target);
      report(check,
             multiply(code.complex->boundary(), code.complex->boundary())
                 .is_zero());
    } else if (check == "params") {
      CatalogCode code = resolve_code(target);
      bool ok = code.code.k + code.code.rank_x + code.code.rank_z == code.code.n;
      if (code.complex)
        ok = ok && code.code.k + 2 * rank(code.complex->boundary()) == code.code.n;
      report(check, ok);
    } else if (check == "canonical") {
      CatalogCode code = resolve_code(target);
      CanonicalForm cf = canonical_form(code.code);
      BinaryMatrix rebuilt = multiply(
          multiply(cf.encoder_matrix, cf.delta0), invert(cf.encoder_matrix));
      bool ok = multiply(rebuilt, rebuilt).is_zero();
      const size_t t = sparsity(code.code);
      ok = ok && sparsity(rebuilt) <= t * t;
      if (code.complex) {
        CanonicalForm exact = canonical_form(*code.complex);
        ok = ok && multiply(multiply(exact.encoder_matrix, exact.delta0),
                            invert(exact.encoder_matrix)) ==
                       code.complex->boundary();
      }
      report(check, ok);
    } else if (check == "kernel-identity") {
      ProductCode p = make_product(resolve_product(target));
      bool ok = p.k == p.code1.k * p.code2.k;
      // ker(boundary) = ker(d1) (x) ker(d2) + im(boundary), by containment
      const auto k1 = kernel_basis(p.factor1.boundary());
      const auto k2 = kernel_basis(p.factor2.boundary());
      std::vector<BitVector> rhs;
      for (const auto& u : k1)
        for (const auto& v : k2) {
          BitVector t(p.grid.size());
          for (size_t i : u.support())
            for (size_t j : v.support()) t.set(p.grid.flat(i, j));
          rhs.push_back(std::move(t));
        }
      for (const auto& im : image_basis(p.boundary)) rhs.push_back(im);
      RowSpan rhs_span(rhs, p.grid.size());
      RowSpan ker_span(kernel_basis(p.boundary), p.grid.size());
      ok = ok && rhs_span.dim() == ker_span.dim();
      for (const auto& v : kernel_basis(p.boundary))
        ok = ok && rhs_span.contains(v);
      for (const auto& v : rhs) ok = ok && ker_span.contains(v);
      report(check, ok);
    } else if (check == "band-theorem") {
      ProductCode p = make_product(resolve_product(target));
      BandCheckOptions opt;
      opt.enumeration_cap = cap;
      opt.samples = samples;
      opt.seed = seed;
      BandCheckVerdict v = check_band_theorem(
          p, axis, budget,
          mode == "sampled" ? CheckMode::Sampled : CheckMode::Exhaustive, opt);
      report(check, v.pass);
    } else if (check == "distance-window") {
      ProductSpec spec = resolve_product(target);
      ProductCode p = make_product(spec);
      DistancePair d1 = factor_distances(p.code1, distance_cap);
      DistancePair d2 = factor_distances(p.code2, distance_cap);
      ProductParams params = product_params(p, d1, d2);
      DistanceResult dp = distance(css_from_boundary(ChainComplex(p.boundary)),
                                   std::min(params.window_x_hi, params.window_z_hi));
      bool ok = params.sparsity <= params.sparsity_bound;
      ok = ok && dp.dx && *dp.dx >= params.window_x_lo &&
           *dp.dx <= params.window_x_hi;
      ok = ok && dp.dz && *dp.dz >= params.window_z_lo &&
           *dp.dz <= params.window_z_hi;
      report(check, ok);
    } else {
      throw std::runtime_error("unknown check \"" + check + "\"");
    }
  }
  return all_pass ? 0 : kExitFailure;
}

struct ProtocolArgs {
  std::string product;
  int unencode = 2;
  std::string layer = "H";
  size_t block = 0;
  std::string sweep;  // "single-fault" or empty
  double p = 0.0;
  uint64_t trials = 1000;
  uint64_t seed = 0;
  std::string correct = "end";
  std::string out;
  std::string dump_schedule;
  unsigned jobs = 1;
  size_t distance_cap = 8;
};

CorrectAt parse_correct(const std::string& name) {
  if (name == "end") return CorrectAt::End;
  if (name == "every-step") return CorrectAt::EveryStep;
  if (name == "none") return CorrectAt::None;
  throw std::runtime_error("correct must be end, every-step or none");
}

int cmd_protocol(const ProtocolArgs& args) {
  ProductSpec spec = resolve_product(args.product);
  ProductCode p = make_product(spec);

  std::vector<Gate> layer;
  if (args.layer == "H")
    layer = transversal_layer(p, args.unencode, GateKind::H, args.block);
  else if (args.layer == "S")
    layer = transversal_layer(p, args.unencode, GateKind::S, args.block);
  else if (args.layer == "T")
    layer = transversal_layer(p, args.unencode, GateKind::T, args.block);
  else if (args.layer != "none")
    throw std::runtime_error("layer must be H, S, T or none");

  const CssCode& protected_code =
      args.unencode == 2 ? p.code1 : p.code2;
  DistancePair pd = factor_distances(protected_code, args.distance_cap);

  ProtocolOptions opt;
  opt.block_index = args.block;
  opt.protected_distance = std::min(pd.x, pd.z);
  GateSchedule schedule = build_protocol(p, args.unencode, layer, opt);
  Decoder decoder = build_decoder(schedule.protected_code(),
                                  DecoderStrategy::Lookup);
  if (!args.dump_schedule.empty()) {
    write_file(args.dump_schedule, format_schedule(schedule));
    std::cout << "wrote " << args.dump_schedule << "\n";
  }

  const std::string schedule_id = spec.id + ":unencode" +
                                  std::to_string(args.unencode) + ":layer" +
                                  args.layer + std::to_string(args.block);
  std::string json;
  int exit_code = 0;
  if (args.sweep == "single-fault") {
    SweepResult sweep =
        single_fault_sweep(schedule, decoder, parse_correct(args.correct), 97);
    json = sweep_report_to_json(schedule_id, sweep, args.correct,
                                schedule.propagation_approximate());
    std::cout << "locations=" << sweep.locations << " runs=" << sweep.runs
              << " logical_failures=" << sweep.logical_failures << "\n";
    if (sweep.logical_failures > 0) exit_code = kExitFailure;
  } else {
    RunRecord record;
    record.schedule_id = schedule_id;
    record.p = args.p;
    record.trials = args.trials;
    record.seed = args.seed;
    record.correct_at = args.correct;
    record.stats =
        fault_injection_run(schedule, decoder, ErrorModel{args.p, args.seed},
                            args.trials, parse_correct(args.correct), args.jobs);
    json = run_record_to_json(record);
    std::cout << "trials=" << record.trials
              << " logical=" << record.stats.logical
              << " failure_rate=" << record.stats.failure_rate << "\n";
  }
  if (!args.out.empty()) {
    write_file(args.out, json);
    std::cout << "wrote " << args.out << "\n";
  } else {
    std::cout << json;
  }
  return exit_code;
}

int cmd_profile(const std::string& product_arg, int unencode,
                const std::string& out) {
  ProductSpec spec = resolve_product(product_arg);
  ProductCode p = make_product(spec);
  GateSchedule schedule = build_protocol(p, unencode, {});
  std::vector<size_t> profile = sparsity_profile(schedule);
  std::string csv = "step,max_stabilizer_weight\n";
  for (size_t i = 0; i < profile.size(); ++i)
    csv += std::to_string(i) + "," + std::to_string(profile[i]) + "\n";
  if (!out.empty()) {
    write_file(out, csv);
    std::cout << "wrote " << out << " (" << profile.size() << " steps)\n";
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CSS codes from chain complexes, homological products and "
               "fault-tolerant partial-decode protocols"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read defaults from a TOML file");

  std::string build_name, build_out = ".";
  auto* build = app.add_subcommand("build", "emit a code's boundary and JSON");
  build->add_option("code", build_name, "catalog name or file")->required();
  build->add_option("--out-dir", build_out, "output directory");

  std::string prod_spec, prod_out = ".";
  size_t prod_cap = 8;
  auto* product = app.add_subcommand("product", "homological product report");
  product->add_option("codes", prod_spec, "prod147 | prod422 | a,b")->required();
  product->add_option("--out-dir", prod_out, "output directory");
  product->add_option("--distance-cap", prod_cap, "factor distance oracle cap");

  std::string dist_name;
  size_t dist_cap = 6;
  unsigned dist_jobs = 1;
  auto* dist = app.add_subcommand("distance", "brute-force distance oracle");
  dist->add_option("code", dist_name)->required();
  dist->add_option("--cap", dist_cap, "search cap");
  dist->add_option("--jobs", dist_jobs, "worker threads");

  std::string verify_target;
  std::vector<std::string> verify_checks;
  int verify_axis = 1;
  size_t verify_budget = 1;
  std::string verify_mode = "exhaustive";
  uint64_t verify_samples = 100000;
  uint64_t verify_cap = uint64_t(1) << 24;
  uint64_t verify_seed = default_seed();
  size_t verify_dcap = 8;
  auto* verify = app.add_subcommand("verify", "run invariant checks");
  verify->add_option("target", verify_target)->required();
  verify->add_option("--check", verify_checks, "checks to run")->required();
  verify->add_option("--axis", verify_axis, "band axis (1 or 2)");
  verify->add_option("--budget", verify_budget, "band budget");
  verify->add_option("--mode", verify_mode, "exhaustive | sampled");
  verify->add_option("--samples", verify_samples, "sample count");
  verify->add_option("--cap", verify_cap, "enumeration cap");
  verify->add_option("--seed", verify_seed, "sampling seed");
  verify->add_option("--distance-cap", verify_dcap, "distance oracle cap");

  ProtocolArgs pa;
  pa.seed = default_seed();
  auto* protocol = app.add_subcommand("protocol", "fault-tolerant gate runs");
  protocol->add_option("product", pa.product)->required();
  protocol->add_option("--unencode", pa.unencode, "factor to unencode (1|2)");
  protocol->add_option("--layer", pa.layer, "H | S | T | none");
  protocol->add_option("--block", pa.block, "logical block index");
  protocol->add_option("--sweep", pa.sweep, "single-fault");
  protocol->add_option("--p", pa.p, "physical error rate");
  protocol->add_option("--trials", pa.trials, "Monte Carlo trials");
  protocol->add_option("--seed", pa.seed, "RNG seed");
  protocol->add_option("--correct", pa.correct, "end | every-step | none");
  protocol->add_option("--out", pa.out, "run record path");
  protocol->add_option("--dump-schedule", pa.dump_schedule,
                       "write the gate schedule in circuit text format");
  protocol->add_option("--jobs", pa.jobs, "worker threads");
  protocol->add_option("--distance-cap", pa.distance_cap);

  std::string profile_product, profile_out;
  int profile_unencode = 2;
  auto* profile = app.add_subcommand("profile", "per-step stabilizer weights");
  profile->add_option("product", profile_product)->required();
  profile->add_option("--unencode", profile_unencode);
  profile->add_option("--out", profile_out, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*build) return cmd_build(build_name, build_out);
    if (*product) return cmd_product(prod_spec, prod_out, prod_cap);
    if (*dist) return cmd_distance(dist_name, dist_cap, dist_jobs);
    if (*verify)
      return run_checks(verify_target, verify_checks, verify_axis,
                        verify_budget, verify_mode, verify_samples, verify_cap,
                        verify_seed, verify_dcap);
    if (*protocol) return cmd_protocol(pa);
    if (*profile) return cmd_profile(profile_product, profile_unencode,
                                     profile_out);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
