#include "asl/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <random>
#include <set>

#include "asl/correlation.hpp"
#include "asl/dirichlet.hpp"
#include "asl/error.hpp"
#include "asl/family.hpp"
#include "asl/parallel.hpp"
#include "asl/rmt.hpp"

#ifndef ASL_VERSION
#define ASL_VERSION "dev"
#endif

namespace asl {

using json = nlohmann::ordered_json;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  require(!text.empty(), "empty integer list");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string tok = text.substr(pos, end - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      require(used == tok.size(), "bad integer '" + tok + "'");
    } catch (const std::logic_error&) {
      throw PreconditionError("bad integer '" + tok + "'");
    }
    pos = end + 1;
  }
  return out;
}

namespace {

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::vector<std::pair<std::string, std::string>> parts;
      flatten(j[i], "", parts);
      for (const auto& part : parts) s += (s.empty() ? "" : ";") + part.second;
    }
    out.emplace_back(prefix, s);
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, format_number(j.get<double>()));
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    out.emplace_back(prefix, "");
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

class Emitter {
public:
  Emitter(std::ostream& out, bool csv) : out_(out), csv_(csv) {}

  void emit(const json& record) {
    if (!csv_) {
      out_ << record.dump() << '\n';
      return;
    }
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(record, "", cells);
    if (!header_done_) {
      for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_escape(cells[i].first);
      out_ << '\n';
      header_done_ = true;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_escape(cells[i].second);
    out_ << '\n';
  }

private:
  std::ostream& out_;
  bool csv_;
  bool header_done_ = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json base_record(const std::string& command, const json& config, const json& seed) {
  return json{{"tool", "asl"}, {"version", ASL_VERSION}, {"command", command}, {"config", config}, {"seed", seed}};
}

struct Options {
  std::string format = "jsonl";
  unsigned threads = 0;
};

void run_ltable(std::uint32_t p, int d, bool all, std::uint64_t sample, std::uint64_t seed, Emitter& emit) {
  const FamilySpec spec{p, d};
  spec.validate();
  require(all != (sample > 0), "ltable needs exactly one of --all or --sample K");
  std::vector<std::uint64_t> indices;
  if (all) {
    for (std::uint64_t i = 0; i < spec.size(); ++i) indices.push_back(i);
  } else {
    require(sample <= spec.size(), "sample size exceeds the family size " + std::to_string(spec.size()));
    std::mt19937_64 rng = make_stream(seed, 0);
    std::uniform_int_distribution<std::uint64_t> pick(0, spec.size() - 1);
    std::set<std::uint64_t> seen;
    while (indices.size() < sample) {
      const auto idx = pick(rng);
      if (seen.insert(idx).second) indices.push_back(idx);
    }
  }
  json config{{"p", p}, {"d", d}, {"mode", all ? "all" : "sample"}};
  if (!all) config["sample"] = sample;
  PowerSumKernel kernel(p, d, d);
  std::vector<cplx> sums(d);
  for (auto idx : indices) {
    const auto t0 = std::chrono::steady_clock::now();
    const ASPolynomial f = family_member(spec, idx);
    kernel.compute(f.coeffs(), d, sums);
    const LPolynomial L = l_polynomial_from_power_sums(p, sums);
    const FrobeniusClass theta = frobenius_class(L);
    json rec = base_record("ltable", config, all ? json(nullptr) : json(seed));
    rec["index"] = idx;
    rec["f"] = f.poly().to_string();
    json s = json::array(), c = json::array();
    for (const auto& v : sums) s.push_back(complex_json(v));
    for (const auto& v : L.c) c.push_back(complex_json(v));
    rec["power_sums"] = s;
    rec["l_coeffs"] = c;
    rec["implied_cd_abs"] = std::abs(L.implied_cd);
    rec["angles"] = theta.angles;
    rec["rh_residual"] = theta.rh_residual;
    rec["wall_seconds"] = seconds_since(t0);
    emit.emit(rec);
  }
}

void run_family_avg(std::uint32_t p, int d, const std::string& r, const std::string& t, const Options& opt,
                    Emitter& emit) {
  const auto t0 = std::chrono::steady_clock::now();
  const TraceProductSpec tp{parse_int_list(r), parse_int_list(t)};
  const auto rep = family_trace_average(FamilySpec{p, d}, tp, opt.threads);
  json rec = base_record("family-avg", json{{"p", p}, {"d", d}, {"r", tp.r}, {"t", tp.t}}, nullptr);
  rec["average"] = complex_json(rep.average);
  rec["predicted"] = rep.predicted;
  rec["error"] = rep.error;
  rec["q_scale"] = rep.q_scale;
  rec["tolerance"] = 10.0 * rep.q_scale;
  rec["within_tolerance"] = rep.error <= 10.0 * rep.q_scale;
  rec["family_size"] = rep.family_size;
  rec["wall_seconds"] = seconds_since(t0);
  emit.emit(rec);
}

void run_rmt_moment(int N, const std::string& r, std::uint64_t samples, std::uint64_t seed, const Options& opt,
                    Emitter& emit) {
  const auto t0 = std::chrono::steady_clock::now();
  const DSMomentSpec spec{parse_int_list(r), N};
  require(N >= 1, "matrix size N must be >= 1");
  json rec = base_record("rmt-moment", json{{"N", N}, {"r", spec.r}, {"samples", samples}}, seed);
  std::optional<double> exact;
  try {
    exact = ds_moment(spec);
    rec["exact"] = *exact;
  } catch (const PreconditionError& e) {
    rec["exact"] = nullptr;
    rec["exact_note"] = e.what();
  }
  rec["boundary"] = is_boundary(spec);
  const MCEstimate est = mc_moment(spec, samples, seed, opt.threads);
  rec["mc_mean"] = complex_json(est.mean);
  rec["mc_std_error"] = est.std_error;
  rec["mc_count"] = est.count;
  if (exact) {
    const double dev = std::abs(est.mean - *exact);
    rec["deviation_in_se"] = est.std_error > 0 ? dev / est.std_error : 0.0;
    rec["within_4se"] = dev <= 4.0 * est.std_error;
  }
  rec["wall_seconds"] = seconds_since(t0);
  emit.emit(rec);
}

void run_ncorr(int n, const std::string& sizes_text, const std::string& testfn, const std::string& mode,
               std::uint64_t samples, std::uint64_t seed, const Options& opt, Emitter& emit) {
  const auto t0 = std::chrono::steady_clock::now();
  require(mode == "exact" || mode == "mc", "--mode must be exact or mc");
  const auto sizes = parse_int_list(sizes_text);
  for (int N : sizes) require(N >= 1, "matrix sizes must be >= 1");
  const TestFunction tf = parse_testfn(testfn, n);
  const ConvergenceSummary summary = convergence_report(tf, sizes);
  json config{{"n", n}, {"N", sizes}, {"testfn", tf.description()}, {"mode", mode}};
  if (mode == "mc") config["samples"] = samples;
  for (const auto& rep : summary.reports) {
    json rec = base_record("ncorr", config, mode == "mc" ? json(seed) : json(nullptr));
    rec["N"] = rep.N;
    rec["exact"] = rep.exact;
    rec["limit"] = rep.limit;
    rec["difference"] = rep.difference;
    if (mode == "mc") {
      const MCEstimate est = mc_estimate(
          rep.N, samples, seed, [&tf](const UnitarySample& U) { return c_n_fourier(U, tf); }, opt.threads);
      rec["mc_mean"] = complex_json(est.mean);
      rec["mc_std_error"] = est.std_error;
      rec["mc_within_4se"] = std::abs(est.mean - rep.exact) <= 4.0 * est.std_error;
    }
    rec["strictly_decreasing"] = summary.strictly_decreasing;
    rec["calibrated_constant"] = summary.calibrated_constant;
    rec["within_band"] = summary.within_band;
    rec["wall_seconds"] = seconds_since(t0);
    emit.emit(rec);
  }
}

void run_orthogonality(std::uint32_t p, int d, const std::vector<std::string>& us, Emitter& emit) {
  const PrimeField F(p);
  for (const auto& text : us) {
    const auto t0 = std::chrono::steady_clock::now();
    const Poly u = parse_poly(text, F);
    const cplx avg = character_family_average(u, p, d);
    const ResidueClass cls = classify_residue(u, d);
    const double predicted = orthogonality_prediction(cls, p);
    json rec = base_record("orthogonality", json{{"p", p}, {"d", d}, {"u", u.to_string()}}, nullptr);
    rec["average"] = complex_json(avg);
    rec["case"] = cls == ResidueClass::Scalar ? "scalar" : cls == ResidueClass::TopTwist ? "top-twist" : "other";
    rec["predicted"] = predicted;
    rec["error"] = std::abs(avg - predicted);
    rec["wall_seconds"] = seconds_since(t0);
    emit.emit(rec);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Artin-Schreier L-functions and Haar-unitary trace statistics", "asl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ASL_VERSION);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));
    sub->add_option("--threads", opt.threads, "Worker threads (0 = available parallelism)");
  };

  std::uint32_t p = 0;
  int d = 0;
  bool all = false;
  std::uint64_t sample = 0;
  std::uint64_t seed = 1;
  auto* ltable = app.add_subcommand("ltable", "L-function data for members of F_d");
  ltable->add_option("--p", p, "Prime")->required();
  ltable->add_option("--d", d, "Degree")->required();
  ltable->add_flag("--all", all, "Every member of the family");
  ltable->add_option("--sample", sample, "Number of distinct random members");
  ltable->add_option("--seed", seed, "Sampling seed");
  add_common(ltable);

  std::string r_text, t_text;
  auto* favg = app.add_subcommand("family-avg", "Exact family average of a trace product");
  favg->add_option("--p", p, "Prime")->required();
  favg->add_option("--d", d, "Degree")->required();
  favg->add_option("--r", r_text, "Positive powers r_1,...,r_k")->required();
  favg->add_option("--t", t_text, "Conjugated powers t_1,...,t_l")->required();
  add_common(favg);

  int N = 0;
  std::uint64_t samples = 100000;
  auto* moment = app.add_subcommand("rmt-moment", "Haar trace moment: closed form and Monte Carlo");
  moment->add_option("--N", N, "Matrix size")->required();
  moment->add_option("--r", r_text, "Exponents r_1,...,r_n")->required()->allow_extra_args(false);
  moment->add_option("--samples", samples, "Monte Carlo samples");
  moment->add_option("--seed", seed, "Master seed");
  add_common(moment);

  int n = 2;
  std::string sizes_text, testfn = "triangle:a=0.8", mode = "exact";
  auto* ncorr = app.add_subcommand("ncorr", "n-level correlation: finite-N average vs limit");
  ncorr->add_option("--n", n, "Correlation order")->required();
  ncorr->add_option("--N", sizes_text, "Ascending matrix sizes, comma separated")->required();
  ncorr->add_option("--testfn", testfn, "triangle:a=<w> or bump:a=<w>");
  ncorr->add_option("--mode", mode, "exact or mc");
  ncorr->add_option("--samples", samples, "Monte Carlo samples (mc mode)");
  ncorr->add_option("--seed", seed, "Master seed (mc mode)");
  add_common(ncorr);

  std::vector<std::string> us;
  auto* orth = app.add_subcommand("orthogonality", "Family average of chi_f(u)");
  orth->add_option("--p", p, "Prime")->required();
  orth->add_option("--d", d, "Degree")->required();
  orth->add_option("--u", us, "Polynomial u as low-to-high coefficients, e.g. 1,1")->required();
  add_common(orth);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << ASL_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "asl: " << e.what() << '\n';
    return kExitPrecondition;
  }

  Emitter emit(out, opt.format == "csv");
  try {
    if (*ltable) run_ltable(p, d, all, sample, seed, emit);
    if (*favg) run_family_avg(p, d, r_text, t_text, opt, emit);
    if (*moment) run_rmt_moment(N, r_text, samples, seed, opt, emit);
    if (*ncorr) run_ncorr(n, sizes_text, testfn, mode, samples, seed, opt, emit);
    if (*orth) run_orthogonality(p, d, us, emit);
  } catch (const PreconditionError& e) {
    err << "asl: precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << "asl: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace asl
