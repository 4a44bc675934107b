#include "dynsamp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace dynsamp {

namespace fs = std::filesystem;
using io::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); }

// Reads config fields, filling in defaults, and records every value actually
// used so the report can embed the resolved configuration.
class Config {
 public:
  Config(const json& raw, fs::path dir) : raw_(raw), dir_(std::move(dir)) {
    if (!raw_.is_object()) invalid("config must be a JSON object");
  }

  json resolved = json::object();

  bool has(const std::string& key) const { return raw_.contains(key) && !raw_.at(key).is_null(); }
  const json& at(const std::string& key) const {
    if (!has(key)) invalid("missing required field \"" + key + "\"");
    return raw_.at(key);
  }

  double tolerance(const std::string& key, double fallback) {
    double v = fallback;
    if (raw_.contains("tolerances") && raw_.at("tolerances").contains(key))
      v = number(raw_.at("tolerances").at(key), "tolerances." + key);
    if (!(v > 0.0) || !std::isfinite(v)) invalid("tolerance \"" + key + "\" must be positive");
    resolved["tolerances"][key] = v;
    return v;
  }

  double real(const std::string& key, double fallback) {
    const double v = has(key) ? number(raw_.at(key), key) : fallback;
    resolved[key] = v;
    return v;
  }

  long integer(const std::string& key, long fallback) {
    long v = fallback;
    if (has(key)) {
      if (!raw_.at(key).is_number_integer()) invalid("\"" + key + "\" must be an integer");
      v = raw_.at(key).get<long>();
    }
    resolved[key] = v;
    return v;
  }

  std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) {
    if (has(key)) {
      fallback.clear();
      const json& j = raw_.at(key);
      if (j.is_string()) fallback.push_back(j.get<std::string>());
      else
        for (const auto& s : j) fallback.push_back(s.get<std::string>());
    }
    resolved[key] = fallback;
    return fallback;
  }

  // An inline object or {"file": "path"}.
  json document(const std::string& key) {
    json j = at(key);
    if (j.is_object() && j.contains("file") && j.size() == 1) {
      fs::path p = j.at("file").get<std::string>();
      if (p.is_relative()) p = dir_ / p;
      if (!fs::exists(p)) throw Error(ErrorKind::Io, "referenced file for \"" + key + "\" not found: " + p.string());
      j = io::read_json_file(p);
    }
    return j;
  }

  OperatorModel operator_model() {
    const double tol_normal = tolerance("normal", kDefaultNormalTolerance);
    OperatorModel op = io::operator_from_json(document("operator"), tol_normal);
    resolved["operator"] = io::to_json(op);
    return op;
  }

  GeneratorSet generators(Index dim) {
    GeneratorSet gens = io::generators_from_json(document("generators"));
    require_dim(dim, gens.dim(), "generators");
    if (has("truncation")) gens = gens.with_truncation(integer("truncation", gens.truncation()));
    resolved["generators"] = io::to_json(gens);
    return gens;
  }

  // A list of complex numbers, or {"dyadic": n} for 1 - 2^-j, j = 1..n.
  Vector lambdas(const std::string& key) {
    const json& j = at(key);
    Vector l;
    if (j.is_object() && j.contains("dyadic")) {
      const long n = j.at("dyadic").get<long>();
      if (n < 1 || n > 1000) invalid("dyadic length must be in [1, 1000]");
      l.resize(n);
      for (long k = 0; k < n; ++k) l(k) = 1.0 - std::ldexp(1.0, -static_cast<int>(k + 1));
    } else {
      l = io::vector_from_json(j);
    }
    if (l.size() == 0) invalid("\"" + key + "\" is empty");
    resolved[key] = io::to_json(l);
    return l;
  }

 private:
  static double number(const json& j, const std::string& key) {
    if (!j.is_number()) invalid("\"" + key + "\" must be a number");
    return j.get<double>();
  }

  const json& raw_;
  fs::path dir_;
};

struct Run {
  std::string kind;
  Config& cfg;
  fs::path out_dir;
  std::vector<fs::path> written;

  void write(const std::string& name, const std::string& text) {
    const fs::path p = out_dir / name;
    io::write_text_file(p, text);
    written.push_back(p);
  }
};

json artifact_names(const std::vector<fs::path>& paths) {
  json names = json::array();
  for (const auto& p : paths) names.push_back(p.filename().string());
  return names;
}

bool require_all(const std::vector<std::string>& required, const json& checks, json& result) {
  bool ok = true;
  for (const auto& name : required) {
    if (!checks.contains(name)) invalid("unknown requirement \"" + name + "\"");
    ok = ok && checks.at(name).get<bool>();
  }
  result["checks"] = checks;
  return ok;
}

bool run_analyze(Run& run, json& result) {
  Config& cfg = run.cfg;
  const OperatorModel op = cfg.operator_model();
  const GeneratorSet gens = cfg.generators(op.dim());
  const double tol = cfg.tolerance("rank", kDefaultRankTolerance);
  const double ptol = cfg.tolerance("parseval", kDefaultParsevalTolerance);
  std::optional<double> grouping;
  if (cfg.has("tolerances") && cfg.at("tolerances").contains("grouping"))
    grouping = cfg.tolerance("grouping", kDefaultGroupingFactor);
  const auto intent_name = cfg.strings("intent", {"bessel"});
  if (intent_name.size() != 1 || (intent_name[0] != "bessel" && intent_name[0] != "frame"))
    invalid("intent must be \"bessel\" or \"frame\"");
  const Intent intent = intent_name[0] == "frame" ? Intent::Frame : Intent::Bessel;

  const FrameReport frame = frame_bounds(iterate_system(op, gens), tol, ptol);
  const SpectralData spec = spectral_decompose(op, grouping);
  const SpectralCompleteness sc = completeness_spectral(spec, gens, tol);
  const NecessaryReport nec = necessary_conditions(spec, intent, tol, gens.size());

  result["frame"] = io::to_json(frame);
  result["spectral"] = io::to_json(spec);
  result["spectral_completeness"] = io::to_json(sc);
  result["necessary"] = io::to_json(nec);
  bool budgets_ok = true;
  const bool any_finite = std::any_of(gens.budgets().begin(), gens.budgets().end(),
                                      [](const Budget& b) { return !b.is_infinite(); });
  if (any_finite) {
    const BudgetCheck bc = validate_budget(op, gens, tol);
    budgets_ok = bc.valid;
    result["budget_check"] = {{"valid", bc.valid}, {"residual", bc.residual}};
    result["budget_check"]["witness"] = bc.witness ? json(*bc.witness) : json(nullptr);
  }

  const json checks = {{"complete", frame.complete},
                       {"minimal", frame.minimal},
                       {"parseval", frame.parseval},
                       {"spectral_complete", sc.complete},
                       {"necessary_conditions", !nec.violated()},
                       {"budgets_valid", budgets_ok}};
  return require_all(cfg.strings("require", {"complete"}), checks, result);
}

bool run_construct_parseval(Run& run, json& result) {
  Config& cfg = run.cfg;
  const OperatorModel op = cfg.operator_model();
  const double tol_range = cfg.tolerance("range", kDefaultRangeTolerance);
  const double tol = cfg.tolerance("rank", kDefaultRankTolerance);
  const double ptol = cfg.tolerance("parseval", kDefaultParsevalTolerance);

  GeneratorSet gens = parseval_generators(op, tol_range);
  if (cfg.has("truncation")) gens = gens.with_truncation(cfg.integer("truncation", gens.truncation()));
  const FrameReport frame = frame_bounds(iterate_system(op, gens), tol, ptol);

  result["defect"] = io::to_json(defect_operator(op));
  result["spectral_radius"] = spectral_radius(op);
  result["truncation"] = gens.truncation();
  result["generator_count"] = gens.size();
  result["frame"] = io::to_json(frame);
  run.write("parseval-generators.json", io::to_json(gens).dump(2) + "\n");
  return frame.parseval;
}

bool run_carleson(Run& run, json& result) {
  Config& cfg = run.cfg;
  const Vector l = cfg.lambdas("lambdas");
  const double min_delta = cfg.real("min_delta", 0.0);
  const CarlesonReport rep = carleson({l.data(), l.data() + l.size()});
  result["carleson"] = io::to_json(rep);

  std::ostringstream csv;
  io::write_index_value_csv(csv, rep.products);
  run.write("carleson-products.csv", csv.str());
  return rep.infimum > min_delta;
}

bool run_one_point(Run& run, json& result) {
  Config& cfg = run.cfg;
  OperatorModel op = cfg.has("operator") ? cfg.operator_model() : OperatorModel::diagonal(cfg.lambdas("lambdas"));
  if (!cfg.has("operator")) cfg.resolved["operator"] = io::to_json(op);

  Vector g;
  const auto* diag = std::get_if<DiagonalForm>(&op.form());
  if (cfg.has("g") && cfg.at("g").is_array()) {
    g = io::vector_from_json(cfg.at("g"));
  } else {
    if (!diag) invalid("a carleson generator needs a diagonal operator");
    const double c = cfg.has("g") ? cfg.at("g").value("carleson", 1.0) : 1.0;
    g = carleson_generator(diag->eigenvalues, c);
  }
  require_dim(op.dim(), g.size(), "one-point generator");
  cfg.resolved["g"] = io::to_json(g);

  OnePointOptions opts;
  opts.tol = cfg.tolerance("rank", kDefaultRankTolerance);
  opts.tail_epsilon = cfg.real("tail_epsilon", opts.tail_epsilon);
  opts.spread_limit = cfg.real("spread_limit", opts.spread_limit);
  const long truncation = cfg.integer("truncation", 512);

  const OnePointReport rep = one_point_frame_check(op, g, truncation, opts);
  result["one_point"] = io::to_json(rep);
  if (rep.carleson) {
    std::ostringstream csv;
    io::write_index_value_csv(csv, rep.carleson->products);
    run.write("one-point-check-carleson.csv", csv.str());
  }
  return rep.all_pass();
}

bool run_vandermonde(Run& run, json& result) {
  Config& cfg = run.cfg;
  const Symbol symbol = io::symbol_from_json(cfg.document("symbol"));
  cfg.resolved["symbol"] = io::to_json(symbol);
  const long m = cfg.integer("m", 3);
  const long rows = cfg.integer("rows", m);
  SweepOptions opts;
  opts.grid_size = static_cast<int>(cfg.integer("grid_size", opts.grid_size));
  opts.sigma_tol = cfg.tolerance("sigma", opts.sigma_tol);
  opts.alpha_threshold = cfg.tolerance("alpha", opts.alpha_threshold);

  const VandermondeSweep sweep = sigma_sweep(symbol, static_cast<int>(m), static_cast<int>(rows), opts);
  result["sweep"] = io::to_json(sweep);
  std::ostringstream csv;
  io::write_sweep_csv(csv, sweep);
  run.write("vandermonde-sweep.csv", csv.str());

  json checks = {{"complete_like", sweep.complete_like}, {"frame_like", sweep.frame_like}};
  if (cfg.has("circulant")) {
    const json& c = cfg.at("circulant");
    const Index n = c.at("n").get<Index>();
    const OperatorModel op = OperatorModel::circulant(symbol.kernel_on(n));
    const double tol = cfg.tolerance("rank", kDefaultRankTolerance);
    const FrameReport stride = frame_bounds(iterate_system(op, stride_generators(n, static_cast<int>(m))), tol);
    result["circulant"]["stride"] = io::to_json(stride);
    json resolved_c = {{"n", n}};
    if (c.contains("l")) {
      const int l = c.at("l").get<int>();
      resolved_c["l"] = l;
      const FrameReport lattice =
          frame_bounds(iterate_system(op, lattice_generators(n, static_cast<int>(m), l)), tol);
      result["circulant"]["lattice"] = io::to_json(lattice);
      checks["lattice_frame"] = lattice.alpha >= opts.alpha_threshold;
    }
    cfg.resolved["circulant"] = resolved_c;
  }
  return require_all(cfg.strings("require", {"complete_like"}), checks, result);
}

bool run_reconstruct(Run& run, json& result, std::uint64_t seed) {
  Config& cfg = run.cfg;
  const OperatorModel op = cfg.operator_model();
  const GeneratorSet gens = cfg.generators(op.dim());
  const double tol = cfg.tolerance("rank", kDefaultRankTolerance);
  const double tol_recovery = cfg.tolerance("recovery", 1e-8);
  const double sigma = cfg.real("noise_sigma", 0.0);
  if (sigma < 0.0) invalid("noise_sigma must be >= 0");

  Vector f;
  if (cfg.has("signal")) {
    f = io::vector_from_json(cfg.at("signal"));
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    f.resize(op.dim());
    for (Index i = 0; i < f.size(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      f(i) = Scalar(re, im);
    }
  }
  require_dim(op.dim(), f.size(), "signal");
  cfg.resolved["signal"] = io::to_json(f);

  const SampleSet clean = sample(op, f, gens);
  SampleSet s = clean;
  s.seed = seed;
  if (sigma > 0.0) {
    // the signal draws from `seed`; noise gets its own stream
    cfg.resolved["noise_seed"] = seed + 1;
    s = add_noise(clean, sigma, seed + 1);
  }
  const double noise_norm = (s.values() - clean.values()).norm();

  std::ostringstream csv;
  io::write_samples_csv(csv, s);
  run.write("reconstruct-samples.csv", csv.str());
  run.write("reconstruct-samples.json", io::to_json(s).dump(2) + "\n");

  try {
    const RecoveryReport rec = reconstruct(s, op, gens, tol);
    const double err = recovery_error(f, rec.f_hat);
    const double abs_err = (f - rec.f_hat).norm();
    result["recovery"] = io::to_json(rec);
    result["relative_error"] = err;
    result["absolute_error"] = abs_err;
    result["noise_norm"] = noise_norm;
    result["error_bound"] = rec.error_bound(noise_norm);
    if (sigma > 0.0) return abs_err <= rec.error_bound(noise_norm) * (1.0 + 1e-6) + tol_recovery * f.norm();
    return err <= tol_recovery;
  } catch (const IncompleteSystemError& e) {
    result["complete"] = false;
    result["rank"] = e.rank();
    result["certificate"] = io::to_json(e.certificate());
    return false;
  }
}

bool run_nonminimality(Run& run, json& result) {
  Config& cfg = run.cfg;
  const OperatorModel op = cfg.operator_model();
  const GeneratorSet gens = cfg.generators(op.dim());
  const double tol = cfg.tolerance("rank", kDefaultRankTolerance);
  std::vector<long> ms{2, 3};
  if (cfg.has("m")) {
    const json& j = cfg.at("m");
    ms = j.is_array() ? j.get<std::vector<long>>() : std::vector<long>{j.get<long>()};
  }
  cfg.resolved["m"] = ms;

  const FrameReport frame = frame_bounds(iterate_system(op, gens), tol);
  result["frame"] = io::to_json(frame);
  bool all = true;
  json probes = json::array();
  for (long m : ms) {
    const bool still_complete = nonminimality_probe(op, gens, m, tol);
    probes.push_back({{"m", m}, {"complete_without_1_to_m_minus_1", still_complete}});
    all = all && still_complete;
  }
  result["probes"] = probes;
  return all;
}

bool run_trend(Run& run, json& result) {
  Config& cfg = run.cfg;
  std::vector<TrendMember> family;
  if (cfg.has("members")) {
    for (const auto& m : cfg.at("members")) {
      OperatorModel op = io::operator_from_json(m.at("operator"), cfg.tolerance("normal", kDefaultNormalTolerance));
      family.push_back({op, io::vector_from_json(m.at("g"))});
    }
    json members = json::array();
    for (const auto& m : family) members.push_back({{"operator", io::to_json(m.op)}, {"g", io::to_json(m.g)}});
    cfg.resolved["members"] = members;
  } else {
    std::vector<long> dims{4, 8, 16, 32};
    if (cfg.has("dims")) dims = cfg.at("dims").get<std::vector<long>>();
    cfg.resolved["dims"] = dims;
    const double c = cfg.real("carleson_constant", 1.0);
    for (long n : dims) {
      if (n < 1 || n > 1000) invalid("trend dimensions must be in [1, 1000]");
      Vector l(n);
      for (long k = 0; k < n; ++k) l(k) = 1.0 - std::ldexp(1.0, -static_cast<int>(k + 1));
      family.push_back({OperatorModel::diagonal(l), carleson_generator(l, c)});
    }
  }

  TruncationRule rule;
  if (cfg.has("truncation_rule")) {
    const json& r = cfg.at("truncation_rule");
    const std::string k = r.value("kind", "default");
    if (k == "fixed") rule = TruncationRule::fixed(r.at("value").get<long>());
    else if (k == "per_dimension") rule = TruncationRule::per_dimension(r.at("value").get<long>());
    else if (k != "default") invalid("unknown truncation rule \"" + k + "\"");
  }
  cfg.resolved["truncation_rule"] = {
      {"kind", rule.kind == TruncationRule::Kind::Fixed          ? "fixed"
               : rule.kind == TruncationRule::Kind::PerDimension ? "per_dimension"
                                                                 : "default"},
      {"value", rule.value}};
  const double decay = cfg.real("min_decay_factor", 10.0);

  const TrendReport rep = normalized_trend(family, rule);
  result["trend"] = io::to_json(rep);
  std::vector<double> index, alpha;
  for (const auto& p : rep.points) {
    index.push_back(static_cast<double>(p.dim));
    alpha.push_back(p.alpha);
  }
  std::ostringstream csv;
  io::write_index_value_csv(csv, alpha, index);
  run.write("normframe-trend.csv", csv.str());

  const bool decays = !rep.points.empty() &&
                      rep.points.back().log10_alpha < rep.points.front().log10_alpha - std::log10(decay);
  result["decays_by_factor"] = decays;
  return rep.strictly_decreasing() && decays;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{"analyze",          "construct-parseval", "carleson",
                                              "one-point-check",  "vandermonde-sweep",  "reconstruct",
                                              "nonminimality",    "normframe-trend"};
  return kinds;
}

ExperimentOutcome run_experiment(const std::string& kind, const json& config, const fs::path& out_dir,
                                 std::optional<std::uint64_t> seed_override, const fs::path& config_dir) {
  if (std::find(experiment_kinds().begin(), experiment_kinds().end(), kind) == experiment_kinds().end())
    invalid("unknown experiment kind \"" + kind + "\"");
  Config cfg(config, config_dir);
  if (cfg.has("kind") && cfg.at("kind").get<std::string>() != kind)
    invalid("config kind \"" + cfg.at("kind").get<std::string>() + "\" does not match subcommand \"" + kind + "\"");
  cfg.resolved["kind"] = kind;

  std::uint64_t seed = 0;
  if (cfg.has("seed")) seed = cfg.at("seed").get<std::uint64_t>();
  if (seed_override) seed = *seed_override;
  cfg.resolved["seed"] = seed;

  Run run{kind, cfg, out_dir, {}};
  json result = json::object();
  bool pass = false;
  if (kind == "analyze") pass = run_analyze(run, result);
  else if (kind == "construct-parseval") pass = run_construct_parseval(run, result);
  else if (kind == "carleson") pass = run_carleson(run, result);
  else if (kind == "one-point-check") pass = run_one_point(run, result);
  else if (kind == "vandermonde-sweep") pass = run_vandermonde(run, result);
  else if (kind == "reconstruct") pass = run_reconstruct(run, result, seed);
  else if (kind == "nonminimality") pass = run_nonminimality(run, result);
  else pass = run_trend(run, result);

  ExperimentOutcome out;
  out.exit_code = pass ? kExitOk : kExitPropertyFails;
  const fs::path report_path = out_dir / (kind + "-report.json");
  out.report = {{"kind", kind},
                {"config", cfg.resolved},
                {"result", result},
                {"verdict", pass ? "pass" : "fail"},
                {"artifacts", artifact_names(run.written)}};
  io::write_text_file(report_path, out.report.dump(2) + "\n");
  out.written = std::move(run.written);
  out.written.push_back(report_path);
  return out;
}

}  // namespace dynsamp
