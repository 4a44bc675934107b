#include "dynsamp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dynsamp::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); }

json complex_list(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
  return arr;
}

json scalars(const std::vector<Scalar>& zs) {
  json arr = json::array();
  for (const auto& z : zs) arr.push_back(to_json(z));
  return arr;
}

}  // namespace

json to_json(Scalar z) { return json::array({z.real(), z.imag()}); }

Scalar scalar_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad("expected a number or an [re, im] pair, got " + j.dump());
}

json to_json(const Vector& v) { return complex_list(v); }

Vector vector_from_json(const json& j) {
  if (!j.is_array()) bad("expected a list of complex numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = scalar_from_json(j[i]);
  return v;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(complex_list(m.row(i).transpose()));
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nonempty list of rows");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Index>(i), static_cast<Index>(c)) = scalar_from_json(j[i][c]);
  }
  return m;
}

json to_json(const OperatorModel& op) {
  json j;
  j["kind"] = std::string(to_string(op.kind()));
  j["dim"] = op.dim();
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DiagonalForm>) j["data"] = to_json(f.eigenvalues);
        else if constexpr (std::is_same_v<T, CirculantForm>) j["data"] = to_json(f.kernel);
        else j["data"] = to_json(f.entries);
      },
      op.form());
  return j;
}

OperatorModel operator_from_json(const json& j, double tol_normal) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("data")) bad("operator needs \"kind\" and \"data\"");
  const std::string kind = j.at("kind").get<std::string>();
  auto check_dim = [&](Index n) {
    if (j.contains("dim") && j.at("dim").get<Index>() != n)
      bad("operator \"dim\" " + j.at("dim").dump() + " does not match data of size " + std::to_string(n));
  };
  if (kind == "diagonal") {
    Vector v = vector_from_json(j.at("data"));
    check_dim(v.size());
    return OperatorModel::diagonal(std::move(v));
  }
  if (kind == "circulant") {
    Vector v = vector_from_json(j.at("data"));
    check_dim(v.size());
    return OperatorModel::circulant(std::move(v));
  }
  if (kind == "dense") {
    Matrix m = matrix_from_json(j.at("data"));
    check_dim(m.rows());
    return OperatorModel::dense(std::move(m), tol_normal);
  }
  bad("unknown operator kind \"" + kind + "\"");
}

json to_json(const GeneratorSet& gens) {
  json j;
  j["generators"] = json::array();
  j["budgets"] = json::array();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    j["generators"].push_back(to_json(gens.generators()[i]));
    const Budget& b = gens.budgets()[i];
    if (b.is_infinite()) j["budgets"].push_back("inf");
    else j["budgets"].push_back(b.count());
  }
  j["truncation"] = gens.truncation();
  return j;
}

GeneratorSet generators_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators")) bad("generator set needs \"generators\"");
  std::vector<Vector> gens;
  for (const auto& g : j.at("generators")) gens.push_back(vector_from_json(g));
  std::vector<Budget> budgets;
  if (j.contains("budgets")) {
    for (const auto& b : j.at("budgets")) {
      if (b.is_string() && (b.get<std::string>() == "inf" || b.get<std::string>() == "infinity"))
        budgets.push_back(Budget::infinite());
      else if (b.is_number_integer())
        budgets.push_back(Budget::finite(b.get<long>()));
      else
        bad("budget must be a positive integer or \"inf\", got " + b.dump());
    }
  } else {
    budgets.assign(gens.size(), Budget::infinite());
  }
  std::optional<long> truncation;
  if (j.contains("truncation")) truncation = j.at("truncation").get<long>();
  return GeneratorSet(std::move(gens), std::move(budgets), truncation);
}

json to_json(const Symbol& symbol) {
  return std::visit(
      [](const auto& f) -> json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, KernelSymbol>)
          return {{"kind", "kernel"}, {"data", to_json(f.kernel)}};
        else if constexpr (std::is_same_v<T, CosineSymbol>)
          return {{"kind", "cosine"}, {"params", {{"offset", f.offset}, {"amplitude", f.amplitude}}}};
        else
          return {{"kind", "gaussian"}, {"params", {{"width", f.width}, {"terms", f.terms}}}};
      },
      symbol.form());
}

Symbol symbol_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) bad("symbol needs \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  const json params = j.value("params", json::object());
  if (kind == "kernel") return Symbol(KernelSymbol{vector_from_json(j.at("data"))});
  if (kind == "cosine") return Symbol(CosineSymbol{params.value("offset", 0.0), params.value("amplitude", 1.0)});
  if (kind == "gaussian") return Symbol(GaussianSymbol{params.value("width", 0.8), params.value("terms", 60)});
  bad("unknown symbol kind \"" + kind + "\"");
}

json to_json(const FrameReport& r) {
  return {{"complete", r.complete},   {"minimal", r.minimal},     {"parseval", r.parseval},
          {"alpha", r.alpha},         {"beta", r.beta},           {"numerical_rank", r.numerical_rank},
          {"dim", r.dim},             {"count", r.count},         {"tol", r.tol},
          {"parseval_tol", r.parseval_tol}};
}

json to_json(const SpectralCompleteness& r) {
  json spaces = json::array();
  for (const auto& e : r.eigenspaces)
    spaces.push_back({{"eigenvalue", to_json(e.eigenvalue)},
                      {"multiplicity", e.multiplicity},
                      {"projected_rank", e.projected_rank}});
  return {{"complete", r.complete}, {"eigenspaces", spaces}, {"deficient", r.deficient}};
}

json to_json(const CarlesonReport& r) {
  return {{"products", r.products}, {"infimum", r.infimum}, {"argmin", r.argmin}};
}

json to_json(const OnePointReport& r) {
  json j = {{"i_rank_one_projections", r.rank_one_projections},
            {"ii_inside_disk", r.inside_disk},
            {"iii_tail_consistent", r.tail_consistent},
            {"iv_carleson_separated", r.carleson_separated},
            {"v_ratios_bounded", r.ratios_bounded},
            {"all_pass", r.all_pass()},
            {"tail_max_modulus", r.tail_max_modulus},
            {"ratios", r.ratios},
            {"c1", r.c1},
            {"c2", r.c2}};
  j["carleson"] = r.carleson ? to_json(*r.carleson) : json(nullptr);
  j["frame"] = r.frame ? to_json(*r.frame) : json(nullptr);
  return j;
}

json to_json(const NecessaryReport& r) {
  json j = {{"intent", r.intent == Intent::Frame ? "frame" : "bessel"},
            {"violated", r.violated()},
            {"outside_closed_disk", scalars(r.outside_closed_disk)},
            {"on_or_outside_circle", scalars(r.on_or_outside_circle)},
            {"max_modulus", r.max_modulus},
            {"spectral_gap", r.spectral_gap},
            {"advisories", r.advisories}};
  j["max_multiplicity_excess"] = r.max_multiplicity_excess ? json(*r.max_multiplicity_excess) : json(nullptr);
  return j;
}

json to_json(const VandermondeSweep& r) {
  json j = {{"m", r.m},
            {"rows", r.rows},
            {"grid_size", r.grid.size()},
            {"sigma_max", r.sigma_max},
            {"sigma_min", r.sigma_min},
            {"exceptional", r.exceptional},
            {"complete_like", r.complete_like},
            {"frame_like", r.frame_like}};
  json xs = json::array();
  for (std::size_t k : r.exceptional) xs.push_back(r.grid[k]);
  j["exceptional_xi"] = xs;
  return j;
}

json to_json(const TrendReport& r) {
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"dim", p.dim},
                   {"iterates", p.iterates},
                   {"retained", p.retained},
                   {"dropped", p.dropped},
                   {"span_rank", p.span_rank},
                   {"alpha", p.alpha},
                   {"log10_alpha", p.log10_alpha},
                   {"beta", p.beta}});
  return {{"points", pts}, {"precision_digits", r.precision_digits}, {"strictly_decreasing", r.strictly_decreasing()}};
}

json to_json(const RecoveryReport& r) {
  return {{"f_hat", to_json(r.f_hat)},
          {"alpha", r.alpha},
          {"beta", r.beta},
          {"ill_conditioned", r.ill_conditioned},
          {"residual_norm", r.residual_norm}};
}

json to_json(const SpectralData& r) {
  json eigs = json::array();
  for (std::size_t i = 0; i < r.distinct_eigenvalues.size(); ++i)
    eigs.push_back({{"eigenvalue", to_json(r.distinct_eigenvalues[i])}, {"multiplicity", r.multiplicities[i]}});
  return {{"eigenvalues", eigs}, {"grouping_tolerance", r.grouping_tolerance}};
}

json to_json(const DefectOperator& d) {
  std::vector<double> ev(d.eigenvalues.data(), d.eigenvalues.data() + d.eigenvalues.size());
  return {{"source", d.source}, {"eigenvalues", ev}};
}

json to_json(const SampleSet& s) {
  json values = json::array();
  for (const auto& sm : s.samples)
    values.push_back({{"generator_id", sm.generator}, {"n", sm.power}, {"value", to_json(sm.value)}});
  json j = {{"operator", s.operator_ref}, {"values", values}};
  j["noise_sigma"] = s.noise_sigma ? json(*s.noise_sigma) : json(nullptr);
  j["seed"] = s.seed ? json(*s.seed) : json(nullptr);
  return j;
}

SampleSet samples_from_json(const json& j) {
  SampleSet s;
  s.operator_ref = j.value("operator", "");
  for (const auto& v : j.at("values"))
    s.samples.push_back({v.at("generator_id").get<std::size_t>(), v.at("n").get<long>(), scalar_from_json(v.at("value"))});
  if (j.contains("noise_sigma") && !j.at("noise_sigma").is_null()) s.noise_sigma = j.at("noise_sigma").get<double>();
  if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_index_value_csv(std::ostream& out, const std::vector<double>& values, const std::vector<double>& index) {
  out << "index,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (index.empty()) out << i;
    else out << format_double(index[i]);
    out << ',' << format_double(values[i]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const VandermondeSweep& sweep) {
  out << "xi,sigma,det_abs\n";
  for (std::size_t k = 0; k < sweep.grid.size(); ++k) {
    out << format_double(sweep.grid[k]) << ',' << format_double(sweep.sigmas[k]) << ',';
    if (sweep.dets) out << format_double((*sweep.dets)[k]);
    out << '\n';
  }
}

void write_samples_csv(std::ostream& out, const SampleSet& s) {
  out << "# sigma=" << (s.noise_sigma ? format_double(*s.noise_sigma) : std::string("none"))
      << " seed=" << (s.seed ? std::to_string(*s.seed) : std::string("none")) << '\n';
  out << "generator_id,n,re,im\n";
  for (const auto& sm : s.samples)
    out << sm.generator << ',' << sm.power << ',' << format_double(sm.value.real()) << ','
        << format_double(sm.value.imag()) << '\n';
}

SampleSet read_samples_csv(std::istream& in) {
  SampleSet s;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string token;
      while (meta >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq), val = token.substr(eq + 1);
        if (val == "none") continue;
        if (key == "sigma") s.noise_sigma = std::stod(val);
        else if (key == "seed") s.seed = std::stoull(val);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "generator_id,n,re,im") bad("unexpected samples CSV header: " + line);
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string gid, n, re, im;
    if (!std::getline(row, gid, ',') || !std::getline(row, n, ',') || !std::getline(row, re, ',') ||
        !std::getline(row, im, ','))
      bad("malformed samples CSV row: " + line);
    s.samples.push_back({std::stoul(gid), std::stol(n), Scalar(std::stod(re), std::stod(im))});
  }
  return s;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigInvalid, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace dynsamp::io
