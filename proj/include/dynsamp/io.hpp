#pragma once

// JSON documents and CSV tables for operators, generator sets, symbols,
// samples and reports. Complex numbers are [re, im] pairs; plain numbers are
// accepted on input as real values.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynsamp/analysis.hpp"
#include "dynsamp/construct.hpp"
#include "dynsamp/operators.hpp"
#include "dynsamp/sampling.hpp"
#include "dynsamp/subsample.hpp"

namespace dynsamp::io {

using nlohmann::json;

json to_json(Scalar z);
Scalar scalar_from_json(const json& j);
json to_json(const Vector& v);
Vector vector_from_json(const json& j);
json to_json(const Matrix& m);  // list of rows
Matrix matrix_from_json(const json& j);

/// {"kind": "diagonal"|"circulant"|"dense", "dim": N, "data": [...]}
json to_json(const OperatorModel& op);
OperatorModel operator_from_json(const json& j, double tol_normal = kDefaultNormalTolerance);

/// {"generators": [[...], ...], "budgets": [int | "inf", ...], "truncation": int}
json to_json(const GeneratorSet& gens);
GeneratorSet generators_from_json(const json& j);

/// {"kind": "kernel", "data": [...]} or {"kind": "cosine"|"gaussian", "params": {...}}
json to_json(const Symbol& symbol);
Symbol symbol_from_json(const json& j);

json to_json(const FrameReport& r);
json to_json(const SpectralCompleteness& r);
json to_json(const CarlesonReport& r);
json to_json(const OnePointReport& r);
json to_json(const NecessaryReport& r);
json to_json(const VandermondeSweep& r);
json to_json(const TrendReport& r);
json to_json(const RecoveryReport& r);
json to_json(const SpectralData& r);
json to_json(const DefectOperator& d);

json to_json(const SampleSet& s);
SampleSet samples_from_json(const json& j);

/// Shortest decimal that round-trips the double.
std::string format_double(double x);

/// "index,value" table with a header row.
void write_index_value_csv(std::ostream& out, const std::vector<double>& values,
                           const std::vector<double>& index = {});
/// "xi,sigma,det_abs"; det_abs is empty when rows != m.
void write_sweep_csv(std::ostream& out, const VandermondeSweep& sweep);
/// "# sigma=<s> seed=<n>" metadata line, then "generator_id,n,re,im".
void write_samples_csv(std::ostream& out, const SampleSet& s);
SampleSet read_samples_csv(std::istream& in);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dynsamp::io
