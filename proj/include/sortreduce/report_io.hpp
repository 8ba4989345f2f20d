#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sortreduce/input_sets.hpp"
#include "sortreduce/projection.hpp"
#include "sortreduce/solver.hpp"

namespace sortreduce {

/// "d P" on the first line, then one entry per line.
std::string format_codeword_file(const DualCodeword& v);
/// Inverse of format_codeword_file; FormatError on any deviation.
DualCodeword parse_codeword_file(std::string_view text);

/// One or more integer vectors, in the matrix grammar of parse_matrix.
std::vector<IntVector> parse_vector_list(std::string_view text);
std::string format_vector(const IntVector& v);

/// Six significant digits, as the CLI prints every real.
std::string format_real(const Real& x);

/// Complete report as JSON. Integers that may exceed 64 bits are decimal strings.
nlohmann::json report_to_json(const RunReport& report);

/// Minimal CSV writer: fields containing separators or quotes are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add(std::vector<std::string> row);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Everything needed to reproduce a CLI run.
struct RunConfigFile {
  std::string algo = "simple";        // simple, q, codim2, codimk, general, block
  std::size_t dim = 0;
  std::string modulus;                // decimal
  std::string dist = "uniform";       // uniform or loguniform
  std::uint64_t seed = 0;             // codeword and harvest seed
  std::uint64_t input_seed = 0;       // input-set seed
  std::vector<InputRecipe> recipes;   // general / block inputs; empty means unit basis
  std::string preset;                 // "darmstadt40" / "darmstadt42": recipes derived from input_seed
  double scale = 1.0;                 // preset count multiplier
  std::vector<std::string> q_schedule;
  std::string q = "1";
  std::size_t k = 2;                  // co-dimension
  std::size_t k_max = 3;              // block arity
  std::optional<std::uint64_t> max_iterations;
  std::optional<std::uint64_t> cutoff_denominator;
  std::vector<std::string> codeword_paths;  // one per constraint; empty means generated from seed
  std::string basis_path;
  std::string report_path;
  std::string format = "json";

  friend bool operator==(const RunConfigFile&, const RunConfigFile&) = default;
};

bool operator==(const InputRecipe& a, const InputRecipe& b);

nlohmann::json to_json(const InputRecipe& r);
InputRecipe recipe_from_json(const nlohmann::json& j);
/// Parses "unit", "sparse:COUNT:SUPPORT:PLUS:MINUS" or "pattern:COUNT:v1,v2,...".
InputRecipe parse_recipe(std::string_view text, std::uint64_t seed);

nlohmann::json to_json(const RunConfigFile& c);
/// FormatError on missing or mistyped fields.
RunConfigFile config_from_json(const nlohmann::json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace sortreduce
