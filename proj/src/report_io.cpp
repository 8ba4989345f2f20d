#include "sortreduce/report_io.hpp"

#include <fstream>
#include <sstream>

#include "sortreduce/errors.hpp"
#include "sortreduce/iter_model.hpp"
#include "sortreduce/lattice_tools.hpp"

namespace sortreduce {

using nlohmann::json;

std::string format_codeword_file(const DualCodeword& v) {
  std::string out = std::to_string(v.dim()) + " " + to_decimal(v.P()) + "\n";
  for (const BigInt& e : v.entries()) out += to_decimal(e) + "\n";
  return out;
}

DualCodeword parse_codeword_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_line = [&]() -> std::optional<std::string> {
    while (std::getline(in, line)) {
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto e = line.find_last_not_of(" \t\r");
      return line.substr(b, e - b + 1);
    }
    return std::nullopt;
  };
  auto header = next_line();
  if (!header) throw FormatError("codeword file is empty");
  std::istringstream hs(*header);
  std::string d_text, p_text, extra;
  if (!(hs >> d_text >> p_text) || (hs >> extra)) throw FormatError("codeword header must be 'd P'");
  const BigInt d = parse_integer_literal(d_text);
  if (d < 1 || !d.fits_ulong_p()) throw FormatError("codeword dimension must be a positive integer");
  const BigInt P = parse_integer_literal(p_text);
  if (P < 2) throw FormatError("codeword modulus must be at least 2");

  std::vector<BigInt> entries;
  while (auto l = next_line()) {
    if (l->find_first_of(" \t") != std::string::npos) throw FormatError("codeword entries go one per line");
    entries.push_back(parse_integer_literal(*l));
  }
  if (entries.size() != d.get_ui()) {
    throw FormatError("codeword file declares " + to_decimal(d) + " entries but has " + std::to_string(entries.size()));
  }
  for (const BigInt& e : entries) {
    if (e < 0 || e >= P) throw FormatError("codeword entry outside [0, P)");
  }
  try {
    return DualCodeword(std::move(entries), Modulus(P));
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  }
}

std::vector<IntVector> parse_vector_list(std::string_view text) {
  std::vector<IntVector> out;
  for (const auto& row : parse_matrix(text)) out.push_back(IntVector::from_values(std::span<const BigInt>(row)));
  return out;
}

std::string format_vector(const IntVector& v) {
  std::string out = "[";
  const auto values = v.to_values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += " ";
    out += to_decimal(values[i]);
  }
  return out + "]";
}

std::string format_real(const Real& x) { return format_significant(x, 6); }

json report_to_json(const RunReport& r) {
  json j;
  j["status"] = to_string(r.status);
  j["variant"] = to_string(r.variant);
  j["proj_kind"] = to_string(r.proj_kind);
  j["iterations"] = r.iterations;
  j["initial_list_size"] = r.initial_list_size;
  j["final_list_size"] = r.final_list_size;
  j["first_norm2"] = to_decimal(r.first_norm2);
  j["length"] = format_real(r.length_of_first);
  j["initial_norm2"] = to_decimal(r.initial_norm2);
  j["cutoff_denominator"] = r.cutoff_denominator;
  j["cutoff_root"] = to_decimal(r.cutoff_root);
  j["max_iterations"] = r.max_iterations;
  j["max_arity"] = r.max_arity;
  j["lineage_depth_of_first"] = r.lineage_depth_of_first;
  j["seed"] = r.seed;
  j["generator"] = r.generator;
  const auto [lo, hi] = predict_length_bounds(r.iterations, r.initial_length(), r.cutoff_root, r.max_arity);
  j["predicted_bounds"] = json{{"lower", format_real(lo)}, {"upper", format_real(hi)}};
  json outs = json::array();
  for (const IntVector& w : r.output_vectors) {
    json vals = json::array();
    for (const BigInt& x : w.to_values()) {
      if (x.fits_slong_p()) {
        vals.push_back(x.get_si());
      } else {
        vals.push_back(to_decimal(x));
      }
    }
    outs.push_back(vals);
  }
  j["output_count"] = r.output_vectors.size();
  j["output_vectors"] = outs;
  json trace = json::array();
  for (const IterationRecord& t : r.trace) {
    trace.push_back({{"list_size", t.list_size},
                     {"min_proj", to_decimal(t.min_proj)},
                     {"max_proj", to_decimal(t.max_proj)},
                     {"max_norm2", to_decimal(t.max_norm2)},
                     {"max_lineage_depth", t.max_lineage_depth},
                     {"reductions_fired", t.reductions_fired}});
  }
  j["trace"] = trace;
  return j;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw FormatError("CSV row width differs from the header");
  rows_.push_back(std::move(row));
}

std::string CsvWriter::str() const {
  auto field = [](const std::string& f) {
    if (f.find_first_of(",\"\n") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ",";
      out += field(row[i]);
    }
    out += "\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

bool operator==(const InputRecipe& a, const InputRecipe& b) {
  return a.kind == b.kind && a.count == b.count && a.support_size == b.support_size &&
         a.plus_count == b.plus_count && a.minus_count == b.minus_count && a.pattern_values == b.pattern_values &&
         a.seed == b.seed;
}

namespace {

const char* kind_name(RecipeKind k) {
  switch (k) {
    case RecipeKind::unit_basis: return "unit";
    case RecipeKind::sparse_signed: return "sparse";
    case RecipeKind::pattern: return "pattern";
  }
  return "?";
}

RecipeKind kind_from(const std::string& s) {
  if (s == "unit") return RecipeKind::unit_basis;
  if (s == "sparse") return RecipeKind::sparse_signed;
  if (s == "pattern") return RecipeKind::pattern;
  throw FormatError("unknown recipe kind '" + s + "'");
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
  BigInt v = parse_integer_literal(s);
  if (v < 0 || !v.fits_ulong_p()) throw FormatError(std::string(what) + " must be a nonnegative 64-bit integer");
  return v.get_ui();
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get<T>(j, key);
}

}  // namespace

json to_json(const InputRecipe& r) {
  return {{"kind", kind_name(r.kind)},       {"count", r.count},
          {"support_size", r.support_size},  {"plus_count", r.plus_count},
          {"minus_count", r.minus_count},    {"pattern_values", r.pattern_values},
          {"seed", r.seed}};
}

InputRecipe recipe_from_json(const json& j) {
  InputRecipe r;
  r.kind = kind_from(get<std::string>(j, "kind"));
  r.count = get<std::uint64_t>(j, "count");
  r.support_size = get<std::uint32_t>(j, "support_size");
  r.plus_count = get<std::uint32_t>(j, "plus_count");
  r.minus_count = get<std::uint32_t>(j, "minus_count");
  r.pattern_values = get<std::vector<std::int64_t>>(j, "pattern_values");
  r.seed = get<std::uint64_t>(j, "seed");
  return r;
}

InputRecipe parse_recipe(std::string_view text, std::uint64_t seed) {
  const auto parts = split(text, ':');
  InputRecipe r;
  r.seed = seed;
  r.kind = kind_from(parts[0]);
  switch (r.kind) {
    case RecipeKind::unit_basis:
      if (parts.size() != 1) throw FormatError("'unit' takes no parameters");
      break;
    case RecipeKind::sparse_signed:
      if (parts.size() != 5) throw FormatError("expected sparse:COUNT:SUPPORT:PLUS:MINUS");
      r.count = parse_u64(parts[1], "count");
      r.support_size = static_cast<std::uint32_t>(parse_u64(parts[2], "support"));
      r.plus_count = static_cast<std::uint32_t>(parse_u64(parts[3], "plus count"));
      r.minus_count = static_cast<std::uint32_t>(parse_u64(parts[4], "minus count"));
      break;
    case RecipeKind::pattern: {
      if (parts.size() != 3) throw FormatError("expected pattern:COUNT:v1,v2,...");
      r.count = parse_u64(parts[1], "count");
      for (const std::string& v : split(parts[2], ',')) {
        BigInt x = parse_integer_literal(v);
        if (!x.fits_slong_p()) throw FormatError("pattern value out of range");
        r.pattern_values.push_back(x.get_si());
      }
      r.support_size = static_cast<std::uint32_t>(r.pattern_values.size());
      break;
    }
  }
  return r;
}

json to_json(const RunConfigFile& c) {
  json recipes = json::array();
  for (const InputRecipe& r : c.recipes) recipes.push_back(to_json(r));
  json j = {{"algo", c.algo},
            {"dim", c.dim},
            {"modulus", c.modulus},
            {"dist", c.dist},
            {"seed", c.seed},
            {"input_seed", c.input_seed},
            {"recipes", recipes},
            {"preset", c.preset},
            {"scale", c.scale},
            {"q_schedule", c.q_schedule},
            {"q", c.q},
            {"k", c.k},
            {"k_max", c.k_max},
            {"max_iterations", nullptr},
            {"cutoff_denominator", nullptr},
            {"codeword_paths", c.codeword_paths},
            {"basis_path", c.basis_path},
            {"report_path", c.report_path},
            {"format", c.format}};
  if (c.max_iterations) j["max_iterations"] = *c.max_iterations;
  if (c.cutoff_denominator) j["cutoff_denominator"] = *c.cutoff_denominator;
  return j;
}

RunConfigFile config_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("run configuration must be a JSON object");
  RunConfigFile c;
  c.algo = get<std::string>(j, "algo");
  c.dim = get<std::size_t>(j, "dim");
  c.modulus = get<std::string>(j, "modulus");
  c.dist = get<std::string>(j, "dist");
  c.seed = get<std::uint64_t>(j, "seed");
  c.input_seed = get<std::uint64_t>(j, "input_seed");
  for (const json& r : get<json>(j, "recipes")) c.recipes.push_back(recipe_from_json(r));
  c.preset = get<std::string>(j, "preset");
  c.scale = get<double>(j, "scale");
  c.q_schedule = get<std::vector<std::string>>(j, "q_schedule");
  c.q = get<std::string>(j, "q");
  c.k = get<std::size_t>(j, "k");
  c.k_max = get<std::size_t>(j, "k_max");
  c.max_iterations = get_optional<std::uint64_t>(j, "max_iterations");
  c.cutoff_denominator = get_optional<std::uint64_t>(j, "cutoff_denominator");
  c.codeword_paths = get<std::vector<std::string>>(j, "codeword_paths");
  c.basis_path = get<std::string>(j, "basis_path");
  c.report_path = get<std::string>(j, "report_path");
  c.format = get<std::string>(j, "format");
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << content;
  if (!out) throw FormatError("write to '" + path + "' failed");
}

}  // namespace sortreduce
