#include "wem/report_io.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace wem {

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  std::string text(buffer, end);
  if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
  return text;
}

Json count_to_json(Count value) {
  if (value <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(value);
  return to_string(value);
}

Count count_from_json(const Json& value) {
  if (value.is_string()) return parse_count(value.get<std::string>());
  return value.get<std::uint64_t>();
}

Rational rational_from_string(std::string_view text) {
  const auto slash = text.find('/');
  auto number = [](std::string_view part) {
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || end != part.data() + part.size() || part.empty()) {
      throw std::invalid_argument("bad rational \"" + std::string(part) + "\"");
    }
    return v;
  };
  if (slash == std::string_view::npos) return Rational(number(text), 1);
  const std::uint64_t den = number(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(number(text.substr(0, slash)), den);
}

namespace {

Json rational_json(const Rational& r) { return r.to_string(); }

Json model_json(const MemoryModel& model) {
  Json j;
  j["name"] = model.to_string();
  j["loa"] = model.loa;
  j["uoe"] = model.uoe;
  j["scm"] = std::string(to_string(model.scm));
  return j;
}

MemoryModel model_from_json(const Json& value) {
  if (value.is_string()) return MemoryModel::parse(value.get<std::string>());
  return MemoryModel::parse(value.at("name").get<std::string>());
}

Json isolated_json(const std::vector<IsolatedBit>& bits) {
  Json out = Json::array();
  for (const IsolatedBit& b : bits) {
    Json e;
    e["bit"] = b.bit;
    e["slot"] = b.slot ? Json(*b.slot) : Json(nullptr);
    out.push_back(e);
  }
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

Json to_json(const BlockShape& shape) {
  Json j;
  j["n"] = shape.n;
  j["k"] = shape.k;
  return j;
}

BlockShape shape_from_json(const Json& value) {
  BlockShape shape{value.at("n").get<unsigned>(), value.at("k").get<unsigned>()};
  shape.validate();
  return shape;
}

Json to_json(const Code& code) {
  Json j;
  j["shape"] = to_json(code.shape());
  j["model"] = model_json(code.model());
  Json entries = Json::array();
  for (const CodeEntry& e : code.entries()) {
    Json entry;
    entry["state"] = e.state.to_string();
    Json words = Json::array();
    for (const BitString& w : e.codewords) words.push_back(w.to_string());
    entry["codewords"] = std::move(words);
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  return j;
}

Code code_from_json(const Json& value) {
  const BlockShape shape = shape_from_json(value.at("shape"));
  const MemoryModel model = model_from_json(value.at("model"));
  std::vector<CodeEntry> entries;
  for (const Json& e : value.at("entries")) {
    CodeEntry entry{BlockState::parse(e.at("state").get<std::string>()), {}};
    for (const Json& w : e.at("codewords")) {
      const BitString word = BitString::parse(w.get<std::string>());
      if (word.length() != shape.bits()) {
        throw std::invalid_argument("codeword " + word.to_string() + " is not " +
                                    std::to_string(shape.bits()) + " bits long");
      }
      entry.codewords.push_back(word);
    }
    entries.push_back(std::move(entry));
  }
  return Code(shape, model, std::move(entries));
}

Json to_json(const Validation& validation) {
  Json j;
  j["ok"] = validation.ok;
  j["violation"] = validation.violation;
  j["witness"] = validation.witness;
  return j;
}

Json to_json(const CostReport& report) {
  Json j;
  j["max_cost"] = report.max_cost;
  j["avg_cost"] = rational_json(report.avg_cost);
  j["avg_cost_value"] = report.avg_cost.to_double();
  j["total_cost"] = report.total_cost ? Json(*report.total_cost) : Json(nullptr);
  j["codeword_count"] = report.codeword_count;
  j["transition_samples"] = report.transition_samples;
  return j;
}

CostReport cost_report_from_json(const Json& value) {
  CostReport r;
  r.max_cost = value.at("max_cost").get<unsigned>();
  r.avg_cost = rational_from_string(value.at("avg_cost").get<std::string>());
  if (!value.at("total_cost").is_null()) r.total_cost = value.at("total_cost").get<std::uint64_t>();
  r.codeword_count = value.at("codeword_count").get<std::uint64_t>();
  r.transition_samples = value.at("transition_samples").get<std::uint64_t>();
  return r;
}

Json to_json(const BasisMatrix& matrix) {
  Json j;
  j["shape"] = to_json(matrix.shape);
  Json columns = Json::array();
  for (const BitString& c : matrix.columns) columns.push_back(c.to_string());
  j["columns"] = std::move(columns);
  return j;
}

BasisMatrix matrix_from_json(const Json& value) {
  BasisMatrix m{shape_from_json(value.at("shape")), {}};
  for (const Json& c : value.at("columns")) m.columns.push_back(BitString::parse(c.get<std::string>()));
  m.validate();
  return m;
}

Json to_json(const MatrixCheck& check) {
  Json j;
  j["independent"] = check.independent;
  j["witness"] = check.witness;
  return j;
}

Json to_json(const MatrixSearchReport& report) {
  Json j;
  j["shape"] = to_json(report.shape);
  j["k"] = report.k;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["passed"] = report.passed;
  j["pass_rate"] = report.pass_rate();
  j["best_trial"] = report.best_trial ? Json(*report.best_trial) : Json(nullptr);
  j["best_max_cost"] = report.best ? Json(report.best_max_cost) : Json(nullptr);
  j["best_avg_cost"] = report.best ? rational_json(report.best_avg_cost) : Json(nullptr);
  j["best"] = report.best ? to_json(*report.best) : Json(nullptr);
  return j;
}

Json to_json(const SearchReport& report) {
  Json j;
  j["engine"] = report.engine;
  j["shape"] = to_json(report.shape);
  j["model"] = model_json(report.model);
  j["objective"] = std::string(to_string(report.objective));
  Json config;
  config["seed"] = report.config.seed;
  config["iterations"] = report.config.iterations;
  config["restarts"] = report.config.restarts;
  config["wall_budget_s"] = report.config.wall_budget_s;
  j["config"] = std::move(config);
  j["baseline_encoding"] = report.baseline_encoding;
  j["baseline"] = to_json(report.baseline);
  j["best_found"] = to_json(report.best_found);
  j["improved"] = report.improved;
  j["codes_examined"] = report.codes_examined;
  j["budget_exhausted"] = report.budget_exhausted;
  j["symmetry_check"] = report.symmetry_check;
  j["baseline_isolated_bits"] = isolated_json(report.baseline_isolated_bits);
  j["best_isolated_bits"] = isolated_json(report.best_isolated_bits);
  j["best_code"] = to_json(report.best_code);
  return j;
}

Json to_json(const WorkloadConfig& config) {
  Json j;
  j["shape"] = to_json(config.shape);
  j["blocks"] = config.blocks;
  j["encodings"] = config.encodings;
  j["operations"] = config.operations;
  j["insert_fraction"] = config.insert_fraction;
  j["seed"] = config.seed;
  j["trace_every"] = config.trace_every;
  return j;
}

WorkloadConfig workload_from_json(const Json& value) {
  WorkloadConfig c;
  if (value.contains("shape")) c.shape = shape_from_json(value.at("shape"));
  if (value.contains("blocks")) c.blocks = value.at("blocks").get<std::size_t>();
  if (value.contains("encodings")) c.encodings = value.at("encodings").get<std::vector<std::string>>();
  if (value.contains("operations")) c.operations = value.at("operations").get<std::uint64_t>();
  if (value.contains("insert_fraction")) c.insert_fraction = value.at("insert_fraction").get<double>();
  if (value.contains("seed")) c.seed = value.at("seed").get<std::uint64_t>();
  if (value.contains("trace_every")) c.trace_every = value.at("trace_every").get<std::uint64_t>();
  c.validate();
  return c;
}

Json to_json(const FlipReport& report) {
  Json j;
  j["config"] = to_json(report.config);
  Json results = Json::array();
  for (const EncodingResult& r : report.results) {
    Json e;
    e["encoding"] = r.encoding;
    e["ops"] = r.ops;
    e["successful_ops"] = r.successful_ops;
    e["total_flips"] = r.total_flips;
    e["block_writes"] = r.block_writes;
    e["flips_per_op"] = r.flips_per_op;
    e["final_load_factor"] = r.final_load_factor;
    Json trace = Json::array();
    for (const TracePoint& p : r.trace) {
      Json t;
      t["ops"] = p.ops;
      t["total_flips"] = p.total_flips;
      t["load_factor"] = p.load_factor;
      trace.push_back(std::move(t));
    }
    e["trace"] = std::move(trace);
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  return j;
}

namespace {

Json row_json(const DiscrepancyRow& row) {
  Json j;
  j["kind"] = row.kind;
  j["model"] = row.model.to_string();
  j["taxonomy"] = row.model.taxonomy_name();
  j["n"] = row.shape.n;
  j["k"] = row.shape.k;
  j["example_state"] = row.example ? Json(row.example->to_string()) : Json(nullptr);
  j["printed"] = count_to_json(row.printed);
  j["corrected"] = count_to_json(row.corrected);
  j["enumerated"] = count_to_json(row.enumerated);
  j["mismatching"] = row.mismatching;
  j["checked"] = row.checked;
  j["cause"] = row.cause;
  return j;
}

}  // namespace

Json to_json(const DiscrepancyReport& report) {
  Json j;
  j["max_n"] = report.max_n;
  j["max_k"] = report.max_k;
  j["state_cells"] = report.state_cells;
  j["transition_states"] = report.transition_states;
  j["undefined_cells"] = report.undefined_cells;
  Json failures = Json::array();
  for (const DiscrepancyRow& r : report.corrected_failures) failures.push_back(row_json(r));
  j["corrected_failures"] = std::move(failures);
  Json rows = Json::array();
  for (const DiscrepancyRow& r : report.rows) rows.push_back(row_json(r));
  j["rows"] = std::move(rows);
  return j;
}

// ---------------------------------------------------------------------------

std::string CsvTable::str() const {
  auto field = [](const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string quoted = "\"";
    for (char c : f) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  };
  auto line = [&](const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i != 0) out += ',';
      out += field(fields[i]);
    }
    return out + "\n";
  };
  std::string out = line(header);
  for (const auto& r : rows) out += line(r);
  return out;
}

CsvTable cost_csv(std::string_view encoding, const BlockShape& shape, const MemoryModel& model,
                  const CostReport& report) {
  CsvTable t;
  t.header = {"encoding", "n", "k", "model", "max_cost", "avg_cost", "avg_cost_value",
              "total_cost", "codeword_count", "transition_samples"};
  t.rows.push_back({std::string(encoding), std::to_string(shape.n), std::to_string(shape.k),
                    model.to_string(), std::to_string(report.max_cost), report.avg_cost.to_string(),
                    format_double(report.avg_cost.to_double()),
                    report.total_cost ? std::to_string(*report.total_cost) : "",
                    std::to_string(report.codeword_count),
                    std::to_string(report.transition_samples)});
  return t;
}

CsvTable search_csv(const SearchReport& r) {
  CsvTable t;
  t.header = {"engine",        "n",           "k",           "model",          "objective",
              "seed",          "iterations",  "restarts",    "baseline_encoding",
              "baseline_max",  "baseline_avg", "best_max",   "best_avg",       "improved",
              "codes_examined", "budget_exhausted", "symmetry_check"};
  t.rows.push_back({r.engine, std::to_string(r.shape.n), std::to_string(r.shape.k),
                    r.model.to_string(), std::string(to_string(r.objective)),
                    std::to_string(r.config.seed), std::to_string(r.config.iterations),
                    std::to_string(r.config.restarts), r.baseline_encoding,
                    std::to_string(r.baseline.max_cost), r.baseline.avg_cost.to_string(),
                    std::to_string(r.best_found.max_cost), r.best_found.avg_cost.to_string(),
                    bool_text(r.improved), std::to_string(r.codes_examined),
                    bool_text(r.budget_exhausted), bool_text(r.symmetry_check)});
  return t;
}

CsvTable matrix_search_csv(const MatrixSearchReport& r) {
  CsvTable t;
  t.header = {"n", "k", "trials", "seed", "passed", "pass_rate", "best_trial", "best_max_cost",
              "best_avg_cost"};
  t.rows.push_back({std::to_string(r.shape.n), std::to_string(r.k), std::to_string(r.trials),
                    std::to_string(r.seed), std::to_string(r.passed), format_double(r.pass_rate()),
                    r.best_trial ? std::to_string(*r.best_trial) : "",
                    r.best ? std::to_string(r.best_max_cost) : "",
                    r.best ? r.best_avg_cost.to_string() : ""});
  return t;
}

CsvTable flip_csv(const FlipReport& report) {
  CsvTable t;
  t.header = {"encoding", "ops", "total_flips", "flips_per_op", "load_factor"};
  for (const EncodingResult& r : report.results) {
    for (const TracePoint& p : r.trace) {
      const double per_op =
          p.ops == 0 ? 0.0 : static_cast<double>(p.total_flips) / static_cast<double>(p.ops);
      t.rows.push_back({r.encoding, std::to_string(p.ops), std::to_string(p.total_flips),
                        format_double(per_op), format_double(p.load_factor)});
    }
  }
  return t;
}

CsvTable discrepancy_csv(const DiscrepancyReport& report) {
  CsvTable t;
  t.header = {"kind",      "model",     "taxonomy",    "n",        "k",     "example_state",
              "printed",   "corrected", "enumerated", "mismatching", "checked", "cause"};
  auto add = [&](const DiscrepancyRow& r) {
    t.rows.push_back({r.kind, r.model.to_string(), r.model.taxonomy_name(),
                      std::to_string(r.shape.n), std::to_string(r.shape.k),
                      r.example ? r.example->to_string() : "", to_string(r.printed),
                      to_string(r.corrected), to_string(r.enumerated),
                      std::to_string(r.mismatching), std::to_string(r.checked), r.cause});
  };
  for (const DiscrepancyRow& r : report.corrected_failures) add(r);
  for (const DiscrepancyRow& r : report.rows) add(r);
  return t;
}

}  // namespace wem
