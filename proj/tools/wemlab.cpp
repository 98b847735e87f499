// wemlab: command-line front end for the write-efficient memory toolkit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "wem/audit.hpp"
#include "wem/blockmodel.hpp"
#include "wem/codecraft.hpp"
#include "wem/flipsim.hpp"
#include "wem/report_io.hpp"
#include "wem/search.hpp"
#include "wem/semilinear.hpp"
#include "wem/setcodec.hpp"

namespace {

const CLI::Range kPositive(1u, std::numeric_limits<unsigned>::max(), "POSITIVE");

using wem::Json;

struct OutputOptions {
  std::string format = "text";
  std::string path;
};

struct Report {
  std::string text;
  Json config;
  Json result;
  wem::CsvTable csv;
};

std::string extension(const std::string& format) { return format == "text" ? "txt" : format; }

void emit(const std::string& command, const OutputOptions& out, const Report& report) {
  std::string body;
  if (out.format == "json") {
    Json doc;
    doc["tool"] = std::string(wem::kToolVersion);
    doc["command"] = command;
    doc["config"] = report.config;
    doc["result"] = report.result;
    body = doc.dump(2) + "\n";
  } else if (out.format == "csv") {
    body = report.csv.str();
  } else {
    body = report.text;
  }

  std::filesystem::path target = out.path;
  if (target.empty()) {
    const char* dir = std::getenv("WEMLAB_OUT_DIR");
    if (dir == nullptr || *dir == '\0') {
      std::cout << body;
      return;
    }
    target = std::filesystem::path(dir) / (command + "." + extension(out.format));
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + target.string() + " for writing");
  file << body;
  if (!file.flush()) throw std::runtime_error("failed writing " + target.string());
  std::cerr << "wrote " << target.string() << "\n";
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return Json::parse(in);
}

struct ShapeOptions {
  unsigned n = 0;
  unsigned k = 0;
  std::string model = "gmm";

  wem::BlockShape shape() const {
    wem::BlockShape s{n, k};
    s.validate();
    return s;
  }
  wem::MemoryModel memory_model() const { return wem::MemoryModel::parse(model); }
};

void add_shape(CLI::App* sub, ShapeOptions& o, bool required = true) {
  auto* n = sub->add_option("--n", o.n, "Bits per slot")->check(kPositive);
  auto* k = sub->add_option("--k", o.k, "Slots per block")->check(kPositive);
  if (required) {
    n->required();
    k->required();
  }
}

void add_model(CLI::App* sub, ShapeOptions& o, const std::string& fallback) {
  o.model = fallback;
  sub->add_option("--model", o.model,
                  "Memory model, e.g. gmm, set, loads, loa+uoe+scm:overwrite")
      ->capture_default_str();
}

Json shape_config(const ShapeOptions& o) {
  Json j;
  j["n"] = o.n;
  j["k"] = o.k;
  j["model"] = o.memory_model().to_string();
  return j;
}

std::string cost_text(const wem::CostReport& r) {
  std::ostringstream s;
  s << "max_cost: " << r.max_cost << "\n"
    << "avg_cost: " << r.avg_cost.to_string() << " (" << wem::format_double(r.avg_cost.to_double())
    << ")\n"
    << "total_cost: " << (r.total_cost ? std::to_string(*r.total_cost) : "n/a") << "\n"
    << "codewords: " << r.codeword_count << "\n"
    << "transition_samples: " << r.transition_samples << "\n";
  return s.str();
}

std::string search_text(const wem::SearchReport& r) {
  std::ostringstream s;
  s << "engine: " << r.engine << "\n"
    << "shape: n=" << r.shape.n << " k=" << r.shape.k << "\n"
    << "model: " << r.model.to_string() << "\n"
    << "objective: " << wem::to_string(r.objective) << "\n"
    << "baseline (" << r.baseline_encoding << "): max " << r.baseline.max_cost << ", avg "
    << r.baseline.avg_cost.to_string() << "\n"
    << "best found: max " << r.best_found.max_cost << ", avg " << r.best_found.avg_cost.to_string()
    << "\n"
    << "improved: " << (r.improved ? "true" : "false") << "\n"
    << "codes_examined: " << r.codes_examined << "\n"
    << "budget_exhausted: " << (r.budget_exhausted ? "true" : "false") << "\n"
    << "symmetry_check: " << (r.symmetry_check ? "true" : "false") << "\n";
  return s.str();
}

Report search_report(const wem::SearchReport& r, Json config) {
  return {search_text(r), std::move(config), wem::to_json(r), wem::search_csv(r)};
}

// -- commands ----------------------------------------------------------------

Report run_count_states(const ShapeOptions& o) {
  const wem::BlockShape shape = o.shape();
  const wem::MemoryModel model = o.memory_model();
  const wem::Count states = wem::count_states(shape, model);
  const wem::Count slots = wem::count_slot_states(shape, model);
  const auto printed = wem::printed_state_count(shape, model);

  Report r;
  r.config = shape_config(o);
  r.text = wem::to_string(states) + "\n";
  r.result["states"] = wem::count_to_json(states);
  r.result["slot_states"] = wem::count_to_json(slots);
  r.result["printed"] = printed ? wem::count_to_json(*printed) : Json(nullptr);
  r.result["rate"] = wem::rate(shape, model);
  r.csv.header = {"n", "k", "model", "states", "slot_states", "printed"};
  r.csv.rows.push_back({std::to_string(o.n), std::to_string(o.k), model.to_string(),
                        wem::to_string(states), wem::to_string(slots),
                        printed ? wem::to_string(*printed) : ""});
  return r;
}

Report run_count_transitions(const ShapeOptions& o, const std::string& state_text) {
  const wem::BlockShape shape = o.shape();
  const wem::MemoryModel model = o.memory_model();
  wem::BlockState state;
  if (state_text.empty()) {
    state.slots.assign(shape.k, 0);
  } else {
    state = wem::BlockState::parse(state_text);
  }
  if (!wem::is_valid(state, shape, model)) {
    throw std::invalid_argument("state " + state.to_string() + " is not valid under " +
                                model.to_string());
  }
  if (!wem::is_canonical(state, model)) {
    throw std::invalid_argument("state " + state.to_string() + " is not canonical; use " +
                                wem::canonicalize(state, model).to_string());
  }
  const wem::Count closed = wem::count_transitions(state, shape, model);
  std::optional<wem::Count> enumerated;
  if (model.scm != wem::Scm::none || wem::count_slot_states(shape, model) <= wem::kGraphLimit) {
    enumerated = wem::enumerate_transitions(state, shape, model).successors.size();
  }
  const auto printed = wem::printed_transition_count(state, shape, model);

  Report r;
  r.config = shape_config(o);
  r.config["state"] = state.to_string();
  r.text = wem::to_string(closed) + "\n";
  r.result["transitions"] = wem::count_to_json(closed);
  r.result["enumerated"] = enumerated ? wem::count_to_json(*enumerated) : Json(nullptr);
  r.result["printed"] = printed ? wem::count_to_json(*printed) : Json(nullptr);
  r.csv.header = {"n", "k", "model", "state", "transitions", "enumerated", "printed"};
  r.csv.rows.push_back({std::to_string(o.n), std::to_string(o.k), model.to_string(),
                        state.to_string(), wem::to_string(closed),
                        enumerated ? wem::to_string(*enumerated) : "",
                        printed ? wem::to_string(*printed) : ""});
  return r;
}

Report run_rate(const ShapeOptions& o) {
  const double value = wem::rate(o.shape(), o.memory_model());
  Report r;
  r.config = shape_config(o);
  r.text = wem::format_double(value) + "\n";
  r.result["rate"] = value;
  r.csv.header = {"n", "k", "model", "rate"};
  r.csv.rows.push_back({std::to_string(o.n), std::to_string(o.k), o.memory_model().to_string(),
                        wem::format_double(value)});
  return r;
}

struct EvalOptions {
  ShapeOptions shape;
  std::string encoding = "trivial";
  std::string code_path;
  std::string matrix_path;
  bool with_code = false;
};

Report run_eval_code(const EvalOptions& o) {
  wem::Code code;
  std::string label;
  Json config;
  if (!o.code_path.empty()) {
    code = wem::code_from_json(read_json_file(o.code_path));
    label = o.code_path;
    config["code"] = o.code_path;
  } else {
    if (o.shape.n == 0 || o.shape.k == 0) {
      throw std::invalid_argument("eval-code needs --code or both --n and --k");
    }
    const wem::BlockShape shape = o.shape.shape();
    const wem::MemoryModel model = o.shape.memory_model();
    label = o.encoding;
    config = shape_config(o.shape);
    config["encoding"] = o.encoding;
    if (o.encoding == "trivial") {
      code = wem::trivial_code(shape, model);
    } else if (o.encoding == "compressed") {
      code = wem::compressed_code(shape, model);
    } else if (o.encoding == "indicator" || o.encoding == "semilinear") {
      if (!model.loa || !model.uoe) {
        throw std::invalid_argument(o.encoding + " codes need a set model (loa+uoe)");
      }
      if (o.encoding == "indicator") {
        code = wem::indicator_code(shape, model.scm);
      } else {
        const wem::BasisMatrix matrix = o.matrix_path.empty()
                                            ? wem::BasisMatrix::indicator(shape)
                                            : wem::matrix_from_json(read_json_file(o.matrix_path));
        config["matrix"] = o.matrix_path.empty() ? Json("indicator") : Json(o.matrix_path);
        code = wem::semilinear_code(matrix, model.scm);
      }
    } else {
      throw std::invalid_argument("unknown encoding \"" + o.encoding +
                                  "\" (expected trivial, compressed, indicator or semilinear)");
    }
  }

  const wem::Validation validation = wem::validate(code);
  if (!validation.ok) {
    std::string message = "code is invalid: " + validation.violation;
    for (const std::string& w : validation.witness) message += " " + w;
    throw std::invalid_argument(message);
  }
  const wem::CostReport cost = wem::evaluate(code);

  Report r;
  r.config = std::move(config);
  r.text = "encoding: " + label + "\nmodel: " + code.model().to_string() + "\n" + cost_text(cost);
  r.result["validation"] = wem::to_json(validation);
  r.result["cost"] = wem::to_json(cost);
  if (o.with_code) r.result["code"] = wem::to_json(code);
  r.csv = wem::cost_csv(label, code.shape(), code.model(), cost);
  return r;
}

struct SearchOptions {
  ShapeOptions shape;
  std::string objective = "max";
  wem::SearchConfig config{0, 2000, 1, 0.0};
};

void add_search(CLI::App* sub, SearchOptions& o) {
  sub->add_option("--objective", o.objective, "Objective: max or avg")
      ->check(CLI::IsMember({"max", "avg"}))
      ->capture_default_str();
  sub->add_option("--seed", o.config.seed, "RNG seed")->capture_default_str();
  sub->add_option("--iterations", o.config.iterations, "Proposals per restart")
      ->capture_default_str();
  sub->add_option("--restarts", o.config.restarts, "Independent restarts")
      ->check(kPositive)
      ->capture_default_str();
  sub->add_option("--wall-budget", o.config.wall_budget_s,
                  "Wall-clock limit in seconds (0 = none; a hit limit breaks reproducibility)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

Json search_config(const SearchOptions& o) {
  Json j = shape_config(o.shape);
  j["objective"] = o.objective;
  j["seed"] = o.config.seed;
  j["iterations"] = o.config.iterations;
  j["restarts"] = o.config.restarts;
  j["wall_budget_s"] = o.config.wall_budget_s;
  return j;
}

struct MatrixOptions {
  ShapeOptions shape;
  std::string matrix_path;
  unsigned set_size = 0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
};

Report run_semilinear_verify(const MatrixOptions& o) {
  wem::BasisMatrix matrix;
  Json config;
  if (!o.matrix_path.empty()) {
    matrix = wem::matrix_from_json(read_json_file(o.matrix_path));
    config["matrix"] = o.matrix_path;
  } else {
    if (o.shape.n == 0 || o.shape.k == 0) {
      throw std::invalid_argument("semilinear-verify needs --matrix or both --n and --k");
    }
    matrix = wem::BasisMatrix::indicator(o.shape.shape());
    config["matrix"] = "indicator";
  }
  const unsigned k = o.set_size != 0 ? o.set_size : matrix.shape.k;
  config["n"] = matrix.shape.n;
  config["k"] = matrix.shape.k;
  config["set_size"] = k;
  const wem::MatrixCheck check = wem::verify_matrix(matrix, k);

  Report r;
  r.config = std::move(config);
  std::string witness;
  for (std::uint64_t c : check.witness) witness += (witness.empty() ? "" : ",") + std::to_string(c);
  r.text = std::string("independent: ") + (check.independent ? "true" : "false") + "\n";
  if (!check.independent) r.text += "witness columns: " + witness + "\n";
  r.result["check"] = wem::to_json(check);
  r.result["matrix"] = wem::to_json(matrix);
  r.csv.header = {"n", "k", "set_size", "independent", "witness"};
  r.csv.rows.push_back({std::to_string(matrix.shape.n), std::to_string(matrix.shape.k),
                        std::to_string(k), check.independent ? "true" : "false", witness});
  return r;
}

Report run_semilinear_search(const MatrixOptions& o) {
  const wem::BlockShape shape = o.shape.shape();
  const unsigned k = o.set_size != 0 ? o.set_size : shape.k;
  const wem::MatrixSearchReport report = wem::search_matrix(shape, k, o.trials, o.seed);

  Report r;
  r.config["n"] = o.shape.n;
  r.config["k"] = o.shape.k;
  r.config["set_size"] = k;
  r.config["trials"] = o.trials;
  r.config["seed"] = o.seed;
  std::ostringstream s;
  s << "trials: " << report.trials << "\n"
    << "passed: " << report.passed << " (" << wem::format_double(report.pass_rate()) << ")\n";
  if (report.best) {
    s << "best trial: " << *report.best_trial << "\n"
      << "best column weight: max " << report.best_max_cost << ", mean "
      << report.best_avg_cost.to_string() << "\n";
  } else {
    s << "no passing matrix\n";
  }
  r.text = s.str();
  r.result = wem::to_json(report);
  r.csv = wem::matrix_search_csv(report);
  return r;
}

struct SimOptions {
  std::string config_path;
  unsigned n = 3;
  unsigned k = 2;
  std::size_t blocks = 16;
  std::vector<std::string> encodings{"trivial", "compressed"};
  std::uint64_t operations = 1000;
  double insert_fraction = 0.6;
  std::uint64_t seed = 1;
  std::uint64_t trace_every = 0;
};

Report run_sim_hash(const SimOptions& o, const CLI::App& sub) {
  wem::WorkloadConfig config;
  if (!o.config_path.empty()) config = wem::workload_from_json(read_json_file(o.config_path));
  const bool file = !o.config_path.empty();
  auto given = [&](const char* flag) { return !file || sub.count(flag) > 0; };
  if (given("--n")) config.shape.n = o.n;
  if (given("--k")) config.shape.k = o.k;
  if (given("--blocks")) config.blocks = o.blocks;
  if (given("--encodings")) config.encodings = o.encodings;
  if (given("--ops")) config.operations = o.operations;
  if (given("--insert-fraction")) config.insert_fraction = o.insert_fraction;
  if (given("--seed")) config.seed = o.seed;
  if (given("--trace-every")) config.trace_every = o.trace_every;

  const wem::FlipReport report = wem::run_workload(config);
  Report r;
  r.config = wem::to_json(config);
  std::ostringstream s;
  for (const wem::EncodingResult& e : report.results) {
    s << e.encoding << ": ops " << e.ops << ", successful " << e.successful_ops << ", flips "
      << e.total_flips << ", flips/op " << wem::format_double(e.flips_per_op) << ", load "
      << wem::format_double(e.final_load_factor) << "\n";
  }
  r.text = s.str();
  r.result = wem::to_json(report);
  r.csv = wem::flip_csv(report);
  return r;
}

Report run_discrepancy(unsigned max_n, unsigned max_k) {
  const wem::DiscrepancyReport report = wem::discrepancy_report(max_n, max_k);
  Report r;
  r.config["max_n"] = max_n;
  r.config["max_k"] = max_k;
  std::ostringstream s;
  s << "state cells: " << report.state_cells << ", transition states: "
    << report.transition_states << ", cells without a printed formula: "
    << report.undefined_cells << "\n";
  s << "corrected closed forms disagreeing with enumeration: " << report.corrected_failures.size()
    << "\n";
  s << "printed formula mismatches: " << report.rows.size() << "\n";
  for (const wem::DiscrepancyRow& row : report.rows) {
    s << "  " << row.kind << " " << row.model.to_string() << " n=" << row.shape.n
      << " k=" << row.shape.k;
    if (row.example) s << " " << row.example->to_string();
    s << ": printed " << wem::to_string(row.printed) << ", enumerated "
      << wem::to_string(row.enumerated) << " (" << row.mismatching << "/" << row.checked
      << ") [" << row.cause << "]\n";
  }
  r.text = s.str();
  r.result = wem::to_json(report);
  r.csv = wem::discrepancy_csv(report);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wemlab: codes, counts and simulations for write-efficient memory"};
  app.require_subcommand(1);
  OutputOptions out;
  app.add_option("--format", out.format, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", out.path,
                 "Output file (default: stdout, or $WEMLAB_OUT_DIR/<command>.<ext> when set)");

  std::function<Report()> action;
  auto command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--format", out.format, "Output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", out.path, "Output file");
    return sub;
  };

  ShapeOptions states_opts;
  auto* count_states = command("count-states", "Number of valid block states");
  add_shape(count_states, states_opts);
  add_model(count_states, states_opts, "gmm");
  count_states->callback([&] { action = [&] { return run_count_states(states_opts); }; });

  ShapeOptions trans_opts;
  std::string state_text;
  auto* count_trans = command("count-transitions", "Number of valid transitions out of a state");
  add_shape(count_trans, trans_opts);
  add_model(count_trans, trans_opts, "scm:overwrite");
  count_trans->add_option("--state", state_text, "Source state, e.g. [0,3] (default all NULL)");
  count_trans->callback(
      [&] { action = [&] { return run_count_transitions(trans_opts, state_text); }; });

  ShapeOptions rate_opts;
  auto* rate = command("rate", "log2(states) / (n*k)");
  add_shape(rate, rate_opts);
  add_model(rate, rate_opts, "gmm");
  rate->callback([&] { action = [&] { return run_rate(rate_opts); }; });

  EvalOptions eval_opts;
  auto* eval = command("eval-code", "Validate a code and report its transition costs");
  add_shape(eval, eval_opts.shape, false);
  add_model(eval, eval_opts.shape, "loads");
  eval->add_option("--encoding", eval_opts.encoding,
                   "Built-in code: trivial, compressed, indicator, semilinear")
      ->capture_default_str();
  eval->add_option("--code", eval_opts.code_path, "Code JSON file (overrides --encoding)");
  eval->add_option("--matrix", eval_opts.matrix_path, "Basis matrix JSON for semilinear");
  eval->add_flag("--with-code", eval_opts.with_code, "Include the code in JSON output");
  eval->callback([&] { action = [&] { return run_eval_code(eval_opts); }; });

  SearchOptions exh_opts;
  auto* exh = command("search-exhaustive", "Every single-codeword SCM overwrite code, n*k <= 3");
  add_shape(exh, exh_opts.shape);
  exh->add_option("--objective", exh_opts.objective, "Objective: max or avg")
      ->check(CLI::IsMember({"max", "avg"}))
      ->capture_default_str();
  exh->callback([&] {
    action = [&] {
      exh_opts.shape.model = "scm:overwrite";
      const auto report = wem::exhaustive_scm_search(exh_opts.shape.shape(),
                                                     wem::parse_objective(exh_opts.objective));
      Json config = shape_config(exh_opts.shape);
      config["objective"] = exh_opts.objective;
      return search_report(report, std::move(config));
    };
  });

  SearchOptions swap_opts;
  auto* swap = command("search-swap", "Hill climbing over codeword swaps");
  add_shape(swap, swap_opts.shape);
  add_model(swap, swap_opts.shape, "scm:overwrite");
  add_search(swap, swap_opts);
  swap->callback([&] {
    action = [&] {
      const auto report =
          wem::swap_search(swap_opts.shape.shape(), swap_opts.shape.memory_model(),
                           wem::parse_objective(swap_opts.objective), swap_opts.config);
      return search_report(report, search_config(swap_opts));
    };
  });

  SearchOptions red_opts;
  auto* red = command("search-redundant", "Hill climbing over extra codewords");
  add_shape(red, red_opts.shape);
  add_model(red, red_opts.shape, "loads");
  add_search(red, red_opts);
  red->callback([&] {
    action = [&] {
      const auto report =
          wem::redundant_search(red_opts.shape.shape(), red_opts.shape.memory_model(),
                                wem::parse_objective(red_opts.objective), red_opts.config);
      return search_report(report, search_config(red_opts));
    };
  });

  MatrixOptions verify_opts;
  auto* verify = command("semilinear-verify", "Check that no 2k basis columns xor to zero");
  add_shape(verify, verify_opts.shape, false);
  verify->add_option("--matrix", verify_opts.matrix_path, "Basis matrix JSON (default indicator)");
  verify->add_option("--set-size", verify_opts.set_size, "Largest set size (default k)");
  verify->callback([&] { action = [&] { return run_semilinear_verify(verify_opts); }; });

  MatrixOptions msearch_opts;
  auto* msearch = command("semilinear-search", "Random search for passing basis matrices");
  add_shape(msearch, msearch_opts.shape);
  msearch->add_option("--set-size", msearch_opts.set_size, "Largest set size (default k)");
  msearch->add_option("--trials", msearch_opts.trials, "Matrices to sample")->capture_default_str();
  msearch->add_option("--seed", msearch_opts.seed, "RNG seed")->capture_default_str();
  msearch->callback([&] { action = [&] { return run_semilinear_search(msearch_opts); }; });

  SimOptions sim_opts;
  auto* sim = command("sim-hash", "Bit flips of a linear-probing hash table per encoding");
  sim->add_option("--config", sim_opts.config_path, "Workload JSON; flags given override it");
  sim->add_option("--n", sim_opts.n, "Bits per slot")->check(kPositive)->capture_default_str();
  sim->add_option("--k", sim_opts.k, "Slots per block")->check(kPositive)->capture_default_str();
  sim->add_option("--blocks", sim_opts.blocks, "Blocks in the table")->capture_default_str();
  sim->add_option("--encodings", sim_opts.encodings,
                  "Comma list of trivial, indicator, compressed, semilinear")
      ->delimiter(',')
      ->capture_default_str();
  sim->add_option("--ops", sim_opts.operations, "Operations")->capture_default_str();
  sim->add_option("--insert-fraction", sim_opts.insert_fraction, "Share of inserts")
      ->capture_default_str();
  sim->add_option("--seed", sim_opts.seed, "Seed for keys and hashing")->capture_default_str();
  sim->add_option("--trace-every", sim_opts.trace_every, "Trace interval (0 = ops/100)")
      ->capture_default_str();
  sim->callback([&] { action = [&] { return run_sim_hash(sim_opts, *sim); }; });

  unsigned max_n = 3;
  unsigned max_k = 3;
  auto* disc = command("discrepancy-report", "Printed counting table against enumeration");
  disc->add_option("--max-n", max_n, "Largest n")->check(kPositive)->capture_default_str();
  disc->add_option("--max-k", max_k, "Largest k")->check(kPositive)->capture_default_str();
  disc->callback([&] { action = [&] { return run_discrepancy(max_n, max_k); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n";
    const auto parsed = app.get_subcommands();
    std::cerr << (parsed.empty() ? app.help() : parsed.back()->help());
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    emit(name, out, action());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
