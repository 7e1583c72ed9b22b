// rsum command-line front end. Every subcommand is a thin wrapper over one C
// API call; JSON results are wrapped with the run configuration.

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <string>

#include "rsum/rsum.h"
#include "run_config.hpp"

namespace {

using Json = nlohmann::ordered_json;
using rsum_cli::RunConfig;

constexpr const char* kGrammar =
    "Weights: a decimal list such as 0.8,0.6 (float mode) or a list of squared\n"
    "weights such as sq:16/25,9/25 meaning x = (4/5, 3/5) (exact mode). Vectors\n"
    "are canonicalized: absolute values, sorted descending, unit L2 norm.\n"
    "Exit status: 0 ok, 1 input error, 2 size limit, 3 soundness violation.";

struct Outcome {
  rsum_status status = RSUM_OK;
  std::string text;     // document to emit, possibly empty
  std::string message;  // stderr diagnostics
};

struct StringHandle {
  char* p = nullptr;
  ~StringHandle() { rsum_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct WeightsDeleter {
  void operator()(rsum_weights* w) const { rsum_weights_free(w); }
};
using WeightsPtr = std::unique_ptr<rsum_weights, WeightsDeleter>;

int exit_code(rsum_status status) {
  switch (status) {
    case RSUM_OK: return 0;
    case RSUM_INSTANCE_TOO_LARGE: return 2;
    case RSUM_SOUNDNESS_VIOLATION: return 3;
    default: return 1;
  }
}

std::string timestamp_now() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string hint(rsum_status status, const std::string& command) {
  if (status == RSUM_WRONG_CASE) {
    if (command == "decomp-check") return " (decomp-check needs a case-1 vector; try partition or hybrid)";
    return " (" + command + " needs a case-2 vector; try decomp-check or certify)";
  }
  if (status == RSUM_INSTANCE_TOO_LARGE) return " (raise --full-limit/--mitm-limit, at most 63)";
  return "";
}

rsum_mode mode_of(const std::string& mode) {
  if (mode == "exact") return RSUM_MODE_EXACT;
  if (mode == "float") return RSUM_MODE_FLOAT;
  return RSUM_MODE_AUTO;
}

Json wrap(const RunConfig& config, rsum_status status, const std::string& result) {
  Json doc = {{"tool", "rsum"}, {"version", rsum_version()}, {"command", config.command}};
  doc["status"] = status == RSUM_OK ? "ok" : rsum_status_name(status);
  doc["config"] = config;
  if (config.timestamp) doc["timestamp"] = timestamp_now();
  doc["result"] = Json::parse(result);
  return doc;
}

Outcome execute(const RunConfig& config) {
  Outcome out;
  rsum_options options;
  rsum_options_default(&options);
  options.full_limit = config.full_limit;
  options.mitm_limit = config.mitm_limit;
  options.threads = config.threads;

  WeightsPtr weights;
  bool needs_weights = config.command != "lemmas" && config.command != "search";
  if (needs_weights) {
    rsum_weights* raw = nullptr;
    out.status = rsum_weights_parse(config.weights.c_str(), mode_of(config.mode), &raw);
    if (out.status != RSUM_OK) {
      out.message = rsum_last_error();
      return out;
    }
    weights.reset(raw);
  }

  StringHandle doc;
  StringHandle extra;
  const rsum_weights* w = weights.get();
  const std::string& c = config.command;
  const char* t = config.t.c_str();
  if (c == "exact") {
    out.status = rsum_threshold_json(w, t, config.strict, &options, &doc.p, nullptr);
  } else if (c == "distribution") {
    out.status = rsum_distribution_csv(w, &options, &doc.p);
  } else if (c == "partition") {
    out.status = rsum_partition_json(w, &options, &doc.p);
  } else if (c == "certify") {
    out.status = rsum_certify_json(w, config.exact_check ? RSUM_CHECK_ALWAYS : RSUM_CHECK_NEVER, &options, &doc.p);
  } else if (c == "hybrid") {
    out.status = rsum_hybrid_json(w, &options, &doc.p);
  } else if (c == "decomp-check") {
    out.status = rsum_decomposition_json(w, &options, &doc.p);
  } else if (c == "mc") {
    out.status = rsum_monte_carlo_json(w, t, config.samples, config.seed, config.confidence, &doc.p);
  } else if (c == "lemmas") {
    out.status = rsum_lemmas(config.k_max, config.grid, &doc.p, &extra.p);
  } else if (c == "search") {
    out.status = rsum_search_json(config.n, config.budget, config.seed, &options, &doc.p);
  } else {
    out.status = RSUM_INVALID_INPUT;
    out.message = "unknown subcommand " + c;
    return out;
  }

  if (out.status != RSUM_OK) out.message = std::string(rsum_last_error()) + hint(out.status, c);
  if (doc.p == nullptr) return out;
  if (config.format() == "csv") {
    out.text = doc.str();
    if (out.status == RSUM_SOUNDNESS_VIOLATION && extra.p != nullptr) out.message += "\n" + extra.str();
  } else {
    out.text = wrap(config, out.status, doc.str()).dump(2) + "\n";
  }
  return out;
}

void add_engine_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--full-limit", config.full_limit, "Largest n for plain 2^n enumeration")->capture_default_str();
  sub->add_option("--mitm-limit", config.mitm_limit, "Largest n for meet-in-the-middle queries")->capture_default_str();
  sub->add_option("--threads", config.threads, "Worker threads (0: RSUM_THREADS, else 1)")->capture_default_str();
}

void add_output_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("-o,--output", config.output, "Write the result to this file instead of stdout");
  sub->add_flag("--no-timestamp{false}", config.timestamp, "Omit the timestamp from JSON output");
}

CLI::App* add_weight_command(CLI::App& app, const std::string& name, const std::string& help, RunConfig& config) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("weights", config.weights, "Weight vector, e.g. 0.8,0.6 or sq:16/25,9/25")->required();
  sub->add_option("--mode", config.mode, "Numeric mode")
      ->check(CLI::IsMember({"auto", "exact", "float"}))
      ->capture_default_str();
  add_engine_options(sub, config);
  add_output_options(sub, config);
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  CLI::App app{"rsum: exact probabilities, certificates and sweeps for Rademacher sums", "rsum"};
  app.footer(kGrammar);
  app.require_subcommand(1);

  auto* exact = add_weight_command(app, "exact", "Pr(|eps^T x| <= t) by meet-in-the-middle enumeration", config);
  exact->add_option("--t", config.t, "Threshold, decimal or p/q")->capture_default_str();
  exact->add_flag("--strict", config.strict, "Use < t instead of <= t");

  add_weight_command(app, "distribution", "Full distribution of eps^T x as CSV", config);
  add_weight_command(app, "partition", "Prefix-event partition A_2..A_n (case 2)", config);
  auto* certify = add_weight_command(app, "certify", "Lower-bound certificate for Pr(|eps^T x| <= 1)", config);
  certify->add_flag("--exact-check", config.exact_check, "Attach the exact probability and check soundness");
  add_weight_command(app, "hybrid", "Partition-weighted refinement of the case-2 bound", config);
  add_weight_command(app, "decomp-check", "Check each link of the case-1 decomposition exactly", config);

  auto* mc = add_weight_command(app, "mc", "Monte Carlo estimate with a Wilson interval", config);
  mc->add_option("--t", config.t, "Threshold, decimal or p/q")->capture_default_str();
  mc->add_option("--samples", config.samples, "Number of samples")->check(CLI::PositiveNumber)->capture_default_str();
  mc->add_option("--seed", config.seed, "64-bit generator seed")->capture_default_str();
  mc->add_option("--confidence", config.confidence, "Interval confidence level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  auto* lemmas = app.add_subcommand("lemmas", "Sweep the g_k/h_k lemmas for k = 2..k_max as CSV");
  lemmas->add_option("--k-max", config.k_max, "Largest k")->capture_default_str();
  lemmas->add_option("--grid", config.grid, "Grid points per interval")->capture_default_str();
  add_output_options(lemmas, config);

  auto* search = app.add_subcommand("search", "Random-restart search for small Pr(|eps^T x| <= 1)");
  search->add_option("--n", config.n, "Dimension")->capture_default_str();
  search->add_option("--budget", config.budget, "Objective evaluations")->capture_default_str();
  search->add_option("--seed", config.seed, "64-bit generator seed")->capture_default_str();
  add_engine_options(search, config);
  add_output_options(search, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "rsum: " << e.what() << " (see rsum --help)\n";
    return 1;
  }
  config.command = app.get_subcommands().front()->get_name();

  Outcome outcome = execute(config);
  if (!outcome.text.empty()) {
    if (config.output.empty()) {
      std::cout << outcome.text << std::flush;
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!file || !(file << outcome.text)) {
        std::cerr << "rsum: cannot write " << config.output << "\n";
        return 1;
      }
    }
  }
  if (!outcome.message.empty()) std::cerr << "rsum: " << outcome.message << "\n";
  return exit_code(outcome.status);
}
