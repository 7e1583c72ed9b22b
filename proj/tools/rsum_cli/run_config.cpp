#include "run_config.hpp"

namespace rsum_cli {

std::string RunConfig::format() const { return command == "lemmas" || command == "distribution" ? "csv" : "json"; }

void to_json(nlohmann::ordered_json& j, const RunConfig& c) {
  j = {{"command", c.command},
       {"weights", c.weights},
       {"mode", c.mode},
       {"t", c.t},
       {"strict", c.strict},
       {"exact_check", c.exact_check},
       {"samples", c.samples},
       {"seed", c.seed},
       {"confidence", c.confidence},
       {"budget", c.budget},
       {"n", c.n},
       {"k_max", c.k_max},
       {"grid", c.grid},
       {"full_limit", c.full_limit},
       {"mitm_limit", c.mitm_limit},
       {"threads", c.threads},
       {"output", c.output},
       {"timestamp", c.timestamp},
       {"format", c.format()}};
}

void from_json(const nlohmann::ordered_json& j, RunConfig& c) {
  RunConfig d;
  c.command = j.value("command", d.command);
  c.weights = j.value("weights", d.weights);
  c.mode = j.value("mode", d.mode);
  c.t = j.value("t", d.t);
  c.strict = j.value("strict", d.strict);
  c.exact_check = j.value("exact_check", d.exact_check);
  c.samples = j.value("samples", d.samples);
  c.seed = j.value("seed", d.seed);
  c.confidence = j.value("confidence", d.confidence);
  c.budget = j.value("budget", d.budget);
  c.n = j.value("n", d.n);
  c.k_max = j.value("k_max", d.k_max);
  c.grid = j.value("grid", d.grid);
  c.full_limit = j.value("full_limit", d.full_limit);
  c.mitm_limit = j.value("mitm_limit", d.mitm_limit);
  c.threads = j.value("threads", d.threads);
  c.output = j.value("output", d.output);
  c.timestamp = j.value("timestamp", d.timestamp);
}

}  // namespace rsum_cli
