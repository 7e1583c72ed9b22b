#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <string>

namespace rsum_cli {

/// Everything that determines a run's output. Serialized into each JSON
/// document so a run can be replayed.
struct RunConfig {
  std::string command;
  std::string weights;
  std::string mode = "auto";  // auto, exact, float
  std::string t = "1";
  bool strict = false;
  bool exact_check = false;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  double confidence = 0.99;
  std::uint64_t budget = 1000;
  unsigned n = 2;
  unsigned k_max = 1000;
  std::size_t grid = 10000;
  unsigned full_limit = 24;
  unsigned mitm_limit = 40;
  unsigned threads = 0;
  std::string output;  // empty: stdout
  bool timestamp = true;

  /// "json" or "csv", fixed by the command.
  std::string format() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

void to_json(nlohmann::ordered_json& j, const RunConfig& c);
void from_json(const nlohmann::ordered_json& j, RunConfig& c);

}  // namespace rsum_cli
