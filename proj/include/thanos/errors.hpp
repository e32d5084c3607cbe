#pragma once

#include <stdexcept>
#include <string>

namespace thanos {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IngestionError : std::runtime_error {
  explicit IngestionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite iterate detected during the decentralized loop.
struct DivergenceError : std::runtime_error {
  long iteration;
  int agent_id;
  DivergenceError(const std::string& msg, long k, int agent)
      : std::runtime_error(msg), iteration(k), agent_id(agent) {}
};

}  // namespace thanos
