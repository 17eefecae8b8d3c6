#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace repsel {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Bad or inconsistent user input (config files, CSV schemas, CLI args).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A pipeline stage was invoked before its inputs exist.
struct UpstreamMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The LP solver failed in a way the caller cannot recover from.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Training produced a non-finite loss; carries the loss trace up to the abort.
struct TrainingDivergence : std::runtime_error {
  TrainingDivergence(const std::string& msg, std::vector<double> trace)
      : std::runtime_error(msg), loss_trace(std::move(trace)) {}
  std::vector<double> loss_trace;
};

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 14695981039346656037ull);
uint64_t fnv1a64(const std::string& s, uint64_t seed = 14695981039346656037ull);
std::string hex64(uint64_t v);

/// Round-trip-exact decimal text for a double ("%.17g"), used by every
/// artifact writer so identical runs produce identical bytes.
std::string fmt_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace repsel
