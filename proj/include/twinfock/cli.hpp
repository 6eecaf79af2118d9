#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twinfock::cli {

enum ExitCode : int { kOk = 0, kUsageError = 2, kDomainError = 3, kIoError = 4 };

enum class Command { Curve, Scan, Uncertainty, Region, Simulate, Fit, Limits };
enum class OutputFormat { Csv, Json };

/// Malformed flags or grid specifications.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Evenly spaced phases, both ends included.
struct GridSpec {
  double start = 0.0;
  double stop = 3.141592653589793;
  std::size_t points = 181;

  std::vector<double> values() const;
};

/// Plain radians or a multiple of pi: "1.5", "pi", "-pi", "0.25pi".
double parse_angle(std::string_view token);

/// "start:stop:points"; requires points >= 2 and stop > start.
GridSpec parse_grid(std::string_view spec);

struct RunConfig {
  Command command = Command::Curve;

  std::string model = "twin-fock";  // twin-fock | mes | p2 | p4
  std::optional<std::size_t> n;     // N for twin-fock / mes
  std::optional<double> visibility;
  std::optional<double> r;

  GridSpec grid;
  std::size_t n_max = 50;
  std::optional<std::size_t> n_total;
  double eta = 1.0;
  double tolerance = 1e-6;

  double peak_rate = 8837.0;
  double exposure = 1.0;
  std::uint64_t seed = 1;

  std::string input_path;
  std::string fit_kind = "p2";

  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
};

/// Environment variable naming a directory that relative output paths are
/// resolved against.
inline constexpr const char* kOutputDirEnv = "TWINFOCK_OUTPUT_DIR";

/// Executes one command. Diagnostics go to `err` as a single line.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twinfock::cli
