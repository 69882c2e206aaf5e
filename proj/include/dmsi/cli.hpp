#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace dmsi::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 2,
  kDisagreement = 3,
  kConstructionFailure = 4,
};

struct PlanOptions {
  std::filesystem::path instance;
  std::optional<unsigned> field_degree;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output;
};

struct VerifyOptions {
  std::filesystem::path instance;
  std::filesystem::path plan;
};

struct OracleOptions {
  std::filesystem::path instance;
  std::uint64_t budget = 10'000'000;
  std::optional<std::size_t> m_cap;
  bool parallel = false;
  std::optional<std::filesystem::path> output;
};

struct SimulateOptions {
  std::filesystem::path instance;
  std::filesystem::path plan;
  std::uint64_t payload_seed = 0;
  /// JSON array of n integers; overrides the random draw.
  std::optional<std::filesystem::path> payload;
};

struct TransformOptions {
  std::filesystem::path instance;
  std::filesystem::path matrix;
  bool auto_reduce = false;
};

// Each command writes its human-readable report to `out`, diagnostics to
// `err`, and returns one of the ExitCode values.
int cmd_plan(const PlanOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int cmd_transform(const TransformOptions& options, std::ostream& out, std::ostream& err);

}  // namespace dmsi::cli
