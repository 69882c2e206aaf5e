#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <optional>

#include "dmsi/assignment.hpp"
#include "dmsi/delay.hpp"
#include "dmsi/instance.hpp"

namespace dmsi::oracle {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;
inline constexpr std::size_t kDefaultRowCap = 12;
inline constexpr std::size_t kMaxClients = 20;

struct Options {
  /// Largest row count searched; defaults to min(sum of w_j, 12), never below max w_j.
  std::optional<std::size_t> m_cap;
  /// Maximum number of search nodes visited before giving up.
  std::uint64_t budget = kDefaultBudget;
  bool parallel = false;
  /// Worker count when parallel; 0 picks hardware_concurrency.
  unsigned threads = 0;
};

struct OracleResult {
  Delay best_total;
  /// Rows in descending lexicographic order, columns in original client order.
  AssignmentMatrix best_matrix;
  std::uint64_t matrices_examined = 0;
  std::size_t m_min = 0;
  std::size_t m_max = 0;

  friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

std::size_t default_m_cap(const DmsiInstance& instance);

/// Exhaustive minimum total delay over every assignment with exactly w_j ones
/// in column j, no empty rows, and between max w_j and m_cap rows. Row order
/// does not affect delay, so each row multiset is visited once. Ties go to the
/// fewest rows, then the lexicographically smallest row-sorted matrix.
/// Throws BudgetExceeded when the search grows past `options.budget` nodes.
OracleResult brute_force_optimum(const DmsiInstance& instance, const Options& options = {});

/// The exhaustive optimum equals the closed-form delay.
bool check_theorem(const DmsiInstance& instance, const Options& options = {});

nlohmann::ordered_json result_to_json(const OracleResult& result);

}  // namespace dmsi::oracle
