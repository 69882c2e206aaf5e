#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmsi/delay.hpp"
#include "dmsi/instance.hpp"

namespace dmsi {

/// m x k binary matrix; entry (i, j) set means broadcast packet i is
/// designated for client j. Indices are 0-based.
class AssignmentMatrix {
 public:
  AssignmentMatrix() = default;
  AssignmentMatrix(std::size_t rows, std::size_t cols);
  /// Every inner list must have the same length and contain only 0 or 1.
  static AssignmentMatrix from_rows(const std::vector<std::vector<int>>& rows);
  AssignmentMatrix(std::initializer_list<std::initializer_list<int>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool at(std::size_t i, std::size_t j) const { return bits_[index(i, j)] != 0; }
  void set(std::size_t i, std::size_t j, bool value) { bits_[index(i, j)] = value ? 1 : 0; }

  std::span<const std::uint8_t> row(std::size_t i) const;
  std::size_t column_weight(std::size_t j) const;
  std::vector<std::size_t> column_weights() const;
  bool row_is_zero(std::size_t i) const;
  std::size_t ones() const noexcept;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_entries(std::size_t row_a, std::size_t row_b, std::size_t col);
  void erase_row(std::size_t i);
  /// Keeps the first `count` rows.
  void truncate(std::size_t count);
  void append_row(std::span<const std::uint8_t> bits);

  /// Column c of the result is column order[c] of this matrix.
  AssignmentMatrix permute_columns(std::span<const std::size_t> order) const;
  std::vector<std::vector<int>> to_rows() const;

  friend bool operator==(const AssignmentMatrix&, const AssignmentMatrix&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

std::string to_string(const AssignmentMatrix& a);

struct DelayReport {
  std::vector<Delay> per_packet;
  Delay total;
  std::optional<Delay> closed_form;
};

/// Slowest designated client's delay; 0 for a row designated to nobody.
Delay packet_delay(const AssignmentMatrix& a, std::size_t row, std::span<const Delay> delays);

DelayReport total_delay(const AssignmentMatrix& a, std::span<const Delay> delays);

/// Every client receives at least as many packets as it is missing.
bool is_feasible(const AssignmentMatrix& a, const DmsiInstance& instance);

struct OptimalScheme {
  /// Client indices by non-increasing delay (see delay_ranking).
  std::vector<std::size_t> ranking;
  /// Columns in the instance's original client order.
  AssignmentMatrix matrix;
};

/// The minimum-delay assignment: max_j w_j rows, and after ranking clients by
/// delay each client's column is filled with ones in its top w_j rows.
OptimalScheme optimal_assignment(const DmsiInstance& instance);

/// sum over ranked clients of d_j * max(0, w_j - max of the w's ranked before it).
Delay closed_form_delay(const DmsiInstance& instance);

/// Same sum evaluated under an explicit client order; `order` must be a
/// permutation of [0, k) with non-increasing delays for the value to be optimal.
Delay closed_form_delay(const DmsiInstance& instance, std::span<const std::size_t> order);

/// Clears surplus ones so every column weight equals w_j. Within a column the
/// one sitting in the row with the largest current packet delay is cleared
/// first (ties: the lowest such row). Throws if a column is under weight.
AssignmentMatrix reduce_to_exact_weights(const AssignmentMatrix& a, const DmsiInstance& instance);

struct TraceStep {
  std::string label;
  AssignmentMatrix matrix;  // ranked column order
  Delay total;
};

struct TransformTrace {
  std::vector<std::size_t> ranking;
  std::vector<TraceStep> steps;  // steps.front() is the unmodified input

  const AssignmentMatrix& final_matrix() const { return steps.back().matrix; }
};

/// Rewrites an exact-weight assignment into the optimal one column by column,
/// recording a snapshot after the initial state and each of the k+1 steps.
/// Throws ValidationError if any column weight differs from w_j.
TransformTrace transform_to_optimal(const AssignmentMatrix& a, const DmsiInstance& instance);

}  // namespace dmsi
