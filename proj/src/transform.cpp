#include <algorithm>
#include <stdexcept>

#include "dmsi/assignment.hpp"
#include "dmsi/error.hpp"

namespace dmsi {
namespace {

// Reorders rows [first, last) so those with a one in `col` come first,
// keeping relative order within each group.
void stable_partition_rows(AssignmentMatrix& a, std::size_t first, std::size_t last,
                           std::size_t col) {
  std::vector<std::size_t> order;
  for (std::size_t i = first; i < last; ++i) {
    if (a.at(i, col)) {
      order.push_back(i);
    }
  }
  for (std::size_t i = first; i < last; ++i) {
    if (!a.at(i, col)) {
      order.push_back(i);
    }
  }
  const AssignmentMatrix before = a;
  for (std::size_t t = 0; t < order.size(); ++t) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      a.set(first + t, j, before.at(order[t], j));
    }
  }
}

// Rows with a one somewhere in columns [0, col). After the earlier steps these
// are always a prefix of the matrix.
std::size_t upper_row_count(const AssignmentMatrix& a, std::size_t col) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool upper = false;
    for (std::size_t j = 0; j < col && !upper; ++j) {
      upper = a.at(i, j);
    }
    if (upper) {
      if (count != i) {
        throw std::logic_error("upper rows are not a prefix");
      }
      ++count;
    }
  }
  return count;
}

// One column step: sort the column's ones to the top of the upper block,
// lift lower ones into the remaining upper zeros, then gather any leftover
// lower ones at the top of the lower block.
void align_column(AssignmentMatrix& a, std::size_t col) {
  const std::size_t upper = upper_row_count(a, col);

  std::size_t top = 0;
  std::size_t bottom = upper;
  while (true) {
    while (top < bottom && a.at(top, col)) {
      ++top;
    }
    while (bottom > top && !a.at(bottom - 1, col)) {
      --bottom;
    }
    if (bottom <= top) {
      break;
    }
    a.swap_entries(top, bottom - 1, col);
  }

  std::size_t zero = top;  // first zero in the upper block, if any
  for (std::size_t i = upper; i < a.rows() && zero < upper; ++i) {
    if (a.at(i, col)) {
      a.swap_entries(zero, i, col);
      ++zero;
    }
  }

  stable_partition_rows(a, upper, a.rows(), col);
}

}  // namespace

TransformTrace transform_to_optimal(const AssignmentMatrix& a, const DmsiInstance& instance) {
  if (a.cols() != instance.k()) {
    throw ValidationError("assignment has " + std::to_string(a.cols()) +
                          " columns but the instance has " + std::to_string(instance.k()) +
                          " clients");
  }
  TransformTrace trace;
  trace.ranking = delay_ranking(instance);
  const auto w = want_counts(instance);
  std::vector<std::size_t> ranked_w;
  std::vector<Delay> ranked_delays;
  for (auto j : trace.ranking) {
    ranked_w.push_back(w[j]);
    ranked_delays.push_back(instance.client(j).delay);
  }

  AssignmentMatrix current = a.permute_columns(trace.ranking);
  const auto weights = current.column_weights();
  for (std::size_t c = 0; c < weights.size(); ++c) {
    if (weights[c] != ranked_w[c]) {
      throw ValidationError("client " + std::to_string(trace.ranking[c] + 1) + " has column weight " +
                            std::to_string(weights[c]) + " but wants " +
                            std::to_string(ranked_w[c]) + " packets");
    }
  }
  const std::size_t optimal_rows =
      ranked_w.empty() ? 0 : *std::max_element(ranked_w.begin(), ranked_w.end());

  auto record = [&](std::string label) {
    trace.steps.push_back({std::move(label), current, total_delay(current, ranked_delays).total});
  };
  record("initial");

  const std::size_t k = instance.k();
  if (k > 0) {
    stable_partition_rows(current, 0, current.rows(), 0);
    record("step 1");
  }
  for (std::size_t c = 1; c < k; ++c) {
    align_column(current, c);
    record("step " + std::to_string(c + 1));
  }

  for (std::size_t i = optimal_rows; i < current.rows(); ++i) {
    if (!current.row_is_zero(i)) {
      throw std::logic_error("row beyond the optimal count is not empty");
    }
  }
  current.truncate(optimal_rows);
  record("step " + std::to_string(k + 1));
  return trace;
}

}  // namespace dmsi
