#include "dmsi/assignment.hpp"

#include <algorithm>
#include <sstream>

#include "dmsi/error.hpp"

namespace dmsi {

AssignmentMatrix::AssignmentMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

AssignmentMatrix AssignmentMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  AssignmentMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw ValidationError("assignment row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1) {
        throw ValidationError("assignment entries must be 0 or 1");
      }
      out.set(i, j, rows[i][j] == 1);
    }
  }
  return out;
}

AssignmentMatrix::AssignmentMatrix(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<int>> copy;
  for (const auto& r : rows) {
    copy.emplace_back(r);
  }
  *this = from_rows(copy);
}

std::size_t AssignmentMatrix::index(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw ValidationError("assignment index (" + std::to_string(i + 1) + ", " +
                          std::to_string(j + 1) + ") out of range for " + std::to_string(rows_) +
                          "x" + std::to_string(cols_) + " matrix");
  }
  return i * cols_ + j;
}

std::span<const std::uint8_t> AssignmentMatrix::row(std::size_t i) const {
  if (i >= rows_) {
    throw ValidationError("row " + std::to_string(i + 1) + " out of range");
  }
  return {bits_.data() + i * cols_, cols_};
}

std::size_t AssignmentMatrix::column_weight(std::size_t j) const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    w += at(i, j) ? 1 : 0;
  }
  return w;
}

std::vector<std::size_t> AssignmentMatrix::column_weights() const {
  std::vector<std::size_t> out(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out[j] += bits_[i * cols_ + j];
    }
  }
  return out;
}

bool AssignmentMatrix::row_is_zero(std::size_t i) const {
  const auto r = row(i);
  return std::none_of(r.begin(), r.end(), [](std::uint8_t b) { return b != 0; });
}

std::size_t AssignmentMatrix::ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void AssignmentMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) {
    return;
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    std::swap(bits_[index(a, j)], bits_[index(b, j)]);
  }
}

void AssignmentMatrix::swap_entries(std::size_t row_a, std::size_t row_b, std::size_t col) {
  std::swap(bits_[index(row_a, col)], bits_[index(row_b, col)]);
}

void AssignmentMatrix::erase_row(std::size_t i) {
  if (i >= rows_) {
    throw ValidationError("row " + std::to_string(i + 1) + " out of range");
  }
  const auto first = bits_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
  bits_.erase(first, first + static_cast<std::ptrdiff_t>(cols_));
  --rows_;
}

void AssignmentMatrix::truncate(std::size_t count) {
  if (count < rows_) {
    rows_ = count;
    bits_.resize(rows_ * cols_);
  }
}

void AssignmentMatrix::append_row(std::span<const std::uint8_t> bits) {
  if (bits.size() != cols_) {
    throw ValidationError("appended row has wrong length");
  }
  for (auto b : bits) {
    bits_.push_back(b != 0 ? 1 : 0);
  }
  ++rows_;
}

AssignmentMatrix AssignmentMatrix::permute_columns(std::span<const std::size_t> order) const {
  if (order.size() != cols_) {
    throw ValidationError("column permutation has wrong length");
  }
  AssignmentMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out.set(i, c, at(i, order[c]));
    }
  }
  return out;
}

std::vector<std::vector<int>> AssignmentMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out[i][j] = at(i, j) ? 1 : 0;
    }
  }
  return out;
}

std::string to_string(const AssignmentMatrix& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out << (j ? " " : "") << (a.at(i, j) ? '1' : '0');
    }
    out << '\n';
  }
  return out.str();
}

Delay packet_delay(const AssignmentMatrix& a, std::size_t row, std::span<const Delay> delays) {
  if (delays.size() != a.cols()) {
    throw ValidationError("expected " + std::to_string(a.cols()) + " client delays, got " +
                          std::to_string(delays.size()));
  }
  const auto bits = a.row(row);
  Delay worst;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] && delays[j] > worst) {
      worst = delays[j];
    }
  }
  return worst;
}

DelayReport total_delay(const AssignmentMatrix& a, std::span<const Delay> delays) {
  DelayReport report;
  report.per_packet.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    report.per_packet.push_back(packet_delay(a, i, delays));
    report.total += report.per_packet.back();
  }
  return report;
}

bool is_feasible(const AssignmentMatrix& a, const DmsiInstance& instance) {
  if (a.cols() != instance.k()) {
    throw ValidationError("assignment has " + std::to_string(a.cols()) + " columns but the instance has " +
                          std::to_string(instance.k()) + " clients");
  }
  const auto w = want_counts(instance);
  const auto weights = a.column_weights();
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (weights[j] < w[j]) {
      return false;
    }
  }
  return true;
}

OptimalScheme optimal_assignment(const DmsiInstance& instance) {
  OptimalScheme scheme;
  scheme.ranking = delay_ranking(instance);
  const auto w = want_counts(instance);
  const std::size_t m = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
  scheme.matrix = AssignmentMatrix(m, instance.k());
  // Filling each column's top w_j rows is the same in ranked or original
  // column order; the ranking only matters for which rows end up with which delay.
  for (std::size_t j = 0; j < instance.k(); ++j) {
    for (std::size_t i = 0; i < w[j]; ++i) {
      scheme.matrix.set(i, j, true);
    }
  }
  return scheme;
}

Delay closed_form_delay(const DmsiInstance& instance, std::span<const std::size_t> order) {
  if (order.size() != instance.k()) {
    throw ValidationError("client order has wrong length");
  }
  const auto w = want_counts(instance);
  Delay total;
  std::size_t covered = 0;  // max w over clients already counted; w_0 = 0
  for (auto j : order) {
    if (w.at(j) > covered) {
      total += instance.client(j).delay * static_cast<std::int64_t>(w[j] - covered);
      covered = w[j];
    }
  }
  return total;
}

Delay closed_form_delay(const DmsiInstance& instance) {
  const auto order = delay_ranking(instance);
  return closed_form_delay(instance, order);
}

AssignmentMatrix reduce_to_exact_weights(const AssignmentMatrix& a, const DmsiInstance& instance) {
  if (!is_feasible(a, instance)) {
    throw ValidationError("assignment is not feasible: some column is below its want count");
  }
  const auto w = want_counts(instance);
  const auto delays = instance.delays();
  AssignmentMatrix out = a;
  for (std::size_t j = 0; j < out.cols(); ++j) {
    std::size_t weight = out.column_weight(j);
    while (weight > w[j]) {
      std::size_t victim = out.rows();
      Delay worst;
      for (std::size_t i = 0; i < out.rows(); ++i) {
        if (!out.at(i, j)) {
          continue;
        }
        const Delay d = packet_delay(out, i, delays);
        if (victim == out.rows() || d > worst) {
          victim = i;
          worst = d;
        }
      }
      out.set(victim, j, false);
      --weight;
    }
  }
  return out;
}

}  // namespace dmsi
