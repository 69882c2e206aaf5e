#include "dmsi/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "dmsi/error.hpp"

namespace dmsi::oracle {
namespace {

// Rows are bitmasks with column 0 in the most significant position, so
// numeric order on masks is lexicographic order on rows.
using Mask = std::uint32_t;

struct Best {
  bool found = false;
  Delay total;
  std::vector<Mask> rows;  // non-increasing
  std::uint64_t examined = 0;

  // Smaller total, then fewer rows, then lexicographically smaller rows.
  bool better_than(const Best& other) const {
    if (!other.found) {
      return found;
    }
    if (!found) {
      return false;
    }
    if (total != other.total) {
      return total < other.total;
    }
    if (rows.size() != other.rows.size()) {
      return rows.size() < other.rows.size();
    }
    return rows < other.rows;
  }
};

class Search {
 public:
  Search(const DmsiInstance& instance, std::atomic<std::uint64_t>& nodes, std::uint64_t budget)
      : k_(instance.k()), nodes_(nodes), budget_(budget), row_delay_(std::size_t{1} << k_) {
    const auto delays = instance.delays();
    for (Mask mask = 1; mask < row_delay_.size(); ++mask) {
      Delay worst;
      for (std::size_t j = 0; j < k_; ++j) {
        if (mask & bit(j)) {
          worst = std::max(worst, delays[j]);
        }
      }
      row_delay_[mask] = worst;
    }
  }

  Mask bit(std::size_t column) const { return Mask{1} << (k_ - 1 - column); }

  /// Runs the subtree whose first row is `first` (0 means the empty matrix).
  Best run(std::size_t rows, Mask first, std::vector<std::size_t> remaining) {
    best_ = Best{};
    stack_.clear();
    Delay total;
    if (rows == 0) {
      visit();
      leaf(total);
      return best_;
    }
    if (!take(first, remaining)) {
      return best_;
    }
    stack_.push_back(first);
    total += row_delay_[first];
    descend(rows - 1, first, remaining, total);
    return best_;
  }

  /// Subtracts the row from the remaining weights; false if that breaks a bound.
  bool take(Mask row, std::vector<std::size_t>& remaining) const {
    for (std::size_t j = 0; j < k_; ++j) {
      if (row & bit(j)) {
        if (remaining[j] == 0) {
          return false;
        }
        --remaining[j];
      }
    }
    return true;
  }

  static bool bounded(std::size_t rows_left, const std::vector<std::size_t>& remaining) {
    const std::size_t most = remaining.empty() ? 0 : *std::max_element(remaining.begin(), remaining.end());
    const std::size_t sum = std::accumulate(remaining.begin(), remaining.end(), std::size_t{0});
    // Every remaining row is non-empty and each column can take one per row.
    return most <= rows_left && sum >= rows_left;
  }

 private:
  void visit() {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
      throw BudgetExceeded("oracle search exceeded its budget of " + std::to_string(budget_) +
                           " nodes");
    }
  }

  void leaf(const Delay& total) {
    Best candidate;
    candidate.found = true;
    candidate.total = total;
    candidate.rows = stack_;
    ++best_.examined;
    if (candidate.better_than(best_)) {
      const auto examined = best_.examined;
      best_ = std::move(candidate);
      best_.examined = examined;
    }
  }

  void descend(std::size_t rows_left, Mask max_row, std::vector<std::size_t>& remaining,
               const Delay& total) {
    visit();
    if (!bounded(rows_left, remaining)) {
      return;
    }
    if (rows_left == 0) {
      leaf(total);
      return;
    }
    Mask support = 0;
    for (std::size_t j = 0; j < k_; ++j) {
      if (remaining[j] > 0) {
        support |= bit(j);
      }
    }
    for (Mask row = std::min(max_row, support); row > 0; --row) {
      if (row & ~support) {
        continue;
      }
      for (std::size_t j = 0; j < k_; ++j) {
        if (row & bit(j)) {
          --remaining[j];
        }
      }
      stack_.push_back(row);
      descend(rows_left - 1, row, remaining, total + row_delay_[row]);
      stack_.pop_back();
      for (std::size_t j = 0; j < k_; ++j) {
        if (row & bit(j)) {
          ++remaining[j];
        }
      }
    }
  }

  std::size_t k_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t budget_;
  std::vector<Delay> row_delay_;
  std::vector<Mask> stack_;
  Best best_;
};

struct Task {
  std::size_t rows;
  Mask first;
};

}  // namespace

std::size_t default_m_cap(const DmsiInstance& instance) {
  const auto w = want_counts(instance);
  const std::size_t sum = std::accumulate(w.begin(), w.end(), std::size_t{0});
  const std::size_t most = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
  return std::max(most, std::min(sum, kDefaultRowCap));
}

OracleResult brute_force_optimum(const DmsiInstance& instance, const Options& options) {
  const std::size_t k = instance.k();
  if (k > kMaxClients) {
    throw BudgetExceeded("oracle supports at most " + std::to_string(kMaxClients) + " clients");
  }
  const auto w = want_counts(instance);
  const std::size_t m_min = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
  const std::size_t m_max = options.m_cap.value_or(default_m_cap(instance));
  if (m_max < m_min) {
    throw ValidationError("m_cap " + std::to_string(m_max) + " is below the minimum row count " +
                          std::to_string(m_min));
  }

  std::atomic<std::uint64_t> nodes{0};
  std::vector<Task> tasks;
  {
    Search probe(instance, nodes, options.budget);
    const Mask all = k == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << k) - 1);
    for (std::size_t m = m_min; m <= m_max; ++m) {
      if (m == 0) {
        tasks.push_back({0, 0});
        continue;
      }
      for (Mask first = all; first > 0; --first) {
        auto remaining = w;
        if (probe.take(first, remaining) && Search::bounded(m - 1, remaining)) {
          tasks.push_back({m, first});
        }
      }
    }
  }

  std::vector<Best> results(tasks.size());
  auto run_task = [&](Search& search, std::size_t t) {
    results[t] = search.run(tasks[t].rows, tasks[t].first, w);
  };

  if (options.parallel && tasks.size() > 1) {
    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    for (unsigned id = 0; id < threads; ++id) {
      workers.emplace_back([&, id] {
        try {
          Search search(instance, nodes, options.budget);
          for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
            run_task(search, t);
          }
        } catch (...) {
          errors[id] = std::current_exception();
          next.store(tasks.size());
        }
      });
    }
    for (auto& worker : workers) {
      worker.join();
    }
    for (const auto& error : errors) {
      if (error) {
        std::rethrow_exception(error);
      }
    }
  } else {
    Search search(instance, nodes, options.budget);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      run_task(search, t);
    }
  }

  Best best;
  std::uint64_t examined = 0;
  for (auto& r : results) {
    examined += r.examined;
    if (r.better_than(best)) {
      best = std::move(r);
    }
  }
  if (!best.found) {
    throw std::logic_error("oracle found no feasible assignment");
  }

  OracleResult result;
  result.best_total = best.total;
  result.best_matrix = AssignmentMatrix(best.rows.size(), k);
  for (std::size_t i = 0; i < best.rows.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      result.best_matrix.set(i, j, (best.rows[i] >> (k - 1 - j)) & 1u);
    }
  }
  result.matrices_examined = examined;
  result.m_min = m_min;
  result.m_max = m_max;
  return result;
}

bool check_theorem(const DmsiInstance& instance, const Options& options) {
  return brute_force_optimum(instance, options).best_total == closed_form_delay(instance);
}

nlohmann::ordered_json result_to_json(const OracleResult& result) {
  nlohmann::ordered_json doc;
  doc["best_total"] = result.best_total.to_string();
  doc["best_matrix"] = result.best_matrix.to_rows();
  doc["matrices_examined"] = result.matrices_examined;
  doc["m_range"] = {result.m_min, result.m_max};
  return doc;
}

}  // namespace dmsi::oracle
