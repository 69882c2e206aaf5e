#pragma once

// Shared fixtures for the test suites: the four-client worked example and a
// seeded random-instance generator.

#include <algorithm>
#include <random>
#include <vector>

#include "dmsi/assignment.hpp"
#include "dmsi/coding.hpp"
#include "dmsi/instance.hpp"

namespace dmsi::test {

// n = 6; delays 8, 4, 2, 1 (packet size 8 over bandwidths 1, 2, 4, 8).
inline DmsiInstance example_instance() {
  return DmsiInstance(6, {
                             {{0, 2, 4, 5}, Delay(8)},
                             {{0, 1, 2, 3, 4}, Delay(4)},
                             {{2, 3, 5}, Delay(2)},
                             {{3}, Delay(1)},
                         });
}

// Packet Assignment A (total 24).
inline AssignmentMatrix assignment_a() {
  return {{1, 0, 1, 1}, {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}};
}

// Packet Assignment B, the optimum (total 20).
inline AssignmentMatrix assignment_b() {
  return {{1, 1, 1, 1}, {1, 0, 1, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}, {0, 0, 0, 1}};
}

// The published GF(4) broadcast packets for assignment B, with alpha = 2 and
// alpha^2 = 3 under x^2 + x + 1.
inline coding::CodingMatrix published_gf4_code() {
  return coding::CodingMatrix::from_rows(gf::Field(2),
                                         {
                                             {0, 0, 2, 1, 3, 2},
                                             {1, 1, 3, 2, 1, 1},
                                             {2, 3, 1, 2, 1, 3},
                                             {1, 0, 3, 2, 0, 3},
                                             {3, 2, 1, 2, 1, 0},
                                         },
                                         6);
}

inline std::vector<Delay> example_delays() { return {Delay(8), Delay(4), Delay(2), Delay(1)}; }

/// n in [0, max_n], k in [min_k, max_k], integer delays in [1, max_delay],
/// each packet cached by each client with probability 1/2.
inline DmsiInstance random_instance(std::mt19937_64& rng, std::size_t max_n, std::size_t max_k,
                                    std::int64_t max_delay = 16, std::size_t min_k = 1) {
  std::uniform_int_distribution<std::size_t> n_dist(0, max_n);
  std::uniform_int_distribution<std::size_t> k_dist(min_k, max_k);
  std::uniform_int_distribution<std::int64_t> d_dist(1, max_delay);
  std::bernoulli_distribution coin(0.5);
  const std::size_t n = n_dist(rng);
  const std::size_t k = k_dist(rng);
  std::vector<ClientSpec> clients(k);
  for (auto& c : clients) {
    for (std::size_t i = 0; i < n; ++i) {
      if (coin(rng)) {
        c.has.push_back(i);
      }
    }
    c.delay = Delay(d_dist(rng));
  }
  return DmsiInstance(n, std::move(clients));
}

/// Random m x k matrix with column weights exactly w_j, m in [max w, max w + extra].
inline AssignmentMatrix random_exact_weight_matrix(std::mt19937_64& rng, const DmsiInstance& instance,
                                                   std::size_t extra_rows = 3) {
  const auto w = want_counts(instance);
  const std::size_t m_min = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
  std::uniform_int_distribution<std::size_t> extra(0, extra_rows);
  const std::size_t m = m_min + extra(rng);
  AssignmentMatrix a(m, instance.k());
  std::vector<std::size_t> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i] = i;
  }
  for (std::size_t j = 0; j < instance.k(); ++j) {
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t t = 0; t < w[j]; ++t) {
      a.set(rows[t], j, true);
    }
  }
  return a;
}

/// Uniformly random m x k binary matrix.
inline AssignmentMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t k) {
  std::bernoulli_distribution coin(0.5);
  AssignmentMatrix a(m, k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      a.set(i, j, coin(rng));
    }
  }
  return a;
}

}  // namespace dmsi::test
