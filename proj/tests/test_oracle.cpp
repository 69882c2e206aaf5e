#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dmsi/error.hpp"
#include "dmsi/oracle.hpp"
#include "support.hpp"

using dmsi::AssignmentMatrix;
using dmsi::Delay;
using dmsi::DmsiInstance;
namespace o = dmsi::oracle;
namespace t = dmsi::test;

namespace {

std::vector<std::vector<int>> sorted_rows(const AssignmentMatrix& a) {
  auto rows = a.to_rows();
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

TEST_CASE("worked example optimum") {
  const auto inst = t::example_instance();
  const auto r = o::brute_force_optimum(inst);
  CHECK(r.best_total == Delay(20));
  CHECK(sorted_rows(r.best_matrix) == sorted_rows(t::assignment_b()));
  CHECK(r.m_min == 5);
  CHECK(r.m_max == 11);
  CHECK(r.matrices_examined > 0);
  CHECK(dmsi::is_feasible(r.best_matrix, inst));
  CHECK(dmsi::total_delay(r.best_matrix, inst.delays()).total == r.best_total);
  CHECK(o::check_theorem(inst));
}

TEST_CASE("forced and empty cases") {
  const DmsiInstance single(2, {{{}, Delay(5)}});
  const auto r = o::brute_force_optimum(single);
  CHECK(r.best_total == Delay(10));
  CHECK(r.best_matrix == AssignmentMatrix{{1}, {1}});

  const DmsiInstance satisfied(2, {{{0, 1}, Delay(5)}, {{0, 1}, Delay(2)}});
  const auto e = o::brute_force_optimum(satisfied);
  CHECK(e.best_total == Delay(0));
  CHECK(e.best_matrix == AssignmentMatrix(0, 2));
  CHECK(e.matrices_examined == 1);

  const auto none = o::brute_force_optimum(DmsiInstance{});
  CHECK(none.best_total == Delay(0));
}

TEST_CASE("equal delays collapse to max w times d") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = t::random_instance(rng, 5, 4);
    std::vector<dmsi::ClientSpec> clients = inst.clients();
    for (auto& c : clients) {
      c.delay = Delay(3);
    }
    inst = DmsiInstance(inst.n(), clients);
    const auto w = dmsi::want_counts(inst);
    const auto expected = Delay(3) * static_cast<std::int64_t>(*std::max_element(w.begin(), w.end()));
    REQUIRE(o::brute_force_optimum(inst).best_total == expected);
    REQUIRE(o::check_theorem(inst));
  }
}

TEST_CASE("exhaustive optimum equals the closed form on random instances") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = t::random_instance(rng, 6, 4);
    const auto r = o::brute_force_optimum(inst);
    REQUIRE(r.best_total == dmsi::closed_form_delay(inst));
    REQUIRE(r.best_total == dmsi::total_delay(dmsi::optimal_assignment(inst).matrix, inst.delays()).total);
    REQUIRE(dmsi::is_feasible(r.best_matrix, inst));
    // fewest rows wins ties, so the winner never uses more than max w rows
    REQUIRE(r.best_matrix.rows() == r.m_min);
  }
}

TEST_CASE("searching only max w rows finds the same optimum") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = t::random_instance(rng, 6, 4);
    const auto wide = o::brute_force_optimum(inst);
    o::Options narrow;
    narrow.m_cap = wide.m_min;
    REQUIRE(o::brute_force_optimum(inst, narrow).best_total == wide.best_total);
  }
}

TEST_CASE("optimum is invariant under client permutation") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = t::random_instance(rng, 5, 4);
    std::vector<std::size_t> perm(inst.k());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<dmsi::ClientSpec> permuted;
    for (auto j : perm) {
      permuted.push_back(inst.client(j));
    }
    const DmsiInstance shuffled(inst.n(), permuted);
    REQUIRE(o::brute_force_optimum(shuffled).best_total == o::brute_force_optimum(inst).best_total);
  }
}

TEST_CASE("parallel search matches the serial one") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = t::random_instance(rng, 6, 4);
    o::Options parallel;
    parallel.parallel = true;
    parallel.threads = 4;
    REQUIRE(o::brute_force_optimum(inst, parallel) == o::brute_force_optimum(inst));
  }
}

TEST_CASE("budget and m_cap validation") {
  const auto inst = t::example_instance();
  o::Options tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(o::brute_force_optimum(inst, tiny), dmsi::BudgetExceeded);
  tiny.parallel = true;
  tiny.threads = 3;
  CHECK_THROWS_AS(o::brute_force_optimum(inst, tiny), dmsi::BudgetExceeded);

  o::Options low;
  low.m_cap = 4;
  CHECK_THROWS_AS(o::brute_force_optimum(inst, low), dmsi::ValidationError);

  CHECK(o::default_m_cap(inst) == 11);
  const DmsiInstance greedy(7, {{{}, Delay(1)}, {{}, Delay(1)}, {{}, Delay(1)}});
  CHECK(o::default_m_cap(greedy) == 12);
}

TEST_CASE("result JSON") {
  const auto r = o::brute_force_optimum(t::example_instance());
  const auto doc = o::result_to_json(r);
  CHECK(doc["best_total"] == "20");
  CHECK(doc["best_matrix"].size() == 5);
  CHECK(doc["m_range"] == nlohmann::json::array({5, 11}));
}
