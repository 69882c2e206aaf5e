#include <doctest.h>

#include <random>

#include "dmsi/assignment.hpp"
#include "dmsi/error.hpp"
#include "support.hpp"

using dmsi::AssignmentMatrix;
using dmsi::Delay;
namespace t = dmsi::test;

TEST_CASE("worked transformation of assignment A") {
  const auto trace = dmsi::transform_to_optimal(t::assignment_a(), t::example_instance());
  REQUIRE(trace.steps.size() == 6);  // initial + k + 1

  const AssignmentMatrix after_step1{{1, 0, 1, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}};
  const AssignmentMatrix after_step2{{1, 1, 1, 1}, {1, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}};
  const AssignmentMatrix after_step3{{1, 1, 1, 1}, {1, 0, 1, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}, {0, 0, 0, 1}};

  CHECK(trace.steps[0].label == "initial");
  CHECK(trace.steps[0].matrix == t::assignment_a());
  CHECK(trace.steps[1].matrix == after_step1);
  CHECK(trace.steps[2].matrix == after_step2);
  CHECK(trace.steps[3].matrix == after_step3);
  CHECK(trace.steps[4].matrix == after_step3);
  CHECK(trace.steps[5].label == "step 5");
  CHECK(trace.final_matrix() == t::assignment_b());

  // 24 -> 24 -> 21 -> 20, then unchanged
  const std::vector<Delay> totals{24, 24, 21, 20, 20, 20};
  for (std::size_t s = 0; s < totals.size(); ++s) {
    CHECK(trace.steps[s].total == totals[s]);
  }
}

TEST_CASE("the optimum is a fixed point") {
  const auto trace = dmsi::transform_to_optimal(t::assignment_b(), t::example_instance());
  for (const auto& step : trace.steps) {
    CHECK(step.matrix == t::assignment_b());
    CHECK(step.total == Delay(20));
  }
}

TEST_CASE("precondition: exact column weights") {
  const auto inst = t::example_instance();
  auto over = t::assignment_a();
  over.set(1, 0, true);
  CHECK_THROWS_AS(dmsi::transform_to_optimal(over, inst), dmsi::ValidationError);
  auto under = t::assignment_a();
  under.set(0, 0, false);
  CHECK_THROWS_AS(dmsi::transform_to_optimal(under, inst), dmsi::ValidationError);
  CHECK_THROWS_AS(dmsi::transform_to_optimal(AssignmentMatrix(5, 3), inst), dmsi::ValidationError);

  // surplus rows may be cleared first, then transformed
  const auto reduced = dmsi::reduce_to_exact_weights(over, inst);
  CHECK(dmsi::transform_to_optimal(reduced, inst).final_matrix() == t::assignment_b());
}

TEST_CASE("degenerate shapes") {
  const dmsi::DmsiInstance none;
  const auto trace = dmsi::transform_to_optimal(AssignmentMatrix(0, 0), none);
  CHECK(trace.steps.size() == 2);
  CHECK(trace.final_matrix() == AssignmentMatrix(0, 0));

  // everyone satisfied, but the input carries empty rows
  const dmsi::DmsiInstance satisfied(1, {{{0}, Delay(2)}, {{0}, Delay(1)}});
  const auto empty_rows = dmsi::transform_to_optimal(AssignmentMatrix(3, 2), satisfied);
  CHECK(empty_rows.final_matrix() == AssignmentMatrix(0, 2));
}

TEST_CASE("random exact-weight matrices transform monotonically into the optimum") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = t::random_instance(rng, 6, 5, 16);
    const auto a = t::random_exact_weight_matrix(rng, inst);
    const auto trace = dmsi::transform_to_optimal(a, inst);
    REQUIRE(trace.steps.size() == inst.k() + 2);
    for (std::size_t s = 1; s < trace.steps.size(); ++s) {
      REQUIRE(trace.steps[s].total <= trace.steps[s - 1].total);
    }
    const auto optimal = dmsi::optimal_assignment(inst).matrix.permute_columns(trace.ranking);
    REQUIRE(trace.final_matrix() == optimal);
    REQUIRE(trace.steps.back().total == dmsi::closed_form_delay(inst));
  }
}
