#include "dmsi/plan.hpp"

#include <algorithm>

#include "dmsi/error.hpp"

namespace dmsi {

gf::Field default_field(const DmsiInstance& instance) {
  return gf::smallest_field_at_least(std::max<std::uint64_t>(instance.k(), 2));
}

PlanBundle make_plan(const DmsiInstance& instance, std::optional<unsigned> field_degree,
                     std::uint64_t seed) {
  auto scheme = optimal_assignment(instance);
  const gf::Field field = field_degree ? gf::Field(*field_degree) : default_field(instance);
  auto built = coding::construct_code(instance, scheme.matrix, field, seed);
  auto report = total_delay(scheme.matrix, instance.delays());
  report.closed_form = closed_form_delay(instance);
  auto decodable = coding::decodability_check(instance, scheme.matrix, built.code);
  return PlanBundle{instance,         std::move(scheme.ranking), std::move(scheme.matrix),
                    std::move(report), std::move(built.code),    std::move(decodable),
                    seed};
}

nlohmann::ordered_json plan_to_json(const PlanBundle& plan) {
  nlohmann::ordered_json doc;
  doc["instance"] = instance_to_json(plan.instance);
  auto ranking = nlohmann::ordered_json::array();
  for (auto j : plan.ranking) {
    ranking.push_back(j + 1);
  }
  doc["ranking"] = std::move(ranking);
  doc["assignment"] = plan.assignment.to_rows();
  auto per_packet = nlohmann::ordered_json::array();
  for (const auto& d : plan.delays.per_packet) {
    per_packet.push_back(d.to_string());
  }
  doc["per_packet_delay"] = std::move(per_packet);
  doc["total_delay"] = plan.delays.total.to_string();
  doc["closed_form_delay"] = plan.delays.closed_form.value_or(plan.delays.total).to_string();
  doc["code"] = coding::code_to_json(plan.code);
  auto decodable = nlohmann::ordered_json::array();
  for (bool ok : plan.decodable) {
    decodable.push_back(ok);
  }
  doc["decodable"] = std::move(decodable);
  doc["seed"] = plan.seed;
  return doc;
}

std::string serialize_plan(const PlanBundle& plan) { return plan_to_json(plan).dump(2) + "\n"; }

AssignmentMatrix assignment_from_json(const nlohmann::json& doc, std::size_t cols) {
  const nlohmann::json& rows = doc.is_object() && doc.contains("assignment") ? doc["assignment"] : doc;
  if (!rows.is_array()) {
    throw ValidationError("assignment: expected an array of rows");
  }
  std::vector<std::vector<int>> bits;
  for (const auto& row : rows) {
    if (!row.is_array()) {
      throw ValidationError("assignment: each row must be an array");
    }
    auto& out = bits.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number_integer()) {
        throw ValidationError("assignment: entries must be 0 or 1");
      }
      out.push_back(v.get<int>());
    }
  }
  auto a = bits.empty() ? AssignmentMatrix(0, cols) : AssignmentMatrix::from_rows(bits);
  if (a.cols() != cols) {
    throw ValidationError("assignment has " + std::to_string(a.cols()) + " columns, expected " +
                          std::to_string(cols));
  }
  return a;
}

PlanFile plan_file_from_json(const nlohmann::json& doc, const DmsiInstance& instance) {
  if (!doc.is_object() || !doc.contains("assignment")) {
    throw ValidationError("plan: expected an object with an \"assignment\" member");
  }
  PlanFile plan;
  plan.assignment = assignment_from_json(doc["assignment"], instance.k());
  if (doc.contains("ranking")) {
    for (const auto& r : doc["ranking"]) {
      if (!r.is_number_integer() || r.get<std::int64_t>() < 1 ||
          r.get<std::uint64_t>() > instance.k()) {
        throw ValidationError("plan: ranking entries must be client numbers in [1, k]");
      }
      plan.ranking.push_back(r.get<std::size_t>() - 1);
    }
  }
  if (doc.contains("per_packet_delay")) {
    std::vector<Delay> per_packet;
    for (const auto& d : doc["per_packet_delay"]) {
      per_packet.push_back(rational_from_json(d, "per_packet_delay"));
    }
    plan.per_packet_delay = std::move(per_packet);
  }
  if (doc.contains("total_delay")) {
    plan.total_delay = rational_from_json(doc["total_delay"], "total_delay");
  }
  if (doc.contains("code")) {
    plan.code = coding::code_from_json(doc["code"], instance.n());
    if (plan.code->rows() != plan.assignment.rows()) {
      throw ValidationError("plan: code has " + std::to_string(plan.code->rows()) +
                            " rows but the assignment has " +
                            std::to_string(plan.assignment.rows()));
    }
  }
  return plan;
}

bool SimulationResult::all_correct() const {
  return std::all_of(clients.begin(), clients.end(), [](const ClientOutcome& c) { return c.correct; });
}

SimulationResult simulate(const DmsiInstance& instance, const AssignmentMatrix& a,
                          const coding::CodingMatrix& code, std::span<const gf::Element> originals) {
  const auto broadcast = coding::encode(code, originals);
  const auto delays = instance.delays();
  SimulationResult result;

  std::vector<std::size_t> last_row(instance.k(), a.rows());  // a.rows() = never designated
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < instance.k(); ++j) {
      if (a.at(i, j)) {
        last_row[j] = i;
      }
    }
  }

  std::vector<Delay> clock_after(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Delay d = packet_delay(a, i, delays);
    result.final_clock += d;
    clock_after[i] = result.final_clock;
    result.packets.push_back({i, d, result.final_clock});
  }

  for (std::size_t j = 0; j < instance.k(); ++j) {
    ClientOutcome outcome;
    outcome.client = j;
    outcome.completed_at = last_row[j] < a.rows() ? clock_after[last_row[j]] : Delay{};
    outcome.missing = instance.missing(j);
    const auto view = coding::make_client_view(instance, a, j, originals, broadcast);
    try {
      outcome.recovered = coding::decode(view, instance, a, code);
      outcome.correct = true;
      for (std::size_t c = 0; c < outcome.missing.size(); ++c) {
        outcome.correct = outcome.correct && outcome.recovered[c] == originals[outcome.missing[c]];
      }
    } catch (const ConstructionError&) {
      outcome.correct = false;
    }
    result.clients.push_back(std::move(outcome));
  }
  return result;
}

}  // namespace dmsi
