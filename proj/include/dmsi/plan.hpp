#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <span>
#include <vector>

#include "dmsi/assignment.hpp"
#include "dmsi/coding.hpp"
#include "dmsi/instance.hpp"

namespace dmsi {

/// Everything needed to run a broadcast: the optimal assignment, its delays,
/// and a code that every client can decode.
struct PlanBundle {
  DmsiInstance instance;
  std::vector<std::size_t> ranking;
  AssignmentMatrix assignment;
  DelayReport delays;  // closed_form always set
  coding::CodingMatrix code;
  std::vector<bool> decodable;
  std::uint64_t seed = 0;
};

/// Default field: smallest GF(2^e) with 2^e >= max(k, 2).
gf::Field default_field(const DmsiInstance& instance);

PlanBundle make_plan(const DmsiInstance& instance, std::optional<unsigned> field_degree,
                     std::uint64_t seed);

/// Key order: instance, ranking, assignment, per_packet_delay, total_delay,
/// closed_form_delay, code, decodable, seed. Indices in `ranking` are 1-based.
nlohmann::ordered_json plan_to_json(const PlanBundle& plan);
std::string serialize_plan(const PlanBundle& plan);

/// What verify/simulate need from a plan (or scheme) file.
struct PlanFile {
  std::vector<std::size_t> ranking;  // 0-based; empty if absent
  AssignmentMatrix assignment;
  std::optional<std::vector<Delay>> per_packet_delay;
  std::optional<Delay> total_delay;
  std::optional<coding::CodingMatrix> code;
};

/// `instance` supplies k (assignment width) and n (code width).
PlanFile plan_file_from_json(const nlohmann::json& doc, const DmsiInstance& instance);
/// Either a bare 2-D array or an object with an "assignment" member.
AssignmentMatrix assignment_from_json(const nlohmann::json& doc, std::size_t cols);

struct PacketEvent {
  std::size_t row;
  Delay delay;
  Delay clock;  // after the packet has reached all designated clients
};

struct ClientOutcome {
  std::size_t client;
  Delay completed_at;
  std::vector<std::size_t> missing;
  std::vector<gf::Element> recovered;
  bool correct = false;
};

struct SimulationResult {
  std::vector<PacketEvent> packets;
  std::vector<ClientOutcome> clients;
  Delay final_clock;

  bool all_correct() const;
};

/// Sends the rows in order, advancing the clock by each packet's delay, and
/// decodes at every client once its last designated packet has arrived.
SimulationResult simulate(const DmsiInstance& instance, const AssignmentMatrix& a,
                          const coding::CodingMatrix& code, std::span<const gf::Element> originals);

}  // namespace dmsi
