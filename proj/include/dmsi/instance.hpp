#pragma once

#include <cstddef>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "dmsi/delay.hpp"

namespace dmsi {

/// One client: the original packets it already caches and its per-packet delay.
/// `has` holds 0-based packet indices.
struct ClientSpec {
  std::vector<std::size_t> has;
  Delay delay;

  friend bool operator==(const ClientSpec&, const ClientSpec&) = default;
};

/// A broadcast problem: n original packets and k clients with side information.
///
/// Construction validates every side-information index against n and rejects
/// duplicates; the stored `has` sets are sorted ascending.
class DmsiInstance {
 public:
  DmsiInstance() = default;
  DmsiInstance(std::size_t n, std::vector<ClientSpec> clients);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return clients_.size(); }
  const std::vector<ClientSpec>& clients() const noexcept { return clients_; }
  const ClientSpec& client(std::size_t j) const { return clients_.at(j); }
  std::vector<Delay> delays() const;
  bool has_packet(std::size_t client, std::size_t packet) const;
  /// 0-based indices of the packets client j is missing, ascending.
  std::vector<std::size_t> missing(std::size_t client) const;

  friend bool operator==(const DmsiInstance&, const DmsiInstance&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<ClientSpec> clients_;
};

/// w_j = n - |H_j| for every client, in client order.
std::vector<std::size_t> want_counts(const DmsiInstance& instance);

/// Client indices ordered by non-increasing delay; equal delays keep
/// ascending client index.
std::vector<std::size_t> delay_ranking(const DmsiInstance& instance);

/// Reads a rational from a JSON integer or a "p/q" / "p" string.
Delay rational_from_json(const nlohmann::json& value, std::string_view what);
/// Integers serialize as JSON numbers, everything else as a "p/q" string.
nlohmann::ordered_json rational_to_json(const Delay& value);

DmsiInstance instance_from_json(const nlohmann::json& doc);
/// Canonical form: {"n", "clients": [{"has", "delay"}...]}, 1-based sorted indices.
nlohmann::ordered_json instance_to_json(const DmsiInstance& instance);

DmsiInstance parse_instance(std::string_view document);
std::string serialize_instance(const DmsiInstance& instance);
DmsiInstance load_instance(const std::filesystem::path& path);

}  // namespace dmsi
