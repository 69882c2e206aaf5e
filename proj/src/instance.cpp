#include "dmsi/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dmsi/error.hpp"

namespace dmsi {

DmsiInstance::DmsiInstance(std::size_t n, std::vector<ClientSpec> clients)
    : n_(n), clients_(std::move(clients)) {
  for (std::size_t j = 0; j < clients_.size(); ++j) {
    auto& has = clients_[j].has;
    std::sort(has.begin(), has.end());
    for (std::size_t t = 0; t < has.size(); ++t) {
      if (has[t] >= n_) {
        throw ValidationError("client " + std::to_string(j + 1) + ": packet index " +
                              std::to_string(has[t] + 1) + " out of range [1, " +
                              std::to_string(n_) + "]");
      }
      if (t > 0 && has[t] == has[t - 1]) {
        throw ValidationError("client " + std::to_string(j + 1) + ": duplicate packet index " +
                              std::to_string(has[t] + 1));
      }
    }
  }
}

std::vector<Delay> DmsiInstance::delays() const {
  std::vector<Delay> out;
  out.reserve(clients_.size());
  for (const auto& c : clients_) {
    out.push_back(c.delay);
  }
  return out;
}

bool DmsiInstance::has_packet(std::size_t client, std::size_t packet) const {
  const auto& has = clients_.at(client).has;
  return std::binary_search(has.begin(), has.end(), packet);
}

std::vector<std::size_t> DmsiInstance::missing(std::size_t client) const {
  std::vector<std::size_t> out;
  const auto& has = clients_.at(client).has;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!std::binary_search(has.begin(), has.end(), i)) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> want_counts(const DmsiInstance& instance) {
  std::vector<std::size_t> w;
  w.reserve(instance.k());
  for (const auto& c : instance.clients()) {
    w.push_back(instance.n() - c.has.size());
  }
  return w;
}

std::vector<std::size_t> delay_ranking(const DmsiInstance& instance) {
  std::vector<std::size_t> order(instance.k());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& clients = instance.clients();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return clients[a].delay > clients[b].delay;
  });
  return order;
}

Delay rational_from_json(const nlohmann::json& value, std::string_view what) {
  if (value.is_number_integer()) {
    return Delay(value.get<std::int64_t>());
  }
  if (value.is_string()) {
    return Delay::parse(value.get<std::string>());
  }
  throw ValidationError(std::string(what) + ": expected an integer or a \"p/q\" string");
}

nlohmann::ordered_json rational_to_json(const Delay& value) {
  if (value.is_integer()) {
    return value.numerator();
  }
  return value.to_string();
}

DmsiInstance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("instance: expected a JSON object");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() < 0) {
    throw ValidationError("instance: \"n\" must be a non-negative integer");
  }
  const auto n = doc["n"].get<std::size_t>();

  const nlohmann::json empty = nlohmann::json::array();
  const auto& clients = doc.contains("clients") ? doc["clients"] : empty;
  if (!clients.is_array()) {
    throw ValidationError("instance: \"clients\" must be an array");
  }

  bool packet_size_used = false;
  std::vector<ClientSpec> specs;
  for (std::size_t j = 0; j < clients.size(); ++j) {
    const auto& c = clients[j];
    const std::string where = "client " + std::to_string(j + 1);
    if (!c.is_object() || !c.contains("has") || !c["has"].is_array()) {
      throw ValidationError(where + ": expected {\"has\": [...], ...}");
    }
    ClientSpec spec;
    for (const auto& idx : c["has"]) {
      if (!idx.is_number_integer()) {
        throw ValidationError(where + ": packet indices must be integers");
      }
      const auto one_based = idx.get<std::int64_t>();
      if (one_based < 1 || static_cast<std::uint64_t>(one_based) > n) {
        throw ValidationError(where + ": packet index " + std::to_string(one_based) +
                              " out of range [1, " + std::to_string(n) + "]");
      }
      spec.has.push_back(static_cast<std::size_t>(one_based - 1));
    }

    const bool has_delay = c.contains("delay");
    const bool has_bandwidth = c.contains("bandwidth");
    if (has_delay == has_bandwidth) {
      throw ValidationError(where + ": exactly one of \"delay\" or \"bandwidth\" is required");
    }
    if (has_delay) {
      spec.delay = rational_from_json(c["delay"], where + " delay");
    } else {
      if (!doc.contains("packet_size")) {
        throw ValidationError(where + ": \"bandwidth\" requires a top-level \"packet_size\"");
      }
      const Delay bandwidth = rational_from_json(c["bandwidth"], where + " bandwidth");
      if (bandwidth == Delay(0)) {
        throw ValidationError(where + ": zero bandwidth");
      }
      spec.delay = rational_from_json(doc["packet_size"], "packet_size") / bandwidth;
      packet_size_used = true;
    }
    specs.push_back(std::move(spec));
  }
  if (doc.contains("packet_size") && !packet_size_used) {
    throw ValidationError("instance: \"packet_size\" given but no client specifies a bandwidth");
  }
  return DmsiInstance(n, std::move(specs));
}

nlohmann::ordered_json instance_to_json(const DmsiInstance& instance) {
  nlohmann::ordered_json doc;
  doc["n"] = instance.n();
  auto clients = nlohmann::ordered_json::array();
  for (const auto& c : instance.clients()) {
    nlohmann::ordered_json entry;
    auto has = nlohmann::ordered_json::array();
    for (auto i : c.has) {
      has.push_back(i + 1);
    }
    entry["has"] = std::move(has);
    entry["delay"] = rational_to_json(c.delay);
    clients.push_back(std::move(entry));
  }
  doc["clients"] = std::move(clients);
  return doc;
}

DmsiInstance parse_instance(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("instance: malformed JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

std::string serialize_instance(const DmsiInstance& instance) {
  return instance_to_json(instance).dump(2) + "\n";
}

DmsiInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

}  // namespace dmsi
