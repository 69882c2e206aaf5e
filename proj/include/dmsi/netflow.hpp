#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dmsi/assignment.hpp"
#include "dmsi/instance.hpp"

namespace dmsi::netflow {

enum class NodeKind { kSource, kPacket, kIntermediate, kBroadcast, kSink };

struct Edge {
  std::size_t from;
  std::size_t to;
  std::int64_t capacity;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Layered solvability network for an instance and an assignment.
///
/// Node layout: source, n packet nodes, m intermediate nodes, m broadcast
/// nodes, k sinks. Edges:
///   source -> packet i                 capacity 1
///   packet i -> sink j                 "infinite", iff client j has packet i
///   packet i -> intermediate h         "infinite", for every i and h
///   intermediate h -> broadcast h      capacity 1
///   broadcast h -> sink j              capacity 1, iff a(h, j) = 1
/// Infinite capacity is stored as n: the source can push at most n units.
class FlowNetwork {
 public:
  FlowNetwork(std::size_t n, std::size_t m, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  std::int64_t infinity() const noexcept { return static_cast<std::int64_t>(n_); }

  std::size_t node_count() const noexcept { return 1 + n_ + 2 * m_ + k_; }
  std::size_t source() const noexcept { return 0; }
  std::size_t packet_node(std::size_t i) const;
  std::size_t intermediate_node(std::size_t h) const;
  std::size_t broadcast_node(std::size_t h) const;
  std::size_t sink_node(std::size_t j) const;

  NodeKind kind(std::size_t node) const;
  /// "s", "s3", "u1", "v2", "t4" (1-based, matching the usual drawing).
  std::string node_name(std::size_t node) const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  void add_edge(std::size_t from, std::size_t to, std::int64_t capacity);

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t k_;
  std::vector<Edge> edges_;
};

FlowNetwork build_network(const DmsiInstance& instance, const AssignmentMatrix& a);

/// Maximum flow value from the source to sink `sink` (0-based client index).
std::int64_t max_flow(const FlowNetwork& network, std::size_t sink);

/// Max-flow value for every sink, in client order.
std::vector<std::int64_t> sink_flows(const FlowNetwork& network);

/// The network can multicast all n packets: every sink's max-flow is at least n.
bool is_solvable(const DmsiInstance& instance, const AssignmentMatrix& a);

/// Graphviz rendering; infinite capacities print as "inf".
std::string to_dot(const FlowNetwork& network);

}  // namespace dmsi::netflow
