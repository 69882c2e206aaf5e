#include "dmsi/netflow.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>
#include <sstream>

#include "dmsi/error.hpp"

namespace dmsi::netflow {
namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using Graph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, std::int64_t,
                    boost::property<boost::edge_residual_capacity_t, std::int64_t,
                                    boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;

void check_range(std::size_t value, std::size_t limit, const char* what) {
  if (value >= limit) {
    throw ValidationError(std::string(what) + " index " + std::to_string(value + 1) +
                          " out of range");
  }
}

}  // namespace

FlowNetwork::FlowNetwork(std::size_t n, std::size_t m, std::size_t k) : n_(n), m_(m), k_(k) {}

std::size_t FlowNetwork::packet_node(std::size_t i) const {
  check_range(i, n_, "packet");
  return 1 + i;
}

std::size_t FlowNetwork::intermediate_node(std::size_t h) const {
  check_range(h, m_, "broadcast packet");
  return 1 + n_ + h;
}

std::size_t FlowNetwork::broadcast_node(std::size_t h) const {
  check_range(h, m_, "broadcast packet");
  return 1 + n_ + m_ + h;
}

std::size_t FlowNetwork::sink_node(std::size_t j) const {
  check_range(j, k_, "sink");
  return 1 + n_ + 2 * m_ + j;
}

NodeKind FlowNetwork::kind(std::size_t node) const {
  check_range(node, node_count(), "node");
  if (node == 0) {
    return NodeKind::kSource;
  }
  if (node <= n_) {
    return NodeKind::kPacket;
  }
  if (node <= n_ + m_) {
    return NodeKind::kIntermediate;
  }
  if (node <= n_ + 2 * m_) {
    return NodeKind::kBroadcast;
  }
  return NodeKind::kSink;
}

std::string FlowNetwork::node_name(std::size_t node) const {
  switch (kind(node)) {
    case NodeKind::kSource:
      return "s";
    case NodeKind::kPacket:
      return "s" + std::to_string(node);
    case NodeKind::kIntermediate:
      return "u" + std::to_string(node - n_);
    case NodeKind::kBroadcast:
      return "v" + std::to_string(node - n_ - m_);
    case NodeKind::kSink:
      return "t" + std::to_string(node - n_ - 2 * m_);
  }
  return {};
}

void FlowNetwork::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  check_range(from, node_count(), "node");
  check_range(to, node_count(), "node");
  edges_.push_back({from, to, capacity});
}

FlowNetwork build_network(const DmsiInstance& instance, const AssignmentMatrix& a) {
  if (a.cols() != instance.k()) {
    throw ValidationError("assignment has " + std::to_string(a.cols()) +
                          " columns but the instance has " + std::to_string(instance.k()) +
                          " clients");
  }
  const std::size_t n = instance.n();
  const std::size_t m = a.rows();
  const std::size_t k = instance.k();
  FlowNetwork net(n, m, k);
  const auto inf = net.infinity();

  for (std::size_t i = 0; i < n; ++i) {
    net.add_edge(net.source(), net.packet_node(i), 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (instance.has_packet(j, i)) {
        net.add_edge(net.packet_node(i), net.sink_node(j), inf);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t h = 0; h < m; ++h) {
      net.add_edge(net.packet_node(i), net.intermediate_node(h), inf);
    }
  }
  for (std::size_t h = 0; h < m; ++h) {
    net.add_edge(net.intermediate_node(h), net.broadcast_node(h), 1);
  }
  for (std::size_t h = 0; h < m; ++h) {
    for (std::size_t j = 0; j < k; ++j) {
      if (a.at(h, j)) {
        net.add_edge(net.broadcast_node(h), net.sink_node(j), 1);
      }
    }
  }
  return net;
}

std::int64_t max_flow(const FlowNetwork& network, std::size_t sink) {
  const std::size_t target = network.sink_node(sink);
  Graph g(network.node_count());
  auto capacity = boost::get(boost::edge_capacity, g);
  auto reverse = boost::get(boost::edge_reverse, g);
  for (const auto& e : network.edges()) {
    auto forward = boost::add_edge(e.from, e.to, g).first;
    auto backward = boost::add_edge(e.to, e.from, g).first;
    capacity[forward] = e.capacity;
    capacity[backward] = 0;
    reverse[forward] = backward;
    reverse[backward] = forward;
  }
  return boost::edmonds_karp_max_flow(g, network.source(), target);
}

std::vector<std::int64_t> sink_flows(const FlowNetwork& network) {
  std::vector<std::int64_t> out;
  out.reserve(network.k());
  for (std::size_t j = 0; j < network.k(); ++j) {
    out.push_back(max_flow(network, j));
  }
  return out;
}

bool is_solvable(const DmsiInstance& instance, const AssignmentMatrix& a) {
  const auto net = build_network(instance, a);
  const auto target = static_cast<std::int64_t>(instance.n());
  for (std::size_t j = 0; j < instance.k(); ++j) {
    if (max_flow(net, j) < target) {
      return false;
    }
  }
  return true;
}

std::string to_dot(const FlowNetwork& network) {
  std::ostringstream out;
  out << "digraph N {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < network.node_count(); ++v) {
    out << "  " << network.node_name(v) << ";\n";
  }
  for (const auto& e : network.edges()) {
    out << "  " << network.node_name(e.from) << " -> " << network.node_name(e.to)
        << " [label=\"";
    const bool infinite = network.kind(e.from) == NodeKind::kPacket;
    if (infinite) {
      out << "inf";
    } else {
      out << e.capacity;
    }
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace dmsi::netflow
