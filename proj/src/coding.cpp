#include "dmsi/coding.hpp"

#include <random>

#include "dmsi/error.hpp"

namespace dmsi::coding {
namespace {

// Reduces a row-major matrix to row echelon form in place and returns its
// rank. With `augmented` set, the last column is carried along but never
// chosen as a pivot.
std::size_t eliminate(const gf::Field& field, std::vector<gf::Element>& m, std::size_t rows,
                      std::size_t cols, bool augmented) {
  const std::size_t pivot_cols = augmented ? cols - 1 : cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < pivot_cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot * cols + c].value == 0) {
      ++pivot;
    }
    if (pivot == rows) {
      continue;
    }
    if (pivot != rank) {
      for (std::size_t t = 0; t < cols; ++t) {
        std::swap(m[pivot * cols + t], m[rank * cols + t]);
      }
    }
    const gf::Element scale = field.inv(m[rank * cols + c]);
    for (std::size_t t = 0; t < cols; ++t) {
      m[rank * cols + t] = field.mul_unchecked(m[rank * cols + t], scale);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      const gf::Element factor = m[r * cols + c];
      if (r == rank || factor.value == 0) {
        continue;
      }
      for (std::size_t t = 0; t < cols; ++t) {
        m[r * cols + t].value ^= field.mul_unchecked(factor, m[rank * cols + t]).value;
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> designated_rows(const AssignmentMatrix& a, std::size_t client) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a.at(i, client)) {
      out.push_back(i);
    }
  }
  return out;
}

void check_dimensions(const DmsiInstance& instance, const AssignmentMatrix& a,
                      const CodingMatrix& g) {
  if (a.cols() != instance.k()) {
    throw ValidationError("assignment has " + std::to_string(a.cols()) +
                          " columns but the instance has " + std::to_string(instance.k()) +
                          " clients");
  }
  if (g.rows() != a.rows() || g.cols() != instance.n()) {
    throw ValidationError("coding matrix is " + std::to_string(g.rows()) + "x" +
                          std::to_string(g.cols()) + ", expected " + std::to_string(a.rows()) +
                          "x" + std::to_string(instance.n()));
  }
}

bool client_decodable(const DmsiInstance& instance, const AssignmentMatrix& a,
                      const CodingMatrix& g, std::size_t client) {
  const auto missing = instance.missing(client);
  if (missing.empty()) {
    return true;
  }
  const auto rows = designated_rows(a, client);
  if (rows.size() < missing.size()) {
    return false;
  }
  std::vector<gf::Element> sub;
  sub.reserve(rows.size() * missing.size());
  for (auto i : rows) {
    for (auto t : missing) {
      sub.push_back(g.at(i, t));
    }
  }
  return rank(g.field(), std::move(sub), missing.size()) == missing.size();
}

}  // namespace

CodingMatrix::CodingMatrix(gf::Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols) {}

CodingMatrix CodingMatrix::from_rows(gf::Field field,
                                     const std::vector<std::vector<std::uint64_t>>& rows,
                                     std::size_t cols) {
  CodingMatrix out(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw ValidationError("coding row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(cols));
    }
    for (std::size_t t = 0; t < cols; ++t) {
      out.set(i, t, field.element(rows[i][t]));
    }
  }
  return out;
}

std::size_t CodingMatrix::index(std::size_t i, std::size_t t) const {
  if (i >= rows_ || t >= cols_) {
    throw ValidationError("coding matrix index out of range");
  }
  return i * cols_ + t;
}

void CodingMatrix::set(std::size_t i, std::size_t t, gf::Element value) {
  if (!field_.contains(value)) {
    throw ValidationError("coefficient " + std::to_string(value.value) + " not in GF(" +
                          std::to_string(field_.size()) + ")");
  }
  entries_[index(i, t)] = value;
}

std::span<const gf::Element> CodingMatrix::row(std::size_t i) const {
  if (i >= rows_) {
    throw ValidationError("coding row out of range");
  }
  return {entries_.data() + i * cols_, cols_};
}

std::size_t rank(const gf::Field& field, std::vector<gf::Element> matrix, std::size_t cols) {
  if (cols == 0) {
    return 0;
  }
  for (auto e : matrix) {
    if (!field.contains(e)) {
      throw ValidationError("matrix entry not in field");
    }
  }
  return eliminate(field, matrix, matrix.size() / cols, cols, false);
}

std::vector<bool> decodability_check(const DmsiInstance& instance, const AssignmentMatrix& a,
                                     const CodingMatrix& g) {
  check_dimensions(instance, a, g);
  std::vector<bool> out;
  out.reserve(instance.k());
  for (std::size_t j = 0; j < instance.k(); ++j) {
    out.push_back(client_decodable(instance, a, g, j));
  }
  return out;
}

ConstructionResult construct_code(const DmsiInstance& instance, const AssignmentMatrix& a,
                                  const gf::Field& field, std::uint64_t seed) {
  if (!is_feasible(a, instance)) {
    throw ValidationError("cannot construct a code: some client is designated fewer packets than it is missing");
  }
  std::mt19937_64 rng(seed);
  // q is a power of two, so masking is an exact uniform draw and, unlike
  // std::uniform_int_distribution, identical across standard libraries.
  const std::uint64_t mask = field.size() - 1;
  CodingMatrix g(field, a.rows(), instance.n());

  for (int attempt = 1; attempt <= kMaxConstructionAttempts; ++attempt) {
    for (std::size_t i = 0; i < g.rows(); ++i) {
      for (std::size_t t = 0; t < g.cols(); ++t) {
        g.set(i, t, gf::Element{static_cast<std::uint16_t>(rng() & mask)});
      }
    }
    bool all = true;
    for (std::size_t j = 0; j < instance.k() && all; ++j) {
      all = client_decodable(instance, a, g, j);
    }
    if (all) {
      return {std::move(g), attempt, field.size() < instance.k()};
    }
  }
  throw ConstructionError("no decodable code found over GF(" + std::to_string(field.size()) +
                          ") after " + std::to_string(kMaxConstructionAttempts) +
                          " attempts; try a larger field");
}

std::vector<gf::Element> encode(const CodingMatrix& g, std::span<const gf::Element> originals) {
  if (originals.size() != g.cols()) {
    throw ValidationError("expected " + std::to_string(g.cols()) + " original packets, got " +
                          std::to_string(originals.size()));
  }
  const auto& field = g.field();
  for (auto x : originals) {
    if (!field.contains(x)) {
      throw ValidationError("original packet value " + std::to_string(x.value) + " not in field");
    }
  }
  std::vector<gf::Element> out(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    std::uint16_t acc = 0;
    for (std::size_t t = 0; t < g.cols(); ++t) {
      acc ^= field.mul_unchecked(g.at(i, t), originals[t]).value;
    }
    out[i] = gf::Element{acc};
  }
  return out;
}

ClientView make_client_view(const DmsiInstance& instance, const AssignmentMatrix& a,
                            std::size_t client, std::span<const gf::Element> originals,
                            std::span<const gf::Element> broadcast) {
  if (originals.size() != instance.n() || broadcast.size() != a.rows()) {
    throw ValidationError("payload sizes do not match the instance and assignment");
  }
  ClientView view;
  view.client = client;
  view.known = instance.client(client).has;
  for (auto t : view.known) {
    view.known_values.push_back(originals[t]);
  }
  view.received_rows = designated_rows(a, client);
  for (auto i : view.received_rows) {
    view.received_values.push_back(broadcast[i]);
  }
  return view;
}

std::vector<gf::Element> decode(const ClientView& view, const DmsiInstance& instance,
                                const AssignmentMatrix& a, const CodingMatrix& g) {
  check_dimensions(instance, a, g);
  const std::size_t j = view.client;
  if (j >= instance.k()) {
    throw ValidationError("client index out of range");
  }
  if (view.known != instance.client(j).has || view.known_values.size() != view.known.size()) {
    throw ValidationError("client view does not match the client's side information");
  }
  if (view.received_rows != designated_rows(a, j) ||
      view.received_values.size() != view.received_rows.size()) {
    throw ValidationError("client view does not match the packets designated to the client");
  }

  const auto missing = instance.missing(j);
  const std::size_t w = missing.size();
  if (w == 0) {
    return {};
  }
  const auto& field = g.field();
  const std::size_t rows = view.received_rows.size();
  const std::size_t cols = w + 1;

  // Row r: coefficients on the missing packets | payload minus the known part.
  std::vector<gf::Element> system(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t i = view.received_rows[r];
    for (std::size_t c = 0; c < w; ++c) {
      system[r * cols + c] = g.at(i, missing[c]);
    }
    gf::Element rhs = view.received_values[r];
    if (!field.contains(rhs)) {
      throw ValidationError("payload value " + std::to_string(rhs.value) + " not in field");
    }
    for (std::size_t t = 0; t < view.known.size(); ++t) {
      rhs = field.add(rhs, field.mul(g.at(i, view.known[t]), view.known_values[t]));
    }
    system[r * cols + w] = rhs;
  }

  const std::size_t rank = eliminate(field, system, rows, cols, true);
  if (rank < w) {
    throw ConstructionError("client " + std::to_string(j + 1) +
                            " cannot decode: designated packets have rank " +
                            std::to_string(rank) + " < " + std::to_string(w));
  }
  for (std::size_t r = w; r < rows; ++r) {
    if (system[r * cols + w].value != 0) {
      throw ConstructionError("client " + std::to_string(j + 1) + " received inconsistent payloads");
    }
  }
  std::vector<gf::Element> out(w);
  for (std::size_t c = 0; c < w; ++c) {
    out[c] = system[c * cols + w];
  }
  return out;
}

nlohmann::ordered_json code_to_json(const CodingMatrix& g) {
  nlohmann::ordered_json doc;
  doc["field_degree"] = g.field().degree();
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (auto e : g.row(i)) {
      row.push_back(e.value);
    }
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

CodingMatrix code_from_json(const nlohmann::json& doc, std::size_t cols) {
  if (!doc.is_object() || !doc.contains("field_degree") || !doc["field_degree"].is_number_integer() ||
      !doc.contains("rows") || !doc["rows"].is_array()) {
    throw ValidationError("code: expected {\"field_degree\": int, \"rows\": [[...]...]}");
  }
  const auto degree = doc["field_degree"].get<std::int64_t>();
  if (degree < 1 || degree > 16) {
    throw ValidationError("code: field_degree must be in [1, 16]");
  }
  gf::Field field(static_cast<unsigned>(degree));
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& row : doc["rows"]) {
    if (!row.is_array()) {
      throw ValidationError("code: each row must be an array");
    }
    auto& out = rows.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ValidationError("code: coefficients must be non-negative integers");
      }
      out.push_back(v.get<std::uint64_t>());
    }
  }
  return CodingMatrix::from_rows(std::move(field), rows, cols);
}

}  // namespace dmsi::coding
