#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <span>
#include <vector>

#include "dmsi/assignment.hpp"
#include "dmsi/gf.hpp"
#include "dmsi/instance.hpp"

namespace dmsi::coding {

/// Coefficients of the broadcast packets: row i holds p_i's coefficients over
/// the n original packets.
class CodingMatrix {
 public:
  CodingMatrix(gf::Field field, std::size_t rows, std::size_t cols);
  static CodingMatrix from_rows(gf::Field field, const std::vector<std::vector<std::uint64_t>>& rows,
                                std::size_t cols);

  const gf::Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  gf::Element at(std::size_t i, std::size_t t) const { return entries_[index(i, t)]; }
  void set(std::size_t i, std::size_t t, gf::Element value);
  std::span<const gf::Element> row(std::size_t i) const;

  friend bool operator==(const CodingMatrix&, const CodingMatrix&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t t) const;

  gf::Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<gf::Element> entries_;
};

/// Everything client j holds once its designated packets have arrived.
struct ClientView {
  std::size_t client = 0;
  std::vector<std::size_t> known;            // packet indices in H_j, ascending
  std::vector<gf::Element> known_values;     // x_t for t in `known`
  std::vector<std::size_t> received_rows;    // rows i with a(i, j) = 1, ascending
  std::vector<gf::Element> received_values;  // p_i for i in `received_rows`
};

/// Builds client j's view from the true originals and the broadcast payloads.
ClientView make_client_view(const DmsiInstance& instance, const AssignmentMatrix& a,
                            std::size_t client, std::span<const gf::Element> originals,
                            std::span<const gf::Element> broadcast);

/// Rank of a dense matrix over `field`; `matrix` is row-major with `cols` columns.
std::size_t rank(const gf::Field& field, std::vector<gf::Element> matrix, std::size_t cols);

/// For each client: the designated rows restricted to its missing packets have rank w_j.
std::vector<bool> decodability_check(const DmsiInstance& instance, const AssignmentMatrix& a,
                                     const CodingMatrix& g);

inline constexpr int kMaxConstructionAttempts = 64;

struct ConstructionResult {
  CodingMatrix code;
  int attempts = 0;
  /// q < k: success is still possible but not guaranteed.
  bool field_below_client_count = false;
};

/// Draws coefficients uniformly from the field with a seeded mt19937_64 and
/// keeps the first draw (of at most 64) that every client can decode.
/// Throws ValidationError for an infeasible assignment, ConstructionError when
/// every attempt fails.
ConstructionResult construct_code(const DmsiInstance& instance, const AssignmentMatrix& a,
                                  const gf::Field& field, std::uint64_t seed);

/// p_i = sum_t G[i][t] * x_t.
std::vector<gf::Element> encode(const CodingMatrix& g, std::span<const gf::Element> originals);

/// Recovers the client's missing packets (ascending index order) from its view.
/// Throws ConstructionError on a singular system or inconsistent payloads.
std::vector<gf::Element> decode(const ClientView& view, const DmsiInstance& instance,
                                const AssignmentMatrix& a, const CodingMatrix& g);

/// {"field_degree": e, "rows": [[int...]...]}
nlohmann::ordered_json code_to_json(const CodingMatrix& g);
/// `cols` is the instance's n (needed when there are no rows).
CodingMatrix code_from_json(const nlohmann::json& doc, std::size_t cols);

}  // namespace dmsi::coding
