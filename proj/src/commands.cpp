#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "dmsi/cli.hpp"
#include "dmsi/error.hpp"
#include "dmsi/netflow.hpp"
#include "dmsi/oracle.hpp"
#include "dmsi/plan.hpp"

namespace dmsi::cli {
namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open " + path.string());
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ValidationError("cannot write " + path.string());
  }
  out << content;
}

std::string show(const Delay& d) {
  if (d.is_integer()) {
    return d.to_string();
  }
  std::ostringstream s;
  s << d.to_string() << " (" << std::setprecision(6) << d.to_double() << ")";
  return s.str();
}

std::string client_label(std::size_t j) { return "C" + std::to_string(j + 1); }

// Rows = packets, columns = clients, final column = packet delay, last row = total.
void print_table(std::ostream& out, const AssignmentMatrix& a, std::span<const std::size_t> columns,
                 const DelayReport& report) {
  constexpr int kCell = 5;
  out << std::left << std::setw(8) << "";
  for (auto j : columns) {
    out << std::setw(kCell) << client_label(j);
  }
  out << "Packet delay (s)\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out << std::setw(8) << ("p" + std::to_string(i + 1));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << std::setw(kCell) << (a.at(i, c) ? "1" : "");
    }
    out << show(report.per_packet[i]) << '\n';
  }
  out << std::setw(8 + kCell * static_cast<int>(columns.size())) << "Total" << show(report.total)
      << '\n';
  out << std::right;
}

std::vector<std::size_t> identity(std::size_t k) {
  std::vector<std::size_t> v(k);
  for (std::size_t j = 0; j < k; ++j) {
    v[j] = j;
  }
  return v;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << '\n';
    return kConstructionFailure;
  }
}

std::string pass(bool ok) { return ok ? "pass" : "FAIL"; }

}  // namespace

int cmd_plan(const PlanOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto instance = load_instance(options.instance);
    const auto plan = make_plan(instance, options.field_degree, options.seed);
    if (plan.code.field().size() < instance.k()) {
      err << "warning: GF(" << plan.code.field().size() << ") is smaller than the client count "
          << instance.k() << "; a code was found but one is not guaranteed to exist\n";
    }

    out << "ranking (slowest first):";
    for (auto j : plan.ranking) {
      out << ' ' << client_label(j);
    }
    out << "\n\n";
    print_table(out, plan.assignment, identity(instance.k()), plan.delays);
    out << "\nclosed-form minimum: " << show(*plan.delays.closed_form) << '\n';
    out << "code: GF(" << plan.code.field().size() << "), seed " << plan.seed << '\n';

    const std::string json = serialize_plan(plan);
    if (options.output) {
      write_file(*options.output, json);
      out << "plan written to " << options.output->string() << '\n';
    } else {
      out << '\n' << json;
    }
    return kSuccess;
  });
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto instance = load_instance(options.instance);
    const auto plan = plan_file_from_json(read_json(options.plan), instance);
    const auto& a = plan.assignment;
    const auto w = want_counts(instance);
    const auto weights = a.column_weights();

    const bool feasible = is_feasible(a, instance);
    const auto flows = netflow::sink_flows(netflow::build_network(instance, a));
    const auto n = static_cast<std::int64_t>(instance.n());
    const bool solvable = std::all_of(flows.begin(), flows.end(), [&](auto f) { return f >= n; });

    out << "column-weight feasibility: " << pass(feasible) << '\n';
    out << "min-cut solvability:       " << pass(solvable) << " (need " << n << " at every sink)\n";
    for (std::size_t j = 0; j < instance.k(); ++j) {
      if (weights[j] < w[j] || flows[j] < n) {
        out << "  " << client_label(j) << ": column weight " << weights[j] << ", wants " << w[j]
            << ", max-flow " << flows[j] << '\n';
      }
    }

    bool decodable = false;
    if (plan.code) {
      const auto flags = coding::decodability_check(instance, a, *plan.code);
      decodable = std::all_of(flags.begin(), flags.end(), [](bool b) { return b; });
      out << "rank decodability:         " << pass(decodable) << '\n';
      for (std::size_t j = 0; j < flags.size(); ++j) {
        if (!flags[j]) {
          out << "  " << client_label(j) << ": cannot recover its missing packets\n";
        }
      }
    } else {
      out << "rank decodability:         FAIL (plan has no code)\n";
    }

    const bool equivalent = feasible == solvable;
    out << "feasibility <=> min-cut:   " << (equivalent ? "holds" : "VIOLATED") << '\n';

    bool delays_consistent = true;
    const auto report = total_delay(a, instance.delays());
    if (plan.per_packet_delay) {
      delays_consistent = *plan.per_packet_delay == report.per_packet;
    }
    if (plan.total_delay) {
      delays_consistent = delays_consistent && *plan.total_delay == report.total;
    }
    out << "recorded delays:           " << pass(delays_consistent) << '\n';
    const Delay optimum = closed_form_delay(instance);
    out << "total delay " << show(report.total) << ", closed-form minimum " << show(optimum)
        << (report.total == optimum ? " (optimal)" : "") << '\n';

    const bool ok = feasible && solvable && decodable && equivalent && delays_consistent;
    return ok ? kSuccess : kDisagreement;
  });
}

int cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto instance = load_instance(options.instance);
    oracle::Options search;
    search.budget = options.budget;
    search.m_cap = options.m_cap;
    search.parallel = options.parallel;
    const auto result = oracle::brute_force_optimum(instance, search);
    const Delay closed = closed_form_delay(instance);
    const bool agrees = result.best_total == closed;

    auto doc = oracle::result_to_json(result);
    doc["closed_form_delay"] = closed.to_string();
    doc["agrees"] = agrees;
    const std::string json = doc.dump(2) + "\n";
    if (options.output) {
      write_file(*options.output, json);
    }
    out << "searched m in [" << result.m_min << ", " << result.m_max << "], "
        << result.matrices_examined << " matrices\n";
    out << "exhaustive optimum: " << show(result.best_total) << '\n';
    out << "closed form:        " << show(closed) << '\n';
    out << (agrees ? "agree" : "DISAGREE") << '\n';
    if (!options.output) {
      out << json;
    }
    return agrees ? kSuccess : kDisagreement;
  });
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto instance = load_instance(options.instance);
    const auto plan = plan_file_from_json(read_json(options.plan), instance);
    if (!plan.code) {
      throw ValidationError("plan has no code to simulate");
    }
    const auto& field = plan.code->field();

    std::vector<gf::Element> originals;
    if (options.payload) {
      const auto doc = read_json(*options.payload);
      if (!doc.is_array() || doc.size() != instance.n()) {
        throw ValidationError("payload: expected an array of " + std::to_string(instance.n()) +
                              " integers");
      }
      for (const auto& v : doc) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
          throw ValidationError("payload: entries must be non-negative integers");
        }
        originals.push_back(field.element(v.get<std::uint64_t>()));
      }
    } else {
      std::mt19937_64 rng(options.payload_seed);
      for (std::size_t t = 0; t < instance.n(); ++t) {
        originals.push_back(gf::Element{static_cast<std::uint16_t>(rng() & (field.size() - 1))});
      }
    }

    const auto result = simulate(instance, plan.assignment, *plan.code, originals);
    out << "originals:";
    for (auto x : originals) {
      out << ' ' << x.value;
    }
    out << '\n';
    for (const auto& p : result.packets) {
      out << "p" << p.row + 1 << " ->";
      for (std::size_t j = 0; j < instance.k(); ++j) {
        if (plan.assignment.at(p.row, j)) {
          out << ' ' << client_label(j);
        }
      }
      out << "  delay " << show(p.delay) << "  clock " << show(p.clock) << '\n';
    }
    for (const auto& c : result.clients) {
      out << client_label(c.client) << " done at " << show(c.completed_at) << ", recovered";
      for (std::size_t t = 0; t < c.missing.size() && t < c.recovered.size(); ++t) {
        out << " x" << c.missing[t] + 1 << "=" << c.recovered[t].value;
      }
      out << (c.correct ? "  ok" : "  MISMATCH") << '\n';
    }
    const Delay expected = total_delay(plan.assignment, instance.delays()).total;
    out << "final clock " << show(result.final_clock) << " (closed-form minimum "
        << show(closed_form_delay(instance)) << ")\n";
    const bool ok = result.all_correct() && result.final_clock == expected;
    return ok ? kSuccess : kDisagreement;
  });
}

int cmd_transform(const TransformOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto instance = load_instance(options.instance);
    auto a = assignment_from_json(read_json(options.matrix), instance.k());
    if (options.auto_reduce) {
      a = reduce_to_exact_weights(a, instance);
    }
    const auto trace = transform_to_optimal(a, instance);
    const auto ranked_delays = [&] {
      std::vector<Delay> d;
      for (auto j : trace.ranking) {
        d.push_back(instance.client(j).delay);
      }
      return d;
    }();

    bool monotone = true;
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
      const auto& step = trace.steps[s];
      if (s > 0 && step.total > trace.steps[s - 1].total) {
        monotone = false;
      }
      out << step.label << ": total " << show(step.total) << '\n';
      print_table(out, step.matrix, trace.ranking, total_delay(step.matrix, ranked_delays));
      out << '\n';
    }
    const auto optimal = optimal_assignment(instance).matrix.permute_columns(trace.ranking);
    const bool reached = trace.final_matrix() == optimal;
    out << "monotone: " << (monotone ? "yes" : "NO") << ", final matrix is optimal: "
        << (reached ? "yes" : "NO") << '\n';
    return monotone && reached ? kSuccess : kDisagreement;
  });
}

}  // namespace dmsi::cli
