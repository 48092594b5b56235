// Command-line front end: loads contexts, bundles, operators and sections
// from JSON, runs the kernel operations, and drives the seeded identity
// suites. Exit codes: 0 ok, 1 check failures, 2 input errors, 3 contract
// violations.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "gjet/checks.hpp"
#include "gjet/json_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailures = 1;
constexpr int kExitInputError = 2;
constexpr int kExitContractViolation = 3;

struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gjet::InputError("cannot open file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& err) {
    throw gjet::InputError(path + ": " + err.what());
  }
}

void emit(const nlohmann::json& payload, bool as_json,
          const std::string& text) {
  if (as_json)
    std::cout << payload.dump() << "\n";
  else
    std::cout << text << "\n";
}

std::string rank_text(const std::map<int, long>& rank) {
  std::ostringstream os;
  long total = 0;
  for (const auto& [deg, count] : rank) {
    os << "degree " << deg << ": " << count << "\n";
    total += count;
  }
  os << "total: " << total;
  return os.str();
}

struct CommonInputs {
  std::string context_path;
  std::string bundle_path;

  gjet::ContextPtr context() const {
    return gjet::io::context_from_json(load_json(context_path));
  }
  gjet::BundlePtr bundle(const gjet::ContextPtr& ctx) const {
    return gjet::io::bundle_from_json(load_json(bundle_path), ctx);
  }
};

int run_check(const std::string& suite, std::uint64_t seed, long cases,
              bool as_json) {
  std::vector<std::string> suites;
  if (suite == "all")
    suites = gjet::checks::suite_names();
  else
    suites.push_back(suite);
  bool any_failure = false;
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& name : suites) {
    const auto report = gjet::checks::run_suite(name, seed, cases);
    any_failure = any_failure || !report.ok();
    if (as_json) {
      nlohmann::json failures = nlohmann::json::array();
      for (const auto& f : report.failures)
        failures.push_back({{"case", f.case_index},
                            {"property", f.property},
                            {"witness", f.witness}});
      reports.push_back({{"suite", report.suite},
                         {"seed", report.seed},
                         {"cases", report.cases_run},
                         {"failures", failures}});
    } else {
      std::cout << "suite " << report.suite << ": seed=" << report.seed
                << " cases=" << report.cases_run
                << " failures=" << report.failures.size() << "\n";
      for (const auto& f : report.failures)
        std::cout << "FAIL case=" << f.case_index << " prop=" << f.property
                  << ": " << f.witness << "\n";
    }
    // Timing goes to stderr so that stdout stays byte-identical across runs.
    std::cerr << "# " << report.suite << " elapsed "
              << report.elapsed_seconds << "s\n";
  }
  if (as_json) std::cout << reports.dump() << "\n";
  return any_failure ? kExitCheckFailures : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact kernel for graded differential operators and jets"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit machine-readable JSON on stdout");

  CommonInputs common;

  auto* rank = app.add_subcommand("rank", "graded rank tables");
  std::string rank_kind = "jet";
  int rank_order = 0;
  rank->add_option("--context", common.context_path)->required();
  rank->add_option("--bundle", common.bundle_path)->required();
  rank->add_option("--kind", rank_kind, "jet or diff")
      ->check(CLI::IsMember({"jet", "diff"}));
  rank->add_option("--order", rank_order)->required();

  auto* apply = app.add_subcommand("apply", "apply an operator to a section");
  std::string op_path, op2_path, section_path;
  apply->add_option("--context", common.context_path)->required();
  apply->add_option("--bundle", common.bundle_path)->required();
  apply->add_option("--op", op_path)->required();
  apply->add_option("--section", section_path)->required();

  auto* bracket =
      app.add_subcommand("bracket", "graded commutator of two operators");
  bracket->add_option("--context", common.context_path)->required();
  bracket->add_option("--bundle", common.bundle_path)->required();
  bracket->add_option("--op", op_path)->required();
  bracket->add_option("--op2", op2_path)->required();

  auto* symbol = app.add_subcommand("symbol", "principal symbol table");
  symbol->add_option("--context", common.context_path)->required();
  symbol->add_option("--bundle", common.bundle_path)->required();
  symbol->add_option("--op", op_path)->required();

  auto* prolong_cmd = app.add_subcommand("prolong", "jet prolongation");
  int jet_order = 0;
  prolong_cmd->add_option("--context", common.context_path)->required();
  prolong_cmd->add_option("--bundle", common.bundle_path)->required();
  prolong_cmd->add_option("--section", section_path)->required();
  prolong_cmd->add_option("--order", jet_order)->required();

  auto* decompose = app.add_subcommand(
      "decompose", "re-extract the canonical coefficient table");
  int decompose_order = 0;
  decompose->add_option("--context", common.context_path)->required();
  decompose->add_option("--bundle", common.bundle_path)->required();
  decompose->add_option("--op", op_path)->required();
  decompose->add_option("--order", decompose_order)->required();

  auto* check = app.add_subcommand("check", "seeded identity suites");
  std::string suite = "all";
  std::uint64_t seed = 1;
  long cases = 100;
  check->add_option("--suite", suite)
      ->check(CLI::IsMember({"all", "algebra", "diffop", "symbol", "jets"}));
  check->add_option("--seed", seed);
  check->add_option("--cases", cases)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (rank->parsed()) {
      const auto ctx = common.context();
      const auto bundle = common.bundle(ctx);
      const auto table = rank_kind == "jet"
                             ? gjet::jet_rank(*bundle, rank_order)
                             : gjet::diff_rank(*bundle, rank_order);
      emit(gjet::io::rank_to_json(table), as_json, rank_text(table));
      return kExitOk;
    }
    if (apply->parsed()) {
      const auto ctx = common.context();
      const auto bundle = common.bundle(ctx);
      const auto op = gjet::io::operator_from_json(load_json(op_path), bundle);
      const auto psi =
          gjet::io::section_from_json(load_json(section_path), bundle);
      const auto out = op.apply(psi);
      emit(gjet::io::to_json(out), as_json, out.str());
      return kExitOk;
    }
    if (bracket->parsed()) {
      const auto ctx = common.context();
      const auto bundle = common.bundle(ctx);
      const auto a = gjet::io::operator_from_json(load_json(op_path), bundle);
      const auto b = gjet::io::operator_from_json(load_json(op2_path), bundle);
      const auto out = gjet::commutator(a, b);
      emit(gjet::io::to_json(out), as_json, out.str());
      return kExitOk;
    }
    if (symbol->parsed()) {
      const auto ctx = common.context();
      const auto bundle = common.bundle(ctx);
      const auto op = gjet::io::operator_from_json(load_json(op_path), bundle);
      const auto out = gjet::symbol_of(op);
      emit(gjet::io::to_json(out), as_json, out.str());
      return kExitOk;
    }
    if (prolong_cmd->parsed()) {
      const auto ctx = common.context();
      const auto bundle = common.bundle(ctx);
      const auto psi =
          gjet::io::section_from_json(load_json(section_path), bundle);
      const auto jet = gjet::prolong(psi, jet_order);
      emit(gjet::io::to_json(jet), as_json, jet.str());
      return kExitOk;
    }
    if (decompose->parsed()) {
      const auto ctx = common.context();
      const auto bundle = common.bundle(ctx);
      const auto op = gjet::io::operator_from_json(load_json(op_path), bundle);
      auto result = gjet::extract_coeffs(gjet::as_oracle(op), decompose_order);
      if (auto* failure = std::get_if<gjet::ExtractFailure>(&result))
        throw ContractViolation(
            (failure->kind == gjet::ExtractFailure::Kind::OrderViolation
                 ? "order violation: "
                 : "degree inconsistency: ") +
            failure->witness);
      const auto& table = std::get<gjet::DiffOp>(result);
      emit(gjet::io::to_json(table), as_json, table.str());
      return kExitOk;
    }
    if (check->parsed()) return run_check(suite, seed, cases, as_json);
  } catch (const ContractViolation& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitContractViolation;
  } catch (const gjet::InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
