// chainsim: scenario runner and trace inspection tool.
//
// Exit codes: 0 success, 2 parse error, 3 execution failed, 4 invariant
// violated.

#include "chainsim/congress.hpp"
#include "chainsim/scenario.hpp"
#include "chainsim/trace_analysis.hpp"
#include "chainsim/trace_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParseError = 2;
constexpr int kExitExecutionFailed = 3;
constexpr int kExitInvariantViolated = 4;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return false;
  }
  out << content;
  return out.good();
}

chainsim::ExecutionOrder parse_order(const std::string& text) {
  const auto order = chainsim::execution_order_from_string(text);
  if (!order) {
    throw CLI::ValidationError("--order", "expected dfs or bfs");
  }
  return *order;
}

void print_parse_error(const chainsim::ParseError& error) {
  std::cerr << "parse error";
  if (!error.where.empty()) {
    std::cerr << " at " << error.where;
  }
  std::cerr << ": " << error.message << "\n";
}

int run_command(const std::string& scenario_path, const std::string& order_text,
                const std::string& trace_out) {
  const auto text = read_file(scenario_path);
  if (!text) {
    std::cerr << "cannot read " << scenario_path << "\n";
    return kExitParseError;
  }
  const auto scenario = chainsim::parse_scenario(*text, chainsim::builtin_registry());
  if (!scenario.ok()) {
    print_parse_error(scenario.error());
    return kExitParseError;
  }
  const auto outcome = chainsim::run_scenario(scenario.value(), parse_order(order_text));

  if (!trace_out.empty()) {
    if (!write_file(trace_out, chainsim::trace_to_json(outcome.builder.trace()))) {
      std::cerr << "cannot write " << trace_out << "\n";
      return kExitExecutionFailed;
    }
  }

  const chainsim::Chain& chain = outcome.builder.env().chain;
  std::cout << "blocks: " << chain.chain_height
            << ", contracts: " << outcome.builder.env().contracts.size()
            << ", trace steps: " << outcome.builder.trace().steps.size() << "\n";

  if (outcome.failure.has_value()) {
    std::cerr << "block " << outcome.failure->block_index
              << " failed: " << chainsim::describe(outcome.failure->error) << "\n";
    if (!trace_out.empty()) {
      std::cerr << "trace of the successful prefix written to " << trace_out << "\n";
    }
    return kExitExecutionFailed;
  }
  return kExitOk;
}

int validate_trace_command(const std::string& trace_path) {
  const auto text = read_file(trace_path);
  if (!text) {
    std::cerr << "cannot read " << trace_path << "\n";
    return kExitParseError;
  }
  const auto trace = chainsim::trace_from_json(*text, chainsim::builtin_registry());
  if (!trace.ok()) {
    print_parse_error(trace.error());
    return kExitParseError;
  }
  const auto replayed = chainsim::replay_trace(trace.value());
  if (!replayed.ok()) {
    std::cerr << "invalid trace: step " << replayed.error().step_index << ": "
              << chainsim::to_string(replayed.error().error.code);
    if (!replayed.error().error.detail.empty()) {
      std::cerr << " (" << replayed.error().error.detail << ")";
    }
    std::cerr << "\n";
    return kExitExecutionFailed;
  }
  const chainsim::ChainState& state = replayed.value();
  std::cout << "valid trace: " << trace.value().steps.size() << " steps, height "
            << state.env.chain.chain_height << ", queue " << state.queue.size()
            << "\n";
  return kExitOk;
}

int check_invariant_command(const std::string& trace_path, std::uint64_t address,
                            bool strengthened) {
  const auto text = read_file(trace_path);
  if (!text) {
    std::cerr << "cannot read " << trace_path << "\n";
    return kExitParseError;
  }
  const auto trace = chainsim::trace_from_json(*text, chainsim::builtin_registry());
  if (!trace.ok()) {
    print_parse_error(trace.error());
    return kExitParseError;
  }
  const chainsim::Address addr{address};
  const auto verdict = strengthened
                           ? chainsim::check_strengthened_invariant(trace.value(), addr)
                           : chainsim::check_congress_invariant(trace.value(), addr);
  if (!verdict.ok()) {
    std::cerr << "cannot check invariant: " << verdict.error().detail << "\n";
    return kExitExecutionFailed;
  }
  std::cout << chainsim::verdict_to_json(verdict.value()) << "\n";
  return verdict.value().holds ? kExitOk : kExitInvariantViolated;
}

int demo_exploit_command(const std::string& order_text) {
  const auto order = parse_order(order_text);
  const auto scenario =
      chainsim::exploit_scenario(chainsim::congress::kBuggyCongressName);
  const auto outcome = chainsim::run_scenario(scenario, order);
  if (outcome.failure.has_value()) {
    std::cerr << "exploit scenario unexpectedly failed at block "
              << outcome.failure->block_index << ": "
              << chainsim::describe(outcome.failure->error) << "\n";
    return kExitExecutionFailed;
  }
  const chainsim::Address congress_addr{chainsim::kFirstContractAddress};
  const auto verdict =
      chainsim::check_congress_invariant(outcome.builder.trace(), congress_addr);
  if (!verdict.ok()) {
    std::cerr << "cannot check invariant: " << verdict.error().detail << "\n";
    return kExitExecutionFailed;
  }
  std::cout << chainsim::verdict_to_json(verdict.value()) << "\n";
  return verdict.value().holds ? kExitOk : kExitInvariantViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smart-contract execution layer simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string trace_path;
  std::string order_text = "dfs";
  std::string trace_out;
  std::uint64_t address = 0;
  bool strengthened = false;

  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--order", order_text, "Execution order: dfs or bfs");
  run->add_option("--trace-out", trace_out, "Write the resulting trace here");

  auto* validate = app.add_subcommand("validate-trace", "Replay a trace from genesis");
  validate->add_option("trace", trace_path, "Trace JSON file")->required();

  auto* check = app.add_subcommand("check-invariant",
                                   "Check the Congress counting invariant on a trace");
  check->add_option("trace", trace_path, "Trace JSON file")->required();
  check->add_option("--address", address, "Congress contract address")->required();
  check->add_flag("--strengthened", strengthened,
                  "Check the per-step strengthened bound instead");

  auto* demo = app.add_subcommand(
      "demo-exploit", "Run the built-in buggy-Congress reentrancy scenario");
  demo->add_option("--order", order_text, "Execution order: dfs or bfs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(scenario_path, order_text, trace_out);
    }
    if (validate->parsed()) {
      return validate_trace_command(trace_path);
    }
    if (check->parsed()) {
      return check_invariant_command(trace_path, address, strengthened);
    }
    return demo_exploit_command(order_text);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExecutionFailed;
  }
}
