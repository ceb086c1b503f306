#pragma once

#include "chainsim/builder.hpp"
#include "chainsim/registry.hpp"
#include "chainsim/result.hpp"
#include "chainsim/serialized_value.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chainsim {

/// One block of a scripted run: header overrides plus the user actions to
/// inject. Omitted header fields fall back to slot = previous + 1,
/// reward = 0, finalized_height = previous; the height is always computed.
struct ScenarioBlock {
  Address creator;
  std::optional<std::uint64_t> slot;
  std::optional<std::uint64_t> finalized_height;
  std::optional<Amount> reward;
  std::vector<Action> actions;
};

struct Scenario {
  std::vector<ScenarioBlock> blocks;
};

/// Strict scenario file parse; deploy actions are resolved against
/// `registry` and unknown registry names are rejected.
Result<Scenario, ParseError> parse_scenario(const std::string& json_text,
                                            const ContractRegistry& registry);

std::string scenario_to_json(const Scenario& scenario, int indent = 1);

struct ScenarioFailure {
  std::size_t block_index = 0;
  AddBlockError error;
};

/// Outcome of a run. On failure the builder still holds the state and trace
/// of every block before the failing one (failed blocks roll back whole).
struct ScenarioOutcome {
  ChainBuilder builder;
  std::optional<ScenarioFailure> failure;
};

ScenarioOutcome run_scenario(const Scenario& scenario, ExecutionOrder order,
                             BuilderLimits limits = {});

/// The scripted reentrancy demonstration: a Congress (by default the buggy
/// variant) is deployed, funded, joined and handed a one-action proposal, a
/// reentrancy harness with budget 3 is installed as the payout target, and a
/// final block finishes the proposal.
Scenario exploit_scenario(const std::string& congress_registry_name);

}  // namespace chainsim
