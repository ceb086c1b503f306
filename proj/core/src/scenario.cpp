#include "chainsim/scenario.hpp"

#include "chainsim/assert.hpp"
#include "chainsim/codec.hpp"
#include "chainsim/congress.hpp"
#include "json_support.hpp"

namespace chainsim {

namespace {

using jsonio::json;

json scenario_block_to_json(const ScenarioBlock& block) {
  json out{{"creator", address_to_string(block.creator)}};
  if (block.slot.has_value()) {
    out["slot"] = std::to_string(*block.slot);
  }
  if (block.finalized_height.has_value()) {
    out["finalized_height"] = std::to_string(*block.finalized_height);
  }
  if (block.reward.has_value()) {
    out["reward"] = amount_to_string(*block.reward);
  }
  json actions = json::array();
  for (const Action& action : block.actions) {
    actions.push_back(jsonio::action_to_json(action));
  }
  out["actions"] = std::move(actions);
  return out;
}

ScenarioBlock scenario_block_from_json(const json& v, const ContractRegistry& registry,
                                       const std::string& path) {
  jsonio::reject_unknown_keys(
      v, {"creator", "slot", "finalized_height", "reward", "actions"}, path);
  ScenarioBlock block;
  block.creator =
      jsonio::read_address(jsonio::member(v, "creator", path), path + "/creator");
  if (v.contains("slot")) {
    block.slot = jsonio::read_u64(v["slot"], path + "/slot");
  }
  if (v.contains("finalized_height")) {
    block.finalized_height =
        jsonio::read_u64(v["finalized_height"], path + "/finalized_height");
  }
  if (v.contains("reward")) {
    block.reward = jsonio::read_amount(v["reward"], path + "/reward");
  }
  const json& actions = jsonio::member(v, "actions", path);
  if (!actions.is_array()) {
    jsonio::fail("expected an array of actions", path + "/actions");
  }
  block.actions.reserve(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    block.actions.push_back(jsonio::action_from_json(
        actions[i], registry, path + "/actions/" + std::to_string(i)));
  }
  return block;
}

}  // namespace

Result<Scenario, ParseError> parse_scenario(const std::string& json_text,
                                            const ContractRegistry& registry) {
  try {
    auto parsed = nlohmann::json::parse(json_text);
    jsonio::reject_unknown_keys(parsed, {"blocks"}, "");
    const json& blocks = jsonio::member(parsed, "blocks", "");
    if (!blocks.is_array()) {
      jsonio::fail("blocks must be an array", "/blocks");
    }
    Scenario scenario;
    scenario.blocks.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      scenario.blocks.push_back(scenario_block_from_json(
          blocks[i], registry, "/blocks/" + std::to_string(i)));
    }
    return scenario;
  } catch (const jsonio::ParseFailure& failure) {
    return ParseError{failure.message, failure.where};
  } catch (const nlohmann::json::parse_error& e) {
    return ParseError{e.what(), "byte " + std::to_string(e.byte)};
  }
}

std::string scenario_to_json(const Scenario& scenario, int indent) {
  json blocks = json::array();
  for (const ScenarioBlock& block : scenario.blocks) {
    blocks.push_back(scenario_block_to_json(block));
  }
  return json{{"blocks", std::move(blocks)}}.dump(indent);
}

ScenarioOutcome run_scenario(const Scenario& scenario, ExecutionOrder order,
                             BuilderLimits limits) {
  ChainBuilder builder(order, limits);
  for (std::size_t i = 0; i < scenario.blocks.size(); ++i) {
    const ScenarioBlock& block = scenario.blocks[i];
    BlockHeader header = builder.next_header(block.creator);
    if (block.slot.has_value()) {
      header.slot = *block.slot;
    }
    if (block.finalized_height.has_value()) {
      header.finalized_height = *block.finalized_height;
    }
    if (block.reward.has_value()) {
      header.reward = *block.reward;
    }
    auto next = builder.add_block(header, block.actions);
    if (!next) {
      return ScenarioOutcome{std::move(builder),
                             ScenarioFailure{i, std::move(next).error()}};
    }
    builder = std::move(next).value();
  }
  return ScenarioOutcome{std::move(builder), std::nullopt};
}

Scenario exploit_scenario(const std::string& congress_registry_name) {
  const ContractRegistry& registry = builtin_registry();
  ContractRef congress_code = registry.find(congress_registry_name);
  CHAINSIM_ASSERT(congress_code != nullptr,
                  "unknown congress contract " + congress_registry_name);
  ContractRef attacker_code = registry.find(congress::kAttackerName);
  CHAINSIM_ASSERT(attacker_code != nullptr, "attacker contract missing from registry");

  const Address owner{1};
  const Address congress_addr{kFirstContractAddress};       // first deploy
  const Address attacker_addr{kFirstContractAddress + 1};   // second deploy
  const congress::ProposalId payout_proposal = 1;

  Scenario scenario;

  ScenarioBlock setup;
  setup.creator = owner;
  setup.reward = Amount(100);
  setup.actions = {
      make_deploy(owner, Amount(10), congress_code,
                  serialize(congress::Rules{500, 500, 0})),
      make_deploy(owner, Amount(0), attacker_code,
                  serialize(congress::AttackerState{3, congress_addr, payout_proposal})),
      make_call(owner, congress_addr, Amount(0),
                serialize(congress::Msg{congress::AddMember{owner}})),
      make_call(owner, congress_addr, Amount(0),
                serialize(congress::Msg{congress::CreateProposal{
                    {congress::CongressTransfer{attacker_addr, Amount(1)}}}})),
      make_call(owner, congress_addr, Amount(0),
                serialize(congress::Msg{congress::VoteForProposal{payout_proposal}})),
  };
  scenario.blocks.push_back(std::move(setup));

  ScenarioBlock finish;
  finish.creator = owner;
  finish.actions = {
      make_call(owner, congress_addr, Amount(0),
                serialize(congress::Msg{congress::FinishProposal{payout_proposal}})),
  };
  scenario.blocks.push_back(std::move(finish));

  return scenario;
}

}  // namespace chainsim
