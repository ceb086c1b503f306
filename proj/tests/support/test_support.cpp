#include "test_support.hpp"

#include "chainsim/assert.hpp"

#include <algorithm>
#include <deque>

namespace chainsim::test {

namespace {

std::optional<std::vector<std::int64_t>> spawner_init(const Chain&,
                                                      const ContractCallContext&,
                                                      const std::monostate&) {
  return std::vector<std::int64_t>{};
}

std::optional<std::pair<std::vector<std::int64_t>, std::vector<ActionBody>>>
spawner_receive(const Chain&, const ContractCallContext& ctx,
                const std::vector<std::int64_t>& state,
                const std::optional<SpawnNode>& msg) {
  if (!msg.has_value()) {
    return std::pair{state, std::vector<ActionBody>{}};
  }
  std::vector<std::int64_t> log = state;
  log.push_back(msg->label);
  std::vector<ActionBody> actions;
  actions.reserve(msg->children.size());
  for (const SpawnNode& child : msg->children) {
    actions.push_back(CallBody{ctx.contract_address, Amount(0), serialize(child)});
  }
  return std::pair{std::move(log), std::move(actions)};
}

}  // namespace

ContractRef spawner_contract() {
  static const ContractRef contract =
      wrap_typed_contract<std::monostate, std::vector<std::int64_t>, SpawnNode>(
          kSpawnerName, {spawner_init, spawner_receive});
  return contract;
}

std::vector<std::int64_t> preorder_labels(const SpawnNode& root) {
  std::vector<std::int64_t> out{root.label};
  for (const SpawnNode& child : root.children) {
    auto sub = preorder_labels(child);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<std::int64_t> level_order_labels(const SpawnNode& root) {
  std::vector<std::int64_t> out;
  std::deque<const SpawnNode*> frontier{&root};
  while (!frontier.empty()) {
    const SpawnNode* node = frontier.front();
    frontier.pop_front();
    out.push_back(node->label);
    for (const SpawnNode& child : node->children) {
      frontier.push_back(&child);
    }
  }
  return out;
}

std::vector<std::int64_t> run_spawn_tree(const SpawnNode& root, ExecutionOrder order) {
  const Address user{1};
  const Address spawner_addr{kFirstContractAddress};
  ChainBuilder builder(order);
  std::vector<Action> actions{
      make_deploy(user, Amount(0), spawner_contract(), serialize(std::monostate{})),
      make_call(user, spawner_addr, Amount(0), serialize(root)),
  };
  auto added = builder.add_block(builder.next_header(user, Amount(10)), actions);
  CHAINSIM_ASSERT(added.ok(), "spawn tree block must execute");
  const auto& state = added.value().env().contract_states.at(spawner_addr);
  auto log = deserialize<std::vector<std::int64_t>>(state);
  CHAINSIM_ASSERT(log.has_value(), "spawner state must decode");
  return *log;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

std::size_t pick(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

std::int64_t pick_i64(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace

SerializedValue random_serialized_value(Rng& rng, std::size_t max_depth) {
  const bool scalar_only = max_depth <= 1;
  switch (pick(rng, scalar_only ? 4 : 7)) {
    case 0:
      return SerializedValue::unit();
    case 1:
      return SerializedValue::boolean(chance(rng, 0.5));
    case 2: {
      Amount v(pick_i64(rng, -1000, 1000));
      if (chance(rng, 0.1)) {
        v = v * Amount("1000000000000000000000000000");  // exercise wide ints
      }
      return SerializedValue::integer(v);
    }
    case 3:
      return SerializedValue::address(
          Address{static_cast<std::uint64_t>(pick_i64(rng, 0, 10)) +
                  (chance(rng, 0.5) ? kFirstContractAddress : 0)});
    case 4:
      return SerializedValue::pair(random_serialized_value(rng, max_depth - 1),
                                   random_serialized_value(rng, max_depth - 1));
    case 5:
      return SerializedValue::sum(chance(rng, 0.5) ? 1 : 0,
                                  random_serialized_value(rng, max_depth - 1));
    default: {
      std::vector<SerializedValue> items;
      const std::size_t count = pick(rng, 4);
      items.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        items.push_back(random_serialized_value(rng, max_depth - 1));
      }
      return SerializedValue::list(std::move(items));
    }
  }
}

congress::Rules random_rules(Rng& rng) {
  return congress::Rules{pick_i64(rng, 0, 1000), pick_i64(rng, 0, 1000),
                         static_cast<std::uint64_t>(pick(rng, 3))};
}

congress::CongressAction random_congress_action(Rng& rng) {
  const Address to{static_cast<std::uint64_t>(pick_i64(rng, 1, 6))};
  if (chance(rng, 0.7)) {
    return congress::CongressTransfer{to, Amount(pick_i64(rng, 0, 5))};
  }
  return congress::CongressCall{Address{kFirstContractAddress + pick(rng, 2)},
                                Amount(pick_i64(rng, 0, 3)),
                                random_serialized_value(rng, 3)};
}

congress::Msg random_congress_msg(Rng& rng) {
  const auto pid = static_cast<congress::ProposalId>(pick_i64(rng, 1, 5));
  const Address addr{static_cast<std::uint64_t>(pick_i64(rng, 1, 6))};
  switch (pick(rng, 9)) {
    case 0: return congress::TransferOwnership{addr};
    case 1: return congress::ChangeRules{random_rules(rng)};
    case 2: return congress::AddMember{addr};
    case 3: return congress::RemoveMember{addr};
    case 4: {
      std::vector<congress::CongressAction> actions;
      const std::size_t count = pick(rng, 6);
      for (std::size_t i = 0; i < count; ++i) {
        actions.push_back(random_congress_action(rng));
      }
      return congress::CreateProposal{std::move(actions)};
    }
    case 5: return congress::VoteForProposal{pid};
    case 6: return congress::VoteAgainstProposal{pid};
    case 7: return congress::RetractVote{pid};
    default: return congress::FinishProposal{pid};
  }
}

congress::Proposal random_proposal(Rng& rng) {
  congress::Proposal proposal;
  const std::size_t count = pick(rng, 5);
  for (std::size_t i = 0; i < count; ++i) {
    proposal.actions.push_back(random_congress_action(rng));
  }
  const std::size_t voters = pick(rng, 4);
  for (std::size_t i = 0; i < voters; ++i) {
    proposal.votes[Address{static_cast<std::uint64_t>(pick_i64(rng, 1, 5))}] =
        chance(rng, 0.5) ? congress::Vote::For : congress::Vote::Against;
  }
  proposal.proposed_in_slot = static_cast<std::uint64_t>(pick(rng, 10));
  return proposal;
}

congress::CongressState random_congress_state(Rng& rng) {
  congress::CongressState state;
  state.owner = Address{static_cast<std::uint64_t>(pick_i64(rng, 1, 5))};
  if (chance(rng, 0.2)) {
    state.owner = Address{kFirstContractAddress};  // self-owned congress
  }
  state.rules = random_rules(rng);
  const std::size_t member_count = pick(rng, 5);
  for (std::size_t i = 0; i < member_count; ++i) {
    state.members.insert(Address{static_cast<std::uint64_t>(pick_i64(rng, 1, 6))});
  }
  congress::ProposalId id = 1;
  const std::size_t proposal_count = pick(rng, 4);
  for (std::size_t i = 0; i < proposal_count; ++i) {
    state.proposals.emplace(id, random_proposal(rng));
    id += 1 + pick(rng, 2);
  }
  state.next_proposal_id = id;
  return state;
}

// ---------------------------------------------------------------------------
// Scenario corpus
// ---------------------------------------------------------------------------

namespace {

struct ProposalModel {
  std::size_t action_count = 0;
  std::uint64_t proposed_slot = 0;
  std::map<Address, congress::Vote> votes;
  std::vector<congress::CongressAction> actions;
};

struct CorpusModel {
  std::map<Address, std::int64_t> balances;
  std::int64_t congress_balance = 0;
  Address owner;
  bool self_owned = false;
  std::set<Address> members;
  std::map<congress::ProposalId, ProposalModel> live;
  congress::ProposalId next_pid = 1;
  std::uint64_t slot = 0;
  congress::Rules rules;
};

std::int64_t model_balance(const CorpusModel& m, Address a) {
  auto it = m.balances.find(a);
  return it == m.balances.end() ? 0 : it->second;
}

bool model_passed(const CorpusModel& m, const ProposalModel& p) {
  std::uint64_t total = p.votes.size();
  std::uint64_t votes_for = 0;
  for (const auto& [addr, vote] : p.votes) {
    if (vote == congress::Vote::For) {
      ++votes_for;
    }
  }
  return total * 1000 >= static_cast<std::uint64_t>(m.rules.min_vote_count_permille) *
                             m.members.size() &&
         votes_for * 1000 >=
             static_cast<std::uint64_t>(m.rules.margin_needed_permille) * total;
}

}  // namespace

CorpusScenario random_congress_scenario(Rng& rng) {
  std::vector<Address> users;
  for (std::uint64_t u = 1; u <= 5; ++u) {
    users.push_back(Address{u});
  }
  const Address congress_addr{kFirstContractAddress};
  const Address deployer = users[pick(rng, users.size())];

  CorpusModel model;
  model.owner = deployer;
  model.rules = random_rules(rng);

  Scenario scenario;

  // Funding and deployment block.
  {
    ScenarioBlock block;
    block.creator = deployer;
    const std::int64_t reward = 250 + pick_i64(rng, 0, 150);
    block.reward = Amount(reward);
    model.balances[deployer] += reward;

    const std::int64_t endowment = 40 + pick_i64(rng, 0, 59);
    block.actions.push_back(make_deploy(deployer, Amount(endowment),
                                        congress::congress_contract(),
                                        serialize(model.rules)));
    model.balances[deployer] -= endowment;
    model.congress_balance += endowment;

    for (const Address user : users) {
      if (user != deployer && chance(rng, 0.8)) {
        const std::int64_t amount = 5 + pick_i64(rng, 0, 10);
        block.actions.push_back(make_transfer(deployer, user, Amount(amount)));
        model.balances[deployer] -= amount;
        model.balances[user] += amount;
      }
    }
    model.slot = 1;
    scenario.blocks.push_back(std::move(block));
  }

  const std::size_t extra_blocks = 2 + pick(rng, 5);
  for (std::size_t bi = 0; bi < extra_blocks; ++bi) {
    ScenarioBlock block;
    block.creator = users[pick(rng, users.size())];
    std::int64_t reward = 0;
    if (chance(rng, 0.7)) {
      reward = pick_i64(rng, 0, 50);
      block.reward = Amount(reward);
    }

    const bool sabotage = chance(rng, 0.06);
    CorpusModel next = model;  // applied only if the block should succeed
    next.slot = model.slot + 1;
    next.balances[block.creator] += reward;

    const std::size_t action_count = 1 + pick(rng, 5);
    for (std::size_t ai = 0; ai < action_count; ++ai) {
      switch (pick(rng, 8)) {
        case 0: {  // user-to-user transfer
          const Address from = users[pick(rng, users.size())];
          const Address to = users[pick(rng, users.size())];
          const std::int64_t cap = std::max<std::int64_t>(model_balance(next, from), 0);
          const std::int64_t amount = cap == 0 ? 0 : pick_i64(rng, 0, std::min<std::int64_t>(cap, 9));
          block.actions.push_back(make_transfer(from, to, Amount(amount)));
          next.balances[from] -= amount;
          next.balances[to] += amount;
          break;
        }
        case 1: {  // feed the congress
          const Address from = users[pick(rng, users.size())];
          const std::int64_t cap = std::max<std::int64_t>(model_balance(next, from), 0);
          const std::int64_t amount = cap == 0 ? 0 : pick_i64(rng, 0, std::min<std::int64_t>(cap, 15));
          block.actions.push_back(make_transfer(from, congress_addr, Amount(amount)));
          next.balances[from] -= amount;
          next.congress_balance += amount;
          break;
        }
        case 2: {  // membership management
          if (next.self_owned) {
            break;
          }
          if (chance(rng, 0.7) || next.members.empty()) {
            const Address member = users[pick(rng, users.size())];
            if (next.members.count(member) != 0) {
              break;
            }
            block.actions.push_back(make_call(
                next.owner, congress_addr, Amount(0),
                serialize(congress::Msg{congress::AddMember{member}})));
            next.members.insert(member);
          } else {
            auto it = next.members.begin();
            std::advance(it, pick(rng, next.members.size()));
            const Address member = *it;
            block.actions.push_back(make_call(
                next.owner, congress_addr, Amount(0),
                serialize(congress::Msg{congress::RemoveMember{member}})));
            next.members.erase(member);
            for (auto& [pid, proposal] : next.live) {
              proposal.votes.erase(member);
            }
          }
          break;
        }
        case 3: {  // create a proposal (anyone may)
          const Address from = users[pick(rng, users.size())];
          std::vector<congress::CongressAction> actions;
          const std::size_t count = pick(rng, 6);  // up to 5 actions
          for (std::size_t i = 0; i < count; ++i) {
            if (next.self_owned && chance(rng, 0.25)) {
              actions.push_back(congress::CongressCall{
                  congress_addr, Amount(0),
                  serialize(congress::Msg{
                      congress::AddMember{users[pick(rng, users.size())]}})});
            } else if (chance(rng, 0.1)) {
              actions.push_back(congress::CongressCall{
                  congress_addr, Amount(0),
                  serialize(congress::Msg{congress::CreateProposal{{}}})});
            } else {
              actions.push_back(congress::CongressTransfer{
                  users[pick(rng, users.size())], Amount(pick_i64(rng, 0, 2))});
            }
          }
          ProposalModel proposal;
          proposal.action_count = actions.size();
          proposal.proposed_slot = next.slot;
          proposal.actions = actions;
          block.actions.push_back(
              make_call(from, congress_addr, Amount(0),
                        serialize(congress::Msg{congress::CreateProposal{actions}})));
          next.live.emplace(next.next_pid, std::move(proposal));
          ++next.next_pid;
          break;
        }
        case 4: {  // vote
          if (next.members.empty() || next.live.empty()) {
            break;
          }
          auto member_it = next.members.begin();
          std::advance(member_it, pick(rng, next.members.size()));
          auto proposal_it = next.live.begin();
          std::advance(proposal_it, pick(rng, next.live.size()));
          const bool in_favor = chance(rng, 0.7);
          const congress::Msg vote_msg =
              in_favor ? congress::Msg{congress::VoteForProposal{proposal_it->first}}
                       : congress::Msg{congress::VoteAgainstProposal{proposal_it->first}};
          block.actions.push_back(make_call(*member_it, congress_addr, Amount(0),
                                            serialize(vote_msg)));
          proposal_it->second.votes[*member_it] =
              in_favor ? congress::Vote::For : congress::Vote::Against;
          break;
        }
        case 5: {  // retract an existing vote
          for (auto& [pid, proposal] : next.live) {
            if (!proposal.votes.empty()) {
              auto vote_it = proposal.votes.begin();
              std::advance(vote_it, pick(rng, proposal.votes.size()));
              if (next.members.count(vote_it->first) == 0) {
                break;
              }
              block.actions.push_back(make_call(
                  vote_it->first, congress_addr, Amount(0),
                  serialize(congress::Msg{congress::RetractVote{pid}})));
              proposal.votes.erase(vote_it);
              break;
            }
          }
          break;
        }
        case 6: {  // finish a debated proposal
          congress::ProposalId target = 0;
          for (const auto& [pid, proposal] : next.live) {
            if (next.slot >= proposal.proposed_slot + next.rules.debating_period_in_blocks) {
              target = pid;
              break;
            }
          }
          if (target == 0) {
            break;
          }
          const Address from = users[pick(rng, users.size())];
          block.actions.push_back(
              make_call(from, congress_addr, Amount(0),
                        serialize(congress::Msg{congress::FinishProposal{target}})));
          auto it = next.live.find(target);
          if (model_passed(next, it->second)) {
            for (const congress::CongressAction& action : it->second.actions) {
              if (const auto* transfer =
                      std::get_if<congress::CongressTransfer>(&action)) {
                next.congress_balance -=
                    static_cast<std::int64_t>(transfer->amount);
                next.balances[transfer->to] +=
                    static_cast<std::int64_t>(transfer->amount);
              }
            }
          }
          next.live.erase(it);
          break;
        }
        default: {  // occasionally hand the congress to itself
          if (!next.self_owned && chance(rng, 0.15)) {
            block.actions.push_back(make_call(
                next.owner, congress_addr, Amount(0),
                serialize(congress::Msg{congress::TransferOwnership{congress_addr}})));
            next.owner = congress_addr;
            next.self_owned = true;
          }
          break;
        }
      }
    }

    if (block.actions.empty()) {
      block.actions.push_back(
          make_transfer(users[0], users[1 + pick(rng, users.size() - 1)], Amount(0)));
    }

    if (sabotage) {
      switch (pick(rng, 3)) {
        case 0:  // vote from an address that was never a member
          block.actions.push_back(
              make_call(Address{9}, congress_addr, Amount(0),
                        serialize(congress::Msg{congress::VoteForProposal{1}})));
          break;
        case 1:  // hopeless transfer
          block.actions.push_back(
              make_transfer(Address{9}, users[0], Amount(1000000)));
          break;
        default:  // duplicate member insert
          if (!model.self_owned && !model.members.empty()) {
            block.actions.push_back(make_call(
                model.owner, congress_addr, Amount(0),
                serialize(congress::Msg{congress::AddMember{*model.members.begin()}})));
          } else {
            block.actions.push_back(
                make_transfer(Address{9}, users[0], Amount(1000000)));
          }
          break;
      }
    } else {
      model = std::move(next);
    }

    scenario.blocks.push_back(std::move(block));
  }

  return CorpusScenario{std::move(scenario), congress_addr};
}

}  // namespace chainsim::test
