#include "chainsim/congress.hpp"

namespace chainsim::congress {

bool rules_valid(const Rules& rules) {
  return rules.min_vote_count_permille >= 0 && rules.min_vote_count_permille <= 1000 &&
         rules.margin_needed_permille >= 0 && rules.margin_needed_permille <= 1000;
}

ActionBody to_action_body(const CongressAction& action) {
  if (const auto* transfer = std::get_if<CongressTransfer>(&action)) {
    return TransferBody{transfer->to, transfer->amount};
  }
  const auto& call = std::get<CongressCall>(action);
  return CallBody{call.to, call.amount, call.message};
}

std::optional<CongressState> congress_init(const Chain&,
                                           const ContractCallContext& ctx,
                                           const Rules& setup) {
  if (!rules_valid(setup)) {
    return std::nullopt;
  }
  CongressState state;
  state.owner = ctx.from;
  state.rules = setup;
  state.next_proposal_id = 1;
  return state;
}

bool proposal_passed(const Proposal& proposal, const Rules& rules,
                     std::size_t member_count) {
  const std::uint64_t total = proposal.votes.size();
  std::uint64_t votes_for = 0;
  for (const auto& [member, vote] : proposal.votes) {
    if (vote == Vote::For) {
      ++votes_for;
    }
  }
  const bool quorum = total * 1000 >=
                      static_cast<std::uint64_t>(rules.min_vote_count_permille) *
                          static_cast<std::uint64_t>(member_count);
  const bool margin =
      votes_for * 1000 >=
      static_cast<std::uint64_t>(rules.margin_needed_permille) * total;
  return quorum && margin;
}

std::size_t stored_action_count(const CongressState& state) {
  std::size_t count = 0;
  for (const auto& [id, proposal] : state.proposals) {
    count += proposal.actions.size();
  }
  return count;
}

namespace {

std::optional<ReceiveOutcome> handle(const Chain& chain, const ContractCallContext& ctx,
                                     CongressState state, const Msg& msg,
                                     bool clear_finished_proposal) {
  std::vector<ActionBody> out;

  if (const auto* transfer = std::get_if<TransferOwnership>(&msg)) {
    if (ctx.from != state.owner) {
      return std::nullopt;
    }
    state.owner = transfer->new_owner;
    return ReceiveOutcome{std::move(state), std::move(out)};
  }

  if (const auto* change = std::get_if<ChangeRules>(&msg)) {
    if (ctx.from != state.owner || !rules_valid(change->new_rules)) {
      return std::nullopt;
    }
    state.rules = change->new_rules;
    return ReceiveOutcome{std::move(state), std::move(out)};
  }

  if (const auto* add = std::get_if<AddMember>(&msg)) {
    if (ctx.from != state.owner || state.members.count(add->member) != 0) {
      return std::nullopt;
    }
    state.members.insert(add->member);
    return ReceiveOutcome{std::move(state), std::move(out)};
  }

  if (const auto* remove = std::get_if<RemoveMember>(&msg)) {
    if (ctx.from != state.owner || state.members.count(remove->member) == 0) {
      return std::nullopt;
    }
    state.members.erase(remove->member);
    // A departed member leaves no votes behind.
    for (auto& [id, proposal] : state.proposals) {
      proposal.votes.erase(remove->member);
    }
    return ReceiveOutcome{std::move(state), std::move(out)};
  }

  if (const auto* create = std::get_if<CreateProposal>(&msg)) {
    for (const CongressAction& action : create->actions) {
      const Amount amount = std::visit([](const auto& a) { return a.amount; }, action);
      if (amount < 0) {
        return std::nullopt;
      }
    }
    Proposal proposal;
    proposal.actions = create->actions;
    proposal.proposed_in_slot = chain.current_slot;
    state.proposals.emplace(state.next_proposal_id, std::move(proposal));
    ++state.next_proposal_id;
    return ReceiveOutcome{std::move(state), std::move(out)};
  }

  if (const auto* vote = std::get_if<VoteForProposal>(&msg)) {
    if (state.members.count(ctx.from) == 0) {
      return std::nullopt;
    }
    auto it = state.proposals.find(vote->proposal);
    if (it == state.proposals.end()) {
      return std::nullopt;
    }
    it->second.votes[ctx.from] = Vote::For;
    return ReceiveOutcome{std::move(state), std::move(out)};
  }

  if (const auto* vote = std::get_if<VoteAgainstProposal>(&msg)) {
    if (state.members.count(ctx.from) == 0) {
      return std::nullopt;
    }
    auto it = state.proposals.find(vote->proposal);
    if (it == state.proposals.end()) {
      return std::nullopt;
    }
    it->second.votes[ctx.from] = Vote::Against;
    return ReceiveOutcome{std::move(state), std::move(out)};
  }

  if (const auto* retract = std::get_if<RetractVote>(&msg)) {
    if (state.members.count(ctx.from) == 0) {
      return std::nullopt;
    }
    auto it = state.proposals.find(retract->proposal);
    if (it == state.proposals.end() || it->second.votes.count(ctx.from) == 0) {
      return std::nullopt;
    }
    it->second.votes.erase(ctx.from);
    return ReceiveOutcome{std::move(state), std::move(out)};
  }

  const auto& finish = std::get<FinishProposal>(msg);
  auto it = state.proposals.find(finish.proposal);
  if (it == state.proposals.end()) {
    return std::nullopt;
  }
  const Proposal& proposal = it->second;
  if (chain.current_slot < proposal.proposed_in_slot ||
      chain.current_slot - proposal.proposed_in_slot <
          state.rules.debating_period_in_blocks) {
    return std::nullopt;  // still debating
  }
  if (proposal_passed(proposal, state.rules, state.members.size())) {
    out.reserve(proposal.actions.size());
    for (const CongressAction& action : proposal.actions) {
      out.push_back(to_action_body(action));
    }
  }
  if (clear_finished_proposal) {
    // Clearing must happen before the scheduler sees the emitted actions;
    // skipping it is exactly the reentrancy bug the buggy variant keeps.
    state.proposals.erase(it);
  }
  return ReceiveOutcome{std::move(state), std::move(out)};
}

std::optional<ReceiveOutcome> receive_impl(const Chain& chain,
                                           const ContractCallContext& ctx,
                                           const CongressState& state,
                                           const std::optional<Msg>& msg,
                                           bool clear_finished_proposal) {
  if (!msg.has_value()) {
    // Plain transfer: the Congress accepts funds without state change.
    return ReceiveOutcome{state, {}};
  }
  return handle(chain, ctx, state, *msg, clear_finished_proposal);
}

}  // namespace

std::optional<ReceiveOutcome> congress_receive(const Chain& chain,
                                               const ContractCallContext& ctx,
                                               const CongressState& state,
                                               const std::optional<Msg>& msg) {
  return receive_impl(chain, ctx, state, msg, true);
}

std::optional<ReceiveOutcome> buggy_congress_receive(const Chain& chain,
                                                     const ContractCallContext& ctx,
                                                     const CongressState& state,
                                                     const std::optional<Msg>& msg) {
  return receive_impl(chain, ctx, state, msg, false);
}

ContractRef congress_contract() {
  static const ContractRef contract = wrap_typed_contract<Rules, CongressState, Msg>(
      kCongressName, {congress_init, congress_receive});
  return contract;
}

ContractRef buggy_congress_contract() {
  static const ContractRef contract = wrap_typed_contract<Rules, CongressState, Msg>(
      kBuggyCongressName, {congress_init, buggy_congress_receive});
  return contract;
}

namespace {

std::optional<AttackerState> attacker_init(const Chain&, const ContractCallContext&,
                                           const AttackerState& setup) {
  if (setup.remaining_reentries < 0) {
    return std::nullopt;
  }
  return setup;
}

std::optional<std::pair<AttackerState, std::vector<ActionBody>>> attacker_receive(
    const Chain&, const ContractCallContext&, const AttackerState& state,
    const std::optional<std::monostate>& msg) {
  if (msg.has_value()) {
    return std::nullopt;  // the attacker only reacts to plain transfers
  }
  AttackerState next = state;
  std::vector<ActionBody> actions;
  if (next.remaining_reentries > 0) {
    --next.remaining_reentries;
    actions.push_back(CallBody{next.target, Amount(0),
                               serialize(Msg{FinishProposal{next.proposal}})});
  }
  return std::pair{std::move(next), std::move(actions)};
}

}  // namespace

ContractRef attacker_contract() {
  static const ContractRef contract =
      wrap_typed_contract<AttackerState, AttackerState, std::monostate>(
          kAttackerName, {attacker_init, attacker_receive});
  return contract;
}

}  // namespace chainsim::congress
