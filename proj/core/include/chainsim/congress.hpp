#pragma once

#include "chainsim/action.hpp"
#include "chainsim/chain.hpp"
#include "chainsim/codec.hpp"
#include "chainsim/contract.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

namespace chainsim::congress {

using ProposalId = std::uint64_t;

/// Congress parameters. Permille thresholds: quorum compares vote count
/// against member count, margin compares for-votes against total votes.
/// Exact-threshold ties pass.
struct Rules {
  std::int64_t min_vote_count_permille = 0;
  std::int64_t margin_needed_permille = 0;
  std::uint64_t debating_period_in_blocks = 0;

  bool operator==(const Rules&) const = default;
};

bool rules_valid(const Rules& rules);

/// What a proposal may ask the Congress to do: transfers and calls only,
/// never deployments (contract code cannot live inside contract state).
struct CongressTransfer {
  Address to;
  Amount amount = 0;

  bool operator==(const CongressTransfer&) const = default;
};

struct CongressCall {
  Address to;
  Amount amount = 0;
  SerializedValue message;

  bool operator==(const CongressCall&) const = default;
};

using CongressAction = std::variant<CongressTransfer, CongressCall>;

ActionBody to_action_body(const CongressAction& action);

enum class Vote : std::uint8_t { For, Against };

struct Proposal {
  std::vector<CongressAction> actions;
  std::map<Address, Vote> votes;
  std::uint64_t proposed_in_slot = 0;

  bool operator==(const Proposal&) const = default;
};

struct CongressState {
  Address owner;
  Rules rules;
  std::set<Address> members;
  std::map<ProposalId, Proposal> proposals;
  ProposalId next_proposal_id = 1;

  bool operator==(const CongressState&) const = default;
};

// The message interface. Branch-index table of the nested-sum encoding, in
// declaration order (path = sum branches from the outside in):
//
//   TransferOwnership    0
//   ChangeRules          1,0
//   AddMember            1,1,0
//   RemoveMember         1,1,1,0
//   CreateProposal       1,1,1,1,0
//   VoteForProposal      1,1,1,1,1,0
//   VoteAgainstProposal  1,1,1,1,1,1,0
//   RetractVote          1,1,1,1,1,1,1,0
//   FinishProposal       1,1,1,1,1,1,1,1
struct TransferOwnership {
  Address new_owner;
  bool operator==(const TransferOwnership&) const = default;
};
struct ChangeRules {
  Rules new_rules;
  bool operator==(const ChangeRules&) const = default;
};
struct AddMember {
  Address member;
  bool operator==(const AddMember&) const = default;
};
struct RemoveMember {
  Address member;
  bool operator==(const RemoveMember&) const = default;
};
struct CreateProposal {
  std::vector<CongressAction> actions;
  bool operator==(const CreateProposal&) const = default;
};
struct VoteForProposal {
  ProposalId proposal;
  bool operator==(const VoteForProposal&) const = default;
};
struct VoteAgainstProposal {
  ProposalId proposal;
  bool operator==(const VoteAgainstProposal&) const = default;
};
struct RetractVote {
  ProposalId proposal;
  bool operator==(const RetractVote&) const = default;
};
struct FinishProposal {
  ProposalId proposal;
  bool operator==(const FinishProposal&) const = default;
};

using Msg = std::variant<TransferOwnership, ChangeRules, AddMember, RemoveMember,
                         CreateProposal, VoteForProposal, VoteAgainstProposal,
                         RetractVote, FinishProposal>;

using ReceiveOutcome = std::pair<CongressState, std::vector<ActionBody>>;

/// Deployment: valid rules yield a Congress owned by the deployer with no
/// members and no proposals; invalid rules reject the deployment.
std::optional<CongressState> congress_init(const Chain& chain,
                                           const ContractCallContext& ctx,
                                           const Rules& setup);

/// Message dispatch. Any violated guard rejects the whole call. Only
/// FinishProposal ever emits actions, and it clears the finished proposal
/// from storage before they are handed to the scheduler.
std::optional<ReceiveOutcome> congress_receive(const Chain& chain,
                                               const ContractCallContext& ctx,
                                               const CongressState& state,
                                               const std::optional<Msg>& msg);

/// The deliberately broken variant: identical except that FinishProposal
/// skips clearing the proposal, so a reentrant call can replay it.
std::optional<ReceiveOutcome> buggy_congress_receive(const Chain& chain,
                                                     const ContractCallContext& ctx,
                                                     const CongressState& state,
                                                     const std::optional<Msg>& msg);

/// Tally: with total cast votes t and for-votes f,
///   t * 1000 >= min_vote_count_permille * member_count  (quorum)
///   f * 1000 >= margin_needed_permille * t               (margin)
bool proposal_passed(const Proposal& proposal, const Rules& rules,
                     std::size_t member_count);

/// Total number of actions across live proposals; the "stored" component of
/// the strengthened counting invariant.
std::size_t stored_action_count(const CongressState& state);

/// Reentrancy harness: holds a reentry budget, a Congress address and a
/// proposal id. Every incoming messageless transfer spends one budget unit
/// to call FinishProposal on the target again.
struct AttackerState {
  std::int64_t remaining_reentries = 0;
  Address target;
  ProposalId proposal = 0;

  bool operator==(const AttackerState&) const = default;
};

inline constexpr const char* kCongressName = "congress";
inline constexpr const char* kBuggyCongressName = "buggy_congress";
inline constexpr const char* kAttackerName = "attacker";

ContractRef congress_contract();
ContractRef buggy_congress_contract();
ContractRef attacker_contract();

}  // namespace chainsim::congress

namespace chainsim {

template <>
struct Codec<congress::Rules> {
  static SerializedValue encode(const congress::Rules& r) {
    return serialize(std::tuple{r.min_vote_count_permille, r.margin_needed_permille,
                                r.debating_period_in_blocks});
  }
  static std::optional<congress::Rules> decode(const SerializedValue& v) {
    auto t = deserialize<std::tuple<std::int64_t, std::int64_t, std::uint64_t>>(v);
    if (!t) {
      return std::nullopt;
    }
    return congress::Rules{std::get<0>(*t), std::get<1>(*t), std::get<2>(*t)};
  }
};

template <>
struct Codec<congress::CongressTransfer> {
  static SerializedValue encode(const congress::CongressTransfer& a) {
    return serialize(std::tuple{a.to, a.amount});
  }
  static std::optional<congress::CongressTransfer> decode(const SerializedValue& v) {
    auto t = deserialize<std::tuple<Address, Amount>>(v);
    if (!t) {
      return std::nullopt;
    }
    return congress::CongressTransfer{std::get<0>(*t), std::get<1>(*t)};
  }
};

template <>
struct Codec<congress::CongressCall> {
  static SerializedValue encode(const congress::CongressCall& a) {
    return serialize(std::tuple{a.to, a.amount, a.message});
  }
  static std::optional<congress::CongressCall> decode(const SerializedValue& v) {
    auto t = deserialize<std::tuple<Address, Amount, SerializedValue>>(v);
    if (!t) {
      return std::nullopt;
    }
    return congress::CongressCall{std::get<0>(*t), std::get<1>(*t),
                                  std::move(std::get<2>(*t))};
  }
};

template <>
struct Codec<congress::Vote> {
  static SerializedValue encode(congress::Vote v) {
    return SerializedValue::boolean(v == congress::Vote::For);
  }
  static std::optional<congress::Vote> decode(const SerializedValue& v) {
    auto b = deserialize<bool>(v);
    if (!b) {
      return std::nullopt;
    }
    return *b ? congress::Vote::For : congress::Vote::Against;
  }
};

template <>
struct Codec<congress::Proposal> {
  static SerializedValue encode(const congress::Proposal& p) {
    return serialize(std::tuple{p.actions, p.votes, p.proposed_in_slot});
  }
  static std::optional<congress::Proposal> decode(const SerializedValue& v) {
    auto t = deserialize<std::tuple<std::vector<congress::CongressAction>,
                                    std::map<Address, congress::Vote>, std::uint64_t>>(v);
    if (!t) {
      return std::nullopt;
    }
    return congress::Proposal{std::move(std::get<0>(*t)), std::move(std::get<1>(*t)),
                              std::get<2>(*t)};
  }
};

template <>
struct Codec<congress::CongressState> {
  static SerializedValue encode(const congress::CongressState& s) {
    return serialize(
        std::tuple{s.owner, s.rules, s.members, s.proposals, s.next_proposal_id});
  }
  static std::optional<congress::CongressState> decode(const SerializedValue& v) {
    auto t = deserialize<
        std::tuple<Address, congress::Rules, std::set<Address>,
                   std::map<congress::ProposalId, congress::Proposal>, std::uint64_t>>(v);
    if (!t) {
      return std::nullopt;
    }
    return congress::CongressState{std::get<0>(*t), std::get<1>(*t),
                                   std::move(std::get<2>(*t)),
                                   std::move(std::get<3>(*t)), std::get<4>(*t)};
  }
};

template <>
struct Codec<congress::TransferOwnership> {
  static SerializedValue encode(const congress::TransferOwnership& m) {
    return serialize(m.new_owner);
  }
  static std::optional<congress::TransferOwnership> decode(const SerializedValue& v) {
    auto a = deserialize<Address>(v);
    if (!a) {
      return std::nullopt;
    }
    return congress::TransferOwnership{*a};
  }
};

template <>
struct Codec<congress::ChangeRules> {
  static SerializedValue encode(const congress::ChangeRules& m) {
    return serialize(m.new_rules);
  }
  static std::optional<congress::ChangeRules> decode(const SerializedValue& v) {
    auto r = deserialize<congress::Rules>(v);
    if (!r) {
      return std::nullopt;
    }
    return congress::ChangeRules{*r};
  }
};

template <>
struct Codec<congress::AddMember> {
  static SerializedValue encode(const congress::AddMember& m) {
    return serialize(m.member);
  }
  static std::optional<congress::AddMember> decode(const SerializedValue& v) {
    auto a = deserialize<Address>(v);
    if (!a) {
      return std::nullopt;
    }
    return congress::AddMember{*a};
  }
};

template <>
struct Codec<congress::RemoveMember> {
  static SerializedValue encode(const congress::RemoveMember& m) {
    return serialize(m.member);
  }
  static std::optional<congress::RemoveMember> decode(const SerializedValue& v) {
    auto a = deserialize<Address>(v);
    if (!a) {
      return std::nullopt;
    }
    return congress::RemoveMember{*a};
  }
};

template <>
struct Codec<congress::CreateProposal> {
  static SerializedValue encode(const congress::CreateProposal& m) {
    return serialize(m.actions);
  }
  static std::optional<congress::CreateProposal> decode(const SerializedValue& v) {
    auto actions = deserialize<std::vector<congress::CongressAction>>(v);
    if (!actions) {
      return std::nullopt;
    }
    return congress::CreateProposal{std::move(*actions)};
  }
};

namespace congress_detail {

template <typename T>
struct ProposalIdMsgCodec {
  static SerializedValue encode(const T& m) { return serialize(m.proposal); }
  static std::optional<T> decode(const SerializedValue& v) {
    auto id = deserialize<std::uint64_t>(v);
    if (!id) {
      return std::nullopt;
    }
    return T{*id};
  }
};

}  // namespace congress_detail

template <>
struct Codec<congress::VoteForProposal>
    : congress_detail::ProposalIdMsgCodec<congress::VoteForProposal> {};
template <>
struct Codec<congress::VoteAgainstProposal>
    : congress_detail::ProposalIdMsgCodec<congress::VoteAgainstProposal> {};
template <>
struct Codec<congress::RetractVote>
    : congress_detail::ProposalIdMsgCodec<congress::RetractVote> {};
template <>
struct Codec<congress::FinishProposal>
    : congress_detail::ProposalIdMsgCodec<congress::FinishProposal> {};

template <>
struct Codec<congress::AttackerState> {
  static SerializedValue encode(const congress::AttackerState& s) {
    return serialize(std::tuple{s.remaining_reentries, s.target, s.proposal});
  }
  static std::optional<congress::AttackerState> decode(const SerializedValue& v) {
    auto t = deserialize<std::tuple<std::int64_t, Address, std::uint64_t>>(v);
    if (!t) {
      return std::nullopt;
    }
    return congress::AttackerState{std::get<0>(*t), std::get<1>(*t), std::get<2>(*t)};
  }
};

}  // namespace chainsim
