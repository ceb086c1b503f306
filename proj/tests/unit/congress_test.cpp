#include "chainsim/congress.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace chainsim::congress {
namespace {

const Address kOwner{1};
const Address kMember{2};
const Address kOutsider{3};
const Address kSelf{kFirstContractAddress};

Chain chain_at_slot(std::uint64_t slot) {
  Chain chain;
  chain.chain_height = slot;
  chain.current_slot = slot;
  return chain;
}

ContractCallContext from(Address sender, Amount amount = Amount(0)) {
  return ContractCallContext{sender, kSelf, std::move(amount)};
}

CongressState fresh_state(Rules rules = Rules{500, 501, 2}) {
  auto state = congress_init(chain_at_slot(0), from(kOwner), rules);
  EXPECT_TRUE(state.has_value());
  return *state;
}

// --- init ------------------------------------------------------------------

TEST(CongressInit, OwnerIsTheDeployer) {
  const auto state = congress_init(chain_at_slot(0), from(kOwner), Rules{500, 501, 2});
  ASSERT_TRUE(state.has_value());
  EXPECT_EQ(state->owner, kOwner);
  EXPECT_TRUE(state->members.empty());
  EXPECT_TRUE(state->proposals.empty());
  EXPECT_EQ(state->next_proposal_id, 1u);
}

TEST(CongressInit, PermilleBoundsEnforced) {
  EXPECT_FALSE(congress_init(chain_at_slot(0), from(kOwner), Rules{500, 1001, 0}));
  EXPECT_FALSE(congress_init(chain_at_slot(0), from(kOwner), Rules{-1, 0, 0}));
  EXPECT_TRUE(congress_init(chain_at_slot(0), from(kOwner), Rules{0, 0, 0}));
  EXPECT_TRUE(congress_init(chain_at_slot(0), from(kOwner), Rules{1000, 1000, 0}));
}

// --- ownership and membership ----------------------------------------------

TEST(CongressReceive, OwnerAddsMember) {
  const auto result = congress_receive(chain_at_slot(1), from(kOwner), fresh_state(),
                                       Msg{AddMember{kMember}});
  ASSERT_TRUE(result.has_value());
  EXPECT_TRUE(result->first.members.count(kMember));
  EXPECT_TRUE(result->second.empty());
}

TEST(CongressReceive, NonOwnerManagementRejected) {
  const auto state = fresh_state();
  EXPECT_FALSE(congress_receive(chain_at_slot(1), from(kOutsider), state,
                                Msg{ChangeRules{Rules{0, 0, 0}}}));
  EXPECT_FALSE(congress_receive(chain_at_slot(1), from(kOutsider), state,
                                Msg{AddMember{kOutsider}}));
  EXPECT_FALSE(congress_receive(chain_at_slot(1), from(kOutsider), state,
                                Msg{TransferOwnership{kOutsider}}));
}

TEST(CongressReceive, DuplicateAddAndMissingRemoveRejected) {
  auto state = fresh_state();
  state.members.insert(kMember);
  EXPECT_FALSE(congress_receive(chain_at_slot(1), from(kOwner), state,
                                Msg{AddMember{kMember}}));
  EXPECT_FALSE(congress_receive(chain_at_slot(1), from(kOwner), state,
                                Msg{RemoveMember{kOutsider}}));
}

TEST(CongressReceive, ChangeRulesValidatesBounds) {
  const auto ok = congress_receive(chain_at_slot(1), from(kOwner), fresh_state(),
                                   Msg{ChangeRules{Rules{1000, 0, 9}}});
  ASSERT_TRUE(ok.has_value());
  EXPECT_EQ(ok->first.rules, (Rules{1000, 0, 9}));
  EXPECT_FALSE(congress_receive(chain_at_slot(1), from(kOwner), fresh_state(),
                                Msg{ChangeRules{Rules{1000, 1001, 9}}}));
}

TEST(CongressReceive, RemoveMemberDropsTheirVotes) {
  auto state = fresh_state(Rules{0, 0, 0});
  state.members = {kOwner, kMember};
  Proposal proposal;
  proposal.actions = {CongressTransfer{kOutsider, Amount(1)}};
  proposal.votes = {{kOwner, Vote::For}, {kMember, Vote::Against}};
  state.proposals.emplace(1, proposal);
  state.next_proposal_id = 2;

  const auto result = congress_receive(chain_at_slot(1), from(kOwner), state,
                                       Msg{RemoveMember{kMember}});
  ASSERT_TRUE(result.has_value());
  EXPECT_FALSE(result->first.members.count(kMember));
  EXPECT_EQ(result->first.proposals.at(1).votes.size(), 1u);
  EXPECT_TRUE(result->first.proposals.at(1).votes.count(kOwner));
}

// --- proposals and votes -----------------------------------------------------

TEST(CongressReceive, AnyoneMayCreateProposals) {
  const auto result = congress_receive(
      chain_at_slot(7), from(kOutsider), fresh_state(),
      Msg{CreateProposal{{CongressTransfer{kMember, Amount(2)}}}});
  ASSERT_TRUE(result.has_value());
  ASSERT_TRUE(result->first.proposals.count(1));
  EXPECT_EQ(result->first.proposals.at(1).proposed_in_slot, 7u);
  EXPECT_EQ(result->first.next_proposal_id, 2u);
  EXPECT_TRUE(result->second.empty());
}

TEST(CongressReceive, ProposalWithNegativeAmountRejected) {
  EXPECT_FALSE(congress_receive(
      chain_at_slot(1), from(kOwner), fresh_state(),
      Msg{CreateProposal{{CongressTransfer{kMember, Amount(-1)}}}}));
}

TEST(CongressReceive, VotesRequireMembershipAndProposal) {
  auto state = fresh_state();
  state.members = {kMember};
  Proposal proposal;
  state.proposals.emplace(1, proposal);

  EXPECT_FALSE(congress_receive(chain_at_slot(1), from(kOutsider), state,
                                Msg{VoteForProposal{1}}));
  EXPECT_FALSE(congress_receive(chain_at_slot(1), from(kMember), state,
                                Msg{VoteForProposal{2}}));
  const auto voted = congress_receive(chain_at_slot(1), from(kMember), state,
                                      Msg{VoteForProposal{1}});
  ASSERT_TRUE(voted.has_value());
  EXPECT_EQ(voted->first.proposals.at(1).votes.at(kMember), Vote::For);
}

TEST(CongressReceive, RepeatVoteOverwrites) {
  auto state = fresh_state();
  state.members = {kMember};
  state.proposals.emplace(1, Proposal{});

  auto after = congress_receive(chain_at_slot(1), from(kMember), state,
                                Msg{VoteForProposal{1}});
  ASSERT_TRUE(after.has_value());
  after = congress_receive(chain_at_slot(1), from(kMember), after->first,
                           Msg{VoteForProposal{1}});
  ASSERT_TRUE(after.has_value());
  EXPECT_EQ(after->first.proposals.at(1).votes.size(), 1u);
  EXPECT_EQ(after->first.proposals.at(1).votes.at(kMember), Vote::For);

  after = congress_receive(chain_at_slot(1), from(kMember), after->first,
                           Msg{VoteAgainstProposal{1}});
  ASSERT_TRUE(after.has_value());
  EXPECT_EQ(after->first.proposals.at(1).votes.at(kMember), Vote::Against);
}

TEST(CongressReceive, RetractVoteNeedsAnExistingVote) {
  auto state = fresh_state();
  state.members = {kMember};
  state.proposals.emplace(1, Proposal{});
  EXPECT_FALSE(congress_receive(chain_at_slot(1), from(kMember), state,
                                Msg{RetractVote{1}}));
  auto voted = congress_receive(chain_at_slot(1), from(kMember), state,
                                Msg{VoteForProposal{1}});
  ASSERT_TRUE(voted.has_value());
  const auto retracted = congress_receive(chain_at_slot(1), from(kMember),
                                          voted->first, Msg{RetractVote{1}});
  ASSERT_TRUE(retracted.has_value());
  EXPECT_TRUE(retracted->first.proposals.at(1).votes.empty());
}

// --- finishing ---------------------------------------------------------------

CongressState state_with_passing_proposal(std::size_t action_count,
                                          std::uint64_t proposed_in_slot,
                                          Rules rules = Rules{500, 500, 2}) {
  auto state = fresh_state(rules);
  state.members = {kOwner, kMember};
  Proposal proposal;
  for (std::size_t i = 0; i < action_count; ++i) {
    proposal.actions.push_back(
        CongressTransfer{kOutsider, Amount(static_cast<int>(i) + 1)});
  }
  proposal.votes = {{kOwner, Vote::For}, {kMember, Vote::For}};
  proposal.proposed_in_slot = proposed_in_slot;
  state.proposals.emplace(1, std::move(proposal));
  state.next_proposal_id = 2;
  return state;
}

TEST(CongressReceive, FinishBeforeDebateEndsRejected) {
  const auto state = state_with_passing_proposal(1, 5);  // debate takes 2 slots
  EXPECT_FALSE(congress_receive(chain_at_slot(6), from(kOutsider), state,
                                Msg{FinishProposal{1}}));
  EXPECT_TRUE(congress_receive(chain_at_slot(7), from(kOutsider), state,
                               Msg{FinishProposal{1}}));
}

TEST(CongressReceive, FinishedPassingProposalEmitsItsActionsInOrder) {
  const auto state = state_with_passing_proposal(2, 0);
  const auto result = congress_receive(chain_at_slot(9), from(kOutsider), state,
                                       Msg{FinishProposal{1}});
  ASSERT_TRUE(result.has_value());
  EXPECT_FALSE(result->first.proposals.count(1));
  ASSERT_EQ(result->second.size(), 2u);
  EXPECT_EQ(std::get<TransferBody>(result->second[0]).amount, Amount(1));
  EXPECT_EQ(std::get<TransferBody>(result->second[1]).amount, Amount(2));
}

TEST(CongressReceive, FinishedFailingProposalEmitsNothing) {
  // Unanimous quorum required, one of two members voted: quorum fails.
  auto state = state_with_passing_proposal(2, 0, Rules{1000, 0, 0});
  state.proposals.at(1).votes.erase(kMember);
  const auto result = congress_receive(chain_at_slot(5), from(kOutsider), state,
                                       Msg{FinishProposal{1}});
  ASSERT_TRUE(result.has_value());
  EXPECT_FALSE(result->first.proposals.count(1));
  EXPECT_TRUE(result->second.empty());
}

TEST(CongressReceive, FinishUnknownProposalRejected) {
  EXPECT_FALSE(congress_receive(chain_at_slot(5), from(kOwner), fresh_state(),
                                Msg{FinishProposal{4}}));
}

TEST(CongressReceive, PlainTransferAccepted) {
  const auto state = fresh_state();
  const auto result =
      congress_receive(chain_at_slot(1), from(kOutsider, Amount(5)), state, std::nullopt);
  ASSERT_TRUE(result.has_value());
  EXPECT_EQ(result->first, state);
  EXPECT_TRUE(result->second.empty());
}

TEST(CongressReceive, OnlyFinishEmitsActions) {
  test::Rng rng(31337);
  for (int i = 0; i < 300; ++i) {
    const auto state = test::random_congress_state(rng);
    const auto msg = test::random_congress_msg(rng);
    const Address sender{1 + rng() % 6};
    const auto result = congress_receive(chain_at_slot(rng() % 12),
                                         from(sender), state, msg);
    if (result.has_value() && !std::holds_alternative<FinishProposal>(msg)) {
      EXPECT_TRUE(result->second.empty());
    }
  }
}

TEST(CongressReceive, ClearsProposalBeforeEmission) {
  test::Rng rng(555);
  for (int i = 0; i < 300; ++i) {
    auto state = test::random_congress_state(rng);
    if (state.proposals.empty()) {
      continue;
    }
    const auto pid = state.proposals.begin()->first;
    const auto result = congress_receive(chain_at_slot(50), from(kOutsider), state,
                                         Msg{FinishProposal{pid}});
    if (result.has_value()) {
      EXPECT_FALSE(result->first.proposals.count(pid));
    }
  }
}

// --- the tally ---------------------------------------------------------------

// Independent route: the permille comparisons rewritten as ceiling divisions.
bool passed_oracle(std::uint64_t votes_for, std::uint64_t votes_total,
                   std::uint64_t member_count, const Rules& rules) {
  const auto ceil_div = [](std::uint64_t num, std::uint64_t den) {
    return (num + den - 1) / den;
  };
  const std::uint64_t quorum_needed = ceil_div(
      static_cast<std::uint64_t>(rules.min_vote_count_permille) * member_count, 1000);
  const std::uint64_t margin_needed = ceil_div(
      static_cast<std::uint64_t>(rules.margin_needed_permille) * votes_total, 1000);
  return votes_total >= quorum_needed && votes_for >= margin_needed;
}

Proposal proposal_with_votes(std::uint64_t votes_for, std::uint64_t votes_against) {
  Proposal p;
  std::uint64_t member = 1;
  for (std::uint64_t i = 0; i < votes_for; ++i) {
    p.votes[Address{member++}] = Vote::For;
  }
  for (std::uint64_t i = 0; i < votes_against; ++i) {
    p.votes[Address{member++}] = Vote::Against;
  }
  return p;
}

TEST(ProposalPassed, FrozenExamples) {
  // 2 of 3 members for, quorum 500 permille, margin 501 permille:
  // 2000 >= 1500 and 2000 >= 1002.
  EXPECT_TRUE(proposal_passed(proposal_with_votes(2, 0), Rules{500, 501, 0}, 3));
  // No votes and vacuous thresholds.
  EXPECT_TRUE(proposal_passed(proposal_with_votes(0, 0), Rules{0, 0, 0}, 3));
  // Full quorum demanded, only 2 of 3 voted: 2000 < 3000.
  EXPECT_FALSE(proposal_passed(proposal_with_votes(2, 0), Rules{1000, 0, 0}, 3));
}

TEST(ProposalPassed, MatchesCeilingOracleExhaustively) {
  const std::int64_t permilles[] = {0, 1, 250, 500, 501, 999, 1000};
  for (std::size_t member_count = 0; member_count <= 3; ++member_count) {
    for (std::uint64_t votes_for = 0; votes_for <= member_count; ++votes_for) {
      for (std::uint64_t against = 0; votes_for + against <= member_count; ++against) {
        for (std::int64_t quorum : permilles) {
          for (std::int64_t margin : permilles) {
            const Rules rules{quorum, margin, 0};
            EXPECT_EQ(
                proposal_passed(proposal_with_votes(votes_for, against), rules,
                                member_count),
                passed_oracle(votes_for, votes_for + against, member_count, rules))
                << "members=" << member_count << " for=" << votes_for
                << " against=" << against << " quorum=" << quorum
                << " margin=" << margin;
          }
        }
      }
    }
  }
}

// --- the buggy variant ---------------------------------------------------------

TEST(BuggyCongress, FinishKeepsTheProposal) {
  const auto state = state_with_passing_proposal(1, 0);
  const auto result = buggy_congress_receive(chain_at_slot(9), from(kOutsider), state,
                                             Msg{FinishProposal{1}});
  ASSERT_TRUE(result.has_value());
  EXPECT_TRUE(result->first.proposals.count(1));
  EXPECT_EQ(result->second.size(), 1u);
}

TEST(BuggyCongress, SecondFinishEmitsAgain) {
  const auto state = state_with_passing_proposal(1, 0);
  const auto once = buggy_congress_receive(chain_at_slot(9), from(kOutsider), state,
                                           Msg{FinishProposal{1}});
  ASSERT_TRUE(once.has_value());
  const auto twice = buggy_congress_receive(chain_at_slot(9), from(kOutsider),
                                            once->first, Msg{FinishProposal{1}});
  ASSERT_TRUE(twice.has_value());
  EXPECT_EQ(twice->second.size(), 1u);
  EXPECT_TRUE(twice->first.proposals.count(1));
}

TEST(BuggyCongress, AgreesWithCorrectCongressOnEverythingButFinish) {
  test::Rng rng(777);
  for (int i = 0; i < 500; ++i) {
    const auto state = test::random_congress_state(rng);
    const auto msg = test::random_congress_msg(rng);
    const Address sender{1 + rng() % 6};
    const auto chain = chain_at_slot(rng() % 12);
    const auto ctx = from(sender, Amount(static_cast<int>(rng() % 2)));

    const auto correct = congress_receive(chain, ctx, state, msg);
    const auto buggy = buggy_congress_receive(chain, ctx, state, msg);

    if (std::holds_alternative<FinishProposal>(msg)) {
      ASSERT_EQ(correct.has_value(), buggy.has_value());
      if (correct.has_value()) {
        EXPECT_EQ(correct->second, buggy->second);  // same emissions
      }
      continue;
    }
    ASSERT_EQ(correct.has_value(), buggy.has_value());
    if (correct.has_value()) {
      EXPECT_EQ(correct->first, buggy->first);
      EXPECT_EQ(correct->second, buggy->second);
    }
  }
}

// Each message variant may only touch the state components its contract
// describes.
TEST(CongressReceive, HandlerFrame) {
  test::Rng rng(808);
  for (int i = 0; i < 400; ++i) {
    const auto state = test::random_congress_state(rng);
    const auto msg = test::random_congress_msg(rng);
    const Address sender{1 + rng() % 6};
    const auto result =
        congress_receive(chain_at_slot(rng() % 12), from(sender), state, msg);
    if (!result.has_value()) {
      continue;
    }
    const CongressState& next = result->first;
    if (std::holds_alternative<TransferOwnership>(msg)) {
      EXPECT_EQ(next.rules, state.rules);
      EXPECT_EQ(next.members, state.members);
      EXPECT_EQ(next.proposals, state.proposals);
    } else if (std::holds_alternative<ChangeRules>(msg)) {
      EXPECT_EQ(next.owner, state.owner);
      EXPECT_EQ(next.members, state.members);
      EXPECT_EQ(next.proposals, state.proposals);
    } else if (std::holds_alternative<AddMember>(msg)) {
      EXPECT_EQ(next.owner, state.owner);
      EXPECT_EQ(next.rules, state.rules);
      EXPECT_EQ(next.proposals, state.proposals);
      EXPECT_EQ(next.members.size(), state.members.size() + 1);
    } else if (std::holds_alternative<RemoveMember>(msg)) {
      EXPECT_EQ(next.owner, state.owner);
      EXPECT_EQ(next.rules, state.rules);
      EXPECT_EQ(next.members.size(), state.members.size() - 1);
      EXPECT_EQ(next.proposals.size(), state.proposals.size());  // votes may shrink
    } else if (std::holds_alternative<CreateProposal>(msg)) {
      EXPECT_EQ(next.owner, state.owner);
      EXPECT_EQ(next.rules, state.rules);
      EXPECT_EQ(next.members, state.members);
      EXPECT_EQ(next.proposals.size(), state.proposals.size() + 1);
      EXPECT_EQ(next.next_proposal_id, state.next_proposal_id + 1);
    } else if (std::holds_alternative<FinishProposal>(msg)) {
      EXPECT_EQ(next.owner, state.owner);
      EXPECT_EQ(next.rules, state.rules);
      EXPECT_EQ(next.members, state.members);
      EXPECT_EQ(next.proposals.size(), state.proposals.size() - 1);
    } else {
      // Vote traffic: everything except the targeted proposal's votes is
      // untouched.
      EXPECT_EQ(next.owner, state.owner);
      EXPECT_EQ(next.rules, state.rules);
      EXPECT_EQ(next.members, state.members);
      EXPECT_EQ(next.next_proposal_id, state.next_proposal_id);
      ASSERT_EQ(next.proposals.size(), state.proposals.size());
      for (const auto& [pid, proposal] : state.proposals) {
        EXPECT_EQ(next.proposals.at(pid).actions, proposal.actions);
        EXPECT_EQ(next.proposals.at(pid).proposed_in_slot, proposal.proposed_in_slot);
      }
    }
  }
}

TEST(CongressState, VoteBookkeepingBounded) {
  test::Rng rng(606);
  auto state = fresh_state(Rules{0, 0, 0});
  state.members = {kOwner, kMember};
  state.proposals.emplace(1, Proposal{});
  state.next_proposal_id = 2;
  for (int i = 0; i < 200; ++i) {
    const auto msg = test::random_congress_msg(rng);
    const Address sender{1 + rng() % 4};
    const auto result = congress_receive(chain_at_slot(5 + i), from(sender), state, msg);
    if (result.has_value()) {
      state = result->first;
      for (const auto& [pid, proposal] : state.proposals) {
        EXPECT_LE(proposal.votes.size(), state.members.size());
        for (const auto& [voter, vote] : proposal.votes) {
          EXPECT_TRUE(state.members.count(voter));
        }
      }
    }
  }
}

// --- the attacker ---------------------------------------------------------------

TEST(Attacker, SpendsBudgetOnReentrantFinishCalls) {
  const ContractRef attacker = congress::attacker_contract();
  const AttackerState initial{3, kSelf, 1};
  const auto result = attacker->receive(
      chain_at_slot(1), ContractCallContext{kSelf, Address{kFirstContractAddress + 1},
                                            Amount(1)},
      serialize(initial), std::nullopt);
  ASSERT_TRUE(result.has_value());
  const auto state = deserialize<AttackerState>(result->new_state);
  ASSERT_TRUE(state.has_value());
  EXPECT_EQ(state->remaining_reentries, 2);
  ASSERT_EQ(result->actions.size(), 1u);
  const auto& call = std::get<CallBody>(result->actions[0]);
  EXPECT_EQ(call.to, kSelf);
  EXPECT_EQ(call.amount, Amount(0));
  EXPECT_EQ(deserialize<Msg>(call.message), Msg{FinishProposal{1}});
}

TEST(Attacker, ExhaustedBudgetStaysQuiet) {
  const ContractRef attacker = congress::attacker_contract();
  const auto result = attacker->receive(
      chain_at_slot(1), ContractCallContext{kSelf, Address{kFirstContractAddress + 1},
                                            Amount(1)},
      serialize(AttackerState{0, kSelf, 1}), std::nullopt);
  ASSERT_TRUE(result.has_value());
  EXPECT_TRUE(result->actions.empty());
  EXPECT_EQ(deserialize<AttackerState>(result->new_state)->remaining_reentries, 0);
}

TEST(Attacker, RejectsMessages) {
  const ContractRef attacker = congress::attacker_contract();
  const auto result = attacker->receive(
      chain_at_slot(1), ContractCallContext{kSelf, Address{kFirstContractAddress + 1},
                                            Amount(0)},
      serialize(AttackerState{3, kSelf, 1}), SerializedValue::unit());
  EXPECT_FALSE(result.has_value());
}

}  // namespace
}  // namespace chainsim::congress
