#include "chainsim/builder.hpp"
#include "chainsim/codec.hpp"
#include "chainsim/congress.hpp"
#include "chainsim/scenario.hpp"
#include "chainsim/trace_io.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace chainsim;

const Address kUser{1};
const Address kCongress{kFirstContractAddress};

void BM_TransferBlock(benchmark::State& state) {
  const std::size_t transfers = static_cast<std::size_t>(state.range(0));
  ChainBuilder genesis(ExecutionOrder::DepthFirst);
  auto funded = genesis.add_block(genesis.next_header(kUser, Amount(1000000)), {});
  std::vector<Action> actions;
  for (std::size_t i = 0; i < transfers; ++i) {
    actions.push_back(make_transfer(kUser, Address{2 + i % 5}, Amount(1)));
  }
  for (auto _ : state) {
    auto next = funded.value().add_block(funded.value().next_header(kUser), actions);
    benchmark::DoNotOptimize(next.ok());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * transfers));
}
BENCHMARK(BM_TransferBlock)->Arg(16)->Arg(64)->Arg(256);

void BM_CongressProposalLifecycle(benchmark::State& state) {
  for (auto _ : state) {
    ChainBuilder builder(ExecutionOrder::DepthFirst);
    auto b = builder.add_block(
        builder.next_header(kUser, Amount(100)),
        {make_deploy(kUser, Amount(10), congress::congress_contract(),
                     serialize(congress::Rules{500, 500, 0})),
         make_call(kUser, kCongress, Amount(0),
                   serialize(congress::Msg{congress::AddMember{kUser}})),
         make_call(kUser, kCongress, Amount(0),
                   serialize(congress::Msg{congress::CreateProposal{
                       {congress::CongressTransfer{Address{2}, Amount(1)}}}})),
         make_call(kUser, kCongress, Amount(0),
                   serialize(congress::Msg{congress::VoteForProposal{1}})),
         make_call(kUser, kCongress, Amount(0),
                   serialize(congress::Msg{congress::FinishProposal{1}}))});
    benchmark::DoNotOptimize(b.ok());
  }
}
BENCHMARK(BM_CongressProposalLifecycle);

void BM_ExploitReplay(benchmark::State& state) {
  const auto outcome = run_scenario(exploit_scenario(congress::kBuggyCongressName),
                                    ExecutionOrder::DepthFirst);
  const ChainTrace& trace = outcome.builder.trace();
  for (auto _ : state) {
    auto replayed = replay_trace(trace);
    benchmark::DoNotOptimize(replayed.ok());
  }
  state.SetItemsProcessed(
      static_cast<std::int64_t>(state.iterations() * trace.steps.size()));
}
BENCHMARK(BM_ExploitReplay);

void BM_CongressStateRoundtrip(benchmark::State& state) {
  congress::CongressState value;
  value.owner = kUser;
  value.rules = congress::Rules{500, 500, 2};
  for (std::uint64_t m = 1; m <= 16; ++m) {
    value.members.insert(Address{m});
  }
  for (congress::ProposalId id = 1; id <= 8; ++id) {
    congress::Proposal proposal;
    for (int i = 0; i < 4; ++i) {
      proposal.actions.push_back(congress::CongressTransfer{Address{2}, Amount(i)});
    }
    proposal.votes[{Address{id}}] = congress::Vote::For;
    value.proposals.emplace(id, std::move(proposal));
  }
  value.next_proposal_id = 9;
  for (auto _ : state) {
    auto decoded = deserialize<congress::CongressState>(serialize(value));
    benchmark::DoNotOptimize(decoded.has_value());
  }
}
BENCHMARK(BM_CongressStateRoundtrip);

void BM_TraceSerialization(benchmark::State& state) {
  const auto outcome = run_scenario(exploit_scenario(congress::kBuggyCongressName),
                                    ExecutionOrder::BreadthFirst);
  for (auto _ : state) {
    auto text = trace_to_json(outcome.builder.trace());
    benchmark::DoNotOptimize(text.size());
  }
}
BENCHMARK(BM_TraceSerialization);

}  // namespace

BENCHMARK_MAIN();
