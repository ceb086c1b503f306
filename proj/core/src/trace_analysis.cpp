#include "chainsim/trace_analysis.hpp"

#include "chainsim/codec.hpp"
#include "chainsim/congress.hpp"
#include "chainsim/contract.hpp"

#include <json.hpp>

namespace chainsim {

namespace {

TxKind to_tx_kind(ActionEvaluation::Kind kind) {
  switch (kind) {
    case ActionEvaluation::Kind::Transfer: return TxKind::Transfer;
    case ActionEvaluation::Kind::Deploy: return TxKind::Deploy;
    case ActionEvaluation::Kind::Call: return TxKind::Call;
  }
  return TxKind::Transfer;
}

Tx to_tx(const ActionEvaluation& eval) {
  Tx tx;
  tx.from = eval.from;
  tx.to = eval.to;
  tx.amount = eval.amount;
  tx.kind = to_tx_kind(eval.kind);
  if (eval.kind == ActionEvaluation::Kind::Call) {
    tx.message = eval.message;
  }
  return tx;
}

std::size_t created_in(const std::optional<SerializedValue>& message) {
  if (!message.has_value()) {
    return 0;
  }
  auto msg = deserialize<congress::Msg>(*message);
  if (!msg) {
    return 0;
  }
  if (const auto* create = std::get_if<congress::CreateProposal>(&*msg)) {
    return create->actions.size();
  }
  return 0;
}

AnalysisError replay_failure(ReplayError error) {
  std::string detail = "trace invalid at step " + std::to_string(error.step_index) +
                       ": " + to_string(error.error.code);
  return AnalysisError{std::move(error), std::move(detail)};
}

}  // namespace

Result<std::vector<Tx>, AnalysisError> all_txs(const ChainTrace& trace) {
  auto replayed = replay_trace(trace);
  if (!replayed) {
    return replay_failure(std::move(replayed).error());
  }
  std::vector<Tx> txs;
  for (const ChainStep& step : trace.steps) {
    if (const auto* evaluate = std::get_if<EvaluateStep>(&step)) {
      txs.push_back(to_tx(evaluate->eval));
    }
  }
  return txs;
}

Result<std::vector<Tx>, AnalysisError> outgoing_txs(const ChainTrace& trace,
                                                    Address addr) {
  auto txs = all_txs(trace);
  if (!txs) {
    return std::move(txs).error();
  }
  std::vector<Tx> out;
  for (Tx& tx : txs.value()) {
    if (tx.from == addr) {
      out.push_back(std::move(tx));
    }
  }
  return out;
}

Result<std::vector<Tx>, AnalysisError> incoming_txs(const ChainTrace& trace,
                                                    Address addr) {
  auto txs = all_txs(trace);
  if (!txs) {
    return std::move(txs).error();
  }
  std::vector<Tx> in;
  for (Tx& tx : txs.value()) {
    if (tx.to == addr) {
      in.push_back(std::move(tx));
    }
  }
  return in;
}

std::size_t num_acts_created_in_proposals(const std::vector<Tx>& txs) {
  std::size_t count = 0;
  for (const Tx& tx : txs) {
    count += created_in(tx.message);
  }
  return count;
}

std::string verdict_to_json(const InvariantVerdict& verdict, int indent) {
  nlohmann::json out{
      {"holds", verdict.holds},
      {"outgoing", verdict.outgoing},
      {"created", verdict.created},
      {"failing_step", nullptr},
  };
  if (verdict.failing_step.has_value()) {
    out["failing_step"] = *verdict.failing_step;
  }
  return out.dump(indent);
}

Result<InvariantVerdict, AnalysisError> check_congress_invariant(
    const ChainTrace& trace, Address addr) {
  auto replayed = replay_trace(trace);
  if (!replayed) {
    return replay_failure(std::move(replayed).error());
  }
  if (!replayed.value().queue.empty()) {
    return AnalysisError{std::nullopt,
                         "trace ends with a non-empty queue; the invariant is "
                         "stated for fully drained states"};
  }
  InvariantVerdict verdict;
  for (const ChainStep& step : trace.steps) {
    const auto* evaluate = std::get_if<EvaluateStep>(&step);
    if (evaluate == nullptr) {
      continue;
    }
    const ActionEvaluation& eval = evaluate->eval;
    if (eval.from == addr) {
      ++verdict.outgoing;
    }
    if (eval.to == addr && eval.kind == ActionEvaluation::Kind::Call) {
      verdict.created += created_in(eval.message);
    }
  }
  verdict.holds = verdict.outgoing <= verdict.created;
  return verdict;
}

Result<InvariantVerdict, AnalysisError> check_strengthened_invariant(
    const ChainTrace& trace, Address addr) {
  if (!is_contract_address(addr)) {
    return AnalysisError{std::nullopt,
                         "address " + address_to_string(addr) +
                             " is a user address, not a deployed Congress"};
  }
  ChainState state;
  InvariantVerdict verdict;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    auto next = apply_step(state, trace.steps[i]);
    if (!next) {
      return replay_failure(ReplayError{i, std::move(next).error()});
    }
    state = std::move(next).value();

    if (const auto* evaluate = std::get_if<EvaluateStep>(&trace.steps[i])) {
      const ActionEvaluation& eval = evaluate->eval;
      if (eval.from == addr) {
        ++verdict.outgoing;
      }
      if (eval.to == addr && eval.kind == ActionEvaluation::Kind::Call) {
        verdict.created += created_in(eval.message);
      }
    }

    std::size_t stored = 0;
    auto contract = state.env.contracts.find(addr);
    if (contract != state.env.contracts.end()) {
      const std::string& name = contract->second->name;
      if (name != congress::kCongressName && name != congress::kBuggyCongressName) {
        return AnalysisError{std::nullopt,
                             "address " + address_to_string(addr) +
                                 " hosts \"" + name + "\", not a Congress"};
      }
      auto congress_state =
          deserialize<congress::CongressState>(state.env.contract_states.at(addr));
      if (!congress_state) {
        return AnalysisError{std::nullopt, "stored Congress state failed to decode"};
      }
      stored = congress::stored_action_count(*congress_state);
    }

    std::size_t queued = 0;
    for (const Action& action : state.queue) {
      if (action.from == addr) {
        ++queued;
      }
    }

    if (verdict.outgoing + stored + queued > verdict.created) {
      verdict.holds = false;
      verdict.failing_step = i;
      return verdict;
    }
  }
  verdict.holds = true;
  return verdict;
}

}  // namespace chainsim
