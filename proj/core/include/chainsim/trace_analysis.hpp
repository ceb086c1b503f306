#pragma once

#include "chainsim/execution.hpp"
#include "chainsim/result.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chainsim {

enum class TxKind { Transfer, Deploy, Call };

/// A transaction: the on-chain record of one evaluated action. Every
/// Evaluate step of a trace contributes exactly one Tx. Deployments count
/// as incoming to the deployed address; the message is kept for calls only.
struct Tx {
  Address from;
  Address to;
  Amount amount = 0;
  std::optional<SerializedValue> message;
  TxKind kind = TxKind::Transfer;

  bool operator==(const Tx&) const = default;
};

struct AnalysisError {
  std::optional<ReplayError> replay;  // set when the trace failed to replay
  std::string detail;
};

/// All transactions in trace order.
Result<std::vector<Tx>, AnalysisError> all_txs(const ChainTrace& trace);

/// Transactions sent by `addr`, in trace order. The trace must replay.
Result<std::vector<Tx>, AnalysisError> outgoing_txs(const ChainTrace& trace,
                                                    Address addr);

/// Transactions received by `addr`, in trace order. The trace must replay.
Result<std::vector<Tx>, AnalysisError> incoming_txs(const ChainTrace& trace,
                                                    Address addr);

/// Total number of actions inside CreateProposal messages among `txs`.
/// Messages that do not decode as a Congress message contribute nothing.
std::size_t num_acts_created_in_proposals(const std::vector<Tx>& txs);

struct InvariantVerdict {
  bool holds = true;
  std::size_t outgoing = 0;
  std::size_t created = 0;
  std::optional<std::size_t> failing_step;  // strengthened check only

  bool operator==(const InvariantVerdict&) const = default;
};

std::string verdict_to_json(const InvariantVerdict& verdict, int indent = -1);

/// The black-box Congress property: the Congress never sends more
/// transactions than actions were handed to it in CreateProposal messages.
/// Requires a trace that replays to an empty queue.
Result<InvariantVerdict, AnalysisError> check_congress_invariant(
    const ChainTrace& trace, Address addr);

/// The inductive form: outgoing transactions plus actions still stored in
/// live proposals plus queued Congress-origin actions never exceed the
/// created count, re-checked after every single step. `addr` must host
/// Congress code (correct or buggy) once deployed. Returns the first failing
/// step index if the bound ever breaks.
Result<InvariantVerdict, AnalysisError> check_strengthened_invariant(
    const ChainTrace& trace, Address addr);

}  // namespace chainsim
