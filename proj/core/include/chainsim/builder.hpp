#pragma once

#include "chainsim/execution.hpp"
#include "chainsim/result.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace chainsim {

/// How the drain loop schedules spawned actions. DepthFirst keeps them at
/// the queue front (a call finishes before its parent's remaining actions;
/// Ethereum-style). BreadthFirst rotates them to the back after each
/// evaluation, recorded as an explicit permute step so the trace stays valid
/// under the unchanged step rules (Tezos/Scilla-style).
enum class ExecutionOrder { DepthFirst, BreadthFirst };

const char* to_string(ExecutionOrder order);
std::optional<ExecutionOrder> execution_order_from_string(const std::string& text);

struct BuilderLimits {
  /// Upper bound on evaluations while draining one block. There is no gas in
  /// this model; the bound keeps non-terminating contract interactions from
  /// hanging the engine.
  std::size_t max_evaluations_per_block = 10000;
};

/// A failed drain: some queued action could not be evaluated, or the step
/// limit was hit. The block that caused it is discarded wholesale.
struct ExecutionFailed {
  std::optional<EvalError> eval;  // absent when the step limit was exceeded
  bool step_limit_exceeded = false;
  std::size_t evaluation_index = 0;  // evaluations completed before failure
  std::string detail;
};

using AddBlockError = std::variant<BlockError, ExecutionFailed>;

std::string describe(const AddBlockError& error);

/// Executable chain: current state plus the trace that proves it reachable.
/// Builders are immutable values; add_block returns the extended builder and
/// never mutates (or partially commits to) the receiver.
class ChainBuilder {
 public:
  explicit ChainBuilder(ExecutionOrder order, BuilderLimits limits = {});

  const ChainState& state() const { return state_; }
  const Environment& env() const { return state_.env; }
  const ChainTrace& trace() const { return trace_; }
  ExecutionOrder order() const { return order_; }
  std::uint64_t next_contract_ordinal() const { return next_contract_ordinal_; }

  /// Adds a block and drains the queue to empty, appending every step to the
  /// trace. Atomic: any failure leaves the receiver's state the result.
  Result<ChainBuilder, AddBlockError> add_block(const BlockHeader& header,
                                                std::vector<Action> actions) const;

  /// Header for the next block with default progression: height + 1, next
  /// slot, unchanged finalized height.
  BlockHeader next_header(Address creator, Amount reward = 0) const;

 private:
  ExecutionOrder order_;
  BuilderLimits limits_;
  ChainState state_;
  ChainTrace trace_;
  std::uint64_t next_contract_ordinal_ = 0;
};

}  // namespace chainsim
