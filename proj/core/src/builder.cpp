#include "chainsim/builder.hpp"

#include "chainsim/assert.hpp"

namespace chainsim {

const char* to_string(ExecutionOrder order) {
  return order == ExecutionOrder::DepthFirst ? "dfs" : "bfs";
}

std::optional<ExecutionOrder> execution_order_from_string(const std::string& text) {
  if (text == "dfs") {
    return ExecutionOrder::DepthFirst;
  }
  if (text == "bfs") {
    return ExecutionOrder::BreadthFirst;
  }
  return std::nullopt;
}

std::string describe(const AddBlockError& error) {
  if (const auto* block = std::get_if<BlockError>(&error)) {
    return std::string("block rejected: ") + to_string(block->code) + " (" +
           block->detail + ")";
  }
  const auto& failed = std::get<ExecutionFailed>(error);
  return "execution failed: " + failed.detail;
}

ChainBuilder::ChainBuilder(ExecutionOrder order, BuilderLimits limits)
    : order_(order), limits_(limits) {}

Result<ChainBuilder, AddBlockError> ChainBuilder::add_block(
    const BlockHeader& header, std::vector<Action> actions) const {
  CHAINSIM_ASSERT(state_.queue.empty(), "builder queue must be empty between blocks");

  ChainBuilder next = *this;

  BlockStep block_step{header, std::move(actions)};
  auto after_block = apply_step(next.state_, block_step);
  if (!after_block) {
    const StepError& step_error = after_block.error();
    if (step_error.code == StepErrorCode::InvalidHeader) {
      return AddBlockError{BlockError{*step_error.block_reason, step_error.detail}};
    }
    CHAINSIM_ASSERT(step_error.code == StepErrorCode::NonUserAction,
                    "unexpected block step failure");
    return AddBlockError{BlockError{BlockErrorCode::ActionOrigin, step_error.detail}};
  }
  next.state_ = std::move(after_block).value();
  next.trace_.steps.push_back(std::move(block_step));

  std::size_t evaluations = 0;
  while (!next.state_.queue.empty()) {
    if (evaluations >= limits_.max_evaluations_per_block) {
      return AddBlockError{ExecutionFailed{
          std::nullopt, true, evaluations,
          "step limit of " + std::to_string(limits_.max_evaluations_per_block) +
              " evaluations exceeded while draining the block"}};
    }
    const Action& head = next.state_.queue.front();
    auto outcome =
        evaluate_action(next.state_.env, head, next_contract_address(next.state_.env));
    if (!outcome) {
      EvalError eval_error = std::move(outcome).error();
      std::string detail = "action " + std::to_string(evaluations) + ": " +
                           to_string(eval_error.code) + " (" + eval_error.detail + ")";
      return AddBlockError{
          ExecutionFailed{std::move(eval_error), false, evaluations, detail}};
    }

    EvaluateStep evaluate_step{outcome.value().evaluation};
    auto applied = apply_step(next.state_, evaluate_step);
    CHAINSIM_ASSERT(applied.ok(), "self-recorded evaluation must replay");
    if (std::holds_alternative<DeployBody>(head.body)) {
      ++next.next_contract_ordinal_;
    }
    next.state_ = std::move(applied).value();
    const std::size_t spawned = evaluate_step.eval.new_actions.size();
    next.trace_.steps.push_back(std::move(evaluate_step));
    ++evaluations;

    if (order_ == ExecutionOrder::BreadthFirst && spawned > 0) {
      // Rotate the freshly spawned actions behind the remainder of the queue.
      const std::size_t n = next.state_.queue.size();
      PermuteStep permute;
      permute.permutation.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        permute.permutation[i] = (spawned + i) % n;
      }
      auto permuted = apply_step(next.state_, permute);
      CHAINSIM_ASSERT(permuted.ok(), "rotation must be a valid permutation");
      next.state_ = std::move(permuted).value();
      next.trace_.steps.push_back(std::move(permute));
    }
  }

  return next;
}

BlockHeader ChainBuilder::next_header(Address creator, Amount reward) const {
  const Chain& chain = state_.env.chain;
  BlockHeader header;
  header.block_height = chain.chain_height + 1;
  header.slot = chain.current_slot + 1;
  header.finalized_height = chain.finalized_height;
  header.creator = creator;
  header.reward = std::move(reward);
  return header;
}

}  // namespace chainsim
