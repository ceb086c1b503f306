#include "chainsim/execution.hpp"

#include "chainsim/assert.hpp"
#include "chainsim/contract.hpp"

#include <algorithm>

namespace chainsim {

const char* to_string(EvalErrorCode code) {
  switch (code) {
    case EvalErrorCode::NegativeAmount: return "negative amount";
    case EvalErrorCode::InsufficientBalance: return "insufficient balance";
    case EvalErrorCode::NoContractAtAddress: return "no contract at address";
    case EvalErrorCode::ContractRejected: return "contract rejected the call";
  }
  return "unknown";
}

const char* to_string(BlockErrorCode code) {
  switch (code) {
    case BlockErrorCode::Height: return "wrong block height";
    case BlockErrorCode::Slot: return "slot not increasing";
    case BlockErrorCode::FinalizedHeight: return "bad finalized height";
    case BlockErrorCode::Reward: return "negative reward";
    case BlockErrorCode::Creator: return "creator is a contract";
    case BlockErrorCode::ActionOrigin: return "contract-origin action in block";
  }
  return "unknown";
}

const char* to_string(ActionEvaluation::Kind kind) {
  switch (kind) {
    case ActionEvaluation::Kind::Transfer: return "transfer";
    case ActionEvaluation::Kind::Deploy: return "deploy";
    case ActionEvaluation::Kind::Call: return "call";
  }
  return "unknown";
}

const char* to_string(StepErrorCode code) {
  switch (code) {
    case StepErrorCode::QueueNotEmpty: return "queue not empty";
    case StepErrorCode::QueueEmpty: return "queue empty";
    case StepErrorCode::InvalidHeader: return "invalid header";
    case StepErrorCode::NonUserAction: return "non-user action in block";
    case StepErrorCode::EvalFailed: return "evaluation failed";
    case StepErrorCode::EvalMismatch: return "evaluation mismatch";
    case StepErrorCode::InvalidPermutation: return "invalid permutation";
  }
  return "unknown";
}

Address next_contract_address(const Environment& env) {
  return Address{kFirstContractAddress + env.contracts.size()};
}

namespace {

/// Shared path for calls and for transfers whose recipient is a contract.
Result<EvaluationOutcome, EvalError> evaluate_contract_call(
    const Environment& env, Address from, Address to, const Amount& amount,
    std::optional<SerializedValue> message) {
  auto it = env.contracts.find(to);
  if (it == env.contracts.end()) {
    return EvalError{EvalErrorCode::NoContractAtAddress,
                     "no contract deployed at " + address_to_string(to)};
  }
  const ContractRef& contract = it->second;
  Environment paid = transfer_balance(from, to, amount, env);
  ContractCallContext ctx{from, to, amount};
  const SerializedValue& state = paid.contract_states.at(to);
  auto result = contract->receive(paid.chain, ctx, state, message);
  if (!result) {
    return EvalError{EvalErrorCode::ContractRejected,
                     "receive rejected call to " + address_to_string(to)};
  }
  Environment updated = set_contract_state(to, result->new_state, paid);
  ActionEvaluation eval;
  eval.kind = ActionEvaluation::Kind::Call;
  eval.from = from;
  eval.to = to;
  eval.amount = amount;
  eval.message = std::move(message);
  eval.new_actions.reserve(result->actions.size());
  for (auto& body : result->actions) {
    eval.new_actions.push_back(Action{to, std::move(body)});
  }
  return EvaluationOutcome{std::move(updated), std::move(eval)};
}

}  // namespace

Result<EvaluationOutcome, EvalError> evaluate_action(const Environment& env,
                                                     const Action& action,
                                                     Address fresh_address) {
  const Amount amount = action_body_amount(action.body);
  if (amount < 0) {
    return EvalError{EvalErrorCode::NegativeAmount,
                     "action carries negative amount " + amount_to_string(amount)};
  }
  if (amount > env.chain.balance(action.from)) {
    return EvalError{EvalErrorCode::InsufficientBalance,
                     address_to_string(action.from) + " cannot cover " +
                         amount_to_string(amount)};
  }

  if (const auto* transfer = std::get_if<TransferBody>(&action.body)) {
    if (is_contract_address(transfer->to)) {
      // Messageless transfer into contract code: the receive hook runs with
      // no message.
      return evaluate_contract_call(env, action.from, transfer->to, amount,
                                    std::nullopt);
    }
    Environment updated = transfer_balance(action.from, transfer->to, amount, env);
    ActionEvaluation eval;
    eval.kind = ActionEvaluation::Kind::Transfer;
    eval.from = action.from;
    eval.to = transfer->to;
    eval.amount = amount;
    return EvaluationOutcome{std::move(updated), std::move(eval)};
  }

  if (const auto* call = std::get_if<CallBody>(&action.body)) {
    return evaluate_contract_call(env, action.from, call->to, amount, call->message);
  }

  const auto& deploy = std::get<DeployBody>(action.body);
  CHAINSIM_ASSERT(is_contract_address(fresh_address),
                  "deploy target must be a contract address");
  CHAINSIM_ASSERT(env.contracts.find(fresh_address) == env.contracts.end(),
                  "deploy target address already in use");
  CHAINSIM_ASSERT(deploy.contract != nullptr, "deploy without contract code");
  Environment paid = transfer_balance(action.from, fresh_address, amount, env);
  ContractCallContext ctx{action.from, fresh_address, amount};
  auto state = deploy.contract->init(paid.chain, ctx, deploy.setup);
  if (!state) {
    return EvalError{EvalErrorCode::ContractRejected,
                     "init rejected deployment of " + deploy.contract->name};
  }
  Environment updated =
      register_contract(fresh_address, deploy.contract, std::move(*state), paid);
  ActionEvaluation eval;
  eval.kind = ActionEvaluation::Kind::Deploy;
  eval.from = action.from;
  eval.to = fresh_address;
  eval.amount = amount;
  eval.deployed_address = fresh_address;
  return EvaluationOutcome{std::move(updated), std::move(eval)};
}

std::optional<BlockError> validate_header(const Environment& env,
                                          const BlockHeader& header) {
  if (header.block_height != env.chain.chain_height + 1) {
    return BlockError{BlockErrorCode::Height,
                      "expected height " + std::to_string(env.chain.chain_height + 1) +
                          ", got " + std::to_string(header.block_height)};
  }
  if (header.slot <= env.chain.current_slot) {
    return BlockError{BlockErrorCode::Slot,
                      "slot must exceed " + std::to_string(env.chain.current_slot)};
  }
  if (header.finalized_height < env.chain.finalized_height ||
      header.finalized_height >= header.block_height) {
    return BlockError{BlockErrorCode::FinalizedHeight,
                      "finalized height " + std::to_string(header.finalized_height) +
                          " outside valid range"};
  }
  if (header.reward < 0) {
    return BlockError{BlockErrorCode::Reward, "reward must be non-negative"};
  }
  if (is_contract_address(header.creator)) {
    return BlockError{BlockErrorCode::Creator,
                      "block creator " + address_to_string(header.creator) +
                          " is a contract address"};
  }
  return std::nullopt;
}

Environment apply_block_effects(const Environment& env, const BlockHeader& header) {
  Environment out = env;
  out.chain.chain_height = header.block_height;
  out.chain.current_slot = header.slot;
  out.chain.finalized_height = header.finalized_height;
  if (header.reward != 0) {
    out.chain.balances[header.creator] =
        checked_add(out.chain.balance(header.creator), header.reward);
  }
  return out;
}

namespace {

bool is_permutation_of_size(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) {
    return false;
  }
  std::vector<bool> seen(n, false);
  for (std::size_t index : perm) {
    if (index >= n || seen[index]) {
      return false;
    }
    seen[index] = true;
  }
  return true;
}

Result<ChainState, StepError> apply_block_step(const ChainState& state,
                                               const BlockStep& step) {
  if (!state.queue.empty()) {
    return StepError{StepErrorCode::QueueNotEmpty, std::nullopt, std::nullopt,
                     "blocks can only be added once the queue has drained"};
  }
  if (auto block_error = validate_header(state.env, step.header)) {
    return StepError{StepErrorCode::InvalidHeader, block_error->code, std::nullopt,
                     block_error->detail};
  }
  for (const Action& action : step.added_actions) {
    if (is_contract_address(action.from)) {
      return StepError{StepErrorCode::NonUserAction, std::nullopt, std::nullopt,
                       "block action from contract " + address_to_string(action.from)};
    }
  }
  ChainState out;
  out.env = apply_block_effects(state.env, step.header);
  out.queue = step.added_actions;
  return out;
}

Result<ChainState, StepError> apply_evaluate_step(const ChainState& state,
                                                  const EvaluateStep& step) {
  if (state.queue.empty()) {
    return StepError{StepErrorCode::QueueEmpty, std::nullopt, std::nullopt,
                     "no action queued for evaluation"};
  }
  const Action& head = state.queue.front();
  auto outcome = evaluate_action(state.env, head, next_contract_address(state.env));
  if (!outcome) {
    EvalError e = std::move(outcome).error();
    return StepError{StepErrorCode::EvalFailed, std::nullopt, e.code, e.detail};
  }
  if (outcome.value().evaluation != step.eval) {
    return StepError{StepErrorCode::EvalMismatch, std::nullopt, std::nullopt,
                     "recorded evaluation does not match the queued action"};
  }
  ChainState out;
  out.env = std::move(outcome.value().env);
  const auto& spawned = step.eval.new_actions;
  out.queue.reserve(spawned.size() + state.queue.size() - 1);
  out.queue.insert(out.queue.end(), spawned.begin(), spawned.end());
  out.queue.insert(out.queue.end(), state.queue.begin() + 1, state.queue.end());
  return out;
}

Result<ChainState, StepError> apply_permute_step(const ChainState& state,
                                                 const PermuteStep& step) {
  if (!is_permutation_of_size(step.permutation, state.queue.size())) {
    return StepError{StepErrorCode::InvalidPermutation, std::nullopt, std::nullopt,
                     "permutation is not a bijection on queue positions"};
  }
  ChainState out;
  out.env = state.env;
  out.queue.reserve(state.queue.size());
  for (std::size_t index : step.permutation) {
    out.queue.push_back(state.queue[index]);
  }
  return out;
}

}  // namespace

Result<ChainState, StepError> apply_step(const ChainState& state,
                                         const ChainStep& step) {
  if (const auto* block = std::get_if<BlockStep>(&step)) {
    return apply_block_step(state, *block);
  }
  if (const auto* evaluate = std::get_if<EvaluateStep>(&step)) {
    return apply_evaluate_step(state, *evaluate);
  }
  return apply_permute_step(state, std::get<PermuteStep>(step));
}

Result<ChainState, ReplayError> replay_trace(const ChainTrace& trace) {
  ChainState state;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    auto next = apply_step(state, trace.steps[i]);
    if (!next) {
      return ReplayError{i, std::move(next).error()};
    }
    state = std::move(next).value();
  }
  return state;
}

}  // namespace chainsim
