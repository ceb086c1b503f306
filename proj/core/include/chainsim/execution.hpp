#pragma once

#include "chainsim/action.hpp"
#include "chainsim/environment.hpp"
#include "chainsim/result.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace chainsim {

enum class EvalErrorCode {
  NegativeAmount,
  InsufficientBalance,
  NoContractAtAddress,
  ContractRejected,
};

struct EvalError {
  EvalErrorCode code;
  std::string detail;
};

const char* to_string(EvalErrorCode code);

enum class BlockErrorCode {
  Height,            // block_height != chain_height + 1
  Slot,              // slot not strictly increasing
  FinalizedHeight,   // finalized_height not in [env.finalized, height)
  Reward,            // negative reward
  Creator,           // creator is a contract address
  ActionOrigin,      // block injected a contract-origin action
};

struct BlockError {
  BlockErrorCode code;
  std::string detail;
};

const char* to_string(BlockErrorCode code);

/// The evaluated form of an action: what the engine actually did, including
/// the choices it made (the deployed address) and the follow-up actions the
/// executed contract requested. Transfers and deployments never spawn
/// follow-ups; every follow-up of a call originates from the callee.
struct ActionEvaluation {
  enum class Kind { Transfer, Deploy, Call };

  Kind kind = Kind::Transfer;
  Address from;
  Address to;  // recipient, callee, or deployed address
  Amount amount = 0;
  std::optional<SerializedValue> message;          // Call only; absent for a
                                                   // messageless transfer-call
  std::optional<Address> deployed_address;         // Deploy only
  std::vector<Action> new_actions;

  bool operator==(const ActionEvaluation&) const = default;
};

const char* to_string(ActionEvaluation::Kind kind);

/// One step of the chain relation. A trace is a step list replayable from
/// the genesis state.
struct BlockStep {
  BlockHeader header;
  std::vector<Action> added_actions;

  bool operator==(const BlockStep&) const = default;
};

struct EvaluateStep {
  ActionEvaluation eval;

  bool operator==(const EvaluateStep&) const = default;
};

/// Queue reordering: entry i of the new queue is old_queue[permutation[i]].
struct PermuteStep {
  std::vector<std::size_t> permutation;

  bool operator==(const PermuteStep&) const = default;
};

using ChainStep = std::variant<BlockStep, EvaluateStep, PermuteStep>;

struct ChainTrace {
  std::vector<ChainStep> steps;

  bool operator==(const ChainTrace&) const = default;
};

enum class StepErrorCode {
  QueueNotEmpty,       // block step on a non-empty queue
  QueueEmpty,          // evaluate step with nothing queued
  InvalidHeader,       // block header failed validation
  NonUserAction,       // block injected a contract-origin action
  EvalFailed,          // the queued action could not be evaluated
  EvalMismatch,        // recorded evaluation disagrees with re-evaluation
  InvalidPermutation,  // not a bijection on queue positions
};

struct StepError {
  StepErrorCode code;
  std::optional<BlockErrorCode> block_reason;  // set when InvalidHeader
  std::optional<EvalErrorCode> eval_reason;    // set when EvalFailed
  std::string detail;
};

const char* to_string(StepErrorCode code);

struct ReplayError {
  std::size_t step_index = 0;
  StepError error;
};

struct EvaluationOutcome {
  Environment env;
  ActionEvaluation evaluation;
};

/// Deterministic deploy address choice: the contract address space is
/// allocated densely, so the next free address is the base plus the number
/// of contracts deployed so far.
Address next_contract_address(const Environment& env);

/// Evaluates one action against an environment. `fresh_address` is consumed
/// only by deployments and must be an unused contract address (asserted).
///
/// Transfers to user addresses move money; transfers to contract addresses
/// are evaluated as calls with no message. Deployments run init on the
/// post-transfer environment and install the returned state. Calls run
/// receive on the stored state; each requested follow-up is stamped with the
/// callee as its origin.
Result<EvaluationOutcome, EvalError> evaluate_action(const Environment& env,
                                                     const Action& action,
                                                     Address fresh_address);

/// Header well-formedness against the current environment: height exactly
/// one up, slot strictly increasing, finalized height monotone and below the
/// new height, non-negative reward, user creator. Returns the first violated
/// condition.
std::optional<BlockError> validate_header(const Environment& env,
                                          const BlockHeader& header);

/// Block effects on the environment: counters move to the header's values
/// and the creator collects the reward. Does not touch the queue.
Environment apply_block_effects(const Environment& env, const BlockHeader& header);

/// The step relation. Block steps require an empty queue and user-origin
/// actions, and fill the queue. Evaluate steps consume the queue head,
/// re-evaluate it, require agreement with the recorded evaluation, and
/// prepend the follow-ups. Permute steps reorder the queue and touch
/// nothing else.
Result<ChainState, StepError> apply_step(const ChainState& state, const ChainStep& step);

/// Folds apply_step from genesis; success certifies the final state is
/// reachable. Fails at the first invalid step with its index.
Result<ChainState, ReplayError> replay_trace(const ChainTrace& trace);

}  // namespace chainsim
