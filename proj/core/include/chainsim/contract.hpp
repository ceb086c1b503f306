#pragma once

#include "chainsim/action.hpp"
#include "chainsim/chain.hpp"
#include "chainsim/codec.hpp"
#include "chainsim/serialized_value.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chainsim {

/// Result of a successful receive step: the contract's next state plus the
/// interactions it wants scheduled, in order.
struct ReceiveResult {
  SerializedValue new_state;
  std::vector<ActionBody> actions;
};

/// The engine-facing contract representation. Both functions are pure: they
/// may inspect the chain view but never mutate anything, and returning
/// nullopt rejects the deployment or call.
struct DynamicContract {
  /// Registry identity. Deploy actions in scenario and trace files refer to
  /// contracts by this name, and environment equivalence compares it.
  std::string name;

  std::function<std::optional<SerializedValue>(
      const Chain&, const ContractCallContext&, const SerializedValue& setup)>
      init;

  std::function<std::optional<ReceiveResult>(
      const Chain&, const ContractCallContext&, const SerializedValue& state,
      const std::optional<SerializedValue>& message)>
      receive;
};

inline bool DeployBody::operator==(const DeployBody& other) const {
  const std::string& lhs = contract ? contract->name : std::string();
  const std::string& rhs = other.contract ? other.contract->name : std::string();
  return amount == other.amount && setup == other.setup && lhs == rhs;
}

/// Statically typed contract: what contract authors write. Setup, State and
/// Msg must each have a Codec.
template <typename Setup, typename State, typename Msg>
struct TypedContract {
  using TypedReceiveResult = std::pair<State, std::vector<ActionBody>>;

  std::function<std::optional<State>(const Chain&, const ContractCallContext&,
                                     const Setup&)>
      init;
  std::function<std::optional<TypedReceiveResult>(
      const Chain&, const ContractCallContext&, const State&,
      const std::optional<Msg>&)>
      receive;
};

/// Bridges a typed contract to the dynamic interface: inputs are decoded,
/// outputs re-encoded. Any decode failure of setup, state, or message makes
/// the wrapped function reject the call; the typed logic is never reached
/// with ill-shaped data.
template <typename Setup, typename State, typename Msg>
ContractRef wrap_typed_contract(std::string name,
                                TypedContract<Setup, State, Msg> contract) {
  DynamicContract wrapped;
  wrapped.name = std::move(name);
  wrapped.init = [inner = contract.init](
                     const Chain& chain, const ContractCallContext& ctx,
                     const SerializedValue& setup) -> std::optional<SerializedValue> {
    auto typed_setup = deserialize<Setup>(setup);
    if (!typed_setup) {
      return std::nullopt;
    }
    auto state = inner(chain, ctx, *typed_setup);
    if (!state) {
      return std::nullopt;
    }
    return serialize(*state);
  };
  wrapped.receive = [inner = contract.receive](
                        const Chain& chain, const ContractCallContext& ctx,
                        const SerializedValue& state,
                        const std::optional<SerializedValue>& message)
      -> std::optional<ReceiveResult> {
    auto typed_state = deserialize<State>(state);
    if (!typed_state) {
      return std::nullopt;
    }
    std::optional<Msg> typed_message;
    if (message.has_value()) {
      auto decoded = deserialize<Msg>(*message);
      if (!decoded) {
        return std::nullopt;
      }
      typed_message = std::move(*decoded);
    }
    auto result = inner(chain, ctx, *typed_state, typed_message);
    if (!result) {
      return std::nullopt;
    }
    return ReceiveResult{serialize(result->first), std::move(result->second)};
  };
  return std::make_shared<const DynamicContract>(std::move(wrapped));
}

}  // namespace chainsim
