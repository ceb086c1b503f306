#include "chainsim/counter.hpp"

namespace chainsim::counter {

namespace {

std::optional<Amount> counter_init(const Chain&, const ContractCallContext&,
                                   const Amount& setup) {
  return setup;
}

std::optional<std::pair<Amount, std::vector<ActionBody>>> counter_receive(
    const Chain&, const ContractCallContext&, const Amount& state,
    const std::optional<CounterMsg>& msg) {
  if (!msg.has_value()) {
    return std::pair{state, std::vector<ActionBody>{}};  // accept plain funds
  }
  if (std::holds_alternative<Increment>(*msg)) {
    return std::pair{checked_add(state, Amount(1)), std::vector<ActionBody>{}};
  }
  const auto& add = std::get<Add>(*msg);
  return std::pair{checked_add(state, add.delta), std::vector<ActionBody>{}};
}

}  // namespace

ContractRef counter_contract() {
  static const ContractRef contract = wrap_typed_contract<Amount, Amount, CounterMsg>(
      kCounterName, {counter_init, counter_receive});
  return contract;
}

}  // namespace chainsim::counter
