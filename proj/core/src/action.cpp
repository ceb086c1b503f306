#include "chainsim/action.hpp"

#include "chainsim/contract.hpp"

namespace chainsim {

Amount action_body_amount(const ActionBody& body) {
  return std::visit([](const auto& b) { return b.amount; }, body);
}

Action make_transfer(Address from, Address to, Amount amount) {
  return Action{from, TransferBody{to, std::move(amount)}};
}

Action make_call(Address from, Address to, Amount amount, SerializedValue message) {
  return Action{from, CallBody{to, std::move(amount), std::move(message)}};
}

Action make_deploy(Address from, Amount amount, ContractRef contract,
                   SerializedValue setup) {
  return Action{from, DeployBody{std::move(amount), std::move(contract), std::move(setup)}};
}

}  // namespace chainsim
