#pragma once

#include "chainsim/address.hpp"
#include "chainsim/amount.hpp"
#include "chainsim/serialized_value.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace chainsim {

struct DynamicContract;

/// Contracts are immutable once built; actions and registries share them.
using ContractRef = std::shared_ptr<const DynamicContract>;

struct TransferBody {
  Address to;
  Amount amount = 0;

  bool operator==(const TransferBody&) const = default;
};

struct CallBody {
  Address to;
  Amount amount = 0;
  SerializedValue message;

  bool operator==(const CallBody&) const = default;
};

struct DeployBody {
  Amount amount = 0;
  ContractRef contract;
  SerializedValue setup;

  // Contract code identity is the registry name; see contract.hpp.
  bool operator==(const DeployBody& other) const;
};

/// A requested interaction with the chain. Deploy carries no target address:
/// the engine picks the address of a newly deployed contract.
using ActionBody = std::variant<TransferBody, CallBody, DeployBody>;

Amount action_body_amount(const ActionBody& body);

/// An ActionBody paired with its originating address. This is the unit the
/// execution queue holds; a block injects user-originated ones and contract
/// execution appends contract-originated ones.
struct Action {
  Address from;
  ActionBody body;

  bool operator==(const Action&) const = default;
};

Action make_transfer(Address from, Address to, Amount amount);
Action make_call(Address from, Address to, Amount amount, SerializedValue message);
Action make_deploy(Address from, Amount amount, ContractRef contract, SerializedValue setup);

}  // namespace chainsim
