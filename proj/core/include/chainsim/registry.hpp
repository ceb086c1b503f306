#pragma once

#include "chainsim/contract.hpp"

#include <map>
#include <string>
#include <vector>

namespace chainsim {

/// Name-to-code table. Scenario and trace files cannot carry code, so every
/// deployable contract is looked up here by its registry name.
class ContractRegistry {
 public:
  void add(ContractRef contract);
  ContractRef find(const std::string& name) const;  // nullptr when absent
  std::vector<std::string> names() const;

 private:
  std::map<std::string, ContractRef> contracts_;
};

/// The built-in contracts: congress, buggy_congress, attacker, counter.
const ContractRegistry& builtin_registry();

}  // namespace chainsim
