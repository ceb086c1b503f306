#include "chainsim/registry.hpp"

#include "chainsim/assert.hpp"
#include "chainsim/congress.hpp"
#include "chainsim/counter.hpp"

namespace chainsim {

void ContractRegistry::add(ContractRef contract) {
  CHAINSIM_ASSERT(contract != nullptr, "cannot register null contract");
  CHAINSIM_ASSERT(!contract->name.empty(), "registry contracts need a name");
  auto [it, inserted] = contracts_.emplace(contract->name, std::move(contract));
  CHAINSIM_ASSERT(inserted, "duplicate registry name " + it->first);
}

ContractRef ContractRegistry::find(const std::string& name) const {
  auto it = contracts_.find(name);
  return it == contracts_.end() ? nullptr : it->second;
}

std::vector<std::string> ContractRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(contracts_.size());
  for (const auto& [name, contract] : contracts_) {
    out.push_back(name);
  }
  return out;
}

const ContractRegistry& builtin_registry() {
  static const ContractRegistry registry = [] {
    ContractRegistry r;
    r.add(congress::congress_contract());
    r.add(congress::buggy_congress_contract());
    r.add(congress::attacker_contract());
    r.add(counter::counter_contract());
    return r;
  }();
  return registry;
}

}  // namespace chainsim
