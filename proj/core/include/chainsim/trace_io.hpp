#pragma once

#include "chainsim/execution.hpp"
#include "chainsim/registry.hpp"
#include "chainsim/result.hpp"
#include "chainsim/serialized_value.hpp"

#include <string>

namespace chainsim {

/// Canonical trace file: a JSON array of step records. Serialization is
/// deterministic (sorted keys, fixed layout), so equal traces produce
/// byte-identical files.
std::string trace_to_json(const ChainTrace& trace, int indent = 1);

/// Strict parse of the canonical form. Deploy bodies name contracts by
/// registry name and are resolved against `registry`.
Result<ChainTrace, ParseError> trace_from_json(const std::string& json_text,
                                               const ContractRegistry& registry);

}  // namespace chainsim
