#pragma once

// Internal helpers shared by the file-format translation units. Not installed;
// the public API exposes JSON as text so vendored headers stay out of it.

#include "chainsim/address.hpp"
#include "chainsim/amount.hpp"
#include "chainsim/execution.hpp"
#include "chainsim/registry.hpp"
#include "chainsim/serialized_value.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace chainsim::jsonio {

using json = nlohmann::json;

/// Thrown by the strict readers below; converted to ParseError at the
/// public API boundary.
struct ParseFailure {
  std::string message;
  std::string where;
};

[[noreturn]] void fail(const std::string& message, const std::string& path);

const json& member(const json& obj, const char* key, const std::string& path);

/// Strict-mode guard: every key in `obj` must appear in `allowed`.
void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path);

std::uint64_t read_u64(const json& v, const std::string& path);
Amount read_amount(const json& v, const std::string& path);
Address read_address(const json& v, const std::string& path);
bool read_bool(const json& v, const std::string& path);
std::string read_string(const json& v, const std::string& path);

json sv_to_json(const SerializedValue& v);
SerializedValue sv_from_json(const json& v, const std::string& path);

json action_to_json(const Action& action);
Action action_from_json(const json& v, const ContractRegistry& registry,
                        const std::string& path);

json header_to_json(const BlockHeader& header);
BlockHeader header_from_json(const json& v, const std::string& path);

json step_to_json(const ChainStep& step);
ChainStep step_from_json(const json& v, const ContractRegistry& registry,
                         const std::string& path);

}  // namespace chainsim::jsonio
