#pragma once

#include "chainsim/codec.hpp"
#include "chainsim/contract.hpp"

#include <variant>

namespace chainsim::counter {

/// Minimal stateful contract used to exercise the engine: an integer that
/// can be incremented or shifted by a delta.
struct Increment {
  bool operator==(const Increment&) const = default;
};

struct Add {
  Amount delta = 0;
  bool operator==(const Add&) const = default;
};

using CounterMsg = std::variant<Increment, Add>;

inline constexpr const char* kCounterName = "counter";

ContractRef counter_contract();

}  // namespace chainsim::counter

namespace chainsim {

template <>
struct Codec<counter::Increment> : UnitStructCodec<counter::Increment> {};

template <>
struct Codec<counter::Add> {
  static SerializedValue encode(const counter::Add& m) { return serialize(m.delta); }
  static std::optional<counter::Add> decode(const SerializedValue& v) {
    auto delta = deserialize<Amount>(v);
    if (!delta) {
      return std::nullopt;
    }
    return counter::Add{std::move(*delta)};
  }
};

}  // namespace chainsim
