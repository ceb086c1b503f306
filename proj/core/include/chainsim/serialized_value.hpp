#pragma once

#include "chainsim/address.hpp"
#include "chainsim/amount.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace chainsim {

/// Tagged dynamic value. Contract states and messages of arbitrary typed
/// shape are lowered into this one closed representation so the execution
/// engine can store and route them without knowing the contract's types.
///
/// Structurally finite by construction (children are owned), equality is
/// structural. Non-active payload fields always hold their default value,
/// so the defaulted comparison is canonical.
class SerializedValue {
 public:
  enum class Tag : std::uint8_t { Unit, Bool, Int, Address, Pair, Sum, List };

  SerializedValue() = default;  // Unit

  static SerializedValue unit();
  static SerializedValue boolean(bool b);
  static SerializedValue integer(Amount v);
  static SerializedValue address(chainsim::Address a);
  static SerializedValue pair(SerializedValue first, SerializedValue second);
  static SerializedValue sum(std::uint8_t branch, SerializedValue payload);
  static SerializedValue list(std::vector<SerializedValue> items);

  Tag tag() const { return tag_; }

  bool as_bool() const;
  const Amount& as_int() const;
  chainsim::Address as_address() const;
  const SerializedValue& first() const;
  const SerializedValue& second() const;
  std::uint8_t sum_branch() const;
  const SerializedValue& sum_payload() const;
  const std::vector<SerializedValue>& items() const;

  bool operator==(const SerializedValue&) const = default;

  /// Nesting depth: scalars are 1, composites are 1 + max over children.
  std::size_t depth() const;

  /// Canonical JSON text form used inside scenario and trace files.
  std::string to_json_text(int indent = -1) const;

  std::string describe() const;  // short single-line form for diagnostics

 private:
  Tag tag_ = Tag::Unit;
  bool bool_ = false;
  Amount int_ = 0;
  chainsim::Address address_{};
  std::uint8_t branch_ = 0;
  std::vector<SerializedValue> children_;
};

struct ParseError {
  std::string message;
  std::string where;  // JSON pointer-style path or byte offset
};

/// Strict parse of the canonical JSON form. Unknown keys, missing keys and
/// malformed integer strings are rejected.
bool parse_serialized_value(const std::string& json_text, SerializedValue& out,
                            ParseError& err);

}  // namespace chainsim
