#include "chainsim/serialized_value.hpp"

#include "chainsim/assert.hpp"
#include "json_support.hpp"

#include <algorithm>
#include <utility>

namespace chainsim {

SerializedValue SerializedValue::unit() {
  return SerializedValue{};
}

SerializedValue SerializedValue::boolean(bool b) {
  SerializedValue v;
  v.tag_ = Tag::Bool;
  v.bool_ = b;
  return v;
}

SerializedValue SerializedValue::integer(Amount value) {
  CHAINSIM_ASSERT(amount_in_range(value), "integer payload outside 128-bit range");
  SerializedValue v;
  v.tag_ = Tag::Int;
  v.int_ = std::move(value);
  return v;
}

SerializedValue SerializedValue::address(chainsim::Address a) {
  SerializedValue v;
  v.tag_ = Tag::Address;
  v.address_ = a;
  return v;
}

SerializedValue SerializedValue::pair(SerializedValue first, SerializedValue second) {
  SerializedValue v;
  v.tag_ = Tag::Pair;
  v.children_.reserve(2);
  v.children_.push_back(std::move(first));
  v.children_.push_back(std::move(second));
  return v;
}

SerializedValue SerializedValue::sum(std::uint8_t branch, SerializedValue payload) {
  CHAINSIM_ASSERT(branch <= 1, "sum branch index must be 0 or 1");
  SerializedValue v;
  v.tag_ = Tag::Sum;
  v.branch_ = branch;
  v.children_.push_back(std::move(payload));
  return v;
}

SerializedValue SerializedValue::list(std::vector<SerializedValue> items) {
  SerializedValue v;
  v.tag_ = Tag::List;
  v.children_ = std::move(items);
  return v;
}

bool SerializedValue::as_bool() const {
  CHAINSIM_ASSERT(tag_ == Tag::Bool, "not a bool value");
  return bool_;
}

const Amount& SerializedValue::as_int() const {
  CHAINSIM_ASSERT(tag_ == Tag::Int, "not an int value");
  return int_;
}

Address SerializedValue::as_address() const {
  CHAINSIM_ASSERT(tag_ == Tag::Address, "not an address value");
  return address_;
}

const SerializedValue& SerializedValue::first() const {
  CHAINSIM_ASSERT(tag_ == Tag::Pair, "not a pair value");
  return children_[0];
}

const SerializedValue& SerializedValue::second() const {
  CHAINSIM_ASSERT(tag_ == Tag::Pair, "not a pair value");
  return children_[1];
}

std::uint8_t SerializedValue::sum_branch() const {
  CHAINSIM_ASSERT(tag_ == Tag::Sum, "not a sum value");
  return branch_;
}

const SerializedValue& SerializedValue::sum_payload() const {
  CHAINSIM_ASSERT(tag_ == Tag::Sum, "not a sum value");
  return children_[0];
}

const std::vector<SerializedValue>& SerializedValue::items() const {
  CHAINSIM_ASSERT(tag_ == Tag::List, "not a list value");
  return children_;
}

std::size_t SerializedValue::depth() const {
  std::size_t child_max = 0;
  for (const auto& child : children_) {
    child_max = std::max(child_max, child.depth());
  }
  return 1 + child_max;
}

std::string SerializedValue::to_json_text(int indent) const {
  return jsonio::sv_to_json(*this).dump(indent);
}

std::string SerializedValue::describe() const {
  return to_json_text();
}

bool parse_serialized_value(const std::string& json_text, SerializedValue& out,
                            ParseError& err) {
  try {
    auto parsed = nlohmann::json::parse(json_text);
    out = jsonio::sv_from_json(parsed, "");
    return true;
  } catch (const jsonio::ParseFailure& failure) {
    err = ParseError{failure.message, failure.where};
    return false;
  } catch (const nlohmann::json::parse_error& e) {
    err = ParseError{e.what(), "byte " + std::to_string(e.byte)};
    return false;
  }
}

}  // namespace chainsim
