#pragma once

#include "chainsim/assert.hpp"

#include <utility>
#include <variant>

namespace chainsim {

/// Value-or-error carrier used on the engine's fallible paths. Kept minimal
/// on purpose; T and E are always distinct types here.
template <typename T, typename E>
class Result {
 public:
  Result(T value) : data_(std::in_place_index<0>, std::move(value)) {}
  Result(E error) : data_(std::in_place_index<1>, std::move(error)) {}

  bool ok() const { return data_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    CHAINSIM_ASSERT(ok(), "accessed value of an error result");
    return std::get<0>(data_);
  }
  T& value() & {
    CHAINSIM_ASSERT(ok(), "accessed value of an error result");
    return std::get<0>(data_);
  }
  T&& value() && {
    CHAINSIM_ASSERT(ok(), "accessed value of an error result");
    return std::get<0>(std::move(data_));
  }

  const E& error() const& {
    CHAINSIM_ASSERT(!ok(), "accessed error of a success result");
    return std::get<1>(data_);
  }
  E&& error() && {
    CHAINSIM_ASSERT(!ok(), "accessed error of a success result");
    return std::get<1>(std::move(data_));
  }

 private:
  std::variant<T, E> data_;
};

}  // namespace chainsim
