#include "chainsim/amount.hpp"

#include <stdexcept>

namespace chainsim {

const Amount& amount_max() {
  static const Amount v = (Amount(1) << 127) - 1;
  return v;
}

const Amount& amount_min() {
  static const Amount v = -amount_max() - 1;
  return v;
}

bool amount_in_range(const Amount& a) {
  return a >= amount_min() && a <= amount_max();
}

namespace {

Amount require_in_range(Amount v) {
  if (!amount_in_range(v)) {
    throw std::overflow_error("amount arithmetic overflowed signed 128-bit range");
  }
  return v;
}

}  // namespace

Amount checked_add(const Amount& a, const Amount& b) {
  return require_in_range(a + b);
}

Amount checked_sub(const Amount& a, const Amount& b) {
  return require_in_range(a - b);
}

std::string amount_to_string(const Amount& a) {
  return a.str();
}

std::optional<Amount> amount_from_string(const std::string& text) {
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') {
    ++pos;
  }
  if (pos >= text.size()) {
    return std::nullopt;
  }
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      return std::nullopt;
    }
  }
  if (text[pos] == '0' && text.size() - pos > 1) {
    return std::nullopt;  // non-canonical leading zero
  }
  if (text == "-0") {
    return std::nullopt;
  }
  try {
    Amount v(text);
    if (!amount_in_range(v)) {
      return std::nullopt;
    }
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace chainsim
