#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace chainsim {

/// Currency amount. Signed 128-bit integer semantics: every engine-side
/// arithmetic step goes through the checked helpers below, which throw
/// std::overflow_error instead of wrapping.
using Amount = boost::multiprecision::checked_int128_t;

const Amount& amount_min();
const Amount& amount_max();

bool amount_in_range(const Amount& a);

Amount checked_add(const Amount& a, const Amount& b);
Amount checked_sub(const Amount& a, const Amount& b);

std::string amount_to_string(const Amount& a);

/// Parses a canonical decimal rendering (optional leading '-', digits,
/// no leading zeros). Rejects anything outside the signed 128-bit range.
std::optional<Amount> amount_from_string(const std::string& text);

}  // namespace chainsim
