#pragma once

#include "chainsim/address.hpp"
#include "chainsim/amount.hpp"
#include "chainsim/serialized_value.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

namespace chainsim {

/// Codec<T> lowers typed values into SerializedValue and back. decode is the
/// partial inverse of encode: decode(encode(v)) == v for every value of a
/// registered type, and decode fails (nullopt) on any shape mismatch.
///
/// Composite scheme: tuples/records become right-nested pairs, variants
/// become right-nested binary sums in declaration order, containers become
/// lists. SerializedValue itself has the identity codec, which lets values
/// carry pre-serialized payloads (e.g. call messages inside proposals).
template <typename T>
struct Codec;

template <typename T>
SerializedValue serialize(const T& value) {
  return Codec<T>::encode(value);
}

template <typename T>
std::optional<T> deserialize(const SerializedValue& value) {
  return Codec<T>::decode(value);
}

template <>
struct Codec<std::monostate> {
  static SerializedValue encode(const std::monostate&) { return SerializedValue::unit(); }
  static std::optional<std::monostate> decode(const SerializedValue& v) {
    if (v.tag() != SerializedValue::Tag::Unit) {
      return std::nullopt;
    }
    return std::monostate{};
  }
};

template <>
struct Codec<bool> {
  static SerializedValue encode(bool b) { return SerializedValue::boolean(b); }
  static std::optional<bool> decode(const SerializedValue& v) {
    if (v.tag() != SerializedValue::Tag::Bool) {
      return std::nullopt;
    }
    return v.as_bool();
  }
};

template <>
struct Codec<Amount> {
  static SerializedValue encode(const Amount& a) { return SerializedValue::integer(a); }
  static std::optional<Amount> decode(const SerializedValue& v) {
    if (v.tag() != SerializedValue::Tag::Int) {
      return std::nullopt;
    }
    return v.as_int();
  }
};

template <>
struct Codec<std::int64_t> {
  static SerializedValue encode(std::int64_t n) { return SerializedValue::integer(Amount(n)); }
  static std::optional<std::int64_t> decode(const SerializedValue& v) {
    if (v.tag() != SerializedValue::Tag::Int) {
      return std::nullopt;
    }
    const Amount& a = v.as_int();
    if (a < Amount(std::numeric_limits<std::int64_t>::min()) ||
        a > Amount(std::numeric_limits<std::int64_t>::max())) {
      return std::nullopt;
    }
    return static_cast<std::int64_t>(a);
  }
};

template <>
struct Codec<std::uint64_t> {
  static SerializedValue encode(std::uint64_t n) { return SerializedValue::integer(Amount(n)); }
  static std::optional<std::uint64_t> decode(const SerializedValue& v) {
    if (v.tag() != SerializedValue::Tag::Int) {
      return std::nullopt;
    }
    const Amount& a = v.as_int();
    if (a < 0 || a > Amount(std::numeric_limits<std::uint64_t>::max())) {
      return std::nullopt;
    }
    return static_cast<std::uint64_t>(a);
  }
};

template <>
struct Codec<Address> {
  static SerializedValue encode(Address a) { return SerializedValue::address(a); }
  static std::optional<Address> decode(const SerializedValue& v) {
    if (v.tag() != SerializedValue::Tag::Address) {
      return std::nullopt;
    }
    return v.as_address();
  }
};

template <>
struct Codec<SerializedValue> {
  static SerializedValue encode(const SerializedValue& v) { return v; }
  static std::optional<SerializedValue> decode(const SerializedValue& v) { return v; }
};

template <typename A, typename B>
struct Codec<std::pair<A, B>> {
  static SerializedValue encode(const std::pair<A, B>& p) {
    return SerializedValue::pair(Codec<A>::encode(p.first), Codec<B>::encode(p.second));
  }
  static std::optional<std::pair<A, B>> decode(const SerializedValue& v) {
    if (v.tag() != SerializedValue::Tag::Pair) {
      return std::nullopt;
    }
    auto a = Codec<A>::decode(v.first());
    if (!a) {
      return std::nullopt;
    }
    auto b = Codec<B>::decode(v.second());
    if (!b) {
      return std::nullopt;
    }
    return std::pair<A, B>{std::move(*a), std::move(*b)};
  }
};

template <typename T>
struct Codec<std::vector<T>> {
  static SerializedValue encode(const std::vector<T>& items) {
    std::vector<SerializedValue> out;
    out.reserve(items.size());
    for (const auto& item : items) {
      out.push_back(Codec<T>::encode(item));
    }
    return SerializedValue::list(std::move(out));
  }
  static std::optional<std::vector<T>> decode(const SerializedValue& v) {
    if (v.tag() != SerializedValue::Tag::List) {
      return std::nullopt;
    }
    std::vector<T> out;
    out.reserve(v.items().size());
    for (const auto& item : v.items()) {
      auto decoded = Codec<T>::decode(item);
      if (!decoded) {
        return std::nullopt;
      }
      out.push_back(std::move(*decoded));
    }
    return out;
  }
};

/// Maps encode as a key-sorted list of pairs; decode rejects duplicate keys.
template <typename K, typename V>
struct Codec<std::map<K, V>> {
  static SerializedValue encode(const std::map<K, V>& entries) {
    std::vector<SerializedValue> out;
    out.reserve(entries.size());
    for (const auto& [key, value] : entries) {
      out.push_back(Codec<std::pair<K, V>>::encode({key, value}));
    }
    return SerializedValue::list(std::move(out));
  }
  static std::optional<std::map<K, V>> decode(const SerializedValue& v) {
    auto entries = Codec<std::vector<std::pair<K, V>>>::decode(v);
    if (!entries) {
      return std::nullopt;
    }
    std::map<K, V> out;
    for (auto& [key, value] : *entries) {
      if (!out.emplace(std::move(key), std::move(value)).second) {
        return std::nullopt;
      }
    }
    return out;
  }
};

template <typename T>
struct Codec<std::set<T>> {
  static SerializedValue encode(const std::set<T>& entries) {
    std::vector<SerializedValue> out;
    out.reserve(entries.size());
    for (const auto& entry : entries) {
      out.push_back(Codec<T>::encode(entry));
    }
    return SerializedValue::list(std::move(out));
  }
  static std::optional<std::set<T>> decode(const SerializedValue& v) {
    auto entries = Codec<std::vector<T>>::decode(v);
    if (!entries) {
      return std::nullopt;
    }
    std::set<T> out;
    for (auto& entry : *entries) {
      if (!out.insert(std::move(entry)).second) {
        return std::nullopt;
      }
    }
    return out;
  }
};

namespace codec_detail {

/// Right-nested binary sum injection: alternative i of n gets i leading
/// branch-1 wrappers, then a branch-0 wrapper unless it is the last one.
inline SerializedValue wrap_alternative(std::size_t index, std::size_t count,
                                        SerializedValue payload) {
  SerializedValue v = std::move(payload);
  if (index + 1 < count) {
    v = SerializedValue::sum(0, std::move(v));
  }
  for (std::size_t i = 0; i < index; ++i) {
    v = SerializedValue::sum(1, std::move(v));
  }
  return v;
}

template <typename Variant, std::size_t I>
SerializedValue encode_variant_at(const Variant& v) {
  constexpr std::size_t n = std::variant_size_v<Variant>;
  if constexpr (I + 1 < n) {
    if (v.index() != I) {
      return encode_variant_at<Variant, I + 1>(v);
    }
  }
  using Alt = std::variant_alternative_t<I, Variant>;
  return wrap_alternative(I, n, Codec<Alt>::encode(std::get<I>(v)));
}

template <typename Variant, std::size_t I>
std::optional<Variant> decode_variant_at(const SerializedValue& v) {
  constexpr std::size_t n = std::variant_size_v<Variant>;
  using Alt = std::variant_alternative_t<I, Variant>;
  if constexpr (I + 1 == n) {
    auto payload = Codec<Alt>::decode(v);
    if (!payload) {
      return std::nullopt;
    }
    return Variant{std::in_place_index<I>, std::move(*payload)};
  } else {
    if (v.tag() != SerializedValue::Tag::Sum) {
      return std::nullopt;
    }
    if (v.sum_branch() == 0) {
      auto payload = Codec<Alt>::decode(v.sum_payload());
      if (!payload) {
        return std::nullopt;
      }
      return Variant{std::in_place_index<I>, std::move(*payload)};
    }
    return decode_variant_at<Variant, I + 1>(v.sum_payload());
  }
}

}  // namespace codec_detail

template <typename... Ts>
struct Codec<std::variant<Ts...>> {
  static_assert(sizeof...(Ts) >= 1);
  static SerializedValue encode(const std::variant<Ts...>& v) {
    return codec_detail::encode_variant_at<std::variant<Ts...>, 0>(v);
  }
  static std::optional<std::variant<Ts...>> decode(const SerializedValue& v) {
    return codec_detail::decode_variant_at<std::variant<Ts...>, 0>(v);
  }
};

namespace codec_detail {

template <typename Tuple, std::size_t I>
SerializedValue encode_tuple_from(const Tuple& t) {
  constexpr std::size_t n = std::tuple_size_v<Tuple>;
  using Elem = std::tuple_element_t<I, Tuple>;
  if constexpr (I + 1 == n) {
    return Codec<Elem>::encode(std::get<I>(t));
  } else {
    return SerializedValue::pair(Codec<Elem>::encode(std::get<I>(t)),
                                 encode_tuple_from<Tuple, I + 1>(t));
  }
}

template <typename Tuple, std::size_t I>
bool decode_tuple_from(const SerializedValue& v, Tuple& out) {
  constexpr std::size_t n = std::tuple_size_v<Tuple>;
  using Elem = std::tuple_element_t<I, Tuple>;
  if constexpr (I + 1 == n) {
    auto elem = Codec<Elem>::decode(v);
    if (!elem) {
      return false;
    }
    std::get<I>(out) = std::move(*elem);
    return true;
  } else {
    if (v.tag() != SerializedValue::Tag::Pair) {
      return false;
    }
    auto elem = Codec<Elem>::decode(v.first());
    if (!elem) {
      return false;
    }
    std::get<I>(out) = std::move(*elem);
    return decode_tuple_from<Tuple, I + 1>(v.second(), out);
  }
}

}  // namespace codec_detail

/// Records encode as right-nested pairs of their fields in declaration order.
template <typename... Ts>
struct Codec<std::tuple<Ts...>> {
  static SerializedValue encode(const std::tuple<Ts...>& t) {
    if constexpr (sizeof...(Ts) == 0) {
      return SerializedValue::unit();
    } else {
      return codec_detail::encode_tuple_from<std::tuple<Ts...>, 0>(t);
    }
  }
  static std::optional<std::tuple<Ts...>> decode(const SerializedValue& v) {
    if constexpr (sizeof...(Ts) == 0) {
      if (v.tag() != SerializedValue::Tag::Unit) {
        return std::nullopt;
      }
      return std::tuple<>{};
    } else {
      std::tuple<Ts...> out;
      if (!codec_detail::decode_tuple_from<std::tuple<Ts...>, 0>(v, out)) {
        return std::nullopt;
      }
      return out;
    }
  }
};

/// Base for codecs of empty marker structs (unit-payload variant cases).
template <typename T>
struct UnitStructCodec {
  static SerializedValue encode(const T&) { return SerializedValue::unit(); }
  static std::optional<T> decode(const SerializedValue& v) {
    if (v.tag() != SerializedValue::Tag::Unit) {
      return std::nullopt;
    }
    return T{};
  }
};

}  // namespace chainsim
