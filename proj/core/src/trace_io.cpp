#include "chainsim/trace_io.hpp"

#include "json_support.hpp"

namespace chainsim {

std::string trace_to_json(const ChainTrace& trace, int indent) {
  jsonio::json out = jsonio::json::array();
  for (const ChainStep& step : trace.steps) {
    out.push_back(jsonio::step_to_json(step));
  }
  return out.dump(indent);
}

Result<ChainTrace, ParseError> trace_from_json(const std::string& json_text,
                                               const ContractRegistry& registry) {
  try {
    auto parsed = nlohmann::json::parse(json_text);
    if (!parsed.is_array()) {
      return ParseError{"trace file must be a JSON array of steps", ""};
    }
    ChainTrace trace;
    trace.steps.reserve(parsed.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      trace.steps.push_back(
          jsonio::step_from_json(parsed[i], registry, "/" + std::to_string(i)));
    }
    return trace;
  } catch (const jsonio::ParseFailure& failure) {
    return ParseError{failure.message, failure.where};
  } catch (const nlohmann::json::parse_error& e) {
    return ParseError{e.what(), "byte " + std::to_string(e.byte)};
  }
}

}  // namespace chainsim
