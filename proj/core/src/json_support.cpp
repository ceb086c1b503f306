#include "json_support.hpp"

#include "chainsim/contract.hpp"

namespace chainsim::jsonio {

void fail(const std::string& message, const std::string& path) {
  throw ParseFailure{message, path};
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) {
    fail("expected an object", path);
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(std::string("missing key \"") + key + "\"", path);
  }
  return *it;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path) {
  if (!obj.is_object()) {
    fail("expected an object", path);
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail("unknown key \"" + it.key() + "\"", path);
    }
  }
}

std::uint64_t read_u64(const json& v, const std::string& path) {
  if (!v.is_string()) {
    fail("expected a decimal string", path);
  }
  auto parsed = address_from_string(v.get<std::string>());
  if (!parsed) {
    fail("malformed unsigned decimal \"" + v.get<std::string>() + "\"", path);
  }
  return parsed->value;
}

Amount read_amount(const json& v, const std::string& path) {
  if (!v.is_string()) {
    fail("expected a decimal string", path);
  }
  auto parsed = amount_from_string(v.get<std::string>());
  if (!parsed) {
    fail("malformed amount \"" + v.get<std::string>() + "\"", path);
  }
  return *parsed;
}

Address read_address(const json& v, const std::string& path) {
  return Address{read_u64(v, path)};
}

bool read_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) {
    fail("expected a boolean", path);
  }
  return v.get<bool>();
}

std::string read_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    fail("expected a string", path);
  }
  return v.get<std::string>();
}

json sv_to_json(const SerializedValue& v) {
  switch (v.tag()) {
    case SerializedValue::Tag::Unit:
      return json{{"tag", "unit"}};
    case SerializedValue::Tag::Bool:
      return json{{"tag", "bool"}, {"value", v.as_bool()}};
    case SerializedValue::Tag::Int:
      return json{{"tag", "int"}, {"value", amount_to_string(v.as_int())}};
    case SerializedValue::Tag::Address:
      return json{{"tag", "address"}, {"value", address_to_string(v.as_address())}};
    case SerializedValue::Tag::Pair:
      return json{{"tag", "pair"},
                  {"first", sv_to_json(v.first())},
                  {"second", sv_to_json(v.second())}};
    case SerializedValue::Tag::Sum:
      return json{{"tag", "sum"},
                  {"branch", v.sum_branch()},
                  {"value", sv_to_json(v.sum_payload())}};
    case SerializedValue::Tag::List: {
      json items = json::array();
      for (const auto& item : v.items()) {
        items.push_back(sv_to_json(item));
      }
      return json{{"tag", "list"}, {"items", std::move(items)}};
    }
  }
  fail("corrupt serialized value tag", "");
}

SerializedValue sv_from_json(const json& v, const std::string& path) {
  const std::string tag = read_string(member(v, "tag", path), path + "/tag");
  if (tag == "unit") {
    reject_unknown_keys(v, {"tag"}, path);
    return SerializedValue::unit();
  }
  if (tag == "bool") {
    reject_unknown_keys(v, {"tag", "value"}, path);
    return SerializedValue::boolean(read_bool(member(v, "value", path), path + "/value"));
  }
  if (tag == "int") {
    reject_unknown_keys(v, {"tag", "value"}, path);
    return SerializedValue::integer(read_amount(member(v, "value", path), path + "/value"));
  }
  if (tag == "address") {
    reject_unknown_keys(v, {"tag", "value"}, path);
    return SerializedValue::address(read_address(member(v, "value", path), path + "/value"));
  }
  if (tag == "pair") {
    reject_unknown_keys(v, {"tag", "first", "second"}, path);
    return SerializedValue::pair(sv_from_json(member(v, "first", path), path + "/first"),
                                 sv_from_json(member(v, "second", path), path + "/second"));
  }
  if (tag == "sum") {
    reject_unknown_keys(v, {"tag", "branch", "value"}, path);
    const json& branch = member(v, "branch", path);
    if (!branch.is_number_unsigned() || branch.get<std::uint64_t>() > 1) {
      fail("sum branch must be 0 or 1", path + "/branch");
    }
    return SerializedValue::sum(static_cast<std::uint8_t>(branch.get<std::uint64_t>()),
                                sv_from_json(member(v, "value", path), path + "/value"));
  }
  if (tag == "list") {
    reject_unknown_keys(v, {"tag", "items"}, path);
    const json& items = member(v, "items", path);
    if (!items.is_array()) {
      fail("list items must be an array", path + "/items");
    }
    std::vector<SerializedValue> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      out.push_back(sv_from_json(items[i], path + "/items/" + std::to_string(i)));
    }
    return SerializedValue::list(std::move(out));
  }
  fail("unknown tag \"" + tag + "\"", path + "/tag");
}

namespace {

json body_to_json(const ActionBody& body) {
  if (const auto* transfer = std::get_if<TransferBody>(&body)) {
    return json{{"type", "transfer"},
                {"to", address_to_string(transfer->to)},
                {"amount", amount_to_string(transfer->amount)}};
  }
  if (const auto* call = std::get_if<CallBody>(&body)) {
    return json{{"type", "call"},
                {"to", address_to_string(call->to)},
                {"amount", amount_to_string(call->amount)},
                {"msg", sv_to_json(call->message)}};
  }
  const auto& deploy = std::get<DeployBody>(body);
  return json{{"type", "deploy"},
              {"amount", amount_to_string(deploy.amount)},
              {"contract", deploy.contract ? deploy.contract->name : ""},
              {"setup", sv_to_json(deploy.setup)}};
}

ActionBody body_from_json(const json& v, const ContractRegistry& registry,
                          const std::string& path) {
  const std::string type = read_string(member(v, "type", path), path + "/type");
  if (type == "transfer") {
    reject_unknown_keys(v, {"type", "to", "amount"}, path);
    return TransferBody{read_address(member(v, "to", path), path + "/to"),
                        read_amount(member(v, "amount", path), path + "/amount")};
  }
  if (type == "call") {
    reject_unknown_keys(v, {"type", "to", "amount", "msg"}, path);
    return CallBody{read_address(member(v, "to", path), path + "/to"),
                    read_amount(member(v, "amount", path), path + "/amount"),
                    sv_from_json(member(v, "msg", path), path + "/msg")};
  }
  if (type == "deploy") {
    reject_unknown_keys(v, {"type", "amount", "contract", "setup"}, path);
    const std::string name =
        read_string(member(v, "contract", path), path + "/contract");
    ContractRef contract = registry.find(name);
    if (!contract) {
      fail("unknown contract registry name \"" + name + "\"", path + "/contract");
    }
    return DeployBody{read_amount(member(v, "amount", path), path + "/amount"),
                      std::move(contract),
                      sv_from_json(member(v, "setup", path), path + "/setup")};
  }
  fail("unknown action body type \"" + type + "\"", path + "/type");
}

}  // namespace

json action_to_json(const Action& action) {
  return json{{"from", address_to_string(action.from)},
              {"body", body_to_json(action.body)}};
}

Action action_from_json(const json& v, const ContractRegistry& registry,
                        const std::string& path) {
  reject_unknown_keys(v, {"from", "body"}, path);
  return Action{read_address(member(v, "from", path), path + "/from"),
                body_from_json(member(v, "body", path), registry, path + "/body")};
}

json header_to_json(const BlockHeader& header) {
  return json{{"block_height", std::to_string(header.block_height)},
              {"slot", std::to_string(header.slot)},
              {"finalized_height", std::to_string(header.finalized_height)},
              {"creator", address_to_string(header.creator)},
              {"reward", amount_to_string(header.reward)}};
}

BlockHeader header_from_json(const json& v, const std::string& path) {
  reject_unknown_keys(v, {"block_height", "slot", "finalized_height", "creator", "reward"},
                      path);
  BlockHeader header;
  header.block_height = read_u64(member(v, "block_height", path), path + "/block_height");
  header.slot = read_u64(member(v, "slot", path), path + "/slot");
  header.finalized_height =
      read_u64(member(v, "finalized_height", path), path + "/finalized_height");
  header.creator = read_address(member(v, "creator", path), path + "/creator");
  header.reward = read_amount(member(v, "reward", path), path + "/reward");
  return header;
}

namespace {

json actions_to_json(const std::vector<Action>& actions) {
  json out = json::array();
  for (const Action& action : actions) {
    out.push_back(action_to_json(action));
  }
  return out;
}

std::vector<Action> actions_from_json(const json& v, const ContractRegistry& registry,
                                      const std::string& path) {
  if (!v.is_array()) {
    fail("expected an array of actions", path);
  }
  std::vector<Action> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(action_from_json(v[i], registry, path + "/" + std::to_string(i)));
  }
  return out;
}

json eval_to_json(const ActionEvaluation& eval) {
  json out{{"kind", to_string(eval.kind)},
           {"from", address_to_string(eval.from)},
           {"to", address_to_string(eval.to)},
           {"amount", amount_to_string(eval.amount)},
           {"message", nullptr},
           {"deployed_address", nullptr},
           {"new_actions", actions_to_json(eval.new_actions)}};
  if (eval.message.has_value()) {
    out["message"] = sv_to_json(*eval.message);
  }
  if (eval.deployed_address.has_value()) {
    out["deployed_address"] = address_to_string(*eval.deployed_address);
  }
  return out;
}

ActionEvaluation eval_from_json(const json& v, const ContractRegistry& registry,
                                const std::string& path) {
  reject_unknown_keys(
      v, {"kind", "from", "to", "amount", "message", "deployed_address", "new_actions"},
      path);
  ActionEvaluation eval;
  const std::string kind = read_string(member(v, "kind", path), path + "/kind");
  if (kind == "transfer") {
    eval.kind = ActionEvaluation::Kind::Transfer;
  } else if (kind == "deploy") {
    eval.kind = ActionEvaluation::Kind::Deploy;
  } else if (kind == "call") {
    eval.kind = ActionEvaluation::Kind::Call;
  } else {
    fail("unknown evaluation kind \"" + kind + "\"", path + "/kind");
  }
  eval.from = read_address(member(v, "from", path), path + "/from");
  eval.to = read_address(member(v, "to", path), path + "/to");
  eval.amount = read_amount(member(v, "amount", path), path + "/amount");
  const json& message = member(v, "message", path);
  if (!message.is_null()) {
    eval.message = sv_from_json(message, path + "/message");
  }
  const json& deployed = member(v, "deployed_address", path);
  if (!deployed.is_null()) {
    eval.deployed_address = read_address(deployed, path + "/deployed_address");
  }
  eval.new_actions =
      actions_from_json(member(v, "new_actions", path), registry, path + "/new_actions");
  return eval;
}

}  // namespace

json step_to_json(const ChainStep& step) {
  if (const auto* block = std::get_if<BlockStep>(&step)) {
    return json{{"type", "block"},
                {"header", header_to_json(block->header)},
                {"added_actions", actions_to_json(block->added_actions)}};
  }
  if (const auto* evaluate = std::get_if<EvaluateStep>(&step)) {
    return json{{"type", "evaluate"}, {"eval", eval_to_json(evaluate->eval)}};
  }
  const auto& permute = std::get<PermuteStep>(step);
  json indices = json::array();
  for (std::size_t index : permute.permutation) {
    indices.push_back(index);
  }
  return json{{"type", "permute"}, {"permutation", std::move(indices)}};
}

ChainStep step_from_json(const json& v, const ContractRegistry& registry,
                         const std::string& path) {
  const std::string type = read_string(member(v, "type", path), path + "/type");
  if (type == "block") {
    reject_unknown_keys(v, {"type", "header", "added_actions"}, path);
    BlockStep step;
    step.header = header_from_json(member(v, "header", path), path + "/header");
    step.added_actions = actions_from_json(member(v, "added_actions", path), registry,
                                           path + "/added_actions");
    return step;
  }
  if (type == "evaluate") {
    reject_unknown_keys(v, {"type", "eval"}, path);
    return EvaluateStep{eval_from_json(member(v, "eval", path), registry, path + "/eval")};
  }
  if (type == "permute") {
    reject_unknown_keys(v, {"type", "permutation"}, path);
    const json& indices = member(v, "permutation", path);
    if (!indices.is_array()) {
      fail("permutation must be an array", path + "/permutation");
    }
    PermuteStep step;
    step.permutation.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (!indices[i].is_number_unsigned()) {
        fail("permutation entries must be non-negative integers",
             path + "/permutation/" + std::to_string(i));
      }
      step.permutation.push_back(indices[i].get<std::size_t>());
    }
    return step;
  }
  fail("unknown step type \"" + type + "\"", path + "/type");
}

}  // namespace chainsim::jsonio
