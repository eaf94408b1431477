#include "contractlearn/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace contractlearn {
namespace {

const Json& Field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

Vector NumberArray(const Json& j, const char* what) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(what) + " must be an array");
  }
  Vector out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw std::invalid_argument(std::string(what) + " must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::size_t Count(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw std::invalid_argument(std::string("\"") + key +
                                "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

Json InstanceToJson(const Instance& inst) {
  return Json{{"n", inst.n_actions},
              {"m", inst.n_outcomes},
              {"F", inst.distributions},
              {"c", inst.costs},
              {"r", inst.rewards}};
}

Instance InstanceFromJson(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance must be an object");
  Instance inst;
  inst.n_actions = Count(j, "n");
  inst.n_outcomes = Count(j, "m");
  const Json& f = Field(j, "F");
  if (!f.is_array()) throw std::invalid_argument("F must be an array");
  for (const auto& row : f) inst.distributions.push_back(NumberArray(row, "F row"));
  inst.costs = NumberArray(Field(j, "c"), "c");
  inst.rewards = NumberArray(Field(j, "r"), "r");
  RequireValidInstance(inst);
  return inst;
}

Json OptToJson(const OptResult& opt) {
  return Json{{"value", opt.value},
              {"contract", opt.contract},
              {"action", opt.inducing_action}};
}

OptResult OptFromJson(const Json& j) {
  OptResult opt;
  opt.value = Field(j, "value").get<double>();
  opt.contract = NumberArray(Field(j, "contract"), "contract");
  opt.inducing_action = Count(j, "action");
  return opt;
}

Json ParamsToJson(const Params& params) {
  return Json{{"rho", params.rho},
              {"delta", params.delta},
              {"B", params.bound},
              {"m", params.m},
              {"n_bound", params.n_bound},
              {"eps", params.eps},
              {"eta", params.eta},
              {"alpha", params.alpha},
              {"q", params.q},
              {"y", params.y()},
              {"gamma", params.gamma()},
              {"mix", ToString(params.mix_mode)},
              {"mix_value", params.mix()}};
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

Instance LoadInstance(const std::string& path) {
  const Json j = ReadJsonFile(path);
  try {
    return InstanceFromJson(j);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void SaveInstance(const std::string& path, const Instance& inst) {
  WriteJsonFile(path, InstanceToJson(inst));
}

}  // namespace contractlearn
