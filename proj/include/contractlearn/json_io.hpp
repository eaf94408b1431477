#pragma once

#include "json.hpp"
#include <string>

#include "contractlearn/driver.hpp"
#include "contractlearn/model.hpp"
#include "contractlearn/oracle_ref.hpp"

namespace contractlearn {

using Json = nlohmann::json;

// {"n": int, "m": int, "F": [[..m]..n], "c": [..n], "r": [..m]}
Json InstanceToJson(const Instance& inst);
// Throws std::invalid_argument on schema errors or an invalid instance.
Instance InstanceFromJson(const Json& j);

Json OptToJson(const OptResult& opt);
OptResult OptFromJson(const Json& j);

Json ParamsToJson(const Params& params);

Json ReadJsonFile(const std::string& path);
// Two-space indent, trailing newline.
void WriteJsonFile(const std::string& path, const Json& j);

Instance LoadInstance(const std::string& path);
void SaveInstance(const std::string& path, const Instance& inst);

}  // namespace contractlearn
