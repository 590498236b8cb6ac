#pragma once

// nlohmann/json bridges shared by the serializers. Private to the library.

#include <string>
#include <string_view>

#include "hypflow/errors.hpp"
#include "hypflow/profile.hpp"
#include "json.hpp"

namespace hypflow::detail {

using json = nlohmann::json;

inline json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
    }
}

template <typename T>
T field(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::Parse, std::string(what) + ": missing field '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse,
                    std::string(what) + ": field '" + key + "' has wrong type: " + e.what());
    }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback, const char* what) {
    if (!j.contains(key)) return fallback;
    return field<T>(j, key, what);
}

json profile_to_json_value(const RadialProfile& p);
RadialProfile profile_from_json_value(const json& j);

}  // namespace hypflow::detail
