// SPDX-License-Identifier: Apache-2.0
//
// twdpfit: fading-model identification for directional channel measurements
// Copyright (C) 2026 The twdpfit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Validator for the JSON-schema keywords used by the report schemas: type, const, enum,
// required, properties, additionalProperties (false), minimum, maximum, exclusiveMinimum,
// exclusiveMaximum. Unknown keywords are errors so the schema cannot silently outgrow it.

#ifndef TWDP_TESTS_SCHEMA_VALIDATOR_H
#define TWDP_TESTS_SCHEMA_VALIDATOR_H

#include <json.hpp>

#include <string>
#include <vector>

namespace schema
{
    using json = nlohmann::json;

    inline bool type_matches(const json &v, const std::string &t)
    {
        if (t == "object")
            return v.is_object();
        if (t == "array")
            return v.is_array();
        if (t == "string")
            return v.is_string();
        if (t == "boolean")
            return v.is_boolean();
        if (t == "integer")
            return v.is_number_integer();
        if (t == "number")
            return v.is_number();
        if (t == "null")
            return v.is_null();
        return false;
    }

    inline void validate(const json &v, const json &s, const std::string &path, std::vector<std::string> &errors)
    {
        auto fail = [&](const std::string &msg) { errors.push_back(path + ": " + msg); };
        for (auto it = s.begin(); it != s.end(); ++it)
        {
            const std::string &key = it.key();
            const json &rule = it.value();
            if (key == "$schema" || key == "title" || key == "description")
                continue;
            if (key == "type")
            {
                if (!type_matches(v, rule.get<std::string>()))
                    fail("expected type " + rule.get<std::string>());
            }
            else if (key == "const")
            {
                if (v != rule)
                    fail("expected constant " + rule.dump());
            }
            else if (key == "enum")
            {
                bool found = false;
                for (const auto &e : rule)
                    found = found || v == e;
                if (!found)
                    fail("value " + v.dump() + " not in enum");
            }
            else if (key == "required")
            {
                for (const auto &r : rule)
                    if (!v.is_object() || !v.contains(r.get<std::string>()))
                        fail("missing property " + r.get<std::string>());
            }
            else if (key == "properties")
            {
                if (!v.is_object())
                    continue;
                for (auto p = rule.begin(); p != rule.end(); ++p)
                    if (v.contains(p.key()))
                        validate(v[p.key()], p.value(), path + "/" + p.key(), errors);
            }
            else if (key == "additionalProperties")
            {
                if (rule.is_boolean() && !rule.get<bool>() && v.is_object())
                    for (auto p = v.begin(); p != v.end(); ++p)
                        if (!s.contains("properties") || !s["properties"].contains(p.key()))
                            fail("unexpected property " + p.key());
            }
            else if (key == "minimum" || key == "maximum" || key == "exclusiveMinimum" || key == "exclusiveMaximum")
            {
                if (!v.is_number())
                    continue;
                const double x = v.get<double>(), b = rule.get<double>();
                const bool ok = key == "minimum"            ? x >= b
                                : key == "maximum"          ? x <= b
                                : key == "exclusiveMinimum" ? x > b
                                                            : x < b;
                if (!ok)
                    fail(key + " " + rule.dump() + " violated by " + v.dump());
            }
            else
                fail("unsupported schema keyword " + key);
        }
    }

    // Empty when `v` conforms to `s`
    inline std::vector<std::string> check(const json &v, const json &s)
    {
        std::vector<std::string> errors;
        validate(v, s, "", errors);
        return errors;
    }
}

#endif
