#include "riskmap/schema.hpp"

#include "riskmap/errors.hpp"

#include <algorithm>

namespace riskmap {

namespace {

bool matches_type(const Json& v, const std::string& type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "number") return v.is_number();
    if (type == "integer") return v.is_number_integer();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    throw SchemaError("schema uses unknown type '" + type + "'");
}

class Validator {
public:
    explicit Validator(const Json& root) : root_(root) {}

    void check(const Json& schema, const Json& v, const std::string& path) {
        if (auto ref = schema.find("$ref"); ref != schema.end()) {
            check(resolve(ref->get<std::string>()), v, path);
            return;
        }
        if (auto t = schema.find("type"); t != schema.end()) {
            bool ok = false;
            if (t->is_string()) {
                ok = matches_type(v, t->get<std::string>());
            } else {
                for (const auto& alt : *t) ok = ok || matches_type(v, alt.get<std::string>());
            }
            if (!ok) {
                fail(path, "expected type " + t->dump());
                return;
            }
        }
        if (auto e = schema.find("enum"); e != schema.end()) {
            if (std::find(e->begin(), e->end(), v) == e->end()) fail(path, "value " + v.dump() + " not in " + e->dump());
        }
        if (v.is_number()) {
            const double x = v.get<double>();
            if (auto m = schema.find("minimum"); m != schema.end() && x < m->get<double>()) {
                fail(path, "value " + v.dump() + " below minimum " + m->dump());
            }
            if (auto m = schema.find("maximum"); m != schema.end() && x > m->get<double>()) {
                fail(path, "value " + v.dump() + " above maximum " + m->dump());
            }
        }
        if (v.is_string()) {
            const auto len = v.get_ref<const std::string&>().size();
            if (auto m = schema.find("minLength"); m != schema.end() && len < m->get<std::size_t>()) fail(path, "string too short");
            if (auto m = schema.find("maxLength"); m != schema.end() && len > m->get<std::size_t>()) fail(path, "string too long");
        }
        if (v.is_array()) {
            if (auto m = schema.find("minItems"); m != schema.end() && v.size() < m->get<std::size_t>()) fail(path, "too few items");
            if (auto m = schema.find("maxItems"); m != schema.end() && v.size() > m->get<std::size_t>()) fail(path, "too many items");
            if (auto items = schema.find("items"); items != schema.end()) {
                for (std::size_t i = 0; i < v.size(); ++i) check(*items, v[i], path + "[" + std::to_string(i) + "]");
            }
        }
        if (v.is_object()) check_object(schema, v, path);
    }

    std::vector<std::string> take() { return std::move(errors_); }

private:
    void check_object(const Json& schema, const Json& v, const std::string& path) {
        if (auto req = schema.find("required"); req != schema.end()) {
            for (const auto& key : *req) {
                if (!v.contains(key.get<std::string>())) fail(path, "missing required key '" + key.get<std::string>() + "'");
            }
        }
        const auto props = schema.find("properties");
        const auto extra = schema.find("additionalProperties");
        for (const auto& [key, value] : v.items()) {
            const std::string child = path + "." + key;
            if (props != schema.end() && props->contains(key)) {
                check((*props)[key], value, child);
            } else if (extra != schema.end()) {
                if (extra->is_boolean()) {
                    if (!extra->get<bool>()) fail(child, "unexpected key");
                } else {
                    check(*extra, value, child);
                }
            }
        }
    }

    const Json& resolve(const std::string& ref) const {
        static const std::string prefix = "#/$defs/";
        if (ref.rfind(prefix, 0) != 0) throw SchemaError("unsupported $ref '" + ref + "'");
        const auto defs = root_.find("$defs");
        if (defs == root_.end() || !defs->contains(ref.substr(prefix.size()))) {
            throw SchemaError("unresolved $ref '" + ref + "'");
        }
        return (*defs)[ref.substr(prefix.size())];
    }

    void fail(const std::string& path, const std::string& problem) { errors_.push_back(path + ": " + problem); }

    const Json& root_;
    std::vector<std::string> errors_;
};

}  // namespace

std::vector<std::string> validate_against_schema(const Json& schema, const Json& instance) {
    Validator validator(schema);
    validator.check(schema, instance, "$");
    return validator.take();
}

}  // namespace riskmap
