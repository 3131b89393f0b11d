#include "subw/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "subw/errors.hpp"

namespace subw {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
    if (!j.contains(key)) throw config_error(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number()) throw config_error(std::string("field '") + key + "' must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) throw config_error(std::string("field '") + key + "' must be finite");
    return x;
}

std::vector<double> require_number_array(const json& j, const char* key) {
    if (!j.contains(key)) throw config_error(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_array()) throw config_error(std::string("field '") + key + "' must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            throw config_error(std::string("field '") + key + "[" + std::to_string(i) +
                               "]' must be a number");
        }
        double x = v[i].get<double>();
        if (!std::isfinite(x)) {
            throw config_error(std::string("field '") + key + "[" + std::to_string(i) +
                               "]' must be finite");
        }
        out.push_back(x);
    }
    return out;
}

}  // namespace

WeightedSumProblem parse_problem_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("problem config parse error: ") + e.what());
    }
    if (!j.is_object()) throw config_error("problem config must be a JSON object");
    for (const auto& item : j.items()) {
        if (item.key() != "alpha" && item.key() != "weights" && item.key() != "scales") {
            throw config_error("unknown field '" + item.key() + "' in problem config");
        }
    }
    double alpha = require_number(j, "alpha");
    auto weights = require_number_array(j, "weights");
    auto scales = require_number_array(j, "scales");
    try {
        return WeightedSumProblem(alpha, std::move(weights), std::move(scales));
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("invalid problem config: ") + e.what());
    }
}

WeightedSumProblem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_json(buf.str());
}

}  // namespace subw
