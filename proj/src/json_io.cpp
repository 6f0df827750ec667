#include "grnconv/json_io.hpp"

#include <fstream>
#include <vector>

namespace grnconv::json_io {

using nlohmann::json;

namespace {

std::vector<double> real_array(const json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw ConfigError(std::string(what) + " must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

Eigen::MatrixXcd amplitude_matrix(const json& j) {
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw ConfigError("amplitudes must be a non-empty matrix of [re, im] pairs");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    Eigen::MatrixXcd a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ConfigError("amplitudes: ragged rows");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const json& z = row[static_cast<std::size_t>(k)];
            if (z.is_number()) {
                a(i, k) = z.get<double>();
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                a(i, k) = {z[0].get<double>(), z[1].get<double>()};
            } else {
                throw ConfigError("amplitudes: entries must be [re, im]");
            }
        }
    }
    return a;
}

}  // namespace

Distribution parse_distribution(const json& j) {
    if (!j.is_object()) throw ConfigError("distribution JSON must be an object");
    if (j.contains("probs")) return Distribution::from_probs(real_array(j["probs"], "probs"));
    if (j.contains("levels")) {
        std::vector<Level<double>> levels;
        for (const auto& l : j["levels"]) {
            if (!l.is_array() || l.size() != 2 || !l[0].is_number() || !l[1].is_number())
                throw ConfigError("levels entries must be [p, mult]");
            levels.push_back({l[0].get<double>(), l[1].get<double>()});
        }
        return Distribution::from_levels(std::move(levels));
    }
    throw ConfigError("distribution JSON needs \"probs\" or \"levels\"");
}

quantum::PureState parse_state(const json& j) {
    if (!j.is_object()) throw ConfigError("state JSON must be an object");
    const bool has_a = j.contains("amplitudes"), has_p = j.contains("schmidt_sq");
    if (has_a && has_p)
        return quantum::PureState::from_both(amplitude_matrix(j["amplitudes"]),
                                             Distribution::from_probs(real_array(j["schmidt_sq"], "schmidt_sq")));
    if (has_a) return quantum::PureState::from_amplitudes(amplitude_matrix(j["amplitudes"]));
    if (has_p)
        return quantum::PureState::from_schmidt(Distribution::from_probs(real_array(j["schmidt_sq"], "schmidt_sq")));
    throw ConfigError("state JSON needs \"amplitudes\" or \"schmidt_sq\"");
}

json to_json(const Distribution& p) {
    json levels = json::array();
    for (const auto& l : p.levels()) levels.push_back({l.p, l.mult});
    return {{"levels", levels}};
}

json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

Distribution read_distribution(const std::filesystem::path& path) { return parse_distribution(read_file(path)); }

quantum::PureState read_state(const std::filesystem::path& path) { return parse_state(read_file(path)); }

}  // namespace grnconv::json_io
