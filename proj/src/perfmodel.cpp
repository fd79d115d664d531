#include "safs/perfmodel.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "file_io.hpp"
#include "safs/errors.hpp"

namespace safs {

using nlohmann::json;

PerformanceModel default_model() {
    PerformanceModel m;
    m.baseline_index = 1000.0;
    m.ratios[ServerType::baremetal] = {1.0};
    // n=1 values are measured; the n=2..4 tails are shipped defaults and may
    // be overridden by a model config file.
    m.ratios[ServerType::container] = {0.75, 0.42, 0.29, 0.22};
    m.ratios[ServerType::vm] = {0.60, 0.33, 0.23, 0.17};
    return m;
}

void check_model(const PerformanceModel& m) {
    if (!(m.baseline_index > 0)) {
        throw InvalidModel("baseline_index must be positive");
    }
    for (ServerType type : {ServerType::baremetal, ServerType::container, ServerType::vm}) {
        auto it = m.ratios.find(type);
        if (it == m.ratios.end() || it->second.empty()) {
            throw InvalidModel("no ratio curve for " + to_string(type));
        }
        const auto& curve = it->second;
        if (type == ServerType::baremetal) {
            if (curve.size() != 1 || curve[0] != 1.0) {
                throw InvalidModel("baremetal is defined only at n=1 with ratio 1.0");
            }
            continue;
        }
        if (curve.size() != 4) {
            throw InvalidModel(to_string(type) + " curve must cover n=1..4");
        }
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const double r = curve[i];
            if (!(r > 0.0) || r > 1.0) {
                throw InvalidModel(to_string(type) + " ratio at n=" + std::to_string(i + 1) +
                                   " must lie in (0, 1]");
            }
            if (i > 0 && !(r < curve[i - 1])) {
                throw InvalidModel(to_string(type) + " curve must strictly decrease in n");
            }
            // Splitting a host n ways must not shrink total capacity below
            // the single-instance level.
            if (static_cast<double>(i + 1) * r < curve[0]) {
                throw InvalidModel(to_string(type) + " aggregate capacity collapses at n=" +
                                   std::to_string(i + 1));
            }
        }
    }
}

PerformanceModel parse_model(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed model config: ") + e.what());
    }
    if (!doc.is_object()) {
        throw FormatError("model config must be a JSON object");
    }

    PerformanceModel m = default_model();
    for (const auto& [key, value] : doc.items()) {
        if (key == "baseline_index") {
            if (!value.is_number()) {
                throw FormatError("baseline_index must be a number");
            }
            m.baseline_index = value.get<double>();
        } else if (key == "ratios") {
            if (!value.is_object()) {
                throw FormatError("ratios must be an object");
            }
            for (const auto& [type_name, curve] : value.items()) {
                auto type = server_type_from_string(type_name);
                if (!type) {
                    throw FormatError("unknown server type '" + type_name + "' in ratios");
                }
                if (!curve.is_array()) {
                    throw FormatError("ratio curve for " + type_name + " must be an array");
                }
                std::vector<double> values;
                for (const auto& r : curve) {
                    if (!r.is_number()) {
                        throw FormatError("ratio curve for " + type_name + " must hold numbers");
                    }
                    values.push_back(r.get<double>());
                }
                m.ratios[*type] = std::move(values);
            }
        } else {
            throw FormatError("unknown model config key '" + key + "'");
        }
    }

    check_model(m);
    return m;
}

PerformanceModel load_model(const std::string& path) {
    return parse_model(detail::read_file(path));
}

IndexValue relative_performance(const PerformanceModel& m, ServerType type, int n) {
    if (n < 1) {
        throw std::invalid_argument("instance count must be >= 1");
    }
    const auto& curve = m.ratios.at(type);
    if (type == ServerType::baremetal && n > 1) {
        throw UnsupportedColocation("baremetal hosts a single dedicated instance; n=" +
                                    std::to_string(n) + " is not defined");
    }
    const int max_n = static_cast<int>(curve.size());
    if (n <= max_n) {
        return {curve[static_cast<std::size_t>(n) - 1], std::nullopt};
    }
    // Equal-division extrapolation from the last measured point.
    std::ostringstream warn;
    warn << to_string(type) << " ratio at n=" << n << " extrapolated from n=" << max_n
         << " by equal division";
    return {curve.back() * static_cast<double>(max_n) / static_cast<double>(n), warn.str()};
}

IndexValue capacity_index(const PerformanceModel& m, ServerType type, int n) {
    IndexValue rel = relative_performance(m, type, n);
    return {m.baseline_index * rel.value, std::move(rel.warning)};
}

} // namespace safs
