#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ripscover/criteria.hpp"
#include "ripscover/metric.hpp"
#include "ripscover/optcycle.hpp"
#include "ripscover/scenario.hpp"

namespace ripscover {

using nlohmann::json;

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
void write_text_file(const std::string& path, const std::string& text);

json scenario_to_json(const Scenario& s);
/// Throws InvalidScenario on malformed documents.
Scenario scenario_from_json(const json& j);

json perturbation_to_json(const Perturbation& p);
Perturbation perturbation_from_json(const json& j);

json correspondence_to_json(const Correspondence& c);
Correspondence correspondence_from_json(const json& j, std::size_t n_source, std::size_t n_target);

/// {"degree":p,"terms":[{"simplex":[..],"coeff":"num/den"},..]}
template <class F>
json chain_to_json(const BasicChain<F>& z) {
    json terms = json::array();
    for (const auto& [id, c] : z.terms) {
        auto v = z.complex->vertices(id);
        terms.push_back({{"simplex", std::vector<int>(v.begin(), v.end())}, {"coeff", to_fraction_string(c)}});
    }
    return {{"degree", z.degree}, {"terms", terms}};
}

/// Throws SimplexMissing when a simplex is not in `k`.
Chain chain_from_json(const json& j, const ComplexPtr& k);

json verdict_to_json(const Verdict& v, const std::string& barcode_path);

/// {"chain":..,"l1_norm":"num/den","active_sensors":[..],"deactivated":[..]}
json coverage_to_json(const Chain& w, const Rational& norm, const std::vector<int>& active,
                      const std::vector<int>& deactivated);

/// "degree,birth,death" with inf for essential bars.
std::string barcode_csv(int degree, const std::vector<std::pair<double, double>>& bars);
/// "x,y"
std::string points_csv(const std::vector<Point2>& points);

}  // namespace ripscover
