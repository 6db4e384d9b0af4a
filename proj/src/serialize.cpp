#include "netperc/serialize.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace netperc {

using nlohmann::json;

namespace {

json finite_or_null(double value) {
    return std::isfinite(value) ? json(value) : json(nullptr);
}

}  // namespace

std::string to_json(const PercolationReport& report) {
    json doc{{"T", report.T},
             {"T_c", finite_or_null(report.T_c)},
             {"u_T", report.u_T},
             {"S_T", report.S_T},
             {"epidemic", report.epidemic}};
    if (report.mean_small) doc["mean_small"] = *report.mean_small;
    return doc.dump();
}

std::string to_json(const FinalSizeReport& report) {
    json doc{{"theta_inf", report.theta_inf},
             {"R_inf", report.r_inf},
             {"R0", report.r0},
             {"equiv_residuals",
              json{{"theta", report.resid_theta}, {"final_size", report.resid_final_size}}}};
    return doc.dump();
}

std::string to_json(const EnsembleSummary& summary) {
    json hist = json::array();
    for (const auto& [edge, count] : summary.histogram) hist.push_back(json::array({edge, count}));
    json doc{{"epidemic_probability", summary.epidemic_probability},
             {"se", summary.standard_error},
             {"major_mean_fraction", summary.major_mean_fraction},
             {"bin_width", summary.bin_width},
             {"replicates", summary.replicates},
             {"histogram", std::move(hist)}};
    return doc.dump();
}

DegreeDistribution distribution_from_json(const std::string& text) {
    json doc = json::parse(text);
    if (!doc.is_object()) throw std::invalid_argument("distribution spec: expected an object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "family" && key != "params" && key != "delta" && key != "k_min")
            throw std::invalid_argument("distribution spec: unknown key '" + key + "'");
    }
    const DegreeFamily family = family_from_name(doc.at("family").get<std::string>());
    const json params = doc.value("params", json::object());

    if (family == DegreeFamily::custom) {
        const auto values = params.at("pmf").get<std::vector<double>>();
        Eigen::ArrayXd coeffs(static_cast<Eigen::Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i)
            coeffs[static_cast<Eigen::Index>(i)] = values[i];
        return custom_distribution(PowerSeries(std::move(coeffs)));
    }

    const int delta = doc.at("delta").get<int>();
    const int k_min = doc.value("k_min", 1);
    double param = 0.0;
    switch (family) {
        case DegreeFamily::constant: param = params.at("k").get<double>(); break;
        case DegreeFamily::poisson: param = params.at("lambda").get<double>(); break;
        case DegreeFamily::geometric: param = params.at("alpha").get<double>(); break;
        case DegreeFamily::powerlaw: param = params.at("gamma").get<double>(); break;
        case DegreeFamily::custom: break;
    }
    return build_distribution(family, param, delta, k_min);
}

std::string distribution_to_json(const DegreeDistribution& dist, bool include_pmf) {
    json params;
    switch (dist.family) {
        case DegreeFamily::constant: params["k"] = dist.param; break;
        case DegreeFamily::poisson: params["lambda"] = dist.param; break;
        case DegreeFamily::geometric: params["alpha"] = dist.param; break;
        case DegreeFamily::powerlaw: params["gamma"] = dist.param; break;
        case DegreeFamily::custom: break;
    }
    json doc{{"family", family_name(dist.family)},
             {"params", std::move(params)},
             {"delta", dist.delta},
             {"k_min", dist.k_min}};
    if (include_pmf) {
        json pmf = json::array();
        for (Eigen::Index k = 0; k <= dist.pmf.max_degree(); ++k)
            pmf.push_back(dist.pmf.coeff(k));
        doc["pmf"] = std::move(pmf);
    }
    return doc.dump();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    char line[256];
    out << (trajectory.has_phi ? "t,theta,S,I,R,phiS,phiI,phiR\n" : "t,theta,S,I,R\n");
    for (Eigen::Index i = 0; i < trajectory.t.size(); ++i) {
        if (trajectory.has_phi) {
            std::snprintf(line, sizeof line,
                          "%.10g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", trajectory.t[i],
                          trajectory.theta[i], trajectory.S[i], trajectory.I[i], trajectory.R[i],
                          trajectory.phi_S[i], trajectory.phi_I[i], trajectory.phi_R[i]);
        } else {
            std::snprintf(line, sizeof line, "%.10g,%.12g,%.12g,%.12g,%.12g\n", trajectory.t[i],
                          trajectory.theta[i], trajectory.S[i], trajectory.I[i], trajectory.R[i]);
        }
        out << line;
    }
}

void write_event_log_csv(std::ostream& out, const std::vector<Event>& events) {
    out << "t,kind,vertex\n";
    char line[128];
    for (const auto& event : events) {
        std::snprintf(line, sizeof line, "%.12g,%s,%u\n", event.t,
                      event.kind == EventKind::infect ? "infect" : "recover", event.vertex);
        out << line;
    }
}

}  // namespace netperc
