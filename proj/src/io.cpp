#include "tetra/io.hpp"

#include <cstdio>

#include "tetra/errors.hpp"

namespace tetra {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Json state_to_json(const PauliVector& s) { return Json::array({s.x(), s.y(), s.z()}); }

PauliVector state_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError("state must be a JSON triple [sx, sy, sz]");
    return PauliVector(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Json rotation_to_json(const Mat3& r) {
    Json out = Json::array();
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) out.push_back(r(i, k));
    return out;
}

Mat3 rotation_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 9)
        throw ConfigError("rotation must be a row-major 9-tuple");
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) r(i, k) = j[3 * i + k].get<double>();
    return r;
}

namespace {

template <std::size_t N>
Json counts_json_impl(const std::array<std::uint64_t, N>& n, std::uint64_t total,
                      std::uint64_t seed) {
    Json out;
    out["n"] = n;
    out["N"] = total;
    out["seed"] = seed;
    out["rng"] = Rng::algorithm();
    return out;
}

} // namespace

Json counts_to_json(const ClickCounts& c) { return counts_json_impl(c.n, c.total, c.seed); }
Json counts_to_json(const SixCounts& c) { return counts_json_impl(c.n, c.total, c.seed); }

ClickCounts counts_from_json(const Json& j) {
    ClickCounts c;
    const auto& arr = j.at("n");
    if (!arr.is_array() || arr.size() != 4) throw ConfigError("counts need 4 entries");
    for (int i = 0; i < 4; ++i) c.n[i] = arr[i].get<std::uint64_t>();
    c.total = j.value("N", c.n[0] + c.n[1] + c.n[2] + c.n[3]);
    c.seed = j.value("seed", 0ull);
    if (c.total != c.n[0] + c.n[1] + c.n[2] + c.n[3])
        throw ConfigError("counts do not sum to N");
    return c;
}

SixCounts six_counts_from_json(const Json& j) {
    SixCounts c;
    const auto& arr = j.at("n");
    if (!arr.is_array() || arr.size() != 6) throw ConfigError("six counts need 6 entries");
    std::uint64_t sum = 0;
    for (int i = 0; i < 6; ++i) {
        c.n[i] = arr[i].get<std::uint64_t>();
        sum += c.n[i];
    }
    c.total = j.value("N", sum);
    c.seed = j.value("seed", 0ull);
    if (c.total != sum) throw ConfigError("counts do not sum to N");
    return c;
}

Json estimate_to_json(const Estimate& e) {
    Json out;
    out["S"] = state_to_json(e.S);
    out["ptilde"] = e.ptilde;
    out["mu"] = e.mu;
    out["branch"] = e.branch == Branch::Interior ? "interior" : "boundary";
    out["loglik"] = e.loglik;
    if (e.degenerate) out["degenerate"] = true;
    return out;
}

Json probabilities_to_json(const Probabilities4& p) { return Json(p.p); }

Json predictions_to_json(const PredictionSet& p) {
    Json out;
    auto put = [&](const char* key, const Prediction& pr) {
        out[key] = pr.valid ? Json(pr.value) : Json(nullptr);
    };
    put("msd_generic", p.msd_generic);
    put("msd_antialigned", p.msd_antialigned);
    put("msd_six", p.msd_six);
    put("msd_six_privileged", p.msd_six_privileged);
    put("d_opt", p.d_opt);
    put("mean_uhlmann", p.mean_uhlmann);
    put("mean_uhlmann_anti", p.mean_uhlmann_anti);
    put("err_pure_parallel", p.err_pure_parallel);
    put("err_pure_antiparallel", p.err_pure_antiparallel);
    put("err_pure_generic", p.err_pure_generic);
    put("err_pure_limit_kappa0", p.err_pure_limit_kappa0);
    put("quantum_limit", p.quantum_limit);
    put("smin_premeasure", p.smin_premeasure);
    return out;
}

Json joint_to_json(const JointProbabilities& q) {
    Json out = Json::array();
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) out.push_back(q.q(j, k));
    return out;
}

JointProbabilities joint_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 16)
        throw ConfigError("joint probabilities must be a row-major 16-tuple");
    JointProbabilities q;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) q.q(a, b) = j[4 * a + b].get<double>();
    return q;
}

Json two_qubit_to_json(const TwoQubitState& rho) {
    const Mat4c m = rho.matrix();
    Json out = Json::array();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            out.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    return out;
}

Json circuit_to_json(const std::vector<GateSpec>& gates) {
    static const char* wire_names[] = {"ancillaA", "ancillaB", "qubit"};
    Json out = Json::array();
    for (const GateSpec& g : gates) {
        Json item;
        switch (g.kind) {
            case GateSpec::Kind::GeneralizedHadamard:
                item["kind"] = "generalized-hadamard";
                item["phi"] = g.phi;
                item["target"] = wire_names[static_cast<int>(g.target)];
                break;
            case GateSpec::Kind::ControlledGeneralizedHadamard:
                item["kind"] = "controlled-generalized-hadamard";
                item["phi"] = g.phi;
                item["control"] = wire_names[static_cast<int>(g.control)];
                item["target"] = wire_names[static_cast<int>(g.target)];
                break;
            case GateSpec::Kind::ControlledPhase:
                item["kind"] = "controlled-phase";
                item["control"] = wire_names[static_cast<int>(g.control)];
                item["target"] = wire_names[static_cast<int>(g.target)];
                break;
            case GateSpec::Kind::Hadamard:
                item["kind"] = "hadamard";
                item["target"] = wire_names[static_cast<int>(g.target)];
                break;
        }
        out.push_back(item);
    }
    return out;
}

} // namespace tetra
