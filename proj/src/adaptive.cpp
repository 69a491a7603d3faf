#include "tetra/adaptive.hpp"

#include <Eigen/Geometry>
#include <cmath>

#include "tetra/clicks.hpp"
#include "tetra/errors.hpp"
#include "tetra/metrics.hpp"
#include "tetra/parallel.hpp"

namespace tetra {

std::string to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::Static: return "static";
        case StrategyKind::Premeasure: return "premeasure";
        case StrategyKind::SelfLearn: return "selflearn";
    }
    return "static";
}

std::string to_string(Alignment a) {
    switch (a) {
        case Alignment::Parallel: return "parallel";
        case Alignment::Antiparallel: return "antiparallel";
        case Alignment::Random: return "random";
    }
    return "parallel";
}

StrategyKind strategy_from_string(const std::string& s) {
    if (s == "static") return StrategyKind::Static;
    if (s == "premeasure") return StrategyKind::Premeasure;
    if (s == "selflearn") return StrategyKind::SelfLearn;
    throw ConfigError("unknown strategy: " + s);
}

Alignment alignment_from_string(const std::string& s) {
    if (s == "parallel") return Alignment::Parallel;
    if (s == "antiparallel") return Alignment::Antiparallel;
    if (s == "random") return Alignment::Random;
    throw ConfigError("unknown alignment: " + s);
}

void StrategyConfig::validate() const {
    if (n_clicks < 1) throw ConfigError("strategy needs N >= 1");
    if (misalignment_deg < 0.0) throw ConfigError("misalignment must be >= 0");
    if (misalignment_deg > 0.0 && kind != StrategyKind::Static)
        throw ConfigError("misalignment is only meaningful for static runs");
}

namespace {

TrialResult finish_trial(Estimate est, const PauliVector& s, std::uint64_t used) {
    TrialResult tr;
    tr.sq_dist = (est.S - s).squaredNorm();
    const double u = uhlmann_fidelity(est.S, s);
    tr.fidelity = u * u;
    tr.estimate = std::move(est);
    tr.true_state = s;
    tr.clicks_used = used;
    return tr;
}

} // namespace

TrialResult run_static(const PauliVector& s, const TetraFrame& frame,
                       std::uint64_t n_clicks, Rng& rng) {
    const ClickCounts counts = sample_clicks(s, frame, n_clicks, rng);
    return finish_trial(ml_estimate_four(counts, frame), s, n_clicks);
}

TrialResult run_premeasure(const PauliVector& s, std::uint64_t n_clicks, Rng& rng) {
    if (n_clicks < 2) throw EmptyData("premeasure strategy needs N >= 2");
    const TetraFrame reference;
    const std::uint64_t first = n_clicks / 2;

    const ClickCounts pre = sample_clicks(s, reference, first, rng);
    const PauliVector direction = ml_estimate_four(pre, reference).S;

    // second stage: designated vector anti-parallel to the estimated direction
    TetraFrame frame = reference;
    if (direction.norm() > 1e-12)
        frame = align_frame(reference, -direction.normalized());

    const ClickCounts data = sample_clicks(s, frame, n_clicks - first, rng);
    TrialResult tr = finish_trial(ml_estimate_four(data, frame), s, n_clicks);
    return tr;
}

Mat3 random_rotation(Rng& rng) {
    Eigen::Vector4d q;
    double n2;
    do {
        q << rng.normal(), rng.normal(), rng.normal(), rng.normal();
        n2 = q.squaredNorm();
    } while (n2 < 1e-300);
    q /= std::sqrt(n2);
    return Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
}

TrialResult run_selflearning(const PauliVector& s, std::uint64_t n_clicks,
                             Alignment alignment, Rng& rng, MlMode mode) {
    if (n_clicks < 1) throw EmptyData("self-learning strategy needs N >= 1");
    const TetraFrame reference;
    TetraFrame frame = reference;

    std::vector<LogLikTerm> terms;
    terms.reserve(n_clicks);
    Vec3 running = Vec3::Zero();

    for (std::uint64_t i = 0; i < n_clicks; ++i) {
        if (alignment == Alignment::Random) {
            frame = TetraFrame::from_rotation(random_rotation(rng));
        } else if (!terms.empty()) {
            // refresh the running estimate from the clicks collected so far;
            // a warm-started polish suffices to steer the frame
            running = polish_sphere_loglik(
                terms, running.norm() > 1e-12 ? running : Vec3(frame.vec(0)));
            if (running.norm() > 1e-12) {
                const Vec3 target =
                    alignment == Alignment::Parallel ? running : Vec3(-running);
                frame = align_frame(frame, target.normalized());
            }
            // degenerate running estimate keeps the previous frame
        }
        const Probabilities4 p = outcome_probabilities(s, frame);
        const int j = rng.categorical(p.p.data(), 4);
        terms.push_back({frame.vec(j), 1.0});
    }

    std::vector<Vec3> warm;
    if (running.norm() > 1e-12) warm.push_back(running.normalized());
    const Vec3 S = mode == MlMode::ForceBoundary
                       ? maximize_sphere_loglik(terms, warm)
                       : maximize_ball_loglik(terms, warm);

    Estimate est;
    est.S = S;
    est.branch = (mode == MlMode::ForceBoundary || S.norm() > 1.0 - kApiTol)
                     ? Branch::Boundary
                     : Branch::Interior;
    est.loglik = sphere_loglik(terms, S) -
                 static_cast<double>(n_clicks) * std::log(4.0);
    return finish_trial(std::move(est), s, n_clicks);
}

// ---------------------------------------------------------------------------
// Exact two-qubit benchmark
// ---------------------------------------------------------------------------

namespace {

// Per-outcome maximum-likelihood estimators of the two-click experiments.
// Non-adaptive: S = a_j for a repeated detector, else the unit vector along
// a_j + a_k. Anti-aligned second tetrahedron: S = 0 for the degenerate
// repeat, else the unit vector along a_j - a_k.
double mean_sq_error_at(const Vec3& s, TwoQubitStrategy strategy) {
    const auto& a = TetraFrame::reference();
    Probabilities4 p;
    for (int j = 0; j < 4; ++j) p[j] = 0.25 * (1.0 + a[j].dot(s));
    double acc = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            double like;
            Vec3 est;
            if (strategy == TwoQubitStrategy::NonAdaptive) {
                like = p[j] * p[k];
                est = (j == k) ? a[j] : Vec3(std::sqrt(0.75) * (a[j] + a[k]));
            } else {
                like = p[j] * (0.5 - p[k]);
                est = (j == k) ? Vec3(Vec3::Zero())
                               : Vec3(std::sqrt(0.375) * (a[j] - a[k]));
            }
            acc += like * (est - s).squaredNorm();
        }
    return acc;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order) {
    // Newton iteration on Legendre polynomials; nodes on [-1, 1]
    std::vector<double> x(order), w(order);
    for (int i = 0; i < order; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= order; ++k) {
                const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = order * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return {x, w};
}

} // namespace

double two_qubit_exhaustive(TwoQubitStrategy strategy, AverageOver average,
                            int quad_order) {
    const auto [u, wu] = gauss_legendre(quad_order);
    const int n_phi = 2 * quad_order + 1;

    auto sphere_mean = [&](double radius) {
        double acc = 0.0;
        for (int i = 0; i < quad_order; ++i) {
            const double ct = u[i];
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            double ring = 0.0;
            for (int m = 0; m < n_phi; ++m) {
                const double phi = 2.0 * M_PI * m / n_phi;
                const Vec3 s(radius * st * std::cos(phi), radius * st * std::sin(phi),
                             radius * ct);
                ring += mean_sq_error_at(s, strategy);
            }
            acc += wu[i] * 0.5 * ring / n_phi;
        }
        return acc;
    };

    if (average == AverageOver::Pure) return sphere_mean(1.0);

    // ball average with the volume weight 3 r^2 dr on [0, 1]
    double acc = 0.0;
    for (int i = 0; i < quad_order; ++i) {
        const double r = 0.5 * (u[i] + 1.0);
        acc += 0.5 * wu[i] * 3.0 * r * r * sphere_mean(r);
    }
    return acc;
}

std::vector<SweepPoint> misalignment_sweep(Alignment alignment,
                                           const std::vector<double>& angles_deg,
                                           std::uint64_t n_clicks,
                                           std::uint64_t trials,
                                           std::uint64_t seed) {
    if (alignment == Alignment::Random)
        throw ConfigError("misalignment sweep needs parallel or antiparallel alignment");
    std::vector<SweepPoint> out;
    for (double ang : angles_deg) {
        if (ang < 0.0) throw ConfigError("misalignment angles must be >= 0");
        const double rad = ang * M_PI / 180.0;
        std::vector<double> sq(trials), infid(trials);
        parallel_for(trials, [&](std::size_t t) {
            Rng rng(seed + t);
            const PauliVector s = random_state(StateKind::Pure, rng);
            const Vec3 target = alignment == Alignment::Parallel ? s : Vec3(-s);
            TetraFrame frame = align_frame(TetraFrame(), target);
            frame = misalign(frame, rad, rng);
            const ClickCounts counts = sample_clicks(s, frame, n_clicks, rng);
            const Estimate est = ml_estimate_four(counts, frame, MlMode::ForceBoundary);
            sq[t] = (est.S - s).squaredNorm();
            const double u = uhlmann_fidelity(est.S, s);
            infid[t] = 1.0 - u * u;
        });
        SweepPoint pt;
        pt.angle_deg = ang;
        for (std::uint64_t t = 0; t < trials; ++t) {
            pt.mean_sq_dist += sq[t];
            pt.mean_infidelity += infid[t];
        }
        pt.mean_sq_dist /= static_cast<double>(trials);
        pt.mean_infidelity /= static_cast<double>(trials);
        out.push_back(pt);
    }
    return out;
}

} // namespace tetra
