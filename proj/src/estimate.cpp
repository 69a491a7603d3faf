#include "tetra/estimate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "tetra/errors.hpp"

namespace tetra {

namespace {

constexpr double kMuLow = 1e-14;
constexpr double kMuHigh = 2.0;
constexpr int kMuIterCap = 200;

std::array<double, 4> frequencies(const ClickCounts& counts) {
    if (counts.total == 0) throw EmptyData("no clicks recorded");
    const double n = static_cast<double>(counts.total);
    return {counts.n[0] / n, counts.n[1] / n, counts.n[2] / n, counts.n[3] / n};
}

double sum_squares(const std::array<double, 4>& nu) {
    return nu[0] * nu[0] + nu[1] * nu[1] + nu[2] * nu[2] + nu[3] * nu[3];
}

// The multiplier equation reads f(mu) = mu + 2 - (1/2) sum_j r_j with
// r_j = sqrt((1-mu)^2 + 12 mu nu_j). It always has a double root at mu = 0,
// so f itself cannot be bracketed reliably near the relevant root when the
// inequality is only weakly violated. Dividing out 6 mu^2 gives
//   g(mu) = sum_{nu_j>0} nu_j (3 nu_j - 1) / (1 - mu + 6 mu nu_j + r_j)
//           - z max(0, mu-1) / (6 mu^2),
// where z counts zero-frequency categories (whose quotient form degenerates
// to 0/0 for mu >= 1 while their f-contribution is 1 - mu). g(0+) equals
// (3 sum nu^2 - 1)/2 > 0 on the boundary branch, so bisection is safe.
double mu_equation(double mu, const std::array<double, 4>& nu) {
    const double lam = 1.0 - mu;
    double acc = 0.0;
    int zeros = 0;
    for (double v : nu) {
        if (v > 0.0) {
            const double r = std::sqrt(lam * lam + 12.0 * mu * v);
            acc += v * (3.0 * v - 1.0) / (lam + 6.0 * mu * v + r);
        } else {
            ++zeros;
        }
    }
    if (mu > 1.0 && zeros > 0) acc -= zeros * (mu - 1.0) / (6.0 * mu * mu);
    return acc;
}

double mu_residual(double mu, const std::array<double, 4>& nu) {
    const double lam = 1.0 - mu;
    double s = 0.0;
    for (double v : nu) s += std::sqrt(lam * lam + 12.0 * mu * v);
    return mu + 2.0 - 0.5 * s;
}

double loglik_of(const std::array<std::uint64_t, 4>& n, const std::array<double, 4>& p) {
    double ll = 0.0;
    for (int j = 0; j < 4; ++j) {
        if (n[j] == 0) continue;  // 0 log 0 = 0 by the usual likelihood limit
        if (p[j] <= 0.0) throw AllZeroProb("fitted probability vanished on an observed category");
        ll += static_cast<double>(n[j]) * std::log(p[j]);
    }
    return ll;
}

} // namespace

PauliVector naive_estimator(const ClickCounts& counts, const TetraFrame& frame) {
    const auto nu = frequencies(counts);
    Vec3 s = Vec3::Zero();
    for (int j = 0; j < 4; ++j) s += nu[j] * frame.vec(j);
    return 3.0 * s;
}

bool check_inequality(const ClickCounts& counts) {
    return sum_squares(frequencies(counts)) <= 1.0 / 3.0;
}

double solve_mu(const std::array<double, 4>& nu) {
    const double sum = nu[0] + nu[1] + nu[2] + nu[3];
    if (std::abs(sum - 1.0) > kApiTol)
        throw InvalidProbabilities("frequencies must sum to 1");
    if (sum_squares(nu) <= 1.0 / 3.0)
        throw DomainError("solve_mu requires sum nu^2 > 1/3");

    double lo = kMuLow, hi = kMuHigh;
    if (mu_equation(hi, nu) > 0.0) return kMuHigh;  // extremal all-one-detector data
    for (int i = 0; i < kMuIterCap && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mu_equation(mid, nu) > 0.0 ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);
    if (std::abs(mu_residual(mu, nu)) > 1e-12)
        throw NoRoot("boundary multiplier bisection failed to converge");
    return mu;
}

std::array<double, 4> boundary_probabilities(const std::array<double, 4>& nu, double mu) {
    const double lam = 1.0 - mu;
    std::array<double, 4> pt{};
    for (int j = 0; j < 4; ++j) {
        const double r = std::sqrt(lam * lam + 12.0 * mu * nu[j]);
        // Two algebraically equal forms of the quadratic solution; each is
        // cancellation-free on its own sign of lambda.
        pt[j] = (lam <= 0.0) ? (r - lam) / (6.0 * mu)
                             : (nu[j] > 0.0 ? 2.0 * nu[j] / (lam + r) : 0.0);
    }
    return pt;
}

namespace {

Estimate boundary_estimate(const ClickCounts& counts, const TetraFrame& frame,
                           const std::array<double, 4>& nu) {
    const double mu = solve_mu(nu);
    const auto pt = boundary_probabilities(nu, mu);
    Estimate est;
    est.branch = Branch::Boundary;
    est.mu = mu;
    est.ptilde.assign(pt.begin(), pt.end());
    Vec3 s = Vec3::Zero();
    for (int j = 0; j < 4; ++j) s += pt[j] * frame.vec(j);
    est.S = 3.0 * s;
    est.loglik = loglik_of(counts.n, pt);
    return est;
}

} // namespace

Estimate ml_estimate_four(const ClickCounts& counts, const TetraFrame& frame,
                          MlMode mode) {
    const auto nu = frequencies(counts);
    const double ss = sum_squares(nu);
    const bool physical = ss <= 1.0 / 3.0 + kInternalTol;

    if (mode == MlMode::Auto && physical) {
        Estimate est;
        est.branch = Branch::Interior;
        est.mu = 0.0;
        est.ptilde.assign(nu.begin(), nu.end());
        est.S = naive_estimator(counts, frame);
        est.loglik = loglik_of(counts.n, nu);
        return est;
    }

    if (!physical) return boundary_estimate(counts, frame, nu);

    // ForceBoundary with data that does not violate the inequality: the
    // constrained maximum sits on the sphere with a multiplier of either
    // sign, so it is found as the likelihood maximum over unit vectors.
    if (counts.n[0] == counts.n[1] && counts.n[1] == counts.n[2] &&
        counts.n[2] == counts.n[3]) {
        // perfect four-way tie between the quartet directions
        Estimate est;
        est.branch = Branch::Boundary;
        est.degenerate = true;
        est.S = frame.rotation() * Vec3::UnitZ();
        const Probabilities4 p = outcome_probabilities(est.S, frame);
        est.ptilde.assign(p.p.begin(), p.p.end());
        est.mu = 0.0;
        est.loglik = loglik_of(counts.n, {p[0], p[1], p[2], p[3]});
        return est;
    }

    std::vector<LogLikTerm> terms;
    for (int j = 0; j < 4; ++j)
        if (counts.n[j] > 0)
            terms.push_back({frame.vec(j), static_cast<double>(counts.n[j])});
    const Vec3 naive = naive_estimator(counts, frame);
    std::vector<Vec3> warm;
    if (naive.norm() > 1e-9) warm.push_back(naive.normalized());
    const Vec3 s = maximize_sphere_loglik(terms, warm);

    Estimate est;
    est.branch = Branch::Boundary;
    est.S = s;
    const Probabilities4 p = outcome_probabilities(s, frame);
    est.ptilde.assign(p.p.begin(), p.p.end());
    est.loglik = loglik_of(counts.n, {p[0], p[1], p[2], p[3]});
    // Recover the multiplier from the stationarity relation
    // nu_j / p_j = (1 - mu) + 3 mu p_j on the best-conditioned category.
    int jbest = 0;
    for (int j = 1; j < 4; ++j)
        if (std::abs(3.0 * p[j] - 1.0) > std::abs(3.0 * p[jbest] - 1.0)) jbest = j;
    if (p[jbest] > 0.0 && std::abs(3.0 * p[jbest] - 1.0) > 1e-9)
        est.mu = (nu[jbest] / p[jbest] - 1.0) / (3.0 * p[jbest] - 1.0);
    return est;
}

Estimate ml_estimate_six(const SixCounts& counts, const SixFrame& frame) {
    if (counts.total == 0) throw EmptyData("no clicks recorded");
    std::array<double, 3> asym{};
    for (int xi = 0; xi < 3; ++xi) {
        const double np = static_cast<double>(counts.n[2 * xi]);
        const double nm = static_cast<double>(counts.n[2 * xi + 1]);
        if (np + nm == 0.0) throw EmptyAxis("an axis recorded no clicks");
        asym[xi] = (np - nm) / (np + nm);
    }
    // per-axis asymmetries expressed in lab coordinates
    Vec3 naive = asym[0] * frame.axis(0) + asym[1] * frame.axis(1) + asym[2] * frame.axis(2);

    Estimate est;
    est.ptilde.resize(6);
    auto fill_ptilde = [&](const Vec3& s) {
        for (int xi = 0; xi < 3; ++xi) {
            const double proj = frame.axis(xi).dot(s);
            est.ptilde[2 * xi] = (1.0 + proj) / 6.0;
            est.ptilde[2 * xi + 1] = (1.0 - proj) / 6.0;
        }
    };
    auto six_loglik = [&](const std::vector<double>& p) {
        double ll = 0.0;
        for (int k = 0; k < 6; ++k) {
            if (counts.n[k] == 0) continue;
            if (p[k] <= 0.0) throw AllZeroProb("fitted probability vanished on an observed category");
            ll += static_cast<double>(counts.n[k]) * std::log(p[k]);
        }
        return ll;
    };

    if (naive.norm() <= 1.0) {
        est.branch = Branch::Interior;
        est.S = naive;
        fill_ptilde(naive);
        est.loglik = six_loglik(est.ptilde);
        return est;
    }

    std::vector<LogLikTerm> terms;
    for (int xi = 0; xi < 3; ++xi) {
        if (counts.n[2 * xi] > 0)
            terms.push_back({frame.axis(xi), static_cast<double>(counts.n[2 * xi])});
        if (counts.n[2 * xi + 1] > 0)
            terms.push_back({-frame.axis(xi), static_cast<double>(counts.n[2 * xi + 1])});
    }
    const Vec3 s = maximize_sphere_loglik(terms, {naive.normalized()});
    est.branch = Branch::Boundary;
    est.S = s;
    fill_ptilde(s);
    est.loglik = six_loglik(est.ptilde);
    return est;
}

// ---------------------------------------------------------------------------
// Sphere maximization
// ---------------------------------------------------------------------------

double sphere_loglik(const std::vector<LogLikTerm>& terms, const Vec3& s) {
    double ll = 0.0;
    for (const auto& t : terms) {
        const double q = 1.0 + t.v.dot(s);
        if (q <= 0.0) return -std::numeric_limits<double>::infinity();
        ll += t.w * std::log(q);
    }
    return ll;
}

Vec3 sphere_loglik_gradient(const std::vector<LogLikTerm>& terms, const Vec3& s) {
    Vec3 g = Vec3::Zero();
    for (const auto& t : terms) {
        const double q = std::max(1.0 + t.v.dot(s), 1e-14);
        g += (t.w / q) * t.v;
    }
    return g;
}

namespace {

double total_weight(const std::vector<LogLikTerm>& terms) {
    double w = 0.0;
    for (const auto& t : terms) w += t.w;
    return w;
}

// One damped Riemannian Newton run. Maximization, so the tangent Hessian is
// shifted until negative definite before solving.
Vec3 newton_run(const std::vector<LogLikTerm>& terms, Vec3 s, int max_iters,
                double* value_out) {
    s.normalize();
    double f = sphere_loglik(terms, s);
    const double scale = std::max(1.0, total_weight(terms));
    for (int it = 0; it < max_iters; ++it) {
        Vec3 g = Vec3::Zero();
        Mat3 h = Mat3::Zero();
        for (const auto& t : terms) {
            const double q = std::max(1.0 + t.v.dot(s), 1e-14);
            g += (t.w / q) * t.v;
            h -= (t.w / (q * q)) * t.v * t.v.transpose();
        }
        Vec3 t1 = s.cross(Vec3::UnitX());
        if (t1.norm() < 0.5) t1 = s.cross(Vec3::UnitY());
        t1.normalize();
        const Vec3 t2 = s.cross(t1);
        Eigen::Vector2d gt(t1.dot(g), t2.dot(g));
        if (gt.norm() <= 1e-13 * scale && it > 0) break;
        Eigen::Matrix2d ht;
        ht << t1.dot(h * t1), t1.dot(h * t2), t2.dot(h * t1), t2.dot(h * t2);
        ht -= s.dot(g) * Eigen::Matrix2d::Identity();  // sphere curvature term
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(ht);
        const double emax = es.eigenvalues().maxCoeff();
        if (emax > -1e-12 * scale) {
            const double shift = emax + std::max(1e-8 * scale, 1e-3 * es.eigenvalues().cwiseAbs().maxCoeff());
            ht -= shift * Eigen::Matrix2d::Identity();
        }
        Eigen::Vector2d step = -ht.inverse() * gt;
        double lam = 1.0;
        Vec3 snew = s;
        double fnew = f;
        for (int ls = 0; ls < 50; ++ls) {
            snew = (s + lam * (step.x() * t1 + step.y() * t2)).normalized();
            fnew = sphere_loglik(terms, snew);
            if (fnew >= f - 1e-15 * std::abs(f)) break;
            lam *= 0.5;
        }
        if ((snew - s).norm() < 1e-16) { s = snew; f = std::max(f, fnew); break; }
        s = snew;
        f = fnew;
    }
    if (value_out) *value_out = f;
    return s;
}

} // namespace

Vec3 polish_sphere_loglik(const std::vector<LogLikTerm>& terms, const Vec3& start,
                          int max_iters) {
    return newton_run(terms, start, max_iters, nullptr);
}

Vec3 maximize_ball_loglik(const std::vector<LogLikTerm>& terms,
                          const std::vector<Vec3>& warm_starts) {
    // Damped Newton in ambient coordinates with steps clipped to the ball.
    Vec3 s = Vec3::Zero();
    double f = sphere_loglik(terms, s);
    const double scale = std::max(1.0, total_weight(terms));
    for (int it = 0; it < 80; ++it) {
        Vec3 g = Vec3::Zero();
        Mat3 h = Mat3::Zero();
        for (const auto& t : terms) {
            const double q = std::max(1.0 + t.v.dot(s), 1e-14);
            g += (t.w / q) * t.v;
            h -= (t.w / (q * q)) * t.v * t.v.transpose();
        }
        if (g.norm() <= 1e-13 * scale) break;
        Mat3 hs = h - 1e-12 * scale * Mat3::Identity();
        Vec3 step = -hs.inverse() * g;
        double lam = 1.0;
        Vec3 snew = s;
        double fnew = f;
        for (int ls = 0; ls < 60; ++ls) {
            snew = s + lam * step;
            if (snew.norm() > 1.0) snew *= (1.0 - 1e-14) / snew.norm();
            fnew = sphere_loglik(terms, snew);
            if (fnew >= f - 1e-15 * std::abs(f)) break;
            lam *= 0.5;
        }
        if ((snew - s).norm() < 1e-15) { s = snew; f = std::max(f, fnew); break; }
        s = snew;
        f = fnew;
    }
    // The interior path stalls when the maximum sits on the sphere; take the
    // better of the two.
    double fb;
    Vec3 boundary = Vec3::UnitZ();
    {
        double best = -std::numeric_limits<double>::infinity();
        Vec3 bestv = boundary;
        std::vector<Vec3> starts = warm_starts;
        if (s.norm() > 1e-9) starts.push_back(s.normalized());
        for (const Vec3& s0 : starts) {
            double v;
            const Vec3 r = newton_run(terms, s0, 80, &v);
            if (v > best) { best = v; bestv = r; }
        }
        {
            double v;
            const Vec3 r = newton_run(terms, Vec3::UnitZ(), 80, &v);
            if (v > best) { best = v; bestv = r; }
        }
        fb = best;
        boundary = bestv;
    }
    return fb > f ? boundary : s;
}

Vec3 maximize_sphere_loglik(const std::vector<LogLikTerm>& terms,
                            const std::vector<Vec3>& warm_starts) {
    static const std::array<Vec3, 14> fixed_starts = [] {
        std::array<Vec3, 14> s;
        s[0] = Vec3::UnitX();  s[1] = -Vec3::UnitX();
        s[2] = Vec3::UnitY();  s[3] = -Vec3::UnitY();
        s[4] = Vec3::UnitZ();  s[5] = -Vec3::UnitZ();
        const auto& ref = TetraFrame::reference();
        for (int j = 0; j < 4; ++j) { s[6 + j] = ref[j]; s[10 + j] = -ref[j]; }
        return s;
    }();

    Vec3 best = Vec3::UnitZ();
    double best_f = -std::numeric_limits<double>::infinity();
    auto consider = [&](const Vec3& s0) {
        double f;
        const Vec3 s = newton_run(terms, s0, 80, &f);
        if (f > best_f) { best_f = f; best = s; }
    };
    for (const Vec3& s0 : warm_starts) consider(s0);
    for (const Vec3& s0 : fixed_starts) consider(s0);
    return best;
}

} // namespace tetra
