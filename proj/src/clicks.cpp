#include "tetra/clicks.hpp"

#include <Eigen/Geometry>
#include <cmath>

#include "tetra/errors.hpp"

namespace tetra {

ClickCounts ClickSequence::tally(std::uint64_t seed) const {
    ClickCounts c;
    c.total = outcomes.size();
    c.seed = seed;
    for (std::uint8_t o : outcomes) ++c.n[o];
    return c;
}

ClickCounts sample_clicks(const PauliVector& s, const TetraFrame& frame,
                          std::uint64_t count, Rng& rng) {
    const Probabilities4 p = outcome_probabilities(s, frame);
    ClickCounts c;
    c.total = count;
    c.seed = rng.seed();
    for (std::uint64_t i = 0; i < count; ++i)
        ++c.n[rng.categorical(p.p.data(), 4)];
    return c;
}

ClickSequence sample_click_sequence(const PauliVector& s, const TetraFrame& frame,
                                    std::uint64_t count, Rng& rng) {
    const Probabilities4 p = outcome_probabilities(s, frame);
    ClickSequence seq;
    seq.outcomes.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        seq.outcomes.push_back(static_cast<std::uint8_t>(rng.categorical(p.p.data(), 4)));
    return seq;
}

SixCounts sample_six(const PauliVector& s, const SixFrame& frame,
                     std::uint64_t count, Rng& rng) {
    const Probabilities6 p = six_state_probabilities(s, frame);
    SixCounts c;
    c.total = count;
    c.seed = rng.seed();
    for (std::uint64_t i = 0; i < count; ++i)
        ++c.n[rng.categorical(p.data(), 6)];
    return c;
}

TetraFrame misalign(const TetraFrame& frame, double angle, Rng& rng) {
    if (angle < 0.0) throw DomainError("misalignment angle must be >= 0");
    const Vec3 a1 = frame.vec(0);
    // orthonormal pair perpendicular to a1
    Vec3 e1 = a1.cross(Vec3::UnitZ());
    if (e1.norm() < 0.5) e1 = a1.cross(Vec3::UnitX());
    e1.normalize();
    const Vec3 e2 = a1.cross(e1);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    // rotating about an axis perpendicular to a1 moves a1 by exactly `angle`
    const Vec3 axis = std::cos(phi) * e1 + std::sin(phi) * e2;
    if (angle == 0.0) return frame;
    return rotate_frame(frame, axis, angle);
}

} // namespace tetra
