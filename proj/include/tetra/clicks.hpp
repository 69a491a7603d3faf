#pragma once

#include <cstdint>
#include <vector>

#include "tetra/bloch.hpp"
#include "tetra/rng.hpp"

namespace tetra {

/// Detector tallies for one run of the four-outcome device.
struct ClickCounts {
    std::array<std::uint64_t, 4> n{};
    std::uint64_t total = 0;
    std::uint64_t seed = 0;
};

/// Tallies for the six-outcome device, ordered x+, x-, y+, y-, z+, z-.
struct SixCounts {
    std::array<std::uint64_t, 6> n{};
    std::uint64_t total = 0;
    std::uint64_t seed = 0;
};

/// Ordered detector record; tally always equals the ClickCounts.
struct ClickSequence {
    std::vector<std::uint8_t> outcomes;  // values in 0..3
    ClickCounts tally(std::uint64_t seed) const;
};

// Multinomial sampling is done as N independent categorical draws (inverse
// CDF per click) so that per-click granularity is available to the adaptive
// strategies.

ClickCounts sample_clicks(const PauliVector& s, const TetraFrame& frame,
                          std::uint64_t count, Rng& rng);

ClickSequence sample_click_sequence(const PauliVector& s, const TetraFrame& frame,
                                    std::uint64_t count, Rng& rng);

SixCounts sample_six(const PauliVector& s, const SixFrame& frame,
                     std::uint64_t count, Rng& rng);

/// Rotates the frame so its designated vector a_1 moves by exactly `angle`
/// radians on the sphere, with uniformly random azimuth.
TetraFrame misalign(const TetraFrame& frame, double angle, Rng& rng);

} // namespace tetra
