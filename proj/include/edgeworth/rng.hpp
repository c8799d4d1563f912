#pragma once

#include <array>
#include <cstdint>

namespace edgeworth {

/// Philox4x32-10 counter-based generator. The k-th variate of a stream is
/// a pure function of (seed, stream_id, k), so output is independent of
/// worker count and evaluation order.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed,
                                        std::uint64_t stream_id,
                                        std::uint64_t counter);

/// One standard normal draw keyed on (seed, stream_id, counter), via
/// Box-Muller on the four Philox output lanes.
double normal_draw(std::uint64_t seed, std::uint64_t stream_id,
                   std::uint64_t counter);

/// Uniform in (0, 1], from the first two Philox lanes.
double uniform_draw(std::uint64_t seed, std::uint64_t stream_id,
                    std::uint64_t counter);

}  // namespace edgeworth
