#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace dafilt {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

/**
 * Counter-based 64-bit generator. The key is the experiment seed and the
 * upper counter half names a substream, so every (seed, substream) pair is
 * an independent sequence that can be regenerated in any order.
 * Satisfies UniformRandomBitGenerator.
 */
class PhiloxStream {
public:
    using result_type = std::uint64_t;

    PhiloxStream(std::uint64_t seed, std::uint64_t substream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t substream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> out_{};
    int used_ = 4;  // 32-bit words consumed from out_
};

}  // namespace dafilt
