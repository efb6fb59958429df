#pragma once

#include "gridsde/types.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace gridsde {

// One stream per (master_seed, path_index, role). Streams are counter-based
// (Philox4x32-10), so distinct triples produce independent sequences and the
// same triple always reproduces the same draws, regardless of thread count
// or interleaving with other streams.
enum class StreamRole : std::uint32_t {
    brownian = 1,
    jumps = 2,
    gridsample = 3,
    marks = 4,
    quadrature = 5,
};

const char* to_string(StreamRole role);

namespace detail {
// Raw Philox4x32-10 block function, exposed for the known-answer tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);
}  // namespace detail

class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t path_index, StreamRole role);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on the open interval (0,1); safe to feed into quantile maps.
    double next_uniform();
    // Standard normal via the inverse-CDF map (deterministic across platforms).
    double next_normal();

    Vec next_uniform_vec(int d);
    Vec next_normal_vec(int d);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t path_index() const { return path_index_; }
    StreamRole role() const { return role_; }

  private:
    void refill();

    std::uint64_t master_seed_;
    std::uint64_t path_index_;
    StreamRole role_;
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 4;  // forces refill on first draw
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t path_index,
                               StreamRole role) {
    return RngStream(master_seed, path_index, role);
}

}  // namespace gridsde
