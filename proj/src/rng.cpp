#include "gridsde/rng.hpp"

#include "gridsde/normal.hpp"

namespace gridsde {

const char* to_string(StreamRole role) {
    switch (role) {
        case StreamRole::brownian: return "brownian";
        case StreamRole::jumps: return "jumps";
        case StreamRole::gridsample: return "gridsample";
        case StreamRole::marks: return "marks";
        case StreamRole::quadrature: return "quadrature";
    }
    return "unknown";
}

namespace detail {

namespace {
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}
}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c[0], hi0, lo0);
        mulhilo(kPhiloxM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

}  // namespace detail

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t path_index, StreamRole role)
    : master_seed_(master_seed), path_index_(path_index), role_(role) {
    key_ = {static_cast<std::uint32_t>(master_seed),
            static_cast<std::uint32_t>(master_seed >> 32)};
    // counter words 2/3 carry the path index and the role; words 0/1 count blocks
    ctr_ = {0u, 0u, static_cast<std::uint32_t>(path_index),
            static_cast<std::uint32_t>(path_index >> 32) ^
                (static_cast<std::uint32_t>(role) << 24)};
}

void RngStream::refill() {
    buf_ = detail::philox4x32(ctr_, key_);
    buf_pos_ = 0;
    if (++ctr_[0] == 0u) ++ctr_[1];
}

std::uint32_t RngStream::next_u32() {
    if (buf_pos_ >= 4) refill();
    return buf_[buf_pos_++];
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double RngStream::next_uniform() {
    // 53 significant bits, centered so the result lies strictly inside (0,1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() { return normal_quantile(next_uniform()); }

Vec RngStream::next_uniform_vec(int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = next_uniform();
    return v;
}

Vec RngStream::next_normal_vec(int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = next_normal();
    return v;
}

}  // namespace gridsde
