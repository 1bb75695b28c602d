#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace mpadet {

using cplx = std::complex<double>;

// Counter-based Philox4x32-10 generator. Streams are addressed by
// (seed, stream); a Monte-Carlo trial owns the stream keyed by its trial
// index, so draws never depend on scheduling or worker count.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

    std::uint32_t next_u32() {
        if (avail_ == 0) {
            buf_ = block({static_cast<std::uint32_t>(block_index_),
                          static_cast<std::uint32_t>(block_index_ >> 32),
                          stream_lo_, stream_hi_},
                         key_);
            ++block_index_;
            avail_ = 4;
        }
        return buf_[4 - avail_--];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform index in [0, n); n must be a power of two
    int next_index_pow2(int n) { return static_cast<int>(next_u32() & static_cast<std::uint32_t>(n - 1)); }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // circularly symmetric CN(0, 1): Re and Im are independent N(0, 1/2)
    cplx next_cgaussian() {
        const double u1 = 1.0 - next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int avail_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mpadet
