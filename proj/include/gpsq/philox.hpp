// Philox4x32-10 counter-based RNG (Salmon et al. constants).
//
// Counter-based generators make parallel replication streams trivial: stream
// identity lives in the key, position in the counter, and any (key, counter)
// pair can be evaluated independently. We key each simulation replication by
// (seed, replication index), so runs are bit-identical for a fixed seed no
// matter how replications are scheduled.
#pragma once

#include <array>
#include <cstdint>

namespace gpsq {

class Philox4x32 {
public:
    /// One stream: key = (seed low word, seed high word XOR replication id).
    Philox4x32(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed & 0xffffffffu),
               static_cast<std::uint32_t>(seed >> 32)} {
        counter_[0] = 0;
        counter_[1] = 0;
        counter_[2] = static_cast<std::uint32_t>(stream & 0xffffffffu);
        counter_[3] = static_cast<std::uint32_t>(stream >> 32);
    }

    /// Uniform double in the open interval (0,1); 53 random bits.
    double next_double() {
        const std::uint64_t hi = static_cast<std::uint64_t>(next_u32()) << 32;
        const std::uint64_t bits = hi | next_u32();
        // 53-bit mantissa, offset by half an ulp so 0 is never returned.
        return (static_cast<double>(bits >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    std::uint32_t next_u32() {
        if (idx_ == 4) {
            block_ = round10(counter_, key_);
            bump_counter();
            idx_ = 0;
        }
        return block_[idx_++];
    }

private:
    using Words = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
        const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(prod >> 32);
        lo = static_cast<std::uint32_t>(prod);
    }

    static Words round10(Words ctr, Key key) {
        constexpr std::uint32_t M0 = 0xD2511F53u;
        constexpr std::uint32_t M1 = 0xCD9E8D57u;
        constexpr std::uint32_t W0 = 0x9E3779B9u; // golden-ratio Weyl increments
        constexpr std::uint32_t W1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(M0, ctr[0], hi0, lo0);
            mulhilo(M1, ctr[2], hi1, lo1);
            ctr = Words{hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += W0;
            key[1] += W1;
        }
        return ctr;
    }

    void bump_counter() {
        if (++counter_[0] == 0 && ++counter_[1] == 0 && ++counter_[2] == 0) ++counter_[3];
    }

    Words counter_{};
    Key key_{};
    Words block_{};
    int idx_ = 4; // forces generation on first draw
};

} // namespace gpsq
