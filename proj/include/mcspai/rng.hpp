#ifndef MCSPAI_RNG_HPP
#define MCSPAI_RNG_HPP

#include <array>
#include <cstdint>

namespace mcspai {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// One stream per (master_seed, stream_id) pair: the key is the seed, the
/// upper counter half is the stream id, the lower half counts draws. Streams
/// with distinct ids never overlap and the counter space (2^128 blocks of
/// four outputs) exceeds any chain budget by a wide margin. Output is
/// platform-independent, so results reproduce bit-exactly regardless of the
/// thread that owns the stream.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          stream_id_(stream_id) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            block_ = philox(counter_++, stream_id_, key_);
            pos_ = 0;
        }
        return block_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::array<std::uint32_t, 4> philox(std::uint64_t ctr_lo,
                                               std::uint64_t ctr_hi,
                                               std::array<std::uint32_t, 2> key) {
        constexpr std::uint32_t m0 = 0xD2511F53u;
        constexpr std::uint32_t m1 = 0xCD9E8D57u;
        constexpr std::uint32_t w0 = 0x9E3779B9u;
        constexpr std::uint32_t w1 = 0xBB67AE85u;
        std::array<std::uint32_t, 4> c{
            static_cast<std::uint32_t>(ctr_lo),
            static_cast<std::uint32_t>(ctr_lo >> 32),
            static_cast<std::uint32_t>(ctr_hi),
            static_cast<std::uint32_t>(ctr_hi >> 32)};
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(m0) * c[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(m1) * c[2];
            c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ key[0],
                 static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ key[1],
                 static_cast<std::uint32_t>(p0)};
            key[0] += w0;
            key[1] += w1;
        }
        return c;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_id_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;
};

}  // namespace mcspai

#endif
