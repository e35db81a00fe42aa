#pragma once

#include <cstdint>

namespace wged {

/// Keyed, splittable random stream. Substreams are derived by mixing the
/// stream key with a counter index, so a replication's stream depends only
/// on (master seed, scheme index, replication index) and never on worker
/// scheduling.
class RngStream {
public:
    explicit RngStream(uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ULL)), counter_(0) {}

    /// Derived stream; independent of how many draws this stream has made.
    RngStream substream(uint64_t index) const {
        return RngStream(mix(key_ ^ mix(index + 0x632be59bd9b4e019ULL)), 0);
    }

    /// Uniform on the open interval (0, 1).
    double uniform() {
        for (;;) {
            const uint64_t bits = mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
            const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

private:
    RngStream(uint64_t key, uint64_t counter) : key_(key), counter_(counter) {}

    // splitmix64 finalizer
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t key_;
    uint64_t counter_;
};

}  // namespace wged
