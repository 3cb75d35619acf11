#ifndef DISCRIM_RNG_HPP
#define DISCRIM_RNG_HPP

#include <cstdint>
#include <random>

namespace discrim {

/// Seeded, splittable random stream. A stream is identified by
/// (seed, stream_id); identical identifiers reproduce identical draws
/// bit-for-bit. Distinct stream ids get statistically independent engines
/// via splitmix64 key expansion, so concurrent trials can each own a
/// stream without shared state.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id), eng_(mix_key(seed, stream_id)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Derived child stream; independent of this stream's draw position.
    RngStream substream(std::uint64_t index) const {
        return RngStream(seed_, mix_key(stream_id_, index + 1));
    }

    std::mt19937_64& engine() { return eng_; }

    double normal() {
        std::normal_distribution<double> dist(0.0, 1.0);
        return dist(eng_);
    }

    double uniform01() {
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        return dist(eng_);
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    static std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
        return splitmix64(splitmix64(a) ^ (0x94d049bb133111ebULL * splitmix64(b ^ 0x2545f4914f6cdd1dULL)));
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 eng_;
};

} // namespace discrim

#endif
