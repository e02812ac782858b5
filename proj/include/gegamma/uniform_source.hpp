#pragma once

#include <concepts>
#include <initializer_list>
#include <cstdint>
#include <limits>
#include <random>

namespace gegamma {

/// A stream of uniforms on the open interval (0, 1).
template<class T>
concept UniformSource = requires(T& source) {
    { source.next() } -> std::convertible_to<double>;
};

/// Seeded uniform stream over a 64-bit engine that counts delivered draws.
///
/// Values are k * 2^-53 for k in [1, 2^53); a raw zero is redrawn and not
/// counted, so neither 0 nor 1 is ever returned.
template<class Engine = std::mt19937_64>
class CountingUniformSource
{
    static_assert(Engine::min() == 0 &&
                      Engine::max() == std::numeric_limits<std::uint64_t>::max(),
                  "CountingUniformSource needs a full-range 64-bit engine");

  public:
    using engine_type = Engine;

    explicit CountingUniformSource(std::uint64_t seed = 5489u) : engine_(seed) {}

    double next()
    {
        for (;;) {
            const std::uint64_t bits = engine_() >> 11;
            if (bits != 0) {
                ++draw_count_;
                return static_cast<double>(bits) * 0x1.0p-53;
            }
        }
    }

    std::uint64_t draw_count() const noexcept { return draw_count_; }
    void reset_count() noexcept { draw_count_ = 0; }

  private:
    Engine engine_;
    std::uint64_t draw_count_ = 0;
};

using DefaultSource = CountingUniformSource<>;

/// Mixes a base seed with cell coordinates (splitmix64 finalizer) so that each
/// cell of a sweep gets its own reproducible stream.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept
{
    std::uint64_t z = base;
    for (std::uint64_t v : {a, b}) {
        z += 0x9e3779b97f4a7c15ull + v;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
    }
    return z;
}

} // namespace gegamma
