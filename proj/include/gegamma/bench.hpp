#pragma once

// Timing harness for the two benchmark settings:
//
//   single_draw  every variate is drawn by a freshly constructed sampler, so all
//                per-shape initialization is paid on every draw;
//   bulk         per-shape constants are built once, then n variates are drawn.
//
// Each (algorithm, alpha) cell is timed `repeats` times on the same seed and the
// mean is reported. Outputs feed a Sink so the loops cannot be elided.

#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gegamma/samplers.hpp"

namespace gegamma {

enum class Setting
{
    single_draw,
    bulk,
};

constexpr std::string_view setting_name(Setting s) noexcept
{
    return s == Setting::single_draw ? "single_draw" : "bulk";
}

struct BenchmarkRecord
{
    std::string algorithm;
    double alpha = 0.0;
    Setting setting = Setting::bulk;
    std::uint64_t n = 0;
    double elapsed_seconds = 0.0; //!< mean over repeats
    unsigned repeats = 0;
    double uniforms_per_output = 0.0;
};

/// Accumulates outputs: a running sum and an XOR of their bit patterns.
struct Sink
{
    double sum = 0.0;
    std::uint64_t bits = 0;

    void add(double x) noexcept
    {
        sum += x;
        bits ^= std::bit_cast<std::uint64_t>(x);
    }
    void merge(const Sink& other) noexcept
    {
        sum += other.sum;
        bits ^= other.bits;
    }
};

/// Draws n variates of shape alpha from the source into the sink.
using DrawLoop = std::function<void(double alpha, DefaultSource&, std::uint64_t n, Sink&)>;

/// A benchmarkable generator. External baselines register one of these.
struct BenchEntry
{
    std::string name;
    DrawLoop single_draw; //!< rebuilds all state before each draw
    DrawLoop bulk;        //!< builds state once per call
};

namespace detail {

template<Method M>
void single_draw_loop(double alpha, DefaultSource& rng, std::uint64_t n, Sink& sink)
{
    for (std::uint64_t i = 0; i < n; ++i) {
        const ShapeParams p(alpha);
        if constexpr (M == Method::alg1) {
            sink.add(alg1_sample(p, rng));
        } else if constexpr (M == Method::alg2) {
            sink.add(alg2_sample(p, rng));
        } else if constexpr (M == Method::alg3_star) {
            sink.add(alg3_sample(alg3_init(p, SwitchMode::approx), rng));
        } else {
            sink.add(alg3_sample(alg3_init(p, SwitchMode::unit), rng));
        }
    }
}

template<Method M>
void bulk_loop(double alpha, DefaultSource& rng, std::uint64_t n, Sink& sink)
{
    const ShapeParams p(alpha);
    NullStats none;
    if constexpr (M == Method::alg1 || M == Method::alg2) {
        const RejectionCoefficients k(p);
        for (std::uint64_t i = 0; i < n; ++i) {
            if constexpr (M == Method::alg1) {
                sink.add(base_kernel(k, rng, none));
            } else {
                sink.add(squeeze_kernel(k, rng, none));
            }
        }
    } else {
        constexpr bool unit = M == Method::alg3_unit;
        const Alg3Constants c = alg3_init(p, unit ? SwitchMode::unit : SwitchMode::approx);
        for (std::uint64_t i = 0; i < n; ++i) {
            sink.add(piecewise_kernel<unit>(c, rng, none));
        }
    }
}

template<Method M>
BenchEntry builtin_entry()
{
    return {std::string(method_name(M)), single_draw_loop<M>, bulk_loop<M>};
}

} // namespace detail

/// Named generators available to the harness: the four built-in methods plus
/// any registered baselines.
class BenchRegistry
{
  public:
    static BenchRegistry with_builtins()
    {
        BenchRegistry r;
        r.add(detail::builtin_entry<Method::alg1>());
        r.add(detail::builtin_entry<Method::alg2>());
        r.add(detail::builtin_entry<Method::alg3_star>());
        r.add(detail::builtin_entry<Method::alg3_unit>());
        return r;
    }

    void add(BenchEntry entry)
    {
        if (entry.name.empty() || !entry.single_draw || !entry.bulk) {
            throw std::invalid_argument("bench entry needs a name and both draw loops");
        }
        if (find(entry.name) != nullptr) {
            throw std::invalid_argument("duplicate bench entry: " + entry.name);
        }
        entries_.push_back(std::move(entry));
    }

    const BenchEntry* find(std::string_view name) const noexcept
    {
        for (const auto& e : entries_) {
            if (e.name == name) {
                return &e;
            }
        }
        return nullptr;
    }

    const std::vector<BenchEntry>& entries() const noexcept { return entries_; }

  private:
    std::vector<BenchEntry> entries_;
};

/// Times every (entry, alpha) cell in one setting. Requires n >= 1e4 and
/// repeats >= 3.
inline std::vector<BenchmarkRecord> run_setting(std::span<const BenchEntry* const> entries,
                                                std::span<const double> alphas,
                                                std::uint64_t n, unsigned repeats,
                                                std::uint64_t seed, Setting setting,
                                                Sink* sink_out = nullptr)
{
    if (n < 10000) {
        throw std::invalid_argument("benchmark needs n >= 1e4");
    }
    if (repeats < 3) {
        throw std::invalid_argument("benchmark needs at least 3 repeats");
    }
    using clock = std::chrono::steady_clock;
    std::vector<BenchmarkRecord> records;
    Sink total;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const BenchEntry& entry = *entries[e];
        const DrawLoop& loop = setting == Setting::single_draw ? entry.single_draw : entry.bulk;
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            double elapsed = 0.0;
            std::uint64_t draws = 0;
            for (unsigned r = 0; r < repeats; ++r) {
                DefaultSource source(derive_seed(seed, e, a));
                Sink sink;
                const auto start = clock::now();
                loop(alphas[a], source, n, sink);
                elapsed += std::chrono::duration<double>(clock::now() - start).count();
                draws = source.draw_count();
                total.merge(sink);
            }
            BenchmarkRecord rec;
            rec.algorithm = entry.name;
            rec.alpha = alphas[a];
            rec.setting = setting;
            rec.n = n;
            rec.elapsed_seconds = std::max(elapsed / repeats, 1e-9);
            rec.repeats = repeats;
            rec.uniforms_per_output = static_cast<double>(draws) / static_cast<double>(n);
            records.push_back(std::move(rec));
        }
    }
    if (sink_out != nullptr) {
        sink_out->merge(total);
    }
    return records;
}

/// Single-draw setting: state rebuilt on every draw, initialization included.
inline std::vector<BenchmarkRecord> run_setting1(std::span<const BenchEntry* const> entries,
                                                 std::span<const double> alphas,
                                                 std::uint64_t n, unsigned repeats,
                                                 std::uint64_t seed, Sink* sink = nullptr)
{
    return run_setting(entries, alphas, n, repeats, seed, Setting::single_draw, sink);
}

/// Bulk setting: one initialization per (entry, alpha), then n draws.
inline std::vector<BenchmarkRecord> run_setting2(std::span<const BenchEntry* const> entries,
                                                 std::span<const double> alphas,
                                                 std::uint64_t n, unsigned repeats,
                                                 std::uint64_t seed, Sink* sink = nullptr)
{
    return run_setting(entries, alphas, n, repeats, seed, Setting::bulk, sink);
}

/// An ordinal timing claim evaluated on this host. Never a hard failure.
struct OrdinalCheck
{
    std::string claim;
    double alpha = 0.0;
    bool holds = false;
    double faster_seconds = 0.0; //!< time of the method expected to be faster
    double slower_seconds = 0.0;
};

/// Evaluates "faster is no slower than slower" per alpha on the records of one
/// setting. Cells missing either method are skipped.
inline std::vector<OrdinalCheck> compare_ordinal(std::span<const BenchmarkRecord> records,
                                                 std::string_view faster,
                                                 std::string_view slower, Setting setting)
{
    std::vector<OrdinalCheck> out;
    for (const auto& f : records) {
        if (f.algorithm != faster || f.setting != setting) {
            continue;
        }
        for (const auto& s : records) {
            if (s.algorithm == slower && s.alpha == f.alpha && s.setting == f.setting) {
                OrdinalCheck c;
                c.claim = std::string(faster) + " <= " + std::string(slower) + " (" +
                          std::string(setting_name(f.setting)) + ")";
                c.alpha = f.alpha;
                c.faster_seconds = f.elapsed_seconds;
                c.slower_seconds = s.elapsed_seconds;
                c.holds = f.elapsed_seconds <= s.elapsed_seconds;
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

/// Timing claims checked on bulk records: alg3-unit is no slower than alg3-star
/// and no slower than alg2.
inline std::vector<OrdinalCheck> bulk_ordinal_checks(std::span<const BenchmarkRecord> records)
{
    auto checks = compare_ordinal(records, "alg3-unit", "alg3-star", Setting::bulk);
    auto more = compare_ordinal(records, "alg3-unit", "alg2", Setting::bulk);
    checks.insert(checks.end(), more.begin(), more.end());
    return checks;
}

/// Timing claim checked on single-draw records: alg2 is faster than alg3-star
/// once initialization is paid per draw.
inline std::vector<OrdinalCheck> single_draw_ordinal_checks(
    std::span<const BenchmarkRecord> records)
{
    return compare_ordinal(records, "alg2", "alg3-star", Setting::single_draw);
}

inline constexpr std::string_view benchmark_csv_header =
    "algorithm,alpha,setting,n,elapsed_seconds,repeats,uniforms_per_output";

inline void write_benchmark_csv(std::ostream& os, std::span<const BenchmarkRecord> records)
{
    os << benchmark_csv_header << '\n';
    const auto old_precision = os.precision(12);
    for (const auto& r : records) {
        os << r.algorithm << ',' << r.alpha << ',' << setting_name(r.setting) << ',' << r.n
           << ',' << r.elapsed_seconds << ',' << r.repeats << ',' << r.uniforms_per_output
           << '\n';
    }
    os.precision(old_precision);
}

} // namespace gegamma
