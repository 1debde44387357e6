#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rank1/exact_constant.hpp"

namespace rank1 {

/// splitmix64-based generator.  Small, portable and splittable: per-chunk
/// streams are derived from (seed, chunk index) alone, which is what makes
/// Monte-Carlo totals independent of the worker count.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng for_chunk(std::uint64_t seed, std::uint64_t chunk_index) {
        Rng mixer(seed ^ (0x9e3779b97f4a7c15ULL * (chunk_index + 1)));
        mixer.next();
        return mixer;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1).
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (cached spare).
    double gaussian() {
        if (spare_) {
            double s = *spare_;
            spare_.reset();
            return s;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        return r * std::cos(theta);
    }

  private:
    std::uint64_t state_;
    std::optional<double> spare_;
};

/// Seeded Monte-Carlo configuration.  Estimates are a pure function of
/// (seed, samples, chunk); the worker count never changes the result.
struct SamplerSpec {
    std::uint64_t seed = 42;
    std::size_t samples = 100000;
    std::size_t chunk = 4096;
    int workers = 1;

    SamplerSpec with_samples(std::size_t n) const {
        SamplerSpec s = *this;
        s.samples = n;
        return s;
    }
    SamplerSpec with_seed(std::uint64_t sd) const {
        SamplerSpec s = *this;
        s.seed = sd;
        return s;
    }
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::optional<ExactConstant> exact;

    Estimate scaled(double factor) const {
        Estimate e = *this;
        e.mean *= factor;
        e.std_error *= std::abs(factor);
        e.exact.reset();
        return e;
    }
};

namespace detail {

struct ChunkStats {
    std::vector<double> sum;
    std::vector<double> sum_sq;  // componentwise, for standard errors
    std::size_t count = 0;
};

inline ChunkStats reduce_pair(const ChunkStats& a, const ChunkStats& b) {
    ChunkStats r = a;
    for (std::size_t i = 0; i < r.sum.size(); ++i) {
        r.sum[i] += b.sum[i];
        r.sum_sq[i] += b.sum_sq[i];
    }
    r.count += b.count;
    return r;
}

/// Pairwise tree reduction over chunk index; deterministic regardless of
/// the order in which workers finished.
inline ChunkStats reduce_all(std::vector<ChunkStats>& chunks) {
    std::size_t n = chunks.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i)
            chunks[i] = reduce_pair(chunks[i], chunks[i + half]);
        n = half;
    }
    return chunks.empty() ? ChunkStats{} : chunks[0];
}

}  // namespace detail

/// Vector-valued chunked Monte-Carlo mean.  The integrand draws whatever it
/// needs from the chunk's generator and fills `out[0..width)`; all
/// components share the same sample stream.  Non-finite values are reported
/// with their provenance.
inline std::vector<Estimate> mc_estimate_vec(
    const SamplerSpec& spec, std::size_t width,
    const std::function<void(Rng&, double*)>& integrand) {
    if (spec.samples == 0) throw std::invalid_argument("mc_estimate: samples must be positive");
    const std::size_t chunk_size = spec.chunk == 0 ? 4096 : spec.chunk;
    const std::size_t n_chunks = (spec.samples + chunk_size - 1) / chunk_size;
    std::vector<detail::ChunkStats> stats(n_chunks);

    auto run_chunk = [&](std::size_t ci) {
        Rng rng = Rng::for_chunk(spec.seed, ci);
        detail::ChunkStats s;
        s.sum.assign(width, 0.0);
        s.sum_sq.assign(width, 0.0);
        const std::size_t begin = ci * chunk_size;
        const std::size_t end = std::min(begin + chunk_size, spec.samples);
        std::vector<double> value(width);
        for (std::size_t i = begin; i < end; ++i) {
            integrand(rng, value.data());
            for (std::size_t k = 0; k < width; ++k) {
                if (!std::isfinite(value[k]))
                    throw std::runtime_error("non-finite integrand value at chunk " +
                                             std::to_string(ci) + ", sample " +
                                             std::to_string(i) + ", component " +
                                             std::to_string(k));
                s.sum[k] += value[k];
                s.sum_sq[k] += value[k] * value[k];
            }
            ++s.count;
        }
        stats[ci] = std::move(s);
    };

    const int workers = std::max(1, spec.workers);
    if (workers == 1 || n_chunks == 1) {
        for (std::size_t ci = 0; ci < n_chunks; ++ci) run_chunk(ci);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                try {
                    for (std::size_t ci = static_cast<std::size_t>(w); ci < n_chunks;
                         ci += static_cast<std::size_t>(workers))
                        run_chunk(ci);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    detail::ChunkStats total = detail::reduce_all(stats);
    std::vector<Estimate> out(width);
    const double n = static_cast<double>(total.count);
    for (std::size_t k = 0; k < width; ++k) {
        double mean = total.sum[k] / n;
        double var = 0.0;
        if (total.count > 1) {
            var = (total.sum_sq[k] - n * mean * mean) / (n - 1.0);
            var = std::max(var, 0.0);
        }
        out[k] = Estimate{mean, std::sqrt(var / n), total.count, std::nullopt};
    }
    return out;
}

inline Estimate mc_estimate(const SamplerSpec& spec,
                            const std::function<double(Rng&)>& integrand) {
    auto v = mc_estimate_vec(spec, 1,
                             [&](Rng& rng, double* out) { out[0] = integrand(rng); });
    return v[0];
}

/// |a-b| within k standard errors (combined in quadrature), with a small
/// absolute floor so that exactly-constant integrands (SE = 0) pass on
/// floating-point roundoff.
inline bool within_se(double a, double b, double se_a, double se_b = 0.0, double k = 3.0,
                      double floor_abs = 1e-9) {
    double tol = k * std::sqrt(se_a * se_a + se_b * se_b) + floor_abs * (1.0 + std::abs(b));
    return std::abs(a - b) <= tol;
}

}  // namespace rank1
