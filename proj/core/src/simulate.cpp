#include "rollage/simulate.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <random>

#include "rollage/errors.hpp"

namespace rollage {

namespace {

constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += kSplitMixGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

void mix_in(std::uint64_t& state, std::uint64_t value) {
    state ^= splitmix64(state) ^ value;
    (void)splitmix64(state);
}

std::uint64_t double_bits(double x) { return std::bit_cast<std::uint64_t>(x); }

/// Gaussian deviates via the Marsaglia polar transform on 53-bit uniforms.
/// Fully specified given the mt19937_64 stream, unlike std::normal_distribution.
class PolarGaussian {
  public:
    explicit PolarGaussian(std::uint64_t seed) : gen_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

  private:
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

int default_burn_in(const ModelSpec& spec) {
    return std::max(1000, 10 * (spec.p() + spec.q()));
}

std::uint64_t stream_seed(const ModelSpec& spec, int n, std::uint64_t seed, int burn_in) {
    std::uint64_t state = 0x8AD8257D4E1AB9C1ull;
    mix_in(state, static_cast<std::uint64_t>(spec.kind));
    mix_in(state, static_cast<std::uint64_t>(spec.p()));
    mix_in(state, static_cast<std::uint64_t>(spec.q()));
    for (double c : spec.phi) mix_in(state, double_bits(c));
    for (double c : spec.theta) mix_in(state, double_bits(c));
    mix_in(state, double_bits(spec.sigma2_w));
    mix_in(state, static_cast<std::uint64_t>(n));
    mix_in(state, seed);
    mix_in(state, static_cast<std::uint64_t>(burn_in));
    return splitmix64(state);
}

TimeSeries simulate(const ModelSpec& spec, int n, std::uint64_t seed, int burn_in) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    if (burn_in < 0) burn_in = default_burn_in(spec);
    if (!validate_model(spec).ok()) {
        throw InvalidModel("model must be causal and invertible");
    }

    const int p = spec.p();
    const int q = spec.q();
    const int total = burn_in + n;
    const double noise_sd = std::sqrt(spec.sigma2_w);

    PolarGaussian gauss(stream_seed(spec, n, seed, burn_in));

    std::vector<double> y(static_cast<size_t>(total), 0.0);
    std::vector<double> w(static_cast<size_t>(total), 0.0);
    for (int t = 0; t < total; ++t) {
        w[static_cast<size_t>(t)] = noise_sd * gauss();
        double acc = w[static_cast<size_t>(t)];
        for (int i = 1; i <= p && i <= t; ++i) {
            acc += spec.phi[static_cast<size_t>(i) - 1] * y[static_cast<size_t>(t - i)];
        }
        for (int j = 1; j <= q && j <= t; ++j) {
            acc += spec.theta[static_cast<size_t>(j) - 1] * w[static_cast<size_t>(t - j)];
        }
        y[static_cast<size_t>(t)] = acc;
    }

    TimeSeries out;
    out.values.assign(y.begin() + burn_in, y.end());
    out.meta = SeriesMeta{seed, burn_in, spec, 0.0};
    return out;
}

std::vector<double> partials_to_ar(std::span<const double> partials) {
    std::vector<double> phi;
    phi.reserve(partials.size());
    for (size_t i = 0; i < partials.size(); ++i) {
        const double k = partials[i];
        std::vector<double> next(i + 1);
        for (size_t j = 0; j < i; ++j) next[j] = phi[j] - k * phi[i - 1 - j];
        next[i] = k;
        phi = std::move(next);
    }
    return phi;
}

ModelSpec random_model(ModelKind kind, int p, int q, std::uint64_t seed, double partial_range,
                       int max_attempts) {
    if (p < 0 || q < 0 || p + q < 1) throw InvalidArgument("need p, q >= 0 and p + q >= 1");
    if (!(partial_range > 0.0 && partial_range <= 1.0)) {
        throw InvalidArgument("partial_range must lie in (0, 1]");
    }

    std::uint64_t state = 0xC3A5C85C97CB3127ull;
    mix_in(state, static_cast<std::uint64_t>(kind));
    mix_in(state, static_cast<std::uint64_t>(p));
    mix_in(state, static_cast<std::uint64_t>(q));
    mix_in(state, seed);
    std::mt19937_64 gen(splitmix64(state));
    auto uniform = [&gen](double r) {
        return r * (2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0);
    };

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        ModelSpec spec;
        spec.kind = kind;
        spec.sigma2_w = 1.0;
        std::vector<double> partials(static_cast<size_t>(p));
        for (auto& k : partials) k = uniform(partial_range);
        spec.phi = partials_to_ar(partials);
        partials.assign(static_cast<size_t>(q), 0.0);
        for (auto& k : partials) k = uniform(partial_range);
        // 1 + theta_1 z + ... has the same roots as the AR polynomial of the
        // negated coefficients, so a causal draw negated is invertible
        spec.theta = partials_to_ar(partials);
        for (auto& t : spec.theta) t = -t;

        try {
            if (validate_model(spec).ok()) return spec;
        } catch (const Error&) {
            // marginal draw (e.g. exactly-zero leading coefficient); redraw
        }
    }
    throw RejectionBudgetExhausted("no admissible model within the attempt budget");
}

}  // namespace rollage
