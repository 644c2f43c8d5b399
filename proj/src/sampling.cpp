#include "copula/sampling.hpp"

#include <stdexcept>

namespace copula {

SampleSet sample_copula(const Copula& c, std::size_t n, RngSeed seed) {
    if (n < 1) throw std::invalid_argument("sample_copula: n must be >= 1");
    if (!c.has_sampler()) {
        throw std::runtime_error("sample_copula: no sampler for " + c.describe());
    }
    std::mt19937_64 rng(seed.value);
    SampleSet out;
    out.kind = SampleKind::Pseudo;
    out.pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.pairs.push_back(c.sample(rng));
    return out;
}

SampleSet sample_pi(std::size_t n, RngSeed seed) { return sample_copula(make_pi(), n, seed); }
SampleSet sample_m(std::size_t n, RngSeed seed) { return sample_copula(make_m(), n, seed); }
SampleSet sample_w(std::size_t n, RngSeed seed) { return sample_copula(make_w(), n, seed); }

SampleSet sample_mtheta(MThetaParams params, std::size_t n, RngSeed seed) {
    return sample_copula(make_mtheta(params), n, seed);
}

SampleSet sample_clayton(ClaytonParams params, std::size_t n, RngSeed seed) {
    return sample_copula(make_clayton(params), n, seed);
}

SampleSet sample_mixture(double lambda, const Copula& left, const Copula& right,
                         std::size_t n, RngSeed seed) {
    return sample_copula(mixture(lambda, left, right), n, seed);
}

}  // namespace copula
