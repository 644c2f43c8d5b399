// Seeded, bit-reproducible samplers for every copula family with sampler
// support. The generator is mt19937_64 driven through the 53-bit uniform in
// copula.hpp; identical (params, n, seed) yield bit-identical sample sets
// on every platform.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "copula/copula.hpp"

namespace copula {

struct RngSeed {
    std::uint64_t value = 0;
};

enum class SampleKind { Raw, Pseudo };

/// A list of bivariate observations. Kind Pseudo means both coordinates lie
/// strictly inside (0,1) (rank-transformed or sampled from a copula).
struct SampleSet {
    std::vector<std::pair<double, double>> pairs;
    SampleKind kind = SampleKind::Raw;

    std::size_t size() const { return pairs.size(); }
};

/// n i.i.d. draws from a copula with sampler support; throws for copulas
/// without one.
SampleSet sample_copula(const Copula& c, std::size_t n, RngSeed seed);

SampleSet sample_pi(std::size_t n, RngSeed seed);
SampleSet sample_m(std::size_t n, RngSeed seed);
SampleSet sample_w(std::size_t n, RngSeed seed);
SampleSet sample_mtheta(MThetaParams params, std::size_t n, RngSeed seed);
SampleSet sample_clayton(ClaytonParams params, std::size_t n, RngSeed seed);
SampleSet sample_mixture(double lambda, const Copula& left, const Copula& right,
                         std::size_t n, RngSeed seed);

}  // namespace copula
